//! Small integer number theory shared across the crate: primality by trial
//! division, factorization, Euler phi, unit groups mod n. Everything here is
//! desk-scale (arguments comfortably below 2^40), so the simplest exact
//! algorithms are the right ones.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |dd| dd <= n) {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization as (prime, exponent) pairs, ascending.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.checked_mul(d).map_or(false, |dd| dd <= n) {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn distinct_prime_factors(n: u64) -> Vec<u64> {
    factor(n).into_iter().map(|(p, _)| p).collect()
}

pub fn euler_phi(n: u64) -> u64 {
    let mut out = n;
    for (p, _) in factor(n) {
        out = out / p * (p - 1);
    }
    out
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num::integer::gcd(a, b)
}

/// Units of Z/nZ in ascending order. `units(1) == [0]` (the trivial group).
pub fn units(n: u64) -> Vec<u64> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|&h| gcd(h, n) == 1).collect()
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    out.sort_unstable();
    out
}

pub fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u128;
    let mut b = (base % m) as u128;
    base = 0;
    let _ = base;
    let m128 = m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Inverse of a mod n for gcd(a, n) = 1.
pub fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (n as i128, (a % n) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(n as i128) as u64)
}

/// Multiplicative order of a mod n, for gcd(a, n) = 1.
pub fn mult_order(a: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    debug_assert_eq!(gcd(a, n), 1);
    let phi = euler_phi(n);
    let mut ord = phi;
    for (p, _) in factor(phi) {
        while ord % p == 0 && mod_pow(a, ord / p, n) == 1 {
            ord /= p;
        }
    }
    ord
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small() {
        assert!(is_prime(2));
        assert!(is_prime(97));
        assert!(!is_prime(1));
        assert!(!is_prime(4));
        assert!(!is_prime(91));
    }

    #[test]
    fn phi_and_units_agree() {
        for n in 1..200 {
            assert_eq!(units(n).len() as u64, if n == 1 { 1 } else { euler_phi(n) });
        }
    }

    #[test]
    fn order_divides_phi() {
        for n in [5u64, 7, 9, 12, 26] {
            for a in units(n) {
                if n == 1 {
                    continue;
                }
                let ord = mult_order(a, n);
                assert_eq!(euler_phi(n) % ord, 0);
                assert_eq!(mod_pow(a, ord, n), 1);
            }
        }
    }

    #[test]
    fn inverse_roundtrip() {
        for n in [7u64, 12, 26, 97] {
            for a in units(n) {
                let inv = mod_inverse(a, n).unwrap();
                assert_eq!(a * inv % n, 1 % n);
            }
        }
    }
}
