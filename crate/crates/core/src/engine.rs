//! Family engine for Gauss/Jacobi sums over one (field, d) pair.
//!
//! One pass over the multiplicative group collects the class-pair counts
//! M[u][t] = #{m != 0,1 : dlog(m) = u, dlog(1-m) = t (mod d)}. Every
//! Jacobi sum of every arity then evaluates in O(d^2) ring operations by
//! peeling the last coordinate of the defining enumeration and grouping
//! terms by class pair (an exact regrouping plus the change of variables
//! m_i -> c*m_i inside the finite sum; no sum identity is consumed).
//! Gauss sums come from per-twist (trace, class) count matrices.
//!
//! Tests cross-check every output against the literal enumeration in
//! [`crate::sums`].

use crate::cyclo::ZCyclo;
use crate::error::Result;
use crate::ff::{FiniteField, StreamField, CLASS_NONE};

/// Class-pair counts for one (field, d): everything a Jacobi sum of any
/// arity needs from the field.
pub struct ClassData {
    pub d: u64,
    pub q: u64,
    /// class of -1
    pub t_minus1: u64,
    /// m[u*d + t] = #{m notin {0,1} : class(m) = u, class(1-m) = t}
    pub m: Vec<i64>,
}

impl ClassData {
    pub fn from_tabled(field: &FiniteField, d: u64) -> Result<ClassData> {
        if d == 0 || (field.q() - 1) % d != 0 {
            return Err(crate::error::Error::BadDivisor { d, m: field.q() - 1 });
        }
        let q = field.q();
        let mut m = vec![0i64; (d * d) as usize];
        let one = field.one();
        for x in field.nonzero_elements() {
            if x == one {
                continue;
            }
            let u = field.dlog(x)? % d;
            let om = field.sub(one, x);
            let t = field.dlog(om)? % d;
            m[(u * d + t) as usize] += 1;
        }
        let t_minus1 = field.dlog(field.neg(one))? % d;
        Ok(ClassData { d, q, t_minus1, m })
    }

    pub fn from_stream(sf: &StreamField, d: u64) -> Result<ClassData> {
        if d == 0 || (sf.q() - 1) % d != 0 {
            return Err(crate::error::Error::BadDivisor { d, m: sf.q() - 1 });
        }
        let q = sf.q();
        let table = sf.class_table(d);
        let mut m = vec![0i64; (d * d) as usize];
        for x in 2..q {
            let u = table[x as usize];
            debug_assert!(u != CLASS_NONE);
            let om = sf.one_minus_enc(x);
            if om == 0 {
                continue;
            }
            let t = table[om as usize];
            m[(u as u64 * d + t as u64) as usize] += 1;
        }
        // also x encodes elements; encodings 0 and 1 are the additive and
        // multiplicative identities, excluded above by starting at 2
        let t_minus1 = {
            let p = sf.core.p;
            let minus1 = if sf.core.f == 1 {
                p - 1
            } else {
                sf.core.neg_enc(1)
            };
            table[minus1 as usize] as u64
        };
        Ok(ClassData { d, q, t_minus1, m })
    }
}

/// Gauss/Jacobi family evaluator for one (field, d).
pub struct SumEngine {
    pub d: u64,
    pub q: u64,
    pub cd: ClassData,
    /// tm[b*d + s] = sum_{u,t} M[u][t] zeta^(b u + s t)
    tm: Vec<ZCyclo>,
}

impl SumEngine {
    pub fn new(cd: ClassData) -> SumEngine {
        let d = cd.d;
        let dc = d as u32;
        let mut tm = Vec::with_capacity((d * d) as usize);
        for b in 0..d {
            for s in 0..d {
                let mut dense = vec![0i128; d as usize];
                for u in 0..d {
                    for t in 0..d {
                        let cnt = cd.m[(u * d + t) as usize];
                        if cnt != 0 {
                            dense[((b * u + s * t) % d) as usize] += cnt as i128;
                        }
                    }
                }
                tm.push(ZCyclo::from_dense(dc, &dense));
            }
        }
        SumEngine { d: cd.d, q: cd.q, cd, tm }
    }

    fn zeta(&self, e: u64) -> ZCyclo {
        ZCyclo::root_of_unity(self.d as u32, (e % self.d) as i64)
    }

    /// Raw character sums over tuples with sum(m_i) = 1 and = 0:
    /// R_n(avec; 1) and R_n(avec; 0), without the (-1)^(n-1) sign.
    fn raw_sums(&self, avec: &[u64]) -> (ZCyclo, ZCyclo) {
        let d = self.d;
        let n = avec.len();
        assert!(n >= 1);
        if n == 1 {
            return (ZCyclo::one(d as u32), ZCyclo::zero(d as u32));
        }
        let (r1, r0) = self.raw_sums(&avec[..n - 1]);
        let s: u64 = avec[..n - 1].iter().sum::<u64>() % d;
        let b = avec[n - 1] % d;
        // sum(m_i) = 0 branch: nonzero only when the full exponent sum
        // vanishes mod d
        let new_r0 = if (b + s) % d == 0 {
            r1.mul(&self.zeta(s * self.cd.t_minus1 % d)).scale((self.q - 1) as i128)
        } else {
            ZCyclo::zero(d as u32)
        };
        let new_r1 = r0.add(&r1.mul(&self.tm[(b * d + s) as usize]));
        (new_r1, new_r0)
    }

    /// j(chi_{a_1}, ..., chi_{a_n}) as a cyclotomic integer at conductor d.
    pub fn jacobi(&self, avec: &[u64]) -> ZCyclo {
        let n = avec.len();
        assert!(n >= 1);
        let (r1, _) = self.raw_sums(avec);
        if (n - 1) % 2 == 0 {
            r1
        } else {
            r1.neg()
        }
    }

    /// chi_a evaluated at the power residue of a nonzero field element
    /// given its class; zeta_d^(a * class).
    pub fn chi_value(&self, a: u64, class: u64) -> ZCyclo {
        self.zeta(a * class % self.d)
    }
}

/// Per-twist Gauss data over a tabled field: counts of (trace-lift,
/// class) pairs, from which every g(psi_c, chi_a) at conductor p*d reads
/// off in O(p*d).
pub struct GaussTable {
    pub p: u64,
    pub d: u64,
    /// counts[t*d + u] over m in k*: t = lift(Tr(c m)), u = class(m)
    counts: Vec<i64>,
}

impl GaussTable {
    pub fn new(field: &FiniteField, d: u64, c_enc: u64) -> Result<GaussTable> {
        let p = field.p();
        let c = field.element(c_enc);
        let mut counts = vec![0i64; (p * d) as usize];
        for m in field.nonzero_elements() {
            let t = field.prime_lift(field.trace_to_prime(field.mul(c, m)));
            let u = field.dlog(m)? % d;
            counts[(t * d + u) as usize] += 1;
        }
        Ok(GaussTable { p, d, counts })
    }

    /// g(psi_c, chi_a) at conductor p*d.
    pub fn gauss(&self, a: u64) -> ZCyclo {
        let (p, d) = (self.p, self.d);
        let n = (p * d) as u32;
        let mut dense = vec![0i128; (p * d) as usize];
        for t in 0..p {
            for u in 0..d {
                let cnt = self.counts[(t * d + u) as usize];
                if cnt != 0 {
                    let e = ((t * d) % (p * d) + (a * u % d) * p) % (p * d);
                    dense[e as usize] -= cnt as i128;
                }
            }
        }
        ZCyclo::from_dense(n, &dense)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::{AdditiveCharacter, MultiplicativeCharacter};
    use crate::sums::{gauss_sum, jacobi_sum};

    fn engine(p: u64, f: u32, d: u64) -> (FiniteField, SumEngine) {
        let k = FiniteField::new(p, f).unwrap();
        let cd = ClassData::from_tabled(&k, d).unwrap();
        (k, SumEngine::new(cd))
    }

    #[test]
    fn engine_matches_naive_jacobi() {
        for (p, f, d) in [(5u64, 1u32, 4u64), (7, 1, 3), (7, 1, 6), (3, 2, 8), (13, 1, 12)] {
            let (k, eng) = engine(p, f, d);
            for a1 in 0..d {
                for a2 in 0..d {
                    let chis = [
                        MultiplicativeCharacter::new(&k, d, a1).unwrap(),
                        MultiplicativeCharacter::new(&k, d, a2).unwrap(),
                    ];
                    let naive = jacobi_sum(&k, &chis).unwrap();
                    let fast = eng.jacobi(&[a1, a2]).to_rational();
                    assert_eq!(fast, naive, "mismatch at d={d} a=({a1},{a2}) q={}", k.q());
                }
            }
        }
    }

    #[test]
    fn engine_matches_naive_jacobi_arity3() {
        let (k, eng) = engine(7, 1, 3);
        for a1 in 0..3 {
            for a2 in 0..3 {
                for a3 in 0..3 {
                    let chis = [
                        MultiplicativeCharacter::new(&k, 3, a1).unwrap(),
                        MultiplicativeCharacter::new(&k, 3, a2).unwrap(),
                        MultiplicativeCharacter::new(&k, 3, a3).unwrap(),
                    ];
                    let naive = jacobi_sum(&k, &chis).unwrap();
                    let fast = eng.jacobi(&[a1, a2, a3]).to_rational();
                    assert_eq!(fast, naive);
                }
            }
        }
        // arity 4 spot check over F_5
        let (k5, eng5) = engine(5, 1, 4);
        for avec in [[1u64, 1, 1, 1], [1, 2, 3, 1], [2, 1, 3, 2]] {
            let chis: Vec<_> = avec
                .iter()
                .map(|&a| MultiplicativeCharacter::new(&k5, 4, a).unwrap())
                .collect();
            assert_eq!(eng5.jacobi(&avec).to_rational(), jacobi_sum(&k5, &chis).unwrap());
        }
    }

    #[test]
    fn engine_matches_on_stream_field() {
        let k = FiniteField::new(7, 2).unwrap();
        let s = StreamField::new(7, 2).unwrap();
        let dt = ClassData::from_tabled(&k, 8).unwrap();
        let ds = ClassData::from_stream(&s, 8).unwrap();
        assert_eq!(dt.m, ds.m);
        assert_eq!(dt.t_minus1, ds.t_minus1);
    }

    #[test]
    fn gauss_table_matches_naive() {
        for (p, f, d) in [(5u64, 1u32, 4u64), (7, 1, 6), (3, 2, 4)] {
            let k = FiniteField::new(p, f).unwrap();
            for c_enc in 1..k.q() {
                let gt = GaussTable::new(&k, d, c_enc).unwrap();
                let psi = AdditiveCharacter::new(&k, k.element(c_enc)).unwrap();
                for a in 0..d {
                    let chi = MultiplicativeCharacter::new(&k, d, a).unwrap();
                    let naive = gauss_sum(&k, &psi, &chi).unwrap();
                    assert_eq!(gt.gauss(a).to_rational(), naive);
                }
            }
        }
    }

    #[test]
    fn galois_translates_jacobi_tuples() {
        // sigma_h j(avec) = j(h*avec), definitional equivariance the suite
        // relies on for reflection pairs
        let (_, eng) = engine(13, 1, 12);
        for avec in [[1u64, 1], [2, 3], [5, 11]] {
            let j = eng.jacobi(&avec);
            for h in crate::arith::units(12) {
                let translated: Vec<u64> = avec.iter().map(|a| a * h % 12).collect();
                assert_eq!(j.galois_apply(h as i64), eng.jacobi(&translated));
            }
        }
    }
}
