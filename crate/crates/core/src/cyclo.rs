//! Exact arithmetic in cyclotomic fields Q(zeta_n).
//!
//! Elements are stored in the power basis {zeta_n^i : 0 <= i < phi(n)},
//! fully reduced modulo the n-th cyclotomic polynomial, with rational
//! coefficients. Two values are equal iff their coefficient vectors are
//! equal, so equality, hashing and serialization are all canonical.
//!
//! A second, crate-internal representation [`ZCyclo`] keeps i128
//! coefficients for the verification kernels, where billions of ring
//! operations happen on values of modest height. Its operations are
//! checked and panic on overflow; the grids exercised by the suites stay
//! far below the i128 range.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

use crate::arith::{euler_phi, gcd, units};
use crate::error::{Error, Result};

// ---------------------------------------------------------------------------
// Integer polynomial helpers (dense, ascending coefficients).

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Exact division of integer polynomials; the divisor must be monic
/// (true for every cyclotomic polynomial) and must divide exactly.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    assert!(den.last().map(|c| c.is_one()).unwrap_or(false));
    let mut rem: Vec<BigInt> = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut quot = vec![BigInt::zero(); qn + 1];
    for k in (0..=qn).rev() {
        let c = rem[k + dn].clone();
        if !c.is_zero() {
            for i in 0..dn {
                let t = &c * &den[i];
                rem[k + i] -= t;
            }
            rem[k + dn] = BigInt::zero();
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
    quot
}

/// n-th cyclotomic polynomial, ascending coefficients, computed by
/// peeling Phi_d out of x^n - 1 for every proper divisor d of n.
fn cyclotomic_poly(n: u32) -> Vec<BigInt> {
    fn inner(n: u32, cache: &mut HashMap<u32, Vec<BigInt>>) -> Vec<BigInt> {
        if let Some(p) = cache.get(&n) {
            return p.clone();
        }
        let mut num = vec![BigInt::zero(); n as usize + 1];
        num[0] = BigInt::from(-1);
        num[n as usize] = BigInt::one();
        let mut den = vec![BigInt::one()];
        for d in 1..n {
            if n % d == 0 {
                den = poly_mul(&den, &inner(d, cache));
            }
        }
        let out = poly_div_exact(&num, &den);
        cache.insert(n, out.clone());
        out
    }
    let mut cache = HashMap::new();
    inner(n, &mut cache)
}

// ---------------------------------------------------------------------------
// Per-conductor context: reduction rows, built once and shared.

pub(crate) struct CycCtx {
    pub phi: usize,
    /// red_rows[k] = coordinates of x^(phi+k) in the power basis.
    pub red_rows: Vec<Vec<i128>>,
}

impl CycCtx {
    fn build(n: u32) -> CycCtx {
        if n == 1 {
            // Q(zeta_1) = Q with basis {1}; zeta_1 satisfies x - 1 = 0.
            return CycCtx { phi: 1, red_rows: vec![vec![1]] };
        }
        let phi = euler_phi(n as u64) as usize;
        let poly_big = cyclotomic_poly(n);
        let phi_poly: Vec<i128> = poly_big
            .iter()
            .map(|c| i128::try_from(c.clone()).expect("cyclotomic coefficient out of range"))
            .collect();
        debug_assert_eq!(phi_poly.len(), phi + 1);
        // x^phi = -(c_0 + c_1 x + ... + c_{phi-1} x^{phi-1}); higher powers
        // by repeated shift-and-fold.
        let top = (2 * phi).saturating_sub(2).max(n as usize - 1);
        let mut red_rows: Vec<Vec<i128>> = Vec::with_capacity(top + 1 - phi);
        let first: Vec<i128> = phi_poly[..phi].iter().map(|c| c.checked_neg().unwrap()).collect();
        red_rows.push(first);
        for _ in phi + 1..=top {
            let prev = red_rows.last().unwrap();
            let lead = prev[phi - 1];
            let mut next = vec![0i128; phi];
            for i in 1..phi {
                next[i] = prev[i - 1];
            }
            if lead != 0 {
                let r0 = red_rows[0].clone();
                for i in 0..phi {
                    next[i] = next[i]
                        .checked_add(lead.checked_mul(r0[i]).expect("ctx overflow"))
                        .expect("ctx overflow");
                }
            }
            red_rows.push(next);
        }
        CycCtx { phi, red_rows }
    }
}

fn ctx_cache() -> &'static Mutex<HashMap<u32, Arc<CycCtx>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycCtx>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub(crate) fn ctx(n: u32) -> Arc<CycCtx> {
    assert!(n >= 1, "conductor must be positive");
    let mut map = ctx_cache().lock().unwrap();
    map.entry(n).or_insert_with(|| Arc::new(CycCtx::build(n))).clone()
}

// ---------------------------------------------------------------------------
// Down-cast data for a conductor pair m | n: pivot rows of the up-cast
// matrix and the exact inverse of the corresponding square block.

struct DownCast {
    pivot_rows: Vec<usize>,
    /// inv_num / den = inverse of the pivot block.
    inv_num: Vec<Vec<BigInt>>,
    den: BigInt,
    /// Up-cast matrix: column j = coordinates of zeta_m^j at conductor n.
    up_cols: Vec<Vec<i128>>,
}

fn downcast_cache() -> &'static Mutex<HashMap<(u32, u32), Arc<DownCast>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Arc<DownCast>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn downcast_ctx(n: u32, m: u32) -> Arc<DownCast> {
    debug_assert!(n % m == 0 && n != m);
    if let Some(d) = downcast_cache().lock().unwrap().get(&(n, m)) {
        return d.clone();
    }
    let cn = ctx(n);
    let cm = ctx(m);
    let k = n / m;
    let mut up_cols: Vec<Vec<i128>> = Vec::with_capacity(cm.phi);
    for j in 0..cm.phi {
        let mut dense = vec![0i128; n as usize];
        dense[(j as u32 * k) as usize % n as usize] = 1;
        up_cols.push(reduce_dense_i128(&cn, &dense));
    }
    let rows = cn.phi;
    let cols = cm.phi;
    let mut mat: Vec<Vec<BigRational>> = (0..rows)
        .map(|r| (0..cols).map(|c| BigRational::from(BigInt::from(up_cols[c][r]))).collect())
        .collect();
    let mut pivot_rows = Vec::new();
    let mut used = vec![false; rows];
    for c in 0..cols {
        let r = (0..rows)
            .find(|&r| !used[r] && !mat[r][c].is_zero())
            .expect("up-cast matrix must have full column rank");
        used[r] = true;
        pivot_rows.push(r);
        let inv = mat[r][c].clone().recip();
        for cc in 0..cols {
            mat[r][cc] = &mat[r][cc] * &inv;
        }
        for rr in 0..rows {
            if rr != r && !mat[rr][c].is_zero() {
                let f = mat[rr][c].clone();
                for cc in 0..cols {
                    let t = &f * &mat[r][cc];
                    mat[rr][cc] = &mat[rr][cc] - t;
                }
            }
        }
    }
    pivot_rows.sort_unstable();
    // Invert the pivot block with Gauss-Jordan over Q.
    let mut a: Vec<Vec<BigRational>> = pivot_rows
        .iter()
        .map(|&r| (0..cols).map(|c| BigRational::from(BigInt::from(up_cols[c][r]))).collect())
        .collect();
    let mut inv: Vec<Vec<BigRational>> = (0..cols)
        .map(|i| {
            (0..cols)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    for c in 0..cols {
        let piv = (c..cols).find(|&r| !a[r][c].is_zero()).expect("singular pivot block");
        a.swap(c, piv);
        inv.swap(c, piv);
        let f = a[c][c].clone().recip();
        for j in 0..cols {
            a[c][j] = &a[c][j] * &f;
            inv[c][j] = &inv[c][j] * &f;
        }
        for r in 0..cols {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for j in 0..cols {
                    let t = &f * &a[c][j];
                    a[r][j] = &a[r][j] - t;
                    let t = &f * &inv[c][j];
                    inv[r][j] = &inv[r][j] - t;
                }
            }
        }
    }
    let mut den = BigInt::one();
    for row in &inv {
        for e in row {
            den = den.lcm(e.denom());
        }
    }
    let inv_num: Vec<Vec<BigInt>> = inv
        .iter()
        .map(|row| row.iter().map(|e| e.numer() * (&den / e.denom())).collect())
        .collect();
    let out = Arc::new(DownCast { pivot_rows, inv_num, den, up_cols });
    downcast_cache().lock().unwrap().insert((n, m), out.clone());
    out
}

fn reduce_dense_i128(ctx: &CycCtx, dense: &[i128]) -> Vec<i128> {
    let phi = ctx.phi;
    let mut out = vec![0i128; phi];
    for (j, &c) in dense.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if j < phi {
            out[j] = out[j].checked_add(c).expect("zcyclo overflow");
        } else {
            let row = &ctx.red_rows[j - phi];
            for i in 0..phi {
                if row[i] != 0 {
                    out[i] = out[i]
                        .checked_add(c.checked_mul(row[i]).expect("zcyclo overflow"))
                        .expect("zcyclo overflow");
                }
            }
        }
    }
    out
}

fn reduce_dense_rat(ctx: &CycCtx, dense: &[BigRational]) -> Vec<BigRational> {
    let phi = ctx.phi;
    let mut out = vec![BigRational::zero(); phi];
    for (j, c) in dense.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if j < phi {
            out[j] += c;
        } else {
            let row = &ctx.red_rows[j - phi];
            for i in 0..phi {
                if row[i] != 0 {
                    out[i] += c * BigRational::from(BigInt::from(row[i]));
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Public exact type.

/// An exact element of Q(zeta_n) in the canonical power basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    n: u32,
    coeffs: Vec<BigRational>,
}

impl CyclotomicNumber {
    pub fn zero(n: u32) -> Self {
        let c = ctx(n);
        CyclotomicNumber { n, coeffs: vec![BigRational::zero(); c.phi] }
    }

    pub fn one(n: u32) -> Self {
        Self::from_rational(n, BigRational::one())
    }

    pub fn from_rational(n: u32, r: BigRational) -> Self {
        let c = ctx(n);
        let mut coeffs = vec![BigRational::zero(); c.phi];
        coeffs[0] = r;
        CyclotomicNumber { n, coeffs }
    }

    pub fn from_integer(n: u32, v: i64) -> Self {
        Self::from_rational(n, BigRational::from(BigInt::from(v)))
    }

    /// zeta_n^e in canonical form.
    pub fn root_of_unity(n: u32, e: i64) -> Self {
        let c = ctx(n);
        let e = e.rem_euclid(n as i64) as usize;
        let mut dense = vec![BigRational::zero(); n as usize];
        dense[e] = BigRational::one();
        CyclotomicNumber { n, coeffs: reduce_dense_rat(&c, &dense) }
    }

    pub fn from_coeffs(n: u32, coeffs: Vec<BigRational>) -> Self {
        let c = ctx(n);
        assert_eq!(coeffs.len(), c.phi, "coefficient vector must have length phi(n)");
        CyclotomicNumber { n, coeffs }
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Some(r) iff the value is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "conductor mismatch; cast explicitly");
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        CyclotomicNumber { n: self.n, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "conductor mismatch; cast explicitly");
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        CyclotomicNumber { n: self.n, coeffs }
    }

    pub fn neg(&self) -> Self {
        CyclotomicNumber { n: self.n, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "conductor mismatch; cast explicitly");
        let c = ctx(self.n);
        let phi = c.phi;
        let mut dense = vec![BigRational::zero(); 2 * phi - 1];
        for i in 0..phi {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..phi {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                dense[i + j] += &self.coeffs[i] * &other.coeffs[j];
            }
        }
        CyclotomicNumber { n: self.n, coeffs: reduce_dense_rat(&c, &dense) }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        CyclotomicNumber { n: self.n, coeffs: self.coeffs.iter().map(|a| a * r).collect() }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Image under zeta_n -> zeta_n^h for gcd(h, n) = 1.
    pub fn galois_apply(&self, h: i64) -> Result<Self> {
        let n = self.n as u64;
        let hm = h.rem_euclid(n as i64) as u64;
        if n > 1 && gcd(hm, n) != 1 {
            return Err(Error::NotCoprime { h, n });
        }
        let c = ctx(self.n);
        let mut dense = vec![BigRational::zero(); self.n as usize];
        for (i, co) in self.coeffs.iter().enumerate() {
            if !co.is_zero() {
                let e = (i as u64 * hm % n) as usize;
                dense[e] += co;
            }
        }
        Ok(CyclotomicNumber { n: self.n, coeffs: reduce_dense_rat(&c, &dense) })
    }

    /// Complex conjugation (the h = -1 Galois action).
    pub fn conj(&self) -> Self {
        self.galois_apply(-1).expect("-1 is coprime to every conductor")
    }

    /// Multiplicative inverse via the product of the nontrivial conjugates
    /// divided by the rational field norm.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroArgument);
        }
        let mut prod = Self::one(self.n);
        if self.n > 1 {
            for h in units(self.n as u64) {
                if h != 1 {
                    prod = prod.mul(&self.galois_apply(h as i64)?);
                }
            }
        }
        let norm = self.mul(&prod).as_rational().expect("field norm must be rational");
        assert!(!norm.is_zero());
        Ok(prod.scale(&norm.recip()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Rewrite at conductor m. Up-casts are always exact; down-casts (and
    /// cross-casts through Q(zeta_gcd)) succeed iff the value lies in the
    /// target field, otherwise `NotInSubfield`.
    pub fn cast_conductor(&self, m: u32) -> Result<Self> {
        assert!(m >= 1);
        if m == self.n {
            return Ok(self.clone());
        }
        if m % self.n == 0 {
            return Ok(self.upcast(m));
        }
        if self.n % m == 0 {
            return self.downcast_to(m).map_err(|_| Error::NotInSubfield { target: m });
        }
        let g = gcd(self.n as u64, m as u64) as u32;
        let mid = self.downcast_to(g).map_err(|_| Error::NotInSubfield { target: m })?;
        Ok(mid.upcast(m))
    }

    fn upcast(&self, m: u32) -> Self {
        debug_assert_eq!(m % self.n, 0);
        let cm = ctx(m);
        let k = (m / self.n) as usize;
        let mut dense = vec![BigRational::zero(); m as usize];
        for (i, co) in self.coeffs.iter().enumerate() {
            if !co.is_zero() {
                dense[i * k] += co;
            }
        }
        CyclotomicNumber { n: m, coeffs: reduce_dense_rat(&cm, &dense) }
    }

    fn downcast_to(&self, m: u32) -> Result<Self> {
        debug_assert!(self.n % m == 0 && self.n != m);
        let dc = downcast_ctx(self.n, m);
        let cm = ctx(m);
        let den = BigRational::from(dc.den.clone());
        let mut out = vec![BigRational::zero(); cm.phi];
        for (j, orow) in out.iter_mut().enumerate() {
            let mut acc = BigRational::zero();
            for (k, &r) in dc.pivot_rows.iter().enumerate() {
                if !dc.inv_num[j][k].is_zero() {
                    acc += &self.coeffs[r] * BigRational::from(dc.inv_num[j][k].clone());
                }
            }
            *orow = acc / &den;
        }
        // Pushing the candidate back up must reproduce the value exactly.
        for r in 0..self.coeffs.len() {
            let mut acc = BigRational::zero();
            for j in 0..cm.phi {
                if dc.up_cols[j][r] != 0 {
                    acc += &out[j] * BigRational::from(BigInt::from(dc.up_cols[j][r]));
                }
            }
            if acc != self.coeffs[r] {
                return Err(Error::NotInSubfield { target: m });
            }
        }
        Ok(CyclotomicNumber { n: m, coeffs: out })
    }

    /// Exact multiplicative order when the value is a root of unity in
    /// Q(zeta_n) (necessarily dividing 2n), else None.
    pub fn root_of_unity_order(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let bound = 2 * self.n as u64;
        if self.pow(bound) != Self::one(self.n) {
            return None;
        }
        let mut ord = bound;
        for (p, _) in crate::arith::factor(bound) {
            while ord % p == 0 && self.pow(ord / p) == Self::one(self.n) {
                ord /= p;
            }
        }
        Some(ord)
    }

    /// Weight w such that sigma(alpha) * conj(sigma(alpha)) = q^w for every
    /// embedding sigma, verified algebraically, together with the q-power
    /// integrality scaling. None if either condition fails.
    pub fn weil_weight(&self, q: u64) -> Result<Option<i64>> {
        if self.is_zero() {
            return Err(Error::ZeroArgument);
        }
        let qr = BigRational::from(BigInt::from(q));
        let mut weight: Option<(BigRational, i64)> = None;
        for h in units(self.n as u64) {
            let hh = if self.n == 1 { 1 } else { h as i64 };
            let prod = self
                .galois_apply(hh)
                .expect("unit")
                .mul(&self.galois_apply(-hh).expect("unit"));
            let Some(r) = prod.as_rational() else { return Ok(None) };
            match &weight {
                None => {
                    if r <= BigRational::zero() {
                        return Ok(None);
                    }
                    let mut w = 0i64;
                    let mut v = r.clone();
                    while v > BigRational::one() {
                        v /= &qr;
                        w += 1;
                    }
                    while v < BigRational::one() {
                        v *= &qr;
                        w -= 1;
                    }
                    if !v.is_one() {
                        return Ok(None);
                    }
                    weight = Some((r, w));
                }
                Some((r0, _)) => {
                    if &r != r0 {
                        return Ok(None);
                    }
                }
            }
        }
        let (_, w) = weight.expect("at least one unit");
        let mut lcm_den = BigInt::one();
        for c in &self.coeffs {
            lcm_den = lcm_den.lcm(c.denom());
        }
        let qb = BigInt::from(q);
        let mut rest = lcm_den.abs();
        while !rest.is_one() {
            let g = rest.gcd(&qb);
            if g.is_one() {
                return Ok(None);
            }
            while (&rest % &g).is_zero() {
                rest /= &g;
            }
        }
        Ok(Some(w))
    }

    pub fn to_zcyclo(&self) -> Option<ZCyclo> {
        let mut c = Vec::with_capacity(self.coeffs.len());
        for co in &self.coeffs {
            if !co.denom().is_one() {
                return None;
            }
            c.push(i128::try_from(co.numer().clone()).ok()?);
        }
        Some(ZCyclo { n: self.n, c })
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Textual form `n:[c0,c1,...]`; integers plain, other rationals as `a/b`.
impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:[", self.n)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if c.denom().is_one() {
                write!(f, "{}", c.numer())?;
            } else {
                write!(f, "{}/{}", c.numer(), c.denom())?;
            }
        }
        write!(f, "]")
    }
}

impl FromStr for CyclotomicNumber {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad cyclotomic literal: {s}"));
        let (head, rest) = s.split_once(':').ok_or_else(bad)?;
        let n: u32 = head.trim().parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        let rest = rest.trim();
        let inner = rest.strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
        let mut coeffs = Vec::new();
        if !inner.trim().is_empty() {
            for part in inner.split(',') {
                let part = part.trim();
                let r = if let Some((a, b)) = part.split_once('/') {
                    let den: BigInt = b.trim().parse().map_err(|_| bad())?;
                    if den.is_zero() {
                        return Err(bad());
                    }
                    BigRational::new(a.trim().parse().map_err(|_| bad())?, den)
                } else {
                    BigRational::from(part.parse::<BigInt>().map_err(|_| bad())?)
                };
                coeffs.push(r);
            }
        }
        let c = ctx(n);
        if coeffs.len() != c.phi {
            return Err(bad());
        }
        Ok(CyclotomicNumber { n, coeffs })
    }
}

// ---------------------------------------------------------------------------
// Fast integral representation for the verification kernels.

/// Cyclotomic integer with i128 coefficients in the canonical power basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ZCyclo {
    n: u32,
    c: Vec<i128>,
}

impl ZCyclo {
    pub fn zero(n: u32) -> Self {
        ZCyclo { n, c: vec![0; ctx(n).phi] }
    }

    pub fn one(n: u32) -> Self {
        let mut z = Self::zero(n);
        z.c[0] = 1;
        z
    }

    pub fn from_integer(n: u32, v: i128) -> Self {
        let mut z = Self::zero(n);
        z.c[0] = v;
        z
    }

    pub fn root_of_unity(n: u32, e: i64) -> Self {
        let cx = ctx(n);
        let e = e.rem_euclid(n as i64) as usize;
        let mut dense = vec![0i128; n as usize];
        dense[e] = 1;
        ZCyclo { n, c: reduce_dense_i128(&cx, &dense) }
    }

    /// Reduce a dense exponent-indexed integer vector (length n) into the
    /// power basis; the enumeration kernels hand off class counts this way.
    pub fn from_dense(n: u32, dense: &[i128]) -> Self {
        let cx = ctx(n);
        ZCyclo { n, c: reduce_dense_i128(&cx, dense) }
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    pub fn as_integer(&self) -> Option<i128> {
        if self.c[1..].iter().all(|&x| x == 0) {
            Some(self.c[0])
        } else {
            None
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        let c = self
            .c
            .iter()
            .zip(&o.c)
            .map(|(a, b)| a.checked_add(*b).expect("zcyclo overflow"))
            .collect();
        ZCyclo { n: self.n, c }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        let c = self
            .c
            .iter()
            .zip(&o.c)
            .map(|(a, b)| a.checked_sub(*b).expect("zcyclo overflow"))
            .collect();
        ZCyclo { n: self.n, c }
    }

    pub fn neg(&self) -> Self {
        ZCyclo { n: self.n, c: self.c.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, k: i128) -> Self {
        let c = self.c.iter().map(|a| a.checked_mul(k).expect("zcyclo overflow")).collect();
        ZCyclo { n: self.n, c }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        let cx = ctx(self.n);
        let phi = cx.phi;
        let mut dense = vec![0i128; 2 * phi - 1];
        for i in 0..phi {
            let a = self.c[i];
            if a == 0 {
                continue;
            }
            for j in 0..phi {
                let b = o.c[j];
                if b != 0 {
                    dense[i + j] = dense[i + j]
                        .checked_add(a.checked_mul(b).expect("zcyclo overflow"))
                        .expect("zcyclo overflow");
                }
            }
        }
        ZCyclo { n: self.n, c: reduce_dense_i128(&cx, &dense) }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn galois_apply(&self, h: i64) -> Self {
        let n = self.n as u64;
        let hm = h.rem_euclid(n as i64) as u64;
        debug_assert!(n == 1 || gcd(hm, n) == 1);
        let cx = ctx(self.n);
        let mut dense = vec![0i128; self.n as usize];
        for (i, &co) in self.c.iter().enumerate() {
            if co != 0 {
                let e = (i as u64 * hm % n) as usize;
                dense[e] = dense[e].checked_add(co).expect("zcyclo overflow");
            }
        }
        ZCyclo { n: self.n, c: reduce_dense_i128(&cx, &dense) }
    }

    /// Exact division when the quotient is a cyclotomic integer; None when
    /// the divisor is zero or the quotient is not integral.
    pub fn div_exact(&self, o: &Self) -> Option<Self> {
        assert_eq!(self.n, o.n);
        if o.is_zero() {
            return None;
        }
        let mut prod = Self::one(self.n);
        if self.n > 1 {
            for h in units(self.n as u64) {
                if h != 1 {
                    prod = prod.mul(&o.galois_apply(h as i64));
                }
            }
        }
        let norm = o.mul(&prod).as_integer().expect("field norm must be rational");
        debug_assert!(norm != 0);
        let num = self.mul(&prod);
        let mut c = Vec::with_capacity(num.c.len());
        for x in num.c {
            if x % norm != 0 {
                return None;
            }
            c.push(x / norm);
        }
        Some(ZCyclo { n: self.n, c })
    }

    pub fn upcast(&self, m: u32) -> Self {
        if m == self.n {
            return self.clone();
        }
        debug_assert_eq!(m % self.n, 0);
        let cm = ctx(m);
        let k = (m / self.n) as usize;
        let mut dense = vec![0i128; m as usize];
        for (i, &co) in self.c.iter().enumerate() {
            if co != 0 {
                dense[i * k] = dense[i * k].checked_add(co).expect("zcyclo overflow");
            }
        }
        ZCyclo { n: m, c: reduce_dense_i128(&cm, &dense) }
    }

    /// Down-cast to a conductor m dividing n; `NotInSubfield` if the value
    /// does not lie there.
    pub fn downcast(&self, m: u32) -> Result<Self> {
        if m == self.n {
            return Ok(self.clone());
        }
        debug_assert!(self.n % m == 0);
        let dc = downcast_ctx(self.n, m);
        let cm = ctx(m);
        let mut out = vec![0i128; cm.phi];
        for (j, o) in out.iter_mut().enumerate() {
            let mut acc = BigInt::zero();
            for (k, &r) in dc.pivot_rows.iter().enumerate() {
                if !dc.inv_num[j][k].is_zero() {
                    acc += &dc.inv_num[j][k] * BigInt::from(self.c[r]);
                }
            }
            let (q, rem) = acc.div_rem(&dc.den);
            if !rem.is_zero() {
                return Err(Error::NotInSubfield { target: m });
            }
            *o = i128::try_from(q).map_err(|_| Error::Overflow)?;
        }
        for r in 0..self.c.len() {
            let mut acc: i128 = 0;
            for j in 0..cm.phi {
                if dc.up_cols[j][r] != 0 {
                    acc = acc
                        .checked_add(out[j].checked_mul(dc.up_cols[j][r]).ok_or(Error::Overflow)?)
                        .ok_or(Error::Overflow)?;
                }
            }
            if acc != self.c[r] {
                return Err(Error::NotInSubfield { target: m });
            }
        }
        Ok(ZCyclo { n: m, c: out })
    }

    pub fn to_rational(&self) -> CyclotomicNumber {
        CyclotomicNumber {
            n: self.n,
            coeffs: self.c.iter().map(|&x| BigRational::from(BigInt::from(x))).collect(),
        }
    }

    /// Exact multiplicative order if the value is a root of unity (order
    /// divides 2n), else None.
    pub fn root_of_unity_order(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let bound = 2 * self.n as u64;
        if self.pow(bound) != Self::one(self.n) {
            return None;
        }
        let mut ord = bound;
        for (p, _) in crate::arith::factor(bound) {
            while ord % p == 0 && self.pow(ord / p) == Self::one(self.n) {
                ord /= p;
            }
        }
        Some(ord)
    }
}

impl fmt::Debug for ZCyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_rational())
    }
}

impl fmt::Display for ZCyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_rational())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta(n: u32, e: i64) -> CyclotomicNumber {
        CyclotomicNumber::root_of_unity(n, e)
    }

    #[test]
    fn cyclotomic_poly_basics() {
        let p = cyclotomic_poly(12);
        let want: Vec<BigInt> = [1, 0, -1, 0, 1].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(p, want);
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for n in [2u32, 3, 4, 5, 6, 8, 12, 30] {
            let mut acc = CyclotomicNumber::zero(n);
            for e in 0..n {
                acc = acc.add(&zeta(n, e as i64));
            }
            assert!(acc.is_zero(), "sum of all n-th roots nonzero for n={n}");
        }
    }

    #[test]
    fn galois_is_automorphism() {
        let a = zeta(5, 1).add(&CyclotomicNumber::from_integer(5, 3));
        let b = zeta(5, 2).sub(&zeta(5, 4));
        for h in [2i64, 3, 4, -1] {
            let lhs = a.mul(&b).galois_apply(h).unwrap();
            let rhs = a.galois_apply(h).unwrap().mul(&b.galois_apply(h).unwrap());
            assert_eq!(lhs, rhs);
        }
        assert_eq!(zeta(3, 1).galois_apply(2).unwrap(), zeta(3, 2));
        assert_eq!(a.galois_apply(1).unwrap(), a);
        let v = CyclotomicNumber::one(5).add(&zeta(5, 1));
        assert_eq!(v.galois_apply(-1).unwrap(), CyclotomicNumber::one(5).add(&zeta(5, 4)));
        assert!(zeta(6, 1).galois_apply(2).is_err());
    }

    #[test]
    fn division_exact() {
        let a = zeta(7, 3).add(&CyclotomicNumber::from_integer(7, 2));
        let b = zeta(7, 5).sub(&CyclotomicNumber::from_integer(7, 4));
        let q = a.div(&b).unwrap();
        assert_eq!(q.mul(&b), a);
        assert_eq!(CyclotomicNumber::zero(7).div(&b).unwrap(), CyclotomicNumber::zero(7));
        assert!(a.div(&CyclotomicNumber::zero(7)).is_err());
    }

    #[test]
    fn conductor_casts() {
        let z3 = zeta(3, 1);
        let up = z3.cast_conductor(6).unwrap();
        assert_eq!(up, zeta(6, 2));
        assert_eq!(up.cast_conductor(3).unwrap(), z3);
        assert_eq!(zeta(12, 1).cast_conductor(4), Err(Error::NotInSubfield { target: 4 }));
        let two = CyclotomicNumber::from_integer(12, 2);
        assert_eq!(two.cast_conductor(5).unwrap(), CyclotomicNumber::from_integer(5, 2));
    }

    #[test]
    fn root_of_unity_detection() {
        assert_eq!(CyclotomicNumber::from_integer(5, -1).root_of_unity_order(), Some(2));
        let v = CyclotomicNumber::one(3).add(&zeta(3, 1));
        assert_eq!(v.root_of_unity_order(), Some(6));
        assert_eq!(CyclotomicNumber::from_integer(3, 2).root_of_unity_order(), None);
        assert_eq!(CyclotomicNumber::zero(3).root_of_unity_order(), None);
    }

    #[test]
    fn weil_weights() {
        let q5 = CyclotomicNumber::from_integer(4, 5);
        assert_eq!(q5.weil_weight(5).unwrap(), Some(2));
        assert_eq!(CyclotomicNumber::from_integer(3, 2).weil_weight(7).unwrap(), None);
        let v = CyclotomicNumber::one(3).add(&zeta(3, 1));
        assert_eq!(v.weil_weight(7).unwrap(), Some(0));
        assert!(CyclotomicNumber::zero(3).weil_weight(7).is_err());
    }

    #[test]
    fn zcyclo_matches_rational_arithmetic() {
        let a = zeta(12, 5).add(&CyclotomicNumber::from_integer(12, 3));
        let b = zeta(12, 7).sub(&zeta(12, 2));
        let za = a.to_zcyclo().unwrap();
        let zb = b.to_zcyclo().unwrap();
        assert_eq!(za.mul(&zb).to_rational(), a.mul(&b));
        assert_eq!(za.add(&zb).to_rational(), a.add(&b));
        assert_eq!(za.pow(5).to_rational(), a.pow(5));
        assert_eq!(za.galois_apply(7).to_rational(), a.galois_apply(7).unwrap());
        let prod = za.mul(&zb);
        assert_eq!(prod.div_exact(&zb).unwrap(), za);
    }

    #[test]
    fn serialization_roundtrip() {
        let v = zeta(12, 7).scale(&BigRational::new(BigInt::from(-3), BigInt::from(7)));
        let s = v.to_string();
        let back: CyclotomicNumber = s.parse().unwrap();
        assert_eq!(back, v);
        assert_eq!(back.to_string(), s);
    }

    #[test]
    fn conductor_one_and_two() {
        let one = CyclotomicNumber::one(1);
        assert_eq!(one.add(&one).as_rational().unwrap(), BigRational::from(BigInt::from(2)));
        let m1 = zeta(2, 1);
        assert_eq!(m1.as_rational().unwrap(), BigRational::from(BigInt::from(-1)));
    }
}
