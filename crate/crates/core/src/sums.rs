//! Gauss and Jacobi sums as exact cyclotomic numbers, the group-ring
//! elements built from them, character projectors, and the eigenvalue
//! identities tying the two together.
//!
//! The scalar sums here are computed by literal enumeration over the
//! multiplicative group (with the last coordinate solved from the linear
//! constraint), so the identity checks downstream are genuine theorems,
//! not restatements of the computation path. The faster family engine in
//! [`crate::engine`] is cross-checked against these definitions in tests.

use std::collections::BTreeMap;

use num::rational::BigRational;
use num::BigInt;

use crate::chars::{AdditiveCharacter, MultiplicativeCharacter};
use crate::cyclo::{CyclotomicNumber, ZCyclo};
use crate::error::{Error, Result};
use crate::ff::{FieldElement, FiniteField};
use crate::report::CheckReport;

/// Conductor used for Gauss sums: p*d with gcd(p, d) = 1.
pub fn gauss_conductor(p: u64, d: u64) -> u32 {
    (p * d) as u32
}

/// zeta_p^t * zeta_d^u as an exponent of zeta_{pd}.
fn mixed_exponent(p: u64, d: u64, t: u64, u: u64) -> usize {
    ((t % p) * d + (u % d) * p) as usize % (p * d) as usize
}

/// g(psi, chi) = -sum_{m in k*} psi(m) chi(m^((q-1)/d)), conductor p*d.
pub fn gauss_sum(
    field: &FiniteField,
    psi: &AdditiveCharacter,
    chi: &MultiplicativeCharacter,
) -> Result<CyclotomicNumber> {
    if psi.is_trivial() {
        return Err(Error::TrivialAdditive);
    }
    let p = field.p();
    let d = chi.d;
    let n = gauss_conductor(p, d);
    let mut dense = vec![0i128; (p * d) as usize];
    for m in field.nonzero_elements() {
        let t = psi.exponent(field, m);
        let u = chi.a * (field.dlog(m)? % d) % d;
        dense[mixed_exponent(p, d, t, u)] -= 1;
    }
    Ok(ZCyclo::from_dense(n, &dense).to_rational())
}

/// j(chi_1, ..., chi_n) by direct enumeration with the last coordinate
/// solved from sum(m_i) = 1; conductor d.
pub fn jacobi_sum(
    field: &FiniteField,
    chis: &[MultiplicativeCharacter],
) -> Result<CyclotomicNumber> {
    jacobi_sum_twisted(field, chis, field.one())
}

/// Twisted variant: enumerate sum(m_i) = c. Exposed for the group-ring
/// cross-checks; the paper's Jacobi sum is c = 1.
pub fn jacobi_sum_twisted(
    field: &FiniteField,
    chis: &[MultiplicativeCharacter],
    c: FieldElement,
) -> Result<CyclotomicNumber> {
    let n = chis.len();
    if n < 2 {
        return Err(Error::ArityTooSmall(n));
    }
    let d = chis[0].d;
    assert!(chis.iter().all(|x| x.d == d), "characters must share d");
    let mut dense = vec![0i128; d as usize];
    let mut stack: Vec<FieldElement> = Vec::with_capacity(n - 1);
    enumerate_jacobi(field, chis, c, &mut stack, 0, &mut dense)?;
    let sign = if (n - 1) % 2 == 0 { 1 } else { -1 };
    let z = ZCyclo::from_dense(d as u32, &dense);
    Ok(if sign < 0 { z.neg() } else { z }.to_rational())
}

fn enumerate_jacobi(
    field: &FiniteField,
    chis: &[MultiplicativeCharacter],
    c: FieldElement,
    stack: &mut Vec<FieldElement>,
    partial_exp: u64,
    dense: &mut [i128],
) -> Result<()> {
    let n = chis.len();
    let d = chis[0].d;
    if stack.len() == n - 1 {
        let mut last = c;
        for &m in stack.iter() {
            last = field.sub(last, m);
        }
        if !last.is_zero() {
            let e = (partial_exp + chis[n - 1].residue_exponent(field, last)?) % d;
            dense[e as usize] += 1;
        }
        return Ok(());
    }
    let i = stack.len();
    for m in field.nonzero_elements() {
        let e = (partial_exp + chis[i].residue_exponent(field, m)?) % d;
        stack.push(m);
        enumerate_jacobi(field, chis, c, stack, e, dense)?;
        stack.pop();
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Group rings.

/// The finite abelian groups the artifact's group-ring elements live over.
/// Keys are canonical integer tuples: field encodings on additive axes,
/// discrete-log exponents mod d on mu_d axes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupShape {
    /// k x mu_d: keys (additive encoding, exponent mod d)
    AddTimesMu { q: u64, d: u64 },
    /// mu_d^n: keys (u_1, ..., u_n)
    MuPower { d: u64, n: usize },
    /// (Z/dZ)^*: keys (h)
    UnitsMod { d: u64 },
}

impl GroupShape {
    pub fn key_len(&self) -> usize {
        match self {
            GroupShape::AddTimesMu { .. } => 2,
            GroupShape::MuPower { n, .. } => *n,
            GroupShape::UnitsMod { .. } => 1,
        }
    }

    pub fn identity(&self) -> Vec<u64> {
        match self {
            GroupShape::AddTimesMu { .. } => vec![0, 0],
            GroupShape::MuPower { n, .. } => vec![0; *n],
            GroupShape::UnitsMod { .. } => vec![1],
        }
    }

    pub fn combine(&self, field: Option<&FiniteField>, a: &[u64], b: &[u64]) -> Vec<u64> {
        match self {
            GroupShape::AddTimesMu { d, .. } => {
                let k = field.expect("additive axis needs its field");
                let sum = k.add(k.element(a[0]), k.element(b[0])).encoding();
                vec![sum, (a[1] + b[1]) % d]
            }
            GroupShape::MuPower { d, n } => {
                (0..*n).map(|i| (a[i] + b[i]) % d).collect()
            }
            GroupShape::UnitsMod { d } => vec![a[0] * b[0] % d],
        }
    }

    pub fn order(&self) -> u64 {
        match self {
            GroupShape::AddTimesMu { q, d } => q * d,
            GroupShape::MuPower { d, n } => d.pow(*n as u32),
            GroupShape::UnitsMod { d } => crate::arith::euler_phi(*d),
        }
    }
}

/// Sparse group-ring element with exact cyclotomic coefficients in
/// canonical form (zero coefficients dropped, keys ordered).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingElement {
    pub shape: GroupShape,
    pub conductor: u32,
    pub coeffs: BTreeMap<Vec<u64>, CyclotomicNumber>,
}

impl GroupRingElement {
    pub fn zero(shape: GroupShape, conductor: u32) -> Self {
        GroupRingElement { shape, conductor, coeffs: BTreeMap::new() }
    }

    pub fn insert_add(&mut self, key: Vec<u64>, v: CyclotomicNumber) {
        assert_eq!(key.len(), self.shape.key_len());
        let entry = self
            .coeffs
            .entry(key.clone())
            .or_insert_with(|| CyclotomicNumber::zero(self.conductor));
        *entry = entry.add(&v);
        if entry.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    pub fn scale(&self, s: &CyclotomicNumber) -> Self {
        let mut out = GroupRingElement::zero(self.shape.clone(), self.conductor);
        for (k, v) in &self.coeffs {
            let c = v.mul(s);
            if !c.is_zero() {
                out.coeffs.insert(k.clone(), c);
            }
        }
        out
    }

    /// Convolution product; `field` is required for shapes with an
    /// additive axis.
    pub fn convolve(&self, other: &Self, field: Option<&FiniteField>) -> Self {
        assert_eq!(self.shape, other.shape);
        assert_eq!(self.conductor, other.conductor);
        let mut out = GroupRingElement::zero(self.shape.clone(), self.conductor);
        for (ka, va) in &self.coeffs {
            for (kb, vb) in &other.coeffs {
                let key = self.shape.combine(field, ka, kb);
                let prod = va.mul(vb);
                if !prod.is_zero() {
                    out.insert_add(key, prod);
                }
            }
        }
        out
    }

    /// Augmentation: sum of all coefficients (all group elements to 1).
    pub fn augmentation(&self) -> CyclotomicNumber {
        let mut acc = CyclotomicNumber::zero(self.conductor);
        for v in self.coeffs.values() {
            acc = acc.add(v);
        }
        acc
    }

    /// Degeneration along mu_d -> mu_{d'} (m -> m^(d/d')): in exponent
    /// coordinates u -> u mod d'.
    pub fn degenerate(&self, d_new: u64) -> Result<Self> {
        let (shape, map_axis): (GroupShape, fn(&[u64], u64) -> Vec<u64>) = match &self.shape {
            GroupShape::AddTimesMu { q, d } => {
                if d % d_new != 0 {
                    return Err(Error::BadDivisor { d: d_new, m: *d });
                }
                (GroupShape::AddTimesMu { q: *q, d: d_new }, |k, dn| {
                    vec![k[0], k[1] % dn]
                })
            }
            GroupShape::MuPower { d, n } => {
                if d % d_new != 0 {
                    return Err(Error::BadDivisor { d: d_new, m: *d });
                }
                (GroupShape::MuPower { d: d_new, n: *n }, |k, dn| {
                    k.iter().map(|u| u % dn).collect()
                })
            }
            GroupShape::UnitsMod { .. } => {
                return Err(Error::BadParameters("no degeneration for unit groups".into()))
            }
        };
        let mut out = GroupRingElement::zero(shape, self.conductor);
        for (k, v) in &self.coeffs {
            out.insert_add(map_axis(k, d_new), v.clone());
        }
        Ok(out)
    }

    pub fn serialize_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .coeffs
            .iter()
            .map(|(k, v)| {
                let key = k.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
                (key, serde_json::Value::String(v.to_string()))
            })
            .collect();
        serde_json::Value::Object(map)
    }
}

/// g_d = -sum_{m in k*} (m, m^((q-1)/d)) in Z[k x mu_d].
pub fn gauss_element(field: &FiniteField, d: u64) -> Result<GroupRingElement> {
    if d == 0 || (field.q() - 1) % d != 0 {
        return Err(Error::BadDivisor { d, m: field.q() - 1 });
    }
    let shape = GroupShape::AddTimesMu { q: field.q(), d };
    let mut out = GroupRingElement::zero(shape, 1);
    for m in field.nonzero_elements() {
        let u = field.dlog(m)? % d;
        out.insert_add(vec![m.encoding(), u], CyclotomicNumber::from_integer(1, -1));
    }
    Ok(out)
}

/// The twisted Jacobi sum element over Z[mu_d^n] for sum(m_i) = c.
pub fn jacobi_element(
    field: &FiniteField,
    d: u64,
    n: usize,
    c: FieldElement,
) -> Result<GroupRingElement> {
    if d == 0 || (field.q() - 1) % d != 0 {
        return Err(Error::BadDivisor { d, m: field.q() - 1 });
    }
    if n < 2 {
        return Err(Error::ArityTooSmall(n));
    }
    field.try_check(c)?;
    let shape = GroupShape::MuPower { d, n };
    let mut out = GroupRingElement::zero(shape, 1);
    let sign = CyclotomicNumber::from_integer(1, if (n - 1) % 2 == 0 { 1 } else { -1 });
    let mut stack = Vec::with_capacity(n - 1);
    let mut key = vec![0u64; n];
    enumerate_element(field, d, n, c, &mut stack, &mut key, &sign, &mut out)?;
    Ok(out)
}

fn enumerate_element(
    field: &FiniteField,
    d: u64,
    n: usize,
    c: FieldElement,
    stack: &mut Vec<FieldElement>,
    key: &mut Vec<u64>,
    sign: &CyclotomicNumber,
    out: &mut GroupRingElement,
) -> Result<()> {
    if stack.len() == n - 1 {
        let mut last = c;
        for &m in stack.iter() {
            last = field.sub(last, m);
        }
        if !last.is_zero() {
            key[n - 1] = field.dlog(last)? % d;
            out.insert_add(key.clone(), sign.clone());
        }
        return Ok(());
    }
    let i = stack.len();
    for m in field.nonzero_elements() {
        key[i] = field.dlog(m)? % d;
        stack.push(m);
        enumerate_element(field, d, n, c, stack, key, sign, out)?;
        stack.pop();
    }
    Ok(())
}

/// Projector e^(psi,chi) = (1/(qd)) sum psi_bar(a) chi_bar(m) (a, m) over
/// k x mu_d, coefficients at conductor p*d.
pub fn projector_add_mu(
    field: &FiniteField,
    psi: &AdditiveCharacter,
    chi: &MultiplicativeCharacter,
) -> Result<GroupRingElement> {
    let p = field.p();
    let d = chi.d;
    let n = gauss_conductor(p, d);
    let shape = GroupShape::AddTimesMu { q: field.q(), d };
    let mut out = GroupRingElement::zero(shape, n);
    let inv_order = BigRational::new(BigInt::from(1), BigInt::from(field.q() * d));
    for a in field.elements() {
        let t = psi.exponent(field, a);
        for u in 0..d {
            // conjugate character values
            let e = mixed_exponent(p, d, (p - t % p) % p, (d - chi.a * u % d) % d);
            let coeff = CyclotomicNumber::root_of_unity(n, e as i64).scale(&inv_order);
            out.insert_add(vec![a.encoding(), u], coeff);
        }
    }
    Ok(out)
}

/// Projector e^(chi_1,...,chi_n) over mu_d^n, coefficients at conductor d.
pub fn projector_mu_power(d: u64, avec: &[u64]) -> GroupRingElement {
    let n = avec.len();
    let shape = GroupShape::MuPower { d, n };
    let mut out = GroupRingElement::zero(shape, d as u32);
    let order = d.pow(n as u32);
    let inv_order = BigRational::new(BigInt::from(1), BigInt::from(order));
    let mut key = vec![0u64; n];
    loop {
        let e: u64 = key.iter().zip(avec).map(|(u, a)| (d - a * u % d) % d).sum::<u64>() % d;
        let coeff = CyclotomicNumber::root_of_unity(d as u32, e as i64).scale(&inv_order);
        out.insert_add(key.clone(), coeff);
        // odometer
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            key[i] += 1;
            if key[i] < d {
                break;
            }
            key[i] = 0;
            i += 1;
        }
    }
}

// ---------------------------------------------------------------------------
// Eigenvalue checks (raw convolution against the scalar prediction).

fn summarize_scaled(elem: &GroupRingElement) -> String {
    // First key with nonzero coefficient, for the human-readable report;
    // pass/fail always compares whole elements.
    match elem.coeffs.iter().next() {
        Some((k, v)) => format!(
            "{}@({})",
            v,
            k.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        ),
        None => "0".to_string(),
    }
}

/// g_d * e^(psi,chi) = g(psi,chi) e^(psi,chi), checked by raw convolution
/// on the projector scaled by |G| (which clears denominators).
pub fn eigen_check_gauss(
    field: &FiniteField,
    d: u64,
    psi: &AdditiveCharacter,
    a: u64,
) -> Result<CheckReport> {
    let g_elem = gauss_element_at(field, d, gauss_conductor(field.p(), d))?;
    eigen_check_gauss_with(field, d, psi, a, &g_elem)
}

/// Gauss sum element with coefficients lifted to the given conductor.
pub fn gauss_element_at(field: &FiniteField, d: u64, n: u32) -> Result<GroupRingElement> {
    let g_elem = gauss_element(field, d)?;
    Ok(GroupRingElement {
        shape: g_elem.shape.clone(),
        conductor: n,
        coeffs: g_elem
            .coeffs
            .iter()
            .map(|(k, v)| (k.clone(), v.cast_conductor(n).expect("integer upcast")))
            .collect(),
    })
}

pub fn eigen_check_gauss_with(
    field: &FiniteField,
    d: u64,
    psi: &AdditiveCharacter,
    a: u64,
    g_elem: &GroupRingElement,
) -> Result<CheckReport> {
    if psi.is_trivial() {
        return Err(Error::TrivialAdditive);
    }
    let chi = MultiplicativeCharacter::new(field, d, a)?;
    let n = gauss_conductor(field.p(), d);
    // Work on the projector scaled by |G| = q*d, which has cyclotomic
    // integer coefficients; positive scaling does not affect equality.
    let p = field.p();
    let mut e_scaled: Vec<(Vec<u64>, ZCyclo)> = Vec::with_capacity((field.q() * d) as usize);
    for g in field.elements() {
        let t = psi.exponent(field, g);
        for u in 0..d {
            let e = mixed_exponent(p, d, (p - t % p) % p, (d - chi.a * u % d) % d);
            e_scaled.push((vec![g.encoding(), u], ZCyclo::root_of_unity(n, e as i64)));
        }
    }
    let lhs = zconvolve_add_mu(field, d, g_elem, &e_scaled, n);
    let gval = gauss_sum(field, psi, &chi)?.to_zcyclo().expect("gauss sums are integral");
    let rhs: BTreeMap<Vec<u64>, ZCyclo> = e_scaled
        .iter()
        .map(|(k, v)| (k.clone(), v.mul(&gval)))
        .filter(|(_, v)| !v.is_zero())
        .collect();
    let pass = lhs == rhs;
    let mut report = CheckReport::new("eigen_gauss")
        .param("p", field.p())
        .param("f", field.f())
        .param("d", d)
        .param("psi_c", psi.c.encoding())
        .param("a", a);
    report.lhs = summarize_zmap(&lhs);
    report.rhs = format!("{} * projector(scaled)", gval);
    report.pass = pass;
    Ok(report)
}

fn zconvolve_add_mu(
    field: &FiniteField,
    d: u64,
    lhs: &GroupRingElement,
    rhs: &[(Vec<u64>, ZCyclo)],
    n: u32,
) -> BTreeMap<Vec<u64>, ZCyclo> {
    let mut out: BTreeMap<Vec<u64>, ZCyclo> = BTreeMap::new();
    for (ka, va) in &lhs.coeffs {
        let za = va.to_zcyclo().expect("integral coefficients");
        let xa = field.element(ka[0]);
        for (kb, vb) in rhs {
            let key = vec![field.add(xa, field.element(kb[0])).encoding(), (ka[1] + kb[1]) % d];
            let prod = za.mul(vb);
            match out.get_mut(&key) {
                Some(cur) => {
                    *cur = cur.add(&prod);
                    if cur.is_zero() {
                        out.remove(&key);
                    }
                }
                None => {
                    if !prod.is_zero() {
                        out.insert(key, prod);
                    }
                }
            }
        }
    }
    let _ = n;
    out
}

fn summarize_zmap(map: &BTreeMap<Vec<u64>, ZCyclo>) -> String {
    match map.iter().next() {
        Some((k, v)) => format!(
            "{}@({})",
            v,
            k.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        ),
        None => "0".to_string(),
    }
}

/// j_d^(n)<c> * e^(chi_vec) = chi_1...chi_n(c^((q-1)/d)) j(chi_vec) e^(chi_vec).
pub fn eigen_check_jacobi(
    field: &FiniteField,
    d: u64,
    c: FieldElement,
    avec: &[u64],
) -> Result<CheckReport> {
    let j_elem = jacobi_element_at(field, d, avec.len(), c, d as u32)?;
    eigen_check_jacobi_with(field, d, c, avec, &j_elem)
}

/// Twisted Jacobi sum element with coefficients lifted to conductor n.
pub fn jacobi_element_at(
    field: &FiniteField,
    d: u64,
    arity: usize,
    c: FieldElement,
    n: u32,
) -> Result<GroupRingElement> {
    let j_elem = jacobi_element(field, d, arity, c)?;
    Ok(GroupRingElement {
        shape: j_elem.shape.clone(),
        conductor: n,
        coeffs: j_elem
            .coeffs
            .iter()
            .map(|(k, v)| (k.clone(), v.cast_conductor(n).expect("integer upcast")))
            .collect(),
    })
}

pub fn eigen_check_jacobi_with(
    field: &FiniteField,
    d: u64,
    c: FieldElement,
    avec: &[u64],
    j_elem: &GroupRingElement,
) -> Result<CheckReport> {
    if c.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let n = avec.len();
    // Projector scaled by |G| = d^n: cyclotomic integer coefficients.
    let mut e_scaled: Vec<(Vec<u64>, ZCyclo)> = Vec::with_capacity((d as usize).pow(n as u32));
    let mut key = vec![0u64; n];
    'outer: loop {
        let e: u64 = key.iter().zip(avec).map(|(u, a)| (d - a * u % d) % d).sum::<u64>() % d;
        e_scaled.push((key.clone(), ZCyclo::root_of_unity(d as u32, e as i64)));
        let mut i = 0;
        loop {
            if i == n {
                break 'outer;
            }
            key[i] += 1;
            if key[i] < d {
                break;
            }
            key[i] = 0;
            i += 1;
        }
    }
    let mut lhs: BTreeMap<Vec<u64>, ZCyclo> = BTreeMap::new();
    for (ka, va) in &j_elem.coeffs {
        let za = va.to_zcyclo().expect("integral coefficients");
        for (kb, vb) in &e_scaled {
            let kk: Vec<u64> = ka.iter().zip(kb).map(|(x, y)| (x + y) % d).collect();
            let prod = za.mul(vb);
            match lhs.get_mut(&kk) {
                Some(cur) => {
                    *cur = cur.add(&prod);
                    if cur.is_zero() {
                        lhs.remove(&kk);
                    }
                }
                None => {
                    if !prod.is_zero() {
                        lhs.insert(kk, prod);
                    }
                }
            }
        }
    }
    let chis: Vec<MultiplicativeCharacter> = avec
        .iter()
        .map(|&a| MultiplicativeCharacter::new(field, d, a))
        .collect::<Result<_>>()?;
    let jval = jacobi_sum(field, &chis)?;
    let total_a: u64 = avec.iter().sum::<u64>() % d;
    let twist = crate::chars::power_residue(field, d, c, total_a as i64)?;
    let scalar = jval.mul(&twist).to_zcyclo().expect("jacobi sums are integral");
    let rhs: BTreeMap<Vec<u64>, ZCyclo> = e_scaled
        .iter()
        .map(|(k, v)| (k.clone(), v.mul(&scalar)))
        .filter(|(_, v)| !v.is_zero())
        .collect();
    let pass = lhs == rhs;
    let mut report = CheckReport::new("eigen_jacobi")
        .param("p", field.p())
        .param("f", field.f())
        .param("d", d)
        .param("n", n as u64)
        .param("c", c.encoding())
        .param("avec", avec.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
    report.lhs = summarize_zmap(&lhs);
    report.rhs = format!("{} * projector(scaled)", scalar);
    report.pass = pass;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::is_admissible;

    fn f5() -> FiniteField {
        FiniteField::new(5, 1).unwrap()
    }

    #[test]
    fn gauss_trivial_chi_is_one() {
        let k = f5();
        let psi = AdditiveCharacter::canonical(&k);
        let chi0 = MultiplicativeCharacter::new(&k, 4, 0).unwrap();
        assert_eq!(gauss_sum(&k, &psi, &chi0).unwrap(), CyclotomicNumber::one(20));
        let psi0 = AdditiveCharacter::new(&k, k.zero()).unwrap();
        assert_eq!(gauss_sum(&k, &psi0, &chi0), Err(Error::TrivialAdditive));
    }

    #[test]
    fn gauss_quadratic_squares_to_q() {
        let k = f5();
        let psi = AdditiveCharacter::canonical(&k);
        let chi = MultiplicativeCharacter::new(&k, 2, 1).unwrap();
        let g = gauss_sum(&k, &psi, &chi).unwrap();
        let gg = g.mul(&g);
        assert_eq!(gg.as_rational().unwrap(), BigRational::from(BigInt::from(5)));
    }

    #[test]
    fn gauss_reflection_f7() {
        let k = FiniteField::new(7, 1).unwrap();
        let psi = AdditiveCharacter::canonical(&k);
        let chi = MultiplicativeCharacter::new(&k, 3, 1).unwrap();
        let g = gauss_sum(&k, &psi, &chi).unwrap();
        let gbar = gauss_sum(&k, &psi.conj(&k), &chi.conj()).unwrap();
        assert_eq!(
            g.mul(&gbar).as_rational().unwrap(),
            BigRational::from(BigInt::from(7))
        );
    }

    #[test]
    fn jacobi_trivial_counts() {
        let k = f5();
        let chi0 = MultiplicativeCharacter::new(&k, 4, 0).unwrap();
        let j = jacobi_sum(&k, &[chi0, chi0]).unwrap();
        assert_eq!(j.as_rational().unwrap(), BigRational::from(BigInt::from(-3)));
        assert!(jacobi_sum(&k, &[chi0]).is_err());
    }

    #[test]
    fn jacobi_chi_chibar_closed_form() {
        // j(chi, chi_bar) = chi((-1)^((q-1)/d)) for nontrivial chi
        let k = f5();
        for a in 1..4u64 {
            let chi = MultiplicativeCharacter::new(&k, 4, a).unwrap();
            let j = jacobi_sum(&k, &[chi, chi.conj()]).unwrap();
            let expect = chi.eval(&k, k.element(4)).unwrap(); // -1 = 4 in F_5
            assert_eq!(j, expect);
        }
        // spec example: chi = chi_1, value -1
        let chi = MultiplicativeCharacter::new(&k, 4, 1).unwrap();
        assert_eq!(
            jacobi_sum(&k, &[chi, chi.conj()]).unwrap(),
            CyclotomicNumber::from_integer(4, -1)
        );
    }

    #[test]
    fn jacobi_reflection_weight_one() {
        let k = f5();
        let chi = MultiplicativeCharacter::new(&k, 4, 1).unwrap();
        assert!(is_admissible(4, &[1, 1]));
        let j = jacobi_sum(&k, &[chi, chi]).unwrap();
        let jbar = jacobi_sum(&k, &[chi.conj(), chi.conj()]).unwrap();
        assert_eq!(
            j.mul(&jbar).as_rational().unwrap(),
            BigRational::from(BigInt::from(5))
        );
        assert_eq!(j.weil_weight(5).unwrap(), Some(1));
    }

    #[test]
    fn gauss_element_small() {
        let k = FiniteField::new(3, 1).unwrap();
        let g = gauss_element(&k, 2).unwrap();
        // -[(1,1)] - [(2,2 -> exponent of -1 = 1 mod 2... keys are (enc, dlog mod 2))]
        assert_eq!(g.coeffs.len(), 2);
        for (_, v) in &g.coeffs {
            assert_eq!(v.as_rational().unwrap(), BigRational::from(BigInt::from(-1)));
        }
        assert!(gauss_element(&f5(), 3).is_err());
        // d = 1: all mass at mu-coordinate 0 with coefficient -1 each
        let g1 = gauss_element(&f5(), 1).unwrap();
        assert_eq!(g1.coeffs.len(), 4);
        assert!(g1.coeffs.keys().all(|k| k[1] == 0));
    }

    #[test]
    fn jacobi_element_augmentation_matches_trivial_sum() {
        let k = f5();
        let je = jacobi_element(&k, 4, 2, k.one()).unwrap();
        let aug = je.augmentation();
        assert_eq!(aug.as_rational().unwrap(), BigRational::from(BigInt::from(-3)));
    }

    #[test]
    fn jacobi_element_twist_relation() {
        // j_d^(n)<c> = (c^((q-1)/d), ..., c^((q-1)/d)) * j_d^(n) for c != 0
        let k = f5();
        let d = 4u64;
        for c_enc in 2..5u64 {
            let c = k.element(c_enc);
            let lhs = jacobi_element(&k, d, 2, c).unwrap();
            let uc = k.dlog(c).unwrap() % d;
            let mut delta = GroupRingElement::zero(GroupShape::MuPower { d, n: 2 }, 1);
            delta.insert_add(vec![uc, uc], CyclotomicNumber::one(1));
            let rhs = delta.convolve(&jacobi_element(&k, d, 2, k.one()).unwrap(), None);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn jacobi_element_c_zero() {
        let k = FiniteField::new(3, 1).unwrap();
        let je = jacobi_element(&k, 2, 2, k.zero()).unwrap();
        // pairs with m1 + m2 = 0: (1,2),(2,1); keys (0,1),(1,0); coefficient -1
        assert_eq!(je.coeffs.len(), 2);
        assert!(je.coeffs.contains_key(&vec![0, 1]));
        assert!(je.coeffs.contains_key(&vec![1, 0]));
    }

    #[test]
    fn degeneration_sends_gd_to_gdprime() {
        let k = f5();
        let g4 = gauss_element(&k, 4).unwrap();
        let g2 = gauss_element(&k, 2).unwrap();
        let g1 = gauss_element(&k, 1).unwrap();
        assert_eq!(g4.degenerate(2).unwrap(), g2);
        assert_eq!(g4.degenerate(1).unwrap(), g1);
        let j4 = jacobi_element(&k, 4, 2, k.one()).unwrap();
        let j2 = jacobi_element(&k, 2, 2, k.one()).unwrap();
        assert_eq!(j4.degenerate(2).unwrap(), j2);
    }

    #[test]
    fn projector_idempotent_and_partition() {
        // e^chi e^chi' = delta e^chi on mu_4 over F_5; sum over all = 1
        let d = 4u64;
        let mut total = GroupRingElement::zero(GroupShape::MuPower { d, n: 1 }, d as u32);
        for a in 0..d {
            let e = projector_mu_power(d, &[a]);
            let ee = e.convolve(&e, None);
            assert_eq!(ee, e, "projector not idempotent for a={a}");
            for b in 0..d {
                if b != a {
                    let eb = projector_mu_power(d, &[b]);
                    let prod = e.convolve(&eb, None);
                    assert!(prod.coeffs.is_empty(), "projectors not orthogonal");
                }
            }
            for (k, v) in &e.coeffs {
                total.insert_add(k.clone(), v.clone());
            }
        }
        // identity element delta_1
        assert_eq!(total.coeffs.len(), 1);
        assert_eq!(
            total.coeffs.get(&vec![0u64]).unwrap().as_rational().unwrap(),
            BigRational::from(BigInt::from(1))
        );
        // trivial chi on mu_2: (1/2)([1] + [-1])
        let e0 = projector_mu_power(2, &[0]);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(e0.coeffs.len(), 2);
        for v in e0.coeffs.values() {
            assert_eq!(v.as_rational().unwrap(), half);
        }
    }

    #[test]
    fn eigen_checks_pass_small() {
        let k = f5();
        let psi = AdditiveCharacter::canonical(&k);
        let r = eigen_check_gauss(&k, 4, &psi, 1).unwrap();
        assert!(r.pass, "{r:?}");
        let r = eigen_check_jacobi(&k, 4, k.one(), &[1, 1]).unwrap();
        assert!(r.pass, "{r:?}");
        // twisted case over F_7: eigenvalue chi^2(2^2) j_3(1,1)
        let k7 = FiniteField::new(7, 1).unwrap();
        let r = eigen_check_jacobi(&k7, 3, k7.element(2), &[1, 1]).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn induced_character_compatibility() {
        // chi of mu_4 factoring through mu_2 gives the same Gauss sum
        let k = f5();
        let psi = AdditiveCharacter::canonical(&k);
        let chi2 = MultiplicativeCharacter::new(&k, 2, 1).unwrap();
        let chi4 = MultiplicativeCharacter::new(&k, 4, 2).unwrap(); // chi4(m) = chi2(m^2)
        let g2 = gauss_sum(&k, &psi, &chi2).unwrap();
        let g4 = gauss_sum(&k, &psi, &chi4).unwrap();
        assert_eq!(g4.cast_conductor(10).unwrap(), g2);
        let j2 = jacobi_sum(&k, &[chi2, chi2]).unwrap();
        let j4 = jacobi_sum(&k, &[chi4, chi4]).unwrap();
        assert_eq!(j4.cast_conductor(2).unwrap(), j2);
    }
}
