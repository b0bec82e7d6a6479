//! Finite fields GF(p^f) with deterministic construction.
//!
//! The modulus is the lexicographically smallest irreducible monic
//! polynomial of degree f over Z/p (coefficients compared low-degree-first),
//! and the generator is the element of smallest encoding with multiplicative
//! order q-1, so every downstream exact value is reproducible byte-for-byte.
//!
//! Elements are encoded as base-p integers of their coefficient tuples.
//! [`FiniteField`] carries full discrete-log/exponential tables and is meant
//! for desk-scale q (the `make_field` bound); [`StreamField`] shares the same
//! deterministic modulus and generator but carries no tables, for the large
//! residue fields used by the valuation engine.

use std::path::Path;

use crate::arith::{distinct_prime_factors, factor, is_prime};
use crate::error::{Error, Result};

pub const DEFAULT_FIELD_BOUND: u64 = 1 << 20;

/// An element of GF(q), tagged by q. The deterministic construction makes
/// (p, f) a complete identity for the field, so q is a sufficient owner tag.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct FieldElement {
    q: u64,
    enc: u64,
}

impl FieldElement {
    pub fn encoding(&self) -> u64 {
        self.enc
    }

    pub fn field_size(&self) -> u64 {
        self.q
    }

    pub fn is_zero(&self) -> bool {
        self.enc == 0
    }
}

// ---------------------------------------------------------------------------
// Dense polynomial arithmetic over Z/p, coefficients ascending.

fn poly_trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

fn poly_mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            if bj != 0 {
                let t = (ai as u128 * bj as u128 + prod[i + j] as u128) % p as u128;
                prod[i + j] = t as u64;
            }
        }
    }
    poly_rem(&mut prod, modulus, p);
    prod
}

/// Remainder of `a` modulo the monic polynomial `m`, in place.
fn poly_rem(a: &mut Vec<u64>, m: &[u64], p: u64) {
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = *a.last().unwrap();
        let k = a.len() - 1 - dm;
        if lead != 0 {
            for i in 0..dm {
                if m[i] != 0 {
                    let sub = (lead as u128 * m[i] as u128) % p as u128;
                    let cur = a[k + i] as u128;
                    a[k + i] = ((cur + p as u128 - sub) % p as u128) as u64;
                }
            }
        }
        a.pop();
    }
    if a.is_empty() {
        a.push(0);
    }
    poly_trim(a);
}

fn poly_pow_mod(base: &[u64], mut e: u128, modulus: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = base.to_vec();
    poly_rem(&mut b, modulus, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul_mod(&acc, &b, modulus, p);
        }
        b = poly_mul_mod(&b, &b, modulus, p);
        e >>= 1;
    }
    acc
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = (x + p - y) % p;
    }
    poly_trim(&mut out);
    out
}

fn poly_gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !(b.len() == 1 && b[0] == 0) {
        let mut r = a.clone();
        // make b monic for the remainder step
        let lead = *b.last().unwrap();
        let inv = mod_inv_u64(lead, p);
        let monic: Vec<u64> = b.iter().map(|&c| (c as u128 * inv as u128 % p as u128) as u64).collect();
        poly_rem(&mut r, &monic, p);
        a = b;
        b = r;
    }
    a
}

fn mod_inv_u64(a: u64, p: u64) -> u64 {
    crate::arith::mod_inverse(a, p).expect("inverse mod prime")
}

/// Rabin irreducibility test: m of degree f is irreducible over Z/p iff
/// x^(p^f) = x mod m and gcd(x^(p^(f/l)) - x, m) = 1 for each prime l | f.
fn is_irreducible(m: &[u64], p: u64) -> bool {
    let f = m.len() - 1;
    if f == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let pf = (p as u128).pow(f as u32);
    let xpf = poly_pow_mod(&x, pf, m, p);
    if poly_sub(&xpf, &x, p) != vec![0] {
        return false;
    }
    for l in distinct_prime_factors(f as u64) {
        let e = (p as u128).pow((f as u64 / l) as u32);
        let xe = poly_pow_mod(&x, e, m, p);
        let diff = poly_sub(&xe, &x, p);
        let g = poly_gcd(m.to_vec(), diff, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// The lexicographically smallest irreducible monic polynomial of degree f
/// over Z/p, coefficients compared low-degree-first.
fn find_modulus(p: u64, f: u32) -> Vec<u64> {
    let f = f as usize;
    if f == 1 {
        // x itself: coefficients (0, 1)
        return vec![0, 1];
    }
    let mut coeffs = vec![0u64; f + 1];
    coeffs[f] = 1;
    // Odometer over (c_0, ..., c_{f-1}) with c_0 most significant in the
    // comparison order.
    let mut tuple = vec![0u64; f];
    loop {
        for (i, &c) in tuple.iter().enumerate() {
            coeffs[i] = c;
        }
        if coeffs[0] != 0 && is_irreducible(&coeffs, p) {
            return coeffs;
        }
        // increment from the last position (least significant)
        let mut pos = f;
        loop {
            if pos == 0 {
                unreachable!("no irreducible polynomial found");
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < p {
                break;
            }
            tuple[pos] = 0;
        }
    }
}

fn decode(enc: u64, p: u64, f: u32) -> Vec<u64> {
    let mut digits = vec![0u64; f as usize];
    let mut e = enc;
    for d in digits.iter_mut() {
        *d = e % p;
        e /= p;
    }
    digits
}

fn encode(digits: &[u64], p: u64) -> u64 {
    let mut enc = 0u64;
    for &d in digits.iter().rev() {
        enc = enc * p + d;
    }
    enc
}

// ---------------------------------------------------------------------------
// Shared deterministic core: modulus, generator, raw element ops.

/// Modulus-level arithmetic shared by the tabled and streaming fields.
#[derive(Clone, Debug)]
pub struct FieldCore {
    pub p: u64,
    pub f: u32,
    pub q: u64,
    /// monic, ascending, length f+1
    pub modulus: Vec<u64>,
    pub g: u64,
}

impl FieldCore {
    fn new(p: u64, f: u32) -> Result<FieldCore> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if f < 1 {
            return Err(Error::DegreeOutOfRange(f as i64));
        }
        let q128 = (p as u128).pow(f);
        let q = u64::try_from(q128).map_err(|_| Error::FieldTooLarge { q: q128, bound: u64::MAX })?;
        let modulus = find_modulus(p, f);
        let mut core = FieldCore { p, f, q, modulus, g: 0 };
        core.g = core.find_generator();
        Ok(core)
    }

    fn find_generator(&self) -> u64 {
        let order = self.q - 1;
        if order == 1 {
            return 1;
        }
        let prime_factors = distinct_prime_factors(order);
        'outer: for enc in 2..self.q {
            for &l in &prime_factors {
                if self.pow_enc(enc, order / l) == 1 {
                    continue 'outer;
                }
            }
            debug_assert_eq!(self.pow_enc(enc, order), 1);
            return enc;
        }
        unreachable!("multiplicative group of a finite field is cyclic")
    }

    pub fn add_enc(&self, a: u64, b: u64) -> u64 {
        if self.f == 1 {
            return (a + b) % self.p;
        }
        let da = decode(a, self.p, self.f);
        let db = decode(b, self.p, self.f);
        let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        encode(&sum, self.p)
    }

    pub fn neg_enc(&self, a: u64) -> u64 {
        if self.f == 1 {
            return (self.p - a) % self.p;
        }
        let da = decode(a, self.p, self.f);
        let neg: Vec<u64> = da.iter().map(|x| (self.p - x) % self.p).collect();
        encode(&neg, self.p)
    }

    pub fn mul_enc(&self, a: u64, b: u64) -> u64 {
        if self.f == 1 {
            return (a as u128 * b as u128 % self.p as u128) as u64;
        }
        let da = decode(a, self.p, self.f);
        let db = decode(b, self.p, self.f);
        let prod = poly_mul_mod(&da, &db, &self.modulus, self.p);
        encode(&prod, self.p)
    }

    pub fn pow_enc(&self, base: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_enc(acc, b);
            }
            b = self.mul_enc(b, b);
            e >>= 1;
        }
        acc
    }

    /// Absolute trace to Z/p as an integer in [0, p).
    pub fn trace_enc(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        let mut t = x;
        for _ in 0..self.f {
            acc = self.add_enc(acc, t);
            t = self.pow_enc(t, self.p);
        }
        debug_assert!(acc < self.p);
        acc
    }

    /// The matrix (column-major digit maps) of multiplication by y, used by
    /// the streaming table builders to walk powers cheaply.
    pub fn mul_matrix(&self, y: u64) -> Vec<Vec<u64>> {
        let f = self.f as usize;
        let mut cols = Vec::with_capacity(f);
        for i in 0..f {
            let basis = encode(
                &(0..f).map(|j| if i == j { 1 } else { 0 }).collect::<Vec<_>>(),
                self.p,
            );
            let img = self.mul_enc(basis, y);
            cols.push(decode(img, self.p, self.f));
        }
        cols
    }
}

// ---------------------------------------------------------------------------
// Tabled field.

/// GF(p^f) with full discrete-log and exponential tables.
#[derive(Clone, Debug)]
pub struct FiniteField {
    core: FieldCore,
    dlog: Vec<u32>,
    exp: Vec<u64>,
}

pub const DLOG_ZERO: u32 = u32::MAX;

impl FiniteField {
    /// Deterministic construction of GF(p^f) under the given size bound.
    pub fn new_bounded(p: u64, f: u32, bound: u64) -> Result<FiniteField> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if f < 1 {
            return Err(Error::DegreeOutOfRange(f as i64));
        }
        let q128 = (p as u128).pow(f);
        if q128 > bound as u128 {
            return Err(Error::FieldTooLarge { q: q128, bound });
        }
        let core = FieldCore::new(p, f)?;
        Ok(Self::from_core(core))
    }

    pub fn new(p: u64, f: u32) -> Result<FiniteField> {
        Self::new_bounded(p, f, DEFAULT_FIELD_BOUND)
    }

    fn from_core(core: FieldCore) -> FiniteField {
        let q = core.q;
        let mut dlog = vec![DLOG_ZERO; q as usize];
        let mut exp = vec![0u64; (q - 1) as usize];
        let mut cur = 1u64;
        for e in 0..(q - 1) {
            exp[e as usize] = cur;
            debug_assert!(dlog[cur as usize] == DLOG_ZERO || e == 0);
            if dlog[cur as usize] == DLOG_ZERO {
                dlog[cur as usize] = e as u32;
            }
            cur = core.mul_enc(cur, core.g);
        }
        debug_assert_eq!(cur, 1, "generator order must be q-1");
        FiniteField { core, dlog, exp }
    }

    pub fn p(&self) -> u64 {
        self.core.p
    }

    pub fn f(&self) -> u32 {
        self.core.f
    }

    pub fn q(&self) -> u64 {
        self.core.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.core.modulus
    }

    pub fn core(&self) -> &FieldCore {
        &self.core
    }

    pub fn generator(&self) -> FieldElement {
        self.element(self.core.g)
    }

    pub fn zero(&self) -> FieldElement {
        self.element(0)
    }

    pub fn one(&self) -> FieldElement {
        self.element(1)
    }

    pub fn element(&self, enc: u64) -> FieldElement {
        assert!(enc < self.q(), "encoding out of range");
        FieldElement { q: self.q(), enc }
    }

    /// Element from prime-subfield coefficients (ascending powers of the
    /// modulus root).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> FieldElement {
        assert!(coeffs.len() <= self.f() as usize);
        let mut digits = vec![0u64; self.f() as usize];
        for (i, &c) in coeffs.iter().enumerate() {
            digits[i] = c % self.p();
        }
        self.element(encode(&digits, self.p()))
    }

    pub fn coeffs(&self, x: FieldElement) -> Vec<u64> {
        self.check(x);
        decode(x.enc, self.p(), self.f())
    }

    /// Integer representative in [0, p) of an element of the prime subfield.
    pub fn prime_lift(&self, x: FieldElement) -> u64 {
        self.check(x);
        let c = self.coeffs(x);
        assert!(c[1..].iter().all(|&d| d == 0), "element not in prime subfield");
        c[0]
    }

    fn check(&self, x: FieldElement) {
        assert_eq!(x.q, self.q(), "element belongs to a different field");
    }

    pub fn try_check(&self, x: FieldElement) -> Result<()> {
        if x.q != self.q() {
            return Err(Error::FieldMismatch { elem_q: x.q, field_q: self.q() });
        }
        Ok(())
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        self.element(self.core.add_enc(a.enc, b.enc))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.check(a);
        self.element(self.core.neg_enc(a.enc))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        if a.enc == 0 || b.enc == 0 {
            return self.zero();
        }
        let e = (self.dlog[a.enc as usize] as u64 + self.dlog[b.enc as usize] as u64) % (self.q() - 1);
        self.element(self.exp[e as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        self.check(a);
        if a.enc == 0 {
            return Err(Error::ZeroArgument);
        }
        let e = self.dlog[a.enc as usize] as u64;
        let inv = (self.q() - 1 - e) % (self.q() - 1);
        Ok(self.element(self.exp[inv as usize]))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        self.check(a);
        if a.enc == 0 {
            return if e == 0 { self.one() } else { self.zero() };
        }
        let d = self.dlog[a.enc as usize] as u128 * e as u128 % (self.q() - 1) as u128;
        self.element(self.exp[d as usize])
    }

    /// Discrete logarithm base g; errors on zero.
    pub fn dlog(&self, x: FieldElement) -> Result<u64> {
        self.try_check(x)?;
        if x.enc == 0 {
            return Err(Error::ZeroArgument);
        }
        Ok(self.dlog[x.enc as usize] as u64)
    }

    pub fn exp(&self, e: u64) -> FieldElement {
        self.element(self.exp[(e % (self.q() - 1)) as usize])
    }

    pub fn frobenius(&self, x: FieldElement) -> FieldElement {
        self.pow(x, self.p())
    }

    /// Absolute trace down to the prime subfield, as a field element.
    pub fn trace_to_prime(&self, x: FieldElement) -> FieldElement {
        self.check(x);
        self.from_coeffs(&[self.core.trace_enc(x.enc)])
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q()).map(|enc| self.element(enc))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (1..self.q()).map(|enc| self.element(enc))
    }

    /// mu_d as ascending encodings; requires d | q-1.
    pub fn mu_d(&self, d: u64) -> Result<Vec<FieldElement>> {
        if d == 0 || (self.q() - 1) % d != 0 {
            return Err(Error::BadDivisor { d, m: self.q() - 1 });
        }
        let mut out: Vec<FieldElement> =
            (0..d).map(|k| self.exp(k * (self.q() - 1) / d)).collect();
        out.sort();
        Ok(out)
    }
}

/// Deterministic injective homomorphism GF(p^f) -> GF(p^(f*r)).
pub struct SubfieldEmbedding<'a> {
    pub sub: &'a FiniteField,
    pub ext: &'a FiniteField,
    /// image of the sub modulus root: x_0 = smallest-encoding root in ext
    root: FieldElement,
}

impl<'a> SubfieldEmbedding<'a> {
    pub fn new(sub: &'a FiniteField, ext: &'a FiniteField) -> Result<SubfieldEmbedding<'a>> {
        if sub.p() != ext.p() || ext.f() % sub.f() != 0 {
            return Err(Error::NotASubfield { sub_q: sub.q(), ext_q: ext.q() });
        }
        let root = ext
            .elements()
            .find(|&x| {
                let mut acc = ext.zero();
                let mut pw = ext.one();
                for &c in sub.modulus() {
                    if c != 0 {
                        acc = ext.add(acc, ext.mul(ext.from_coeffs(&[c]), pw));
                    }
                    pw = ext.mul(pw, x);
                }
                acc.is_zero()
            })
            .expect("an irreducible factor of degree f has roots in GF(p^(fr))");
        Ok(SubfieldEmbedding { sub, ext, root })
    }

    pub fn map(&self, x: FieldElement) -> FieldElement {
        let coeffs = self.sub.coeffs(x);
        let mut acc = self.ext.zero();
        let mut pw = self.ext.one();
        for &c in &coeffs {
            if c != 0 {
                acc = self.ext.add(acc, self.ext.mul(self.ext.from_coeffs(&[c]), pw));
            }
            pw = self.ext.mul(pw, self.root);
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// Streaming field: deterministic core without tables, for large q.

/// Large GF(p^f) (beyond the tabled bound): same deterministic modulus and
/// generator, element ops by polynomial arithmetic, no stored tables.
#[derive(Clone, Debug)]
pub struct StreamField {
    pub core: FieldCore,
}

impl StreamField {
    pub fn new(p: u64, f: u32) -> Result<StreamField> {
        Ok(StreamField { core: FieldCore::new(p, f)? })
    }

    pub fn q(&self) -> u64 {
        self.core.q
    }

    /// Power-residue class table: table[enc] = dlog(enc) mod d for nonzero
    /// encodings, CLASS_NONE for 0. One multiplicative walk of the group.
    pub fn class_table(&self, d: u64) -> Vec<u8> {
        assert!(d >= 1 && d <= 255 && (self.q() - 1) % d == 0);
        let q = self.q();
        let p = self.core.p;
        let f = self.core.f as usize;
        let mut table = vec![CLASS_NONE; q as usize];
        let cols = self.core.mul_matrix(self.core.g);
        let mut digits = vec![0u64; f];
        digits[0] = 1;
        let mut enc = 1u64;
        let mut class = 0u64;
        for _ in 0..(q - 1) {
            debug_assert_eq!(table[enc as usize], CLASS_NONE);
            table[enc as usize] = class as u8;
            // advance: multiply digit vector by g via the cached matrix
            let mut next = vec![0u64; f];
            for (i, &di) in digits.iter().enumerate() {
                if di != 0 {
                    let col = &cols[i];
                    for j in 0..f {
                        if col[j] != 0 {
                            next[j] = (next[j] + di * col[j]) % p;
                        }
                    }
                }
            }
            digits = next;
            enc = encode(&digits, p);
            class = (class + 1) % d;
        }
        debug_assert_eq!(enc, 1);
        table
    }

    /// Encoding of 1 - x for an encoded element x.
    pub fn one_minus_enc(&self, x: u64) -> u64 {
        let p = self.core.p;
        if self.core.f == 1 {
            return (1 + p - x % p) % p;
        }
        let mut digits = decode(x, p, self.core.f);
        digits[0] = (1 + p - digits[0]) % p;
        for dgt in digits.iter_mut().skip(1) {
            *dgt = (p - *dgt) % p;
        }
        encode(&digits, p)
    }
}

pub const CLASS_NONE: u8 = u8::MAX;

// ---------------------------------------------------------------------------
// Optional on-disk cache of constructed fields.

const CACHE_MAGIC: &str = "gjsums-ffcache-v1";

/// Load a field from the cache directory, or construct it and store it.
/// Cache absence or corruption never changes the result: entries are
/// validated against the deterministic construction contract on load.
pub fn make_field_cached(p: u64, f: u32, bound: u64, cache_dir: Option<&Path>) -> Result<FiniteField> {
    if let Some(dir) = cache_dir {
        let path = dir.join(format!("ff_p{p}_f{f}.txt"));
        if let Ok(text) = std::fs::read_to_string(&path) {
            if let Some(field) = parse_cached(&text, p, f) {
                return Ok(field);
            }
        }
        let field = FiniteField::new_bounded(p, f, bound)?;
        let _ = std::fs::create_dir_all(dir);
        let _ = std::fs::write(&path, render_cached(&field));
        return Ok(field);
    }
    FiniteField::new_bounded(p, f, bound)
}

fn render_cached(field: &FiniteField) -> String {
    let mut out = String::new();
    out.push_str(CACHE_MAGIC);
    out.push('\n');
    out.push_str(&format!("{} {}\n", field.p(), field.f()));
    let mods: Vec<String> = field.modulus().iter().map(|c| c.to_string()).collect();
    out.push_str(&mods.join(" "));
    out.push('\n');
    out.push_str(&field.core.g.to_string());
    out.push('\n');
    out
}

fn parse_cached(text: &str, p: u64, f: u32) -> Option<FiniteField> {
    let mut lines = text.lines();
    if lines.next()? != CACHE_MAGIC {
        return None;
    }
    let mut head = lines.next()?.split_whitespace();
    let cp: u64 = head.next()?.parse().ok()?;
    let cf: u32 = head.next()?.parse().ok()?;
    if cp != p || cf != f {
        return None;
    }
    let modulus: Vec<u64> = lines
        .next()?
        .split_whitespace()
        .map(|t| t.parse().ok())
        .collect::<Option<Vec<_>>>()?;
    let g: u64 = lines.next()?.parse().ok()?;
    if modulus.len() != f as usize + 1 || !is_prime(p) {
        return None;
    }
    // Trust nothing: the cached modulus and generator must match the
    // deterministic construction; rebuild tables locally.
    let core = FieldCore::new(p, f).ok()?;
    if core.modulus != modulus || core.g != g {
        return None;
    }
    Some(FiniteField::from_core(core))
}

/// Multiplicative order of p mod d (the residue degree of p in Q(zeta_d)).
pub fn residue_degree(p: u64, d: u64) -> Result<u32> {
    if d == 0 || crate::arith::gcd(p % d.max(1), d) != 1 {
        return Err(Error::BadParameters(format!("p={p} not coprime to d={d}")));
    }
    Ok(crate::arith::mult_order(p % d, d) as u32)
}

pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    factor(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_f5() {
        let f5 = FiniteField::new(5, 1).unwrap();
        assert_eq!(f5.q(), 5);
        assert_eq!(f5.generator().encoding(), 2);
        assert_eq!(f5.dlog(f5.element(4)).unwrap(), 2);
        assert_eq!(f5.dlog(f5.element(1)).unwrap(), 0);
        assert_eq!(f5.dlog(f5.element(0)), Err(Error::ZeroArgument));
    }

    #[test]
    fn composite_rejected() {
        assert_eq!(FiniteField::new(4, 1).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(FiniteField::new(5, 0).unwrap_err(), Error::DegreeOutOfRange(_)));
        assert!(matches!(
            FiniteField::new_bounded(2, 30, 1 << 20).unwrap_err(),
            Error::FieldTooLarge { .. }
        ));
    }

    #[test]
    fn f9_modulus_is_x2_plus_1() {
        let f9 = FiniteField::new(3, 2).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        assert_eq!(f9.q(), 9);
        // x with x^2 = -1 has trace x + x^3 = x - x = 0
        let x = f9.from_coeffs(&[0, 1]);
        assert!(f9.trace_to_prime(x).is_zero());
        assert_eq!(f9.prime_lift(f9.trace_to_prime(f9.one())), 2);
        assert!(f9.trace_to_prime(f9.zero()).is_zero());
    }

    #[test]
    fn dlog_is_homomorphism() {
        for (p, f) in [(5u64, 1u32), (3, 2), (2, 4), (7, 2)] {
            let k = FiniteField::new(p, f).unwrap();
            let q = k.q();
            for a in 1..q.min(40) {
                for b in 1..q.min(40) {
                    let x = k.element(a);
                    let y = k.element(b);
                    let lhs = k.dlog(k.mul(x, y)).unwrap();
                    let rhs = (k.dlog(x).unwrap() + k.dlog(y).unwrap()) % (q - 1);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn frobenius_fixed_points_and_order() {
        let k = FiniteField::new(3, 3).unwrap();
        for x in k.elements() {
            let mut y = x;
            for _ in 0..k.f() {
                y = k.frobenius(y);
            }
            assert_eq!(y, x);
        }
        // Frobenius fixes exactly the prime subfield
        let fixed: Vec<_> = k.elements().filter(|&x| k.frobenius(x) == x).collect();
        assert_eq!(fixed.len(), 3);
    }

    #[test]
    fn trace_is_additive_and_surjective() {
        let k = FiniteField::new(3, 2).unwrap();
        let mut seen = std::collections::HashSet::new();
        for x in k.elements() {
            for y in k.elements() {
                let lhs = k.trace_to_prime(k.add(x, y));
                let rhs = k.add(k.trace_to_prime(x), k.trace_to_prime(y));
                assert_eq!(lhs, rhs);
            }
            seen.insert(k.prime_lift(k.trace_to_prime(x)));
            assert_eq!(k.trace_to_prime(k.frobenius(x)), k.trace_to_prime(x));
        }
        assert_eq!(seen.len(), 3);
    }

    #[test]
    fn mu_d_structure() {
        let k = FiniteField::new(5, 1).unwrap();
        for d in [1u64, 2, 4] {
            let mu = k.mu_d(d).unwrap();
            assert_eq!(mu.len(), d as usize);
            for &m in &mu {
                assert_eq!(k.pow(m, d), k.one());
            }
        }
        assert!(k.mu_d(3).is_err());
    }

    #[test]
    fn embedding_preserves_structure() {
        let f5 = FiniteField::new(5, 1).unwrap();
        let f25 = FiniteField::new(5, 2).unwrap();
        let emb = SubfieldEmbedding::new(&f5, &f25).unwrap();
        for a in f5.elements() {
            for b in f5.elements() {
                assert_eq!(emb.map(f5.add(a, b)), f25.add(emb.map(a), emb.map(b)));
                assert_eq!(emb.map(f5.mul(a, b)), f25.mul(emb.map(a), emb.map(b)));
            }
        }
        // image of 2 has order 4 in F_25
        let img = emb.map(f5.element(2));
        let ord = (1..=24).find(|&e| f25.pow(img, e) == f25.one()).unwrap();
        assert_eq!(ord, 4);
        // identity embedding
        let id = SubfieldEmbedding::new(&f5, &f5).unwrap();
        for a in f5.elements() {
            assert_eq!(id.map(a), a);
        }
        // mismatched characteristic
        let f9 = FiniteField::new(3, 2).unwrap();
        assert!(SubfieldEmbedding::new(&f9, &f25).is_err());
        // image is fixed by x -> x^(sub.q)
        let f16 = FiniteField::new(2, 4).unwrap();
        let f4 = FiniteField::new(2, 2).unwrap();
        let e2 = SubfieldEmbedding::new(&f4, &f16).unwrap();
        for a in f4.elements() {
            let y = e2.map(a);
            assert_eq!(f16.pow(y, 4), y);
        }
    }

    #[test]
    fn stream_field_matches_tabled_classes() {
        let k = FiniteField::new(7, 2).unwrap();
        let s = StreamField::new(7, 2).unwrap();
        assert_eq!(s.core.modulus, k.modulus());
        assert_eq!(s.core.g, k.core.g);
        let d = 3u64;
        let table = s.class_table(d);
        for x in k.nonzero_elements() {
            assert_eq!(table[x.encoding() as usize] as u64, k.dlog(x).unwrap() % d);
        }
        assert_eq!(table[0], CLASS_NONE);
        for x in k.elements() {
            let om = s.one_minus_enc(x.encoding());
            assert_eq!(om, k.sub(k.one(), x).encoding());
        }
    }

    #[test]
    fn cache_roundtrip_changes_nothing() {
        let dir = tempfile::tempdir().unwrap();
        let a = make_field_cached(3, 2, 1 << 20, Some(dir.path())).unwrap();
        let b = make_field_cached(3, 2, 1 << 20, Some(dir.path())).unwrap();
        let c = FiniteField::new(3, 2).unwrap();
        assert_eq!(a.modulus(), c.modulus());
        assert_eq!(b.modulus(), c.modulus());
        assert_eq!(a.core.g, c.core.g);
        assert_eq!(b.core.g, c.core.g);
        // corrupt the cache; result still identical
        let path = dir.path().join("ff_p3_f2.txt");
        std::fs::write(&path, "garbage").unwrap();
        let d = make_field_cached(3, 2, 1 << 20, Some(dir.path())).unwrap();
        assert_eq!(d.modulus(), c.modulus());
    }
}
