//! Exact arithmetic in the finite field `F_q` with `q = p^m`.
//!
//! A [`Field`] is a cheaply clonable handle to an immutable [`FieldSpec`].
//! Elements store their value as the rank `0 <= index < q` in the canonical
//! enumeration (base-`p` digits, low-degree coefficient varying fastest),
//! so enumeration order, `Ord` and hashing all agree.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::{Error, Result};

/// Fields larger than this are out of scope.
pub const MAX_FIELD_SIZE: u64 = 1 << 16;

/// Description of `F_q`: characteristic, extension degree, and for `m > 1`
/// the monic irreducible modulus of degree `m` over `F_p`.
#[derive(Debug, PartialEq, Eq)]
pub struct FieldSpec {
    p: u64,
    m: u32,
    q: u64,
    /// Coefficients low-degree first, length `m + 1`, leading 1. `None` iff `m == 1`.
    modulus: Option<Vec<u64>>,
}

impl FieldSpec {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Field cardinality `q = p^m`.
    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> Option<&[u64]> {
        self.modulus.as_deref()
    }
}

/// Shared handle to a [`FieldSpec`].
#[derive(Clone)]
pub struct Field(Arc<FieldSpec>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.m == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{}", self.0.p, self.0.m)
        }
    }
}

impl Field {
    /// Constructs `F_{p^m}`. For `m > 1` the modulus is the lexicographically
    /// smallest monic irreducible of degree `m` over `F_p`, coefficients
    /// compared low-degree first, certified by trial division against every
    /// monic polynomial of degree at most `m/2`.
    pub fn new(p: u64, m: u32) -> Result<Field> {
        if m < 1 {
            return Err(Error::BadExtensionDegree(m));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut q: u64 = 1;
        for _ in 0..m {
            q = q
                .checked_mul(p)
                .filter(|&q| q <= MAX_FIELD_SIZE)
                .ok_or(Error::FieldTooLarge { p, m })?;
        }
        let modulus = if m > 1 {
            Some(smallest_irreducible(p, m))
        } else {
            None
        };
        Ok(Field(Arc::new(FieldSpec { p, m, q, modulus })))
    }

    /// Prime field `F_p`.
    pub fn prime(p: u64) -> Result<Field> {
        Field::new(p, 1)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn m(&self) -> u32 {
        self.0.m
    }

    pub fn order(&self) -> u64 {
        self.0.q
    }

    pub fn zero(&self) -> FieldElement {
        self.element(0)
    }

    pub fn one(&self) -> FieldElement {
        self.element(1 % self.0.q)
    }

    /// Element with the given enumeration rank. Panics if `index >= q`.
    pub fn element(&self, index: u64) -> FieldElement {
        assert!(
            index < self.0.q,
            "element index {index} out of range for {self}"
        );
        FieldElement {
            index,
            field: self.clone(),
        }
    }

    /// Embeds an integer as a constant, reducing modulo `p`. Negative values
    /// wrap, so `from_int(-1)` is `p - 1`.
    pub fn from_int(&self, v: i64) -> FieldElement {
        let p = self.0.p as i64;
        self.element(v.rem_euclid(p) as u64)
    }

    /// Builds an element from residues in `[0, p)`, low-degree first. Up to
    /// `m` coefficients; missing ones are zero.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.0.m as usize {
            return Err(Error::LengthMismatch {
                expected: self.0.m as usize,
                found: coeffs.len(),
            });
        }
        let mut index = 0u64;
        for (i, &c) in coeffs.iter().enumerate().rev() {
            if c >= self.0.p {
                return Err(Error::Parse {
                    context: format!("element of {self}"),
                    token: c.to_string(),
                    position: i,
                });
            }
            index = index * self.0.p + c;
        }
        Ok(self.element(index))
    }

    /// All `q` elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.q).map(move |i| self.element(i))
    }

    /// Parses the textual element format: a plain residue for `m = 1`,
    /// otherwise terms like `c`, `c*x`, `c*x^k` joined by `+`.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let s = s.trim();
        let err = |token: &str, position: usize| Error::Parse {
            context: format!("element of {self}"),
            token: token.to_string(),
            position,
        };
        if self.0.m == 1 {
            let v: u64 = s.parse().map_err(|_| err(s, 0))?;
            if v >= self.0.p {
                return Err(err(s, 0));
            }
            return Ok(self.element(v));
        }
        let mut coeffs = vec![0u64; self.0.m as usize];
        let mut pos = 0usize;
        for term in s.split('+') {
            let t = term.trim();
            let (coeff_str, degree) = match t.find("*x") {
                None => {
                    if let Some(rest) = t.strip_prefix("x") {
                        // allow bare x / x^k with implicit coefficient 1
                        let d = parse_degree(rest).ok_or_else(|| err(t, pos))?;
                        ("1", d)
                    } else {
                        (t, 0)
                    }
                }
                Some(i) => {
                    let d = parse_degree(&t[i + 2..]).ok_or_else(|| err(t, pos))?;
                    (&t[..i], d)
                }
            };
            let c: u64 = coeff_str.trim().parse().map_err(|_| err(t, pos))?;
            if c >= self.0.p || degree >= self.0.m as usize {
                return Err(err(t, pos));
            }
            coeffs[degree] = (coeffs[degree] + c) % self.0.p;
            pos += term.len() + 1;
        }
        self.from_coeffs(&coeffs)
    }
}

fn parse_degree(rest: &str) -> Option<usize> {
    match rest {
        "" => Some(1),
        _ => rest.strip_prefix('^')?.trim().parse().ok(),
    }
}

/// An element of `F_q`, immutable with structural equality.
#[derive(Clone)]
pub struct FieldElement {
    index: u64,
    field: Field,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Rank in the canonical enumeration of the field.
    pub fn index(&self) -> u64 {
        self.index
    }

    /// The `m` residues in `[0, p)`, low-degree first.
    pub fn coeffs(&self) -> Vec<u64> {
        let p = self.field.p();
        let mut v = Vec::with_capacity(self.field.m() as usize);
        let mut i = self.index;
        for _ in 0..self.field.m() {
            v.push(i % p);
            i /= p;
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.index == 0
    }

    pub fn is_one(&self) -> bool {
        self.index == 1 % self.field.order()
    }

    fn assert_same_field(&self, other: &FieldElement) {
        assert!(
            self.field == other.field,
            "mixed arithmetic between {} and {}",
            self.field,
            other.field
        );
    }

    pub fn add(&self, rhs: &FieldElement) -> FieldElement {
        self.assert_same_field(rhs);
        let spec = self.field.spec();
        if spec.m == 1 {
            return self.field.element((self.index + rhs.index) % spec.p);
        }
        self.zip_digits(rhs, |a, b, p| (a + b) % p)
    }

    pub fn sub(&self, rhs: &FieldElement) -> FieldElement {
        self.assert_same_field(rhs);
        let spec = self.field.spec();
        if spec.m == 1 {
            return self
                .field
                .element((self.index + spec.p - rhs.index) % spec.p);
        }
        self.zip_digits(rhs, |a, b, p| (a + p - b) % p)
    }

    pub fn neg(&self) -> FieldElement {
        self.field.zero().sub(self)
    }

    pub fn mul(&self, rhs: &FieldElement) -> FieldElement {
        self.assert_same_field(rhs);
        let spec = self.field.spec();
        if spec.m == 1 {
            return self.field.element((self.index * rhs.index) % spec.p);
        }
        let p = spec.p;
        let m = spec.m as usize;
        let a = self.coeffs();
        let b = rhs.coeffs();
        // convolution; terms stay below 16 * p^2 < 2^36
        let mut acc = vec![0u64; 2 * m - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                acc[i + j] += ai * bj;
            }
        }
        for c in acc.iter_mut() {
            *c %= p;
        }
        reduce_by_modulus(&mut acc, spec.modulus().expect("m > 1 has a modulus"), p);
        let mut index = 0u64;
        for &c in acc[..m].iter().rev() {
            index = index * p + c;
        }
        self.field.element(index)
    }

    /// Multiplicative inverse: extended Euclid against the modulus for
    /// `m > 1`, Fermat exponentiation for `m = 1`.
    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let spec = self.field.spec();
        if spec.m == 1 {
            return Ok(self.pow(spec.p - 2));
        }
        let modulus = spec.modulus().expect("m > 1 has a modulus");
        let (g, u) = pext_gcd(&self.coeffs(), modulus, spec.p);
        // g is a nonzero constant since the modulus is irreducible
        debug_assert_eq!(pdeg(&g), Some(0));
        let ginv = mod_inverse(g[0], spec.p);
        let mut u = u;
        for c in u.iter_mut() {
            *c = *c * ginv % spec.p;
        }
        let (_, r) = pdivmod(&u, modulus, spec.p).expect("modulus nonzero");
        self.field.from_coeffs(&r)
    }

    pub fn div(&self, rhs: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// `a^k` by square-and-multiply, with `0^0 = 1`.
    pub fn pow(&self, mut k: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn zip_digits(&self, rhs: &FieldElement, f: impl Fn(u64, u64, u64) -> u64) -> FieldElement {
        let p = self.field.p();
        let mut ia = self.index;
        let mut ib = rhs.index;
        let mut index = 0u64;
        let mut scale = 1u64;
        for _ in 0..self.field.m() {
            index += f(ia % p, ib % p, p) * scale;
            scale *= p;
            ia /= p;
            ib /= p;
        }
        self.field.element(index)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index && self.field == other.field
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.p().hash(state);
        self.field.m().hash(state);
        self.index.hash(state);
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.field.p(), self.field.m(), self.index).cmp(&(
            other.field.p(),
            other.field.m(),
            other.index,
        ))
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.m() == 1 {
            return write!(f, "{}", self.index);
        }
        for (d, c) in self.coeffs().iter().enumerate() {
            if d == 0 {
                write!(f, "{c}")?;
            } else if d == 1 {
                write!(f, "+{c}*x")?;
            } else {
                write!(f, "+{c}*x^{d}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! element_binop {
    ($trait:ident, $method:ident, $op:ident) => {
        impl std::ops::$trait for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                FieldElement::$op(self, rhs)
            }
        }
    };
}

element_binop!(Add, add, add);
element_binop!(Sub, sub, sub);
element_binop!(Mul, mul, mul);

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}

// ---- F_p[x] helpers on little-endian residue vectors ----

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a != 0
    let mut acc = 1u64;
    let mut base = a % p;
    let mut k = p - 2;
    while k > 0 {
        if k & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        k >>= 1;
    }
    acc
}

fn ptrim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn pdeg(v: &[u64]) -> Option<usize> {
    v.iter().rposition(|&c| c != 0)
}

fn pmul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if pdeg(a).is_none() || pdeg(b).is_none() {
        return vec![];
    }
    let mut acc = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            acc[i + j] = (acc[i + j] + ai * bj) % p;
        }
    }
    ptrim(&mut acc);
    acc
}

fn psub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let ai = a.get(i).copied().unwrap_or(0);
        let bi = b.get(i).copied().unwrap_or(0);
        *o = (ai + p - bi) % p;
    }
    ptrim(&mut out);
    out
}

/// Long division; divisor need not be monic. Returns `(quotient, remainder)`.
fn pdivmod(a: &[u64], b: &[u64], p: u64) -> Option<(Vec<u64>, Vec<u64>)> {
    let db = pdeg(b)?;
    let lead_inv = mod_inverse(b[db], p);
    let mut rem: Vec<u64> = a.to_vec();
    ptrim(&mut rem);
    if pdeg(&rem).is_none_or(|da| da < db) {
        return Some((vec![], rem));
    }
    let da = pdeg(&rem).unwrap();
    let mut quot = vec![0u64; da - db + 1];
    while let Some(dr) = pdeg(&rem) {
        if dr < db {
            break;
        }
        let c = rem[dr] * lead_inv % p;
        quot[dr - db] = c;
        for j in 0..=db {
            let t = b[j] * c % p;
            rem[dr - db + j] = (rem[dr - db + j] + p - t) % p;
        }
    }
    ptrim(&mut rem);
    Some((quot, rem))
}

/// Extended Euclid: returns `(g, u)` with `u*a = g (mod b)` where
/// `g = gcd(a, b)`, not normalized.
fn pext_gcd(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r0: Vec<u64> = a.to_vec();
    let mut r1: Vec<u64> = b.to_vec();
    ptrim(&mut r0);
    ptrim(&mut r1);
    let mut u0: Vec<u64> = vec![1];
    let mut u1: Vec<u64> = vec![];
    while pdeg(&r1).is_some() {
        let (q, r) = pdivmod(&r0, &r1, p).expect("nonzero divisor");
        let u = psub(&u0, &pmul(&q, &u1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        u0 = std::mem::replace(&mut u1, u);
    }
    (r0, u0)
}

/// Reduces `acc` (length >= deg) in place by a monic modulus.
fn reduce_by_modulus(acc: &mut [u64], modulus: &[u64], p: u64) {
    let m = modulus.len() - 1;
    for i in (m..acc.len()).rev() {
        let c = acc[i];
        if c == 0 {
            continue;
        }
        acc[i] = 0;
        for (j, &mj) in modulus[..m].iter().enumerate() {
            let t = mj * c % p;
            acc[i - m + j] = (acc[i - m + j] + p - t) % p;
        }
    }
}

/// Lexicographically smallest monic irreducible of degree `m` over `F_p`,
/// low-degree coefficients compared first, found by trial division.
fn smallest_irreducible(p: u64, m: u32) -> Vec<u64> {
    let m = m as usize;
    let count = p.pow(m as u32);
    'candidate: for idx in 0..count {
        let mut cand = digits(idx, p, m);
        cand.push(1);
        // no constant term means divisible by x
        if cand[0] == 0 {
            continue;
        }
        for d in 1..=m / 2 {
            for didx in 0..p.pow(d as u32) {
                let mut div = digits(didx, p, d);
                div.push(1);
                let (_, r) = pdivmod(&cand, &div, p).expect("monic divisor");
                if r.is_empty() {
                    continue 'candidate;
                }
            }
        }
        return cand;
    }
    unreachable!("an irreducible of degree {m} over F_{p} always exists");
}

fn digits(mut idx: u64, p: u64, len: usize) -> Vec<u64> {
    let mut v = Vec::with_capacity(len);
    for _ in 0..len {
        v.push(idx % p);
        idx /= p;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64, m: u32) -> Field {
        Field::new(p, m).unwrap()
    }

    #[test]
    fn construction_and_moduli() {
        let f5 = f(5, 1);
        assert_eq!(f5.order(), 5);
        assert!(f5.spec().modulus().is_none());
        assert!(Field::new(2, 1).unwrap().spec().modulus().is_none());
        // exhaustive search over the 4 monic quadratics over F_2
        assert_eq!(f(2, 2).spec().modulus().unwrap(), &[1, 1, 1]);
        assert_eq!(f(2, 3).spec().modulus().unwrap(), &[1, 1, 0, 1]);
        assert_eq!(f(3, 2).spec().modulus().unwrap(), &[1, 0, 1]);
        assert_eq!(f(5, 2).spec().modulus().unwrap(), &[2, 0, 1]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Field::new(4, 1).unwrap_err(), Error::NotPrime(4));
        assert_eq!(Field::new(1, 1).unwrap_err(), Error::NotPrime(1));
        assert_eq!(Field::new(5, 0).unwrap_err(), Error::BadExtensionDegree(0));
        assert!(matches!(
            Field::new(2, 17).unwrap_err(),
            Error::FieldTooLarge { .. }
        ));
    }

    #[test]
    fn prime_field_arithmetic() {
        let f5 = f(5, 1);
        let e = |v| f5.element(v);
        assert_eq!(e(3).mul(&e(4)), e(2));
        assert_eq!(e(1).div(&e(3)).unwrap(), e(2));
        assert_eq!(e(4).pow(3), e(4));
        assert_eq!(e(3).pow(0), e(1));
        assert_eq!(e(2).pow(4), e(1));
        assert_eq!(f5.zero().pow(0), e(1));
        assert_eq!(e(0).div(&e(2)).unwrap(), e(0));
        assert_eq!(e(2).div(&e(0)).unwrap_err(), Error::DivisionByZero);
        assert_eq!(f5.from_int(-1), e(4));
    }

    #[test]
    fn extension_field_arithmetic() {
        // F_4 with modulus x^2 + x + 1: x * x = x + 1
        let f4 = f(2, 2);
        let x = f4.from_coeffs(&[0, 1]).unwrap();
        let x1 = f4.from_coeffs(&[1, 1]).unwrap();
        assert_eq!(x.mul(&x), x1);
        assert_eq!(x.mul(&x1), f4.one()); // x^3 = 1
        assert_eq!(x.inv().unwrap(), x1);
        assert_eq!(x.pow(3), f4.one());
    }

    #[test]
    fn element_enumeration() {
        let f2 = f(2, 1);
        assert_eq!(
            f2.elements().map(|e| e.index()).collect::<Vec<_>>(),
            vec![0, 1]
        );
        let f5 = f(5, 1);
        assert_eq!(f5.elements().count(), 5);
        let f4 = f(2, 2);
        let shown: Vec<String> = f4.elements().map(|e| e.to_string()).collect();
        assert_eq!(shown, vec!["0+0*x", "1+0*x", "0+1*x", "1+1*x"]);
    }

    #[test]
    fn field_axioms_exhaustive_small_fields() {
        for (p, m) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)] {
            let field = f(p, m);
            let elems: Vec<FieldElement> = field.elements().collect();
            for a in &elems {
                assert_eq!(&a.add(&field.zero()), a);
                assert_eq!(&a.mul(&field.one()), a);
                if !a.is_zero() {
                    assert!(a.pow(field.order() - 1).is_one(), "a^(q-1) != 1 in {field}");
                    let inverses: Vec<_> = elems.iter().filter(|b| a.mul(b).is_one()).collect();
                    assert_eq!(inverses.len(), 1);
                }
                for b in &elems {
                    assert_eq!(a.add(b), b.add(a));
                    assert_eq!(a.mul(b), b.mul(a));
                    assert_eq!(a.sub(b).add(b), *a);
                    if !b.is_zero() {
                        assert_eq!(a.div(b).unwrap().mul(b), *a);
                    }
                    for c in &elems {
                        assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
                        assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
                        assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
                    }
                }
            }
        }
    }

    #[test]
    fn display_parse_round_trip() {
        for (p, m) in [(5, 1), (2, 2), (3, 2), (2, 3)] {
            let field = f(p, m);
            for e in field.elements() {
                assert_eq!(field.parse_element(&e.to_string()).unwrap(), e);
            }
        }
        let f4 = f(2, 2);
        assert_eq!(
            f4.parse_element("x").unwrap(),
            f4.from_coeffs(&[0, 1]).unwrap()
        );
        assert_eq!(
            f4.parse_element("1+x").unwrap(),
            f4.from_coeffs(&[1, 1]).unwrap()
        );
        let f5 = f(5, 1);
        assert!(f5.parse_element("7").is_err());
        assert!(f5.parse_element("a").is_err());
    }

    #[test]
    #[should_panic(expected = "mixed arithmetic")]
    fn mixed_fields_rejected() {
        let a = f(5, 1).element(2);
        let b = f(7, 1).element(2);
        let _ = a.add(&b);
    }
}
