//! Dense univariate polynomial algebra over `F_q`: ring arithmetic, gcd/lcm,
//! evaluation at scalars and matrices, squarefree testing, and complete
//! factorization into monic irreducibles.
//!
//! Factorization is Berlekamp null-space splitting, made deterministic by
//! exhausting field elements in enumeration order, after a characteristic-p
//! aware squarefree decomposition.

use std::fmt;

use crate::gf::{Field, FieldElement};
use crate::linalg::MatrixFq;
use crate::{Error, Result};

/// Polynomial in canonical form: `coeffs[i]` is the degree-`i` coefficient
/// and the last entry is nonzero. The zero polynomial has no coefficients;
/// its degree is reported as `None`.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<FieldElement>,
    field: Field,
}

impl Polynomial {
    pub fn new(field: &Field, mut coeffs: Vec<FieldElement>) -> Polynomial {
        for c in &coeffs {
            assert!(c.field() == field, "coefficient from a different field");
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial {
            coeffs,
            field: field.clone(),
        }
    }

    pub fn zero(field: &Field) -> Polynomial {
        Polynomial::new(field, vec![])
    }

    pub fn one(field: &Field) -> Polynomial {
        Polynomial::new(field, vec![field.one()])
    }

    pub fn constant(c: FieldElement) -> Polynomial {
        let field = c.field().clone();
        Polynomial::new(&field, vec![c])
    }

    /// `x^n - c`.
    pub fn x_pow_minus(field: &Field, n: usize, c: &FieldElement) -> Polynomial {
        let mut coeffs = vec![field.zero(); n + 1];
        coeffs[0] = c.neg();
        coeffs[n] = field.one();
        Polynomial::new(field, coeffs)
    }

    /// Convenience constructor from integers, ascending degree, reduced mod p.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Polynomial {
        Polynomial::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> FieldElement {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn monic(&self) -> Polynomial {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self
            .leading_coeff()
            .inv()
            .expect("leading coefficient nonzero");
        self.scale(&inv)
    }

    pub fn scale(&self, c: &FieldElement) -> Polynomial {
        Polynomial::new(&self.field, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn add(&self, rhs: &Polynomial) -> Polynomial {
        assert!(self.field == rhs.field, "mixed fields");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new(
            &self.field,
            (0..n).map(|i| self.coeff(i).add(&rhs.coeff(i))).collect(),
        )
    }

    pub fn sub(&self, rhs: &Polynomial) -> Polynomial {
        assert!(self.field == rhs.field, "mixed fields");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new(
            &self.field,
            (0..n).map(|i| self.coeff(i).sub(&rhs.coeff(i))).collect(),
        )
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial::new(&self.field, self.coeffs.iter().map(|c| c.neg()).collect())
    }

    pub fn mul(&self, rhs: &Polynomial) -> Polynomial {
        assert!(self.field == rhs.field, "mixed fields");
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(&self.field);
        }
        let mut acc = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    let t = a.mul(b);
                    acc[i + j] = acc[i + j].add(&t);
                }
            }
        }
        Polynomial::new(&self.field, acc)
    }

    pub fn pow(&self, k: usize) -> Polynomial {
        let mut acc = Polynomial::one(&self.field);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division: `self = q * rhs + r` with `deg r < deg rhs`.
    pub fn divmod(&self, rhs: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        assert!(self.field == rhs.field, "mixed fields");
        let Some(db) = rhs.degree() else {
            return Err(Error::DivisionByZero);
        };
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Polynomial::zero(&self.field), self.clone()));
        }
        let lead_inv = rhs
            .leading_coeff()
            .inv()
            .expect("nonzero leading coefficient");
        let mut quot = vec![self.field.zero(); rem.len() - db];
        for top in (db..rem.len()).rev() {
            if rem[top].is_zero() {
                continue;
            }
            let c = rem[top].mul(&lead_inv);
            quot[top - db] = c.clone();
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = c.mul(b);
                rem[top - db + j] = rem[top - db + j].sub(&t);
            }
        }
        Ok((
            Polynomial::new(&self.field, quot),
            Polynomial::new(&self.field, rem),
        ))
    }

    pub fn rem(&self, rhs: &Polynomial) -> Result<Polynomial> {
        Ok(self.divmod(rhs)?.1)
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn div_exact(&self, rhs: &Polynomial) -> Polynomial {
        let (q, r) = self.divmod(rhs).expect("nonzero divisor");
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, rhs: &Polynomial) -> bool {
        rhs.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, rhs: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = std::mem::replace(&mut b, r);
        }
        a.monic()
    }

    /// Monic least common multiple, `(a*b) / gcd(a,b)`.
    pub fn lcm(&self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(&self.field);
        }
        self.mul(rhs).div_exact(&self.gcd(rhs)).monic()
    }

    /// Horner evaluation at a scalar.
    pub fn eval(&self, c: &FieldElement) -> FieldElement {
        let mut acc = self.field.zero();
        for a in self.coeffs.iter().rev() {
            acc = acc.mul(c).add(a);
        }
        acc
    }

    /// Horner evaluation at a square matrix: `f(A)`.
    pub fn eval_matrix(&self, a: &MatrixFq) -> MatrixFq {
        assert!(a.is_square(), "polynomial evaluation needs a square matrix");
        let n = a.rows();
        let mut acc = MatrixFq::zeros(&self.field, n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(a);
            if !c.is_zero() {
                acc = acc.add(&MatrixFq::identity(&self.field, n).scale(c));
            }
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero(&self.field);
        }
        Polynomial::new(
            &self.field,
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let k = self.field.from_int((i + 1) as i64);
                    c.mul(&k)
                })
                .collect(),
        )
    }

    /// `gcd(f, f') = 1`.
    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.gcd(&self.derivative()).is_one())
    }

    /// Complete factorization into monic irreducibles with multiplicities,
    /// sorted by degree then coefficient sequence (low degree first).
    pub fn factorize(&self) -> Result<Factorization> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let unit = self.leading_coeff();
        let monic = self.monic();
        let mut factors: Vec<(Polynomial, usize)> = Vec::new();
        for (part, mult) in squarefree_decomposition(&monic) {
            for irreducible in berlekamp_split(&part) {
                factors.push((irreducible, mult));
            }
        }
        factors.sort_by(|(a, _), (b, _)| factor_order(a, b));
        debug_assert!(
            factors.windows(2).all(|w| w[0].0 != w[1].0),
            "duplicate factors"
        );
        Ok(Factorization { unit, factors })
    }

    /// `x^q mod self` and friends: modular exponentiation of `base`.
    fn mod_pow(&self, base: &Polynomial, mut k: u64) -> Polynomial {
        let mut acc = Polynomial::one(&self.field);
        let mut b = base.rem(self).expect("nonzero modulus");
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b).rem(self).expect("nonzero modulus");
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b).rem(self).expect("nonzero modulus");
            }
        }
        acc
    }
}

fn factor_order(a: &Polynomial, b: &Polynomial) -> std::cmp::Ordering {
    let da = a.degree().unwrap_or(0);
    let db = b.degree().unwrap_or(0);
    da.cmp(&db).then_with(|| {
        (0..=da)
            .map(|i| a.coeff(i).index())
            .cmp((0..=db).map(|i| b.coeff(i).index()))
    })
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let ext = self.field.m() > 1;
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = if ext { format!("({c})") } else { c.to_string() };
            match d {
                0 => write!(f, "{cs}")?,
                1 => write!(f, "{cs}*x")?,
                _ => write!(f, "{cs}*x^{d}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                Polynomial::$method(self, rhs)
            }
        }
    };
}

poly_binop!(Add, add);
poly_binop!(Sub, sub);
poly_binop!(Mul, mul);

/// `unit * prod factor_i^mult_i` with monic irreducible factors in canonical
/// order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Factorization {
    pub unit: FieldElement,
    pub factors: Vec<(Polynomial, usize)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn expand(&self) -> Polynomial {
        let mut acc = Polynomial::constant(self.unit.clone());
        for (f, m) in &self.factors {
            acc = acc.mul(&f.pow(*m));
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, m)| m == 1)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.unit)?;
        for (p, m) in &self.factors {
            write!(f, " * ({p})")?;
            if *m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

/// Squarefree decomposition of a monic polynomial, characteristic-p aware:
/// when the derivative vanishes the polynomial is a p-th power and descends
/// through a coefficient-wise p-th root.
fn squarefree_decomposition(f: &Polynomial) -> Vec<(Polynomial, usize)> {
    let field = f.field().clone();
    let p = field.p() as usize;
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let deriv = f.derivative();
    if deriv.is_zero() {
        for (g, m) in squarefree_decomposition(&pth_root(f)) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = f.gcd(&deriv);
    let mut w = f.div_exact(&c);
    let mut i = 1usize;
    while !w.is_one() {
        let y = w.gcd(&c);
        let part = w.div_exact(&y);
        if part.degree().unwrap_or(0) > 0 {
            out.push((part, i));
        }
        c = c.div_exact(&y);
        w = y;
        i += 1;
    }
    if !c.is_one() {
        for (g, m) in squarefree_decomposition(&pth_root(&c)) {
            out.push((g, m * p));
        }
    }
    out
}

/// Coefficient-wise p-th root of a polynomial whose derivative vanishes.
fn pth_root(f: &Polynomial) -> Polynomial {
    let field = f.field().clone();
    let p = field.p() as usize;
    let root_exp = field.order() / field.p();
    let deg = f.degree().expect("nonzero");
    debug_assert!(
        (0..=deg).all(|i| i % p == 0 || f.coeff(i).is_zero()),
        "not a p-th power"
    );
    let coeffs = (0..=deg / p)
        .map(|j| {
            let c = f.coeff(j * p);
            if root_exp <= 1 {
                c
            } else {
                c.pow(root_exp)
            }
        })
        .collect();
    Polynomial::new(&field, coeffs)
}

/// Berlekamp splitting of a monic squarefree polynomial into its monic
/// irreducible factors. Deterministic: kernel vectors come from the RREF
/// basis and shifts run through the field in enumeration order.
fn berlekamp_split(f: &Polynomial) -> Vec<Polynomial> {
    let field = f.field().clone();
    let d = f.degree().expect("nonzero polynomial");
    if d <= 1 {
        return vec![f.clone()];
    }
    let q = field.order();
    let x = Polynomial::from_ints(&field, &[0, 1]);
    let xq = f.mod_pow(&x, q);

    // Frobenius matrix: column j holds x^{jq} mod f
    let mut frob = MatrixFq::zeros(&field, d, d);
    let mut w = Polynomial::one(&field);
    for j in 0..d {
        for i in 0..d {
            frob[(i, j)] = w.coeff(i);
        }
        if j + 1 < d {
            w = w.mul(&xq).rem(f).expect("nonzero modulus");
        }
    }
    let kernel = frob.sub(&MatrixFq::identity(&field, d)).kernel();
    let factor_count = kernel.dim();
    if factor_count == 1 {
        return vec![f.monic()];
    }

    let mut factors = vec![f.monic()];
    'outer: for row in kernel.basis_rows() {
        let v = Polynomial::new(&field, row);
        if v.is_constant() {
            continue;
        }
        for shift in field.elements() {
            let probe = v.sub(&Polynomial::constant(shift));
            let mut next = Vec::with_capacity(factors.len());
            for h in factors {
                if h.degree() == Some(1) {
                    next.push(h);
                    continue;
                }
                let g = h.gcd(&probe);
                let dg = g.degree().unwrap_or(0);
                if dg > 0 && dg < h.degree().unwrap() {
                    next.push(h.div_exact(&g).monic());
                    next.push(g);
                } else {
                    next.push(h);
                }
            }
            factors = next;
            if factors.len() == factor_count {
                break 'outer;
            }
        }
    }
    assert_eq!(
        factors.len(),
        factor_count,
        "Berlekamp splitting incomplete"
    );
    factors
}

/// Characteristic polynomial `det(A - xI)` of an arbitrary square matrix by
/// the division-free Berkowitz algorithm.
pub fn matrix_char_poly(a: &MatrixFq) -> Polynomial {
    assert!(
        a.is_square(),
        "characteristic polynomial of a non-square matrix"
    );
    let field = a.field().clone();
    let n = a.rows();
    // descending coefficients of det(xI - A_k) for the leading principal minors
    let mut poly = vec![field.one()];
    for k in 1..=n {
        let pivot = a[(k - 1, k - 1)].clone();
        // items = [1, -pivot, -(R C), -(R M C), ...]
        let mut items = Vec::with_capacity(k + 1);
        items.push(field.one());
        items.push(pivot.neg());
        if k > 1 {
            let mut cur: Vec<FieldElement> = (0..k - 1).map(|i| a[(i, k - 1)].clone()).collect();
            for _ in 2..=k {
                let mut dot = field.zero();
                for (j, c) in cur.iter().enumerate() {
                    let t = a[(k - 1, j)].mul(c);
                    dot = dot.add(&t);
                }
                items.push(dot.neg());
                let next: Vec<FieldElement> = (0..k - 1)
                    .map(|i| {
                        let mut acc = field.zero();
                        for (j, c) in cur.iter().enumerate() {
                            if !c.is_zero() {
                                let t = a[(i, j)].mul(c);
                                acc = acc.add(&t);
                            }
                        }
                        acc
                    })
                    .collect();
                cur = next;
            }
        }
        let mut next_poly = vec![field.zero(); k + 1];
        for (i, np) in next_poly.iter_mut().enumerate() {
            for (j, pj) in poly.iter().enumerate() {
                if i >= j && i - j < items.len() {
                    let t = items[i - j].mul(pj);
                    *np = np.add(&t);
                }
            }
        }
        poly = next_poly;
    }
    poly.reverse(); // ascending coefficients of det(xI - A)
    let det_xi_a = Polynomial::new(&field, poly);
    if n % 2 == 0 {
        det_xi_a
    } else {
        det_xi_a.neg()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let f5 = f5();
        let a = Polynomial::from_ints(&f5, &[1, 1]); // x + 1
        let b = Polynomial::from_ints(&f5, &[2, 1]); // x + 2
        assert!(a.gcd(&b).is_one());

        let quartic = Polynomial::from_ints(&f5, &[4, 0, 0, 0, 1]); // x^4 + 4
        let (q, r) = quartic.divmod(&a).unwrap();
        assert_eq!(q, Polynomial::from_ints(&f5, &[4, 1, 4, 1]));
        assert!(r.is_zero());
        assert_eq!(q.mul(&a), quartic);

        let f2 = f2();
        let c = Polynomial::from_ints(&f2, &[1, 0, 0, 1]); // x^3 + 1
        let d = Polynomial::from_ints(&f2, &[1, 0, 1]); // x^2 + 1
        let l = c.lcm(&d);
        assert_eq!(l, Polynomial::from_ints(&f2, &[1, 1, 0, 1, 1]));
        assert!(c.divides(&l) && d.divides(&l));

        assert!(Polynomial::one(&f2).divmod(&Polynomial::zero(&f2)).is_err());
    }

    #[test]
    fn evaluation() {
        let f5 = f5();
        let quartic = Polynomial::from_ints(&f5, &[4, 0, 0, 0, 1]);
        // every nonzero element of F_5 is a root of x^4 + 4
        for v in 1..5 {
            assert!(quartic.eval(&f5.element(v)).is_zero());
        }
        assert_eq!(quartic.eval(&f5.zero()), f5.element(4));
        let linear = Polynomial::from_ints(&f5, &[2, 1]);
        assert!(linear.eval(&f5.element(3)).is_zero());
    }

    #[test]
    fn squarefree_detection() {
        let f5 = f5();
        let f2 = f2();
        assert!(Polynomial::from_ints(&f5, &[4, 0, 0, 0, 1])
            .is_squarefree()
            .unwrap());
        assert!(!Polynomial::from_ints(&f2, &[1, 0, 1])
            .is_squarefree()
            .unwrap());
        assert!(Polynomial::from_ints(&f5, &[4, 0, 0, 0, 0, 0, 1])
            .is_squarefree()
            .unwrap());
        assert!(Polynomial::zero(&f5).is_squarefree().is_err());
    }

    #[test]
    fn factorization_examples() {
        let f5 = f5();
        let quartic = Polynomial::from_ints(&f5, &[4, 0, 0, 0, 1]);
        let fac = quartic.factorize().unwrap();
        assert!(fac.unit.is_one());
        let expected: Vec<_> = (1..=4)
            .map(|c| (Polynomial::from_ints(&f5, &[c, 1]), 1))
            .collect();
        assert_eq!(fac.factors, expected);
        assert_eq!(fac.expand(), quartic);

        let f2 = f2();
        let sq = Polynomial::from_ints(&f2, &[1, 0, 1]).factorize().unwrap();
        assert_eq!(sq.factors, vec![(Polynomial::from_ints(&f2, &[1, 1]), 2)]);

        let cubic = Polynomial::from_ints(&f2, &[1, 0, 0, 1])
            .factorize()
            .unwrap();
        assert_eq!(
            cubic.factors,
            vec![
                (Polynomial::from_ints(&f2, &[1, 1]), 1),
                (Polynomial::from_ints(&f2, &[1, 1, 1]), 1),
            ]
        );
    }

    #[test]
    fn factorization_round_trip_random() {
        let mut rng = StdRng::seed_from_u64(11);
        for (p, m) in [(2u64, 1u32), (3, 1), (2, 2), (5, 1), (7, 1)] {
            let field = Field::new(p, m).unwrap();
            let q = field.order();
            for _ in 0..30 {
                let deg = rng.gen_range(1..=12);
                let mut coeffs: Vec<FieldElement> = (0..deg)
                    .map(|_| field.element(rng.gen_range(0..q)))
                    .collect();
                coeffs.push(field.element(rng.gen_range(1..q)));
                let f = Polynomial::new(&field, coeffs);
                let fac = f.factorize().unwrap();
                assert_eq!(fac.expand(), f, "round trip failed for {f} over {field}");
                for (g, _) in &fac.factors {
                    assert!(g.is_monic());
                    assert!(g.degree().unwrap() >= 1);
                }
            }
        }
    }

    #[test]
    fn cyclotomic_like_binomials_are_squarefree() {
        // gcd(n, q) = 1 makes x^n - alpha squarefree for every nonzero alpha
        for (p, n) in [(5u64, 4usize), (5, 6), (3, 8), (2, 7), (7, 10)] {
            let field = Field::prime(p).unwrap();
            for alpha in 1..field.order() {
                let f = Polynomial::x_pow_minus(&field, n, &field.element(alpha));
                let fac = f.factorize().unwrap();
                assert!(fac.is_squarefree(), "x^{n} - {alpha} over F_{p}");
                assert_eq!(fac.expand(), f);
            }
        }
    }

    #[test]
    fn matrix_evaluation_on_worked_example() {
        let f5 = f5();
        let a = MatrixFq::from_ints(
            &f5,
            &[&[0, 0, 0, 1], &[3, 0, 0, 0], &[0, 4, 0, 0], &[0, 0, 3, 0]],
        );
        let g = Polynomial::from_ints(&f5, &[2, 3, 1]); // x^2 + 3x + 2
        let expected = MatrixFq::from_ints(
            &f5,
            &[&[2, 0, 3, 3], &[4, 2, 0, 3], &[2, 2, 2, 0], &[0, 2, 4, 2]],
        );
        assert_eq!(g.eval_matrix(&a), expected);
        let quartic = Polynomial::from_ints(&f5, &[4, 0, 0, 0, 1]);
        assert!(quartic.eval_matrix(&a).is_zero());
        assert_eq!(
            Polynomial::one(&f5).eval_matrix(&a),
            MatrixFq::identity(&f5, 4)
        );
    }

    #[test]
    fn matrix_eval_is_multiplicative() {
        let mut rng = StdRng::seed_from_u64(23);
        let field = f5();
        for _ in 0..10 {
            let a = MatrixFq::from_rows(
                &field,
                (0..4)
                    .map(|_| (0..4).map(|_| field.element(rng.gen_range(0..5))).collect())
                    .collect(),
            );
            let f = Polynomial::from_ints(
                &field,
                &(0..4).map(|_| rng.gen_range(0..5)).collect::<Vec<_>>(),
            );
            let g = Polynomial::from_ints(
                &field,
                &(0..3).map(|_| rng.gen_range(0..5)).collect::<Vec<_>>(),
            );
            assert_eq!(
                f.mul(&g).eval_matrix(&a),
                f.eval_matrix(&a).mul(&g.eval_matrix(&a))
            );
        }
    }

    #[test]
    fn berkowitz_char_poly() {
        let f5 = f5();
        let a = MatrixFq::from_ints(
            &f5,
            &[&[0, 0, 0, 1], &[3, 0, 0, 0], &[0, 4, 0, 0], &[0, 0, 3, 0]],
        );
        // n = 4: det(A - xI) = x^4 - 1 = x^4 + 4
        assert_eq!(
            matrix_char_poly(&a),
            Polynomial::from_ints(&f5, &[4, 0, 0, 0, 1])
        );
        // Cayley-Hamilton on a random matrix
        let mut rng = StdRng::seed_from_u64(3);
        for n in 1..=5 {
            let m = MatrixFq::from_rows(
                &f5,
                (0..n)
                    .map(|_| (0..n).map(|_| f5.element(rng.gen_range(0..5))).collect())
                    .collect(),
            );
            let cp = matrix_char_poly(&m);
            assert_eq!(cp.degree(), Some(n));
            assert!(cp.eval_matrix(&m).is_zero());
        }
    }

    #[test]
    fn display_format() {
        let f5 = f5();
        assert_eq!(Polynomial::zero(&f5).to_string(), "0");
        assert_eq!(
            Polynomial::from_ints(&f5, &[4, 0, 3, 1]).to_string(),
            "4 + 3*x^2 + 1*x^3"
        );
    }
}
