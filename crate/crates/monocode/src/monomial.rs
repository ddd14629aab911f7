//! Monomial matrices and their structure: the weighted-shift form, powers
//! and inverses in closed form, similarity to companion matrices,
//! eigenvectors, permutation cycle data and minimal polynomials.
//!
//! Indexing is 0-based throughout; `a[j]` is the nonzero entry of column
//! `j`, placed in row `sigma(j)`.

use std::fmt;

use crate::gf::{Field, FieldElement};
use crate::linalg::{MatrixFq, Vector};
use crate::poly::Polynomial;
use crate::{Error, Result};

/// A permutation of `{0, .., n-1}` in one-line notation: `map[j] = sigma(j)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Permutation> {
        let n = map.len();
        if n == 0 {
            return Err(Error::BadPermutation("empty permutation".into()));
        }
        let mut seen = vec![false; n];
        for &v in &map {
            if v >= n {
                return Err(Error::BadPermutation(format!(
                    "image {v} out of range 0..{n}"
                )));
            }
            if seen[v] {
                return Err(Error::BadPermutation(format!("image {v} repeated")));
            }
            seen[v] = true;
        }
        Ok(Permutation { map })
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation {
            map: (0..n).collect(),
        }
    }

    /// The cycle `j -> j + 1 (mod n)` underlying simple monomial matrices.
    pub fn standard_cycle(n: usize) -> Permutation {
        Permutation {
            map: (0..n).map(|j| (j + 1) % n).collect(),
        }
    }

    /// Builds a permutation of `{0, .., n-1}` from disjoint cycles; indices
    /// not mentioned stay fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Permutation> {
        let mut map: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for (k, &j) in cycle.iter().enumerate() {
                if j >= n {
                    return Err(Error::BadPermutation(format!(
                        "index {j} out of range 0..{n}"
                    )));
                }
                if used[j] {
                    return Err(Error::BadPermutation(format!("index {j} appears twice")));
                }
                used[j] = true;
                map[j] = cycle[(k + 1) % cycle.len()];
            }
        }
        Permutation::new(map)
    }

    /// Accepts one-line notation `[1,2,0]` or disjoint cycles `(0 1 2)(3 4)`
    /// (entries separated by spaces or commas). With `one_based`, indices
    /// are 1-based and shifted down.
    pub fn parse(s: &str, n: usize, one_based: bool) -> Result<Permutation> {
        let s = s.trim();
        let err = |token: &str, position: usize| Error::Parse {
            context: "permutation".into(),
            token: token.to_string(),
            position,
        };
        let parse_index = |tok: &str, pos: usize| -> Result<usize> {
            let v: usize = tok.trim().parse().map_err(|_| err(tok, pos))?;
            if one_based {
                v.checked_sub(1).ok_or_else(|| err(tok, pos))
            } else {
                Ok(v)
            }
        };
        if let Some(body) = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
            let mut map = Vec::new();
            let mut pos = 1;
            for tok in body.split(',') {
                map.push(parse_index(tok, pos)?);
                pos += tok.len() + 1;
            }
            if map.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: map.len(),
                });
            }
            return Permutation::new(map);
        }
        if s.starts_with('(') {
            let mut cycles = Vec::new();
            let mut rest = s;
            let mut offset = 0;
            while !rest.is_empty() {
                let Some(open) = rest.find('(') else {
                    if rest.trim().is_empty() {
                        break;
                    }
                    return Err(err(rest, offset));
                };
                let Some(close) = rest.find(')') else {
                    return Err(err(rest, offset));
                };
                if close < open {
                    return Err(err(&rest[close..=close], offset + close));
                }
                let body = &rest[open + 1..close];
                let mut cycle = Vec::new();
                let mut pos = offset + open + 1;
                for tok in body.split([' ', ',']) {
                    if !tok.trim().is_empty() {
                        cycle.push(parse_index(tok, pos)?);
                    }
                    pos += tok.len() + 1;
                }
                if cycle.is_empty() {
                    return Err(err(&rest[open..=close], offset + open));
                }
                cycles.push(cycle);
                offset += close + 1;
                rest = &rest[close + 1..];
            }
            return Permutation::from_cycles(n, &cycles);
        }
        Err(err(s, 0))
    }

    pub fn n(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, j: usize) -> usize {
        self.map[j]
    }

    pub fn one_line(&self) -> &[usize] {
        &self.map
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.map.len()];
        for (j, &v) in self.map.iter().enumerate() {
            inv[v] = j;
        }
        Permutation { map: inv }
    }

    /// Disjoint cycles, each starting at its smallest element, ordered by
    /// that element. Fixed points appear as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.map.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.map[start];
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.map[j];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles().iter().map(|c| c.len()).collect()
    }

    pub fn is_standard_cycle(&self) -> bool {
        let n = self.map.len();
        (0..n).all(|j| self.map[j] == (j + 1) % n)
    }

    /// The permutation matrix `P` with `P[sigma(j)][j] = 1`.
    pub fn matrix(&self, field: &Field) -> MatrixFq {
        let n = self.map.len();
        let mut m = MatrixFq::zeros(field, n, n);
        for j in 0..n {
            m[(self.map[j], j)] = field.one();
        }
        m
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in self.cycles() {
            let toks: Vec<String> = cycle.iter().map(|j| j.to_string()).collect();
            write!(f, "({})", toks.join(" "))?;
        }
        Ok(())
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// Order of the permutation: lcm of its cycle lengths.
pub fn perm_order(sigma: &Permutation) -> u64 {
    sigma
        .cycle_lengths()
        .iter()
        .fold(1u64, |acc, &l| lcm(acc, l as u64))
}

/// Minimal polynomial of the permutation matrix `P_sigma` over the given
/// field: `lcm_i (x^{n_i} - 1)` over the cycle lengths `n_i`. This divides
/// `x^L - 1` for `L = lcm(n_i)` and equals it only when every divisor of
/// `L` divides some cycle length.
pub fn perm_min_poly(sigma: &Permutation, field: &Field) -> Polynomial {
    let mut acc = Polynomial::one(field);
    for len in sigma.cycle_lengths() {
        let binomial = Polynomial::x_pow_minus(field, len, &field.one());
        acc = acc.lcm(&binomial);
    }
    acc
}

/// An eigenvalue of a simple monomial matrix with its closed-form
/// eigenvector `v(lambda)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenPair {
    pub lambda: FieldElement,
    pub vector: Vector,
}

/// Result of [`MonomialMatrix::companion_similarity`]: the weighted shift
/// `A` satisfies `A * transform == transform * companion`, that is
/// `A = S A_a S^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompanionSimilarity {
    pub companion: MatrixFq,
    pub transform: MatrixFq,
}

/// A restriction of a monomial matrix to one permutation cycle.
#[derive(Clone, Debug)]
pub struct CycleBlock {
    /// Coordinates of the cycle in cycle order (smallest first).
    pub support: Vec<usize>,
    /// The simple monomial matrix acting on those coordinates.
    pub block: MonomialMatrix,
}

/// A nonsingular matrix with exactly one nonzero entry in each row and
/// column: `A[sigma(j)][j] = a[j]`. `simple` marks the weighted cyclic
/// shift, whose permutation is the standard n-cycle.
#[derive(Clone, PartialEq, Eq)]
pub struct MonomialMatrix {
    a: Vec<FieldElement>,
    sigma: Permutation,
    matrix: MatrixFq,
    simple: bool,
}

impl MonomialMatrix {
    /// The weighted cyclic shift sending `c` to
    /// `(a_{n-1} c_{n-1}, a_0 c_0, .., a_{n-2} c_{n-2})`.
    pub fn build_simple(a: Vec<FieldElement>) -> Result<MonomialMatrix> {
        let n = a.len();
        MonomialMatrix::build_general(a, Permutation::standard_cycle(n))
    }

    pub fn build_general(a: Vec<FieldElement>, sigma: Permutation) -> Result<MonomialMatrix> {
        if a.is_empty() {
            return Err(Error::LengthMismatch {
                expected: 1,
                found: 0,
            });
        }
        if sigma.n() != a.len() {
            return Err(Error::LengthMismatch {
                expected: a.len(),
                found: sigma.n(),
            });
        }
        let field = a[0].field().clone();
        for (j, c) in a.iter().enumerate() {
            assert!(c.field() == &field, "coefficients from mixed fields");
            if c.is_zero() {
                return Err(Error::ZeroCoefficient { index: j });
            }
        }
        let n = a.len();
        let mut matrix = MatrixFq::zeros(&field, n, n);
        for (j, c) in a.iter().enumerate() {
            matrix[(sigma.apply(j), j)] = c.clone();
        }
        let simple = sigma.is_standard_cycle();
        Ok(MonomialMatrix {
            a,
            sigma,
            matrix,
            simple,
        })
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn field(&self) -> &Field {
        self.matrix.field()
    }

    /// The associated vector, indexed by column.
    pub fn coeffs(&self) -> &[FieldElement] {
        &self.a
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    pub fn matrix(&self) -> &MatrixFq {
        &self.matrix
    }

    pub fn is_simple(&self) -> bool {
        self.simple
    }

    /// `prod a_i`, the corner value of the companion form.
    pub fn coeff_product(&self) -> FieldElement {
        let mut acc = self.field().one();
        for c in &self.a {
            acc = acc.mul(c);
        }
        acc
    }

    /// The shift image `A c^t`.
    pub fn apply(&self, v: &[FieldElement]) -> Vector {
        self.matrix.mul_vec(v)
    }

    /// Closed forms for a simple monomial matrix: `A^n = (prod a_i) I` and
    /// `A^{-1} = (prod a_i)^{-1} A^{n-1}`, both checked against direct
    /// matrix arithmetic.
    pub fn power_and_inverse(&self) -> Result<(MatrixFq, MatrixFq)> {
        if !self.simple {
            return Err(Error::NotSimple);
        }
        let n = self.n() as u64;
        let field = self.field().clone();
        let product = self.coeff_product();
        let a_n = MatrixFq::identity(&field, self.n()).scale(&product);
        let inv_scale = product.inv().expect("product of nonzero entries");
        let a_inv = self.matrix.pow(n - 1).scale(&inv_scale);
        debug_assert_eq!(a_n, self.matrix.pow(n));
        debug_assert_eq!(
            a_inv.mul(&self.matrix),
            MatrixFq::identity(&field, self.n())
        );
        Ok((a_n, a_inv))
    }

    /// Similarity of a simple monomial matrix to the companion matrix of
    /// `x^n - prod a_i`. The transform is the weighted shift of prefix
    /// products `(a_0, a_0 a_1, .., a_0 .. a_{n-1})`; the verified
    /// orientation is `A * S = S * A_a`.
    pub fn companion_similarity(&self) -> Result<CompanionSimilarity> {
        if !self.simple {
            return Err(Error::NotSimple);
        }
        let n = self.n();
        let field = self.field().clone();
        let product = self.coeff_product();
        let mut companion = MatrixFq::zeros(&field, n, n);
        companion[(0, n - 1)] = product.clone();
        for j in 0..n - 1 {
            companion[(j + 1, j)] = field.one();
        }
        if n == 1 {
            // the 1x1 case degenerates: A = A_a already
            companion[(0, 0)] = product;
        }
        let mut prefix = Vec::with_capacity(n);
        let mut acc = field.one();
        for c in &self.a {
            acc = acc.mul(c);
            prefix.push(acc.clone());
        }
        let transform = MonomialMatrix::build_simple(prefix)?.matrix().clone();
        assert_eq!(
            self.matrix.mul(&transform),
            transform.mul(&companion),
            "companion similarity orientation failed to verify"
        );
        Ok(CompanionSimilarity {
            companion,
            transform,
        })
    }

    /// Characteristic polynomial `det(A - xI)`: the closed form
    /// `(-1)^n (x^n - prod a_i)` for a simple matrix, and the product of
    /// the cycle blocks' closed forms in general. The unit `(-1)^n` is the
    /// leading coefficient; factor indices elsewhere always refer to the
    /// monic part.
    pub fn char_poly(&self) -> Polynomial {
        let monic = self.char_poly_monic();
        if self.n() % 2 == 0 {
            monic
        } else {
            monic.neg()
        }
    }

    /// The monic part `prod_cycles (x^{n_i} - alpha_i)` of the
    /// characteristic polynomial.
    pub fn char_poly_monic(&self) -> Polynomial {
        let field = self.field().clone();
        let mut acc = Polynomial::one(&field);
        for block in self.cycle_blocks() {
            let alpha = block.block.coeff_product();
            acc = acc.mul(&Polynomial::x_pow_minus(
                &field,
                block.support.len(),
                &alpha,
            ));
        }
        acc
    }

    /// Eigenvalues in `F_q` (all `lambda` with `lambda^n = prod a_i`, found by
    /// exhausting the field) with the closed-form eigenvectors
    /// `v(lambda) = (lambda^{n-1}, a_0 lambda^{n-2}, .., a_0 .. a_{n-2})`.
    pub fn eigen_pairs(&self) -> Result<Vec<EigenPair>> {
        if !self.simple {
            return Err(Error::NotSimple);
        }
        let n = self.n();
        let field = self.field().clone();
        let product = self.coeff_product();
        let mut out = Vec::new();
        for lambda in field.elements() {
            if lambda.pow(n as u64) != product {
                continue;
            }
            let mut vector = Vec::with_capacity(n);
            let mut coeff = field.one();
            for i in 0..n {
                vector.push(coeff.mul(&lambda.pow((n - 1 - i) as u64)));
                if i < n - 1 {
                    coeff = coeff.mul(&self.a[i]);
                }
            }
            debug_assert!(vector.iter().any(|e| !e.is_zero()));
            debug_assert_eq!(
                self.apply(&vector),
                vector.iter().map(|e| e.mul(&lambda)).collect::<Vector>()
            );
            out.push(EigenPair { lambda, vector });
        }
        Ok(out)
    }

    /// Restrictions to the permutation's cycles: one simple monomial block
    /// per cycle, acting on the cycle's coordinates in cycle order.
    pub fn cycle_blocks(&self) -> Vec<CycleBlock> {
        self.sigma
            .cycles()
            .into_iter()
            .map(|support| {
                let coeffs = support.iter().map(|&j| self.a[j].clone()).collect();
                let block = MonomialMatrix::build_simple(coeffs).expect("entries already nonzero");
                debug_assert!(support.iter().enumerate().all(|(t, &j)| {
                    let to = support[(t + 1) % support.len()];
                    self.matrix[(to, j)] == block.matrix[((t + 1) % support.len(), t)]
                }));
                CycleBlock { support, block }
            })
            .collect()
    }
}

impl fmt::Debug for MonomialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "MonomialMatrix n={} a=[{}] sigma={} {:?}",
            self.n(),
            self.a
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(","),
            self.sigma,
            self.matrix
        )
    }
}
