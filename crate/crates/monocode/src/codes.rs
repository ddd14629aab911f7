//! Monomial codes as invariant subspaces: decomposition of `F_q^n` into
//! minimal invariant subspaces (kernels of the irreducible factors of the
//! characteristic polynomial), construction and enumeration of the codes
//! they span, membership through the defining polynomial, encoding, and
//! exhaustive minimum distance.

use std::fmt;
use std::sync::OnceLock;

use crate::gf::FieldElement;
use crate::linalg::{MatrixFq, Subspace, Vector};
use crate::monomial::MonomialMatrix;
use crate::poly::{Factorization, Polynomial};
use crate::{Error, Result};

/// Subset enumeration refuses more components than this.
pub const ENUMERATION_LIMIT: usize = 20;

/// Exhaustive distance search refuses message spaces larger than `2^24`.
pub const DISTANCE_GUARD_BITS: u32 = 24;

/// One minimal invariant subspace `W_i = ker f_i(A)`.
#[derive(Clone, Debug)]
pub struct MinimalComponent {
    pub index: usize,
    pub factor: Polynomial,
    pub space: Subspace,
}

/// The decomposition `F_q^n = W_1 + .. + W_r` attached to a monomial matrix
/// with squarefree characteristic polynomial.
#[derive(Clone, Debug)]
pub struct Decomposition {
    matrix: MonomialMatrix,
    char_poly: Polynomial,
    factorization: Factorization,
    components: Vec<MinimalComponent>,
}

/// Splits `F_q^n` into the kernels of the irreducible factors of the
/// characteristic polynomial. Errors when a factor repeats, which for a
/// simple matrix means `gcd(n, q) != 1` and for a general one colliding
/// cycle blocks.
pub fn decompose(m: &MonomialMatrix) -> Result<Decomposition> {
    let char_poly = m.char_poly();
    let factorization = char_poly.factorize()?;
    if let Some((factor, mult)) = factorization.factors.iter().find(|(_, mult)| *mult > 1) {
        let n = m.n() as u64;
        let q = m.field().order();
        let g = gcd(n, q);
        let detail = if g != 1 {
            format!("hypothesis gcd(n, q) = 1 fails: gcd({n}, {q}) = {g}")
        } else {
            "cycle blocks share characteristic factors".to_string()
        };
        return Err(Error::RepeatedFactor {
            factor: factor.to_string(),
            multiplicity: *mult,
            detail,
        });
    }
    let a = m.matrix();
    let components: Vec<MinimalComponent> = factorization
        .factors
        .iter()
        .enumerate()
        .map(|(index, (factor, _))| MinimalComponent {
            index,
            factor: factor.clone(),
            space: factor.eval_matrix(a).kernel(),
        })
        .collect();
    debug_assert!(components
        .iter()
        .all(|c| c.space.dim() == c.factor.degree().unwrap()));
    debug_assert_eq!(
        components.iter().map(|c| c.space.dim()).sum::<usize>(),
        m.n()
    );
    Ok(Decomposition {
        matrix: m.clone(),
        char_poly,
        factorization,
        components,
    })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Decomposition {
    pub fn matrix(&self) -> &MonomialMatrix {
        &self.matrix
    }

    pub fn char_poly(&self) -> &Polynomial {
        &self.char_poly
    }

    pub fn factorization(&self) -> &Factorization {
        &self.factorization
    }

    pub fn components(&self) -> &[MinimalComponent] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// The code `W_{i_1} + .. + W_{i_s}` for a selection of component
    /// indices, with defining polynomial `g = (-1)^k f_{i_1} .. f_{i_s}`.
    pub fn make_code(&self, selection: &[usize]) -> Result<LinearCode> {
        let r = self.components.len();
        let mut sel: Vec<usize> = selection.to_vec();
        sel.sort_unstable();
        sel.dedup();
        if let Some(&bad) = sel.iter().find(|&&i| i >= r) {
            return Err(Error::BadSelection {
                index: bad,
                count: r,
            });
        }
        let field = self.matrix.field().clone();
        let n = self.matrix.n();
        let mut space = Subspace::zero(&field, n);
        let mut g = Polynomial::one(&field);
        let mut k = 0usize;
        for &i in &sel {
            let comp = &self.components[i];
            space = space.sum(&comp.space);
            g = g.mul(&comp.factor);
            k += comp.factor.degree().unwrap();
        }
        if k % 2 == 1 {
            g = g.neg();
        }
        let g_at_matrix = g.eval_matrix(self.matrix.matrix());
        debug_assert_eq!(space.dim(), k);
        debug_assert_eq!(g_at_matrix.rank(), n - k);
        Ok(LinearCode {
            matrix: self.matrix.clone(),
            selection: sel,
            g,
            g_at_matrix,
            k,
            space,
            distance: OnceLock::new(),
        })
    }

    /// One code per subset of components, in binary counting order on the
    /// factor indices (bit `i` selects component `i`). Excludes the zero
    /// code and the full space unless `include_trivial` is set.
    pub fn enumerate_codes(&self, include_trivial: bool) -> Result<Vec<LinearCode>> {
        let r = self.components.len();
        if r > ENUMERATION_LIMIT {
            return Err(Error::TooManyComponents {
                count: r,
                limit: ENUMERATION_LIMIT,
            });
        }
        let full = (1u64 << r) - 1;
        let mut out = Vec::new();
        for mask in 0..=full {
            if !include_trivial && (mask == 0 || mask == full) {
                continue;
            }
            let selection: Vec<usize> = (0..r).filter(|i| mask >> i & 1 == 1).collect();
            out.push(self.make_code(&selection)?);
        }
        Ok(out)
    }
}

/// A monomial code: the direct sum of selected minimal components, carried
/// with its RREF generator basis and defining polynomial.
pub struct LinearCode {
    matrix: MonomialMatrix,
    selection: Vec<usize>,
    g: Polynomial,
    g_at_matrix: MatrixFq,
    k: usize,
    space: Subspace,
    distance: OnceLock<usize>,
}

impl LinearCode {
    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn matrix(&self) -> &MonomialMatrix {
        &self.matrix
    }

    /// Sorted component indices making up the code.
    pub fn selection(&self) -> &[usize] {
        &self.selection
    }

    /// The defining polynomial `g(x) = (-1)^k f_{i_1} .. f_{i_s}`.
    pub fn generator_poly(&self) -> &Polynomial {
        &self.g
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    /// `c` belongs to the code iff `g(A) c = 0`; the result agrees with
    /// elimination against the RREF basis.
    pub fn membership(&self, c: &[FieldElement]) -> Result<bool> {
        if c.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                found: c.len(),
            });
        }
        let annihilated = self.g_at_matrix.mul_vec(c).iter().all(|e| e.is_zero());
        debug_assert_eq!(annihilated, self.space.contains(c));
        Ok(annihilated)
    }

    /// `message x generator-basis`, systematic in the pivot coordinates.
    pub fn encode(&self, message: &[FieldElement]) -> Result<Vector> {
        if message.len() != self.k {
            return Err(Error::LengthMismatch {
                expected: self.k,
                found: message.len(),
            });
        }
        let field = self.matrix.field();
        let mut out = vec![field.zero(); self.n()];
        for (m, row) in message.iter().zip(self.space.basis().row_vectors()) {
            if m.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(&row) {
                let t = m.mul(b);
                *o = o.add(&t);
            }
        }
        Ok(out)
    }

    /// The distance if `min_distance` has already computed it.
    pub fn cached_distance(&self) -> Option<usize> {
        self.distance.get().copied()
    }

    /// Minimum Hamming weight over all `q^k - 1` nonzero codewords, by
    /// exhaustive message-space iteration. Cached after the first call.
    pub fn min_distance(&self) -> Result<usize> {
        if let Some(&d) = self.distance.get() {
            return Ok(d);
        }
        if self.k == 0 {
            return Err(Error::ZeroCode);
        }
        let field = self.matrix.field().clone();
        let q = field.order();
        let size = (q as u128).saturating_pow(self.k as u32);
        if size > 1u128 << DISTANCE_GUARD_BITS {
            return Err(Error::DistanceTooLarge { k: self.k, q });
        }
        let mut best = usize::MAX;
        let mut message = vec![field.zero(); self.k];
        let mut digits = vec![0u64; self.k];
        loop {
            // odometer step over the message space
            let mut pos = 0;
            loop {
                if pos == self.k {
                    let d = self.distance.get_or_init(|| best);
                    return Ok(*d);
                }
                digits[pos] += 1;
                if digits[pos] < q {
                    message[pos] = field.element(digits[pos]);
                    break;
                }
                digits[pos] = 0;
                message[pos] = field.zero();
                pos += 1;
            }
            let weight = self
                .encode(&message)
                .expect("message length fixed")
                .iter()
                .filter(|e| !e.is_zero())
                .count();
            best = best.min(weight);
        }
    }
}

impl Clone for LinearCode {
    fn clone(&self) -> Self {
        let distance = OnceLock::new();
        if let Some(&d) = self.distance.get() {
            let _ = distance.set(d);
        }
        LinearCode {
            matrix: self.matrix.clone(),
            selection: self.selection.clone(),
            g: self.g.clone(),
            g_at_matrix: self.g_at_matrix.clone(),
            k: self.k,
            space: self.space.clone(),
            distance,
        }
    }
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix && self.selection == other.selection
    }
}

impl Eq for LinearCode {}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LinearCode [n={}, k={}] selection {:?} g = {}",
            self.n(),
            self.k,
            self.selection,
            self.g
        )
    }
}

/// Whether the subspace is closed under the shift: `A b` stays inside for
/// every RREF basis vector `b` (sufficient by linearity).
pub fn shift_closure_check(space: &Subspace, m: &MonomialMatrix) -> bool {
    assert_eq!(space.ambient_dim(), m.n(), "ambient dimension mismatch");
    space
        .basis_rows()
        .iter()
        .all(|b| space.contains(&m.apply(b)))
}
