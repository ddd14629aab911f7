//! Centralizers and characteristic subspaces: the commutant of a matrix as
//! an explicit basis, cyclic subspaces, certification of hyperinvariant /
//! characteristic status with witness search, decomposition of codes along
//! permutation cycles, and the coprime-blocks centralizer report.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gf::FieldElement;
use crate::linalg::{MatrixFq, Subspace, Vector};
use crate::monomial::MonomialMatrix;
use crate::poly::matrix_char_poly;
use crate::{Error, Result};

/// Exhaustive witness search is used while `q^dim` stays within this bound.
pub const EXHAUSTIVE_SEARCH_LIMIT: u128 = 1 << 16;

/// Basis of `{X : AX = XA}` in deterministic RREF order, together with the
/// flattened row space for membership tests.
#[derive(Clone, Debug)]
pub struct CentralizerBasis {
    n: usize,
    basis: Vec<MatrixFq>,
    span: Subspace,
}

/// Kernel basis of the linear map `X -> AX - XA` on flattened matrix space.
pub fn centralizer(a: &MatrixFq) -> CentralizerBasis {
    assert!(a.is_square(), "centralizer of a non-square matrix");
    let n = a.rows();
    let field = a.field().clone();
    let mut op = MatrixFq::zeros(&field, n * n, n * n);
    // column (k,l) is the flattening of A E_kl - E_kl A
    for k in 0..n {
        for l in 0..n {
            let col = k * n + l;
            for i in 0..n {
                let e = &a[(i, k)];
                if !e.is_zero() {
                    op[(i * n + l, col)] = op[(i * n + l, col)].add(e);
                }
            }
            for j in 0..n {
                let e = &a[(l, j)];
                if !e.is_zero() {
                    op[(k * n + j, col)] = op[(k * n + j, col)].sub(e);
                }
            }
        }
    }
    let span = op.kernel();
    let basis: Vec<MatrixFq> = span
        .basis_rows()
        .into_iter()
        .map(|row| MatrixFq::from_flat(&field, n, n, row))
        .collect();
    debug_assert!(basis.iter().all(|x| x.commutes_with(a)));
    CentralizerBasis { n, basis, span }
}

impl CentralizerBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[MatrixFq] {
        &self.basis
    }

    pub fn matrix_size(&self) -> usize {
        self.n
    }

    /// Whether `x` commutes with the reference matrix, i.e. lies in the span.
    pub fn contains(&self, x: &MatrixFq) -> bool {
        x.rows() == self.n && x.cols() == self.n && self.span.contains(&x.flatten())
    }

    /// The linear combination of basis elements with the given coefficients.
    pub fn element(&self, coeffs: &[FieldElement]) -> MatrixFq {
        assert_eq!(
            coeffs.len(),
            self.basis.len(),
            "one coefficient per basis element"
        );
        let field = self.span.field().clone();
        let mut acc = MatrixFq::zeros(&field, self.n, self.n);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                acc = acc.add(&b.scale(c));
            }
        }
        acc
    }
}

/// Span of `x, Ax, A^2 x, ..` saturated at the first linear dependence.
pub fn cyclic_subspace(a: &MatrixFq, x: &[FieldElement]) -> Subspace {
    assert!(a.is_square() && a.cols() == x.len(), "dimension mismatch");
    let field = a.field().clone();
    let mut space = Subspace::zero(&field, x.len());
    let mut rows: Vec<Vector> = Vec::new();
    let mut v = x.to_vec();
    while !space.contains(&v) {
        rows.push(v.clone());
        space = Subspace::from_rows(&field, x.len(), rows.clone());
        v = a.mul_vec(&v);
    }
    space
}

/// Outcome of the characteristic-subspace check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharacteristicStatus {
    /// Proved invariant under every invertible commuting matrix, either via
    /// hyperinvariance or by exhausting the centralizer.
    Certified,
    /// An invertible commuting matrix maps the subspace outside itself.
    Refuted,
    /// Sampling found no witness; no proof either way.
    Undetermined,
}

impl CharacteristicStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CharacteristicStatus::Certified => "certified",
            CharacteristicStatus::Refuted => "refuted",
            CharacteristicStatus::Undetermined => "undetermined",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CharacteristicReport {
    pub invariant: bool,
    pub hyperinvariant: bool,
    pub status: CharacteristicStatus,
    /// For a refutation: invertible, commutes with `A`, moves the subspace.
    pub witness: Option<MatrixFq>,
}

fn maps_into(x: &MatrixFq, v: &Subspace) -> bool {
    v.basis_rows().iter().all(|b| v.contains(&x.mul_vec(b)))
}

/// Classifies a subspace: invariant under `A`? invariant under the whole
/// centralizer (hyperinvariant, which certifies characteristic)? otherwise
/// hunts for an invertible commuting witness that moves it — exhaustively
/// over the centralizer when `q^dim` is small, else by seeded sampling up
/// to `budget` candidates.
pub fn check_characteristic(
    v: &Subspace,
    a: &MatrixFq,
    budget: usize,
    seed: u64,
) -> CharacteristicReport {
    assert!(
        a.is_square() && a.cols() == v.ambient_dim(),
        "ambient mismatch"
    );
    let field = a.field().clone();
    let invariant = v.basis_rows().iter().all(|b| v.contains(&a.mul_vec(b)));
    let cent = centralizer(a);
    let hyperinvariant = cent.basis().iter().all(|x| maps_into(x, v));
    if hyperinvariant {
        return CharacteristicReport {
            invariant,
            hyperinvariant,
            status: CharacteristicStatus::Certified,
            witness: None,
        };
    }
    let q = field.order();
    let dim = cent.dim();
    let combos = (q as u128).saturating_pow(dim as u32);
    if combos <= EXHAUSTIVE_SEARCH_LIMIT {
        // smallest violating invertible combination in enumeration order
        let mut coeffs = vec![field.zero(); dim];
        for idx in 1..combos {
            let mut rest = idx;
            for c in coeffs.iter_mut() {
                *c = field.element((rest % q as u128) as u64);
                rest /= q as u128;
            }
            let x = cent.element(&coeffs);
            if !maps_into(&x, v) && x.is_invertible() {
                return CharacteristicReport {
                    invariant,
                    hyperinvariant,
                    status: CharacteristicStatus::Refuted,
                    witness: Some(x),
                };
            }
        }
        return CharacteristicReport {
            invariant,
            hyperinvariant,
            status: CharacteristicStatus::Certified,
            witness: None,
        };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget {
        let coeffs: Vec<FieldElement> = (0..dim)
            .map(|_| field.element(rng.gen_range(0..q)))
            .collect();
        if coeffs.iter().all(|c| c.is_zero()) {
            continue;
        }
        let x = cent.element(&coeffs);
        if !maps_into(&x, v) && x.is_invertible() {
            return CharacteristicReport {
                invariant,
                hyperinvariant,
                status: CharacteristicStatus::Refuted,
                witness: Some(x),
            };
        }
    }
    CharacteristicReport {
        invariant,
        hyperinvariant,
        status: CharacteristicStatus::Undetermined,
        witness: None,
    }
}

/// One cycle component of a generalized monomial code.
#[derive(Clone, Debug)]
pub struct GeneralizedComponent {
    pub cycle_index: usize,
    pub space: Subspace,
}

/// Splits an invariant subspace along the permutation cycles of `M`:
/// `C_i = C` intersected with the coordinate block of cycle `i`, which is
/// the kernel of the block annihilator `x^{n_i} - alpha_i` at `A` whenever
/// the annihilators are pairwise coprime. Zero components are dropped.
/// Errors when `C` is not invariant, or when colliding cycle annihilators
/// leave the components short of `C`.
pub fn decompose_generalized(
    c: &Subspace,
    m: &MonomialMatrix,
) -> Result<Vec<GeneralizedComponent>> {
    if c.ambient_dim() != m.n() {
        return Err(Error::LengthMismatch {
            expected: m.n(),
            found: c.ambient_dim(),
        });
    }
    if !crate::codes::shift_closure_check(c, m) {
        return Err(Error::NotInvariant);
    }
    let field = m.field().clone();
    let n = m.n();
    let mut components = Vec::new();
    let mut total = Subspace::zero(&field, n);
    for (cycle_index, block) in m.cycle_blocks().iter().enumerate() {
        let rows: Vec<Vector> = block
            .support
            .iter()
            .map(|&j| {
                let mut e = vec![field.zero(); n];
                e[j] = field.one();
                e
            })
            .collect();
        let coordinate_block = Subspace::from_rows(&field, n, rows);
        let space = c.intersect(&coordinate_block);
        if space.is_zero() {
            continue;
        }
        debug_assert!(total.intersect(&space).is_zero());
        debug_assert!(crate::codes::shift_closure_check(&space, m));
        total = total.sum(&space);
        components.push(GeneralizedComponent { cycle_index, space });
    }
    if total != *c {
        return Err(Error::DecompositionFailed(format!(
            "cycle components span {} of {} dimensions; colliding cycle annihilators",
            total.dim(),
            c.dim()
        )));
    }
    Ok(components)
}

/// Centralizer report for a block-diagonal matrix with pairwise coprime
/// block characteristic polynomials.
#[derive(Clone, Debug)]
pub struct CoprimeBlockReport {
    pub block_dims: Vec<usize>,
    /// `dim C(A_i)` per diagonal block.
    pub diagonal_dims: Vec<usize>,
    /// Kernel dimension of each off-diagonal Sylvester operator
    /// `X -> A_i X - X A_j`, `i < j`; all zero under the precondition.
    pub offdiag_kernel_dims: Vec<(usize, usize, usize)>,
    /// Centralizer dimension of the assembled block-diagonal matrix:
    /// the direct product of the diagonal centralizers.
    pub centralizer_dim: usize,
}

/// Certifies that the off-diagonal Sylvester equations `A_i X = X A_j`
/// admit only `X = 0` when the block characteristic polynomials are
/// pairwise coprime, and reports the block-diagonal centralizer as the
/// direct product of the per-block centralizers.
pub fn coprime_block_centralizer(blocks: &[MatrixFq]) -> Result<CoprimeBlockReport> {
    assert!(!blocks.is_empty(), "at least one block");
    let field = blocks[0].field().clone();
    for b in blocks {
        assert!(b.is_square(), "blocks must be square");
        assert!(b.field() == &field, "blocks over mixed fields");
    }
    let char_polys: Vec<_> = blocks.iter().map(matrix_char_poly).collect();
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            let g = char_polys[i].gcd(&char_polys[j]);
            if !g.is_one() {
                return Err(Error::NotCoprime {
                    i,
                    j,
                    gcd: g.to_string(),
                });
            }
        }
    }
    let mut offdiag_kernel_dims = Vec::new();
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            let dim = sylvester_kernel_dim(&blocks[i], &blocks[j]);
            offdiag_kernel_dims.push((i, j, dim));
        }
    }
    let diagonal_dims: Vec<usize> = blocks.iter().map(|b| centralizer(b).dim()).collect();
    Ok(CoprimeBlockReport {
        block_dims: blocks.iter().map(|b| b.rows()).collect(),
        centralizer_dim: diagonal_dims.iter().sum(),
        diagonal_dims,
        offdiag_kernel_dims,
    })
}

/// Kernel dimension of `X -> A X - X B` on `rows(A) x rows(B)` matrices,
/// by flattening to a linear system.
pub fn sylvester_kernel_dim(a: &MatrixFq, b: &MatrixFq) -> usize {
    let field = a.field().clone();
    let (na, nb) = (a.rows(), b.rows());
    let mut op = MatrixFq::zeros(&field, na * nb, na * nb);
    // column (k,l): flattening of A E_kl - E_kl B
    for k in 0..na {
        for l in 0..nb {
            let col = k * nb + l;
            for i in 0..na {
                let e = &a[(i, k)];
                if !e.is_zero() {
                    op[(i * nb + l, col)] = op[(i * nb + l, col)].add(e);
                }
            }
            for j in 0..nb {
                let e = &b[(l, j)];
                if !e.is_zero() {
                    op[(k * nb + j, col)] = op[(k * nb + j, col)].sub(e);
                }
            }
        }
    }
    op.kernel().dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;
    use crate::monomial::Permutation;
    use crate::poly::Polynomial;

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    fn elems(field: &Field, v: &[i64]) -> Vec<FieldElement> {
        v.iter().map(|&x| field.from_int(x)).collect()
    }

    fn two_block_example(field: &Field) -> MonomialMatrix {
        MonomialMatrix::build_general(
            elems(field, &[2, 3, 1, 2, 3, 1]),
            Permutation::from_cycles(6, &[vec![0, 1, 2], vec![3, 4, 5]]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn centralizer_of_companion_is_polynomial_algebra() {
        let field = f5();
        // companion of x^2 - 3
        let a = MatrixFq::from_ints(&field, &[&[0, 3], &[1, 0]]);
        let cent = centralizer(&a);
        assert_eq!(cent.dim(), 2);
        assert!(cent.contains(&MatrixFq::identity(&field, 2)));
        assert!(cent.contains(&a));
        // general element x1*I + x0*A has the displayed shape
        let x = cent.element(&elems(&field, &[2, 4]));
        assert!(x.commutes_with(&a));

        let id = MatrixFq::identity(&field, 3);
        assert_eq!(centralizer(&id).dim(), 9);
    }

    #[test]
    fn simple_monomial_centralizer_is_spanned_by_powers() {
        let field = f5();
        let m = MonomialMatrix::build_simple(elems(&field, &[3, 4, 3, 1])).unwrap();
        let a = m.matrix();
        let cent = centralizer(a);
        assert_eq!(cent.dim(), 4);
        let mut power = MatrixFq::identity(&field, 4);
        for _ in 0..4 {
            assert!(cent.contains(&power));
            power = power.mul(a);
        }
    }

    #[test]
    fn centralizer_of_two_block_example_contains_displayed_matrix() {
        let field = f5();
        let m = two_block_example(&field);
        let cent = centralizer(m.matrix());
        assert_eq!(cent.dim(), 12);
        let c = MatrixFq::from_ints(
            &field,
            &[
                &[0, 0, 0, 1, 3, 1],
                &[0, 0, 0, 2, 1, 2],
                &[0, 0, 0, 1, 3, 1],
                &[1, 3, 1, 0, 0, 0],
                &[2, 1, 2, 0, 0, 0],
                &[1, 3, 1, 0, 0, 0],
            ],
        );
        assert!(c.commutes_with(m.matrix()));
        assert!(cent.contains(&c));
    }

    #[test]
    fn cyclic_subspaces_of_worked_example() {
        let field = f5();
        let a = MonomialMatrix::build_simple(elems(&field, &[3, 4, 3, 1]))
            .unwrap()
            .matrix()
            .clone();
        let eigen = cyclic_subspace(&a, &elems(&field, &[1, 2, 2, 4]));
        assert_eq!(eigen.dim(), 1);
        assert!(cyclic_subspace(&a, &elems(&field, &[0, 0, 0, 0])).is_zero());
        let full = cyclic_subspace(&a, &elems(&field, &[1, 0, 0, 0]));
        assert_eq!(full.dim(), 4);

        // cyclic subspaces are hyperinvariant
        let cent = centralizer(&a);
        for x in cent.basis() {
            assert!(maps_into(x, &eigen));
            assert!(maps_into(x, &full));
        }
    }

    #[test]
    fn kernels_of_polynomials_are_certified() {
        let field = f5();
        let a = MonomialMatrix::build_simple(elems(&field, &[3, 4, 3, 1]))
            .unwrap()
            .matrix()
            .clone();
        let g = Polynomial::from_ints(&field, &[2, 3, 1]);
        let v = g.eval_matrix(&a).kernel();
        let report = check_characteristic(&v, &a, 64, 1);
        assert!(report.invariant && report.hyperinvariant);
        assert_eq!(report.status, CharacteristicStatus::Certified);
        assert!(report.witness.is_none());

        let full = Subspace::full(&field, 4);
        let report = check_characteristic(&full, &a, 64, 1);
        assert_eq!(report.status, CharacteristicStatus::Certified);
    }

    #[test]
    fn two_block_fixed_line_is_refuted() {
        let field = f5();
        let m = two_block_example(&field);
        let v = Subspace::from_rows(&field, 6, vec![elems(&field, &[1, 2, 1, 0, 0, 0])]);
        let report = check_characteristic(&v, m.matrix(), 512, 7);
        assert!(report.invariant);
        assert!(!report.hyperinvariant);
        assert_eq!(report.status, CharacteristicStatus::Refuted);
        let witness = report.witness.unwrap();
        assert!(witness.is_invertible());
        assert!(witness.commutes_with(m.matrix()));
        assert!(!maps_into(&witness, &v));

        // zero budget leaves the sampled search empty-handed
        let report = check_characteristic(&v, m.matrix(), 0, 7);
        assert_eq!(report.status, CharacteristicStatus::Undetermined);
        // the displayed block swap is such a witness
        let swap = MatrixFq::from_ints(
            &field,
            &[
                &[0, 0, 0, 1, 0, 0],
                &[0, 0, 0, 0, 1, 0],
                &[0, 0, 0, 0, 0, 1],
                &[1, 0, 0, 0, 0, 0],
                &[0, 1, 0, 0, 0, 0],
                &[0, 0, 1, 0, 0, 0],
            ],
        );
        assert!(swap.commutes_with(m.matrix()));
        assert!(swap.is_invertible());
        assert_eq!(
            swap.mul_vec(&elems(&field, &[1, 2, 1, 0, 0, 0])),
            elems(&field, &[0, 0, 0, 1, 2, 1])
        );
        assert!(!v.contains(&swap.mul_vec(&elems(&field, &[1, 2, 1, 0, 0, 0]))));
    }

    #[test]
    fn generalized_decomposition_on_two_blocks() {
        let field = f5();
        let m = two_block_example(&field);
        let c = Subspace::from_rows(
            &field,
            6,
            vec![
                elems(&field, &[1, 2, 1, 0, 0, 0]),
                elems(&field, &[0, 0, 0, 1, 2, 1]),
            ],
        );
        let parts = decompose_generalized(&c, &m).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].cycle_index, 0);
        assert_eq!(
            parts[0].space,
            Subspace::from_rows(&field, 6, vec![elems(&field, &[1, 2, 1, 0, 0, 0])])
        );
        assert_eq!(
            parts[1].space,
            Subspace::from_rows(&field, 6, vec![elems(&field, &[0, 0, 0, 1, 2, 1])])
        );

        assert!(decompose_generalized(&Subspace::zero(&field, 6), &m)
            .unwrap()
            .is_empty());

        let simple = MonomialMatrix::build_simple(elems(&field, &[3, 4, 3, 1])).unwrap();
        let line = Subspace::from_rows(&field, 4, vec![elems(&field, &[1, 2, 2, 4])]);
        let parts = decompose_generalized(&line, &simple).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].space, line);

        let not_invariant =
            Subspace::from_rows(&field, 6, vec![elems(&field, &[1, 0, 0, 0, 0, 0])]);
        assert_eq!(
            decompose_generalized(&not_invariant, &m).unwrap_err(),
            Error::NotInvariant
        );

        // the diagonal fixed line: invariant, but its cycle components
        // vanish because the identical blocks share annihilators
        let diagonal = Subspace::from_rows(&field, 6, vec![elems(&field, &[1, 2, 1, 1, 2, 1])]);
        assert!(crate::codes::shift_closure_check(&diagonal, &m));
        assert!(matches!(
            decompose_generalized(&diagonal, &m).unwrap_err(),
            Error::DecompositionFailed(_)
        ));
    }

    #[test]
    fn coordinate_blocks_match_block_annihilator_kernels_when_coprime() {
        let field = f5();
        // blocks of sizes 2 and 3 with distinct products: coprime annihilators
        let m = MonomialMatrix::build_general(
            elems(&field, &[2, 1, 1, 3, 1]),
            Permutation::from_cycles(5, &[vec![0, 1], vec![2, 3, 4]]).unwrap(),
        )
        .unwrap();
        let a = m.matrix();
        for (i, block) in m.cycle_blocks().iter().enumerate() {
            let ann =
                Polynomial::x_pow_minus(&field, block.support.len(), &block.block.coeff_product());
            let kernel = ann.eval_matrix(a).kernel();
            let rows: Vec<Vector> = block
                .support
                .iter()
                .map(|&j| {
                    let mut e = vec![field.zero(); 5];
                    e[j] = field.one();
                    e
                })
                .collect();
            let coordinate_block = Subspace::from_rows(&field, 5, rows);
            assert_eq!(kernel, coordinate_block, "cycle {i}");
        }
    }

    #[test]
    fn coprime_blocks_report() {
        let field = f5();
        let b1 = MatrixFq::from_ints(&field, &[&[0, 2], &[1, 0]]); // companion x^2 - 2
        let b2 = MatrixFq::from_ints(&field, &[&[0, 3], &[1, 0]]); // companion x^2 - 3
        let report = coprime_block_centralizer(&[b1.clone(), b2.clone()]).unwrap();
        assert_eq!(report.offdiag_kernel_dims, vec![(0, 1, 0)]);
        assert_eq!(report.diagonal_dims, vec![2, 2]);
        assert_eq!(report.centralizer_dim, 4);

        // agrees with the direct computation on the assembled matrix
        let mut assembled = MatrixFq::zeros(&field, 4, 4);
        for i in 0..2 {
            for j in 0..2 {
                assembled[(i, j)] = b1[(i, j)].clone();
                assembled[(2 + i, 2 + j)] = b2[(i, j)].clone();
            }
        }
        assert_eq!(centralizer(&assembled).dim(), report.centralizer_dim);

        let same = MatrixFq::from_ints(&field, &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        let err = coprime_block_centralizer(&[same.clone(), same.clone()]).unwrap_err();
        assert!(matches!(err, Error::NotCoprime { i: 0, j: 1, .. }));

        let single = coprime_block_centralizer(&[b1]).unwrap();
        assert_eq!(single.centralizer_dim, 2);
        assert!(single.offdiag_kernel_dims.is_empty());
    }
}
