//! Dense exact linear algebra over `F_q`: products, RREF, kernels, and
//! subspaces with canonical (RREF) representatives.
//!
//! Vectors are rows externally; matrices act on column vectors, so the
//! image of `v` under `A` is `A * v^t`.

use std::fmt;

use crate::gf::{Field, FieldElement};
use crate::{Error, Result};

pub type Vector = Vec<FieldElement>;

/// Row-major dense matrix over `F_q`.
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixFq {
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
    field: Field,
}

impl MatrixFq {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> MatrixFq {
        MatrixFq {
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
            field: field.clone(),
        }
    }

    pub fn identity(field: &Field, n: usize) -> MatrixFq {
        let mut m = MatrixFq::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vector>) -> MatrixFq {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in &rows {
            assert_eq!(r.len(), cols, "ragged rows");
            for e in r {
                assert!(e.field() == field, "entry from a different field");
                entries.push(e.clone());
            }
        }
        MatrixFq {
            rows: rows.len(),
            cols,
            entries,
            field: field.clone(),
        }
    }

    /// Convenience constructor from integer entries, reduced mod p.
    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> MatrixFq {
        MatrixFq::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&v| field.from_int(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> MatrixFq {
        let mut out = MatrixFq::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn add(&self, rhs: &MatrixFq) -> MatrixFq {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch"
        );
        let mut out = self.clone();
        for (o, r) in out.entries.iter_mut().zip(&rhs.entries) {
            *o = o.add(r);
        }
        out
    }

    pub fn sub(&self, rhs: &MatrixFq) -> MatrixFq {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch"
        );
        let mut out = self.clone();
        for (o, r) in out.entries.iter_mut().zip(&rhs.entries) {
            *o = o.sub(r);
        }
        out
    }

    pub fn scale(&self, c: &FieldElement) -> MatrixFq {
        let mut out = self.clone();
        for o in out.entries.iter_mut() {
            *o = o.mul(c);
        }
        out
    }

    pub fn mul(&self, rhs: &MatrixFq) -> MatrixFq {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        let mut out = MatrixFq::zeros(&self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = a.mul(&rhs[(k, j)]);
                    out[(i, j)] = out[(i, j)].add(&t);
                }
            }
        }
        out
    }

    /// `A * v^t` as a row vector.
    pub fn mul_vec(&self, v: &[FieldElement]) -> Vector {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc.add(&a.mul(x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, mut k: u64) -> MatrixFq {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut acc = MatrixFq::identity(&self.field, self.rows);
        let mut base = self.clone();
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

    /// Gauss-Jordan reduction with first-nonzero-column pivots.
    /// Returns `(rref, rank, pivot_columns)`.
    pub fn rref(&self) -> (MatrixFq, usize, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            let Some(pr) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m[(r, c)].inv().expect("pivot nonzero");
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)].mul(&inv);
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let factor = m[(i, c)].clone();
                    for j in c..m.cols {
                        let t = factor.mul(&m[(r, j)]);
                        m[(i, j)] = m[(i, j)].sub(&t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == m.rows {
                break;
            }
        }
        (m, r, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Basis of the right null space `{x : Ax = 0}` as a canonical subspace.
    pub fn kernel(&self) -> Subspace {
        let (r, rank, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![self.field.zero(); self.cols];
            v[fc] = self.field.one();
            for (i, &pc) in pivots.iter().enumerate().take(rank) {
                v[pc] = r[(i, fc)].neg();
            }
            basis.push(v);
        }
        Subspace::from_rows(&self.field, self.cols, basis)
    }

    /// Inverse by Gauss-Jordan on `[A | I]`; `None` when singular.
    pub fn inverse(&self) -> Option<MatrixFq> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = MatrixFq::zeros(&self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = self.field.one();
        }
        let (r, rank, _) = aug.rref();
        if rank < n || (0..n).any(|i| !r[(i, i)].is_one()) {
            return None;
        }
        let mut out = MatrixFq::zeros(&self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(out)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Whether `A` and `B` commute.
    pub fn commutes_with(&self, rhs: &MatrixFq) -> bool {
        self.mul(rhs) == rhs.mul(self)
    }

    /// Row-major flattening, used to treat matrices as vectors.
    pub fn flatten(&self) -> Vector {
        self.entries.clone()
    }

    pub fn from_flat(field: &Field, rows: usize, cols: usize, entries: Vector) -> MatrixFq {
        assert_eq!(entries.len(), rows * cols);
        MatrixFq {
            rows,
            cols,
            entries,
            field: field.clone(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for MatrixFq {
    type Output = FieldElement;
    fn index(&self, (i, j): (usize, usize)) -> &FieldElement {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for MatrixFq {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut FieldElement {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "MatrixFq {}x{} over {}",
            self.rows, self.cols, self.field
        )?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A subspace of `F_q^n`, stored as an RREF basis with no zero rows.
/// Equality of subspaces is entry-wise equality of the canonical bases.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: MatrixFq,
}

impl Subspace {
    /// Canonicalizes arbitrary spanning rows.
    pub fn from_rows(field: &Field, ambient: usize, rows: Vec<Vector>) -> Subspace {
        for r in &rows {
            assert_eq!(r.len(), ambient, "row length != ambient dimension");
        }
        let (r, rank, _) = MatrixFq::from_rows(field, rows).rref();
        let kept = (0..rank).map(|i| r.row(i).to_vec()).collect();
        Subspace {
            ambient,
            basis: MatrixFq::from_rows(field, kept),
        }
    }

    pub fn zero(field: &Field, ambient: usize) -> Subspace {
        Subspace::from_rows(field, ambient, vec![])
    }

    pub fn full(field: &Field, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: MatrixFq::identity(field, ambient),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn field(&self) -> &Field {
        self.basis.field()
    }

    /// The canonical RREF basis, one row per basis vector.
    pub fn basis(&self) -> &MatrixFq {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vector> {
        self.basis.row_vectors()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Membership by residual elimination against the RREF basis.
    pub fn contains(&self, v: &[FieldElement]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length != ambient dimension");
        let mut res: Vector = v.to_vec();
        for i in 0..self.basis.rows() {
            let pivot = self
                .basis
                .row(i)
                .iter()
                .position(|e| !e.is_zero())
                .expect("no zero rows in a canonical basis");
            if res[pivot].is_zero() {
                continue;
            }
            let c = res[pivot].clone();
            for (r, b) in res.iter_mut().zip(self.basis.row(i)) {
                let t = c.mul(b);
                *r = r.sub(&t);
            }
        }
        res.iter().all(|e| e.is_zero())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis_rows().iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        let mut rows = self.basis_rows();
        rows.extend(other.basis_rows());
        Subspace::from_rows(self.field(), self.ambient, rows)
    }

    /// Intersection via the kernel of the stacked-coordinates system:
    /// solve `U^t a = V^t b` for coefficient pairs `(a, b)`.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        let field = self.field().clone();
        let (k, l) = (self.dim(), other.dim());
        if k == 0 || l == 0 {
            return Subspace::zero(&field, self.ambient);
        }
        let mut stacked = MatrixFq::zeros(&field, self.ambient, k + l);
        for j in 0..k {
            for i in 0..self.ambient {
                stacked[(i, j)] = self.basis[(j, i)].clone();
            }
        }
        for j in 0..l {
            for i in 0..self.ambient {
                stacked[(i, k + j)] = other.basis[(j, i)].neg();
            }
        }
        let rows = stacked
            .kernel()
            .basis_rows()
            .into_iter()
            .map(|coeffs| {
                let mut v = vec![field.zero(); self.ambient];
                for (j, c) in coeffs[..k].iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (vi, b) in v.iter_mut().zip(self.basis.row(j)) {
                        let t = c.mul(b);
                        *vi = vi.add(&t);
                    }
                }
                v
            })
            .collect();
        Subspace::from_rows(&field, self.ambient, rows)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace dim {} of F^{}: {:?}",
            self.dim(),
            self.ambient,
            self.basis
        )
    }
}

/// Matrix of `A` restricted to an `A`-invariant row space, with respect to
/// the canonical basis of the subspace. Solves `A B^t = B^t A_r` by reading
/// coordinates off the pivot columns; errors when the space is not invariant.
pub fn restrict_to_invariant(a: &MatrixFq, space: &Subspace) -> Result<MatrixFq> {
    assert!(
        a.is_square() && a.cols() == space.ambient_dim(),
        "shape mismatch"
    );
    let k = space.dim();
    let field = a.field().clone();
    let (_, _, pivots) = space.basis().rref();
    let mut out = MatrixFq::zeros(&field, k, k);
    for j in 0..k {
        let image = a.mul_vec(space.basis().row(j));
        if !space.contains(&image) {
            return Err(Error::NotInvariant);
        }
        // RREF basis: coordinates are the entries at the pivot positions
        for (l, &pc) in pivots.iter().enumerate() {
            out[(l, j)] = image[pc].clone();
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    /// The length-4 weighted shift used by the worked example over F_5.
    fn example_matrix(field: &Field) -> MatrixFq {
        MatrixFq::from_ints(
            field,
            &[&[0, 0, 0, 1], &[3, 0, 0, 0], &[0, 4, 0, 0], &[0, 0, 3, 0]],
        )
    }

    fn random_matrix(rng: &mut StdRng, field: &Field, rows: usize, cols: usize) -> MatrixFq {
        let q = field.order();
        MatrixFq::from_rows(
            field,
            (0..rows)
                .map(|_| {
                    (0..cols)
                        .map(|_| field.element(rng.gen_range(0..q)))
                        .collect()
                })
                .collect(),
        )
    }

    #[test]
    fn identity_product_and_eigen_action() {
        let field = f5();
        let a = example_matrix(&field);
        assert_eq!(MatrixFq::identity(&field, 4).mul(&a), a);
        let v: Vec<_> = [1, 2, 2, 4].iter().map(|&x| field.from_int(x)).collect();
        let image = a.mul_vec(&v);
        let expected: Vec<_> = [4, 3, 3, 1].iter().map(|&x| field.from_int(x)).collect();
        assert_eq!(image, expected);
        let scaled: Vec<_> = v.iter().map(|e| e.mul(&field.from_int(4))).collect();
        assert_eq!(image, scaled);
    }

    #[test]
    fn rref_examples() {
        let field = f5();
        let m = MatrixFq::from_ints(&field, &[&[2, 4], &[1, 2]]);
        let (r, rank, pivots) = m.rref();
        assert_eq!(rank, 1);
        assert_eq!(pivots, vec![0]);
        assert_eq!(r.row(0), MatrixFq::from_ints(&field, &[&[1, 2]]).row(0));
        assert_eq!(MatrixFq::zeros(&field, 3, 3).rank(), 0);
        let m = MatrixFq::from_ints(&field, &[&[1, 3, 2, 1], &[0, 4, 1, 1]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn kernels_of_shifted_example() {
        let field = f5();
        let a = example_matrix(&field);
        let id = MatrixFq::identity(&field, 4);
        let k1 = a.add(&id).kernel();
        assert_eq!(k1.dim(), 1);
        assert_eq!(
            k1.basis_rows()[0],
            [1, 2, 2, 4].map(|x| field.from_int(x)).to_vec()
        );
        let k2 = a.add(&id.scale(&field.from_int(2))).kernel();
        assert_eq!(
            k2.basis_rows()[0],
            [1, 1, 3, 3].map(|x| field.from_int(x)).to_vec()
        );
        assert!(id.kernel().is_zero());
    }

    #[test]
    fn subspace_operations_on_example_eigenvectors() {
        let field = f5();
        let v1 = Subspace::from_rows(
            &field,
            4,
            vec![[1, 2, 2, 4].map(|x| field.from_int(x)).to_vec()],
        );
        let v2 = Subspace::from_rows(
            &field,
            4,
            vec![[1, 1, 3, 3].map(|x| field.from_int(x)).to_vec()],
        );
        let c = v1.sum(&v2);
        assert_eq!(c.dim(), 2);
        // canonical form of the example code
        let expected = Subspace::from_rows(
            &field,
            4,
            vec![
                [1, 0, 4, 2].map(|x| field.from_int(x)).to_vec(),
                [0, 1, 4, 1].map(|x| field.from_int(x)).to_vec(),
            ],
        );
        assert_eq!(c, expected);
        assert!(v1.intersect(&v2).is_zero());
        assert_eq!(v1.intersect(&v1), v1);
        assert!(v1.is_subspace_of(&c));
    }

    #[test]
    fn restriction_reads_off_pivot_coordinates() {
        let field = f5();
        let a = example_matrix(&field);
        let c = Subspace::from_rows(
            &field,
            4,
            vec![
                [1, 2, 2, 4].map(|x| field.from_int(x)).to_vec(),
                [1, 1, 3, 3].map(|x| field.from_int(x)).to_vec(),
            ],
        );
        let restricted = restrict_to_invariant(&a, &c).unwrap();
        assert_eq!(restricted.rows(), 2);
        // restriction of a diagonalizable action keeps its eigenvalues
        let id = MatrixFq::identity(&field, 2);
        assert_eq!(restricted.add(&id).rank(), 1);
        assert_eq!(restricted.add(&id.scale(&field.from_int(2))).rank(), 1);
        let line = Subspace::from_rows(
            &field,
            4,
            vec![[1, 0, 0, 0].map(|x| field.from_int(x)).to_vec()],
        );
        assert_eq!(
            restrict_to_invariant(&a, &line).unwrap_err(),
            Error::NotInvariant
        );
    }

    #[test]
    fn rank_nullity_and_grassmann_on_random_input() {
        let mut rng = StdRng::seed_from_u64(7);
        for &p in &[2u64, 3, 5] {
            let field = Field::prime(p).unwrap();
            for _ in 0..40 {
                let rows = rng.gen_range(1..=8);
                let cols = rng.gen_range(1..=8);
                let m = random_matrix(&mut rng, &field, rows, cols);
                assert_eq!(m.rank() + m.kernel().dim(), cols);
                let (r, _, _) = m.rref();
                assert_eq!(r.rref().0, r);

                let urows = rng.gen_range(1..=4);
                let vrows = rng.gen_range(1..=4);
                let u = random_matrix(&mut rng, &field, urows, 6);
                let v = random_matrix(&mut rng, &field, vrows, 6);
                let u = Subspace::from_rows(&field, 6, u.row_vectors());
                let v = Subspace::from_rows(&field, 6, v.row_vectors());
                let inter = u.intersect(&v);
                assert_eq!(u.sum(&v).dim() + inter.dim(), u.dim() + v.dim());
                assert!(inter.is_subspace_of(&u) && inter.is_subspace_of(&v));
            }
        }
    }

    #[test]
    fn inverse_round_trip() {
        let field = f5();
        let a = example_matrix(&field);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), MatrixFq::identity(&field, 4));
        assert!(MatrixFq::zeros(&field, 3, 3).inverse().is_none());
    }
}
