//! Subspaces of `F^n` given by an echelon basis.

use super::{Field, Matrix};
use crate::{Error, Result};

/// A subspace of `F^n`, stored as the rows of a reduced echelon matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<F> {
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    /// Span of `vectors` inside `F^ambient`.
    pub fn span(vectors: &[Vec<F>], ambient: usize, zero: &F) -> Self {
        if vectors.is_empty() {
            return Subspace { basis: Matrix::zeros(0, ambient, zero), pivots: Vec::new() };
        }
        let m = Matrix::from_rows(vectors.to_vec(), zero);
        let (r, pivots) = m.rref();
        let basis = r.submatrix(0, pivots.len(), 0, ambient);
        Subspace { basis, pivots }
    }

    /// Subspace with the given reduced echelon basis; not checked.
    pub(crate) fn from_echelon(basis: Matrix<F>, pivots: Vec<usize>) -> Self {
        debug_assert_eq!(basis.nrows(), pivots.len());
        Subspace { basis, pivots }
    }

    pub fn full(ambient: usize, zero: &F) -> Self {
        Subspace { basis: Matrix::identity(ambient, zero), pivots: (0..ambient).collect() }
    }

    pub fn zero_space(ambient: usize, zero: &F) -> Self {
        Self::span(&[], ambient, zero)
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.ncols()
    }

    /// Echelon basis vectors as the rows of a matrix.
    pub fn basis_matrix(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn basis(&self) -> Vec<Vec<F>> {
        self.basis.to_rows()
    }

    fn zero(&self) -> &F {
        self.basis.zero_elem()
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        let c: Vec<F> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let back = self.basis.vec_mul(&c);
        (back.as_slice() == v).then_some(c)
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_space(&self, o: &Self) -> bool {
        o.basis().iter().all(|v| self.contains(v))
    }

    /// Vector with the given coordinates.
    pub fn from_coordinates(&self, c: &[F]) -> Vec<F> {
        self.basis.vec_mul(c)
    }

    pub fn sum(&self, o: &Self) -> Self {
        let mut v = self.basis();
        v.extend(o.basis());
        Self::span(&v, self.ambient_dim(), self.zero())
    }

    pub fn intersect(&self, o: &Self) -> Self {
        // x B1 = y B2  <=>  (x, -y) [B1; B2] = 0
        let (d1, d2) = (self.dim(), o.dim());
        if d1 == 0 || d2 == 0 {
            return Self::zero_space(self.ambient_dim(), self.zero());
        }
        let mut rows = self.basis();
        rows.extend(o.basis());
        let stacked = Matrix::from_rows(rows, self.zero());
        let vecs: Vec<Vec<F>> = stacked.left_kernel().into_iter().map(|k| self.from_coordinates(&k[..d1])).collect();
        Self::span(&vecs, self.ambient_dim(), self.zero())
    }

    /// Matrix of `op` (acting on column vectors) on this subspace, in echelon
    /// basis coordinates; columns are images of basis vectors.
    pub fn restrict(&self, op: &Matrix<F>) -> Result<Matrix<F>> {
        if let Some(r) = F::restrict_hook(self, op) {
            return r.ok_or(Error::NotInvariant);
        }
        let mut cols = Vec::with_capacity(self.dim());
        for b in self.basis.to_rows() {
            let img = op.mul_vec(&b);
            let c = self.coordinates(&img).ok_or(Error::NotInvariant)?;
            cols.push(c);
        }
        Ok(Matrix::from_cols(cols, self.dim(), self.zero()))
    }

    /// The subspace `{v in self : op v = 0}`, for `op` acting on this subspace's coordinates.
    pub fn kernel_of_restricted(&self, op_restricted: &Matrix<F>) -> Self {
        let vecs: Vec<Vec<F>> = op_restricted.kernel().iter().map(|c| self.from_coordinates(c)).collect();
        Self::span(&vecs, self.ambient_dim(), self.zero())
    }

    /// Image of a subspace of this subspace's coordinate space.
    pub fn embed(&self, inner: &Self) -> Self {
        let vecs: Vec<Vec<F>> = inner.basis().iter().map(|c| self.from_coordinates(c)).collect();
        Self::span(&vecs, self.ambient_dim(), self.zero())
    }
}

/// Matrix of `m` acting on `span(basis)` in the given basis coordinates;
/// errors if the span is not `m`-invariant.
pub fn restrict_to_invariant_subspace<F: Field>(m: &Matrix<F>, basis: &[Vec<F>]) -> Result<Matrix<F>> {
    let zero = m.zero_elem().clone();
    let k = basis.len();
    if k == 0 {
        return Ok(Matrix::zeros(0, 0, &zero));
    }
    // solve B^T c = m b for each basis vector b
    let bt = Matrix::from_cols(basis.to_vec(), m.nrows(), &zero);
    let images: Vec<Vec<F>> = basis.iter().map(|b| m.mul_vec(b)).collect();
    let rhs = Matrix::from_cols(images, m.nrows(), &zero);
    bt.solve(&rhs).filter(|x| x.nrows() == k).ok_or(Error::NotInvariant)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn diag_restriction() {
        let m = Matrix::from_int_rows(&[vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 3]]);
        let r = restrict_to_invariant_subspace(&m, &[vec![q(0), q(1), q(0)]]).unwrap();
        assert_eq!(r, Matrix::from_int_rows(&[vec![2]]));
        assert!(restrict_to_invariant_subspace(&m, &[vec![q(1), q(1), q(0)]]).is_err());
    }

    #[test]
    fn intersections() {
        let z = q(0);
        let a = Subspace::span(&[vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)]], 3, &z);
        let b = Subspace::span(&[vec![q(0), q(1), q(1)], vec![q(1), q(0), q(0)]], 3, &z);
        let c = a.intersect(&b);
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&[q(3), q(0), q(0)]));
        assert_eq!(a.sum(&b).dim(), 3);
    }
}
