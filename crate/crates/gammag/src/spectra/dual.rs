//! Subspaces of the dual of the ambient space that are isomorphic to a given
//! piece as Hecke modules.

use crate::exact::{Matrix, Rational, Subspace};
use crate::{Error, Result};

use super::HeckeModule;

/// Matrix `A` with `B T = A B`, `B` the echelon basis of `v` as rows, i.e. the
/// action of `T` on functionals restricted to `v`.
pub(crate) fn row_restrict(v: &Subspace<Rational>, t: &Matrix<Rational>) -> Result<Matrix<Rational>> {
    let zero = t.zero_elem();
    if v.dim() == 0 {
        return Ok(Matrix::zeros(0, 0, zero));
    }
    let rows: Option<Vec<Vec<Rational>>> = v.basis().iter().map(|b| v.coordinates(&t.vec_mul(b))).collect();
    Ok(Matrix::from_rows(rows.ok_or(Error::NotInvariant)?, zero))
}

/// Functionals cut out by `c_p(T_p)` for the characteristic polynomials `c_p`
/// of successive good `T_p` on the piece, until the dimensions agree. On real
/// type groups the search starts from the functionals fixed by the star involution.
pub fn dual_vector_space(m: &HeckeModule, piece: &Subspace<Rational>) -> Result<Subspace<Rational>> {
    let n = m.space().dim();
    let zero = m.space().zero();
    let target = piece.dim();
    if target == 0 {
        return Ok(Subspace::zero_space(n, zero));
    }
    let mut v = match m.star() {
        Some(iota) => {
            let fixed = iota.sub(&Matrix::identity(n, zero)).left_kernel();
            Subspace::span(&fixed, n, zero)
        }
        None => Subspace::full(n, zero),
    };
    for p in m.good_primes() {
        if v.dim() <= target {
            break;
        }
        let tp = m.tp(p)?;
        let c = piece.restrict(&tp)?.charpoly();
        let a = row_restrict(&v, &tp)?;
        let ys = a.eval_poly(&c).left_kernel();
        let vecs: Vec<Vec<Rational>> = ys.iter().map(|y| v.from_coordinates(y)).collect();
        v = Subspace::span(&vecs, n, zero);
    }
    if v.dim() != target {
        return Err(Error::NoSplit { dim: v.dim(), bound: m.prime_cap() });
    }
    Ok(v)
}
