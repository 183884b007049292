//! Double coset Hecke operators `T_alpha`.

use num_traits::{One, Signed};

use crate::exact::{CyclotomicEmbed, Matrix, Rational};
use crate::groups::induced::{conj_induced, conj_inter, right_cosets, Gl2q, Intersection, LevelMembership};
use crate::groups::{CongruenceSubgroup, Mat2};
use crate::modsym::{sym_action, Cusp, ModSymSpace, SymPoly};
use crate::nt;
use crate::Result;

use super::{map_columns, Parallelism};

/// Primitive parts `alpha' g_j` of representatives of `Gamma \ Gamma alpha Gamma`,
/// where `Gamma = union (Gamma cap alpha^{-1} Gamma alpha) g_j`.
pub(crate) fn primitive_reps(gamma: &CongruenceSubgroup, alpha: &Gl2q) -> Result<Vec<Mat2>> {
    let a = alpha.primitive();
    if alpha.dval() == 1 {
        return Ok(vec![*a]);
    }
    let cosets = if nt::gcd(alpha.dval(), gamma.level() as i128) == 1 {
        let conj = conj_induced(gamma.group(), alpha)?;
        right_cosets(gamma, &Intersection { a: &conj, b: gamma as &dyn LevelMembership })?
    } else {
        right_cosets(gamma, &conj_inter(gamma, alpha)?)?
    };
    Ok(cosets.reps.iter().map(|g| a.mul(g)).collect())
}

/// `Gamma alpha Gamma = disjoint union of Gamma r` over the returned `r`.
pub fn double_coset_reps(gamma: &CongruenceSubgroup, alpha: &Gl2q) -> Result<Vec<Gl2q>> {
    let d1 = alpha.d1().clone();
    primitive_reps(gamma, alpha)?
        .into_iter()
        .map(|m| Gl2q::new(m.0.map(|x| Rational::from_integer(x.into()) * &d1)))
        .collect()
}

/// `T_alpha [P, g] = sum_r r g (P (x) {0, oo})`, converted back to Manin symbols.
pub fn hecke_double_coset<F: CyclotomicEmbed>(s: &ModSymSpace<F>, alpha: &Gl2q, par: Parallelism) -> Result<Matrix<F>> {
    let all: Vec<usize> = (0..s.dim()).collect();
    let cols = hecke_double_coset_columns(s, alpha, &all, par)?;
    Ok(Matrix::from_cols(cols, s.dim(), s.zero()))
}

/// The columns `which` of [`hecke_double_coset`].
pub fn hecke_double_coset_columns<F: CyclotomicEmbed>(
    s: &ModSymSpace<F>,
    alpha: &Gl2q,
    which: &[usize],
    par: Parallelism,
) -> Result<Vec<Vec<F>>> {
    let gamma = s.group();
    let reps = primitive_reps(gamma, alpha)?;
    let d = s.weight() as usize - 2;
    let zero = s.zero();
    // scalars act on Sym^d through d1^d
    let mut scalar = Rational::one();
    for _ in 0..d {
        scalar *= alpha.d1();
    }
    debug_assert!(scalar.is_positive());
    let coef = zero.from_rational_like(&scalar);
    let tags = s.basis_tags();
    Ok(map_columns(which.len(), par, |j| {
        let (w, c) = tags[which[j]];
        let g = gamma.rep(c as usize);
        let p = SymPoly::monomial(d, w as usize);
        let mut acc = s.zero_vec();
        for r in &reps {
            let m = r.mul(g);
            let q = sym_action(&m, &p);
            let (a, b) = (Cusp::new(m.0[1], m.0[3]), Cusp::new(m.0[0], m.0[2]));
            s.add_symbol(&mut acc, &coef, &q, &a, &b);
        }
        acc
    }))
}
