//! `T_n` for `n` coprime to the level via a Heilbronn family.

use crate::exact::{CyclotomicEmbed, Matrix, Rational};
use crate::groups::{lift_sl2, modn, GroupModN, Mat2, ModMat};
use crate::modsym::{sym_action, ModSymSpace, SymPoly};
use crate::nt;
use crate::{Error, Result};

use super::heilbronn::heilbronn_merel_set;
use super::{map_columns, Parallelism};

/// `n^{-1} delta_n` modulo `N`, with `delta_n` the first element of `G` of determinant `n`.
fn twisted_delta(g: &GroupModN, n: u64) -> Result<ModMat> {
    let level = g.level();
    if nt::gcd_u64(n, level as u64) != 1 {
        return Err(Error::Invalid(format!("n = {n} is not coprime to the level {level}")));
    }
    let delta = g.find_det_element(n as i64).ok_or(Error::NoDetElement(n as i64))?;
    let ninv = nt::modinv(n as i128, level as i128).unwrap_or(0) as u32;
    Ok(modn::scale(&delta, ninv, level))
}

/// `phi_n(alpha)`: the lifted coset representative of `G0 n^{-1} delta_n lambda_N(alpha)`.
pub fn phi_map(g: &GroupModN, n: u64, alpha: &Mat2) -> Result<Mat2> {
    if alpha.det() != n as i128 {
        return Err(Error::Invalid(format!("matrix {alpha} does not have determinant {n}")));
    }
    let level = g.level();
    let x = modn::mul(&twisted_delta(g, n)?, &alpha.reduce(level), level);
    Ok(lift_sl2(&x, level))
}

/// An integer matrix of determinant `n` whose reduction lies in `G`.
pub fn det_lift(g: &GroupModN, n: u64) -> Result<Mat2> {
    let level = g.level();
    let delta = g.find_det_element(n as i64).ok_or(Error::NoDetElement(n as i64))?;
    if level == 1 {
        return Ok(Mat2::diag(1, n as i128));
    }
    // delta diag(1, n^{-1}) has determinant 1
    let ninv = nt::modinv(n as i128, level as i128)
        .ok_or_else(|| Error::Invalid(format!("n = {n} is not a unit modulo {level}")))?;
    let h = modn::mul(&delta, &modn::reduce_i([1, 0, 0, ninv as i64], level), level);
    Ok(lift_sl2(&h, level).mul(&Mat2::diag(1, n as i128)))
}

/// `T_n [P, g] = sum_M u_M [adj(M) P, phi_n(g M)]` over a family satisfying `(C_n)`.
pub fn hecke_tn_fast<F: CyclotomicEmbed>(s: &ModSymSpace<F>, n: u64, par: Parallelism) -> Result<Matrix<F>> {
    let all: Vec<usize> = (0..s.dim()).collect();
    let cols = hecke_tn_fast_columns(s, n, &all, par)?;
    Ok(Matrix::from_cols(cols, s.dim(), s.zero()))
}

/// The columns `which` of [`hecke_tn_fast`].
pub fn hecke_tn_fast_columns<F: CyclotomicEmbed>(
    s: &ModSymSpace<F>,
    n: u64,
    which: &[usize],
    par: Parallelism,
) -> Result<Vec<Vec<F>>> {
    let gamma = s.group();
    let level = gamma.level();
    let twist = twisted_delta(gamma.group(), n)?;
    let set = heilbronn_merel_set(n);
    let d = s.weight() as usize - 2;
    let zero = s.zero();
    struct Term<F> {
        u: F,
        m: ModMat,
        images: Vec<SymPoly>,
    }
    let terms: Vec<Term<F>> = set
        .items
        .iter()
        .map(|(u, m)| Term {
            u: zero.from_rational_like(&Rational::from_integer((*u).into())),
            m: m.reduce(level),
            images: if d == 0 {
                Vec::new()
            } else {
                (0..=d).map(|w| sym_action(&m.adj(), &SymPoly::monomial(d, w))).collect()
            },
        })
        .collect();
    let tags = s.basis_tags();
    Ok(map_columns(which.len(), par, |j| {
        let (w, c) = tags[which[j]];
        let x = modn::mul(&twist, gamma.rep_mod(c as usize), level);
        let mut acc = s.zero_vec();
        for t in &terms {
            let coset = gamma.label(&modn::mul(&x, &t.m, level)) as usize;
            if d == 0 {
                s.add_monomial(&mut acc, &t.u, 0, coset);
            } else {
                s.add_manin(&mut acc, &t.u, &t.images[w as usize], coset);
            }
        }
        acc
    }))
}
