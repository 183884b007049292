//! Diamond operators `<q>` for `q` in the normalizer of `Gamma_G`.

use crate::exact::{CyclotomicEmbed, Matrix};
use crate::groups::{modn, GroupModN, ModMat};
use crate::modsym::ModSymSpace;
use crate::nt;
use crate::{Error, Result};

/// Matrix of `[P, g] -> [P, q g]` for `q` in `SL2(Z/NZ)` normalizing `G`.
pub fn diamond_operator<F: CyclotomicEmbed>(s: &ModSymSpace<F>, q: &ModMat) -> Result<Matrix<F>> {
    let gamma = s.group();
    let n = gamma.level();
    let g = gamma.group();
    if modn::det(q, n) != 1 % n {
        return Err(Error::Invalid("diamond operator needs determinant one".into()));
    }
    let qi = modn::inv(q, n);
    if !g.gens().iter().all(|x| g.contains(&modn::mul(&modn::mul(q, x, n), &qi, n))) {
        return Err(Error::Invalid("element does not normalize G".into()));
    }
    let one = s.zero().one_like();
    let cols: Vec<Vec<F>> = s
        .basis_tags()
        .into_iter()
        .map(|(w, c)| {
            let target = gamma.label(&modn::mul(q, gamma.rep_mod(c as usize), n)) as usize;
            let mut v = s.zero_vec();
            s.add_monomial(&mut v, &one, w as usize, target);
            v
        })
        .collect();
    Ok(Matrix::from_cols(cols, s.dim(), s.zero()))
}

/// `sigma_p = p delta_p^{-2}` modulo `N`, with `delta_p` the first element of `G` of determinant `p`.
pub fn sigma_p(g: &GroupModN, p: u64) -> Result<ModMat> {
    let n = g.level();
    if nt::gcd_u64(p, n as u64) != 1 {
        return Err(Error::Invalid(format!("p = {p} divides the level {n}")));
    }
    let delta = g.find_det_element(p as i64).ok_or(Error::NoDetElement(p as i64))?;
    let di = modn::inv(&delta, n);
    Ok(modn::scale(&modn::mul(&di, &di, n), (p % n as u64) as u32, n))
}
