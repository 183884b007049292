//! The star involution and the plus subspace.

use crate::exact::{CyclotomicEmbed, Matrix, Subspace};
use crate::groups::modn;
use crate::{Error, Result};

use super::space::ModSymSpace;

/// Matrix of `iota[P, g] = -[P(-x, y), eta g eta^-1]`, columns are images of basis symbols.
pub fn star_involution<F: CyclotomicEmbed>(s: &ModSymSpace<F>) -> Result<Matrix<F>> {
    let g = s.group();
    if !g.group().is_real_type() {
        return Err(Error::NotRealType);
    }
    if s.character().is_some_and(|c| !c.is_trivial()) {
        return Err(Error::Invalid("star involution is only implemented for trivial character".into()));
    }
    let n = g.level();
    let one = s.zero().one_like();
    let cols: Vec<Vec<F>> = s
        .basis_tags()
        .into_iter()
        .map(|(w, c)| {
            let target = g.label(&modn::eta_conj(g.rep_mod(c as usize), n)) as usize;
            let coef = if w % 2 == 0 { -one.clone() } else { one.clone() };
            let mut v = s.zero_vec();
            s.add_monomial(&mut v, &coef, w as usize, target);
            v
        })
        .collect();
    Ok(Matrix::from_cols(cols, s.dim(), s.zero()))
}

/// The `+1` eigenspace of `iota` inside `cusp`.
pub fn plus_subspace<F: CyclotomicEmbed>(cusp: &Subspace<F>, iota: &Matrix<F>) -> Result<Subspace<F>> {
    let r = cusp.restrict(iota)?;
    let n = r.nrows();
    let id = Matrix::identity(n, r.zero_elem());
    Ok(cusp.kernel_of_restricted(&r.sub(&id)))
}

/// The `-1` eigenspace of `iota` inside `cusp`.
pub fn minus_subspace<F: CyclotomicEmbed>(cusp: &Subspace<F>, iota: &Matrix<F>) -> Result<Subspace<F>> {
    let r = cusp.restrict(iota)?;
    let n = r.nrows();
    let id = Matrix::identity(n, r.zero_elem());
    Ok(cusp.kernel_of_restricted(&r.add(&id)))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::groups::{families, CongruenceSubgroup, GroupModN};
    use crate::modsym::cuspidal_subspace;

    fn space(g: GroupModN) -> ModSymSpace {
        ModSymSpace::new(Arc::new(CongruenceSubgroup::new(g).unwrap()), 2).unwrap()
    }

    #[test]
    fn gamma0_11_plus() {
        let s = space(families::gamma0(11).unwrap());
        let iota = star_involution(&s).unwrap();
        assert!(iota.mul(&iota).is_identity());
        let c = cuspidal_subspace(&s);
        assert_eq!(plus_subspace(&c, &iota).unwrap().dim(), 1);
        assert_eq!(minus_subspace(&c, &iota).unwrap().dim(), 1);
    }
}
