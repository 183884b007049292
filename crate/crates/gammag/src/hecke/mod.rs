//! Hecke operators on modular symbols: the double coset definition, the
//! Heilbronn-family formula for `T_n`, diamond operators and degeneracy maps.

pub mod degeneracy;
pub mod diamond;
pub mod heilbronn;
pub mod merel;
pub mod naive;

pub use degeneracy::{
    degeneracy_maps, enumerate_degeneracy, minimal_overgroups, new_subspace, old_subspace, DegeneracyData,
};
pub use diamond::{diamond_operator, sigma_p};
pub use heilbronn::{condition_cn_check, heilbronn_cremona, heilbronn_merel, heilbronn_merel_set, HeilbronnSet};
pub use merel::{det_lift, hecke_tn_fast, hecke_tn_fast_columns, phi_map};
pub use naive::{double_coset_reps, hecke_double_coset, hecke_double_coset_columns};

use crate::exact::{CyclotomicEmbed, Matrix};
use crate::groups::induced::Gl2q;
use crate::modsym::ModSymSpace;
use crate::nt;
use crate::{Error, Result};

/// How independent Hecke matrix columns are evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parallelism {
    Sequential,
    /// Data-parallel over columns on the current rayon pool.
    #[cfg(feature = "parallel")]
    Rayon,
}

impl Default for Parallelism {
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        return Parallelism::Rayon;
        #[cfg(not(feature = "parallel"))]
        return Parallelism::Sequential;
    }
}

/// Evaluates `f` at `0..n`, in order.
pub(crate) fn map_columns<T: Send>(n: usize, par: Parallelism, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    match par {
        Parallelism::Sequential => (0..n).map(f).collect(),
        #[cfg(feature = "parallel")]
        Parallelism::Rayon => {
            use rayon::prelude::*;
            (0..n).into_par_iter().map(f).collect()
        }
    }
}

/// Which algorithm computes an operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeckePath {
    /// Heilbronn families when `p` is good, double cosets otherwise.
    Auto,
    Naive,
    Merel,
}

/// A double coset `Gamma alpha Gamma` with a coefficient.
pub type AlphaTerm<F> = (Gl2q, F);

/// Whether `p` is coprime to the level and a determinant of `G`.
pub fn is_good_prime(g: &crate::groups::CongruenceSubgroup, p: u64) -> bool {
    nt::gcd_u64(p, g.level() as u64) == 1 && g.group().find_det_element(p as i64).is_some()
}

/// `T_p` on the ambient space. For good `p` (coprime to `N`, in `det G`) no
/// data is needed; otherwise `T_p = sum c_i T_{alpha_i}` for the supplied terms,
/// and an empty list gives the zero operator.
pub fn hecke_tp<F: CyclotomicEmbed>(
    s: &ModSymSpace<F>,
    p: u64,
    alphas: Option<&[AlphaTerm<F>]>,
    path: HeckePath,
    par: Parallelism,
) -> Result<Matrix<F>> {
    let all: Vec<usize> = (0..s.dim()).collect();
    let cols = hecke_tp_columns(s, p, alphas, path, &all, par)?;
    Ok(Matrix::from_cols(cols, s.dim(), s.zero()))
}

/// The columns `which` of [`hecke_tp`].
pub fn hecke_tp_columns<F: CyclotomicEmbed>(
    s: &ModSymSpace<F>,
    p: u64,
    alphas: Option<&[AlphaTerm<F>]>,
    path: HeckePath,
    which: &[usize],
    par: Parallelism,
) -> Result<Vec<Vec<F>>> {
    match (alphas, is_good_prime(s.group(), p), path) {
        (Some(terms), _, _) => {
            let mut acc = vec![s.zero_vec(); which.len()];
            for (alpha, c) in terms {
                let cols = hecke_double_coset_columns(s, alpha, which, par)?;
                for (a, col) in acc.iter_mut().zip(cols) {
                    for (x, y) in a.iter_mut().zip(col) {
                        *x = x.clone() + &(y * c);
                    }
                }
            }
            Ok(acc)
        }
        (None, true, HeckePath::Naive) => {
            let alpha = Gl2q::from_int(det_lift(s.group().group(), p)?)?;
            hecke_double_coset_columns(s, &alpha, which, par)
        }
        (None, true, _) => hecke_tn_fast_columns(s, p, which, par),
        (None, false, _) => Err(Error::MissingBadPrime(p)),
    }
}
