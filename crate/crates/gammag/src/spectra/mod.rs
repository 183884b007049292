//! Hecke module structure of the cuspidal space: Sturm bound, decomposition into
//! irreducible pieces, dual spaces and systems of eigenvalues.

mod decompose;
mod dual;
mod eigen;

pub use decompose::{decompose, is_irreducible, HeckePiece};
pub use dual::dual_vector_space;
pub use eigen::{eigen_system, local_euler_factor, EigenSystem};

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use num_integer::Integer;

use crate::exact::factor::factor;
use crate::exact::{Matrix, Poly, Rational, Subspace};
use crate::groups::CongruenceSubgroup;
use crate::hecke::{hecke_tp, hecke_tp_columns, is_good_prime, AlphaTerm, HeckePath, Parallelism};
use crate::modsym::{cuspidal_subspace, plus_subspace, star_involution, ModSymSpace};
use crate::nt;
use crate::{Error, Result};

/// Primes searched by the decomposition and dual loops go up to `max(Sturm bound, MIN_PRIME_CAP)`.
pub const MIN_PRIME_CAP: u64 = 97;

/// `floor(k m / 12 - (m - 1) / N)` with `m` the index of `Gamma` in `SL2(Z)`.
pub fn sturm_bound(k: u32, g: &CongruenceSubgroup) -> i64 {
    let m = g.index() as i128;
    let n = g.level() as i128;
    // (k m N - 12 (m - 1)) / (12 N)
    let num = k as i128 * m * n - 12 * (m - 1);
    Integer::div_floor(&num, &(12 * n)) as i64
}

/// How `T_p` is obtained for a prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Availability {
    /// `p` is coprime to `N` and a determinant of `G`.
    Good,
    /// `p` is coprime to `N` but not a determinant of `G`, so `T_p = 0`.
    Zero,
    /// `p` divides `N` and double cosets were supplied.
    Supplied,
    /// `p` divides `N` and nothing was supplied.
    Missing,
}

/// A weight `k` space together with its working subspace (the cuspidal plus
/// part for real type groups, the full cuspidal part otherwise), and a cache
/// of ambient Hecke matrices.
pub struct HeckeModule {
    space: Arc<ModSymSpace>,
    working: Subspace<Rational>,
    iota: Option<Matrix<Rational>>,
    bad: BTreeMap<u64, Vec<AlphaTerm<Rational>>>,
    path: HeckePath,
    par: Parallelism,
    cache: Mutex<BTreeMap<u64, Arc<Matrix<Rational>>>>,
    restricted: Mutex<BTreeMap<u64, Arc<Matrix<Rational>>>>,
    factored: Mutex<BTreeMap<u64, Arc<Factored>>>,
}

/// Distinct monic irreducible factors with multiplicities.
pub(crate) type Factored = Vec<(Poly<Rational>, u32)>;

impl HeckeModule {
    pub fn new(space: Arc<ModSymSpace>) -> Result<Self> {
        let cusp = cuspidal_subspace(&space);
        let (working, iota) = match star_involution(&space) {
            Ok(i) => (plus_subspace(&cusp, &i)?, Some(i)),
            Err(Error::NotRealType) => (cusp, None),
            Err(e) => return Err(e),
        };
        Ok(HeckeModule {
            space,
            working,
            iota,
            bad: BTreeMap::new(),
            path: HeckePath::Auto,
            par: Parallelism::default(),
            cache: Mutex::new(BTreeMap::new()),
            restricted: Mutex::new(BTreeMap::new()),
            factored: Mutex::new(BTreeMap::new()),
        })
    }

    /// Supplies `T_p = sum c_i T_{alpha_i}` for a prime dividing the level.
    pub fn with_bad_prime(mut self, p: u64, terms: Vec<AlphaTerm<Rational>>) -> Self {
        self.bad.insert(p, terms);
        self
    }

    pub fn with_path(mut self, path: HeckePath) -> Self {
        self.path = path;
        self
    }

    pub fn with_parallelism(mut self, par: Parallelism) -> Self {
        self.par = par;
        self
    }

    pub fn space(&self) -> &Arc<ModSymSpace> {
        &self.space
    }

    pub fn group(&self) -> &Arc<CongruenceSubgroup> {
        self.space.group()
    }

    pub fn working(&self) -> &Subspace<Rational> {
        &self.working
    }

    pub fn star(&self) -> Option<&Matrix<Rational>> {
        self.iota.as_ref()
    }

    pub fn is_real_type(&self) -> bool {
        self.iota.is_some()
    }

    /// Copies of each irreducible module inside the working space: 1 on the
    /// plus part, 2 on the full cuspidal space.
    pub fn multiplicity(&self) -> usize {
        if self.is_real_type() {
            1
        } else {
            2
        }
    }

    pub fn sturm_bound(&self) -> i64 {
        sturm_bound(self.space.weight(), self.group())
    }

    pub fn prime_cap(&self) -> u64 {
        (self.sturm_bound().max(0) as u64).max(MIN_PRIME_CAP)
    }

    pub fn availability(&self, p: u64) -> Availability {
        let n = self.group().level() as u64;
        if nt::gcd_u64(p, n) != 1 {
            if self.bad.contains_key(&p) {
                Availability::Supplied
            } else {
                Availability::Missing
            }
        } else if is_good_prime(self.group(), p) {
            Availability::Good
        } else {
            Availability::Zero
        }
    }

    /// Good primes up to the prime cap, in increasing order.
    pub fn good_primes(&self) -> Vec<u64> {
        nt::primes_up_to(self.prime_cap()).into_iter().filter(|&p| self.availability(p) == Availability::Good).collect()
    }

    fn alphas(&self, p: u64) -> Option<&[AlphaTerm<Rational>]> {
        self.bad.get(&p).map(|v| v.as_slice())
    }

    /// `T_p` on the ambient space.
    pub fn tp(&self, p: u64) -> Result<Arc<Matrix<Rational>>> {
        if let Some(m) = self.cache.lock().unwrap().get(&p) {
            return Ok(m.clone());
        }
        let d = self.space.dim();
        let m = match self.availability(p) {
            Availability::Zero => Matrix::zeros(d, d, self.space.zero()),
            Availability::Missing => return Err(Error::MissingBadPrime(p)),
            _ => hecke_tp(&self.space, p, self.alphas(p), self.path, self.par)?,
        };
        let m = Arc::new(m);
        self.cache.lock().unwrap().insert(p, m.clone());
        Ok(m)
    }

    /// `T_p` on the working subspace, in its echelon coordinates.
    pub fn tp_working(&self, p: u64) -> Result<Arc<Matrix<Rational>>> {
        if let Some(m) = self.restricted.lock().unwrap().get(&p) {
            return Ok(m.clone());
        }
        let m = Arc::new(self.working.restrict(&*self.tp(p)?)?);
        self.restricted.lock().unwrap().insert(p, m.clone());
        Ok(m)
    }

    /// Factored characteristic polynomial of `T_p` on the working subspace.
    pub(crate) fn tp_factored(&self, p: u64) -> Result<Arc<Factored>> {
        if let Some(f) = self.factored.lock().unwrap().get(&p) {
            return Ok(f.clone());
        }
        let f = Arc::new(factor(&self.tp_working(p)?.charpoly()));
        self.factored.lock().unwrap().insert(p, f.clone());
        Ok(f)
    }

    /// Columns `which` of `T_n` on the ambient space, for `n` a prime, or a
    /// prime power coprime to the level.
    pub fn tn_columns(&self, n: u64, which: &[usize]) -> Result<Vec<Vec<Rational>>> {
        if let Some(m) = self.cache.lock().unwrap().get(&n) {
            return Ok(which.iter().map(|&j| m.col(j)).collect());
        }
        let level = self.group().level() as u64;
        if nt::gcd_u64(n, level) == 1 && !is_good_prime(self.group(), n) {
            return Ok(vec![self.space.zero_vec(); which.len()]);
        }
        // a single double coset only gives T_n for prime n
        let path = if nt::is_prime(n) { self.path } else { HeckePath::Merel };
        hecke_tp_columns(&self.space, n, self.alphas(n), path, which, self.par)
    }
}
