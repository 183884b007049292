use std::collections::VecDeque;
use std::sync::Arc;

use rustc_hash::{FxHashMap, FxHashSet};

use super::group::GroupModN;
use super::mat::{lift_sl2, modn, Mat2, ModMat};
use crate::nt;
use crate::{Error, Result};

/// Above this many elements of `SL2(Z/NZ)` the coset labels are not tabulated
/// and lookups fall back to a canonical representative of `G0 x`.
pub const LABEL_TABLE_CAP: u128 = 1 << 23;
/// Largest `G0` for the fallback canonical key.
pub const MIN_KEY_CAP: usize = 4096;

enum Labels {
    Table(FxHashMap<u64, u32>),
    MinKey(FxHashMap<u64, u32>),
}

/// `Gamma_G`, the preimage in `SL2(Z)` of `G0 = G cap SL2(Z/NZ)`, with its
/// right cosets `Gamma_G \ SL2(Z)` and the action of `S`, `T` and `-1` on them.
pub struct CongruenceSubgroup {
    group: Arc<GroupModN>,
    n: u32,
    g0: Vec<ModMat>,
    labels: Labels,
    reps_mod: Vec<ModMat>,
    reps: Vec<Mat2>,
    perm_s: Vec<u32>,
    perm_t: Vec<u32>,
    perm_j: Vec<u32>,
}

impl std::fmt::Debug for CongruenceSubgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CongruenceSubgroup(N={}, index={})", self.n, self.index())
    }
}

impl CongruenceSubgroup {
    pub fn new(group: GroupModN) -> Result<Self> {
        Self::from_arc(Arc::new(group))
    }

    pub fn from_arc(group: Arc<GroupModN>) -> Result<Self> {
        let n = group.level();
        let g0 = group.sl2_part();
        let sl2 = nt::sl2_order(n as u64);
        let labels = if sl2 <= LABEL_TABLE_CAP {
            Labels::Table(FxHashMap::default())
        } else if g0.len() <= MIN_KEY_CAP {
            Labels::MinKey(FxHashMap::default())
        } else {
            return Err(Error::ResourceCap(format!(
                "coset labelling at level {n} with |G0| = {} is too large",
                g0.len()
            )));
        };
        let mut cs = CongruenceSubgroup {
            group,
            n,
            g0,
            labels,
            reps_mod: Vec::new(),
            reps: Vec::new(),
            perm_s: Vec::new(),
            perm_t: Vec::new(),
            perm_j: Vec::new(),
        };
        cs.enumerate();
        Ok(cs)
    }

    fn canonical_key(&self, x: &ModMat) -> u64 {
        let n = self.n;
        self.g0.iter().map(|g| modn::key(&modn::mul(g, x, n), n)).min().unwrap()
    }

    /// Registers the coset of `x` if it is new; returns its label.
    fn insert_coset(&mut self, x: ModMat) -> (u32, bool) {
        let n = self.n;
        let next = self.reps_mod.len() as u32;
        match &mut self.labels {
            Labels::Table(map) => {
                if let Some(&i) = map.get(&modn::key(&x, n)) {
                    return (i, false);
                }
                for g in &self.g0 {
                    map.insert(modn::key(&modn::mul(g, &x, n), n), next);
                }
            }
            Labels::MinKey(_) => {
                let k = self.canonical_key(&x);
                let Labels::MinKey(map) = &mut self.labels else { unreachable!() };
                if let Some(&i) = map.get(&k) {
                    return (i, false);
                }
                map.insert(k, next);
            }
        }
        self.reps_mod.push(x);
        (next, true)
    }

    fn enumerate(&mut self) {
        let n = self.n;
        let s = Mat2::S.reduce(n);
        let t = Mat2::T.reduce(n);
        let id = modn::identity(n);
        self.insert_coset(id);
        let mut queue = VecDeque::from([0u32]);
        let mut edges: Vec<(u32, u32, u32)> = Vec::new();
        while let Some(i) = queue.pop_front() {
            let x = self.reps_mod[i as usize];
            for (gi, g) in [s, t].iter().enumerate() {
                let y = modn::mul(&x, g, n);
                let (j, fresh) = self.insert_coset(y);
                edges.push((i, gi as u32, j));
                if fresh {
                    queue.push_back(j);
                }
            }
        }
        let m = self.reps_mod.len();
        self.perm_s = vec![0; m];
        self.perm_t = vec![0; m];
        for (i, gi, j) in edges {
            if gi == 0 {
                self.perm_s[i as usize] = j;
            } else {
                self.perm_t[i as usize] = j;
            }
        }
        let minus = modn::scalar(n - 1, n);
        self.perm_j = (0..m).map(|i| self.label(&modn::mul(&self.reps_mod[i], &minus, n))).collect();
        self.reps = self.reps_mod.iter().map(|x| lift_sl2(x, n)).collect();
    }

    pub fn group(&self) -> &GroupModN {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<GroupModN> {
        &self.group
    }

    pub fn level(&self) -> u32 {
        self.n
    }

    /// `[SL2(Z) : Gamma_G]`.
    pub fn index(&self) -> usize {
        self.reps_mod.len()
    }

    pub fn g0(&self) -> &[ModMat] {
        &self.g0
    }

    /// Coset label of an element of `SL2(Z/NZ)`.
    pub fn label(&self, x: &ModMat) -> u32 {
        match &self.labels {
            Labels::Table(map) => *map.get(&modn::key(x, self.n)).expect("element outside SL2(Z/NZ)"),
            Labels::MinKey(map) => *map.get(&self.canonical_key(x)).expect("element outside SL2(Z/NZ)"),
        }
    }

    /// Coset label of `Gamma_G g` for `g` in `SL2(Z)`.
    pub fn coset_index(&self, g: &Mat2) -> u32 {
        self.label(&g.reduce(self.n))
    }

    /// Lift of the stored representative of coset `i`, with entries at most `N^2`.
    pub fn rep(&self, i: usize) -> &Mat2 {
        &self.reps[i]
    }

    pub fn reps(&self) -> &[Mat2] {
        &self.reps
    }

    pub fn rep_mod(&self, i: usize) -> &ModMat {
        &self.reps_mod[i]
    }

    pub fn perm_s(&self) -> &[u32] {
        &self.perm_s
    }

    pub fn perm_t(&self) -> &[u32] {
        &self.perm_t
    }

    /// Coset of `-g` for `g` in coset `i`.
    pub fn perm_j(&self) -> &[u32] {
        &self.perm_j
    }

    pub fn contains(&self, g: &Mat2) -> bool {
        g.det() == 1 && self.group.contains(&g.reduce(self.n))
    }

    pub fn contains_minus_one(&self) -> bool {
        self.group.contains_minus_one()
    }

    /// Generators of `Gamma_G` by Schreier's lemma on the transversal of
    /// lifted coset representatives.
    pub fn generators(&self) -> Vec<Mat2> {
        let mut out = Vec::new();
        let mut seen = FxHashSet::default();
        for i in 0..self.index() {
            for (g, perm) in [(Mat2::S, &self.perm_s), (Mat2::T, &self.perm_t)] {
                let j = perm[i] as usize;
                let h = self.reps[i].mul(&g).mul(&self.reps[j].inv_unimodular());
                if h == Mat2::I {
                    continue;
                }
                if seen.insert(h) {
                    out.push(h);
                }
            }
        }
        if self.contains_minus_one() && !out.contains(&Mat2::J) {
            out.push(Mat2::J);
        }
        out
    }

    /// Number of orbits of `<T, -1>` on the cosets, i.e. the number of cusps.
    pub fn cusp_count(&self) -> usize {
        let m = self.index();
        let mut seen = vec![false; m];
        let mut count = 0;
        for i in 0..m {
            if seen[i] {
                continue;
            }
            count += 1;
            let mut stack = vec![i];
            seen[i] = true;
            while let Some(x) = stack.pop() {
                for y in [self.perm_t[x] as usize, self.perm_j[x] as usize] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        count
    }

    /// Genus of the modular curve, from the action of `S`, `TAU` and `T`
    /// on cosets taken modulo `-1`.
    pub fn genus(&self) -> usize {
        let m = self.index();
        let class = |i: usize| i.min(self.perm_j[i] as usize);
        let mut classes: Vec<usize> = (0..m).map(class).collect();
        classes.sort();
        classes.dedup();
        let tau: Vec<u32> = (0..m).map(|i| self.coset_index(&self.reps[i].mul(&Mat2::TAU))).collect();
        let fixed = |perm: &[u32]| classes.iter().filter(|&&c| class(perm[c] as usize) == c).count() as i64;
        let e2 = fixed(&self.perm_s);
        let e3 = fixed(&tau);
        let mu = classes.len() as i64;
        let c = self.cusp_count() as i64;
        ((12 + mu - 3 * e2 - 4 * e3 - 6 * c) / 12) as usize
    }
}
