use std::collections::VecDeque;
use std::fmt;

use rustc_hash::{FxHashMap, FxHashSet};

use super::mat::{modn, Mat2, ModMat};
use crate::nt;
use crate::{Error, Result};

/// Largest group we are willing to enumerate.
pub const GROUP_CAP: usize = 1 << 24;

/// A finite subgroup of `GL2(Z/NZ)`, enumerated by closure under its generators.
#[derive(Clone)]
pub struct GroupModN {
    n: u32,
    gens: Vec<ModMat>,
    elems: Vec<ModMat>,
    index: FxHashMap<u64, u32>,
}

impl fmt::Debug for GroupModN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupModN(N={}, order={}, gens={:?})", self.n, self.elems.len(), self.gens)
    }
}

impl GroupModN {
    /// Closure of `gens` in `GL2(Z/nZ)`. Generators must be invertible mod `n`.
    pub fn generate(n: u32, gens: &[ModMat]) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("level must be positive".into()));
        }
        let gens: Vec<ModMat> = gens.iter().map(|g| g.map(|x| x % n)).collect();
        for g in &gens {
            if !modn::is_invertible(g, n) {
                return Err(Error::Invalid(format!("generator {g:?} is not invertible mod {n}")));
            }
        }
        Self::close(n, gens, GROUP_CAP)
    }

    pub fn generate_i64(n: u32, gens: &[[i64; 4]]) -> Result<Self> {
        let g: Vec<ModMat> = gens.iter().map(|m| modn::reduce_i(*m, n)).collect();
        Self::generate(n, &g)
    }

    fn close(n: u32, gens: Vec<ModMat>, cap: usize) -> Result<Self> {
        let id = modn::identity(n);
        let mut elems = vec![id];
        let mut index = FxHashMap::default();
        index.insert(modn::key(&id, n), 0u32);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = modn::mul(&x, g, n);
                let k = modn::key(&y, n);
                if let std::collections::hash_map::Entry::Vacant(e) = index.entry(k) {
                    if elems.len() >= cap {
                        return Err(Error::ResourceCap(format!("group at level {n} exceeds {cap} elements")));
                    }
                    e.insert(elems.len() as u32);
                    elems.push(y);
                    queue.push_back(y);
                }
            }
        }
        Ok(GroupModN { n, gens, elems, index })
    }

    /// The whole of `GL2(Z/nZ)`.
    pub fn gl2(n: u32) -> Result<Self> {
        if nt::gl2_order(n as u64) > GROUP_CAP as u128 {
            return Err(Error::ResourceCap(format!("GL2(Z/{n}) is too large")));
        }
        let mut gens = vec![modn::reduce_i([1, 1, 0, 1], n), modn::reduce_i([0, -1, 1, 0], n)];
        for u in unit_generators(n) {
            gens.push(modn::reduce_i([1, 0, 0, u as i64], n));
        }
        Self::generate(n, &gens)
    }

    pub fn level(&self) -> u32 {
        self.n
    }

    pub fn gens(&self) -> &[ModMat] {
        &self.gens
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn elements(&self) -> &[ModMat] {
        &self.elems
    }

    pub fn contains(&self, x: &ModMat) -> bool {
        self.index.contains_key(&modn::key(x, self.n))
    }

    pub fn contains_mat(&self, g: &Mat2) -> bool {
        self.contains(&g.reduce(self.n))
    }

    /// Elements of determinant one.
    pub fn sl2_part(&self) -> Vec<ModMat> {
        let one = 1 % self.n;
        self.elems.iter().copied().filter(|x| modn::det(x, self.n) == one).collect()
    }

    pub fn det_image(&self) -> Vec<u32> {
        let set: FxHashSet<u32> = self.elems.iter().map(|x| modn::det(x, self.n)).collect();
        let mut v: Vec<u32> = set.into_iter().collect();
        v.sort();
        v
    }

    pub fn contains_minus_one(&self) -> bool {
        self.contains(&modn::scalar(self.n - 1, self.n))
    }

    /// Stable under conjugation by `diag(-1, 1)`.
    pub fn is_real_type(&self) -> bool {
        self.gens.iter().all(|g| self.contains(&modn::eta_conj(g, self.n)))
    }

    /// First element (in enumeration order) with determinant `d mod N`.
    pub fn find_det_element(&self, d: i64) -> Option<ModMat> {
        let target = d.rem_euclid(self.n as i64) as u32;
        self.elems.iter().copied().find(|x| modn::det(x, self.n) == target)
    }

    /// Image under reduction to a divisor `m` of the level.
    pub fn reduce(&self, m: u32) -> Result<Self> {
        assert!(self.n % m == 0, "{m} does not divide the level {}", self.n);
        let gens: Vec<ModMat> = self.gens.iter().map(|g| modn::reduce_to(g, m)).collect();
        Self::generate(m, &gens)
    }

    /// Full preimage at level `m`, a multiple of the level.
    pub fn lift(&self, m: u32) -> Result<Self> {
        assert!(m % self.n == 0, "{m} is not a multiple of the level {}", self.n);
        let mut gens: Vec<ModMat> = self.gens.iter().map(|g| lift_mod(g, self.n, m)).collect();
        gens.extend(kernel_generators(self.n, m));
        Self::generate(m, &gens)
    }

    /// Smallest divisor `M` of `N` such that this group is the full preimage
    /// of its reduction modulo `M`.
    pub fn minimal_level(&self) -> Result<u32> {
        for m in nt::divisors(self.n as u64) {
            let m = m as u32;
            let img = self.reduce(m)?;
            let ker = nt::gl2_order(self.n as u64) / nt::gl2_order(m as u64);
            if img.order() as u128 * ker == self.order() as u128 {
                return Ok(m);
            }
        }
        Ok(self.n)
    }

    /// Normalizer in `GL2(Z/NZ)`.
    pub fn normalizer(&self) -> Result<Self> {
        let n = self.n;
        if nt::gl2_order(n as u64) > GROUP_CAP as u128 {
            return Err(Error::ResourceCap(format!("normalizer search over GL2(Z/{n}) too large")));
        }
        let all = modn::enumerate_gl2(n, false);
        let mut gens: Vec<ModMat> = Vec::new();
        let mut cur = Self::generate(n, &self.gens)?;
        for x in all {
            if cur.contains(&x) {
                continue;
            }
            let xi = modn::inv(&x, n);
            let normal = self.gens.iter().all(|g| self.contains(&modn::mul(&modn::mul(&x, g, n), &xi, n)));
            if normal {
                gens.push(x);
                let mut all_gens = self.gens.clone();
                all_gens.extend(gens.iter().copied());
                cur = Self::generate(n, &all_gens)?;
            }
        }
        Ok(cur)
    }

    /// Small generating set chosen greedily from `elems`.
    pub fn greedy_generators(n: u32, elems: &[ModMat]) -> Result<Vec<ModMat>> {
        let mut gens: Vec<ModMat> = Vec::new();
        let mut cur = Self::generate(n, &[])?;
        for x in elems {
            if !cur.contains(x) {
                gens.push(*x);
                cur = Self::generate(n, &gens)?;
            }
        }
        Ok(gens)
    }

    /// Subgroup with the given elements, which must be closed under products.
    pub fn from_closed_set(n: u32, elems: Vec<ModMat>) -> Result<Self> {
        let gens = Self::greedy_generators(n, &elems)?;
        Self::generate(n, &gens)
    }

    /// `x^{-1} G x` for invertible `x`.
    pub fn conjugate(&self, x: &ModMat) -> Result<Self> {
        let n = self.n;
        let xi = modn::inv(x, n);
        let gens: Vec<ModMat> = self.gens.iter().map(|g| modn::mul(&modn::mul(&xi, g, n), x, n)).collect();
        Self::generate(n, &gens)
    }

    /// Same group, testing set equality.
    pub fn same_as(&self, o: &Self) -> bool {
        self.n == o.n && self.order() == o.order() && o.elems.iter().all(|x| self.contains(x))
    }

    pub fn is_subgroup_of(&self, o: &Self) -> bool {
        self.n == o.n && self.gens.iter().all(|g| o.contains(g))
    }
}

/// Units modulo `n` that generate `(Z/nZ)^*`, chosen greedily.
pub fn unit_generators(n: u32) -> Vec<u32> {
    if n <= 2 {
        return Vec::new();
    }
    let mut gens = Vec::new();
    let mut sub: FxHashSet<u32> = FxHashSet::from_iter([1u32]);
    for u in 2..n {
        if nt::gcd_u64(u as u64, n as u64) != 1 || sub.contains(&u) {
            continue;
        }
        gens.push(u);
        let mut frontier: Vec<u32> = sub.iter().copied().collect();
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = ((x as u64 * g as u64) % n as u64) as u32;
                if sub.insert(y) {
                    frontier.push(y);
                }
            }
        }
    }
    gens
}

/// A matrix at level `m` (a multiple of `n`) congruent to `x` modulo `n`
/// and invertible modulo `m`.
pub fn lift_mod(x: &ModMat, n: u32, m: u32) -> ModMat {
    let k = m / n;
    let base = x.map(|v| v % n);
    for a in 0..k {
        for d in 0..k {
            let cand = [base[0] + a * n, base[1], base[2], base[3] + d * n].map(|v| v % m);
            if modn::is_invertible(&cand, m) {
                return cand;
            }
        }
    }
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                for d in 0..k {
                    let cand = [base[0] + a * n, base[1] + b * n, base[2] + c * n, base[3] + d * n].map(|v| v % m);
                    if modn::is_invertible(&cand, m) {
                        return cand;
                    }
                }
            }
        }
    }
    unreachable!("reduction GL2(Z/m) -> GL2(Z/n) is surjective")
}

/// Generators of the kernel of `GL2(Z/mZ) -> GL2(Z/nZ)`.
pub fn kernel_generators(n: u32, m: u32) -> Vec<ModMat> {
    let mut gens = Vec::new();
    if n == m {
        return gens;
    }
    let nn = n % m;
    gens.push([1, nn, 0, 1].map(|v| v % m));
    gens.push([1, 0, nn, 1].map(|v| v % m));
    for u in (1..m).filter(|u| u % n == 1 % n && nt::gcd_u64(*u as u64, m as u64) == 1) {
        gens.push([u, 0, 0, 1].map(|v| v % m));
        gens.push([1, 0, 0, u].map(|v| v % m));
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl2_orders() {
        assert_eq!(GroupModN::gl2(2).unwrap().order(), 6);
        assert_eq!(GroupModN::gl2(8).unwrap().order(), nt::gl2_order(8) as usize);
        assert_eq!(GroupModN::gl2(6).unwrap().order(), 6 * 48);
    }

    #[test]
    fn lift_then_reduce() {
        let b = GroupModN::generate_i64(4, &[[1, 1, 0, 1], [3, 0, 0, 1], [1, 0, 0, 3]]).unwrap();
        let l = b.lift(8).unwrap();
        assert_eq!(l.order(), b.order() * 16);
        assert!(l.reduce(4).unwrap().same_as(&b));
        assert_eq!(l.minimal_level().unwrap(), 4);
    }
}
