//! Conjugation and intersection of induced congruence subgroups, and the
//! right cosets `H \ Gamma` used by double-coset Hecke operators.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rustc_hash::FxHashMap;

use super::cosets::CongruenceSubgroup;
use super::group::{GroupModN, GROUP_CAP};
use super::mat::{lift_sl2, modn, Mat2, ModMat};
use crate::exact::Rational;
use crate::nt;
use crate::{Error, Result};

/// Element of `GL2+(Q)` with its content `d1` and primitive part.
#[derive(Clone, Debug, PartialEq)]
pub struct Gl2q {
    entries: [Rational; 4],
    d1: Rational,
    prim: Mat2,
    dval: i128,
}

impl Gl2q {
    pub fn new(entries: [Rational; 4]) -> Result<Self> {
        let [a, b, c, d] = &entries;
        let det = a * d - b * c;
        if !det.is_positive() {
            return Err(Error::Invalid("element of GL2+(Q) needs positive determinant".into()));
        }
        let mut num = num_bigint::BigInt::zero();
        let mut den = num_bigint::BigInt::one();
        for e in &entries {
            num = num.gcd(e.numer());
            den = den.lcm(e.denom());
        }
        let d1 = Rational::new(num, den);
        let prim = entries.clone().map(|e| {
            let v = e / &d1;
            debug_assert!(v.is_integer());
            v.to_integer().to_i128().expect("matrix entry too large")
        });
        let prim = Mat2(prim);
        let dval = prim.det();
        Ok(Gl2q { entries, d1, prim, dval })
    }

    pub fn from_int(m: Mat2) -> Result<Self> {
        Self::new(m.0.map(|x| Rational::from_integer(x.into())))
    }

    pub fn entries(&self) -> &[Rational; 4] {
        &self.entries
    }

    /// Largest rational `d1` with `alpha / d1` integral.
    pub fn d1(&self) -> &Rational {
        &self.d1
    }

    /// `alpha / d1`, a primitive integer matrix.
    pub fn primitive(&self) -> &Mat2 {
        &self.prim
    }

    /// `det(alpha) / d1^2`.
    pub fn dval(&self) -> i128 {
        self.dval
    }
}

/// Integer Smith form by unimodular row and column operations:
/// returns `x, y` in `GL2(Z)` and `s1 | s2` with `x m y = diag(s1, s2)`, `s1 >= 0`.
fn smith_int(m: &Mat2) -> (Mat2, Mat2, i128, i128) {
    let mut a = *m;
    let mut x = Mat2::I;
    let mut y = Mat2::I;
    let swap = Mat2([0, 1, 1, 0]);
    if a.0.iter().all(|&v| v == 0) {
        return (x, y, 0, 0);
    }
    loop {
        // bring the smallest nonzero entry to position (0, 0)
        let (pos, _) = a.0.iter().enumerate().filter(|(_, v)| **v != 0).min_by_key(|(_, v)| v.abs()).unwrap();
        if pos / 2 == 1 {
            a = swap.mul(&a);
            x = swap.mul(&x);
        }
        if pos % 2 == 1 {
            a = a.mul(&swap);
            y = y.mul(&swap);
        }
        let p = a.0[0];
        let qr = a.0[2].div_euclid(p);
        let row = Mat2([1, 0, -qr, 1]);
        a = row.mul(&a);
        x = row.mul(&x);
        let qc = a.0[1].div_euclid(p);
        let col = Mat2([1, -qc, 0, 1]);
        a = a.mul(&col);
        y = y.mul(&col);
        if a.0[1] != 0 || a.0[2] != 0 {
            continue;
        }
        if a.0[3] % p != 0 {
            let add = Mat2([1, 1, 0, 1]);
            a = add.mul(&a);
            x = add.mul(&x);
            continue;
        }
        break;
    }
    if a.0[0] < 0 {
        let f = Mat2::diag(-1, 1);
        a = f.mul(&a);
        x = f.mul(&x);
    }
    (x, y, a.0[0], a.0[3])
}

/// `x, y` in `SL2(Z)` with `x alpha y = diag(d1, n d1)`, `n = D(alpha)`.
pub fn smith_gl2q(alpha: &Gl2q) -> (Mat2, Mat2, Rational, i128) {
    let (mut x, mut y, s1, mut s2) = smith_int(alpha.primitive());
    debug_assert_eq!(s1, 1);
    let flip = Mat2::diag(1, -1);
    if x.det() == -1 {
        x = flip.mul(&x);
        s2 = -s2;
    }
    if y.det() == -1 {
        y = y.mul(&flip);
        s2 = -s2;
    }
    debug_assert_eq!(s2, alpha.dval());
    (x, y, alpha.d1().clone(), s2)
}

/// Membership in a subgroup of `SL2(Z)` containing `Gamma(level)`.
pub trait LevelMembership: Sync {
    fn level(&self) -> u32;
    /// Tests an element of `SL2(Z / level)`.
    fn contains_mod(&self, x: &ModMat) -> bool;
}

impl LevelMembership for GroupModN {
    fn level(&self) -> u32 {
        GroupModN::level(self)
    }

    fn contains_mod(&self, x: &ModMat) -> bool {
        self.contains(x)
    }
}

impl LevelMembership for CongruenceSubgroup {
    fn level(&self) -> u32 {
        CongruenceSubgroup::level(self)
    }

    fn contains_mod(&self, x: &ModMat) -> bool {
        self.group().contains(x)
    }
}

/// `A matrix = 1 mod m1` and `= x mod m2` for coprime or compatible moduli.
fn crt_mat(x1: &ModMat, m1: u32, x2: &ModMat, m2: u32) -> ModMat {
    let mut out = [0u32; 4];
    for i in 0..4 {
        out[i] = nt::crt(x1[i] as i128, m1 as i128, x2[i] as i128, m2 as i128).expect("incompatible residues") as u32;
    }
    out
}

/// The group `H` of the conjugation algorithm for `gcd(D(alpha), N) = 1`:
/// `Gamma_H = alpha^{-1} Gamma_G alpha cap SL2(Z)`, stored as the product of
/// its components modulo `N` and modulo `n = D(alpha)`.
#[derive(Clone, Debug)]
pub struct ConjInduced {
    big: GroupModN,
    n: u32,
    y: Mat2,
    y_inv_mod: ModMat,
    y_mod: ModMat,
}

/// Conjugation of an induced group by `alpha` with `gcd(D(alpha), N) = 1`.
pub fn conj_induced(g: &GroupModN, alpha: &Gl2q) -> Result<ConjInduced> {
    let level = g.level();
    let n = alpha.dval();
    if nt::gcd(n, level as i128) != 1 {
        return Err(Error::Invalid(format!("D(alpha) = {n} is not coprime to the level {level}")));
    }
    let n = u32::try_from(n).map_err(|_| Error::ResourceCap("D(alpha) too large".into()))?;
    let (_, y, _, _) = smith_gl2q(alpha);
    let a = alpha.primitive().reduce(level);
    let big = g.conjugate(&a)?;
    let y_mod = y.reduce(n.max(1));
    let y_inv_mod = y.inv_unimodular().reduce(n.max(1));
    Ok(ConjInduced { big, n, y, y_inv_mod, y_mod })
}

impl ConjInduced {
    /// Component modulo `N`.
    pub fn component_big(&self) -> &GroupModN {
        &self.big
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn y(&self) -> &Mat2 {
        &self.y
    }

    fn small_contains(&self, x: &ModMat) -> bool {
        if self.n == 1 {
            return true;
        }
        let z = modn::mul(&modn::mul(&self.y_inv_mod, &modn::reduce_to(x, self.n), self.n), &self.y_mod, self.n);
        z[1] == 0
    }

    /// Generators of the component modulo `n`: `y Gamma^0(n) y^{-1}`.
    fn small_gens(&self) -> Vec<ModMat> {
        let n = self.n;
        let mut gens = vec![modn::reduce_i([1, 0, 1, 1], n)];
        for u in super::group::unit_generators(n) {
            gens.push(modn::reduce_i([u as i64, 0, 0, 1], n));
            gens.push(modn::reduce_i([1, 0, 0, u as i64], n));
        }
        gens.iter().map(|g| modn::mul(&modn::mul(&self.y_mod, g, n), &self.y_inv_mod, n)).collect()
    }

    /// The group at level `n N`, generated by CRT lifts of both components.
    pub fn to_group(&self) -> Result<GroupModN> {
        let big_n = self.big.level();
        let n = self.n;
        let level = big_n * n;
        if self.n == 1 {
            return Ok(self.big.clone());
        }
        let id_small = modn::identity(n);
        let id_big = modn::identity(big_n);
        let mut gens: Vec<ModMat> = self.big.gens().iter().map(|g| crt_mat(g, big_n, &id_small, n)).collect();
        gens.extend(self.small_gens().iter().map(|g| crt_mat(&id_big, big_n, g, n)));
        GroupModN::generate(level, &gens)
    }
}

impl LevelMembership for ConjInduced {
    fn level(&self) -> u32 {
        self.big.level() * self.n
    }

    fn contains_mod(&self, x: &ModMat) -> bool {
        self.big.contains(&modn::reduce_to(x, self.big.level())) && self.small_contains(x)
    }
}

/// Intersection of two membership tests at the lcm of their levels.
pub struct Intersection<'a> {
    pub a: &'a dyn LevelMembership,
    pub b: &'a dyn LevelMembership,
}

impl LevelMembership for Intersection<'_> {
    fn level(&self) -> u32 {
        nt::lcm_u64(self.a.level() as u64, self.b.level() as u64) as u32
    }

    fn contains_mod(&self, x: &ModMat) -> bool {
        self.a.contains_mod(&modn::reduce_to(x, self.a.level()))
            && self.b.contains_mod(&modn::reduce_to(x, self.b.level()))
    }
}

/// `K` at level `lcm(N_G, N_H)` with `Gamma_K = Gamma_G cap Gamma_H`, by
/// gluing generators of the kernels and of the common image modulo `gcd`.
pub fn intersect_induced(g: &GroupModN, h: &GroupModN) -> Result<GroupModN> {
    let (ng, nh) = (g.level(), h.level());
    let d = nt::gcd_u64(ng as u64, nh as u64) as u32;
    let n = nt::lcm_u64(ng as u64, nh as u64) as u32;
    if nt::gl2_order(n as u64) > (GROUP_CAP as u128) * 64 && g.order().max(h.order()) > GROUP_CAP / 64 {
        return Err(Error::ResourceCap(format!("intersection at level {n} too large")));
    }
    let id_d = modn::identity(d);
    let kernel = |grp: &GroupModN| -> Result<Vec<ModMat>> {
        let elems: Vec<ModMat> = grp.elements().iter().copied().filter(|x| modn::reduce_to(x, d) == id_d).collect();
        GroupModN::greedy_generators(grp.level(), &elems)
    };
    let mut gens = Vec::new();
    for x in kernel(g)? {
        gens.push(crt_mat(&x, ng, &modn::identity(nh), nh));
    }
    for x in kernel(h)? {
        gens.push(crt_mat(&modn::identity(ng), ng, &x, nh));
    }
    // common image modulo d with sections into G and H
    let mut sec_g: FxHashMap<u64, ModMat> = FxHashMap::default();
    for x in g.elements() {
        sec_g.entry(modn::key(&modn::reduce_to(x, d), d)).or_insert(*x);
    }
    let mut sec_h: FxHashMap<u64, ModMat> = FxHashMap::default();
    for x in h.elements() {
        sec_h.entry(modn::key(&modn::reduce_to(x, d), d)).or_insert(*x);
    }
    let mut common: Vec<ModMat> =
        sec_g.keys().filter(|k| sec_h.contains_key(k)).map(|&k| modn::from_key(k, d)).collect();
    common.sort();
    for z in GroupModN::greedy_generators(d, &common)? {
        let k = modn::key(&z, d);
        gens.push(crt_mat(&sec_g[&k], ng, &sec_h[&k], nh));
    }
    GroupModN::generate(n, &gens)
}

/// `Gamma cap alpha^{-1} Gamma alpha` for integral `alpha` of any determinant,
/// via the Smith form `x alpha' y = diag(1, D)`: an element `h` of `Gamma`
/// lies in it iff `y^{-1} h y` is in `Gamma^0(D)` and the resulting
/// `x^{-1} diag(1, D) y^{-1} h y diag(1, D)^{-1} x` reduces into `G`.
pub struct ConjInter<'a> {
    gamma: &'a CongruenceSubgroup,
    x: Mat2,
    y: Mat2,
    dval: i128,
}

pub fn conj_inter<'a>(gamma: &'a CongruenceSubgroup, alpha: &Gl2q) -> Result<ConjInter<'a>> {
    let (x, y, _, n) = smith_gl2q(alpha);
    let level = gamma.level() as i128 * n;
    if level > u32::MAX as i128 / 2 {
        return Err(Error::ResourceCap(format!("level N D(alpha) = {level} too large")));
    }
    Ok(ConjInter { gamma, x, y, dval: n })
}

impl ConjInter<'_> {
    /// Tests membership of an element of `Gamma`.
    pub fn contains(&self, h: &Mat2) -> bool {
        if !self.gamma.contains(h) {
            return false;
        }
        let z = self.y.inv_unimodular().mul(h).mul(&self.y);
        let d = self.dval;
        if z.0[1] % d != 0 {
            return false;
        }
        let w = Mat2([z.0[0], z.0[1] / d, z.0[2] * d, z.0[3]]);
        let c = self.x.inv_unimodular().mul(&w).mul(&self.x);
        self.gamma.group().contains_mat(&c)
    }

    /// The group at level `N D` whose induced group is the intersection.
    pub fn to_group(&self) -> Result<GroupModN> {
        let cos = right_cosets(self.gamma, self)?;
        let level = LevelMembership::level(self);
        let mut gens = cos.schreier_generators(self.gamma, level);
        gens.push(modn::identity(level));
        GroupModN::generate(level, &gens)
    }
}

impl LevelMembership for ConjInter<'_> {
    fn level(&self) -> u32 {
        (self.gamma.level() as i128 * self.dval) as u32
    }

    fn contains_mod(&self, x: &ModMat) -> bool {
        self.contains(&lift_sl2(x, LevelMembership::level(self)))
    }
}

/// Right cosets `H \ Gamma` for a subgroup `H` of `Gamma` containing
/// `Gamma(L)`, with the right action of the generators of `Gamma`.
#[derive(Clone, Debug)]
pub struct RightCosets {
    pub level: u32,
    /// Representatives modulo `L`; the first is the identity.
    pub reps_mod: Vec<ModMat>,
    /// Lifts to `SL2(Z)` with entries at most `L^2`.
    pub reps: Vec<Mat2>,
    /// `action[g][i] = j` when `H r_i g = H r_j`.
    pub action: Vec<Vec<u32>>,
}

/// Breadth-first enumeration of `H \ Gamma` with `H` given by a membership test
/// at its level (elements of `Gamma` only are ever tested).
pub fn right_cosets(gamma: &CongruenceSubgroup, h: &dyn LevelMembership) -> Result<RightCosets> {
    let level = h.level();
    let gens: Vec<ModMat> = gamma.generators().iter().map(|g| g.reduce(level)).collect();
    let mut reps_mod = vec![modn::identity(level)];
    let mut inv_mod = vec![modn::identity(level)];
    let mut action: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
    let mut i = 0;
    while i < reps_mod.len() {
        for (gi, g) in gens.iter().enumerate() {
            let xg = modn::mul(&reps_mod[i], g, level);
            let found = inv_mod.iter().position(|ri| h.contains_mod(&modn::mul(&xg, ri, level)));
            let j = match found {
                Some(j) => j,
                None => {
                    if reps_mod.len() >= 1 << 20 {
                        return Err(Error::ResourceCap("too many cosets in H \\ Gamma".into()));
                    }
                    reps_mod.push(xg);
                    inv_mod.push(modn::inv(&xg, level));
                    reps_mod.len() - 1
                }
            };
            action[gi].push(j as u32);
        }
        i += 1;
    }
    let reps = reps_mod.iter().map(|x| lift_sl2(x, level)).collect();
    Ok(RightCosets { level, reps_mod, reps, action })
}

impl RightCosets {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Schreier generators of `H` reduced modulo `level`.
    pub fn schreier_generators(&self, gamma: &CongruenceSubgroup, level: u32) -> Vec<ModMat> {
        let gens: Vec<ModMat> = gamma.generators().iter().map(|g| g.reduce(level)).collect();
        let mut out = Vec::new();
        for i in 0..self.len() {
            for (gi, g) in gens.iter().enumerate() {
                let j = self.action[gi][i] as usize;
                let rinv = modn::inv(&self.reps_mod[j], self.level);
                let s = modn::mul(&modn::mul(&self.reps_mod[i], g, level), &modn::reduce_to(&rinv, level), level);
                out.push(s);
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

/// `Gamma cap alpha^{-1} Gamma alpha` tested directly: `h` in `Gamma` and
/// `alpha h alpha^{-1}` integral and in `Gamma`.
pub fn direct_conj_member(gamma: &CongruenceSubgroup, alpha: &Gl2q, h: &Mat2) -> bool {
    if !gamma.contains(h) {
        return false;
    }
    let a = alpha.primitive();
    let m = a.mul(h).mul(&a.adj());
    let d = alpha.dval();
    if m.0.iter().any(|v| v % d != 0) {
        return false;
    }
    gamma.contains(&Mat2(m.0.map(|v| v / d)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;
    use crate::groups::families;

    #[test]
    fn smith_examples() {
        for m in [[1, 0, 0, 7], [2, 1, 0, 3], [4, 6, 2, 9], [0, -1, 5, 3]] {
            let a = Gl2q::from_int(Mat2(m)).unwrap();
            let (x, y, d1, n) = smith_gl2q(&a);
            assert_eq!(x.det(), 1);
            assert_eq!(y.det(), 1);
            assert_eq!(d1, q(1));
            assert_eq!(x.mul(&Mat2(m)).mul(&y), Mat2::diag(1, n));
            assert_eq!(n, Mat2(m).det());
        }
        let s = Gl2q::from_int(Mat2::diag(2, 2)).unwrap();
        let (_, _, d1, n) = smith_gl2q(&s);
        assert_eq!((d1, n), (q(2), 1));
    }

    #[test]
    fn conj_induced_matches_direct_test() {
        let g = families::gamma0(11).unwrap();
        let gamma = CongruenceSubgroup::new(g.clone()).unwrap();
        let alpha = Gl2q::from_int(Mat2::diag(1, 2)).unwrap();
        let c = conj_induced(&g, &alpha).unwrap();
        let inter = Intersection { a: &gamma, b: &c };
        let ci = conj_inter(&gamma, &alpha).unwrap();
        for x in modn::enumerate_gl2(22, true) {
            let h = lift_sl2(&x, 22);
            let direct = direct_conj_member(&gamma, &alpha, &h);
            assert_eq!(inter.contains_mod(&x), direct);
            assert_eq!(ci.contains(&h), direct);
        }
        assert_eq!(right_cosets(&gamma, &inter).unwrap().len(), 3);
    }

    #[test]
    fn conj_of_full_group_is_gamma_upper_zero() {
        let g = GroupModN::gl2(1).unwrap();
        let alpha = Gl2q::from_int(Mat2::diag(1, 5)).unwrap();
        let h = conj_induced(&g, &alpha).unwrap().to_group().unwrap();
        assert_eq!(CongruenceSubgroup::new(h).unwrap().index(), 6);
    }

    #[test]
    fn intersection_of_gamma0() {
        let k = intersect_induced(&families::gamma0(2).unwrap(), &families::gamma0(3).unwrap()).unwrap();
        assert_eq!(k.level(), 6);
        assert_eq!(CongruenceSubgroup::new(k).unwrap().index(), 12);
        let k = intersect_induced(&families::gamma_full(2).unwrap(), &families::gamma0(9).unwrap()).unwrap();
        assert_eq!(CongruenceSubgroup::new(k).unwrap().index(), 6 * 12);
    }
}
