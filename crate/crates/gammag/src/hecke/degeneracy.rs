//! Degeneracy maps between spaces for `Gamma_H` and an overgroup `Gamma_G`,
//! and the new and old subspaces they cut out.

use std::sync::Arc;

use rustc_hash::{FxHashMap, FxHashSet};

use crate::exact::{CyclotomicEmbed, Matrix, Rational, Subspace};
use crate::groups::induced::{right_cosets, LevelMembership};
use crate::groups::{lift_sl2, modn, CongruenceSubgroup, GroupModN, Mat2, ModMat};
use crate::modsym::{cuspidal_subspace, sym_action, Cusp, ModSymSpace};
use crate::nt;
use crate::{Error, Result};

/// Largest ambient group searched for overgroups.
pub const OVERGROUP_CAP: u128 = 1 << 20;

/// A matrix `t` with `t^{-1} Gamma_H t` inside `Gamma_G`, with representatives
/// of `t^{-1} Gamma_H t \ Gamma_G`.
pub struct DegeneracyData<F> {
    pub t: Mat2,
    pub source: Arc<ModSymSpace<F>>,
    pub target: Arc<ModSymSpace<F>>,
    pub reps: Vec<Mat2>,
}

/// `t^{-1} Gamma_H t`, tested inside `Gamma_G`.
struct Conjugated<'a> {
    h: &'a CongruenceSubgroup,
    t: Mat2,
    level: u32,
}

impl LevelMembership for Conjugated<'_> {
    fn level(&self) -> u32 {
        self.level
    }

    fn contains_mod(&self, x: &ModMat) -> bool {
        let g = lift_sl2(x, self.level);
        let d = self.t.det();
        let z = self.t.mul(&g).mul(&self.t.adj());
        z.0.iter().all(|v| v % d == 0) && self.h.contains(&Mat2(z.0.map(|v| v / d)))
    }
}

/// `t^{-1} gamma t` for all generators of `Gamma_H` lie in `Gamma_G`.
fn conjugates_into(h: &CongruenceSubgroup, g: &CongruenceSubgroup, t: &Mat2) -> bool {
    let d = t.det();
    h.generators().iter().all(|x| {
        let z = t.adj().mul(x).mul(t);
        z.0.iter().all(|v| v % d == 0) && g.contains(&Mat2(z.0.map(|v| v / d)))
    })
}

impl<F: CyclotomicEmbed> DegeneracyData<F> {
    pub fn new(t: Mat2, source: Arc<ModSymSpace<F>>, target: Arc<ModSymSpace<F>>) -> Result<Self> {
        let (h, g) = (source.group(), target.group());
        if t.det() <= 0 || !conjugates_into(h, g, &t) {
            return Err(Error::Invalid(format!("t = {t} does not conjugate Gamma_H into Gamma_G")));
        }
        let level = nt::lcm_u64(g.level() as u64, h.level() as u64 * t.det() as u64) as u32;
        let cos = right_cosets(g, &Conjugated { h, t, level })?;
        Ok(DegeneracyData { t, source, target, reps: cos.reps })
    }

    /// `[Gamma_G : t^{-1} Gamma_H t]`.
    pub fn index(&self) -> usize {
        self.reps.len()
    }

    /// Matrix of `alpha_t(x) = t^{-1} x` from the source basis to the target basis.
    pub fn alpha_matrix(&self) -> Matrix<F> {
        let (src, tgt) = (&self.source, &self.target);
        let d = src.weight() as usize - 2;
        let adj = self.t.adj();
        let mut scale = Rational::from_integer(1.into());
        for _ in 0..d {
            scale /= Rational::from_integer(self.t.det().into());
        }
        let coef = tgt.zero().from_rational_like(&scale);
        let cols: Vec<Vec<F>> = (0..src.dim())
            .map(|j| {
                let (p, g) = src.basis_symbol(j);
                let m = adj.mul(&g);
                let mut acc = tgt.zero_vec();
                tgt.add_symbol(&mut acc, &coef, &sym_action(&m, &p), &zero_of(&m), &inf_of(&m));
                acc
            })
            .collect();
        Matrix::from_cols(cols, tgt.dim(), tgt.zero())
    }

    /// Matrix of `beta_t(x) = sum_j t g_j x` from the target basis to the source basis.
    pub fn beta_matrix(&self) -> Matrix<F> {
        let (src, tgt) = (&self.source, &self.target);
        let one = src.zero().one_like();
        let cols: Vec<Vec<F>> = (0..tgt.dim())
            .map(|j| {
                let (p, g) = tgt.basis_symbol(j);
                let mut acc = src.zero_vec();
                for r in &self.reps {
                    let m = self.t.mul(r).mul(&g);
                    src.add_symbol(&mut acc, &one, &sym_action(&m, &p), &zero_of(&m), &inf_of(&m));
                }
                acc
            })
            .collect();
        Matrix::from_cols(cols, src.dim(), src.zero())
    }

    pub fn alpha_dual(&self, x: &[F]) -> Vec<F> {
        self.alpha_matrix().mul_vec(x)
    }

    pub fn beta_dual(&self, x: &[F]) -> Vec<F> {
        self.beta_matrix().mul_vec(x)
    }
}

fn zero_of(m: &Mat2) -> Cusp {
    Cusp::new(m.0[1], m.0[3])
}

fn inf_of(m: &Mat2) -> Cusp {
    Cusp::new(m.0[0], m.0[2])
}

/// `gamma M = beta` with `beta = [[a, b], [0, d]]`, `0 <= b < d`; returns `(gamma^{-1}, beta)`.
fn hermite(m: &Mat2) -> (Mat2, Mat2) {
    let [m00, _, m10, _] = m.0;
    let (g, s, t) = nt::egcd(m00, m10);
    let (g, s, t) = if g < 0 { (-g, -s, -t) } else { (g, s, t) };
    let mut gamma = Mat2([s, t, -m10 / g, m00 / g]);
    let mut beta = gamma.mul(m);
    let (b, d) = (beta.0[1], beta.0[3]);
    let k = b.div_euclid(d);
    gamma = Mat2([1, -k, 0, 1]).mul(&gamma);
    beta = gamma.mul(m);
    debug_assert_eq!(gamma.det(), 1);
    debug_assert!(beta.0[2] == 0 && beta.0[1] >= 0 && beta.0[1] < beta.0[3]);
    (gamma.inv_unimodular(), beta)
}

/// Representatives of `Gamma_H \ T / Gamma_G` for the set `T` of `t` with
/// `det t | N_H / N_G` and `t^{-1} Gamma_H t` inside `Gamma_G`.
pub fn enumerate_degeneracy(h: &CongruenceSubgroup, g: &CongruenceSubgroup) -> Result<Vec<Mat2>> {
    let nh = h.group().minimal_level()?;
    let ng = g.group().minimal_level()?;
    if nh % ng != 0 {
        return Ok(Vec::new());
    }
    let ggens = g.generators();
    let mut out = Vec::new();
    for dd in nt::divisors((nh / ng) as u64) {
        let dd = dd as i128;
        let hermites: Vec<Mat2> = nt::divisors(dd as u64)
            .into_iter()
            .flat_map(|a| {
                let a = a as i128;
                (0..dd / a).map(move |b| Mat2([a, b, 0, dd / a]))
            })
            .filter(|m| m.content() == 1)
            .collect();
        let hidx: FxHashMap<Mat2, usize> = hermites.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let states = h.index() * hermites.len();
        let mut seen = vec![false; states];
        for start in 0..states {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(st) = stack.pop() {
                let (i, b) = (st / hermites.len(), st % hermites.len());
                for x in &ggens {
                    let m = h.rep(i).mul(&hermites[b]).mul(x);
                    let (gm, beta) = hermite(&m);
                    let next = h.coset_index(&gm) as usize * hermites.len() + hidx[&beta];
                    if !seen[next] {
                        seen[next] = true;
                        stack.push(next);
                    }
                }
            }
            let t = h.rep(start / hermites.len()).mul(&hermites[start % hermites.len()]);
            if conjugates_into(h, g, &t) {
                out.push(t);
            }
        }
    }
    Ok(out)
}

/// Minimal overgroups `G` of `H` in `GL2(Z/NZ)` with `G0` strictly larger than `H0`.
pub fn minimal_overgroups(h: &GroupModN) -> Result<Vec<GroupModN>> {
    let n = h.level();
    if nt::gl2_order(n as u64) > OVERGROUP_CAP {
        return Err(Error::ResourceCap(format!("overgroup search over GL2(Z/{n}) is too large")));
    }
    let h0 = h.sl2_part();
    let mut covered: FxHashSet<u64> = h0.iter().map(|x| modn::key(x, n)).collect();
    let mut cands: Vec<GroupModN> = Vec::new();
    for x in modn::enumerate_gl2(n, true) {
        if covered.contains(&modn::key(&x, n)) {
            continue;
        }
        // <H, x> only depends on the double coset H0 x H0
        for a in &h0 {
            let ax = modn::mul(a, &x, n);
            for b in &h0 {
                covered.insert(modn::key(&modn::mul(&ax, b, n), n));
            }
        }
        let mut gens = h.gens().to_vec();
        gens.push(x);
        let c = GroupModN::generate(n, &gens)?;
        if !cands.iter().any(|o| o.same_as(&c)) {
            cands.push(c);
        }
    }
    let minimal: Vec<GroupModN> =
        cands.iter().filter(|c| !cands.iter().any(|o| o.order() < c.order() && o.is_subgroup_of(c))).cloned().collect();
    Ok(minimal)
}

/// Degeneracy data from `source` to every minimal overgroup, each taken at its minimal level.
pub fn degeneracy_maps<F: CyclotomicEmbed>(source: &Arc<ModSymSpace<F>>) -> Result<Vec<DegeneracyData<F>>> {
    let h = source.group();
    let mut out = Vec::new();
    for g in minimal_overgroups(h.group())? {
        let m = g.minimal_level()?;
        let g = Arc::new(CongruenceSubgroup::new(g.reduce(m)?)?);
        let target = Arc::new(ModSymSpace::build(g.clone(), source.weight(), None, source.zero().clone())?);
        for t in enumerate_degeneracy(h, &g)? {
            out.push(DegeneracyData::new(t, source.clone(), target.clone())?);
        }
    }
    Ok(out)
}

/// `V cap (intersection of ker alpha_t)`.
pub fn new_subspace<F: CyclotomicEmbed>(maps: &[DegeneracyData<F>], v: &Subspace<F>) -> Subspace<F> {
    let mut cur = v.clone();
    for d in maps {
        if cur.dim() == 0 {
            break;
        }
        let a = d.alpha_matrix();
        let basis = cur.basis();
        // columns: images of the basis of cur
        let cols: Vec<Vec<F>> = basis.iter().map(|b| a.mul_vec(b)).collect();
        let img = Matrix::from_cols(cols, a.nrows(), v.basis_matrix().zero_elem());
        let vecs: Vec<Vec<F>> = img.kernel().iter().map(|c| cur.from_coordinates(c)).collect();
        cur = Subspace::span(&vecs, v.ambient_dim(), v.basis_matrix().zero_elem());
    }
    cur
}

/// `V cap (sum of the images of the cuspidal targets under beta_t)`.
pub fn old_subspace<F: CyclotomicEmbed>(maps: &[DegeneracyData<F>], v: &Subspace<F>) -> Subspace<F> {
    let zero = v.basis_matrix().zero_elem().clone();
    let mut vecs = Vec::new();
    for d in maps {
        let b = d.beta_matrix();
        for y in cuspidal_subspace(&d.target).basis() {
            vecs.push(b.mul_vec(&y));
        }
    }
    Subspace::span(&vecs, v.ambient_dim(), &zero).intersect(v)
}
