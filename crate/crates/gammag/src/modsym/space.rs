//! The space of modular symbols as a quotient of the free space on Manin symbols.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use rustc_hash::FxHashMap;

use super::character::Character;
use super::sym::{manin_path, sym_action, Cusp, SymPoly};
use crate::exact::{CyclotomicEmbed, Rational};
use crate::groups::{modn, CongruenceSubgroup, Mat2};
use crate::{Error, Result};

/// Union-find with field multipliers: `x_i = mult[i] * x_parent[i]`.
/// A root marked dead is forced to zero by an inconsistent cycle.
pub(crate) struct ScaledUnionFind<F> {
    parent: Vec<u32>,
    mult: Vec<F>,
    dead: Vec<bool>,
}

impl<F: CyclotomicEmbed> ScaledUnionFind<F> {
    pub(crate) fn new(n: usize, one: &F) -> Self {
        ScaledUnionFind { parent: (0..n as u32).collect(), mult: vec![one.clone(); n], dead: vec![false; n] }
    }

    /// `(root, m)` with `x_i = m * x_root`.
    pub(crate) fn find(&mut self, i: usize) -> (usize, F) {
        let mut path = Vec::new();
        let mut r = i;
        while self.parent[r] as usize != r {
            path.push(r);
            r = self.parent[r] as usize;
        }
        let mut acc = self.mult[r].one_like();
        for &node in path.iter().rev() {
            acc = self.mult[node].clone() * &acc;
            self.mult[node] = acc.clone();
            self.parent[node] = r as u32;
        }
        let m = if i == r { self.mult[r].one_like() } else { self.mult[i].clone() };
        (r, m)
    }

    /// Imposes `x_a = c * x_b`.
    pub(crate) fn relate(&mut self, a: usize, b: usize, c: &F) {
        let (ra, ma) = self.find(a);
        let (rb, mb) = self.find(b);
        let rhs = c.clone() * &mb;
        if ra == rb {
            if ma != rhs {
                self.dead[ra] = true;
            }
            return;
        }
        // ma x_ra = rhs x_rb; hang the larger root under the smaller one
        let (child, parent, m) = if ra > rb { (ra, rb, rhs / &ma) } else { (rb, ra, ma / &rhs) };
        self.parent[child] = parent as u32;
        self.mult[child] = m;
        if self.dead[child] {
            self.dead[parent] = true;
        }
    }

    /// `None` when `x_i` vanishes, otherwise `(root, m)`.
    pub(crate) fn resolve(&mut self, i: usize) -> Option<(usize, F)> {
        let (r, m) = self.find(i);
        (!self.dead[r]).then_some((r, m))
    }
}

type SparseRow<F> = BTreeMap<u32, F>;

fn add_to<F: CyclotomicEmbed>(row: &mut SparseRow<F>, j: u32, c: F) {
    if c.is_zero_elem() {
        return;
    }
    match row.get_mut(&j) {
        Some(v) => {
            let s = v.clone() + &c;
            if s.is_zero_elem() {
                row.remove(&j);
            } else {
                *v = s;
            }
        }
        None => {
            row.insert(j, c);
        }
    }
}

/// `M_k(Gamma, eps)` presented by Manin symbols `[x^w y^(k-2-w), coset]`.
/// Free index of a symbol: `coset * (k - 1) + w`.
pub struct ModSymSpace<F = Rational> {
    group: Arc<CongruenceSubgroup>,
    weight: u32,
    character: Option<Character<F>>,
    zero: F,
    /// free index -> `(generator, multiplier)`, `None` when the symbol vanishes
    free: Vec<Option<(u32, F)>>,
    /// generator -> sparse coordinates in the basis
    gen_coords: Vec<Vec<(u32, F)>>,
    /// basis element -> free index
    basis: Vec<u32>,
    perm_tau: Vec<u32>,
}

impl<F> std::fmt::Debug for ModSymSpace<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ModSymSpace(k={}, index={}, dim={})", self.weight, self.group.index(), self.basis.len())
    }
}

impl ModSymSpace<Rational> {
    /// Rational modular symbols of weight `k` with trivial character.
    pub fn new(group: Arc<CongruenceSubgroup>, k: u32) -> Result<Self> {
        Self::build(group, k, None, Rational::from_integer(0.into()))
    }
}

impl<F: CyclotomicEmbed> ModSymSpace<F> {
    pub fn build(group: Arc<CongruenceSubgroup>, k: u32, character: Option<Character<F>>, zero: F) -> Result<Self> {
        if k < 2 {
            return Err(Error::Invalid(format!("weight must be at least 2, got {k}")));
        }
        let n = group.level();
        let m = group.index();
        let kk = (k - 1) as usize;
        let d = kk - 1;
        let one = zero.one_like();
        let sign_k = if k % 2 == 0 { one.clone() } else { -one.clone() };
        let fi = |i: usize, w: usize| i * kk + w;
        let tau = Mat2::TAU.reduce(n);
        let perm_tau: Vec<u32> = (0..m).map(|i| group.label(&modn::mul(group.rep_mod(i), &tau, n))).collect();

        let mut uf = ScaledUnionFind::new(m * kk, &one);
        let (ps, pj) = (group.perm_s(), group.perm_j());
        for i in 0..m {
            for w in 0..=d {
                // x + x sigma = 0
                let s = if w % 2 == 0 { -one.clone() } else { one.clone() };
                uf.relate(fi(i, w), fi(ps[i] as usize, d - w), &s);
                // x = x J
                uf.relate(fi(i, w), fi(pj[i] as usize, w), &sign_k);
            }
        }
        if let Some(ch) = &character {
            for (q, e) in ch.generators() {
                let z = ch.power(*e);
                for i in 0..m {
                    let j = group.label(&modn::mul(q, group.rep_mod(i), n)) as usize;
                    for w in 0..=d {
                        uf.relate(fi(j, w), fi(i, w), &z);
                    }
                }
            }
        }

        // generators: live roots in increasing free index
        let mut gen_of_root: FxHashMap<usize, u32> = FxHashMap::default();
        let mut gen_free: Vec<u32> = Vec::new();
        let mut free: Vec<Option<(u32, F)>> = Vec::with_capacity(m * kk);
        for f in 0..m * kk {
            match uf.resolve(f) {
                None => free.push(None),
                Some((r, mult)) => {
                    let g = *gen_of_root.entry(r).or_insert_with(|| {
                        gen_free.push(r as u32);
                        (gen_free.len() - 1) as u32
                    });
                    free.push(Some((g, mult)));
                }
            }
        }
        let ngens = gen_free.len();
        let extreme = |g: u32| {
            let w = gen_free[g as usize] as usize % kk;
            w == 0 || w == d
        };

        // x + x tau + x tau^2 = 0, once per tau-orbit of cosets
        let to_f = |b: &BigInt| zero.from_rational_like(&Rational::from_integer(b.clone()));
        let act_tau_inv: Vec<SymPoly> =
            (0..=d).map(|w| sym_action(&Mat2::TAU.inv_unimodular(), &SymPoly::monomial(d, w))).collect();
        let act_tau: Vec<SymPoly> = (0..=d).map(|w| sym_action(&Mat2::TAU, &SymPoly::monomial(d, w))).collect();
        let mut seen = vec![false; m];
        let mut pivots: Vec<(u32, SparseRow<F>)> = Vec::new();
        let mut pivot_of: FxHashMap<u32, usize> = FxHashMap::default();
        for i in 0..m {
            if seen[i] {
                continue;
            }
            let i1 = perm_tau[i] as usize;
            let i2 = perm_tau[i1] as usize;
            for c in [i, i1, i2] {
                seen[c] = true;
            }
            for w in 0..=d {
                let mut row: SparseRow<F> = BTreeMap::new();
                let push = |coset: usize, ww: usize, c: F, row: &mut SparseRow<F>| {
                    if let Some((g, mult)) = &free[fi(coset, ww)] {
                        add_to(row, *g, c * mult);
                    }
                };
                push(i, w, one.clone(), &mut row);
                for (ww, c) in act_tau_inv[w].coeffs().iter().enumerate() {
                    if c.sign() != num_bigint::Sign::NoSign {
                        push(i1, ww, to_f(c), &mut row);
                    }
                }
                for (ww, c) in act_tau[w].coeffs().iter().enumerate() {
                    if c.sign() != num_bigint::Sign::NoSign {
                        push(i2, ww, to_f(c), &mut row);
                    }
                }
                reduce_row(&mut row, &pivots, &pivot_of);
                if row.is_empty() {
                    continue;
                }
                let p = row.keys().rev().find(|&&g| !extreme(g)).or_else(|| row.keys().next_back()).copied().unwrap();
                let cp = row.remove(&p).unwrap();
                let scale = -cp.inv();
                let expr: SparseRow<F> = row.into_iter().map(|(j, v)| (j, v * &scale)).collect();
                pivot_of.insert(p, pivots.len());
                pivots.push((p, expr));
            }
        }
        // back substitution, latest pivots first
        for idx in (0..pivots.len()).rev() {
            let mut expr = std::mem::take(&mut pivots[idx].1);
            let present: Vec<u32> = expr.keys().copied().filter(|j| pivot_of.contains_key(j)).collect();
            for j in present {
                let c = expr.remove(&j).unwrap();
                let other = &pivots[pivot_of[&j]].1;
                for (t, v) in other {
                    add_to(&mut expr, *t, c.clone() * v);
                }
            }
            pivots[idx].1 = expr;
        }

        let mut basis_pos: Vec<Option<u32>> = vec![None; ngens];
        let mut basis = Vec::new();
        for g in 0..ngens as u32 {
            if !pivot_of.contains_key(&g) {
                basis_pos[g as usize] = Some(basis.len() as u32);
                basis.push(gen_free[g as usize]);
            }
        }
        let gen_coords: Vec<Vec<(u32, F)>> = (0..ngens as u32)
            .map(|g| match basis_pos[g as usize] {
                Some(b) => vec![(b, one.clone())],
                None => {
                    let mut v: Vec<(u32, F)> = pivots[pivot_of[&g]]
                        .1
                        .iter()
                        .map(|(j, c)| (basis_pos[*j as usize].expect("fully reduced"), c.clone()))
                        .collect();
                    v.sort_by_key(|x| x.0);
                    v
                }
            })
            .collect();
        Ok(ModSymSpace { group, weight: k, character, zero, free, gen_coords, basis, perm_tau })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn group(&self) -> &Arc<CongruenceSubgroup> {
        &self.group
    }

    pub fn character(&self) -> Option<&Character<F>> {
        self.character.as_ref()
    }

    pub fn zero(&self) -> &F {
        &self.zero
    }

    pub fn zero_vec(&self) -> Vec<F> {
        vec![self.zero.clone(); self.dim()]
    }

    /// Coset permutation of right multiplication by `TAU`.
    pub fn perm_tau(&self) -> &[u32] {
        &self.perm_tau
    }

    /// `(w, coset)` of each basis symbol `[x^w y^(k-2-w), coset]`.
    pub fn basis_tags(&self) -> Vec<(u32, u32)> {
        let kk = self.weight - 1;
        self.basis.iter().map(|&f| (f % kk, f / kk)).collect()
    }

    fn field_int(&self, b: &BigInt) -> F {
        self.zero.from_rational_like(&Rational::from_integer(b.clone()))
    }

    /// `acc += coef * [x^w y^(k-2-w), coset]`.
    pub fn add_monomial(&self, acc: &mut [F], coef: &F, w: usize, coset: usize) {
        let f = coset * (self.weight as usize - 1) + w;
        if let Some((g, mult)) = &self.free[f] {
            let c = coef.clone() * mult;
            for (b, v) in &self.gen_coords[*g as usize] {
                let t = c.clone() * v;
                acc[*b as usize] = acc[*b as usize].clone() + &t;
            }
        }
    }

    /// `acc += coef * [P, coset]`.
    pub fn add_manin(&self, acc: &mut [F], coef: &F, p: &SymPoly, coset: usize) {
        for (w, c) in p.coeffs().iter().enumerate() {
            if c.sign() != num_bigint::Sign::NoSign {
                let cf = coef.clone() * &self.field_int(c);
                self.add_monomial(acc, &cf, w, coset);
            }
        }
    }

    pub fn manin_to_vec(&self, p: &SymPoly, coset: usize) -> Vec<F> {
        let mut v = self.zero_vec();
        self.add_manin(&mut v, &self.zero.one_like(), p, coset);
        v
    }

    /// `acc += coef * P (x) {0, c}`.
    fn add_from_zero(&self, acc: &mut [F], coef: &F, p: &SymPoly, c: &Cusp) {
        for g in manin_path(c) {
            // P (x) g{0, oo} = [g^-1 P, g]
            let q = sym_action(&g.inv_unimodular(), p);
            let coset = self.group.coset_index(&g) as usize;
            self.add_manin(acc, coef, &q, coset);
        }
    }

    /// `acc += coef * P (x) {a, b}`.
    pub fn add_symbol(&self, acc: &mut [F], coef: &F, p: &SymPoly, a: &Cusp, b: &Cusp) {
        if a == b {
            return;
        }
        self.add_from_zero(acc, coef, p, b);
        self.add_from_zero(acc, &-coef.clone(), p, a);
    }

    /// Coordinates of `P (x) {a, b}` in the basis.
    pub fn modular_symbol_to_basis(&self, p: &SymPoly, a: &Cusp, b: &Cusp) -> Vec<F> {
        let mut v = self.zero_vec();
        self.add_symbol(&mut v, &self.zero.one_like(), p, a, b);
        v
    }

    /// The basis symbol `i` as `(P, coset representative)`.
    pub fn basis_symbol(&self, i: usize) -> (SymPoly, Mat2) {
        let (w, c) = self.basis_tags()[i];
        (SymPoly::monomial(self.weight as usize - 2, w as usize), *self.group.rep(c as usize))
    }
}

/// Reduces `row` by the pivots, substituting the earliest pivot present until none remain.
fn reduce_row<F: CyclotomicEmbed>(
    row: &mut SparseRow<F>,
    pivots: &[(u32, SparseRow<F>)],
    pivot_of: &FxHashMap<u32, usize>,
) {
    loop {
        let next = row.keys().filter_map(|j| pivot_of.get(j).map(|&i| (i, *j))).min();
        let Some((idx, j)) = next else { return };
        let c = row.remove(&j).unwrap();
        for (t, v) in &pivots[idx].1 {
            add_to(row, *t, c.clone() * v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;
    use crate::groups::{families, GroupModN};

    fn space(g: GroupModN, k: u32) -> ModSymSpace {
        ModSymSpace::new(Arc::new(CongruenceSubgroup::new(g).unwrap()), k).unwrap()
    }

    #[test]
    fn small_dimensions() {
        assert_eq!(space(families::gamma0(11).unwrap(), 2).dim(), 3);
        assert_eq!(space(GroupModN::gl2(1).unwrap(), 12).dim(), 3);
        assert_eq!(space(GroupModN::gl2(1).unwrap(), 2).dim(), 0);
        assert!(ModSymSpace::new(Arc::new(CongruenceSubgroup::new(GroupModN::gl2(1).unwrap()).unwrap()), 1).is_err());
    }

    #[test]
    fn path_conventions() {
        let s = space(families::gamma0(11).unwrap(), 2);
        let p = SymPoly::monomial(0, 0);
        let (a, b) = (Cusp::new(2, 7), Cusp::new(-3, 5));
        assert!(s.modular_symbol_to_basis(&p, &a, &a).iter().all(|x| *x == q(0)));
        let zi = s.modular_symbol_to_basis(&p, &Cusp::ZERO, &Cusp::INFINITY);
        assert_eq!(zi, s.manin_to_vec(&p, 0));
        let back = s.modular_symbol_to_basis(&p, &Cusp::INFINITY, &Cusp::ZERO);
        assert!(zi.iter().zip(&back).all(|(x, y)| x.clone() + y == q(0)));
        let ab = s.modular_symbol_to_basis(&p, &a, &b);
        let ba = s.modular_symbol_to_basis(&p, &b, &a);
        assert!(ab.iter().zip(&ba).all(|(x, y)| x.clone() + y == q(0)));
    }
}
