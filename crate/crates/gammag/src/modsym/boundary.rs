//! Cusp classes, the boundary map and the cuspidal subspace.

use std::sync::Arc;

use super::character::Character;
use super::space::{ModSymSpace, ScaledUnionFind};
use super::sym::Cusp;
use crate::exact::{CyclotomicEmbed, Matrix, Subspace};
use crate::groups::{lift_sl2, modn, CongruenceSubgroup, Mat2};

/// `<T>`-orbit table: for each coset `i`, `(o_i, e_i)` with `o_i` the orbit id and
/// `Gamma r_i = Gamma r_{o} T^{e_i}` for the first coset `r_o` of the orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitTable {
    pub entries: Vec<(u32, u32)>,
    /// Orbit sizes, i.e. cusp widths, by orbit id.
    pub widths: Vec<u32>,
}

impl OrbitTable {
    pub fn orbit_count(&self) -> usize {
        self.widths.len()
    }
}

pub fn orbit_table(g: &CongruenceSubgroup) -> OrbitTable {
    let m = g.index();
    let pt = g.perm_t();
    let mut entries = vec![(u32::MAX, 0u32); m];
    let mut widths = Vec::new();
    for i in 0..m {
        if entries[i].0 != u32::MAX {
            continue;
        }
        let o = widths.len() as u32;
        let (mut j, mut e) = (i, 0u32);
        while entries[j].0 == u32::MAX {
            entries[j] = (o, e);
            e += 1;
            j = pt[j] as usize;
        }
        widths.push(e);
    }
    OrbitTable { entries, widths }
}

/// Whether `a` and `b` are `Gamma`-equivalent, with a witness `gamma in Gamma` taking `a` to `b`.
pub fn cusp_equiv(g: &CongruenceSubgroup, table: &OrbitTable, a: &Cusp, b: &Cusp) -> Option<Mat2> {
    let ha = a.to_sl2();
    let ca = g.coset_index(&ha) as usize;
    let (oa, ea) = table.entries[ca];
    for hb in [b.to_sl2(), b.to_sl2().neg()] {
        let (ob, eb) = table.entries[g.coset_index(&hb) as usize];
        if oa != ob {
            continue;
        }
        // Gamma ha = Gamma hb T^(ea - eb)
        let gamma = hb.mul(&Mat2::t_pow(ea as i128 - eb as i128)).mul(&ha.inv_unimodular());
        debug_assert!(g.contains(&gamma));
        return Some(gamma);
    }
    None
}

/// Equivalence after also identifying `u/v` with `-u/v`.
pub fn cusp_equiv_mod_eta(g: &CongruenceSubgroup, table: &OrbitTable, a: &Cusp, b: &Cusp) -> bool {
    cusp_equiv(g, table, a, b).is_some() || cusp_equiv(g, table, a, &Cusp::new(-b.u, b.v)).is_some()
}

/// Whether the boundary class of the cusp `a` vanishes in weight `k`: some
/// `q` in `Q` and sign `s` with `q a = s a` up to `Gamma` and `eps(q) != s^k`.
/// The section `Q -> Gamma'` lifts one element of each coset of `G0` with `lift_sl2`.
pub fn cusp_vanishing<F: CyclotomicEmbed>(
    g: &CongruenceSubgroup,
    eps: &Character<F>,
    table: &OrbitTable,
    a: &Cusp,
    k: u32,
) -> bool {
    let n = g.level();
    let ha = a.to_sl2();
    let orbit = |h: &Mat2| table.entries[g.coset_index(h) as usize].0;
    let mut seen = rustc_hash::FxHashSet::default();
    for x in eps.over().sl2_part() {
        let key = g.g0().iter().map(|h| modn::key(&modn::mul(h, &x, n), n)).min().unwrap();
        if !seen.insert(key) {
            continue;
        }
        let e = eps.exponent(&x).unwrap_or(0);
        let qa = lift_sl2(&x, n).mul(&ha);
        for (s, h) in [(1i64, ha), (-1, ha.neg())] {
            if orbit(&qa) != orbit(&h) {
                continue;
            }
            // eps(q) = s^k holds only for exponent 0 with s^k = 1, or exponent order/2 with s^k = -1
            let sk_is_one = s == 1 || k % 2 == 0;
            let eps_is_sk = if sk_is_one { e == 0 } else { 2 * e == eps.order() };
            if !eps_is_sk {
                return true;
            }
        }
    }
    false
}

/// Matrix of `mu o boundary` and the list of surviving boundary classes.
#[derive(Clone, Debug)]
pub struct BoundaryInfo<F> {
    /// A representative cusp for each column.
    pub cusps: Vec<Cusp>,
    /// Rows indexed by the space basis, columns by `cusps`.
    pub matrix: Matrix<F>,
}

/// Boundary classes `[Gamma g (1,0)]` of weight `k`, one per coset, as
/// `(class, multiplier)`, or `None` when the class is zero.
fn vector_classes<F: CyclotomicEmbed>(s: &ModSymSpace<F>) -> (Vec<Option<(usize, F)>>, usize, Vec<usize>) {
    let g = s.group();
    let m = g.index();
    let n = g.level();
    let one = s.zero().one_like();
    let sign_k = if s.weight() % 2 == 0 { one.clone() } else { -one.clone() };
    let mut uf = ScaledUnionFind::new(m, &one);
    for i in 0..m {
        uf.relate(g.perm_t()[i] as usize, i, &one);
        uf.relate(g.perm_j()[i] as usize, i, &sign_k);
    }
    if let Some(ch) = s.character() {
        for (q, e) in ch.generators() {
            let z = ch.power(*e);
            for i in 0..m {
                let j = g.label(&modn::mul(q, g.rep_mod(i), n)) as usize;
                uf.relate(j, i, &z);
            }
        }
    }
    let mut col_of_root = rustc_hash::FxHashMap::default();
    let mut root_coset = Vec::new();
    let mut out = Vec::with_capacity(m);
    for i in 0..m {
        out.push(uf.resolve(i).map(|(r, c)| {
            let col = *col_of_root.entry(r).or_insert_with(|| {
                root_coset.push(r);
                root_coset.len() - 1
            });
            (col, c)
        }));
    }
    (out, root_coset.len(), root_coset)
}

pub fn boundary_map<F: CyclotomicEmbed>(s: &ModSymSpace<F>) -> BoundaryInfo<F> {
    let g: &Arc<CongruenceSubgroup> = s.group();
    let (classes, ncols, root_coset) = vector_classes(s);
    let d = s.weight() as usize - 2;
    let zero = s.zero().clone();
    let sign = if s.weight() % 2 == 0 { -zero.one_like() } else { zero.one_like() };
    let mut matrix = Matrix::zeros(s.dim(), ncols, &zero);
    for (row, (w, c)) in s.basis_tags().into_iter().enumerate() {
        let (w, c) = (w as usize, c as usize);
        let mut add = |coset: usize, coef: F| {
            if let Some((col, mult)) = &classes[coset] {
                let v = matrix.get(row, *col).clone() + &(coef * mult);
                matrix.set(row, *col, v);
            }
        };
        // P(0,1) [g(1,0)] - P(-1,0) [g(0,1)]
        if w == 0 {
            add(c, zero.one_like());
        }
        if w == d {
            add(g.perm_s()[c] as usize, sign.clone());
        }
    }
    let cusps = root_coset.iter().map(|&i| Cusp::INFINITY.act(g.rep(i))).collect();
    BoundaryInfo { cusps, matrix }
}

/// `ker(mu o boundary)`.
pub fn cuspidal_subspace<F: CyclotomicEmbed>(s: &ModSymSpace<F>) -> Subspace<F> {
    let b = boundary_map(s);
    if b.matrix.ncols() == 0 {
        return Subspace::full(s.dim(), s.zero());
    }
    Subspace::span(&b.matrix.left_kernel(), s.dim(), s.zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, Rational};
    use crate::groups::{families, GroupModN};

    fn cs(g: GroupModN) -> Arc<CongruenceSubgroup> {
        Arc::new(CongruenceSubgroup::new(g).unwrap())
    }

    #[test]
    fn orbit_tables() {
        assert_eq!(orbit_table(&cs(GroupModN::gl2(1).unwrap())).orbit_count(), 1);
        let t = orbit_table(&cs(families::gamma_full(2).unwrap()));
        assert_eq!(t.widths, vec![2, 2, 2]);
        assert_eq!(orbit_table(&cs(families::gamma0(11).unwrap())).orbit_count(), 2);
    }

    #[test]
    fn cusp_equivalence() {
        let g = cs(families::gamma0(11).unwrap());
        let t = orbit_table(&g);
        assert!(cusp_equiv(&g, &t, &Cusp::ZERO, &Cusp::INFINITY).is_none());
        for (a, b) in [((1, 3), (0, 1)), ((2, 11), (1, 0)), ((5, 22), (1, 0))] {
            let (a, b) = (Cusp::new(a.0, a.1), Cusp::new(b.0, b.1));
            let gamma = cusp_equiv(&g, &t, &a, &b).unwrap();
            assert!(g.contains(&gamma));
            assert_eq!(a.act(&gamma), b);
        }
    }

    #[test]
    fn cuspidal_dims() {
        let s = ModSymSpace::new(cs(families::gamma0(11).unwrap()), 2).unwrap();
        assert_eq!(cuspidal_subspace(&s).dim(), 2);
        let s = ModSymSpace::new(cs(GroupModN::gl2(1).unwrap()), 2).unwrap();
        assert_eq!(cuspidal_subspace(&s).dim(), 0);
        let s = ModSymSpace::new(cs(GroupModN::gl2(1).unwrap()), 12).unwrap();
        assert_eq!(cuspidal_subspace(&s).dim(), 2);
    }

    #[test]
    fn odd_character_kills_cusp_one_half() {
        let g1 = cs(families::gamma1(4).unwrap());
        let g0 = Arc::new(families::gamma0(4).unwrap());
        let eps = Character::<Rational>::new(&g1, g0, &[(modn::scalar(3, 4), 1)], 2, &q(1)).unwrap();
        let t = orbit_table(&g1);
        assert!(cusp_vanishing(&g1, &eps, &t, &Cusp::new(1, 2), 3));
        assert!(!cusp_vanishing(&g1, &eps, &t, &Cusp::INFINITY, 3));
        assert!(!cusp_vanishing(&g1, &eps, &t, &Cusp::ZERO, 3));
    }
}
