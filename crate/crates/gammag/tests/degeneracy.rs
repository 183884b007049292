use std::sync::Arc;

use gammag::exact::{Matrix, Rational};
use gammag::groups::{families, modn, CongruenceSubgroup, GroupModN, Mat2};
use gammag::hecke::{
    degeneracy_maps, diamond_operator, enumerate_degeneracy, hecke_tp, new_subspace, old_subspace, DegeneracyData,
    HeckePath, Parallelism,
};
use gammag::modsym::{cuspidal_subspace, plus_subspace, star_involution, ModSymSpace};

fn space(g: GroupModN, k: u32) -> Arc<ModSymSpace> {
    Arc::new(ModSymSpace::new(Arc::new(CongruenceSubgroup::new(g).unwrap()), k).unwrap())
}

fn t2(s: &ModSymSpace) -> Matrix<Rational> {
    hecke_tp(s, 2, None, HeckePath::Auto, Parallelism::default()).unwrap()
}

#[test]
fn full_level_11_to_gamma0() {
    let src = space(families::gamma_full(11).unwrap(), 2);
    let tgt = space(families::gamma0(11).unwrap(), 2);
    let ts = enumerate_degeneracy(src.group(), tgt.group()).unwrap();
    assert_eq!(ts.len(), 12);
    assert!(ts.iter().all(|t| t.det() == 1));
    assert!(ts.contains(&Mat2::I));
    for t in [Mat2::I, ts[5]] {
        let d = DegeneracyData::new(t, src.clone(), tgt.clone()).unwrap();
        assert_eq!(d.index(), 110);
        let comp = d.alpha_matrix().mul(&d.beta_matrix());
        assert!(comp.is_scalar(&Rational::from_integer(110.into())));
    }
    let d = DegeneracyData::new(Mat2::I, src.clone(), tgt.clone()).unwrap();
    let a = d.alpha_matrix();
    assert_eq!(t2(&tgt).mul(&a), a.mul(&t2(&src)));
}

#[test]
fn gamma0_22_is_old() {
    let s = space(families::gamma0(22).unwrap(), 2);
    let c = cuspidal_subspace(&s);
    let plus = plus_subspace(&c, &star_involution(&s).unwrap()).unwrap();
    let maps = degeneracy_maps(&s).unwrap();
    let mut ts: Vec<Mat2> = maps.iter().filter(|d| d.target.group().level() == 11).map(|d| d.t).collect();
    ts.sort_by_key(|t| t.det());
    assert_eq!(ts, vec![Mat2::I, Mat2::diag(1, 2)]);
    assert_eq!(new_subspace(&maps, &plus).dim(), 0);
    let old = old_subspace(&maps, &c);
    assert_eq!(old.dim(), c.dim());
    for d in &maps {
        let ab = d.alpha_matrix().mul(&d.beta_matrix());
        assert!(ab.is_scalar(&Rational::from_integer((d.index() as i64).into())));
    }
}

#[test]
fn prime_level_is_new() {
    let s = space(families::gamma0(11).unwrap(), 2);
    let c = cuspidal_subspace(&s);
    let maps = degeneracy_maps(&s).unwrap();
    assert_eq!(new_subspace(&maps, &c).dim(), 2);
    assert_eq!(old_subspace(&maps, &c).dim(), 0);
}

#[test]
fn diamonds_on_gamma1_13() {
    let s = space(families::gamma1(13).unwrap(), 2);
    let q = modn::reduce_i([2, 0, 0, 7], 13);
    let d = diamond_operator(&s, &q).unwrap();
    let id = Matrix::identity(s.dim(), s.zero());
    let mut pow = id.clone();
    // <2>^6 = <-1> acts trivially in even weight
    for i in 1..=6 {
        pow = pow.mul(&d);
        assert_eq!(pow == id, i == 6, "power {i}");
    }
    assert!(d.commutes_with(&t2(&s)));
    let inside = modn::reduce_i([1, 5, 0, 1], 13);
    assert_eq!(diamond_operator(&s, &inside).unwrap(), id);
    assert!(diamond_operator(&s, &modn::reduce_i([2, 1, 1, 1], 13)).is_err());
}
