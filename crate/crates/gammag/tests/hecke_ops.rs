use std::sync::Arc;

use gammag::exact::{q, Matrix, Poly, Rational, Subspace};
use gammag::groups::induced::Gl2q;
use gammag::groups::{families, CongruenceSubgroup, GroupModN, Mat2};
use gammag::hecke::{double_coset_reps, hecke_double_coset, hecke_tp, HeckePath, Parallelism};
use gammag::modsym::{cuspidal_subspace, plus_subspace, star_involution, ModSymSpace};

fn space(g: GroupModN, k: u32) -> ModSymSpace {
    ModSymSpace::new(Arc::new(CongruenceSubgroup::new(g).unwrap()), k).unwrap()
}

fn tp(s: &ModSymSpace, p: u64, path: HeckePath) -> Matrix<Rational> {
    hecke_tp(s, p, None, path, Parallelism::Sequential).unwrap()
}

fn plus(s: &ModSymSpace) -> Subspace<Rational> {
    plus_subspace(&cuspidal_subspace(s), &star_involution(s).unwrap()).unwrap()
}

#[test]
fn gamma0_11_eigenvalues() {
    let s = space(families::gamma0(11).unwrap(), 2);
    let v = plus(&s);
    for (p, a) in [(2, -2), (3, -1), (5, 1), (7, -2), (13, 4)] {
        let t = v.restrict(&tp(&s, p, HeckePath::Auto)).unwrap();
        assert_eq!(t, Matrix::from_int_rows(&[vec![a]]), "a_{p}");
    }
    let u11 = Gl2q::from_int(Mat2::diag(1, 11)).unwrap();
    let t = v.restrict(&hecke_double_coset(&s, &u11, Parallelism::Sequential).unwrap()).unwrap();
    assert_eq!(t, Matrix::from_int_rows(&[vec![1]]));
}

#[test]
fn naive_matches_heilbronn() {
    let groups =
        [families::gamma0(11).unwrap(), families::gamma1(13).unwrap(), families::nonsplit_cartan_plus(13).unwrap()];
    for g in groups {
        let s = space(g, 2);
        for p in [2, 3, 5, 7] {
            assert_eq!(tp(&s, p, HeckePath::Naive), tp(&s, p, HeckePath::Merel), "p = {p}");
        }
    }
    let s = space(families::gamma0(11).unwrap(), 4);
    for p in [2, 3] {
        assert_eq!(tp(&s, p, HeckePath::Naive), tp(&s, p, HeckePath::Merel), "weight 4, p = {p}");
    }
}

#[test]
fn level_one_weight_twelve() {
    let s = space(GroupModN::gl2(1).unwrap(), 12);
    let t2 = tp(&s, 2, HeckePath::Auto);
    let cp = t2.charpoly();
    // (x + 24)^2 (x - 2049) on the full space
    let want = Poly::from_ints(&[24, 1]).mul(&Poly::from_ints(&[24, 1])).mul(&Poly::from_ints(&[-2049, 1]));
    assert_eq!(cp, want);
    let c = cuspidal_subspace(&s);
    let tc = c.restrict(&t2).unwrap();
    assert!(tc.is_scalar(&q(-24)));
}

#[test]
fn double_coset_sizes() {
    let g = CongruenceSubgroup::new(families::gamma0(11).unwrap()).unwrap();
    for p in [2i128, 3, 5, 7] {
        let a = Gl2q::from_int(Mat2::diag(1, p)).unwrap();
        assert_eq!(double_coset_reps(&g, &a).unwrap().len(), p as usize + 1);
    }
    let a = Gl2q::from_int(Mat2::diag(1, 11)).unwrap();
    assert_eq!(double_coset_reps(&g, &a).unwrap().len(), 11);
}

#[test]
fn operators_commute() {
    let s = space(families::gamma1(13).unwrap(), 2);
    let ops: Vec<_> = [2, 3, 5].iter().map(|&p| tp(&s, p, HeckePath::Auto)).collect();
    let iota = star_involution(&s).unwrap();
    for a in &ops {
        assert!(a.commutes_with(&iota));
        for b in &ops {
            assert!(a.commutes_with(b));
        }
    }
}

#[test]
fn nonsplit_cartan_13_t2() {
    let s = space(families::nonsplit_cartan_plus(13).unwrap(), 2);
    let t = plus(&s).restrict(&tp(&s, 2, HeckePath::Auto)).unwrap();
    assert_eq!(t.charpoly(), Poly::from_ints(&[-1, -1, 2, 1]));
}

#[test]
fn level_16_a5() {
    let h = GroupModN::generate_i64(16, &[[1, 3, 12, 3], [1, 1, 12, 7], [1, 3, 0, 3], [1, 0, 2, 3]]).unwrap();
    let s = space(h, 2);
    let c = cuspidal_subspace(&s);
    assert!(c.restrict(&tp(&s, 5, HeckePath::Auto)).unwrap().is_scalar(&q(-4)));
    assert_eq!(tp(&s, 5, HeckePath::Naive), tp(&s, 5, HeckePath::Merel));
}

#[test]
fn level_8_bad_alpha() {
    let e8 =
        GroupModN::generate_i64(8, &[[7, 0, 0, 7], [2, 3, 3, 5], [0, 7, 7, 7], [3, 0, 0, 3], [4, 7, 7, 3]]).unwrap();
    let s = space(e8, 2);
    let c = cuspidal_subspace(&s);
    let a = Gl2q::from_int(Mat2::diag(1, 97)).unwrap();
    let t = c.restrict(&hecke_double_coset(&s, &a, Parallelism::Sequential).unwrap()).unwrap();
    assert!(t.is_scalar(&q(18)));
}
