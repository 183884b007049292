use std::sync::Arc;

use gammag::exact::{q, NfElem, Poly, Rational};
use gammag::groups::induced::Gl2q;
use gammag::groups::{families, CongruenceSubgroup, GroupModN, Mat2};
use gammag::modsym::ModSymSpace;
use gammag::spectra::{decompose, eigen_system, local_euler_factor, sturm_bound, HeckeModule};

fn module(g: GroupModN, k: u32) -> HeckeModule {
    let s = ModSymSpace::new(Arc::new(CongruenceSubgroup::new(g).unwrap()), k).unwrap();
    HeckeModule::new(Arc::new(s)).unwrap()
}

fn h155() -> GroupModN {
    GroupModN::generate_i64(16, &[[1, 3, 12, 3], [1, 1, 12, 7], [1, 3, 0, 3], [1, 0, 2, 3]]).unwrap()
}

fn level16() -> GroupModN {
    GroupModN::generate_i64(16, &[[2, 1, 3, 2], [0, 3, 5, 8], [1, 0, 0, 5], [1, 8, 0, 3]]).unwrap()
}

#[test]
fn sturm_bounds() {
    let g = CongruenceSubgroup::new(families::gamma0(11).unwrap()).unwrap();
    assert_eq!(sturm_bound(2, &g), 1);
    let g = CongruenceSubgroup::new(GroupModN::gl2(1).unwrap()).unwrap();
    assert_eq!(sturm_bound(12, &g), 1);
    let g = CongruenceSubgroup::new(families::nonsplit_cartan_plus(13).unwrap()).unwrap();
    // m = 78: floor(13 - 77/13) = 7
    assert_eq!(sturm_bound(2, &g), 7);
}

#[test]
fn gamma0_11_system() {
    let u11 = Gl2q::from_int(Mat2::diag(1, 11)).unwrap();
    let m = module(families::gamma0(11).unwrap(), 2).with_bad_prime(11, vec![(u11, q(1))]);
    let pieces = decompose(&m, 0).unwrap();
    assert_eq!(pieces.len(), 1);
    assert_eq!(pieces[0].dim(), 1);
    assert_eq!(local_euler_factor(&m, &pieces[0], 2).unwrap(), Poly::from_ints(&[1, 2, 2]));
    assert_eq!(local_euler_factor(&m, &pieces[0], 3).unwrap(), Poly::from_ints(&[1, 1, 3]));
    let e = eigen_system(&m, &pieces[0], 30).unwrap();
    let want = [1, -2, -1, 2, 1, 2, -2, 0, -2, -2, 1, -2, 4, 4, -1, -4, -2, 4, 0, 2, 2, -2, -1, 0, -4, -8, 5, -4, 0];
    for (n, a) in want.iter().enumerate() {
        assert_eq!(e.rational(n + 1), Some(q(*a)), "a_{}", n + 1);
    }
}

#[test]
fn missing_bad_prime_is_absent() {
    let m = module(families::gamma0(11).unwrap(), 2);
    let pieces = decompose(&m, 0).unwrap();
    let e = eigen_system(&m, &pieces[0], 30).unwrap();
    assert!(e.get(11).is_none() && e.get(22).is_none());
    assert_eq!(e.rational(12), Some(q(-2)));
}

#[test]
fn h155_coefficients() {
    let m = module(h155(), 2).with_bad_prime(2, Vec::new());
    let pieces = decompose(&m, 0).unwrap();
    assert_eq!(pieces.len(), 1);
    assert_eq!(pieces[0].dim(), 2);
    let e = eigen_system(&m, &pieces[0], 100).unwrap();
    let fixed = [(5, -4), (9, -3), (13, -4), (17, -2), (29, -4), (37, 12), (41, -10), (89, 10), (97, -18)];
    for (n, a) in fixed {
        assert_eq!(e.rational(n), Some(q(a)), "a_{n}");
    }
    for n in 1..100 {
        if n % 2 == 0 || n % 4 == 3 {
            assert_eq!(e.rational(n), Some(q(0)), "a_{n}");
        }
    }
}

#[test]
fn level16_coefficients() {
    let m = module(level16(), 2).with_bad_prime(2, Vec::new());
    let pieces = decompose(&m, 0).unwrap();
    assert_eq!(pieces.len(), 1);
    let e = eigen_system(&m, &pieces[0], 100).unwrap();
    let fixed = [(3, -2), (11, -6), (17, -6), (19, -2), (41, 6), (43, 10), (59, -6), (67, 14), (97, 10)];
    for (n, a) in fixed {
        assert_eq!(e.rational(n), Some(q(a)), "a_{n}");
    }
}

#[test]
fn nonsplit_cartan_13() {
    let m = module(families::nonsplit_cartan_plus(13).unwrap(), 2);
    let pieces = decompose(&m, 0).unwrap();
    assert_eq!(pieces.len(), 1);
    let f = Poly::from_ints(&[-1, -1, 2, 1]);
    assert_eq!(pieces[0].label, f);
    let e = eigen_system(&m, &pieces[0], 10).unwrap();
    assert_eq!(e.modulus(), &pieces[0].field_poly);
    // express in the root of T_2's charpoly
    let a = e.get(2).unwrap().clone();
    assert_eq!(
        f.coeffs().iter().rev().fold(NfElem::from_rational(e.get(1).unwrap().field(), q(0)), |acc, c| acc * &a
            + &NfElem::from_rational(a.field(), c.clone())),
        NfElem::from_rational(a.field(), q(0))
    );
    let fld = a.field().clone();
    let k = |x: Rational| NfElem::from_rational(&fld, x);
    let a2 = a.clone() * &a;
    assert_eq!(e.get(3).unwrap(), &(-(a2.clone()) - &(a.clone() * &k(q(2)))));
    assert_eq!(e.get(4).unwrap(), &(a2.clone() - &k(q(2))));
    assert_eq!(e.get(5).unwrap(), &(a2 + &(a * &k(q(2))) - &k(q(2))));
}

#[test]
fn nonsplit_cartan_17() {
    let m = module(families::nonsplit_cartan_plus(17).unwrap(), 2);
    let pieces = decompose(&m, 0).unwrap();
    let dims: Vec<usize> = pieces.iter().map(|p| p.dim()).collect();
    assert_eq!(dims, vec![1, 2, 3]);
    assert_eq!(pieces[0].label, Poly::from_ints(&[1, 1]));
    assert_eq!(pieces[1].label, Poly::from_ints(&[-3, 1, 1]));
    assert_eq!(pieces[2].label, Poly::from_ints(&[1, -3, 0, 1]));
    let e = eigen_system(&m, &pieces[0], 10).unwrap();
    assert_eq!(e.rational(5), Some(q(2)));
    assert_eq!(e.rational(7), Some(q(-4)));
}

#[test]
fn s4_level_13() {
    let m = module(families::s4_exceptional(13).unwrap(), 2);
    let pieces = decompose(&m, 0).unwrap();
    let cubic = Poly::from_ints(&[-1, -1, 2, 1]);
    assert!(
        pieces.iter().any(|p| p.dim() == 3 && p.label == cubic),
        "{:?}",
        pieces.iter().map(|p| p.label.to_string()).collect::<Vec<_>>()
    );
}
