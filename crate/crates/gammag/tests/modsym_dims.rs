use std::sync::Arc;

use gammag::groups::{families, CongruenceSubgroup, GroupModN};
use gammag::modsym::{cuspidal_subspace, plus_subspace, star_involution, ModSymSpace};

fn space(g: GroupModN, k: u32) -> ModSymSpace {
    ModSymSpace::new(Arc::new(CongruenceSubgroup::new(g).unwrap()), k).unwrap()
}

/// (dim M, dim cuspidal, dim plus or None when not real type)
fn dims(g: GroupModN, k: u32) -> (usize, usize, Option<usize>) {
    let s = space(g, k);
    let c = cuspidal_subspace(&s);
    let plus = star_involution(&s).ok().map(|i| plus_subspace(&c, &i).unwrap().dim());
    (s.dim(), c.dim(), plus)
}

#[test]
fn gamma0_11() {
    assert_eq!(dims(families::gamma0(11).unwrap(), 2), (3, 2, Some(1)));
}

#[test]
fn gamma1_13() {
    // genus 2, 12 cusps
    assert_eq!(dims(families::gamma1(13).unwrap(), 2), (15, 4, Some(2)));
}

#[test]
fn nonsplit_cartan_plus() {
    assert_eq!(dims(families::nonsplit_cartan_plus(13).unwrap(), 2).2, Some(3));
    assert_eq!(dims(families::nonsplit_cartan_plus(17).unwrap(), 2).2, Some(6));
}

#[test]
fn level_16_and_8() {
    let h155 = GroupModN::generate_i64(16, &[[1, 3, 12, 3], [1, 1, 12, 7], [1, 3, 0, 3], [1, 0, 2, 3]]).unwrap();
    assert_eq!(dims(h155, 2), (3, 2, None));
    let g = GroupModN::generate_i64(16, &[[2, 1, 3, 2], [0, 3, 5, 8], [1, 0, 0, 5], [1, 8, 0, 3]]).unwrap();
    assert_eq!(dims(g, 2), (4, 2, Some(1)));
    let e8 =
        GroupModN::generate_i64(8, &[[7, 0, 0, 7], [2, 3, 3, 5], [0, 7, 7, 7], [3, 0, 0, 3], [4, 7, 7, 3]]).unwrap();
    assert_eq!(dims(e8, 2), (5, 2, None));
}

#[test]
fn higher_weight() {
    // S_4(Gamma0(11)) has dim 2; 2 cusps
    assert_eq!(dims(families::gamma0(11).unwrap(), 4), (6, 4, Some(2)));
    assert_eq!(dims(GroupModN::gl2(1).unwrap(), 12), (3, 2, Some(1)));
}
