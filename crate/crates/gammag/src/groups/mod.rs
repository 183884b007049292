//! Subgroups of `GL2(Z/NZ)`, the congruence subgroups they induce, and
//! coset data for `SL2(Z)`.

pub mod cosets;
pub mod families;
pub mod group;
pub mod induced;
pub mod mat;

pub use cosets::CongruenceSubgroup;
pub use group::GroupModN;
pub use mat::{lift_sl2, modn, Mat2, ModMat};
