//! Modular symbols for `Gamma_G` via Manin symbols, with boundary map,
//! cuspidal subspace and star involution.

pub mod boundary;
pub mod character;
pub mod space;
pub mod star;
pub mod sym;

pub use boundary::{
    boundary_map, cusp_equiv, cusp_vanishing, cuspidal_subspace, orbit_table, BoundaryInfo, OrbitTable,
};
pub use character::Character;
pub use space::ModSymSpace;
pub use star::{minus_subspace, plus_subspace, star_involution};
pub use sym::{manin_path, sym_action, Cusp, SymPoly};
