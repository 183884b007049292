//! Modular symbols and Hecke operators for the congruence subgroups
//! `Gamma_G = { g in SL2(Z) : g mod N in G }` attached to a subgroup `G` of
//! `GL2(Z/NZ)`.
//!
//! The layers build on each other: [`exact`] arithmetic, finite [`groups`]
//! and coset data, spaces of [`modsym`], [`hecke`] operators, and the
//! Hecke module structure in [`spectra`].

pub mod error;
pub mod exact;
pub mod groups;
pub mod hecke;
pub mod modsym;
pub mod nt;
pub mod spectra;

pub use error::{Error, Result};
