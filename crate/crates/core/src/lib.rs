//! Exact nonabelian Galois cohomology over finite data.
//!
//! The acting "Galois group" is a finite group `Γ` with designated
//! decomposition and inertia subgroups standing in for places. On top of
//! the finite-group layer ([`group`]) sit 1- and 2-cohomology with twisting
//! and lifting obstructions ([`cohomology`]), liens and extension classes
//! ([`lien`]), tame local classes ([`local`]), and the local-global searches
//! over a finite global datum ([`global`]).

pub mod budget;
pub mod cli;
pub mod cohomology;
pub mod error;
pub mod global;
pub mod group;
pub mod io;
pub mod lien;
pub(crate) mod linalg;
pub mod local;

pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupHom, Subgroup};
