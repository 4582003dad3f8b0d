//! Exact intersection theory on minimal resolutions of du Val del Pezzo
//! surfaces: Dynkin lattices, residual classes, Riemann-Roch dimension
//! counts, tiger certificates and cylinder classification.

pub mod ade_lattice;
pub mod classifier;
pub mod cli;
pub mod divisor_algebra;
pub mod document;
pub mod linear_systems;
pub mod rational;
pub mod tiger_engine;
