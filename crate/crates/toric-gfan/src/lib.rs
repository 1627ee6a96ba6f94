//! Exact polyhedral and symbolic machinery for Groebner fans of ideals
//! on affine normal toric varieties, Newton non-degeneracy certification
//! and toric embedded resolutions.

pub mod cli;
pub mod cones;
pub mod field;
pub mod gfan;
pub mod jobdoc;
pub mod lattice;
pub mod nnd_resolve;
pub mod parallel;
pub mod polynomials;
pub mod svg;
pub mod toric;

pub fn run_cli() -> i32 {
    cli::run()
}
