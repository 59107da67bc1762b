//! Exact index arithmetic and combinatorial checks for cylindrical contact
//! homology of dynamically convex contact three-manifolds.
//!
//! - [`orbit_index`]: Conley-Zehnder indices of covers from rotation
//!   numbers, orbit types, Fredholm indices of curves.
//! - [`buildings`]: component catalogs, exhaustive enumeration of
//!   genus-zero buildings with one positive end, and the low-index
//!   classification.
//! - [`writhe_bounds`]: winding and writhe bounds at ends, automatic
//!   transversality, and the certificate ruling out a pants-over-plane
//!   breaking.
//! - [`chain_complex`]: the complex built from cylinder counts, with
//!   `δκδ = 0` checked two ways and homology over Q.
//! - [`cli_io`]: scenario files, deterministic reports, and the `cylhom`
//!   command line.
//!
//! Everything is exact: rotation numbers are rationals and linear algebra
//! runs over big rationals.

pub mod buildings;
pub mod chain_complex;
pub mod cli_io;
pub mod orbit_index;
pub mod writhe_bounds;
