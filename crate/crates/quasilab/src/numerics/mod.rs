//! Shared numeric kernels: high-precision scalars, interval unions,
//! integer polynomials, and symmetric eigensolvers.

pub mod band;
pub mod dd;
pub mod poly;
pub mod tridiag;

pub use band::{Band, BandSet, DEFAULT_MERGE_TOL};
pub use dd::{parse_real, HighPrec, EPS_DD};
pub use poly::{char_poly, IntPolynomial, PolyRoot};
