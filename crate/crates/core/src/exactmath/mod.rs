//! Exact field arithmetic, dense linear algebra, polynomials and truncated series.

mod matrix;
mod poly;
mod scalar;
mod series;
mod sqrt;
mod subspace;

pub use matrix::{dot, kernel_basis, mat_rank, ExactMatrix};
pub use poly::UniPoly;
pub use scalar::{smallest_prime_1mod4, Field, Scalar, DEFAULT_PRIME, SPINOR_PRIME};
pub use series::TruncSeries;
pub use sqrt::{fp_sqrt, fp_sqrt_u64, sqrt_exact};
pub use subspace::{orth_complement, projective_equal, subspace_intersect, Subspace};
