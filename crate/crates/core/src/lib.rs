//! Exact f-, h- and g-vector calculus for simplicial polytopes, and the
//! correspondence between Dehn-Sommerville bases and the Catalan matroid.
//!
//! The linear algebra and the face-vector transforms are generic over a
//! [`Scalar`]; the aliases below fix the arbitrary-precision types used by the
//! rest of the crate.
//!
//! ```
//! use dscat_core::{face, reconstruct};
//!
//! let m4 = face::ds_matrix::<i64>(4);
//! assert_eq!(m4.row(1), &[0, 1, 4, 6, 3]);
//! assert_eq!(reconstruct::dehn_sommerville_bases(4).len(), 5);
//! ```

pub mod dyck;
pub mod face;
pub mod linalg;
pub mod matroid;
pub mod positroid;
pub mod reconstruct;
pub mod routing;
pub mod scalar;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub use scalar::{IntegerScalar, Scalar};

pub type ExactMatrix = linalg::Matrix<BigInt>;
pub type FVector = face::FVector<BigInt>;
pub type HVector = face::HVector<BigInt>;
pub type GVector = face::GVector<BigInt>;
pub type RationalFVector = face::FVector<BigRational>;
