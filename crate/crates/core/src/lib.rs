//! Exact Lie-algebra engine for homogeneous Higgs and co-Higgs bundle data on
//! irreducible compact Hermitian symmetric spaces.
//!
//! Everything is computed over the Gaussian rationals Q(i) with
//! arbitrary-precision integers; there is no floating point and no tolerance —
//! every check is an exact zero test. The pipeline is:
//!
//! 1. [`hss`] builds a classical symmetric pair (g, k) with its orthogonal
//!    splitting, center generator z, and the two eigenspace halves of the
//!    complexified complement.
//! 2. [`eta`] ingests a homomorphism k → h into a complex target algebra,
//!    validates it, and decomposes h into integer weight spaces under z.
//! 3. [`invariant`] computes the invariant tensors that parametrize
//!    holomorphic structures and (co-)Higgs fields.
//! 4. [`moduli`] evaluates the bilinear compatibility maps, verifies
//!    candidate triples, decides equivalence under a given conjugator, and
//!    emits the quadratic moduli systems; [`system`] solves the small ones
//!    exactly.

// Index-style loops mirror the tensor/coordinate formulas they implement.
#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod eta;
pub mod gaussian;
pub mod hss;
pub mod invariant;
pub mod lie;
pub mod matrix;
pub mod moduli;
pub mod rational;
pub mod report;
pub mod spectrum;
pub mod system;
pub mod util;

pub use error::{Error, Result};
pub use gaussian::GaussianRational;
pub use matrix::{ExactMatrix, LinearSolver, SubspaceBasis};
pub use rational::Rational;
pub use report::{Check, Report};

#[cfg(test)]
mod thread_safety {
    // Every value type is immutable after construction and usable across
    // threads; operations are pure functions.
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn core_types_are_send_and_sync() {
        assert_send_sync::<crate::Rational>();
        assert_send_sync::<crate::GaussianRational>();
        assert_send_sync::<crate::ExactMatrix>();
        assert_send_sync::<crate::SubspaceBasis>();
        assert_send_sync::<crate::lie::MatrixLieAlgebra>();
        assert_send_sync::<crate::hss::HermitianPair>();
        assert_send_sync::<crate::eta::TargetAlgebra>();
        assert_send_sync::<crate::eta::ZkDecomposition>();
        assert_send_sync::<crate::invariant::InvariantSpace>();
        assert_send_sync::<crate::moduli::ModuliTriple>();
        assert_send_sync::<crate::system::QuadraticSystem>();
    }
}
