//! Exact computations on ternary forms.
//!
//! Scalars live in one of three domains (integers, rationals, a prime
//! field) and never mix silently. Forms are sparse polynomials over a named
//! variable set. On top of that the crate provides the GL3 actions, the
//! Macaulay resultant and normalized discriminant, the cubic invariants,
//! the V(2,2) covariants, and the Picard-lattice enumeration.

pub mod arith;
pub mod cubicinv;
pub mod elimination;
pub mod error;
pub mod ffield;
pub mod gl3;
pub mod linalg;
pub mod picardlat;
pub mod poly;
pub mod rep22;
pub mod sample;
pub mod scalar;

pub use cubicinv::{cubic_i, cubic_j, delta_from_ij, scale_tuple, tuple_in_i_prime, tuples_equivalent, InvariantTuple};
pub use elimination::{bad_primes, discriminant_n, is_smooth_mod_p, macaulay_resultant, DiscriminantReport};
pub use error::{Error, Result};
pub use gl3::{act_v22, act_vn, adjugate3, cofactor_delta, det3, Mat3};
pub use linalg::Matrix;
pub use picardlat::{enumerate_tau_candidates, IsometryCandidate};
pub use poly::{parse_poly, Monomial, Poly, VarSet};
pub use rep22::{branch_locus_check, covariant_ix, covariant_iz, gram_pair, is_generic_mod_p, Class22, GramPair};
pub use scalar::{Domain, Scalar};
