//! Exact symbolic and numeric computation for the overshear group of
//! Danielewski surfaces `{xy = p(z)}`.
//!
//! The symbolic layer works over exp-polynomials with Gaussian-rational
//! coefficients, the smallest natural class containing polynomials that is
//! closed under the overshear composition law. On top of it sit:
//!
//! - [`osgroup`]: exact overshear elements, their group law, and the
//!   pointwise action on the surface;
//! - [`amalgam`]: the reduced-word engine for the free product of the two
//!   overshear factors amalgamated over their (trivial) intersection;
//! - [`fields`]: overshear and shear vector fields, exact Lie brackets,
//!   and flows in closed, exact, and Runge-Kutta form;
//! - [`nilpotent`]: exact matrix exponentials, the BCH correction term, and
//!   the factorization of unipotent matrices into one-parameter values;
//! - [`surface`]: the numeric surface layer with residual tracking.

pub mod amalgam;
pub mod error;
pub mod exppoly;
pub mod fields;
pub mod linalg;
pub mod nilpotent;
pub mod osgroup;
pub mod parse;
pub mod poly;
pub mod random;
pub mod scalar;
pub mod surface;

pub use amalgam::{parity_check, FactorElement, FactorTag, Letter, ParityReport, Word};
pub use error::{Error, Result};
pub use exppoly::ExpPoly;
pub use fields::{
    are_commuting_family, bracket, flow_closed_form, flow_numeric, flow_symbolic,
    generator_check, iterated_bracket_rank, to_coord, verify_of_bracket_identity,
    verify_sf_of_identity, CoordField, OvershearField, SignVerdict, ZPoly,
};
pub use nilpotent::{
    bch_k, bch_z, decompose_product, malcev_basis, mexp, mlog, reconstruct, NilMatrix,
    UnipotentMatrix,
};
pub use osgroup::{
    letter_apply, letter_to_line, parse_word_file, word_apply, word_to_file, O1Element,
    OsLetter, OsWord,
};
pub use parse::{parse_exppoly, parse_poly};
pub use poly::Poly;
pub use scalar::GaussianRational;
pub use surface::{Surface, SurfacePoint, DEFAULT_TOL};
