//! Additive-invariant bookkeeping for Lefschetz categories, semiorthogonal
//! decompositions, categorical joins and homological projective duality.
//!
//! All structures are generic over an integer coefficient type; the aliases
//! below fix it to arbitrary-precision integers.

pub mod catalog;
pub mod checks;
pub mod dsl;
pub mod engine;
pub mod error;
pub mod model;
pub mod poly;
pub mod prop;
pub mod report;

pub use checks::{CheckConfig, CheckOutcome, CheckResult, CheckStatus, NamedSod};
pub use error::{Error, Result};
pub use model::{
    sod_equal, twist_sod, BaseTag, CategoryTerm, CheckSpec, LefschetzProfile, Moderation, SodBlock,
    SodExpr, Workspace,
};
pub use poly::{Assignment, Coeff, Monomial, Poly, Symbol};
pub use report::{ExitStatus, Report};

/// Default coefficient ring.
pub type Integer = num_bigint::BigInt;

pub type InvariantExpr = Poly<Integer>;
pub type InvariantExpr64 = Poly<i64>;
pub type InvariantExpr128 = Poly<i128>;
pub type Profile = LefschetzProfile<Integer>;
pub type Sod = SodExpr<Integer>;
pub type IntWorkspace = Workspace<Integer>;
pub type Check = CheckResult<Integer>;
