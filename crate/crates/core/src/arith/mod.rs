//! Exact scalar fields and the sparse linear algebra built on them.

mod field;
pub(crate) mod linalg;
mod prime;
mod quad;
mod rational;
mod scalar;

pub use field::{eval_poly, Field};
pub use linalg::{
    dense_inverse, dense_rank, kernel, rank_mod, rank_mod_p, certified_rank, RankCertificate, Reducer, SparseMatrix,
    SparseVec, Subspace,
};
pub use prime::{is_prime, prime_pool, PrimeScalar};
pub use quad::{is_valid_radicand, QuadExt};
pub use rational::{rational_roots, Rational};
pub use scalar::{field_op, FieldOp, OpResult, Scalar};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands from different fields: {0}")]
    FieldMismatch(String),
    #[error("prime {0} divides a denominator")]
    BadPrime(u64),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
}
