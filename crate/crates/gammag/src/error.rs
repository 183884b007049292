use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("no element of determinant {0} in the group")]
    NoDetElement(i64),
    #[error("group is not of real type")]
    NotRealType,
    #[error("subspace is not invariant under the operator")]
    NotInvariant,
    #[error("decomposition did not split a {dim}-dimensional piece using primes up to {bound}")]
    NoSplit { dim: usize, bound: u64 },
    #[error("Hecke data missing at bad prime {0}")]
    MissingBadPrime(u64),
    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
