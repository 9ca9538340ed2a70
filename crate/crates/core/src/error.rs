use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p is not prime: {0}")]
    NotPrime(u64),
    #[error("p = 2 is not supported; an odd prime is required")]
    EvenPrime,
    #[error("p = {0} exceeds the supported bound 2^31")]
    ModulusTooLarge(u64),
    #[error("zero has no inverse modulo {0}")]
    ZeroInverse(u32),
    #[error("the zero vector does not define a projective point")]
    ZeroVector,
    #[error("a projective point needs at least one coordinate")]
    EmptyPoint,
    #[error("invalid residue set: {0}")]
    InvalidSet(String),
    #[error("multiplier k = {k} out of range [1, {max}]")]
    MultiplierOutOfRange { k: u64, max: u32 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("enumeration budget exceeded: {required} evaluations needed, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("exact solver cap exceeded: {vertices} vertices, cap is {cap}")]
    CapExceeded { vertices: usize, cap: usize },
}
