use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("relations do not present a finite group (rank {rank} < {generators} generators)")]
    InfiniteGroup { rank: usize, generators: usize },

    #[error("invalid invariant factor {0}: factors must be positive")]
    InvalidInvariantFactor(u64),

    #[error("character has {found} coordinates, expected {expected}")]
    BadCoordinateLength { expected: usize, found: usize },

    #[error("duplicate character {0:?} after reduction")]
    DuplicateCharacter(Vec<u64>),

    #[error("multiplicity of character {character:?} must be positive, got {value}")]
    NonPositiveMultiplicity { character: Vec<i64>, value: i64 },

    #[error("the {prime}-primary part has rank {rank}, expected a cyclic primary part")]
    NonCyclicPrimaryPart { prime: u64, rank: usize },

    #[error("character group has {0} invariant factors, expected a cyclic group")]
    NotCyclic(usize),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("prime {prime} does not divide the group order {order}")]
    PrimeDoesNotDivide { prime: u64, order: u64 },

    #[error("automorphism closure exceeded the cap of {0} elements")]
    CapExceeded(usize),

    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),

    #[error("missing quotient genus for prime {0}")]
    MissingQuotientGenus(u64),

    #[error("missing fixed-locus dimension for prime {0}")]
    MissingFixedDim(u64),

    #[error("entry for {0}, which is not a prime divisor of n")]
    UnexpectedPrime(u64),

    #[error("invalid genus data: {0}")]
    InvalidGenus(String),

    #[error("invalid dimension data: {0}")]
    InvalidDims(String),

    #[error("invalid input document: {0}")]
    Schema(String),
}

impl Error {
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded(_))
    }
}
