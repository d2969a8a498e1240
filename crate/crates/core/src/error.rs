use thiserror::Error;

/// Errors raised by the decimation, enumeration, algebra and moment engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty word")]
    EmptyWord,
    #[error("insufficient word: {len} letters consumed without a residue repeat mod {modulus}")]
    InsufficientWord { len: usize, modulus: u64 },
    #[error("scaling not coprime: gcd({base}, {modulus}) != 1")]
    ScalingNotCoprime { base: u64, modulus: u64 },
    #[error("invalid letter {letter} for base {base} (expected {base} or {})", 2 * base)]
    InvalidLetter { letter: u64, base: u64 },
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("state {state} out of range for modulus {modulus}")]
    StateOutOfRange { state: u64, modulus: u64 },
    #[error("word too short to guarantee collision: {max_len} < {modulus}")]
    WordTooShort { max_len: usize, modulus: u64 },
    #[error("decimation table has {len} entries, expected {modulus}")]
    TableSize { len: usize, modulus: u64 },
    #[error("modulus {modulus} is not admissible for cyclic part {word}")]
    InadmissibleModulus { word: String, modulus: u64 },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("no power series at this point: denominator vanishes at z = 0")]
    NoPowerSeries,
    #[error("probability {0} outside the open interval (0, 1)")]
    ProbabilityOutOfRange(String),
    #[error("probability denominator {den} exceeds limit {limit}")]
    ProbabilityTooFine { den: String, limit: u64 },
    #[error("oracle scale exceeded: T = {modulus} > {limit}")]
    OracleScaleExceeded { modulus: u64, limit: u64 },
    #[error("sample count must be positive")]
    NoSamples,
    #[error("worker pool: {0}")]
    WorkerPool(String),
    #[error("polynomial degree {0} outside supported range 1..=24")]
    DegreeOutOfRange(u32),
    #[error("polynomial {0:#b} has zero constant term")]
    DegeneratePolynomial(u32),
    #[error("fill must be a nonzero value below 2^{degree}")]
    InvalidFill { degree: u32 },
    #[error("hypothesis violated: {0:#b} is not primitive")]
    NotPrimitive(u32),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
