use thiserror::Error;

/// Problems building bitstrings and codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("bitstring length {0} outside 1..=31")]
    Length(usize),
    #[error("value {value:#x} does not fit in {len} bits")]
    ValueOverflow { len: usize, value: u32 },
    #[error("bit {pos}: expected `0` or `1`, found `{found}`")]
    BadDigit { pos: usize, found: char },
    #[error("length mismatch: expected {expected} bits, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("word {index} is a combination of the words before it")]
    Dependent { index: usize },
    #[error("{checks} checks but {parities} parities")]
    ParityCount { checks: usize, parities: usize },
    #[error("key string must not be all zeros")]
    ZeroKey,
    #[error("r + 1 = {} exceeds n = {n}", r + 1)]
    TooManyChecks { r: usize, n: usize },
    #[error("Hamming parameter r = {0} outside 2..=5")]
    HammingRange(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Invalid attack parameters.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum AttackError {
    #[error("theta = {0} must lie strictly between 0 and pi/4")]
    Theta(f64),
    #[error("error rate {p_e} outside [0, sin^2 theta = {max}]")]
    ErrorRate { p_e: f64, max: f64 },
    #[error("alpha = {alpha} must lie in [0, theta = {theta}] for a valid attack")]
    Alpha { alpha: f64, theta: f64 },
    #[error("theta' = {0} must lie in [0, theta]")]
    ThetaPrime(f64),
    #[error("unitarity residual {0:e} exceeds 1e-12")]
    Unitarity(f64),
}

/// Errors from the analysis pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Attack(#[from] AttackError),
    #[error("probe angle {0} outside [0, pi/4]")]
    Alpha(f64),
    #[error("n = {n} exceeds the dense oracle limit of {max}")]
    TooLarge { n: usize, max: usize },
}
