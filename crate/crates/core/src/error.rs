use thiserror::Error;

use crate::certify::CandidateRecord;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),

    #[error(
        "characteristic {0} is not supported: characteristic 2 and 3 are excluded, \
         short Weierstrass models and the fiber tables here need p >= 5"
    )]
    UnsupportedCharacteristic(u64),

    #[error("prime {p} is outside the supported range (max {max})")]
    PrimeOutOfRange { p: u64, max: u64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("operands belong to different fields")]
    FieldMismatch,

    #[error("zero input where a nonzero element is required")]
    ZeroInput,

    #[error("curve is singular (discriminant vanishes)")]
    SingularCurve,

    #[error("twist parameter must be nonzero")]
    ZeroTwist,

    #[error("no cube root of J^2 c^2 exists for c = {c}")]
    NoCubeRoot { c: u32 },

    #[error("pencil parameter c must be nonzero")]
    ZeroC,

    #[error("invalid pencil: {0}")]
    InvalidPencil(String),

    #[error("unsupported fiber type at {place}: v(delta)={m}, v(A4)={k4}, v(A6)={k6}")]
    UnsupportedFiberType {
        place: String,
        m: u32,
        k4: u32,
        k6: u32,
    },

    #[error("Weierstrass model is not minimal at {place}")]
    NonMinimalPlace { place: String },

    #[error("Euler numbers sum to {sum}, expected {expected}")]
    AuditFailed { sum: u32, expected: u32 },

    #[error("rational surface selftest failed over F_{q}: counted {counted}, expected {expected}")]
    SelftestFailed { q: u64, counted: i64, expected: i64 },

    #[error("Kummer count mismatch at p={p}: counted ({n1}, {n2}), expected ({expected_n1}, {expected_n2})")]
    ReportedMismatch {
        p: u64,
        n1: i64,
        n2: i64,
        expected_n1: i64,
        expected_n2: i64,
    },

    #[error("CM cross-check failed for d={d} at p={p}")]
    CrosscheckFailed { d: i64, p: u64 },

    #[error("no candidate model at p={p} certified Picard number 21")]
    Falsified {
        p: u64,
        log: Box<Vec<CandidateRecord>>,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal error: {0}")]
    InternalError(String),
}
