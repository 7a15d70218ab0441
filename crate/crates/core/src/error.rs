use alloc::string::String;

/// Which filtration axiom a filtered complex violates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiltrationViolation {
    /// `F^{p+1}C^i` is not contained in `F^pC^i`.
    NotDecreasing { level: i64, degree: i64 },
    /// `F^{p_min}C^i != C^i` or `F^{p_max+1}C^i != 0`.
    NotBounded { level: i64, degree: i64 },
    /// `d(F^pC^i)` is not contained in `F^pC^{i+1}`.
    NotCompatible { level: i64, degree: i64 },
}

impl core::fmt::Display for FiltrationViolation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            FiltrationViolation::NotDecreasing { level, degree } => write!(
                f,
                "filtration not decreasing: F^{}C^{} is not contained in F^{}C^{}",
                level + 1,
                degree,
                level,
                degree
            ),
            FiltrationViolation::NotBounded { level, degree } => write!(
                f,
                "filtration not bounded: level {level} in degree {degree} is not the whole group or zero as required"
            ),
            FiltrationViolation::NotCompatible { level, degree } => write!(
                f,
                "differential does not respect filtration: d(F^{level}C^{degree}) is not contained in F^{level}C^{}",
                degree + 1
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("ambient groups differ: {0}")]
    AmbientMismatch(String),
    #[error("map is not well defined: {0}")]
    IllDefined(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("{0}")]
    Filtration(FiltrationViolation),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = core::result::Result<T, Error>;

macro_rules! bail {
    ($variant:ident, $($arg:tt)*) => {
        return Err($crate::error::Error::$variant(alloc::format!($($arg)*)))
    };
}
pub(crate) use bail;
