use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum Error {
    #[error("|a|^2 + |b|^2 = {norm_sq} is not within 1e-6 of 1")]
    NotUnitary { norm_sq: f64 },
    #[error("representation degree {0} exceeds the supported maximum {max}", max = crate::repr::MAX_MATRIX_DEGREE)]
    DegreeTooLarge(usize),
    #[error("sawtooth index must be at least 2, got {0}")]
    SawtoothIndex(usize),
    #[error("Hölder exponent must lie in (0, 1), got {0}")]
    HolderExponent(f64),
    #[error("modulus of continuity vanishes at t = {t}; ratio undefined")]
    DegenerateModulus { t: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
