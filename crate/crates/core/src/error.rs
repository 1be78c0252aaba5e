// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

use crate::gf2poly::PolyError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StegoError {
    #[error(transparent)]
    Poly(#[from] PolyError),

    #[error("generator must have degree in [1, {n}), got {degree:?}")]
    InvalidGenerator { n: usize, degree: Option<usize> },
    #[error("message length must be in [1, {n}), got {msg_len}")]
    InvalidMessageLength { n: usize, msg_len: usize },

    #[error("cover polynomial has degree {degree}, cover length is {n}")]
    CoverTooLong { degree: usize, n: usize },
    #[error("message polynomial has degree {degree}, capacity is {capacity} bits")]
    MessageTooLong { degree: usize, capacity: usize },
    #[error("message has {got} bits, capacity is {capacity}")]
    CapacityMismatch { got: usize, capacity: usize },
    #[error("expected {expected} elements, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("polynomial of degree {degree} does not fit in {len} bits")]
    PolyTooLong { degree: usize, len: usize },
    #[error("image dimensions {width}x{height} do not match {len} pixels")]
    BadDimensions { width: usize, height: usize, len: usize },
    #[error("bit value {0} at index {1} is not 0 or 1")]
    NonBinary(u8, usize),

    #[error("distortion cost {value} at position {index} is negative or not finite")]
    BadCost { index: usize, value: f64 },
    #[error("the family search needs the generator 1 + x^(n-k); got {0}")]
    NotLcdm(String),
    #[error("full enumeration needs k <= {cap}, got k = {k}")]
    EnumerationCap { k: usize, cap: usize },
    #[error("exhaustive search needs n <= {cap}, got n = {n}")]
    OracleCap { n: usize, cap: usize },
    #[error("parity matrix needs n <= {cap}, got n = {n}")]
    MatrixCap { n: usize, cap: usize },
    #[error("exponent {h} + {shifts}*{step} runs past the cover length {n}")]
    ShiftOverflow { h: usize, shifts: usize, step: usize, n: usize },
    #[error("message rate must lie strictly between 0 and 1, got {0}")]
    InvalidRate(f64),
    #[error("size list is empty")]
    EmptySizes,
}

pub type Result<T> = std::result::Result<T, StegoError>;
