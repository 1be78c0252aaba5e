// SPDX-License-Identifier: Apache-2.0

//! Parity-check matrix counterpart of the polynomial codec, plus the storage
//! cost of each representation.
//!
//! Column `c` of the matrix holds the coefficients of `rem(x^c, g)`, which
//! makes `H·v` equal to the remainder of `v(x)` modulo `g`.

use crate::codec::{BitVector, StegoCode};
use crate::error::{Result, StegoError};

/// Largest cover length for which [`build_parity`] will allocate a matrix.
pub const MATRIX_N_CAP: usize = 1 << 16;

/// `n - k` rows of `n` bits, packed LSB-first into `u64` words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

impl ParityMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        (self.row(r)[c / 64] >> (c % 64)) & 1 == 1
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    /// Column `c` as a bit vector of length `rows`.
    pub fn column(&self, c: usize) -> BitVector {
        BitVector::new((0..self.rows).map(|r| self.get(r, c) as u8).collect())
            .expect("entries are bits")
    }
}

/// Builds the matrix by stepping `x^c mod g` forward one column at a time.
pub fn build_parity(code: &StegoCode) -> Result<ParityMatrix> {
    let n = code.n();
    if n > MATRIX_N_CAP {
        return Err(StegoError::MatrixCap {
            n,
            cap: MATRIX_N_CAP,
        });
    }
    let rows = code.msg_len();
    let words_per_row = n.div_ceil(64);
    let mut data = vec![0u64; rows * words_per_row];
    let g = code.generator();
    // low `rows` coefficients of g, i.e. x^rows mod g
    let feedback: Vec<usize> = g.exponents().filter(|&e| e < rows).collect();

    let mut state = vec![false; rows];
    state[0] = true;
    for c in 0..n {
        for (r, &bit) in state.iter().enumerate() {
            if bit {
                data[r * words_per_row + c / 64] |= 1 << (c % 64);
            }
        }
        // multiply by x and reduce
        let carry = state[rows - 1];
        state.rotate_right(1);
        state[0] = false;
        if carry {
            for &f in &feedback {
                state[f] ^= true;
            }
        }
    }
    Ok(ParityMatrix {
        rows,
        cols: n,
        words_per_row,
        data,
    })
}

/// `H·v` over GF(2).
pub fn matrix_syndrome(h: &ParityMatrix, v: &BitVector) -> Result<BitVector> {
    if v.len() != h.cols {
        return Err(StegoError::LengthMismatch {
            expected: h.cols,
            got: v.len(),
        });
    }
    let mut packed = vec![0u64; h.words_per_row];
    for (i, &b) in v.bits().iter().enumerate() {
        packed[i / 64] |= (b as u64) << (i % 64);
    }
    let bits = (0..h.rows)
        .map(|r| {
            let ones: u32 = h
                .row(r)
                .iter()
                .zip(&packed)
                .map(|(a, b)| (a & b).count_ones())
                .sum();
            (ones & 1) as u8
        })
        .collect();
    BitVector::new(bits)
}

/// Bytes needed to store the parity matrix versus the generator polynomial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MemoryFootprint {
    /// `n·(n-k)/8`
    pub matrix_bytes: f64,
    /// `(n-k+1)/8`
    pub poly_bytes: f64,
}

pub fn memory_footprint(n: u64, msg_len: u64) -> MemoryFootprint {
    MemoryFootprint {
        matrix_bytes: (n as f64) * (msg_len as f64) / 8.0,
        poly_bytes: (msg_len as f64 + 1.0) / 8.0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Units {
    /// Powers of 1000 (KB, MB, GB).
    Decimal,
    /// Powers of 1024 (KiB, MiB, GiB).
    Binary,
}

/// Renders a byte count with three decimals in the largest unit not exceeding it.
pub fn format_bytes(bytes: f64, units: Units) -> String {
    let (base, names): (f64, [&str; 4]) = match units {
        Units::Decimal => (1000.0, ["B", "KB", "MB", "GB"]),
        Units::Binary => (1024.0, ["B", "KiB", "MiB", "GiB"]),
    };
    let mut value = bytes;
    let mut idx = 0;
    while value >= base && idx < names.len() - 1 {
        value /= base;
        idx += 1;
    }
    format!("{value:.3} {}", names[idx])
}
