// SPDX-License-Identifier: Apache-2.0

//! Steganographic syndrome coding with generator polynomials.
//!
//! A message of `n - k` bits is hidden in the least-significant-bit plane of
//! an `n`-pixel cover as the remainder of the LSB polynomial modulo a
//! generator `g` of degree `n - k`. Only `g` is stored, never a parity-check
//! matrix. With the LCDM generator `1 + x^(n-k)` the cheapest valid set of
//! flips is found in time linear in `n`.
//!
//! ```
//! use polystego::{codec, lcdm, worked_example};
//!
//! let inst = worked_example::instance();
//! let out = codec::embed(&inst.code, &inst.cover, &inst.message,
//!                        codec::Minimizer::Dffa(&inst.costs)).unwrap();
//! assert_eq!(out.stego.pixels(), &worked_example::STEGO);
//! assert_eq!(codec::extract(&inst.code, &out.stego).unwrap(), inst.message);
//! # let _ = lcdm::make_lcdm(11, 3).unwrap();
//! ```

pub mod bench;
pub mod cli;
pub mod codec;
pub mod error;
pub mod gf2poly;
pub mod lcdm;
pub mod matrix_baseline;
pub mod oracle;
pub mod stego_io;
pub mod worked_example;

pub use codec::{BitVector, CoverImage, StegoCode};
pub use error::{Result, StegoError};
pub use gf2poly::Gf2Poly;
pub use lcdm::DistortionMap;
