// SPDX-License-Identifier: Apache-2.0

//! The 11-pixel example used throughout the tests, the CLI fixture mode and
//! the browser demo: `1 + x^3` over 11 pixels carrying the message `101`.

use crate::codec::{BitVector, CoverImage};
use crate::lcdm::{make_lcdm, DistortionMap};
use crate::oracle::Instance;

pub const COVER: [u8; 11] = [163, 18, 153, 20, 100, 26, 15, 212, 243, 53, 86];
pub const MESSAGE: [u8; 3] = [1, 0, 1];
pub const COSTS: [f64; 11] = [223.0, 3.0, 12.0, 4.0, 163.0, 43.0, 2.0, 12.0, 1.0, 23.0, 2.0];
pub const MSG_LEN: usize = 3;
/// Expected stego pixels: pixel 8 goes from 243 to 242.
pub const STEGO: [u8; 11] = [163, 18, 153, 20, 100, 26, 15, 212, 242, 53, 86];

pub fn instance() -> Instance {
    Instance {
        code: make_lcdm(COVER.len(), MSG_LEN).expect("valid code"),
        cover: CoverImage::from_pixels(COVER.to_vec()).expect("valid cover"),
        message: BitVector::new(MESSAGE.to_vec()).expect("bits"),
        costs: DistortionMap::new(COSTS.to_vec()).expect("nonnegative costs"),
        seed: 0,
    }
}
