// SPDX-License-Identifier: Apache-2.0

//! Generic polynomial syndrome codec.
//!
//! The hidden message is the remainder of the cover's LSB polynomial modulo
//! the generator `g`. Position `i` of every vector (pixel, LSB, flip mask)
//! corresponds to the coefficient of `x^i`. Over GF(2) subtraction is XOR, so
//! `V - M` and `V - E` are computed with [`Gf2Poly::add`].

use crate::error::{Result, StegoError};
use crate::gf2poly::Gf2Poly;
use crate::lcdm::{self, DistortionMap};

/// Largest `k` for which [`Minimizer::Exhaustive`] will walk all `2^k` modifiers.
pub const EXHAUSTIVE_K_CAP: usize = 24;

/// An `(n, k)` polynomial code described only by its generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StegoCode {
    n: usize,
    generator: Gf2Poly,
}

impl StegoCode {
    pub fn new(n: usize, generator: Gf2Poly) -> Result<Self> {
        match generator.degree() {
            Some(d) if d >= 1 && d < n => {
                let mut generator = generator;
                generator.normalize();
                Ok(Self { n, generator })
            }
            degree => Err(StegoError::InvalidGenerator { n, degree }),
        }
    }

    /// Cover length.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.n - self.msg_len()
    }

    /// Message capacity in bits, `n - k = deg g`.
    pub fn msg_len(&self) -> usize {
        self.generator.degree().expect("generator is nonzero")
    }

    pub fn generator(&self) -> &Gf2Poly {
        &self.generator
    }

    /// True when the generator is `1 + x^(n-k)`.
    pub fn is_lcdm(&self) -> bool {
        self.generator.weight() == 2 && self.generator.coeff(0)
    }
}

/// 8-bit grayscale pixels in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl CoverImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 || width.checked_mul(height) != Some(pixels.len()) {
            return Err(StegoError::BadDimensions {
                width,
                height,
                len: pixels.len(),
            });
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    /// A single-row image.
    pub fn from_pixels(pixels: Vec<u8>) -> Result<Self> {
        Self::new(pixels.len(), 1, pixels)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }
}

/// A vector over GF(2), one `u8` per entry holding 0 or 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVector(Vec<u8>);

impl BitVector {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if let Some((i, &b)) = bits.iter().enumerate().find(|(_, &b)| b > 1) {
            return Err(StegoError::NonBinary(b, i));
        }
        Ok(Self(bits))
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![0; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    /// The `sigma` map: entry `i` becomes the coefficient of `x^i`.
    pub fn to_poly(&self) -> Gf2Poly {
        Gf2Poly::from_bits(&self.0)
    }

    /// Inverse of [`BitVector::to_poly`], zero-padded to `len` entries.
    pub fn from_poly(p: &Gf2Poly, len: usize) -> Result<Self> {
        match p.degree() {
            Some(degree) if degree >= len => Err(StegoError::PolyTooLong { degree, len }),
            _ => Ok(Self(p.to_bits(len))),
        }
    }
}

/// LSB plane of the cover.
pub fn phi(cover: &CoverImage) -> BitVector {
    BitVector(cover.pixels.iter().map(|p| p & 1).collect())
}

pub fn sigma(v: &BitVector) -> Gf2Poly {
    v.to_poly()
}

pub fn sigma_inv(p: &Gf2Poly, n: usize) -> Result<BitVector> {
    BitVector::from_poly(p, n)
}

/// `rem(V - M, g)`: the lowest-degree flip pattern that turns the cover's
/// syndrome into `m`.
pub fn base_modifier(code: &StegoCode, v: &Gf2Poly, m: &Gf2Poly) -> Result<Gf2Poly> {
    if let Some(degree) = v.degree().filter(|&d| d >= code.n()) {
        return Err(StegoError::CoverTooLong { degree, n: code.n() });
    }
    if let Some(degree) = m.degree().filter(|&d| d >= code.msg_len()) {
        return Err(StegoError::MessageTooLong {
            degree,
            capacity: code.msg_len(),
        });
    }
    Ok((v + m).rem(code.generator())?)
}

/// How many modifiers [`enumerate_modifiers`] should yield.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Budget {
    /// All `2^k` modifiers; only possible for `k <= 63`.
    Full,
    /// At most this many, fewer if `2^k` is smaller.
    Limit(u64),
}

/// Lazily walks `e_base + F·g` for `F = 0, 1, 2, ...` read as binary integers.
pub fn enumerate_modifiers(
    code: &StegoCode,
    e_base: &Gf2Poly,
    budget: Budget,
) -> Result<Modifiers> {
    let k = code.k();
    let total = if k >= 64 { None } else { Some(1u64 << k) };
    let remaining = match (budget, total) {
        (Budget::Full, Some(t)) => t,
        (Budget::Full, None) => return Err(StegoError::EnumerationCap { k, cap: 63 }),
        (Budget::Limit(b), Some(t)) => b.min(t),
        (Budget::Limit(b), None) => b,
    };
    Ok(Modifiers {
        generator: code.generator().clone(),
        current: e_base.clone(),
        index: 0,
        remaining,
    })
}

/// Iterator returned by [`enumerate_modifiers`].
#[derive(Debug, Clone)]
pub struct Modifiers {
    generator: Gf2Poly,
    current: Gf2Poly,
    index: u64,
    remaining: u64,
}

impl Iterator for Modifiers {
    type Item = Gf2Poly;

    fn next(&mut self) -> Option<Gf2Poly> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let out = self.current.clone();
        if self.remaining > 0 {
            // F -> F + 1 toggles the trailing ones of F and the bit above them,
            // so e changes by g·(1 + x + ... + x^t).
            let t = self.index.trailing_ones() as usize;
            for j in 0..=t {
                self.current += &self.generator.shift(j);
            }
            self.index += 1;
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (r, Some(r))
    }
}

/// Flips the LSB of every pixel where `e` is 1.
pub fn apply_modifier(cover: &CoverImage, e: &BitVector) -> Result<CoverImage> {
    if cover.len() != e.len() {
        return Err(StegoError::LengthMismatch {
            expected: cover.len(),
            got: e.len(),
        });
    }
    let pixels = cover
        .pixels
        .iter()
        .zip(e.bits())
        .map(|(p, b)| p ^ b)
        .collect();
    Ok(CoverImage {
        width: cover.width,
        height: cover.height,
        pixels,
    })
}

/// Recovers the `n - k` message bits carried by `stego`.
pub fn extract(code: &StegoCode, stego: &CoverImage) -> Result<BitVector> {
    if stego.len() != code.n() {
        return Err(StegoError::LengthMismatch {
            expected: code.n(),
            got: stego.len(),
        });
    }
    let syndrome = sigma(&phi(stego)).rem(code.generator())?;
    sigma_inv(&syndrome, code.msg_len())
}

/// Strategy for picking one modifier out of the `2^k` valid ones.
#[derive(Debug, Clone, Copy)]
pub enum Minimizer<'a> {
    /// Per-family argmin; requires an LCDM generator.
    Dffa(&'a DistortionMap),
    /// Scores every modifier; requires `k <= EXHAUSTIVE_K_CAP`.
    Exhaustive(&'a DistortionMap),
    /// Scores the first `budget` modifiers in enumeration order. Works for any
    /// generator; a budget of 1 applies the base modifier as is.
    Budgeted(&'a DistortionMap, u64),
}

impl Minimizer<'_> {
    fn costs(&self) -> &DistortionMap {
        match self {
            Minimizer::Dffa(d) | Minimizer::Exhaustive(d) | Minimizer::Budgeted(d, _) => d,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    pub stego: CoverImage,
    pub modifier: Gf2Poly,
    pub cost: f64,
    /// Cost lookups performed while choosing the modifier.
    pub comparisons: u64,
}

/// Hides `m` in `cover`, returning the stego image and the chosen modifier.
pub fn embed(
    code: &StegoCode,
    cover: &CoverImage,
    m: &BitVector,
    minimizer: Minimizer<'_>,
) -> Result<Embedding> {
    if m.len() != code.msg_len() {
        return Err(StegoError::CapacityMismatch {
            got: m.len(),
            capacity: code.msg_len(),
        });
    }
    if cover.len() != code.n() {
        return Err(StegoError::LengthMismatch {
            expected: code.n(),
            got: cover.len(),
        });
    }
    let costs = minimizer.costs();
    if costs.len() != code.n() {
        return Err(StegoError::LengthMismatch {
            expected: code.n(),
            got: costs.len(),
        });
    }

    let v = sigma(&phi(cover));
    let e_base = base_modifier(code, &v, &m.to_poly())?;
    let (modifier, cost, comparisons) = match minimizer {
        Minimizer::Dffa(d) => {
            let out = lcdm::dffa(code, &e_base, d)?;
            (out.modifier, out.total_cost, out.comparisons)
        }
        Minimizer::Exhaustive(d) => {
            if code.k() > EXHAUSTIVE_K_CAP {
                return Err(StegoError::EnumerationCap {
                    k: code.k(),
                    cap: EXHAUSTIVE_K_CAP,
                });
            }
            cheapest_modifier(code, &e_base, d, Budget::Full)?
        }
        Minimizer::Budgeted(d, budget) => {
            cheapest_modifier(code, &e_base, d, Budget::Limit(budget.max(1)))?
        }
    };
    let stego = apply_modifier(cover, &sigma_inv(&modifier, code.n())?)?;
    Ok(Embedding {
        stego,
        modifier,
        cost,
        comparisons,
    })
}

/// Cheapest of the enumerated modifiers; ties go to the earliest.
fn cheapest_modifier(
    code: &StegoCode,
    e_base: &Gf2Poly,
    d: &DistortionMap,
    budget: Budget,
) -> Result<(Gf2Poly, f64, u64)> {
    let mut best: Option<(Gf2Poly, f64)> = None;
    let mut lookups = 0u64;
    for e in enumerate_modifiers(code, e_base, budget)? {
        lookups += e.weight() as u64;
        let c = d.cost_of(&e);
        if best.as_ref().is_none_or(|(_, bc)| c < *bc) {
            best = Some((e, c));
        }
    }
    let (e, c) = best.expect("modifier set is never empty");
    Ok((e, c, lookups))
}
