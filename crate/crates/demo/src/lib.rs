// SPDX-License-Identifier: Apache-2.0

//! Browser bindings for the polystego demo page.
//!
//! Each export is a thin wrapper over a plain Rust function so the logic is
//! testable natively. Images cross the boundary as row-major 8-bit
//! grayscale buffers.

use polystego::bench::{msg_len_for, random_bench_instance};
use polystego::codec::{base_modifier, embed, extract, phi, sigma, Minimizer};
use polystego::lcdm::{head_families, make_lcdm};
use polystego::matrix_baseline::memory_footprint;
use polystego::{worked_example, BitVector, CoverImage, DistortionMap, StegoError};
use wasm_bindgen::prelude::*;

/// Result of hiding a text message in an image.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct DemoEmbedding {
    stego: Vec<u8>,
    flips: Vec<u8>,
    cost: f64,
    comparisons: u64,
    msg_bits: usize,
}

#[wasm_bindgen]
impl DemoEmbedding {
    #[wasm_bindgen(getter)]
    pub fn stego(&self) -> Vec<u8> {
        self.stego.clone()
    }

    /// 1 where the least significant bit was flipped.
    #[wasm_bindgen(getter)]
    pub fn flips(&self) -> Vec<u8> {
        self.flips.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn cost(&self) -> f64 {
        self.cost
    }

    #[wasm_bindgen(getter)]
    pub fn comparisons(&self) -> f64 {
        self.comparisons as f64
    }

    #[wasm_bindgen(getter, js_name = msgBits)]
    pub fn msg_bits(&self) -> usize {
        self.msg_bits
    }

    #[wasm_bindgen(getter, js_name = flipCount)]
    pub fn flip_count(&self) -> usize {
        self.flips.iter().filter(|&&f| f == 1).count()
    }
}

fn text_bits(text: &str) -> Vec<u8> {
    text.bytes()
        .flat_map(|b| (0..8).rev().map(move |i| (b >> i) & 1))
        .collect()
}

fn bits_text(bits: &[u8]) -> String {
    let bytes: Vec<u8> = bits
        .chunks_exact(8)
        .map(|c| c.iter().fold(0u8, |acc, &b| (acc << 1) | b))
        .collect();
    String::from_utf8_lossy(&bytes).into_owned()
}

/// Flip cost per pixel: flat neighbourhoods are expensive, busy ones cheap.
pub fn texture_costs(width: usize, height: usize, pixels: &[u8]) -> Vec<f64> {
    let at = |x: usize, y: usize| pixels[y * width + x] as f64;
    let mut costs = Vec::with_capacity(pixels.len());
    for y in 0..height {
        for x in 0..width {
            let c = at(x, y);
            let mut activity = 0.0;
            let mut count = 0.0;
            for (dx, dy) in [(-1i64, 0i64), (1, 0), (0, -1), (0, 1)] {
                let (nx, ny) = (x as i64 + dx, y as i64 + dy);
                if nx >= 0 && ny >= 0 && (nx as usize) < width && (ny as usize) < height {
                    activity += (c - at(nx as usize, ny as usize)).abs();
                    count += 1.0;
                }
            }
            let mean = if count > 0.0 { activity / count } else { 0.0 };
            costs.push(1.0 / (1.0 + mean));
        }
    }
    costs
}

/// Hides `text` in the LSBs of a grayscale image using the family search.
pub fn hide_text(
    width: usize,
    height: usize,
    pixels: Vec<u8>,
    text: &str,
) -> Result<DemoEmbedding, StegoError> {
    let bits = text_bits(text);
    let cover = CoverImage::new(width, height, pixels)?;
    let msg_bits = bits.len();
    let code = make_lcdm(cover.len(), msg_bits)?;
    let costs = DistortionMap::new(texture_costs(width, height, cover.pixels()))?;
    let out = embed(&code, &cover, &BitVector::new(bits)?, Minimizer::Dffa(&costs))?;
    let flips = cover
        .pixels()
        .iter()
        .zip(out.stego.pixels())
        .map(|(a, b)| a ^ b)
        .collect();
    Ok(DemoEmbedding {
        stego: out.stego.into_pixels(),
        flips,
        cost: out.cost,
        comparisons: out.comparisons,
        msg_bits,
    })
}

/// Reads `msg_bits` bits back and decodes them as UTF-8 text.
pub fn reveal_text(width: usize, height: usize, pixels: Vec<u8>, msg_bits: usize) -> Result<String, StegoError> {
    let stego = CoverImage::new(width, height, pixels)?;
    let code = make_lcdm(stego.len(), msg_bits)?;
    Ok(bits_text(extract(&code, &stego)?.bits()))
}

/// Deterministic test image: a smooth gradient on the left, noisy texture on
/// the right.
pub fn synthetic(width: usize, height: usize, seed: u32) -> Vec<u8> {
    let mut state = seed.wrapping_mul(2_654_435_761).wrapping_add(1);
    let mut out = Vec::with_capacity(width * height);
    for y in 0..height {
        for x in 0..width {
            // xorshift32
            state ^= state << 13;
            state ^= state >> 17;
            state ^= state << 5;
            let base = 40.0 + 160.0 * (x + y) as f64 / (width + height).max(1) as f64;
            let v = if x < width / 2 {
                base
            } else {
                base + (state % 96) as f64 - 48.0
            };
            out.push(v.clamp(0.0, 255.0) as u8);
        }
    }
    out
}

/// Step-by-step text for the 11-pixel worked example.
pub fn worked_walkthrough() -> Result<String, StegoError> {
    let inst = worked_example::instance();
    let v = sigma(&phi(&inst.cover));
    let e_base = base_modifier(&inst.code, &v, &inst.message.to_poly())?;
    let fams = head_families(&inst.code, &e_base, &inst.costs)?;
    let out = embed(&inst.code, &inst.cover, &inst.message, Minimizer::Dffa(&inst.costs))?;
    let back = extract(&inst.code, &out.stego)?;
    let mut s = String::new();
    s += &format!("cover       {:?}\n", inst.cover.pixels());
    s += &format!("costs       {:?}\n", inst.costs.costs());
    s += &format!("message     {:?}\n", inst.message.bits());
    s += &format!("generator   {}\n", inst.code.generator());
    s += &format!("V(x)        {v}\n");
    s += &format!("E_base(x)   {e_base}\n");
    for f in &fams {
        s += &format!(
            "family x^{} positions {:?} costs {:?} -> x^{}\n",
            f.head_exponent, f.positions, f.costs, f.chosen_position
        );
    }
    s += &format!("modifier    {} (cost {}, {} comparisons)\n", out.modifier, out.cost, out.comparisons);
    s += &format!("stego       {:?}\n", out.stego.pixels());
    s += &format!("extracted   {:?}\n", back.bits());
    Ok(s)
}

/// Flattened `(n, comparisons, matrix_bytes, poly_bytes)` rows, one per size.
pub fn curve(sizes: &[usize], rate: f64, seed: u64) -> Result<Vec<f64>, StegoError> {
    if sizes.is_empty() {
        return Err(StegoError::EmptySizes);
    }
    if !(rate > 0.0 && rate < 1.0) {
        return Err(StegoError::InvalidRate(rate));
    }
    let mut rows = Vec::with_capacity(sizes.len() * 4);
    for &n in sizes {
        let msg_len = msg_len_for(n, rate);
        let (cover, message, costs) = random_bench_instance(n, msg_len, seed ^ n as u64)?;
        let code = make_lcdm(n, msg_len)?;
        let out = embed(&code, &cover, &message, Minimizer::Dffa(&costs))?;
        let mem = memory_footprint(n as u64, msg_len as u64);
        rows.extend([n as f64, out.comparisons as f64, mem.matrix_bytes, mem.poly_bytes]);
    }
    Ok(rows)
}

fn js_err(e: StegoError) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen(js_name = embedText)]
pub fn embed_text(width: usize, height: usize, pixels: Vec<u8>, text: &str) -> Result<DemoEmbedding, JsError> {
    hide_text(width, height, pixels, text).map_err(js_err)
}

#[wasm_bindgen(js_name = extractText)]
pub fn extract_text(width: usize, height: usize, pixels: Vec<u8>, msg_bits: usize) -> Result<String, JsError> {
    reveal_text(width, height, pixels, msg_bits).map_err(js_err)
}

#[wasm_bindgen(js_name = syntheticImage)]
pub fn synthetic_image(width: usize, height: usize, seed: u32) -> Vec<u8> {
    synthetic(width, height, seed)
}

#[wasm_bindgen(js_name = workedExample)]
pub fn worked_example_text() -> Result<String, JsError> {
    worked_walkthrough().map_err(js_err)
}

#[wasm_bindgen(js_name = comparisonCurve)]
pub fn comparison_curve(sizes: Vec<u32>, rate: f64, seed: u32) -> Result<Vec<f64>, JsError> {
    let sizes: Vec<usize> = sizes.into_iter().map(|s| s as usize).collect();
    curve(&sizes, rate, seed as u64).map_err(js_err)
}
