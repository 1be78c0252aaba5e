// SPDX-License-Identifier: Apache-2.0

//! Scaling measurements for LCDM embedding.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::codec::{apply_modifier, base_modifier, phi, sigma, sigma_inv, BitVector, CoverImage};
use crate::error::{Result, StegoError};
use crate::lcdm::{dffa, make_lcdm, DistortionMap};
use crate::matrix_baseline::memory_footprint;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub n: usize,
    pub msg_len: usize,
    pub seed: u64,
    pub comparisons: u64,
    pub nonzero_heads: usize,
    pub wall_time: Duration,
    pub matrix_bytes: f64,
    pub poly_bytes: f64,
}

/// Message length for a cover of `n` elements at `rate`, kept in `[1, n-1]`.
pub fn msg_len_for(n: usize, rate: f64) -> usize {
    ((n as f64 * rate).round() as usize).clamp(1, n.saturating_sub(1).max(1))
}

/// Embeds with the family search and records its counters.
pub fn measure(
    cover: &CoverImage,
    message: &BitVector,
    costs: &DistortionMap,
    seed: u64,
) -> Result<BenchRecord> {
    let n = cover.len();
    let code = make_lcdm(n, message.len())?;
    let start = Instant::now();
    let v = sigma(&phi(cover));
    let e_base = base_modifier(&code, &v, &message.to_poly())?;
    let out = dffa(&code, &e_base, costs)?;
    let stego = apply_modifier(cover, &sigma_inv(&out.modifier, n)?)?;
    let wall_time = start.elapsed();
    debug_assert_eq!(stego.len(), n);
    let mem = memory_footprint(n as u64, message.len() as u64);
    Ok(BenchRecord {
        n,
        msg_len: message.len(),
        seed,
        comparisons: out.comparisons,
        nonzero_heads: out.nonzero_heads,
        wall_time,
        matrix_bytes: mem.matrix_bytes,
        poly_bytes: mem.poly_bytes,
    })
}

fn instance_seed(seed: u64, n: usize, trial: u64) -> u64 {
    seed ^ ((n as u64) << 24) ^ trial
}

/// Random cover, message and costs in `[0, 1)` for one measurement.
pub fn random_bench_instance(
    n: usize,
    msg_len: usize,
    seed: u64,
) -> Result<(CoverImage, BitVector, DistortionMap)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pixels = vec![0u8; n];
    rng.fill(&mut pixels[..]);
    let cover = CoverImage::from_pixels(pixels)?;
    let message = BitVector::new((0..msg_len).map(|_| rng.gen_range(0..2)).collect())?;
    let costs = DistortionMap::new((0..n).map(|_| rng.gen::<f64>()).collect())?;
    Ok((cover, message, costs))
}

/// `trials` measurements per size, sizes in the given order.
pub fn run_suite_trials(
    sizes: &[usize],
    msg_rate: f64,
    seed: u64,
    trials: u64,
) -> Result<Vec<BenchRecord>> {
    if sizes.is_empty() {
        return Err(StegoError::EmptySizes);
    }
    if !(msg_rate > 0.0 && msg_rate < 1.0) {
        return Err(StegoError::InvalidRate(msg_rate));
    }
    let mut records = Vec::with_capacity(sizes.len() * trials as usize);
    for &n in sizes {
        let msg_len = msg_len_for(n, msg_rate);
        for t in 0..trials {
            let s = instance_seed(seed, n, t);
            let (cover, message, costs) = random_bench_instance(n, msg_len, s)?;
            records.push(measure(&cover, &message, &costs, s)?);
        }
    }
    Ok(records)
}

/// One measurement per size.
pub fn run_suite(sizes: &[usize], msg_rate: f64, seed: u64) -> Result<Vec<BenchRecord>> {
    run_suite_trials(sizes, msg_rate, seed, 1)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// Ordinary least squares `y = slope·x + intercept`.
pub fn linear_fit(points: &[(f64, f64)]) -> Option<LinearFit> {
    if points.len() < 2 {
        return None;
    }
    let len = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / len;
    let my = points.iter().map(|p| p.1).sum::<f64>() / len;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = points.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Some(LinearFit {
        slope,
        intercept,
        r_squared,
    })
}

pub const CSV_HEADER: &str =
    "n,comparisons,wall_time_s,matrix_bytes,poly_bytes,msg_len,nonzero_heads,seed";

/// CSV with [`CSV_HEADER`]. With `timing` off the time column is left empty so
/// output depends only on the inputs.
pub fn render_csv(records: &[BenchRecord], timing: bool) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in records {
        let time = if timing {
            format!("{:.6}", r.wall_time.as_secs_f64())
        } else {
            String::new()
        };
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{}",
            r.n, r.comparisons, time, r.matrix_bytes, r.poly_bytes, r.msg_len, r.nonzero_heads, r.seed
        );
    }
    s
}
