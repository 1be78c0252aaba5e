// SPDX-License-Identifier: Apache-2.0

//! The LCDM code, `g = 1 + x^(n-k)`, and its family search.
//!
//! Modulo `1 + x^t` every exponent reduces to its residue mod `t`, so the
//! syndrome is the parity of each residue class. A head `x^h` of the base
//! modifier can therefore be replaced by any `x^(h + l·t)` below `n` without
//! changing the syndrome. The search picks the cheapest member of each
//! such family.

use crate::codec::StegoCode;
use crate::error::{Result, StegoError};
use crate::gf2poly::Gf2Poly;

/// Per-position flip costs.
#[derive(Debug, Clone, PartialEq)]
pub struct DistortionMap {
    costs: Vec<f64>,
}

impl DistortionMap {
    /// Rejects negative, NaN and infinite costs.
    pub fn new(costs: Vec<f64>) -> Result<Self> {
        if let Some((index, &value)) = costs
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_finite() || **c < 0.0)
        {
            return Err(StegoError::BadCost { index, value });
        }
        Ok(Self { costs })
    }

    pub fn uniform(n: usize, cost: f64) -> Result<Self> {
        Self::new(vec![cost; n])
    }

    pub fn len(&self) -> usize {
        self.costs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.costs.is_empty()
    }

    pub fn costs(&self) -> &[f64] {
        &self.costs
    }

    pub fn cost(&self, position: usize) -> f64 {
        self.costs[position]
    }

    /// Additive cost of flipping every position set in `e`, summed in
    /// ascending position order.
    ///
    /// # Panics
    /// If `e` has a term at or beyond `self.len()`.
    pub fn cost_of(&self, e: &Gf2Poly) -> f64 {
        e.exponents().fold(0.0, |acc, i| acc + self.costs[i])
    }
}

/// `1 + x^msg_len` over a cover of `n` elements.
pub fn make_lcdm(n: usize, msg_len: usize) -> Result<StegoCode> {
    if msg_len == 0 || msg_len >= n {
        return Err(StegoError::InvalidMessageLength { n, msg_len });
    }
    StegoCode::new(n, Gf2Poly::from_exponents([0, msg_len]))
}

/// One head term of the base modifier together with its shifts.
#[derive(Debug, Clone, PartialEq)]
pub struct HeadFamily {
    pub head_exponent: usize,
    /// `h, h + t, ..., h + L·t` with `L = floor((n - 1 - h) / t)`.
    pub positions: Vec<usize>,
    pub costs: Vec<f64>,
    pub chosen_position: usize,
    pub chosen_cost: f64,
}

impl HeadFamily {
    fn build(head: usize, n: usize, step: usize, d: &DistortionMap) -> Self {
        let positions: Vec<usize> = (head..n).step_by(step).collect();
        let costs: Vec<f64> = positions.iter().map(|&p| d.cost(p)).collect();
        // strict `<` keeps the smallest position on ties
        let mut best = 0;
        for (i, &c) in costs.iter().enumerate().skip(1) {
            if c < costs[best] {
                best = i;
            }
        }
        Self {
            head_exponent: head,
            chosen_position: positions[best],
            chosen_cost: costs[best],
            positions,
            costs,
        }
    }
}

fn check_inputs(code: &StegoCode, e_base: &Gf2Poly, d: &DistortionMap) -> Result<()> {
    if !code.is_lcdm() {
        return Err(StegoError::NotLcdm(code.generator().to_string()));
    }
    if d.len() != code.n() {
        return Err(StegoError::LengthMismatch {
            expected: code.n(),
            got: d.len(),
        });
    }
    if let Some(degree) = e_base.degree().filter(|&deg| deg >= code.msg_len()) {
        return Err(StegoError::MessageTooLong {
            degree,
            capacity: code.msg_len(),
        });
    }
    Ok(())
}

/// One family per nonzero coefficient of `e_base`, in ascending head order.
pub fn head_families(
    code: &StegoCode,
    e_base: &Gf2Poly,
    d: &DistortionMap,
) -> Result<Vec<HeadFamily>> {
    check_inputs(code, e_base, d)?;
    let step = code.msg_len();
    Ok(e_base
        .exponents()
        .map(|h| HeadFamily::build(h, code.n(), step, d))
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct DffaOutcome {
    /// One term per family, at the family's cheapest position.
    pub modifier: Gf2Poly,
    pub total_cost: f64,
    /// Total family size, i.e. the number of cost lookups.
    pub comparisons: u64,
    pub nonzero_heads: usize,
}

/// Distortion family search over an LCDM code.
pub fn dffa(code: &StegoCode, e_base: &Gf2Poly, d: &DistortionMap) -> Result<DffaOutcome> {
    check_inputs(code, e_base, d)?;
    let n = code.n();
    let step = code.msg_len();
    let mut modifier = Gf2Poly::zero();
    let mut comparisons = 0u64;
    let mut nonzero_heads = 0;
    for h in e_base.exponents() {
        let mut best = h;
        let mut best_cost = d.cost(h);
        let mut pos = h;
        comparisons += 1;
        loop {
            pos += step;
            if pos >= n {
                break;
            }
            comparisons += 1;
            let c = d.cost(pos);
            if c < best_cost {
                best = pos;
                best_cost = c;
            }
        }
        modifier.flip(best);
        nonzero_heads += 1;
    }
    modifier.normalize();
    let total_cost = d.cost_of(&modifier);
    Ok(DffaOutcome {
        modifier,
        total_cost,
        comparisons,
        nonzero_heads,
    })
}

/// Checks `x^h + Σ_{l=1..L} x^h·g·x^((l-1)(n-k)) = x^(h + L(n-k))` by
/// evaluating both sides with ring operations.
pub fn shift_identity_check(h: usize, shifts: usize, code: &StegoCode) -> Result<bool> {
    let step = code.msg_len();
    let n = code.n();
    let top = shifts
        .checked_mul(step)
        .and_then(|s| s.checked_add(h))
        .filter(|&t| t < n);
    let Some(top) = top else {
        return Err(StegoError::ShiftOverflow {
            h,
            shifts,
            step,
            n,
        });
    };
    let head = Gf2Poly::monomial(h);
    let hg = &head * code.generator();
    let mut lhs = head;
    for l in 1..=shifts {
        lhs += &hg.shift((l - 1) * step);
    }
    Ok(lhs == Gf2Poly::monomial(top))
}
