// SPDX-License-Identifier: Apache-2.0

//! Brute-force ground truth for small codes.
//!
//! Up to [`ORACLE_N_CAP`] positions every one of the `2^n` flip patterns is
//! tested directly with a single-word divider that shares no code with
//! [`Gf2Poly`], so the result does not presuppose the structure of the
//! modifier set.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::codec::{phi, sigma, BitVector, CoverImage, StegoCode};
use crate::error::{Result, StegoError};
use crate::gf2poly::Gf2Poly;
use crate::lcdm::{dffa, make_lcdm, DistortionMap};

/// Largest cover length searched over all `2^n` flip patterns.
pub const ORACLE_N_CAP: usize = 20;
/// Largest `k` for the formula-driven enumeration used above [`ORACLE_N_CAP`].
pub const ORACLE_K_CAP: usize = 24;

/// `l mod g` for polynomials packed in one word.
fn rem_word(mut l: u64, g: u64) -> u64 {
    let dg = 63 - g.leading_zeros();
    while l != 0 {
        let dl = 63 - l.leading_zeros();
        if dl < dg {
            break;
        }
        l ^= g << (dl - dg);
    }
    l
}

fn to_word(p: &Gf2Poly) -> u64 {
    p.words().first().copied().unwrap_or(0)
}

fn check_degrees(code: &StegoCode, v: &Gf2Poly, m: &Gf2Poly) -> Result<()> {
    if let Some(degree) = v.degree().filter(|&d| d >= code.n()) {
        return Err(StegoError::CoverTooLong { degree, n: code.n() });
    }
    if let Some(degree) = m.degree().filter(|&d| d >= code.msg_len()) {
        return Err(StegoError::MessageTooLong {
            degree,
            capacity: code.msg_len(),
        });
    }
    Ok(())
}

/// Every `e` of degree `< n` with `rem(v - e, g) = m`.
pub fn exhaust_modifiers(code: &StegoCode, v: &Gf2Poly, m: &Gf2Poly) -> Result<BTreeSet<Gf2Poly>> {
    check_degrees(code, v, m)?;
    let n = code.n();
    if n <= ORACLE_N_CAP {
        let (vw, mw, gw) = (to_word(v), to_word(m), to_word(code.generator()));
        return Ok((0u64..1 << n)
            .filter(|&e| rem_word(vw ^ e, gw) == mw)
            .map(Gf2Poly::from_u64)
            .collect());
    }
    if code.k() > ORACLE_K_CAP {
        return Err(StegoError::EnumerationCap {
            k: code.k(),
            cap: ORACLE_K_CAP,
        });
    }
    let g = code.generator();
    let e_base = (v + m).rem(g)?;
    let mut out = BTreeSet::new();
    for f in 0u64..1 << code.k() {
        let e = &e_base + &(&Gf2Poly::from_u64(f) * g);
        if (v + &e).rem(g)? == *m {
            out.insert(e);
        }
    }
    Ok(out)
}

/// Outcome of checking the family search against exhaustive search.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub n: usize,
    pub msg_len: usize,
    pub seed: Option<u64>,
    pub modifier_count: u64,
    pub best_cost: f64,
    pub best_modifier: Gf2Poly,
    pub dffa_cost: f64,
    pub dffa_modifier: Gf2Poly,
    /// `dffa_cost - best_cost`; never negative, zero when the search is optimal.
    pub gap: f64,
}

impl OracleReport {
    pub fn expected_count(&self) -> u64 {
        1u64 << (self.n - self.msg_len)
    }

    pub fn is_consistent(&self) -> bool {
        self.gap == 0.0 && self.modifier_count == self.expected_count()
    }

    /// One `key=value` line per field.
    pub fn render(&self) -> String {
        let mut s = String::new();
        let seed = self.seed.map_or_else(|| "none".to_string(), |s| s.to_string());
        let _ = writeln!(s, "n={}", self.n);
        let _ = writeln!(s, "msg_len={}", self.msg_len);
        let _ = writeln!(s, "seed={seed}");
        let _ = writeln!(s, "modifier_count={}", self.modifier_count);
        let _ = writeln!(s, "expected_count={}", self.expected_count());
        let _ = writeln!(s, "best_cost={}", self.best_cost);
        let _ = writeln!(s, "best_modifier={}", self.best_modifier.to_exponent_list());
        let _ = writeln!(s, "dffa_cost={}", self.dffa_cost);
        let _ = writeln!(s, "dffa_modifier={}", self.dffa_modifier.to_exponent_list());
        let _ = writeln!(s, "gap={}", self.gap);
        s
    }
}

/// Scores every valid modifier and compares the cheapest with the family search.
pub fn verify_dffa(
    code: &StegoCode,
    v: &Gf2Poly,
    m: &Gf2Poly,
    d: &DistortionMap,
) -> Result<OracleReport> {
    if code.n() > ORACLE_N_CAP {
        return Err(StegoError::OracleCap {
            n: code.n(),
            cap: ORACLE_N_CAP,
        });
    }
    let all = exhaust_modifiers(code, v, m)?;
    let mut best: Option<(&Gf2Poly, f64)> = None;
    for e in &all {
        let c = d.cost_of(e);
        if best.is_none_or(|(_, bc)| c < bc) {
            best = Some((e, c));
        }
    }
    let (best_modifier, best_cost) = best.expect("modifier set is never empty");
    let e_base = (v + m).rem(code.generator())?;
    let found = dffa(code, &e_base, d)?;
    Ok(OracleReport {
        n: code.n(),
        msg_len: code.msg_len(),
        seed: None,
        modifier_count: all.len() as u64,
        best_cost,
        best_modifier: best_modifier.clone(),
        dffa_cost: found.total_cost,
        dffa_modifier: found.modifier,
        gap: found.total_cost - best_cost,
    })
}

/// A reproducible random embedding problem.
#[derive(Debug, Clone)]
pub struct Instance {
    pub code: StegoCode,
    pub cover: CoverImage,
    pub message: BitVector,
    pub costs: DistortionMap,
    pub seed: u64,
}

impl Instance {
    pub fn cover_poly(&self) -> Gf2Poly {
        sigma(&phi(&self.cover))
    }
}

/// Random generator of degree `msg_len` with the top coefficient set.
pub fn random_generator<R: Rng>(rng: &mut R, msg_len: usize) -> Gf2Poly {
    let mut g = Gf2Poly::from_exponents((0..msg_len).filter(|_| rng.gen::<bool>()));
    g.flip(msg_len);
    g
}

/// Random cover, message and integer-valued costs in `[0, 255]`.
///
/// Costs are whole numbers so that sums are exact and cost ties occur often.
pub fn random_instance(n: usize, msg_len: usize, seed: u64, lcdm: bool) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let code = if lcdm {
        make_lcdm(n, msg_len)?
    } else {
        if msg_len == 0 || msg_len >= n {
            return Err(StegoError::InvalidMessageLength { n, msg_len });
        }
        StegoCode::new(n, random_generator(&mut rng, msg_len))?
    };
    let cover = CoverImage::from_pixels((0..n).map(|_| rng.gen()).collect())?;
    let message = BitVector::new((0..msg_len).map(|_| rng.gen_range(0..2)).collect())?;
    let costs = DistortionMap::new((0..n).map(|_| rng.gen_range(0..256) as f64).collect())?;
    Ok(Instance {
        code,
        cover,
        message,
        costs,
        seed,
    })
}

/// Runs [`verify_dffa`] on `trials` LCDM instances seeded `seed, seed + 1, ...`.
pub fn run_trials(n: usize, msg_len: usize, trials: u64, seed: u64) -> Result<Vec<OracleReport>> {
    if n > ORACLE_N_CAP {
        return Err(StegoError::OracleCap {
            n,
            cap: ORACLE_N_CAP,
        });
    }
    (0..trials)
        .map(|i| {
            let s = seed.wrapping_add(i);
            let inst = random_instance(n, msg_len, s, true)?;
            let mut report = verify_dffa(
                &inst.code,
                &inst.cover_poly(),
                &inst.message.to_poly(),
                &inst.costs,
            )?;
            report.seed = Some(s);
            Ok(report)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::{apply_modifier, extract, sigma_inv};

    fn p(exps: &[usize]) -> Gf2Poly {
        Gf2Poly::from_exponents(exps.iter().copied())
    }

    #[test]
    fn word_divider_matches_worked_values() {
        assert_eq!(rem_word(0b11_0100_0000, 0b1001), 0b100);
        assert_eq!(rem_word(0b10, 0b1001), 0b10);
        assert_eq!(rem_word(0, 0b1001), 0);
    }

    #[test]
    fn n6_has_sixteen_modifiers() {
        let code = StegoCode::new(6, p(&[0, 2])).unwrap();
        let set = exhaust_modifiers(&code, &p(&[0, 3, 5]), &p(&[1])).unwrap();
        assert_eq!(set.len(), 16);
    }

    #[test]
    fn current_syndrome_admits_null_modifier() {
        let code = StegoCode::new(9, p(&[0, 1, 4])).unwrap();
        let v = p(&[0, 2, 3, 7, 8]);
        let m = v.rem(code.generator()).unwrap();
        assert!(exhaust_modifiers(&code, &v, &m).unwrap().contains(&Gf2Poly::zero()));
    }

    #[test]
    fn worked_family_members_are_valid() {
        let code = make_lcdm(11, 3).unwrap();
        let set = exhaust_modifiers(&code, &p(&[0, 2, 6, 8, 9]), &p(&[0, 2])).unwrap();
        assert_eq!(set.len(), 256);
        for e in [p(&[2]), p(&[5]), p(&[8])] {
            assert!(set.contains(&e));
        }
    }

    #[test]
    fn formula_mode_above_cap() {
        let code = make_lcdm(22, 6).unwrap();
        let v = p(&[0, 5, 9, 13, 21]);
        let m = p(&[1, 4]);
        let set = exhaust_modifiers(&code, &v, &m).unwrap();
        assert_eq!(set.len(), 1 << 16);
        let big = make_lcdm(40, 6).unwrap();
        assert!(matches!(
            exhaust_modifiers(&big, &v, &m),
            Err(StegoError::EnumerationCap { k: 34, .. })
        ));
    }

    #[test]
    fn every_modifier_round_trips() {
        let inst = random_instance(10, 3, 7, false).unwrap();
        let set =
            exhaust_modifiers(&inst.code, &inst.cover_poly(), &inst.message.to_poly()).unwrap();
        assert_eq!(set.len(), 128);
        for e in &set {
            let stego = apply_modifier(&inst.cover, &sigma_inv(e, 10).unwrap()).unwrap();
            assert_eq!(extract(&inst.code, &stego).unwrap(), inst.message);
        }
    }

    #[test]
    fn worked_instance_report() {
        let code = make_lcdm(11, 3).unwrap();
        let d = DistortionMap::new(vec![
            223.0, 3.0, 12.0, 4.0, 163.0, 43.0, 2.0, 12.0, 1.0, 23.0, 2.0,
        ])
        .unwrap();
        let r = verify_dffa(&code, &p(&[0, 2, 6, 8, 9]), &p(&[0, 2]), &d).unwrap();
        assert_eq!((r.best_cost, r.dffa_cost, r.gap), (1.0, 1.0, 0.0));
        assert_eq!(r.best_modifier, p(&[8]));
        assert!(r.is_consistent());
        assert!(r.render().contains("gap=0\n"));
    }

    #[test]
    fn uniform_costs_single_head() {
        let code = make_lcdm(12, 4).unwrap();
        let v = p(&[1]);
        let m = Gf2Poly::zero();
        let d = DistortionMap::uniform(12, 3.0).unwrap();
        let r = verify_dffa(&code, &v, &m, &d).unwrap();
        assert_eq!((r.best_cost, r.gap), (3.0, 0.0));
    }

    #[test]
    fn random_sweep_has_no_gap() {
        for n in [6usize, 9, 12, 16] {
            for msg_len in [1, n / 3, n - 1] {
                for r in run_trials(n, msg_len, 6, 100 + n as u64).unwrap() {
                    assert!(r.is_consistent(), "{}", r.render());
                }
            }
        }
    }

    #[test]
    fn caps() {
        assert!(matches!(
            run_trials(30, 3, 1, 0),
            Err(StegoError::OracleCap { n: 30, .. })
        ));
    }
}
