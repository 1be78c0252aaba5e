// SPDX-License-Identifier: Apache-2.0

//! Dense bit-packed polynomials over GF(2).
//!
//! Bit `i` of the packed representation is the coefficient of `x^i`
//! (LSB-first). Words above the degree may be zero; equality, hashing,
//! ordering and [`Gf2Poly::degree`] all ignore that padding.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul};

use thiserror::Error;

const WORD_BITS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("invalid exponent token {0:?}")]
    BadExponent(String),
    #[error("exponent {0} listed more than once")]
    DuplicateExponent(usize),
    #[error("exponent {next} follows {prev}; exponents must be ascending")]
    DescendingExponent { prev: usize, next: usize },
}

/// A polynomial in GF(2)\[x\].
#[derive(Clone, Default)]
pub struct Gf2Poly {
    words: Vec<u64>,
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Self { words: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    /// `x^e`.
    pub fn monomial(e: usize) -> Self {
        let mut words = vec![0u64; e / WORD_BITS + 1];
        words[e / WORD_BITS] = 1 << (e % WORD_BITS);
        Self { words }
    }

    /// Builds a polynomial from its packed LSB-first words.
    pub fn from_words(words: Vec<u64>) -> Self {
        Self { words }
    }

    /// Low 64 coefficients packed into a single word.
    pub fn from_u64(bits: u64) -> Self {
        Self { words: vec![bits] }
    }

    /// Sum of `x^e` over the given exponents. Repeated exponents cancel.
    pub fn from_exponents<I: IntoIterator<Item = usize>>(exponents: I) -> Self {
        let mut p = Self::zero();
        for e in exponents {
            p.flip(e);
        }
        p
    }

    /// Coefficient `i` is `bits[i] & 1`.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut words = vec![0u64; bits.len().div_ceil(WORD_BITS)];
        for (i, &b) in bits.iter().enumerate() {
            if b & 1 == 1 {
                words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
            }
        }
        Self { words }
    }

    pub fn words(&self) -> &[u64] {
        let used = self.used_words();
        &self.words[..used]
    }

    fn used_words(&self) -> usize {
        self.words
            .iter()
            .rposition(|&w| w != 0)
            .map_or(0, |i| i + 1)
    }

    /// Drops zero padding words.
    pub fn normalize(&mut self) {
        let used = self.used_words();
        self.words.truncate(used);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Largest exponent with a nonzero coefficient, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let top = self.words.iter().rposition(|&w| w != 0)?;
        let w = self.words[top];
        Some(top * WORD_BITS + (WORD_BITS - 1 - w.leading_zeros() as usize))
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words
            .get(i / WORD_BITS)
            .is_some_and(|w| (w >> (i % WORD_BITS)) & 1 == 1)
    }

    /// Toggles the coefficient of `x^i`.
    pub fn flip(&mut self, i: usize) {
        let wi = i / WORD_BITS;
        if wi >= self.words.len() {
            self.words.resize(wi + 1, 0);
        }
        self.words[wi] ^= 1 << (i % WORD_BITS);
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Exponents with nonzero coefficients, ascending.
    pub fn exponents(&self) -> Exponents<'_> {
        Exponents {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    /// Coefficients `0..len` as 0/1 bytes. Higher coefficients are dropped.
    pub fn to_bits(&self, len: usize) -> Vec<u8> {
        (0..len).map(|i| self.coeff(i) as u8).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w ^= s;
        }
        Self { words }
    }

    /// Carry-less product.
    pub fn mul(&self, other: &Self) -> Self {
        let (dense, sparse) = if self.weight() >= other.weight() {
            (self, other)
        } else {
            (other, self)
        };
        let (Some(da), Some(db)) = (dense.degree(), sparse.degree()) else {
            return Self::zero();
        };
        let mut out = vec![0u64; (da + db) / WORD_BITS + 1];
        let src = dense.words();
        for e in sparse.exponents() {
            xor_shifted(&mut out, src, e);
        }
        Self { words: out }
    }

    /// Multiplication by `x^s`.
    pub fn shift(&self, s: usize) -> Self {
        let Some(d) = self.degree() else {
            return Self::zero();
        };
        let mut out = vec![0u64; (d + s) / WORD_BITS + 1];
        xor_shifted(&mut out, self.words(), s);
        Self { words: out }
    }

    /// Remainder of `self` divided by `g`.
    pub fn rem(&self, g: &Self) -> Result<Self, PolyError> {
        self.long_division(g, false).map(|(_, r)| r)
    }

    /// Quotient and remainder: `self = q·g + r` with `deg r < deg g`.
    pub fn div_rem(&self, g: &Self) -> Result<(Self, Self), PolyError> {
        self.long_division(g, true)
    }

    fn long_division(&self, g: &Self, want_quotient: bool) -> Result<(Self, Self), PolyError> {
        let dg = g.degree().ok_or(PolyError::DivisionByZero)?;
        let mut r = self.words().to_vec();
        let mut q = Vec::new();
        let Some(dl) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if dl < dg {
            return Ok((Self::zero(), Self { words: r }));
        }
        if want_quotient {
            q = vec![0u64; (dl - dg) / WORD_BITS + 1];
        }

        // Sparse generators (e.g. 1 + x^t) are cheaper to subtract term by
        // term than word by word.
        let g_words = g.words();
        let g_terms: Vec<usize> = g.exponents().collect();
        let sparse = g_terms.len() * 4 < g_words.len();

        let mut wi = r.len();
        while wi > 0 {
            let idx = wi - 1;
            loop {
                let w = r[idx];
                if w == 0 {
                    break;
                }
                let top = idx * WORD_BITS + (WORD_BITS - 1 - w.leading_zeros() as usize);
                if top < dg {
                    break;
                }
                let s = top - dg;
                if sparse {
                    for &t in &g_terms {
                        let b = t + s;
                        r[b / WORD_BITS] ^= 1 << (b % WORD_BITS);
                    }
                } else {
                    xor_shifted(&mut r, g_words, s);
                }
                if want_quotient {
                    q[s / WORD_BITS] |= 1 << (s % WORD_BITS);
                }
            }
            if idx * WORD_BITS < dg {
                break;
            }
            wi -= 1;
        }
        let mut rem = Self { words: r };
        rem.normalize();
        let mut quot = Self { words: q };
        quot.normalize();
        Ok((quot, rem))
    }

    /// Ascending exponent list, e.g. `"0 3"` for `1 + x^3`. Zero renders as `""`.
    pub fn to_exponent_list(&self) -> String {
        let mut out = String::new();
        for (i, e) in self.exponents().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&e.to_string());
        }
        out
    }

    /// Parses a whitespace-separated, strictly ascending exponent list.
    pub fn parse_exponent_list(text: &str) -> Result<Self, PolyError> {
        let mut p = Self::zero();
        let mut prev: Option<usize> = None;
        for tok in text.split_whitespace() {
            let e: usize = tok
                .parse()
                .map_err(|_| PolyError::BadExponent(tok.to_string()))?;
            match prev {
                Some(pe) if pe == e => return Err(PolyError::DuplicateExponent(e)),
                Some(pe) if pe > e => return Err(PolyError::DescendingExponent { prev: pe, next: e }),
                _ => {}
            }
            p.flip(e);
            prev = Some(e);
        }
        Ok(p)
    }
}

/// `dst ^= src · x^shift`. `dst` must be long enough to hold the result.
fn xor_shifted(dst: &mut [u64], src: &[u64], shift: usize) {
    let ws = shift / WORD_BITS;
    let bs = shift % WORD_BITS;
    if bs == 0 {
        for (d, s) in dst[ws..].iter_mut().zip(src) {
            *d ^= s;
        }
        return;
    }
    let mut carry = 0u64;
    for (i, &s) in src.iter().enumerate() {
        dst[ws + i] ^= (s << bs) | carry;
        carry = s >> (WORD_BITS - bs);
    }
    if carry != 0 {
        dst[ws + src.len()] ^= carry;
    }
}

pub struct Exponents<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Exponents<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let tz = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD_BITS + tz);
            }
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
    }
}

impl PartialEq for Gf2Poly {
    fn eq(&self, other: &Self) -> bool {
        self.words() == other.words()
    }
}

impl Eq for Gf2Poly {}

impl Hash for Gf2Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.words().hash(state);
    }
}

impl Ord for Gf2Poly {
    /// Orders polynomials as the binary integers their coefficients spell.
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (self.words(), other.words());
        a.len()
            .cmp(&b.len())
            .then_with(|| a.iter().rev().cmp(b.iter().rev()))
    }
}

impl PartialOrd for Gf2Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, e) in self.exponents().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match e {
                0 => f.write_str("1")?,
                1 => f.write_str("x")?,
                _ => write!(f, "x^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Poly({self})")
    }
}

impl Add for &Gf2Poly {
    type Output = Gf2Poly;
    fn add(self, rhs: &Gf2Poly) -> Gf2Poly {
        Gf2Poly::add(self, rhs)
    }
}

impl Add for Gf2Poly {
    type Output = Gf2Poly;
    fn add(mut self, rhs: Gf2Poly) -> Gf2Poly {
        self += &rhs;
        self
    }
}

impl AddAssign<&Gf2Poly> for Gf2Poly {
    fn add_assign(&mut self, rhs: &Gf2Poly) {
        if self.words.len() < rhs.words.len() {
            self.words.resize(rhs.words.len(), 0);
        }
        for (w, r) in self.words.iter_mut().zip(&rhs.words) {
            *w ^= r;
        }
    }
}

impl Mul for &Gf2Poly {
    type Output = Gf2Poly;
    fn mul(self, rhs: &Gf2Poly) -> Gf2Poly {
        Gf2Poly::mul(self, rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(exps: &[usize]) -> Gf2Poly {
        Gf2Poly::from_exponents(exps.iter().copied())
    }

    /// Bit-at-a-time divider working on a plain `Vec<bool>`.
    fn naive_rem(l: &Gf2Poly, g: &Gf2Poly) -> Gf2Poly {
        let dg = g.degree().unwrap();
        let len = l.degree().map_or(0, |d| d + 1);
        let mut bits: Vec<bool> = (0..len).map(|i| l.coeff(i)).collect();
        let gbits: Vec<bool> = (0..=dg).map(|i| g.coeff(i)).collect();
        for top in (dg..len).rev() {
            if bits[top] {
                for (j, &gb) in gbits.iter().enumerate() {
                    bits[top - dg + j] ^= gb;
                }
            }
        }
        Gf2Poly::from_exponents((0..len.min(dg)).filter(|&i| bits[i]))
    }

    #[test]
    fn add_examples() {
        assert!((&p(&[0, 2]) + &p(&[0, 2])).is_zero());
        assert_eq!(&p(&[0, 2, 6, 8, 9]) + &p(&[0, 2]), p(&[6, 8, 9]));
        assert_eq!(&p(&[0, 1]) + &p(&[1, 3]), p(&[0, 3]));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&p(&[2]) * &p(&[0, 3]), p(&[2, 5]));
        assert!((&p(&[0, 4, 70]) * &Gf2Poly::zero()).is_zero());
        assert_eq!(&p(&[0, 1]) * &p(&[0, 1]), p(&[0, 2]));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(p(&[0, 1]).shift(2), p(&[2, 3]));
        assert_eq!(p(&[0, 5, 64]).shift(0), p(&[0, 5, 64]));
        assert_eq!(p(&[2]).shift(6), &p(&[2]) * &Gf2Poly::monomial(6));
        assert_eq!(p(&[2]).shift(6), p(&[8]));
    }

    #[test]
    fn rem_examples() {
        let g = p(&[0, 3]);
        assert_eq!(p(&[6, 8, 9]).rem(&g).unwrap(), p(&[2]));
        assert_eq!(p(&[0, 1]).rem(&g).unwrap(), p(&[0, 1]));
        assert_eq!(p(&[0, 2, 6, 9]).rem(&g).unwrap(), p(&[0, 2]));
        assert!(Gf2Poly::zero().rem(&g).unwrap().is_zero());
        assert_eq!(p(&[1]).rem(&Gf2Poly::zero()), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn degree_examples() {
        assert_eq!(p(&[0, 3]).degree(), Some(3));
        assert_eq!(Gf2Poly::zero().degree(), None);
        assert_eq!(p(&[8]).degree(), Some(8));
    }

    #[test]
    fn padding_is_invisible() {
        let a = Gf2Poly::from_words(vec![0b101, 0, 0]);
        let b = Gf2Poly::from_u64(0b101);
        assert_eq!(a, b);
        assert_eq!(a.degree(), Some(2));
        assert_eq!(a.cmp(&b), Ordering::Equal);
        assert!(Gf2Poly::from_words(vec![0, 0]).is_zero());
    }

    #[test]
    fn exponent_list_text() {
        assert_eq!(Gf2Poly::parse_exponent_list("0 3").unwrap(), p(&[0, 3]));
        assert_eq!(p(&[0, 3]).to_exponent_list(), "0 3");
        assert_eq!(
            Gf2Poly::parse_exponent_list("3 3"),
            Err(PolyError::DuplicateExponent(3))
        );
        assert_eq!(
            Gf2Poly::parse_exponent_list("3 0"),
            Err(PolyError::DescendingExponent { prev: 3, next: 0 })
        );
        assert!(matches!(
            Gf2Poly::parse_exponent_list("0 x"),
            Err(PolyError::BadExponent(_))
        ));
    }

    #[test]
    fn sparse_and_dense_division_agree() {
        let g = p(&[0, 1000]);
        let dense_g = p(&(0..=1000).step_by(3).chain([1000]).collect::<Vec<_>>());
        let l = p(&(0..5000).filter(|i| i % 7 == 1 || i % 11 == 0).collect::<Vec<_>>());
        assert_eq!(l.rem(&g).unwrap(), naive_rem(&l, &g));
        assert_eq!(l.rem(&dense_g).unwrap(), naive_rem(&l, &dense_g));
    }

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = Gf2Poly> {
        prop::collection::vec(0..=max_deg, 0..40).prop_map(Gf2Poly::from_exponents)
    }

    fn arb_nonzero(max_deg: usize) -> impl Strategy<Value = Gf2Poly> {
        arb_poly(max_deg).prop_filter("nonzero", |g| !g.is_zero())
    }

    proptest! {
        #[test]
        fn remainder_reduction(a in arb_poly(300), b in arb_poly(300), g in arb_nonzero(150)) {
            let lhs = (&(&g * &b) + &a).rem(&g).unwrap();
            prop_assert_eq!(lhs, a.rem(&g).unwrap());
        }

        #[test]
        fn division_identity(a in arb_poly(400), g in arb_nonzero(200)) {
            let (q, r) = a.div_rem(&g).unwrap();
            prop_assert!(r.degree().map_or(true, |d| d < g.degree().unwrap()));
            prop_assert_eq!(&(&q * &g) + &r, a);
        }

        #[test]
        fn ring_laws(a in arb_poly(200), b in arb_poly(200), c in arb_poly(200)) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a + &a).is_zero());
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn mul_degree_adds(a in arb_nonzero(200), b in arb_nonzero(200)) {
            prop_assert_eq!((&a * &b).degree(), Some(a.degree().unwrap() + b.degree().unwrap()));
        }

        #[test]
        fn shift_is_monomial_mul(a in arb_poly(300), s in 0usize..300) {
            prop_assert_eq!(a.shift(s), &a * &Gf2Poly::monomial(s));
        }

        #[test]
        fn exponent_list_roundtrip(a in arb_poly(500)) {
            prop_assert_eq!(Gf2Poly::parse_exponent_list(&a.to_exponent_list()).unwrap(), a);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn rem_matches_naive_large(
            l in prop::collection::vec(0usize..10_000, 0..2_000).prop_map(Gf2Poly::from_exponents),
            g in prop::collection::vec(0usize..3_000, 1..400).prop_map(Gf2Poly::from_exponents)
                .prop_filter("nonzero", |g| !g.is_zero()),
        ) {
            prop_assert_eq!(l.rem(&g).unwrap(), naive_rem(&l, &g));
        }
    }
}
