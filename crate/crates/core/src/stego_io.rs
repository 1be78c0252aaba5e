// SPDX-License-Identifier: Apache-2.0

//! On-disk formats.
//!
//! * images: binary PGM (`P5`, maxval 255), pixels in row-major order
//! * costs: whitespace-separated nonnegative decimals, one per pixel
//! * messages: ASCII `0`/`1`, character `i` is the coefficient of `x^i`
//! * generators: ascending exponent list, `"0 3"` is `1 + x^3`

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::codec::{BitVector, CoverImage};
use crate::error::StegoError;
use crate::gf2poly::{Gf2Poly, PolyError};
use crate::lcdm::DistortionMap;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("unsupported image format {0:?}; only binary PGM (P5) is accepted")]
    UnsupportedFormat(String),
    #[error("malformed PGM header: {0}")]
    MalformedHeader(&'static str),
    #[error("PGM maxval must be 255, got {0}")]
    BadMaxval(u32),
    #[error("PGM payload truncated: expected {expected} bytes, got {got}")]
    Truncated { expected: usize, got: usize },
    #[error("cost {index}: cannot parse {token:?}")]
    CostParse { index: usize, token: String },
    #[error("cost map has {got} values, image has {expected} pixels")]
    CostCount { expected: usize, got: usize },
    #[error("cost {index} is {value}; costs must be finite and nonnegative")]
    NegativeCost { index: usize, value: f64 },
    #[error("message character {index} is {ch:?}; only '0' and '1' are allowed")]
    MessageChar { index: usize, ch: char },
    #[error("generator: {0}")]
    Generator(#[from] PolyError),
    #[error(transparent)]
    Domain(#[from] StegoError),
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> IoError + '_ {
    move |source| IoError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn read_text(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(io_err(path))
}

/// Writes through a temporary file in the same directory and renames it into
/// place, so a failure never leaves a partial file at `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), IoError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err(path))?;
    tmp.write_all(bytes).map_err(io_err(path))?;
    tmp.persist(path).map_err(|e| IoError::Io {
        path: path.to_path_buf(),
        source: e.error,
    })?;
    Ok(())
}

struct HeaderReader<'a> {
    data: &'a [u8],
    pos: usize,
}

impl HeaderReader<'_> {
    fn skip_space_and_comments(&mut self) {
        while let Some(&b) = self.data.get(self.pos) {
            if b == b'#' {
                while self.data.get(self.pos).is_some_and(|&c| c != b'\n') {
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &'static str) -> Result<u32, IoError> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.data.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(IoError::MalformedHeader(what));
        }
        std::str::from_utf8(&self.data[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or(IoError::MalformedHeader(what))
    }
}

pub fn parse_pgm(data: &[u8]) -> Result<CoverImage, IoError> {
    let magic = data.get(..2).ok_or(IoError::MalformedHeader("missing magic"))?;
    if magic != b"P5" {
        return Err(IoError::UnsupportedFormat(
            String::from_utf8_lossy(magic).into_owned(),
        ));
    }
    let mut hdr = HeaderReader { data, pos: 2 };
    if !data.get(2).is_some_and(u8::is_ascii_whitespace) {
        return Err(IoError::MalformedHeader("magic not followed by whitespace"));
    }
    let width = hdr.number("width")? as usize;
    let height = hdr.number("height")? as usize;
    let maxval = hdr.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(IoError::MalformedHeader("zero dimension"));
    }
    if maxval != 255 {
        return Err(IoError::BadMaxval(maxval));
    }
    // exactly one whitespace byte separates the header from the raster
    if !data.get(hdr.pos).is_some_and(u8::is_ascii_whitespace) {
        return Err(IoError::MalformedHeader("maxval not followed by whitespace"));
    }
    let body = &data[hdr.pos + 1..];
    let expected = width
        .checked_mul(height)
        .ok_or(IoError::MalformedHeader("dimensions overflow"))?;
    if body.len() < expected {
        return Err(IoError::Truncated {
            expected,
            got: body.len(),
        });
    }
    Ok(CoverImage::new(width, height, body[..expected].to_vec())?)
}

/// Canonical `P5` encoding: `P5\n<w> <h>\n255\n` followed by the raster.
pub fn render_pgm(image: &CoverImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", image.width(), image.height()).into_bytes();
    out.extend_from_slice(image.pixels());
    out
}

pub fn read_pgm(path: &Path) -> Result<CoverImage, IoError> {
    parse_pgm(&fs::read(path).map_err(io_err(path))?)
}

pub fn write_pgm(path: &Path, image: &CoverImage) -> Result<(), IoError> {
    write_atomic(path, &render_pgm(image))
}

pub fn parse_costs(text: &str, n: usize) -> Result<DistortionMap, IoError> {
    let mut costs = Vec::with_capacity(n);
    for (index, tok) in text.split_whitespace().enumerate() {
        let value: f64 = tok.parse().map_err(|_| IoError::CostParse {
            index,
            token: tok.to_string(),
        })?;
        if !value.is_finite() || value < 0.0 {
            return Err(IoError::NegativeCost { index, value });
        }
        costs.push(value);
    }
    if costs.len() != n {
        return Err(IoError::CostCount {
            expected: n,
            got: costs.len(),
        });
    }
    Ok(DistortionMap::new(costs)?)
}

/// Space-separated shortest round-trip decimal forms, newline terminated.
pub fn render_costs(d: &DistortionMap) -> String {
    let mut s = d
        .costs()
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    s.push('\n');
    s
}

pub fn read_costs(path: &Path, n: usize) -> Result<DistortionMap, IoError> {
    parse_costs(&read_text(path)?, n)
}

/// Surrounding whitespace is ignored; anything else must be `0` or `1`.
pub fn parse_message(text: &str) -> Result<BitVector, IoError> {
    let bits = text
        .trim()
        .chars()
        .enumerate()
        .map(|(index, ch)| match ch {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(IoError::MessageChar { index, ch }),
        })
        .collect::<Result<Vec<u8>, _>>()?;
    Ok(BitVector::new(bits)?)
}

pub fn render_message(m: &BitVector) -> String {
    let mut s: String = m.bits().iter().map(|&b| if b == 1 { '1' } else { '0' }).collect();
    s.push('\n');
    s
}

pub fn read_message(path: &Path) -> Result<BitVector, IoError> {
    parse_message(&read_text(path)?)
}

pub fn write_message(path: &Path, m: &BitVector) -> Result<(), IoError> {
    write_atomic(path, render_message(m).as_bytes())
}

pub fn parse_gen(text: &str) -> Result<Gf2Poly, IoError> {
    Ok(Gf2Poly::parse_exponent_list(text)?)
}

pub fn render_gen(g: &Gf2Poly) -> String {
    let mut s = g.to_exponent_list();
    s.push('\n');
    s
}

pub fn read_gen(path: &Path) -> Result<Gf2Poly, IoError> {
    parse_gen(&read_text(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const J: [u8; 11] = [163, 18, 153, 20, 100, 26, 15, 212, 243, 53, 86];

    #[test]
    fn worked_pgm() {
        let mut bytes = b"P5\n11 1\n255\n".to_vec();
        bytes.extend_from_slice(&J);
        let img = parse_pgm(&bytes).unwrap();
        assert_eq!(img.pixels(), &J);
        assert_eq!((img.width(), img.height()), (11, 1));
        assert_eq!(render_pgm(&img), bytes);
    }

    #[test]
    fn pgm_header_with_comment() {
        let mut bytes = b"P5 # made by hand\n2\t2 # dims\n255\n".to_vec();
        bytes.extend_from_slice(&[1, 2, 3, 4]);
        assert_eq!(parse_pgm(&bytes).unwrap().pixels(), &[1, 2, 3, 4]);
    }

    #[test]
    fn pgm_rejections() {
        assert!(matches!(
            parse_pgm(b"P2\n1 1\n255\n7\n"),
            Err(IoError::UnsupportedFormat(m)) if m == "P2"
        ));
        assert!(matches!(
            parse_pgm(b"P5\n1 1\n65535\n\0\0"),
            Err(IoError::BadMaxval(65535))
        ));
        assert!(matches!(
            parse_pgm(b"P5\n3 2\n255\n\x01\x02"),
            Err(IoError::Truncated { expected: 6, got: 2 })
        ));
        assert!(matches!(parse_pgm(b"P5\nx 2\n255\n"), Err(IoError::MalformedHeader(_))));
        assert!(matches!(parse_pgm(b"P5\n0 2\n255\n"), Err(IoError::MalformedHeader(_))));
        assert!(matches!(parse_pgm(b"P"), Err(IoError::MalformedHeader(_))));
    }

    #[test]
    fn worked_costs_message_generator() {
        let d = parse_costs("223 3 12 4 163 43 2 12 1 23 2", 11).unwrap();
        assert_eq!(
            d.costs(),
            &[223.0, 3.0, 12.0, 4.0, 163.0, 43.0, 2.0, 12.0, 1.0, 23.0, 2.0]
        );
        assert_eq!(parse_message("101\n").unwrap().bits(), &[1, 0, 1]);
        assert_eq!(
            parse_gen("0 3").unwrap(),
            Gf2Poly::from_exponents([0, 3])
        );
    }

    #[test]
    fn text_rejections() {
        assert!(matches!(
            parse_costs("1 2 3", 4),
            Err(IoError::CostCount { expected: 4, got: 3 })
        ));
        assert!(matches!(
            parse_costs("1 -2 3", 3),
            Err(IoError::NegativeCost { index: 1, .. })
        ));
        assert!(matches!(
            parse_costs("1 two 3", 3),
            Err(IoError::CostParse { index: 1, .. })
        ));
        assert!(matches!(
            parse_message("1021"),
            Err(IoError::MessageChar { index: 2, ch: '2' })
        ));
        assert!(matches!(
            parse_gen("0 3 3"),
            Err(IoError::Generator(PolyError::DuplicateExponent(3)))
        ));
        assert!(matches!(
            parse_gen("3 0"),
            Err(IoError::Generator(PolyError::DescendingExponent { .. }))
        ));
    }

    #[test]
    fn files_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let img = CoverImage::new(3, 2, vec![0, 1, 2, 253, 254, 255]).unwrap();
        let path = dir.path().join("a.pgm");
        write_pgm(&path, &img).unwrap();
        assert_eq!(read_pgm(&path).unwrap(), img);
        let first = fs::read(&path).unwrap();
        write_pgm(&path, &read_pgm(&path).unwrap()).unwrap();
        assert_eq!(fs::read(&path).unwrap(), first);

        let mpath = dir.path().join("m.txt");
        let m = BitVector::new(vec![0, 1, 1, 0, 1]).unwrap();
        write_message(&mpath, &m).unwrap();
        assert_eq!(read_message(&mpath).unwrap(), m);

        assert!(matches!(
            read_pgm(&dir.path().join("missing.pgm")),
            Err(IoError::Io { .. })
        ));
    }

    proptest! {
        #[test]
        fn pgm_round_trip(w in 1usize..20, h in 1usize..20, seed in any::<u64>()) {
            let pixels: Vec<u8> = (0..w * h).map(|i| (seed.rotate_left(i as u32 % 64) as u8) ^ i as u8).collect();
            let img = CoverImage::new(w, h, pixels).unwrap();
            prop_assert_eq!(parse_pgm(&render_pgm(&img)).unwrap(), img);
        }

        #[test]
        fn text_formats_round_trip(
            costs in prop::collection::vec(0.0f64..1e6, 1..50),
            bits in prop::collection::vec(0u8..2, 0..80),
            exps in prop::collection::btree_set(0usize..5000, 0..30),
        ) {
            let d = DistortionMap::new(costs.clone()).unwrap();
            prop_assert_eq!(parse_costs(&render_costs(&d), costs.len()).unwrap(), d);
            let m = BitVector::new(bits).unwrap();
            prop_assert_eq!(parse_message(&render_message(&m)).unwrap(), m);
            let g = Gf2Poly::from_exponents(exps);
            prop_assert_eq!(parse_gen(&render_gen(&g)).unwrap(), g);
        }
    }
}
