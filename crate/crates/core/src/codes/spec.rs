//! Text grammar naming the codes the tools can build.
//!
//! ```text
//! ebch:32,26          extended BCH
//! bch:31,21           narrow-sense BCH
//! crc:32,0x33         CRC, Koopman hex (0x33, 33h or bare 33)
//! rlc:31,21,4,7       random linear code n,k,d,seed (d may be `_`)
//! product:ebch:32,26^2
//! file:codes/my.code
//! ```

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use thiserror::Error;

use super::{build_bch, build_crc, build_rlc, CodeError, LinearCode, ProductCode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid code spec at column {pos}: {msg}")]
pub struct CodeSpecError {
    /// Zero-based byte offset into the spec string.
    pub pos: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeSpec {
    Ebch {
        n: usize,
        k: usize,
    },
    Bch {
        n: usize,
        k: usize,
    },
    Crc {
        n: usize,
        koopman: u64,
    },
    Rlc {
        n: usize,
        k: usize,
        d: Option<usize>,
        seed: u64,
    },
    File(PathBuf),
    Product(Box<CodeSpec>),
}

/// A constructed code: either a component code or a square product.
#[derive(Debug, Clone)]
pub enum BuiltCode {
    Linear(LinearCode),
    Product(ProductCode),
}

impl CodeSpec {
    pub fn is_product(&self) -> bool {
        matches!(self, CodeSpec::Product(_))
    }

    pub fn build(&self) -> Result<BuiltCode, CodeError> {
        match self {
            CodeSpec::Product(inner) => Ok(BuiltCode::Product(ProductCode::square(
                inner.build_linear()?,
            ))),
            other => Ok(BuiltCode::Linear(other.build_linear()?)),
        }
    }

    pub fn build_linear(&self) -> Result<LinearCode, CodeError> {
        match *self {
            CodeSpec::Ebch { n, k } => {
                let base = bch_by_params(n - 1, k)?;
                let ext = base.extend_with_parity()?;
                let d = ext.d_min().expect("BCH distance known");
                Ok(ext.with_label(format!("eBCH({n},{k},{d})")))
            }
            CodeSpec::Bch { n, k } => bch_by_params(n, k),
            CodeSpec::Crc { n, koopman } => build_crc(n, koopman),
            CodeSpec::Rlc { n, k, d, seed } => build_rlc(n, k, seed, d),
            CodeSpec::File(ref path) => LinearCode::load(path),
            CodeSpec::Product(_) => Err(CodeError::Invalid(
                "a product code cannot be used as a component".into(),
            )),
        }
    }
}

fn bch_by_params(n: usize, k: usize) -> Result<LinearCode, CodeError> {
    let m = (n + 1).trailing_zeros();
    if !(n + 1).is_power_of_two() || !(2..=6).contains(&m) {
        return Err(CodeError::Invalid(format!(
            "BCH length must be 2^m - 1 with 2 <= m <= 6, got {n}"
        )));
    }
    for t in 1..=n / 2 {
        match build_bch(m, t) {
            Ok(code) if code.k() == k => return Ok(code),
            Ok(code) if code.k() < k => break,
            Ok(_) => continue,
            Err(_) => break,
        }
    }
    Err(CodeError::Invalid(format!(
        "no narrow-sense BCH code ({n},{k})"
    )))
}

impl fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeSpec::Ebch { n, k } => write!(f, "ebch:{n},{k}"),
            CodeSpec::Bch { n, k } => write!(f, "bch:{n},{k}"),
            CodeSpec::Crc { n, koopman } => write!(f, "crc:{n},{koopman:#x}"),
            CodeSpec::Rlc { n, k, d, seed } => match d {
                Some(d) => write!(f, "rlc:{n},{k},{d},{seed}"),
                None => write!(f, "rlc:{n},{k},_,{seed}"),
            },
            CodeSpec::File(p) => write!(f, "file:{}", p.display()),
            CodeSpec::Product(inner) => write!(f, "product:{inner}^2"),
        }
    }
}

fn err(pos: usize, msg: impl Into<String>) -> CodeSpecError {
    CodeSpecError {
        pos,
        msg: msg.into(),
    }
}

/// Splits comma-separated fields, returning each with its byte offset.
fn fields(s: &str, offset: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        if ch == ',' {
            out.push((offset + start, &s[start..i]));
            start = i + 1;
        }
    }
    out.push((offset + start, &s[start..]));
    out
}

fn int(field: (usize, &str)) -> Result<usize, CodeSpecError> {
    let (pos, text) = field;
    text.trim()
        .parse()
        .map_err(|_| err(pos, format!("expected an integer, found {text:?}")))
}

fn hex(field: (usize, &str)) -> Result<u64, CodeSpecError> {
    let (pos, text) = field;
    let t = text.trim();
    let digits = t
        .strip_prefix("0x")
        .or_else(|| t.strip_prefix("0X"))
        .or_else(|| t.strip_suffix('h'))
        .or_else(|| t.strip_suffix('H'))
        .unwrap_or(t);
    u64::from_str_radix(digits, 16)
        .map_err(|_| err(pos, format!("expected a hex polynomial, found {text:?}")))
}

fn expect_count(
    parts: &[(usize, &str)],
    count: usize,
    kind_pos: usize,
    usage: &str,
) -> Result<(), CodeSpecError> {
    if parts.len() == count {
        Ok(())
    } else {
        let pos = parts.get(count).map_or(kind_pos, |p| p.0);
        Err(err(pos, format!("expected {usage}")))
    }
}

fn parse_at(s: &str, offset: usize) -> Result<CodeSpec, CodeSpecError> {
    let Some(colon) = s.find(':') else {
        return Err(err(offset, "expected `<kind>:<params>`"));
    };
    let kind = &s[..colon];
    let body = &s[colon + 1..];
    let body_pos = offset + colon + 1;
    match kind {
        "product" => {
            let Some(inner) = body.strip_suffix("^2") else {
                return Err(err(offset + s.len(), "product spec must end with `^2`"));
            };
            let inner = parse_at(inner, body_pos)?;
            if inner.is_product() {
                return Err(err(body_pos, "nested products are not supported"));
            }
            Ok(CodeSpec::Product(Box::new(inner)))
        }
        "file" => {
            if body.is_empty() {
                return Err(err(body_pos, "missing path"));
            }
            Ok(CodeSpec::File(PathBuf::from(body)))
        }
        "ebch" | "bch" => {
            let p = fields(body, body_pos);
            expect_count(&p, 2, offset, "n,k")?;
            let (n, k) = (int(p[0])?, int(p[1])?);
            if kind == "ebch" {
                if n < 4 {
                    return Err(err(p[0].0, "extended length too small"));
                }
                Ok(CodeSpec::Ebch { n, k })
            } else {
                Ok(CodeSpec::Bch { n, k })
            }
        }
        "crc" => {
            let p = fields(body, body_pos);
            expect_count(&p, 2, offset, "n,koopman_hex")?;
            Ok(CodeSpec::Crc {
                n: int(p[0])?,
                koopman: hex(p[1])?,
            })
        }
        "rlc" => {
            let p = fields(body, body_pos);
            expect_count(&p, 4, offset, "n,k,d,seed")?;
            let d = if p[2].1.trim() == "_" {
                None
            } else {
                Some(int(p[2])?)
            };
            Ok(CodeSpec::Rlc {
                n: int(p[0])?,
                k: int(p[1])?,
                d,
                seed: int(p[3])? as u64,
            })
        }
        other => Err(err(offset, format!("unknown code kind {other:?}"))),
    }
}

impl FromStr for CodeSpec {
    type Err = CodeSpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_at(s.trim(), 0)
    }
}

impl serde::Serialize for CodeSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for CodeSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
