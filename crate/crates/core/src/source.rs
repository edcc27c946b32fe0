//! Where α comes from, and the textual grammar for it.
//!
//! Accepted forms:
//!
//! - rational `p/q`, e.g. `7/24`;
//! - quadratic surd, e.g. `(-1+sqrt 5)/2`, `(0+sqrt 5 -1)/2`, `sqrt(2)-1`,
//!   `(1+√3)/4` — a signed sum of integers and exactly one `±sqrt D` term,
//!   optionally parenthesized and divided by an integer;
//! - continued fraction `[0;a1,a2,…]`, optionally ending in `period(…)`,
//!   e.g. `[0;3,period(1,2)]`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::cf::{cf_from_rational, CfExpansion, Tail};
use crate::quadratic::{expand_surd, QuadraticSurd};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed alpha {input:?}: {reason}")]
pub struct ParseAlphaError {
    pub input: String,
    pub reason: String,
}

/// Anything that can emit the continued-fraction digits of some α ∈ (0, 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlphaSource {
    Rational { numerator: BigInt, denominator: BigInt },
    Surd(QuadraticSurd),
    Cf(CfExpansion),
}

impl AlphaSource {
    /// Golden-ratio conjugate `(√5 − 1)/2 = [0; 1, 1, 1, …]`.
    pub fn golden() -> Self {
        AlphaSource::Surd(QuadraticSurd::new((-1).into(), 5.into(), 2.into()).expect("valid surd"))
    }

    /// `√2 − 1 = [0; 2, 2, 2, …]`.
    pub fn silver() -> Self {
        AlphaSource::Surd(QuadraticSurd::new((-1).into(), 2.into(), 1.into()).expect("valid surd"))
    }

    /// The continued-fraction expansion; validates that α ∈ (0, 1).
    pub fn expansion(&self) -> Result<CfExpansion> {
        let cf = match self {
            AlphaSource::Rational {
                numerator,
                denominator,
            } => {
                if numerator.is_zero() || denominator.is_negative() {
                    return Err(crate::CfError::OutOfRange(format!("{numerator}/{denominator}")).into());
                }
                cf_from_rational(numerator, denominator)?
            }
            AlphaSource::Surd(s) => expand_surd(s)?,
            AlphaSource::Cf(cf) => cf.clone(),
        };
        if cf.is_finite() && cf.head().is_empty() {
            return Err(crate::CfError::OutOfRange("0".into()).into());
        }
        Ok(cf)
    }
}

impl fmt::Display for AlphaSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaSource::Rational {
                numerator,
                denominator,
            } => write!(f, "{numerator}/{denominator}"),
            AlphaSource::Surd(s) => write!(f, "{s}"),
            AlphaSource::Cf(cf) => write!(f, "{cf}"),
        }
    }
}

impl FromStr for AlphaSource {
    type Err = ParseAlphaError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let fail = |reason: &str| ParseAlphaError {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = input
            .replace('√', "sqrt")
            .replace('−', "-")
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect();
        if compact.is_empty() {
            return Err(fail("empty"));
        }
        let source = if compact.starts_with('[') {
            AlphaSource::Cf(parse_cf(&compact).map_err(|r| fail(&r))?)
        } else if compact.contains("sqrt") {
            AlphaSource::Surd(parse_surd(&compact).map_err(|r| fail(&r))?)
        } else {
            let (n, d) = compact.split_once('/').ok_or_else(|| fail("expected p/q"))?;
            let numerator = parse_int(n).map_err(|r| fail(&r))?;
            let denominator = parse_int(d).map_err(|r| fail(&r))?;
            AlphaSource::Rational {
                numerator,
                denominator,
            }
        };
        source.expansion().map_err(|e: Error| fail(&e.to_string()))?;
        Ok(source)
    }
}

fn parse_int(s: &str) -> Result<BigInt, String> {
    s.parse::<BigInt>().map_err(|_| format!("{s:?} is not an integer"))
}

fn parse_digit_list(s: &str) -> Result<Vec<BigInt>, String> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_int).collect()
}

fn parse_cf(s: &str) -> Result<CfExpansion, String> {
    let body = s
        .strip_prefix('[')
        .and_then(|b| b.strip_suffix(']'))
        .ok_or("continued fraction must be [0;…]")?;
    let (a0, rest) = body.split_once(';').unwrap_or((body, ""));
    if parse_int(a0)? != BigInt::zero() {
        return Err("a0 must be 0 for alpha in (0, 1)".into());
    }
    let (head, period) = match rest.find("period(") {
        Some(pos) => {
            let inner = rest[pos + "period(".len()..]
                .strip_suffix(')')
                .ok_or("period(…) must close the expansion")?;
            let head = rest[..pos].strip_suffix(',').unwrap_or(&rest[..pos]);
            (head, Some(inner))
        }
        None => (rest, None),
    };
    let head = parse_digit_list(head)?;
    let cf = match period {
        Some(p) => CfExpansion::periodic(head, parse_digit_list(p)?),
        None => CfExpansion::finite(head),
    };
    let cf = cf.map_err(|e| e.to_string())?;
    debug_assert!(!matches!(cf.tail(), Tail::Prefix));
    Ok(cf)
}

fn parse_surd(s: &str) -> Result<QuadraticSurd, String> {
    let (numer, denom) = if let Some(body) = s.strip_prefix('(') {
        let mut depth = 1usize;
        let close = body
            .char_indices()
            .find(|&(_, c)| {
                match c {
                    '(' => depth += 1,
                    ')' => depth -= 1,
                    _ => {}
                }
                depth == 0
            })
            .map(|(i, _)| i)
            .ok_or("unbalanced parentheses")?;
        let rest = &body[close + 1..];
        let denom = match rest.strip_prefix('/') {
            Some(d) => parse_int(d)?,
            None if rest.is_empty() => BigInt::from(1),
            None => return Err(format!("unexpected {rest:?} after numerator")),
        };
        (&body[..close], denom)
    } else {
        (s, BigInt::from(1))
    };

    let mut constant = BigInt::zero();
    let mut radical: Option<(bool, BigInt)> = None;
    let mut rest = numer;
    while !rest.is_empty() {
        let negative = rest.starts_with('-');
        rest = rest.strip_prefix(['+', '-']).unwrap_or(rest);
        if let Some(after) = rest.strip_prefix("sqrt") {
            let (digits, tail) = match after.strip_prefix('(') {
                Some(inner) => inner.split_once(')').ok_or("unclosed sqrt(")?,
                None => after.split_at(after.find(['+', '-']).unwrap_or(after.len())),
            };
            if radical.replace((negative, parse_int(digits)?)).is_some() {
                return Err("more than one sqrt term".into());
            }
            rest = tail;
        } else {
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let value = parse_int(&rest[..end])?;
            constant += if negative { -value } else { value };
            rest = &rest[end..];
        }
    }
    let (negative, d) = radical.ok_or("missing sqrt term")?;
    let result = if negative {
        QuadraticSurd::new(-constant, d, -denom)
    } else {
        QuadraticSurd::new(constant, d, denom)
    };
    result.map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equivalent_surd_spellings() {
        let canonical: AlphaSource = "(-1+sqrt 5)/2".parse().unwrap();
        for s in ["(0+sqrt 5 -1)/2", "(sqrt(5)-1)/2", "(−1+√5)/2"] {
            assert_eq!(s.parse::<AlphaSource>().unwrap(), canonical, "{s}");
        }
        assert_eq!(canonical, AlphaSource::golden());
        assert_eq!("sqrt 2 - 1".parse::<AlphaSource>().unwrap(), AlphaSource::silver());
    }

    #[test]
    fn negative_radical_term() {
        // (3 − √3)/2 ≈ 0.634
        let s: AlphaSource = "(3-sqrt 3)/2".parse().unwrap();
        let AlphaSource::Surd(surd) = &s else { panic!() };
        assert!((surd.to_f64() - (3.0 - 3f64.sqrt()) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn rational_and_cf() {
        assert_eq!(
            "7/24".parse::<AlphaSource>().unwrap(),
            AlphaSource::Rational {
                numerator: 7.into(),
                denominator: 24.into()
            }
        );
        let cf: AlphaSource = "[0;1,period(1)]".parse().unwrap();
        assert_eq!(cf.expansion().unwrap().to_string(), "[0;period(1)]");
        let cf: AlphaSource = "[0; 3, period(1, 2)]".parse().unwrap();
        assert_eq!(cf.to_string(), "[0;3,period(1,2)]");
        let cf: AlphaSource = "[0;3,2,3]".parse().unwrap();
        assert_eq!(cf.to_string(), "[0;3,2,3]");
    }

    #[test]
    fn rejects_malformed() {
        for s in [
            "", "7", "7/x", "3/2", "0/5", "[1;2]", "[0;2,0]", "[0;period()]", "sqrt 4 - 1", "sqrt 2",
            "(1+sqrt 2+sqrt 3)/4", "(sqrt 2-1", "[0]",
        ] {
            assert!(s.parse::<AlphaSource>().is_err(), "{s:?} should fail");
        }
    }
}
