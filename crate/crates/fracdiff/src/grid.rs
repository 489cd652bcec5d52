//! Value lists on the command line: `lo:hi:count`, `a,b,c`, or a single number.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer};

/// A non-empty, ordered list of sample values.
#[derive(Debug, Clone, PartialEq)]
pub enum Values {
    /// `count` evenly spaced points from `lo` to `hi`, both included.
    Range {
        /// First point.
        lo: f64,
        /// Last point.
        hi: f64,
        /// Number of points (≥ 1).
        count: usize,
    },
    /// Explicit values, in the order given.
    List(Vec<f64>),
}

/// Why a value list did not parse.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid value list `{input}`: {reason}")]
pub struct ParseValuesError {
    input: String,
    reason: &'static str,
}

impl Values {
    /// A single value.
    pub fn single(v: f64) -> Self {
        Values::List(vec![v])
    }

    /// Number of points.
    pub fn len(&self) -> usize {
        match self {
            Values::Range { count, .. } => *count,
            Values::List(v) => v.len(),
        }
    }

    /// Always false: parsing rejects empty lists.
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The points themselves.
    pub fn points(&self) -> Vec<f64> {
        match *self {
            Values::Range { lo, count: 1, .. } => vec![lo],
            Values::Range { lo, hi, count } => {
                let step = (hi - lo) / (count - 1) as f64;
                // pin the last point so `hi` is reproduced exactly
                (0..count).map(|i| if i + 1 == count { hi } else { lo + step * i as f64 }).collect()
            }
            Values::List(ref v) => v.clone(),
        }
    }
}

fn number(s: &str, input: &str) -> Result<f64, ParseValuesError> {
    let v: f64 = s.trim().parse().map_err(|_| ParseValuesError { input: input.into(), reason: "not a number" })?;
    if !v.is_finite() {
        return Err(ParseValuesError { input: input.into(), reason: "values must be finite" });
    }
    Ok(v)
}

impl FromStr for Values {
    type Err = ParseValuesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fail = |reason| ParseValuesError { input: s.into(), reason };
        if s.trim().is_empty() {
            return Err(fail("empty"));
        }
        let parts: Vec<&str> = s.split(':').collect();
        match parts.len() {
            1 => s.split(',').map(|p| number(p, s)).collect::<Result<Vec<_>, _>>().map(Values::List),
            3 => {
                let lo = number(parts[0], s)?;
                let hi = number(parts[1], s)?;
                let count: usize = parts[2].trim().parse().map_err(|_| fail("count must be a non-negative integer"))?;
                if count == 0 {
                    return Err(fail("the range is empty"));
                }
                if count > 1 && hi < lo {
                    return Err(fail("hi must not be below lo"));
                }
                Ok(Values::Range { lo, hi, count })
            }
            _ => Err(fail("expected lo:hi:count, a comma list, or a number")),
        }
    }
}

impl fmt::Display for Values {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Values::Range { lo, hi, count } => write!(f, "{lo}:{hi}:{count}"),
            Values::List(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                f.write_str(&parts.join(","))
            }
        }
    }
}

impl<'de> Deserialize<'de> for Values {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
            List(Vec<f64>),
        }
        match Raw::deserialize(d)? {
            Raw::Number(v) => Ok(Values::single(v)),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
            Raw::List(v) if v.is_empty() => Err(serde::de::Error::custom("empty value list")),
            Raw::List(v) => Ok(Values::List(v)),
        }
    }
}
