//! Integer polynomials in the Hecke parameter q.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Coefficients in ascending degree, without trailing zeros.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParamPoly {
    coeffs: Vec<i64>,
}

impl ParamPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ParamPoly { coeffs }
    }

    pub fn zero() -> Self {
        ParamPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::new(vec![c])
    }

    pub fn q() -> Self {
        Self::new(vec![0, 1])
    }

    /// q − 1.
    pub fn q_minus_one() -> Self {
        Self::new(vec![-1, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, q: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * q + c)
    }
}

impl Add for &ParamPoly {
    type Output = ParamPoly;

    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let c = (0..n)
            .map(|i| self.coeffs.get(i).copied().unwrap_or(0) + rhs.coeffs.get(i).copied().unwrap_or(0))
            .collect();
        ParamPoly::new(c)
    }
}

impl Add for ParamPoly {
    type Output = ParamPoly;

    fn add(self, rhs: ParamPoly) -> ParamPoly {
        &self + &rhs
    }
}

impl AddAssign<&ParamPoly> for ParamPoly {
    fn add_assign(&mut self, rhs: &ParamPoly) {
        *self = &*self + rhs;
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;

    fn neg(self) -> ParamPoly {
        ParamPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub for &ParamPoly {
    type Output = ParamPoly;

    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        self + &(-rhs)
    }
}

impl Mul for &ParamPoly {
    type Output = ParamPoly;

    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        if self.is_zero() || rhs.is_zero() {
            return ParamPoly::zero();
        }
        let mut c = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        ParamPoly::new(c)
    }
}

impl Mul for ParamPoly {
    type Output = ParamPoly;

    fn mul(self, rhs: ParamPoly) -> ParamPoly {
        &self * &rhs
    }
}

/// Ascending-degree form, e.g. `-1 + q`, `2 - 3q + q^2`, `0`.
impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            first = false;
            let mono = match d {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{d}"),
            };
            if d == 0 || mag != 1 {
                write!(f, "{mag}")?;
            }
            write!(f, "{mono}")?;
        }
        Ok(())
    }
}

impl FromStr for ParamPoly {
    type Err = Error;

    /// Accepts sums of terms `c`, `cq`, `c*q`, `q^d`, `c q^d` with `+`/`-`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Hecke(format!("cannot parse polynomial `{s}`"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut coeffs: Vec<i64> = Vec::new();
        let mut terms: Vec<(i64, &str)> = Vec::new();
        let mut start = 0;
        let mut sign = 1;
        let bytes = compact.as_bytes();
        for i in 0..=bytes.len() {
            if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && i > start) {
                terms.push((sign, &compact[start..i]));
                if i < bytes.len() {
                    sign = if bytes[i] == b'-' { -1 } else { 1 };
                    start = i + 1;
                }
            } else if (bytes[i] == b'+' || bytes[i] == b'-') && i == start {
                if bytes[i] == b'-' {
                    sign = -sign;
                }
                start = i + 1;
            }
        }
        for (sg, t) in terms {
            if t.is_empty() {
                return Err(bad());
            }
            let (c, d) = match t.find('q') {
                None => (t.parse::<i64>().map_err(|_| bad())?, 0usize),
                Some(p) => {
                    let cs = t[..p].trim_end_matches('*');
                    let c = if cs.is_empty() { 1 } else { cs.parse::<i64>().map_err(|_| bad())? };
                    let rest = &t[p + 1..];
                    let d = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').ok_or_else(bad)?.parse::<usize>().map_err(|_| bad())?
                    };
                    (c, d)
                }
            };
            if coeffs.len() <= d {
                coeffs.resize(d + 1, 0);
            }
            coeffs[d] += sg * c;
        }
        Ok(ParamPoly::new(coeffs))
    }
}
