//! Positive rational surgery slopes and their Hirzebruch–Jung continued fractions.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::arith::{self, gcd};
use crate::error::{domain, Error, Result};

/// A positive rational number `p/q` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    p: i64,
    q: i64,
}

impl Rational {
    /// Builds `p/q`, reducing to lowest terms. Both must be positive.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(domain("zero denominator"));
        }
        let (p, q) = if q < 0 { (-p, -q) } else { (p, q) };
        if p <= 0 {
            return Err(domain("slope must be positive"));
        }
        let g = gcd(p, q);
        Ok(Rational { p: p / g, q: q / g })
    }

    pub fn integer(n: i64) -> Result<Self> {
        Rational::new(n, 1)
    }

    pub fn numer(&self) -> i64 {
        self.p
    }

    pub fn denom(&self) -> i64 {
        self.q
    }

    pub fn is_integer(&self) -> bool {
        self.q == 1
    }

    pub fn ceil(&self) -> i64 {
        // p > 0, q > 0
        (self.p + self.q - 1) / self.q
    }

    /// Compares `self` with the integer `n`.
    pub fn cmp_int(&self, n: i64) -> core::cmp::Ordering {
        (self.p as i128).cmp(&(n as i128 * self.q as i128))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p/q` or a bare integer `p`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(alloc::format!("bad slope `{s}`")))
        };
        match s.split_once('/') {
            Some((p, q)) => Rational::new(parse(p)?, parse(q)?),
            None => Rational::new(parse(s)?, 1),
        }
    }
}

/// Coefficients `[a_0, ..., a_l]` of `a_0 - 1/(a_1 - 1/(... - 1/a_l))` with
/// `a_0 >= 1` and `a_i >= 2` for `i >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HJExpansion(Vec<i64>);

impl HJExpansion {
    pub fn new(coefficients: Vec<i64>) -> Result<Self> {
        match coefficients.split_first() {
            None => Err(domain("empty continued fraction")),
            Some((&a0, rest)) => {
                if a0 < 1 {
                    return Err(domain("leading coefficient must be at least 1"));
                }
                if rest.iter().any(|&a| a < 2) {
                    return Err(domain("trailing coefficients must be at least 2"));
                }
                Ok(HJExpansion(coefficients))
            }
        }
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.0
    }

    /// Length minus one, i.e. the number of relation vectors beyond `w_0`.
    pub fn l(&self) -> usize {
        self.0.len() - 1
    }
}

/// Expands `p/q` as a Hirzebruch–Jung continued fraction; `a_0 = ceil(p/q)`.
pub fn hj_expand(slope: Rational) -> HJExpansion {
    let (mut p, mut q) = (slope.p, slope.q);
    let mut out = Vec::new();
    loop {
        let a = (p + q - 1) / q;
        out.push(a);
        let r = a * q - p;
        if r == 0 {
            break;
        }
        // p/q = a - 1/(q/r) with 0 < r < q
        (p, q) = (q, r);
    }
    HJExpansion(out)
}

/// Evaluates the continued fraction exactly.
pub fn hj_evaluate(expansion: &HJExpansion) -> Result<Rational> {
    let coeffs = &expansion.0;
    let (mut num, mut den) = (*coeffs.last().expect("nonempty by construction"), 1i64);
    for &a in coeffs.iter().rev().skip(1) {
        if num == 0 {
            return Err(Error::Internal(
                "zero denominator in continued fraction".into(),
            ));
        }
        // a - den/num
        let next = arith::sub(arith::mul(a, num)?, den)?;
        den = num;
        num = next;
    }
    Rational::new(num, den)
        .map_err(|_| Error::Internal("continued fraction is not positive".into()))
}
