//! Exact rationals over `i128` with checked arithmetic, for Gram–Schmidt data.

use core::cmp::Ordering;

use crate::arith::gcd128;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Frac {
    n: i128,
    d: i128,
}

fn ck(x: Option<i128>) -> Result<i128> {
    x.ok_or(Error::Overflow)
}

impl Frac {
    pub const ZERO: Frac = Frac { n: 0, d: 1 };

    pub fn int(n: i64) -> Frac {
        Frac { n: n as i128, d: 1 }
    }

    pub fn new(n: i128, d: i128) -> Result<Frac> {
        if d == 0 {
            return Err(Error::Internal("zero denominator".into()));
        }
        let g = gcd128(n, d);
        let (mut n, mut d) = (n / g, d / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        Ok(Frac { n, d })
    }

    pub fn add(self, o: Frac) -> Result<Frac> {
        let g = gcd128(self.d, o.d);
        let (a, b) = (self.d / g, o.d / g);
        Frac::new(
            ck(ck(self.n.checked_mul(b))?.checked_add(ck(o.n.checked_mul(a))?))?,
            ck(self.d.checked_mul(b))?,
        )
    }

    pub fn neg(self) -> Frac {
        Frac {
            n: -self.n,
            d: self.d,
        }
    }

    pub fn sub(self, o: Frac) -> Result<Frac> {
        self.add(o.neg())
    }

    pub fn mul(self, o: Frac) -> Result<Frac> {
        let g1 = gcd128(self.n, o.d).max(1);
        let g2 = gcd128(o.n, self.d).max(1);
        Frac::new(
            ck((self.n / g1).checked_mul(o.n / g2))?,
            ck((self.d / g2).checked_mul(o.d / g1))?,
        )
    }

    pub fn div(self, o: Frac) -> Result<Frac> {
        if o.n == 0 {
            return Err(Error::Internal("division by zero".into()));
        }
        self.mul(Frac { n: o.d, d: o.n })
    }

    pub fn mul_int(self, k: i64) -> Result<Frac> {
        self.mul(Frac::int(k))
    }

    pub fn is_positive(self) -> bool {
        self.n > 0
    }

    pub fn floor(self) -> i128 {
        self.n.div_euclid(self.d)
    }

    /// Nearest integer, halves rounded up.
    pub fn round(self) -> Result<i64> {
        let twice = ck(self.n.checked_mul(2))?;
        let r = ck(twice.checked_add(self.d))?.div_euclid(ck(self.d.checked_mul(2))?);
        i64::try_from(r).map_err(|_| Error::Overflow)
    }
}

impl PartialOrd for Frac {
    fn partial_cmp(&self, o: &Frac) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Frac {
    fn cmp(&self, o: &Frac) -> Ordering {
        // Denominators are positive; fall back to floor comparison on overflow.
        match (self.n.checked_mul(o.d), o.n.checked_mul(self.d)) {
            (Some(a), Some(b)) => a.cmp(&b),
            _ => {
                let (fa, fb) = (self.floor(), o.floor());
                if fa != fb {
                    return fa.cmp(&fb);
                }
                let ra = Frac {
                    n: self.n - fa * self.d,
                    d: self.d,
                };
                let rb = Frac {
                    n: o.n - fb * o.d,
                    d: o.d,
                };
                // Compare fractional parts by their reciprocals.
                match (ra.n == 0, rb.n == 0) {
                    (true, true) => Ordering::Equal,
                    (true, false) => Ordering::Less,
                    (false, true) => Ordering::Greater,
                    _ => Frac { n: rb.d, d: rb.n }.cmp(&Frac { n: ra.d, d: ra.n }),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: i128, d: i128) -> Frac {
        Frac::new(n, d).unwrap()
    }

    #[test]
    fn arithmetic() {
        assert_eq!(f(1, 2).add(f(1, 3)).unwrap(), f(5, 6));
        assert_eq!(f(1, 2).sub(f(1, 3)).unwrap(), f(1, 6));
        assert_eq!(f(2, 3).mul(f(3, 4)).unwrap(), f(1, 2));
        assert_eq!(f(2, 3).div(f(4, 3)).unwrap(), f(1, 2));
        assert_eq!(f(3, -6), f(-1, 2));
    }

    #[test]
    fn rounding_and_order() {
        assert_eq!(f(5, 2).round().unwrap(), 3);
        assert_eq!(f(-5, 2).round().unwrap(), -2);
        assert_eq!(f(7, 3).round().unwrap(), 2);
        assert_eq!(f(-7, 3).floor(), -3);
        assert!(f(1, 3) < f(1, 2));
        assert!(f(-1, 2) < f(-1, 3));
        let big = i128::MAX / 3;
        assert!(f(big, big - 1) < f(big - 1, big - 2));
    }
}
