use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Nonnegative rational exponent `t = a/b`, kept in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RationalParam {
    num: u64,
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl RationalParam {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::invalid("denominator must be positive"));
        }
        let g = gcd(num, den).max(1);
        Ok(RationalParam { num: num / g, den: den / g })
    }

    pub fn integer(n: u64) -> Self {
        RationalParam { num: n, den: 1 }
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    /// `⌈t·k⌉`.
    pub fn ceil_mul(&self, k: u64) -> u64 {
        let n = self.num as u128 * k as u128;
        n.div_ceil(self.den as u128) as u64
    }

    /// `⌊t·k⌋`.
    pub fn floor_mul(&self, k: u64) -> u64 {
        (self.num as u128 * k as u128 / self.den as u128) as u64
    }

    /// `⌈t⌉`.
    pub fn ceil(&self) -> u64 {
        self.ceil_mul(1)
    }

    /// `t - 1`, or `None` when `t < 1`.
    pub fn minus_one(&self) -> Option<Self> {
        (self.num >= self.den).then(|| RationalParam { num: self.num - self.den, den: self.den })
    }

    /// `t·(a/b)` in lowest terms.
    pub fn scaled(&self, a: u64, b: u64) -> Result<Self> {
        let num = self.num.checked_mul(a).ok_or_else(|| Error::invalid("rational overflow"))?;
        let den = self.den.checked_mul(b).ok_or_else(|| Error::invalid("rational overflow"))?;
        Self::new(num, den)
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialOrd for RationalParam {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RationalParam {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl fmt::Display for RationalParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for RationalParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::invalid(format!("`{s}` is not a nonnegative fraction a/b"));
        match s.split_once('/') {
            Some((a, b)) => {
                let a = a.trim().parse::<u64>().map_err(|_| bad())?;
                let b = b.trim().parse::<u64>().map_err(|_| bad())?;
                RationalParam::new(a, b)
            }
            None => s.parse::<u64>().map(RationalParam::integer).map_err(|_| bad()),
        }
    }
}
