//! Exact scalars: arbitrary-precision rationals and polynomials in a
//! deformation parameter `t` truncated at a fixed order.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// The rational field. Values are always kept reduced with a positive
/// denominator (guaranteed by `BigRational`).
pub type Q = BigRational;

/// Coefficient ring for every structure in the crate.
///
/// Implemented by [`Q`] and by [`Trunc`]. Everything that is generic over
/// `Scalar` is exact; no floating point appears anywhere.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Sub<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_rational(q: &Q) -> Self;

    /// Coefficients in powers of `t`. A rational is a constant.
    fn coefficients(&self) -> Vec<Q>;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Q::from_integer(BigInt::from(n)))
    }
}

impl Scalar for Q {
    fn from_rational(q: &Q) -> Self {
        q.clone()
    }

    fn coefficients(&self) -> Vec<Q> {
        vec![self.clone()]
    }
}

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses the rational literal syntax: optional sign, digits, optional
/// `/` followed by a positive integer. Floats and zero denominators are
/// rejected.
pub fn parse_rational(s: &str) -> Result<Q, Error> {
    let bad = || Error::Parse(format!("invalid rational literal {s:?}"));
    let (negative, body) = match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) {
        return Err(bad());
    }
    let mut numer = BigInt::from_str(num).map_err(|_| bad())?;
    if negative {
        numer = -numer;
    }
    let denom = match den {
        Some(d) => {
            if !digits(d) {
                return Err(bad());
            }
            let d = BigInt::from_str(d).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            d
        }
        None => BigInt::one(),
    };
    Ok(Q::new(numer, denom))
}

pub fn format_rational(x: &Q) -> String {
    x.to_string()
}

/// Truncated polynomial `c_0 + c_1 t + ... + c_{K-1} t^{K-1}` with `t^K = 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Trunc<const K: usize> {
    coeffs: [Q; K],
}

impl<const K: usize> Trunc<K> {
    pub fn new(coeffs: [Q; K]) -> Self {
        Trunc { coeffs }
    }

    /// `c_0 + c_1 t`, dropping `t` entirely when `K == 1`.
    pub fn linear(c0: Q, c1: Q) -> Self {
        let mut out = Self::zero();
        out.coeffs[0] = c0;
        if K > 1 {
            out.coeffs[1] = c1;
        }
        out
    }

    pub fn t() -> Self {
        Self::linear(Q::zero(), Q::one())
    }

    pub fn coeff(&self, order: usize) -> &Q {
        &self.coeffs[order]
    }

    /// Evaluation at `t = 0`.
    pub fn constant(&self) -> &Q {
        &self.coeffs[0]
    }

    pub fn scale(&self, c: &Q) -> Self {
        Trunc {
            coeffs: std::array::from_fn(|i| &self.coeffs[i] * c),
        }
    }
}

impl<const K: usize> Zero for Trunc<K> {
    fn zero() -> Self {
        Trunc {
            coeffs: std::array::from_fn(|_| Q::zero()),
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl<const K: usize> One for Trunc<K> {
    fn one() -> Self {
        Self::from_rational(&Q::one())
    }
}

impl<const K: usize> Add for Trunc<K> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Trunc {
            coeffs: std::array::from_fn(|i| &self.coeffs[i] + &rhs.coeffs[i]),
        }
    }
}

impl<const K: usize> Sub for Trunc<K> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Trunc {
            coeffs: std::array::from_fn(|i| &self.coeffs[i] - &rhs.coeffs[i]),
        }
    }
}

impl<const K: usize> Neg for Trunc<K> {
    type Output = Self;
    fn neg(self) -> Self {
        Trunc {
            coeffs: std::array::from_fn(|i| -&self.coeffs[i]),
        }
    }
}

impl<const K: usize> Mul for Trunc<K> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..K - i].iter().enumerate() {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }
}

impl<const K: usize> fmt::Display for Trunc<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if wrote {
                write!(f, "{sign}")?;
            } else if sign == "-" {
                write!(f, "-")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if i == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<const K: usize> Scalar for Trunc<K> {
    fn from_rational(q: &Q) -> Self {
        let mut out = Self::zero();
        out.coeffs[0] = q.clone();
        out
    }

    fn coefficients(&self) -> Vec<Q> {
        self.coeffs.to_vec()
    }
}

/// Clears denominators of a rational row: returns integers proportional
/// to the input (same sign pattern, common positive factor).
pub(crate) fn integer_row(row: &[Q]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}
