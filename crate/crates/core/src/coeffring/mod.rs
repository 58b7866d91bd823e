//! Exact coefficient rings.
//!
//! Every series in this crate is generic over a [`Coeff`] ring. Four rings are
//! provided: arbitrary-precision integers, rationals, polynomials in one
//! indeterminate `t` over the rationals ([`PolyT`]), and polynomials in the
//! commuting elementary generators `e_1, e_2, ...` ([`EPoly`]).

mod codec;
mod epoly;
mod poly;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::Signed;
use thiserror::Error;

pub use codec::{CoeffCodec, CoeffText};
pub use epoly::{elementary_of_multiple, EPoly, ESubstitution, Partition};
pub use poly::{binomial_polynomial, poly_over, PolyT};

pub type Integer = BigInt;
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{dividend} is not divisible by {divisor}")]
    NotDivisible { dividend: String, divisor: String },
    #[error("cannot parse coefficient: {0}")]
    Parse(String),
}

/// A commutative ring with exact arithmetic.
///
/// Methods take references and return fresh values; none of the rings here
/// benefit much from in-place arithmetic at the sizes we work with.
pub trait Coeff: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn is_zero(&self) -> bool;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    /// Exact division. Fails when the quotient does not exist in the ring.
    fn try_div(&self, rhs: &Self) -> Result<Self, CoeffError>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn add_assign(&mut self, rhs: &Self) {
        *self = Coeff::add(self, rhs);
    }

    fn scale(&self, k: i64) -> Self {
        self.mul(&Self::from_int(k))
    }
}

impl Coeff for Integer {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn from_int(n: i64) -> Self {
        BigInt::from(n)
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn try_div(&self, rhs: &Self) -> Result<Self, CoeffError> {
        if num_traits::Zero::is_zero(rhs) {
            return Err(CoeffError::DivisionByZero);
        }
        let (q, r) = self.div_rem(rhs);
        if num_traits::Zero::is_zero(&r) {
            Ok(q)
        } else {
            Err(CoeffError::NotDivisible {
                dividend: self.to_string(),
                divisor: rhs.to_string(),
            })
        }
    }
    fn add_assign(&mut self, rhs: &Self) {
        *self += rhs;
    }
}

impl Coeff for Rational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn try_div(&self, rhs: &Self) -> Result<Self, CoeffError> {
        if num_traits::Zero::is_zero(rhs) {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(self / rhs)
    }
    fn add_assign(&mut self, rhs: &Self) {
        *self += rhs;
    }
}

pub fn rational(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Integer value of a rational, if it has one.
pub fn rational_to_integer(r: &Rational) -> Option<Integer> {
    r.is_integer().then(|| r.to_integer())
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, CoeffError> {
    let s = s.trim();
    let bad = || CoeffError::Parse(s.to_string());
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if num_traits::Zero::is_zero(&q) {
                return Err(CoeffError::DivisionByZero);
            }
            Ok(BigRational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(p))
        }
    }
}

pub fn parse_integer(s: &str) -> Result<Integer, CoeffError> {
    s.trim()
        .parse()
        .map_err(|_| CoeffError::Parse(s.to_string()))
}

/// Integer binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> Integer {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> Integer {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn is_nonnegative_integer(r: &Rational) -> bool {
    r.is_integer() && !r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_field_arithmetic() {
        assert_eq!(Coeff::add(&rational(1, 2), &rational(1, 3)), rational(5, 6));
        assert_eq!(format_rational(&rational(10, 4)), "5/2");
        assert_eq!(format_rational(&rational(-6, 3)), "-2");
        assert_eq!(parse_rational("-7/14").unwrap(), rational(-1, 2));
        assert_eq!(parse_rational("3").unwrap(), rational(3, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn integer_exact_division() {
        let six = Integer::from(6);
        assert_eq!(six.try_div(&Integer::from(3)).unwrap(), Integer::from(2));
        assert!(matches!(
            six.try_div(&Integer::from(4)),
            Err(CoeffError::NotDivisible { .. })
        ));
        assert_eq!(
            six.try_div(&Integer::from(0)),
            Err(CoeffError::DivisionByZero)
        );
        assert_eq!(
            rational(1, 2).try_div(&Rational::zero()),
            Err(CoeffError::DivisionByZero)
        );
    }

    #[test]
    fn small_binomials() {
        assert_eq!(binomial(4, 2), Integer::from(6));
        assert_eq!(binomial(2, 3), Integer::from(0));
        assert_eq!(binomial(0, 0), Integer::from(1));
        assert_eq!(factorial(5), Integer::from(120));
    }
}
