use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::Signed;

use super::{format_rational, parse_rational, rational, Coeff, CoeffError, Integer, Rational};

/// Polynomial in one indeterminate over the rationals.
///
/// Coefficients are stored in ascending order of degree with no trailing
/// zero, so the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyT {
    coeffs: Vec<Rational>,
}

impl PolyT {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Coeff::is_zero) {
            coeffs.pop();
        }
        PolyT { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_int(c)).collect())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, power: usize) -> Rational {
        self.coeffs
            .get(power)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * at + c)
    }

    pub fn eval_int(&self, at: i64) -> Rational {
        self.eval(&Rational::from_int(at))
    }

    /// Composition `p(q(t))`.
    pub fn compose(&self, inner: &PolyT) -> PolyT {
        self.coeffs.iter().rev().fold(PolyT::zero(), |acc, c| {
            &(&acc * inner) + &PolyT::constant(c.clone())
        })
    }

    /// The ring endomorphism `t -> t + shift`.
    pub fn shift(&self, shift: i64) -> PolyT {
        self.compose(&PolyT::from_ints(&[shift, 1]))
    }

    /// `binom(self, j) = self (self - 1) ... (self - j + 1) / j!`.
    pub fn binomial(&self, j: usize) -> PolyT {
        let mut acc = PolyT::one();
        for i in 0..j {
            acc = &acc * &(self - &PolyT::constant(Rational::from_int(i as i64)));
        }
        acc.scale_rational(&BigRational::new(BigInt::one(), super::factorial(j as u64)))
    }

    /// Polynomial long division; the remainder must vanish.
    pub fn exact_div(&self, divisor: &PolyT) -> Result<PolyT, CoeffError> {
        let Some(dd) = divisor.degree() else {
            return Err(CoeffError::DivisionByZero);
        };
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok(PolyT::zero());
        };
        if nd < dd {
            return Err(self.not_divisible(divisor));
        }
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let q = &rem[k + dd] / &lead;
            if !q.is_zero() {
                for (i, c) in divisor.coeffs.iter().enumerate() {
                    rem[k + i] -= &q * c;
                }
            }
            quot[k] = q;
        }
        if rem.iter().all(Coeff::is_zero) {
            Ok(PolyT::new(quot))
        } else {
            Err(self.not_divisible(divisor))
        }
    }

    fn not_divisible(&self, divisor: &PolyT) -> CoeffError {
        CoeffError::NotDivisible {
            dividend: self.to_string(),
            divisor: divisor.to_string(),
        }
    }

    /// Least common denominator and the integer numerator coefficients.
    pub fn integer_form(&self) -> (Integer, Vec<Integer>) {
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        (den, nums)
    }

    /// True when the polynomial is a single term with a negative coefficient.
    pub fn is_negative_monomial(&self) -> bool {
        let mut nonzero = self.coeffs.iter().filter(|c| !c.is_zero());
        matches!((nonzero.next(), nonzero.next()), (Some(c), None) if c.is_negative())
    }

    /// Parse the rendering produced by `Display`, e.g. `(3t^2-t)/2`, `4t^2-t`,
    /// `-t`, `5/2`.
    pub fn parse(s: &str) -> Result<PolyT, CoeffError> {
        let bad = || CoeffError::Parse(s.to_string());
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(bad());
        }
        // Optional "/den" suffix applying to the whole numerator.
        let (body, den) = match s.rsplit_once('/') {
            Some((b, d)) if !d.contains('t') && !b.is_empty() => {
                (b.to_string(), parse_rational(d).map_err(|_| bad())?)
            }
            _ => (s.clone(), Rational::one()),
        };
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        let body = match body.strip_prefix('(').and_then(|b| b.strip_suffix(')')) {
            Some(inner) => inner.to_string(),
            None => body,
        };
        let mut coeffs: Vec<Rational> = Vec::new();
        let bytes = body.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = 1i64;
            if bytes[i] == b'+' || bytes[i] == b'-' {
                if bytes[i] == b'-' {
                    sign = -1;
                }
                i += 1;
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let mut c: Rational = if i > start {
                parse_rational(&body[start..i]).map_err(|_| bad())?
            } else {
                Rational::one()
            };
            let mut power = 0usize;
            if i < bytes.len() && bytes[i] == b't' {
                i += 1;
                power = 1;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    let ps = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    power = body[ps..i].parse().map_err(|_| bad())?;
                }
            } else if i == start {
                return Err(bad());
            }
            if i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
                return Err(bad());
            }
            if sign < 0 {
                c = -c;
            }
            if coeffs.len() <= power {
                coeffs.resize(power + 1, Rational::zero());
            }
            coeffs[power] += c;
        }
        Ok(PolyT::new(coeffs).scale_rational(&(Rational::one() / den)))
    }
}

/// `binom(m t, a)` as a polynomial in `t`.
pub fn binomial_polynomial(m: u64, a: u64) -> PolyT {
    PolyT::from_ints(&[0, m as i64]).binomial(a as usize)
}

impl Coeff for PolyT {
    fn zero() -> Self {
        PolyT { coeffs: Vec::new() }
    }
    fn one() -> Self {
        PolyT::from_ints(&[1])
    }
    fn from_int(n: i64) -> Self {
        PolyT::from_ints(&[n])
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
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
        self.exact_div(rhs)
    }
}

impl<'a> Add<&'a PolyT> for &'a PolyT {
    type Output = PolyT;
    fn add(self, rhs: &PolyT) -> PolyT {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyT::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a PolyT> for &'a PolyT {
    type Output = PolyT;
    fn sub(self, rhs: &PolyT) -> PolyT {
        self + &(-rhs)
    }
}

impl Neg for &PolyT {
    type Output = PolyT;
    fn neg(self) -> PolyT {
        PolyT {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl<'a> Mul<&'a PolyT> for &'a PolyT {
    type Output = PolyT;
    fn mul(self, rhs: &PolyT) -> PolyT {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return PolyT::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyT::new(out)
    }
}

fn write_integer_poly(f: &mut fmt::Formatter<'_>, nums: &[Integer]) -> fmt::Result {
    let mut first = true;
    for (power, c) in nums.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let abs = c.abs();
        if c.is_negative() {
            f.write_str("-")?;
        } else if !first {
            f.write_str("+")?;
        }
        first = false;
        match power {
            0 => write!(f, "{abs}")?,
            _ => {
                if !abs.is_one() {
                    write!(f, "{abs}")?;
                }
                f.write_str("t")?;
                if power > 1 {
                    write!(f, "^{power}")?;
                }
            }
        }
    }
    Ok(())
}

impl fmt::Display for PolyT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let (den, nums) = self.integer_form();
        let terms = nums.iter().filter(|c| !c.is_zero()).count();
        if terms > 1 {
            f.write_str("(")?;
            write_integer_poly(f, &nums)?;
            f.write_str(")")?;
        } else {
            write_integer_poly(f, &nums)?;
        }
        if !den.is_one() {
            write!(f, "/{den}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PolyT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyT[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&format_rational(c))?;
        }
        f.write_str("]")
    }
}

/// Convenience for tests and fixtures: `poly(&[0, -1, 3], 2)` is `(3t^2-t)/2`.
pub fn poly_over(nums: &[i64], den: i64) -> PolyT {
    PolyT::new(nums.iter().map(|&n| rational(n, den)).collect())
}
