//! Truncated commutative power series over the rationals, in one variable
//! (`x` or `z`) or two (`z, q` / `x, u`, truncated by total degree), and the
//! specializations that send noncommutative series into them.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::coeffring::{
    format_rational, rational, Coeff, EPoly, ESubstitution, Integer, PolyT, Rational,
};
use crate::ncsf::{Basis, NcsfSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("constant term is zero, series is not invertible")]
    ZeroConstantTerm,
    #[error("square root needs constant term 1")]
    NonUnitSqrt,
    #[error("division by {var}^{power} does not cancel: coefficient of {var}^{index} is {value}")]
    NonCancellation {
        var: &'static str,
        power: u32,
        index: u32,
        value: String,
    },
    #[error("specialization {map} is not defined for {ring} coefficients")]
    UnsupportedRing {
        map: Specialization,
        ring: &'static str,
    },
    #[error("series must be in the S basis, found {0}")]
    NotCompleteBasis(Basis),
    #[error("expected {expected} coefficients but the series is only known through order {order}")]
    PrefixTooLong { expected: usize, order: u32 },
    #[error("unknown {kind} {name:?}")]
    UnknownName { kind: &'static str, name: String },
}

/// Univariate series known through `x^order`.
#[derive(Clone, PartialEq, Eq)]
pub struct UniSeries {
    coeffs: Vec<Rational>,
}

impl UniSeries {
    pub fn zero(order: u32) -> Self {
        UniSeries {
            coeffs: vec![Rational::zero(); order as usize + 1],
        }
    }

    pub fn one(order: u32) -> Self {
        Self::monomial(0, Rational::one(), order)
    }

    /// `c x^k`, or zero when `k > order`.
    pub fn monomial(k: u32, c: Rational, order: u32) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k as usize] = c;
        }
        s
    }

    pub fn x(order: u32) -> Self {
        Self::monomial(1, Rational::one(), order)
    }

    /// Series with the given leading coefficients, zero-padded to `order`.
    pub fn from_coeffs(mut coeffs: Vec<Rational>, order: u32) -> Self {
        coeffs.resize(order as usize + 1, Rational::zero());
        UniSeries { coeffs }
    }

    pub fn from_ints(coeffs: &[i64], order: u32) -> Self {
        Self::from_coeffs(
            coeffs.iter().map(|&c| Rational::from_int(c)).collect(),
            order,
        )
    }

    pub fn order(&self) -> u32 {
        self.coeffs.len() as u32 - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: u32) -> Rational {
        self.coeffs
            .get(k as usize)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn truncate(&self, order: u32) -> Self {
        Self::from_coeffs(
            self.coeffs[..=order.min(self.order()) as usize].to_vec(),
            order.min(self.order()),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order()) as usize;
        UniSeries {
            coeffs: (0..=n)
                .map(|k| &self.coeffs[k] + &other.coeffs[k])
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Rational::from_int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        UniSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order()) as usize;
        let mut coeffs = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if Coeff::is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                coeffs[i + j] += a * b;
            }
        }
        UniSeries { coeffs }
    }

    pub fn inverse(&self) -> Result<Self, GfError> {
        let c0 = &self.coeffs[0];
        if Coeff::is_zero(c0) {
            return Err(GfError::ZeroConstantTerm);
        }
        let inv0 = Rational::one() / c0;
        let n = self.coeffs.len();
        let mut out = vec![Rational::zero(); n];
        out[0] = inv0.clone();
        for k in 1..n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &out[k - j];
            }
            out[k] = -acc * &inv0;
        }
        Ok(UniSeries { coeffs: out })
    }

    pub fn div(&self, other: &Self) -> Result<Self, GfError> {
        Ok(self.mul(&other.inverse()?))
    }

    /// Newton iteration `s <- (s + f/s) / 2` from `s = 1`; each step doubles
    /// the number of correct coefficients.
    pub fn sqrt(&self) -> Result<Self, GfError> {
        if !self.coeffs[0].is_one() {
            return Err(GfError::NonUnitSqrt);
        }
        let half = rational(1, 2);
        let mut s = Self::one(self.order());
        let mut correct = 1usize;
        while correct < self.coeffs.len() {
            s = s.add(&self.div(&s)?).scale(&half);
            correct *= 2;
        }
        Ok(s)
    }

    /// Exact division by `x^k`; the order drops by `k`.
    pub fn div_x_pow(&self, k: u32) -> Result<Self, GfError> {
        for i in 0..k.min(self.order() + 1) {
            if !Coeff::is_zero(&self.coeffs[i as usize]) {
                return Err(GfError::NonCancellation {
                    var: "x",
                    power: k,
                    index: i,
                    value: format_rational(&self.coeffs[i as usize]),
                });
            }
        }
        assert!(k <= self.order(), "dividing away every known coefficient");
        Ok(UniSeries {
            coeffs: self.coeffs[k as usize..].to_vec(),
        })
    }

    /// The integer coefficients, if all are integers.
    pub fn integer_coeffs(&self) -> Option<Vec<Integer>> {
        self.coeffs
            .iter()
            .map(crate::coeffring::rational_to_integer)
            .collect()
    }
}

impl fmt::Debug for UniSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        write!(f, "UniSeries[{}]", items.join(", "))
    }
}

/// Two-variable series known through total degree `order`. The variables
/// are called `a` and `b` in the API; callers decide which is `z` and `q`.
#[derive(Clone, PartialEq, Eq)]
pub struct BiSeries {
    order: u32,
    coeffs: BTreeMap<(u32, u32), Rational>,
}

impl BiSeries {
    pub fn zero(order: u32) -> Self {
        BiSeries {
            order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn monomial(i: u32, j: u32, c: Rational, order: u32) -> Self {
        let mut s = Self::zero(order);
        s.add_term(i, j, c);
        s
    }

    pub fn one(order: u32) -> Self {
        Self::monomial(0, 0, Rational::one(), order)
    }

    fn add_term(&mut self, i: u32, j: u32, c: Rational) {
        if i + j > self.order || Coeff::is_zero(&c) {
            return;
        }
        let slot = self.coeffs.entry((i, j)).or_insert_with(Rational::zero);
        *slot += c;
        if Coeff::is_zero(slot) {
            self.coeffs.remove(&(i, j));
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.coeffs
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.coeffs.iter()
    }

    /// Coefficient of `a^i` as a polynomial in `b`, known through `b^{order-i}`.
    pub fn column(&self, i: u32) -> PolyT {
        let top = self.order.saturating_sub(i);
        PolyT::new((0..=top).map(|j| self.coeff(i, j)).collect())
    }

    pub fn truncate(&self, order: u32) -> Self {
        let order = order.min(self.order);
        let mut out = Self::zero(order);
        for (&(i, j), c) in &self.coeffs {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.truncate(self.order.min(other.order));
        for (&(i, j), c) in &other.coeffs {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Rational::from_int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.order);
        for (&(i, j), a) in &self.coeffs {
            out.add_term(i, j, a * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.order.min(other.order));
        for (&(i, j), a) in &self.coeffs {
            for (&(k, l), b) in &other.coeffs {
                out.add_term(i + k, j + l, a * b);
            }
        }
        out
    }

    /// Homogeneous part of total degree `d`.
    fn homogeneous(&self, d: u32) -> Self {
        let mut out = Self::zero(self.order);
        for (&(i, j), c) in &self.coeffs {
            if i + j == d {
                out.add_term(i, j, c.clone());
            }
        }
        out
    }

    pub fn inverse(&self) -> Result<Self, GfError> {
        let c0 = self.coeff(0, 0);
        if Coeff::is_zero(&c0) {
            return Err(GfError::ZeroConstantTerm);
        }
        let inv0 = Rational::one() / &c0;
        // v_d = -c0^{-1} Σ_{k=1..d} u_k v_{d-k}, on homogeneous parts.
        let parts: Vec<BiSeries> = (0..=self.order).map(|d| self.homogeneous(d)).collect();
        let mut v: Vec<BiSeries> = vec![Self::monomial(0, 0, inv0.clone(), self.order)];
        for d in 1..=self.order as usize {
            let mut acc = Self::zero(self.order);
            for k in 1..=d {
                acc = acc.add(&parts[k].mul(&v[d - k]));
            }
            v.push(acc.scale(&-inv0.clone()));
        }
        Ok(v.iter().fold(Self::zero(self.order), |acc, x| acc.add(x)))
    }

    pub fn div(&self, other: &Self) -> Result<Self, GfError> {
        Ok(self.mul(&other.inverse()?))
    }

    /// Newton iteration, as for [`UniSeries::sqrt`].
    pub fn sqrt(&self) -> Result<Self, GfError> {
        if !self.coeff(0, 0).is_one() {
            return Err(GfError::NonUnitSqrt);
        }
        let half = rational(1, 2);
        let mut s = Self::one(self.order);
        let mut correct = 1u32;
        while correct <= self.order {
            s = s.add(&self.div(&s)?).scale(&half);
            correct *= 2;
        }
        Ok(s)
    }

    /// Exact division by `a^k` (`first = true`) or `b^k`; the order drops by `k`.
    pub fn div_var_pow(&self, first: bool, k: u32) -> Result<Self, GfError> {
        let var = if first { "a" } else { "b" };
        let mut out = Self::zero(self.order.saturating_sub(k));
        for (&(i, j), c) in &self.coeffs {
            let p = if first { i } else { j };
            if p < k {
                return Err(GfError::NonCancellation {
                    var,
                    power: k,
                    index: p,
                    value: format_rational(c),
                });
            }
            let (i, j) = if first { (i - k, j) } else { (i, j - k) };
            out.add_term(i, j, c.clone());
        }
        Ok(out)
    }
}

impl fmt::Debug for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiSeries(order {}) ", self.order)?;
        f.debug_map()
            .entries(self.coeffs.iter().map(|(k, v)| (k, format_rational(v))))
            .finish()
    }
}

/// Result of a closed form or a specialization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GfSeries {
    Uni(UniSeries),
    Bi(BiSeries),
}

/// The closed-form generating functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedForm {
    /// `C(x) = (1 - sqrt(1 - 4x)) / (2x)`
    Catalan,
    /// `γ(x) = (C(x) - 1)(1 - x) / x`
    Geode,
    /// `1 + ((x - 1) sqrt(x^2 - 6x + 1) - x^2 - 4x + 1) / (8x^2)`
    RibbonSum,
    /// `1 + (1 - 5x + 2x^2 + (2x - 1) sqrt(x^2 - 6x + 1)) / (4x^2)`
    LambdaSum,
    /// `1 + (1 - z - sqrt(1 - 2(1 + 2q)z + z^2)) / (2q)`, over `(z, q)`
    Zq,
}

impl ClosedForm {
    pub const ALL: [ClosedForm; 5] = [
        ClosedForm::Catalan,
        ClosedForm::Geode,
        ClosedForm::RibbonSum,
        ClosedForm::LambdaSum,
        ClosedForm::Zq,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClosedForm::Catalan => "catalan",
            ClosedForm::Geode => "gamma",
            ClosedForm::RibbonSum => "rub",
            ClosedForm::LambdaSum => "lambda-sum",
            ClosedForm::Zq => "zq",
        }
    }

    pub fn from_name(name: &str) -> Result<Self, GfError> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == name)
            .ok_or_else(|| GfError::UnknownName {
                kind: "closed form",
                name: name.to_string(),
            })
    }

    /// The closed form expanded through order `order` (total degree for `Zq`).
    pub fn expand(self, order: u32) -> Result<GfSeries, GfError> {
        let n = order + 2;
        let int = |k: i64| UniSeries::monomial(0, Rational::from_int(k), n);
        let poly = |cs: &[i64]| UniSeries::from_ints(cs, n);
        let catalan = || -> Result<UniSeries, GfError> {
            let root = poly(&[1, -4]).sqrt()?;
            Ok(int(1).sub(&root).div_x_pow(1)?.scale(&rational(1, 2)))
        };
        let disc = || poly(&[1, -6, 1]).sqrt();
        let s = match self {
            ClosedForm::Catalan => catalan()?,
            ClosedForm::Geode => {
                let c = catalan()?;
                c.sub(&int(1).truncate(c.order()))
                    .mul(&poly(&[1, -1]).truncate(c.order()))
                    .div_x_pow(1)?
            }
            ClosedForm::RibbonSum => {
                let num = poly(&[-1, 1])
                    .mul(&disc()?)
                    .sub(&poly(&[1, -4, -1]).scale(&Rational::from_int(-1)));
                num.div_x_pow(2)?.scale(&rational(1, 8)).add(&int(1))
            }
            ClosedForm::LambdaSum => {
                let num = poly(&[1, -5, 2]).add(&poly(&[-1, 2]).mul(&disc()?));
                num.div_x_pow(2)?.scale(&rational(1, 4)).add(&int(1))
            }
            ClosedForm::Zq => return zq_closed_form(order).map(GfSeries::Bi),
        };
        Ok(GfSeries::Uni(s.truncate(order)))
    }
}

/// `1 + (1 - z - sqrt(1 - 2(1 + 2q)z + z^2)) / (2q)` with `z` first.
fn zq_closed_form(order: u32) -> Result<BiSeries, GfError> {
    let n = order + 1;
    let m = |i, j, c: i64| BiSeries::monomial(i, j, Rational::from_int(c), n);
    let disc = m(0, 0, 1)
        .add(&m(1, 0, -2))
        .add(&m(1, 1, -4))
        .add(&m(2, 0, 1));
    let num = m(0, 0, 1).sub(&m(1, 0, 1)).sub(&disc.sqrt()?);
    let f = num.div_var_pow(false, 1)?.scale(&rational(1, 2));
    Ok(BiSeries::one(order).add(&f).truncate(order))
}

/// Ring homomorphisms from noncommutative series to commutative ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Specialization {
    /// `S_n -> x^n`
    Catalan,
    /// `S^I -> x^{|I|}`
    CoeffSum,
    /// `S_n -> u x^n`, then `g_n(u) / u` at `u = 2` (degree 0 stays 1)
    RibbonU,
    /// `S^I -> 2^{|I| - ℓ(I)} x^{|I|}`
    LambdaAbs,
    /// `S_n -> z^n`, `e_k -> q^k`
    Zq,
}

impl fmt::Display for Specialization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Specialization {
    pub const ALL: [Specialization; 5] = [
        Specialization::Catalan,
        Specialization::CoeffSum,
        Specialization::RibbonU,
        Specialization::LambdaAbs,
        Specialization::Zq,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Specialization::Catalan => "catalan",
            Specialization::CoeffSum => "coeff-sum",
            Specialization::RibbonU => "ribbon-u",
            Specialization::LambdaAbs => "lambda-abs",
            Specialization::Zq => "zq",
        }
    }

    pub fn from_name(name: &str) -> Result<Self, GfError> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == name)
            .ok_or_else(|| GfError::UnknownName {
                kind: "specialization",
                name: name.to_string(),
            })
    }
}

/// Coefficient rings that can be specialized.
pub trait Specializable: Coeff {
    const RING_NAME: &'static str;

    /// Rational value, for the univariate maps.
    fn as_rational(&self) -> Option<Rational>;

    /// Polynomial in `q` under `e_k -> q^k`.
    fn as_q_polynomial(&self) -> Option<PolyT>;
}

impl Specializable for Integer {
    const RING_NAME: &'static str = "integer";
    fn as_rational(&self) -> Option<Rational> {
        Some(Rational::from_integer(self.clone()))
    }
    fn as_q_polynomial(&self) -> Option<PolyT> {
        None
    }
}

impl Specializable for Rational {
    const RING_NAME: &'static str = "rational";
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn as_q_polynomial(&self) -> Option<PolyT> {
        None
    }
}

impl Specializable for PolyT {
    const RING_NAME: &'static str = "polynomial";
    fn as_rational(&self) -> Option<Rational> {
        None
    }
    fn as_q_polynomial(&self) -> Option<PolyT> {
        None
    }
}

impl Specializable for EPoly {
    const RING_NAME: &'static str = "e-polynomial";
    fn as_rational(&self) -> Option<Rational> {
        None
    }
    fn as_q_polynomial(&self) -> Option<PolyT> {
        Some(self.evaluate(ESubstitution::PowersOfQ))
    }
}

/// Apply a specialization. Univariate results have the series' truncation
/// as their order; `Zq` gives a total-degree truncation at the same order,
/// which only keeps terms that are fully known.
pub fn specialize_ncsf<C: Specializable>(
    u: &NcsfSeries<C>,
    map: Specialization,
) -> Result<GfSeries, GfError> {
    if u.basis() != Basis::S {
        return Err(GfError::NotCompleteBasis(u.basis()));
    }
    let unsupported = || GfError::UnsupportedRing {
        map,
        ring: C::RING_NAME,
    };
    let n = u.truncation();
    if map == Specialization::Zq {
        let mut out = BiSeries::zero(n);
        for (comp, c) in u.terms() {
            let qp = c.as_q_polynomial().ok_or_else(unsupported)?;
            for (j, a) in qp.coeffs().iter().enumerate() {
                out.add_term(comp.weight(), j as u32, a.clone());
            }
        }
        return Ok(GfSeries::Bi(out));
    }
    let mut coeffs = vec![Rational::zero(); n as usize + 1];
    for d in 0..=n {
        let comp_d = u.component(d);
        let value = match map {
            Specialization::Catalan | Specialization::CoeffSum => {
                let mut acc = Rational::zero();
                for (_, c) in comp_d.terms() {
                    acc += c.as_rational().ok_or_else(unsupported)?;
                }
                acc
            }
            Specialization::LambdaAbs => {
                let mut acc = Rational::zero();
                for (comp, c) in comp_d.terms() {
                    let w = Rational::from_integer(Integer::from(2).pow(d - comp.len() as u32));
                    acc += c.as_rational().ok_or_else(unsupported)? * w;
                }
                acc
            }
            Specialization::RibbonU => {
                // g_d(u) as a polynomial in u, divided by u, at u = 2.
                let mut gu = PolyT::zero();
                for (comp, c) in comp_d.terms() {
                    let mut mono = vec![Rational::zero(); comp.len() + 1];
                    mono[comp.len()] = c.as_rational().ok_or_else(unsupported)?;
                    gu = gu.add(&PolyT::new(mono));
                }
                if d == 0 {
                    gu.eval_int(1)
                } else {
                    gu.exact_div(&PolyT::t())
                        .map_err(|_| GfError::NonCancellation {
                            var: "u",
                            power: 1,
                            index: 0,
                            value: format_rational(&gu.coeff(0)),
                        })?
                        .eval_int(2)
                }
            }
            Specialization::Zq => unreachable!(),
        };
        coeffs[d as usize] = value;
    }
    Ok(GfSeries::Uni(UniSeries::from_coeffs(coeffs, n)))
}

/// Outcome of comparing a series with an expected prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixReport {
    pub compared: usize,
    /// `(index, expected, found)` of the first disagreement.
    pub first_mismatch: Option<(usize, Rational, Rational)>,
}

impl PrefixReport {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Compare the leading coefficients of `s` with `expected`.
pub fn prefix_check(s: &UniSeries, expected: &[Rational]) -> Result<PrefixReport, GfError> {
    if expected.len() > s.coeffs.len() {
        return Err(GfError::PrefixTooLong {
            expected: expected.len(),
            order: s.order(),
        });
    }
    let first_mismatch = expected
        .iter()
        .zip(&s.coeffs)
        .enumerate()
        .find(|(_, (e, f))| e != f)
        .map(|(i, (e, f))| (i, e.clone(), f.clone()));
    Ok(PrefixReport {
        compared: expected.len(),
        first_mismatch,
    })
}

/// [`prefix_check`] against integers.
pub fn prefix_check_ints(s: &UniSeries, expected: &[i64]) -> Result<PrefixReport, GfError> {
    let expected: Vec<Rational> = expected.iter().map(|&c| Rational::from_int(c)).collect();
    prefix_check(s, &expected)
}

impl GfSeries {
    pub fn uni(&self) -> Option<&UniSeries> {
        match self {
            GfSeries::Uni(u) => Some(u),
            GfSeries::Bi(_) => None,
        }
    }

    pub fn bi(&self) -> Option<&BiSeries> {
        match self {
            GfSeries::Bi(b) => Some(b),
            GfSeries::Uni(_) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lagrange::{geode, solve_g};
    use crate::schroeder::{enumerate_prime_schroeder, g_e, ERoute};
    use proptest::prelude::*;

    fn ints(s: &UniSeries) -> Vec<i64> {
        s.integer_coeffs()
            .unwrap()
            .iter()
            .map(|c| c.try_into().unwrap())
            .collect()
    }

    #[test]
    fn arithmetic() {
        let r = UniSeries::from_ints(&[1, -4], 3).sqrt().unwrap();
        assert_eq!(ints(&r), vec![1, -2, -2, -4]);
        let geo = UniSeries::from_ints(&[1, -1], 6).inverse().unwrap();
        assert_eq!(ints(&geo), vec![1; 7]);
        let d = UniSeries::from_ints(&[1, -6, 1], 2).sqrt().unwrap();
        assert_eq!(ints(&d), vec![1, -3, -4]);
        let big = UniSeries::from_ints(&[1, -6, 1], 12);
        let root = big.sqrt().unwrap();
        assert_eq!(root.mul(&root), big);
        assert_eq!(UniSeries::x(3).inverse(), Err(GfError::ZeroConstantTerm));
        assert_eq!(
            UniSeries::from_ints(&[4, 1], 3).sqrt(),
            Err(GfError::NonUnitSqrt)
        );
        assert!(matches!(
            UniSeries::from_ints(&[1, 1], 3).div_x_pow(1),
            Err(GfError::NonCancellation { .. })
        ));
        let b = BiSeries::one(6).sub(&BiSeries::monomial(1, 1, Rational::from_int(4), 6));
        let rb = b.sqrt().unwrap();
        assert_eq!(rb.mul(&rb), b);
        assert_eq!(b.inverse().unwrap().mul(&b), BiSeries::one(6));
    }

    #[test]
    fn closed_forms() {
        let get = |c: ClosedForm, n| ints(ClosedForm::expand(c, n).unwrap().uni().unwrap());
        assert_eq!(get(ClosedForm::Catalan, 5), vec![1, 1, 2, 5, 14, 42]);
        assert_eq!(
            get(ClosedForm::Geode, 7),
            vec![1, 1, 3, 9, 28, 90, 297, 1001]
        );
        assert_eq!(
            get(ClosedForm::RibbonSum, 9),
            vec![1, 1, 4, 17, 76, 353, 1688, 8257, 41128, 207905]
        );
        assert_eq!(
            get(ClosedForm::LambdaSum, 10),
            vec![1, 1, 5, 23, 107, 509, 2473, 12235, 61463, 312761, 1609005]
        );
        // C = 1 + x C^2
        let c = ClosedForm::Catalan
            .expand(10)
            .unwrap()
            .uni()
            .unwrap()
            .clone();
        assert_eq!(UniSeries::one(10).add(&UniSeries::x(10).mul(&c).mul(&c)), c);
        assert_eq!(ClosedForm::from_name("rub").unwrap(), ClosedForm::RibbonSum);
        assert!(ClosedForm::from_name("nope").is_err());
    }

    #[test]
    fn zq_form_counts_prime_trees() {
        let f = ClosedForm::Zq.expand(11).unwrap().bi().unwrap().clone();
        for n in 1..=5u32 {
            let col = f.column(n);
            // q-degree of z^n is at most n - 1, fully inside total degree 11.
            assert_eq!(
                col.eval_int(1),
                Rational::from_int(enumerate_prime_schroeder(n).len() as i64)
            );
        }
        assert_eq!(f.coeff(0, 0), Rational::from_int(1));
    }

    #[test]
    fn ncsf_routes_match_closed_forms() {
        let n = 8;
        let g = solve_g(n);
        let gamma = geode(n, 1);
        let spec =
            |s: &NcsfSeries<Integer>, m| specialize_ncsf(s, m).unwrap().uni().unwrap().clone();
        let closed = |c: ClosedForm| c.expand(n).unwrap().uni().unwrap().clone();
        assert_eq!(
            spec(&g, Specialization::Catalan),
            closed(ClosedForm::Catalan)
        );
        assert_eq!(
            spec(&gamma, Specialization::CoeffSum),
            closed(ClosedForm::Geode)
        );
        assert_eq!(
            spec(&gamma, Specialization::RibbonU),
            closed(ClosedForm::RibbonSum)
        );
        assert_eq!(
            spec(&gamma, Specialization::LambdaAbs),
            closed(ClosedForm::LambdaSum)
        );
        let ge = g_e(n, ERoute::Formula);
        let zq = specialize_ncsf(&ge, Specialization::Zq).unwrap();
        assert_eq!(zq, ClosedForm::Zq.expand(n).unwrap());
        assert!(matches!(
            specialize_ncsf(&g, Specialization::Zq),
            Err(GfError::UnsupportedRing { .. })
        ));
        assert!(matches!(
            specialize_ncsf(&ge, Specialization::Catalan),
            Err(GfError::UnsupportedRing { .. })
        ));
        assert!(matches!(
            specialize_ncsf(&g.convert(Basis::R), Specialization::Catalan),
            Err(GfError::NotCompleteBasis(Basis::R))
        ));
    }

    #[test]
    fn ribbon_functional_equation() {
        // g with S_n -> u x^n satisfies g = 1 + u x g / (1 - x g); here a = x, b = u.
        let order = 8;
        let g = solve_g(order);
        let mut gu = BiSeries::zero(order);
        for (comp, c) in g.terms() {
            gu.add_term(
                comp.weight(),
                comp.len() as u32,
                Rational::from_integer(c.clone()),
            );
        }
        let x = BiSeries::monomial(1, 0, Rational::one(), order);
        let u = BiSeries::monomial(0, 1, Rational::one(), order);
        let xg = x.mul(&gu);
        let rhs =
            BiSeries::one(order).add(&u.mul(&xg).div(&BiSeries::one(order).sub(&xg)).unwrap());
        assert_eq!(rhs, gu);
    }

    #[test]
    fn prefix_checks() {
        let s = UniSeries::from_ints(&[1, 1, 2, 5], 3);
        assert!(prefix_check_ints(&s, &[1, 1, 2]).unwrap().passed());
        assert!(prefix_check_ints(&s, &[]).unwrap().passed());
        let bad = prefix_check_ints(&s, &[1, 1, 3]).unwrap();
        assert_eq!(bad.first_mismatch.unwrap().0, 2);
        assert!(prefix_check_ints(&s, &[1, 1, 2, 5, 14]).is_err());
    }

    fn arb_series(n: u32) -> impl Strategy<Value = NcsfSeries<Integer>> {
        let comps: Vec<_> = (0..=n).flat_map(crate::combinat::compositions).collect();
        prop::collection::vec(-3i64..=3, comps.len()).prop_map(move |cs| {
            NcsfSeries::from_terms(
                Basis::S,
                n,
                comps.iter().cloned().zip(cs.into_iter().map(Integer::from)),
            )
        })
    }

    proptest! {
        #[test]
        fn specializations_are_multiplicative(a in arb_series(5), b in arb_series(5)) {
            for map in [Specialization::Catalan, Specialization::LambdaAbs] {
                let lhs = specialize_ncsf(&a.mul(&b).unwrap(), map).unwrap();
                let sa = specialize_ncsf(&a, map).unwrap().uni().unwrap().clone();
                let sb = specialize_ncsf(&b, map).unwrap().uni().unwrap().clone();
                prop_assert_eq!(lhs, GfSeries::Uni(sa.mul(&sb)));
            }
        }
    }
}
