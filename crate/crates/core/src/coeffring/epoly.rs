use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Signed;

use super::{factorial, Coeff, CoeffError, Integer, PolyT};

/// Integer partition, parts weakly decreasing.
///
/// Ordered by weight, then reverse-lexicographically (so `(2)` precedes `(1,1)`).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Multiset union, i.e. the product `e_λ e_μ`.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Partition::new(parts)
    }

    /// All partitions of `n`, in this type's order.
    pub fn all_of(n: u32) -> Vec<Partition> {
        fn rec(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(prefix.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                prefix.push(p);
                rec(rest - p, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Renders the monomial `e_λ` as e.g. `e_2e_1^2`; the empty partition is `1`.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut i = 0;
        while i < self.0.len() {
            let part = self.0[i];
            let run = self.0[i..].iter().take_while(|&&p| p == part).count();
            write!(f, "e_{part}")?;
            if run > 1 {
                write!(f, "^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

/// Polynomial in the commuting generators `e_1, e_2, ...` with integer
/// coefficients, keyed by the partition of the monomial.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct EPoly {
    terms: BTreeMap<Partition, Integer>,
}

/// Ring homomorphisms out of the `e`-polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ESubstitution {
    /// `e_n -> (-1)^n`
    AlternatingSigns,
    /// `e_n -> q^n`
    PowersOfQ,
    /// `e_n -> 1`
    AllOnes,
    /// `e_1 -> 1`, `e_n -> 0` for `n >= 2`
    FirstOnly,
}

impl ESubstitution {
    fn image(self, n: u32) -> PolyT {
        match self {
            ESubstitution::AlternatingSigns => {
                PolyT::from_int(if n.is_multiple_of(2) { 1 } else { -1 })
            }
            ESubstitution::PowersOfQ => {
                let mut c = vec![0; n as usize + 1];
                c[n as usize] = 1;
                PolyT::from_ints(&c)
            }
            ESubstitution::AllOnes => PolyT::one(),
            ESubstitution::FirstOnly => PolyT::from_int(i64::from(n == 1)),
        }
    }
}

impl EPoly {
    pub fn monomial(p: Partition, c: Integer) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(p, c);
        }
        EPoly { terms }
    }

    /// The generator `e_n`; `e_0` is the unit.
    pub fn elementary(n: u32) -> Self {
        Self::monomial(Partition::new(vec![n]), BigInt::one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Integer)> {
        self.terms.iter()
    }

    pub fn coeff(&self, p: &Partition) -> Integer {
        self.terms.get(p).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert_add(&mut self, p: Partition, c: Integer) {
        let entry = self.terms.entry(p.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&p);
        }
    }

    /// Apply a substitution, landing in polynomials (in `q` for
    /// [`ESubstitution::PowersOfQ`], constants otherwise).
    pub fn evaluate(&self, rule: ESubstitution) -> PolyT {
        let mut acc = PolyT::zero();
        for (p, c) in &self.terms {
            let mut m = PolyT::from_int(1);
            for &part in p.parts() {
                m = &m * &rule.image(part);
            }
            acc = &acc + &m.scale_rational(&num_rational::BigRational::from_integer(c.clone()));
        }
        acc
    }

    /// Integer value under a substitution that sends every `e_n` to an integer.
    pub fn evaluate_integer(&self, rule: ESubstitution) -> Integer {
        assert!(
            rule != ESubstitution::PowersOfQ,
            "q-substitution is not integer valued"
        );
        self.evaluate(rule).coeff(0).to_integer()
    }

    fn constant_value(&self) -> Option<Integer> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&Partition::empty()).cloned(),
            _ => None,
        }
    }

    /// True for a single term with a negative coefficient.
    pub fn is_negative_monomial(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(Signed::is_negative)
    }
}

/// `e_k(jA)`: the sum over weak compositions `(i_1, ..., i_j)` of `k` of
/// `e_{i_1} ... e_{i_j}`, collected by the underlying partition.
pub fn elementary_of_multiple(k: u32, j: u32) -> EPoly {
    let mut out = EPoly::zero();
    for mu in Partition::all_of(k) {
        if mu.len() > j as usize {
            continue;
        }
        // Number of distinct arrangements of mu padded with zeros to length j.
        let mut denom = factorial((j as usize - mu.len()) as u64);
        let parts = mu.parts();
        let mut i = 0;
        while i < parts.len() {
            let run = parts[i..].iter().take_while(|&&p| p == parts[i]).count();
            denom *= factorial(run as u64);
            i += run;
        }
        let count = factorial(u64::from(j)) / denom;
        out.insert_add(mu, count);
    }
    out
}

impl Coeff for EPoly {
    fn zero() -> Self {
        EPoly {
            terms: BTreeMap::new(),
        }
    }
    fn one() -> Self {
        Self::monomial(Partition::empty(), BigInt::one())
    }
    fn from_int(n: i64) -> Self {
        Self::monomial(Partition::empty(), BigInt::from(n))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
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
    /// Only division by a nonzero integer constant is supported.
    fn try_div(&self, rhs: &Self) -> Result<Self, CoeffError> {
        let not_divisible = || CoeffError::NotDivisible {
            dividend: self.to_string(),
            divisor: rhs.to_string(),
        };
        let c = rhs.constant_value().ok_or_else(not_divisible)?;
        if c.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        let mut out = EPoly::zero();
        for (p, a) in &self.terms {
            let q = a.try_div(&c).map_err(|_| not_divisible())?;
            out.terms.insert(p.clone(), q);
        }
        Ok(out)
    }
    fn add_assign(&mut self, rhs: &Self) {
        for (p, c) in &rhs.terms {
            self.insert_add(p.clone(), c.clone());
        }
    }
}

impl<'a> Add<&'a EPoly> for &'a EPoly {
    type Output = EPoly;
    fn add(self, rhs: &EPoly) -> EPoly {
        let mut out = self.clone();
        Coeff::add_assign(&mut out, rhs);
        out
    }
}

impl<'a> Sub<&'a EPoly> for &'a EPoly {
    type Output = EPoly;
    fn sub(self, rhs: &EPoly) -> EPoly {
        self + &(-rhs)
    }
}

impl Neg for &EPoly {
    type Output = EPoly;
    fn neg(self) -> EPoly {
        EPoly {
            terms: self.terms.iter().map(|(p, c)| (p.clone(), -c)).collect(),
        }
    }
}

impl<'a> Mul<&'a EPoly> for &'a EPoly {
    type Output = EPoly;
    fn mul(self, rhs: &EPoly) -> EPoly {
        let mut out = EPoly::zero();
        for (p, a) in &self.terms {
            for (q, b) in &rhs.terms {
                out.insert_add(p.union(q), a * b);
            }
        }
        out
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, p: &Partition, c: &Integer) -> fmt::Result {
    if p.is_empty() {
        write!(f, "{c}")
    } else if c.is_one() {
        write!(f, "{p}")
    } else if c == &BigInt::from(-1) {
        write!(f, "-{p}")
    } else {
        write!(f, "{c}{p}")
    }
}

impl fmt::Display for EPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.terms.len() {
            0 => f.write_str("0"),
            1 => {
                let (p, c) = self.terms.iter().next().unwrap();
                write_term(f, p, c)
            }
            _ => {
                f.write_str("(")?;
                for (i, (p, c)) in self.terms.iter().enumerate() {
                    if i > 0 && !c.is_negative() {
                        f.write_str("+")?;
                    }
                    write_term(f, p, c)?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Debug for EPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EPoly{self}")
    }
}
