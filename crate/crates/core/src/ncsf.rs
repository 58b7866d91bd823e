//! Truncated series of noncommutative symmetric functions.
//!
//! The complete basis `S^I` is the only computational basis: products are
//! concatenations of compositions there. Ribbon (`R_I`) and elementary
//! (`Λ^I`) expansions are produced by [`NcsfSeries::convert`] and are only
//! consumed by the annihilation operators and by printing.
//!
//! A series knows its truncation order `N` and is exact in degrees `0..=N`.
//! Operations that need more headroom than they are given fail with
//! [`NcsfError::InsufficientTruncation`] instead of quietly dropping terms.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::coeffring::{Coeff, CoeffError, CoeffText, Integer, PolyT, Rational};
use crate::combinat::{compositions, Composition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NcsfError {
    #[error("expected {expected} basis, found {found}")]
    BasisMismatch { expected: Basis, found: Basis },
    #[error("need terms through degree {needed}, series is only exact through {available}")]
    InsufficientTruncation { needed: u32, available: u32 },
    #[error("constant term is not invertible")]
    NotInvertible,
    #[error(
        "not right-divisible: degree {degree} residual term S^{composition} does not end in 1"
    )]
    NotDivisible {
        degree: u32,
        composition: Composition,
    },
    #[error("right division needs a divisor with zero constant term and a degree-one part c*S_1")]
    BadDivisor,
    #[error("the elementary-basis annihilation rule is only defined for S_1^-1, not S_{0}^-1")]
    UnsupportedAnnihilation(u32),
    #[error("binomial powers need a constant term equal to 1")]
    ConstantTermNotOne,
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    /// Complete functions `S^I`.
    S,
    /// Ribbon functions `R_I`.
    R,
    /// Elementary functions `Λ^I`.
    Lambda,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::S => "S",
            Basis::R => "R",
            Basis::Lambda => "L",
        })
    }
}

impl std::str::FromStr for Basis {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "S" | "s" => Ok(Basis::S),
            "R" | "r" => Ok(Basis::R),
            "L" | "l" | "Lambda" | "Λ" => Ok(Basis::Lambda),
            other => Err(format!("unknown basis {other:?} (expected S, R or L)")),
        }
    }
}

/// Homogeneous element: a linear combination of compositions of one weight.
#[derive(Clone, PartialEq, Eq)]
pub struct HomElem<C> {
    degree: u32,
    terms: BTreeMap<Composition, C>,
}

impl<C: Coeff> HomElem<C> {
    pub fn zero(degree: u32) -> Self {
        HomElem {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(comp: Composition, c: C) -> Self {
        let mut h = Self::zero(comp.weight());
        h.add_term(comp, c);
        h
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Composition, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, comp: &Composition) -> C {
        self.terms.get(comp).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, comp: Composition, c: C) {
        assert_eq!(
            comp.weight(),
            self.degree,
            "composition {comp:?} in degree {}",
            self.degree
        );
        if c.is_zero() {
            return;
        }
        match self.terms.entry(comp) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_assign(&c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &HomElem<C>) {
        for (comp, c) in &other.terms {
            self.add_term(comp.clone(), c.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &HomElem<C>) {
        for (comp, c) in &other.terms {
            self.add_term(comp.clone(), c.neg());
        }
    }

    pub fn scale(&self, c: &C) -> HomElem<C> {
        let mut out = HomElem::zero(self.degree);
        for (comp, a) in &self.terms {
            out.add_term(comp.clone(), a.mul(c));
        }
        out
    }

    pub fn neg(&self) -> HomElem<C> {
        HomElem {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c.neg()))
                .collect(),
        }
    }

    /// Accumulate `x * y` (concatenation product) into `self`.
    pub fn add_product(&mut self, x: &HomElem<C>, y: &HomElem<C>) {
        assert_eq!(x.degree + y.degree, self.degree);
        for (i, a) in &x.terms {
            for (j, b) in &y.terms {
                self.add_term(i.concat(j), a.mul(b));
            }
        }
    }

    pub fn mul(&self, other: &HomElem<C>) -> HomElem<C> {
        let mut out = HomElem::zero(self.degree + other.degree);
        out.add_product(self, other);
        out
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> HomElem<D> {
        let mut out = HomElem::zero(self.degree);
        for (comp, c) in &self.terms {
            out.add_term(comp.clone(), f(c));
        }
        out
    }

    pub fn coefficients(&self) -> impl Iterator<Item = &C> {
        self.terms.values()
    }
}

impl<C: Coeff> fmt::Debug for HomElem<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// A series truncated after degree `N`, exact in every degree `0..=N`.
#[derive(Clone, PartialEq, Eq)]
pub struct NcsfSeries<C> {
    basis: Basis,
    components: Vec<HomElem<C>>,
}

impl<C: Coeff> fmt::Debug for NcsfSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NcsfSeries")
            .field("basis", &self.basis)
            .field("components", &self.components)
            .finish()
    }
}

/// Expansion of `S_n` in the elementary basis, or of `Λ_n` in the complete
/// basis: `Σ_{J ⊨ n} (-1)^{n - ℓ(J)} X^J`.
fn complete_elementary_row(n: u32) -> Vec<(Composition, i64)> {
    compositions(n)
        .into_iter()
        .map(|j| {
            let sign = if (n as usize - j.len()).is_multiple_of(2) {
                1
            } else {
                -1
            };
            (j, sign)
        })
        .collect()
}

impl<C: Coeff> NcsfSeries<C> {
    pub fn zero(truncation: u32) -> Self {
        NcsfSeries {
            basis: Basis::S,
            components: (0..=truncation).map(HomElem::zero).collect(),
        }
    }

    pub fn one(truncation: u32) -> Self {
        let mut s = Self::zero(truncation);
        s.components[0].add_term(Composition::empty(), C::one());
        s
    }

    /// `σ_1 = 1 + S_1 + S_2 + ...`
    pub fn sigma1(truncation: u32) -> Self {
        let mut s = Self::zero(truncation);
        for d in 0..=truncation {
            s.components[d as usize].add_term(Composition::single(d), C::one());
        }
        s
    }

    /// The single generator `S_n` (or `1` for `n = 0`).
    pub fn generator(n: u32, truncation: u32) -> Self {
        let mut s = Self::zero(truncation);
        if n <= truncation {
            s.components[n as usize].add_term(Composition::single(n), C::one());
        }
        s
    }

    /// Series with the given components; `components[d]` must have degree `d`.
    pub fn from_components(basis: Basis, components: Vec<HomElem<C>>) -> Self {
        assert!(
            !components.is_empty(),
            "a series has at least a degree-0 component"
        );
        for (d, h) in components.iter().enumerate() {
            assert_eq!(h.degree as usize, d);
        }
        NcsfSeries { basis, components }
    }

    /// Series from `(composition, coefficient)` pairs in the given basis.
    pub fn from_terms(
        basis: Basis,
        truncation: u32,
        terms: impl IntoIterator<Item = (Composition, C)>,
    ) -> Self {
        let mut s = Self::zero(truncation);
        s.basis = basis;
        for (comp, c) in terms {
            let d = comp.weight();
            if d <= truncation {
                s.components[d as usize].add_term(comp, c);
            }
        }
        s
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn truncation(&self) -> u32 {
        self.components.len() as u32 - 1
    }

    pub fn component(&self, d: u32) -> &HomElem<C> {
        &self.components[d as usize]
    }

    pub fn components(&self) -> &[HomElem<C>] {
        &self.components
    }

    pub fn coeff(&self, comp: &Composition) -> C {
        match self.components.get(comp.weight() as usize) {
            Some(h) => h.coeff(comp),
            None => C::zero(),
        }
    }

    pub fn constant_term(&self) -> C {
        self.components[0].coeff(&Composition::empty())
    }

    /// Drop degrees above `n`.
    pub fn truncate(&self, n: u32) -> Result<Self, NcsfError> {
        self.require(n)?;
        Ok(NcsfSeries {
            basis: self.basis,
            components: self.components[..=n as usize].to_vec(),
        })
    }

    fn require(&self, needed: u32) -> Result<(), NcsfError> {
        if needed > self.truncation() {
            Err(NcsfError::InsufficientTruncation {
                needed,
                available: self.truncation(),
            })
        } else {
            Ok(())
        }
    }

    fn require_basis(&self, basis: Basis) -> Result<(), NcsfError> {
        if self.basis == basis {
            Ok(())
        } else {
            Err(NcsfError::BasisMismatch {
                expected: basis,
                found: self.basis,
            })
        }
    }

    fn check_same_basis(&self, other: &Self) -> Result<(), NcsfError> {
        if self.basis == other.basis {
            Ok(())
        } else {
            Err(NcsfError::BasisMismatch {
                expected: self.basis,
                found: other.basis,
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, NcsfError> {
        self.check_same_basis(other)?;
        let n = self.truncation().min(other.truncation());
        let components = (0..=n as usize)
            .map(|d| {
                let mut h = self.components[d].clone();
                h.add_assign(&other.components[d]);
                h
            })
            .collect();
        Ok(NcsfSeries {
            basis: self.basis,
            components,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, NcsfError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        NcsfSeries {
            basis: self.basis,
            components: self.components.iter().map(HomElem::neg).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        NcsfSeries {
            basis: self.basis,
            components: self.components.iter().map(|h| h.scale(c)).collect(),
        }
    }

    /// `self - 1`.
    pub fn minus_one(&self) -> Self {
        let mut out = self.clone();
        out.components[0].add_term(Composition::empty(), C::one().neg());
        out
    }

    /// `self + 1`.
    pub fn plus_one(&self) -> Self {
        let mut out = self.clone();
        out.components[0].add_term(Composition::empty(), C::one());
        out
    }

    /// Noncommutative Cauchy product. Both factors must be in the complete basis.
    pub fn mul(&self, other: &Self) -> Result<Self, NcsfError> {
        self.require_basis(Basis::S)?;
        other.require_basis(Basis::S)?;
        let n = self.truncation().min(other.truncation());
        let mut components: Vec<HomElem<C>> = (0..=n).map(HomElem::zero).collect();
        for (d, out) in components.iter_mut().enumerate() {
            for a in 0..=d {
                let (x, y) = (&self.components[a], &other.components[d - a]);
                if !x.is_zero() && !y.is_zero() {
                    out.add_product(x, y);
                }
            }
        }
        Ok(NcsfSeries {
            basis: Basis::S,
            components,
        })
    }

    /// Multiplicative inverse, solved degree by degree from `u v = 1`.
    pub fn inverse(&self) -> Result<Self, NcsfError> {
        self.require_basis(Basis::S)?;
        let c0 = self.constant_term();
        let inv0 = C::one()
            .try_div(&c0)
            .map_err(|_| NcsfError::NotInvertible)?;
        let n = self.truncation();
        let mut v: Vec<HomElem<C>> = Vec::with_capacity(n as usize + 1);
        v.push(HomElem::monomial(Composition::empty(), inv0.clone()));
        for d in 1..=n as usize {
            let mut acc = HomElem::zero(d as u32);
            for m in 1..=d {
                if !self.components[m].is_zero() && !v[d - m].is_zero() {
                    acc.add_product(&self.components[m], &v[d - m]);
                }
            }
            v.push(acc.scale(&inv0.neg()));
        }
        Ok(NcsfSeries {
            basis: Basis::S,
            components: v,
        })
    }

    /// Integer power; negative exponents go through [`Self::inverse`].
    pub fn pow(&self, k: i64) -> Result<Self, NcsfError> {
        self.require_basis(Basis::S)?;
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one(self.truncation());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Right action of the annihilation operator `S_n^{-1}`.
    ///
    /// Complete basis: a final part equal to `n` is deleted, every other term
    /// vanishes. Ribbon basis: `R_{I K} -> (-1)^{ℓ(K)-1} R_I` when the suffix
    /// `K` has weight exactly `n`, else zero; for `n = 1` this is again
    /// "delete a final 1". Elementary basis (only `n = 1`): the last part is
    /// decremented and dropped when it reaches zero. The output is exact
    /// through degree `N - n`.
    pub fn annihilate(&self, n: u32) -> Result<Self, NcsfError> {
        assert!(n >= 1);
        if self.basis == Basis::Lambda && n != 1 {
            return Err(NcsfError::UnsupportedAnnihilation(n));
        }
        self.require(n)?;
        let out_n = self.truncation() - n;
        let components = (0..=out_n)
            .map(|d| {
                let src = &self.components[(d + n) as usize];
                let mut h = HomElem::zero(d);
                for (comp, c) in &src.terms {
                    match self.basis {
                        Basis::S => {
                            if comp.last() == Some(n) {
                                h.add_term(comp.without_last(), c.clone());
                            }
                        }
                        Basis::R => {
                            if let Some((prefix, sign)) = ribbon_suffix_split(comp, n) {
                                h.add_term(prefix, c.scale(sign));
                            }
                        }
                        Basis::Lambda => {
                            if let Some(last) = comp.last() {
                                let rest = comp.without_last();
                                let next = if last > 1 { rest.push(last - 1) } else { rest };
                                h.add_term(next, c.clone());
                            }
                        }
                    }
                }
                h
            })
            .collect();
        Ok(NcsfSeries {
            basis: self.basis,
            components,
        })
    }

    /// Re-express in another basis.
    pub fn convert(&self, target: Basis) -> Self {
        if self.basis == target {
            return self.clone();
        }
        let via_s = match self.basis {
            Basis::S => self.clone(),
            Basis::R => self.map_terms(Basis::S, |comp| {
                comp.coarsenings()
                    .into_iter()
                    .map(|j| {
                        let sign = if (comp.len() - j.len()) % 2 == 0 {
                            1
                        } else {
                            -1
                        };
                        (j, sign)
                    })
                    .collect()
            }),
            Basis::Lambda => self.map_terms(Basis::S, expand_multiplicatively),
        };
        match target {
            Basis::S => via_s,
            Basis::R => via_s.map_terms(Basis::R, |comp| {
                comp.coarsenings().into_iter().map(|j| (j, 1)).collect()
            }),
            Basis::Lambda => via_s.map_terms(Basis::Lambda, expand_multiplicatively),
        }
    }

    /// Linear map given on basis elements by integer combinations.
    fn map_terms(
        &self,
        target: Basis,
        image: impl Fn(&Composition) -> Vec<(Composition, i64)>,
    ) -> Self {
        let components = self
            .components
            .iter()
            .map(|h| {
                let mut out = HomElem::zero(h.degree);
                for (comp, c) in &h.terms {
                    for (j, k) in image(comp) {
                        out.add_term(j, c.scale(k));
                    }
                }
                out
            })
            .collect();
        NcsfSeries {
            basis: target,
            components,
        }
    }

    /// The algebra morphism `S_n -> (-1)^n Λ_n = Σ_{I ⊨ n} (-1)^{ℓ(I)} S^I`,
    /// i.e. the substitution `A -> -A`.
    pub fn negate_alphabet(&self) -> Result<Self, NcsfError> {
        self.require_basis(Basis::S)?;
        Ok(self.map_terms(Basis::S, |comp| {
            let mut acc: Vec<(Composition, i64)> = vec![(Composition::empty(), 1)];
            for &p in comp.parts() {
                let row: Vec<(Composition, i64)> = compositions(p)
                    .into_iter()
                    .map(|j| {
                        let sign = if j.len() % 2 == 0 { 1 } else { -1 };
                        (j, sign)
                    })
                    .collect();
                acc = acc
                    .iter()
                    .flat_map(|(a, x)| row.iter().map(move |(b, y)| (a.concat(b), x * y)))
                    .collect();
            }
            acc
        }))
    }

    /// The algebra morphism `φ_k: S_n -> S_{n/k}` when `k | n`, else `0`.
    pub fn phi(&self, k: u32) -> Result<Self, NcsfError> {
        assert!(k >= 1);
        self.require_basis(Basis::S)?;
        let out_n = self.truncation() / k;
        let components = (0..=out_n)
            .map(|d| {
                let mut h = HomElem::zero(d);
                for (comp, c) in &self.components[(d * k) as usize].terms {
                    if comp.parts().iter().all(|p| p % k == 0) {
                        let parts = comp.parts().iter().map(|p| p / k).collect();
                        h.add_term(Composition::from_parts_unchecked(parts), c.clone());
                    }
                }
                h
            })
            .collect();
        Ok(NcsfSeries {
            basis: Basis::S,
            components,
        })
    }

    /// The Lagrange transform `L`, the algebra morphism `S_n -> g_n`, applied
    /// to `self`. `g` must be known at least as far as `self`.
    pub fn lagrange_transform(&self, g: &Self) -> Result<Self, NcsfError> {
        self.require_basis(Basis::S)?;
        g.require_basis(Basis::S)?;
        g.require(self.truncation())?;
        let mut memo: HashMap<Composition, HomElem<C>> = HashMap::new();
        fn image<C: Coeff>(
            comp: &Composition,
            g: &NcsfSeries<C>,
            memo: &mut HashMap<Composition, HomElem<C>>,
        ) -> HomElem<C> {
            if let Some(h) = memo.get(comp) {
                return h.clone();
            }
            let h = match comp.last() {
                None => HomElem::monomial(Composition::empty(), C::one()),
                Some(last) => {
                    let prefix = image(&comp.without_last(), g, memo);
                    prefix.mul(&g.components[last as usize])
                }
            };
            memo.insert(comp.clone(), h.clone());
            h
        }
        let components = self
            .components
            .iter()
            .map(|h| {
                let mut out = HomElem::zero(h.degree);
                for (comp, c) in &h.terms {
                    out.add_assign(&image(comp, g, &mut memo).scale(c));
                }
                out
            })
            .collect();
        Ok(NcsfSeries {
            basis: Basis::S,
            components,
        })
    }

    /// Exact right division: `θ` with `θ u = v`, where `v_0 = u_0 = 0` and
    /// `u_1 = c S_1` for an invertible `c`. The quotient is exact through
    /// degree `N - 1`.
    pub fn right_divide(&self, u: &Self) -> Result<Self, NcsfError> {
        let v = self;
        v.require_basis(Basis::S)?;
        u.require_basis(Basis::S)?;
        let n = v.truncation().min(u.truncation());
        if n == 0 || !v.components[0].is_zero() || !u.components[0].is_zero() {
            return Err(NcsfError::BadDivisor);
        }
        let u1 = &u.components[1];
        let one = Composition::single(1);
        if u1.len() != 1 || u1.coeff(&one).is_zero() {
            return Err(NcsfError::BadDivisor);
        }
        let c = u1.coeff(&one);
        let mut theta: Vec<HomElem<C>> = Vec::with_capacity(n as usize);
        for d in 1..=n {
            let mut r = v.components[d as usize].clone();
            for m in 2..=d {
                let (t, um) = (&theta[(d - m) as usize], &u.components[m as usize]);
                if !t.is_zero() && !um.is_zero() {
                    let mut p = HomElem::zero(d);
                    p.add_product(t, um);
                    r.sub_assign(&p);
                }
            }
            let mut q = HomElem::zero(d - 1);
            for (comp, a) in &r.terms {
                if comp.last() != Some(1) {
                    return Err(NcsfError::NotDivisible {
                        degree: d,
                        composition: comp.clone(),
                    });
                }
                q.add_term(comp.without_last(), a.try_div(&c)?);
            }
            theta.push(q);
        }
        Ok(NcsfSeries {
            basis: Basis::S,
            components: theta,
        })
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> NcsfSeries<D> {
        NcsfSeries {
            basis: self.basis,
            components: self.components.iter().map(|h| h.map_coeffs(&f)).collect(),
        }
    }

    /// Fallible coefficient map; the first error aborts.
    pub fn try_map_coeffs<D: Coeff, E>(
        &self,
        f: impl Fn(&C) -> Result<D, E>,
    ) -> Result<NcsfSeries<D>, E> {
        let mut components = Vec::with_capacity(self.components.len());
        for h in &self.components {
            let mut out = HomElem::zero(h.degree);
            for (comp, c) in &h.terms {
                out.add_term(comp.clone(), f(c)?);
            }
            components.push(out);
        }
        Ok(NcsfSeries {
            basis: self.basis,
            components,
        })
    }

    /// Every stored term, degree by degree.
    pub fn terms(&self) -> impl Iterator<Item = (&Composition, &C)> {
        self.components.iter().flat_map(|h| h.terms())
    }
}

/// Splits `I = I' K` with `|K| = n`, returning `I'` and `(-1)^{ℓ(K)-1}`.
fn ribbon_suffix_split(comp: &Composition, n: u32) -> Option<(Composition, i64)> {
    let parts = comp.parts();
    let mut weight = 0;
    for (k, &p) in parts.iter().rev().enumerate() {
        weight += p;
        if weight == n {
            let prefix = parts[..parts.len() - k - 1].to_vec();
            let sign = if k % 2 == 0 { 1 } else { -1 };
            return Some((Composition::from_parts_unchecked(prefix), sign));
        }
        if weight > n {
            return None;
        }
    }
    None
}

/// `X^I -> Π_j Σ_{J ⊨ i_j} (-1)^{i_j - ℓ(J)} Y^J`: both directions of the
/// complete/elementary change of basis.
fn expand_multiplicatively(comp: &Composition) -> Vec<(Composition, i64)> {
    let mut acc: Vec<(Composition, i64)> = vec![(Composition::empty(), 1)];
    for &p in comp.parts() {
        let row = complete_elementary_row(p);
        acc = acc
            .iter()
            .flat_map(|(a, x)| row.iter().map(move |(b, y)| (a.concat(b), x * y)))
            .collect();
    }
    acc
}

impl NcsfSeries<PolyT> {
    /// `u^p = Σ_j binom(p, j) (u - 1)^j` for a polynomial exponent `p`.
    pub fn power_binomial(&self, p: &PolyT) -> Result<Self, NcsfError> {
        self.require_basis(Basis::S)?;
        if !self.constant_term().is_one() {
            return Err(NcsfError::ConstantTermNotOne);
        }
        let n = self.truncation();
        let x = self.minus_one();
        let mut acc = Self::one(n);
        let mut xj = Self::one(n);
        for j in 1..=n as usize {
            xj = xj.mul(&x)?;
            acc = acc.add(&xj.scale(&p.binomial(j)))?;
        }
        Ok(acc)
    }

    /// Substitute `t -> t + shift` in every coefficient.
    pub fn shift_t(&self, shift: i64) -> Self {
        self.map_coeffs(|c| c.shift(shift))
    }

    /// Evaluate every coefficient at `t = at`.
    pub fn eval_t(&self, at: &Rational) -> NcsfSeries<Rational> {
        self.map_coeffs(|c| c.eval(at))
    }

    /// Evaluate at an integer and insist that the result is integral.
    pub fn eval_t_integer(&self, at: i64) -> Option<NcsfSeries<Integer>> {
        self.eval_t(&Rational::from_int(at))
            .try_map_coeffs(|c| crate::coeffring::rational_to_integer(c).ok_or(()))
            .ok()
    }
}

impl NcsfSeries<Integer> {
    pub fn to_polyt(&self) -> NcsfSeries<PolyT> {
        self.map_coeffs(|c| PolyT::constant(Rational::from_integer(c.clone())))
    }

    /// True if every coefficient is a nonnegative integer.
    pub fn is_nonnegative(&self) -> bool {
        self.terms()
            .all(|(_, c)| c.sign() != num_bigint::Sign::Minus)
    }

    /// Sum of coefficients per degree.
    pub fn coefficient_sums(&self) -> Vec<Integer> {
        self.components
            .iter()
            .map(|h| h.coefficients().fold(Integer::from(0), |acc, c| acc + c))
            .collect()
    }
}

/// Symbol for a basis element: `S_3`, `S^{21}`, `R_{21}`, `L^{21}`; the empty
/// composition prints as nothing.
pub fn basis_symbol(basis: Basis, comp: &Composition) -> String {
    if comp.is_empty() {
        return String::new();
    }
    match basis {
        Basis::S if comp.len() == 1 => format!("S_{comp}"),
        Basis::S => format!("S^{{{comp}}}"),
        Basis::R => format!("R_{{{comp}}}"),
        Basis::Lambda => format!("L^{{{comp}}}"),
    }
}

/// Joins signed terms as `a + b - c`; `0` when empty.
pub fn join_signed_terms(terms: impl IntoIterator<Item = (bool, String)>) -> String {
    let mut out = String::new();
    for (i, (negative, body)) in terms.into_iter().enumerate() {
        match (i, negative) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Coefficient times symbol, with unit coefficients and the empty symbol
/// handled.
pub fn format_term(negative_and_magnitude: (bool, String), symbol: &str) -> (bool, String) {
    let (negative, magnitude) = negative_and_magnitude;
    let body = if symbol.is_empty() {
        magnitude
    } else if magnitude == "1" {
        symbol.to_string()
    } else {
        format!("{magnitude}*{symbol}")
    };
    (negative, body)
}

impl<C: CoeffText> HomElem<C> {
    /// Paper-style rendering, e.g. `S_3 + 2*S^{21} + S^{12} + S^{111}`.
    pub fn render(&self, basis: Basis) -> String {
        join_signed_terms(
            self.terms
                .iter()
                .map(|(comp, c)| format_term(c.signed_text(), &basis_symbol(basis, comp))),
        )
    }
}

impl<C: CoeffText> NcsfSeries<C> {
    /// One line per degree, `name_d = ...`.
    pub fn render_lines(&self, name: &str) -> Vec<String> {
        self.components
            .iter()
            .map(|h| format!("{name}_{} = {}", h.degree, h.render(self.basis)))
            .collect()
    }
}
