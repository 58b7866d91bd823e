//! Schröder trees and the e-Lagrange series
//! `g^[e] = Σ_n S_n (Σ_k e_k (g^[e] - 1)^k)^n`.
//!
//! Trees are read as pseudocompositions: internal nodes carry their arity
//! minus one, leaves carry 0. Three independent constructions of `g^[e]` live
//! here (the lifted X/Y/G system, prime-tree enumeration and the coefficient
//! formula) plus the functional equation itself.

use std::collections::BTreeMap;
use std::fmt;

use crate::coeffring::{elementary_of_multiple, Coeff, EPoly, Partition};
use crate::combinat::{compositions, format_word, Composition};
use crate::lagrange::{solve_power_equation, tree_code_sum};
use crate::ncsf::{Basis, NcsfSeries};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a Schröder tree code: {0:?}")]
pub struct InvalidSchroederCode(pub Vec<u32>);

/// Prefix code of a Schröder tree: letter `i >= 1` is an internal node with
/// `i + 1` children, `0` is a leaf.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SchroederCode(Vec<u32>);

fn is_schroeder(letters: &[u32]) -> bool {
    let mut open: i64 = 1;
    for (i, &l) in letters.iter().enumerate() {
        if open <= 0 {
            return false;
        }
        open += if l == 0 { -1 } else { i64::from(l) };
        if open == 0 && i + 1 != letters.len() {
            return false;
        }
    }
    open == 0
}

impl SchroederCode {
    pub fn new(letters: Vec<u32>) -> Result<Self, InvalidSchroederCode> {
        if is_schroeder(&letters) {
            Ok(SchroederCode(letters))
        } else {
            Err(InvalidSchroederCode(letters))
        }
    }

    pub fn parse(s: &str) -> Result<Self, InvalidSchroederCode> {
        let letters: Option<Vec<u32>> = s.trim().chars().map(|c| c.to_digit(10)).collect();
        Self::new(letters.ok_or_else(|| InvalidSchroederCode(Vec::new()))?)
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    /// Number of leaves minus one.
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn internal_nodes(&self) -> usize {
        self.0.iter().filter(|&&l| l > 0).count()
    }

    /// Codes of the subtrees hanging from the root, left to right.
    pub fn root_subtrees(&self) -> Vec<SchroederCode> {
        let mut out = Vec::new();
        let mut pos = 1;
        while pos < self.0.len() {
            let start = pos;
            let mut open = 1i64;
            while open > 0 {
                open += if self.0[pos] == 0 {
                    -1
                } else {
                    i64::from(self.0[pos])
                };
                pos += 1;
            }
            out.push(SchroederCode(self.0[start..pos].to_vec()));
        }
        out
    }

    pub fn is_leaf(&self) -> bool {
        self.0 == [0]
    }

    /// The rightmost subtree of the root is a leaf.
    pub fn is_prime(&self) -> bool {
        self.root_subtrees()
            .last()
            .is_some_and(SchroederCode::is_leaf)
    }

    /// Nonzero letters in prefix order.
    pub fn labels(&self) -> Composition {
        Composition::new(self.0.iter().copied().filter(|&l| l > 0).collect())
            .expect("nonzero letters")
    }
}

impl fmt::Display for SchroederCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_word(&self.0))
    }
}

impl fmt::Debug for SchroederCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SchroederCode({self})")
    }
}

/// All Schröder trees with `n + 1` leaves, lexicographically decreasing.
pub fn enumerate_schroeder(n: u32) -> Vec<SchroederCode> {
    fn rec(rest: u32, open: u32, word: &mut Vec<u32>, out: &mut Vec<SchroederCode>) {
        if rest == 0 {
            let mut w = word.clone();
            w.extend(std::iter::repeat_n(0, open as usize));
            out.push(SchroederCode(w));
            return;
        }
        for l in (0..=rest).rev() {
            // A leaf may not close the last open slot while labels remain.
            if l == 0 && open == 1 {
                continue;
            }
            let next_open = if l == 0 { open - 1 } else { open + l };
            word.push(l);
            rec(rest - l, next_open, word, out);
            word.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 1, &mut Vec::new(), &mut out);
    out
}

/// Schröder trees of size `n >= 1` whose last root subtree is a leaf.
pub fn enumerate_prime_schroeder(n: u32) -> Vec<SchroederCode> {
    enumerate_schroeder(n)
        .into_iter()
        .filter(SchroederCode::is_prime)
        .collect()
}

/// Lengths of the right branches: maximal chains of internal nodes linked by
/// rightmost-child edges.
pub fn right_branch_partition(c: &SchroederCode) -> Partition {
    // Walk the code keeping, per open slot, whether it is the last slot of
    // an internal node and the chain that node belongs to.
    let mut chains: Vec<u32> = Vec::new();
    // Stack of pending slots, top = next slot to fill. Each entry is the
    // chain index to extend if the slot is a rightmost child.
    let mut stack: Vec<Option<usize>> = vec![None];
    for &l in c.letters() {
        let slot = stack.pop().expect("valid code");
        if l == 0 {
            continue;
        }
        let chain = match slot {
            Some(idx) => {
                chains[idx] += 1;
                idx
            }
            None => {
                chains.push(1);
                chains.len() - 1
            }
        };
        // Push children right to left so the leftmost is filled first.
        stack.push(Some(chain));
        for _ in 0..l {
            stack.push(None);
        }
    }
    Partition::new(chains)
}

/// `e_λ` for a partition.
fn e_monomial(p: Partition) -> EPoly {
    EPoly::monomial(p, 1.into())
}

/// Polynomials in the letters `S_0, S_1, ...` with `S_0` of degree 0 and
/// not a unit, graded by the sum of the letters.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WordSeries {
    components: Vec<BTreeMap<Vec<u32>, EPoly>>,
}

impl WordSeries {
    fn zero(n: u32) -> Self {
        WordSeries {
            components: vec![BTreeMap::new(); n as usize + 1],
        }
    }

    fn add_term(&mut self, word: Vec<u32>, c: EPoly) {
        let d: u32 = word.iter().sum();
        if c.is_zero() || d as usize >= self.components.len() {
            return;
        }
        let slot = self.components[d as usize]
            .entry(word.clone())
            .or_insert_with(EPoly::zero);
        slot.add_assign(&c);
        if slot.is_zero() {
            self.components[d as usize].remove(&word);
        }
    }

    pub fn truncation(&self) -> u32 {
        self.components.len() as u32 - 1
    }

    pub fn component(&self, d: u32) -> &BTreeMap<Vec<u32>, EPoly> {
        &self.components[d as usize]
    }

    fn mul(&self, other: &WordSeries) -> WordSeries {
        let n = self.truncation().min(other.truncation());
        let mut out = WordSeries::zero(n);
        for a in 0..=n {
            for b in 0..=n - a {
                for (u, x) in &self.components[a as usize] {
                    for (v, y) in &other.components[b as usize] {
                        let mut w = u.clone();
                        w.extend_from_slice(v);
                        out.add_term(w, x.mul(y));
                    }
                }
            }
        }
        out
    }

    fn letter(l: u32, n: u32) -> WordSeries {
        let mut s = WordSeries::zero(n);
        s.add_term(vec![l], EPoly::one());
        s
    }

    fn pow(&self, k: u32) -> WordSeries {
        let mut acc = WordSeries::zero(self.truncation());
        acc.add_term(Vec::new(), EPoly::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    fn scale(&self, c: &EPoly) -> WordSeries {
        let mut out = WordSeries::zero(self.truncation());
        for comp in &self.components {
            for (w, x) in comp {
                out.add_term(w.clone(), x.mul(c));
            }
        }
        out
    }

    fn add(&self, other: &WordSeries) -> WordSeries {
        let mut out = self.clone();
        for comp in &other.components {
            for (w, x) in comp {
                out.add_term(w.clone(), x.clone());
            }
        }
        out
    }

    /// `S_0 -> 1`: delete zeros and collect.
    pub fn project(&self) -> NcsfSeries<EPoly> {
        NcsfSeries::from_terms(
            Basis::S,
            self.truncation(),
            self.components.iter().flat_map(|comp| {
                comp.iter().map(|(w, x)| {
                    let parts: Vec<u32> = w.iter().copied().filter(|&l| l > 0).collect();
                    (Composition::new(parts).expect("nonzero letters"), x.clone())
                })
            }),
        )
    }

    /// `e_λ S^{w} + ...` for one component.
    pub fn render(&self, d: u32) -> String {
        crate::ncsf::join_signed_terms(self.components[d as usize].iter().map(|(w, c)| {
            use crate::coeffring::CoeffText;
            crate::ncsf::format_term(c.signed_text(), &format!("S^{{{}}}", format_word(w)))
        }))
    }
}

/// Solution of `X = Σ S_n Y^n`, `Y = S_0 + Σ e_n X^n S_0`, `G = (1 + X) S_0`.
#[derive(Clone, Debug)]
pub struct SystemState {
    pub x: WordSeries,
    pub y: WordSeries,
    pub g: WordSeries,
}

pub fn solve_xy_system(n: u32) -> SystemState {
    let s0 = WordSeries::letter(0, n);
    let mut x = WordSeries::zero(n);
    let mut y = s0.clone();
    for d in 1..=n {
        // X_d only sees Y below degree d.
        let mut xd = WordSeries::zero(n);
        for m in 1..=d {
            xd = xd.add(&WordSeries::letter(m, n).mul(&y.pow(m)));
        }
        x.components[d as usize] = xd.components[d as usize].clone();
        // Y_d sees X through degree d.
        let mut yd = WordSeries::zero(n);
        for k in 1..=d {
            yd = yd.add(&x.pow(k).mul(&s0).scale(&EPoly::elementary(k)));
        }
        y.components[d as usize] = yd.components[d as usize].clone();
    }
    let mut one_plus_x = x.clone();
    one_plus_x.add_term(Vec::new(), EPoly::one());
    let g = one_plus_x.mul(&s0);
    SystemState { x, y, g }
}

/// `Σ_{t ∈ ST_d} e_{λ(t)} S^t` for `d <= n`.
pub fn y_by_trees(n: u32) -> WordSeries {
    let mut y = WordSeries::zero(n);
    y.add_term(vec![0], EPoly::one());
    for d in 1..=n {
        for t in enumerate_schroeder(d) {
            y.add_term(t.0.clone(), e_monomial(right_branch_partition(&t)));
        }
    }
    y
}

/// Weight of a prime tree: `Π_i e_{λ(t_i)}` over the root subtrees.
pub fn prime_tree_weight(t: &SchroederCode) -> EPoly {
    t.root_subtrees()
        .iter()
        .map(|s| e_monomial(right_branch_partition(s)))
        .fold(EPoly::one(), |acc, w| acc.mul(&w))
}

/// `G_d = Σ_{t ∈ PST_d} Π_i e_{λ(t_i)} S^t` for `d <= n`.
pub fn g_by_prime_trees(n: u32) -> WordSeries {
    let mut g = WordSeries::zero(n);
    g.add_term(vec![0], EPoly::one());
    for d in 1..=n {
        for t in enumerate_prime_schroeder(d) {
            let w = prime_tree_weight(&t);
            g.add_term(t.0, w);
        }
    }
    g
}

/// `δ^[e]_I = Σ_a Π_{j<p} e_{a_j}(i_j A)`.
pub fn delta_e_coefficient(comp: &Composition) -> EPoly {
    tree_code_sum(comp, |part, a| elementary_of_multiple(a, part))
}

/// Which construction of `g^[e]` to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ERoute {
    /// The X/Y/G system with `S_0 -> 1`.
    System,
    /// Prime Schröder trees with `S_0 -> 1`.
    PrimeTrees,
    /// The coefficient formula.
    Formula,
    /// Degree recursion on the defining equation.
    Equation,
}

/// `g^[e]` through degree `n`.
pub fn g_e(n: u32, route: ERoute) -> NcsfSeries<EPoly> {
    match route {
        ERoute::System => solve_xy_system(n).g.project(),
        ERoute::PrimeTrees => g_by_prime_trees(n).project(),
        ERoute::Formula => NcsfSeries::from_terms(
            Basis::S,
            n,
            (0..=n).flat_map(compositions).map(|c| {
                let d = delta_e_coefficient(&c);
                (c, d)
            }),
        ),
        ERoute::Equation => solve_power_equation(n, |x, m| {
            // (Σ_k e_k (x - 1)^k)^m
            let y = x.minus_one();
            let mut inner = NcsfSeries::one(x.truncation());
            let mut yk = NcsfSeries::one(x.truncation());
            for k in 1..=x.truncation() {
                yk = yk.mul(&y)?;
                inner = inner.add(&yk.scale(&EPoly::elementary(k)))?;
            }
            inner.pow(i64::from(m))
        })
        .expect("powers of a series with constant term 1"),
    }
}

/// `γ^[e] = g^[e] S_k^{-1}` through degree `n`.
pub fn gamma_e(n: u32, k: u32) -> NcsfSeries<EPoly> {
    g_e(n + k, ERoute::Formula)
        .annihilate(k)
        .expect("headroom k")
}
