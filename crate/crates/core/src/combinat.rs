//! Compositions, plane trees encoded as Łukasiewicz words, and the
//! bijections and word rewrites acting on those codes.
//!
//! Trees are never materialized as pointer structures: a plane tree is its
//! prefix-order arity word, and every operation here is a rewrite of that word.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombinatError {
    #[error("invalid tree code {0:?}")]
    InvalidCode(Vec<u32>),
    #[error("{0:?} is not a nondecreasing parking word")]
    NotParking(Vec<u32>),
    #[error("invalid composition: {0}")]
    InvalidComposition(String),
}

/// A composition of an integer: a finite sequence of positive parts.
///
/// The empty composition indexes the unit. Compositions of equal weight are
/// ordered by their descent set read as a binary number, most significant
/// bit first; for a fixed weight this is reverse lexicographic order, so
/// `(3) < (2,1) < (1,2) < (1,1,1)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self, CombinatError> {
        if parts.contains(&0) {
            return Err(CombinatError::InvalidComposition(format!(
                "{parts:?} has a zero part"
            )));
        }
        Ok(Composition(parts))
    }

    /// Caller guarantees all parts are positive.
    pub(crate) fn from_parts_unchecked(parts: Vec<u32>) -> Self {
        debug_assert!(!parts.contains(&0));
        Composition(parts)
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    pub fn single(n: u32) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Composition(vec![n])
        }
    }

    /// Parses `"2,1,1"`; the empty string is the empty composition.
    pub fn parse(s: &str) -> Result<Self, CombinatError> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::empty());
        }
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| CombinatError::InvalidComposition(s.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(parts)
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

    pub fn last(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn concat(&self, other: &Composition) -> Composition {
        let mut parts = Vec::with_capacity(self.0.len() + other.0.len());
        parts.extend_from_slice(&self.0);
        parts.extend_from_slice(&other.0);
        Composition(parts)
    }

    /// Prepend a part.
    pub fn cons(n: u32, rest: &Composition) -> Composition {
        let mut parts = Vec::with_capacity(rest.0.len() + 1);
        parts.push(n);
        parts.extend_from_slice(&rest.0);
        Composition(parts)
    }

    pub fn without_last(&self) -> Composition {
        Composition(self.0[..self.0.len().saturating_sub(1)].to_vec())
    }

    /// The composition with one extra trailing part.
    pub fn push(&self, n: u32) -> Composition {
        let mut parts = self.0.clone();
        parts.push(n);
        Composition(parts)
    }

    /// Descent set: partial sums `i_1, i_1 + i_2, ...` excluding the total.
    pub fn descents(&self) -> Vec<u32> {
        let mut acc = 0;
        let mut out = Vec::with_capacity(self.0.len().saturating_sub(1));
        for &p in &self.0[..self.0.len().saturating_sub(1)] {
            acc += p;
            out.push(acc);
        }
        out
    }

    pub fn from_descents(n: u32, descents: &[u32]) -> Composition {
        if n == 0 {
            return Composition::empty();
        }
        let mut parts = Vec::with_capacity(descents.len() + 1);
        let mut prev = 0;
        for &d in descents {
            parts.push(d - prev);
            prev = d;
        }
        parts.push(n - prev);
        Composition(parts)
    }

    /// Descent set as a bit mask, descent `i` of a composition of `n` on bit
    /// `n - 1 - i`.
    pub fn descent_code(&self) -> u64 {
        let n = self.weight();
        self.descents()
            .iter()
            .fold(0u64, |acc, &d| acc | (1u64 << (n - 1 - d)))
    }

    /// Conjugate: reverse of the composition whose descent set is the
    /// complement of this one's.
    pub fn conjugate(&self) -> Composition {
        let n = self.weight();
        let desc = self.descents();
        let complement: Vec<u32> = (1..n).filter(|i| !desc.contains(i)).collect();
        let mut parts = Composition::from_descents(n, &complement).0;
        parts.reverse();
        Composition(parts)
    }

    /// All coarsenings (sums of adjacent blocks), in composition order.
    pub fn coarsenings(&self) -> Vec<Composition> {
        let n = self.weight();
        let desc = self.descents();
        let mut out: Vec<Composition> = (0u64..1 << desc.len())
            .map(|mask| {
                let kept: Vec<u32> = desc
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &d)| d)
                    .collect();
                Composition::from_descents(n, &kept)
            })
            .collect();
        out.sort();
        out
    }

    /// Every part multiplied by `k`.
    pub fn scaled(&self, k: u32) -> Composition {
        Composition(self.0.iter().map(|p| p * k).collect())
    }
}

impl Ord for Composition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Parts written without separators when all are single digits (`211`),
/// comma-separated otherwise (`10,2`).
pub fn format_word(parts: &[u32]) -> String {
    if parts.iter().all(|&p| p < 10) {
        parts.iter().map(|p| p.to_string()).collect()
    } else {
        parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_word(&self.0))
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", format_word(&self.0))
    }
}

/// All compositions of `n` in composition order; `[()]` for `n = 0`.
pub fn compositions(n: u32) -> Vec<Composition> {
    if n == 0 {
        return vec![Composition::empty()];
    }
    (0u64..1 << (n - 1))
        .map(|code| {
            let descents: Vec<u32> = (1..n).filter(|d| code >> (n - 1 - d) & 1 == 1).collect();
            Composition::from_descents(n, &descents)
        })
        .collect()
}

/// Plane rooted tree as its Łukasiewicz word (arities in prefix order).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlaneTreeCode(Vec<u32>);

impl PlaneTreeCode {
    pub fn new(letters: Vec<u32>) -> Result<Self, CombinatError> {
        if is_lukasiewicz(&letters) {
            Ok(PlaneTreeCode(letters))
        } else {
            Err(CombinatError::InvalidCode(letters))
        }
    }

    pub fn parse(s: &str) -> Result<Self, CombinatError> {
        let letters = s
            .trim()
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .ok_or_else(|| CombinatError::InvalidCode(Vec::new()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(letters)
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    /// Number of edges, i.e. the letter sum.
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn trailing_zeros(&self) -> usize {
        self.0.iter().rev().take_while(|&&l| l == 0).count()
    }

    /// Sequence of nonzero arities in prefix order.
    pub fn nonzero_arities(&self) -> Composition {
        Composition(self.0.iter().copied().filter(|&l| l > 0).collect())
    }
}

impl fmt::Display for PlaneTreeCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_word(&self.0))
    }
}

impl fmt::Debug for PlaneTreeCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PlaneTreeCode({self})")
    }
}

/// Łukasiewicz condition: every proper prefix leaves at least one open slot
/// and the whole word closes the last one.
pub fn is_lukasiewicz(letters: &[u32]) -> bool {
    let mut open: i64 = 1;
    for (i, &l) in letters.iter().enumerate() {
        if open <= 0 {
            return false;
        }
        open += i64::from(l) - 1;
        if open == 0 && i + 1 != letters.len() {
            return false;
        }
    }
    open == 0
}

/// Every Łukasiewicz word of sum `n` (length `n + 1`), lexicographically
/// decreasing.
pub fn enumerate_lukasiewicz(n: u32) -> Vec<PlaneTreeCode> {
    fn rec(rest: u32, open: u32, word: &mut Vec<u32>, out: &mut Vec<PlaneTreeCode>) {
        if rest == 0 {
            // All remaining open slots are leaves.
            let mut w = word.clone();
            w.extend(std::iter::repeat_n(0, open as usize));
            out.push(PlaneTreeCode(w));
            return;
        }
        for l in (0..=rest).rev() {
            let next_open = open - 1 + l;
            if next_open == 0 {
                continue;
            }
            word.push(l);
            rec(rest - l, next_open, word, out);
            word.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 1, &mut Vec::new(), &mut out);
    out
}

/// Polish codes of the plane trees with `p` nodes.
pub fn plane_tree_codes_with_nodes(p: u32) -> Vec<PlaneTreeCode> {
    assert!(p >= 1, "a plane tree has at least one node");
    enumerate_lukasiewicz(p - 1)
}

/// Letter `i` becomes `a^i b`: a Dyck word followed by one extra `b`.
pub fn code_to_dyck(c: &PlaneTreeCode) -> String {
    let mut s = String::with_capacity(2 * c.0.len());
    for &l in &c.0 {
        s.extend(std::iter::repeat_n('a', l as usize));
        s.push('b');
    }
    s
}

/// `(i_1, ..., i_r, ...)` becomes the nondecreasing word `1^{i_1} 2^{i_2} ...`.
pub fn code_to_ndpf(c: &PlaneTreeCode) -> Vec<u32> {
    c.0.iter()
        .enumerate()
        .flat_map(|(j, &m)| std::iter::repeat_n(j as u32 + 1, m as usize))
        .collect()
}

/// Inverse of [`code_to_ndpf`]: the evaluation vector of the word, followed by
/// the final leaf.
pub fn ndpf_to_code(w: &[u32]) -> Result<PlaneTreeCode, CombinatError> {
    check_nd_parking(w)?;
    let n = w.len();
    let mut letters = vec![0u32; n + 1];
    for &x in w {
        letters[x as usize - 1] += 1;
    }
    PlaneTreeCode::new(letters)
}

fn check_nd_parking(w: &[u32]) -> Result<(), CombinatError> {
    let ok = w.windows(2).all(|p| p[0] <= p[1])
        && w.iter()
            .enumerate()
            .all(|(i, &x)| x >= 1 && x as usize <= i + 1);
    if ok {
        Ok(())
    } else {
        Err(CombinatError::NotParking(w.to_vec()))
    }
}

pub fn is_nd_parking(w: &[u32]) -> bool {
    check_nd_parking(w).is_ok()
}

/// Decode a nondecreasing parking word as a noncrossing partition of
/// `{1..n}`: the block whose minimum is `m` has as many elements as `m` has
/// occurrences. Blocks are returned sorted by minimum, elements ascending.
pub fn ndpf_to_noncrossing(w: &[u32]) -> Result<Vec<Vec<u32>>, CombinatError> {
    check_nd_parking(w)?;
    let n = w.len();
    let mut mult = vec![0usize; n + 1];
    for &x in w {
        mult[x as usize] += 1;
    }
    let mut taken = vec![false; n + 1];
    let mut blocks = Vec::new();
    // Larger minima first: their blocks nest inside the earlier ones.
    for m in (1..=n).rev() {
        if mult[m] == 0 {
            continue;
        }
        taken[m] = true;
        let mut block = vec![m as u32];
        let mut next = m + 1;
        while block.len() < mult[m] {
            while next <= n && taken[next] {
                next += 1;
            }
            if next > n {
                return Err(CombinatError::NotParking(w.to_vec()));
            }
            taken[next] = true;
            block.push(next as u32);
        }
        blocks.push(block);
    }
    blocks.reverse();
    Ok(blocks)
}

/// Inverse of [`ndpf_to_noncrossing`].
pub fn noncrossing_to_ndpf(blocks: &[Vec<u32>]) -> Vec<u32> {
    let mut w: Vec<u32> = blocks
        .iter()
        .flat_map(|b| {
            let m = *b.iter().min().expect("blocks are nonempty");
            std::iter::repeat_n(m, b.len())
        })
        .collect();
    w.sort_unstable();
    w
}

pub fn is_noncrossing(blocks: &[Vec<u32>]) -> bool {
    let owner = |x: u32| blocks.iter().position(|b| b.contains(&x));
    let n: u32 = blocks.iter().map(|b| b.len() as u32).sum();
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                for d in c + 1..=n {
                    if owner(a) == owner(c) && owner(b) == owner(d) && owner(a) != owner(b) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// The map `d_k`: when the last nonzero letter is `k`, replace that corolla
/// (the letter and its `k` leaves) by a single leaf.
pub fn remove_last_corolla(c: &PlaneTreeCode, k: u32) -> Option<PlaneTreeCode> {
    let pos = c.0.iter().rposition(|&l| l != 0)?;
    if c.0[pos] != k {
        return None;
    }
    let mut letters = Vec::with_capacity(c.0.len() - k as usize);
    letters.extend_from_slice(&c.0[..pos]);
    letters.push(0);
    letters.extend_from_slice(&c.0[pos + 1 + k as usize..]);
    Some(PlaneTreeCode(letters))
}

/// Right shifts of the code that are evaluation vectors of words on `[n]`,
/// returned as nondecreasing words. There is one per trailing zero.
pub fn shift_words(c: &PlaneTreeCode) -> Vec<Vec<u32>> {
    let n = c.0.len() - 1;
    (0..c.trailing_zeros())
        .map(|s| {
            let mut eval = vec![0u32; s];
            eval.extend_from_slice(&c.0[..n - s]);
            eval.iter()
                .enumerate()
                .flat_map(|(j, &m)| std::iter::repeat_n(j as u32 + 1, m as usize))
                .collect()
        })
        .collect()
}

/// Fillings of the ribbon of shape `shape`: segments of the given sizes, each
/// weakly increasing, strictly increasing across segment boundaries, whose
/// sorted content is a parking function. Lexicographic order.
pub fn parking_quasi_ribbons(shape: &Composition) -> Vec<Vec<Vec<u32>>> {
    let m = shape.weight() as usize;
    let mut boundary = vec![false; m];
    for d in shape.descents() {
        boundary[d as usize] = true;
    }
    let mut out: Vec<Vec<u32>> = Vec::new();
    let mut word = Vec::with_capacity(m);
    fn rec(m: usize, boundary: &[bool], word: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let i = word.len();
        if i == m {
            out.push(word.clone());
            return;
        }
        let low = match word.last() {
            None => 1,
            Some(&prev) if boundary[i] => prev + 1,
            Some(&prev) => prev,
        };
        // The word is nondecreasing, so the parking condition is letter i <= i + 1.
        for x in low..=(i as u32 + 1) {
            word.push(x);
            rec(m, boundary, word, out);
            word.pop();
        }
    }
    if m == 0 {
        return Vec::new();
    }
    rec(m, &boundary, &mut word, &mut out);
    out.into_iter()
        .map(|w| {
            let mut segments = Vec::with_capacity(shape.len());
            let mut start = 0;
            for &p in shape.parts() {
                segments.push(w[start..start + p as usize].to_vec());
                start += p as usize;
            }
            segments
        })
        .collect()
}

pub fn format_filling(f: &[Vec<u32>]) -> String {
    f.iter()
        .map(|s| format_word(s))
        .collect::<Vec<_>>()
        .join("|")
}

pub fn catalan(n: u32) -> u64 {
    let mut c: u64 = 1;
    for i in 0..n as u64 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}
