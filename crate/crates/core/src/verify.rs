//! Verification suites and their report.
//!
//! `paper` replays the displayed values in `data/displayed.txt`,
//! `identities` checks the theorems and route agreements by construction,
//! and `oeis` compares coefficient sums with vendored sequence prefixes.
//! Each check carries the expected and actual payloads so a failure can be
//! read without rerunning anything.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::coeffring::{CoeffText, EPoly, ESubstitution, Integer};
use crate::combinat::{
    catalan, code_to_dyck, code_to_ndpf, compositions, enumerate_lukasiewicz, format_word,
    ndpf_to_noncrossing, parking_quasi_ribbons, remove_last_corolla, shift_words, Composition,
    PlaneTreeCode,
};
use crate::gfseries::{specialize_ncsf, ClosedForm, Specialization, UniSeries};
use crate::lagrange::{
    delta_coefficient, divisibility_check, eta_identities, eta_t, free_cumulants, g_t, g_t_direct,
    gamma_t, geode, geode_by_division, gessel_gamma, h_t, k_lagrange_direct, solve_g,
    theta_by_transform, theta_t,
};
use crate::ncsf::{Basis, NcsfSeries};
use crate::schroeder::{enumerate_prime_schroeder, g_e, gamma_e, solve_xy_system, ERoute};

/// Sums of the coefficients of `γ_n`.
pub const A071724: [i64; 8] = [1, 1, 3, 9, 28, 90, 297, 1001];
/// Sums of the ribbon coefficients of `γ_n`.
pub const A239204: [i64; 10] = [1, 1, 4, 17, 76, 353, 1688, 8257, 41128, 207905];
/// Sums of the absolute elementary coefficients of `γ_n`.
pub const A238112: [i64; 11] = [1, 1, 5, 23, 107, 509, 2473, 12235, 61463, 312761, 1609005];
/// Prime Schröder trees of sizes 1 to 5.
pub const PRIME_SCHROEDER_COUNTS: [i64; 5] = [1, 2, 6, 22, 90];

pub const DISPLAYED: &str = include_str!("../data/displayed.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Differs from a printed value in a known, documented way. Reported, not fatal.
    DocumentedDeviation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub expected: String,
    pub actual: String,
    pub note: Option<String>,
}

impl Check {
    fn compare(
        name: impl Into<String>,
        expected: impl Into<String>,
        actual: impl Into<String>,
    ) -> Check {
        let (expected, actual) = (expected.into(), actual.into());
        let status = if expected == actual {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        Check {
            name: name.into(),
            status,
            expected,
            actual,
            note: None,
        }
    }

    fn holds(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Check {
        let detail = detail.into();
        let actual = if ok { "holds".to_string() } else { detail };
        Check::compare(name, "holds", actual)
    }

    pub fn passed(&self) -> bool {
        self.status != CheckStatus::Fail
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.status {
            CheckStatus::Pass => {
                write!(f, "PASS {}", self.name)?;
                if let Some(note) = &self.note {
                    write!(f, " [{note}]")?;
                }
                Ok(())
            }
            CheckStatus::DocumentedDeviation => write!(
                f,
                "DEVIATION {}: computed {} [{}]",
                self.name,
                self.actual,
                self.note.as_deref().unwrap_or("documented")
            ),
            CheckStatus::Fail => {
                write!(
                    f,
                    "FAIL {}: expected {}, got {}",
                    self.name, self.expected, self.actual
                )
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Paper,
    Identities,
    Oeis,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Paper => "paper",
            Suite::Identities => "identities",
            Suite::Oeis => "oeis",
        }
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(Suite::All),
            "paper" => Ok(Suite::Paper),
            "identities" => Ok(Suite::Identities),
            "oeis" => Ok(Suite::Oeis),
            other => Err(format!(
                "unknown suite {other:?} (expected all, paper, identities or oeis)"
            )),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub suite: Suite,
    pub degree: u32,
    pub checks: Vec<Check>,
}

impl Report {
    /// Documented deviations do not fail the report.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn count(&self, status: CheckStatus) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn summary(&self) -> String {
        format!(
            "{} {}: {} checks, {} passed, {} documented deviations, {} failed",
            self.suite.name(),
            if self.passed() { "PASS" } else { "FAIL" },
            self.checks.len(),
            self.count(CheckStatus::Pass),
            self.count(CheckStatus::DocumentedDeviation),
            self.count(CheckStatus::Fail),
        )
    }

    /// One line per check, then the summary.
    pub fn lines(&self) -> Vec<String> {
        let mut out: Vec<String> = self.checks.iter().map(Check::to_string).collect();
        out.push(self.summary());
        out
    }
}

/// Runs a suite. `degree` bounds the series degrees involved; families with
/// a fixed range (for instance the vendored prefixes) use the smaller of the
/// two and say so in the check name.
pub fn run(suite: Suite, degree: u32) -> Result<Report, CorpusError> {
    let checks = match suite {
        Suite::Paper => paper_suite(degree)?,
        Suite::Identities => identities_suite(degree),
        Suite::Oeis => oeis_suite(degree),
        Suite::All => {
            let mut c = paper_suite(degree)?;
            c.extend(identities_suite(degree));
            c.extend(oeis_suite(degree));
            c
        }
    };
    Ok(Report {
        suite,
        degree,
        checks,
    })
}

// ---------------------------------------------------------------------------
// Displayed values

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("line {line}: expected 6 fields separated by \" | \", found {found}")]
    Fields { line: usize, found: usize },
    #[error("line {line}: unknown kind {kind:?}")]
    Kind { line: usize, kind: String },
    #[error("line {line}: cannot read object {object:?}")]
    Object { line: usize, object: String },
    #[error("line {line}: {kind} entries need a printed value")]
    MissingPrinted { line: usize, kind: &'static str },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryKind {
    Exact,
    Corrected,
    Deviation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DisplayedObject {
    Series {
        name: String,
        basis: Basis,
        degree: u32,
    },
    /// `X`, `Y` or `G` of the lifted Schröder system.
    Words {
        which: char,
        degree: u32,
    },
    Delta(Composition),
    Lukasiewicz(u32),
    Dyck(PlaneTreeCode),
    Parking(PlaneTreeCode),
    Noncrossing(PlaneTreeCode),
    Shifts(PlaneTreeCode),
    Corolla(u32, PlaneTreeCode),
    QuasiRibbons(Composition),
}

const SERIES_NAMES: [&str; 9] = [
    "g", "gamma", "g_t", "gamma_t", "theta_t", "h_t", "eta_t", "g_e", "gamma_e",
];

impl DisplayedObject {
    fn parse(s: &str) -> Option<DisplayedObject> {
        let fields: Vec<&str> = s.split(':').collect();
        let code = |c: &str| PlaneTreeCode::parse(c).ok();
        Some(match fields.as_slice() {
            [name, basis, d] if SERIES_NAMES.contains(name) => DisplayedObject::Series {
                name: name.to_string(),
                basis: basis.parse().ok()?,
                degree: d.parse().ok()?,
            },
            [w @ ("X" | "Y" | "G"), d] => DisplayedObject::Words {
                which: w.chars().next()?,
                degree: d.parse().ok()?,
            },
            ["delta", c] => DisplayedObject::Delta(Composition::parse(c).ok()?),
            ["lukasiewicz", n] => DisplayedObject::Lukasiewicz(n.parse().ok()?),
            ["dyck", c] => DisplayedObject::Dyck(code(c)?),
            ["parking", c] => DisplayedObject::Parking(code(c)?),
            ["noncrossing", c] => DisplayedObject::Noncrossing(code(c)?),
            ["shifts", c] => DisplayedObject::Shifts(code(c)?),
            ["corolla", k, c] => DisplayedObject::Corolla(k.parse().ok()?, code(c)?),
            ["pqr", shape] => DisplayedObject::QuasiRibbons(Composition::parse(shape).ok()?),
            _ => return None,
        })
    }

    /// Series degree, when the object is a series component. Combinatorial
    /// examples are cheap and always run.
    pub fn series_degree(&self) -> Option<u32> {
        match self {
            DisplayedObject::Series { degree, .. } | DisplayedObject::Words { degree, .. } => {
                Some(*degree)
            }
            DisplayedObject::Delta(c) => Some(c.weight()),
            _ => None,
        }
    }

    /// Sums of terms compare as multisets; listings compare in order.
    fn is_sum(&self) -> bool {
        matches!(
            self,
            DisplayedObject::Series { .. } | DisplayedObject::Words { .. }
        )
    }
}

#[derive(Clone, Debug)]
pub struct DisplayedValue {
    pub kind: EntryKind,
    pub id: String,
    pub object: DisplayedObject,
    pub expected: String,
    pub printed: Option<String>,
    pub provenance: String,
}

pub fn displayed_values() -> Result<Vec<DisplayedValue>, CorpusError> {
    parse_corpus(DISPLAYED)
}

pub fn parse_corpus(text: &str) -> Result<Vec<DisplayedValue>, CorpusError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split(" | ").map(str::trim).collect();
        let [kind, id, object, expected, printed, provenance] = fields.as_slice() else {
            return Err(CorpusError::Fields {
                line,
                found: fields.len(),
            });
        };
        let kind = match *kind {
            "exact" => EntryKind::Exact,
            "corrected" => EntryKind::Corrected,
            "deviation" => EntryKind::Deviation,
            other => {
                return Err(CorpusError::Kind {
                    line,
                    kind: other.to_string(),
                })
            }
        };
        let printed = (*printed != "-").then(|| printed.to_string());
        if kind != EntryKind::Exact && printed.is_none() {
            let kind = if kind == EntryKind::Corrected {
                "corrected"
            } else {
                "deviation"
            };
            return Err(CorpusError::MissingPrinted { line, kind });
        }
        let object = DisplayedObject::parse(object).ok_or_else(|| CorpusError::Object {
            line,
            object: object.to_string(),
        })?;
        out.push(DisplayedValue {
            kind,
            id: id.to_string(),
            object,
            expected: expected.to_string(),
            printed,
            provenance: provenance.to_string(),
        });
    }
    Ok(out)
}

/// Signed terms of a rendered sum, sorted. Coefficients never contain
/// spaces, so the binary `+`/`-` are exactly the space-separated tokens.
pub fn term_multiset(s: &str) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    let mut negative = false;
    for tok in s.split_whitespace() {
        match tok {
            "+" => negative = false,
            "-" => negative = true,
            t => {
                if out.is_empty() && t.len() > 1 && t.starts_with('-') {
                    out.push((true, t[1..].to_string()));
                } else {
                    out.push((negative, t.to_string()));
                }
            }
        }
    }
    out.sort();
    out
}

fn same_value(is_sum: bool, a: &str, b: &str) -> bool {
    if is_sum {
        term_multiset(a) == term_multiset(b)
    } else {
        a.split_whitespace().eq(b.split_whitespace())
    }
}

/// Rendered components of the series named in the corpus, computed once per
/// `(name, basis)` at the largest degree any entry needs.
struct SeriesTable {
    rendered: HashMap<(String, Basis), Vec<String>>,
    words: HashMap<char, Vec<String>>,
}

fn render_all<C: CoeffText>(s: &NcsfSeries<C>, basis: Basis) -> Vec<String> {
    let s = s.convert(basis);
    (0..=s.truncation())
        .map(|d| s.component(d).render(basis))
        .collect()
}

impl SeriesTable {
    fn build(entries: &[&DisplayedValue]) -> SeriesTable {
        let mut need: HashMap<(String, Basis), u32> = HashMap::new();
        let mut words_need = None::<u32>;
        for e in entries {
            match &e.object {
                DisplayedObject::Series {
                    name,
                    basis,
                    degree,
                } => {
                    let slot = need.entry((name.clone(), *basis)).or_insert(0);
                    *slot = (*slot).max(*degree);
                }
                DisplayedObject::Words { degree, .. } => {
                    words_need = Some(words_need.unwrap_or(0).max(*degree));
                }
                _ => {}
            }
        }
        let mut rendered = HashMap::new();
        for ((name, basis), n) in need {
            let lines = match name.as_str() {
                "g" => render_all(&solve_g(n), basis),
                "gamma" => render_all(&geode(n, 1), basis),
                "g_t" => render_all(&g_t(n), basis),
                "gamma_t" => gamma_t(n)
                    .map(|s| render_all(&s, basis))
                    .unwrap_or_default(),
                "theta_t" => theta_t(n)
                    .map(|s| render_all(&s, basis))
                    .unwrap_or_default(),
                "h_t" => h_t(n).map(|s| render_all(&s, basis)).unwrap_or_default(),
                "eta_t" => eta_t(n).map(|s| render_all(&s, basis)).unwrap_or_default(),
                "g_e" => render_all(&g_e(n, ERoute::Formula), basis),
                "gamma_e" => render_all(&gamma_e(n, 1), basis),
                _ => unreachable!("names are checked when parsing"),
            };
            rendered.insert((name, basis), lines);
        }
        let mut words = HashMap::new();
        if let Some(n) = words_need {
            let sys = solve_xy_system(n);
            for (which, ws) in [('X', &sys.x), ('Y', &sys.y), ('G', &sys.g)] {
                words.insert(which, (0..=n).map(|d| ws.render(d)).collect());
            }
        }
        SeriesTable { rendered, words }
    }

    fn evaluate(&self, object: &DisplayedObject) -> String {
        let missing = || "<not computed>".to_string();
        match object {
            DisplayedObject::Series {
                name,
                basis,
                degree,
            } => self
                .rendered
                .get(&(name.clone(), *basis))
                .and_then(|v| v.get(*degree as usize).cloned())
                .unwrap_or_else(missing),
            DisplayedObject::Words { which, degree } => self
                .words
                .get(which)
                .and_then(|v| v.get(*degree as usize).cloned())
                .unwrap_or_else(missing),
            DisplayedObject::Delta(c) => delta_coefficient(c).to_string(),
            DisplayedObject::Lukasiewicz(n) => enumerate_lukasiewicz(*n)
                .iter()
                .map(|c| format_word(c.letters()))
                .collect::<Vec<_>>()
                .join(" "),
            DisplayedObject::Dyck(c) => {
                let w = code_to_dyck(c);
                format!("{}·b", &w[..w.len() - 1])
            }
            DisplayedObject::Parking(c) => format_word(&code_to_ndpf(c)),
            DisplayedObject::Noncrossing(c) => match ndpf_to_noncrossing(&code_to_ndpf(c)) {
                Ok(blocks) => blocks
                    .iter()
                    .map(|b| format_word(b))
                    .collect::<Vec<_>>()
                    .join("|"),
                Err(e) => format!("<{e}>"),
            },
            DisplayedObject::Shifts(c) => shift_words(c)
                .iter()
                .map(|w| format_word(w))
                .collect::<Vec<_>>()
                .join(" "),
            DisplayedObject::Corolla(k, c) => match remove_last_corolla(c, *k) {
                Some(t) => format_word(t.letters()),
                None => "0".to_string(),
            },
            DisplayedObject::QuasiRibbons(shape) => parking_quasi_ribbons(shape)
                .iter()
                .map(|segments| {
                    segments
                        .iter()
                        .map(|s| format_word(s))
                        .collect::<Vec<_>>()
                        .join("|")
                })
                .collect::<Vec<_>>()
                .join(" "),
        }
    }
}

fn displayed_check(e: &DisplayedValue, actual: String) -> Check {
    let is_sum = e.object.is_sum();
    let matches = same_value(is_sum, &e.expected, &actual);
    let mut check = Check::compare(e.id.clone(), e.expected.clone(), actual.clone());
    check.status = if matches {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    };
    if !matches {
        return check;
    }
    let printed = e.printed.as_deref().unwrap_or_default();
    match e.kind {
        EntryKind::Exact => {}
        EntryKind::Corrected => {
            check.note = Some(format!("transcription corrected; printed {printed}"));
        }
        EntryKind::Deviation => {
            if same_value(is_sum, printed, &actual) {
                check.status = CheckStatus::Fail;
                check.actual = format!("{actual} (equal to the printed value, deviation is stale)");
            } else {
                check.status = CheckStatus::DocumentedDeviation;
                check.note = Some(format!("printed {printed}"));
            }
        }
    }
    check
}

fn paper_suite(degree: u32) -> Result<Vec<Check>, CorpusError> {
    let entries = displayed_values()?;
    let selected: Vec<&DisplayedValue> = entries
        .iter()
        .filter(|e| e.object.series_degree().is_none_or(|d| d <= degree))
        .collect();
    let table = SeriesTable::build(&selected);
    Ok(selected
        .iter()
        .map(|e| displayed_check(e, table.evaluate(&e.object)))
        .collect())
}

// ---------------------------------------------------------------------------
// Identities

/// Equality of two series, with the first differing degree on failure.
fn agree<C: CoeffText>(name: impl Into<String>, a: &NcsfSeries<C>, b: &NcsfSeries<C>) -> Check {
    let name = name.into();
    if a == b {
        return Check::compare(name, "equal", "equal");
    }
    let n = a.truncation().min(b.truncation());
    let d = (0..=n).find(|&d| a.component(d) != b.component(d));
    match d {
        Some(d) => Check::compare(
            name,
            format!("degree {d}: {}", a.component(d).render(a.basis())),
            format!("degree {d}: {}", b.component(d).render(b.basis())),
        ),
        None => Check::compare(
            name,
            format!("truncation {} basis {}", a.truncation(), a.basis()),
            format!("truncation {} basis {}", b.truncation(), b.basis()),
        ),
    }
}

fn identities_suite(degree: u32) -> Vec<Check> {
    let d = degree.max(1);
    let mut out = Vec::new();
    let gamma = geode(d, 1);

    out.push(agree(
        format!("gessel formula for gamma to degree {d}"),
        &gessel_gamma(d),
        &gamma,
    ));
    for c in eta_identities(d) {
        out.push(Check::holds(
            format!("{} to degree {d}", c.name),
            c.holds,
            "fails",
        ));
    }
    for k in 2..=4 {
        out.push(agree(
            format!("gamma via S_{k}^-1 equals S_1^-1 to degree {d}"),
            &geode(d, k),
            &gamma,
        ));
    }
    match geode_by_division(d) {
        Ok(q) => out.push(agree(
            format!("gamma by right division to degree {d}"),
            &q,
            &gamma,
        )),
        Err(e) => out.push(Check::compare(
            format!("gamma by right division to degree {d}"),
            "quotient",
            e.to_string(),
        )),
    }
    out.push(Check::holds(
        format!("gamma has nonnegative coefficients to degree {d}"),
        gamma.is_nonnegative(),
        "negative coefficient",
    ));

    let dd = d.min(5);
    for row in divisibility_check(3, dd) {
        let detail = match &row.quotient {
            Ok(_) => "negative coefficient in quotient".to_string(),
            Err(e) => e.to_string(),
        };
        out.push(Check::holds(
            format!(
                "(g^({}) - 1)/(g^({}) - 1) nonnegative integer to degree {dd}",
                row.k,
                row.k - 1
            ),
            row.passed(),
            detail,
        ));
    }

    let gt = g_t(d);
    let sigma1 = NcsfSeries::<Integer>::sigma1(d);
    match gt.eval_t_integer(0) {
        Some(g0) => out.push(agree(format!("g^(0) = sigma1 to degree {d}"), &g0, &sigma1)),
        None => out.push(Check::compare(
            "g^(0) = sigma1",
            "integer series",
            "non-integer",
        )),
    }
    let dk = d.min(4);
    for k in 1..=3u32 {
        let at_k = gt
            .truncate(dk)
            .ok()
            .and_then(|s| s.eval_t_integer(i64::from(k)));
        let via_phi = solve_g(k * dk).phi(k).ok();
        let direct = k_lagrange_direct(i64::from(k), dk);
        let ok = at_k.as_ref() == Some(&direct) && via_phi.as_ref() == Some(&direct);
        out.push(Check::holds(
            format!("g^(t) at t={k} equals phi_{k}(g) and the direct solution to degree {dk}"),
            ok,
            "routes differ",
        ));
    }
    let dt = d.min(5);
    out.push(agree(
        format!("g^(t) by coefficient formula equals binomial-power solution to degree {dt}"),
        &gt.truncate(dt.min(d)).expect("dt <= d"),
        &g_t_direct(dt),
    ));
    match theta_t(d) {
        Ok(th) => {
            for k in 2..=3u32 {
                let at_k = th.eval_t_integer(i64::from(k));
                let ok = at_k.as_ref() == Some(&theta_by_transform(k, d));
                out.push(Check::holds(
                    format!("theta_{k} = L^{}(gamma) to degree {d}", k - 1),
                    ok,
                    "differs",
                ));
            }
        }
        Err(e) => out.push(Check::compare(
            "theta^(t) by division",
            "quotient",
            e.to_string(),
        )),
    }

    let cumulants = free_cumulants(d);
    out.push(agree(
        format!("g^(-1) by negative-power recursion equals g(-A)^-1 to degree {d}"),
        &k_lagrange_direct(-1, d),
        &cumulants,
    ));
    match gt.eval_t_integer(-1) {
        Some(at) => out.push(agree(
            format!("g^(t) at t=-1 equals g(-A)^-1 to degree {d}"),
            &at,
            &cumulants,
        )),
        None => out.push(Check::compare(
            "g^(t) at t=-1",
            "integer series",
            "non-integer",
        )),
    }
    let mut moment = NcsfSeries::<Integer>::zero(d);
    let mut sp = NcsfSeries::<Integer>::one(d);
    for n in 0..=d {
        let kn = NcsfSeries::from_terms(
            Basis::S,
            d,
            cumulants
                .component(n)
                .terms()
                .map(|(c, x)| (c.clone(), x.clone())),
        );
        moment = moment.add(&kn.mul(&sp).expect("S basis")).expect("S basis");
        sp = sp.mul(&sigma1).expect("S basis");
    }
    out.push(agree(
        format!("sigma1 = sum K_n sigma1^n to degree {d}"),
        &moment,
        &sigma1,
    ));

    let de = d.min(6);
    let formula = g_e(de, ERoute::Formula);
    out.push(agree(
        format!("e-series with e_n -> (-1)^n equals free cumulants to degree {de}"),
        &formula.map_coeffs(|c: &EPoly| c.evaluate_integer(ESubstitution::AlternatingSigns)),
        &cumulants.truncate(de).expect("de <= d"),
    ));
    for route in [ERoute::System, ERoute::PrimeTrees, ERoute::Equation] {
        out.push(agree(
            format!("e-series {route:?} route equals coefficient formula to degree {de}"),
            &g_e(de, route),
            &formula,
        ));
    }
    let dg = d.min(5);
    let ge1 = gamma_e(dg, 1);
    for k in 2..=3 {
        out.push(agree(
            format!("e-geode via S_{k}^-1 equals S_1^-1 to degree {dg}"),
            &gamma_e(dg, k),
            &ge1,
        ));
    }

    let dc = d.min(7);
    let gamma_c = gamma.truncate(dc).expect("dc <= d");
    let mut trailing_ok = true;
    let mut shifts_ok = true;
    for n in 0..=dc {
        let mut by_trailing = BTreeMap::<Composition, Integer>::new();
        let mut by_shifts = BTreeMap::<Composition, Integer>::new();
        for code in enumerate_lukasiewicz(n) {
            *by_trailing.entry(code.nonzero_arities()).or_default() += code.trailing_zeros() as i64;
            *by_shifts.entry(code.nonzero_arities()).or_default() +=
                shift_words(&code).len() as i64;
        }
        let actual: BTreeMap<Composition, Integer> = gamma_c
            .component(n)
            .terms()
            .map(|(c, x)| (c.clone(), x.clone()))
            .collect();
        trailing_ok &= actual == by_trailing;
        shifts_ok &= actual == by_shifts;
    }
    out.push(Check::holds(
        format!("[S^I]gamma_n counts trailing zeros of codes, n <= {dc}"),
        trailing_ok,
        "differs",
    ));
    out.push(Check::holds(
        format!("[S^I]gamma_n counts shift words, n <= {dc}"),
        shifts_ok,
        "differs",
    ));

    let mut corolla_ok = true;
    for n in 0..=dc {
        let mut expected = BTreeMap::<Vec<u32>, usize>::new();
        for code in enumerate_lukasiewicz(n) {
            if code.trailing_zeros() > 0 {
                expected.insert(code.letters().to_vec(), code.trailing_zeros());
            }
        }
        for k in 1..=4 {
            let mut got = BTreeMap::<Vec<u32>, usize>::new();
            for code in enumerate_lukasiewicz(n + k) {
                if let Some(t) = remove_last_corolla(&code, k) {
                    *got.entry(t.letters().to_vec()).or_default() += 1;
                }
            }
            corolla_ok &= got == expected;
        }
    }
    out.push(Check::holds(
        format!("d_k(g_(n+k)) is the same multiset for k <= 4, n <= {dc}"),
        corolla_ok,
        "multisets differ",
    ));

    let dq = d.min(6);
    let ribbons = gamma.truncate(dq).expect("dq <= d").convert(Basis::R);
    let mut pqr_ok = true;
    for n in 1..=dq {
        for comp in compositions(n) {
            let count = parking_quasi_ribbons(&comp.push(1)).len() as i64;
            pqr_ok &= ribbons.coeff(&comp) == Integer::from(count);
        }
    }
    out.push(Check::holds(
        format!("[R_I]gamma counts parking quasi-ribbons of shape I1, |I| <= {dq}"),
        pqr_ok,
        "differs",
    ));

    let ds = d.min(7);
    let g = solve_g(ds);
    let (ribbon, elementary) = (g.convert(Basis::R), g.convert(Basis::Lambda));
    let mut sign_ok = true;
    for n in 0..=ds {
        for comp in compositions(n) {
            let r = ribbon.coeff(&comp.conjugate());
            let signed = if (n as usize - comp.len()).is_multiple_of(2) {
                r
            } else {
                -r
            };
            sign_ok &= elementary.coeff(&comp) == signed;
        }
    }
    out.push(Check::holds(
        format!("[L^I]g = (-1)^(|I|-l(I)) [R_conj(I)]g, |I| <= {ds}"),
        sign_ok,
        "differs",
    ));
    out
}

// ---------------------------------------------------------------------------
// Sequence prefixes

fn ints(s: &UniSeries) -> String {
    match s.integer_coeffs() {
        Some(v) => v
            .iter()
            .map(Integer::to_string)
            .collect::<Vec<_>>()
            .join(","),
        None => "<non-integer>".to_string(),
    }
}

fn list(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn sums(v: &[Integer]) -> String {
    v.iter()
        .map(Integer::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn closed(form: ClosedForm, n: u32) -> String {
    match form.expand(n) {
        Ok(s) => s
            .uni()
            .map(ints)
            .unwrap_or_else(|| "<bivariate>".to_string()),
        Err(e) => e.to_string(),
    }
}

fn specialized<C: crate::gfseries::Specializable>(
    s: &NcsfSeries<C>,
    map: Specialization,
) -> String {
    match specialize_ncsf(s, map) {
        Ok(g) => g
            .uni()
            .map(ints)
            .unwrap_or_else(|| "<bivariate>".to_string()),
        Err(e) => e.to_string(),
    }
}

fn oeis_suite(degree: u32) -> Vec<Check> {
    let mut out = Vec::new();
    let d = degree;

    let g = solve_g(d);
    let cat: Vec<i64> = (0..=d).map(|n| catalan(n) as i64).collect();
    out.push(Check::compare(
        format!("sum of [S^I]g_n is Catalan(n), n <= {d}"),
        list(&cat),
        sums(&g.coefficient_sums()),
    ));
    out.push(Check::compare(
        format!("catalan closed form, n <= {d}"),
        list(&cat),
        closed(ClosedForm::Catalan, d),
    ));
    out.push(Check::compare(
        format!("g under S_n -> x^n, n <= {d}"),
        list(&cat),
        specialized(&g, Specialization::Catalan),
    ));

    let n1 = d.min(7);
    let gamma1 = geode(n1, 1);
    let want = list(&A071724[..=n1 as usize]);
    out.push(Check::compare(
        format!("A071724: coefficient sums of gamma_n, n <= {n1}"),
        want.clone(),
        sums(&gamma1.coefficient_sums()),
    ));
    out.push(Check::compare(
        format!("A071724: closed form, n <= {n1}"),
        want,
        closed(ClosedForm::Geode, n1),
    ));

    let n2 = d.min(9);
    let gamma2 = geode(n2, 1);
    let want = list(&A239204[..=n2 as usize]);
    out.push(Check::compare(
        format!("A239204: ribbon coefficient sums of gamma_n, n <= {n2}"),
        want.clone(),
        sums(&gamma2.convert(Basis::R).coefficient_sums()),
    ));
    out.push(Check::compare(
        format!("A239204: S_n -> u x^n at u = 2, n <= {n2}"),
        want.clone(),
        specialized(&gamma2, Specialization::RibbonU),
    ));
    out.push(Check::compare(
        format!("A239204: closed form, n <= {n2}"),
        want,
        closed(ClosedForm::RibbonSum, n2),
    ));

    let n3 = d.min(10);
    let gamma3 = geode(n3, 1);
    let want = list(&A238112[..=n3 as usize]);
    let abs_sums: Vec<Integer> = gamma3
        .convert(Basis::Lambda)
        .components()
        .iter()
        .map(|h| h.terms().map(|(_, c)| num_traits::Signed::abs(c)).sum())
        .collect();
    out.push(Check::compare(
        format!("A238112: absolute elementary sums of gamma_n, n <= {n3}"),
        want.clone(),
        sums(&abs_sums),
    ));
    out.push(Check::compare(
        format!("A238112: S^I -> 2^(|I|-l(I)) x^|I|, n <= {n3}"),
        want.clone(),
        specialized(&gamma3, Specialization::LambdaAbs),
    ));
    out.push(Check::compare(
        format!("A238112: closed form, n <= {n3}"),
        want,
        closed(ClosedForm::LambdaSum, n3),
    ));

    let n4 = d.min(5);
    let want = list(&PRIME_SCHROEDER_COUNTS[..n4 as usize]);
    let counts: Vec<i64> = (1..=n4)
        .map(|n| enumerate_prime_schroeder(n).len() as i64)
        .collect();
    out.push(Check::compare(
        format!("prime Schroeder trees of size n <= {n4}"),
        want.clone(),
        list(&counts),
    ));
    let ge = g_e(n4, ERoute::Formula);
    let ones: Vec<Integer> = ge
        .map_coeffs(|c: &EPoly| c.evaluate_integer(ESubstitution::AllOnes))
        .coefficient_sums()
        .into_iter()
        .skip(1)
        .collect();
    out.push(Check::compare(
        format!("e-series under e_n -> 1 sums, n <= {n4}"),
        want,
        sums(&ones),
    ));

    let n5 = d.min(8);
    let zq = specialize_ncsf(&g_e(n5, ERoute::Formula), Specialization::Zq);
    let zq_closed = ClosedForm::Zq.expand(n5);
    let ok = matches!((&zq, &zq_closed), (Ok(a), Ok(b)) if a == b);
    out.push(Check::holds(
        format!("e-series under S_n -> z^n, e_k -> q^k equals closed form to total order {n5}"),
        ok,
        "differs",
    ));
    out
}
