//! The noncommutative Lagrange series `g = 1 + Σ S_n g^n` and the series
//! built from it: the geode `γ`, the prime series `h`, `η`, the k-Lagrange
//! hierarchy `g^(t)` with its quotients `γ^(t)` and `θ^(t)`, and the free
//! cumulants `g^(-1)`.
//!
//! Hierarchy series are computed once over `PolyT` and specialized; the
//! integer routes here are independent cross-checks.

use std::sync::OnceLock;

use crate::coeffring::{binomial_polynomial, Coeff, Integer, PolyT, Rational};
use crate::combinat::{compositions, plane_tree_codes_with_nodes, Composition};
use crate::ncsf::{NcsfError, NcsfSeries};

/// Solves `x = 1 + Σ_{m ≥ 1} S_m · P(x, m)` degree by degree, where
/// `P(x, m)` is some power of `x` computed from a series exact through the
/// previous degree. The left factor `S_m` is what makes this well founded:
/// degree `d` of the right side only sees `x` through degree `d - 1`.
pub(crate) fn solve_power_equation<C: Coeff>(
    n: u32,
    power: impl Fn(&NcsfSeries<C>, u32) -> Result<NcsfSeries<C>, NcsfError>,
) -> Result<NcsfSeries<C>, NcsfError> {
    let mut comps = vec![NcsfSeries::<C>::one(0).component(0).clone()];
    for d in 1..=n {
        let known = NcsfSeries::from_components(crate::ncsf::Basis::S, comps.clone());
        let mut next = crate::ncsf::HomElem::zero(d);
        for m in 1..=d {
            let p = power(&known, m)?;
            let s_m = crate::ncsf::HomElem::monomial(Composition::single(m), C::one());
            next.add_product(&s_m, p.component(d - m));
        }
        comps.push(next);
    }
    Ok(NcsfSeries::from_components(crate::ncsf::Basis::S, comps))
}

/// `g` through degree `n`, from `g_n = Σ_m S_m (g^m)_{n-m}`.
pub fn solve_g(n: u32) -> NcsfSeries<Integer> {
    solve_power_equation(n, |x, m| x.pow(i64::from(m))).expect("integer powers of a unit series")
}

/// `g^(k)` from its own equation `x = 1 + Σ S_n x^{kn}`; negative `k` uses
/// the series inverse.
pub fn k_lagrange_direct(k: i64, n: u32) -> NcsfSeries<Integer> {
    solve_power_equation(n, |x, m| x.pow(k * i64::from(m))).expect("powers of a unit series")
}

/// `g^(t)` from `x = 1 + Σ S_n x^{tn}` with binomial powers; a cross-check
/// for [`g_t`].
pub fn g_t_direct(n: u32) -> NcsfSeries<PolyT> {
    solve_power_equation(n, |x, m| x.power_binomial(&PolyT::t().scale(i64::from(m))))
        .expect("binomial powers of a series with constant term 1")
}

/// `γ_n = g_{n+k} S_k^{-1}`.
pub fn geode(n: u32, k: u32) -> NcsfSeries<Integer> {
    solve_g(n + k)
        .annihilate(k)
        .expect("g computed with headroom k")
}

/// `γ = (g - 1) / (σ_1 - 1)`.
pub fn geode_by_division(n: u32) -> Result<NcsfSeries<Integer>, NcsfError> {
    let g = solve_g(n + 1);
    g.minus_one()
        .right_divide(&NcsfSeries::sigma1(n + 1).minus_one())
}

/// `(h, η)` with `h = 1 - g^{-1}` and `η = h S_1^{-1}`, both through degree `n`.
pub fn prime_series(n: u32) -> (NcsfSeries<Integer>, NcsfSeries<Integer>) {
    let g = solve_g(n + 1);
    let h = NcsfSeries::one(n + 1)
        .sub(&g.inverse().expect("g is a unit"))
        .expect("same basis");
    let eta = h.annihilate(1).expect("headroom of one degree");
    (h.truncate(n).expect("n <= n + 1"), eta)
}

/// `γ = (1 - Σ_n S_n (1 + g + ... + g^{n-1}))^{-1}`.
pub fn gessel_gamma(n: u32) -> NcsfSeries<Integer> {
    let g = solve_g(n);
    let mut u = NcsfSeries::<Integer>::zero(n);
    let mut geometric = NcsfSeries::<Integer>::zero(n);
    let mut gp = NcsfSeries::<Integer>::one(n);
    for m in 1..=n {
        geometric = geometric.add(&gp).expect("S basis");
        gp = gp.mul(&g).expect("S basis");
        let term = NcsfSeries::generator(m, n)
            .mul(&geometric)
            .expect("S basis");
        u = u.add(&term).expect("S basis");
    }
    NcsfSeries::one(n)
        .sub(&u)
        .expect("S basis")
        .inverse()
        .expect("constant term 1")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub holds: bool,
}

/// `γ = g η`, `η (σ_1 - 1) = h` and `η = g^{-1} γ`, through degree `n`.
pub fn eta_identities(n: u32) -> Vec<IdentityCheck> {
    let g = solve_g(n + 1);
    let gamma = geode(n, 1);
    let (h, eta) = prime_series(n);
    let g_n = g.truncate(n).expect("n <= n + 1");
    let ok = |x: Result<NcsfSeries<Integer>, NcsfError>, y: &NcsfSeries<Integer>| {
        x.map(|x| &x == y).unwrap_or(false)
    };
    vec![
        IdentityCheck {
            name: "gamma = g*eta",
            holds: ok(g_n.mul(&eta), &gamma),
        },
        IdentityCheck {
            name: "eta*(sigma1-1) = h",
            holds: ok(eta.mul(&NcsfSeries::sigma1(n).minus_one()), &h),
        },
        IdentityCheck {
            name: "eta = g^-1*gamma",
            holds: ok(g_n.inverse().and_then(|gi| gi.mul(&gamma)), &eta),
        },
    ]
}

/// `Σ_a Π_{j<p} w(i_j, a_j)` over the Polish codes `a` of plane trees with
/// `p = ℓ(I)` nodes.
///
/// The sum is evaluated as a walk over the number of open slots, which is all
/// the Łukasiewicz condition depends on, instead of enumerating codes.
pub fn tree_code_sum<C: Coeff>(comp: &Composition, weight: impl Fn(u32, u32) -> C) -> C {
    let parts = comp.parts();
    let p = parts.len();
    if p == 0 {
        return C::one();
    }
    // paths[s]: weighted count of prefixes leaving s open slots. More than p
    // open slots can never be closed by the remaining nodes.
    let mut paths = vec![C::zero(); p + 1];
    paths[1] = C::one();
    for (j, &part) in parts[..p - 1].iter().enumerate() {
        let remaining = p - 1 - j;
        let mut next = vec![C::zero(); p + 1];
        for (open, w) in paths.iter().enumerate() {
            if open == 0 || w.is_zero() {
                continue;
            }
            // This node fills one slot and opens `a` new ones.
            let lo = open.max(2) - 1;
            for (new_open, slot) in next.iter_mut().enumerate().take(remaining + 1).skip(lo) {
                let a = new_open + 1 - open;
                slot.add_assign(&w.mul(&weight(part, a as u32)));
            }
        }
        paths = next;
    }
    // The last node is a leaf closing the single open slot.
    paths[1].clone()
}

/// `[S^I] g^(t) = Σ_a Π_{j<p} binom(i_j t, a_j)`.
pub fn delta_coefficient(comp: &Composition) -> PolyT {
    tree_code_sum(comp, |part, a| {
        binomial_polynomial(u64::from(part), u64::from(a))
    })
}

/// Literal sum over enumerated codes; the oracle for [`delta_coefficient`].
pub fn delta_coefficient_by_codes(comp: &Composition) -> PolyT {
    let parts = comp.parts();
    if parts.is_empty() {
        return PolyT::one();
    }
    let mut acc = PolyT::zero();
    for code in plane_tree_codes_with_nodes(parts.len() as u32) {
        let mut prod = PolyT::one();
        for (&i, &a) in parts.iter().zip(code.letters()).take(parts.len() - 1) {
            prod = prod.mul(&binomial_polynomial(u64::from(i), u64::from(a)));
        }
        acc.add_assign(&prod);
    }
    acc
}

/// `g^(t)` through degree `n`, assembled from [`delta_coefficient`].
pub fn g_t(n: u32) -> NcsfSeries<PolyT> {
    NcsfSeries::from_terms(
        crate::ncsf::Basis::S,
        n,
        (0..=n).flat_map(compositions).map(|c| {
            let d = delta_coefficient(&c);
            (c, d)
        }),
    )
}

/// `K = g^(-1) = g(-A)^{-1}`.
pub fn free_cumulants(n: u32) -> NcsfSeries<Integer> {
    solve_g(n)
        .negate_alphabet()
        .and_then(|x| x.inverse())
        .expect("g(-A) has constant term 1")
}

/// `γ^(t) = (g^(t) - 1) / (σ_1 - 1)` through degree `n`.
pub fn gamma_t(n: u32) -> Result<NcsfSeries<PolyT>, NcsfError> {
    g_t(n + 1)
        .minus_one()
        .right_divide(&NcsfSeries::sigma1(n + 1).minus_one())
}

/// `θ^(t) = (g^(t) - 1) / (g^(t-1) - 1)` through degree `n`.
pub fn theta_t(n: u32) -> Result<NcsfSeries<PolyT>, NcsfError> {
    let gt = g_t(n + 1);
    gt.minus_one().right_divide(&gt.shift_t(-1).minus_one())
}

/// `h^(t) = Σ_{m ≥ 1} S_m (g^(t))^{t(m-1)}` through degree `n`.
pub fn h_t(n: u32) -> Result<NcsfSeries<PolyT>, NcsfError> {
    let gt = g_t(n);
    let mut h = NcsfSeries::<PolyT>::zero(n);
    for m in 1..=n {
        let power = gt.power_binomial(&PolyT::t().scale(i64::from(m) - 1))?;
        h = h.add(&NcsfSeries::generator(m, n).mul(&power)?)?;
    }
    Ok(h)
}

/// `η^(t) = h^(t) S_1^{-1}` through degree `n`.
pub fn eta_t(n: u32) -> Result<NcsfSeries<PolyT>, NcsfError> {
    h_t(n + 1)?.annihilate(1)
}

/// `θ_k = L^{k-1}(γ)` through degree `n`, for `k ≥ 1`.
pub fn theta_by_transform(k: u32, n: u32) -> NcsfSeries<Integer> {
    assert!(k >= 1);
    let g = solve_g(n);
    let mut x = geode(n, 1);
    for _ in 1..k {
        x = x
            .lagrange_transform(&g)
            .expect("g and x share the truncation");
    }
    x
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisibilityRow {
    pub k: u32,
    /// Quotient `(g^(k) - 1) / (g^(k-1) - 1)`, or the reason it does not exist.
    pub quotient: Result<NcsfSeries<Integer>, NcsfError>,
    pub nonnegative: bool,
}

impl DivisibilityRow {
    pub fn passed(&self) -> bool {
        self.quotient.is_ok() && self.nonnegative
    }
}

/// For `k = 1..=k_max`: `g^(k) - 1` is right-divisible by `g^(k-1) - 1` with
/// a nonnegative integer quotient, through degree `n`. `g^(k)` comes from its
/// own functional equation.
pub fn divisibility_check(k_max: u32, n: u32) -> Vec<DivisibilityRow> {
    let gk = |k: u32| k_lagrange_direct(i64::from(k), n + 1);
    (1..=k_max)
        .map(|k| {
            let quotient = gk(k).minus_one().right_divide(&gk(k - 1).minus_one());
            let nonnegative = quotient
                .as_ref()
                .map(|q| q.is_nonnegative())
                .unwrap_or(false);
            DivisibilityRow {
                k,
                quotient,
                nonnegative,
            }
        })
        .collect()
}

/// Write-once cache of `g` and `g^(t)` at one truncation.
pub struct LagrangeContext {
    truncation: u32,
    g: OnceLock<NcsfSeries<Integer>>,
    g_t: OnceLock<NcsfSeries<PolyT>>,
}

impl LagrangeContext {
    pub fn new(truncation: u32) -> Self {
        LagrangeContext {
            truncation,
            g: OnceLock::new(),
            g_t: OnceLock::new(),
        }
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn g(&self) -> &NcsfSeries<Integer> {
        self.g.get_or_init(|| solve_g(self.truncation))
    }

    pub fn g_t(&self) -> &NcsfSeries<PolyT> {
        self.g_t.get_or_init(|| g_t(self.truncation))
    }

    /// `g^(k)` for an integer `k`, specialized from the cached `g^(t)`.
    pub fn g_k(&self, k: i64) -> NcsfSeries<Integer> {
        self.g_t()
            .eval_t_integer(k)
            .expect("δ polynomials take integer values at integers")
    }
}

/// `g^(t)` evaluated at a rational `t`.
pub fn g_t_at(n: u32, t: &Rational) -> NcsfSeries<Rational> {
    g_t(n).eval_t(t)
}
