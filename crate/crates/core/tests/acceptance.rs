//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the lines are always printed; exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use geode::coeffring::{poly_over, Coeff, CoeffText, EPoly, ESubstitution, Integer, PolyT};
use geode::combinat::{
    catalan, compositions, enumerate_lukasiewicz, parking_quasi_ribbons, remove_last_corolla,
    shift_words, Composition,
};
use geode::gfseries::{specialize_ncsf, ClosedForm, Specialization, UniSeries};
use geode::lagrange::{
    delta_coefficient, divisibility_check, eta_identities, eta_t, free_cumulants, g_t, gamma_t,
    geode, geode_by_division, gessel_gamma, h_t, k_lagrange_direct, solve_g, theta_by_transform,
    theta_t,
};
use geode::ncsf::{Basis, NcsfSeries};
use geode::schroeder::{enumerate_prime_schroeder, g_e, gamma_e, ERoute};
use geode::verify::term_multiset;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn c(s: &str) -> Composition {
    Composition::parse(s).unwrap()
}

fn line<C: CoeffText>(s: &NcsfSeries<C>, d: u32, basis: Basis) -> String {
    s.convert(basis).component(d).render(basis)
}

/// Whitespace does not matter: "S_2+S^{11}" and "S_2 + S^{11}" are the same.
fn verbatim(got: &str, want: &str) -> Outcome {
    let squeeze = |s: &str| s.chars().filter(|c| !c.is_whitespace()).collect::<String>();
    ensure(squeeze(got) == squeeze(want), || {
        format!("expected {want}, got {got}")
    })
}

/// Same terms, any order.
fn same_terms(what: &str, got: &str, want: &str) -> Outcome {
    ensure(term_multiset(got) == term_multiset(want), || {
        format!("{what}: expected {want}, got {got}")
    })
}

fn int_list(s: &UniSeries) -> Vec<i64> {
    s.integer_coeffs()
        .expect("integer series")
        .iter()
        .map(|c| c.try_into().unwrap())
        .collect()
}

fn closed(form: ClosedForm, n: u32) -> Vec<i64> {
    int_list(form.expand(n).unwrap().uni().unwrap())
}

fn sums(v: Vec<Integer>) -> Vec<i64> {
    v.iter().map(|c| c.try_into().unwrap()).collect()
}

fn criterion_1() -> Outcome {
    let g = solve_g(10);
    let displayed = ["1", "S_1", "S_2+S^{11}", "S_3+2*S^{21}+S^{12}+S^{111}"];
    for (n, want) in displayed.iter().enumerate() {
        verbatim(
            &format!("g_{n} = {}", line(&g, n as u32, Basis::S)),
            &format!("g_{n} = {want}"),
        )?;
    }
    let cat: Vec<i64> = (0..=10).map(|n| catalan(n) as i64).collect();
    ensure(sums(g.coefficient_sums()) == cat, || {
        "coefficient sums are not Catalan".into()
    })
}

fn criterion_2() -> Outcome {
    let gamma = geode(8, 1);
    let displayed = [
        "1",
        "S_1",
        "2*S_2+S^{11}",
        "3*S_3+3*S^{21}+2*S^{12}+S^{111}",
    ];
    for (n, want) in displayed.iter().enumerate() {
        verbatim(&line(&gamma, n as u32, Basis::S), want)?;
    }
    for k in 2..=4 {
        ensure(geode(8, k) == gamma, || format!("S_{k}^-1 route differs"))?;
    }
    ensure(geode_by_division(8).as_ref() == Ok(&gamma), || {
        "division route differs".into()
    })?;
    let s = sums(geode(7, 1).coefficient_sums());
    ensure(s == [1, 1, 3, 9, 28, 90, 297, 1001], || {
        format!("sums {s:?}")
    })
}

fn criterion_3() -> Outcome {
    let gamma = geode(3, 1);
    same_terms(
        "gamma_3 in R",
        &line(&gamma, 3, Basis::R),
        "9*R_{3} + 4*R_{21} + 3*R_{12} + R_{111}",
    )?;
    same_terms(
        "gamma_3 in L",
        &line(&gamma, 3, Basis::Lambda),
        "3*L^{3} - 6*L^{21} - 5*L^{12} + 9*L^{111}",
    )?;

    let rub = [1, 1, 4, 17, 76, 353, 1688, 8257, 41128, 207905];
    let g9 = geode(9, 1);
    let ncsf = sums(g9.convert(Basis::R).coefficient_sums());
    ensure(ncsf == rub, || format!("ribbon sums {ncsf:?}"))?;
    let spec = int_list(
        specialize_ncsf(&g9, Specialization::RibbonU)
            .unwrap()
            .uni()
            .unwrap(),
    );
    ensure(spec == rub, || format!("u-specialization {spec:?}"))?;
    ensure(closed(ClosedForm::RibbonSum, 9) == rub, || {
        "ribbon closed form".into()
    })?;

    let lam = [1, 1, 5, 23, 107, 509, 2473, 12235, 61463, 312761, 1609005];
    let g10 = geode(10, 1);
    let abs: Vec<i64> = g10
        .convert(Basis::Lambda)
        .components()
        .iter()
        .map(|h| {
            h.terms()
                .map(|(_, c)| i64::try_from(c).unwrap().abs())
                .sum()
        })
        .collect();
    ensure(abs == lam, || format!("absolute elementary sums {abs:?}"))?;
    let spec = int_list(
        specialize_ncsf(&g10, Specialization::LambdaAbs)
            .unwrap()
            .uni()
            .unwrap(),
    );
    ensure(spec == lam, || {
        format!("2^(|I|-l(I)) specialization {spec:?}")
    })?;
    ensure(closed(ClosedForm::LambdaSum, 10) == lam, || {
        "elementary closed form".into()
    })
}

fn criterion_4() -> Outcome {
    let ribbons = geode(6, 1).convert(Basis::R);
    for n in 1..=6 {
        for i in compositions(n) {
            let count = parking_quasi_ribbons(&i.push(1)).len() as i64;
            let coeff = ribbons.coeff(&i);
            ensure(coeff == Integer::from(count), || {
                format!("I = {i:?}: {count} fillings, coefficient {coeff}")
            })?;
        }
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    ensure(gessel_gamma(8) == geode(8, 1), || {
        "Gessel formula differs".into()
    })
}

fn criterion_6() -> Outcome {
    for check in eta_identities(8) {
        ensure(check.holds, || format!("{} fails", check.name))?;
    }
    Ok(())
}

/// Table lines, transcribed; the three corrected entries carry the computed
/// value and are checked against the printed one separately below.
const T_TABLE: [(&str, u32, &str); 19] = [
    ("g", 1, "S_1"),
    ("g", 2, "S_2 + t*S^{11}"),
    ("g", 3, "S_3 + 2t*S^{21} + t*S^{12} + (3t^2-t)/2*S^{111}"),
    ("g", 4, "S_4 + 3t*S^{31} + 2t*S^{22} + (4t^2-t)*S^{211} + t*S^{13} + (5t^2-t)/2*S^{121} + (3t^2-t)/2*S^{112} + (8t^3-6t^2+t)/3*S^{1111}"),
    ("gamma", 1, "t*S_1"),
    ("gamma", 2, "2t*S_2 + (3t^2-t)/2*S^{11}"),
    ("gamma", 3, "3t*S_3 + (4t^2-t)*S^{21} + (5t^2-t)/2*S^{12} + (8t^3-6t^2+t)/3*S^{111}"),
    ("gamma", 4, "4t*S_4 + (15t^2-3t)/2*S^{31} + (6t^2-t)*S^{22} + (25t^3-15t^2+2t)/3*S^{211} + (7t^2-t)/2*S^{13} + (17t^3-9t^2+t)/3*S^{121} + (25t^3-15t^2+2t)/6*S^{112} + (125t^4-150t^3+55t^2-6t)/24*S^{1111}"),
    ("theta", 1, "S_1"),
    ("theta", 2, "2*S_2 + (2t-1)*S^{11}"),
    ("theta", 3, "3*S_3 + (6t-3)*S^{21} + (3t-1)*S^{12} + (9t^2-11t+4)/2*S^{111}"),
    ("theta", 4, "4*S_4 + (12t-6)*S^{31} + (8t-3)*S^{22} + (16t^2-19t+7)*S^{211} + (4t-1)*S^{13} + (10t^2-10t+3)*S^{121} + (6t^2-6t+2)*S^{112} + (64t^3-129t^2+101t-30)/6*S^{1111}"),
    ("h", 1, "S_1"),
    ("h", 2, "S_2"),
    ("h", 3, "S_3 + t*S^{21}"),
    ("h", 4, "S_4 + 2t*S^{31} + t*S^{22} + (3t^2-t)/2*S^{211}"),
    ("eta", 2, "t*S_2"),
    ("eta", 3, "2t*S_3 + (3t^2-t)/2*S^{21}"),
    ("eta", 4, "3t*S_4 + (4t^2-t)*S^{31} + (5t^2-t)/2*S^{22} + (8t^3-6t^2+t)/3*S^{211}"),
];

fn criterion_7() -> Outcome {
    ensure(
        delta_coefficient(&c("2,1,1")) == PolyT::from_ints(&[0, -1, 4]),
        || "delta_211".into(),
    )?;

    let gt = g_t(4);
    let series: BTreeMap<&str, NcsfSeries<PolyT>> = [
        ("g", gt.clone()),
        ("gamma", gamma_t(4).map_err(|e| e.to_string())?),
        ("theta", theta_t(4).map_err(|e| e.to_string())?),
        ("h", h_t(4).map_err(|e| e.to_string())?),
        ("eta", eta_t(4).map_err(|e| e.to_string())?),
    ]
    .into_iter()
    .collect();
    for (name, d, want) in T_TABLE {
        same_terms(
            &format!("{name}^(t)_{d}"),
            &line(&series[name], d, Basis::S),
            want,
        )?;
    }
    ensure(series["eta"].component(1).is_zero(), || {
        "eta^(t)_1 is not 0".into()
    })?;

    // The documented deviations, against the printed values.
    let theta_112 = series["theta"].coeff(&c("1,1,2"));
    ensure(
        theta_112 == PolyT::from_ints(&[2, -6, 6]) && theta_112 != PolyT::from_ints(&[12, -6, 6]),
        || format!("[S^112]theta_4 = {theta_112}"),
    )?;
    let h4 = &series["h"];
    ensure(
        h4.coeff(&c("2,1,1")) == poly_over(&[0, -1, 3], 2) && h4.coeff(&c("1,1,1")).is_zero(),
        || "h^(t)_4 last term".into(),
    )?;
    let eta = &series["eta"];
    ensure(
        eta.coeff(&c("3,1")) == PolyT::from_ints(&[0, -1, 4])
            && eta.coeff(&c("3,1")) != PolyT::from_ints(&[-1, 0, 4])
            && eta.coeff(&c("2,1,1")) == poly_over(&[0, 1, -6, 8], 3)
            && eta.coeff(&c("1,1,1,1")).is_zero(),
        || "eta^(t)_4 corrected terms".into(),
    )?;

    for k in 1..=3u32 {
        let at_k = gt.eval_t_integer(i64::from(k)).ok_or("non-integer value")?;
        ensure(at_k == solve_g(4 * k).phi(k).unwrap(), || {
            format!("t = {k} vs phi_{k}(g)")
        })?;
        ensure(at_k == k_lagrange_direct(i64::from(k), 4), || {
            format!("t = {k} vs direct")
        })?;
    }
    ensure(gt.eval_t_integer(0) == Some(NcsfSeries::sigma1(4)), || {
        "g^(0) is not sigma1".into()
    })?;
    for row in divisibility_check(3, 5) {
        ensure(row.passed(), || format!("divisibility for k = {}", row.k))?;
    }
    let theta5 = theta_t(5).map_err(|e| e.to_string())?;
    for k in 2..=3u32 {
        ensure(
            theta5.eval_t_integer(i64::from(k)) == Some(theta_by_transform(k, 5)),
            || format!("theta_{k} vs L^{}(gamma)", k - 1),
        )?;
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let k = free_cumulants(7);
    ensure(k_lagrange_direct(-1, 7) == k, || {
        "negative-power recursion differs".into()
    })?;
    ensure(g_t(7).eval_t_integer(-1) == Some(k.clone()), || {
        "t = -1 differs".into()
    })?;
    let sigma = NcsfSeries::<Integer>::sigma1(7);
    let mut rhs = NcsfSeries::<Integer>::zero(7);
    let mut power = NcsfSeries::<Integer>::one(7);
    for n in 0..=7 {
        let kn = NcsfSeries::from_terms(
            Basis::S,
            7,
            k.component(n).terms().map(|(c, x)| (c.clone(), x.clone())),
        );
        rhs = rhs.add(&kn.mul(&power).unwrap()).unwrap();
        power = power.mul(&sigma).unwrap();
    }
    ensure(rhs == sigma, || "sigma1 != sum K_n sigma1^n".into())?;
    let ge = g_e(6, ERoute::Formula)
        .map_coeffs(|c: &EPoly| c.evaluate_integer(ESubstitution::AlternatingSigns));
    ensure(ge == k.truncate(6).unwrap(), || {
        "e_n -> (-1)^n does not give K".into()
    })
}

fn criterion_9() -> Outcome {
    let ge = g_e(6, ERoute::Formula);
    let displayed_g = [
        "1",
        "S_1",
        "S_2 + e_1*S^{11}",
        "S_3 + 2e_1*S^{21} + e_1*S^{12} + (e_2+e_1^2)*S^{111}",
        "S_4 + 3e_1*S^{31} + 2e_1*S^{22} + (2e_2+3e_1^2)*S^{211} + e_1*S^{13} + (e_2+2e_1^2)*S^{121} + (e_2+e_1^2)*S^{112} + (e_3+3e_2e_1+e_1^3)*S^{1111}",
    ];
    for (n, want) in displayed_g.iter().enumerate() {
        same_terms(&format!("g^[e]_{n}"), &line(&ge, n as u32, Basis::S), want)?;
    }
    let gam = gamma_e(5, 1);
    let displayed_gamma = [
        "e_1*S_1",
        "2e_1*S_2 + (e_1^2+e_2)*S^{11}",
        "3e_1*S_3 + (3e_1^2+2e_2)*S^{21} + (2e_1^2+e_2)*S^{12} + (e_1^3+3e_2e_1+e_3)*S^{111}",
        "4e_1*S_4 + (6e_1^2+3e_2)*S^{31} + (5e_1^2+2e_2)*S^{22} + (4e_1^3+8e_2e_1+2e_3)*S^{211} + (3e_1^2+e_2)*S^{13} + (3e_1^3+5e_2e_1+e_3)*S^{121} + (2e_1^3+4e_2e_1+e_3)*S^{112} + (e_1^4+6e_2e_1^2+4e_3e_1+2e_2^2+e_4)*S^{1111}",
    ];
    // Inside a coefficient the e-monomials are in the library's order, so
    // compare coefficient by coefficient through the multiset of monomials.
    for (i, want) in displayed_gamma.iter().enumerate() {
        let n = i as u32 + 1;
        let got = line(&gam, n, Basis::S);
        ensure(normalize_e(&got) == normalize_e(want), || {
            format!("gamma^[e]_{n}: expected {want}, got {got}")
        })?;
    }
    for route in [ERoute::System, ERoute::PrimeTrees, ERoute::Equation] {
        ensure(g_e(6, route) == ge, || format!("{route:?} route differs"))?;
    }
    for k in 2..=3 {
        ensure(gamma_e(5, k) == gam, || {
            format!("gamma^[e] via S_{k}^-1 differs")
        })?;
    }
    let counts: Vec<i64> = (1..=5)
        .map(|n| enumerate_prime_schroeder(n).len() as i64)
        .collect();
    ensure(counts == [1, 2, 6, 22, 90], || {
        format!("PST counts {counts:?}")
    })?;
    let ones = sums(
        g_e(5, ERoute::Formula)
            .map_coeffs(|c: &EPoly| c.evaluate_integer(ESubstitution::AllOnes))
            .coefficient_sums(),
    );
    ensure(ones[1..] == counts[..], || {
        format!("e_n -> 1 sums {ones:?}")
    })?;
    let zq = specialize_ncsf(&g_e(8, ERoute::Formula), Specialization::Zq).unwrap();
    ensure(zq == ClosedForm::Zq.expand(8).unwrap(), || {
        "(z,q) specialization differs".into()
    })
}

/// Sorted terms with each parenthesised coefficient's monomials sorted too.
fn normalize_e(s: &str) -> Vec<(bool, String)> {
    let mut terms = term_multiset(s);
    for (_, t) in terms.iter_mut() {
        if let (Some(open), Some(close)) = (t.find('('), t.find(')')) {
            let mut monos: Vec<String> = t[open + 1..close]
                .split('+')
                .map(|m| {
                    // e_1^2e_2 and e_2e_1^2 name the same monomial.
                    let mut f: Vec<String> = m
                        .split('e')
                        .filter(|x| !x.is_empty())
                        .map(str::to_string)
                        .collect();
                    let coeff = if m.starts_with('e') {
                        String::new()
                    } else {
                        f.remove(0)
                    };
                    f.sort();
                    format!("{coeff}e{}", f.join("e"))
                })
                .collect();
            monos.sort();
            *t = format!("({}){}", monos.join("+"), &t[close + 1..]);
        }
    }
    terms.sort();
    terms
}

fn criterion_10() -> Outcome {
    let gamma = geode(7, 1);
    for n in 0..=7 {
        let mut trailing = BTreeMap::<Composition, Integer>::new();
        let mut shifts = BTreeMap::<Composition, Integer>::new();
        for code in enumerate_lukasiewicz(n) {
            *trailing.entry(code.nonzero_arities()).or_default() += code.trailing_zeros() as i64;
            *shifts.entry(code.nonzero_arities()).or_default() += shift_words(&code).len() as i64;
        }
        let got: BTreeMap<Composition, Integer> = gamma
            .component(n)
            .terms()
            .map(|(c, x)| (c.clone(), x.clone()))
            .collect();
        ensure(got == trailing, || format!("trailing zeros, n = {n}"))?;
        ensure(got == shifts, || format!("shift words, n = {n}"))?;

        let mut first: Option<BTreeMap<Vec<u32>, usize>> = None;
        for k in 1..=4 {
            let mut multiset = BTreeMap::new();
            for code in enumerate_lukasiewicz(n + k) {
                if let Some(t) = remove_last_corolla(&code, k) {
                    *multiset.entry(t.letters().to_vec()).or_insert(0usize) += 1;
                }
            }
            match &first {
                None => first = Some(multiset),
                Some(f) => ensure(f == &multiset, || {
                    format!("d_{k} multiset differs, n = {n}")
                })?,
            }
        }
    }
    Ok(())
}

fn arb_series(n: u32) -> impl Strategy<Value = NcsfSeries<Integer>> {
    let comps: Vec<Composition> = (0..=n).flat_map(compositions).collect();
    let len = comps.len();
    prop::collection::vec((0..len, -4i64..=4), 0..10).prop_map(move |picks| {
        NcsfSeries::from_terms(
            Basis::S,
            n,
            picks
                .into_iter()
                .map(|(i, c)| (comps[i].clone(), Integer::from(c))),
        )
    })
}

fn criterion_11() -> Outcome {
    let mut runner = TestRunner::new(Config {
        cases: 64,
        failure_persistence: None,
        ..Config::default()
    });
    let run = |r: Result<(), proptest::test_runner::TestError<_>>, what: &str| {
        r.map_err(|e| format!("{what}: {e}"))
    };
    let series_pair = (arb_series(5), arb_series(5));
    let g = solve_g(5);
    run(
        runner.run(&series_pair, |(u, v)| {
            for b in [Basis::R, Basis::Lambda] {
                prop_assert_eq!(u.convert(b).convert(Basis::S), u.clone());
            }
            for k in 1..=3 {
                prop_assert_eq!(
                    u.annihilate(k).unwrap().convert(Basis::R),
                    u.convert(Basis::R).annihilate(k).unwrap()
                );
            }
            prop_assert_eq!(
                u.annihilate(1).unwrap().convert(Basis::Lambda),
                u.convert(Basis::Lambda).annihilate(1).unwrap()
            );
            let uv = u.mul(&v).unwrap();
            let v0 = NcsfSeries::one(4).scale(&v.constant_term());
            let rule = u
                .truncate(4)
                .unwrap()
                .mul(&v.annihilate(1).unwrap())
                .unwrap()
                .add(&u.annihilate(1).unwrap().mul(&v0).unwrap())
                .unwrap();
            prop_assert_eq!(uv.annihilate(1).unwrap(), rule);
            prop_assert_eq!(
                uv.phi(2).unwrap(),
                u.phi(2).unwrap().mul(&v.phi(2).unwrap()).unwrap()
            );
            prop_assert_eq!(
                uv.negate_alphabet().unwrap(),
                u.negate_alphabet()
                    .unwrap()
                    .mul(&v.negate_alphabet().unwrap())
                    .unwrap()
            );
            prop_assert_eq!(
                uv.lagrange_transform(&g).unwrap(),
                u.lagrange_transform(&g)
                    .unwrap()
                    .mul(&v.lagrange_transform(&g).unwrap())
                    .unwrap()
            );
            let spec = |x: &NcsfSeries<Integer>| {
                specialize_ncsf(x, Specialization::Catalan)
                    .unwrap()
                    .uni()
                    .unwrap()
                    .clone()
            };
            prop_assert_eq!(spec(&uv), spec(&u).mul(&spec(&v)));
            Ok(())
        }),
        "series properties",
    )?;

    let g7 = solve_g(7);
    let (ribbon, elementary) = (g7.convert(Basis::R), g7.convert(Basis::Lambda));
    for n in 0..=7 {
        for i in compositions(n) {
            let r = ribbon.coeff(&i.conjugate());
            let signed = if (n as usize - i.len()).is_multiple_of(2) {
                r
            } else {
                -r
            };
            ensure(elementary.coeff(&i) == signed, || {
                format!("sign/conjugation at {i:?}")
            })?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("1 Lagrange series g_0..g_3 and Catalan sums", criterion_1),
        ("2 geode values, routes and A071724 sums", criterion_2),
        (
            "3 ribbon and elementary expansions, A239204 and A238112",
            criterion_3,
        ),
        ("4 parking quasi-ribbon oracle", criterion_4),
        ("5 Gessel formula", criterion_5),
        ("6 eta and h identities", criterion_6),
        ("7 t-hierarchy tables and k-Lagrange routes", criterion_7),
        ("8 free cumulants", criterion_8),
        ("9 e-series, Schroeder trees and (z,q) form", criterion_9),
        ("10 tree interpretations of the geode", criterion_10),
        ("11 property suites", criterion_11),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (name, f) in criteria {
        let t = Instant::now();
        let ms = || t.elapsed().as_millis();
        match f() {
            Ok(()) => println!("PASS criterion {name} ({} ms)", ms()),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {name}: {e}");
            }
        }
    }
    println!(
        "acceptance: {} of 11 criteria passed in {:.1} s",
        11 - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
