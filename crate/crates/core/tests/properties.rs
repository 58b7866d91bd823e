use geode::coeffring::{
    binomial, binomial_polynomial, Coeff, EPoly, ESubstitution, Integer, Partition, PolyT,
};
use geode::combinat::{
    code_to_ndpf, compositions, enumerate_lukasiewicz, is_noncrossing, ndpf_to_code,
    ndpf_to_noncrossing, noncrossing_to_ndpf, Composition,
};
use geode::lagrange::solve_g;
use geode::ncsf::{Basis, NcsfSeries};
use proptest::prelude::*;

const N: u32 = 5;

fn arb_series(n: u32) -> impl Strategy<Value = NcsfSeries<Integer>> {
    let comps: Vec<Composition> = (1..=n).flat_map(compositions).collect();
    let len = comps.len();
    (-3i64..=3, prop::collection::vec((0..len, -4i64..=4), 0..10)).prop_map(move |(c0, picks)| {
        let mut terms = vec![(Composition::empty(), Integer::from(c0))];
        terms.extend(
            picks
                .into_iter()
                .map(|(i, c)| (comps[i].clone(), Integer::from(c))),
        );
        NcsfSeries::from_terms(Basis::S, n, terms)
    })
}

fn unit_series(n: u32) -> impl Strategy<Value = NcsfSeries<Integer>> {
    arb_series(n).prop_map(move |s| {
        let shift = Integer::from(1) - s.constant_term();
        s.add(&NcsfSeries::one(n).scale(&shift)).unwrap()
    })
}

fn arb_epoly() -> impl Strategy<Value = EPoly> {
    prop::collection::vec((prop::collection::vec(1u32..=3, 0..3), -3i64..=3), 0..4).prop_map(|ms| {
        let mut p = EPoly::zero();
        for (parts, c) in ms {
            p.add_assign(&EPoly::monomial(Partition::new(parts), Integer::from(c)));
        }
        p
    })
}

fn arb_poly() -> impl Strategy<Value = PolyT> {
    prop::collection::vec(-5i64..=5, 0..4).prop_map(|c| PolyT::from_ints(&c))
}

const RULES: [ESubstitution; 4] = [
    ESubstitution::AlternatingSigns,
    ESubstitution::PowersOfQ,
    ESubstitution::AllOnes,
    ESubstitution::FirstOnly,
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn binomial_polynomial_takes_binomial_values(m in 0u64..6, a in 0u64..6, k in 0u64..6) {
        let at = binomial_polynomial(m, a).eval_int(k as i64);
        prop_assert_eq!(at, geode::coeffring::Rational::from_integer(binomial(m * k, a)));
    }

    #[test]
    fn e_substitutions_are_ring_morphisms(x in arb_epoly(), y in arb_epoly()) {
        for rule in RULES {
            prop_assert_eq!(x.mul(&y).evaluate(rule), &x.evaluate(rule) * &y.evaluate(rule));
            prop_assert_eq!(x.add(&y).evaluate(rule), &x.evaluate(rule) + &y.evaluate(rule));
        }
        prop_assert_eq!(EPoly::one().evaluate(ESubstitution::PowersOfQ), PolyT::one());
    }

    #[test]
    fn polynomial_ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        if !b.is_zero() {
            prop_assert_eq!(a.mul(&b).exact_div(&b).unwrap(), a);
        }
    }

    #[test]
    fn basis_round_trips(u in arb_series(N)) {
        for b in [Basis::R, Basis::Lambda] {
            prop_assert_eq!(u.convert(b).convert(Basis::S), u.clone());
        }
        prop_assert_eq!(u.convert(Basis::R).convert(Basis::Lambda).convert(Basis::R), u.convert(Basis::R));
    }

    #[test]
    fn annihilation_commutes_with_conversion(u in arb_series(N), k in 1u32..=3) {
        let left = u.annihilate(k).unwrap().convert(Basis::R);
        let right = u.convert(Basis::R).annihilate(k).unwrap();
        prop_assert_eq!(left, right);
        let left = u.annihilate(1).unwrap().convert(Basis::Lambda);
        let right = u.convert(Basis::Lambda).annihilate(1).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn morphisms_respect_products(u in arb_series(N), v in arb_series(N), k in 1u32..=3) {
        let uv = u.mul(&v).unwrap();
        prop_assert_eq!(uv.phi(k).unwrap(), u.phi(k).unwrap().mul(&v.phi(k).unwrap()).unwrap());
        let neg = |x: &NcsfSeries<Integer>| x.negate_alphabet().unwrap();
        prop_assert_eq!(neg(&uv), neg(&u).mul(&neg(&v)).unwrap());
        prop_assert_eq!(neg(&neg(&u)), u.clone());
        let g = solve_g(N);
        let l = |x: &NcsfSeries<Integer>| x.lagrange_transform(&g).unwrap();
        prop_assert_eq!(l(&uv), l(&u).mul(&l(&v)).unwrap());
    }

    #[test]
    fn inverse_is_two_sided(u in unit_series(N)) {
        let inv = u.inverse().unwrap();
        prop_assert_eq!(u.mul(&inv).unwrap(), NcsfSeries::one(N));
        prop_assert_eq!(inv.mul(&u).unwrap(), NcsfSeries::one(N));
    }

    #[test]
    fn composition_involutions(parts in prop::collection::vec(1u32..4, 0..7)) {
        let c = Composition::new(parts).unwrap();
        prop_assert_eq!(c.conjugate().conjugate(), c.clone());
        prop_assert_eq!(Composition::from_descents(c.weight(), &c.descents()), c.clone());
        prop_assert_eq!(c.conjugate().weight(), c.weight());
    }

    #[test]
    fn catalan_bijections_round_trip(n in 0u32..7, pick in any::<prop::sample::Index>()) {
        let codes = enumerate_lukasiewicz(n);
        let code = &codes[pick.index(codes.len())];
        let w = code_to_ndpf(code);
        prop_assert_eq!(&ndpf_to_code(&w).unwrap(), code);
        let blocks = ndpf_to_noncrossing(&w).unwrap();
        prop_assert!(is_noncrossing(&blocks));
        prop_assert_eq!(noncrossing_to_ndpf(&blocks), w);
    }
}

/// `[Λ^I]g = (-1)^{|I|-ℓ(I)} [R_{I~}]g`, exhaustively for `|I| <= 7`.
#[test]
fn elementary_coefficients_of_g_are_signed_conjugate_ribbons() {
    let g = solve_g(7);
    let (ribbon, elementary) = (g.convert(Basis::R), g.convert(Basis::Lambda));
    for n in 0..=7 {
        for c in compositions(n) {
            let r = ribbon.coeff(&c.conjugate());
            let expected = if (n as usize - c.len()).is_multiple_of(2) {
                r
            } else {
                -r
            };
            assert_eq!(elementary.coeff(&c), expected, "{c:?}");
        }
    }
}
