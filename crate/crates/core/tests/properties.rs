mod common;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use common::*;
use toric_qk::ifunction::{degree_factor, expected_leading_power, i_series};
use toric_qk::inertia::{age, inverse};
use toric_qk::linalg::{cone_contains, frac, rat, snf, IntMatrix, Rational};
use toric_qk::novikov::NovikovSeries;
use toric_qk::poly::Monomial;
use toric_qk::qde::{apply_m, apply_m_shifted, symbol, BoxOperator};
use toric_qk::qkirwan::{equivariant_qsr_generator, qsr_generator};
use toric_qk::ring::{divisor_form, kirwan_classical, translate};
use toric_qk::{build_presentation, enumerate_sectors, normal_form, GitData, NovikovDegree, Poly};

// ---------------------------------------------------------------- SNF

fn small_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(m, n)| {
        prop::collection::vec(-9i64..=9, m * n).prop_map(move |d| IntMatrix::new(m, n, d).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn snf_is_a_smith_form(a in small_matrix()) {
        let res = snf(&a);
        prop_assert_eq!(res.u.mul(&a).unwrap().mul(&res.v).unwrap(), res.d.clone());
        for i in 0..res.d.rows() {
            for j in 0..res.d.cols() {
                if i != j {
                    prop_assert_eq!(res.d[(i, j)], 0);
                }
            }
        }
        let f = res.invariant_factors();
        prop_assert!(f.iter().all(|&x| x > 0));
        for w in f.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
        prop_assert_eq!(det(&res.u).abs(), BigInt::one());
        prop_assert_eq!(det(&res.v).abs(), BigInt::one());
        // d_1 ... d_t = gcd of t x t minors
        let mut prod = BigInt::one();
        for t in 1..=a.rows().min(a.cols()) {
            let expected = determinantal_divisor(&a, t);
            if t <= f.len() {
                prod *= f[t - 1];
                prop_assert_eq!(&prod, &expected);
            } else {
                prop_assert!(expected.is_zero());
            }
        }
    }
}

// ------------------------------------------------------ cone membership

fn rat_vec(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rat(x)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn cone_matches_oracle(
        (gens, target) in (1usize..=3).prop_flat_map(|dim| (
            prop::collection::vec(prop::collection::vec(-3i64..=3, dim), 0..=6),
            prop::collection::vec(-3i64..=3, dim),
        ))
    ) {
        let g: Vec<Vec<Rational>> = gens.iter().map(|v| rat_vec(v)).collect();
        let t = rat_vec(&target);
        prop_assert_eq!(cone_contains(&g, &t).unwrap(), cone_oracle(&g, &t));
        let zero = vec![Rational::zero(); t.len()];
        prop_assert!(cone_contains(&g, &zero).unwrap());
    }
}

#[test]
fn cone_with_no_generators() {
    assert!(cone_contains(&[], &rat_vec(&[0, 0])).unwrap());
    assert!(!cone_contains(&[], &rat_vec(&[0, 1])).unwrap());
}

// ------------------------------------------------------------ git data

fn random_datum() -> impl Strategy<Value = GitData> {
    (1usize..=2, 2usize..=6).prop_flat_map(|(r, k)| {
        (
            prop::collection::vec(prop::collection::vec(-2i64..=3, k), r),
            prop::collection::vec(-2i64..=3, r),
        )
            .prop_filter_map("invalid datum", |(rows, nu)| {
                GitData::from_rows(&rows, &nu).ok()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn semistability_is_monotone(g in random_datum()) {
        let k = g.k();
        for mask in 0u32..1 << k {
            let t: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
            if !g.is_semistable(&t) {
                continue;
            }
            for extra in 0..k {
                if mask >> extra & 1 == 0 {
                    let mut bigger = t.clone();
                    bigger.push(extra);
                    bigger.sort();
                    prop_assert!(g.is_semistable(&bigger));
                }
            }
        }
    }

    #[test]
    fn limit_supports_cover(g in random_datum(), d in prop::collection::vec(-3i64..=3, 2)) {
        let d = rat_vec(&d[..g.r()]);
        let neg: Vec<Rational> = d.iter().map(|x| -x).collect();
        let a = g.limit_support(&d).unwrap().indices;
        let b = g.limit_support(&neg).unwrap().indices;
        let union: BTreeSet<usize> = a.iter().chain(&b).copied().collect();
        prop_assert_eq!(union.len(), g.k());
        let inter: Vec<usize> = a.iter().filter(|j| b.contains(j)).copied().collect();
        let zero: Vec<usize> = (0..g.k()).filter(|&j| g.pairing(j, &d).is_zero()).collect();
        prop_assert_eq!(inter, zero);
    }

    #[test]
    fn unstable_primitive_sets_are_minimal(g in random_datum()) {
        let k = g.k();
        let complement_unstable = |s: &[usize]| {
            let c: Vec<usize> = (0..k).filter(|j| !s.contains(j)).collect();
            !g.is_semistable(&c)
        };
        let sets = g.unstable_primitive_sets();
        for s in &sets {
            prop_assert!(complement_unstable(s));
            for drop in s {
                let smaller: Vec<usize> = s.iter().filter(|j| *j != drop).copied().collect();
                prop_assert!(!complement_unstable(&smaller));
            }
        }
        // exhaustive: every defining set contains a returned one
        for mask in 0u32..1 << k {
            let s: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
            if complement_unstable(&s) {
                prop_assert!(sets.iter().any(|p| p.iter().all(|j| s.contains(j))));
            }
        }
    }
}

// ---------------------------------------------------------- ring / normal form

fn random_poly(nvars: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0u32..=4, nvars), -5i64..=5), 0..=4)
        .prop_map(move |terms| Poly::from_terms(nvars, terms.into_iter().map(|(e, c)| (e, rat(c)))))
}

fn ring_properties(g: &GitData, p: &Poly, q: &Poly) -> Result<(), TestCaseError> {
    let pres = build_presentation(g);
    let np = normal_form(p, &pres).unwrap();
    let nq = normal_form(q, &pres).unwrap();
    prop_assert_eq!(&normal_form(np.value(), &pres).unwrap(), &np);
    prop_assert_eq!(normal_form(&(p + q), &pres).unwrap(), &np + &nq);
    prop_assert_eq!(
        normal_form(&(p * q), &pres).unwrap(),
        normal_form(&(np.value() * nq.value()), &pres).unwrap()
    );
    prop_assert_eq!(normal_form(&(p * q), &pres).unwrap(), &np * &nq);
    // no term of a normal form is divisible by a leading monomial
    for (m, _) in np.value().terms() {
        for b in pres.groebner_basis() {
            prop_assert!(!b.leading().unwrap().0.divides(m));
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn normal_form_p2(p in random_poly(1), q in random_poly(1)) {
        ring_properties(&projective(3), &p, &q)?;
    }

    #[test]
    fn normal_form_p23(p in random_poly(1), q in random_poly(1)) {
        ring_properties(&p23(), &p, &q)?;
    }

    #[test]
    fn normal_form_p1xp1(p in random_poly(2), q in random_poly(2)) {
        ring_properties(&p1xp1(), &p, &q)?;
    }

    #[test]
    fn normal_form_f1(p in random_poly(2), q in random_poly(2)) {
        ring_properties(&f1(), &p, &q)?;
    }

    #[test]
    fn translation_is_a_homomorphism(p in random_poly(2), q in random_poly(2), phi in prop::collection::vec(-3i64..=3, 2)) {
        let phi = rat_vec(&phi);
        for weighted in [false, true] {
            let tp = translate(&p, &phi, weighted).unwrap();
            let tq = translate(&q, &phi, weighted).unwrap();
            prop_assert_eq!(translate(&(&p + &q), &phi, weighted).unwrap(), &tp + &tq);
            prop_assert_eq!(translate(&(&p * &q), &phi, weighted).unwrap(), &tp * &tq);
            let same = if weighted { p.extend_vars(1) } else { p.clone() };
            prop_assert_eq!(translate(&p, &rat_vec(&[0, 0]), weighted).unwrap(), same);
        }
    }
}

#[test]
fn sr_generators_vanish() {
    for (_, g) in named_fixtures() {
        let pres = build_presentation(&g);
        for s in pres.sr_generators() {
            assert!(kirwan_classical(s, &pres).unwrap().is_zero());
        }
    }
}

#[test]
fn projective_nilpotency() {
    for k in 2..=6 {
        let g = projective(k);
        let pres = build_presentation(&g);
        for m in 0..k as u32 {
            let p = Poly::term(Monomial::new(vec![m]), rat(1));
            assert!(!normal_form(&p, &pres).unwrap().is_zero());
        }
        let p = Poly::term(Monomial::new(vec![k as u32]), rat(1));
        assert!(normal_form(&p, &pres).unwrap().is_zero());
    }
}

// ------------------------------------------------------------- Novikov

fn random_series(g: &GitData, cutoff: i64) -> impl Strategy<Value = NovikovSeries<Rational>> {
    let g = g.clone();
    let r = g.r();
    prop::collection::vec((prop::collection::vec(0i64..=3, r), -4i64..=4), 0..=6).prop_map(
        move |terms| {
            let mut s = NovikovSeries::new(r, rat(cutoff));
            for (d, c) in terms {
                s.insert(NovikovDegree::from_ints(&g, &d).unwrap(), rat(c))
                    .unwrap();
            }
            s
        },
    )
}

fn novikov_properties(
    a: &NovikovSeries<Rational>,
    b: &NovikovSeries<Rational>,
    c: &NovikovSeries<Rational>,
    e: i64,
) -> Result<(), TestCaseError> {
    prop_assert_eq!(a.mul(b).unwrap(), b.mul(a).unwrap());
    prop_assert_eq!(
        a.mul(b).unwrap().mul(c).unwrap(),
        a.mul(&b.mul(c).unwrap()).unwrap()
    );
    let e = rat(e);
    let lhs = a.truncate(&e).mul(&b.truncate(&e)).unwrap();
    prop_assert_eq!(lhs, a.mul(b).unwrap().truncate(&e));
    for (d1, _) in a.terms() {
        for (d2, _) in b.terms() {
            prop_assert_eq!(d1.sum(d2).energy().clone(), d1.energy() + d2.energy());
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn novikov_p1(a in random_series(&projective(2), 4), b in random_series(&projective(2), 4), c in random_series(&projective(2), 4), e in 0i64..=4) {
        novikov_properties(&a, &b, &c, e)?;
    }

    #[test]
    fn novikov_p23(a in random_series(&p23(), 5), b in random_series(&p23(), 5), c in random_series(&p23(), 5), e in 0i64..=5) {
        novikov_properties(&a, &b, &c, e)?;
    }

    #[test]
    fn novikov_p1xp1(a in random_series(&p1xp1(), 5), b in random_series(&p1xp1(), 5), c in random_series(&p1xp1(), 5), e in 0i64..=5) {
        novikov_properties(&a, &b, &c, e)?;
    }
}

// ------------------------------------------------------------- inertia

#[test]
fn sectors_match_brute_force() {
    for (name, g) in named_fixtures() {
        let n = elementary_bound(&g);
        let expected = brute_force_sectors(&g, n);
        let got: BTreeSet<Vec<Rational>> = enumerate_sectors(&g)
            .unwrap()
            .into_iter()
            .map(|s| s.xi)
            .collect();
        assert_eq!(got, expected, "{name}");
    }
}

#[test]
fn age_involution_duality() {
    for (name, g) in named_fixtures() {
        let sectors = enumerate_sectors(&g).unwrap();
        let xis: BTreeSet<Vec<Rational>> = sectors.iter().map(|s| s.xi.clone()).collect();
        for s in &sectors {
            let inv = inverse(&s.xi);
            assert!(xis.contains(&inv), "{name}: not closed under inverse");
            if s.is_untwisted() {
                continue;
            }
            let moved = (0..g.k())
                .filter(|&j| !g.pairing(j, &s.xi).is_integer())
                .count();
            assert_eq!(&s.age + age(&g, &inv).unwrap(), rat(moved as i64), "{name}");
            assert!(s.xi.iter().all(|x| frac(x) == *x));
        }
    }
}

// ----------------------------------------------------------- I-function

fn box_for(g: &GitData, lo: i64, hi: i64) -> Vec<(i64, i64)> {
    vec![(lo, hi); g.r()]
}

/// Top `zeta` power of a degree factor: the inverse factors contribute
/// `zeta^{-a}` with `a = sum_j max(mu_j(d), 0)`, each numerator
/// `prod_{m = mu_j + 1}^{0} (D_j + m zeta)` contributes `D_j` times
/// `prod_{m = mu_j + 1}^{-1} m zeta`.
#[test]
fn leading_behavior() {
    for (name, g) in named_fixtures() {
        let pres = build_presentation(&g);
        let s = i_series(&pres, &rat(3), &box_for(&g, -3, 3), 1).unwrap();
        let mut checked = 0;
        for (d, c) in s.series.terms() {
            for (_, p) in c.terms() {
                assert_eq!(normal_form(p, &pres).unwrap().value(), p, "{name}");
            }
            let mut target = Poly::one(pres.nvars());
            let mut scale = rat(1);
            let mut top = expected_leading_power(&pres, d) as i32;
            for j in 0..g.k() {
                let m: i64 = g.pairing(j, d.vector()).to_integer().try_into().unwrap();
                if m < 0 {
                    target = &target * &divisor_form(&g, j);
                    for i in m + 1..0 {
                        scale *= rat(i);
                    }
                    top += (-m - 1) as i32;
                }
                for i in 1..=m.max(0) {
                    scale /= rat(i);
                }
            }
            let expected = normal_form(&target, &pres).unwrap().scale(&scale);
            assert_eq!(c.coeff(top), expected, "{name} {d}");
            if !expected.is_zero() {
                assert_eq!(c.max_exponent(), Some(top), "{name} {d}");
            }
            checked += 1;
        }
        assert!(checked > 0);
    }
}

#[test]
fn unstable_limits_vanish() {
    for (name, g) in named_fixtures() {
        let pres = build_presentation(&g);
        for (d, c) in i_series(&pres, &rat(3), &box_for(&g, -3, 3), 1)
            .unwrap()
            .series
            .terms()
        {
            assert!(
                g.limit_support(d.vector()).unwrap().semistable,
                "{name}: nonzero coefficient {c} at {d}"
            );
        }
    }
}

#[test]
fn duality_is_an_involution() {
    for (_, g) in named_fixtures() {
        let pres = build_presentation(&g);
        let s = i_series(&pres, &rat(3), &box_for(&g, 0, 3), 1).unwrap();
        assert_eq!(s.dual().dual(), s);
        for (d, c) in s.dual().series.terms() {
            let orig = s.coeff(d).unwrap();
            for (e, p) in c.terms() {
                let sign = if e % 2 == 0 { rat(1) } else { rat(-1) };
                assert_eq!(orig.coeff(e).value().scale(&sign), *p);
            }
        }
    }
}

// ------------------------------------------------------------------ QDE

#[test]
fn m_operators_commute() {
    for (name, g) in named_fixtures() {
        let pres = build_presentation(&g);
        let s = i_series(&pres, &rat(3), &box_for(&g, 0, 3), 1).unwrap();
        for i in 0..g.k() {
            for j in 0..g.k() {
                let a = apply_m(i, &apply_m(j, &s).unwrap()).unwrap();
                let b = apply_m(j, &apply_m(i, &s).unwrap()).unwrap();
                assert_eq!(a, b, "{name} M_{i} M_{j}");
                let a = apply_m_shifted(i, 2, &apply_m_shifted(j, 1, &s).unwrap()).unwrap();
                let b = apply_m_shifted(j, 1, &apply_m_shifted(i, 2, &s).unwrap()).unwrap();
                assert_eq!(a, b, "{name} shifted M_{i} M_{j}");
            }
        }
    }
}

fn positive_degree(g: &GitData) -> impl Strategy<Value = NovikovDegree> {
    let g = g.clone();
    prop::collection::vec(-4i64..=4, g.r()).prop_filter_map("nonpositive energy", move |d| {
        let d = NovikovDegree::from_ints(&g, &d).unwrap();
        d.energy().is_positive().then_some(d)
    })
}

fn symbol_matches(g: &GitData, d: &NovikovDegree) -> Result<(), TestCaseError> {
    let op = BoxOperator::new(g, d.clone()).unwrap();
    let gen = qsr_generator(g, d).unwrap();
    prop_assert_eq!(&symbol(g, &op), &gen);
    prop_assert_eq!(equivariant_qsr_generator(g, d).unwrap().restrict(g), gen);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn symbol_p1(d in positive_degree(&projective(2))) { symbol_matches(&projective(2), &d)?; }

    #[test]
    fn symbol_p2(d in positive_degree(&projective(3))) { symbol_matches(&projective(3), &d)?; }

    #[test]
    fn symbol_p23(d in positive_degree(&p23())) { symbol_matches(&p23(), &d)?; }

    #[test]
    fn symbol_p1xp1(d in positive_degree(&p1xp1())) { symbol_matches(&p1xp1(), &d)?; }

    #[test]
    fn symbol_p123(d in positive_degree(&p123())) { symbol_matches(&p123(), &d)?; }

    #[test]
    fn symbol_f1(d in positive_degree(&f1())) { symbol_matches(&f1(), &d)?; }
}

#[test]
fn degree_zero_symbol_is_zero() {
    for (_, g) in named_fixtures() {
        let z = NovikovDegree::zero(g.r());
        let op = BoxOperator::new(&g, z.clone()).unwrap();
        assert!(symbol(&g, &op).is_zero());
        assert!(qsr_generator(&g, &z).unwrap().is_zero());
        assert_eq!(
            degree_factor(&build_presentation(&g), &z)
                .unwrap()
                .min_exponent(),
            Some(0)
        );
    }
}
