use std::sync::Arc;

use mmcurve::couplings::{compute_i0, compute_i0_composition, g_frame, FrameTag};
use mmcurve::lagrange::{compose_back, invert_composition_formula, invert_fixed_point, j_from_phi, InversionProblem};
use mmcurve::sequences::{verify_series, MonomialTemplate, SeqFormula};
use mmcurve::series::json::{from_json, lseries_from_json, lseries_to_json, to_json};
use mmcurve::{LSeries, PSeries, Rational, Sign, TruncationPolicy, VarTable};
use num_traits::One;
use proptest::prelude::*;

fn table() -> Arc<VarTable> {
    VarTable::standard(&["g1", "g2", "z"]).unwrap()
}

fn series_from(tb: &Arc<VarTable>, terms: &[(i32, i32, i64, i64)], z_lo: i32) -> PSeries {
    let tr = TruncationPolicy::degree(5);
    terms.iter().fold(PSeries::zero(tb, &tr), |acc, &(a, b, n, d)| {
        let m = PSeries::monomial(tb, &tr, &[("g1", a), ("g2", b), ("z", z_lo + a - b)], Rational::new(n.into(), d.into()))
            .unwrap();
        &acc + &m
    })
}

fn terms() -> impl Strategy<Value = Vec<(i32, i32, i64, i64)>> {
    prop::collection::vec((0..4i32, 0..4i32, -6..6i64, 1..5i64), 0..6)
}

fn series() -> impl Strategy<Value = PSeries> {
    terms().prop_map(|t| series_from(&table(), &t, 0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(a in series(), b in series(), c in series()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &a.one_like(), a.clone());
    }

    #[test]
    fn invert_round_trip(t in terms(), c in 1..7i64) {
        let tb = VarTable::standard(&["g1", "g2"]).unwrap();
        let tr = TruncationPolicy::degree(5);
        let mut a = PSeries::constant(&tb, &tr, Rational::from_integer(c.into()));
        for (x, y, n, d) in t {
            if x + y > 0 {
                a = &a + &PSeries::monomial(&tb, &tr, &[("g1", x), ("g2", y)], Rational::new(n.into(), d.into())).unwrap();
            }
        }
        let inv = a.invert().unwrap();
        prop_assert_eq!(&a * &inv, a.one_like());
    }

    #[test]
    fn sqrt_round_trip(t in terms(), c in 1..5i64) {
        let tb = VarTable::standard(&["g1", "g2"]).unwrap();
        let tr = TruncationPolicy::degree(5);
        let mut a = PSeries::constant(&tb, &tr, Rational::from_integer((c * c).into()));
        for (x, y, n, d) in t {
            if x + y > 0 {
                a = &a + &PSeries::monomial(&tb, &tr, &[("g1", x), ("g2", y)], Rational::new(n.into(), d.into())).unwrap();
            }
        }
        let r = a.sqrt(Sign::Plus).unwrap();
        prop_assert_eq!(&r * &r, a.clone());
        prop_assert_eq!(r.constant_term(), Rational::from_integer(c.into()));
        prop_assert_eq!(a.sqrt(Sign::Minus).unwrap(), -&r);
    }

    #[test]
    fn laurent_split_recombines(t in terms(), lo in -4..1i32) {
        let body = series_from(&table(), &t, lo);
        let l = LSeries::new(body, "z", Some(lo - 3)).unwrap();
        let (plus, minus) = l.laurent_split();
        prop_assert!(plus.body().terms().all(|(m, _)| m.get(2) >= 0));
        prop_assert!(minus.body().terms().all(|(m, _)| m.get(2) < 0));
        prop_assert_eq!(&plus + &minus, l);
    }

    #[test]
    fn json_round_trip(a in series(), lo in -4..0i32, t in terms()) {
        let text = to_json(&a);
        prop_assert_eq!(from_json(&text).unwrap(), a.clone());
        prop_assert_eq!(to_json(&from_json(&text).unwrap()), text);
        let l = LSeries::new(series_from(&table(), &t, lo), "z", Some(lo - 2)).unwrap();
        prop_assert_eq!(lseries_from_json(&lseries_to_json(&l)).unwrap(), l);
    }

    #[test]
    fn frame_round_trip(idx in prop::collection::btree_set(1..7usize, 1..4)) {
        let idx: Vec<usize> = idx.into_iter().collect();
        let f = g_frame(&idx, &[], 4).unwrap();
        for tag in [FrameTag::T, FrameTag::Cap] {
            let back = f.to_frame(tag).to_frame(FrameTag::G);
            for &n in &idx {
                prop_assert_eq!(back.g(n), f.g(n));
                prop_assert_eq!(f.to_frame(tag).g(n), f.g(n));
            }
        }
        prop_assert_eq!(compute_i0(&f, 4), compute_i0_composition(&f, 4));
    }

    #[test]
    fn lagrange_routes_agree(c in prop::collection::vec((-5..6i64, 1..4i64), 4), order in 1..8u32) {
        let tb = VarTable::standard(&["w", "v"]).unwrap();
        let tr = TruncationPolicy::unbounded();
        let mut phi = PSeries::constant(&tb, &tr, Rational::one());
        for (p, (n, d)) in c.into_iter().enumerate() {
            phi = &phi + &PSeries::monomial(&tb, &tr, &[("w", p as i32 + 1)], Rational::new(n.into(), d.into())).unwrap();
        }
        let p = InversionProblem::new(phi, "w", "v", order);
        let w = invert_fixed_point(&p).unwrap();
        prop_assert_eq!(&w, &invert_composition_formula(&j_from_phi(&p).unwrap(), "v", order).unwrap());
        let back = compose_back(&p, &w).unwrap();
        prop_assert_eq!(back.clone(), back.var_like("v").unwrap());
    }

    #[test]
    fn perturbed_series_fails_at_index(k in 0..6u64, bump in 1..5i64) {
        let tb = VarTable::standard(&["x"]).unwrap();
        let tr = TruncationPolicy::unbounded();
        let tpl = MonomialTemplate::new(&[], &[("x", 1)]);
        let mut s = PSeries::zero(&tb, &tr);
        for n in 0..6 {
            let mut c = SeqFormula::Catalan.eval(n, None).unwrap();
            if n as u64 == k {
                c += Rational::from_integer(bump.into());
            }
            s = &s + &PSeries::monomial(&tb, &tr, &[("x", n as i32)], c).unwrap();
        }
        let r = verify_series(&s, &tpl, |m| SeqFormula::Catalan.eval(m as i64, None), 0..=5).unwrap();
        prop_assert!(!r.ok());
        prop_assert_eq!(r.mismatches.len(), 1);
        prop_assert_eq!(r.mismatches[0].0, k);
    }
}
