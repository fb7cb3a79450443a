use mmcurve::couplings::{compute_ik, g_frame, parse_couplings, tree_oracle, MAX_TREE_EDGES};
use mmcurve::fat::{fat_fn_virasoro, fat_frame};
use mmcurve::onecut::{discriminant_check, solve_one_cut_even, solve_one_cut_h, solve_one_cut_system};
use mmcurve::sequences::{seq_eval, SeqFormula, ALL_FORMULAS};
use mmcurve::series::rational::{int, rat};
use mmcurve::suites::{checks, run_suite};
use mmcurve::thin::{thin_frame, thin_z_of_v, thin_z_of_v_composition};
use mmcurve::Error;

#[test]
fn coupling_literals() {
    let specs = parse_couplings("g3, g1=1/2,g4=sym").unwrap();
    assert_eq!(specs.iter().map(|s| s.index).collect::<Vec<_>>(), vec![1, 3, 4]);
    assert_eq!(specs[0].value, Some(rat(1, 2)));
    assert!(matches!(parse_couplings("g0"), Err(Error::Parse(_))));
    assert!(matches!(parse_couplings("g1,g1"), Err(Error::Parse(_))));
    assert!(matches!(parse_couplings("g2=1"), Err(Error::Domain(_))));
    assert!(matches!(parse_couplings("g2=x"), Err(Error::Parse(_))));
}

#[test]
fn thin_inversion_routes_agree() {
    let f = thin_frame(&[1, 2, 3], 3).unwrap();
    assert_eq!(thin_z_of_v(&f, 7, 3).unwrap(), thin_z_of_v_composition(&f, 7, 3).unwrap());
}

#[test]
fn one_cut_routes_agree_on_mixed_frame() {
    let f = fat_frame(&[2, 4], 3).unwrap();
    let h = solve_one_cut_h(&f, 3, 6).unwrap();
    let s = solve_one_cut_system(&f, 3, 6).unwrap();
    let e = solve_one_cut_even(&f, 3, 6).unwrap();
    assert_eq!(h.f, s.f);
    assert_eq!(h.f, e.f);
    assert_eq!(h.b, s.b);
    assert_eq!(h.c, e.c);
    assert_eq!(h.f, fat_fn_virasoro(&f, 6, 3).unwrap().f);
}

#[test]
fn numeric_couplings_commute_with_evaluation() {
    let f = fat_frame(&[1, 2], 4).unwrap();
    let st = fat_fn_virasoro(&f, 4, 4).unwrap();
    let cut = solve_one_cut_h(&f, 4, 4).unwrap();
    for n in 0..=4 {
        let a = st.f[n].evaluate("g2", &rat(1, 3)).unwrap();
        let b = cut.f[n].evaluate("g2", &rat(1, 3)).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn error_paths() {
    let f5 = fat_frame(&[5], 3).unwrap();
    let cut = solve_one_cut_h(&f5, 3, 3).unwrap();
    assert!(matches!(discriminant_check(&f5, &cut), Err(Error::Scope(_))));
    assert!(matches!(solve_one_cut_even(&fat_frame(&[1, 2], 2).unwrap(), 2, 2), Err(Error::Precondition(_))));
    let t = g_frame(&[1, 2], &[], 2).unwrap().to_frame(mmcurve::couplings::FrameTag::T);
    assert!(matches!(tree_oracle(0, MAX_TREE_EDGES + 1, &t), Err(Error::Resource(_))));
    assert!(matches!(seq_eval("catalan", -1, None), Err(Error::Domain(_))));
    assert!(matches!(seq_eval("motzkin", 3, None), Err(Error::Precondition(_))));
    assert!(matches!(seq_eval("nope", 3, None), Err(Error::Parse(_))));
    assert!(matches!(run_suite("nope", 1), Err(Error::Parse(_))));
}

#[test]
fn formulas_are_integral_and_named() {
    for f in ALL_FORMULAS {
        assert_eq!(SeqFormula::from_name(f.name()).unwrap(), f);
        for n in 0..12 {
            let k = f.needs_k().then_some(n / 2);
            let v = f.eval(n, k).unwrap();
            assert!(v.is_integer(), "{} at {n} gives {v}", f.name());
        }
    }
    assert_eq!(seq_eval("arches", 1, None).unwrap(), int(3));
    assert_eq!(seq_eval("four-regular", 2, None).unwrap(), int(9));
}

#[test]
fn tree_oracle_higher_k() {
    let t = g_frame(&[1, 2, 3, 4, 5], &[], 5).unwrap().to_frame(mmcurve::couplings::FrameTag::T);
    let sum = tree_oracle(3, 5, &t).unwrap();
    let want = compute_ik(&t, 3, 5).scale(&rat(1, 24)).with_trunc(&mmcurve::TruncationPolicy::degree(2));
    assert_eq!(sum.with_trunc(&mmcurve::TruncationPolicy::degree(2)), want);
}

#[test]
fn suites_partition_all() {
    let total = checks("all").unwrap().len();
    let parts: usize = ["paper-thin", "paper-fat", "paper-onecut", "identities"]
        .iter()
        .map(|s| checks(s).unwrap().len())
        .sum();
    assert_eq!(parts, total);
}
