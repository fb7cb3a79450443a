//! Compiled-in golden comparisons, grouped into named suites.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use num_traits::One;

use crate::couplings::{compute_i0, g_frame, ik_from_i0, tree_oracle, CouplingFrame, FrameTag};
use crate::error::{Error, Result};
use crate::fat::{correlators_from_resolvent, fat_fn_virasoro, fat_frame, fat_resolvent_closed, fat_y2_minus_check};
use crate::lagrange::{compose_back, invert_composition_formula, invert_fixed_point, j_from_phi, InversionProblem};
use crate::onecut::{discriminant_check, g4_factor_check, solve_one_cut_even, solve_one_cut_h, solve_one_cut_system};
use crate::sequences::{all_identities, catalan, MonomialTemplate, SeqFormula};
use crate::series::rational::{big, factorial, int, pow2, rat};
use crate::series::{PSeries, Rational, TruncationPolicy, VarTable};
use crate::thin::{
    g3_line_closed, g4_line_closed, thin_deformation, thin_frame, thin_integrality_check, thin_y2_minus_check,
    thin_z_of_v,
};

pub const SUITES: [&str; 5] = ["paper-thin", "paper-fat", "paper-onecut", "identities", "all"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub ok: bool,
    pub detail: String,
}

impl Outcome {
    fn pass(detail: impl Into<String>) -> Self {
        Outcome { ok: true, detail: detail.into() }
    }

    fn fail(detail: impl Into<String>) -> Self {
        Outcome { ok: false, detail: detail.into() }
    }
}

#[derive(Clone, Copy)]
pub struct GoldenCheck {
    pub suite: &'static str,
    pub name: &'static str,
    pub run: fn() -> Result<Outcome>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: &'static str,
    pub outcome: Outcome,
}

const CHECKS: &[GoldenCheck] = &[
    GoldenCheck { suite: "paper-thin", name: "thin-g3-z-expansion", run: thin_g3_z },
    GoldenCheck { suite: "paper-thin", name: "thin-g4-closed-sums", run: thin_g4 },
    GoldenCheck { suite: "paper-thin", name: "thin-integrality", run: thin_integrality },
    GoldenCheck { suite: "paper-thin", name: "i0-closed-forms", run: i0_lines },
    GoldenCheck { suite: "paper-thin", name: "tree-oracle", run: trees },
    GoldenCheck { suite: "paper-thin", name: "thin-y2-minus", run: thin_y2 },
    GoldenCheck { suite: "paper-thin", name: "lagrange-duality", run: lagrange_duality },
    GoldenCheck { suite: "paper-fat", name: "fat-catalan", run: fat_catalan },
    GoldenCheck { suite: "paper-fat", name: "fat-motzkin", run: fat_motzkin },
    GoldenCheck { suite: "paper-fat", name: "fat-trivalent", run: fat_trivalent },
    GoldenCheck { suite: "paper-fat", name: "fat-four-regular", run: fat_four_regular },
    GoldenCheck { suite: "paper-fat", name: "fat-closed-resolvent", run: fat_closed },
    GoldenCheck { suite: "paper-onecut", name: "onecut-master", run: onecut_master },
    GoldenCheck { suite: "paper-onecut", name: "onecut-g3-endpoints", run: onecut_g3 },
    GoldenCheck { suite: "paper-onecut", name: "onecut-g5-system", run: onecut_g5 },
    GoldenCheck { suite: "paper-onecut", name: "onecut-g6-closed", run: onecut_g6 },
    GoldenCheck { suite: "paper-onecut", name: "discriminants", run: discriminants },
    GoldenCheck { suite: "identities", name: "identities", run: identities },
];

pub fn checks(suite: &str) -> Result<Vec<GoldenCheck>> {
    if !SUITES.contains(&suite) {
        return Err(Error::Parse(format!("unknown suite `{suite}`; expected one of {}", SUITES.join(", "))));
    }
    Ok(CHECKS.iter().copied().filter(|c| suite == "all" || c.suite == suite).collect())
}

/// Runs a suite on up to `threads` workers; results keep the suite's order.
pub fn run_suite(suite: &str, threads: usize) -> Result<Vec<CheckResult>> {
    let list = checks(suite)?;
    let slots: Mutex<Vec<Option<CheckResult>>> = Mutex::new(vec![None; list.len()]);
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..threads.clamp(1, list.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(c) = list.get(i) else { break };
                let outcome = (c.run)().unwrap_or_else(|e| Outcome::fail(format!("error: {e}")));
                slots.lock().expect("no poisoned workers")[i] =
                    Some(CheckResult { suite: c.suite, name: c.name, outcome });
            });
        }
    });
    Ok(slots.into_inner().expect("no poisoned workers").into_iter().flatten().collect())
}

type Terms<'a> = Vec<(i64, Vec<(&'a str, i32)>)>;

/// Builds `Σ c·monomial` on the table of `like`.
fn build(like: &PSeries, terms: &Terms) -> Result<PSeries> {
    let mut acc = like.zero_like();
    for (c, pairs) in terms {
        acc = &acc + &like.monomial_like(pairs, int(*c))?;
    }
    Ok(acc)
}

/// The series must hold exactly the listed terms.
fn exact(label: &str, series: &PSeries, terms: &Terms) -> Result<Option<String>> {
    let want = build(series, terms)?;
    Ok((*series != want).then(|| format!("{label}: got {series}, expected {want}")))
}

/// Every listed coefficient must match; other terms are not inspected.
fn listed(label: &str, series: &PSeries, terms: &Terms) -> Result<Option<String>> {
    for (c, pairs) in terms {
        let got = series.coeff_of(pairs)?;
        if got != int(*c) {
            return Ok(Some(format!("{label}: coefficient of {pairs:?} is {got}, expected {c}")));
        }
    }
    Ok(None)
}

fn first_failure(fails: impl IntoIterator<Item = Option<String>>, pass: &str) -> Outcome {
    match fails.into_iter().flatten().next() {
        Some(f) => Outcome::fail(f),
        None => Outcome::pass(pass),
    }
}

/// `(coefficient, exponent, exponent)` triples.
type Triples = &'static [(i64, i32, i32)];

// (v power, [(coefficient, power of 2N, power of g3)])
const THIN_G3: &[(i32, Triples)] = &[
    (1, &[(1, 1, 0)]),
    (2, &[]),
    (3, &[(-1, 2, 0)]),
    (4, &[(1, 3, 1)]),
    (5, &[(2, 3, 0)]),
    (6, &[(-5, 4, 1)]),
    (7, &[(3, 5, 2), (-5, 4, 0)]),
    (8, &[(21, 5, 1)]),
    (9, &[(-28, 6, 2), (14, 5, 0)]),
    (10, &[(12, 7, 3), (-84, 6, 1)]),
    (11, &[(180, 7, 2), (-42, 6, 0)]),
    (12, &[(-165, 8, 3), (330, 7, 1)]),
    (13, &[(55, 9, 4), (-990, 8, 2), (132, 7, 0)]),
    (14, &[(1430, 9, 3), (-1287, 8, 1)]),
];

/// Reference `z(v)` on the `g_3` line through `v^14`, in powers of `2N`.
pub fn thin_g3_reference(like: &PSeries) -> Result<Vec<(i32, PSeries)>> {
    THIN_G3
        .iter()
        .map(|(v, terms)| {
            let mut acc = like.zero_like();
            for &(c, m, g) in terms.iter() {
                acc = &acc + &like.monomial_like(&[("N", m), ("g3", g)], int(c) * pow2(m as i64))?;
            }
            Ok((*v, acc))
        })
        .collect()
}

fn thin_g3_z() -> Result<Outcome> {
    let f = thin_frame(&[3], 5)?;
    let z = thin_z_of_v(&f, 14, 5)?;
    let mut fails = Vec::new();
    for (v, want) in thin_g3_reference(&z)? {
        let got = z.coefficient_in("v", v)?;
        fails.push((got != want).then(|| format!("v^{v}: got {got}, expected {want}")));
    }
    for m in 0..14 {
        let got = z.coefficient_in("v", m as i32 + 1)?;
        let want = g3_line_closed(m, z.table(), z.trunc())?;
        fails.push((got != want).then(|| format!("closed sum at v^{}", m + 1)));
    }
    Ok(first_failure(fails, "v^1..v^14 match the reference table and the closed sum"))
}

fn thin_g4() -> Result<Outcome> {
    let f = thin_frame(&[4], 4)?;
    let z = thin_z_of_v(&f, 16, 4)?;
    let mut fails = Vec::new();
    for m in 0..=7 {
        let even = z.coefficient_in("v", 2 * m as i32 + 2)?;
        fails.push((!even.is_zero()).then(|| format!("a_{} = {even} is not zero", 2 * m + 2)));
        let odd = z.coefficient_in("v", 2 * m as i32 + 1)?;
        let want = g4_line_closed(m, z.table(), z.trunc())?;
        fails.push((odd != want).then(|| format!("a_{}: got {odd}, expected {want}", 2 * m + 1)));
    }
    Ok(first_failure(fails, "a_2m = 0 and a_2m+1 match the closed sum for m <= 7"))
}

fn thin_integrality() -> Result<Outcome> {
    let r = thin_integrality_check(5, 6, 8)?;
    Ok(if r.ok {
        Outcome::pass(format!("{} coefficients integral in (2N)", r.checked))
    } else {
        Outcome::fail(r.first_failure.unwrap_or_default())
    })
}

fn i0_lines() -> Result<Outcome> {
    let d = 8;
    let mut fails = Vec::new();

    let f = g_frame(&[1, 2], &[], d)?;
    let i0 = compute_i0(&f, d);
    let want = (0..d as i32).fold(i0.zero_like(), |acc, k| {
        &acc + &i0.monomial_like(&[("g1", 1), ("g2", k)], int(1)).expect("table has g1, g2")
    });
    fails.push((i0 != want).then(|| "(g1,g2): I_0 != g1/(1-g2)".to_string()));

    let f = g_frame(&[1, 3], &[], d)?;
    let i0 = compute_i0(&f, d);
    let want = (0..d as i32).fold(i0.zero_like(), |acc, n| {
        let c = big(catalan(n as u64));
        &acc + &i0.monomial_like(&[("g1", n + 1), ("g3", n)], c).expect("table has g1, g3")
    });
    fails.push((i0 != want).then(|| "(g1,g3): I_0 is not the Catalan series".to_string()));

    let f = g_frame(&[1, 4], &[], d)?;
    let i0 = compute_i0(&f, d);
    let want = (0..d as i32).fold(i0.zero_like(), |acc, n| {
        let c = SeqFormula::Ternary.eval(n as i64, None).expect("n >= 0");
        &acc + &i0.monomial_like(&[("g1", 2 * n + 1), ("g4", n)], c).expect("table has g1, g4")
    });
    fails.push((i0 != want).then(|| "(g1,g4): I_0 != g1 A(g1^2 g4)".to_string()));
    Ok(first_failure(fails, "I_0 closed forms on (g1,g2), (g1,g3), (g1,g4)"))
}

fn trees() -> Result<Outcome> {
    let edges = 6;
    let indices: Vec<usize> = (0..=edges + 2).collect();
    let names: Vec<String> = indices.iter().map(|i| format!("t{i}")).collect();
    let table = VarTable::standard(&names.iter().map(String::as_str).collect::<Vec<_>>())?;
    let f = CouplingFrame::symbolic(FrameTag::T, &table, &TruncationPolicy::degree(edges as u32), &indices)?;
    let i0 = compute_i0(&f, edges as u32);
    let mut fails = Vec::new();
    for k in 0..=2 {
        let cut = TruncationPolicy::degree((edges - k) as u32);
        let ik = if k == 0 { i0.clone() } else { ik_from_i0(&f, &i0, k) };
        let want = ik.scale(&(Rational::one() / big(factorial(k as u64 + 1)))).with_trunc(&cut);
        let got = tree_oracle(k, edges, &f)?.with_trunc(&cut);
        fails.push((got != want).then(|| format!("tree sum for I_{k} differs")));
    }
    Ok(first_failure(fails, "tree sums agree with I_0, I_1, I_2 through 6 edges"))
}

fn thin_y2() -> Result<Outcome> {
    let f = thin_frame(&[1, 2, 3, 4], 4)?;
    let d = thin_deformation(&f, 10, 4)?;
    let r = thin_y2_minus_check(&d)?;
    Ok(if r.ok {
        Outcome::pass(format!("{} negative powers checked", r.checked))
    } else {
        Outcome::fail(r.first_failure.unwrap_or_default())
    })
}

fn lagrange_duality() -> Result<Outcome> {
    let table = VarTable::standard(&["w", "v", "a", "b"])?;
    let tr = TruncationPolicy::unbounded();
    let w = PSeries::var(&table, &tr, "w")?;
    let a = PSeries::var(&table, &tr, "a")?;
    let b = PSeries::var(&table, &tr, "b")?;
    let c = |x: Rational| PSeries::constant(&table, &tr, x);
    let phis = [
        &(&c(int(1)) + &w.scale(&int(2))) + &(&w * &w).scale(&int(-3)),
        &(&c(rat(1, 2)) + &(&a * &w)) + &(&(&w * &w) * &w).scale(&rat(2, 3)),
        &(&(&c(int(2)) + &(&b * &w)) + &(&(&a * &w) * &w)) - &(&(&w * &w) * &w),
    ];
    let mut fails = Vec::new();
    for (i, phi) in phis.into_iter().enumerate() {
        let p = InversionProblem::new(phi, "w", "v", 8);
        let x = invert_fixed_point(&p)?;
        let y = invert_composition_formula(&j_from_phi(&p)?, "v", 8)?;
        fails.push((x != y).then(|| format!("problem {i}: the two inversions differ")));
        let back = compose_back(&p, &x)?;
        fails.push((back != back.var_like("v")?).then(|| format!("problem {i}: compose-back fails")));
    }
    Ok(first_failure(fails, "fixed point == composition sum, compose-back holds"))
}

fn fat_catalan() -> Result<Outcome> {
    let f = fat_frame(&[1], 0)?;
    let st = fat_fn_virasoro(&f, 21, 0)?;
    let mut fails = Vec::new();
    for m in 0..=10 {
        let want = st.f[0].monomial_like(&[("t", m as i32 + 1)], big(catalan(m)))?;
        fails.push((st.f[2 * m as usize] != want).then(|| format!("f_{} != C_{m} t^{}", 2 * m, m + 1)));
        fails.push((!st.f[2 * m as usize + 1].is_zero()).then(|| format!("f_{} != 0", 2 * m + 1)));
    }
    let r = fat_y2_minus_check(&st, 21)?;
    fails.push(r.first_failure);
    Ok(first_failure(fails, "f_2m = C_m t^{m+1}, m <= 10; (Y^2)_- = 0"))
}

const MOTZKIN_TABLE: &[Triples] = &[
    &[(1, 1, 0)],
    &[(1, 1, 1)],
    &[(1, 1, 2), (1, 2, 0)],
    &[(1, 1, 3), (3, 2, 1)],
    &[(1, 1, 4), (6, 2, 2), (2, 3, 0)],
    &[(1, 1, 5), (10, 2, 3), (10, 3, 1)],
    &[(1, 1, 6), (15, 2, 4), (30, 3, 2), (5, 4, 0)],
    &[(1, 1, 7), (21, 2, 5), (70, 3, 3), (35, 4, 1)],
];

fn fat_motzkin() -> Result<Outcome> {
    let f = fat_frame(&[1], 7)?;
    let st = fat_fn_virasoro(&f, 7, 7)?;
    let mut fails = Vec::new();
    for (n, row) in MOTZKIN_TABLE.iter().enumerate() {
        let terms: Terms = row.iter().map(|&(c, t, g)| (c, vec![("t", t), ("g1", g)])).collect();
        fails.push(exact(&format!("f_{n}"), &st.f[n], &terms)?);
        let mut formula = st.f[n].zero_like();
        for k in 0..=n / 2 {
            let c = SeqFormula::Motzkin.eval(n as i64, Some(k as i64))?;
            formula = &formula + &st.f[n].monomial_like(&[("t", k as i32 + 1), ("g1", (n - 2 * k) as i32)], c)?;
        }
        fails.push((st.f[n] != formula).then(|| format!("f_{n} differs from the Motzkin sum")));
    }
    Ok(first_failure(fails, "f_0..f_7 match the table and the Motzkin sum"))
}

fn fat_trivalent() -> Result<Outcome> {
    let f = fat_frame(&[3], 13)?;
    let st = fat_fn_virasoro(&f, 1, 13)?;
    let tpl = MonomialTemplate::new(&[("g3", 1), ("t", 2)], &[("g3", 2), ("t", 1)]);
    let r = crate::sequences::verify_series(&st.f[1], &tpl, |m| SeqFormula::Trivalent.eval(m as i64, None), 0..=6)?;
    let head: Terms = [(1, 1, 2), (4, 3, 3), (32, 5, 4), (336, 7, 5)]
        .iter()
        .map(|&(c, g, t)| (c, vec![("g3", g), ("t", t)]))
        .collect();
    let mut fails = vec![listed("f_1", &st.f[1], &head)?];
    if !r.ok() {
        fails.push(Some(format!("f_1 vs trivalent formula: {:?}", r.mismatches.first())));
    }
    Ok(first_failure(fails, "g3-line f_1 matches 2^{2m+1}(3m)!!/((m+2)!m!!), m <= 6"))
}

const FOUR_REGULAR_LISTS: &[(usize, i32, &[i64])] = &[
    (4, 3, &[2, 9, 54, 378, 2916, 24057]),
    (6, 4, &[5, 36, 270, 2160, 18225, 160380]),
    (8, 5, &[14, 140, 1260, 11340, 103950]),
    (10, 6, &[42, 540, 5670, 56700, 561330]),
];

fn fat_four_regular() -> Result<Outcome> {
    let f = fat_frame(&[4], 6)?;
    let st = fat_fn_virasoro(&f, 10, 6)?;
    let mut fails = Vec::new();
    let tpl = MonomialTemplate::new(&[("t", 2)], &[("g4", 1), ("t", 1)]);
    let r = crate::sequences::verify_series(&st.f[2], &tpl, |n| SeqFormula::FourRegular.eval(n as i64, None), 0..=6)?;
    if !r.ok() {
        fails.push(Some(format!("f_2 vs four-regular formula: {:?}", r.mismatches.first())));
    }
    for odd in [1, 3, 5, 7, 9] {
        fails.push((!st.f[odd].is_zero()).then(|| format!("f_{odd} is not zero")));
    }
    for &(n, t0, list) in FOUR_REGULAR_LISTS {
        for (k, &c) in list.iter().enumerate() {
            let got = st.f[n].coeff_of(&[("t", t0 + k as i32), ("g4", k as i32)])?;
            fails.push((got != int(c)).then(|| format!("f_{n}: g4^{k} coefficient {got}, expected {c}")));
        }
    }
    Ok(first_failure(fails, "f_2 formula, odd f vanish, f_4..f_10 lists"))
}

fn fat_closed() -> Result<Outcome> {
    let f = fat_frame(&[1, 2, 3, 4], 4)?;
    let st = fat_fn_virasoro(&f, 10, 4)?;
    let omega = fat_resolvent_closed(&st.frame, &st.f[..3], 10)?;
    let closed = correlators_from_resolvent(&omega, 10)?;
    Ok(if closed == st.f {
        Outcome::pass("closed resolvent tail equals the recursion through f_10")
    } else {
        Outcome::fail("closed resolvent tail differs from the recursion")
    })
}

fn onecut_master() -> Result<Outcome> {
    let mut fails = Vec::new();
    let mut cases: Vec<(Vec<usize>, u32)> = vec![(vec![1, 2, 3], 4)];
    cases.extend((1..=6).map(|k| (vec![k], 8)));
    for (idx, d) in cases {
        let f = fat_frame(&idx, d)?;
        let st = fat_fn_virasoro(&f, 8, d)?;
        let cut = solve_one_cut_h(&f, d, 8)?;
        fails.push((cut.f != st.f).then(|| format!("couplings {idx:?}: one-cut f_n differ from the recursion")));
    }
    Ok(first_failure(fails, "one-cut resolvent equals the recursion for (g1,g2,g3) and g1..g6 lines"))
}

fn onecut_g3() -> Result<Outcome> {
    let f = fat_frame(&[3], 9)?;
    let cut = solve_one_cut_h(&f, 9, 2)?;
    let line = |list: &[(i64, i32, i32)]| -> Terms {
        list.iter().map(|&(c, g, t)| (c, vec![("g3", g), ("t", t)])).collect()
    };
    let b = line(&[(4, 1, 1), (24, 3, 2), (256, 5, 3), (3360, 7, 4), (49152, 9, 5)]);
    let c = line(&[(-4, 0, 1), (-12, 2, 2), (-112, 4, 3), (-1392, 6, 4), (-19776, 8, 5)]);
    Ok(first_failure([exact("b", &cut.b, &b)?, exact("c", &cut.c, &c)?], "b and c through g3^9"))
}

fn onecut_g5() -> Result<Outcome> {
    let f = fat_frame(&[5], 7)?;
    let cut = solve_one_cut_system(&f, 7, 3)?;
    let g5 = |g: i32, t: i32| vec![("g5", g), ("t", t)];
    let lists: [(&str, &PSeries, Terms); 4] = [
        ("b", &cut.b, vec![(12, g5(1, 2)), (2592, g5(3, 5)), (1143072, g5(5, 8)), (638254080, g5(7, 11))]),
        ("c", &cut.c, vec![(-4, g5(0, 1)), (-252, g5(2, 4)), (-91584, g5(4, 7)), (-47262528, g5(6, 10))]),
        ("f_1", &cut.f[1], vec![(2, g5(1, 3)), (216, g5(3, 6)), (63504, g5(5, 9)), (26593920, g5(7, 12))]),
        ("f_2", &cut.f[2], vec![(1, g5(0, 2)), (36, g5(2, 5)), (8640, g5(4, 8)), (3312576, g5(6, 11))]),
    ];
    let f3 = vec![(9, g5(1, 4)), (1512, g5(3, 7)), (509328, g5(5, 10))];
    let mut fails = Vec::new();
    for (label, s, list) in &lists {
        fails.push(exact(label, s, list)?);
    }
    fails.push(listed("f_3", &cut.f[3], &f3)?);
    Ok(first_failure(fails, "b, c, f_1, f_2, f_3 on the g5 line"))
}

/// `a² = Σ C(3n,n)/(2n+1) (5g_6/8)^n (4t)^{2n+1}` on the table of `like`.
pub fn g6_a_squared(like: &PSeries, nmax: u32) -> Result<PSeries> {
    let mut acc = like.zero_like();
    for n in 0..=nmax {
        let c = SeqFormula::Ternary.eval(n as i64, None)?
            * crate::series::rational::rpow(&rat(5, 8), n)
            * crate::series::rational::rpow(&int(4), 2 * n + 1);
        acc = &acc + &like.monomial_like(&[("g6", n as i32), ("t", 2 * n as i32 + 1)], c)?;
    }
    Ok(acc)
}

fn onecut_g6() -> Result<Outcome> {
    let d = 5;
    let f = fat_frame(&[6], d)?;
    let cut = solve_one_cut_even(&f, d, 4)?;
    let t = cut.f[0].clone();
    // one degree of headroom for the division by g6
    let wide = cut.f[0].with_trunc(&TruncationPolicy::degree(d + 1));
    let a2 = g6_a_squared(&wide, d + 1)?;
    let f2 = (&(&a2 * &t).scale(&rat(3, 8)) - &(&a2 * &a2).scale(&rat(1, 32))).with_trunc(cut.f[2].trunc());
    let g6div = (&a2 - &wide.var_like("t")?.scale(&int(4))).div_var("g6", 1)?;
    let f4 = &(&(&a2 * &a2) * &t).scale(&rat(9, 40)) - &g6div.scale(&rat(1, 25));
    let f4 = f4.with_trunc(cut.f[4].trunc());
    let mut fails = vec![
        (cut.f[2] != f2).then(|| format!("f_2: got {}, closed form {f2}", cut.f[2])),
        (cut.f[4] != f4).then(|| format!("f_4: got {}, closed form {f4}", cut.f[4])),
    ];
    for n in 0..=d {
        let c = SeqFormula::BridgelessCubic.eval(n as i64, None)? * crate::series::rational::rpow(&int(5), n);
        let got = cut.f[2].coeff_of(&[("g6", n as i32), ("t", 2 * n as i32 + 2)])?;
        fails.push((got != c).then(|| format!("f_2 g6^{n}: {got} vs {c}")));
    }
    let f4_list = [2, 24, 600, 20000, 780000, 33600000];
    for (n, c) in f4_list.iter().enumerate() {
        let got = cut.f[4].coeff_of(&[("g6", n as i32), ("t", 2 * n as i32 + 3)])?;
        fails.push((got != int(*c)).then(|| format!("f_4 g6^{n}: {got} vs {c}")));
    }
    Ok(first_failure(fails, "f_2 and f_4 closed forms on the g6 line, n <= 5"))
}

fn discriminants() -> Result<Outcome> {
    let f3 = fat_frame(&[3], 12)?;
    let cut3 = solve_one_cut_h(&f3, 12, 2)?;
    let r3 = discriminant_check(&f3, &cut3)?;
    let f4 = fat_frame(&[4], 8)?;
    let cut4 = solve_one_cut_even(&f4, 8, 2)?;
    let r4 = discriminant_check(&f4, &cut4)?;
    let g4 = g4_factor_check(&f4, &cut4.f[2])?;
    Ok(first_failure(
        [
            (!r3.check.ok || r3.vacuous).then(|| format!("g3 quartic: {:?}", r3.check.first_failure)),
            (!r4.check.ok || r4.vacuous).then(|| format!("g4 cubic in z^2: {:?}", r4.check.first_failure)),
            g4.first_failure,
        ],
        "g3 quartic discriminant to degree 12, g4 factor to degree 8",
    ))
}

fn identities() -> Result<Outcome> {
    let reports = all_identities(10)?;
    let fails = reports.iter().map(|r| (!r.ok).then(|| format!("{} fails at x^{:?}", r.name, r.first_failure)));
    let notes: Vec<String> = reports
        .iter()
        .map(|r| match r.note {
            Some(n) => format!("{} ({n})", r.name),
            None => r.name.to_string(),
        })
        .collect();
    Ok(first_failure(fails.collect::<Vec<_>>(), &format!("to x^10: {}", notes.join(", "))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert!(matches!(checks("nope"), Err(Error::Parse(_))));
        assert_eq!(checks("all").unwrap().len(), CHECKS.len());
    }

    #[test]
    fn identities_suite_passes() {
        let r = run_suite("identities", 2).unwrap();
        assert!(r.iter().all(|c| c.outcome.ok), "{r:?}");
        assert!(r[0].outcome.detail.contains("no independent proof"));
    }

    #[test]
    fn all_suites_pass() {
        let r = run_suite("all", 4).unwrap();
        assert_eq!(r.len(), CHECKS.len());
        for c in &r {
            assert!(c.outcome.ok, "{} {}: {}", c.suite, c.name, c.outcome.detail);
        }
    }
}
