//! One-cut form `S'² - 4P = Q²(z² - bz + c)` of the fat resolvent.
//!
//! Endpoints are written `a_± = ±2s + 2b_±` with `s² = t`, so `b = a_+ + a_-` and
//! `c = a_+ a_-`. Three solvers are provided: the large-`z` expansion of
//! `H = -S'/√((z-a_+)(z-a_-))` in `s`, the even-potential shortcut, and a fixed point
//! in `(b, c)` whose `Q` and `f_1, …, f_{d-2}` come from matching coefficients of `z`.

use std::sync::Arc;

use num_traits::One;

use crate::couplings::{action_derivative, CouplingFrame};
use crate::error::{Error, Result};
use crate::fat::p_polynomial;
use crate::series::rational::{big, binomial, int, rat};
use crate::series::{LSeries, PSeries, Rational, Sign, TruncationPolicy, Var, VarTable};
use crate::thin::CheckReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutMethod {
    H,
    System,
    Even,
}

impl CutMethod {
    pub fn name(self) -> &'static str {
        match self {
            CutMethod::H => "h",
            CutMethod::System => "system",
            CutMethod::Even => "even",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CutData {
    pub method: CutMethod,
    /// `a_+ + a_-` in the frame's table.
    pub b: PSeries,
    /// `a_+ a_-` in the frame's table.
    pub c: PSeries,
    /// `b_±` in the table with `s` in place of `t`.
    pub b_plus: PSeries,
    pub b_minus: PSeries,
    /// `Q(z) = Σ q[i] z^i`.
    pub q: Vec<PSeries>,
    /// `f_0 = t, f_1, …` read off the re-expanded resolvent.
    pub f: Vec<PSeries>,
    pub degree: u32,
}

impl CutData {
    /// `Q(z)` as a polynomial series.
    pub fn q_poly(&self) -> Result<PSeries> {
        z_poly(&self.q)
    }
}

fn z_poly(coeffs: &[PSeries]) -> Result<PSeries> {
    let mut acc = coeffs[0].zero_like();
    for (i, q) in coeffs.iter().enumerate() {
        acc = &acc + &(q * &q.monomial_like(&[("z", i as i32)], Rational::one())?);
    }
    Ok(acc)
}

/// The frame's table with `t` swapped for the Laurent variable `s`.
pub fn s_table(table: &Arc<VarTable>) -> Result<Arc<VarTable>> {
    table.require("t")?;
    let vars = table
        .vars()
        .iter()
        .map(|v| if v.name == "t" { Var::standard("s") } else { v.clone() })
        .collect();
    VarTable::new(vars)
}

/// `t^k ↦ s^{2k}`.
pub fn t_to_s(p: &PSeries, st: &Arc<VarTable>) -> Result<PSeries> {
    p.reindex(st, p.trunc(), |n, e| Some(if n == "t" { ("s".into(), 2 * e) } else { (n.into(), e) }))
}

/// `s^{2k} ↦ t^k`; odd powers of `s` are a consistency error.
pub fn s_to_t(p: &PSeries, tt: &Arc<VarTable>) -> Result<PSeries> {
    p.reindex(tt, p.trunc(), |n, e| match n {
        "s" if e % 2 != 0 || e < 0 => None,
        "s" => Some(("t".into(), e / 2)),
        _ => Some((n.into(), e)),
    })
}

fn frame_at(frame: &CouplingFrame, degree: u32) -> CouplingFrame {
    let mut trunc = frame.trunc().clone();
    trunc.max_coupling_degree = Some(degree);
    frame.with_trunc(&trunc)
}

/// `c_n = [x^n](1 - bx + cx²)^{-1/2}` for `n <= nmax`, i.e.
/// `Σ_{i+j=n} C(2i,i)C(2j,j) a_+^i a_-^j / 4^n`.
pub fn c_coefficients(b: &PSeries, c: &PSeries, nmax: usize) -> Vec<PSeries> {
    let mut out = vec![b.one_like()];
    if nmax >= 1 {
        out.push(b.scale(&rat(1, 2)));
    }
    for n in 1..nmax {
        let a = (b * &out[n]).scale(&rat(2 * n as i64 + 1, 2));
        let d = (c * &out[n - 1]).scale(&int(n as i64));
        out.push((&a - &d).scale(&rat(1, n as i64 + 1)));
    }
    out
}

fn top_index(frame: &CouplingFrame) -> usize {
    frame.max_g_index().max(2)
}

/// `g̃_m = g_m - δ_{m,2}`.
fn g_tilde(frame: &CouplingFrame, m: usize) -> PSeries {
    let g = frame.g(m);
    if m == 2 {
        &g - &g.one_like()
    } else {
        g
    }
}

/// `Q_i = -Σ_{m>=i+2} g̃_m c_{m-2-i}`, the polynomial part of `H`.
fn q_from_c(frame: &CouplingFrame, cn: &[PSeries]) -> Vec<PSeries> {
    let k = top_index(frame);
    (0..=k - 2)
        .map(|i| {
            (i + 2..=k).fold(cn[0].zero_like(), |acc, m| &acc - &(&g_tilde(frame, m) * &cn[m - 2 - i]))
        })
        .collect()
}

/// `ω = ½(-S' - Q√(z² - bz + c))` re-expanded to `z^{-depth-1}`.
pub fn cut_resolvent(frame: &CouplingFrame, b: &PSeries, c: &PSeries, q: &[PSeries], depth: usize) -> Result<LSeries> {
    let z = b.var_like("z")?;
    let a = &(&(&z * &z) - &(b * &z)) + c;
    let table = b.table();
    let mut grading = vec![0i64; table.len()];
    grading[table.require("z")?] = -1;
    let deg_q = q.len() as i64 - 1;
    let root = a.sqrt_graded(&grading, depth as i64 + 2 + deg_q, Sign::Plus)?;
    let root = LSeries::new(root, "z", Some(-(depth as i32) - 1 - deg_q as i32))?;
    let qz = LSeries::exact(z_poly(q)?, "z")?;
    let s1 = LSeries::exact(action_derivative(&frame.with_trunc(b.trunc()))?, "z")?;
    let omega = (&s1 + &(&qz * &root)).scale(&rat(-1, 2));
    let (plus, minus) = omega.laurent_split();
    if !plus.body().is_zero() {
        return Err(Error::Consistency(format!("one-cut ω has a polynomial part {}", plus.body())));
    }
    Ok(minus)
}

#[allow(clippy::too_many_arguments)]
fn finish(
    method: CutMethod,
    frame: &CouplingFrame,
    b: PSeries,
    c: PSeries,
    b_plus: PSeries,
    b_minus: PSeries,
    degree: u32,
    depth: usize,
) -> Result<CutData> {
    let k = top_index(frame);
    let cn = c_coefficients(&b, &c, k);
    let q = q_from_c(frame, &cn);
    let omega = cut_resolvent(frame, &b, &c, &q, depth)?;
    let f = (0..=depth).map(|n| omega.coeff_z(-(n as i32) - 1)).collect::<Result<Vec<_>>>()?;
    Ok(CutData { method, b, c, b_plus, b_minus, q, f, degree })
}

fn check_s_polynomial(p: &PSeries, what: &str) -> Result<()> {
    if let Some((lo, _)) = p.exponent_range("s")? {
        if lo < 0 {
            return Err(Error::Consistency(format!("{what} has s^{lo}: {p}")));
        }
    }
    Ok(())
}

/// Solves `H_{-1} = 0`, `H_{-2} = 2t` for `b_±` order by order in the couplings,
/// as `b_+ - b_- = R_1`, `2s(b_+ + b_-) = R_2`.
pub fn solve_one_cut_h(frame: &CouplingFrame, degree: u32, depth: usize) -> Result<CutData> {
    let frame = frame_at(frame, degree);
    let st = s_table(frame.table())?;
    let sframe = frame.rehome(&st, frame.trunc())?;
    let k = sframe.max_g_index();
    let zero = sframe.zero();
    let s = zero.var_like("s")?;
    let inv_s = zero.monomial_like(&[("s", -1)], Rational::one())?;
    let (mut bp, mut bm) = (zero.clone(), zero.clone());
    let mut settled = false;
    for _ in 0..=degree + 1 {
        let b = (&bp - &bm).scale(&int(2));
        let c = (&(&s + &bp) * &(&s + &bm)).scale(&int(-4));
        let cn = c_coefficients(&b, &c, k.max(2));
        let r1 = (0..k).fold(zero.clone(), |acc, n| &acc + &(&sframe.g(n + 1) * &cn[n]));
        let mut r2 = (1..=k).fold(zero.clone(), |acc, n| &acc + &(&sframe.g(n) * &cn[n]));
        let lin = &(&s * &s) + &(&s * &(&bp + &bm));
        r2 = &r2 - &(&cn[2] - &lin.scale(&int(2)));
        let sigma = (&r2 * &inv_s).scale(&rat(1, 2));
        let nbp = (&r1 + &sigma).scale(&rat(1, 2));
        let nbm = (&sigma - &r1).scale(&rat(1, 2));
        if nbp == bp && nbm == bm {
            settled = true;
            break;
        }
        bp = nbp;
        bm = nbm;
    }
    if !settled {
        return Err(Error::Divergence(format!("b_± did not settle within {} passes", degree + 2)));
    }
    check_s_polynomial(&bp, "b_+")?;
    check_s_polynomial(&bm, "b_-")?;
    let b = s_to_t(&(&bp - &bm).scale(&int(2)), frame.table())?;
    let c = s_to_t(&(&(&s + &bp) * &(&s + &bm)).scale(&int(-4)), frame.table())?;
    finish(CutMethod::H, &frame, b, c, bp, bm, degree, depth)
}

/// Only even couplings: `b = 0` and `A = a_+²` solves
/// `A = 4t + 2 Σ_n g_{2n} C(2n,n) A^n / 4^n`.
pub fn solve_one_cut_even(frame: &CouplingFrame, degree: u32, depth: usize) -> Result<CutData> {
    if let Some(odd) = frame.g_indices().into_iter().find(|n| n % 2 == 1) {
        return Err(Error::Precondition(format!("g{odd} is odd; the even solver needs an even potential")));
    }
    let frame = frame_at(frame, degree);
    let k = frame.max_g_index();
    let t = frame.zero().var_like("t")?;
    let mut a = t.scale(&int(4));
    let mut settled = false;
    for _ in 0..=degree + 1 {
        let mut next = t.scale(&int(4));
        let mut power = a.one_like();
        for n in 1..=k / 2 {
            power = &power * &a;
            let coef = big(binomial(2 * n as u64, n as u64)) * rat(2, 1) / rpow4(n);
            next = &next + &(&frame.g(2 * n) * &power).scale(&coef);
        }
        if next == a {
            settled = true;
            break;
        }
        a = next;
    }
    if !settled {
        return Err(Error::Divergence("a² did not settle".into()));
    }
    let st = s_table(frame.table())?;
    let root = t_to_s(&a, &st)?.sqrt(Sign::Plus)?;
    let s = root.var_like("s")?;
    let bp = (&root - &s.scale(&int(2))).scale(&rat(1, 2));
    check_s_polynomial(&bp, "b_+")?;
    let b = frame.zero();
    let c = a.neg();
    finish(CutMethod::Even, &frame, b, c, bp.clone(), bp, degree, depth)
}

fn rpow4(n: usize) -> Rational {
    Rational::from_integer(num_bigint::BigInt::from(4).pow(n as u32))
}

/// Fixed point for `(b, c)` from `b = 2Σ g_{n+1} c_n`, `c = ¾b² - 4t - 2Σ g_n c_n`,
/// seeded at `(0, -4t)`. Then `Q²(z² - bz + c) = S'² - 4P` is matched coefficient by
/// coefficient: the top `d + 1` coefficients must vanish identically and the
/// remaining ones yield `f_1, …, f_{d-2}` top-down, dividing by `g_d`.
pub fn solve_one_cut_system(frame: &CouplingFrame, degree: u32, depth: usize) -> Result<CutData> {
    let inner = frame_at(frame, degree + 1);
    let d = inner.max_g_index();
    let kq = top_index(&inner);
    let zero = inner.zero();
    let t = zero.var_like("t")?;
    let (mut b, mut c) = (zero.clone(), t.scale(&int(-4)));
    let mut frozen: i64 = -1;
    let mut settled = false;
    for _ in 0..degree + 3 {
        let cn = c_coefficients(&b, &c, kq);
        let nb = (0..d).fold(zero.clone(), |acc, n| &acc + &(&inner.g(n + 1) * &cn[n])).scale(&int(2));
        let sum = (1..=d).fold(zero.clone(), |acc, n| &acc + &(&inner.g(n) * &cn[n]));
        let nc = &(&(&b * &b).scale(&rat(3, 4)) - &t.scale(&int(4))) - &sum.scale(&int(2));
        let changed = (&nb - &b).min_grade().into_iter().chain((&nc - &c).min_grade()).min();
        b = nb;
        c = nc;
        match changed {
            None => {
                settled = true;
                break;
            }
            Some(g) if g <= frozen => {
                return Err(Error::Divergence(format!("degree {g} changed again after it was frozen")));
            }
            Some(g) => frozen = g,
        }
    }
    if !settled {
        return Err(Error::Divergence(format!("(b, c) did not settle within {} passes", degree + 3)));
    }

    let cn = c_coefficients(&b, &c, kq);
    let q = q_from_c(&inner, &cn);
    let z = zero.var_like("z")?;
    let a = &(&(&z * &z) - &(&b * &z)) + &c;
    let qz = z_poly(&q)?;
    let s1 = action_derivative(&inner)?;
    let rhs = &(&s1 * &s1) - &(&(&qz * &qz) * &a);
    let coeff = |k: usize| rhs.coefficient_in("z", k as i32);

    // f_0 = t plus the unknowns f_1..f_{d-2}; 4P_k = rhs_k for every k.
    let mut f = vec![t.clone()];
    if d >= 3 {
        let gd = inner.g(d);
        for j in 1..=d - 2 {
            let k = d - 2 - j;
            let mut num = coeff(k)?.scale(&rat(-1, 4));
            if k == 0 {
                num = &num + &t;
            }
            for n in k + 2..d {
                num = &num - &(&inner.g(n) * &f[n - 2 - k]);
            }
            f.push(divide_by_coupling(&num, &gd)?);
        }
    }
    let p4 = p_polynomial(&inner, &f)?.scale(&int(4));
    let truncate = |p: &PSeries| p.with_trunc(&TruncationPolicy::degree(degree));
    let residual = truncate(&(&rhs - &p4));
    if !residual.is_zero() {
        let lo = residual.exponent_range("z")?.map_or(0, |r| r.0);
        return Err(Error::Consistency(format!(
            "coefficient matching fails at z^{lo}: {}",
            residual.coefficient_in("z", lo)?
        )));
    }

    let outer = frame_at(frame, degree);
    let b = b.with_trunc(outer.trunc());
    let c = c.with_trunc(outer.trunc());
    let st = s_table(outer.table())?;
    let disc = t_to_s(&(&(&b * &b) - &c.scale(&int(4))), &st)?;
    let root = disc.sqrt(Sign::Plus)?;
    let s = root.var_like("s")?;
    let bs = t_to_s(&b, &st)?;
    let bp = &(&bs + &root).scale(&rat(1, 4)) - &s;
    let bm = &(&root - &bs).scale(&rat(1, 4)) - &s;
    check_s_polynomial(&bp, "b_+")?;
    check_s_polynomial(&bm, "b_-")?;
    let cut = finish(CutMethod::System, &outer, b, c, bp, bm, degree, depth)?;
    for (j, fj) in f.iter().enumerate().skip(1) {
        if j < cut.f.len() && truncate(fj) != cut.f[j] {
            return Err(Error::Consistency(format!("f_{j} from matching differs from the resolvent")));
        }
    }
    Ok(cut)
}

/// Exact division by a coupling that is a rational multiple of one variable.
fn divide_by_coupling(num: &PSeries, g: &PSeries) -> Result<PSeries> {
    let terms: Vec<_> = g.terms().collect();
    let (m, c) = match terms.as_slice() {
        [(m, c)] => (*m, *c),
        _ => return Err(Error::Precondition(format!("cannot divide by the coupling {g}"))),
    };
    let nz: Vec<usize> = (0..m.exps().len()).filter(|&i| m.get(i) != 0).collect();
    if nz.len() != 1 || m.get(nz[0]) != 1 {
        return Err(Error::Precondition(format!("cannot divide by the coupling {g}")));
    }
    let name = g.table().var(nz[0]).name.clone();
    Ok(num.div_var(&name, 1)?.scale(&(Rational::one() / c)))
}

pub fn solve_one_cut(method: CutMethod, frame: &CouplingFrame, degree: u32, depth: usize) -> Result<CutData> {
    match method {
        CutMethod::H => solve_one_cut_h(frame, degree, depth),
        CutMethod::System => solve_one_cut_system(frame, degree, depth),
        CutMethod::Even => solve_one_cut_even(frame, degree, depth),
    }
}

/// Outcome of a discriminant test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantReport {
    /// Degree of the polynomial actually tested (in `u = z²` when even).
    pub degree: usize,
    pub even_reduced: bool,
    /// Degree at most two: a double root is not required.
    pub vacuous: bool,
    pub check: CheckReport,
}

/// Classical discriminant of `Σ a[i] x^i` for degree 2, 3 or 4.
pub fn discriminant(a: &[PSeries]) -> Result<PSeries> {
    let n = a.iter().rposition(|x| !x.is_zero()).unwrap_or(0);
    let p = |terms: &[(i64, &[usize])]| -> PSeries {
        let mut acc = a[0].zero_like();
        for (c, idx) in terms {
            let prod = idx.iter().fold(a[0].one_like(), |m, &i| &m * &a[i]);
            acc = &acc + &prod.scale(&int(*c));
        }
        acc
    };
    Ok(match n {
        2 => p(&[(1, &[1, 1]), (-4, &[2, 0])]),
        3 => p(&[
            (18, &[3, 2, 1, 0]),
            (-4, &[2, 2, 2, 0]),
            (1, &[2, 2, 1, 1]),
            (-4, &[3, 1, 1, 1]),
            (-27, &[3, 3, 0, 0]),
        ]),
        4 => p(&[
            (256, &[4, 4, 4, 0, 0, 0]),
            (-192, &[4, 4, 3, 1, 0, 0]),
            (-128, &[4, 4, 2, 2, 0, 0]),
            (144, &[4, 4, 2, 1, 1, 0]),
            (-27, &[4, 4, 1, 1, 1, 1]),
            (144, &[4, 3, 3, 2, 0, 0]),
            (-6, &[4, 3, 3, 1, 1, 0]),
            (-80, &[4, 3, 2, 2, 1, 0]),
            (18, &[4, 3, 2, 1, 1, 1]),
            (16, &[4, 2, 2, 2, 2, 0]),
            (-4, &[4, 2, 2, 2, 1, 1]),
            (-27, &[3, 3, 3, 3, 0, 0]),
            (18, &[3, 3, 3, 2, 1, 0]),
            (-4, &[3, 3, 3, 1, 1, 1]),
            (-4, &[3, 3, 2, 2, 2, 0]),
            (1, &[3, 3, 2, 2, 1, 1]),
        ]),
        _ => return Err(Error::Scope(format!("no discriminant formula for degree {n}"))),
    })
}

/// `S'² - 4P` built from `cut.f` must have a repeated root: its discriminant vanishes.
pub fn discriminant_check(frame: &CouplingFrame, cut: &CutData) -> Result<DiscriminantReport> {
    let frame = frame.with_trunc(cut.b.trunc());
    let s1 = action_derivative(&frame)?;
    let poly = &(&s1 * &s1) - &p_polynomial(&frame, &cut.f)?.scale(&int(4));
    let hi = poly.exponent_range("z")?.map_or(0, |r| r.1.max(0)) as usize;
    let mut coeffs = (0..=hi).map(|k| poly.coefficient_in("z", k as i32)).collect::<Result<Vec<_>>>()?;
    let even_reduced = coeffs.iter().skip(1).step_by(2).all(PSeries::is_zero);
    if even_reduced {
        coeffs = coeffs.into_iter().step_by(2).collect();
    }
    let degree = coeffs.len() - 1;
    if degree > 4 {
        return Err(Error::Scope(format!("S'^2 - 4P has degree {degree}; at most 4 is supported")));
    }
    if degree <= 2 {
        let check = CheckReport { ok: true, checked: 0, first_failure: None };
        return Ok(DiscriminantReport { degree, even_reduced, vacuous: true, check });
    }
    let delta = discriminant(&coeffs)?;
    let check = CheckReport::compare([("discriminant".to_string(), delta.clone(), delta.zero_like())]);
    Ok(DiscriminantReport { degree, even_reduced, vacuous: false, check })
}

/// `27 f_2² g_4² + 16 g_4 t³ - 18 f_2 g_4 t - t² + f_2`, which vanishes on the `g_4` line.
pub fn g4_factor(frame: &CouplingFrame, f2: &PSeries) -> Result<PSeries> {
    let g = frame.g(4).with_trunc(f2.trunc());
    let t = f2.var_like("t")?;
    let t2 = &t * &t;
    let mut acc = (&(&(f2 * f2) * &g) * &g).scale(&int(27));
    acc = &acc + &(&(&g * &t2) * &t).scale(&int(16));
    acc = &acc - &(&(f2 * &g) * &t).scale(&int(18));
    acc = &acc - &t2;
    Ok(&acc + f2)
}

pub fn g4_factor_check(frame: &CouplingFrame, f2: &PSeries) -> Result<CheckReport> {
    let v = g4_factor(frame, f2)?;
    Ok(CheckReport::compare([("g4 factor".to_string(), v.clone(), v.zero_like())]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fat::{fat_fn_virasoro, fat_frame};
    use num_traits::Zero;

    fn coeff(p: &PSeries, pairs: &[(&str, i32)]) -> Rational {
        p.coeff_of(pairs).unwrap()
    }

    #[test]
    fn semicircle() {
        let f = fat_frame(&[], 3).unwrap();
        let cut = solve_one_cut_h(&f, 3, 6).unwrap();
        assert!(cut.b.is_zero());
        assert_eq!(cut.c, cut.c.var_like("t").unwrap().scale(&int(-4)));
        assert_eq!(cut.q, vec![cut.b.one_like()]);
        assert!(cut.b_plus.is_zero() && cut.b_minus.is_zero());
        assert_eq!(coeff(&cut.f[4], &[("t", 3)]), int(2));
    }

    #[test]
    fn g1_line_exact() {
        let f = fat_frame(&[1], 6).unwrap();
        for m in [CutMethod::H, CutMethod::System] {
            let cut = solve_one_cut(m, &f, 6, 6).unwrap();
            let g1 = cut.b.var_like("g1").unwrap();
            let t = cut.b.var_like("t").unwrap();
            assert_eq!(cut.b, g1.scale(&int(2)));
            assert_eq!(cut.c, &(&g1 * &g1) - &t.scale(&int(4)));
            assert_eq!(cut.q, vec![cut.b.one_like()]);
        }
    }

    #[test]
    fn g3_line_endpoints() {
        let f = fat_frame(&[3], 9).unwrap();
        let cut = solve_one_cut_h(&f, 9, 2).unwrap();
        for (m, v) in [(1, 4), (3, 24), (5, 256), (7, 3360), (9, 49152)] {
            assert_eq!(coeff(&cut.b, &[("g3", m), ("t", (m + 1) / 2)]), int(v));
        }
        for (e, tt, v) in [(0, 1, -4), (2, 2, -12), (4, 3, -112), (6, 4, -1392), (8, 5, -19776)] {
            assert_eq!(coeff(&cut.c, &[("g3", e), ("t", tt)]), int(v));
        }
        let sys = solve_one_cut_system(&f, 9, 2).unwrap();
        assert_eq!(sys.b, cut.b);
        assert_eq!(sys.c, cut.c);
        assert_eq!(sys.b_plus, cut.b_plus);
    }

    #[test]
    fn methods_agree_with_virasoro() {
        let f = fat_frame(&[1, 2, 3], 4).unwrap();
        let st = fat_fn_virasoro(&f, 8, 4).unwrap();
        for m in [CutMethod::H, CutMethod::System] {
            let cut = solve_one_cut(m, &f, 4, 8).unwrap();
            assert_eq!(cut.f, st.f, "{m:?}");
        }
        let f = fat_frame(&[2, 4], 5).unwrap();
        let st = fat_fn_virasoro(&f, 6, 5).unwrap();
        let even = solve_one_cut_even(&f, 5, 6).unwrap();
        assert_eq!(even.f, st.f);
        assert_eq!(even.b_plus, solve_one_cut_h(&f, 5, 6).unwrap().b_plus);
    }

    #[test]
    fn even_rejects_odd() {
        let f = fat_frame(&[3], 2).unwrap();
        assert!(matches!(solve_one_cut_even(&f, 2, 2), Err(Error::Precondition(_))));
    }

    #[test]
    fn g2_line() {
        let f = fat_frame(&[2], 5).unwrap();
        let cut = solve_one_cut_even(&f, 5, 2).unwrap();
        // a² = 4t/(1-g2), Q = 1-g2
        for k in 0..=5 {
            assert_eq!(coeff(&cut.c, &[("g2", k), ("t", 1)]), int(-4));
        }
        assert_eq!(cut.q[0], &cut.b.one_like() - &cut.b.var_like("g2").unwrap());
    }

    #[test]
    fn discriminants_vanish() {
        let f = fat_frame(&[3], 8).unwrap();
        let cut = solve_one_cut_h(&f, 8, 2).unwrap();
        let r = discriminant_check(&f, &cut).unwrap();
        assert!(r.check.ok && !r.vacuous && r.degree == 4);

        let f = fat_frame(&[4], 6).unwrap();
        let cut = solve_one_cut_even(&f, 6, 2).unwrap();
        let r = discriminant_check(&f, &cut).unwrap();
        assert!(r.check.ok && r.even_reduced && r.degree == 3);
        assert!(g4_factor_check(&f, &cut.f[2]).unwrap().ok);

        let f = fat_frame(&[], 2).unwrap();
        let cut = solve_one_cut_h(&f, 2, 2).unwrap();
        assert!(discriminant_check(&f, &cut).unwrap().vacuous);

        let f = fat_frame(&[5], 2).unwrap();
        let cut = solve_one_cut_h(&f, 2, 3).unwrap();
        assert!(matches!(discriminant_check(&f, &cut), Err(Error::Scope(_))));
    }

    #[test]
    fn c_coefficients_match_direct_sum() {
        // a_+ = 3, a_- = -1/2: c_n = Σ C(2i,i)C(2j,j) a_+^i a_-^j / 4^n
        let tb = VarTable::standard(&["x"]).unwrap();
        let tr = TruncationPolicy::unbounded();
        let (ap, am) = (int(3), rat(-1, 2));
        let b = PSeries::constant(&tb, &tr, &ap + &am);
        let c = PSeries::constant(&tb, &tr, &ap * &am);
        let cn = c_coefficients(&b, &c, 6);
        for n in 0..=6u64 {
            let mut want = Rational::zero();
            for i in 0..=n {
                let j = n - i;
                want += big(binomial(2 * i, i) * binomial(2 * j, j))
                    * crate::series::rational::rpow(&ap, i as u32)
                    * crate::series::rational::rpow(&am, j as u32);
            }
            want /= rpow4(n as usize);
            assert_eq!(cn[n as usize].constant_term(), want);
        }
    }
}
