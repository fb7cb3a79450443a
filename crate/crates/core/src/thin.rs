//! Thin spectral curve and its special deformation.
//!
//! The engine stores `Y = √2·y`, so the undeformed curve reads `z² + Y z + 2N = 0`
//! and the deformation is
//! `Y = Σ_{n>=0} (g_{n+1} - δ_{n,1}) z^n + 2N/(z - I_0)`, expanded in `1/z`.

use std::sync::Arc;

use crate::couplings::{action_derivative, compute_i0, ik_from_i0, CouplingFrame, FrameTag};
use crate::error::Result;
use crate::lagrange::{self, InversionProblem};
use crate::series::rational::{big, factorial, int, is_integer, pow2};
use crate::series::{LSeries, PSeries, Rational, TruncationPolicy, Var, VarTable};

/// Outcome of a term-by-term identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub ok: bool,
    pub checked: usize,
    pub first_failure: Option<String>,
}

impl CheckReport {
    pub(crate) fn compare(pairs: impl IntoIterator<Item = (String, PSeries, PSeries)>) -> Self {
        let mut checked = 0;
        for (label, a, b) in pairs {
            checked += 1;
            if a != b {
                let diff = &a - &b;
                let (m, c) = diff.graded_terms()[0];
                return CheckReport {
                    ok: false,
                    checked,
                    first_failure: Some(format!("{label}: {c}*{} differs", diff.fmt_monomial(m))),
                };
            }
        }
        CheckReport { ok: true, checked, first_failure: None }
    }
}

/// Table with `g<i>` for the given indices plus `N` (Laurent), `z` and `v`.
pub fn thin_table(indices: &[usize]) -> Result<Arc<VarTable>> {
    let mut vars: Vec<Var> = indices.iter().map(|i| Var::standard(&format!("g{i}"))).collect();
    vars.push(Var::new("N", 0, true));
    vars.push(Var::standard("z"));
    vars.push(Var::standard("v"));
    VarTable::new(vars)
}

pub fn thin_frame(indices: &[usize], degree: u32) -> Result<CouplingFrame> {
    let table = thin_table(indices)?;
    CouplingFrame::symbolic(FrameTag::G, &table, &TruncationPolicy::degree(degree), indices)
}

#[derive(Clone, Debug)]
pub struct ThinDeformation {
    /// `Y = √2·y` with exact positive part and tail down to `z^{-tail-1}`.
    pub y: LSeries,
    /// `f_n = N·I_0^n`, `n = 0..=tail`.
    pub f: Vec<PSeries>,
    pub i0: PSeries,
    pub tail: u32,
    pub degree: u32,
}

impl ThinDeformation {
    /// `w_n = f_{n+1}`.
    pub fn w(&self, n: usize) -> &PSeries {
        &self.f[n + 1]
    }
}

pub fn thin_deformation(frame: &CouplingFrame, tail: u32, degree: u32) -> Result<ThinDeformation> {
    let i0 = compute_i0(frame, degree);
    let n = i0.var_like("N")?;
    let mut f = vec![n.clone()];
    let mut power = i0.one_like();
    for _ in 0..tail {
        power = &power * &i0;
        f.push(&n * &power);
    }
    let mut body = action_derivative(&frame.with_trunc(i0.trunc()))?;
    for (k, fk) in f.iter().enumerate() {
        let zk = fk.monomial_like(&[("z", -(k as i32) - 1)], int(2))?;
        body = &body + &(&zk * fk);
    }
    let y = LSeries::new(body, "z", Some(-(tail as i32) - 1))?;
    Ok(ThinDeformation { y, f, i0, tail, degree })
}

/// `¼(Y²)₋ = (N/z + Σ w_n z^{-n-2})²` on every exponent both sides know exactly.
pub fn thin_y2_minus_check(d: &ThinDeformation) -> Result<CheckReport> {
    let y2 = &d.y * &d.y;
    let (_, minus) = y2.laurent_split();
    let lhs = minus.scale(&Rational::new(1.into(), 4.into()));
    let mut r = d.f[0].zero_like();
    for (k, fk) in d.f.iter().enumerate() {
        r = &r + &(&fk.monomial_like(&[("z", -(k as i32) - 1)], int(1))? * fk);
    }
    let r = LSeries::new(r, "z", Some(-(d.tail as i32) - 1))?;
    let rhs = &r * &r;
    let lo = lhs.floor().unwrap_or(-1).max(rhs.floor().unwrap_or(-1));
    let mut pairs = Vec::new();
    for k in lo..0 {
        pairs.push((format!("z^{k}"), lhs.coeff_z(k)?, rhs.coeff_z(k)?));
    }
    Ok(CheckReport::compare(pairs))
}

/// `φ(w) = 2N + Σ_{n>=1} (I_n - δ_{n,1}) w^{n+1}/n!` expressed through `J_0 = 2N`,
/// `J_1 = 0`, `J_{n+1} = (n+1)(I_n - δ_{n,1})`.
pub fn thin_j(frame: &CouplingFrame, order: u32, degree: u32) -> Result<Vec<PSeries>> {
    let i0 = compute_i0(frame, degree);
    let mut j = vec![i0.var_like("N")?.scale(&int(2)), i0.zero_like()];
    for n in 1..order.saturating_sub(1) as usize {
        let mut i = ik_from_i0(frame, &i0, n);
        if n == 1 {
            i = &i - &i.one_like();
        }
        j.push(i.scale(&int(n as i64 + 1)));
    }
    Ok(j)
}

/// `v = (z - I_0)/φ(z - I_0)` as an inversion problem in `w = z - I_0`.
pub fn thin_problem(frame: &CouplingFrame, order: u32, degree: u32) -> Result<InversionProblem> {
    let j = thin_j(frame, order, degree)?;
    // `w` is not in the thin table; `z` plays its role.
    let mut phi = j[0].zero_like();
    for (p, jp) in j.iter().enumerate() {
        let c = Rational::new(1.into(), factorial(p as u64));
        phi = &phi + &(jp * &jp.monomial_like(&[("z", p as i32)], c)?);
    }
    Ok(InversionProblem::new(phi, "z", "v", order))
}

/// `z(v) = I_0 + w(v)` by fixed-point inversion.
pub fn thin_z_of_v(frame: &CouplingFrame, order: u32, degree: u32) -> Result<PSeries> {
    let w = lagrange::invert_fixed_point(&thin_problem(frame, order, degree)?)?;
    let i0 = compute_i0(frame, degree).with_trunc(w.trunc());
    Ok(&i0 + &w)
}

/// `z(v)` by the closed composition sum.
pub fn thin_z_of_v_composition(frame: &CouplingFrame, order: u32, degree: u32) -> Result<PSeries> {
    let j = thin_j(frame, order, degree)?;
    let w = lagrange::invert_composition_formula(&j, "v", order)?;
    let i0 = compute_i0(frame, degree).with_trunc(w.trunc());
    Ok(&i0 + &w)
}

/// Coefficients of `z(v)` that are not integers once written in `(2N)`.
pub fn thin_integrality_check(k: usize, degree: u32, order: u32) -> Result<CheckReport> {
    let indices: Vec<usize> = (1..=k).collect();
    let frame = thin_frame(&indices, degree)?;
    let z = thin_z_of_v(&frame, order, degree)?;
    let ni = z.table().require("N")?;
    let mut checked = 0;
    for (m, c) in z.terms() {
        checked += 1;
        let scaled = c / pow2(m.get(ni) as i64);
        if !is_integer(&scaled) {
            return Ok(CheckReport {
                ok: false,
                checked,
                first_failure: Some(format!("{scaled}*{} in (2N) form", z.fmt_monomial(m))),
            });
        }
    }
    Ok(CheckReport { ok: true, checked, first_failure: None })
}

/// `n!·∂F/∂t_{n-1}` read off the thin tail must equal `N·I_0^n`; this checks the
/// tail coefficients of `Y` against that closed form.
pub fn thin_tail_check(d: &ThinDeformation) -> Result<CheckReport> {
    let n = d.i0.var_like("N")?;
    let mut pairs = Vec::new();
    for k in 0..=d.tail as i32 {
        let expect = (&n * &d.i0.pow(k as u32)).scale(&int(2));
        pairs.push((format!("z^{}", -k - 1), d.y.coeff_z(-k - 1)?, expect));
    }
    Ok(CheckReport::compare(pairs))
}

/// `g_1`-line oracle: `f_1 = N g_1`, `f_{n+1} = g_1 f_n`.
pub fn g1_line_recursion(frame: &CouplingFrame, nmax: usize) -> Result<Vec<PSeries>> {
    let g1 = frame.g(1);
    let mut f = vec![frame.zero().var_like("N")?];
    for _ in 0..nmax {
        let next = &g1 * f.last().expect("nonempty");
        f.push(next);
    }
    Ok(f)
}

/// Closed sum for the coefficient of `v^{m+1}` on the `g_3` line (with `M = 2N`):
/// `Σ_{m/3<=a<=m/2} (-1)^{m-a} m! M^{m+1-a} g^{m-2a} / ((m+1-a)! (m-2a)! (3a-m)!)`.
pub fn g3_line_closed(m: u32, table: &Arc<VarTable>, trunc: &TruncationPolicy) -> Result<PSeries> {
    let mut acc = PSeries::zero(table, trunc);
    let m = m as i64;
    for a in 0..=m {
        if 3 * a < m || 2 * a > m {
            continue;
        }
        let num = big(factorial(m as u64));
        let den = big(factorial((m + 1 - a) as u64) * factorial((m - 2 * a) as u64) * factorial((3 * a - m) as u64));
        let sign = if (m - a) % 2 == 0 { int(1) } else { int(-1) };
        let c = sign * num / den * pow2(m + 1 - a);
        let t = PSeries::monomial(table, trunc, &[("N", (m + 1 - a) as i32), ("g3", (m - 2 * a) as i32)], c)?;
        acc = &acc + &t;
    }
    Ok(acc)
}

/// Closed sum for `a_{2m+1}` on the `g_4` line:
/// `(-1)^m Σ_b (2m)! M^{m+b+1} g^b / (b! (m-2b)! (m+1+b)!)`.
pub fn g4_line_closed(m: u32, table: &Arc<VarTable>, trunc: &TruncationPolicy) -> Result<PSeries> {
    let mut acc = PSeries::zero(table, trunc);
    let m = m as i64;
    for b in 0..=m / 2 {
        let num = big(factorial(2 * m as u64));
        let den = big(factorial(b as u64) * factorial((m - 2 * b) as u64) * factorial((m + 1 + b) as u64));
        let sign = if m % 2 == 0 { int(1) } else { int(-1) };
        let c = sign * num / den * pow2(m + b + 1);
        let t = PSeries::monomial(table, trunc, &[("N", (m + b + 1) as i32), ("g4", b as i32)], c)?;
        acc = &acc + &t;
    }
    Ok(acc)
}
