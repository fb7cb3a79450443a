//! Fat genus-zero correlators `f_n`, the resolvent `ω` and the field `Y = S' + 2ω`.

use std::sync::Arc;

use crate::couplings::{action_derivative, CouplingFrame, FrameTag};
use crate::error::{Error, Result};
use crate::series::rational::int;
use crate::series::{LSeries, PSeries, Rational, Sign, TruncationPolicy, VarTable};
use crate::thin::CheckReport;

/// Table with `g<i>` for the given indices plus `t` and `z`.
pub fn fat_table(indices: &[usize]) -> Result<Arc<VarTable>> {
    let mut names: Vec<String> = indices.iter().map(|i| format!("g{i}")).collect();
    names.push("t".into());
    names.push("z".into());
    VarTable::standard(&names.iter().map(String::as_str).collect::<Vec<_>>())
}

pub fn fat_frame(indices: &[usize], degree: u32) -> Result<CouplingFrame> {
    let table = fat_table(indices)?;
    CouplingFrame::symbolic(FrameTag::G, &table, &TruncationPolicy::degree(degree), indices)
}

#[derive(Clone, Debug)]
pub struct FatState {
    pub frame: CouplingFrame,
    /// `f_0 = t, f_1, …, f_{n_max}`.
    pub f: Vec<PSeries>,
    pub n_max: usize,
    pub degree: u32,
}

impl FatState {
    /// `ω = Σ_{n=0}^{depth} f_n z^{-n-1}`, exact down to `z^{-depth-1}`.
    pub fn resolvent(&self, depth: usize) -> Result<LSeries> {
        if depth > self.n_max {
            return Err(Error::Precondition(format!("depth {depth} exceeds n_max {}", self.n_max)));
        }
        resolvent_from(&self.f[..=depth])
    }

    /// `Y = S' + 2ω`.
    pub fn field(&self, depth: usize) -> Result<LSeries> {
        let s = LSeries::exact(action_derivative(&self.frame)?, "z")?;
        Ok(&s + &self.resolvent(depth)?.scale(&int(2)))
    }
}

pub(crate) fn resolvent_from(f: &[PSeries]) -> Result<LSeries> {
    let mut body = f[0].zero_like();
    for (n, fn_) in f.iter().enumerate() {
        body = &body + &(fn_ * &fn_.monomial_like(&[("z", -(n as i32) - 1)], int(1))?);
    }
    LSeries::new(body, "z", Some(-(f.len() as i32)))
}

/// Genus-zero fat Virasoro recursion with `f_0 = t`:
/// `f_1 = Σ_{n>=0} g_{n+1} f_n`,
/// `f_{m+2} = Σ_{k>=1} g_k f_{k+m} + Σ_{j=0}^{m} f_j f_{m-j}`,
/// solved by induction on coupling degree (outer) and index (inner).
pub fn fat_fn_virasoro(frame: &CouplingFrame, n_max: usize, degree: u32) -> Result<FatState> {
    if n_max < 1 {
        return Err(Error::Precondition("n_max must be at least 1".into()));
    }
    let trunc = frame.trunc().tightest(&TruncationPolicy::degree(degree));
    let frame = frame.with_trunc(&trunc);
    let k = frame.max_g_index();
    let d_max = degree as usize;
    let spread = k.saturating_sub(2);
    let top = |d: usize| n_max + spread * (d_max - d);
    let gs: Vec<PSeries> = (0..=k).map(|n| frame.g(n)).collect();
    let zero = frame.zero();
    let t = zero.var_like("t")?;

    // comps[d][n] is the homogeneous degree-d part of f_n
    let mut comps: Vec<Vec<PSeries>> = Vec::with_capacity(d_max + 1);
    for d in 0..=d_max {
        let mut row = vec![zero.clone(); top(d) + 1];
        if d == 0 {
            row[0] = t.clone();
        }
        for n in 1..row.len() {
            let mut acc = zero.clone();
            if d >= 1 {
                let prev = &comps[d - 1];
                if n == 1 {
                    for m in 0..k {
                        acc = &acc + &(&gs[m + 1] * &prev[m]);
                    }
                } else {
                    for (kk, g) in gs.iter().enumerate().skip(1) {
                        acc = &acc + &(g * &prev[kk + n - 2]);
                    }
                }
            }
            if n >= 2 {
                let m = n - 2;
                for j in 0..=m {
                    for e in 0..=d {
                        let a = if e == d { &row[j] } else { &comps[e][j] };
                        let b = if e == 0 { &row[m - j] } else { &comps[d - e][m - j] };
                        if a.is_zero() || b.is_zero() {
                            continue;
                        }
                        acc = &acc + &(a * b);
                    }
                }
            }
            row[n] = acc;
        }
        comps.push(row);
    }
    let f = (0..=n_max)
        .map(|n| comps.iter().fold(zero.clone(), |acc, row| &acc + &row[n]))
        .collect();
    Ok(FatState { frame, f, n_max, degree })
}

/// `P(z) = t - Σ_{n>=2} g_n Σ_{j=0}^{n-2} f_j z^{n-2-j}`.
pub fn p_polynomial(frame: &CouplingFrame, f: &[PSeries]) -> Result<PSeries> {
    let k = frame.max_g_index();
    let mut p = frame.zero().var_like("t")?;
    for n in 2..=k {
        let g = frame.g(n);
        if g.is_zero() {
            continue;
        }
        for j in 0..=n - 2 {
            let fj = f.get(j).ok_or_else(|| {
                Error::Precondition(format!("P(z) needs f_{j}, only {} supplied", f.len()))
            })?;
            let zp = fj.monomial_like(&[("z", (n - 2 - j) as i32)], int(1))?;
            p = &p - &(&(&g * fj) * &zp);
        }
    }
    Ok(p)
}

/// Grading for the fat square root: `z ↦ -1`, `g_k ↦ max(k-1, 1)`.
pub(crate) fn fat_grading(frame: &CouplingFrame) -> Result<(Vec<i64>, i64)> {
    let table = frame.table();
    let mut grading = vec![0i64; table.len()];
    grading[table.require("z")?] = -1;
    let mut heaviest = 1;
    for n in frame.g_indices() {
        let w = (n as i64 - 1).max(1);
        grading[table.require(&format!("g{n}"))?] = w;
        heaviest = heaviest.max(w);
    }
    Ok((grading, heaviest))
}

/// `ω = (-S' - √(S'² - 4P))/2` from `f_0 = t, …, f_{d-2}`; the tail is exact down
/// to `z^{-depth-1}` and yields every `f_n` with `n <= depth`.
pub fn fat_resolvent_closed(frame: &CouplingFrame, f_inputs: &[PSeries], depth: usize) -> Result<LSeries> {
    let s1 = action_derivative(frame)?;
    let p = p_polynomial(frame, f_inputs)?;
    let disc = &(&s1 * &s1) - &p.scale(&int(4));
    let (grading, heaviest) = fat_grading(frame)?;
    let dmax = frame.trunc().max_coupling_degree.ok_or_else(|| {
        Error::Precondition("the closed resolvent needs a coupling-degree cap".into())
    })? as i64;
    let max_rel = depth as i64 + 2 + dmax * heaviest;
    let root = disc.sqrt_graded(&grading, max_rel, Sign::Plus)?;
    if root.coeff_of(&[("z", 1)])? != int(1) {
        return Err(Error::Branch("√(S'²-4P) does not start with +z".into()));
    }
    let omega = (&s1 + &root).scale(&Rational::new((-1).into(), 2.into()));
    let omega = LSeries::new(omega, "z", Some(-(depth as i32) - 1))?;
    let (plus, minus) = omega.laurent_split();
    if !plus.body().is_zero() {
        return Err(Error::Consistency(format!("ω has a polynomial part {}", plus.body())));
    }
    Ok(minus)
}

/// Reads `f_n = [z^{-n-1}] ω` for `n = 0..=depth`.
pub fn correlators_from_resolvent(omega: &LSeries, depth: usize) -> Result<Vec<PSeries>> {
    (0..=depth).map(|n| omega.coeff_z(-(n as i32) - 1)).collect()
}

/// All strictly negative powers of `Y²` vanish where they are known exactly.
pub fn fat_y2_minus_check(state: &FatState, tail: usize) -> Result<CheckReport> {
    let y = state.field(tail)?;
    let y2 = &y * &y;
    let (_, minus) = y2.laurent_split();
    let lo = minus.floor().unwrap_or(-1);
    let zero = state.frame.zero();
    let pairs = (lo..0).map(|k| Ok((format!("z^{k}"), minus.coeff_z(k)?, zero.clone())));
    Ok(CheckReport::compare(pairs.collect::<Result<Vec<_>>>()?))
}

/// `ω² + S'ω + P = 0` where known exactly.
pub fn quadratic_identity_check(frame: &CouplingFrame, omega: &LSeries, f: &[PSeries]) -> Result<CheckReport> {
    let s1 = LSeries::exact(action_derivative(frame)?, "z")?;
    let p = LSeries::exact(p_polynomial(frame, f)?, "z")?;
    let lhs = &(&(omega * omega) + &(&s1 * omega)) + &p;
    let lo = lhs.floor().unwrap_or(0);
    let hi = lhs.head().unwrap_or(lo).max(lo);
    let zero = frame.zero();
    let pairs = (lo..=hi).map(|k| Ok((format!("z^{k}"), lhs.coeff_z(k)?, zero.clone())));
    Ok(CheckReport::compare(pairs.collect::<Result<Vec<_>>>()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::catalan;
    use crate::series::rational::big;

    #[test]
    fn catalan_baseline() {
        let f = fat_frame(&[1], 0).unwrap();
        let st = fat_fn_virasoro(&f, 21, 0).unwrap();
        for m in 0..=10 {
            let c = st.f[2 * m].coeff_of(&[("t", m as i32 + 1)]).unwrap();
            assert_eq!(c, big(catalan(m as u64)));
            assert!(st.f[2 * m + 1].is_zero());
        }
        assert!(fat_y2_minus_check(&st, 21).unwrap().ok);
    }

    #[test]
    fn g1_line_table() {
        let f = fat_frame(&[1], 7).unwrap();
        let st = fat_fn_virasoro(&f, 7, 7).unwrap();
        let f4 = &st.f[4];
        assert_eq!(f4.coeff_of(&[("t", 1), ("g1", 4)]).unwrap(), int(1));
        assert_eq!(f4.coeff_of(&[("t", 2), ("g1", 2)]).unwrap(), int(6));
        assert_eq!(f4.coeff_of(&[("t", 3)]).unwrap(), int(2));
        assert_eq!(f4.len(), 3);
        assert_eq!(st.f[5].coeff_of(&[("t", 3), ("g1", 1)]).unwrap(), int(10));
    }

    #[test]
    fn closed_resolvent_matches_recursion() {
        let f = fat_frame(&[1, 2, 3], 4).unwrap();
        let st = fat_fn_virasoro(&f, 8, 4).unwrap();
        let omega = fat_resolvent_closed(&st.frame, &st.f[..2], 8).unwrap();
        let from_closed = correlators_from_resolvent(&omega, 8).unwrap();
        assert_eq!(from_closed, st.f);
        assert!(quadratic_identity_check(&st.frame, &omega, &st.f).unwrap().ok);
        assert!(fat_y2_minus_check(&st, 8).unwrap().ok);
    }

    #[test]
    fn g3_line_first_terms() {
        let f = fat_frame(&[3], 5).unwrap();
        let st = fat_fn_virasoro(&f, 1, 5).unwrap();
        let f1 = &st.f[1];
        for (m, c) in [(0, 1), (1, 4), (2, 32)] {
            assert_eq!(f1.coeff_of(&[("g3", 2 * m + 1), ("t", m + 2)]).unwrap(), int(c));
        }
    }
}
