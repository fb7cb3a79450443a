//! Lagrange inversion of `v = w / φ(w)` by two independent algorithms.

use crate::error::{Error, Result};
use crate::series::rational::{big, factorial, int};
use crate::series::{PSeries, Rational, TruncationPolicy};

/// Invert `v = w/φ(w)` for `w` as a series in `v` up to `v^order`.
#[derive(Clone, Debug)]
pub struct InversionProblem {
    pub phi: PSeries,
    pub w: String,
    pub v: String,
    pub order: u32,
}

impl InversionProblem {
    pub fn new(phi: PSeries, w: &str, v: &str, order: u32) -> Self {
        InversionProblem { phi, w: w.to_string(), v: v.to_string(), order }
    }

    fn trunc(&self) -> TruncationPolicy {
        self.phi.trunc().tightest(&TruncationPolicy::unbounded().cap(&self.v, self.order as i32))
    }

    fn check_unit(&self) -> Result<()> {
        if self.phi.coefficient_in(&self.w, 0)?.is_zero() {
            return Err(Error::NonUnit(format!("φ({} = 0) vanishes", self.w)));
        }
        Ok(())
    }
}

/// Fixed-point iteration `w ← v·φ(w)` from `w = 0`; each pass fixes one more order.
pub fn invert_fixed_point(p: &InversionProblem) -> Result<PSeries> {
    p.check_unit()?;
    let trunc = p.trunc();
    let phi = p.phi.with_trunc(&trunc);
    let v = PSeries::var(phi.table(), &trunc, &p.v)?;
    let mut w = phi.zero_like();
    for _ in 0..p.order {
        let next = &v * &phi.substitute(&p.w, &w)?;
        if next == w {
            break;
        }
        w = next;
    }
    Ok(w)
}

/// `S_k = (1/k)[x^{k-1}] φ(x)^k` for `k = 1..=kmax`, with `φ(x) = Σ J_p x^p/p!`.
///
/// Equivalently `S_k = (1/k) Σ_{p_1+…+p_k=k-1} Π J_{p_i}/p_i!`.
pub fn composition_terms(j: &[PSeries], kmax: usize) -> Vec<PSeries> {
    if kmax == 0 || j.is_empty() {
        return Vec::new();
    }
    let deg = kmax - 1;
    let phi: Vec<PSeries> = (0..=deg)
        .map(|p| match j.get(p) {
            Some(s) => s.scale(&(Rational::from_integer(1.into()) / big(factorial(p as u64)))),
            None => j[0].zero_like(),
        })
        .collect();
    let mut power = phi.clone();
    let mut out = Vec::with_capacity(kmax);
    for k in 1..=kmax {
        if k > 1 {
            power = poly_mul(&power, &phi, deg);
        }
        out.push(power[k - 1].scale(&(Rational::from_integer(1.into()) / int(k as i64))));
    }
    out
}

fn poly_mul(a: &[PSeries], b: &[PSeries], deg: usize) -> Vec<PSeries> {
    let mut out: Vec<PSeries> = vec![a[0].zero_like(); deg + 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (k, y) in b.iter().enumerate().take(deg + 1 - i) {
            if y.is_zero() {
                continue;
            }
            out[i + k] = &out[i + k] + &(x * y);
        }
    }
    out
}

/// `w = Σ_k v^k S_k` from the coefficients `J_p`; `J_0` must be nonzero.
pub fn invert_composition_formula(j: &[PSeries], v: &str, order: u32) -> Result<PSeries> {
    let first = j.first().ok_or_else(|| Error::NonUnit("no J_0 given".into()))?;
    if first.is_zero() {
        return Err(Error::NonUnit("J_0 vanishes".into()));
    }
    let trunc = first.trunc().tightest(&TruncationPolicy::unbounded().cap(v, order as i32));
    let j: Vec<PSeries> = j.iter().map(|s| s.with_trunc(&trunc)).collect();
    let mut w = j[0].zero_like();
    for (k, s) in composition_terms(&j, order as usize).into_iter().enumerate() {
        let vk = s.monomial_like(&[(v, k as i32 + 1)], Rational::from_integer(1.into()))?;
        w = &w + &(&vk * &s);
    }
    Ok(w)
}

/// `J_p = p! [w^p] φ`.
pub fn j_from_phi(p: &InversionProblem) -> Result<Vec<PSeries>> {
    let hi = p.phi.exponent_range(&p.w)?.map_or(0, |r| r.1.max(0));
    (0..=hi)
        .map(|k| Ok(p.phi.coefficient_in(&p.w, k)?.scale(&big(factorial(k as u64)))))
        .collect()
}

/// `w(v)/φ(w(v))`, which must give back `v`.
pub fn compose_back(p: &InversionProblem, w_of_v: &PSeries) -> Result<PSeries> {
    let trunc = p.trunc();
    let phi = p.phi.with_trunc(&trunc).substitute(&p.w, &w_of_v.with_trunc(&trunc))?;
    Ok(w_of_v * &phi.invert()?)
}
