use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::rational::{int, rational_sqrt, Rational};
use super::vars::{Bounds, Monomial, TruncationPolicy, VarTable};
use crate::error::{Error, Result};

/// Overall sign of a square root.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// Truncated multivariate power series with exact rational coefficients.
///
/// Terms are kept in a sorted map without zero coefficients, so equality is
/// structural. Every stored monomial satisfies the truncation policy.
#[derive(Clone, Debug)]
pub struct PSeries {
    table: Arc<VarTable>,
    trunc: TruncationPolicy,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for PSeries {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table && self.terms == other.terms
    }
}

impl Eq for PSeries {}

impl PSeries {
    pub fn zero(table: &Arc<VarTable>, trunc: &TruncationPolicy) -> Self {
        PSeries { table: table.clone(), trunc: trunc.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(table: &Arc<VarTable>, trunc: &TruncationPolicy, c: Rational) -> Self {
        Self::from_terms(table, trunc, [(Monomial::one(table.len()), c)])
    }

    pub fn var(table: &Arc<VarTable>, trunc: &TruncationPolicy, name: &str) -> Result<Self> {
        Self::monomial(table, trunc, &[(name, 1)], Rational::one())
    }

    pub fn monomial(
        table: &Arc<VarTable>,
        trunc: &TruncationPolicy,
        pairs: &[(&str, i32)],
        c: Rational,
    ) -> Result<Self> {
        let m = Monomial::from_pairs(table, pairs)?;
        if !m.is_legal(table) {
            return Err(Error::Structural(format!("negative exponent in {pairs:?}")));
        }
        Ok(Self::from_terms(table, trunc, [(m, c)]))
    }

    /// Builds a series from raw terms, summing duplicates and dropping anything
    /// outside the policy.
    pub fn from_terms(
        table: &Arc<VarTable>,
        trunc: &TruncationPolicy,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let bounds = trunc.compile(table).expect("policy does not match table");
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.exps().len(), table.len(), "monomial length mismatch");
            if bounds.admits(&m) {
                accumulate(&mut map, m, c);
            }
        }
        map.retain(|_, c| !c.is_zero());
        PSeries { table: table.clone(), trunc: trunc.clone(), terms: map }
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn trunc(&self) -> &TruncationPolicy {
        &self.trunc
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn bounds(&self) -> Bounds {
        self.trunc.compile(&self.table).expect("policy matches table")
    }

    fn same_shape(&self, other: &Self) -> Result<TruncationPolicy> {
        if self.table != other.table {
            return Err(Error::Structural("series use different variable tables".into()));
        }
        Ok(self.trunc.tightest(&other.trunc))
    }

    fn rebuild(&self, trunc: TruncationPolicy, terms: BTreeMap<Monomial, Rational>) -> Self {
        PSeries { table: self.table.clone(), trunc, terms }
    }

    /// Same terms under another (normally tighter) policy.
    pub fn with_trunc(&self, trunc: &TruncationPolicy) -> Self {
        Self::from_terms(&self.table, trunc, self.terms.clone())
    }

    pub fn zero_like(&self) -> Self {
        Self::zero(&self.table, &self.trunc)
    }

    pub fn constant_like(&self, c: Rational) -> Self {
        Self::constant(&self.table, &self.trunc, c)
    }

    pub fn one_like(&self) -> Self {
        self.constant_like(Rational::one())
    }

    pub fn var_like(&self, name: &str) -> Result<Self> {
        Self::var(&self.table, &self.trunc, name)
    }

    pub fn monomial_like(&self, pairs: &[(&str, i32)], c: Rational) -> Result<Self> {
        Self::monomial(&self.table, &self.trunc, pairs, c)
    }

    /// Exact coefficient; fails for monomials beyond the truncation caps so that a
    /// missing term is never mistaken for a zero.
    pub fn coeff(&self, m: &Monomial) -> Result<Rational> {
        if m.exps().len() != self.table.len() {
            return Err(Error::Structural("monomial length mismatch".into()));
        }
        if !self.bounds().admits(m) {
            return Err(Error::OutOfOrder(format!("{} lies beyond the truncation", self.fmt_monomial(m))));
        }
        Ok(self.terms.get(m).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn coeff_of(&self, pairs: &[(&str, i32)]) -> Result<Rational> {
        self.coeff(&Monomial::from_pairs(&self.table, pairs)?)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial::one(self.table.len())).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let trunc = self.same_shape(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(self.retruncate(trunc, terms))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.rebuild(self.trunc.clone(), self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return self.zero_like();
        }
        self.rebuild(self.trunc.clone(), self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect())
    }

    /// Multiplies by a single monomial, dropping what falls outside the policy.
    pub fn shift(&self, m: &Monomial, c: &Rational) -> Self {
        Self::from_terms(&self.table, &self.trunc, self.terms.iter().map(|(k, v)| (k.mul(m), v * c)))
    }

    fn retruncate(&self, trunc: TruncationPolicy, terms: BTreeMap<Monomial, Rational>) -> Self {
        if trunc == self.trunc {
            return self.rebuild(trunc, terms);
        }
        let bounds = trunc.compile(&self.table).expect("policy matches table");
        let terms = terms.into_iter().filter(|(m, _)| bounds.admits(m)).collect();
        self.rebuild(trunc, terms)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let trunc = self.same_shape(other)?;
        let bounds = trunc.compile(&self.table)?;
        let terms = mul_keyed(self, other, &bounds.weights, bounds.max_degree, |m| bounds.admits(m));
        Ok(self.rebuild(trunc, terms))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative inverse under the default grading (coupling degree plus the
    /// capped auxiliary variables). The lowest part must be one invertible monomial.
    pub fn invert(&self) -> Result<Self> {
        let (grading, bound) = self.default_grading()?;
        self.invert_graded(&grading, bound)
    }

    /// Square root under the default grading; see [`PSeries::invert`].
    pub fn sqrt(&self, branch: Sign) -> Result<Self> {
        let (grading, bound) = self.default_grading()?;
        self.sqrt_graded(&grading, bound, branch)
    }

    fn default_grading(&self) -> Result<(Vec<i64>, i64)> {
        let b = self.bounds();
        let grading = b.measure_grading();
        let caps: i64 = b.caps.iter().flatten().map(|&c| c.max(0) as i64).sum();
        let bound = match b.max_degree {
            Some(d) => d + caps,
            None if self.terms.keys().all(|m| b.grade(m) == 0) => caps,
            None => {
                return Err(Error::Precondition(
                    "series graded in couplings needs a coupling-degree cap".into(),
                ))
            }
        };
        Ok((grading, bound))
    }

    /// Inverse with an explicit grading: the minimum-weight part must be a single
    /// monomial `c·m`, and terms whose weight exceeds that of `1/(c·m)` by more than
    /// `max_rel` are dropped.
    pub fn invert_graded(&self, grading: &[i64], max_rel: i64) -> Result<Self> {
        let unit = self.unit_split(grading, "invert")?;
        let neg_eps = unit.eps.neg();
        let mut acc = unit.eps.one_like();
        let mut power = unit.eps.one_like();
        for _ in 0..max_rel {
            power = unit.mul(&power, &neg_eps, grading, max_rel);
            if power.is_zero() {
                break;
            }
            acc = &acc + &power;
        }
        Ok(unit.finish(acc, &unit.lead_mono.inv(), &(Rational::one() / &unit.lead_coeff)))
    }

    /// Square root with an explicit grading; see [`PSeries::invert_graded`].
    pub fn sqrt_graded(&self, grading: &[i64], max_rel: i64, branch: Sign) -> Result<Self> {
        let unit = self.unit_split(grading, "sqrt")?;
        let root_c = rational_sqrt(&unit.lead_coeff).ok_or_else(|| {
            Error::Branch(format!("leading coefficient {} is not a rational square", unit.lead_coeff))
        })?;
        if unit.lead_mono.exps().iter().any(|e| e % 2 != 0) {
            return Err(Error::Branch(format!(
                "leading monomial {} is not a square",
                self.fmt_monomial(&unit.lead_mono)
            )));
        }
        let half = Monomial::from_exps(&unit.lead_mono.exps().iter().map(|e| e / 2).collect::<Vec<_>>());
        let mut acc = unit.eps.one_like();
        let mut power = unit.eps.one_like();
        let mut binom = Rational::one();
        let one_half = Rational::new(1.into(), 2.into());
        for k in 0..max_rel {
            binom = binom * (&one_half - int(k)) / int(k + 1);
            power = unit.mul(&power, &unit.eps, grading, max_rel);
            if power.is_zero() {
                break;
            }
            acc = &acc + &power.scale(&binom);
        }
        let c = match branch {
            Sign::Plus => root_c,
            Sign::Minus => -root_c,
        };
        Ok(unit.finish(acc, &half, &c))
    }

    fn unit_split(&self, grading: &[i64], what: &str) -> Result<UnitSplit> {
        if grading.len() != self.table.len() {
            return Err(Error::Structural("grading length mismatch".into()));
        }
        let min = self
            .terms
            .keys()
            .map(|m| m.weight(grading))
            .min()
            .ok_or_else(|| Error::NonUnit(format!("cannot {what} the zero series")))?;
        let lead: Vec<_> = self.terms.iter().filter(|(m, _)| m.weight(grading) == min).collect();
        if lead.len() != 1 {
            return Err(Error::NonUnit(format!(
                "cannot {what}: lowest part has {} terms, expected one monomial",
                lead.len()
            )));
        }
        let (lead_mono, lead_coeff) = (lead[0].0.clone(), lead[0].1.clone());
        let inv_lead = lead_mono.inv();
        let image_legal = |m: &Monomial| m.is_legal(&self.table);
        if what == "invert" && !image_legal(&inv_lead) {
            return Err(Error::NonUnit(format!(
                "leading monomial {} has no inverse in this table",
                self.fmt_monomial(&lead_mono)
            )));
        }
        let mut eps = BTreeMap::new();
        for (m, c) in &self.terms {
            if *m == lead_mono {
                continue;
            }
            let q = m.div(&lead_mono);
            if !image_legal(&q) {
                return Err(Error::NonUnit(format!(
                    "term {} is not divisible by the leading monomial",
                    self.fmt_monomial(m)
                )));
            }
            eps.insert(q, c / &lead_coeff);
        }
        // Policy truncation of intermediates is only safe when dividing by the
        // leading monomial cannot lower any capped quantity.
        let b = self.bounds();
        let safe = b.grade(&lead_mono) == 0
            && b.caps.iter().zip(lead_mono.exps()).all(|(c, &e)| c.is_none() || e == 0);
        let inner_trunc = if safe { self.trunc.clone() } else { TruncationPolicy::unbounded() };
        Ok(UnitSplit {
            eps: PSeries { table: self.table.clone(), trunc: inner_trunc, terms: eps },
            lead_mono,
            lead_coeff,
            outer: self.trunc.clone(),
            safe,
        })
    }

    /// Replaces `var` by `replacement` everywhere.
    pub fn substitute(&self, var: &str, replacement: &PSeries) -> Result<Self> {
        let trunc = self.same_shape(replacement)?;
        let i = self.table.require(var)?;
        let b = self.bounds();
        let w = b.weights[i];
        if w > 0 {
            if let Some((m, _)) = replacement.terms.iter().find(|(m, _)| b.grade(m) < w) {
                return Err(Error::Divergence(format!(
                    "replacing {var} by a series containing {} lowers the coupling grade",
                    self.fmt_monomial(m)
                )));
            }
        } else if b.caps[i].is_some() && !replacement.constant_term().is_zero() {
            return Err(Error::Divergence(format!(
                "replacement for capped variable {var} has a constant term"
            )));
        }
        let mut by_exp: BTreeMap<i32, Vec<(Monomial, Rational)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            rest.set(i, 0);
            by_exp.entry(m.get(i)).or_default().push((rest, c.clone()));
        }
        let repl = replacement.with_trunc(&trunc);
        let mut out = PSeries::zero(&self.table, &trunc);
        let mut pos_cache: Vec<PSeries> = vec![repl.one_like()];
        let mut neg_cache: Vec<PSeries> = vec![repl.one_like()];
        for (e, group) in by_exp {
            let power = if e >= 0 {
                while pos_cache.len() <= e as usize {
                    let next = pos_cache.last().unwrap() * &repl;
                    pos_cache.push(next);
                }
                pos_cache[e as usize].clone()
            } else {
                if neg_cache.len() == 1 {
                    neg_cache.push(repl.invert()?);
                }
                while neg_cache.len() <= (-e) as usize {
                    let next = neg_cache.last().unwrap() * &neg_cache[1];
                    neg_cache.push(next);
                }
                neg_cache[(-e) as usize].clone()
            };
            let coeff = PSeries::from_terms(&self.table, &trunc, group);
            out = &out + &(&coeff * &power);
        }
        Ok(out)
    }

    /// Sets `var` to a number. Unlike [`PSeries::substitute`] this never fails: the
    /// result is the already-truncated series evaluated at that point.
    pub fn evaluate(&self, var: &str, value: &Rational) -> Result<Self> {
        let i = self.table.require(var)?;
        if value.is_zero() {
            return Ok(self.filter(|m| m.get(i) == 0));
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let e = m.get(i);
            let mut rest = m.clone();
            rest.set(i, 0);
            let f = num_traits::pow(value.clone(), e.unsigned_abs() as usize);
            let f = if e < 0 { Rational::one() / f } else { f };
            (rest, c * f)
        });
        Ok(Self::from_terms(&self.table, &self.trunc, terms))
    }

    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        self.rebuild(
            self.trunc.clone(),
            self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        )
    }

    /// Homogeneous part of the given coupling degree.
    pub fn degree_part(&self, d: i64) -> Self {
        let b = self.bounds();
        self.filter(|m| b.grade(m) == d)
    }

    /// Coefficient of `var^e`, as a series with `var` removed.
    pub fn coefficient_in(&self, var: &str, e: i32) -> Result<Self> {
        let i = self.table.require(var)?;
        Ok(self.rebuild(
            self.trunc.clone(),
            self.terms
                .iter()
                .filter(|(m, _)| m.get(i) == e)
                .map(|(m, c)| {
                    let mut r = m.clone();
                    r.set(i, 0);
                    (r, c.clone())
                })
                .collect(),
        ))
    }

    pub fn exponent_range(&self, var: &str) -> Result<Option<(i32, i32)>> {
        let i = self.table.require(var)?;
        let it = self.terms.keys().map(|m| m.get(i));
        Ok(it.clone().min().zip(it.max()))
    }

    /// Exact division by `var^e`; fails if some term is not divisible.
    pub fn div_var(&self, var: &str, e: i32) -> Result<Self> {
        let i = self.table.require(var)?;
        let laurent = self.table.var(i).laurent;
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut q = m.clone();
            q.set(i, m.get(i) - e);
            if q.get(i) < 0 && !laurent {
                return Err(Error::Consistency(format!(
                    "{} is not divisible by {var}^{e}",
                    self.fmt_monomial(m)
                )));
            }
            terms.insert(q, c.clone());
        }
        Ok(Self::from_terms(&self.table, &self.trunc, terms))
    }

    pub fn max_grade(&self) -> Option<i64> {
        let b = self.bounds();
        self.terms.keys().map(|m| b.grade(m)).max()
    }

    pub fn min_grade(&self) -> Option<i64> {
        let b = self.bounds();
        self.terms.keys().map(|m| b.grade(m)).min()
    }

    /// Moves the series into another table, mapping each `(name, exponent)` pair.
    /// The mapper returns `None` to fail on a pair it cannot express.
    pub fn reindex(
        &self,
        table: &Arc<VarTable>,
        trunc: &TruncationPolicy,
        map: impl Fn(&str, i32) -> Option<(String, i32)>,
    ) -> Result<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut out = Monomial::one(table.len());
            for (v, &e) in self.table.vars().iter().zip(m.exps()) {
                if e == 0 {
                    continue;
                }
                let (name, f) = map(&v.name, e).ok_or_else(|| {
                    Error::Consistency(format!("cannot map {}^{e} in {}", v.name, self.fmt_monomial(m)))
                })?;
                let j = table.require(&name)?;
                out.set(j, out.get(j) + f);
            }
            terms.push((out, c.clone()));
        }
        Ok(Self::from_terms(table, trunc, terms))
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&Monomial, &Rational) -> Rational) -> Self {
        let mut terms: BTreeMap<Monomial, Rational> =
            self.terms.iter().map(|(m, c)| (m.clone(), f(m, c))).collect();
        terms.retain(|_, c| !c.is_zero());
        self.rebuild(self.trunc.clone(), terms)
    }

    /// Terms sorted by coupling grade, then by exponent vector.
    pub fn graded_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let b = self.bounds();
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, c| b.grade(a.0).cmp(&b.grade(c.0)).then_with(|| a.0.cmp(c.0)));
        v
    }

    pub fn fmt_monomial(&self, m: &Monomial) -> String {
        fmt_monomial(&self.table, m, false)
    }

    /// Human-readable rendering. With `two_n` every power of `N` is shown as a power
    /// of `(2N)` and the coefficient adjusted.
    pub fn to_plain(&self, two_n: bool) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let n_idx = self.table.index("N");
        let mut out = String::new();
        for (i, (m, c)) in self.graded_terms().into_iter().enumerate() {
            let mut c = c.clone();
            if two_n {
                if let Some(k) = n_idx {
                    c /= super::rational::pow2(m.get(k) as i64);
                }
            }
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = fmt_monomial(&self.table, m, two_n);
            match (a.is_one(), mono.is_empty()) {
                (true, true) => out.push('1'),
                (true, false) => out.push_str(&mono),
                (false, true) => out.push_str(&a.to_string()),
                (false, false) => {
                    out.push_str(&a.to_string());
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
        out
    }
}

pub(crate) fn fmt_monomial(table: &VarTable, m: &Monomial, two_n: bool) -> String {
    let mut parts = Vec::new();
    for (v, &e) in table.vars().iter().zip(m.exps()) {
        if e == 0 {
            continue;
        }
        let name = if two_n && v.name == "N" { "(2N)" } else { v.name.as_str() };
        if e == 1 {
            parts.push(name.to_string());
        } else {
            parts.push(format!("{name}^{e}"));
        }
    }
    parts.join("*")
}

impl fmt::Display for PSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_plain(false))
    }
}

struct UnitSplit {
    eps: PSeries,
    lead_mono: Monomial,
    lead_coeff: Rational,
    outer: TruncationPolicy,
    safe: bool,
}

impl UnitSplit {
    fn mul(&self, a: &PSeries, b: &PSeries, grading: &[i64], max_rel: i64) -> PSeries {
        let bounds = a.bounds();
        let terms = if self.safe {
            mul_keyed(a, b, grading, Some(max_rel), |m| bounds.admits(m))
        } else {
            mul_keyed(a, b, grading, Some(max_rel), |_| true)
        };
        a.rebuild(a.trunc.clone(), terms)
    }

    fn finish(&self, acc: PSeries, mono: &Monomial, c: &Rational) -> PSeries {
        PSeries::from_terms(&acc.table, &self.outer, acc.terms.iter().map(|(m, v)| (m.mul(mono), v * c)))
    }
}

fn accumulate(map: &mut BTreeMap<Monomial, Rational>, m: Monomial, c: Rational) {
    match map.get_mut(&m) {
        Some(v) => *v += c,
        None => {
            map.insert(m, c);
        }
    }
}

/// Product keeping only pairs whose summed `key` weight stays within `limit`.
fn mul_keyed(
    a: &PSeries,
    b: &PSeries,
    key: &[i64],
    limit: Option<i64>,
    admits: impl Fn(&Monomial) -> bool,
) -> BTreeMap<Monomial, Rational> {
    let mut bs: Vec<(i64, &Monomial, &Rational)> = b.terms.iter().map(|(m, c)| (m.weight(key), m, c)).collect();
    bs.sort_by_key(|x| x.0);
    let mut acc: HashMap<Monomial, Rational> = HashMap::new();
    for (ma, ca) in &a.terms {
        let wa = ma.weight(key);
        for &(wb, mb, cb) in &bs {
            if let Some(l) = limit {
                if wa + wb > l {
                    break;
                }
            }
            let m = ma.mul(mb);
            if !admits(&m) {
                continue;
            }
            let p = ca * cb;
            match acc.get_mut(&m) {
                Some(v) => *v += p,
                None => {
                    acc.insert(m, p);
                }
            }
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

macro_rules! binop {
    ($tr:ident, $f:ident, $checked:ident) => {
        impl std::ops::$tr<&PSeries> for &PSeries {
            type Output = PSeries;
            fn $f(self, rhs: &PSeries) -> PSeries {
                self.$checked(rhs).expect("series operands must share a variable table")
            }
        }
        impl std::ops::$tr<PSeries> for PSeries {
            type Output = PSeries;
            fn $f(self, rhs: PSeries) -> PSeries {
                (&self).$checked(&rhs).expect("series operands must share a variable table")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl std::ops::Neg for &PSeries {
    type Output = PSeries;
    fn neg(self) -> PSeries {
        PSeries::neg(self)
    }
}

impl std::ops::Neg for PSeries {
    type Output = PSeries;
    fn neg(self) -> PSeries {
        PSeries::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational::rat;

    fn setup(names: &[&str], d: u32) -> (Arc<VarTable>, TruncationPolicy) {
        (VarTable::standard(names).unwrap(), TruncationPolicy::degree(d))
    }

    #[test]
    fn difference_of_squares() {
        let (tb, tr) = setup(&["g1"], 2);
        let one = PSeries::constant(&tb, &tr, int(1));
        let g = PSeries::var(&tb, &tr, "g1").unwrap();
        let p = &(&one + &g) * &(&one - &g);
        assert_eq!(p, &one - &g.pow(2));
    }

    #[test]
    fn additive_inverse() {
        let (tb, tr) = setup(&["g1", "g2"], 3);
        let a = &PSeries::var(&tb, &tr, "g1").unwrap() + &PSeries::constant(&tb, &tr, rat(2, 3));
        assert!((&a + &a.neg()).is_zero());
    }

    #[test]
    fn geometric_series() {
        let (tb, tr) = setup(&["g2"], 5);
        let g = PSeries::var(&tb, &tr, "g2").unwrap();
        let inv = (&g.one_like() - &g).invert().unwrap();
        for k in 0..=5 {
            assert_eq!(inv.coeff_of(&[("g2", k)]).unwrap(), int(1));
        }
        assert!(inv.coeff_of(&[("g2", 6)]).is_err());
    }

    #[test]
    fn sqrt_gives_catalan() {
        let tb = VarTable::standard(&["x"]).unwrap();
        let tr = TruncationPolicy::unbounded().cap("x", 8);
        let x = PSeries::var(&tb, &tr, "x").unwrap();
        let r = (&x.one_like() - &x.scale(&int(4))).sqrt(Sign::Plus).unwrap();
        let expect = [1, -2, -2, -4, -10, -28, -84, -264, -858];
        for (k, e) in expect.iter().enumerate() {
            assert_eq!(r.coeff_of(&[("x", k as i32)]).unwrap(), int(*e));
        }
    }

    #[test]
    fn perfect_square_root() {
        let tb = VarTable::standard(&["g1", "z"]).unwrap();
        let tr = TruncationPolicy::degree(4);
        let z = PSeries::var(&tb, &tr, "z").unwrap();
        let g = PSeries::var(&tb, &tr, "g1").unwrap();
        let d = &z - &g;
        let grading = [1, -1];
        let r = d.pow(2).sqrt_graded(&grading, 10, Sign::Plus).unwrap();
        assert_eq!(r, d);
    }

    #[test]
    fn non_square_lead_is_branch_error() {
        let (tb, tr) = setup(&["g1"], 3);
        let a = PSeries::constant(&tb, &tr, int(2));
        assert!(matches!(a.sqrt(Sign::Plus), Err(Error::Branch(_))));
        assert!(matches!(a.zero_like().invert(), Err(Error::NonUnit(_))));
    }

    #[test]
    fn substitution_and_evaluation() {
        let (tb, tr) = setup(&["g1", "g2"], 4);
        let g1 = PSeries::var(&tb, &tr, "g1").unwrap();
        let g2 = PSeries::var(&tb, &tr, "g2").unwrap();
        let a = &g1 * &(&g1.one_like() - &g2).invert().unwrap();
        assert!(a.substitute("g1", &g1.zero_like()).unwrap().is_zero());
        assert!(matches!(a.substitute("g2", &g1.one_like()), Err(Error::Divergence(_))));
        let e = a.evaluate("g2", &rat(1, 2)).unwrap();
        assert_eq!(e.coeff_of(&[("g1", 1)]).unwrap(), rat(15, 8));
    }

    #[test]
    fn plain_rendering() {
        let tb = VarTable::standard(&["N", "v"]).unwrap();
        let tr = TruncationPolicy::unbounded();
        let a = PSeries::monomial(&tb, &tr, &[("N", 2), ("v", 3)], int(-4)).unwrap();
        let b = PSeries::monomial(&tb, &tr, &[("v", 1)], rat(1, 2)).unwrap();
        assert_eq!((&a + &b).to_plain(false), "1/2*v - 4*N^2*v^3");
        assert_eq!(a.to_plain(true), "-(2N)^2*v^3");
    }
}
