use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Var {
    pub name: String,
    pub weight: u32,
    pub laurent: bool,
}

impl Var {
    pub fn new(name: &str, weight: u32, laurent: bool) -> Self {
        Var { name: name.to_string(), weight, laurent }
    }

    /// The default declaration for a name: coupling symbols `g<k>`, `t<k>`, `T<k>`
    /// carry weight 1, `s` and `z` may go negative, everything else is plain.
    pub fn standard(name: &str) -> Self {
        let indexed = |p: char| {
            name.len() > 1 && name.starts_with(p) && name[1..].bytes().all(|b| b.is_ascii_digit())
        };
        if indexed('g') || indexed('t') || indexed('T') {
            return Var::new(name, 1, false);
        }
        match name {
            "s" | "z" => Var::new(name, 0, true),
            _ => Var::new(name, 0, false),
        }
    }
}

/// Ordered variable declarations shared by every series of one computation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarTable {
    vars: Vec<Var>,
}

impl VarTable {
    pub fn new(vars: Vec<Var>) -> Result<Arc<Self>> {
        for (i, v) in vars.iter().enumerate() {
            if v.name.is_empty() {
                return Err(Error::Structural("empty variable name".into()));
            }
            if vars[..i].iter().any(|w| w.name == v.name) {
                return Err(Error::Structural(format!("duplicate variable `{}`", v.name)));
            }
        }
        let has = |n: &str| vars.iter().any(|v| v.name == n);
        if has("s") && has("t") {
            return Err(Error::Structural("`s` and `t` cannot share a table".into()));
        }
        Ok(Arc::new(VarTable { vars }))
    }

    pub fn standard(names: &[&str]) -> Result<Arc<Self>> {
        Self::new(names.iter().map(|n| Var::standard(n)).collect())
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn var(&self, i: usize) -> &Var {
        &self.vars[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index(name)
            .ok_or_else(|| Error::Structural(format!("unknown variable `{name}`")))
    }

    pub fn grade(&self, m: &Monomial) -> i64 {
        self.vars
            .iter()
            .zip(m.exps())
            .map(|(v, &e)| v.weight as i64 * e as i64)
            .sum()
    }
}

/// Exponent vector aligned with a [`VarTable`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(SmallVec<[i32; 8]>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(SmallVec::from_elem(0, n))
    }

    pub fn from_exps(exps: &[i32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn from_pairs(table: &VarTable, pairs: &[(&str, i32)]) -> Result<Self> {
        let mut m = Monomial::one(table.len());
        for &(name, e) in pairs {
            m.0[table.require(name)?] += e;
        }
        Ok(m)
    }

    pub fn exps(&self) -> &[i32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> i32 {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, e: i32) {
        self.0[i] = e;
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn inv(&self) -> Monomial {
        Monomial(self.0.iter().map(|a| -a).collect())
    }

    pub fn pow(&self, k: i32) -> Monomial {
        Monomial(self.0.iter().map(|a| a * k).collect())
    }

    pub fn weight(&self, grading: &[i64]) -> i64 {
        self.0.iter().zip(grading).map(|(&e, &w)| e as i64 * w).sum()
    }

    /// Negative exponents only where the table allows them.
    pub fn is_legal(&self, table: &VarTable) -> bool {
        self.0.iter().zip(table.vars()).all(|(&e, v)| e >= 0 || v.laurent)
    }
}

/// Truncation caps: total coupling degree plus per-variable maximum exponents.
///
/// Caps apply to non-Laurent variables only; tails in a Laurent variable are
/// tracked by [`crate::series::LSeries`].
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct TruncationPolicy {
    pub max_coupling_degree: Option<u32>,
    #[serde(default)]
    pub max_aux_degree: BTreeMap<String, i32>,
}

impl TruncationPolicy {
    pub fn unbounded() -> Self {
        Self::default()
    }

    pub fn degree(d: u32) -> Self {
        TruncationPolicy { max_coupling_degree: Some(d), max_aux_degree: BTreeMap::new() }
    }

    pub fn cap(mut self, name: &str, e: i32) -> Self {
        self.max_aux_degree.insert(name.to_string(), e);
        self
    }

    pub fn tightest(&self, other: &Self) -> Self {
        let max_coupling_degree = match (self.max_coupling_degree, other.max_coupling_degree) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        let mut max_aux_degree = self.max_aux_degree.clone();
        for (k, &v) in &other.max_aux_degree {
            max_aux_degree.entry(k.clone()).and_modify(|e| *e = (*e).min(v)).or_insert(v);
        }
        TruncationPolicy { max_coupling_degree, max_aux_degree }
    }

    pub(crate) fn compile(&self, table: &VarTable) -> Result<Bounds> {
        let mut caps = vec![None; table.len()];
        for (name, &e) in &self.max_aux_degree {
            let i = table.require(name)?;
            if table.var(i).laurent {
                return Err(Error::Structural(format!("cannot cap Laurent variable `{name}`")));
            }
            caps[i] = Some(e);
        }
        Ok(Bounds {
            max_degree: self.max_coupling_degree.map(i64::from),
            weights: table.vars().iter().map(|v| v.weight as i64).collect(),
            caps,
        })
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Bounds {
    pub max_degree: Option<i64>,
    pub weights: Vec<i64>,
    pub caps: Vec<Option<i32>>,
}

impl Bounds {
    pub fn grade(&self, m: &Monomial) -> i64 {
        m.weight(&self.weights)
    }

    pub fn admits(&self, m: &Monomial) -> bool {
        if let Some(d) = self.max_degree {
            if self.grade(m) > d {
                return false;
            }
        }
        self.caps
            .iter()
            .zip(m.exps())
            .all(|(c, &e)| c.is_none_or(|c| e <= c))
    }

    /// Grading used by the default `invert`/`sqrt`: coupling weight plus one per
    /// unit of every capped variable.
    pub fn measure_grading(&self) -> Vec<i64> {
        self.weights
            .iter()
            .zip(&self.caps)
            .map(|(&w, c)| if c.is_some() { w + 1 } else { w })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_names() {
        assert_eq!(Var::standard("g12").weight, 1);
        assert_eq!(Var::standard("t").weight, 0);
        assert!(Var::standard("z").laurent);
        assert!(!Var::standard("N").laurent);
    }

    #[test]
    fn table_rejects_s_with_t() {
        assert!(VarTable::standard(&["s", "t"]).is_err());
        assert!(VarTable::standard(&["g1", "g1"]).is_err());
    }

    #[test]
    fn tightest_policy() {
        let a = TruncationPolicy::degree(4).cap("v", 8);
        let b = TruncationPolicy::degree(6).cap("v", 5).cap("t", 2);
        let c = a.tightest(&b);
        assert_eq!(c.max_coupling_degree, Some(4));
        assert_eq!(c.max_aux_degree["v"], 5);
        assert_eq!(c.max_aux_degree["t"], 2);
    }
}
