use std::collections::BTreeMap;

use super::pseries::PSeries;
use super::rational::Rational;
use super::vars::Monomial;
use crate::error::{Error, Result};

/// A series with a distinguished Laurent variable `z` and an exactness floor.
///
/// Coefficients of `z^k` are exact for `k >= floor`; below the floor the tail has
/// been discarded. `floor == None` means the whole series is exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LSeries {
    z: usize,
    floor: Option<i32>,
    body: PSeries,
}

impl LSeries {
    pub fn new(body: PSeries, z: &str, floor: Option<i32>) -> Result<Self> {
        let zi = body.table().require(z)?;
        if !body.table().var(zi).laurent {
            return Err(Error::Structural(format!("`{z}` is not a Laurent variable")));
        }
        let mut out = LSeries { z: zi, floor: None, body };
        if let Some(f) = floor {
            out = out.truncate_below(f);
        }
        Ok(out)
    }

    pub fn exact(body: PSeries, z: &str) -> Result<Self> {
        Self::new(body, z, None)
    }

    pub fn body(&self) -> &PSeries {
        &self.body
    }

    pub fn into_body(self) -> PSeries {
        self.body
    }

    pub fn floor(&self) -> Option<i32> {
        self.floor
    }

    pub fn z_name(&self) -> &str {
        &self.body.table().var(self.z).name
    }

    pub fn head(&self) -> Option<i32> {
        self.body.terms().map(|(m, _)| m.get(self.z)).max()
    }

    /// Drops every `z^k` with `k < f` and records the loss.
    pub fn truncate_below(&self, f: i32) -> Self {
        let floor = Some(self.floor.map_or(f, |g| g.max(f)));
        let z = self.z;
        LSeries { z, floor, body: self.body.filter(|m| m.get(z) >= f) }
    }

    fn like(&self, body: PSeries, floor: Option<i32>) -> Self {
        let out = LSeries { z: self.z, floor: None, body };
        match floor {
            Some(f) => out.truncate_below(f),
            None => out,
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.body.table() != other.body.table() || self.z != other.z {
            return Err(Error::Structural("Laurent series use different tables".into()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let floor = max_opt(self.floor, other.floor);
        Ok(self.like(self.body.checked_add(&other.body)?, floor))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LSeries { z: self.z, floor: self.floor, body: self.body.neg() }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        LSeries { z: self.z, floor: self.floor, body: self.body.scale(r) }
    }

    /// Product; the floor of the result is where an unknown tail of either factor
    /// could first reach.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let reach = |f: Option<i32>, h: Option<i32>| match (f, h) {
            (Some(f), Some(h)) => Some(f + h),
            _ => None,
        };
        let floor = max_opt(reach(self.floor, other.head()), reach(other.floor, self.head()));
        let (a, b) = match floor {
            Some(f) => {
                // Pre-prune pairs that can only land below the floor.
                let z = self.z;
                let bmax = other.head().unwrap_or(0);
                let amax = self.head().unwrap_or(0);
                (
                    self.body.filter(|m| m.get(z) + bmax >= f),
                    other.body.filter(|m| m.get(z) + amax >= f),
                )
            }
            None => (self.body.clone(), other.body.clone()),
        };
        Ok(self.like(a.checked_mul(&b)?, floor))
    }

    /// Coefficient of `z^k` as a series without `z`.
    pub fn coeff_z(&self, k: i32) -> Result<PSeries> {
        if let Some(f) = self.floor {
            if k < f {
                return Err(Error::OutOfOrder(format!(
                    "{}^{k} lies below the exact floor {f}",
                    self.z_name()
                )));
            }
        }
        self.body.coefficient_in(self.z_name(), k)
    }

    pub fn coeff(&self, m: &Monomial) -> Result<Rational> {
        if let Some(f) = self.floor {
            if m.get(self.z) < f {
                return Err(Error::OutOfOrder(format!("{} lies below the exact floor", self.body.fmt_monomial(m))));
            }
        }
        self.body.coeff(m)
    }

    /// `(plus, minus)` with `z`-exponents `>= 0` and `< 0`; `plus + minus == self`.
    pub fn laurent_split(&self) -> (LSeries, LSeries) {
        let z = self.z;
        let plus = self.body.filter(|m| m.get(z) >= 0);
        let minus = self.body.filter(|m| m.get(z) < 0);
        let plus_floor = self.floor.filter(|&f| f > 0);
        (
            LSeries { z, floor: plus_floor, body: plus },
            LSeries { z, floor: self.floor, body: minus },
        )
    }

    /// Exponents of `z` in `[lo, hi]` mapped to their coefficients.
    pub fn z_coefficients(&self, lo: i32, hi: i32) -> Result<BTreeMap<i32, PSeries>> {
        (lo..=hi).map(|k| Ok((k, self.coeff_z(k)?))).collect()
    }

    /// `true` when the two agree on every exponent both know exactly.
    pub fn agrees_with(&self, other: &Self) -> Result<bool> {
        self.check(other)?;
        let f = max_opt(self.floor, other.floor);
        let z = self.z;
        let keep = |m: &Monomial| f.is_none_or(|f| m.get(z) >= f);
        Ok(self.body.filter(keep) == other.body.filter(keep))
    }
}

fn max_opt(a: Option<i32>, b: Option<i32>) -> Option<i32> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.max(b)),
        (a, b) => a.or(b),
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $checked:ident) => {
        impl std::ops::$tr<&LSeries> for &LSeries {
            type Output = LSeries;
            fn $f(self, rhs: &LSeries) -> LSeries {
                self.$checked(rhs).expect("Laurent operands must share a table")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
