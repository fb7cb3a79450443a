//! Coupling frames and the renormalized couplings `I_0`, `I_k`.
//!
//! The three frames are related by `g_n = t_{n-1}/(n-1)! = n T_n`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::lagrange;
use crate::series::rational::{big, factorial, int, parse_rational};
use crate::series::{PSeries, Rational, TruncationPolicy, VarTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrameTag {
    /// `g_n`, `n >= 1`.
    G,
    /// `t_n`, `n >= 0`.
    T,
    /// `T_n`, `n >= 1`.
    Cap,
}

impl FrameTag {
    pub fn prefix(self) -> &'static str {
        match self {
            FrameTag::G => "g",
            FrameTag::T => "t",
            FrameTag::Cap => "T",
        }
    }

    fn g_index(self, i: usize) -> usize {
        match self {
            FrameTag::T => i + 1,
            _ => i,
        }
    }

    fn own_index(self, n: usize) -> usize {
        match self {
            FrameTag::T => n - 1,
            _ => n,
        }
    }

    /// Factor `r` with `g_n = r · value`.
    fn g_factor(self, n: usize) -> Rational {
        match self {
            FrameTag::G => Rational::one(),
            FrameTag::T => Rational::new(BigInt::one(), factorial(n as u64 - 1)),
            FrameTag::Cap => int(n as i64),
        }
    }
}

/// Active couplings in one frame, each given as a series.
#[derive(Clone, Debug, PartialEq)]
pub struct CouplingFrame {
    tag: FrameTag,
    values: BTreeMap<usize, PSeries>,
    table: Arc<VarTable>,
    trunc: TruncationPolicy,
}

impl CouplingFrame {
    /// One symbolic variable per active index, named `g3`, `t2`, `T4`, ...
    pub fn symbolic(
        tag: FrameTag,
        table: &Arc<VarTable>,
        trunc: &TruncationPolicy,
        indices: &[usize],
    ) -> Result<Self> {
        let mut values = BTreeMap::new();
        for &i in indices {
            if tag != FrameTag::T && i == 0 {
                return Err(Error::Precondition(format!("{}0 is not a coupling", tag.prefix())));
            }
            let name = format!("{}{i}", tag.prefix());
            values.insert(i, PSeries::var(table, trunc, &name)?);
        }
        Ok(CouplingFrame { tag, values, table: table.clone(), trunc: trunc.clone() })
    }

    pub fn from_values(
        tag: FrameTag,
        table: &Arc<VarTable>,
        trunc: &TruncationPolicy,
        values: BTreeMap<usize, PSeries>,
    ) -> Self {
        CouplingFrame { tag, values, table: table.clone(), trunc: trunc.clone() }
    }

    pub fn tag(&self) -> FrameTag {
        self.tag
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn trunc(&self) -> &TruncationPolicy {
        &self.trunc
    }

    pub fn values(&self) -> &BTreeMap<usize, PSeries> {
        &self.values
    }

    pub fn zero(&self) -> PSeries {
        PSeries::zero(&self.table, &self.trunc)
    }

    /// Active indices in the `g` numbering.
    pub fn g_indices(&self) -> Vec<usize> {
        self.values.keys().map(|&i| self.tag.g_index(i)).collect()
    }

    pub fn max_g_index(&self) -> usize {
        self.g_indices().into_iter().max().unwrap_or(0)
    }

    /// `g_n` as a series (zero when inactive).
    pub fn g(&self, n: usize) -> PSeries {
        if n == 0 {
            return self.zero();
        }
        match self.values.get(&self.tag.own_index(n)) {
            Some(v) => v.scale(&self.tag.g_factor(n)),
            None => self.zero(),
        }
    }

    /// `t_n = n! g_{n+1}`.
    pub fn t(&self, n: usize) -> PSeries {
        self.g(n + 1).scale(&big(factorial(n as u64)))
    }

    pub fn to_frame(&self, tag: FrameTag) -> CouplingFrame {
        let values = self
            .g_indices()
            .into_iter()
            .map(|n| (tag.own_index(n), self.g(n).scale(&(Rational::one() / tag.g_factor(n)))))
            .collect();
        CouplingFrame { tag, values, table: self.table.clone(), trunc: self.trunc.clone() }
    }

    pub fn with_trunc(&self, trunc: &TruncationPolicy) -> CouplingFrame {
        CouplingFrame {
            tag: self.tag,
            values: self.values.iter().map(|(&k, v)| (k, v.with_trunc(trunc))).collect(),
            table: self.table.clone(),
            trunc: trunc.clone(),
        }
    }

    /// Moves every value into `table` (same variable names required).
    pub fn rehome(&self, table: &Arc<VarTable>, trunc: &TruncationPolicy) -> Result<CouplingFrame> {
        let mut values = BTreeMap::new();
        for (&k, v) in &self.values {
            values.insert(k, v.reindex(table, trunc, |n, e| Some((n.to_string(), e)))?);
        }
        Ok(CouplingFrame { tag: self.tag, values, table: table.clone(), trunc: trunc.clone() })
    }
}

/// `S'(z) = Σ_{n>=0} (g_{n+1} - δ_{n,1}) z^n`; the frame's table must hold `z`.
pub fn action_derivative(frame: &CouplingFrame) -> Result<PSeries> {
    let mut acc = frame.zero();
    for n in 0..frame.max_g_index().max(2) {
        let mut c = frame.g(n + 1);
        if n == 1 {
            c = &c - &c.one_like();
        }
        acc = &acc + &(&c * &c.monomial_like(&[("z", n as i32)], Rational::from_integer(1.into()))?);
    }
    Ok(acc)
}

/// One entry of a coupling literal such as `g3` or `g1=1/2`.
#[derive(Clone, Debug, PartialEq)]
pub struct CouplingSpec {
    pub index: usize,
    pub value: Option<Rational>,
}

/// Parses a comma list of `gK`, `gK=sym` or `gK=p/q`.
pub fn parse_couplings(s: &str) -> Result<Vec<CouplingSpec>> {
    let mut out: Vec<CouplingSpec> = Vec::new();
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let bad = |why: &str| Error::Parse(format!("bad coupling `{tok}`: {why}"));
        let (name, value) = match tok.split_once('=') {
            Some((n, v)) => (n.trim(), Some(v.trim())),
            None => (tok, None),
        };
        let index: usize = name
            .strip_prefix('g')
            .and_then(|d| d.parse().ok())
            .filter(|&k| k >= 1)
            .ok_or_else(|| bad("expected g<k> with k >= 1"))?;
        let value = match value {
            None | Some("sym") => None,
            Some(v) => Some(parse_rational(v).map_err(|_| bad("value is not a rational"))?),
        };
        if index == 2 && value == Some(Rational::one()) {
            return Err(Error::Domain("g2 = 1 is a phase transition point".into()));
        }
        if out.iter().any(|c| c.index == index) {
            return Err(bad("coupling listed twice"));
        }
        out.push(CouplingSpec { index, value });
    }
    out.sort_by_key(|c| c.index);
    Ok(out)
}

/// `I_0` to the given coupling degree, from the polymer equation
/// `I_0 = Σ_{n>=0} g_{n+1} I_0^n`, iterated from zero.
pub fn compute_i0(frame: &CouplingFrame, degree: u32) -> PSeries {
    let trunc = frame.trunc().tightest(&TruncationPolicy::degree(degree));
    let frame = frame.with_trunc(&trunc);
    let k = frame.max_g_index();
    let gs: Vec<PSeries> = (0..=k).map(|n| frame.g(n)).collect();
    let mut i0 = frame.zero();
    for _ in 0..degree {
        let mut acc = gs[k].clone();
        for j in (1..k).rev() {
            acc = &(&acc * &i0) + &gs[j];
        }
        if acc == i0 {
            break;
        }
        i0 = acc;
    }
    i0
}

/// `I_k = Σ_{n>=0} t_{n+k} I_0^n / n!`.
pub fn compute_ik(frame: &CouplingFrame, k: usize, degree: u32) -> PSeries {
    let i0 = compute_i0(frame, degree);
    ik_from_i0(frame, &i0, k)
}

pub fn ik_from_i0(frame: &CouplingFrame, i0: &PSeries, k: usize) -> PSeries {
    let trunc = i0.trunc().clone();
    let frame = frame.with_trunc(&trunc);
    let top = frame.max_g_index();
    if k + 1 > top {
        return frame.zero();
    }
    // t_{n+k}/n! = (n+k)!/n! · g_{n+k+1}
    let coef = |n: usize| -> PSeries {
        let r = big(factorial((n + k) as u64)) / big(factorial(n as u64));
        frame.g(n + k + 1).scale(&r)
    };
    let nmax = top - k - 1;
    let mut acc = coef(nmax);
    for n in (0..nmax).rev() {
        acc = &(&acc * i0) + &coef(n);
    }
    acc
}

/// Second route to `I_0`: the Lagrange composition sum with `J_p = t_p`, at `v = 1`.
pub fn compute_i0_composition(frame: &CouplingFrame, degree: u32) -> PSeries {
    let trunc = frame.trunc().tightest(&TruncationPolicy::degree(degree));
    let frame = frame.with_trunc(&trunc);
    let top = frame.max_g_index();
    let j: Vec<PSeries> = (0..top).map(|p| frame.t(p)).collect();
    lagrange::composition_terms(&j, degree as usize)
        .into_iter()
        .fold(frame.zero(), |acc, s| &acc + &s)
}

/// `I_0` and the `I_k` it generates.
#[derive(Clone, Debug)]
pub struct RenormalizedCouplings {
    pub i0: PSeries,
    pub ik: BTreeMap<usize, PSeries>,
    pub computed_to: u32,
}

impl RenormalizedCouplings {
    pub fn compute(frame: &CouplingFrame, kmax: usize, degree: u32) -> Self {
        let i0 = compute_i0(frame, degree);
        let ik = (1..=kmax).map(|k| (k, ik_from_i0(frame, &i0, k))).collect();
        RenormalizedCouplings { i0, ik, computed_to: degree }
    }

    pub fn get(&self, k: usize) -> Option<&PSeries> {
        if k == 0 {
            Some(&self.i0)
        } else {
            self.ik.get(&k)
        }
    }
}

/// Unlabeled rooted tree; children kept as a sorted multiset.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RootedTree {
    children: Vec<RootedTree>,
}

impl RootedTree {
    pub fn leaf() -> Self {
        RootedTree { children: Vec::new() }
    }

    pub fn new(mut children: Vec<RootedTree>) -> Self {
        children.sort();
        RootedTree { children }
    }

    pub fn children(&self) -> &[RootedTree] {
        &self.children
    }

    pub fn vertices(&self) -> usize {
        1 + self.children.iter().map(|c| c.vertices()).sum::<usize>()
    }

    /// Product over vertices of the factorials of identical-child multiplicities.
    pub fn automorphisms(&self) -> BigInt {
        let mut acc: BigInt = self.children.iter().map(|c| c.automorphisms()).product();
        let mut i = 0;
        while i < self.children.len() {
            let mut j = i;
            while j < self.children.len() && self.children[j] == self.children[i] {
                j += 1;
            }
            acc *= factorial((j - i) as u64);
            i = j;
        }
        acc
    }

    fn weight(&self, frame: &CouplingFrame, extra: usize) -> PSeries {
        let own = frame.t(self.children.len() + extra);
        self.children.iter().fold(own, |acc, c| &acc * &c.weight(frame, 0))
    }

    /// All rooted trees with exactly `n` vertices, in canonical order.
    pub fn enumerate(n: usize) -> Vec<RootedTree> {
        let mut by_size: Vec<Vec<RootedTree>> = vec![Vec::new(), vec![RootedTree::leaf()]];
        for size in 2..=n {
            let mut out = Vec::new();
            // children as a non-increasing sequence of (size, index) pairs
            fn fill(
                by_size: &[Vec<RootedTree>],
                left: usize,
                max: (usize, usize),
                acc: &mut Vec<RootedTree>,
                out: &mut Vec<RootedTree>,
            ) {
                if left == 0 {
                    out.push(RootedTree::new(acc.clone()));
                    return;
                }
                for s in (1..=left.min(max.0)).rev() {
                    let top = if s == max.0 { max.1 } else { by_size[s].len() - 1 };
                    for i in (0..=top).rev() {
                        acc.push(by_size[s][i].clone());
                        fill(by_size, left - s, (s, i), acc, out);
                        acc.pop();
                    }
                }
            }
            let mut acc = Vec::new();
            fill(&by_size, size - 1, (size - 1, by_size[size - 1].len() - 1), &mut acc, &mut out);
            out.sort();
            by_size.push(out);
        }
        if n == 0 {
            Vec::new()
        } else {
            by_size.swap_remove(n)
        }
    }
}

/// Largest edge count the exhaustive tree enumeration accepts.
pub const MAX_TREE_EDGES: usize = 8;

/// Feynman sum over rooted trees of type `k`: the root carries `k` extra legs
/// besides the edge to the marked vertex, every vertex with `c` children (plus
/// legs) weighs `t_c`, and each tree counts with `1/(|Aut|·(k+1)!)`.
///
/// Through `max_edges` edges this reproduces `I_k/(k+1)!` to coupling degree
/// `max_edges - k`.
pub fn tree_oracle(k: usize, max_edges: usize, frame: &CouplingFrame) -> Result<PSeries> {
    if max_edges > MAX_TREE_EDGES {
        return Err(Error::Resource(format!(
            "tree enumeration is limited to {MAX_TREE_EDGES} edges, asked for {max_edges}"
        )));
    }
    let mut acc = frame.zero();
    let legs = big(factorial(k as u64 + 1));
    for vertices in 1..=max_edges.saturating_sub(k) {
        for tree in RootedTree::enumerate(vertices) {
            let w = tree.weight(frame, k);
            if w.is_zero() {
                continue;
            }
            acc = &acc + &w.scale(&(Rational::one() / (big(tree.automorphisms()) * &legs)));
        }
    }
    Ok(acc)
}

/// Checks that every coefficient of `I_k/k!` is an integer; returns offenders.
pub fn ik_integrality_violations(frame: &CouplingFrame, kmax: usize, degree: u32) -> Vec<String> {
    let rc = RenormalizedCouplings::compute(frame, kmax, degree);
    let mut bad = Vec::new();
    for k in 0..=kmax {
        let s = rc.get(k).expect("computed").scale(&(Rational::one() / big(factorial(k as u64))));
        for (m, c) in s.terms() {
            if !c.denom().is_one() {
                bad.push(format!("I_{k}/{k}!: {c}*{}", s.fmt_monomial(m)));
            }
        }
    }
    bad
}

/// Convenience: symbolic `g`-frame on a fresh table holding `g<i>` plus `extra`.
pub fn g_frame(indices: &[usize], extra: &[&str], degree: u32) -> Result<CouplingFrame> {
    let mut names: Vec<String> = indices.iter().map(|i| format!("g{i}")).collect();
    names.extend(extra.iter().map(|s| s.to_string()));
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let table = VarTable::standard(&refs)?;
    CouplingFrame::symbolic(FrameTag::G, &table, &TruncationPolicy::degree(degree), indices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational::rat;

    #[test]
    fn frame_round_trip() {
        let f = g_frame(&[1, 3, 4], &[], 4).unwrap();
        let t = f.to_frame(FrameTag::T);
        let back = t.to_frame(FrameTag::G);
        for n in 1..=4 {
            assert_eq!(back.g(n), f.g(n));
        }
        assert_eq!(t.values()[&2], f.g(3).scale(&int(2)));
        assert_eq!(f.to_frame(FrameTag::Cap).values()[&4], f.g(4).scale(&rat(1, 4)));
    }

    #[test]
    fn coupling_literals() {
        let v = parse_couplings("g3, g1=1/2,g4=sym").unwrap();
        assert_eq!(v.len(), 3);
        assert_eq!(v[0], CouplingSpec { index: 1, value: Some(rat(1, 2)) });
        assert_eq!(v[1].value, None);
        assert!(parse_couplings("h3").is_err());
        assert!(parse_couplings("g0").is_err());
        assert!(parse_couplings("g2=1").is_err());
        assert!(parse_couplings("g2=x").is_err());
    }

    #[test]
    fn i0_small_terms_in_t_frame() {
        let tb = VarTable::standard(&["t0", "t1", "t2"]).unwrap();
        let f = CouplingFrame::symbolic(FrameTag::T, &tb, &TruncationPolicy::degree(3), &[0, 1, 2]).unwrap();
        let i0 = compute_i0(&f, 3);
        assert_eq!(i0.coeff_of(&[("t0", 1)]).unwrap(), int(1));
        assert_eq!(i0.coeff_of(&[("t0", 1), ("t1", 1)]).unwrap(), int(1));
        assert_eq!(i0.coeff_of(&[("t0", 2), ("t2", 1)]).unwrap(), rat(1, 2));
        assert_eq!(i0.coeff_of(&[("t0", 1), ("t1", 2)]).unwrap(), int(1));
    }

    #[test]
    fn polymer_fixed_point() {
        let f = g_frame(&[1, 2, 3, 4], &[], 6).unwrap();
        let i0 = compute_i0(&f, 6);
        let rhs = (1..=4).fold(f.zero(), |acc, n| &acc + &(&f.g(n) * &i0.pow(n as u32 - 1)));
        assert_eq!(rhs, i0);
        assert_eq!(compute_i0_composition(&f, 6), i0);
    }

    #[test]
    fn trees() {
        let counts: Vec<usize> = (1..=8).map(|n| RootedTree::enumerate(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 9, 20, 48, 115]);
        let star = RootedTree::new(vec![RootedTree::leaf(); 3]);
        assert_eq!(star.automorphisms(), BigInt::from(6));
    }

    #[test]
    fn tree_figure_terms() {
        let tb = VarTable::standard(&["t0", "t1", "t2", "t3"]).unwrap();
        let f = CouplingFrame::symbolic(FrameTag::T, &tb, &TruncationPolicy::degree(6), &[0, 1, 2, 3]).unwrap();
        let t0 = tree_oracle(0, 3, &f).unwrap();
        assert_eq!(t0.coeff_of(&[("t0", 1), ("t1", 1)]).unwrap(), int(1));
        assert_eq!(t0.coeff_of(&[("t0", 2), ("t2", 1)]).unwrap(), rat(1, 2));
        let t1 = tree_oracle(1, 4, &f).unwrap();
        assert_eq!(t1.coeff_of(&[("t0", 1), ("t1", 1), ("t2", 1)]).unwrap(), rat(1, 2));
        assert!(matches!(tree_oracle(0, 9, &f), Err(Error::Resource(_))));
    }
}
