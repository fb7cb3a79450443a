//! Series JSON: `{"vars": [...], "terms": [{"coeff": "p/q", "exps": {...}}], "trunc": {...}}`.
//!
//! Terms are written in graded order so equal series serialize to equal bytes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::lseries::LSeries;
use super::pseries::PSeries;
use super::rational::parse_rational;
use super::vars::{Monomial, TruncationPolicy, Var, VarTable};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: String,
    exps: BTreeMap<String, i32>,
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    vars: Vec<Var>,
    terms: Vec<TermJson>,
    trunc: TruncationPolicy,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    laurent_var: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    floor: Option<i32>,
}

fn encode(a: &PSeries) -> SeriesJson {
    let table = a.table();
    let terms = a
        .graded_terms()
        .into_iter()
        .map(|(m, c)| TermJson {
            coeff: c.to_string(),
            exps: table
                .vars()
                .iter()
                .zip(m.exps())
                .filter(|(_, &e)| e != 0)
                .map(|(v, &e)| (v.name.clone(), e))
                .collect(),
        })
        .collect();
    SeriesJson { vars: table.vars().to_vec(), terms, trunc: a.trunc().clone(), laurent_var: None, floor: None }
}

fn decode(j: SeriesJson) -> Result<PSeries> {
    let table = VarTable::new(j.vars)?;
    j.trunc.compile(&table)?;
    let mut terms = Vec::with_capacity(j.terms.len());
    for t in j.terms {
        let pairs: Vec<(&str, i32)> = t.exps.iter().map(|(k, &v)| (k.as_str(), v)).collect();
        let m = Monomial::from_pairs(&table, &pairs)?;
        if !m.is_legal(&table) {
            return Err(Error::Parse(format!("negative exponent in non-Laurent variable: {:?}", t.exps)));
        }
        terms.push((m, parse_rational(&t.coeff)?));
    }
    let a = PSeries::from_terms(&table, &j.trunc, terms.clone());
    if a.len() != terms.len() {
        return Err(Error::Parse("terms repeat, vanish or violate the truncation".into()));
    }
    Ok(a)
}

pub fn to_json(a: &PSeries) -> String {
    serde_json::to_string(&encode(a)).expect("series JSON serializes")
}

pub fn from_json(s: &str) -> Result<PSeries> {
    decode(serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?)
}

pub fn lseries_to_json(a: &LSeries) -> String {
    let mut j = encode(a.body());
    j.laurent_var = Some(a.z_name().to_string());
    j.floor = a.floor();
    serde_json::to_string(&j).expect("series JSON serializes")
}

pub fn lseries_from_json(s: &str) -> Result<LSeries> {
    let j: SeriesJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    let (z, floor) = (j.laurent_var.clone(), j.floor);
    let z = z.ok_or_else(|| Error::Parse("missing `laurent_var`".into()))?;
    LSeries::new(decode(j)?, &z, floor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational::rat;

    #[test]
    fn round_trip() {
        let tb = VarTable::standard(&["g3", "t", "z"]).unwrap();
        let tr = TruncationPolicy::degree(5).cap("t", 4);
        let a = PSeries::monomial(&tb, &tr, &[("g3", 2), ("t", 4), ("z", -3)], rat(-7, 3)).unwrap();
        let b = PSeries::monomial(&tb, &tr, &[("t", 1)], rat(1, 1)).unwrap();
        let s = &a + &b;
        let text = to_json(&s);
        assert!(text.contains("\"coeff\":\"-7/3\""));
        let back = from_json(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.trunc(), s.trunc());
        assert_eq!(to_json(&back), text);

        let l = LSeries::new(s, "z", Some(-3)).unwrap();
        assert_eq!(lseries_from_json(&lseries_to_json(&l)).unwrap(), l);
    }

    #[test]
    fn rejects_garbage() {
        assert!(from_json("{}").is_err());
        let bad = r#"{"vars":[{"name":"x","weight":0,"laurent":false}],"terms":[{"coeff":"1","exps":{"x":-1}}],"trunc":{"max_coupling_degree":null}}"#;
        assert!(from_json(bad).is_err());
    }
}
