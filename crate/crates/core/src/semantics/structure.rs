use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::SemanticsError;
use crate::models::AffineModel;
use crate::syntax::Theory;

pub const STRUCTURE_SCHEMA: &str = "chulogic.structure/v1";

#[derive(Clone, Debug, PartialEq)]
pub struct PredTable<E> {
    pub name: String,
    pub arg_sorts: Vec<String>,
    pub affirmative: bool,
    /// Existence predicates default to top: a domain lists existing elements.
    pub existence: bool,
    dims: Vec<usize>,
    pub values: Vec<E>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuncTable {
    pub name: String,
    pub arg_sorts: Vec<String>,
    pub result: String,
    dims: Vec<usize>,
    pub values: Vec<usize>,
}

fn flat_index(dims: &[usize], tuple: &[usize]) -> usize {
    tuple.iter().zip(dims).fold(0, |acc, (&t, &d)| acc * d + t)
}

fn unflatten(dims: &[usize], mut idx: usize) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        out[k] = idx % dims[k];
        idx /= dims[k];
    }
    out
}

impl<E: Copy> PredTable<E> {
    pub fn get(&self, tuple: &[usize]) -> E {
        self.values[flat_index(&self.dims, tuple)]
    }
    pub fn set(&mut self, tuple: &[usize], v: E) {
        let i = flat_index(&self.dims, tuple);
        self.values[i] = v;
    }
    pub fn index_of(&self, tuple: &[usize]) -> usize {
        flat_index(&self.dims, tuple)
    }
    pub fn tuple_of(&self, idx: usize) -> Vec<usize> {
        unflatten(&self.dims, idx)
    }
}

impl FuncTable {
    pub fn get(&self, tuple: &[usize]) -> usize {
        self.values[flat_index(&self.dims, tuple)]
    }
    pub fn tuple_of(&self, idx: usize) -> Vec<usize> {
        unflatten(&self.dims, idx)
    }
}

/// A finite first-order structure valued in a model's carrier.
///
/// Constants are nullary function tables.
#[derive(Clone, Debug, PartialEq)]
pub struct Structure<E> {
    pub model: String,
    pub domains: Vec<(String, Vec<String>)>,
    pub preds: Vec<PredTable<E>>,
    pub funcs: Vec<FuncTable>,
}

/// Default element names: the sort's lowercased initial plus an index.
pub fn element_names(sort: &str, n: usize) -> Vec<String> {
    let stem: String = sort.chars().next().map(|c| c.to_ascii_lowercase()).into_iter().collect();
    (0..n).map(|i| format!("{stem}{i}")).collect()
}

impl<E: Copy + PartialEq> Structure<E> {
    /// Builds a structure for `sig` with every sort of size `sizes[sort]`
    /// (default 1); predicate cells start at `fill`, existence cells at `top`,
    /// function cells at element 0.
    pub fn new(model: &str, sig: &Theory, sizes: &BTreeMap<String, usize>, fill: E, top: E) -> Self {
        let domains: Vec<(String, Vec<String>)> =
            sig.sorts.iter().map(|s| (s.clone(), element_names(s, sizes.get(s).copied().unwrap_or(1)))).collect();
        let size = |s: &String| domains.iter().find(|(d, _)| d == s).map_or(0, |(_, els)| els.len());
        let preds = sig
            .preds
            .iter()
            .map(|p| {
                let dims: Vec<usize> = p.arg_sorts.iter().map(size).collect();
                let existence = sig.is_existence(&p.name);
                let n = dims.iter().product();
                PredTable {
                    name: p.name.clone(),
                    arg_sorts: p.arg_sorts.clone(),
                    affirmative: p.affirmative,
                    existence,
                    values: vec![if existence { top } else { fill }; n],
                    dims,
                }
            })
            .collect();
        let mut funcs: Vec<FuncTable> = sig
            .funcs
            .iter()
            .map(|f| {
                let dims: Vec<usize> = f.arg_sorts.iter().map(size).collect();
                FuncTable {
                    name: f.name.clone(),
                    arg_sorts: f.arg_sorts.clone(),
                    result: f.result.clone(),
                    values: vec![0; dims.iter().product()],
                    dims,
                }
            })
            .collect();
        funcs.extend(sig.consts.iter().map(|(c, s)| FuncTable {
            name: c.clone(),
            arg_sorts: vec![],
            result: s.clone(),
            dims: vec![],
            values: vec![0],
        }));
        Structure { model: model.to_string(), domains, preds, funcs }
    }

    pub fn domain(&self, sort: &str) -> Option<&[String]> {
        self.domains.iter().find(|(s, _)| s == sort).map(|(_, d)| d.as_slice())
    }

    pub fn pred(&self, name: &str) -> Option<&PredTable<E>> {
        self.preds.iter().find(|p| p.name == name)
    }

    pub fn pred_mut(&mut self, name: &str) -> Option<&mut PredTable<E>> {
        self.preds.iter_mut().find(|p| p.name == name)
    }

    pub fn func(&self, name: &str) -> Option<&FuncTable> {
        self.funcs.iter().find(|f| f.name == name)
    }

    pub fn func_mut(&mut self, name: &str) -> Option<&mut FuncTable> {
        self.funcs.iter_mut().find(|f| f.name == name)
    }

    pub fn element_name(&self, sort: &str, idx: usize) -> String {
        self.domain(sort).and_then(|d| d.get(idx)).cloned().unwrap_or_else(|| format!("#{idx}"))
    }

    fn element_index(&self, sort: &str, name: &str) -> Result<usize, SemanticsError> {
        let dom = self.domain(sort).ok_or_else(|| SemanticsError::UnknownSort(sort.to_string()))?;
        dom.iter().position(|e| e == name).ok_or_else(|| SemanticsError::BadElement(name.to_string(), sort.to_string()))
    }

    fn tuple_key(&self, sorts: &[String], tuple: &[usize]) -> String {
        sorts.iter().zip(tuple).map(|(s, &i)| self.element_name(s, i)).collect::<Vec<_>>().join(",")
    }

    fn parse_key(&self, sorts: &[String], key: &str) -> Result<Vec<usize>, SemanticsError> {
        let parts: Vec<&str> = if key.trim().is_empty() { vec![] } else { key.split(',').map(str::trim).collect() };
        if parts.len() != sorts.len() {
            return Err(SemanticsError::Json(format!("tuple `{key}` has {} components, expected {}", parts.len(), sorts.len())));
        }
        sorts.iter().zip(parts).map(|(s, p)| self.element_index(s, p)).collect()
    }

    /// Checks that affirmative predicates hold values fixed by `!`.
    pub fn check_affirmative<M: AffineModel<Elem = E>>(&self, m: &M) -> Result<(), SemanticsError> {
        for p in self.preds.iter().filter(|p| p.affirmative) {
            for (i, &v) in p.values.iter().enumerate() {
                if m.bang(v) != v {
                    return Err(SemanticsError::NotAffirmative {
                        pred: p.name.clone(),
                        tuple: self.tuple_key(&p.arg_sorts, &p.tuple_of(i)),
                        value: m.format_elem(v),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn to_json<M: AffineModel<Elem = E>>(&self, m: &M) -> StructureJson {
        let domains = self.domains.iter().map(|(s, d)| (s.clone(), d.clone())).collect();
        let preds = self
            .preds
            .iter()
            .map(|p| {
                let rows =
                    p.values.iter().enumerate().map(|(i, &v)| (self.tuple_key(&p.arg_sorts, &p.tuple_of(i)), m.format_elem(v))).collect();
                (p.name.clone(), rows)
            })
            .collect();
        let mut funcs = BTreeMap::new();
        let mut consts = BTreeMap::new();
        for f in &self.funcs {
            if f.arg_sorts.is_empty() {
                consts.insert(f.name.clone(), self.element_name(&f.result, f.values[0]));
            } else {
                let rows = f
                    .values
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| (self.tuple_key(&f.arg_sorts, &f.tuple_of(i)), self.element_name(&f.result, v)))
                    .collect();
                funcs.insert(f.name.clone(), rows);
            }
        }
        StructureJson { schema: STRUCTURE_SCHEMA.to_string(), model: self.model.clone(), domains, preds, funcs, consts }
    }
}

/// On-disk form of a structure; table keys are comma-joined element names.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructureJson {
    pub schema: String,
    pub model: String,
    pub domains: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub preds: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default)]
    pub funcs: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default)]
    pub consts: BTreeMap<String, String>,
}

/// Loads a structure for `sig` valued in `m`. Every table must be total,
/// except existence predicates, which default to top.
pub fn load_structure<M: AffineModel>(json: &str, sig: &Theory, m: &M) -> Result<Structure<M::Elem>, SemanticsError> {
    let raw: StructureJson = serde_json::from_str(json).map_err(|e| SemanticsError::Json(e.to_string()))?;
    if raw.schema != STRUCTURE_SCHEMA {
        return Err(SemanticsError::Json(format!("unsupported schema `{}`", raw.schema)));
    }
    let mut sizes = BTreeMap::new();
    for s in &sig.sorts {
        let d = raw.domains.get(s).ok_or_else(|| SemanticsError::Json(format!("no domain for sort `{s}`")))?;
        sizes.insert(s.clone(), d.len());
    }
    let mut st = Structure::new(&m.id(), sig, &sizes, m.bot(), m.top());
    for (s, d) in st.domains.iter_mut() {
        *d = raw.domains[s].clone();
    }
    for name in raw.preds.keys().chain(raw.funcs.keys()).chain(raw.consts.keys()) {
        if st.pred(name).is_none() && st.func(name).is_none() {
            return Err(SemanticsError::UnknownSymbol(name.clone()));
        }
    }
    for pi in 0..st.preds.len() {
        let (name, sorts, existence) = {
            let p = &st.preds[pi];
            (p.name.clone(), p.arg_sorts.clone(), p.existence)
        };
        let rows = raw.preds.get(&name);
        let mut seen = vec![false; st.preds[pi].values.len()];
        if let Some(rows) = rows {
            for (key, val) in rows {
                let tuple = st.parse_key(&sorts, key)?;
                let v = m.parse_elem(val)?;
                let idx = st.preds[pi].index_of(&tuple);
                st.preds[pi].values[idx] = v;
                seen[idx] = true;
            }
        }
        if !existence {
            if let Some(i) = seen.iter().position(|s| !s) {
                let t = st.preds[pi].tuple_of(i);
                return Err(SemanticsError::IncompleteTable { table: name, tuple: st.tuple_key(&sorts, &t) });
            }
        }
    }
    for fi in 0..st.funcs.len() {
        let (name, sorts, result) = {
            let f = &st.funcs[fi];
            (f.name.clone(), f.arg_sorts.clone(), f.result.clone())
        };
        if sorts.is_empty() {
            let v = raw.consts.get(&name).ok_or_else(|| SemanticsError::IncompleteTable { table: name.clone(), tuple: String::new() })?;
            st.funcs[fi].values[0] = st.element_index(&result, v)?;
            continue;
        }
        let rows = raw.funcs.get(&name);
        let mut seen = vec![false; st.funcs[fi].values.len()];
        for (key, val) in rows.into_iter().flatten() {
            let tuple = st.parse_key(&sorts, key)?;
            let v = st.element_index(&result, val)?;
            let idx = flat_index(&st.funcs[fi].dims, &tuple);
            st.funcs[fi].values[idx] = v;
            seen[idx] = true;
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            let t = st.funcs[fi].tuple_of(i);
            return Err(SemanticsError::IncompleteTable { table: name, tuple: st.tuple_key(&sorts, &t) });
        }
    }
    st.check_affirmative(m)?;
    Ok(st)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{LukModel, Rational};
    use crate::syntax::parse_theory;

    const SET: &str = "theory Set\nsort A\npred E(A) affirmative\npred eq(A,A) dual neq\n";

    #[test]
    fn json_round_trip() {
        let th = parse_theory(SET).unwrap();
        let m = LukModel::new(5);
        let sizes = BTreeMap::from([("A".to_string(), 2)]);
        let mut st = Structure::new("luk:grid5", &th, &sizes, Rational::zero(), Rational::one());
        st.pred_mut("eq").unwrap().set(&[0, 1], Rational::new(3, 4));
        let text = serde_json::to_string(&st.to_json(&m)).unwrap();
        let back = load_structure(&text, &th, &m).unwrap();
        assert_eq!(back, st);
    }

    #[test]
    fn rejects_bad_tables() {
        let th = parse_theory(SET).unwrap();
        let m = LukModel::new(5);
        let incomplete = r#"{"schema":"chulogic.structure/v1","model":"luk:grid5","domains":{"A":["a"]},"preds":{"eq":{}}}"#;
        assert!(matches!(load_structure(incomplete, &th, &m), Err(SemanticsError::IncompleteTable { .. })));
        let not_aff = r#"{"schema":"chulogic.structure/v1","model":"luk:grid5","domains":{"A":["a"]},
            "preds":{"eq":{"a,a":"1"},"E":{"a":"1/2"}}}"#;
        assert!(matches!(load_structure(not_aff, &th, &m), Err(SemanticsError::NotAffirmative { .. })));
        let ok = r#"{"schema":"chulogic.structure/v1","model":"luk:grid5","domains":{"A":["a"]},"preds":{"eq":{"a,a":"1"}}}"#;
        let st = load_structure(ok, &th, &m).unwrap();
        assert_eq!(st.pred("E").unwrap().values, vec![Rational::one()]);
    }
}
