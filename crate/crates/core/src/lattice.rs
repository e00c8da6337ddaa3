//! Finite Heyting algebras with every operation precomputed as a table.
//!
//! Elements are dense `u8` indices. Construction starts from a partial
//! order; meets and joins are found as greatest lower / least upper bounds
//! and implication as the residuation maximum, so every builder (chains,
//! powersets, downsets, open-set lattices) goes through the same path.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index of an element inside a [`FiniteHeyting`].
pub type Elem = u8;

/// Largest carrier accepted by any constructor.
pub const MAX_SIZE: usize = 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("a chain needs at least one element")]
    EmptyChain,
    #[error("{0} elements exceeds the cap of {MAX_SIZE}")]
    TooLarge(usize),
    #[error("boolean algebra on {0} atoms is too large (at most 5)")]
    TooManyAtoms(usize),
    #[error("not a partial order: {0}")]
    NotPartialOrder(String),
    #[error("elements {0} and {1} have no {2}")]
    NotLattice(String, String, &'static str),
    #[error("not a Heyting algebra: no largest x with x /\\ {0} <= {1}")]
    NotHeyting(String, String),
    #[error("poset has a cycle through `{0}`")]
    CyclicPoset(String),
    #[error("poset has {0} elements (at most 6)")]
    PosetTooLarge(usize),
    #[error("space has {0} points (at most 5)")]
    SpaceTooLarge(usize),
    #[error("not a topology: {0}")]
    NotTopology(String),
    #[error("unknown point or element `{0}`")]
    UnknownName(String),
    #[error("unknown lattice id `{0}`")]
    UnknownId(String),
    #[error("cannot read {0}: {1}")]
    Io(String, String),
    #[error("bad json description: {0}")]
    Json(String),
}

/// An explicit finite Heyting algebra.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteHeyting {
    name: String,
    labels: Vec<String>,
    n: usize,
    leq: Vec<bool>,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    imp: Vec<Elem>,
    neg: Vec<Elem>,
    top: Elem,
    bot: Elem,
}

impl fmt::Debug for FiniteHeyting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteHeyting").field("name", &self.name).field("labels", &self.labels).finish()
    }
}

impl FiniteHeyting {
    /// Builds an algebra from element labels and an order predicate.
    pub fn from_order(name: impl Into<String>, labels: Vec<String>, le: impl Fn(usize, usize) -> bool) -> Result<Self, LatticeError> {
        let n = labels.len();
        if n == 0 {
            return Err(LatticeError::EmptyChain);
        }
        if n > MAX_SIZE {
            return Err(LatticeError::TooLarge(n));
        }
        let mut leq = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                leq[a * n + b] = le(a, b);
            }
        }
        for a in 0..n {
            if !leq[a * n + a] {
                return Err(LatticeError::NotPartialOrder(format!("{} is not <= itself", labels[a])));
            }
            for b in 0..n {
                if a != b && leq[a * n + b] && leq[b * n + a] {
                    return Err(LatticeError::NotPartialOrder(format!("{} and {} are mutually below each other", labels[a], labels[b])));
                }
                for c in 0..n {
                    if leq[a * n + b] && leq[b * n + c] && !leq[a * n + c] {
                        return Err(LatticeError::NotPartialOrder(format!(
                            "{} <= {} <= {} but not {} <= {}",
                            labels[a], labels[b], labels[c], labels[a], labels[c]
                        )));
                    }
                }
            }
        }
        let bound = |a: usize, b: usize, lower: bool| -> Option<Elem> {
            let is_bound = |x: usize| {
                if lower {
                    leq[x * n + a] && leq[x * n + b]
                } else {
                    leq[a * n + x] && leq[b * n + x]
                }
            };
            (0..n)
                .filter(|&x| is_bound(x))
                .find(|&x| (0..n).filter(|&y| is_bound(y)).all(|y| if lower { leq[y * n + x] } else { leq[x * n + y] }))
                .map(|x| x as Elem)
        };
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                meet[a * n + b] =
                    bound(a, b, true).ok_or_else(|| LatticeError::NotLattice(labels[a].clone(), labels[b].clone(), "meet"))?;
                join[a * n + b] =
                    bound(a, b, false).ok_or_else(|| LatticeError::NotLattice(labels[a].clone(), labels[b].clone(), "join"))?;
            }
        }
        let top = (0..n).find(|&t| (0..n).all(|x| leq[x * n + t])).expect("finite lattice has a top") as Elem;
        let bot = (0..n).find(|&b| (0..n).all(|x| leq[b * n + x])).expect("finite lattice has a bottom") as Elem;

        let mut imp = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let mut acc = bot as usize;
                for x in 0..n {
                    if leq[meet[x * n + a] as usize * n + b] {
                        acc = join[acc * n + x] as usize;
                    }
                }
                if !leq[meet[acc * n + a] as usize * n + b] {
                    return Err(LatticeError::NotHeyting(labels[a].clone(), labels[b].clone()));
                }
                imp[a * n + b] = acc as Elem;
            }
        }
        let neg = (0..n).map(|a| imp[a * n + bot as usize]).collect();
        Ok(FiniteHeyting { name: name.into(), labels, n, leq, meet, join, imp, neg, top, bot })
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn size(&self) -> usize {
        self.n
    }
    pub fn top(&self) -> Elem {
        self.top
    }
    pub fn bot(&self) -> Elem {
        self.bot
    }
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.n).map(|i| i as Elem)
    }
    pub fn label(&self, a: Elem) -> &str {
        &self.labels[a as usize]
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    /// Looks an element up by its display label.
    pub fn elem(&self, label: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == label).map(|i| i as Elem)
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a as usize * self.n + b as usize]
    }
    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a as usize * self.n + b as usize]
    }
    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a as usize * self.n + b as usize]
    }
    #[inline]
    pub fn imp(&self, a: Elem, b: Elem) -> Elem {
        self.imp[a as usize * self.n + b as usize]
    }
    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    pub fn meet_all(&self, xs: impl IntoIterator<Item = Elem>) -> Elem {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }
    pub fn join_all(&self, xs: impl IntoIterator<Item = Elem>) -> Elem {
        xs.into_iter().fold(self.bot, |acc, x| self.join(acc, x))
    }

    pub fn is_boolean(&self) -> bool {
        self.elements().all(|a| self.join(a, self.neg(a)) == self.top)
    }

    /// Overwrites one implication entry without any checking.
    ///
    /// Only useful for fault-injection: the result is generally not a
    /// Heyting algebra, which [`verify_heyting`] will report.
    pub fn corrupt_imp(&mut self, a: Elem, b: Elem, value: Elem) {
        let n = self.n;
        self.imp[a as usize * n + b as usize] = value;
        if b == self.bot {
            self.neg[a as usize] = value;
        }
    }
}

/// One failed check from [`verify_heyting`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeytingFailure {
    pub check: &'static str,
    pub elements: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeytingReport {
    pub algebra: String,
    pub size: usize,
    pub failures: Vec<HeytingFailure>,
}

impl HeytingReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for HeytingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return write!(f, "{} ({} elements): all checks pass", self.algebra, self.size);
        }
        writeln!(f, "{} ({} elements): {} failures", self.algebra, self.size, self.failures.len())?;
        for fl in &self.failures {
            writeln!(f, "  {} at ({})", fl.check, fl.elements.join(", "))?;
        }
        Ok(())
    }
}

/// Re-checks every algebra axiom against the stored tables.
pub fn verify_heyting(h: &FiniteHeyting) -> HeytingReport {
    let mut failures = Vec::new();
    let mut fail = |check: &'static str, es: &[Elem]| {
        failures.push(HeytingFailure { check, elements: es.iter().map(|&e| h.label(e).to_string()).collect() });
    };
    let els: Vec<Elem> = h.elements().collect();
    for &a in &els {
        if !h.leq(a, a) {
            fail("reflexivity", &[a]);
        }
        if !h.leq(h.bot(), a) {
            fail("bottom", &[a]);
        }
        if !h.leq(a, h.top()) {
            fail("top", &[a]);
        }
        if h.neg(a) != h.imp(a, h.bot()) {
            fail("negation", &[a]);
        }
        if h.neg(h.neg(h.neg(a))) != h.neg(a) {
            fail("triple-negation", &[a]);
        }
        for &b in &els {
            if a != b && h.leq(a, b) && h.leq(b, a) {
                fail("antisymmetry", &[a, b]);
            }
            let m = h.meet(a, b);
            let glb = h.leq(m, a) && h.leq(m, b) && els.iter().all(|&x| !(h.leq(x, a) && h.leq(x, b)) || h.leq(x, m));
            if !glb {
                fail("meet", &[a, b]);
            }
            let j = h.join(a, b);
            let lub = h.leq(a, j) && h.leq(b, j) && els.iter().all(|&x| !(h.leq(a, x) && h.leq(b, x)) || h.leq(j, x));
            if !lub {
                fail("join", &[a, b]);
            }
            for &c in &els {
                if h.leq(a, b) && h.leq(b, c) && !h.leq(a, c) {
                    fail("transitivity", &[a, b, c]);
                }
                // x = a, residual imp(b, c)
                if h.leq(h.meet(a, b), c) != h.leq(a, h.imp(b, c)) {
                    fail("residuation", &[a, b, c]);
                }
                if h.meet(a, h.join(b, c)) != h.join(h.meet(a, b), h.meet(a, c)) {
                    fail("distributivity", &[a, b, c]);
                }
            }
        }
    }
    HeytingReport { algebra: h.name().to_string(), size: h.size(), failures }
}

fn fraction_label(k: usize, d: usize) -> String {
    if k == 0 {
        return "0".into();
    }
    if k == d {
        return "1".into();
    }
    let g = gcd(k, d);
    format!("{}/{}", k / g, d / g)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The n-element chain, labelled by the fractions k/(n-1).
pub fn heyting_chain(n: usize) -> Result<FiniteHeyting, LatticeError> {
    if n == 0 {
        return Err(LatticeError::EmptyChain);
    }
    if n > MAX_SIZE {
        return Err(LatticeError::TooLarge(n));
    }
    let labels = (0..n).map(|k| if n == 1 { "0".into() } else { fraction_label(k, n - 1) }).collect();
    FiniteHeyting::from_order(format!("chain{n}"), labels, |a, b| a <= b)
}

/// Renders a bitmask over named points as `{a,b}`.
pub fn set_label(mask: u32, names: &[String]) -> String {
    let inner: Vec<&str> = names.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, s)| s.as_str()).collect();
    format!("{{{}}}", inner.join(","))
}

/// Parses `{a,b}` (or `{}`) back into a bitmask.
pub fn parse_set_label(text: &str, names: &[String]) -> Result<u32, LatticeError> {
    let t = text.trim();
    let inner = t.strip_prefix('{').and_then(|s| s.strip_suffix('}')).ok_or_else(|| LatticeError::UnknownName(text.to_string()))?;
    let mut mask = 0u32;
    for part in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let i = names.iter().position(|n| n == part).ok_or_else(|| LatticeError::UnknownName(part.to_string()))?;
        mask |= 1 << i;
    }
    Ok(mask)
}

fn sorted_masks(mut masks: Vec<u32>) -> Vec<u32> {
    masks.sort_by_key(|m| (m.count_ones(), *m));
    masks.dedup();
    masks
}

fn from_set_family(name: String, names: &[String], masks: Vec<u32>) -> Result<FiniteHeyting, LatticeError> {
    let masks = sorted_masks(masks);
    let labels = masks.iter().map(|&m| set_label(m, names)).collect();
    FiniteHeyting::from_order(name, labels, |a, b| masks[a] & !masks[b] == 0)
}

fn point_names(n: usize) -> Vec<String> {
    (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
}

/// The powerset algebra on `n` atoms named a, b, c, ...
pub fn heyting_boolean(n: usize) -> Result<FiniteHeyting, LatticeError> {
    if n > 5 {
        return Err(LatticeError::TooManyAtoms(n));
    }
    let names = point_names(n);
    from_set_family(format!("bool{n}"), &names, (0..(1u32 << n)).collect())
}

/// A finite poset given by its covering pairs `(lower, upper)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetSpec {
    pub points: Vec<String>,
    #[serde(default)]
    pub covers: Vec<(String, String)>,
}

impl PosetSpec {
    /// Reflexive-transitive closure as `below[i]` bitmasks (j below i).
    fn below_masks(&self) -> Result<Vec<u32>, LatticeError> {
        let n = self.points.len();
        let idx = |s: &str| self.points.iter().position(|p| p == s).ok_or_else(|| LatticeError::UnknownName(s.to_string()));
        let mut below: Vec<u32> = (0..n).map(|i| 1 << i).collect();
        for (lo, hi) in &self.covers {
            let (l, h) = (idx(lo)?, idx(hi)?);
            if l == h {
                return Err(LatticeError::CyclicPoset(lo.clone()));
            }
            below[h] |= 1 << l;
        }
        loop {
            let mut changed = false;
            for i in 0..n {
                let mut m = below[i];
                for j in 0..n {
                    if m & (1 << j) != 0 {
                        m |= below[j];
                    }
                }
                if m != below[i] {
                    below[i] = m;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && below[i] & (1 << j) != 0 && below[j] & (1 << i) != 0 {
                    return Err(LatticeError::CyclicPoset(self.points[i].clone()));
                }
            }
        }
        Ok(below)
    }
}

/// The algebra of downward-closed subsets of a poset.
pub fn heyting_from_downsets(name: &str, p: &PosetSpec) -> Result<FiniteHeyting, LatticeError> {
    let n = p.points.len();
    if n > 6 {
        return Err(LatticeError::PosetTooLarge(n));
    }
    let below = p.below_masks()?;
    let downsets: Vec<u32> = (0..(1u32 << n)).filter(|&s| (0..n).all(|i| s & (1 << i) == 0 || below[i] & !s == 0)).collect();
    from_set_family(format!("downset:{name}"), &p.points, downsets)
}

/// A finite topological space given by its family of open sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopSpaceSpec {
    pub name: String,
    pub points: Vec<String>,
    pub opens: Vec<u32>,
}

#[derive(Deserialize)]
struct TopSpaceJson {
    points: Vec<String>,
    opens: Vec<Vec<String>>,
}

impl TopSpaceSpec {
    /// Validates the family and stores it sorted by size.
    pub fn new(name: &str, points: Vec<String>, opens: Vec<u32>) -> Result<Self, LatticeError> {
        let n = points.len();
        if n > 5 {
            return Err(LatticeError::SpaceTooLarge(n));
        }
        let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        let opens = sorted_masks(opens);
        let has = |m: u32| opens.contains(&m);
        if !has(0) {
            return Err(LatticeError::NotTopology("the empty set is not open".into()));
        }
        if !has(full) {
            return Err(LatticeError::NotTopology("the whole space is not open".into()));
        }
        for &u in &opens {
            if u & !full != 0 {
                return Err(LatticeError::NotTopology("an open set mentions an unknown point".into()));
            }
            for &v in &opens {
                if !has(u | v) {
                    return Err(LatticeError::NotTopology(format!(
                        "union of {} and {} is not open",
                        set_label(u, &points),
                        set_label(v, &points)
                    )));
                }
                if !has(u & v) {
                    return Err(LatticeError::NotTopology(format!(
                        "intersection of {} and {} is not open",
                        set_label(u, &points),
                        set_label(v, &points)
                    )));
                }
            }
        }
        Ok(TopSpaceSpec { name: name.to_string(), points, opens })
    }

    pub fn from_named(name: &str, points: &[&str], opens: &[&[&str]]) -> Result<Self, LatticeError> {
        let points: Vec<String> = points.iter().map(|s| s.to_string()).collect();
        let mut masks = Vec::new();
        for o in opens {
            let mut m = 0;
            for p in *o {
                let i = points.iter().position(|q| q == p).ok_or_else(|| LatticeError::UnknownName(p.to_string()))?;
                m |= 1 << i;
            }
            masks.push(m);
        }
        Self::new(name, points, masks)
    }

    pub fn from_json(name: &str, text: &str) -> Result<Self, LatticeError> {
        let j: TopSpaceJson = serde_json::from_str(text).map_err(|e| LatticeError::Json(e.to_string()))?;
        let pts: Vec<&str> = j.points.iter().map(String::as_str).collect();
        let opens: Vec<Vec<&str>> = j.opens.iter().map(|o| o.iter().map(String::as_str).collect()).collect();
        let refs: Vec<&[&str]> = opens.iter().map(Vec::as_slice).collect();
        Self::from_named(name, &pts, &refs)
    }

    pub fn full(&self) -> u32 {
        (1u32 << self.points.len()) - 1
    }

    /// Largest open subset.
    pub fn interior(&self, s: u32) -> u32 {
        self.opens.iter().filter(|&&o| o & !s == 0).fold(0, |acc, &o| acc | o)
    }

    /// Smallest closed superset, as the complement of the interior of the complement.
    pub fn closure(&self, s: u32) -> u32 {
        self.full() & !self.interior(self.full() & !s)
    }

    pub fn is_open(&self, s: u32) -> bool {
        self.opens.contains(&s)
    }
}

/// The lattice of open sets of a finite space.
pub fn heyting_opens(t: &TopSpaceSpec) -> Result<FiniteHeyting, LatticeError> {
    from_set_family(format!("opens:{}", t.name), &t.points, t.opens.clone())
}

/// Builtin posets for `downset:<id>`.
pub fn builtin_poset(id: &str) -> Option<PosetSpec> {
    let mk = |pts: &[&str], covers: &[(&str, &str)]| PosetSpec {
        points: pts.iter().map(|s| s.to_string()).collect(),
        covers: covers.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
    };
    Some(match id {
        "point" => mk(&["a"], &[]),
        "chain2" => mk(&["a", "b"], &[("a", "b")]),
        "antichain2" => mk(&["a", "b"], &[]),
        "vee" => mk(&["a", "b", "c"], &[("a", "c"), ("b", "c")]),
        "n" => mk(&["a", "b", "c", "d"], &[("a", "c"), ("b", "c"), ("b", "d")]),
        _ => return None,
    })
}

/// Builtin spaces for `opens:<id>` and `int:<id>`.
pub fn builtin_space(id: &str) -> Option<TopSpaceSpec> {
    let r = match id {
        "point" => TopSpaceSpec::from_named(id, &["a"], &[&[], &["a"]]),
        "sierpinski" => TopSpaceSpec::from_named(id, &["a", "b"], &[&[], &["a"], &["a", "b"]]),
        "discrete2" => TopSpaceSpec::from_named(id, &["a", "b"], &[&[], &["a"], &["b"], &["a", "b"]]),
        "3pt" => TopSpaceSpec::from_named(id, &["a", "b", "c"], &[&[], &["a"], &["c"], &["a", "c"], &["a", "b", "c"]]),
        "diamond4" => TopSpaceSpec::from_named(
            id,
            &["a", "b", "c", "d"],
            &[&[], &["a"], &["b"], &["a", "b"], &["a", "b", "c"], &["a", "b", "c", "d"]],
        ),
        _ => return None,
    };
    Some(r.expect("builtin spaces are valid topologies"))
}

pub const BUILTIN_POSETS: &[&str] = &["point", "chain2", "antichain2", "vee", "n"];
pub const BUILTIN_SPACES: &[&str] = &["point", "sierpinski", "discrete2", "3pt", "diamond4"];

/// The algebras every exhaustive suite runs over.
pub const ZOO: &[&str] = &[
    "chain2",
    "chain3",
    "chain4",
    "chain5",
    "bool1",
    "bool2",
    "bool3",
    "downset:vee",
    "downset:n",
    "opens:sierpinski",
    "opens:3pt",
    "opens:diamond4",
];

fn read_file(path: &str) -> Result<String, LatticeError> {
    std::fs::read_to_string(Path::new(path)).map_err(|e| LatticeError::Io(path.to_string(), e.to_string()))
}

/// Resolves a space id; `@path.json` loads a custom description.
pub fn resolve_space(id: &str) -> Result<TopSpaceSpec, LatticeError> {
    if let Some(path) = id.strip_prefix('@') {
        return TopSpaceSpec::from_json(path, &read_file(path)?);
    }
    builtin_space(id).ok_or_else(|| LatticeError::UnknownId(id.to_string()))
}

/// Resolves a zoo id such as `chain3`, `bool2`, `downset:vee`, `opens:3pt`.
pub fn resolve_lattice(id: &str) -> Result<FiniteHeyting, LatticeError> {
    if let Some(rest) = id.strip_prefix("downset:") {
        let spec = if let Some(path) = rest.strip_prefix('@') {
            serde_json::from_str::<PosetSpec>(&read_file(path)?).map_err(|e| LatticeError::Json(e.to_string()))?
        } else {
            builtin_poset(rest).ok_or_else(|| LatticeError::UnknownId(id.to_string()))?
        };
        return heyting_from_downsets(rest, &spec);
    }
    if let Some(rest) = id.strip_prefix("opens:") {
        return heyting_opens(&resolve_space(rest)?);
    }
    let num = |prefix: &str| id.strip_prefix(prefix).and_then(|s| s.parse::<usize>().ok());
    if let Some(n) = num("chain") {
        return heyting_chain(n);
    }
    if let Some(n) = num("bool") {
        return heyting_boolean(n);
    }
    Err(LatticeError::UnknownId(id.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    // Residuation oracle independent of the construction: scan every x.
    fn oracle_imp(h: &FiniteHeyting, a: Elem, b: Elem) -> Elem {
        let cands: Vec<Elem> = h.elements().filter(|&x| h.leq(h.meet(x, a), b)).collect();
        *cands.iter().find(|&&m| cands.iter().all(|&x| h.leq(x, m))).unwrap()
    }

    fn e(h: &FiniteHeyting, l: &str) -> Elem {
        h.elem(l).unwrap()
    }

    #[test]
    fn chain_values() {
        let c2 = heyting_chain(2).unwrap();
        assert_eq!(c2.imp(e(&c2, "1"), e(&c2, "0")), e(&c2, "0"));
        let c3 = heyting_chain(3).unwrap();
        assert_eq!(c3.labels(), &["0", "1/2", "1"]);
        assert_eq!(c3.imp(e(&c3, "1/2"), e(&c3, "0")), e(&c3, "0"));
        assert_eq!(c3.neg(e(&c3, "1/2")), e(&c3, "0"));
        assert_eq!(c3.imp(e(&c3, "1"), e(&c3, "1/2")), e(&c3, "1/2"));
        assert_eq!(heyting_chain(0), Err(LatticeError::EmptyChain));
    }

    #[test]
    fn boolean_values() {
        let b1 = heyting_boolean(1).unwrap();
        assert_eq!(b1.size(), 2);
        let b2 = heyting_boolean(2).unwrap();
        assert_eq!(b2.imp(e(&b2, "{a}"), e(&b2, "{b}")), e(&b2, "{b}"));
        assert_eq!(b2.neg(e(&b2, "{a,b}")), e(&b2, "{}"));
        assert!(b2.is_boolean());
        assert!(matches!(heyting_boolean(6), Err(LatticeError::TooManyAtoms(6))));
    }

    #[test]
    fn downset_values() {
        let p = heyting_from_downsets("point", &builtin_poset("point").unwrap()).unwrap();
        assert_eq!(p.size(), 2);
        let c = heyting_from_downsets("chain2", &builtin_poset("chain2").unwrap()).unwrap();
        assert_eq!(c.size(), 3);
        let chain3 = heyting_chain(3).unwrap();
        for a in 0..3u8 {
            for b in 0..3u8 {
                assert_eq!(c.imp(a, b), chain3.imp(a, b));
                assert_eq!(c.leq(a, b), chain3.leq(a, b));
            }
        }
        let v = resolve_lattice("downset:vee").unwrap();
        assert_eq!(v.size(), 5);
        assert!(!v.is_boolean());
        // {a} -> {b} is the largest downset meeting {a} inside {b}: just {b}.
        assert_eq!(v.imp(e(&v, "{a}"), e(&v, "{b}")), e(&v, "{b}"));
        assert_eq!(v.neg(e(&v, "{a}")), e(&v, "{b}"));
        assert_eq!(v.join(e(&v, "{a}"), v.neg(e(&v, "{a}"))), e(&v, "{a,b}"));
        let cyc = PosetSpec { points: vec!["a".into(), "b".into()], covers: vec![("a".into(), "b".into()), ("b".into(), "a".into())] };
        assert!(matches!(heyting_from_downsets("cyc", &cyc), Err(LatticeError::CyclicPoset(_))));
    }

    #[test]
    fn opens_values() {
        let s = resolve_lattice("opens:sierpinski").unwrap();
        assert_eq!(s.neg(e(&s, "{a}")), e(&s, "{}"));
        let d = resolve_lattice("opens:discrete2").unwrap();
        assert_eq!(d.size(), 4);
        assert!(d.is_boolean());
        let t = resolve_lattice("opens:3pt").unwrap();
        assert_eq!(t.imp(e(&t, "{a}"), e(&t, "{}")), e(&t, "{c}"));
        let opens: [&[&str]; 3] = [&[], &["a"], &["b"]];
        let bad = TopSpaceSpec::from_named("bad", &["a", "b"], &opens);
        assert!(matches!(bad, Err(LatticeError::NotTopology(_))));
    }

    #[test]
    fn interior_and_closure() {
        let t = builtin_space("3pt").unwrap();
        let m = |s: &str| parse_set_label(s, &t.points).unwrap();
        assert_eq!(t.interior(m("{a,b}")), m("{a}"));
        assert_eq!(t.closure(m("{a}")), m("{a,b}"));
    }

    #[test]
    fn zoo_passes_verification_and_oracle() {
        for id in ZOO.iter().chain(["chain1", "bool0", "downset:antichain2", "opens:discrete2", "opens:point"].iter()) {
            let h = resolve_lattice(id).unwrap();
            let r = verify_heyting(&h);
            assert!(r.ok(), "{r}");
            for a in h.elements() {
                for b in h.elements() {
                    assert_eq!(h.imp(a, b), oracle_imp(&h, a, b), "{id}");
                }
            }
            assert!(h.size() <= 16);
        }
        assert!(verify_heyting(&heyting_chain(4).unwrap()).ok());
    }

    #[test]
    fn fault_injection_is_reported() {
        let mut h = heyting_chain(3).unwrap();
        let (a, b) = (e(&h, "0"), e(&h, "1/2"));
        h.corrupt_imp(a, b, h.bot());
        let r = verify_heyting(&h);
        assert!(!r.ok());
        assert!(r.failures.iter().any(|f| f.check == "residuation" && f.elements[1] == "0" && f.elements[2] == "1/2"));
    }

    #[test]
    fn non_distributive_lattice_is_rejected() {
        // The diamond M3 is a lattice but not Heyting.
        let labels: Vec<String> = ["0", "x", "y", "z", "1"].iter().map(|s| s.to_string()).collect();
        let r = FiniteHeyting::from_order("m3", labels, |a, b| a == b || a == 0 || b == 4);
        assert!(matches!(r, Err(LatticeError::NotHeyting(_, _))));
    }

    #[test]
    fn custom_json_space() {
        let t = TopSpaceSpec::from_json("j", r#"{"points":["p","q"],"opens":[[],["p"],["p","q"]]}"#).unwrap();
        assert_eq!(heyting_opens(&t).unwrap().size(), 3);
    }
}
