//! Distance matrices as Łukasiewicz equality predicates, `eq(x,y) = 1 - d(x,y)`.

use std::collections::BTreeMap;

use super::{holds_sequent, SemanticsError, SequentWitness, Structure};
use crate::models::{LukModel, Rational};
use crate::syntax::{parse_theory, Theory};

const METRIC_EQUALITY: &str = "\
theory MetricEquality
sort A
pred E(A) affirmative
pred eq(A,A) dual neq
axiom refl:   [x:A] x in! A |- eq(x,x)
axiom sym:    [x:A, y:A] eq(x,y) |- eq(y,x)
axiom trans:  [x:A, y:A, z:A] eq(x,y) * eq(y,z) |- eq(x,z)
axiom strans: [x:A, y:A, z:A] eq(x,y) & eq(y,z) |- eq(x,z)
";

/// Reflexivity, symmetry and both transitivity axioms for `eq` on one sort `A`.
pub fn metric_theory() -> Theory {
    parse_theory(METRIC_EQUALITY).expect("builtin theory parses")
}

/// The structure on `d.len()` points whose `eq` table is `1 - d`.
pub fn metric_structure(d: &[Vec<Rational>]) -> Result<Structure<Rational>, SemanticsError> {
    let n = d.len();
    if d.iter().any(|row| row.len() != n) {
        return Err(SemanticsError::Invalid("distance matrix must be square".into()));
    }
    if let Some(v) = d.iter().flatten().find(|v| !v.in_unit()) {
        return Err(SemanticsError::Invalid(format!("distance {v} is outside [0,1]")));
    }
    let th = metric_theory();
    let mut s = Structure::new("luk", &th, &BTreeMap::from([("A".to_string(), n)]), Rational::zero(), Rational::one());
    let eq = s.pred_mut("eq").expect("declared");
    for (i, row) in d.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            eq.set(&[i, j], Rational::one() - v);
        }
    }
    Ok(s)
}

/// Which equality axioms a distance matrix satisfies in Łukasiewicz logic.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct MetricVerdict {
    pub reflexive: bool,
    pub symmetric: bool,
    /// `eq(x,y) * eq(y,z) |- eq(x,z)`
    pub tensor_transitive: bool,
    /// `eq(x,y) & eq(y,z) |- eq(x,z)`
    pub with_transitive: bool,
    /// First failing valuation of the additive axiom, if any.
    pub with_witness: Option<SequentWitness>,
}

pub fn metric_verdict(d: &[Vec<Rational>]) -> Result<MetricVerdict, SemanticsError> {
    let th = metric_theory();
    let s = metric_structure(d)?;
    let m = LukModel::new(5);
    let check = |name: &str| holds_sequent(&m, &th.axiom(name).expect("builtin axiom").sequent, &s);
    let with_witness = check("strans")?;
    Ok(MetricVerdict {
        reflexive: check("refl")?.is_none(),
        symmetric: check("sym")?.is_none(),
        tensor_transitive: check("trans")?.is_none(),
        with_transitive: with_witness.is_none(),
        with_witness,
    })
}
