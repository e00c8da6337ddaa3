//! The affine-model interface and its non-Chu instances.

mod interior;
mod luk;
mod rational;

use std::fmt;

use rand::RngCore;
use thiserror::Error;

use crate::chu::{ChuModel, ChuVariant};
use crate::lattice::{resolve_lattice, LatticeError};

pub use interior::InteriorModel;
pub use luk::{luk_op, LukModel, LukOp};
pub use rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("unknown model id `{0}`")]
    UnknownModel(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("`{0}` is not an element of {1}")]
    BadElement(String, String),
    #[error("pair `{0}` is not disjoint")]
    NotCanonical(String),
    #[error("{0} is outside [0,1]")]
    OutOfRange(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    Chu0,
    Chu1,
    Lukasiewicz,
    Interior,
}

/// A semicartesian *-autonomous lattice with a Seely comonad, as far as
/// the law checker needs to see it.
///
/// Nothing here is assumed to hold; the law suites check it.
pub trait AffineModel: Sync {
    type Elem: Copy + PartialEq + fmt::Debug + Send + Sync;

    fn id(&self) -> String;
    fn kind(&self) -> ModelKind;
    fn top(&self) -> Self::Elem;
    fn bot(&self) -> Self::Elem;
    fn tensor(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn par(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn with(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn plus(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn limp(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn bang(&self, a: Self::Elem) -> Self::Elem;
    fn whynot(&self, a: Self::Elem) -> Self::Elem;
    fn leq(&self, a: Self::Elem, b: Self::Elem) -> bool;

    fn forall(&self, items: &[Self::Elem]) -> Self::Elem {
        items.iter().fold(self.top(), |acc, &x| self.with(acc, x))
    }
    fn exists(&self, items: &[Self::Elem]) -> Self::Elem {
        items.iter().fold(self.bot(), |acc, &x| self.plus(acc, x))
    }

    /// The whole carrier when [`is_exhaustive`](Self::is_exhaustive), else a sample grid.
    fn elements(&self) -> Vec<Self::Elem>;
    fn is_exhaustive(&self) -> bool;

    /// A random carrier element for sweep protocols; finite carriers draw from `elements`.
    fn random_element(&self, rng: &mut dyn RngCore) -> Self::Elem {
        let els = self.elements();
        els[(rng.next_u64() % els.len() as u64) as usize]
    }

    fn format_elem(&self, e: Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem, ModelError>;

    fn equiv(&self, a: Self::Elem, b: Self::Elem) -> bool {
        self.leq(a, b) && self.leq(b, a)
    }
}

/// Any builtin model, resolved from its string id.
#[derive(Clone, Debug)]
pub enum AnyModel {
    Chu(ChuModel),
    Luk(LukModel),
    Interior(InteriorModel),
}

/// Runs `$body` with `$m` bound to the concrete model inside an [`AnyModel`].
#[macro_export]
macro_rules! with_model {
    ($any:expr, $m:ident => $body:expr) => {
        match $any {
            $crate::models::AnyModel::Chu($m) => $body,
            $crate::models::AnyModel::Luk($m) => $body,
            $crate::models::AnyModel::Interior($m) => $body,
        }
    };
}

impl AnyModel {
    pub fn id(&self) -> String {
        with_model!(self, m => m.id())
    }
    pub fn kind(&self) -> ModelKind {
        with_model!(self, m => m.kind())
    }
}

/// Resolves `chu0:<lattice>`, `chu1:<lattice>`, `luk:grid<n>` and `int:<space>`.
pub fn resolve_model(id: &str) -> Result<AnyModel, ModelError> {
    if let Some(rest) = id.strip_prefix("chu0:") {
        return Ok(AnyModel::Chu(ChuModel::new(resolve_lattice(rest)?, ChuVariant::Strict0)?));
    }
    if let Some(rest) = id.strip_prefix("chu1:") {
        return Ok(AnyModel::Chu(ChuModel::new(resolve_lattice(rest)?, ChuVariant::Chu1)?));
    }
    if let Some(rest) = id.strip_prefix("luk:grid") {
        let n: usize = rest.parse().map_err(|_| ModelError::UnknownModel(id.to_string()))?;
        if !(2..=65).contains(&n) {
            return Err(ModelError::UnknownModel(id.to_string()));
        }
        return Ok(AnyModel::Luk(LukModel::new(n)));
    }
    if id == "luk" {
        return Ok(AnyModel::Luk(LukModel::new(5)));
    }
    if let Some(rest) = id.strip_prefix("int:") {
        return Ok(AnyModel::Interior(InteriorModel::new(crate::lattice::resolve_space(rest)?)));
    }
    Err(ModelError::UnknownModel(id.to_string()))
}

/// One connective-table comparison between Chu(chain2,0) and three-valued Łukasiewicz.
#[derive(Debug, Clone, serde::Serialize)]
pub struct TableCheck {
    pub connective: &'static str,
    pub entries: usize,
    pub mismatches: Vec<String>,
}

/// Compares every connective of Chu(chain2, Strict0) with the Łukasiewicz
/// table restricted to {0, 1/2, 1} under T=1, N=1/2, F=0.
pub fn restrict_chu3_check() -> Vec<TableCheck> {
    let chu = ChuModel::new(crate::lattice::heyting_chain(2).expect("chain2"), ChuVariant::Strict0).expect("chain2 is small");
    let els = chu.enumerate().to_vec();
    let to_luk = |p: crate::chu::ChuProp| -> Rational {
        match (p.pf, p.rf) {
            (1, 0) => Rational::one(),
            (0, 0) => Rational::new(1, 2),
            _ => Rational::zero(),
        }
    };
    let mut out = Vec::new();
    let binops: [(&'static str, fn(&ChuModel, _, _) -> _, LukOp); 5] = [
        ("tensor", |m: &ChuModel, a, b| m.tensor(a, b), LukOp::Tensor),
        ("par", |m: &ChuModel, a, b| m.par(a, b), LukOp::Par),
        ("with", |m: &ChuModel, a, b| m.with(a, b), LukOp::With),
        ("plus", |m: &ChuModel, a, b| m.plus(a, b), LukOp::Plus),
        ("limp", |m: &ChuModel, a, b| m.limp(a, b), LukOp::Limp),
    ];
    for (name, f, op) in binops {
        let mut mismatches = Vec::new();
        for &a in &els {
            for &b in &els {
                let lhs = to_luk(f(&chu, a, b));
                let rhs = luk_op(op, &[to_luk(a), to_luk(b)]).expect("in range");
                if lhs != rhs {
                    mismatches.push(format!("{} {name} {}: chu {lhs} vs luk {rhs}", chu.format(a), chu.format(b)));
                }
            }
        }
        out.push(TableCheck { connective: name, entries: els.len() * els.len(), mismatches });
    }
    let unops: [(&'static str, fn(&ChuModel, _) -> _, LukOp); 3] = [
        ("neg", |m: &ChuModel, a| m.neg(a), LukOp::Neg),
        ("bang", |m: &ChuModel, a| m.bang(a), LukOp::Bang),
        ("whynot", |m: &ChuModel, a| m.whynot(a), LukOp::WhyNot),
    ];
    for (name, f, op) in unops {
        let mut mismatches = Vec::new();
        for &a in &els {
            let lhs = to_luk(f(&chu, a));
            let rhs = luk_op(op, &[to_luk(a)]).expect("in range");
            if lhs != rhs {
                mismatches.push(format!("{name} {}: chu {lhs} vs luk {rhs}", chu.format(a)));
            }
        }
        out.push(TableCheck { connective: name, entries: els.len(), mismatches });
    }
    out
}
