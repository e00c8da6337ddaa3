//! The Chu construction over a finite Heyting algebra.
//!
//! `Strict0` elements are pairs `(pf, rf)` with `pf /\ rf = 0`, kept in
//! canonical form `(p, r /\ ~p)` after every operation. `Chu1` drops the
//! disjointness requirement and never canonicalizes.

use std::fmt;

use crate::lattice::{Elem, FiniteHeyting, LatticeError};
use crate::models::{AffineModel, ModelError, ModelKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChuProp {
    pub pf: Elem,
    pub rf: Elem,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChuVariant {
    Strict0,
    Chu1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Tensor,
    Par,
    With,
    Plus,
    Limp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnOp {
    Neg,
    Bang,
    WhyNot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quant {
    Forall,
    Exists,
}

#[derive(Clone)]
pub struct ChuModel {
    base: FiniteHeyting,
    variant: ChuVariant,
    elements: Vec<ChuProp>,
}

impl fmt::Debug for ChuModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChuModel({})", self.model_id())
    }
}

impl ChuModel {
    pub fn new(base: FiniteHeyting, variant: ChuVariant) -> Result<Self, LatticeError> {
        if base.size() > crate::lattice::MAX_SIZE {
            return Err(LatticeError::TooLarge(base.size()));
        }
        let mut elements = Vec::new();
        for p in base.elements() {
            for r in base.elements() {
                if variant == ChuVariant::Chu1 || base.meet(p, r) == base.bot() {
                    elements.push(ChuProp { pf: p, rf: r });
                }
            }
        }
        Ok(ChuModel { base, variant, elements })
    }

    pub fn base(&self) -> &FiniteHeyting {
        &self.base
    }
    pub fn variant(&self) -> ChuVariant {
        self.variant
    }

    pub fn model_id(&self) -> String {
        let prefix = match self.variant {
            ChuVariant::Strict0 => "chu0",
            ChuVariant::Chu1 => "chu1",
        };
        format!("{prefix}:{}", self.base.name())
    }

    /// Canonical representative of an arbitrary pair.
    pub fn canon(&self, pf: Elem, rf: Elem) -> ChuProp {
        match self.variant {
            ChuVariant::Strict0 => ChuProp { pf, rf: self.base.meet(rf, self.base.neg(pf)) },
            ChuVariant::Chu1 => ChuProp { pf, rf },
        }
    }

    pub fn top(&self) -> ChuProp {
        ChuProp { pf: self.base.top(), rf: self.base.bot() }
    }
    pub fn bot(&self) -> ChuProp {
        ChuProp { pf: self.base.bot(), rf: self.base.top() }
    }

    pub fn leq(&self, p: ChuProp, q: ChuProp) -> bool {
        self.base.leq(p.pf, q.pf) && self.base.leq(q.rf, p.rf)
    }

    pub fn binop(&self, op: BinOp, p: ChuProp, q: ChuProp) -> ChuProp {
        let h = &self.base;
        match op {
            BinOp::With => self.canon(h.meet(p.pf, q.pf), h.join(p.rf, q.rf)),
            BinOp::Plus => self.canon(h.join(p.pf, q.pf), h.meet(p.rf, q.rf)),
            BinOp::Tensor => self.canon(h.meet(p.pf, q.pf), h.meet(h.imp(p.pf, q.rf), h.imp(q.pf, p.rf))),
            BinOp::Limp => self.canon(h.meet(h.imp(p.pf, q.pf), h.imp(q.rf, p.rf)), h.meet(p.pf, q.rf)),
            BinOp::Par => {
                let t = self.binop(BinOp::Tensor, self.unop(UnOp::Neg, p), self.unop(UnOp::Neg, q));
                self.unop(UnOp::Neg, t)
            }
        }
    }

    pub fn unop(&self, op: UnOp, p: ChuProp) -> ChuProp {
        let h = &self.base;
        match op {
            UnOp::Neg => ChuProp { pf: p.rf, rf: p.pf },
            UnOp::Bang => self.canon(p.pf, h.neg(p.pf)),
            UnOp::WhyNot => self.canon(h.neg(p.rf), p.rf),
        }
    }

    pub fn quant(&self, op: Quant, family: &[ChuProp]) -> ChuProp {
        let h = &self.base;
        let pfs = family.iter().map(|p| p.pf);
        let rfs = family.iter().map(|p| p.rf);
        match op {
            Quant::Forall => self.canon(h.meet_all(pfs), h.join_all(rfs)),
            Quant::Exists => self.canon(h.join_all(pfs), h.meet_all(rfs)),
        }
    }

    /// All elements, ordered by proof part then refutation part.
    pub fn enumerate(&self) -> &[ChuProp] {
        &self.elements
    }

    pub fn format(&self, p: ChuProp) -> String {
        format!("({},{})", self.base.label(p.pf), self.base.label(p.rf))
    }

    pub fn parse(&self, text: &str) -> Result<ChuProp, ModelError> {
        let t = text.trim();
        match t {
            "T" => return Ok(self.top()),
            "F" => return Ok(self.bot()),
            "N" => return Ok(ChuProp { pf: self.base.bot(), rf: self.base.bot() }),
            _ => {}
        }
        let inner = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| ModelError::BadElement(text.to_string(), self.model_id()))?;
        let mut depth = 0i32;
        let mut split = None;
        for (i, c) in inner.char_indices() {
            match c {
                '{' | '(' => depth += 1,
                '}' | ')' => depth -= 1,
                ',' if depth == 0 => {
                    split = Some(i);
                    break;
                }
                _ => {}
            }
        }
        let i = split.ok_or_else(|| ModelError::BadElement(text.to_string(), self.model_id()))?;
        let lookup = |s: &str| self.base.elem(s.trim()).ok_or_else(|| ModelError::BadElement(text.to_string(), self.model_id()));
        let (pf, rf) = (lookup(&inner[..i])?, lookup(&inner[i + 1..])?);
        let p = ChuProp { pf, rf };
        if self.variant == ChuVariant::Strict0 && self.base.meet(pf, rf) != self.base.bot() {
            return Err(ModelError::NotCanonical(text.to_string()));
        }
        Ok(p)
    }
}

impl AffineModel for ChuModel {
    type Elem = ChuProp;

    fn id(&self) -> String {
        self.model_id()
    }
    fn kind(&self) -> ModelKind {
        match self.variant {
            ChuVariant::Strict0 => ModelKind::Chu0,
            ChuVariant::Chu1 => ModelKind::Chu1,
        }
    }
    fn top(&self) -> ChuProp {
        ChuModel::top(self)
    }
    fn bot(&self) -> ChuProp {
        ChuModel::bot(self)
    }
    fn tensor(&self, a: ChuProp, b: ChuProp) -> ChuProp {
        self.binop(BinOp::Tensor, a, b)
    }
    fn par(&self, a: ChuProp, b: ChuProp) -> ChuProp {
        self.binop(BinOp::Par, a, b)
    }
    fn with(&self, a: ChuProp, b: ChuProp) -> ChuProp {
        self.binop(BinOp::With, a, b)
    }
    fn plus(&self, a: ChuProp, b: ChuProp) -> ChuProp {
        self.binop(BinOp::Plus, a, b)
    }
    fn limp(&self, a: ChuProp, b: ChuProp) -> ChuProp {
        self.binop(BinOp::Limp, a, b)
    }
    fn neg(&self, a: ChuProp) -> ChuProp {
        self.unop(UnOp::Neg, a)
    }
    fn bang(&self, a: ChuProp) -> ChuProp {
        self.unop(UnOp::Bang, a)
    }
    fn whynot(&self, a: ChuProp) -> ChuProp {
        self.unop(UnOp::WhyNot, a)
    }
    fn leq(&self, a: ChuProp, b: ChuProp) -> bool {
        ChuModel::leq(self, a, b)
    }
    fn forall(&self, items: &[ChuProp]) -> ChuProp {
        self.quant(Quant::Forall, items)
    }
    fn exists(&self, items: &[ChuProp]) -> ChuProp {
        self.quant(Quant::Exists, items)
    }
    fn elements(&self) -> Vec<ChuProp> {
        self.elements.clone()
    }
    fn is_exhaustive(&self) -> bool {
        true
    }
    fn format_elem(&self, e: ChuProp) -> String {
        self.format(e)
    }
    fn parse_elem(&self, s: &str) -> Result<ChuProp, ModelError> {
        self.parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{heyting_chain, resolve_lattice, ZOO};

    fn chu(id: &str, v: ChuVariant) -> ChuModel {
        ChuModel::new(resolve_lattice(id).unwrap(), v).unwrap()
    }

    fn tnf(m: &ChuModel) -> (ChuProp, ChuProp, ChuProp) {
        (m.parse("(1,0)").unwrap(), m.parse("(0,0)").unwrap(), m.parse("(0,1)").unwrap())
    }

    #[test]
    fn canon_examples() {
        let m = chu("chain2", ChuVariant::Strict0);
        assert_eq!(m.canon(1, 1), ChuProp { pf: 1, rf: 0 });
        assert_eq!(m.canon(0, 1), ChuProp { pf: 0, rf: 1 });
        let c3 = ChuModel::new(heyting_chain(3).unwrap(), ChuVariant::Strict0).unwrap();
        assert_eq!(c3.canon(1, 1), ChuProp { pf: 1, rf: 0 });
        let c1 = chu("chain2", ChuVariant::Chu1);
        assert_eq!(c1.canon(1, 1), ChuProp { pf: 1, rf: 1 });
    }

    #[test]
    fn three_valued_examples() {
        let m = chu("chain2", ChuVariant::Strict0);
        let (t, n, f) = tnf(&m);
        assert!(m.leq(f, n) && m.leq(n, t) && !m.leq(t, f));
        assert_eq!(m.binop(BinOp::Tensor, n, n), f);
        assert_eq!(m.binop(BinOp::With, t, f), f);
        assert_eq!(m.binop(BinOp::Plus, t, f), t);
        assert_eq!(m.binop(BinOp::Limp, n, n), t);
        assert_eq!(m.unop(UnOp::Neg, n), n);
        assert_eq!(m.unop(UnOp::Neg, t), f);
        assert_eq!(m.unop(UnOp::Bang, n), f);
        assert_eq!(m.unop(UnOp::WhyNot, n), t);
        assert_eq!(m.quant(Quant::Forall, &[]), t);
        assert_eq!(m.quant(Quant::Exists, &[]), f);
        assert_eq!(m.quant(Quant::Exists, &[t, n]), t);
        assert_eq!(m.quant(Quant::Forall, &[t, f]), f);
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(chu("chain2", ChuVariant::Strict0).enumerate().len(), 3);
        let c3 = chu("chain3", ChuVariant::Strict0);
        let shown: Vec<String> = c3.enumerate().iter().map(|&p| c3.format(p)).collect();
        assert_eq!(shown, ["(0,0)", "(0,1/2)", "(0,1)", "(1/2,0)", "(1,0)"]);
        assert_eq!(chu("chain2", ChuVariant::Chu1).enumerate().len(), 4);
    }

    #[test]
    fn par_matches_expanded_formula() {
        for id in ZOO {
            for v in [ChuVariant::Strict0, ChuVariant::Chu1] {
                let m = chu(id, v);
                let h = m.base();
                for &p in m.enumerate() {
                    for &q in m.enumerate() {
                        let expanded = m.canon(h.meet(h.imp(p.rf, q.pf), h.imp(q.rf, p.pf)), h.meet(p.rf, q.rf));
                        assert_eq!(m.binop(BinOp::Par, p, q), expanded);
                    }
                }
            }
        }
    }

    #[test]
    fn strict_elements_stay_canonical() {
        let m = chu("downset:vee", ChuVariant::Strict0);
        let h = m.base();
        let ops = [BinOp::Tensor, BinOp::Par, BinOp::With, BinOp::Plus, BinOp::Limp];
        for &p in m.enumerate() {
            for u in [UnOp::Neg, UnOp::Bang, UnOp::WhyNot] {
                let r = m.unop(u, p);
                assert_eq!(h.meet(r.pf, r.rf), h.bot());
            }
            for &q in m.enumerate() {
                for op in ops {
                    let r = m.binop(op, p, q);
                    assert_eq!(h.meet(r.pf, r.rf), h.bot());
                }
            }
        }
    }

    #[test]
    fn parse_and_format_roundtrip() {
        let m = chu("bool2", ChuVariant::Strict0);
        for &p in m.enumerate() {
            assert_eq!(m.parse(&m.format(p)).unwrap(), p);
        }
        assert!(matches!(m.parse("({a},{a})"), Err(ModelError::NotCanonical(_))));
        assert!(m.parse("(x)").is_err());
    }
}
