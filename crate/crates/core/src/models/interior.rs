use crate::lattice::{parse_set_label, set_label, TopSpaceSpec};

use super::{AffineModel, ModelError, ModelKind};

/// The powerset Boolean algebra of a finite space with `!` as interior.
///
/// Multiplicatives and additives coincide; `?` is defined as the de Morgan
/// dual of `!`, which is topological closure.
#[derive(Clone, Debug)]
pub struct InteriorModel {
    space: TopSpaceSpec,
}

impl InteriorModel {
    pub fn new(space: TopSpaceSpec) -> Self {
        InteriorModel { space }
    }
    pub fn space(&self) -> &TopSpaceSpec {
        &self.space
    }
    fn full(&self) -> u32 {
        self.space.full()
    }
    /// Parses `{a,b}` into a point set.
    pub fn set(&self, label: &str) -> u32 {
        parse_set_label(label, &self.space.points).expect("known points")
    }
}

impl AffineModel for InteriorModel {
    type Elem = u32;

    fn id(&self) -> String {
        format!("int:{}", self.space.name)
    }
    fn kind(&self) -> ModelKind {
        ModelKind::Interior
    }
    fn top(&self) -> u32 {
        self.full()
    }
    fn bot(&self) -> u32 {
        0
    }
    fn tensor(&self, a: u32, b: u32) -> u32 {
        a & b
    }
    fn par(&self, a: u32, b: u32) -> u32 {
        a | b
    }
    fn with(&self, a: u32, b: u32) -> u32 {
        a & b
    }
    fn plus(&self, a: u32, b: u32) -> u32 {
        a | b
    }
    fn limp(&self, a: u32, b: u32) -> u32 {
        (self.full() & !a) | b
    }
    fn neg(&self, a: u32) -> u32 {
        self.full() & !a
    }
    fn bang(&self, a: u32) -> u32 {
        self.space.interior(a)
    }
    fn whynot(&self, a: u32) -> u32 {
        self.neg(self.bang(self.neg(a)))
    }
    fn leq(&self, a: u32, b: u32) -> bool {
        a & !b == 0
    }
    fn elements(&self) -> Vec<u32> {
        (0..=self.full()).collect()
    }
    fn is_exhaustive(&self) -> bool {
        true
    }
    fn format_elem(&self, e: u32) -> String {
        set_label(e, &self.space.points)
    }
    fn parse_elem(&self, s: &str) -> Result<u32, ModelError> {
        match s.trim() {
            "T" => return Ok(self.full()),
            "F" => return Ok(0),
            _ => {}
        }
        parse_set_label(s, &self.space.points).map_err(|_| ModelError::BadElement(s.to_string(), self.id()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::builtin_space;

    #[test]
    fn interior_examples() {
        let m = InteriorModel::new(builtin_space("3pt").unwrap());
        assert_eq!(m.bang(m.set("{a,b}")), m.set("{a}"));
        assert_eq!(m.whynot(m.set("{a}")), m.set("{a,b}"));
        for u in m.elements() {
            assert_eq!(m.neg(m.neg(u)), u);
            assert_eq!(m.whynot(u), m.space().closure(u));
        }
        assert_eq!(m.format_elem(m.set("{a,c}")), "{a,c}");
        assert_eq!(m.elements().len(), 8);
    }
}
