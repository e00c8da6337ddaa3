use rand::RngCore;

use super::{AffineModel, ModelError, ModelKind, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LukOp {
    Tensor,
    Par,
    With,
    Plus,
    Limp,
    Neg,
    Bang,
    WhyNot,
}

/// Evaluates one Łukasiewicz connective exactly.
pub fn luk_op(op: LukOp, args: &[Rational]) -> Result<Rational, ModelError> {
    if let Some(bad) = args.iter().find(|a| !a.in_unit()) {
        return Err(ModelError::OutOfRange(bad.to_string()));
    }
    let (zero, one) = (Rational::zero(), Rational::one());
    let a = args[0];
    let b = || args[1];
    Ok(match op {
        LukOp::Tensor => (a + b() - one).max(zero),
        LukOp::Par => (a + b()).min(one),
        LukOp::With => a.min(b()),
        LukOp::Plus => a.max(b()),
        LukOp::Limp => (one - a + b()).min(one),
        LukOp::Neg => one - a,
        LukOp::Bang => {
            if a == one {
                one
            } else {
                zero
            }
        }
        LukOp::WhyNot => {
            if a == zero {
                zero
            } else {
                one
            }
        }
    })
}

/// Łukasiewicz logic on the rationals in [0,1].
///
/// The carrier is infinite, so `elements` is the sample grid
/// `{0, 1/(n-1), ..., 1}` used by sweep protocols.
#[derive(Clone, Debug)]
pub struct LukModel {
    points: usize,
    grid: Vec<Rational>,
}

impl LukModel {
    pub fn new(points: usize) -> Self {
        let d = (points.max(2) - 1) as i64;
        let grid = (0..=d).map(|k| Rational::new(k, d)).collect();
        LukModel { points: points.max(2), grid }
    }

    pub fn grid(&self) -> &[Rational] {
        &self.grid
    }

    fn op2(&self, op: LukOp, a: Rational, b: Rational) -> Rational {
        luk_op(op, &[a, b]).expect("carrier values stay in [0,1]")
    }

    fn op1(&self, op: LukOp, a: Rational) -> Rational {
        luk_op(op, &[a]).expect("carrier values stay in [0,1]")
    }
}

/// Largest denominator drawn by `random_element`.
pub const RANDOM_DENOMINATOR: i64 = 60;

impl AffineModel for LukModel {
    type Elem = Rational;

    fn id(&self) -> String {
        format!("luk:grid{}", self.points)
    }
    fn kind(&self) -> ModelKind {
        ModelKind::Lukasiewicz
    }
    fn top(&self) -> Rational {
        Rational::one()
    }
    fn bot(&self) -> Rational {
        Rational::zero()
    }
    fn tensor(&self, a: Rational, b: Rational) -> Rational {
        self.op2(LukOp::Tensor, a, b)
    }
    fn par(&self, a: Rational, b: Rational) -> Rational {
        self.op2(LukOp::Par, a, b)
    }
    fn with(&self, a: Rational, b: Rational) -> Rational {
        self.op2(LukOp::With, a, b)
    }
    fn plus(&self, a: Rational, b: Rational) -> Rational {
        self.op2(LukOp::Plus, a, b)
    }
    fn limp(&self, a: Rational, b: Rational) -> Rational {
        self.op2(LukOp::Limp, a, b)
    }
    fn neg(&self, a: Rational) -> Rational {
        self.op1(LukOp::Neg, a)
    }
    fn bang(&self, a: Rational) -> Rational {
        self.op1(LukOp::Bang, a)
    }
    fn whynot(&self, a: Rational) -> Rational {
        self.op1(LukOp::WhyNot, a)
    }
    fn leq(&self, a: Rational, b: Rational) -> bool {
        a <= b
    }
    fn elements(&self) -> Vec<Rational> {
        self.grid.clone()
    }
    fn is_exhaustive(&self) -> bool {
        false
    }
    fn random_element(&self, rng: &mut dyn RngCore) -> Rational {
        let d = 1 + (rng.next_u64() % RANDOM_DENOMINATOR as u64) as i64;
        let n = (rng.next_u64() % (d as u64 + 1)) as i64;
        Rational::new(n, d)
    }
    fn format_elem(&self, e: Rational) -> String {
        e.to_string()
    }
    fn parse_elem(&self, s: &str) -> Result<Rational, ModelError> {
        let r: Rational = s.parse()?;
        if !r.in_unit() {
            return Err(ModelError::OutOfRange(s.to_string()));
        }
        Ok(r)
    }
}
