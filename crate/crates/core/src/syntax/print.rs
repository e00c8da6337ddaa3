use super::{IntFormula, LinearFormula, Term};

pub fn print_term(t: &Term) -> String {
    match t {
        Term::Var(v) => v.clone(),
        Term::App(f, args) if args.is_empty() => f.clone(),
        Term::App(f, args) => format!("{f}({})", args.iter().map(print_term).collect::<Vec<_>>().join(",")),
    }
}

fn fmt_atom(p: &str, args: &[Term]) -> String {
    if args.is_empty() {
        p.to_string()
    } else {
        format!("{p}({})", args.iter().map(print_term).collect::<Vec<_>>().join(","))
    }
}

fn paren(s: String, yes: bool) -> String {
    if yes {
        format!("({s})")
    } else {
        s
    }
}

// Linear binding levels; quantifiers are handled separately.
fn lin_level(f: &LinearFormula) -> u8 {
    use LinearFormula::*;
    match f {
        Limp(..) | Liff(..) => 1,
        With(..) | Plus(..) => 2,
        Tensor(..) | Par(..) => 3,
        Neg(_) | Bang(_) | WhyNot(_) => 4,
        Atom(..) | Top | Bot => 5,
        Forall(..) | Exists(..) => 0,
    }
}

fn is_lin_quant(f: &LinearFormula) -> bool {
    matches!(f, LinearFormula::Forall(..) | LinearFormula::Exists(..))
}

/// Prints with as few parentheses as the grammar allows.
///
/// Mixed multiplicative/additive operands are always parenthesized because
/// the parser refuses them bare. A quantifier needs no parentheses when
/// nothing follows it, which `rightmost` tracks.
pub fn print_linear(f: &LinearFormula) -> String {
    lin(f, true)
}

fn lin(f: &LinearFormula, rightmost: bool) -> String {
    use LinearFormula::*;
    match f {
        Atom(p, args) => fmt_atom(p, args),
        Top => "T".into(),
        Bot => "F".into(),
        Neg(x) | Bang(x) | WhyNot(x) => {
            let op = match f {
                Neg(_) => "~",
                Bang(_) => "!",
                _ => "?",
            };
            let wrap = if is_lin_quant(x) { !rightmost } else { lin_level(x) < 4 };
            format!("{op}{}", paren(lin(x, rightmost || wrap), wrap))
        }
        Tensor(a, b) | Par(a, b) | With(a, b) | Plus(a, b) => {
            let op = match f {
                Tensor(..) => "*",
                Par(..) => "@",
                With(..) => "&",
                _ => "+",
            };
            let same = |x: &LinearFormula| std::mem::discriminant(x) == std::mem::discriminant(f);
            let wl = !same(a) && lin_level(a) < 4;
            let wr = if is_lin_quant(b) { !rightmost } else { lin_level(b) < 4 };
            format!("{} {op} {}", paren(lin(a, wl), wl), paren(lin(b, rightmost || wr), wr))
        }
        Limp(a, b) | Liff(a, b) => {
            let op = if matches!(f, Limp(..)) { "-o" } else { "o-o" };
            let wl = lin_level(a) <= 1;
            let wr = is_lin_quant(b) && !rightmost;
            format!("{} {op} {}", paren(lin(a, wl), wl), paren(lin(b, rightmost || wr), wr))
        }
        Forall(v, s, body) => format!("/\\{v}:{s}. {}", lin(body, true)),
        Exists(v, s, body) => format!("\\/{v}:{s}. {}", lin(body, true)),
    }
}

fn int_level(f: &IntFormula) -> u8 {
    use IntFormula::*;
    match f {
        Imp(..) => 1,
        Or(..) => 2,
        And(..) => 3,
        Not(_) => 4,
        Atom(..) | True | False => 5,
        Forall(..) | Exists(..) => 0,
    }
}

fn is_int_quant(f: &IntFormula) -> bool {
    matches!(f, IntFormula::Forall(..) | IntFormula::Exists(..))
}

/// Prints an intuitionistic formula; `/\` binds tighter than `\/`, which
/// binds tighter than the right-associative `->`.
pub fn print_int(f: &IntFormula) -> String {
    int(f, true)
}

fn int(f: &IntFormula, rightmost: bool) -> String {
    use IntFormula::*;
    match f {
        Atom(p, args) => fmt_atom(p, args),
        True => "true".into(),
        False => "false".into(),
        Not(x) => {
            let wrap = if is_int_quant(x) { !rightmost } else { int_level(x) < 4 };
            format!("~{}", paren(int(x, rightmost || wrap), wrap))
        }
        And(a, b) | Or(a, b) => {
            let (op, lvl) = if matches!(f, And(..)) { ("/\\", 3) } else { ("\\/", 2) };
            let wl = int_level(a) < lvl;
            let wr = if is_int_quant(b) { !rightmost } else { int_level(b) <= lvl };
            format!("{} {op} {}", paren(int(a, wl), wl), paren(int(b, rightmost || wr), wr))
        }
        Imp(a, b) => {
            let wl = int_level(a) <= 1;
            let wr = is_int_quant(b) && !rightmost;
            format!("{} -> {}", paren(int(a, wl), wl), paren(int(b, rightmost || wr), wr))
        }
        Forall(v, s, body) => format!("forall {v}:{s}. {}", int(body, true)),
        Exists(v, s, body) => format!("exists {v}:{s}. {}", int(body, true)),
    }
}
