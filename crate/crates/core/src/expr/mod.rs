//! Closed-form expressions in the point variable `x` and the sequence index `n`.
//!
//! An [`Expr`] is the carrier for the terms of function sequences. Besides the
//! parser and evaluator this module provides the symbolic derivative with
//! respect to `x` (a partial operator: `abs` of an `x`-dependent argument is
//! not differentiated), a value-preserving simplifier, and the polynomial
//! approximants used by smoothing sections.

mod approx;
mod diff;
mod eval;
mod number;
mod parse;
mod simplify;

use std::fmt;
use std::sync::Arc;

pub use approx::{bernstein_approx, chebyshev_approx, Basis, Polynomial};
pub use diff::{differentiate, DiffResult};
pub use eval::eval;
pub use number::Number;
pub use parse::parse;
pub use simplify::simplify;

/// Elementary functions of one argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Log,
    Abs,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Abs => "abs",
        }
    }

    pub(crate) fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "exp" => Func::Exp,
            "log" => Func::Log,
            "abs" => Func::Abs,
            _ => return None,
        })
    }
}

/// Expression tree. Immutable once built; cheap to share across threads.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(Number),
    /// The named constant `pi`.
    Pi,
    X,
    N,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
    /// A polynomial in `x` held in a numerically stable basis. Produced by
    /// the approximation routines; it has no source syntax.
    Poly(Arc<Polynomial>),
}

impl Expr {
    pub fn int(v: i64) -> Expr {
        Expr::Const(Number::int(v))
    }

    pub fn ratio(num: i64, den: i64) -> Expr {
        Expr::Const(Number::ratio(num, den))
    }

    pub fn real(v: f64) -> Expr {
        Expr::Const(Number::from_f64(v))
    }

    pub fn zero() -> Expr {
        Expr::int(0)
    }

    pub fn one() -> Expr {
        Expr::int(1)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: Expr) -> Expr {
        Expr::Neg(Box::new(a))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::Sub(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn div(a: Expr, b: Expr) -> Expr {
        Expr::Div(Box::new(a), Box::new(b))
    }

    pub fn pow(a: Expr, b: Expr) -> Expr {
        Expr::Pow(Box::new(a), Box::new(b))
    }

    pub fn call(f: Func, a: Expr) -> Expr {
        Expr::Call(f, Box::new(a))
    }

    pub fn as_const(&self) -> Option<&Number> {
        match self {
            Expr::Const(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Expr::Const(c) if c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Expr::Const(c) if c.is_one())
    }

    fn any(&self, pred: &dyn Fn(&Expr) -> bool) -> bool {
        if pred(self) {
            return true;
        }
        match self {
            Expr::Const(_) | Expr::Pi | Expr::X | Expr::N | Expr::Poly(_) => false,
            Expr::Neg(a) | Expr::Call(_, a) => a.any(pred),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Pow(a, b) => {
                a.any(pred) || b.any(pred)
            }
        }
    }

    /// True when the expression depends on `x` syntactically.
    pub fn has_x(&self) -> bool {
        self.any(&|e| matches!(e, Expr::X | Expr::Poly(_)))
    }

    /// True when the expression depends on the sequence index `n`.
    pub fn has_n(&self) -> bool {
        self.any(&|e| matches!(e, Expr::N))
    }

    /// Replaces every occurrence of `n` by the integer constant `i`.
    pub fn subst_n(&self, i: u64) -> Expr {
        self.map_leaves(&|e| match e {
            Expr::N => Some(Expr::int(i as i64)),
            _ => None,
        })
    }

    fn map_leaves(&self, f: &dyn Fn(&Expr) -> Option<Expr>) -> Expr {
        if let Some(r) = f(self) {
            return r;
        }
        match self {
            Expr::Const(_) | Expr::Pi | Expr::X | Expr::N | Expr::Poly(_) => self.clone(),
            Expr::Neg(a) => Expr::neg(a.map_leaves(f)),
            Expr::Call(func, a) => Expr::call(*func, a.map_leaves(f)),
            Expr::Add(a, b) => Expr::add(a.map_leaves(f), b.map_leaves(f)),
            Expr::Sub(a, b) => Expr::sub(a.map_leaves(f), b.map_leaves(f)),
            Expr::Mul(a, b) => Expr::mul(a.map_leaves(f), b.map_leaves(f)),
            Expr::Div(a, b) => Expr::div(a.map_leaves(f), b.map_leaves(f)),
            Expr::Pow(a, b) => Expr::pow(a.map_leaves(f), b.map_leaves(f)),
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Expr::Const(_) | Expr::Pi | Expr::X | Expr::N | Expr::Poly(_) => 1,
            Expr::Neg(a) | Expr::Call(_, a) => 1 + a.size(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Pow(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }

    // Binding strength used by the printer. Mirrors the grammar: unary minus
    // binds tighter than `^`, so `-x^2` reads as `(-x)^2`.
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Pow(..) => 3,
            Expr::Neg(_) => 4,
            Expr::Const(c) => c.precedence(),
            _ => 5,
        }
    }
}

const PREC_SUM: u8 = 1;
const PREC_PRODUCT: u8 = 2;
const PREC_POWER: u8 = 3;
const PREC_UNARY: u8 = 4;

fn write_operand(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if e.precedence() < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Pi => f.write_str("pi"),
            Expr::X => f.write_str("x"),
            Expr::N => f.write_str("n"),
            Expr::Poly(p) => write!(f, "{p}"),
            Expr::Neg(a) => {
                f.write_str("-")?;
                write_operand(f, a, PREC_UNARY)
            }
            Expr::Add(a, b) => {
                write_operand(f, a, PREC_SUM)?;
                f.write_str(" + ")?;
                write_operand(f, b, PREC_PRODUCT)
            }
            Expr::Sub(a, b) => {
                write_operand(f, a, PREC_SUM)?;
                f.write_str(" - ")?;
                write_operand(f, b, PREC_PRODUCT)
            }
            Expr::Mul(a, b) => {
                write_operand(f, a, PREC_PRODUCT)?;
                f.write_str("*")?;
                write_operand(f, b, PREC_POWER)
            }
            Expr::Div(a, b) => {
                write_operand(f, a, PREC_PRODUCT)?;
                f.write_str("/")?;
                write_operand(f, b, PREC_POWER)
            }
            Expr::Pow(a, b) => {
                write_operand(f, a, PREC_UNARY)?;
                f.write_str("^")?;
                write_operand(f, b, PREC_POWER)
            }
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

impl std::str::FromStr for Expr {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Expr> {
        parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printer_respects_grammar_precedence() {
        let e = Expr::neg(Expr::pow(Expr::X, Expr::int(2)));
        assert_eq!(e.to_string(), "-(x^2)");
        let e = Expr::pow(Expr::ratio(1, 2), Expr::N);
        assert_eq!(e.to_string(), "(1/2)^n");
        let e = Expr::sub(Expr::X, Expr::sub(Expr::N, Expr::one()));
        assert_eq!(e.to_string(), "x - (n - 1)");
        let e = Expr::pow(Expr::X, Expr::pow(Expr::N, Expr::int(2)));
        assert_eq!(e.to_string(), "x^n^2");
        let e = Expr::pow(Expr::pow(Expr::X, Expr::N), Expr::int(2));
        assert_eq!(e.to_string(), "(x^n)^2");
    }

    #[test]
    fn subst_n_replaces_index() {
        let e = parse("x^n + n").unwrap();
        let s = e.subst_n(3);
        assert!(!s.has_n());
        assert_eq!(eval(&s, 2.0, 1).unwrap(), 11.0);
    }
}
