use super::{simplify, Expr, Func};

/// Outcome of symbolic differentiation with respect to `x`.
#[derive(Debug, Clone, PartialEq)]
pub enum DiffResult {
    Derivative(Expr),
    /// The expression lies outside the domain of the operator. Carries the
    /// first offending `abs(..)` subterm.
    NonDifferentiable(Expr),
}

impl DiffResult {
    pub fn derivative(self) -> Option<Expr> {
        match self {
            DiffResult::Derivative(e) => Some(e),
            DiffResult::NonDifferentiable(_) => None,
        }
    }

    pub fn into_result(self) -> crate::Result<Expr> {
        match self {
            DiffResult::Derivative(e) => Ok(e),
            DiffResult::NonDifferentiable(sub) => Err(crate::Error::NonDifferentiable(sub.to_string())),
        }
    }
}

/// d/dx of `e`, treating `n` as a parameter. The result is simplified.
///
/// `abs` of an argument that depends on `x` is the only construct outside the
/// operator's domain.
pub fn differentiate(e: &Expr) -> DiffResult {
    match raw(e) {
        Ok(d) => DiffResult::Derivative(simplify(&d)),
        Err(sub) => DiffResult::NonDifferentiable(sub),
    }
}

/// Unsimplified derivative, exactly as the sum, product, quotient and chain
/// rules produce it.
pub(crate) fn raw(e: &Expr) -> Result<Expr, Expr> {
    if !e.has_x() {
        return Ok(Expr::zero());
    }
    Ok(match e {
        Expr::X => Expr::one(),
        Expr::Poly(p) => p.derivative_expr(),
        Expr::Const(_) | Expr::Pi | Expr::N => unreachable!("x-free leaves handled above"),
        Expr::Neg(a) => Expr::neg(raw(a)?),
        Expr::Add(a, b) => Expr::add(raw(a)?, raw(b)?),
        Expr::Sub(a, b) => Expr::sub(raw(a)?, raw(b)?),
        Expr::Mul(a, b) => {
            let (da, db) = (raw(a)?, raw(b)?);
            Expr::add(Expr::mul(da, (**b).clone()), Expr::mul((**a).clone(), db))
        }
        Expr::Div(a, b) => {
            let (da, db) = (raw(a)?, raw(b)?);
            Expr::div(
                Expr::sub(Expr::mul(da, (**b).clone()), Expr::mul((**a).clone(), db)),
                Expr::pow((**b).clone(), Expr::int(2)),
            )
        }
        Expr::Pow(u, v) if !v.has_x() => {
            // v * u^(v-1) * u'
            let du = raw(u)?;
            Expr::mul(
                Expr::mul(
                    (**v).clone(),
                    Expr::pow((**u).clone(), Expr::sub((**v).clone(), Expr::one())),
                ),
                du,
            )
        }
        Expr::Pow(u, v) if !u.has_x() => {
            // u^v * log(u) * v'
            let dv = raw(v)?;
            Expr::mul(Expr::mul(e.clone(), Expr::call(Func::Log, (**u).clone())), dv)
        }
        Expr::Pow(u, v) => {
            // u^v * (v' log(u) + v u'/u)
            let (du, dv) = (raw(u)?, raw(v)?);
            Expr::mul(
                e.clone(),
                Expr::add(
                    Expr::mul(dv, Expr::call(Func::Log, (**u).clone())),
                    Expr::div(Expr::mul((**v).clone(), du), (**u).clone()),
                ),
            )
        }
        Expr::Call(Func::Abs, _) => return Err(e.clone()),
        Expr::Call(f, a) => {
            let da = raw(a)?;
            let outer = match f {
                Func::Sin => Expr::call(Func::Cos, (**a).clone()),
                Func::Cos => Expr::neg(Expr::call(Func::Sin, (**a).clone())),
                Func::Exp => e.clone(),
                Func::Log => Expr::div(Expr::one(), (**a).clone()),
                Func::Abs => unreachable!(),
            };
            Expr::mul(outer, da)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{eval, parse};

    fn d(src: &str) -> DiffResult {
        differentiate(&parse(src).unwrap())
    }

    fn simplified(src: &str) -> Expr {
        simplify(&parse(src).unwrap())
    }

    #[test]
    fn power_in_index() {
        assert_eq!(d("x^n"), DiffResult::Derivative(simplified("n * x^(n-1)")));
    }

    #[test]
    fn decaying_oscillation_has_unit_amplitude_derivative() {
        assert_eq!(
            d("(1/2)^n * sin(2^n*x)"),
            DiffResult::Derivative(simplified("cos(2^n*x)"))
        );
    }

    #[test]
    fn abs_is_outside_the_domain() {
        assert_eq!(
            d("abs(x)"),
            DiffResult::NonDifferentiable(parse("abs(x)").unwrap())
        );
        assert!(matches!(d("x + 2*abs(sin(x))"), DiffResult::NonDifferentiable(_)));
        // abs of an x-free argument is a constant in x.
        assert_eq!(
            d("abs(n - 3) * x"),
            DiffResult::Derivative(simplified("abs(n - 3)"))
        );
    }

    #[test]
    fn constants_differentiate_to_exact_zero() {
        for src in ["5", "pi", "n", "(1/2)^n", "exp(n)", "abs(-2)", "log(n+1)/n"] {
            assert_eq!(d(src), DiffResult::Derivative(Expr::zero()), "{src}");
        }
    }

    #[test]
    fn general_power_matches_closed_form() {
        let DiffResult::Derivative(dx) = d("x^x") else {
            panic!()
        };
        for x in [0.5f64, 1.0, 2.3] {
            let expected = x.powf(x) * (x.ln() + 1.0);
            assert!((eval(&dx, x, 1).unwrap() - expected).abs() < 1e-12);
        }
    }
}
