use super::{Expr, Func};
use crate::{Error, Result};

/// Evaluates `e` at the point `x` with sequence index `n`.
///
/// Fails with [`Error::Domain`] on the logarithm of a non-positive number,
/// division by zero, zero raised to a negative power, and a negative base
/// raised to a non-integer power.
pub fn eval(e: &Expr, x: f64, n: u64) -> Result<f64> {
    Ok(match e {
        Expr::Const(c) => c.to_f64(),
        Expr::Pi => std::f64::consts::PI,
        Expr::X => x,
        Expr::N => n as f64,
        Expr::Poly(p) => p.eval(x),
        Expr::Neg(a) => -eval(a, x, n)?,
        Expr::Add(a, b) => eval(a, x, n)? + eval(b, x, n)?,
        Expr::Sub(a, b) => eval(a, x, n)? - eval(b, x, n)?,
        Expr::Mul(a, b) => eval(a, x, n)? * eval(b, x, n)?,
        Expr::Div(a, b) => {
            let num = eval(a, x, n)?;
            let den = eval(b, x, n)?;
            if den == 0.0 {
                return Err(Error::Domain(format!(
                    "division by zero in `{e}` at x={x}, n={n}"
                )));
            }
            num / den
        }
        Expr::Pow(a, b) => power(eval(a, x, n)?, eval(b, x, n)?)
            .map_err(|why| Error::Domain(format!("{why} in `{e}` at x={x}, n={n}")))?,
        Expr::Call(func, a) => {
            let v = eval(a, x, n)?;
            match func {
                Func::Sin => v.sin(),
                Func::Cos => v.cos(),
                Func::Exp => v.exp(),
                Func::Abs => v.abs(),
                Func::Log => {
                    if v <= 0.0 {
                        return Err(Error::Domain(format!(
                            "log of non-positive value {v} in `{e}` at x={x}, n={n}"
                        )));
                    }
                    v.ln()
                }
            }
        }
    })
}

fn power(base: f64, exponent: f64) -> std::result::Result<f64, &'static str> {
    let integral = exponent.fract() == 0.0;
    if base == 0.0 && exponent < 0.0 {
        return Err("zero raised to a negative power");
    }
    if base < 0.0 && !integral {
        return Err("negative base raised to a non-integer power");
    }
    if integral && exponent.abs() <= i32::MAX as f64 {
        Ok(base.powi(exponent as i32))
    } else {
        Ok(base.powf(exponent))
    }
}
