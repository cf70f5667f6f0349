//! Value-preserving normalisation.
//!
//! Sums are flattened into `coefficient * monomial` terms and like terms are
//! collected; products are flattened into a coefficient times `base^exponent`
//! factors, equal bases are merged, and constant bases sharing an exponent are
//! multiplied together (so `(1/2)^n * 2^n` cancels). Terms and factors are
//! ordered canonically, and the whole pass is iterated to a fixed point, which
//! makes [`simplify`] idempotent.

use super::{Expr, Func, Number};

const MAX_PASSES: usize = 16;

pub fn simplify(e: &Expr) -> Expr {
    let mut cur = pass(e);
    for _ in 0..MAX_PASSES {
        let next = pass(&cur);
        if next == cur {
            break;
        }
        cur = next;
    }
    cur
}

fn pass(e: &Expr) -> Expr {
    match e {
        Expr::Const(_) | Expr::Pi | Expr::X | Expr::N | Expr::Poly(_) => e.clone(),
        Expr::Neg(_) | Expr::Add(..) | Expr::Sub(..) => normalize_sum(e),
        Expr::Mul(..) | Expr::Div(..) | Expr::Pow(..) => normalize_product(e),
        Expr::Call(f, a) => normalize_call(*f, pass(a)),
    }
}

// ---------------------------------------------------------------------------
// sums

fn normalize_sum(e: &Expr) -> Expr {
    let mut constant = Number::int(0);
    let mut terms: Vec<(Number, Expr)> = Vec::new();
    collect_sum(e, false, false, &mut constant, &mut terms);

    let mut merged: Vec<(Number, Expr)> = Vec::new();
    for (c, rest) in terms {
        match merged.iter_mut().find(|(_, r)| *r == rest) {
            Some(slot) => slot.0 = slot.0 + c,
            None => merged.push((c, rest)),
        }
    }
    merged.retain(|(c, _)| !c.is_zero());
    merged.sort_by_cached_key(|(_, rest)| sum_key(rest));

    let mut acc: Option<Expr> = None;
    for (c, rest) in merged {
        acc = Some(match acc {
            None => make_term(c, rest),
            Some(prev) if c.is_negative() => Expr::sub(prev, make_term(-c, rest)),
            Some(prev) => Expr::add(prev, make_term(c, rest)),
        });
    }
    match acc {
        None => Expr::Const(constant),
        Some(acc) if constant.is_zero() => acc,
        Some(acc) if constant.is_negative() => Expr::sub(acc, Expr::Const(-constant)),
        Some(acc) => Expr::add(acc, Expr::Const(constant)),
    }
}

/// Walks the additive structure of `e`. `done` marks subtrees that are
/// already normalised and must not be simplified again.
fn collect_sum(e: &Expr, negate: bool, done: bool, constant: &mut Number, terms: &mut Vec<(Number, Expr)>) {
    match e {
        Expr::Add(a, b) => {
            collect_sum(a, negate, done, constant, terms);
            collect_sum(b, negate, done, constant, terms);
        }
        Expr::Sub(a, b) => {
            collect_sum(a, negate, done, constant, terms);
            collect_sum(b, !negate, done, constant, terms);
        }
        Expr::Neg(a) => collect_sum(a, !negate, done, constant, terms),
        leaf if !done => {
            let s = pass(leaf);
            collect_sum(&s, negate, true, constant, terms);
        }
        Expr::Const(c) => {
            let c = if negate { -*c } else { *c };
            *constant = *constant + c;
        }
        leaf => {
            let (c, rest) = split_coefficient(leaf);
            terms.push((if negate { -c } else { c }, rest));
        }
    }
}

/// Splits a normalised product into its numeric coefficient and the rest.
fn split_coefficient(e: &Expr) -> (Number, Expr) {
    match e {
        Expr::Const(c) => (*c, Expr::one()),
        Expr::Neg(a) => {
            let (c, rest) = split_coefficient(a);
            (-c, rest)
        }
        Expr::Mul(a, b) => {
            let (c, rest) = split_coefficient(a);
            if rest.is_one() {
                (c, (**b).clone())
            } else {
                (c, Expr::mul(rest, (**b).clone()))
            }
        }
        Expr::Div(a, b) => {
            let (c, rest) = split_coefficient(a);
            (c, Expr::div(rest, (**b).clone()))
        }
        _ => (Number::int(1), e.clone()),
    }
}

fn make_term(c: Number, rest: Expr) -> Expr {
    if c.is_one() {
        return rest;
    }
    normalize_product(&Expr::mul(Expr::Const(c), rest))
}

fn sum_key(e: &Expr) -> (u8, String) {
    let rank = if e.has_x() {
        0
    } else if e.has_n() {
        1
    } else {
        2
    };
    (rank, e.to_string())
}

// ---------------------------------------------------------------------------
// products

struct Product {
    coef: Number,
    factors: Vec<(Expr, Expr)>,
}

/// Raised when normalisation would hide a division by the literal zero.
struct Bail;

fn normalize_product(e: &Expr) -> Expr {
    let mut p = Product {
        coef: Number::int(1),
        factors: Vec::new(),
    };
    if collect_product(e, Number::int(1), false, &mut p).is_err() {
        return shallow(e);
    }
    rebuild_product(p)
}

// Simplify children only; used when a product cannot be normalised.
fn shallow(e: &Expr) -> Expr {
    match e {
        Expr::Mul(a, b) => Expr::mul(pass(a), pass(b)),
        Expr::Div(a, b) => Expr::div(pass(a), pass(b)),
        Expr::Pow(a, b) => Expr::pow(pass(a), pass(b)),
        other => pass(other),
    }
}

fn collect_product(e: &Expr, k: Number, done: bool, p: &mut Product) -> Result<(), Bail> {
    match e {
        Expr::Mul(a, b) => {
            collect_product(a, k, done, p)?;
            collect_product(b, k, done, p)
        }
        Expr::Div(a, b) => {
            collect_product(a, k, done, p)?;
            collect_product(b, -k, done, p)
        }
        Expr::Neg(a) if done => match k.as_integer() {
            Some(m) => {
                p.coef = p.coef * Number::int(if m % 2 == 0 { 1 } else { -1 });
                collect_product(a, k, done, p)
            }
            None => {
                p.factors.push((e.clone(), Expr::Const(k)));
                Ok(())
            }
        },
        Expr::Pow(b, x) => {
            let base = if done { (**b).clone() } else { pass(b) };
            let exponent = if done { (**x).clone() } else { pass(x) };
            match exponent.as_const().and_then(|c| c.as_integer()) {
                // (b^m)^k = b^(mk) and (uv)^m = u^m v^m for integer m.
                Some(m) => collect_product(&base, k * Number::int(m), true, p),
                None => {
                    let scaled = if k.is_one() {
                        exponent
                    } else {
                        simplify(&Expr::mul(Expr::Const(k), exponent))
                    };
                    p.factors.push((base, scaled));
                    Ok(())
                }
            }
        }
        leaf if !done => {
            let s = pass(leaf);
            collect_product(&s, k, true, p)
        }
        Expr::Const(c) => {
            if c.is_zero() && k.is_negative() {
                return Err(Bail);
            }
            match k.as_integer().and_then(|m| c.checked_powi(m)) {
                Some(v) => p.coef = p.coef * v,
                None => p.factors.push((e.clone(), Expr::Const(k))),
            }
            Ok(())
        }
        leaf => {
            p.factors.push((leaf.clone(), Expr::Const(k)));
            Ok(())
        }
    }
}

fn rebuild_product(mut p: Product) -> Expr {
    // Merge equal bases by adding exponents.
    let mut merged: Vec<(Expr, Expr)> = Vec::new();
    for (base, ex) in p.factors.drain(..) {
        match merged.iter_mut().find(|(b, _)| *b == base) {
            Some(slot) => slot.1 = simplify(&Expr::add(slot.1.clone(), ex)),
            None => merged.push((base, ex)),
        }
    }

    // Constant bases sharing an exponent multiply: a^e * b^e = (ab)^e.
    let mut folded: Vec<(Expr, Expr)> = Vec::new();
    for (base, ex) in merged {
        if let Expr::Const(bc @ Number::Rational(_)) = base {
            if let Some(slot) = folded
                .iter_mut()
                .find(|(b, e)| matches!(b, Expr::Const(Number::Rational(_))) && *e == ex)
            {
                let prod = *slot.0.as_const().expect("constant base") * bc;
                slot.0 = Expr::Const(prod);
                continue;
            }
        }
        folded.push((base, ex));
    }

    let mut num: Vec<(Expr, Expr)> = Vec::new();
    let mut den: Vec<(Expr, Expr)> = Vec::new();
    for (base, ex) in folded {
        if ex.is_zero() || base.is_one() {
            continue;
        }
        if let (Some(bc), Some(m)) = (base.as_const(), ex.as_const().and_then(|c| c.as_integer())) {
            if let Some(v) = bc.checked_powi(m) {
                p.coef = p.coef * v;
                continue;
            }
        }
        match ex.as_const() {
            Some(c) if c.is_negative() => den.push((base, Expr::Const(-*c))),
            _ => num.push((base, ex)),
        }
    }
    if p.coef.is_zero() {
        return Expr::zero();
    }
    num.sort_by_cached_key(factor_key);
    den.sort_by_cached_key(factor_key);

    let chain = |fs: Vec<(Expr, Expr)>| {
        fs.into_iter()
            .map(|(b, e)| if e.is_one() { b } else { Expr::pow(b, e) })
            .reduce(Expr::mul)
    };
    let numerator = match (chain(num), p.coef) {
        (None, c) => Expr::Const(c),
        (Some(n), c) if c.is_one() => n,
        (Some(n), c) if c == Number::int(-1) => Expr::neg(n),
        (Some(n), c) => prepend_coefficient(c, n),
    };
    match chain(den) {
        None => numerator,
        Some(d) => Expr::div(numerator, d),
    }
}

// Puts the coefficient at the far left of a left-leaning product chain.
fn prepend_coefficient(c: Number, chain: Expr) -> Expr {
    match chain {
        Expr::Mul(a, b) => Expr::mul(prepend_coefficient(c, *a), *b),
        leaf => Expr::mul(Expr::Const(c), leaf),
    }
}

fn factor_key(f: &(Expr, Expr)) -> (u8, String) {
    let (base, ex) = f;
    let rank = if base.as_const().is_some() {
        0
    } else if !base.has_x() {
        1
    } else {
        2
    };
    (rank, format!("{base}^{ex}"))
}

// ---------------------------------------------------------------------------
// elementary functions

fn normalize_call(f: Func, a: Expr) -> Expr {
    if let Some(c) = a.as_const() {
        let exact = match f {
            Func::Sin if c.is_zero() => Some(Number::int(0)),
            Func::Cos | Func::Exp if c.is_zero() => Some(Number::int(1)),
            Func::Log if c.is_one() => Some(Number::int(0)),
            Func::Abs => Some(c.abs()),
            _ => None,
        };
        if let Some(v) = exact {
            return Expr::Const(v);
        }
    }
    match (f, a) {
        (Func::Abs, Expr::Neg(inner)) => Expr::call(Func::Abs, *inner),
        (Func::Abs, inner @ Expr::Call(Func::Abs, _)) => inner,
        (f, a) => Expr::call(f, a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{eval, parse};

    fn s(src: &str) -> String {
        simplify(&parse(src).unwrap()).to_string()
    }

    #[test]
    fn identities() {
        assert_eq!(s("0 + x"), "x");
        assert_eq!(s("1 * sin(x)"), "sin(x)");
        assert_eq!(s("x - x"), "0");
        assert_eq!(s("2*x + 3*x"), "5*x");
        assert_eq!(s("x*x"), "x^2");
        assert_eq!(s("x^0"), "1");
        assert_eq!(s("--x"), "x");
    }

    #[test]
    fn constant_bases_with_shared_exponent_cancel() {
        assert_eq!(s("(1/2)^n * 2^n * cos(2^n*x)"), "cos(2^n*x)");
    }

    #[test]
    fn power_rule_shape() {
        assert_eq!(s("n * x^(n-1)"), "n*x^(n - 1)");
        assert_eq!(s("x^(n-1) * x"), "x^n");
    }

    #[test]
    fn division_by_literal_zero_is_kept() {
        let e = simplify(&parse("x/0").unwrap());
        assert!(eval(&e, 1.0, 1).is_err());
    }

    #[test]
    fn constant_folding_is_exact() {
        assert_eq!(s("1/3 + 1/6"), "1/2");
        assert_eq!(s("sin(0) + cos(0) + exp(0) + log(1)"), "2");
        assert_eq!(s("abs(-3/4)"), "3/4");
        assert_eq!(s("2^10"), "1024");
    }

    #[test]
    fn output_reparses_to_fixed_point() {
        for src in [
            "x/2 + x^2/2",
            "-(x^2) + 3",
            "(x+1)*(x-1)/(2*x)",
            "exp(-x)*sin(n*x)",
            "(-3)^n*x",
        ] {
            let once = simplify(&parse(src).unwrap());
            let again = simplify(&parse(&once.to_string()).unwrap());
            assert_eq!(once, again, "{src} -> {once}");
        }
    }
}
