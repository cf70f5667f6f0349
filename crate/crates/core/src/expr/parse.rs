//! Recursive-descent parser for the expression grammar:
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := unary ('^' factor)?
//! unary  := '-' unary | atom
//! atom   := number | 'x' | 'n' | 'pi' | func '(' expr ')' | '(' expr ')'
//! func   := 'sin' | 'cos' | 'exp' | 'log' | 'abs'
//! ```

use num_rational::Ratio;

use super::{Expr, Func, Number};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(Number),
    Ident(String),
    Op(u8),
    End,
}

const ATOM_START: &[&str] = &["number", "'x'", "'n'", "'pi'", "function", "'('", "'-'"];

pub fn parse(source: &str) -> Result<Expr> {
    let mut p = Parser {
        src: source.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    let (tok, at) = p.peek()?;
    if tok != Token::End {
        return Err(syntax(at, &["'+'", "'-'", "'*'", "'/'", "'^'", "end of input"]));
    }
    Ok(e)
}

fn syntax(offset: usize, expected: &[&str]) -> Error {
    Error::Syntax {
        offset,
        expected: expected.iter().map(|s| s.to_string()).collect(),
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    /// Lexes the next token without consuming it. Returns the token, its
    /// offset, and leaves `self.pos` untouched.
    fn peek(&mut self) -> Result<(Token, usize)> {
        self.skip_ws();
        let start = self.pos;
        let (tok, _) = self.lex_at(start)?;
        Ok((tok, start))
    }

    fn next(&mut self) -> Result<(Token, usize)> {
        self.skip_ws();
        let start = self.pos;
        let (tok, end) = self.lex_at(start)?;
        self.pos = end;
        Ok((tok, start))
    }

    fn lex_at(&self, start: usize) -> Result<(Token, usize)> {
        let src = self.src;
        let Some(&c) = src.get(start) else {
            return Ok((Token::End, start));
        };
        if c.is_ascii_digit() || c == b'.' {
            let mut end = start;
            while end < src.len() && src[end].is_ascii_digit() {
                end += 1;
            }
            if end < src.len() && src[end] == b'.' {
                end += 1;
                let frac_start = end;
                while end < src.len() && src[end].is_ascii_digit() {
                    end += 1;
                }
                if end == frac_start {
                    return Err(syntax(end, &["digit"]));
                }
            }
            let text = std::str::from_utf8(&src[start..end]).expect("ascii digits");
            return Ok((Token::Num(decimal(text)), end));
        }
        if c.is_ascii_alphabetic() {
            let mut end = start;
            while end < src.len() && src[end].is_ascii_alphanumeric() {
                end += 1;
            }
            let text = std::str::from_utf8(&src[start..end]).expect("ascii identifier");
            return Ok((Token::Ident(text.to_string()), end));
        }
        if b"+-*/^()".contains(&c) {
            return Ok((Token::Op(c), start + 1));
        }
        // Report the offset of the offending character, whatever its width.
        Err(syntax(start, ATOM_START))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek()?.0 {
                Token::Op(b'+') => {
                    self.next()?;
                    lhs = Expr::add(lhs, self.term()?);
                }
                Token::Op(b'-') => {
                    self.next()?;
                    lhs = Expr::sub(lhs, self.term()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek()?.0 {
                Token::Op(b'*') => {
                    self.next()?;
                    lhs = Expr::mul(lhs, self.factor()?);
                }
                Token::Op(b'/') => {
                    self.next()?;
                    let rhs = self.factor()?;
                    lhs = match (&lhs, &rhs) {
                        // A literal fraction such as `1/2` is kept as one exact constant.
                        (Expr::Const(a @ Number::Rational(_)), Expr::Const(b @ Number::Rational(_)))
                            if !b.is_zero() =>
                        {
                            Expr::Const(*a * b.recip().expect("nonzero"))
                        }
                        _ => Expr::div(lhs, rhs),
                    };
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.unary()?;
        if self.peek()?.0 == Token::Op(b'^') {
            self.next()?;
            let exponent = self.factor()?;
            return Ok(Expr::pow(base, exponent));
        }
        Ok(base)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek()?.0 == Token::Op(b'-') {
            self.next()?;
            return Ok(Expr::neg(self.unary()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Expr> {
        let (tok, at) = self.next()?;
        match tok {
            Token::Num(v) => Ok(Expr::Const(v)),
            Token::Ident(name) => match name.as_str() {
                "x" => Ok(Expr::X),
                "n" => Ok(Expr::N),
                "pi" => Ok(Expr::Pi),
                _ => {
                    let func = Func::from_name(&name).ok_or_else(|| syntax(at, ATOM_START))?;
                    self.expect(b'(')?;
                    let arg = self.expr()?;
                    self.expect(b')')?;
                    Ok(Expr::call(func, arg))
                }
            },
            Token::Op(b'(') => {
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            _ => Err(syntax(at, ATOM_START)),
        }
    }

    fn expect(&mut self, op: u8) -> Result<()> {
        let (tok, at) = self.next()?;
        if tok == Token::Op(op) {
            Ok(())
        } else {
            let want = format!("'{}'", op as char);
            Err(syntax(at, &[want.as_str()]))
        }
    }
}

/// Decimal literal to an exact rational; falls back to a double when the
/// digits do not fit in `i64`.
fn decimal(text: &str) -> Number {
    let (int_part, frac_part) = text.split_once('.').unwrap_or((text, ""));
    let digits = format!("{int_part}{frac_part}");
    let scale = u32::try_from(frac_part.len())
        .ok()
        .and_then(|k| 10i64.checked_pow(k));
    match (digits.parse::<i64>(), scale) {
        (Ok(num), Some(den)) => Number::Rational(Ratio::new(num, den)),
        _ => Number::Real(text.parse::<f64>().unwrap_or(f64::NAN)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sequence_of_functions() {
        let e = parse("(1/2)^n * sin(2^n * x)").unwrap();
        let expected = Expr::mul(
            Expr::pow(Expr::ratio(1, 2), Expr::N),
            Expr::call(Func::Sin, Expr::mul(Expr::pow(Expr::int(2), Expr::N), Expr::X)),
        );
        assert_eq!(e, expected);
    }

    #[test]
    fn atom() {
        assert_eq!(parse("x").unwrap(), Expr::X);
        assert_eq!(parse("  pi ").unwrap(), Expr::Pi);
    }

    #[test]
    fn malformed_operator_reports_offset() {
        match parse("x^^2") {
            Err(Error::Syntax { offset, expected }) => {
                assert_eq!(offset, 2);
                assert!(expected.contains(&"number".to_string()));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_errors() {
        for (src, at) in [
            ("", 0),
            ("sin x", 4),
            ("(x", 2),
            ("x y", 2),
            ("foo(x)", 0),
            ("2 $ 3", 2),
            ("1.", 2),
        ] {
            match parse(src) {
                Err(Error::Syntax { offset, .. }) => assert_eq!(offset, at, "{src}"),
                other => panic!("{src}: unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn unary_minus_binds_tighter_than_power() {
        assert_eq!(
            parse("-x^2").unwrap(),
            Expr::pow(Expr::neg(Expr::X), Expr::int(2))
        );
        assert_eq!(
            parse("2^-1").unwrap(),
            Expr::pow(Expr::int(2), Expr::neg(Expr::int(1)))
        );
    }

    #[test]
    fn power_is_right_associative_and_ops_left() {
        assert_eq!(
            parse("x^n^2").unwrap(),
            Expr::pow(Expr::X, Expr::pow(Expr::N, Expr::int(2)))
        );
        assert_eq!(
            parse("x - n - 1").unwrap(),
            Expr::sub(Expr::sub(Expr::X, Expr::N), Expr::int(1))
        );
    }

    #[test]
    fn literal_fractions_fold_but_division_by_zero_does_not() {
        assert_eq!(parse("1/2/3").unwrap(), Expr::ratio(1, 6));
        assert_eq!(parse("1/0").unwrap(), Expr::div(Expr::int(1), Expr::int(0)));
        assert_eq!(parse("x/2").unwrap(), Expr::div(Expr::X, Expr::int(2)));
    }

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse("0.3").unwrap(), Expr::ratio(3, 10));
        assert_eq!(parse("12.50").unwrap(), Expr::ratio(25, 2));
        assert!(matches!(
            parse("123456789012345678901234.5").unwrap(),
            Expr::Const(Number::Real(_))
        ));
    }
}
