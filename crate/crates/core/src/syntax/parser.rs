//! Recursive-descent parser for expressions, tensors and Laurent polynomials.
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' ['-'] integer)?
//! atom   := a | b | a* | b* | X | Z | Z* | mu | rational
//!         | inv(expr) | sqrt(expr) | rt(integer) | '(' expr ')'
//! tensor := ['-'] term '(x)' term (('+'|'-') term '(x)' term)*
//! laurent:= ['-'] hterm (('+'|'-') hterm)*      hterm: rationals, rt(d), u^k
//! ```

use num_traits::{Signed, ToPrimitive};

use super::lexer::{tokenize, Tok, Token};
use crate::algebra::{normalize, Expr, NCPoly};
use crate::error::Error;
use crate::mu::MuScalar;
use crate::scalar::ExactScalar;

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self, Error> {
        Ok(Parser {
            toks: tokenize(src)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, t: &Token, msg: impl Into<String>) -> Error {
        Error::Syntax {
            line: t.line,
            column: t.column,
            msg: msg.into(),
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        self.error_at(&self.toks[self.pos], msg)
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), Error> {
        if *self.peek() == want {
            self.next();
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn finish(&mut self) -> Result<(), Error> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }

    fn expr(&mut self) -> Result<Expr, Error> {
        let mut terms = Vec::new();
        let negate_first = if *self.peek() == Tok::Minus {
            self.next();
            true
        } else {
            false
        };
        let first = self.term()?;
        terms.push(if negate_first {
            Expr::Neg(Box::new(first))
        } else {
            first
        });
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.next();
                    terms.push(self.term()?);
                }
                Tok::Minus => {
                    self.next();
                    terms.push(Expr::Neg(Box::new(self.term()?)));
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            Expr::Add(terms)
        })
    }

    fn term(&mut self) -> Result<Expr, Error> {
        let mut factors = vec![self.factor()?];
        while *self.peek() == Tok::Star {
            self.next();
            factors.push(self.factor()?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            Expr::Mul(factors)
        })
    }

    fn exponent(&mut self) -> Result<i64, Error> {
        let negative = if *self.peek() == Tok::Minus {
            self.next();
            true
        } else {
            false
        };
        let t = self.next();
        match &t.tok {
            Tok::Num(q) if q.is_integer() => {
                let e = q
                    .to_integer()
                    .to_i64()
                    .ok_or_else(|| self.error_at(&t, "exponent too large"))?;
                Ok(if negative { -e } else { e })
            }
            _ => Err(self.error_at(&t, "expected integer exponent")),
        }
    }

    fn factor(&mut self) -> Result<Expr, Error> {
        let at = self.toks[self.pos].clone();
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.next();
            let e = self.exponent()?;
            if e < 0 && base.as_scalar().and_then(|c| c.inverse_unit()).is_none() {
                return Err(self.error_at(&at, "negative exponent on a non-invertible factor"));
            }
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn scalar_arg(&mut self) -> Result<(MuScalar, Token), Error> {
        self.expect(Tok::LParen, "'('")?;
        let at = self.toks[self.pos].clone();
        let inner = self.expr()?;
        self.expect(Tok::RParen, "')'")?;
        let c = inner
            .as_scalar()
            .ok_or_else(|| self.error_at(&at, "argument must be a polynomial in mu"))?;
        Ok((c, at))
    }

    fn atom(&mut self) -> Result<Expr, Error> {
        let t = self.next();
        Ok(match t.tok.clone() {
            Tok::Num(q) => Expr::Scalar(MuScalar::from_rational(q)),
            Tok::Gen(g) => Expr::Gen(g),
            Tok::Sphere(s) => Expr::Sphere(s),
            Tok::Mu => Expr::mu(),
            Tok::Inv => {
                let (c, at) = self.scalar_arg()?;
                if c == MuScalar::mu() {
                    Expr::Scalar(MuScalar::mu_pow(-1))
                } else {
                    let k = linear_index(&c).ok_or_else(|| {
                        self.error_at(&at, "inv expects 1+k*mu with k != 0, or mu")
                    })?;
                    Expr::Scalar(MuScalar::inv_linear(k))
                }
            }
            Tok::Sqrt => {
                let (c, at) = self.scalar_arg()?;
                let k = linear_index(&c)
                    .ok_or_else(|| self.error_at(&at, "sqrt expects 1+k*mu with k != 0"))?;
                Expr::Scalar(MuScalar::sqrt_linear(k))
            }
            Tok::Rt => {
                self.expect(Tok::LParen, "'('")?;
                let d = self.next();
                let n = match &d.tok {
                    Tok::Num(q) if q.is_integer() && q.is_positive() => q.to_integer().to_u64(),
                    _ => None,
                }
                .ok_or_else(|| self.error_at(&d, "rt expects a positive integer"))?;
                self.expect(Tok::RParen, "')'")?;
                Expr::Scalar(MuScalar::from_exact(ExactScalar::sqrt_int(n)))
            }
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                e
            }
            Tok::U => return Err(self.error_at(&t, "'u' is only valid in Laurent polynomials")),
            Tok::Eof => return Err(self.error_at(&t, "unexpected end of input")),
            other => return Err(self.error_at(&t, format!("unexpected {other:?}"))),
        })
    }

    fn tensor(&mut self) -> Result<Vec<(Expr, Expr)>, Error> {
        let mut out = Vec::new();
        let mut negate = if *self.peek() == Tok::Minus {
            self.next();
            true
        } else {
            false
        };
        loop {
            let left = self.term()?;
            self.expect(Tok::Tensor, "'(x)'")?;
            let right = self.term()?;
            out.push((
                if negate {
                    Expr::Neg(Box::new(left))
                } else {
                    left
                },
                right,
            ));
            match self.peek() {
                Tok::Plus => negate = false,
                Tok::Minus => negate = true,
                _ => break,
            }
            self.next();
        }
        Ok(out)
    }

    fn laurent(&mut self) -> Result<Vec<(i64, ExactScalar)>, Error> {
        let mut out = Vec::new();
        let mut negate = if *self.peek() == Tok::Minus {
            self.next();
            true
        } else {
            false
        };
        loop {
            let (mut coeff, mut power) = (ExactScalar::one(), 0i64);
            loop {
                let t = self.next();
                match t.tok {
                    Tok::Num(q) => coeff = &coeff * &ExactScalar::from_rational(q),
                    Tok::Rt => {
                        self.expect(Tok::LParen, "'('")?;
                        let d = self.next();
                        let n = match &d.tok {
                            Tok::Num(q) if q.is_integer() && q.is_positive() => {
                                q.to_integer().to_u64()
                            }
                            _ => None,
                        }
                        .ok_or_else(|| self.error_at(&d, "rt expects a positive integer"))?;
                        self.expect(Tok::RParen, "')'")?;
                        coeff = &coeff * &ExactScalar::sqrt_int(n);
                    }
                    Tok::U => {
                        power += if *self.peek() == Tok::Caret {
                            self.next();
                            self.exponent()?
                        } else {
                            1
                        };
                    }
                    _ => return Err(self.error_at(&t, "expected a number, rt(d) or u")),
                }
                if *self.peek() != Tok::Star {
                    break;
                }
                self.next();
            }
            out.push((power, if negate { -&coeff } else { coeff }));
            match self.peek() {
                Tok::Plus => negate = false,
                Tok::Minus => negate = true,
                _ => break,
            }
            self.next();
        }
        Ok(out)
    }
}

/// `k` when `c = 1 + kμ` with `k ≠ 0`.
fn linear_index(c: &MuScalar) -> Option<i64> {
    let d = c - &MuScalar::one();
    if d.is_zero() {
        return None;
    }
    let k = d.eval(1.0).ok()?;
    if !k.is_finite() || k.fract() != 0.0 {
        return None;
    }
    let k = k as i64;
    (k != 0 && d == MuScalar::mu().scale(&ExactScalar::from_int(k))).then_some(k)
}

pub fn parse_expr(src: &str) -> Result<Expr, Error> {
    let mut p = Parser::new(src)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_poly(src: &str) -> Result<NCPoly, Error> {
    normalize(&parse_expr(src)?)
}

pub fn parse_scalar(src: &str) -> Result<MuScalar, Error> {
    let e = parse_expr(src)?;
    e.as_scalar().ok_or(Error::Syntax {
        line: 1,
        column: 1,
        msg: "expected an expression without generators".into(),
    })
}

pub fn parse_tensor(src: &str) -> Result<Vec<(Expr, Expr)>, Error> {
    let mut p = Parser::new(src)?;
    let t = p.tensor()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_laurent(src: &str) -> Result<Vec<(i64, ExactScalar)>, Error> {
    let mut p = Parser::new(src)?;
    let t = p.laurent()?;
    p.finish()?;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{a, a_star, b, b_star};

    #[test]
    fn defining_relations_from_text() {
        assert!(parse_poly("a* * b* - b* * a*").unwrap().is_zero());
        assert!(parse_poly("b**a* - a**b*").unwrap().is_zero());
        assert_eq!(
            parse_poly("a * a* + b * b*").unwrap(),
            NCPoly::scalar(MuScalar::linear(1))
        );
        assert_eq!(parse_poly("a*a").unwrap(), &a() * &a());
        assert_eq!(parse_poly("a* * a").unwrap(), &a_star() * &a());
        assert_eq!(parse_poly("b * a").unwrap(), &a() * &b());
        assert_eq!(parse_poly("a*b* + b").unwrap(), &(&a() * &b_star()) + &b());
    }

    #[test]
    fn function_atoms() {
        assert_eq!(
            parse_scalar("inv(1+2*mu)").unwrap(),
            MuScalar::inv_linear(2)
        );
        assert_eq!(
            parse_scalar("sqrt(1-mu)").unwrap(),
            MuScalar::sqrt_linear(-1)
        );
        assert_eq!(parse_scalar("inv(mu)").unwrap(), MuScalar::mu_pow(-1));
        assert_eq!(parse_scalar("mu^-2").unwrap(), MuScalar::mu_pow(-2));
        assert_eq!(
            parse_scalar("rt(8)").unwrap(),
            MuScalar::from_exact(ExactScalar::sqrt_int(8))
        );
        assert_eq!(
            parse_scalar("3/2").unwrap(),
            MuScalar::from_rational(crate::scalar::rat(3, 2))
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            parse_expr("inv(1+0*mu)"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_expr("inv(1+mu^2)"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(parse_expr("a^-1"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_expr("a +"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_expr("(a"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_expr("a b"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_expr("foo"), Err(Error::UnknownToken { .. })));
        match parse_expr("a +\n b * )") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 6)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn tensors_and_laurent() {
        let t = parse_tensor("a (x) b + 2 * a* (x) a - b (x) b*").unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(normalize(&t[2].0).unwrap(), -&b());
        let h = parse_laurent("u^3 + u^-1 - 2*u").unwrap();
        assert_eq!(
            h,
            vec![
                (3, ExactScalar::one()),
                (-1, ExactScalar::one()),
                (1, ExactScalar::from_int(-2))
            ]
        );
        assert_eq!(parse_laurent("1").unwrap(), vec![(0, ExactScalar::one())]);
    }
}
