use num_bigint::BigInt;

use crate::algebra::{Generator, SphereGen};
use crate::error::Error;
use crate::scalar::Rational;

#[derive(Clone, Debug, PartialEq)]
pub enum Tok {
    Num(Rational),
    Gen(Generator),
    Sphere(SphereGen),
    Mu,
    U,
    Inv,
    Sqrt,
    Rt,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Tensor,
    Eof,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, Error> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    let starts_atom = |j: usize| -> bool {
        match chars.get(j) {
            Some('(') => !chars[j..].starts_with(&['(', 'x', ')']),
            Some(c) => c.is_alphanumeric(),
            None => false,
        }
    };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let push = |out: &mut Vec<Token>, tok| {
            out.push(Token {
                tok,
                line: l0,
                column: c0,
            })
        };
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let numer: BigInt = chars[start..i].iter().collect::<String>().parse().unwrap();
            let mut value = Rational::from_integer(numer);
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                i += 1;
                let ds = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let denom: BigInt = chars[ds..i].iter().collect::<String>().parse().unwrap();
                if denom == BigInt::from(0) {
                    return Err(Error::Syntax {
                        line: l0,
                        column: c0,
                        msg: "zero denominator".into(),
                    });
                }
                value = Rational::new(value.to_integer(), denom);
            }
            col += i - start;
            push(&mut out, Tok::Num(value));
            continue;
        }
        if c.is_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            col += i - start;
            let starrable = matches!(word.as_str(), "a" | "b" | "Z");
            let starred = starrable && chars.get(i) == Some(&'*') && !starts_atom(i + 1);
            if starred {
                i += 1;
                col += 1;
            }
            let tok = match (word.as_str(), starred) {
                ("a", false) => Tok::Gen(Generator::A),
                ("a", true) => Tok::Gen(Generator::AStar),
                ("b", false) => Tok::Gen(Generator::B),
                ("b", true) => Tok::Gen(Generator::BStar),
                ("Z", false) => Tok::Sphere(SphereGen::Z),
                ("Z", true) => Tok::Sphere(SphereGen::ZStar),
                ("X", _) => Tok::Sphere(SphereGen::X),
                ("mu", _) | ("μ", _) => Tok::Mu,
                ("u", _) => Tok::U,
                ("inv", _) => Tok::Inv,
                ("sqrt", _) => Tok::Sqrt,
                ("rt", _) => Tok::Rt,
                _ => {
                    return Err(Error::UnknownToken {
                        line: l0,
                        column: c0,
                        token: word,
                    })
                }
            };
            push(&mut out, tok);
            continue;
        }
        if chars[i..].starts_with(&['(', 'x', ')']) {
            i += 3;
            col += 3;
            push(&mut out, Tok::Tensor);
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => {
                return Err(Error::UnknownToken {
                    line: l0,
                    column: c0,
                    token: c.to_string(),
                })
            }
        };
        i += 1;
        col += 1;
        push(&mut out, tok);
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        tokenize(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn star_suffix_by_position() {
        assert_eq!(
            toks("a*b"),
            vec![
                Tok::Gen(Generator::A),
                Tok::Star,
                Tok::Gen(Generator::B),
                Tok::Eof
            ]
        );
        assert_eq!(
            toks("a* * b*"),
            vec![
                Tok::Gen(Generator::AStar),
                Tok::Star,
                Tok::Gen(Generator::BStar),
                Tok::Eof
            ]
        );
        assert_eq!(
            toks("b**a*"),
            vec![
                Tok::Gen(Generator::BStar),
                Tok::Star,
                Tok::Gen(Generator::AStar),
                Tok::Eof
            ]
        );
        assert_eq!(
            toks("Z*^2"),
            vec![
                Tok::Sphere(SphereGen::ZStar),
                Tok::Caret,
                Tok::Num(Rational::from_integer(2.into())),
                Tok::Eof
            ]
        );
        assert_eq!(
            toks("a*(x) b"),
            vec![
                Tok::Gen(Generator::AStar),
                Tok::Tensor,
                Tok::Gen(Generator::B),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn positions_and_unknowns() {
        let err = tokenize("a +\n  q").unwrap_err();
        assert_eq!(
            err,
            Error::UnknownToken {
                line: 2,
                column: 3,
                token: "q".into()
            }
        );
        assert!(matches!(
            tokenize("1 # 2"),
            Err(Error::UnknownToken { column: 3, .. })
        ));
    }
}
