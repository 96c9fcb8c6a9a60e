//! Canonical textual form; the parser reads it back to the identical value.

use num_traits::Signed;

use crate::algebra::{Monomial, NCPoly, SphereForm};
use crate::mu::MuScalar;
use crate::scalar::{ExactScalar, Rational};

/// One product of atoms with a sign.
struct Flat {
    negative: bool,
    factors: Vec<String>,
}

fn rational_str(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn linear_str(k: i64) -> String {
    match k {
        1 => "1+mu".into(),
        -1 => "1-mu".into(),
        k if k > 0 => format!("1+{k}*mu"),
        k => format!("1-{}*mu", -k),
    }
}

fn power(base: String, e: i64) -> String {
    if e == 1 {
        base
    } else {
        format!("{base}^{e}")
    }
}

fn scalar_flat(s: &MuScalar) -> Vec<Flat> {
    let mut out = Vec::new();
    for (sig, r) in s.parts() {
        for (i, c) in r.numerator().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut tail = Vec::new();
            let e = r.mu_power() as i64 + i as i64;
            if e != 0 {
                tail.push(power("mu".into(), e));
            }
            for (k, m) in r.denominator() {
                tail.push(power(format!("inv({})", linear_str(*k)), *m as i64));
            }
            for k in sig.indices() {
                tail.push(format!("sqrt({})", linear_str(*k)));
            }
            out.extend(exact_flat(c, &tail));
        }
    }
    out
}

fn exact_flat(c: &ExactScalar, tail: &[String]) -> Vec<Flat> {
    c.terms()
        .iter()
        .map(|(d, q)| {
            let mut factors = Vec::new();
            let abs = q.abs();
            let unit = abs == Rational::from_integer(1.into());
            if !unit || (*d == 1 && tail.is_empty()) {
                factors.push(rational_str(&abs));
            }
            factors.extend(tail.iter().cloned());
            if *d > 1 {
                factors.push(format!("rt({d})"));
            }
            Flat {
                negative: q.is_negative(),
                factors,
            }
        })
        .collect()
}

fn join(terms: &[Flat]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, t) in terms.iter().enumerate() {
        let body = if t.factors.is_empty() {
            "1".to_string()
        } else {
            t.factors.join(" * ")
        };
        match (i, t.negative) {
            (0, false) => {}
            (0, true) => s.push('-'),
            (_, false) => s.push_str(" + "),
            (_, true) => s.push_str(" - "),
        }
        s.push_str(&body);
    }
    s
}

pub fn print_scalar(s: &MuScalar) -> String {
    join(&scalar_flat(s))
}

pub fn print_exact(c: &ExactScalar) -> String {
    join(&exact_flat(c, &[]))
}

fn word_factors(m: &Monomial) -> Vec<String> {
    let mut out = Vec::new();
    for (sym, e) in [("a*", m.p), ("b*", m.q), ("b", m.s), ("a", m.r)] {
        if e > 0 {
            out.push(power(sym.into(), e as i64));
        }
    }
    out
}

fn sphere_factors(i: u32, j: u32, m: u32) -> Vec<String> {
    let mut out = Vec::new();
    for (sym, e) in [("X", i), ("Z", j), ("Z*", m)] {
        if e > 0 {
            out.push(power(sym.into(), e as i64));
        }
    }
    out
}

/// Coefficient times a word, flattening single-atom coefficients.
fn attach(c: &MuScalar, word: Vec<String>, out: &mut Vec<Flat>) {
    let flat = scalar_flat(c);
    if word.is_empty() {
        out.extend(flat);
    } else if flat.len() == 1 {
        let t = &flat[0];
        let mut factors: Vec<String> = t
            .factors
            .iter()
            .filter(|f| f.as_str() != "1")
            .cloned()
            .collect();
        factors.extend(word);
        out.push(Flat {
            negative: t.negative,
            factors,
        });
    } else {
        let mut factors = vec![format!("({})", join(&flat))];
        factors.extend(word);
        out.push(Flat {
            negative: false,
            factors,
        });
    }
}

pub fn print_poly(x: &NCPoly) -> String {
    let mut out = Vec::new();
    for (m, c) in x.terms() {
        attach(c, word_factors(m), &mut out);
    }
    join(&out)
}

pub fn print_sphere(sf: &SphereForm) -> String {
    let mut out = Vec::new();
    for ((i, j, m), c) in sf.terms() {
        attach(c, sphere_factors(*i, *j, *m), &mut out);
    }
    join(&out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{a, a_star, b_star};
    use crate::scalar::rat;
    use crate::syntax::{parse_poly, parse_scalar};

    #[test]
    fn scalar_layout() {
        let s = &(&MuScalar::from_rational(rat(3, 2)) * &MuScalar::mu_pow(2))
            * &(&MuScalar::inv_linear(2) * &MuScalar::sqrt_linear(-1));
        let s = &s * &MuScalar::from_exact(ExactScalar::sqrt_int(2));
        assert_eq!(
            print_scalar(&s),
            "3/2 * mu^2 * inv(1+2*mu) * sqrt(1-mu) * rt(2)"
        );
        assert_eq!(print_scalar(&MuScalar::zero()), "0");
        assert_eq!(print_scalar(&MuScalar::from_int(-1)), "-1");
        assert_eq!(print_scalar(&MuScalar::linear(-3)), "1 - 3 * mu");
        assert_eq!(parse_scalar(&print_scalar(&s)).unwrap(), s);
    }

    #[test]
    fn poly_layout_round_trips() {
        let x = &(&a() * &a_star()) - &(&b_star() * &a());
        let text = print_poly(&x);
        assert_eq!(text, "mu + (1 - mu) * a* * a - b* * a");
        assert_eq!(parse_poly(&text).unwrap(), x);
        let y = a().pow(3).scale_left(&MuScalar::from_int(-2));
        assert_eq!(print_poly(&y), "-2 * a^3");
    }
}
