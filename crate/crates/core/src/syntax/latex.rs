//! LaTeX rendering. Coefficient parts with rational numerators factor out
//! their content, so `1/2 + 1/2 μ` renders as `\frac{1}{2}(1+\mu)`.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::{Monomial, NCPoly, SphereForm};
use crate::mu::{MuScalar, RatFn, Signature};
use crate::scalar::{ExactScalar, Rational};

fn frac(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", q.numer(), q.denom())
    }
}

fn linear(k: i64) -> String {
    match k {
        1 => "1+\\mu".into(),
        -1 => "1-\\mu".into(),
        k if k > 0 => format!("1+{k}\\mu"),
        k => format!("1-{}\\mu", -k),
    }
}

fn mu_pow(e: i64) -> String {
    match e {
        0 => String::new(),
        1 => "\\mu".into(),
        e => format!("\\mu^{{{e}}}"),
    }
}

fn exact(c: &ExactScalar) -> String {
    let mut s = String::new();
    for (i, (d, q)) in c.terms().iter().enumerate() {
        let neg = q.is_negative();
        if i > 0 {
            s.push_str(if neg { " - " } else { " + " });
        } else if neg {
            s.push('-');
        }
        let abs = q.abs();
        let root = if *d > 1 {
            format!("\\sqrt{{{d}}}")
        } else {
            String::new()
        };
        if abs.is_one() && *d > 1 {
            s.push_str(&root);
        } else {
            s.push_str(&frac(&abs));
            s.push_str(&root);
        }
    }
    s
}

/// Polynomial in μ with the given coefficients, low to high.
fn mu_poly(num: &[ExactScalar]) -> String {
    let mut s = String::new();
    let mut first = true;
    for (i, c) in num.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let body = exact(c);
        let (neg, body) = match body.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, body),
        };
        let multi = c.terms().len() > 1;
        let coeff = if i > 0 && body == "1" {
            String::new()
        } else if multi {
            format!("({body})")
        } else {
            body
        };
        if first {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { "-" } else { "+" });
        }
        first = false;
        s.push_str(&coeff);
        s.push_str(&mu_pow(i as i64));
    }
    s
}

fn ratfn(sig: &Signature, r: &RatFn) -> String {
    let num = r.numerator();
    let rational: Option<Vec<Rational>> = num.iter().map(|c| c.as_rational()).collect();
    let (content, body) = match rational {
        Some(qs) if qs.len() > 1 => {
            let g_num = qs
                .iter()
                .fold(num_bigint::BigInt::zero(), |g, q| g.gcd(q.numer()));
            let l_den = qs
                .iter()
                .fold(num_bigint::BigInt::one(), |l, q| l.lcm(q.denom()));
            let mut content = Rational::new(g_num, l_den);
            if qs[0].is_negative() {
                content = -content;
            }
            let scaled: Vec<ExactScalar> = qs
                .iter()
                .map(|q| ExactScalar::from_rational(q / &content))
                .collect();
            (Some(content), format!("({})", mu_poly(&scaled)))
        }
        _ => (None, mu_poly(num)),
    };
    let mut factors = Vec::new();
    let mut lead = String::new();
    match content {
        Some(c) if c == -Rational::one() => lead.push('-'),
        Some(c) if !c.is_one() => lead.push_str(&frac(&c)),
        _ => {}
    }
    let plain_one = body == "1";
    if !plain_one || (r.mu_power() == 0 && r.denominator().is_empty() && sig.is_empty()) {
        factors.push(body);
    }
    if r.mu_power() != 0 {
        factors.push(mu_pow(r.mu_power() as i64));
    }
    for k in sig.indices() {
        factors.push(format!("\\sqrt{{{}}}", linear(*k)));
    }
    let mut s = lead + &factors.join("");
    if !r.denominator().is_empty() {
        let den: Vec<String> = r
            .denominator()
            .iter()
            .map(|(k, m)| {
                if *m == 1 {
                    format!("({})", linear(*k))
                } else {
                    format!("({})^{{{m}}}", linear(*k))
                }
            })
            .collect();
        s = format!(
            "\\frac{{{}}}{{{}}}",
            if s.is_empty() { "1".into() } else { s },
            den.join("")
        );
    }
    s
}

pub fn latex_scalar(s: &MuScalar) -> String {
    let parts: Vec<String> = s.parts().map(|(sig, r)| ratfn(sig, r)).collect();
    if parts.is_empty() {
        return "0".into();
    }
    join_signed(parts)
}

fn join_signed(parts: Vec<String>) -> String {
    let mut s = String::new();
    for (i, p) in parts.into_iter().enumerate() {
        if i > 0 {
            match p.strip_prefix('-') {
                Some(rest) => {
                    s.push_str(" - ");
                    s.push_str(rest);
                }
                None => {
                    s.push_str(" + ");
                    s.push_str(&p);
                }
            }
        } else {
            s.push_str(&p);
        }
    }
    s
}

fn attach(c: &MuScalar, word: String, out: &mut Vec<String>) {
    if word.is_empty() {
        out.push(latex_scalar(c));
        return;
    }
    let coeff = latex_scalar(c);
    let single = c.parts().count() == 1;
    let body = match coeff.as_str() {
        "1" => word,
        "-1" => format!("-{word}"),
        _ if single && !coeff[1..].contains(" + ") && !coeff[1..].contains(" - ") => {
            format!("{coeff}{word}")
        }
        _ => format!("\\left({coeff}\\right){word}"),
    };
    out.push(body);
}

fn monomial(m: &Monomial) -> String {
    let mut s = String::new();
    for (sym, e) in [("(a^*)", m.p), ("(b^*)", m.q), ("b", m.s), ("a", m.r)] {
        match e {
            0 => {}
            1 => s.push_str(&sym.replace(['(', ')'], "")),
            e => s.push_str(&format!("{sym}^{{{e}}}")),
        }
    }
    s
}

pub fn latex_poly(x: &NCPoly) -> String {
    let mut out = Vec::new();
    for (m, c) in x.terms() {
        attach(c, monomial(m), &mut out);
    }
    if out.is_empty() {
        return "0".into();
    }
    join_signed(out)
}

pub fn latex_sphere(sf: &SphereForm) -> String {
    let mut out = Vec::new();
    for ((i, j, m), c) in sf.terms() {
        let mut w = String::new();
        for (sym, e) in [("X", *i), ("Z", *j), ("(Z^{\\ast})", *m)] {
            match e {
                0 => {}
                1 => w.push_str(if sym == "(Z^{\\ast})" {
                    "Z^{\\ast}"
                } else {
                    sym
                }),
                e => w.push_str(&format!("{sym}^{{{e}}}")),
            }
        }
        attach(c, w, &mut out);
    }
    if out.is_empty() {
        return "0".into();
    }
    join_signed(out)
}

/// `\left(\begin{array}{cc} … \end{array}\right)`.
pub fn latex_matrix(rows: &[Vec<String>]) -> String {
    let cols = rows.first().map_or(0, |r| r.len());
    let body: Vec<String> = rows.iter().map(|r| r.join(" & ")).collect();
    format!(
        "\\left(\n\\begin{{array}}{{{}}}\n{}\n\\end{{array}}\n\\right)",
        "c".repeat(cols),
        body.join(" \\\\\n")
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn content_is_factored() {
        let half = MuScalar::from_rational(rat(1, 2));
        assert_eq!(
            latex_scalar(&(&half * &MuScalar::linear(1))),
            "\\frac{1}{2}(1+\\mu)"
        );
        assert_eq!(
            latex_scalar(&MuScalar::inv_linear(-1)),
            "\\frac{1}{(1-\\mu)}"
        );
        assert_eq!(latex_scalar(&MuScalar::sqrt_linear(2)), "\\sqrt{1+2\\mu}");
    }
}
