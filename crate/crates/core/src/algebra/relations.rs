//! Defining and derived relations, checked by normalisation.

use super::expr::{eval_hom, normalize_with};
use super::{theta_images, Expr, Generator, NCPoly, Rewriter};
use crate::error::Error;
use crate::mu::MuScalar;
use crate::report::CheckRecord;
use crate::syntax::parse_expr;
use crate::syntax::print::linear_str;

fn lin(k: i64) -> String {
    if k == 0 {
        "1".into()
    } else {
        format!("({})", linear_str(k))
    }
}

fn inv(k: i64) -> String {
    if k == 0 {
        "1".into()
    } else {
        format!("inv({})", linear_str(k))
    }
}

fn sqrt(k: i64) -> String {
    if k == 0 {
        "1".into()
    } else {
        format!("sqrt({})", linear_str(k))
    }
}

/// `(name, lhs, rhs)` for the relations of the 3-sphere.
pub fn sphere3_relations(k_max: i64) -> Vec<(String, String, String)> {
    let mut out: Vec<(String, String, String)> = [
        ("ba = ab", "b * a", "a * b"),
        ("ab* = (1-mu)b*a", "a * b*", "(1-mu) * b* * a"),
        ("a*b* = b*a*", "a* * b*", "b* * a*"),
        ("ba* = (1-mu)a*b", "b * a*", "(1-mu) * a* * b"),
        ("mu a - a mu = mu a mu", "mu * a - a * mu", "mu * a * mu"),
        ("mu b - b mu = mu b mu", "mu * b - b * mu", "mu * b * mu"),
        (
            "a* mu - mu a* = mu a* mu",
            "a* * mu - mu * a*",
            "mu * a* * mu",
        ),
        (
            "b* mu - mu b* = mu b* mu",
            "b* * mu - mu * b*",
            "mu * b* * mu",
        ),
        ("aa* - (1-mu)a*a = mu", "a * a* - (1-mu) * a* * a", "mu"),
        ("bb* - (1-mu)b*b = mu", "b * b* - (1-mu) * b* * b", "mu"),
        ("a*a + b*b = 1", "a* * a + b* * b", "1"),
        ("aa* + bb* = 1+mu", "a * a* + b * b*", "1 + mu"),
    ]
    .iter()
    .map(|(n, l, r)| (n.to_string(), l.to_string(), r.to_string()))
    .collect();
    for k in -k_max..=k_max {
        for g in ["a", "b"] {
            out.push((
                format!("{g} mu inv(1+k mu), k={k}"),
                format!("{g} * mu * {}", inv(k)),
                format!("mu * {} * {g}", inv(k + 1)),
            ));
            out.push((
                format!("mu {g} (1+k mu), k={k}"),
                format!("mu * {g} * {}", lin(k)),
                format!("{} * {g} * mu", lin(k + 1)),
            ));
            out.push((
                format!("{g} sqrt(1+k mu), k={k}"),
                format!("{g} * {}", sqrt(k)),
                format!("{} * sqrt(1+mu) * inv(1+mu) * {g}", sqrt(k + 1)),
            ));
        }
    }
    out
}

/// `(name, lhs, rhs)` for the relations of the 2-sphere generators.
pub fn sphere2_relations() -> Vec<(String, String, String)> {
    [
        ("mu X = X mu", "mu * X", "X * mu"),
        ("mu Z = Z mu", "mu * Z", "Z * mu"),
        ("mu Z* = Z* mu", "mu * Z*", "Z* * mu"),
        ("XZ - ZX = -mu Z", "X * Z - Z * X", "-mu * Z"),
        ("ZZ* - Z*Z = -2 mu X", "Z * Z* - Z* * Z", "-2 * mu * X"),
        ("(X+mu/2)^2 + ZZ* = 1/4", "(X + 1/2 * mu)^2 + Z * Z*", "1/4"),
        ("(X-mu/2)^2 + Z*Z = 1/4", "(X - 1/2 * mu)^2 + Z* * Z", "1/4"),
        ("X* = X", "X", "a * a* - 1/2 * (1+mu)"),
    ]
    .iter()
    .map(|(n, l, r)| (n.to_string(), l.to_string(), r.to_string()))
    .collect()
}

/// `a^n (1-μ) = (1+(n-1)μ)/(1+nμ) a^n` and the same for `b`.
pub fn theta_support_relations(n_max: i64) -> Vec<(String, String, String)> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for g in ["a", "b"] {
            out.push((
                format!("{g}^n (1-mu), n={n}"),
                format!("{g}^{n} * (1-mu)"),
                format!("{} * {} * {g}^{n}", lin(n - 1), inv(n)),
            ));
        }
    }
    out
}

fn relation_expr(lhs: &str, rhs: &str) -> Result<Expr, Error> {
    Ok(Expr::minus(parse_expr(lhs)?, parse_expr(rhs)?))
}

fn residual_record(check: &str, name: &str, r: Result<NCPoly, Error>) -> CheckRecord {
    match r {
        Ok(p) => CheckRecord::residual(check, name, p.to_string()),
        Err(e) => CheckRecord::new(check, name, false, e.to_string()),
    }
}

/// Normalises every relation to its residual, then checks that `ϑ` maps
/// each relation to an identity and the basic `*`/`ϑ` identities.
pub fn verify_relations(rw: &Rewriter, k_max: i64) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let groups = [
        ("relation S3", sphere3_relations(k_max)),
        ("relation S2", sphere2_relations()),
        ("theta support", theta_support_relations(k_max)),
    ];
    let images = theta_images(rw);
    let negate = |c: &MuScalar| c.negate_mu();
    for (check, rels) in &groups {
        for (name, l, r) in rels {
            let e = relation_expr(l, r);
            out.push(residual_record(
                check,
                name,
                e.clone().and_then(|e| normalize_with(&e, rw)),
            ));
            if *check != "theta support" {
                let img = e.and_then(|e| eval_hom(&e, &images, &negate, rw));
                out.push(residual_record("theta preserves", name, img));
            }
        }
    }
    let gens = [
        Generator::A,
        Generator::B,
        Generator::AStar,
        Generator::BStar,
    ];
    for g in gens {
        let x = NCPoly::generator(g);
        let back = x.theta_with(rw).theta_with(rw);
        out.push(CheckRecord::residual(
            "theta involutive",
            g.symbol(),
            (&back - &x).to_string(),
        ));
        let st = x.star_with(rw).star_with(rw);
        out.push(CheckRecord::residual(
            "star involutive",
            g.symbol(),
            (&st - &x).to_string(),
        ));
    }
    let named = [
        ("theta(a) = sqrt(1-mu) a*", "a", "sqrt(1-mu) * a*", true),
        ("theta(Z) = Z*", "Z", "Z*", true),
        ("theta(X) = X", "X", "X", true),
        ("star(Z) = Z*", "Z", "Z*", false),
        ("star(X) = X", "X", "X", false),
    ];
    for (name, x, y, theta) in named {
        let r = (|| {
            let x = normalize_with(&parse_expr(x)?, rw)?;
            let y = normalize_with(&parse_expr(y)?, rw)?;
            let img = if theta {
                x.theta_with(rw)
            } else {
                x.star_with(rw)
            };
            Ok(&img - &y)
        })();
        out.push(residual_record("map image", name, r));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tampered_r4_rules;
    use crate::report::{all_pass, render_text};

    #[test]
    fn shipped_rules_satisfy_everything() {
        let recs = verify_relations(Rewriter::standard(), 5);
        assert!(all_pass(&recs), "{}", render_text(&recs));
    }

    #[test]
    fn tampered_rules_fail() {
        let rw = Rewriter::new(tampered_r4_rules());
        assert!(!all_pass(&verify_relations(&rw, 1)));
    }
}
