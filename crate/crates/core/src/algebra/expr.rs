//! Unnormalised expression trees and their evaluation into normal form.

use super::sphere::SphereGen;
use super::{Generator, NCPoly, Rewriter};
use crate::error::Error;
use crate::mu::MuScalar;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Gen(Generator),
    Sphere(SphereGen),
    Scalar(MuScalar),
    Add(Vec<Expr>),
    Neg(Box<Expr>),
    Mul(Vec<Expr>),
    Pow(Box<Expr>, i64),
}

impl Expr {
    pub fn gen(g: Generator) -> Expr {
        Expr::Gen(g)
    }

    pub fn scalar(c: MuScalar) -> Expr {
        Expr::Scalar(c)
    }

    pub fn mu() -> Expr {
        Expr::Scalar(MuScalar::mu())
    }

    pub fn product(factors: Vec<Expr>) -> Expr {
        Expr::Mul(factors)
    }

    pub fn sum(terms: Vec<Expr>) -> Expr {
        Expr::Add(terms)
    }

    pub fn minus(x: Expr, y: Expr) -> Expr {
        Expr::Add(vec![x, Expr::Neg(Box::new(y))])
    }

    /// Evaluates as an element of the coefficient ring, if it contains no generator.
    pub fn as_scalar(&self) -> Option<MuScalar> {
        match self {
            Expr::Scalar(c) => Some(c.clone()),
            Expr::Gen(_) | Expr::Sphere(_) => None,
            Expr::Add(ts) => {
                let mut acc = MuScalar::zero();
                for t in ts {
                    acc += &t.as_scalar()?;
                }
                Some(acc)
            }
            Expr::Neg(x) => x.as_scalar().map(|c| -&c),
            Expr::Mul(fs) => {
                let mut acc = MuScalar::one();
                for f in fs {
                    acc = &acc * &f.as_scalar()?;
                }
                Some(acc)
            }
            Expr::Pow(x, e) => {
                let base = x.as_scalar()?;
                if *e >= 0 {
                    Some(base.pow(*e as u32))
                } else {
                    base.inverse_unit()
                        .map(|inv| inv.pow(e.unsigned_abs() as u32))
                }
            }
        }
    }
}

/// Normal form of an expression.
pub fn normalize(e: &Expr) -> Result<NCPoly, Error> {
    normalize_with(e, Rewriter::standard())
}

pub fn normalize_with(e: &Expr, rw: &Rewriter) -> Result<NCPoly, Error> {
    Ok(match e {
        Expr::Gen(g) => NCPoly::generator(*g),
        Expr::Sphere(s) => s.expand_with(rw),
        Expr::Scalar(c) => NCPoly::scalar(c.clone()),
        Expr::Add(ts) => {
            let mut acc = NCPoly::zero();
            for t in ts {
                acc += &normalize_with(t, rw)?;
            }
            acc
        }
        Expr::Neg(x) => -&normalize_with(x, rw)?,
        Expr::Mul(fs) => {
            let mut acc = NCPoly::one();
            for f in fs {
                acc = rw.mul(&acc, &normalize_with(f, rw)?);
            }
            acc
        }
        Expr::Pow(x, n) => {
            if *n >= 0 {
                let base = normalize_with(x, rw)?;
                let mut acc = NCPoly::one();
                for _ in 0..*n {
                    acc = rw.mul(&acc, &base);
                }
                acc
            } else {
                match x.as_scalar().and_then(|c| c.inverse_unit()) {
                    Some(inv) => NCPoly::scalar(inv.pow(n.unsigned_abs() as u32)),
                    None => return Err(Error::NegativePower),
                }
            }
        }
    })
}

/// Homomorphic image of an expression under an algebra map given by the
/// images of the generators and a coefficient map.
pub fn eval_hom(
    e: &Expr,
    images: &[NCPoly; 4],
    coeff: &dyn Fn(&MuScalar) -> MuScalar,
    rw: &Rewriter,
) -> Result<NCPoly, Error> {
    Ok(match e {
        Expr::Gen(g) => images[g.index()].clone(),
        Expr::Sphere(s) => {
            let expanded = s.expand_with(rw);
            let mut out = NCPoly::zero();
            for (m, c) in expanded.terms() {
                let mut img = NCPoly::one();
                for g in m.letters() {
                    img = rw.mul(&img, &images[g.index()]);
                }
                out.add_scaled(&coeff(c), &img);
            }
            out
        }
        Expr::Scalar(c) => NCPoly::scalar(coeff(c)),
        Expr::Add(ts) => {
            let mut acc = NCPoly::zero();
            for t in ts {
                acc += &eval_hom(t, images, coeff, rw)?;
            }
            acc
        }
        Expr::Neg(x) => -&eval_hom(x, images, coeff, rw)?,
        Expr::Mul(fs) => {
            let mut acc = NCPoly::one();
            for f in fs {
                acc = rw.mul(&acc, &eval_hom(f, images, coeff, rw)?);
            }
            acc
        }
        Expr::Pow(x, n) => {
            if *n < 0 {
                let c = x
                    .as_scalar()
                    .and_then(|c| c.inverse_unit())
                    .ok_or(Error::NegativePower)?;
                NCPoly::scalar(coeff(&c.pow(n.unsigned_abs() as u32)))
            } else {
                let base = eval_hom(x, images, coeff, rw)?;
                let mut acc = NCPoly::one();
                for _ in 0..*n {
                    acc = rw.mul(&acc, &base);
                }
                acc
            }
        }
    })
}
