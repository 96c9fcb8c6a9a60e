//! The quantum 2-sphere generators `X = aa* - (1+μ)/2`, `Z = ab*`, `Z* = ba*`
//! and conversion of degree-zero elements into polynomials in them.
//!
//! Sphere forms are kept in the reduced spanning set `X^i Z^j` and
//! `X^i (Z*)^m` (never `Z` and `Z*` together, since `ZZ*` is a polynomial in
//! `X` by the radial relation). The leading word of `X^i Z^j` is
//! `(a*)^i (b*)^j a^{i+j}` and that of `X^i (Z*)^m` is `(a*)^{i+m} b^m a^i`,
//! each with a unit coefficient, so conversion is a triangular elimination
//! by word length.

use std::collections::{BTreeMap, BTreeSet};

use super::{Generator, Monomial, NCPoly, Rewriter};
use crate::error::Error;
use crate::mu::MuScalar;
use crate::scalar::rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SphereGen {
    X,
    Z,
    ZStar,
}

impl SphereGen {
    pub fn symbol(self) -> &'static str {
        match self {
            SphereGen::X => "X",
            SphereGen::Z => "Z",
            SphereGen::ZStar => "Z*",
        }
    }

    pub fn expand(self) -> NCPoly {
        self.expand_with(Rewriter::standard())
    }

    pub fn expand_with(self, rw: &Rewriter) -> NCPoly {
        let g = NCPoly::generator;
        match self {
            SphereGen::X => {
                let half = MuScalar::from_rational(rat(1, 2));
                let shift = &half * &MuScalar::linear(1);
                &rw.mul(&g(Generator::A), &g(Generator::AStar)) - &NCPoly::scalar(shift)
            }
            SphereGen::Z => rw.mul(&g(Generator::A), &g(Generator::BStar)),
            SphereGen::ZStar => rw.mul(&g(Generator::B), &g(Generator::AStar)),
        }
    }
}

/// `Σ coeff · X^i Z^j (Z*)^m`, coefficients on the left.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SphereForm {
    terms: BTreeMap<(u32, u32, u32), MuScalar>,
}

impl SphereForm {
    pub fn zero() -> Self {
        SphereForm::default()
    }

    pub fn term(c: MuScalar, i: u32, j: u32, m: u32) -> Self {
        let mut sf = SphereForm::zero();
        sf.add_term((i, j, m), &c);
        sf
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32, u32), MuScalar)>) -> Self {
        let mut sf = SphereForm::zero();
        for (k, c) in terms {
            sf.add_term(k, &c);
        }
        sf
    }

    pub fn add_term(&mut self, key: (u32, u32, u32), c: &MuScalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32, u32), &MuScalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Every `(1+kμ)^{-1}` index among the coefficients.
    pub fn pole_indices(&self) -> BTreeSet<i64> {
        self.terms.values().flat_map(|c| c.pole_indices()).collect()
    }

    /// True when each term avoids mixing `Z` with `Z*`.
    pub fn is_reduced(&self) -> bool {
        self.terms.keys().all(|(_, j, m)| *j == 0 || *m == 0)
    }
}

impl std::fmt::Debug for SphereForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", crate::syntax::print_sphere(self))
    }
}

impl std::fmt::Display for SphereForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", crate::syntax::print_sphere(self))
    }
}

/// Expansion of `X^i Z^j (Z*)^m` into normal form.
pub fn sphere_monomial(i: u32, j: u32, m: u32, rw: &Rewriter) -> NCPoly {
    let x = SphereGen::X.expand_with(rw);
    let z = SphereGen::Z.expand_with(rw);
    let zs = SphereGen::ZStar.expand_with(rw);
    let mut out = NCPoly::one();
    for _ in 0..i {
        out = rw.mul(&out, &x);
    }
    for _ in 0..j {
        out = rw.mul(&out, &z);
    }
    for _ in 0..m {
        out = rw.mul(&out, &zs);
    }
    out
}

pub fn expand_sphere_gens(sf: &SphereForm) -> NCPoly {
    expand_sphere_gens_with(sf, Rewriter::standard())
}

pub fn expand_sphere_gens_with(sf: &SphereForm, rw: &Rewriter) -> NCPoly {
    let mut out = NCPoly::zero();
    for ((i, j, m), c) in &sf.terms {
        out.add_scaled(c, &sphere_monomial(*i, *j, *m, rw));
    }
    out
}

/// Sphere monomial whose expansion leads with the degree-zero word `w`.
fn leading_sphere_index(w: &Monomial) -> (u32, u32, u32) {
    if w.s == 0 {
        // (a*)^p (b*)^q a^{p+q}  <-  X^p Z^q
        (w.p, w.q, 0)
    } else {
        // (a*)^{r+s} b^s a^r  <-  X^r (Z*)^s
        (w.r, 0, w.s)
    }
}

pub fn to_sphere_generators(x: &NCPoly) -> Result<SphereForm, Error> {
    to_sphere_generators_with(x, Rewriter::standard())
}

pub fn to_sphere_generators_with(x: &NCPoly, rw: &Rewriter) -> Result<SphereForm, Error> {
    if !x.is_homogeneous_of(0) {
        return Err(Error::NotDegreeZero);
    }
    let mut rest = x.clone();
    let mut out = SphereForm::zero();
    let mut cache: BTreeMap<(u32, u32, u32), NCPoly> = BTreeMap::new();
    // each step removes the largest word and only introduces shorter ones
    loop {
        let Some((w, c)) = rest.terms().next_back().map(|(w, c)| (*w, c.clone())) else {
            break;
        };
        let idx = leading_sphere_index(&w);
        let expansion = cache
            .entry(idx)
            .or_insert_with(|| sphere_monomial(idx.0, idx.1, idx.2, rw));
        let lead = expansion.coefficient(&w);
        let pivot = lead
            .inverse_unit()
            .ok_or_else(|| Error::NotExpressible(format!("{:?}", w)))?;
        if expansion
            .terms()
            .any(|(v, _)| v.len() >= w.len() && *v != w)
        {
            return Err(Error::NotExpressible(format!("{:?}", w)));
        }
        let k = &c * &pivot;
        rest = &rest - &expansion.scale_left(&k);
        out.add_term(idx, &k);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{a, a_star, b, b_star};

    fn half() -> MuScalar {
        MuScalar::from_rational(rat(1, 2))
    }

    #[test]
    fn x_expansion() {
        // (1-μ) a*a + μ - (1+μ)/2
        let expect = &(&NCPoly::scalar(MuScalar::linear(-1)) * &(&a_star() * &a()))
            + &NCPoly::scalar(&MuScalar::mu() - &(&half() * &MuScalar::linear(1)));
        assert_eq!(SphereGen::X.expand(), expect);
        assert_eq!(SphereGen::X.expand().star(), SphereGen::X.expand());
    }

    #[test]
    fn a_star_a_in_sphere_generators() {
        let sf = to_sphere_generators(&(&a_star() * &a())).unwrap();
        let expect =
            SphereForm::from_terms([((1, 0, 0), MuScalar::inv_linear(-1)), ((0, 0, 0), half())]);
        assert_eq!(sf, expect);
    }

    #[test]
    fn b_star_a_is_scaled_z() {
        let sf = to_sphere_generators(&(&b_star() * &a())).unwrap();
        assert_eq!(sf, SphereForm::term(MuScalar::inv_linear(-1), 0, 1, 0));
    }

    #[test]
    fn rejects_nonzero_degree() {
        assert!(matches!(
            to_sphere_generators(&a()),
            Err(Error::NotDegreeZero)
        ));
        assert!(matches!(
            to_sphere_generators(&(&a() + &(&b() * &a_star()))),
            Err(Error::NotDegreeZero)
        ));
    }
}
