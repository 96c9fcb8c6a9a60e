//! The Hopf algebra `H = ℂ[u, u⁻¹]`, the coactions induced by the grading,
//! and tensor containers `P ⊗ P`, `P ⊗ H`.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use crate::algebra::{Monomial, NCPoly, Rewriter};
use crate::error::Error;
use crate::mu::MuAtom;
use crate::scalar::ExactScalar;
use crate::syntax::{parse_laurent, parse_tensor, print_exact, print_poly};

fn bump<K: Ord + Copy>(map: &mut BTreeMap<K, ExactScalar>, k: K, c: &ExactScalar) {
    let slot = map.entry(k).or_insert_with(ExactScalar::zero);
    *slot += c;
    if slot.is_zero() {
        map.remove(&k);
    }
}

/// `Σ c_n uⁿ`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct HLaurent {
    terms: BTreeMap<i64, ExactScalar>,
}

/// Element of `H ⊗ H`, keyed by the pair of exponents.
pub type HTensor = BTreeMap<(i64, i64), ExactScalar>;

impl HLaurent {
    pub fn zero() -> Self {
        HLaurent::default()
    }

    pub fn one() -> Self {
        Self::u_pow(0)
    }

    pub fn u_pow(n: i64) -> Self {
        Self::from_terms([(n, ExactScalar::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, ExactScalar)>) -> Self {
        let mut map = BTreeMap::new();
        for (n, c) in terms {
            bump(&mut map, n, &c);
        }
        HLaurent { terms: map }
    }

    pub fn parse(src: &str) -> Result<Self, Error> {
        Ok(Self::from_terms(parse_laurent(src)?))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Δ(uⁿ) = uⁿ ⊗ uⁿ`.
    pub fn coproduct(&self) -> HTensor {
        let mut out = HTensor::new();
        for (n, c) in &self.terms {
            bump(&mut out, (*n, *n), c);
        }
        out
    }

    /// `ε(uⁿ) = 1`.
    pub fn counit(&self) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for c in self.terms.values() {
            acc += c;
        }
        acc
    }

    /// `S(uⁿ) = u⁻ⁿ`.
    pub fn antipode(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(n, c)| (-n, c.clone())))
    }

    /// Right adjoint coaction `h ↦ h₍₂₎ ⊗ S(h₍₁₎) h₍₃₎`.
    pub fn ad(&self) -> HTensor {
        let mut out = HTensor::new();
        for (n, c) in &self.terms {
            // Δ² of a grouplike is uⁿ⊗uⁿ⊗uⁿ
            let (h1, h2, h3) = (*n, *n, *n);
            bump(&mut out, (h2, -h1 + h3), c);
        }
        out
    }
}

impl Add<&HLaurent> for &HLaurent {
    type Output = HLaurent;
    fn add(self, rhs: &HLaurent) -> HLaurent {
        HLaurent::from_terms(
            self.terms
                .iter()
                .chain(rhs.terms.iter())
                .map(|(n, c)| (*n, c.clone())),
        )
    }
}

impl std::ops::Mul<&HLaurent> for &HLaurent {
    type Output = HLaurent;
    fn mul(self, rhs: &HLaurent) -> HLaurent {
        let mut out = BTreeMap::new();
        for (n, c) in &self.terms {
            for (m, d) in &rhs.terms {
                bump(&mut out, n + m, &(c * d));
            }
        }
        HLaurent { terms: out }
    }
}

impl std::fmt::Debug for HLaurent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(n, c)| format!("({}) * u^{n}", print_exact(c)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

// ---------------------------------------------------------------------------

/// `Σ xₙ ⊗ uⁿ`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TensorPH {
    terms: BTreeMap<i64, NCPoly>,
}

impl TensorPH {
    pub fn zero() -> Self {
        TensorPH::default()
    }

    pub fn simple(x: NCPoly, n: i64) -> Self {
        let mut t = TensorPH::zero();
        t.add_component(n, &x);
        t
    }

    pub fn add_component(&mut self, n: i64, x: &NCPoly) {
        if x.is_zero() {
            return;
        }
        let slot = self.terms.entry(n).or_default();
        *slot += x;
        if slot.is_zero() {
            self.terms.remove(&n);
        }
    }

    pub fn components(&self) -> impl Iterator<Item = (&i64, &NCPoly)> {
        self.terms.iter()
    }

    pub fn component(&self, n: i64) -> NCPoly {
        self.terms.get(&n).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `z·(x ⊗ h) = zx ⊗ h`.
    pub fn left_mul(&self, z: &NCPoly) -> Self {
        let rw = Rewriter::standard();
        let mut out = TensorPH::zero();
        for (n, x) in &self.terms {
            out.add_component(*n, &rw.mul(z, x));
        }
        out
    }

    /// `(Δ_R ⊗ id)` or `(id ⊗ Δ)` applied to a coaction value; both land in
    /// `P ⊗ H ⊗ H` as `xₙ ⊗ uⁿ ⊗ uⁿ` when the input is `Δ_R(x)`.
    pub fn coact_then_split(&self) -> BTreeMap<(i64, i64), NCPoly> {
        let mut out = BTreeMap::new();
        for (n, x) in &self.terms {
            for (d, part) in x.degree_parts() {
                out.insert((d, *n), part);
            }
        }
        out
    }

    pub fn split_then_coproduct(&self) -> BTreeMap<(i64, i64), NCPoly> {
        self.terms
            .iter()
            .map(|(n, x)| ((*n, *n), x.clone()))
            .collect()
    }
}

impl Add<&TensorPH> for &TensorPH {
    type Output = TensorPH;
    fn add(self, rhs: &TensorPH) -> TensorPH {
        let mut out = self.clone();
        for (n, x) in &rhs.terms {
            out.add_component(*n, x);
        }
        out
    }
}

impl Sub<&TensorPH> for &TensorPH {
    type Output = TensorPH;
    fn sub(self, rhs: &TensorPH) -> TensorPH {
        let mut out = self.clone();
        for (n, x) in &rhs.terms {
            out.add_component(*n, &-x);
        }
        out
    }
}

impl std::fmt::Debug for TensorPH {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(n, x)| format!("({}) (x) u^{n}", print_poly(x)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `Δ_R(x) = Σ x_d ⊗ u^d` over the homogeneous parts of `x`.
pub fn coact_right(x: &NCPoly) -> TensorPH {
    let mut out = TensorPH::zero();
    for (d, part) in x.degree_parts() {
        out.add_component(d, &part);
    }
    out
}

/// `Δ_L(x) = Σ u^{-d} ⊗ x_d`, keyed by the exponent of `u`.
pub fn coact_left(x: &NCPoly) -> BTreeMap<i64, NCPoly> {
    x.degree_parts()
        .into_iter()
        .map(|(d, part)| (-d, part))
        .collect()
}

pub fn is_coinvariant(x: &NCPoly) -> bool {
    x.is_homogeneous_of(0)
}

// ---------------------------------------------------------------------------

/// Element of `P ⊗ P` over `ℂ` in canonical form `Σ L_{w,α} ⊗ α·w`, where
/// `w` runs over normal words and `α` over the `ℂ`-basis of the coefficient
/// ring; every scalar is thereby carried by the left legs.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TensorPP {
    terms: BTreeMap<(Monomial, MuAtom), NCPoly>,
}

impl TensorPP {
    pub fn zero() -> Self {
        TensorPP::default()
    }

    pub fn one() -> Self {
        Self::simple(&NCPoly::one(), &NCPoly::one())
    }

    pub fn simple(x: &NCPoly, y: &NCPoly) -> Self {
        let mut t = TensorPP::zero();
        t.add_simple(x, y);
        t
    }

    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a NCPoly, &'a NCPoly)>) -> Self {
        let mut t = TensorPP::zero();
        for (x, y) in pairs {
            t.add_simple(x, y);
        }
        t
    }

    pub fn parse(src: &str) -> Result<Self, Error> {
        let mut t = TensorPP::zero();
        for (l, r) in parse_tensor(src)? {
            t.add_simple(
                &crate::algebra::normalize(&l)?,
                &crate::algebra::normalize(&r)?,
            );
        }
        Ok(t)
    }

    fn add_part(&mut self, key: (Monomial, MuAtom), x: &NCPoly) {
        if x.is_zero() {
            return;
        }
        let slot = self.terms.entry(key.clone()).or_default();
        *slot += x;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_simple(&mut self, x: &NCPoly, y: &NCPoly) {
        if x.is_zero() {
            return;
        }
        for (w, c) in y.terms() {
            for (atom, alpha) in c.atoms() {
                self.add_part((*w, atom), &x.scale_exact(&alpha));
            }
        }
    }

    /// Canonical simple tensors `L ⊗ α·w`.
    pub fn legs(&self) -> impl Iterator<Item = (&NCPoly, NCPoly)> {
        self.terms
            .iter()
            .map(|((w, atom), l)| (l, NCPoly::term(atom.to_scalar(), *w)))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale_exact(&self, c: &ExactScalar) -> Self {
        let mut out = TensorPP::zero();
        for (k, l) in &self.terms {
            out.add_part(k.clone(), &l.scale_exact(c));
        }
        out
    }

    /// `z·(x ⊗ y) = zx ⊗ y`.
    pub fn left_mul(&self, z: &NCPoly) -> Self {
        let rw = Rewriter::standard();
        let mut out = TensorPP::zero();
        for (k, l) in &self.terms {
            out.add_part(k.clone(), &rw.mul(z, l));
        }
        out
    }

    /// `(x ⊗ y)·z = x ⊗ yz`.
    pub fn right_mul(&self, z: &NCPoly) -> Self {
        let rw = Rewriter::standard();
        let mut out = TensorPP::zero();
        for (l, r) in self.legs() {
            out.add_simple(l, &rw.mul(&r, z));
        }
        out
    }

    /// Multiplication map `m_P(x ⊗ y) = xy`.
    pub fn multiply(&self) -> NCPoly {
        let rw = Rewriter::standard();
        let mut out = NCPoly::zero();
        for (l, r) in self.legs() {
            out += &rw.mul(l, &r);
        }
        out
    }

    /// Components of the diagonal coaction `x₍₀₎ ⊗ y₍₀₎ ⊗ x₍₁₎y₍₁₎`, keyed by
    /// the total degree.
    pub fn diag_coact(&self) -> BTreeMap<i64, TensorPP> {
        let mut out: BTreeMap<i64, TensorPP> = BTreeMap::new();
        for ((w, atom), l) in &self.terms {
            for (d, part) in l.degree_parts() {
                out.entry(d + w.degree())
                    .or_default()
                    .add_part((*w, atom.clone()), &part);
            }
        }
        out
    }
}

impl Add<&TensorPP> for &TensorPP {
    type Output = TensorPP;
    fn add(self, rhs: &TensorPP) -> TensorPP {
        let mut out = self.clone();
        for (k, l) in &rhs.terms {
            out.add_part(k.clone(), l);
        }
        out
    }
}

impl Sub<&TensorPP> for &TensorPP {
    type Output = TensorPP;
    fn sub(self, rhs: &TensorPP) -> TensorPP {
        self + &(-rhs)
    }
}

impl Neg for &TensorPP {
    type Output = TensorPP;
    fn neg(self) -> TensorPP {
        TensorPP {
            terms: self.terms.iter().map(|(k, l)| (k.clone(), -l)).collect(),
        }
    }
}

impl std::fmt::Debug for TensorPP {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .legs()
            .map(|(l, r)| format!("({}) (x) ({})", print_poly(l), print_poly(&r)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Universal differential `dx = 1 ⊗ x - x ⊗ 1`.
pub fn universal_d(x: &NCPoly) -> TensorPP {
    &TensorPP::simple(&NCPoly::one(), x) - &TensorPP::simple(x, &NCPoly::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{a, a_star, b, b_star, mu};
    use crate::mu::MuScalar;

    #[test]
    fn grouplike_structure() {
        let u5 = HLaurent::u_pow(5);
        assert_eq!(
            u5.coproduct(),
            HTensor::from([((5, 5), ExactScalar::one())])
        );
        assert!(HLaurent::u_pow(-3).counit().is_one());
        assert_eq!(u5.antipode().antipode(), u5);
        let h = HLaurent::parse("u + u^2").unwrap();
        assert_eq!(
            h.ad(),
            HTensor::from([((1, 0), ExactScalar::one()), ((2, 0), ExactScalar::one())])
        );
        assert_eq!(
            HLaurent::one().ad(),
            HTensor::from([((0, 0), ExactScalar::one())])
        );
    }

    #[test]
    fn coactions() {
        assert_eq!(coact_right(&a()), TensorPH::simple(a(), 1));
        assert_eq!(coact_right(&mu()), TensorPH::simple(mu(), 0));
        let z = &a() * &b_star();
        assert_eq!(coact_right(&z), TensorPH::simple(z.clone(), 0));
        assert!(is_coinvariant(&z));
        assert_eq!(coact_left(&a()), BTreeMap::from([(-1, a())]));
    }

    #[test]
    fn scalars_move_to_the_left_leg() {
        let m = NCPoly::scalar(MuScalar::mu());
        let lhs = TensorPP::simple(&a(), &(&m * &b()));
        let rhs = TensorPP::simple(&(&a() * &m), &b());
        assert_ne!(lhs, rhs, "μ is not a ℂ-scalar");
        let two = NCPoly::from_int(2);
        assert_eq!(
            TensorPP::simple(&a(), &(&two * &b())),
            TensorPP::simple(&(&two * &a()), &b())
        );
    }

    #[test]
    fn differential() {
        assert!(universal_d(&NCPoly::one()).is_zero());
        assert_eq!(
            universal_d(&a()),
            TensorPP::parse("1 (x) a - a (x) 1").unwrap()
        );
        let x = &(&a() * &b_star()) + &mu();
        assert!(universal_d(&x).multiply().is_zero());
        let y = &a_star() * &b();
        let lhs = universal_d(&(&x * &y));
        let rhs = &universal_d(&x).right_mul(&y) + &universal_d(&y).left_mul(&x);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn diagonal_degrees() {
        let t = TensorPP::simple(&a_star(), &a());
        assert_eq!(t.diag_coact(), BTreeMap::from([(0, t.clone())]));
        let t = TensorPP::simple(&a(), &b());
        assert_eq!(t.diag_coact().keys().copied().collect::<Vec<_>>(), vec![2]);
    }
}
