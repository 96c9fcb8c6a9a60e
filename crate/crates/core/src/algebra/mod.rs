//! The contact quantum 3-sphere algebra `P` over the `μ`-coefficient ring.
//!
//! Elements are stored in normal form: a left `MuScalar` combination of
//! normal words `(a*)^p (b*)^q b^s a^r` with `q = 0` or `s = 0`. Products are
//! renormalised by the rewrite system in [`rewrite`].

pub mod expr;
pub mod relations;
pub mod rewrite;
pub mod sphere;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::mu::MuScalar;
use crate::scalar::ExactScalar;

pub use expr::{normalize, Expr};
pub use rewrite::{standard_rules, tampered_r4_rules, CriticalPair, Rewriter, Rule};
pub use sphere::{expand_sphere_gens, to_sphere_generators, SphereForm, SphereGen};

/// Generators, declared in normal-order rank: `a* < b* < b < a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    AStar,
    BStar,
    B,
    A,
}

impl Generator {
    pub const ALL: [Generator; 4] = [
        Generator::AStar,
        Generator::BStar,
        Generator::B,
        Generator::A,
    ];

    pub fn star(self) -> Generator {
        match self {
            Generator::A => Generator::AStar,
            Generator::AStar => Generator::A,
            Generator::B => Generator::BStar,
            Generator::BStar => Generator::B,
        }
    }

    pub fn degree(self) -> i64 {
        match self {
            Generator::A | Generator::B => 1,
            Generator::AStar | Generator::BStar => -1,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Generator::A => "a",
            Generator::B => "b",
            Generator::AStar => "a*",
            Generator::BStar => "b*",
        }
    }

    pub(crate) fn index(self) -> usize {
        self as usize
    }
}

/// Normal word `(a*)^p (b*)^q b^s a^r`; `q` and `s` are never both positive
/// because `b* b` is eliminated by `a*a + b*b = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    pub p: u32,
    pub q: u32,
    pub r: u32,
    pub s: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        p: 0,
        q: 0,
        r: 0,
        s: 0,
    };

    pub fn new(p: u32, q: u32, r: u32, s: u32) -> Option<Monomial> {
        (q == 0 || s == 0).then_some(Monomial { p, q, r, s })
    }

    pub fn letters(&self) -> Vec<Generator> {
        let mut w = Vec::with_capacity(self.len());
        w.extend(std::iter::repeat_n(Generator::AStar, self.p as usize));
        w.extend(std::iter::repeat_n(Generator::BStar, self.q as usize));
        w.extend(std::iter::repeat_n(Generator::B, self.s as usize));
        w.extend(std::iter::repeat_n(Generator::A, self.r as usize));
        w
    }

    /// Parses an already-normal word.
    pub fn from_word(word: &[Generator]) -> Option<Monomial> {
        if word.windows(2).any(|w| w[0] > w[1]) {
            return None;
        }
        let count = |g| word.iter().filter(|x| **x == g).count() as u32;
        Monomial::new(
            count(Generator::AStar),
            count(Generator::BStar),
            count(Generator::A),
            count(Generator::B),
        )
    }

    pub fn len(&self) -> usize {
        (self.p + self.q + self.r + self.s) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn degree(&self) -> i64 {
        (self.r + self.s) as i64 - (self.p + self.q) as i64
    }

    pub fn star_word(&self) -> Vec<Generator> {
        self.letters()
            .into_iter()
            .rev()
            .map(Generator::star)
            .collect()
    }
}

/// Degree-then-lexicographic order on words (letters by rank).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        // same length: a longer a*-run, then b*-run, then b-run is smaller
        self.len()
            .cmp(&other.len())
            .then_with(|| other.p.cmp(&self.p))
            .then_with(|| other.q.cmp(&self.q))
            .then_with(|| other.s.cmp(&self.s))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn deglex(a: &[Generator], b: &[Generator]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Element of `P` in normal form, coefficients written to the left.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct NCPoly {
    terms: BTreeMap<Monomial, MuScalar>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::scalar(MuScalar::one())
    }

    pub fn scalar(c: MuScalar) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn from_int(n: i64) -> Self {
        Self::scalar(MuScalar::from_int(n))
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(MuScalar::one(), m)
    }

    pub fn term(c: MuScalar, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        NCPoly { terms }
    }

    pub fn generator(g: Generator) -> Self {
        Self::monomial(Monomial::from_word(&[g]).unwrap())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, MuScalar)>) -> Self {
        let mut out = NCPoly::zero();
        for (m, c) in terms {
            out.add_term(m, &c);
        }
        out
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &MuScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> MuScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient when the element lies in the coefficient ring.
    pub fn as_scalar(&self) -> Option<MuScalar> {
        match self.terms.len() {
            0 => Some(MuScalar::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: &MuScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    /// Adds `c · other`.
    pub fn add_scaled(&mut self, c: &MuScalar, other: &NCPoly) {
        if c.is_zero() {
            return;
        }
        let unit = c.is_one();
        for (m, d) in &other.terms {
            if unit {
                self.add_term(*m, d);
            } else {
                self.add_term(*m, &(c * d));
            }
        }
    }

    /// Left multiplication by a coefficient.
    pub fn scale_left(&self, c: &MuScalar) -> NCPoly {
        let mut out = NCPoly::zero();
        out.add_scaled(c, self);
        out
    }

    pub fn scale_exact(&self, c: &ExactScalar) -> NCPoly {
        self.scale_left(&MuScalar::from_exact(c.clone()))
    }

    pub fn mul_with(&self, other: &NCPoly, rw: &Rewriter) -> NCPoly {
        rw.mul(self, other)
    }

    pub fn pow(&self, e: u32) -> NCPoly {
        let mut out = NCPoly::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn degree_parts(&self) -> BTreeMap<i64, NCPoly> {
        let mut out: BTreeMap<i64, NCPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree()).or_default().add_term(*m, c);
        }
        out
    }

    /// `Some(d)` when all monomials have degree `d` (zero is homogeneous of every degree).
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut degs = self.terms.keys().map(|m| m.degree());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, d: i64) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    /// Maximal word length among the terms.
    pub fn length(&self) -> usize {
        self.terms.keys().map(|m| m.len()).max().unwrap_or(0)
    }

    pub fn star(&self) -> NCPoly {
        self.star_with(Rewriter::standard())
    }

    /// Antilinear antihomomorphism: reverse words, star letters; `μ` and all
    /// scalars are self-adjoint. `(c w)* = w* c = c(μ/(1+deg(w*)μ)) w*`.
    pub fn star_with(&self, rw: &Rewriter) -> NCPoly {
        let mut out = NCPoly::zero();
        for (m, c) in &self.terms {
            let c_moved = c.subst_shift(-m.degree());
            out.add_scaled(&c_moved, &rw.word(&m.star_word()));
        }
        out
    }

    pub fn theta(&self) -> NCPoly {
        self.theta_with(Rewriter::standard())
    }

    /// The automorphism `μ ↦ -μ`, `a ↦ √(1-μ) a*`, `b ↦ √(1-μ) b*`,
    /// extended to `a*`, `b*` as a *-map.
    pub fn theta_with(&self, rw: &Rewriter) -> NCPoly {
        let images = theta_images(rw);
        let mut out = NCPoly::zero();
        for (m, c) in &self.terms {
            let mut img = NCPoly::one();
            for g in m.letters() {
                img = rw.mul(&img, &images[g.index()]);
            }
            out.add_scaled(&c.negate_mu(), &img);
        }
        out
    }

    /// Applies `f` to every coefficient, leaving words unchanged.
    pub fn map_coefficients(&self, f: impl Fn(&MuScalar) -> MuScalar) -> NCPoly {
        NCPoly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }
}

/// Images of `a*, b*, b, a` (in [`Generator`] index order) under `ϑ`.
pub fn theta_images(rw: &Rewriter) -> [NCPoly; 4] {
    let root = MuScalar::sqrt_linear(-1);
    let a_img = NCPoly::generator(Generator::AStar).scale_left(&root);
    let b_img = NCPoly::generator(Generator::BStar).scale_left(&root);
    let a_star_img = a_img.star_with(rw);
    let b_star_img = b_img.star_with(rw);
    [a_star_img, b_star_img, b_img, a_img]
}

impl Add<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&NCPoly> for NCPoly {
    fn add_assign(&mut self, rhs: &NCPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c);
        }
    }
}

impl Sub<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &(-c));
        }
        out
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        NCPoly::from_terms(self.terms.iter().map(|(m, c)| (*m, -c)))
    }
}

impl Mul<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        Rewriter::standard().mul(self, rhs)
    }
}

impl std::fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", crate::syntax::print_poly(self))
    }
}

impl std::fmt::Display for NCPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", crate::syntax::print_poly(self))
    }
}

/// Shorthands used throughout the crate and its tests.
pub fn a() -> NCPoly {
    NCPoly::generator(Generator::A)
}
pub fn b() -> NCPoly {
    NCPoly::generator(Generator::B)
}
pub fn a_star() -> NCPoly {
    NCPoly::generator(Generator::AStar)
}
pub fn b_star() -> NCPoly {
    NCPoly::generator(Generator::BStar)
}
pub fn mu() -> NCPoly {
    NCPoly::scalar(MuScalar::mu())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_words() {
        let m = Monomial::new(2, 1, 1, 0).unwrap();
        assert_eq!(
            m.letters(),
            vec![
                Generator::AStar,
                Generator::AStar,
                Generator::BStar,
                Generator::A
            ]
        );
        assert_eq!(m.degree(), -2);
        assert_eq!(Monomial::from_word(&m.letters()), Some(m));
        assert!(Monomial::new(0, 1, 0, 1).is_none());
        assert!(Monomial::from_word(&[Generator::A, Generator::B]).is_none());
    }

    #[test]
    fn degree_parts_split() {
        let x = &a() + &a_star();
        let parts = x.degree_parts();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&1], a());
        assert_eq!(parts[&-1], a_star());
        assert_eq!(mu().degree_parts()[&0], mu());
    }

    #[test]
    fn star_of_two_letter_word() {
        let z = &a() * &b_star();
        assert_eq!(z.star(), &b() * &a_star());
    }

    #[test]
    fn theta_on_generators() {
        let root = NCPoly::scalar(MuScalar::sqrt_linear(-1));
        assert_eq!(a().theta(), &root * &a_star());
        // ϑ(Z) = Z*
        let z = &a() * &b_star();
        assert_eq!(z.theta(), &b() * &a_star());
    }
}
