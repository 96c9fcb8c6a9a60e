//! The commutative coefficient ring generated by the noncentral parameter `μ`.
//!
//! Elements are finite sums `Σ_S √S · R_S(μ)` where `S` is a set of nonzero
//! integers (a *signature*, standing for `Π_{k∈S} √(1+kμ)`) and `R_S` is a
//! reduced rational function `μ^e · N(μ) / Π (1+kμ)^{m_k}`. Signatures are
//! linearly independent over rational functions because the `1+kμ` are
//! pairwise coprime, so the representation is canonical and structural
//! equality is ring equality.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{Signed, ToPrimitive};
use thiserror::Error;

use crate::scalar::{int, ExactScalar, Rational};

/// Point where a coefficient cannot be evaluated numerically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SingularEvaluation {
    #[error("negative power of mu evaluated at mu = 0")]
    MuPole,
    #[error("factor (1{k:+}*mu) vanishes in a denominator")]
    Linear { k: i64 },
    #[error("negative radicand under sqrt(1{k:+}*mu)")]
    NegativeRadicand { k: i64 },
}

impl SingularEvaluation {
    /// The offending linear-factor index, `0` standing for `μ` itself.
    pub fn k(&self) -> i64 {
        match self {
            SingularEvaluation::MuPole => 0,
            SingularEvaluation::Linear { k } | SingularEvaluation::NegativeRadicand { k } => *k,
        }
    }
}

// ---------------------------------------------------------------------------
// Polynomials in μ, coefficients low to high, no trailing zeros.

pub(crate) type Poly = Vec<ExactScalar>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    let zero = ExactScalar::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero))
            .collect(),
    )
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ExactScalar::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += &(x * y);
            }
        }
    }
    trim(out)
}

fn poly_scale(a: &Poly, c: &ExactScalar) -> Poly {
    trim(a.iter().map(|x| x * c).collect())
}

/// `a · (1 + kμ)`.
fn poly_mul_linear(a: &Poly, k: i64) -> Poly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = a.clone();
    out.push(ExactScalar::zero());
    let kq = int(k);
    for i in (1..out.len()).rev() {
        let shifted = a[i - 1].scale(&kq);
        out[i] += &shifted;
    }
    trim(out)
}

fn poly_linear_pow(k: i64, e: u32) -> Poly {
    let mut p = vec![ExactScalar::one()];
    for _ in 0..e {
        p = poly_mul_linear(&p, k);
    }
    p
}

/// Exact quotient by `1 + kμ`, if it divides.
fn poly_div_linear(a: &Poly, k: i64) -> Option<Poly> {
    let n = a.len();
    if n < 2 {
        return None;
    }
    let kq = int(k);
    let mut b: Poly = Vec::with_capacity(n - 1);
    b.push(a[0].clone());
    for i in 1..n - 1 {
        let next = &a[i] - &b[i - 1].scale(&kq);
        b.push(next);
    }
    if a[n - 1] == b[n - 2].scale(&kq) {
        Some(trim(b))
    } else {
        None
    }
}

#[derive(Clone, Copy)]
struct Point {
    value: f64,
    exact: Option<(i64, i64)>,
}

impl Point {
    /// Sign of `1 + kμ`, or of `μ` itself for `k = 0`.
    fn sign(&self, k: i64) -> i32 {
        let v = match (self.exact, k) {
            (Some((p, _)), 0) => p as i128,
            (Some((p, q)), k) => q as i128 + k as i128 * p as i128,
            (None, 0) => return if self.value == 0.0 { 0 } else { 1 },
            (None, k) => {
                let f = 1.0 + k as f64 * self.value;
                return if f == 0.0 {
                    0
                } else if f < 0.0 {
                    -1
                } else {
                    1
                };
            }
        };
        v.signum() as i32
    }
}

fn poly_eval(a: &Poly, x: f64) -> f64 {
    a.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64())
}

// ---------------------------------------------------------------------------

/// `Π_{k∈S} √(1+kμ)`, stored as a sorted list of distinct nonzero `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Signature(Vec<i64>);

impl Signature {
    pub fn empty() -> Self {
        Signature(Vec::new())
    }

    pub fn new(mut ks: Vec<i64>) -> Option<Self> {
        ks.sort_unstable();
        let n = ks.len();
        ks.dedup();
        if ks.len() != n || ks.contains(&0) {
            return None;
        }
        Some(Signature(ks))
    }

    pub fn indices(&self) -> &[i64] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Product of two signatures: symmetric difference plus the squared
    /// factors that contract into `(1+kμ)`.
    fn product(&self, other: &Signature) -> (Signature, Vec<i64>) {
        let a: BTreeSet<i64> = self.0.iter().copied().collect();
        let b: BTreeSet<i64> = other.0.iter().copied().collect();
        let sig = a.symmetric_difference(&b).copied().collect();
        let squared = a.intersection(&b).copied().collect();
        (Signature(sig), squared)
    }
}

/// Reduced rational function `μ^mu_power · num(μ) / Π (1+kμ)^den[k]`.
///
/// Invariants: `num` is nonempty with `num[0] != 0`; `num` is not divisible by
/// any `1+kμ` with `den[k] > 0`; all exponents in `den` are positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFn {
    num: Poly,
    mu_power: i32,
    den: BTreeMap<i64, u32>,
}

impl RatFn {
    /// Canonicalises, returning `None` for zero.
    fn reduce(num: Poly, mut mu_power: i32, mut den: BTreeMap<i64, u32>) -> Option<RatFn> {
        let mut num = trim(num);
        if num.is_empty() {
            return None;
        }
        let lead_zeros = num.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            num.drain(..lead_zeros);
            mu_power += lead_zeros as i32;
        }
        for (k, e) in den.iter_mut() {
            while *e > 0 {
                match poly_div_linear(&num, *k) {
                    Some(q) => {
                        num = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        den.retain(|_, e| *e > 0);
        Some(RatFn { num, mu_power, den })
    }

    pub fn from_parts(num: Poly, mu_power: i32, den: BTreeMap<i64, u32>) -> Option<RatFn> {
        if den.contains_key(&0) {
            return None;
        }
        RatFn::reduce(num, mu_power, den)
    }

    pub fn numerator(&self) -> &[ExactScalar] {
        &self.num
    }

    pub fn mu_power(&self) -> i32 {
        self.mu_power
    }

    pub fn denominator(&self) -> &BTreeMap<i64, u32> {
        &self.den
    }

    fn one() -> RatFn {
        RatFn {
            num: vec![ExactScalar::one()],
            mu_power: 0,
            den: BTreeMap::new(),
        }
    }

    fn mul(&self, other: &RatFn) -> Option<RatFn> {
        let mut den = self.den.clone();
        for (k, e) in &other.den {
            *den.entry(*k).or_insert(0) += e;
        }
        RatFn::reduce(
            poly_mul(&self.num, &other.num),
            self.mu_power + other.mu_power,
            den,
        )
    }

    /// Multiplies by `(1+kμ)^e`, `e` of either sign.
    fn mul_linear_pow(&self, k: i64, e: i32) -> Option<RatFn> {
        if e == 0 || k == 0 {
            return Some(self.clone());
        }
        let mut den = self.den.clone();
        let mut num = self.num.clone();
        if e > 0 {
            let have = den.get(&k).copied().unwrap_or(0);
            let cancel = have.min(e as u32);
            if cancel > 0 {
                *den.get_mut(&k).unwrap() -= cancel;
            }
            num = poly_mul(&num, &poly_linear_pow(k, e as u32 - cancel));
        } else {
            *den.entry(k).or_insert(0) += (-e) as u32;
        }
        RatFn::reduce(num, self.mu_power, den)
    }

    fn add(&self, other: &RatFn) -> Option<RatFn> {
        let mu_power = self.mu_power.min(other.mu_power);
        let mut den = self.den.clone();
        for (k, e) in &other.den {
            let slot = den.entry(*k).or_insert(0);
            *slot = (*slot).max(*e);
        }
        let lift = |r: &RatFn| -> Poly {
            let mut p = r.num.clone();
            for (k, e) in &den {
                let missing = e - r.den.get(k).copied().unwrap_or(0);
                if missing > 0 {
                    p = poly_mul(&p, &poly_linear_pow(*k, missing));
                }
            }
            let shift = (r.mu_power - mu_power) as usize;
            if shift > 0 {
                let mut shifted = vec![ExactScalar::zero(); shift];
                shifted.extend(p);
                p = shifted;
            }
            p
        };
        RatFn::reduce(poly_add(&lift(self), &lift(other)), mu_power, den)
    }

    fn neg(&self) -> RatFn {
        RatFn {
            num: self.num.iter().map(|c| -c).collect(),
            mu_power: self.mu_power,
            den: self.den.clone(),
        }
    }

    fn scale(&self, c: &ExactScalar) -> Option<RatFn> {
        RatFn::reduce(poly_scale(&self.num, c), self.mu_power, self.den.clone())
    }

    /// Image under `μ ↦ μ/(1+cμ)`, times `(1+cμ)^extra`.
    fn shift(&self, c: i64, extra: i32) -> Option<RatFn> {
        let d = self.num.len() as i32 - 1;
        // Σ n_i μ^i (1+cμ)^{d-i}
        let mut m: Poly = Vec::new();
        for (i, n) in self.num.iter().enumerate() {
            let mut term = vec![ExactScalar::zero(); i];
            term.push(n.clone());
            term = poly_mul(&term, &poly_linear_pow(c, (d - i as i32) as u32));
            m = poly_add(&m, &term);
        }
        let mut den = BTreeMap::new();
        let mut total = 0i32;
        for (k, e) in &self.den {
            total += *e as i32;
            if k + c != 0 {
                den.insert(k + c, *e);
            }
        }
        let t = total - d - self.mu_power + extra;
        let base = RatFn::reduce(m, self.mu_power, den)?;
        base.mul_linear_pow(c, t)
    }

    fn negate_mu(&self) -> RatFn {
        let num = self
            .num
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect::<Poly>();
        let num = if self.mu_power.rem_euclid(2) == 1 {
            num.iter().map(|c| -c).collect()
        } else {
            num
        };
        RatFn {
            num,
            mu_power: self.mu_power,
            den: self.den.iter().map(|(k, e)| (-k, *e)).collect(),
        }
    }

    fn eval(&self, x: Point) -> Result<f64, SingularEvaluation> {
        if self.mu_power < 0 && x.sign(0) == 0 {
            return Err(SingularEvaluation::MuPole);
        }
        let mut v = poly_eval(&self.num, x.value) * x.value.powi(self.mu_power);
        for (k, e) in &self.den {
            let f = 1.0 + *k as f64 * x.value;
            if x.sign(*k) == 0 {
                return Err(SingularEvaluation::Linear { k: *k });
            }
            v /= f.powi(*e as i32);
        }
        Ok(v)
    }
}

// ---------------------------------------------------------------------------

/// A `ℂ`-basis element of the coefficient ring, used to canonicalise tensors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MuAtom {
    pub signature: Signature,
    pub kind: AtomKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AtomKind {
    /// `μ^j`, any integer `j`.
    MuPower(i32),
    /// `(1+kμ)^{-order}`, `order ≥ 1`.
    Pole { k: i64, order: u32 },
}

impl MuAtom {
    pub fn to_scalar(&self) -> MuScalar {
        let body = match self.kind {
            AtomKind::MuPower(j) => MuScalar::mu_pow(j),
            AtomKind::Pole { k, order } => MuScalar::linear_pow(k, -(order as i32)),
        };
        let mut out = body;
        for k in self.signature.indices() {
            out = &out * &MuScalar::sqrt_linear(*k);
        }
        out
    }
}

/// Exact element of the coefficient ring; see the module docs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MuScalar {
    terms: BTreeMap<Signature, RatFn>,
}

impl MuScalar {
    pub fn zero() -> Self {
        MuScalar {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_exact(ExactScalar::one())
    }

    pub fn from_exact(c: ExactScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(
                Signature::empty(),
                RatFn {
                    num: vec![c],
                    mu_power: 0,
                    den: BTreeMap::new(),
                },
            );
        }
        MuScalar { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_exact(ExactScalar::from_int(n))
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::from_exact(ExactScalar::from_rational(q))
    }

    pub fn mu() -> Self {
        Self::mu_pow(1)
    }

    pub fn mu_pow(e: i32) -> Self {
        let mut r = RatFn::one();
        r.mu_power = e;
        Self::single(Signature::empty(), Some(r))
    }

    /// `1 + kμ`.
    pub fn linear(k: i64) -> Self {
        Self::linear_pow(k, 1)
    }

    /// `(1 + kμ)^e`.
    pub fn linear_pow(k: i64, e: i32) -> Self {
        Self::single(Signature::empty(), RatFn::one().mul_linear_pow(k, e))
    }

    /// `(1 + kμ)^{-1}`.
    pub fn inv_linear(k: i64) -> Self {
        Self::linear_pow(k, -1)
    }

    /// `√(1 + kμ)`.
    pub fn sqrt_linear(k: i64) -> Self {
        if k == 0 {
            return Self::one();
        }
        Self::single(Signature(vec![k]), Some(RatFn::one()))
    }

    fn single(sig: Signature, r: Option<RatFn>) -> Self {
        let mut terms = BTreeMap::new();
        if let Some(r) = r {
            terms.insert(sig, r);
        }
        MuScalar { terms }
    }

    pub fn from_parts(parts: Vec<(Signature, RatFn)>) -> Self {
        let mut out = MuScalar::zero();
        for (s, r) in parts {
            out += &MuScalar::single(s, Some(r));
        }
        out
    }

    pub fn parts(&self) -> impl Iterator<Item = (&Signature, &RatFn)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_exact().is_some_and(|c| c.is_one())
    }

    /// The value when the element does not depend on `μ`.
    pub fn as_exact(&self) -> Option<ExactScalar> {
        if self.terms.is_empty() {
            return Some(ExactScalar::zero());
        }
        if self.terms.len() != 1 {
            return None;
        }
        let (sig, r) = self.terms.iter().next().unwrap();
        if sig.is_empty() && r.mu_power == 0 && r.den.is_empty() && r.num.len() == 1 {
            Some(r.num[0].clone())
        } else {
            None
        }
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        let mut terms = BTreeMap::new();
        for (s, r) in &self.terms {
            if let Some(r) = r.scale(c) {
                terms.insert(s.clone(), r);
            }
        }
        MuScalar { terms }
    }

    /// Ring homomorphism `μ ↦ μ/(1+cμ)`; `c = deg(w)` moves a coefficient
    /// leftwards through a word `w`, i.e. `w f(μ) = f(μ/(1+cμ)) w`.
    pub fn subst_shift(&self, c: i64) -> Self {
        if c == 0 {
            return self.clone();
        }
        let mut out = MuScalar::zero();
        for (sig, r) in &self.terms {
            let n = sig.0.len() as i32;
            let extra = n / 2 - n;
            let mut ks: Vec<i64> = sig.0.iter().map(|k| k + c).filter(|k| *k != 0).collect();
            if n % 2 == 1 {
                ks.push(c);
            }
            let new_sig = Signature::new(ks).expect("shifted signature stays distinct");
            out += &MuScalar::single(new_sig, r.shift(c, extra));
        }
        out
    }

    /// `μ ↦ μ/(1+μ)`: coefficient moved left through `a` or `b`.
    pub fn subst_plus(&self) -> Self {
        self.subst_shift(1)
    }

    /// `μ ↦ μ/(1-μ)`: coefficient moved left through `a*` or `b*`.
    pub fn subst_minus(&self) -> Self {
        self.subst_shift(-1)
    }

    /// Ring homomorphism `μ ↦ -μ`.
    pub fn negate_mu(&self) -> Self {
        let mut out = MuScalar::zero();
        for (sig, r) in &self.terms {
            let flipped = Signature::new(sig.0.iter().map(|k| -k).collect()).unwrap();
            out += &MuScalar::single(flipped, Some(r.negate_mu()));
        }
        out
    }

    pub fn eval(&self, mu0: f64) -> Result<f64, SingularEvaluation> {
        self.eval_point(Point {
            value: mu0,
            exact: None,
        })
    }

    /// Evaluation at `μ = p/q`; vanishing and sign of every `1+kμ` are
    /// decided exactly.
    pub fn eval_ratio(&self, p: i64, q: i64) -> Result<f64, SingularEvaluation> {
        assert!(q > 0, "denominator must be positive");
        self.eval_point(Point {
            value: p as f64 / q as f64,
            exact: Some((p, q)),
        })
    }

    fn eval_point(&self, x: Point) -> Result<f64, SingularEvaluation> {
        let mut total = 0.0;
        for (sig, r) in &self.terms {
            let mut v = r.eval(x)?;
            for k in &sig.0 {
                let f = 1.0 + *k as f64 * x.value;
                if x.sign(*k) < 0 {
                    return Err(SingularEvaluation::NegativeRadicand { k: *k });
                }
                v *= f.max(0.0).sqrt();
            }
            total += v;
        }
        Ok(total)
    }

    /// Indices `k` of all `(1+kμ)^{-1}` factors occurring in denominators.
    pub fn pole_indices(&self) -> BTreeSet<i64> {
        self.terms
            .values()
            .flat_map(|r| r.den.keys().copied())
            .collect()
    }

    pub fn has_mu_pole(&self) -> bool {
        self.terms.values().any(|r| r.mu_power < 0)
    }

    /// Multiplicative inverse when the element is a unit of the ring, i.e. a
    /// single-signature term whose numerator is `c · Π (1+kμ)` with `c` a
    /// single-root scalar.
    pub fn inverse_unit(&self) -> Option<MuScalar> {
        if self.terms.len() != 1 {
            return None;
        }
        let (sig, r) = self.terms.iter().next().unwrap();
        let c_inv = r.num[0].inverse()?;
        let mut p: Poly = poly_scale(&r.num, &c_inv);
        let mut found: Vec<i64> = Vec::new();
        while p.len() > 1 {
            let lead = p.last().unwrap().as_rational()?;
            if !lead.is_integer() {
                return None;
            }
            let lead = lead.to_integer().abs().to_i64()?;
            let mut divided = false;
            for d in divisors(lead) {
                for k in [d, -d] {
                    if let Some(q) = poly_div_linear(&p, k) {
                        p = q;
                        found.push(k);
                        divided = true;
                        break;
                    }
                }
                if divided {
                    break;
                }
            }
            if !divided {
                return None;
            }
        }
        // p is now the constant 1
        let mut inv = MuScalar::from_exact(c_inv).mul(&MuScalar::mu_pow(-r.mu_power));
        for k in found {
            inv = &inv * &MuScalar::inv_linear(k);
        }
        for (k, e) in &r.den {
            inv = &inv * &MuScalar::linear_pow(*k, *e as i32);
        }
        for k in &sig.0 {
            inv = &inv * &MuScalar::sqrt_linear(*k);
            inv = &inv * &MuScalar::inv_linear(*k);
        }
        Some(inv)
    }

    /// Unique expansion over the `ℂ`-basis `√S · μ^j`, `√S · (1+kμ)^{-j}`
    /// (partial fractions per signature).
    pub fn atoms(&self) -> Vec<(MuAtom, ExactScalar)> {
        let mut out = Vec::new();
        for (sig, r) in &self.terms {
            for (kind, c) in partial_fractions(r) {
                out.push((
                    MuAtom {
                        signature: sig.clone(),
                        kind,
                    },
                    c,
                ));
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    fn mul(&self, other: &MuScalar) -> MuScalar {
        if self.is_zero() || other.is_zero() {
            return MuScalar::zero();
        }
        let mut out = MuScalar::zero();
        for (s1, r1) in &self.terms {
            for (s2, r2) in &other.terms {
                let (sig, squared) = s1.product(s2);
                let mut r = r1.mul(r2);
                for k in squared {
                    r = r.and_then(|r| r.mul_linear_pow(k, 1));
                }
                out += &MuScalar::single(sig, r);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> MuScalar {
        let mut out = MuScalar::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }
}

fn divisors(n: i64) -> Vec<i64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Truncated power series helpers with exact coefficients.
fn series_mul(a: &[ExactScalar], b: &[ExactScalar], order: usize) -> Vec<ExactScalar> {
    let mut out = vec![ExactScalar::zero(); order];
    for (i, x) in a.iter().enumerate().take(order) {
        for (j, y) in b.iter().enumerate() {
            if i + j >= order {
                break;
            }
            out[i + j] += &(x * y);
        }
    }
    out
}

/// Inverse of a series with rational nonzero constant term.
fn series_inv(a: &[ExactScalar], order: usize) -> Vec<ExactScalar> {
    let c0 = a[0].inverse().expect("unit constant term");
    let mut out: Vec<ExactScalar> = vec![c0.clone()];
    for n in 1..order {
        let mut acc = ExactScalar::zero();
        for i in 1..=n {
            if let Some(ai) = a.get(i) {
                acc += &(ai * &out[n - i]);
            }
        }
        out.push(-&(&acc * &c0));
    }
    out
}

/// Expands a polynomial `N(μ)` in `t = 1 + kμ`, i.e. substitutes `μ = (t-1)/k`.
fn poly_in_t(p: &Poly, k: i64) -> Poly {
    let inv_k = crate::scalar::rat(1, k);
    let lin: Poly = vec![
        ExactScalar::from_rational(-inv_k.clone()),
        ExactScalar::from_rational(inv_k),
    ];
    let mut out: Poly = Vec::new();
    for c in p.iter().rev() {
        out = poly_add(&poly_mul(&out, &lin), &vec![c.clone()]);
    }
    out
}

fn partial_fractions(r: &RatFn) -> Vec<(AtomKind, ExactScalar)> {
    let mut out = Vec::new();
    let mut principal = MuScalar::zero();
    for (&k, &m) in &r.den {
        let order = m as usize;
        // g(μ) = μ^e N(μ) / Π_{k'≠k} (1+k'μ)^{m'}, expanded in t = 1 + kμ.
        let mut g = poly_in_t(&r.num, k);
        g.resize(order.max(g.len()), ExactScalar::zero());
        let mu_t = poly_in_t(&vec![ExactScalar::zero(), ExactScalar::one()], k);
        let mu_series = if r.mu_power >= 0 {
            let mut s = vec![ExactScalar::one()];
            for _ in 0..r.mu_power {
                s = series_mul(&s, &mu_t, order);
            }
            s
        } else {
            let inv = series_inv(&mu_t, order);
            let mut s = vec![ExactScalar::one()];
            for _ in 0..(-r.mu_power) {
                s = series_mul(&s, &inv, order);
            }
            s
        };
        g = series_mul(&g, &mu_series, order);
        for (&k2, &m2) in &r.den {
            if k2 == k {
                continue;
            }
            let factor = poly_in_t(&poly_linear_pow(k2, m2), k);
            g = series_mul(&g, &series_inv(&factor, order), order);
        }
        g.resize(order, ExactScalar::zero());
        for j in 1..=m {
            let c = &g[(m - j) as usize];
            if !c.is_zero() {
                out.push((AtomKind::Pole { k, order: j }, c.clone()));
                principal += &MuScalar::linear_pow(k, -(j as i32)).scale(c);
            }
        }
    }
    let whole = MuScalar::single(Signature::empty(), Some(r.clone()));
    let rest = &whole - &principal;
    if let Some((_, lp)) = rest.terms.iter().next() {
        assert!(
            lp.den.is_empty(),
            "partial fraction remainder must be a Laurent polynomial"
        );
        for (i, c) in lp.num.iter().enumerate() {
            if !c.is_zero() {
                out.push((AtomKind::MuPower(lp.mu_power + i as i32), c.clone()));
            }
        }
    }
    out
}

impl Add<&MuScalar> for &MuScalar {
    type Output = MuScalar;
    fn add(self, rhs: &MuScalar) -> MuScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&MuScalar> for MuScalar {
    fn add_assign(&mut self, rhs: &MuScalar) {
        for (s, r) in &rhs.terms {
            match self.terms.get(s) {
                Some(existing) => match existing.add(r) {
                    Some(sum) => {
                        self.terms.insert(s.clone(), sum);
                    }
                    None => {
                        self.terms.remove(s);
                    }
                },
                None => {
                    self.terms.insert(s.clone(), r.clone());
                }
            }
        }
    }
}

impl Sub<&MuScalar> for &MuScalar {
    type Output = MuScalar;
    fn sub(self, rhs: &MuScalar) -> MuScalar {
        self + &(-rhs)
    }
}

impl Neg for &MuScalar {
    type Output = MuScalar;
    fn neg(self) -> MuScalar {
        MuScalar {
            terms: self
                .terms
                .iter()
                .map(|(s, r)| (s.clone(), r.neg()))
                .collect(),
        }
    }
}

impl Mul<&MuScalar> for &MuScalar {
    type Output = MuScalar;
    fn mul(self, rhs: &MuScalar) -> MuScalar {
        MuScalar::mul(self, rhs)
    }
}

impl From<i64> for MuScalar {
    fn from(n: i64) -> Self {
        MuScalar::from_int(n)
    }
}

impl From<ExactScalar> for MuScalar {
    fn from(c: ExactScalar) -> Self {
        MuScalar::from_exact(c)
    }
}

impl std::fmt::Debug for MuScalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", crate::syntax::print_scalar(self))
    }
}

impl std::fmt::Display for MuScalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", crate::syntax::print_scalar(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn mu() -> MuScalar {
        MuScalar::mu()
    }

    #[test]
    fn common_denominator_collapses() {
        // (1+μ)^{-1} + μ(1+μ)^{-1} = 1
        let inv = MuScalar::inv_linear(1);
        let s = &inv + &(&mu() * &inv);
        assert_eq!(s, MuScalar::one());
    }

    #[test]
    fn additive_inverse_and_halves() {
        let s = &MuScalar::sqrt_linear(3) + &MuScalar::inv_linear(-2);
        assert!((&s + &(-&s)).is_zero());
        let half = MuScalar::from_rational(rat(1, 2));
        let h = &half * &MuScalar::linear(1);
        assert_eq!(&h + &h, MuScalar::linear(1));
    }

    #[test]
    fn products_contract() {
        assert_eq!(
            &MuScalar::sqrt_linear(1) * &MuScalar::sqrt_linear(1),
            MuScalar::linear(1)
        );
        assert_eq!(&mu() * &MuScalar::mu_pow(-1), MuScalar::one());
        assert_eq!(
            &MuScalar::inv_linear(2) * &MuScalar::linear(2),
            MuScalar::one()
        );
    }

    #[test]
    fn substitutions() {
        assert_eq!(mu().subst_plus(), &mu() * &MuScalar::inv_linear(1));
        for k in [-3, -1, 1, 2, 5] {
            let expect = &MuScalar::linear(k + 1) * &MuScalar::inv_linear(1);
            assert_eq!(MuScalar::linear(k).subst_plus(), expect);
        }
        assert_eq!(mu().subst_plus().subst_minus(), mu());
        // a √(1+kμ) = √(1+(k+1)μ)/√(1+μ) a
        for k in [-2, 1, 3] {
            let expect = &MuScalar::sqrt_linear(k + 1)
                * &(&MuScalar::sqrt_linear(1) * &MuScalar::inv_linear(1));
            assert_eq!(MuScalar::sqrt_linear(k).subst_plus(), expect);
        }
    }

    #[test]
    fn negation() {
        assert_eq!(MuScalar::linear(4).negate_mu(), MuScalar::linear(-4));
        assert_eq!(mu().pow(2).negate_mu(), mu().pow(2));
        assert_eq!(
            MuScalar::sqrt_linear(-1).negate_mu(),
            MuScalar::sqrt_linear(1)
        );
    }

    #[test]
    fn evaluation() {
        let s = &mu() * &MuScalar::inv_linear(1);
        assert!((s.eval(1.0).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(
            MuScalar::inv_linear(1).eval(-1.0),
            Err(SingularEvaluation::Linear { k: 1 })
        );
        assert_eq!(MuScalar::sqrt_linear(3).eval(0.0).unwrap(), 1.0);
        assert_eq!(
            MuScalar::mu_pow(-1).eval(0.0),
            Err(SingularEvaluation::MuPole)
        );
        assert_eq!(
            MuScalar::sqrt_linear(1).eval(-2.0),
            Err(SingularEvaluation::NegativeRadicand { k: 1 })
        );
    }

    #[test]
    fn unit_inverse() {
        let u = &MuScalar::linear(-1) * &(&MuScalar::inv_linear(3) * &MuScalar::from_int(-2));
        let inv = u.inverse_unit().unwrap();
        assert_eq!(&u * &inv, MuScalar::one());
        let w = &MuScalar::linear(1) * &MuScalar::linear(2);
        assert_eq!(&w * &w.inverse_unit().unwrap(), MuScalar::one());
        let s = &MuScalar::sqrt_linear(2) * &mu();
        assert_eq!(&s * &s.inverse_unit().unwrap(), MuScalar::one());
        // 1 + μ + μ² has no rational roots
        let q = &(&MuScalar::one() + &mu()) + &mu().pow(2);
        assert!(q.inverse_unit().is_none());
    }

    #[test]
    fn atoms_rebuild_value() {
        let s = &(&(&mu().pow(3) * &MuScalar::inv_linear(2)) * &MuScalar::linear_pow(-1, -2))
            + &(&MuScalar::mu_pow(-2) * &MuScalar::sqrt_linear(5));
        let atoms = s.atoms();
        let mut rebuilt = MuScalar::zero();
        for (atom, c) in &atoms {
            rebuilt += &atom.to_scalar().scale(c);
        }
        assert_eq!(rebuilt, s);
        assert!(atoms
            .iter()
            .any(|(a, _)| matches!(a.kind, AtomKind::Pole { k: -1, order: 2 })));
    }
}
