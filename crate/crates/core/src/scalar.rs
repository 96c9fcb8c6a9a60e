//! Exact real scalars of the form `Σ q_d · √d` with rational `q_d` and squarefree `d`.
//!
//! The square-root part is needed for the Hermitian normalisation of the
//! strong connection, where entries carry `√(binomial)` factors.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Splits `n > 0` into `(s, d)` with `n = s² d` and `d` squarefree.
pub fn squarefree_split(n: u64) -> (u64, u64) {
    assert!(n > 0);
    let mut square = 1u64;
    let mut rest = n;
    let mut f = 2u64;
    while f * f <= rest {
        while rest.is_multiple_of(f * f) {
            rest /= f * f;
            square *= f;
        }
        f += 1;
    }
    (square, rest)
}

pub fn is_squarefree(n: u64) -> bool {
    n > 0 && squarefree_split(n).0 == 1
}

/// Exact element of `ℚ(√2, √3, √5, ...)` restricted to the additive span of
/// square roots of squarefree integers.
///
/// Invariant: `terms` is sorted by radicand, every radicand is squarefree and
/// every coefficient is nonzero. Zero is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExactScalar {
    terms: Vec<(u64, Rational)>,
}

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    pub fn from_rational(q: Rational) -> Self {
        if q.is_zero() {
            Self::zero()
        } else {
            ExactScalar {
                terms: vec![(1, q)],
            }
        }
    }

    /// `q · √d` for any positive `d`; non-squarefree radicands are simplified.
    pub fn sqrt_term(q: Rational, d: u64) -> Self {
        let (s, sf) = squarefree_split(d);
        let q = q * int(s as i64);
        if q.is_zero() {
            Self::zero()
        } else {
            ExactScalar {
                terms: vec![(sf, q)],
            }
        }
    }

    /// `√n` for a nonnegative integer.
    pub fn sqrt_int(n: u64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            Self::sqrt_term(Rational::one(), n)
        }
    }

    /// Builds a scalar from raw `(radicand, coefficient)` pairs, validating the
    /// canonical-form invariants.
    pub fn from_terms(raw: Vec<(u64, Rational)>) -> Option<Self> {
        let mut out = Self::zero();
        for (d, q) in raw {
            if !is_squarefree(d) || q.is_zero() {
                return None;
            }
            out += &Self::sqrt_term(q, d);
        }
        Some(out)
    }

    pub fn terms(&self) -> &[(u64, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 1 && self.terms[0].1.is_one()
    }

    /// The rational value when there is no irrational part.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(1, q)] => Some(q.clone()),
            _ => None,
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        ExactScalar {
            terms: self.terms.iter().map(|(d, c)| (*d, c * q)).collect(),
        }
    }

    /// Inverse of a single-term scalar `q√d`, which is `√d / (q d)`.
    pub fn inverse(&self) -> Option<Self> {
        match self.terms.as_slice() {
            [(d, q)] => {
                let denom = q * int(*d as i64);
                Some(ExactScalar {
                    terms: vec![(*d, denom.recip())],
                })
            }
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(d, q)| q.to_f64().unwrap_or(f64::NAN) * (*d as f64).sqrt())
            .sum()
    }

    /// Sign of the leading (smallest radicand) coefficient; used only for printing.
    pub fn leading_is_negative(&self) -> bool {
        self.terms.first().is_some_and(|(_, q)| q.is_negative())
    }

    fn merge(a: &[(u64, Rational)], b: &[(u64, Rational)], negate_b: bool) -> Vec<(u64, Rational)> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
            let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
            if take_a {
                out.push(a[i].clone());
                i += 1;
            } else if take_b {
                let q = if negate_b {
                    -b[j].1.clone()
                } else {
                    b[j].1.clone()
                };
                out.push((b[j].0, q));
                j += 1;
            } else {
                let q = if negate_b {
                    &a[i].1 - &b[j].1
                } else {
                    &a[i].1 + &b[j].1
                };
                if !q.is_zero() {
                    out.push((a[i].0, q));
                }
                i += 1;
                j += 1;
            }
        }
        out
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        ExactScalar::from_int(n)
    }
}

impl From<Rational> for ExactScalar {
    fn from(q: Rational) -> Self {
        ExactScalar::from_rational(q)
    }
}

impl Add<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar {
            terms: ExactScalar::merge(&self.terms, &rhs.terms, false),
        }
    }
}

impl Sub<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar {
            terms: ExactScalar::merge(&self.terms, &rhs.terms, true),
        }
    }
}

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        if rhs.is_zero() {
            return;
        }
        self.terms = ExactScalar::merge(&self.terms, &rhs.terms, false);
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            terms: self.terms.iter().map(|(d, q)| (*d, -q.clone())).collect(),
        }
    }
}

impl Mul<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        if self.is_zero() || rhs.is_zero() {
            return ExactScalar::zero();
        }
        if let [(1, q)] = self.terms.as_slice() {
            return rhs.scale(q);
        }
        if let [(1, q)] = rhs.terms.as_slice() {
            return self.scale(q);
        }
        let mut out = ExactScalar::zero();
        for (d1, q1) in &self.terms {
            for (d2, q2) in &rhs.terms {
                // √d1·√d2 = g·√(d1 d2 / g²)
                let g = d1.gcd(d2);
                let radicand = (d1 / g) * (d2 / g);
                let coeff = q1 * q2 * int(g as i64);
                out += &ExactScalar {
                    terms: vec![(radicand, coeff)],
                };
            }
        }
        out
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (d, q)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *d == 1 {
                write!(f, "{q}")?;
            } else {
                write!(f, "{q}*rt({d})")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_split(12), (2, 3));
        assert_eq!(squarefree_split(36), (6, 1));
        assert_eq!(squarefree_split(7), (1, 7));
        assert!(is_squarefree(30));
        assert!(!is_squarefree(18));
    }

    #[test]
    fn root_products_contract() {
        let r2 = ExactScalar::sqrt_int(2);
        let r6 = ExactScalar::sqrt_int(6);
        assert_eq!(&r2 * &r2, ExactScalar::from_int(2));
        // √2·√6 = 2√3
        assert_eq!(&r2 * &r6, ExactScalar::sqrt_term(int(2), 3));
        assert_eq!(ExactScalar::sqrt_int(24), ExactScalar::sqrt_term(int(2), 6));
    }

    #[test]
    fn additive_inverse_is_empty() {
        let x = &ExactScalar::sqrt_int(3) + &ExactScalar::from_int(5);
        assert!((&x - &x).is_zero());
        assert_eq!(&x + &(-&x), ExactScalar::zero());
    }

    #[test]
    fn single_term_inverse() {
        let x = ExactScalar::sqrt_term(rat(3, 2), 5);
        let inv = x.inverse().unwrap();
        assert!((&x * &inv).is_one());
        let y = &ExactScalar::one() + &ExactScalar::sqrt_int(2);
        assert!(y.inverse().is_none());
    }

    #[test]
    fn numeric_value() {
        let x = &ExactScalar::sqrt_term(rat(1, 2), 2) + &ExactScalar::from_int(1);
        assert!((x.to_f64() - (1.0 + 0.5 * 2f64.sqrt())).abs() < 1e-15);
    }
}
