//! Seeded random elements for associativity and round-trip checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{Monomial, NCPoly};
use crate::mu::MuScalar;
use crate::scalar::{rat, ExactScalar};

fn exact<R: Rng>(rng: &mut R) -> ExactScalar {
    let q = rat(rng.gen_range(-9..=9), rng.gen_range(1..=4));
    let q = if q == rat(0, 1) { rat(1, 1) } else { q };
    match rng.gen_range(0..4) {
        0 => ExactScalar::sqrt_term(q, *[2, 3, 6].choose(rng).unwrap()),
        _ => ExactScalar::from_rational(q),
    }
}

fn nonzero_k<R: Rng>(rng: &mut R) -> i64 {
    let k = rng.gen_range(-4..=3);
    if k >= 0 {
        k + 1
    } else {
        k
    }
}

/// Product of a few ring atoms times an exact constant.
pub fn random_atom_product<R: Rng>(rng: &mut R) -> MuScalar {
    let mut c = MuScalar::from_exact(exact(rng));
    for _ in 0..rng.gen_range(0..=3) {
        let f = match rng.gen_range(0..4) {
            0 => MuScalar::mu_pow(rng.gen_range(-2..=2)),
            1 => MuScalar::linear_pow(nonzero_k(rng), rng.gen_range(-2..=2)),
            2 => MuScalar::sqrt_linear(nonzero_k(rng)),
            _ => MuScalar::linear(nonzero_k(rng)),
        };
        c = &c * &f;
    }
    c
}

pub fn random_scalar<R: Rng>(rng: &mut R) -> MuScalar {
    let mut c = random_atom_product(rng);
    for _ in 0..rng.gen_range(0..=1) {
        c = &c + &random_atom_product(rng);
    }
    if c.is_zero() {
        MuScalar::one()
    } else {
        c
    }
}

pub fn random_monomial<R: Rng>(rng: &mut R, max_exp: u32) -> Monomial {
    let p = rng.gen_range(0..=max_exp);
    let r = rng.gen_range(0..=max_exp);
    let (q, s) = if rng.gen_bool(0.5) {
        (rng.gen_range(0..=max_exp), 0)
    } else {
        (0, rng.gen_range(0..=max_exp))
    };
    Monomial::new(p, q, r, s).expect("q*s = 0 by construction")
}

pub fn random_poly<R: Rng>(rng: &mut R, max_terms: usize, max_exp: u32) -> NCPoly {
    let n = rng.gen_range(1..=max_terms);
    NCPoly::from_terms((0..n).map(|_| (random_monomial(rng, max_exp), random_scalar(rng))))
}
