use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qsphere::algebra::{expand_sphere_gens, to_sphere_generators, SphereForm};
use qsphere::hopf::{coact_right, HLaurent, TensorPH};
use qsphere::projectors::{scalar_from_doc, scalar_to_doc};
use qsphere::sample::{random_monomial, random_poly, random_scalar};
use qsphere::syntax::{parse_poly, parse_scalar, print_poly, print_scalar};
use qsphere::{ExactScalar, MuScalar, NCPoly};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_sphere_form(r: &mut ChaCha8Rng) -> SphereForm {
    let n = r.gen_range(1..=3);
    SphereForm::from_terms((0..n).map(|_| {
        let i = r.gen_range(0..=2);
        let e = r.gen_range(0..=2);
        let key = if r.gen_bool(0.5) {
            (i, e, 0)
        } else {
            (i, 0, e)
        };
        (key, random_scalar(r))
    }))
}

fn random_laurent(r: &mut ChaCha8Rng) -> HLaurent {
    let n = r.gen_range(1..=3);
    HLaurent::from_terms((0..n).map(|_| {
        (
            r.gen_range(-3..=3),
            ExactScalar::from_int(r.gen_range(-5..=5)),
        )
    }))
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn coefficient_ring_axioms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (x, y, z) = (random_scalar(&mut r), random_scalar(&mut r), random_scalar(&mut r));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        prop_assert_eq!(&x * &MuScalar::one(), x.clone());
        prop_assert!((&x - &x).is_zero());
    }

    #[test]
    fn substitutions_are_homomorphisms(seed in any::<u64>(), c in -3i64..=3) {
        let mut r = rng(seed);
        let (x, y) = (random_scalar(&mut r), random_scalar(&mut r));
        prop_assert_eq!((&x * &y).subst_shift(c), &x.subst_shift(c) * &y.subst_shift(c));
        prop_assert_eq!((&x + &y).subst_shift(c), &x.subst_shift(c) + &y.subst_shift(c));
        prop_assert_eq!(x.subst_shift(c).subst_shift(-c), x.clone());
        prop_assert_eq!((&x * &y).negate_mu(), &x.negate_mu() * &y.negate_mu());
        prop_assert_eq!(x.negate_mu().negate_mu(), x.clone());
    }

    #[test]
    fn evaluation_is_multiplicative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (x, y) = (random_scalar(&mut r), random_scalar(&mut r));
        let (ex, ey) = (x.eval(0.1).unwrap(), y.eval(0.1).unwrap());
        prop_assert!(close((&x * &y).eval(0.1).unwrap(), ex * ey));
        prop_assert!(close((&x + &y).eval(0.1).unwrap(), ex + ey));
    }

    #[test]
    fn scalar_print_parse(seed in any::<u64>()) {
        let x = random_scalar(&mut rng(seed));
        let text = print_scalar(&x);
        let back = parse_scalar(&text).unwrap();
        prop_assert_eq!(&back, &x);
        prop_assert_eq!(print_scalar(&back), text);
        prop_assert_eq!(scalar_from_doc(&scalar_to_doc(&x)).unwrap(), x);
    }

    #[test]
    fn star_and_theta(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (x, y) = (random_poly(&mut r, 3, 2), random_poly(&mut r, 3, 2));
        prop_assert_eq!((&x * &y).star(), &y.star() * &x.star());
        prop_assert_eq!(x.star().star(), x.clone());
        prop_assert_eq!((&x + &y).star(), &x.star() + &y.star());
        prop_assert_eq!((&x * &y).theta(), &x.theta() * &y.theta());
        prop_assert_eq!(x.theta().theta(), x.clone());
    }

    #[test]
    fn sphere_round_trip(seed in any::<u64>()) {
        let sf = random_sphere_form(&mut rng(seed));
        let x = expand_sphere_gens(&sf);
        prop_assert!(x.is_homogeneous_of(0) || x.is_zero());
        prop_assert_eq!(to_sphere_generators(&x).unwrap(), sf);
    }

    #[test]
    fn degree_is_additive(seed in any::<u64>()) {
        let mut r = rng(seed);
        let mx = random_monomial(&mut r, 3);
        let my = random_monomial(&mut r, 3);
        let x = NCPoly::term(random_scalar(&mut r), mx);
        let y = NCPoly::term(random_scalar(&mut r), my);
        prop_assert!((&x * &y).is_homogeneous_of(mx.degree() + my.degree()));
    }

    #[test]
    fn coaction_is_multiplicative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (x, y) = (random_poly(&mut r, 3, 2), random_poly(&mut r, 3, 2));
        let lhs = coact_right(&(&x * &y));
        let mut rhs = TensorPH::zero();
        for (n, xn) in coact_right(&x).components() {
            for (m, ym) in coact_right(&y).components() {
                rhs.add_component(n + m, &(xn * ym));
            }
        }
        prop_assert_eq!(format!("{:?}", lhs), format!("{:?}", rhs));
    }

    #[test]
    fn hopf_axioms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (h, g) = (random_laurent(&mut r), random_laurent(&mut r));
        let dh = h.coproduct();
        // coassociativity
        let mut left: BTreeMap<(i64, i64, i64), ExactScalar> = BTreeMap::new();
        let mut right: BTreeMap<(i64, i64, i64), ExactScalar> = BTreeMap::new();
        for ((p, q), c) in &dh {
            for ((p1, p2), c1) in HLaurent::u_pow(*p).coproduct() {
                let e = left.entry((p1, p2, *q)).or_insert_with(ExactScalar::zero);
                *e = &*e + &(c * &c1);
            }
            for ((q1, q2), c1) in HLaurent::u_pow(*q).coproduct() {
                let e = right.entry((*p, q1, q2)).or_insert_with(ExactScalar::zero);
                *e = &*e + &(c * &c1);
            }
        }
        prop_assert_eq!(left, right);
        // counit and antipode
        let mut counit_left = HLaurent::zero();
        let mut antipode_left = HLaurent::zero();
        for ((p, q), c) in &dh {
            let scale = HLaurent::from_terms([(0, c.clone())]);
            counit_left = &counit_left + &(&scale * &HLaurent::from_terms([(*q, HLaurent::u_pow(*p).counit())]));
            antipode_left = &antipode_left + &(&scale * &(&HLaurent::u_pow(*p).antipode() * &HLaurent::u_pow(*q)));
        }
        prop_assert_eq!(counit_left, h.clone());
        prop_assert_eq!(antipode_left, HLaurent::from_terms([(0, h.counit())]));
        // Δ and ε are multiplicative
        prop_assert_eq!((&h * &g).counit(), &h.counit() * &g.counit());
        let mut prod = BTreeMap::new();
        for ((p, q), c) in &dh {
            for ((p2, q2), c2) in g.coproduct() {
                let e = prod.entry((p + p2, q + q2)).or_insert_with(ExactScalar::zero);
                *e = &*e + &(c * &c2);
            }
        }
        prod.retain(|_, c: &mut ExactScalar| !c.is_zero());
        prop_assert_eq!((&h * &g).coproduct(), prod);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn associativity(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (x, y, z) = (random_poly(&mut r, 3, 2), random_poly(&mut r, 3, 2), random_poly(&mut r, 3, 2));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn poly_print_parse(seed in any::<u64>()) {
        let x = random_poly(&mut rng(seed), 4, 3);
        let text = print_poly(&x);
        let back = parse_poly(&text).unwrap();
        prop_assert_eq!(&back, &x);
        prop_assert_eq!(print_poly(&back), text);
    }
}
