//! The canonical Galois map `can: P ⊗_B P → P ⊗ H`, its explicit inverse,
//! the strong connection `ℓ` and the connection form `ω`.

use rayon::prelude::*;

use crate::algebra::{Generator, Monomial, NCPoly, Rewriter};
use crate::hopf::{HLaurent, TensorPH, TensorPP};
use crate::mu::MuScalar;
use crate::report::CheckRecord;
use crate::scalar::ExactScalar;

pub fn binomial(n: u32, k: u32) -> u64 {
    let k = k.min(n - k);
    (0..k as u64).fold(1u64, |acc, i| acc * (n as u64 - i) / (i + 1))
}

fn word(letters: &[Generator]) -> NCPoly {
    Rewriter::standard().word(letters)
}

fn repeat(g: Generator, e: u32) -> Vec<Generator> {
    vec![g; e as usize]
}

fn concat(parts: &[Vec<Generator>]) -> Vec<Generator> {
    parts.concat()
}

/// `(a*)^{n-k} (b*)^k`
fn lower_star(n: u32, k: u32) -> NCPoly {
    NCPoly::monomial(Monomial::new(n - k, k, 0, 0).unwrap())
}

/// `b^k a^{n-k}`
fn upper(n: u32, k: u32) -> NCPoly {
    NCPoly::monomial(Monomial::new(0, 0, n - k, k).unwrap())
}

/// `a^{n-k} b^k`
fn upper_ab(n: u32, k: u32) -> NCPoly {
    word(&concat(&[
        repeat(Generator::A, n - k),
        repeat(Generator::B, k),
    ]))
}

/// `(b*)^k (a*)^{n-k}`
fn lower_star_ba(n: u32, k: u32) -> NCPoly {
    word(&concat(&[
        repeat(Generator::BStar, k),
        repeat(Generator::AStar, n - k),
    ]))
}

/// Representative of a class in `P ⊗_B P`. Two representatives are equal as
/// classes iff their images under the bijective `can` agree.
#[derive(Clone, Debug)]
pub struct TensorPBP {
    pub rep: TensorPP,
}

impl TensorPBP {
    pub fn new(rep: TensorPP) -> Self {
        TensorPBP { rep }
    }

    pub fn simple(x: &NCPoly, y: &NCPoly) -> Self {
        TensorPBP::new(TensorPP::simple(x, y))
    }
}

impl PartialEq for TensorPBP {
    fn eq(&self, other: &Self) -> bool {
        can(self) == can(other)
    }
}

/// `χ(x ⊗ y) = x y₍₀₎ ⊗ y₍₁₎`.
pub fn chi(t: &TensorPP) -> TensorPH {
    let rw = Rewriter::standard();
    let mut out = TensorPH::zero();
    for (l, r) in t.legs() {
        let d = r.homogeneous_degree().unwrap_or(0);
        out.add_component(d, &rw.mul(l, &r));
    }
    out
}

pub fn can(t: &TensorPBP) -> TensorPH {
    chi(&t.rep)
}

/// `can⁻¹(x ⊗ uⁿ)` as an explicit representative in `P ⊗ P`.
pub fn can_inverse_component(x: &NCPoly, n: i64) -> TensorPP {
    let rw = Rewriter::standard();
    let m = n.unsigned_abs() as u32;
    let mut out = TensorPP::zero();
    for k in 0..=m {
        let c = ExactScalar::from_int(binomial(m, k) as i64);
        let (left, right) = if n >= 0 {
            (rw.mul(x, &lower_star(m, k)), upper(m, k))
        } else {
            let pre = NCPoly::scalar(MuScalar::inv_linear(m as i64));
            (
                rw.mul(&rw.mul(x, &pre), &upper_ab(m, k)),
                lower_star_ba(m, k),
            )
        };
        out.add_simple(&left.scale_exact(&c), &right);
    }
    out
}

pub fn can_inverse(t: &TensorPH) -> TensorPBP {
    let mut out = TensorPP::zero();
    for (n, x) in t.components() {
        out = &out + &can_inverse_component(x, *n);
    }
    TensorPBP::new(out)
}

// ---------------------------------------------------------------------------

/// Left sums of the binomial identities:
/// `Σ C(n,k) (a*)^{n-k}(b*)^k b^k a^{n-k}` and `Σ C(n,k) a^{n-k}b^k (b*)^k(a*)^{n-k}`.
pub fn binomial_sums(n: u32) -> (NCPoly, NCPoly) {
    let rw = Rewriter::standard();
    let mut s1 = NCPoly::zero();
    let mut s2 = NCPoly::zero();
    for k in 0..=n {
        let c = MuScalar::from_int(binomial(n, k) as i64);
        s1.add_scaled(&c, &rw.mul(&lower_star(n, k), &upper(n, k)));
        s2.add_scaled(&c, &rw.mul(&upper_ab(n, k), &lower_star_ba(n, k)));
    }
    (s1, s2)
}

/// Right side of the second induction step:
/// `Σ C(n-1,k) a^{n-1-k} b^k (1+μ) (b*)^k (a*)^{n-1-k}`.
fn induction_rhs_b(n: u32) -> NCPoly {
    let rw = Rewriter::standard();
    let mid = NCPoly::scalar(MuScalar::linear(1));
    let mut out = NCPoly::zero();
    for k in 0..n {
        let c = MuScalar::from_int(binomial(n - 1, k) as i64);
        let t = rw.mul(&rw.mul(&upper_ab(n - 1, k), &mid), &lower_star_ba(n - 1, k));
        out.add_scaled(&c, &t);
    }
    out
}

pub fn verify_binomial_identity(n: u32) -> Vec<CheckRecord> {
    let param = format!("n={n}");
    let (s1, s2) = binomial_sums(n);
    let (p1, _) = binomial_sums(n - 1);
    let target_b = NCPoly::scalar(MuScalar::linear(n as i64));
    vec![
        CheckRecord::residual(
            "binomial-star-first",
            &param,
            (&s1 - &NCPoly::one()).to_string(),
        ),
        CheckRecord::residual("binomial-star-last", &param, (&s2 - &target_b).to_string()),
        CheckRecord::residual("induction-star-first", &param, (&s1 - &p1).to_string()),
        CheckRecord::residual(
            "induction-star-last",
            &param,
            (&s2 - &induction_rhs_b(n)).to_string(),
        ),
    ]
}

// ---------------------------------------------------------------------------

/// Simple tensors `ℓ⁽¹⁾_k ⊗ ℓ⁽²⁾_k` of `ℓ(uⁿ)`, `k = 0..|n|`. The Hermitian
/// variant splits `√C(n,k)` symmetrically between the legs.
pub fn ell_legs(n: i64, hermitian: bool) -> Vec<(NCPoly, NCPoly)> {
    if n == 0 {
        return vec![(NCPoly::one(), NCPoly::one())];
    }
    let rw = Rewriter::standard();
    let m = n.unsigned_abs() as u32;
    (0..=m)
        .map(|k| {
            let c = binomial(m, k);
            let (lc, rc) = if hermitian {
                let r = ExactScalar::sqrt_int(c);
                (r.clone(), r)
            } else {
                (ExactScalar::from_int(c as i64), ExactScalar::one())
            };
            if n > 0 {
                (
                    lower_star(m, k).scale_exact(&lc),
                    upper(m, k).scale_exact(&rc),
                )
            } else {
                let pre = NCPoly::scalar(MuScalar::inv_linear(m as i64));
                (
                    rw.mul(&pre, &upper_ab(m, k)).scale_exact(&lc),
                    lower_star_ba(m, k).scale_exact(&rc),
                )
            }
        })
        .collect()
}

pub fn ell(n: i64, hermitian: bool) -> TensorPP {
    let legs = ell_legs(n, hermitian);
    TensorPP::from_pairs(legs.iter().map(|(l, r)| (l, r)))
}

/// `ω(uⁿ) = ℓ(uⁿ) - 1 ⊗ 1`.
pub fn omega(n: i64) -> TensorPP {
    &ell(n, false) - &TensorPP::one()
}

/// `ℓ` extended linearly to Laurent polynomials.
pub fn ell_h(h: &HLaurent) -> TensorPP {
    let mut out = TensorPP::zero();
    for (n, c) in h.terms() {
        out = &out + &ell(*n, false).scale_exact(c);
    }
    out
}

fn check_connection_at(n: i64) -> Vec<CheckRecord> {
    let param = format!("n={n}");
    let l = ell(n, false);
    let legs = ell_legs(n, false);
    let mut out = Vec::new();

    let lifted = chi(&l);
    let want = TensorPH::simple(NCPoly::one(), n);
    out.push(CheckRecord::residual(
        "l: chi(l(h)) = 1(x)h",
        &param,
        format!("{:?}", &lifted - &want),
    ));

    let right_ok = l.legs().all(|(_, r)| r.is_homogeneous_of(n))
        && legs.iter().all(|(_, r)| r.is_homogeneous_of(n));
    out.push(CheckRecord::new(
        "l: right colinear",
        &param,
        right_ok,
        format!("right legs of degree {n}"),
    ));

    let left_ok = l.legs().all(|(x, _)| x.is_homogeneous_of(-n))
        && legs.iter().all(|(x, _)| x.is_homogeneous_of(-n));
    out.push(CheckRecord::new(
        "l: left colinear",
        &param,
        left_ok,
        format!("left legs of degree {}", -n),
    ));

    let w = omega(n);
    let in_kernel = w.multiply();
    out.push(CheckRecord::residual(
        "omega in ker m_P",
        &param,
        in_kernel.to_string(),
    ));

    // Δ(ω(h)) = (ω ⊗ id) Ad(h)
    let mut expected: std::collections::BTreeMap<i64, TensorPP> = Default::default();
    for ((h2, g), c) in HLaurent::u_pow(n).ad() {
        let slot = expected.entry(g).or_default();
        *slot = &*slot + &omega(h2).scale_exact(&c);
    }
    expected.retain(|_, t| !t.is_zero());
    let got = w.diag_coact();
    let diff: Vec<String> = got
        .keys()
        .chain(expected.keys())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .filter_map(|g| {
            let d = &got.get(g).cloned().unwrap_or_default()
                - &expected.get(g).cloned().unwrap_or_default();
            (!d.is_zero()).then(|| format!("u^{g}: {d:?}"))
        })
        .collect();
    out.push(CheckRecord::residual(
        "omega: ad-covariance",
        &param,
        if diff.is_empty() {
            "0".into()
        } else {
            diff.join("; ")
        },
    ));

    let want = &TensorPH::simple(NCPoly::one(), n) - &TensorPH::simple(NCPoly::one(), 0);
    out.push(CheckRecord::residual(
        "omega: chi(omega(h)) = 1(x)(h-e(h))",
        &param,
        format!("{:?}", &chi(&w) - &want),
    ));

    let implied = out
        .iter()
        .filter(|r| r.check.starts_with("l: "))
        .all(|r| r.pass);
    out.push(CheckRecord::new(
        "omega: strongness",
        &param,
        implied,
        "implied by the conditions on l",
    ));
    out
}

/// Conditions on `ℓ` and `ω` for all `|n| ≤ n_max`, in parameter order.
pub fn check_strong_connection(n_max: u32) -> Vec<CheckRecord> {
    let n_max = n_max as i64;
    let mut out = vec![CheckRecord::new(
        "l: l(1) = 1(x)1",
        "n=0",
        ell(0, false) == TensorPP::one() && ell(0, true) == TensorPP::one(),
        "",
    )];
    let per_n: Vec<Vec<CheckRecord>> = (-n_max..=n_max)
        .into_par_iter()
        .map(check_connection_at)
        .collect();
    out.extend(per_n.into_iter().flatten());
    out
}

// ---------------------------------------------------------------------------

/// `can ∘ can⁻¹ = id` on `x ⊗ uⁿ`.
pub fn round_trip_a(x: &NCPoly, n: i64) -> CheckRecord {
    let t = TensorPH::simple(x.clone(), n);
    let back = can(&can_inverse(&t));
    CheckRecord::residual(
        "can(can^-1)",
        format!("x={x}, n={n}"),
        format!("{:?}", &back - &t),
    )
}

/// `can⁻¹ ∘ can = id` on `x ⊗_B y` for homogeneous `y`. Besides comparing
/// can-images, checks the balanced witness: the elements
/// `β_k = y (a*)^{d-k}(b*)^k` (resp. `y (1+dμ)^{-1} a^{d-k} b^k`) lie in `B`
/// and recombine to `y`, which moves `can⁻¹(can(x ⊗ y))` to `x ⊗ y` across
/// `⊗_B` without invoking `can` at all.
pub fn round_trip_b(x: &NCPoly, y: &NCPoly) -> Vec<CheckRecord> {
    let rw = Rewriter::standard();
    let d = y.homogeneous_degree().unwrap_or(0);
    let param = format!("x={x}, y={y}");
    let t = TensorPBP::simple(x, y);
    let back = can_inverse(&can(&t));
    let class_ok = back == t;
    let m = d.unsigned_abs() as u32;
    let mut witness = NCPoly::zero();
    let mut in_b = true;
    for k in 0..=m {
        let c = MuScalar::from_int(binomial(m, k) as i64);
        let (beta, tail) = if d >= 0 {
            (rw.mul(y, &lower_star(m, k)), upper(m, k))
        } else {
            let pre = NCPoly::scalar(MuScalar::inv_linear(m as i64));
            (
                rw.mul(&rw.mul(y, &pre), &upper_ab(m, k)),
                lower_star_ba(m, k),
            )
        };
        in_b &= beta.is_homogeneous_of(0);
        witness.add_scaled(&c, &rw.mul(&beta, &tail));
    }
    vec![
        CheckRecord::new("can^-1(can) class", &param, class_ok, ""),
        CheckRecord::new(
            "can^-1(can) balanced witness",
            &param,
            in_b && witness == *y,
            (&witness - y).to_string(),
        ),
    ]
}

/// `can⁻¹(z x ⊗ uⁿ) = z · can⁻¹(x ⊗ uⁿ)`, compared on representatives.
pub fn left_linearity(z: &NCPoly, x: &NCPoly, n: i64) -> CheckRecord {
    let rw = Rewriter::standard();
    let lhs = can_inverse_component(&rw.mul(z, x), n);
    let rhs = can_inverse_component(x, n).left_mul(z);
    CheckRecord::new(
        "can^-1 left linear",
        format!("z={z}, x={x}, n={n}"),
        lhs == rhs,
        "",
    )
}

/// Plain and Hermitian `ℓ(uⁿ)` have equal can-images.
pub fn ell_variants_agree(n: i64) -> CheckRecord {
    let ok = chi(&ell(n, false)) == chi(&ell(n, true));
    CheckRecord::new("l plain ~ l hermitian", format!("n={n}"), ok, "")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{a, a_star, b, b_star, mu};

    #[test]
    fn binomials() {
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(8, 4), 70);
        assert_eq!(binomial(5, 0), 1);
    }

    #[test]
    fn inverse_formulas_at_low_charge() {
        assert_eq!(
            can_inverse_component(&NCPoly::one(), 1),
            TensorPP::from_pairs([(&a_star(), &a()), (&b_star(), &b())])
        );
        let pre = NCPoly::scalar(MuScalar::inv_linear(1));
        assert_eq!(
            can_inverse_component(&NCPoly::one(), -1),
            TensorPP::from_pairs([(&(&pre * &a()), &a_star()), (&(&pre * &b()), &b_star())])
        );
        let x = &a() * &b_star();
        assert_eq!(
            can_inverse_component(&x, 0),
            TensorPP::simple(&x, &NCPoly::one())
        );
        assert_eq!(
            chi(&TensorPP::simple(&a_star(), &a())),
            TensorPH::simple(&a_star() * &a(), 1)
        );
        assert_eq!(
            can(&TensorPBP::simple(&NCPoly::one(), &a())),
            TensorPH::simple(a(), 1)
        );
    }

    #[test]
    fn ell_and_omega() {
        assert_eq!(
            ell(1, false),
            TensorPP::parse("a* (x) a + b* (x) b").unwrap()
        );
        assert_eq!(ell(0, true), TensorPP::one());
        assert_eq!(
            ell(-1, false),
            TensorPP::parse("inv(1+mu) * a (x) a* + inv(1+mu) * b (x) b*").unwrap()
        );
        assert!(omega(0).is_zero());
        assert_eq!(
            omega(1),
            TensorPP::parse("a* (x) a + b* (x) b - 1 (x) 1").unwrap()
        );
        for n in -3..=3 {
            assert!(omega(n).multiply().is_zero());
        }
    }

    #[test]
    fn binomial_identities_low_n() {
        for n in 1..=3 {
            assert!(
                crate::report::all_pass(&verify_binomial_identity(n)),
                "n={n}"
            );
        }
        let (s1, _) = binomial_sums(2);
        assert_eq!(s1, NCPoly::one());
    }

    #[test]
    fn round_trips() {
        for n in -2..=2 {
            assert!(round_trip_a(&mu(), n).pass);
            assert!(round_trip_a(&(&a() * &b_star()), n).pass);
        }
        let recs = round_trip_b(&a(), &(&b() * &b()));
        assert!(crate::report::all_pass(&recs), "{recs:?}");
        let recs = round_trip_b(&b_star(), &(&a_star() * &mu()));
        assert!(crate::report::all_pass(&recs), "{recs:?}");
        assert!(left_linearity(&b(), &a_star(), -2).pass);
    }

    #[test]
    fn connection_conditions() {
        let recs = check_strong_connection(2);
        assert!(
            crate::report::all_pass(&recs),
            "{}",
            crate::report::render_text(&recs)
        );
    }
}
