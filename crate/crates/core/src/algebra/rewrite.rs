//! Rewrite system for the defining relations and its normal-form engine.
//!
//! Words are ordered degree-lexicographically with letter rank
//! `a* < b* < b < a`. Every rule replaces a two-letter word by a combination
//! of strictly smaller words, so rewriting terminates; confluence is checked
//! by [`Rewriter::critical_pairs`]. Coefficients pass through letters by
//! `g f(μ) = f(μ/(1+μ)) g` for `g ∈ {a, b}` and `f(μ/(1-μ))` for `a*`, `b*`.

use std::sync::OnceLock;

use dashmap::DashMap;

use super::{deglex, Generator, Monomial, NCPoly};
use crate::mu::MuScalar;

use Generator::{AStar, BStar, A, B};

/// `lhs → Σ coeff · word`.
#[derive(Clone, Debug)]
pub struct Rule {
    pub name: &'static str,
    pub lhs: [Generator; 2],
    pub rhs: Vec<(MuScalar, Vec<Generator>)>,
}

impl Rule {
    fn new(name: &'static str, lhs: [Generator; 2], rhs: Vec<(MuScalar, Vec<Generator>)>) -> Self {
        Rule { name, lhs, rhs }
    }

    /// Every right-hand word is strictly below the left-hand side.
    pub fn is_decreasing(&self) -> bool {
        self.rhs
            .iter()
            .all(|(_, w)| deglex(w, &self.lhs) == std::cmp::Ordering::Less)
    }
}

fn one_minus_mu() -> MuScalar {
    MuScalar::linear(-1)
}

/// The shipped rule set.
pub fn standard_rules() -> Vec<Rule> {
    let one = MuScalar::one;
    vec![
        // ba = ab
        Rule::new("R1", [A, B], vec![(one(), vec![B, A])]),
        // ab* = (1-μ) b*a
        Rule::new("R2", [A, BStar], vec![(one_minus_mu(), vec![BStar, A])]),
        // star of R2
        Rule::new("R3", [B, AStar], vec![(one_minus_mu(), vec![AStar, B])]),
        // aa* = (1-μ) a*a + μ
        Rule::new(
            "R4",
            [A, AStar],
            vec![(one_minus_mu(), vec![AStar, A]), (MuScalar::mu(), vec![])],
        ),
        // bb* = (1-μ) b*b + μ
        Rule::new(
            "R5",
            [B, BStar],
            vec![(one_minus_mu(), vec![BStar, B]), (MuScalar::mu(), vec![])],
        ),
        // star of R1
        Rule::new("R6", [BStar, AStar], vec![(one(), vec![AStar, BStar])]),
        // a*a + b*b = 1
        Rule::new(
            "R7",
            [BStar, B],
            vec![(one(), vec![]), (-&one(), vec![AStar, A])],
        ),
    ]
}

/// The shipped rules with the `(1-μ)` coefficient of R4 replaced by `1`;
/// a deliberately broken system for mutation checks.
pub fn tampered_r4_rules() -> Vec<Rule> {
    let mut rules = standard_rules();
    if let Some(r4) = rules.iter_mut().find(|r| r.name == "R4") {
        r4.rhs[0].0 = MuScalar::one();
    }
    rules
}

/// Result of resolving one overlap both ways.
#[derive(Clone, Debug)]
pub struct CriticalPair {
    pub rules: (&'static str, &'static str),
    pub word: Vec<Generator>,
    pub coefficient: Option<MuScalar>,
    pub left: NCPoly,
    pub right: NCPoly,
}

impl CriticalPair {
    pub fn joinable(&self) -> bool {
        self.left == self.right
    }
}

/// Normal-form engine with memoised letter insertion and word products.
pub struct Rewriter {
    rules: Vec<Rule>,
    table: [[Option<usize>; 4]; 4],
    letter_cache: DashMap<(Generator, Monomial), NCPoly>,
    product_cache: DashMap<(Monomial, Monomial), NCPoly>,
}

impl Rewriter {
    pub fn new(rules: Vec<Rule>) -> Self {
        let mut table = [[None; 4]; 4];
        for (i, r) in rules.iter().enumerate() {
            table[r.lhs[0].index()][r.lhs[1].index()] = Some(i);
        }
        Rewriter {
            rules,
            table,
            letter_cache: DashMap::new(),
            product_cache: DashMap::new(),
        }
    }

    /// Shared engine for the shipped rule set.
    pub fn standard() -> &'static Rewriter {
        static STANDARD: OnceLock<Rewriter> = OnceLock::new();
        STANDARD.get_or_init(|| Rewriter::new(standard_rules()))
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    fn rule_for(&self, x: Generator, y: Generator) -> Option<&Rule> {
        self.table[x.index()][y.index()].map(|i| &self.rules[i])
    }

    /// A word is irreducible iff no adjacent pair is a left-hand side.
    pub fn is_irreducible(&self, word: &[Generator]) -> bool {
        word.windows(2).all(|w| self.rule_for(w[0], w[1]).is_none())
    }

    /// Normal form of `x · m` for a normal word `m`.
    pub fn insert_letter(&self, x: Generator, m: &Monomial) -> NCPoly {
        if let Some(hit) = self.letter_cache.get(&(x, *m)) {
            return hit.clone();
        }
        let letters = m.letters();
        let result = match letters.first().and_then(|y| self.rule_for(x, *y)) {
            None => {
                let mut w = Vec::with_capacity(letters.len() + 1);
                w.push(x);
                w.extend_from_slice(&letters);
                match Monomial::from_word(&w) {
                    Some(prepended) => NCPoly::monomial(prepended),
                    // only reachable with a rule set that leaves an out-of-order pair unreduced
                    None => panic!("rule set leaves {:?} irreducible but not normal", w),
                }
            }
            Some(rule) => {
                let rest = Monomial::from_word(&letters[1..]).expect("suffix of a normal word");
                let rest = NCPoly::monomial(rest);
                let mut out = NCPoly::zero();
                for (c, u) in &rule.rhs {
                    let mut p = rest.clone();
                    for g in u.iter().rev() {
                        p = self.insert_letter_poly(*g, &p);
                    }
                    out.add_scaled(c, &p);
                }
                out
            }
        };
        self.letter_cache.insert((x, *m), result.clone());
        result
    }

    /// Normal form of `x · p`; coefficients of `p` move left through `x`.
    pub fn insert_letter_poly(&self, x: Generator, p: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (m, c) in p.terms() {
            out.add_scaled(&c.subst_shift(x.degree()), &self.insert_letter(x, m));
        }
        out
    }

    /// Normal form of an arbitrary word.
    pub fn word(&self, letters: &[Generator]) -> NCPoly {
        let mut p = NCPoly::one();
        for g in letters.iter().rev() {
            p = self.insert_letter_poly(*g, &p);
        }
        p
    }

    pub fn mul_monomials(&self, m1: &Monomial, m2: &Monomial) -> NCPoly {
        if m1.is_empty() {
            return NCPoly::monomial(*m2);
        }
        if let Some(hit) = self.product_cache.get(&(*m1, *m2)) {
            return hit.clone();
        }
        let mut p = NCPoly::monomial(*m2);
        for g in m1.letters().iter().rev() {
            p = self.insert_letter_poly(*g, &p);
        }
        self.product_cache.insert((*m1, *m2), p.clone());
        p
    }

    /// `(Σ c w)(Σ d v) = Σ c · d(μ/(1+deg(w)μ)) · nf(w v)`.
    pub fn mul(&self, x: &NCPoly, y: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        let mut shifted: std::collections::BTreeMap<i64, Vec<(Monomial, MuScalar)>> =
            Default::default();
        for (m1, c1) in x.terms() {
            let deg = m1.degree();
            let ys = shifted.entry(deg).or_insert_with(|| {
                y.terms()
                    .map(|(m2, c2)| (*m2, c2.subst_shift(deg)))
                    .collect()
            });
            for (m2, c2) in ys.iter() {
                let coeff = c1 * c2;
                out.add_scaled(&coeff, &self.mul_monomials(m1, m2));
            }
        }
        out
    }

    /// Result of applying rule `r` to the first two letters of `word`, then normalising.
    fn reduce_at_front(&self, rule: &Rule, tail: &[Generator]) -> NCPoly {
        let mut out = NCPoly::zero();
        for (c, u) in &rule.rhs {
            let mut w = u.clone();
            w.extend_from_slice(tail);
            out.add_scaled(c, &self.word(&w));
        }
        out
    }

    /// Resolves every overlap `xyz` of two left-hand sides, and every
    /// `xy · f` with `f` from `coefficient_samples`, in both possible ways.
    pub fn critical_pairs(&self, coefficient_samples: &[MuScalar]) -> Vec<CriticalPair> {
        let mut out = Vec::new();
        for r1 in &self.rules {
            for r2 in &self.rules {
                if r1.lhs[1] != r2.lhs[0] {
                    continue;
                }
                let (x, y, z) = (r1.lhs[0], r1.lhs[1], r2.lhs[1]);
                let left = self.reduce_at_front(r1, &[z]);
                // x · (rhs of r2)
                let mut right = NCPoly::zero();
                for (c, v) in &r2.rhs {
                    let mut w = vec![x];
                    w.extend_from_slice(v);
                    right.add_scaled(&c.subst_shift(x.degree()), &self.word(&w));
                }
                out.push(CriticalPair {
                    rules: (r1.name, r2.name),
                    word: vec![x, y, z],
                    coefficient: None,
                    left,
                    right,
                });
            }
        }
        for rule in &self.rules {
            let [x, y] = rule.lhs;
            let deg = x.degree() + y.degree();
            for f in coefficient_samples {
                // (rule applied) · f: coefficient moves left through each rhs word
                let mut left = NCPoly::zero();
                for (c, u) in &rule.rhs {
                    let shift: i64 = u.iter().map(|g| g.degree()).sum();
                    let moved = c * &f.subst_shift(shift);
                    left.add_scaled(&moved, &self.word(u));
                }
                // f moved through y then x, then the rule
                let moved = f.subst_shift(y.degree()).subst_shift(x.degree());
                let mut right = NCPoly::zero();
                for (c, u) in &rule.rhs {
                    right.add_scaled(&(&moved * c), &self.word(u));
                }
                debug_assert_eq!(deg, x.degree() + y.degree());
                out.push(CriticalPair {
                    rules: (rule.name, "C"),
                    word: vec![x, y],
                    coefficient: Some(f.clone()),
                    left,
                    right,
                });
            }
        }
        out
    }
}

/// Generators of the coefficient ring used to probe coefficient overlaps.
pub fn coefficient_probes(k_max: i64) -> Vec<MuScalar> {
    let mut out = vec![MuScalar::mu(), MuScalar::mu_pow(-1)];
    for k in -k_max..=k_max {
        if k == 0 {
            continue;
        }
        out.push(MuScalar::linear(k));
        out.push(MuScalar::inv_linear(k));
        out.push(MuScalar::sqrt_linear(k));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{a, a_star, b, b_star, mu};

    #[test]
    fn rules_decrease_and_are_confluent() {
        let rw = Rewriter::standard();
        assert!(rw.rules().iter().all(Rule::is_decreasing));
        let pairs = rw.critical_pairs(&coefficient_probes(3));
        assert_eq!(pairs.iter().filter(|p| p.coefficient.is_none()).count(), 8);
        for p in &pairs {
            assert!(
                p.joinable(),
                "{:?} on {:?}: {} vs {}",
                p.rules,
                p.word,
                p.left,
                p.right
            );
        }
    }

    #[test]
    fn defining_relations() {
        let one_minus_mu = NCPoly::scalar(MuScalar::linear(-1));
        let aa = &a() * &a_star();
        assert_eq!(aa, &(&one_minus_mu * &(&a_star() * &a())) + &mu());
        assert_eq!(&b() * &a(), &a() * &b());
        let sum = &aa + &(&b() * &b_star());
        assert_eq!(sum, NCPoly::scalar(MuScalar::linear(1)));
        let comm = &(&(&mu() * &a()) - &(&a() * &mu())) - &(&(&mu() * &a()) * &mu());
        assert!(comm.is_zero());
    }

    #[test]
    fn coefficient_moves() {
        for k in [-3, -1, 1, 2, 4] {
            let f = NCPoly::scalar(&MuScalar::mu() * &MuScalar::inv_linear(k));
            let g = NCPoly::scalar(&MuScalar::mu() * &MuScalar::inv_linear(k + 1));
            assert_eq!(&a() * &f, &g * &a());
            assert_eq!(&b() * &f, &g * &b());
        }
    }

    #[test]
    fn tampered_rule_breaks_relations() {
        let rw = Rewriter::new(tampered_r4_rules());
        let lhs = rw.mul(&a(), &a_star());
        let rhs = &rw.mul(
            &NCPoly::scalar(MuScalar::linear(-1)),
            &rw.mul(&a_star(), &a()),
        ) + &mu();
        assert_ne!(lhs, rhs);
        let pairs = rw.critical_pairs(&[]);
        assert!(pairs.iter().any(|p| !p.joinable()));
    }
}
