//! Aggregated verification suite, grouped into numbered sections.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::rewrite::coefficient_probes;
use crate::algebra::{relations::verify_relations, Monomial, NCPoly, Rewriter, SphereForm};
use crate::error::Error;
use crate::galois::{
    check_strong_connection, ell_variants_agree, left_linearity, round_trip_a, round_trip_b,
    verify_binomial_identity,
};
use crate::mu::{MuScalar, SingularEvaluation};
use crate::projectors::{
    compare_explicit_matrix, export_sphere, export_words, from_json, import, projector,
    theta_conjugate, to_json, to_sphere_form, trace, verify_projector, Imported,
};
use crate::report::{render_text, CheckRecord};
use crate::reps::{
    build_rep, check_rep_relations, classical_chern_from, eval_sphere_form, is_singular,
    rep_projector_with, symbolic_trace, CHERN_ORIENTATION,
};
use crate::sample::random_poly;
use crate::syntax::{parse_poly, print_poly};

pub const SCHEMA: &str = "qsphere-suite/1";
const SEED: u64 = 0x5eed_2003;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Quick,
    Full,
}

/// Parameter ranges for one suite level.
#[derive(Clone, Copy, Debug)]
pub struct Bounds {
    pub relation_k: i64,
    pub binomial_n: u32,
    pub galois_n: i64,
    pub galois_degree: i64,
    pub connection_n: u32,
    pub projector_n: i64,
    pub symmetry_n: i64,
    pub rep_dim: usize,
    pub rep_projector_dim: usize,
    pub rep_projector_n: i64,
    pub chern_n: i64,
    pub chern_grid: usize,
    pub associativity_triples: usize,
    pub round_trip_samples: usize,
    pub json_n: i64,
}

impl Level {
    pub fn bounds(self) -> Bounds {
        match self {
            Level::Quick => Bounds {
                relation_k: 2,
                binomial_n: 2,
                galois_n: 2,
                galois_degree: 2,
                connection_n: 2,
                projector_n: 2,
                symmetry_n: 2,
                rep_dim: 6,
                rep_projector_dim: 6,
                rep_projector_n: 2,
                chern_n: 2,
                chern_grid: 60,
                associativity_triples: 20,
                round_trip_samples: 100,
                json_n: 2,
            },
            Level::Full => Bounds {
                relation_k: 5,
                binomial_n: 8,
                galois_n: 5,
                galois_degree: 4,
                connection_n: 5,
                projector_n: 4,
                symmetry_n: 3,
                rep_dim: 20,
                rep_projector_dim: 12,
                rep_projector_n: 3,
                chern_n: 3,
                chern_grid: 100,
                associativity_triples: 100,
                round_trip_samples: 1000,
                json_n: 4,
            },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Section {
    pub id: u32,
    pub name: String,
    pub pass: bool,
    pub records: Vec<CheckRecord>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub schema: String,
    pub level: Level,
    pub pass: bool,
    pub sections: Vec<Section>,
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("suite reports always serialise")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.sections {
            out.push_str(&format!(
                "== {}. {} [{}]\n",
                s.id,
                s.name,
                if s.pass { "pass" } else { "FAIL" }
            ));
            out.push_str(&render_text(&s.records));
            out.push('\n');
        }
        out.push_str(if self.pass {
            "suite: pass\n"
        } else {
            "suite: FAIL\n"
        });
        out
    }
}

pub const SECTION_NAMES: [&str; 10] = [
    "rewrite soundness",
    "relation reproduction",
    "binomial identities",
    "galois round trips",
    "strong connection",
    "projectors",
    "charge conjugation",
    "representations",
    "classical limit",
    "tooling",
];

pub fn run_section(id: u32, level: Level) -> Section {
    let b = level.bounds();
    let records = match id {
        1 => rewrite_soundness(&b),
        2 => verify_relations(Rewriter::standard(), b.relation_k),
        3 => (1..=b.binomial_n)
            .into_par_iter()
            .map(verify_binomial_identity)
            .collect::<Vec<_>>()
            .concat(),
        4 => galois_round_trips(&b),
        5 => check_strong_connection(b.connection_n),
        6 => projector_checks(&b),
        7 => (-b.symmetry_n..=b.symmetry_n)
            .into_par_iter()
            .map(theta_conjugate)
            .collect::<Vec<_>>()
            .concat(),
        8 => representation_checks(&b),
        9 => classical_checks(&b),
        10 => tooling_checks(&b),
        _ => panic!("no section {id}"),
    };
    Section {
        id,
        name: SECTION_NAMES[id as usize - 1].into(),
        pass: records.iter().all(|r| r.pass),
        records,
    }
}

pub fn run_suite(level: Level) -> SuiteReport {
    let sections: Vec<Section> = (1..=10u32)
        .into_par_iter()
        .map(|id| run_section(id, level))
        .collect();
    SuiteReport {
        schema: SCHEMA.into(),
        level,
        pass: sections.iter().all(|s| s.pass),
        sections,
    }
}

pub fn rewrite_soundness(b: &Bounds) -> Vec<CheckRecord> {
    let rw = Rewriter::standard();
    let mut out: Vec<CheckRecord> = rw
        .critical_pairs(&coefficient_probes(b.relation_k))
        .into_iter()
        .map(|p| {
            let word: String = p
                .word
                .iter()
                .map(|g| g.symbol())
                .collect::<Vec<_>>()
                .join(" ");
            let param = match &p.coefficient {
                Some(c) => format!("{} * ({c})", word),
                None => word,
            };
            CheckRecord::residual(
                format!("critical pair {}/{}", p.rules.0, p.rules.1),
                param,
                (&p.left - &p.right).to_string(),
            )
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let triples: Vec<[NCPoly; 3]> = (0..b.associativity_triples)
        .map(|_| std::array::from_fn(|_| random_poly(&mut rng, 3, 2)))
        .collect();
    let failures: Vec<usize> = triples
        .par_iter()
        .enumerate()
        .filter_map(|(i, [x, y, z])| {
            let l = rw.mul(&rw.mul(x, y), z);
            let r = rw.mul(x, &rw.mul(y, z));
            (l != r).then_some(i)
        })
        .collect();
    out.push(CheckRecord::new(
        "associativity",
        format!("{} random triples", triples.len()),
        failures.is_empty(),
        if failures.is_empty() {
            String::new()
        } else {
            format!("failing triples {failures:?}")
        },
    ));
    out
}

fn word(p: u32, q: u32, r: u32, s: u32) -> NCPoly {
    NCPoly::monomial(Monomial::new(p, q, r, s).expect("normal word"))
}

/// Homogeneous elements of degree `d`.
pub fn homogeneous_samples(d: i64) -> Vec<NCPoly> {
    let m = d.unsigned_abs() as u32;
    let rw = Rewriter::standard();
    let mut out = Vec::new();
    for i in 0..=m {
        let y = if d >= 0 {
            word(0, 0, i, m - i)
        } else {
            word(i, m - i, 0, 0)
        };
        out.push(y);
    }
    let mixed = if d >= 0 {
        rw.mul(&word(1, 0, 1, 0), &word(0, 0, m, 0))
    } else {
        rw.mul(&word(0, 1, 0, 0), &word(m, 0, 0, 1))
    };
    let c = NCPoly::scalar(&MuScalar::inv_linear(1) + &MuScalar::mu());
    out.push(&rw.mul(&c, &mixed) + &out[0]);
    out
}

pub fn galois_left_legs() -> Vec<NCPoly> {
    ["1", "a", "b*", "mu", "a * b*", "a^2 * b*"]
        .iter()
        .map(|s| parse_poly(s).expect("fixed sample"))
        .collect()
}

pub fn galois_round_trips(b: &Bounds) -> Vec<CheckRecord> {
    let xs = galois_left_legs();
    let mut jobs: Vec<Box<dyn Fn() -> Vec<CheckRecord> + Send + Sync>> = Vec::new();
    for x in &xs {
        for n in -b.galois_n..=b.galois_n {
            let x = x.clone();
            jobs.push(Box::new(move || vec![round_trip_a(&x, n)]));
        }
    }
    for d in -b.galois_degree..=b.galois_degree {
        for y in homogeneous_samples(d) {
            for x in xs.iter().take(3) {
                let (x, y) = (x.clone(), y.clone());
                jobs.push(Box::new(move || round_trip_b(&x, &y)));
            }
        }
    }
    let z = parse_poly("a* * a + mu").expect("fixed sample");
    for n in -b.galois_n..=b.galois_n {
        let z = z.clone();
        jobs.push(Box::new(move || {
            vec![
                left_linearity(&z, &parse_poly("b").unwrap(), n),
                ell_variants_agree(n),
            ]
        }));
    }
    jobs.par_iter().map(|j| j()).collect::<Vec<_>>().concat()
}

pub fn projector_checks(b: &Bounds) -> Vec<CheckRecord> {
    let mut out: Vec<CheckRecord> = (-b.projector_n..=b.projector_n)
        .into_par_iter()
        .map(|n| {
            let mut recs = verify_projector(n);
            let tr = trace(n);
            let want = NCPoly::scalar(MuScalar::linear(n));
            recs.push(CheckRecord::residual(
                "trace = 1 + n mu",
                format!("n={n}"),
                (&tr - &want).to_string(),
            ));
            recs
        })
        .collect::<Vec<_>>()
        .concat();
    for n in [1, -1, 2, -2] {
        out.extend(compare_explicit_matrix(n));
    }
    out
}

pub fn representation_checks(b: &Bounds) -> Vec<CheckRecord> {
    let mut out: Vec<CheckRecord> = (1..=b.rep_dim)
        .into_par_iter()
        .flat_map_iter(|dim| {
            [1, -1]
                .into_iter()
                .flat_map(move |s| check_rep_relations(&build_rep(dim, s)))
        })
        .collect();
    let forms: Vec<_> = (-b.rep_projector_n..=b.rep_projector_n)
        .map(|n| (to_sphere_form(n).expect("sphere form"), symbolic_trace(n)))
        .collect();
    let nf = forms.len();
    let combos: Vec<(usize, i32, usize)> = (1..=b.rep_projector_dim)
        .flat_map(|d| {
            [1, -1]
                .into_iter()
                .flat_map(move |s| (0..nf).map(move |i| (d, s, i)))
        })
        .collect();
    let per: Vec<Vec<CheckRecord>> = combos
        .par_iter()
        .map(|&(dim, sigma, i)| {
            let (sm, tr) = &forms[i];
            let rep = build_rep(dim, sigma);
            let param = format!("N={dim} sigma={sigma:+} n={}", sm.charge);
            match (
                rep_projector_with(&rep, sm, tr),
                is_singular(&sm.poles, dim, sigma),
            ) {
                (Ok(r), None) => r.records(),
                (Err(Error::Singular(SingularEvaluation::Linear { k })), Some(want)) => {
                    vec![CheckRecord::new(
                        "rep singular",
                        param,
                        k == want,
                        format!("1{k:+}*mu vanishes"),
                    )]
                }
                (res, want) => vec![CheckRecord::new(
                    "rep singular",
                    param,
                    false,
                    format!("predicted {want:?}, got {:?}", res.err()),
                )],
            }
        })
        .collect();
    out.extend(per.into_iter().flatten());
    for n in 1..=b.rep_projector_n.max(1) {
        let form = SphereForm::term(MuScalar::inv_linear(n), 0, 0, 0);
        let res = eval_sphere_form(&build_rep(n as usize, -1), &form);
        let ok = matches!(res, Err(Error::Singular(SingularEvaluation::Linear { k })) if k == n);
        out.push(CheckRecord::new(
            "inv(1+n mu) singular at sigma=-1, N=n",
            format!("n={n}"),
            ok,
            format!("{:?}", res.err()),
        ));
    }
    out
}

pub fn classical_checks(b: &Bounds) -> Vec<CheckRecord> {
    let c = CHERN_ORIENTATION as f64;
    let rows: Vec<CheckRecord> = (-b.chern_n..=b.chern_n)
        .into_par_iter()
        .map(|n| {
            let param = format!("n={n} grid={}", b.chern_grid);
            let tol = if n == 0 { 1e-12 } else { 1e-3 };
            match to_sphere_form(n).and_then(|sm| classical_chern_from(&sm, b.chern_grid)) {
                Ok(v) => {
                    let mut r = CheckRecord::numeric("chern - c n", param, v - c * n as f64, tol);
                    r.detail = format!("c1 = {v:.9}, {}", r.detail);
                    r
                }
                Err(e) => CheckRecord::new("chern - c n", param, false, e.to_string()),
            }
        })
        .collect();
    let mut out = vec![CheckRecord::new(
        "orientation constant",
        "",
        true,
        format!("c = {CHERN_ORIENTATION} for x = cos(t)/2, z = sin(t) e^(i f)/2"),
    )];
    out.extend(rows);
    out
}

pub fn tooling_checks(b: &Bounds) -> Vec<CheckRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xa11ce);
    let samples: Vec<NCPoly> = (0..b.round_trip_samples)
        .map(|_| random_poly(&mut rng, 4, 3))
        .collect();
    let bad: Vec<String> = samples
        .par_iter()
        .filter_map(|x| {
            let text = print_poly(x);
            match parse_poly(&text) {
                Ok(y) if y == *x && print_poly(&y) == text => None,
                Ok(y) => Some(format!("{text} -> {y}")),
                Err(e) => Some(format!("{text}: {e}")),
            }
        })
        .collect();
    let mut out = vec![CheckRecord::new(
        "print/parse round trip",
        format!("{} random polynomials", samples.len()),
        bad.is_empty(),
        bad.join("; "),
    )];
    let json: Vec<CheckRecord> = (-b.json_n..=b.json_n)
        .into_par_iter()
        .map(|n| {
            let p = projector(n);
            let words = to_json(&export_words(&p));
            let words_ok = from_json(&words)
                .and_then(|d| Ok((to_json(&d), import(&d)?)))
                .is_ok_and(|(again, imp)| again == words && imp == Imported::Words(p));
            let sphere_ok = to_sphere_form(n).is_ok_and(|sm| {
                let text = to_json(&export_sphere(&sm));
                from_json(&text)
                    .and_then(|d| Ok((to_json(&d), import(&d)?)))
                    .is_ok_and(|(again, imp)| again == text && imp == Imported::Sphere(sm))
            });
            CheckRecord::new(
                "json export/import",
                format!("n={n}"),
                words_ok && sphere_ok,
                format!("word basis {words_ok}, sphere basis {sphere_ok}"),
            )
        })
        .collect();
    out.extend(json);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suite_passes() {
        let r = run_suite(Level::Quick);
        assert!(r.pass, "{}", r.to_text());
        assert_eq!(r.sections.len(), 10);
    }

    #[test]
    fn samples_are_homogeneous() {
        for d in -3..=3 {
            for y in homogeneous_samples(d) {
                assert!(y.is_homogeneous_of(d));
            }
        }
    }
}
