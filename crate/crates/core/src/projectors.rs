//! Monopole projectors `p(uⁿ)_{kl} = ℓ⁽²⁾_k ℓ⁽¹⁾_l` built from the Hermitian
//! strong connection, their exact verification and serialisation.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{normalize, to_sphere_generators, Monomial, NCPoly, Rewriter, SphereForm};
use crate::error::Error;
use crate::galois::ell_legs;
use crate::mu::{MuScalar, RatFn, Signature};
use crate::report::CheckRecord;
use crate::scalar::{ExactScalar, Rational};
use crate::syntax::{latex_matrix, latex_poly, latex_sphere, parse_expr};

#[derive(Clone, Debug, PartialEq)]
pub struct ProjMatrix {
    pub charge: i64,
    pub entries: Vec<Vec<NCPoly>>,
}

impl ProjMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, k: usize, l: usize) -> &NCPoly {
        &self.entries[k][l]
    }

    /// Exact matrix product over `P`.
    pub fn mul(&self, other: &ProjMatrix) -> Vec<Vec<NCPoly>> {
        let rw = Rewriter::standard();
        let n = self.size();
        (0..n)
            .into_par_iter()
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut acc = NCPoly::zero();
                        for k in 0..n {
                            acc += &rw.mul(&self.entries[i][k], &other.entries[k][j]);
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    }
}

pub fn projector(n: i64) -> ProjMatrix {
    let rw = Rewriter::standard();
    let legs = ell_legs(n, true);
    let entries = legs
        .par_iter()
        .map(|(_, right_k)| {
            legs.iter()
                .map(|(left_l, _)| rw.mul(right_k, left_l))
                .collect()
        })
        .collect();
    ProjMatrix { charge: n, entries }
}

pub fn verify_projector(n: i64) -> Vec<CheckRecord> {
    let param = format!("n={n}");
    let p = projector(n);
    let sq = p.mul(&p);
    let mut idem = Vec::new();
    let mut herm = Vec::new();
    let mut coinv = true;
    for (k, sq_row) in sq.iter().enumerate() {
        for (l, sq_kl) in sq_row.iter().enumerate() {
            let d = sq_kl - p.entry(k, l);
            if !d.is_zero() {
                idem.push(format!("({k},{l}): {d}"));
            }
            let h = &p.entry(k, l).star() - p.entry(l, k);
            if !h.is_zero() {
                herm.push(format!("({k},{l}): {h}"));
            }
            coinv &= p.entry(k, l).is_homogeneous_of(0);
        }
    }
    let residual = |v: Vec<String>| {
        if v.is_empty() {
            "0".to_string()
        } else {
            v.join("; ")
        }
    };
    vec![
        CheckRecord::residual("projector idempotent", &param, residual(idem)),
        CheckRecord::residual("projector hermitian", &param, residual(herm)),
        CheckRecord::new(
            "projector coinvariant",
            &param,
            coinv,
            "all entries of degree 0",
        ),
    ]
}

pub fn trace(n: i64) -> NCPoly {
    let p = projector(n);
    let mut acc = NCPoly::zero();
    for k in 0..p.size() {
        acc += p.entry(k, k);
    }
    acc
}

/// `ϑ(p(uⁿ)_{kl}) = p(u⁻ⁿ)_{kl}` entrywise.
pub fn theta_conjugate(n: i64) -> Vec<CheckRecord> {
    let p = projector(n);
    let q = projector(-n);
    let mut bad = Vec::new();
    for k in 0..p.size() {
        for l in 0..p.size() {
            let d = &p.entry(k, l).theta() - q.entry(k, l);
            if !d.is_zero() {
                bad.push(format!("({k},{l}): {d}"));
            }
        }
    }
    vec![CheckRecord::residual(
        "theta(p(u^n)) = p(u^-n)",
        format!("n={n}"),
        if bad.is_empty() {
            "0".into()
        } else {
            bad.join("; ")
        },
    )]
}

/// Entrywise conversion to `X, Z, Z*` together with the set of `k` whose
/// `(1+kμ)^{-1}` occur.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereMatrix {
    pub charge: i64,
    pub entries: Vec<Vec<SphereForm>>,
    pub poles: BTreeSet<i64>,
}

pub fn to_sphere_form(n: i64) -> Result<SphereMatrix, Error> {
    let p = projector(n);
    let rows: Vec<Vec<SphereForm>> = p
        .entries
        .par_iter()
        .map(|row| {
            row.iter()
                .map(to_sphere_generators)
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    let poles = rows
        .iter()
        .flatten()
        .flat_map(|sf| sf.pole_indices())
        .collect();
    Ok(SphereMatrix {
        charge: n,
        entries: rows,
        poles,
    })
}

/// The explicit matrices for `n = ±1, ±2` as expressions in `X, Z, Z*`, with
/// the scalar prefactor applied to every entry.
pub fn explicit_matrix(n: i64) -> Option<(String, Vec<Vec<String>>)> {
    let s = |rows: &[&[&str]]| -> Vec<Vec<String>> {
        rows.iter()
            .map(|r| r.iter().map(|e| e.to_string()).collect())
            .collect()
    };
    match n {
        1 => Some((
            "1".into(),
            s(&[&["1/2 * (1+mu) + X", "Z"], &["Z*", "1/2 * (1+mu) - X"]]),
        )),
        -1 => Some((
            "1".into(),
            s(&[&["1/2 * (1-mu) + X", "Z*"], &["Z", "1/2 * (1-mu) - X"]]),
        )),
        2 => Some((
            "inv(1+mu)".into(),
            s(&[
                &[
                    "(X + 1/2 * (1+mu)) * (X + 1/2 * (1+3*mu))",
                    "rt(2) * (X + 1/2 * (1+3*mu)) * Z",
                    "Z^2",
                ],
                &[
                    "rt(2) * Z* * (X + 1/2 * (1+3*mu))",
                    "2 * (1/2 * (1+mu) + X) * (1/2 * (1+mu) - X)",
                    "rt(2) * (1/2 * (1+mu) - X) * Z",
                ],
                &[
                    "Z*^2",
                    "rt(2) * Z* * (1/2 * (1+mu) - X)",
                    "(1/2 * (1+mu) - X) * (1/2 * (1+3*mu) - X)",
                ],
            ]),
        )),
        -2 => Some((
            "inv(1-mu)".into(),
            s(&[
                &[
                    "(X + 1/2 * (1-mu)) * (X + 1/2 * (1-3*mu))",
                    "rt(2) * (X + 1/2 * (1-3*mu)) * Z*",
                    "Z*^2",
                ],
                &[
                    "rt(2) * Z * (X + 1/2 * (1-3*mu))",
                    "2 * (1/2 * (1-mu) + X) * (1/2 * (1-mu) - X)",
                    "rt(2) * (1/2 * (1-mu) - X) * Z*",
                ],
                &[
                    "Z^2",
                    "rt(2) * Z * (1/2 * (1-mu) - X)",
                    "(1/2 * (1-mu) - X) * (1/2 * (1-3*mu) - X)",
                ],
            ]),
        )),
        _ => None,
    }
}

/// Expands the explicit matrix and compares with [`projector`] in normal form.
pub fn compare_explicit_matrix(n: i64) -> Option<CheckRecord> {
    let (pre, rows) = explicit_matrix(n)?;
    let p = projector(n);
    let mut bad = Vec::new();
    for (k, row) in rows.iter().enumerate() {
        for (l, e) in row.iter().enumerate() {
            let text = format!("{pre} * ({e})");
            match parse_expr(&text).and_then(|x| normalize(&x)) {
                Ok(x) => {
                    let d = &x - p.entry(k, l);
                    if !d.is_zero() {
                        bad.push(format!("({k},{l}): {d}"));
                    }
                }
                Err(err) => bad.push(format!("({k},{l}): {err}")),
            }
        }
    }
    Some(CheckRecord::residual(
        "explicit matrix",
        format!("n={n}"),
        if bad.is_empty() {
            "0".into()
        } else {
            bad.join("; ")
        },
    ))
}

// ---------------------------------------------------------------------------
// Serialisation

pub const SCHEMA: &str = "qsphere-projector/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarPartDoc {
    /// `k` with a `√(1+kμ)` factor.
    pub sqrt: Vec<i64>,
    pub mu_power: i32,
    /// `[k, e]` for `(1+kμ)^{-e}`.
    pub den: Vec<(i64, u32)>,
    /// Numerator coefficients, low degree first; each a list of `[d, "q"]`
    /// for `q √d`.
    pub num: Vec<Vec<(u64, String)>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub coeff: Vec<ScalarPartDoc>,
    /// `[p, q, r, s]` for the word `(a*)^p (b*)^q b^s a^r`, or `[i, j, m]`
    /// for `X^i Z^j (Z*)^m`.
    pub exponents: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectorDoc {
    pub schema: String,
    pub charge: i64,
    pub size: usize,
    pub basis: Basis,
    pub entries: Vec<Vec<Vec<TermDoc>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Word,
    Sphere,
}

fn rational_string(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn parse_rational(s: &str) -> Result<Rational, Error> {
    let bad = || Error::InvalidDocument(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: num_bigint::BigInt = n.parse().map_err(|_| bad())?;
            let d: num_bigint::BigInt = d.parse().map_err(|_| bad())?;
            if d == 0.into() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn scalar_to_doc(c: &MuScalar) -> Vec<ScalarPartDoc> {
    c.parts()
        .map(|(sig, r)| ScalarPartDoc {
            sqrt: sig.indices().to_vec(),
            mu_power: r.mu_power(),
            den: r.denominator().iter().map(|(k, e)| (*k, *e)).collect(),
            num: r
                .numerator()
                .iter()
                .map(|x| {
                    x.terms()
                        .iter()
                        .map(|(d, q)| (*d, rational_string(q)))
                        .collect()
                })
                .collect(),
        })
        .collect()
}

pub fn scalar_from_doc(doc: &[ScalarPartDoc]) -> Result<MuScalar, Error> {
    let mut parts = Vec::new();
    for part in doc {
        let sig = Signature::new(part.sqrt.clone())
            .ok_or_else(|| Error::InvalidDocument("bad sqrt signature".into()))?;
        let mut num = Vec::new();
        for coeff in &part.num {
            let terms = coeff
                .iter()
                .map(|(d, q)| Ok((*d, parse_rational(q)?)))
                .collect::<Result<Vec<_>, Error>>()?;
            num.push(if terms.is_empty() {
                ExactScalar::zero()
            } else {
                ExactScalar::from_terms(terms)
                    .ok_or_else(|| Error::InvalidDocument("bad exact scalar".into()))?
            });
        }
        let r = RatFn::from_parts(num, part.mu_power, part.den.iter().copied().collect())
            .ok_or_else(|| Error::InvalidDocument("zero or malformed coefficient part".into()))?;
        parts.push((sig, r));
    }
    let c = MuScalar::from_parts(parts);
    if scalar_to_doc(&c) != doc {
        return Err(Error::InvalidDocument(
            "coefficient is not in canonical form".into(),
        ));
    }
    Ok(c)
}

pub fn export_words(p: &ProjMatrix) -> ProjectorDoc {
    ProjectorDoc {
        schema: SCHEMA.into(),
        charge: p.charge,
        size: p.size(),
        basis: Basis::Word,
        entries: p
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        x.terms()
                            .map(|(m, c)| TermDoc {
                                coeff: scalar_to_doc(c),
                                exponents: vec![m.p, m.q, m.r, m.s],
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect(),
    }
}

pub fn export_sphere(sm: &SphereMatrix) -> ProjectorDoc {
    ProjectorDoc {
        schema: SCHEMA.into(),
        charge: sm.charge,
        size: sm.entries.len(),
        basis: Basis::Sphere,
        entries: sm
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|sf| {
                        sf.terms()
                            .map(|((i, j, m), c)| TermDoc {
                                coeff: scalar_to_doc(c),
                                exponents: vec![*i, *j, *m],
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect(),
    }
}

/// Imported projector in whichever basis the document uses.
#[derive(Clone, Debug, PartialEq)]
pub enum Imported {
    Words(ProjMatrix),
    Sphere(SphereMatrix),
}

pub fn import(doc: &ProjectorDoc) -> Result<Imported, Error> {
    if doc.schema != SCHEMA {
        return Err(Error::InvalidDocument(format!(
            "unknown schema {:?}",
            doc.schema
        )));
    }
    if doc.entries.len() != doc.size || doc.entries.iter().any(|r| r.len() != doc.size) {
        return Err(Error::InvalidDocument(
            "matrix shape does not match size".into(),
        ));
    }
    let bad_exps = || Error::InvalidDocument("wrong number of exponents".into());
    Ok(match doc.basis {
        Basis::Word => {
            let mut entries = Vec::new();
            for row in &doc.entries {
                let mut r = Vec::new();
                for cell in row {
                    let mut terms = Vec::new();
                    for t in cell {
                        let [p, q, rr, s] = t.exponents[..] else {
                            return Err(bad_exps());
                        };
                        let m = Monomial::new(p, q, rr, s)
                            .ok_or_else(|| Error::InvalidDocument("word is not normal".into()))?;
                        terms.push((m, scalar_from_doc(&t.coeff)?));
                    }
                    r.push(NCPoly::from_terms(terms));
                }
                entries.push(r);
            }
            Imported::Words(ProjMatrix {
                charge: doc.charge,
                entries,
            })
        }
        Basis::Sphere => {
            let mut entries = Vec::new();
            for row in &doc.entries {
                let mut r = Vec::new();
                for cell in row {
                    let mut terms = Vec::new();
                    for t in cell {
                        let [i, j, m] = t.exponents[..] else {
                            return Err(bad_exps());
                        };
                        terms.push(((i, j, m), scalar_from_doc(&t.coeff)?));
                    }
                    r.push(SphereForm::from_terms(terms));
                }
                entries.push(r);
            }
            let poles = entries
                .iter()
                .flatten()
                .flat_map(|sf: &SphereForm| sf.pole_indices())
                .collect();
            Imported::Sphere(SphereMatrix {
                charge: doc.charge,
                entries,
                poles,
            })
        }
    })
}

pub fn to_json(doc: &ProjectorDoc) -> String {
    serde_json::to_string_pretty(doc).expect("projector documents always serialise")
}

pub fn from_json(text: &str) -> Result<ProjectorDoc, Error> {
    serde_json::from_str(text).map_err(|e| Error::InvalidDocument(e.to_string()))
}

fn latex_header(n: i64) -> String {
    if n == 1 {
        "p(u) = ".into()
    } else {
        format!("p(u^{{{n}}}) = ")
    }
}

pub fn latex_words(p: &ProjMatrix) -> String {
    let rows: Vec<Vec<String>> = p
        .entries
        .iter()
        .map(|r| r.iter().map(latex_poly).collect())
        .collect();
    latex_header(p.charge) + &latex_matrix(&rows)
}

pub fn latex_sphere_matrix(sm: &SphereMatrix) -> String {
    let rows: Vec<Vec<String>> = sm
        .entries
        .iter()
        .map(|r| r.iter().map(latex_sphere).collect())
        .collect();
    latex_header(sm.charge) + &latex_matrix(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::SphereGen;
    use crate::report::all_pass;
    use crate::scalar::rat;

    #[test]
    fn charge_zero_and_one() {
        assert_eq!(projector(0).entries, vec![vec![NCPoly::one()]]);
        let p = projector(1);
        let x = SphereGen::X.expand();
        let half = NCPoly::scalar(&MuScalar::from_rational(rat(1, 2)) * &MuScalar::linear(1));
        assert_eq!(p.entry(0, 0), &(&half + &x));
        assert_eq!(p.entry(0, 1), &SphereGen::Z.expand());
        assert_eq!(p.entry(1, 0), &SphereGen::ZStar.expand());
        assert_eq!(p.entry(1, 1), &(&half - &x));
    }

    #[test]
    fn low_charges_verify() {
        for n in -2..=2 {
            assert!(all_pass(&verify_projector(n)), "n={n}");
            assert!(all_pass(&theta_conjugate(n)), "n={n}");
        }
        assert_eq!(trace(1), NCPoly::scalar(MuScalar::linear(1)));
        assert_eq!(trace(-1), NCPoly::scalar(MuScalar::linear(-1)));
        assert_eq!(trace(0), NCPoly::one());
    }

    #[test]
    fn explicit_matrices() {
        for n in [1, -1, 2, -2] {
            let r = compare_explicit_matrix(n).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn sphere_form_of_charge_one() {
        let sm = to_sphere_form(1).unwrap();
        let half = &MuScalar::from_rational(rat(1, 2)) * &MuScalar::linear(1);
        assert_eq!(
            sm.entries[0][0],
            SphereForm::from_terms([((0, 0, 0), half.clone()), ((1, 0, 0), MuScalar::one())])
        );
        assert_eq!(sm.entries[0][1], SphereForm::term(MuScalar::one(), 0, 1, 0));
        assert!(sm.poles.is_empty());
    }

    #[test]
    fn json_round_trip() {
        for n in [-2, 0, 2] {
            let doc = export_words(&projector(n));
            let text = to_json(&doc);
            let back = from_json(&text).unwrap();
            assert_eq!(back, doc);
            assert_eq!(import(&back).unwrap(), Imported::Words(projector(n)));
            assert_eq!(to_json(&back), text);
            let sm = to_sphere_form(n).unwrap();
            let sdoc = export_sphere(&sm);
            assert_eq!(
                import(&from_json(&to_json(&sdoc)).unwrap()).unwrap(),
                Imported::Sphere(sm)
            );
        }
        let zero = export_words(&projector(0));
        assert_eq!(zero.size, 1);
        assert_eq!(zero.entries[0][0][0].exponents, vec![0, 0, 0, 0]);
    }

    #[test]
    fn latex_charge_one() {
        let tex = latex_sphere_matrix(&to_sphere_form(1).unwrap());
        assert!(tex.contains("\\frac{1}{2}(1+\\mu) + X & Z"), "{tex}");
        assert!(
            tex.contains("Z^{\\ast} & \\frac{1}{2}(1+\\mu) - X"),
            "{tex}"
        );
    }
}
