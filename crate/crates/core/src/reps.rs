//! Finite-dimensional `*`-representations of the 2-sphere algebra and the
//! classical point evaluation at `μ = 0`.

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use ndarray::{s, Array2};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::SphereForm;
use crate::error::Error;
use crate::mu::{MuScalar, SingularEvaluation};
use crate::projectors::{to_sphere_form, trace, SphereMatrix};
use crate::report::CheckRecord;

pub type CMatrix = Array2<Complex64>;

/// Orientation of the latitude-longitude chart used by [`classical_chern`]:
/// with `x = cos θ / 2`, `z = sin θ e^{iφ} / 2` the charge `n` projector
/// integrates to `CHERN_ORIENTATION · n`.
pub const CHERN_ORIENTATION: i64 = -1;

pub const RELATION_TOL: f64 = 1e-12;
pub const PROJECTOR_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct NumericRep {
    pub dim: usize,
    pub sigma: i32,
    pub mu: CMatrix,
    pub x: CMatrix,
    pub z: CMatrix,
    pub z_star: CMatrix,
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Basis index `i` carries the weight `m = i - (N-1)/2`.
pub fn weight(dim: usize, i: usize) -> f64 {
    i as f64 - (dim as f64 - 1.0) / 2.0
}

pub fn build_rep(dim: usize, sigma: i32) -> NumericRep {
    assert!(dim >= 1 && sigma.abs() == 1, "need N >= 1 and sigma = ±1");
    let nf = dim as f64;
    let sf = sigma as f64;
    let mut x = CMatrix::zeros((dim, dim));
    let mut z = CMatrix::zeros((dim, dim));
    let mut z_star = CMatrix::zeros((dim, dim));
    for i in 0..dim {
        let m = weight(dim, i);
        x[[i, i]] = c(sf * m / nf);
        if i > 0 {
            z[[i - 1, i]] =
                c(sf / (2.0 * nf) * ((nf + 1.0 - 2.0 * m) * (nf - 1.0 + 2.0 * m)).sqrt());
        }
        if i + 1 < dim {
            z_star[[i + 1, i]] =
                c(sf / (2.0 * nf) * ((nf - 1.0 - 2.0 * m) * (nf + 1.0 + 2.0 * m)).sqrt());
        }
    }
    NumericRep {
        dim,
        sigma,
        mu: CMatrix::eye(dim) * c(sf / nf),
        x,
        z,
        z_star,
    }
}

impl NumericRep {
    pub fn mu_value(&self) -> f64 {
        self.sigma as f64 / self.dim as f64
    }

    pub fn label(&self) -> String {
        format!("N={} sigma={:+}", self.dim, self.sigma)
    }

    pub fn eval_scalar(&self, c: &MuScalar) -> Result<f64, SingularEvaluation> {
        c.eval_ratio(self.sigma as i64, self.dim as i64)
    }
}

pub fn frobenius(m: &CMatrix) -> f64 {
    m.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

fn adjoint(m: &CMatrix) -> CMatrix {
    m.t().mapv(|v| v.conj())
}

/// Residual norms of the defining relations, the second radial relation,
/// the `*`-structure and the Casimir identity.
pub fn rep_relation_residuals(rep: &NumericRep) -> Vec<(&'static str, f64)> {
    let (mu, x, z, zs) = (&rep.mu, &rep.x, &rep.z, &rep.z_star);
    let id = CMatrix::eye(rep.dim);
    let quarter = &id * c(0.25);
    let half_mu = mu * c(0.5);
    let xp = x + &half_mu;
    let xm = x - &half_mu;
    let zzs = z.dot(zs);
    let zsz = zs.dot(z);
    let casimir_rhs = (&id - &mu.dot(mu)) * c(0.25);
    vec![
        (
            "XZ - ZX + mu Z",
            frobenius(&(x.dot(z) - z.dot(x) + mu.dot(z))),
        ),
        (
            "ZZ* - Z*Z + 2 mu X",
            frobenius(&(&zzs - &zsz + mu.dot(x) * c(2.0))),
        ),
        (
            "(X+mu/2)^2 + ZZ* - 1/4",
            frobenius(&(xp.dot(&xp) + &zzs - &quarter)),
        ),
        (
            "(X-mu/2)^2 + Z*Z - 1/4",
            frobenius(&(xm.dot(&xm) + &zsz - &quarter)),
        ),
        ("mu X - X mu", frobenius(&(mu.dot(x) - x.dot(mu)))),
        ("Z* - Z^dagger", frobenius(&(zs - &adjoint(z)))),
        ("X - X^dagger", frobenius(&(x - &adjoint(x)))),
        (
            "X^2 + (ZZ*+Z*Z)/2 - (1-mu^2)/4",
            frobenius(&(x.dot(x) + (&zzs + &zsz) * c(0.5) - casimir_rhs)),
        ),
    ]
}

pub fn check_rep_relations(rep: &NumericRep) -> Vec<CheckRecord> {
    rep_relation_residuals(rep)
        .into_iter()
        .map(|(name, v)| CheckRecord::numeric(format!("rep {name}"), rep.label(), v, RELATION_TOL))
        .collect()
}

/// Powers `M^0, M^1, …` computed on demand.
struct Powers<'a> {
    base: &'a CMatrix,
    cache: Vec<CMatrix>,
}

impl<'a> Powers<'a> {
    fn new(base: &'a CMatrix) -> Self {
        Powers {
            base,
            cache: vec![CMatrix::eye(base.nrows())],
        }
    }

    fn get(&mut self, e: u32) -> &CMatrix {
        while self.cache.len() <= e as usize {
            let next = self.cache.last().unwrap().dot(self.base);
            self.cache.push(next);
        }
        &self.cache[e as usize]
    }
}

struct Evaluator<'a> {
    rep: &'a NumericRep,
    x: Powers<'a>,
    z: Powers<'a>,
    zs: Powers<'a>,
}

impl<'a> Evaluator<'a> {
    fn new(rep: &'a NumericRep) -> Self {
        Evaluator {
            rep,
            x: Powers::new(&rep.x),
            z: Powers::new(&rep.z),
            zs: Powers::new(&rep.z_star),
        }
    }

    fn eval(&mut self, sf: &SphereForm) -> Result<CMatrix, Error> {
        let mut out = CMatrix::zeros((self.rep.dim, self.rep.dim));
        for ((i, j, m), coeff) in sf.terms() {
            let v = self.rep.eval_scalar(coeff)?;
            let word = self.x.get(*i).dot(self.z.get(*j)).dot(self.zs.get(*m));
            out.scaled_add(c(v), &word);
        }
        Ok(out)
    }
}

/// Substitutes the representation matrices for `X, Z, Z*` and the value
/// `σ/N` for `μ`.
pub fn eval_sphere_form(rep: &NumericRep, sf: &SphereForm) -> Result<CMatrix, Error> {
    Evaluator::new(rep).eval(sf)
}

/// The block matrix `p(uⁿ)` acting on `ℂ^{|n|+1} ⊗ ℂ^N`.
pub fn eval_projector(rep: &NumericRep, sm: &SphereMatrix) -> Result<CMatrix, Error> {
    let size = sm.entries.len();
    let d = rep.dim;
    let mut ev = Evaluator::new(rep);
    let mut p = CMatrix::zeros((size * d, size * d));
    for (k, row) in sm.entries.iter().enumerate() {
        for (l, sf) in row.iter().enumerate() {
            let block = ev.eval(sf)?;
            p.slice_mut(s![k * d..(k + 1) * d, l * d..(l + 1) * d])
                .assign(&block);
        }
    }
    Ok(p)
}

/// Whether `p(uⁿ)` (with the given pole set) fails to evaluate at `μ = σ/N`.
pub fn is_singular(poles: &std::collections::BTreeSet<i64>, dim: usize, sigma: i32) -> Option<i64> {
    poles
        .iter()
        .copied()
        .find(|k| dim as i64 + k * sigma as i64 == 0)
}

#[derive(Clone, Debug, Serialize)]
pub struct RepProjectorReport {
    pub dim: usize,
    pub sigma: i32,
    pub charge: i64,
    pub idempotent: f64,
    pub hermitian: f64,
    /// Full matrix trace, the rank of the projector.
    pub trace: f64,
    /// `Tr / N`, comparable with the symbolic trace at `μ = σ/N`.
    pub normalized_trace: f64,
    pub symbolic_trace: f64,
}

impl RepProjectorReport {
    pub fn records(&self) -> Vec<CheckRecord> {
        let param = format!("N={} sigma={:+} n={}", self.dim, self.sigma, self.charge);
        let rank_gap = (self.trace - self.trace.round()).abs();
        vec![
            CheckRecord::numeric("rep |p^2 - p|", &param, self.idempotent, PROJECTOR_TOL),
            CheckRecord::numeric("rep |p - p^dagger|", &param, self.hermitian, RELATION_TOL),
            CheckRecord::numeric(
                "rep Tr/N - trace(mu)",
                &param,
                self.normalized_trace - self.symbolic_trace,
                PROJECTOR_TOL,
            ),
            CheckRecord::new(
                "rep Tr integral",
                &param,
                rank_gap < PROJECTOR_TOL,
                format!(
                    "Tr = {:.12} (distance to integer {rank_gap:.3e})",
                    self.trace
                ),
            ),
        ]
    }
}

/// Numeric projector check with a precomputed sphere form and symbolic
/// trace.
pub fn rep_projector_with(
    rep: &NumericRep,
    sm: &SphereMatrix,
    symbolic_trace: &MuScalar,
) -> Result<RepProjectorReport, Error> {
    let p = eval_projector(rep, sm)?;
    let tr: f64 = p.diag().iter().map(|v| v.re).sum();
    Ok(RepProjectorReport {
        dim: rep.dim,
        sigma: rep.sigma,
        charge: sm.charge,
        idempotent: frobenius(&(p.dot(&p) - &p)),
        hermitian: frobenius(&(&p - &adjoint(&p))),
        trace: tr,
        normalized_trace: tr / rep.dim as f64,
        symbolic_trace: rep.eval_scalar(symbolic_trace)?,
    })
}

pub fn symbolic_trace(n: i64) -> MuScalar {
    trace(n).as_scalar().expect("projector traces are scalars")
}

pub fn rep_projector_check(rep: &NumericRep, n: i64) -> Result<RepProjectorReport, Error> {
    let sm = to_sphere_form(n)?;
    rep_projector_with(rep, &sm, &symbolic_trace(n))
}

// ---------------------------------------------------------------------------
// Classical limit

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassicalPoint {
    pub x: f64,
    pub z: Complex64,
}

impl ClassicalPoint {
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        ClassicalPoint {
            x: 0.5 * theta.cos(),
            z: Complex64::from_polar(0.5 * theta.sin(), phi),
        }
    }

    pub fn radial_residual(&self) -> f64 {
        (self.x * self.x + self.z.norm_sqr() - 0.25).abs()
    }
}

/// A sphere form at `μ = 0` as `(coefficient, i, j, m)`.
type ClassicalForm = Vec<(f64, u32, u32, u32)>;

fn classical_form(sf: &SphereForm) -> Result<ClassicalForm, Error> {
    sf.terms()
        .map(|((i, j, m), coeff)| Ok((coeff.eval_ratio(0, 1)?, *i, *j, *m)))
        .collect()
}

fn powi(z: Complex64, e: u32) -> Complex64 {
    z.powu(e)
}

/// Value and `θ`, `φ` derivatives of a classical form on the chart.
fn eval_classical(form: &ClassicalForm, theta: f64, phi: f64) -> [Complex64; 3] {
    let pt = ClassicalPoint::from_angles(theta, phi);
    let (x, z) = (pt.x, pt.z);
    let zb = z.conj();
    let x_t = -0.5 * theta.sin();
    let z_t = Complex64::from_polar(0.5 * theta.cos(), phi);
    let zb_t = z_t.conj();
    let i_unit = Complex64::i();
    let mut out = [Complex64::default(); 3];
    for &(coeff, i, j, m) in form {
        let xi = x.powi(i as i32);
        let zj = powi(z, j);
        let zm = powi(zb, m);
        let val = coeff * xi * zj * zm;
        let mut d_t = Complex64::default();
        if i > 0 {
            d_t += coeff * i as f64 * x.powi(i as i32 - 1) * x_t * zj * zm;
        }
        if j > 0 {
            d_t += coeff * xi * j as f64 * powi(z, j - 1) * z_t * zm;
        }
        if m > 0 {
            d_t += coeff * xi * zj * m as f64 * powi(zb, m - 1) * zb_t;
        }
        out[0] += val;
        out[1] += d_t;
        out[2] += val * i_unit * (j as f64 - m as f64);
    }
    out
}

/// `(1/2πi) ∫ tr(p [∂_θ p, ∂_φ p]) dθ dφ` with `grid` Gauss-Legendre nodes in
/// `θ` and `grid` uniform nodes in `φ`, returned without rounding.
pub fn classical_chern_raw(n: i64, grid: usize) -> Result<f64, Error> {
    let sm = to_sphere_form(n)?;
    classical_chern_from(&sm, grid)
}

pub fn classical_chern_from(sm: &SphereMatrix, grid: usize) -> Result<f64, Error> {
    let grid = NonZeroUsize::new(grid).ok_or(Error::GridTooCoarse(f64::NAN))?;
    let size = sm.entries.len();
    let forms = sm
        .entries
        .iter()
        .map(|row| {
            row.iter()
                .map(classical_form)
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let rule = GaussLegendre::new(grid);
    let nodes = rule.as_node_weight_pairs();
    let dphi = 2.0 * PI / grid.get() as f64;
    let rows: Vec<Complex64> = nodes
        .par_iter()
        .map(|&(t, w)| {
            let theta = 0.5 * PI * (t + 1.0);
            let w_theta = 0.5 * PI * w;
            let mut acc = Complex64::default();
            for jp in 0..grid.get() {
                let phi = jp as f64 * dphi;
                let mut p = CMatrix::zeros((size, size));
                let mut pt = CMatrix::zeros((size, size));
                let mut pp = CMatrix::zeros((size, size));
                for k in 0..size {
                    for l in 0..size {
                        let [v, dt, dp] = eval_classical(&forms[k][l], theta, phi);
                        p[[k, l]] = v;
                        pt[[k, l]] = dt;
                        pp[[k, l]] = dp;
                    }
                }
                let comm = pt.dot(&pp) - pp.dot(&pt);
                acc += p.dot(&comm).diag().sum() * w_theta * dphi;
            }
            acc
        })
        .collect();
    let total: Complex64 = rows.iter().sum();
    Ok((total / Complex64::new(0.0, 2.0 * PI)).re)
}

/// First Chern number of the classical charge-`n` projector; fails with
/// [`Error::GridTooCoarse`] when the quadrature is not within 0.1 of an
/// integer.
pub fn classical_chern(n: i64, grid: usize) -> Result<f64, Error> {
    let v = classical_chern_raw(n, grid)?;
    if (v - v.round()).abs() > 0.1 {
        return Err(Error::GridTooCoarse(v));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::all_pass;

    #[test]
    fn small_reps() {
        let r1 = build_rep(1, 1);
        assert_eq!(r1.x[[0, 0]], c(0.0));
        assert_eq!(r1.z[[0, 0]], c(0.0));
        assert_eq!(r1.mu[[0, 0]], c(1.0));
        let r2 = build_rep(2, 1);
        assert_eq!(r2.mu_value(), 0.5);
        assert_eq!(r2.x[[0, 0]], c(-0.25));
        assert_eq!(r2.x[[1, 1]], c(0.25));
        assert_eq!(r2.z[[0, 1]], c(0.5));
        assert_eq!(r2.z_star[[1, 0]], c(0.5));
        let cas = r2.x.dot(&r2.x) + (r2.z.dot(&r2.z_star) + r2.z_star.dot(&r2.z)) * c(0.5);
        assert!((cas[[0, 0]].re - 3.0 / 16.0).abs() < 1e-15);
        for (_, v) in rep_relation_residuals(&r1) {
            assert_eq!(v, 0.0);
        }
        for n in 1..=20 {
            for s in [1, -1] {
                assert!(all_pass(&check_rep_relations(&build_rep(n, s))));
            }
        }
    }

    #[test]
    fn sphere_form_evaluation() {
        let r2 = build_rep(2, 1);
        let x = SphereForm::term(MuScalar::one(), 1, 0, 0);
        assert_eq!(eval_sphere_form(&r2, &x).unwrap(), r2.x);
        let one = SphereForm::term(MuScalar::one(), 0, 0, 0);
        assert_eq!(eval_sphere_form(&r2, &one).unwrap(), CMatrix::eye(2));
        for n in 1..6 {
            let form = SphereForm::term(MuScalar::inv_linear(n), 0, 0, 0);
            let err = eval_sphere_form(&build_rep(n as usize, -1), &form).unwrap_err();
            assert!(matches!(err, Error::Singular(SingularEvaluation::Linear { k }) if k == n));
            assert!(eval_sphere_form(&build_rep(n as usize, 1), &form).is_ok());
        }
    }

    #[test]
    fn projector_charge_one_trace() {
        let rep = rep_projector_check(&build_rep(2, 1), 1).unwrap();
        assert!((rep.normalized_trace - 1.5).abs() < 1e-12);
        assert!((rep.trace - 3.0).abs() < 1e-12);
        assert!(all_pass(&rep.records()));
        let zero = rep_projector_check(&build_rep(4, -1), 0).unwrap();
        assert_eq!(zero.idempotent, 0.0);
        assert!(rep_projector_check(&build_rep(3, 1), 2).unwrap().idempotent < 1e-10);
    }

    #[test]
    fn singular_projectors_are_predicted() {
        let sm = to_sphere_form(3).unwrap();
        for dim in 1..5 {
            for sigma in [1, -1] {
                let res = eval_projector(&build_rep(dim, sigma), &sm);
                match is_singular(&sm.poles, dim, sigma) {
                    Some(k) => assert!(
                        matches!(res, Err(Error::Singular(SingularEvaluation::Linear { k: kk })) if kk == k)
                    ),
                    None => assert!(res.is_ok()),
                }
            }
        }
    }

    #[test]
    fn classical_points_and_chern() {
        let pt = ClassicalPoint::from_angles(0.7, 2.1);
        assert!(pt.radial_residual() < 1e-15);
        assert_eq!(classical_chern(0, 10).unwrap(), 0.0);
        let c1 = classical_chern(1, 40).unwrap();
        assert!((c1 - CHERN_ORIENTATION as f64).abs() < 1e-3, "{c1}");
    }
}
