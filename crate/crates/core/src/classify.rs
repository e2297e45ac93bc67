//! Vector-field classes and Ricci-tensor forms.
//!
//! Fits work on per-point tensor data ([`FieldSample`]) so they can be fed
//! from a spacetime model or from synthetic tensors. Derivatives are stored
//! with the derivative index first: `dv[k][h] = ∇_k v_h`.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::geometry::FieldAtPoint;
use crate::spacetimes::SpacetimeModel;
use crate::ssmc::{SsmcError, SsmcPoint, UNIT_TOL};
use crate::tensor::{DenseTensor, Variance};

use Variance::Lower;

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("field is not unit timelike: g(v, v) = {norm_squared}")]
    NotUnitTimelike { norm_squared: f64 },
    #[error("undetermined: {0}")]
    Undetermined(String),
    #[error("Ricci tensor vanishes; perfect-fluid decomposition is degenerate")]
    DegenerateRicci,
    #[error("equation of state extraction needs dimension 4, got {0}")]
    UnsupportedDimension(usize),
    #[error("gravitational constant must be positive, got {0}")]
    InvalidKappa(f64),
    #[error("no sample points")]
    NoPoints,
    #[error(transparent)]
    Ssmc(#[from] SsmcError),
}

/// Which connection differentiates the field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Connection {
    LeviCivita,
    Ssmc,
}

impl Connection {
    pub fn name(self) -> &'static str {
        match self {
            Connection::LeviCivita => "levi-civita",
            Connection::Ssmc => "ssmc",
        }
    }
}

/// Torse-forming ansatz: `φ(g + v⊗v)` for unit timelike `v`, or the general
/// `∇_k v_h = ω_k v_h + φ g_{kh}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorseForm {
    Unit,
    General,
}

/// Field data at one point.
#[derive(Debug, Clone)]
pub struct FieldSample {
    pub g: DenseTensor,
    pub g_inv: DenseTensor,
    pub v_up: Vec<f64>,
    pub v_cov: Vec<f64>,
    /// `∇_k v_h`
    pub dv: DenseTensor,
}

impl FieldSample {
    pub fn from_ssmc_point(s: &SsmcPoint, connection: Connection) -> Self {
        let dv = match connection {
            Connection::LeviCivita => s.lc_derivative(),
            Connection::Ssmc => s.ssmc_derivative(),
        };
        Self {
            g: s.metric.g.clone(),
            g_inv: s.metric.g_inv.clone(),
            v_up: s.xi().contravariant.clone(),
            v_cov: s.xi().covariant.clone(),
            dv,
        }
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn norm_squared(&self) -> f64 {
        dot(&self.v_up, &self.v_cov)
    }

    fn v_tensor(&self) -> DenseTensor {
        DenseTensor::from_data(self.dim(), &[Lower], self.v_cov.clone()).expect("n components")
    }

    /// `g + v⊗v`
    pub fn spatial_projector(&self) -> DenseTensor {
        let v = self.v_tensor();
        self.g.add(&v.outer(&v)).expect("same shape")
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn check_unit(norm_squared: f64) -> Result<(), ClassifyError> {
    if (norm_squared + 1.0).abs() > UNIT_TOL {
        return Err(ClassifyError::NotUnitTimelike { norm_squared });
    }
    Ok(())
}

/// Result of a fit at one point.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PointFit {
    pub scalars: BTreeMap<String, f64>,
    pub omega: Option<Vec<f64>>,
    pub residual: f64,
}

impl PointFit {
    pub fn scalar(&self, name: &str) -> f64 {
        self.scalars[name]
    }
}

/// Result of a fit over sample points.
#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    pub class_name: String,
    /// scalars shared by all points
    pub scalars: BTreeMap<String, f64>,
    pub points: Vec<PointFit>,
    /// largest per-point residual
    pub residual: f64,
}

impl FitReport {
    fn from_points(class_name: &str, scalars: BTreeMap<String, f64>, points: Vec<PointFit>) -> Self {
        let residual = points.iter().map(|p| p.residual).fold(0.0, f64::max);
        Self {
            class_name: class_name.to_string(),
            scalars,
            points,
            residual,
        }
    }
}

/// Torse-forming fit at a single point.
pub fn torse_forming_point(s: &FieldSample, form: TorseForm) -> Result<PointFit, ClassifyError> {
    let n = s.dim();
    match form {
        TorseForm::Unit => {
            check_unit(s.norm_squared())?;
            let p = s.spatial_projector();
            let phi = s.dv.dot(&p) / p.dot(&p);
            let residual = s.dv.add_scaled(-phi, &p).expect("same shape").norm();
            Ok(PointFit {
                scalars: BTreeMap::from([("phi".to_string(), phi)]),
                omega: None,
                residual,
            })
        }
        TorseForm::General => {
            // unknowns (ω_0..ω_{n-1}, φ); equations ω_k v_h + φ g_kh = dv_kh
            let mut a = DMatrix::<f64>::zeros(n * n, n + 1);
            let mut b = DVector::<f64>::zeros(n * n);
            for k in 0..n {
                for h in 0..n {
                    let row = k * n + h;
                    a[(row, k)] = s.v_cov[h];
                    a[(row, n)] = s.g.get(&[k, h]);
                    b[row] = s.dv.get(&[k, h]);
                }
            }
            let svd = a.svd(true, true);
            let smax = svd.singular_values.max();
            if svd.rank(1e-12 * smax.max(1.0)) < n + 1 {
                return Err(ClassifyError::Undetermined("torse-forming system is rank deficient".into()));
            }
            let x = svd.solve(&b, 1e-14).map_err(|e| ClassifyError::Undetermined(e.to_string()))?;
            let omega: Vec<f64> = (0..n).map(|k| x[k]).collect();
            let phi = x[n];
            let model = DenseTensor::from_fn(n, &[Lower, Lower], |i| omega[i[0]] * s.v_cov[i[1]] + phi * s.g.get(i));
            let residual = s.dv.sub(&model).expect("same shape").norm();
            Ok(PointFit {
                scalars: BTreeMap::from([("phi".to_string(), phi)]),
                omega: Some(omega),
                residual,
            })
        }
    }
}

/// Torse-forming fit of a model field at the given points.
pub fn torse_forming_fit(
    model: &SpacetimeModel,
    field: &str,
    connection: Connection,
    points: &[Vec<f64>],
    form: TorseForm,
) -> Result<FitReport, ClassifyError> {
    let fits = points
        .iter()
        .map(|p| {
            let s = SsmcPoint::build(model, p, field)?;
            torse_forming_point(&FieldSample::from_ssmc_point(&s, connection), form)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FitReport::from_points(
        &format!("torse-forming ({})", connection.name()),
        BTreeMap::new(),
        fits,
    ))
}

/// `∂_i ω_j − ∂_j ω_i` of the general torse-forming form by central differences.
pub fn omega_curl_fd(
    model: &SpacetimeModel,
    field: &str,
    connection: Connection,
    point: &[f64],
    step: f64,
) -> Result<DenseTensor, ClassifyError> {
    let n = point.len();
    let omega_at = |q: &[f64]| -> Result<Vec<f64>, ClassifyError> {
        let s = SsmcPoint::build(model, q, field)?;
        let fit = torse_forming_point(&FieldSample::from_ssmc_point(&s, connection), TorseForm::General)?;
        Ok(fit.omega.expect("general form fits ω"))
    };
    let mut d = vec![0.0; n * n];
    for i in 0..n {
        let mut up = point.to_vec();
        let mut dn = point.to_vec();
        up[i] += step;
        dn[i] -= step;
        let (wp, wm) = (omega_at(&up)?, omega_at(&dn)?);
        for j in 0..n {
            d[i * n + j] = (wp[j] - wm[j]) / (2.0 * step);
        }
    }
    Ok(DenseTensor::from_fn(n, &[Lower, Lower], |x| d[x[0] * n + x[1]] - d[x[1] * n + x[0]]))
}

/// Outcome of the concircularity test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcircularVerdict {
    pub concircular: bool,
    pub torse_residual: f64,
    pub closedness_defect: f64,
}

/// Concircular iff the field is torse-forming and its form `ω` is closed.
pub fn concircular_check(torse_residual: f64, omega_curl: &DenseTensor, tol: f64) -> ConcircularVerdict {
    let closedness_defect = omega_curl.norm();
    ConcircularVerdict {
        concircular: torse_residual <= tol && closedness_defect <= tol,
        torse_residual,
        closedness_defect,
    }
}

/// Torqued fit `∇_k v_h = f g_{kh} + ω_k v_h` with one `f` for all points.
///
/// `ω` is first fitted freely at each point; `omega` in each [`PointFit`] is
/// its projection onto `ω_k v^k = 0`. Per-point scalars: `orthogonality_defect`
/// (`|ω_k v^k|` of the free fit), `free_residual` (with the free `ω`); the
/// point `residual` uses the projected `ω`.
pub fn torqued_fit(samples: &[FieldSample]) -> Result<FitReport, ClassifyError> {
    if samples.is_empty() {
        return Err(ClassifyError::NoPoints);
    }
    // remove the span of {e^a ⊗ v} row by row, then fit f
    let strip = |x: &DenseTensor, v: &[f64]| -> DenseTensor {
        let vv = dot(v, v);
        if vv == 0.0 {
            return x.clone();
        }
        let n = v.len();
        DenseTensor::from_fn(n, &[Lower, Lower], |i| {
            let row: f64 = (0..n).map(|h| x.get(&[i[0], h]) * v[h]).sum();
            x.get(i) - row / vv * v[i[1]]
        })
    };
    let (mut num, mut den) = (0.0, 0.0);
    for s in samples {
        let pd = strip(&s.dv, &s.v_cov);
        let pg = strip(&s.g, &s.v_cov);
        num += pd.dot(&pg);
        den += pg.dot(&pg);
    }
    if den <= f64::MIN_POSITIVE {
        return Err(ClassifyError::Undetermined("metric lies in the span of ω⊗v".into()));
    }
    let f = num / den;
    let points = samples
        .iter()
        .map(|s| {
            let n = s.dim();
            let rest = s.dv.add_scaled(-f, &s.g).expect("same shape");
            let vv = dot(&s.v_cov, &s.v_cov);
            let omega: Vec<f64> = (0..n)
                .map(|k| {
                    if vv == 0.0 {
                        0.0
                    } else {
                        (0..n).map(|h| rest.get(&[k, h]) * s.v_cov[h]).sum::<f64>() / vv
                    }
                })
                .collect();
            let along = dot(&omega, &s.v_up);
            let norm_squared = s.norm_squared();
            let omega_perp: Vec<f64> = if norm_squared.abs() > 1e-14 {
                omega.iter().zip(&s.v_cov).map(|(w, v)| w - along / norm_squared * v).collect()
            } else {
                omega.clone()
            };
            let form = |w: &[f64]| {
                DenseTensor::from_fn(n, &[Lower, Lower], |i| w[i[0]] * s.v_cov[i[1]])
            };
            let free_residual = rest.sub(&form(&omega)).expect("same shape").norm();
            let residual = rest.sub(&form(&omega_perp)).expect("same shape").norm();
            PointFit {
                scalars: BTreeMap::from([
                    ("orthogonality_defect".to_string(), along.abs()),
                    ("free_residual".to_string(), free_residual),
                ]),
                omega: Some(omega_perp),
                residual,
            }
        })
        .collect();
    Ok(FitReport::from_points(
        "torqued",
        BTreeMap::from([("f".to_string(), f)]),
        points,
    ))
}

/// f-Ric fit `∇_k v_h = f R_{hk}` with one `f` for all points.
pub fn fric_fit(samples: &[(DenseTensor, DenseTensor)]) -> Result<FitReport, ClassifyError> {
    if samples.is_empty() {
        return Err(ClassifyError::NoPoints);
    }
    let den: f64 = samples.iter().map(|(_, r)| r.dot(r)).sum();
    let scale: f64 = samples.iter().map(|(d, _)| d.dot(d)).sum::<f64>().max(1.0);
    if den <= 1e-24 * scale {
        return Err(ClassifyError::Undetermined("Ricci tensor vanishes at every point; f is undetermined".into()));
    }
    // ∇_k v_h against R_{hk}: transpose the Ricci tensor to the derivative layout
    let transposed: Vec<DenseTensor> = samples.iter().map(|(_, r)| r.permute(&[1, 0]).expect("rank 2")).collect();
    let num: f64 = samples.iter().zip(&transposed).map(|((d, _), r)| d.dot(r)).sum();
    let f = num / den;
    let points = samples
        .iter()
        .zip(&transposed)
        .map(|((d, _), r)| PointFit {
            scalars: BTreeMap::new(),
            omega: None,
            residual: d.add_scaled(-f, r).expect("same shape").norm(),
        })
        .collect();
    Ok(FitReport::from_points("f-ric", BTreeMap::from([("f".to_string(), f)]), points))
}

/// Perfect-fluid decomposition `R_{hk} = α g_{hk} + β v_h v_k` at one point.
///
/// Scalars: `alpha`, `beta`, `q = R_{hk} v^h v^k`, `scalar = g^{hk} R_{hk}`,
/// and `einstein` (1 when `|β| ≤ 1e-9 max(1, |α|)`).
pub fn pf_decompose(ricci: &DenseTensor, g: &DenseTensor, g_inv: &DenseTensor, v_up: &[f64], v_cov: &[f64]) -> Result<PointFit, ClassifyError> {
    let n = g.dim();
    check_unit(dot(v_up, v_cov))?;
    if ricci.norm() <= 1e-12 * g.norm().max(1.0) {
        return Err(ClassifyError::DegenerateRicci);
    }
    let mut q = 0.0;
    for h in 0..n {
        for k in 0..n {
            q += ricci.get(&[h, k]) * v_up[h] * v_up[k];
        }
    }
    let scalar = ricci.contract(0, 1, Some(g_inv)).expect("inverse metric").value();
    let alpha = (scalar + q) / (n as f64 - 1.0);
    let beta = q + alpha;
    let model = DenseTensor::from_fn(n, &[Lower, Lower], |i| alpha * g.get(i) + beta * v_cov[i[0]] * v_cov[i[1]]);
    let residual = ricci.sub(&model).expect("same shape").norm();
    let einstein = if beta.abs() <= 1e-9 * alpha.abs().max(1.0) { 1.0 } else { 0.0 };
    Ok(PointFit {
        scalars: BTreeMap::from([
            ("alpha".to_string(), alpha),
            ("beta".to_string(), beta),
            ("q".to_string(), q),
            ("scalar".to_string(), scalar),
            ("einstein".to_string(), einstein),
        ]),
        omega: None,
        residual,
    })
}

/// Pressure and energy density of a four-dimensional perfect fluid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EosPoint {
    pub p: f64,
    pub sigma: f64,
}

impl EosPoint {
    /// `κ²(3p − 2σ)`
    pub fn combination(&self, kappa: f64) -> f64 {
        kappa * kappa * (3.0 * self.p - 2.0 * self.sigma)
    }
}

/// Inverts `β = κ²(p + σ)`, `α = κ²(p − σ)/(2 − n)` at `n = 4`.
pub fn eos_extract(alpha: f64, beta: f64, kappa: f64, n: usize) -> Result<EosPoint, ClassifyError> {
    if n != 4 {
        return Err(ClassifyError::UnsupportedDimension(n));
    }
    if !(kappa > 0.0) {
        return Err(ClassifyError::InvalidKappa(kappa));
    }
    let k2 = kappa * kappa;
    Ok(EosPoint {
        p: (beta - 2.0 * alpha) / (2.0 * k2),
        sigma: (beta + 2.0 * alpha) / (2.0 * k2),
    })
}

/// `(α, β)` from `(p, σ)`: the forward map inverted by [`eos_extract`].
pub fn eos_forward(p: f64, sigma: f64, kappa: f64, n: usize) -> (f64, f64) {
    let k2 = kappa * kappa;
    (k2 * (p - sigma) / (2.0 - n as f64), k2 * (p + sigma))
}

/// Equation-of-state data over sample points.
#[derive(Debug, Clone, PartialEq)]
pub struct EosReport {
    pub kappa: f64,
    pub points: Vec<EosPoint>,
    /// `κ²(3p − 2σ)` per point
    pub combination: Vec<f64>,
    /// spread `max − min` of the combination
    pub constancy_defect: f64,
}

pub fn eos_report(pairs: &[(f64, f64)], kappa: f64, n: usize) -> Result<EosReport, ClassifyError> {
    if pairs.is_empty() {
        return Err(ClassifyError::NoPoints);
    }
    let points = pairs
        .iter()
        .map(|&(a, b)| eos_extract(a, b, kappa, n))
        .collect::<Result<Vec<_>, _>>()?;
    let combination: Vec<f64> = points.iter().map(|p| p.combination(kappa)).collect();
    let hi = combination.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = combination.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(EosReport {
        kappa,
        points,
        combination,
        constancy_defect: hi - lo,
    })
}

/// Eigenvector, geodesic and closedness defects of a field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuxiliaryReport {
    /// `‖R_{hk} v^h − μ v_k‖` with `μ = −R_{hk} v^h v^k`
    pub eigenvector_defect: f64,
    /// `‖v^h D_h v_k‖`
    pub geodesic_defect_lc: f64,
    /// `‖v^h ∇̄_h v_k‖`
    pub geodesic_defect_ssmc: f64,
    /// `‖∂_i v_j − ∂_j v_i‖`
    pub closedness_defect: f64,
}

pub fn auxiliary_checks(ricci: &DenseTensor, v_up: &[f64], v_cov: &[f64], lc_dv: &DenseTensor, ssmc_dv: &DenseTensor, curl: &DenseTensor) -> AuxiliaryReport {
    let n = v_up.len();
    let rv: Vec<f64> = (0..n).map(|k| (0..n).map(|h| ricci.get(&[h, k]) * v_up[h]).sum()).collect();
    let mu = -dot(&rv, v_up);
    let eigenvector_defect = rv.iter().zip(v_cov).map(|(r, v)| (r - mu * v).powi(2)).sum::<f64>().sqrt();
    let along = |d: &DenseTensor| {
        (0..n)
            .map(|k| (0..n).map(|h| v_up[h] * d.get(&[h, k])).sum::<f64>().powi(2))
            .sum::<f64>()
            .sqrt()
    };
    AuxiliaryReport {
        eigenvector_defect,
        geodesic_defect_lc: along(lc_dv),
        geodesic_defect_ssmc: along(ssmc_dv),
        closedness_defect: curl.norm(),
    }
}

/// [`auxiliary_checks`] on model data.
pub fn auxiliary_checks_at(s: &SsmcPoint) -> AuxiliaryReport {
    let xi: &FieldAtPoint = s.xi();
    auxiliary_checks(
        &s.lc_curvature.ricci,
        &xi.contravariant,
        &xi.covariant,
        &s.lc_derivative(),
        &s.ssmc_derivative(),
        &xi.curl(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spacetimes::{catalog, sample_points, Fiber};
    use proptest::prelude::*;

    fn minkowski_g(n: usize) -> (DenseTensor, DenseTensor) {
        let g = DenseTensor::from_fn(n, &[Lower, Lower], |i| match (i[0], i[1]) {
            (0, 0) => -1.0,
            (a, b) if a == b => 1.0,
            _ => 0.0,
        });
        let gi = DenseTensor::from_fn(n, &[Variance::Upper, Variance::Upper], |i| g.get(i));
        (g, gi)
    }

    fn sample(dv: DenseTensor) -> FieldSample {
        let (g, g_inv) = minkowski_g(4);
        FieldSample {
            g,
            g_inv,
            v_up: vec![1.0, 0.0, 0.0, 0.0],
            v_cov: vec![-1.0, 0.0, 0.0, 0.0],
            dv,
        }
    }

    #[test]
    fn grw_comoving_field_is_torse_forming() {
        let model = catalog::grw(4, "exp(t)", Fiber::Flat).unwrap();
        let pts = sample_points(&model, 20, 5).unwrap().points;
        let lc = torse_forming_fit(&model, "dt", Connection::LeviCivita, &pts, TorseForm::Unit).unwrap();
        let ssmc = torse_forming_fit(&model, "dt", Connection::Ssmc, &pts, TorseForm::Unit).unwrap();
        assert!(lc.residual < 1e-10);
        assert!(ssmc.residual < 1e-10);
        for (a, b) in lc.points.iter().zip(&ssmc.points) {
            assert!((a.scalar("phi") - 1.0).abs() < 1e-10);
            assert!(b.scalar("phi").abs() < 1e-10);
        }
    }

    #[test]
    fn minkowski_comoving_under_ssmc() {
        let model = catalog::minkowski(4).unwrap();
        let pts = sample_points(&model, 5, 1).unwrap().points;
        let fit = torse_forming_fit(&model, "dt", Connection::Ssmc, &pts, TorseForm::Unit).unwrap();
        assert!(fit.residual < 1e-14);
        assert!(fit.points.iter().all(|p| (p.scalar("phi") + 1.0).abs() < 1e-14));
    }

    #[test]
    fn unit_form_rejects_non_unit_field() {
        let mut s = sample(DenseTensor::zeros(4, &[Lower, Lower]));
        s.v_up = vec![2.0, 0.0, 0.0, 0.0];
        s.v_cov = vec![-2.0, 0.0, 0.0, 0.0];
        assert!(matches!(torse_forming_point(&s, TorseForm::Unit), Err(ClassifyError::NotUnitTimelike { .. })));
    }

    #[test]
    fn general_form_recovers_omega_and_phi() {
        let omega = [0.3, -0.2, 0.5, 0.1];
        let (g, _) = minkowski_g(4);
        let v = [-1.0, 0.0, 0.0, 0.0];
        let dv = DenseTensor::from_fn(4, &[Lower, Lower], |i| omega[i[0]] * v[i[1]] + 0.7 * g.get(i));
        let fit = torse_forming_point(&sample(dv), TorseForm::General).unwrap();
        assert!((fit.scalar("phi") - 0.7).abs() < 1e-12);
        for (a, b) in fit.omega.unwrap().iter().zip(omega) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!(fit.residual < 1e-12);
    }

    #[test]
    fn concircular_examples() {
        // ω = x dt + t dx = d(tx) is closed, ω = x dt is not
        let closed = DenseTensor::zeros(4, &[Lower, Lower]);
        assert!(concircular_check(0.0, &closed, 1e-9).concircular);
        let mut curl = DenseTensor::zeros(4, &[Lower, Lower]);
        curl.set(&[1, 0], 1.0);
        curl.set(&[0, 1], -1.0);
        let verdict = concircular_check(0.0, &curl, 1e-9);
        assert!(!verdict.concircular);
        assert!((verdict.closedness_defect - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn comoving_form_is_closed_by_finite_differences() {
        let model = catalog::grw(4, "cosh(t)", Fiber::Flat).unwrap();
        let curl = omega_curl_fd(&model, "dt", Connection::LeviCivita, &[0.5, 0.1, 0.2, 0.3], 1e-4).unwrap();
        assert!(curl.norm() < 1e-6);
    }

    #[test]
    fn torqued_recovers_constructed_input() {
        let (g, _) = minkowski_g(4);
        let omega = [0.0, 1.0, 0.0, 0.0];
        let v = [-1.0, 0.0, 0.0, 0.0];
        let dv = DenseTensor::from_fn(4, &[Lower, Lower], |i| 2.0 * g.get(i) + omega[i[0]] * v[i[1]]);
        let fit = torqued_fit(&[sample(dv)]).unwrap();
        assert!((fit.scalars["f"] - 2.0).abs() < 1e-12);
        for (a, b) in fit.points[0].omega.as_ref().unwrap().iter().zip(omega) {
            assert!((a - b).abs() < 1e-10);
        }
        assert!(fit.residual < 1e-12);
    }

    #[test]
    fn torqued_projection_kills_omega_along_v() {
        // ∇v = −(g + v⊗v): f = −1, free ω = −v, projected ω = 0
        let (g, _) = minkowski_g(4);
        let v = [-1.0, 0.0, 0.0, 0.0];
        let dv = DenseTensor::from_fn(4, &[Lower, Lower], |i| -(g.get(i) + v[i[0]] * v[i[1]]));
        let fit = torqued_fit(&[sample(dv.clone())]).unwrap();
        assert!((fit.scalars["f"] + 1.0).abs() < 1e-12);
        let p = &fit.points[0];
        assert!(p.omega.as_ref().unwrap().iter().all(|w| w.abs() < 1e-12));
        assert!((p.scalar("orthogonality_defect") - 1.0).abs() < 1e-12);
        assert!(p.scalar("free_residual") < 1e-12);
        // self-consistency of the reported residual
        let rebuilt = dv.add_scaled(1.0, &g).unwrap();
        assert!((rebuilt.norm() - p.residual).abs() < 1e-12);
    }

    #[test]
    fn fric_examples() {
        let model = catalog::de_sitter(4).unwrap();
        let s = SsmcPoint::build(&model, &[0.5, 0.1, 0.2, 0.3], "dt").unwrap();
        let ric = s.lc_curvature.ricci.clone();
        let fit = fric_fit(&[(ric.scale(3.0), ric.clone())]).unwrap();
        assert!((fit.scalars["f"] - 3.0).abs() < 1e-12);
        assert!(fit.residual < 1e-9);
        let zero = DenseTensor::zeros(4, &[Lower, Lower]);
        let fit = fric_fit(&[(zero.clone(), ric)]).unwrap();
        assert_eq!(fit.scalars["f"], 0.0);
        assert_eq!(fit.residual, 0.0);
        assert!(matches!(fric_fit(&[(ric_like(), zero)]), Err(ClassifyError::Undetermined(_))));
    }

    fn ric_like() -> DenseTensor {
        DenseTensor::from_fn(4, &[Lower, Lower], |i| (i[0] + i[1]) as f64)
    }

    #[test]
    fn pf_examples() {
        let (g, gi) = minkowski_g(4);
        let v_up = [1.0, 0.0, 0.0, 0.0];
        let v = [-1.0, 0.0, 0.0, 0.0];
        let fit = pf_decompose(&g.scale(5.0), &g, &gi, &v_up, &v).unwrap();
        assert!((fit.scalar("alpha") - 5.0).abs() < 1e-14);
        assert!(fit.scalar("beta").abs() < 1e-14);
        assert_eq!(fit.scalar("einstein"), 1.0);
        // printed-chain Ricci at n = 4, φ = −1
        let phi = -1.0;
        let ric = DenseTensor::from_fn(4, &[Lower, Lower], |i| {
            (3.0 * (2.0 * phi - 1.0) - phi) * g.get(i) + 2.0 * phi * v[i[0]] * v[i[1]]
        });
        let fit = pf_decompose(&ric, &g, &gi, &v_up, &v).unwrap();
        assert!((fit.scalar("alpha") + 8.0).abs() < 1e-13);
        assert!((fit.scalar("beta") + 2.0).abs() < 1e-13);
        assert!(fit.residual < 1e-13);
        let mut off = ric.clone();
        off.set(&[1, 2], 0.3);
        off.set(&[2, 1], 0.3);
        assert!(pf_decompose(&off, &g, &gi, &v_up, &v).unwrap().residual > 0.1);
        let zero = DenseTensor::zeros(4, &[Lower, Lower]);
        assert!(matches!(pf_decompose(&zero, &g, &gi, &v_up, &v), Err(ClassifyError::DegenerateRicci)));
    }

    #[test]
    fn eos_examples() {
        let e = eos_extract(-8.0, -2.0, 1.0, 4).unwrap();
        assert_eq!((e.p, e.sigma), (7.0, -9.0));
        assert_eq!(e.combination(1.0), 39.0);
        let e = eos_extract(0.0, 0.0, 1.0, 4).unwrap();
        assert_eq!((e.p, e.sigma), (0.0, 0.0));
        assert!(matches!(eos_extract(1.0, 1.0, 1.0, 5), Err(ClassifyError::UnsupportedDimension(5))));
        assert!(matches!(eos_extract(1.0, 1.0, 0.0, 4), Err(ClassifyError::InvalidKappa(_))));
        let r = eos_report(&[(1.0, 2.0), (2.0, 2.0)], 1.0, 4).unwrap();
        assert!((r.constancy_defect - 5.0).abs() < 1e-15);
    }

    #[test]
    fn auxiliary_examples() {
        let model = catalog::grw(4, "exp(t)", Fiber::Flat).unwrap();
        let s = SsmcPoint::build(&model, &[0.5, 0.1, 0.2, 0.3], "dt").unwrap();
        let a = auxiliary_checks_at(&s);
        assert!(a.eigenvector_defect < 1e-10);
        assert!(a.geodesic_defect_lc < 1e-10);
        assert!(a.geodesic_defect_ssmc < 1e-10);
        assert_eq!(a.closedness_defect, 0.0);
        // v = (cosh x, sinh x, 0, 0): v_t = −cosh x, curl defect sinh x
        let model = catalog::minkowski(4).unwrap();
        let x: f64 = 0.4;
        let s = SsmcPoint::build(&model, &[0.5, x, 0.2, 0.3], "boost").unwrap();
        let a = auxiliary_checks_at(&s);
        assert!((a.closedness_defect - 2f64.sqrt() * x.sinh()).abs() < 1e-14);
        assert!(a.geodesic_defect_lc > 0.1);
    }

    proptest! {
        #[test]
        fn pf_is_exact_on_constructed_tensors(
            alpha in -5.0f64..5.0,
            beta in -5.0f64..5.0,
            rapidity in -1.5f64..1.5,
            stretch in proptest::collection::vec(0.5f64..2.0, 3),
        ) {
            // g = diag(−1, s1, s2, s3), boosted unit timelike v in the t-x plane
            let s = [1.0, stretch[0], stretch[1], stretch[2]];
            let g = DenseTensor::from_fn(4, &[Lower, Lower], |i| if i[0] == i[1] { if i[0] == 0 { -1.0 } else { s[i[0]] } } else { 0.0 });
            let gi = DenseTensor::from_fn(4, &[Variance::Upper, Variance::Upper], |i| if i[0] == i[1] { 1.0 / g.get(i) } else { 0.0 });
            let v_up = [rapidity.cosh(), rapidity.sinh() / s[1].sqrt(), 0.0, 0.0];
            let v: Vec<f64> = (0..4).map(|k| g.get(&[k, k]) * v_up[k]).collect();
            let ric = DenseTensor::from_fn(4, &[Lower, Lower], |i| alpha * g.get(i) + beta * v[i[0]] * v[i[1]]);
            let fit = pf_decompose(&ric, &g, &gi, &v_up, &v);
            if let Ok(fit) = fit {
                prop_assert!((fit.scalar("alpha") - alpha).abs() < 1e-10);
                prop_assert!((fit.scalar("beta") - beta).abs() < 1e-10);
                prop_assert!(fit.residual < 1e-10);
            }
        }

        #[test]
        fn eos_round_trip(p in -10.0f64..10.0, sigma in -10.0f64..10.0, kappa in 0.1f64..3.0) {
            let (a, b) = eos_forward(p, sigma, kappa, 4);
            let e = eos_extract(a, b, kappa, 4).unwrap();
            prop_assert!((e.p - p).abs() < 1e-12 * (1.0 + p.abs()) / (kappa * kappa).min(1.0));
            prop_assert!((e.sigma - sigma).abs() < 1e-12 * (1.0 + sigma.abs()) / (kappa * kappa).min(1.0));
        }

        #[test]
        fn grw_phi_depends_only_on_time(x in -1.0f64..1.0, y in -1.0f64..1.0, z in -1.0f64..1.0) {
            let model = catalog::grw(4, "cosh(t)", Fiber::Flat).unwrap();
            let t = 0.6;
            let a = torse_forming_fit(&model, "dt", Connection::LeviCivita, &[vec![t, 0.0, 0.0, 0.0]], TorseForm::Unit).unwrap();
            let b = torse_forming_fit(&model, "dt", Connection::LeviCivita, &[vec![t, x, y, z]], TorseForm::Unit).unwrap();
            prop_assert!((a.points[0].scalar("phi") - b.points[0].scalar("phi")).abs() < 1e-12);
            prop_assert!((a.points[0].scalar("phi") - t.tanh()).abs() < 1e-10);
        }
    }
}
