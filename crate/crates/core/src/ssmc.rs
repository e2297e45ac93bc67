//! The semi-symmetric metric connection determined by an associated vector
//! field `ξ` with 1-form `π = g(·, ξ)`:
//!
//! `Γ̄^h_{ij} = Γ^h_{ij} + δ^h_i π_j − g_{ij} ξ^h`.
//!
//! Its curvature is computed twice: directly from `Γ̄` and by composing the
//! Levi-Civita curvature with the tensor
//! `π_{ik} = D_i π_k − π_i π_k + ½ g_{ik} π_h ξ^h`.

use thiserror::Error;

use crate::geometry::{
    self, christoffel, covariant_derivative_covector, curvature, ConnectionAtPoint, CurvatureBundle,
    FieldAtPoint, GeometryError, MetricAtPoint,
};
use crate::spacetimes::{ModelError, SpacetimeModel};
use crate::tensor::{DenseTensor, Variance};

use Variance::{Lower, Upper};

/// Tolerance on `|g(ξ, ξ) + 1|` for unit-timelike assertions.
pub const UNIT_TOL: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum SsmcError {
    #[error("field is not unit timelike: g(xi, xi) = {norm_squared}")]
    NotUnitTimelike { norm_squared: f64 },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Connection data of the SSMC at a point.
#[derive(Debug, Clone)]
pub struct SsmcFrame {
    pub dim: usize,
    /// associated field; `xi.covariant` is the 1-form `π_k`
    pub xi: FieldAtPoint,
    pub gamma_bar: ConnectionAtPoint,
}

impl SsmcFrame {
    pub fn pi_cov(&self) -> &[f64] {
        &self.xi.covariant
    }

    /// `∂_k π_j`, indexed `[k][j]`
    pub fn dpi(&self) -> &[f64] {
        &self.xi.d_covariant
    }
}

/// Builds `Γ̄` and `∂Γ̄` from the Levi-Civita connection and `ξ`.
pub fn ssmc_connection(lc: &ConnectionAtPoint, m: &MetricAtPoint, xi: &FieldAtPoint) -> SsmcFrame {
    let n = m.dim;
    let mut gamma = lc.gamma.clone();
    let mut dgamma = lc.dgamma.clone();
    for h in 0..n {
        for i in 0..n {
            for j in 0..n {
                let idx = (h * n + i) * n + j;
                let delta = if h == i { 1.0 } else { 0.0 };
                gamma[idx] += delta * xi.covariant[j] - m.g.get(&[i, j]) * xi.contravariant[h];
                for l in 0..n {
                    dgamma[l * n * n * n + idx] += delta * xi.d_covariant[l * n + j]
                        - m.dg(l, i, j) * xi.contravariant[h]
                        - m.g.get(&[i, j]) * xi.d_contravariant[l * n + h];
                }
            }
        }
    }
    let symmetric = xi.covariant.iter().all(|&x| x == 0.0);
    SsmcFrame {
        dim: n,
        xi: xi.clone(),
        gamma_bar: ConnectionAtPoint {
            dim: n,
            gamma,
            dgamma,
            symmetric,
        },
    }
}

/// `T^h_{ij} = δ^h_i π_j − δ^h_j π_i`.
pub fn torsion_closed_form(n: usize, pi: &[f64]) -> DenseTensor {
    DenseTensor::from_fn(n, &[Upper, Lower, Lower], |x| {
        let (h, i, j) = (x[0], x[1], x[2]);
        let mut v = 0.0;
        if h == i {
            v += pi[j];
        }
        if h == j {
            v -= pi[i];
        }
        v
    })
}

/// Torsion `T^h_{ij} = Γ̄^h_{ij} − Γ̄^h_{ji}` and its distance from the closed form.
pub fn torsion(frame: &SsmcFrame) -> (DenseTensor, f64) {
    let n = frame.dim;
    let c = &frame.gamma_bar;
    let t = DenseTensor::from_fn(n, &[Upper, Lower, Lower], |x| c.gamma(x[0], x[1], x[2]) - c.gamma(x[0], x[2], x[1]));
    let residual = t.sub(&torsion_closed_form(n, frame.pi_cov())).expect("same shape").norm();
    (t, residual)
}

pub fn metricity_defect(frame: &SsmcFrame, m: &MetricAtPoint) -> f64 {
    frame.gamma_bar.metricity_defect(m)
}

/// `π_{ik} = D_i ξ_k − ξ_i ξ_k + ½ g_{ik} g(ξ, ξ)` and its trace `g^{ik} π_{ik}`.
///
/// With `unit_timelike` set, `g(ξ, ξ) = −1` is asserted to within [`UNIT_TOL`].
pub fn l1_tensor(
    m: &MetricAtPoint,
    lc: &ConnectionAtPoint,
    xi: &FieldAtPoint,
    unit_timelike: bool,
) -> Result<(DenseTensor, f64), SsmcError> {
    let norm_squared = xi.norm_squared();
    if unit_timelike && (norm_squared + 1.0).abs() > UNIT_TOL {
        return Err(SsmcError::NotUnitTimelike { norm_squared });
    }
    let dv = covariant_derivative_covector(lc, &xi.covariant, &xi.d_covariant);
    let v = &xi.covariant;
    let l1 = DenseTensor::from_fn(m.dim, &[Lower, Lower], |x| {
        let (i, k) = (x[0], x[1]);
        dv.get(&[i, k]) - v[i] * v[k] + 0.5 * m.g.get(&[i, k]) * norm_squared
    });
    let trace = l1.contract(0, 1, Some(&m.g_inv)).expect("inverse metric").value();
    Ok((l1, trace))
}

/// `R̄_{hijk} = R_{hijk} − g_{hk}π_{ij} + g_{ik}π_{hj} − g_{ij}π_{hk} + g_{hj}π_{ik}`.
pub fn composed_curvature(lc_riemann: &DenseTensor, g: &DenseTensor, l1: &DenseTensor) -> DenseTensor {
    let n = g.dim();
    DenseTensor::from_fn(n, &[Lower; 4], |x| {
        let (h, i, j, k) = (x[0], x[1], x[2], x[3]);
        lc_riemann.get(x) - g.get(&[h, k]) * l1.get(&[i, j]) + g.get(&[i, k]) * l1.get(&[h, j])
            - g.get(&[i, j]) * l1.get(&[h, k])
            + g.get(&[h, j]) * l1.get(&[i, k])
    })
}

/// Both curvature routes and their disagreement.
#[derive(Debug, Clone)]
pub struct TwoRouteCurvature {
    /// curvature of `Γ̄` computed directly
    pub direct: CurvatureBundle,
    /// `R̄_{hijk}` assembled from the Levi-Civita curvature and `π_{ik}`
    pub composed: DenseTensor,
    pub cross_residual: f64,
    /// `cross_residual / max(‖direct‖, ‖composed‖, ‖g‖²)`
    pub relative_residual: f64,
}

pub fn ssmc_curvature(frame: &SsmcFrame, m: &MetricAtPoint, lc_curv: &CurvatureBundle, l1: &DenseTensor) -> TwoRouteCurvature {
    let direct = curvature(&frame.gamma_bar, m);
    let composed = composed_curvature(&lc_curv.riemann_dddd, &m.g, l1);
    let cross_residual = direct.riemann_dddd.sub(&composed).expect("same shape").norm();
    let g2 = m.g.norm().powi(2);
    let scale = direct.riemann_dddd.norm().max(composed.norm()).max(g2);
    TwoRouteCurvature {
        direct,
        composed,
        cross_residual,
        relative_residual: cross_residual / scale,
    }
}

/// `R_{ij} − (n−2)π_{ij} − π g_{ij}`.
pub fn contracted_ricci(lc_ricci: &DenseTensor, g: &DenseTensor, l1: &DenseTensor, pi_trace: f64) -> DenseTensor {
    let n = g.dim() as f64;
    lc_ricci
        .add_scaled(-(n - 2.0), l1)
        .and_then(|r| r.add_scaled(-pi_trace, g))
        .expect("same shape")
}

/// SSMC Ricci tensor (direct route) and its distance from the contracted form.
pub fn ssmc_ricci(curv: &TwoRouteCurvature, m: &MetricAtPoint, lc_curv: &CurvatureBundle, l1: &DenseTensor, pi_trace: f64) -> (DenseTensor, f64) {
    let ricci = curv.direct.ricci.clone();
    let residual = ricci.sub(&contracted_ricci(&lc_curv.ricci, &m.g, l1, pi_trace)).expect("same shape").norm();
    (ricci, residual)
}

/// `‖R̄_{ij} − R̄_{ji} + (n−2)(∂_i ξ_j − ∂_j ξ_i)‖`.
pub fn proposition_defect(ricci_bar: &DenseTensor, xi: &FieldAtPoint) -> f64 {
    let n = ricci_bar.dim();
    let curl = xi.curl();
    let skew = ricci_bar.sub(&ricci_bar.permute(&[1, 0]).expect("rank 2")).expect("same shape");
    skew.add_scaled(n as f64 - 2.0, &curl).expect("same shape").norm()
}

/// `∇̄_k T^h_{ij}` for `T` the SSMC torsion, indexed `[k][h][i][j]`.
pub fn torsion_derivative(frame: &SsmcFrame) -> DenseTensor {
    let n = frame.dim;
    let c = &frame.gamma_bar;
    let pi = frame.pi_cov();
    let dpi = frame.dpi();
    let t = torsion_closed_form(n, pi);
    DenseTensor::from_fn(n, &[Lower, Upper, Lower, Lower], |x| {
        let (k, h, i, j) = (x[0], x[1], x[2], x[3]);
        let mut v = 0.0;
        if h == i {
            v += dpi[k * n + j];
        }
        if h == j {
            v -= dpi[k * n + i];
        }
        for l in 0..n {
            v += c.gamma(h, k, l) * t.get(&[l, i, j]) - c.gamma(l, k, i) * t.get(&[h, l, j]) - c.gamma(l, k, j) * t.get(&[h, i, l]);
        }
        v
    })
}

/// Outcome of the torsion recurrence test `∇̄_k T^h_{ij} = A_k T^h_{ij}`.
#[derive(Debug, Clone)]
pub struct RecurrenceReport {
    pub defect: f64,
    /// `∇̄_k T^h_{ij} − A_k T^h_{ij}`, indexed `[k][h][i][j]`
    pub residual: DenseTensor,
    pub nabla_torsion: DenseTensor,
}

pub fn torsion_recurrence_defect(frame: &SsmcFrame, a: &[f64]) -> RecurrenceReport {
    let n = frame.dim;
    let nabla_torsion = torsion_derivative(frame);
    let t = torsion_closed_form(n, frame.pi_cov());
    let a_t = DenseTensor::from_data(n, &[Lower], a.to_vec()).expect("n components").outer(&t);
    let residual = nabla_torsion.sub(&a_t).expect("same shape");
    RecurrenceReport {
        defect: residual.norm(),
        residual,
        nabla_torsion,
    }
}

/// Everything computed at one point for a model and an associated field.
#[derive(Debug, Clone)]
pub struct SsmcPoint {
    pub point: Vec<f64>,
    pub metric: MetricAtPoint,
    pub lc: ConnectionAtPoint,
    pub lc_curvature: CurvatureBundle,
    pub frame: SsmcFrame,
    pub torsion: DenseTensor,
    pub torsion_residual: f64,
    pub metricity_defect: f64,
    pub l1: DenseTensor,
    pub pi_trace: f64,
    pub curvature: TwoRouteCurvature,
    pub ricci_bar: DenseTensor,
    pub ricci_residual: f64,
}

impl SsmcPoint {
    pub fn build(model: &SpacetimeModel, point: &[f64], xi: &str) -> Result<Self, SsmcError> {
        let metric = geometry::metric_at(model, point)?;
        let xi = model.field_at(xi, &metric, point)?;
        Ok(Self::from_field(point, metric, xi))
    }

    pub fn from_field(point: &[f64], metric: MetricAtPoint, xi: FieldAtPoint) -> Self {
        let lc = christoffel(&metric);
        let lc_curvature = curvature(&lc, &metric);
        let frame = ssmc_connection(&lc, &metric, &xi);
        let (torsion, torsion_residual) = torsion(&frame);
        let metricity_defect = metricity_defect(&frame, &metric);
        let (l1, pi_trace) = l1_tensor(&metric, &lc, &xi, false).expect("no unit assertion requested");
        let curvature = ssmc_curvature(&frame, &metric, &lc_curvature, &l1);
        let (ricci_bar, ricci_residual) = ssmc_ricci(&curvature, &metric, &lc_curvature, &l1, pi_trace);
        Self {
            point: point.to_vec(),
            metric,
            lc,
            lc_curvature,
            frame,
            torsion,
            torsion_residual,
            metricity_defect,
            l1,
            pi_trace,
            curvature,
            ricci_bar,
            ricci_residual,
        }
    }

    pub fn xi(&self) -> &FieldAtPoint {
        &self.frame.xi
    }

    /// `∇̄_h ξ_k`, indexed `[h][k]`.
    pub fn ssmc_derivative(&self) -> DenseTensor {
        covariant_derivative_covector(&self.frame.gamma_bar, &self.xi().covariant, &self.xi().d_covariant)
    }

    /// `D_h ξ_k`, indexed `[h][k]`.
    pub fn lc_derivative(&self) -> DenseTensor {
        covariant_derivative_covector(&self.lc, &self.xi().covariant, &self.xi().d_covariant)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::metric_at;
    use crate::spacetimes::{catalog, sample_points, Fiber};

    fn minkowski_dt() -> SsmcPoint {
        let model = catalog::minkowski(4).unwrap();
        SsmcPoint::build(&model, &[0.4, 0.1, -0.3, 0.2], "dt").unwrap()
    }

    #[test]
    fn zero_field_gives_levi_civita() {
        let model = catalog::grw(4, "cosh(t)", Fiber::Sphere).unwrap();
        let p = [0.5, 0.7, 1.1, 0.2];
        let s = SsmcPoint::build(&model, &p, "zero").unwrap();
        assert_eq!(s.frame.gamma_bar.gamma, s.lc.gamma);
        assert_eq!(s.torsion.norm(), 0.0);
        assert!(s.curvature.cross_residual < 1e-12);
        assert!(s.ricci_bar.sub(&s.lc_curvature.ricci).unwrap().norm() < 1e-12);
        assert!(s.frame.gamma_bar.symmetric);
    }

    #[test]
    fn minkowski_comoving_coefficients() {
        let s = minkowski_dt();
        let c = &s.frame.gamma_bar;
        // Γ̄^t_{tt} = π_t − g_tt ξ^t = −1 + 1
        assert_eq!(c.gamma(0, 0, 0), 0.0);
        // Γ̄^x_{xt} = π_t = −1, Γ̄^t_{xx} = −g_xx ξ^t = −1
        assert_eq!(c.gamma(1, 1, 0), -1.0);
        assert_eq!(c.gamma(0, 1, 1), -1.0);
        assert_eq!(c.gamma(1, 0, 1), 0.0);
        // T^x_{tx} = −π_t = 1, T^x_{xt} = π_t = −1
        assert_eq!(s.torsion.get(&[1, 0, 1]), 1.0);
        assert_eq!(s.torsion.get(&[1, 1, 0]), -1.0);
        assert_eq!(s.torsion_residual, 0.0);
        assert!(s.metricity_defect < 1e-12);
    }

    #[test]
    fn minkowski_comoving_l1_and_curvature() {
        let s = minkowski_dt();
        // π_{ik} = −½ g − v⊗v
        assert!((s.l1.get(&[0, 0]) + 0.5).abs() < 1e-15);
        assert!((s.l1.get(&[1, 1]) + 0.5).abs() < 1e-15);
        assert!((s.pi_trace + 1.0).abs() < 1e-15);
        assert!(s.curvature.direct.riemann_dddd.norm() > 1.0);
        assert!(s.curvature.cross_residual < 1e-12);
        // R̄_ij = −2π_ij − π g_ij = 2g + 2v⊗v
        let v = &s.xi().covariant;
        let expected = DenseTensor::from_fn(4, &[Lower, Lower], |x| 2.0 * s.metric.g.get(x) + 2.0 * v[x[0]] * v[x[1]]);
        assert!(s.ricci_bar.sub(&expected).unwrap().norm() < 1e-12);
    }

    #[test]
    fn unit_assertion_rejects_spacelike() {
        let model = catalog::minkowski(4).unwrap();
        let p = [0.5, 0.0, 0.0, 0.0];
        let m = metric_at(&model, &p).unwrap();
        let lc = christoffel(&m);
        let dx = FieldAtPoint {
            contravariant: vec![0.0, 1.0, 0.0, 0.0],
            d_contravariant: vec![0.0; 16],
            covariant: vec![0.0, 1.0, 0.0, 0.0],
            d_covariant: vec![0.0; 16],
        };
        match l1_tensor(&m, &lc, &dx, true) {
            Err(SsmcError::NotUnitTimelike { norm_squared }) => assert_eq!(norm_squared, 1.0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn de_sitter_l1_is_half_metric() {
        let model = catalog::de_sitter(4).unwrap();
        let s = SsmcPoint::build(&model, &[0.3, 0.5, -0.2, 0.1], "dt").unwrap();
        assert!(s.l1.add_scaled(-0.5, &s.metric.g).unwrap().norm() < 1e-10);
        // the SSMC curvature vanishes identically here
        assert!(s.curvature.direct.riemann_dddd.norm() < 1e-10);
        assert!(s.ssmc_derivative().norm() < 1e-10);
    }

    #[test]
    fn perturbed_connection_breaks_metricity() {
        let mut s = minkowski_dt();
        let n = 4;
        s.frame.gamma_bar.gamma[(n + 2) * n + 3] += 1e-3;
        let d = metricity_defect(&s.frame, &s.metric);
        assert!(d > 5e-4 && d < 5e-3, "{d}");
    }

    #[test]
    fn catalog_sweep_identities() {
        for model in catalog::all() {
            for xi in ["dt", "swirl", "grad"] {
                let pts = sample_points(&model, 10, 11).unwrap();
                for p in &pts.points {
                    let s = SsmcPoint::build(&model, p, xi).unwrap();
                    assert!(s.metricity_defect < 1e-10, "{} {xi}", model.name());
                    assert!(s.torsion_residual < 1e-10);
                    assert!(s.curvature.relative_residual < 1e-8, "{} {xi} {}", model.name(), s.curvature.relative_residual);
                    assert!(s.ricci_residual < 1e-9, "{} {xi} {}", model.name(), s.ricci_residual);
                    assert!(proposition_defect(&s.ricci_bar, s.xi()) < 1e-9);
                }
            }
        }
    }

    #[test]
    fn non_closed_field_has_skew_ricci() {
        let model = catalog::minkowski(4).unwrap();
        let s = SsmcPoint::build(&model, &[0.5, 0.3, 0.2, -0.1], "boost").unwrap();
        let skew = s.ricci_bar.defect_norm(crate::tensor::Pattern::Symmetric(0, 1)).unwrap();
        assert!(skew > 1e-3);
        assert!(proposition_defect(&s.ricci_bar, s.xi()) < 1e-12);
    }

    #[test]
    fn recurrence_with_zero_field_is_trivial() {
        let model = catalog::minkowski(4).unwrap();
        let s = SsmcPoint::build(&model, &[0.5, 0.3, 0.2, -0.1], "zero").unwrap();
        assert_eq!(torsion_recurrence_defect(&s.frame, &[1.0, 2.0, 3.0, 4.0]).defect, 0.0);
    }

    #[test]
    fn torsion_derivative_matches_finite_differences() {
        // oracle: differentiate the closed-form torsion numerically, then add Γ̄ terms
        let model = catalog::grw(4, "cosh(t)", Fiber::Flat).unwrap();
        let p = [0.6, 0.2, -0.3, 0.4];
        let h = 1e-5;
        let build = |q: &[f64]| SsmcPoint::build(&model, q, "swirl").unwrap();
        let s = build(&p);
        let nabla = torsion_derivative(&s.frame);
        let n = 4;
        for k in 0..n {
            let mut up = p;
            let mut dn = p;
            up[k] += h;
            dn[k] -= h;
            let tp = build(&up).torsion;
            let tm = build(&dn).torsion;
            for hh in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        let mut v = (tp.get(&[hh, i, j]) - tm.get(&[hh, i, j])) / (2.0 * h);
                        let c = &s.frame.gamma_bar;
                        for l in 0..n {
                            v += c.gamma(hh, k, l) * s.torsion.get(&[l, i, j])
                                - c.gamma(l, k, i) * s.torsion.get(&[hh, l, j])
                                - c.gamma(l, k, j) * s.torsion.get(&[hh, i, l]);
                        }
                        assert!((v - nabla.get(&[k, hh, i, j])).abs() < 1e-7);
                    }
                }
            }
        }
        // with A = 0 the defect is the full ‖∇̄T‖, which is nonzero
        let r = torsion_recurrence_defect(&s.frame, &[0.0; 4]);
        assert!((r.defect - nabla.norm()).abs() < 1e-15);
        assert!(r.defect > 0.1);
    }
}
