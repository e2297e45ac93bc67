//! Levi-Civita pipeline at a point: metric jets, Christoffel symbols,
//! curvature, covariant and Lie derivatives.
//!
//! # Conventions
//!
//! Connection coefficients carry the derivative index first:
//! `∇_i V^h = ∂_i V^h + Γ^h_{ij} V^j`, so `∇_k v_h = ∂_k v_h − Γ^l_{kh} v_l`.
//!
//! With `R(X,Y) = [∇_X, ∇_Y] − ∇_{[X,Y]}`, the fully covariant tensor is
//! `R_{hijk} = g(R(∂_h, ∂_i)∂_j, ∂_k)` and the mixed tensor raises its first
//! slot, `R^h_{ijk} = g^{hl} R_{lijk}`. The Ricci tensor is `R_{hk} = R^i_{hki}`,
//! which equals `g^{ij} R_{hijk}`. In this convention a round sphere has
//! `R_{hijk} = K(g_{hk} g_{ij} − g_{hj} g_{ik})` with `K > 0` and positive
//! Ricci. For a symmetric connection `R^h_{ijk}` is the negative of the common
//! `∂_j Γ^h_{ki} − ∂_k Γ^h_{ji} + …` expression; for connections with torsion
//! the index placement above is the one that keeps `R_{hk} = R^i_{hki}` equal
//! to the trace `X ↦ R(X, ∂_h)∂_k`.

use nalgebra::{DMatrix, SymmetricEigen};
use thiserror::Error;

use crate::expr::{ExprError, Jet};
use crate::spacetimes::SpacetimeModel;
use crate::tensor::{DenseTensor, Variance};

use Variance::{Lower, Upper};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("singular metric: |det g| = {det:e}")]
    SingularMetric { det: f64 },
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("{0}")]
    Model(String),
}

/// Metric, inverse and first two coordinate derivatives at a point.
#[derive(Debug, Clone)]
pub struct MetricAtPoint {
    pub dim: usize,
    pub g: DenseTensor,
    pub g_inv: DenseTensor,
    /// `dg[k][i][j] = ∂_k g_{ij}`
    pub dg: Vec<f64>,
    /// `d2g[l][k][i][j] = ∂_l ∂_k g_{ij}`
    pub d2g: Vec<f64>,
    pub negative_eigenvalues: usize,
    pub lorentzian: bool,
}

impl MetricAtPoint {
    /// Assembles the metric from the jets of its `n x n` entries (row-major).
    pub fn from_jets(dim: usize, jets: &[Jet]) -> Result<Self, GeometryError> {
        let n = dim;
        if jets.len() != n * n {
            return Err(GeometryError::Model(format!("expected {} metric jets, got {}", n * n, jets.len())));
        }
        let g = DenseTensor::from_fn(n, &[Lower, Lower], |i| jets[i[0] * n + i[1]].value());
        let mat = DMatrix::from_fn(n, n, |i, j| g.get(&[i, j]));
        let det = mat.determinant();
        if det.abs() < 1e-12 {
            return Err(GeometryError::SingularMetric { det });
        }
        let inv = mat
            .clone()
            .try_inverse()
            .ok_or(GeometryError::SingularMetric { det })?;
        // symmetrize the inverse; it is symmetric up to rounding only
        let g_inv = DenseTensor::from_fn(n, &[Upper, Upper], |i| 0.5 * (inv[(i[0], i[1])] + inv[(i[1], i[0])]));
        let eig = SymmetricEigen::new(mat);
        let negative_eigenvalues = eig.eigenvalues.iter().filter(|&&e| e < 0.0).count();

        let mut dg = vec![0.0; n * n * n];
        let mut d2g = vec![0.0; n * n * n * n];
        for i in 0..n {
            for j in 0..n {
                let jet = &jets[i * n + j];
                for k in 0..n {
                    dg[(k * n + i) * n + j] = jet.gradient()[k];
                    for l in 0..n {
                        d2g[((l * n + k) * n + i) * n + j] = jet.hessian(l, k);
                    }
                }
            }
        }
        Ok(Self {
            dim: n,
            g,
            g_inv,
            dg,
            d2g,
            negative_eigenvalues,
            lorentzian: negative_eigenvalues == 1,
        })
    }

    #[inline]
    pub fn dg(&self, k: usize, i: usize, j: usize) -> f64 {
        let n = self.dim;
        self.dg[(k * n + i) * n + j]
    }

    #[inline]
    pub fn d2g(&self, l: usize, k: usize, i: usize, j: usize) -> f64 {
        let n = self.dim;
        self.d2g[((l * n + k) * n + i) * n + j]
    }

    /// `∂_k g^{ij} = −g^{ia} ∂_k g_{ab} g^{bj}`, indexed `[k][i][j]`.
    pub fn dg_inv(&self) -> Vec<f64> {
        let n = self.dim;
        let gi = self.g_inv.data();
        let mut out = vec![0.0; n * n * n];
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let mut s = 0.0;
                    for a in 0..n {
                        for b in 0..n {
                            s += gi[i * n + a] * self.dg(k, a, b) * gi[b * n + j];
                        }
                    }
                    out[(k * n + i) * n + j] = -s;
                }
            }
        }
        out
    }

    pub fn lower(&self, v: &[f64]) -> Vec<f64> {
        let n = self.dim;
        (0..n).map(|i| (0..n).map(|j| self.g.get(&[i, j]) * v[j]).sum()).collect()
    }

    pub fn raise(&self, w: &[f64]) -> Vec<f64> {
        let n = self.dim;
        (0..n).map(|i| (0..n).map(|j| self.g_inv.get(&[i, j]) * w[j]).sum()).collect()
    }

    /// `g(u, w)` for two contravariant vectors.
    pub fn inner(&self, u: &[f64], w: &[f64]) -> f64 {
        let n = self.dim;
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                s += self.g.get(&[i, j]) * u[i] * w[j];
            }
        }
        s
    }
}

/// Evaluates the model metric at `point`.
pub fn metric_at(model: &SpacetimeModel, point: &[f64]) -> Result<MetricAtPoint, GeometryError> {
    let jets = model.metric_jets(point).map_err(|e| GeometryError::Model(e.to_string()))?;
    MetricAtPoint::from_jets(model.dimension(), &jets)
}

/// Connection coefficients `Γ^h_{ij}` and their first derivatives.
#[derive(Debug, Clone)]
pub struct ConnectionAtPoint {
    pub dim: usize,
    /// `gamma[h][i][j] = Γ^h_{ij}`
    pub gamma: Vec<f64>,
    /// `dgamma[l][h][i][j] = ∂_l Γ^h_{ij}`
    pub dgamma: Vec<f64>,
    pub symmetric: bool,
}

impl ConnectionAtPoint {
    #[inline]
    pub fn gamma(&self, h: usize, i: usize, j: usize) -> f64 {
        let n = self.dim;
        self.gamma[(h * n + i) * n + j]
    }

    #[inline]
    pub fn dgamma(&self, l: usize, h: usize, i: usize, j: usize) -> f64 {
        let n = self.dim;
        self.dgamma[((l * n + h) * n + i) * n + j]
    }

    /// `Γ^h_{ij}` as a `(1,2)` tensor.
    pub fn gamma_tensor(&self) -> DenseTensor {
        DenseTensor::from_data(self.dim, &[Upper, Lower, Lower], self.gamma.clone())
            .expect("connection storage has n^3 entries")
    }

    /// `‖∂_k g_{ij} − Γ^l_{ki} g_{lj} − Γ^l_{kj} g_{il}‖`.
    pub fn metricity_defect(&self, m: &MetricAtPoint) -> f64 {
        let n = self.dim;
        let mut sum = 0.0;
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let mut r = m.dg(k, i, j);
                    for l in 0..n {
                        r -= self.gamma(l, k, i) * m.g.get(&[l, j]) + self.gamma(l, k, j) * m.g.get(&[i, l]);
                    }
                    sum += r * r;
                }
            }
        }
        sum.sqrt()
    }
}

/// Levi-Civita connection `Γ^h_{ij} = ½ g^{hl}(∂_i g_{lj} + ∂_j g_{li} − ∂_l g_{ij})`.
pub fn christoffel(m: &MetricAtPoint) -> ConnectionAtPoint {
    let n = m.dim;
    let gi = m.g_inv.data();
    let dgi = m.dg_inv();
    // first kind: [l][i][j] = ½(∂_i g_lj + ∂_j g_li − ∂_l g_ij) and its derivatives
    let mut first = vec![0.0; n * n * n];
    let mut dfirst = vec![0.0; n * n * n * n];
    for l in 0..n {
        for i in 0..n {
            for j in 0..n {
                first[(l * n + i) * n + j] = 0.5 * (m.dg(i, l, j) + m.dg(j, l, i) - m.dg(l, i, j));
                for p in 0..n {
                    dfirst[((p * n + l) * n + i) * n + j] =
                        0.5 * (m.d2g(p, i, l, j) + m.d2g(p, j, l, i) - m.d2g(p, l, i, j));
                }
            }
        }
    }
    let mut gamma = vec![0.0; n * n * n];
    let mut dgamma = vec![0.0; n * n * n * n];
    for h in 0..n {
        for i in 0..n {
            for j in i..n {
                let mut s = 0.0;
                for l in 0..n {
                    s += gi[h * n + l] * first[(l * n + i) * n + j];
                }
                gamma[(h * n + i) * n + j] = s;
                gamma[(h * n + j) * n + i] = s;
                for p in 0..n {
                    let mut ds = 0.0;
                    for l in 0..n {
                        ds += dgi[(p * n + h) * n + l] * first[(l * n + i) * n + j]
                            + gi[h * n + l] * dfirst[((p * n + l) * n + i) * n + j];
                    }
                    dgamma[((p * n + h) * n + i) * n + j] = ds;
                    dgamma[((p * n + h) * n + j) * n + i] = ds;
                }
            }
        }
    }
    ConnectionAtPoint {
        dim: n,
        gamma,
        dgamma,
        symmetric: true,
    }
}

/// Riemann, Ricci and scalar curvature of a connection at a point.
#[derive(Debug, Clone)]
pub struct CurvatureBundle {
    /// `R^h_{ijk}`
    pub riemann_ud: DenseTensor,
    /// `R_{hijk}`
    pub riemann_dddd: DenseTensor,
    /// `R_{hk} = R^i_{hki}`
    pub ricci: DenseTensor,
    pub scalar: f64,
}

/// Curvature of an arbitrary (possibly torsionful) connection; see the module
/// docs for the index convention.
pub fn curvature(c: &ConnectionAtPoint, m: &MetricAtPoint) -> CurvatureBundle {
    let n = c.dim;
    // operator components: op[a][b][x][y] = (R(∂_x, ∂_y) ∂_b)^a
    let mut op = vec![0.0; n * n * n * n];
    for a in 0..n {
        for b in 0..n {
            for x in 0..n {
                for y in 0..n {
                    let mut v = c.dgamma(x, a, y, b) - c.dgamma(y, a, x, b);
                    for e in 0..n {
                        v += c.gamma(a, x, e) * c.gamma(e, y, b) - c.gamma(a, y, e) * c.gamma(e, x, b);
                    }
                    op[((a * n + b) * n + x) * n + y] = v;
                }
            }
        }
    }
    // R_{hijk} = g(R(∂_h, ∂_i)∂_j, ∂_k) = g_{ka} op[a][j][h][i]
    let riemann_dddd = DenseTensor::from_fn(n, &[Lower, Lower, Lower, Lower], |idx| {
        let (h, i, j, k) = (idx[0], idx[1], idx[2], idx[3]);
        (0..n).map(|a| m.g.get(&[k, a]) * op[((a * n + j) * n + h) * n + i]).sum()
    });
    let riemann_ud = riemann_dddd
        .raise_lower(0, &m.g_inv)
        .expect("metric inverse has matching shape");
    let ricci = riemann_ud.contract(0, 3, None).expect("mixed slots contract");
    let scalar = ricci.contract(0, 1, Some(&m.g_inv)).expect("inverse metric supplied").value();
    CurvatureBundle {
        riemann_ud,
        riemann_dddd,
        ricci,
        scalar,
    }
}

/// `∇_k v_h = ∂_k v_h − Γ^l_{kh} v_l`, with `dv[k][h] = ∂_k v_h`.
pub fn covariant_derivative_covector(c: &ConnectionAtPoint, v: &[f64], dv: &[f64]) -> DenseTensor {
    let n = c.dim;
    DenseTensor::from_fn(n, &[Lower, Lower], |idx| {
        let (k, h) = (idx[0], idx[1]);
        dv[k * n + h] - (0..n).map(|l| c.gamma(l, k, h) * v[l]).sum::<f64>()
    })
}

/// `(L_v g)_{hk} = D_h v_k + D_k v_h` for the Levi-Civita connection `c`.
pub fn lie_derivative_metric(c: &ConnectionAtPoint, v: &[f64], dv: &[f64]) -> DenseTensor {
    let d = covariant_derivative_covector(c, v, dv);
    d.add(&d.permute(&[1, 0]).expect("rank 2")).expect("same shape")
}

/// A vector field at a point in both variances, with first derivatives.
#[derive(Debug, Clone)]
pub struct FieldAtPoint {
    /// `ξ^h`
    pub contravariant: Vec<f64>,
    /// `∂_k ξ^h`, indexed `[k][h]`
    pub d_contravariant: Vec<f64>,
    /// `ξ_h = g_{hl} ξ^l`
    pub covariant: Vec<f64>,
    /// `∂_k ξ_h`, indexed `[k][h]`
    pub d_covariant: Vec<f64>,
}

impl FieldAtPoint {
    pub fn zero(n: usize) -> Self {
        Self {
            contravariant: vec![0.0; n],
            d_contravariant: vec![0.0; n * n],
            covariant: vec![0.0; n],
            d_covariant: vec![0.0; n * n],
        }
    }

    /// From the jets of contravariant components.
    pub fn from_contravariant(m: &MetricAtPoint, jets: &[Jet]) -> Self {
        let n = m.dim;
        let up: Vec<f64> = jets.iter().map(Jet::value).collect();
        let d_up: Vec<f64> = (0..n * n).map(|kh| jets[kh % n].gradient()[kh / n]).collect();
        let covariant = m.lower(&up);
        let mut d_covariant = vec![0.0; n * n];
        for k in 0..n {
            for h in 0..n {
                let mut s = 0.0;
                for l in 0..n {
                    s += m.dg(k, h, l) * up[l] + m.g.get(&[h, l]) * d_up[k * n + l];
                }
                d_covariant[k * n + h] = s;
            }
        }
        Self {
            contravariant: up,
            d_contravariant: d_up,
            covariant,
            d_covariant,
        }
    }

    /// From the jets of covariant components.
    pub fn from_covariant(m: &MetricAtPoint, jets: &[Jet]) -> Self {
        let n = m.dim;
        let down: Vec<f64> = jets.iter().map(Jet::value).collect();
        let d_down: Vec<f64> = (0..n * n).map(|kh| jets[kh % n].gradient()[kh / n]).collect();
        let contravariant = m.raise(&down);
        let dgi = m.dg_inv();
        let gi = m.g_inv.data();
        let mut d_contravariant = vec![0.0; n * n];
        for k in 0..n {
            for h in 0..n {
                let mut s = 0.0;
                for l in 0..n {
                    s += dgi[(k * n + h) * n + l] * down[l] + gi[h * n + l] * d_down[k * n + l];
                }
                d_contravariant[k * n + h] = s;
            }
        }
        Self {
            contravariant,
            d_contravariant,
            covariant: down,
            d_covariant: d_down,
        }
    }

    pub fn covector_tensor(&self) -> DenseTensor {
        DenseTensor::from_data(self.covariant.len(), &[Lower], self.covariant.clone()).expect("n components")
    }

    pub fn vector_tensor(&self) -> DenseTensor {
        DenseTensor::from_data(self.contravariant.len(), &[Upper], self.contravariant.clone()).expect("n components")
    }

    /// `∂_i ξ_j − ∂_j ξ_i`, indexed `[i][j]`.
    pub fn curl(&self) -> DenseTensor {
        let n = self.covariant.len();
        DenseTensor::from_fn(n, &[Lower, Lower], |idx| {
            self.d_covariant[idx[0] * n + idx[1]] - self.d_covariant[idx[1] * n + idx[0]]
        })
    }

    pub fn norm_squared(&self) -> f64 {
        self.covariant.iter().zip(&self.contravariant).map(|(a, b)| a * b).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spacetimes::{catalog, Fiber};
    use crate::tensor::Pattern;

    fn grw_exp() -> SpacetimeModel {
        catalog::grw(4, "exp(t)", Fiber::Flat).unwrap()
    }

    #[test]
    fn minkowski_is_flat() {
        let m = catalog::minkowski(4).unwrap();
        let mp = metric_at(&m, &[0.3, -0.2, 0.5, 0.9]).unwrap();
        assert_eq!(mp.g.data(), DenseTensor::from_fn(4, &[Lower, Lower], |i| match (i[0], i[1]) {
            (0, 0) => -1.0,
            (a, b) if a == b => 1.0,
            _ => 0.0,
        })
        .data());
        assert!(mp.dg.iter().all(|&x| x == 0.0));
        assert!(mp.d2g.iter().all(|&x| x == 0.0));
        assert!(mp.lorentzian);
        let c = christoffel(&mp);
        assert!(c.gamma.iter().chain(&c.dgamma).all(|&x| x == 0.0));
        let k = curvature(&c, &mp);
        assert!(k.riemann_dddd.norm() <= 1e-12);
        assert!(k.ricci.norm() <= 1e-12);
        assert_eq!(k.scalar, 0.0);
    }

    #[test]
    fn warped_metric_derivative_at_origin() {
        let mp = metric_at(&grw_exp(), &[0.0, 0.1, 0.2, 0.3]).unwrap();
        assert!((mp.g.get(&[1, 1]) - 1.0).abs() < 1e-15);
        assert_eq!(mp.g.get(&[0, 0]), -1.0);
        // ∂_t e^{2t} = 2 at t = 0
        assert!((mp.dg(0, 1, 1) - 2.0).abs() < 1e-15);
        assert!((mp.d2g(0, 0, 1, 1) - 4.0).abs() < 1e-15);
    }

    #[test]
    fn degenerate_metric_is_singular() {
        let chart: Vec<String> = ["t", "x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let jets: Vec<Jet> = (0..16)
            .map(|k| {
                let v = match k {
                    5 | 10 | 15 => 1.0,
                    _ => 0.0,
                };
                Jet::constant(chart.len(), v)
            })
            .collect();
        assert!(matches!(
            MetricAtPoint::from_jets(4, &jets),
            Err(GeometryError::SingularMetric { .. })
        ));
    }

    #[test]
    fn warped_christoffels_match_closed_form() {
        // ψ = e^t: Γ^x_{tx} = ψ'/ψ = 1, Γ^t_{xx} = ψψ' = e^{2t}
        let t = 0.37;
        let mp = metric_at(&grw_exp(), &[t, 0.1, -0.4, 0.2]).unwrap();
        let c = christoffel(&mp);
        assert!((c.gamma(1, 0, 1) - 1.0).abs() < 1e-13);
        assert!((c.gamma(1, 1, 0) - 1.0).abs() < 1e-13);
        assert!((c.gamma(0, 1, 1) - (2.0 * t).exp()).abs() < 1e-13);
        assert!((c.dgamma(0, 0, 2, 2) - 2.0 * (2.0 * t).exp()).abs() < 1e-12);
        assert!(c.metricity_defect(&mp) < 1e-12);
    }

    #[test]
    fn de_sitter_has_unit_constant_curvature() {
        let model = grw_exp();
        let mp = metric_at(&model, &[0.5, 0.2, -0.3, 0.7]).unwrap();
        let k = curvature(&christoffel(&mp), &mp);
        let g = &mp.g;
        let model_tensor = DenseTensor::from_fn(4, &[Lower; 4], |i| {
            g.get(&[i[0], i[3]]) * g.get(&[i[1], i[2]]) - g.get(&[i[0], i[2]]) * g.get(&[i[1], i[3]])
        });
        // least-squares K
        let kfit = k.riemann_dddd.dot(&model_tensor) / model_tensor.dot(&model_tensor);
        assert!((kfit - 1.0).abs() < 1e-12);
        assert!(k.riemann_dddd.add_scaled(-kfit, &model_tensor).unwrap().norm() < 1e-8);
        assert!((k.scalar - 12.0).abs() < 1e-10);
        // the same Ricci via g^{ij} R_{hijk}
        let alt = k.riemann_dddd.contract(1, 2, Some(&mp.g_inv)).unwrap();
        assert!(alt.sub(&k.ricci).unwrap().norm() < 1e-12);
        assert!(k.riemann_dddd.defect_norm(Pattern::Antisymmetric(2, 3)).unwrap() < 1e-9);
    }

    #[test]
    fn comoving_field_derivative() {
        // v = ∂_t lowered: D_k v_j = (ψ'/ψ)(g_kj + v_j v_k)
        let model = grw_exp();
        let p = [0.2, 0.4, 0.1, -0.6];
        let mp = metric_at(&model, &p).unwrap();
        let c = christoffel(&mp);
        let v = model.field_at("dt", &mp, &p).unwrap();
        let d = covariant_derivative_covector(&c, &v.covariant, &v.d_covariant);
        let expected = DenseTensor::from_fn(4, &[Lower, Lower], |i| {
            mp.g.get(&[i[0], i[1]]) + v.covariant[i[0]] * v.covariant[i[1]]
        });
        assert!(d.sub(&expected).unwrap().norm() < 1e-10);
        let lie = lie_derivative_metric(&c, &v.covariant, &v.d_covariant);
        assert!(lie.sub(&expected.scale(2.0)).unwrap().norm() < 1e-10);
        // metricity: ∇g = 0
        assert!(c.metricity_defect(&mp) < 1e-10);
    }

    #[test]
    fn killing_field_has_vanishing_lie_derivative() {
        let model = catalog::minkowski(4).unwrap();
        let p = [0.1, 0.2, 0.3, 0.4];
        let mp = metric_at(&model, &p).unwrap();
        let c = christoffel(&mp);
        let dx = FieldAtPoint {
            contravariant: vec![0.0, 1.0, 0.0, 0.0],
            d_contravariant: vec![0.0; 16],
            covariant: vec![0.0, 1.0, 0.0, 0.0],
            d_covariant: vec![0.0; 16],
        };
        assert_eq!(lie_derivative_metric(&c, &dx.covariant, &dx.d_covariant).norm(), 0.0);
    }
}
