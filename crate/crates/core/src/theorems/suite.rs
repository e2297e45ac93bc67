//! Identity suite over sampled points and the bounded search for flat-SSMC
//! warped products.

use crate::geometry::CurvatureBundle;
use crate::spacetimes::{catalog, sample_points, SpacetimeModel};
use crate::ssmc::{self, SsmcPoint};
use crate::tensor::{DenseTensor, Pattern, Variance::Lower};

use super::TheoremError;

/// One identity with its worst residual.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityRow {
    pub name: String,
    pub max: f64,
    pub tolerance: f64,
}

impl IdentityRow {
    pub fn passed(&self) -> bool {
        self.max <= self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentitySuite {
    pub model: String,
    pub field: String,
    pub points: usize,
    pub rows: Vec<IdentityRow>,
}

impl IdentitySuite {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(IdentityRow::passed)
    }

    pub fn row(&self, name: &str) -> Option<&IdentityRow> {
        self.rows.iter().find(|r| r.name == name)
    }
}

/// Residuals of the identities at one point, in suite order.
fn identities_at(s: &SsmcPoint, flip_route2: bool) -> Vec<(&'static str, f64, f64)> {
    let lc: &CurvatureBundle = &s.lc_curvature;
    let r = &lc.riemann_dddd;
    let n = r.dim();
    let two_route = if flip_route2 {
        // flip the sign of the g_hk π_ij term
        let g = &s.metric.g;
        let term = DenseTensor::from_fn(n, &[Lower; 4], |x| g.get(&[x[0], x[3]]) * s.l1.get(&[x[1], x[2]]));
        let faulty = s.curvature.composed.add_scaled(2.0, &term).expect("same shape");
        let direct = &s.curvature.direct.riemann_dddd;
        let scale = direct.norm().max(faulty.norm()).max(g.norm().powi(2));
        direct.sub(&faulty).expect("same shape").norm() / scale
    } else {
        s.curvature.relative_residual
    };
    let bianchi = DenseTensor::from_fn(n, &[Lower; 4], |x| {
        let (h, i, j, k) = (x[0], x[1], x[2], x[3]);
        r.get(&[h, i, j, k]) + r.get(&[i, j, h, k]) + r.get(&[j, h, i, k])
    });
    let pair = r.sub(&r.permute(&[2, 3, 0, 1]).expect("rank 4")).expect("same shape");
    let antisym = r
        .defect_norm(Pattern::Antisymmetric(0, 1))
        .expect("rank 4")
        .max(r.defect_norm(Pattern::Antisymmetric(2, 3)).expect("rank 4"));
    vec![
        ("torsion_conformance", s.torsion_residual, 1e-10),
        ("ssmc_metricity", s.metricity_defect, 1e-10),
        ("two_route_curvature", two_route, 1e-8),
        ("ricci_contraction", s.ricci_residual, 1e-9),
        ("proposition_identity", ssmc::proposition_defect(&s.ricci_bar, s.xi()), 1e-9),
        ("lc_first_bianchi", bianchi.norm(), 1e-9),
        ("lc_antisymmetry", antisym, 1e-9),
        ("lc_pair_symmetry", pair.norm(), 1e-9),
        ("lc_ricci_symmetry", lc.ricci.defect_norm(Pattern::Symmetric(0, 1)).expect("rank 2"), 1e-9),
        ("lc_metricity", s.lc.metricity_defect(&s.metric), 1e-10),
    ]
}

/// Evaluates the identity table on `points` of `model` with associated field `xi`.
pub fn run_identity_suite(
    model: &SpacetimeModel,
    xi: &str,
    points: &[Vec<f64>],
    flip_route2: bool,
) -> Result<IdentitySuite, TheoremError> {
    let mut rows: Vec<IdentityRow> = Vec::new();
    for p in points {
        let s = SsmcPoint::build(model, p, xi)?;
        for (k, (name, value, tol)) in identities_at(&s, flip_route2).into_iter().enumerate() {
            if rows.len() <= k {
                rows.push(IdentityRow {
                    name: name.to_string(),
                    max: 0.0,
                    tolerance: tol,
                });
            }
            let row = &mut rows[k];
            row.max = if value.is_nan() { f64::NAN } else { row.max.max(value) };
        }
    }
    Ok(IdentitySuite {
        model: model.name().to_string(),
        field: xi.to_string(),
        points: points.len(),
        rows,
    })
}

/// Objective of the witness search for one family member.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessSample {
    pub rate: f64,
    /// max over points of `‖R̄‖ / max(1, ‖g‖²)`
    pub curvature: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WitnessSearch {
    pub grid: Vec<WitnessSample>,
    pub best: WitnessSample,
}

/// Normalized SSMC curvature of `ψ = exp(rate·t)` over flat fibers with `ξ = dt`.
pub fn witness_objective(n: usize, rate: f64, samples: usize, seed: u64) -> Result<f64, TheoremError> {
    let model = catalog::grw(n, &format!("exp({rate:?}*t)"), catalog::Fiber::Flat)?;
    let points = sample_points(&model, samples, seed)?.points;
    let mut worst: f64 = 0.0;
    for p in &points {
        let s = SsmcPoint::build(&model, p, "dt")?;
        worst = worst.max(s.curvature.direct.riemann_dddd.norm() / s.metric.g.norm().max(1.0).powi(2));
    }
    Ok(worst)
}

/// Grid scan of the rate over `[−3, 3]` in steps of 0.25, refined by golden
/// section around the best grid value.
pub fn witness_search(n: usize, samples: usize, seed: u64) -> Result<WitnessSearch, TheoremError> {
    let mut grid = Vec::new();
    for k in 0..=24 {
        let rate = -3.0 + 0.25 * k as f64;
        grid.push(WitnessSample {
            rate,
            curvature: witness_objective(n, rate, samples, seed)?,
        });
    }
    let best_grid = *grid
        .iter()
        .min_by(|a, b| a.curvature.total_cmp(&b.curvature))
        .expect("non-empty grid");
    let (mut lo, mut hi) = (best_grid.rate - 0.25, best_grid.rate + 0.25);
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = hi - ratio * (hi - lo);
    let mut b = lo + ratio * (hi - lo);
    let mut fa = witness_objective(n, a, samples, seed)?;
    let mut fb = witness_objective(n, b, samples, seed)?;
    for _ in 0..60 {
        if hi - lo < 1e-12 {
            break;
        }
        if fa < fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - ratio * (hi - lo);
            fa = witness_objective(n, a, samples, seed)?;
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + ratio * (hi - lo);
            fb = witness_objective(n, b, samples, seed)?;
        }
    }
    let rate = 0.5 * (lo + hi);
    let refined = WitnessSample {
        rate,
        curvature: witness_objective(n, rate, samples, seed)?,
    };
    let best = if refined.curvature <= best_grid.curvature { refined } else { best_grid };
    Ok(WitnessSearch { grid, best })
}
