//! Christoffel symbols and curvature of a warped product at one point.

use lorentz_ssmc::geometry::{christoffel, curvature, metric_at};
use lorentz_ssmc::spacetimes::catalog::{self, Fiber};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let model = catalog::grw(4, "cosh(t)", Fiber::Sphere)?;
    let point = [0.5, 0.8, 1.1, 0.2];
    let m = metric_at(&model, &point)?;
    let lc = christoffel(&m);
    let curv = curvature(&lc, &m);

    println!("model {} at {point:?}", model.name());
    println!("Gamma^t_rr = {:.12}", lc.gamma(0, 1, 1));
    println!("Gamma^r_tr = {:.12}", lc.gamma(1, 0, 1));
    println!("metricity defect = {:.3e}", lc.metricity_defect(&m));
    println!("scalar curvature = {:.12}", curv.scalar);

    // de Sitter of unit radius: R_hk = 3 g_hk
    let einstein = curv.ricci.add_scaled(-3.0, &m.g)?.norm();
    println!("|Ric - 3 g| = {einstein:.3e}");
    Ok(())
}
