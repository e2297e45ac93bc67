//! Field classifiers on sampled points: torse-forming, torqued, f-Ric and the
//! perfect-fluid decomposition with its equation of state.

use lorentz_ssmc::classify::{self, Connection, FieldSample, TorseForm};
use lorentz_ssmc::spacetimes::{catalog, sample_points};
use lorentz_ssmc::ssmc::SsmcPoint;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let model = catalog::by_name("grw-power")?;
    let points = sample_points(&model, 10, 2)?.points;

    for conn in [Connection::LeviCivita, Connection::Ssmc] {
        let fit = classify::torse_forming_fit(&model, "dt", conn, &points, TorseForm::Unit)?;
        let phi: Vec<String> = fit.points.iter().take(3).map(|p| format!("{:.4}", p.scalar("phi"))).collect();
        println!("{:<40} residual {:.2e}  phi {}", fit.class_name, fit.residual, phi.join(" "));
    }

    let frames: Vec<SsmcPoint> = points.iter().map(|p| SsmcPoint::build(&model, p, "dt")).collect::<Result<_, _>>()?;
    let samples: Vec<FieldSample> = frames.iter().map(|s| FieldSample::from_ssmc_point(s, Connection::Ssmc)).collect();
    match classify::torqued_fit(&samples) {
        Ok(fit) => println!("torqued: f = {:.4}, residual {:.2e}", fit.scalars["f"], fit.residual),
        Err(e) => println!("torqued: {e}"),
    }
    let pairs: Vec<_> = samples.iter().zip(&frames).map(|(f, s)| (f.dv.clone(), s.lc_curvature.ricci.clone())).collect();
    match classify::fric_fit(&pairs) {
        Ok(fit) => println!("f-Ric: f = {:.4}, residual {:.2e}", fit.scalars["f"], fit.residual),
        Err(e) => println!("f-Ric: {e}"),
    }

    let s = &frames[0];
    let v = s.xi();
    let pf = classify::pf_decompose(&s.lc_curvature.ricci, &s.metric.g, &s.metric.g_inv, &v.contravariant, &v.covariant)?;
    let eos = classify::eos_extract(pf.scalar("alpha"), pf.scalar("beta"), 1.0, 4)?;
    println!(
        "perfect fluid: alpha {:.4} beta {:.4} residual {:.2e}; p {:.4} sigma {:.4}",
        pf.scalar("alpha"),
        pf.scalar("beta"),
        pf.residual,
        eos.p,
        eos.sigma
    );
    Ok(())
}
