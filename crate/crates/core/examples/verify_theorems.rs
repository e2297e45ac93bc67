//! Conditional verification on a flat-SSMC spacetime, on flat space, and with
//! an injected fault.

use lorentz_ssmc::spacetimes::{catalog, sample_points};
use lorentz_ssmc::theorems::{self, TheoremId, VerifyOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let opts = VerifyOptions::default();
    for name in ["grw-exp", "minkowski"] {
        let model = catalog::by_name(name)?;
        let points = sample_points(&model, 10, 0)?.points;
        let evidence = theorems::collect_evidence(&model, "dt", None, &points)?;
        println!("{name}:");
        for t in TheoremId::ALL {
            let v = theorems::verify(t, &evidence, &opts);
            let failing: Vec<&str> = v.hypotheses.iter().chain(&v.conclusions).filter(|c| !c.passed()).map(|c| c.name.as_str()).collect();
            println!("  {:7} {:20} {}", t.code(), v.verdict.as_str(), failing.join(", "));
        }
    }

    let model = catalog::by_name("grw-exp")?;
    let points = sample_points(&model, 10, 0)?.points;
    let evidence = theorems::collect_evidence(&model, "dt", None, &points)?;
    let faulty = VerifyOptions { fault: 1e-3, ..opts };
    let v = theorems::verify(TheoremId::Thm13, &evidence, &faulty);
    println!("thm1.3 with fault 1e-3: {}", v.verdict.as_str());
    for audit in &v.audits {
        println!("  printed form {:24} max {:.3e}", audit.name, audit.max);
    }
    Ok(())
}
