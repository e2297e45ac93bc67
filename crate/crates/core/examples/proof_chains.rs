//! Randomized algebra chains of the structure theorems, including the
//! state-equation chain whose constant does not come out as printed.

use lorentz_ssmc::theorems::chains;

fn main() {
    let draws = 1000;
    for report in chains::all_chains(draws, 2024) {
        println!("{} ({} draws): max residual {:.2e} -> {}", report.name, report.draws, report.max_residual(), if report.passed() { "closes" } else { "does not close" });
        for (step, r) in &report.steps {
            println!("    {step:32} {r:.2e}");
        }
        for (name, r) in &report.diagnostics {
            println!("    [info] {name:25} {r:.3e}");
        }
    }
    let eos = chains::state_equation_chain(100, 7, 1.0);
    println!("state equation: max |k^2(3p - 2 sigma) - 3| = {:.3e}", eos.max_residual());
    for (name, r) in &eos.diagnostics {
        println!("    [info] {name:25} {r:.3e}");
    }
}
