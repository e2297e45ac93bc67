//! Author a model file, load it, sample it and run the identity suite.

use lorentz_ssmc::spacetimes::{sample_points, SpacetimeModel};
use lorentz_ssmc::theorems::suite;

const MODEL: &str = r#"{
  "name": "tilted-warp",
  "dimension": 4,
  "coordinates": ["t", "x", "y", "z"],
  "parameters": {"k": 0.7},
  "metric": [
    ["-1", "0", "0", "0"],
    ["0", "exp(2*k*t)", "0.1*t", "0"],
    ["0", "0.1*t", "exp(2*k*t)", "0"],
    ["0", "0", "0", "1 + t^2"]
  ],
  "vector_fields": {"u": {"components": ["1", "0", "0", "0"], "variance": "contravariant"}},
  "covector_fields": {"w": ["x", "0", "0", "y"]},
  "sample_domain": {"t": [0.2, 0.8]}
}"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let model = SpacetimeModel::from_json_str(MODEL)?;
    println!("loaded {} (hash {})", model.name(), &model.hash()[..16]);
    let dir = std::env::temp_dir().join("ssmc-model-example.json");
    model.save(&dir)?;
    let again = SpacetimeModel::load(&dir)?;
    assert_eq!(again.hash(), model.hash());

    let sampling = sample_points(&model, 12, 5)?;
    println!("{} points, {} rejected", sampling.points.len(), sampling.rejections);
    for field in ["u", "w"] {
        let table = suite::run_identity_suite(&model, field, &sampling.points, false)?;
        println!("field {field}:");
        for row in &table.rows {
            println!("  {:24} {:.2e} (tol {:.0e})", row.name, row.max, row.tolerance);
        }
    }
    Ok(())
}
