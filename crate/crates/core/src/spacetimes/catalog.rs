//! Built-in spacetimes.
//!
//! Every catalog model carries the associated fields `dt` (the unit comoving
//! field, contravariant), `swirl` (a non-closed, non-unit field) and `grad`
//! (a closed covector), plus the covector `zero`.

use std::collections::BTreeMap;

use super::{FieldVariance, ModelError, ModelFile, SpacetimeModel, VectorFieldSpec};
use crate::expr;

/// Riemannian fiber of a warped product `−dt² + ψ(t)² h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fiber {
    Flat,
    Sphere,
    Hyperbolic,
}

impl Fiber {
    pub fn name(self) -> &'static str {
        match self {
            Fiber::Flat => "flat",
            Fiber::Sphere => "sphere",
            Fiber::Hyperbolic => "hyperbolic",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "flat" => Some(Fiber::Flat),
            "sphere" => Some(Fiber::Sphere),
            "hyperbolic" => Some(Fiber::Hyperbolic),
            _ => None,
        }
    }
}

/// Named built-in models as `(name, description)`.
pub const ENTRIES: &[(&str, &str)] = &[
    ("minkowski", "flat space, diag(-1, 1, 1, 1)"),
    ("grw-exp", "de Sitter in flat slicing: psi = exp(t), flat fiber"),
    ("grw-cosh-sphere", "de Sitter in global slicing: psi = cosh(t), sphere fiber"),
    ("grw-hyperbolic", "psi = exp(t) - 1, hyperbolic fiber"),
    ("static-hyperbolic", "psi = 1, hyperbolic fiber"),
    ("grw-power", "psi = t^(2/3), flat fiber"),
];

/// Looks up a named model; `de-sitter` is accepted as an alias of `grw-exp`.
pub fn by_name(name: &str) -> Result<SpacetimeModel, ModelError> {
    let named = |m: Result<SpacetimeModel, ModelError>| m.map(|m| m.renamed(name));
    match name {
        "minkowski" => minkowski(4),
        "grw-exp" | "de-sitter" => named(grw(4, "exp(t)", Fiber::Flat)),
        "grw-cosh-sphere" => named(grw(4, "cosh(t)", Fiber::Sphere)),
        "grw-hyperbolic" => named(grw(4, "exp(t) - 1", Fiber::Hyperbolic)),
        "static-hyperbolic" => named(grw(4, "1", Fiber::Hyperbolic)),
        "grw-power" => named(grw(4, "t^(2/3)", Fiber::Flat)),
        _ => Err(ModelError::Schema(format!("unknown catalog model `{name}`"))),
    }
}

/// All named models, aliases excluded.
pub fn all() -> Vec<SpacetimeModel> {
    ENTRIES
        .iter()
        .map(|(name, _)| by_name(name).expect("catalog entries are valid"))
        .collect()
}

fn flat_coordinates(n: usize) -> Vec<String> {
    let mut c = vec!["t".to_string()];
    if n == 4 {
        c.extend(["x", "y", "z"].map(String::from));
    } else {
        c.extend((1..n).map(|k| format!("x{k}")));
    }
    c
}

fn curved_coordinates(n: usize) -> Vec<String> {
    let mut c = vec!["t".to_string(), "r".to_string()];
    match n {
        3 => {}
        4 => c.push("th".into()),
        _ => c.extend((1..=n - 3).map(|k| format!("th{k}"))),
    }
    c.push("ph".into());
    c
}

fn diagonal(entries: Vec<String>) -> Vec<Vec<String>> {
    let n = entries.len();
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { entries[i].clone() } else { "0".into() }).collect())
        .collect()
}

fn standard_fields(coords: &[String]) -> (BTreeMap<String, VectorFieldSpec>, BTreeMap<String, Vec<String>>) {
    let n = coords.len();
    let (t, a, b) = (&coords[0], &coords[1], &coords[2]);
    let mut dt = vec!["0".to_string(); n];
    dt[0] = "1".into();
    let mut swirl = vec![format!("1.2 + 0.3*{a}"), format!("0.4*sin({t}) + 0.2*{b}")];
    for k in 2..n {
        swirl.push(format!("0.1*{a}*{t} - 0.05*{k}"));
    }
    let mut grad = vec![a.clone(), t.clone(), format!("2*{b}")];
    grad.resize(n, "0".into());
    let mut vectors = BTreeMap::new();
    vectors.insert(
        "dt".to_string(),
        VectorFieldSpec {
            components: dt,
            variance: FieldVariance::Contravariant,
        },
    );
    vectors.insert(
        "swirl".to_string(),
        VectorFieldSpec {
            components: swirl,
            variance: FieldVariance::Contravariant,
        },
    );
    let mut covectors = BTreeMap::new();
    covectors.insert("grad".to_string(), grad);
    covectors.insert("zero".to_string(), vec!["0".to_string(); n]);
    (vectors, covectors)
}

/// Flat space in Cartesian coordinates.
pub fn minkowski(n: usize) -> Result<SpacetimeModel, ModelError> {
    if n < 3 {
        return Err(ModelError::Schema(format!("dimension must be at least 3, got {n}")));
    }
    let coordinates = flat_coordinates(n);
    let mut diag = vec!["-1".to_string()];
    diag.resize(n, "1".into());
    let (mut vector_fields, covector_fields) = standard_fields(&coordinates);
    let x = &coordinates[1];
    let mut boost = vec![format!("cosh({x})"), format!("sinh({x})")];
    boost.resize(n, "0".into());
    vector_fields.insert(
        "boost".into(),
        VectorFieldSpec {
            components: boost,
            variance: FieldVariance::Contravariant,
        },
    );
    SpacetimeModel::from_file_data(ModelFile {
        name: "minkowski".into(),
        dimension: n,
        sample_domain: coordinates
            .iter()
            .map(|c| (c.clone(), if c == "t" { [0.1, 1.0] } else { [-1.0, 1.0] }))
            .collect(),
        coordinates,
        parameters: BTreeMap::new(),
        metric: diagonal(diag),
        vector_fields,
        covector_fields,
    })
}

/// Warped product `−dt² + ψ(t)² h` with `h` the chosen fiber in polar-style
/// coordinates. `ψ` must be positive on the sampled time interval.
pub fn grw(n: usize, psi: &str, fiber: Fiber) -> Result<SpacetimeModel, ModelError> {
    if n < 3 {
        return Err(ModelError::Schema(format!("dimension must be at least 3, got {n}")));
    }
    let coordinates = match fiber {
        Fiber::Flat => flat_coordinates(n),
        Fiber::Sphere | Fiber::Hyperbolic => curved_coordinates(n),
    };
    let psi_expr = expr::parse(psi, &coordinates, &[]).map_err(|source| ModelError::Parse {
        location: "psi".into(),
        source,
    })?;
    let t_range = [0.1, 1.0];
    for k in 0..=64 {
        let t = t_range[0] + (t_range[1] - t_range[0]) * k as f64 / 64.0;
        let mut p = vec![0.0; n];
        p[0] = t;
        let value = psi_expr.evaluate(&p, &[]).map_err(|source| ModelError::Eval {
            location: "psi".into(),
            source,
        })?;
        if !(value > 0.0) {
            return Err(ModelError::NonPositiveWarp { t, value });
        }
    }

    let warp = format!("({psi})^2");
    let mut diag = vec!["-1".to_string()];
    let mut domain = BTreeMap::new();
    domain.insert("t".to_string(), t_range);
    match fiber {
        Fiber::Flat => {
            for c in &coordinates[1..] {
                diag.push(warp.clone());
                domain.insert(c.clone(), [-1.0, 1.0]);
            }
        }
        Fiber::Sphere | Fiber::Hyperbolic => {
            let radial = match fiber {
                Fiber::Sphere => "sin(r)^2",
                _ => "sinh(r)^2",
            };
            diag.push(warp.clone());
            domain.insert("r".into(), [0.3, 1.2]);
            let mut factor = vec![radial.to_string()];
            for c in &coordinates[2..] {
                diag.push(format!("{warp}*{}", factor.join("*")));
                if c == "ph" {
                    domain.insert(c.clone(), [-1.0, 1.0]);
                } else {
                    domain.insert(c.clone(), [0.3, 2.8]);
                    factor.push(format!("sin({c})^2"));
                }
            }
        }
    }
    let (vector_fields, covector_fields) = standard_fields(&coordinates);
    SpacetimeModel::from_file_data(ModelFile {
        name: format!("grw({n}, {psi}, {})", fiber.name()),
        dimension: n,
        coordinates,
        parameters: BTreeMap::new(),
        metric: diagonal(diag),
        vector_fields,
        covector_fields,
        sample_domain: domain,
    })
}

/// `grw(n, "exp(t)", flat)`.
pub fn de_sitter(n: usize) -> Result<SpacetimeModel, ModelError> {
    grw(n, "exp(t)", Fiber::Flat).map(|m| m.renamed("de-sitter"))
}

impl SpacetimeModel {
    fn renamed(mut self, name: &str) -> Self {
        self.file.name = name.to_string();
        self
    }
}
