//! Spacetime models: the JSON model file, validation, the built-in catalog and
//! deterministic sample-point generation.
//!
//! Model file schema:
//!
//! ```json
//! {
//!   "name": "grw-exp",
//!   "dimension": 4,
//!   "coordinates": ["t", "x", "y", "z"],
//!   "parameters": {},
//!   "metric": [["-1", "0", "0", "0"], ["0", "exp(t)^2", "0", "0"], ...],
//!   "vector_fields": {"dt": {"components": ["1", "0", "0", "0"], "variance": "contravariant"}},
//!   "covector_fields": {"zero": ["0", "0", "0", "0"]},
//!   "sample_domain": {"t": [0.1, 1.0], "x": [-1.0, 1.0]}
//! }
//! ```
//!
//! The lower triangle of `metric` (row >= column) is authoritative. An upper
//! entry that differs from its mirror as a string produces a warning and is
//! ignored.

pub mod catalog;

pub use catalog::Fiber;

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::expr::{self, ExprError, Function, Jet, ScalarExpr};
use crate::geometry::{FieldAtPoint, MetricAtPoint};

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("cannot read model file {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed model JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("in {location}: {source}")]
    Parse {
        location: String,
        #[source]
        source: ExprError,
    },
    #[error("evaluating {location}: {source}")]
    Eval {
        location: String,
        #[source]
        source: ExprError,
    },
    #[error("warping function is not positive: psi({t}) = {value}")]
    NonPositiveWarp { t: f64, value: f64 },
    #[error("unknown field `{0}`")]
    UnknownField(String),
    #[error("sample domain exhausted: {accepted} of {requested} points accepted after {attempts} attempts")]
    DomainExhausted {
        requested: usize,
        accepted: usize,
        attempts: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldVariance {
    Contravariant,
    Covariant,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorFieldSpec {
    pub components: Vec<String>,
    pub variance: FieldVariance,
}

/// On-disk form of a model; every expression is kept as authored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub name: String,
    pub dimension: usize,
    pub coordinates: Vec<String>,
    #[serde(default)]
    pub parameters: BTreeMap<String, f64>,
    pub metric: Vec<Vec<String>>,
    #[serde(default)]
    pub vector_fields: BTreeMap<String, VectorFieldSpec>,
    #[serde(default)]
    pub covector_fields: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub sample_domain: BTreeMap<String, [f64; 2]>,
}

#[derive(Debug, Clone)]
struct ParsedField {
    components: Vec<ScalarExpr>,
    variance: FieldVariance,
}

/// A validated spacetime model with parsed expressions.
#[derive(Debug, Clone)]
pub struct SpacetimeModel {
    file: ModelFile,
    param_names: Vec<String>,
    param_values: Vec<f64>,
    /// full `n x n`, mirrored from the lower triangle
    metric: Vec<ScalarExpr>,
    fields: BTreeMap<String, ParsedField>,
    domain: Vec<[f64; 2]>,
    warnings: Vec<String>,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl SpacetimeModel {
    /// Validates a model file and parses every expression.
    pub fn from_file_data(mut file: ModelFile) -> Result<Self, ModelError> {
        let n = file.dimension;
        if n < 3 {
            return Err(ModelError::Schema(format!("dimension must be at least 3, got {n}")));
        }
        if file.coordinates.len() != n {
            return Err(ModelError::DimensionMismatch(format!(
                "{} coordinates for dimension {n}",
                file.coordinates.len()
            )));
        }
        let mut names_seen: Vec<&str> = Vec::new();
        for c in file.coordinates.iter().chain(file.parameters.keys()) {
            if !is_identifier(c) {
                return Err(ModelError::Schema(format!("`{c}` is not an identifier")));
            }
            if c == "pi" || c == "e" || Function::from_name(c).is_some() {
                return Err(ModelError::Schema(format!("`{c}` is reserved")));
            }
            if names_seen.contains(&c.as_str()) {
                return Err(ModelError::Schema(format!("`{c}` declared twice")));
            }
            names_seen.push(c);
        }
        if file.metric.len() != n || file.metric.iter().any(|row| row.len() != n) {
            let shape: Vec<usize> = file.metric.iter().map(Vec::len).collect();
            return Err(ModelError::DimensionMismatch(format!(
                "metric rows {shape:?} for dimension {n}"
            )));
        }
        let param_names: Vec<String> = file.parameters.keys().cloned().collect();
        let param_values: Vec<f64> = file.parameters.values().copied().collect();
        let coords = file.coordinates.clone();
        let parse = |text: &str, location: String| {
            expr::parse(text, &coords, &param_names).map_err(|source| ModelError::Parse { location, source })
        };

        let mut warnings = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if file.metric[i][j] != file.metric[j][i] {
                    warnings.push(format!(
                        "metric[{i}][{j}] = `{}` differs from metric[{j}][{i}] = `{}`; lower triangle wins",
                        file.metric[i][j], file.metric[j][i]
                    ));
                    file.metric[i][j] = file.metric[j][i].clone();
                }
            }
        }
        let mut metric = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let (a, b) = if i >= j { (i, j) } else { (j, i) };
                metric.push(parse(&file.metric[a][b], format!("metric[{a}][{b}]"))?);
            }
        }

        let mut fields = BTreeMap::new();
        for (name, spec) in &file.vector_fields {
            if spec.components.len() != n {
                return Err(ModelError::DimensionMismatch(format!(
                    "vector field `{name}` has {} components",
                    spec.components.len()
                )));
            }
            let components = spec
                .components
                .iter()
                .enumerate()
                .map(|(k, s)| parse(s, format!("vector_fields.{name}[{k}]")))
                .collect::<Result<_, _>>()?;
            fields.insert(name.clone(), ParsedField { components, variance: spec.variance });
        }
        for (name, comps) in &file.covector_fields {
            if fields.contains_key(name) {
                return Err(ModelError::Schema(format!("field `{name}` declared as both vector and covector")));
            }
            if comps.len() != n {
                return Err(ModelError::DimensionMismatch(format!(
                    "covector field `{name}` has {} components",
                    comps.len()
                )));
            }
            let components = comps
                .iter()
                .enumerate()
                .map(|(k, s)| parse(s, format!("covector_fields.{name}[{k}]")))
                .collect::<Result<_, _>>()?;
            fields.insert(
                name.clone(),
                ParsedField {
                    components,
                    variance: FieldVariance::Covariant,
                },
            );
        }

        for key in file.sample_domain.keys() {
            if !file.coordinates.contains(key) {
                return Err(ModelError::Schema(format!("sample_domain names unknown coordinate `{key}`")));
            }
        }
        let domain = file
            .coordinates
            .iter()
            .map(|c| match file.sample_domain.get(c) {
                Some(&[lo, hi]) => {
                    if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
                        Err(ModelError::Schema(format!("empty sample interval for `{c}`: [{lo}, {hi}]")))
                    } else {
                        Ok([lo, hi])
                    }
                }
                None if c == "t" => Ok([0.1, 1.0]),
                None => Ok([-1.0, 1.0]),
            })
            .collect::<Result<Vec<_>, _>>()?;

        Ok(Self {
            file,
            param_names,
            param_values,
            metric,
            fields,
            domain,
            warnings,
        })
    }

    pub fn from_json_str(text: &str) -> Result<Self, ModelError> {
        Self::from_file_data(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, ModelError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| ModelError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json_str(&text)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), ModelError> {
        let path = path.as_ref();
        fs::write(path, self.to_json()).map_err(|source| ModelError::Io {
            path: path.display().to_string(),
            source,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.file).expect("model file serializes");
        s.push('\n');
        s
    }

    /// Hex SHA-256 of the compact JSON form of the model.
    pub fn hash(&self) -> String {
        let compact = serde_json::to_string(&self.file).expect("model file serializes");
        hex::encode(Sha256::digest(compact.as_bytes()))
    }

    pub fn file(&self) -> &ModelFile {
        &self.file
    }

    pub fn name(&self) -> &str {
        &self.file.name
    }

    pub fn dimension(&self) -> usize {
        self.file.dimension
    }

    pub fn coordinates(&self) -> &[String] {
        &self.file.coordinates
    }

    pub fn parameter_names(&self) -> &[String] {
        &self.param_names
    }

    pub fn parameter_values(&self) -> &[f64] {
        &self.param_values
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn sample_domain(&self) -> &[[f64; 2]] {
        &self.domain
    }

    pub fn field_names(&self) -> impl Iterator<Item = &str> {
        self.fields.keys().map(String::as_str)
    }

    pub fn has_field(&self, name: &str) -> bool {
        self.fields.contains_key(name)
    }

    pub fn field_variance(&self, name: &str) -> Option<FieldVariance> {
        self.fields.get(name).map(|f| f.variance)
    }

    /// Parsed metric entry `g_{ij}` (mirrored from the lower triangle).
    pub fn metric_entry(&self, i: usize, j: usize) -> &ScalarExpr {
        &self.metric[i * self.dimension() + j]
    }

    pub fn render(&self, e: &ScalarExpr) -> String {
        e.to_source(&self.file.coordinates, &self.param_names)
    }

    fn eval_jet(&self, e: &ScalarExpr, point: &[f64], location: impl FnOnce() -> String) -> Result<Jet, ModelError> {
        e.evaluate_jet(point, &self.param_values)
            .map_err(|source| ModelError::Eval { location: location(), source })
    }

    fn check_point(&self, point: &[f64]) -> Result<(), ModelError> {
        if point.len() != self.dimension() {
            return Err(ModelError::DimensionMismatch(format!(
                "point has {} coordinates, model has {}",
                point.len(),
                self.dimension()
            )));
        }
        Ok(())
    }

    /// Jets of all `n x n` metric entries, row-major.
    pub fn metric_jets(&self, point: &[f64]) -> Result<Vec<Jet>, ModelError> {
        self.check_point(point)?;
        let n = self.dimension();
        let mut out: Vec<Jet> = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                if j < i {
                    let mirrored: Jet = out[j * n + i].clone();
                    out.push(mirrored);
                } else {
                    out.push(self.eval_jet(&self.metric[i * n + j], point, || format!("metric[{j}][{i}]"))?);
                }
            }
        }
        Ok(out)
    }

    /// Jets of a field's components in its declared variance.
    pub fn field_jets(&self, name: &str, point: &[f64]) -> Result<(Vec<Jet>, FieldVariance), ModelError> {
        self.check_point(point)?;
        let field = self.fields.get(name).ok_or_else(|| ModelError::UnknownField(name.to_string()))?;
        let jets = field
            .components
            .iter()
            .enumerate()
            .map(|(k, e)| self.eval_jet(e, point, || format!("field {name}[{k}]")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((jets, field.variance))
    }

    /// A field in both variances with first derivatives, using `m` to move indices.
    pub fn field_at(&self, name: &str, m: &MetricAtPoint, point: &[f64]) -> Result<FieldAtPoint, ModelError> {
        let (jets, variance) = self.field_jets(name, point)?;
        Ok(match variance {
            FieldVariance::Contravariant => FieldAtPoint::from_contravariant(m, &jets),
            FieldVariance::Covariant => FieldAtPoint::from_covariant(m, &jets),
        })
    }
}

/// Result of [`sample_points`].
#[derive(Debug, Clone, PartialEq)]
pub struct Sampling {
    pub points: Vec<Vec<f64>>,
    pub rejections: usize,
}

/// Draws `count` points uniformly from the model's sample box, rejecting points
/// where the metric cannot be evaluated, is singular, or is not Lorentzian.
/// Gives up after `10 * count` draws.
pub fn sample_points(model: &SpacetimeModel, count: usize, seed: u64) -> Result<Sampling, ModelError> {
    if count == 0 {
        return Err(ModelError::Schema("sample count must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_attempts = 10 * count;
    let mut points = Vec::with_capacity(count);
    let mut attempts = 0;
    while points.len() < count && attempts < max_attempts {
        attempts += 1;
        let p: Vec<f64> = model
            .sample_domain()
            .iter()
            .map(|&[lo, hi]| if hi > lo { rng.random_range(lo..=hi) } else { lo })
            .collect();
        if matches!(crate::geometry::metric_at(model, &p), Ok(m) if m.lorentzian) {
            points.push(p);
        }
    }
    if points.len() < count {
        return Err(ModelError::DomainExhausted {
            requested: count,
            accepted: points.len(),
            attempts,
        });
    }
    Ok(Sampling {
        points,
        rejections: attempts - count,
    })
}
