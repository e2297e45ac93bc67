//! Semi-symmetric metric connections on Lorentzian manifolds.
//!
//! The crate evaluates a user-authored spacetime (metric and fields written in
//! a small expression language) at sample points, builds the Levi-Civita and
//! semi-symmetric metric connections from exact second-order jets, and checks
//! torsion, metricity, curvature identities, vector-field classes and a set of
//! conditional theorem verifiers on both geometric and synthetic tensor data.
//!
//! Layout:
//!
//! - [`expr`]: expression parser and order-2 jets
//! - [`tensor`]: dense tensors at a point, contraction and index gymnastics
//! - [`geometry`]: metric, Christoffel symbols, curvature, covariant and Lie derivatives
//! - [`ssmc`]: the semi-symmetric metric connection and its curvature
//! - [`classify`]: torse-forming, torqued, f-Ric and perfect-fluid fits
//! - [`spacetimes`]: built-in catalog, model files, sampling
//! - [`theorems`]: verifiers, synthetic proof chains, identity suite, witness search
//! - [`cli`]: the `ssmc` command line and its canonical JSON reports

pub mod classify;
pub mod cli;
pub mod expr;
pub mod geometry;
pub mod spacetimes;
pub mod ssmc;
pub mod tensor;
pub mod theorems;
