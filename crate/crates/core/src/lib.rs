//! Steklov eigenvalues on flat annuli with boundary densities.
//!
//! The crate computes, in closed form, the weighted Steklov spectrum of
//! `[0, T] × S¹` with a constant density on each boundary circle; solves
//! the crossing equation whose solution `T_q` makes the first eigenvalue
//! have multiplicity three; constructs the associated free-boundary
//! harmonic maps into the unit 3-ball (stretched catenoids) and audits
//! them; cross-validates everything against a Fourier-Galerkin
//! discretization of the Dirichlet-to-Neumann operator that also handles
//! θ-dependent densities; and scans the normalized first eigenvalue over
//! the rotationally symmetric family.

pub mod acceptance;
pub mod audit;
pub mod error;
pub mod explorer;
pub mod family;
pub mod galerkin;
pub mod mesh;
pub mod quadrature;
pub mod roots;
pub mod spectrum;

pub use error::{Error, Result};

/// Version stamp carried by every JSON report the crate emits.
pub const SCHEMA_VERSION: u32 = 1;

/// Serializes a report and injects the `schema_version` field.
pub fn versioned_json<T: serde::Serialize>(value: &T) -> serde_json::Value {
    let mut v = serde_json::to_value(value).expect("reports are serializable");
    if let serde_json::Value::Object(ref mut map) = v {
        map.insert(
            "schema_version".to_string(),
            serde_json::Value::from(SCHEMA_VERSION),
        );
    }
    v
}
