//! Quad-strip surface meshes of the stretched-catenoid images, for OBJ
//! export.

use crate::error::{Error, Result};
use crate::family::FreeBoundaryMap;

/// A closed-seam quad mesh sampled from a map of the family.
#[derive(Debug, Clone)]
pub struct SurfaceMesh {
    /// Image points, row-major over the `(t, θ)` grid: `n_t` rings of
    /// `n_theta` vertices.
    pub vertices: Vec<[f64; 3]>,
    /// Quad faces as 0-based vertex indices; the θ-seam wraps around.
    pub faces: Vec<[usize; 4]>,
    pub n_t: usize,
    pub n_theta: usize,
}

/// Samples `map` on an `n_t × n_theta` grid (`≥ 8` each). The θ direction
/// is periodic, so the grid carries `n_theta` distinct angles and the last
/// column of faces closes the seam: `n_t·n_theta` vertices,
/// `(n_t - 1)·n_theta` faces.
pub fn mesh_from_map(map: &FreeBoundaryMap, n_t: usize, n_theta: usize) -> Result<SurfaceMesh> {
    if n_t < 8 || n_theta < 8 {
        return Err(Error::Resolution(format!(
            "mesh resolution must be at least 8, got {n_t}×{n_theta}"
        )));
    }
    let t_mod = map.modulus();
    let mut vertices = Vec::with_capacity(n_t * n_theta);
    for i in 0..n_t {
        let t = t_mod * i as f64 / (n_t - 1) as f64;
        for j in 0..n_theta {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / n_theta as f64;
            vertices.push(map.evaluate(t, theta)?);
        }
    }
    let mut faces = Vec::with_capacity((n_t - 1) * n_theta);
    for i in 0..n_t - 1 {
        for j in 0..n_theta {
            let jn = (j + 1) % n_theta;
            faces.push([
                i * n_theta + j,
                i * n_theta + jn,
                (i + 1) * n_theta + jn,
                (i + 1) * n_theta + j,
            ]);
        }
    }
    Ok(SurfaceMesh {
        vertices,
        faces,
        n_t,
        n_theta,
    })
}

impl SurfaceMesh {
    /// Plain-text OBJ rendering (1-based face indices).
    pub fn to_obj(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            out.push_str(&format!("v {} {} {}\n", v[0], v[1], v[2]));
        }
        for f in &self.faces {
            out.push_str(&format!(
                "f {} {} {} {}\n",
                f[0] + 1,
                f[1] + 1,
                f[2] + 1,
                f[3] + 1
            ));
        }
        out
    }
}

/// CSV of the revolution profile: `t, axial coordinate, radius`. The
/// surface is a surface of revolution, so this 1D data reproduces it.
pub fn profile_csv(map: &FreeBoundaryMap, n_t: usize) -> Result<String> {
    if n_t < 2 {
        return Err(Error::Resolution(
            "profile needs at least 2 samples".to_string(),
        ));
    }
    let t_mod = map.modulus();
    let mut out = String::from("t,axial,radius\n");
    for i in 0..n_t {
        let t = t_mod * i as f64 / (n_t - 1) as f64;
        let (axial, radius) = map.profile(t);
        out.push_str(&format!("{t},{axial},{radius}\n"));
    }
    Ok(out)
}
