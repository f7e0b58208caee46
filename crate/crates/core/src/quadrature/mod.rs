//! Numerical integration: adaptive Gauss-Kronrod on intervals, product rules
//! on the unit sphere, polar quadrature on balls and truncated free-space
//! integrals with a certified tail bound.

mod ball;
mod gk;
mod sphere;

pub use ball::{quad_ball, quad_ball_with, quad_space, BallQuad};
pub use gk::{quad_interval, quad_interval_breaks};
pub use sphere::{gauss_legendre, quad_sphere, SphereRule};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerances and resolution parameters shared by every quadrature.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdiv: usize,
    pub far_radius: f64,
    /// Trapezoid nodes on the circle.
    pub sphere_nodes_2d: usize,
    /// Gauss nodes in the polar angle (as `cos theta`) on `S^2`.
    pub sphere_polar_3d: usize,
    /// Trapezoid nodes in the azimuth on `S^2`.
    pub sphere_azimuth_3d: usize,
}

impl Default for QuadSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            abs_tol: 1e-12,
            max_subdiv: 2000,
            far_radius: 50.0,
            sphere_nodes_2d: 512,
            sphere_polar_3d: 64,
            sphere_azimuth_3d: 128,
        }
    }
}

impl QuadSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(Error::Config("tolerances must be positive".into()));
        }
        if !(self.far_radius > 1.0) {
            return Err(Error::Config("far_radius must exceed 1".into()));
        }
        if self.max_subdiv == 0
            || self.sphere_nodes_2d < 4
            || self.sphere_polar_3d < 2
            || self.sphere_azimuth_3d < 4
        {
            return Err(Error::Config("node and subdivision counts too small".into()));
        }
        Ok(())
    }

    /// Spec for an integral nested inside another: tolerances shrunk by
    /// `factor`, floored near round-off.
    pub fn nested(&self, factor: f64) -> Self {
        Self {
            rel_tol: (self.rel_tol * factor).max(1e-14),
            abs_tol: (self.abs_tol * factor).max(1e-300),
            ..*self
        }
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    /// Coarser sphere rules, for scans that only need a few digits.
    pub fn with_sphere(mut self, nodes_2d: usize, polar_3d: usize, azimuth_3d: usize) -> Self {
        self.sphere_nodes_2d = nodes_2d;
        self.sphere_polar_3d = polar_3d;
        self.sphere_azimuth_3d = azimuth_3d;
        self
    }

    #[inline]
    pub(crate) fn tolerance_for(&self, value: f64) -> f64 {
        (self.rel_tol * value.abs()).max(self.abs_tol)
    }
}

/// Value and error estimate of a quadrature.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadResult {
    pub value: f64,
    pub err_estimate: f64,
    pub converged: bool,
    pub subdivisions_used: usize,
}

impl QuadResult {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            err_estimate: 0.0,
            converged: true,
            subdivisions_used: 0,
        }
    }

    /// The value, or an error if the tolerance was not met.
    pub fn into_result(self) -> Result<f64> {
        if self.converged {
            Ok(self.value)
        } else {
            Err(Error::NotConverged {
                value: self.value,
                err: self.err_estimate,
            })
        }
    }
}
