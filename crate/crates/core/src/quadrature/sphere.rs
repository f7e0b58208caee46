use std::f64::consts::PI;

use rayon::prelude::*;

use super::{QuadResult, QuadSpec};
use crate::geometry::Point;

/// Gauss-Legendre nodes and weights on `[-1, 1]` (Newton on the Legendre
/// recurrence).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { z } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = nf * (z * pn - pm) / (z * z - 1.0);
            let dz = pn / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
    (x, w)
}

/// Nodes and weights for integration over the unit sphere `S^{N-1}`.
///
/// `N = 1`: the two points `+-1` with unit weight. `N = 2`: periodic
/// trapezoid. `N = 3`: Gauss in `cos theta` times trapezoid in the azimuth.
/// `coarse` holds the weights of the rule with every other azimuthal node,
/// used for an error estimate.
#[derive(Clone, Debug)]
pub struct SphereRule {
    pub nodes: Vec<Point>,
    pub weights: Vec<f64>,
    coarse: Vec<f64>,
}

impl SphereRule {
    pub fn new(dim: usize, spec: &QuadSpec) -> Self {
        match dim {
            1 => Self {
                nodes: vec![Point::on_axis(1, -1.0), Point::on_axis(1, 1.0)],
                weights: vec![1.0, 1.0],
                coarse: vec![1.0, 1.0],
            },
            2 => {
                let n = spec.sphere_nodes_2d;
                let h = 2.0 * PI / n as f64;
                let nodes = (0..n)
                    .map(|k| {
                        let t = h * k as f64;
                        Point::new(&[t.cos(), t.sin()]).unwrap()
                    })
                    .collect();
                let coarse = (0..n).map(|k| if k % 2 == 0 { 2.0 * h } else { 0.0 }).collect();
                Self {
                    nodes,
                    weights: vec![h; n],
                    coarse,
                }
            }
            3 => {
                let (zs, wz) = gauss_legendre(spec.sphere_polar_3d);
                let na = spec.sphere_azimuth_3d;
                let h = 2.0 * PI / na as f64;
                let mut nodes = Vec::with_capacity(zs.len() * na);
                let mut weights = Vec::with_capacity(zs.len() * na);
                let mut coarse = Vec::with_capacity(zs.len() * na);
                for (z, wzi) in zs.iter().zip(&wz) {
                    let rxy = (1.0 - z * z).max(0.0).sqrt();
                    for k in 0..na {
                        let t = h * k as f64;
                        nodes.push(Point::new(&[rxy * t.cos(), rxy * t.sin(), *z]).unwrap());
                        weights.push(wzi * h);
                        coarse.push(if k % 2 == 0 { 2.0 * wzi * h } else { 0.0 });
                    }
                }
                Self {
                    nodes,
                    weights,
                    coarse,
                }
            }
            _ => panic!("unsupported dimension {dim}"),
        }
    }

    /// Rule for integrands that depend on `theta` only through `theta . axis`
    /// (axially symmetric). In 3D this collapses the azimuth.
    pub fn axial(dim: usize, axis: &Point, spec: &QuadSpec) -> Self {
        if dim != 3 {
            return Self::new(dim, spec);
        }
        let a = *axis * (1.0 / axis.norm());
        // Any unit vector orthogonal to the axis.
        let helper = if a.get(0).abs() < 0.9 {
            Point::unit(3, 0)
        } else {
            Point::unit(3, 1)
        };
        let mut e = helper - a * helper.dot(&a);
        e = e * (1.0 / e.norm());
        let (zs, wz) = gauss_legendre(spec.sphere_polar_3d);
        let nodes = zs
            .iter()
            .map(|z| a * *z + e * (1.0 - z * z).max(0.0).sqrt())
            .collect();
        let weights: Vec<f64> = wz.iter().map(|w| 2.0 * PI * w).collect();
        Self {
            nodes,
            coarse: weights.clone(),
            weights,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Sum of `values` against the half-azimuth weights.
    pub fn coarse_dot(&self, values: &[f64]) -> f64 {
        values.iter().zip(&self.coarse).map(|(v, w)| v * w).sum()
    }

    /// Applies the rule to per-node values computed in parallel; the sum is
    /// taken in node order so results do not depend on the thread count.
    pub fn integrate<F>(&self, f: F) -> (f64, f64)
    where
        F: Fn(&Point) -> f64 + Sync,
    {
        let values: Vec<f64> = self.nodes.par_iter().map(&f).collect();
        let fine: f64 = values.iter().zip(&self.weights).map(|(v, w)| v * w).sum();
        let coarse: f64 = values.iter().zip(&self.coarse).map(|(v, w)| v * w).sum();
        (fine, (fine - coarse).abs())
    }
}

/// Integral of `f` over the unit sphere `S^{N-1}`.
pub fn quad_sphere<F>(f: F, dim: usize, spec: &QuadSpec) -> QuadResult
where
    F: Fn(&Point) -> f64 + Sync,
{
    let rule = SphereRule::new(dim, spec);
    let (value, err) = rule.integrate(f);
    let err = if dim == 1 { 0.0 } else { err };
    QuadResult {
        value,
        err_estimate: err,
        converged: err <= spec.tolerance_for(value),
        subdivisions_used: rule.len(),
    }
}
