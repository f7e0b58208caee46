//! Points in `R^N` for `N <= 3`, balls, and the two-point quantities that
//! appear in the ball kernels.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest ambient dimension supported by the quadrature layer.
pub const MAX_DIM: usize = 3;

/// A point of `R^N`, `N` in `{1, 2, 3}`, stored inline so it is `Copy`.
#[derive(Clone, Copy, PartialEq)]
pub struct Point {
    coords: [f64; MAX_DIM],
    dim: usize,
}

impl Point {
    pub fn new(coords: &[f64]) -> Result<Self> {
        let dim = coords.len();
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::InvalidDimension(dim));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        let mut c = [0.0; MAX_DIM];
        c[..dim].copy_from_slice(coords);
        Ok(Self { coords: c, dim })
    }

    pub fn origin(dim: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&dim), "dimension {dim} out of range");
        Self {
            coords: [0.0; MAX_DIM],
            dim,
        }
    }

    /// The point `t * e_1`.
    pub fn on_axis(dim: usize, t: f64) -> Self {
        let mut p = Self::origin(dim);
        p.coords[0] = t;
        p
    }

    /// Unit coordinate vector `e_i`.
    pub fn unit(dim: usize, i: usize) -> Self {
        assert!(i < dim);
        let mut p = Self::origin(dim);
        p.coords[i] = 1.0;
        p
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn coords(&self) -> &[f64] {
        &self.coords[..self.dim]
    }

    #[inline]
    pub fn get(&self, i: usize) -> f64 {
        self.coords[i]
    }

    #[inline]
    pub fn with(&self, i: usize, value: f64) -> Self {
        let mut p = *self;
        p.coords[i] = value;
        p
    }

    #[inline]
    pub fn dot(&self, other: &Point) -> f64 {
        debug_assert_eq!(self.dim, other.dim);
        self.coords[0] * other.coords[0] + self.coords[1] * other.coords[1] + self.coords[2] * other.coords[2]
    }

    #[inline]
    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    #[inline]
    pub fn dist(&self, other: &Point) -> f64 {
        (*self - *other).norm()
    }

    #[inline]
    pub fn dist_sq(&self, other: &Point) -> f64 {
        (*self - *other).norm_sq()
    }

    pub fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim == dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: dim,
                got: self.dim,
            })
        }
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coords()).finish()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords().iter().map(|c| format!("{c}")).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Add for Point {
    type Output = Point;
    #[inline]
    fn add(mut self, rhs: Point) -> Point {
        debug_assert_eq!(self.dim, rhs.dim);
        for i in 0..MAX_DIM {
            self.coords[i] += rhs.coords[i];
        }
        self
    }
}

impl Sub for Point {
    type Output = Point;
    #[inline]
    fn sub(mut self, rhs: Point) -> Point {
        debug_assert_eq!(self.dim, rhs.dim);
        for i in 0..MAX_DIM {
            self.coords[i] -= rhs.coords[i];
        }
        self
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    #[inline]
    fn mul(mut self, rhs: f64) -> Point {
        for c in self.coords.iter_mut() {
            *c *= rhs;
        }
        self
    }
}

impl Neg for Point {
    type Output = Point;
    #[inline]
    fn neg(self) -> Point {
        self * -1.0
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<f64>::deserialize(d)?;
        Point::new(&v).map_err(serde::de::Error::custom)
    }
}

/// Closed or open ball `B_r(c)`; which one is meant is up to the caller.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ball {
    pub center: Point,
    pub radius: f64,
}

impl Ball {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "ball radius must be positive, got {radius}"
            )));
        }
        Ok(Self { center, radius })
    }

    pub fn unit(dim: usize) -> Self {
        Self {
            center: Point::origin(dim),
            radius: 1.0,
        }
    }

    pub fn dim(&self) -> usize {
        self.center.dim()
    }

    pub fn contains(&self, x: &Point) -> bool {
        x.dist_sq(&self.center) < self.radius * self.radius
    }

    /// Signed distance: negative inside, positive outside.
    pub fn signed_dist(&self, x: &Point) -> f64 {
        x.dist(&self.center) - self.radius
    }

    /// Distance between the two closed balls (0 if they meet).
    pub fn gap(&self, other: &Ball) -> f64 {
        (self.center.dist(&other.center) - self.radius - other.radius).max(0.0)
    }

    /// Parameters `r` at which the ray `p + r*dir` (`|dir| = 1`) crosses the
    /// sphere, in increasing order. Empty if the line misses the sphere.
    pub fn ray_crossings(&self, p: &Point, dir: &Point) -> Vec<f64> {
        let d = *p - self.center;
        let b = d.dot(dir);
        let c = d.norm_sq() - self.radius * self.radius;
        let disc = b * b - c;
        if disc <= 0.0 {
            return Vec::new();
        }
        let sq = disc.sqrt();
        // Stable root pair.
        let q = -b - b.signum() * sq;
        let (r1, r2) = if q != 0.0 { (q, c / q) } else { (-sq, sq) };
        let (lo, hi) = if r1 < r2 { (r1, r2) } else { (r2, r1) };
        vec![lo, hi]
    }

    /// Exit parameter of the ray `p + r*dir` from the ball, for `p` inside.
    pub fn exit_radius(&self, p: &Point, dir: &Point) -> f64 {
        let d = *p - self.center;
        let b = d.dot(dir);
        let c = d.norm_sq() - self.radius * self.radius;
        let disc = (b * b - c).max(0.0);
        // c <= 0 inside, so the positive root is -b + sqrt(disc).
        if b <= 0.0 {
            -b + disc.sqrt()
        } else {
            // -c / (b + sqrt) avoids cancellation.
            -c / (b + disc.sqrt())
        }
    }
}

/// `[x, y] = sqrt(|x|^2 |y|^2 - 2 x.y + 1)`.
///
/// Satisfies `[x,y]^2 = |x-y|^2 + (1-|x|^2)(1-|y|^2)`; negative round-off
/// under the root is clamped to zero.
pub fn bracket(x: &Point, y: &Point) -> f64 {
    let v = x.norm_sq() * y.norm_sq() - 2.0 * x.dot(y) + 1.0;
    v.max(0.0).sqrt()
}

/// `rho(x, y) = (1-|x|^2)_+ (1-|y|^2)_+ / |x-y|^2`.
pub fn rho(x: &Point, y: &Point) -> Result<f64> {
    let d2 = x.dist_sq(y);
    if d2 == 0.0 {
        return Err(Error::CoincidentPoints);
    }
    Ok(rho_unchecked(x, y, d2))
}

#[inline]
pub(crate) fn rho_unchecked(x: &Point, y: &Point, dist_sq: f64) -> f64 {
    let ax = (1.0 - x.norm_sq()).max(0.0);
    let ay = (1.0 - y.norm_sq()).max(0.0);
    ax * ay / dist_sq
}

/// Area of the unit sphere `S^{N-1}` (`2`, `2 pi`, `4 pi` for `N = 1, 2, 3`).
pub fn sphere_area(dim: usize) -> f64 {
    let n = dim as f64;
    2.0 * std::f64::consts::PI.powf(n / 2.0) / crate::special::gamma(n / 2.0)
}

/// Volume of the unit ball in `R^N`.
pub fn ball_volume(dim: usize) -> f64 {
    sphere_area(dim) / dim as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[f64]) -> Point {
        Point::new(c).unwrap()
    }

    #[test]
    fn bracket_at_origin_is_one() {
        assert_eq!(bracket(&Point::origin(2), &p(&[0.3, -0.7])), 1.0);
    }

    #[test]
    fn bracket_vanishes_on_diagonal_of_sphere() {
        let t = p(&[0.6, 0.8]);
        assert!(bracket(&t, &t) < 1e-7);
    }

    #[test]
    fn rho_known_value() {
        let r = rho(&Point::origin(1), &p(&[0.5])).unwrap();
        assert!((r - 3.0).abs() < 1e-15);
    }

    #[test]
    fn rho_zero_on_sphere() {
        assert_eq!(rho(&p(&[0.1, 0.2]), &p(&[0.0, 1.0])).unwrap(), 0.0);
    }

    #[test]
    fn rho_coincident_is_error() {
        let x = p(&[0.1, 0.2, 0.3]);
        assert_eq!(rho(&x, &x), Err(Error::CoincidentPoints));
    }

    #[test]
    fn point_validation() {
        assert!(matches!(Point::new(&[]), Err(Error::InvalidDimension(0))));
        assert!(Point::new(&[1.0, 2.0, 3.0, 4.0]).is_err());
        assert!(matches!(Point::new(&[f64::NAN]), Err(Error::NonFinite)));
    }

    #[test]
    fn surface_measures() {
        use std::f64::consts::PI;
        assert!((sphere_area(1) - 2.0).abs() < 1e-14);
        assert!((sphere_area(2) - 2.0 * PI).abs() < 1e-13);
        assert!((sphere_area(3) - 4.0 * PI).abs() < 1e-13);
        assert!((ball_volume(3) - 4.0 * PI / 3.0).abs() < 1e-13);
    }

    #[test]
    fn ray_exit_from_interior() {
        let b = Ball::unit(2);
        let x = p(&[0.5, 0.0]);
        let e = b.exit_radius(&x, &p(&[1.0, 0.0]));
        assert!((e - 0.5).abs() < 1e-15);
        let e = b.exit_radius(&x, &p(&[-1.0, 0.0]));
        assert!((e - 1.5).abs() < 1e-15);
        let c = b.ray_crossings(&x, &p(&[1.0, 0.0]));
        assert!((c[0] + 1.5).abs() < 1e-15 && (c[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn serde_roundtrip_point() {
        let x = p(&[0.25, -1.5]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, "[0.25,-1.5]");
        let y: Point = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
    }
}
