//! Radial polynomial bumps `sum_j c_j (R^2 - |x - x0|^2)_+^{a_j}` and their
//! exact Laplacians.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{sphere_area, Ball, Point};
use crate::order::gamma_ball;
use crate::special::gamma;

/// One term `coef * (R^2 - q)^exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub coef: f64,
    pub exponent: f64,
}

/// Global regularity of the zero extension of a bump across its support
/// sphere: the largest `k` with the extension in `C^k`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct SmoothnessClass {
    pub global_order: f64,
}

impl SmoothnessClass {
    /// Class of a single term with exponent `a`.
    pub fn of_exponent(a: f64) -> Self {
        let k = if a == a.floor() { a - 1.0 } else { a.floor() };
        Self {
            global_order: k.max(0.0),
        }
    }

    /// Smooth everywhere (the zero field).
    pub fn infinite() -> Self {
        Self {
            global_order: f64::INFINITY,
        }
    }
}

/// `sum_j c_j (R^2 - |x - x0|^2)^{a_j}` inside `B_R(x0)`, zero outside.
///
/// Terms are kept sorted by decreasing exponent with equal exponents merged
/// and zero coefficients dropped.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BumpRepr", into = "BumpRepr")]
pub struct RadialPolyBump {
    center: Point,
    radius: f64,
    terms: Vec<Term>,
}

#[derive(Serialize, Deserialize)]
struct BumpRepr {
    center: Point,
    radius: f64,
    terms: Vec<Term>,
}

impl TryFrom<BumpRepr> for RadialPolyBump {
    type Error = Error;

    fn try_from(r: BumpRepr) -> Result<Self> {
        Self::new(r.center, r.radius, r.terms)
    }
}

impl From<RadialPolyBump> for BumpRepr {
    fn from(u: RadialPolyBump) -> Self {
        Self {
            center: u.center,
            radius: u.radius,
            terms: u.terms,
        }
    }
}

impl RadialPolyBump {
    pub fn new(center: Point, radius: f64, terms: Vec<Term>) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidArgument(format!("bump radius {radius}")));
        }
        if terms
            .iter()
            .any(|t| !t.coef.is_finite() || !t.exponent.is_finite())
        {
            return Err(Error::NonFinite);
        }
        Ok(Self {
            center,
            radius,
            terms: normalize(terms),
        })
    }

    /// `coef * (R^2 - |x - center|^2)_+^exponent`.
    pub fn single(center: Point, radius: f64, coef: f64, exponent: f64) -> Result<Self> {
        Self::new(center, radius, vec![Term { coef, exponent }])
    }

    /// `gamma_{N,s} (r^2 - |x - x0|^2)_+^s`, the solution of `(-Delta)^s u = 1`
    /// in `B_r(x0)` with zero exterior data.
    pub fn torsion(center: Point, radius: f64, s: f64) -> Result<Self> {
        Self::single(center, radius, gamma_ball(center.dim(), s), s)
    }

    /// The zero field in dimension `dim`.
    pub fn zero(dim: usize) -> Self {
        Self {
            center: Point::origin(dim),
            radius: 1.0,
            terms: Vec::new(),
        }
    }

    pub fn center(&self) -> Point {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn dim(&self) -> usize {
        self.center.dim()
    }

    pub fn support(&self) -> Ball {
        Ball {
            center: self.center,
            radius: self.radius,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exponent(&self) -> Option<f64> {
        self.terms.last().map(|t| t.exponent)
    }

    pub fn max_exponent(&self) -> Option<f64> {
        self.terms.first().map(|t| t.exponent)
    }

    pub fn smoothness(&self) -> SmoothnessClass {
        self.terms
            .iter()
            .map(|t| SmoothnessClass::of_exponent(t.exponent))
            .fold(SmoothnessClass::infinite(), |a, b| {
                if b.global_order < a.global_order {
                    b
                } else {
                    a
                }
            })
    }

    /// The value at `x`; exactly zero on and outside the support sphere.
    pub fn evaluate(&self, x: &Point) -> f64 {
        let w = self.radius * self.radius - x.dist_sq(&self.center);
        if w <= 0.0 {
            return 0.0;
        }
        self.eval_w(w)
    }

    /// The profile as a function of `w = R^2 - |x - x0|^2 > 0`.
    pub fn eval_w(&self, w: f64) -> f64 {
        let lw = w.ln();
        self.terms
            .iter()
            .map(|t| {
                if t.exponent == 0.0 {
                    t.coef
                } else {
                    t.coef * (t.exponent * lw).exp()
                }
            })
            .sum()
    }

    pub fn scaled(&self, k: f64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coef: k * t.coef,
                exponent: t.exponent,
            })
            .collect();
        Self {
            center: self.center,
            radius: self.radius,
            terms: normalize(terms),
        }
    }

    pub fn translated(&self, shift: &Point) -> Self {
        Self {
            center: self.center + *shift,
            ..self.clone()
        }
    }

    /// Sum of two bumps sharing center and radius.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.center != other.center || self.radius != other.radius {
            return Err(Error::InvalidArgument(
                "bumps with different supports cannot be added".into(),
            ));
        }
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        Ok(Self {
            center: self.center,
            radius: self.radius,
            terms: normalize(terms),
        })
    }

    /// `int_{R^N} u`, in closed form; every exponent must exceed `-1`.
    pub fn integral(&self) -> Result<f64> {
        let n = self.dim() as f64;
        let mut total = 0.0;
        for t in &self.terms {
            if t.exponent <= -1.0 {
                return Err(Error::Divergent(format!(
                    "exponent {} is not integrable at the support sphere",
                    t.exponent
                )));
            }
            // |S| / 2 * R^{2a+N} * B(a + 1, N/2)
            let a = t.exponent;
            let beta = gamma(a + 1.0) * gamma(n / 2.0) / gamma(a + 1.0 + n / 2.0);
            total += t.coef * 0.5 * sphere_area(self.dim()) * self.radius.powf(2.0 * a + n) * beta;
        }
        Ok(total)
    }
}

fn normalize(mut terms: Vec<Term>) -> Vec<Term> {
    terms.sort_by(|a, b| b.exponent.total_cmp(&a.exponent));
    let mut out: Vec<Term> = Vec::with_capacity(terms.len());
    for t in terms {
        match out.last_mut() {
            Some(last) if last.exponent == t.exponent => last.coef += t.coef,
            _ => out.push(t),
        }
    }
    out.retain(|t| t.coef != 0.0);
    out
}

/// `-Delta u` in the same family.
///
/// Each term `c w^a` (with `w = R^2 - q`) maps to
/// `c (2aN + 4a(a-1)) w^{a-1} - 4 c a(a-1) R^2 w^{a-2}`. In strict mode every
/// exponent must be at least 2, so that the zero extension is `C^1` and the
/// identity holds across the support sphere; otherwise the result is only
/// valid inside the support ball.
pub fn laplacian_exact(u: &RadialPolyBump, dim: usize, strict: bool) -> Result<RadialPolyBump> {
    u.center.check_dim(dim)?;
    let n = dim as f64;
    let r2 = u.radius * u.radius;
    let mut terms = Vec::with_capacity(2 * u.terms.len());
    for t in &u.terms {
        let (c, a) = (t.coef, t.exponent);
        if strict && a < 2.0 {
            return Err(Error::Smoothness(format!(
                "exponent {a} < 2: the Laplacian of the zero extension has a surface part"
            )));
        }
        let aa = a * (a - 1.0);
        terms.push(Term {
            coef: c * (2.0 * a * n + 4.0 * aa),
            exponent: a - 1.0,
        });
        terms.push(Term {
            coef: -4.0 * c * aa * r2,
            exponent: a - 2.0,
        });
    }
    Ok(RadialPolyBump {
        center: u.center,
        radius: u.radius,
        terms: normalize(terms),
    })
}

/// `(-Delta)^m u`, `m` applications of [`laplacian_exact`].
pub fn iterate_laplacian(u: &RadialPolyBump, m: u32, dim: usize, strict: bool) -> Result<RadialPolyBump> {
    let mut v = u.clone();
    for _ in 0..m {
        v = laplacian_exact(&v, dim, strict)?;
    }
    Ok(v)
}
