//! Tabulated one-dimensional profiles: uniform-grid cubic interpolation and
//! radial fields built from it.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::frac_op::{Field, Support};
use crate::geometry::{Ball, Point};

/// Uniform-grid cubic interpolation on `[a, a + h (n-1)]`.
#[derive(Clone, Debug)]
pub(crate) struct Interp1 {
    pub a: f64,
    pub h: f64,
    pub values: Vec<f64>,
    /// Reflect about `a` (even extension), for radial profiles.
    pub even: bool,
}

impl Interp1 {
    pub fn eval(&self, t: f64) -> f64 {
        let n = self.values.len();
        let at = |i: isize| -> f64 {
            if i < 0 {
                self.values[(-i) as usize]
            } else {
                self.values[i as usize]
            }
        };
        let u = ((t - self.a) / self.h).clamp(0.0, (n - 1) as f64);
        let i = (u.floor() as isize).min(n as isize - 2);
        let f = u - i as f64;
        // Four-point Lagrange on i-1..i+2, shifted inward at the ends.
        let lo = if self.even { -1 } else { 0 };
        let base = (i - 1).clamp(lo, n as isize - 4);
        let xs = f + (i - base) as f64;
        let mut total = 0.0;
        for k in 0..4 {
            let mut l = 1.0;
            for j in 0..4 {
                if j != k {
                    l *= (xs - j as f64) / (k as f64 - j as f64);
                }
            }
            total += l * at(base + k as isize);
        }
        total
    }
}

/// A radial field `u(x) = p(|x - center|)` with `p` tabulated piecewise
/// between breakpoints (a kink of `p` should sit on a breakpoint).
#[derive(Clone, Debug)]
pub struct RadialTable {
    center: Point,
    breaks: Vec<f64>,
    pieces: Vec<Interp1>,
    support: Support,
}

impl RadialTable {
    /// Tabulates `p` with `nodes` points on each piece `[breaks[i], breaks[i+1]]`;
    /// `breaks` must start at 0 and increase. Beyond the last break the field
    /// is 0 if `support` is a ball and the last tabulated value otherwise.
    pub fn build<P>(center: Point, breaks: &[f64], nodes: usize, support: Support, p: P) -> Result<Self>
    where
        P: Fn(f64) -> Result<f64> + Sync,
    {
        if breaks.len() < 2 || breaks[0] != 0.0 || breaks.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidArgument(format!("bad breakpoints {breaks:?}")));
        }
        let n = nodes.max(4);
        let pieces = breaks
            .windows(2)
            .enumerate()
            .map(|(k, w)| {
                let h = (w[1] - w[0]) / (n - 1) as f64;
                let values = (0..n)
                    .into_par_iter()
                    .map(|i| p(w[0] + h * i as f64))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Interp1 {
                    a: w[0],
                    h,
                    values,
                    even: k == 0,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            center,
            breaks: breaks.to_vec(),
            pieces,
            support,
        })
    }

    pub fn profile(&self, r: f64) -> f64 {
        let last = *self.breaks.last().expect("non-empty");
        if r > last {
            return match self.support {
                Support::Ball(_) => 0.0,
                Support::Whole { .. } => self.pieces.last().expect("non-empty").eval(last),
            };
        }
        let k = self.breaks[1..]
            .iter()
            .position(|b| r <= *b)
            .unwrap_or(self.pieces.len() - 1);
        self.pieces[k].eval(r)
    }
}

impl Field for RadialTable {
    fn dim(&self) -> usize {
        self.center.dim()
    }

    fn eval(&self, x: &Point) -> f64 {
        if let Support::Ball(b) = self.support {
            if !b.contains(x) {
                return 0.0;
            }
        }
        self.profile(x.dist(&self.center))
    }

    fn support(&self) -> Support {
        self.support
    }

    fn kinks(&self) -> Vec<Ball> {
        let mut k: Vec<Ball> = self.breaks[1..]
            .iter()
            .filter_map(|&r| Ball::new(self.center, r).ok())
            .collect();
        if let Support::Ball(b) = self.support {
            if !k.contains(&b) {
                k.push(b);
            }
        }
        k
    }

    fn symmetry_center(&self) -> Option<Point> {
        Some(self.center)
    }
}
