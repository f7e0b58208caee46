//! Closed-form kernels on the unit ball and on `R^N`: the Boggio Green
//! function, the boundary kernel `P_{s-1}`, Martin and Poisson kernels, and
//! the fundamental solution.

use crate::error::{Error, Result};
use crate::geometry::{bracket, rho, rho_unchecked, Point};
use crate::order::{constants, frac_split, k_green, ConstantSet, FracOrder};
use crate::quadrature::{quad_interval, QuadSpec};
use crate::special::IncompleteBeta;

/// How the inner Boggio integral is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum InnerMethod {
    /// Series for the incomplete Beta integral after `t = v / (1 + v)`.
    #[default]
    Beta,
    /// Adaptive quadrature of the raw `v`-integral; a cross-check.
    Quadrature,
}

/// Dimension, order, constants and quadrature settings for kernel evaluation.
#[derive(Clone, Debug)]
pub struct KernelContext {
    pub dim: usize,
    pub order: FracOrder,
    pub consts: ConstantSet,
    pub spec: QuadSpec,
    pub inner: InnerMethod,
    beta: IncompleteBeta,
}

impl KernelContext {
    pub fn new(dim: usize, s: f64) -> Result<Self> {
        Self::with_spec(dim, s, QuadSpec::default())
    }

    pub fn with_spec(dim: usize, s: f64, spec: QuadSpec) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::InvalidDimension(dim));
        }
        spec.validate()?;
        let order = frac_split(s)?;
        let consts = constants(dim, order)?;
        Ok(Self {
            dim,
            order,
            consts,
            spec,
            inner: InnerMethod::Beta,
            beta: IncompleteBeta::new(s, dim as f64 / 2.0 - s),
        })
    }

    pub fn with_inner(mut self, inner: InnerMethod) -> Self {
        self.inner = inner;
        self
    }

    #[inline]
    pub fn s(&self) -> f64 {
        self.order.s()
    }

    /// The same dimension and settings at order `s`.
    pub fn at_order(&self, s: f64) -> Result<Self> {
        Ok(Self::with_spec(self.dim, s, self.spec)?.with_inner(self.inner))
    }

    fn check(&self, x: &Point) -> Result<()> {
        x.check_dim(self.dim)
    }

    /// `int_0^rho v^{s-1} (1 + v)^{-N/2} dv`.
    pub fn boggio_inner(&self, rho_val: f64) -> Result<f64> {
        if !(rho_val >= 0.0) {
            return Err(Error::InvalidArgument(format!("rho = {rho_val}")));
        }
        if rho_val.is_infinite() {
            return Err(Error::Singular("rho is infinite".into()));
        }
        match self.inner {
            InnerMethod::Beta => Ok(self.inner_beta(rho_val)),
            InnerMethod::Quadrature => {
                let s = self.s();
                let half_n = self.dim as f64 / 2.0;
                quad_interval(
                    |v: f64| v.powf(s - 1.0) * (1.0 + v).powf(-half_n),
                    0.0,
                    rho_val,
                    &self.spec,
                )
                .into_result()
            }
        }
    }

    #[inline]
    fn inner_beta(&self, rho_val: f64) -> f64 {
        if rho_val == 0.0 {
            return 0.0;
        }
        let w0 = 1.0 / (1.0 + rho_val);
        self.beta.eval(rho_val * w0, w0)
    }

    /// Boggio's Green function `G_s(x, y)` of the unit ball.
    pub fn green(&self, x: &Point, y: &Point) -> Result<f64> {
        self.check(x)?;
        self.check(y)?;
        let r = rho(x, y)?;
        if r == 0.0 {
            return Ok(0.0);
        }
        let d2 = x.dist_sq(y);
        let inner = match self.inner {
            InnerMethod::Beta => self.inner_beta(r),
            InnerMethod::Quadrature => self.boggio_inner(r)?,
        };
        Ok(self.consts.k_green * d2.powf(self.s() - self.dim as f64 / 2.0) * inner)
    }

    /// [`green`](Self::green) without argument checks, for quadrature
    /// integrands; zero on the diagonal.
    #[inline]
    pub fn green_unchecked(&self, x: &Point, y: &Point) -> f64 {
        let d2 = x.dist_sq(y);
        if d2 == 0.0 {
            return 0.0;
        }
        let r = rho_unchecked(x, y, d2);
        if r == 0.0 {
            return 0.0;
        }
        self.consts.k_green * d2.powf(self.s() - self.dim as f64 / 2.0) * self.inner_beta(r)
    }

    /// The Green function for integer `s` via
    /// `2 k |x-y|^{2s-N} int_1^{[x,y]/|x-y|} (v^2 - 1)^{s-1} v^{1-N} dv`.
    ///
    /// Points outside the open ball give 0 (there `[x,y] <= |x-y|`).
    pub fn green_integer_form(&self, x: &Point, y: &Point) -> Result<f64> {
        self.check(x)?;
        self.check(y)?;
        if !self.order.is_integer() {
            return Err(Error::Branch(format!(
                "integer-order formula needs s in N, got {}",
                self.s()
            )));
        }
        let d = x.dist(y);
        if d == 0.0 {
            return Err(Error::CoincidentPoints);
        }
        if x.norm_sq() >= 1.0 || y.norm_sq() >= 1.0 {
            return Ok(0.0);
        }
        let p = bracket(x, y) / d;
        let s = self.s();
        let n = self.dim as f64;
        let integral = quad_interval(
            |v: f64| (v * v - 1.0).powf(s - 1.0) * v.powf(1.0 - n),
            1.0,
            p,
            &self.spec,
        )
        .into_result()?;
        Ok(2.0 * self.consts.k_green * d.powf(2.0 * s - n) * integral)
    }

    /// `P_{s-1}(x,y) = (1-|x|^2)^{s-2} (1-|y|^2)^{s-1} (1-|x|^2|y|^2) / [x,y]^N`.
    pub fn poly_p(&self, x: &Point, y: &Point) -> Result<f64> {
        self.check(x)?;
        self.check(y)?;
        let s = self.s();
        if s <= 1.0 {
            return Err(Error::InvalidOrder(s));
        }
        let ax = 1.0 - x.norm_sq();
        let ay = 1.0 - y.norm_sq();
        if ay <= 0.0 {
            return Ok(0.0);
        }
        if ax <= 0.0 {
            return if s >= 2.0 {
                Ok(0.0)
            } else {
                Err(Error::Singular(format!(
                    "P_(s-1) with s = {s} < 2 blows up at |x| = 1"
                )))
            };
        }
        Ok(self.poly_p_unchecked(x, y))
    }

    #[inline]
    pub(crate) fn poly_p_unchecked(&self, x: &Point, y: &Point) -> f64 {
        let s = self.s();
        let (nx, ny) = (x.norm_sq(), y.norm_sq());
        let (ax, ay) = (1.0 - nx, 1.0 - ny);
        if ax <= 0.0 || ay <= 0.0 {
            return 0.0;
        }
        ax.powf(s - 2.0) * ay.powf(s - 1.0) * (1.0 - nx * ny) / bracket(x, y).powi(self.dim as i32)
    }

    /// Martin kernel `M_s(x, theta) = (k/s) (1-|x|^2)_+^s / |theta - x|^N`.
    pub fn martin(&self, x: &Point, theta: &Point) -> Result<f64> {
        self.check(x)?;
        check_boundary_point(theta, self.dim)?;
        let d = x.dist(theta);
        if d == 0.0 {
            return Err(Error::Singular("Martin kernel at its pole".into()));
        }
        Ok(self.martin_unchecked(x, theta))
    }

    #[inline]
    pub(crate) fn martin_unchecked(&self, x: &Point, theta: &Point) -> f64 {
        let a = 1.0 - x.norm_sq();
        if a <= 0.0 {
            return 0.0;
        }
        self.consts.k_green / self.s() * a.powf(self.s()) / x.dist(theta).powi(self.dim as i32)
    }

    /// Fundamental solution `F_{N,s}(x)`: `kappa |x|^{2s-N}`, times `ln |x|`
    /// when `s - N/2` is a nonnegative integer.
    pub fn fundamental(&self, x: &Point) -> Result<f64> {
        self.check(x)?;
        let r = x.norm();
        if r == 0.0 {
            return Err(Error::Singular("fundamental solution at the origin".into()));
        }
        Ok(self.fundamental_radial(r))
    }

    #[inline]
    pub fn fundamental_radial(&self, r: f64) -> f64 {
        let p = r.powf(2.0 * self.s() - self.dim as f64);
        if self.consts.log_branch {
            self.consts.kappa_fund * p * r.ln()
        } else {
            self.consts.kappa_fund * p
        }
    }

    /// `R_s` in `-Delta F_{N,s} = F_{N,s-1} + R_s`: `C_2 |x|^{2s-N-2}` when
    /// `s - N/2` is a positive integer, otherwise 0.
    pub fn fundamental_remainder(&self, x: &Point) -> Result<f64> {
        self.check(x)?;
        let r = x.norm();
        if r == 0.0 {
            return Err(Error::Singular("remainder at the origin".into()));
        }
        let d = self.s() - self.dim as f64 / 2.0;
        if self.consts.log_branch && d >= 0.5 {
            Ok(self.consts.c2_fund * r.powf(2.0 * self.s() - self.dim as f64 - 2.0))
        } else {
            Ok(0.0)
        }
    }

    /// The comparison function of the two-sided Green estimates, with
    /// `d(x) = 1 - |x|`; which form applies depends on `2s` versus `N`.
    pub fn green_comparator(&self, x: &Point, y: &Point) -> f64 {
        let s = self.s();
        let n = self.dim as f64;
        let dx = (1.0 - x.norm()).max(0.0);
        let dy = (1.0 - y.norm()).max(0.0);
        let r = x.dist(y);
        let two_s = 2.0 * s;
        if (two_s - n).abs() < 1e-12 {
            (1.0 + (dx * dy).powf(s) / r.powf(two_s)).ln()
        } else if n > two_s {
            r.powf(two_s - n) * (1.0f64).min((dx * dy).powf(s) / r.powf(two_s))
        } else {
            (dx * dy).powf(s - n / 2.0) * (1.0f64).min((dx * dy).powf(n / 2.0) / r.powf(n))
        }
    }
}

/// Poisson kernel of the Laplacian, `2 k_{N,1} (1-|x|^2) / |x - theta|^N`.
pub fn poisson(x: &Point, theta: &Point, dim: usize) -> Result<f64> {
    x.check_dim(dim)?;
    check_boundary_point(theta, dim)?;
    if x.norm_sq() >= 1.0 {
        return Err(Error::Domain("Poisson kernel needs |x| < 1".into()));
    }
    Ok(2.0 * k_green(dim, 1.0) * (1.0 - x.norm_sq()) / x.dist(theta).powi(dim as i32))
}

fn check_boundary_point(theta: &Point, dim: usize) -> Result<()> {
    theta.check_dim(dim)?;
    if (theta.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidArgument(format!(
            "boundary point must have unit norm, got {}",
            theta.norm()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::quadrature::quad_sphere;

    fn p1(x: f64) -> Point {
        Point::on_axis(1, x)
    }

    fn random_interior(rng: &mut ChaCha8Rng, dim: usize) -> Point {
        loop {
            let c: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let p = Point::new(&c).unwrap();
            if p.norm() < 0.95 {
                return p;
            }
        }
    }

    #[test]
    fn inner_integral_closed_forms() {
        let c = KernelContext::new(2, 1.0).unwrap();
        for &r in &[0.0f64, 0.3, 3.0, 1e6] {
            let v = c.boggio_inner(r).unwrap();
            assert!(
                (v - r.ln_1p()).abs() <= 1e-13 * r.ln_1p().max(1e-300),
                "rho = {r}"
            );
        }
        let c = KernelContext::new(1, 0.5).unwrap();
        for &r in &[1e-8f64, 0.5, 3.0, 1e4] {
            let exact = 2.0 * r.sqrt().asinh();
            assert!((c.boggio_inner(r).unwrap() - exact).abs() < 1e-13 * exact);
        }
    }

    #[test]
    fn inner_integral_methods_agree() {
        for &(n, s) in &[(1, 1.5), (2, 1.5), (3, 1.25), (3, 2.5), (1, 0.3)] {
            let beta = KernelContext::new(n, s).unwrap();
            let quad = beta.clone().with_inner(InnerMethod::Quadrature);
            for &r in &[0.01, 0.7, 5.0, 400.0] {
                let a = beta.boggio_inner(r).unwrap();
                let b = quad.boggio_inner(r).unwrap();
                assert!((a - b).abs() < 1e-9 * b, "(N,s)=({n},{s}) rho={r}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn log_formula_in_one_dimension() {
        let c = KernelContext::new(1, 0.5).unwrap();
        let g = c.green(&p1(0.0), &p1(0.5)).unwrap();
        let exact = (2.0 + 3f64.sqrt()).ln() / PI;
        assert!((g - exact).abs() < 1e-13 * exact);
        assert_eq!(c.green(&p1(0.0), &p1(1.0)).unwrap(), 0.0);
        assert_eq!(c.green(&p1(0.0), &p1(-1.5)).unwrap(), 0.0);
        assert!(matches!(
            c.green(&p1(0.2), &p1(0.2)),
            Err(Error::CoincidentPoints)
        ));
    }

    #[test]
    fn image_charge_in_three_dimensions() {
        let c = KernelContext::new(3, 1.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let x = random_interior(&mut rng, 3);
            let y = random_interior(&mut rng, 3);
            let ny = y.norm();
            let star = y * (1.0 / (ny * ny));
            let exact = (1.0 / x.dist(&y) - 1.0 / (ny * x.dist(&star))) / (4.0 * PI);
            let g = c.green(&x, &y).unwrap();
            assert!((g - exact).abs() < 1e-10 * exact, "{g} vs {exact}");
            let gi = c.green_integer_form(&x, &y).unwrap();
            assert!((gi - exact).abs() < 1e-8 * exact);
        }
    }

    #[test]
    fn integer_form_agrees_at_s2() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=3 {
            let c = KernelContext::new(n, 2.0).unwrap();
            for _ in 0..100 {
                let x = random_interior(&mut rng, n);
                let y = random_interior(&mut rng, n);
                let a = c.green(&x, &y).unwrap();
                let b = c.green_integer_form(&x, &y).unwrap();
                assert!((a - b).abs() < 1e-9 * a, "N={n}: {a} vs {b}");
            }
        }
        let c = KernelContext::new(1, 1.5).unwrap();
        assert!(matches!(
            c.green_integer_form(&p1(0.1), &p1(0.2)),
            Err(Error::Branch(_))
        ));
    }

    #[test]
    fn classical_interval_green_function() {
        // G_1(x, y) = (1 + min)(1 - max) / 2 on (-1, 1).
        let c = KernelContext::new(1, 1.0).unwrap();
        for &(x, y) in &[(0.0, 0.5), (-0.7, 0.2), (0.9, -0.9)] {
            let exact = (1.0 + f64::min(x, y)) * (1.0 - f64::max(x, y)) / 2.0;
            let g = c.green(&p1(x), &p1(y)).unwrap();
            assert!((g - exact).abs() < 1e-14, "({x},{y}): {g} vs {exact}");
        }
    }

    #[test]
    fn green_symmetry_and_positivity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for &(n, s) in &[(1, 1.5), (2, 0.7), (3, 2.5), (2, 1.0)] {
            let c = KernelContext::new(n, s).unwrap();
            for _ in 0..50 {
                let x = random_interior(&mut rng, n);
                let y = random_interior(&mut rng, n);
                let a = c.green(&x, &y).unwrap();
                let b = c.green(&y, &x).unwrap();
                assert!(a > 0.0);
                assert!((a - b).abs() <= 1e-12 * a);
            }
        }
    }

    #[test]
    fn boundary_kernel_special_values() {
        let c = KernelContext::new(2, 1.5).unwrap();
        let x = Point::new(&[0.3, -0.4]).unwrap();
        let o = Point::origin(2);
        let v = c.poly_p(&x, &o).unwrap();
        assert!((v - (1.0 - 0.25f64).powf(-0.5)).abs() < 1e-14);
        let v = c.poly_p(&o, &x).unwrap();
        assert!((v - 0.75f64.powf(0.5)).abs() < 1e-14);
        assert!(c.poly_p(&Point::new(&[1.0, 0.0]).unwrap(), &x).is_err());
        let c2 = KernelContext::new(2, 2.5).unwrap();
        assert_eq!(c2.poly_p(&Point::new(&[1.0, 0.0]).unwrap(), &x).unwrap(), 0.0);
    }

    #[test]
    fn martin_kernel_values() {
        let c = KernelContext::new(3, 1.25).unwrap();
        let th = Point::unit(3, 2);
        let m0 = c.martin(&Point::origin(3), &th).unwrap();
        assert!((m0 - c.consts.k_green / 1.25).abs() < 1e-15);
        assert_eq!(c.martin(&Point::unit(3, 0), &th).unwrap(), 0.0);
        assert!(c.martin(&th, &th).is_err());
        assert!(c.martin(&Point::origin(3), &(th * 0.5)).is_err());
    }

    #[test]
    fn poisson_kernel() {
        let th = p1(1.0);
        for &x in &[-0.5, 0.0, 0.8] {
            assert!((poisson(&p1(x), &th, 1).unwrap() - (1.0 + x) / 2.0).abs() < 1e-15);
        }
        let spec = QuadSpec::default();
        for n in 2..=3 {
            let x = Point::new(&[0.3, 0.2, 0.1][..n]).unwrap();
            let total = quad_sphere(|t| poisson(&x, t, n).unwrap(), n, &spec).value;
            assert!((total - 1.0).abs() < 1e-10, "N={n}: {total}");
            let at0 = poisson(&Point::origin(n), &Point::unit(n, 0), n).unwrap();
            assert!((at0 - 2.0 * k_green(n, 1.0)).abs() < 1e-15);
        }
    }

    #[test]
    fn classical_fundamental_solutions() {
        let c = KernelContext::new(3, 1.0).unwrap();
        let v = c.fundamental(&Point::new(&[0.6, 0.8, 0.0]).unwrap()).unwrap();
        assert!((v - 1.0 / (4.0 * PI)).abs() < 1e-15);
        let c = KernelContext::new(2, 1.0).unwrap();
        let e = std::f64::consts::E;
        let v = c.fundamental(&Point::new(&[e, 0.0]).unwrap()).unwrap();
        assert!((v + 1.0 / (2.0 * PI)).abs() < 1e-15);
        let c = KernelContext::new(1, 1.0).unwrap();
        assert!((c.fundamental(&p1(0.5)).unwrap() + 0.25).abs() < 1e-15);
        assert!(c.fundamental(&p1(0.0)).is_err());
    }

    #[test]
    fn remainder_branches() {
        let x = Point::new(&[0.5, 0.1]).unwrap();
        let c = KernelContext::new(2, 2.0).unwrap();
        let r = c.fundamental_remainder(&x).unwrap();
        assert!((r + 4.0 * c.consts.kappa_fund).abs() < 1e-16);
        // s = N/2 exactly: log branch but no remainder.
        let c = KernelContext::new(3, 1.5).unwrap();
        assert_eq!(c.fundamental_remainder(&Point::unit(3, 0)).unwrap(), 0.0);
        // s - N/2 = 1 in one dimension: x^2 ln|x| / (2 pi) has
        // -F'' = -ln|x| / pi - 3 / (2 pi), so R = -3 kappa.
        let c = KernelContext::new(1, 1.5).unwrap();
        let r = c.fundamental_remainder(&p1(0.4)).unwrap();
        assert!((r + 3.0 / (2.0 * PI)).abs() < 1e-15);
        let c = KernelContext::new(3, 2.0).unwrap();
        assert_eq!(c.fundamental_remainder(&Point::unit(3, 1)).unwrap(), 0.0);
    }

    #[test]
    fn auxiliary_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let spec = QuadSpec::default();
        for _ in 0..2000 {
            let n = rng.gen_range(1..=3usize);
            let nf = n as f64;
            let s = rng.gen_range(0.05..4.0);
            let big_r: f64 = rng.gen_range(0.05..5.0);
            let r: f64 = rng.gen_range(0.001..10.0);
            let eps = rng.gen_range(0.0..1.0) * nf.min(s);
            if eps <= 0.0 {
                continue;
            }
            let lhs = big_r.powf(2.0 * s - nf)
                * quad_interval(
                    |t: f64| t.powf(s - 1.0) * (t + 1.0).powf(-nf / 2.0),
                    0.0,
                    r / (big_r * big_r),
                    &spec,
                )
                .value;
            let rhs = 2.0 / s * big_r.powf(eps - nf) * r.powf(s - eps / 2.0);
            assert!(lhs <= rhs * (1.0 + 1e-9), "N={n} s={s} R={big_r} r={r} eps={eps}");
        }
    }
}
