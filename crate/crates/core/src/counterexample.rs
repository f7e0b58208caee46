//! A sign-changing solution with positive right-hand side on two disjoint
//! balls, for `s` in `(k, k+1)` with `k` odd.
//!
//! With `psi` the torsion function of `A` and `g >= 0` supported inside `D`,
//! `u = a psi - g` solves `(-Delta)^s u = f` in `D u A` where
//!
//! * on `A`: `f = a - C int_D g(y) |x-y|^{-N-2s} dy`,
//! * on `D`: `f = a C int_A psi(y) |x-y|^{-N-2s} dy - (-Delta)^s g(x)`,
//!
//! and `a` is large enough for `f > 0`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::frac_op::{frac_s_smooth, license, License};
use crate::geometry::{Ball, Point};
use crate::kernels::KernelContext;
use crate::quadrature::{quad_ball_with, BallQuad, QuadSpec};
use crate::radial::RadialPolyBump;

/// Input of [`build`].
#[derive(Clone, Debug, Serialize)]
pub struct CEConfig {
    pub dim: usize,
    pub s: f64,
    pub d: Ball,
    pub a: Ball,
    pub g: RadialPolyBump,
    /// Safety factor applied to the threshold for `a`; must exceed 1.
    pub margin: f64,
    /// Grid points per axis on each component.
    pub grid: usize,
}

impl CEConfig {
    /// `N = 1`, `s = 1.5`: `D = B_{0.5}(-0.5)`, `A = B_{0.25}(0.5)`,
    /// `g = (0.25^2 - (y + 0.5)^2)_+^5`.
    pub fn reference() -> Self {
        let d = Ball::new(Point::on_axis(1, -0.5), 0.5).expect("valid ball");
        let a = Ball::new(Point::on_axis(1, 0.5), 0.25).expect("valid ball");
        let g = RadialPolyBump::single(Point::on_axis(1, -0.5), 0.25, 1.0, 5.0).expect("valid bump");
        Self {
            dim: 1,
            s: 1.5,
            d,
            a,
            g,
            margin: 1.05,
            grid: 201,
        }
    }

    /// A configuration in dimension `dim` with the same layout along the first axis.
    pub fn along_axis(dim: usize, s: f64) -> Result<Self> {
        let m = (s.ceil() - 1.0).max(0.0);
        let d = Ball::new(Point::on_axis(dim, -0.5), 0.5)?;
        let a = Ball::new(Point::on_axis(dim, 0.5), 0.25)?;
        let g = RadialPolyBump::single(Point::on_axis(dim, -0.5), 0.25, 1.0, 2.0 * m + 3.0)?;
        Ok(Self {
            dim,
            s,
            d,
            a,
            g,
            margin: 1.05,
            grid: if dim == 1 { 201 } else { 21 },
        })
    }

    fn validate(&self) -> Result<KernelContext> {
        let gmax = self.g.eval_w(self.g.radius() * self.g.radius()).abs();
        // Absolute tolerances relative to the size of g; its integrals can be tiny.
        let spec = QuadSpec::default().with_abs_tol(1e-12 * gmax.clamp(1e-200, 1.0));
        let ctx = KernelContext::with_spec(self.dim, self.s, spec)?;
        let m = ctx.order.m();
        if ctx.order.is_integer() || m % 2 == 0 {
            return Err(Error::Regime(format!(
                "the construction needs s in (k, k+1) with k odd, got s = {}",
                self.s
            )));
        }
        for b in [&self.d, &self.a] {
            if b.dim() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    got: b.dim(),
                });
            }
        }
        if self.d.gap(&self.a) <= 0.0 {
            return Err(Error::Config("D and A must be at positive distance".into()));
        }
        let gs = self.g.support();
        if self.g.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: self.g.dim(),
            });
        }
        if gs.center.dist(&self.d.center) + gs.radius >= self.d.radius {
            return Err(Error::Config("supp g must lie strictly inside D".into()));
        }
        if self.g.is_zero() {
            return Err(Error::Config("g must not vanish".into()));
        }
        let r2 = gs.radius * gs.radius;
        if (1..=400).any(|i| self.g.eval_w(r2 * i as f64 / 400.0) < 0.0) {
            return Err(Error::Config("g must be nonnegative".into()));
        }
        if license(&self.g, m)? != License::Strict {
            return Err(Error::Smoothness(format!("g must be of class C^{}", 2 * m + 2)));
        }
        if !(self.margin > 1.0) {
            return Err(Error::Config(format!(
                "margin must exceed 1, got {}",
                self.margin
            )));
        }
        if self.grid < 2 {
            return Err(Error::Config("grid needs at least 2 points per axis".into()));
        }
        Ok(ctx)
    }
}

/// Which part of `Omega = D u A` a point belongs to (closures included).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Component {
    D,
    A,
    Outside,
}

impl Component {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::D => "D",
            Self::A => "A",
            Self::Outside => "outside",
        }
    }
}

/// Output of [`build`].
#[derive(Clone, Debug)]
pub struct CEResult {
    pub cfg: CEConfig,
    pub ctx: KernelContext,
    pub a: f64,
    pub psi: RadialPolyBump,
    /// `max_{A} C int_D g |x-y|^{-N-2s}`.
    pub threshold_a: f64,
    /// `max_{D} (-Delta)^s g / (C int_A psi |x-y|^{-N-2s})`.
    pub threshold_d: f64,
    /// Minimum of `f` over both component grids at build time.
    pub f_min: f64,
}

/// `int b(y) |x - y|^{-N-2s} dy` for `x` outside the support of `b`.
fn riesz_tail(b: &RadialPolyBump, x: &Point, ctx: &KernelContext) -> f64 {
    let sup = b.support();
    let kinks = [sup];
    let pts = [*x];
    let p = -(ctx.dim as f64 + 2.0 * ctx.s()) / 2.0;
    let q = BallQuad::new(sup)
        .kinks(&kinks)
        .points(&pts)
        .axis((ctx.dim == 3).then(|| *x - b.center()));
    quad_ball_with(|y| b.evaluate(y) * x.dist_sq(y).powf(p), &q, &ctx.spec).value
}

/// Grid on the closed ball: `n` equispaced points in 1D, otherwise the
/// `n^N` cube grid of the bounding box restricted to the ball.
pub fn ball_grid(b: &Ball, n: usize) -> Vec<Point> {
    let dim = b.dim();
    let n = n.max(2);
    let h = 2.0 * b.radius / (n - 1) as f64;
    let total = n.pow(dim as u32);
    (0..total)
        .filter_map(|mut k| {
            let mut c = [0.0; 3];
            for (i, ci) in c.iter_mut().enumerate().take(dim) {
                *ci = b.center.get(i) - b.radius + h * (k % n) as f64;
                k /= n;
            }
            let p = Point::new(&c[..dim]).ok()?;
            (p.dist(&b.center) <= b.radius * (1.0 + 1e-12)).then_some(p)
        })
        .collect()
}

/// Builds `a`, `psi` and the samplers.
pub fn build(cfg: &CEConfig) -> Result<CEResult> {
    let ctx = cfg.validate()?;
    let c = ctx.consts.c_interaction.expect("fractional order");
    let psi = RadialPolyBump::torsion(cfg.a.center, cfg.a.radius, cfg.s)?;

    let grid_a = ball_grid(&cfg.a, cfg.grid);
    let grid_d = ball_grid(&cfg.d, cfg.grid);
    let threshold_a = grid_a
        .par_iter()
        .map(|x| c * riesz_tail(&cfg.g, x, &ctx))
        .collect::<Vec<_>>()
        .into_iter()
        .fold(f64::NEG_INFINITY, f64::max);
    let ratios = grid_d
        .par_iter()
        .map(|x| {
            let den = c * riesz_tail(&psi, x, &ctx);
            if !(den > f64::MIN_POSITIVE) {
                return Err(Error::Config(format!(
                    "interaction of A with {x} underflows ({den:e}); A is too small or too far"
                )));
            }
            Ok(frac_s_smooth(&cfg.g, x, &ctx)? / den)
        })
        .collect::<Result<Vec<_>>>()?;
    let threshold_d = ratios.into_iter().fold(f64::NEG_INFINITY, f64::max);
    let a = cfg.margin * threshold_a.max(threshold_d);
    let mut res = CEResult {
        cfg: cfg.clone(),
        ctx,
        a,
        psi,
        threshold_a,
        threshold_d,
        f_min: f64::NAN,
    };
    res.f_min = res.f_min_on(&grid_a, &grid_d)?;
    Ok(res)
}

impl CEResult {
    /// The same construction with a different `a` (used to probe the threshold).
    pub fn with_a(&self, a: f64) -> Result<Self> {
        let mut r = self.clone();
        r.a = a;
        let (ga, gd) = self.grids();
        r.f_min = r.f_min_on(&ga, &gd)?;
        Ok(r)
    }

    pub fn grids(&self) -> (Vec<Point>, Vec<Point>) {
        (
            ball_grid(&self.cfg.a, self.cfg.grid),
            ball_grid(&self.cfg.d, self.cfg.grid),
        )
    }

    fn f_min_on(&self, grid_a: &[Point], grid_d: &[Point]) -> Result<f64> {
        let all: Vec<&Point> = grid_a.iter().chain(grid_d).collect();
        let vals = all
            .par_iter()
            .map(|x| self.f(x).map(|v| v.unwrap_or(f64::INFINITY)))
            .collect::<Result<Vec<_>>>()?;
        Ok(vals.into_iter().fold(f64::INFINITY, f64::min))
    }

    pub fn component(&self, x: &Point) -> Component {
        let tol = 1e-12;
        if self.cfg.d.signed_dist(x) <= tol * self.cfg.d.radius {
            Component::D
        } else if self.cfg.a.signed_dist(x) <= tol * self.cfg.a.radius {
            Component::A
        } else {
            Component::Outside
        }
    }

    /// `u = a psi - g`.
    pub fn u(&self, x: &Point) -> f64 {
        self.a * self.psi.evaluate(x) - self.cfg.g.evaluate(x)
    }

    /// The right-hand side on the closed components; `None` elsewhere.
    pub fn f(&self, x: &Point) -> Result<Option<f64>> {
        x.check_dim(self.ctx.dim)?;
        let c = self.ctx.consts.c_interaction.expect("fractional order");
        match self.component(x) {
            Component::A => Ok(Some(self.a - c * riesz_tail(&self.cfg.g, x, &self.ctx))),
            Component::D => {
                let lg = frac_s_smooth(&self.cfg.g, x, &self.ctx)?;
                Ok(Some(self.a * c * riesz_tail(&self.psi, x, &self.ctx) - lg))
            }
            Component::Outside => Ok(None),
        }
    }

    /// Rows `(x, u, f, component)` over both component grids.
    pub fn fields(&self) -> Result<Vec<FieldRow>> {
        let (ga, gd) = self.grids();
        let mut pts: Vec<Point> = gd.into_iter().chain(ga).collect();
        pts.sort_by(|p, q| p.coords().partial_cmp(q.coords()).expect("finite"));
        pts.par_iter()
            .map(|x| {
                Ok(FieldRow {
                    x: *x,
                    u: self.u(x),
                    f: self.f(x)?.unwrap_or(f64::NAN),
                    component: self.component(x),
                })
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct FieldRow {
    pub x: Point,
    pub u: f64,
    pub f: f64,
    pub component: Component,
}

/// `<u, (-Delta)^s phi>` against `<f, phi>`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Pairing {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

/// Outcome of [`verify_ce`]; failures are flagged, not raised.
#[derive(Clone, Debug, Serialize)]
pub struct CEReport {
    pub dim: usize,
    pub s: f64,
    pub a: f64,
    pub threshold_a: f64,
    pub threshold_d: f64,
    pub margin: f64,
    pub f_min: f64,
    pub u_max_a: f64,
    pub u_min_d: f64,
    /// `u` equals `a psi` on `A` and `-g` on `D`, and is `<= 0` on `D`.
    pub u_structure: bool,
    pub f_positive: bool,
    pub sign_change: bool,
    pub pairing_d: Pairing,
    pub pairing_a: Pairing,
    pub pairing_tol: f64,
    pub passed: bool,
}

/// `<u, (-Delta)^s phi>` with `u = a psi - g`, integrated over the supports
/// of `psi` and `g`.
pub fn pairing_lhs(res: &CEResult, phi: &RadialPolyBump) -> Result<(f64, f64)> {
    let ctx = &res.ctx;
    let inner = ctx;
    let phi_sup = phi.support();
    let part = |b: &RadialPolyBump, w: f64| -> Result<(f64, f64)> {
        if w == 0.0 || b.is_zero() {
            return Ok((0.0, 0.0));
        }
        let kinks = [b.support(), phi_sup];
        let q = BallQuad::new(b.support()).kinks(&kinks);
        let err = std::sync::Mutex::new(None);
        let r = quad_ball_with(
            |y| {
                let v = b.evaluate(y);
                if v == 0.0 {
                    return 0.0;
                }
                match frac_s_smooth(phi, y, inner) {
                    Ok(l) => w * v * l,
                    Err(e) => {
                        *err.lock().expect("poisoned") = Some(e);
                        0.0
                    }
                }
            },
            &q,
            &ctx.spec,
        );
        if let Some(e) = err.into_inner().expect("poisoned") {
            return Err(e);
        }
        let abs = quad_ball_with(
            |y| {
                let v = b.evaluate(y);
                if v == 0.0 {
                    0.0
                } else {
                    (w * v * frac_s_smooth(phi, y, inner).unwrap_or(0.0)).abs()
                }
            },
            &BallQuad::new(b.support()).kinks(&kinks),
            &ctx.spec.nested(100.0),
        );
        Ok((r.value, abs.value))
    };
    let (l1, a1) = part(&res.psi, res.a)?;
    let (l2, a2) = part(&res.cfg.g, -1.0)?;
    Ok((l1 + l2, a1 + a2))
}

/// `<f, phi>` for `phi` supported in one closed component.
pub fn pairing_rhs(res: &CEResult, phi: &RadialPolyBump) -> Result<f64> {
    let sup = phi.support();
    let kinks = [sup, res.cfg.g.support()];
    let q = BallQuad::new(sup).kinks(&kinks);
    let err = std::sync::Mutex::new(None);
    let r = quad_ball_with(
        |y| {
            let p = phi.evaluate(y);
            if p == 0.0 {
                return 0.0;
            }
            match res.f(y) {
                Ok(Some(f)) => f * p,
                Ok(None) => 0.0,
                Err(e) => {
                    *err.lock().expect("poisoned") = Some(e);
                    0.0
                }
            }
        },
        &q,
        &res.ctx.spec,
    );
    match err.into_inner().expect("poisoned") {
        Some(e) => Err(e),
        None => Ok(r.value),
    }
}

/// Relative pairing residual with scale `max(|lhs|, |rhs|, int |u (-Delta)^s phi|, 1e-8)`.
pub fn pairing(res: &CEResult, phi: &RadialPolyBump) -> Result<Pairing> {
    let (lhs, abs) = pairing_lhs(res, phi)?;
    let rhs = pairing_rhs(res, phi)?;
    let scale = lhs.abs().max(rhs.abs()).max(abs).max(1e-8);
    Ok(Pairing {
        lhs,
        rhs,
        residual: (lhs - rhs).abs() / scale,
    })
}

/// Default test bumps: concentric with each component, 0.4 times its radius.
pub fn default_test_bumps(cfg: &CEConfig) -> Result<(RadialPolyBump, RadialPolyBump)> {
    let m = (cfg.s.ceil() - 1.0).max(0.0);
    let p = 2.0 * m + 4.0;
    let d = RadialPolyBump::single(cfg.d.center, 0.4 * cfg.d.radius, 1.0, p)?;
    let a = RadialPolyBump::single(cfg.a.center, 0.8 * cfg.a.radius, 1.0, p)?;
    Ok((d, a))
}

/// Rechecks positivity of `f`, the sign structure of `u` and the
/// distributional equation against one bump in each component.
pub fn verify_ce(res: &CEResult, pairing_tol: f64) -> Result<CEReport> {
    let (ga, gd) = res.grids();
    let f_min = res.f_min_on(&ga, &gd)?;
    let u_max_a = ga.iter().map(|x| res.u(x)).fold(f64::NEG_INFINITY, f64::max);
    let u_min_d = gd.iter().map(|x| res.u(x)).fold(f64::INFINITY, f64::min);
    let structure_a = ga.iter().all(|x| {
        let want = res.a * res.psi.evaluate(x);
        let interior = res.cfg.a.signed_dist(x) < 0.0;
        res.u(x) == want && (!interior || res.u(x) > 0.0)
    });
    let structure_d = gd.iter().all(|x| {
        let u = res.u(x);
        let g = res.cfg.g.evaluate(x);
        u == -g && u <= 0.0 && (g == 0.0 || u < 0.0)
    });
    let (phi_d, phi_a) = default_test_bumps(&res.cfg)?;
    let pairing_d = pairing(res, &phi_d)?;
    let pairing_a = pairing(res, &phi_a)?;
    let f_positive = f_min > 0.0;
    let sign_change = u_max_a > 0.0 && u_min_d < 0.0;
    let u_structure = structure_a && structure_d;
    let passed = f_positive
        && sign_change
        && u_structure
        && pairing_d.residual <= pairing_tol
        && pairing_a.residual <= pairing_tol;
    Ok(CEReport {
        dim: res.ctx.dim,
        s: res.ctx.s(),
        a: res.a,
        threshold_a: res.threshold_a,
        threshold_d: res.threshold_d,
        margin: res.cfg.margin,
        f_min,
        u_max_a,
        u_min_d,
        u_structure,
        f_positive,
        sign_change,
        pairing_d,
        pairing_a,
        pairing_tol,
        passed,
    })
}

/// Signs of `(-Delta)^s g` away from its support.
#[derive(Clone, Debug, Serialize)]
pub struct ExteriorSignReport {
    pub s: f64,
    pub m: u32,
    /// `(-1)^{m+1}`.
    pub expected_sign: f64,
    pub points: Vec<Point>,
    pub values: Vec<f64>,
    pub all_match: bool,
}

/// Evaluates `(-Delta)^s g` at `points`, each at distance `>= 0.1` from
/// `supp g`, and compares its sign with `(-1)^{m+1}`.
pub fn exterior_sign_check(
    g: &RadialPolyBump,
    ctx: &KernelContext,
    points: &[Point],
) -> Result<ExteriorSignReport> {
    if ctx.order.is_integer() {
        return Err(Error::ClassicalBranch);
    }
    let sup = g.support();
    for x in points {
        if sup.signed_dist(x) < 0.1 - 1e-12 {
            return Err(Error::Domain(format!("{x} is closer than 0.1 to supp g")));
        }
    }
    let m = ctx.order.m();
    let expected_sign = if m % 2 == 1 { 1.0 } else { -1.0 };
    let values = points
        .iter()
        .map(|x| frac_s_smooth(g, x, ctx))
        .collect::<Result<Vec<_>>>()?;
    let all_match = values.iter().all(|v| expected_sign * v > 0.0);
    Ok(ExteriorSignReport {
        s: ctx.s(),
        m,
        expected_sign,
        points: points.to_vec(),
        values,
        all_match,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_build_changes_sign_with_positive_f() {
        let cfg = CEConfig::reference();
        let res = build(&cfg).unwrap();
        assert!(res.a > 0.0);
        assert!(res.f_min > 0.0);
        assert!(res.u(&Point::on_axis(1, 0.5)) > 0.0);
        assert!(res.u(&Point::on_axis(1, -0.5)) < 0.0);
        assert_eq!(res.component(&Point::on_axis(1, 0.1)), Component::Outside);
        assert!(res.f(&Point::on_axis(1, 0.1)).unwrap().is_none());
    }

    #[test]
    fn a_scales_with_g() {
        let cfg = CEConfig::reference();
        let r1 = build(&cfg).unwrap();
        let mut cfg2 = cfg.clone();
        cfg2.g = cfg.g.scaled(2.0);
        let r2 = build(&cfg2).unwrap();
        assert!((r2.a - 2.0 * r1.a).abs() < 1e-9 * r2.a);
        assert!(r2.f_min > 0.0);
    }

    #[test]
    fn lowered_a_breaks_positivity() {
        let res = build(&CEConfig::reference()).unwrap();
        let low = res.with_a(0.5 * res.a).unwrap();
        assert!(low.f_min < 0.0);
    }

    #[test]
    fn even_m_and_bad_layouts_rejected() {
        let mut cfg = CEConfig::reference();
        cfg.s = 2.5;
        assert!(matches!(build(&cfg), Err(Error::Regime(_))));
        let mut cfg = CEConfig::reference();
        cfg.a = Ball::new(Point::on_axis(1, 0.1), 0.2).unwrap();
        assert!(matches!(build(&cfg), Err(Error::Config(_))));
        let mut cfg = CEConfig::reference();
        cfg.g = RadialPolyBump::single(Point::on_axis(1, -0.5), 0.25, 1.0, 3.0).unwrap();
        assert!(matches!(build(&cfg), Err(Error::Smoothness(_))));
        let mut cfg = CEConfig::reference();
        cfg.margin = 1.0;
        assert!(build(&cfg).is_err());
    }

    #[test]
    fn interaction_is_symmetric() {
        let res = build(&CEConfig::reference()).unwrap();
        let ctx = &res.ctx;
        let g = &res.cfg.g;
        let psi = &res.psi;
        let ksup = [psi.support()];
        let lhs = quad_ball_with(
            |x| psi.evaluate(x) * riesz_tail(g, x, ctx),
            &BallQuad::new(psi.support()).kinks(&ksup),
            &ctx.spec,
        )
        .value;
        let gsup = [g.support()];
        let rhs = quad_ball_with(
            |y| g.evaluate(y) * riesz_tail(psi, y, ctx),
            &BallQuad::new(g.support()).kinks(&gsup),
            &ctx.spec,
        )
        .value;
        assert!((lhs - rhs).abs() < 1e-8 * lhs.abs(), "{lhs} vs {rhs}");
    }

    #[test]
    fn exterior_signs() {
        let g = RadialPolyBump::single(Point::origin(1), 0.5, 1.0, 7.0).unwrap();
        let pts: Vec<Point> = [0.6, -0.6, 1.5, 10.5]
            .iter()
            .map(|&t| Point::on_axis(1, t))
            .collect();
        for (s, want) in [(0.5, -1.0), (1.5, 1.0), (2.5, -1.0)] {
            let ctx = KernelContext::new(1, s).unwrap();
            let r = exterior_sign_check(&g, &ctx, &pts).unwrap();
            assert_eq!(r.expected_sign, want);
            assert!(r.all_match, "s = {s}: {:?}", r.values);
        }
        let ctx = KernelContext::new(1, 1.5).unwrap();
        assert!(matches!(
            exterior_sign_check(&g, &ctx, &[Point::on_axis(1, 0.55)]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn reference_passes_verification() {
        let res = build(&CEConfig::reference()).unwrap();
        let rep = verify_ce(&res, 1e-3).unwrap();
        assert!(rep.passed, "{rep:#?}");
        assert!(rep.pairing_d.residual < 1e-5, "{:?}", rep.pairing_d);
        assert!(rep.pairing_a.residual < 1e-5, "{:?}", rep.pairing_a);
        assert!(!verify_ce(&res.with_a(0.5 * res.a).unwrap(), 1e-3).unwrap().passed);
    }

    #[test]
    fn gap_bump_sees_no_right_hand_side() {
        let res = build(&CEConfig::reference()).unwrap();
        let phi = RadialPolyBump::single(Point::on_axis(1, 0.125), 0.1, 1.0, 6.0).unwrap();
        assert_eq!(pairing_rhs(&res, &phi).unwrap(), 0.0);
    }

    #[test]
    fn ball_grid_counts() {
        let b = Ball::new(Point::on_axis(1, -0.5), 0.5).unwrap();
        let g = ball_grid(&b, 201);
        assert_eq!(g.len(), 201);
        assert_eq!(g[0].get(0), -1.0);
        assert!((g[200].get(0)).abs() < 1e-15);
        let b2 = Ball::unit(2);
        assert!(ball_grid(&b2, 21).iter().all(|p| p.norm() <= 1.0 + 1e-12));
    }
}
