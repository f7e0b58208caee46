#![allow(clippy::excessive_precision)]

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::{QuadResult, QuadSpec};

// 15-point Kronrod abscissae; the odd entries are the 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Clone, Copy, Debug)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut resk = fc * WGK[7];
    let mut resg = fc * WG[3];
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    let reskh = 0.5 * resk;
    let mut resasc = WGK[7] * (fc - reskh).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - reskh).abs() + (fv2[j] - reskh).abs());
    }
    let value = resk * half;
    let resabs = resabs * half.abs();
    let resasc = resasc * half.abs();
    let mut err = ((resk - resg) * half).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    if !value.is_finite() {
        err = f64::INFINITY;
    }
    Segment { a, b, value, err }
}

/// Adaptive 7/15-point Gauss-Kronrod quadrature of `f` over `[a, b]`.
///
/// Integrable algebraic or logarithmic endpoint singularities are handled by
/// bisection; nodes never touch the endpoints.
pub fn quad_interval<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadSpec) -> QuadResult {
    quad_interval_breaks(f, &[a, b], spec)
}

/// Like [`quad_interval`] with the initial partition given by `points`
/// (sorted, first and last are the limits). Put kinks and interior
/// singularities here.
pub fn quad_interval_breaks<F: Fn(f64) -> f64>(f: F, points: &[f64], spec: &QuadSpec) -> QuadResult {
    assert!(points.len() >= 2, "need at least the two limits");
    let mut pts: Vec<f64> = points.to_vec();
    pts.dedup();
    if pts.len() < 2 || pts[0] >= pts[pts.len() - 1] {
        return QuadResult::exact(0.0);
    }
    debug_assert!(pts.windows(2).all(|w| w[0] < w[1]), "breakpoints must increase");

    let mut heap = BinaryHeap::new();
    let mut frozen: Vec<Segment> = Vec::new();
    for w in pts.windows(2) {
        heap.push(gk15(&f, w[0], w[1]));
    }
    let mut count = heap.len();
    let mut total_err: f64 = heap.iter().map(|s| s.err).sum();
    let mut total_val: f64 = heap.iter().map(|s| s.value).sum();

    let mut converged = total_err <= spec.tolerance_for(total_val);
    while !converged {
        if count >= spec.max_subdiv {
            break;
        }
        let Some(seg) = heap.pop() else { break };
        let mid = 0.5 * (seg.a + seg.b);
        let tiny = 64.0 * f64::EPSILON * (seg.a.abs() + seg.b.abs()).max(f64::MIN_POSITIVE);
        if seg.b - seg.a <= tiny || mid <= seg.a || mid >= seg.b {
            frozen.push(seg);
            continue;
        }
        let left = gk15(&f, seg.a, mid);
        let right = gk15(&f, mid, seg.b);
        total_err += left.err + right.err - seg.err;
        total_val += left.value + right.value - seg.value;
        heap.push(left);
        heap.push(right);
        count += 1;
        converged = total_err <= spec.tolerance_for(total_val);
    }

    // Resum from scratch so incremental drift does not leak into the result.
    let mut segs: Vec<Segment> = heap.into_vec();
    segs.extend(frozen);
    segs.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value: f64 = segs.iter().map(|s| s.value).sum();
    let err: f64 = segs.iter().map(|s| s.err).sum();
    QuadResult {
        value,
        err_estimate: err,
        converged: err <= spec.tolerance_for(value),
        subdivisions_used: count,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> QuadSpec {
        QuadSpec::default()
    }

    #[test]
    fn constant() {
        let r = quad_interval(|_| 1.0, 0.0, 1.0, &spec());
        assert!(r.converged);
        assert!((r.value - 1.0).abs() < 1e-15);
    }

    #[test]
    fn inverse_sqrt_endpoint() {
        let r = quad_interval(|t: f64| t.powf(-0.5), 0.0, 1.0, &spec());
        assert!(r.converged);
        assert!((r.value - 2.0).abs() < 1e-9, "{r:?}");
    }

    #[test]
    fn log_four() {
        let r = quad_interval(|v| 1.0 / (v + 1.0), 0.0, 3.0, &spec());
        assert!((r.value - 4f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn polynomial_exactness() {
        // Degree 22 is within the reach of the Kronrod rule.
        let r = quad_interval(|t: f64| 23.0 * t.powi(22), 0.0, 1.0, &spec());
        assert!((r.value - 1.0).abs() < 1e-13);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let tight = QuadSpec {
            max_subdiv: 3,
            rel_tol: 1e-14,
            abs_tol: 1e-300,
            ..QuadSpec::default()
        };
        let r = quad_interval(|t: f64| t.powf(-0.9), 0.0, 1.0, &tight);
        assert!(!r.converged);
        assert!(r.err_estimate > 0.0);
    }

    #[test]
    fn breakpoints_at_kink() {
        let r = quad_interval_breaks(|t: f64| (t - 0.3).abs(), &[-1.0, 0.3, 1.0], &spec());
        let exact = 0.5 * 1.3 * 1.3 + 0.5 * 0.7 * 0.7;
        assert!((r.value - exact).abs() < 1e-14);
    }
}
