//! Gamma function and the (unregularized, extended) incomplete Beta integral.

use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function for real arguments.
///
/// Lanczos approximation (g = 7, nine terms) for `x >= 1/2` and the
/// reflection formula below that, so negative non-integer arguments work.
/// Returns NaN at the poles `0, -1, -2, ...`.
pub fn gamma(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x <= 0.0 && x == x.floor() {
        return f64::NAN;
    }
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    // Small positive integers exactly.
    if x == x.floor() && x <= 21.0 {
        let mut f = 1.0;
        let mut k = 2.0;
        while k < x {
            f *= k;
            k += 1.0;
        }
        return f;
    }
    let z = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * acc
}

/// `(e^z - 1) / z`, accurate near zero.
#[inline]
pub fn exprel(z: f64) -> f64 {
    if z.abs() < 1e-5 {
        1.0 + z * (0.5 + z / 6.0)
    } else {
        z.exp_m1() / z
    }
}

/// Lower incomplete Beta integral `int_0^x t^(a-1) (1-t)^(b-1) dt` for
/// `a > 0`, any real `b`, and `0 <= x < 1`.
///
/// Unlike the textbook incomplete Beta function, `b <= 0` is allowed: the
/// integral is then finite for every `x < 1` but unbounded as `x -> 1`.
/// The caller passes `1 - x` separately so that points close to `t = 1`
/// keep full relative precision.
#[derive(Clone, Copy, Debug)]
pub struct IncompleteBeta {
    a: f64,
    b: f64,
    half: f64,
}

impl IncompleteBeta {
    pub fn new(a: f64, b: f64) -> Self {
        assert!(a > 0.0, "incomplete Beta needs a > 0, got {a}");
        let half = lower_series(0.5, a, b);
        Self { a, b, half }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Integral from 0 to `x`, where `one_minus_x = 1 - x`.
    pub fn eval(&self, x: f64, one_minus_x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        if x <= 0.5 {
            lower_series(x, self.a, self.b)
        } else {
            self.half + upper_series(one_minus_x, self.a, self.b)
        }
    }
}

/// `sum_n (1-b)_n / n! * x^(a+n) / (a+n)`, convergent for `x <= 1/2`.
fn lower_series(x: f64, a: f64, b: f64) -> f64 {
    let mut coef = 1.0;
    let mut xp = x.powf(a);
    let mut sum = 0.0;
    for n in 0..4000 {
        let nf = n as f64;
        let term = coef * xp / (a + nf);
        sum += term;
        if coef == 0.0 || (n > 2 && term.abs() <= 1e-17 * sum.abs()) {
            break;
        }
        coef *= (nf + 1.0 - b) / (nf + 1.0);
        xp *= x;
    }
    sum
}

/// `int_{w0}^{1/2} w^(b-1) (1-w)^(a-1) dw` by expanding `(1-w)^(a-1)`.
fn upper_series(w0: f64, a: f64, b: f64) -> f64 {
    let ln_w0 = w0.ln();
    let ln_half = -std::f64::consts::LN_2;
    let span = ln_half - ln_w0;
    let mut coef = 1.0;
    let mut sum = 0.0;
    for n in 0..4000 {
        let nf = n as f64;
        let e = b + nf;
        let j = if (e * span).abs() < 1.0 {
            (e * ln_w0).exp() * span * exprel(e * span)
        } else {
            ((e * ln_half).exp() - (e * ln_w0).exp()) / e
        };
        let term = coef * j;
        sum += term;
        if coef == 0.0 || (e > 0.0 && n > 2 && term.abs() <= 1e-17 * sum.abs()) {
            break;
        }
        coef *= (nf + 1.0 - a) / (nf + 1.0);
    }
    sum
}
