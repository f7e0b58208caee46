//! Fractional orders `s = m + sigma` and their closed-form normalization
//! constants.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::gamma;

/// An order `s > 0` split as `s = m + sigma` with `m >= 0` an integer and
/// `sigma` in `(0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FracOrder {
    s: f64,
    m: u32,
    sigma: f64,
}

impl FracOrder {
    pub fn new(s: f64) -> Result<Self> {
        frac_split(s)
    }

    #[inline]
    pub fn s(&self) -> f64 {
        self.s
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    #[inline]
    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// `sigma == 1`, i.e. `s` is a positive integer.
    #[inline]
    pub fn is_integer(&self) -> bool {
        self.sigma == 1.0
    }

    /// The order `s - j`, if positive.
    pub fn lowered(&self, j: f64) -> Result<Self> {
        frac_split(self.s - j)
    }
}

/// Splits `s` into `(m, sigma)` with `sigma` in `(0, 1]`; integers get `sigma = 1`.
pub fn frac_split(s: f64) -> Result<FracOrder> {
    if !(s.is_finite() && s > 0.0) {
        return Err(Error::InvalidOrder(s));
    }
    let m = s.ceil() - 1.0;
    let sigma = s - m;
    Ok(FracOrder {
        s,
        m: m as u32,
        sigma,
    })
}

/// True if `s - N/2` is a nonnegative integer, the logarithmic branch of the
/// fundamental solution.
pub fn is_log_branch(dim: usize, s: f64) -> bool {
    let d = s - dim as f64 / 2.0;
    d > -1e-12 && (d - d.round()).abs() < 1e-12
}

/// `c_{N,sigma} = 4^sigma pi^{-N/2} sigma (1-sigma) Gamma(N/2+sigma) / Gamma(2-sigma)`.
pub fn c_frac(dim: usize, sigma: f64) -> f64 {
    let n = dim as f64;
    4f64.powf(sigma) * PI.powf(-n / 2.0) * sigma * (1.0 - sigma) * gamma(n / 2.0 + sigma) / gamma(2.0 - sigma)
}

/// `k_{N,s} = Gamma(N/2) / (pi^{N/2} 4^s Gamma(s)^2)`.
pub fn k_green(dim: usize, s: f64) -> f64 {
    let n = dim as f64;
    let gs = gamma(s);
    gamma(n / 2.0) / (PI.powf(n / 2.0) * 4f64.powf(s) * gs * gs)
}

/// `gamma_{N,s} = Gamma(N/2) 4^{-s} / (Gamma(s+1) Gamma(N/2+s))`.
pub fn gamma_ball(dim: usize, s: f64) -> f64 {
    let n = dim as f64;
    gamma(n / 2.0) * 4f64.powf(-s) / (gamma(s + 1.0) * gamma(n / 2.0 + s))
}

/// Normalization of the fundamental solution `F_{N,s}`.
pub fn kappa_fund(dim: usize, s: f64) -> f64 {
    let n = dim as f64;
    if is_log_branch(dim, s) {
        let d = (s - n / 2.0).round();
        let sign = if (d as i64 + 1) % 2 == 0 { 1.0 } else { -1.0 };
        2f64.powf(1.0 - 2.0 * s) * PI.powf(-n / 2.0) * sign / (gamma(d + 1.0) * gamma(s))
    } else {
        gamma(n / 2.0 - s) / (4f64.powf(s) * PI.powf(n / 2.0) * gamma(s))
    }
}

/// Coefficient of `|x|^{2s-N-2}` in the remainder of `-Delta F_{N,s}`.
pub fn c2_fund(dim: usize, s: f64) -> f64 {
    let n = dim as f64;
    (2.0 * (n - 2.0 * s) + (2.0 - n)) * kappa_fund(dim, s)
}

/// `prod_{i<m} (N + 2 sigma + 2i)(2 sigma + 2i + 2)`; `(-Delta_y)^m |x-y|^{-N-2sigma}`
/// equals `(-1)^m` times this product times `|x-y|^{-N-2s}`.
pub fn riesz_product(dim: usize, m: u32, sigma: f64) -> f64 {
    let n = dim as f64;
    (0..m)
        .map(|i| {
            let i = i as f64;
            (n + 2.0 * sigma + 2.0 * i) * (2.0 * sigma + 2.0 * i + 2.0)
        })
        .product()
}

/// Disjoint-support interaction constant: for `g` and `phi` with supports at
/// positive distance, `E_s(g, phi) = (-1)^{m+1} C int int phi(x) g(y) |x-y|^{-N-2s}`.
///
/// Equals `c_{N,sigma}` times [`riesz_product`]. The exterior value of the
/// fractional Laplacian of `g` is `(-1)^{m+1} C int g(y) |x-y|^{-N-2s} dy`.
pub fn c_interaction(dim: usize, m: u32, sigma: f64) -> f64 {
    c_frac(dim, sigma) * riesz_product(dim, m, sigma)
}

/// Every normalization constant needed for a given `(N, s)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstantSet {
    /// `c_{N,sigma}`; `None` when `sigma = 1`.
    pub c_frac: Option<f64>,
    pub k_green: f64,
    pub gamma_ball: f64,
    pub kappa_fund: f64,
    pub log_branch: bool,
    pub c2_fund: f64,
    /// `None` when `sigma = 1`.
    pub c_interaction: Option<f64>,
}

/// Closed-form constants for dimension `dim >= 1` and the given order.
pub fn constants(dim: usize, order: FracOrder) -> Result<ConstantSet> {
    if dim == 0 {
        return Err(Error::InvalidDimension(dim));
    }
    let s = order.s();
    let fractional = !order.is_integer();
    let set = ConstantSet {
        c_frac: fractional.then(|| c_frac(dim, order.sigma())),
        k_green: k_green(dim, s),
        gamma_ball: gamma_ball(dim, s),
        kappa_fund: kappa_fund(dim, s),
        log_branch: is_log_branch(dim, s),
        c2_fund: c2_fund(dim, s),
        c_interaction: fractional.then(|| c_interaction(dim, order.m(), order.sigma())),
    };
    let all = [
        set.k_green,
        set.gamma_ball,
        set.kappa_fund,
        set.c_frac.unwrap_or(1.0),
    ];
    assert!(
        all.iter().all(|v| v.is_finite()),
        "Gamma pole reached for N = {dim}, s = {s}"
    );
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_examples() {
        let o = frac_split(1.5).unwrap();
        assert_eq!((o.m(), o.sigma()), (1, 0.5));
        let o = frac_split(2.0).unwrap();
        assert_eq!((o.m(), o.sigma()), (1, 1.0));
        assert!(o.is_integer());
        let o = frac_split(0.3).unwrap();
        assert_eq!(o.m(), 0);
        assert!((o.sigma() - 0.3).abs() < 1e-16);
    }

    #[test]
    fn split_rejects_bad_orders() {
        for s in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(matches!(frac_split(s), Err(Error::InvalidOrder(_))));
        }
    }

    #[test]
    fn half_order_in_one_dimension() {
        let c = constants(1, frac_split(0.5).unwrap()).unwrap();
        assert!((c.c_frac.unwrap() - 1.0 / PI).abs() < 1e-15);
        assert!((c.k_green - 1.0 / (2.0 * PI)).abs() < 1e-15);
    }

    #[test]
    fn torsion_constant_one_dimension() {
        assert!((gamma_ball(1, 1.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn classical_fundamental_solutions() {
        assert!((kappa_fund(3, 1.0) - 1.0 / (4.0 * PI)).abs() < 1e-15);
        assert!((kappa_fund(2, 1.0) + 1.0 / (2.0 * PI)).abs() < 1e-15);
        assert!((kappa_fund(1, 1.0) + 0.5).abs() < 1e-15);
        assert!(is_log_branch(2, 1.0));
        assert!(!is_log_branch(1, 1.0));
        assert!(!is_log_branch(3, 1.0));
        assert!(is_log_branch(3, 1.5));
        assert!(is_log_branch(2, 2.0));
    }

    #[test]
    fn interaction_constant_one_dimension() {
        // c_{1,1/2} (1 + 1)(1 + 2) = 6 / pi.
        let c = c_interaction(1, 1, 0.5);
        assert!((c - 6.0 / PI).abs() < 1e-14);
        assert_eq!(riesz_product(3, 0, 0.25), 1.0);
    }

    #[test]
    fn integer_order_has_no_fractional_constants() {
        let c = constants(2, frac_split(2.0).unwrap()).unwrap();
        assert!(c.c_frac.is_none() && c.c_interaction.is_none());
        assert!(c.log_branch);
        assert!((c.c2_fund + 4.0 * c.kappa_fund).abs() < 1e-16);
    }
}
