//! Bessel functions of the first kind `J_ν(x)` for real order `ν ≥ 0`.
//!
//! Ascending power series for `x ≤ SERIES_LIMIT`; beyond it the Hankel
//! asymptotic expansion for the fractional part of the order, followed by
//! forward recurrence (stable while `ν < x`).

use std::f64::consts::PI;

use crate::error::{invalid, Error, Result};

pub const SERIES_LIMIT: f64 = 12.0;

/// `J_ν(x)` for `ν ≥ 0`. Negative `x` is allowed for integer orders.
pub fn bessel_j(nu: f64, x: f64) -> f64 {
    assert!(nu >= 0.0, "order must be nonnegative");
    if x < 0.0 {
        let n = nu.round();
        assert!(
            (nu - n).abs() < 1e-15,
            "negative argument needs an integer order"
        );
        let s = if (n as i64) % 2 == 0 { 1.0 } else { -1.0 };
        return s * bessel_j(nu, -x);
    }
    if x == 0.0 {
        return if nu == 0.0 { 1.0 } else { 0.0 };
    }
    if x <= SERIES_LIMIT || nu >= x {
        bessel_j_series(nu, x)
    } else {
        bessel_j_large(nu, x)
    }
}

/// `J_ν'(x) = (ν/x) J_ν(x) − J_{ν+1}(x)`.
pub fn bessel_j_prime(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if nu == 1.0 { 0.5 } else { 0.0 };
    }
    nu / x * bessel_j(nu, x) - bessel_j(nu + 1.0, x)
}

/// Power series `Σ (−1)^k (x/2)^{2k+ν} / (k! Γ(k+ν+1))`.
pub fn bessel_j_series(nu: f64, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut term = half.powf(nu) / libm::tgamma(nu + 1.0);
    let mut sum = term;
    let q = -half * half;
    for k in 1..400 {
        term *= q / (k as f64 * (k as f64 + nu));
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-300) && k as f64 > half {
            break;
        }
    }
    sum
}

/// Hankel expansion for `J_μ(x)`, intended for `μ < 2` and `x > 12`.
pub fn bessel_j_asymptotic(mu: f64, x: f64) -> f64 {
    let m4 = 4.0 * mu * mu;
    let mut p = 0.0;
    let mut q = 0.0;
    let mut a = 1.0f64;
    let mut prev = f64::INFINITY;
    for k in 0..60 {
        // a_k(μ) / x^k
        let t = a;
        if t.abs() > prev && k > 2 {
            break;
        }
        match k % 4 {
            0 => p += t,
            1 => q += t,
            2 => p -= t,
            _ => q -= t,
        }
        prev = t.abs();
        if prev < 1e-17 {
            break;
        }
        let odd = (2 * k + 1) as f64;
        a *= (m4 - odd * odd) / ((k + 1) as f64 * 8.0 * x);
    }
    let chi = x - (0.5 * mu + 0.25) * PI;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

fn bessel_j_large(nu: f64, x: f64) -> f64 {
    let mu = nu - nu.floor();
    let steps = nu.floor() as usize;
    let mut jm = bessel_j_asymptotic(mu, x);
    if steps == 0 {
        return jm;
    }
    let mut j = bessel_j_asymptotic(mu + 1.0, x);
    for i in 1..steps {
        let order = mu + i as f64;
        let next = 2.0 * order / x * j - jm;
        jm = j;
        j = next;
    }
    j
}

/// McMahon's large-zero expansion for the `p`-th positive zero of `J_ν`.
pub fn mcmahon_guess(nu: f64, p: usize) -> f64 {
    let mu = 4.0 * nu * nu;
    let beta = (p as f64 + 0.5 * nu - 0.25) * PI;
    let e = 8.0 * beta;
    beta - (mu - 1.0) / e
        - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e.powi(3))
        - 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * e.powi(5))
}

/// `p`-th positive zero of `J_ν` for `ν ∈ [0, 5]`, `1 ≤ p ≤ 20`.
///
/// Newton from McMahon's guess. The result is accepted only if `|J_ν| ≤ 1e-10`
/// there and exactly `p − 1` sign changes of `J_ν` lie strictly before it;
/// otherwise the zero is recovered by scanning and bisection.
pub fn bessel_zero(nu: f64, p: usize) -> Result<f64> {
    if !(0.0..=5.0).contains(&nu) {
        return invalid(format!("order {nu} outside [0, 5]"));
    }
    if p == 0 || p > 20 {
        return invalid(format!("zero index {p} outside [1, 20]"));
    }
    let f = |x: f64| bessel_j(nu, x);
    let mut x = mcmahon_guess(nu, p);
    let mut converged = false;
    for _ in 0..50 {
        let d = bessel_j_prime(nu, x);
        if d == 0.0 {
            break;
        }
        let step = f(x) / d;
        x -= step;
        if step.abs() < 1e-15 * x.abs() {
            converged = true;
            break;
        }
    }
    if !(converged && x > 0.0 && f(x).abs() <= 1e-10 && count_sign_changes(&f, x) == p - 1) {
        x = scan_for_zero(&f, p).ok_or_else(|| Error::ConvergenceFailure {
            reason: format!("could not isolate zero {p} of J_{nu}"),
            estimate: x,
            error: f(x).abs(),
        })?;
    }
    let resid = f(x).abs();
    if resid > 1e-10 {
        return Err(Error::ConvergenceFailure {
            reason: format!("residual too large at zero {p} of J_{nu}"),
            estimate: x,
            error: resid,
        });
    }
    Ok(x)
}

fn count_sign_changes<F: Fn(f64) -> f64>(f: &F, upto: f64) -> usize {
    let step = 0.05;
    let end = upto - 1e-6;
    let mut count = 0;
    let mut x = 1e-3;
    let mut prev = f(x);
    while x + step < end {
        x += step;
        let v = f(x);
        if v != 0.0 && prev != 0.0 && (v < 0.0) != (prev < 0.0) {
            count += 1;
        }
        prev = v;
    }
    let v = f(end);
    if v != 0.0 && prev != 0.0 && (v < 0.0) != (prev < 0.0) {
        count += 1;
    }
    count
}

fn scan_for_zero<F: Fn(f64) -> f64>(f: &F, p: usize) -> Option<f64> {
    let step = 0.05;
    let mut x = 1e-3;
    let mut prev = f(x);
    let mut found = 0;
    while x < 200.0 {
        let next = x + step;
        let v = f(next);
        if v != 0.0 && prev != 0.0 && (v < 0.0) != (prev < 0.0) {
            found += 1;
            if found == p {
                return Some(super::roots::bisect(f, x, next, prev, 1e-15));
            }
        }
        x = next;
        prev = v;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_orders_agree_with_libm() {
        for n in 0..=5 {
            for i in 0..400 {
                let x = 0.1 * i as f64;
                let ours = bessel_j(n as f64, x);
                let reference = libm::jn(n, x);
                assert!(
                    (ours - reference).abs() < 1e-10,
                    "J_{n}({x}) = {ours} vs {reference}"
                );
            }
        }
    }

    #[test]
    fn half_integer_order_is_spherical() {
        for i in 1..200 {
            let x = 0.2 * i as f64;
            let exact = (2.0 / (PI * x)).sqrt() * x.sin();
            assert!((bessel_j(0.5, x) - exact).abs() < 1e-11);
            let exact32 = (2.0 / (PI * x)).sqrt() * (x.sin() / x - x.cos());
            assert!((bessel_j(1.5, x) - exact32).abs() < 1e-11);
        }
    }

    #[test]
    fn series_and_asymptotic_agree_at_the_seam() {
        for &nu in &[0.0, 0.25, 0.5, 1.0, 1.7, 2.5, 3.0, 4.2, 5.0] {
            let s = bessel_j_series(nu, SERIES_LIMIT);
            let a = bessel_j_large(nu, SERIES_LIMIT);
            assert!((s - a).abs() < 1e-10, "nu={nu}: {s} vs {a}");
        }
    }

    #[test]
    fn known_zeros() {
        assert!((bessel_zero(0.5, 1).unwrap() - PI).abs() < 1e-12);
        assert!((bessel_zero(1.0, 1).unwrap() - 3.831_705_970_207_512).abs() < 1e-9);
        assert!((bessel_zero(0.0, 1).unwrap() - 2.404_825_557_695_773).abs() < 1e-9);
        assert!((bessel_zero(1.0, 3).unwrap() - 10.173_468_135_062_722).abs() < 1e-9);
    }

    #[test]
    fn zeros_are_ordered_and_have_small_residual() {
        for &nu in &[0.0, 1.0, 2.5, 5.0] {
            let mut prev = 0.0;
            for p in 1..=20 {
                let z = bessel_zero(nu, p).unwrap();
                assert!(z > prev);
                assert!(bessel_j(nu, z).abs() <= 1e-10);
                prev = z;
            }
        }
    }

    #[test]
    fn zero_arguments_validated() {
        assert!(bessel_zero(6.0, 1).is_err());
        assert!(bessel_zero(1.0, 0).is_err());
        assert!(bessel_zero(1.0, 21).is_err());
    }
}
