//! Shared numerical building blocks: Gauss–Legendre quadrature, certified
//! absolute-value integrals, root bracketing, least-squares fits and Bessel
//! functions.

pub mod bessel;
pub mod fit;
pub mod quadrature;
pub mod roots;

pub use bessel::bessel_j;
pub use fit::{AsymptoticFit, FitModel};
pub use quadrature::{AbsIntegral, GaussLegendre};

/// Binomial coefficient as a float.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc.round()
}

/// Generalized binomial `A_m^alpha = C(m + alpha, m)`, the Cesàro numbers.
pub fn cesaro_number(m: usize, alpha: f64) -> f64 {
    let mut acc = 1.0;
    for i in 1..=m {
        acc *= (alpha + i as f64) / i as f64;
    }
    acc
}

/// Falling factorial `a (a-1) ... (a-k+1)`.
pub fn falling(a: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (a - i as f64))
}

/// Geometric grid of `count` integers between `lo` and `hi`, deduplicated.
pub fn geometric_grid(lo: usize, hi: usize, count: usize) -> Vec<usize> {
    assert!(lo >= 1 && hi >= lo && count >= 1);
    if count == 1 {
        return vec![lo];
    }
    let ratio = (hi as f64 / lo as f64).powf(1.0 / (count - 1) as f64);
    let mut out: Vec<usize> = (0..count)
        .map(|i| (lo as f64 * ratio.powi(i as i32)).round() as usize)
        .collect();
    out.dedup();
    out
}

/// `Σ_{k=0}^{d} a_k cos(kt)` by Clenshaw's recurrence.
pub fn cosine_sum(a: &[f64], t: f64) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    let (b1, b2) = clenshaw(a, t);
    a[0] + t.cos() * b1 - b2
}

/// `Σ_{k=1}^{d} a_k sin(kt)`; `a[0]` is ignored.
pub fn sine_sum(a: &[f64], t: f64) -> f64 {
    if a.len() < 2 {
        return 0.0;
    }
    clenshaw(a, t).0 * t.sin()
}

/// Returns `(b_1, b_2)` of `b_k = a_k + 2cos(t) b_{k+1} - b_{k+2}`.
fn clenshaw(a: &[f64], t: f64) -> (f64, f64) {
    let c2 = 2.0 * t.cos();
    let (mut b1, mut b2) = (0.0, 0.0);
    for &ak in a[1..].iter().rev() {
        let b = ak + c2 * b1 - b2;
        b2 = b1;
        b1 = b;
    }
    (b1, b2)
}
