//! Lebesgue constants of one- and two-dimensional means, the class deviation
//! `sup_{W^r} ‖f - S_n f‖_C`, Fourier–Lagrange coefficients and the discrete
//! Lebesgue function.

use std::f64::consts::PI;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Mutex;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::error::{invalid, Error, Result};
use crate::numeric::fit::fit;
use crate::numeric::quadrature::abs_integral;
use crate::numeric::{binomial, cosine_sum, geometric_grid, sine_sum, AsymptoticFit, FitModel};
use crate::trig::{
    compute_coefficients, fejer, SampledFunction, SummabilityMethod, TrigCoefficients,
};

/// A Lebesgue constant with its certified quadrature error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LebesgueSample {
    pub n: usize,
    pub value: f64,
    pub quad_error: f64,
}

/// Two-dimensional counterpart of [`LebesgueSample`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LebesgueSample2D {
    pub n1: usize,
    pub n2: usize,
    pub value: f64,
    pub quad_error: f64,
}

/// `(1/2π) ∫|K_n|`, certified to `tol`.
///
/// The kernel is even, so `(1/π) ∫_0^π |K_n|` is integrated on panels of width
/// `π/(d+1)` (`d` the kernel degree), split at sign changes and bisected
/// where the Gauss witness disagrees.
pub fn lebesgue_constant(method: &SummabilityMethod, n: usize, tol: f64) -> Result<LebesgueSample> {
    if !(tol > 0.0) {
        return invalid(format!("tolerance {tol} must be positive"));
    }
    let d = method.degree(n);
    let mut a: Vec<f64> = (0..=d).map(|k| 2.0 * method.lambda(n, k as i64)).collect();
    a[0] *= 0.5;
    let g = |t: f64| cosine_sum(&a, t);
    let r = abs_integral(&g, 0.0, PI, PI / (d as f64 + 1.0), tol * PI)
        .map_err(|e| scale_failure(e, 1.0 / PI))?;
    Ok(LebesgueSample {
        n,
        value: r.value / PI,
        quad_error: r.error / PI,
    })
}

fn scale_failure(e: Error, s: f64) -> Error {
    match e {
        Error::ConvergenceFailure {
            reason,
            estimate,
            error,
        } => Error::ConvergenceFailure {
            reason,
            estimate: estimate * s,
            error: error * s,
        },
        other => other,
    }
}

/// Closed form of the Dirichlet Lebesgue constant,
/// `1/(2n+1) + (2/π) Σ_{k=1}^n tan(kπ/(2n+1))/k`.
pub fn dirichlet_lebesgue_closed_form(n: usize) -> f64 {
    let m = 2.0 * n as f64 + 1.0;
    1.0 / m
        + (2.0 / PI)
            * (1..=n)
                .map(|k| (k as f64 * PI / m).tan() / k as f64)
                .sum::<f64>()
}

/// Fit of the Dirichlet constants to `c ln n + d` over a doubling grid.
pub fn classical_lebesgue_fit(nmin: usize, nmax: usize) -> Result<AsymptoticFit> {
    if nmin < 16 || nmax < 4 * nmin {
        return invalid(format!("need nmax ≥ 4·nmin ≥ 64, got [{nmin}, {nmax}]"));
    }
    let count = (((nmax as f64 / nmin as f64).log2().round() as usize) + 1).max(5);
    let ns = geometric_grid(nmin, nmax, count);
    let dir = crate::trig::dirichlet();
    let values = ns
        .par_iter()
        .map(|&n| lebesgue_constant(&dir, n, 1e-10).map(|s| s.value))
        .collect::<Result<Vec<f64>>>()?;
    let nsf: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    fit(FitModel::LogLinear, &nsf, &values)
}

/// Bernoulli numbers `B_0 … B_12`.
const BERNOULLI: [f64; 13] = [
    1.0,
    -0.5,
    1.0 / 6.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    1.0 / 42.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    5.0 / 66.0,
    0.0,
    -691.0 / 2730.0,
];

/// Largest smoothness order handled by [`kolmogorov_deviation`].
pub const MAX_CLASS_ORDER: u32 = 12;

pub fn bernoulli_polynomial(j: usize, x: f64) -> f64 {
    (0..=j)
        .map(|i| binomial(j, i) * BERNOULLI[i] * x.powi((j - i) as i32))
        .sum()
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// `Σ_{k≥1} cos(kt - rπ/2) / k^r` for `t ∈ (0, 2π)`, from the Bernoulli
/// polynomial closed forms of `Σ cos(kt)/k^{2m}` and `Σ sin(kt)/k^{2m+1}`.
pub fn class_kernel_full(r: u32, t: f64) -> f64 {
    let x = t / (2.0 * PI);
    let j = r as usize;
    let m = (r / 2) as i32;
    let base = (-1f64).powi(m - 1) * (2.0 * PI).powi(r as i32) * bernoulli_polynomial(j, x)
        / (2.0 * factorial(j));
    (-1f64).powi(m) * base
}

/// `Σ_{k=1}^n cos(kt - rπ/2) / k^r`.
pub fn class_kernel_partial(r: u32, n: usize, t: f64) -> f64 {
    let mut a: Vec<f64> = (0..=n)
        .map(|k| {
            if k == 0 {
                0.0
            } else {
                (k as f64).powi(-(r as i32))
            }
        })
        .collect();
    let sign = (-1f64).powi((r / 2) as i32);
    for v in a.iter_mut() {
        *v *= sign;
    }
    if r % 2 == 0 {
        cosine_sum(&a, t)
    } else {
        sine_sum(&a, t)
    }
}

/// `sup_{f∈W^r} ‖f - S_n f‖_C = (1/π) ∫_0^{2π} |Σ_{k>n} cos(kt - rπ/2)/k^r| dt`.
///
/// The tail is the closed-form full series minus the partial sum, so no
/// series acceleration is involved; the integral is symmetric about `π`.
pub fn kolmogorov_deviation(r: u32, n: usize, tol: f64) -> Result<f64> {
    if r == 0 || r > MAX_CLASS_ORDER {
        return invalid(format!("class order {r} outside [1, {MAX_CLASS_ORDER}]"));
    }
    if n == 0 {
        return invalid("n must be at least 1");
    }
    let g = |t: f64| class_kernel_full(r, t) - class_kernel_partial(r, n, t);
    let res = abs_integral(&g, 0.0, PI, PI / (n as f64 + 1.0), tol * PI / 2.0)
        .map_err(|e| scale_failure(e, 2.0 / PI))?;
    Ok(2.0 * res.value / PI)
}

/// Fit of `c n^{-r} ln n + d n^{-r}` to the class deviations on `ns`.
pub fn kolmogorov_fit(r: u32, ns: &[usize], tol: f64) -> Result<AsymptoticFit> {
    let values = ns
        .par_iter()
        .map(|&n| kolmogorov_deviation(r, n, tol))
        .collect::<Result<Vec<f64>>>()?;
    let nsf: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    fit(FitModel::LogPowerTail { r: r as f64 }, &nsf, &values)
}

/// Largest admissible `n_1` for the rhombic sums.
pub const RHOMBIC_MAX_N1: usize = 64;

/// Number of `k_2` on each side for column `k_1`: `⌊n_2 (n_1 - |k_1|) / n_1⌋`.
fn rhombic_height(n1: usize, n2: usize, k1: usize) -> usize {
    n2 * (n1 - k1) / n1
}

fn dirichlet_value(m: usize, x: f64) -> f64 {
    let s = (0.5 * x).sin();
    if s.abs() < 1e-8 {
        2.0 * m as f64 + 1.0
    } else {
        ((m as f64 + 0.5) * x).sin() / s
    }
}

/// `(1/4π²) ∬ |Σ_{|k_1|/n_1 + |k_2|/n_2 ≤ 1} e^{i(k,x)}| dx`.
///
/// Evaluated as `(1/π²) ∫_0^π F(x_1) dx_1` with
/// `F(x_1) = ∫_0^π |K(x_1, x_2)| dx_2`; both levels use the certified
/// absolute-value quadrature.
pub fn rhombic_lebesgue(n1: usize, n2: usize, tol: f64) -> Result<LebesgueSample2D> {
    if n1 == 0 || n2 % n1 != 0 {
        return invalid(format!("n2/n1 must be a positive integer, got {n2}/{n1}"));
    }
    if n1 > RHOMBIC_MAX_N1 {
        return invalid(format!("n1 = {n1} exceeds the cost guard {RHOMBIC_MAX_N1}"));
    }
    if !(tol > 0.0) {
        return invalid("tolerance must be positive");
    }
    let heights: Vec<usize> = (0..=n1).map(|k| rhombic_height(n1, n2, k)).collect();
    // For fixed x_1 the kernel is a cosine polynomial in x_2 whose k_2-th
    // coefficient sums the column weights of every k_1 with height ≥ |k_2|.
    let column = |x1: f64| {
        let mut a = vec![0.0; n2 + 1];
        for (k, &h) in heights.iter().enumerate() {
            a[h] += if k == 0 {
                1.0
            } else {
                2.0 * (k as f64 * x1).cos()
            };
        }
        for j in (0..n2).rev() {
            a[j] += a[j + 1];
        }
        for v in a.iter_mut().skip(1) {
            *v *= 2.0;
        }
        a
    };
    let inner_tol = tol * PI / 2.0;
    let failed = AtomicBool::new(false);
    let worst = Mutex::new(0.0f64);
    let outer = |x1: f64| {
        let a = column(x1);
        match abs_integral(
            &|x2| cosine_sum(&a, x2),
            0.0,
            PI,
            PI / (n2 as f64 + 1.0),
            inner_tol,
        ) {
            Ok(r) => {
                let mut w = worst.lock().expect("poisoned");
                *w = w.max(r.error);
                r.value
            }
            Err(Error::ConvergenceFailure { estimate, .. }) => {
                failed.store(true, Ordering::Relaxed);
                estimate
            }
            Err(_) => {
                failed.store(true, Ordering::Relaxed);
                f64::NAN
            }
        }
    };
    let res = abs_integral(&outer, 0.0, PI, PI / (n1 as f64 + 1.0), tol * PI * PI / 2.0);
    let scale = 1.0 / (PI * PI);
    let inner_err = *worst.lock().expect("poisoned") * PI;
    match res {
        Ok(r) if !failed.load(Ordering::Relaxed) => Ok(LebesgueSample2D {
            n1,
            n2,
            value: r.value * scale,
            quad_error: (r.error + inner_err) * scale,
        }),
        Ok(r) => Err(Error::ConvergenceFailure {
            reason: "inner integral missed its tolerance".into(),
            estimate: r.value * scale,
            error: f64::INFINITY,
        }),
        Err(e) => Err(scale_failure(e, scale)),
    }
}

/// Oversampling factor of the hyperbolic kernel grid.
pub const HYPERBOLIC_OVERSAMPLE: usize = 4;
/// Smallest grid per variable, so that tiny crosses are still resolved.
pub const HYPERBOLIC_MIN_GRID: usize = 512;
/// Cost guard on the number of lattice points in the hyperbolic cross.
pub const HYPERBOLIC_MAX_SUPPORT: usize = 1_000_000;

/// Half-height `⌊n / max(|k_1|,1)^α⌋` of column `k_1` of the cross
/// `max(|k_1|,1)^α max(|k_2|,1) ≤ n`.
fn cross_height(n: usize, alpha: f64, k1: usize) -> usize {
    let w = (k1.max(1) as f64).powf(alpha);
    ((n as f64 / w) + 1e-9).floor() as usize
}

/// Number of lattice points in the hyperbolic cross.
pub fn hyperbolic_support(alpha: f64, n: usize) -> usize {
    let k1max = ((n as f64).powf(1.0 / alpha) + 1e-9).floor() as usize;
    (0..=k1max)
        .map(|k| (2 * cross_height(n, alpha, k) + 1) * if k == 0 { 1 } else { 2 })
        .sum()
}

/// `(1/4π²) ∬ |H_n^α|` by a Riemann sum on a grid oversampled
/// [`HYPERBOLIC_OVERSAMPLE`] times in each variable. Each row `x_2` is a
/// cosine polynomial in `x_1` summed by FFT; only `x_2 ∈ [0, π]` is visited.
pub fn hyperbolic_lebesgue(alpha: f64, n: usize) -> Result<f64> {
    if !(alpha >= 1.0) {
        return invalid(format!("α = {alpha} must be at least 1"));
    }
    if n == 0 {
        return Ok(1.0);
    }
    let support = hyperbolic_support(alpha, n);
    if support > HYPERBOLIC_MAX_SUPPORT {
        return invalid(format!(
            "cross has {support} points, above the guard {HYPERBOLIC_MAX_SUPPORT}"
        ));
    }
    let k1max = ((n as f64).powf(1.0 / alpha) + 1e-9).floor() as usize;
    let heights: Vec<usize> = (0..=k1max).map(|k| cross_height(n, alpha, k)).collect();
    let n1 = (HYPERBOLIC_OVERSAMPLE * (k1max + 1))
        .max(HYPERBOLIC_MIN_GRID)
        .next_power_of_two();
    let n2 = (HYPERBOLIC_OVERSAMPLE * (n + 1))
        .max(HYPERBOLIC_MIN_GRID)
        .next_power_of_two();
    let fft = FftPlanner::<f64>::new().plan_fft_forward(n1);
    let total: f64 = (0..=n2 / 2)
        .into_par_iter()
        .map_init(
            || vec![Complex64::new(0.0, 0.0); n1],
            |buf, j| {
                let x2 = 2.0 * PI * j as f64 / n2 as f64;
                buf.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
                buf[0] = Complex64::new(dirichlet_value(heights[0], x2), 0.0);
                for k in 1..=k1max {
                    let d = dirichlet_value(heights[k], x2);
                    buf[k] = Complex64::new(d, 0.0);
                    buf[n1 - k] = Complex64::new(d, 0.0);
                }
                fft.process(buf);
                let row: f64 = buf.iter().map(|v| v.re.abs()).sum();
                let w = if j == 0 || j == n2 / 2 { 1.0 } else { 2.0 };
                w * row
            },
        )
        .sum();
    Ok(total / (n1 as f64 * n2 as f64))
}

/// Power-law fit `c n^s` of the hyperbolic Lebesgue constants on `nset`.
pub fn hyperbolic_exponent(alpha: f64, nset: &[usize]) -> Result<AsymptoticFit> {
    if nset.iter().any(|&n| n > 4096) {
        return invalid("hyperbolic n values are limited to 4096");
    }
    let values = nset
        .iter()
        .map(|&n| hyperbolic_lebesgue(alpha, n))
        .collect::<Result<Vec<f64>>>()?;
    let ns: Vec<f64> = nset.iter().map(|&n| n as f64).collect();
    fit(FitModel::Power, &ns, &values)
}

/// Interpolation nodes `x_p = 2pπ/(2n+1)`.
pub fn lagrange_nodes(n: usize) -> Vec<f64> {
    let m = 2 * n + 1;
    (0..m).map(|p| 2.0 * PI * p as f64 / m as f64).collect()
}

/// `c_k^{(n)} = (1/(2n+1)) Σ_p f(x_p) e^{-ikx_p}`, `|k| ≤ n`.
///
/// `f(x_p)` comes from trigonometric interpolation of the grid samples,
/// which is exact for polynomials of degree below `M/2`.
pub fn fourier_lagrange_coeffs(f: &SampledFunction, n: usize) -> Result<TrigCoefficients> {
    let interp = compute_coefficients(f, f.len() / 2 - 1)?;
    let nodes = lagrange_nodes(n);
    let values: Vec<Complex64> = nodes.iter().map(|&x| interp.evaluate(x)).collect();
    let m = nodes.len() as f64;
    let coeffs = (-(n as i64)..=n as i64)
        .map(|k| {
            values
                .iter()
                .zip(&nodes)
                .map(|(v, &x)| v * Complex64::from_polar(1.0, -(k as f64) * x))
                .sum::<Complex64>()
                / m
        })
        .collect();
    TrigCoefficients::from_vec(coeffs)
}

/// `(1/(2n+1)) Σ_p |Σ_k λ_{n,k} e^{ik(x - x_p)}|`.
pub fn lebesgue_function(method: &SummabilityMethod, n: usize, x: f64) -> f64 {
    let d = method.degree(n);
    let mut a: Vec<f64> = (0..=d).map(|k| 2.0 * method.lambda(n, k as i64)).collect();
    a[0] *= 0.5;
    let nodes = lagrange_nodes(n);
    nodes
        .iter()
        .map(|&xp| cosine_sum(&a, x - xp).abs())
        .sum::<f64>()
        / nodes.len() as f64
}

/// Fejér Lebesgue constant, used as a sanity reference: exactly 1.
pub fn fejer_lebesgue(n: usize, tol: f64) -> Result<LebesgueSample> {
    lebesgue_constant(&fejer(), n, tol)
}
