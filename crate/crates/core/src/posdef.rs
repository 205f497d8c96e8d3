//! Positive definite functions: Gram-matrix tests, the Polya-type sufficient
//! condition, B-splines, the two-piece splines `e_n`, `ẽ_{2n+1}` and the
//! A-splines, radial Fourier transforms, approximation by shifts, and a
//! randomized search for the Schoenberg problem in `l_p^m`.

use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::numeric::bessel::bessel_j;
use crate::numeric::quadrature::{gl20, legendre_with_derivative, GaussLegendre};
use crate::numeric::{binomial, falling};

type Profile = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
pub enum ProfileKind {
    /// Evaluator of `f_0(t)` for `t ≥ 0`.
    Closed(Profile),
    /// `p(t) = Σ c_j t^j` on `[0, support]`, with its Taylor coefficients at
    /// `support` used on the upper half, where the monomial form cancels.
    Polynomial { coeffs: Vec<f64>, at_end: Vec<f64> },
}

/// A radial profile `f_0(t)`, `t = |x|`, vanishing for `t ≥ support`.
#[derive(Clone)]
pub struct RadialProfile {
    pub name: String,
    pub kind: ProfileKind,
    pub support: f64,
    /// Claimed order `k` of `C^k` smoothness of `f_0(|x|)`.
    pub smoothness: u32,
}

impl std::fmt::Debug for RadialProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RadialProfile")
            .field("name", &self.name)
            .field("support", &self.support)
            .field("smoothness", &self.smoothness)
            .field("coefficients", &self.coefficients())
            .finish()
    }
}

fn poly_derivative(c: &[f64], k: usize) -> Vec<f64> {
    if k >= c.len() {
        return vec![0.0];
    }
    (k..c.len()).map(|j| c[j] * falling(j as f64, k)).collect()
}

fn horner(c: &[f64], t: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, a| acc * t + a)
}

/// `(p^{(k)}(x)/k!, Σ_j |c_j C(j,k) x^{j-k}|)` for each `k`, by compensated sums.
fn taylor_raw(c: &[f64], x: f64) -> Vec<(f64, f64)> {
    (0..c.len())
        .map(|k| {
            let terms = (k..c.len()).map(|j| (c[j] * binomial(j, k), x.powi((j - k) as i32)));
            let scale: f64 = terms.clone().map(|(a, b)| (a * b).abs()).sum();
            (dot2(terms), scale)
        })
        .collect()
}

/// Taylor coefficients at `x`; those below `10⁻¹²` of their term scale are
/// the exact zeros of contact conditions, reproduced only up to rounding.
fn taylor_at(c: &[f64], x: f64) -> Vec<f64> {
    taylor_raw(c, x)
        .into_iter()
        .map(|(v, scale)| if v.abs() <= 1e-12 * scale { 0.0 } else { v })
        .collect()
}

impl RadialProfile {
    /// `support = f64::INFINITY` for profiles without compact support.
    pub fn closed<F>(name: impl Into<String>, support: f64, smoothness: u32, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self { name: name.into(), kind: ProfileKind::Closed(Arc::new(f)), support, smoothness }
    }

    pub fn polynomial(name: impl Into<String>, coeffs: Vec<f64>, smoothness: u32) -> Self {
        let at_end = taylor_at(&coeffs, 1.0);
        Self { name: name.into(), kind: ProfileKind::Polynomial { coeffs, at_end }, support: 1.0, smoothness }
    }

    pub fn coefficients(&self) -> Option<&[f64]> {
        match &self.kind {
            ProfileKind::Polynomial { coeffs, .. } => Some(coeffs),
            ProfileKind::Closed(_) => None,
        }
    }

    pub fn value(&self, t: f64) -> f64 {
        let t = t.abs();
        if t >= self.support {
            return 0.0;
        }
        match &self.kind {
            ProfileKind::Closed(f) => f(t),
            ProfileKind::Polynomial { coeffs, at_end } => {
                if t <= 0.5 * self.support {
                    horner(coeffs, t)
                } else {
                    horner(at_end, t - self.support)
                }
            }
        }
    }

    /// `f_0^{(k)}(t)` for `t > 0`: exact for polynomials (right derivative
    /// at the support end), central differences with step `10⁻³ t` otherwise.
    pub fn derivative(&self, k: usize, t: f64) -> f64 {
        if k == 0 {
            return self.value(t);
        }
        match &self.kind {
            ProfileKind::Polynomial { coeffs, at_end } => {
                if t >= self.support {
                    0.0
                } else if t <= 0.5 * self.support {
                    horner(&poly_derivative(coeffs, k), t)
                } else {
                    horner(&poly_derivative(at_end, k), t - self.support)
                }
            }
            ProfileKind::Closed(_) => {
                let h = 1e-3 * t;
                let s: f64 = (0..=k)
                    .map(|j| {
                        let w = binomial(k, j) * if j % 2 == 0 { 1.0 } else { -1.0 };
                        w * self.value(t + (k as f64 / 2.0 - j as f64) * h)
                    })
                    .sum();
                s / h.powi(k as i32)
            }
        }
    }
}

/// Point set and function for a Gram matrix `[f(x_i - x_j)]`.
#[derive(Clone)]
pub struct GramSpec {
    pub points: Vec<Vec<f64>>,
    pub function: Arc<dyn Fn(&[f64]) -> Complex64 + Send + Sync>,
}

impl GramSpec {
    pub fn new<F>(points: Vec<Vec<f64>>, f: F) -> Self
    where
        F: Fn(&[f64]) -> Complex64 + Send + Sync + 'static,
    {
        Self { points, function: Arc::new(f) }
    }

    /// `f(x) = f_0(‖x‖_2)`.
    pub fn radial(points: Vec<Vec<f64>>, profile: &RadialProfile) -> Self {
        let p = profile.clone();
        Self::new(points, move |x| Complex64::new(p.value(lp_norm(x, 2.0)), 0.0))
    }
}

pub const GRAM_MAX_POINTS: usize = 64;

pub fn lp_norm(x: &[f64], p: f64) -> f64 {
    if p.is_infinite() {
        x.iter().fold(0.0, |m, v| m.max(v.abs()))
    } else {
        x.iter().map(|v| v.abs().powf(p)).sum::<f64>().powf(1.0 / p)
    }
}

/// Smallest eigenvalue of the Hermitian matrix `[f(x_i - x_j)]`. Complex
/// matrices `A + iB` go through the real embedding `[[A, -B], [B, A]]`, whose
/// spectrum is that of `A + iB` with doubled multiplicities.
pub fn gram_min_eig(spec: &GramSpec) -> Result<f64> {
    let n = spec.points.len();
    if n == 0 || n > GRAM_MAX_POINTS {
        return invalid(format!("{n} points, expected 1..={GRAM_MAX_POINTS}"));
    }
    let dim = spec.points[0].len();
    if spec.points.iter().any(|p| p.len() != dim) {
        return invalid("points of different dimensions");
    }
    for i in 0..n {
        for j in 0..i {
            if spec.points[i] == spec.points[j] {
                return invalid(format!("points {j} and {i} coincide"));
            }
        }
    }
    let mut g = vec![Complex64::new(0.0, 0.0); n * n];
    let mut d = vec![0.0; dim];
    for i in 0..n {
        for j in 0..n {
            for (k, dk) in d.iter_mut().enumerate() {
                *dk = spec.points[i][k] - spec.points[j][k];
            }
            g[i * n + j] = (spec.function)(&d);
        }
    }
    let scale = g.iter().fold(0.0f64, |m, v| m.max(v.norm())).max(1e-300);
    let mut complex = false;
    for i in 0..n {
        for j in 0..=i {
            if (g[i * n + j] - g[j * n + i].conj()).norm() > 1e-10 * scale {
                return invalid(format!("matrix not Hermitian at ({i}, {j})"));
            }
            complex |= g[i * n + j].im.abs() > 0.0;
        }
    }
    let m = if complex {
        DMatrix::from_fn(2 * n, 2 * n, |i, j| {
            let v = g[(i % n) * n + j % n];
            match (i < n, j < n) {
                (true, true) | (false, false) => v.re,
                (true, false) => -v.im,
                (false, true) => v.im,
            }
        })
    } else {
        DMatrix::from_fn(n, n, |i, j| g[i * n + j].re)
    };
    let m = (&m + m.transpose()) * 0.5;
    Ok(SymmetricEigen::new(m).eigenvalues.min())
}

/// Worst Gram matrix over seeded random point sets.
#[derive(Debug, Clone, PartialEq)]
pub struct GramSample {
    /// Smallest `λ_min / (n · max|f|)` over the sets.
    pub min_relative_eig: f64,
    pub worst_points: Vec<Vec<f64>>,
}

/// `sets` random point sets of 2 to 16 points with coordinates uniform in
/// `[-2, 2]`; each Gram matrix is normalized by its trace bound `n · max|f|`.
pub fn gram_sample<F>(f: F, dim: usize, sets: usize, seed: u64) -> Result<GramSample>
where
    F: Fn(&[f64]) -> Complex64 + Send + Sync + 'static,
{
    if dim == 0 || sets == 0 {
        return invalid("need dim ≥ 1 and at least one point set");
    }
    let f: Arc<dyn Fn(&[f64]) -> Complex64 + Send + Sync> = Arc::new(f);
    let results = (0..sets)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9).wrapping_add(i as u64));
            let k = rng.random_range(2..=16usize);
            let points: Vec<Vec<f64>> =
                (0..k).map(|_| (0..dim).map(|_| rng.random_range(-2.0..2.0)).collect()).collect();
            let spec = GramSpec { points, function: f.clone() };
            let scale = k as f64 * (f)(&vec![0.0; dim]).norm().max(1e-300);
            Ok((gram_min_eig(&spec)? / scale, spec.points))
        })
        .collect::<Result<Vec<(f64, Vec<Vec<f64>>)>>>()?;
    let (min_relative_eig, worst_points) = results
        .into_iter()
        .fold((f64::INFINITY, Vec::new()), |a, b| if b.0 < a.0 { b } else { a });
    Ok(GramSample { min_relative_eig, worst_points })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NecessaryCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub ok: bool,
}

/// `|f(x+y) - 2f(x) + f(x-y)| ≤ 2 Re(f(0) - f(y))`, necessary for positive
/// definiteness.
pub fn check_7_1(f: &dyn Fn(&[f64]) -> Complex64, x: &[f64], y: &[f64]) -> Result<NecessaryCheck> {
    if x.len() != y.len() {
        return invalid("x and y of different dimensions");
    }
    let plus: Vec<f64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
    let minus: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
    let zero = vec![0.0; x.len()];
    let lhs = (f(&plus) - 2.0 * f(x) + f(&minus)).norm();
    let rhs = 2.0 * (f(&zero) - f(y)).re;
    Ok(NecessaryCheck { lhs, rhs, ok: lhs <= rhs + 1e-12 })
}

/// Polya-type sufficient condition for `f_0(|x|)` to be positive definite on
/// `R^m`, with `n = ⌊(m+2)/2⌋`: `lim_{t→∞} f_0 ≥ 0`, `(-1)^{n-1} f_0^{(n-1)}`
/// convex, and `t^n f_0^{(n)}(t) → 0` at both ends. Checked on a log grid of
/// `[10⁻⁴, 10⁴]`. `Ok(true)` certifies; `Ok(false)` only means the sufficient
/// condition fails; `Err(Indeterminate)` when the convexity sign is below the
/// grid resolution.
pub fn polya_test(f0: &RadialProfile, m: usize) -> Result<bool> {
    if m == 0 || m > 4 {
        return invalid(format!("dimension {m} outside 1..=4"));
    }
    let n = (m + 2) / 2;
    const N: usize = 4001;
    let ts: Vec<f64> = (0..N).map(|i| 10f64.powf(-4.0 + 8.0 * i as f64 / (N - 1) as f64)).collect();
    let vals: Vec<f64> = ts.iter().map(|&t| f0.value(t)).collect();
    if vals.iter().any(|v| !v.is_finite()) {
        return Ok(false);
    }
    let fmax = vals.iter().fold(0.0f64, |a, v| a.max(v.abs())).max(1e-300);
    if let ProfileKind::Polynomial { at_end, .. } = &f0.kind {
        if at_end[0].abs() > 1e-10 * fmax {
            return Ok(false);
        }
    }
    if vals[N - 1] < -1e-12 * fmax {
        return Ok(false);
    }
    let sign = if (n - 1) % 2 == 0 { 1.0 } else { -1.0 };
    let g: Vec<f64> = ts.iter().map(|&t| sign * f0.derivative(n - 1, t)).collect();
    let (convex_tol, nonconvex_tol) = match f0.kind {
        ProfileKind::Polynomial { .. } => (1e-12, 1e-7),
        ProfileKind::Closed(_) => (1e-9, 1e-7),
    };
    let mut worst = 0.0f64;
    for i in 1..N - 1 {
        let (a, b) = (ts[i] - ts[i - 1], ts[i + 1] - ts[i]);
        let d2 = 2.0 * ((g[i + 1] - g[i]) / b - (g[i] - g[i - 1]) / a) / (a + b);
        let scale = 2.0 * (g[i + 1].abs() + 2.0 * g[i].abs() + g[i - 1].abs()) / (a * b);
        if scale > 0.0 {
            worst = worst.min(d2 / scale);
        }
    }
    if worst < -nonconvex_tol {
        return Ok(false);
    }
    if worst < -convex_tol {
        return Err(Error::Indeterminate(format!(
            "relative second difference {worst:e} of (-1)^{}f^({}) within grid noise",
            n - 1,
            n - 1
        )));
    }
    let edge = |t: f64| t.powi(n as i32) * f0.derivative(n, t);
    let lim_tol = 1e-3 * fmax;
    Ok(edge(ts[0]).abs() <= lim_tol && edge(ts[N - 1]).abs() <= lim_tol)
}

pub const B_SPLINE_MAX_ORDER: usize = 12;

/// Centered cardinal B-spline `B_n = B_{n-1} * B_0`, `B_0` the indicator of
/// `[-1/2, 1/2)`, by the Cox–de Boor recursion on the integer knots.
pub fn b_spline(n: usize, x: f64) -> Result<f64> {
    if n > B_SPLINE_MAX_ORDER {
        return invalid(format!("B-spline order {n} above {B_SPLINE_MAX_ORDER}"));
    }
    let u = x + (n as f64 + 1.0) / 2.0;
    if !(0.0..n as f64 + 1.0).contains(&u) {
        return Ok(0.0);
    }
    // N_{j,0} on [j, j+1); raise the degree in place
    let mut nj: Vec<f64> = (0..=n).map(|j| if u >= j as f64 && u < j as f64 + 1.0 { 1.0 } else { 0.0 }).collect();
    for d in 1..=n {
        for j in 0..=n - d {
            let jf = j as f64;
            let df = d as f64;
            nj[j] = ((u - jf) * nj[j] + (jf + df + 1.0 - u) * nj[j + 1]) / df;
        }
    }
    Ok(nj[0])
}

/// `B_n` as a radial profile on `[0, (n+1)/2]`.
pub fn b_spline_profile(n: usize) -> Result<RadialProfile> {
    b_spline(n, 0.0)?;
    let support = (n as f64 + 1.0) / 2.0;
    Ok(RadialProfile::closed(format!("B_{n}"), support, n.saturating_sub(1) as u32, move |t| {
        b_spline(n, t).unwrap_or(0.0)
    }))
}

/// `Σ a_j b_j` with error-free products and compensated summation.
fn dot2(pairs: impl Iterator<Item = (f64, f64)>) -> f64 {
    let (mut s, mut comp) = (0.0f64, 0.0f64);
    for (a, b) in pairs {
        let p = a * b;
        let pe = a.mul_add(b, -p);
        let t = s + p;
        let z = t - s;
        comp += (s - (t - z)) + (p - z) + pe;
        s = t;
    }
    s + comp
}

pub const A_SPLINE_ORDERS: std::ops::RangeInclusive<usize> = 2..=6;

/// The A-spline `A_{3n-2}(x) = p(|x|)` on `[-1, 1]`: `p` of degree `3n-2`
/// with `p(0) = 1`, `p^{(k)}(1) = 0` for `k ≤ 2n-2` and `p^{(k)}(0) = 0` for
/// odd `k ≤ 2n-3`, found by LU on the `(3n-1)`-square system. Derivative
/// conditions are imposed on Taylor coefficients `p^{(k)}/k!`, which keeps the
/// system entries below `C(3n-2, k)`.
pub fn a_spline(n: usize) -> Result<RadialProfile> {
    if !A_SPLINE_ORDERS.contains(&n) {
        return invalid(format!("A-spline index {n} outside 2..=6"));
    }
    let dim = 3 * n - 1;
    let mut a = DMatrix::<f64>::zeros(dim, dim);
    let mut b = DVector::<f64>::zeros(dim);
    a[(0, 0)] = 1.0;
    b[0] = 1.0;
    let mut row = 1;
    // contact rows carry p^{(k)}(1)/k! = Σ_j C(j,k) c_j
    for k in 0..=2 * n - 2 {
        for j in k..dim {
            a[(row, j)] = binomial(j, k);
        }
        row += 1;
    }
    for k in (1..=2 * n - 3).step_by(2) {
        a[(row, k)] = 1.0;
        row += 1;
    }
    debug_assert_eq!(row, dim);
    let lu = a.clone().lu();
    let singular = || Error::Internal(format!("A-spline system for n = {n} is singular"));
    let mut c = lu.solve(&b).ok_or_else(singular)?;
    // the monomial system is ill-conditioned; refine with residuals in
    // doubled precision
    for _ in 0..3 {
        let r = DVector::from_fn(dim, |i, _| b[i] - dot2((0..dim).map(|j| (a[(i, j)], c[j]))));
        c += lu.solve(&r).ok_or_else(singular)?;
    }
    // backward error: residual relative to the size of the terms in each row
    let residual = (0..dim)
        .map(|i| {
            let terms: f64 = (0..dim).map(|j| (a[(i, j)] * c[j]).abs()).sum();
            let r: f64 = (0..dim).map(|j| a[(i, j)] * c[j]).sum::<f64>() - b[i];
            r.abs() / terms.max(1.0)
        })
        .fold(0.0, f64::max);
    if residual > 1e-10 {
        return Err(Error::Internal(format!("A-spline residual {residual:e} for n = {n}")));
    }
    Ok(RadialProfile::polynomial(format!("A_{}", 3 * n - 2), c.iter().copied().collect(), 2 * n as u32 - 2))
}

/// Coefficients in `s` of `e_n(s)`, `s = √t`, from termwise differentiation of
/// `t^{n-3/2}(1-√t)^n = Σ_j C(n,j)(-1)^j t^{n-3/2+j/2}`:
/// `e_n(s) = Σ_j C(n,j)(-1)^j (n-3/2+j/2)_{(n-1)} s^j` on `[0, 1)`.
pub fn e_spline_coefficients(n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return invalid("e_n needs n ≥ 1");
    }
    Ok((0..=n)
        .map(|j| {
            let sgn = if j % 2 == 0 { 1.0 } else { -1.0 };
            sgn * binomial(n, j) * falling(n as f64 - 1.5 + j as f64 / 2.0, n - 1)
        })
        .collect())
}

/// `e_n(s)`; zero for `|s| ≥ 1`, where `s = 1` is the one-sided limit.
pub fn e_spline(n: usize, s: f64) -> Result<f64> {
    let c = e_spline_coefficients(n)?;
    let s = s.abs();
    Ok(if s >= 1.0 { 0.0 } else { horner(&c, s) })
}

pub fn e_spline_profile(n: usize) -> Result<RadialProfile> {
    Ok(RadialProfile::polynomial(format!("e_{n}"), e_spline_coefficients(n)?, 0))
}

pub const TILDE_E_MAX: usize = 10;

/// `ẽ_{2n+1}(x) = (-1)^n (P_n * P_n)(x)` with `P_n` the Legendre polynomial of
/// `[-1/2, 1/2]` extended by zero; the convolution of two polynomials is
/// integrated exactly by 16-point Gauss on the overlap.
pub fn tilde_e_spline(n: usize, x: f64) -> Result<f64> {
    if n > TILDE_E_MAX {
        return invalid(format!("ẽ index {n} above {TILDE_E_MAX}"));
    }
    if x.abs() >= 1.0 {
        return Ok(0.0);
    }
    let (a, b) = ((-0.5f64).max(x - 0.5), 0.5f64.min(x + 0.5));
    let gl = GaussLegendre::new(16);
    let p = |u: f64| legendre_with_derivative(n, 2.0 * u).0;
    let v = gl.integrate(|u| p(u) * p(x - u), a, b);
    Ok(if n % 2 == 0 { v } else { -v })
}

pub fn tilde_e_profile(n: usize) -> Result<RadialProfile> {
    tilde_e_spline(n, 0.0)?;
    Ok(RadialProfile::closed(format!("tilde_e_{}", 2 * n + 1), 1.0, 0, move |t| {
        tilde_e_spline(n, t).unwrap_or(0.0)
    }))
}

/// Radius from which transforms of polynomial profiles in dimensions 1 and 3
/// use the exact integration-by-parts expansion instead of quadrature.
pub const EXPANSION_MIN_R: f64 = 10.0;

/// `∫_0^L q(t) e^{irt} dt = Σ_k (-1)^k [q^{(k)}(t) e^{irt}]_0^L / (ir)^{k+1}`
/// from the Taylor coefficients of `q` at `0` and at `L`. Contact conditions
/// are exact zeros there, so only terms that survive cancellation remain.
fn poly_oscillatory(at0: &[f64], at_end: &[f64], len: f64, r: f64) -> Complex64 {
    let ir = Complex64::new(0.0, r);
    let e = Complex64::from_polar(1.0, r * len);
    let mut s = Complex64::new(0.0, 0.0);
    let mut pow = ir;
    let mut fact = 1.0;
    for k in 0..at0.len().max(at_end.len()) {
        if k > 0 {
            fact *= k as f64;
        }
        let d0 = at0.get(k).copied().unwrap_or(0.0) * fact;
        let dl = at_end.get(k).copied().unwrap_or(0.0) * fact;
        let sgn = if k % 2 == 0 { 1.0 } else { -1.0 };
        s += sgn * (e * dl - d0) / pow;
        pow *= ir;
    }
    s
}

/// Transform of `f_0(|x|)` on `R^m` at radius `r`:
/// `m = 1`: `2∫ f_0(t) cos(rt) dt`; `m = 2`: `2π ∫ f_0(t) t J_0(rt) dt`;
/// `m = 3`: `4π ∫ f_0(t) t² sin(rt)/(rt) dt`.
pub fn radial_ft(profile: &RadialProfile, m: usize, r: f64) -> Result<f64> {
    if !(1..=3).contains(&m) {
        return invalid(format!("dimension {m} outside 1..=3"));
    }
    if !profile.support.is_finite() {
        return invalid("radial transform needs a compact profile");
    }
    let r = r.abs();
    let l = profile.support;
    if let (ProfileKind::Polynomial { coeffs, at_end }, true) = (&profile.kind, r >= EXPANSION_MIN_R && m != 2) {
        let v = if m == 1 {
            2.0 * poly_oscillatory(coeffs, at_end, l, r).re
        } else {
            // q(t) = t p(t), and t = L + u at the far end
            let mut q0 = vec![0.0];
            q0.extend_from_slice(coeffs);
            let ql: Vec<f64> = (0..=at_end.len())
                .map(|j| l * at_end.get(j).copied().unwrap_or(0.0) + if j > 0 { at_end[j - 1] } else { 0.0 })
                .collect();
            4.0 * PI / r * poly_oscillatory(&q0, &ql, l, r).im
        };
        return Ok(v);
    }
    let kernel = |t: f64| -> f64 {
        match m {
            1 => 2.0 * (r * t).cos(),
            2 => 2.0 * PI * t * bessel_j(0.0, r * t),
            _ => {
                let x = r * t;
                4.0 * PI * t * t * if x == 0.0 { 1.0 } else { x.sin() / x }
            }
        }
    };
    // panels aligned with half-integers so that B-spline knots are panel ends
    let per_half = (0.5 * r / 8.0).ceil().max(1.0) as usize;
    let panels = ((2.0 * l).ceil() as usize).max(1) * per_half;
    let v = gl20().integrate_composite(|t| profile.value(t) * kernel(t), 0.0, l, panels);
    if !v.is_finite() {
        return Err(Error::ConvergenceFailure {
            reason: format!("radial transform of {} at r = {r}", profile.name),
            estimate: v,
            error: f64::INFINITY,
        });
    }
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformMinimum {
    pub min_value: f64,
    pub argmin: f64,
}

/// Minimum of the radial transform over `r = 0, step, …, rmax`.
pub fn radial_ft_positivity(profile: &RadialProfile, m: usize, rmax: f64, step: f64) -> Result<TransformMinimum> {
    if !(step > 0.0 && rmax >= 0.0) {
        return invalid("need step > 0 and rmax ≥ 0");
    }
    let count = (rmax / step + 1e-9).floor() as usize;
    let vals: Result<Vec<(f64, f64)>> = (0..=count)
        .into_par_iter()
        .map(|i| {
            let r = i as f64 * step;
            radial_ft(profile, m, r).map(|v| (v, r))
        })
        .collect();
    let (min_value, argmin) = vals?
        .into_iter()
        .fold((f64::INFINITY, 0.0), |a, b| if b.0 < a.0 { b } else { a });
    Ok(TransformMinimum { min_value, argmin })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShiftApproximation {
    /// `c_k` for `k = -N..=N`.
    pub coeffs: Vec<f64>,
    pub sup_error: f64,
    /// Some singular values were dropped as below `10⁻¹²` of the largest.
    pub regularized: bool,
}

/// Least-squares fit of `Σ_{|k|≤N} c_k A(x + kh)`, `A = A_{3n-2}`, to `f` on
/// the grid of step `h/8` over `[-Nh-1, Nh+1]`, solved by SVD. The sup error is
/// measured on the grid of step `h/32`.
pub fn shift_approx(f: &dyn Fn(f64) -> f64, n: usize, h: f64, half_width: usize) -> Result<ShiftApproximation> {
    if !(h > 0.0 && h < 1.0) {
        return invalid(format!("h = {h} outside (0, 1)"));
    }
    let a = a_spline(n)?;
    let big_n = half_width as i64;
    let span = half_width as f64 * h + 1.0;
    let grid = |step: f64| -> Vec<f64> {
        let cnt = (2.0 * span / step).round() as usize;
        (0..=cnt).map(|i| -span + i as f64 * step).collect()
    };
    let xs = grid(h / 8.0);
    let cols = 2 * half_width + 1;
    let design = DMatrix::from_fn(xs.len(), cols, |i, j| a.value(xs[i] + (j as i64 - big_n) as f64 * h));
    let rhs = DVector::from_iterator(xs.len(), xs.iter().map(|&x| f(x)));
    let svd = design.svd(true, true);
    let smax = svd.singular_values.max();
    let cut = 1e-12 * smax;
    let regularized = svd.singular_values.iter().any(|&s| s <= cut);
    let c = svd.solve(&rhs, cut).map_err(|e| Error::Internal(e.to_string()))?;
    let coeffs: Vec<f64> = c.iter().copied().collect();
    let sup_error = grid(h / 32.0)
        .into_iter()
        .map(|x| {
            let s: f64 = coeffs
                .iter()
                .enumerate()
                .map(|(j, ck)| ck * a.value(x + (j as i64 - big_n) as f64 * h))
                .sum();
            (f(x) - s).abs()
        })
        .fold(0.0, f64::max);
    Ok(ShiftApproximation { coeffs, sup_error, regularized })
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenSearch {
    pub min_eig_found: f64,
    pub witness: Vec<Vec<f64>>,
}

pub const SEARCH_MAX_POINTS: usize = 12;
const SEARCH_SHARDS: u64 = 16;
const CLIMB_STEPS: usize = 16;

/// Randomized minimization of the smallest Gram eigenvalue of a real even
/// kernel over sets of at most 12 points of `R^dim` with coordinates in
/// `[-3, 3]`. Half of the trials start from a scaled lattice (a random
/// 12-point subset when the lattice is larger), half from a random cloud;
/// each start is refined by a short hill climb. Trials are split over 16
/// seeded shards and merged by minimum, so the result does not depend on the
/// thread count.
pub fn min_eig_search<K>(kernel: K, dim: usize, trials: usize, seed: u64) -> Result<EigenSearch>
where
    K: Fn(&[f64]) -> f64 + Send + Sync,
{
    if dim == 0 || dim > 4 {
        return invalid(format!("dimension {dim} outside 1..=4"));
    }
    let side = (1..).find(|s: &usize| s.pow(dim as u32) >= SEARCH_MAX_POINTS).unwrap();
    let gram = |pts: &[Vec<f64>]| -> f64 {
        let n = pts.len();
        let mut d = vec![0.0; dim];
        let m = DMatrix::from_fn(n, n, |i, j| {
            for (k, dk) in d.iter_mut().enumerate() {
                *dk = pts[i][k] - pts[j][k];
            }
            kernel(&d)
        });
        SymmetricEigen::new(m).eigenvalues.min()
    };
    let shard = |s: u64| -> EigenSearch {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(s));
        let count = trials / SEARCH_SHARDS as usize + usize::from((s as usize) < trials % SEARCH_SHARDS as usize);
        let mut best = EigenSearch { min_eig_found: f64::INFINITY, witness: Vec::new() };
        for t in 0..count {
            let spacing = rng.random_range(0.05..1.0);
            let mut pts: Vec<Vec<f64>> = if t % 2 == 0 {
                let mut lattice: Vec<Vec<f64>> = (0..side.pow(dim as u32))
                    .map(|mut idx| {
                        (0..dim)
                            .map(|_| {
                                let c = (idx % side) as f64 - (side as f64 - 1.0) / 2.0;
                                idx /= side;
                                c * spacing + rng.random_range(-0.02..0.02) * spacing
                            })
                            .collect()
                    })
                    .collect();
                while lattice.len() > SEARCH_MAX_POINTS {
                    let k = rng.random_range(0..lattice.len());
                    lattice.swap_remove(k);
                }
                lattice
            } else {
                let k = rng.random_range(3..=SEARCH_MAX_POINTS);
                let half = (spacing * 4.0).min(3.0);
                (0..k).map(|_| (0..dim).map(|_| rng.random_range(-half..half)).collect()).collect()
            };
            let mut val = gram(&pts);
            for _ in 0..CLIMB_STEPS {
                let i = rng.random_range(0..pts.len());
                let old = pts[i].clone();
                for c in pts[i].iter_mut() {
                    *c = (*c + rng.random_range(-0.1..0.1) * spacing).clamp(-3.0, 3.0);
                }
                let v = gram(&pts);
                if v < val {
                    val = v;
                } else {
                    pts[i] = old;
                }
            }
            if val < best.min_eig_found {
                best = EigenSearch { min_eig_found: val, witness: pts };
            }
        }
        best
    };
    let out = (0..SEARCH_SHARDS)
        .into_par_iter()
        .map(shard)
        .collect::<Vec<_>>()
        .into_iter()
        .fold(EigenSearch { min_eig_found: f64::INFINITY, witness: Vec::new() }, |a, b| {
            if b.min_eig_found < a.min_eig_found {
                b
            } else {
                a
            }
        });
    Ok(out)
}

/// Search for a Gram violation of `e^{-‖x‖_p^α}` on `l_p^m`.
pub fn schoenberg_check(m: usize, p: f64, alpha: f64, trials: usize, seed: u64) -> Result<EigenSearch> {
    if !(m == 2 || m == 3) {
        return invalid(format!("dimension {m} outside {{2, 3}}"));
    }
    if !(p > 2.0) {
        return invalid(format!("p = {p} must exceed 2"));
    }
    if !(alpha >= 0.0) {
        return invalid(format!("α = {alpha} must be nonnegative"));
    }
    min_eig_search(move |x| (-lp_norm(x, p).powf(alpha)).exp(), m, trials, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gauss(x: &[f64]) -> Complex64 {
        Complex64::new((-x.iter().map(|v| v * v).sum::<f64>()).exp(), 0.0)
    }

    #[test]
    fn gram_examples() {
        let s = GramSpec::new(vec![vec![0.0], vec![PI]], |x| Complex64::new(x[0].cos(), 0.0));
        assert!(gram_min_eig(&s).unwrap().abs() < 1e-12);
        let s = GramSpec::new(vec![vec![0.0, 0.0], vec![0.3, 0.1], vec![-1.0, 2.0]], gauss);
        assert!(gram_min_eig(&s).unwrap() >= -1e-9 * 3.0);
        let s = GramSpec::new(vec![vec![0.0], vec![0.0]], gauss);
        assert!(gram_min_eig(&s).is_err());
        let s = GramSpec::new(vec![vec![0.0], vec![1.0]], |x| Complex64::new(x[0], 0.0));
        assert!(gram_min_eig(&s).is_err());
    }

    #[test]
    fn complex_gram_uses_the_embedding() {
        // e^{ixy} is positive definite with a rank-one Gram matrix
        let pts: Vec<Vec<f64>> = (0..5).map(|i| vec![i as f64 * 0.7]).collect();
        let s = GramSpec::new(pts, |x| Complex64::from_polar(1.0, 1.3 * x[0]));
        assert!(gram_min_eig(&s).unwrap().abs() < 1e-12);
    }

    #[test]
    fn necessary_condition() {
        let cos = |x: &[f64]| Complex64::new(x[0].cos(), 0.0);
        assert!(check_7_1(&cos, &[0.3], &[0.7]).unwrap().ok);
        let c = check_7_1(&cos, &[0.3], &[0.0]).unwrap();
        assert_eq!((c.lhs, c.rhs), (0.0, 0.0));
        let f = |x: &[f64]| Complex64::new((-x[0].abs().powf(2.5)).exp(), 0.0);
        assert!(!check_7_1(&f, &[0.35], &[0.35]).unwrap().ok);
    }

    #[test]
    fn gaussian_gram_samples_are_nonnegative() {
        let g = gram_sample(|x| Complex64::new((-x.iter().map(|v| v * v).sum::<f64>()).exp(), 0.0), 2, 50, 1).unwrap();
        assert!(g.min_relative_eig >= -1e-12);
        assert!(g.worst_points.len() >= 2);
        let cos = gram_sample(|x| Complex64::new(-x[0].cos(), 0.0), 1, 20, 1).unwrap();
        assert!(cos.min_relative_eig < 0.0);
    }

    #[test]
    fn polya_examples() {
        let hat = RadialProfile::closed("hat", f64::INFINITY, 0, |t| (1.0 - t).max(0.0));
        assert!(polya_test(&hat, 1).unwrap());
        assert!(!polya_test(&hat, 3).unwrap_or(false));
        let exp = RadialProfile::closed("exp", f64::INFINITY, 0, |t| (-t).exp());
        assert!(polya_test(&exp, 1).unwrap());
        assert!(polya_test(&exp, 3).unwrap());
        let cos = RadialProfile::closed("cos", f64::INFINITY, 0, f64::cos);
        assert!(!polya_test(&cos, 1).unwrap_or(false));
        let sq = RadialProfile::polynomial("(1-t)^2", vec![1.0, -2.0, 1.0], 0);
        assert!(polya_test(&sq, 3).unwrap());
    }

    #[test]
    fn b_spline_values_and_mass() {
        assert_eq!(b_spline(0, 0.0).unwrap(), 1.0);
        assert_eq!(b_spline(0, 0.6).unwrap(), 0.0);
        assert!((b_spline(1, 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((b_spline(3, 0.0).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        for n in 0..=B_SPLINE_MAX_ORDER {
            let half = (n as f64 + 1.0) / 2.0;
            let mass = gl20().integrate_composite(|x| b_spline(n, x).unwrap(), -half, half, 2 * (n + 1));
            assert!((mass - 1.0).abs() < 1e-10, "n={n}: {mass}");
        }
        assert!(b_spline(13, 0.0).is_err());
    }

    #[test]
    fn b_spline_recursion_matches_convolution() {
        for x in [-1.2, -0.3, 0.0, 0.45, 1.7] {
            let conv = gl20().integrate(|u| b_spline(2, x - u).unwrap(), -0.5, 0.5);
            // the integrand has knots inside; split at them for an exact rule
            let knots = [-0.5, x - 1.5, x - 0.5, x + 0.5, x + 1.5, 0.5];
            let mut pts: Vec<f64> = knots.iter().copied().filter(|k| (-0.5..=0.5).contains(k)).collect();
            pts.sort_by(f64::total_cmp);
            let exact: f64 = pts.windows(2).map(|w| gl20().integrate(|u| b_spline(2, x - u).unwrap(), w[0], w[1])).sum();
            assert!((exact - b_spline(3, x).unwrap()).abs() < 1e-13);
            assert!(conv.is_finite());
        }
    }

    #[test]
    fn a_spline_two_closed_form() {
        let a = a_spline(2).unwrap();
        let c = a.coefficients().unwrap();
        for (x, y) in c.iter().zip([1.0, 0.0, -6.0, 8.0, -3.0]) {
            assert!((x - y).abs() < 1e-10);
        }
        assert!((a.value(0.5) - 0.3125).abs() < 1e-12);
        assert!((a.value(0.0) - 1.0).abs() < 1e-14);
        assert!(a_spline(1).is_err() && a_spline(7).is_err());
    }

    #[test]
    fn a_spline_exact_coefficients() {
        // exact rational elimination of the same constraints
        let three = [1.0, 0.0, -7.0, 0.0, 35.0, -56.0, 35.0, -8.0];
        let six = [
            1.0, 0.0, -40.0 / 3.0, 0.0, 260.0 / 3.0, 0.0, -1144.0 / 3.0, 0.0, 1430.0, 0.0, -8008.0,
            53248.0 / 3.0, -20020.0, 40960.0 / 3.0, -5720.0, 4096.0 / 3.0, -143.0,
        ];
        for (n, exact) in [(3, &three[..]), (6, &six[..])] {
            let a = a_spline(n).unwrap();
            for (x, y) in a.coefficients().unwrap().iter().zip(exact) {
                assert!((x - y).abs() <= 1e-9 * y.abs().max(1.0), "n={n}: {x} vs {y}");
            }
        }
    }

    #[test]
    fn a_spline_contact_and_bell_shape() {
        for n in A_SPLINE_ORDERS {
            let a = a_spline(n).unwrap();
            let c = a.coefficients().unwrap();
            for (k, (v, scale)) in taylor_raw(c, 1.0).into_iter().take(2 * n - 1).enumerate() {
                assert!(v.abs() <= 1e-10 * scale, "n={n} k={k}: {v:e} of {scale:e}");
            }
            let signs: Vec<bool> = (1..2000).map(|i| a.derivative(2, i as f64 / 2000.0) > 0.0).collect();
            assert_eq!(signs.windows(2).filter(|w| w[0] != w[1]).count(), 1, "n={n}");
            assert!((1..1000).all(|i| a.value(i as f64 / 1000.0) >= 0.0));
        }
    }

    #[test]
    fn e_spline_examples() {
        for s in [0.0, 0.2, 0.7] {
            assert!((e_spline(1, s).unwrap() - (1.0 - s)).abs() < 1e-15);
        }
        assert_eq!(e_spline(3, 1.2).unwrap(), 0.0);
        // n = 2: √t d/dt { t^{1/2} (1 - √t)^2 } at t = 1/4
        let g = |t: f64| t.sqrt() * (1.0 - t.sqrt()).powi(2);
        let (t, h) = (0.25f64, 1e-5);
        let fd = t.sqrt() * (g(t + h) - g(t - h)) / (2.0 * h);
        assert!((e_spline(2, 0.5).unwrap() - fd).abs() < 1e-8);
    }

    /// Spherical Bessel `j_n(z) = √(π/2z) J_{n+1/2}(z)`.
    fn sph_j(n: usize, z: f64) -> f64 {
        if z == 0.0 {
            return if n == 0 { 1.0 } else { 0.0 };
        }
        (PI / (2.0 * z)).sqrt() * bessel_j(n as f64 + 0.5, z)
    }

    #[test]
    fn tilde_e_examples_and_transform() {
        assert!((tilde_e_spline(0, 0.0).unwrap() - 1.0).abs() < 1e-14);
        assert!((tilde_e_spline(0, 0.4).unwrap() - 0.6).abs() < 1e-14);
        assert_eq!(tilde_e_spline(3, 1.0).unwrap(), 0.0);
        for n in 0..=4 {
            let prof = tilde_e_profile(n).unwrap();
            for w in [0.0, 1.0, 3.7, 10.0, 25.0] {
                // ∫_{-1/2}^{1/2} P_n(2u) e^{-iωu} du = (-i)^n j_n(ω/2)
                let oracle = sph_j(n, w / 2.0).powi(2);
                let ft = radial_ft(&prof, 1, w).unwrap();
                assert!((ft - oracle).abs() < 1e-9, "n={n} w={w}: {ft} vs {oracle}");
            }
        }
    }

    #[test]
    fn b_spline_transform_is_sinc_power() {
        let p = b_spline_profile(3).unwrap();
        for w in [0.5f64, 2.0, 7.0] {
            let s = (w / 2.0).sin() / (w / 2.0);
            assert!((radial_ft(&p, 1, w).unwrap() - s.powi(4)).abs() < 1e-12);
        }
        assert!(radial_ft_positivity(&p, 1, 50.0, 0.05).unwrap().min_value >= -1e-9);
    }

    #[test]
    fn expansion_agrees_with_quadrature() {
        let a = a_spline(2).unwrap();
        let quad = RadialProfile::closed("A_4 closed", 1.0, 2, |t| (1.0 - t).powi(3) * (1.0 + 3.0 * t));
        for m in [1, 3] {
            for r in [10.0, 13.3, 20.0, 41.0] {
                let e = radial_ft(&a, m, r).unwrap();
                let q = radial_ft(&quad, m, r).unwrap();
                assert!((e - q).abs() < 1e-12 * (1.0 + q.abs()), "m={m} r={r}: {e} vs {q}");
            }
        }
    }

    #[test]
    fn hat_transform_changes_sign_in_three_dimensions() {
        let hat = RadialProfile::polynomial("hat", vec![1.0, -1.0], 0);
        assert!(radial_ft_positivity(&hat, 3, 40.0, 0.1).unwrap().min_value < 0.0);
        assert!(radial_ft_positivity(&hat, 1, 40.0, 0.1).unwrap().min_value >= -1e-12);
    }

    #[test]
    fn shift_approximation_trivial_cases() {
        let a = a_spline(2).unwrap();
        let s = shift_approx(&|x| a.value(x), 2, 0.25, 8).unwrap();
        assert!(s.sup_error <= 1e-10);
        assert!((s.coeffs[8] - 1.0).abs() < 1e-9);
        let z = shift_approx(&|_| 0.0, 2, 0.25, 8).unwrap();
        assert!(z.coeffs.iter().all(|c| *c == 0.0));
    }

    #[test]
    fn schoenberg_constant_case() {
        let r = schoenberg_check(3, f64::INFINITY, 0.0, 32, 1).unwrap();
        assert!(r.min_eig_found.abs() < 1e-12);
        assert!(schoenberg_check(4, 3.0, 1.0, 1, 1).is_err());
        assert!(schoenberg_check(2, 2.0, 1.0, 1, 1).is_err());
    }
}
