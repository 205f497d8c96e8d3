//! Walsh–Paley analysis on `2^B` dyadic nodes.
//!
//! Node `j` stands for `x = j/2^B`; its dyadic digits are the bits of `j`
//! read from the top, so dyadic addition is exclusive-or of indices. Paley
//! ordering pairs bit `i` of `n` with digit `i + 1` of `x`, hence
//! `ψ_n(j) = (-1)^{popcount(n & rev_B(j))}`.

use rayon::prelude::*;

use crate::error::{invalid, Result};

pub const MIN_BITS: u32 = 2;
pub const MAX_BITS: u32 = 16;

/// `2^B` samples of a function on `[0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DyadicSignal {
    values: Vec<f64>,
    bits: u32,
}

impl DyadicSignal {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        let len = values.len();
        if !len.is_power_of_two() {
            return invalid(format!("signal length {len} is not a power of two"));
        }
        let bits = len.trailing_zeros();
        if !(MIN_BITS..=MAX_BITS).contains(&bits) {
            return invalid(format!(
                "signal needs between 2^{MIN_BITS} and 2^{MAX_BITS} samples"
            ));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return invalid("samples must be finite");
        }
        Ok(Self { values, bits })
    }

    pub fn from_fn<F: Fn(f64) -> f64>(bits: u32, f: F) -> Result<Self> {
        let n = 1usize << bits;
        Self::new((0..n).map(|j| f(j as f64 / n as f64)).collect())
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `sup_x |f(x ∔ t) - f(x)|` for `t = s/2^B`.
    pub fn shift_deviation(&self, s: usize) -> f64 {
        let s = s & (self.len() - 1);
        self.values
            .iter()
            .enumerate()
            .fold(0.0, |m, (j, v)| m.max((self.values[j ^ s] - v).abs()))
    }

    pub fn sub(&self, other: &DyadicSignal) -> DyadicSignal {
        assert_eq!(self.len(), other.len());
        DyadicSignal {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
            bits: self.bits,
        }
    }
}

pub fn bit_reverse(j: usize, bits: u32) -> usize {
    if bits == 0 {
        0
    } else {
        j.reverse_bits() >> (usize::BITS - bits)
    }
}

/// `ψ_n` at node `j` of the `2^B` grid.
pub fn walsh_fn(n: usize, j: usize, bits: u32) -> i8 {
    if (n & bit_reverse(j, bits)).count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `j ∔ l`.
pub fn dyadic_add(j: usize, l: usize) -> usize {
    j ^ l
}

/// In-place unnormalized Walsh–Hadamard butterfly (natural ordering).
fn hadamard(v: &mut [f64]) {
    let n = v.len();
    let mut h = 1;
    while h < n {
        for block in v.chunks_mut(2 * h) {
            let (a, b) = block.split_at_mut(h);
            for (x, y) in a.iter_mut().zip(b.iter_mut()) {
                let (s, d) = (*x + *y, *x - *y);
                *x = s;
                *y = d;
            }
        }
        h *= 2;
    }
}

/// Walsh–Paley coefficients `c_k = 2^{-B} Σ_j f_j ψ_k(j)`, `k < 2^B`.
#[derive(Debug, Clone, PartialEq)]
pub struct WalshCoefficients {
    coeffs: Vec<f64>,
    bits: u32,
}

impl WalshCoefficients {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        let s = DyadicSignal::new(coeffs)?;
        Ok(Self {
            coeffs: s.values,
            bits: s.bits,
        })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Coefficient-wise product with `w(k)`.
    pub fn weighted<F: Fn(usize) -> f64>(&self, w: F) -> WalshCoefficients {
        WalshCoefficients {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c * w(k))
                .collect(),
            bits: self.bits,
        }
    }
}

pub fn fwt(f: &DyadicSignal) -> WalshCoefficients {
    let mut h = f.values.clone();
    hadamard(&mut h);
    let scale = 1.0 / f.len() as f64;
    let coeffs = (0..f.len())
        .map(|k| h[bit_reverse(k, f.bits)] * scale)
        .collect();
    WalshCoefficients {
        coeffs,
        bits: f.bits,
    }
}

pub fn ifwt(c: &WalshCoefficients) -> DyadicSignal {
    let mut d: Vec<f64> = (0..c.coeffs.len())
        .map(|i| c.coeffs[bit_reverse(i, c.bits)])
        .collect();
    hadamard(&mut d);
    DyadicSignal {
        values: d,
        bits: c.bits,
    }
}

/// `S_n = Σ_{k<n} c_k ψ_k`.
pub fn partial_sum(c: &WalshCoefficients, n: usize) -> DyadicSignal {
    ifwt(&c.weighted(|k| if k < n { 1.0 } else { 0.0 }))
}

/// `(C, α)` weight of `c_k` in `σ_n^α`: `A^α_{n-1-k} / A^α_{n-1}` for `k < n`.
/// These are the weights of `(1/A^α_{n-1}) Σ_{m=1}^n A^{α-1}_{n-m} S_m`.
pub fn cesaro_weights(n: usize, alpha: f64) -> Vec<f64> {
    if n == 0 {
        return Vec::new();
    }
    let lg = libm::lgamma;
    let norm = lg(n as f64 - 1.0 + alpha + 1.0) - lg(n as f64);
    (0..n)
        .map(|k| {
            let m = (n - 1 - k) as f64;
            (lg(m + alpha + 1.0) - lg(m + 1.0) - norm).exp()
        })
        .collect()
}

/// `σ_n^α(f)`.
pub fn cesaro_means(c: &WalshCoefficients, n: usize, alpha: f64) -> Result<DyadicSignal> {
    if n == 0 || n > c.coeffs.len() {
        return invalid(format!("mean index {n} outside [1, 2^B]"));
    }
    if !(alpha > 0.0) {
        return invalid(format!("Cesàro order {alpha} must be positive"));
    }
    let w = cesaro_weights(n, alpha);
    Ok(ifwt(&c.weighted(|k| if k < n { w[k] } else { 0.0 })))
}

/// Walsh–Dirichlet kernel `D_n = Σ_{k<n} ψ_k` on the `2^B` grid.
pub fn dirichlet_kernel(n: usize, bits: u32) -> DyadicSignal {
    let len = 1usize << bits;
    ifwt(&WalshCoefficients {
        coeffs: (0..len).map(|k| if k < n { 1.0 } else { 0.0 }).collect(),
        bits,
    })
}

/// Shift index of `ν/n`: the dyadic node `s/2^B` obtained by truncating the
/// binary expansion of `ν/n` after `B` digits (taken modulo 1).
pub fn shift_index(nu: f64, n: usize, bits: u32) -> usize {
    let len = 1usize << bits;
    ((nu * len as f64 / n as f64).floor() as usize) % len
}

/// `2^{-B} Σ_u |α D_n(u) + β D_n(u ∔ s)|`, the Lebesgue constant of
/// `B_n = α S_n(f; x) + β S_n(f; x ∔ ν/n)`.
pub fn br_kernel_norm(alpha: f64, beta: f64, nu: f64, n: usize, bits: u32) -> f64 {
    let d = dirichlet_kernel(n, bits);
    let s = shift_index(nu, n, bits);
    let v = d.values();
    v.iter()
        .enumerate()
        .map(|(u, x)| (alpha * x + beta * v[u ^ s]).abs())
        .sum::<f64>()
        / v.len() as f64
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegularityReport {
    /// `(n, ‖B_n‖)` for `n = 1..=nmax`.
    pub lc_values: Vec<(usize, f64)>,
    /// Maximum over each octave `(2^{q-1}, 2^q]`, starting with `q = 0`.
    pub octave_maxima: Vec<f64>,
    /// Top-octave maximum at most `1.2` times the previous one.
    pub bounded: bool,
}

pub const BOUNDED_GROWTH: f64 = 1.2;

/// Lebesgue constants of the Bernstein–Rogosinski-type means for
/// `n ≤ nmax` on `2^B` nodes; the grid is chosen with `B ≥ log2(nmax) + 4`.
pub fn br_means_regularity(
    alpha: f64,
    beta: f64,
    nu: f64,
    nmax: usize,
) -> Result<RegularityReport> {
    if nmax < 2 {
        return invalid("need nmax ≥ 2 to compare octaves");
    }
    let bits = (usize::BITS - (nmax - 1).leading_zeros()) + 4;
    if bits > MAX_BITS {
        return invalid(format!("nmax {nmax} needs more than 2^{MAX_BITS} nodes"));
    }
    let lc_values: Vec<(usize, f64)> = (1..=nmax)
        .into_par_iter()
        .map(|n| (n, br_kernel_norm(alpha, beta, nu, n, bits)))
        .collect();
    let octave_maxima = octave_maxima(&lc_values);
    let k = octave_maxima.len();
    let bounded = octave_maxima[k - 1] <= BOUNDED_GROWTH * octave_maxima[k - 2];
    Ok(RegularityReport {
        lc_values,
        octave_maxima,
        bounded,
    })
}

/// Maxima over `n ∈ (2^{q-1}, 2^q]`; octave `q = 0` is `{1}`.
pub fn octave_maxima(values: &[(usize, f64)]) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    for &(n, v) in values {
        let q = if n <= 1 {
            0
        } else {
            (usize::BITS - (n - 1).leading_zeros()) as usize
        };
        if out.len() <= q {
            out.resize(q + 1, f64::NEG_INFINITY);
        }
        out[q] = out[q].max(v);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SidonTelyakovskii {
    pub l1_norm: f64,
    pub bound: f64,
    pub ok: bool,
}

/// `∫|Σ_k λ_k ψ_k|` against `Σ_k max_{s≥k} |λ_s - λ_{s+1}|`, on `2^B` nodes.
pub fn sidon_telyakovskii_bound(lambda: &[f64], bits: u32) -> Result<SidonTelyakovskii> {
    let len = 1usize << bits;
    if lambda.len() > len {
        return invalid(format!(
            "{} multipliers exceed the 2^{bits} grid",
            lambda.len()
        ));
    }
    let mut coeffs = lambda.to_vec();
    coeffs.resize(len, 0.0);
    let sum = ifwt(&WalshCoefficients::new(coeffs)?);
    let l1_norm = sum.values.iter().map(|v| v.abs()).sum::<f64>() / len as f64;
    let diffs: Vec<f64> = (0..lambda.len())
        .map(|k| (lambda[k] - lambda.get(k + 1).copied().unwrap_or(0.0)).abs())
        .collect();
    let bound: f64 = crate::seq_spaces::tail_envelope(&diffs).iter().sum();
    Ok(SidonTelyakovskii {
        l1_norm,
        bound,
        ok: l1_norm <= bound + 1e-9,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalshModuli {
    pub big_omega: f64,
    pub omega: f64,
}

/// `ω_n(f) = sup_{0 < t ≤ 2^{-n}} ‖f(· ∔ t) - f‖_∞` and `Ω_n` as displayed:
/// `sup_{k≥n} ‖2^{-k-1} Σ_{ν=0}^k 2^{ν-1} [f - f(· ∔ 2^{-n-1})]‖`.
/// The bracket does not depend on `ν`, so the inner sum is
/// `(2^{k+1} - 1)/2^{k+2}` times one difference, and the supremum over `k`
/// is its limit `1/2`.
pub fn walsh_moduli(f: &DyadicSignal, n: u32) -> Result<WalshModuli> {
    if n >= f.bits {
        return invalid(format!("modulus index {n} must be below B = {}", f.bits));
    }
    let len = f.len();
    let top = (len >> n).min(len);
    let omega = (1..=top).map(|s| f.shift_deviation(s)).fold(0.0, f64::max);
    let big_omega = 0.5 * f.shift_deviation(len >> (n + 1));
    Ok(WalshModuli { big_omega, omega })
}
