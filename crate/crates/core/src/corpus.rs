//! Fixed test corpora shared by the experiments.
//!
//! The periodic corpus holds 20 continuous 2π-periodic functions of varied
//! smoothness; the dyadic corpus holds 10 functions on `[0, 1)`.

use std::f64::consts::PI;

use crate::error::Result;
use crate::trig::SampledFunction;
use crate::walsh::DyadicSignal;

#[derive(Debug, Clone, Copy)]
pub struct CorpusFunction {
    pub id: &'static str,
    pub f: fn(f64) -> f64,
}

fn takagi(x: f64) -> f64 {
    let mut s = 0.0;
    let mut y = x / (2.0 * PI);
    let mut w = 1.0;
    for _ in 0..30 {
        s += w * (y - y.round()).abs();
        y *= 2.0;
        w *= 0.5;
    }
    s
}

fn weierstrass(x: f64) -> f64 {
    (0..8)
        .map(|k| 2f64.powf(-0.5 * k as f64) * (2f64.powi(k) * x).cos())
        .sum()
}

/// Reduces `x` to `[-π, π)`.
pub fn wrap(x: f64) -> f64 {
    (x + PI).rem_euclid(2.0 * PI) - PI
}

pub fn periodic_corpus() -> Vec<CorpusFunction> {
    vec![
        CorpusFunction {
            id: "abs_sin",
            f: |x| x.sin().abs(),
        },
        CorpusFunction {
            id: "sqrt_abs_sin",
            f: |x| x.sin().abs().sqrt(),
        },
        CorpusFunction {
            id: "abs_sin_1_5",
            f: |x| x.sin().abs().powf(1.5),
        },
        CorpusFunction {
            id: "abs_x",
            f: |x| wrap(x).abs(),
        },
        CorpusFunction {
            id: "abs_x_0_3",
            f: |x| wrap(x).abs().powf(0.3),
        },
        CorpusFunction {
            id: "cubic_odd",
            f: |x| {
                let y = wrap(x);
                y * (PI * PI - y * y)
            },
        },
        CorpusFunction {
            id: "exp_cos",
            f: |x| x.cos().exp(),
        },
        CorpusFunction {
            id: "poisson",
            f: |x| 1.0 / (1.25 - x.cos()),
        },
        CorpusFunction {
            id: "sin3",
            f: |x| (3.0 * x).sin(),
        },
        CorpusFunction {
            id: "trig_mix",
            f: |x| (5.0 * x).cos() + (2.0 * x).sin(),
        },
        CorpusFunction {
            id: "weierstrass",
            f: weierstrass,
        },
        CorpusFunction {
            id: "takagi",
            f: takagi,
        },
        CorpusFunction {
            id: "pos_cos",
            f: |x| x.cos().max(0.0),
        },
        CorpusFunction {
            id: "hat",
            f: |x| (1.0 - wrap(x).abs()).max(0.0),
        },
        CorpusFunction {
            id: "abs_cos2",
            f: |x| (2.0 * x).cos().abs(),
        },
        CorpusFunction {
            id: "log_sin",
            f: |x| (2.0 + x.sin()).ln(),
        },
        CorpusFunction {
            id: "abs_sin_half",
            f: |x| (0.5 * x).sin().abs(),
        },
        CorpusFunction {
            id: "clipped",
            f: |x| wrap(x).abs().min(1.0),
        },
        CorpusFunction {
            id: "bump",
            f: |x| (-4.0 * wrap(x).powi(2)).exp(),
        },
        CorpusFunction {
            id: "sin_abs_sin",
            f: |x| x.sin() * x.sin().abs(),
        },
    ]
}

pub fn sample_periodic(m: usize) -> Result<Vec<(&'static str, SampledFunction)>> {
    periodic_corpus()
        .into_iter()
        .map(|c| Ok((c.id, SampledFunction::from_fn(m, c.f)?)))
        .collect()
}

/// Functions on `[0, 1)`, sampled at dyadic nodes `j / 2^B`.
pub fn dyadic_corpus() -> Vec<CorpusFunction> {
    vec![
        CorpusFunction {
            id: "identity",
            f: |x| x,
        },
        CorpusFunction {
            id: "tent",
            f: |x| 1.0 - (2.0 * x - 1.0).abs(),
        },
        CorpusFunction {
            id: "sqrt",
            f: f64::sqrt,
        },
        CorpusFunction {
            id: "sin2pi",
            f: |x| (2.0 * PI * x).sin(),
        },
        CorpusFunction {
            id: "square",
            f: |x| x * x,
        },
        CorpusFunction {
            id: "exp",
            f: f64::exp,
        },
        CorpusFunction {
            id: "abs_centered_0_3",
            f: |x| (x - 0.3).abs(),
        },
        CorpusFunction {
            id: "cantor_like",
            f: |x| takagi(2.0 * PI * x),
        },
        CorpusFunction {
            id: "cos6pi",
            f: |x| (6.0 * PI * x).cos(),
        },
        CorpusFunction {
            id: "root_cube",
            f: |x| (x - 0.5).abs().powf(1.0 / 3.0),
        },
    ]
}

pub fn sample_dyadic(bits: u32) -> Result<Vec<(&'static str, DyadicSignal)>> {
    let n = 1usize << bits;
    dyadic_corpus()
        .into_iter()
        .map(|c| {
            Ok((
                c.id,
                DyadicSignal::new((0..n).map(|j| (c.f)(j as f64 / n as f64)).collect())?,
            ))
        })
        .collect()
}

/// Functions of the periodic corpus with a corner or a cusp. On these the
/// de la Vallée Poussin error is comparable with `ω_1(f; 1/n)`; on smooth
/// entries it decays faster, since the method is not saturated.
pub const NONSMOOTH_IDS: [&str; 10] = [
    "abs_sin",
    "sqrt_abs_sin",
    "abs_x",
    "abs_x_0_3",
    "takagi",
    "pos_cos",
    "hat",
    "abs_cos2",
    "abs_sin_half",
    "clipped",
];

/// Ratio bands observed on these corpora, pinned for regression. Each band
/// `[lo, hi]` was measured once and widened by a factor 2 on both sides.
pub mod bands {
    /// `‖f - V_n f‖_∞ / ω_1(f; 1/n)`, `V_n` de la Vallée Poussin, over
    /// `NONSMOOTH_IDS` and `n ∈ {16, …, 256}` at `M = 8192`. Measured
    /// `[0.222, 0.773]`.
    pub const JACKSON: (f64, f64) = (0.11, 1.55);
    /// `‖f - R_n f‖ / ω_2(f; π/n)` with multipliers `(1 - k²/n²)₊`, whole
    /// corpus, `n ∈ {16, …, 256}`, sup and `L_2` grid norms. Measured
    /// `[0.101, 0.361]`.
    pub const RIESZ: (f64, f64) = (0.05, 0.72);
    /// `K(f, t) / ω̃_2(f; t)` at `t = 1/16`, whole corpus. Measured
    /// `[1.64, 3.47]`.
    pub const K_FUNCTIONAL: (f64, f64) = (0.8, 7.0);
    /// `‖f - σ_n^α f‖_∞ / ‖f - σ_n f‖_∞` for the Walsh `(C, α)` and `(C, 1)`
    /// means, `α ∈ {1/2, 2}`, dyadic corpus at `B = 12`, `n ≤ 1024`. Measured
    /// `[0.556, 1.817]` (`B = 11` and `12` combined).
    pub const WALSH_CESARO: (f64, f64) = (0.27, 3.7);
    /// Fejér against indexed Abel–Poisson deviations in both directions, whole
    /// corpus at `M = 2048`, `n ≤ 256`; the band is `[1/C, C]`. Measured
    /// `[0.784, 1.276]`.
    pub const FEJER_ABEL: f64 = 2.6;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpora_sizes_and_continuity() {
        let c = periodic_corpus();
        assert_eq!(c.len(), 20);
        for f in &c {
            let a = (f.f)(-PI);
            let b = (f.f)(PI - 1e-9);
            assert!((a - b).abs() < 1e-3, "{} not periodic-continuous", f.id);
        }
        assert_eq!(dyadic_corpus().len(), 10);
    }
}
