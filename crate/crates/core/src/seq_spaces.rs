//! Sequence norms `A_p`, `A*_p`, `h_p`, `b_p`, the two `A*` duality identities
//! and empirical constants of the `b_p`/`h_q` pairing inequalities.
//!
//! Sequences are finite with implicit zero extension. `A_p` and `A*_p` index
//! from 0; `h_p` and `b_p` read entry `i` as index `i + 1`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};

fn check_p(p: f64) -> Result<()> {
    if !(p > 0.0) || !p.is_finite() {
        return invalid(format!("exponent {p} must be positive and finite"));
    }
    Ok(())
}

/// `(Σ |c_k|^p)^{1/p}`.
pub fn ap_norm(c: &[f64], p: f64) -> Result<f64> {
    check_p(p)?;
    Ok(c.iter().map(|v| v.abs().powf(p)).sum::<f64>().powf(1.0 / p))
}

/// `sup_{k ≥ n} |c_k|` for every `n`.
pub fn tail_envelope(c: &[f64]) -> Vec<f64> {
    let mut env = vec![0.0; c.len()];
    let mut run = 0.0f64;
    for i in (0..c.len()).rev() {
        run = run.max(c[i].abs());
        env[i] = run;
    }
    env
}

/// `(Σ_n sup_{k ≥ n} |c_k|^p)^{1/p}`.
pub fn astar_norm(c: &[f64], p: f64) -> Result<f64> {
    check_p(p)?;
    Ok(tail_envelope(c)
        .iter()
        .map(|v| v.powf(p))
        .sum::<f64>()
        .powf(1.0 / p))
}

/// `sup_n ((1/n) Σ_{k=1}^n |y_k|^p)^{1/p}`.
pub fn hp_norm(y: &[f64], p: f64) -> Result<f64> {
    check_p(p)?;
    let mut acc = 0.0;
    let mut best = 0.0f64;
    for (i, v) in y.iter().enumerate() {
        acc += v.abs().powf(p);
        best = best.max(acc / (i + 1) as f64);
    }
    Ok(best.powf(1.0 / p))
}

/// `Σ_n ((1/n) Σ_{k ≥ n} |x_k|^p)^{1/p}`.
pub fn bp_norm(x: &[f64], p: f64) -> Result<f64> {
    check_p(p)?;
    let mut tail = 0.0;
    let mut total = 0.0;
    for i in (0..x.len()).rev() {
        tail += x[i].abs().powf(p);
        total += (tail / (i + 1) as f64).powf(1.0 / p);
    }
    Ok(total)
}

fn pairing(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>().abs()
}

fn sign(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Random confirmation draws per duality check.
pub const DUALITY_RANDOM_DRAWS: usize = 256;

#[derive(Debug, Clone, PartialEq)]
pub struct AstarDuality {
    pub lhs: f64,
    pub rhs: f64,
    pub extremal_alpha: Vec<f64>,
}

/// `sup_{‖α‖_{A*_1} ≤ 1} |Σ α_k β_k|` against `max_n (1/(n+1)) Σ_{k≤n} |β_k|`.
///
/// The extremal `α_k = sign(β_k)/(n*+1)` for `k ≤ n*` has unit `A*_1` norm and
/// attains the right-hand side; seeded random points of the unit ball confirm
/// that nothing exceeds it.
pub fn duality_identity_astar(beta: &[f64], seed: u64) -> AstarDuality {
    let mut acc = 0.0;
    let mut rhs = 0.0;
    let mut nstar = 0;
    for (n, b) in beta.iter().enumerate() {
        acc += b.abs();
        let v = acc / (n + 1) as f64;
        if v > rhs {
            rhs = v;
            nstar = n;
        }
    }
    let mut alpha = vec![0.0; beta.len()];
    if rhs > 0.0 {
        for k in 0..=nstar {
            alpha[k] = sign(beta[k]) / (nstar + 1) as f64;
        }
    }
    let mut lhs = pairing(&alpha, beta);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..DUALITY_RANDOM_DRAWS {
        let cand: Vec<f64> = beta.iter().map(|_| rng.random_range(-1.0..1.0)).collect();
        let norm = astar_norm(&cand, 1.0).expect("p = 1");
        if norm > 0.0 {
            lhs = lhs.max(pairing(&cand, beta) / norm);
        }
    }
    AstarDuality {
        lhs,
        rhs,
        extremal_alpha: alpha,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CesaroDuality {
    pub lhs: f64,
    pub rhs: f64,
    /// Maximizer on the Cesàro unit ball.
    pub extremal_beta: Vec<f64>,
}

/// `sup { |Σ α_k β_k| : max_n (1/(n+1)) Σ_{k≤n} |β_k| ≤ 1 }` against
/// `Σ_n sup_{k≥n} |α_k|`.
///
/// The constraint releases one unit of mass at every index `n`, spendable at
/// any `j ≥ n`; spending it where `|α_j|` is largest earns `sup_{j≥n}|α_j|`.
/// That staircase is the maximizer. Single-index extreme points `(k+1) e_k` and seeded
/// random points are also tried.
pub fn duality_identity_cesaro(alpha: &[f64], seed: u64) -> CesaroDuality {
    let len = alpha.len();
    let rhs: f64 = tail_envelope(alpha).iter().sum();
    // argmax of |α_j| over j ≥ n, latest index on ties
    let mut best = vec![0usize; len];
    let mut arg = len.saturating_sub(1);
    for n in (0..len).rev() {
        if alpha[n].abs() > alpha[arg].abs() {
            arg = n;
        }
        best[n] = arg;
    }
    let mut beta = vec![0.0; len];
    for &j in &best {
        beta[j] += 1.0;
    }
    for (b, a) in beta.iter_mut().zip(alpha) {
        *b *= if *a < 0.0 { -1.0 } else { 1.0 };
    }
    debug_assert!(cesaro_ball_norm(&beta) <= 1.0 + 1e-12);
    let mut lhs = pairing(alpha, &beta);
    for (k, a) in alpha.iter().enumerate() {
        lhs = lhs.max((k + 1) as f64 * a.abs());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..DUALITY_RANDOM_DRAWS {
        let cand: Vec<f64> = alpha.iter().map(|_| rng.random_range(-1.0..1.0)).collect();
        let norm = cesaro_ball_norm(&cand);
        if norm > 0.0 {
            lhs = lhs.max(pairing(alpha, &cand) / norm);
        }
    }
    CesaroDuality {
        lhs,
        rhs,
        extremal_beta: beta,
    }
}

/// `max_n (1/(n+1)) Σ_{k≤n} |β_k|`.
pub fn cesaro_ball_norm(beta: &[f64]) -> f64 {
    let mut acc = 0.0;
    let mut best = 0.0f64;
    for (n, b) in beta.iter().enumerate() {
        acc += b.abs();
        best = best.max(acc / (n + 1) as f64);
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HolderCheck {
    pub pairing: f64,
    pub bound_product: f64,
}

/// `|Σ x_k y_k|` and `‖x‖_{b_p} ‖y‖_{h_q}`, `q = p/(p-1)`.
pub fn hp_bp_holder_check(x: &[f64], y: &[f64], p: f64) -> Result<HolderCheck> {
    if !(p > 1.0) || !p.is_finite() {
        return invalid(format!("exponent {p} must lie in (1, ∞)"));
    }
    let q = p / (p - 1.0);
    Ok(HolderCheck {
        pairing: pairing(x, y),
        bound_product: bp_norm(x, p)? * hp_norm(y, q)?,
    })
}

/// Empirical constants of the three pairing inequalities:
/// `γ₁ = max |⟨x,y⟩| / (‖x‖_{b_p}‖y‖_{h_q})`,
/// `γ₂ = min_y sup_{‖x‖_{b_p}≤1} |⟨x,y⟩| / ‖y‖_{h_q}`,
/// `γ₃ = min_x sup_{‖y‖_{h_q}≤1} |⟨x,y⟩| / ‖x‖_{b_p}`.
/// The inner suprema are bounded from below by explicit test vectors, so the
/// reported `γ₂`, `γ₃` are lower estimates of the true constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HolderConstants {
    pub p: f64,
    pub samples: usize,
    pub gamma1: f64,
    pub gamma2: f64,
    pub gamma3: f64,
}

/// Random sequence of length 1..=64 with a random power decay profile.
fn random_sequence(rng: &mut ChaCha8Rng) -> Vec<f64> {
    let len = rng.random_range(1..=64usize);
    let decay = rng.random_range(0.0..1.5);
    let sparse = rng.random_bool(0.3);
    (0..len)
        .map(|k| {
            if sparse && rng.random_bool(0.7) {
                0.0
            } else {
                rng.random_range(-1.0..1.0) * ((k + 1) as f64).powf(-decay)
            }
        })
        .collect()
}

/// Best pairing of `y` against normalized test vectors of the `b_p` ball.
fn dual_of_hq(y: &[f64], p: f64, q: f64) -> f64 {
    let mut best = 0.0f64;
    for n in 1..=y.len() {
        let x: Vec<f64> = (0..y.len())
            .map(|k| {
                if k < n {
                    sign(y[k]) * y[k].abs().powf(q - 1.0)
                } else {
                    0.0
                }
            })
            .collect();
        let nb = bp_norm(&x, p).expect("valid p");
        if nb > 0.0 {
            best = best.max(pairing(&x, y) / nb);
        }
    }
    best
}

/// Best pairing of `x` against normalized test vectors of the `h_q` ball.
fn dual_of_bp(x: &[f64], p: f64, q: f64) -> f64 {
    let mut cands: Vec<Vec<f64>> = vec![
        x.iter().map(|&v| sign(v)).collect(),
        x.iter().map(|&v| sign(v) * v.abs().powf(p - 1.0)).collect(),
    ];
    // weights that grow like the Cesàro budget allows
    for s in [0.25, 0.5, 1.0] {
        cands.push(
            x.iter()
                .enumerate()
                .map(|(k, &v)| sign(v) * ((k + 1) as f64).powf(s / q))
                .collect(),
        );
    }
    cands
        .iter()
        .filter_map(|y| {
            let nh = hp_norm(y, q).expect("valid q");
            (nh > 0.0).then(|| pairing(x, y) / nh)
        })
        .fold(0.0, f64::max)
}

pub fn holder_constants(p: f64, samples: usize, seed: u64) -> Result<HolderConstants> {
    if !(p > 1.0) || !p.is_finite() {
        return invalid(format!("exponent {p} must lie in (1, ∞)"));
    }
    let q = p / (p - 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g1 = 0.0f64;
    let mut g2 = f64::INFINITY;
    let mut g3 = f64::INFINITY;
    let mut drawn = 0;
    while drawn < samples {
        let x = random_sequence(&mut rng);
        let y = random_sequence(&mut rng);
        let bx = bp_norm(&x, p)?;
        let hy = hp_norm(&y, q)?;
        if bx == 0.0 || hy == 0.0 {
            continue;
        }
        drawn += 1;
        g1 = g1.max(pairing(&x, &y) / (bx * hy));
        g2 = g2.min(dual_of_hq(&y, p, q) / hy);
        g3 = g3.min(dual_of_bp(&x, p, q) / bx);
    }
    Ok(HolderConstants {
        p,
        samples,
        gamma1: g1,
        gamma2: g2,
        gamma3: g3,
    })
}

/// Every sequence of the given length with entries from `values`.
pub fn exhaustive_sequences(values: &[f64], len: usize) -> Vec<Vec<f64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|s| {
                values.iter().map(move |&v| {
                    let mut t = s.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}
