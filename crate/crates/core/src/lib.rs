//! # xlab-core
//!
//! A desk-scale numerical laboratory for classical harmonic analysis and
//! approximation theory:
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`trig`] | sampled periodic functions, Fourier coefficients, summability methods and kernels |
//! | [`seq_spaces`] | the `A_p`, `A*`, `h_p`, `b_p` sequence norms and their duality identities |
//! | [`lebesgue`] | Lebesgue constants of 1-D and 2-D means, class deviations, asymptotic fits |
//! | [`smoothness`] | moduli of smoothness, linearized moduli, K-functional realizations |
//! | [`posdef`] | positive definiteness tests, B-/A-/e-splines, shift approximation |
//! | [`walsh`] | Walsh–Paley system, dyadic group, Cesàro and Bernstein–Rogosinski means |
//! | [`ft`] | exponential-sum discretization, indicator transforms of planar bodies, Bessel zeros |
//!
//! Everything is deterministic: randomized searches take explicit seeds.

pub mod corpus;
pub mod error;
pub mod ft;
pub mod lebesgue;
pub mod numeric;
pub mod posdef;
pub mod seq_spaces;
pub mod smoothness;
pub mod trig;
pub mod walsh;

pub use error::{Error, Result};
pub use num_complex::Complex64;
