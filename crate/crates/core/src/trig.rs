//! Sampled periodic functions, finitely supported Fourier coefficients,
//! summability methods and their kernels.
//!
//! Grids are uniform on `[-π, π)` with `x_j = -π + 2πj/M`, `M` a power of two.
//! Because of the shifted origin, `c_k = (-1)^k DFT(f)[k] / M`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{invalid, Error, Result};

/// Samples of a 2π-periodic function on the uniform grid of size `M`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    values: Vec<Complex64>,
}

impl SampledFunction {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        let m = values.len();
        if m < 4 || !m.is_power_of_two() {
            return invalid(format!(
                "grid size {m} must be a power of two and at least 4"
            ));
        }
        if values
            .iter()
            .any(|v| !v.re.is_finite() || !v.im.is_finite())
        {
            return invalid("samples must be finite");
        }
        Ok(Self { values })
    }

    pub fn from_real(values: Vec<f64>) -> Result<Self> {
        Self::new(values.into_iter().map(|v| Complex64::new(v, 0.0)).collect())
    }

    /// Samples a real function on the grid of size `m`.
    pub fn from_fn<F: Fn(f64) -> f64>(m: usize, f: F) -> Result<Self> {
        Self::from_real((0..m).map(|j| f(grid_point(j, m))).collect())
    }

    pub fn from_complex_fn<F: Fn(f64) -> Complex64>(m: usize, f: F) -> Result<Self> {
        Self::new((0..m).map(|j| f(grid_point(j, m))).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn real_values(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.re).collect()
    }

    pub fn point(&self, j: usize) -> f64 {
        grid_point(j, self.len())
    }

    /// `f(x_{j+s})` with cyclic wrap, i.e. a shift by `2πs/M`.
    pub fn shifted(&self, s: usize) -> Complex64 {
        self.values[s % self.len()]
    }

    pub fn sub(&self, other: &SampledFunction) -> Result<SampledFunction> {
        if self.len() != other.len() {
            return invalid("grid sizes differ");
        }
        Ok(SampledFunction {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.norm()))
    }
}

pub fn grid_point(j: usize, m: usize) -> f64 {
    -PI + 2.0 * PI * j as f64 / m as f64
}

/// Coefficients `c_k`, `|k| ≤ N`, stored from `-N` to `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigCoefficients {
    degree: usize,
    coeffs: Vec<Complex64>,
    real_valued: bool,
}

impl TrigCoefficients {
    pub fn zeros(degree: usize) -> Self {
        Self {
            degree,
            coeffs: vec![Complex64::new(0.0, 0.0); 2 * degree + 1],
            real_valued: true,
        }
    }

    /// Builds from `c_{-N}, …, c_N`. `real_valued` is set when the Hermitian
    /// symmetry `c_{-k} = conj(c_k)` holds to `1e-12` relative accuracy.
    pub fn from_vec(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() % 2 == 0 {
            return invalid("coefficient vector must have odd length 2N+1");
        }
        let degree = coeffs.len() / 2;
        let mut out = Self {
            degree,
            coeffs,
            real_valued: false,
        };
        out.real_valued = out.hermitian_defect() <= 1e-12 * out.max_abs().max(1e-300);
        Ok(out)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_real_valued(&self) -> bool {
        self.real_valued
    }

    pub fn get(&self, k: i64) -> Complex64 {
        if k.unsigned_abs() as usize > self.degree {
            return Complex64::new(0.0, 0.0);
        }
        self.coeffs[(k + self.degree as i64) as usize]
    }

    pub fn set(&mut self, k: i64, value: Complex64) {
        assert!(
            k.unsigned_abs() as usize <= self.degree,
            "index {k} beyond degree"
        );
        self.coeffs[(k + self.degree as i64) as usize] = value;
        self.real_valued = self.hermitian_defect() <= 1e-12 * self.max_abs().max(1e-300);
    }

    /// `(k, c_k)` pairs from `-N` to `N`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let n = self.degree as i64;
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, &c)| (i as i64 - n, c))
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.coeffs
    }

    fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.norm()))
    }

    fn hermitian_defect(&self) -> f64 {
        let n = self.degree as i64;
        (0..=n)
            .map(|k| (self.get(-k) - self.get(k).conj()).norm())
            .fold(0.0, f64::max)
    }

    /// Value of `Σ c_k e^{ikx}` at a single point.
    pub fn evaluate(&self, x: f64) -> Complex64 {
        self.iter()
            .map(|(k, c)| c * Complex64::from_polar(1.0, k as f64 * x))
            .sum()
    }

    /// Coefficients of the `r`-th derivative: `c_k (ik)^r`.
    pub fn derivative(&self, r: u32) -> TrigCoefficients {
        let factor = Complex64::new(0.0, 1.0).powu(r);
        let coeffs = self
            .iter()
            .map(|(k, c)| c * factor * (k as f64).powi(r as i32))
            .collect();
        TrigCoefficients {
            degree: self.degree,
            coeffs,
            real_valued: self.real_valued,
        }
    }

    /// Coefficient-wise product with `λ(k)`.
    pub fn map_multiplier<F: Fn(i64) -> f64>(&self, lambda: F) -> TrigCoefficients {
        let coeffs = self.iter().map(|(k, c)| c * lambda(k)).collect();
        TrigCoefficients {
            degree: self.degree,
            coeffs,
            real_valued: self.real_valued,
        }
    }

    pub fn truncate(&self, degree: usize) -> TrigCoefficients {
        let d = degree.min(self.degree);
        let coeffs = (-(d as i64)..=d as i64).map(|k| self.get(k)).collect();
        TrigCoefficients {
            degree: d,
            coeffs,
            real_valued: self.real_valued,
        }
    }

    /// Samples the polynomial on the grid of size `m`; needs `2N+1 ≤ m`.
    pub fn synthesize(&self, m: usize) -> Result<SampledFunction> {
        if 2 * self.degree + 1 > m {
            return invalid(format!("degree {} does not fit a grid of {m}", self.degree));
        }
        synthesize_folded(self.iter(), m)
    }
}

/// Grid samples of `Σ c_k e^{ikx}` where indices are folded modulo `m`; this
/// is exact point evaluation even when the support exceeds the grid.
fn synthesize_folded<I: Iterator<Item = (i64, Complex64)>>(
    terms: I,
    m: usize,
) -> Result<SampledFunction> {
    if m < 4 || !m.is_power_of_two() {
        return invalid(format!(
            "grid size {m} must be a power of two and at least 4"
        ));
    }
    let mut buf = vec![Complex64::new(0.0, 0.0); m];
    for (k, c) in terms {
        let sign = if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        buf[k.rem_euclid(m as i64) as usize] += c * sign;
    }
    FftPlanner::new().plan_fft_inverse(m).process(&mut buf);
    SampledFunction::new(buf)
}

/// `c_k = (1/M) Σ_j f(x_j) e^{-ikx_j}` for `|k| ≤ N`; needs `2N+1 ≤ M`.
pub fn compute_coefficients(f: &SampledFunction, degree: usize) -> Result<TrigCoefficients> {
    let m = f.len();
    if 2 * degree + 1 > m {
        return invalid(format!("degree {degree} too large for a grid of {m}"));
    }
    let mut buf = f.values().to_vec();
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);
    let scale = 1.0 / m as f64;
    let coeffs = (-(degree as i64)..=degree as i64)
        .map(|k| {
            let sign = if k.rem_euclid(2) == 0 { scale } else { -scale };
            buf[k.rem_euclid(m as i64) as usize] * sign
        })
        .collect();
    TrigCoefficients::from_vec(coeffs)
}

/// Selects the discrete `L_p` norm (`p = ∞` for the maximum).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridNorm {
    p: f64,
}

impl GridNorm {
    pub fn new(p: f64) -> Result<Self> {
        if !(p > 0.0) {
            return invalid(format!("norm exponent {p} must be positive"));
        }
        Ok(Self { p })
    }

    pub fn sup() -> Self {
        Self { p: f64::INFINITY }
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

/// `((2π/M) Σ |f_j|^p)^{1/p}`, or `max |f_j|` for `p = ∞`.
pub fn grid_norm(f: &SampledFunction, norm: GridNorm) -> f64 {
    grid_norm_slice(f.values().iter().map(|v| v.norm()), f.len(), norm.p)
}

pub(crate) fn grid_norm_slice<I: Iterator<Item = f64>>(abs: I, m: usize, p: f64) -> f64 {
    if p.is_infinite() {
        return abs.fold(0.0, f64::max);
    }
    let h = 2.0 * PI / m as f64;
    (h * abs.map(|a| a.powf(p)).sum::<f64>()).powf(1.0 / p)
}

/// How the multipliers `λ_{n,k}` are produced.
#[derive(Clone)]
pub enum Rule {
    /// Explicit triangular matrix, zero for `|k| > n`.
    Matrix(Arc<dyn Fn(usize, u64) -> f64 + Send + Sync>),
    /// `λ_{n,k} = φ(k/n)`, with `φ` vanishing beyond `support`.
    Generator {
        phi: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
        support: f64,
    },
    /// `λ_{n,k} = r(n)^{|k|}`: Abel–Poisson means, whose kernel has infinite
    /// support. Terms with `r^{|k|} < GEOMETRIC_CUTOFF` are dropped.
    Geometric(Arc<dyn Fn(usize) -> f64 + Send + Sync>),
}

pub const GEOMETRIC_CUTOFF: f64 = 1e-17;

/// A named multiplier rule.
#[derive(Clone)]
pub struct SummabilityMethod {
    name: String,
    rule: Rule,
}

impl fmt::Debug for SummabilityMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.rule {
            Rule::Matrix(_) => "Matrix",
            Rule::Generator { .. } => "Generator",
            Rule::Geometric(_) => "Geometric",
        };
        write!(f, "SummabilityMethod({}, {kind})", self.name)
    }
}

impl SummabilityMethod {
    pub fn new(name: impl Into<String>, rule: Rule) -> Self {
        Self {
            name: name.into(),
            rule,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rule(&self) -> &Rule {
        &self.rule
    }

    /// `λ_{n,k}`.
    pub fn lambda(&self, n: usize, k: i64) -> f64 {
        let a = k.unsigned_abs();
        match &self.rule {
            Rule::Matrix(m) => {
                if a as usize > n {
                    0.0
                } else {
                    m(n, a)
                }
            }
            Rule::Generator { phi, support } => {
                if n == 0 {
                    return if a == 0 { phi(0.0) } else { 0.0 };
                }
                let x = a as f64 / n as f64;
                if x > *support {
                    0.0
                } else {
                    phi(x)
                }
            }
            Rule::Geometric(r) => {
                let v = r(n).powf(a as f64);
                if v < GEOMETRIC_CUTOFF {
                    0.0
                } else {
                    v
                }
            }
        }
    }

    /// Largest `|k|` with a possibly nonzero `λ_{n,k}`.
    pub fn degree(&self, n: usize) -> usize {
        match &self.rule {
            Rule::Matrix(_) => n,
            Rule::Generator { support, .. } => {
                let d = (support * n as f64).floor() as usize;
                // drop trailing exact zeros such as the de la Vallée Poussin endpoint
                let mut d = d;
                while d > 0 && self.lambda(n, d as i64) == 0.0 {
                    d -= 1;
                }
                d
            }
            Rule::Geometric(r) => {
                let r = r(n);
                if r <= 0.0 {
                    0
                } else if r >= 1.0 {
                    usize::MAX
                } else {
                    (GEOMETRIC_CUTOFF.ln() / r.ln()).floor() as usize
                }
            }
        }
    }

    /// Multipliers `λ_{n,k}` for `|k| ≤ degree(n)`, from `-d` to `d`.
    pub fn multipliers(&self, n: usize) -> Vec<f64> {
        let d = self.degree(n) as i64;
        (-d..=d).map(|k| self.lambda(n, k)).collect()
    }

    /// `φ(0)` or `λ_{n,0}` limit; 1 for regular methods.
    pub fn is_regular(&self) -> bool {
        (self.lambda(64, 0) - 1.0).abs() < 1e-12
    }
}

pub fn dirichlet() -> SummabilityMethod {
    SummabilityMethod::new("dirichlet", Rule::Matrix(Arc::new(|_, _| 1.0)))
}

pub fn fejer() -> SummabilityMethod {
    SummabilityMethod::new(
        "fejer",
        Rule::Matrix(Arc::new(|n, k| 1.0 - k as f64 / (n as f64 + 1.0))),
    )
}

/// `(C, α)`: `λ_{n,k} = A^α_{n-|k|} / A^α_n`.
pub fn cesaro(alpha: f64) -> Result<SummabilityMethod> {
    if !(alpha > -1.0) {
        return invalid(format!("Cesàro order {alpha} must exceed -1"));
    }
    let lg = |x: f64| libm::lgamma(x);
    Ok(SummabilityMethod::new(
        format!("cesaro({alpha})"),
        Rule::Matrix(Arc::new(move |n, k| {
            let m = (n as u64 - k) as f64;
            let n = n as f64;
            (lg(m + alpha + 1.0) - lg(m + 1.0) - lg(n + alpha + 1.0) + lg(n + 1.0)).exp()
        })),
    ))
}

/// Abel–Poisson means with a fixed radius, `λ_k = r^{|k|}` for every `n`.
pub fn abel_poisson(r: f64) -> Result<SummabilityMethod> {
    if !(0.0..1.0).contains(&r) {
        return invalid(format!("Abel–Poisson radius {r} must lie in [0, 1)"));
    }
    Ok(SummabilityMethod::new(
        format!("abel({r})"),
        Rule::Geometric(Arc::new(move |_| r)),
    ))
}

/// Abel–Poisson means indexed by `n` through `r_n = 1 - 1/(n + 1/2)`, so that
/// `[1/(1 - r_n)] = n`.
pub fn abel_poisson_indexed() -> SummabilityMethod {
    SummabilityMethod::new(
        "abel",
        Rule::Geometric(Arc::new(|n| 1.0 - 1.0 / (n as f64 + 0.5))),
    )
}

/// Riesz means `φ(x) = (1 - |x|^α)_+^δ`.
pub fn riesz(alpha: f64, delta: f64) -> Result<SummabilityMethod> {
    if !(alpha > 0.0) || !(delta >= 0.0) {
        return invalid(format!(
            "Riesz parameters ({alpha}, {delta}) need α > 0, δ ≥ 0"
        ));
    }
    Ok(SummabilityMethod::new(
        format!("riesz({alpha},{delta})"),
        Rule::Generator {
            phi: Arc::new(move |x: f64| {
                let b = 1.0 - x.abs().powf(alpha);
                if b <= 0.0 {
                    if delta == 0.0 && b == 0.0 {
                        1.0
                    } else {
                        0.0
                    }
                } else {
                    b.powf(delta)
                }
            }),
            support: 1.0,
        },
    ))
}

/// Bochner–Riesz means, `(1 - k²/n²)_+^δ`.
pub fn bochner_riesz(delta: f64) -> Result<SummabilityMethod> {
    let mut m = riesz(2.0, delta)?;
    m.name = format!("bochner-riesz({delta})");
    Ok(m)
}

/// `½(S_n(x + π/2n) + S_n(x - π/2n))`, i.e. `λ_{n,k} = cos(kπ/2n)`.
pub fn rogosinski() -> SummabilityMethod {
    SummabilityMethod::new(
        "rogosinski",
        Rule::Matrix(Arc::new(|n, k| {
            if n == 0 {
                1.0
            } else {
                (k as f64 * PI / (2.0 * n as f64)).cos()
            }
        })),
    )
}

/// `½(S_n(x + π/(2n+1)) + S_n(x - π/(2n+1)))`, i.e. `λ_{n,k} = cos(kπ/(2n+1))`.
pub fn bernstein() -> SummabilityMethod {
    SummabilityMethod::new(
        "bernstein",
        Rule::Matrix(Arc::new(|n, k| {
            (k as f64 * PI / (2.0 * n as f64 + 1.0)).cos()
        })),
    )
}

/// de la Vallée Poussin means: `1` for `|k| ≤ n`, then linear decay to zero at `2n`.
pub fn vallee_poussin() -> SummabilityMethod {
    SummabilityMethod::new(
        "vallee-poussin",
        Rule::Generator {
            phi: Arc::new(|x: f64| {
                let a = x.abs();
                if a <= 1.0 {
                    1.0
                } else {
                    (2.0 - a).max(0.0)
                }
            }),
            support: 2.0,
        },
    )
}

/// The named methods with default parameters.
pub fn method_catalog() -> Vec<SummabilityMethod> {
    vec![
        dirichlet(),
        fejer(),
        cesaro(0.5).expect("valid order"),
        cesaro(2.0).expect("valid order"),
        abel_poisson_indexed(),
        abel_poisson(0.5).expect("valid radius"),
        riesz(2.0, 1.0).expect("valid parameters"),
        bochner_riesz(1.0).expect("valid parameters"),
        rogosinski(),
        bernstein(),
        vallee_poussin(),
    ]
}

/// Looks a method up by name: `dirichlet`, `fejer`, `cesaro(α)`, `abel`,
/// `abel(r)`, `riesz(α,δ)`, `bochner-riesz(δ)`, `rogosinski`, `bernstein`,
/// `vallee-poussin`.
pub fn method_by_name(name: &str) -> Result<SummabilityMethod> {
    let s: String = name
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect::<String>()
        .to_lowercase();
    let (head, args) = match s.find('(') {
        Some(i) => {
            if !s.ends_with(')') {
                return Err(Error::NotFound(format!("malformed method name {name:?}")));
            }
            let inner = &s[i + 1..s.len() - 1];
            let parsed: std::result::Result<Vec<f64>, _> =
                inner.split(',').map(|a| a.parse::<f64>()).collect();
            match parsed {
                Ok(v) => (&s[..i], v),
                Err(_) => return Err(Error::NotFound(format!("malformed arguments in {name:?}"))),
            }
        }
        None => (s.as_str(), Vec::new()),
    };
    let wrong = || Error::NotFound(format!("no method matches {name:?}"));
    match (head, args.as_slice()) {
        ("dirichlet", []) => Ok(dirichlet()),
        ("fejer", []) => Ok(fejer()),
        ("cesaro", [a]) => cesaro(*a),
        ("abel" | "abel-poisson", []) => Ok(abel_poisson_indexed()),
        ("abel" | "abel-poisson", [r]) => abel_poisson(*r),
        ("riesz", [a, d]) => riesz(*a, *d),
        ("bochner-riesz", [d]) => bochner_riesz(*d),
        ("rogosinski", []) => Ok(rogosinski()),
        ("bernstein", []) => Ok(bernstein()),
        ("vallee-poussin" | "dlvp", []) => Ok(vallee_poussin()),
        _ => Err(wrong()),
    }
}

/// `K_n(t) = Σ λ_{n,k} e^{ikt}` sampled on the grid of size `m ≥ 2(n+1)`.
pub fn kernel(method: &SummabilityMethod, n: usize, m: usize) -> Result<SampledFunction> {
    if m < 2 * (n + 1) {
        return invalid(format!("grid of {m} too coarse for n = {n}"));
    }
    let d = method.degree(n) as i64;
    synthesize_folded(
        (-d..=d).map(|k| (k, Complex64::new(method.lambda(n, k), 0.0))),
        m,
    )
}

/// Kernel value at a single point, summed in closed cosine form.
pub fn kernel_at(method: &SummabilityMethod, n: usize, t: f64) -> f64 {
    let d = method.degree(n);
    let mut s = method.lambda(n, 0);
    for k in 1..=d {
        s += 2.0 * method.lambda(n, k as i64) * (k as f64 * t).cos();
    }
    s
}

/// `Σ λ_{n,k} c_k e_k`, of degree `min(N, degree(n))`.
pub fn apply_means(method: &SummabilityMethod, n: usize, c: &TrigCoefficients) -> TrigCoefficients {
    let d = c.degree().min(method.degree(n));
    c.truncate(d).map_multiplier(|k| method.lambda(n, k))
}

/// Observed `max ‖f - A_n f‖_∞ / ‖f - B_n f‖_∞` and its minimum over a set of
/// functions and `1 ≤ n ≤ nmax`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonBand {
    pub max: f64,
    pub min: f64,
    /// `(function index, n, ratio)`.
    pub samples: Vec<(usize, usize, f64)>,
}

/// Ratio `0/0` counts as 1 and `x/0` with `x > 0` as `+∞`; a deviation is
/// treated as zero below `1e-12` times the sup norm of the function.
pub fn comparison_band(
    a: &SummabilityMethod,
    b: &SummabilityMethod,
    fset: &[SampledFunction],
    nmax: usize,
) -> Result<ComparisonBand> {
    if !a.is_regular() || !b.is_regular() {
        return invalid("comparison needs regular methods (λ_0 = 1)");
    }
    let mut samples = Vec::new();
    for (i, f) in fset.iter().enumerate() {
        let m = f.len();
        let c = compute_coefficients(f, m / 2 - 1)?;
        let zero = 1e-12 * f.sup_norm().max(1e-300);
        for n in 1..=nmax {
            let da = deviation(a, n, &c, m)?;
            let db = deviation(b, n, &c, m)?;
            let ratio = match (da <= zero, db <= zero) {
                (true, true) => 1.0,
                (false, true) => f64::INFINITY,
                (true, false) => 0.0,
                (false, false) => da / db,
            };
            samples.push((i, n, ratio));
        }
    }
    let max = samples.iter().fold(f64::NEG_INFINITY, |m, s| m.max(s.2));
    let min = samples.iter().fold(f64::INFINITY, |m, s| m.min(s.2));
    Ok(ComparisonBand { max, min, samples })
}

/// `max` of [`comparison_band`].
pub fn comparison_ratio(
    a: &SummabilityMethod,
    b: &SummabilityMethod,
    fset: &[SampledFunction],
    nmax: usize,
) -> Result<f64> {
    Ok(comparison_band(a, b, fset, nmax)?.max)
}

/// `‖f - Λ_n f‖_∞` on the grid, from the coefficients of `f`.
pub fn deviation(
    method: &SummabilityMethod,
    n: usize,
    c: &TrigCoefficients,
    m: usize,
) -> Result<f64> {
    let diff = c.map_multiplier(|k| 1.0 - method.lambda(n, k));
    Ok(diff.synthesize(m)?.sup_norm())
}
