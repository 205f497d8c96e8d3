//! The experiment registry and the runners behind each id.

use std::f64::consts::PI;

use rayon::prelude::*;
use xlab_core::corpus::{self, bands};
use xlab_core::ft::{self, ConvexBody2D, DecayingFunction};
use xlab_core::lebesgue;
use xlab_core::numeric::fit::fit;
use xlab_core::numeric::FitModel;
use xlab_core::posdef::{self, RadialProfile};
use xlab_core::seq_spaces;
use xlab_core::smoothness::{self, ModulusSpec};
use xlab_core::trig::{self, GridNorm};
use xlab_core::walsh;
use xlab_core::{Complex64, Error};

use crate::config::{Format, Params};
use crate::table::{Cell, Table};
use crate::CliError;

pub type Runner = fn(&Params, u64) -> Result<Table, CliError>;

pub struct Experiment {
    pub id: &'static str,
    pub description: &'static str,
    /// What the experiment exercises.
    pub topics: &'static str,
    pub defaults: &'static [(&'static str, &'static str)],
    pub format: Format,
    pub run: Runner,
}

pub fn registry() -> Vec<Experiment> {
    vec![
        Experiment {
            id: "lebesgue-table",
            description: "Lebesgue constants of a summability method for n in [nmin, nmax]",
            topics: "Lebesgue constants; Fejér, de la Vallée Poussin, Riesz and Dirichlet kernels",
            defaults: &[("method", "dirichlet"), ("nmin", "1"), ("nmax", "64"), ("tol", "1e-10")],
            format: Format::Csv,
            run: lebesgue_table,
        },
        Experiment {
            id: "kolmogorov-fit",
            description: "Deviation of Fourier sums on the class W^r and its (c ln n + d)/n^r fit",
            topics: "Kolmogorov asymptotics of the class deviation",
            defaults: &[("r", "1"), ("nmin", "64"), ("nmax", "1024"), ("tol", "1e-10")],
            format: Format::Csv,
            run: kolmogorov_fit,
        },
        Experiment {
            id: "hyperbolic-fit",
            description: "Lebesgue constants of hyperbolic-cross partial sums and their power-law exponent on a geometric n-grid",
            topics: "hyperbolic cross means, growth exponent 1/(2+2α)",
            defaults: &[("alpha", "1"), ("nmin", "1024"), ("nmax", "4096"), ("points", "5")],
            format: Format::Csv,
            run: hyperbolic_fit,
        },
        Experiment {
            id: "duality-fuzz",
            description: "Exhaustive check of the A*_1 and Cesàro-ball duality identities on short sequences",
            topics: "sequence-space duality, A*_p and h_p/b_p norms",
            defaults: &[("maxlen", "6"), ("values", "-2,-1,0,1,2"), ("tol", "1e-9")],
            format: Format::Csv,
            run: duality_fuzz,
        },
        Experiment {
            id: "moduli",
            description: "Moduli of smoothness, linearized moduli and the doubling inequality on the corpus",
            topics: "moduli of smoothness, linearized modulus, doubling",
            defaults: &[("r", "1"), ("m", "4096"), ("nmin", "4"), ("nmax", "256"), ("norm", "sup")],
            format: Format::Csv,
            run: moduli,
        },
        Experiment {
            id: "two-sided-report",
            description: "Approximation error of a realization method against the modulus of smoothness",
            topics: "Jackson-type two-sided estimates, Riesz realization",
            defaults: &[
                ("method", "riesz"),
                ("r", "2"),
                ("m", "8192"),
                ("nmin", "16"),
                ("nmax", "256"),
                ("norm", "sup"),
                ("subset", "all"),
            ],
            format: Format::Csv,
            run: two_sided_report,
        },
        Experiment {
            id: "posdef-report",
            description: "Positive definiteness claims for Gaussian, Polya-type and A-spline profiles with evidence classes",
            topics: "positive definite functions, Polya criterion, A-splines, Gram witnesses",
            defaults: &[("sets", "1000"), ("witness_trials", "2000"), ("rmax", "200"), ("step", "0.01")],
            format: Format::Json,
            run: posdef_report,
        },
        Experiment {
            id: "aspline",
            description: "Coefficients of the A-spline of order n and the minimum of its transform",
            topics: "A-splines, compactly supported positive definite splines",
            defaults: &[("n", "2"), ("rmax", "200"), ("step", "0.01")],
            format: Format::Csv,
            run: aspline,
        },
        Experiment {
            id: "schoenberg",
            description: "Randomized search for a negative Gram eigenvalue of exp(-||x||_p^alpha) on l_p^m",
            topics: "Schoenberg problem in l_p^m",
            defaults: &[("m", "2"), ("p", "3"), ("alpha", "1"), ("trials", "10000")],
            format: Format::Csv,
            run: schoenberg,
        },
        Experiment {
            id: "walsh-regularity",
            description: "Lebesgue constants of Bernstein-Rogosinski-type Walsh means and octave growth",
            topics: "Walsh–Paley means, regularity discrimination",
            defaults: &[("alpha", "0.5"), ("beta", "0.5"), ("nu", "1"), ("nmax", "1024")],
            format: Format::Csv,
            run: walsh_regularity,
        },
        Experiment {
            id: "walsh-moduli",
            description: "Dyadic moduli of continuity of the dyadic corpus",
            topics: "dyadic moduli of continuity",
            defaults: &[("bits", "10")],
            format: Format::Csv,
            run: walsh_moduli,
        },
        Experiment {
            id: "euler-maclaurin-check",
            description: "Exponential sums against integral plus corrections, with the normalized remainder theta",
            topics: "Euler–Maclaurin formula for exponential sums, |θ| ≤ 3",
            defaults: &[
                ("rates", "0.2,1,2"),
                ("powers", "1.5,2.5,4"),
                ("xs", "1.5707963267948966,-1.5707963267948966,1,-1,3,-3"),
                ("rmax", "2"),
            ],
            format: Format::Csv,
            run: euler_maclaurin_check,
        },
        Experiment {
            id: "indicator-zeros",
            description: "Zero curves of the Fourier transform of a centrally symmetric planar body",
            topics: "zeros of indicator transforms, width bracket 2pπ < d(φ) r_p(φ) < 2(p+1)π",
            defaults: &[("body", "disc"), ("p", "1"), ("points", "64"), ("radius", "1"), ("a", "2"), ("b", "1")],
            format: Format::Csv,
            run: indicator_zeros,
        },
        Experiment {
            id: "comparison-ratio",
            description: "Ratios of approximation errors of two summability methods over the corpus",
            topics: "equivalence of summability methods, Fejér and Abel–Poisson",
            defaults: &[("a", "fejer"), ("b", "abel"), ("m", "2048"), ("nmax", "256")],
            format: Format::Csv,
            run: comparison_ratio,
        },
    ]
}

/// Invalid arguments are usage errors; everything else is numerical.
fn core(e: Error) -> CliError {
    match e {
        Error::InvalidArgument(m) => CliError::Usage(m),
        Error::NotFound(m) => CliError::Usage(m),
        other => CliError::Numeric(other),
    }
}

fn powers_of_two(lo: usize, hi: usize) -> Result<Vec<usize>, CliError> {
    if lo == 0 || lo > hi {
        return Err(CliError::Usage(format!("need 1 ≤ nmin ≤ nmax, got {lo}, {hi}")));
    }
    Ok(std::iter::successors(Some(lo), |n| Some(n * 2)).take_while(|&n| n <= hi).collect())
}

fn norm_of(p: &Params) -> Result<GridNorm, CliError> {
    match p.str("norm").as_str() {
        "sup" | "inf" => Ok(GridNorm::sup()),
        _ => GridNorm::new(p.f64("norm")?).map_err(core),
    }
}

fn band_summary(t: &mut Table, ratios: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = ratios.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), r| (a.min(r), b.max(r)));
    t.note("ratio_min", lo);
    t.note("ratio_max", hi);
    (lo, hi)
}

fn lebesgue_table(p: &Params, _seed: u64) -> Result<Table, CliError> {
    let name = p.str("method");
    let method = trig::method_by_name(&name).map_err(core)?;
    let (nmin, nmax, tol) = (p.usize("nmin")?, p.usize("nmax")?, p.f64("tol")?);
    if nmin == 0 || nmin > nmax {
        return Err(CliError::Usage(format!("need 1 ≤ nmin ≤ nmax, got {nmin}, {nmax}")));
    }
    let results: Vec<_> = (nmin..=nmax).into_par_iter().map(|n| (n, lebesgue::lebesgue_constant(&method, n, tol))).collect();
    let mut t = Table::new(&["method", "n", "value", "quad_error"]);
    for (n, r) in results {
        match r {
            Ok(s) => t.push(vec![name.clone().into(), n.into(), s.value.into(), s.quad_error.into()]),
            Err(Error::InvalidArgument(m)) => return Err(CliError::Usage(m)),
            Err(e) => {
                t.fail(format!("n = {n}: {e}"));
                t.push(vec![name.clone().into(), n.into(), Cell::Empty, Cell::Empty]);
            }
        }
    }
    Ok(t)
}

fn kolmogorov_fit(p: &Params, _seed: u64) -> Result<Table, CliError> {
    let r = p.usize("r")? as u32;
    let tol = p.f64("tol")?;
    let ns = powers_of_two(p.usize("nmin")?, p.usize("nmax")?)?;
    let values = ns
        .par_iter()
        .map(|&n| lebesgue::kolmogorov_deviation(r, n, tol))
        .collect::<Result<Vec<f64>, Error>>()
        .map_err(core)?;
    let label = format!("kolmogorov(r={r})");
    let mut t = Table::new(&["method", "n", "value", "quad_error"]);
    for (n, v) in ns.iter().zip(&values) {
        t.push(vec![label.clone().into(), (*n).into(), (*v).into(), tol.into()]);
    }
    let nsf: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    let f = fit(FitModel::LogPowerTail { r: r as f64 }, &nsf, &values).map_err(core)?;
    t.note("leading_coefficient", f.params[0]);
    t.note("constant_term", f.params[1]);
    t.note("residual", f.residual);
    t.note("target_coefficient", 4.0 / (PI * PI));
    t.note("monotone_decreasing", values.windows(2).all(|w| w[1] < w[0]));
    Ok(t)
}

fn hyperbolic_fit(p: &Params, _seed: u64) -> Result<Table, CliError> {
    let alpha = p.f64("alpha")?;
    let (nmin, nmax, points) = (p.usize("nmin")?, p.usize("nmax")?, p.usize("points")?);
    if nmin == 0 || nmin >= nmax || points < 2 {
        return Err(CliError::Usage("need 1 ≤ nmin < nmax and at least two grid points".into()));
    }
    let ns = xlab_core::numeric::geometric_grid(nmin, nmax, points);
    let f = lebesgue::hyperbolic_exponent(alpha, &ns).map_err(core)?;
    let label = format!("hyperbolic(alpha={alpha})");
    let mut t = Table::new(&["method", "n", "value", "quad_error"]);
    for (n, v) in f.ns.iter().zip(&f.values) {
        t.push(vec![label.clone().into(), (*n as usize).into(), (*v).into(), Cell::Empty]);
    }
    t.note("exponent", f.params[1]);
    t.note("target_exponent", 1.0 / (2.0 + 2.0 * alpha));
    t.note("residual", f.residual);
    Ok(t)
}

fn duality_fuzz(p: &Params, seed: u64) -> Result<Table, CliError> {
    let maxlen = p.usize("maxlen")?;
    let values = p.f64_list("values")?;
    let tol = p.f64("tol")?;
    if maxlen == 0 || maxlen > 8 {
        return Err(CliError::Usage(format!("maxlen {maxlen} outside 1..=8")));
    }
    let mut t = Table::new(&["len", "count", "max_gap_astar", "max_gap_cesaro", "pass"]);
    for len in 1..=maxlen {
        let seqs = seq_spaces::exhaustive_sequences(&values, len);
        let gaps: Vec<(f64, f64)> = seqs
            .par_iter()
            .map(|s| {
                let a = seq_spaces::duality_identity_astar(s, seed);
                let c = seq_spaces::duality_identity_cesaro(s, seed);
                ((a.lhs - a.rhs).abs() / a.rhs.abs().max(1.0), (c.lhs - c.rhs).abs() / c.rhs.abs().max(1.0))
            })
            .collect();
        let ga = gaps.iter().map(|g| g.0).fold(0.0, f64::max);
        let gc = gaps.iter().map(|g| g.1).fold(0.0, f64::max);
        let pass = ga <= tol && gc <= tol;
        if !pass {
            t.fail(format!("length {len}: identity gap {ga:e} / {gc:e} above {tol:e}"));
        }
        t.push(vec![len.into(), seqs.len().into(), ga.into(), gc.into(), pass.into()]);
    }
    Ok(t)
}

fn moduli(p: &Params, _seed: u64) -> Result<Table, CliError> {
    let r = p.usize("r")?;
    let m = p.usize("m")?;
    let norm = norm_of(p)?;
    let ns = powers_of_two(p.usize("nmin")?, p.usize("nmax")?)?;
    let fs = corpus::sample_periodic(m).map_err(core)?;
    let jobs: Vec<(usize, usize)> = (0..fs.len()).flat_map(|i| ns.iter().map(move |&n| (i, n))).collect();
    let rows = jobs
        .par_iter()
        .map(|&(i, n)| {
            let h = PI / n as f64;
            let f = &fs[i].1;
            let w = smoothness::modulus(f, &ModulusSpec::new(r, norm, h)?)?;
            let lin = smoothness::linearized_modulus(f, &ModulusSpec::new(r, norm, h)?)?;
            let w2 = smoothness::modulus(f, &ModulusSpec::new(r, norm, 2.0 * h)?)?;
            Ok((i, n, h, w, lin, w2))
        })
        .collect::<Result<Vec<_>, Error>>()
        .map_err(core)?;
    let mut t = Table::new(&["f_id", "r", "n", "h", "modulus", "linearized", "modulus_2h", "ok"]);
    let pow = 2f64.powi(r as i32);
    for (i, n, h, w, lin, w2) in rows {
        let ok = lin <= w && w2 <= pow * w * (1.0 + 1e-12);
        if !ok {
            t.fail(format!("{} n = {n}: linearized {lin:e}, ω(h) {w:e}, ω(2h) {w2:e}", fs[i].0));
        }
        t.push(vec![fs[i].0.into(), r.into(), n.into(), h.into(), w.into(), lin.into(), w2.into(), ok.into()]);
    }
    Ok(t)
}

fn two_sided_report(p: &Params, _seed: u64) -> Result<Table, CliError> {
    let r = p.usize("r")?;
    let m = p.usize("m")?;
    let norm = norm_of(p)?;
    let ns = powers_of_two(p.usize("nmin")?, p.usize("nmax")?)?;
    let method_name = p.str("method");
    let jackson = match method_name.as_str() {
        "jackson" => true,
        "riesz" => false,
        other => return Err(CliError::Usage(format!("method {other:?}: expected riesz or jackson"))),
    };
    let subset = p.str("subset");
    let fs: Vec<_> = corpus::sample_periodic(m)
        .map_err(core)?
        .into_iter()
        .filter(|(id, _)| match subset.as_str() {
            "nonsmooth" => corpus::NONSMOOTH_IDS.contains(id),
            _ => true,
        })
        .collect();
    if !(subset == "all" || subset == "nonsmooth") {
        return Err(CliError::Usage(format!("subset {subset:?}: expected all or nonsmooth")));
    }
    let riesz = trig::riesz(2.0, 1.0).map_err(core)?;
    let jobs: Vec<(usize, usize)> = (0..fs.len()).flat_map(|i| ns.iter().map(move |&n| (i, n))).collect();
    let rows = jobs
        .par_iter()
        .map(|&(i, n)| {
            let f = &fs[i].1;
            if jackson {
                smoothness::jackson_two_sided(f, r, n)
            } else {
                smoothness::two_sided(f, &riesz, n, r, PI / n as f64, norm)
            }
            .map(|s| (i, n, s))
        })
        .collect::<Result<Vec<_>, Error>>()
        .map_err(core)?;
    let mut t = Table::new(&["f_id", "r", "n", "approx_error", "modulus", "ratio"]);
    for (i, n, s) in &rows {
        t.push(vec![fs[*i].0.into(), r.into(), (*n).into(), s.approx_error.into(), s.modulus_value.into(), s.ratio.into()]);
    }
    let (lo, hi) = band_summary(&mut t, rows.iter().filter(|x| x.2.modulus_value > 0.0).map(|x| x.2.ratio));
    let band = if jackson { bands::JACKSON } else { bands::RIESZ };
    t.note("recorded_band_lo", band.0);
    t.note("recorded_band_hi", band.1);
    t.note("within_recorded_band", lo >= band.0 && hi <= band.1);
    Ok(t)
}

fn evidence_row(t: &mut Table, claim: &str, subject: &str, m: usize, value: f64, threshold: f64, holds: bool, evidence: &str) {
    t.push(vec![claim.into(), subject.into(), m.into(), value.into(), threshold.into(), holds.into(), evidence.into()]);
}

fn posdef_report(p: &Params, seed: u64) -> Result<Table, CliError> {
    let sets = p.usize("sets")?;
    let witness_trials = p.usize("witness_trials")?;
    let (rmax, step) = (p.f64("rmax")?, p.f64("step")?);
    let mut t = Table::new(&["claim", "subject", "m", "value", "threshold", "holds", "evidence"]);
    const GRAM_FLOOR: f64 = -1e-8;
    for m in 1..=3 {
        let g = posdef::gram_sample(|x| Complex64::new((-x.iter().map(|v| v * v).sum::<f64>()).exp(), 0.0), m, sets, seed)
            .map_err(core)?;
        let holds = g.min_relative_eig >= GRAM_FLOOR;
        evidence_row(&mut t, "gram nonnegative", "exp(-|x|^2)", m, g.min_relative_eig, GRAM_FLOOR, holds, "sampled");
    }
    let profiles: Vec<(RadialProfile, usize)> = vec![
        (RadialProfile::closed("exp(-t)", f64::INFINITY, 0, |t| (-t).exp()), 1),
        (RadialProfile::closed("(1-t)_+", f64::INFINITY, 0, |t| (1.0 - t).max(0.0)), 1),
        (RadialProfile::closed("(1-t)_+^2", f64::INFINITY, 0, |t| (1.0 - t).max(0.0).powi(2)), 3),
        (RadialProfile::closed("exp(-t)", f64::INFINITY, 0, |t| (-t).exp()), 3),
    ];
    for (prof, m) in &profiles {
        let cert = posdef::polya_test(prof, *m);
        let certified = matches!(cert, Ok(true));
        evidence_row(&mut t, "polya certificate", &prof.name, *m, if certified { 1.0 } else { 0.0 }, 1.0, certified, "certificate");
        let pr = prof.clone();
        let g = posdef::gram_sample(move |x| Complex64::new(pr.value(posdef::lp_norm(x, 2.0)), 0.0), *m, sets, seed)
            .map_err(core)?;
        let holds = g.min_relative_eig >= GRAM_FLOOR;
        evidence_row(&mut t, "gram nonnegative", &prof.name, *m, g.min_relative_eig, GRAM_FLOOR, holds, "sampled");
    }
    for n in posdef::A_SPLINE_ORDERS {
        let a = posdef::a_spline(n).map_err(core)?;
        match posdef::radial_ft_positivity(&a, 1, rmax, step) {
            Ok(tm) => evidence_row(&mut t, "transform positive", &a.name, 1, tm.min_value, 0.0, tm.min_value > 0.0, "grid"),
            Err(e) => {
                t.fail(format!("{}: {e}", a.name));
                evidence_row(&mut t, "transform positive", &a.name, 1, f64::NAN, 0.0, false, "grid");
            }
        }
    }
    const WITNESS_CEILING: f64 = -1e-6;
    let w = posdef::min_eig_search(|x| (-x[0].abs().powf(2.5)).exp(), 1, witness_trials, seed).map_err(core)?;
    let found = w.min_eig_found < WITNESS_CEILING;
    evidence_row(&mut t, "violation witness", "exp(-|x|^2.5)", 1, w.min_eig_found, WITNESS_CEILING, found, "witness");
    t.note("failed_claims", t.rows.iter().filter(|r| r[5] == Cell::Bool(false)).count());
    Ok(t)
}

fn aspline(p: &Params, _seed: u64) -> Result<Table, CliError> {
    let n = p.usize("n")?;
    let (rmax, step) = (p.f64("rmax")?, p.f64("step")?);
    let a = posdef::a_spline(n).map_err(core)?;
    let mut t = Table::new(&["n", "k", "coefficient"]);
    for (k, c) in a.coefficients().unwrap_or(&[]).iter().enumerate() {
        t.push(vec![n.into(), k.into(), (*c).into()]);
    }
    match posdef::radial_ft_positivity(&a, 1, rmax, step) {
        Ok(tm) => {
            t.note("transform_min", tm.min_value);
            t.note("transform_argmin", tm.argmin);
        }
        Err(e) => t.fail(format!("transform: {e}")),
    }
    t.note("smoothness", a.smoothness);
    Ok(t)
}

fn schoenberg(p: &Params, seed: u64) -> Result<Table, CliError> {
    let (m, pp, alpha, trials) = (p.usize("m")?, p.f64("p")?, p.f64("alpha")?, p.usize("trials")?);
    let s = posdef::schoenberg_check(m, pp, alpha, trials, seed).map_err(core)?;
    let witness: Vec<String> = s
        .witness
        .iter()
        .map(|pt| pt.iter().map(|v| format!("{v:.6}")).collect::<Vec<_>>().join(" "))
        .collect();
    let mut t = Table::new(&["m", "p", "alpha", "trials", "seed", "min_eig", "violation", "witness"]);
    t.push(vec![
        m.into(),
        pp.into(),
        alpha.into(),
        trials.into(),
        (seed as i64).into(),
        s.min_eig_found.into(),
        (s.min_eig_found < -1e-6).into(),
        witness.join(";").into(),
    ]);
    Ok(t)
}

fn walsh_regularity(p: &Params, _seed: u64) -> Result<Table, CliError> {
    let (alpha, beta, nu, nmax) = (p.f64("alpha")?, p.f64("beta")?, p.f64("nu")?, p.usize("nmax")?);
    let rep = walsh::br_means_regularity(alpha, beta, nu, nmax).map_err(core)?;
    let mut t = Table::new(&["alpha", "beta", "nu", "n", "lc"]);
    for (n, lc) in &rep.lc_values {
        t.push(vec![alpha.into(), beta.into(), nu.into(), (*n).into(), (*lc).into()]);
    }
    let k = rep.octave_maxima.len();
    t.note("top_octave_growth", rep.octave_maxima[k - 1] / rep.octave_maxima[k - 2]);
    t.note("bounded", rep.bounded);
    Ok(t)
}

fn walsh_moduli(p: &Params, _seed: u64) -> Result<Table, CliError> {
    let bits = p.usize("bits")? as u32;
    let fs = corpus::sample_dyadic(bits).map_err(core)?;
    let mut t = Table::new(&["f_id", "n", "omega", "big_omega"]);
    for (id, f) in &fs {
        for n in 0..bits {
            let w = walsh::walsh_moduli(f, n).map_err(core)?;
            t.push(vec![(*id).into(), n.into(), w.omega.into(), w.big_omega.into()]);
        }
    }
    Ok(t)
}

fn euler_maclaurin_check(p: &Params, _seed: u64) -> Result<Table, CliError> {
    let rmax = p.usize("rmax")?;
    let xs = p.f64_list("xs")?;
    let mut family: Vec<(&str, f64, i64, DecayingFunction)> = Vec::new();
    for a in p.f64_list("rates")? {
        family.push(("exponential", a, 0, DecayingFunction::exponential(a).map_err(core)?));
    }
    for b in p.f64_list("powers")? {
        family.push(("power", b, 1, DecayingFunction::power(b).map_err(core)?));
    }
    let mut t = Table::new(&[
        "family", "param", "n", "x", "r", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "theta_abs", "bound_holds",
    ]);
    let mut max_theta: f64 = 0.0;
    let mut monotone = true;
    for (kind, param, n, f) in &family {
        for &x in &xs {
            let mut errs = Vec::new();
            for r in 0..=rmax {
                match ft::euler_maclaurin_sum(f, *n, r, x) {
                    Ok(e) => {
                        max_theta = max_theta.max(e.theta.norm());
                        if !e.bound_holds {
                            t.fail(format!("{} x = {x} r = {r}: |θ| = {}", f.name, e.theta.norm()));
                        }
                        errs.push((e.lhs - e.rhs_main).norm());
                        t.push(vec![
                            (*kind).into(),
                            (*param).into(),
                            (*n).into(),
                            x.into(),
                            r.into(),
                            e.lhs.re.into(),
                            e.lhs.im.into(),
                            e.rhs_main.re.into(),
                            e.rhs_main.im.into(),
                            e.theta.norm().into(),
                            e.bound_holds.into(),
                        ]);
                    }
                    Err(Error::InvalidArgument(m)) => return Err(CliError::Usage(m)),
                    Err(e) => {
                        t.fail(format!("{} x = {x} r = {r}: {e}", f.name));
                        let mut row = vec![(*kind).into(), (*param).into(), (*n).into(), x.into(), r.into()];
                        row.extend(std::iter::repeat_n(Cell::Empty, 6));
                        t.push(row);
                    }
                }
            }
            if *kind == "exponential" && x == 1.0 {
                monotone &= errs.windows(2).all(|w| w[1] < w[0]);
            }
        }
    }
    t.note("max_theta", max_theta);
    t.note("exponential_error_decreasing_at_x1", monotone);
    Ok(t)
}

fn indicator_zeros(p: &Params, _seed: u64) -> Result<Table, CliError> {
    let pz = p.usize("p")?;
    let points = p.usize("points")?;
    let body = match p.str("body").as_str() {
        "disc" => ConvexBody2D::disc(p.f64("radius")?),
        "ellipse" => ConvexBody2D::ellipse(p.f64("a")?, p.f64("b")?),
        "square" => ConvexBody2D::polygon(vec![[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]]),
        "hexagon" => ConvexBody2D::polygon((0..6).map(|k| [(k as f64 * PI / 3.0).cos(), (k as f64 * PI / 3.0).sin()]).collect()),
        other => return Err(CliError::Usage(format!("body {other:?}: expected disc, ellipse, square or hexagon"))),
    }
    .map_err(core)?;
    if points == 0 {
        return Err(CliError::Usage("points must be positive".into()));
    }
    let phis: Vec<f64> = (0..points).map(|i| PI * i as f64 / points as f64).collect();
    let zeros = ft::zero_curve_grid(&body, pz, &phis);
    let (lower, upper) = (2.0 * PI * pz as f64, 2.0 * PI * (pz + 1) as f64);
    let mut t = Table::new(&["phi", "r_p", "d_phi", "product", "lower", "upper"]);
    for (phi, z) in phis.iter().zip(zeros) {
        let d = body.width(*phi);
        match z {
            Ok(r) => t.push(vec![(*phi).into(), r.into(), d.into(), (r * d).into(), lower.into(), upper.into()]),
            Err(Error::InvalidArgument(m)) => return Err(CliError::Usage(m)),
            Err(e) => {
                t.fail(format!("φ = {phi}: {e}"));
                t.push(vec![(*phi).into(), Cell::Empty, d.into(), Cell::Empty, lower.into(), upper.into()]);
            }
        }
    }
    Ok(t)
}

fn comparison_ratio(p: &Params, _seed: u64) -> Result<Table, CliError> {
    let a = trig::method_by_name(&p.str("a")).map_err(core)?;
    let b = trig::method_by_name(&p.str("b")).map_err(core)?;
    let (m, nmax) = (p.usize("m")?, p.usize("nmax")?);
    let fs = corpus::sample_periodic(m).map_err(core)?;
    let bandsets = fs
        .par_iter()
        .map(|(_, f)| trig::comparison_band(&a, &b, std::slice::from_ref(f), nmax))
        .collect::<Result<Vec<_>, Error>>()
        .map_err(core)?;
    let mut t = Table::new(&["f_id", "n", "ratio"]);
    for ((id, _), band) in fs.iter().zip(&bandsets) {
        for (_, n, ratio) in &band.samples {
            t.push(vec![(*id).into(), (*n).into(), (*ratio).into()]);
        }
    }
    let (lo, hi) = band_summary(&mut t, bandsets.iter().flat_map(|b| b.samples.iter().map(|s| s.2)));
    t.note("band_constant", hi.max(1.0 / lo));
    Ok(t)
}
