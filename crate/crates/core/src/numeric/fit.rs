use nalgebra::{DMatrix, DVector};

use crate::error::{invalid, Error, Result};

/// Asymptotic laws fitted by least squares.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FitModel {
    /// `c ln n + d`; params `[c, d]`.
    LogLinear,
    /// `c n^s`, fitted on the log–log scale; params `[c, s]`.
    Power,
    /// `c n^{-r} ln n + d n^{-r}` with `r` fixed; params `[c, d]`.
    LogPowerTail { r: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticFit {
    pub model: FitModel,
    pub params: Vec<f64>,
    /// Root-mean-square residual in the space where the fit is linear.
    pub residual: f64,
    pub ns: Vec<f64>,
    pub values: Vec<f64>,
}

impl AsymptoticFit {
    pub fn evaluate(&self, n: f64) -> f64 {
        match self.model {
            FitModel::LogLinear => self.params[0] * n.ln() + self.params[1],
            FitModel::Power => self.params[0] * n.powf(self.params[1]),
            FitModel::LogPowerTail { r } => n.powf(-r) * (self.params[0] * n.ln() + self.params[1]),
        }
    }
}

/// Least-squares fit of `values` against `ns`. At least two points are needed
/// and the grid must not collapse to a single abscissa.
pub fn fit(model: FitModel, ns: &[f64], values: &[f64]) -> Result<AsymptoticFit> {
    if ns.len() != values.len() || ns.len() < 2 {
        return invalid("fit needs at least two (n, value) pairs of equal length");
    }
    if ns.iter().any(|&n| !(n > 0.0)) {
        return invalid("fit abscissae must be positive");
    }
    let rows = ns.len();
    let (design, rhs): (DMatrix<f64>, DVector<f64>) = match model {
        FitModel::LogLinear => (
            DMatrix::from_fn(rows, 2, |i, j| if j == 0 { ns[i].ln() } else { 1.0 }),
            DVector::from_column_slice(values),
        ),
        FitModel::Power => {
            if values.iter().any(|&v| !(v > 0.0)) {
                return invalid("power-law fit needs positive values");
            }
            (
                DMatrix::from_fn(rows, 2, |i, j| if j == 0 { ns[i].ln() } else { 1.0 }),
                DVector::from_iterator(rows, values.iter().map(|v| v.ln())),
            )
        }
        FitModel::LogPowerTail { r } => (
            DMatrix::from_fn(rows, 2, |i, j| {
                let s = ns[i].powf(-r);
                if j == 0 {
                    s * ns[i].ln()
                } else {
                    s
                }
            }),
            DVector::from_column_slice(values),
        ),
    };
    let svd = design.clone().svd(true, true);
    let sol = svd
        .solve(&rhs, 1e-14)
        .map_err(|e| Error::Internal(format!("least squares failed: {e}")))?;
    let resid = &design * &sol - &rhs;
    let residual = (resid.norm_squared() / rows as f64).sqrt();
    let params = match model {
        FitModel::Power => vec![sol[1].exp(), sol[0]],
        _ => vec![sol[0], sol[1]],
    };
    Ok(AsymptoticFit {
        model,
        params,
        residual,
        ns: ns.to_vec(),
        values: values.to_vec(),
    })
}
