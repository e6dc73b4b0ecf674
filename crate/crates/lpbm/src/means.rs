//! Generalized two-point means and the $L_p$ weight pair.

use crate::{Error, Result};

/// Extended-real mean exponent. The limit cases carry explicit tags so that
/// no IEEE-infinity arithmetic ever reaches `powf`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Alpha {
    NegInf,
    Zero,
    Finite(f64),
    PosInf,
}

impl Alpha {
    /// Classify a float, mapping `0.0` and the infinities to their tags.
    pub fn from_f64(alpha: f64) -> Result<Self> {
        if alpha.is_nan() {
            return Err(Error::InvalidParameter("alpha is NaN".into()));
        }
        Ok(if alpha == 0.0 {
            Alpha::Zero
        } else if alpha == f64::INFINITY {
            Alpha::PosInf
        } else if alpha == f64::NEG_INFINITY {
            Alpha::NegInf
        } else {
            Alpha::Finite(alpha)
        })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct MeanParams {
    pub alpha: Alpha,
    pub t: f64,
}

impl MeanParams {
    pub fn new(alpha: Alpha, t: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::InvalidParameter(format!("t = {t} outside [0,1]")));
        }
        Ok(Self { alpha, t })
    }
}

/// The two-point mean with the four-case definition: power mean for finite
/// nonzero exponent, geometric for zero, max/min at the infinities, and zero
/// whenever either argument vanishes.
pub fn generalized_mean(params: &MeanParams, a: f64, b: f64) -> f64 {
    debug_assert!(a >= 0.0 && b >= 0.0);
    // The ab = 0 short-circuit precedes all exponentiation, which also fixes
    // the 0^{1/alpha} convention for negative alpha.
    if a <= 0.0 || b <= 0.0 {
        return 0.0;
    }
    let t = params.t;
    match params.alpha {
        Alpha::NegInf => a.min(b),
        Alpha::PosInf => a.max(b),
        Alpha::Zero => a.powf(1.0 - t) * b.powf(t),
        Alpha::Finite(alpha) => {
            ((1.0 - t) * a.powf(alpha) + t * b.powf(alpha)).powf(1.0 / alpha)
        }
    }
}

/// The coefficient pair of the set-level $L_p$ combination at a given split
/// parameter `lambda`: `wa = (1-t)^{1/p} (1-lambda)^{(p-1)/p}` and
/// `wb = t^{1/p} lambda^{(p-1)/p}`.
#[derive(Clone, Copy, Debug)]
pub struct LpWeights {
    pub p: f64,
    pub t: f64,
    pub lambda: f64,
    pub wa: f64,
    pub wb: f64,
}

pub fn lp_weight_pair(p: f64, t: f64, lambda: f64) -> Result<LpWeights> {
    if !(p >= 1.0) {
        return Err(Error::InvalidParameter(format!("p = {p} must be >= 1")));
    }
    if !(0.0..=1.0).contains(&t) || !(0.0..=1.0).contains(&lambda) {
        return Err(Error::InvalidParameter(format!(
            "t = {t}, lambda = {lambda} must lie in [0,1]"
        )));
    }
    let q = (p - 1.0) / p;
    // powf(0, 0) == 1, so p = 1 erases lambda as required.
    let wa = (1.0 - t).powf(1.0 / p) * (1.0 - lambda).powf(q);
    let wb = t.powf(1.0 / p) * lambda.powf(q);
    Ok(LpWeights { p, t, lambda, wa, wb })
}

/// General weighted variant with positive scalars `alpha`, `beta` in place of
/// `1-t`, `t`: `wa = alpha^{1/p} (1-lambda)^{(p-1)/p}`, etc.
pub fn scaled_weight_pair(p: f64, alpha: f64, beta: f64, lambda: f64) -> Result<(f64, f64)> {
    if !(p >= 1.0) {
        return Err(Error::InvalidParameter(format!("p = {p} must be >= 1")));
    }
    if !(alpha >= 0.0 && beta >= 0.0) || alpha + beta == 0.0 {
        return Err(Error::InvalidParameter(
            "alpha, beta must be nonnegative and not both zero".into(),
        ));
    }
    let q = (p - 1.0) / p;
    Ok((alpha.powf(1.0 / p) * (1.0 - lambda).powf(q), beta.powf(1.0 / p) * lambda.powf(q)))
}

/// Hoelder bound on product sequences: `prod |a_i| + prod |b_i| <=
/// [prod (|a_i|^m + |b_i|^m)]^{1/m}`. Used as a self-test predicate.
pub fn product_holder_bound(a: &[f64], b: &[f64]) -> Result<bool> {
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::DimensionMismatch(format!(
            "sequence lengths {} and {}",
            a.len(),
            b.len()
        )));
    }
    let m = a.len() as f64;
    let lhs = a.iter().map(|x| x.abs()).product::<f64>() + b.iter().map(|x| x.abs()).product::<f64>();
    let rhs = a
        .iter()
        .zip(b)
        .map(|(x, y)| x.abs().powf(m) + y.abs().powf(m))
        .product::<f64>()
        .powf(1.0 / m);
    Ok(lhs <= rhs * (1.0 + 1e-12) + 1e-300)
}

/// The lambda values over which combination suprema are taken: `count`
/// uniformly spaced points including both endpoints, optionally enriched with
/// quarter-octave geometric tails near 0 and 1 (the Hoelder optimum of a
/// small-epsilon perturbation sits at lambda ~ epsilon, far below the uniform
/// spacing), plus caller-supplied extra values.
pub fn lambda_schedule(count: usize, tails: bool, extras: &[f64]) -> Vec<f64> {
    let count = count.max(2);
    let mut lams: Vec<f64> = (0..count).map(|i| i as f64 / (count - 1) as f64).collect();
    if tails {
        for j in 1..=56 {
            let lam = (2.0f64).powf(-(j as f64) / 4.0);
            lams.push(lam);
            lams.push(1.0 - lam);
        }
    }
    for &e in extras {
        if (0.0..=1.0).contains(&e) {
            lams.push(e);
        }
    }
    lams.sort_by(|a, b| a.partial_cmp(b).unwrap());
    lams.dedup();
    lams
}
