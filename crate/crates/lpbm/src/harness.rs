//! Theorem registry: evaluates both sides of each supported inequality on
//! configured fixtures, sweeps parameter grids, and estimates the empirical
//! Gardner-Zvavitch constant.

use crate::densities::{measure_of_body, measure_of_box_union, mu_integral, Density, Quadrature};
use crate::functionals::{mixed_volume_vpf, residual_mpf, surface_area, EpsSchedule, FSpec};
use crate::geometry::{lyz_box_union, union_volume, SupportBody};
use crate::grid::{pairwise_sum, Box3, Grid, GridFunction};
use crate::means::{generalized_mean, lambda_schedule, lp_weight_pair, Alpha, MeanParams};
use crate::supconv::{oplus_ps, ts_supconv_brute, ConvolutionParams, SValue};
use crate::{Error, Result};
use rayon::prelude::*;
use std::fmt;
use std::str::FromStr;

/// Identifier of one registered inequality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TheoremId {
    Bbl,
    LpBbl,
    LpBmiSets,
    LpBmiSconcave,
    LpPliProduct,
    LpPliSets,
    LpBmiProduct,
    Lemma1d,
    PlRecovery,
    Mfi,
    Ismi,
    GzProductMin,
    GzLpProduct,
    GzLogconcaveC,
    GzRadialDecay,
}

impl TheoremId {
    pub const ALL: [TheoremId; 15] = [
        TheoremId::Bbl,
        TheoremId::LpBbl,
        TheoremId::LpBmiSets,
        TheoremId::LpBmiSconcave,
        TheoremId::LpPliProduct,
        TheoremId::LpPliSets,
        TheoremId::LpBmiProduct,
        TheoremId::Lemma1d,
        TheoremId::PlRecovery,
        TheoremId::Mfi,
        TheoremId::Ismi,
        TheoremId::GzProductMin,
        TheoremId::GzLpProduct,
        TheoremId::GzLogconcaveC,
        TheoremId::GzRadialDecay,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            TheoremId::Bbl => "BBL",
            TheoremId::LpBbl => "LP_BBL",
            TheoremId::LpBmiSets => "LP_BMI_SETS",
            TheoremId::LpBmiSconcave => "LP_BMI_SCONCAVE",
            TheoremId::LpPliProduct => "LP_PLI_PRODUCT",
            TheoremId::LpPliSets => "LP_PLI_SETS",
            TheoremId::LpBmiProduct => "LP_BMI_PRODUCT",
            TheoremId::Lemma1d => "LEMMA_1D",
            TheoremId::PlRecovery => "PL_RECOVERY",
            TheoremId::Mfi => "MFI",
            TheoremId::Ismi => "ISMI",
            TheoremId::GzProductMin => "GZ_PRODUCT_MIN",
            TheoremId::GzLpProduct => "GZ_LP_PRODUCT",
            TheoremId::GzLogconcaveC => "GZ_LOGCONCAVE_C",
            TheoremId::GzRadialDecay => "GZ_RADIAL_DECAY",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .iter()
            .copied()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

/// Operand pair of a check. Set-level inequalities take axis-aligned boxes,
/// functional inequalities take gridded functions, and the surface-area
/// inequalities take convex support bodies.
#[derive(Clone, Debug)]
pub enum FixtureKind {
    BoxPair(Box3, Box3),
    FunctionPair(GridFunction, GridFunction),
    BodyPair(SupportBody, SupportBody),
}

/// A named measure-plus-operands instance.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub mu: Density,
    pub dim: usize,
    pub kind: FixtureKind,
}

impl Fixture {
    pub fn new(name: &str, mu: Density, dim: usize, kind: FixtureKind) -> Self {
        Self { name: name.to_string(), mu, dim, kind }
    }
}

/// Numerical knobs of one check.
#[derive(Clone, Copy, Debug)]
pub struct CheckParams {
    pub p: f64,
    pub t: f64,
    pub s: SValue,
    pub lambda_count: usize,
    pub resolution: usize,
    pub tolerance_scale: f64,
}

impl Default for CheckParams {
    fn default() -> Self {
        Self {
            p: 2.0,
            t: 0.5,
            s: SValue::Finite(1.0),
            lambda_count: 129,
            resolution: 256,
            tolerance_scale: 1.0,
        }
    }
}

impl CheckParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.p >= 1.0) {
            return Err(Error::InvalidParameter(format!("p = {} must be >= 1", self.p)));
        }
        if !(0.0..=1.0).contains(&self.t) {
            return Err(Error::InvalidParameter(format!("t = {} outside [0,1]", self.t)));
        }
        if self.lambda_count < 2 {
            return Err(Error::InvalidParameter("lambda count below 2".into()));
        }
        if self.resolution < 16 {
            return Err(Error::InvalidParameter("resolution below 16".into()));
        }
        if !(self.tolerance_scale > 0.0) {
            return Err(Error::InvalidParameter("tolerance scale must be positive".into()));
        }
        Ok(())
    }
}

/// One inequality evaluation. `pass` holds when the margin clears the
/// tolerance and every hypothesis holds; hypothesis violations set
/// `applicable = false` with the reasons in `notes`.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub theorem: TheoremId,
    pub p: f64,
    pub t: f64,
    pub lambda: Option<f64>,
    pub s: Option<f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub applicable: bool,
    pub notes: String,
}

impl CheckReport {
    fn build(
        theorem: TheoremId,
        p: f64,
        t: f64,
        lambda: Option<f64>,
        s: Option<f64>,
        lhs: f64,
        rhs: f64,
        tolerance: f64,
        violations: Vec<String>,
        mut notes: Vec<String>,
    ) -> Self {
        let margin = lhs - rhs;
        let applicable = violations.is_empty();
        let pass = applicable && margin >= -tolerance;
        if !applicable {
            notes.insert(0, format!("inapplicable: {}", violations.join("; ")));
        }
        Self {
            theorem,
            p,
            t,
            lambda,
            s,
            lhs,
            rhs,
            margin,
            tolerance,
            pass,
            applicable,
            notes: notes.join("; "),
        }
    }
}

// ---------------------------------------------------------------------------
// Tolerance policy
// ---------------------------------------------------------------------------

/// Quadrature-backed comparisons: tau = 4 * grid step * scale, stretched by
/// the magnitude of the compared values when they exceed unity.
fn quad_tol(step: f64, scale: f64, lhs: f64, rhs: f64) -> f64 {
    4.0 * step * scale * lhs.abs().max(rhs.abs()).max(1.0)
}

/// Analytic closed-form comparisons: relative 1e-9.
fn analytic_tol(scale: f64, lhs: f64, rhs: f64) -> f64 {
    1e-9 * scale * lhs.abs().max(rhs.abs()).max(1.0)
}

// ---------------------------------------------------------------------------
// Hypothesis predicates
// ---------------------------------------------------------------------------

fn is_lebesgue(mu: &Density) -> bool {
    matches!(mu, Density::Lebesgue)
}

/// Log-concave densities by declared class; 1/s-concave implies log-concave.
fn is_log_concave(mu: &Density) -> bool {
    matches!(
        mu,
        Density::Lebesgue
            | Density::Gaussian { .. }
            | Density::LogConcaveExp { .. }
            | Density::SConcavePower { .. }
    )
}

/// Product of 1-d quasi-concave factors with maxima at the origin. In one
/// dimension any quasi-concave max-at-origin density qualifies; the numeric
/// max-at-origin scan covers the 1-d tabulated cases.
fn is_product_quasiconcave(mu: &Density, dim: usize, hull: &Box3) -> bool {
    match mu {
        Density::Lebesgue | Density::Gaussian { .. } | Density::QuasiConcaveProduct { .. } => true,
        _ if dim == 1 => match Quadrature::new(*hull, 64) {
            Ok(q) => mu.max_at_origin(&q),
            Err(_) => false,
        },
        _ => false,
    }
}

/// Radial decay mu(cK) >= c^n mu(K): holds for densities with maximum at the
/// origin, verified numerically on the fixture hull.
fn has_radial_decay(mu: &Density, hull: &Box3) -> bool {
    match Quadrature::new(*hull, 64) {
        Ok(q) => mu.max_at_origin(&q),
        Err(_) => false,
    }
}

fn box_contains_origin(b: &Box3) -> bool {
    (0..b.dim).all(|a| b.lo[a] <= 0.0 && b.hi[a] >= 0.0)
}

/// The grid maximum sits at the cell nearest the origin (up to sampling
/// slack: cell centers miss the exact peak by at most half a step).
fn fn_max_at_origin(f: &GridFunction, tol: f64) -> bool {
    let at0 = f.sample_nearest(&[0.0, 0.0, 0.0]);
    at0 >= f.max_value() * (1.0 - tol)
}

/// Closure of the support/value structure under zeroing coordinates:
/// f(delta o x) >= f(x) for every zero-mask delta.
fn fn_weakly_unconditional(f: &GridFunction, tol: f64) -> bool {
    let d = f.dim();
    let m = f.max_value();
    for i in 0..f.values.len() {
        let v = f.values[i];
        if v <= 0.0 {
            continue;
        }
        let c = f.grid.center(i);
        for mask in 1..(1usize << d) {
            let mut z = c;
            for a in 0..d {
                if mask & (1 << a) != 0 {
                    z[a] = 0.0;
                }
            }
            if f.sample_nearest(&z) < v - tol * m {
                return false;
            }
        }
    }
    true
}

/// Coordinatewise monotone toward the origin: along each axis the values do
/// not increase as the coordinate moves away from zero.
fn fn_positively_decreasing(f: &GridFunction, tol: f64) -> bool {
    let d = f.dim();
    let m = f.max_value();
    for i in 0..f.values.len() {
        let idx = f.grid.multi_index(i);
        let c = f.grid.center(i);
        for a in 0..d {
            if idx[a] + 1 >= f.grid.res[a] {
                continue;
            }
            let mut jdx = idx;
            jdx[a] += 1;
            let j = f.grid.flat_index(&jdx);
            let cj = f.grid.center(j);
            // Neighbor j is one step to the right along axis a.
            if c[a] >= 0.0 {
                if f.values[j] > f.values[i] + tol * m {
                    return false;
                }
            } else if cj[a] <= 0.0 && f.values[i] > f.values[j] + tol * m {
                return false;
            }
        }
    }
    true
}

/// Every sampled super-level set factors as a product of per-axis index
/// sets: the occupied-cell count must equal the product of the projection
/// sizes at each probed threshold.
fn fn_product_level_sets(f: &GridFunction) -> bool {
    let d = f.dim();
    if d == 1 {
        return true;
    }
    let m = f.max_value();
    if m <= 0.0 {
        return false;
    }
    for k in 1..=9 {
        let r = m * k as f64 / 10.0;
        let mut count = 0usize;
        let mut proj: Vec<Vec<bool>> = (0..d).map(|a| vec![false; f.grid.res[a]]).collect();
        for i in 0..f.values.len() {
            if f.values[i] >= r {
                count += 1;
                let idx = f.grid.multi_index(i);
                for a in 0..d {
                    proj[a][idx[a]] = true;
                }
            }
        }
        let product: usize = proj.iter().map(|p| p.iter().filter(|&&b| b).count()).product();
        if count != product {
            return false;
        }
    }
    true
}

fn norms_match(f: &GridFunction, g: &GridFunction, tol: f64) -> bool {
    let (mf, mg) = (f.max_value(), g.max_value());
    (mf - mg).abs() <= tol * mf.max(mg).max(1e-300)
}

// ---------------------------------------------------------------------------
// Shared numeric helpers
// ---------------------------------------------------------------------------

fn box_volume(b: &Box3) -> f64 {
    (0..b.dim).map(|a| b.extent(a)).product()
}

fn box_measure(mu: &Density, b: &Box3, res: usize) -> Result<f64> {
    measure_of_box_union(mu, std::slice::from_ref(b), res)
}

/// The split-parameter prefactor [((1-t)/(1-lam))^{1-lam} (t/lam)^lam]^{n/p},
/// with the endpoint limits (x/0)^0 = 1 taken explicitly.
fn pli_bracket(p: f64, t: f64, lam: f64, n: f64) -> f64 {
    let term_a = if lam >= 1.0 { 0.0 } else { (1.0 - lam) * ((1.0 - t) / (1.0 - lam)).ln() };
    let term_b = if lam <= 0.0 { 0.0 } else { lam * (t / lam).ln() };
    ((term_a + term_b) * n / p).exp()
}

/// Integral of f^expo against mu over f's own grid.
fn powered_integral(mu: &Density, f: &GridFunction, expo: f64) -> f64 {
    let cv = f.grid.cell_volume();
    let vals: Vec<f64> = (0..f.values.len())
        .map(|i| {
            let v = f.values[i];
            if v > 0.0 {
                v.powf(expo) * mu.eval(&f.grid.center(i), f.dim())
            } else {
                0.0
            }
        })
        .collect();
    pairwise_sum(&vals) * cv
}

fn want_boxes(fix: &Fixture) -> Result<(&Box3, &Box3)> {
    match &fix.kind {
        FixtureKind::BoxPair(a, b) => Ok((a, b)),
        _ => Err(Error::InvalidParameter(format!(
            "fixture '{}' does not carry a box pair",
            fix.name
        ))),
    }
}

fn want_functions(fix: &Fixture) -> Result<(&GridFunction, &GridFunction)> {
    match &fix.kind {
        FixtureKind::FunctionPair(f, g) => Ok((f, g)),
        _ => Err(Error::InvalidParameter(format!(
            "fixture '{}' does not carry a function pair",
            fix.name
        ))),
    }
}

fn want_bodies(fix: &Fixture) -> Result<(&SupportBody, &SupportBody)> {
    match &fix.kind {
        FixtureKind::BodyPair(a, b) => Ok((a, b)),
        _ => Err(Error::InvalidParameter(format!(
            "fixture '{}' does not carry a body pair",
            fix.name
        ))),
    }
}

/// Sampling slack for grid-based hypothesis predicates.
const HYP_TOL: f64 = 5e-2;

// ---------------------------------------------------------------------------
// Individual checks
// ---------------------------------------------------------------------------

fn check_bbl(fix: &Fixture, params: &CheckParams) -> Result<CheckReport> {
    let (f, g) = want_functions(fix)?;
    let n = fix.dim as f64;
    let mut violations = Vec::new();
    if !is_lebesgue(&fix.mu) {
        violations.push("stated for the Lebesgue measure".into());
    }
    if params.s == SValue::PosInf {
        violations.push("mean exponent degenerates at s = +inf".into());
    }
    let h = ts_supconv_brute(f, g, params.t, params.s)?;
    let lhs = mu_integral(&fix.mu, &h);
    let gamma = match params.s {
        SValue::Zero => Alpha::Zero,
        SValue::Finite(s) => Alpha::Finite(1.0 / (n + s)),
        SValue::PosInf => Alpha::Zero,
    };
    let mp = MeanParams::new(gamma, params.t)?;
    let rhs = generalized_mean(&mp, mu_integral(&fix.mu, f), mu_integral(&fix.mu, g));
    let step = f.grid.max_step().max(g.grid.max_step()).max(h.grid.max_step());
    let tol = quad_tol(step, params.tolerance_scale, lhs, rhs);
    Ok(CheckReport::build(
        TheoremId::Bbl,
        params.p,
        params.t,
        None,
        Some(params.s.as_f64()),
        lhs,
        rhs,
        tol,
        violations,
        vec!["single-split brute-force convolution".into()],
    ))
}

fn check_lp_bbl(fix: &Fixture, params: &CheckParams) -> Result<CheckReport> {
    let (f, g) = want_functions(fix)?;
    let n = fix.dim as f64;
    let mut violations = Vec::new();
    if !is_lebesgue(&fix.mu) {
        violations.push("stated for the Lebesgue measure".into());
    }
    let conv = ConvolutionParams::new(params.p, params.t, params.s, params.lambda_count)?;
    let h = oplus_ps(f, g, &conv, 1.0 - params.t, params.t)?;
    let lhs = mu_integral(&fix.mu, &h);
    let gamma = match params.s {
        SValue::Zero => Alpha::Finite(params.p / n),
        SValue::Finite(s) => Alpha::Finite(params.p / (n + s)),
        SValue::PosInf => Alpha::Zero,
    };
    let mp = MeanParams::new(gamma, params.t)?;
    let rhs = generalized_mean(&mp, mu_integral(&fix.mu, f), mu_integral(&fix.mu, g));
    let step = f.grid.max_step().max(g.grid.max_step()).max(h.grid.max_step());
    let tol = quad_tol(step, params.tolerance_scale, lhs, rhs);
    Ok(CheckReport::build(
        TheoremId::LpBbl,
        params.p,
        params.t,
        None,
        Some(params.s.as_f64()),
        lhs,
        rhs,
        tol,
        violations,
        Vec::new(),
    ))
}

fn check_lp_bmi_sets(fix: &Fixture, params: &CheckParams) -> Result<CheckReport> {
    let (a, b) = want_boxes(fix)?;
    let n = fix.dim as f64;
    let mut violations = Vec::new();
    if !is_lebesgue(&fix.mu) {
        violations.push("stated for Lebesgue volume".into());
    }
    let lams = lambda_schedule(params.lambda_count, false, &[params.t]);
    let boxes = lyz_box_union(a, b, params.p, 1.0 - params.t, params.t, &lams)?;
    let gamma = params.p / n;
    let lhs = union_volume(&boxes).powf(gamma);
    let rhs = (1.0 - params.t) * box_volume(a).powf(gamma)
        + params.t * box_volume(b).powf(gamma);
    // Volumes are exact; the only discretization is the finite split grid.
    let grid_term = (1.0 / lams.len() as f64).powi(2);
    let tol = analytic_tol(params.tolerance_scale, lhs, rhs)
        + params.tolerance_scale * grid_term * lhs.abs().max(rhs.abs()).max(1.0);
    Ok(CheckReport::build(
        TheoremId::LpBmiSets,
        params.p,
        params.t,
        None,
        None,
        lhs,
        rhs,
        tol,
        violations,
        vec!["exact box-union volume".into()],
    ))
}

fn check_lp_bmi_sconcave(fix: &Fixture, params: &CheckParams) -> Result<CheckReport> {
    let (a, b) = want_boxes(fix)?;
    let n = fix.dim as f64;
    let mut violations = Vec::new();
    let s_density = match &fix.mu {
        Density::SConcavePower { s, .. } => *s,
        Density::Lebesgue => 0.0,
        _ => {
            violations.push("density is not declared 1/s-concave".into());
            0.0
        }
    };
    let lams = lambda_schedule(params.lambda_count, false, &[params.t]);
    let boxes = lyz_box_union(a, b, params.p, 1.0 - params.t, params.t, &lams)?;
    let gamma = params.p / (n + s_density);
    let mc = measure_of_box_union(&fix.mu, &boxes, params.resolution)?;
    let ma = box_measure(&fix.mu, a, params.resolution)?;
    let mb = box_measure(&fix.mu, b, params.resolution)?;
    let lhs = mc.powf(gamma);
    let rhs = (1.0 - params.t) * ma.powf(gamma) + params.t * mb.powf(gamma);
    let mut hull = boxes[0];
    for bx in &boxes[1..] {
        hull = hull.hull(bx);
    }
    let step = (0..fix.dim)
        .map(|ax| hull.extent(ax) / params.resolution as f64)
        .fold(0.0f64, f64::max);
    let tol = quad_tol(step, params.tolerance_scale, lhs, rhs);
    Ok(CheckReport::build(
        TheoremId::LpBmiSconcave,
        params.p,
        params.t,
        None,
        Some(s_density),
        lhs,
        rhs,
        tol,
        violations,
        Vec::new(),
    ))
}

fn check_lp_pli_product(fix: &Fixture, params: &CheckParams) -> Result<CheckReport> {
    let (f, g) = want_functions(fix)?;
    let n = fix.dim as f64;
    let hull = match (f.support_bounds(), g.support_bounds()) {
        (Some(bf), Some(bg)) => bf.hull(&bg),
        _ => return Err(Error::EmptyInput("function support".into())),
    };
    let mut violations = Vec::new();
    if !is_product_quasiconcave(&fix.mu, fix.dim, &hull) {
        violations.push("measure is not a product of quasi-concave factors".into());
    }
    if !fn_weakly_unconditional(f, HYP_TOL) || !fn_weakly_unconditional(g, HYP_TOL) {
        violations.push("operand is not weakly unconditional".into());
    }
    if !fn_positively_decreasing(f, HYP_TOL) || !fn_positively_decreasing(g, HYP_TOL) {
        violations.push("operand is not positively decreasing".into());
    }
    // The hypothesis couples the operands geometrically, so the curvature
    // parameter is pinned to the geometric combination.
    let conv = ConvolutionParams::new(params.p, params.t, SValue::Zero, params.lambda_count)?;
    let h = oplus_ps(f, g, &conv, 1.0 - params.t, params.t)?;
    let lhs = mu_integral(&fix.mu, &h);
    // At p = 1 the split weights lose their lambda dependence and the bound
    // collapses to the single value lambda = t.
    let lams: Vec<f64> = if params.p == 1.0 { vec![params.t] } else { conv.lambdas(&[]) };
    let (mut rhs, mut best_lam) = (0.0f64, params.t);
    for &lam in &lams {
        let bracket = pli_bracket(params.p, params.t, lam, n);
        let fa = if lam >= 1.0 {
            1.0
        } else {
            let expo = ((1.0 - params.t) / (1.0 - lam)).powf(1.0 / params.p);
            powered_integral(&fix.mu, f, expo).powf(1.0 - lam)
        };
        let gb = if lam <= 0.0 {
            1.0
        } else {
            let expo = (params.t / lam).powf(1.0 / params.p);
            powered_integral(&fix.mu, g, expo).powf(lam)
        };
        let val = bracket * fa * gb;
        if val > rhs {
            rhs = val;
            best_lam = lam;
        }
    }
    let step = f.grid.max_step().max(g.grid.max_step()).max(h.grid.max_step());
    let tol = quad_tol(step, params.tolerance_scale, lhs, rhs);
    Ok(CheckReport::build(
        TheoremId::LpPliProduct,
        params.p,
        params.t,
        Some(best_lam),
        Some(0.0),
        lhs,
        rhs,
        tol,
        violations,
        vec!["geometric combination; split supremum on the shared grid".into()],
    ))
}

fn check_lp_pli_sets(fix: &Fixture, params: &CheckParams) -> Result<CheckReport> {
    let (a, b) = want_boxes(fix)?;
    let n = fix.dim as f64;
    let hull = a.hull(b);
    let mut violations = Vec::new();
    if !is_product_quasiconcave(&fix.mu, fix.dim, &hull) {
        violations.push("measure is not a product of quasi-concave factors".into());
    }
    if !box_contains_origin(a) || !box_contains_origin(b) {
        violations.push("operand box does not contain the origin".into());
    }
    let lams = lambda_schedule(params.lambda_count, false, &[params.t]);
    let boxes = lyz_box_union(a, b, params.p, 1.0 - params.t, params.t, &lams)?;
    let lhs = measure_of_box_union(&fix.mu, &boxes, params.resolution)?;
    let ma = box_measure(&fix.mu, a, params.resolution)?;
    let mb = box_measure(&fix.mu, b, params.resolution)?;
    let sup_lams: Vec<f64> = if params.p == 1.0 { vec![params.t] } else { lams.clone() };
    let (mut rhs, mut best_lam) = (0.0f64, params.t);
    for &lam in &sup_lams {
        let val = pli_bracket(params.p, params.t, lam, n) * ma.powf(1.0 - lam) * mb.powf(lam);
        if val > rhs {
            rhs = val;
            best_lam = lam;
        }
    }
    let step = (0..fix.dim)
        .map(|ax| hull.extent(ax) * 2.0 / params.resolution as f64)
        .fold(0.0f64, f64::max);
    let tol = quad_tol(step, params.tolerance_scale, lhs, rhs);
    Ok(CheckReport::build(
        TheoremId::LpPliSets,
        params.p,
        params.t,
        Some(best_lam),
        None,
        lhs,
        rhs,
        tol,
        violations,
        Vec::new(),
    ))
}

fn check_lp_bmi_product(fix: &Fixture, params: &CheckParams) -> Result<CheckReport> {
    let (a, b) = want_boxes(fix)?;
    let n = fix.dim as f64;
    let hull = a.hull(b);
    let mut violations = Vec::new();
    if !(params.p > 1.0) {
        violations.push("stated for p > 1".into());
    }
    if !is_product_quasiconcave(&fix.mu, fix.dim, &hull) {
        violations.push("measure is not a product of quasi-concave factors".into());
    }
    if !box_contains_origin(a) || !box_contains_origin(b) {
        violations.push("operand box does not contain the origin".into());
    }
    let lams = lambda_schedule(params.lambda_count, false, &[params.t]);
    let boxes = lyz_box_union(a, b, params.p, 1.0 - params.t, params.t, &lams)?;
    let gamma = params.p / n;
    let lhs = measure_of_box_union(&fix.mu, &boxes, params.resolution)?.powf(gamma);
    let ma = box_measure(&fix.mu, a, params.resolution)?;
    let mb = box_measure(&fix.mu, b, params.resolution)?;
    let rhs = (1.0 - params.t) * ma.powf(gamma) + params.t * mb.powf(gamma);
    let step = (0..fix.dim)
        .map(|ax| hull.extent(ax) * 2.0 / params.resolution as f64)
        .fold(0.0f64, f64::max);
    let tol = quad_tol(step, params.tolerance_scale, lhs, rhs);
    Ok(CheckReport::build(
        TheoremId::LpBmiProduct,
        params.p,
        params.t,
        None,
        None,
        lhs,
        rhs,
        tol,
        violations,
        Vec::new(),
    ))
}

fn check_lemma_1d(fix: &Fixture, params: &CheckParams) -> Result<CheckReport> {
    let (a, b) = want_boxes(fix)?;
    let mut violations = Vec::new();
    if fix.dim != 1 {
        violations.push("one-dimensional statement".into());
    }
    let hull = a.hull(b).scaled(2.0);
    if !has_radial_decay(&fix.mu, &hull) {
        violations.push("density maximum is not at the origin".into());
    }
    let ma = box_measure(&fix.mu, a, params.resolution)?;
    let mb = box_measure(&fix.mu, b, params.resolution)?;
    let lams = lambda_schedule(params.lambda_count, false, &[params.t]);
    let mut worst: Option<(f64, f64, f64)> = None; // (margin, lhs, lam)
    for &lam in &lams {
        let w = lp_weight_pair(params.p, params.t, lam)?;
        let c = a.weighted_sum(w.wa, b, w.wb);
        let mc = box_measure(&fix.mu, &c, params.resolution)?;
        let rhs_l = w.wa * ma + w.wb * mb;
        let margin = mc - rhs_l;
        if worst.map_or(true, |(m, _, _)| margin < m) {
            worst = Some((margin, mc, lam));
        }
    }
    let (margin, lhs, lam) = worst.unwrap();
    let rhs = lhs - margin;
    let step = hull.extent(0) / params.resolution as f64;
    let tol = quad_tol(step, params.tolerance_scale, lhs, rhs);
    Ok(CheckReport::build(
        TheoremId::Lemma1d,
        params.p,
        params.t,
        Some(lam),
        None,
        lhs,
        rhs,
        tol,
        violations,
        vec!["worst split value reported".into()],
    ))
}

fn check_pl_recovery(fix: &Fixture, params: &CheckParams) -> Result<CheckReport> {
    let (f, g) = want_functions(fix)?;
    let mut violations = Vec::new();
    if !is_lebesgue(&fix.mu) {
        violations.push("stated for the Lebesgue measure".into());
    }
    // The split weights at p = 1 are identical for every lambda, so a minimal
    // two-point schedule suffices.
    let conv = ConvolutionParams::new(1.0, params.t, SValue::Zero, 2)?;
    let h = oplus_ps(f, g, &conv, 1.0 - params.t, params.t)?;
    let lhs = mu_integral(&fix.mu, &h);
    let mp = MeanParams::new(Alpha::Zero, params.t)?;
    let rhs = generalized_mean(&mp, mu_integral(&fix.mu, f), mu_integral(&fix.mu, g));
    let step = f.grid.max_step().max(g.grid.max_step()).max(h.grid.max_step());
    let tol = quad_tol(step, params.tolerance_scale, lhs, rhs);
    Ok(CheckReport::build(
        TheoremId::PlRecovery,
        1.0,
        params.t,
        None,
        Some(0.0),
        lhs,
        rhs,
        tol,
        violations,
        vec!["p fixed to 1".into()],
    ))
}

fn check_mfi(fix: &Fixture, params: &CheckParams) -> Result<CheckReport> {
    let (f, g) = want_functions(fix)?;
    let n = fix.dim as f64;
    let mut violations = Vec::new();
    let fspec = match params.s {
        SValue::PosInf => {
            if !is_log_concave(&fix.mu) {
                violations.push("measure is not log-concave".into());
            }
            FSpec::Log
        }
        _ => {
            if !is_lebesgue(&fix.mu) {
                violations.push("power concavity profile requires the Lebesgue measure".into());
            }
            FSpec::Power { kappa: params.p / (n + params.s.as_f64()) }
        }
    };
    let sched = EpsSchedule::default();
    let sfg = surface_area(&fix.mu, f, g, params.p, params.s, &sched)?.value();
    let sff = surface_area(&fix.mu, f, f, params.p, params.s, &sched)?.value();
    let int_f = mu_integral(&fix.mu, f);
    let int_g = mu_integral(&fix.mu, g);
    let lhs = sfg;
    let rhs = sff + (fspec.eval(int_g) - fspec.eval(int_f)) / fspec.deriv(int_f);
    // Difference quotients of quadrature integrals: allow a few percent.
    let tol = params.tolerance_scale * (0.05 * lhs.abs().max(rhs.abs()).max(1.0));
    Ok(CheckReport::build(
        TheoremId::Mfi,
        params.p,
        params.t,
        None,
        Some(params.s.as_f64()),
        lhs,
        rhs,
        tol,
        violations,
        vec!["surface areas from the perturbation schedule".into()],
    ))
}

fn check_ismi(fix: &Fixture, params: &CheckParams) -> Result<CheckReport> {
    let (a, b) = want_bodies(fix)?;
    let n = fix.dim as f64;
    let mut violations = Vec::new();
    let s_density = match &fix.mu {
        Density::SConcavePower { s, .. } => *s,
        Density::Lebesgue => 0.0,
        Density::Gaussian { .. } | Density::QuasiConcaveProduct { .. } => 0.0,
        _ => {
            violations.push("no concavity profile registered for this measure".into());
            0.0
        }
    };
    if !a.contains(&[0.0, 0.0, 0.0]) || !b.contains(&[0.0, 0.0, 0.0]) {
        violations.push("body does not contain the origin".into());
    }
    let fspec = FSpec::Power { kappa: params.p / (n + s_density) };
    let sched = EpsSchedule::default();
    let (v, _) = mixed_volume_vpf(&fix.mu, &fspec, a, b, params.p, &sched)?;
    let (m, _) = residual_mpf(&fix.mu, &fspec, a, params.p, &sched)?;
    let body_res = 2048;
    let ma = measure_of_body(&fix.mu, a, body_res)?;
    let mb = measure_of_body(&fix.mu, b, body_res)?;
    let d1 = fspec.deriv(1.0);
    let lhs = v + d1 * m;
    let rhs = d1 * (fspec.eval(mb) - fspec.eval(ma)) / fspec.deriv(ma) + ma;
    let tol = params.tolerance_scale * (0.05 * lhs.abs().max(rhs.abs()).max(1.0));
    Ok(CheckReport::build(
        TheoremId::Ismi,
        params.p,
        params.t,
        None,
        Some(s_density),
        lhs,
        rhs,
        tol,
        violations,
        vec!["mixed volume plus residual against the measure gap".into()],
    ))
}

fn gz_function_hypotheses(
    fix: &Fixture,
    f: &GridFunction,
    g: &GridFunction,
    hull: &Box3,
) -> Vec<String> {
    let mut violations = Vec::new();
    if !is_product_quasiconcave(&fix.mu, fix.dim, hull) {
        violations.push("measure is not a product of quasi-concave factors".into());
    }
    if !fn_max_at_origin(f, HYP_TOL) || !fn_max_at_origin(g, HYP_TOL) {
        violations.push("operand maximum is not at the origin".into());
    }
    if !norms_match(f, g, HYP_TOL) {
        violations.push("operand sup norms differ".into());
    }
    if !fn_product_level_sets(f) || !fn_product_level_sets(g) {
        violations.push("super-level sets do not factor as coordinate products".into());
    }
    violations
}

fn gz_product_rhs(mu: &Density, f: &GridFunction, g: &GridFunction, t: f64, n: f64) -> f64 {
    let int_f = mu_integral(mu, f);
    let int_g = mu_integral(mu, g);
    ((1.0 - t) * int_f.powf(1.0 / n) + t * int_g.powf(1.0 / n)).powf(n)
}

fn check_gz_product_min(fix: &Fixture, params: &CheckParams) -> Result<CheckReport> {
    let (f, g) = want_functions(fix)?;
    let n = fix.dim as f64;
    let hull = match (f.support_bounds(), g.support_bounds()) {
        (Some(bf), Some(bg)) => bf.hull(&bg),
        _ => return Err(Error::EmptyInput("function support".into())),
    };
    let violations = gz_function_hypotheses(fix, f, g, &hull);
    let h = ts_supconv_brute(f, g, params.t, SValue::PosInf)?;
    let lhs = mu_integral(&fix.mu, &h);
    let rhs = gz_product_rhs(&fix.mu, f, g, params.t, n);
    let step = f.grid.max_step().max(g.grid.max_step()).max(h.grid.max_step());
    let tol = quad_tol(step, params.tolerance_scale, lhs, rhs);
    Ok(CheckReport::build(
        TheoremId::GzProductMin,
        1.0,
        params.t,
        None,
        Some(f64::INFINITY),
        lhs,
        rhs,
        tol,
        violations,
        vec!["min combination at p = 1".into()],
    ))
}

fn check_gz_lp_product(fix: &Fixture, params: &CheckParams) -> Result<CheckReport> {
    let (f, g) = want_functions(fix)?;
    let n = fix.dim as f64;
    let hull = match (f.support_bounds(), g.support_bounds()) {
        (Some(bf), Some(bg)) => bf.hull(&bg),
        _ => return Err(Error::EmptyInput("function support".into())),
    };
    let violations = gz_function_hypotheses(fix, f, g, &hull);
    let conv =
        ConvolutionParams::new(params.p, params.t, SValue::Finite(1.0), params.lambda_count)?;
    let h = oplus_ps(f, g, &conv, 1.0 - params.t, params.t)?;
    let lhs = mu_integral(&fix.mu, &h);
    let rhs = gz_product_rhs(&fix.mu, f, g, params.t, n);
    let step = f.grid.max_step().max(g.grid.max_step()).max(h.grid.max_step());
    let tol = quad_tol(step, params.tolerance_scale, lhs, rhs);
    Ok(CheckReport::build(
        TheoremId::GzLpProduct,
        params.p,
        params.t,
        None,
        Some(1.0),
        lhs,
        rhs,
        tol,
        violations,
        vec!["arithmetic combination".into()],
    ))
}

fn check_gz_logconcave_c(fix: &Fixture, params: &CheckParams) -> Result<CheckReport> {
    let (k, l) = want_bodies(fix)?;
    let n = fix.dim as f64;
    let mut violations: Vec<String> = Vec::new();
    if !is_log_concave(&fix.mu) {
        violations.push("measure is not log-concave".into());
    }
    if !k.contains(&[0.0, 0.0, 0.0]) || !l.contains(&[0.0, 0.0, 0.0]) {
        violations.push("body does not contain the origin".into());
    }
    let comb = k.firey_combine(l, params.p, 1.0 - params.t, params.t)?;
    let body_res = 2048;
    let mc = measure_of_body(&fix.mu, &comb, body_res)?;
    let mk = measure_of_body(&fix.mu, k, body_res)?;
    let ml = measure_of_body(&fix.mu, l, body_res)?;
    let gamma = params.p / n;
    let lhs = mc.powf(gamma);
    let rhs = (1.0 - params.t) * mk.powf(gamma) + params.t * ml.powf(gamma);
    let ratio = if lhs > 0.0 { (rhs / lhs).max(0.0).powf(1.0 / params.p) } else { f64::INFINITY };
    let applicable = violations.is_empty();
    let margin = lhs - rhs;
    // This check reports the instance constant; no pass threshold is
    // asserted because the guarantee carries an unspecified constant.
    let mut notes = vec![format!("instance constant {:.6}; informational only", ratio)];
    if !applicable {
        notes.insert(0, format!("inapplicable: {}", violations.join("; ")));
    }
    Ok(CheckReport {
        theorem: TheoremId::GzLogconcaveC,
        p: params.p,
        t: params.t,
        lambda: None,
        s: None,
        lhs,
        rhs,
        margin,
        tolerance: f64::INFINITY,
        pass: applicable,
        applicable,
        notes: notes.join("; "),
    })
}

fn check_gz_radial_decay(fix: &Fixture, params: &CheckParams) -> Result<CheckReport> {
    let (k, l) = want_bodies(fix)?;
    let n = fix.dim as f64;
    let mut violations = Vec::new();
    let hull = k.bounding_box().hull(&l.bounding_box()).scaled(1.5);
    if !has_radial_decay(&fix.mu, &hull) {
        violations.push("density maximum is not at the origin".into());
    }
    if !k.contains(&[0.0, 0.0, 0.0]) || !l.contains(&[0.0, 0.0, 0.0]) {
        violations.push("body does not contain the origin".into());
    }
    let comb = k.firey_combine(l, params.p, 1.0 - params.t, params.t)?;
    let body_res = 2048;
    let mc = measure_of_body(&fix.mu, &comb, body_res)?;
    let mk = measure_of_body(&fix.mu, k, body_res)?;
    let ml = measure_of_body(&fix.mu, l, body_res)?;
    let gamma = params.p / n;
    let lhs = mc.powf(gamma);
    let rhs = 0.5 * ((1.0 - params.t) * mk.powf(gamma) + params.t * ml.powf(gamma));
    let step = (0..fix.dim)
        .map(|ax| hull.extent(ax) / body_res as f64)
        .fold(0.0f64, f64::max);
    let tol = quad_tol(step, params.tolerance_scale, lhs, rhs);
    Ok(CheckReport::build(
        TheoremId::GzRadialDecay,
        params.p,
        params.t,
        None,
        None,
        lhs,
        rhs,
        tol,
        violations,
        vec!["constant 1/2 bound".into()],
    ))
}

/// Evaluate one inequality on one fixture.
pub fn check_inequality(id: TheoremId, fix: &Fixture, params: &CheckParams) -> Result<CheckReport> {
    params.validate()?;
    match id {
        TheoremId::Bbl => check_bbl(fix, params),
        TheoremId::LpBbl => check_lp_bbl(fix, params),
        TheoremId::LpBmiSets => check_lp_bmi_sets(fix, params),
        TheoremId::LpBmiSconcave => check_lp_bmi_sconcave(fix, params),
        TheoremId::LpPliProduct => check_lp_pli_product(fix, params),
        TheoremId::LpPliSets => check_lp_pli_sets(fix, params),
        TheoremId::LpBmiProduct => check_lp_bmi_product(fix, params),
        TheoremId::Lemma1d => check_lemma_1d(fix, params),
        TheoremId::PlRecovery => check_pl_recovery(fix, params),
        TheoremId::Mfi => check_mfi(fix, params),
        TheoremId::Ismi => check_ismi(fix, params),
        TheoremId::GzProductMin => check_gz_product_min(fix, params),
        TheoremId::GzLpProduct => check_gz_lp_product(fix, params),
        TheoremId::GzLogconcaveC => check_gz_logconcave_c(fix, params),
        TheoremId::GzRadialDecay => check_gz_radial_decay(fix, params),
    }
}

/// One report per (fixture, p, t, s) grid point, lexicographic in that
/// order; grid points are evaluated in parallel, collection preserves order.
pub fn sweep(
    id: TheoremId,
    fixtures: &[Fixture],
    p_grid: &[f64],
    t_grid: &[f64],
    s_grid: &[SValue],
    base: &CheckParams,
) -> Result<Vec<CheckReport>> {
    let mut points: Vec<(usize, f64, f64, SValue)> = Vec::new();
    let s_values: Vec<SValue> = if s_grid.is_empty() { vec![base.s] } else { s_grid.to_vec() };
    for (fi, _) in fixtures.iter().enumerate() {
        for &p in p_grid {
            for &t in t_grid {
                for &s in &s_values {
                    points.push((fi, p, t, s));
                }
            }
        }
    }
    points
        .par_iter()
        .map(|&(fi, p, t, s)| {
            let params = CheckParams { p, t, s, ..*base };
            check_inequality(id, &fixtures[fi], &params)
        })
        .collect()
}

/// Empirical constant over a family of log-concave measures and body pairs.
#[derive(Clone, Debug)]
pub struct GzEstimate {
    pub c: f64,
    pub witness: String,
    pub skipped: Vec<String>,
    pub instances: usize,
}

/// Maximum over the family of the ratio whose p-th power relates the mean of
/// the endpoint measures to the measure of the combination. Zero-measure
/// instances are skipped with a note.
pub fn estimate_gz_constant(
    fixtures: &[Fixture],
    p_grid: &[f64],
    t_grid: &[f64],
    params: &CheckParams,
) -> Result<GzEstimate> {
    params.validate()?;
    let mut best: Option<(f64, String)> = None;
    let mut skipped = Vec::new();
    let mut instances = 0usize;
    for fix in fixtures {
        let (k, l) = want_bodies(fix)?;
        if !is_log_concave(&fix.mu) {
            skipped.push(format!("{}: measure is not log-concave", fix.name));
            continue;
        }
        let n = fix.dim as f64;
        let body_res = 2048;
        let mk = measure_of_body(&fix.mu, k, body_res)?;
        let ml = measure_of_body(&fix.mu, l, body_res)?;
        for &p in p_grid {
            for &t in t_grid {
                let comb = k.firey_combine(l, p, 1.0 - t, t)?;
                let mc = measure_of_body(&fix.mu, &comb, body_res)?;
                if !(mc > 0.0) || !(mk > 0.0) || !(ml > 0.0) {
                    skipped.push(format!("{} p={p} t={t}: zero-measure instance", fix.name));
                    continue;
                }
                instances += 1;
                let gamma = p / n;
                let ratio = (((1.0 - t) * mk.powf(gamma) + t * ml.powf(gamma))
                    / mc.powf(gamma))
                .powf(1.0 / p);
                if best.as_ref().map_or(true, |(c, _)| ratio > *c) {
                    best = Some((ratio, format!("{} p={p} t={t}", fix.name)));
                }
            }
        }
    }
    let (c, witness) =
        best.ok_or_else(|| Error::EmptyInput("no usable instance in the family".into()))?;
    Ok(GzEstimate { c, witness, skipped, instances })
}

// ---------------------------------------------------------------------------
// Built-in fixture suite
// ---------------------------------------------------------------------------

fn grid_1d(lo: f64, hi: f64, res: usize) -> Grid {
    Grid::uniform(Box3::interval(lo, hi).unwrap(), res).unwrap()
}

fn grid_2d(half: f64, res: usize) -> Grid {
    let b = Box3::new(2, [-half, -half, 0.0], [half, half, 0.0]).unwrap();
    Grid::uniform(b, res).unwrap()
}

fn indicator_1d(lo: f64, hi: f64, res: usize) -> GridFunction {
    GridFunction::from_fn(grid_1d(lo, hi, res), |_| 1.0)
}

fn triangular_1d(width: f64, res: usize) -> GridFunction {
    GridFunction::from_fn(grid_1d(-width, width, res), move |x| {
        (1.0 - x[0].abs() / width).max(0.0)
    })
}

fn gaussian_1d(sigma: f64, half: f64, res: usize) -> GridFunction {
    GridFunction::from_fn(grid_1d(-half, half, res), move |x| {
        (-0.5 * (x[0] / sigma).powi(2)).exp()
    })
}

fn box_indicator_2d(hx: f64, hy: f64, half: f64, res: usize) -> GridFunction {
    GridFunction::from_fn(grid_2d(half, res), move |x| {
        if x[0].abs() <= hx && x[1].abs() <= hy {
            1.0
        } else {
            0.0
        }
    })
}

fn diamond_indicator_2d(r: f64, half: f64, res: usize) -> GridFunction {
    GridFunction::from_fn(grid_2d(half, res), move |x| {
        if x[0].abs() + x[1].abs() <= r {
            1.0
        } else {
            0.0
        }
    })
}

const FN_RES_1D: usize = 64;
const FN_RES_2D: usize = 24;

/// The named fixtures every theorem draws from. Names are stable; the CLI
/// selftest and the acceptance suite both run against this list.
pub fn builtin_fixtures(id: TheoremId) -> Vec<Fixture> {
    let b1 = |lo: f64, hi: f64| Box3::interval(lo, hi).unwrap();
    let b2 = |l0: f64, l1: f64, h0: f64, h1: f64| {
        Box3::new(2, [l0, l1, 0.0], [h0, h1, 0.0]).unwrap()
    };
    match id {
        TheoremId::Bbl | TheoremId::LpBbl => vec![
            Fixture::new(
                "ind-pair-1d",
                Density::Lebesgue,
                1,
                FixtureKind::FunctionPair(
                    indicator_1d(-1.0, 0.5, FN_RES_1D),
                    indicator_1d(-0.2, 1.2, FN_RES_1D),
                ),
            ),
            Fixture::new(
                "tri-pair-1d",
                Density::Lebesgue,
                1,
                FixtureKind::FunctionPair(
                    triangular_1d(1.0, FN_RES_1D),
                    triangular_1d(1.5, FN_RES_1D),
                ),
            ),
            Fixture::new(
                "gauss-pair-1d",
                Density::Lebesgue,
                1,
                FixtureKind::FunctionPair(
                    gaussian_1d(0.5, 2.0, FN_RES_1D),
                    gaussian_1d(0.8, 2.5, FN_RES_1D),
                ),
            ),
        ],
        TheoremId::LpBmiSets => vec![
            Fixture::new(
                "unit-dilates-1d",
                Density::Lebesgue,
                1,
                FixtureKind::BoxPair(b1(0.0, 1.0), b1(0.0, 1.0)),
            ),
            Fixture::new(
                "intervals-1d",
                Density::Lebesgue,
                1,
                FixtureKind::BoxPair(b1(0.0, 0.5), b1(0.0, 0.8)),
            ),
            Fixture::new(
                "rects-2d",
                Density::Lebesgue,
                2,
                FixtureKind::BoxPair(b2(0.0, 0.0, 1.0, 0.5), b2(0.0, 0.0, 0.4, 1.2)),
            ),
        ],
        TheoremId::LpBmiSconcave => vec![
            Fixture::new(
                "triangular-density-1d",
                Density::SConcavePower { s: 1.0, radius: 2.0 },
                1,
                FixtureKind::BoxPair(b1(0.0, 0.5), b1(0.0, 0.8)),
            ),
            Fixture::new(
                "cone-density-2d",
                Density::SConcavePower { s: 1.0, radius: 2.0 },
                2,
                FixtureKind::BoxPair(b2(0.0, 0.0, 0.5, 0.4), b2(0.0, 0.0, 0.3, 0.7)),
            ),
            Fixture::new(
                "sconcave-dilates-1d",
                Density::SConcavePower { s: 2.0, radius: 3.0 },
                1,
                FixtureKind::BoxPair(b1(-0.5, 0.5), b1(-0.5, 0.5)),
            ),
        ],
        TheoremId::LpPliProduct => vec![
            Fixture::new(
                "tri-pair-gaussmu-1d",
                Density::Gaussian { dim: 1 },
                1,
                FixtureKind::FunctionPair(
                    triangular_1d(1.0, FN_RES_1D),
                    triangular_1d(1.5, FN_RES_1D),
                ),
            ),
            Fixture::new(
                "boxprod-pair-2d",
                Density::QuasiConcaveProduct {
                    factors: vec![
                        crate::densities::Profile1d::Gaussian { sigma: 1.0 },
                        crate::densities::Profile1d::Triangular { width: 3.0 },
                    ],
                },
                2,
                FixtureKind::FunctionPair(
                    box_indicator_2d(1.0, 0.5, 1.6, FN_RES_2D),
                    box_indicator_2d(0.5, 1.0, 1.6, FN_RES_2D),
                ),
            ),
            Fixture::new(
                "shifted-reject-1d",
                Density::Gaussian { dim: 1 },
                1,
                FixtureKind::FunctionPair(
                    GridFunction::from_fn(grid_1d(-0.25, 1.75, FN_RES_1D), |x| {
                        (1.0 - (x[0] - 0.75).abs()).max(0.0)
                    }),
                    triangular_1d(1.0, FN_RES_1D),
                ),
            ),
        ],
        TheoremId::LpPliSets | TheoremId::LpBmiProduct => vec![
            Fixture::new(
                "origin-boxes-gaussmu-1d",
                Density::Gaussian { dim: 1 },
                1,
                FixtureKind::BoxPair(b1(-0.75, 0.5), b1(-0.4, 1.0)),
            ),
            Fixture::new(
                "origin-boxes-triprod-2d",
                Density::QuasiConcaveProduct {
                    factors: vec![
                        crate::densities::Profile1d::Triangular { width: 3.0 },
                        crate::densities::Profile1d::Triangular { width: 2.5 },
                    ],
                },
                2,
                FixtureKind::BoxPair(b2(-0.8, -0.4, 0.6, 0.5), b2(-0.3, -0.9, 0.5, 0.6)),
            ),
            Fixture::new(
                "origin-dilates-1d",
                Density::Gaussian { dim: 1 },
                1,
                FixtureKind::BoxPair(b1(-0.6, 0.6), b1(-0.6, 0.6)),
            ),
        ],
        TheoremId::Lemma1d => vec![
            Fixture::new(
                "lemma-tri-mu",
                Density::QuasiConcaveProduct {
                    factors: vec![crate::densities::Profile1d::Triangular { width: 3.0 }],
                },
                1,
                FixtureKind::BoxPair(b1(0.2, 1.0), b1(-0.5, 0.3)),
            ),
            Fixture::new(
                "lemma-gauss-mu",
                Density::Gaussian { dim: 1 },
                1,
                FixtureKind::BoxPair(b1(-1.0, 0.4), b1(-0.2, 1.1)),
            ),
        ],
        TheoremId::PlRecovery => vec![
            Fixture::new(
                "gauss-pair-1d",
                Density::Lebesgue,
                1,
                FixtureKind::FunctionPair(
                    gaussian_1d(0.5, 2.0, FN_RES_1D),
                    gaussian_1d(0.8, 2.5, FN_RES_1D),
                ),
            ),
            Fixture::new(
                "tri-pair-1d",
                Density::Lebesgue,
                1,
                FixtureKind::FunctionPair(
                    triangular_1d(1.0, FN_RES_1D),
                    triangular_1d(1.5, FN_RES_1D),
                ),
            ),
        ],
        TheoremId::Mfi => vec![
            Fixture::new(
                "mfi-ind-1d",
                Density::Lebesgue,
                1,
                FixtureKind::FunctionPair(
                    indicator_1d(-1.0, 1.0, FN_RES_1D),
                    indicator_1d(-0.75, 0.75, FN_RES_1D),
                ),
            ),
            Fixture::new(
                "mfi-gauss-mu-1d",
                Density::Gaussian { dim: 1 },
                1,
                FixtureKind::FunctionPair(
                    indicator_1d(-1.0, 1.0, FN_RES_1D),
                    indicator_1d(-0.8, 0.8, FN_RES_1D),
                ),
            ),
        ],
        TheoremId::Ismi => vec![
            Fixture::new(
                "ismi-intervals",
                Density::Lebesgue,
                1,
                FixtureKind::BodyPair(
                    SupportBody::interval(-1.0, 1.0).unwrap(),
                    SupportBody::interval(-0.6, 0.8).unwrap(),
                ),
            ),
            Fixture::new(
                "ismi-equal-intervals",
                Density::Lebesgue,
                1,
                FixtureKind::BodyPair(
                    SupportBody::interval(-1.0, 1.0).unwrap(),
                    SupportBody::interval(-1.0, 1.0).unwrap(),
                ),
            ),
            Fixture::new(
                "ismi-disk-rect",
                Density::Lebesgue,
                2,
                FixtureKind::BodyPair(
                    SupportBody::disk(1.0, 180).unwrap(),
                    SupportBody::rectangle(-0.8, 0.6, -0.5, 0.9, 180).unwrap(),
                ),
            ),
        ],
        TheoremId::GzProductMin | TheoremId::GzLpProduct => vec![
            Fixture::new(
                "gz-box-1d",
                Density::QuasiConcaveProduct {
                    factors: vec![crate::densities::Profile1d::Triangular { width: 3.0 }],
                },
                1,
                FixtureKind::FunctionPair(
                    indicator_1d(-1.0, 0.5, FN_RES_1D),
                    indicator_1d(-0.75, 1.0, FN_RES_1D),
                ),
            ),
            Fixture::new(
                "gz-box-2d",
                Density::QuasiConcaveProduct {
                    factors: vec![
                        crate::densities::Profile1d::Gaussian { sigma: 1.2 },
                        crate::densities::Profile1d::Triangular { width: 3.0 },
                    ],
                },
                2,
                FixtureKind::FunctionPair(
                    box_indicator_2d(1.0, 0.5, 1.6, FN_RES_2D),
                    box_indicator_2d(0.5, 1.0, 1.6, FN_RES_2D),
                ),
            ),
            Fixture::new(
                "gz-diamond-reject-2d",
                Density::QuasiConcaveProduct {
                    factors: vec![
                        crate::densities::Profile1d::Triangular { width: 3.0 },
                        crate::densities::Profile1d::Triangular { width: 3.0 },
                    ],
                },
                2,
                FixtureKind::FunctionPair(
                    diamond_indicator_2d(1.0, 1.4, FN_RES_2D),
                    box_indicator_2d(0.6, 0.6, 1.4, FN_RES_2D),
                ),
            ),
        ],
        TheoremId::GzLogconcaveC => vec![
            Fixture::new(
                "gzc-gauss-intervals",
                Density::Gaussian { dim: 1 },
                1,
                FixtureKind::BodyPair(
                    SupportBody::interval(-1.0, 1.0).unwrap(),
                    SupportBody::interval(-0.5, 1.5).unwrap(),
                ),
            ),
            Fixture::new(
                "gzc-symmetric",
                Density::Gaussian { dim: 1 },
                1,
                FixtureKind::BodyPair(
                    SupportBody::interval(-1.0, 1.0).unwrap(),
                    SupportBody::interval(-1.0, 1.0).unwrap(),
                ),
            ),
            Fixture::new(
                "gzc-gauss-disk-rect",
                Density::Gaussian { dim: 2 },
                2,
                FixtureKind::BodyPair(
                    SupportBody::disk(1.0, 180).unwrap(),
                    SupportBody::rectangle(-0.7, 0.9, -0.6, 0.8, 180).unwrap(),
                ),
            ),
            Fixture::new(
                "gzc-logexp-intervals",
                Density::LogConcaveExp {
                    potential: vec![(-4.0, 4.0), (0.0, 0.0), (4.0, 4.0)],
                },
                1,
                FixtureKind::BodyPair(
                    SupportBody::interval(-1.2, 0.8).unwrap(),
                    SupportBody::interval(-0.5, 1.5).unwrap(),
                ),
            ),
        ],
        TheoremId::GzRadialDecay => vec![
            Fixture::new(
                "gzr-gauss-intervals",
                Density::Gaussian { dim: 1 },
                1,
                FixtureKind::BodyPair(
                    SupportBody::interval(-1.0, 1.0).unwrap(),
                    SupportBody::interval(-0.5, 1.5).unwrap(),
                ),
            ),
            Fixture::new(
                "gzr-cone-disk",
                Density::SConcavePower { s: 1.0, radius: 3.0 },
                2,
                FixtureKind::BodyPair(
                    SupportBody::disk(1.0, 180).unwrap(),
                    SupportBody::rectangle(-0.8, 0.8, -0.6, 0.6, 180).unwrap(),
                ),
            ),
        ],
    }
}

/// Per-theorem sweep grids for the built-in selftest.
fn selftest_grids(id: TheoremId) -> (Vec<f64>, Vec<f64>, Vec<SValue>) {
    match id {
        TheoremId::Bbl => (
            vec![1.0],
            vec![0.3, 0.7],
            vec![SValue::Zero, SValue::Finite(1.0), SValue::Finite(2.0)],
        ),
        TheoremId::LpBbl => (
            vec![1.0, 2.0],
            vec![0.3, 0.7],
            vec![SValue::Zero, SValue::Finite(1.0), SValue::PosInf],
        ),
        TheoremId::LpBmiSets => (vec![1.0, 1.5, 2.0, 4.0], vec![0.1, 0.5, 0.9], Vec::new()),
        TheoremId::LpBmiSconcave => (vec![1.0, 2.0], vec![0.25, 0.5, 0.75], Vec::new()),
        TheoremId::LpPliProduct => (vec![1.0, 2.0], vec![0.3, 0.6], Vec::new()),
        TheoremId::LpPliSets => (vec![1.0, 2.0, 4.0], vec![0.25, 0.5, 0.75], Vec::new()),
        TheoremId::LpBmiProduct => (vec![1.5, 2.0, 4.0], vec![0.25, 0.5, 0.75], Vec::new()),
        TheoremId::Lemma1d => (vec![1.0, 2.0, 4.0], vec![0.25, 0.5, 0.75], Vec::new()),
        TheoremId::PlRecovery => (vec![1.0], vec![0.3, 0.5, 0.7], Vec::new()),
        TheoremId::Mfi => (
            vec![1.0, 2.0],
            vec![0.5],
            vec![SValue::Finite(1.0), SValue::Finite(2.0), SValue::PosInf],
        ),
        TheoremId::Ismi => (vec![1.0, 2.0], vec![0.5], Vec::new()),
        TheoremId::GzProductMin => (vec![1.0], vec![0.25, 0.5, 0.75], Vec::new()),
        TheoremId::GzLpProduct => (vec![1.0, 2.0], vec![0.3, 0.7], Vec::new()),
        TheoremId::GzLogconcaveC => (vec![1.0, 2.0], vec![0.5], Vec::new()),
        TheoremId::GzRadialDecay => (vec![1.0, 2.0], vec![0.25, 0.75], Vec::new()),
    }
}

/// Run every registered inequality over its built-in fixtures and sweep
/// grids. The report list is deterministic.
pub fn selftest(base: &CheckParams) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for id in TheoremId::ALL {
        let fixtures = builtin_fixtures(id);
        let (pg, tg, sg) = selftest_grids(id);
        out.extend(sweep(id, &fixtures, &pg, &tg, &sg, base)?);
    }
    Ok(out)
}
