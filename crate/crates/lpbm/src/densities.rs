//! Density models for the measure classes of interest and midpoint-rule
//! integration of sets and functions against them.

use crate::geometry::{SampledSet, SupportBody};
use crate::grid::{pairwise_sum, Box3, Grid, GridFunction};
use crate::{Error, Result};

/// Declared concavity class of a density.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ConcavityClass {
    /// phi^{1/s} is concave on its support.
    SConcave(f64),
    LogConcave,
    /// Product of 1-d quasi-concave factors, each maximal at 0.
    QuasiConcaveProduct,
}

/// A 1-d profile with its maximum at 0, used as a product factor.
#[derive(Clone, Debug)]
pub enum Profile1d {
    Gaussian { sigma: f64 },
    Exponential { rate: f64 },
    Triangular { width: f64 },
    Cauchy,
    Indicator { halfwidth: f64 },
}

impl Profile1d {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Profile1d::Gaussian { sigma } => (-0.5 * (x / sigma).powi(2)).exp(),
            Profile1d::Exponential { rate } => (-rate * x.abs()).exp(),
            Profile1d::Triangular { width } => (1.0 - x.abs() / width).max(0.0),
            Profile1d::Cauchy => 1.0 / (1.0 + x * x),
            Profile1d::Indicator { halfwidth } => {
                if x.abs() <= *halfwidth {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }
}

/// Tagged density with closed-form evaluator and declared concavity class.
#[derive(Clone, Debug)]
pub enum Density {
    Lebesgue,
    /// Standard normal density in `dim` variables, normalized to mass 1.
    Gaussian { dim: usize },
    /// phi(x) = max(1 - |x|/radius, 0)^s, an s-concave cone profile.
    SConcavePower { s: f64, radius: f64 },
    /// phi(x) = exp(-V(x)) with V a convex piecewise-linear table (1-d).
    LogConcaveExp { potential: Vec<(f64, f64)> },
    /// Product of 1-d quasi-concave factors with maxima at 0.
    QuasiConcaveProduct { factors: Vec<Profile1d> },
}

impl Density {
    pub fn eval(&self, p: &[f64; 3], dim: usize) -> f64 {
        match self {
            Density::Lebesgue => 1.0,
            Density::Gaussian { dim: d } => {
                debug_assert_eq!(*d, dim);
                let r2: f64 = (0..dim).map(|a| p[a] * p[a]).sum();
                let norm = (2.0 * std::f64::consts::PI).powf(-(dim as f64) / 2.0);
                norm * (-0.5 * r2).exp()
            }
            Density::SConcavePower { s, radius } => {
                let r: f64 = (0..dim).map(|a| p[a] * p[a]).sum::<f64>().sqrt();
                (1.0 - r / radius).max(0.0).powf(*s)
            }
            Density::LogConcaveExp { potential } => {
                (-interp_linear(potential, p[0])).exp()
            }
            Density::QuasiConcaveProduct { factors } => {
                debug_assert_eq!(factors.len(), dim);
                (0..dim).map(|a| factors[a].eval(p[a])).product()
            }
        }
    }

    pub fn concavity_class(&self) -> ConcavityClass {
        match self {
            Density::Lebesgue => ConcavityClass::SConcave(f64::INFINITY),
            Density::Gaussian { .. } => ConcavityClass::LogConcave,
            Density::SConcavePower { s, .. } => ConcavityClass::SConcave(*s),
            Density::LogConcaveExp { .. } => ConcavityClass::LogConcave,
            Density::QuasiConcaveProduct { .. } => ConcavityClass::QuasiConcaveProduct,
        }
    }

    /// Whether the evaluator attains its maximum at the origin on the grid.
    pub fn max_at_origin(&self, q: &Quadrature) -> bool {
        let grid = match Grid::uniform(q.bounds, q.resolution) {
            Ok(g) => g,
            Err(_) => return false,
        };
        let at0 = self.eval(&[0.0, 0.0, 0.0], q.bounds.dim);
        (0..grid.cell_count()).all(|i| self.eval(&grid.center(i), q.bounds.dim) <= at0 + 1e-12)
    }
}

/// Piecewise-linear interpolation of a sorted (x, value) table, extended
/// linearly beyond the endpoints (the extension of a convex table is convex).
fn interp_linear(table: &[(f64, f64)], x: f64) -> f64 {
    debug_assert!(table.len() >= 2);
    let n = table.len();
    let (i0, i1) = if x <= table[0].0 {
        (0, 1)
    } else if x >= table[n - 1].0 {
        (n - 2, n - 1)
    } else {
        let j = table.partition_point(|&(xi, _)| xi <= x);
        (j - 1, j)
    };
    let (x0, v0) = table[i0];
    let (x1, v1) = table[i1];
    v0 + (v1 - v0) * (x - x0) / (x1 - x0)
}

/// Midpoint-rule integration box and resolution.
#[derive(Clone, Copy, Debug)]
pub struct Quadrature {
    pub bounds: Box3,
    pub resolution: usize,
}

impl Quadrature {
    pub fn new(bounds: Box3, resolution: usize) -> Result<Self> {
        if resolution < 16 {
            return Err(Error::InvalidParameter(format!(
                "resolution {resolution} below the minimum of 16"
            )));
        }
        Ok(Self { bounds, resolution })
    }
}

/// Midpoint integral of phi over the set's grid-mask form, evaluated on the
/// quadrature grid.
pub fn measure_of_set(mu: &Density, a: &SampledSet, q: &Quadrature) -> Result<f64> {
    let mask = a
        .mask
        .as_ref()
        .ok_or_else(|| Error::InvalidParameter("set lacks a grid-mask form".into()))?;
    if !q.bounds.encloses(&mask.grid.bounds, 1e-9) {
        return Err(Error::Domain("set exceeds the quadrature box".into()));
    }
    let grid = Grid::uniform(q.bounds, q.resolution)?;
    let cv = grid.cell_volume();
    let vals: Vec<f64> = (0..grid.cell_count())
        .map(|i| {
            let c = grid.center(i);
            if mask.contains_point(&c) {
                mu.eval(&c, grid.dim())
            } else {
                0.0
            }
        })
        .collect();
    Ok(pairwise_sum(&vals) * cv)
}

/// Midpoint integral of f * phi over f's own grid, no box validation.
pub fn mu_integral(mu: &Density, f: &GridFunction) -> f64 {
    let cv = f.grid.cell_volume();
    let vals: Vec<f64> = (0..f.values.len())
        .map(|i| {
            let v = f.values[i];
            if v > 0.0 {
                v * mu.eval(&f.grid.center(i), f.dim())
            } else {
                0.0
            }
        })
        .collect();
    pairwise_sum(&vals) * cv
}

/// Midpoint integral of f * phi over f's own grid.
pub fn integrate(mu: &Density, f: &GridFunction, q: &Quadrature) -> Result<f64> {
    if !q.bounds.encloses(&f.grid.bounds, 1e-9) {
        return Err(Error::Domain("function grid exceeds the quadrature box".into()));
    }
    let cv = f.grid.cell_volume();
    let vals: Vec<f64> = (0..f.values.len())
        .map(|i| {
            let v = f.values[i];
            if v > 0.0 {
                v * mu.eval(&f.grid.center(i), f.dim())
            } else {
                0.0
            }
        })
        .collect();
    Ok(pairwise_sum(&vals) * cv)
}

/// Integral of phi over a union of axis-aligned boxes. Boundaries are exact:
/// the union is compressed into elementary cells that are fully inside or
/// outside, and phi is integrated per cell by midpoint subdivision.
pub fn measure_of_box_union(mu: &Density, boxes: &[Box3], resolution: usize) -> Result<f64> {
    if boxes.is_empty() {
        return Ok(0.0);
    }
    let dim = boxes[0].dim;
    let mut hull = boxes[0];
    for b in &boxes[1..] {
        if b.dim != dim {
            return Err(Error::DimensionMismatch("box dims differ".into()));
        }
        hull = hull.hull(b);
    }
    let mut cuts: Vec<Vec<f64>> = vec![Vec::new(); dim];
    for b in boxes {
        for a in 0..dim {
            cuts[a].push(b.lo[a]);
            cuts[a].push(b.hi[a]);
        }
    }
    for c in cuts.iter_mut() {
        c.sort_by(|x, y| x.partial_cmp(y).unwrap());
        c.dedup_by(|a, b| (*a - *b).abs() < 1e-13);
    }
    let target_step: Vec<f64> =
        (0..dim).map(|a| (hull.extent(a) / resolution as f64).max(1e-12)).collect();
    let sizes: Vec<usize> = cuts.iter().map(|c| c.len() - 1).collect();
    let total: usize = sizes.iter().product();
    let mut acc: Vec<f64> = Vec::new();
    for flat in 0..total {
        let mut rem = flat;
        let mut lo = [0.0f64; 3];
        let mut hi = [0.0f64; 3];
        for a in 0..dim {
            let i = rem % sizes[a];
            rem /= sizes[a];
            lo[a] = cuts[a][i];
            hi[a] = cuts[a][i + 1];
        }
        let mut mid = [0.0f64; 3];
        for a in 0..dim {
            mid[a] = 0.5 * (lo[a] + hi[a]);
        }
        if !boxes.iter().any(|b| b.contains(&mid)) {
            continue;
        }
        // Midpoint subdivision of the elementary cell at roughly the target step.
        let sub: Vec<usize> = (0..dim)
            .map(|a| (((hi[a] - lo[a]) / target_step[a]).ceil() as usize).max(1))
            .collect();
        let subtotal: usize = sub.iter().product();
        let mut cellv = 1.0;
        for a in 0..dim {
            cellv *= (hi[a] - lo[a]) / sub[a] as f64;
        }
        for sflat in 0..subtotal {
            let mut srem = sflat;
            let mut p = [0.0f64; 3];
            for a in 0..dim {
                let i = srem % sub[a];
                srem /= sub[a];
                p[a] = lo[a] + (i as f64 + 0.5) * (hi[a] - lo[a]) / sub[a] as f64;
            }
            acc.push(mu.eval(&p, dim) * cellv);
        }
    }
    Ok(pairwise_sum(&acc))
}

/// Integral of phi over a convex support body, with exact boundary handling:
/// 1-d uses composite midpoint on the exact interval, 2-d scans horizontal
/// slices whose x-ranges come from the half-plane constraints.
pub fn measure_of_body(mu: &Density, body: &SupportBody, resolution: usize) -> Result<f64> {
    let res = resolution.max(16);
    if body.dim == 1 {
        let (lo, hi) = body.interval_bounds();
        return Ok(line_integral(mu, lo, hi, 0.0, res, 1));
    }
    let bb = body.bounding_box();
    let dy = bb.extent(1) / res as f64;
    let mut rows: Vec<f64> = Vec::with_capacity(res);
    for j in 0..res {
        let y = bb.lo[1] + (j as f64 + 0.5) * dy;
        if let Some((xlo, xhi)) = body.x_range_at_y(y) {
            if xhi > xlo {
                rows.push(line_integral(mu, xlo, xhi, y, res, 2) * dy);
            }
        }
    }
    Ok(pairwise_sum(&rows))
}

fn line_integral(mu: &Density, lo: f64, hi: f64, y: f64, n: usize, dim: usize) -> f64 {
    let dx = (hi - lo) / n as f64;
    let vals: Vec<f64> = (0..n)
        .map(|i| mu.eval(&[lo + (i as f64 + 0.5) * dx, y, 0.0], dim))
        .collect();
    pairwise_sum(&vals) * dx
}

/// Result of a concavity-class verification pass.
#[derive(Clone, Copy, Debug)]
pub struct ConcavityReport {
    pub class: ConcavityClass,
    /// Most negative midpoint violation found (0 when none).
    pub worst_violation: f64,
}

/// Verify the declared class by midpoint sampling on the quadrature grid,
/// reporting the most negative violation of the class inequality.
pub fn classify_concavity(mu: &Density, q: &Quadrature) -> Result<ConcavityReport> {
    let dim = q.bounds.dim;
    // Sample a deterministic sub-grid; pair count grows quadratically.
    let per_axis = if dim == 1 { 64 } else { 16 };
    let grid = Grid::uniform(q.bounds, per_axis)?;
    let pts: Vec<[f64; 3]> = (0..grid.cell_count()).map(|i| grid.center(i)).collect();
    let class = mu.concavity_class();
    let mut worst = 0.0f64;
    for (i, x) in pts.iter().enumerate() {
        let fx = mu.eval(x, dim);
        for y in pts.iter().skip(i + 1) {
            let fy = mu.eval(y, dim);
            let mid = [
                0.5 * (x[0] + y[0]),
                0.5 * (x[1] + y[1]),
                0.5 * (x[2] + y[2]),
            ];
            let fm = mu.eval(&mid, dim);
            let viol = match class {
                ConcavityClass::SConcave(s) => {
                    if s.is_infinite() {
                        0.0
                    } else if fx <= 0.0 || fy <= 0.0 {
                        // Support endpoints carry no constraint: concavity is
                        // required on the support only.
                        0.0
                    } else {
                        fm.powf(1.0 / s) - 0.5 * (fx.powf(1.0 / s) + fy.powf(1.0 / s))
                    }
                }
                ConcavityClass::LogConcave => {
                    if fx <= 0.0 || fy <= 0.0 || fm <= 0.0 {
                        if fx > 0.0 && fy > 0.0 && fm <= 0.0 {
                            f64::NEG_INFINITY
                        } else {
                            0.0
                        }
                    } else {
                        fm.ln() - 0.5 * (fx.ln() + fy.ln())
                    }
                }
                ConcavityClass::QuasiConcaveProduct => fm - fx.min(fy),
            };
            worst = worst.min(viol);
        }
    }
    Ok(ConcavityReport { class, worst_violation: worst })
}
