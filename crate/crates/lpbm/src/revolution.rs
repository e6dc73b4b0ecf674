//! Bodies of revolution over a profile function, their Fubini volume
//! identities, the supremal-convolution inclusion check, and the moment
//! (ball) and level bodies of a function with their sandwich ratio.

use crate::geometry::MaskGrid;
use crate::grid::{pairwise_sum, GridFunction};
use crate::supconv::{oplus_ps, ConvolutionParams, SValue};
use crate::{Error, Result};

/// Volume of the d-dimensional Euclidean unit ball via the two-step
/// recursion V_d = V_{d-2} * 2 pi / d.
pub fn ball_volume(d: usize) -> f64 {
    match d {
        0 => 1.0,
        1 => 2.0,
        _ => ball_volume(d - 2) * 2.0 * std::f64::consts::PI / d as f64,
    }
}

/// The region {(x, y) : x in supp w, |y| <= w(x)^{1/s}} with an s-dimensional
/// spherical fiber over each base point.
#[derive(Clone, Debug)]
pub struct RevolutionBody {
    pub fiber_dim: usize,
    pub profile: GridFunction,
}

impl RevolutionBody {
    pub fn new(fiber_dim: usize, profile: GridFunction) -> Result<Self> {
        if fiber_dim == 0 {
            return Err(Error::InvalidParameter("fiber dimension must be >= 1".into()));
        }
        Ok(Self { fiber_dim, profile })
    }
}

/// Fubini closed form: |A_s(w)| = |B_2^s| * integral of w.
pub fn revolution_volume(body: &RevolutionBody) -> f64 {
    ball_volume(body.fiber_dim) * body.profile.integral()
}

/// Brute-force (n+s)-dimensional grid integration of the same region,
/// restricted to n + s <= 3. Cross-check oracle for the closed form.
pub fn revolution_volume_direct(body: &RevolutionBody, fiber_res: usize) -> Result<f64> {
    let n = body.profile.dim();
    let s = body.fiber_dim;
    if n + s > 3 {
        return Err(Error::DimensionMismatch(format!(
            "direct integration of a {}+{}-dimensional region",
            n, s
        )));
    }
    let wmax = body.profile.max_value();
    if wmax == 0.0 {
        return Ok(0.0);
    }
    let r = wmax.powf(1.0 / s as f64);
    let dy = 2.0 * r / fiber_res as f64;
    let fiber_cells: usize = fiber_res.pow(s as u32);
    let base_cv = body.profile.grid.cell_volume();
    let mut acc: Vec<f64> = Vec::new();
    for (ci, &w) in body.profile.values.iter().enumerate() {
        if w <= 0.0 {
            continue;
        }
        let rad2 = w.powf(2.0 / s as f64);
        let mut count = 0usize;
        for fc in 0..fiber_cells {
            let mut rem = fc;
            let mut r2 = 0.0f64;
            for _ in 0..s {
                let i = rem % fiber_res;
                rem /= fiber_res;
                let y = -r + (i as f64 + 0.5) * dy;
                r2 += y * y;
            }
            if r2 <= rad2 {
                count += 1;
            }
        }
        let _ = ci;
        acc.push(count as f64 * dy.powi(s as i32) * base_cv);
    }
    Ok(pairwise_sum(&acc))
}

/// The product of m independent copies of a base profile, representing
/// w~(x_1..x_m) = prod w(x_i).
#[derive(Clone, Debug)]
pub struct MultipleFunction {
    pub base: GridFunction,
    pub copies: usize,
}

impl MultipleFunction {
    pub fn new(base: GridFunction, copies: usize) -> Result<Self> {
        if copies == 0 {
            return Err(Error::InvalidParameter("copy count must be >= 1".into()));
        }
        Ok(Self { base, copies })
    }
}

/// Closed form for the revolution body of the product function with an
/// ell-dimensional fiber: |B_2^ell| * (integral of w)^m.
pub fn multiple_volume(mf: &MultipleFunction, ell: usize) -> f64 {
    ball_volume(ell) * mf.base.integral().powi(mf.copies as i32)
}

/// Brute-force grid integration over all nm + ell axes (1-d base only,
/// nm + ell <= 4): cells (x_1..x_m, y) with |y| <= w~(x)^{1/ell}.
pub fn multiple_volume_direct(mf: &MultipleFunction, ell: usize, fiber_res: usize) -> Result<f64> {
    let n = mf.base.dim();
    let m = mf.copies;
    if n != 1 || n * m + ell > 4 {
        return Err(Error::DimensionMismatch(format!(
            "direct integration of a {}x{}+{}-dimensional region",
            n, m, ell
        )));
    }
    let wmax = mf.base.max_value();
    if wmax == 0.0 {
        return Ok(0.0);
    }
    let prod_max = wmax.powi(m as i32);
    let r = prod_max.powf(1.0 / ell as f64);
    let dy = 2.0 * r / fiber_res as f64;
    let base_cells = mf.base.values.len();
    let base_total: usize = base_cells.pow(m as u32);
    let fiber_cells: usize = fiber_res.pow(ell as u32);
    let base_cv = mf.base.grid.cell_volume().powi(m as i32);
    let mut acc: Vec<f64> = Vec::new();
    for bflat in 0..base_total {
        let mut rem = bflat;
        let mut w = 1.0f64;
        for _ in 0..m {
            let i = rem % base_cells;
            rem /= base_cells;
            w *= mf.base.values[i];
        }
        if w <= 0.0 {
            continue;
        }
        let rad2 = w.powf(2.0 / ell as f64);
        let mut count = 0usize;
        for fc in 0..fiber_cells {
            let mut frem = fc;
            let mut r2 = 0.0f64;
            for _ in 0..ell {
                let i = frem % fiber_res;
                frem /= fiber_res;
                let y = -r + (i as f64 + 0.5) * dy;
                r2 += y * y;
            }
            if r2 <= rad2 {
                count += 1;
            }
        }
        acc.push(count as f64 * dy.powi(ell as i32) * base_cv);
    }
    Ok(pairwise_sum(&acc))
}

/// Outcome of the revolution-body inclusion check.
#[derive(Clone, Copy, Debug)]
pub struct InclusionReport {
    pub checked: usize,
    pub violations: usize,
}

/// Verifies that the p-combination of the revolution bodies of f and g lies
/// inside the revolution body of their supremal convolution. Points of the
/// combined body are sampled on the (base, single fiber axis) slice, which
/// is faithful by rotational symmetry, and membership allows one grid cell
/// of slack.
pub fn check_inclusion_lemma(
    f: &GridFunction,
    g: &GridFunction,
    params: &ConvolutionParams,
) -> Result<InclusionReport> {
    if f.dim() != 1 || g.dim() != 1 {
        return Err(Error::DimensionMismatch(
            "inclusion check supports 1-d base profiles".into(),
        ));
    }
    let s = match params.s {
        SValue::Finite(sv) if sv > 0.0 && sv.fract() == 0.0 => sv,
        _ => {
            return Err(Error::InvalidParameter(
                "fiber dimension must be a positive integer".into(),
            ))
        }
    };
    let h = oplus_ps(f, g, params, 1.0 - params.t, params.t)?;
    let slice = |w: &GridFunction| -> Vec<[f64; 2]> {
        let cells = w.support_cells();
        let stride = (cells.len() / 24).max(1);
        let mut pts = Vec::new();
        for &ci in cells.iter().step_by(stride) {
            let x = w.grid.center(ci)[0];
            let rad = w.values[ci].powf(1.0 / s);
            for k in 0..7 {
                let r = -rad + 2.0 * rad * k as f64 / 6.0;
                pts.push([x, r]);
            }
        }
        pts
    };
    let pf = slice(f);
    let pg = slice(g);
    let lambdas = params.lambdas(&[]);
    let slack = h.grid.max_step();
    let mut checked = 0usize;
    let mut violations = 0usize;
    for &lam in &lambdas {
        let w = crate::means::scaled_weight_pair(params.p, 1.0 - params.t, params.t, lam)?;
        for a in &pf {
            for b in &pg {
                let zx = w.0 * a[0] + w.1 * b[0];
                let zy = w.0 * a[1] + w.1 * b[1];
                checked += 1;
                // Largest h value within one cell of zx.
                let mut hv = 0.0f64;
                for dxi in [-1.0, 0.0, 1.0] {
                    hv = hv.max(h.sample_nearest(&[zx + dxi * slack, 0.0, 0.0]));
                }
                let bound = hv.powf(1.0 / s) + slack;
                if zy.abs() > bound {
                    violations += 1;
                }
            }
        }
    }
    Ok(InclusionReport { checked, violations })
}

/// A star body given by radial values over the same direction layout as
/// `SupportBody`: two directions in 1-d, equally spaced angles in 2-d.
#[derive(Clone, Debug)]
pub struct RadialBody {
    pub dim: usize,
    pub rho: Vec<f64>,
}

impl RadialBody {
    pub fn direction(&self, k: usize) -> [f64; 2] {
        if self.dim == 1 {
            if k == 0 {
                [1.0, 0.0]
            } else {
                [-1.0, 0.0]
            }
        } else {
            let th = 2.0 * std::f64::consts::PI * k as f64 / self.rho.len() as f64;
            [th.cos(), th.sin()]
        }
    }

    /// Radial value toward a unit direction, nearest sampled direction.
    pub fn radius_toward(&self, u: [f64; 2]) -> f64 {
        if self.dim == 1 {
            return if u[0] >= 0.0 { self.rho[0] } else { self.rho[1] };
        }
        let th = u[1].atan2(u[0]).rem_euclid(2.0 * std::f64::consts::PI);
        let k = (th / (2.0 * std::f64::consts::PI) * self.rho.len() as f64).round() as usize
            % self.rho.len();
        self.rho[k]
    }

    pub fn volume(&self) -> f64 {
        if self.dim == 1 {
            self.rho[0] + self.rho[1]
        } else {
            let dth = 2.0 * std::f64::consts::PI / self.rho.len() as f64;
            0.5 * self.rho.iter().map(|r| r * r).sum::<f64>() * dth
        }
    }
}

/// Radial-quadrature point count for the moment transform.
const RADIAL_POINTS: usize = 4096;

/// The moment (ball) body: rho(u) = [(q/||f||_inf) int_0^inf f(ru) r^{q-1} dr]^{1/q},
/// computed per direction by composite midpoint out to the grid box.
pub fn ball_body(f: &GridFunction, qexp: f64, directions: usize) -> Result<RadialBody> {
    if !(qexp > 0.0) {
        return Err(Error::InvalidParameter("moment exponent must be positive".into()));
    }
    let fmax = f.max_value();
    if fmax <= 0.0 {
        return Err(Error::EmptyInput("function is identically zero".into()));
    }
    let f0 = f.sample_nearest(&[0.0, 0.0, 0.0]);
    if f0 < fmax * (1.0 - 1e-9) {
        return Err(Error::Domain(
            "function does not attain its maximum at the origin".into(),
        ));
    }
    let dim = f.dim();
    let dirs: Vec<[f64; 2]> = if dim == 1 {
        vec![[1.0, 0.0], [-1.0, 0.0]]
    } else {
        (0..directions)
            .map(|k| {
                let th = 2.0 * std::f64::consts::PI * k as f64 / directions as f64;
                [th.cos(), th.sin()]
            })
            .collect()
    };
    let mut rho = Vec::with_capacity(dirs.len());
    let mut any_positive = false;
    for u in &dirs {
        // Ray exits the box at radius rmax; f vanishes beyond.
        let b = &f.grid.bounds;
        let mut rmax = f64::INFINITY;
        for a in 0..dim {
            let ua = if a == 0 { u[0] } else { u[1] };
            if ua > 1e-12 {
                rmax = rmax.min(b.hi[a] / ua);
            } else if ua < -1e-12 {
                rmax = rmax.min(b.lo[a] / ua);
            }
        }
        let dr = rmax / RADIAL_POINTS as f64;
        let vals: Vec<f64> = (0..RADIAL_POINTS)
            .map(|i| {
                let r = (i as f64 + 0.5) * dr;
                let p = [r * u[0], r * u[1], 0.0];
                f.sample_linear(&p) * r.powf(qexp - 1.0)
            })
            .collect();
        let moment = pairwise_sum(&vals) * dr;
        let v = (qexp / fmax * moment).powf(1.0 / qexp);
        if v > 0.0 {
            any_positive = true;
        }
        rho.push(v);
    }
    if !any_positive {
        return Err(Error::EmptyInput("moment transform vanished in every direction".into()));
    }
    Ok(RadialBody { dim, rho })
}

/// Level body of f at threshold e^{-n} ||f||_inf, with its sandwich data
/// against the n-th moment body.
#[derive(Clone, Debug)]
pub struct LevelReport {
    pub set: MaskGrid,
    /// Smallest dilation factor c with the level body inside c times the
    /// moment body (up to grid sampling).
    pub km_ratio: f64,
    /// Whether the moment body sits inside the level body within one cell.
    pub k_in_l: bool,
}

pub fn level_body(f: &GridFunction) -> Result<LevelReport> {
    let n = f.dim();
    let fmax = f.max_value();
    if fmax <= 0.0 {
        return Err(Error::EmptyInput("function is identically zero".into()));
    }
    let threshold = (-(n as f64)).exp() * fmax;
    let grid = f.grid.clone();
    let mask: Vec<bool> = f.values.iter().map(|&v| v >= threshold).collect();
    if !mask.iter().any(|&b| b) {
        return Err(Error::EmptyInput("level set is empty".into()));
    }
    let set = MaskGrid { grid: grid.clone(), mask };
    let k = ball_body(f, n as f64, 256)?;
    let step = grid.max_step();
    // Smallest c with every level-set cell center inside c K.
    let mut ratio: f64 = 0.0;
    for i in set.occupied_cells() {
        let p = grid.center(i);
        let r = (0..n).map(|a| p[a] * p[a]).sum::<f64>().sqrt();
        if r < 1e-12 {
            continue;
        }
        let u = if n == 1 {
            [p[0].signum(), 0.0]
        } else {
            [p[0] / r, p[1] / r]
        };
        let rk = k.radius_toward(u);
        if rk > 0.0 {
            // Measure against the cell's inner radius: the level set is a
            // union of cells, its true boundary sits within one cell.
            ratio = ratio.max(((r - step).max(0.0)) / rk);
        } else {
            return Err(Error::Domain("level set escapes a degenerate moment body".into()));
        }
    }
    let km_ratio = ratio.max(1.0);
    // K inside L within one cell: walk each sampled direction to just inside
    // the radial boundary and require membership of a nearby level cell.
    let mut k_in_l = true;
    let dirs = if n == 1 { 2 } else { k.rho.len() };
    for kd in 0..dirs {
        let u = k.direction(kd);
        let r = (k.rho[kd] - step).max(0.0);
        let p = [r * u[0], r * u[1], 0.0];
        if !set.contains_point(&p) {
            k_in_l = false;
        }
    }
    Ok(LevelReport { set, km_ratio, k_in_l })
}
