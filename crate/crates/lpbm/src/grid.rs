//! Axis-aligned boxes, cell-centered grids and sampled functions in dimension 1..3.

use crate::{Error, Result};

/// Maximum spatial dimension handled by the gridded pipeline.
pub const MAX_DIM: usize = 3;

/// An axis-aligned box in dimension `dim`. Unused axes hold `[0, 0]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Box3 {
    pub dim: usize,
    pub lo: [f64; 3],
    pub hi: [f64; 3],
}

impl Box3 {
    pub fn new(dim: usize, lo: [f64; 3], hi: [f64; 3]) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::DimensionMismatch(format!("dim {dim} out of 1..=3")));
        }
        for a in 0..dim {
            if !(lo[a] < hi[a]) || !lo[a].is_finite() || !hi[a].is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "box axis {a}: [{}, {}] is not a finite nonempty interval",
                    lo[a], hi[a]
                )));
            }
        }
        let mut lo = lo;
        let mut hi = hi;
        for a in dim..3 {
            lo[a] = 0.0;
            hi[a] = 0.0;
        }
        Ok(Self { dim, lo, hi })
    }

    pub fn interval(lo: f64, hi: f64) -> Result<Self> {
        Self::new(1, [lo, 0.0, 0.0], [hi, 0.0, 0.0])
    }

    pub fn extent(&self, axis: usize) -> f64 {
        self.hi[axis] - self.lo[axis]
    }

    pub fn contains(&self, p: &[f64; 3]) -> bool {
        (0..self.dim).all(|a| p[a] >= self.lo[a] && p[a] <= self.hi[a])
    }

    /// Whether `other` fits inside this box (up to a small slack per axis).
    pub fn encloses(&self, other: &Box3, slack: f64) -> bool {
        self.dim == other.dim
            && (0..self.dim)
                .all(|a| other.lo[a] >= self.lo[a] - slack && other.hi[a] <= self.hi[a] + slack)
    }

    /// Smallest box containing both operands.
    pub fn hull(&self, other: &Box3) -> Box3 {
        let mut lo = self.lo;
        let mut hi = self.hi;
        for a in 0..self.dim {
            lo[a] = lo[a].min(other.lo[a]);
            hi[a] = hi[a].max(other.hi[a]);
        }
        Box3 { dim: self.dim, lo, hi }
    }

    /// Image of the box under `x -> c*x` with `c > 0`.
    pub fn scaled(&self, c: f64) -> Box3 {
        let mut lo = self.lo;
        let mut hi = self.hi;
        for a in 0..self.dim {
            lo[a] *= c;
            hi[a] *= c;
        }
        Box3 { dim: self.dim, lo, hi }
    }

    /// Minkowski sum `wa*self + wb*other` for nonnegative weights.
    pub fn weighted_sum(&self, wa: f64, other: &Box3, wb: f64) -> Box3 {
        let mut lo = self.lo;
        let mut hi = self.hi;
        for a in 0..self.dim {
            lo[a] = wa * self.lo[a] + wb * other.lo[a];
            hi[a] = wa * self.hi[a] + wb * other.hi[a];
        }
        Box3 { dim: self.dim, lo, hi }
    }
}

/// A cell-centered uniform grid over a box.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    pub bounds: Box3,
    pub res: [usize; 3],
}

impl Grid {
    pub fn new(bounds: Box3, res_per_axis: &[usize]) -> Result<Self> {
        if res_per_axis.len() != bounds.dim {
            return Err(Error::DimensionMismatch(format!(
                "{} resolutions for a {}-d box",
                res_per_axis.len(),
                bounds.dim
            )));
        }
        let mut res = [1usize; 3];
        for (a, &r) in res_per_axis.iter().enumerate() {
            if r == 0 {
                return Err(Error::InvalidParameter("zero resolution".into()));
            }
            res[a] = r;
        }
        Ok(Self { bounds, res })
    }

    pub fn uniform(bounds: Box3, res: usize) -> Result<Self> {
        let per_axis = vec![res; bounds.dim];
        Self::new(bounds, &per_axis)
    }

    pub fn dim(&self) -> usize {
        self.bounds.dim
    }

    pub fn cell_count(&self) -> usize {
        (0..self.dim()).map(|a| self.res[a]).product()
    }

    pub fn step(&self, axis: usize) -> f64 {
        self.bounds.extent(axis) / self.res[axis] as f64
    }

    /// Largest per-axis step; the "grid step" used in tolerance policies.
    pub fn max_step(&self) -> f64 {
        (0..self.dim()).map(|a| self.step(a)).fold(0.0, f64::max)
    }

    pub fn cell_volume(&self) -> f64 {
        (0..self.dim()).map(|a| self.step(a)).product()
    }

    pub fn multi_index(&self, flat: usize) -> [usize; 3] {
        let mut idx = [0usize; 3];
        let mut rem = flat;
        for a in 0..self.dim() {
            idx[a] = rem % self.res[a];
            rem /= self.res[a];
        }
        idx
    }

    pub fn flat_index(&self, idx: &[usize; 3]) -> usize {
        let mut flat = 0usize;
        for a in (0..self.dim()).rev() {
            flat = flat * self.res[a] + idx[a];
        }
        flat
    }

    pub fn center(&self, flat: usize) -> [f64; 3] {
        let idx = self.multi_index(flat);
        let mut p = [0.0f64; 3];
        for a in 0..self.dim() {
            p[a] = self.bounds.lo[a] + (idx[a] as f64 + 0.5) * self.step(a);
        }
        p
    }

    /// Flat index of the cell containing `p`, or `None` outside the box.
    pub fn locate(&self, p: &[f64; 3]) -> Option<usize> {
        let mut idx = [0usize; 3];
        for a in 0..self.dim() {
            let u = (p[a] - self.bounds.lo[a]) / self.step(a);
            if u < 0.0 || u > self.res[a] as f64 {
                return None;
            }
            idx[a] = (u as usize).min(self.res[a] - 1);
        }
        Some(self.flat_index(&idx))
    }

    /// Flat index of the nearest cell, clamping points outside the box.
    pub fn locate_clamped(&self, p: &[f64; 3]) -> usize {
        let mut idx = [0usize; 3];
        for a in 0..self.dim() {
            let u = (p[a] - self.bounds.lo[a]) / self.step(a);
            let i = if u <= 0.0 { 0 } else { (u as usize).min(self.res[a] - 1) };
            idx[a] = i;
        }
        self.flat_index(&idx)
    }
}

/// A nonnegative sampled function on a grid; support is the set of cells
/// with strictly positive value, and the function is zero outside its box.
#[derive(Clone, Debug)]
pub struct GridFunction {
    pub grid: Grid,
    pub values: Vec<f64>,
}

impl GridFunction {
    pub fn zeros(grid: Grid) -> Self {
        let n = grid.cell_count();
        Self { grid, values: vec![0.0; n] }
    }

    /// Sample `f` at cell centers, clamping negatives to zero.
    pub fn from_fn<F: Fn(&[f64; 3]) -> f64>(grid: Grid, f: F) -> Self {
        let n = grid.cell_count();
        let values = (0..n)
            .map(|i| {
                let v = f(&grid.center(i));
                if v > 0.0 {
                    v
                } else {
                    0.0
                }
            })
            .collect();
        Self { grid, values }
    }

    pub fn dim(&self) -> usize {
        self.grid.dim()
    }

    /// Nearest-cell sample, zero outside the grid box.
    pub fn sample_nearest(&self, p: &[f64; 3]) -> f64 {
        match self.grid.locate(p) {
            Some(i) => self.values[i],
            None => 0.0,
        }
    }

    /// Multilinear interpolation between cell centers, zero outside the box.
    pub fn sample_linear(&self, p: &[f64; 3]) -> f64 {
        let d = self.dim();
        if !self.grid.bounds.contains(p) {
            return 0.0;
        }
        let mut base = [0usize; 3];
        let mut frac = [0.0f64; 3];
        for a in 0..d {
            let u = (p[a] - self.grid.bounds.lo[a]) / self.grid.step(a) - 0.5;
            let u = u.clamp(0.0, self.grid.res[a] as f64 - 1.0);
            let i = (u as usize).min(self.grid.res[a].saturating_sub(2).max(0));
            base[a] = i;
            frac[a] = if self.grid.res[a] > 1 { u - i as f64 } else { 0.0 };
        }
        let mut acc = 0.0;
        for corner in 0..(1usize << d) {
            let mut idx = base;
            let mut w = 1.0;
            for a in 0..d {
                if corner >> a & 1 == 1 {
                    idx[a] = (base[a] + 1).min(self.grid.res[a] - 1);
                    w *= frac[a];
                } else {
                    w *= 1.0 - frac[a];
                }
            }
            acc += w * self.values[self.grid.flat_index(&idx)];
        }
        acc
    }

    /// Flat indices of cells with positive value.
    pub fn support_cells(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&i| self.values[i] > 0.0).collect()
    }

    /// Centers of support cells.
    pub fn support_points(&self) -> Vec<[f64; 3]> {
        self.support_cells().into_iter().map(|i| self.grid.center(i)).collect()
    }

    /// Tight bounding box of the support cells, or `None` for the zero function.
    pub fn support_bounds(&self) -> Option<Box3> {
        let cells = self.support_cells();
        if cells.is_empty() {
            return None;
        }
        let d = self.dim();
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for i in cells {
            let idx = self.grid.multi_index(i);
            for a in 0..d {
                let c_lo = self.grid.bounds.lo[a] + idx[a] as f64 * self.grid.step(a);
                lo[a] = lo[a].min(c_lo);
                hi[a] = hi[a].max(c_lo + self.grid.step(a));
            }
        }
        for a in d..3 {
            lo[a] = 0.0;
            hi[a] = 0.0;
        }
        Some(Box3 { dim: d, lo, hi })
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().fold(0.0, |m, &v| m.max(v))
    }

    /// Midpoint-rule Lebesgue integral.
    pub fn integral(&self) -> f64 {
        let cv = self.grid.cell_volume();
        pairwise_sum(&self.values) * cv
    }
}

/// Pairwise-tree summation: deterministic and more accurate than a left fold.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    match v.len() {
        0 => 0.0,
        1 => v[0],
        2 => v[0] + v[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&v[..mid]) + pairwise_sum(&v[mid..])
        }
    }
}
