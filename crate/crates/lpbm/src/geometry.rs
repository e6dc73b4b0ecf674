//! Convex bodies as sampled support functions, general sets as point samples,
//! and the two set-level combination rules built on them.

use crate::grid::{Box3, Grid};
use crate::means::scaled_weight_pair;
use crate::{Error, Result};

/// A convex body with the origin in its interior, stored as support values
/// over a fixed direction set. Dimension 1 uses the two directions {+1, -1};
/// dimension 2 uses `angles` equally spaced unit vectors.
#[derive(Clone, Debug)]
pub struct SupportBody {
    pub dim: usize,
    pub angles: usize,
    pub h: Vec<f64>,
}

/// Default direction count for planar bodies.
pub const DEFAULT_ANGLES: usize = 360;

impl SupportBody {
    /// The interval [a, b] with a < 0 < b, so the origin is interior.
    pub fn interval(a: f64, b: f64) -> Result<Self> {
        if !(a < 0.0 && 0.0 < b) {
            return Err(Error::InvalidParameter(format!(
                "interval [{a}, {b}] must contain the origin in its interior"
            )));
        }
        Ok(Self { dim: 1, angles: 2, h: vec![b, -a] })
    }

    /// Planar body as the convex hull of a vertex list, sampled over `angles`
    /// directions. The hull must contain the origin strictly.
    pub fn from_vertices(vertices: &[[f64; 2]], angles: usize) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyInput("vertex list".into()));
        }
        if angles < 3 {
            return Err(Error::InvalidParameter("need at least 3 directions".into()));
        }
        let mut h = Vec::with_capacity(angles);
        for k in 0..angles {
            let th = 2.0 * std::f64::consts::PI * k as f64 / angles as f64;
            let (ux, uy) = (th.cos(), th.sin());
            let v = vertices
                .iter()
                .map(|p| p[0] * ux + p[1] * uy)
                .fold(f64::NEG_INFINITY, f64::max);
            if !(v > 0.0) {
                return Err(Error::InvalidParameter(
                    "origin is not interior to the hull".into(),
                ));
            }
            h.push(v);
        }
        Ok(Self { dim: 2, angles, h })
    }

    /// Centered disk of radius r.
    pub fn disk(r: f64, angles: usize) -> Result<Self> {
        if !(r > 0.0) {
            return Err(Error::InvalidParameter("radius must be positive".into()));
        }
        Ok(Self { dim: 2, angles, h: vec![r; angles] })
    }

    /// Axis-aligned rectangle [a1,b1] x [a2,b2] with the origin interior.
    pub fn rectangle(a1: f64, b1: f64, a2: f64, b2: f64, angles: usize) -> Result<Self> {
        if !(a1 < 0.0 && 0.0 < b1 && a2 < 0.0 && 0.0 < b2) {
            return Err(Error::InvalidParameter(
                "rectangle must contain the origin in its interior".into(),
            ));
        }
        Self::from_vertices(&[[a1, a2], [b1, a2], [b1, b2], [a1, b2]], angles)
    }

    pub fn direction(&self, k: usize) -> [f64; 2] {
        if self.dim == 1 {
            if k == 0 {
                [1.0, 0.0]
            } else {
                [-1.0, 0.0]
            }
        } else {
            let th = 2.0 * std::f64::consts::PI * k as f64 / self.angles as f64;
            [th.cos(), th.sin()]
        }
    }

    fn check_positive(&self) -> Result<()> {
        if self.h.iter().any(|&v| !(v > 0.0)) {
            return Err(Error::InvalidParameter(
                "support value is not positive: origin not interior".into(),
            ));
        }
        Ok(())
    }

    /// Per-direction p-mean of support values: h = (alpha h_K^p + beta h_L^p)^{1/p}.
    pub fn firey_combine(&self, other: &Self, p: f64, alpha: f64, beta: f64) -> Result<Self> {
        if self.dim != other.dim || self.angles != other.angles {
            return Err(Error::DimensionMismatch(
                "support bodies use different direction sets".into(),
            ));
        }
        if !(p >= 1.0) {
            return Err(Error::InvalidParameter(format!("p = {p} must be >= 1")));
        }
        if !(alpha >= 0.0 && beta >= 0.0) || alpha + beta == 0.0 {
            return Err(Error::InvalidParameter(
                "alpha, beta must be nonnegative and not both zero".into(),
            ));
        }
        self.check_positive()?;
        other.check_positive()?;
        let h = self
            .h
            .iter()
            .zip(&other.h)
            .map(|(&hk, &hl)| (alpha * hk.powf(p) + beta * hl.powf(p)).powf(1.0 / p))
            .collect();
        Ok(Self { dim: self.dim, angles: self.angles, h })
    }

    /// The p-scalar action eps . A: support values scaled by eps^{1/p}.
    pub fn scale_p(&self, eps: f64, p: f64) -> Result<Self> {
        if !(eps > 0.0) {
            return Err(Error::InvalidParameter("scale must be positive".into()));
        }
        let c = eps.powf(1.0 / p);
        let h = self.h.iter().map(|&v| c * v).collect();
        Ok(Self { dim: self.dim, angles: self.angles, h })
    }

    /// Membership in the intersection of the sampled half-planes.
    pub fn contains(&self, p: &[f64; 3]) -> bool {
        if self.dim == 1 {
            return p[0] <= self.h[0] && -p[0] <= self.h[1];
        }
        for k in 0..self.angles {
            let u = self.direction(k);
            if p[0] * u[0] + p[1] * u[1] > self.h[k] + 1e-12 {
                return false;
            }
        }
        true
    }

    /// For dim 1: the interval [lo, hi].
    pub fn interval_bounds(&self) -> (f64, f64) {
        (-self.h[1], self.h[0])
    }

    /// For dim 2 at height y: the x-interval cut out by the half-planes, or
    /// `None` when the slice is empty. Exact given the sampled directions.
    pub fn x_range_at_y(&self, y: f64) -> Option<(f64, f64)> {
        let mut lo = f64::NEG_INFINITY;
        let mut hi = f64::INFINITY;
        for k in 0..self.angles {
            let u = self.direction(k);
            // u_x * x <= h - u_y * y
            let r = self.h[k] - u[1] * y;
            if u[0] > 1e-12 {
                hi = hi.min(r / u[0]);
            } else if u[0] < -1e-12 {
                lo = lo.max(r / u[0]);
            } else if r < 0.0 {
                return None;
            }
        }
        if lo <= hi {
            Some((lo, hi))
        } else {
            None
        }
    }

    /// Axis-aligned bounding box from the coordinate-direction support values.
    pub fn bounding_box(&self) -> Box3 {
        if self.dim == 1 {
            let (lo, hi) = self.interval_bounds();
            return Box3 { dim: 1, lo: [lo, 0.0, 0.0], hi: [hi, 0.0, 0.0] };
        }
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for k in 0..self.angles {
            let u = self.direction(k);
            hi[0] = hi[0].max(self.h[k] * u[0]);
            lo[0] = lo[0].min(self.h[k] * u[0]);
            hi[1] = hi[1].max(self.h[k] * u[1]);
            lo[1] = lo[1].min(self.h[k] * u[1]);
        }
        // Vertex extent can exceed the direction-sampled extent by O(1/angles^2);
        // pad so the box always encloses the body.
        let pad = 1.0 + 20.0 / (self.angles * self.angles) as f64;
        for a in 0..2 {
            lo[a] *= pad;
            hi[a] *= pad;
        }
        lo[2] = 0.0;
        hi[2] = 0.0;
        Box3 { dim: 2, lo, hi }
    }
}

/// A grid mask: cells of `grid` flagged as belonging to the set.
#[derive(Clone, Debug)]
pub struct MaskGrid {
    pub grid: Grid,
    pub mask: Vec<bool>,
}

impl MaskGrid {
    pub fn empty(grid: Grid) -> Self {
        let n = grid.cell_count();
        Self { grid, mask: vec![false; n] }
    }

    /// Mark cells whose centers satisfy the predicate.
    pub fn from_predicate<F: Fn(&[f64; 3]) -> bool>(grid: Grid, pred: F) -> Self {
        let n = grid.cell_count();
        let mask = (0..n).map(|i| pred(&grid.center(i))).collect();
        Self { grid, mask }
    }

    pub fn occupied_cells(&self) -> Vec<usize> {
        (0..self.mask.len()).filter(|&i| self.mask[i]).collect()
    }

    pub fn cell_centers(&self) -> Vec<[f64; 3]> {
        self.occupied_cells().into_iter().map(|i| self.grid.center(i)).collect()
    }

    pub fn volume(&self) -> f64 {
        self.occupied_cells().len() as f64 * self.grid.cell_volume()
    }

    pub fn contains_point(&self, p: &[f64; 3]) -> bool {
        match self.grid.locate(p) {
            Some(i) => self.mask[i],
            None => false,
        }
    }
}

/// A Borel set as a finite point sample, optionally carrying a grid-mask form.
#[derive(Clone, Debug)]
pub struct SampledSet {
    pub dim: usize,
    pub points: Vec<[f64; 3]>,
    pub mask: Option<MaskGrid>,
}

impl SampledSet {
    pub fn from_points(dim: usize, points: Vec<[f64; 3]>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInput("point sample".into()));
        }
        if points.iter().any(|p| p.iter().any(|c| !c.is_finite())) {
            return Err(Error::InvalidParameter("non-finite coordinate".into()));
        }
        Ok(Self { dim, points, mask: None })
    }

    pub fn singleton(dim: usize, p: [f64; 3]) -> Self {
        Self { dim, points: vec![p], mask: None }
    }

    /// Uniform sample of [lo, hi] with `count` points including endpoints.
    pub fn interval(lo: f64, hi: f64, count: usize) -> Result<Self> {
        if !(lo <= hi) || count == 0 {
            return Err(Error::InvalidParameter(format!(
                "bad interval sample [{lo}, {hi}] x {count}"
            )));
        }
        let points = if count == 1 || lo == hi {
            vec![[lo, 0.0, 0.0]]
        } else {
            (0..count)
                .map(|i| [lo + (hi - lo) * i as f64 / (count - 1) as f64, 0.0, 0.0])
                .collect()
        };
        Ok(Self { dim: 1, points, mask: None })
    }

    /// Grid of cell centers filling a box, with the matching mask form.
    pub fn box_grid(bounds: Box3, res: usize) -> Result<Self> {
        let grid = Grid::uniform(bounds, res)?;
        let n = grid.cell_count();
        let points: Vec<[f64; 3]> = (0..n).map(|i| grid.center(i)).collect();
        let mask = MaskGrid { grid, mask: vec![true; n] };
        Ok(Self { dim: bounds.dim, points: points, mask: Some(mask) })
    }

    /// The point family {wa x + wb y} over sampled x, y and a uniform lambda
    /// grid of `lambda_count` values including both endpoints, with weights
    /// wa = alpha^{1/p} (1-lambda)^{(p-1)/p}, wb = beta^{1/p} lambda^{(p-1)/p}.
    pub fn lyz_combine(
        &self,
        other: &Self,
        p: f64,
        alpha: f64,
        beta: f64,
        lambda_count: usize,
    ) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "combining sets of dimension {} and {}",
                self.dim, other.dim
            )));
        }
        if lambda_count < 2 {
            return Err(Error::InvalidParameter("lambda grid needs >= 2 points".into()));
        }
        let mut points =
            Vec::with_capacity(self.points.len() * other.points.len() * lambda_count);
        for li in 0..lambda_count {
            let lam = li as f64 / (lambda_count - 1) as f64;
            let (wa, wb) = scaled_weight_pair(p, alpha, beta, lam)?;
            for x in &self.points {
                for y in &other.points {
                    points.push([
                        wa * x[0] + wb * y[0],
                        wa * x[1] + wb * y[1],
                        wa * x[2] + wb * y[2],
                    ]);
                }
            }
        }
        Self::from_points(self.dim, points)
    }

    /// Rasterize the point sample onto a grid mask ("cell center in set"
    /// operationalized as "cell receives a sample point").
    pub fn to_mask(&self, grid: Grid) -> MaskGrid {
        let mut m = MaskGrid::empty(grid);
        for p in &self.points {
            if let Some(i) = m.grid.locate(p) {
                m.mask[i] = true;
            }
        }
        m
    }

    /// Closure under zeroing any subset of coordinates, each zeroed image
    /// within `tol` of a member point (mask lookup when the grid form exists).
    pub fn is_weakly_unconditional(&self, tol: f64) -> bool {
        let d = self.dim;
        for p in &self.points {
            for eps in 0..(1usize << d) {
                let mut q = *p;
                for a in 0..d {
                    if eps >> a & 1 == 0 {
                        q[a] = 0.0;
                    }
                }
                let hit = match &self.mask {
                    Some(m) => m.contains_point(&q),
                    None => self
                        .points
                        .iter()
                        .any(|r| dist(r, &q, d) <= tol),
                };
                if !hit {
                    return false;
                }
            }
        }
        true
    }

    /// Cartesian product of m copies. The combined dimension must stay
    /// within the gridded pipeline's cap of 3.
    pub fn cartesian_power(&self, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("m must be >= 1".into()));
        }
        let d = self.dim * m;
        if d > 3 {
            return Err(Error::DimensionMismatch(format!(
                "dimension {} x {} copies exceeds the cap of 3",
                self.dim, m
            )));
        }
        let mut points: Vec<[f64; 3]> = vec![[0.0; 3]];
        for copy in 0..m {
            let mut next = Vec::with_capacity(points.len() * self.points.len());
            for base in &points {
                for p in &self.points {
                    let mut q = *base;
                    for a in 0..self.dim {
                        q[copy * self.dim + a] = p[a];
                    }
                    next.push(q);
                }
            }
            points = next;
        }
        Self::from_points(d, points)
    }
}

fn dist(a: &[f64; 3], b: &[f64; 3], dim: usize) -> f64 {
    (0..dim).map(|i| (a[i] - b[i]).powi(2)).sum::<f64>().sqrt()
}

/// Symmetric Hausdorff distance between point samples.
pub fn hausdorff_distance(a: &SampledSet, b: &SampledSet) -> Result<f64> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch("hausdorff over unequal dims".into()));
    }
    Ok(one_sided(&a.points, &b.points, a.dim).max(one_sided(&b.points, &a.points, a.dim)))
}

/// Symmetric Hausdorff distance between two point lists of equal dimension.
pub fn hausdorff_points(a: &[[f64; 3]], b: &[[f64; 3]], dim: usize) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyInput("hausdorff over empty sample".into()));
    }
    Ok(one_sided(a, b, dim).max(one_sided(b, a, dim)))
}

fn one_sided(a: &[[f64; 3]], b: &[[f64; 3]], dim: usize) -> f64 {
    a.iter()
        .map(|p| b.iter().map(|q| dist(p, q, dim)).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max)
}

/// The exact box family {wa A + wb B} over the given lambda values, for
/// axis-aligned operands. Weighted sums of boxes are boxes, so the lambda
/// union is represented without discretization.
pub fn lyz_box_union(
    a: &Box3,
    b: &Box3,
    p: f64,
    alpha: f64,
    beta: f64,
    lambdas: &[f64],
) -> Result<Vec<Box3>> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch("box dims differ".into()));
    }
    let mut out = Vec::with_capacity(lambdas.len());
    for &lam in lambdas {
        let (wa, wb) = scaled_weight_pair(p, alpha, beta, lam)?;
        out.push(a.weighted_sum(wa, b, wb));
    }
    Ok(out)
}

/// Exact volume of a union of boxes by coordinate compression.
pub fn union_volume(boxes: &[Box3]) -> f64 {
    if boxes.is_empty() {
        return 0.0;
    }
    let dim = boxes[0].dim;
    let mut cuts: Vec<Vec<f64>> = vec![Vec::new(); dim];
    for b in boxes {
        for a in 0..dim {
            cuts[a].push(b.lo[a]);
            cuts[a].push(b.hi[a]);
        }
    }
    for c in cuts.iter_mut() {
        c.sort_by(|x, y| x.partial_cmp(y).unwrap());
        c.dedup();
    }
    let sizes: Vec<usize> = cuts.iter().map(|c| c.len().saturating_sub(1)).collect();
    let total: usize = sizes.iter().product();
    let mut vol = 0.0;
    for flat in 0..total {
        let mut rem = flat;
        let mut mid = [0.0f64; 3];
        let mut cellv = 1.0;
        for a in 0..dim {
            let i = rem % sizes[a];
            rem /= sizes[a];
            mid[a] = 0.5 * (cuts[a][i] + cuts[a][i + 1]);
            cellv *= cuts[a][i + 1] - cuts[a][i];
        }
        if boxes.iter().any(|b| b.contains(&mid)) {
            vol += cellv;
        }
    }
    vol
}

/// Whether the point lies in any box of the family.
pub fn union_contains(boxes: &[Box3], p: &[f64; 3]) -> bool {
    boxes.iter().any(|b| b.contains(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn firey_idempotent_on_equal_bodies() {
        let k = SupportBody::interval(-1.0, 1.0).unwrap();
        let m = k.firey_combine(&k, 2.0, 0.5, 0.5).unwrap();
        assert!((m.h[0] - 1.0).abs() < 1e-12);
        assert!((m.h[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn firey_interval_example() {
        let k = SupportBody::interval(-1.0, 1.0).unwrap();
        let l = SupportBody::interval(-2.0, 2.0).unwrap();
        let m = k.firey_combine(&l, 2.0, 0.5, 0.5).unwrap();
        let r = (0.5 + 2.0f64).sqrt();
        assert!((m.h[0] - r).abs() < 1e-12);
        assert!((m.h[1] - r).abs() < 1e-12);
    }

    #[test]
    fn firey_rejects_degenerate_origin() {
        assert!(SupportBody::interval(0.0, 1.0).is_err());
        let k = SupportBody { dim: 1, angles: 2, h: vec![1.0, 0.0] };
        let l = SupportBody::interval(-1.0, 1.0).unwrap();
        assert!(k.firey_combine(&l, 2.0, 0.5, 0.5).is_err());
    }

    #[test]
    fn lyz_equal_unit_intervals() {
        let a = SampledSet::interval(0.0, 1.0, 41).unwrap();
        let c = a.lyz_combine(&a, 2.0, 0.5, 0.5, 65).unwrap();
        let lo = c.points.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
        let hi = c.points.iter().map(|p| p[0]).fold(f64::NEG_INFINITY, f64::max);
        assert!(lo.abs() < 1e-12);
        assert!((hi - 1.0).abs() < 1e-9); // max attained at lambda = t
    }

    #[test]
    fn lyz_holder_optimum_endpoint() {
        let a = SampledSet::interval(0.0, 1.0, 41).unwrap();
        let b = SampledSet::interval(0.0, 2.0, 41).unwrap();
        let c = a.lyz_combine(&b, 2.0, 0.5, 0.5, 2049).unwrap();
        let hi = c.points.iter().map(|p| p[0]).fold(f64::NEG_INFINITY, f64::max);
        // sup over lambda of wa*1 + wb*2 = sqrt(0.5*1 + 0.5*4) = sqrt(2.5)
        assert!((hi - 2.5f64.sqrt()).abs() < 2e-3);
    }

    #[test]
    fn lyz_point_at_origin() {
        let a = SampledSet::singleton(1, [0.0, 0.0, 0.0]);
        let c = a.lyz_combine(&a, 3.0, 0.5, 0.5, 9).unwrap();
        assert!(c.points.iter().all(|p| p[0].abs() < 1e-15));
    }

    #[test]
    fn lyz_p1_is_classical_minkowski() {
        let a = SampledSet::interval(0.0, 1.0, 11).unwrap();
        let b = SampledSet::interval(0.0, 2.0, 11).unwrap();
        let c = a.lyz_combine(&b, 1.0, 0.3, 0.7, 5).unwrap();
        // every point must be 0.3 x + 0.7 y regardless of lambda
        let hi = c.points.iter().map(|p| p[0]).fold(f64::NEG_INFINITY, f64::max);
        assert!((hi - (0.3 + 0.7 * 2.0)).abs() < 1e-12);
    }

    #[test]
    fn weakly_unconditional_box_and_shifted_interval() {
        let b = Box3::new(2, [0.0, 0.0, 0.0], [1.0, 1.0, 0.0]).unwrap();
        let s = SampledSet::box_grid(b, 16).unwrap();
        assert!(s.is_weakly_unconditional(0.0));
        let t = SampledSet::interval(1.0, 2.0, 11).unwrap();
        assert!(!t.is_weakly_unconditional(1e-9));
        let corners = SampledSet::from_points(
            2,
            vec![
                [1.0, 1.0, 0.0],
                [1.0, 0.0, 0.0],
                [0.0, 1.0, 0.0],
                [0.0, 0.0, 0.0],
            ],
        )
        .unwrap();
        assert!(corners.is_weakly_unconditional(1e-9));
    }

    #[test]
    fn cartesian_power_examples() {
        let a = SampledSet::interval(0.0, 1.0, 5).unwrap();
        let sq = a.cartesian_power(2).unwrap();
        assert_eq!(sq.dim, 2);
        assert_eq!(sq.points.len(), 25);
        let pt = SampledSet::singleton(1, [0.0, 0.0, 0.0]).cartesian_power(3).unwrap();
        assert_eq!(pt.points, vec![[0.0, 0.0, 0.0]]);
        assert!(a.cartesian_power(4).is_err());
    }

    #[test]
    fn cartesian_power_volume_multiplies() {
        let b = Box3::interval(0.0, 2.0).unwrap();
        let a = SampledSet::box_grid(b, 64).unwrap();
        let sq = a.cartesian_power(2).unwrap();
        let bounds = Box3::new(2, [0.0, 0.0, 0.0], [2.0, 2.0, 0.0]).unwrap();
        let m = sq.to_mask(Grid::uniform(bounds, 64).unwrap());
        assert!((m.volume() - 4.0).abs() < 1e-9);
    }

    #[test]
    fn hausdorff_examples() {
        let a = SampledSet::interval(0.0, 1.0, 21).unwrap();
        assert_eq!(hausdorff_distance(&a, &a).unwrap(), 0.0);
        let x = SampledSet::singleton(1, [0.0, 0.0, 0.0]);
        let y = SampledSet::singleton(1, [1.0, 0.0, 0.0]);
        assert!((hausdorff_distance(&x, &y).unwrap() - 1.0).abs() < 1e-15);
        let b = SampledSet::interval(0.0, 2.0, 41).unwrap();
        assert!((hausdorff_distance(&a, &b).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn union_volume_exact_on_overlaps() {
        let b1 = Box3::interval(0.0, 2.0).unwrap();
        let b2 = Box3::interval(1.0, 3.0).unwrap();
        assert!((union_volume(&[b1, b2]) - 3.0).abs() < 1e-15);
        let s1 = Box3::new(2, [0.0, 0.0, 0.0], [1.0, 1.0, 0.0]).unwrap();
        let s2 = Box3::new(2, [0.5, 0.5, 0.0], [1.5, 1.5, 0.0]).unwrap();
        assert!((union_volume(&[s1, s2]) - 1.75).abs() < 1e-15);
    }

    #[test]
    fn lyz_box_union_contains_minkowski_combination() {
        let a = Box3::interval(0.0, 1.0).unwrap();
        let b = Box3::interval(0.0, 2.0).unwrap();
        let t = 0.25;
        let lams: Vec<f64> = (0..9).map(|i| i as f64 / 8.0).collect();
        let boxes = lyz_box_union(&a, &b, 2.0, 1.0 - t, t, &lams).unwrap();
        // lambda grid includes lambda = t = 0.25, so (1-t)A + tB is covered
        let mink = a.weighted_sum(1.0 - t, &b, t);
        for i in 0..20 {
            let x = mink.lo[0] + mink.extent(0) * i as f64 / 19.0;
            assert!(union_contains(&boxes, &[x, 0.0, 0.0]));
        }
    }

    #[test]
    fn support_body_slices_match_rectangle() {
        let r = SupportBody::rectangle(-1.0, 2.0, -0.5, 1.0, 720).unwrap();
        let (lo, hi) = r.x_range_at_y(0.0).unwrap();
        assert!((lo + 1.0).abs() < 1e-3);
        assert!((hi - 2.0).abs() < 1e-3);
        assert!(r.x_range_at_y(1.5).is_none());
        assert!(r.contains(&[1.9, 0.9, 0.0]));
        assert!(!r.contains(&[2.1, 0.0, 0.0]));
    }
}
