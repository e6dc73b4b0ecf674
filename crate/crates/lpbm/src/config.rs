//! Run configuration: a line-oriented `[section] key = value` format that
//! names the problem, the measure, the operand pair, the grids, and the
//! output targets.

use crate::densities::{Density, Profile1d};
use crate::geometry::SupportBody;
use crate::grid::{Box3, Grid, GridFunction};
use crate::harness::{Fixture, FixtureKind, TheoremId};
use crate::supconv::SValue;
use crate::{Error, Result};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

/// Output format selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Structured,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "structured" => Ok(OutputFormat::Structured),
            other => Err(Error::Config(format!("unknown format '{other}'"))),
        }
    }
}

/// Geometry primitive for a set or body operand.
#[derive(Clone, Debug)]
pub enum GeomSpec {
    Interval { lo: f64, hi: f64 },
    Box { dim: usize, lo: [f64; 3], hi: [f64; 3] },
    Ball { radius: f64 },
    Polygon { vertices: Vec<[f64; 2]> },
}

impl GeomSpec {
    pub fn dim(&self) -> usize {
        match self {
            GeomSpec::Interval { .. } => 1,
            GeomSpec::Box { dim, .. } => *dim,
            GeomSpec::Ball { .. } | GeomSpec::Polygon { .. } => 2,
        }
    }

    pub fn to_box(&self) -> Result<Box3> {
        match self {
            GeomSpec::Interval { lo, hi } => Box3::interval(*lo, *hi),
            GeomSpec::Box { dim, lo, hi } => Box3::new(*dim, *lo, *hi),
            _ => Err(Error::Config(
                "this problem takes axis-aligned sets; use interval or box".into(),
            )),
        }
    }

    pub fn to_body(&self) -> Result<SupportBody> {
        match self {
            GeomSpec::Interval { lo, hi } => SupportBody::interval(*lo, *hi),
            GeomSpec::Box { dim, lo, hi } => {
                if *dim == 1 {
                    SupportBody::interval(lo[0], hi[0])
                } else {
                    SupportBody::rectangle(lo[0], hi[0], lo[1], hi[1], 360)
                }
            }
            GeomSpec::Ball { radius } => SupportBody::disk(*radius, 360),
            GeomSpec::Polygon { vertices } => SupportBody::from_vertices(vertices, 360),
        }
    }
}

/// Function primitive for a functional operand.
#[derive(Clone, Debug)]
pub enum FnSpec {
    IndicatorInterval { lo: f64, hi: f64 },
    IndicatorBox { dim: usize, lo: [f64; 3], hi: [f64; 3] },
    Triangular { width: f64 },
    Gaussian { sigma: f64 },
    Exponential { rate: f64 },
    Tabulated { path: PathBuf },
}

impl FnSpec {
    pub fn dim(&self) -> usize {
        match self {
            FnSpec::IndicatorBox { dim, .. } => *dim,
            _ => 1,
        }
    }

    /// Realize the spec as a grid function at the given resolution. Profiles
    /// get a support-fitting box when no grid box is configured.
    pub fn build(&self, bounds: Option<Box3>, resolution: usize) -> Result<GridFunction> {
        match self {
            FnSpec::IndicatorInterval { lo, hi } => {
                let b = bounds.unwrap_or(Box3::interval(*lo, *hi)?);
                let g = Grid::uniform(b, resolution)?;
                let (lo, hi) = (*lo, *hi);
                Ok(GridFunction::from_fn(g, move |x| {
                    if x[0] >= lo && x[0] <= hi {
                        1.0
                    } else {
                        0.0
                    }
                }))
            }
            FnSpec::IndicatorBox { dim, lo, hi } => {
                let inner = Box3::new(*dim, *lo, *hi)?;
                let b = bounds.unwrap_or(inner);
                let g = Grid::uniform(b, resolution)?;
                Ok(GridFunction::from_fn(g, move |x| {
                    if inner.contains(x) {
                        1.0
                    } else {
                        0.0
                    }
                }))
            }
            FnSpec::Triangular { width } => {
                let w = *width;
                let b = bounds.unwrap_or(Box3::interval(-w, w)?);
                let g = Grid::uniform(b, resolution)?;
                Ok(GridFunction::from_fn(g, move |x| (1.0 - x[0].abs() / w).max(0.0)))
            }
            FnSpec::Gaussian { sigma } => {
                let s = *sigma;
                let b = bounds.unwrap_or(Box3::interval(-4.0 * s, 4.0 * s)?);
                let g = Grid::uniform(b, resolution)?;
                Ok(GridFunction::from_fn(g, move |x| (-0.5 * (x[0] / s).powi(2)).exp()))
            }
            FnSpec::Exponential { rate } => {
                let r = *rate;
                let b = bounds.unwrap_or(Box3::interval(-8.0 / r, 8.0 / r)?);
                let g = Grid::uniform(b, resolution)?;
                Ok(GridFunction::from_fn(g, move |x| (-r * x[0].abs()).exp()))
            }
            FnSpec::Tabulated { path } => {
                let table = read_table(path)?;
                if table.len() < 2 {
                    return Err(Error::Config(format!(
                        "tabulated profile {} needs at least 2 rows",
                        path.display()
                    )));
                }
                let (xmin, xmax) = (table[0].0, table[table.len() - 1].0);
                let b = bounds.unwrap_or(Box3::interval(xmin, xmax)?);
                let g = Grid::uniform(b, resolution)?;
                Ok(GridFunction::from_fn(g, move |x| {
                    interp_clamped(&table, x[0]).max(0.0)
                }))
            }
        }
    }
}

fn read_table(path: &Path) -> Result<Vec<(f64, f64)>> {
    let text = std::fs::read_to_string(path)?;
    let mut rows = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace();
        let x: f64 = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Config(format!("{}:{}: bad row", path.display(), ln + 1)))?;
        let v: f64 = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Config(format!("{}:{}: bad row", path.display(), ln + 1)))?;
        rows.push((x, v));
    }
    rows.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    Ok(rows)
}

fn interp_clamped(table: &[(f64, f64)], x: f64) -> f64 {
    let n = table.len();
    if x <= table[0].0 {
        return table[0].1;
    }
    if x >= table[n - 1].0 {
        return table[n - 1].1;
    }
    let j = table.partition_point(|&(xi, _)| xi <= x);
    let (x0, v0) = table[j - 1];
    let (x1, v1) = table[j];
    v0 + (v1 - v0) * (x - x0) / (x1 - x0)
}

/// A fully parsed run description.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub problems: Vec<TheoremId>,
    pub density: Density,
    pub dim: usize,
    pub set_specs: Option<(GeomSpec, GeomSpec)>,
    pub fn_specs: Option<(FnSpec, FnSpec)>,
    pub grid_bounds: Option<Box3>,
    pub resolution: usize,
    pub lambda_count: usize,
    pub p_grid: Vec<f64>,
    pub t_grid: Vec<f64>,
    pub s_grid: Vec<SValue>,
    pub out_path: Option<PathBuf>,
    pub format: OutputFormat,
    pub tolerance_scale: f64,
    /// Hex digest of the raw config text, carried into structured reports.
    pub digest: String,
}

type Sections = BTreeMap<String, BTreeMap<String, String>>;

fn parse_sections(text: &str) -> Result<Sections> {
    let mut out: Sections = BTreeMap::new();
    let mut current: Option<String> = None;
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with(';') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let name = name.trim().to_string();
            if out.contains_key(&name) {
                return Err(Error::Config(format!("line {}: duplicate section [{name}]", ln + 1)));
            }
            out.insert(name.clone(), BTreeMap::new());
            current = Some(name);
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected key = value", ln + 1)))?;
        let section = current
            .as_ref()
            .ok_or_else(|| Error::Config(format!("line {}: key before any section", ln + 1)))?;
        out.get_mut(section)
            .unwrap()
            .insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(out)
}

fn parse_f64(section: &str, key: &str, v: &str) -> Result<f64> {
    v.parse::<f64>()
        .map_err(|_| Error::Config(format!("[{section}] {key} = '{v}' is not a number")))
}

fn parse_f64_list(section: &str, key: &str, v: &str) -> Result<Vec<f64>> {
    v.split(',')
        .map(|t| parse_f64(section, key, t.trim()))
        .collect()
}

fn parse_coords(section: &str, key: &str, v: &str, dim: usize) -> Result<[f64; 3]> {
    let vals = parse_f64_list(section, key, v)?;
    if vals.len() != dim {
        return Err(Error::Config(format!(
            "[{section}] {key}: expected {dim} coordinates, got {}",
            vals.len()
        )));
    }
    let mut out = [0.0; 3];
    out[..dim].copy_from_slice(&vals);
    Ok(out)
}

fn take<'a>(
    sec: &'a BTreeMap<String, String>,
    section: &str,
    key: &str,
) -> Result<&'a str> {
    sec.get(key)
        .map(|s| s.as_str())
        .ok_or_else(|| Error::Config(format!("[{section}] is missing '{key}'")))
}

fn parse_geom(sec: &BTreeMap<String, String>, name: &str) -> Result<GeomSpec> {
    match take(sec, name, "kind")? {
        "interval" => Ok(GeomSpec::Interval {
            lo: parse_f64(name, "lo", take(sec, name, "lo")?)?,
            hi: parse_f64(name, "hi", take(sec, name, "hi")?)?,
        }),
        "box" => {
            let lo_list = parse_f64_list(name, "lo", take(sec, name, "lo")?)?;
            let dim = lo_list.len();
            Ok(GeomSpec::Box {
                dim,
                lo: parse_coords(name, "lo", take(sec, name, "lo")?, dim)?,
                hi: parse_coords(name, "hi", take(sec, name, "hi")?, dim)?,
            })
        }
        "ball" => Ok(GeomSpec::Ball {
            radius: parse_f64(name, "radius", take(sec, name, "radius")?)?,
        }),
        "polygon" => {
            let raw = take(sec, name, "vertices")?;
            let mut vertices = Vec::new();
            for part in raw.split(';') {
                let xy = parse_f64_list(name, "vertices", part.trim())?;
                if xy.len() != 2 {
                    return Err(Error::Config(format!(
                        "[{name}] vertices: each entry needs two coordinates"
                    )));
                }
                vertices.push([xy[0], xy[1]]);
            }
            Ok(GeomSpec::Polygon { vertices })
        }
        other => Err(Error::Config(format!("[{name}] unknown kind '{other}'"))),
    }
}

fn parse_fn(sec: &BTreeMap<String, String>, name: &str, base: &Path) -> Result<FnSpec> {
    match take(sec, name, "kind")? {
        "indicator_interval" | "interval" => Ok(FnSpec::IndicatorInterval {
            lo: parse_f64(name, "lo", take(sec, name, "lo")?)?,
            hi: parse_f64(name, "hi", take(sec, name, "hi")?)?,
        }),
        "indicator_box" | "box" => {
            let lo_list = parse_f64_list(name, "lo", take(sec, name, "lo")?)?;
            let dim = lo_list.len();
            Ok(FnSpec::IndicatorBox {
                dim,
                lo: parse_coords(name, "lo", take(sec, name, "lo")?, dim)?,
                hi: parse_coords(name, "hi", take(sec, name, "hi")?, dim)?,
            })
        }
        "triangular" => Ok(FnSpec::Triangular {
            width: parse_f64(name, "width", take(sec, name, "width")?)?,
        }),
        "gaussian" => Ok(FnSpec::Gaussian {
            sigma: parse_f64(name, "sigma", take(sec, name, "sigma")?)?,
        }),
        "exponential" => Ok(FnSpec::Exponential {
            rate: parse_f64(name, "rate", take(sec, name, "rate")?)?,
        }),
        "tabulated" => {
            let rel = PathBuf::from(take(sec, name, "table")?);
            let path = if rel.is_absolute() { rel } else { base.join(rel) };
            if !path.exists() {
                return Err(Error::Config(format!(
                    "[{name}] table file {} does not exist",
                    path.display()
                )));
            }
            Ok(FnSpec::Tabulated { path })
        }
        other => Err(Error::Config(format!("[{name}] unknown kind '{other}'"))),
    }
}

fn parse_profile(token: &str) -> Result<Profile1d> {
    let (kind, arg) = match token.split_once(':') {
        Some((k, a)) => (k.trim(), Some(a.trim())),
        None => (token.trim(), None),
    };
    let need = |a: Option<&str>| -> Result<f64> {
        a.ok_or_else(|| Error::Config(format!("profile '{token}' needs a parameter")))
            .and_then(|v| parse_f64("density", "factors", v))
    };
    match kind {
        "gaussian" => Ok(Profile1d::Gaussian { sigma: need(arg)? }),
        "exponential" => Ok(Profile1d::Exponential { rate: need(arg)? }),
        "triangular" => Ok(Profile1d::Triangular { width: need(arg)? }),
        "cauchy" => Ok(Profile1d::Cauchy),
        "indicator" => Ok(Profile1d::Indicator { halfwidth: need(arg)? }),
        other => Err(Error::Config(format!("unknown profile '{other}'"))),
    }
}

fn parse_density(sec: &BTreeMap<String, String>, base: &Path, dim: usize) -> Result<Density> {
    match take(sec, "density", "kind")? {
        "lebesgue" => Ok(Density::Lebesgue),
        "gaussian" => Ok(Density::Gaussian { dim }),
        "sconcave" => Ok(Density::SConcavePower {
            s: parse_f64("density", "s", take(sec, "density", "s")?)?,
            radius: parse_f64("density", "radius", take(sec, "density", "radius")?)?,
        }),
        "product" => {
            let factors: Result<Vec<Profile1d>> = take(sec, "density", "factors")?
                .split(',')
                .map(parse_profile)
                .collect();
            let factors = factors?;
            if factors.len() != dim {
                return Err(Error::Config(format!(
                    "[density] factors: expected {dim} factors, got {}",
                    factors.len()
                )));
            }
            Ok(Density::QuasiConcaveProduct { factors })
        }
        "logconcave_table" => {
            let rel = PathBuf::from(take(sec, "density", "table")?);
            let path = if rel.is_absolute() { rel } else { base.join(rel) };
            if !path.exists() {
                return Err(Error::Config(format!(
                    "[density] table file {} does not exist",
                    path.display()
                )));
            }
            let potential = read_table(&path)?;
            if potential.len() < 2 {
                return Err(Error::Config("[density] table needs at least 2 rows".into()));
            }
            Ok(Density::LogConcaveExp { potential })
        }
        other => Err(Error::Config(format!("[density] unknown kind '{other}'"))),
    }
}

impl RunConfig {
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let base = path.parent().map(|p| p.to_path_buf()).unwrap_or_default();
        Self::from_str_with_base(&text, &base)
    }

    pub fn from_str_with_base(text: &str, base: &Path) -> Result<Self> {
        let sections = parse_sections(text)?;
        let known = ["run", "density", "set_a", "set_b", "fn_f", "fn_g", "grid", "sweep", "output"];
        for name in sections.keys() {
            if !known.contains(&name.as_str()) {
                return Err(Error::Config(format!("unknown section [{name}]")));
            }
        }
        let run = sections
            .get("run")
            .ok_or_else(|| Error::Config("missing [run] section".into()))?;
        let problem = take(run, "run", "problem")?;
        let problems: Vec<TheoremId> = if problem == "all" {
            TheoremId::ALL.to_vec()
        } else {
            vec![TheoremId::from_str(problem)
                .map_err(|_| Error::UnknownTheorem(problem.to_string()))?]
        };

        let set_specs = match (sections.get("set_a"), sections.get("set_b")) {
            (Some(a), Some(b)) => Some((parse_geom(a, "set_a")?, parse_geom(b, "set_b")?)),
            (None, None) => None,
            _ => return Err(Error::Config("set_a and set_b must both be present".into())),
        };
        let fn_specs = match (sections.get("fn_f"), sections.get("fn_g")) {
            (Some(f), Some(g)) => Some((parse_fn(f, "fn_f", base)?, parse_fn(g, "fn_g", base)?)),
            (None, None) => None,
            _ => return Err(Error::Config("fn_f and fn_g must both be present".into())),
        };
        if set_specs.is_none() && fn_specs.is_none() {
            return Err(Error::Config(
                "configure either a set pair (set_a/set_b) or a function pair (fn_f/fn_g)".into(),
            ));
        }

        let dim = set_specs
            .as_ref()
            .map(|(a, _)| a.dim())
            .or_else(|| fn_specs.as_ref().map(|(f, _)| f.dim()))
            .unwrap_or(1);
        if let Some((a, b)) = &set_specs {
            if a.dim() != b.dim() {
                return Err(Error::Config("set_a and set_b dimensions differ".into()));
            }
            let _ = b;
        }
        if let Some((f, g)) = &fn_specs {
            if f.dim() != g.dim() {
                return Err(Error::Config("fn_f and fn_g dimensions differ".into()));
            }
        }

        let density_sec = sections
            .get("density")
            .ok_or_else(|| Error::Config("missing [density] section".into()))?;
        let density = parse_density(density_sec, base, dim)?;

        let mut grid_bounds = None;
        let mut resolution = 64usize;
        let mut lambda_count = 129usize;
        if let Some(grid) = sections.get("grid") {
            if let (Some(lo), Some(hi)) = (grid.get("lo"), grid.get("hi")) {
                let lo_list = parse_f64_list("grid", "lo", lo)?;
                let d = lo_list.len();
                let lo = parse_coords("grid", "lo", lo, d)?;
                let hi = parse_coords("grid", "hi", hi, d)?;
                grid_bounds = Some(Box3::new(d, lo, hi)?);
            }
            if let Some(r) = grid.get("resolution") {
                resolution = r
                    .parse()
                    .map_err(|_| Error::Config(format!("[grid] resolution = '{r}'")))?;
            }
            if let Some(l) = grid.get("lambda") {
                lambda_count = l
                    .parse()
                    .map_err(|_| Error::Config(format!("[grid] lambda = '{l}'")))?;
            }
        }
        if resolution < 16 {
            return Err(Error::Config("resolution must be at least 16".into()));
        }
        if lambda_count < 2 {
            return Err(Error::Config("lambda count must be at least 2".into()));
        }

        let mut p_grid = vec![2.0];
        let mut t_grid = vec![0.5];
        let mut s_grid = vec![SValue::Finite(1.0)];
        if let Some(sweep) = sections.get("sweep") {
            if let Some(v) = sweep.get("p") {
                p_grid = parse_f64_list("sweep", "p", v)?;
            }
            if let Some(v) = sweep.get("t") {
                t_grid = parse_f64_list("sweep", "t", v)?;
            }
            if let Some(v) = sweep.get("s") {
                s_grid = v
                    .split(',')
                    .map(|tok| {
                        let tok = tok.trim();
                        if tok == "inf" {
                            Ok(SValue::PosInf)
                        } else {
                            SValue::from_f64(parse_f64("sweep", "s", tok)?)
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
            }
        }
        if p_grid.is_empty() || t_grid.is_empty() || s_grid.is_empty() {
            return Err(Error::Config("sweep grids must be nonempty".into()));
        }
        for &p in &p_grid {
            if !(p >= 1.0) {
                return Err(Error::Config(format!("sweep p = {p} must be >= 1")));
            }
        }
        for &t in &t_grid {
            if !(0.0..=1.0).contains(&t) {
                return Err(Error::Config(format!("sweep t = {t} outside [0,1]")));
            }
        }

        let mut out_path = None;
        let mut format = OutputFormat::Csv;
        let mut tolerance_scale = 1.0;
        if let Some(output) = sections.get("output") {
            if let Some(p) = output.get("path") {
                let rel = PathBuf::from(p);
                out_path = Some(if rel.is_absolute() { rel } else { base.join(rel) });
            }
            if let Some(f) = output.get("format") {
                format = f.parse()?;
            }
            if let Some(ts) = output.get("tolerance_scale") {
                tolerance_scale = parse_f64("output", "tolerance_scale", ts)?;
            }
        }
        if !(tolerance_scale > 0.0) {
            return Err(Error::Config("tolerance_scale must be positive".into()));
        }

        let digest = hex_digest(text);
        Ok(Self {
            problems,
            density,
            dim,
            set_specs,
            fn_specs,
            grid_bounds,
            resolution,
            lambda_count,
            p_grid,
            t_grid,
            s_grid,
            out_path,
            format,
            tolerance_scale,
            digest,
        })
    }

    /// Assemble the fixture a given problem needs from the configured
    /// operands. Set-level problems take the set pair as boxes, the
    /// surface-area and constant problems take it as support bodies, and the
    /// functional problems take the function pair.
    pub fn build_fixture(&self, id: TheoremId) -> Result<Fixture> {
        let kind = match id {
            TheoremId::LpBmiSets
            | TheoremId::LpBmiSconcave
            | TheoremId::LpPliSets
            | TheoremId::LpBmiProduct
            | TheoremId::Lemma1d => {
                let (a, b) = self.set_pair()?;
                FixtureKind::BoxPair(a.to_box()?, b.to_box()?)
            }
            TheoremId::Ismi | TheoremId::GzLogconcaveC | TheoremId::GzRadialDecay => {
                let (a, b) = self.set_pair()?;
                FixtureKind::BodyPair(a.to_body()?, b.to_body()?)
            }
            _ => {
                let (f, g) = self.fn_pair()?;
                FixtureKind::FunctionPair(
                    f.build(self.grid_bounds, self.resolution)?,
                    g.build(self.grid_bounds, self.resolution)?,
                )
            }
        };
        Ok(Fixture::new(&format!("config-{id}"), self.density.clone(), self.dim, kind))
    }

    fn set_pair(&self) -> Result<(&GeomSpec, &GeomSpec)> {
        self.set_specs
            .as_ref()
            .map(|(a, b)| (a, b))
            .ok_or_else(|| Error::Config("this problem needs set_a and set_b".into()))
    }

    fn fn_pair(&self) -> Result<(&FnSpec, &FnSpec)> {
        self.fn_specs
            .as_ref()
            .map(|(f, g)| (f, g))
            .ok_or_else(|| Error::Config("this problem needs fn_f and fn_g".into()))
    }
}

fn hex_digest(text: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(text.as_bytes());
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}
