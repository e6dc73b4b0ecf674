//! Acceptance suite: ten end-to-end criteria, one test and one printed
//! pass/fail line per criterion.

use lpbm::densities::{measure_of_body, Density};
use lpbm::functionals::{mixed_volume_vpf, residual_mpf, surface_area, EpsSchedule, FSpec};
use lpbm::geometry::{lyz_box_union, union_contains, SupportBody};
use lpbm::grid::{Box3, Grid, GridFunction};
use lpbm::harness::{
    builtin_fixtures, check_inequality, estimate_gz_constant, sweep, CheckParams, Fixture,
    FixtureKind, TheoremId,
};
use lpbm::revolution::{
    ball_body, level_body, multiple_volume, multiple_volume_direct, revolution_volume,
    revolution_volume_direct, MultipleFunction, RevolutionBody,
};
use lpbm::supconv::{oplus_ps, oplus_ps_naive, ts_supconv_brute, ConvolutionParams, SValue};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn conclude(tag: &str, failures: Vec<String>) {
    if failures.is_empty() {
        println!("{tag}: pass");
    } else {
        println!("{tag}: fail");
        for f in &failures {
            println!("  {f}");
        }
        panic!("{tag} failed with {} issue(s)", failures.len());
    }
}

fn indicator_box(b: Box3, res: usize) -> GridFunction {
    GridFunction::from_fn(Grid::uniform(b, res).unwrap(), |_| 1.0)
}

fn gf1(lo: f64, hi: f64, res: usize, f: impl Fn(f64) -> f64) -> GridFunction {
    let b = Box3::interval(lo, hi).unwrap();
    GridFunction::from_fn(Grid::uniform(b, res).unwrap(), |p| f(p[0]))
}

/// Euclidean distance from a point to an axis-aligned box.
fn dist_to_box(p: &[f64; 3], b: &Box3) -> f64 {
    (0..b.dim)
        .map(|a| (b.lo[a] - p[a]).max(p[a] - b.hi[a]).max(0.0).powi(2))
        .sum::<f64>()
        .sqrt()
}

fn dist_to_union(p: &[f64; 3], boxes: &[Box3]) -> f64 {
    boxes.iter().map(|b| dist_to_box(p, b)).fold(f64::INFINITY, f64::min)
}

fn dist(p: &[f64; 3], q: &[f64; 3], dim: usize) -> f64 {
    (0..dim).map(|a| (p[a] - q[a]).powi(2)).sum::<f64>().sqrt()
}

const P_GRID: [f64; 4] = [1.0, 1.5, 2.0, 4.0];

fn t_grid_9() -> Vec<f64> {
    (1..=9).map(|i| i as f64 / 10.0).collect()
}

fn random_interval(rng: &mut ChaCha8Rng) -> Box3 {
    let lo = rng.gen_range(-2.0..0.5);
    let len = rng.gen_range(0.3..2.0);
    Box3::interval(lo, lo + len).unwrap()
}

fn random_rect(rng: &mut ChaCha8Rng) -> Box3 {
    let l0 = rng.gen_range(-1.5..0.5);
    let l1 = rng.gen_range(-1.5..0.5);
    let e0 = rng.gen_range(0.4..1.5);
    let e1 = rng.gen_range(0.4..1.5);
    Box3::new(2, [l0, l1, 0.0], [l0 + e0, l1 + e1, 0.0]).unwrap()
}

/// Criterion 1: the support of the supremal convolution of two indicators
/// matches the lambda-union of weighted box sums within three grid steps.
#[test]
fn criterion_01_indicator_identity() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(20240817);
    let mut pairs: Vec<(Box3, Box3, usize)> = Vec::new();
    for _ in 0..12 {
        pairs.push((random_interval(&mut rng), random_interval(&mut rng), 64));
    }
    for _ in 0..8 {
        pairs.push((random_rect(&mut rng), random_rect(&mut rng), 16));
    }
    let mut failures = Vec::new();
    let t_grid = t_grid_9();
    for (pi, (a, b, res)) in pairs.iter().enumerate() {
        let f = indicator_box(*a, *res);
        let g = indicator_box(*b, *res);
        for &p in &P_GRID {
            for &t in &t_grid {
                let params = ConvolutionParams::new(p, t, SValue::PosInf, 33).unwrap();
                let h = oplus_ps(&f, &g, &params, 1.0 - t, t).unwrap();
                let step = (0..h.dim()).map(|ax| h.grid.step(ax)).fold(0.0f64, f64::max);
                let boxes =
                    lyz_box_union(a, b, p, 1.0 - t, t, &params.lambdas(&[])).unwrap();
                let supp = h.support_points();
                let d1 = supp
                    .iter()
                    .map(|pt| dist_to_union(pt, &boxes))
                    .fold(0.0f64, f64::max);
                let mut d2 = 0.0f64;
                for ci in 0..h.grid.cell_count() {
                    let c = h.grid.center(ci);
                    if union_contains(&boxes, &c) {
                        let dmin = supp
                            .iter()
                            .map(|pt| dist(&c, pt, h.dim()))
                            .fold(f64::INFINITY, f64::min);
                        d2 = d2.max(dmin);
                    }
                }
                let d = d1.max(d2);
                if d > 3.0 * step {
                    failures.push(format!(
                        "pair {pi} p={p} t={t}: hausdorff {d:.4} > {:.4}",
                        3.0 * step
                    ));
                }
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    if elapsed > 120.0 {
        failures.push(format!("runtime {elapsed:.1}s exceeds the 2 minute budget"));
    }
    conclude("criterion 01 indicator identity", failures);
}

/// Criterion 2: the Lp concavity sweep passes on all function fixtures, and
/// the p = 1 finite-s convolution matches an independent brute-force oracle.
#[test]
fn criterion_02_lp_bbl_sweep_and_oracle() {
    let base = CheckParams { lambda_count: 65, resolution: 128, ..CheckParams::default() };
    let fixtures = builtin_fixtures(TheoremId::LpBbl);
    let s_grid = [SValue::Zero, SValue::Finite(1.0), SValue::Finite(2.0), SValue::PosInf];
    let t_grid = t_grid_9();
    let reports =
        sweep(TheoremId::LpBbl, &fixtures, &P_GRID, &t_grid, &s_grid, &base).unwrap();
    let mut failures = Vec::new();
    for r in &reports {
        if !r.applicable {
            failures.push(format!("unexpectedly inapplicable: {:?}", r.notes));
        } else if !r.pass {
            failures.push(format!(
                "p={} t={} s={:?}: margin {:.3e} < -{:.3e}",
                r.p, r.t, r.s, r.margin, r.tolerance
            ));
        }
    }
    for fix in &fixtures {
        let (f, g) = match &fix.kind {
            FixtureKind::FunctionPair(f, g) => (f, g),
            _ => continue,
        };
        for sv in [1.0, 2.0] {
            for &t in &t_grid {
                let params =
                    ConvolutionParams::new(1.0, t, SValue::Finite(sv), 65).unwrap();
                let h = oplus_ps(f, g, &params, 1.0 - t, t).unwrap();
                let brute = ts_supconv_brute(f, g, t, SValue::Finite(sv)).unwrap();
                let (ih, ib) = (h.integral(), brute.integral());
                let rel = (ih - ib).abs() / ib.abs().max(1e-300);
                if rel > 1e-9 {
                    failures.push(format!(
                        "{} s={sv} t={t}: oracle integral mismatch {rel:.3e}",
                        fix.name
                    ));
                }
            }
        }
    }
    conclude("criterion 02 Lp concavity sweep and p=1 oracle", failures);
}

/// Criterion 3: the dimensional inequality for 1-concave densities passes on
/// the triangular (1-d) and cone (2-d) fixtures, with equality when A = B.
#[test]
fn criterion_03_sconcave_measures() {
    let base = CheckParams { lambda_count: 65, resolution: 128, ..CheckParams::default() };
    let fixtures = builtin_fixtures(TheoremId::LpBmiSconcave);
    let reports = sweep(
        TheoremId::LpBmiSconcave,
        &fixtures,
        &[1.0, 2.0],
        &[0.25, 0.5, 0.75],
        &[],
        &base,
    )
    .unwrap();
    let mut failures = Vec::new();
    for r in &reports {
        if !(r.applicable && r.pass) {
            failures.push(format!(
                "p={} t={}: margin {:.3e}, tol {:.3e}, notes {}",
                r.p, r.t, r.margin, r.tolerance, r.notes
            ));
        }
    }
    let equal_fixtures = [
        Fixture::new(
            "equal-tri-1d",
            Density::SConcavePower { s: 1.0, radius: 2.0 },
            1,
            FixtureKind::BoxPair(
                Box3::interval(0.0, 0.5).unwrap(),
                Box3::interval(0.0, 0.5).unwrap(),
            ),
        ),
        Fixture::new(
            "equal-cone-2d",
            Density::SConcavePower { s: 1.0, radius: 2.0 },
            2,
            FixtureKind::BoxPair(
                Box3::new(2, [0.0, 0.0, 0.0], [0.5, 0.4, 0.0]).unwrap(),
                Box3::new(2, [0.0, 0.0, 0.0], [0.5, 0.4, 0.0]).unwrap(),
            ),
        ),
    ];
    for fix in &equal_fixtures {
        for p in [1.0, 2.0] {
            let params = CheckParams { p, t: 0.5, ..base };
            let r = check_inequality(TheoremId::LpBmiSconcave, fix, &params).unwrap();
            if !r.applicable || r.margin.abs() > r.tolerance {
                failures.push(format!(
                    "{} p={p}: |margin| {:.3e} exceeds tol {:.3e}",
                    fix.name,
                    r.margin.abs(),
                    r.tolerance
                ));
            }
        }
    }
    conclude("criterion 03 1/s-concave measure inequality", failures);
}

/// Criterion 4: the product-measure statements pass on weakly unconditional
/// fixtures and the hypothesis checker rejects the shifted fixture.
#[test]
fn criterion_04_product_measures() {
    let base = CheckParams { lambda_count: 65, resolution: 128, ..CheckParams::default() };
    let mut failures = Vec::new();
    let pli = builtin_fixtures(TheoremId::LpPliProduct);
    let reports =
        sweep(TheoremId::LpPliProduct, &pli, &[1.0, 2.0], &[0.3, 0.6], &[], &base).unwrap();
    let mut rejections = 0usize;
    for (r, fix_idx) in reports.iter().zip((0..pli.len()).flat_map(|i| vec![i; 4])) {
        let name = &pli[fix_idx].name;
        if name.contains("reject") {
            if r.applicable {
                failures.push(format!("{name}: shifted fixture was not rejected"));
            } else {
                rejections += 1;
            }
        } else if !(r.applicable && r.pass) {
            failures.push(format!(
                "{name} p={} t={}: margin {:.3e}, notes {}",
                r.p, r.t, r.margin, r.notes
            ));
        }
    }
    if rejections == 0 {
        failures.push("no rejection recorded for the shifted fixture".into());
    }
    let bmi = builtin_fixtures(TheoremId::LpBmiProduct);
    let reports = sweep(
        TheoremId::LpBmiProduct,
        &bmi,
        &[1.5, 2.0, 4.0],
        &[0.25, 0.5, 0.75],
        &[],
        &base,
    )
    .unwrap();
    for r in &reports {
        if !(r.applicable && r.pass) {
            failures.push(format!(
                "set form p={} t={}: margin {:.3e}, notes {}",
                r.p, r.t, r.margin, r.notes
            ));
        }
    }
    conclude("criterion 04 product-measure statements", failures);
}

/// Criterion 5: at p = 1 the statement collapses to the classical one; the
/// right-hand side is invariant under the lambda grid size to 1e-9.
#[test]
fn criterion_05_classical_recovery() {
    let base = CheckParams { resolution: 128, ..CheckParams::default() };
    let fixtures = builtin_fixtures(TheoremId::LpPliProduct);
    let mut failures = Vec::new();
    for fix in fixtures.iter().filter(|f| !f.name.contains("reject")) {
        for t in [0.3, 0.6] {
            let mut rhs_values = Vec::new();
            for lc in [17usize, 65, 129] {
                let params = CheckParams { p: 1.0, t, lambda_count: lc, ..base };
                let r = check_inequality(TheoremId::LpPliProduct, fix, &params).unwrap();
                if !r.applicable {
                    failures.push(format!("{} t={t}: inapplicable", fix.name));
                    continue;
                }
                rhs_values.push(r.rhs);
            }
            if let (Some(lo), Some(hi)) = (
                rhs_values.iter().cloned().reduce(f64::min),
                rhs_values.iter().cloned().reduce(f64::max),
            ) {
                let rel = (hi - lo) / hi.abs().max(1e-300);
                if rel > 1e-9 {
                    failures.push(format!(
                        "{} t={t}: RHS varies by {rel:.3e} across lambda grids",
                        fix.name
                    ));
                }
            }
        }
    }
    conclude("criterion 05 classical recovery at p=1", failures);
}

/// Criterion 6: the surface-area functional of an indicator pair matches its
/// closed form (n+s)/p * |K|, and the two liminf surrogates agree.
#[test]
fn criterion_06_surface_area_closed_form() {
    let sched = EpsSchedule::default();
    let mut failures = Vec::new();
    let interval = indicator_box(Box3::interval(0.0, 1.0).unwrap(), 256);
    // The grid box is the disk's tight bounding box: the scalar action then
    // maps cells to cells and the difference quotients stay staircase-free.
    let disk_box = Box3::new(2, [-1.0, -1.0, 0.0], [1.0, 1.0, 0.0]).unwrap();
    let disk = GridFunction::from_fn(Grid::uniform(disk_box, 36).unwrap(), |p| {
        if p[0] * p[0] + p[1] * p[1] <= 1.0 {
            1.0
        } else {
            0.0
        }
    });
    let cases: [(&str, &GridFunction, usize, f64); 2] = [
        ("interval", &interval, 1, 1.0),
        ("disk", &disk, 2, std::f64::consts::PI),
    ];
    for (name, f, n, vol) in cases {
        for p in [1.0, 2.0] {
            for s in [1.0, 2.0] {
                let rep = surface_area(
                    &Density::Lebesgue,
                    f,
                    f,
                    p,
                    SValue::Finite(s),
                    &sched,
                )
                .unwrap();
                let expect = (n as f64 + s) / p * vol;
                let got = rep.value();
                let rel = (got - expect).abs() / expect;
                if rel > 0.05 {
                    failures.push(format!(
                        "{name} p={p} s={s}: S {got:.4} vs {expect:.4} (rel {rel:.3})"
                    ));
                }
                let agree = (rep.richardson - rep.trailing_min).abs()
                    / rep.trailing_min.abs().max(1.0);
                if agree > 0.02 {
                    failures.push(format!(
                        "{name} p={p} s={s}: surrogates disagree by {agree:.3}"
                    ));
                }
            }
        }
    }
    conclude("criterion 06 surface-area closed form", failures);
}

/// Criterion 7: the Minkowski-first and isoperimetric-type statements pass,
/// equality holds when A = B, and the mixed volume and residual match their
/// Lebesgue closed forms.
#[test]
fn criterion_07_minkowski_first_and_ismi() {
    let base = CheckParams { lambda_count: 65, resolution: 128, ..CheckParams::default() };
    let mut failures = Vec::new();
    let mfi = builtin_fixtures(TheoremId::Mfi);
    let reports = sweep(
        TheoremId::Mfi,
        &mfi,
        &[1.0, 2.0],
        &[0.5],
        &[SValue::Finite(1.0), SValue::Finite(2.0), SValue::PosInf],
        &base,
    )
    .unwrap();
    for r in reports.iter().filter(|r| r.applicable) {
        if !r.pass {
            failures.push(format!(
                "MFI p={} s={:?}: margin {:.3e}, tol {:.3e}",
                r.p, r.s, r.margin, r.tolerance
            ));
        }
    }
    let ismi = builtin_fixtures(TheoremId::Ismi);
    let reports = sweep(TheoremId::Ismi, &ismi, &[1.0, 2.0], &[0.5], &[], &base).unwrap();
    for r in &reports {
        if !(r.applicable && r.pass) {
            failures.push(format!(
                "ISMI p={}: margin {:.3e}, tol {:.3e}, notes {}",
                r.p, r.margin, r.tolerance, r.notes
            ));
        }
    }
    // Equality cases: identical operands.
    let eq_fn = mfi
        .iter()
        .find(|f| f.name == "mfi-ind-1d")
        .map(|f| match &f.kind {
            FixtureKind::FunctionPair(a, _) => a.clone(),
            _ => unreachable!(),
        })
        .unwrap();
    let eq_fix = Fixture::new(
        "mfi-equal",
        Density::Lebesgue,
        1,
        FixtureKind::FunctionPair(eq_fn.clone(), eq_fn),
    );
    let r = check_inequality(TheoremId::Mfi, &eq_fix, &base).unwrap();
    if !r.applicable || r.margin.abs() > r.tolerance {
        failures.push(format!(
            "MFI equality: |margin| {:.3e} exceeds tol {:.3e}",
            r.margin.abs(),
            r.tolerance
        ));
    }
    let eq_body = ismi.iter().find(|f| f.name == "ismi-equal-intervals").unwrap();
    let r = check_inequality(TheoremId::Ismi, eq_body, &base).unwrap();
    if !r.applicable || r.margin.abs() > r.tolerance {
        failures.push(format!(
            "ISMI equality: |margin| {:.3e} exceeds tol {:.3e}",
            r.margin.abs(),
            r.tolerance
        ));
    }
    // Closed forms against Lebesgue with the power transform of exponent p/n.
    let sched = EpsSchedule::default();
    let bodies: [(&str, SupportBody, usize); 2] = [
        ("interval", SupportBody::interval(-1.0, 1.0).unwrap(), 1),
        ("disk", SupportBody::disk(1.0, 360).unwrap(), 2),
    ];
    for (name, a, n) in bodies {
        let p = 2.0;
        let fsp = FSpec::Power { kappa: p / n as f64 };
        let vol = measure_of_body(&Density::Lebesgue, &a, 2048).unwrap();
        let (v, _) = mixed_volume_vpf(&Density::Lebesgue, &fsp, &a, &a, p, &sched).unwrap();
        if (v - vol).abs() / vol > 0.05 {
            failures.push(format!("{name}: V {v:.4} vs |K| {vol:.4}"));
        }
        let (m, _) = residual_mpf(&Density::Lebesgue, &fsp, &a, p, &sched).unwrap();
        if m.abs() > 0.05 * vol {
            failures.push(format!("{name}: M {m:.4} not near 0"));
        }
    }
    conclude("criterion 07 Minkowski-first and isoperimetric forms", failures);
}

/// Criterion 8: Fubini volume identities for bodies of revolution and the
/// moment-body volume identity.
#[test]
fn criterion_08_fubini_and_moment_body() {
    let mut failures = Vec::new();
    let rel_check = |failures: &mut Vec<String>, name: &str, got: f64, expect: f64, tol: f64| {
        let rel = (got - expect).abs() / expect.abs().max(1e-300);
        if rel > tol {
            failures.push(format!("{name}: {got:.5} vs {expect:.5} (rel {rel:.3})"));
        }
    };
    // Revolution bodies with n + s <= 3.
    let tri = gf1(-1.0, 1.0, 96, |x| (1.0 - x.abs()).max(0.0));
    let ind = gf1(0.0, 1.0, 96, |_| 1.0);
    for (name, profile, s, fiber_res) in [
        ("tri-s1", &tri, 1usize, 512usize),
        ("tri-s2", &tri, 2, 256),
        ("ind-s1", &ind, 1, 512),
        ("ind-s2", &ind, 2, 256),
    ] {
        let body = RevolutionBody::new(s, profile.clone()).unwrap();
        let closed = revolution_volume(&body);
        let direct = revolution_volume_direct(&body, fiber_res).unwrap();
        rel_check(&mut failures, name, direct, closed, 0.02);
    }
    let sq = GridFunction::from_fn(
        Grid::uniform(Box3::new(2, [0.0, 0.0, 0.0], [1.0, 1.0, 0.0]).unwrap(), 48).unwrap(),
        |_| 1.0,
    );
    let body2 = RevolutionBody::new(1, sq).unwrap();
    rel_check(
        &mut failures,
        "square-s1",
        revolution_volume_direct(&body2, 256).unwrap(),
        revolution_volume(&body2),
        0.02,
    );
    // Product profiles with nm + ell <= 4.
    let base = gf1(0.0, 1.0, 48, |_| 1.0);
    for (name, copies, ell, fiber_res) in [
        ("m2-l1", 2usize, 1usize, 128usize),
        ("m2-l2", 2, 2, 64),
        ("m3-l1", 3, 1, 96),
    ] {
        let mf = MultipleFunction::new(base.clone(), copies).unwrap();
        let closed = multiple_volume(&mf, ell);
        let direct = multiple_volume_direct(&mf, ell, fiber_res).unwrap();
        rel_check(&mut failures, name, direct, closed, 0.02);
    }
    // Moment-body volume identity |K_n(f)| = int f / ||f||_inf.
    let family: Vec<(&str, GridFunction)> = vec![
        ("exp-1d", gf1(-30.0, 30.0, 8192, |x| (-x.abs()).exp())),
        ("gauss-1d", gf1(-10.0, 10.0, 8192, |x| (-0.5 * x * x).exp())),
        ("tri-1d", gf1(-1.5, 1.5, 8192, |x| (1.0 - x.abs()).max(0.0))),
        (
            "gauss-2d",
            GridFunction::from_fn(
                Grid::uniform(
                    Box3::new(2, [-6.0, -6.0, 0.0], [6.0, 6.0, 0.0]).unwrap(),
                    256,
                )
                .unwrap(),
                |p| (-0.5 * (p[0] * p[0] + p[1] * p[1])).exp(),
            ),
        ),
    ];
    for (name, f) in &family {
        let n = f.dim();
        let k = ball_body(f, n as f64, 256).unwrap();
        let expect = f.integral() / f.max_value();
        rel_check(&mut failures, &format!("moment-{name}"), k.volume(), expect, 0.01);
    }
    conclude("criterion 08 Fubini and moment-body identities", failures);
}

/// Criterion 9: the dimensional Brunn-Minkowski suite for product and
/// log-concave measures, the empirical constant, and the level-body ratio.
#[test]
fn criterion_09_gz_suite() {
    let base = CheckParams { lambda_count: 65, resolution: 128, ..CheckParams::default() };
    let mut failures = Vec::new();
    for (id, pg, tg) in [
        (TheoremId::GzProductMin, vec![1.0], vec![0.25, 0.5, 0.75]),
        (TheoremId::GzLpProduct, vec![1.0, 2.0], vec![0.3, 0.7]),
        (TheoremId::GzRadialDecay, vec![1.0, 2.0], vec![0.25, 0.75]),
    ] {
        let fixtures = builtin_fixtures(id);
        let reports = sweep(id, &fixtures, &pg, &tg, &[], &base).unwrap();
        let n_fixture_rows = pg.len() * tg.len();
        for (ri, r) in reports.iter().enumerate() {
            let name = &fixtures[ri / n_fixture_rows].name;
            if name.contains("reject") {
                if r.applicable {
                    failures.push(format!("{name}: fixture was not rejected"));
                }
            } else if !(r.applicable && r.pass) {
                failures.push(format!(
                    "{name} p={} t={}: margin {:.3e}, notes {}",
                    r.p, r.t, r.margin, r.notes
                ));
            }
        }
    }
    // Empirical constant: exactly 1 on the symmetric fixture, finite and
    // moderate over the whole family.
    let all = builtin_fixtures(TheoremId::GzLogconcaveC);
    let symmetric: Vec<Fixture> =
        all.iter().filter(|f| f.name.contains("symmetric")).cloned().collect();
    let est = estimate_gz_constant(&symmetric, &[1.0, 2.0], &[0.25, 0.5, 0.75], &base).unwrap();
    if (est.c - 1.0).abs() > 1e-6 {
        failures.push(format!("symmetric C_est {:.9} differs from 1", est.c));
    }
    let est = estimate_gz_constant(&all, &[1.0, 2.0], &[0.25, 0.5, 0.75], &base).unwrap();
    if !est.c.is_finite() || est.c >= 10.0 || est.c < 1.0 - 1e-9 {
        failures.push(format!("family C_est {:.6} outside [1, 10)", est.c));
    }
    // Level body against the moment body on log-concave profiles.
    for (name, f) in [
        ("exp-1d", gf1(-30.0, 30.0, 8192, |x| (-x.abs()).exp())),
        ("gauss-1d", gf1(-10.0, 10.0, 8192, |x| (-0.5 * x * x).exp())),
    ] {
        let rep = level_body(&f).unwrap();
        if !rep.km_ratio.is_finite() || rep.km_ratio >= 10.0 {
            failures.push(format!("{name}: sandwich ratio {:.4}", rep.km_ratio));
        }
        if !rep.k_in_l {
            failures.push(format!("{name}: moment body escapes the level body"));
        }
    }
    conclude("criterion 09 dimensional inequality suite", failures);
}

/// Criterion 10: the pruned scatter kernel is numerically identical to the
/// naive reference kernel on the fixture corpus.
#[test]
fn criterion_10_kernel_equivalence() {
    let mut failures = Vec::new();
    let mut pairs: Vec<(String, GridFunction, GridFunction)> = Vec::new();
    for id in [
        TheoremId::Bbl,
        TheoremId::LpBbl,
        TheoremId::LpPliProduct,
        TheoremId::PlRecovery,
    ] {
        for fix in builtin_fixtures(id) {
            if let FixtureKind::FunctionPair(f, g) = fix.kind {
                pairs.push((fix.name, f, g));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..2 {
        let a = random_interval(&mut rng);
        let b = random_interval(&mut rng);
        pairs.push((format!("random-{i}"), indicator_box(a, 64), indicator_box(b, 64)));
    }
    for (name, f, g) in &pairs {
        for (p, s) in [
            (1.0, SValue::Zero),
            (2.0, SValue::Finite(1.0)),
            (1.5, SValue::Finite(2.0)),
            (4.0, SValue::PosInf),
        ] {
            for t in [0.3, 0.7] {
                let params = ConvolutionParams::new(p, t, s, 33).unwrap();
                let hp = oplus_ps(f, g, &params, 1.0 - t, t).unwrap();
                let hn = oplus_ps_naive(f, g, &params, 1.0 - t, t).unwrap();
                if hp.grid != hn.grid {
                    failures.push(format!("{name} p={p} t={t}: output grids differ"));
                    continue;
                }
                let scale = hn.max_value().max(1.0);
                let worst = hp
                    .values
                    .iter()
                    .zip(&hn.values)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0f64, f64::max);
                if worst > 1e-12 * scale {
                    failures.push(format!(
                        "{name} p={p} t={t} s={s:?}: kernels differ by {worst:.3e}"
                    ));
                }
            }
        }
    }
    conclude("criterion 10 kernel equivalence", failures);
}
