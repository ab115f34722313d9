//! The invariant suite behind `twedge validate`.

use serde::Serialize;

use twedge::edgeworth::{bracket_gap, goe_sq_expansion_alt_at, goe_sq_expansion_at, tau};
use twedge::finite_n::{
    expm_closed, expm_scaling_squaring, expm_series, f_n1_sq_exact_at, f_n2_exact, factor_of, generator,
    goe_n2_oracle, solve_systems, Variant, ROUTE_TOLERANCE,
};
use twedge::fredholm::{epsilon_direct, hermite_support_end};
use twedge::limits::{
    a2_plus_b2, identity_residuals, painleve_hm_check, HastingsMcLeod, LimitPoint, LimitTables,
};
use twedge::mc_harness::rate_fit;
use twedge::output::{format_real, CsvRecord};
use twedge::specfun::c_phi;

use crate::commands::emit;
use crate::config::RunConfig;
use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    fn at_most(name: &str, measured: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            measured,
            tolerance,
            pass: measured <= tolerance,
        }
    }
}

impl CsvRecord for Check {
    fn header() -> &'static [&'static str] {
        &["check", "measured", "tolerance", "pass"]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.name.clone(),
            format_real(self.measured),
            format_real(self.tolerance),
            self.pass.to_string(),
        ]
    }
}

fn max_abs<I: IntoIterator<Item = f64>>(xs: I) -> f64 {
    xs.into_iter().fold(0.0, |m, x| m.max(x.abs()))
}

const SPOT_S: [f64; 4] = [-4.0, -2.0, 0.0, 2.0];

fn quick_checks(m: usize) -> Result<Vec<Check>, CliError> {
    let mut checks = Vec::new();

    let (mut series, mut squaring, mut det) = (0.0f64, 0.0f64, 0.0f64);
    for k in 0..100 {
        let (a, b) = (0.3 * (k % 10) as f64 + 0.05, 0.3 * (k / 10) as f64 + 0.1);
        for v in [Variant::System1, Variant::System2] {
            let e = expm_closed(a, b, v);
            let g = generator(a, b, v);
            series = series.max((e - expm_series(&g, 30)).abs().max());
            squaring = squaring.max((e - expm_scaling_squaring(&g)).abs().max());
            det = det.max((e.determinant() - 1.0).abs());
        }
    }
    checks.push(Check::at_most("expm closed vs 30-term series", series, 1e-12));
    checks.push(Check::at_most("expm closed vs scaling-squaring", squaring, 1e-12));
    checks.push(Check::at_most("det exp(M) = 1", det, 1e-11));

    let points = SPOT_S
        .iter()
        .map(|&s| LimitPoint::compute(s, m))
        .collect::<twedge::Result<Vec<_>>>()?;
    checks.push(Check::at_most(
        "nu = alpha - q",
        max_abs(points.iter().map(|p| p.nu - (p.alpha - p.q()))),
        1e-8,
    ));
    checks.push(Check::at_most(
        "E_c2(c) - E_c2(0) = -20c^2 v0",
        max_abs(points.iter().flat_map(|p| {
            [-1.0, 1.0].map(|c| p.e_c2(c) - p.e_c2(0.0) + 20.0 * c * c * p.bundle.v[0])
        })),
        1e-12,
    ));
    let residuals = SPOT_S
        .iter()
        .map(|&s| identity_residuals(s, m))
        .collect::<twedge::Result<Vec<_>>>()?;
    checks.push(Check::at_most(
        "q1 = sq - qv + pu",
        max_abs(residuals.iter().map(|r| r.q1_edge)),
        1e-6,
    ));
    checks.push(Check::at_most(
        "q1 = p' + qv",
        max_abs(residuals.iter().map(|r| r.q1_derivative)),
        1e-6,
    ));
    checks.push(Check::at_most(
        "q^2 = u^2 - 2v",
        max_abs(residuals.iter().map(|r| r.q_squared)),
        1e-6,
    ));

    let n = 20;
    let far = solve_systems(n, 0.0, hermite_support_end(n) + 1.0, m)?;
    let cp = c_phi(n)?;
    let boundary = max_abs([
        far.x[0],
        far.x[1] - 1.0,
        far.x[2] - cp,
        far.y[0] - 2.0 * cp,
        far.y[1],
        far.y[2] - 1.0,
        factor_of(&far)? - 1.0,
        f_n2_exact(n, far.t, m)? - 1.0,
    ]);
    checks.push(Check::at_most("boundary values at large t", boundary, 0.0));
    checks.push(Check::at_most(
        "F2(6) = 1 to tail size",
        (1.0 - LimitPoint::compute(6.0, m)?.f2()).abs(),
        1e-7,
    ));

    let ns = [20, 40, 80, 160];
    let synthetic: Vec<f64> = ns.iter().map(|&n| 2.0 / n as f64).collect();
    checks.push(Check::at_most(
        "rate fit of C/n",
        (rate_fit(&ns, &synthetic)?.slope + 1.0).abs(),
        1e-12,
    ));
    Ok(checks)
}

fn full_checks(m: usize) -> Result<Vec<Check>, CliError> {
    let mut checks = Vec::new();
    let tab = LimitTables::shared()?;

    let pc = painleve_hm_check(-8.0, 6.0, m)?;
    checks.push(Check::at_most("Fredholm q vs Painleve II on [-8, 6]", pc.max_match_error, 1e-7));
    let hm = HastingsMcLeod::global()?;
    let mut f2_gap = 0.0f64;
    for s in SPOT_S {
        f2_gap = f2_gap.max((LimitPoint::compute(s, m)?.f2() - hm.f2(s)?).abs());
    }
    checks.push(Check::at_most("F2 determinant vs exp(-int (x-s)q^2)", f2_gap, 1e-8));
    checks.push(Check::at_most(
        "nu = alpha - q on the table",
        max_abs(tab.points().iter().map(|p| p.nu - (p.alpha - p.q()))),
        1e-8,
    ));
    let mut eta_gap = 0.0f64;
    for s in [-3.0, 0.0, 2.0] {
        let pt = tab.at(s)?;
        for c in [0.0, 1.0] {
            eta_gap = eta_gap.max((pt.eta(c) - a2_plus_b2(s, c, m)?).abs());
        }
    }
    checks.push(Check::at_most("eta vs independent a2 + b2", eta_gap, 1e-7));

    let mut pipeline = 0.0f64;
    for t in [1.0, 2.0, 3.0] {
        pipeline = pipeline.max((f_n1_sq_exact_at(2, t, m)? - goe_n2_oracle(t)?).abs());
    }
    checks.push(Check::at_most("n = 2 pipeline vs double integral", pipeline, 1e-6));

    let (mut route, mut direct) = (0.0f64, 0.0f64);
    for n in [20, 40] {
        for s in [-4.0, -2.0, 0.0] {
            let t = tau(n, 0.0, s)?;
            let b = solve_systems(n, 0.0, t, m)?;
            let d = epsilon_direct(n, t, m)?;
            route = route.max(b.discrepancy);
            direct = direct.max((b.q_eps() - d.q_eps).abs()).max((b.vtilde_eps() - d.vtilde_eps).abs());
        }
    }
    checks.push(Check::at_most("system ODE vs direct resolvent", direct, 1e-6));
    checks.push(Check::at_most("closed-form exp vs system ODE", route, ROUTE_TOLERANCE));

    let (mut gap, mut gap_formula) = (0.0f64, 0.0f64);
    for k in 0..=20 {
        let pt = tab.at(-6.0 + 0.5 * k as f64)?;
        for c in [-1.0, 0.0, 1.0] {
            let d = goe_sq_expansion_alt_at(&pt, 100, c)?.coeff23 - goe_sq_expansion_at(&pt, 100, c)?.coeff23;
            gap = gap.max(d.abs());
            gap_formula = gap_formula.max((d / pt.f2() - bracket_gap(&pt, c)).abs() / (1.0 + d.abs()));
        }
    }
    checks.push(Check::at_most("bracket vs standard n^-2/3 coefficient", gap, 1e-10));
    checks.push(Check::at_most("bracket - standard = closed-form gap", gap_formula, 1e-9));
    Ok(checks)
}

pub fn run(cfg: &RunConfig) -> Result<(), CliError> {
    let mut checks = quick_checks(cfg.m)?;
    if !cfg.quick {
        checks.extend(full_checks(cfg.m)?);
    }
    for c in &checks {
        eprintln!(
            "{} {}: measured {:.3e}, tolerance {:.1e}",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.measured,
            c.tolerance
        );
    }
    if cfg.output.is_some() {
        emit(cfg, &checks)?;
    }
    let failed: Vec<&str> = checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Validation(format!("{} check(s) failed: {}", failed.len(), failed.join("; "))))
    }
}
