use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::Path;

use simons_core::identities::{invariant_spreads, SuiteConfig};
use simons_core::quadrature::standard_test_functions;
use simons_core::{
    build_calabi, build_rule, certify_all, check_suite_with, gap_report, pinch_sweep, theorem_bound,
    HarmonicImmersion, SurfaceIntegrator,
};
use thiserror::Error;

use crate::config::RunConfig;
use crate::report::{AlgebraSection, DegreeReport, GapSection, IntegralEntry, RunReport, VERSION};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Verify,
    Integrate,
    Gap,
    Algebra,
    All,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Integrate => "integrate",
            Command::Gap => "gap",
            Command::Algebra => "algebra",
            Command::All => "all",
        }
    }

    fn verifies(self) -> bool {
        matches!(self, Command::Verify | Command::All)
    }

    fn integrates(self) -> bool {
        matches!(self, Command::Integrate | Command::All)
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Core(#[from] simons_core::Error),
    #[error("cannot write quadrature rule to {path}: {reason}")]
    Export { path: String, reason: String },
}

/// Pointwise residual suite for one degree, merged into `entry`.
fn verify_degree(imm: &HarmonicImmersion, cfg: &RunConfig, entry: &mut DegreeReport) -> Result<(), RunError> {
    let report = check_suite_with(
        imm,
        &SuiteConfig {
            samples: cfg.samples,
            seed: cfg.seed,
            tolerance: cfg.tol_pointwise,
            precision: cfg.precision,
        },
    )?;
    entry.invariants = report.invariants.clone();
    entry.residuals = Some(report.checks.iter().map(|c| (c.id.name().to_string(), c.max_abs)).collect());
    entry.tolerances = Some(report.checks.iter().map(|c| (c.id.name().to_string(), c.tolerance)).collect());
    entry
        .failures
        .extend(report.checks.iter().filter(|c| !c.pass).map(|c| c.id.name().to_string()));
    Ok(())
}

fn integrate_degree(
    imm: &HarmonicImmersion,
    cfg: &RunConfig,
    export: Option<&Path>,
    entry: &mut DegreeReport,
) -> Result<(), RunError> {
    let rule = build_rule(imm, cfg.quad_order)?;
    if let Some(dir) = export {
        let path = dir.join(format!("rule_s{}_n{}.csv", imm.degree(), cfg.quad_order));
        std::fs::write(&path, rule.to_csv()).map_err(|e| RunError::Export {
            path: path.display().to_string(),
            reason: e.to_string(),
        })?;
    }
    let integrator = SurfaceIntegrator::new(imm, &rule, cfg.precision)?;
    if entry.invariants.is_empty() {
        entry.invariants = invariant_spreads(integrator.invariants());
    }

    let tol = cfg.tol_integral;
    let mut integrals = BTreeMap::new();
    let mut add = |name: String, lhs: f64, rhs: f64, tolerance: f64, extra: bool| {
        let pass = (lhs - rhs).abs() < tolerance && extra;
        integrals.insert(name, IntegralEntry { lhs, rhs, tolerance, pass });
    };
    for which in 1..=3u8 {
        let pair = integrator.identity(which)?;
        // the first identity's right side is twice an integral of squares
        let sign_ok = which != 1 || pair.rhs >= -1e-10;
        add(format!("identity{which}"), pair.lhs, pair.rhs, tol, sign_ok);
    }
    let k: Vec<f64> = integrator.invariants().iter().map(|r| r.k).collect();
    add("gauss_bonnet".into(), rule.integrate(&k), 4.0 * PI, tol, true);
    let s = f64::from(imm.degree());
    let area = 2.0 * PI * s * (s + 1.0);
    add("area".into(), rule.total_weight(), area, tol * area, true);
    for (j, u) in standard_test_functions(imm.ambient_dim()).iter().enumerate() {
        let b = integrator.bochner(u)?;
        add(format!("bochner{j}"), b.residual, 0.0, tol * b.gradient_energy, true);
    }
    entry
        .failures
        .extend(integrals.iter().filter(|(_, e)| !e.pass).map(|(n, _)| n.clone()));
    entry.integrals = Some(integrals);
    Ok(())
}

fn gap_section() -> Result<GapSection, RunError> {
    let report = gap_report();
    let cp = &report.critical;
    let checks: BTreeMap<String, bool> = [
        (
            "endpoints_exact",
            report.endpoints.at_five_thirds == "0" && report.endpoints.at_nine_fifths == "0",
        ),
        ("critical_residual", cp.f_prime_residual < 1e-10),
        ("bisection_agrees", (cp.s_star - cp.s_star_bisection).abs() < 1e-10),
        ("forbidden_ordered", cp.forbidden_lo < cp.forbidden_hi),
        (
            "calabi_not_excluded",
            !theorem_bound(5.0 / 3.0, 5.0 / 3.0)? && !theorem_bound(9.0 / 5.0, 9.0 / 5.0)?,
        ),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect();
    let pass = checks.values().all(|v| *v);
    Ok(GapSection { report, checks, pass })
}

fn algebra_section(cfg: &RunConfig) -> AlgebraSection {
    let identities = certify_all();
    let pinch = pinch_sweep(cfg.pinch_samples, cfg.seed);
    let pass = identities.iter().all(|c| c.holds) && pinch.max_lhs <= 1e-12 && pinch.equality_exact;
    AlgebraSection { identities, pinch, pass }
}

/// Runs a subcommand; the caller validates `cfg` first.
pub fn execute(command: Command, cfg: &RunConfig, export: Option<&Path>) -> Result<RunReport, RunError> {
    let mut per_degree = BTreeMap::new();
    if command.verifies() || command.integrates() {
        for &s in &cfg.degree {
            let imm = build_calabi(s)?;
            let mut entry = DegreeReport {
                invariants: BTreeMap::new(),
                residuals: None,
                tolerances: None,
                integrals: None,
                failures: Vec::new(),
                pass: true,
            };
            if command.verifies() {
                verify_degree(&imm, cfg, &mut entry)?;
            }
            if command.integrates() {
                integrate_degree(&imm, cfg, export, &mut entry)?;
            }
            entry.pass = entry.failures.is_empty();
            per_degree.insert(s.to_string(), entry);
        }
    }
    let gap = matches!(command, Command::Gap | Command::All).then(gap_section).transpose()?;
    let algebra = matches!(command, Command::Algebra | Command::All).then(|| algebra_section(cfg));

    let pass = per_degree.values().all(|d| d.pass)
        && gap.as_ref().is_none_or(|g| g.pass)
        && algebra.as_ref().is_none_or(|a| a.pass);
    Ok(RunReport {
        version: VERSION,
        command: command.name().to_string(),
        config: cfg.clone(),
        per_degree,
        gap,
        algebra,
        pass,
    })
}
