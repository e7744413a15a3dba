//! One function per subcommand, each mapping the flat [`RunConfig`] onto
//! library calls and collecting the results into a [`Report`].

use std::f64::consts::PI;

use pfbind::closed_form::{radiative_correction_log_approx, radiative_correction_upper_bound};
use pfbind::radial::radiative_routes;
use pfbind::{
    alpha_threshold, dipole_spectrum, f_lambda, hydrogen_ground_energy, mass_renormalization,
    run_verification, self_energy_error_budget, self_energy_leading, self_energy_rayleigh,
    solve_ground_state, CheckKind, Error, GroundState, IntegralMethod, RadialGrid,
    RadialPotential, Result, SelfEnergyOptions, SpectralMeasure, VerifyConfig,
};

use crate::config::RunConfig;
use crate::report::{Cell, Report};

/// Default box: 60 ground-state Bohr radii (the 1s scale is 2/(βZ)).
const AUTO_R_MAX_OVER_BZ: f64 = 120.0;
const AUTO_N_POINTS: usize = 4000;

fn integral_method(cfg: &RunConfig) -> IntegralMethod {
    if cfg.integral_method == "quadrature" {
        IntegralMethod::Quadrature { order: cfg.quad_order }
    } else {
        IntegralMethod::ClosedForm
    }
}

fn potential_for(cfg: &RunConfig) -> Result<RadialPotential> {
    if cfg.potential_file.is_empty() {
        RadialPotential::coulomb(cfg.beta * cfg.z)
    } else {
        RadialPotential::from_file(&cfg.potential_file)
    }
}

/// Resolve the grid, replacing the 0 sentinels by the Coulomb-scale
/// defaults. A custom potential has no intrinsic scale, so it requires an
/// explicit box.
fn resolve_grid(cfg: &RunConfig) -> Result<RadialGrid> {
    if !cfg.potential_file.is_empty() {
        if cfg.r_max <= 0.0 || cfg.n_points == 0 {
            return Err(Error::validation(
                "r_max",
                "a custom potential has no intrinsic length scale; give r_max and n_points",
            ));
        }
        return RadialGrid::new(cfg.r_max, cfg.n_points);
    }
    let bz = cfg.beta * cfg.z;
    if !(bz.is_finite() && bz > 0.0) {
        return Err(Error::validation("beta", format!("βZ must be positive, got {bz}")));
    }
    let r_max = if cfg.r_max > 0.0 { cfg.r_max } else { AUTO_R_MAX_OVER_BZ / bz };
    let n_points = if cfg.n_points > 0 { cfg.n_points } else { AUTO_N_POINTS };
    RadialGrid::new(r_max, n_points)
}

fn push_potential_rows(rep: &mut Report, cfg: &RunConfig, grid: &RadialGrid) {
    if cfg.potential_file.is_empty() {
        rep.kv("params", "beta", Cell::Num(cfg.beta));
        rep.kv("params", "z", Cell::Num(cfg.z));
    } else {
        rep.kv("params", "potential_file", Cell::text(&cfg.potential_file));
    }
    rep.kv("params", "r_max", Cell::Num(grid.r_max));
    rep.kv("params", "n_points", Cell::Int(grid.n_points as i64));
}

/// Leading self-energy, its error budget, and the decomposed trial quotient.
pub fn cmd_self_energy(cfg: &RunConfig) -> Result<Report> {
    if !cfg.sweep_lambda.is_empty() {
        return self_energy_sweep(cfg);
    }
    let est = self_energy_leading(cfg.alpha, cfg.lambda_cut)?;
    let budget = self_energy_error_budget(cfg.alpha, cfg.lambda_cut, cfg.a_split)?;
    let opts = SelfEnergyOptions {
        quad_order: cfg.quad_order,
        envelope_width: (cfg.envelope_width > 0.0).then_some(cfg.envelope_width),
        sphere_order: cfg.sphere_order,
    };
    let ray = self_energy_rayleigh(cfg.alpha, cfg.lambda_cut, &opts)?;

    let mut rep = Report::keyed("self-energy");
    rep.kv("params", "alpha", Cell::Num(cfg.alpha));
    rep.kv("params", "lambda_cut", Cell::Num(cfg.lambda_cut));
    rep.kv("params", "a_split", Cell::Num(cfg.a_split));
    rep.kv("self_energy_leading", "leading", Cell::Num(est.leading));
    rep.kv("self_energy_leading", "error_coeff", Cell::Num(est.error_coeff));
    rep.kv("self_energy_leading", "error_bound", Cell::Num(est.error_bound));
    rep.kv("self_energy_error_budget", "value", Cell::Num(budget.value));
    rep.kv("self_energy_error_budget", "in_regime", Cell::Flag(budget.in_regime));
    rep.kv("self_energy_rayleigh", "quotient", Cell::Num(ray.quotient));
    rep.kv("self_energy_rayleigh", "norm_sq", Cell::Num(ray.norm_sq));
    rep.kv("self_energy_rayleigh", "field_energy", Cell::Num(ray.field_energy));
    rep.kv("self_energy_rayleigh", "kinetic_norm", Cell::Num(ray.kinetic_norm));
    for ct in &ray.cross_terms {
        rep.kv("self_energy_rayleigh", &format!("cross:{}", ct.name), Cell::Num(ct.value));
    }
    rep.kv("self_energy_rayleigh", "residual_order", Cell::Num(ray.residual_order));

    // verdict: the quotient may exceed the leading term only by the budgeted
    // O(α²) amount (and never undershoot it)
    let excess = ray.quotient - ray.kinetic_norm - est.leading;
    let slack = 1e-10 * est.leading.abs().max(f64::MIN_POSITIVE);
    let consistent = excess >= -slack && excess <= est.error_bound + slack;
    rep.kv("consistency", "quotient_within_error_band", Cell::Flag(consistent));
    Ok(rep)
}

fn parse_sweep(spec: &str) -> Result<(f64, f64, usize)> {
    let bad = |msg: String| Error::validation("sweep_lambda", msg);
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(bad(format!("expected start:stop:count, got {spec:?}")));
    }
    let start: f64 =
        parts[0].parse().map_err(|_| bad(format!("bad start value {:?}", parts[0])))?;
    let stop: f64 = parts[1].parse().map_err(|_| bad(format!("bad stop value {:?}", parts[1])))?;
    let count: usize =
        parts[2].parse().map_err(|_| bad(format!("bad count value {:?}", parts[2])))?;
    if !(start.is_finite() && stop.is_finite() && start > 0.0 && stop > start) {
        return Err(bad(format!("need 0 < start < stop, got {start}..{stop}")));
    }
    if count < 2 {
        return Err(bad(format!("need at least 2 sweep points, got {count}")));
    }
    Ok((start, stop, count))
}

fn self_energy_sweep(cfg: &RunConfig) -> Result<Report> {
    let (start, stop, count) = parse_sweep(&cfg.sweep_lambda)?;
    let mut rep = Report::new("self-energy", vec!["op", "lambda", "leading"]);
    for i in 0..count {
        let t = i as f64 / (count - 1) as f64;
        let lambda = start + (stop - start) * t;
        let est = self_energy_leading(cfg.alpha, lambda)?;
        rep.push(vec![Cell::text("self_energy_sweep"), Cell::Num(lambda), Cell::Num(est.leading)]);
    }
    Ok(rep)
}

/// Coupling threshold for guaranteed extra binding, with the probe verdict.
pub fn cmd_threshold(cfg: &RunConfig) -> Result<Report> {
    let e0 = hydrogen_ground_energy(cfg.beta, cfg.z)?;
    let th = alpha_threshold(e0, cfg.lambda_cut, cfg.a_split, Some(cfg.probe_alpha))?;
    let mut rep = Report::keyed("threshold");
    rep.kv("params", "beta", Cell::Num(cfg.beta));
    rep.kv("params", "z", Cell::Num(cfg.z));
    rep.kv("params", "lambda_cut", Cell::Num(cfg.lambda_cut));
    rep.kv("params", "a_split", Cell::Num(cfg.a_split));
    rep.kv("hydrogen_ground_energy", "e0", Cell::Num(e0));
    rep.kv("alpha_threshold", "rc_term", Cell::Num(th.rc_term));
    rep.kv("alpha_threshold", "schwarz_term", Cell::Num(th.schwarz_term));
    rep.kv("alpha_threshold", "alpha_max", Cell::Num(th.alpha_max));
    rep.kv("alpha_threshold", "budget_consistent", Cell::Flag(th.budget_consistent));
    rep.kv("alpha_threshold", "probe_alpha", Cell::Num(cfg.probe_alpha));
    rep.kv(
        "alpha_threshold",
        "binding_guaranteed_at_probe",
        Cell::Flag(th.binding_guaranteed_at.is_some()),
    );
    Ok(rep)
}

struct SpectralSolve {
    ground: GroundState,
    measure: SpectralMeasure,
}

fn solve_spectral(pot: &RadialPotential, grid: &RadialGrid) -> Result<SpectralSolve> {
    let ground = solve_ground_state(pot, grid)?;
    let measure = dipole_spectrum(pot, grid, &ground)?;
    Ok(SpectralSolve { ground, measure })
}

/// Exact radiative correction (both routes), the cutoff coefficient F, the
/// logarithmic approximant, the upper bound, and the charge-scaling table.
pub fn cmd_radiative(cfg: &RunConfig) -> Result<Report> {
    let method = integral_method(cfg);
    let pot = potential_for(cfg)?;
    let grid = resolve_grid(cfg)?;
    let solve = solve_spectral(&pot, &grid)?;
    let ground = &solve.ground;
    let measure = &solve.measure;
    let routes =
        radiative_routes(&pot, &grid, ground, measure, cfg.alpha, cfg.lambda_cut, method)?;

    let mut rep = Report::keyed("radiative");
    push_potential_rows(&mut rep, cfg, &grid);
    rep.kv("params", "alpha", Cell::Num(cfg.alpha));
    rep.kv("params", "lambda_cut", Cell::Num(cfg.lambda_cut));
    rep.kv("solve_ground_state", "e0", Cell::Num(ground.e0));
    rep.kv("solve_ground_state", "p_norm_sq", Cell::Num(ground.p_norm_sq));
    rep.kv("dipole_spectrum", "states", Cell::Int(measure.len() as i64));
    rep.kv("dipole_spectrum", "weight_sum", Cell::Num(measure.weight_sum()));
    rep.kv("dipole_spectrum", "smallest_gap", Cell::Num(measure.smallest_gap()));
    rep.kv("dipole_spectrum", "mean_gap", Cell::Num(measure.mean_gap()));

    let log_form = 8.0 * PI / 3.0 * cfg.lambda_cut.ln_1p();
    rep.kv("f_lambda", "f_value", Cell::Num(routes.f_value));
    rep.kv("f_lambda", "log_form", Cell::Num(log_form));
    rep.kv("f_lambda", "ratio_to_log_form", Cell::Num(routes.f_value / log_form));

    // E carries no coupling factor; the printed routes are α·E
    let e_exact = 16.0 * PI * measure.source_norm_sq * routes.f_value;
    rep.kv("radiative_routes", "e_value", Cell::Num(e_exact));
    rep.kv("radiative_routes", "alpha_e_spectral", Cell::Num(routes.spectral));
    rep.kv("radiative_routes", "alpha_e_resolvent", Cell::Num(routes.resolvent));
    rep.kv("radiative_routes", "relative_difference", Cell::Num(routes.relative_difference));

    let r_c = radiative_correction_log_approx(cfg.alpha, ground.e0, cfg.lambda_cut)?;
    rep.kv("radiative_correction_log_approx", "r_c", Cell::Num(r_c));

    let upper = radiative_correction_upper_bound(ground.p_norm_sq, cfg.lambda_cut)?;
    rep.kv("radiative_correction_upper_bound", "e_upper_bound", Cell::Num(upper));
    rep.kv("radiative_correction_upper_bound", "holds", Cell::Flag(e_exact <= upper));

    // charge scaling: at fixed Λ the correction tracks e0 ∝ Z²; matching the
    // cutoff to the binding scale (Λ = e0) makes it grow faster
    if cfg.potential_file.is_empty() {
        push_z_scaling(&mut rep, cfg, &solve, method)?;
    }
    Ok(rep)
}

fn push_z_scaling(
    rep: &mut Report,
    cfg: &RunConfig,
    base: &SpectralSolve,
    method: IntegralMethod,
) -> Result<()> {
    let op = "z_scaling";
    let mut scales = Vec::new(); // (4e0F at fixed Λ, 4e0F at Λ=e0)
    for factor in [1.0, 2.0] {
        let zz = cfg.z * factor;
        let doubled_solve;
        let solve = if factor == 1.0 {
            base
        } else {
            let pot = RadialPotential::coulomb(cfg.beta * zz)?;
            let r_max = if cfg.r_max > 0.0 {
                cfg.r_max / factor // keep the box at the same multiple of the shrunken 1s scale
            } else {
                AUTO_R_MAX_OVER_BZ / (cfg.beta * zz)
            };
            let n_points = if cfg.n_points > 0 { cfg.n_points } else { AUTO_N_POINTS };
            let grid = RadialGrid::new(r_max, n_points)?;
            doubled_solve = solve_spectral(&pot, &grid)?;
            &doubled_solve
        };
        let e0 = solve.ground.e0;
        let f_fixed = f_lambda(&solve.measure, cfg.lambda_cut, method)?;
        let f_matched = f_lambda(&solve.measure, e0, method)?;
        let scale_fixed = 4.0 * e0 * f_fixed;
        let scale_matched = 4.0 * e0 * f_matched;
        rep.kv(op, &format!("e0(z={zz})"), Cell::Num(e0));
        rep.kv(op, &format!("rc_fixed_lambda(z={zz})"), Cell::Num(cfg.alpha * scale_fixed));
        rep.kv(op, &format!("rc_matched_lambda(z={zz})"), Cell::Num(cfg.alpha * scale_matched));
        scales.push((scale_fixed, scale_matched));
    }
    rep.kv(op, "fixed_lambda_growth", Cell::Num(scales[1].0 / scales[0].0));
    rep.kv(op, "matched_lambda_growth", Cell::Num(scales[1].1 / scales[0].1));
    Ok(())
}

/// Dump the dipole spectral measure, one state per row.
pub fn cmd_spectrum(cfg: &RunConfig) -> Result<Report> {
    let pot = potential_for(cfg)?;
    let grid = resolve_grid(cfg)?;
    let solve = solve_spectral(&pot, &grid)?;
    let mut rep = Report::new("spectrum", vec!["op", "delta", "weight"]);
    for (gap, weight) in solve.measure.gaps.iter().zip(&solve.measure.weights) {
        rep.push(vec![Cell::text("dipole_spectrum"), Cell::Num(*gap), Cell::Num(*weight)]);
    }
    Ok(rep)
}

/// Both renormalized-mass conventions over a cutoff sweep, with the
/// spectral F evaluated on the configured potential's dipole measure.
pub fn cmd_mass(cfg: &RunConfig) -> Result<Report> {
    let method = integral_method(cfg);
    let pot = potential_for(cfg)?;
    let grid = resolve_grid(cfg)?;
    let solve = solve_spectral(&pot, &grid)?;
    let mut lambdas = vec![0.5, 1.0, 2.0, 5.0, 10.0];
    if !lambdas.contains(&cfg.lambda_over_m) && cfg.lambda_over_m > 0.0 {
        lambdas.push(cfg.lambda_over_m);
        lambdas.sort_by(|a, b| a.partial_cmp(b).unwrap());
    }
    let mut rep = Report::new(
        "mass",
        vec!["op", "lambda_over_m", "f_value", "spectral_ratio", "log_ratio", "relative_difference"],
    );
    for lambda in lambdas {
        let f = f_lambda(&solve.measure, lambda, method)?;
        let m = mass_renormalization(cfg.alpha, lambda, f)?;
        rep.push(vec![
            Cell::text("mass_renormalization"),
            Cell::Num(lambda),
            Cell::Num(f),
            Cell::Num(m.spectral_ratio),
            Cell::Num(m.log_ratio),
            Cell::Num(m.relative_difference),
        ]);
    }
    Ok(rep)
}

/// Run the verification battery. Returns the report plus the process exit
/// code: 0 all passed, 2 a computation failed to converge, 3 an identity
/// check failed.
pub fn cmd_verify(cfg: &RunConfig) -> Result<(Report, i32)> {
    // the battery has its own reference workload (unit-strength Coulomb);
    // only explicit user choices override it
    let mut vc = VerifyConfig { quick: cfg.quick, ..VerifyConfig::default() };
    vc.alpha = cfg.alpha;
    vc.lambda_cut = cfg.lambda_cut;
    vc.a_split = cfg.a_split;
    if cfg.is_explicit("beta") || cfg.is_explicit("z") {
        vc.beta_z = cfg.beta * cfg.z;
    }
    if cfg.r_max > 0.0 {
        vc.r_max = cfg.r_max;
    }
    if cfg.n_points > 0 {
        vc.n_points = cfg.n_points;
    }
    let checks = run_verification(&vc);
    let mut rep = Report::new("verify", vec!["op", "kind", "status", "detail"]);
    let mut convergence_failed = false;
    let mut property_failed = false;
    for c in &checks {
        if !c.passed {
            match c.kind {
                CheckKind::Convergence => convergence_failed = true,
                CheckKind::Property => property_failed = true,
            }
        }
        rep.push(vec![
            Cell::text(&c.name),
            Cell::text(match c.kind {
                CheckKind::Property => "property",
                CheckKind::Convergence => "convergence",
            }),
            Cell::text(if c.passed { "pass" } else { "FAIL" }),
            Cell::text(&c.detail),
        ]);
    }
    let code = if convergence_failed {
        2
    } else if property_failed {
        3
    } else {
        0
    };
    Ok((rep, code))
}

/// Composite scenario reports.
pub fn cmd_report(cfg: &RunConfig, preset: &str) -> Result<Report> {
    let mut rep = Report::keyed("report");
    match preset {
        "small-cutoff" => preset_small_cutoff(cfg, &mut rep)?,
        "hydrogen" => preset_hydrogen(cfg, &mut rep)?,
        "helium" => preset_helium(cfg, &mut rep)?,
        "all" => {
            preset_small_cutoff(cfg, &mut rep)?;
            preset_hydrogen(cfg, &mut rep)?;
            preset_helium(cfg, &mut rep)?;
        }
        other => {
            return Err(Error::validation(
                "preset",
                format!("unknown preset {other:?} (expected small-cutoff, hydrogen, helium, or all)"),
            ))
        }
    }
    Ok(rep)
}

/// Cutoff-free limit: Λ = e0 with a vanishing split parameter, where the
/// threshold approaches 1/(45π).
fn preset_small_cutoff(cfg: &RunConfig, rep: &mut Report) -> Result<()> {
    let op = "small-cutoff";
    let a_split = 1e-3;
    let e0 = hydrogen_ground_energy(cfg.beta, 1.0)?;
    let th = alpha_threshold(e0, e0, a_split, None)?;
    let reference = 1.0 / (45.0 * PI);
    rep.kv(op, "beta", Cell::Num(cfg.beta));
    rep.kv(op, "z", Cell::Num(1.0));
    rep.kv(op, "e0", Cell::Num(e0));
    rep.kv(op, "lambda_cut", Cell::Num(e0));
    rep.kv(op, "a_split", Cell::Num(a_split));
    rep.kv(op, "rc_term", Cell::Num(th.rc_term));
    rep.kv(op, "schwarz_term", Cell::Num(th.schwarz_term));
    rep.kv(op, "alpha_max", Cell::Num(th.alpha_max));
    rep.kv(op, "reference_estimate", Cell::Num(reference));
    rep.kv(op, "relative_to_reference", Cell::Num((th.alpha_max - reference).abs() / reference));
    Ok(())
}

/// Z = 1 at Λ = 1, a = 1/4: the Schwarz branch dominates near 1/(64π), and
/// the exact radiative correction sits beside its logarithmic approximant.
fn preset_hydrogen(cfg: &RunConfig, rep: &mut Report) -> Result<()> {
    let op = "hydrogen";
    let a_split = 0.25;
    let lambda_cut = 1.0;
    let e0 = hydrogen_ground_energy(cfg.beta, 1.0)?;
    let th = alpha_threshold(e0, lambda_cut, a_split, Some(cfg.beta))?;
    let reference = 1.0 / 200.0;
    rep.kv(op, "beta", Cell::Num(cfg.beta));
    rep.kv(op, "z", Cell::Num(1.0));
    rep.kv(op, "e0", Cell::Num(e0));
    rep.kv(op, "lambda_cut", Cell::Num(lambda_cut));
    rep.kv(op, "a_split", Cell::Num(a_split));
    rep.kv(op, "rc_term", Cell::Num(th.rc_term));
    rep.kv(op, "schwarz_term", Cell::Num(th.schwarz_term));
    rep.kv(op, "alpha_max", Cell::Num(th.alpha_max));
    rep.kv(op, "reference_estimate", Cell::Num(reference));
    rep.kv(op, "relative_to_reference", Cell::Num((th.schwarz_term - reference).abs() / reference));
    rep.kv(op, "probe_alpha", Cell::Num(cfg.beta));
    rep.kv(op, "binding_guaranteed_at_probe", Cell::Flag(th.binding_guaranteed_at.is_some()));

    // exact radiative correction next to the logarithmic approximant
    let method = integral_method(cfg);
    let pot = RadialPotential::coulomb(cfg.beta)?;
    let grid = RadialGrid::coulomb_default(cfg.beta)?;
    let solve = solve_spectral(&pot, &grid)?;
    let routes =
        radiative_routes(&pot, &grid, &solve.ground, &solve.measure, cfg.beta, lambda_cut, method)?;
    let r_c = radiative_correction_log_approx(cfg.beta, solve.ground.e0, lambda_cut)?;
    rep.kv(op, "alpha_e_spectral", Cell::Num(routes.spectral));
    rep.kv(op, "alpha_e_resolvent", Cell::Num(routes.resolvent));
    rep.kv(op, "f_value", Cell::Num(routes.f_value));
    rep.kv(op, "r_c_log_approx", Cell::Num(r_c));
    rep.kv(op, "exact_to_log_ratio", Cell::Num(routes.spectral / r_c));
    Ok(())
}

/// Z = 2 at Λ = 1, a = 1/4: the radiative branch dominates; the computed
/// value and the quoted reference estimate e0/21 disagree by a documented
/// factor, so both are reported side by side.
fn preset_helium(cfg: &RunConfig, rep: &mut Report) -> Result<()> {
    let op = "helium";
    let a_split = 0.25;
    let lambda_cut = 1.0;
    let e0 = hydrogen_ground_energy(cfg.beta, 2.0)?;
    let th = alpha_threshold(e0, lambda_cut, a_split, Some(cfg.beta))?;
    let reference_rc = e0 / 21.0;
    rep.kv(op, "beta", Cell::Num(cfg.beta));
    rep.kv(op, "z", Cell::Num(2.0));
    rep.kv(op, "e0", Cell::Num(e0));
    rep.kv(op, "lambda_cut", Cell::Num(lambda_cut));
    rep.kv(op, "a_split", Cell::Num(a_split));
    rep.kv(op, "rc_term", Cell::Num(th.rc_term));
    rep.kv(op, "reference_estimate_rc", Cell::Num(reference_rc));
    rep.kv(op, "rc_discrepancy_factor", Cell::Num(reference_rc / th.rc_term));
    rep.kv(op, "schwarz_term", Cell::Num(th.schwarz_term));
    rep.kv(op, "alpha_max", Cell::Num(th.alpha_max));
    rep.kv(
        op,
        "dominant_branch",
        Cell::text(if th.rc_term <= th.schwarz_term { "rc" } else { "schwarz" }),
    );
    Ok(())
}
