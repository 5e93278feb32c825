//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use gme_core::cli::ordering_report;
use gme_core::family::e_psi_xr;
use gme_core::mixed_hull::sample_e_psi_xy;
use gme_core::surface::grid_coord;
use gme_core::*;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const INTERP_TOL: f64 = 5e-3;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn solver() -> SolverConfig {
    SolverConfig::with_seed(7)
}

fn ghz_corner() -> Result<Outcome> {
    let e = solve_gme(&make_ghz(), &solver())?.e_sin2;
    let l = lambda_family(1.0, 0.0)?;
    let err = (e - 0.5).abs().max((l - 0.5f64.sqrt()).abs());
    Ok(outcome(err <= 1e-9, format!("E_sin2 {e:.12}, Λ {l:.12}, error {err:.1e}")))
}

fn w_corners() -> Result<Outcome> {
    let target = 5.0 / 9.0;
    let values = [
        solve_gme(&make_w(), &solver())?.e_sin2,
        solve_gme(&make_w_tilde(), &solver())?.e_sin2,
        e_psi(0.0, 1.0)?,
        e_psi(0.0, 0.0)?,
    ];
    let err = values.iter().map(|v| (v - target).abs()).fold(0.0, f64::max);
    Ok(outcome(err <= 1e-9, format!("solver W {:.12}, W̃ {:.12}; formula W {:.12}, W̃ {:.12}", values[0], values[1], values[2], values[3])))
}

fn w_closest_product() -> Result<Outcome> {
    let phi = solve_gme(&make_w(), &solver())?.closest_product;
    let a = (2.0f64 / 3.0).sqrt();
    let b = (1.0f64 / 3.0).sqrt();
    // Per-site phases drop out of |⟨target_i|φ_i⟩|.
    let fidelity: f64 = phi
        .sites()
        .iter()
        .map(|s| (Complex64::new(a, 0.0) * s[0] + Complex64::new(b, 0.0) * s[1]).norm_sqr())
        .product();
    Ok(outcome(fidelity >= 1.0 - 1e-8, format!("fidelity 1 − {:.1e}", 1.0 - fidelity)))
}

fn formula_vs_solver() -> Result<Outcome> {
    let n = 25;
    let mut worst: f64 = 0.0;
    let mut at = (0.0, 0.0);
    for i in 0..n {
        for j in 0..(n - i) {
            let (x, y) = (grid_coord(i, n), grid_coord(j, n));
            let psi = family_pure_state(&FamilyPoint::new(x, y)?)?;
            let d = (e_psi(x, y)? - solve_gme(&psi, &solver())?.e_sin2).abs();
            if d > worst {
                worst = d;
                at = (x, y);
            }
        }
    }
    Ok(outcome(worst <= 1e-7, format!("max |ΔE| {worst:.2e} at ({}, {})", at.0, at.1)))
}

fn negativity_corners() -> Result<Outcome> {
    let n_ghz = negativity_of(&make_ghz().projector(), 3)?;
    let n_w = negativity_of(&make_w().projector(), 3)?;
    let err = (n_ghz - 1.0).abs().max((n_w - 8f64.sqrt() / 3.0).abs());
    Ok(outcome(err <= 1e-10, format!("N(GHZ) {n_ghz:.12}, N(W) {n_w:.12}")))
}

fn separable_point() -> Result<Outcome> {
    let (x0, y0) = (0.25, 0.375);
    let n0 = negativity_of(&family_density_matrix(&FamilyPoint::new(x0, y0)?)?, 3)?;
    let e0 = MixedSurface::build(201, 201)?.eval(x0, y0)?;
    let rho = mixed_gme_surface(201, 201)?;
    let mut lowest = f64::INFINITY;
    for (x, y, v) in rho.nodes() {
        if v.is_finite() && ((x - x0).powi(2) + (y - y0).powi(2)).sqrt() > 0.05 {
            lowest = lowest.min(v);
        }
    }
    Ok(outcome(
        n0.abs() <= 1e-10 && e0 <= 2e-3 && lowest > 1e-3,
        format!("N {n0:.1e}, E_ρ {e0:.1e}, min E_ρ away from it {lowest:.3e}"),
    ))
}

fn nonconvex_region() -> Result<Outcome> {
    let raw = sample_e_psi_xy(201, 201)?;
    let report = verify_convexity(&raw, 100_000, 11)?;
    let pair = report
        .violating_pairs
        .iter()
        .find(|p| p.violation > INTERP_TOL && p.p1.0 > 0.8 && p.p2.0 > 0.8);
    let rho = mixed_gme_surface(201, 201)?;
    let mut gap: f64 = 0.0;
    for i in 0..raw.nx {
        if raw.x(i) > 0.8 {
            continue;
        }
        for j in 0..raw.ny {
            let (a, b) = (raw.get(i, j), rho.get(i, j));
            if a.is_finite() {
                gap = gap.max((a - b).abs());
            }
        }
    }
    let found = match pair {
        Some(p) => format!(
            "pair ({:.3}, {:.3})–({:.3}, {:.3}) violation {:.2e}",
            p.p1.0, p.p1.1, p.p2.0, p.p2.1, p.violation
        ),
        None => "no violating pair with x > 0.8".to_string(),
    };
    Ok(outcome(pair.is_some() && gap <= INTERP_TOL, format!("{found}; max |E_ψ − E_ρ| for x ≤ 0.8: {gap:.1e}")))
}

fn hull_oracle_agreement() -> Result<Outcome> {
    let d = mixed_gme_surface(101, 101)?.max_abs_diff(&hull_oracle(101, 101)?);
    Ok(outcome(d <= INTERP_TOL, format!("max |Δ| {d:.2e}")))
}

fn final_convexity() -> Result<Outcome> {
    let report = verify_convexity(&mixed_gme_surface(201, 201)?, 100_000, 3)?;
    Ok(outcome(
        report.passes(INTERP_TOL),
        format!("max violation {:.2e} over {} pairs", report.max_violation, report.n_segments_tested),
    ))
}

fn symmetries() -> Result<Outcome> {
    let n = 51;
    let mut analytic: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let (x, r) = (grid_coord(i, n), grid_coord(j, n));
            analytic = analytic.max((e_psi_xr(x, r)? - e_psi_xr(x, 1.0 - r)?).abs());
            if x + r <= 1.0 {
                let y = r;
                analytic = analytic.max((e_psi(x, y)? - e_psi(x, (1.0 - x - y).max(0.0))?).abs());
            }
        }
    }
    let mixed = MixedSurface::build(201, 201)?;
    let mut interp: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let (x, r) = (grid_coord(i, n), grid_coord(j, n));
            let y = (1.0 - x) * r;
            let y_mirror = ((1.0 - x) * (1.0 - r)).max(0.0);
            interp = interp.max((mixed.eval(x, y)? - mixed.eval(x, y_mirror)?).abs());
        }
    }
    Ok(outcome(
        analytic <= 1e-10 && interp <= INTERP_TOL,
        format!("analytic {analytic:.1e}, interpolated {interp:.1e}"),
    ))
}

fn ordering_disagreement() -> Result<Outcome> {
    let pairs = ordering_report(21, 100, 0).map_err(|e| Error::InvalidState(e.message))?;
    let has_pure = pairs.iter().any(|d| d.involves((1.0, 0.0), (0.0, 1.0)));
    let consistent = pairs.iter().all(|d| d.holds());
    Ok(outcome(
        !pairs.is_empty() && has_pure && consistent,
        format!("{} pairs, GHZ/W pair {}", pairs.len(), if has_pure { "present" } else { "missing" }),
    ))
}

fn twirl_invariance() -> Result<Outcome> {
    let n = 25;
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..(n - i) {
            let (x, y) = (grid_coord(i, n), grid_coord(j, n));
            let rho = family_density_matrix(&FamilyPoint::new(x, y)?)?;
            worst = worst.max(twirl(&rho).max_abs_diff(&rho));
            for _ in 0..20 {
                let phases = [0; 3].map(|_| rng.gen_range(0.0..std::f64::consts::TAU));
                let psi = family_pure_state(&FamilyPoint::with_phases(x, y, phases)?)?;
                worst = worst.max(twirl(&psi.projector()).max_abs_diff(&rho));
            }
        }
    }
    Ok(outcome(worst <= 1e-12, format!("max entry error {worst:.1e}")))
}

type Criterion = (&'static str, fn() -> Result<Outcome>, Option<Duration>);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("GHZ corner", ghz_corner, Some(Duration::from_secs(1))),
        ("W and W̃ corners", w_corners, Some(Duration::from_secs(1))),
        ("closest product of W", w_closest_product, None),
        ("formula vs solver on 25×25", formula_vs_solver, Some(Duration::from_secs(120))),
        ("negativity corners", negativity_corners, None),
        ("separable point", separable_point, None),
        ("nonconvex region near GHZ", nonconvex_region, None),
        ("hull oracle at 101×101", hull_oracle_agreement, Some(Duration::from_secs(300))),
        ("final convexity", final_convexity, None),
        ("symmetries", symmetries, None),
        ("ordering disagreement", ordering_disagreement, None),
        ("twirl invariance", twirl_invariance, None),
    ];
    let mut failed = 0;
    for (k, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed();
        let (mut passed, mut detail) = match result {
            Ok(o) => (o.passed, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if let Some(limit) = limit {
            if elapsed > *limit {
                passed = false;
                detail.push_str(&format!("; over time limit {limit:?}"));
            }
        }
        if !passed {
            failed += 1;
        }
        println!(
            "criterion {:>2} {} {:<28} {} [{:.2}s]",
            k + 1,
            if passed { "PASS" } else { "FAIL" },
            name,
            detail,
            elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {} failed", criteria.len() - failed, failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
