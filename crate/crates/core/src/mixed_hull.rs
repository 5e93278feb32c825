//! Mixed-state entanglement of the family as the convex hull of the
//! pure-state surface.
//!
//! The mixed state depends linearly on `(x, y)`, so its entanglement is the
//! lower convex envelope of `E_ψ(x, y)`. We build it in `(x, r)` coordinates
//! with `y = (1 − x) r`: lines of constant `x` and lines of constant `r` are
//! both straight in `(x, y)`, so convexifying each row in `r` and then each
//! column in `x` is legitimate. The remaining diagonal directions are checked
//! numerically by [`verify_convexity`] and against the full 2D hull computed
//! by [`hull_oracle`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::envelope::lower_convex_envelope_uniform;
use crate::error::{Error, Result};
use crate::family::{e_psi, e_psi_xr};
use crate::hull3d::LowerEnvelope;
use crate::states::check_simplex;
use crate::surface::{check_resolution, in_simplex, Parametrization, SurfaceGrid};

const MIN_RESOLUTION: usize = 3;
/// Worst pairs kept in a [`HullReport`].
pub const MAX_REPORTED_PAIRS: usize = 256;
const ORACLE_JITTER_SEED: u64 = 0x0c0_4e11;

/// `E_ψ(x, (1 − x) r)` on an `nx × nr` grid over the unit square.
pub fn sample_e_psi_xr(nx: usize, nr: usize) -> Result<SurfaceGrid> {
    check_resolution(nx.min(nr), MIN_RESOLUTION)?;
    SurfaceGrid::from_fn(Parametrization::XrSquare, nx, nr, e_psi_xr)
}

/// `E_ψ(x, y)` on an `nx × ny` grid, `NaN` outside the simplex.
pub fn sample_e_psi_xy(nx: usize, ny: usize) -> Result<SurfaceGrid> {
    check_resolution(nx.min(ny), MIN_RESOLUTION)?;
    SurfaceGrid::from_fn(Parametrization::XySimplex, nx, ny, e_psi)
}

fn require_xr(grid: &SurfaceGrid) -> Result<()> {
    if grid.parametrization != Parametrization::XrSquare {
        return Err(Error::Parametrization("expected an (x, r) grid"));
    }
    Ok(())
}

/// Replaces every fixed-`x` row by its lower convex envelope in `r`.
pub fn convexify_in_r(grid: &SurfaceGrid) -> Result<SurfaceGrid> {
    require_xr(grid)?;
    let mut out = grid.clone();
    for i in 0..grid.nx {
        let env = lower_convex_envelope_uniform(grid.row(i));
        for (j, v) in env.into_iter().enumerate() {
            out.set(i, j, v);
        }
    }
    Ok(out)
}

/// Replaces every fixed-`r` column by its lower convex envelope in `x`.
pub fn convexify_in_x(grid: &SurfaceGrid) -> Result<SurfaceGrid> {
    require_xr(grid)?;
    let mut out = grid.clone();
    for j in 0..grid.ny {
        let env = lower_convex_envelope_uniform(&grid.column(j));
        for (i, v) in env.into_iter().enumerate() {
            out.set(i, j, v);
        }
    }
    Ok(out)
}

/// The convexified surface in `(x, r)` form, evaluable anywhere in the
/// simplex.
#[derive(Debug, Clone)]
pub struct MixedSurface {
    pure_xr: SurfaceGrid,
    hull_xr: SurfaceGrid,
}

impl MixedSurface {
    /// Samples `E_ψ` on an `nx × nr` `(x, r)` grid and convexifies it, `r`
    /// first, then `x`.
    pub fn build(nx: usize, nr: usize) -> Result<Self> {
        let pure_xr = sample_e_psi_xr(nx, nr)?;
        let hull_xr = convexify_in_x(&convexify_in_r(&pure_xr)?)?;
        Ok(Self { pure_xr, hull_xr })
    }

    pub fn pure_xr(&self) -> &SurfaceGrid {
        &self.pure_xr
    }

    pub fn hull_xr(&self) -> &SurfaceGrid {
        &self.hull_xr
    }

    /// `E_ρ(x, y)`: the `(x, r)` hull interpolated at `r = y/(1 − x)`,
    /// capped by `E_ψ(x, y)` itself since the hull never exceeds it.
    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        check_simplex(x, y)?;
        let (x, y) = (x.clamp(0.0, 1.0), y.max(0.0));
        let rest = 1.0 - x;
        let r = if rest > 0.0 { (y / rest).clamp(0.0, 1.0) } else { 0.0 };
        let hull = self
            .hull_xr
            .interpolate(x, r)
            .expect("(x, r) lies in the unit square");
        Ok(hull.min(e_psi(x, y)?))
    }
}

/// `E_ρ` on an `nx × ny` simplex grid, built from an `nx × ny` `(x, r)` grid.
pub fn mixed_gme_surface(nx: usize, ny: usize) -> Result<SurfaceGrid> {
    let mixed = MixedSurface::build(nx, ny)?;
    SurfaceGrid::from_fn(Parametrization::XySimplex, nx, ny, |x, y| mixed.eval(x, y))
}

/// Lower convex envelope of the point cloud `{(x, y, E_ψ(x, y))}` over the
/// simplex grid, computed with a 3D hull. Independent of the axis-wise
/// construction; meant for cross-checking it.
pub fn hull_oracle(nx: usize, ny: usize) -> Result<SurfaceGrid> {
    let pure = sample_e_psi_xy(nx, ny)?;
    let samples: Vec<[f64; 3]> = pure
        .nodes()
        .filter(|(_, _, v)| v.is_finite())
        .map(|(x, y, v)| [x, y, v])
        .collect();
    let env = LowerEnvelope::from_samples(&samples, ORACLE_JITTER_SEED)?;
    let mut out = pure.clone();
    for i in 0..nx {
        for j in 0..ny {
            let v = pure.get(i, j);
            if v.is_finite() {
                out.set(i, j, env.eval(pure.x(i), pure.second(j)).min(v));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ViolatingPair {
    pub p1: (f64, f64),
    pub p2: (f64, f64),
    /// `E(midpoint) − (E(p1) + E(p2))/2`; positive means nonconvex.
    pub violation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HullReport {
    pub max_violation: f64,
    pub n_segments_tested: usize,
    /// Pairs with positive violation, worst first, at most
    /// [`MAX_REPORTED_PAIRS`].
    pub violating_pairs: Vec<ViolatingPair>,
}

impl HullReport {
    pub fn passes(&self, bound: f64) -> bool {
        self.max_violation <= bound
    }
}

fn random_simplex_point(rng: &mut ChaCha8Rng) -> (f64, f64) {
    let (u, v): (f64, f64) = (rng.gen(), rng.gen());
    if u + v > 1.0 {
        (1.0 - u, 1.0 - v)
    } else {
        (u, v)
    }
}

/// Midpoint convexity defect over `n_pairs` random point pairs in the
/// simplex, using the grid's interpolant.
pub fn verify_convexity(surface: &SurfaceGrid, n_pairs: usize, seed: u64) -> Result<HullReport> {
    if surface.parametrization != Parametrization::XySimplex {
        return Err(Error::Parametrization("expected an (x, y) grid"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_violation = f64::NEG_INFINITY;
    let mut tested = 0;
    let mut pairs = Vec::new();
    for _ in 0..n_pairs {
        let p1 = random_simplex_point(&mut rng);
        let p2 = random_simplex_point(&mut rng);
        let mid = (0.5 * (p1.0 + p2.0), 0.5 * (p1.1 + p2.1));
        debug_assert!(in_simplex(mid.0, mid.1));
        let (Some(e1), Some(e2), Some(em)) = (
            surface.interpolate(p1.0, p1.1),
            surface.interpolate(p2.0, p2.1),
            surface.interpolate(mid.0, mid.1),
        ) else {
            continue;
        };
        tested += 1;
        let violation = em - 0.5 * (e1 + e2);
        max_violation = max_violation.max(violation);
        if violation > 0.0 {
            pairs.push(ViolatingPair { p1, p2, violation });
        }
    }
    pairs.sort_by(|a, b| b.violation.total_cmp(&a.violation));
    pairs.truncate(MAX_REPORTED_PAIRS);
    Ok(HullReport {
        max_violation,
        n_segments_tested: tested,
        violating_pairs: pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envelope::lower_convex_envelope;

    #[test]
    fn xr_samples_hit_corner_values() {
        let g = sample_e_psi_xr(11, 11).unwrap();
        for j in 0..11 {
            assert!((g.get(10, j) - 0.5).abs() < 1e-14);
        }
        assert!((g.get(0, 0) - 5.0 / 9.0).abs() < 1e-14);
        assert!((g.get(0, 5) - e_psi(0.0, 0.5).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn xr_samples_are_symmetric_in_r() {
        let g = sample_e_psi_xr(21, 21).unwrap();
        for i in 0..21 {
            for j in 0..21 {
                assert!((g.get(i, j) - g.get(i, 20 - j)).abs() < 1e-10, "({i}, {j})");
            }
        }
    }

    #[test]
    fn resolution_is_checked() {
        assert!(matches!(sample_e_psi_xr(2, 10), Err(Error::Resolution { .. })));
        assert!(mixed_gme_surface(10, 2).is_err());
    }

    #[test]
    fn wrong_parametrization_is_rejected() {
        let xy = sample_e_psi_xy(5, 5).unwrap();
        assert!(convexify_in_r(&xy).is_err());
        assert!(convexify_in_x(&xy).is_err());
        let xr = sample_e_psi_xr(5, 5).unwrap();
        assert!(verify_convexity(&xr, 10, 0).is_err());
    }

    #[test]
    fn r_stage_bridges_a_double_minimum() {
        let row = [0.5, 0.4, 0.45, 0.4, 0.5];
        let g = SurfaceGrid::new(Parametrization::XrSquare, 3, 5, row.repeat(3)).unwrap();
        let out = convexify_in_r(&g).unwrap();
        assert_eq!(out.row(1), &[0.5, 0.4, 0.4, 0.4, 0.5]);
    }

    #[test]
    fn x_stage_leaves_linear_columns() {
        let g = SurfaceGrid::from_fn(Parametrization::XrSquare, 7, 4, |x, r| Ok(0.3 * x + r)).unwrap();
        let out = convexify_in_x(&g).unwrap();
        assert!(out.max_abs_diff(&g) < 1e-15);
    }

    #[test]
    fn convex_row_at_x_zero_is_untouched() {
        let g = sample_e_psi_xr(41, 41).unwrap();
        let out = convexify_in_r(&g).unwrap();
        for j in 0..41 {
            assert!((out.get(0, j) - g.get(0, j)).abs() < 1e-12);
        }
    }

    #[test]
    fn r_stage_flattens_between_located_minima_at_x_0_9() {
        // x = 0.9 is row 90 of a 101-row grid.
        let g = sample_e_psi_xr(101, 201).unwrap();
        let out = convexify_in_r(&g).unwrap();
        let raw = g.row(90);
        let got = out.row(90);
        let n = raw.len();
        let xs: Vec<f64> = (0..n).map(|j| j as f64 / (n - 1) as f64).collect();
        let oracle = lower_convex_envelope(&xs, raw);
        for (a, b) in got.iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-12);
        }
        // Locate the two minima directly: they sit symmetrically about r = 1/2
        // and the envelope is the flat chord between them.
        let (jmin, vmin) = raw[..n / 2]
            .iter()
            .enumerate()
            .fold((0, f64::INFINITY), |(bj, bv), (j, &v)| if v < bv { (j, v) } else { (bj, bv) });
        assert!(jmin > 0 && jmin < n / 2, "minimum should be interior, got {jmin}");
        assert!(raw[n / 2] > vmin + 1e-6, "cusp at r = 1/2 should rise above the minima");
        for j in jmin..=(n - 1 - jmin) {
            assert!((got[j] - vmin).abs() < 1e-10, "j = {j}: {} vs {vmin}", got[j]);
        }
    }

    #[test]
    fn affine_surface_has_no_violation() {
        let plane = SurfaceGrid::from_fn(Parametrization::XySimplex, 51, 51, |x, _| Ok(x)).unwrap();
        let rep = verify_convexity(&plane, 5000, 7).unwrap();
        assert!(rep.max_violation <= 1e-12);
        assert!(rep.n_segments_tested > 4900);
    }

    #[test]
    fn report_is_deterministic() {
        let s = sample_e_psi_xy(31, 31).unwrap();
        assert_eq!(verify_convexity(&s, 2000, 3).unwrap(), verify_convexity(&s, 2000, 3).unwrap());
    }

    #[test]
    fn mixed_surface_eval_matches_pure_away_from_ghz_corner() {
        let m = MixedSurface::build(101, 101).unwrap();
        assert!((m.eval(0.2, 0.4).unwrap() - e_psi(0.2, 0.4).unwrap()).abs() < 1e-12);
        assert!((m.eval(1.0, 0.0).unwrap() - 0.5).abs() < 1e-14);
        assert!(m.eval(0.25, 0.375).unwrap() < 1e-12);
        assert!(m.eval(0.7, 0.4).is_err());
    }
}
