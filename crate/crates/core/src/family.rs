//! Closed-form entanglement eigenvalue of
//! `|ψ(x,y)⟩ = √x|GHZ⟩ + √y|W⟩ + √(1−x−y)|W̃⟩`.
//!
//! The closest product state is sought among symmetric products
//! `((|0⟩ + t|1⟩)/√(1+t²))^{⊗3}`, whose overlap with `ψ` is
//!
//! ```text
//! Λ(t) = [√(x/2)(1 + t³) + √(3y) t + √(3(1−x−y)) t²] / (1 + t²)^{3/2}
//! ```
//!
//! Stationary points of `Λ(t)` are the roots of the cubic
//! `3√(x/2)(t² − t) + √(3y)(1 − 2t²) + √(3(1−x−y))(2t − t³) = 0`.
//! All non-negative roots are collected and the one with the largest `Λ`
//! wins, which also resolves the corners where several roots exist.

use crate::cubic::Cubic;
use crate::error::{Error, Result};
use crate::states::FamilyPoint;

/// Roots closer to zero than this are snapped to zero.
const ZERO_ROOT_SNAP: f64 = 1e-12;

/// Stationary points of the overlap for one family member.
#[derive(Debug, Clone, PartialEq)]
pub struct CubicSolution {
    /// Non-negative real roots, ascending.
    pub roots: Vec<f64>,
    pub chosen_t: f64,
    pub lambda_at_chosen: f64,
    pub cubic: Cubic,
}

/// Coefficients of the stationarity cubic, `[a3, a2, a1, a0]`.
pub fn family_cubic(point: &FamilyPoint) -> Cubic {
    let [x, y, r] = point.weights();
    let (g, w, wt) = ((x / 2.0).sqrt(), (3.0 * y).sqrt(), (3.0 * r).sqrt());
    Cubic::new(-wt, 3.0 * g - 2.0 * w, -3.0 * g + 2.0 * wt, w)
}

/// `Λ(t)` for the symmetric product state with parameter `t ≥ 0`.
pub fn overlap_at(point: &FamilyPoint, t: f64) -> f64 {
    let [x, y, r] = point.weights();
    let (g, w, wt) = ((x / 2.0).sqrt(), (3.0 * y).sqrt(), (3.0 * r).sqrt());
    let num = g * (1.0 + t * t * t) + w * t + wt * t * t;
    num / (1.0 + t * t).powf(1.5)
}

/// Non-negative roots of the stationarity cubic at `(x, y)` and the one
/// maximizing the overlap.
pub fn cubic_roots_nonneg(x: f64, y: f64) -> Result<CubicSolution> {
    let point = FamilyPoint::new(x, y)?;
    let cubic = family_cubic(&point);
    let roots: Vec<f64> = cubic
        .real_roots()?
        .into_iter()
        .map(|t| if t.abs() <= ZERO_ROOT_SNAP { 0.0 } else { t })
        .filter(|&t| t >= 0.0)
        .collect();

    let mut best: Option<(f64, f64)> = None;
    for &t in &roots {
        let lambda = overlap_at(&point, t);
        if best.is_none_or(|(_, l)| lambda > l) {
            best = Some((t, lambda));
        }
    }
    let (chosen_t, lambda_at_chosen) = best.ok_or(Error::NoNonnegativeRoot { x, y })?;
    Ok(CubicSolution {
        roots,
        chosen_t,
        lambda_at_chosen,
        cubic,
    })
}

/// Entanglement eigenvalue `Λ(x, y)`.
pub fn lambda_family(x: f64, y: f64) -> Result<f64> {
    Ok(cubic_roots_nonneg(x, y)?.lambda_at_chosen.min(1.0))
}

/// Pure-state entanglement `E_ψ(x, y) = 1 − Λ(x, y)²`.
pub fn e_psi(x: f64, y: f64) -> Result<f64> {
    let l = lambda_family(x, y)?;
    Ok((1.0 - l * l).max(0.0))
}

/// `E_ψ` in `(x, r)` coordinates, `y = (1 − x) r`.
pub fn e_psi_xr(x: f64, r: f64) -> Result<f64> {
    let p = FamilyPoint::from_xr(x, r)?;
    e_psi(p.x, p.y)
}
