//! Closest product state of an n-qubit pure state.
//!
//! The overlap `⟨φ|ψ⟩` is multilinear in the conjugated site vectors, so
//! holding every site but one fixed, the best vector for the free site is the
//! normalized contraction of `ψ` against the others. Sweeping that update
//! over the sites is an alternating fixed-point iteration on the
//! stationarity conditions; each update can only increase `|⟨φ|ψ⟩|`.
//!
//! The landscape has local maxima, so [`solve_gme`] runs the sweep from every
//! computational-basis product (for small registers) and from a batch of
//! seeded random product states, keeping the best.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::states::{site_bit, ProductState, PureState};

/// Contractions shorter than this are treated as the zero vector.
const DEGENERATE_NORM: f64 = 1e-14;
/// Registers up to this size also start from every basis product state.
const MAX_QUBITS_FOR_BASIS_STARTS: usize = 6;
/// A later start must beat the incumbent by more than this to replace it.
const TIE_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub max_iterations: usize,
    /// Convergence threshold on the change of Λ over one full sweep.
    pub tolerance: f64,
    /// A run only counts as converged once the stationarity residual is
    /// also below this.
    pub residual_tolerance: f64,
    /// Number of random starts.
    pub restarts: usize,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            max_iterations: 2000,
            tolerance: 1e-12,
            residual_tolerance: 1e-10,
            restarts: 24,
            seed: 0x005e_ed0f_6e3e,
        }
    }
}

impl SolverConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0) || !(self.residual_tolerance > 0.0) {
            return Err(Error::InvalidState("solver tolerances must be positive".into()));
        }
        if self.restarts == 0 || self.max_iterations == 0 {
            return Err(Error::InvalidState(
                "solver needs at least one restart and one iteration".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GmeResult {
    /// Entanglement eigenvalue: the largest overlap `|⟨φ|ψ⟩|` found.
    pub lambda_max: f64,
    /// `1 − Λ²`.
    pub e_sin2: f64,
    pub closest_product: ProductState,
    /// Sweeps used by the winning run.
    pub iterations_used: usize,
    pub converged: bool,
}

/// Contraction of `ψ` with the conjugates of every site vector except `site`:
/// `v_b = Σ ψ_{…b…} Π_{j≠site} conj(c⁽ʲ⁾)`.
pub fn contraction(psi: &PureState, phi: &ProductState, site: usize) -> [Complex64; 2] {
    let n = psi.n_qubits();
    let mut v = [Complex64::new(0.0, 0.0); 2];
    for (idx, amp) in psi.amplitudes().iter().enumerate() {
        let others: Complex64 = (0..n)
            .filter(|&j| j != site)
            .map(|j| phi.site(j)[site_bit(idx, j, n)].conj())
            .product();
        v[site_bit(idx, site, n)] += amp * others;
    }
    v
}

/// Rotates `c` so its largest-magnitude component is real and non-negative.
fn fix_gauge(c: [Complex64; 2]) -> [Complex64; 2] {
    let pivot = if c[1].norm() > c[0].norm() { c[1] } else { c[0] };
    let m = pivot.norm();
    if m == 0.0 {
        return c;
    }
    let phase = pivot.conj() / m;
    [c[0] * phase, c[1] * phase]
}

/// One pass over all sites, replacing each site vector by its normalized
/// contraction. Returns the updated state and `Λ = |⟨φ|ψ⟩|` after the pass.
pub fn stationarity_sweep(psi: &PureState, phi: &ProductState) -> Result<(ProductState, f64)> {
    if psi.n_qubits() != phi.n_qubits() {
        return Err(Error::Dimension {
            expected: psi.n_qubits(),
            got: phi.n_qubits(),
        });
    }
    let mut phi = phi.clone();
    let mut lambda = 0.0;
    for site in 0..psi.n_qubits() {
        let v = contraction(psi, &phi, site);
        let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        if norm <= DEGENERATE_NORM {
            return Err(Error::DegenerateContraction { site });
        }
        phi.set_site(site, fix_gauge([v[0] / norm, v[1] / norm]));
        lambda = norm;
    }
    Ok((phi, lambda.min(1.0)))
}

/// Largest per-site norm of `v⁽ⁱ⁾ − ⟨φ|ψ⟩ c⁽ⁱ⁾`; zero exactly at stationary
/// points.
pub fn stationarity_residual(psi: &PureState, phi: &ProductState) -> f64 {
    let overlap = phi.overlap(psi);
    (0..psi.n_qubits())
        .map(|site| {
            let v = contraction(psi, phi, site);
            let c = phi.site(site);
            ((v[0] - overlap * c[0]).norm_sqr() + (v[1] - overlap * c[1]).norm_sqr()).sqrt()
        })
        .fold(0.0, f64::max)
}

fn random_product(n: usize, rng: &mut ChaCha8Rng) -> ProductState {
    loop {
        let sites: Vec<[Complex64; 2]> = (0..n)
            .map(|_| {
                let mut g = || -> f64 { StandardNormal.sample(rng) };
                [Complex64::new(g(), g()), Complex64::new(g(), g())]
            })
            .collect();
        if let Ok(p) = ProductState::normalized(sites) {
            return p;
        }
    }
}

struct Run {
    phi: ProductState,
    lambda: f64,
    iterations: usize,
    converged: bool,
}

fn run_from(psi: &PureState, start: ProductState, config: &SolverConfig) -> Option<Run> {
    let mut phi = start;
    let mut prev = phi.overlap(psi).norm();
    for it in 1..=config.max_iterations {
        let (next, lambda) = stationarity_sweep(psi, &phi).ok()?;
        phi = next;
        if (lambda - prev).abs() <= config.tolerance
            && stationarity_residual(psi, &phi) <= config.residual_tolerance
        {
            return Some(Run {
                phi,
                lambda,
                iterations: it,
                converged: true,
            });
        }
        prev = lambda;
    }
    Some(Run {
        phi,
        lambda: prev,
        iterations: config.max_iterations,
        converged: false,
    })
}

/// Entanglement eigenvalue and closest product state of `psi`.
///
/// Deterministic for a given `(psi, config)`. Starts are indexed basis
/// products first, then |+⟩^⊗n, then random ones; ties in Λ (within
/// `TIE_TOL`) keep the lower index.
pub fn solve_gme(psi: &PureState, config: &SolverConfig) -> Result<GmeResult> {
    config.validate()?;
    let n = psi.n_qubits();
    let mut starts: Vec<ProductState> = Vec::new();
    if n <= MAX_QUBITS_FOR_BASIS_STARTS {
        starts.extend((0..1usize << n).map(|idx| ProductState::basis(n, idx)));
    }
    let plus = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    starts.push(ProductState::uniform(n, [plus, plus])?);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    starts.extend((0..config.restarts).map(|_| random_product(n, &mut rng)));

    let mut best: Option<Run> = None;
    let mut any_converged = false;
    for start in starts {
        let Some(run) = run_from(psi, start, config) else {
            continue;
        };
        any_converged |= run.converged;
        if best.as_ref().is_none_or(|b| run.lambda > b.lambda + TIE_TOL) {
            best = Some(run);
        }
    }
    // Random starts are orthogonal to ψ with probability zero.
    let best = best.ok_or(Error::DegenerateContraction { site: 0 })?;
    let lambda_max = best.phi.overlap(psi).norm().min(1.0);
    Ok(GmeResult {
        lambda_max,
        e_sin2: 1.0 - lambda_max * lambda_max,
        closest_product: best.phi,
        iterations_used: best.iterations,
        converged: any_converged,
    })
}
