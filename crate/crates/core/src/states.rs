//! Multi-qubit pure states, product states, density matrices and the
//! GHZ / W / inverted-W family.
//!
//! Basis index convention: qubit 1 (site 0) is the most significant bit of
//! the computational-basis index, so `|q₁q₂q₃⟩` sits at `4q₁ + 2q₂ + q₃`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg;

/// Tolerance on normalization and Hermiticity checks.
pub const NORM_TOL: f64 = 1e-12;
/// Slack allowed on the simplex constraints before a point is rejected.
pub const SIMPLEX_TOL: f64 = 1e-12;
/// Most negative eigenvalue a density matrix may carry.
pub const PSD_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Value of `site`'s bit in basis index `idx` for an `n`-qubit register.
#[inline]
pub fn site_bit(idx: usize, site: usize, n: usize) -> usize {
    (idx >> (n - 1 - site)) & 1
}

/// A normalized pure state of `n` qubits with dense amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Wraps `amplitudes`, checking length `2ⁿ` and unit norm.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let n_qubits = qubits_for_len(amplitudes.len())?;
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm_sqr));
        }
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// Rescales `amplitudes` to unit norm.
    pub fn normalized(mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized(norm * norm));
        }
        for a in &mut amplitudes {
            *a /= norm;
        }
        Self::new(amplitudes)
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, idx: usize) -> Complex64 {
        self.amplitudes[idx]
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &PureState) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Applies a single-qubit operator `u` (row-major 2×2) to `site`.
    pub fn apply_local(&self, site: usize, u: &[[Complex64; 2]; 2]) -> PureState {
        let n = self.n_qubits;
        assert!(site < n, "site {site} out of range for {n} qubits");
        let stride = 1 << (n - 1 - site);
        let mut out = self.amplitudes.clone();
        for idx in 0..self.dim() {
            if idx & stride != 0 {
                continue;
            }
            let a0 = self.amplitudes[idx];
            let a1 = self.amplitudes[idx | stride];
            out[idx] = u[0][0] * a0 + u[0][1] * a1;
            out[idx | stride] = u[1][0] * a0 + u[1][1] * a1;
        }
        PureState {
            n_qubits: n,
            amplitudes: out,
        }
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn projector(&self) -> DensityMatrix {
        let d = self.dim();
        let mut data = vec![ZERO; d * d];
        for i in 0..d {
            for j in 0..d {
                data[i * d + j] = self.amplitudes[i] * self.amplitudes[j].conj();
            }
        }
        DensityMatrix {
            n_qubits: self.n_qubits,
            data,
        }
    }
}

fn qubits_for_len(len: usize) -> Result<usize> {
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::InvalidState(format!(
            "amplitude count {len} is not a power of two ≥ 2"
        )));
    }
    Ok(len.trailing_zeros() as usize)
}

/// `⊗ᵢ |φ⁽ⁱ⁾⟩`, one normalized 2-vector per qubit.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductState {
    sites: Vec<[Complex64; 2]>,
}

impl ProductState {
    pub fn new(sites: Vec<[Complex64; 2]>) -> Result<Self> {
        if sites.is_empty() {
            return Err(Error::InvalidState("product state needs at least one site".into()));
        }
        for (i, c) in sites.iter().enumerate() {
            let n = c[0].norm_sqr() + c[1].norm_sqr();
            if (n - 1.0).abs() > NORM_TOL {
                return Err(Error::InvalidState(format!(
                    "site {i} vector has norm² {n}"
                )));
            }
        }
        Ok(Self { sites })
    }

    /// Builds from unnormalized site vectors; fails on a zero vector.
    pub fn normalized(sites: Vec<[Complex64; 2]>) -> Result<Self> {
        let sites = sites
            .into_iter()
            .map(|c| {
                let n = (c[0].norm_sqr() + c[1].norm_sqr()).sqrt();
                if n == 0.0 {
                    Err(Error::InvalidState("zero site vector".into()))
                } else {
                    Ok([c[0] / n, c[1] / n])
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(sites)
    }

    /// The computational basis product `|b₁…bₙ⟩` for basis index `idx`.
    pub fn basis(n_qubits: usize, idx: usize) -> Self {
        let one = Complex64::new(1.0, 0.0);
        let sites = (0..n_qubits)
            .map(|s| {
                if site_bit(idx, s, n_qubits) == 0 {
                    [one, ZERO]
                } else {
                    [ZERO, one]
                }
            })
            .collect();
        Self { sites }
    }

    /// The same single-qubit vector on all `n_qubits` sites.
    pub fn uniform(n_qubits: usize, site: [Complex64; 2]) -> Result<Self> {
        Self::new(vec![site; n_qubits])
    }

    pub fn n_qubits(&self) -> usize {
        self.sites.len()
    }

    pub fn sites(&self) -> &[[Complex64; 2]] {
        &self.sites
    }

    pub fn site(&self, i: usize) -> [Complex64; 2] {
        self.sites[i]
    }

    pub(crate) fn set_site(&mut self, i: usize, c: [Complex64; 2]) {
        self.sites[i] = c;
    }

    /// Amplitude `Πᵢ c⁽ⁱ⁾_{bᵢ}` of basis index `idx`.
    pub fn amplitude(&self, idx: usize) -> Complex64 {
        let n = self.n_qubits();
        self.sites
            .iter()
            .enumerate()
            .map(|(s, c)| c[site_bit(idx, s, n)])
            .product()
    }

    pub fn to_pure(&self) -> PureState {
        let n = self.n_qubits();
        let amplitudes = (0..1usize << n).map(|idx| self.amplitude(idx)).collect();
        PureState {
            n_qubits: n,
            amplitudes,
        }
    }

    /// `⟨self|ψ⟩`.
    pub fn overlap(&self, psi: &PureState) -> Complex64 {
        assert_eq!(self.n_qubits(), psi.n_qubits(), "qubit count mismatch");
        psi.amplitudes()
            .iter()
            .enumerate()
            .map(|(idx, a)| self.amplitude(idx).conj() * a)
            .sum()
    }
}

/// A square complex matrix on `n` qubits, row-major.
///
/// Partial transposes land here: they stay Hermitian with unit trace but may
/// be indefinite, so they cannot be a [`DensityMatrix`].
#[derive(Debug, Clone, PartialEq)]
pub struct QubitOperator {
    n_qubits: usize,
    data: Vec<Complex64>,
}

impl QubitOperator {
    pub fn new(n_qubits: usize, data: Vec<Complex64>) -> Result<Self> {
        let d = 1usize << n_qubits;
        if data.len() != d * d {
            return Err(Error::Dimension {
                expected: d * d,
                got: data.len(),
            });
        }
        Ok(Self { n_qubits, data })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim() + j]
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim()).map(|i| self.get(i, i)).sum()
    }

    /// Largest `|Mᵢⱼ − conj(Mⱼᵢ)|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0_f64;
        for i in 0..d {
            for j in 0..d {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::hermitian_eigenvalues(&self.data, self.dim())
    }

    /// Largest entrywise `|Aᵢⱼ − Bᵢⱼ|`.
    pub fn max_abs_diff(&self, other: &QubitOperator) -> f64 {
        assert_eq!(self.data.len(), other.data.len(), "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Hermitian, positive semidefinite, unit-trace `2ⁿ×2ⁿ` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    data: Vec<Complex64>,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity before wrapping.
    pub fn new(n_qubits: usize, data: Vec<Complex64>) -> Result<Self> {
        let op = QubitOperator::new(n_qubits, data)?;
        let herm = op.hermiticity_defect();
        if herm > NORM_TOL {
            return Err(Error::InvalidState(format!(
                "matrix not Hermitian (defect {herm:e})"
            )));
        }
        let tr = op.trace();
        if (tr.re - 1.0).abs() > NORM_TOL || tr.im.abs() > NORM_TOL {
            return Err(Error::InvalidState(format!("trace is {tr}")));
        }
        let min_eig = op.eigenvalues()[0];
        if min_eig < -PSD_TOL {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {min_eig:e}"
            )));
        }
        Ok(Self {
            n_qubits,
            data: op.data,
        })
    }

    pub fn from_pure(psi: &PureState) -> Self {
        psi.projector()
    }

    pub fn maximally_mixed(n_qubits: usize) -> Self {
        let d = 1usize << n_qubits;
        let mut data = vec![ZERO; d * d];
        for i in 0..d {
            data[i * d + i] = Complex64::new(1.0 / d as f64, 0.0);
        }
        Self { n_qubits, data }
    }

    /// `Σ wₖ ρₖ`; weights must be non-negative and sum to one.
    pub fn mixture(parts: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::InvalidState("empty mixture".into()))?
            .1;
        let (n, d) = (first.n_qubits, first.dim());
        let mut data = vec![ZERO; d * d];
        let mut total = 0.0;
        for &(w, rho) in parts {
            if w < 0.0 || rho.n_qubits != n {
                return Err(Error::InvalidState("bad mixture component".into()));
            }
            total += w;
            for (acc, v) in data.iter_mut().zip(&rho.data) {
                *acc += v * w;
            }
        }
        if (total - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidState(format!("mixture weights sum to {total}")));
        }
        Ok(Self { n_qubits: n, data })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim() + j]
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim()).map(|i| self.get(i, i)).sum()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::hermitian_eigenvalues(&self.data, self.dim())
    }

    pub fn as_operator(&self) -> QubitOperator {
        QubitOperator {
            n_qubits: self.n_qubits,
            data: self.data.clone(),
        }
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        self.as_operator().max_abs_diff(&other.as_operator())
    }

    /// Relabels qubits: site `s` of the result is site `perm[s]` of `self`.
    pub fn permute_qubits(&self, perm: &[usize]) -> Self {
        let n = self.n_qubits;
        assert_eq!(perm.len(), n, "permutation length mismatch");
        let map = |idx: usize| -> usize {
            (0..n).fold(0, |acc, s| (acc << 1) | site_bit(idx, perm[s], n))
        };
        let d = self.dim();
        let mut data = vec![ZERO; d * d];
        for i in 0..d {
            for j in 0..d {
                data[i * d + j] = self.get(map(i), map(j));
            }
        }
        Self { n_qubits: n, data }
    }

    /// `U ρ U†` for a diagonal unitary given by its diagonal.
    fn conjugate_by_diagonal(&self, diag: &[Complex64]) -> Self {
        let d = self.dim();
        let mut data = self.data.clone();
        for i in 0..d {
            for j in 0..d {
                data[i * d + j] = diag[i] * self.data[i * d + j] * diag[j].conj();
            }
        }
        Self {
            n_qubits: self.n_qubits,
            data,
        }
    }
}

/// Weights of one member of the GHZ / W / W̃ family, with optional relative
/// phases on the three components (pure-state constructors only).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyPoint {
    pub x: f64,
    pub y: f64,
    pub phases: Option<[f64; 3]>,
}

impl FamilyPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        check_simplex(x, y)?;
        Ok(Self {
            x: x.max(0.0),
            y: y.max(0.0),
            phases: None,
        })
    }

    pub fn with_phases(x: f64, y: f64, phases: [f64; 3]) -> Result<Self> {
        let mut p = Self::new(x, y)?;
        p.phases = Some(phases);
        Ok(p)
    }

    /// Point with `y = (1 − x) r`, `r ∈ [0, 1]`.
    pub fn from_xr(x: f64, r: f64) -> Result<Self> {
        if !(-SIMPLEX_TOL..=1.0 + SIMPLEX_TOL).contains(&r) {
            return Err(Error::Domain {
                x,
                y: f64::NAN,
                reason: "r outside [0, 1]",
            });
        }
        Self::new(x, (1.0 - x) * r)
    }

    /// Weight of W̃, `1 − x − y`, with rounding residue below the simplex
    /// tolerance flushed to zero.
    pub fn w_tilde_weight(&self) -> f64 {
        let w = 1.0 - self.x - self.y;
        if w.abs() <= SIMPLEX_TOL {
            0.0
        } else {
            w
        }
    }

    /// Mixing weights `[x, y, 1 − x − y]`, each flushed to zero within
    /// `SIMPLEX_TOL`. Square roots of rounding noise would otherwise show
    /// up at the 1e-8 level.
    pub fn weights(&self) -> [f64; 3] {
        let flush = |v: f64| if v.abs() <= SIMPLEX_TOL { 0.0 } else { v };
        [flush(self.x), flush(self.y), self.w_tilde_weight()]
    }

    /// `r = y / (1 − x)`; `None` at the GHZ corner where it is undefined.
    pub fn r(&self) -> Option<f64> {
        let rest = 1.0 - self.x;
        (rest > 0.0).then(|| (self.y / rest).min(1.0))
    }
}

pub fn check_simplex(x: f64, y: f64) -> Result<()> {
    let fail = |reason| Err(Error::Domain { x, y, reason });
    if !x.is_finite() || !y.is_finite() {
        return fail("non-finite coordinate");
    }
    if x < -SIMPLEX_TOL {
        return fail("x is negative");
    }
    if y < -SIMPLEX_TOL {
        return fail("y is negative");
    }
    if x + y > 1.0 + SIMPLEX_TOL {
        return fail("x + y exceeds 1");
    }
    Ok(())
}

fn basis_superposition(indices: &[usize], amp: f64) -> PureState {
    let mut amplitudes = vec![ZERO; 8];
    for &i in indices {
        amplitudes[i] = Complex64::new(amp, 0.0);
    }
    PureState {
        n_qubits: 3,
        amplitudes,
    }
}

/// `(|000⟩ + |111⟩)/√2`.
pub fn make_ghz() -> PureState {
    basis_superposition(&[0b000, 0b111], FRAC_1_SQRT_2)
}

/// `(|001⟩ + |010⟩ + |100⟩)/√3`.
pub fn make_w() -> PureState {
    basis_superposition(&[0b001, 0b010, 0b100], 1.0 / 3f64.sqrt())
}

/// `(|110⟩ + |101⟩ + |011⟩)/√3`.
pub fn make_w_tilde() -> PureState {
    basis_superposition(&[0b110, 0b101, 0b011], 1.0 / 3f64.sqrt())
}

/// `√x e^{iφ₁}|GHZ⟩ + √y e^{iφ₂}|W⟩ + √(1−x−y) e^{iφ₃}|W̃⟩`.
pub fn family_pure_state(point: &FamilyPoint) -> Result<PureState> {
    check_simplex(point.x, point.y)?;
    let [p1, p2, p3] = point.phases.unwrap_or([0.0; 3]);
    let [x, y, w] = point.weights();
    let coeffs = [
        Complex64::from_polar(x.sqrt(), p1),
        Complex64::from_polar(y.sqrt(), p2),
        Complex64::from_polar(w.sqrt(), p3),
    ];
    let parts = [make_ghz(), make_w(), make_w_tilde()];
    let mut amplitudes = vec![ZERO; 8];
    for (c, state) in coeffs.iter().zip(&parts) {
        for (acc, a) in amplitudes.iter_mut().zip(state.amplitudes()) {
            *acc += c * a;
        }
    }
    PureState::normalized(amplitudes)
}

/// `x|GHZ⟩⟨GHZ| + y|W⟩⟨W| + (1−x−y)|W̃⟩⟨W̃|`.
pub fn family_density_matrix(point: &FamilyPoint) -> Result<DensityMatrix> {
    if point.phases.is_some() {
        return Err(Error::InvalidState(
            "the mixed family carries no relative phases".into(),
        ));
    }
    check_simplex(point.x, point.y)?;
    let (ghz, w, wt) = (
        make_ghz().projector(),
        make_w().projector(),
        make_w_tilde().projector(),
    );
    let [x, y, r] = point.weights();
    let total = x + y + r;
    DensityMatrix::mixture(&[(x / total, &ghz), (y / total, &w), (r / total, &wt)])
}

/// Simultaneous phase shift `|1⟩ → gᵏ|1⟩` on every qubit, `g = e^{2πi/3}`.
pub fn phase_unitary_diagonal(n_qubits: usize, k: u32) -> Vec<Complex64> {
    (0..1usize << n_qubits)
        .map(|idx| {
            let weight = idx.count_ones() * k;
            Complex64::from_polar(1.0, 2.0 * PI * weight as f64 / 3.0)
        })
        .collect()
}

/// `(1/3) Σ_{k=1..3} U_k ρ U_k†`.
pub fn twirl(rho: &DensityMatrix) -> DensityMatrix {
    let d = rho.dim();
    let mut data = vec![ZERO; d * d];
    for k in 1..=3 {
        let u = phase_unitary_diagonal(rho.n_qubits(), k);
        let conj = rho.conjugate_by_diagonal(&u);
        for (acc, v) in data.iter_mut().zip(conj.data()) {
            *acc += v / 3.0;
        }
    }
    DensityMatrix {
        n_qubits: rho.n_qubits(),
        data,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn named_states_have_expected_support() {
        let s2 = FRAC_1_SQRT_2;
        let s3 = 1.0 / 3f64.sqrt();
        let ghz = make_ghz();
        let w = make_w();
        let wt = make_w_tilde();
        for idx in 0..8 {
            let g = if idx == 0 || idx == 7 { s2 } else { 0.0 };
            assert_eq!(ghz.amplitude(idx), c(g));
            let wv = if [1, 2, 4].contains(&idx) { s3 } else { 0.0 };
            assert_eq!(w.amplitude(idx), c(wv));
            let wtv = if [3, 5, 6].contains(&idx) { s3 } else { 0.0 };
            assert_eq!(wt.amplitude(idx), c(wtv));
        }
    }

    #[test]
    fn family_corners_are_the_named_states() {
        let ghz = family_pure_state(&FamilyPoint::new(1.0, 0.0).unwrap()).unwrap();
        assert!(ghz.inner(&make_ghz()).norm() > 1.0 - 1e-15);
        let w = family_pure_state(&FamilyPoint::new(0.0, 1.0).unwrap()).unwrap();
        assert!(w.inner(&make_w()).norm() > 1.0 - 1e-15);
    }

    #[test]
    fn family_third_point_amplitudes() {
        let psi = family_pure_state(&FamilyPoint::new(1.0 / 3.0, 1.0 / 3.0).unwrap()).unwrap();
        for idx in 0..8 {
            let expected = if idx == 0 || idx == 7 { (1.0f64 / 6.0).sqrt() } else { 1.0 / 3.0 };
            assert!((psi.amplitude(idx) - c(expected)).norm() < 1e-15, "idx {idx}");
        }
    }

    #[test]
    fn out_of_simplex_points_are_rejected() {
        assert!(matches!(
            FamilyPoint::new(0.7, 0.4),
            Err(Error::Domain { reason: "x + y exceeds 1", .. })
        ));
        assert!(FamilyPoint::new(-0.1, 0.2).is_err());
        assert!(FamilyPoint::new(0.1, -0.2).is_err());
        assert!(FamilyPoint::new(f64::NAN, 0.2).is_err());
        // Rounding residue on the hypotenuse is accepted.
        assert!(FamilyPoint::new(0.3, 0.7 + 1e-15).is_ok());
    }

    #[test]
    fn mixed_constructor_refuses_phases() {
        let p = FamilyPoint::with_phases(0.2, 0.3, [0.1, 0.2, 0.3]).unwrap();
        assert!(family_density_matrix(&p).is_err());
    }

    #[test]
    fn density_matrix_corners_and_spectrum() {
        let rho = family_density_matrix(&FamilyPoint::new(1.0, 0.0).unwrap()).unwrap();
        assert!(rho.max_abs_diff(&make_ghz().projector()) < 1e-15);
        let rho = family_density_matrix(&FamilyPoint::new(0.0, 0.0).unwrap()).unwrap();
        assert!(rho.max_abs_diff(&make_w_tilde().projector()) < 1e-15);

        let rho = family_density_matrix(&FamilyPoint::new(1.0 / 3.0, 1.0 / 3.0).unwrap()).unwrap();
        assert!((rho.trace().re - 1.0).abs() < 1e-14);
        let eig = rho.eigenvalues();
        for (i, e) in eig.iter().enumerate() {
            let expected = if i < 5 { 0.0 } else { 1.0 / 3.0 };
            assert!((e - expected).abs() < 1e-12, "eig {i} = {e}");
        }
        assert!(rho.data().iter().all(|z| z.im == 0.0));
    }

    #[test]
    fn density_matrix_validation() {
        let bad_trace = vec![c(0.5), c(0.0), c(0.0), c(0.4)];
        assert!(DensityMatrix::new(1, bad_trace).is_err());
        let not_psd = vec![c(1.5), c(0.0), c(0.0), c(-0.5)];
        assert!(DensityMatrix::new(1, not_psd).is_err());
        let non_herm = vec![c(0.5), c(0.3), c(0.0), c(0.5)];
        assert!(DensityMatrix::new(1, non_herm).is_err());
        let ok = vec![c(0.5), c(0.5), c(0.5), c(0.5)];
        assert!(DensityMatrix::new(1, ok).is_ok());
    }

    #[test]
    fn twirl_of_maximally_mixed_is_identity_map() {
        let rho = DensityMatrix::maximally_mixed(3);
        assert!(twirl(&rho).max_abs_diff(&rho) < 1e-15);
    }

    #[test]
    fn twirl_kills_coherence_between_ghz_and_w() {
        // (|GHZ⟩ + |W⟩)/√2 twirls to the equal mixture of the two projectors.
        let psi = family_pure_state(&FamilyPoint::new(0.5, 0.5).unwrap()).unwrap();
        let expected = family_density_matrix(&FamilyPoint::new(0.5, 0.5).unwrap()).unwrap();
        assert!(twirl(&psi.projector()).max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn product_state_amplitudes_and_overlap() {
        let plus = [c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2)];
        let phi = ProductState::uniform(3, plus).unwrap();
        let psi = phi.to_pure();
        for idx in 0..8 {
            assert!((psi.amplitude(idx) - c(1.0 / 8f64.sqrt())).norm() < 1e-15);
        }
        assert!((phi.overlap(&psi) - c(1.0)).norm() < 1e-15);
        assert!((ProductState::basis(3, 0).overlap(&make_ghz()) - c(FRAC_1_SQRT_2)).norm() < 1e-15);
    }

    #[test]
    fn apply_local_flips_w_into_w_tilde() {
        let x = [[c(0.0), c(1.0)], [c(1.0), c(0.0)]];
        let flipped = (0..3).fold(make_w(), |s, site| s.apply_local(site, &x));
        assert!(flipped.inner(&make_w_tilde()).norm() > 1.0 - 1e-15);
    }

    #[test]
    fn pure_state_validation() {
        assert!(PureState::from_real(&[1.0, 0.0, 0.0]).is_err());
        assert!(PureState::from_real(&[1.0, 1.0]).is_err());
        assert!(PureState::normalized(vec![c(0.0); 4]).is_err());
        assert!(ProductState::new(vec![[c(1.0), c(1.0)]]).is_err());
    }
}
