//! Partial transposes, negativity, and where negativity and the geometric
//! measure disagree about which of two states is more entangled.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::states::{family_density_matrix, DensityMatrix, FamilyPoint, QubitOperator};
use crate::surface::{check_resolution, Parametrization, SurfaceGrid};

/// Eigenvalues this close to zero do not count as negative.
pub const ZERO_EIGEN_TOL: f64 = 1e-12;
/// Strict-inequality margin when comparing two measures.
pub const ORDERING_MARGIN: f64 = 1e-6;

/// Transposes the indices of `party` (1-based, qubit 1 most significant).
pub fn partial_transpose(rho: &DensityMatrix, party: usize) -> Result<QubitOperator> {
    let n = rho.n_qubits();
    if party == 0 || party > n {
        return Err(Error::InvalidParty { party, n_qubits: n });
    }
    let mask = 1usize << (n - party);
    let d = rho.dim();
    let mut data = Vec::with_capacity(d * d);
    for a in 0..d {
        for b in 0..d {
            // Swap the party's bit between row and column index.
            let (ab, bb) = (a & mask, b & mask);
            let a2 = (a & !mask) | bb;
            let b2 = (b & !mask) | ab;
            data.push(rho.get(a2, b2));
        }
    }
    QubitOperator::new(n, data)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartialTransposeSpectrum {
    pub party: usize,
    /// Ascending.
    pub eigenvalues: Vec<f64>,
}

impl PartialTransposeSpectrum {
    pub fn of(rho: &DensityMatrix, party: usize) -> Result<Self> {
        Ok(Self {
            party,
            eigenvalues: partial_transpose(rho, party)?.eigenvalues(),
        })
    }

    /// `−2 Σ λ` over eigenvalues below `−ZERO_EIGEN_TOL`.
    pub fn negativity(&self) -> f64 {
        -2.0 * self
            .eigenvalues
            .iter()
            .filter(|&&l| l < -ZERO_EIGEN_TOL)
            .sum::<f64>()
    }
}

/// `N(ρ) = −2 Σ_{λᵢ<0} λᵢ` over the spectrum of `ρ^{T_party}`.
pub fn negativity_of(rho: &DensityMatrix, party: usize) -> Result<f64> {
    Ok(PartialTransposeSpectrum::of(rho, party)?.negativity())
}

/// Negativity of the family member at `(x, y)`, transposing the third qubit.
pub fn family_negativity(x: f64, y: f64) -> Result<f64> {
    negativity_of(&family_density_matrix(&FamilyPoint::new(x, y)?)?, 3)
}

/// `N(ρ(x, y))` on an `nx × ny` simplex grid.
pub fn negativity_surface(nx: usize, ny: usize) -> Result<SurfaceGrid> {
    check_resolution(nx.min(ny), 3)?;
    SurfaceGrid::from_fn(Parametrization::XySimplex, nx, ny, family_negativity)
}

/// Two states ranked in opposite order by negativity and by entanglement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderingDisagreement {
    pub p1: (f64, f64),
    pub p2: (f64, f64),
    pub n1: f64,
    pub n2: f64,
    pub e1: f64,
    pub e2: f64,
}

impl OrderingDisagreement {
    /// `|N₁ − N₂| · |E₁ − E₂|`.
    pub fn magnitude(&self) -> f64 {
        (self.n1 - self.n2).abs() * (self.e1 - self.e2).abs()
    }

    /// Whether the strict disagreement holds for these values.
    pub fn holds(&self) -> bool {
        disagree(self.n1, self.n2, self.e1, self.e2)
    }

    pub fn involves(&self, a: (f64, f64), b: (f64, f64)) -> bool {
        (self.p1 == a && self.p2 == b) || (self.p1 == b && self.p2 == a)
    }
}

fn disagree(n1: f64, n2: f64, e1: f64, e2: f64) -> bool {
    let m = ORDERING_MARGIN;
    (n1 < n2 - m && e1 > e2 + m) || (n1 > n2 + m && e1 < e2 - m)
}

/// Pairs of grid points on which the two surfaces disagree about ordering.
///
/// When `n_pairs` covers every pair of defined nodes the scan is exhaustive;
/// otherwise `n_pairs` random pairs are drawn, and the pairs among the three
/// pure corners are always included. Results come in node order.
pub fn ordering_search(
    gme_surface: &SurfaceGrid,
    neg_surface: &SurfaceGrid,
    n_pairs: usize,
    seed: u64,
) -> Result<Vec<OrderingDisagreement>> {
    if (gme_surface.nx, gme_surface.ny) != (neg_surface.nx, neg_surface.ny) {
        return Err(Error::Dimension {
            expected: gme_surface.values.len(),
            got: neg_surface.values.len(),
        });
    }
    if gme_surface.parametrization != Parametrization::XySimplex
        || neg_surface.parametrization != Parametrization::XySimplex
    {
        return Err(Error::Parametrization("ordering needs (x, y) grids"));
    }
    let (nx, ny) = (gme_surface.nx, gme_surface.ny);
    let nodes: Vec<(usize, usize)> = (0..nx)
        .flat_map(|i| (0..ny).map(move |j| (i, j)))
        .filter(|&(i, j)| gme_surface.get(i, j).is_finite() && neg_surface.get(i, j).is_finite())
        .collect();
    let m = nodes.len();
    let total = m * m.saturating_sub(1) / 2;

    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    if n_pairs >= total {
        for a in 0..m {
            for b in (a + 1)..m {
                pairs.insert((a, b));
            }
        }
    } else {
        let corner_ids: Vec<usize> = [(nx - 1, 0), (0, ny - 1), (0, 0)]
            .iter()
            .filter_map(|c| nodes.iter().position(|n| n == c))
            .collect();
        for (k, &a) in corner_ids.iter().enumerate() {
            for &b in &corner_ids[k + 1..] {
                pairs.insert((a.min(b), a.max(b)));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..n_pairs {
            let a = rng.gen_range(0..m);
            let b = rng.gen_range(0..m);
            if a != b {
                pairs.insert((a.min(b), a.max(b)));
            }
        }
    }

    let mut out = Vec::new();
    for (a, b) in pairs {
        let (ia, ja) = nodes[a];
        let (ib, jb) = nodes[b];
        let d = OrderingDisagreement {
            p1: (gme_surface.x(ia), gme_surface.second(ja)),
            p2: (gme_surface.x(ib), gme_surface.second(jb)),
            n1: neg_surface.get(ia, ja),
            n2: neg_surface.get(ib, jb),
            e1: gme_surface.get(ia, ja),
            e2: gme_surface.get(ib, jb),
        };
        if d.holds() {
            out.push(d);
        }
    }
    Ok(out)
}
