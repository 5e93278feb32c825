//! Geometric measure of entanglement for multi-qubit pure states and for
//! mixtures of GHZ, W and inverted-W states.
//!
//! The pieces, bottom-up:
//!
//! * [`states`] builds pure, product and density-matrix states and the
//!   three-parameter GHZ/W/W̃ family, plus the phase twirl it is invariant
//!   under.
//! * [`pure_gme`] finds the closest product state of an arbitrary pure state
//!   by alternating fixed-point sweeps.
//! * [`family`] evaluates the entanglement eigenvalue of the family's
//!   non-negative superposition in closed form through a cubic.
//! * [`mixed_hull`] turns that pure-state surface into the mixed-state one by
//!   convexifying along `r` and then along `x`.
//! * [`negativity`] handles partial transposes and negativity.
//! * [`cli`] wires everything into the `gme` binary.

pub mod cli;
pub mod cubic;
pub mod envelope;
pub mod error;
pub mod family;
pub mod hull3d;
pub mod linalg;
pub mod mixed_hull;
pub mod negativity;
pub mod pure_gme;
pub mod states;
pub mod surface;

pub use error::{Error, Result};
pub use family::{cubic_roots_nonneg, e_psi, lambda_family, CubicSolution};
pub use mixed_hull::{
    convexify_in_r, convexify_in_x, hull_oracle, mixed_gme_surface, sample_e_psi_xr,
    verify_convexity, HullReport, MixedSurface,
};
pub use negativity::{
    negativity_of, negativity_surface, ordering_search, partial_transpose,
    OrderingDisagreement, PartialTransposeSpectrum,
};
pub use pure_gme::{solve_gme, stationarity_sweep, GmeResult, SolverConfig};
pub use states::{
    family_density_matrix, family_pure_state, make_ghz, make_w, make_w_tilde, twirl,
    DensityMatrix, FamilyPoint, ProductState, PureState,
};
pub use surface::{Parametrization, SurfaceGrid};
