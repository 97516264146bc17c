//! Resonance poles and bound states in the continuum (BIC) for a
//! radiation-driven two-impurity quantum wire.
//!
//! A 1D tight-binding wire (band `[-W, W]`) hosts two impurities at `±x_D`,
//! each with two internal levels, driven by a monochromatic field of
//! frequency `Ω`. Within one photon manifold the problem reduces, per parity
//! sector, to a dressed two-level block coupled to the wire continuum. The
//! complex eigenvalues are the roots of a dispersion function
//!
//! ```text
//! D(z) = (z - H_ll)(z - H_uu) - H_lu² - Ξ(z)·Q(z)
//! ```
//!
//! where `Ξ(z)` is the closed-form wire self-energy. Mapping the energy to
//! the Bloch variable `u` (`z = -(W/2)(u + 1/u)`) turns `D` into a real
//! polynomial whose roots cover both Riemann sheets at once; `|u| < 1` is the
//! physical sheet, `|u| > 1` the second sheet where resonances live.
//!
//! Two kinds of decay-free in-band states exist and are predicted in closed
//! form by [`bic`]: *static* ones where `Ξ` itself vanishes (geometric
//! interference between the impurity sites) and *dynamic* ones where the
//! coefficient `Q` vanishes (Fano cancellation between the two optical
//! transition channels). Everything is cross-checked by exact diagonalization
//! of a finite lattice in [`lattice`].

pub mod bic;
pub mod dispersion;
pub mod lattice;
pub mod model;
pub mod poly;
pub mod presets;
pub mod selfenergy;

pub use bic::{BicKind, BicPrediction, DynamicBic, DynamicBicOutcome};
pub use dispersion::{sweep, DispersionEq, Pole, PoleKind, SweepRow, SweepTable};
pub use lattice::{LatticeSystem, ScanReport, Spectrum, SurvivalTrace};
pub use model::{band_energy, effective_two_level, EffectiveTwoLevel, ModelParams, Sector};
pub use selfenergy::{u_from_z, xi, xi_quadrature, BlochPoint, Sheet};

/// Errors shared across the crate.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("W must be positive (got {0})")]
    NonPositiveBandwidth(f64),
    #[error("x_D must be a positive integer (got {0})")]
    InvalidImpuritySite(f64),
    #[error("n must be a non-negative integer (got {0})")]
    InvalidPhotonIndex(f64),
    #[error("parameter {name} must be finite (got {value})")]
    NonFinite { name: &'static str, value: f64 },
    #[error("z = {re}{im:+}i lies at a band edge of [-{w}, {w}]")]
    BandEdge { re: f64, im: f64, w: f64 },
    #[error("quadrature requires |Im z| > 1e-6 (got {0:e})")]
    QuadraturePrecondition(f64),
    #[error("quadrature did not reach tolerance {tol:e} (error estimate {estimate:e})")]
    QuadratureNonConvergence { tol: f64, estimate: f64 },
    #[error("root finder did not converge after {iters} iterations (worst residual {residual:e})")]
    RootFinderNonConvergence { iters: usize, residual: f64 },
    #[error("no static BIC frequency: z0 = E_u = {0} makes the n=0 equation degenerate")]
    DegenerateFrequency(f64),
    #[error("sweep solver failed at omega_plus_el = {omega}: {message}")]
    SweepFailure { omega: f64, message: String },
    #[error("lattice requires M >= 100 (got {0})")]
    LatticeTooSmall(usize),
    #[error("bound-state scan needs at least 3 strictly increasing lattice sizes (got {0:?})")]
    BadScanList(Vec<usize>),
    #[error("t_max = {t_max} exceeds the recurrence bound M/(4W) = {bound}")]
    RecurrenceBound { t_max: f64, bound: f64 },
    #[error("initial state must be a nonzero vector on the discrete block")]
    ZeroInitialState,
    #[error("decay-fit window [{t0}, {t1}] is invalid or leaves fewer than 3 samples")]
    BadFitWindow { t0: f64, t1: f64 },
    #[error("survival probability fell below 1e-12 inside the fit window")]
    UnderflowInWindow,
}

pub type Result<T> = std::result::Result<T, Error>;
