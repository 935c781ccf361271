//! # mum-channels
//!
//! Mutually unbiased measurements (MUMs) and the bistochastic qudit channels
//! built on top of them.
//!
//! A MUM family is a set of d+1 POVMs `{P_k^(α)}` on a d-dimensional Hilbert
//! space whose pairwise statistics are as flat as possible:
//!
//! ```text
//! Tr(P_k^(α))          = 1,
//! Tr(P_k^(α) P_l^(β))  = 1/d + (dκ−1)/(d−1) · δ_αβ (δ_kl − 1/d),
//! ```
//!
//! with an efficiency parameter κ ∈ (1/d, 1]. At κ = 1 the family collapses to
//! rank-1 projectors onto d+1 mutually unbiased bases; for κ < 1 it exists in
//! every finite dimension. The crate implements the Kalev–Gour construction,
//! which turns any orthonormal traceless Hermitian operator basis grouped into
//! d+1 axes into such a family, `P_k^(α) = I/d + t F_k^(α)`, and finds the
//! optimal free parameter `t` analytically from the spectra of the `F_k^(α)`.
//!
//! On top of a MUM family the crate assembles the generalized Pauli channels
//!
//! ```text
//! Λ = (d p₀ − 1)/(d − 1) · id + d/(d − 1) · Σ_α p_α Φ_α,
//! ```
//!
//! where `Φ_α[X] = Σ_k P_k^(α) Tr(X P_k^(α))` are the quantum-classical
//! channels along each axis, and provides the analysis toolbox: channel
//! eigenvalues and eigenvectors `U_{α,k}`, Choi matrices and complete
//! positivity, sufficient CP conditions, Fujiwara–Algoet inequalities in the
//! projective case, entanglement-breaking certification through the Holevo
//! form, PPT cross-checks, maximal output 2-norm, and strong multiplicativity.
//!
//! ## Modules
//!
//! - [`operator`] — dense complex matrices: Hermitian eigensystems, Kronecker
//!   products, positivity predicates.
//! - [`bases`] — Pauli, Gell-Mann, Weyl, and Heisenberg-Weyl operator bases
//!   grouped into axes.
//! - [`mum`] — the MUM construction, feasibility interval, optimal `t`, state
//!   reconstruction, and the inverse construction from eigenvector operators.
//! - [`channel`] — generalized Pauli channels, Choi matrices, CP tests,
//!   composition and commutation identities.
//! - [`analysis`] — entanglement breaking, output purity, multiplicativity,
//!   and the eigenvector census.
//! - [`sampling`] — seed-stable random states and parameter vectors.
//! - [`suite`] — the reference verification suite run by `paper-suite`.
//!
//! The `examples/` directory has one runnable program per capability; start
//! with `cargo run --example build_mums`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub mod analysis;
pub mod bases;
pub mod channel;
pub mod mum;
pub mod operator;
pub mod sampling;
pub mod suite;

pub use analysis::{analyze, AnalysisReport, CensusReport, EbReport, Nu2Report};
pub use bases::{
    custom_axis_basis, gell_mann_basis, hw_observable_basis, pauli_axis_basis, weyl_operator,
    weyl_operators, AxisBasis, BasisLabel,
};
pub use channel::{
    fujiwara_algoet_check, u_operators, ChoiMatrix, GeneralizedPauliChannel, UOperators,
};
pub use mum::{
    build_mums, feasible_t_interval, mums_from_u_operators, optimal_t, verify_mum_conditions,
    weyl_mub_mums, MumSet,
};
pub use operator::{Operator, C64};

/// Errors shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    #[error("operator is not Hermitian (relative deviation {deviation:.3e})")]
    NonHermitianInput { deviation: f64 },
    #[error("operator is numerically zero")]
    ZeroOperator,
    #[error("dimension {0} is not supported here (need d >= 2, and prime d for the Weyl MUB family)")]
    BadDimension(usize),
    #[error("operator {index} is not Hermitian (deviation {deviation:.3e})")]
    NonHermitian { index: usize, deviation: f64 },
    #[error("operator {index} is not traceless (|trace| = {trace_abs:.3e})")]
    NonTraceless { index: usize, trace_abs: f64 },
    #[error("operator set is not orthonormal (max Gram deviation {deviation:.3e})")]
    NonOrthonormal { deviation: f64 },
    #[error("bad partition: {0}")]
    BadPartition(String),
    #[error("t = 0 does not define a measurement")]
    TZero,
    #[error("t = {t} lies outside the positivity interval [{t_min}, {t_max}]")]
    TOutOfRange { t: f64, t_min: f64, t_max: f64 },
    #[error("degenerate basis: F operator (axis {axis}, outcome {outcome}) is numerically zero")]
    DegenerateBasis { axis: usize, outcome: usize },
    #[error("axis {axis} out of range 1..={max}")]
    BadAxis { axis: usize, max: usize },
    #[error("bad probabilities: {0}")]
    BadProbabilities(String),
    #[error("bad {what} length: expected {expected}, got {got}")]
    BadLength {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("operator family is not self-consistent: {0}")]
    NotSelfConsistent(String),
    #[error("channel is outside the sufficient entanglement-breaking regime (sum of eigenvalues {sum_lambda} > {threshold})")]
    NotSufficientRegime { sum_lambda: f64, threshold: f64 },
    #[error("channel is not completely positive (min Choi eigenvalue {min_choi_eigenvalue:.3e})")]
    NotCP { min_choi_eigenvalue: f64 },
    #[error("invalid tolerance: {0}")]
    BadTolerance(String),
}

impl Error {
    /// Stable machine-readable code for CLI error reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotSquare { .. } => "NotSquare",
            Error::DimMismatch { .. } => "DimMismatch",
            Error::NonHermitianInput { .. } => "NonHermitianInput",
            Error::ZeroOperator => "ZeroOperator",
            Error::BadDimension(_) => "BadDimension",
            Error::NonHermitian { .. } => "NonHermitian",
            Error::NonTraceless { .. } => "NonTraceless",
            Error::NonOrthonormal { .. } => "NonOrthonormal",
            Error::BadPartition(_) => "BadPartition",
            Error::TZero => "TZero",
            Error::TOutOfRange { .. } => "TOutOfRange",
            Error::DegenerateBasis { .. } => "DegenerateBasis",
            Error::BadAxis { .. } => "BadAxis",
            Error::BadProbabilities(_) => "BadProbabilities",
            Error::BadLength { .. } => "BadLength",
            Error::NotSelfConsistent(_) => "NotSelfConsistent",
            Error::NotSufficientRegime { .. } => "NotSufficientRegime",
            Error::NotCP { .. } => "NotCP",
            Error::BadTolerance(_) => "BadTolerance",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Numerical tolerances threaded through every predicate.
///
/// `eq_tol` governs entrywise and norm comparisons, `psd_tol` is the floor for
/// "nonnegative" eigenvalues. They are explicit values, never hidden globals,
/// so callers (and the verification suite) can vary them.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Tolerance {
    pub eq_tol: f64,
    pub psd_tol: f64,
}

impl Tolerance {
    pub fn new(eq_tol: f64, psd_tol: f64) -> Result<Self> {
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !positive(eq_tol) || !positive(psd_tol) {
            return Err(Error::BadTolerance(format!(
                "both tolerances must be strictly positive (got eq_tol = {eq_tol}, psd_tol = {psd_tol})"
            )));
        }
        Ok(Tolerance { eq_tol, psd_tol })
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            eq_tol: 1e-10,
            psd_tol: 1e-10,
        }
    }
}
