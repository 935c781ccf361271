//! Generalized Pauli channels built on a MUM family.
//!
//! With quantum-classical channels `Φ_α[X] = Σ_k P_k^(α) Tr(X P_k^(α))`
//! along each axis and a probability vector `p = (p₀, …, p_{d+1})`, the
//! channel is
//!
//! ```text
//! Λ = (d p₀ − 1)/(d − 1) · id + d/(d − 1) · Σ_α p_α Φ_α.
//! ```
//!
//! It is bistochastic and diagonal in the operator family `{I, U_{α,k}}`
//! with `U_{α,k} = Σ_l ω^{kl} P_l^(α)`:
//!
//! ```text
//! Λ[U_{α,k}] = λ_α U_{α,k},
//! λ_α = [d(p₀ + (dκ−1)/(d−1) · p_α) − 1]/(d − 1),
//! ```
//!
//! each eigenvalue (d−1)-fold degenerate. The map between `p` and `λ` is
//! affine and invertible; construction from eigenvalues is always allowed,
//! with positivity a verdict rather than a precondition. Complete positivity
//! is decided numerically through the Choi matrix; the sufficient analytic
//! conditions (a convex mixture of the identity map and the Φ_α) and, at
//! κ = 1, the Fujiwara-Algoet inequalities are exposed alongside.

use serde::{Deserialize, Serialize};

use crate::bases::omega_pow;
use crate::mum::MumSet;
use crate::operator::{Operator, C64};
use crate::sampling;
use crate::{Error, Result, Tolerance};

/// The completely depolarizing map Φ₀[X] = I·Tr(X)/d.
pub fn depolarizing_apply(x: &Operator) -> Operator {
    Operator::identity(x.dim()).scaled(x.trace() / x.dim() as f64)
}

/// The quantum-classical channel along one axis,
/// Φ_α[X] = Σ_k P_k^(α) Tr(X P_k^(α)); `axis` runs 1..=d+1.
pub fn qc_apply(m: &MumSet, axis: usize, x: &Operator) -> Result<Operator> {
    if axis == 0 || axis > m.axis_count() {
        return Err(Error::BadAxis {
            axis,
            max: m.axis_count(),
        });
    }
    if x.dim() != m.dim() {
        return Err(Error::DimMismatch {
            left: m.dim(),
            right: x.dim(),
        });
    }
    Ok(qc_apply_unchecked(m, axis - 1, x))
}

fn qc_apply_unchecked(m: &MumSet, axis_idx: usize, x: &Operator) -> Operator {
    let mut out = Operator::zeros(m.dim());
    for p in &m.povm_axes()[axis_idx] {
        out = &out + &p.scaled((x * p).trace());
    }
    out
}

/// Channel eigenvector operators U_{α,k}, axes 1..=d+1, k = 1..=d−1.
#[derive(Clone, Debug)]
pub struct UOperators {
    dim: usize,
    ops: Vec<Vec<Operator>>,
}

impl UOperators {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// U_{α,k}; `axis` runs 1..=d+1, `k` runs 1..=d−1.
    pub fn get(&self, axis: usize, k: usize) -> &Operator {
        &self.ops[axis - 1][k - 1]
    }

    pub fn axes(&self) -> &[Vec<Operator>] {
        &self.ops
    }

    /// Iterate (axis, k, U) over the whole family.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Operator)> {
        self.ops.iter().enumerate().flat_map(|(a, axis)| {
            axis.iter()
                .enumerate()
                .map(move |(k, u)| (a + 1, k + 1, u))
        })
    }
}

/// The eigenvector operators from the POVM effects:
/// U_{α,k} = Σ_{l=0}^{d−1} ω^{kl} P_l^(α).
pub fn u_operators(m: &MumSet) -> UOperators {
    let d = m.dim();
    let ops = m
        .povm_axes()
        .iter()
        .map(|axis| {
            (1..d)
                .map(|k| {
                    let mut acc = Operator::zeros(d);
                    for (l, p) in axis.iter().enumerate() {
                        acc = &acc + &p.scaled(omega_pow(d, k * l));
                    }
                    acc
                })
                .collect()
        })
        .collect();
    UOperators { dim: d, ops }
}

/// The same family written in the axis basis:
/// U_{α,k} = √d·t Σ_{l=1}^{d−1} F_{α,l} [1 − (√d+1) ω^{kl}].
///
/// Algebraically identical to [`u_operators`]; kept as an independent route
/// for cross-checks.
pub fn u_operators_axis_form(m: &MumSet) -> UOperators {
    let d = m.dim();
    let sqrt_d = (d as f64).sqrt();
    let ops = m
        .axis_elements()
        .iter()
        .map(|axis| {
            (1..d)
                .map(|k| {
                    let mut acc = Operator::zeros(d);
                    for (l_idx, f) in axis.iter().enumerate() {
                        let l = l_idx + 1;
                        let coeff = C64::new(1.0, 0.0)
                            - omega_pow(d, (k * l) % d) * (sqrt_d + 1.0);
                        acc = &acc + &f.scaled(coeff * (sqrt_d * m.t()));
                    }
                    acc
                })
                .collect()
        })
        .collect();
    UOperators { dim: d, ops }
}

/// Eigenvalues (λ_1, …, λ_{d+1}) from the probability vector (p₀, …, p_{d+1}).
pub fn eigenvalues_from_probs(probs: &[f64], m: &MumSet) -> Result<Vec<f64>> {
    let d = m.dim() as f64;
    if probs.len() != m.dim() + 2 {
        return Err(Error::BadLength {
            what: "probability vector",
            expected: m.dim() + 2,
            got: probs.len(),
        });
    }
    let contrast = m.trace_contrast();
    Ok((1..probs.len())
        .map(|a| (d * (probs[0] + contrast * probs[a]) - 1.0) / (d - 1.0))
        .collect())
}

/// The inverse map: probabilities from eigenvalues. The output sums to one
/// but may have negative entries; complete positivity is a separate verdict.
pub fn probs_from_eigenvalues(lambda: &[f64], m: &MumSet) -> Result<Vec<f64>> {
    let d = m.dim() as f64;
    if lambda.len() != m.dim() + 1 {
        return Err(Error::BadLength {
            what: "eigenvalue vector",
            expected: m.dim() + 1,
            got: lambda.len(),
        });
    }
    let kappa = m.kappa();
    let sum: f64 = lambda.iter().sum();
    let p0 = ((d - 1.0).powi(2) * sum - d * (d * kappa - 1.0) + d * d - 1.0)
        / (d * d * (d - kappa));
    let coeff = (d - 1.0).powi(2) / (d * d * (d * kappa - 1.0) * (d - kappa));
    let mut probs = Vec::with_capacity(lambda.len() + 1);
    probs.push(p0);
    for &l in lambda {
        probs.push(coeff * (d * kappa - 1.0 + d * (d - kappa) * l - (d - 1.0) * sum));
    }
    Ok(probs)
}

/// A generalized Pauli channel: a MUM family plus a probability vector and
/// the induced eigenvalue vector.
#[derive(Clone, Debug)]
pub struct GeneralizedPauliChannel {
    mums: MumSet,
    probs: Vec<f64>,
    eigenvalues: Vec<f64>,
}

impl GeneralizedPauliChannel {
    /// Construct from probabilities (p₀, …, p_{d+1}); they must sum to one
    /// and be nonnegative within `tol`.
    pub fn from_probs(mums: MumSet, probs: Vec<f64>, tol: &Tolerance) -> Result<Self> {
        if probs.len() != mums.dim() + 2 {
            return Err(Error::BadProbabilities(format!(
                "expected {} entries, got {}",
                mums.dim() + 2,
                probs.len()
            )));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > tol.eq_tol {
            return Err(Error::BadProbabilities(format!("entries sum to {sum}")));
        }
        if let Some(p) = probs.iter().find(|&&p| p < -tol.eq_tol) {
            return Err(Error::BadProbabilities(format!("negative entry {p}")));
        }
        let eigenvalues = eigenvalues_from_probs(&probs, &mums)?;
        Ok(GeneralizedPauliChannel {
            mums,
            probs,
            eigenvalues,
        })
    }

    /// Construct from eigenvalues (λ_1, …, λ_{d+1}). Always permitted; the
    /// induced probabilities may leave the simplex.
    pub fn from_eigenvalues(mums: MumSet, eigenvalues: Vec<f64>) -> Result<Self> {
        let probs = probs_from_eigenvalues(&eigenvalues, &mums)?;
        Ok(GeneralizedPauliChannel {
            mums,
            probs,
            eigenvalues,
        })
    }

    pub fn mums(&self) -> &MumSet {
        &self.mums
    }

    pub fn dim(&self) -> usize {
        self.mums.dim()
    }

    pub fn kappa(&self) -> f64 {
        self.mums.kappa()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Apply the channel in its defining mixture form.
    pub fn apply(&self, x: &Operator) -> Result<Operator> {
        if x.dim() != self.dim() {
            return Err(Error::DimMismatch {
                left: self.dim(),
                right: x.dim(),
            });
        }
        let d = self.dim() as f64;
        let mut out = x.scaled_re((d * self.probs[0] - 1.0) / (d - 1.0));
        for (a, &p) in self.probs[1..].iter().enumerate() {
            let phi = qc_apply_unchecked(&self.mums, a, x);
            out = &out + &phi.scaled_re(d / (d - 1.0) * p);
        }
        Ok(out)
    }

    /// Apply the channel in the depolarizing-mixture form
    /// Λ = (1 − Σμ_α)Φ₀ + Σ μ_α Φ_α with μ_α = (d−1)/(dκ−1) · λ_α.
    pub fn apply_alt(&self, x: &Operator) -> Result<Operator> {
        if x.dim() != self.dim() {
            return Err(Error::DimMismatch {
                left: self.dim(),
                right: x.dim(),
            });
        }
        let mu = self.mu_weights();
        let mu_sum: f64 = mu.iter().sum();
        let mut out = depolarizing_apply(x).scaled_re(1.0 - mu_sum);
        for (a, &w) in mu.iter().enumerate() {
            out = &out + &qc_apply_unchecked(&self.mums, a, x).scaled_re(w);
        }
        Ok(out)
    }

    /// μ_α = (d−1)/(dκ−1) · λ_α.
    pub fn mu_weights(&self) -> Vec<f64> {
        let w = 1.0 / self.mums.trace_contrast();
        self.eigenvalues.iter().map(|&l| l * w).collect()
    }

    /// The Choi matrix (Λ ⊗ id)|Ω⟩⟨Ω| with |Ω⟩ = Σ_i |ii⟩/√d (unit trace).
    pub fn choi_matrix(&self) -> ChoiMatrix {
        let d = self.dim();
        let mut matrix = Operator::zeros(d * d);
        for i in 0..d {
            for j in 0..d {
                let image = self
                    .apply(&Operator::ket_bra(d, i, j))
                    .expect("dims match");
                matrix = &matrix + &image.kron(&Operator::ket_bra(d, i, j));
            }
        }
        ChoiMatrix {
            dim: d,
            matrix: matrix.scaled_re(1.0 / d as f64),
        }
    }

    /// Necessary-and-sufficient CP test: the Choi matrix is PSD.
    pub fn is_completely_positive(&self, tol: &Tolerance) -> CpVerdict {
        let choi = self.choi_matrix();
        let herm = (&choi.matrix + &choi.matrix.adjoint()).scaled_re(0.5);
        let min_eig = herm
            .min_eigenvalue(tol)
            .expect("Choi matrix of a real mixture is Hermitian");
        CpVerdict {
            choi_min_eigenvalue: min_eig,
            is_cp: min_eig >= -tol.psd_tol,
        }
    }

    /// Sufficient CP conditions, in both parametrizations.
    ///
    /// In probabilities: p₀ ≥ 1/d and p_α ≥ 0, which exhibits Λ as a convex
    /// mixture of the identity map and the Φ_α. In eigenvalues, the
    /// equivalent double bound
    /// (dκ−1)/(d−1) ≤ Σλ_α ≤ [dκ−1 + d(d−κ) min_β λ_β]/(d−1).
    /// The two forms must agree; passing implies a PSD Choi matrix.
    pub fn sufficient_cp_check(&self, tol: &Tolerance) -> SufficientCpReport {
        let d = self.dim() as f64;
        let kappa = self.kappa();
        let p_form = self.probs[0] >= 1.0 / d - tol.eq_tol
            && self.probs[1..].iter().all(|&p| p >= -tol.eq_tol);

        let sum: f64 = self.eigenvalues.iter().sum();
        let min_l = self
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        let lower = (d * kappa - 1.0) / (d - 1.0);
        let upper = (d * kappa - 1.0 + d * (d - kappa) * min_l) / (d - 1.0);
        let lambda_form = sum >= lower - tol.eq_tol && sum <= upper + tol.eq_tol;

        SufficientCpReport {
            p_form_pass: p_form,
            lambda_form_pass: lambda_form,
            forms_agree: p_form == lambda_form,
            pass: p_form && lambda_form,
        }
    }
}

/// The Choi matrix of a channel, normalized to unit trace.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChoiMatrix {
    pub dim: usize,
    pub matrix: Operator,
}

impl ChoiMatrix {
    /// Partial transpose over the second tensor factor.
    pub fn partial_transpose(&self) -> Operator {
        self.matrix
            .partial_transpose_second(self.dim, self.dim)
            .expect("Choi matrix has product dimensions")
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct CpVerdict {
    pub choi_min_eigenvalue: f64,
    pub is_cp: bool,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SufficientCpReport {
    pub p_form_pass: bool,
    pub lambda_form_pass: bool,
    pub forms_agree: bool,
    pub pass: bool,
}

/// Fujiwara-Algoet inequalities −1/(d−1) ≤ Σλ_α ≤ 1 + d·min_α λ_α.
///
/// For κ = 1 families these are necessary and sufficient for complete
/// positivity.
pub fn fujiwara_algoet_check(lambda: &[f64], dim: usize, tol: &Tolerance) -> bool {
    let d = dim as f64;
    let sum: f64 = lambda.iter().sum();
    let min_l = lambda.iter().copied().fold(f64::INFINITY, f64::min);
    sum >= -1.0 / (d - 1.0) - tol.eq_tol && sum <= 1.0 + d * min_l + tol.eq_tol
}

/// Deviations of the quantum-classical channels from their composition
/// identities, evaluated on the spanning set {I, F_{α,l}} (cross-axis
/// squares on the POVM effects, where the identities are stated).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CompositionReport {
    pub kappa: f64,
    /// Φ_α Φ_β = Φ₀ for α ≠ β.
    pub pairwise_cross_dev: f64,
    /// Φ_α Φ_α[P_l^(β)] = Φ₀[P_l^(β)] for β ≠ α.
    pub square_cross_dev: f64,
    /// Φ_α Φ_α[P_l^(α)] = (dκ−1)/(d−1) Φ_α[P_l^(α)] + d(1−κ)/(d−1) Φ₀[P_l^(α)].
    pub square_same_dev: f64,
    /// Σ_α Φ_α = d(d−κ)/(d−1) Φ₀ + (dκ−1)/(d−1) id.
    pub sum_rule_dev: f64,
    /// Φ_α Φ_α = Φ_α; zero only in the projective (κ = 1) case.
    pub idempotence_dev: f64,
}

/// Evaluate the composition identities on a spanning operator set.
pub fn composition_table(m: &MumSet) -> CompositionReport {
    let d = m.dim() as f64;
    let kappa = m.kappa();
    let contrast = m.trace_contrast();
    let axes = m.axis_count();

    let mut eval_set = vec![Operator::identity(m.dim())];
    for axis in m.axis_elements() {
        eval_set.extend(axis);
    }

    let mut pairwise_cross_dev: f64 = 0.0;
    let mut sum_rule_dev: f64 = 0.0;
    let mut idempotence_dev: f64 = 0.0;
    for x in &eval_set {
        let phis: Vec<Operator> = (0..axes).map(|a| qc_apply_unchecked(m, a, x)).collect();
        let phi0 = depolarizing_apply(x);

        for a in 0..axes {
            for (b, phi_b) in phis.iter().enumerate() {
                if a == b {
                    continue;
                }
                let lhs = qc_apply_unchecked(m, a, phi_b);
                pairwise_cross_dev = pairwise_cross_dev.max((&lhs - &phi0).frobenius_norm());
            }
            let twice = qc_apply_unchecked(m, a, &phis[a]);
            idempotence_dev = idempotence_dev.max((&twice - &phis[a]).frobenius_norm());
        }

        let mut sum = Operator::zeros(m.dim());
        for phi in &phis {
            sum = &sum + phi;
        }
        let rhs = &phi0.scaled_re(d * (d - kappa) / (d - 1.0)) + &x.scaled_re(contrast);
        sum_rule_dev = sum_rule_dev.max((&sum - &rhs).frobenius_norm());
    }

    let mut square_cross_dev: f64 = 0.0;
    let mut square_same_dev: f64 = 0.0;
    for a in 0..axes {
        for (b, axis_b) in m.povm_axes().iter().enumerate() {
            for p in axis_b {
                let once = qc_apply_unchecked(m, a, p);
                let twice = qc_apply_unchecked(m, a, &once);
                let phi0 = depolarizing_apply(p);
                if a == b {
                    let rhs = &once.scaled_re(contrast)
                        + &phi0.scaled_re(d * (1.0 - kappa) / (d - 1.0));
                    square_same_dev = square_same_dev.max((&twice - &rhs).frobenius_norm());
                } else {
                    square_cross_dev = square_cross_dev.max((&twice - &phi0).frobenius_norm());
                }
            }
        }
    }

    CompositionReport {
        kappa,
        pairwise_cross_dev,
        square_cross_dev,
        square_same_dev,
        sum_rule_dev,
        idempotence_dev,
    }
}

/// Commutation of the channel with its quantum-classical components, and the
/// (generally failing) eigenvector covariance.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CommutationReport {
    /// max ‖ΛΦ_α[X] − Φ_αΛ[X]‖_F over axes and spanning inputs; expected
    /// at roundoff for every channel.
    pub max_phi_commutator_dev: f64,
    /// Per (axis, k): max ‖Λ[U X U†] − U Λ[X] U†‖_F over random Hermitian X.
    /// Reported, not asserted — covariance fails for generic κ < 1 families.
    pub covariance_devs: Vec<CovarianceEntry>,
    pub max_covariance_dev: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CovarianceEntry {
    pub axis: usize,
    pub k: usize,
    pub deviation: f64,
}

/// Evaluate ΛΦ_α = Φ_αΛ on a spanning set and probe the covariance identity
/// with seeded random inputs.
pub fn commutation_check(
    ch: &GeneralizedPauliChannel,
    x_samples: usize,
    seed: u64,
) -> CommutationReport {
    let m = ch.mums();
    let mut eval_set = vec![Operator::identity(m.dim())];
    for axis in m.axis_elements() {
        eval_set.extend(axis);
    }

    let mut max_phi_commutator_dev: f64 = 0.0;
    for x in &eval_set {
        let lx = ch.apply(x).expect("dims match");
        for a in 0..m.axis_count() {
            let phi_then_ch = ch.apply(&qc_apply_unchecked(m, a, x)).expect("dims match");
            let ch_then_phi = qc_apply_unchecked(m, a, &lx);
            max_phi_commutator_dev =
                max_phi_commutator_dev.max((&phi_then_ch - &ch_then_phi).frobenius_norm());
        }
    }

    let us = u_operators(m);
    let mut covariance_devs = Vec::new();
    let mut max_covariance_dev: f64 = 0.0;
    for (axis, k, u) in us.iter() {
        let u_dag = u.adjoint();
        let mut dev: f64 = 0.0;
        for s in 0..x_samples {
            let mut rng =
                sampling::stream_rng(seed, ((axis * m.dim() + k) * x_samples + s) as u64);
            let x = sampling::random_hermitian(m.dim(), 1.0, &mut rng);
            let lhs = ch.apply(&(&(u * &x) * &u_dag)).expect("dims match");
            let rhs = &(u * &ch.apply(&x).expect("dims match")) * &u_dag;
            dev = dev.max((&lhs - &rhs).frobenius_norm());
        }
        max_covariance_dev = max_covariance_dev.max(dev);
        covariance_devs.push(CovarianceEntry {
            axis,
            k,
            deviation: dev,
        });
    }

    CommutationReport {
        max_phi_commutator_dev,
        covariance_devs,
        max_covariance_dev,
    }
}
