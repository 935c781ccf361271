//! Mutually unbiased measurements from axis bases.
//!
//! Given an [`AxisBasis`] {F_{α,l}}, the construction forms one operator per
//! outcome,
//!
//! ```text
//! F_0^(α) = (1+√d) Σ_l F_{α,l},
//! F_k^(α) = Σ_l F_{α,l} − √d(1+√d) F_{α,k},   k = 1..d−1,
//! ```
//!
//! and sets `P_k^(α) = I/d + t F_k^(α)` for a free real `t ≠ 0` chosen so
//! every `P_k^(α)` stays positive. The efficiency parameter follows from
//!
//! ```text
//! κ = 1/d + (d−1) t² (1+√d)².
//! ```
//!
//! Because the eigenvalues of `I/d + t F` are affine in `t`, the feasible
//! region is a closed interval computed exactly from the spectra of the
//! `F_k^(α)`; no numerical optimizer is involved, and the optimal `t` (the
//! largest |t|, hence the largest κ) is one of the interval endpoints.
//!
//! The module also inverts the construction: a family of eigenvector
//! operators `U_{α,k}` with the right adjoint pairing, normalization, and
//! positivity yields the measurement back through
//! `P_k^(α) = (I + Σ_l ω^{−kl} U_{α,l})/d`.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bases::{omega_pow, weyl_mub_u_family, AxisBasis, BasisLabel};
use crate::operator::{Operator, C64};
use crate::{Error, Result, Tolerance};

/// A full family of d+1 mutually unbiased measurements.
#[derive(Clone, Debug)]
pub struct MumSet {
    pub(crate) dim: usize,
    pub(crate) t: f64,
    pub(crate) kappa: f64,
    pub(crate) axes_label: BasisLabel,
    /// Outcome operators F_k^(α), (d+1) axes × d outcomes.
    pub(crate) f_ops: Vec<Vec<Operator>>,
    /// POVM effects P_k^(α), (d+1) axes × d outcomes.
    pub(crate) povms: Vec<Vec<Operator>>,
}

impl MumSet {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn axes_label(&self) -> BasisLabel {
        self.axes_label
    }

    /// Number of axes, d+1.
    pub fn axis_count(&self) -> usize {
        self.dim + 1
    }

    /// POVM effect P_k^(α); `axis` runs 1..=d+1, `outcome` 0..=d−1.
    pub fn povm(&self, axis: usize, outcome: usize) -> &Operator {
        &self.povms[axis - 1][outcome]
    }

    pub fn f_op(&self, axis: usize, outcome: usize) -> &Operator {
        &self.f_ops[axis - 1][outcome]
    }

    /// All POVM effects grouped by axis.
    pub fn povm_axes(&self) -> &[Vec<Operator>] {
        &self.povms
    }

    pub fn f_op_axes(&self) -> &[Vec<Operator>] {
        &self.f_ops
    }

    /// (dκ−1)/(d−1), the off-unit weight in the trace relations.
    pub fn trace_contrast(&self) -> f64 {
        let d = self.dim as f64;
        (d * self.kappa - 1.0) / (d - 1.0)
    }

    /// Recover the axis elements F_{α,l} (l = 1..d−1) from the outcome
    /// operators by inverting the two-branch construction.
    pub fn axis_elements(&self) -> Vec<Vec<Operator>> {
        let sqrt_d = (self.dim as f64).sqrt();
        self.f_ops
            .iter()
            .map(|axis| {
                let sum = axis[0].scaled_re(1.0 / (1.0 + sqrt_d));
                (1..self.dim)
                    .map(|k| (&sum - &axis[k]).scaled_re(1.0 / (sqrt_d * (1.0 + sqrt_d))))
                    .collect()
            })
            .collect()
    }
}

/// κ as a function of t.
pub fn kappa_from_t(dim: usize, t: f64) -> f64 {
    let d = dim as f64;
    1.0 / d + (d - 1.0) * t * t * (1.0 + d.sqrt()).powi(2)
}

/// The positive t giving a target κ ∈ (1/d, 1].
pub fn t_from_kappa(dim: usize, kappa: f64) -> Result<f64> {
    let d = dim as f64;
    if !(kappa > 1.0 / d && kappa <= 1.0 + 1e-12) {
        return Err(Error::NotSelfConsistent(format!(
            "kappa = {kappa} outside (1/{dim}, 1]"
        )));
    }
    Ok(((kappa - 1.0 / d) / ((d - 1.0) * (1.0 + d.sqrt()).powi(2))).sqrt())
}

/// Outcome operators F_k^(α) for every axis, k = 0..d−1.
pub fn build_f_operators(basis: &AxisBasis) -> Vec<Vec<Operator>> {
    let d = basis.dim();
    let sqrt_d = (d as f64).sqrt();
    basis
        .axes()
        .iter()
        .map(|axis| {
            let mut sum = Operator::zeros(d);
            for f in axis {
                sum = &sum + f;
            }
            let mut ops = Vec::with_capacity(d);
            ops.push(sum.scaled_re(1.0 + sqrt_d));
            for f in axis {
                ops.push(&sum - &f.scaled_re(sqrt_d * (1.0 + sqrt_d)));
            }
            ops
        })
        .collect()
}

/// The closed interval of t for which every `I/d + t F_k^(α)` is PSD.
///
/// Each eigenvalue μ of each F contributes the constraint `1/d + tμ ≥ 0`,
/// so `t_max = min_{μ<0} −1/(dμ)` and `t_min = max_{μ>0} −1/(dμ)`. A
/// numerically zero F makes the interval unbounded on one side and is
/// reported as `DegenerateBasis`.
pub fn feasible_t_interval(basis: &AxisBasis) -> Result<(f64, f64)> {
    feasible_interval_of_f_ops(&build_f_operators(basis), basis.dim())
}

pub(crate) fn feasible_interval_of_f_ops(
    f_ops: &[Vec<Operator>],
    dim: usize,
) -> Result<(f64, f64)> {
    let tol = Tolerance::default();
    let d = dim as f64;
    let mut t_min = f64::NEG_INFINITY;
    let mut t_max = f64::INFINITY;
    for (a, axis) in f_ops.iter().enumerate() {
        for (k, f) in axis.iter().enumerate() {
            if f.frobenius_norm() <= 1e-12 {
                return Err(Error::DegenerateBasis {
                    axis: a + 1,
                    outcome: k,
                });
            }
            for mu in f.hermitian_eigenvalues(&tol)? {
                if mu > 0.0 {
                    t_min = t_min.max(-1.0 / (d * mu));
                } else if mu < 0.0 {
                    t_max = t_max.min(-1.0 / (d * mu));
                }
            }
        }
    }
    if !t_min.is_finite() || !t_max.is_finite() {
        // Traceless nonzero operators have spectrum on both sides of zero,
        // so reaching this means the basis was degenerate after all.
        return Err(Error::DegenerateBasis { axis: 0, outcome: 0 });
    }
    Ok((t_min, t_max))
}

/// The optimal t (largest |t|, hence largest κ) and the κ it produces.
/// Ties between the two endpoints break toward positive t.
pub fn optimal_t(basis: &AxisBasis) -> Result<(f64, f64)> {
    let (t_min, t_max) = feasible_t_interval(basis)?;
    let t_opt = if -t_min > t_max { t_min } else { t_max };
    Ok((t_opt, kappa_from_t(basis.dim(), t_opt)))
}

/// Build the MUM family at parameter t.
pub fn build_mums(basis: &AxisBasis, t: f64) -> Result<MumSet> {
    if t == 0.0 {
        return Err(Error::TZero);
    }
    let (t_min, t_max) = feasible_t_interval(basis)?;
    if t < t_min - 1e-14 || t > t_max + 1e-14 {
        return Err(Error::TOutOfRange { t, t_min, t_max });
    }
    let d = basis.dim();
    let f_ops = build_f_operators(basis);
    let id_over_d = Operator::identity(d).scaled_re(1.0 / d as f64);
    let povms = f_ops
        .iter()
        .map(|axis| axis.iter().map(|f| &id_over_d + &f.scaled_re(t)).collect())
        .collect();
    Ok(MumSet {
        dim: d,
        t,
        kappa: kappa_from_t(d, t),
        axes_label: basis.label(),
        f_ops,
        povms,
    })
}

/// Maximal deviations of a measurement family from the MUM conditions.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MumVerifyReport {
    /// max |Tr P_k^(α) − 1|.
    pub max_trace_dev: f64,
    /// max deviation of Tr(P_k^(α) P_l^(β)) from the unbiasedness table.
    pub max_table_dev: f64,
    /// max ‖Σ_k P_k^(α) − I‖_F over axes.
    pub max_completeness_dev: f64,
    /// smallest eigenvalue over all effects.
    pub min_eigenvalue: f64,
    pub eq_tol: f64,
    pub psd_tol: f64,
    pub pass: bool,
}

/// Check the trace relations, per-axis completeness, and positivity.
pub fn verify_mum_conditions(m: &MumSet, tol: &Tolerance) -> MumVerifyReport {
    let d = m.dim as f64;
    let contrast = m.trace_contrast();
    let mut max_trace_dev: f64 = 0.0;
    let mut max_table_dev: f64 = 0.0;
    let mut max_completeness_dev: f64 = 0.0;
    let mut min_eigenvalue = f64::INFINITY;

    for axis in m.povm_axes() {
        let mut sum = Operator::zeros(m.dim);
        for p in axis {
            sum = &sum + p;
            max_trace_dev = max_trace_dev.max((p.trace() - C64::new(1.0, 0.0)).norm());
            // Effects are Hermitian by construction up to roundoff; measure
            // the spectrum of the Hermitian part.
            let herm = (p + &p.adjoint()).scaled_re(0.5);
            if let Ok(lo) = herm.min_eigenvalue(tol) {
                min_eigenvalue = min_eigenvalue.min(lo);
            }
        }
        max_completeness_dev =
            max_completeness_dev.max((&sum - &Operator::identity(m.dim)).frobenius_norm());
    }

    for (a, axis_a) in m.povm_axes().iter().enumerate() {
        for (b, axis_b) in m.povm_axes().iter().enumerate() {
            for (k, p) in axis_a.iter().enumerate() {
                for (l, q) in axis_b.iter().enumerate() {
                    let overlap = (p * q).trace().re;
                    let target = if a == b {
                        1.0 / d + contrast * (if k == l { 1.0 } else { 0.0 } - 1.0 / d)
                    } else {
                        1.0 / d
                    };
                    max_table_dev = max_table_dev.max((overlap - target).abs());
                }
            }
        }
    }

    let pass = max_trace_dev <= tol.eq_tol
        && max_table_dev <= tol.eq_tol
        && max_completeness_dev <= tol.eq_tol
        && min_eigenvalue >= -tol.psd_tol;
    MumVerifyReport {
        max_trace_dev,
        max_table_dev,
        max_completeness_dev,
        min_eigenvalue,
        eq_tol: tol.eq_tol,
        psd_tol: tol.psd_tol,
        pass,
    }
}

/// Outcome probabilities Tr(ρ P_k^(α)) for every axis and outcome.
pub fn measurement_probabilities(m: &MumSet, rho: &Operator) -> Result<Vec<Vec<f64>>> {
    if rho.dim() != m.dim {
        return Err(Error::DimMismatch {
            left: m.dim,
            right: rho.dim(),
        });
    }
    Ok(m.povm_axes()
        .iter()
        .map(|axis| axis.iter().map(|p| (rho * p).trace().re).collect())
        .collect())
}

/// Reconstruct a state from its MUM statistics:
/// ρ = I/d + (d−1)/(dκ−1) Σ_{α,k} P_k^(α) (p_{α,k} − 1/d).
pub fn reconstruct_state(
    m: &MumSet,
    probabilities: &[Vec<f64>],
    tol: &Tolerance,
) -> Result<Operator> {
    if probabilities.len() != m.axis_count() {
        return Err(Error::BadProbabilities(format!(
            "expected {} axes of probabilities, got {}",
            m.axis_count(),
            probabilities.len()
        )));
    }
    for (a, row) in probabilities.iter().enumerate() {
        if row.len() != m.dim {
            return Err(Error::BadProbabilities(format!(
                "axis {} has {} outcomes, expected {}",
                a + 1,
                row.len(),
                m.dim
            )));
        }
        let sum: f64 = row.iter().sum();
        if (sum - 1.0).abs() > tol.eq_tol {
            return Err(Error::BadProbabilities(format!(
                "axis {} probabilities sum to {sum}",
                a + 1
            )));
        }
    }
    let d = m.dim as f64;
    let weight = (d - 1.0) / (d * m.kappa - 1.0);
    let mut rho = Operator::identity(m.dim).scaled_re(1.0 / d);
    for (axis, row) in m.povm_axes().iter().zip(probabilities) {
        for (p, &prob) in axis.iter().zip(row) {
            rho = &rho + &p.scaled_re(weight * (prob - 1.0 / d));
        }
    }
    Ok(rho)
}

/// Rebuild a MUM family from eigenvector operators U_{α,k} (k = 1..d−1 per
/// axis) and a target κ, by `P_k^(α) = (I + Σ_l ω^{−kl} U_{α,l})/d`.
///
/// The preconditions are verified and the first violated one is reported in
/// the `NotSelfConsistent` error: the adjoint pairing U_{α,k}† = U_{α,d−k},
/// tracelessness, the orthogonality normalization
/// Tr(U_{α,k} U_{β,l}†) = d(dκ−1)/(d−1) δ_αβ δ_kl, and positivity of the
/// resulting effects.
pub fn mums_from_u_operators(
    u_ops: &[Vec<Operator>],
    kappa: f64,
    tol: &Tolerance,
) -> Result<MumSet> {
    if u_ops.is_empty() || u_ops[0].is_empty() {
        return Err(Error::NotSelfConsistent("empty operator family".into()));
    }
    let dim = u_ops[0][0].dim();
    if u_ops.len() != dim + 1 || u_ops.iter().any(|axis| axis.len() != dim - 1) {
        return Err(Error::NotSelfConsistent(format!(
            "expected {} axes of {} operators for dimension {dim}",
            dim + 1,
            dim - 1
        )));
    }
    let d = dim as f64;
    let t = t_from_kappa(dim, kappa)?;

    for (a, axis) in u_ops.iter().enumerate() {
        for (k, u) in axis.iter().enumerate() {
            if u.dim() != dim {
                return Err(Error::DimMismatch {
                    left: dim,
                    right: u.dim(),
                });
            }
            let partner = &axis[dim - 2 - k]; // U_{α,d−k} at k-index d−k−1
            let dev = u.adjoint().max_abs_diff(partner);
            if dev > tol.eq_tol {
                return Err(Error::NotSelfConsistent(format!(
                    "adjoint pairing fails at axis {}, k = {}: deviation {dev:.3e}",
                    a + 1,
                    k + 1
                )));
            }
            let tr = u.trace().norm();
            if tr > tol.eq_tol {
                return Err(Error::NotSelfConsistent(format!(
                    "operator at axis {}, k = {} has |trace| = {tr:.3e}",
                    a + 1,
                    k + 1
                )));
            }
        }
    }

    let expected_norm = d * (d * kappa - 1.0) / (d - 1.0);
    for (a, axis_a) in u_ops.iter().enumerate() {
        for (k, u) in axis_a.iter().enumerate() {
            for (b, axis_b) in u_ops.iter().enumerate() {
                for (l, v) in axis_b.iter().enumerate() {
                    // Tr(U V†) = conj(Tr(V U†)) = conj(⟨U, V⟩).
                    let overlap = u.frobenius_inner(v)?.conj();
                    let target = if (a, k) == (b, l) {
                        C64::new(expected_norm, 0.0)
                    } else {
                        C64::new(0.0, 0.0)
                    };
                    let dev = (overlap - target).norm();
                    if dev > tol.eq_tol * f64::max(1.0, expected_norm) {
                        return Err(Error::NotSelfConsistent(format!(
                            "normalization fails between (axis {}, k {}) and (axis {}, k {}): deviation {dev:.3e}",
                            a + 1, k + 1, b + 1, l + 1
                        )));
                    }
                }
            }
        }
    }

    let id = Operator::identity(dim);
    let mut povms = Vec::with_capacity(dim + 1);
    for (a, axis) in u_ops.iter().enumerate() {
        let mut effects = Vec::with_capacity(dim);
        for k in 0..dim {
            let mut acc = id.clone();
            for (l, u) in axis.iter().enumerate() {
                // ω^{−k(l+1)} = ω^{k(d−l−1)} for the l-th stored operator.
                acc = &acc + &u.scaled(omega_pow(dim, (k * (dim - l - 1)) % dim));
            }
            let p = acc.scaled_re(1.0 / d);
            let herm = (&p + &p.adjoint()).scaled_re(0.5);
            if !herm.is_psd(tol)? {
                return Err(Error::NotSelfConsistent(format!(
                    "effect (axis {}, outcome {k}) is not positive (min eigenvalue {:.3e})",
                    a + 1,
                    herm.min_eigenvalue(tol)?
                )));
            }
            effects.push(p);
        }
        povms.push(effects);
    }

    let id_over_d = id.scaled_re(1.0 / d);
    let f_ops = povms
        .iter()
        .map(|axis| {
            axis.iter()
                .map(|p| (p - &id_over_d).scaled_re(1.0 / t))
                .collect()
        })
        .collect();
    Ok(MumSet {
        dim,
        t,
        kappa,
        axes_label: BasisLabel::Custom,
        f_ops,
        povms,
    })
}

/// The κ = 1 family of rank-1 projectors onto the Weyl mutually unbiased
/// bases, for prime d.
pub fn weyl_mub_mums(dim: usize) -> Result<MumSet> {
    let family = weyl_mub_u_family(dim)?;
    mums_from_u_operators(&family, 1.0, &Tolerance::default())
}

#[derive(Serialize, Deserialize)]
struct MumSetJson {
    dim: usize,
    t: f64,
    kappa: f64,
    axes_label: BasisLabel,
    povms: Vec<Vec<Operator>>,
}

impl Serialize for MumSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MumSetJson {
            dim: self.dim,
            t: self.t,
            kappa: self.kappa,
            axes_label: self.axes_label,
            povms: self.povms.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MumSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = MumSetJson::deserialize(deserializer)?;
        if raw.t == 0.0 {
            return Err(D::Error::custom("t must be nonzero"));
        }
        if raw.povms.len() != raw.dim + 1
            || raw
                .povms
                .iter()
                .any(|axis| axis.len() != raw.dim || axis.iter().any(|p| p.dim() != raw.dim))
        {
            return Err(D::Error::custom(format!(
                "povms must be {} axes of {} operators of dimension {}",
                raw.dim + 1,
                raw.dim,
                raw.dim
            )));
        }
        let id_over_d = Operator::identity(raw.dim).scaled_re(1.0 / raw.dim as f64);
        let f_ops = raw
            .povms
            .iter()
            .map(|axis| {
                axis.iter()
                    .map(|p| (p - &id_over_d).scaled_re(1.0 / raw.t))
                    .collect()
            })
            .collect();
        Ok(MumSet {
            dim: raw.dim,
            t: raw.t,
            kappa: raw.kappa,
            axes_label: raw.axes_label,
            f_ops,
            povms: raw.povms,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::{gell_mann_basis, gell_mann_diagonal, hw_observable_basis, pauli_axis_basis};
    use crate::operator::pauli_matrices;
    use proptest::prelude::*;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    /// Optimal Gell-Mann parameter t = √2 / (d(√d+1)√(d−1)).
    fn gm_optimal_t(d: usize) -> f64 {
        let df = d as f64;
        2.0_f64.sqrt() / (df * (df.sqrt() + 1.0) * (df - 1.0).sqrt())
    }

    #[test]
    fn f_operators_d2_two_branches() {
        let basis = pauli_axis_basis();
        let f = build_f_operators(&basis);
        let scale = (1.0 + 2.0_f64.sqrt()) / 2.0_f64.sqrt();
        for (axis, sigma) in f.iter().zip(pauli_matrices()) {
            assert!(axis[0].max_abs_diff(&sigma.scaled_re(scale)) < 1e-14);
            assert!(axis[1].max_abs_diff(&sigma.scaled_re(-scale)) < 1e-14);
        }
    }

    #[test]
    fn f_operators_sum_to_zero_per_axis() {
        let basis = gell_mann_basis(3).unwrap();
        for axis in build_f_operators(&basis) {
            let mut sum = Operator::zeros(3);
            for f in &axis {
                sum = &sum + f;
            }
            assert!(sum.frobenius_norm() < 1e-12);
        }
    }

    #[test]
    fn f_operator_diagonal_axis_d3() {
        // F_0 on the diagonal axis is (√3+1)(σ_11 + σ_22).
        let basis = gell_mann_basis(3).unwrap();
        let f = build_f_operators(&basis);
        let expected = (&gell_mann_diagonal(3, 1).unwrap() + &gell_mann_diagonal(3, 2).unwrap())
            .scaled_re(3.0_f64.sqrt() + 1.0);
        assert!(f[3][0].max_abs_diff(&expected) < 1e-13);
    }

    #[test]
    fn pauli_interval_endpoints() {
        let (t_min, t_max) = feasible_t_interval(&pauli_axis_basis()).unwrap();
        let expected_max = 1.0 / (2.0 + 2.0_f64.sqrt());
        let expected_min = -(2.0_f64.sqrt() - 1.0) / 2.0_f64.sqrt();
        assert!((t_max - expected_max).abs() < 1e-12);
        assert!((t_min - expected_min).abs() < 1e-12);
        assert!((t_max + t_min).abs() < 1e-12, "equal magnitudes");
    }

    #[test]
    fn gell_mann_d3_interval_max() {
        let (_, t_max) = feasible_t_interval(&gell_mann_basis(3).unwrap()).unwrap();
        assert!((t_max - gm_optimal_t(3)).abs() < 1e-10);
    }

    #[test]
    fn hw_d3_interval_max() {
        let (_, t_max) = feasible_t_interval(&hw_observable_basis(3).unwrap()).unwrap();
        assert!((t_max - 0.112).abs() < 5e-3);
    }

    #[test]
    fn optimal_t_values() {
        let (t, kappa) = optimal_t(&pauli_axis_basis()).unwrap();
        assert!(t > 0.0);
        assert!((kappa - 1.0).abs() < 1e-12);

        let (t, kappa) = optimal_t(&gell_mann_basis(3).unwrap()).unwrap();
        assert!((t - gm_optimal_t(3)).abs() < 1e-10);
        assert!((kappa - 5.0 / 9.0).abs() < 1e-12);

        let (t, kappa) = optimal_t(&hw_observable_basis(3).unwrap()).unwrap();
        assert!((t - 0.112).abs() < 5e-3);
        assert!((kappa - 0.522).abs() < 5e-3);
    }

    #[test]
    fn pauli_kappa_one_gives_projectors() {
        let t = 1.0 / (2.0 + 2.0_f64.sqrt());
        let m = build_mums(&pauli_axis_basis(), t).unwrap();
        assert!((m.kappa() - 1.0).abs() < 1e-12);
        for axis in m.povm_axes() {
            for p in axis {
                assert!((&(p * p) - p).frobenius_norm() < 1e-10, "P² = P");
            }
        }
    }

    #[test]
    fn gell_mann_d3_optimal_kappa() {
        let m = build_mums(&gell_mann_basis(3).unwrap(), gm_optimal_t(3)).unwrap();
        assert!((m.kappa() - 5.0 / 9.0).abs() < 1e-12);
        let report = verify_mum_conditions(&m, &tol());
        assert!(report.pass, "{report:?}");
    }

    #[test]
    fn build_rejects_zero_and_out_of_range_t() {
        let basis = pauli_axis_basis();
        assert!(matches!(build_mums(&basis, 0.0), Err(Error::TZero)));
        assert!(matches!(
            build_mums(&basis, 0.5),
            Err(Error::TOutOfRange { .. })
        ));
    }

    #[test]
    fn endpoint_touches_zero_eigenvalue() {
        for basis in [pauli_axis_basis(), gell_mann_basis(3).unwrap()] {
            let (_, t_max) = feasible_t_interval(&basis).unwrap();
            let m = build_mums(&basis, t_max).unwrap();
            let report = verify_mum_conditions(&m, &tol());
            assert!(report.min_eigenvalue.abs() < 1e-9, "{}", report.min_eigenvalue);
        }
    }

    #[test]
    fn gell_mann_optimal_effect_is_psd_with_zero_floor() {
        // At the optimal t the first-axis k = 0 effect touches zero exactly.
        let m = build_mums(&gell_mann_basis(3).unwrap(), gm_optimal_t(3)).unwrap();
        let p = m.povm(1, 0);
        assert!(p.is_psd(&tol()).unwrap());
        assert!(p.min_eigenvalue(&tol()).unwrap().abs() < 1e-9);
    }

    #[test]
    fn verify_flags_perturbed_effect() {
        let m0 = build_mums(&gell_mann_basis(3).unwrap(), gm_optimal_t(3)).unwrap();
        let mut m = m0.clone();
        let bump = Operator::ket_bra(3, 0, 0).scaled_re(1e-3);
        m.povms[0][0] = &m.povms[0][0] + &bump;
        let report = verify_mum_conditions(&m, &tol());
        assert!(!report.pass);
        assert!(report.max_trace_dev > 5e-4 && report.max_trace_dev < 2e-3);
    }

    #[test]
    fn kappa_one_table_is_mub_table() {
        let m = weyl_mub_mums(3).unwrap();
        let d = 3.0;
        for (a, axis_a) in m.povm_axes().iter().enumerate() {
            for (b, axis_b) in m.povm_axes().iter().enumerate() {
                for (k, p) in axis_a.iter().enumerate() {
                    for (l, q) in axis_b.iter().enumerate() {
                        let overlap = (p * q).trace().re;
                        let expected = if a == b {
                            if k == l {
                                1.0
                            } else {
                                0.0
                            }
                        } else {
                            1.0 / d
                        };
                        assert!((overlap - expected).abs() < 1e-10);
                    }
                }
            }
        }
    }

    #[test]
    fn reconstruct_uniform_probabilities() {
        let m = build_mums(&gell_mann_basis(3).unwrap(), gm_optimal_t(3)).unwrap();
        let probs = vec![vec![1.0 / 3.0; 3]; 4];
        let rho = reconstruct_state(&m, &probs, &tol()).unwrap();
        assert!(rho.max_abs_diff(&Operator::identity(3).scaled_re(1.0 / 3.0)) < 1e-12);
    }

    #[test]
    fn reconstruct_basis_state() {
        let m = build_mums(&gell_mann_basis(3).unwrap(), gm_optimal_t(3)).unwrap();
        let rho = Operator::ket_bra(3, 0, 0);
        let probs = measurement_probabilities(&m, &rho).unwrap();
        let back = reconstruct_state(&m, &probs, &tol()).unwrap();
        assert!(back.max_abs_diff(&rho) < 1e-10);
    }

    #[test]
    fn reconstruct_rejects_bad_rows() {
        let m = build_mums(&pauli_axis_basis(), 0.1).unwrap();
        let probs = vec![vec![0.7, 0.7], vec![0.5, 0.5], vec![0.5, 0.5]];
        assert!(matches!(
            reconstruct_state(&m, &probs, &tol()),
            Err(Error::BadProbabilities(_))
        ));
    }

    #[test]
    fn weyl_mub_effects_are_projectors() {
        for d in [2usize, 3] {
            let m = weyl_mub_mums(d).unwrap();
            assert!((m.kappa() - 1.0).abs() < 1e-14);
            let report = verify_mum_conditions(&m, &tol());
            assert!(report.pass, "d = {d}: {report:?}");
            for axis in m.povm_axes() {
                for p in axis {
                    assert!((&(p * p) - p).frobenius_norm() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn mums_from_u_rejects_phase_twisted_family() {
        // Twisting an axis by e^{iθ} keeps the pairing and normalization but
        // breaks positivity of the effects.
        let mut family = weyl_mub_u_family(3).unwrap();
        let theta = std::f64::consts::PI / 3.0;
        family[0][0] = family[0][0].scaled(C64::new(theta.cos(), theta.sin()));
        family[0][1] = family[0][0].adjoint();
        let err = mums_from_u_operators(&family, 1.0, &tol()).unwrap_err();
        assert!(matches!(err, Error::NotSelfConsistent(_)));
        assert!(err.to_string().contains("not positive"), "{err}");
    }

    #[test]
    fn mums_from_u_rejects_bad_normalization() {
        let mut family = weyl_mub_u_family(3).unwrap();
        family[1][0] = family[1][0].scaled_re(1.01);
        family[1][1] = family[1][0].adjoint();
        let err = mums_from_u_operators(&family, 1.0, &tol()).unwrap_err();
        assert!(err.to_string().contains("normalization"), "{err}");
    }

    #[test]
    fn mum_set_json_round_trip() {
        let m = build_mums(&gell_mann_basis(3).unwrap(), gm_optimal_t(3)).unwrap();
        let json = serde_json::to_string(&m).unwrap();
        let back: MumSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back.dim(), 3);
        assert!((back.t() - m.t()).abs() < 1e-16);
        for (ax, bx) in m.povm_axes().iter().zip(back.povm_axes()) {
            for (p, q) in ax.iter().zip(bx) {
                assert!(p.max_abs_diff(q) < 1e-15);
            }
        }
        for (ax, bx) in m.f_op_axes().iter().zip(back.f_op_axes()) {
            for (p, q) in ax.iter().zip(bx) {
                assert!(p.max_abs_diff(q) < 1e-10);
            }
        }
    }

    proptest! {
        #[test]
        fn kappa_t_round_trip(d in 2usize..=5, frac in 1e-6..=1.0f64) {
            // κ sweeps (1/d, 1] as frac sweeps (0, 1].
            let kappa = 1.0 / d as f64 + frac * (1.0 - 1.0 / d as f64);
            let t = t_from_kappa(d, kappa).unwrap();
            prop_assert!((kappa_from_t(d, t) - kappa).abs() < 1e-12);
        }
    }
}
