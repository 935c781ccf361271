//! Channel analysis: entanglement breaking, output purity, and the
//! eigenvector census.
//!
//! Entanglement breaking is certified constructively. A channel with
//! λ_α ≥ 0 and Σλ_α ≤ (dκ−1)/(d−1) admits the Holevo measure-and-prepare
//! form with the MUM effects as output states and
//!
//! ```text
//! E_{k,α} = (1 − Σ_β μ_β)/(d(d+1)) · I + μ_α P_k^(α),   μ_α = (d−1)/(dκ−1) λ_α,
//! ```
//!
//! as the measurement POVM. The weaker bound Σλ_α ≤ 1 (with λ ≥ 0) is
//! necessary only; PPT of the Choi matrix serves as an independent
//! cross-check between the two.
//!
//! The maximal output 2-norm is reported three ways — the closed formula
//! ν₂² = [1 + (dκ−1) max_α λ_α²]/d, the direct maximum over the MUM effects
//! as inputs, and a Haar Monte-Carlo maximum over pure inputs — because the
//! maximization domain behind the closed formula is the effect family, which
//! for κ < 1 consists of mixed states: pure inputs can exceed it, and the
//! report flags when they do rather than hiding the gap.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::{u_operators, GeneralizedPauliChannel};
use crate::mum::MumSet;
use crate::operator::Operator;
use crate::sampling;
use crate::{Error, Result, Tolerance};

/// Sufficient entanglement-breaking test: λ_α ≥ 0 and
/// Σλ_α ≤ (dκ−1)/(d−1).
pub fn eb_sufficient(ch: &GeneralizedPauliChannel, tol: &Tolerance) -> bool {
    let sum: f64 = ch.eigenvalues().iter().sum();
    ch.eigenvalues().iter().all(|&l| l >= -tol.eq_tol)
        && sum <= ch.mums().trace_contrast() + tol.eq_tol
}

/// Necessary entanglement-breaking test (the κ = 1 bound): λ_α ≥ 0 and
/// Σλ_α ≤ 1.
pub fn eb_necessary(ch: &GeneralizedPauliChannel, tol: &Tolerance) -> bool {
    let sum: f64 = ch.eigenvalues().iter().sum();
    ch.eigenvalues().iter().all(|&l| l >= -tol.eq_tol) && sum <= 1.0 + tol.eq_tol
}

/// A measure-and-prepare presentation of a channel: output states and the
/// measurement POVM, indexed (axis, outcome).
#[derive(Clone, Debug)]
pub struct HolevoForm {
    pub states: Vec<Vec<Operator>>,
    pub effects: Vec<Vec<Operator>>,
}

impl HolevoForm {
    /// Σ_{α,k} R_{k,α} Tr(X E_{k,α}).
    pub fn apply(&self, x: &Operator) -> Operator {
        let mut out = Operator::zeros(x.dim());
        for (states, effects) in self.states.iter().zip(&self.effects) {
            for (r, e) in states.iter().zip(effects) {
                out = &out + &r.scaled((x * e).trace());
            }
        }
        out
    }

    /// POVM validity: effects sum to the identity and are PSD.
    pub fn povm_valid(&self, tol: &Tolerance) -> bool {
        let dim = self.effects[0][0].dim();
        let mut sum = Operator::zeros(dim);
        let mut min_eig = f64::INFINITY;
        for axis in &self.effects {
            for e in axis {
                sum = &sum + e;
                let herm = (e + &e.adjoint()).scaled_re(0.5);
                match herm.min_eigenvalue(tol) {
                    Ok(lo) => min_eig = min_eig.min(lo),
                    Err(_) => return false,
                }
            }
        }
        (&sum - &Operator::identity(dim)).frobenius_norm() <= tol.eq_tol && min_eig >= -tol.psd_tol
    }
}

/// The Holevo form of a channel in the sufficient entanglement-breaking
/// regime; errors with `NotSufficientRegime` outside it.
pub fn holevo_form(ch: &GeneralizedPauliChannel, tol: &Tolerance) -> Result<HolevoForm> {
    if !eb_sufficient(ch, tol) {
        return Err(Error::NotSufficientRegime {
            sum_lambda: ch.eigenvalues().iter().sum(),
            threshold: ch.mums().trace_contrast(),
        });
    }
    let m = ch.mums();
    let d = m.dim() as f64;
    let mu = ch.mu_weights();
    let mu_sum: f64 = mu.iter().sum();
    let base = Operator::identity(m.dim()).scaled_re((1.0 - mu_sum) / (d * (d + 1.0)));
    let effects = m
        .povm_axes()
        .iter()
        .zip(&mu)
        .map(|(axis, &w)| axis.iter().map(|p| &base + &p.scaled_re(w)).collect())
        .collect();
    Ok(HolevoForm {
        states: m.povm_axes().to_vec(),
        effects,
    })
}

/// PPT of the Choi matrix: a necessary condition for entanglement breaking,
/// defined for completely positive channels only.
pub fn ppt_check(ch: &GeneralizedPauliChannel, tol: &Tolerance) -> Result<bool> {
    let verdict = ch.is_completely_positive(tol);
    if !verdict.is_cp {
        return Err(Error::NotCP {
            min_choi_eigenvalue: verdict.choi_min_eigenvalue,
        });
    }
    let pt = ch.choi_matrix().partial_transpose();
    let herm = (&pt + &pt.adjoint()).scaled_re(0.5);
    Ok(herm.min_eigenvalue(tol)? >= -tol.psd_tol)
}

/// Closed-form maximal output 2-norm: ν₂ = √([1 + (dκ−1) max_α λ_α²]/d).
pub fn nu2_formula(ch: &GeneralizedPauliChannel) -> f64 {
    let d = ch.dim() as f64;
    let max_sq = ch
        .eigenvalues()
        .iter()
        .map(|l| l * l)
        .fold(0.0, f64::max);
    ((1.0 + (d * ch.kappa() - 1.0) * max_sq) / d).sqrt()
}

/// Direct maximum of ‖Λ[ρ]‖₂ over the MUM effects as inputs.
pub fn nu2_restricted(ch: &GeneralizedPauliChannel) -> f64 {
    ch.mums()
        .povm_axes()
        .iter()
        .flatten()
        .map(|p| ch.apply(p).expect("dims match").frobenius_norm())
        .fold(0.0, f64::max)
}

/// Monte-Carlo maximum of ‖Λ[ψ]‖₂ over seeded Haar-random pure inputs.
///
/// Sample `i` draws from the ChaCha stream (seed, i), so the result does not
/// depend on how the range is split across worker threads and extending the
/// sample count never changes earlier samples.
pub fn nu2_pure_mc(ch: &GeneralizedPauliChannel, samples: usize, seed: u64) -> f64 {
    (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = sampling::stream_rng(seed, i);
            let psi = sampling::haar_pure_state(ch.dim(), &mut rng);
            ch.apply(&psi).expect("dims match").frobenius_norm()
        })
        .reduce(|| 0.0, f64::max)
}

/// Strong multiplicativity of ν₂ holds iff the closed form equals
/// [1 + (d−1) max_α λ_α²]/d, which for a nonzero spectrum pins κ = 1.
pub fn multiplicativity_check(ch: &GeneralizedPauliChannel, tol: &Tolerance) -> bool {
    let d = ch.dim() as f64;
    let max_sq = ch
        .eigenvalues()
        .iter()
        .map(|l| l * l)
        .fold(0.0, f64::max);
    let nu_sq = nu2_formula(ch).powi(2);
    (nu_sq - (1.0 + (d - 1.0) * max_sq) / d).abs() <= tol.eq_tol
}

/// One eigenvector operator that rescales to a unitary.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct UnitaryProportionalEntry {
    pub axis: usize,
    pub k: usize,
    pub scale: f64,
    /// Weyl index (k, l) when the operator is proportional (by a complex
    /// scalar) to W_{kl}.
    pub weyl_index: Option<(usize, usize)>,
}

/// Which eigenvector operators are unitary up to scale, and which pairs
/// commute.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CensusReport {
    pub unitary_proportional: Vec<UnitaryProportionalEntry>,
    /// Unordered pairs ((axis, k), (axis', k')) with vanishing commutator.
    pub commuting_pairs: Vec<((usize, usize), (usize, usize))>,
}

/// Classify the eigenvector operators of a MUM family.
///
/// Commutation uses the scale-free test ‖[A,B]‖_F ≤ eq_tol·‖A‖_F‖B‖_F.
pub fn eigenvector_census(m: &MumSet, tol: &Tolerance) -> CensusReport {
    let us = u_operators(m);
    let weyls: Vec<(usize, usize, Operator)> = (0..m.dim())
        .flat_map(|k| {
            (0..m.dim()).map(move |l| (k, l))
        })
        .map(|(k, l)| {
            (
                k,
                l,
                crate::bases::weyl_operator(m.dim(), k, l).expect("dim >= 2"),
            )
        })
        .collect();

    let mut unitary_proportional = Vec::new();
    for (axis, k, u) in us.iter() {
        if let Ok(Some(scale)) = u.proportional_to_unitary(tol) {
            let weyl_index = weyls
                .iter()
                .find(|(_, _, w)| u.proportional_to(w, tol).is_some())
                .map(|&(wk, wl, _)| (wk, wl));
            unitary_proportional.push(UnitaryProportionalEntry {
                axis,
                k,
                scale,
                weyl_index,
            });
        }
    }

    let flat: Vec<(usize, usize, &Operator)> = us.iter().collect();
    let mut commuting_pairs = Vec::new();
    for i in 0..flat.len() {
        for j in (i + 1)..flat.len() {
            let (a, b) = (flat[i].2, flat[j].2);
            let bound = tol.eq_tol * a.frobenius_norm() * b.frobenius_norm();
            if a.commutator_norm(b) <= bound {
                commuting_pairs.push(((flat[i].0, flat[i].1), (flat[j].0, flat[j].1)));
            }
        }
    }

    CensusReport {
        unitary_proportional,
        commuting_pairs,
    }
}

/// Entanglement-breaking verdicts for one channel.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EbReport {
    pub sum_lambda: f64,
    /// λ ≥ 0 and Σλ ≤ 1 — necessary for entanglement breaking.
    pub necessary_pass: bool,
    /// λ ≥ 0 and Σλ ≤ (dκ−1)/(d−1) — sufficient.
    pub sufficient_pass: bool,
    /// In the sufficient regime: the Holevo POVM is valid and reproduces the
    /// channel on a spanning set.
    pub holevo_povm_valid: Option<bool>,
    /// Choi matrix is PSD and stays PSD under partial transposition.
    pub ppt_pass: bool,
}

/// Build the entanglement-breaking report.
pub fn eb_report(ch: &GeneralizedPauliChannel, tol: &Tolerance) -> EbReport {
    let sum_lambda = ch.eigenvalues().iter().sum();
    let sufficient = eb_sufficient(ch, tol);
    let holevo_povm_valid = if sufficient {
        let form = holevo_form(ch, tol).expect("inside sufficient regime");
        let mut ok = form.povm_valid(tol);
        if ok {
            let d = ch.dim();
            'outer: for i in 0..d {
                for j in 0..d {
                    let x = Operator::ket_bra(d, i, j);
                    let dev = form
                        .apply(&x)
                        .max_abs_diff(&ch.apply(&x).expect("dims match"));
                    if dev > tol.eq_tol {
                        ok = false;
                        break 'outer;
                    }
                }
            }
        }
        Some(ok)
    } else {
        None
    };
    let ppt_pass = ppt_check(ch, tol).unwrap_or(false);
    EbReport {
        sum_lambda,
        necessary_pass: eb_necessary(ch, tol),
        sufficient_pass: sufficient,
        holevo_povm_valid,
        ppt_pass,
    }
}

/// Maximal output 2-norm, three ways.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Nu2Report {
    pub formula_value: f64,
    pub restricted_max: f64,
    pub mc_pure_max: f64,
    pub mc_samples: usize,
    pub seed: u64,
    pub multiplicativity_pass: bool,
    /// Set when the pure-state Monte-Carlo maximum exceeds the closed
    /// formula, which happens for κ < 1.
    pub mc_exceeds_formula: bool,
}

/// Build the output-purity report.
pub fn nu2_report(
    ch: &GeneralizedPauliChannel,
    mc_samples: usize,
    seed: u64,
    tol: &Tolerance,
) -> Nu2Report {
    let formula_value = nu2_formula(ch);
    let mc_pure_max = nu2_pure_mc(ch, mc_samples, seed);
    Nu2Report {
        formula_value,
        restricted_max: nu2_restricted(ch),
        mc_pure_max,
        mc_samples,
        seed,
        multiplicativity_pass: multiplicativity_check(ch, tol),
        mc_exceeds_formula: mc_pure_max > formula_value + 1e-9,
    }
}

/// Everything `analyze` reports for one channel.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub eb: EbReport,
    pub nu2: Nu2Report,
    pub census: CensusReport,
}

/// Full analysis of a channel: entanglement breaking, output purity, and the
/// eigenvector census of its MUM family.
pub fn analyze(
    ch: &GeneralizedPauliChannel,
    mc_samples: usize,
    seed: u64,
    tol: &Tolerance,
) -> AnalysisReport {
    AnalysisReport {
        eb: eb_report(ch, tol),
        nu2: nu2_report(ch, mc_samples, seed, tol),
        census: eigenvector_census(ch.mums(), tol),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::{gell_mann_basis, hw_observable_basis, pauli_axis_basis};
    use crate::mum::{build_mums, optimal_t, weyl_mub_mums};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn gm3() -> MumSet {
        let basis = gell_mann_basis(3).unwrap();
        let (t, _) = optimal_t(&basis).unwrap();
        build_mums(&basis, t).unwrap()
    }

    fn hw3() -> MumSet {
        let basis = hw_observable_basis(3).unwrap();
        let (t, _) = optimal_t(&basis).unwrap();
        build_mums(&basis, t).unwrap()
    }

    fn channel_from_lambda(m: MumSet, lambda: Vec<f64>) -> GeneralizedPauliChannel {
        GeneralizedPauliChannel::from_eigenvalues(m, lambda).unwrap()
    }

    #[test]
    fn eb_sufficient_examples() {
        let depol = channel_from_lambda(gm3(), vec![0.0; 4]);
        assert!(eb_sufficient(&depol, &tol()));

        let identity = channel_from_lambda(gm3(), vec![1.0; 4]);
        assert!(!eb_sufficient(&identity, &tol()));

        // At κ = 1 the threshold is exactly the necessary bound Σλ ≤ 1.
        let m = weyl_mub_mums(3).unwrap();
        assert!((m.trace_contrast() - 1.0).abs() < 1e-14);
        let just_in = channel_from_lambda(m.clone(), vec![0.25; 4]);
        assert!(eb_sufficient(&just_in, &tol()));
        let just_out = channel_from_lambda(m, vec![0.26; 4]);
        assert!(!eb_sufficient(&just_out, &tol()));
    }

    #[test]
    fn holevo_form_of_depolarizing() {
        let depol = channel_from_lambda(gm3(), vec![0.0; 4]);
        let form = holevo_form(&depol, &tol()).unwrap();
        let expected = Operator::identity(3).scaled_re(1.0 / 12.0);
        for axis in &form.effects {
            for e in axis {
                assert!(e.max_abs_diff(&expected) < 1e-14);
            }
        }
        assert!(form.povm_valid(&tol()));
        let x = Operator::ket_bra(3, 0, 2);
        assert!(form
            .apply(&x)
            .max_abs_diff(&depol.apply(&x).unwrap())
            < 1e-12);
    }

    #[test]
    fn holevo_form_at_boundary() {
        // Uniform eigenvalues saturating Σλ = (dκ−1)/(d−1).
        let m = gm3();
        let lambda = vec![m.trace_contrast() / 4.0; 4];
        let ch = channel_from_lambda(m, lambda);
        let form = holevo_form(&ch, &tol()).unwrap();
        assert!(form.povm_valid(&tol()));
        let mut sum = Operator::zeros(3);
        for axis in &form.effects {
            for e in axis {
                sum = &sum + e;
            }
        }
        assert!((&sum - &Operator::identity(3)).frobenius_norm() < 1e-12);
    }

    #[test]
    fn holevo_reconstruction_inside_region() {
        let m = gm3();
        let bound = m.trace_contrast();
        for s in 0..10 {
            let mut rng = sampling::stream_rng(41, s);
            let lambda = sampling::random_nonnegative_capped(4, bound, &mut rng);
            let ch = channel_from_lambda(m.clone(), lambda);
            let form = holevo_form(&ch, &tol()).unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    let x = Operator::ket_bra(3, i, j);
                    assert!(
                        form.apply(&x).max_abs_diff(&ch.apply(&x).unwrap()) < 1e-10
                    );
                }
            }
        }
    }

    #[test]
    fn holevo_rejects_outside_region() {
        let identity = channel_from_lambda(gm3(), vec![1.0; 4]);
        assert!(matches!(
            holevo_form(&identity, &tol()),
            Err(Error::NotSufficientRegime { .. })
        ));
    }

    #[test]
    fn ppt_examples() {
        let m = weyl_mub_mums(2).unwrap();
        let identity = channel_from_lambda(m.clone(), vec![1.0; 3]);
        assert!(!ppt_check(&identity, &tol()).unwrap(), "maximally entangled Choi");

        let depol = channel_from_lambda(m.clone(), vec![0.0; 3]);
        assert!(ppt_check(&depol, &tol()).unwrap());

        let non_cp = channel_from_lambda(m, vec![-1.0; 3]);
        assert!(matches!(ppt_check(&non_cp, &tol()), Err(Error::NotCP { .. })));
    }

    #[test]
    fn nu2_formula_examples() {
        let m2 = weyl_mub_mums(2).unwrap();
        let identity = channel_from_lambda(m2.clone(), vec![1.0; 3]);
        assert!((nu2_formula(&identity) - 1.0).abs() < 1e-12);

        let depol = channel_from_lambda(m2, vec![0.0; 3]);
        assert!((nu2_formula(&depol) - 1.0 / 2.0_f64.sqrt()).abs() < 1e-12);

        let ch = channel_from_lambda(gm3(), vec![1.0, 0.0, 0.0, 0.0]);
        assert!((nu2_formula(&ch).powi(2) - 5.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn nu2_restricted_matches_formula() {
        for s in 0..10 {
            let mut rng = sampling::stream_rng(43, s);
            let lambda = sampling::random_vector_in_box(4, -0.5, 1.0, &mut rng);
            let ch = channel_from_lambda(gm3(), lambda);
            assert!((nu2_restricted(&ch) - nu2_formula(&ch)).abs() < 1e-12);
        }
    }

    #[test]
    fn output_purity_proof_identity() {
        // Σ_k (Tr P_k^(α) P_l^(β))² = [1 + (dκ−1)²/(d−1) δ_αβ]/d.
        for m in [gm3(), hw3()] {
            let d = m.dim() as f64;
            let kappa = m.kappa();
            for (a, axis_a) in m.povm_axes().iter().enumerate() {
                for (b, axis_b) in m.povm_axes().iter().enumerate() {
                    for q in axis_b {
                        let sum: f64 = axis_a
                            .iter()
                            .map(|p| (p * q).trace().re.powi(2))
                            .sum();
                        let expected = (1.0
                            + if a == b {
                                (d * kappa - 1.0).powi(2) / (d - 1.0)
                            } else {
                                0.0
                            })
                            / d;
                        assert!((sum - expected).abs() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn nu2_mc_fixed_points() {
        let m2 = weyl_mub_mums(2).unwrap();
        let depol = channel_from_lambda(m2.clone(), vec![0.0; 3]);
        let v = nu2_pure_mc(&depol, 64, 0);
        assert!((v - 1.0 / 2.0_f64.sqrt()).abs() < 1e-12);

        let identity = channel_from_lambda(m2, vec![1.0; 3]);
        let v = nu2_pure_mc(&identity, 64, 0);
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn nu2_values_stay_in_the_purity_range() {
        // For spectra inside [−1, 1] every reported value sits between the
        // maximally mixed output norm 1/√d and 1.
        for s in 0..20 {
            let mut rng = sampling::stream_rng(47, s);
            let lambda = sampling::random_vector_in_box(4, -1.0, 1.0, &mut rng);
            let ch = channel_from_lambda(gm3(), lambda);
            let lo = 1.0 / 3.0_f64.sqrt() - 1e-12;
            for v in [nu2_formula(&ch), nu2_restricted(&ch), nu2_pure_mc(&ch, 50, s)] {
                assert!(v >= lo && v <= 1.0 + 1e-12, "{v}");
            }
        }
    }

    #[test]
    fn nu2_mc_is_deterministic() {
        let ch = channel_from_lambda(gm3(), vec![0.5, 0.1, 0.0, 0.2]);
        let a = nu2_pure_mc(&ch, 500, 7);
        let b = nu2_pure_mc(&ch, 500, 7);
        assert_eq!(a, b);
        // Extending the sample count never lowers the running maximum.
        let c = nu2_pure_mc(&ch, 1000, 7);
        assert!(c >= a);
    }

    #[test]
    fn multiplicativity_examples() {
        let m = weyl_mub_mums(3).unwrap();
        let ch = channel_from_lambda(m, vec![0.7, -0.1, 0.3, 0.1]);
        assert!(multiplicativity_check(&ch, &tol()));

        let ch = channel_from_lambda(gm3(), vec![1.0, 0.0, 0.0, 0.0]);
        assert!(!multiplicativity_check(&ch, &tol()));

        // Degenerate spectrum: both sides are 1/d regardless of κ.
        let ch = channel_from_lambda(gm3(), vec![0.0; 4]);
        assert!(multiplicativity_check(&ch, &tol()));
    }

    #[test]
    fn census_gell_mann_d3() {
        let report = eigenvector_census(&gm3(), &tol());
        let found: Vec<(usize, usize)> = report
            .unitary_proportional
            .iter()
            .map(|e| (e.axis, e.k))
            .collect();
        assert_eq!(found, vec![(4, 1), (4, 2)]);
        assert_eq!(report.commuting_pairs, vec![((4, 1), (4, 2))]);
    }

    #[test]
    fn census_heisenberg_weyl_d3() {
        // Axes 1 and 4 are quadrature pairs of single Weyl pair-spaces, so
        // their eigenvector operators rescale to Weyl unitaries; the two
        // mixed axes give genuinely non-unitary eigenvectors.
        let report = eigenvector_census(&hw3(), &tol());
        type Row = (usize, usize, Option<(usize, usize)>);
        let found: Vec<Row> = report
            .unitary_proportional
            .iter()
            .map(|e| (e.axis, e.k, e.weyl_index))
            .collect();
        assert_eq!(
            found,
            vec![
                (1, 1, Some((1, 0))),
                (1, 2, Some((2, 0))),
                (4, 1, Some((2, 2))),
                (4, 2, Some((1, 1))),
            ]
        );
        assert_eq!(
            report.commuting_pairs,
            vec![((1, 1), (1, 2)), ((4, 1), (4, 2))]
        );
    }

    #[test]
    fn census_qubit_family_is_all_unitary() {
        let m = build_mums(&pauli_axis_basis(), 0.2).unwrap();
        let report = eigenvector_census(&m, &tol());
        assert_eq!(report.unitary_proportional.len(), 3);
        assert!(report.commuting_pairs.is_empty());
    }

    #[test]
    fn eb_report_flags() {
        let depol = channel_from_lambda(gm3(), vec![0.0; 4]);
        let report = eb_report(&depol, &tol());
        assert!(report.necessary_pass && report.sufficient_pass);
        assert_eq!(report.holevo_povm_valid, Some(true));
        assert!(report.ppt_pass);

        let identity = channel_from_lambda(gm3(), vec![1.0; 4]);
        let report = eb_report(&identity, &tol());
        assert!(!report.necessary_pass && !report.sufficient_pass);
        assert_eq!(report.holevo_povm_valid, None);
        assert!(!report.ppt_pass);
    }
}
