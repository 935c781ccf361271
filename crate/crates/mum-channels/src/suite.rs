//! The reference verification suite behind `paper-suite`.
//!
//! Each criterion pins one published quantity or identity — optimal
//! parameters, explicit eigenvector matrices, trace tables, CP logic,
//! entanglement-breaking certification, output purity — to a tolerance fixed
//! here, and reports pass/fail with the worst observed deviation. The whole
//! suite is seeded and deterministic.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{
    eigenvector_census, holevo_form, multiplicativity_check, nu2_formula, nu2_pure_mc,
    nu2_restricted, ppt_check,
};
use crate::bases::{gell_mann_basis, hw_observable_basis, pauli_axis_basis};
use crate::channel::{fujiwara_algoet_check, u_operators, GeneralizedPauliChannel};
use crate::mum::{
    build_mums, feasible_t_interval, kappa_from_t, mums_from_u_operators, optimal_t,
    verify_mum_conditions, weyl_mub_mums, MumSet,
};
use crate::operator::{Operator, C64};
use crate::sampling;
use crate::Tolerance;

/// Outcome of one criterion.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

/// Test hooks: deliberate perturbations used to prove the suite actually
/// fails when a pinned constant moves.
#[derive(Clone, Copy, Debug)]
pub enum Fault {
    /// Offset added to the reference optimal κ of the Gell-Mann family.
    OffsetGellMannKappaReference(f64),
}

/// Suite configuration; `Default` gives the reproducible reference run.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Sample count for the pure-state Monte-Carlo oracle (criterion 15).
    pub nu2_mc_samples: usize,
    pub fault: Option<Fault>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            nu2_mc_samples: 100_000,
            fault: None,
        }
    }
}

/// The measurement families every sweep runs over.
struct RefSets {
    named: Vec<(&'static str, MumSet)>,
}

impl RefSets {
    fn build() -> Self {
        let mut named = Vec::new();
        let pauli = pauli_axis_basis();
        let (t, _) = optimal_t(&pauli).expect("pauli interval");
        named.push(("pauli-d2", build_mums(&pauli, t).expect("pauli mums")));
        for d in [3usize, 4, 5] {
            let basis = gell_mann_basis(d).expect("gell-mann basis");
            let (t, _) = optimal_t(&basis).expect("gell-mann interval");
            let name: &'static str = match d {
                3 => "gell-mann-d3",
                4 => "gell-mann-d4",
                _ => "gell-mann-d5",
            };
            named.push((name, build_mums(&basis, t).expect("gell-mann mums")));
        }
        let hw = hw_observable_basis(3).expect("hw basis");
        let (t, _) = optimal_t(&hw).expect("hw interval");
        named.push(("heisenberg-weyl-d3", build_mums(&hw, t).expect("hw mums")));
        named.push(("weyl-mub-d2", weyl_mub_mums(2).expect("weyl mub d2")));
        named.push(("weyl-mub-d3", weyl_mub_mums(3).expect("weyl mub d3")));
        RefSets { named }
    }

    fn get(&self, name: &str) -> &MumSet {
        &self
            .named
            .iter()
            .find(|(n, _)| *n == name)
            .expect("known set name")
            .1
    }

    fn projective(&self) -> impl Iterator<Item = &(&'static str, MumSet)> {
        self.named
            .iter()
            .filter(|(_, m)| (m.kappa() - 1.0).abs() < 1e-12)
    }

    fn nonprojective(&self) -> impl Iterator<Item = &(&'static str, MumSet)> {
        self.named
            .iter()
            .filter(|(_, m)| (m.kappa() - 1.0).abs() >= 1e-12)
    }
}

/// Run all fifteen criteria.
pub fn run_all(cfg: &SuiteConfig) -> Vec<CriterionResult> {
    let sets = RefSets::build();
    vec![
        c01_gell_mann_optimum(cfg),
        c02_heisenberg_weyl_optimum(),
        c03_qubit_feasibility_interval(),
        c04_mum_invariants(&sets),
        c05_state_reconstruction(cfg, &sets),
        c06_u_matrix_regression(&sets),
        c07_spectral_identity(cfg, &sets),
        c08_cp_logic(cfg, &sets),
        c09_composition_identities(&sets),
        c10_holevo_certification(cfg, &sets),
        c11_output_2norm_identity(cfg, &sets),
        c12_multiplicativity(cfg, &sets),
        c13_eigenvector_census(&sets),
        c14_u_operator_round_trip(&sets),
        c15_nu2_oracle_convergence(cfg),
    ]
}

fn result(id: usize, name: &'static str, pass: bool, detail: String) -> CriterionResult {
    CriterionResult {
        id,
        name,
        pass,
        detail,
    }
}

fn c01_gell_mann_optimum(cfg: &SuiteConfig) -> CriterionResult {
    let offset = match cfg.fault {
        Some(Fault::OffsetGellMannKappaReference(x)) => x,
        None => 0.0,
    };
    let mut worst: f64 = 0.0;
    let mut pass = true;
    for d in [3usize, 4, 5] {
        let df = d as f64;
        let basis = gell_mann_basis(d).expect("basis");
        let (t, kappa) = optimal_t(&basis).expect("interval");
        let t_ref = 2.0_f64.sqrt() / (df * (df.sqrt() + 1.0) * (df - 1.0).sqrt());
        let kappa_ref = (df + 2.0) / (df * df) + offset;
        let dev = (t - t_ref).abs().max((kappa - kappa_ref).abs());
        worst = worst.max(dev);
        pass &= dev <= 1e-10;
    }
    result(
        1,
        "gell-mann-optimum",
        pass,
        format!("d=3,4,5: max |t−t_ref|, |κ−(d+2)/d²| = {worst:.3e} (tol 1e-10)"),
    )
}

fn c02_heisenberg_weyl_optimum() -> CriterionResult {
    let basis = hw_observable_basis(3).expect("basis");
    let (t, kappa) = optimal_t(&basis).expect("interval");
    let dt = (t - 0.112).abs();
    let dk = (kappa - 0.522).abs();
    let below_gm = kappa < 5.0 / 9.0;
    let pass = dt <= 5e-3 && dk <= 5e-3 && below_gm;
    result(
        2,
        "heisenberg-weyl-optimum",
        pass,
        format!(
            "t = {t:.6} (|Δ| = {dt:.2e}), κ = {kappa:.6} (|Δ| = {dk:.2e}), κ < 5/9: {below_gm} (tol 5e-3)"
        ),
    )
}

fn c03_qubit_feasibility_interval() -> CriterionResult {
    let (t_min, t_max) = feasible_t_interval(&pauli_axis_basis()).expect("interval");
    let max_ref = 1.0 / (2.0 + 2.0_f64.sqrt());
    let min_ref = -(2.0_f64.sqrt() - 1.0) / 2.0_f64.sqrt();
    let kappa_dev = (kappa_from_t(2, t_max) - 1.0).abs();
    let dev = (t_max - max_ref)
        .abs()
        .max((t_min - min_ref).abs())
        .max(kappa_dev);
    result(
        3,
        "qubit-feasibility-interval",
        dev <= 1e-12,
        format!("endpoint and κ(t_max)=1 deviations ≤ {dev:.3e} (tol 1e-12)"),
    )
}

fn c04_mum_invariants(sets: &RefSets) -> CriterionResult {
    let tol = Tolerance {
        eq_tol: 1e-10,
        psd_tol: 1e-10,
    };
    let mut pass = true;
    let mut details = Vec::new();
    for (name, m) in &sets.named {
        let report = verify_mum_conditions(m, &tol);
        let mut set_pass = report.pass;
        // At κ = 1 the trace table must equal the projective (MUB) values.
        if (m.kappa() - 1.0).abs() < 1e-12 {
            let d = m.dim() as f64;
            let mut mub_dev: f64 = 0.0;
            for (a, axis_a) in m.povm_axes().iter().enumerate() {
                for (b, axis_b) in m.povm_axes().iter().enumerate() {
                    for (k, p) in axis_a.iter().enumerate() {
                        for (l, q) in axis_b.iter().enumerate() {
                            let target = if a == b {
                                if k == l {
                                    1.0
                                } else {
                                    0.0
                                }
                            } else {
                                1.0 / d
                            };
                            mub_dev = mub_dev.max(((p * q).trace().re - target).abs());
                        }
                    }
                }
            }
            set_pass &= mub_dev <= 1e-10;
        }
        if !set_pass {
            details.push(format!("{name}: {report:?}"));
        }
        pass &= set_pass;
    }
    let detail = if pass {
        format!("{} families: trace table, completeness, positivity within 1e-10", sets.named.len())
    } else {
        details.join("; ")
    };
    result(4, "mum-invariants", pass, detail)
}

fn c05_state_reconstruction(cfg: &SuiteConfig, sets: &RefSets) -> CriterionResult {
    let tol = Tolerance::default();
    let mut worst: f64 = 0.0;
    for (set_idx, (_, m)) in sets.named.iter().enumerate() {
        for s in 0..20u64 {
            let mut rng = sampling::stream_rng(cfg.seed, (set_idx as u64) << 32 | s);
            let rho = sampling::haar_pure_state(m.dim(), &mut rng);
            let probs = crate::mum::measurement_probabilities(m, &rho).expect("dims");
            let back = crate::mum::reconstruct_state(m, &probs, &tol).expect("valid stats");
            worst = worst.max(back.max_abs_diff(&rho));
        }
    }
    result(
        5,
        "state-reconstruction",
        worst <= 1e-10,
        format!("20 Haar states per family: max round-trip deviation {worst:.3e} (tol 1e-10)"),
    )
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Reference eigenvector matrices of the optimal Gell-Mann family in d = 3,
/// entered entry by entry from their tabulated form. Two corrections are
/// pinned by the family algebra itself (and recorded in the verification
/// notes): the tabulation orders the third axis as (k = 2, k = 1), so its
/// listed matrix is U_{3,2} = U_{3,1}†, and the diagonal-axis prefactor must
/// be √3·t/√2 rather than √3·t for the normalization
/// Tr(U U†) = d(dκ−1)/(d−1) to hold.
fn gm_reference_us(t: f64) -> [Operator; 4] {
    let s3 = 3.0_f64.sqrt();
    let off = 3.0 / (2.0 * 2.0_f64.sqrt()) * (1.0 + s3) * t;
    let m1 = Operator::from_entries(&[
        vec![c(0.0, 0.0), c(-1.0, -1.0), c(1.0, -1.0)],
        vec![c(1.0, 1.0), c(0.0, 0.0), c(0.0, 0.0)],
        vec![c(-1.0, 1.0), c(0.0, 0.0), c(0.0, 0.0)],
    ])
    .unwrap()
    .scaled_re(off);
    let m2 = Operator::from_entries(&[
        vec![c(0.0, 0.0), c(1.0, -1.0), c(0.0, 0.0)],
        vec![c(1.0, -1.0), c(0.0, 0.0), c(1.0, -1.0)],
        vec![c(0.0, 0.0), c(-1.0, 1.0), c(0.0, 0.0)],
    ])
    .unwrap()
    .scaled_re(off);
    let m3 = Operator::from_entries(&[
        vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 1.0)],
        vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, -1.0)],
        vec![c(1.0, 1.0), c(1.0, -1.0), c(0.0, 0.0)],
    ])
    .unwrap()
    .scaled_re(off);
    // diag(2+√3−i, i(2+√3+i), −(1+i)(1+√3)) · √3·t/√2.
    let m4 = Operator::from_diagonal(&[
        c(2.0 + s3, -1.0),
        c(-1.0, 2.0 + s3),
        c(-(1.0 + s3), -(1.0 + s3)),
    ])
    .scaled_re(s3 * t / 2.0_f64.sqrt());
    [m1, m2, m3, m4]
}

/// Reference eigenvector matrices of the optimal Heisenberg-Weyl family in
/// d = 3, entered entry by entry from their tabulated form (ω = e^{2πi/3}).
fn hw_reference_us(t: f64) -> [Operator; 4] {
    let s3 = 3.0_f64.sqrt();
    let w = crate::bases::omega_pow(3, 1);
    let w2 = crate::bases::omega_pow(3, 2);
    let i = C64::i();
    let zero = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let n1 = Operator::from_diagonal(&[one, w, w2]).scaled_re(s3 * (1.0 + s3) * t);
    let half = s3 / 2.0 * (1.0 + s3) * t;
    let n2 = Operator::from_entries(&[
        vec![zero, i * w2 * (s3 - 1.0), w * (2.0 * i - w)],
        vec![-w2 * (one + i), zero, -i * w2],
        vec![-i * (w2 + s3), -(w2 + i), zero],
    ])
    .unwrap()
    .scaled_re(half);
    let n3 = Operator::from_entries(&[
        vec![zero, -w2, i * (s3 - 1.0) * w2],
        vec![-i * (w2 + s3), zero, -(w2 + s3)],
        vec![(s3 - 1.0) * w2, -i * w2, zero],
    ])
    .unwrap()
    .scaled_re(half);
    let n4 = Operator::from_entries(&[
        vec![zero, -w, s3 * w],
        vec![s3 * w2, zero, -one],
        vec![-w2, c(s3, 0.0), zero],
    ])
    .unwrap()
    .scaled_re(half);
    [n1, n2, n3, n4]
}

fn c06_u_matrix_regression(sets: &RefSets) -> CriterionResult {
    let mut gm_worst: f64 = 0.0;

    let gm = sets.get("gell-mann-d3");
    let us = u_operators(gm);
    let [m1, m2, m3, m4] = gm_reference_us(gm.t());
    gm_worst = gm_worst.max(us.get(1, 1).max_abs_diff(&m1));
    gm_worst = gm_worst.max(us.get(1, 2).max_abs_diff(&m1.adjoint()));
    gm_worst = gm_worst.max(us.get(2, 1).max_abs_diff(&m2));
    gm_worst = gm_worst.max(us.get(2, 2).max_abs_diff(&m2.adjoint()));
    // Third axis: the tabulated matrix is the k = 2 member.
    gm_worst = gm_worst.max(us.get(3, 2).max_abs_diff(&m3));
    gm_worst = gm_worst.max(us.get(3, 1).max_abs_diff(&m3.adjoint()));
    gm_worst = gm_worst.max(us.get(4, 1).max_abs_diff(&m4));
    gm_worst = gm_worst.max(us.get(4, 2).max_abs_diff(&m4.adjoint()));

    // The Heisenberg-Weyl tabulation is compared verbatim. Axis 1 is
    // reproducible; the axis 2/3 tabulations carry an identity-slot phase
    // 1−(√3+1)ω⁰ that no combination Σ_l ω^{kl} P_l can produce under any
    // outcome relabeling, and the axis 4 tabulation presumes a partner
    // operator that is not orthogonal to V_11, so those three cannot match
    // any valid measurement family and are reported as the failing rows.
    let hw = sets.get("heisenberg-weyl-d3");
    let us = u_operators(hw);
    let mut hw_devs = [0.0f64; 4];
    for (alpha, n) in hw_reference_us(hw.t()).iter().enumerate() {
        let dev = us
            .get(alpha + 1, 1)
            .max_abs_diff(n)
            .max(us.get(alpha + 1, 2).max_abs_diff(&n.adjoint()));
        hw_devs[alpha] = dev;
    }

    let pass = gm_worst <= 1e-10 && hw_devs.iter().all(|&d| d <= 1e-10);
    result(
        6,
        "u-matrix-regression",
        pass,
        format!(
            "gell-mann (4 matrices, 2 pinned errata): max deviation {gm_worst:.3e}; heisenberg-weyl verbatim per axis: {:.3e}, {:.3e}, {:.3e}, {:.3e} — axes 2-4 tabulations are inconsistent with any eigenvector family (tol 1e-10)",
            hw_devs[0], hw_devs[1], hw_devs[2], hw_devs[3]
        ),
    )
}

fn c07_spectral_identity(cfg: &SuiteConfig, sets: &RefSets) -> CriterionResult {
    let tol = Tolerance::default();
    let mut worst_eigen: f64 = 0.0;
    let mut worst_round: f64 = 0.0;
    for (set_idx, (_, m)) in sets.named.iter().enumerate() {
        let us = u_operators(m);
        for s in 0..100u64 {
            let mut rng = sampling::stream_rng(cfg.seed ^ 0x5bd1, (set_idx as u64) << 32 | s);
            let probs = sampling::random_probability_vector(m.dim() + 2, &mut rng);
            let ch =
                GeneralizedPauliChannel::from_probs(m.clone(), probs.clone(), &tol).expect("simplex");
            for (a, _, u) in us.iter() {
                let dev = ch
                    .apply(u)
                    .expect("dims")
                    .max_abs_diff(&u.scaled_re(ch.eigenvalues()[a - 1]));
                worst_eigen = worst_eigen.max(dev);
            }
            let back =
                crate::channel::probs_from_eigenvalues(ch.eigenvalues(), m).expect("lengths");
            for (p, q) in probs.iter().zip(&back) {
                worst_round = worst_round.max((p - q).abs());
            }
        }
    }
    let pass = worst_eigen <= 1e-10 && worst_round <= 1e-12;
    result(
        7,
        "spectral-identity",
        pass,
        format!(
            "100 channels per family: max ‖Λ[U]−λU‖ = {worst_eigen:.3e} (tol 1e-10), probability round-trip {worst_round:.3e} (tol 1e-12)"
        ),
    )
}

fn c08_cp_logic(cfg: &SuiteConfig, sets: &RefSets) -> CriterionResult {
    let tol = Tolerance::default();

    // (a) sufficient conditions imply a PSD Choi matrix, and the two
    // parametrizations agree.
    let mut sufficient_violations = 0usize;
    let mut agree_violations = 0usize;
    let mut worst_min_eig = f64::INFINITY;
    for (set_idx, (_, m)) in sets.named.iter().enumerate() {
        let outcomes: Vec<(bool, bool, f64)> = (0..1000u64)
            .into_par_iter()
            .map(|s| {
                let mut rng =
                    sampling::stream_rng(cfg.seed ^ 0xc0de, (set_idx as u64) << 32 | s);
                let ch = if s % 2 == 0 {
                    let probs = sampling::random_probability_vector(m.dim() + 2, &mut rng);
                    GeneralizedPauliChannel::from_probs(m.clone(), probs, &tol).expect("simplex")
                } else {
                    let lambda =
                        sampling::random_vector_in_box(m.dim() + 1, -1.2, 1.2, &mut rng);
                    GeneralizedPauliChannel::from_eigenvalues(m.clone(), lambda).expect("lengths")
                };
                let suff = ch.sufficient_cp_check(&tol);
                let min_eig = if suff.pass {
                    ch.is_completely_positive(&tol).choi_min_eigenvalue
                } else {
                    f64::INFINITY
                };
                (suff.pass, suff.forms_agree, min_eig)
            })
            .collect();
        for (pass, agree, min_eig) in outcomes {
            if !agree {
                agree_violations += 1;
            }
            if pass {
                worst_min_eig = worst_min_eig.min(min_eig);
                if min_eig < -1e-10 {
                    sufficient_violations += 1;
                }
            }
        }
    }

    // (b) at κ = 1 the Fujiwara-Algoet verdict equals the Choi verdict.
    let fa_tol = Tolerance {
        eq_tol: 1e-9,
        psd_tol: 1e-9,
    };
    let mut fa_disagreements = 0usize;
    for name in ["weyl-mub-d2", "weyl-mub-d3"] {
        let m = sets.get(name);
        let disagreements: usize = (0..1000u64)
            .into_par_iter()
            .map(|s| {
                let mut rng = sampling::stream_rng(cfg.seed ^ 0xfa, (m.dim() as u64) << 32 | s);
                let lambda = sampling::random_vector_in_box(m.dim() + 1, -1.2, 1.2, &mut rng);
                let fa = fujiwara_algoet_check(&lambda, m.dim(), &fa_tol);
                let ch =
                    GeneralizedPauliChannel::from_eigenvalues(m.clone(), lambda).expect("lengths");
                let choi = ch.is_completely_positive(&fa_tol).is_cp;
                usize::from(fa != choi)
            })
            .sum();
        fa_disagreements += disagreements;
    }

    let pass = sufficient_violations == 0 && agree_violations == 0 && fa_disagreements == 0;
    result(
        8,
        "cp-logic",
        pass,
        format!(
            "1000 samples per family: sufficient⇒PSD violations {sufficient_violations} (worst Choi eig {worst_min_eig:.3e}), form disagreements {agree_violations}; κ=1 FA vs Choi disagreements {fa_disagreements}/2000"
        ),
    )
}

fn c09_composition_identities(sets: &RefSets) -> CriterionResult {
    let mut worst: f64 = 0.0;
    let mut worst_idem: f64 = 0.0;
    for (_, m) in sets.nonprojective() {
        let r = crate::channel::composition_table(m);
        worst = worst
            .max(r.pairwise_cross_dev)
            .max(r.square_cross_dev)
            .max(r.square_same_dev)
            .max(r.sum_rule_dev);
    }
    for (_, m) in sets.projective() {
        let r = crate::channel::composition_table(m);
        worst = worst
            .max(r.pairwise_cross_dev)
            .max(r.square_cross_dev)
            .max(r.square_same_dev)
            .max(r.sum_rule_dev);
        worst_idem = worst_idem.max(r.idempotence_dev);
    }
    let pass = worst <= 1e-10 && worst_idem <= 1e-10;
    result(
        9,
        "composition-identities",
        pass,
        format!(
            "modified identities max deviation {worst:.3e}; projective idempotence {worst_idem:.3e} (tol 1e-10)"
        ),
    )
}

fn c10_holevo_certification(cfg: &SuiteConfig, sets: &RefSets) -> CriterionResult {
    let tol = Tolerance::default();
    let mut counterexamples = 0usize;
    let mut worst_povm: f64 = 0.0;
    let mut worst_reco: f64 = 0.0;
    for (set_idx, (_, m)) in sets.named.iter().enumerate() {
        let bound = m.trace_contrast();
        let outcomes: Vec<(f64, f64, bool)> = (0..1000u64)
            .into_par_iter()
            .map(|s| {
                let mut rng =
                    sampling::stream_rng(cfg.seed ^ 0xeb, (set_idx as u64) << 32 | s);
                let lambda =
                    sampling::random_nonnegative_capped(m.dim() + 1, bound, &mut rng);
                let ch =
                    GeneralizedPauliChannel::from_eigenvalues(m.clone(), lambda).expect("lengths");
                let form = holevo_form(&ch, &tol).expect("sampled inside the region");

                let d = m.dim();
                let mut sum = Operator::zeros(d);
                let mut min_eig = f64::INFINITY;
                for axis in &form.effects {
                    for e in axis {
                        sum = &sum + e;
                        let herm = (e + &e.adjoint()).scaled_re(0.5);
                        min_eig = min_eig.min(herm.min_eigenvalue(&tol).expect("hermitian"));
                    }
                }
                let povm_dev = (&sum - &Operator::identity(d))
                    .frobenius_norm()
                    .max((-min_eig).max(0.0));

                let mut reco_dev: f64 = 0.0;
                for i in 0..d {
                    for j in 0..d {
                        let x = Operator::ket_bra(d, i, j);
                        reco_dev = reco_dev.max(
                            form.apply(&x).max_abs_diff(&ch.apply(&x).expect("dims")),
                        );
                    }
                }
                let ppt = ppt_check(&ch, &tol).unwrap_or(false);
                (povm_dev, reco_dev, ppt)
            })
            .collect();
        for (povm_dev, reco_dev, ppt) in outcomes {
            worst_povm = worst_povm.max(povm_dev);
            worst_reco = worst_reco.max(reco_dev);
            if povm_dev > 1e-10 || reco_dev > 1e-10 || !ppt {
                counterexamples += 1;
            }
        }
    }
    result(
        10,
        "holevo-certification",
        counterexamples == 0,
        format!(
            "1000 channels per family in the sufficient region: counterexamples {counterexamples}, worst POVM deviation {worst_povm:.3e}, worst reconstruction {worst_reco:.3e} (tol 1e-10), PPT everywhere"
        ),
    )
}

fn c11_output_2norm_identity(cfg: &SuiteConfig, sets: &RefSets) -> CriterionResult {
    let mut worst_nu: f64 = 0.0;
    let mut worst_id: f64 = 0.0;
    for (set_idx, (_, m)) in sets.named.iter().enumerate() {
        for s in 0..100u64 {
            let mut rng = sampling::stream_rng(cfg.seed ^ 0x2172, (set_idx as u64) << 32 | s);
            let lambda = sampling::random_vector_in_box(m.dim() + 1, -1.0, 1.0, &mut rng);
            let ch =
                GeneralizedPauliChannel::from_eigenvalues(m.clone(), lambda).expect("lengths");
            worst_nu = worst_nu.max((nu2_restricted(&ch) - nu2_formula(&ch)).abs());
        }

        let d = m.dim() as f64;
        let kappa = m.kappa();
        for (a, axis_a) in m.povm_axes().iter().enumerate() {
            for (b, axis_b) in m.povm_axes().iter().enumerate() {
                for q in axis_b {
                    let sum: f64 = axis_a.iter().map(|p| (p * q).trace().re.powi(2)).sum();
                    let expected = (1.0
                        + if a == b {
                            (d * kappa - 1.0).powi(2) / (d - 1.0)
                        } else {
                            0.0
                        })
                        / d;
                    worst_id = worst_id.max((sum - expected).abs());
                }
            }
        }
    }
    let pass = worst_nu <= 1e-12 && worst_id <= 1e-12;
    result(
        11,
        "output-2norm-identity",
        pass,
        format!(
            "restricted vs formula max gap {worst_nu:.3e}; overlap-square identity max deviation {worst_id:.3e} (tol 1e-12)"
        ),
    )
}

fn c12_multiplicativity(cfg: &SuiteConfig, sets: &RefSets) -> CriterionResult {
    let tol = Tolerance::default();
    let mut pass = true;
    let mut details = Vec::new();
    for (name, m) in sets.projective() {
        for s in 0..20u64 {
            let mut rng = sampling::stream_rng(cfg.seed ^ 0x12, s);
            let lambda = sampling::random_vector_in_box(m.dim() + 1, -1.0, 1.0, &mut rng);
            let ch =
                GeneralizedPauliChannel::from_eigenvalues(m.clone(), lambda).expect("lengths");
            if !multiplicativity_check(&ch, &tol) {
                pass = false;
                details.push(format!("{name}: projective channel flagged non-multiplicative"));
            }
        }
    }
    for name in ["gell-mann-d3", "heisenberg-weyl-d3"] {
        let m = sets.get(name);
        for s in 0..20u64 {
            let mut rng = sampling::stream_rng(cfg.seed ^ 0x13, s);
            let lambda = sampling::random_vector_in_box(m.dim() + 1, -1.0, 1.0, &mut rng);
            let max_sq = lambda.iter().map(|l| l * l).fold(0.0, f64::max);
            if max_sq <= 1e-8 {
                continue;
            }
            let ch =
                GeneralizedPauliChannel::from_eigenvalues(m.clone(), lambda).expect("lengths");
            if multiplicativity_check(&ch, &tol) {
                pass = false;
                details.push(format!("{name}: κ<1 channel flagged multiplicative"));
            }
        }
    }
    let detail = if pass {
        "κ=1 channels multiplicative, optimal Gell-Mann/Heisenberg-Weyl channels not".to_string()
    } else {
        details.join("; ")
    };
    result(12, "multiplicativity", pass, detail)
}

/// (axis, k, matched Weyl index) row of the unitary census.
type UnitaryRow = (usize, usize, Option<(usize, usize)>);

fn c13_eigenvector_census(sets: &RefSets) -> CriterionResult {
    let tol = Tolerance::default();

    let gm = eigenvector_census(sets.get("gell-mann-d3"), &tol);
    let gm_unitary: Vec<(usize, usize)> = gm
        .unitary_proportional
        .iter()
        .map(|e| (e.axis, e.k))
        .collect();
    let gm_ok = gm_unitary == vec![(4, 1), (4, 2)]
        && gm.commuting_pairs == vec![((4, 1), (4, 2))];

    // The claimed unitary set for the Heisenberg-Weyl family is exactly
    // {U_{1,1}, U_{1,2}}. For any orthonormal family the diagonal-axis
    // quadrature pair forces U_{4,k} Weyl-proportional as well (the phase
    // identity c₁ + i·c̄₁ = 0), so this sub-claim can only fail here; it is
    // asserted as stated and reported.
    let hw = eigenvector_census(sets.get("heisenberg-weyl-d3"), &tol);
    let hw_unitary: Vec<UnitaryRow> = hw
        .unitary_proportional
        .iter()
        .map(|e| (e.axis, e.k, e.weyl_index))
        .collect();
    let hw_ok = hw_unitary == vec![(1, 1, Some((1, 0))), (1, 2, Some((2, 0)))]
        && hw.commuting_pairs == vec![((1, 1), (1, 2)), ((4, 1), (4, 2))];

    result(
        13,
        "eigenvector-census",
        gm_ok && hw_ok,
        format!(
            "gell-mann d3 exact: {gm_ok} (unitary {gm_unitary:?}, commuting {:?}); heisenberg-weyl d3: unitary {hw_unitary:?} vs claimed [(1,1),(1,2)], commuting {:?}",
            gm.commuting_pairs, hw.commuting_pairs
        ),
    )
}

fn c14_u_operator_round_trip(sets: &RefSets) -> CriterionResult {
    let tol = Tolerance::default();
    let mut worst: f64 = 0.0;
    let mut failures = Vec::new();
    for (name, m) in &sets.named {
        let us = u_operators(m);
        match mums_from_u_operators(us.axes(), m.kappa(), &tol) {
            Ok(rebuilt) => {
                for (pa, pb) in m.povm_axes().iter().zip(rebuilt.povm_axes()) {
                    for (p, q) in pa.iter().zip(pb) {
                        worst = worst.max(p.max_abs_diff(q));
                    }
                }
            }
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    // The κ = 1 inverse construction from Weyl cyclic subgroups must produce
    // rank-1 projectors.
    let weyl3 = sets.get("weyl-mub-d3");
    let mut proj_dev: f64 = 0.0;
    for axis in weyl3.povm_axes() {
        for p in axis {
            proj_dev = proj_dev.max((&(p * p) - p).frobenius_norm());
        }
    }
    let pass = failures.is_empty() && worst <= 1e-10 && proj_dev <= 1e-10;
    let detail = if failures.is_empty() {
        format!(
            "round-trip max deviation {worst:.3e} (tol 1e-10); Weyl κ=1 projector deviation {proj_dev:.3e}"
        )
    } else {
        failures.join("; ")
    };
    result(14, "u-operator-round-trip", pass, detail)
}

fn c15_nu2_oracle_convergence(cfg: &SuiteConfig) -> CriterionResult {
    // A qubit family strictly inside the positivity interval (κ < 1).
    let basis = pauli_axis_basis();
    let (_, t_max) = feasible_t_interval(&basis).expect("interval");
    let m = build_mums(&basis, 0.55 * t_max).expect("interior t");
    let lambda = vec![0.9, 0.3, 0.2];
    let max_sq = lambda.iter().map(|l| l * l).fold(0.0, f64::max);
    let ch = GeneralizedPauliChannel::from_eigenvalues(m, lambda).expect("lengths");

    // Closed qubit pure-state maximum of ‖Λ[ψ]‖₂ in the Bloch picture.
    let pure_max = ((1.0 + max_sq) / 2.0).sqrt();
    let mc = nu2_pure_mc(&ch, cfg.nu2_mc_samples, cfg.seed);
    let formula = nu2_formula(&ch);
    let gap_to_formula = mc - formula;
    let converged = (mc - pure_max).abs() <= 2e-3;
    let flagged = gap_to_formula > 1e-9;
    result(
        15,
        "nu2-oracle-convergence",
        converged && flagged,
        format!(
            "{} samples: mc = {mc:.6} vs analytic pure max {pure_max:.6} (|Δ| = {:.2e}, tol 2e-3); signed gap to closed formula {gap_to_formula:+.6}, flagged: {flagged}",
            cfg.nu2_mc_samples,
            (mc - pure_max).abs()
        ),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fault_injection_fails_the_pinned_row() {
        let cfg = SuiteConfig {
            fault: Some(Fault::OffsetGellMannKappaReference(1e-6)),
            nu2_mc_samples: 10,
            ..SuiteConfig::default()
        };
        let row = c01_gell_mann_optimum(&cfg);
        assert!(!row.pass, "{row:?}");
        let clean = c01_gell_mann_optimum(&SuiteConfig::default());
        assert!(clean.pass, "{clean:?}");
    }
}
