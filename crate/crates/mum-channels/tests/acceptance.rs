//! Acceptance suite: runs every criterion of the reference verification
//! suite at its pinned tolerance and prints one pass/fail line per
//! criterion. Criteria 6 and 13 assert published tabulations that are
//! internally inconsistent (see the suite's detail strings); they are
//! implemented as stated and report honestly.

use std::sync::OnceLock;

use mum_channels::suite::{run_all, CriterionResult, SuiteConfig};

fn results() -> &'static [CriterionResult] {
    static RESULTS: OnceLock<Vec<CriterionResult>> = OnceLock::new();
    RESULTS.get_or_init(|| run_all(&SuiteConfig::default()))
}

fn check(id: usize) {
    let r = results()
        .iter()
        .find(|r| r.id == id)
        .expect("criterion id exists");
    println!(
        "[{}] {:2}. {:<28} {}",
        if r.pass { "PASS" } else { "FAIL" },
        r.id,
        r.name,
        r.detail
    );
    assert!(r.pass, "criterion {} ({}) failed: {}", r.id, r.name, r.detail);
}

#[test]
fn c01_gell_mann_optimum() {
    check(1);
}

#[test]
fn c02_heisenberg_weyl_optimum() {
    check(2);
}

#[test]
fn c03_qubit_feasibility_interval() {
    check(3);
}

#[test]
fn c04_mum_invariants() {
    check(4);
}

#[test]
fn c05_state_reconstruction() {
    check(5);
}

#[test]
fn c06_u_matrix_regression() {
    check(6);
}

#[test]
fn c07_spectral_identity() {
    check(7);
}

#[test]
fn c08_cp_logic() {
    check(8);
}

#[test]
fn c09_composition_identities() {
    check(9);
}

#[test]
fn c10_holevo_certification() {
    check(10);
}

#[test]
fn c11_output_2norm_identity() {
    check(11);
}

#[test]
fn c12_multiplicativity() {
    check(12);
}

#[test]
fn c13_eigenvector_census() {
    check(13);
}

#[test]
fn c14_u_operator_round_trip() {
    check(14);
}

#[test]
fn c15_nu2_oracle_convergence() {
    check(15);
}
