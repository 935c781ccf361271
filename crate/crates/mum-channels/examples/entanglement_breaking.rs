//! Entanglement-breaking certification. Channels with nonnegative spectrum
//! and Σλ_α ≤ (dκ−1)/(d−1) are measure-and-prepare: the example builds the
//! explicit Holevo form (MUM effects as output states, a shifted-effect
//! POVM as the measurement), confirms it reproduces the channel, and
//! cross-checks with the PPT criterion on the Choi matrix.
//!
//!     cargo run --example entanglement_breaking

use mum_channels::analysis::{eb_report, holevo_form};
use mum_channels::sampling::{random_nonnegative_capped, stream_rng};
use mum_channels::{
    build_mums, gell_mann_basis, optimal_t, GeneralizedPauliChannel, Operator, Tolerance,
};

fn main() -> Result<(), mum_channels::Error> {
    let tol = Tolerance::default();
    let basis = gell_mann_basis(3)?;
    let (t, _) = optimal_t(&basis)?;
    let mums = build_mums(&basis, t)?;
    let threshold = mums.trace_contrast();
    println!("sufficient region: λ ≥ 0, Σλ ≤ (dκ−1)/(d−1) = {threshold:.6}\n");

    let mut rng = stream_rng(0, 0);
    let lambda = random_nonnegative_capped(4, threshold, &mut rng);
    println!("λ = {lambda:?} (Σ = {:.6})", lambda.iter().sum::<f64>());
    let ch = GeneralizedPauliChannel::from_eigenvalues(mums, lambda)?;

    let form = holevo_form(&ch, &tol)?;
    println!("Holevo POVM valid: {}", form.povm_valid(&tol));
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let x = Operator::ket_bra(3, i, j);
            worst = worst.max(form.apply(&x).max_abs_diff(&ch.apply(&x)?));
        }
    }
    println!("measure-and-prepare reconstruction deviation: {worst:.3e}");

    let report = eb_report(&ch, &tol);
    println!("\nreport: {}", serde_json::to_string_pretty(&report).expect("serializes"));

    // Outside the sufficient region the constructor refuses.
    let identity = GeneralizedPauliChannel::from_eigenvalues(
        build_mums(&gell_mann_basis(3)?, t)?,
        vec![1.0; 4],
    )?;
    match holevo_form(&identity, &tol) {
        Err(e) => println!("\nidentity channel: {e}"),
        Ok(_) => unreachable!("the identity channel is not entanglement breaking"),
    }
    Ok(())
}
