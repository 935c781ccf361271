//! Build a generalized Pauli channel from a probability vector, then check
//! its spectral structure: Λ[I] = I and Λ[U_{α,k}] = λ_α U_{α,k} with the
//! eigenvalues given in closed form by the probabilities, each (d−1)-fold
//! degenerate. The two channel forms (identity mixture vs depolarizing
//! mixture) agree on arbitrary inputs.
//!
//!     cargo run --example channel_spectrum

use mum_channels::channel::{eigenvalues_from_probs, probs_from_eigenvalues};
use mum_channels::sampling::{random_hermitian, stream_rng};
use mum_channels::{
    build_mums, gell_mann_basis, optimal_t, u_operators, GeneralizedPauliChannel, Operator,
    Tolerance,
};

fn main() -> Result<(), mum_channels::Error> {
    let tol = Tolerance::default();
    let basis = gell_mann_basis(3)?;
    let (t, _) = optimal_t(&basis)?;
    let mums = build_mums(&basis, t)?;

    let probs = vec![0.5, 0.2, 0.15, 0.1, 0.05];
    let lambda = eigenvalues_from_probs(&probs, &mums)?;
    println!("p = {probs:?}");
    println!("λ = {lambda:?}");

    let back = probs_from_eigenvalues(&lambda, &mums)?;
    let round_trip: f64 = probs
        .iter()
        .zip(&back)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    println!("p ↔ λ round-trip deviation: {round_trip:.3e}\n");

    let ch = GeneralizedPauliChannel::from_probs(mums, probs, &tol)?;
    let id = Operator::identity(3);
    println!("‖Λ[I] − I‖_F = {:.3e} (unital)", (&ch.apply(&id)? - &id).frobenius_norm());

    let us = u_operators(ch.mums());
    let mut worst: f64 = 0.0;
    for (axis, k, u) in us.iter() {
        let image = ch.apply(u)?;
        let dev = image.max_abs_diff(&u.scaled_re(ch.eigenvalues()[axis - 1]));
        worst = worst.max(dev);
        println!("Λ[U_({axis},{k})] = λ_{axis} U_({axis},{k})  deviation {dev:.3e}");
    }
    assert!(worst < 1e-10);

    let mut rng = stream_rng(0, 0);
    let x = random_hermitian(3, 1.0, &mut rng);
    let gap = ch.apply(&x)?.max_abs_diff(&ch.apply_alt(&x)?);
    println!("\ndefining form vs depolarizing-mixture form on a random input: {gap:.3e}");
    Ok(())
}
