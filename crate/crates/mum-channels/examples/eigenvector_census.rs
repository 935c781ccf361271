//! Census of the channel eigenvector operators U_{α,k}: which rescale to
//! unitaries (and to which Weyl operator they are proportional), and which
//! pairs commute. For the qubit family every eigenvector is a rescaled
//! Pauli matrix; in d = 3 the Gell-Mann and Heisenberg-Weyl families
//! produce genuinely non-unitary eigenvectors on the mixed axes.
//!
//!     cargo run --example eigenvector_census

use mum_channels::analysis::eigenvector_census;
use mum_channels::{
    build_mums, gell_mann_basis, hw_observable_basis, optimal_t, pauli_axis_basis, AxisBasis,
    Tolerance,
};

fn census(basis: &AxisBasis) -> Result<(), mum_channels::Error> {
    let tol = Tolerance::default();
    let (t, kappa) = optimal_t(basis)?;
    let mums = build_mums(basis, t)?;
    let report = eigenvector_census(&mums, &tol);
    let total = (basis.dim() + 1) * (basis.dim() - 1);
    println!("{} (d = {}, κ = {kappa:.4}):", basis.label(), basis.dim());
    println!(
        "  unitary after rescaling: {} of {total}",
        report.unitary_proportional.len()
    );
    for e in &report.unitary_proportional {
        match e.weyl_index {
            Some((k, l)) => println!(
                "    U_({},{})  scale {:.6}  ∝ W_{{{k}{l}}}",
                e.axis, e.k, e.scale
            ),
            None => println!("    U_({},{})  scale {:.6}", e.axis, e.k, e.scale),
        }
    }
    println!("  commuting pairs:");
    for ((a1, k1), (a2, k2)) in &report.commuting_pairs {
        println!("    U_({a1},{k1}) ↔ U_({a2},{k2})");
    }
    println!();
    Ok(())
}

fn main() -> Result<(), mum_channels::Error> {
    census(&pauli_axis_basis())?;
    census(&gell_mann_basis(3)?)?;
    census(&hw_observable_basis(3)?)?;
    Ok(())
}
