//! The positivity interval of the free parameter t, computed analytically
//! from the spectra of the outcome operators, and the κ range it reaches.
//!
//!     cargo run --example feasible_interval

use mum_channels::mum::kappa_from_t;
use mum_channels::{feasible_t_interval, gell_mann_basis, hw_observable_basis, pauli_axis_basis};

fn main() -> Result<(), mum_channels::Error> {
    println!(
        "{:<22} {:>3} {:>12} {:>12} {:>10} {:>10}",
        "basis", "d", "t_min", "t_max", "kappa(min)", "kappa(max)"
    );
    let bases = vec![
        pauli_axis_basis(),
        gell_mann_basis(3)?,
        gell_mann_basis(4)?,
        hw_observable_basis(3)?,
        hw_observable_basis(4)?,
    ];
    for basis in bases {
        let (t_min, t_max) = feasible_t_interval(&basis)?;
        println!(
            "{:<22} {:>3} {:>12.8} {:>12.8} {:>10.6} {:>10.6}",
            basis.label().to_string(),
            basis.dim(),
            t_min,
            t_max,
            kappa_from_t(basis.dim(), t_min),
            kappa_from_t(basis.dim(), t_max),
        );
    }

    // The qubit interval is symmetric and reaches the projective limit
    // κ = 1 exactly at its endpoints.
    let (t_min, t_max) = feasible_t_interval(&pauli_axis_basis())?;
    println!("\nqubit endpoints: t_max = 1/(2+√2) = {t_max:.12}, |t_min| = {:.12}", -t_min);
    println!("κ at the endpoint: {:.12}", kappa_from_t(2, t_max));
    Ok(())
}
