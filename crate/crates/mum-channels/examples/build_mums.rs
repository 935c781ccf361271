//! Construct mutually unbiased measurements from each built-in operator
//! basis at the optimal free parameter, and verify the defining trace
//! relations.
//!
//!     cargo run --example build_mums

use mum_channels::{
    build_mums, gell_mann_basis, hw_observable_basis, optimal_t, pauli_axis_basis,
    verify_mum_conditions, Tolerance,
};

fn main() -> Result<(), mum_channels::Error> {
    let tol = Tolerance::default();
    let bases = vec![
        pauli_axis_basis(),
        gell_mann_basis(3)?,
        gell_mann_basis(4)?,
        gell_mann_basis(5)?,
        hw_observable_basis(3)?,
    ];

    println!("{:<22} {:>3} {:>12} {:>10} {:>12} {:>12}", "basis", "d", "t_opt", "kappa", "table dev", "min eig");
    for basis in bases {
        let (t, kappa) = optimal_t(&basis)?;
        let mums = build_mums(&basis, t)?;
        let report = verify_mum_conditions(&mums, &tol);
        println!(
            "{:<22} {:>3} {:>12.8} {:>10.6} {:>12.2e} {:>12.2e}",
            basis.label().to_string(),
            basis.dim(),
            t,
            kappa,
            report.max_table_dev,
            report.min_eigenvalue,
        );
        assert!(report.pass, "constructed family must satisfy the MUM conditions");
    }

    println!("\nAll families satisfy Tr(P_k P_l) = 1/d + (dκ−1)/(d−1)·δ_αβ(δ_kl − 1/d).");
    Ok(())
}
