//! The inverse construction: a family of operators U_{α,k} with the right
//! adjoint pairing, normalization, and positivity generates the measurement
//! back through P_k^(α) = (I + Σ_l ω^{−kl} U_{α,l})/d. Cyclic Weyl
//! subgroups at κ = 1 yield the rank-1 projectors onto the d+1 mutually
//! unbiased bases, and u_operators ∘ mums_from_u_operators is the identity
//! on any family.
//!
//!     cargo run --example weyl_mub_roundtrip

use mum_channels::bases::weyl_mub_u_family;
use mum_channels::{
    build_mums, gell_mann_basis, mums_from_u_operators, optimal_t, u_operators,
    verify_mum_conditions, Tolerance,
};

fn main() -> Result<(), mum_channels::Error> {
    let tol = Tolerance::default();

    // Cyclic Weyl subgroups → mutually unbiased bases, d = 3.
    let family = weyl_mub_u_family(3)?;
    let mub = mums_from_u_operators(&family, 1.0, &tol)?;
    let report = verify_mum_conditions(&mub, &tol);
    println!("Weyl cyclic subgroups, d = 3, κ = 1:");
    println!("  MUM conditions pass: {} (table dev {:.2e})", report.pass, report.max_table_dev);
    let mut projector_dev: f64 = 0.0;
    for axis in mub.povm_axes() {
        for p in axis {
            projector_dev = projector_dev.max((&(p * p) - p).frobenius_norm());
        }
    }
    println!("  effects are rank-1 projectors: ‖P² − P‖ ≤ {projector_dev:.2e}");

    // Round trip on a κ < 1 family.
    let basis = gell_mann_basis(3)?;
    let (t, _) = optimal_t(&basis)?;
    let mums = build_mums(&basis, t)?;
    let us = u_operators(&mums);
    let rebuilt = mums_from_u_operators(us.axes(), mums.kappa(), &tol)?;
    let mut dev: f64 = 0.0;
    for (pa, pb) in mums.povm_axes().iter().zip(rebuilt.povm_axes()) {
        for (p, q) in pa.iter().zip(pb) {
            dev = dev.max(p.max_abs_diff(q));
        }
    }
    println!("\nGell-Mann d = 3 (κ = {:.4}):", mums.kappa());
    println!("  mums_from_u_operators(u_operators(m)) = m within {dev:.2e}");

    // A tampered family is rejected with the violated condition named.
    let mut bad = weyl_mub_u_family(3)?;
    bad[0][0] = bad[0][0].scaled_re(1.05);
    bad[0][1] = bad[0][0].adjoint();
    match mums_from_u_operators(&bad, 1.0, &tol) {
        Err(e) => println!("\ntampered family: {e}"),
        Ok(_) => unreachable!("normalization violation must be caught"),
    }
    Ok(())
}
