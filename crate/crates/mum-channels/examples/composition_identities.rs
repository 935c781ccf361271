//! How the quantum-classical channels compose. In the projective case the
//! axis measurements are idempotent and Φ_αΦ_β = Φ₀ for α ≠ β; below κ = 1
//! idempotence deforms into a fixed mixture of Φ_α and Φ₀ while the other
//! identities keep their form. The channel always commutes with each of its
//! axis components, but conjugation covariance by the eigenvector operators
//! survives only in the projective case.
//!
//!     cargo run --example composition_identities

use mum_channels::channel::{commutation_check, composition_table};
use mum_channels::sampling::{random_probability_vector, stream_rng};
use mum_channels::{
    build_mums, gell_mann_basis, optimal_t, weyl_mub_mums, GeneralizedPauliChannel, MumSet,
    Tolerance,
};

fn show(name: &str, mums: &MumSet) -> Result<(), mum_channels::Error> {
    let tol = Tolerance::default();
    let r = composition_table(mums);
    println!("{name} (κ = {:.4}):", r.kappa);
    println!("  Φ_αΦ_β = Φ₀ (α≠β)          dev {:.2e}", r.pairwise_cross_dev);
    println!("  Φ_α²[P^(β)] = Φ₀[P^(β)]     dev {:.2e}", r.square_cross_dev);
    println!("  Φ_α²[P^(α)] mixture rule    dev {:.2e}", r.square_same_dev);
    println!("  ΣΦ_α sum rule               dev {:.2e}", r.sum_rule_dev);
    println!("  Φ_αΦ_α = Φ_α (idempotence)  dev {:.2e}", r.idempotence_dev);

    let mut rng = stream_rng(0, 0);
    let probs = random_probability_vector(mums.dim() + 2, &mut rng);
    let ch = GeneralizedPauliChannel::from_probs(mums.clone(), probs, &tol)?;
    let c = commutation_check(&ch, 10, 0);
    println!("  ΛΦ_α = Φ_αΛ                 dev {:.2e}", c.max_phi_commutator_dev);
    println!("  U-conjugation covariance    dev {:.2e}\n", c.max_covariance_dev);
    Ok(())
}

fn main() -> Result<(), mum_channels::Error> {
    let basis = gell_mann_basis(3)?;
    let (t, _) = optimal_t(&basis)?;
    show("Gell-Mann d=3 at optimal t", &build_mums(&basis, t)?)?;
    show("Weyl MUB d=3", &weyl_mub_mums(3)?)?;
    Ok(())
}
