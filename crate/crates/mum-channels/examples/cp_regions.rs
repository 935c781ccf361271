//! Complete positivity three ways: the numerical Choi test (necessary and
//! sufficient), the analytic sufficient conditions (a convex mixture of the
//! identity map and the axis measurements), and — in the projective κ = 1
//! case — the Fujiwara-Algoet inequalities, which match the Choi verdict
//! exactly.
//!
//!     cargo run --example cp_regions

use mum_channels::channel::fujiwara_algoet_check;
use mum_channels::sampling::{random_probability_vector, random_vector_in_box, stream_rng};
use mum_channels::{
    build_mums, gell_mann_basis, optimal_t, weyl_mub_mums, GeneralizedPauliChannel, Tolerance,
};

fn main() -> Result<(), mum_channels::Error> {
    let tol = Tolerance::default();

    // κ < 1: random spectra show the CP region is much larger than the
    // analytic sufficient region.
    let basis = gell_mann_basis(3)?;
    let (t, _) = optimal_t(&basis)?;
    let mums = build_mums(&basis, t)?;
    let mut sufficient = 0usize;
    let mut cp = 0usize;
    let samples = 2000u64;
    for s in 0..samples {
        let mut rng = stream_rng(1, s);
        let lambda = random_vector_in_box(4, -0.2, 0.9, &mut rng);
        let ch = GeneralizedPauliChannel::from_eigenvalues(mums.clone(), lambda)?;
        let suff = ch.sufficient_cp_check(&tol);
        let choi = ch.is_completely_positive(&tol);
        if suff.pass {
            sufficient += 1;
            assert!(choi.is_cp, "sufficient region must sit inside the CP region");
        }
        if choi.is_cp {
            cp += 1;
        }
    }
    println!("Gell-Mann d=3, κ = {:.4}: {samples} random spectra", mums.kappa());
    println!("  completely positive:            {cp}");
    println!("  inside the sufficient region:   {sufficient} (every one CP)");

    // Sampling the sufficient region directly: p₀ ≥ 1/d, p_α ≥ 0 exhibits
    // the channel as a convex mixture, so the Choi matrix is always PSD.
    let mut worst_choi = f64::INFINITY;
    for s in 0..samples {
        let mut rng = stream_rng(3, s);
        let q = random_probability_vector(5, &mut rng);
        let d = 3.0;
        let mut probs: Vec<f64> = q.iter().map(|&x| (1.0 - 1.0 / d) * x).collect();
        probs[0] += 1.0 / d;
        let ch = GeneralizedPauliChannel::from_probs(mums.clone(), probs, &tol)?;
        assert!(ch.sufficient_cp_check(&tol).pass);
        let verdict = ch.is_completely_positive(&tol);
        assert!(verdict.is_cp);
        worst_choi = worst_choi.min(verdict.choi_min_eigenvalue);
    }
    println!("  {samples} mixtures with p₀ ≥ 1/d: all CP, smallest Choi eigenvalue {worst_choi:.3e}");

    // κ = 1: Fujiwara-Algoet is exactly the CP boundary.
    let mub = weyl_mub_mums(3)?;
    let mut disagreements = 0usize;
    for s in 0..samples {
        let mut rng = stream_rng(2, s);
        let lambda = random_vector_in_box(4, -1.2, 1.2, &mut rng);
        let fa = fujiwara_algoet_check(&lambda, 3, &tol);
        let ch = GeneralizedPauliChannel::from_eigenvalues(mub.clone(), lambda)?;
        if fa != ch.is_completely_positive(&tol).is_cp {
            disagreements += 1;
        }
    }
    println!("\nWeyl MUB d=3 (κ = 1): Fujiwara-Algoet vs Choi on {samples} spectra");
    println!("  disagreements: {disagreements}");
    assert_eq!(disagreements, 0);
    Ok(())
}
