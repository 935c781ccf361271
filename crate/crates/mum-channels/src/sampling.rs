//! Seed-stable random inputs for sweeps and Monte-Carlo oracles.
//!
//! Every sampler takes an explicit RNG. Sweeps derive one RNG per sample
//! with [`stream_rng`], which pins a (seed, counter) pair to a ChaCha
//! stream: results are identical across platforms and across any
//! partitioning of the sample range over worker threads.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::operator::{Operator, C64};

/// Counter-based RNG: sample `stream` of the generator family `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn standard_complex(rng: &mut impl Rng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random unit vector in C^d (normalized standard complex Gaussians).
pub fn haar_state_vector(dim: usize, rng: &mut impl Rng) -> Vec<C64> {
    loop {
        let v: Vec<C64> = (0..dim).map(|_| standard_complex(rng)).collect();
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.iter().map(|z| z / norm).collect();
        }
    }
}

/// Haar-random pure state |ψ⟩⟨ψ|.
pub fn haar_pure_state(dim: usize, rng: &mut impl Rng) -> Operator {
    Operator::projector(&haar_state_vector(dim, rng))
}

/// Uniform sample from the probability simplex of the given length.
pub fn random_probability_vector(len: usize, rng: &mut impl Rng) -> Vec<f64> {
    let mut v: Vec<f64> = (0..len)
        .map(|_| -f64::ln(1.0 - rng.random::<f64>()))
        .collect();
    let sum: f64 = v.iter().sum();
    for x in &mut v {
        *x /= sum;
    }
    v
}

/// Independent uniform entries in [lo, hi].
pub fn random_vector_in_box(len: usize, lo: f64, hi: f64, rng: &mut impl Rng) -> Vec<f64> {
    (0..len).map(|_| lo + (hi - lo) * rng.random::<f64>()).collect()
}

/// Uniform sample from {λ ≥ 0, Σλ ≤ bound}: a simplex direction scaled by
/// a beta-distributed radius.
pub fn random_nonnegative_capped(len: usize, bound: f64, rng: &mut impl Rng) -> Vec<f64> {
    let dir = random_probability_vector(len, rng);
    let radius = bound * rng.random::<f64>().powf(1.0 / len as f64);
    dir.into_iter().map(|w| w * radius).collect()
}

/// Gaussian Hermitian matrix (A + A†)/2 with entries of the given scale.
pub fn random_hermitian(dim: usize, scale: f64, rng: &mut impl Rng) -> Operator {
    let g = Operator::from_fn(dim, |_, _| standard_complex(rng) * scale);
    (&g + &g.adjoint()).scaled_re(0.5)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_independent_of_partitioning() {
        let a: Vec<f64> = (0..4)
            .map(|i| stream_rng(7, i).random::<f64>())
            .collect();
        // Drawing the same streams in reverse order reproduces the values.
        let b: Vec<f64> = (0..4)
            .rev()
            .map(|i| stream_rng(7, i).random::<f64>())
            .collect();
        for (x, y) in a.iter().zip(b.iter().rev()) {
            assert_eq!(x, y);
        }
    }

    #[test]
    fn haar_states_are_normalized() {
        let mut rng = stream_rng(0, 0);
        for d in 2..=5 {
            let psi = haar_state_vector(d, &mut rng);
            let n: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
            assert!((n - 1.0).abs() < 1e-12);
            let rho = haar_pure_state(d, &mut rng);
            assert!((rho.trace().re - 1.0).abs() < 1e-12);
            assert!((&(&rho * &rho) - &rho).frobenius_norm() < 1e-12, "pure");
        }
    }

    #[test]
    fn simplex_and_capped_samples() {
        let mut rng = stream_rng(1, 0);
        let p = random_probability_vector(5, &mut rng);
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(p.iter().all(|&x| x >= 0.0));
        let lam = random_nonnegative_capped(4, 0.5, &mut rng);
        assert!(lam.iter().sum::<f64>() <= 0.5 + 1e-12);
        assert!(lam.iter().all(|&x| x >= 0.0));
    }
}
