//! Hit-or-miss estimate of the normalized spherical measure of a polyhedral
//! cone `{z : n_i·z >= 0}` in R^m.

use num_traits::Float;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

/// Samples per random stream; stream `k` covers samples `k*CHUNK ..`.
const CHUNK: u64 = 4096;

/// Fraction of standard Gaussian samples satisfying every inequality, with a
/// 3σ binomial half-width. Each chunk of samples draws from its own ChaCha
/// stream, so the result depends only on `(seed, samples)`.
pub fn cone_fraction<F>(normals: &[Vec<F>], dim: usize, samples: u64, seed: u64) -> (F, F)
where
    F: Float,
    StandardNormal: Distribution<F>,
{
    let mut hits: u64 = 0;
    let mut z = vec![F::zero(); dim];
    let chunks = samples.div_ceil(CHUNK);
    for k in 0..chunks {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k);
        let n = CHUNK.min(samples - k * CHUNK);
        for _ in 0..n {
            for zi in z.iter_mut() {
                *zi = StandardNormal.sample(&mut rng);
            }
            let inside = normals
                .iter()
                .all(|a| a.iter().zip(&z).fold(F::zero(), |s, (x, y)| s + *x * *y) >= F::zero());
            if inside {
                hits += 1;
            }
        }
    }
    let total = F::from(samples).unwrap();
    let p = F::from(hits).unwrap() / total;
    let three = F::from(3.0).unwrap();
    let hw = three * (p * (F::one() - p) / total).sqrt();
    // a zero-variance estimate still carries the resolution of one sample
    (p, hw.max(F::one() / total))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthant_of_r4() {
        let normals: Vec<Vec<f64>> =
            (0..4).map(|i| (0..4).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
        let (p, hw) = cone_fraction(&normals, 4, 200_000, 1);
        assert!((p - 1.0 / 16.0).abs() <= hw, "{p} ± {hw}");
        let (p32, _) = cone_fraction::<f32>(
            &normals.iter().map(|v| v.iter().map(|&x| x as f32).collect()).collect::<Vec<_>>(),
            4,
            50_000,
            1,
        );
        assert!((p32 - 0.0625).abs() < 0.01);
    }

    #[test]
    fn reproducible() {
        let normals = vec![vec![1.0, 0.5, 0.0, 0.0]];
        assert_eq!(cone_fraction(&normals, 4, 10_000, 9), cone_fraction(&normals, 4, 10_000, 9));
    }
}
