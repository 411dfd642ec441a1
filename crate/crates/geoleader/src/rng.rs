//! Seeded random generation: one deterministic generator per task and the
//! couplings that let a single uniform draw serve both chains.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Binomial, Distribution};

use crate::types::Theta;

/// The crate-wide generator type. Deterministic and platform independent
/// given a 64-bit seed.
pub type TaskRng = ChaCha12Rng;

/// Builds the generator for a seed.
pub fn task_rng(seed: u64) -> TaskRng {
    ChaCha12Rng::seed_from_u64(seed)
}

/// Splitting rule for parallel Monte Carlo: stream `s` of base seed `b` uses
/// `splitmix64(b ^ (s+1) * GOLDEN)`, which decorrelates nearby indices.
/// Documented so runs can be reproduced stream by stream.
pub fn derive_seed(base: u64, stream: u64) -> u64 {
    splitmix64(base ^ stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform draw in the open interval (0, 1).
#[inline]
pub fn open_unit(rng: &mut impl Rng) -> f64 {
    loop {
        let u: f64 = rng.gen();
        if u > 0.0 {
            return u;
        }
    }
}

/// Standard exponential draw by inversion.
#[inline]
pub fn sample_exponential(rng: &mut impl Rng) -> f64 {
    -open_unit(rng).ln()
}

/// Geometric draw (number of tosses up to and including the first success)
/// by inversion: `ceil(ln U / ln(1-theta))`.
///
/// Equals `ceil(c(theta) * eta)` for a standard exponential `eta`, the
/// coupling the analysis of both chains relies on, so one sampler serves
/// everything.
#[inline]
pub fn sample_geometric(rng: &mut impl Rng, theta: Theta) -> u32 {
    let u = open_unit(rng);
    let v = (u.ln() / theta.ln_survival()).ceil();
    if v < 1.0 {
        1
    } else {
        v as u32
    }
}

/// Geometric draw conditioned on the range `{1, ..., max-1}` by inversion
/// of its explicit distribution function (no rejection loop).
#[inline]
pub fn sample_geometric_below(rng: &mut impl Rng, theta: Theta, max: u32) -> u32 {
    debug_assert!(max >= 2, "conditioned range must be nonempty");
    let q = theta.survival();
    let d = 1.0 - q.powi(max as i32 - 1);
    let u = open_unit(rng);
    // smallest v with 1 - q^v >= u d
    let v = ((1.0 - u * d).ln() / theta.ln_survival()).ceil();
    (v.max(1.0) as u32).min(max - 1)
}

/// Number of survivors when each of `n` participants independently remains
/// with probability `p`. Exact sampling (inversion for small means, BTPE
/// rejection for large ones), deterministic per generator state; supports
/// counts up to ~1e13.
pub fn sample_binomial(rng: &mut impl Rng, n: u64, p: f64) -> u64 {
    if n == 0 || p <= 0.0 {
        return 0;
    }
    if p >= 1.0 {
        return n;
    }
    Binomial::new(n, p).expect("validated p").sample(rng)
}

/// Gamma(shape, 1) draw for integer shape, as a sum of exponentials.
/// Exact for the small shapes used here.
pub fn sample_gamma_int(rng: &mut impl Rng, shape: u32) -> f64 {
    debug_assert!(shape >= 1);
    let mut acc = 0.0;
    for _ in 0..shape {
        acc += sample_exponential(rng);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn th(v: f64) -> Theta {
        Theta::new(v).unwrap()
    }

    #[test]
    fn determinism() {
        let a: Vec<u32> = {
            let mut rng = task_rng(42);
            (0..100).map(|_| sample_geometric(&mut rng, th(0.3))).collect()
        };
        let b: Vec<u32> = {
            let mut rng = task_rng(42);
            (0..100).map(|_| sample_geometric(&mut rng, th(0.3))).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn derive_seed_distinct() {
        let s: std::collections::HashSet<u64> = (0..1000).map(|i| derive_seed(7, i)).collect();
        assert_eq!(s.len(), 1000);
    }

    #[test]
    fn geometric_frequencies() {
        let theta = th(0.5);
        let mut rng = task_rng(1);
        let n = 200_000;
        let mut counts = [0u32; 8];
        for _ in 0..n {
            let v = sample_geometric(&mut rng, theta);
            if (v as usize) < counts.len() {
                counts[v as usize] += 1;
            }
        }
        for j in 1..=5u32 {
            let p = 0.5f64.powi(j as i32);
            let freq = counts[j as usize] as f64 / n as f64;
            let se = (p * (1.0 - p) / n as f64).sqrt();
            assert!((freq - p).abs() < 5.0 * se, "j={j}: {freq} vs {p}");
        }
    }

    #[test]
    fn conditioned_geometric_range_and_frequencies() {
        let theta = th(0.5);
        let max = 4u32;
        let mut rng = task_rng(9);
        let n = 200_000;
        let mut counts = [0u32; 4];
        for _ in 0..n {
            let v = sample_geometric_below(&mut rng, theta, max);
            assert!((1..max).contains(&v));
            counts[v as usize] += 1;
        }
        let d = 1.0 - 0.5f64.powi(3);
        for v in 1..max {
            let p = 0.5f64.powi(v as i32) / d;
            let freq = counts[v as usize] as f64 / n as f64;
            let se = (p * (1.0 - p) / n as f64).sqrt();
            assert!((freq - p).abs() < 5.0 * se, "v={v}");
        }
    }

    #[test]
    fn binomial_edges() {
        let mut rng = task_rng(3);
        assert_eq!(sample_binomial(&mut rng, 0, 0.5), 0);
        assert_eq!(sample_binomial(&mut rng, 10, 0.0), 0);
        assert_eq!(sample_binomial(&mut rng, 10, 1.0), 10);
        let big = sample_binomial(&mut rng, 1 << 40, 0.5);
        let mean = (1u64 << 40) as f64 * 0.5;
        let sd = ((1u64 << 40) as f64 * 0.25).sqrt();
        assert!((big as f64 - mean).abs() < 8.0 * sd);
    }
}
