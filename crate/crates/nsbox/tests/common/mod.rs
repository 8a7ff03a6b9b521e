use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nsbox::bits;
use nsbox::{Bias, ConditionalBox};

/// Seeded no-signaling box: a convex mixture of one isotropic box and
/// three fully local deterministic boxes.
pub fn random_ns_box(n: usize, seed: u64) -> ConditionalBox {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let isotropic = ConditionalBox::isotropic(n, Bias::new(rng.random::<f64>()).unwrap()).unwrap();
    let mut components = vec![isotropic];
    for _ in 0..3 {
        // Per-party response tables a_i(x_i): local, hence no-signaling.
        let responses: Vec<[u8; 2]> = (0..n)
            .map(|_| [rng.random::<u8>() & 1, rng.random::<u8>() & 1])
            .collect();
        let outputs: Vec<usize> = (0..1usize << n)
            .map(|input| {
                (0..n).fold(0usize, |acc, p| {
                    let x = bits::bit(input, n, p) as usize;
                    (acc << 1) | responses[p][x] as usize
                })
            })
            .collect();
        components.push(ConditionalBox::deterministic(n, &outputs).unwrap());
    }
    let mut weights: Vec<f64> = (0..components.len()).map(|_| rng.random::<f64>()).collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    weights[0] += 1.0 - weights.iter().sum::<f64>();
    let paired: Vec<(f64, &ConditionalBox)> =
        weights.iter().copied().zip(components.iter()).collect();
    ConditionalBox::mixture(&paired).unwrap()
}
