//! Svetlichny functionals in correlator and probability form.
//!
//! The probability form averages, over all 2^N settings, the chance that
//! the joint output parity matches the pairwise input-product parity; every
//! hybrid model (some bipartition of the parties classically correlated
//! across the cut) stays at or below 3/4. The correlator form is the
//! sign-weighted sum of expectation values with bound 2^{N-1}. The two are
//! linked by `S_N = |2^{N+1} * avg - 2^N|`, which holds for every
//! normalized box and is enforced by tests rather than assumed: both forms
//! are computed by independent summation routes.
//!
//! [`hybrid_local_bound`] recovers the 3/4 bound by exhaustive enumeration
//! of deterministic group strategies; mixtures cannot beat the deterministic
//! maximum, so the enumeration is the exact bound.

use serde::{Deserialize, Serialize};

use crate::bits;
use crate::boxes::ConditionalBox;
use crate::error::{Error, Result};
use crate::numeric::pairwise_sum_iter;

/// Success bound of the probability-form inequality for hybrid models.
pub const HYBRID_SUCCESS_BOUND: f64 = 0.75;

/// Equality band used for the algebraic-maximum flag.
pub const ALGEBRAIC_TOL: f64 = 1e-9;

/// Quantum-mechanical maximum of the average success probability,
/// (1 + sqrt(2)/2) / 2; reached by the isotropic box at E = sqrt(2)/2.
pub fn quantum_success_threshold() -> f64 {
    (1.0 + std::f64::consts::FRAC_1_SQRT_2) / 2.0
}

/// Both functional forms of one box, with the three threshold flags.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SvetlichnyReport {
    pub n_parties: usize,
    /// Average success probability over all settings (probability form).
    pub avg_probability: f64,
    /// Sign-weighted correlator sum S_N (correlator form).
    pub correlator_value: f64,
    /// avg > 3/4, strictly: genuine N-partite nonlocality.
    pub violates_hybrid_bound: bool,
    /// avg > (1 + sqrt(2)/2)/2, strictly: stronger than quantum.
    pub exceeds_quantum: bool,
    /// avg = 1 within [`ALGEBRAIC_TOL`].
    pub at_algebraic_max: bool,
}

/// An input setting together with its sign in the correlator sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedSetting {
    pub inputs: usize,
    pub sign: i32,
}

/// Sign of a setting: (-1)^{k(k-1)/2} with k the number of 1 inputs.
#[inline]
pub fn sign_v(inputs: usize) -> i32 {
    let k = inputs.count_ones() as usize;
    if (k * k.saturating_sub(1) / 2) & 1 == 0 {
        1
    } else {
        -1
    }
}

/// The same sign via the pairwise-product parity `(-1)^{⊕_{i<j} x_i x_j}`;
/// agrees with [`sign_v`] on every input string.
#[inline]
pub fn sign_v_parity(inputs: usize) -> i32 {
    if bits::pairwise_parity(inputs) == 0 {
        1
    } else {
        -1
    }
}

/// All 2^N settings with their correlator signs.
pub fn signed_settings(n_parties: usize) -> impl Iterator<Item = SignedSetting> {
    (0..1usize << n_parties).map(|inputs| SignedSetting {
        inputs,
        sign: sign_v(inputs),
    })
}

/// Expectation value of the +/-1 outcome product at one setting,
/// `E = Σ_a P(a|x) (-1)^{⊕ a_i}`.
pub fn correlator(b: &ConditionalBox, input: usize) -> Result<f64> {
    b.check_input(input)?;
    Ok(pairwise_sum_iter(b.row(input).iter().enumerate().map(
        |(output, &p)| {
            if bits::parity(output) == 0 {
                p
            } else {
                -p
            }
        },
    )))
}

/// Probability form: average over settings of the parity-success chance.
pub fn svetlichny_probability(b: &ConditionalBox) -> f64 {
    let n_inputs = b.n_strings();
    let total = pairwise_sum_iter(
        (0..n_inputs).map(|input| b.parity_class_probability(input, bits::pairwise_parity(input))),
    );
    total / n_inputs as f64
}

/// Correlator form: `S_N = |Σ_x v(x) E(x)|`.
pub fn svetlichny_correlator(b: &ConditionalBox) -> f64 {
    pairwise_sum_iter(
        signed_settings(b.n_parties())
            .map(|s| s.sign as f64 * correlator(b, s.inputs).expect("setting in range")),
    )
    .abs()
}

/// Evaluate both forms and the threshold flags for one box.
pub fn evaluate(b: &ConditionalBox) -> SvetlichnyReport {
    let avg = svetlichny_probability(b);
    SvetlichnyReport {
        n_parties: b.n_parties(),
        avg_probability: avg,
        correlator_value: svetlichny_correlator(b),
        violates_hybrid_bound: avg > HYBRID_SUCCESS_BOUND,
        exceeds_quantum: avg > quantum_success_threshold(),
        at_algebraic_max: (avg - 1.0).abs() <= ALGEBRAIC_TOL,
    }
}

/// One deterministic group-strategy pair found by the exhaustive oracle.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HybridWitness {
    pub left_parties: Vec<usize>,
    pub right_parties: Vec<usize>,
    /// Output string (as group-local index) per left-group input index.
    pub left_outputs: Vec<usize>,
    pub right_outputs: Vec<usize>,
}

impl HybridWitness {
    /// Realize the witness as a deterministic strategy box for re-evaluation.
    pub fn to_box(&self, n_parties: usize) -> Result<ConditionalBox> {
        let outputs = (0..1usize << n_parties)
            .map(|input| {
                let mut out = 0usize;
                for (group, table) in [
                    (&self.left_parties, &self.left_outputs),
                    (&self.right_parties, &self.right_outputs),
                ] {
                    let gi = pack_group_input(input, n_parties, group);
                    let go = table[gi];
                    for (pos, &party) in group.iter().enumerate() {
                        let bit = (go >> (group.len() - 1 - pos)) & 1;
                        out |= bit << (n_parties - 1 - party);
                    }
                }
                out
            })
            .collect::<Vec<_>>();
        ConditionalBox::deterministic(n_parties, &outputs)
    }
}

/// Result of the exhaustive hybrid-local maximization.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HybridBound {
    pub n_parties: usize,
    /// Number of settings the best strategy answers correctly.
    pub settings_correct: u64,
    /// Maximum average success probability over all hybrid strategies.
    pub max_average: f64,
    pub witness: HybridWitness,
}

#[inline]
fn pack_group_input(input: usize, n_parties: usize, group: &[usize]) -> usize {
    group.iter().fold(0usize, |acc, &party| {
        (acc << 1) | bits::bit(input, n_parties, party) as usize
    })
}

#[inline]
fn strategy_output(strategy: u64, group_size: usize, group_input: usize) -> usize {
    ((strategy >> (group_size * group_input)) & ((1u64 << group_size) - 1)) as usize
}

fn decode_strategy(strategy: u64, group_size: usize) -> Vec<usize> {
    (0..1usize << group_size)
        .map(|gi| strategy_output(strategy, group_size, gi))
        .collect()
}

/// Parity of each group output, tabulated by group input.
fn parity_table(strategy: u64, group_size: usize) -> Vec<u8> {
    (0..1usize << group_size)
        .map(|gi| (strategy_output(strategy, group_size, gi).count_ones() & 1) as u8)
        .collect()
}

/// Exhaustive Svetlichny-local bound: maximize the probability-form average
/// over every bipartition of the parties and every pair of deterministic
/// group output functions. Returns the exact maximum (3/4 for every
/// supported N) with a witness strategy.
///
/// Supported for 2..=4 parties. The strategy space is doubly exponential;
/// N = 4 enumerates 2^24 functions per three-party group and wants a
/// release build (a few seconds), while N <= 3 is instant.
pub fn hybrid_local_bound(n_parties: usize) -> Result<HybridBound> {
    if !(2..=4).contains(&n_parties) {
        return Err(Error::OracleRange(n_parties));
    }
    let n_inputs = 1usize << n_parties;
    let target: Vec<u8> = (0..n_inputs).map(bits::pairwise_parity).collect();

    let mut best_count = 0u64;
    let mut best: Option<(Vec<usize>, Vec<usize>, u64, u64)> = None;

    // Masks use the bit-string convention, so a mask is the left-group
    // indicator string; keeping party 0 on the left visits each unordered
    // bipartition once.
    let party0 = 1usize << (n_parties - 1);
    for mask in 1..n_inputs - 1 {
        if mask & party0 == 0 {
            continue;
        }
        let left: Vec<usize> = (0..n_parties)
            .filter(|&p| bits::bit(mask, n_parties, p) == 1)
            .collect();
        let right: Vec<usize> = (0..n_parties)
            .filter(|&p| bits::bit(mask, n_parties, p) == 0)
            .collect();

        let left_inputs: Vec<usize> = (0..n_inputs)
            .map(|x| pack_group_input(x, n_parties, &left))
            .collect();
        let right_inputs: Vec<usize> = (0..n_inputs)
            .map(|x| pack_group_input(x, n_parties, &right))
            .collect();

        // Stream the larger strategy space in the outer loop and tabulate
        // the smaller side once.
        let left_is_big = left.len() >= right.len();
        let (big, small, big_inputs, small_inputs) = if left_is_big {
            (&left, &right, &left_inputs, &right_inputs)
        } else {
            (&right, &left, &right_inputs, &left_inputs)
        };
        let small_count = 1u64 << (small.len() * (1 << small.len()));
        let small_tables: Vec<Vec<u8>> = (0..small_count)
            .map(|f| parity_table(f, small.len()))
            .collect();

        let big_count = 1u64 << (big.len() * (1 << big.len()));
        for f_big in 0..big_count {
            let big_table = parity_table(f_big, big.len());
            for (f_small, small_table) in small_tables.iter().enumerate() {
                let mut count = 0u64;
                for x in 0..n_inputs {
                    let guess = big_table[big_inputs[x]] ^ small_table[small_inputs[x]];
                    count += (guess == target[x]) as u64;
                }
                if count > best_count {
                    best_count = count;
                    let (f_left, f_right) = if left_is_big {
                        (f_big, f_small as u64)
                    } else {
                        (f_small as u64, f_big)
                    };
                    best = Some((left.clone(), right.clone(), f_left, f_right));
                }
            }
        }
    }

    let (left, right, f_left, f_right) = best.expect("strategy space is never empty");
    Ok(HybridBound {
        n_parties,
        settings_correct: best_count,
        max_average: best_count as f64 / n_inputs as f64,
        witness: HybridWitness {
            left_outputs: decode_strategy(f_left, left.len()),
            right_outputs: decode_strategy(f_right, right.len()),
            left_parties: left,
            right_parties: right,
        },
    })
}
