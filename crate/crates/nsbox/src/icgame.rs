//! Information-causality games over no-signaling boxes.
//!
//! Information causality bounds the information a receiver can gain about
//! a remote database by the number of classical bits sent: with one
//! message bit, `I = Σ_k I(a_k : g | l = k) <= 1` in any physical theory.
//! `I` is lower-bounded through the per-task guessing probabilities by the
//! Fano form `N - Σ_k h(p_k)`, so a Fano value above the message count
//! already certifies a violation.
//!
//! Two protocols are implemented: the tripartite guessing game in which
//! two neighbouring parties message the third, and the concatenated
//! random-access code over bipartite boxes (a binary tree of 2^k - 1
//! boxes encoding 2^k database bits). The tree protocol's success law
//! `(1 + E^k)/2` is validated against exact outcome enumeration at small
//! depth rather than assumed.

use serde::{Deserialize, Serialize};

use crate::boxes::{Bias, ConditionalBox, PROB_TOL};
use crate::error::{Error, Result};
use crate::numeric::{pairwise_sum, pairwise_sum_iter};
use crate::svetlichny::svetlichny_probability;
use crate::wiring::{merge_parties, restrict_inputs, GroupSplit};

/// Largest depth accepted by [`concatenated_rac_exact`].
pub const MAX_EXACT_DEPTH: usize = 3;

/// Largest depth accepted by [`end_to_end_multipartite_ic`]; the result
/// carries one success probability per database bit, 2^depth of them.
pub const MAX_PIPELINE_DEPTH: usize = 20;

/// Binary entropy h(p) in bits, with 0 log 0 = 0.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ProbabilityRange(p));
    }
    let term = |q: f64| if q > 0.0 { -q * q.log2() } else { 0.0 };
    Ok(term(p) + term(1.0 - p))
}

/// Shannon mutual information (bits) of a joint distribution given as a
/// rectangular table `joint[u][v]`; zero-probability cells contribute 0.
pub fn mutual_information(joint: &[Vec<f64>]) -> Result<f64> {
    let rows = joint.len();
    let cols = joint.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 || joint.iter().any(|r| r.len() != cols) {
        return Err(Error::BadTableShape("joint distribution".into()));
    }
    let mut total = 0.0;
    for row in joint {
        for &p in row {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::ProbabilityRange(p));
            }
            total += p;
        }
    }
    if (total - 1.0).abs() > PROB_TOL {
        return Err(Error::JointNotNormalized(total));
    }
    let row_marginals: Vec<f64> = joint.iter().map(|r| r.iter().sum()).collect();
    let col_marginals: Vec<f64> = (0..cols)
        .map(|v| joint.iter().map(|r| r[v]).sum())
        .collect();
    let mut info = 0.0;
    for (u, row) in joint.iter().enumerate() {
        for (v, &p) in row.iter().enumerate() {
            if p > 0.0 {
                info += p * (p / (row_marginals[u] * col_marginals[v])).log2();
            }
        }
    }
    Ok(info)
}

/// Outcome of an information-causality game.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ICGameResult {
    /// Number of database bits the receiver may be asked about.
    pub n_database_bits: usize,
    /// Classical bits transmitted (1 in every protocol here).
    pub n_message_bits: usize,
    /// Per-task probability of a correct guess.
    pub success_probs: Vec<f64>,
    /// Σ_k I(a_k : g | l = k) from the exact joint distributions.
    pub i_exact: f64,
    /// Fano lower bound N - Σ_k h(p_k).
    pub i_fano: f64,
    /// max(i_exact, i_fano) > n, strictly.
    pub violates_ic: bool,
}

/// The tripartite guessing game: parties 0 and 1 (inputs x, y) sit
/// together and send `m = a ⊕ b ⊕ xy ⊕ x` to party 2, whose input z
/// selects the task — guess x when z = 0, y when z = 1 — and whose guess
/// is `g = c ⊕ m`. Inputs x, y are uniform; one bit is transmitted.
#[allow(clippy::needless_range_loop)] // indices are the game's bit values
pub fn tripartite_guess_game(b: &ConditionalBox) -> Result<ICGameResult> {
    if b.n_parties() != 3 {
        return Err(Error::PartyMismatch {
            got: b.n_parties(),
            expected: 3,
        });
    }
    let report = b.verify_no_signaling(PROB_TOL);
    if !report.no_signaling {
        return Err(Error::SignalingBox {
            discrepancy: report.max_marginal_discrepancy,
        });
    }

    // P(⊕abc = g ⊕ xy ⊕ x | x, y, z) drives both guesses.
    let class = |x: usize, y: usize, z: usize, t: u8| {
        b.parity_class_probability((x << 2) | (y << 1) | z, t)
    };

    let p_x =
        pairwise_sum_iter((0..4).map(|xy| class(xy >> 1, xy & 1, 0, ((xy >> 1) & xy) as u8 & 1)))
            / 4.0;
    let p_y = pairwise_sum_iter((0..4).map(|xy| {
        let (x, y) = (xy >> 1, xy & 1);
        class(x, y, 1, ((y ^ (x & y) ^ x) & 1) as u8)
    })) / 4.0;

    // Exact joints of (task bit, guess) for each task.
    let mut joint_x = vec![vec![0.0; 2]; 2];
    let mut joint_y = vec![vec![0.0; 2]; 2];
    for x in 0..2usize {
        for y in 0..2usize {
            for g in 0..2u8 {
                let t = g ^ ((x & y) as u8) ^ (x as u8);
                joint_x[x][g as usize] += 0.25 * class(x, y, 0, t);
                joint_y[y][g as usize] += 0.25 * class(x, y, 1, t);
            }
        }
    }
    let i_exact = mutual_information(&joint_x)? + mutual_information(&joint_y)?;
    let i_fano = 2.0 - binary_entropy(p_x)? - binary_entropy(p_y)?;

    Ok(ICGameResult {
        n_database_bits: 2,
        n_message_bits: 1,
        success_probs: vec![p_x, p_y],
        i_exact,
        i_fano,
        violates_ic: i_exact.max(i_fano) > 1.0,
    })
}

/// One level of the concatenated random-access code.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RacLevel {
    pub depth: usize,
    pub bias: Bias,
    /// Probability of correctly guessing any addressed database bit.
    pub per_bit_success: f64,
}

impl RacLevel {
    /// Fano information of the depth-k game: 2^k database bits, one
    /// message bit, every task at `per_bit_success`.
    pub fn fano_information(&self) -> f64 {
        let h = binary_entropy(self.per_bit_success).expect("per-bit success is a probability");
        f64::powi(2.0, self.depth as i32) * (1.0 - h)
    }
}

/// Exact simulation of the depth-k concatenated RAC: 2^k database bits
/// are encoded pairwise, level by level, through a binary tree of
/// 2^k - 1 bipartite isotropic boxes; the receiver descends the tree
/// along the address bits, XOR-combining box outputs with the one
/// transmitted bit. Enumerates every database, address, sender-side
/// outcome, and traversed-box error pattern.
#[allow(clippy::needless_range_loop)] // the address doubles as a bit source
pub fn concatenated_rac_exact(bias: Bias, depth: usize) -> Result<RacLevel> {
    if !(1..=MAX_EXACT_DEPTH).contains(&depth) {
        return Err(Error::DepthRange(
            depth,
            "1..=3 supported by exact enumeration",
        ));
    }
    let e = bias.value();
    let p_ok = (1.0 + e) / 2.0;
    let p_err = (1.0 - e) / 2.0;
    let n_db_bits = 1usize << depth;
    let n_boxes = n_db_bits - 1;

    let mut per_case = Vec::with_capacity((1 << n_db_bits) * n_db_bits);
    let mut x_inputs = vec![0u8; n_boxes];
    let mut a_bits = vec![0u8; n_boxes];
    // Box ids are assigned level by level from the leaves, so level l
    // (1-based) starts at id 2^k - 2^{k-l+1} ... precomputed below.
    let mut level_start = vec![0usize; depth + 1];
    {
        let mut id = 0;
        for (level, slot) in level_start.iter_mut().enumerate().skip(1) {
            *slot = id;
            id += n_db_bits >> level;
        }
    }

    for db in 0..1u32 << n_db_bits {
        let mut success_by_addr: Vec<Vec<f64>> = vec![Vec::with_capacity(1 << n_boxes); n_db_bits];
        for a_vec in 0..1u32 << n_boxes {
            // Sender side: compress the database up the tree.
            let mut values: Vec<u8> = (0..n_db_bits).map(|j| ((db >> j) & 1) as u8).collect();
            let mut id = 0;
            while values.len() > 1 {
                let mut next = Vec::with_capacity(values.len() / 2);
                for pair in values.chunks_exact(2) {
                    let a = ((a_vec >> id) & 1) as u8;
                    x_inputs[id] = pair[0] ^ pair[1];
                    a_bits[id] = a;
                    next.push(a ^ pair[0]);
                    id += 1;
                }
                values = next;
            }
            let message = values[0];

            // Receiver side: walk down to each address under every error
            // pattern of the traversed boxes.
            for addr in 0..n_db_bits {
                let want = ((db >> addr) & 1) as u8;
                let mut success = 0.0;
                for f_vec in 0..1u32 << depth {
                    let mut weight = 1.0;
                    let mut estimate = message;
                    let mut node = 0usize;
                    for level in (1..=depth).rev() {
                        let beta = ((addr >> (level - 1)) & 1) as u8;
                        let id = level_start[level] + node;
                        let f = ((f_vec >> (level - 1)) & 1) as u8;
                        weight *= if f == 1 { p_err } else { p_ok };
                        estimate ^= a_bits[id] ^ (x_inputs[id] & beta) ^ f;
                        node = 2 * node + beta as usize;
                    }
                    if estimate == want {
                        success += weight;
                    }
                }
                success_by_addr[addr].push(success);
            }
        }
        let a_count = (1u64 << n_boxes) as f64;
        for mut successes in success_by_addr {
            per_case.push(pairwise_sum(&mut successes) / a_count);
        }
    }

    let cases = per_case.len() as f64;
    let per_bit_success = pairwise_sum(&mut per_case) / cases;
    Ok(RacLevel {
        depth,
        bias,
        per_bit_success,
    })
}

/// Closed-form success law of the concatenated RAC: a guess is correct
/// iff an even number of the k traversed boxes err, so the bias
/// multiplies along the path and `p = (1 + E^k)/2`. Validated against
/// [`concatenated_rac_exact`] for k <= 3.
pub fn concatenated_rac_analytic(bias: Bias, depth: usize) -> Result<RacLevel> {
    if depth == 0 {
        return Err(Error::DepthRange(depth, "depth must be at least 1"));
    }
    Ok(RacLevel {
        depth,
        bias,
        per_bit_success: (1.0 + bias.value().powi(depth as i32)) / 2.0,
    })
}

/// Smallest depth k <= k_max whose Fano information exceeds one message
/// bit, or None: the receiver gains more than was sent only above the
/// quantum bias.
pub fn ic_violation_scan(bias: Bias, k_max: usize) -> Option<usize> {
    (1..=k_max).find(|&k| {
        concatenated_rac_analytic(bias, k)
            .expect("depth >= 1")
            .fano_information()
            > 1.0
    })
}

/// Full pipeline: build the isotropic N-party box, merge all parties into
/// two blocks, restrict to one live input bit per side, and play the
/// concatenated RAC with the resulting bipartite box. The multipartite
/// box inherits exactly the bipartite IC behaviour of its bias.
pub fn end_to_end_multipartite_ic(
    n_parties: usize,
    bias: Bias,
    split_k: usize,
    depth: usize,
) -> Result<ICGameResult> {
    if !(1..=MAX_PIPELINE_DEPTH).contains(&depth) {
        return Err(Error::DepthRange(depth, "1..=20 supported by the pipeline"));
    }
    let source = ConditionalBox::isotropic(n_parties, bias)?;
    let split = GroupSplit::new(n_parties, split_k)?;
    let merged = merge_parties(&source, split)?;
    let bipartite = restrict_inputs(&merged, 0, 0)?;

    // The restricted box's average parity-game success encodes its bias.
    let success = svetlichny_probability(&bipartite);
    let effective = Bias::new((2.0 * success - 1.0).clamp(0.0, 1.0))?;
    let rac = concatenated_rac_analytic(effective, depth)?;

    let p = rac.per_bit_success;
    let tasks = 1usize << depth;
    let bsc = vec![
        vec![p / 2.0, (1.0 - p) / 2.0],
        vec![(1.0 - p) / 2.0, p / 2.0],
    ];
    let i_exact = tasks as f64 * mutual_information(&bsc)?;
    let i_fano = rac.fano_information();

    Ok(ICGameResult {
        n_database_bits: tasks,
        n_message_bits: 1,
        success_probs: vec![p; tasks],
        i_exact,
        i_fano,
        violates_ic: i_exact.max(i_fano) > 1.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits;
    use crate::testutil::random_ns_box;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn bias(e: f64) -> Bias {
        Bias::new(e).unwrap()
    }

    fn iso(n: usize, e: f64) -> ConditionalBox {
        ConditionalBox::isotropic(n, bias(e)).unwrap()
    }

    #[test]
    fn entropy_reference_points() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        // h((1 + sqrt(2)/2)/2), 40-digit reference 0.6008760366928561008...
        let h_quantum = binary_entropy((1.0 + FRAC_1_SQRT_2) / 2.0).unwrap();
        assert!((h_quantum - 0.600_876_036_692_856).abs() < 1e-12);
        assert!(binary_entropy(-0.1).is_err());
        assert!(binary_entropy(1.1).is_err());
    }

    #[test]
    fn mutual_information_reference_points() {
        let independent = vec![vec![0.25; 2]; 2];
        assert_eq!(mutual_information(&independent).unwrap(), 0.0);

        let correlated = vec![vec![0.5, 0.0], vec![0.0, 0.5]];
        assert_eq!(mutual_information(&correlated).unwrap(), 1.0);

        // Binary symmetric channel at flip probability (1-e)/2, e = 0.5:
        // I = 1 - h(0.75), 40-digit reference 0.1887218755408671360...
        let bsc = vec![vec![0.375, 0.125], vec![0.125, 0.375]];
        let info = mutual_information(&bsc).unwrap();
        assert!((info - 0.188_721_875_540_867_14).abs() < 1e-12);

        assert!(mutual_information(&[vec![0.5, 0.4]]).is_err());
        assert!(mutual_information(&[vec![0.5, 0.5], vec![0.25]]).is_err());
    }

    #[test]
    fn extremal_box_wins_the_guess_game_outright() {
        let result = tripartite_guess_game(&iso(3, 1.0)).unwrap();
        assert_eq!(result.success_probs, vec![1.0, 1.0]);
        assert_eq!(result.i_fano, 2.0);
        assert_eq!(result.i_exact, 2.0);
        assert!(result.violates_ic);
        assert_eq!(result.n_message_bits, 1);
    }

    #[test]
    fn uniform_box_learns_nothing() {
        let result = tripartite_guess_game(&ConditionalBox::uniform(3).unwrap()).unwrap();
        assert_eq!(result.success_probs, vec![0.5, 0.5]);
        assert_eq!(result.i_exact, 0.0);
        assert_eq!(result.i_fano, 0.0);
        assert!(!result.violates_ic);
    }

    #[test]
    fn isotropic_guess_probabilities_are_the_bias_exactly() {
        for e in [0.0, 0.1, 0.25, 0.5, FRAC_1_SQRT_2, 0.8, 0.9, 1.0] {
            let result = tripartite_guess_game(&iso(3, e)).unwrap();
            let expected = (1.0 + e) / 2.0;
            assert_eq!(result.success_probs, vec![expected, expected], "e={e}");
            // On the isotropic family both tasks are symmetric channels,
            // so the exact information meets the Fano bound.
            assert!((result.i_exact - result.i_fano).abs() < 1e-12);
        }
    }

    #[test]
    fn guess_game_rejects_bad_boxes() {
        assert!(matches!(
            tripartite_guess_game(&ConditionalBox::uniform(2).unwrap()),
            Err(Error::PartyMismatch { .. })
        ));
        let outputs: Vec<usize> = (0..8).map(|x| (bits::parity(x) as usize) << 2).collect();
        let signaling = ConditionalBox::deterministic(3, &outputs).unwrap();
        assert!(matches!(
            tripartite_guess_game(&signaling),
            Err(Error::SignalingBox { .. })
        ));
    }

    #[test]
    fn fano_chain_on_random_ns_boxes() {
        for seed in 0..20 {
            let b = random_ns_box(3, seed);
            let result = tripartite_guess_game(&b).unwrap();
            assert!(result.i_exact >= result.i_fano - 1e-9, "seed={seed}");
            assert!(result.i_exact <= result.n_database_bits as f64 + 1e-9);
        }
    }

    #[test]
    fn rac_single_box_success_is_the_bias() {
        for e in [0.0, 0.4, 1.0] {
            let level = concatenated_rac_exact(bias(e), 1).unwrap();
            assert!(
                (level.per_bit_success - (1.0 + e) / 2.0).abs() < 1e-15,
                "e={e}"
            );
        }
    }

    #[test]
    fn rac_exact_reference_points() {
        let level = concatenated_rac_exact(bias(0.8), 2).unwrap();
        assert!((level.per_bit_success - 0.82).abs() < 1e-12);

        let perfect = concatenated_rac_exact(bias(1.0), 3).unwrap();
        assert!((perfect.per_bit_success - 1.0).abs() < 1e-15);

        assert!(concatenated_rac_exact(bias(0.5), 0).is_err());
        assert!(concatenated_rac_exact(bias(0.5), 4).is_err());
    }

    #[test]
    fn rac_exact_matches_analytic_law() {
        for depth in 1..=3 {
            for e in [0.0, 0.3, FRAC_1_SQRT_2, 0.9, 1.0] {
                let exact = concatenated_rac_exact(bias(e), depth).unwrap();
                let analytic = concatenated_rac_analytic(bias(e), depth).unwrap();
                assert!(
                    (exact.per_bit_success - analytic.per_bit_success).abs() < 1e-12,
                    "depth={depth} e={e}"
                );
            }
        }
    }

    #[test]
    fn analytic_reference_points() {
        let quantum = concatenated_rac_analytic(bias(FRAC_1_SQRT_2), 2).unwrap();
        assert!((quantum.per_bit_success - 0.75).abs() < 1e-12);
        // 40-digit reference 0.7548875021634685443...
        assert!((quantum.fano_information() - 0.754_887_502_163_468_5).abs() < 1e-12);

        let perfect = concatenated_rac_analytic(bias(1.0), 5).unwrap();
        assert_eq!(perfect.per_bit_success, 1.0);
        assert_eq!(perfect.fano_information(), 32.0);

        let noise = concatenated_rac_analytic(bias(0.0), 7).unwrap();
        assert_eq!(noise.per_bit_success, 0.5);
        assert_eq!(noise.fano_information(), 0.0);

        assert!(concatenated_rac_analytic(bias(0.5), 0).is_err());
    }

    #[test]
    fn fano_information_is_monotone_in_bias() {
        for depth in [1usize, 2, 5, 10] {
            let mut last = -1.0;
            for e in [0.0, 0.2, 0.4, 0.6, 0.8, 1.0] {
                let value = concatenated_rac_analytic(bias(e), depth)
                    .unwrap()
                    .fano_information();
                assert!(value >= last, "depth={depth} e={e}");
                last = value;
            }
        }
    }

    #[test]
    fn scan_finds_the_documented_thresholds() {
        assert_eq!(ic_violation_scan(bias(1.0), 20), Some(1));
        assert_eq!(ic_violation_scan(bias(FRAC_1_SQRT_2), 20), None);
        assert_eq!(ic_violation_scan(bias(0.60), 25), None);
        assert_eq!(ic_violation_scan(bias(0.65), 25), None);
        assert_eq!(ic_violation_scan(bias(0.70), 25), None);
        // Regression values for the grid used downstream.
        assert_eq!(ic_violation_scan(bias(0.72), 25), Some(10));
        assert_eq!(ic_violation_scan(bias(0.75), 25), Some(3));
        assert_eq!(ic_violation_scan(bias(0.80), 25), Some(1));
        assert_eq!(ic_violation_scan(bias(0.90), 25), Some(1));
    }

    #[test]
    fn at_the_quantum_bias_fano_information_stays_bounded() {
        // The sequence peaks at depth 1 and decays toward 1/(2 ln 2).
        let limit = 1.0 / (2.0 * std::f64::consts::LN_2);
        for k in 1..=25 {
            let value = concatenated_rac_analytic(bias(FRAC_1_SQRT_2), k)
                .unwrap()
                .fano_information();
            assert!(value < 1.0, "k={k}");
            assert!(value <= limit + 0.08, "k={k} value={value}");
        }
    }

    #[test]
    fn pipeline_reproduces_bipartite_behaviour() {
        let violating = end_to_end_multipartite_ic(5, bias(0.8), 2, 8).unwrap();
        assert!(violating.violates_ic);
        assert_eq!(violating.n_database_bits, 256);
        assert!((violating.success_probs[0] - (1.0 + 0.8f64.powi(8)) / 2.0).abs() < 1e-12);

        for split_k in 1..4 {
            let bounded = end_to_end_multipartite_ic(4, bias(FRAC_1_SQRT_2), split_k, 20).unwrap();
            assert!(!bounded.violates_ic, "split_k={split_k}");
        }

        let silent = end_to_end_multipartite_ic(3, bias(0.0), 1, 4).unwrap();
        assert_eq!(silent.i_fano, 0.0);
        assert_eq!(silent.i_exact, 0.0);

        assert!(end_to_end_multipartite_ic(3, bias(0.5), 3, 4).is_err());
        assert!(end_to_end_multipartite_ic(3, bias(0.5), 1, 0).is_err());
        assert!(end_to_end_multipartite_ic(3, bias(0.5), 1, 21).is_err());
    }
}
