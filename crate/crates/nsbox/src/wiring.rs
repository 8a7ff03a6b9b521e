//! Wirings that merge blocks of parties into effective single parties.
//!
//! Splitting N parties into a left block of k and a right block of N-k and
//! XOR-ing each block's outputs with its internal pairwise input correction
//! turns an N-party box into an effective bipartite box with k and N-k
//! input bits. The GF(2) identity
//!
//! ```text
//! ⊕_{i<j<=N} x_i x_j = ⊕_{i<j<=k} x_i x_j ⊕ ⊕_{k<i<j} x_i x_j
//!                      ⊕ (x_1⊕...⊕x_k)(x_{k+1}⊕...⊕x_N)
//! ```
//!
//! makes the merged box win the two-party parity game with the bias of the
//! source box, so pinning all but one input bit per side recovers a
//! standard bipartite box of the same bias.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bits;
use crate::boxes::{Bias, ConditionalBox, NoSignalingReport, PROB_TOL};
use crate::error::{Error, Result};
use crate::numeric::pairwise_sum;

/// Partition of N parties into a left block (parties 0..k) and a right
/// block (parties k..N).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSplit {
    n_parties: usize,
    k: usize,
}

impl GroupSplit {
    pub fn new(n_parties: usize, k: usize) -> Result<Self> {
        if k == 0 || k >= n_parties {
            return Err(Error::BadSplit { n: n_parties, k });
        }
        Ok(GroupSplit { n_parties, k })
    }

    #[inline]
    pub fn n_parties(&self) -> usize {
        self.n_parties
    }

    /// Size of the left block.
    #[inline]
    pub fn left_size(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn right_size(&self) -> usize {
        self.n_parties - self.k
    }
}

/// Effective bipartite box with k input bits on the left and N-k on the
/// right; outputs are the two block bits (A, B).
#[derive(Debug, Clone, PartialEq)]
pub struct MergedBipartiteBox {
    split: GroupSplit,
    /// Row-major: `table[input * 4 + (A << 1 | B)]`, with `input` the full
    /// N-bit joint input string.
    table: Vec<f64>,
}

impl MergedBipartiteBox {
    #[inline]
    pub fn split(&self) -> GroupSplit {
        self.split
    }

    #[inline]
    pub fn left_input_bits(&self) -> usize {
        self.split.left_size()
    }

    #[inline]
    pub fn right_input_bits(&self) -> usize {
        self.split.right_size()
    }

    /// Number of joint input strings, 2^N.
    #[inline]
    pub fn n_inputs(&self) -> usize {
        1usize << self.split.n_parties()
    }

    /// P(A, B | joint input).
    #[inline]
    pub fn prob(&self, input: usize, a: u8, b: u8) -> f64 {
        self.table[input * 4 + ((a as usize) << 1 | b as usize)]
    }

    #[inline]
    pub fn row(&self, input: usize) -> &[f64] {
        &self.table[input * 4..input * 4 + 4]
    }

    /// Normalization plus no-signaling across the block cut: A's marginal
    /// may not depend on right inputs, B's not on left inputs.
    pub fn verify_cross_cut(&self, tol: f64) -> NoSignalingReport {
        let mut max_norm = 0.0f64;
        for input in 0..self.n_inputs() {
            let sum: f64 = self.row(input).iter().sum();
            max_norm = max_norm.max((sum - 1.0).abs());
        }

        let right_bits = self.split.right_size();
        let left_count = 1usize << self.split.left_size();
        let right_count = 1usize << right_bits;
        let mut max_disc = 0.0f64;
        for left in 0..left_count {
            let base = left << right_bits;
            let reference: Vec<f64> = (0..2)
                .map(|a| self.prob(base, a, 0) + self.prob(base, a, 1))
                .collect();
            for right in 1..right_count {
                for (a, &r) in reference.iter().enumerate() {
                    let p =
                        self.prob(base | right, a as u8, 0) + self.prob(base | right, a as u8, 1);
                    max_disc = max_disc.max((p - r).abs());
                }
            }
        }
        for right in 0..right_count {
            let reference: Vec<f64> = (0..2)
                .map(|b| self.prob(right, 0, b) + self.prob(right, 1, b))
                .collect();
            for left in 1..left_count {
                let input = (left << right_bits) | right;
                for (b, &r) in reference.iter().enumerate() {
                    let p = self.prob(input, 0, b as u8) + self.prob(input, 1, b as u8);
                    max_disc = max_disc.max((p - r).abs());
                }
            }
        }

        NoSignalingReport {
            normalized: max_norm <= tol,
            no_signaling: max_disc <= tol,
            max_normalization_error: max_norm,
            max_marginal_discrepancy: max_disc,
        }
    }
}

/// Push an N-party box through the block-parity maps of `split`:
/// `A = ⊕_{i<=k} a_i ⊕ ⊕_{i<j<=k} x_i x_j` and symmetrically for B.
///
/// A box that fails no-signaling is refused; pushing it forward would
/// produce an unphysical "bipartite box".
pub fn merge_parties(b: &ConditionalBox, split: GroupSplit) -> Result<MergedBipartiteBox> {
    if split.n_parties() != b.n_parties() {
        return Err(Error::PartyMismatch {
            got: b.n_parties(),
            expected: split.n_parties(),
        });
    }
    let report = b.verify_no_signaling(PROB_TOL);
    if !report.no_signaling {
        return Err(Error::SignalingBox {
            discrepancy: report.max_marginal_discrepancy,
        });
    }

    let right_bits = split.right_size();
    let right_mask = (1usize << right_bits) - 1;
    let mut table = vec![0.0; b.n_strings() * 4];
    for input in 0..b.n_strings() {
        let corr_left = bits::pairwise_parity(input >> right_bits);
        let corr_right = bits::pairwise_parity(input & right_mask);
        let mut buckets: Vec<Vec<f64>> = vec![Vec::new(); 4];
        for (output, &p) in b.row(input).iter().enumerate() {
            let a = bits::parity(output >> right_bits) ^ corr_left;
            let bb = bits::parity(output & right_mask) ^ corr_right;
            buckets[(a as usize) << 1 | bb as usize].push(p);
        }
        for (slot, mut bucket) in buckets.into_iter().enumerate() {
            table[input * 4 + slot] = pairwise_sum(&mut bucket);
        }
    }
    Ok(MergedBipartiteBox { split, table })
}

/// Pin every input bit to 0 except one live bit per side, yielding a
/// standard one-input-bit-per-party bipartite box. `left_live` and
/// `right_live` are positions within their blocks.
pub fn restrict_inputs(
    merged: &MergedBipartiteBox,
    left_live: usize,
    right_live: usize,
) -> Result<ConditionalBox> {
    let split = merged.split();
    if left_live >= split.left_size() || right_live >= split.right_size() {
        return Err(Error::IndexRange {
            index: left_live.max(right_live),
            bits: split.n_parties(),
        });
    }
    let right_bits = split.right_size();
    let mut table = vec![0.0; 16];
    for x in 0..2usize {
        for z in 0..2usize {
            let left = (x << (split.left_size() - 1 - left_live)) << right_bits;
            let right = z << (right_bits - 1 - right_live);
            let row = merged.row(left | right);
            let input = (x << 1) | z;
            table[input * 4..input * 4 + 4].copy_from_slice(row);
        }
    }
    ConditionalBox::from_table(2, table)
}

/// End-to-end check that merging an isotropic N-party box and restricting
/// it, for every embedding choice, reproduces the bipartite isotropic box
/// of the same bias within 1e-9. Returns false on any mismatch.
pub fn verify_simulation(b: &ConditionalBox, split: GroupSplit, bias: Bias) -> bool {
    let Ok(reference) = ConditionalBox::bipartite_isotropic(bias) else {
        return false;
    };
    let Ok(merged) = merge_parties(b, split) else {
        return false;
    };
    for left_live in 0..split.left_size() {
        for right_live in 0..split.right_size() {
            let Ok(restricted) = restrict_inputs(&merged, left_live, right_live) else {
                return false;
            };
            for input in 0..4 {
                for output in 0..4 {
                    let diff =
                        (restricted.prob(input, output) - reference.prob(input, output)).abs();
                    if diff > 1e-9 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// On-disk form: the box serialization plus the split point.
#[derive(Serialize, Deserialize)]
struct MergedFile {
    n_parties: usize,
    split: usize,
    table: BTreeMap<String, Vec<f64>>,
}

impl From<&MergedBipartiteBox> for MergedFile {
    fn from(value: &MergedBipartiteBox) -> Self {
        let n = value.split.n_parties();
        MergedFile {
            n_parties: n,
            split: value.split.left_size(),
            table: (0..value.n_inputs())
                .map(|input| (bits::format(input, n), value.row(input).to_vec()))
                .collect(),
        }
    }
}

impl TryFrom<MergedFile> for MergedBipartiteBox {
    type Error = Error;

    fn try_from(file: MergedFile) -> Result<Self> {
        let split = GroupSplit::new(file.n_parties, file.split)?;
        let n_inputs = 1usize << file.n_parties;
        if file.table.len() != n_inputs {
            return Err(Error::BadTableShape(format!(
                "{} input rows, expected {}",
                file.table.len(),
                n_inputs
            )));
        }
        let mut table = vec![f64::NAN; n_inputs * 4];
        for (key, row) in &file.table {
            let input = bits::parse(key, file.n_parties)?;
            if row.len() != 4 {
                return Err(Error::BadTableShape(key.clone()));
            }
            for &p in row {
                if !p.is_finite() || !(0.0..=1.0).contains(&p) {
                    return Err(Error::BadTableEntry {
                        input: key.clone(),
                        value: p,
                    });
                }
            }
            table[input * 4..input * 4 + 4].copy_from_slice(row);
        }
        Ok(MergedBipartiteBox { split, table })
    }
}

impl Serialize for MergedBipartiteBox {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        MergedFile::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MergedBipartiteBox {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let file = MergedFile::deserialize(deserializer)?;
        MergedBipartiteBox::try_from(file).map_err(serde::de::Error::custom)
    }
}
