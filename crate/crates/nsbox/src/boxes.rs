//! N-party binary no-signaling boxes as dense conditional probability tables.
//!
//! A box holds P(outputs | inputs) for N parties, each with one input bit
//! and one output bit. Rows are indexed by the N-bit input string, columns
//! by the N-bit output string, both under the [`crate::bits`] convention
//! (party 0 leftmost). The dense table is 2^N x 2^N, which is tiny at desk
//! scale; [`MAX_PARTIES`] caps it at 2^20 entries.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bits;
use crate::error::{Error, Result};
use crate::numeric::{pairwise_sum, pairwise_sum_iter};

/// Largest supported party count; the table has 4^N entries.
pub const MAX_PARTIES: usize = 10;

/// Default tolerance for normalization and no-signaling checks.
pub const PROB_TOL: f64 = 1e-9;

/// Isotropy parameter E of the one-parameter box family, clamped to [0, 1]
/// at construction. E = 0 is uncorrelated noise, E = 1 the extremal box.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Bias(f64);

impl Bias {
    pub fn new(e: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&e) {
            return Err(Error::BiasRange(e));
        }
        Ok(Bias(e))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Bias {
    type Error = Error;
    fn try_from(e: f64) -> Result<Self> {
        Bias::new(e)
    }
}

/// Outcome of [`ConditionalBox::verify_no_signaling`].
///
/// The discrepancy fields are the maxima actually attained over every
/// checked condition, so a report is useful even when the flags are false.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NoSignalingReport {
    pub normalized: bool,
    pub no_signaling: bool,
    pub max_normalization_error: f64,
    pub max_marginal_discrepancy: f64,
}

/// Dense conditional probability table of an N-party binary box.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalBox {
    n_parties: usize,
    /// Row-major: `table[input * 2^N + output]`.
    table: Vec<f64>,
}

fn check_parties(n_parties: usize) -> Result<()> {
    if !(2..=MAX_PARTIES).contains(&n_parties) {
        return Err(Error::PartyCount(n_parties));
    }
    Ok(())
}

impl ConditionalBox {
    /// Isotropic box: the output-parity condition
    /// `⊕ a_i = ⊕_{i<j} x_i x_j` holds with probability (1+E)/2 for every
    /// input, and each output string consistent with a parity class gets an
    /// equal share of that class's weight. All local marginals are uniform.
    pub fn isotropic(n_parties: usize, bias: Bias) -> Result<Self> {
        check_parties(n_parties)?;
        let strings = 1usize << n_parties;
        let class = (strings / 2) as f64;
        let hi = (1.0 + bias.value()) / 2.0 / class;
        let lo = (1.0 - bias.value()) / 2.0 / class;
        let mut table = Vec::with_capacity(strings * strings);
        for input in 0..strings {
            let target = bits::pairwise_parity(input);
            for output in 0..strings {
                table.push(if bits::parity(output) == target {
                    hi
                } else {
                    lo
                });
            }
        }
        Ok(ConditionalBox { n_parties, table })
    }

    /// Two-party isotropic box, `P(a ⊕ b = xy) = (1+E)/2`; E = 1 is the
    /// PR box, E = 0 the uniform box.
    pub fn bipartite_isotropic(bias: Bias) -> Result<Self> {
        Self::isotropic(2, bias)
    }

    /// Uniform box: every output string equally likely for every input.
    pub fn uniform(n_parties: usize) -> Result<Self> {
        Self::isotropic(n_parties, Bias::new(0.0)?)
    }

    /// Deterministic strategy box: probability 1 on `outputs[input]` for
    /// each input string. These are strategy atoms for bound oracles; they
    /// generally signal and are expected to fail [`Self::verify_no_signaling`].
    pub fn deterministic(n_parties: usize, outputs: &[usize]) -> Result<Self> {
        check_parties(n_parties)?;
        let strings = 1usize << n_parties;
        if outputs.len() != strings {
            return Err(Error::StrategyLength {
                got: outputs.len(),
                expected: strings,
            });
        }
        let mut table = vec![0.0; strings * strings];
        for (input, &output) in outputs.iter().enumerate() {
            if output >= strings {
                return Err(Error::IndexRange {
                    index: output,
                    bits: n_parties,
                });
            }
            table[input * strings + output] = 1.0;
        }
        Ok(ConditionalBox { n_parties, table })
    }

    /// Build from a raw row-major table; entries must be probabilities.
    pub fn from_table(n_parties: usize, table: Vec<f64>) -> Result<Self> {
        check_parties(n_parties)?;
        let strings = 1usize << n_parties;
        if table.len() != strings * strings {
            return Err(Error::BadTableShape(format!(
                "{} entries, expected {}",
                table.len(),
                strings * strings
            )));
        }
        for (idx, &p) in table.iter().enumerate() {
            if !p.is_finite() || !(0.0..=1.0).contains(&p) {
                return Err(Error::BadTableEntry {
                    input: bits::format(idx / strings, n_parties),
                    value: p,
                });
            }
        }
        Ok(ConditionalBox { n_parties, table })
    }

    /// Convex mixture of boxes over the same party count. Weights must be
    /// nonnegative and sum to 1 within [`PROB_TOL`].
    pub fn mixture(components: &[(f64, &ConditionalBox)]) -> Result<Self> {
        let (_, first) = components.first().ok_or(Error::EmptySubset)?;
        let n_parties = first.n_parties;
        let total: f64 = components.iter().map(|(w, _)| *w).sum();
        if (total - 1.0).abs() > PROB_TOL || components.iter().any(|(w, _)| *w < 0.0) {
            return Err(Error::ProbabilityRange(total));
        }
        let mut table = vec![0.0; first.table.len()];
        for (weight, component) in components {
            if component.n_parties != n_parties {
                return Err(Error::PartyMismatch {
                    got: component.n_parties,
                    expected: n_parties,
                });
            }
            for (acc, &p) in table.iter_mut().zip(&component.table) {
                *acc += weight * p;
            }
        }
        // Mixing can overshoot 1.0 by an ulp; clamp so the result is again a
        // valid table.
        for p in &mut table {
            *p = p.clamp(0.0, 1.0);
        }
        Ok(ConditionalBox { n_parties, table })
    }

    #[inline]
    pub fn n_parties(&self) -> usize {
        self.n_parties
    }

    /// Number of input (equivalently output) strings, 2^N.
    #[inline]
    pub fn n_strings(&self) -> usize {
        1usize << self.n_parties
    }

    /// P(output | input).
    #[inline]
    pub fn prob(&self, input: usize, output: usize) -> f64 {
        self.table[input * self.n_strings() + output]
    }

    /// The conditional row for one input string.
    #[inline]
    pub fn row(&self, input: usize) -> &[f64] {
        let s = self.n_strings();
        &self.table[input * s..(input + 1) * s]
    }

    pub(crate) fn check_input(&self, input: usize) -> Result<()> {
        if input >= self.n_strings() {
            return Err(Error::IndexRange {
                index: input,
                bits: self.n_parties,
            });
        }
        Ok(())
    }

    /// Probability that the output parity `⊕ a_i` equals `target` given
    /// `input`. Summed pairwise so that isotropic class weights are exact.
    pub fn parity_class_probability(&self, input: usize, target: u8) -> f64 {
        pairwise_sum_iter(
            self.row(input)
                .iter()
                .enumerate()
                .filter(|(o, _)| bits::parity(*o) == target)
                .map(|(_, &p)| p),
        )
    }

    /// Exact marginal distribution over the outputs of `parties` (a strictly
    /// increasing list of 0-based indices) for one input string. The result
    /// is indexed by the subset's output bits, first listed party leftmost.
    pub fn marginal(&self, parties: &[usize], input: usize) -> Result<Vec<f64>> {
        self.check_input(input)?;
        if parties.is_empty() {
            return Err(Error::EmptySubset);
        }
        let strictly_increasing = parties.windows(2).all(|w| w[0] < w[1]);
        if !strictly_increasing || *parties.last().unwrap() >= self.n_parties {
            return Err(Error::BadSubset);
        }
        let s = parties.len();
        let mut out = vec![0.0; 1 << s];
        let mut buckets: Vec<Vec<f64>> = vec![Vec::with_capacity(self.n_strings() >> s); 1 << s];
        for (output, &p) in self.row(input).iter().enumerate() {
            let mut key = 0usize;
            for &party in parties {
                key = (key << 1) | bits::bit(output, self.n_parties, party) as usize;
            }
            buckets[key].push(p);
        }
        for (slot, mut bucket) in out.iter_mut().zip(buckets) {
            *slot = pairwise_sum(&mut bucket);
        }
        Ok(out)
    }

    /// Marginal over everyone except `party`, indexed by the remaining
    /// parties' output bits in their original order.
    fn marginal_excluding(&self, party: usize, input: usize) -> Vec<f64> {
        let n = self.n_parties;
        let low_mask = (1usize << (n - 1 - party)) - 1;
        let mut buckets: Vec<Vec<f64>> = vec![Vec::with_capacity(2); 1 << (n - 1)];
        for (output, &p) in self.row(input).iter().enumerate() {
            let key = ((output >> (n - party)) << (n - 1 - party)) | (output & low_mask);
            buckets[key].push(p);
        }
        buckets
            .into_iter()
            .map(|mut b| pairwise_sum(&mut b))
            .collect()
    }

    /// Check normalization of every row and the one-party no-signaling
    /// condition for every party and every input pair. The one-party
    /// condition for all parties implies no-signaling for every subset.
    pub fn verify_no_signaling(&self, tol: f64) -> NoSignalingReport {
        let mut max_norm = 0.0f64;
        for input in 0..self.n_strings() {
            let sum = pairwise_sum_iter(self.row(input).iter().copied());
            max_norm = max_norm.max((sum - 1.0).abs());
        }
        let mut max_disc = 0.0f64;
        for party in 0..self.n_parties {
            let mask = 1usize << (self.n_parties - 1 - party);
            for input in 0..self.n_strings() {
                if input & mask != 0 {
                    continue;
                }
                let lo = self.marginal_excluding(party, input);
                let hi = self.marginal_excluding(party, input | mask);
                for (a, b) in lo.iter().zip(&hi) {
                    max_disc = max_disc.max((a - b).abs());
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

    /// Draw one output string for `input`; deterministic in `seed`.
    pub fn sample(&self, input: usize, seed: u64) -> Result<usize> {
        self.check_input(input)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u: f64 = rng.random();
        let mut acc = 0.0;
        let mut last_support = 0;
        for (output, &p) in self.row(input).iter().enumerate() {
            if p > 0.0 {
                last_support = output;
            }
            acc += p;
            if u < acc {
                return Ok(output);
            }
        }
        Ok(last_support)
    }
}

/// On-disk form: `n_parties` plus a map from input bit-string to the row of
/// 2^N probabilities in lexicographic output order, party 0 leftmost.
#[derive(Serialize, Deserialize)]
struct BoxFile {
    n_parties: usize,
    table: BTreeMap<String, Vec<f64>>,
}

impl From<&ConditionalBox> for BoxFile {
    fn from(value: &ConditionalBox) -> Self {
        let n = value.n_parties;
        let table = (0..value.n_strings())
            .map(|input| (bits::format(input, n), value.row(input).to_vec()))
            .collect();
        BoxFile {
            n_parties: n,
            table,
        }
    }
}

impl TryFrom<BoxFile> for ConditionalBox {
    type Error = Error;

    fn try_from(file: BoxFile) -> Result<Self> {
        check_parties(file.n_parties)?;
        let strings = 1usize << file.n_parties;
        let mut table = vec![f64::NAN; strings * strings];
        if file.table.len() != strings {
            return Err(Error::BadTableShape(format!(
                "{} input rows, expected {}",
                file.table.len(),
                strings
            )));
        }
        for (key, row) in &file.table {
            let input = bits::parse(key, file.n_parties)?;
            if row.len() != strings {
                return Err(Error::BadTableShape(key.clone()));
            }
            table[input * strings..(input + 1) * strings].copy_from_slice(row);
        }
        ConditionalBox::from_table(file.n_parties, table)
    }
}

impl Serialize for ConditionalBox {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        BoxFile::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ConditionalBox {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let file = BoxFile::deserialize(deserializer)?;
        ConditionalBox::try_from(file).map_err(serde::de::Error::custom)
    }
}
