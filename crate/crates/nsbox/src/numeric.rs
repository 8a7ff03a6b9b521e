//! Balanced summation used wherever class probabilities must come out exact.

/// Sum by pairwise (tree) reduction.
///
/// For the dyadic tables built in this crate the leaf pairs are either equal
/// values or complementary class weights, so the reduction is exact where a
/// left-to-right fold would accumulate rounding.
pub(crate) fn pairwise_sum(values: &mut Vec<f64>) -> f64 {
    while values.len() > 1 {
        let mut next = Vec::with_capacity(values.len() / 2 + 1);
        let mut chunks = values.chunks_exact(2);
        for pair in &mut chunks {
            next.push(pair[0] + pair[1]);
        }
        if let [odd] = chunks.remainder() {
            next.push(*odd);
        }
        *values = next;
    }
    values.first().copied().unwrap_or(0.0)
}

/// Pairwise sum of an iterator; see [`pairwise_sum`].
pub(crate) fn pairwise_sum_iter(values: impl Iterator<Item = f64>) -> f64 {
    let mut buf: Vec<f64> = values.collect();
    pairwise_sum(&mut buf)
}
