//! Recover the 3/4 bound by exhausting every bipartition and every pair of
//! deterministic group strategies, then replay the winning strategy.
//!
//! ```sh
//! cargo run --example hybrid_local_bound
//! ```

use nsbox::svetlichny::{evaluate, hybrid_local_bound};

fn main() -> nsbox::Result<()> {
    for n in [2usize, 3] {
        let bound = hybrid_local_bound(n)?;
        println!(
            "N = {n}: max hybrid average = {} ({}/{} settings correct)",
            bound.max_average,
            bound.settings_correct,
            1 << n
        );
        println!(
            "  witness bipartition: left parties {:?}, right parties {:?}",
            bound.witness.left_parties, bound.witness.right_parties
        );
        println!(
            "  left outputs by group input: {:?}; right: {:?}",
            bound.witness.left_outputs, bound.witness.right_outputs
        );

        let replay = evaluate(&bound.witness.to_box(n)?);
        println!(
            "  replayed as a strategy box: avg = {}, violates hybrid bound = {}",
            replay.avg_probability, replay.violates_hybrid_bound
        );
        println!();
    }
    println!("No hybrid strategy beats 3/4; genuine multipartite boxes above it cannot be");
    println!("explained by any bipartition that is only classically correlated across the cut.");
    Ok(())
}
