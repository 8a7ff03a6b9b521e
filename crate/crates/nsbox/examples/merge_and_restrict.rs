//! Turn an N-party box into a bipartite one: merge the left k parties and
//! the right N-k parties into two effective parties, then pin all but one
//! input bit per side.
//!
//! ```sh
//! cargo run --example merge_and_restrict
//! ```

use nsbox::svetlichny::svetlichny_probability;
use nsbox::wiring::{merge_parties, restrict_inputs, verify_simulation, GroupSplit};
use nsbox::{Bias, ConditionalBox};

fn main() -> nsbox::Result<()> {
    let e = 0.85;
    let bias = Bias::new(e)?;

    let source = ConditionalBox::isotropic(5, bias)?;
    let split = GroupSplit::new(5, 3)?;
    let merged = merge_parties(&source, split)?;
    println!(
        "merged 5-party box at k = 3: {} left / {} right input bits",
        merged.left_input_bits(),
        merged.right_input_bits()
    );
    let cut = merged.verify_cross_cut(1e-9);
    println!(
        "cross-cut no-signaling: {} (max discrepancy {:.3e})",
        cut.no_signaling, cut.max_marginal_discrepancy
    );

    let restricted = restrict_inputs(&merged, 0, 0)?;
    let success = svetlichny_probability(&restricted);
    let expected = (1.0 + e) / 2.0;
    println!("restricted bipartite box: P(A+B = xy) = {success} (expected {expected})");

    // Every split and every embedding reproduces the bipartite box.
    for n in 2..=6 {
        for k in 1..n {
            let ok = verify_simulation(
                &ConditionalBox::isotropic(n, bias)?,
                GroupSplit::new(n, k)?,
                bias,
            );
            assert!(ok, "n={n} k={k}");
        }
        println!(
            "N = {n}: all {} splits reproduce the bipartite box of the same bias",
            n - 1
        );
    }
    Ok(())
}
