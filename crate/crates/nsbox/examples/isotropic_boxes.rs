//! Build isotropic boxes, check them, and look at their tables.
//!
//! ```sh
//! cargo run --example isotropic_boxes
//! ```

use nsbox::bits;
use nsbox::{Bias, ConditionalBox};

fn main() -> nsbox::Result<()> {
    // The extremal tripartite box: output parity always matches the
    // pairwise input-product parity.
    let extremal = ConditionalBox::isotropic(3, Bias::new(1.0)?)?;
    println!("extremal tripartite box, row for inputs 111:");
    for (output, &p) in extremal.row(bits::parse("111", 3)?).iter().enumerate() {
        if p > 0.0 {
            println!("  P({} | 111) = {p}", bits::format(output, 3));
        }
    }

    // Every isotropic box is no-signaling with uniform local marginals.
    for e in [0.0, 0.5, 0.9] {
        let b = ConditionalBox::isotropic(4, Bias::new(e)?)?;
        let report = b.verify_no_signaling(1e-9);
        let marginal = b.marginal(&[0], 0b1010)?;
        println!(
            "E = {e}: no_signaling = {}, max discrepancy = {:.3e}, P(a_0 | 1010) = {marginal:?}",
            report.no_signaling, report.max_marginal_discrepancy
        );
    }

    // Seeded sampling is reproducible.
    let pr = ConditionalBox::bipartite_isotropic(Bias::new(1.0)?)?;
    let input = bits::parse("11", 2)?;
    let draws: Vec<String> = (0..8)
        .map(|seed| bits::format(pr.sample(input, seed).unwrap(), 2))
        .collect();
    println!("PR box outputs at inputs 11, seeds 0..8: {draws:?} (always odd parity)");

    // Boxes serialize to JSON for the CLI.
    let small = ConditionalBox::bipartite_isotropic(Bias::new(0.5)?)?;
    println!(
        "\nbipartite E = 0.5 box as JSON:\n{}",
        serde_json::to_string_pretty(&small)?
    );
    Ok(())
}
