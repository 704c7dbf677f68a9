//! Build a lifting cascade by hand and evaluate it to its scalar filter
//! bank, watching the filters grow stage by stage.
//!
//! The cascade here is the depth-2 workhorse used throughout the test
//! suite: a lower step with the four-tap filter `z^2 + z + 1 + z^-1`,
//! then an upper step with the two-tap filter `1 + z^-1`, over the lazy
//! (identity) base. Evaluating it produces a 9-tap/7-tap symmetric pair.
//!
//! Run with: `cargo run --example evaluate_cascade`

use lifting_forge::laurent::{rat, LaurentPoly};
use lifting_forge::lifting::{Cascade, LiftingStep};
use num::One;

fn main() -> lifting_forge::Result<()> {
    // Filters are written as F(z) = sum_n f(n) z^-n, so the pair (n, c)
    // below is the tap f(n) = c. Negative n means a z^+|n| term.
    let s0 = LaurentPoly::from_terms([
        (-2, rat(1)), // z^2
        (-1, rat(1)), // z
        (0, rat(1)),  // 1
        (1, rat(1)),  // z^-1
    ]);
    let s1 = LaurentPoly::from_terms([(0, rat(1)), (1, rat(1))]); // 1 + z^-1

    // A lower step adds a filtered copy of channel 0 into channel 1; an
    // upper step goes the other way. The vector lists steps in the order
    // they act on the base: s0 first, then s1.
    let cascade = Cascade::from_steps(
        num::BigRational::one(),
        vec![LiftingStep::lower(s0)?, LiftingStep::upper(s1)?],
    )?;

    let bank = cascade.evaluate();
    let (h0, h1) = bank.scalar_filters();
    println!("evaluated bank:");
    println!("  h0 = {h0}");
    println!("  h1 = {h1}");
    println!("  det(polyphase) = {}", bank.det());
    println!();

    // The intermediate trace records every partial product, base first.
    // Each step strictly extends the support of the channel it updates:
    // the cascade is "order-increasing".
    println!("stage-by-stage supports (base first):");
    let trace = cascade.trace();
    for (i, ((supp0, supp1), order)) in
        trace.scalar_suppints().iter().zip(trace.orders()).enumerate()
    {
        let label =
            if i == 0 { "base".to_string() } else { format!("step {}", i - 1) };
        println!(
            "  {label:<7} ch0 {:<9} ch1 {:<9} matrix order {}",
            supp0.to_string(),
            supp1.to_string(),
            order.map_or_else(|| "-".into(), |o| o.to_string()),
        );
    }
    println!();
    println!("order-increasing: {}", cascade.is_order_increasing()?);
    println!("irreducible (updates strictly alternate): {}", cascade.is_irreducible());

    // Both filters are symmetric: h0 about 0, h1 about -1 (in the z^-n
    // indexing, reflection about the center fixes each filter).
    let (h0, h1) = bank.scalar_filters();
    println!();
    println!("h0 symmetry: {:?}", h0.symmetry()?);
    println!("h1 symmetry: {:?}", h1.symmetry()?);
    Ok(())
}
