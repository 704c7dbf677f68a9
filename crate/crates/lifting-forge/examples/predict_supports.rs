//! Predict filter supports from step radii alone and check the closed-form
//! polyphase support formulas.
//!
//! For cascades inside a group lifting structure the support of every
//! intermediate filter is forced: a two-term recursion in the support
//! radii (r0, r1), driven only by each step's filter radius t, pins down
//! the exact suppint of both channels after every stage. No coefficient
//! values are needed -- cancellation never shrinks the support. This
//! example generates a random deep cascade, runs the recursion, and
//! compares the prediction with the actually evaluated supports; then it
//! spot-checks the closed-form polyphase suppint formulas that feed the
//! recursion.
//!
//! Run with: `cargo run --example predict_supports`

use lifting_forge::laurent::{LaurentPoly, SupportInterval};
use lifting_forge::polyphase;
use lifting_forge::structures::{predict_radii, polyphase_suppint_formula, PhaseCenter, StructureKind};
use lifting_forge::testkit::{self, GenConfig};

fn main() -> lifting_forge::Result<()> {
    let mut rng = testkit::rng_from_seed(0xD1CE);
    let cfg = GenConfig { min_depth: 5, max_depth: 5, ..GenConfig::default() };
    let cascade = testkit::rand_ws_cascade(&mut rng, &cfg);
    println!(
        "random whole-sample cascade, depth {}, step radii {:?}",
        cascade.depth(),
        cascade.steps().iter().map(|s| s.filter().supp_rad().unwrap()).collect::<Vec<_>>(),
    );
    println!();

    // Radii in, suppints out: the recursion sees only (update, t) per step.
    let predicted = predict_radii(&cascade, StructureKind::WsIrreversible)?;
    let actual = cascade.trace();
    let actual_supps = actual.scalar_suppints();

    println!(
        "{:<6} {:>3} {:>4} {:>4}  {:<12} {:<12} {:<10}",
        "stage", "t", "r0", "r1", "ch0 suppint", "ch1 suppint", "actual"
    );
    println!(
        "{:<6} {:>3} {:>4} {:>4}  {:<12} {:<12} {:<10}",
        "base",
        "-",
        predicted.base_radius,
        predicted.base_radius,
        predicted.base_suppint0.to_string(),
        predicted.base_suppint1.to_string(),
        if (predicted.base_suppint0, predicted.base_suppint1) == actual_supps[0] {
            "match"
        } else {
            "MISMATCH"
        },
    );
    for (i, stage) in predicted.stages.iter().enumerate() {
        let ok = (stage.suppint0, stage.suppint1) == actual_supps[i + 1];
        println!(
            "{:<6} {:>3} {:>4} {:>4}  {:<12} {:<12} {:<10}",
            i,
            stage.t,
            stage.r0,
            stage.r1,
            stage.suppint0.to_string(),
            stage.suppint1.to_string(),
            if ok { "match" } else { "MISMATCH" },
        );
    }
    assert!(predicted.compare_with_trace(&actual).is_empty());
    println!();

    // The radii always differ by an odd gap, with the wider channel the
    // one most recently updated: the parity law.
    println!("parity law (radius gap is odd at every stage): {}", predicted.parity_law_holds());
    println!();

    // The recursion leans on closed-form formulas for the polyphase
    // suppint of a symmetric scalar filter: splitting F(z) into even and
    // odd taps halves the support in a center-dependent way. Check them
    // against the actual polyphase split for each centering convention.
    println!("polyphase suppint formulas vs actual splits:");
    for (name, center, filter) in [
        // symmetric about 0, radius 2: taps z^2 ... z^-2
        ("center 0   r=2", PhaseCenter::Zero, LaurentPoly::from_terms(
            (-2i64..=2).map(|n| (n, lifting_forge::laurent::rat(1 + n.abs()))),
        )),
        // symmetric about -1, radius 3: taps z^4 ... z^-2
        ("center -1  r=3", PhaseCenter::MinusOne, LaurentPoly::from_terms(
            (-4..=2).map(|n| (n, lifting_forge::laurent::rat(1))),
        )),
        // symmetric about -1/2, radius 2: taps z^2 ... z^-1
        ("center -1/2 r=2", PhaseCenter::MinusHalf, LaurentPoly::from_terms(
            (-2..=1).map(|n| (n, lifting_forge::laurent::rat(2))),
        )),
    ] {
        let r = filter.supp_rad()?;
        let formula = polyphase_suppint_formula(center, r)?;
        let split: SupportInterval = polyphase::analyze(&filter).suppint();
        println!(
            "  {name}: formula {formula}, actual {split}, {}",
            if formula == split { "match" } else { "MISMATCH" }
        );
        assert_eq!(formula, split);
    }
    Ok(())
}
