//! Check cascades against group lifting structures and read the violation
//! reports when they fail.
//!
//! A group lifting structure fixes three things: the allowed base
//! matrices, the allowed gains, and the symmetry class each step filter
//! must satisfy. Membership reports every broken rule with the stage it
//! happened at, so a rejected cascade explains itself. Irreducibility --
//! updates strictly alternating between channels -- is a separate
//! predicate on top: canonical factorizations are the irreducible members.
//!
//! Run with: `cargo run --example verify_structure`

use lifting_forge::laurent::{rat, ratio, LaurentPoly};
use lifting_forge::lifting::{Cascade, LiftingStep};
use lifting_forge::structures::{
    cascade_in_structure, check_support_covering, summarize_violations, StructureKind,
};
use lifting_forge::testkit;

fn report(label: &str, cascade: &Cascade, kind: StructureKind) {
    let membership = cascade_in_structure(cascade, kind);
    println!("{label} vs {kind}:");
    println!("  member: {}", membership.verdict());
    if !membership.violations.is_empty() {
        println!("  violations: {}", summarize_violations(&membership.violations));
    }
    for note in &membership.notes {
        println!("  note: {note}");
    }
    println!();
}

fn main() -> lifting_forge::Result<()> {
    // The worked depth-2 cascade satisfies the reversible whole-sample
    // structure: identity base, unit gain, dyadic symmetric steps,
    // alternating updates.
    let good = testkit::worked_cascade();
    report("worked cascade", &good, StructureKind::WsReversible);

    // Support covering is the geometric half of the story: each step's
    // contribution strictly covers the filters it updates, which is what
    // makes the factorization peelable from the outside in.
    let covering = check_support_covering(&good, StructureKind::WsReversible)?;
    println!("support covering holds: {}", covering.verdict());
    println!();

    // Case 1: repeat an update character. The cascade is still *in* the
    // group -- membership looks at filters, base, and gain, and any
    // product of admissible steps belongs -- but it is reducible: the two
    // lower steps merge into one, so it cannot be the canonical
    // factorization. Irreducibility is its own predicate.
    let s = LaurentPoly::from_terms([(-1, rat(1)), (0, rat(1))]);
    let reducible = Cascade::from_steps(
        rat(1),
        vec![LiftingStep::lower(s.clone())?, LiftingStep::lower(s.clone())?],
    )?;
    report("reducible cascade", &reducible, StructureKind::WsReversible);
    println!("repeated lower steps => irreducible: {}", reducible.is_irreducible());
    println!();

    // Case 2: a non-dyadic coefficient. The irreversible structure
    // accepts it; the reversible structure (integer-to-integer lifting
    // needs dyadic coefficients) rejects it.
    let third = Cascade::from_steps(
        rat(1),
        vec![
            LiftingStep::upper(LaurentPoly::from_terms([(0, ratio(1, 3)), (1, ratio(1, 3))]))?,
            LiftingStep::lower(s)?,
        ],
    )?;
    report("cascade with a 1/3 tap", &third, StructureKind::WsIrreversible);
    report("cascade with a 1/3 tap", &third, StructureKind::WsReversible);

    // Case 3: a step filter with the wrong symmetry axis. Upper step
    // filters must be half-sample symmetric about +1/2; this one is
    // centered on -1/2 and gets flagged at its stage index.
    let skewed = Cascade::from_steps(
        rat(1),
        vec![LiftingStep::upper(LaurentPoly::from_terms([(0, rat(1)), (-1, rat(1))]))?],
    )?;
    report("upper step centered on -1/2", &skewed, StructureKind::WsIrreversible);
    Ok(())
}
