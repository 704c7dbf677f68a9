//! Factor half-sample symmetric banks and canonicalize away the rescaling
//! freedom.
//!
//! Even-length linear-phase banks (h0 symmetric, h1 antisymmetric, both
//! about -1/2) factor into whole-sample *antisymmetric* lifting steps over
//! a two-tap-style base matrix instead of the lazy base. Unlike the
//! whole-sample case the representation is unique only *modulo rescaling*:
//! a diagonal gain can sit in the scalar gain `K`, in the base, or spread
//! between them, conjugating every step filter on the way. This example
//! shows the freedom explicitly and then removes it with the unit-DC
//! normalization, which scales the base lowpass to DC value 1.
//!
//! Run with: `cargo run --example factor_half_sample`

use lifting_forge::factor::{factor_hs, normalize_cascade, transfer_gain, Normalization};
use lifting_forge::laurent::{rat, ratio, LaurentPoly};
use lifting_forge::lifting::{Cascade, LiftingStep};
use lifting_forge::testkit;
use num::One;

fn main() -> lifting_forge::Result<()> {
    // One upper step with the antisymmetric filter (1/4)(z - z^-1) over
    // the orthogonal two-tap base [[1/2, 1/2], [-1, 1]].
    let step =
        LiftingStep::upper(LaurentPoly::from_terms([(-1, ratio(1, 4)), (1, ratio(-1, 4))]))?;
    let original =
        Cascade::new(num::BigRational::one(), vec![step], testkit::haar_base())?;
    let bank = original.evaluate();
    let (h0, h1) = bank.scalar_filters();
    println!("half-sample bank:");
    println!("  h0 = {h0}");
    println!("  h1 = {h1}");
    println!();

    // Factoring recovers the cascade; the certificate's kind is the
    // reversible structure because every coefficient is dyadic.
    let result = factor_hs(&bank)?;
    println!("{result}");
    assert_eq!(result.cascade, original);

    // The rescaling freedom: transfer a gain of 3 out of K and into the
    // base. The triple changes -- K becomes 1/3, the base rows scale by
    // (1/3, 3), each step filter is conjugated -- yet the product is the
    // same matrix.
    let shifted = transfer_gain(&result.cascade, &rat(3))?;
    println!("after moving a gain of 3 into the base:");
    println!("  K = {}", shifted.gain());
    println!("  step 0 filter = {}", shifted.steps()[0].filter());
    assert_eq!(shifted.evaluate(), bank);
    assert_ne!(shifted, result.cascade);

    // Unit-DC normalization picks one representative per rescaling class:
    // both triples collapse to the same cascade.
    let canonical_a = normalize_cascade(&result.cascade, Normalization::UnitDc)?;
    let canonical_b = normalize_cascade(&shifted, Normalization::UnitDc)?;
    assert_eq!(canonical_a, canonical_b);
    println!();
    println!("unit-DC normalization maps both representations to one cascade: true");

    // The same convention also separates genuinely rescaled *banks*: scale
    // the channels by 5 and 1/5 and the normalized factorization keeps the
    // identical steps and base, pushing the 5 into the gain.
    let rescaled_bank = bank.scale_rows(&rat(5), &ratio(1, 5));
    let rescaled = normalize_cascade(&factor_hs(&rescaled_bank)?.cascade, Normalization::UnitDc)?;
    assert_eq!(rescaled.steps(), canonical_a.steps());
    assert_eq!(rescaled.base(), canonical_a.base());
    println!();
    println!("bank with channels scaled by (5, 1/5):");
    println!("  same steps and base after normalization: true");
    println!("  gain K = {} (was {})", rescaled.gain(), canonical_a.gain());
    Ok(())
}
