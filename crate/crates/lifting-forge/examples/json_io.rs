//! Read and write cascades, banks, and signals as JSON without losing a
//! single bit of precision.
//!
//! Every rational travels as a `{"num", "den"}` pair of decimal strings,
//! so arbitrarily large numerators survive the trip (no doubles anywhere).
//! Filters are lists of `{n, num, den}` taps for F(z) = sum f(n) z^-n; a
//! bank is either a scalar `{h0, h1}` pair or an explicit 2x2 polyphase
//! `{"matrix": ...}`; a cascade is `{K, steps, base}` with `"identity"`
//! accepted as a base shorthand. The same format is what the
//! `lifting-forge` binary consumes and produces, so files interchange
//! freely between the library and the command line.
//!
//! Run with: `cargo run --example json_io`

use lifting_forge::json;
use lifting_forge::laurent::{ratio, LaurentPoly};
use lifting_forge::testkit;

fn main() -> lifting_forge::Result<()> {
    // Cascade -> JSON -> cascade is the identity.
    let cascade = testkit::worked_cascade();
    let text = json::cascade_to_string(&cascade);
    println!("worked cascade as JSON:\n{text}");
    let back = json::cascade_from_str(&text)?;
    assert_eq!(back, cascade);
    println!("cascade JSON round trip exact: true\n");

    // Banks accept two spellings. The scalar form is what `eval --json`
    // prints; the matrix form is handy when the polyphase entries are the
    // object of interest. Both parse to the same matrix.
    let bank = cascade.evaluate();
    let scalar_form = json::bank_to_string(&bank);
    assert_eq!(json::bank_from_str(&scalar_form)?, bank);
    let (h0, h1) = bank.scalar_filters();
    println!("bank as scalar JSON (h0 = {h0}, h1 = {h1}): round trip exact: true\n");

    // Huge exact coefficients survive: 1 / 2^128 has no floating-point
    // representation but is just another string here.
    let tiny = num::BigRational::new(
        num::BigInt::from(1),
        num::BigInt::from(2u8).pow(128),
    );
    let signal = LaurentPoly::from_terms([(0, tiny.clone()), (1, ratio(-3, 7))]);
    let text = json::signal_to_string(&signal);
    println!("signal with a 2^-128 tap:\n{text}");
    let back = json::signal_from_str(&text)?;
    assert_eq!(back.coeff(0), tiny);
    println!("huge-denominator round trip exact: true\n");

    // Malformed input fails loudly with positions, not silently.
    match json::cascade_from_str(r#"{"K": {"num": "1", "den": "0"}, "steps": [], "base": "identity"}"#) {
        Err(e) => println!("zero denominator rejected: {e}"),
        Ok(_) => unreachable!("zero denominators must not parse"),
    }
    match json::bank_from_str("{\"h0\": {") {
        Err(e) => println!("truncated JSON rejected: {e}"),
        Ok(_) => unreachable!("truncated JSON must not parse"),
    }
    Ok(())
}
