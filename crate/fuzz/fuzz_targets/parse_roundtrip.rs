//! Display/parse consistency: the canonical rendering of every polynomial the
//! parser accepts must parse back to the same polynomial. Renderings start
//! with a positive leading coefficient (the grammar has no unary minus), so
//! factors are normalized before the round trip.

#![no_main]

use libfuzzer_sys::{fuzz_target, Corpus};

fuzz_target!(|data: &[u8]| -> Corpus {
    let Ok(input) = std::str::from_utf8(data) else {
        return Corpus::Reject;
    };
    let Ok(parsed) = ivp::expr::parse(input) else {
        return Corpus::Reject;
    };
    for (poly, _) in &parsed.numerator_factors {
        let (_, _, canonical) = poly.normalized();
        if canonical.is_zero() {
            continue;
        }
        let shown = canonical.to_string();
        let back = ivp::expr::parse(&shown)
            .unwrap_or_else(|e| panic!("canonical display {shown:?} must reparse: {e}"));
        assert_eq!(
            back.numerator_poly(),
            canonical,
            "display {shown:?} parsed back to a different polynomial"
        );
    }
    Corpus::Keep
});
