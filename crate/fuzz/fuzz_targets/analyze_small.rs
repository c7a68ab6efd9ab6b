//! Differential end-to-end fuzzing: on desk-sized inputs the full pipeline
//! (parse, validate, factor) must not panic, its factorizations must multiply
//! back to the input, and on the smallest instances the covering algorithm
//! must agree with the brute-force oracle.

#![no_main]

use libfuzzer_sys::{fuzz_target, Corpus};

fuzz_target!(|data: &[u8]| -> Corpus {
    let Ok(input) = std::str::from_utf8(data) else {
        return Corpus::Reject;
    };
    let Ok(parsed) = ivp::expr::parse(input) else {
        return Corpus::Reject;
    };
    // keep the search desk-sized: small degree, small coefficients, small d
    let degree: usize = parsed
        .numerator_factors
        .iter()
        .map(|(p, e)| p.degree().unwrap_or(0) * *e as usize)
        .sum();
    if degree == 0 || degree > 6 {
        return Corpus::Reject;
    }
    if parsed.numerator_factors.iter().any(|(p, _)| p.coeffs().iter().any(|c| c.bits() > 20)) {
        return Corpus::Reject;
    }
    if parsed.denominator.bits() > 10 {
        return Corpus::Reject;
    }
    let Ok(f) = ivp::factorize::to_ivp(&parsed.numerator_factors, &parsed.denominator, 6) else {
        return Corpus::Keep;
    };
    if f.is_unit() || !ivp::factorize::is_image_primitive(&f) {
        return Corpus::Keep;
    }
    let facts = ivp::factorize::factorizations(&f).expect("image primitive non-unit factors");
    assert!(!facts.is_empty(), "no factorization found for {f}");
    for fact in &facts {
        assert!(fact.is_factorization_of(&f), "{fact} does not multiply back to {f}");
    }
    let verdict = ivp::factorize::is_irreducible(&f).expect("image primitive");
    assert_eq!(
        verdict.is_irreducible(),
        facts.len() == 1 && facts[0].is_trivial(),
        "irreducibility out of sync with the factorization set for {f}"
    );
    if f.factors().len() <= 4 && f.denom_primes().iter().all(|&p| p <= 7) {
        let brute = ivp::oracle::brute_factorizations(&f).expect("within oracle bounds");
        assert_eq!(facts, brute, "oracle disagrees on {f}");
    }
    Corpus::Keep
});
