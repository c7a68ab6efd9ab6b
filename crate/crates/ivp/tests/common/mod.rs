//! Shared helpers for the integration suites: polynomial shorthands and a
//! seeded generator of random integer-valued instances.

#![allow(dead_code)]

use num::bigint::BigInt;
use num::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ivp::factorize::{to_ivp, FactoredIvp};
use ivp::polyz::{factor_bigint, Poly};

pub type TestRng = ChaCha8Rng;

pub fn p(coeffs: &[i64]) -> Poly {
    Poly::from_i64s(coeffs)
}

pub fn ivp_from(factors: &[&[i64]], denominator: i64) -> FactoredIvp {
    let numerator: Vec<(Poly, u32)> = factors.iter().map(|c| (p(c), 1)).collect();
    to_ivp(&numerator, &BigInt::from(denominator), 10).unwrap()
}

pub fn rng(seed: u64) -> TestRng {
    TestRng::seed_from_u64(seed)
}

/// A random primitive irreducible factor of degree 1 or 2 with coefficients
/// bounded by 20, biased toward small monic linears so that random products
/// cover residue classes often enough to be interesting.
pub fn random_factor(rng: &mut TestRng) -> Poly {
    loop {
        let candidate = match rng.gen_range(0..10) {
            0..=5 => p(&[rng.gen_range(-10..=10), 1]),
            6 => {
                let a = rng.gen_range(1..=5);
                let b = rng.gen_range(-20..=20);
                p(&[b, a])
            }
            7 => p(&[rng.gen_range(1..=20), 0, 1]),
            _ => {
                let b = rng.gen_range(-6..=6);
                let c = rng.gen_range(-20..=20);
                p(&[c, b, 1])
            }
        };
        let (_, content, prim) = candidate.normalized();
        if prim.degree() == Some(0) {
            continue;
        }
        if !content.is_one() {
            continue;
        }
        if prim.degree() == Some(2) && has_rational_root(&prim) {
            continue;
        }
        return prim;
    }
}

fn has_rational_root(g: &Poly) -> bool {
    // degree 2, coefficients small: scan numerators over denominators directly
    let c0 = g.coeff(0);
    if c0 == BigInt::from(0) {
        return true;
    }
    let lead = g.leading().unwrap().to_i64().unwrap();
    let c0 = c0.to_i64().unwrap();
    for q in 1..=lead.abs() {
        if lead % q != 0 {
            continue;
        }
        for r in 1..=c0.abs() {
            if c0 % r != 0 {
                continue;
            }
            for num in [r, -r] {
                // g(num/q) == 0 scaled by q^2
                let value = g.coeff(2) * num * num + g.coeff(1) * num * q + g.coeff(0) * q * q;
                if value == BigInt::from(0) {
                    return true;
                }
            }
        }
    }
    false
}

pub struct InstanceSpec {
    pub min_factors: usize,
    pub max_factors: usize,
    pub max_total_degree: usize,
    pub prime_pool: &'static [u64],
    /// Require exactly this many denominator primes, when set.
    pub exact_primes: Option<usize>,
    /// When false, the denominator is a random square-free divisor of the
    /// fixed divisor instead of the whole of it, so the instance need not be
    /// image primitive.
    pub image_primitive: bool,
}

impl Default for InstanceSpec {
    fn default() -> Self {
        InstanceSpec {
            min_factors: 2,
            max_factors: 6,
            max_total_degree: 8,
            prime_pool: &[2, 3, 5, 7],
            exact_primes: None,
            image_primitive: true,
        }
    }
}

/// Draws a random integer-valued instance matching `spec`. The denominator is
/// always square-free with primes from the pool and at least one prime.
pub fn random_instance(rng: &mut TestRng, spec: &InstanceSpec) -> FactoredIvp {
    'try_again: for _ in 0..200_000 {
        let n = rng.gen_range(spec.min_factors..=spec.max_factors);
        let mut factors: Vec<Poly> = Vec::with_capacity(n);
        let mut degree = 0usize;
        for _ in 0..n {
            let f = random_factor(rng);
            degree += f.degree().unwrap();
            if degree > spec.max_total_degree {
                continue 'try_again;
            }
            factors.push(f);
        }
        let product = Poly::product(factors.iter());
        let fixed = product.fixed_divisor();
        if fixed == BigInt::from(1) {
            continue;
        }
        let prime_factors = factor_bigint(&fixed);
        if spec.image_primitive {
            // d = d(g): square-free with primes from the pool, or skip
            if prime_factors.iter().any(|(_, e)| *e > 1) {
                continue;
            }
            let mut primes = Vec::new();
            for (q, _) in &prime_factors {
                match q.to_u64() {
                    Some(q) if spec.prime_pool.contains(&q) => primes.push(q),
                    _ => continue 'try_again,
                }
            }
            if let Some(k) = spec.exact_primes {
                if primes.len() != k {
                    continue;
                }
            }
            let denominator: BigInt = primes.iter().map(|&q| BigInt::from(q)).product();
            let numerator: Vec<(Poly, u32)> = factors.into_iter().map(|f| (f, 1)).collect();
            return to_ivp(&numerator, &denominator, 10).expect("constructed valid");
        } else {
            // pick a random nonempty square-free divisor of d(g) from the pool
            let usable: Vec<u64> = prime_factors
                .iter()
                .filter_map(|(q, _)| q.to_u64())
                .filter(|q| spec.prime_pool.contains(q))
                .collect();
            if usable.is_empty() {
                continue;
            }
            let mut primes: Vec<u64> = usable.iter().copied().filter(|_| rng.gen_bool(0.7)).collect();
            if primes.is_empty() {
                primes.push(usable[rng.gen_range(0..usable.len())]);
            }
            if let Some(k) = spec.exact_primes {
                if primes.len() < k {
                    continue;
                }
                primes.truncate(k);
            }
            let denominator: BigInt = primes.iter().map(|&q| BigInt::from(q)).product();
            let numerator: Vec<(Poly, u32)> = factors.into_iter().map(|f| (f, 1)).collect();
            return to_ivp(&numerator, &denominator, 10).expect("d divides the fixed divisor");
        }
    }
    panic!("instance generation exhausted its attempt budget");
}

/// Inputs for the paper's worked examples, as CLI expressions.
pub const PAPER_FACTOR_EXAMPLES: &[&str] = &[
    "x*(x-1)*(x-2)/6",
    "(x^2-x+3)*(x^2+2)/3",
    "x*(x^2+2)*(x^2+16)*(x^2+4)/15",
    "(x-1)*(x-2)*(x-3)*(x-9)/6",
    "(x^2+12)*(x^2+2)*(x^2+10)*(x^2+16)*(x^2+4)/15",
    "x*(x^2+1)*(x^2+x+1)*(x^2+2*x+4)/6",
    "x*(x-1)^2/2",
    "x^2*(x-1)*(x^2+4)/2",
    "(x^2+x+2)/2",
];
