//! Desk-scale factorization over `Z[X]`: content extraction, rational-root
//! stripping, then a Kronecker interpolation search for higher-degree factors.
//!
//! The Kronecker search is complete for the configured degree bound: a factor
//! of degree `m` is pinned down by its values at `m + 1` integer points, and
//! those values must divide the values of the input there. Slow in theory,
//! exact in practice at the degrees this crate works with.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use thiserror::Error;

use super::primes::divisors_bigint;
use super::Poly;

/// Default cap on the degree handed to the factorization search.
pub const DEFAULT_DEGREE_BOUND: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FactorError {
    #[error("cannot factor the zero polynomial")]
    ZeroPolynomial,
    #[error("degree {degree} exceeds the factorization bound {bound}; supply the input pre-factored or raise the bound")]
    DegreeTooLarge { degree: usize, bound: usize },
}

/// Complete factorization over the integers: a sign, the prime factors of the
/// content, and primitive irreducible factors with positive leading
/// coefficient, each with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZFactorization {
    pub sign: i8,
    pub constant_primes: Vec<BigInt>,
    pub factors: Vec<(Poly, u32)>,
}

impl ZFactorization {
    /// Multiplies the factorization back out.
    pub fn product(&self) -> Poly {
        let mut acc = Poly::constant(self.sign);
        for p in &self.constant_primes {
            acc = &acc * &Poly::from_coeffs(vec![p.clone()]);
        }
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(*e);
        }
        acc
    }
}

pub fn factor_over_integers(g: &Poly, bound: usize) -> Result<ZFactorization, FactorError> {
    if g.is_zero() {
        return Err(FactorError::ZeroPolynomial);
    }
    let degree = g.degree().unwrap();
    if degree > bound {
        return Err(FactorError::DegreeTooLarge { degree, bound });
    }
    let (sign, content, prim) = g.normalized();
    let constant_primes = if content.is_one() {
        Vec::new()
    } else {
        super::primes::factor_bigint(&content)
            .into_iter()
            .flat_map(|(p, e)| std::iter::repeat(p).take(e as usize))
            .collect()
    };
    let mut irreducibles = if prim.is_one() {
        Vec::new()
    } else {
        factor_primitive(&prim)
    };
    irreducibles.sort();
    let mut factors: Vec<(Poly, u32)> = Vec::new();
    for f in irreducibles {
        match factors.last_mut() {
            Some((g, e)) if *g == f => *e += 1,
            _ => factors.push((f, 1)),
        }
    }
    Ok(ZFactorization {
        sign,
        constant_primes,
        factors,
    })
}

/// True when `g` is irreducible over the integers. Expects a primitive input
/// of degree at least 1.
pub fn is_irreducible_over_integers(g: &Poly, bound: usize) -> Result<bool, FactorError> {
    debug_assert!(g.degree() >= Some(1) && g.is_primitive());
    let z = factor_over_integers(g, bound)?;
    Ok(z.constant_primes.is_empty() && z.factors.len() == 1 && z.factors[0].1 == 1)
}

/// Factors a primitive polynomial of degree >= 1 into irreducibles.
fn factor_primitive(h0: &Poly) -> Vec<Poly> {
    let mut h = h0.clone();
    let mut out = Vec::new();
    strip_linear_factors(&mut h, &mut out);
    let mut m = 2;
    while h.degree().map_or(false, |d| 2 * m <= d) {
        match kronecker_factor(&h, m) {
            Some(u) => {
                h = h.div_exact(&u).expect("kronecker factor divides");
                out.push(u);
            }
            None => m += 1,
        }
    }
    if h.degree().map_or(false, |d| d >= 1) {
        out.push(h);
    }
    out
}

/// Removes every linear factor (equivalently every rational root), pushing
/// the primitive factors `q*X - p` onto `out`.
fn strip_linear_factors(h: &mut Poly, out: &mut Vec<Poly>) {
    while h.degree().map_or(false, |d| d >= 1) && h.coeff(0).is_zero() {
        *h = h.div_exact(&Poly::x()).unwrap();
        out.push(Poly::x());
    }
    'outer: while h.degree().map_or(false, |d| d >= 1) {
        let c0 = h.coeff(0);
        let lead = h.leading().unwrap().clone();
        for den in divisors_bigint(&lead) {
            for num in divisors_bigint(&c0) {
                if !num.gcd(&den).is_one() {
                    continue;
                }
                for num in [num.clone(), -num] {
                    if is_rational_root(h, &num, &den) {
                        let factor = Poly::from_coeffs(vec![-num, den.clone()]);
                        *h = h.div_exact(&factor).expect("root gives exact division");
                        out.push(factor);
                        continue 'outer;
                    }
                }
            }
        }
        break;
    }
}

/// Tests `h(num/den) == 0` without leaving the integers.
fn is_rational_root(h: &Poly, num: &BigInt, den: &BigInt) -> bool {
    let deg = h.degree().unwrap();
    let mut acc = BigInt::zero();
    // sum of a_k * num^k * den^(deg-k), Horner-style in num
    for k in (0..=deg).rev() {
        acc = acc * num + h.coeff(k) * num::pow::pow(den.clone(), deg - k);
    }
    acc.is_zero()
}

/// Searches for a degree-`m` factor of `h` (which has no roots in `Z` and
/// degree >= 2m). Returns a primitive factor with positive leading
/// coefficient, or `None` when no degree-`m` factor exists.
fn kronecker_factor(h: &Poly, m: usize) -> Option<Poly> {
    const POOL: [i64; 13] = [0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6, -6];
    let lead = h.leading().unwrap().clone();

    // Candidate values at each point are divisors of h there; pick the m+1
    // points with the fewest divisors to shrink the search.
    let mut sampled: Vec<(i64, Vec<BigInt>)> = POOL
        .iter()
        .map(|&x| {
            let v = h.eval_i64(x);
            debug_assert!(!v.is_zero(), "linear factors were stripped first");
            (x, divisors_bigint(&v))
        })
        .collect();
    sampled.sort_by_key(|(_, d)| d.len());
    sampled.truncate(m + 1);

    let points: Vec<i64> = sampled.iter().map(|(x, _)| *x).collect();
    let mut choices: Vec<Vec<BigInt>> = Vec::with_capacity(m + 1);
    for (t, (_, divs)) in sampled.iter().enumerate() {
        let mut vals = Vec::with_capacity(divs.len() * 2);
        for d in divs {
            vals.push(d.clone());
            if t > 0 {
                // the sign at the first point is fixed: u and -u are associates
                vals.push(-d);
            }
        }
        choices.push(vals);
    }

    let mut assignment: Vec<BigInt> = Vec::with_capacity(m + 1);
    search_assignments(h, &lead, &points, &choices, &mut assignment, m)
}

fn search_assignments(
    h: &Poly,
    lead: &BigInt,
    points: &[i64],
    choices: &[Vec<BigInt>],
    assignment: &mut Vec<BigInt>,
    m: usize,
) -> Option<Poly> {
    let t = assignment.len();
    if t == m + 1 {
        let u = interpolate_integer(points, assignment, m)?;
        if u.degree() != Some(m) {
            return None;
        }
        if !lead.is_multiple_of(u.leading().unwrap()) {
            return None;
        }
        let u = if u.leading().unwrap().is_negative() { -&u } else { u };
        return h.div_exact(&u).map(|_| u);
    }
    'candidate: for v in &choices[t] {
        // an integer polynomial satisfies (x_t - x_s) | (u(x_t) - u(x_s))
        for (s, w) in assignment.iter().enumerate() {
            let step = BigInt::from(points[t] - points[s]);
            if !(v - w).is_multiple_of(&step) {
                continue 'candidate;
            }
        }
        assignment.push(v.clone());
        if let Some(u) = search_assignments(h, lead, points, choices, assignment, m) {
            return Some(u);
        }
        assignment.pop();
    }
    None
}

/// Lagrange interpolation through `(points[t], values[t])`; `None` unless the
/// result has integer coefficients.
fn interpolate_integer(points: &[i64], values: &[BigInt], m: usize) -> Option<Poly> {
    let mut acc = vec![BigRational::zero(); m + 1];
    for t in 0..=m {
        // numerator polynomial prod_{s != t} (X - x_s)
        let mut basis = vec![BigInt::one()];
        let mut denom = BigInt::one();
        for (s, &x) in points.iter().enumerate() {
            if s == t {
                continue;
            }
            let mut next = vec![BigInt::zero(); basis.len() + 1];
            for (i, c) in basis.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * BigInt::from(x);
            }
            basis = next;
            denom *= BigInt::from(points[t] - x);
        }
        let scale = BigRational::new(values[t].clone(), denom);
        for (i, c) in basis.iter().enumerate() {
            acc[i] += &scale * BigRational::from(c.clone());
        }
    }
    let mut coeffs = Vec::with_capacity(m + 1);
    for c in acc {
        if !c.is_integer() {
            return None;
        }
        coeffs.push(c.to_integer());
    }
    Some(Poly::from_coeffs(coeffs))
}
