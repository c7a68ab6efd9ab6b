//! Independent brute-force ground truth, used by the test suite and the
//! CLI `--verify` mode.
//!
//! Nothing here looks at coverings or residue classes: divisors are found by
//! enumerating index and prime subsets and checking integer-valuedness with
//! plain fixed-divisor arithmetic, and factorizations by recursively
//! splitting off every proper divisor. Exponential by design; the size
//! guards are hard errors rather than silent truncation, because a truncated
//! oracle is worse than none.

use std::collections::{BTreeSet, HashMap};

use num::bigint::BigInt;
use num::{Integer, One, Zero};
use thiserror::Error;

use crate::factorize::{FactoredIvp, Factorization, IvpPart};
use crate::polyz::Poly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("window {window} is too small: need at least deg+1 = {required}")]
    WindowTooSmall { window: u64, required: u64 },
    #[error("instance too large for the brute-force oracle: {0}")]
    TooLarge(String),
    #[error("the oracle only factors image primitive elements")]
    NotImagePrimitive,
}

/// Fixed divisor over the window `-window ..= window`, computed without the
/// consecutive-values shortcut. Must agree with `Poly::fixed_divisor`.
pub fn brute_fixed_divisor(g: &Poly, window: u64) -> Result<BigInt, OracleError> {
    let required = g.degree().unwrap_or(0) as u64 + 1;
    if window < required {
        return Err(OracleError::WindowTooSmall { window, required });
    }
    let mut acc = BigInt::zero();
    for n in -(window as i64)..=window as i64 {
        acc = acc.gcd(&g.eval_i64(n));
        if acc.is_one() {
            break;
        }
    }
    Ok(acc)
}

/// A divisor of `f` in the ring, named by the index subset `J` and prime
/// subset `T` of `g_J(X) / d_T`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Divisor {
    pub indices: BTreeSet<usize>,
    pub primes: BTreeSet<u64>,
}

fn subset(mask: u32, n: usize) -> BTreeSet<usize> {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

fn fixed_divisors_by_mask(f: &FactoredIvp) -> Vec<BigInt> {
    let n = f.factors().len();
    (0u32..1 << n)
        .map(|mask| {
            Poly::product((0..n).filter(|i| mask >> i & 1 == 1).map(|i| &f.factors()[i]))
                .fixed_divisor()
        })
        .collect()
}

/// Every `(J, T)` with `d_T` dividing the fixed divisor of `g_J`, i.e. every
/// integer-valued element assembled from pieces of `f`. Units (`J = T = {}`)
/// and `f` itself are included. Copies of repeated factors are deduplicated;
/// the representative with the smallest index set is kept. The numerator is
/// assumed primitive.
pub fn ivp_divisors(f: &FactoredIvp) -> Vec<Divisor> {
    let n = f.factors().len();
    debug_assert!(f.content_primes().is_empty());
    let primes = f.denom_primes();
    let fd = fixed_divisors_by_mask(f);
    let mut seen: BTreeSet<(Vec<Poly>, BTreeSet<u64>)> = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..1 << n {
        let indices = subset(mask, n);
        for pmask in 0u32..1 << primes.len() {
            let tset: BTreeSet<u64> =
                primes.iter().enumerate().filter(|(k, _)| pmask >> k & 1 == 1).map(|(_, &p)| p).collect();
            let dt: BigInt = tset.iter().map(|&p| BigInt::from(p)).product();
            if !fd[mask as usize].is_multiple_of(&dt) {
                continue;
            }
            let mut polys: Vec<Poly> = indices.iter().map(|&i| f.factors()[i].clone()).collect();
            polys.sort();
            if seen.insert((polys, tset.clone())) {
                out.push(Divisor { indices: indices.clone(), primes: tset });
            }
        }
    }
    out.sort();
    out
}

const MAX_FACTORS: usize = 8;
const MAX_PRIME: u64 = 13;

/// All essentially different factorizations into irreducibles, by exhaustive
/// recursive splitting. An element is irreducible here exactly when no
/// proper non-unit divisor leaves an integer-valued cofactor.
pub fn brute_factorizations(f: &FactoredIvp) -> Result<Vec<Factorization>, OracleError> {
    let n = f.factors().len();
    if n > MAX_FACTORS {
        return Err(OracleError::TooLarge(format!("{n} numerator factors (max {MAX_FACTORS})")));
    }
    if let Some(&p) = f.denom_primes().iter().find(|&&p| p > MAX_PRIME) {
        return Err(OracleError::TooLarge(format!("denominator prime {p} (max {MAX_PRIME})")));
    }
    if !f.content_primes().is_empty()
        || f.numerator_fixed_divisor() != f.denominator()
    {
        return Err(OracleError::NotImagePrimitive);
    }
    if n == 0 && f.denom_primes().is_empty() {
        return Err(OracleError::TooLarge("a unit has no factorization".into()));
    }
    let primes: Vec<u64> = f.denom_primes().to_vec();
    let fd = fixed_divisors_by_mask(f);
    let dt = |pmask: u32| -> BigInt {
        primes
            .iter()
            .enumerate()
            .filter(|(k, _)| pmask >> k & 1 == 1)
            .map(|(_, &p)| BigInt::from(p))
            .product()
    };
    let full_mask: u32 = (1u32 << n) - 1;
    let full_pmask: u32 = (1u32 << primes.len()) - 1;
    let mut memo: HashMap<(u32, u32), Vec<Vec<(u32, u32)>>> = HashMap::new();
    let splits = split_rec(full_mask, full_pmask, n, &primes, &fd, &dt, &mut memo);
    let mut out: Vec<Factorization> = splits
        .into_iter()
        .map(|parts| {
            let parts = parts
                .into_iter()
                .map(|(mask, pmask)| {
                    let indices = subset(mask, n);
                    let polys: Vec<Poly> = indices.iter().map(|&i| f.factors()[i].clone()).collect();
                    let tset: Vec<u64> = primes
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| pmask >> k & 1 == 1)
                        .map(|(_, &p)| p)
                        .collect();
                    IvpPart::from_raw(indices, polys, tset)
                })
                .collect();
            Factorization::from_raw(f.sign(), parts, None)
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Recursively splits the element `(mask, pmask)` by every valid divisor.
/// Returns the factorizations as lists of `(index mask, prime mask)` parts.
#[allow(clippy::too_many_arguments)]
fn split_rec(
    mask: u32,
    pmask: u32,
    n: usize,
    primes: &[u64],
    fd: &[BigInt],
    dt: &dyn Fn(u32) -> BigInt,
    memo: &mut HashMap<(u32, u32), Vec<Vec<(u32, u32)>>>,
) -> Vec<Vec<(u32, u32)>> {
    if let Some(hit) = memo.get(&(mask, pmask)) {
        return hit.clone();
    }
    let mut results: BTreeSet<Vec<(u32, u32)>> = BTreeSet::new();
    let mut any_split = false;
    // proper sub-multisets of the indices; the prime subsets range freely
    let mut sub = (mask.wrapping_sub(1)) & mask;
    loop {
        // sub runs over all proper submasks of mask, including 0
        let rest = mask & !sub;
        let mut psub = pmask;
        loop {
            let prest = pmask & !psub;
            let valid = (sub != 0 || psub != 0)
                && fd[sub as usize].is_multiple_of(&dt(psub))
                && fd[rest as usize].is_multiple_of(&dt(prest));
            // both sides must be non-units; an empty numerator with primes is
            // 1/d_T and never integer-valued unless T is empty
            let proper = valid && !(sub == 0 && psub == 0) && !(rest == 0 && prest == 0);
            if proper {
                any_split = true;
                let left = split_rec(sub, psub, n, primes, fd, dt, memo);
                let right = split_rec(rest, prest, n, primes, fd, dt, memo);
                for l in &left {
                    for r in &right {
                        let mut merged = l.clone();
                        merged.extend(r.iter().copied());
                        merged.sort_unstable();
                        results.insert(merged);
                    }
                }
            }
            if psub == 0 {
                break;
            }
            psub = (psub - 1) & pmask;
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & mask;
    }
    let out: Vec<Vec<(u32, u32)>> = if any_split {
        results.into_iter().collect()
    } else {
        vec![vec![(mask, pmask)]]
    };
    memo.insert((mask, pmask), out.clone());
    out
}

/// Convenience: whether the oracle finds only the trivial factorization.
pub fn brute_is_irreducible(f: &FactoredIvp) -> Result<bool, OracleError> {
    let facts = brute_factorizations(f)?;
    Ok(facts.len() == 1 && facts[0].is_trivial())
}
