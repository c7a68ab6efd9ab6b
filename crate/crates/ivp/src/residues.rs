//! Residue classes modulo a prime `p` viewed through the primary components
//! of the ideal `I_p = (p, X^p - X)` of integer polynomials whose fixed
//! divisor `p` divides.
//!
//! For a prime `p` and residue `j`, the maximal ideal `M_{p,j} = (p, X - j)`
//! contains exactly the polynomials with `p | g(j)`. The root set `C_{p,g}`
//! collects the residues `j` whose component contains `g`; membership in the
//! square `M_{p,j}^2 = (p^2, p(X-j), (X-j)^2)` distinguishes simple from
//! higher-order containment via the Taylor expansion of `g` at `j`.

use std::collections::BTreeSet;

use num::bigint::BigInt;
use num::{Integer, Zero};
use thiserror::Error;

use crate::polyz::{is_prime_u64, Poly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResidueError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("residue {residue} is out of range for prime {prime}")]
    ResidueOutOfRange { prime: u64, residue: u64 },
    #[error("expected residue sets modulo {expected}, found one modulo {found}")]
    MixedPrimes { expected: u64, found: u64 },
}

/// The set `C_{p,g}` of residues `j` in `{0, ..., p-1}` with `p | g(j)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ResidueSet {
    prime: u64,
    members: BTreeSet<u64>,
}

impl ResidueSet {
    pub fn new(prime: u64, members: BTreeSet<u64>) -> Result<Self, ResidueError> {
        if !is_prime_u64(prime) {
            return Err(ResidueError::NotPrime(prime));
        }
        if let Some(&j) = members.iter().find(|&&j| j >= prime) {
            return Err(ResidueError::ResidueOutOfRange { prime, residue: j });
        }
        Ok(ResidueSet { prime, members })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn members(&self) -> &BTreeSet<u64> {
        &self.members
    }

    pub fn contains(&self, j: u64) -> bool {
        self.members.contains(&j)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }
}

/// How a polynomial sits inside the primary component `M_{p,j}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum MembershipOrder {
    /// `p` does not divide `g(j)`.
    NotInM,
    /// `g` is in `M_{p,j}` but not in its square: `j` is a simple root of
    /// `g` mod `p` in the sense that not both `p^2 | g(j)` and `p | g'(j)`.
    SimpleInM,
    /// `p^2 | g(j)` and `p | g'(j)`.
    InMSquared,
}

fn eval_mod(g: &Poly, p: u64, j: u64) -> u64 {
    debug_assert!(p < 1 << 31);
    let m = BigInt::from(p);
    let mut acc: u64 = 0;
    for c in g.coeffs().iter().rev() {
        let c: u64 = c.mod_floor(&m).try_into().expect("reduced below p");
        acc = ((acc as u128 * j as u128 + c as u128) % p as u128) as u64;
    }
    acc
}

/// Computes `C_{p,g}` by evaluating `g` at each residue with modular
/// reduction; the residues found are exactly the roots of `g` mod `p`.
pub fn root_set_mod_p(g: &Poly, p: u64) -> Result<ResidueSet, ResidueError> {
    if !is_prime_u64(p) {
        return Err(ResidueError::NotPrime(p));
    }
    let members = if p < 1 << 31 {
        (0..p).filter(|&j| eval_mod(g, p, j) == 0).collect()
    } else {
        let m = BigInt::from(p);
        (0..p)
            .filter(|&j| g.eval(&BigInt::from(j)).mod_floor(&m).is_zero())
            .collect()
    };
    Ok(ResidueSet { prime: p, members })
}

/// Classifies the containment of `g` in `M_{p,j}` and its square.
///
/// `g` lies in `M_{p,j}^2` exactly when `p^2 | g(j)` and `p | g'(j)`: expand
/// `g` at `j` as `g(j) + g'(j)(X-j) + (X-j)^2 * (...)` and compare with the
/// generators `p^2`, `p(X-j)`, `(X-j)^2`.
pub fn membership_order(g: &Poly, p: u64, j: u64) -> Result<MembershipOrder, ResidueError> {
    if !is_prime_u64(p) {
        return Err(ResidueError::NotPrime(p));
    }
    if j >= p {
        return Err(ResidueError::ResidueOutOfRange { prime: p, residue: j });
    }
    let bp = BigInt::from(p);
    let jj = BigInt::from(j);
    let gj = g.eval(&jj);
    if !gj.mod_floor(&bp).is_zero() {
        return Ok(MembershipOrder::NotInM);
    }
    let in_square = gj.mod_floor(&(&bp * &bp)).is_zero()
        && g.derivative().eval(&jj).mod_floor(&bp).is_zero();
    Ok(if in_square {
        MembershipOrder::InMSquared
    } else {
        MembershipOrder::SimpleInM
    })
}

/// Whether the product of the underlying polynomials lies in `I_p`, i.e.
/// whether the union of the root sets covers every residue class mod `p`.
pub fn product_in_ip(p: u64, sets: &[ResidueSet]) -> Result<bool, ResidueError> {
    if !is_prime_u64(p) {
        return Err(ResidueError::NotPrime(p));
    }
    let mut union = BTreeSet::new();
    for s in sets {
        if s.prime != p {
            return Err(ResidueError::MixedPrimes { expected: p, found: s.prime });
        }
        union.extend(s.members.iter().copied());
    }
    Ok(union.len() as u64 == p)
}
