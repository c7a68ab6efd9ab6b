//! Exact arithmetic for integer-valued polynomials `f(X) = g(X)/d` with
//! square-free denominator: deciding irreducibility and enumerating all
//! essentially different factorizations into irreducibles, by reducing both
//! questions to minimal prime coverings of residue classes.
//!
//! Module map:
//!
//! * [`polyz`] — exact integer polynomials, content, fixed divisor, and
//!   desk-scale factorization over `Z[X]`;
//! * [`residues`] — root sets mod p and membership in the primary components
//!   `(p, X - j)` and their squares;
//! * [`covers`] — minimal p-coverings, families across several primes, and
//!   the overlap partition;
//! * [`factorize`] — image primitivity, irreducibility, and the complete
//!   factorization enumeration;
//! * [`oracle`] — independent brute-force ground truth for `--verify` and
//!   the test suite;
//! * [`expr`] — the expression parser behind the CLI;
//! * [`cli`] — command execution and report rendering.

pub mod cli;
pub mod covers;
pub mod expr;
pub mod factorize;
pub mod oracle;
pub mod polyz;
pub mod residues;

pub use factorize::{FactoredIvp, Factorization, IvpError, IvpPart};
pub use polyz::Poly;
