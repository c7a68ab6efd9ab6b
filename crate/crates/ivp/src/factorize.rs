//! Decision procedures for integer-valued polynomials `g(X)/d` with
//! square-free denominator: image primitivity, irreducibility, and the
//! complete enumeration of essentially different factorizations into
//! irreducibles.
//!
//! An element is held as a [`FactoredIvp`]: a sign, the irreducible factors
//! of the numerator (indexed, one entry per copy), and the set of denominator
//! primes. Factor candidates are always of the form `g_J(X)/d_T` for an index
//! subset `J` and a prime subset `T`, which reduces every question here to
//! the combinatorics of minimal p-coverings:
//!
//! * `f` is irreducible iff every family of minimal coverings spans the whole
//!   index set and has a connected overlap graph;
//! * every factorization arises from one family by splitting the primes
//!   along the family's overlap components, keeping only component blocks
//!   that are themselves irreducible, with the untouched numerator factors
//!   left over as integer-polynomial parts.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num::bigint::BigInt;
use num::{Integer, One, Zero};
use thiserror::Error;

use crate::covers::{CoverInstance, CoveringFamilies, CoveringFamily};
use crate::polyz::{
    factor_bigint, factor_over_integers, is_irreducible_over_integers, FactorError, Poly,
};
use crate::residues::{membership_order, root_set_mod_p, MembershipOrder};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IvpError {
    #[error("denominator must be a positive integer")]
    InvalidDenominator,
    #[error("denominator {denominator} is not square-free: prime {prime} repeats")]
    NotSquareFree { denominator: BigInt, prime: BigInt },
    #[error("denominator prime {0} exceeds the supported range")]
    PrimeTooLarge(BigInt),
    #[error("not integer-valued: {prime} does not divide the fixed divisor of the numerator")]
    NotIntegerValued { prime: u64 },
    #[error("the numerator content shares the factor {common} with the denominator {denominator}")]
    ContentNotCoprime { denominator: BigInt, common: BigInt },
    #[error("the numerator is zero")]
    ZeroNumerator,
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error("not image primitive: the numerator has fixed divisor {fixed_divisor} but the denominator is {denominator}")]
    NotImagePrimitive { fixed_divisor: BigInt, denominator: BigInt },
    #[error("prime {0} does not divide the denominator")]
    PrimeNotInDenominator(u64),
    #[error("a unit has no factorization into irreducibles")]
    UnitInput,
}

/// An element of the ring of integer-valued polynomials, kept in factored
/// form: `sign * content * prod_i factors[i] / prod_k denom_primes[k]`.
///
/// The denominator is square-free by construction (a set of primes), coprime
/// to the numerator content, and divides the fixed divisor of the numerator.
/// Repeated irreducible numerator factors occupy distinct indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredIvp {
    sign: i8,
    content_primes: Vec<BigInt>,
    factors: Vec<Poly>,
    denom_primes: Vec<u64>,
}

impl FactoredIvp {
    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// The indexed irreducible numerator factors (index set `I`).
    pub fn factors(&self) -> &[Poly] {
        &self.factors
    }

    /// The distinct denominator primes (index set `K`).
    pub fn denom_primes(&self) -> &[u64] {
        &self.denom_primes
    }

    /// Prime factors of the numerator content, with multiplicity. Empty
    /// whenever the numerator is primitive, in particular whenever the
    /// element is image primitive.
    pub fn content_primes(&self) -> &[BigInt] {
        &self.content_primes
    }

    pub fn content(&self) -> BigInt {
        self.content_primes.iter().product::<BigInt>().max(BigInt::one())
    }

    pub fn denominator(&self) -> BigInt {
        self.denom_primes.iter().map(|&p| BigInt::from(p)).product()
    }

    /// The numerator `g(X)` multiplied back out, sign and content included.
    pub fn numerator(&self) -> Poly {
        let mut acc = Poly::constant(BigInt::from(self.sign) * self.content());
        for g in &self.factors {
            acc = &acc * g;
        }
        acc
    }

    pub fn numerator_fixed_divisor(&self) -> BigInt {
        self.numerator().fixed_divisor()
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty() && self.content_primes.is_empty() && self.denom_primes.is_empty()
    }

    /// The same element with the opposite sign.
    pub fn negated(&self) -> FactoredIvp {
        FactoredIvp { sign: -self.sign, ..self.clone() }
    }
}

impl fmt::Display for FactoredIvp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "-")?;
        }
        let content = self.content();
        let atoms = self.factors.len() + usize::from(!content.is_one());
        let d = self.denominator();
        let grouped = atoms > 1 || !d.is_one() || self.sign < 0;
        let mut written = false;
        if !content.is_one() {
            write!(f, "{content}")?;
            written = true;
        }
        for g in &self.factors {
            if written {
                write!(f, "*")?;
            }
            write_factor(f, g, grouped)?;
            written = true;
        }
        if !written {
            write!(f, "1")?;
        }
        if !d.is_one() {
            write!(f, "/{d}")?;
        }
        Ok(())
    }
}

/// Parenthesizes multi-term factors, but only when they sit next to another
/// display atom (a product neighbour, a denominator, or a leading minus).
fn write_factor(f: &mut fmt::Formatter<'_>, g: &Poly, grouped: bool) -> fmt::Result {
    let terms = g.coeffs().iter().filter(|c| !c.is_zero()).count();
    if grouped && terms >= 2 {
        write!(f, "({g})")
    } else {
        write!(f, "{g}")
    }
}

/// Normalizes a list of supplied numerator factors: extracts sign and
/// content, verifies each non-constant factor irreducible (re-factoring it
/// when it is not), and expands exponents into distinct copies.
///
/// The degree bound applies to each supplied factor separately, so a product
/// of desk-sized factors may exceed it.
pub fn normalize_factors(
    numerator: &[(Poly, u32)],
    degree_bound: usize,
) -> Result<(i8, Vec<BigInt>, Vec<Poly>), IvpError> {
    let mut sign = 1i8;
    let mut content = BigInt::one();
    let mut factors: Vec<Poly> = Vec::new();
    for (poly, exp) in numerator {
        if poly.is_zero() {
            return Err(IvpError::ZeroNumerator);
        }
        let (s, c, prim) = poly.normalized();
        if *exp % 2 == 1 {
            sign *= s;
        }
        content *= num::pow::pow(c, *exp as usize);
        if prim.is_one() {
            continue;
        }
        if is_irreducible_over_integers(&prim, degree_bound)? {
            for _ in 0..*exp {
                factors.push(prim.clone());
            }
        } else {
            let z = factor_over_integers(&prim, degree_bound)?;
            for (g, e) in z.factors {
                for _ in 0..e * exp {
                    factors.push(g.clone());
                }
            }
        }
    }
    let content_primes = if content.is_one() {
        Vec::new()
    } else {
        factor_bigint(&content)
            .into_iter()
            .flat_map(|(p, e)| std::iter::repeat(p).take(e as usize))
            .collect()
    };
    Ok((sign, content_primes, factors))
}

/// Builds a validated [`FactoredIvp`] from a (possibly pre-factored)
/// numerator and a denominator.
pub fn to_ivp(
    numerator: &[(Poly, u32)],
    denominator: &BigInt,
    degree_bound: usize,
) -> Result<FactoredIvp, IvpError> {
    if denominator < &BigInt::one() {
        return Err(IvpError::InvalidDenominator);
    }
    let mut denom_primes: Vec<u64> = Vec::new();
    if !denominator.is_one() {
        for (p, e) in factor_bigint(denominator) {
            if e > 1 {
                return Err(IvpError::NotSquareFree { denominator: denominator.clone(), prime: p });
            }
            let p: u64 = p.clone().try_into().map_err(|_| IvpError::PrimeTooLarge(p))?;
            denom_primes.push(p);
        }
    }
    let (sign, content_primes, factors) = normalize_factors(numerator, degree_bound)?;
    let content: BigInt = content_primes.iter().product::<BigInt>().max(BigInt::one());
    if !denominator.gcd(&content).is_one() {
        return Err(IvpError::ContentNotCoprime {
            denominator: denominator.clone(),
            common: denominator.gcd(&content),
        });
    }
    // d | d(g) prime by prime: the root sets must cover every class mod p
    for &p in &denom_primes {
        let mut union: BTreeSet<u64> = BTreeSet::new();
        for g in &factors {
            union.extend(root_set_mod_p(g, p).expect("denominator primes are prime").members());
        }
        if union.len() as u64 != p {
            return Err(IvpError::NotIntegerValued { prime: p });
        }
    }
    Ok(FactoredIvp { sign, content_primes, factors, denom_primes })
}

/// Whether the fixed divisor of the numerator equals the denominator
/// exactly, i.e. whether the element has fixed divisor 1.
pub fn is_image_primitive(f: &FactoredIvp) -> bool {
    f.content_primes.is_empty() && f.numerator_fixed_divisor() == f.denominator()
}

fn ensure_image_primitive(f: &FactoredIvp) -> Result<(), IvpError> {
    if is_image_primitive(f) {
        Ok(())
    } else {
        Err(IvpError::NotImagePrimitive {
            fixed_divisor: f.numerator_fixed_divisor(),
            denominator: f.denominator(),
        })
    }
}

/// Structural test for `p`-image primitivity when `p` divides the
/// denominator exactly once: the element is `p`-image primitive iff some
/// residue class `j` has exactly one factor lying in `M_{p,j}`, and that
/// factor does not lie in `M_{p,j}^2`. On success the witness `(index, j)`
/// is returned; the witnessing index then belongs to every minimal
/// p-covering. Equivalent to `p^2` not dividing the fixed divisor of the
/// numerator.
pub fn p_image_primitive_structural(
    f: &FactoredIvp,
    p: u64,
) -> Result<(bool, Option<(usize, u64)>), IvpError> {
    if !f.denom_primes.contains(&p) {
        return Err(IvpError::PrimeNotInDenominator(p));
    }
    for j in 0..p {
        let mut unique: Option<(usize, MembershipOrder)> = None;
        let mut count = 0usize;
        for (i, g) in f.factors.iter().enumerate() {
            let order = membership_order(g, p, j).expect("p prime, j < p");
            if order != MembershipOrder::NotInM {
                count += 1;
                unique = Some((i, order));
            }
        }
        if count == 1 {
            let (i, order) = unique.unwrap();
            if order == MembershipOrder::SimpleInM {
                return Ok((true, Some((i, j))));
            }
        }
    }
    Ok((false, None))
}

/// Outcome of the irreducibility test, carrying a witness on failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Irreducibility {
    /// Irreducible; `corollary_prime` is set when the fast sufficient
    /// criterion applied (the whole index set is a minimal covering for that
    /// prime).
    Irreducible { corollary_prime: Option<u64> },
    /// A unit is not irreducible.
    Unit,
    /// No denominator: a product of two or more integer irreducibles.
    ReducibleOverZ,
    /// A family whose union misses part of the index set; the leftover
    /// factors split off as integer polynomials.
    FamilyMissesFactors { family: CoveringFamily, outside: BTreeSet<usize> },
    /// A family whose overlap graph falls apart; the components give a
    /// two-or-more block splitting.
    FamilySplits { family: CoveringFamily, components: Vec<BTreeSet<u64>> },
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible { .. })
    }
}

fn factor_classes(factors: &[Poly]) -> Vec<usize> {
    let mut seen: Vec<&Poly> = Vec::new();
    factors
        .iter()
        .map(|g| {
            if let Some(pos) = seen.iter().position(|h| *h == g) {
                pos
            } else {
                seen.push(g);
                seen.len() - 1
            }
        })
        .collect()
}

/// Root-set instances for the given indices over the given primes.
fn cover_instances(
    f: &FactoredIvp,
    indices: &BTreeSet<usize>,
    primes: &[u64],
) -> BTreeMap<u64, CoverInstance> {
    primes
        .iter()
        .map(|&p| {
            let sets = indices
                .iter()
                .map(|&i| {
                    (i, root_set_mod_p(&f.factors[i], p).expect("prime").members().clone())
                })
                .collect();
            (p, CoverInstance::new(p, sets))
        })
        .collect()
}

fn minimal_cover_map(
    f: &FactoredIvp,
    indices: &BTreeSet<usize>,
    primes: &[u64],
) -> BTreeMap<u64, Vec<BTreeSet<usize>>> {
    cover_instances(f, indices, primes)
        .into_iter()
        .map(|(p, inst)| (p, inst.minimal_covers().into_iter().collect()))
        .collect()
}

/// Checks the two family conditions for the sub-element `g_J / d_T`:
/// every family of minimal coverings must span all of `indices` and have a
/// single overlap component. Assumes the sub-element is integer-valued and
/// image primitive, which holds for every component block of a family.
fn theorem_verdict(f: &FactoredIvp, indices: &BTreeSet<usize>, primes: &[u64]) -> Irreducibility {
    let cover_map = minimal_cover_map(f, indices, primes);
    let corollary_prime = cover_map
        .iter()
        .find(|(_, covers)| covers.len() == 1 && covers[0] == *indices)
        .map(|(&p, _)| p);
    for family in CoveringFamilies::new(cover_map) {
        let union = family.union_all();
        if union != *indices {
            let outside = indices.difference(&union).copied().collect();
            return Irreducibility::FamilyMissesFactors { family, outside };
        }
        let components = family.overlap_components();
        if components.len() > 1 {
            return Irreducibility::FamilySplits { family, components };
        }
    }
    Irreducibility::Irreducible { corollary_prime }
}

/// Decides irreducibility of an image primitive element.
///
/// With no denominator the element is irreducible exactly when it is a
/// single irreducible integer polynomial. Otherwise every family of minimal
/// coverings must span the whole index set and must not split.
pub fn is_irreducible(f: &FactoredIvp) -> Result<Irreducibility, IvpError> {
    ensure_image_primitive(f)?;
    if f.is_unit() {
        return Ok(Irreducibility::Unit);
    }
    if f.denom_primes.is_empty() {
        return Ok(if f.factors.len() == 1 {
            Irreducibility::Irreducible { corollary_prime: None }
        } else {
            Irreducibility::ReducibleOverZ
        });
    }
    let all: BTreeSet<usize> = (0..f.factors.len()).collect();
    Ok(theorem_verdict(f, &all, &f.denom_primes))
}

/// Sufficient criterion only: `Some(true)` when the whole index set is the
/// (necessarily unique) minimal covering for one of the denominator primes,
/// `None` when the criterion does not apply.
pub fn is_irreducible_fast(f: &FactoredIvp) -> Result<Option<bool>, IvpError> {
    ensure_image_primitive(f)?;
    if f.is_unit() || f.denom_primes.is_empty() {
        return Ok(None);
    }
    let all: BTreeSet<usize> = (0..f.factors.len()).collect();
    let cover_map = minimal_cover_map(f, &all, &f.denom_primes);
    Ok(cover_map
        .values()
        .any(|covers| covers.len() == 1 && covers[0] == all)
        .then_some(true))
}

/// One irreducible part `g_J(X) / d_T` of a factorization, in canonical form:
/// sorted numerator factors with positive leading coefficients.
///
/// Equality and ordering compare the mathematical content (numerator factor
/// multiset and denominator primes) and deliberately ignore which copies of
/// repeated factors the indices name.
#[derive(Debug, Clone)]
pub struct IvpPart {
    indices: BTreeSet<usize>,
    numerator: Vec<Poly>,
    denom_primes: Vec<u64>,
}

impl IvpPart {
    fn new(f: &FactoredIvp, indices: BTreeSet<usize>, primes: BTreeSet<u64>) -> Self {
        let mut numerator: Vec<Poly> = indices.iter().map(|&i| f.factors[i].clone()).collect();
        numerator.sort();
        IvpPart { indices, numerator, denom_primes: primes.into_iter().collect() }
    }

    pub(crate) fn from_raw(
        indices: BTreeSet<usize>,
        mut numerator: Vec<Poly>,
        denom_primes: Vec<u64>,
    ) -> Self {
        numerator.sort();
        IvpPart { indices, numerator, denom_primes }
    }

    /// The indices of `f.factors` this part uses.
    pub fn indices(&self) -> &BTreeSet<usize> {
        &self.indices
    }

    pub fn numerator(&self) -> &[Poly] {
        &self.numerator
    }

    pub fn denom_primes(&self) -> &[u64] {
        &self.denom_primes
    }

    pub fn denominator(&self) -> BigInt {
        self.denom_primes.iter().map(|&p| BigInt::from(p)).product()
    }

    pub fn is_integer_polynomial(&self) -> bool {
        self.denom_primes.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.numerator.iter().map(|g| g.degree().unwrap_or(0)).sum()
    }

    pub fn numerator_poly(&self) -> Poly {
        Poly::product(self.numerator.iter())
    }

    fn key(&self) -> (&[u64], usize, &[Poly]) {
        (&self.denom_primes, self.degree(), &self.numerator)
    }
}

impl PartialEq for IvpPart {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for IvpPart {}

impl Ord for IvpPart {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for IvpPart {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IvpPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.numerator.is_empty() {
            write!(f, "1")?;
        }
        let d = self.denominator();
        let grouped = self.numerator.len() > 1 || !d.is_one();
        for (pos, g) in self.numerator.iter().enumerate() {
            if pos > 0 {
                write!(f, "*")?;
            }
            write_factor(f, g, grouped)?;
        }
        if !d.is_one() {
            write!(f, "/{d}")?;
        }
        Ok(())
    }
}

/// The covering family and prime partition a factorization came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub family: CoveringFamily,
    pub partition: Vec<BTreeSet<u64>>,
}

/// A factorization of `f` into irreducibles: a unit times parts whose index
/// sets partition `I` and whose prime sets partition `K`.
///
/// Equality and ordering compare the canonical part multiset and the unit;
/// the certificate records one way of producing the factorization and does
/// not participate.
#[derive(Debug, Clone)]
pub struct Factorization {
    unit: i8,
    parts: Vec<IvpPart>,
    certificate: Option<Certificate>,
}

impl Factorization {
    fn new(unit: i8, mut parts: Vec<IvpPart>, certificate: Option<Certificate>) -> Self {
        parts.sort();
        Factorization { unit, parts, certificate }
    }

    pub(crate) fn from_raw(
        unit: i8,
        parts: Vec<IvpPart>,
        certificate: Option<Certificate>,
    ) -> Self {
        Factorization::new(unit, parts, certificate)
    }

    pub fn unit(&self) -> i8 {
        self.unit
    }

    pub fn parts(&self) -> &[IvpPart] {
        &self.parts
    }

    /// Number of irreducible parts (the length of the factorization).
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The trivial factorization is `{f}` itself.
    pub fn is_trivial(&self) -> bool {
        self.parts.len() == 1
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        self.certificate.as_ref()
    }

    /// Exact check that the parts multiply back to `f`.
    pub fn is_factorization_of(&self, f: &FactoredIvp) -> bool {
        if self.unit != f.sign() {
            return false;
        }
        let mut indices: BTreeSet<usize> = BTreeSet::new();
        let mut primes: Vec<u64> = Vec::new();
        for part in &self.parts {
            if part.indices.iter().any(|i| !indices.insert(*i)) {
                return false;
            }
            primes.extend(part.denom_primes.iter().copied());
        }
        primes.sort_unstable();
        if primes != f.denom_primes {
            return false;
        }
        if indices != (0..f.factors().len()).collect() {
            return false;
        }
        let product = Poly::product(self.parts.iter().flat_map(|p| p.numerator.iter()));
        let expected = Poly::product(f.factors().iter());
        product == expected
    }
}

impl PartialEq for Factorization {
    fn eq(&self, other: &Self) -> bool {
        self.unit == other.unit && self.parts == other.parts
    }
}

impl Eq for Factorization {}

impl Ord for Factorization {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.parts
            .len()
            .cmp(&other.parts.len())
            .then_with(|| self.parts.cmp(&other.parts))
            .then_with(|| self.unit.cmp(&other.unit))
    }
}

impl PartialOrd for Factorization {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.unit < 0 {
            write!(f, "-1 * ")?;
        }
        for (pos, part) in self.parts.iter().enumerate() {
            if pos > 0 {
                write!(f, " * ")?;
            }
            write!(f, "[{part}]")?;
        }
        Ok(())
    }
}

fn block_irreducible(
    f: &FactoredIvp,
    classes: &[usize],
    indices: &BTreeSet<usize>,
    primes: &BTreeSet<u64>,
    memo: &mut HashMap<(Vec<usize>, Vec<u64>), bool>,
) -> bool {
    let mut class_key: Vec<usize> = indices.iter().map(|&i| classes[i]).collect();
    class_key.sort_unstable();
    let key = (class_key, primes.iter().copied().collect::<Vec<u64>>());
    if let Some(&hit) = memo.get(&key) {
        return hit;
    }
    let prime_vec: Vec<u64> = primes.iter().copied().collect();
    let verdict = theorem_verdict(f, indices, &prime_vec).is_irreducible();
    memo.insert(key, verdict);
    verdict
}

/// Enumerates every essentially different factorization of `f` into
/// irreducibles.
///
/// Each family of minimal coverings is split along its overlap components;
/// coarser prime groupings are skipped because a block whose induced family
/// splits is itself reducible. Component blocks are re-checked for
/// irreducibility from scratch (a block built from one family choice can
/// still be reducible under another family of its own); reducible blocks
/// contribute nothing for that family, since their factorizations arise from
/// other families. Indices left uncovered become integer-polynomial parts.
pub fn factorizations(f: &FactoredIvp) -> Result<Vec<Factorization>, IvpError> {
    ensure_image_primitive(f)?;
    if f.is_unit() {
        return Err(IvpError::UnitInput);
    }
    let all: BTreeSet<usize> = (0..f.factors.len()).collect();
    if f.denom_primes.is_empty() {
        let parts = all
            .iter()
            .map(|&i| IvpPart::new(f, [i].into_iter().collect(), BTreeSet::new()))
            .collect();
        return Ok(vec![Factorization::new(f.sign, parts, None)]);
    }
    let classes = factor_classes(&f.factors);
    let mut memo: HashMap<(Vec<usize>, Vec<u64>), bool> = HashMap::new();
    let cover_map = minimal_cover_map(f, &all, &f.denom_primes);
    let mut found: BTreeSet<Factorization> = BTreeSet::new();
    for family in CoveringFamilies::new(cover_map) {
        let components = family.overlap_components();
        let blocks: Vec<(BTreeSet<u64>, BTreeSet<usize>)> = components
            .iter()
            .map(|comp| (comp.clone(), family.union_over(comp).expect("component primes")))
            .collect();
        if !blocks
            .iter()
            .all(|(primes, indices)| block_irreducible(f, &classes, indices, primes, &mut memo))
        {
            continue;
        }
        let mut parts: Vec<IvpPart> = Vec::with_capacity(blocks.len());
        let mut covered: BTreeSet<usize> = BTreeSet::new();
        for (primes, indices) in blocks {
            covered.extend(indices.iter().copied());
            parts.push(IvpPart::new(f, indices, primes));
        }
        for &i in all.difference(&covered) {
            parts.push(IvpPart::new(f, [i].into_iter().collect(), BTreeSet::new()));
        }
        let trivial = parts.len() == 1;
        let certificate =
            (!trivial).then(|| Certificate { family: family.clone(), partition: components });
        found.insert(Factorization::new(f.sign, parts, certificate));
    }
    debug_assert!(!found.is_empty(), "an integer-valued element always factors");
    Ok(found.into_iter().collect())
}

/// The multiset of factorization lengths, sorted ascending.
pub fn lengths(f: &FactoredIvp) -> Result<Vec<usize>, IvpError> {
    let mut out: Vec<usize> = factorizations(f)?.iter().map(Factorization::len).collect();
    out.sort_unstable();
    Ok(out)
}
