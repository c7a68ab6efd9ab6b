//! Property tests for the spec-level invariants: gcd identities, the
//! root-set/covering correspondences, and agreement between the covering
//! algorithm and the brute-force oracle.

mod common;

use std::collections::{BTreeMap, BTreeSet};

use num::bigint::BigInt;
use num::{Integer, One, Zero};
use proptest::prelude::*;

use common::{ivp_from, p, random_instance, rng, InstanceSpec};
use ivp::covers::{covering_families, CoverInstance, CoveringFamily};
use ivp::factorize::{
    factorizations, is_irreducible, is_irreducible_fast, p_image_primitive_structural, to_ivp,
};
use ivp::oracle;
use ivp::polyz::Poly;
use ivp::residues::{membership_order, product_in_ip, root_set_mod_p, MembershipOrder};

fn arb_poly(max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-20i64..=20, 1..=max_len).prop_map(|c| Poly::from_i64s(&c))
}

fn arb_nonzero_poly(max_len: usize) -> impl Strategy<Value = Poly> {
    arb_poly(max_len).prop_filter("nonzero", |g| !g.is_zero())
}

proptest! {
    #[test]
    fn content_is_multiplicative(a in arb_poly(5), b in arb_poly(5)) {
        prop_assert_eq!((&a * &b).content(), a.content() * b.content());
    }

    #[test]
    fn content_divides_fixed_divisor(g in arb_nonzero_poly(6)) {
        prop_assert!(g.fixed_divisor().is_multiple_of(&g.content()));
    }

    #[test]
    fn fixed_divisor_product_submultiplicative(a in arb_nonzero_poly(4), b in arb_nonzero_poly(4)) {
        let lhs = a.fixed_divisor() * b.fixed_divisor();
        prop_assert!((&a * &b).fixed_divisor().is_multiple_of(&lhs));
    }

    #[test]
    fn fixed_divisor_from_any_consecutive_window(g in arb_nonzero_poly(6), start in -100i64..=100) {
        let deg = g.degree().unwrap();
        let mut acc = BigInt::zero();
        for n in start..=start + deg as i64 {
            acc = acc.gcd(&g.eval_i64(n));
        }
        prop_assert_eq!(acc, g.fixed_divisor());
    }

    #[test]
    fn windowed_oracle_agrees(g in arb_nonzero_poly(5)) {
        let window = 10 * (g.degree().unwrap() as u64 + 1);
        prop_assert_eq!(oracle::brute_fixed_divisor(&g, window).unwrap(), g.fixed_divisor());
    }

    #[test]
    fn root_sets_are_multiplicative(
        a in arb_nonzero_poly(4),
        b in arb_nonzero_poly(4),
        q in prop::sample::select(vec![2u64, 3, 5, 7]),
    ) {
        let mut union = root_set_mod_p(&a, q).unwrap().members().clone();
        union.extend(root_set_mod_p(&b, q).unwrap().members());
        let product_set = root_set_mod_p(&(&a * &b), q).unwrap();
        prop_assert_eq!(product_set.members(), &union);
    }

    #[test]
    fn membership_matches_root_set(
        g in arb_nonzero_poly(5),
        q in prop::sample::select(vec![2u64, 3, 5, 7]),
    ) {
        let set = root_set_mod_p(&g, q).unwrap();
        for j in 0..q {
            let in_m = membership_order(&g, q, j).unwrap() != MembershipOrder::NotInM;
            prop_assert_eq!(in_m, set.contains(j));
        }
    }

    #[test]
    fn product_lies_in_ip_iff_p_divides_fixed_divisor(
        factors in prop::collection::vec(arb_nonzero_poly(3), 1..=5),
        q in prop::sample::select(vec![2u64, 3, 5]),
    ) {
        let sets: Vec<_> = factors.iter().map(|g| root_set_mod_p(g, q).unwrap()).collect();
        let product = Poly::product(factors.iter());
        let lhs = product_in_ip(q, &sets).unwrap();
        let rhs = product.fixed_divisor().is_multiple_of(&BigInt::from(q));
        prop_assert_eq!(lhs, rhs);
    }
}

fn arb_instance() -> impl Strategy<Value = CoverInstance> {
    (prop::sample::select(vec![2u64, 3, 5, 7]), 1usize..=9).prop_flat_map(|(q, n)| {
        prop::collection::vec(prop::collection::btree_set(0..q, 0..=q as usize), n..=n)
            .prop_map(move |sets| {
                CoverInstance::new(q, sets.into_iter().enumerate().collect())
            })
    })
}

proptest! {
    #[test]
    fn minimal_covers_complete_and_minimal(inst in arb_instance()) {
        let n = inst.indices().count();
        let computed = inst.minimal_covers();
        // brute force over every subset
        let mut expected = BTreeSet::new();
        for mask in 0u32..1 << n {
            let j: BTreeSet<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            if !inst.is_cover(&j).unwrap() {
                continue;
            }
            let minimal = j.iter().all(|&i| {
                let mut s = j.clone();
                s.remove(&i);
                !inst.is_cover(&s).unwrap()
            });
            if minimal {
                expected.insert(j);
            }
        }
        prop_assert_eq!(&computed, &expected);
        for cover in &computed {
            prop_assert!(inst.is_cover(cover).unwrap());
            prop_assert!(cover.len() as u64 <= inst.prime());
            // proper: no member with an empty root set
            prop_assert!(cover.iter().all(|i| !inst.set(*i).unwrap().is_empty()));
        }
    }

    #[test]
    fn family_stream_count_is_product(
        a in arb_instance(),
        b in arb_instance(),
    ) {
        prop_assume!(a.prime() != b.prime());
        let expected = a.minimal_covers().len() as u128 * b.minimal_covers().len() as u128;
        let families = covering_families(&[(a.prime(), a.clone()), (b.prime(), b.clone())].into_iter().collect());
        prop_assert_eq!(families.family_count(), expected);
        prop_assert_eq!(families.count() as u128, expected);
    }
}

#[test]
fn fixed_divisor_submultiplicativity_is_strict_somewhere() {
    let a = p(&[0, 1]);
    let b = p(&[-1, 1]);
    assert_eq!(a.fixed_divisor() * b.fixed_divisor(), BigInt::one());
    assert_eq!((&a * &b).fixed_divisor(), BigInt::from(2));
}

#[test]
fn overlap_components_are_disjoint_and_coarsening_stable() {
    let mut rng = rng(0xc0ffee);
    for _ in 0..200 {
        let f = random_instance(&mut rng, &InstanceSpec { image_primitive: false, ..InstanceSpec::default() });
        let all: BTreeSet<usize> = (0..f.factors().len()).collect();
        let instances: BTreeMap<u64, CoverInstance> = f
            .denom_primes()
            .iter()
            .map(|&q| {
                (
                    q,
                    CoverInstance::new(
                        q,
                        all.iter()
                            .map(|&i| (i, root_set_mod_p(&f.factors()[i], q).unwrap().members().clone()))
                            .collect(),
                    ),
                )
            })
            .collect();
        for family in covering_families(&instances).take(8) {
            let comps = family.overlap_components();
            let unions: Vec<BTreeSet<usize>> =
                comps.iter().map(|c| family.union_over(c).unwrap()).collect();
            for i in 0..unions.len() {
                for j in i + 1..unions.len() {
                    assert!(unions[i].is_disjoint(&unions[j]));
                }
            }
            if comps.len() >= 3 {
                let merged: BTreeSet<u64> = comps[0].union(&comps[1]).copied().collect();
                let merged_union = family.union_over(&merged).unwrap();
                for other in comps.iter().skip(2) {
                    assert!(merged_union.is_disjoint(&family.union_over(other).unwrap()));
                }
            }
        }
    }
}

#[test]
fn structural_test_equivalent_on_general_integer_valued_input() {
    // both directions: instances here are not necessarily image primitive
    let mut rng = rng(0xbeef);
    let spec = InstanceSpec { image_primitive: false, ..InstanceSpec::default() };
    let mut trues = 0usize;
    let mut falses = 0usize;
    for _ in 0..400 {
        let f = random_instance(&mut rng, &spec);
        let fixed = f.numerator_fixed_divisor();
        for &q in f.denom_primes() {
            let (structural, witness) = p_image_primitive_structural(&f, q).unwrap();
            let expected = !fixed.is_multiple_of(&BigInt::from(q * q));
            assert_eq!(structural, expected, "f={f}, p={q}");
            assert_eq!(witness.is_some(), structural);
            if structural {
                trues += 1;
            } else {
                falses += 1;
            }
        }
    }
    // the sample must exercise both outcomes for the equivalence to mean much
    assert!(trues > 20 && falses > 20, "unbalanced sample: {trues} true / {falses} false");
}

#[test]
fn structural_witness_pins_every_minimal_cover() {
    let mut rng = rng(0xdead);
    let spec = InstanceSpec { image_primitive: false, ..InstanceSpec::default() };
    let mut checked = 0usize;
    for _ in 0..300 {
        let f = random_instance(&mut rng, &spec);
        for &q in f.denom_primes() {
            let (structural, witness) = p_image_primitive_structural(&f, q).unwrap();
            if !structural {
                continue;
            }
            let (pinned, _) = witness.unwrap();
            let inst = CoverInstance::new(
                q,
                f.factors()
                    .iter()
                    .enumerate()
                    .map(|(i, g)| (i, root_set_mod_p(g, q).unwrap().members().clone()))
                    .collect(),
            );
            let covers: Vec<BTreeSet<usize>> = inst.minimal_covers().into_iter().collect();
            assert!(!covers.is_empty());
            for cover in &covers {
                assert!(cover.contains(&pinned), "cover {cover:?} misses the pinned index {pinned}");
            }
            // hence no two minimal coverings are disjoint
            for a in 0..covers.len() {
                for b in a + 1..covers.len() {
                    assert!(!covers[a].is_disjoint(&covers[b]));
                }
            }
            checked += 1;
        }
    }
    assert!(checked > 50, "too few structural witnesses exercised: {checked}");
}

#[test]
fn factorizations_agree_with_oracle_and_are_sound() {
    let mut rng = rng(0xfeed);
    let spec = InstanceSpec { min_factors: 1, ..InstanceSpec::default() };
    for round in 0..150 {
        let f = random_instance(&mut rng, &spec);
        let facts = factorizations(&f).unwrap();
        assert!(!facts.is_empty());
        let brute = oracle::brute_factorizations(&f).unwrap();
        assert_eq!(facts, brute, "round {round}: f={f}");
        let verdict = is_irreducible(&f).unwrap();
        assert_eq!(
            facts.len() == 1 && facts[0].is_trivial(),
            verdict.is_irreducible(),
            "round {round}: trivial-factorization criterion out of sync for f={f}"
        );
        if let Some(true) = is_irreducible_fast(&f).unwrap() {
            assert!(verdict.is_irreducible(), "round {round}: fast criterion overshot on f={f}");
        }
        for fact in &facts {
            assert!(fact.is_factorization_of(&f));
            // every part is itself irreducible
            for part in fact.parts() {
                let sub = to_ivp(
                    &part.numerator().iter().map(|g| (g.clone(), 1)).collect::<Vec<_>>(),
                    &part.denominator(),
                    10,
                )
                .unwrap();
                assert!(is_irreducible(&sub).unwrap().is_irreducible(), "part {part} of {fact}");
            }
            // certificate bookkeeping: parts = partition blocks + leftovers
            if let Some(cert) = fact.certificate() {
                let covered = fact
                    .parts()
                    .iter()
                    .filter(|part| !part.is_integer_polynomial())
                    .count();
                assert_eq!(covered, cert.partition.len());
                let union: BTreeSet<usize> = cert.family.union_all();
                let leftovers = f.factors().len() - union.len();
                assert_eq!(fact.len(), cert.partition.len() + leftovers);
            }
        }
    }
}

#[test]
fn negation_gives_sign_preserving_bijection() {
    let mut rng = rng(0xabba);
    for _ in 0..40 {
        let f = random_instance(&mut rng, &InstanceSpec::default());
        let neg = f.negated();
        let a = factorizations(&f).unwrap();
        let b = factorizations(&neg).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.parts(), y.parts());
            assert_eq!(y.unit(), -x.unit());
        }
    }
}

#[test]
fn no_two_part_split_of_the_falling_cubic() {
    // X(X-1)(X-2) sits in I_6 but is not a product of an I_2 and an I_3 element
    let f = ivp_from(&[&[0, 1], &[-1, 1], &[-2, 1]], 6);
    for fact in factorizations(&f).unwrap() {
        assert_ne!(fact.len(), 2);
    }
    let divisors = oracle::ivp_divisors(&f);
    for d in &divisors {
        let complement: BTreeSet<usize> =
            (0..3).filter(|i| !d.indices.contains(i)).collect();
        let both_proper = !d.indices.is_empty() && !complement.is_empty();
        if both_proper && d.primes == BTreeSet::from([2]) {
            // the 2-part exists, but its cofactor must then absorb 3 alone
            let rest = Poly::product(complement.iter().map(|&i| &f.factors()[i]));
            assert!(!rest.fixed_divisor().is_multiple_of(&BigInt::from(3)));
        }
    }
}

#[test]
fn family_partition_definition_matches_components_brute_force() {
    // every partition of K with pairwise-disjoint unions is a coarsening of
    // the overlap components; checked by enumerating partitions of small K
    let mut rng = rng(0x1234);
    let spec = InstanceSpec { image_primitive: false, ..InstanceSpec::default() };
    let mut families_checked = 0usize;
    for _ in 0..200 {
        let f = random_instance(&mut rng, &spec);
        let primes: Vec<u64> = f.denom_primes().to_vec();
        if primes.len() < 2 {
            continue;
        }
        let all: BTreeSet<usize> = (0..f.factors().len()).collect();
        let instances: BTreeMap<u64, CoverInstance> = primes
            .iter()
            .map(|&q| {
                (
                    q,
                    CoverInstance::new(
                        q,
                        all.iter()
                            .map(|&i| (i, root_set_mod_p(&f.factors()[i], q).unwrap().members().clone()))
                            .collect(),
                    ),
                )
            })
            .collect();
        for family in covering_families(&instances).take(4) {
            let comps = family.overlap_components();
            let comp_of = |q: u64| comps.iter().position(|c| c.contains(&q)).unwrap();
            for split in all_two_partitions(&primes) {
                let (k1, k2) = split;
                let u1 = family.union_over(&k1).unwrap();
                let u2 = family.union_over(&k2).unwrap();
                let disjoint = u1.is_disjoint(&u2);
                // disjoint iff no component crosses the split
                let crossing = comps.iter().any(|c| {
                    c.iter().any(|q| k1.contains(q)) && c.iter().any(|q| k2.contains(q))
                });
                assert_eq!(disjoint, !crossing, "family {family:?} split {k1:?}|{k2:?}");
                let _ = comp_of;
            }
            families_checked += 1;
        }
    }
    assert!(families_checked > 30);
}

fn all_two_partitions(primes: &[u64]) -> Vec<(BTreeSet<u64>, BTreeSet<u64>)> {
    let n = primes.len();
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) - 1 {
        let a: BTreeSet<u64> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| primes[i]).collect();
        let b: BTreeSet<u64> = (0..n).filter(|i| mask >> i & 1 == 0).map(|i| primes[i]).collect();
        out.push((a, b));
    }
    out
}

#[test]
fn covering_family_union_additivity() {
    let family = CoveringFamily::new(
        [
            (2u64, BTreeSet::from([0usize, 1])),
            (3u64, BTreeSet::from([1usize, 2])),
            (5u64, BTreeSet::from([3usize])),
        ]
        .into_iter()
        .collect(),
    );
    for (t1, t2) in all_two_partitions(&[2, 3, 5]) {
        let joint: BTreeSet<u64> = t1.union(&t2).copied().collect();
        let lhs = family.union_over(&joint).unwrap();
        let rhs: BTreeSet<usize> = family
            .union_over(&t1)
            .unwrap()
            .union(&family.union_over(&t2).unwrap())
            .copied()
            .collect();
        assert_eq!(lhs, rhs);
    }
}
