//! The combinatorial layer: p-coverings of the residue classes by root sets,
//! exhaustive enumeration of the minimal ones, families of minimal coverings
//! across several primes, and the overlap partition that decides whether a
//! family can be split.
//!
//! A set of factor indices `J` is a p-covering when the root sets of the
//! factors indexed by `J` jointly cover every residue class mod `p`; it is
//! minimal when no proper subset still covers. Minimal coverings are proper:
//! an index with an empty root set is always redundant.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::residues::ResidueSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("index {0} is not part of the instance")]
    UnknownIndex(usize),
    #[error("prime {0} is not part of the family")]
    UnknownPrime(u64),
    #[error("expected residue sets modulo {expected}, found one modulo {found}")]
    MixedPrimes { expected: u64, found: u64 },
}

/// The covering problem for one prime: an indexed collection of root sets.
///
/// Indices are the numerator-factor indices of the polynomial under study;
/// repeated factors keep distinct indices with identical sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverInstance {
    prime: u64,
    sets: BTreeMap<usize, BTreeSet<u64>>,
}

impl CoverInstance {
    pub fn new(prime: u64, sets: BTreeMap<usize, BTreeSet<u64>>) -> Self {
        debug_assert!(sets.values().flatten().all(|&j| j < prime));
        CoverInstance { prime, sets }
    }

    pub fn from_residue_sets(
        prime: u64,
        sets: BTreeMap<usize, ResidueSet>,
    ) -> Result<Self, CoverError> {
        let mut plain = BTreeMap::new();
        for (i, s) in sets {
            if s.prime() != prime {
                return Err(CoverError::MixedPrimes { expected: prime, found: s.prime() });
            }
            plain.insert(i, s.members().clone());
        }
        Ok(CoverInstance { prime, sets: plain })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.sets.keys().copied()
    }

    pub fn set(&self, index: usize) -> Option<&BTreeSet<u64>> {
        self.sets.get(&index)
    }

    /// The same instance restricted to a subset of the indices.
    pub fn restricted(&self, keep: &BTreeSet<usize>) -> CoverInstance {
        CoverInstance {
            prime: self.prime,
            sets: self
                .sets
                .iter()
                .filter(|(i, _)| keep.contains(i))
                .map(|(i, s)| (*i, s.clone()))
                .collect(),
        }
    }

    fn union_of<'a>(&self, indices: impl IntoIterator<Item = &'a usize>) -> BTreeSet<u64> {
        let mut u = BTreeSet::new();
        for i in indices {
            u.extend(self.sets[i].iter().copied());
        }
        u
    }

    /// Whether the root sets indexed by `j_set` cover all residues mod p.
    pub fn is_cover(&self, j_set: &BTreeSet<usize>) -> Result<bool, CoverError> {
        if let Some(&i) = j_set.iter().find(|i| !self.sets.contains_key(i)) {
            return Err(CoverError::UnknownIndex(i));
        }
        Ok(self.union_of(j_set).len() as u64 == self.prime)
    }

    /// Every minimal proper p-covering. Empty exactly when no covering
    /// exists, i.e. when p does not divide the fixed divisor of the product.
    ///
    /// Enumeration branches on the smallest still-uncovered residue (only
    /// sets containing it can help), then filters out the non-minimal
    /// covers the branching may produce.
    pub fn minimal_covers(&self) -> BTreeSet<BTreeSet<usize>> {
        let mut by_residue: BTreeMap<u64, Vec<usize>> = (0..self.prime).map(|j| (j, Vec::new())).collect();
        for (&i, s) in &self.sets {
            for &j in s {
                by_residue.get_mut(&j).unwrap().push(i);
            }
        }
        if by_residue.values().any(|c| c.is_empty()) {
            return BTreeSet::new();
        }
        let mut found = BTreeSet::new();
        self.search(&by_residue, &mut BTreeSet::new(), &mut BTreeSet::new(), &mut found);
        found.retain(|j_set: &BTreeSet<usize>| {
            j_set.iter().all(|i| {
                let rest = self.union_of(j_set.iter().filter(|&k| k != i));
                rest.len() as u64 != self.prime
            })
        });
        found
    }

    fn search(
        &self,
        by_residue: &BTreeMap<u64, Vec<usize>>,
        chosen: &mut BTreeSet<usize>,
        covered: &mut BTreeSet<u64>,
        found: &mut BTreeSet<BTreeSet<usize>>,
    ) {
        let Some(next) = (0..self.prime).find(|j| !covered.contains(j)) else {
            found.insert(chosen.clone());
            return;
        };
        for &i in &by_residue[&next] {
            if chosen.contains(&i) {
                continue;
            }
            chosen.insert(i);
            let added: Vec<u64> = self.sets[&i].iter().copied().filter(|j| covered.insert(*j)).collect();
            self.search(by_residue, chosen, covered, found);
            chosen.remove(&i);
            for j in added {
                covered.remove(&j);
            }
        }
    }
}

/// A choice of one minimal p-covering for each prime of the instance map.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CoveringFamily {
    covers: BTreeMap<u64, BTreeSet<usize>>,
}

impl CoveringFamily {
    pub fn new(covers: BTreeMap<u64, BTreeSet<usize>>) -> Self {
        CoveringFamily { covers }
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.covers.keys().copied()
    }

    pub fn cover(&self, prime: u64) -> Option<&BTreeSet<usize>> {
        self.covers.get(&prime)
    }

    pub fn as_map(&self) -> &BTreeMap<u64, BTreeSet<usize>> {
        &self.covers
    }

    /// Union of the chosen coverings over a subset of the primes. Unions over
    /// disjoint subsets combine by plain set union.
    pub fn union_over(&self, primes: &BTreeSet<u64>) -> Result<BTreeSet<usize>, CoverError> {
        let mut out = BTreeSet::new();
        for p in primes {
            let cover = self.covers.get(p).ok_or(CoverError::UnknownPrime(*p))?;
            out.extend(cover.iter().copied());
        }
        Ok(out)
    }

    pub fn union_all(&self) -> BTreeSet<usize> {
        self.covers.values().flatten().copied().collect()
    }

    /// The finest partition of the primes into blocks whose index unions are
    /// pairwise disjoint: connected components of the graph joining two
    /// primes whenever their coverings intersect.
    ///
    /// The family is partitionable exactly when this has two or more blocks,
    /// and every witnessing partition is a union of these components.
    pub fn overlap_components(&self) -> Vec<BTreeSet<u64>> {
        let primes: Vec<u64> = self.covers.keys().copied().collect();
        let mut parent: Vec<usize> = (0..primes.len()).collect();
        fn find(parent: &mut Vec<usize>, a: usize) -> usize {
            if parent[a] != a {
                let root = find(parent, parent[a]);
                parent[a] = root;
            }
            parent[a]
        }
        for a in 0..primes.len() {
            for b in a + 1..primes.len() {
                let ja = &self.covers[&primes[a]];
                let jb = &self.covers[&primes[b]];
                if !ja.is_disjoint(jb) {
                    let ra = find(&mut parent, a);
                    let rb = find(&mut parent, b);
                    parent[ra] = rb;
                }
            }
        }
        let mut blocks: BTreeMap<usize, BTreeSet<u64>> = BTreeMap::new();
        for (idx, &p) in primes.iter().enumerate() {
            let root = find(&mut parent, idx);
            blocks.entry(root).or_default().insert(p);
        }
        let mut out: Vec<BTreeSet<u64>> = blocks.into_values().collect();
        out.sort();
        out
    }
}

/// Lazy stream over all families of minimal coverings: the Cartesian product
/// of the per-prime minimal covering sets, yielded in lexicographic order.
pub struct CoveringFamilies {
    primes: Vec<u64>,
    choices: Vec<Vec<BTreeSet<usize>>>,
    cursor: Option<Vec<usize>>,
}

impl CoveringFamilies {
    pub fn new(covers: BTreeMap<u64, Vec<BTreeSet<usize>>>) -> Self {
        let primes: Vec<u64> = covers.keys().copied().collect();
        let choices: Vec<Vec<BTreeSet<usize>>> = covers.into_values().collect();
        let cursor = if choices.iter().all(|c| !c.is_empty()) {
            Some(vec![0; primes.len()])
        } else {
            None
        };
        CoveringFamilies { primes, choices, cursor }
    }

    /// Total number of families (the product of the per-prime counts).
    pub fn family_count(&self) -> u128 {
        self.choices.iter().map(|c| c.len() as u128).product()
    }
}

impl Iterator for CoveringFamilies {
    type Item = CoveringFamily;

    fn next(&mut self) -> Option<CoveringFamily> {
        let cursor = self.cursor.as_mut()?;
        let family = CoveringFamily::new(
            self.primes
                .iter()
                .enumerate()
                .map(|(pos, &p)| (p, self.choices[pos][cursor[pos]].clone()))
                .collect(),
        );
        // odometer step
        let mut done = true;
        for (pos, c) in cursor.iter_mut().enumerate().rev() {
            *c += 1;
            if *c < self.choices[pos].len() {
                done = false;
                break;
            }
            *c = 0;
        }
        if done {
            self.cursor = None;
        }
        Some(family)
    }
}

/// Streams every family of minimal coverings for the given instances.
pub fn covering_families(instances: &BTreeMap<u64, CoverInstance>) -> CoveringFamilies {
    CoveringFamilies::new(
        instances
            .iter()
            .map(|(&p, inst)| (p, inst.minimal_covers().into_iter().collect()))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn instance(prime: u64, sets: &[&[u64]]) -> CoverInstance {
        CoverInstance::new(
            prime,
            sets.iter()
                .enumerate()
                .map(|(i, s)| (i, s.iter().copied().collect()))
                .collect(),
        )
    }

    fn idx(values: &[usize]) -> BTreeSet<usize> {
        values.iter().copied().collect()
    }

    fn covers_of(inst: &CoverInstance) -> Vec<Vec<usize>> {
        inst.minimal_covers()
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect()
    }

    #[test]
    fn is_cover_examples() {
        let inst = instance(3, &[&[0, 1], &[1, 2]]);
        assert_eq!(inst.is_cover(&idx(&[0, 1])), Ok(true));
        assert_eq!(inst.is_cover(&idx(&[0])), Ok(false));
        assert_eq!(inst.is_cover(&idx(&[0, 5])), Err(CoverError::UnknownIndex(5)));

        let inst = instance(2, &[&[1], &[0], &[1], &[1]]);
        assert_eq!(inst.is_cover(&idx(&[1, 2])), Ok(true));
    }

    #[test]
    fn minimal_covers_four_linears_mod_2() {
        // root sets of X-1, X-2, X-3, X-9 mod 2
        let inst = instance(2, &[&[1], &[0], &[1], &[1]]);
        assert_eq!(covers_of(&inst), vec![vec![0, 1], vec![1, 2], vec![1, 3]]);
    }

    #[test]
    fn minimal_covers_four_linears_mod_3() {
        // root sets of X-1, X-2, X-3, X-9 mod 3
        let inst = instance(3, &[&[1], &[2], &[0], &[0]]);
        assert_eq!(covers_of(&inst), vec![vec![0, 1, 2], vec![0, 1, 3]]);
    }

    #[test]
    fn minimal_cover_with_one_element() {
        // X^p - X + p covers everything alone
        let inst = instance(2, &[&[0, 1]]);
        assert_eq!(covers_of(&inst), vec![vec![0]]);
    }

    #[test]
    fn minimal_covers_unique_mod_5() {
        let inst = instance(5, &[&[0], &[], &[2, 3], &[1, 4]]);
        assert_eq!(covers_of(&inst), vec![vec![0, 2, 3]]);
    }

    #[test]
    fn no_cover_when_residue_missed() {
        let inst = instance(3, &[&[0], &[1], &[0, 1]]);
        assert!(inst.minimal_covers().is_empty());
    }

    #[test]
    fn minimal_covers_exclude_redundant_members() {
        // {0,1} covers alone; pairs through it are not minimal
        let inst = instance(2, &[&[0, 1], &[0], &[1]]);
        assert_eq!(covers_of(&inst), vec![vec![0], vec![1, 2]]);
    }

    #[test]
    fn minimal_covers_match_brute_force() {
        // every subset checked directly, on a handful of deliberately messy instances
        let instances = [
            instance(5, &[&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[4, 0], &[0, 2]]),
            instance(3, &[&[0], &[1], &[2], &[0, 1], &[1, 2], &[0, 2]]),
            instance(7, &[&[0, 1, 2], &[2, 3, 4], &[4, 5, 6], &[6, 0], &[1, 3, 5]]),
            instance(2, &[&[], &[0], &[1], &[0, 1]]),
        ];
        for inst in &instances {
            let n = inst.indices().count();
            let mut expect = BTreeSet::new();
            for mask in 0u32..1 << n {
                let j_set: BTreeSet<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                if !inst.is_cover(&j_set).unwrap() {
                    continue;
                }
                let minimal = j_set.iter().all(|&i| {
                    let mut smaller = j_set.clone();
                    smaller.remove(&i);
                    !inst.is_cover(&smaller).unwrap()
                });
                if minimal {
                    expect.insert(j_set);
                }
            }
            assert_eq!(inst.minimal_covers(), expect);
        }
    }

    #[test]
    fn minimal_covers_have_at_most_p_elements() {
        let inst = instance(3, &[&[0], &[1], &[2], &[0, 1], &[1, 2], &[0, 2]]);
        for cover in inst.minimal_covers() {
            assert!(!cover.is_empty() && cover.len() <= 3);
        }
    }

    #[test]
    fn family_stream_counts() {
        let mod2 = instance(2, &[&[1], &[0], &[1], &[1]]);
        let mod3 = instance(3, &[&[1], &[2], &[0], &[0]]);
        let families = covering_families(&[(2, mod2), (3, mod3)].into_iter().collect());
        assert_eq!(families.family_count(), 6);
        assert_eq!(families.count(), 6);

        let single = covering_families(&[(3, instance(3, &[&[0, 1], &[1, 2]]))].into_iter().collect());
        assert_eq!(single.family_count(), 1);

        let empty = covering_families(&[(2, instance(2, &[&[], &[]]))].into_iter().collect());
        assert_eq!(empty.family_count(), 0);
        assert_eq!(empty.count(), 0);
    }

    #[test]
    fn union_over_examples() {
        let family = CoveringFamily::new(
            [(2u64, idx(&[1, 3])), (3u64, idx(&[0, 1, 2]))].into_iter().collect(),
        );
        let all: BTreeSet<u64> = [2u64, 3].into_iter().collect();
        assert_eq!(family.union_over(&all), Ok(idx(&[0, 1, 2, 3])));
        assert_eq!(family.union_over(&BTreeSet::new()), Ok(BTreeSet::new()));
        let missing: BTreeSet<u64> = [5u64].into_iter().collect();
        assert_eq!(family.union_over(&missing), Err(CoverError::UnknownPrime(5)));

        let family = CoveringFamily::new(
            [(2u64, idx(&[1, 2])), (3u64, idx(&[0, 1, 2]))].into_iter().collect(),
        );
        assert_eq!(family.union_over(&all), Ok(idx(&[0, 1, 2])));
    }

    #[test]
    fn union_over_is_additive_on_disjoint_prime_sets() {
        let family = CoveringFamily::new(
            [(2u64, idx(&[0, 1])), (3u64, idx(&[1, 2])), (5u64, idx(&[3]))]
                .into_iter()
                .collect(),
        );
        let t1: BTreeSet<u64> = [2u64].into_iter().collect();
        let t2: BTreeSet<u64> = [3u64, 5].into_iter().collect();
        let both: BTreeSet<u64> = t1.union(&t2).copied().collect();
        let lhs = family.union_over(&both).unwrap();
        let rhs: BTreeSet<usize> = family
            .union_over(&t1)
            .unwrap()
            .union(&family.union_over(&t2).unwrap())
            .copied()
            .collect();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn overlap_components_examples() {
        // joined through the shared index 1
        let family = CoveringFamily::new(
            [(2u64, idx(&[0, 1])), (3u64, idx(&[0, 1, 2]))].into_iter().collect(),
        );
        assert_eq!(family.overlap_components(), vec![[2u64, 3].into_iter().collect::<BTreeSet<_>>()]);

        // disjoint coverings split into singleton blocks
        let family = CoveringFamily::new(
            [(3u64, idx(&[0, 1])), (5u64, idx(&[2, 3, 4]))].into_iter().collect(),
        );
        assert_eq!(
            family.overlap_components(),
            vec![
                [3u64].into_iter().collect::<BTreeSet<_>>(),
                [5u64].into_iter().collect::<BTreeSet<_>>()
            ]
        );

        let family = CoveringFamily::new([(7u64, idx(&[0, 3]))].into_iter().collect());
        assert_eq!(family.overlap_components().len(), 1);
    }

    #[test]
    fn overlap_components_are_finest_disjoint_partition() {
        let family = CoveringFamily::new(
            [
                (2u64, idx(&[0, 1])),
                (3u64, idx(&[1, 2])),
                (5u64, idx(&[4, 5])),
                (7u64, idx(&[5, 6])),
            ]
            .into_iter()
            .collect(),
        );
        let comps = family.overlap_components();
        assert_eq!(comps.len(), 2);
        // blocks have pairwise disjoint unions
        for a in 0..comps.len() {
            for b in a + 1..comps.len() {
                let ua = family.union_over(&comps[a]).unwrap();
                let ub = family.union_over(&comps[b]).unwrap();
                assert!(ua.is_disjoint(&ub));
            }
        }
        // merging two blocks of a 2+-block result keeps the rest disjoint
        let merged: BTreeSet<u64> = comps[0].union(&comps[1]).copied().collect();
        let u_merged = family.union_over(&merged).unwrap();
        for other in comps.iter().skip(2) {
            assert!(u_merged.is_disjoint(&family.union_over(other).unwrap()));
        }
    }

    #[test]
    fn families_stream_is_duplicate_free() {
        let mod2 = instance(2, &[&[1], &[0], &[1], &[1]]);
        let mod3 = instance(3, &[&[1], &[2], &[0], &[0]]);
        let families: Vec<_> =
            covering_families(&[(2, mod2), (3, mod3)].into_iter().collect()).collect();
        let unique: BTreeSet<_> = families.iter().cloned().collect();
        assert_eq!(unique.len(), families.len());
    }

    #[test]
    fn restricted_instance_keeps_original_indices() {
        let inst = instance(3, &[&[0], &[1], &[2], &[0, 1]]);
        let keep = idx(&[1, 2, 3]);
        let sub = inst.restricted(&keep);
        assert_eq!(sub.indices().collect::<Vec<_>>(), vec![1, 2, 3]);
        assert_eq!(sub.set(3), Some(&[0u64, 1].into_iter().collect()));
    }
}
