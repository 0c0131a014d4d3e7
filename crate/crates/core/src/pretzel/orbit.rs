use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::Serialize;

use super::tuple::{canonical_form, validate, PretzelTuple};
use crate::error::{Error, Result};

/// Largest number of arrangements visited without an explicit override.
pub const ORBIT_STATE_LIMIT: u128 = 39_916_800; // 11!

/// Longest tuple the packed enumeration supports.
pub const MAX_ORBIT_LEN: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MutationKind {
    /// Every Conway sphere `S_1 .. S_2n`.
    All,
    /// Spheres `S_2 .. S_2n`, which leave the first crossing circle alone.
    UnlinkedOnly,
}

/// Adjacent transpositions `sigma_a` (1-based `a`) available as mutations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MutationGenerators {
    pub kind: MutationKind,
    pub indices: Vec<usize>,
}

impl MutationGenerators {
    /// Generators for a tuple of length `m = 2n + 1`.
    pub fn for_length(kind: MutationKind, m: usize) -> Self {
        let first = match kind {
            MutationKind::All => 1,
            MutationKind::UnlinkedOnly => 2,
        };
        Self {
            kind,
            indices: (first..m).collect(),
        }
    }
}

/// `(2n)!/2` for `All`, `(2n - 1)!/2` for `UnlinkedOnly`.
pub fn mutant_count_formula(n: usize, kind: MutationKind) -> u128 {
    let top = match kind {
        MutationKind::All => 2 * n,
        MutationKind::UnlinkedOnly => 2 * n - 1,
    };
    factorial(top) / 2
}

fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

/// Maximal runs of consecutive generator indices, as 0-based position
/// ranges. A run `a..=b` of adjacent transpositions generates the full
/// symmetric group on positions `a-1..=b`.
fn position_blocks(indices: &[usize]) -> Vec<(usize, usize)> {
    let sorted: BTreeSet<usize> = indices.iter().copied().collect();
    let mut blocks: Vec<(usize, usize)> = Vec::new();
    for a in sorted {
        match blocks.last_mut() {
            Some((_, end)) if *end == a - 1 => *end = a,
            _ => blocks.push((a - 1, a)),
        }
    }
    blocks
}

/// Number of arrangements the orbit enumeration visits.
pub fn orbit_state_count(g: &MutationGenerators) -> u128 {
    position_blocks(&g.indices)
        .iter()
        .map(|&(s, e)| factorial(e - s + 1))
        .product()
}

fn check_generators(t: &PretzelTuple, g: &MutationGenerators) -> Result<()> {
    let violations = validate(t);
    if !violations.is_empty() {
        return Err(Error::InvalidTuple(violations));
    }
    let m = t.len();
    if let Some(&a) = g.indices.iter().find(|&&a| a == 0 || a >= m) {
        return Err(Error::IndexOutOfRange { index: a, max: m - 1 });
    }
    Ok(())
}

/// Distinct canonical forms reachable from `t` by the generator swaps,
/// sorted ascending.
///
/// The swaps generate, on each maximal run of consecutive indices, the full
/// symmetric group of the covered slots, so the orbit is the product of
/// those slot permutations. Each arrangement is reduced to its dihedral
/// canonical form and packed into a `u64` of 4-bit ranks.
///
/// # Errors
/// [`Error::InvalidTuple`] for a tuple failing [`validate`];
/// [`Error::SizeGuard`] when more than 11! arrangements would be visited and
/// `allow_large` is false; [`Error::Usage`] beyond 16 entries.
pub fn enumerate_mutants(t: &PretzelTuple, g: &MutationGenerators, allow_large: bool) -> Result<Vec<PretzelTuple>> {
    check_generators(t, g)?;
    let states = orbit_state_count(g);
    if states > ORBIT_STATE_LIMIT && !allow_large {
        return Err(Error::SizeGuard {
            states,
            limit: ORBIT_STATE_LIMIT,
        });
    }
    let m = t.len();
    if m > MAX_ORBIT_LEN {
        return Err(Error::Usage(format!(
            "orbit enumeration supports at most {MAX_ORBIT_LEN} entries, got {m}"
        )));
    }

    let mut values = t.entries().to_vec();
    values.sort_unstable();
    let mut ranks: Vec<u8> = t
        .entries()
        .iter()
        .map(|q| values.binary_search(q).expect("entry present") as u8)
        .collect();
    let blocks = position_blocks(&g.indices);
    for &(s, e) in &blocks {
        ranks[s..=e].sort_unstable();
    }

    let mut seen: HashSet<u64> = HashSet::new();
    let mut scratch = vec![0u8; m];
    loop {
        seen.insert(pack_canonical(&ranks, &mut scratch));
        let mut advanced = false;
        for &(s, e) in blocks.iter().rev() {
            if next_permutation(&mut ranks[s..=e]) {
                advanced = true;
                break;
            }
        }
        if !advanced {
            break;
        }
    }

    let mut packed: Vec<u64> = seen.into_iter().collect();
    packed.sort_unstable();
    Ok(packed
        .into_iter()
        .map(|p| {
            PretzelTuple::new(
                (0..m)
                    .map(|i| values[((p >> (4 * (m - 1 - i))) & 0xf) as usize])
                    .collect(),
            )
        })
        .collect())
}

/// Reference orbit: breadth-first closure over raw arrangements, reduced to
/// canonical forms afterwards. Visits every arrangement, so only suited to
/// short tuples.
///
/// # Errors
/// As for [`enumerate_mutants`], with the size guard always enforced.
pub fn closure_orbit(t: &PretzelTuple, g: &MutationGenerators) -> Result<Vec<PretzelTuple>> {
    check_generators(t, g)?;
    let states = orbit_state_count(g);
    if states > ORBIT_STATE_LIMIT {
        return Err(Error::SizeGuard {
            states,
            limit: ORBIT_STATE_LIMIT,
        });
    }
    let mut visited: HashSet<Vec<i64>> = HashSet::new();
    let mut queue = VecDeque::new();
    visited.insert(t.entries().to_vec());
    queue.push_back(t.entries().to_vec());
    while let Some(cur) = queue.pop_front() {
        for &a in &g.indices {
            let mut next = cur.clone();
            next.swap(a - 1, a);
            if visited.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let forms: BTreeSet<PretzelTuple> = visited
        .into_iter()
        .map(|q| canonical_form(&PretzelTuple::new(q)))
        .collect();
    Ok(forms.into_iter().collect())
}

/// Lexicographic successor in place; on the last permutation, resets to
/// ascending order and returns false.
fn next_permutation(xs: &mut [u8]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        xs.reverse();
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

/// Packs the dihedral canonical form of a rank arrangement, first slot in
/// the most significant nibble so integer order matches lexicographic order.
fn pack_canonical(ranks: &[u8], scratch: &mut [u8]) -> u64 {
    let m = ranks.len();
    let distinct = {
        let mut mask = 0u32;
        ranks.iter().all(|&r| {
            let bit = 1u32 << r;
            let fresh = mask & bit == 0;
            mask |= bit;
            fresh
        })
    };
    if distinct {
        let p = ranks.iter().position(|&r| r == 0).unwrap_or(0);
        let forward = ranks[(p + 1) % m] < ranks[(p + m - 1) % m];
        for (i, s) in scratch.iter_mut().enumerate() {
            *s = if forward {
                ranks[(p + i) % m]
            } else {
                ranks[(p + m - i) % m]
            };
        }
    } else {
        let mut best: Option<Vec<u8>> = None;
        for k in 0..m {
            for dir in [true, false] {
                let img: Vec<u8> = (0..m)
                    .map(|i| {
                        if dir {
                            ranks[(k + i) % m]
                        } else {
                            ranks[(k + m - i) % m]
                        }
                    })
                    .collect();
                if best.as_ref().is_none_or(|b| img < *b) {
                    best = Some(img);
                }
            }
        }
        scratch.copy_from_slice(&best.unwrap_or_default());
    }
    scratch.iter().fold(0u64, |acc, &r| (acc << 4) | r as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(q: &[i64]) -> PretzelTuple {
        PretzelTuple::new(q.to_vec())
    }

    #[test]
    fn generator_indices() {
        assert_eq!(
            MutationGenerators::for_length(MutationKind::All, 5).indices,
            vec![1, 2, 3, 4]
        );
        assert_eq!(
            MutationGenerators::for_length(MutationKind::UnlinkedOnly, 5).indices,
            vec![2, 3, 4]
        );
    }

    #[test]
    fn blocks_from_runs() {
        assert_eq!(position_blocks(&[1, 2, 3, 4]), vec![(0, 4)]);
        assert_eq!(position_blocks(&[1, 3, 4]), vec![(0, 1), (2, 4)]);
    }

    #[test]
    fn permutation_iteration_count() {
        let mut xs = [0u8, 1, 2, 3];
        let mut count = 1;
        while next_permutation(&mut xs) {
            count += 1;
        }
        assert_eq!(count, 24);
        assert_eq!(xs, [0, 1, 2, 3]);
    }

    #[test]
    fn counts_small() {
        let x = t(&[8, 9, 11, 13, 15]);
        let all = MutationGenerators::for_length(MutationKind::All, 5);
        assert_eq!(enumerate_mutants(&x, &all, false).unwrap().len(), 12);
        let un = MutationGenerators::for_length(MutationKind::UnlinkedOnly, 5);
        assert_eq!(enumerate_mutants(&x, &un, false).unwrap().len(), 12);
        assert_eq!(mutant_count_formula(2, MutationKind::All), 12);
        assert_eq!(mutant_count_formula(2, MutationKind::UnlinkedOnly), 3);
    }

    #[test]
    fn partial_generators_match_closure() {
        let x = t(&[8, 9, 11, 13, 15, 17, 19]);
        let g = MutationGenerators {
            kind: MutationKind::All,
            indices: vec![1, 3, 4],
        };
        assert_eq!(
            enumerate_mutants(&x, &g, false).unwrap(),
            closure_orbit(&x, &g).unwrap()
        );
    }

    #[test]
    fn packed_matches_reference_canonical() {
        let x = t(&[13, 8, 15, 9, 11]);
        let g = MutationGenerators {
            kind: MutationKind::All,
            indices: vec![],
        };
        assert_eq!(enumerate_mutants(&x, &g, false).unwrap(), vec![canonical_form(&x)]);
    }

    #[test]
    fn size_guard() {
        let x = t(&[8, 9, 11, 13, 15, 17, 19, 21, 23, 25, 27, 29, 31]);
        let g = MutationGenerators::for_length(MutationKind::All, 13);
        assert!(matches!(enumerate_mutants(&x, &g, false), Err(Error::SizeGuard { .. })));
        let un = MutationGenerators::for_length(MutationKind::UnlinkedOnly, 13);
        assert!(matches!(
            enumerate_mutants(&x, &un, false),
            Err(Error::SizeGuard { .. })
        ));
    }

    #[test]
    fn invalid_tuple_rejected() {
        let x = t(&[8, 9, 9, 13, 15]);
        let g = MutationGenerators::for_length(MutationKind::All, 5);
        assert!(matches!(enumerate_mutants(&x, &g, false), Err(Error::InvalidTuple(_))));
    }
}
