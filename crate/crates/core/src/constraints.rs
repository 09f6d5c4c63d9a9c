//! Zero-pattern instances and the subset-intersection conditions on them.
//!
//! A [`ConstraintInstance`] asks for a `k x n` generator matrix with
//! `G[i][j] = 0` for every `j` in `sets[i]`. The quantities here are all
//! maxima or universal statements over the nonempty subsets `omega` of the
//! rows (or blocks), evaluated by exhaustive depth-first enumeration. The DFS
//! visits subsets in lexicographic order of their sorted index lists, so the
//! first violation found is the lexicographically first one.
//!
//! All indices, both columns and rows, are 0-based.

use std::fmt;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};

/// Subset of `{0, .., universe - 1}` stored as a bit vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IndexSet {
    universe: usize,
    words: Vec<u64>,
}

impl IndexSet {
    pub fn empty(universe: usize) -> IndexSet {
        IndexSet {
            universe,
            words: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn full(universe: usize) -> IndexSet {
        let mut s = IndexSet::empty(universe);
        for i in 0..universe {
            s.insert(i);
        }
        s
    }

    pub fn from_indices(universe: usize, indices: impl IntoIterator<Item = usize>) -> Result<IndexSet> {
        let mut s = IndexSet::empty(universe);
        for i in indices {
            if i >= universe {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    len: universe,
                });
            }
            s.insert(i);
        }
        Ok(s)
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.universe && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Panics if `i` is outside the universe.
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.universe, "index {i} outside universe {}", self.universe);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        if i < self.universe {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.universe).filter(move |&i| self.contains(i))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn intersection(&self, other: &IndexSet) -> IndexSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn intersect_with(&mut self, other: &IndexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
        if other.words.len() < self.words.len() {
            for a in &mut self.words[other.words.len()..] {
                *a = 0;
            }
        }
    }

    fn assign_intersection(&mut self, a: &IndexSet, b: &IndexSet) {
        for ((o, x), y) in self.words.iter_mut().zip(&a.words).zip(&b.words) {
            *o = x & y;
        }
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.iter().all(|i| other.contains(i))
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Outcome of a universally quantified subset condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Holds,
    /// Lexicographically first violating subset (0-based).
    Violated(Vec<usize>),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&[usize]> {
        match self {
            Verdict::Holds => None,
            Verdict::Violated(omega) => Some(omega),
        }
    }
}

/// Aggregates carried along one subset of the DFS.
#[derive(Debug, Clone, Copy)]
struct SubsetStats {
    /// `|intersection of S_i|`
    common: usize,
    /// `sum of r_i`
    weight: usize,
    /// `max of |S_i| + r_i`
    peak: usize,
}

/// Depth-first walk over all nonempty subsets of `0..sets.len()` in
/// lexicographic order, with running intersections memoized per depth.
fn walk_subsets<F>(sets: &[&IndexSet], weights: &[usize], mut visit: F) -> Result<()>
where
    F: FnMut(&[usize], SubsetStats) -> ControlFlow<()>,
{
    let count = sets.len();
    let cap = Caps::global().subsets;
    if count > cap {
        return Err(Error::CapExceeded {
            what: "subset enumeration size",
            value: count as u64,
            cap: cap as u64,
        });
    }
    let Some(first) = sets.first() else {
        return Ok(());
    };
    let mut levels = vec![IndexSet::empty(first.universe()); count + 1];
    levels[0] = IndexSet::full(first.universe());
    let mut omega = Vec::with_capacity(count);

    #[allow(clippy::too_many_arguments)]
    fn rec<F>(
        sets: &[&IndexSet],
        weights: &[usize],
        levels: &mut [IndexSet],
        omega: &mut Vec<usize>,
        start: usize,
        weight: usize,
        peak: usize,
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[usize], SubsetStats) -> ControlFlow<()>,
    {
        let depth = omega.len();
        for i in start..sets.len() {
            let (head, tail) = levels.split_at_mut(depth + 1);
            tail[0].assign_intersection(&head[depth], sets[i]);
            let stats = SubsetStats {
                common: tail[0].len(),
                weight: weight + weights[i],
                peak: peak.max(sets[i].len() + weights[i]),
            };
            omega.push(i);
            visit(omega, stats)?;
            rec(sets, weights, levels, omega, i + 1, stats.weight, stats.peak, visit)?;
            omega.pop();
        }
        ControlFlow::Continue(())
    }

    let _ = rec(sets, weights, &mut levels, &mut omega, 0, 0, 0, &mut visit);
    Ok(())
}

/// The zero-pattern design problem: `k = sets.len()` rows over `n` columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintInstance {
    n: usize,
    sets: Vec<IndexSet>,
}

impl ConstraintInstance {
    pub fn new(n: usize, sets: Vec<Vec<usize>>) -> Result<ConstraintInstance> {
        let sets = sets
            .into_iter()
            .map(|s| IndexSet::from_indices(n, s))
            .collect::<Result<Vec<_>>>()?;
        ConstraintInstance::from_sets(n, sets)
    }

    pub fn from_sets(n: usize, sets: Vec<IndexSet>) -> Result<ConstraintInstance> {
        if n == 0 {
            return Err(Error::InvalidInstance("code length n must be at least 1".into()));
        }
        if sets.is_empty() {
            return Err(Error::InvalidInstance("dimension k must be at least 1".into()));
        }
        if let Some(s) = sets.iter().find(|s| s.universe() != n) {
            return Err(Error::InvalidInstance(format!(
                "set universe {} does not match n = {n}",
                s.universe()
            )));
        }
        Ok(ConstraintInstance { n, sets })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[IndexSet] {
        &self.sets
    }

    pub fn set_lists(&self) -> Vec<Vec<usize>> {
        self.sets.iter().map(IndexSet::to_vec).collect()
    }

    fn set_refs(&self) -> Vec<&IndexSet> {
        self.sets.iter().collect()
    }

    /// `max over nonempty omega of |intersection S_i| + |omega|`.
    pub fn compute_ell(&self) -> Result<usize> {
        let mut best = 0;
        walk_subsets(&self.set_refs(), &vec![1; self.k()], |_, s| {
            best = best.max(s.common + s.weight);
            ControlFlow::Continue(())
        })?;
        Ok(best)
    }

    pub fn singleton_bound(&self) -> Result<SingletonBound> {
        let ell = self.compute_ell()?;
        Ok(SingletonBound {
            ell,
            d_upper: self.n as i64 + 1 - ell as i64,
        })
    }

    /// Whether `|intersection S_i| <= k - |omega|` for every nonempty omega.
    pub fn check_gmmds(&self) -> Result<Verdict> {
        gmmds_at_dimension(&self.set_refs(), self.k())
    }

    /// Appends `ell - k` empty sets.
    pub fn pad_to_ell(&self) -> Result<ConstraintInstance> {
        let ell = self.compute_ell()?;
        // Any omega touching a padded row has an empty intersection, so the
        // padded instance satisfies the GM-MDS condition iff the original rows
        // do at dimension ell.
        assert!(
            gmmds_at_dimension(&self.set_refs(), ell)?.holds(),
            "padding to ell must satisfy the GM-MDS condition"
        );
        let mut sets = self.sets.clone();
        sets.resize(ell, IndexSet::empty(self.n));
        Ok(ConstraintInstance { n: self.n, sets })
    }

    /// Enlarges every set to exactly `k - 1` elements over `n + extra`
    /// columns (the new ones are `n..n + extra`) while keeping the GM-MDS
    /// condition at dimension `k`. New columns are tried before original
    /// ones. Returns `None` when no completion exists in that universe.
    ///
    /// The instance must already satisfy the GM-MDS condition, e.g. the
    /// output of [`ConstraintInstance::pad_to_ell`].
    pub fn complete_sets(&self, extra: usize) -> Result<Option<ConstraintInstance>> {
        if let Verdict::Violated(omega) = self.check_gmmds()? {
            return Err(Error::InvalidInstance(format!(
                "cannot complete sets that violate the GM-MDS condition at {omega:?}"
            )));
        }
        let k = self.k();
        let universe = self.n + extra;
        let mut sets: Vec<IndexSet> = self
            .sets
            .iter()
            .map(|s| IndexSet::from_indices(universe, s.iter()))
            .collect::<Result<_>>()?;
        let order: Vec<usize> = (self.n..universe).chain(0..self.n).collect();

        fn rec(sets: &mut [IndexSet], order: &[usize], k: usize, row: usize, from: usize) -> Result<bool> {
            let Some(row) = (row..sets.len()).find(|&i| sets[i].len() < k - 1) else {
                return Ok(true);
            };
            for pos in from..order.len() {
                let col = order[pos];
                if sets[row].contains(col) {
                    continue;
                }
                sets[row].insert(col);
                let refs: Vec<&IndexSet> = sets.iter().collect();
                if gmmds_at_dimension(&refs, k)?.holds() {
                    let next_from = if sets[row].len() < k - 1 { pos + 1 } else { 0 };
                    if rec(sets, order, k, row, next_from)? {
                        return Ok(true);
                    }
                }
                sets[row].remove(col);
            }
            Ok(false)
        }

        if rec(&mut sets, &order, k, 0, 0)? {
            Ok(Some(ConstraintInstance { n: universe, sets }))
        } else {
            Ok(None)
        }
    }
}

fn gmmds_at_dimension(sets: &[&IndexSet], dim: usize) -> Result<Verdict> {
    let mut verdict = Verdict::Holds;
    walk_subsets(sets, &vec![1; sets.len()], |omega, s| {
        if s.common + s.weight > dim {
            verdict = Verdict::Violated(omega.to_vec());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(verdict)
}

/// Upper bound `d_upper = n + 1 - ell` on the minimum distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SingletonBound {
    pub ell: usize,
    pub d_upper: i64,
}

impl SingletonBound {
    /// False when no code of this length can meet the constraints.
    pub fn is_feasible_length(&self) -> bool {
        self.d_upper >= 1
    }
}

/// One `(S_i, r_i)` block of a [`GeneralInstance`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub set: IndexSet,
    pub r: usize,
}

/// A point of the block parameter space: `m` blocks `(S_i, r_i)` over `n`
/// variables with `|S_i| + r_i <= k` and `sum r_i = k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralInstance {
    k: usize,
    n: usize,
    blocks: Vec<Block>,
}

impl GeneralInstance {
    pub fn new(n: usize, blocks: Vec<(Vec<usize>, usize)>) -> Result<GeneralInstance> {
        let blocks = blocks
            .into_iter()
            .map(|(s, r)| {
                Ok(Block {
                    set: IndexSet::from_indices(n, s)?,
                    r,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        GeneralInstance::from_blocks(n, blocks)
    }

    pub fn from_blocks(n: usize, blocks: Vec<Block>) -> Result<GeneralInstance> {
        if blocks.is_empty() {
            return Err(Error::InvalidInstance("at least one block is required".into()));
        }
        let k: usize = blocks.iter().map(|b| b.r).sum();
        for (i, b) in blocks.iter().enumerate() {
            if b.r == 0 {
                return Err(Error::InvalidInstance(format!("block {i} has r = 0")));
            }
            if b.set.universe() != n {
                return Err(Error::InvalidInstance(format!(
                    "block {i} set universe {} does not match n = {n}",
                    b.set.universe()
                )));
            }
            if b.set.len() + b.r > k {
                return Err(Error::InvalidInstance(format!(
                    "block {i}: |S| + r = {} exceeds k = {k}",
                    b.set.len() + b.r
                )));
            }
        }
        Ok(GeneralInstance { k, n, blocks })
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.blocks.len()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Whether `|intersection S_i| + sum r_i <= max (|S_i| + r_i)` for every
    /// nonempty omega of blocks.
    pub fn check_general(&self) -> Result<Verdict> {
        let sets: Vec<&IndexSet> = self.blocks.iter().map(|b| &b.set).collect();
        let weights: Vec<usize> = self.blocks.iter().map(|b| b.r).collect();
        let mut verdict = Verdict::Holds;
        walk_subsets(&sets, &weights, |omega, s| {
            if s.common + s.weight > s.peak {
                verdict = Verdict::Violated(omega.to_vec());
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        Ok(verdict)
    }

    /// Upper bound on the total degree of `det M` in the alphas:
    /// `sum_i r_i |S_i|`.
    pub fn degree_bound(&self) -> usize {
        self.blocks.iter().map(|b| b.r * b.set.len()).sum()
    }
}

impl fmt::Display for GeneralInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={} n={} [", self.k, self.n)?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({:?},{})", b.set, b.r)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn inst(n: usize, sets: &[&[usize]]) -> ConstraintInstance {
        ConstraintInstance::new(n, sets.iter().map(|s| s.to_vec()).collect()).unwrap()
    }

    fn general(n: usize, blocks: &[(&[usize], usize)]) -> GeneralInstance {
        GeneralInstance::new(n, blocks.iter().map(|(s, r)| (s.to_vec(), *r)).collect()).unwrap()
    }

    /// Direct enumeration over bitmasks; shares nothing with the DFS.
    fn ell_oracle(inst: &ConstraintInstance) -> usize {
        let k = inst.k();
        (1u32..1 << k)
            .map(|mask| {
                let common = (0..inst.n())
                    .filter(|&j| {
                        (0..k)
                            .filter(|i| mask >> i & 1 == 1)
                            .all(|i| inst.sets()[i].contains(j))
                    })
                    .count();
                common + mask.count_ones() as usize
            })
            .max()
            .unwrap()
    }

    fn random_instance(rng: &mut ChaCha8Rng, k: usize, n: usize, density: f64) -> ConstraintInstance {
        let sets = (0..k)
            .map(|_| (0..n).filter(|_| rng.gen_bool(density)).collect())
            .collect();
        ConstraintInstance::new(n, sets).unwrap()
    }

    #[test]
    fn index_set_basics() {
        let mut s = IndexSet::from_indices(130, [0, 64, 129]).unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.contains(129) && !s.contains(128) && !s.contains(500));
        s.remove(64);
        assert_eq!(s.to_vec(), vec![0, 129]);
        let t = IndexSet::from_indices(130, [129, 5]).unwrap();
        assert_eq!(s.intersection(&t).to_vec(), vec![129]);
        assert!(IndexSet::from_indices(4, [4]).is_err());
        assert_eq!(IndexSet::full(70).len(), 70);
    }

    #[test]
    fn ell_examples() {
        assert_eq!(inst(4, &[&[0, 1], &[2]]).compute_ell().unwrap(), 3);
        assert_eq!(inst(5, &[&[], &[], &[], &[]]).compute_ell().unwrap(), 4);
        assert_eq!(inst(5, &[&[0, 1, 2]]).compute_ell().unwrap(), 4);
    }

    #[test]
    fn singleton_examples() {
        assert_eq!(inst(4, &[&[0, 1], &[2]]).singleton_bound().unwrap().d_upper, 2);
        assert_eq!(inst(6, &[&[], &[], &[]]).singleton_bound().unwrap().d_upper, 4);
        for n in 2..9 {
            let b = inst(n, &[&(0..n - 1).collect::<Vec<_>>()]).singleton_bound().unwrap();
            assert_eq!(b.d_upper, 1);
            assert!(b.is_feasible_length());
        }
        let b = inst(2, &[&[0, 1], &[0, 1]]).singleton_bound().unwrap();
        assert_eq!(b.d_upper, -1);
        assert!(!b.is_feasible_length());
    }

    #[test]
    fn gmmds_examples() {
        assert_eq!(inst(4, &[&[0, 1], &[2, 3], &[]]).check_gmmds().unwrap(), Verdict::Holds);
        assert_eq!(
            inst(3, &[&[0, 1], &[1, 2], &[1]]).check_gmmds().unwrap(),
            Verdict::Violated(vec![0, 1, 2])
        );
        assert_eq!(
            inst(1, &[&[0], &[0]]).check_gmmds().unwrap(),
            Verdict::Violated(vec![0, 1])
        );
    }

    #[test]
    fn general_examples() {
        assert_eq!(general(0, &[(&[], 3)]).check_general().unwrap(), Verdict::Holds);
        assert_eq!(
            general(2, &[(&[0], 1), (&[1], 1)]).check_general().unwrap(),
            Verdict::Holds
        );
        assert_eq!(
            general(2, &[(&[0], 1), (&[0], 1)]).check_general().unwrap(),
            Verdict::Violated(vec![0, 1])
        );
    }

    #[test]
    fn general_instance_validation() {
        assert!(GeneralInstance::new(2, vec![]).is_err());
        assert!(GeneralInstance::new(2, vec![(vec![0], 0), (vec![], 2)]).is_err());
        // |S| + r = 3 > k = 2
        assert!(GeneralInstance::new(2, vec![(vec![0, 1], 1), (vec![], 1)]).is_err());
        assert!(GeneralInstance::new(2, vec![(vec![2], 1), (vec![], 1)]).is_err());
        assert!(ConstraintInstance::new(0, vec![vec![]]).is_err());
        assert!(ConstraintInstance::new(3, vec![]).is_err());
    }

    #[test]
    fn pad_examples() {
        let padded = inst(4, &[&[0, 1], &[2]]).pad_to_ell().unwrap();
        assert_eq!(padded.k(), 3);
        assert!(padded.sets()[2].is_empty());
        let mds = inst(4, &[&[0], &[1]]);
        assert_eq!(mds.pad_to_ell().unwrap(), mds);
        let single = inst(4, &[&[0, 1]]).pad_to_ell().unwrap();
        assert_eq!(single.k(), 3);
        assert!(single.sets()[1].is_empty() && single.sets()[2].is_empty());
    }

    #[test]
    fn ell_matches_oracle_and_pad_passes() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let k = rng.gen_range(1..=6);
            let n = rng.gen_range(1..=9);
            let density = rng.gen_range(0.0..0.9);
            let i = random_instance(&mut rng, k, n, density);
            let ell = i.compute_ell().unwrap();
            assert_eq!(ell, ell_oracle(&i));
            assert!(ell >= k);
            let padded = i.pad_to_ell().unwrap();
            assert_eq!(padded.k(), ell);
            assert!(padded.check_gmmds().unwrap().holds());
            let all_small = i.sets().iter().all(|s| s.len() < k);
            assert_eq!(ell == k, i.check_gmmds().unwrap().holds() && all_small);
        }
    }

    #[test]
    fn gmmds_monotone_under_removal() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..500 {
            let k = rng.gen_range(1..=5);
            let n = rng.gen_range(1..=7);
            let i = random_instance(&mut rng, k, n, 0.4);
            if !i.check_gmmds().unwrap().holds() {
                continue;
            }
            let row = rng.gen_range(0..k);
            if let Some(&col) = i.sets()[row].to_vec().first() {
                let mut sets = i.sets().to_vec();
                sets[row].remove(col);
                let smaller = ConstraintInstance::from_sets(n, sets).unwrap();
                assert!(smaller.check_gmmds().unwrap().holds());
            }
        }
    }

    #[test]
    fn witness_is_lexicographically_first() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..300 {
            let k = rng.gen_range(2..=5);
            let n = rng.gen_range(1..=5);
            let i = random_instance(&mut rng, k, n, 0.6);
            let mut violating: Vec<Vec<usize>> = (1u32..1 << k)
                .map(|mask| (0..k).filter(|b| mask >> b & 1 == 1).collect::<Vec<_>>())
                .filter(|omega| {
                    let common = (0..n)
                        .filter(|&j| omega.iter().all(|&r| i.sets()[r].contains(j)))
                        .count();
                    common > k - omega.len()
                })
                .collect();
            violating.sort();
            match i.check_gmmds().unwrap() {
                Verdict::Holds => assert!(violating.is_empty()),
                Verdict::Violated(w) => assert_eq!(Some(&w), violating.first()),
            }
        }
    }

    #[test]
    fn unit_block_shape_agrees_with_gmmds() {
        // k = m, r_i = 1, |S_i| = k - 1: the block condition reduces to GM-MDS.
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..400 {
            let k = rng.gen_range(1..=5);
            let n = rng.gen_range((k - 1).max(1)..=k + 3);
            let sets: Vec<Vec<usize>> = (0..k)
                .map(|_| {
                    let mut cols: Vec<usize> = (0..n).collect();
                    for i in (1..cols.len()).rev() {
                        cols.swap(i, rng.gen_range(0..=i));
                    }
                    let mut s = cols[..k - 1].to_vec();
                    s.sort();
                    s
                })
                .collect();
            let c = ConstraintInstance::new(n, sets.clone()).unwrap();
            let g = GeneralInstance::new(n, sets.into_iter().map(|s| (s, 1)).collect()).unwrap();
            assert_eq!(c.check_gmmds().unwrap().holds(), g.check_general().unwrap().holds());
        }
    }

    #[test]
    fn completion_examples() {
        let empty = inst(3, &[&[], &[], &[]]);
        let done = empty.complete_sets(2).unwrap().unwrap();
        assert_eq!(done.n(), 5);
        assert!(done.sets().iter().all(|s| s.len() == 2));
        assert!(done.check_gmmds().unwrap().holds());

        let padded = inst(4, &[&[0, 1], &[2]]).pad_to_ell().unwrap();
        let done = padded.complete_sets(2).unwrap().unwrap();
        for (orig, full) in padded.sets().iter().zip(done.sets()) {
            assert!(orig.iter().all(|j| full.contains(j)));
            assert_eq!(full.len(), 2);
        }
        assert!(inst(1, &[&[0], &[0]]).complete_sets(1).is_err());
    }

    #[test]
    fn completion_always_exists_with_ell_minus_one_extra() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for _ in 0..500 {
            let k = rng.gen_range(1..=5);
            let n = rng.gen_range(1..=9);
            let density = rng.gen_range(0.0..0.7);
            let i = random_instance(&mut rng, k, n, density);
            let b = i.singleton_bound().unwrap();
            if !b.is_feasible_length() {
                continue;
            }
            let padded = i.pad_to_ell().unwrap();
            let done = padded
                .complete_sets(b.ell - 1)
                .unwrap()
                .unwrap_or_else(|| panic!("no completion for {:?}", i.set_lists()));
            assert!(done.sets().iter().all(|s| s.len() == b.ell - 1));
            assert!(done.check_gmmds().unwrap().holds());
        }
    }

    #[test]
    fn cap_is_enforced() {
        let i = ConstraintInstance::new(3, vec![vec![]; 25]).unwrap();
        assert!(matches!(i.compute_ell(), Err(Error::CapExceeded { .. })));
        assert!(matches!(i.check_gmmds(), Err(Error::CapExceeded { .. })));
    }
}
