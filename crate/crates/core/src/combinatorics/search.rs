//! Maximum families of mutually orthogonal sign tuples.
//!
//! Without loss of generality the family contains the all-ones tuple and every
//! member starts with `+1`. The remaining members are then balanced tuples
//! (`k / 2` entries equal to `-1`, first entry `+1`), and the search reduces to
//! a maximum clique in their orthogonality graph. Cliques are found with a
//! greedy-colouring branch and bound over bitset adjacency.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use super::hadamard::{construction_for_order, hadamard_to_family, DEFAULT_ORDER_CAP};
use super::signs::{MaximalityProof, OrthogonalFamily, SignTuple};
use crate::error::{Error, Result};

/// Largest tuple length for which exhaustive certification is attempted.
pub const DEFAULT_CERTIFY_CAP: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_nodes: None,
            max_time: Some(Duration::from_secs(600)),
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Self {
            max_nodes: None,
            max_time: None,
        }
    }

    pub fn nodes(max_nodes: u64) -> Self {
        Self {
            max_nodes: Some(max_nodes),
            max_time: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SearchOptions {
    pub budget: Budget,
    pub certify_cap: usize,
    pub order_cap: usize,
    pub jobs: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            budget: Budget::default(),
            certify_cap: DEFAULT_CERTIFY_CAP,
            order_cap: DEFAULT_ORDER_CAP,
            jobs: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchOutcome {
    pub family: OrthogonalFamily,
    /// Vertices of the orthogonality graph (0 when no search ran).
    pub vertices: usize,
    /// Branch-and-bound nodes expanded.
    pub nodes: u64,
    /// The budget ran out before the search completed.
    pub exhausted: bool,
}

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn full(len: usize) -> Self {
        let mut b = Self::empty(len);
        for i in 0..len {
            b.insert(i);
        }
        b
    }

    #[inline]
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    fn remove(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    #[inline]
    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    #[inline]
    fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    #[inline]
    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    #[inline]
    fn and_not_assign(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= !b;
        }
    }
}

/// Balanced canonical tuples of length `k` in lexicographic order.
pub fn balanced_canonical_tuples(k: usize) -> Vec<SignTuple> {
    if k < 2 || k % 2 == 1 {
        return Vec::new();
    }
    assert!(k <= 64, "tuple enumeration limited to k <= 64");
    let half = k / 2;
    // Entry j >= 1 sits at bit (k - 1 - j) of `m`, so increasing `m` is
    // lexicographic with +1 before -1.
    (0..1u64 << (k - 1))
        .filter(|m| m.count_ones() as usize == half)
        .map(|m| {
            let mut mask = 0u64;
            for j in 1..k {
                if m >> (k - 1 - j) & 1 == 1 {
                    mask |= 1 << j;
                }
            }
            SignTuple::from_mask(k, mask)
        })
        .collect()
}

/// Number of unordered orthogonal pairs among the `2^(k-1)` canonical tuples
/// of length `k`.
pub fn orthogonal_pair_count(k: usize, jobs: usize) -> u64 {
    assert!((1..=32).contains(&k), "pair scan limited to 1 <= k <= 32");
    let count = 1u64 << (k - 1);
    let row = |a: u64| -> u64 {
        let ta = SignTuple::from_mask(k, a << 1);
        (a + 1..count)
            .filter(|&b| ta.dot_unchecked(&SignTuple::from_mask(k, b << 1)) == 0)
            .count() as u64
    };
    if jobs > 1 {
        pool(jobs).install(|| (0..count).into_par_iter().map(row).sum())
    } else {
        (0..count).map(row).sum()
    }
}

fn pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool")
}

struct Shared {
    best: AtomicUsize,
    nodes: AtomicU64,
    stop: AtomicBool,
    exhausted: AtomicBool,
}

struct CliqueSearch<'a> {
    adj: &'a [Bits],
    shared: &'a Shared,
    budget: Budget,
    start: Instant,
    /// Only cliques strictly larger than this are of interest.
    floor: usize,
    target: usize,
    best: Vec<usize>,
    local_nodes: u64,
}

impl<'a> CliqueSearch<'a> {
    fn bound(&self) -> usize {
        self.floor
            .max(self.best.len())
            .max(self.shared.best.load(Ordering::Relaxed))
    }

    fn colour_sort(&self, cand: &Bits) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::new();
        let mut colours = Vec::new();
        let mut uncoloured = cand.clone();
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut q = uncoloured.clone();
            while let Some(v) = q.first() {
                q.remove(v);
                q.and_not_assign(&self.adj[v]);
                uncoloured.remove(v);
                order.push(v);
                colours.push(colour);
            }
        }
        (order, colours)
    }

    fn tick(&mut self) -> bool {
        self.local_nodes += 1;
        if !self.local_nodes.is_multiple_of(256) {
            return self.shared.stop.load(Ordering::Relaxed);
        }
        let total = self.shared.nodes.fetch_add(256, Ordering::Relaxed) + 256;
        let over_nodes = self.budget.max_nodes.is_some_and(|m| total > m);
        let over_time = self.budget.max_time.is_some_and(|t| self.start.elapsed() > t);
        if over_nodes || over_time {
            self.shared.exhausted.store(true, Ordering::Relaxed);
            self.shared.stop.store(true, Ordering::Relaxed);
        }
        self.shared.stop.load(Ordering::Relaxed)
    }

    fn finish(self) -> Vec<usize> {
        self.shared
            .nodes
            .fetch_add(self.local_nodes % 256, Ordering::Relaxed);
        self.best
    }

    fn record(&mut self, clique: &[usize]) {
        if clique.len() > self.bound() {
            self.best = clique.to_vec();
            self.shared.best.fetch_max(clique.len(), Ordering::Relaxed);
            if clique.len() >= self.target {
                self.shared.stop.store(true, Ordering::Relaxed);
            }
        }
    }

    fn expand(&mut self, clique: &mut Vec<usize>, mut cand: Bits) {
        if self.tick() {
            return;
        }
        let (order, colours) = self.colour_sort(&cand);
        for idx in (0..order.len()).rev() {
            if clique.len() + colours[idx] <= self.bound() || self.shared.stop.load(Ordering::Relaxed) {
                return;
            }
            let v = order[idx];
            clique.push(v);
            let next = cand.and(&self.adj[v]);
            if next.is_empty() {
                self.record(clique);
            } else {
                self.expand(clique, next);
            }
            clique.pop();
            cand.remove(v);
        }
    }
}

struct CliqueResult {
    best: Vec<usize>,
    nodes: u64,
    exhausted: bool,
}

fn max_clique(adj: &[Bits], target: usize, floor: usize, budget: Budget, jobs: usize) -> CliqueResult {
    let shared = Shared {
        best: AtomicUsize::new(0),
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        exhausted: AtomicBool::new(false),
    };
    let start = Instant::now();
    let searcher = || CliqueSearch {
        adj,
        shared: &shared,
        budget,
        start,
        floor,
        target,
        best: Vec::new(),
        local_nodes: 0,
    };
    let all = Bits::full(adj.len());
    let best = if jobs > 1 && !adj.is_empty() {
        // Fan out the root: subtree i takes vertex order[i] together with
        // candidates earlier in the colour order.
        let root = searcher();
        let (order, colours) = root.colour_sort(&all);
        let subtrees: Vec<(usize, usize, Bits)> = (0..order.len())
            .map(|i| {
                let mut cand = Bits::empty(adj.len());
                for &u in &order[..i] {
                    cand.insert(u);
                }
                (order[i], colours[i], cand.and(&adj[order[i]]))
            })
            .collect();
        let found: Vec<Vec<usize>> = pool(jobs).install(|| {
            subtrees
                .into_par_iter()
                .map(|(v, colour, cand)| {
                    let mut s = searcher();
                    if colour <= s.bound() {
                        return s.finish();
                    }
                    let mut clique = vec![v];
                    if cand.is_empty() {
                        s.record(&clique);
                    } else {
                        s.expand(&mut clique, cand);
                    }
                    s.finish()
                })
                .collect()
        });
        found.into_iter().max_by_key(Vec::len).unwrap_or_default()
    } else {
        let mut s = searcher();
        if !adj.is_empty() {
            s.expand(&mut Vec::new(), all);
        }
        s.finish()
    };
    CliqueResult {
        best,
        nodes: shared.nodes.load(Ordering::Relaxed),
        exhausted: shared.exhausted.load(Ordering::Relaxed),
    }
}

fn family_from(k: usize, vertices: &[SignTuple], clique: &[usize]) -> OrthogonalFamily {
    let mut rest: Vec<SignTuple> = clique.iter().map(|&i| vertices[i].clone()).collect();
    rest.sort();
    let mut members = vec![SignTuple::all_ones(k)];
    members.extend(rest);
    OrthogonalFamily::new(k, members).expect("clique members are mutually orthogonal")
}

/// Fallback family when exhaustive search is not attempted or did not finish:
/// a Hadamard construction when one exists, else all-ones plus an alternating
/// tuple for even `k`.
fn seed_family(k: usize, order_cap: usize) -> OrthogonalFamily {
    if let Some(h) = construction_for_order(k, order_cap).and_then(|c| c.build(order_cap).ok()) {
        return hadamard_to_family(&h).expect("constructions are Hadamard");
    }
    let mut members = vec![SignTuple::all_ones(k)];
    if k.is_multiple_of(2) {
        members.push(
            SignTuple::from_signs((0..k).map(|i| if i % 2 == 0 { 1i64 } else { -1 }))
                .expect("entries are signs"),
        );
    }
    OrthogonalFamily::new(k, members).expect("seed is orthogonal")
}

/// Proof of maximality that needs no search, if one applies to `size`.
fn structural_proof(k: usize, size: usize) -> Option<MaximalityProof> {
    if size == k {
        Some(MaximalityProof::FullFamily)
    } else if k % 2 == 1 && size == 1 {
        Some(MaximalityProof::OddLength)
    } else if k % 4 == 2 && size == 2 {
        Some(MaximalityProof::ThreeVectorObstruction)
    } else {
        None
    }
}

/// Maximum-cardinality family of mutually orthogonal `+1`/`-1` tuples of
/// length `k`.
///
/// For `k <= certify_cap` the family comes from an exhaustive branch and bound
/// and is `Certified` when the search completes within budget. Otherwise, or
/// when the budget runs out, the best family found (or a construction seed) is
/// returned; it is still certified when its size is provably maximum for
/// structural reasons, and `LowerBoundOnly` if not.
pub fn max_orthogonal_tuples(k: usize, options: &SearchOptions) -> Result<SearchOutcome> {
    if k == 0 {
        return Err(Error::InvalidParams("tuple length must be at least 1".into()));
    }
    if k > options.certify_cap {
        let family = seed_family(k, options.order_cap);
        let family = match structural_proof(k, family.len()) {
            Some(proof) => family.certify(proof),
            None => family.lower_bound(),
        };
        return Ok(SearchOutcome {
            family,
            vertices: 0,
            nodes: 0,
            exhausted: false,
        });
    }

    let vertices = balanced_canonical_tuples(k);
    let adj: Vec<Bits> = vertices
        .iter()
        .map(|u| {
            let mut row = Bits::empty(vertices.len());
            for (j, v) in vertices.iter().enumerate() {
                if u.dot_unchecked(v) == 0 {
                    row.insert(j);
                }
            }
            row
        })
        .collect();

    // A clique of k - 1 balanced tuples completes a full family; nothing
    // larger exists.
    let target = k - 1;
    let first = max_clique(&adj, target, 0, options.budget, options.jobs);
    let mut nodes = first.nodes;
    let mut best = first.best;
    if options.jobs > 1 && !first.exhausted && !best.is_empty() {
        // Parallel runs fix the size; the member list comes from a sequential
        // pass that stops at the first clique of that size.
        let again = max_clique(&adj, best.len(), best.len() - 1, Budget::unlimited(), 1);
        nodes += again.nodes;
        best = again.best;
    }

    let found = family_from(k, &vertices, &best);
    let family = if !first.exhausted {
        found.certify(MaximalityProof::ExhaustiveSearch)
    } else {
        let seed = seed_family(k, options.order_cap);
        let better = if seed.len() > found.len() { seed } else { found };
        match structural_proof(k, better.len()) {
            Some(proof) => better.certify(proof),
            None => better.lower_bound(),
        }
    };
    Ok(SearchOutcome {
        family,
        vertices: vertices.len(),
        nodes,
        exhausted: first.exhausted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::signs::Maximality;

    fn binom(n: u64, r: u64) -> u64 {
        (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn balanced_vertex_counts() {
        for k in [2usize, 4, 6, 8, 10, 12] {
            let v = balanced_canonical_tuples(k);
            assert_eq!(v.len() as u64, binom(k as u64 - 1, k as u64 / 2));
            assert!(v.windows(2).all(|w| w[0] < w[1]));
            assert!(v.iter().all(|t| t.is_canonical() && t.minus_count() == k / 2));
        }
        assert!(balanced_canonical_tuples(5).is_empty());
    }

    #[test]
    fn small_cases() {
        let opts = SearchOptions::default();
        let cases = [(1, 1), (2, 2), (3, 1), (4, 4), (5, 1), (6, 2), (8, 8)];
        for (k, size) in cases {
            let out = max_orthogonal_tuples(k, &opts).unwrap();
            assert_eq!(out.family.len(), size, "k = {k}");
            assert_eq!(out.family.maximality(), Maximality::Certified);
            assert!(out.family.is_orthogonal());
            assert!(out.family.members()[0].is_all_ones());
        }
        assert!(max_orthogonal_tuples(0, &opts).is_err());
    }

    #[test]
    fn tiny_budget_falls_back_to_seed() {
        let opts = SearchOptions {
            budget: Budget::nodes(1),
            ..SearchOptions::default()
        };
        // k = 12 needs far more than one node to reach a full family.
        let out = max_orthogonal_tuples(12, &opts).unwrap();
        assert_eq!(out.family.len(), 12);
        assert!(out.family.is_orthogonal());
    }

    #[test]
    fn above_cap_uses_structure() {
        let opts = SearchOptions::default();
        let out = max_orthogonal_tuples(16, &opts).unwrap();
        assert_eq!(out.family.len(), 16);
        assert_eq!(out.family.proof(), Some(MaximalityProof::FullFamily));
        let out = max_orthogonal_tuples(17, &opts).unwrap();
        assert_eq!(out.family.len(), 1);
        assert_eq!(out.family.proof(), Some(MaximalityProof::OddLength));
        let out = max_orthogonal_tuples(18, &opts).unwrap();
        assert_eq!(out.family.len(), 2);
        assert_eq!(out.family.proof(), Some(MaximalityProof::ThreeVectorObstruction));
        // 28 has no construction here, so only a lower bound is available.
        let out = max_orthogonal_tuples(28, &opts).unwrap();
        assert_eq!(out.family.maximality(), Maximality::LowerBoundOnly);
    }

    #[test]
    fn parallel_matches_sequential() {
        let seq = max_orthogonal_tuples(8, &SearchOptions::default()).unwrap();
        let par = max_orthogonal_tuples(
            8,
            &SearchOptions {
                jobs: 4,
                ..SearchOptions::default()
            },
        )
        .unwrap();
        assert_eq!(seq.family, par.family);
    }

    #[test]
    fn odd_lengths_have_no_orthogonal_pairs() {
        for k in [1, 3, 5, 7] {
            assert_eq!(orthogonal_pair_count(k, 1), 0);
        }
        for k in [2usize, 4, 6] {
            let tuples: Vec<Vec<i64>> = (0..1u32 << (k - 1))
                .map(|m| {
                    std::iter::once(1)
                        .chain((1..k).map(|j| if m >> (j - 1) & 1 == 1 { -1 } else { 1 }))
                        .collect()
                })
                .collect();
            let mut naive = 0;
            for i in 0..tuples.len() {
                for j in i + 1..tuples.len() {
                    let d: i64 = tuples[i].iter().zip(&tuples[j]).map(|(a, b)| a * b).sum();
                    naive += u64::from(d == 0);
                }
            }
            assert_eq!(orthogonal_pair_count(k, 2), naive, "k = {k}");
        }
    }
}
