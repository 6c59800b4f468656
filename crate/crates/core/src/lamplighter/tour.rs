//! Shortest walks `x → x′` visiting a set of lamp sites.
//!
//! Three routes are provided. [`held_karp`] is the exact bitmask dynamic
//! program, usable up to [`DEFAULT_EXACT_TSP_MAX`] sites. [`tree_tour_length`]
//! is exact for any number of sites in a free group: a walk on a tree must
//! cross every edge of the subtree spanning its endpoints and sites, the edges
//! on the `x–x′` path at least once and all others at least twice, and a
//! depth-first traversal achieves this. [`tour_bounds`] adds certified lower
//! and upper bounds for large lattice instances.

use crate::base_group::{BaseElement, Letter};
use crate::error::{Error, Result};

pub const DEFAULT_EXACT_TSP_MAX: usize = 16;

// 2^20 · 20 table entries; beyond this the table no longer fits comfortably in memory.
const HELD_KARP_HARD_MAX: usize = 20;

// Above this many sites the quadratic bounds (spanning tree, nearest neighbour)
// are skipped in favour of linear-time ones.
const QUADRATIC_BOUND_MAX: usize = 2000;

/// An optimal tour: its length and the visiting order as indices into the site list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TourPlan {
    pub length: u64,
    pub order: Vec<usize>,
}

/// Bounds on the optimal tour length; `lower == upper` when `exact`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TourBounds {
    pub lower: u64,
    pub upper: u64,
    pub exact: bool,
}

impl TourBounds {
    fn exact(length: u64) -> Self {
        TourBounds { lower: length, upper: length, exact: true }
    }
}

fn dedup(sites: &[BaseElement]) -> Vec<BaseElement> {
    let mut v = sites.to_vec();
    v.sort();
    v.dedup();
    v
}

/// Exact minimum over all visiting orders, by Held–Karp dynamic programming
/// over subsets. `order` indexes into `sites` after sorting and deduplication.
pub fn held_karp(start: &BaseElement, end: &BaseElement, sites: &[BaseElement], cap: usize) -> Result<TourPlan> {
    let sites = dedup(sites);
    let m = sites.len();
    if m > cap || m > HELD_KARP_HARD_MAX {
        return Err(Error::TspCapExceeded { sites: m, cap });
    }
    if m == 0 {
        return Ok(TourPlan { length: start.word_distance(end)?, order: Vec::new() });
    }
    let from_start = sites.iter().map(|s| start.word_distance(s)).collect::<Result<Vec<_>>>()?;
    let to_end = sites.iter().map(|s| s.word_distance(end)).collect::<Result<Vec<_>>>()?;
    let mut between = vec![0u64; m * m];
    for i in 0..m {
        for j in (i + 1)..m {
            let d = sites[i].word_distance(&sites[j])?;
            between[i * m + j] = d;
            between[j * m + i] = d;
        }
    }

    const INF: u64 = u64::MAX;
    let full = (1usize << m) - 1;
    // dp[mask * m + j]: shortest walk from start through exactly `mask`, ending at site j
    let mut dp = vec![INF; (full + 1) * m];
    for i in 0..m {
        dp[(1 << i) * m + i] = from_start[i];
    }
    for mask in 1..=full {
        for j in 0..m {
            let cur = dp[mask * m + j];
            if cur == INF || mask & (1 << j) == 0 {
                continue;
            }
            let mut rest = full & !mask;
            while rest != 0 {
                let k = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let slot = &mut dp[(mask | 1 << k) * m + k];
                let cand = cur + between[j * m + k];
                if cand < *slot {
                    *slot = cand;
                }
            }
        }
    }

    let (mut last, length) = (0..m)
        .map(|j| (j, dp[full * m + j] + to_end[j]))
        .min_by_key(|&(j, len)| (len, j))
        .expect("m > 0");

    let mut order = vec![last];
    let mut mask = full;
    while mask.count_ones() > 1 {
        let cur = dp[mask * m + last];
        let prev_mask = mask & !(1 << last);
        let prev = (0..m)
            .find(|&i| prev_mask & (1 << i) != 0 && dp[prev_mask * m + i] + between[i * m + last] == cur)
            .expect("dp table is consistent");
        order.push(prev);
        mask = prev_mask;
        last = prev;
    }
    order.reverse();
    Ok(TourPlan { length, order })
}

/// Exact tour length in a free group via the spanning subtree:
/// `2·|E(T)| − d(start, end)` where `T` spans `{start, end} ∪ sites`.
pub fn tree_tour_length(start: &BaseElement, end: &BaseElement, sites: &[BaseElement]) -> Result<u64> {
    let mut words: Vec<&[Letter]> = Vec::with_capacity(sites.len() + 2);
    for x in std::iter::once(start).chain(std::iter::once(end)).chain(sites) {
        let w = x
            .as_free()
            .ok_or_else(|| Error::VariantMismatch(format!("tree tour needs free words, got {x}")))?;
        words.push(w.letters());
    }
    words.sort_unstable();
    words.dedup();
    // distinct nonempty prefixes = trie size of the sorted word list
    let mut prefixes = words[0].len();
    let mut meet = words[0].len();
    for pair in words.windows(2) {
        let lcp = common_prefix(pair[0], pair[1]);
        prefixes += pair[1].len() - lcp;
        meet = meet.min(lcp);
    }
    let edges = (prefixes - meet) as u64;
    Ok(2 * edges - start.word_distance(end)?)
}

fn common_prefix(a: &[Letter], b: &[Letter]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// The exact tour length: Held–Karp up to `cap` sites, the spanning-subtree
/// formula for larger free-group instances, and [`Error::TspCapExceeded`]
/// for larger lattice instances.
pub fn tour_length(start: &BaseElement, end: &BaseElement, sites: &[BaseElement], cap: usize) -> Result<u64> {
    start.check_compatible(end)?;
    let distinct = dedup(sites);
    if distinct.len() <= cap {
        return held_karp(start, end, &distinct, cap).map(|p| p.length);
    }
    match start {
        BaseElement::Free(_) => tree_tour_length(start, end, &distinct),
        BaseElement::Lattice(_) => Err(Error::TspCapExceeded { sites: distinct.len(), cap }),
    }
}

/// Exact when [`tour_length`] succeeds; otherwise certified bounds. The lower
/// bound is the largest of the minimum spanning tree over
/// `{start, end} ∪ sites`, the largest pairwise distance in that set, and the
/// largest single-site detour `d(start, s) + d(s, end)`. The upper bound is
/// the better of nearest-neighbour order and lexicographic order.
pub fn tour_bounds(start: &BaseElement, end: &BaseElement, sites: &[BaseElement], cap: usize) -> Result<TourBounds> {
    match tour_length(start, end, sites, cap) {
        Ok(len) => return Ok(TourBounds::exact(len)),
        Err(Error::TspCapExceeded { .. }) => {}
        Err(e) => return Err(e),
    }
    let sites = dedup(sites);
    let mut nodes = Vec::with_capacity(sites.len() + 2);
    nodes.push(start.clone());
    nodes.push(end.clone());
    nodes.extend(sites.iter().cloned());

    let detour = sites
        .iter()
        .map(|s| Ok(start.word_distance(s)? + s.word_distance(end)?))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap_or(0);
    let mut lower = detour.max(max_pairwise_l1(&nodes));
    let mut upper = sorted_tour(start, end, &sites)?;
    if sites.len() <= QUADRATIC_BOUND_MAX {
        lower = lower.max(spanning_tree_weight(&nodes)?);
        upper = upper.min(nearest_neighbour_tour(start, end, &sites)?);
    }
    Ok(TourBounds { lower, upper, exact: lower == upper })
}

fn max_pairwise_l1(nodes: &[BaseElement]) -> u64 {
    // max |x - y|_1 = max over sign vectors σ of (max σ·x − min σ·x)
    let dim = match nodes.first().and_then(|x| x.as_lattice()) {
        Some(v) => v.dim(),
        None => return 0,
    };
    let mut best = 0i64;
    for signs in 0..(1u32 << dim) {
        let proj = |x: &BaseElement| -> i64 {
            x.as_lattice()
                .expect("lattice nodes")
                .coords()
                .iter()
                .enumerate()
                .map(|(i, &c)| if signs & (1 << i) != 0 { -c } else { c })
                .sum()
        };
        let (lo, hi) = nodes.iter().map(proj).fold((i64::MAX, i64::MIN), |(lo, hi), p| (lo.min(p), hi.max(p)));
        best = best.max(hi - lo);
    }
    best as u64
}

// Prim's algorithm on the complete distance graph.
fn spanning_tree_weight(nodes: &[BaseElement]) -> Result<u64> {
    let n = nodes.len();
    let mut in_tree = vec![false; n];
    let mut best = vec![u64::MAX; n];
    best[0] = 0;
    let mut total = 0;
    for _ in 0..n {
        let next = (0..n).filter(|&i| !in_tree[i]).min_by_key(|&i| best[i]).expect("nodes left");
        in_tree[next] = true;
        total += best[next];
        for j in 0..n {
            if !in_tree[j] {
                best[j] = best[j].min(nodes[next].word_distance(&nodes[j])?);
            }
        }
    }
    Ok(total)
}

fn nearest_neighbour_tour(start: &BaseElement, end: &BaseElement, sites: &[BaseElement]) -> Result<u64> {
    let mut left: Vec<&BaseElement> = sites.iter().collect();
    let mut cur = start;
    let mut total = 0;
    while !left.is_empty() {
        let mut best = (u64::MAX, 0);
        for (i, s) in left.iter().enumerate() {
            let d = cur.word_distance(s)?;
            if d < best.0 {
                best = (d, i);
            }
        }
        total += best.0;
        cur = left.swap_remove(best.1);
    }
    Ok(total + cur.word_distance(end)?)
}

fn sorted_tour(start: &BaseElement, end: &BaseElement, sites: &[BaseElement]) -> Result<u64> {
    let mut total = 0;
    let mut cur = start;
    for s in sites {
        total += cur.word_distance(s)?;
        cur = s;
    }
    Ok(total + cur.word_distance(end)?)
}
