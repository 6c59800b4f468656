use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::limit::LimitEndEstimate;
use crate::base_group::{BaseGroup, FreeWord, LatticeVector};
use crate::error::{Error, Result};
use crate::lamplighter::Configuration;
use crate::walk::{project_measure, StepMeasure, WalkSummary};

/// A cell of the empirical boundary partition: a depth-`L` cylinder of
/// infinite reduced words, or a direction rounded to multiples of `2^−L`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoundaryCell {
    Cylinder(FreeWord),
    Direction(Vec<i64>),
}

impl fmt::Display for BoundaryCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryCell::Cylinder(w) => w.fmt(f),
            BoundaryCell::Direction(v) => LatticeVector::new(v.clone()).fmt(f),
        }
    }
}

/// Cell counts of limit-point estimates; `Σ counts + undecided = total`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmpiricalBoundaryMeasure {
    pub depth: usize,
    pub counts: BTreeMap<BoundaryCell, u64>,
    /// Walks whose estimate was too coarse for a depth-`L` cell.
    pub undecided: u64,
    pub total: u64,
}

impl EmpiricalBoundaryMeasure {
    pub fn decided(&self) -> u64 {
        self.total - self.undecided
    }

    /// Frequency of `cell` among decided walks.
    pub fn mass(&self, cell: &BoundaryCell) -> f64 {
        let decided = self.decided();
        if decided == 0 {
            return 0.0;
        }
        self.counts.get(cell).copied().unwrap_or(0) as f64 / decided as f64
    }

    pub fn max_mass(&self) -> f64 {
        self.counts.keys().map(|c| self.mass(c)).fold(0.0, f64::max)
    }
}

/// The cell of an estimate at `depth`, `None` if the estimate is too short.
pub fn boundary_cell(est: &LimitEndEstimate, depth: usize) -> Option<BoundaryCell> {
    match est {
        LimitEndEstimate::Free { prefix, .. } => {
            (prefix.len() >= depth).then(|| BoundaryCell::Cylinder(prefix.truncated(depth)))
        }
        LimitEndEstimate::Direction { direction, .. } => {
            let scale = (1u64 << depth.min(52)) as f64;
            Some(BoundaryCell::Direction(direction.components().iter().map(|c| (c * scale).round() as i64).collect()))
        }
    }
}

/// Histogram of limit points; `None` entries (walks without an estimate) count as undecided.
pub fn harmonic_measure_estimate<'a>(
    estimates: impl IntoIterator<Item = Option<&'a LimitEndEstimate>>,
    depth: usize,
) -> EmpiricalBoundaryMeasure {
    let mut m = EmpiricalBoundaryMeasure { depth, counts: BTreeMap::new(), undecided: 0, total: 0 };
    for est in estimates {
        m.total += 1;
        match est.and_then(|e| boundary_cell(e, depth)) {
            Some(cell) => *m.counts.entry(cell).or_default() += 1,
            None => m.undecided += 1,
        }
    }
    m
}

/// All reduced words of length `depth` in `F_k`.
pub fn cylinders(rank: u8, depth: usize) -> Vec<FreeWord> {
    let letters: Vec<i8> = (1..=rank as i8).flat_map(|l| [l, -l]).collect();
    let mut words = vec![Vec::<i8>::new()];
    for _ in 0..depth {
        words = words
            .into_iter()
            .flat_map(|w| {
                letters
                    .iter()
                    .filter(|&&l| w.last() != Some(&-l))
                    .map(|&l| {
                        let mut next = w.clone();
                        next.push(l);
                        next
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    let mut out: Vec<FreeWord> = words.into_iter().map(|w| FreeWord::from_letters(w).expect("nonzero letters")).collect();
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct StationarityReport {
    /// `max_U |ν̂_∞(U) − Σ_g ν(g) ν̂′_∞(g⁻¹U)|` over depth-`L` cells.
    pub max_discrepancy: f64,
    pub worst_cell: Option<BoundaryCell>,
    /// Three standard errors of the difference at the worst cell.
    pub confidence_radius: f64,
    /// `(cell, ν̂_∞(U), (ν ∗ ν̂′_∞)(U))` for every tested cell.
    pub cells: Vec<(BoundaryCell, f64, f64)>,
}

/// Tests `ν ∗ ν_∞ = ν_∞` for the projected walk. `lhs` estimates `ν_∞` at depth
/// `L`; `rhs` is an independent estimate at depth at least `L + max |g|`, fine
/// enough that every `g⁻¹U` is a union of its cells.
pub fn stationarity_check(
    mu: &StepMeasure,
    lhs: &EmpiricalBoundaryMeasure,
    rhs: &EmpiricalBoundaryMeasure,
) -> Result<StationarityReport> {
    let nu = project_measure(mu);
    let depth = lhs.depth;
    let mut image: BTreeMap<BoundaryCell, f64> = BTreeMap::new();
    let mut tested: BTreeSet<BoundaryCell> = BTreeSet::new();
    match mu.group() {
        BaseGroup::Free { rank } => {
            let required = depth + mu.max_step_length() as usize;
            if rhs.depth < required {
                return Err(Error::CylinderDepth { available: rhs.depth, required });
            }
            for (g, p) in &nu.atoms {
                let p = *p.numer() as f64 / *p.denom() as f64;
                let g = g.as_free().expect("free group atoms");
                for cell in rhs.counts.keys() {
                    let BoundaryCell::Cylinder(c) = cell else {
                        return Err(Error::VariantMismatch("lattice cell in a free-group measure".into()));
                    };
                    // |c| ≥ L + |g|, so the first L letters of g·ξ depend only on c
                    let target = BoundaryCell::Cylinder(g.multiply(c).truncated(depth));
                    *image.entry(target).or_default() += p * rhs.mass(cell);
                }
            }
            tested.extend(cylinders(rank, depth).into_iter().map(BoundaryCell::Cylinder));
        }
        BaseGroup::Lattice { .. } => {
            if rhs.depth != depth {
                return Err(Error::CylinderDepth { available: rhs.depth, required: depth });
            }
            // translations fix directions, so g⁻¹U = U
            for cell in rhs.counts.keys() {
                image.insert(cell.clone(), rhs.mass(cell));
            }
            tested.extend(lhs.counts.keys().cloned());
            tested.extend(rhs.counts.keys().cloned());
        }
    }
    let (n_l, n_r) = (lhs.decided().max(1) as f64, rhs.decided().max(1) as f64);
    let mut report = StationarityReport { max_discrepancy: 0.0, worst_cell: None, confidence_radius: 0.0, cells: Vec::new() };
    for cell in tested {
        let left = lhs.mass(&cell);
        let right = image.get(&cell).copied().unwrap_or(0.0);
        let gap = (left - right).abs();
        if report.worst_cell.is_none() || gap > report.max_discrepancy {
            let p = (left + right) / 2.0;
            report.max_discrepancy = gap;
            report.confidence_radius = 3.0 * (p * (1.0 - p) * (1.0 / n_l + 1.0 / n_r)).sqrt();
            report.worst_cell = Some(cell.clone());
        }
        report.cells.push((cell, left, right));
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AtomVerdict {
    /// Largest cell mass decreases strictly with depth and stays below 1.
    Continuous,
    Atomic,
    /// Lattice walks with drift converge to one direction; the limit is a point mass.
    AtomicByDesign,
}

impl fmt::Display for AtomVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AtomVerdict::Continuous => "continuous",
            AtomVerdict::Atomic => "atomic",
            AtomVerdict::AtomicByDesign => "atomic-by-design",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AtomReport {
    /// Largest cell frequency at depths `1..=max_depth`.
    pub max_mass: Vec<f64>,
    pub decays: bool,
    /// Pairs of walks with the same depth-`max_depth` cell and the same
    /// settled configuration on `B(e, 3)`.
    pub duplicate_pairs: u64,
    pub verdict: AtomVerdict,
}

pub fn atom_check(group: &BaseGroup, summaries: &[WalkSummary], max_depth: usize) -> AtomReport {
    let estimates = || summaries.iter().map(|s| s.limit.as_ref());
    let max_mass: Vec<f64> = (1..=max_depth).map(|l| harmonic_measure_estimate(estimates(), l).max_mass()).collect();
    let decays = max_mass.windows(2).all(|w| w[1] < w[0]);

    let mut groups: BTreeMap<(BoundaryCell, &Configuration), u64> = BTreeMap::new();
    for s in summaries {
        if let Some(cell) = s.limit.as_ref().and_then(|e| boundary_cell(e, max_depth)) {
            *groups.entry((cell, &s.settled_local)).or_default() += 1;
        }
    }
    let duplicate_pairs = groups.values().map(|&c| c * (c - 1) / 2).sum();

    let verdict = match group {
        BaseGroup::Lattice { .. } => AtomVerdict::AtomicByDesign,
        BaseGroup::Free { .. } => {
            let top = max_mass.last().copied().unwrap_or(1.0);
            if decays && top < 1.0 {
                AtomVerdict::Continuous
            } else {
                AtomVerdict::Atomic
            }
        }
    };
    AtomReport { max_mass, decays, duplicate_pairs, verdict }
}
