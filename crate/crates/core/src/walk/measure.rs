use std::collections::{BTreeMap, HashSet, VecDeque};
use std::sync::Arc;

use num_traits::{CheckedAdd, One, Zero};

use crate::base_group::{BaseElement, BaseGroup};
use crate::error::{Error, Result};
use crate::lamplighter::{lamp_distance, LampElement, MetricParams};
use crate::Rational;

/// Products of atoms and their inverses are explored up to this many factors.
pub const GENERATION_DEPTH: u32 = 6;

// Visited-set ceiling for the bounded generation search.
const GENERATION_SEARCH_LIMIT: usize = 200_000;

/// Outcome of the bounded check that `supp(μ)` generates `G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenerationReport {
    /// The projected support generates `Γ` (every base generator was reached).
    pub base_generated: bool,
    /// A pure lamp element `(η, e)` with a state coprime to `r` was reached.
    pub lamp_reachable: bool,
}

impl GenerationReport {
    pub fn generates(&self) -> bool {
        self.base_generated && self.lamp_reachable
    }
}

/// A finitely supported step law `μ` on `Z_r ≀ Γ` with exact rational weights.
#[derive(Clone, Debug)]
pub struct StepMeasure {
    group: BaseGroup,
    modulus: u8,
    atoms: Arc<[LampElement]>,
    probs: Vec<Rational>,
    // cumulative 64-bit fixed-point thresholds for atoms 0..m-1; the last atom takes the rest
    thresholds: Vec<u64>,
    generation: GenerationReport,
}

impl PartialEq for StepMeasure {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group
            && self.modulus == other.modulus
            && self.atoms == other.atoms
            && self.probs == other.probs
    }
}

impl StepMeasure {
    /// Builds a measure whose support must generate `G`; fails with a
    /// diagnostic otherwise.
    pub fn new(group: BaseGroup, modulus: u8, atoms: Vec<(LampElement, Rational)>) -> Result<Self> {
        let mu = Self::new_degenerate(group, modulus, atoms)?;
        let g = mu.generation;
        if !g.generates() {
            let mut why = Vec::new();
            if !g.base_generated {
                why.push(format!("projected support does not reach every generator of {group} within {GENERATION_DEPTH} factors"));
            }
            if !g.lamp_reachable {
                why.push(format!("no pure lamp element (η, e) reachable within {GENERATION_DEPTH} factors"));
            }
            return Err(Error::InvalidMeasure(format!("support does not generate the lamplighter group: {}", why.join("; "))));
        }
        Ok(mu)
    }

    /// Like [`StepMeasure::new`] but accepts supports that do not generate
    /// `G` (base-only walks, deterministic rays). The generation report is
    /// still computed and available through [`StepMeasure::generation`].
    pub fn new_degenerate(group: BaseGroup, modulus: u8, atoms: Vec<(LampElement, Rational)>) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidMeasure("lamp modulus must be at least 2".into()));
        }
        if atoms.is_empty() {
            return Err(Error::InvalidMeasure("measure has no atoms".into()));
        }
        let mut merged: BTreeMap<LampElement, Rational> = BTreeMap::new();
        for (atom, p) in atoms {
            if p <= Rational::zero() {
                return Err(Error::InvalidMeasure(format!("atom {atom} has non-positive weight {p}")));
            }
            if atom.modulus() != modulus {
                return Err(Error::ModulusMismatch { left: modulus, right: atom.modulus() });
            }
            group.check_contains(&atom.pos)?;
            for s in atom.config.support() {
                group.check_contains(s)?;
            }
            let slot = merged.entry(atom).or_insert_with(Rational::zero);
            *slot = slot
                .checked_add(&p)
                .ok_or_else(|| Error::InvalidMeasure("weights overflow exact arithmetic".into()))?;
        }
        let total = merged
            .values()
            .try_fold(Rational::zero(), |acc, p| acc.checked_add(p))
            .ok_or_else(|| Error::InvalidMeasure("weights overflow exact arithmetic".into()))?;
        if total != Rational::one() {
            return Err(Error::InvalidMeasure(format!("weights sum to {total}, not 1")));
        }
        let (atoms, probs): (Vec<_>, Vec<_>) = merged.into_iter().unzip();
        let thresholds = cumulative_thresholds(&probs);
        let generation = check_generation(&group, modulus, &atoms);
        Ok(StepMeasure { group, modulus, atoms: atoms.into(), probs, thresholds, generation })
    }

    pub fn group(&self) -> BaseGroup {
        self.group
    }

    pub fn modulus(&self) -> u8 {
        self.modulus
    }

    pub fn atoms(&self) -> &[LampElement] {
        &self.atoms
    }

    pub(crate) fn shared_atoms(&self) -> Arc<[LampElement]> {
        Arc::clone(&self.atoms)
    }

    pub fn probabilities(&self) -> &[Rational] {
        &self.probs
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LampElement, Rational)> {
        self.atoms.iter().zip(self.probs.iter().copied())
    }

    pub fn generation(&self) -> GenerationReport {
        self.generation
    }

    /// Maps a uniform 64-bit draw to an atom index.
    pub fn sample_index(&self, draw: u64) -> usize {
        self.thresholds.partition_point(|&t| t <= draw)
    }

    /// Longest base word among the atoms' positions.
    pub fn max_step_length(&self) -> u64 {
        self.atoms.iter().map(|a| a.pos.norm()).max().unwrap_or(0)
    }
}

fn cumulative_thresholds(probs: &[Rational]) -> Vec<u64> {
    let mut acc = Rational::zero();
    probs[..probs.len() - 1]
        .iter()
        .map(|p| {
            acc += p;
            let scaled = ((*acc.numer() as u128) << 64) / (*acc.denom() as u128);
            scaled.min(u128::from(u64::MAX)) as u64
        })
        .collect()
}

fn check_generation(group: &BaseGroup, modulus: u8, atoms: &[LampElement]) -> GenerationReport {
    let base_generated = match group {
        BaseGroup::Lattice { dim } => {
            let rows: Vec<Vec<i64>> = atoms
                .iter()
                .map(|a| a.pos.as_lattice().expect("checked variant").coords().to_vec())
                .collect();
            spans_integer_lattice(&rows, *dim)
        }
        BaseGroup::Free { .. } => {
            let steps: Vec<BaseElement> = atoms
                .iter()
                .flat_map(|a| [a.pos.clone(), a.pos.inverse()])
                .filter(|x| !x.is_identity())
                .collect();
            let reached = bounded_closure(group.identity(), &steps, |x, s| x.multiply(s).ok(), |_| false);
            group.generators().iter().all(|g| reached.contains(g))
        }
    };

    let pure_lamp = |x: &LampElement| {
        x.pos.is_identity() && x.config.iter().any(|(_, s)| num_integer::gcd(s, modulus) == 1)
    };
    let lamp_reachable = atoms.iter().any(&pure_lamp) || {
        let steps: Vec<LampElement> = atoms.iter().flat_map(|a| [a.clone(), a.inverse()]).collect();
        let start = LampElement::identity(group, modulus);
        let reached = bounded_closure(start, &steps, |x, s| x.multiply(s).ok(), pure_lamp);
        reached.iter().any(pure_lamp)
    };
    GenerationReport { base_generated, lamp_reachable }
}

// Breadth-first closure under right multiplication, at most GENERATION_DEPTH
// factors, stopping early once `done` holds for a visited element.
fn bounded_closure<T: Clone + Eq + std::hash::Hash>(
    start: T,
    steps: &[T],
    mul: impl Fn(&T, &T) -> Option<T>,
    done: impl Fn(&T) -> bool,
) -> HashSet<T> {
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start, 0u32)]);
    while let Some((x, depth)) = queue.pop_front() {
        if depth == GENERATION_DEPTH || seen.len() > GENERATION_SEARCH_LIMIT {
            continue;
        }
        for s in steps {
            if let Some(y) = mul(&x, s) {
                if seen.insert(y.clone()) {
                    if done(&y) {
                        return seen;
                    }
                    queue.push_back((y, depth + 1));
                }
            }
        }
    }
    seen
}

/// Whether the integer row span of `rows` is all of `Z^dim`, by unimodular
/// row reduction to echelon form.
fn spans_integer_lattice(rows: &[Vec<i64>], dim: usize) -> bool {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&c| i128::from(c)).collect()).collect();
    let mut pivot_row = 0;
    for col in 0..dim {
        loop {
            let nonzero: Vec<usize> = (pivot_row..m.len()).filter(|&r| m[r][col] != 0).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let min = *nonzero.iter().min_by_key(|&&r| m[r][col].abs()).expect("nonempty");
            for &r in &nonzero {
                if r != min {
                    let q = m[r][col] / m[min][col];
                    let pivot = m[min].clone();
                    for (x, p) in m[r].iter_mut().zip(&pivot) {
                        *x -= q * p;
                    }
                }
            }
        }
        match (pivot_row..m.len()).find(|&r| m[r][col] != 0) {
            Some(r) => {
                if m[r][col].abs() != 1 {
                    return false;
                }
                m.swap(pivot_row, r);
                pivot_row += 1;
            }
            None => return false,
        }
    }
    true
}

/// The projected law `ν(x) = Σ_η μ(η, x)` on the base group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectedMeasure {
    pub atoms: BTreeMap<BaseElement, Rational>,
}

impl ProjectedMeasure {
    pub fn total(&self) -> Rational {
        self.atoms.values().fold(Rational::zero(), |a, p| a + p)
    }

    /// `ν̌(x) = ν(x⁻¹)`.
    pub fn reflect(&self) -> ProjectedMeasure {
        ProjectedMeasure { atoms: self.atoms.iter().map(|(x, p)| (x.inverse(), *p)).collect() }
    }

    /// The drift `m = Σ_x x ν(x)` of a lattice walk.
    pub fn drift(&self) -> Option<Vec<Rational>> {
        let dim = self.atoms.keys().next()?.as_lattice()?.dim();
        let mut m = vec![Rational::zero(); dim];
        for (x, p) in &self.atoms {
            for (mi, &c) in m.iter_mut().zip(x.as_lattice()?.coords()) {
                *mi += *p * Rational::from_integer(c);
            }
        }
        Some(m)
    }
}

pub fn project_measure(mu: &StepMeasure) -> ProjectedMeasure {
    let mut atoms: BTreeMap<BaseElement, Rational> = BTreeMap::new();
    for (atom, p) in mu.iter() {
        *atoms.entry(atom.pos.clone()).or_insert_with(Rational::zero) += p;
    }
    ProjectedMeasure { atoms }
}

/// `μ̌(g) = μ(g⁻¹)`.
pub fn reflect_measure(mu: &StepMeasure) -> StepMeasure {
    let atoms: Vec<LampElement> = mu.atoms.iter().map(LampElement::inverse).collect();
    // inversion permutes the atom order, so re-sort through the constructor path
    let mut pairs: Vec<(LampElement, Rational)> = atoms.into_iter().zip(mu.probs.iter().copied()).collect();
    pairs.sort_by(|a, b| a.0.cmp(&b.0));
    let (atoms, probs): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
    let thresholds = cumulative_thresholds(&probs);
    StepMeasure {
        group: mu.group,
        modulus: mu.modulus,
        atoms: atoms.into(),
        probs,
        thresholds,
        // a set and its inverses generate the same subgroup
        generation: mu.generation,
    }
}

/// First moments of a step law.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Moments {
    /// `Σ μ(g) d_G(id, g)`.
    pub lamp: Rational,
    /// `Σ ν(x) d(e, x)`.
    pub base: Rational,
}

pub fn first_moment(mu: &StepMeasure, params: &MetricParams) -> Result<Moments> {
    let id = LampElement::identity(&mu.group, mu.modulus);
    let mut lamp = Rational::zero();
    let mut base = Rational::zero();
    for (atom, p) in mu.iter() {
        lamp += p * lamp_distance(&id, atom, params)?;
        base += p * Rational::from_integer(atom.pos.norm() as i64);
    }
    Ok(Moments { lamp, base })
}
