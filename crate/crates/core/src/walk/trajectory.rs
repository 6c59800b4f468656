use std::collections::BTreeMap;
use std::sync::Arc;

use super::measure::StepMeasure;
use super::rng::WalkRng;
use crate::base_group::{BaseElement, BaseGroup};
use crate::error::{Error, Result};
use crate::lamplighter::{Configuration, LampElement};

/// A change of one lamp: at step `time` the site took `state`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LampEvent {
    pub time: u64,
    pub state: u8,
}

/// One sample path `Z_0 = id, Z_t = Z_{t−1} i_t` of the walk.
///
/// Positions are not stored; [`Trajectory::for_each_position`] regenerates
/// `X_0..X_n` from the increments on demand, keeping memory at
/// `O(n + lamp changes)` independent of `|X_n|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trajectory {
    pub master_seed: u64,
    pub walk_index: u64,
    group: BaseGroup,
    modulus: u8,
    atoms: Arc<[LampElement]>,
    increments: Vec<u32>,
    final_state: LampElement,
    lamp_events: BTreeMap<BaseElement, Vec<LampEvent>>,
}

struct Walker {
    state: LampElement,
    events: BTreeMap<BaseElement, Vec<LampEvent>>,
}

impl Walker {
    fn new(group: &BaseGroup, modulus: u8) -> Self {
        Walker { state: LampElement::identity(group, modulus), events: BTreeMap::new() }
    }

    // Applies `atom` at step `time`; returns the untouched prefix length of the position.
    fn step(&mut self, atom: &LampElement, time: u64) -> usize {
        for (s, v) in atom.config.iter() {
            let site = self.state.pos.multiply(s).expect("atoms share the walk's group");
            let state = self.state.config.add_at_unchecked(site.clone(), v);
            self.events.entry(site).or_default().push(LampEvent { time, state });
        }
        self.state.pos.mul_right_in_place(&atom.pos).expect("atoms share the walk's group")
    }
}

/// Samples one trajectory of `steps` increments from walk `walk_index` of
/// the stream keyed by `master_seed`.
pub fn run_walk(mu: &StepMeasure, steps: u64, master_seed: u64, walk_index: u64) -> Trajectory {
    let atoms = mu.shared_atoms();
    let mut rng = WalkRng::new(master_seed, walk_index);
    let mut walker = Walker::new(&mu.group(), mu.modulus());
    let mut increments = Vec::with_capacity(steps as usize);
    for t in 1..=steps {
        let i = mu.sample_index(rng.next_u64());
        walker.step(&atoms[i], t);
        increments.push(i as u32);
    }
    Trajectory {
        master_seed,
        walk_index,
        group: mu.group(),
        modulus: mu.modulus(),
        atoms,
        increments,
        final_state: walker.state,
        lamp_events: walker.events,
    }
}

impl Trajectory {
    pub fn steps(&self) -> u64 {
        self.increments.len() as u64
    }

    pub fn group(&self) -> BaseGroup {
        self.group
    }

    pub fn modulus(&self) -> u8 {
        self.modulus
    }

    /// Indices into [`Trajectory::atoms`] of `i_1..i_n`.
    pub fn increment_indices(&self) -> &[u32] {
        &self.increments
    }

    pub fn atoms(&self) -> &[LampElement] {
        &self.atoms
    }

    pub fn increments(&self) -> impl Iterator<Item = &LampElement> + '_ {
        self.increments.iter().map(move |&i| &self.atoms[i as usize])
    }

    /// `Z_n`.
    pub fn final_state(&self) -> &LampElement {
        &self.final_state
    }

    pub fn final_position(&self) -> &BaseElement {
        &self.final_state.pos
    }

    pub fn final_config(&self) -> &Configuration {
        &self.final_state.config
    }

    /// Every state change per site, in time order.
    pub fn lamp_events(&self) -> &BTreeMap<BaseElement, Vec<LampEvent>> {
        &self.lamp_events
    }

    /// Calls `f(t, X_t, floor_t)` for `t = 0..n`, where `floor_t` is the
    /// number of leading letters of `X_{t−1}` that step `t` left in place
    /// (`usize::MAX` at `t = 0`; always 0 on lattices).
    pub fn for_each_position(&self, mut f: impl FnMut(u64, &BaseElement, usize)) {
        let mut pos = self.group.identity();
        f(0, &pos, usize::MAX);
        for (t, atom) in self.increments().enumerate() {
            let floor = pos.mul_right_in_place(&atom.pos).expect("atoms share the walk's group");
            f(t as u64 + 1, &pos, floor);
        }
    }

    /// `X_0..X_n`. Costs `O(Σ_t |X_t|)` memory; prefer
    /// [`Trajectory::for_each_position`] for long walks.
    pub fn positions(&self) -> Vec<BaseElement> {
        let mut out = Vec::with_capacity(self.increments.len() + 1);
        self.for_each_position(|_, x, _| out.push(x.clone()));
        out
    }

    /// The same walk stopped after `horizon` steps.
    pub fn truncated(&self, horizon: u64) -> Result<Trajectory> {
        if horizon > self.steps() {
            return Err(Error::InvalidArgument(format!("horizon {horizon} exceeds the {} recorded steps", self.steps())));
        }
        let mut walker = Walker::new(&self.group, self.modulus);
        for (t, &i) in self.increments[..horizon as usize].iter().enumerate() {
            walker.step(&self.atoms[i as usize], t as u64 + 1);
        }
        Ok(Trajectory {
            master_seed: self.master_seed,
            walk_index: self.walk_index,
            group: self.group,
            modulus: self.modulus,
            atoms: Arc::clone(&self.atoms),
            increments: self.increments[..horizon as usize].to_vec(),
            final_state: walker.state,
            lamp_events: walker.events,
        })
    }

    /// Folds the increments through the group law from scratch.
    pub fn replay(&self) -> Result<LampElement> {
        self.increments()
            .try_fold(LampElement::identity(&self.group, self.modulus), |z, i| z.multiply(i))
    }
}
