use std::collections::BTreeMap;

use crate::base_group::{BaseElement, BoundaryPoint, Direction, End, FreeWord};
use crate::error::{Error, Result};
use crate::lamplighter::Configuration;
use crate::walk::Trajectory;
use crate::Rational;

/// Default half-space slack `R₀` for lattice accumulation checks.
pub const DEFAULT_HALF_SPACE_OFFSET: f64 = 10.0;

/// Tail window used when none is given: a tenth of the horizon, at least 1.
pub fn default_tail_window(steps: u64) -> u64 {
    (steps / 10).max(1)
}

/// Finite-horizon estimate of `X_∞`.
#[derive(Clone, Debug, PartialEq)]
pub enum LimitEndEstimate {
    /// The longest word that is a prefix of every `X_m` in the final
    /// `tail_window` steps; unchanged since `stabilization_time`.
    Free { prefix: FreeWord, stabilization_time: u64, tail_window: u64, horizon: u64 },
    /// `X_n / |X_n|` on a lattice.
    Direction { direction: Direction, distance: u64, horizon: u64 },
}

impl LimitEndEstimate {
    pub fn prefix(&self) -> Option<&FreeWord> {
        match self {
            LimitEndEstimate::Free { prefix, .. } => Some(prefix),
            LimitEndEstimate::Direction { .. } => None,
        }
    }

    pub fn horizon(&self) -> u64 {
        match self {
            LimitEndEstimate::Free { horizon, .. } | LimitEndEstimate::Direction { horizon, .. } => *horizon,
        }
    }

    /// The estimate as an (inexact) boundary point.
    pub fn to_boundary_point(&self) -> BoundaryPoint {
        match self {
            LimitEndEstimate::Free { prefix, .. } => BoundaryPoint::End(End::estimate(prefix.clone())),
            LimitEndEstimate::Direction { direction, .. } => BoundaryPoint::Direction(direction.clone()),
        }
    }
}

pub fn estimate_limit_point(traj: &Trajectory, tail_window: u64) -> Result<LimitEndEstimate> {
    let n = traj.steps();
    if tail_window == 0 || n < 2 * tail_window {
        return Err(Error::TrajectoryTooShort { steps: n, window: tail_window });
    }
    let x_n = traj.final_position();
    match x_n {
        BaseElement::Lattice(v) => {
            let coords: Vec<f64> = v.coords().iter().map(|&c| c as f64).collect();
            let direction = Direction::normalize(&coords)?;
            Ok(LimitEndEstimate::Direction { direction, distance: v.l1_norm(), horizon: n })
        }
        BaseElement::Free(word) => {
            let start = n - tail_window;
            let mut floors = Vec::with_capacity(n as usize + 1);
            let mut len_at_start = 0;
            traj.for_each_position(|t, x, floor| {
                floors.push(floor);
                if t == start {
                    len_at_start = x.norm() as usize;
                }
            });
            // Letters below every floor in (start, n] are shared by X_start..X_n.
            let stable = floors[start as usize + 1..].iter().copied().fold(len_at_start, usize::min);
            let stabilization_time = floors.iter().rposition(|&f| f < stable).unwrap_or(0) as u64;
            Ok(LimitEndEstimate::Free {
                prefix: word.truncated(stable),
                stabilization_time,
                tail_window,
                horizon: n,
            })
        }
    }
}

/// Final state and last change time of one lamp.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SiteRecord {
    pub state: u8,
    pub last_flip: u64,
}

/// Finite-horizon estimate of `η_∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitConfigurationEstimate {
    pub modulus: u8,
    pub horizon: u64,
    pub tail_window: u64,
    /// Sites lit at the horizon.
    pub sites: BTreeMap<BaseElement, SiteRecord>,
}

impl LimitConfigurationEstimate {
    pub fn from_trajectory(traj: &Trajectory, tail_window: u64) -> Self {
        let sites = traj
            .lamp_events()
            .iter()
            .filter_map(|(site, events)| {
                let last = events.last()?;
                (last.state != 0).then(|| (site.clone(), SiteRecord { state: last.state, last_flip: last.time }))
            })
            .collect();
        LimitConfigurationEstimate { modulus: traj.modulus(), horizon: traj.steps(), tail_window, sites }
    }

    /// A lit lamp is settled when it has not changed in the last `tail_window` steps.
    pub fn is_settled(&self, record: &SiteRecord) -> bool {
        record.last_flip + self.tail_window <= self.horizon
    }

    pub fn settled_sites(&self) -> impl Iterator<Item = (&BaseElement, &SiteRecord)> {
        self.sites.iter().filter(|(_, r)| self.is_settled(r))
    }

    pub fn unsettled_count(&self) -> usize {
        self.sites.values().filter(|r| !self.is_settled(r)).count()
    }

    pub fn settled_config(&self) -> Configuration {
        Configuration::from_sites(self.modulus, self.settled_sites().map(|(s, r)| (s.clone(), i64::from(r.state))))
            .expect("modulus already validated")
    }

    /// The final configuration (settled or not).
    pub fn config(&self) -> Configuration {
        Configuration::from_sites(self.modulus, self.sites.iter().map(|(s, r)| (s.clone(), i64::from(r.state))))
            .expect("modulus already validated")
    }
}

/// Finite-horizon estimate of `Z_∞ = (η_∞, X_∞) ∈ Ω`.
#[derive(Clone, Debug, PartialEq)]
pub struct OmegaPointEstimate {
    pub config: LimitConfigurationEstimate,
    pub point: LimitEndEstimate,
}

pub fn omega_point_estimate(traj: &Trajectory, tail_window: u64) -> Result<OmegaPointEstimate> {
    Ok(OmegaPointEstimate {
        point: estimate_limit_point(traj, tail_window)?,
        config: LimitConfigurationEstimate::from_trajectory(traj, tail_window),
    })
}

/// Which settled lamps count as accumulating at the limit point.
#[derive(Clone, Debug, PartialEq)]
pub enum AccumulationRule {
    /// Free groups: sites whose word starts with the first `depth` letters of the stable prefix.
    Cylinder { depth: usize },
    /// Lattices: sites `y` with `⟨y, m/|m|⟩ > −offset`.
    HalfSpace { drift: Vec<Rational>, offset: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AccumulationReport {
    pub inside: usize,
    pub outside: usize,
    /// Largest `d(e, y)` over outside sites, 0 when there are none.
    pub max_outside_distance: u64,
}

pub fn accumulation_check(est: &OmegaPointEstimate, rule: &AccumulationRule) -> Result<AccumulationReport> {
    let inside: Box<dyn Fn(&BaseElement) -> bool> = match rule {
        AccumulationRule::Cylinder { depth } => {
            let prefix = est
                .point
                .prefix()
                .ok_or_else(|| Error::VariantMismatch("cylinder rule needs a free-group limit".into()))?;
            if prefix.len() < *depth {
                return Err(Error::PrefixTooShort { have: prefix.len(), need: *depth });
            }
            let head = prefix.letters()[..*depth].to_vec();
            Box::new(move |y| y.as_free().is_some_and(|w| w.starts_with(&head)))
        }
        AccumulationRule::HalfSpace { drift, offset } => {
            let m: Vec<f64> = drift.iter().map(|r| *r.numer() as f64 / *r.denom() as f64).collect();
            let unit = Direction::normalize(&m)?;
            let offset = *offset;
            Box::new(move |y| {
                y.as_lattice().is_some_and(|v| {
                    let dot: f64 = v.coords().iter().zip(unit.components()).map(|(&c, u)| c as f64 * u).sum();
                    dot > -offset
                })
            })
        }
    };
    let mut report = AccumulationReport { inside: 0, outside: 0, max_outside_distance: 0 };
    for (site, _) in est.config.settled_sites() {
        if inside(site) {
            report.inside += 1;
        } else {
            report.outside += 1;
            report.max_outside_distance = report.max_outside_distance.max(site.norm());
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_group::BaseGroup;
    use crate::lamplighter::LampElement;
    use crate::walk::{presets, run_walk, StepMeasure};

    fn f(s: &str) -> BaseElement {
        BaseElement::Free(s.parse().unwrap())
    }

    fn f2() -> BaseGroup {
        BaseGroup::free(2).unwrap()
    }

    #[test]
    fn deterministic_ray_prefix() {
        let traj = run_walk(&presets::ray(f2(), 2).unwrap(), 100, 0, 0);
        let LimitEndEstimate::Free { prefix, stabilization_time, .. } = estimate_limit_point(&traj, 10).unwrap() else {
            panic!("free estimate expected")
        };
        // all of X_90 survives to X_100, and it was completed at step 90
        assert_eq!(prefix, "a".parse::<FreeWord>().unwrap().pow(90));
        assert_eq!(stabilization_time, 90);
        assert!(estimate_limit_point(&traj, 51).is_err());
    }

    #[test]
    fn stable_prefix_is_prefix_of_tail_positions() {
        let mu = presets::srw_lamp(f2(), 2).unwrap();
        for seed in 0..5 {
            let traj = run_walk(&mu, 600, seed, 1);
            let LimitEndEstimate::Free { prefix, stabilization_time, .. } = estimate_limit_point(&traj, 60).unwrap() else {
                unreachable!()
            };
            let xs = traj.positions();
            for x in &xs[stabilization_time as usize..] {
                assert!(x.as_free().unwrap().starts_with(prefix.letters()));
            }
            if stabilization_time > 0 && !prefix.is_empty() {
                let before = xs[stabilization_time as usize - 1].as_free().unwrap();
                assert!(!before.starts_with(prefix.letters()));
            }
        }
    }

    #[test]
    fn lattice_at_origin_has_no_direction() {
        let z1 = BaseGroup::lattice(1).unwrap();
        let atoms = vec![
            (LampElement::travel(BaseElement::lattice([1]), 2), Rational::new(1, 2)),
            (LampElement::travel(BaseElement::lattice([-1]), 2), Rational::new(1, 2)),
        ];
        let mu = StepMeasure::new_degenerate(z1, 2, atoms).unwrap();
        let traj = (0..).map(|s| run_walk(&mu, 2, s, 0)).find(|t| t.final_position().is_identity()).unwrap();
        assert_eq!(estimate_limit_point(&traj, 1), Err(Error::NoDirection));
    }

    #[test]
    fn lamp_ray_accumulation() {
        let traj = run_walk(&presets::ray_lamp(f2(), 2).unwrap(), 100, 0, 0);
        let est = omega_point_estimate(&traj, 10).unwrap();
        assert_eq!(est.config.sites.len(), 100);
        assert_eq!(est.config.unsettled_count(), 10);
        let report = accumulation_check(&est, &AccumulationRule::Cylinder { depth: 1 }).unwrap();
        assert_eq!(report, AccumulationReport { inside: 89, outside: 1, max_outside_distance: 0 });
        assert!(matches!(
            accumulation_check(&est, &AccumulationRule::Cylinder { depth: 500 }),
            Err(Error::PrefixTooShort { .. })
        ));
    }

    #[test]
    fn finite_support_is_all_outside_far_away() {
        // lamps stay on the a-axis, away from the bb cylinder
        let mu = StepMeasure::new_degenerate(
            f2(),
            2,
            vec![
                (LampElement::new(Configuration::delta(f("e"), 2), f("a")).unwrap(), Rational::new(1, 2)),
                (LampElement::travel(f("A"), 2), Rational::new(1, 2)),
            ],
        )
        .unwrap();
        let traj = run_walk(&mu, 40, 3, 0);
        let est = OmegaPointEstimate {
            config: LimitConfigurationEstimate::from_trajectory(&traj, 4),
            point: LimitEndEstimate::Free { prefix: "bb".parse().unwrap(), stabilization_time: 0, tail_window: 4, horizon: 40 },
        };
        let report = accumulation_check(&est, &AccumulationRule::Cylinder { depth: 2 }).unwrap();
        assert_eq!(report.inside, 0);
        assert!(report.outside as u128 <= f2().ball_size(40));
    }
}
