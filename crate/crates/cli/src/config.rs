//! Experiment configuration: a TOML file overlaid by command-line flags.

use std::path::Path;

use clap::Args;
use lampwalk::boundary::default_tail_window;
use lampwalk::strips::PartitionScheme;
use lampwalk::walk::{project_measure, StepMeasure, WalkConfig};
use lampwalk::{BaseGroup, MetricParams, Rational};
use serde::Deserialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};
use crate::measure_spec;

pub const MAX_STEPS: u64 = 10_000_000;
pub const MAX_WALKS: u64 = 1_000_000;
pub const MAX_DEPTH: usize = 16;
pub const MAX_STRIP_N: u32 = 14;
pub const MAX_FUZZ_RADIUS: u32 = 8;
pub const MAX_TRIALS: u64 = 100_000;
pub const MAX_EXACT_TSP: usize = 20;
pub const MAX_DIM: usize = 8;

/// Every experiment field, optional so that file and flags can be layered.
/// Keys are kebab-case in the file and `--kebab-case` on the command line.
#[derive(Args, Deserialize, Clone, Debug, Default)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Overrides {
    /// Base group family: free | lattice.
    #[arg(long)]
    pub family: Option<String>,
    /// Free rank k.
    #[arg(long)]
    pub rank: Option<u8>,
    /// Lattice dimension d.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Lamp modulus r.
    #[arg(long)]
    pub modulus: Option<u8>,
    /// Lamp toggle cost c, an integer or p/q.
    #[arg(long)]
    pub cost: Option<String>,
    /// srw | srw+lamp | ray | ray+lamp | drift(m1,..,md)[+lamp] | atom list.
    #[arg(long)]
    pub measure: Option<String>,
    #[arg(long)]
    pub steps: Option<u64>,
    #[arg(long)]
    pub walks: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Defaults to steps/10.
    #[arg(long)]
    pub tail_window: Option<u64>,
    /// Cylinder depth L of the harmonic-measure and accumulation estimates.
    #[arg(long)]
    pub depth: Option<usize>,
    /// Deepest level of the atom check.
    #[arg(long)]
    pub atom_depth: Option<usize>,
    /// tree-edge-cut | horosphere | hyperplane.
    #[arg(long)]
    pub scheme: Option<String>,
    /// Exact end written prefix.period.
    #[arg(long)]
    pub u: Option<String>,
    #[arg(long)]
    pub v: Option<String>,
    /// Lit sites of φ₊, comma-separated.
    #[arg(long)]
    pub phi_plus: Option<String>,
    #[arg(long)]
    pub phi_minus: Option<String>,
    /// Largest radius of the strip growth curve.
    #[arg(long)]
    pub max_n: Option<u32>,
    /// Random equivariance or invariant trials.
    #[arg(long)]
    pub trials: Option<u64>,
    /// Ball radius of the equivariance comparison.
    #[arg(long)]
    pub radius: Option<u32>,
    /// Lit sites of the metric target, comma-separated; `site^k` sets state k.
    #[arg(long)]
    pub lamps: Option<String>,
    /// Base position of the metric target.
    #[arg(long)]
    pub pos: Option<String>,
    /// Cross-check the metric against breadth-first search.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub bfs_check: Option<bool>,
    /// Largest lamp count given to the exact tour solver.
    #[arg(long)]
    pub exact_tsp_max: Option<usize>,
}

macro_rules! overlay {
    ($base:expr, $top:expr; $($field:ident),* $(,)?) => {
        Overrides { $($field: $top.$field.or($base.$field)),* }
    };
}

impl Overrides {
    pub fn from_file(path: &Path) -> CliResult<Overrides> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Invalid(format!("cannot read {}: {e}", path.display())))?;
        Ok(toml::from_str(&text)?)
    }

    /// `top` wins wherever it is set.
    pub fn overlay(self, top: Overrides) -> Overrides {
        overlay!(self, top;
            family, rank, dim, modulus, cost, measure, steps, walks, seed, tail_window, depth,
            atom_depth, scheme, u, v, phi_plus, phi_minus, max_n, trials, radius, lamps, pos,
            bfs_check, exact_tsp_max)
    }
}

/// A validated configuration with every default filled in.
#[derive(Clone, Debug)]
pub struct Experiment {
    pub group: BaseGroup,
    pub modulus: u8,
    pub cost: Rational,
    pub measure_spec: String,
    pub steps: u64,
    pub walks: u64,
    pub seed: u64,
    pub tail_window: u64,
    pub depth: usize,
    pub atom_depth: usize,
    pub scheme: String,
    pub u: String,
    pub v: String,
    pub phi_plus: String,
    pub phi_minus: String,
    pub max_n: u32,
    pub trials: u64,
    pub radius: u32,
    pub lamps: String,
    pub pos: String,
    pub bfs_check: bool,
    pub exact_tsp_max: usize,
}

fn cap<T: PartialOrd + std::fmt::Display>(name: &str, value: T, max: T) -> CliResult<T> {
    if value > max {
        return Err(CliError::Cap(format!("{name} = {value} exceeds the cap {max}")));
    }
    Ok(value)
}

fn parse_rational(name: &str, s: &str) -> CliResult<Rational> {
    s.trim().parse::<Rational>().map_err(|e| CliError::Invalid(format!("{name} = {s:?}: {e}")))
}

impl Experiment {
    pub fn resolve(o: Overrides) -> CliResult<Experiment> {
        let family = o.family.unwrap_or_else(|| "free".into());
        let group = match family.as_str() {
            "free" => BaseGroup::free(o.rank.unwrap_or(2))?,
            "lattice" => BaseGroup::lattice(cap("dim", o.dim.unwrap_or(3), MAX_DIM)?)?,
            other => return Err(CliError::Invalid(format!("family must be free or lattice, got {other:?}"))),
        };
        let modulus = o.modulus.unwrap_or(2);
        if modulus < 2 {
            return Err(CliError::Invalid(format!("modulus must be at least 2, got {modulus}")));
        }
        let cost = parse_rational("cost", o.cost.as_deref().unwrap_or("1"))?;
        if cost <= Rational::from_integer(0) {
            return Err(CliError::Invalid(format!("cost must be positive, got {cost}")));
        }
        let steps = cap("steps", o.steps.unwrap_or(10_000), MAX_STEPS)?;
        let walks = cap("walks", o.walks.unwrap_or(200), MAX_WALKS)?;
        if steps == 0 || walks == 0 {
            return Err(CliError::Invalid("steps and walks must be positive".into()));
        }
        let tail_window = o.tail_window.unwrap_or_else(|| default_tail_window(steps));
        let default_scheme = match group {
            BaseGroup::Free { .. } => "tree-edge-cut",
            BaseGroup::Lattice { .. } => "hyperplane",
        };
        let exp = Experiment {
            group,
            modulus,
            cost,
            measure_spec: o.measure.unwrap_or_else(|| "srw+lamp".into()),
            steps,
            walks,
            seed: o.seed.unwrap_or(42),
            tail_window,
            depth: cap("depth", o.depth.unwrap_or(1), MAX_DEPTH)?,
            atom_depth: cap("atom-depth", o.atom_depth.unwrap_or(4), MAX_DEPTH)?,
            scheme: o.scheme.unwrap_or_else(|| default_scheme.into()),
            u: o.u.unwrap_or_else(|| "a.a".into()),
            v: o.v.unwrap_or_else(|| "A.A".into()),
            phi_plus: o.phi_plus.unwrap_or_default(),
            phi_minus: o.phi_minus.unwrap_or_default(),
            max_n: cap("max-n", o.max_n.unwrap_or(12), MAX_STRIP_N)?,
            trials: cap("trials", o.trials.unwrap_or(200), MAX_TRIALS)?,
            radius: cap("radius", o.radius.unwrap_or(5), MAX_FUZZ_RADIUS)?,
            lamps: o.lamps.unwrap_or_default(),
            pos: o.pos.unwrap_or_else(|| "e".into()),
            bfs_check: o.bfs_check.unwrap_or(false),
            exact_tsp_max: cap("exact-tsp-max", o.exact_tsp_max.unwrap_or(16), MAX_EXACT_TSP)?,
        };
        if exp.atom_depth == 0 {
            return Err(CliError::Invalid("atom-depth must be positive".into()));
        }
        if !["tree-edge-cut", "horosphere", "hyperplane"].contains(&exp.scheme.as_str()) {
            return Err(CliError::Invalid(format!("unknown scheme {:?}", exp.scheme)));
        }
        // fail on a bad measure before any work starts
        exp.measure()?;
        Ok(exp)
    }

    pub fn measure(&self) -> CliResult<StepMeasure> {
        measure_spec::parse(&self.measure_spec, &self.group, self.modulus)
    }

    pub fn metric(&self) -> MetricParams {
        MetricParams { c: self.cost, exact_tsp_max_lamps: self.exact_tsp_max }
    }

    pub fn walk_config(&self) -> CliResult<WalkConfig> {
        let mut cfg = WalkConfig::new(self.steps, self.walks, self.seed)?;
        cfg.tail_window = Some(self.tail_window);
        cfg.metric = self.metric();
        Ok(cfg)
    }

    /// The partition scheme; hyperplanes take their normal from the drift of `mu`.
    pub fn scheme_for(&self, mu: &StepMeasure) -> CliResult<PartitionScheme> {
        match (self.scheme.as_str(), &self.group) {
            ("tree-edge-cut", BaseGroup::Free { .. }) => Ok(PartitionScheme::TreeEdgeCut),
            ("horosphere", BaseGroup::Free { .. }) => Ok(PartitionScheme::Horosphere),
            ("hyperplane", BaseGroup::Lattice { .. }) => {
                let drift = project_measure(mu).drift().unwrap_or_default();
                if drift.iter().all(|m| *m == Rational::from_integer(0)) {
                    return Err(CliError::Invalid("the hyperplane scheme needs a measure with nonzero drift".into()));
                }
                Ok(PartitionScheme::Hyperplane { drift })
            }
            (s, g) => Err(CliError::Invalid(format!("scheme {s:?} does not apply to {g}"))),
        }
    }

    /// The configuration as flat key–value pairs; rationals stay `p/q` strings.
    pub fn echo(&self) -> Map<String, Value> {
        let mut m = Map::new();
        let (family, size) = match self.group {
            BaseGroup::Free { rank } => ("free", u64::from(rank)),
            BaseGroup::Lattice { dim } => ("lattice", dim as u64),
        };
        m.insert("family".into(), family.into());
        m.insert(if family == "free" { "rank" } else { "dim" }.into(), size.into());
        m.insert("modulus".into(), self.modulus.into());
        m.insert("cost".into(), crate::record::ratio_text(self.cost).into());
        m.insert("measure".into(), self.measure_spec.clone().into());
        m.insert("steps".into(), self.steps.into());
        m.insert("walks".into(), self.walks.into());
        m.insert("tail_window".into(), self.tail_window.into());
        m.insert("depth".into(), self.depth.into());
        m.insert("atom_depth".into(), self.atom_depth.into());
        m.insert("scheme".into(), self.scheme.clone().into());
        m.insert("u".into(), self.u.clone().into());
        m.insert("v".into(), self.v.clone().into());
        m.insert("phi_plus".into(), self.phi_plus.clone().into());
        m.insert("phi_minus".into(), self.phi_minus.clone().into());
        m.insert("max_n".into(), self.max_n.into());
        m.insert("trials".into(), self.trials.into());
        m.insert("radius".into(), self.radius.into());
        m.insert("lamps".into(), self.lamps.clone().into());
        m.insert("pos".into(), self.pos.clone().into());
        m.insert("bfs_check".into(), self.bfs_check.into());
        m.insert("exact_tsp_max".into(), self.exact_tsp_max.into());
        m
    }

    /// First 16 hex digits of the SHA-256 of the echo, seed included.
    pub fn config_hash(&self) -> String {
        let mut echo = self.echo();
        echo.insert("seed".into(), self.seed.into());
        let digest = Sha256::digest(Value::Object(echo).to_string().as_bytes());
        hex::encode(&digest[..8])
    }
}
