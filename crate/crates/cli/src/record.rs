//! The JSON-lines record stream.
//!
//! Each line is one flat object whose first keys are `kind`, `version`,
//! `config_hash` and `seed`. Keys outside the schema of the kind are
//! rejected on both write and read. Floats are written with 17
//! significant digits and kept verbatim on re-parse, so a line survives
//! parse and re-serialization byte for byte.

use std::io::Write;
use std::str::FromStr;

use lampwalk::Rational;
use serde_json::{Map, Number, Value};

use crate::error::{CliError, CliResult};

pub const VERSION: &str = concat!("lampwalk/", env!("CARGO_PKG_VERSION"));

const HEADER: [&str; 4] = ["kind", "version", "config_hash", "seed"];

const CONFIG_KEYS: &[&str] = &[
    "family", "rank", "dim", "modulus", "cost", "measure", "steps", "walks", "tail_window", "depth", "atom_depth",
    "scheme", "u", "v", "phi_plus", "phi_minus", "max_n", "trials", "radius", "lamps", "pos", "bfs_check",
    "exact_tsp_max",
];

const WALK_KEYS: &[&str] = &[
    "walk_index", "final_position", "distance", "support_size", "unsettled", "base_speed", "lamp_speed_lower",
    "lamp_speed_upper", "lamp_exact", "limit", "limit_length", "stabilization_time", "outside",
];

const AGGREGATE_KEYS: &[&str] = &[
    "walks", "steps", "tail_window", "speed_mean", "speed_stderr", "lamp_speed_lower", "lamp_speed_upper",
    "lamp_exact", "drift", "drift_l1", "nonempty_prefixes", "depth", "decided", "undecided", "stationarity_max",
    "stationarity_radius", "stationarity_cell", "atom_verdict", "atom_decays", "duplicate_pairs",
];

const CELL_KEYS: &[&str] = &["depth", "cell", "count", "mass"];
const ATOM_DEPTH_KEYS: &[&str] = &["depth", "max_mass"];
const METRIC_KEYS: &[&str] =
    &["lamps", "pos", "distance", "tour_length", "toggles", "tour_order", "exact", "bfs_distance"];
const EQUIVARIANCE_KEYS: &[&str] = &[
    "scheme", "trials", "radius", "checked", "strip_mismatches", "partition_mismatches", "lift_mismatches",
    "first_failure",
];
const CHECK_KEYS: &[&str] = &["name", "cases", "failures", "detail"];
const VERIFY_KEYS: &[&str] = &["checks", "failed"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Config,
    Walk,
    Aggregate,
    HarmonicCell,
    AtomDepth,
    Metric,
    Equivariance,
    Check,
    Verify,
}

impl Kind {
    pub const ALL: [Kind; 9] = [
        Kind::Config,
        Kind::Walk,
        Kind::Aggregate,
        Kind::HarmonicCell,
        Kind::AtomDepth,
        Kind::Metric,
        Kind::Equivariance,
        Kind::Check,
        Kind::Verify,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Config => "config",
            Kind::Walk => "walk",
            Kind::Aggregate => "aggregate",
            Kind::HarmonicCell => "harmonic-cell",
            Kind::AtomDepth => "atom-depth",
            Kind::Metric => "metric",
            Kind::Equivariance => "equivariance",
            Kind::Check => "check",
            Kind::Verify => "verify",
        }
    }

    fn keys(self) -> &'static [&'static str] {
        match self {
            Kind::Config => CONFIG_KEYS,
            Kind::Walk => WALK_KEYS,
            Kind::Aggregate => AGGREGATE_KEYS,
            Kind::HarmonicCell => CELL_KEYS,
            Kind::AtomDepth => ATOM_DEPTH_KEYS,
            Kind::Metric => METRIC_KEYS,
            Kind::Equivariance => EQUIVARIANCE_KEYS,
            Kind::Check => CHECK_KEYS,
            Kind::Verify => VERIFY_KEYS,
        }
    }
}

impl FromStr for Kind {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Kind> {
        Kind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| CliError::Invalid(format!("unknown record kind {s:?}")))
    }
}

/// The fields shared by every record of one run.
#[derive(Clone, Debug)]
pub struct Header {
    pub config_hash: String,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Record {
    kind: Kind,
    fields: Map<String, Value>,
}

/// `p/q`, also for integers.
pub fn ratio_text(q: Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// `x` with 17 significant digits; non-finite values become `null`.
pub fn float_value(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    Value::Number(Number::from_str(&format!("{x:.16e}")).expect("formatted float is a JSON number"))
}

impl Record {
    pub fn new(kind: Kind, header: &Header) -> Record {
        let mut fields = Map::new();
        fields.insert("kind".into(), kind.name().into());
        fields.insert("version".into(), VERSION.into());
        fields.insert("config_hash".into(), header.config_hash.clone().into());
        fields.insert("seed".into(), header.seed.into());
        Record { kind, fields }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.get(key)
    }

    /// Panics on a key outside the schema; that is a bug in the caller.
    pub fn set(mut self, key: &str, value: impl Into<Value>) -> Record {
        assert!(self.kind.keys().contains(&key), "{key} is not a {} field", self.kind.name());
        self.fields.insert(key.into(), value.into());
        self
    }

    pub fn float(self, key: &str, x: f64) -> Record {
        self.set(key, float_value(x))
    }

    pub fn ratio(self, key: &str, q: Rational) -> Record {
        self.set(key, ratio_text(q))
    }

    pub fn opt<T: Into<Value>>(self, key: &str, value: Option<T>) -> Record {
        self.set(key, value.map_or(Value::Null, Into::into))
    }

    pub fn extend(mut self, fields: Map<String, Value>) -> Record {
        for (k, v) in fields {
            self = self.set(&k, v);
        }
        self
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(&self.fields).expect("records hold only JSON values")
    }

    /// Parses one line, enforcing the header and the schema of its kind.
    pub fn parse(line: &str) -> CliResult<Record> {
        let fields: Map<String, Value> =
            serde_json::from_str(line).map_err(|e| CliError::Invalid(format!("malformed record: {e}")))?;
        let kind: Kind = fields
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| CliError::Invalid("record has no kind".into()))?
            .parse()?;
        let head: Vec<&str> = fields.keys().take(HEADER.len()).map(String::as_str).collect();
        if head != HEADER {
            return Err(CliError::Invalid(format!("record header must be {HEADER:?}, got {head:?}")));
        }
        if let Some(k) = fields.keys().skip(HEADER.len()).find(|k| !kind.keys().contains(&k.as_str())) {
            return Err(CliError::Invalid(format!("unknown field {k:?} in a {} record", kind.name())));
        }
        Ok(Record { kind, fields })
    }
}

/// Writes records one per line.
pub struct RecordWriter<W: Write> {
    out: W,
}

impl<W: Write> RecordWriter<W> {
    pub fn new(out: W) -> Self {
        RecordWriter { out }
    }

    pub fn write(&mut self, record: &Record) -> CliResult<()> {
        writeln!(self.out, "{}", record.to_line())?;
        Ok(())
    }

    pub fn finish(mut self) -> CliResult<W> {
        self.out.flush()?;
        Ok(self.out)
    }
}
