use std::fmt;
use std::str::FromStr;

use super::word::{is_reduced, FreeWord, Letter};
use super::BaseElement;
use crate::error::{Error, Result};

/// Tolerance on the Euclidean norm of a [`Direction`].
pub const DIRECTION_TOLERANCE: f64 = 1e-9;

/// An end of a free group: the infinite reduced word `prefix · period^∞`.
///
/// Exact ends are kept in canonical form (primitive, cyclically reduced
/// period and shortest possible prefix), so `==` is equality of ends. An end
/// with an empty period is a finite-precision estimate: only its prefix is
/// known.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct End {
    prefix: Vec<Letter>,
    period: Vec<Letter>,
}

impl End {
    /// The exact end `prefix · period^∞`.
    pub fn periodic(prefix: &FreeWord, period: &FreeWord) -> Result<End> {
        Self::periodic_from_letters(prefix.letters().to_vec(), period.letters().to_vec())
    }

    fn periodic_from_letters(prefix: Vec<Letter>, period: Vec<Letter>) -> Result<End> {
        if period.is_empty() {
            return Err(Error::InvalidBoundaryPoint("period of an exact end must be nonempty".into()));
        }
        if !is_reduced(&period) || period[0] == -period[period.len() - 1] {
            return Err(Error::InvalidBoundaryPoint("period must be cyclically reduced".into()));
        }
        if !is_reduced(&prefix) || prefix.last() == Some(&-period[0]) {
            return Err(Error::InvalidBoundaryPoint("prefix and period must join without cancellation".into()));
        }
        let mut end = End { prefix, period };
        end.canonicalize();
        Ok(end)
    }

    /// A finite-precision end known only through its first letters.
    pub fn estimate(prefix: FreeWord) -> End {
        End { prefix: prefix.into_letters(), period: Vec::new() }
    }

    /// `letter^∞` for a single generator.
    pub fn ray(letter: Letter) -> End {
        End { prefix: Vec::new(), period: vec![letter] }
    }

    pub fn is_exact(&self) -> bool {
        !self.period.is_empty()
    }

    pub fn prefix(&self) -> FreeWord {
        FreeWord::from_reduced(self.prefix.clone())
    }

    pub fn period(&self) -> FreeWord {
        FreeWord::from_reduced(self.period.clone())
    }

    /// Turns an estimate into an exact end by appending `period^∞`.
    pub fn promote(&self, period: &FreeWord) -> Result<End> {
        Self::periodic_from_letters(self.prefix.clone(), period.letters().to_vec())
    }

    /// The `i`-th letter (0-based), or `None` past the known part of an estimate.
    pub fn letter(&self, i: usize) -> Option<Letter> {
        if i < self.prefix.len() {
            Some(self.prefix[i])
        } else if self.period.is_empty() {
            None
        } else {
            Some(self.period[(i - self.prefix.len()) % self.period.len()])
        }
    }

    /// The first `len` letters, if known.
    pub fn initial_segment(&self, len: usize) -> Option<FreeWord> {
        (0..len)
            .map(|i| self.letter(i))
            .collect::<Option<Vec<_>>>()
            .map(FreeWord::from_reduced)
    }

    /// Length of the longest common prefix of the end and a finite word.
    pub fn common_prefix_with_word(&self, w: &[Letter]) -> usize {
        w.iter()
            .enumerate()
            .take_while(|&(i, &l)| self.letter(i) == Some(l))
            .count()
    }

    pub fn has_prefix(&self, w: &[Letter]) -> bool {
        self.common_prefix_with_word(w) == w.len()
    }

    /// Length of the common prefix of two exact ends, `None` when they are equal.
    pub fn common_prefix_with(&self, other: &End) -> Result<Option<usize>> {
        if !self.is_exact() || !other.is_exact() {
            return Err(Error::InexactEnd);
        }
        // Past both prefixes the words are periodic; agreeing on |q1|+|q2|
        // further letters forces agreement forever.
        let bound = self.prefix.len().max(other.prefix.len()) + self.period.len() + other.period.len();
        let lcp = (0..bound).take_while(|&i| self.letter(i) == other.letter(i)).count();
        Ok(if lcp == bound { None } else { Some(lcp) })
    }

    /// The translate `g · self`.
    pub fn act(&self, g: &FreeWord) -> End {
        let g = g.letters();
        if !self.is_exact() {
            let mut w = FreeWord::from_reduced(g.to_vec());
            w.mul_right_in_place(&self.prefix);
            return End::estimate(w);
        }
        // Cancellation eats at most |g| letters, so |g|/|q| + 2 periods suffice.
        let reps = g.len() / self.period.len() + 2;
        let mut tail = self.prefix.clone();
        for _ in 0..reps {
            tail.extend_from_slice(&self.period);
        }
        let cancel = g
            .iter()
            .rev()
            .zip(&tail)
            .take_while(|&(x, y)| *x == -*y)
            .count();
        let mut prefix = g[..g.len() - cancel].to_vec();
        prefix.extend_from_slice(&tail[cancel..]);
        let mut end = End { prefix, period: self.period.clone() };
        end.canonicalize();
        end
    }

    fn canonicalize(&mut self) {
        let n = self.period.len();
        if let Some(root) = (1..=n).find(|&d| n.is_multiple_of(d) && self.period.chunks(d).all(|c| c == &self.period[..d])) {
            self.period.truncate(root);
        }
        while let (Some(&p), Some(&q)) = (self.prefix.last(), self.period.last()) {
            if p != q {
                break;
            }
            self.prefix.pop();
            self.period.rotate_right(1);
        }
    }
}

impl fmt::Display for End {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.prefix {
            write!(f, "{}", super::notation::letter_char(l))?;
        }
        f.write_str(".")?;
        for &l in &self.period {
            write!(f, "{}", super::notation::letter_char(l))?;
        }
        Ok(())
    }
}

impl FromStr for End {
    type Err = Error;

    fn from_str(s: &str) -> Result<End> {
        let (p, q) = s
            .trim()
            .split_once('.')
            .ok_or_else(|| Error::Parse(format!("end must be written prefix.period: {s:?}")))?;
        let parse = |t: &str| -> Result<Vec<Letter>> {
            t.chars()
                .map(|c| {
                    super::notation::parse_letter(c)
                        .ok_or_else(|| Error::Parse(format!("bad generator letter {c:?} in {s:?}")))
                })
                .collect()
        };
        let (prefix, period) = (parse(p)?, parse(q)?);
        if period.is_empty() {
            if !is_reduced(&prefix) {
                return Err(Error::InvalidBoundaryPoint(format!("prefix of {s:?} is not reduced")));
            }
            return Ok(End::estimate(FreeWord::from_reduced(prefix)));
        }
        End::periodic_from_letters(prefix, period)
    }
}

/// A point of the unit sphere `S_{d−1}`, the boundary of `Z^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct Direction(Vec<f64>);

impl Direction {
    pub fn new(components: Vec<f64>) -> Result<Direction> {
        let norm = components.iter().map(|c| c * c).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > DIRECTION_TOLERANCE {
            return Err(Error::InvalidBoundaryPoint(format!("direction has norm {norm}")));
        }
        Ok(Direction(components))
    }

    /// `v / |v|`, failing for the zero vector.
    pub fn normalize(v: &[f64]) -> Result<Direction> {
        let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NoDirection);
        }
        Ok(Direction(v.iter().map(|c| c / norm).collect()))
    }

    pub fn components(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn distance(&self, other: &Direction) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
    }
}

/// A point of the ideal boundary `∂Γ`.
#[derive(Clone, Debug, PartialEq)]
pub enum BoundaryPoint {
    End(End),
    Direction(Direction),
}

impl BoundaryPoint {
    pub fn act(&self, g: &BaseElement) -> Result<BoundaryPoint> {
        match (self, g) {
            (BoundaryPoint::End(u), BaseElement::Free(w)) => Ok(BoundaryPoint::End(u.act(w))),
            // translations fix every direction at infinity
            (BoundaryPoint::Direction(u), BaseElement::Lattice(v)) if v.dim() == u.dim() => Ok(self.clone()),
            _ => Err(Error::VariantMismatch(format!("{g} cannot act on {self}"))),
        }
    }

    pub fn as_end(&self) -> Option<&End> {
        match self {
            BoundaryPoint::End(u) => Some(u),
            BoundaryPoint::Direction(_) => None,
        }
    }

    pub fn as_direction(&self) -> Option<&Direction> {
        match self {
            BoundaryPoint::Direction(u) => Some(u),
            BoundaryPoint::End(_) => None,
        }
    }
}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryPoint::End(u) => u.fmt(f),
            BoundaryPoint::Direction(u) => {
                f.write_str("<")?;
                for (i, c) in u.0.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(">")
            }
        }
    }
}

pub fn act_on_boundary(g: &BaseElement, u: &BoundaryPoint) -> Result<BoundaryPoint> {
    u.act(g)
}
