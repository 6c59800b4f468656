//! The base groups `Γ`: free groups `F_k` with their reduced-word metric and
//! Euclidean lattices `Z^d` with the `ℓ¹` word metric of the standard basis.

mod ball;
mod boundary_point;
pub mod notation;
mod word;

use std::fmt;

pub use ball::{Ball, DEFAULT_BALL_CAP};
pub use boundary_point::{act_on_boundary, BoundaryPoint, Direction, End, DIRECTION_TOLERANCE};
pub use word::{FreeWord, Letter};

use crate::error::{Error, Result};
use crate::Rational;

/// An integer vector in `Z^d`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector(Vec<i64>);

impl LatticeVector {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticeVector(coords)
    }

    pub fn zero(dim: usize) -> Self {
        LatticeVector(vec![0; dim])
    }

    pub fn unit(dim: usize, axis: usize, sign: i64) -> Self {
        let mut v = vec![0; dim];
        v[axis] = sign;
        LatticeVector(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn l1_norm(&self) -> u64 {
        self.0.iter().map(|c| c.unsigned_abs()).sum()
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// An element of `F_k` or `Z^d`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BaseElement {
    Free(FreeWord),
    Lattice(LatticeVector),
}

/// Which group an element lives in; free words of different ranks are
/// compatible since `F_k` embeds in `F_{k+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementKind {
    Free,
    Lattice(usize),
}

impl BaseElement {
    pub fn free(word: FreeWord) -> Self {
        BaseElement::Free(word)
    }

    pub fn lattice(coords: impl Into<Vec<i64>>) -> Self {
        BaseElement::Lattice(LatticeVector(coords.into()))
    }

    pub fn kind(&self) -> ElementKind {
        match self {
            BaseElement::Free(_) => ElementKind::Free,
            BaseElement::Lattice(v) => ElementKind::Lattice(v.dim()),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            BaseElement::Free(w) => w.is_identity(),
            BaseElement::Lattice(v) => v.0.iter().all(|&c| c == 0),
        }
    }

    /// The identity of the group this element belongs to.
    pub fn identity_like(&self) -> BaseElement {
        match self {
            BaseElement::Free(_) => BaseElement::Free(FreeWord::identity()),
            BaseElement::Lattice(v) => BaseElement::Lattice(LatticeVector::zero(v.dim())),
        }
    }

    pub fn as_free(&self) -> Option<&FreeWord> {
        match self {
            BaseElement::Free(w) => Some(w),
            BaseElement::Lattice(_) => None,
        }
    }

    pub fn as_lattice(&self) -> Option<&LatticeVector> {
        match self {
            BaseElement::Lattice(v) => Some(v),
            BaseElement::Free(_) => None,
        }
    }

    pub fn check_compatible(&self, other: &BaseElement) -> Result<()> {
        if self.kind() == other.kind() {
            Ok(())
        } else {
            Err(Error::VariantMismatch(format!("{self} and {other}")))
        }
    }

    pub fn multiply(&self, other: &BaseElement) -> Result<BaseElement> {
        let mut out = self.clone();
        out.mul_right_in_place(other)?;
        Ok(out)
    }

    /// `self <- self * other`. For free words the return value is the length
    /// of the untouched prefix of the old word; for lattice vectors it is 0.
    pub fn mul_right_in_place(&mut self, other: &BaseElement) -> Result<usize> {
        match (self, other) {
            (BaseElement::Free(a), BaseElement::Free(b)) => Ok(a.mul_right_in_place(b.letters())),
            (BaseElement::Lattice(a), BaseElement::Lattice(b)) if a.dim() == b.dim() => {
                for (x, y) in a.0.iter_mut().zip(&b.0) {
                    *x += y;
                }
                Ok(0)
            }
            (a, b) => Err(Error::VariantMismatch(format!("{a} and {b}"))),
        }
    }

    pub fn inverse(&self) -> BaseElement {
        match self {
            BaseElement::Free(w) => BaseElement::Free(w.inverse()),
            BaseElement::Lattice(v) => BaseElement::Lattice(LatticeVector(v.0.iter().map(|c| -c).collect())),
        }
    }

    /// Word length `d(e, self)`.
    pub fn norm(&self) -> u64 {
        match self {
            BaseElement::Free(w) => w.len() as u64,
            BaseElement::Lattice(v) => v.l1_norm(),
        }
    }

    pub fn word_distance(&self, other: &BaseElement) -> Result<u64> {
        match (self, other) {
            (BaseElement::Free(a), BaseElement::Free(b)) => {
                // |a⁻¹b| on a tree: both words hang off e and share their common prefix.
                let common = a.common_prefix_len(b.letters());
                Ok((a.len() + b.len() - 2 * common) as u64)
            }
            (BaseElement::Lattice(a), BaseElement::Lattice(b)) if a.dim() == b.dim() => {
                Ok(a.0.iter().zip(&b.0).map(|(x, y)| x.abs_diff(*y)).sum())
            }
            (a, b) => Err(Error::VariantMismatch(format!("{a} and {b}"))),
        }
    }
}

impl fmt::Display for BaseElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseElement::Free(w) => w.fmt(f),
            BaseElement::Lattice(v) => v.fmt(f),
        }
    }
}

impl From<FreeWord> for BaseElement {
    fn from(w: FreeWord) -> Self {
        BaseElement::Free(w)
    }
}

impl From<LatticeVector> for BaseElement {
    fn from(v: LatticeVector) -> Self {
        BaseElement::Lattice(v)
    }
}

/// Group product `a · b`.
pub fn multiply(a: &BaseElement, b: &BaseElement) -> Result<BaseElement> {
    a.multiply(b)
}

pub fn word_distance(a: &BaseElement, b: &BaseElement) -> Result<u64> {
    a.word_distance(b)
}

/// `d(x, y) / d(x, e)` as an exact rational.
pub fn cp_ratio(x: &BaseElement, y: &BaseElement) -> Result<Rational> {
    let denom = x.norm();
    if denom == 0 {
        return Err(Error::ZeroDistance);
    }
    let numer = x.word_distance(y)?;
    Ok(Rational::new(numer as i64, denom as i64))
}

/// A concrete base group, carrying the rank or dimension that elements alone
/// do not determine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseGroup {
    Free { rank: u8 },
    Lattice { dim: usize },
}

impl BaseGroup {
    pub fn free(rank: u8) -> Result<Self> {
        if rank == 0 || rank > notation::MAX_RANK {
            return Err(Error::InvalidArgument(format!("free rank must be in 1..={}", notation::MAX_RANK)));
        }
        Ok(BaseGroup::Free { rank })
    }

    pub fn lattice(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("lattice dimension must be positive".into()));
        }
        Ok(BaseGroup::Lattice { dim })
    }

    pub fn identity(&self) -> BaseElement {
        match *self {
            BaseGroup::Free { .. } => BaseElement::Free(FreeWord::identity()),
            BaseGroup::Lattice { dim } => BaseElement::Lattice(LatticeVector::zero(dim)),
        }
    }

    /// The symmetric generating set `S_Γ`, positive generators first.
    pub fn generators(&self) -> Vec<BaseElement> {
        match *self {
            BaseGroup::Free { rank } => {
                let pos = (1..=rank as Letter).map(|l| BaseElement::Free(FreeWord::generator(l)));
                let neg = (1..=rank as Letter).map(|l| BaseElement::Free(FreeWord::generator(-l)));
                pos.chain(neg).collect()
            }
            BaseGroup::Lattice { dim } => {
                let pos = (0..dim).map(|i| BaseElement::Lattice(LatticeVector::unit(dim, i, 1)));
                let neg = (0..dim).map(|i| BaseElement::Lattice(LatticeVector::unit(dim, i, -1)));
                pos.chain(neg).collect()
            }
        }
    }

    pub fn contains(&self, x: &BaseElement) -> bool {
        match (*self, x) {
            (BaseGroup::Free { rank }, BaseElement::Free(w)) => w.max_generator() <= rank,
            (BaseGroup::Lattice { dim }, BaseElement::Lattice(v)) => v.dim() == dim,
            _ => false,
        }
    }

    pub fn check_contains(&self, x: &BaseElement) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::VariantMismatch(format!("{x} is not an element of {self}")))
        }
    }

    /// Parses an element in the text notation of [`notation`].
    pub fn parse_element(&self, s: &str) -> Result<BaseElement> {
        let x = match self {
            BaseGroup::Free { .. } => BaseElement::Free(s.parse()?),
            BaseGroup::Lattice { .. } => {
                let t = s.trim();
                if t == notation::IDENTITY || t.is_empty() {
                    self.identity()
                } else {
                    BaseElement::Lattice(LatticeVector(notation::parse_lattice(t)?))
                }
            }
        };
        self.check_contains(&x)?;
        Ok(x)
    }

    /// Exact `|B(e, n)|`: `1 + 2k((2k−1)^n − 1)/(2k−2)` for `F_k` and the
    /// `ℓ¹` ball count `Σ_i 2^i C(d,i) C(n,i)` for `Z^d`.
    pub fn ball_size(&self, n: u32) -> u128 {
        match *self {
            BaseGroup::Free { rank } => {
                let k = u128::from(rank);
                if n == 0 {
                    1
                } else if k == 1 {
                    2 * u128::from(n) + 1
                } else {
                    1 + 2 * k * ((2 * k - 1).pow(n) - 1) / (2 * k - 2)
                }
            }
            BaseGroup::Lattice { dim } => {
                let n = n as usize;
                (0..=dim.min(n))
                    .map(|i| (1u128 << i) * binomial(dim, i) * binomial(n, i))
                    .sum()
            }
        }
    }

    pub fn enumerate_ball(&self, center: &BaseElement, n: u32) -> Result<Ball> {
        self.enumerate_ball_capped(center, n, DEFAULT_BALL_CAP)
    }

    pub fn enumerate_ball_capped(&self, center: &BaseElement, n: u32, cap: u32) -> Result<Ball> {
        ball::enumerate(self, center, n, cap)
    }
}

impl fmt::Display for BaseGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseGroup::Free { rank } => write!(f, "F_{rank}"),
            BaseGroup::Lattice { dim } => write!(f, "Z^{dim}"),
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}
