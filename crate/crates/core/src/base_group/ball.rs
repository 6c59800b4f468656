use super::{BaseElement, BaseGroup, FreeWord, Letter, LatticeVector};
use crate::error::{Error, Result};

/// Default radius cap; `|B(e,14)|` in `F_2` is about 9.6 million words.
pub const DEFAULT_BALL_CAP: u32 = 14;

/// A closed word-metric ball, enumerated exactly.
#[derive(Clone, Debug)]
pub struct Ball {
    pub center: BaseElement,
    pub radius: u32,
    /// Elements in order of increasing distance from the center.
    pub elements: Vec<BaseElement>,
}

impl Ball {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &BaseElement> {
        self.elements.iter()
    }
}

pub(super) fn enumerate(group: &BaseGroup, center: &BaseElement, n: u32, cap: u32) -> Result<Ball> {
    if n > cap {
        return Err(Error::BallCapExceeded { requested: n, cap });
    }
    group.check_contains(center)?;
    let offsets = match *group {
        BaseGroup::Free { rank } => free_words_up_to(rank, n),
        BaseGroup::Lattice { dim } => lattice_shells(dim, n),
    };
    let elements = offsets
        .into_iter()
        .map(|o| center.multiply(&o))
        .collect::<Result<Vec<_>>>()?;
    Ok(Ball { center: center.clone(), radius: n, elements })
}

fn free_words_up_to(rank: u8, n: u32) -> Vec<BaseElement> {
    let letters: Vec<Letter> = (1..=rank as Letter).chain((1..=rank as Letter).map(|l| -l)).collect();
    let mut out = vec![BaseElement::Free(FreeWord::identity())];
    let mut shell: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(shell.len() * (letters.len().saturating_sub(1)).max(1));
        for w in &shell {
            for &l in &letters {
                if w.last() == Some(&-l) {
                    continue;
                }
                let mut v = Vec::with_capacity(w.len() + 1);
                v.extend_from_slice(w);
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned().map(|v| BaseElement::Free(FreeWord::from_reduced(v))));
        shell = next;
    }
    out
}

fn lattice_shells(dim: usize, n: u32) -> Vec<BaseElement> {
    let mut out = Vec::new();
    for r in 0..=i64::from(n) {
        let mut v = vec![0i64; dim];
        sphere(&mut v, 0, r, &mut out);
    }
    out
}

// All vectors whose remaining coordinates from `axis` on have l1 norm exactly `left`.
fn sphere(v: &mut Vec<i64>, axis: usize, left: i64, out: &mut Vec<BaseElement>) {
    if axis + 1 == v.len() {
        v[axis] = left;
        out.push(BaseElement::Lattice(LatticeVector(v.clone())));
        if left != 0 {
            v[axis] = -left;
            out.push(BaseElement::Lattice(LatticeVector(v.clone())));
        }
        v[axis] = 0;
        return;
    }
    for c in -left..=left {
        v[axis] = c;
        sphere(v, axis + 1, left - c.abs(), out);
    }
    v[axis] = 0;
}
