use std::fmt;

use super::notation;

/// A generator of a free group, encoded as a signed nonzero index: `i` is the
/// `i`-th generator and `-i` its inverse.
pub type Letter = i8;

/// A reduced word in a free group.
///
/// Every constructor and every product reduces eagerly, so two words are
/// equal as group elements exactly when their letter sequences are equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeWord(Vec<Letter>);

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord(Vec::new())
    }

    pub fn generator(letter: Letter) -> Self {
        assert!(letter != 0, "generator index 0 is not a letter");
        FreeWord(vec![letter])
    }

    /// Freely reduces an arbitrary letter sequence. Zero letters are rejected.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Option<Self> {
        let mut word = FreeWord::identity();
        for l in letters {
            if l == 0 {
                return None;
            }
            word.push_reducing(l);
        }
        Some(word)
    }

    /// Wraps letters that are already known to be reduced.
    pub(crate) fn from_reduced(letters: Vec<Letter>) -> Self {
        debug_assert!(is_reduced(&letters));
        FreeWord(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    /// Largest generator index used, 0 for the identity.
    pub fn max_generator(&self) -> u8 {
        self.0.iter().map(|l| l.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Self {
        FreeWord(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn multiply(&self, other: &FreeWord) -> FreeWord {
        let mut out = self.clone();
        out.mul_right_in_place(&other.0);
        out
    }

    /// `self <- self * other`. Returns the length of the prefix of the old
    /// word that survived the free reduction.
    pub fn mul_right_in_place(&mut self, other: &[Letter]) -> usize {
        let mut untouched = self.0.len();
        for &l in other {
            if self.0.last() == Some(&-l) {
                self.0.pop();
                untouched = untouched.min(self.0.len());
            } else {
                self.0.push(l);
            }
        }
        untouched
    }

    fn push_reducing(&mut self, l: Letter) {
        if self.0.last() == Some(&-l) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn pow(&self, exponent: i64) -> FreeWord {
        let base = if exponent < 0 { self.inverse() } else { self.clone() };
        let mut out = FreeWord::identity();
        for _ in 0..exponent.unsigned_abs() {
            out.mul_right_in_place(&base.0);
        }
        out
    }

    pub fn common_prefix_len(&self, other: &[Letter]) -> usize {
        common_prefix_len(&self.0, other)
    }

    pub fn starts_with(&self, prefix: &[Letter]) -> bool {
        self.0.starts_with(prefix)
    }

    /// The initial segment of length `len` (clamped to the word length).
    pub fn truncated(&self, len: usize) -> FreeWord {
        FreeWord(self.0[..len.min(self.0.len())].to_vec())
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str(notation::IDENTITY);
        }
        for &l in &self.0 {
            write!(f, "{}", notation::letter_char(l))?;
        }
        Ok(())
    }
}

pub(crate) fn is_reduced(letters: &[Letter]) -> bool {
    letters.iter().all(|&l| l != 0) && letters.windows(2).all(|w| w[0] != -w[1])
}

pub(crate) fn common_prefix_len(a: &[Letter], b: &[Letter]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}
