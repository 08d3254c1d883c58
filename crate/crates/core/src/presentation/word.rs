use std::fmt;

use serde::Serialize;

/// Index of a generating object in its presentation.
pub type ObjectId = u32;

/// Element of the free monoid on the generating objects. The empty word is
/// the unit object.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
#[serde(transparent)]
pub struct ObjectWord(Vec<ObjectId>);

impl ObjectWord {
    pub fn unit() -> Self {
        ObjectWord(Vec::new())
    }

    pub fn new(letters: Vec<ObjectId>) -> Self {
        ObjectWord(letters)
    }

    pub fn letter(x: ObjectId) -> Self {
        ObjectWord(vec![x])
    }

    /// `x` repeated `n` times.
    pub fn power(x: ObjectId, n: usize) -> Self {
        ObjectWord(vec![x; n])
    }

    pub fn letters(&self) -> &[ObjectId] {
        &self.0
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &ObjectWord) -> ObjectWord {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        ObjectWord(v)
    }

    pub fn concat3(a: &ObjectWord, b: &ObjectWord, c: &ObjectWord) -> ObjectWord {
        let mut v = Vec::with_capacity(a.len() + b.len() + c.len());
        v.extend_from_slice(&a.0);
        v.extend_from_slice(&b.0);
        v.extend_from_slice(&c.0);
        ObjectWord(v)
    }

    pub fn slice(&self, start: usize, end: usize) -> ObjectWord {
        ObjectWord(self.0[start..end].to_vec())
    }

    /// True when `pattern` occurs in `self` starting at `at`.
    pub fn matches_at(&self, pattern: &ObjectWord, at: usize) -> bool {
        at + pattern.len() <= self.len() && self.0[at..at + pattern.len()] == pattern.0[..]
    }

    /// Renders the word with the given object names; the unit renders as `unit`.
    pub fn display<'a>(&'a self, names: &'a [String], unit: &'a str) -> WordDisplay<'a> {
        WordDisplay { word: self, names, unit }
    }

    /// All words over `alphabet` letters of length exactly `n`, in lexicographic order.
    pub fn all_of_length(alphabet: usize, n: usize) -> Vec<ObjectWord> {
        let mut out = vec![ObjectWord::unit()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (0..alphabet as ObjectId).map(move |x| {
                        let mut v = w.0.clone();
                        v.push(x);
                        ObjectWord(v)
                    })
                })
                .collect();
        }
        out
    }

    /// All words of length at most `n`, shortest first.
    pub fn all_up_to_length(alphabet: usize, n: usize) -> Vec<ObjectWord> {
        (0..=n).flat_map(|k| Self::all_of_length(alphabet, k)).collect()
    }
}

pub struct WordDisplay<'a> {
    word: &'a ObjectWord,
    names: &'a [String],
    unit: &'a str,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_unit() {
            return f.write_str(self.unit);
        }
        for (i, x) in self.word.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(&self.names[*x as usize])?;
        }
        Ok(())
    }
}

pub fn word_concat(u: &ObjectWord, v: &ObjectWord) -> ObjectWord {
    u.concat(v)
}

pub fn word_len(u: &ObjectWord) -> usize {
    u.len()
}
