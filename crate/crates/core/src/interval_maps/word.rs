use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::PLMap;
use crate::error::{Error, Result};

/// Largest number of words a single level may hold before enumeration fails.
pub const DEFAULT_WORD_BUDGET: usize = 1 << 22;

/// A finite string of branch symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(symbols: Vec<usize>) -> Self {
        Self(symbols)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn symbols(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `a w`: the symbol placed in front.
    pub fn prepended(&self, a: usize) -> Self {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(a);
        v.extend_from_slice(&self.0);
        Self(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        let wide = self.0.iter().any(|&a| a > 9);
        for (i, a) in self.0.iter().enumerate() {
            if wide && i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// Total order on words: shorter words first; among words of equal length the
/// last differing symbol decides, reversed when the common suffix after it has
/// negative sign.
pub fn word_compare(map: &PLMap, w: &Word, v: &Word) -> Ordering {
    match w.len().cmp(&v.len()) {
        Ordering::Equal => {}
        other => return other,
    }
    let (a, b) = (w.symbols(), v.symbols());
    let Some(k) = (0..a.len()).rev().find(|&i| a[i] != b[i]) else {
        return Ordering::Equal;
    };
    let suffix_sign: i8 = a[k + 1..].iter().map(|&s| map.sign(s)).product();
    let ord = a[k].cmp(&b[k]);
    if suffix_sign > 0 {
        ord
    } else {
        ord.reverse()
    }
}

/// Admissible words of length `n`, sorted by [`word_compare`].
pub fn words_of_length(map: &PLMap, n: usize, budget: usize) -> Result<Vec<Word>> {
    let mut level: Vec<(Word, (f64, f64))> = vec![(Word::empty(), (0.0, 1.0))];
    for depth in 1..=n {
        let mut next = Vec::with_capacity(level.len() * map.alphabet_size());
        for (w, cyl) in &level {
            for a in 0..map.alphabet_size() {
                if let Some(c) = map.pull_back(a, *cyl) {
                    if next.len() == budget {
                        return Err(Error::Resource(format!(
                            "more than {budget} admissible words at length {depth}"
                        )));
                    }
                    next.push((w.prepended(a), c));
                }
            }
        }
        level = next;
    }
    let mut words: Vec<Word> = level.into_iter().map(|(w, _)| w).collect();
    words.sort_by(|x, y| word_compare(map, x, y));
    Ok(words)
}
