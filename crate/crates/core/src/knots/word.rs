//! Words in a free group.

use std::fmt;
use std::ops::Mul;

use rand::Rng;

use super::KnotError;

/// Freely reduced word. Letter `+k` is generator `k - 1`, letter `-k` its
/// inverse.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<i32>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// Builds and freely reduces. Panics on a zero letter.
    pub fn new(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut out: Vec<i32> = Vec::new();
        for l in letters {
            assert!(l != 0, "zero is not a letter");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// The single-letter word for generator `index` (0-based).
    pub fn generator(index: usize) -> Self {
        Word(vec![index as i32 + 1])
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn prefix(&self, n: usize) -> Self {
        Word(self.0[..n].to_vec())
    }

    /// Largest generator index used plus one.
    pub fn generator_bound(&self) -> usize {
        self.0.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }

    /// Parses the letter encoding: the `k`-th name is generator `k`, its
    /// uppercase form the inverse.
    pub fn parse(text: &str, names: &[String]) -> Result<Self, KnotError> {
        let mut letters = Vec::new();
        for ch in text.chars().filter(|c| !c.is_whitespace()) {
            let lower = ch.to_ascii_lowercase().to_string();
            let Some(k) = names.iter().position(|n| *n == lower) else {
                return Err(KnotError::Parse(format!("unknown generator {ch:?} in {text:?}")));
            };
            let sign = if ch.is_ascii_uppercase() { -1 } else { 1 };
            letters.push(sign * (k as i32 + 1));
        }
        Ok(Word::new(letters))
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        self.0
            .iter()
            .map(|&l| {
                let name = &names[l.unsigned_abs() as usize - 1];
                if l > 0 {
                    name.clone()
                } else {
                    name.to_ascii_uppercase()
                }
            })
            .collect()
    }

    /// Uniformly random reduced word of length `len` over `generators`
    /// generators.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, generators: usize, len: usize) -> Self {
        let mut letters: Vec<i32> = Vec::with_capacity(len);
        while letters.len() < len {
            let g = rng.gen_range(1..=generators as i32);
            let l = if rng.gen_bool(0.5) { g } else { -g };
            if letters.last() != Some(&-l) {
                letters.push(l);
            }
        }
        Word(letters)
    }
}

impl Mul for &Word {
    type Output = Word;
    fn mul(self, rhs: &Word) -> Word {
        Word::new(self.0.iter().chain(&rhs.0).copied())
    }
}

impl Mul for Word {
    type Output = Word;
    fn mul(self, rhs: Word) -> Word {
        &self * &rhs
    }
}

/// Prints with the default alphabet `a, b, c, ...`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.0 {
            let c = (b'a' + (l.unsigned_abs() - 1) as u8) as char;
            write!(f, "{}", if l > 0 { c } else { c.to_ascii_uppercase() })?;
        }
        Ok(())
    }
}
