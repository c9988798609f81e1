//! Finite group presentations with an abelianization onto `<t>`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{KnotError, Word};

/// Finitely presented group with a distinguished meridian and the exponent
/// of `t` assigned to each generator.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupPresentation {
    generators: Vec<String>,
    relators: Vec<Word>,
    meridian: Word,
    abelianization: Vec<i64>,
}

impl GroupPresentation {
    /// Validates that every relator abelianizes to 0 and the meridian to 1.
    pub fn new(
        generators: Vec<String>,
        relators: Vec<Word>,
        meridian: Word,
        abelianization: Vec<i64>,
    ) -> Result<Self, KnotError> {
        if generators.is_empty() {
            return Err(KnotError::InvalidPresentation("no generators".into()));
        }
        if abelianization.len() != generators.len() {
            return Err(KnotError::InvalidPresentation("abelianization must cover every generator".into()));
        }
        for (i, name) in generators.iter().enumerate() {
            let ok = name.len() == 1 && name.chars().all(|c| c.is_ascii_lowercase());
            if !ok {
                return Err(KnotError::InvalidPresentation(format!(
                    "generator name {name:?} must be a single lowercase letter"
                )));
            }
            if generators[..i].contains(name) {
                return Err(KnotError::InvalidPresentation(format!("duplicate generator {name:?}")));
            }
        }
        let n = generators.len();
        if relators.iter().chain([&meridian]).any(|w| w.generator_bound() > n) {
            return Err(KnotError::InvalidPresentation("word uses an undeclared generator".into()));
        }
        let p = GroupPresentation { generators, relators, meridian, abelianization };
        for r in &p.relators {
            if p.abelianize(r) != 0 {
                return Err(KnotError::InvalidPresentation(format!(
                    "relator {} does not abelianize to 0",
                    r.to_string_with(&p.generators)
                )));
            }
        }
        if p.abelianize(&p.meridian) != 1 {
            return Err(KnotError::InvalidPresentation("meridian must abelianize to t".into()));
        }
        Ok(p)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn meridian(&self) -> &Word {
        &self.meridian
    }

    /// Exponent of `t` for each generator.
    pub fn abelianization(&self) -> &[i64] {
        &self.abelianization
    }

    pub fn deficiency(&self) -> i64 {
        self.generators.len() as i64 - self.relators.len() as i64
    }

    /// Image of `w` in `<t>`, as an exponent.
    pub fn abelianize(&self, w: &Word) -> i64 {
        w.letters()
            .iter()
            .map(|&l| l.signum() as i64 * self.abelianization[l.unsigned_abs() as usize - 1])
            .sum()
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, KnotError> {
        Word::parse(text, &self.generators)
    }

    pub fn format_word(&self, w: &Word) -> String {
        w.to_string_with(&self.generators)
    }

    /// Reads the JSON presentation format; returns the presentation and the
    /// declared genus.
    pub fn from_json(text: &str) -> Result<(Self, u32), KnotError> {
        let file: PresentationFile =
            serde_json::from_str(text).map_err(|e| KnotError::Parse(format!("presentation file: {e}")))?;
        file.into_presentation()
    }

    pub fn to_file(&self, genus: u32) -> PresentationFile {
        PresentationFile {
            generators: self.generators.clone(),
            relators: self.relators.iter().map(|r| self.format_word(r)).collect(),
            meridian: self.format_word(&self.meridian),
            abelianization: self.generators.iter().cloned().zip(self.abelianization.iter().copied()).collect(),
            genus: Some(genus),
        }
    }
}

/// On-disk presentation description.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub generators: Vec<String>,
    pub relators: Vec<String>,
    pub meridian: String,
    pub abelianization: BTreeMap<String, i64>,
    #[serde(default)]
    pub genus: Option<u32>,
}

impl PresentationFile {
    pub fn into_presentation(self) -> Result<(GroupPresentation, u32), KnotError> {
        let genus = match self.genus {
            Some(g) if g >= 1 => g,
            Some(_) => return Err(KnotError::InvalidPresentation("genus must be positive".into())),
            None => return Err(KnotError::MissingGenus),
        };
        let relators = self
            .relators
            .iter()
            .map(|r| Word::parse(r, &self.generators))
            .collect::<Result<Vec<_>, _>>()?;
        let meridian = Word::parse(&self.meridian, &self.generators)?;
        if let Some(extra) = self.abelianization.keys().find(|k| !self.generators.contains(k)) {
            return Err(KnotError::InvalidPresentation(format!("abelianization names unknown generator {extra:?}")));
        }
        let ab = self
            .generators
            .iter()
            .map(|g| {
                self.abelianization
                    .get(g)
                    .copied()
                    .ok_or_else(|| KnotError::InvalidPresentation(format!("no abelianization for {g:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok((GroupPresentation::new(self.generators, relators, meridian, ab)?, genus))
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Schubert normal form `<a, b | w a = b w>` of the 2-bridge knot `p/q`,
/// where `w = a^e1 b^e2 a^e3 ...` and `e_i = (-1)^floor(i q' / p)` for
/// `i = 1..p-1`. The word needs an odd `q'`, so an even `q` is replaced by
/// `q + p`, which names the same knot.
pub fn two_bridge_presentation(p: u64, q: u64) -> Result<GroupPresentation, KnotError> {
    if p % 2 == 0 || q == 0 || q >= p || gcd(p, q) != 1 {
        return Err(KnotError::InvalidFraction { p, q });
    }
    let q_odd = if q % 2 == 1 { q } else { q + p };
    let w = Word::new((1..p).map(|i| {
        let sign = if (i * q_odd / p) % 2 == 0 { 1 } else { -1 };
        let gen = if i % 2 == 1 { 1 } else { 2 };
        sign * gen
    }));
    let a = Word::generator(0);
    let b = Word::generator(1);
    let relator = &(&(&w * &a) * &w.inverse()) * &b.inverse();
    GroupPresentation::new(vec!["a".into(), "b".into()], vec![relator], a, vec![1, 1])
}
