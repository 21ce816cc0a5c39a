use std::collections::HashSet;
use std::fmt;

use super::word::{Letter, Word};
use super::PresentationError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorSymbol {
    pub name: String,
    pub index: usize,
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A finite group presentation `< generators | relators >`.
///
/// Relators are stored freely reduced, in input order, with trivial and
/// duplicate relators dropped.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    generators: Vec<GeneratorSymbol>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        relators: impl IntoIterator<Item = Word>,
    ) -> Result<Self, PresentationError> {
        let mut generators = Vec::new();
        let mut seen = HashSet::new();
        for (index, name) in names.into_iter().enumerate() {
            let name = name.into();
            if !is_identifier(&name) {
                return Err(PresentationError::InvalidName(name));
            }
            if !seen.insert(name.clone()) {
                return Err(PresentationError::DuplicateGenerator(name));
            }
            generators.push(GeneratorSymbol { name, index });
        }
        let mut presentation = Presentation {
            generators,
            relators: Vec::new(),
        };
        for r in relators {
            presentation.push_relator(r)?;
        }
        Ok(presentation)
    }

    /// The presentation with no generators and no relators.
    pub fn trivial() -> Self {
        Presentation {
            generators: Vec::new(),
            relators: Vec::new(),
        }
    }

    /// Free group on the given generator names.
    pub fn free<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
    ) -> Result<Self, PresentationError> {
        Presentation::new(names, std::iter::empty())
    }

    /// Append a relator; returns `false` if it was trivial or already present.
    pub fn push_relator(&mut self, relator: Word) -> Result<bool, PresentationError> {
        if let Some(g) = relator.max_generator() {
            if g >= self.generators.len() {
                return Err(PresentationError::GeneratorOutOfRange {
                    index: g,
                    count: self.generators.len(),
                });
            }
        }
        if relator.is_identity() || self.relators.contains(&relator) {
            return Ok(false);
        }
        self.relators.push(relator);
        Ok(true)
    }

    pub fn generators(&self) -> &[GeneratorSymbol] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn names(&self) -> Vec<&str> {
        self.generators.iter().map(|g| g.name.as_str()).collect()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn word_to_string(&self, w: &Word) -> String {
        w.display(&self.names()).to_string()
    }

    /// Parse a word (a relator expression) over this presentation's generators.
    pub fn parse_word(&self, text: &str) -> Result<Word, PresentationError> {
        super::parse::parse_word(text, self)
    }

    /// Relator exponent-sum matrix, one row per relator.
    pub fn relation_matrix(&self) -> super::IntegerMatrix {
        let n = self.num_generators();
        let rows: Vec<Vec<i64>> = self.relators.iter().map(|r| r.exponent_sums(n)).collect();
        super::IntegerMatrix::from_rows_i64(rows.len(), n, &rows)
    }

    /// Disjoint union of generators and relators. Name clashes are resolved
    /// by appending underscores to the right-hand names.
    pub fn free_product(&self, other: &Presentation) -> Presentation {
        let offset = self.num_generators();
        let mut taken: HashSet<String> = self.generators.iter().map(|g| g.name.clone()).collect();
        let mut names: Vec<String> = self.generators.iter().map(|g| g.name.clone()).collect();
        for g in &other.generators {
            names.push(fresh_name(&g.name, &mut taken));
        }
        let relators = self
            .relators
            .iter()
            .cloned()
            .chain(other.relators.iter().map(|r| r.map_generators(|i| i + offset)));
        Presentation::new(names, relators).expect("free product of valid presentations")
    }

    /// `k` copies of `self`, copy `j` (1-based) naming generator `g` as `g_j`,
    /// together with commutators between generators of distinct copies.
    pub fn direct_power(&self, k: usize) -> Presentation {
        let n = self.num_generators();
        let mut taken = HashSet::new();
        let mut names = Vec::with_capacity(n * k);
        for j in 1..=k {
            for g in &self.generators {
                names.push(fresh_name(&format!("{}_{}", g.name, j), &mut taken));
            }
        }
        let mut relators = Vec::new();
        for j in 0..k {
            relators.extend(self.relators.iter().map(|r| r.map_generators(|i| i + j * n)));
        }
        for j1 in 0..k {
            for j2 in j1 + 1..k {
                for g in 0..n {
                    for h in 0..n {
                        let x = Word::generator(g + j1 * n);
                        let y = Word::generator(h + j2 * n);
                        relators.push(x.commutator(&y));
                    }
                }
            }
        }
        Presentation::new(names, relators).expect("direct power of a valid presentation")
    }

    /// Generator index of copy `copy` (0-based) of base generator `g` in
    /// `self.direct_power(k)`.
    pub fn power_generator(&self, copy: usize, g: usize) -> usize {
        copy * self.num_generators() + g
    }
}

fn fresh_name(base: &str, taken: &mut HashSet<String>) -> String {
    let mut name = base.to_string();
    while taken.contains(&name) {
        name.push('_');
    }
    taken.insert(name.clone());
    name
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.names();
        f.write_str("<")?;
        if !names.is_empty() {
            write!(f, " {}", names.join(", "))?;
        }
        f.write_str(" |")?;
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|r| r.display(&names).to_string())
            .collect();
        if !rels.is_empty() {
            write!(f, " {}", rels.join(", "))?;
        }
        f.write_str(" >")
    }
}

impl std::str::FromStr for Presentation {
    type Err = PresentationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        super::parse::parse_presentation(s)
    }
}

/// Copy of `w` with every letter moved by `offset` generator slots.
pub fn shift_word(w: &Word, offset: usize) -> Word {
    Word::new(
        w.letters()
            .iter()
            .map(|l| Letter::new(l.generator + offset, l.inverse)),
    )
}
