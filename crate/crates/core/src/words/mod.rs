//! Free-group words, presentations, generator maps and integer linear algebra.

mod map;
mod parse;
mod presentation;
mod smith;
mod word;

use thiserror::Error;

pub use map::{
    project_coordinates, DirectPowerWordProblem, FreeAbelianWordProblem, FreeWordProblem,
    GeneratorMap, WordProblem,
};
pub use parse::{parse_presentation, parse_word, parse_word_list};
pub use presentation::{shift_word, GeneratorSymbol, Presentation};
pub use smith::{smith_normal_form, IntegerMatrix, SmithForm};
pub use word::{free_reduce, Letter, Word, WordDisplay};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum PresentationError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("undeclared generator `{name}` at line {line}, column {column}")]
    UndeclaredGenerator {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("invalid generator name `{0}`")]
    InvalidName(String),
    #[error("relator uses generator {index} but only {count} are declared")]
    GeneratorOutOfRange { index: usize, count: usize },
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum MapError {
    #[error("expected {expected} generator images, found {found}")]
    ImageCount { expected: usize, found: usize },
    #[error("image of generator {generator} uses an undeclared target generator")]
    ImageOutOfRange { generator: usize },
    #[error("relator {index} (`{relator}`) does not map to the identity")]
    RelatorNotPreserved { index: usize, relator: String },
}

/// Abelian invariants of the presented group: Smith form of the relator
/// exponent-sum matrix.
pub fn abelianization(p: &Presentation) -> SmithForm {
    smith_normal_form(&p.relation_matrix())
}

/// `G = [G, G]`, i.e. trivial abelianization.
pub fn is_perfect(p: &Presentation) -> bool {
    abelianization(p).is_trivial()
}

/// Whether `w` lies in the derived subgroup of the presented group: its
/// exponent-sum vector is in the relator lattice.
pub fn in_derived_subgroup(p: &Presentation, w: &Word) -> bool {
    let v: Vec<num_bigint::BigInt> = w
        .exponent_sums(p.num_generators())
        .into_iter()
        .map(Into::into)
        .collect();
    p.relation_matrix().row_lattice_contains(&v)
}
