use super::presentation::Presentation;
use super::word::Word;
use super::MapError;

/// Decides equality with the identity for words over some presentation.
pub trait WordProblem {
    fn is_identity(&self, w: &Word) -> bool;
}

/// The free group: a reduced word is trivial iff it is empty.
#[derive(Clone, Copy, Debug, Default)]
pub struct FreeWordProblem;

impl WordProblem for FreeWordProblem {
    fn is_identity(&self, w: &Word) -> bool {
        w.is_identity()
    }
}

/// Free abelian group: trivial iff every exponent sum vanishes.
#[derive(Clone, Copy, Debug)]
pub struct FreeAbelianWordProblem {
    pub rank: usize,
}

impl WordProblem for FreeAbelianWordProblem {
    fn is_identity(&self, w: &Word) -> bool {
        w.exponent_sums(self.rank).iter().all(|&e| e == 0)
    }
}

/// Word problem for `direct_power(base, copies)` given a solver for `base`.
///
/// Generators of distinct copies commute, so a word is trivial iff each
/// coordinate projection is trivial in the base.
pub struct DirectPowerWordProblem<'a> {
    pub base: &'a dyn WordProblem,
    pub base_generators: usize,
    pub copies: usize,
}

impl DirectPowerWordProblem<'_> {
    pub fn coordinates(&self, w: &Word) -> Vec<Word> {
        project_coordinates(w, self.base_generators, self.copies)
    }
}

impl WordProblem for DirectPowerWordProblem<'_> {
    fn is_identity(&self, w: &Word) -> bool {
        self.coordinates(w).iter().all(|c| self.base.is_identity(c))
    }
}

/// Split a word over `direct_power(base, copies)` into its coordinate words.
pub fn project_coordinates(w: &Word, base_generators: usize, copies: usize) -> Vec<Word> {
    (0..copies)
        .map(|j| {
            w.letters()
                .iter()
                .filter(|l| base_generators > 0 && l.generator / base_generators == j)
                .map(|l| super::Letter::new(l.generator % base_generators, l.inverse))
                .collect()
        })
        .collect()
}

/// A homomorphism between presented groups given by generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMap {
    source: Presentation,
    target: Presentation,
    images: Vec<Word>,
}

impl GeneratorMap {
    pub fn new(
        source: Presentation,
        target: Presentation,
        images: Vec<Word>,
    ) -> Result<Self, MapError> {
        if images.len() != source.num_generators() {
            return Err(MapError::ImageCount {
                expected: source.num_generators(),
                found: images.len(),
            });
        }
        for (i, w) in images.iter().enumerate() {
            if w.max_generator().is_some_and(|g| g >= target.num_generators()) {
                return Err(MapError::ImageOutOfRange { generator: i });
            }
        }
        Ok(GeneratorMap {
            source,
            target,
            images,
        })
    }

    pub fn source(&self) -> &Presentation {
        &self.source
    }

    pub fn target(&self) -> &Presentation {
        &self.target
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn apply(&self, w: &Word) -> Word {
        Word::new(w.letters().iter().flat_map(|l| {
            let image = &self.images[l.generator];
            let letters: Vec<_> = if l.inverse {
                image.inverse().letters().to_vec()
            } else {
                image.letters().to_vec()
            };
            letters
        }))
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &GeneratorMap) -> Result<GeneratorMap, MapError> {
        if self.target.num_generators() != other.source.num_generators() {
            return Err(MapError::ImageCount {
                expected: other.source.num_generators(),
                found: self.target.num_generators(),
            });
        }
        GeneratorMap::new(
            self.source.clone(),
            other.target.clone(),
            self.images.iter().map(|w| other.apply(w)).collect(),
        )
    }

    /// Check that every source relator maps to the identity in the target.
    pub fn verify(&self, target_solver: &dyn WordProblem) -> Result<(), MapError> {
        for (index, r) in self.source.relators().iter().enumerate() {
            if !target_solver.is_identity(&self.apply(r)) {
                return Err(MapError::RelatorNotPreserved {
                    index,
                    relator: self.source.word_to_string(r),
                });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_word_maps_to_empty() {
        let p: Presentation = "< a, b | >".parse().unwrap();
        let m = GeneratorMap::new(
            p.clone(),
            p.clone(),
            vec![Word::from_signed(&[1, 2]), Word::from_signed(&[-2])],
        )
        .unwrap();
        assert!(m.apply(&Word::identity()).is_identity());
        assert_eq!(
            m.apply(&Word::from_signed(&[1, 2])),
            Word::from_signed(&[1])
        );
    }

    #[test]
    fn image_count_checked() {
        let p: Presentation = "< a, b | >".parse().unwrap();
        assert!(GeneratorMap::new(p.clone(), p, vec![Word::identity()]).is_err());
    }

    #[test]
    fn verification_against_direct_power() {
        let c2: Presentation = "< a | a^2 >".parse().unwrap();
        let target = c2.direct_power(3);
        let diag = GeneratorMap::new(c2.clone(), target, vec![Word::from_signed(&[1, 2])]).unwrap();
        struct C2;
        impl WordProblem for C2 {
            fn is_identity(&self, w: &Word) -> bool {
                w.exponent_sums(1)[0] % 2 == 0
            }
        }
        let solver = DirectPowerWordProblem {
            base: &C2,
            base_generators: 1,
            copies: 3,
        };
        diag.verify(&solver).unwrap();

        let bad = GeneratorMap::new(
            c2.clone(),
            "< x | >".parse().unwrap(),
            vec![Word::generator(0)],
        )
        .unwrap();
        assert!(matches!(
            bad.verify(&FreeWordProblem),
            Err(MapError::RelatorNotPreserved { index: 0, .. })
        ));
    }

    #[test]
    fn coordinates_split_by_copy() {
        let w = Word::from_signed(&[1, 3, -2, 4]);
        let cs = project_coordinates(&w, 2, 2);
        assert_eq!(cs[0], Word::from_signed(&[1, -2]));
        assert_eq!(cs[1], Word::from_signed(&[1, 2]));
    }
}
