use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

/// A generator or its inverse: `(index, sign)`.
///
/// The derived order is `a < a⁻¹ < b < b⁻¹ < …`, which is the letter order
/// used for shortlex comparisons and for column layout in coset tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn pos(generator: usize) -> Self {
        Letter::new(generator, false)
    }

    pub fn neg(generator: usize) -> Self {
        Letter::new(generator, true)
    }

    pub fn inverted(self) -> Self {
        Letter::new(self.generator, !self.inverse)
    }

    /// Column index `2·generator + (1 if inverse)`.
    pub fn column(self) -> usize {
        2 * self.generator + usize::from(self.inverse)
    }

    pub fn from_column(column: usize) -> Self {
        Letter::new(column / 2, column % 2 == 1)
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

fn push_reduced(buffer: &mut Vec<Letter>, letter: Letter) {
    if buffer.last() == Some(&letter.inverted()) {
        buffer.pop();
    } else {
        buffer.push(letter);
    }
}

/// Freely reduce an arbitrary letter sequence.
pub fn free_reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Vec<Letter> {
    let iter = letters.into_iter();
    let mut buffer = Vec::with_capacity(iter.size_hint().0);
    for letter in iter {
        push_reduced(&mut buffer, letter);
    }
    buffer
}

/// A freely reduced word over signed generator indices. The empty word is the
/// identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        Word {
            letters: free_reduce(letters),
        }
    }

    /// Build from signed 1-based integers: `k` is generator `k-1`, `-k` its
    /// inverse. Zero entries are skipped.
    pub fn from_signed(codes: &[i64]) -> Self {
        Word::new(codes.iter().filter(|&&c| c != 0).map(|&c| {
            Letter::new((c.unsigned_abs() - 1) as usize, c < 0)
        }))
    }

    pub fn identity() -> Self {
        Word::default()
    }

    pub fn generator(index: usize) -> Self {
        Word {
            letters: vec![Letter::pos(index)],
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverted()).collect(),
        }
    }

    pub fn pow(&self, exponent: i64) -> Word {
        let base = if exponent < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut letters = Vec::with_capacity(base.len() * exponent.unsigned_abs() as usize);
        for _ in 0..exponent.unsigned_abs() {
            for &l in &base.letters {
                push_reduced(&mut letters, l);
            }
        }
        Word { letters }
    }

    /// `[self, other] = self⁻¹ · other⁻¹ · self · other`.
    pub fn commutator(&self, other: &Word) -> Word {
        &(&(&self.inverse() * &other.inverse()) * self) * other
    }

    /// `self^by = by⁻¹ · self · by`.
    pub fn conjugate_by(&self, by: &Word) -> Word {
        &(&by.inverse() * self) * by
    }

    /// Returns `(core, conjugator)` with `self = conjugator · core · conjugator⁻¹`
    /// and `core` cyclically reduced.
    pub fn cyclically_reduce(&self) -> (Word, Word) {
        let l = &self.letters;
        let mut i = 0;
        let n = l.len();
        while 2 * i + 1 < n && l[i] == l[n - 1 - i].inverted() {
            i += 1;
        }
        let conjugator = Word {
            letters: l[..i].to_vec(),
        };
        let core = Word {
            letters: l[i..n - i].to_vec(),
        };
        (core, conjugator)
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(&a), Some(&b)) => self.letters.len() == 1 || a != b.inverted(),
            _ => true,
        }
    }

    /// The cyclic rotation starting at letter `start`.
    pub fn rotated(&self, start: usize) -> Word {
        if self.letters.is_empty() {
            return Word::identity();
        }
        let s = start % self.letters.len();
        let mut letters = self.letters[s..].to_vec();
        letters.extend_from_slice(&self.letters[..s]);
        Word::new(letters)
    }

    /// Exponent sum of each generator, for `num_generators` generators.
    pub fn exponent_sums(&self, num_generators: usize) -> Vec<i64> {
        let mut sums = vec![0; num_generators];
        for l in &self.letters {
            sums[l.generator] += l.sign();
        }
        sums
    }

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.generator).max()
    }

    /// Rewrite every generator index through `f`.
    pub fn map_generators(&self, f: impl Fn(usize) -> usize) -> Word {
        Word::new(
            self.letters
                .iter()
                .map(|l| Letter::new(f(l.generator), l.inverse)),
        )
    }

    /// Shortlex comparison: shorter first, then lexicographic in letter order.
    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }

    /// Render with generator names, e.g. `a^2*b^-1*a`. The identity renders as `1`.
    pub fn display<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> WordDisplay<'a, S> {
        WordDisplay { word: self, names }
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.shortlex_cmp(other)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        let mut letters = self.letters.clone();
        for &l in &rhs.letters {
            push_reduced(&mut letters, l);
        }
        Word { letters }
    }
}

impl Mul for Word {
    type Output = Word;

    fn mul(self, rhs: Word) -> Word {
        &self * &rhs
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word::new(iter)
    }
}

pub struct WordDisplay<'a, S> {
    word: &'a Word,
    names: &'a [S],
}

impl<S: AsRef<str>> fmt::Display for WordDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = self.word.letters();
        if letters.is_empty() {
            return f.write_str("1");
        }
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let mut j = i;
            while j < letters.len() && letters[j] == letters[i] {
                j += 1;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            let name = self
                .names
                .get(letters[i].generator)
                .map(|s| s.as_ref().to_string())
                .unwrap_or_else(|| format!("x{}", letters[i].generator));
            let run = (j - i) as i64 * letters[i].sign();
            if run == 1 {
                f.write_str(&name)?;
            } else {
                write!(f, "{name}^{run}")?;
            }
            i = j;
        }
        Ok(())
    }
}
