//! Groups with decidable equality via canonical forms.
//!
//! Carriers: finite groups (element indices), free abelian `ℤⁿ` (exponent
//! vectors), free groups `F_k` (reduced words) and the Baumslag–Solitar
//! groups `BS(1,n)` (normal forms `t^-p a^q t^r`).

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};
use rand::Rng;

use crate::finite::FiniteGroup;
use crate::words::{Letter, Presentation, Word};

pub trait Group {
    type Element: Clone + Eq + Ord + Hash + Debug;

    fn identity(&self) -> Self::Element;
    fn mul(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn inverse(&self, a: &Self::Element) -> Self::Element;

    /// Canonical representative of the conjugacy class of `x`, when the
    /// carrier supports conjugacy canonicalization.
    fn conjugacy_representative(&self, _x: &Self::Element) -> Option<Self::Element> {
        None
    }

    fn format_element(&self, x: &Self::Element) -> String {
        format!("{x:?}")
    }

    fn is_identity(&self, x: &Self::Element) -> bool {
        *x == self.identity()
    }

    fn pow(&self, x: &Self::Element, e: u64) -> Self::Element {
        let mut acc = self.identity();
        for _ in 0..e {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// `x⁻¹ y⁻¹ x y`
    fn commutator(&self, x: &Self::Element, y: &Self::Element) -> Self::Element {
        let a = self.mul(&self.inverse(x), &self.inverse(y));
        self.mul(&self.mul(&a, x), y)
    }

    /// `g⁻¹ x g`
    fn conjugate(&self, x: &Self::Element, g: &Self::Element) -> Self::Element {
        self.mul(&self.mul(&self.inverse(g), x), g)
    }
}

/// A group together with a presentation and normal-form words.
pub trait PresentedGroup: Group {
    fn presentation(&self) -> &Presentation;
    fn generator(&self, i: usize) -> Self::Element;
    /// A word evaluating to `x`.
    fn normal_word(&self, x: &Self::Element) -> Word;

    fn eval(&self, w: &Word) -> Self::Element {
        w.letters().iter().fold(self.identity(), |acc, l| {
            let g = self.generator(l.generator);
            let g = if l.inverse { self.inverse(&g) } else { g };
            self.mul(&acc, &g)
        })
    }
}

impl Group for FiniteGroup {
    type Element = usize;

    fn identity(&self) -> usize {
        0
    }

    fn mul(&self, a: &usize, b: &usize) -> usize {
        FiniteGroup::mul(self, *a, *b)
    }

    fn inverse(&self, a: &usize) -> usize {
        FiniteGroup::inverse(self, *a)
    }

    fn conjugacy_representative(&self, x: &usize) -> Option<usize> {
        Some(self.conjugacy_classes().representative(*x))
    }

    fn format_element(&self, x: &usize) -> String {
        self.presentation().word_to_string(self.word(*x))
    }

    fn pow(&self, x: &usize, e: u64) -> usize {
        FiniteGroup::pow(self, *x, e)
    }
}

impl PresentedGroup for FiniteGroup {
    fn presentation(&self) -> &Presentation {
        FiniteGroup::presentation(self)
    }

    fn generator(&self, i: usize) -> usize {
        FiniteGroup::generator(self, i)
    }

    fn normal_word(&self, x: &usize) -> Word {
        self.word(*x).clone()
    }

    fn eval(&self, w: &Word) -> usize {
        self.element_of(w)
    }
}

fn generator_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// Free abelian group `ℤⁿ` on `x1, …, xn`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeAbelian {
    rank: usize,
    presentation: Presentation,
}

impl FreeAbelian {
    pub fn new(rank: usize) -> Self {
        let mut relators = Vec::new();
        for i in 0..rank {
            for j in i + 1..rank {
                relators.push(Word::generator(i).commutator(&Word::generator(j)));
            }
        }
        FreeAbelian {
            rank,
            presentation: Presentation::new(generator_names("x", rank), relators)
                .expect("valid names"),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl Group for FreeAbelian {
    type Element = Vec<i64>;

    fn identity(&self) -> Vec<i64> {
        vec![0; self.rank]
    }

    fn mul(&self, a: &Vec<i64>, b: &Vec<i64>) -> Vec<i64> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn inverse(&self, a: &Vec<i64>) -> Vec<i64> {
        a.iter().map(|x| -x).collect()
    }

    fn conjugacy_representative(&self, x: &Vec<i64>) -> Option<Vec<i64>> {
        Some(x.clone())
    }

    fn format_element(&self, x: &Vec<i64>) -> String {
        self.presentation.word_to_string(&self.normal_word(x))
    }
}

impl PresentedGroup for FreeAbelian {
    fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    fn generator(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.rank];
        v[i] = 1;
        v
    }

    fn normal_word(&self, x: &Vec<i64>) -> Word {
        x.iter()
            .enumerate()
            .fold(Word::identity(), |w, (i, &e)| &w * &Word::generator(i).pow(e))
    }

    fn eval(&self, w: &Word) -> Vec<i64> {
        w.exponent_sums(self.rank)
    }
}

/// Free group `F_k` on `x1, …, xk`; elements are reduced words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeGroup {
    rank: usize,
    presentation: Presentation,
}

impl FreeGroup {
    pub fn new(rank: usize) -> Self {
        FreeGroup {
            rank,
            presentation: Presentation::free(generator_names("x", rank)).expect("valid names"),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl Group for FreeGroup {
    type Element = Word;

    fn identity(&self) -> Word {
        Word::identity()
    }

    fn mul(&self, a: &Word, b: &Word) -> Word {
        a * b
    }

    fn inverse(&self, a: &Word) -> Word {
        a.inverse()
    }

    /// Least rotation (in letter order) of the cyclically reduced core.
    fn conjugacy_representative(&self, x: &Word) -> Option<Word> {
        let (core, _) = x.cyclically_reduce();
        (0..core.len().max(1))
            .map(|i| core.rotated(i))
            .min_by(|a, b| a.letters().cmp(b.letters()))
    }

    fn format_element(&self, x: &Word) -> String {
        self.presentation.word_to_string(x)
    }
}

impl PresentedGroup for FreeGroup {
    fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    fn generator(&self, i: usize) -> Word {
        Word::generator(i)
    }

    fn normal_word(&self, x: &Word) -> Word {
        x.clone()
    }

    fn eval(&self, w: &Word) -> Word {
        w.clone()
    }
}

/// Normal form `t^-p · a^q · t^r` in `BS(1,n) = ⟨a, t | t a t⁻¹ = aⁿ⟩`, with
/// `p, r ≥ 0` and `n ∤ q` whenever `p > 0` and `r > 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BsElement {
    pub p: u64,
    pub q: BigInt,
    pub r: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaumslagSolitar {
    n: i64,
    presentation: Presentation,
}

impl BaumslagSolitar {
    /// `n` must be nonzero.
    pub fn new(n: i64) -> Self {
        assert!(n != 0, "BS(1, 0) is not supported");
        let a = Word::generator(0);
        let t = Word::generator(1);
        // t a t⁻¹ a⁻ⁿ
        let relator = &(&(&t * &a) * &t.inverse()) * &a.pow(-n);
        BaumslagSolitar {
            n,
            presentation: Presentation::new(["a", "t"], [relator]).expect("valid names"),
        }
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    fn normalize(&self, mut p: u64, mut q: BigInt, mut r: u64) -> BsElement {
        let n = BigInt::from(self.n);
        while p > 0 && r > 0 && q.is_multiple_of(&n) {
            q /= &n;
            p -= 1;
            r -= 1;
        }
        BsElement { p, q, r }
    }

    pub fn a(&self) -> BsElement {
        self.normalize(0, BigInt::one(), 0)
    }

    pub fn t(&self) -> BsElement {
        self.normalize(0, BigInt::zero(), 1)
    }
}

impl Group for BaumslagSolitar {
    type Element = BsElement;

    fn identity(&self) -> BsElement {
        BsElement {
            p: 0,
            q: BigInt::zero(),
            r: 0,
        }
    }

    fn mul(&self, x: &BsElement, y: &BsElement) -> BsElement {
        let n = BigInt::from(self.n);
        // t^-p a^q t^r · t^-p' a^q' t^r'
        if x.r >= y.p {
            // t^(r-p') a^q' = a^(q' n^(r-p')) t^(r-p')
            let k = x.r - y.p;
            let q = &x.q + &y.q * Pow::pow(&n, k);
            self.normalize(x.p, q, k + y.r)
        } else {
            // a^q t^-(p'-r) = t^-(p'-r) a^(q n^(p'-r))
            let k = y.p - x.r;
            let q = &x.q * Pow::pow(&n, k) + &y.q;
            self.normalize(x.p + k, q, y.r)
        }
    }

    fn inverse(&self, x: &BsElement) -> BsElement {
        self.normalize(x.r, -x.q.clone(), x.p)
    }

    fn format_element(&self, x: &BsElement) -> String {
        format!("t^-{}*a^{}*t^{}", x.p, x.q, x.r)
    }
}

impl PresentedGroup for BaumslagSolitar {
    fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    fn generator(&self, i: usize) -> BsElement {
        match i {
            0 => self.a(),
            1 => self.t(),
            _ => panic!("BS(1,n) has two generators"),
        }
    }

    fn normal_word(&self, x: &BsElement) -> Word {
        let q: i64 = (&x.q).try_into().expect("exponent fits in i64");
        let t = Word::generator(1);
        let a = Word::generator(0);
        &(&t.pow(-(x.p as i64)) * &a.pow(q)) * &t.pow(x.r as i64)
    }
}

/// Random letters, `0..=max_len` of them, freely reduced afterwards.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, num_generators: usize, max_len: usize) -> Word {
    if num_generators == 0 {
        return Word::identity();
    }
    let len = rng.gen_range(0..=max_len);
    Word::new((0..len).map(|_| {
        Letter::new(rng.gen_range(0..num_generators), rng.gen_bool(0.5))
    }))
}

/// Evaluate a random word of length at most `max_len`.
pub fn random_element<G: PresentedGroup, R: Rng + ?Sized>(
    g: &G,
    rng: &mut R,
    max_len: usize,
) -> G::Element {
    g.eval(&random_word(rng, g.presentation().num_generators(), max_len))
}
