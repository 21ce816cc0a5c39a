//! Finite groups realized from closed coset tables over the trivial subgroup.
//!
//! Elements are numbered `0..order` in breadth-first order over the positive
//! generators (so each element's word is its shortlex-least positive word),
//! with `0` the identity. Every element carries its shortlex word; products are
//! computed by tracing words through the right regular action.

use std::sync::OnceLock;

use thiserror::Error;

use crate::todd_coxeter::{CosetTable, TableError};
use crate::words::{GeneratorMap, Letter, Presentation, Word, WordProblem};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum FiniteError {
    #[error("realize needs a table over the trivial subgroup")]
    NontrivialSubgroup,
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("relator {index} (`{relator}`) does not map to the identity")]
    NotHomomorphism { index: usize, relator: String },
    #[error("expected {expected} generator images, found {found}")]
    ImageCount { expected: usize, found: usize },
    #[error("element {0} is out of range")]
    ElementOutOfRange(usize),
}

#[derive(Clone, Debug)]
pub struct ConjugacyClasses {
    class_of: Vec<u32>,
    representatives: Vec<usize>,
    sizes: Vec<usize>,
}

impl ConjugacyClasses {
    /// Least element index in each class, in increasing order.
    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x] as usize
    }

    pub fn representative(&self, x: usize) -> usize {
        self.representatives[self.class_of(x)]
    }
}

/// A subgroup stored as a sorted element list plus the generators it was
/// built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    elements: Vec<usize>,
    generators: Vec<usize>,
}

impl Subgroup {
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements == [0]
    }

    pub fn intersection(&self, other: &Subgroup) -> Vec<usize> {
        self.elements
            .iter()
            .copied()
            .filter(|&x| other.contains(x))
            .collect()
    }
}

#[derive(Debug)]
pub struct FiniteGroup {
    presentation: Presentation,
    width: usize,
    action: Vec<u32>,
    words: Vec<Word>,
    inverses: Vec<u32>,
    classes: OnceLock<ConjugacyClasses>,
}

impl Clone for FiniteGroup {
    fn clone(&self) -> Self {
        FiniteGroup {
            presentation: self.presentation.clone(),
            width: self.width,
            action: self.action.clone(),
            words: self.words.clone(),
            inverses: self.inverses.clone(),
            classes: OnceLock::new(),
        }
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.presentation == other.presentation && self.action == other.action
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// The cyclic group `⟨a | aⁿ⟩`, `n ≥ 1`.
    pub fn cyclic(n: usize) -> FiniteGroup {
        assert!(n >= 1, "cyclic group order must be positive");
        let p = Presentation::new(["a"], [Word::generator(0).pow(n as i64)])
            .expect("valid name");
        let table = crate::todd_coxeter::enumerate(&p, &[], Default::default())
            .expect("cyclic groups enumerate");
        FiniteGroup::realize(&table).expect("trivial subgroup")
    }

    /// Realize the group from a closed table over the trivial subgroup.
    ///
    /// Any nonempty subgroup generator word is rejected, even one that is
    /// trivial in the group.
    pub fn realize(table: &CosetTable) -> Result<FiniteGroup, FiniteError> {
        if table.subgroup().iter().any(|w| !w.is_identity()) {
            return Err(FiniteError::NontrivialSubgroup);
        }
        if !table.is_closed() {
            return Err(TableError::NotClosed.into());
        }
        let n = table.num_cosets();
        let width = table.width();
        let ngens = width / 2;
        // number elements breadth-first over positive generators
        let mut order = Vec::with_capacity(n);
        let mut index = vec![usize::MAX; n];
        let mut words = Vec::with_capacity(n);
        order.push(0);
        index[0] = 0;
        words.push(Word::identity());
        let mut head = 0;
        while head < order.len() {
            let c = order[head];
            for g in 0..ngens {
                let d = table.entry(c, Letter::pos(g)).expect("closed");
                if index[d] == usize::MAX {
                    index[d] = order.len();
                    order.push(d);
                    words.push(&words[head] * &Word::generator(g));
                }
            }
            head += 1;
        }
        if order.len() != n {
            return Err(TableError::NotTransitive.into());
        }
        let mut action = Vec::with_capacity(n * width);
        for &c in &order {
            for col in 0..width {
                let d = table.entry(c, Letter::from_column(col)).expect("closed");
                action.push(index[d] as u32);
            }
        }
        let mut g = FiniteGroup {
            presentation: table.presentation().clone(),
            width,
            action,
            words,
            inverses: Vec::new(),
            classes: OnceLock::new(),
        };
        g.inverses = (0..n)
            .map(|x| g.trace(0, &g.words[x].inverse()) as u32)
            .collect();
        Ok(g)
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn order(&self) -> usize {
        self.words.len()
    }

    pub fn num_generators(&self) -> usize {
        self.width / 2
    }

    /// Shortlex word of element `x`.
    pub fn word(&self, x: usize) -> &Word {
        &self.words[x]
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    /// Element reached from `x` by the letter `l`.
    pub fn step(&self, x: usize, l: Letter) -> usize {
        self.action[x * self.width + l.column()] as usize
    }

    fn trace(&self, x: usize, w: &Word) -> usize {
        w.letters().iter().fold(x, |y, &l| self.step(y, l))
    }

    pub fn element_of(&self, w: &Word) -> usize {
        self.trace(0, w)
    }

    pub fn generator(&self, i: usize) -> usize {
        self.step(0, Letter::pos(i))
    }

    pub fn generator_elements(&self) -> Vec<usize> {
        (0..self.num_generators()).map(|i| self.generator(i)).collect()
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.trace(x, &self.words[y])
    }

    pub fn inverse(&self, x: usize) -> usize {
        self.inverses[x] as usize
    }

    /// `g⁻¹ x g`
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inverse(g), x), g)
    }

    /// `x⁻¹ y⁻¹ x y`
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        let a = self.mul(self.inverse(x), self.inverse(y));
        self.mul(self.mul(a, x), y)
    }

    pub fn pow(&self, x: usize, mut e: u64) -> usize {
        let mut acc = 0;
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Least `n > 0` with `xⁿ = e`.
    pub fn element_order(&self, x: usize) -> u64 {
        let mut n = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            n += 1;
        }
        n
    }

    fn closure(&self, members: &mut [bool], elements: &mut Vec<usize>, gens: &[usize]) {
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !members[y] {
                    members[y] = true;
                    elements.push(y);
                }
            }
        }
    }

    fn make_subgroup(&self, mut elements: Vec<usize>, generators: Vec<usize>) -> Subgroup {
        elements.sort_unstable();
        assert_eq!(
            self.order() % elements.len(),
            0,
            "subgroup order must divide the group order"
        );
        Subgroup {
            elements,
            generators,
        }
    }

    pub fn subgroup_generated(&self, gens: &[usize]) -> Subgroup {
        let mut members = vec![false; self.order()];
        members[0] = true;
        let mut elements = vec![0];
        self.closure(&mut members, &mut elements, gens);
        self.make_subgroup(elements, gens.to_vec())
    }

    /// Smallest normal subgroup containing `gens`.
    pub fn normal_closure(&self, gens: &[usize]) -> Subgroup {
        let mut members = vec![false; self.order()];
        members[0] = true;
        let mut elements = vec![0];
        let mut generators: Vec<usize> = gens.to_vec();
        self.closure(&mut members, &mut elements, &generators);
        let group_gens = self.generator_elements();
        let mut checked = 0;
        while checked < generators.len() {
            let s = generators[checked];
            checked += 1;
            for &g in &group_gens {
                let c = self.conjugate(s, g);
                if !members[c] {
                    generators.push(c);
                    // restart the closure over all current elements with the new generator set
                    let mut queue = elements.clone();
                    members[c] = true;
                    queue.push(c);
                    elements.push(c);
                    let mut head = 0;
                    while head < queue.len() {
                        let x = queue[head];
                        head += 1;
                        for &h in &generators {
                            let y = self.mul(x, h);
                            if !members[y] {
                                members[y] = true;
                                elements.push(y);
                                queue.push(y);
                            }
                        }
                    }
                }
            }
        }
        self.make_subgroup(elements, generators)
    }

    pub fn whole(&self) -> Subgroup {
        self.make_subgroup((0..self.order()).collect(), self.generator_elements())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        self.make_subgroup(vec![0], vec![])
    }

    /// Subgroup from an explicit element set, checked for closure.
    pub fn subgroup_from_elements(&self, elements: Vec<usize>) -> Option<Subgroup> {
        let s = self.subgroup_generated(&elements);
        (s.order() == {
            let mut e = elements.clone();
            e.push(0);
            e.sort_unstable();
            e.dedup();
            e.len()
        })
        .then_some(s)
    }

    pub fn center(&self) -> Subgroup {
        let gens = self.generator_elements();
        let elements: Vec<usize> = (0..self.order())
            .filter(|&x| gens.iter().all(|&g| self.mul(x, g) == self.mul(g, x)))
            .collect();
        let generators = elements.clone();
        self.make_subgroup(elements, generators)
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let gens = self.generator_elements();
        let mut comms = Vec::new();
        for (i, &a) in gens.iter().enumerate() {
            for &b in &gens[i + 1..] {
                let c = self.commutator(a, b);
                if c != 0 && !comms.contains(&c) {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }

    pub fn conjugacy_classes(&self) -> &ConjugacyClasses {
        self.classes.get_or_init(|| {
            let n = self.order();
            let gens = self.generator_elements();
            let mut class_of = vec![u32::MAX; n];
            let mut representatives = Vec::new();
            let mut sizes = Vec::new();
            for x in 0..n {
                if class_of[x] != u32::MAX {
                    continue;
                }
                let id = representatives.len() as u32;
                representatives.push(x);
                class_of[x] = id;
                let mut orbit = vec![x];
                let mut head = 0;
                while head < orbit.len() {
                    let y = orbit[head];
                    head += 1;
                    for &g in &gens {
                        let z = self.conjugate(y, g);
                        if class_of[z] == u32::MAX {
                            class_of[z] = id;
                            orbit.push(z);
                        }
                    }
                }
                sizes.push(orbit.len());
            }
            ConjugacyClasses {
                class_of,
                representatives,
                sizes,
            }
        })
    }

    pub fn is_central(&self, s: &Subgroup) -> bool {
        let gens = self.generator_elements();
        s.elements()
            .iter()
            .all(|&x| gens.iter().all(|&g| self.mul(x, g) == self.mul(g, x)))
    }

    pub fn is_normal(&self, s: &Subgroup) -> bool {
        let gens = self.generator_elements();
        s.elements()
            .iter()
            .all(|&x| gens.iter().all(|&g| s.contains(self.conjugate(x, g))))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generator_elements();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }
}

impl WordProblem for FiniteGroup {
    fn is_identity(&self, w: &Word) -> bool {
        self.element_of(w) == 0
    }
}

/// A homomorphism between finite groups given by images of the source
/// generators, verified on the source relators.
#[derive(Clone, Debug)]
pub struct FiniteHom<'a> {
    source: &'a FiniteGroup,
    target: &'a FiniteGroup,
    images: Vec<usize>,
}

impl<'a> FiniteHom<'a> {
    pub fn new(
        source: &'a FiniteGroup,
        target: &'a FiniteGroup,
        images: Vec<usize>,
    ) -> Result<Self, FiniteError> {
        if images.len() != source.num_generators() {
            return Err(FiniteError::ImageCount {
                expected: source.num_generators(),
                found: images.len(),
            });
        }
        if let Some(&bad) = images.iter().find(|&&x| x >= target.order()) {
            return Err(FiniteError::ElementOutOfRange(bad));
        }
        let hom = FiniteHom {
            source,
            target,
            images,
        };
        for (index, r) in source.presentation().relators().iter().enumerate() {
            if hom.eval(r) != 0 {
                return Err(FiniteError::NotHomomorphism {
                    index,
                    relator: source.presentation().word_to_string(r),
                });
            }
        }
        Ok(hom)
    }

    /// Build from a presentation-level map whose target presents `target`.
    pub fn from_generator_map(
        map: &GeneratorMap,
        source: &'a FiniteGroup,
        target: &'a FiniteGroup,
    ) -> Result<Self, FiniteError> {
        if map.images().len() != source.num_generators() {
            return Err(FiniteError::ImageCount {
                expected: source.num_generators(),
                found: map.images().len(),
            });
        }
        let images = map.images().iter().map(|w| target.element_of(w)).collect();
        FiniteHom::new(source, target, images)
    }

    pub fn source(&self) -> &FiniteGroup {
        self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of a source word.
    pub fn eval(&self, w: &Word) -> usize {
        w.letters().iter().fold(0, |acc, l| {
            let g = self.images[l.generator];
            let g = if l.inverse { self.target.inverse(g) } else { g };
            self.target.mul(acc, g)
        })
    }

    pub fn apply(&self, x: usize) -> usize {
        self.eval(self.source.word(x))
    }

    /// `(kernel, image)`; `|kernel|·|image| = |source|`.
    pub fn kernel_and_image(&self) -> (Subgroup, Subgroup) {
        let kernel: Vec<usize> = (0..self.source.order())
            .filter(|&x| self.apply(x) == 0)
            .collect();
        let kernel_gens = kernel.clone();
        let kernel = self.source.make_subgroup(kernel, kernel_gens);
        let image = self.target.subgroup_generated(&self.images);
        debug_assert_eq!(kernel.order() * image.order(), self.source.order());
        (kernel, image)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::todd_coxeter::{enumerate, EnumerationLimits};
    use crate::words::parse_presentation;

    fn group(s: &str) -> FiniteGroup {
        let p = parse_presentation(s).unwrap();
        FiniteGroup::realize(&enumerate(&p, &[], EnumerationLimits::default()).unwrap()).unwrap()
    }

    #[test]
    fn cyclic_three_words() {
        let g = group("< a | a^3 >");
        assert_eq!(g.order(), 3);
        let words: Vec<String> = g.words().iter().map(|w| g.presentation().word_to_string(w)).collect();
        assert_eq!(words, vec!["1", "a", "a^2"]);
    }

    #[test]
    fn klein_four() {
        let g = group("< a, b | a^2, b^2, [a,b] >");
        assert_eq!(g.order(), 4);
        assert_eq!(g.center().order(), 4);
        assert!(g.is_abelian());
    }

    #[test]
    fn subgroup_of_cyclic_four() {
        let g = group("< g | g^4 >");
        let g2 = g.element_of(&Word::generator(0).pow(2));
        assert_eq!(g.subgroup_generated(&[g2]).order(), 2);
        assert!(g.normal_closure(&[0]).is_trivial());
    }

    #[test]
    fn symmetric_three_classes() {
        let g = group("< a, b | a^2, b^3, (a*b)^2 >");
        assert_eq!(g.order(), 6);
        let mut sizes = g.conjugacy_classes().sizes().to_vec();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(g.derived_subgroup().order(), 3);
        assert!(g.center().is_trivial());
    }

    #[test]
    fn identity_and_projection_homs() {
        let c4 = group("< g | g^4 >");
        let c2 = group("< h | h^2 >");
        let id = FiniteHom::new(&c4, &c4, vec![c4.generator(0)]).unwrap();
        let (k, i) = id.kernel_and_image();
        assert!(k.is_trivial());
        assert_eq!(i.order(), 4);
        let proj = FiniteHom::new(&c4, &c2, vec![c2.generator(0)]).unwrap();
        let (k, i) = proj.kernel_and_image();
        assert_eq!(k.order(), 2);
        assert_eq!(i.order(), 2);
        assert!(c4.is_normal(&k));
    }

    #[test]
    fn bad_hom_rejected() {
        let c3 = group("< g | g^3 >");
        let c2 = group("< h | h^2 >");
        assert!(matches!(
            FiniteHom::new(&c3, &c2, vec![c2.generator(0)]),
            Err(FiniteError::NotHomomorphism { .. })
        ));
    }

    #[test]
    fn realize_rejects_nontrivial_subgroup() {
        let p = parse_presentation("< a | a^4 >").unwrap();
        let t = enumerate(&p, &[Word::generator(0).pow(2)], EnumerationLimits::default()).unwrap();
        assert_eq!(FiniteGroup::realize(&t), Err(FiniteError::NontrivialSubgroup));
    }
}
