//! The Sidki double `X(G) = ⟨G, G^ψ | [g, g^ψ], g ∈ G⟩`, its canonical maps
//! `ρ, μρ, ωρ, ι, ι^ψ`, the subgroups `L(G)`, `D(G)`, `W(G) = ker ρ`, and
//! Rocco's group `V(G)`.
//!
//! Generators of a double are the base generators followed by their ψ-copies
//! (base generator `i` ↔ double generator `n + i`).

use std::collections::{BTreeMap, HashSet};

use thiserror::Error;

use crate::finite::{FiniteError, FiniteGroup, FiniteHom, Subgroup};
use crate::groups::PresentedGroup;
use crate::todd_coxeter::{enumerate, CosetTable, EnumerationError, EnumerationLimits};
use crate::words::{
    in_derived_subgroup, is_perfect, project_coordinates, shift_word, DirectPowerWordProblem,
    GeneratorMap, Letter, MapError, Presentation, Word, WordProblem,
};

/// Suffix marking ψ-copy generator names.
pub const PSI_SUFFIX: &str = "_psi";

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SidkiError {
    #[error("the full relator schedule needs an enumeration of the base group's elements")]
    MissingElements,
    #[error("operation needs a double built with the full relator schedule")]
    PartialDouble,
    #[error("base group is not perfect; the stem-extension audit does not apply")]
    NotPerfect,
    #[error("group does not match the double's presentation")]
    PresentationMismatch,
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Finite(#[from] FiniteError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelatorSchedule {
    /// One relator `[w, w^ψ]` per nonidentity element `w` of a finite base.
    Full,
    /// Commutators for the declared generators only. The result is an
    /// under-approximation of the relations of `X(G)`.
    GeneratorOnly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalMaps {
    /// `X(G) → G×G×G`, `g ↦ (g,g,1)`, `g^ψ ↦ (1,g,g)`.
    pub rho: GeneratorMap,
    /// Middle coordinate of `ρ`: `X(G) → G`.
    pub mu_rho: GeneratorMap,
    /// Outer coordinates of `ρ`: `X(G) → G×G`.
    pub omega_rho: GeneratorMap,
    pub iota: GeneratorMap,
    pub iota_psi: GeneratorMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleData {
    base: Presentation,
    double: Presentation,
    schedule: RelatorSchedule,
    commutator_relators: usize,
    maps: CanonicalMaps,
}

impl DoubleData {
    pub fn base(&self) -> &Presentation {
        &self.base
    }

    pub fn double(&self) -> &Presentation {
        &self.double
    }

    pub fn schedule(&self) -> RelatorSchedule {
        self.schedule
    }

    /// Set when the relator schedule is generator-only; claims about `X(G)`
    /// itself are then unsupported.
    pub fn is_partial(&self) -> bool {
        self.schedule == RelatorSchedule::GeneratorOnly
    }

    pub fn maps(&self) -> &CanonicalMaps {
        &self.maps
    }

    /// Number of relators in the commutator section of the schedule (after
    /// deduplication against earlier relators).
    pub fn commutator_relators(&self) -> usize {
        self.commutator_relators
    }

    pub fn base_generators(&self) -> usize {
        self.base.num_generators()
    }

    /// `(g, g^ψ)` double-generator index pairs.
    pub fn psi_pairing(&self) -> Vec<(usize, usize)> {
        let n = self.base_generators();
        (0..n).map(|i| (i, n + i)).collect()
    }

    /// `w ↦ w^ψ` for a base word.
    pub fn psi(&self, w: &Word) -> Word {
        shift_word(w, self.base_generators())
    }

    /// ψ-copy subgroup generators `ι^ψ(G)`, as double words.
    pub fn psi_subgroup(&self) -> Vec<Word> {
        let n = self.base_generators();
        (0..n).map(|i| Word::generator(n + i)).collect()
    }

    /// Verify every canonical map on its source relators, and the symbolic
    /// identities `ρ∘ι = (g ↦ (g,g,1))`, `ρ∘ι^ψ = (g ↦ (1,g,g))`,
    /// `μρ∘ι = id`.
    pub fn verify_maps(&self, base_solver: &dyn WordProblem) -> Result<(), SidkiError> {
        let n = self.base_generators();
        let g3 = DirectPowerWordProblem {
            base: base_solver,
            base_generators: n,
            copies: 3,
        };
        let g2 = DirectPowerWordProblem {
            base: base_solver,
            base_generators: n,
            copies: 2,
        };
        self.maps.rho.verify(&g3)?;
        self.maps.mu_rho.verify(base_solver)?;
        self.maps.omega_rho.verify(&g2)?;
        for map in [&self.maps.iota, &self.maps.iota_psi] {
            for (index, r) in self.base.relators().iter().enumerate() {
                if !self.double.relators().contains(&map.apply(r)) {
                    return Err(MapError::RelatorNotPreserved {
                        index,
                        relator: self.base.word_to_string(r),
                    }
                    .into());
                }
            }
        }
        self.check_retraction()?;
        Ok(())
    }

    fn check_retraction(&self) -> Result<(), SidkiError> {
        let n = self.base_generators();
        let rho_iota = self.maps.iota.then(&self.maps.rho)?;
        let rho_iota_psi = self.maps.iota_psi.then(&self.maps.rho)?;
        let mu_iota = self.maps.iota.then(&self.maps.mu_rho)?;
        for i in 0..n {
            let left = &Word::generator(i) * &Word::generator(n + i);
            let right = &Word::generator(n + i) * &Word::generator(2 * n + i);
            let fail = |index| MapError::RelatorNotPreserved {
                index,
                relator: self.base.names()[i].to_string(),
            };
            if rho_iota.images()[i] != left || rho_iota_psi.images()[i] != right {
                return Err(fail(i).into());
            }
            if mu_iota.images()[i] != Word::generator(i) {
                return Err(fail(i).into());
            }
        }
        Ok(())
    }
}

fn psi_names(base: &Presentation) -> Vec<String> {
    let mut taken: HashSet<String> = base.names().iter().map(|s| s.to_string()).collect();
    let mut names: Vec<String> = base.names().iter().map(|s| s.to_string()).collect();
    for g in base.names() {
        let mut name = format!("{g}{PSI_SUFFIX}");
        while taken.contains(&name) {
            name.push('_');
        }
        taken.insert(name.clone());
        names.push(name);
    }
    names
}

fn generator_map(
    source: &Presentation,
    target: &Presentation,
    images: Vec<Word>,
) -> GeneratorMap {
    GeneratorMap::new(source.clone(), target.clone(), images).expect("image count by construction")
}

/// Build the double of `base`.
///
/// With [`RelatorSchedule::Full`], `elements` must list words for every
/// element of the (finite) base group; each nonidentity element `w`
/// contributes the relator `[w, w^ψ]`.
pub fn double_presentation(
    base: &Presentation,
    schedule: RelatorSchedule,
    elements: Option<&[Word]>,
) -> Result<DoubleData, SidkiError> {
    let n = base.num_generators();
    let names = psi_names(base);
    let mut relators: Vec<Word> = base.relators().to_vec();
    relators.extend(base.relators().iter().map(|r| shift_word(r, n)));
    let mut double = Presentation::new(names, relators).expect("valid double names");
    let schedule_words: Vec<Word> = match schedule {
        RelatorSchedule::Full => elements.ok_or(SidkiError::MissingElements)?.to_vec(),
        RelatorSchedule::GeneratorOnly => (0..n).map(Word::generator).collect(),
    };
    let mut commutator_relators = 0;
    for w in &schedule_words {
        if w.max_generator().is_some_and(|g| g >= n) {
            return Err(SidkiError::PresentationMismatch);
        }
        if w.is_identity() {
            continue;
        }
        let relator = w.commutator(&shift_word(w, n));
        if double.push_relator(relator).expect("generators in range") {
            commutator_relators += 1;
        }
    }

    let g3 = base.direct_power(3);
    let g2 = base.direct_power(2);
    let gen = |copy: usize, i: usize| Word::generator(copy * n + i);
    let rho: Vec<Word> = (0..n)
        .map(|i| &gen(0, i) * &gen(1, i))
        .chain((0..n).map(|i| &gen(1, i) * &gen(2, i)))
        .collect();
    let mu: Vec<Word> = (0..2 * n).map(|i| Word::generator(i % n)).collect();
    let omega: Vec<Word> = (0..n)
        .map(|i| gen(0, i))
        .chain((0..n).map(|i| gen(1, i)))
        .collect();
    let maps = CanonicalMaps {
        rho: generator_map(&double, &g3, rho),
        mu_rho: generator_map(&double, base, mu),
        omega_rho: generator_map(&double, &g2, omega),
        iota: generator_map(base, &double, (0..n).map(Word::generator).collect()),
        iota_psi: generator_map(base, &double, (0..n).map(|i| Word::generator(n + i)).collect()),
    };
    let data = DoubleData {
        base: base.clone(),
        double,
        schedule,
        commutator_relators,
        maps,
    };
    data.check_retraction()?;
    Ok(data)
}

/// Convenience: the full double of a realized finite group.
pub fn full_double(base: &FiniteGroup) -> Result<DoubleData, SidkiError> {
    double_presentation(base.presentation(), RelatorSchedule::Full, Some(base.words()))
}

/// The double-level map `X(f): X(G) → X(K)` induced by a generator map
/// `f: G → K`: `g ↦ f(g)`, `g^ψ ↦ f(g)^ψ`.
pub fn induced_double_map(
    source: &DoubleData,
    target: &DoubleData,
    f: &GeneratorMap,
) -> Result<GeneratorMap, SidkiError> {
    if f.source().num_generators() != source.base_generators()
        || f.target().num_generators() != target.base_generators()
    {
        return Err(SidkiError::PresentationMismatch);
    }
    let images = f
        .images()
        .iter()
        .cloned()
        .chain(f.images().iter().map(|w| target.psi(w)))
        .collect();
    Ok(GeneratorMap::new(
        source.double().clone(),
        target.double().clone(),
        images,
    )?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoccoPresentation {
    pub presentation: Presentation,
    /// `|G|³ · 2` before deduplication and removal of trivial relators.
    pub candidate_relators: usize,
}

/// Rocco's `V(G)`: relators of `G` and `G^ψ` plus, for every `g, h, k ∈ G`
/// and `ε ∈ {1, ψ}`, `[g, h^ψ]^(k^ε) · [g^k, (h^k)^ψ]⁻¹` with `x^y = y⁻¹xy`.
pub fn rocco_presentation(
    base: &Presentation,
    elements: Option<&[Word]>,
) -> Result<RoccoPresentation, SidkiError> {
    let elements = elements.ok_or(SidkiError::MissingElements)?;
    let n = base.num_generators();
    let names = psi_names(base);
    let mut relators: Vec<Word> = base.relators().to_vec();
    relators.extend(base.relators().iter().map(|r| shift_word(r, n)));
    let mut presentation = Presentation::new(names, relators).expect("valid names");
    let psi = |w: &Word| shift_word(w, n);
    let mut candidates = 0;
    for g in elements {
        for h in elements {
            let lhs_base = g.commutator(&psi(h));
            for k in elements {
                let gk = g.conjugate_by(k);
                let hk = h.conjugate_by(k);
                let rhs = gk.commutator(&psi(&hk));
                for k_eps in [k.clone(), psi(k)] {
                    candidates += 1;
                    let relator = &lhs_base.conjugate_by(&k_eps) * &rhs.inverse();
                    presentation
                        .push_relator(relator)
                        .expect("generators in range");
                }
            }
        }
    }
    Ok(RoccoPresentation {
        presentation,
        candidate_relators: candidates,
    })
}

/// The subgroups `L(G)`, `D(G)`, `W(G)` of a realized finite double.
#[derive(Clone, Debug)]
pub struct SubgroupFamilies {
    pub l_generators: Vec<usize>,
    pub d_generators: Vec<usize>,
    pub l: Subgroup,
    pub d: Subgroup,
    pub w: Subgroup,
    /// `W = D ∩ L`, compared as element sets.
    pub w_equals_d_cap_l: bool,
}

/// `L = ⟨w⁻¹w^ψ⟩`, `D = ⟨[x, y^ψ]⟩` over all elements, and `W = ker ρ`
/// computed as the kernel of a verified finite homomorphism into `G³`.
pub fn subgroup_families(
    d: &DoubleData,
    base: &FiniteGroup,
    x: &FiniteGroup,
    g3: &FiniteGroup,
) -> Result<SubgroupFamilies, SidkiError> {
    if d.is_partial() {
        return Err(SidkiError::PartialDouble);
    }
    if x.presentation() != d.double() || g3.presentation() != d.maps().rho.target() {
        return Err(SidkiError::PresentationMismatch);
    }
    let elements = base.words();
    let mut l_generators = Vec::new();
    for w in elements {
        let e = x.element_of(&(&w.inverse() * &d.psi(w)));
        if !l_generators.contains(&e) {
            l_generators.push(e);
        }
    }
    let mut d_generators = Vec::new();
    for u in elements {
        for v in elements {
            let e = x.element_of(&u.commutator(&d.psi(v)));
            if !d_generators.contains(&e) {
                d_generators.push(e);
            }
        }
    }
    let l = x.subgroup_generated(&l_generators);
    let dd = x.subgroup_generated(&d_generators);
    let rho = FiniteHom::from_generator_map(&d.maps().rho, x, g3)?;
    let (w, _) = rho.kernel_and_image();
    let w_equals_d_cap_l = w.elements() == dd.intersection(&l).as_slice();
    Ok(SubgroupFamilies {
        l_generators,
        d_generators,
        l,
        d: dd,
        w,
        w_equals_d_cap_l,
    })
}

/// Element orders found in `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionProbe {
    /// order ↦ number of elements of that order
    pub orders: BTreeMap<u64, usize>,
    pub max_order: u64,
    pub has_order_two: bool,
}

impl TorsionProbe {
    pub fn from_orders(orders: impl IntoIterator<Item = u64>) -> Self {
        let mut map = BTreeMap::new();
        for o in orders {
            *map.entry(o).or_insert(0) += 1;
        }
        let max_order = map.keys().next_back().copied().unwrap_or(1);
        let has_order_two = map.contains_key(&2);
        TorsionProbe {
            orders: map,
            max_order,
            has_order_two,
        }
    }
}

pub fn torsion_probe(x: &FiniteGroup, w: &Subgroup) -> TorsionProbe {
    TorsionProbe::from_orders(w.elements().iter().map(|&e| x.element_order(e)))
}

/// Triples of base elements, densely indexed as `a·N² + b·N + c`.
struct TripleSpace<'a> {
    base: &'a FiniteGroup,
    n: usize,
}

impl TripleSpace<'_> {
    fn size(&self) -> usize {
        self.n * self.n * self.n
    }

    fn split(&self, t: usize) -> [usize; 3] {
        [t / (self.n * self.n), (t / self.n) % self.n, t % self.n]
    }

    fn join(&self, [a, b, c]: [usize; 3]) -> usize {
        (a * self.n + b) * self.n + c
    }

    /// Right multiplication by `ρ(letter)` for a double letter.
    fn step(&self, t: usize, l: Letter, base_generators: usize) -> usize {
        let [mut a, mut b, mut c] = self.split(t);
        if l.generator < base_generators {
            a = self.base.step(a, l);
            b = self.base.step(b, l);
        } else {
            let bl = Letter::new(l.generator - base_generators, l.inverse);
            b = self.base.step(b, bl);
            c = self.base.step(c, bl);
        }
        self.join([a, b, c])
    }
}

/// `W(G)` analysed through a coset table of `X(G)` over `ι^ψ(G)` and the
/// permutation image of `ρ` in `G³`, without a regular representation of
/// `X(G)`.
///
/// Since `ρ` is injective on `ι^ψ(G)`, an element `x` is determined by the
/// pair `(coset of x, ρ(x))`; `X` acts on such pairs on the right, which is
/// how products, orders and commutation are evaluated.
#[derive(Clone, Debug)]
pub struct CosetAnalysis {
    /// `[X : ι^ψ(G)]`
    pub index: usize,
    /// `|ρ(X)|`, from a breadth-first search of the image in `G³`.
    pub image_order: usize,
    /// `index · |G|`
    pub x_order: usize,
    /// Words (over the double's generators) for the elements of `W`,
    /// identity first.
    pub w_elements: Vec<Word>,
    pub w_orders: Vec<u64>,
    pub w_central: bool,
    pub w_abelian: bool,
    pub w_in_derived: bool,
    /// `|W| · |ρ(X)| = index · |G|`
    pub counts_consistent: bool,
}

impl CosetAnalysis {
    pub fn w_order(&self) -> usize {
        self.w_elements.len()
    }

    pub fn torsion_probe(&self) -> TorsionProbe {
        TorsionProbe::from_orders(self.w_orders.iter().copied())
    }
}

struct PairModel<'a> {
    table: &'a CosetTable,
    triples: TripleSpace<'a>,
    n: usize,
}

impl PairModel<'_> {
    fn step(&self, (c, t): (usize, usize), l: Letter) -> (usize, usize) {
        (
            self.table.entry(c, l).expect("closed table"),
            self.triples.step(t, l, self.n),
        )
    }

    fn trace(&self, s: (usize, usize), w: &Word) -> (usize, usize) {
        w.letters().iter().fold(s, |s, &l| self.step(s, l))
    }
}

/// Enumerate `X(G)` over `ι^ψ(G)` and compute `W(G)` from it.
pub fn analyze_via_cosets(
    d: &DoubleData,
    base: &FiniteGroup,
    limits: EnumerationLimits,
) -> Result<(CosetTable, CosetAnalysis), SidkiError> {
    if d.is_partial() {
        return Err(SidkiError::PartialDouble);
    }
    if base.presentation() != d.base() {
        return Err(SidkiError::PresentationMismatch);
    }
    let table = enumerate(d.double(), &d.psi_subgroup(), limits)?;
    let analysis = analyze_table(d, base, &table)?;
    Ok((table, analysis))
}

/// [`analyze_via_cosets`] on an existing closed table over `ι^ψ(G)`.
pub fn analyze_table(
    d: &DoubleData,
    base: &FiniteGroup,
    table: &CosetTable,
) -> Result<CosetAnalysis, SidkiError> {
    if table.presentation() != d.double() || table.subgroup() != d.psi_subgroup().as_slice() {
        return Err(SidkiError::PresentationMismatch);
    }
    table.audit().map_err(FiniteError::from)?;
    let n = d.base_generators();
    let width = 2 * d.double().num_generators();
    let triples = TripleSpace {
        base,
        n: base.order(),
    };
    let model = PairModel {
        table,
        triples,
        n,
    };

    // Breadth-first search of ρ(X) ⊆ G³ with a Schreier tree.
    let size = model.triples.size();
    let mut parent: Vec<(u32, u8)> = vec![(u32::MAX, 0); size];
    let mut coset_of: Vec<u32> = vec![u32::MAX; size];
    let mut order = vec![0usize];
    coset_of[0] = 0;
    let mut head = 0;
    while head < order.len() {
        let t = order[head];
        head += 1;
        for col in 0..width {
            let l = Letter::from_column(col);
            let (c2, t2) = model.step((coset_of[t] as usize, t), l);
            if coset_of[t2] == u32::MAX {
                coset_of[t2] = c2 as u32;
                parent[t2] = (t as u32, col as u8);
                order.push(t2);
            }
        }
    }
    let image_order = order.len();
    let tree_word = |mut t: usize| {
        let mut letters = Vec::new();
        while t != 0 {
            let (p, col) = parent[t];
            letters.push(Letter::from_column(col as usize));
            t = p as usize;
        }
        letters.reverse();
        Word::new(letters)
    };

    // Schreier generators x_t · l · x_{t·l}⁻¹ lie in W, and an element of W
    // is determined by its coset since its ρ-coordinate is trivial. W is
    // closed after each new generator; the search stops once
    // |W| · |ρ(X)| = |X|.
    let x_order = table.index() * base.order();
    let mut w_gens: Vec<Word> = Vec::new();
    let mut w_elements = vec![Word::identity()];
    let mut w_cosets = vec![0usize];
    let mut members: HashSet<usize> = HashSet::from([0]);
    'search: for &t in &order {
        for col in 0..width {
            if w_elements.len() * image_order >= x_order {
                break 'search;
            }
            let l = Letter::from_column(col);
            let (c2, t2) = model.step((coset_of[t] as usize, t), l);
            if c2 == coset_of[t2] as usize {
                continue;
            }
            let back = tree_word(t2).inverse();
            let c = table.trace(c2, &back).expect("closed table");
            if members.contains(&c) {
                continue;
            }
            let w = &(&tree_word(t) * &Word::new([l])) * &back;
            debug_assert_eq!(model.trace((0, 0), &w), (c, 0));
            w_gens.push(w);
            // re-close: every element times every generator
            let mut h = 0;
            while h < w_elements.len() {
                let s = w_cosets[h];
                for g in &w_gens {
                    let (c, t) = model.trace((s, 0), g);
                    debug_assert_eq!(t, 0);
                    if members.insert(c) {
                        let product = &w_elements[h] * g;
                        w_elements.push(product);
                        w_cosets.push(c);
                    }
                }
                h += 1;
            }
        }
    }

    let identity_state = (0usize, 0usize);
    let w_orders: Vec<u64> = w_elements
        .iter()
        .map(|w| {
            let mut s = model.trace(identity_state, w);
            let mut k = 1;
            while s != identity_state {
                s = model.trace(s, w);
                k += 1;
            }
            k
        })
        .collect();
    // central: s(l·w) = s(w)·l for every generator letter l
    let w_central = w_elements.iter().all(|w| {
        (0..width).all(|col| {
            let l = Letter::from_column(col);
            let lw = model.trace(model.step(identity_state, l), w);
            let wl = model.step(model.trace(identity_state, w), l);
            lw == wl
        })
    });
    let w_abelian = w_elements.iter().all(|a| {
        w_elements.iter().all(|b| {
            model.trace(model.trace(identity_state, a), b)
                == model.trace(model.trace(identity_state, b), a)
        })
    });
    let w_in_derived = w_elements
        .iter()
        .all(|w| in_derived_subgroup(d.double(), w));
    let index = table.index();
    Ok(CosetAnalysis {
        index,
        image_order,
        x_order,
        counts_consistent: w_elements.len() * image_order == x_order,
        w_elements,
        w_orders,
        w_central,
        w_abelian,
        w_in_derived,
    })
}

/// How `X(G)` is available to the stem audit.
pub enum DoubleModel<'a> {
    Realized(&'a FiniteGroup),
    /// A closed table of `X(G)` over `ι^ψ(G)`.
    Cosets(&'a CosetTable),
}

/// Verdicts of the stem-extension audit for a perfect base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StemAudit {
    pub rho_surjective: bool,
    pub w_central: bool,
    pub w_in_derived: bool,
    pub x_perfect: bool,
    /// For a central extension of a perfect group: `W ≤ [X,X]` iff `X` perfect.
    pub lemma_consistent: bool,
    pub x_order: usize,
    pub image_order: usize,
    pub w_order: usize,
    pub w_element_orders: Vec<u64>,
    pub index: Option<usize>,
}

impl StemAudit {
    pub fn all_pass(&self) -> bool {
        self.rho_surjective
            && self.w_central
            && self.w_in_derived
            && self.x_perfect
            && self.lemma_consistent
    }
}

fn rho_image_order(d: &DoubleData, base: &FiniteGroup) -> usize {
    let triples = TripleSpace {
        base,
        n: base.order(),
    };
    let width = 2 * d.double().num_generators();
    let mut seen = vec![false; triples.size()];
    seen[0] = true;
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let t = queue[head];
        head += 1;
        for col in 0..width {
            let t2 = triples.step(t, Letter::from_column(col), d.base_generators());
            if !seen[t2] {
                seen[t2] = true;
                queue.push(t2);
            }
        }
    }
    queue.len()
}

/// Check that `W → X(G) → G³` is a stem extension for a perfect finite base.
pub fn stem_audit(
    d: &DoubleData,
    base: &FiniteGroup,
    model: DoubleModel<'_>,
) -> Result<StemAudit, SidkiError> {
    if !is_perfect(d.base()) {
        return Err(SidkiError::NotPerfect);
    }
    if d.is_partial() {
        return Err(SidkiError::PartialDouble);
    }
    if base.presentation() != d.base() {
        return Err(SidkiError::PresentationMismatch);
    }
    let g3_order = base.order().pow(3);
    let x_perfect = is_perfect(d.double());
    let audit = match model {
        DoubleModel::Realized(x) => {
            if x.presentation() != d.double() {
                return Err(SidkiError::PresentationMismatch);
            }
            let triples = TripleSpace {
                base,
                n: base.order(),
            };
            let n = d.base_generators();
            let rho_of = |e: usize| {
                x.word(e)
                    .letters()
                    .iter()
                    .fold(0, |t, &l| triples.step(t, l, n))
            };
            let w_elems: Vec<usize> = (0..x.order()).filter(|&e| rho_of(e) == 0).collect();
            let w = x
                .subgroup_from_elements(w_elems)
                .expect("kernel is a subgroup");
            let derived = x.derived_subgroup();
            let image_order = rho_image_order(d, base);
            StemAudit {
                rho_surjective: image_order == g3_order,
                w_central: x.is_central(&w),
                w_in_derived: w.elements().iter().all(|&e| derived.contains(e)),
                x_perfect: x_perfect && derived.order() == x.order(),
                lemma_consistent: true,
                x_order: x.order(),
                image_order,
                w_order: w.order(),
                w_element_orders: w.elements().iter().map(|&e| x.element_order(e)).collect(),
                index: None,
            }
        }
        DoubleModel::Cosets(table) => {
            let a = analyze_table(d, base, table)?;
            StemAudit {
                rho_surjective: a.image_order == g3_order,
                w_central: a.w_central,
                w_in_derived: a.w_in_derived,
                x_perfect,
                lemma_consistent: true,
                x_order: a.x_order,
                image_order: a.image_order,
                w_order: a.w_order(),
                w_element_orders: a.w_orders.clone(),
                index: Some(a.index),
            }
        }
    };
    Ok(StemAudit {
        lemma_consistent: !audit.w_central || audit.w_in_derived == audit.x_perfect,
        ..audit
    })
}

/// Evaluate `ρ` on a double word through the canonical generator map, then
/// read off the three coordinates in `G`.
pub fn rho_triple<G: PresentedGroup>(
    g: &G,
    d: &DoubleData,
    w: &Word,
) -> [G::Element; 3] {
    let image = d.maps().rho.apply(w);
    let coords = project_coordinates(&image, d.base_generators(), 3);
    [g.eval(&coords[0]), g.eval(&coords[1]), g.eval(&coords[2])]
}

/// Check, inside `G×G×G`, the two identities
/// `([u,v], e, e) = ρ(u⁻¹u^ψ · v⁻¹v^ψ · uv·((uv)⁻¹)^ψ)` and
/// `ρ([x, y^ψ]) = (e, [x,y], e)`.
pub fn identity_witness<G: PresentedGroup>(
    g: &G,
    d: &DoubleData,
    u: &G::Element,
    v: &G::Element,
    x: &G::Element,
    y: &G::Element,
) -> Result<bool, SidkiError> {
    if g.presentation() != d.base() {
        return Err(SidkiError::PresentationMismatch);
    }
    let e = g.identity();
    let (uw, vw) = (g.normal_word(u), g.normal_word(v));
    let uvw = &uw * &vw;
    let lifted = |w: &Word| &w.inverse() * &d.psi(w);
    let left_word = &(&lifted(&uw) * &lifted(&vw)) * &(&uvw * &d.psi(&uvw.inverse()));
    let left = rho_triple(g, d, &left_word);
    let left_ok = left == [g.commutator(u, v), e.clone(), e.clone()];

    let right_word = g.normal_word(x).commutator(&d.psi(&g.normal_word(y)));
    let right = rho_triple(g, d, &right_word);
    let right_ok = right == [e.clone(), g.commutator(x, y), e];
    Ok(left_ok && right_ok)
}

/// Realize a finite group from its presentation (enumeration over the
/// trivial subgroup).
pub fn realize_presentation(
    p: &Presentation,
    limits: EnumerationLimits,
) -> Result<FiniteGroup, SidkiError> {
    let table = enumerate(p, &[], limits)?;
    Ok(FiniteGroup::realize(&table)?)
}

/// Exhaustive check that the subgroup of `G³` generated by `ρ` of the
/// `L(G)` and `D(G)` generators contains `([u,v],e,e)`, `(e,[u,v],e)` and
/// `(e,e,[u,v])` for all `u, v ∈ G`.
pub fn commutator_containment(d: &DoubleData, base: &FiniteGroup) -> bool {
    let n = base.order();
    let triples = TripleSpace { base, n };
    let join = |t: [usize; 3]| triples.join(t);
    let mut gens: Vec<usize> = Vec::new();
    let words = base.words();
    for w in words {
        let t = rho_triple(base, d, &(&w.inverse() * &d.psi(w)));
        gens.push(join(t));
    }
    for x in words {
        for y in words {
            let t = rho_triple(base, d, &x.commutator(&d.psi(y)));
            gens.push(join(t));
        }
    }
    gens.sort_unstable();
    gens.dedup();
    let mul = |a: usize, b: usize| {
        let (a, b) = (triples.split(a), triples.split(b));
        join([base.mul(a[0], b[0]), base.mul(a[1], b[1]), base.mul(a[2], b[2])])
    };
    let mut seen = vec![false; triples.size()];
    seen[0] = true;
    let mut queue = vec![0];
    let mut head = 0;
    while head < queue.len() {
        let t = queue[head];
        head += 1;
        for &g in &gens {
            let t2 = mul(t, g);
            if !seen[t2] {
                seen[t2] = true;
                queue.push(t2);
            }
        }
    }
    (0..n).all(|u| {
        (0..n).all(|v| {
            let c = base.commutator(u, v);
            seen[join([c, 0, 0])] && seen[join([0, c, 0])] && seen[join([0, 0, c])]
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{parse_presentation, FreeWordProblem};

    fn group(s: &str) -> FiniteGroup {
        realize_presentation(&parse_presentation(s).unwrap(), EnumerationLimits::default())
            .unwrap()
    }

    #[test]
    fn double_of_c2() {
        let g = group("< a | a^2 >");
        let d = full_double(&g).unwrap();
        assert_eq!(
            d.double().to_string(),
            "< a, a_psi | a^2, a_psi^2, a^-1*a_psi^-1*a*a_psi >"
        );
        assert_eq!(d.commutator_relators(), 1);
        assert!(!d.is_partial());
        d.verify_maps(&g).unwrap();
    }

    #[test]
    fn double_of_klein_four_has_three_commutators() {
        let g = group("< a, b | a^2, b^2, [a,b] >");
        let d = full_double(&g).unwrap();
        assert_eq!(d.commutator_relators(), 3);
        let ab = Word::from_signed(&[1, 2]);
        assert!(d.double().relators().contains(&ab.commutator(&d.psi(&ab))));
    }

    #[test]
    fn generator_only_double_is_partial() {
        let f2 = parse_presentation("< a, b | >").unwrap();
        let d = double_presentation(&f2, RelatorSchedule::GeneratorOnly, None).unwrap();
        assert!(d.is_partial());
        assert_eq!(d.commutator_relators(), 2);
        d.verify_maps(&FreeWordProblem).unwrap();
    }

    #[test]
    fn full_schedule_needs_elements() {
        let p = parse_presentation("< a | a^2 >").unwrap();
        assert_eq!(
            double_presentation(&p, RelatorSchedule::Full, None),
            Err(SidkiError::MissingElements)
        );
    }

    #[test]
    fn rho_images_of_generators() {
        let p = parse_presentation("< a | a^2 >").unwrap();
        let d = double_presentation(&p, RelatorSchedule::GeneratorOnly, None).unwrap();
        let rho = &d.maps().rho;
        let names = rho.target().names();
        assert_eq!(rho.apply(&Word::generator(0)).display(&names).to_string(), "a_1*a_2");
        assert_eq!(rho.apply(&Word::generator(1)).display(&names).to_string(), "a_2*a_3");
        // μρ(a⁻¹ a^ψ) = e
        assert!(d.maps().mu_rho.apply(&Word::from_signed(&[-1, 2])).is_identity());
    }

    #[test]
    fn rocco_of_trivial_and_c2() {
        let trivial = rocco_presentation(&Presentation::trivial(), Some(&[Word::identity()])).unwrap();
        assert_eq!(trivial.presentation, Presentation::trivial());
        let c2 = group("< a | a^2 >");
        let v = rocco_presentation(c2.presentation(), Some(c2.words())).unwrap();
        assert_eq!(v.candidate_relators, 16);
        assert!(rocco_presentation(c2.presentation(), None).is_err());
    }

    #[test]
    fn stem_audit_refuses_non_perfect() {
        let g = group("< a | a^2 >");
        let d = full_double(&g).unwrap();
        let x = realize_presentation(d.double(), EnumerationLimits::default()).unwrap();
        assert_eq!(
            stem_audit(&d, &g, DoubleModel::Realized(&x)),
            Err(SidkiError::NotPerfect)
        );
    }

    #[test]
    fn torsion_probe_of_trivial() {
        let p = TorsionProbe::from_orders([1]);
        assert_eq!(p.max_order, 1);
        assert!(!p.has_order_two);
    }
}
