//! Invariants checked on random inputs.

use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sidki::finite::{FiniteGroup, FiniteHom};
use sidki::group_ring::{hattori_stallings, random_invertible, random_ring_element, RingMatrix};
use sidki::groups::{BaumslagSolitar, FreeAbelian, FreeGroup, PresentedGroup};
use sidki::sidki::{
    double_presentation, full_double, identity_witness, induced_double_map,
    realize_presentation, RelatorSchedule,
};
use sidki::todd_coxeter::{enumerate, EnumerationLimits};
use sidki::words::{
    free_reduce, parse_presentation, DirectPowerWordProblem, FreeWordProblem, GeneratorMap,
    Letter, Presentation, Word, WordProblem,
};

fn letters(gens: usize, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(
        (0..gens, any::<bool>()).prop_map(|(g, inv)| Letter::new(g, inv)),
        0..max_len,
    )
}

fn word(gens: usize, max_len: usize) -> impl Strategy<Value = Word> {
    letters(gens, max_len).prop_map(Word::new)
}

fn limits() -> EnumerationLimits {
    EnumerationLimits::default()
}

fn finite(text: &str) -> FiniteGroup {
    realize_presentation(&parse_presentation(text).unwrap(), limits()).unwrap()
}

const CORPUS: [&str; 5] = [
    "< a, b | a^2, b^3, (a*b)^5 >",
    "< a, b | a^2, b^3, (a*b)^2 >",
    "< a, b | a^2, b^2, [a,b] >",
    "< a | a^6 >",
    "< | >",
];

proptest! {
    #[test]
    fn free_reduction_is_idempotent(ls in letters(3, 40)) {
        let once = free_reduce(ls);
        prop_assert_eq!(free_reduce(once.clone()), once.clone());
        prop_assert!(once.windows(2).all(|p| p[0] != p[1].inverted()));
    }

    #[test]
    fn inverse_is_an_involution(w in word(3, 30)) {
        prop_assert_eq!(w.inverse().inverse(), w.clone());
        prop_assert!((&w * &w.inverse()).is_identity());
    }

    #[test]
    fn cyclic_reduction_conjugates(w in word(2, 30)) {
        let (core, conj) = w.cyclically_reduce();
        prop_assert!(core.is_cyclically_reduced());
        prop_assert_eq!(&(&conj * &core) * &conj.inverse(), w);
    }

    #[test]
    fn generator_maps_are_multiplicative(
        images in prop::collection::vec(word(2, 6), 3),
        u in word(3, 15),
        v in word(3, 15),
    ) {
        let map = GeneratorMap::new(
            Presentation::free(["x", "y", "z"]).unwrap(),
            Presentation::free(["a", "b"]).unwrap(),
            images,
        ).unwrap();
        prop_assert_eq!(map.apply(&(&u * &v)), &map.apply(&u) * &map.apply(&v));
        prop_assert!(map.verify(&FreeWordProblem).is_ok());
    }

    #[test]
    fn print_then_parse_round_trips(rels in prop::collection::vec(word(3, 8), 0..5)) {
        let mut p = Presentation::free(["a", "b", "c"]).unwrap();
        for r in rels {
            p.push_relator(r).unwrap();
        }
        let again: Presentation = p.to_string().parse().unwrap();
        prop_assert_eq!(again, p);
    }

    #[test]
    fn group_axioms_on_carriers(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        fn check<G: PresentedGroup, R: rand::Rng>(g: &G, rng: &mut R) -> bool
        where
            G::Element: PartialEq,
        {
            (0..20).all(|_| {
                let [x, y, z] = [0, 1, 2].map(|_| sidki::groups::random_element(g, rng, 8));
                g.mul(&g.mul(&x, &y), &z) == g.mul(&x, &g.mul(&y, &z))
                    && g.is_identity(&g.mul(&x, &g.inverse(&x)))
                    && g.inverse(&g.inverse(&x)) == x
                    && g.eval(&g.normal_word(&x)) == x
            })
        }
        prop_assert!(check(&FreeGroup::new(2), &mut rng));
        prop_assert!(check(&FreeAbelian::new(3), &mut rng));
        prop_assert!(check(&BaumslagSolitar::new(2), &mut rng));
        prop_assert!(check(&BaumslagSolitar::new(-3), &mut rng));
        prop_assert!(check(&finite(CORPUS[0]), &mut rng));
    }

    #[test]
    fn standardize_ignores_labels(seed in any::<u64>(), which in 0..3usize) {
        use rand::seq::SliceRandom;
        let p = parse_presentation(CORPUS[which]).unwrap();
        let t = enumerate(&p, &[Word::generator(0)], limits()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut perm: Vec<usize> = (1..t.index()).collect();
        perm.shuffle(&mut rng);
        perm.insert(0, 0);
        let shuffled = t.relabeled(&perm).unwrap();
        prop_assert!(shuffled.audit().is_ok());
        prop_assert_eq!(shuffled.standardize().unwrap(), t.standardize().unwrap());
    }

    #[test]
    fn identity_witness_in_free_group(
        u in word(2, 6), v in word(2, 6), x in word(2, 6), y in word(2, 6),
    ) {
        let g = FreeGroup::new(2);
        let d = double_presentation(g.presentation(), RelatorSchedule::GeneratorOnly, None).unwrap();
        prop_assert!(identity_witness(&g, &d, &u, &v, &x, &y).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn free_product_associates(a in word(3, 12), b in word(3, 12), c in word(3, 12)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }
}

#[test]
fn enumeration_is_deterministic() {
    for text in CORPUS {
        let p = parse_presentation(text).unwrap();
        let a = enumerate(&p, &[], limits()).unwrap();
        let b = enumerate(&p, &[], limits()).unwrap();
        assert_eq!(a.dump(), b.dump());
        assert_eq!(a.presentation_hash(), b.presentation_hash());
    }
}

#[test]
fn corpus_round_trips() {
    for text in CORPUS {
        let p = parse_presentation(text).unwrap();
        assert_eq!(parse_presentation(&p.to_string()).unwrap(), p);
    }
}

#[test]
fn index_is_multiplicative() {
    // H ≤ K ≤ G with [G:H] = [G:K]·[K:H], [K:H] read off the realized group
    let cases = [
        (CORPUS[0], vec!["a"], vec!["a", "b*a*b^-1"]),
        (CORPUS[0], vec![], vec!["b"]),
        (CORPUS[1], vec![], vec!["b"]),
        (CORPUS[3], vec!["a^3"], vec!["a^3", "a^2"]),
    ];
    for (text, h, k) in cases {
        let p = parse_presentation(text).unwrap();
        let words = |ws: &[&str]| -> Vec<Word> {
            ws.iter().map(|s| p.parse_word(s).unwrap()).collect()
        };
        let (hw, kw) = (words(&h), words(&k));
        let gh = enumerate(&p, &hw, limits()).unwrap().index();
        let gk = enumerate(&p, &kw, limits()).unwrap().index();
        let g = finite(text);
        let elems = |ws: &[Word]| ws.iter().map(|w| g.element_of(w)).collect::<Vec<_>>();
        let kh = g.subgroup_generated(&elems(&kw)).order() / g.subgroup_generated(&elems(&hw)).order();
        assert_eq!(gh, gk * kh, "{text}: H = {h:?}, K = {k:?}");
    }
}

#[test]
fn finite_group_invariants() {
    let klein = finite(CORPUS[2]);
    let d = full_double(&klein).unwrap();
    let x = realize_presentation(d.double(), limits()).unwrap();
    let groups = [finite(CORPUS[0]), finite(CORPUS[1]), finite(CORPUS[3]), x];
    for g in &groups {
        let n = g.order();
        let classes = g.conjugacy_classes();
        assert_eq!(classes.sizes().iter().sum::<usize>(), n);
        let center = g.center();
        assert_eq!(
            classes.sizes().iter().filter(|&&s| s == 1).count(),
            center.order()
        );
        for x in 0..n {
            assert_eq!(n as u64 % g.element_order(x), 0);
            assert_eq!(n % classes.sizes()[classes.class_of(x)], 0);
            let cyclic = g.subgroup_generated(&[x]);
            assert_eq!(cyclic.order() as u64, g.element_order(x));
            assert_eq!(n % cyclic.order(), 0);
        }
        assert_eq!(n % g.derived_subgroup().order(), 0);
        assert!(g.is_normal(&g.derived_subgroup()));
        assert!(g.is_central(&center));
    }
}

#[test]
fn kernels_are_normal() {
    let s3 = finite(CORPUS[1]);
    let c2 = finite("< a | a^2 >");
    let sign = FiniteHom::new(&s3, &c2, vec![c2.generator(0), 0]).unwrap();
    let (kernel, image) = sign.kernel_and_image();
    assert_eq!(kernel.order(), 3);
    assert_eq!(kernel.order() * image.order(), s3.order());
    assert!(s3.is_normal(&kernel));

    let klein = finite(CORPUS[2]);
    let d = full_double(&klein).unwrap();
    let x = realize_presentation(d.double(), limits()).unwrap();
    let g3 = realize_presentation(d.maps().rho.target(), limits()).unwrap();
    let rho = FiniteHom::from_generator_map(&d.maps().rho, &x, &g3).unwrap();
    let (w, im) = rho.kernel_and_image();
    assert!(x.is_normal(&w));
    assert_eq!(w.order() * im.order(), x.order());
}

#[test]
fn rho_retracts_and_commutes() {
    for text in CORPUS {
        let g = finite(text);
        let d = full_double(&g).unwrap();
        d.verify_maps(&g).unwrap();
        let g3 = DirectPowerWordProblem {
            base: &g,
            base_generators: d.base_generators(),
            copies: 3,
        };
        let rho = &d.maps().rho;
        for w in g.words() {
            let c = rho.apply(w).commutator(&rho.apply(&d.psi(w)));
            assert!(g3.is_identity(&c));
            // μρ∘ι is the identity on G
            let back = d.maps().mu_rho.apply(&d.maps().iota.apply(w));
            assert!(WordProblem::is_identity(&g, &(&back * &w.inverse())));
        }
    }
}

#[test]
fn induced_double_map_is_functorial() {
    let c2 = finite("< a | a^2 >");
    let klein = finite(CORPUS[2]);
    let f = GeneratorMap::new(
        c2.presentation().clone(),
        klein.presentation().clone(),
        vec![Word::generator(0)],
    )
    .unwrap();
    let dg = full_double(&c2).unwrap();
    let dk = full_double(&klein).unwrap();
    let xf = induced_double_map(&dg, &dk, &f).unwrap();
    let xk = realize_presentation(dk.double(), limits()).unwrap();
    xf.verify(&xk).unwrap();
    // ρ_K ∘ X(f) = (f×f×f) ∘ ρ_G on generators
    let k3 = DirectPowerWordProblem {
        base: &klein,
        base_generators: 2,
        copies: 3,
    };
    let fff = |w: &Word| {
        let coords = sidki::words::project_coordinates(w, 1, 3);
        let shifted: Vec<Word> = coords
            .iter()
            .enumerate()
            .map(|(copy, c)| sidki::words::shift_word(&f.apply(c), 2 * copy))
            .collect();
        shifted.iter().fold(Word::identity(), |acc, c| &acc * c)
    };
    for gen in 0..dg.double().num_generators() {
        let x = Word::generator(gen);
        let left = dk.maps().rho.apply(&xf.apply(&x));
        let right = fff(&dg.maps().rho.apply(&x));
        assert!(k3.is_identity(&(&left * &right.inverse())), "generator {gen}");
    }
}

#[test]
fn hattori_stallings_is_conjugation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let s3 = Arc::new(finite(CORPUS[1]));
    let f2 = Arc::new(FreeGroup::new(2));
    for _ in 0..10 {
        let a = RingMatrix::diagonal(
            &s3,
            vec![
                random_ring_element(&s3, &mut rng, 3, 3),
                random_ring_element(&s3, &mut rng, 3, 3),
            ],
        )
        .unwrap();
        let (u, v) = random_invertible(&s3, 2, &mut rng, 4, 2);
        assert!(u.mul(&v).unwrap().is_identity());
        let b = u.mul(&a).unwrap().mul(&v).unwrap();
        assert_eq!(hattori_stallings(&a).unwrap(), hattori_stallings(&b).unwrap());

        let a = RingMatrix::diagonal(
            &f2,
            vec![
                random_ring_element(&f2, &mut rng, 3, 4),
                random_ring_element(&f2, &mut rng, 3, 4),
            ],
        )
        .unwrap();
        let (u, v) = random_invertible(&f2, 2, &mut rng, 4, 2);
        let b = u.mul(&a).unwrap().mul(&v).unwrap();
        assert_eq!(hattori_stallings(&a).unwrap(), hattori_stallings(&b).unwrap());
    }
}

#[test]
fn pushforward_is_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let f2 = Arc::new(FreeGroup::new(2));
    let z2 = Arc::new(FreeAbelian::new(2));
    let ab = |w: &Word| w.exponent_sums(2);
    for _ in 0..50 {
        let x = random_ring_element(&f2, &mut rng, 4, 5);
        let y = random_ring_element(&f2, &mut rng, 4, 5);
        let lhs = x.mul(&y).unwrap().pushforward(&z2, ab);
        let rhs = x.pushforward(&z2, ab).mul(&y.pushforward(&z2, ab)).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(x.pushforward(&z2, ab).epsilon(), x.epsilon());
    }
    let (u, v) = random_invertible(&f2, 2, &mut rng, 5, 3);
    let pu = u.pushforward(&z2, ab);
    let pv = v.pushforward(&z2, ab);
    assert!(pu.mul(&pv).unwrap().is_identity());
}
