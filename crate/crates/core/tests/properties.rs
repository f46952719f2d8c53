use std::cmp::Ordering;

use coxgrowth::classify::{graph_of_type, is_affine, is_spherical, IrreducibleType};
use coxgrowth::compare::{dominates, extensions};
use coxgrowth::corpus::spherical_graphs;
use coxgrowth::growth::{steinberg_naive, GrowthError};
use coxgrowth::poly::default_eps;
use coxgrowth::simplex::{gram, signature, simplex_class, Signature};
use coxgrowth::{growth_rate, series_coeffs, steinberg, CoxeterGraph, GrowthRate, Weight};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const WEIGHTS: [u32; 6] = [2, 3, 4, 5, 6, 0];

fn weight(m: u32) -> Weight {
    if m == 0 {
        Weight::INF
    } else {
        Weight::new(m).unwrap()
    }
}

fn graph_from(n: usize, codes: &[u32]) -> CoxeterGraph {
    let mut edges = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j, weight(codes[k])));
            k += 1;
        }
    }
    CoxeterGraph::with_edges(n, edges).unwrap()
}

fn arb_graph(max_order: usize) -> impl Strategy<Value = CoxeterGraph> {
    (1..=max_order).prop_flat_map(|n| {
        proptest::collection::vec(prop::sample::select(&WEIGHTS[..]), n * (n - 1) / 2)
            .prop_map(move |codes| graph_from(n, &codes))
    })
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> CoxeterGraph {
    // sparse weights keep most graphs away from the trivial all-infinite corner
    let codes: Vec<u32> =
        (0..n * (n - 1) / 2).map(|_| if rng.gen_bool(0.45) { 2 } else { *WEIGHTS.choose(rng).unwrap() }).collect();
    graph_from(n, &codes)
}

fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Finite groups first, then polynomial growth, then exponential growth.
fn rate_cmp(a: &Result<GrowthRate, GrowthError>, b: &Result<GrowthRate, GrowthError>) -> Ordering {
    match (a, b) {
        (Err(GrowthError::Finite), Err(GrowthError::Finite)) => Ordering::Equal,
        (Err(GrowthError::Finite), _) => Ordering::Less,
        (_, Err(GrowthError::Finite)) => Ordering::Greater,
        (Ok(x), Ok(y)) => x.compare(y),
        other => panic!("unexpected growth result {other:?}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_basics(g in arb_graph(5)) {
        let cs = series_coeffs(&g, 6);
        prop_assert_eq!(&cs[0], &BigInt::from(1));
        prop_assert_eq!(&cs[1], &BigInt::from(g.order()));
        prop_assert!(cs.iter().all(|c| c >= &BigInt::from(0)));
    }

    #[test]
    fn steinberg_paths_agree(g in arb_graph(5)) {
        prop_assert_eq!(steinberg(&g), steinberg_naive(&g));
    }

    #[test]
    fn dominance_is_reflexive(g in arb_graph(6)) {
        let e = dominates(&g, &g).unwrap();
        prop_assert!(e.is_valid(&g, &g));
    }

    #[test]
    fn extensions_contain_their_base(g in arb_graph(4)) {
        for ext in extensions(&g) {
            prop_assert!(dominates(&g, &ext).is_some());
        }
    }
}

#[test]
fn canonical_form_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=7);
        let g = random_graph(&mut rng, n);
        let perm = random_perm(&mut rng, n);
        let h = g.permute(&perm);
        assert_eq!(g.canonical_form(), h.canonical_form(), "{g:?} vs {h:?}");
        assert!(g.is_isomorphic(&h));
    }
}

#[test]
fn simplex_class_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 2..=9 {
        let g = coxgrowth::catalog::gamma(n).unwrap();
        for _ in 0..5 {
            let h = g.permute(&random_perm(&mut rng, g.order()));
            assert_eq!(simplex_class(&h).unwrap().class, simplex_class(&g).unwrap().class);
        }
    }
}

/// Raises some weights of `a`, adds up to two nodes and relabels.
fn dominating_partner(rng: &mut ChaCha8Rng, a: &CoxeterGraph) -> CoxeterGraph {
    let extra = rng.gen_range(0..=2);
    let n = a.order() + extra;
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let base = if j < a.order() { a.weight(i, j) } else { Weight::TWO };
            let bumped = if rng.gen_bool(0.3) {
                let candidates: Vec<Weight> = WEIGHTS.iter().map(|&m| weight(m)).filter(|&w| w >= base).collect();
                *candidates.choose(rng).unwrap()
            } else {
                base
            };
            edges.push((i, j, bumped));
        }
    }
    let b = CoxeterGraph::with_edges(n, edges).unwrap();
    b.permute(&random_perm(rng, n))
}

#[test]
fn monotonicity_under_dominance() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let eps = default_eps();
    let mut exponential = 0;
    for _ in 0..200 {
        let n = rng.gen_range(2..=5);
        let a = random_graph(&mut rng, n);
        let b = dominating_partner(&mut rng, &a);
        let e = dominates(&a, &b).expect("constructed to dominate");
        assert!(e.is_valid(&a, &b));
        let (ra, rb) = (growth_rate(&a, &eps), growth_rate(&b, &eps));
        assert_ne!(rate_cmp(&ra, &rb), Ordering::Greater, "{a:?} -> {b:?}");
        exponential += matches!(ra, Ok(GrowthRate::Exponential { .. })) as usize;
    }
    // the sample must actually exercise certified comparisons
    assert!(exponential >= 50, "{exponential}");
}

#[test]
fn dominance_is_transitive_and_antisymmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let graphs: Vec<CoxeterGraph> = (0..40)
        .map(|_| {
            let n = rng.gen_range(2..=4);
            random_graph(&mut rng, n)
        })
        .collect();
    for a in &graphs {
        for b in &graphs {
            let ab = dominates(a, b).is_some();
            if ab && a.order() == b.order() && dominates(b, a).is_some() {
                assert!(a.is_isomorphic(b));
            }
            if !ab {
                continue;
            }
            for c in &graphs {
                if dominates(b, c).is_some() {
                    assert!(dominates(a, c).is_some());
                }
            }
        }
    }
}

#[test]
fn signatures_of_spherical_and_affine_graphs() {
    for rank in 1..=6 {
        for g in spherical_graphs(rank) {
            assert!(is_spherical(&g));
            assert_eq!(signature(&gram(&g).unwrap()), Signature { plus: rank, minus: 0, zero: 0 }, "{g:?}");
        }
    }
    use IrreducibleType::*;
    let affine = [
        AffineA(1),
        AffineA(2),
        AffineA(5),
        AffineB(3),
        AffineB(6),
        AffineC(2),
        AffineC(5),
        AffineD(4),
        AffineD(7),
        AffineE6,
        AffineE7,
        AffineE8,
        AffineF4,
        AffineG2,
    ];
    for t in affine {
        let g = graph_of_type(t).unwrap();
        let n = g.order();
        assert_eq!(signature(&gram(&g).unwrap()), Signature { plus: n - 1, minus: 0, zero: 1 }, "{t}");
    }
    let two = graph_of_type(AffineG2).unwrap().disjoint_union(&graph_of_type(AffineA(3)).unwrap());
    assert!(is_affine(&two).unwrap());
    assert_eq!(signature(&gram(&two).unwrap()), Signature { plus: 5, minus: 0, zero: 2 });
}
