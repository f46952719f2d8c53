use coxgrowth::catalog::{delta, gamma, p0, w_group};
use coxgrowth::classify::{component_types, exponents};
use coxgrowth::corpus::spherical_graphs;
use coxgrowth::oracle::{bfs_counts, group_order, tits_representation, OracleError, DEFAULT_CAP};
use coxgrowth::{series_coeffs, CoxeterGraph, Exec};
use num_bigint::BigInt;

fn agree(g: &CoxeterGraph, k: usize, exec: Exec) {
    let bfs: Vec<BigInt> = bfs_counts(g, k, DEFAULT_CAP, exec).unwrap().into_iter().map(BigInt::from).collect();
    assert_eq!(bfs, series_coeffs(g, k), "{g:?}");
}

#[test]
fn series_match_word_counts() {
    let mut graphs: Vec<CoxeterGraph> = (2..=9).map(|n| gamma(n).unwrap()).collect();
    graphs.extend((0..3).map(|i| w_group(i).unwrap()));
    graphs.extend((1..=4).map(|i| delta(i).unwrap()));
    graphs.push(p0());
    for g in &graphs {
        agree(g, 7, Exec::default());
    }
}

#[test]
fn sequential_and_parallel_agree() {
    let g = gamma(5).unwrap();
    assert_eq!(
        bfs_counts(&g, 9, DEFAULT_CAP, Exec::Sequential).unwrap(),
        bfs_counts(&g, 9, DEFAULT_CAP, Exec::Parallel).unwrap()
    );
}

#[test]
fn finite_group_orders() {
    // every spherical graph of order <= 4 with exact Gram entries, H4 included
    for order in 1..=4 {
        for g in spherical_graphs(order) {
            let product: u64 =
                component_types(&g).into_iter().flat_map(|t| exponents(t).unwrap()).map(|m| u64::from(m) + 1).product();
            assert_eq!(group_order(&g, DEFAULT_CAP, Exec::default()).unwrap(), product, "{g:?}");
        }
    }
}

#[test]
fn relations_hold() {
    for n in 2..=9 {
        let g = gamma(n).unwrap();
        tits_representation(&g).unwrap().check_relations(&g, 12).unwrap();
    }
}

#[test]
fn infinite_groups_hit_the_cap() {
    match group_order(&w_group(0).unwrap(), 500, Exec::default()) {
        Err(OracleError::CapExceeded { cap: 500, .. }) => {}
        other => panic!("{other:?}"),
    }
}
