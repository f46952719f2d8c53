//! Named graphs: the minimal simplex groups `gamma(2..=9)`, the order-4
//! comparison groups, and a few others used by the checks.

use crate::cox::{CoxeterGraph, Weight};

fn w(m: u32) -> Weight {
    Weight::raw(m)
}

fn path(ws: &[Weight]) -> CoxeterGraph {
    CoxeterGraph::from_linear_symbol(ws).expect("valid symbol")
}

fn edges(n: usize, es: &[(usize, usize, u32)]) -> CoxeterGraph {
    CoxeterGraph::with_edges(n, es.iter().map(|&(i, j, m)| (i, j, if m == 0 { Weight::INF } else { w(m) })))
        .expect("valid edge list")
}

/// Star with simple arms of the given lengths around node 0.
fn fork(arms: &[usize]) -> CoxeterGraph {
    let n = 1 + arms.iter().sum::<usize>();
    let mut es = Vec::new();
    let mut next = 1;
    for &len in arms {
        let mut prev = 0;
        for _ in 0..len {
            es.push((prev, next, 3));
            prev = next;
            next += 1;
        }
    }
    edges(n, &es)
}

/// The simplex group of minimal growth rate in dimension `n`, for `2 <= n <= 9`.
pub fn gamma(n: usize) -> Option<CoxeterGraph> {
    let g = match n {
        2 => path(&[w(3), Weight::INF]),
        3 => path(&[w(6), w(3), w(3)]),
        4 => CoxeterGraph::y_shape(w(4), 2, 1).unwrap(),
        5 => path(&[w(3), w(4), w(3), w(3), w(3)]),
        6 => edges(7, &[(0, 1, 4), (1, 2, 3), (2, 3, 3), (3, 4, 3), (4, 5, 3), (3, 6, 3)]),
        7 => fork(&[2, 2, 3]),
        8 => fork(&[1, 3, 4]),
        9 => fork(&[1, 2, 6]),
        _ => return None,
    };
    Some(g)
}

/// `[inf,3,3]`, `[3,inf,3]` and `[inf,3^{1,1}]` for `i = 0, 1, 2`.
pub fn w_group(i: usize) -> Option<CoxeterGraph> {
    let g = match i {
        0 => path(&[Weight::INF, w(3), w(3)]),
        1 => path(&[w(3), Weight::INF, w(3)]),
        2 => CoxeterGraph::y_shape(Weight::INF, 1, 1).unwrap(),
        _ => return None,
    };
    Some(g)
}

/// The six-node graph of the compact 4-polyhedron with four `4`-edges:
/// a square of simple edges with two opposite sides each bridged by an
/// extra node through two `4`-edges.
pub fn p0() -> CoxeterGraph {
    // square 0-1-3-2-0; node 4 bridges 0 and 2, node 5 bridges 1 and 3
    edges(6, &[(0, 1, 3), (1, 3, 3), (3, 2, 3), (2, 0, 3), (4, 0, 4), (4, 2, 4), (5, 1, 4), (5, 3, 4)])
}

/// The four infinite-covolume 5-simplex extensions of order-5 affine graphs,
/// `i = 1..=4`.
pub fn delta(i: usize) -> Option<CoxeterGraph> {
    let g = match i {
        // ~B4 extended at the node next to the 4-edge
        1 => edges(6, &[(0, 1, 4), (1, 2, 3), (1, 5, 3), (2, 3, 3), (2, 4, 3)]),
        // ~C4 extended at its second node
        2 => edges(6, &[(0, 1, 4), (1, 2, 3), (2, 3, 3), (3, 4, 4), (1, 5, 3)]),
        // ~F4 extended at its second node
        3 => edges(6, &[(0, 1, 3), (1, 2, 4), (2, 3, 3), (3, 4, 3), (1, 5, 3)]),
        // ~F4 extended at its third node
        4 => edges(6, &[(0, 1, 3), (1, 2, 4), (2, 3, 3), (3, 4, 3), (2, 5, 3)]),
        _ => return None,
    };
    Some(g)
}

/// The `~F4` extension shown as an infinite-volume 5-simplex.
pub fn infinite_f4_extension() -> CoxeterGraph {
    edges(6, &[(0, 1, 3), (5, 1, 3), (1, 2, 4), (2, 3, 3), (3, 4, 3)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify_irreducible, IrreducibleType};

    #[test]
    fn orders() {
        for n in 2..=9 {
            let g = gamma(n).unwrap();
            assert_eq!(g.order(), n + 1);
            assert!(g.is_connected());
        }
        assert_eq!(gamma(9).unwrap().edges().len(), 9);
        assert!(gamma(10).is_none());
        assert_eq!(p0().order(), 6);
        for i in 1..=4 {
            assert_eq!(delta(i).unwrap().order(), 6);
        }
        assert!(delta(3).unwrap().is_isomorphic(&infinite_f4_extension()));
    }

    #[test]
    fn affine_cores() {
        use IrreducibleType::*;
        let core = |g: CoxeterGraph| classify_irreducible(&g.delete_node(5)).unwrap();
        assert_eq!(core(delta(1).unwrap()), AffineB(4));
        assert_eq!(core(delta(2).unwrap()), AffineC(4));
        assert_eq!(core(delta(3).unwrap()), AffineF4);
        assert_eq!(core(delta(4).unwrap()), AffineF4);
        let w0 = w_group(0).unwrap();
        assert!(!w0.is_isomorphic(&w_group(1).unwrap()));
        assert!(!w0.is_isomorphic(&w_group(2).unwrap()));
    }
}
