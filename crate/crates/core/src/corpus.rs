//! Exhaustive generation of finite-volume hyperbolic Coxeter simplices.
//!
//! Every vertex link of a finite-volume simplex of order `N` is a spherical
//! or connected affine graph of order `N - 1`, so each such simplex arises by
//! attaching one node to such a base. A non-compact simplex has an affine
//! link, hence an affine base; a compact one has a spherical base.

use std::collections::{BTreeMap, BTreeSet};

use crate::classify::{component_types, graph_of_type, is_spherical, IrreducibleType};
use crate::cox::{CanonicalForm, CoxeterGraph, Weight};
use crate::par::Exec;
use crate::simplex::{simplex_class, VolumeClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CorpusKind {
    Compact,
    Noncompact,
    /// Both of the above.
    FiniteVolume,
}

/// Connected affine graphs of the given order, one per type.
pub fn affine_graphs(order: usize) -> Vec<CoxeterGraph> {
    use IrreducibleType::*;
    let r = order as u32 - 1;
    let mut types = vec![AffineA(r), AffineB(r), AffineC(r), AffineD(r)];
    types.extend([AffineE6, AffineE7, AffineE8, AffineF4, AffineG2]);
    types.into_iter().filter(|t| t.is_valid() && t.order() == Some(order)).filter_map(graph_of_type).collect()
}

/// Connected spherical graphs with weights at most 6, by order.
fn irreducible_spherical(max_order: usize) -> Vec<CoxeterGraph> {
    use IrreducibleType::*;
    let mut types = vec![E6, E7, E8, F4, H3, H4, I2(5), I2(6)];
    for k in 1..=max_order as u32 {
        types.extend([A(k), B(k), D(k)]);
    }
    types
        .into_iter()
        .filter(|t| t.is_valid() && t.order().is_some_and(|k| k <= max_order))
        .filter_map(graph_of_type)
        .collect()
}

/// All spherical graphs of the given order with weights at most 6, up to
/// isomorphism, in canonical order.
///
/// A spherical graph is a disjoint union of connected spherical graphs, so
/// these are multisets of irreducible components.
pub fn spherical_graphs(order: usize) -> Vec<CoxeterGraph> {
    fn go(parts: &[CoxeterGraph], from: usize, acc: &CoxeterGraph, left: usize, out: &mut BTreeSet<CanonicalForm>) {
        if left == 0 {
            out.insert(acc.canonical_form());
            return;
        }
        for (k, p) in parts.iter().enumerate().skip(from) {
            if p.order() <= left {
                go(parts, k, &acc.disjoint_union(p), left - p.order(), out);
            }
        }
    }
    let parts = irreducible_spherical(order);
    let mut out = BTreeSet::new();
    go(&parts, 0, &CoxeterGraph::discrete(0), order, &mut out);
    out.iter().map(CanonicalForm::to_graph).collect()
}

fn link_ok(g: &CoxeterGraph) -> bool {
    let types = component_types(g);
    types.iter().all(|t| t.is_spherical()) || (types.len() == 1 && types[0].is_affine())
}

/// Search state: the base plus a new node whose weights are chosen one at a
/// time, checking every connected subset that the latest choice completes.
struct Extender<'a> {
    base: &'a CoxeterGraph,
    order: usize,
    weights: Vec<Weight>,
    found: Vec<CoxeterGraph>,
}

impl Extender<'_> {
    fn current(&self) -> CoxeterGraph {
        let attach: Vec<(usize, Weight)> = self.weights.iter().copied().enumerate().collect();
        let mut full = attach;
        full.resize(self.base.order(), (0, Weight::TWO));
        for (i, a) in full.iter_mut().enumerate() {
            a.0 = i;
        }
        self.base.with_new_node(&full)
    }

    /// Checks the subgraph on base nodes `0..=j` and the new node. Proper
    /// subgraphs of a simplex graph of order `N` must be spherical, except
    /// that those of order `N - 1` may be connected affine. Both properties
    /// pass to subgraphs, so one test on the prefix covers all its subsets
    /// except, for the full graph, the deletions of single base nodes.
    fn prefix_ok(&self, g: &CoxeterGraph, j: usize) -> bool {
        let v = self.base.order();
        let mut nodes: Vec<usize> = (0..=j).collect();
        nodes.push(v);
        let size = nodes.len();
        if size + 2 <= self.order {
            is_spherical(&g.induced_unchecked(&nodes))
        } else if size + 1 == self.order {
            link_ok(&g.induced_unchecked(&nodes))
        } else {
            (0..j).all(|x| link_ok(&g.delete_node(x)))
        }
    }

    fn go(&mut self) {
        let j = self.weights.len();
        if j == self.base.order() {
            let g = self.current();
            if g.is_connected() {
                self.found.push(g);
            }
            return;
        }
        for m in 2..=6 {
            self.weights.push(Weight::raw(m));
            let g = self.current();
            if self.prefix_ok(&g, j) {
                self.go();
            }
            self.weights.pop();
        }
    }
}

/// Candidate graphs from one base, before the volume check.
fn extend_base(base: &CoxeterGraph) -> Vec<CoxeterGraph> {
    let mut ex = Extender { base, order: base.order() + 1, weights: Vec::new(), found: Vec::new() };
    ex.go();
    ex.found
}

/// Finite-volume hyperbolic simplex graphs of the given order (at least 4),
/// up to isomorphism, sorted by canonical form.
pub fn simplex_corpus(order: usize, kind: CorpusKind, exec: Exec) -> Vec<(CoxeterGraph, VolumeClass)> {
    assert!(order >= 4, "weights above 6 and inf edges are only excluded from order 4 on");
    let mut bases = Vec::new();
    if kind != CorpusKind::Compact {
        bases.extend(affine_graphs(order - 1));
    }
    if kind != CorpusKind::Noncompact {
        bases.extend(spherical_graphs(order - 1));
    }
    let candidates = exec.flat_map(&bases, extend_base);
    let classified = exec.map(&candidates, |g| {
        let class = simplex_class(g).ok().map(|r| r.class);
        (g.canonical_form(), class)
    });
    let mut out: BTreeMap<CanonicalForm, VolumeClass> = BTreeMap::new();
    for (cf, class) in classified {
        let wanted = match (kind, class) {
            (CorpusKind::Compact, Some(VolumeClass::CompactHyperbolic)) => true,
            (CorpusKind::Noncompact, Some(VolumeClass::FiniteVolumeNoncompact)) => true,
            (CorpusKind::FiniteVolume, Some(c)) => {
                matches!(c, VolumeClass::CompactHyperbolic | VolumeClass::FiniteVolumeNoncompact)
            }
            _ => false,
        };
        if wanted {
            out.insert(cf, class.unwrap());
        }
    }
    out.into_iter().map(|(cf, c)| (cf.to_graph(), c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_counts() {
        assert_eq!(affine_graphs(3).len(), 3);
        assert_eq!(affine_graphs(4).len(), 3);
        assert_eq!(affine_graphs(5).len(), 5);
        assert_eq!(affine_graphs(9).len(), 5);
        // A3, B3, H3, A2+A1, B2+A1, I2(5)+A1, G2+A1, 3 A1
        assert_eq!(spherical_graphs(3).len(), 8);
    }

    #[test]
    fn tetrahedra() {
        let nc = simplex_corpus(4, CorpusKind::Noncompact, Exec::Sequential);
        assert_eq!(nc.len(), 23);
        let c = simplex_corpus(4, CorpusKind::Compact, Exec::Parallel);
        assert_eq!(c.len(), 9);
        let all = simplex_corpus(4, CorpusKind::FiniteVolume, Exec::Parallel);
        assert_eq!(all.len(), 32);
    }
}
