//! Coxeter graphs: validation, construction from symbols, induced subgraphs,
//! connected components and canonical forms.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Edge weight `m_ij` of a Coxeter graph.
///
/// `2` means the generators commute (no edge is drawn). [`Weight::INF`] is
/// ordered above every finite weight.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Weight(u32);

impl Weight {
    pub const TWO: Weight = Weight(2);
    pub const THREE: Weight = Weight(3);
    pub const INF: Weight = Weight(u32::MAX);

    /// A finite weight; values below 2 are rejected.
    pub fn new(m: u32) -> Result<Weight, CoxError> {
        if m < 2 || m == u32::MAX {
            return Err(CoxError::BadWeight(m.to_string()));
        }
        Ok(Weight(m))
    }

    pub(crate) const fn raw(m: u32) -> Weight {
        Weight(m)
    }

    pub fn is_inf(self) -> bool {
        self == Weight::INF
    }

    /// The finite value, `None` for infinity.
    pub fn finite(self) -> Option<u32> {
        (!self.is_inf()).then_some(self.0)
    }

    /// True when the pair is joined by a drawn edge (`m >= 3`).
    pub fn is_edge(self) -> bool {
        self.0 >= 3
    }

    pub(crate) fn code(self) -> u32 {
        self.0
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inf() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoxError {
    #[error("a Coxeter graph needs at least one node")]
    Empty,
    #[error("invalid edge weight {0} (weights are integers >= 2 or inf)")]
    BadWeight(String),
    #[error("node index {index} out of range 1..={n}")]
    OutOfRange { index: usize, n: usize },
    #[error("self-weight given for node {0}")]
    SelfLoop(usize),
    #[error("asymmetric weights for pair ({i},{j}): {a} vs {b}")]
    Asymmetric { i: usize, j: usize, a: Weight, b: Weight },
    #[error("duplicate edge ({0},{1})")]
    Duplicate(usize, usize),
    #[error("symbol weights must be >= 3, got {0}")]
    SymbolWeight(Weight),
    #[error("empty Coxeter symbol")]
    EmptySymbol,
    #[error("Y-shaped symbol needs p >= 3 and k, l >= 1")]
    BadYShape,
}

/// A Coxeter graph on nodes `0..order`, stored as a dense symmetric matrix of
/// weights with an implicit `1` on the diagonal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CoxeterGraph {
    n: usize,
    w: Vec<Weight>,
}

/// A set of nodes of a parent graph, kept sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NodeSubset {
    members: Vec<usize>,
}

impl NodeSubset {
    pub fn new(mut members: Vec<usize>) -> NodeSubset {
        members.sort_unstable();
        members.dedup();
        NodeSubset { members }
    }

    pub fn from_mask(mask: u64) -> NodeSubset {
        NodeSubset { members: (0..64).filter(|i| mask >> i & 1 == 1).collect() }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn mask(&self) -> u64 {
        self.members.iter().fold(0, |m, &i| m | 1 << i)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }
}

impl CoxeterGraph {
    /// The graph with `n` pairwise commuting generators.
    pub fn discrete(n: usize) -> CoxeterGraph {
        let mut w = vec![Weight::TWO; n * n];
        for i in 0..n {
            w[i * n + i] = Weight(1);
        }
        CoxeterGraph { n, w }
    }

    /// Builds a graph from 0-based edges. Pairs not listed get weight 2.
    pub fn with_edges<I>(n: usize, edges: I) -> Result<CoxeterGraph, CoxError>
    where
        I: IntoIterator<Item = (usize, usize, Weight)>,
    {
        let mut g = CoxeterGraph::discrete(n);
        let mut seen = std::collections::HashSet::new();
        for (i, j, m) in edges {
            for idx in [i, j] {
                if idx >= n {
                    return Err(CoxError::OutOfRange { index: idx + 1, n });
                }
            }
            if i == j {
                return Err(CoxError::SelfLoop(i + 1));
            }
            if m < Weight::TWO {
                return Err(CoxError::BadWeight(m.to_string()));
            }
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(CoxError::Duplicate(i + 1, j + 1));
            }
            g.set(i, j, m);
        }
        Ok(g)
    }

    /// Validates a raw 1-based weight map. Both `(i,j)` and `(j,i)` may be
    /// present as long as they agree.
    pub fn validate(n: usize, raw: &BTreeMap<(usize, usize), Weight>) -> Result<CoxeterGraph, CoxError> {
        if n < 1 {
            return Err(CoxError::Empty);
        }
        let mut g = CoxeterGraph::discrete(n);
        for (&(i, j), &m) in raw {
            for idx in [i, j] {
                if idx < 1 || idx > n {
                    return Err(CoxError::OutOfRange { index: idx, n });
                }
            }
            if i == j {
                return Err(CoxError::SelfLoop(i));
            }
            if m < Weight::TWO {
                return Err(CoxError::BadWeight(m.to_string()));
            }
            if let Some(&other) = raw.get(&(j, i)) {
                if other != m {
                    return Err(CoxError::Asymmetric { i: i.min(j), j: i.max(j), a: m, b: other });
                }
            }
            g.set(i - 1, j - 1, m);
        }
        Ok(g)
    }

    /// Linear graph `[k_1,...,k_r]` on `r + 1` nodes.
    pub fn from_linear_symbol(symbol: &[Weight]) -> Result<CoxeterGraph, CoxError> {
        if symbol.is_empty() {
            return Err(CoxError::EmptySymbol);
        }
        if let Some(&bad) = symbol.iter().find(|w| !w.is_edge()) {
            return Err(CoxError::SymbolWeight(bad));
        }
        CoxeterGraph::with_edges(symbol.len() + 1, symbol.iter().enumerate().map(|(i, &m)| (i, i + 1, m)))
    }

    /// The Y-shaped graph `[p,3^{k,l}]`: node 0 hangs off the centre (node 1)
    /// by an edge of weight `p`, followed by simple strings of `k` and `l`
    /// edges.
    pub fn y_shape(p: Weight, k: usize, l: usize) -> Result<CoxeterGraph, CoxError> {
        if !p.is_edge() || k < 1 || l < 1 {
            return Err(CoxError::BadYShape);
        }
        let n = 2 + k + l;
        let mut edges = vec![(0, 1, p)];
        let mut prev = 1;
        for v in 2..2 + k {
            edges.push((prev, v, Weight::THREE));
            prev = v;
        }
        prev = 1;
        for v in 2 + k..n {
            edges.push((prev, v, Weight::THREE));
            prev = v;
        }
        CoxeterGraph::with_edges(n, edges)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Weight between distinct nodes `i` and `j` (0-based).
    #[inline]
    pub fn weight(&self, i: usize, j: usize) -> Weight {
        self.w[i * self.n + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, m: Weight) {
        self.w[i * self.n + j] = m;
        self.w[j * self.n + i] = m;
    }

    /// All pairs `i < j` with weight at least 3.
    pub fn edges(&self) -> Vec<(usize, usize, Weight)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                let m = self.weight(i, j);
                if m.is_edge() {
                    out.push((i, j, m));
                }
            }
        }
        out
    }

    pub fn neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| j != i && self.weight(i, j).is_edge())
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbours(i).count()
    }

    pub fn has_inf(&self) -> bool {
        self.w.iter().any(|m| m.is_inf())
    }

    /// Induced subgraph, relabelled in increasing order of the old indices.
    pub fn induced(&self, t: &NodeSubset) -> Result<CoxeterGraph, CoxError> {
        if let Some(&bad) = t.members().iter().find(|&&i| i >= self.n) {
            return Err(CoxError::OutOfRange { index: bad + 1, n: self.n });
        }
        Ok(self.induced_unchecked(t.members()))
    }

    pub(crate) fn induced_unchecked(&self, nodes: &[usize]) -> CoxeterGraph {
        let k = nodes.len();
        let mut g = CoxeterGraph::discrete(k);
        for a in 0..k {
            for b in a + 1..k {
                let m = self.weight(nodes[a], nodes[b]);
                if m != Weight::TWO {
                    g.set(a, b, m);
                }
            }
        }
        g
    }

    /// Subgraph with node `v` removed.
    pub fn delete_node(&self, v: usize) -> CoxeterGraph {
        let keep: Vec<usize> = (0..self.n).filter(|&i| i != v).collect();
        self.induced_unchecked(&keep)
    }

    /// Relabels node `i` as `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> CoxeterGraph {
        assert_eq!(perm.len(), self.n);
        let mut g = CoxeterGraph::discrete(self.n);
        for (i, j, m) in self.edges() {
            g.set(perm[i], perm[j], m);
        }
        g
    }

    /// Disjoint union, with `other`'s nodes placed after ours.
    pub fn disjoint_union(&self, other: &CoxeterGraph) -> CoxeterGraph {
        let mut g = CoxeterGraph::discrete(self.n + other.n);
        for (i, j, m) in self.edges() {
            g.set(i, j, m);
        }
        for (i, j, m) in other.edges() {
            g.set(self.n + i, self.n + j, m);
        }
        g
    }

    /// Copy of the graph with one extra node joined to `attach` by weight `m`.
    pub fn with_new_node(&self, attach: &[(usize, Weight)]) -> CoxeterGraph {
        let n = self.n + 1;
        let mut g = CoxeterGraph::discrete(n);
        for (i, j, m) in self.edges() {
            g.set(i, j, m);
        }
        for &(i, m) in attach {
            if m != Weight::TWO {
                g.set(i, n - 1, m);
            }
        }
        g
    }

    /// Connected components (edges of weight >= 3), ordered by smallest member.
    pub fn components(&self) -> Vec<NodeSubset> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            let mut members = vec![start];
            comp[start] = id;
            while let Some(v) = stack.pop() {
                for u in self.neighbours(v) {
                    if comp[u] == usize::MAX {
                        comp[u] = id;
                        stack.push(u);
                        members.push(u);
                    }
                }
            }
            out.push(NodeSubset::new(members));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().len() == 1
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        canonical::canonical_form(self)
    }

    pub fn is_isomorphic(&self, other: &CoxeterGraph) -> bool {
        self.n == other.n && self.canonical_form() == other.canonical_form()
    }
}

impl fmt::Debug for CoxeterGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoxeterGraph({}; ", self.n)?;
        let edges = self.edges();
        for (k, (i, j, m)) in edges.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}-{}:{}", i + 1, j + 1, m)?;
        }
        f.write_str(")")
    }
}

/// Relabelling-invariant form of a graph: order plus the sorted edge list under
/// the lexicographically least relabelling.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub order: usize,
    pub edges: Vec<(u8, u8, Weight)>,
}

impl CanonicalForm {
    pub fn to_graph(&self) -> CoxeterGraph {
        let mut g = CoxeterGraph::discrete(self.order);
        for &(i, j, m) in &self.edges {
            g.set(i as usize, j as usize, m);
        }
        g
    }

    /// Stable byte encoding, suitable as a map key or for hashing to disk.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(1 + 6 * self.edges.len());
        out.push(self.order as u8);
        for &(i, j, m) in &self.edges {
            out.push(i);
            out.push(j);
            out.extend_from_slice(&m.code().to_be_bytes());
        }
        out
    }
}

mod canonical {
    use super::*;

    /// Colour refinement: start from (sorted incident weights), then refine by
    /// the multiset of (weight, neighbour colour) until stable.
    fn refine(g: &CoxeterGraph) -> Vec<usize> {
        let n = g.order();
        let mut sig: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                let mut s: Vec<u32> = (0..n)
                    .filter(|&j| j != i && g.weight(i, j) != Weight::TWO)
                    .map(|j| g.weight(i, j).code())
                    .collect();
                s.sort_unstable();
                s
            })
            .collect();
        let mut colour = rank(&sig);
        loop {
            sig = (0..n)
                .map(|i| {
                    let mut nb: Vec<(u32, u32)> = (0..n)
                        .filter(|&j| j != i && g.weight(i, j) != Weight::TWO)
                        .map(|j| (g.weight(i, j).code(), colour[j] as u32))
                        .collect();
                    nb.sort_unstable();
                    let mut s = vec![colour[i] as u32];
                    s.extend(nb.into_iter().flat_map(|(a, b)| [a, b]));
                    s
                })
                .collect();
            let next = rank(&sig);
            let classes = |c: &[usize]| c.iter().copied().max().map_or(0, |m| m + 1);
            if classes(&next) == classes(&colour) {
                return next;
            }
            colour = next;
        }
    }

    fn rank(sig: &[Vec<u32>]) -> Vec<usize> {
        let mut sorted: Vec<&Vec<u32>> = sig.iter().collect();
        sorted.sort();
        sorted.dedup();
        sig.iter().map(|s| sorted.binary_search(&s).unwrap()).collect()
    }

    struct Search<'a> {
        g: &'a CoxeterGraph,
        colour: Vec<usize>,
        slots: Vec<usize>,
        best: Option<Vec<u32>>,
        best_perm: Vec<usize>,
        code: Vec<u32>,
        order: Vec<usize>,
        used: Vec<bool>,
    }

    impl Search<'_> {
        fn go(&mut self) {
            let k = self.order.len();
            let n = self.g.order();
            if k == n {
                if self.best.as_ref().is_none_or(|b| self.code < *b) {
                    self.best = Some(self.code.clone());
                    self.best_perm = self.order.clone();
                }
                return;
            }
            let want = self.slots[k];
            for v in 0..n {
                if self.used[v] || self.colour[v] != want {
                    continue;
                }
                let start = self.code.len();
                for &u in &self.order {
                    self.code.push(self.g.weight(v, u).code());
                }
                let prune = match &self.best {
                    Some(best) => self.code[..] > best[..self.code.len()],
                    None => false,
                };
                if !prune {
                    self.used[v] = true;
                    self.order.push(v);
                    self.go();
                    self.order.pop();
                    self.used[v] = false;
                }
                self.code.truncate(start);
            }
        }
    }

    pub(super) fn canonical_form(g: &CoxeterGraph) -> CanonicalForm {
        let n = g.order();
        if n == 0 {
            return CanonicalForm { order: 0, edges: Vec::new() };
        }
        let colour = refine(g);
        let mut slots = colour.clone();
        slots.sort_unstable();
        let mut s = Search {
            g,
            colour,
            slots,
            best: None,
            best_perm: Vec::new(),
            code: Vec::with_capacity(n * n / 2),
            order: Vec::with_capacity(n),
            used: vec![false; n],
        };
        s.go();
        // best_perm[pos] = old node; invert to old -> new.
        let mut new_label = vec![0usize; n];
        for (pos, &v) in s.best_perm.iter().enumerate() {
            new_label[v] = pos;
        }
        let mut edges: Vec<(u8, u8, Weight)> = g
            .edges()
            .into_iter()
            .map(|(i, j, m)| {
                let (a, b) = (new_label[i], new_label[j]);
                (a.min(b) as u8, a.max(b) as u8, m)
            })
            .collect();
        edges.sort();
        CanonicalForm { order: n, edges }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(m: u32) -> Weight {
        Weight::new(m).unwrap()
    }

    #[test]
    fn validate_examples() {
        let mut raw = BTreeMap::new();
        raw.insert((1, 2), Weight::INF);
        let g = CoxeterGraph::validate(2, &raw).unwrap();
        assert_eq!(g.weight(0, 1), Weight::INF);

        let g = CoxeterGraph::validate(1, &BTreeMap::new()).unwrap();
        assert_eq!(g.order(), 1);

        let mut raw = BTreeMap::new();
        raw.insert((1, 2), w(3));
        raw.insert((2, 1), w(4));
        assert!(matches!(CoxeterGraph::validate(3, &raw), Err(CoxError::Asymmetric { .. })));

        assert_eq!(CoxeterGraph::validate(0, &BTreeMap::new()), Err(CoxError::Empty));
        let mut raw = BTreeMap::new();
        raw.insert((1, 4), w(3));
        assert!(matches!(CoxeterGraph::validate(3, &raw), Err(CoxError::OutOfRange { .. })));
        assert!(Weight::new(1).is_err());
    }

    #[test]
    fn linear_symbols() {
        let g = CoxeterGraph::from_linear_symbol(&[w(6), w(3), w(3)]).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.edges(), vec![(0, 1, w(6)), (1, 2, w(3)), (2, 3, w(3))]);
        let a1 = CoxeterGraph::from_linear_symbol(&[Weight::INF]).unwrap();
        assert_eq!(a1.order(), 2);
        let w1 = CoxeterGraph::from_linear_symbol(&[w(3), Weight::INF, w(3)]).unwrap();
        assert_eq!(w1.weight(1, 2), Weight::INF);
        assert_eq!(CoxeterGraph::from_linear_symbol(&[]), Err(CoxError::EmptySymbol));
        assert!(CoxeterGraph::from_linear_symbol(&[w(2)]).is_err());
    }

    #[test]
    fn y_shapes() {
        let g4 = CoxeterGraph::y_shape(w(4), 2, 1).unwrap();
        assert_eq!(g4.order(), 5);
        assert_eq!(g4.degree(1), 3);
        let d4 = CoxeterGraph::y_shape(w(3), 1, 1).unwrap();
        assert_eq!(d4.degree(1), 3);
        assert!(d4.edges().iter().all(|e| e.2 == w(3)));
        let y = CoxeterGraph::y_shape(w(4), 1, 1).unwrap();
        let lin = CoxeterGraph::from_linear_symbol(&[w(4), w(3), w(3)]).unwrap();
        assert_ne!(y.canonical_form(), lin.canonical_form());
        assert!(CoxeterGraph::y_shape(w(4), 0, 1).is_err());
    }

    #[test]
    fn subgraphs_and_components() {
        let g3 = CoxeterGraph::from_linear_symbol(&[w(6), w(3), w(3)]).unwrap();
        let sub = g3.induced(&NodeSubset::new(vec![1, 2, 3])).unwrap();
        assert_eq!(sub, CoxeterGraph::from_linear_symbol(&[w(3), w(3)]).unwrap());
        assert_eq!(g3.induced(&NodeSubset::default()).unwrap().order(), 0);
        assert!(g3.induced(&NodeSubset::new(vec![7])).is_err());
        let full = NodeSubset::new((0..4).collect());
        assert_eq!(g3.induced(&full).unwrap(), g3);

        let two = CoxeterGraph::with_edges(4, [(0, 1, Weight::INF), (2, 3, Weight::INF)]).unwrap();
        let comps = two.components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].members(), &[0, 1]);
        assert!(CoxeterGraph::discrete(0).components().is_empty());
    }

    #[test]
    fn canonical_form_examples() {
        let c2 = CoxeterGraph::from_linear_symbol(&[w(4), w(4)]).unwrap();
        assert_eq!(c2.canonical_form(), c2.permute(&[2, 1, 0]).canonical_form());
        let a = CoxeterGraph::from_linear_symbol(&[w(4), w(3)]).unwrap();
        let b = CoxeterGraph::from_linear_symbol(&[w(3), w(4)]).unwrap();
        assert_eq!(a.canonical_form(), b.canonical_form());
        let w0 = CoxeterGraph::from_linear_symbol(&[Weight::INF, w(3), w(3)]).unwrap();
        let w1 = CoxeterGraph::from_linear_symbol(&[w(3), Weight::INF, w(3)]).unwrap();
        assert_ne!(w0.canonical_form(), w1.canonical_form());
        assert_eq!(w0.canonical_form().to_graph().canonical_form(), w0.canonical_form());
    }

    #[test]
    fn canonical_form_exhaustive_small() {
        // every permutation of a few asymmetric graphs on 5 nodes
        let g = CoxeterGraph::with_edges(5, [(0, 1, w(4)), (1, 2, w(3)), (2, 3, w(5)), (1, 4, w(3)), (3, 4, w(6))])
            .unwrap();
        let cf = g.canonical_form();
        let mut perm: Vec<usize> = (0..5).collect();
        permutations(&mut perm, 0, &mut |p| assert_eq!(g.permute(p).canonical_form(), cf));
    }

    fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == p.len() {
            f(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permutations(p, k + 1, f);
            p.swap(k, i);
        }
    }
}
