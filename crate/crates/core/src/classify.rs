//! Recognition of irreducible spherical and affine Coxeter graphs, and the
//! exponents of the finite ones.

use std::collections::HashMap;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::cox::{CoxeterGraph, Weight};

/// Label of a connected Coxeter graph.
///
/// Affine types carry the rank `n`; the graph has `n + 1` nodes. `AffineA(1)`
/// is the two-node graph with an `inf` edge, `AffineA(n)` for `n >= 2` is the
/// `(n+1)`-cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IrreducibleType {
    A(u32),
    B(u32),
    D(u32),
    E6,
    E7,
    E8,
    F4,
    H3,
    H4,
    I2(u32),
    AffineA(u32),
    AffineB(u32),
    AffineC(u32),
    AffineD(u32),
    AffineE6,
    AffineE7,
    AffineE8,
    AffineF4,
    AffineG2,
    Indefinite,
}

use IrreducibleType::*;

impl IrreducibleType {
    pub fn is_spherical(self) -> bool {
        matches!(self, A(_) | B(_) | D(_) | E6 | E7 | E8 | F4 | H3 | H4 | I2(_))
    }

    pub fn is_affine(self) -> bool {
        matches!(
            self,
            AffineA(_) | AffineB(_) | AffineC(_) | AffineD(_) | AffineE6 | AffineE7 | AffineE8 | AffineF4 | AffineG2
        )
    }

    /// Number of nodes of the graph carrying this label.
    pub fn order(self) -> Option<usize> {
        let r = match self {
            A(n) | B(n) | D(n) => n as usize,
            E6 => 6,
            E7 => 7,
            E8 => 8,
            F4 | H4 => 4,
            H3 => 3,
            I2(_) => 2,
            AffineA(n) | AffineB(n) | AffineC(n) | AffineD(n) => n as usize + 1,
            AffineE6 => 7,
            AffineE7 => 8,
            AffineE8 => 9,
            AffineF4 => 5,
            AffineG2 => 3,
            Indefinite => return None,
        };
        Some(r)
    }

    /// Checks the family/rank combination is a legal label.
    pub fn is_valid(self) -> bool {
        match self {
            A(n) => n >= 1,
            B(n) => n >= 2,
            D(n) => n >= 4,
            I2(m) => m >= 3,
            AffineA(n) => n >= 1,
            AffineB(n) => n >= 3,
            AffineC(n) => n >= 2,
            AffineD(n) => n >= 4,
            _ => true,
        }
    }
}

impl fmt::Display for IrreducibleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            A(n) => write!(f, "A{n}"),
            B(n) => write!(f, "B{n}"),
            D(n) => write!(f, "D{n}"),
            E6 => f.write_str("E6"),
            E7 => f.write_str("E7"),
            E8 => f.write_str("E8"),
            F4 => f.write_str("F4"),
            H3 => f.write_str("H3"),
            H4 => f.write_str("H4"),
            I2(m) => write!(f, "I2({m})"),
            AffineA(n) => write!(f, "~A{n}"),
            AffineB(n) => write!(f, "~B{n}"),
            AffineC(n) => write!(f, "~C{n}"),
            AffineD(n) => write!(f, "~D{n}"),
            AffineE6 => f.write_str("~E6"),
            AffineE7 => f.write_str("~E7"),
            AffineE8 => f.write_str("~E8"),
            AffineF4 => f.write_str("~F4"),
            AffineG2 => f.write_str("~G2"),
            Indefinite => f.write_str("indefinite"),
        }
    }
}

impl Serialize for IrreducibleType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("graph is empty")]
    Empty,
    #[error("graph is not connected")]
    Disconnected,
    #[error("{0} is not a spherical type; it has no exponents")]
    NotSpherical(IrreducibleType),
    #[error("{0} is not a valid label")]
    InvalidLabel(IrreducibleType),
}

/// Classifies a connected graph by its shape and weights.
pub fn classify_irreducible(g: &CoxeterGraph) -> Result<IrreducibleType, ClassifyError> {
    if g.is_empty() {
        return Err(ClassifyError::Empty);
    }
    if !g.is_connected() {
        return Err(ClassifyError::Disconnected);
    }
    Ok(classify_connected(g))
}

fn classify_connected(g: &CoxeterGraph) -> IrreducibleType {
    let n = g.order();
    if n == 1 {
        return A(1);
    }
    if n == 2 {
        let m = g.weight(0, 1);
        return match m.finite() {
            None => AffineA(1),
            Some(3) => A(2),
            Some(4) => B(2),
            Some(m) => I2(m),
        };
    }
    if g.has_inf() {
        return Indefinite;
    }
    let edges = g.edges();
    let degrees: Vec<usize> = (0..n).map(|i| g.degree(i)).collect();
    if edges.len() == n {
        // unicyclic; only the plain cycle is classified
        if degrees.iter().all(|&d| d == 2) && edges.iter().all(|e| e.2 == Weight::THREE) {
            return AffineA(n as u32 - 1);
        }
        return Indefinite;
    }
    if edges.len() != n - 1 {
        return Indefinite;
    }
    let max_deg = degrees.iter().copied().max().unwrap_or(0);
    let all_simple = edges.iter().all(|e| e.2 == Weight::THREE);
    if max_deg >= 4 {
        return if n == 5 && max_deg == 4 && all_simple { AffineD(4) } else { Indefinite };
    }
    let branch: Vec<usize> = (0..n).filter(|&i| degrees[i] == 3).collect();
    match branch.len() {
        0 => classify_path(g, &degrees),
        1 => classify_fork(g, branch[0], all_simple),
        2 => {
            let leaf_nbrs = |c: usize| g.neighbours(c).filter(|&u| degrees[u] == 1).count();
            if all_simple && n >= 6 && leaf_nbrs(branch[0]) == 2 && leaf_nbrs(branch[1]) == 2 {
                AffineD(n as u32 - 1)
            } else {
                Indefinite
            }
        }
        _ => Indefinite,
    }
}

/// Weights along a path graph, read from one end.
fn path_weights(g: &CoxeterGraph, degrees: &[usize]) -> Vec<Weight> {
    let start = (0..g.order()).find(|&i| degrees[i] == 1).expect("path has an end");
    let mut out = Vec::with_capacity(g.order() - 1);
    let (mut prev, mut cur) = (usize::MAX, start);
    loop {
        let next = g.neighbours(cur).find(|&u| u != prev);
        match next {
            Some(u) => {
                out.push(g.weight(cur, u));
                prev = cur;
                cur = u;
            }
            None => return out,
        }
    }
}

fn classify_path(g: &CoxeterGraph, degrees: &[usize]) -> IrreducibleType {
    let n = g.order() as u32;
    let ws = path_weights(g, degrees);
    let heavy: Vec<usize> = (0..ws.len()).filter(|&i| ws[i] != Weight::THREE).collect();
    let last = ws.len() - 1;
    match heavy.as_slice() {
        [] => A(n),
        &[p] => {
            let p = p.min(last - p);
            match (ws[heavy[0]].finite(), p, n) {
                (Some(4), 0, _) => B(n),
                (Some(4), 1, 4) => F4,
                (Some(4), 1, 5) => AffineF4,
                (Some(5), 0, 3) => H3,
                (Some(5), 0, 4) => H4,
                (Some(6), 0, 3) => AffineG2,
                _ => Indefinite,
            }
        }
        &[0, q] if q == last && ws[0] == Weight::raw(4) && ws[q] == Weight::raw(4) => AffineC(n - 1),
        _ => Indefinite,
    }
}

fn classify_fork(g: &CoxeterGraph, centre: usize, all_simple: bool) -> IrreducibleType {
    // each arm as the list of weights walking outward from the centre
    let mut arms: Vec<Vec<Weight>> = g
        .neighbours(centre)
        .map(|first| {
            let mut ws = vec![g.weight(centre, first)];
            let (mut prev, mut cur) = (centre, first);
            while let Some(u) = g.neighbours(cur).find(|&u| u != prev) {
                ws.push(g.weight(cur, u));
                prev = cur;
                cur = u;
            }
            ws
        })
        .collect();
    arms.sort_by_key(|a| a.len());
    let lens: Vec<usize> = arms.iter().map(Vec::len).collect();
    let n = g.order() as u32;
    if all_simple {
        return match lens.as_slice() {
            [1, 1, c] => D(*c as u32 + 3),
            [1, 2, 2] => E6,
            [1, 2, 3] => E7,
            [1, 2, 4] => E8,
            [2, 2, 2] => AffineE6,
            [1, 3, 3] => AffineE7,
            [1, 2, 5] => AffineE8,
            _ => Indefinite,
        };
    }
    let heavy: Vec<(usize, usize)> = arms
        .iter()
        .enumerate()
        .flat_map(|(a, ws)| ws.iter().enumerate().filter(|(_, w)| **w != Weight::THREE).map(move |(k, _)| (a, k)))
        .collect();
    if let [(arm, pos)] = heavy.as_slice() {
        let outer = *pos == arms[*arm].len() - 1;
        let others_short = (0..3).filter(|a| a != arm).all(|a| lens[a] == 1);
        if arms[*arm][*pos] == Weight::raw(4) && outer && others_short {
            return AffineB(n - 1);
        }
    }
    Indefinite
}

/// Labels of all connected components, in component order.
pub fn component_types(g: &CoxeterGraph) -> Vec<IrreducibleType> {
    g.components().iter().map(|c| classify_connected(&g.induced_unchecked(c.members()))).collect()
}

/// True iff every component is spherical; the empty graph is spherical.
pub fn is_spherical(g: &CoxeterGraph) -> bool {
    component_types(g).into_iter().all(IrreducibleType::is_spherical)
}

/// True iff every component is affine.
pub fn is_affine(g: &CoxeterGraph) -> Result<bool, ClassifyError> {
    if g.is_empty() {
        return Err(ClassifyError::Empty);
    }
    Ok(component_types(g).into_iter().all(IrreducibleType::is_affine))
}

/// Exponents of an irreducible spherical type, in increasing order.
pub fn exponents(t: IrreducibleType) -> Result<Vec<u32>, ClassifyError> {
    if !t.is_valid() {
        return Err(ClassifyError::InvalidLabel(t));
    }
    let mut e = match t {
        A(n) => (1..=n).collect(),
        B(n) => (1..=n).map(|i| 2 * i - 1).collect(),
        D(n) => {
            let mut v: Vec<u32> = (1..n).map(|i| 2 * i - 1).collect();
            v.push(n - 1);
            v
        }
        E6 => vec![1, 4, 5, 7, 8, 11],
        E7 => vec![1, 5, 7, 9, 11, 13, 17],
        E8 => vec![1, 7, 11, 13, 17, 19, 23, 29],
        F4 => vec![1, 5, 7, 11],
        H3 => vec![1, 5, 9],
        H4 => vec![1, 11, 19, 29],
        I2(m) => vec![1, m - 1],
        other => return Err(ClassifyError::NotSpherical(other)),
    };
    e.sort_unstable();
    Ok(e)
}

/// Exponent lookup with optional per-type overrides.
///
/// The standard table is what every computation uses by default; overrides
/// exist so that checks can be run against a deliberately wrong table.
#[derive(Debug, Clone, Default)]
pub struct ExponentTable {
    overrides: HashMap<IrreducibleType, Vec<u32>>,
}

impl ExponentTable {
    pub fn standard() -> ExponentTable {
        ExponentTable::default()
    }

    pub fn with_override(mut self, t: IrreducibleType, exps: Vec<u32>) -> ExponentTable {
        self.overrides.insert(t, exps);
        self
    }

    pub fn is_standard(&self) -> bool {
        self.overrides.is_empty()
    }

    pub fn exponents(&self, t: IrreducibleType) -> Result<Vec<u32>, ClassifyError> {
        match self.overrides.get(&t) {
            Some(e) => Ok(e.clone()),
            None => exponents(t),
        }
    }

    /// Group order `prod (m_i + 1)`.
    pub fn order(&self, t: IrreducibleType) -> Result<u64, ClassifyError> {
        Ok(self.exponents(t)?.iter().map(|&m| m as u64 + 1).product())
    }
}

/// A representative graph for a spherical or affine label.
pub fn graph_of_type(t: IrreducibleType) -> Option<CoxeterGraph> {
    if !t.is_valid() || t == Indefinite {
        return None;
    }
    let w = Weight::raw;
    let path = |ws: Vec<Weight>| -> CoxeterGraph {
        let n = ws.len() + 1;
        CoxeterGraph::with_edges(n, ws.into_iter().enumerate().map(|(i, m)| (i, i + 1, m))).unwrap()
    };
    let simple = |k: usize| vec![w(3); k];
    // arms of simple edges from node 0
    let fork = |arms: &[usize]| -> CoxeterGraph {
        let n = 1 + arms.iter().sum::<usize>();
        let mut edges = Vec::new();
        let mut next = 1;
        for &len in arms {
            let mut prev = 0;
            for _ in 0..len {
                edges.push((prev, next, w(3)));
                prev = next;
                next += 1;
            }
        }
        CoxeterGraph::with_edges(n, edges).unwrap()
    };
    let g = match t {
        A(1) => CoxeterGraph::discrete(1),
        A(n) => path(simple(n as usize - 1)),
        B(n) => {
            let mut ws = vec![w(4)];
            ws.extend(simple(n as usize - 2));
            path(ws)
        }
        D(n) => fork(&[1, 1, n as usize - 3]),
        E6 => fork(&[1, 2, 2]),
        E7 => fork(&[1, 2, 3]),
        E8 => fork(&[1, 2, 4]),
        F4 => path(vec![w(3), w(4), w(3)]),
        H3 => path(vec![w(5), w(3)]),
        H4 => path(vec![w(5), w(3), w(3)]),
        I2(m) => path(vec![w(m)]),
        AffineA(1) => path(vec![Weight::INF]),
        AffineA(n) => {
            let k = n as usize + 1;
            CoxeterGraph::with_edges(k, (0..k).map(|i| (i, (i + 1) % k, w(3)))).unwrap()
        }
        AffineB(n) => {
            // fork with arms (1, 1, n-2), weight 4 on the outer edge of the long arm
            let g = fork(&[1, 1, n as usize - 2]);
            let last = g.order() - 1;
            let prev = if n == 3 { 0 } else { last - 1 };
            let mut g = g;
            g.set(prev, last, w(4));
            g
        }
        AffineC(n) => {
            let mut ws = vec![w(4)];
            ws.extend(simple(n as usize - 2));
            ws.push(w(4));
            path(ws)
        }
        AffineD(4) => fork(&[1, 1, 1, 1]),
        AffineD(n) => {
            let k = n as usize + 1;
            // spine 0..k-2, with extra leaves on nodes 1 and k-4
            let spine = k - 2;
            let mut edges: Vec<(usize, usize, Weight)> = (0..spine - 1).map(|i| (i, i + 1, w(3))).collect();
            edges.push((1, spine, w(3)));
            edges.push((spine - 2, spine + 1, w(3)));
            CoxeterGraph::with_edges(k, edges).unwrap()
        }
        AffineE6 => fork(&[2, 2, 2]),
        AffineE7 => fork(&[1, 3, 3]),
        AffineE8 => fork(&[1, 2, 5]),
        AffineF4 => path(vec![w(3), w(4), w(3), w(3)]),
        AffineG2 => path(vec![w(6), w(3)]),
        Indefinite => return None,
    };
    Some(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(ws: &[u32]) -> CoxeterGraph {
        let ws: Vec<Weight> = ws.iter().map(|&m| if m == 0 { Weight::INF } else { Weight::raw(m) }).collect();
        CoxeterGraph::from_linear_symbol(&ws).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_irreducible(&graph_of_type(AffineA(2)).unwrap()), Ok(AffineA(2)));
        assert_eq!(classify_irreducible(&sym(&[4])), Ok(B(2)));
        assert_eq!(classify_irreducible(&sym(&[6, 3])), Ok(AffineG2));
        assert_eq!(classify_irreducible(&sym(&[3, 0, 3])), Ok(Indefinite));
        assert_eq!(classify_irreducible(&sym(&[0])), Ok(AffineA(1)));
        assert_eq!(classify_irreducible(&CoxeterGraph::discrete(0)), Err(ClassifyError::Empty));
        assert_eq!(classify_irreducible(&CoxeterGraph::discrete(2)), Err(ClassifyError::Disconnected));
        assert_eq!(classify_irreducible(&sym(&[3, 4, 3, 3])), Ok(AffineF4));
        assert_eq!(classify_irreducible(&sym(&[3, 3, 4, 3])), Ok(AffineF4));
        assert_eq!(classify_irreducible(&sym(&[4, 3, 3, 4])), Ok(AffineC(4)));
        assert_eq!(classify_irreducible(&sym(&[4, 3, 4, 3])), Ok(Indefinite));
        assert_eq!(classify_irreducible(&sym(&[5, 3, 3, 3])), Ok(Indefinite));
        assert_eq!(classify_irreducible(&sym(&[7])), Ok(I2(7)));
    }

    #[test]
    fn sphericity() {
        assert!(is_spherical(&CoxeterGraph::discrete(3)));
        assert!(is_spherical(&CoxeterGraph::discrete(0)));
        assert!(!is_spherical(&sym(&[3, 0])));
        assert!(!is_spherical(&CoxeterGraph::y_shape(Weight::raw(4), 2, 1).unwrap()));
        let g2 = graph_of_type(AffineG2).unwrap();
        let a1 = graph_of_type(AffineA(1)).unwrap();
        assert_eq!(is_affine(&a1.disjoint_union(&g2)), Ok(true));
        let a2 = graph_of_type(A(2)).unwrap();
        assert_eq!(is_affine(&a2.disjoint_union(&graph_of_type(AffineA(2)).unwrap())), Ok(false));
        assert_eq!(is_affine(&sym(&[4, 4])), Ok(true));
        assert!(is_affine(&CoxeterGraph::discrete(0)).is_err());
    }

    #[test]
    fn exponent_table() {
        assert_eq!(exponents(A(3)).unwrap(), vec![1, 2, 3]);
        assert_eq!(exponents(I2(3)).unwrap(), exponents(A(2)).unwrap());
        assert_eq!(exponents(I2(4)).unwrap(), exponents(B(2)).unwrap());
        assert_eq!(exponents(H3).unwrap(), vec![1, 5, 9]);
        assert_eq!(exponents(D(4)).unwrap(), vec![1, 3, 3, 5]);
        assert_eq!(ExponentTable::standard().order(H3).unwrap(), 120);
        assert_eq!(ExponentTable::standard().order(E8).unwrap(), 696_729_600);
        assert!(matches!(exponents(AffineG2), Err(ClassifyError::NotSpherical(_))));
        assert!(exponents(D(3)).is_err());
    }

    #[test]
    fn round_trip_all_labels() {
        let mut labels = vec![E6, E7, E8, F4, H3, H4, AffineE6, AffineE7, AffineE8, AffineF4, AffineG2, AffineA(1)];
        for n in 1..=9 {
            labels.push(A(n));
        }
        for n in 2..=9 {
            labels.push(B(n));
            labels.push(AffineA(n));
            labels.push(AffineC(n));
        }
        for n in 3..=9 {
            labels.push(AffineB(n));
        }
        for n in 4..=9 {
            labels.push(D(n));
            labels.push(AffineD(n));
        }
        for m in 5..=12 {
            labels.push(I2(m));
        }
        for t in labels {
            let g = graph_of_type(t).unwrap();
            assert_eq!(g.order(), t.order().unwrap(), "{t}");
            assert_eq!(classify_irreducible(&g), Ok(t), "{t}");
            assert!(t.is_spherical() != t.is_affine());
            // relabelling invariance
            let n = g.order();
            let perm: Vec<usize> = (0..n).map(|i| (i * 7 + 3) % n).collect();
            if perm.iter().collect::<std::collections::HashSet<_>>().len() == n {
                assert_eq!(classify_irreducible(&g.permute(&perm)), Ok(t), "{t} permuted");
            }
        }
    }
}
