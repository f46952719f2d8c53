//! Dominance embeddings, one-node extensions and minimal-rate selection.
//!
//! If the nodes of `a` inject into the nodes of `b` without ever decreasing
//! an edge weight, the growth rate of `a` is at most that of `b`.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_rational::BigRational;
use thiserror::Error;

use crate::classify::ExponentTable;
use crate::cox::{CoxeterGraph, Weight};
use crate::growth::{growth_rate_with, GrowthError, GrowthRate};
use crate::par::Exec;
use crate::poly::RootInterval;

/// Node `i` of the source graph goes to node `map[i]` of the target.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    /// Checks injectivity and the weight condition directly.
    pub fn is_valid(&self, a: &CoxeterGraph, b: &CoxeterGraph) -> bool {
        if self.map.len() != a.order() || self.map.iter().any(|&x| x >= b.order()) {
            return false;
        }
        let distinct: BTreeSet<_> = self.map.iter().collect();
        if distinct.len() != self.map.len() {
            return false;
        }
        (0..a.order()).all(|i| (i + 1..a.order()).all(|j| a.weight(i, j) <= b.weight(self.map[i], self.map[j])))
    }
}

/// Incident weights above 2, largest first.
fn profile(g: &CoxeterGraph, v: usize) -> Vec<Weight> {
    let mut ws: Vec<Weight> = g.neighbours(v).map(|u| g.weight(v, u)).collect();
    ws.sort_unstable_by(|x, y| y.cmp(x));
    ws
}

fn profile_covers(big: &[Weight], small: &[Weight]) -> bool {
    big.len() >= small.len() && small.iter().zip(big).all(|(s, b)| s <= b)
}

/// Lexicographically first embedding of `a` into `b`, if any.
pub fn dominates(a: &CoxeterGraph, b: &CoxeterGraph) -> Option<Embedding> {
    let (na, nb) = (a.order(), b.order());
    if na > nb {
        return None;
    }
    let pa: Vec<_> = (0..na).map(|v| profile(a, v)).collect();
    let pb: Vec<_> = (0..nb).map(|v| profile(b, v)).collect();
    let allowed: Vec<Vec<usize>> =
        (0..na).map(|i| (0..nb).filter(|&j| profile_covers(&pb[j], &pa[i])).collect()).collect();
    if allowed.iter().any(Vec::is_empty) {
        return None;
    }
    let mut map = Vec::with_capacity(na);
    let mut used = vec![false; nb];
    if search(a, b, &allowed, &mut map, &mut used) {
        Some(Embedding { map })
    } else {
        None
    }
}

fn search(a: &CoxeterGraph, b: &CoxeterGraph, allowed: &[Vec<usize>], map: &mut Vec<usize>, used: &mut [bool]) -> bool {
    let i = map.len();
    if i == a.order() {
        return true;
    }
    for &j in &allowed[i] {
        if used[j] || !(0..i).all(|k| a.weight(k, i) <= b.weight(map[k], j)) {
            continue;
        }
        used[j] = true;
        map.push(j);
        if search(a, b, allowed, map, used) {
            return true;
        }
        map.pop();
        used[j] = false;
    }
    false
}

/// Graphs obtained by joining one new node to a single node of `g` by an
/// edge of weight `m`, up to isomorphism, in canonical order.
pub fn extensions_with_weight(g: &CoxeterGraph, m: Weight) -> Vec<CoxeterGraph> {
    let forms: BTreeSet<_> = (0..g.order()).map(|v| g.with_new_node(&[(v, m)]).canonical_form()).collect();
    forms.iter().map(|cf| cf.to_graph()).collect()
}

/// Simple-edge extensions of `g`, up to isomorphism.
pub fn extensions(g: &CoxeterGraph) -> Vec<CoxeterGraph> {
    extensions_with_weight(g, Weight::THREE)
}

/// Extensions of several graphs, merged up to isomorphism.
pub fn extensions_of_all(gs: &[CoxeterGraph]) -> Vec<CoxeterGraph> {
    let forms: BTreeSet<_> = gs.iter().flat_map(extensions).map(|g| g.canonical_form()).collect();
    forms.iter().map(|cf| cf.to_graph()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompareError {
    #[error("empty graph list")]
    Empty,
    #[error("graph {index}: {source}")]
    Growth { index: usize, source: GrowthError },
    #[error("graph {index} has growth rate 1")]
    UnitRate { index: usize },
}

#[derive(Debug, Clone)]
pub struct Minimum {
    pub index: usize,
    pub graph: CoxeterGraph,
    pub rate: RootInterval,
    /// No other graph in the list attains the same rate.
    pub unique: bool,
}

/// The graph of certified smallest growth rate; exact ties go to the
/// smaller canonical form.
pub fn minimal_rate(gs: &[CoxeterGraph], eps: &BigRational, exec: Exec) -> Result<Minimum, CompareError> {
    minimal_rate_with(gs, eps, &ExponentTable::standard(), exec)
}

pub fn minimal_rate_with(
    gs: &[CoxeterGraph],
    eps: &BigRational,
    table: &ExponentTable,
    exec: Exec,
) -> Result<Minimum, CompareError> {
    if gs.is_empty() {
        return Err(CompareError::Empty);
    }
    let indexed: Vec<(usize, &CoxeterGraph)> = gs.iter().enumerate().collect();
    let rates = exec.map(&indexed, |&(i, g)| match growth_rate_with(g, eps, table) {
        Ok(GrowthRate::Exponential { radius, rate }) => Ok((radius, rate)),
        Ok(GrowthRate::Unit) => Err(CompareError::UnitRate { index: i }),
        Err(source) => Err(CompareError::Growth { index: i, source }),
    });
    let rates = rates.into_iter().collect::<Result<Vec<_>, _>>()?;
    let forms = exec.map(gs, CoxeterGraph::canonical_form);
    let mut best = 0;
    let mut tied = false;
    for i in 1..gs.len() {
        // larger radius means smaller rate
        match rates[best].0.compare(&rates[i].0) {
            Ordering::Less => {
                best = i;
                tied = false;
            }
            Ordering::Equal => {
                tied = true;
                if forms[i] < forms[best] {
                    best = i;
                }
            }
            Ordering::Greater => {}
        }
    }
    Ok(Minimum { index: best, graph: gs[best].clone(), rate: rates[best].1.clone(), unique: !tied })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::classify::{graph_of_type, IrreducibleType::*};
    use crate::poly::default_eps;

    fn sym(ws: &[u32]) -> CoxeterGraph {
        let ws: Vec<Weight> = ws.iter().map(|&m| if m == 0 { Weight::INF } else { Weight::raw(m) }).collect();
        CoxeterGraph::from_linear_symbol(&ws).unwrap()
    }

    #[test]
    fn embeddings() {
        let e = dominates(&sym(&[3, 3]), &sym(&[4, 3])).unwrap();
        assert_eq!(e.map, vec![0, 1, 2]);
        assert!(e.is_valid(&sym(&[3, 3]), &sym(&[4, 3])));
        assert!(dominates(&sym(&[4, 3]), &sym(&[3, 3])).is_none());
        let w0 = catalog::w_group(0).unwrap();
        let w1 = catalog::w_group(1).unwrap();
        let w2 = catalog::w_group(2).unwrap();
        assert!(dominates(&w0, &w1).is_none());
        assert!(dominates(&w0, &w2).is_none());
        let a1 = graph_of_type(AffineA(1)).unwrap();
        for g in [&w0, &w1, &w2] {
            assert!(dominates(&a1, g).is_some());
        }
        // a bigger graph never embeds in a smaller one
        assert!(dominates(&sym(&[3, 3, 3]), &sym(&[6, 6])).is_none());
    }

    #[test]
    fn extension_counts() {
        let per_base = |t| extensions(&graph_of_type(t).unwrap()).len();
        assert_eq!(per_base(AffineA(2)), 1);
        assert_eq!(per_base(AffineC(2)), 2);
        assert_eq!(per_base(AffineG2), 3);
        assert_eq!(per_base(AffineA(3)) + per_base(AffineB(3)) + per_base(AffineC(3)), 6);
        let order5 = [AffineA(4), AffineB(4), AffineC(4), AffineD(4), AffineF4];
        assert_eq!(order5.iter().map(|&t| per_base(t)).sum::<usize>(), 15);
        // ~B4 extended at its 4-end is ~F4 extended at its fourth node
        let gs: Vec<_> = order5.iter().map(|&t| graph_of_type(t).unwrap()).collect();
        assert_eq!(extensions_of_all(&gs).len(), 14);
        let g = graph_of_type(AffineB(3)).unwrap();
        for ext in extensions(&g) {
            assert!(dominates(&g, &ext).is_some());
        }
    }

    #[test]
    fn minimum() {
        let ws: Vec<_> = (0..3).map(|i| catalog::w_group(i).unwrap()).collect();
        let m = minimal_rate(&ws, &default_eps(), Exec::Parallel).unwrap();
        assert_eq!(m.index, 0);
        assert!(m.unique);
        let single = minimal_rate(&ws[1..2], &default_eps(), Exec::Sequential).unwrap();
        assert_eq!(single.index, 0);
        // relabelled copies tie exactly
        let twice = vec![ws[1].clone(), ws[1].permute(&[3, 2, 1, 0])];
        let m = minimal_rate(&twice, &default_eps(), Exec::Sequential).unwrap();
        assert!(!m.unique);
        assert_eq!(minimal_rate(&[], &default_eps(), Exec::Sequential).unwrap_err(), CompareError::Empty);
        let a2 = graph_of_type(AffineA(2)).unwrap();
        assert_eq!(
            minimal_rate(&[a2], &default_eps(), Exec::Sequential).unwrap_err(),
            CompareError::UnitRate { index: 0 }
        );
    }
}
