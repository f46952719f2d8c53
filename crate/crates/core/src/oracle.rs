//! Brute-force cross-checks through the exact Tits representation.
//!
//! Generator `s_i` acts on the root space by `v ↦ v - 2 B(e_i, v) e_i`
//! with `B(e_i, e_j) = -cos(π/m_ij)` (and `-1` for `m = ∞`). Group elements
//! are exact matrices over `Q(√2, √3, √5)`, so the word counts found by
//! breadth-first search are ground truth.

use std::collections::HashSet;

use thiserror::Error;

use crate::algnum::AlgNum;
use crate::cox::CoxeterGraph;
use crate::par::Exec;
use crate::simplex::{bilinear_entry, SimplexError};

pub const DEFAULT_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Unsupported(#[from] SimplexError),
    #[error("element cap {cap} exceeded at depth {depth}")]
    CapExceeded {
        cap: usize,
        /// Deepest level that was counted completely.
        depth: usize,
        partial: Vec<u64>,
    },
    #[error("relation fails for generators {i} and {j}")]
    Relation { i: usize, j: usize },
}

/// Square matrix over the multiquadratic field, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ReflectionMatrix {
    n: usize,
    a: Vec<AlgNum>,
}

impl ReflectionMatrix {
    pub fn identity(n: usize) -> ReflectionMatrix {
        let mut a = vec![AlgNum::zero(); n * n];
        for i in 0..n {
            a[i * n + i] = AlgNum::one();
        }
        ReflectionMatrix { n, a }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &AlgNum {
        &self.a[i * self.n + j]
    }

    pub fn is_identity(&self) -> bool {
        *self == ReflectionMatrix::identity(self.n)
    }

    pub fn mul(&self, other: &ReflectionMatrix) -> ReflectionMatrix {
        let n = self.n;
        let mut a = vec![AlgNum::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let x = self.get(i, k);
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let y = other.get(k, j);
                    if !y.is_zero() {
                        a[i * n + j] = &a[i * n + j] + &(x * y);
                    }
                }
            }
        }
        ReflectionMatrix { n, a }
    }

    pub fn pow(&self, k: u32) -> ReflectionMatrix {
        (0..k).fold(ReflectionMatrix::identity(self.n), |acc, _| acc.mul(self))
    }
}

impl std::fmt::Debug for ReflectionMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<Vec<String>> =
            (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j).to_string()).collect()).collect();
        write!(f, "{rows:?}")
    }
}

/// The bilinear form `B` and the generator matrices of the representation.
pub struct TitsRepresentation {
    b: Vec<Vec<AlgNum>>,
    generators: Vec<ReflectionMatrix>,
}

pub fn tits_representation(g: &CoxeterGraph) -> Result<TitsRepresentation, OracleError> {
    let n = g.order();
    let mut b = vec![vec![AlgNum::zero(); n]; n];
    for (i, row) in b.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = if i == j { AlgNum::one() } else { bilinear_entry(g.weight(i, j))? };
        }
    }
    let two = AlgNum::from_ratio(2, 1);
    let generators = (0..n)
        .map(|i| {
            // column j is s_i(e_j) = e_j - 2 B_ij e_i
            let mut m = ReflectionMatrix::identity(n);
            for j in 0..n {
                let v = &m.a[i * n + j] - &(&two * &b[i][j]);
                m.a[i * n + j] = v;
            }
            m
        })
        .collect();
    Ok(TitsRepresentation { b, generators })
}

impl TitsRepresentation {
    pub fn generators(&self) -> &[ReflectionMatrix] {
        &self.generators
    }

    /// `s_i · m`, touching only row `i`.
    fn left_apply(&self, i: usize, m: &ReflectionMatrix) -> ReflectionMatrix {
        let n = m.n;
        let two = AlgNum::from_ratio(2, 1);
        let mut out = m.clone();
        for c in 0..n {
            let mut acc = AlgNum::zero();
            for j in 0..n {
                let bij = &self.b[i][j];
                let x = m.get(j, c);
                if !bij.is_zero() && !x.is_zero() {
                    acc = &acc + &(bij * x);
                }
            }
            out.a[i * n + c] = m.get(i, c) - &(&two * &acc);
        }
        out
    }

    /// Checks `s_i² = 1` and that `s_i s_j` has order exactly `m_ij`
    /// (no return to the identity within `probe` steps for `m = ∞`).
    pub fn check_relations(&self, g: &CoxeterGraph, probe: u32) -> Result<(), OracleError> {
        let n = g.order();
        for i in 0..n {
            if !self.generators[i].mul(&self.generators[i]).is_identity() {
                return Err(OracleError::Relation { i, j: i });
            }
            for j in i + 1..n {
                let p = self.generators[i].mul(&self.generators[j]);
                let limit = g.weight(i, j).finite().unwrap_or(probe + 1);
                let mut acc = p.clone();
                for k in 1..=limit.min(probe) {
                    let hit = acc.is_identity();
                    if hit != (k == limit) {
                        return Err(OracleError::Relation { i, j });
                    }
                    acc = acc.mul(&p);
                }
            }
        }
        Ok(())
    }
}

/// Number of group elements of each length `0..=k`, or of every length
/// when `k` is `None` (finite groups only).
fn bfs(g: &CoxeterGraph, k: Option<usize>, cap: usize, exec: Exec) -> Result<Vec<u64>, OracleError> {
    let rep = tits_representation(g)?;
    let n = g.order();
    let mut counts = vec![1u64];
    let mut prev: HashSet<ReflectionMatrix> = HashSet::new();
    let mut cur: HashSet<ReflectionMatrix> = HashSet::from([ReflectionMatrix::identity(n)]);
    let mut total = 1usize;
    while k.is_none_or(|k| counts.len() <= k) {
        let frontier: Vec<&ReflectionMatrix> = cur.iter().collect();
        let candidates = exec.flat_map(&frontier, |m| (0..n).map(|i| rep.left_apply(i, m)).collect());
        // neighbours of a length-l element have length l - 1 or l + 1
        let mut next = HashSet::new();
        for c in candidates {
            if !prev.contains(&c) {
                next.insert(c);
            }
        }
        if next.is_empty() {
            break;
        }
        total += next.len();
        if total > cap {
            let depth = counts.len() - 1;
            return Err(OracleError::CapExceeded { cap, depth, partial: counts });
        }
        counts.push(next.len() as u64);
        prev = std::mem::replace(&mut cur, next);
    }
    if let Some(k) = k {
        counts.resize(k + 1, 0);
    }
    Ok(counts)
}

/// Word counts `a_0..=a_k` by breadth-first search.
pub fn bfs_counts(g: &CoxeterGraph, k: usize, cap: usize, exec: Exec) -> Result<Vec<u64>, OracleError> {
    bfs(g, Some(k), cap, exec)
}

/// Size of the group, if it closes up within `cap` elements.
pub fn group_order(g: &CoxeterGraph, cap: usize, exec: Exec) -> Result<u64, OracleError> {
    Ok(bfs(g, None, cap, exec)?.iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{graph_of_type, IrreducibleType::*};
    use crate::cox::Weight;

    fn sym(ws: &[u32]) -> CoxeterGraph {
        let ws: Vec<Weight> = ws.iter().map(|&m| if m == 0 { Weight::INF } else { Weight::raw(m) }).collect();
        CoxeterGraph::from_linear_symbol(&ws).unwrap()
    }

    #[test]
    fn generators() {
        let rep = tits_representation(&CoxeterGraph::discrete(1)).unwrap();
        assert_eq!(rep.generators()[0].get(0, 0), &AlgNum::from_ratio(-1, 1));
        let a2 = sym(&[3]);
        let rep = tits_representation(&a2).unwrap();
        let p = rep.generators()[0].mul(&rep.generators()[1]);
        assert!(p.pow(3).is_identity());
        assert!(!p.is_identity());
        let a1 = graph_of_type(AffineA(1)).unwrap();
        let rep = tits_representation(&a1).unwrap();
        rep.check_relations(&a1, 50).unwrap();
        for g in [sym(&[5, 3]), sym(&[6, 3, 3]), sym(&[4, 3, 4])] {
            tits_representation(&g).unwrap().check_relations(&g, 20).unwrap();
        }
        assert!(tits_representation(&sym(&[7])).is_err());
    }

    #[test]
    fn small_counts() {
        assert_eq!(bfs_counts(&sym(&[3]), 3, DEFAULT_CAP, Exec::Sequential).unwrap(), vec![1, 2, 2, 1]);
        assert_eq!(bfs_counts(&sym(&[3]), 5, DEFAULT_CAP, Exec::Sequential).unwrap(), vec![1, 2, 2, 1, 0, 0]);
        assert_eq!(group_order(&sym(&[3, 3]), DEFAULT_CAP, Exec::Parallel).unwrap(), 24);
        assert_eq!(group_order(&sym(&[4, 3]), DEFAULT_CAP, Exec::Parallel).unwrap(), 48);
        assert_eq!(group_order(&sym(&[5, 3]), DEFAULT_CAP, Exec::Parallel).unwrap(), 120);
        let a2 = graph_of_type(AffineA(2)).unwrap();
        match group_order(&a2, 500, Exec::Sequential) {
            Err(OracleError::CapExceeded { cap: 500, depth, partial }) => {
                assert_eq!(partial.len(), depth + 1);
                // ~A2 has 3k elements of length k >= 1
                assert_eq!(partial[1..], (1..=depth as u64).map(|k| 3 * k).collect::<Vec<_>>()[..]);
            }
            other => panic!("{other:?}"),
        }
    }
}
