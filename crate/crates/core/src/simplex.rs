//! Gram matrices, exact signatures and volume classes of Coxeter simplices.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::algnum::AlgNum;
use crate::classify::{component_types, IrreducibleType};
use crate::cox::{CoxeterGraph, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplexError {
    #[error("weight {0} has no exact cosine in Q(sqrt2, sqrt3, sqrt5)")]
    UnsupportedWeight(Weight),
    #[error("the graph is disconnected")]
    Disconnected,
    #[error("signature {0:?} is neither definite, semidefinite nor Lorentzian")]
    NotHyperbolic(Signature),
    #[error("partitions need n >= 3, got {0}")]
    SmallDimension(usize),
}

/// `B(e_i, e_j) = -cos(π/m_ij)`, with `-1` for an `inf` edge.
pub fn bilinear_entry(m: Weight) -> Result<AlgNum, SimplexError> {
    if m.is_inf() {
        return Ok(AlgNum::from_ratio(-1, 1));
    }
    let c = m.finite().and_then(AlgNum::cos_pi_over).ok_or(SimplexError::UnsupportedWeight(m))?;
    Ok(-&c)
}

#[derive(Clone, PartialEq, Eq)]
pub struct GramMatrix {
    n: usize,
    a: Vec<AlgNum>,
}

impl GramMatrix {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &AlgNum {
        &self.a[i * self.n + j]
    }
}

impl fmt::Debug for GramMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GramMatrix {}x{}", self.n, self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub fn gram(g: &CoxeterGraph) -> Result<GramMatrix, SimplexError> {
    let n = g.order();
    let mut a = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            a.push(if i == j { AlgNum::one() } else { bilinear_entry(g.weight(i, j))? });
        }
    }
    Ok(GramMatrix { n, a })
}

/// Inertia `(positive, negative, zero)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Signature {
    pub plus: usize,
    pub minus: usize,
    pub zero: usize,
}

/// Inertia by symmetric Gaussian elimination over the field.
///
/// A zero pivot is replaced by adding a row and column with a nonzero
/// off-diagonal entry `a_ij`, which puts `2 a_ij` on the diagonal.
pub fn signature(m: &GramMatrix) -> Signature {
    let mut a: Vec<Vec<AlgNum>> = (0..m.n).map(|i| (0..m.n).map(|j| m.get(i, j).clone()).collect()).collect();
    let mut sig = Signature { plus: 0, minus: 0, zero: 0 };
    while !a.is_empty() {
        let k = a.len();
        let pivot = match (0..k).find(|&i| !a[i][i].is_zero()) {
            Some(p) => p,
            None => match (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero()) {
                Some((i, j)) => {
                    for r in 0..k {
                        let v = a[r][j].clone();
                        a[r][i] = &a[r][i] + &v;
                    }
                    for c in 0..k {
                        let v = a[j][c].clone();
                        a[i][c] = &a[i][c] + &v;
                    }
                    i
                }
                None => {
                    sig.zero += k;
                    break;
                }
            },
        };
        let p = a[pivot][pivot].clone();
        match p.sign() {
            1 => sig.plus += 1,
            _ => sig.minus += 1,
        }
        let inv = p.inverse().expect("nonzero pivot");
        let rest: Vec<usize> = (0..k).filter(|&i| i != pivot).collect();
        let mut next = Vec::with_capacity(k - 1);
        for &r in &rest {
            let f = &a[r][pivot] * &inv;
            let row: Vec<AlgNum> = rest
                .iter()
                .map(|&c| if f.is_zero() { a[r][c].clone() } else { &a[r][c] - &(&f * &a[pivot][c]) })
                .collect();
            next.push(row);
        }
        a = next;
    }
    sig
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum VolumeClass {
    Spherical,
    Affine,
    CompactHyperbolic,
    FiniteVolumeNoncompact,
    InfiniteVolume,
}

impl fmt::Display for VolumeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VolumeClass::Spherical => "SPHERICAL",
            VolumeClass::Affine => "AFFINE",
            VolumeClass::CompactHyperbolic => "COMPACT_HYPERBOLIC",
            VolumeClass::FiniteVolumeNoncompact => "FINITE_VOLUME_NONCOMPACT",
            VolumeClass::InfiniteVolume => "INFINITE_VOLUME",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LinkKind {
    Spherical,
    Affine,
    Other,
}

/// The subgraph left after deleting one node, i.e. the link of the opposite vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexLink {
    pub deleted: usize,
    pub kind: LinkKind,
    pub types: Vec<IrreducibleType>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplexReport {
    pub class: VolumeClass,
    pub signature: Signature,
    pub links: Vec<VertexLink>,
}

fn link_kind(types: &[IrreducibleType]) -> LinkKind {
    if types.iter().all(|t| t.is_spherical()) {
        LinkKind::Spherical
    } else if !types.is_empty() && types.iter().all(|t| t.is_affine()) {
        LinkKind::Affine
    } else {
        LinkKind::Other
    }
}

pub fn simplex_class(g: &CoxeterGraph) -> Result<SimplexReport, SimplexError> {
    if !g.is_connected() {
        return Err(SimplexError::Disconnected);
    }
    let own = component_types(g);
    let n = g.order();
    // spherical and affine graphs have known signatures, and their Gram
    // entries may lie outside the supported number field
    let sig = match link_kind(&own) {
        LinkKind::Spherical => Signature { plus: n, minus: 0, zero: 0 },
        LinkKind::Affine => Signature { plus: n - own.len(), minus: 0, zero: own.len() },
        LinkKind::Other => signature(&gram(g)?),
    };
    let links: Vec<VertexLink> = (0..g.order())
        .map(|v| {
            let types = component_types(&g.delete_node(v));
            VertexLink { deleted: v, kind: link_kind(&types), types }
        })
        .collect();
    let class = match link_kind(&own) {
        LinkKind::Spherical => VolumeClass::Spherical,
        LinkKind::Affine => VolumeClass::Affine,
        LinkKind::Other => {
            if sig.minus != 1 || sig.zero != 0 {
                return Err(SimplexError::NotHyperbolic(sig));
            }
            if links.iter().all(|l| l.kind == LinkKind::Spherical) {
                VolumeClass::CompactHyperbolic
            } else if links.iter().all(|l| l.kind != LinkKind::Other) {
                VolumeClass::FiniteVolumeNoncompact
            } else {
                VolumeClass::InfiniteVolume
            }
        }
    };
    Ok(SimplexReport { class, signature: sig, links })
}

/// Multisets `{k_1, .., k_c}` with `c >= 2`, every `k_i >= 3` and
/// `Σ (k_i - 1) = n - 1`: the orders of the components of a reducible
/// affine vertex link of an `n`-dimensional polyhedron, none of order 2.
///
/// Each multiset is ascending; the list is ordered by size, then
/// lexicographically.
pub fn ideal_link_partitions(n: usize) -> Result<Vec<Vec<usize>>, SimplexError> {
    if n < 3 {
        return Err(SimplexError::SmallDimension(n));
    }
    fn go(rest: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            if cur.len() >= 2 {
                out.push(cur.clone());
            }
            return;
        }
        // a part k contributes k - 1
        for k in min..=rest + 1 {
            cur.push(k);
            go(rest - (k - 1), k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n - 1, 3, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}
