//! Growth series via Steinberg's formula and growth rates from its poles.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::classify::{component_types, ClassifyError, ExponentTable, IrreducibleType};
use crate::cox::{CoxeterGraph, NodeSubset};
use crate::poly::{
    bracket_product, cyclotomic, sign_at, smallest_positive_root, IntPoly, PolyError, RatFunc, RootInterval,
    SturmSequence,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrowthError {
    #[error("the group is finite and has no growth rate")]
    Finite,
    #[error("denominator has no pole in (0, 1)")]
    NoPole,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

/// A subset of generators spanning a finite special subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteSubsetRecord {
    pub subset: NodeSubset,
    /// Component labels, sorted.
    pub types: Vec<IrreducibleType>,
    /// Bracket arguments `m_i + 1` over all exponents, sorted.
    pub brackets: Vec<u32>,
    #[serde(skip)]
    pub poincare: IntPoly,
}

impl FiniteSubsetRecord {
    pub fn sign(&self) -> i32 {
        if self.subset.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

pub fn finite_subsets(g: &CoxeterGraph) -> Vec<FiniteSubsetRecord> {
    finite_subsets_with(g, &ExponentTable::standard()).expect("standard exponent table")
}

/// Every `T` (including the empty set) whose induced subgraph is spherical,
/// ordered by bitmask.
pub fn finite_subsets_with(g: &CoxeterGraph, table: &ExponentTable) -> Result<Vec<FiniteSubsetRecord>, GrowthError> {
    let mut memo: HashMap<Vec<IrreducibleType>, (Vec<u32>, IntPoly)> = HashMap::new();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
    while let Some(nodes) = stack.pop() {
        let sub = g.induced_unchecked(&nodes);
        let mut types = component_types(&sub);
        if !types.iter().all(|t| t.is_spherical()) {
            continue;
        }
        types.sort_unstable();
        let (brackets, poincare) = match memo.get(&types) {
            Some(v) => v.clone(),
            None => {
                let mut b = Vec::new();
                for &t in &types {
                    b.extend(table.exponents(t)?.iter().map(|m| m + 1));
                }
                b.sort_unstable();
                let p = bracket_product(&b)?;
                memo.insert(types.clone(), (b.clone(), p.clone()));
                (b, p)
            }
        };
        let start = nodes.last().map_or(0, |&m| m + 1);
        for j in start..g.order() {
            let mut next = nodes.clone();
            next.push(j);
            stack.push(next);
        }
        out.push(FiniteSubsetRecord { subset: NodeSubset::new(nodes), types, brackets, poincare });
    }
    out.sort_by_key(|r| r.subset.mask());
    Ok(out)
}

/// Multiplicity of each bracket list among the finite subsets.
pub fn term_multiset(records: &[FiniteSubsetRecord]) -> BTreeMap<Vec<u32>, usize> {
    let mut m = BTreeMap::new();
    for r in records {
        *m.entry(r.brackets.iter().copied().filter(|&k| k > 1).collect()).or_insert(0) += 1;
    }
    m
}

fn divisors_above_one(k: u32) -> impl Iterator<Item = u32> {
    (2..=k).filter(move |d| k.is_multiple_of(*d))
}

/// `Σ_T (-1)^|T| / f_T(t)`, reduced.
pub fn steinberg(g: &CoxeterGraph) -> RatFunc {
    steinberg_with(g, &ExponentTable::standard()).expect("standard exponent table")
}

/// Steinberg sum with an explicit exponent table.
///
/// Every `f_T` is a product of cyclotomic polynomials, so the sum is taken
/// over their least common multiple and reduced by trial division.
pub fn steinberg_with(g: &CoxeterGraph, table: &ExponentTable) -> Result<RatFunc, GrowthError> {
    let records = finite_subsets_with(g, table)?;
    // signed multiplicity per distinct Poincaré polynomial
    let mut terms: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
    for r in &records {
        *terms.entry(r.brackets.clone()).or_insert(0) += r.sign() as i64;
    }
    let exps: Vec<(BTreeMap<u32, u32>, i64)> = terms
        .into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|(b, c)| {
            let mut e = BTreeMap::new();
            for k in b {
                for d in divisors_above_one(k) {
                    *e.entry(d).or_insert(0) += 1;
                }
            }
            (e, c)
        })
        .collect();
    let mut top: BTreeMap<u32, u32> = BTreeMap::new();
    for (e, _) in &exps {
        for (&d, &k) in e {
            let t = top.entry(d).or_insert(0);
            *t = (*t).max(k);
        }
    }
    let mut powers: HashMap<(u32, u32), IntPoly> = HashMap::new();
    let mut power =
        |d: u32, k: u32| -> IntPoly { powers.entry((d, k)).or_insert_with(|| cyclotomic(d).pow(k)).clone() };
    let mut num = IntPoly::zero();
    for (e, c) in &exps {
        let mut term = IntPoly::constant(BigInt::from(*c));
        for (&d, &k) in &top {
            let missing = k - e.get(&d).copied().unwrap_or(0);
            if missing > 0 {
                term = &term * &power(d, missing);
            }
        }
        num = &num + &term;
    }
    if num.is_zero() {
        return Ok(RatFunc::zero());
    }
    let mut den = IntPoly::one();
    for (&d, &k) in &top {
        let phi = cyclotomic(d);
        let mut k = k;
        while k > 0 {
            match num.div_exact(&phi) {
                Some(q) => {
                    num = q;
                    k -= 1;
                }
                None => break,
            }
        }
        if k > 0 {
            den = &den * &power(d, k);
        }
    }
    Ok(RatFunc::from_coprime(num, den))
}

/// The same sum computed term by term with generic rational-function
/// arithmetic; slow, kept as an independent check.
pub fn steinberg_naive(g: &CoxeterGraph) -> RatFunc {
    let mut acc = RatFunc::zero();
    for r in finite_subsets(g) {
        let mut term = RatFunc::recip_poly(&r.poincare).expect("nonzero Poincaré polynomial");
        if r.sign() < 0 {
            term = -&term;
        }
        acc = &acc + &term;
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthSeries {
    /// `f_S(t)`.
    pub f: RatFunc,
    /// `1 / f_S(1/t)`.
    pub steinberg: RatFunc,
}

pub fn growth_series(g: &CoxeterGraph) -> GrowthSeries {
    growth_series_with(g, &ExponentTable::standard()).expect("standard exponent table")
}

pub fn growth_series_with(g: &CoxeterGraph, table: &ExponentTable) -> Result<GrowthSeries, GrowthError> {
    let st = steinberg_with(g, table)?;
    let f = invert_steinberg(&st)?;
    Ok(GrowthSeries { f, steinberg: st })
}

/// Recovers `f(t)` from `h(t) = 1/f(1/t) = N/D` as
/// `rev(D) t^deg N / (rev(N) t^deg D)`.
fn invert_steinberg(st: &RatFunc) -> Result<RatFunc, GrowthError> {
    let (n, d) = (st.num(), st.den());
    let dn = n.degree().ok_or(PolyError::DivisionByZero)?;
    let dd = d.degree().unwrap();
    let (mut num, mut den) = (d.reverse(), n.reverse());
    if dn >= dd {
        num = num.shift(dn - dd);
    } else {
        den = den.shift(dd - dn);
    }
    // rev N and rev D stay coprime, and neither vanishes at 0
    Ok(RatFunc::from_coprime(num, den))
}

/// Growth rate of an infinite Coxeter group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GrowthRate {
    /// Polynomial growth: every component is spherical or affine.
    Unit,
    /// `rate = 1 / radius`, with `radius` the smallest pole of `f_S` in (0, 1).
    Exponential { radius: RootInterval, rate: RootInterval },
}

impl GrowthRate {
    pub fn value_f64(&self) -> f64 {
        match self {
            GrowthRate::Unit => 1.0,
            GrowthRate::Exponential { rate, .. } => rate.midpoint_f64(),
        }
    }

    pub fn rate_interval(&self) -> Option<&RootInterval> {
        match self {
            GrowthRate::Unit => None,
            GrowthRate::Exponential { rate, .. } => Some(rate),
        }
    }

    /// Certified comparison of two rates.
    pub fn compare(&self, other: &GrowthRate) -> Ordering {
        match (self, other) {
            (GrowthRate::Unit, GrowthRate::Unit) => Ordering::Equal,
            (GrowthRate::Unit, _) => Ordering::Less,
            (_, GrowthRate::Unit) => Ordering::Greater,
            (GrowthRate::Exponential { radius: a, .. }, GrowthRate::Exponential { radius: b, .. }) => b.compare(a),
        }
    }

    /// Lower and upper bounds of the rate as floats.
    pub fn bounds_f64(&self) -> (f64, f64) {
        match self {
            GrowthRate::Unit => (1.0, 1.0),
            GrowthRate::Exponential { rate, .. } => {
                (crate::poly::rational_to_f64(rate.lo()), crate::poly::rational_to_f64(rate.hi()))
            }
        }
    }
}

pub fn growth_rate(g: &CoxeterGraph, eps: &BigRational) -> Result<GrowthRate, GrowthError> {
    growth_rate_with(g, eps, &ExponentTable::standard())
}

pub fn growth_rate_with(g: &CoxeterGraph, eps: &BigRational, table: &ExponentTable) -> Result<GrowthRate, GrowthError> {
    let types = component_types(g);
    if types.iter().all(|t| t.is_spherical()) {
        return Err(GrowthError::Finite);
    }
    if types.iter().all(|t| t.is_spherical() || t.is_affine()) {
        return Ok(GrowthRate::Unit);
    }
    let series = growth_series_with(g, table)?;
    rate_from_denominator(series.f.den(), eps)
}

/// Exponential rate from the denominator of `f_S`: the smallest root in (0, 1).
pub fn rate_from_denominator(den: &IntPoly, eps: &BigRational) -> Result<GrowthRate, GrowthError> {
    let one = BigRational::one();
    let mut radius = match smallest_positive_root(den, eps) {
        Ok(r) => r,
        Err(PolyError::NoPositiveRoot) => return Err(GrowthError::NoPole),
        Err(e) => return Err(e.into()),
    };
    if radius.hi() >= &one {
        // decide whether any root lies strictly inside (0, 1)
        let sf = radius.poly().clone();
        let mut inside = SturmSequence::new(&sf).count(&BigRational::zero(), &one);
        if sign_at(&sf, &one) == 0 {
            inside -= 1;
        }
        if inside == 0 {
            return Err(GrowthError::NoPole);
        }
        while radius.hi() >= &one {
            let w = radius.width() / BigRational::from_integer(BigInt::from(2));
            radius.refine(&w);
        }
    }
    let rate = radius.reciprocal();
    Ok(GrowthRate::Exponential { radius, rate })
}

/// Coefficients `a_0..=a_k` of the growth series.
pub fn series_coeffs(g: &CoxeterGraph, k: usize) -> Vec<BigInt> {
    growth_series(g).f.series(k).expect("f_S(0) = 1")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{exponents, graph_of_type, is_spherical, IrreducibleType::*};
    use crate::cox::Weight;
    use crate::poly::{default_eps, rational_to_f64};

    fn sym(ws: &[u32]) -> CoxeterGraph {
        let ws: Vec<Weight> = ws.iter().map(|&m| if m == 0 { Weight::INF } else { Weight::raw(m) }).collect();
        CoxeterGraph::from_linear_symbol(&ws).unwrap()
    }

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    fn rate(g: &CoxeterGraph) -> f64 {
        growth_rate(g, &default_eps()).unwrap().value_f64()
    }

    fn multiset(pairs: &[(&[u32], usize)]) -> BTreeMap<Vec<u32>, usize> {
        pairs.iter().map(|(b, c)| (b.to_vec(), *c)).collect()
    }

    #[test]
    fn subset_terms() {
        let w0 = sym(&[0, 3, 3]);
        let want = multiset(&[(&[], 1), (&[2], 4), (&[2, 2], 3), (&[2, 3], 2), (&[2, 2, 3], 1), (&[2, 3, 4], 1)]);
        assert_eq!(term_multiset(&finite_subsets(&w0)), want);
        let w2 = CoxeterGraph::y_shape(Weight::INF, 1, 1).unwrap();
        let want = multiset(&[(&[], 1), (&[2], 4), (&[2, 2], 3), (&[2, 3], 2), (&[2, 2, 2], 1), (&[2, 3, 4], 1)]);
        assert_eq!(term_multiset(&finite_subsets(&w2)), want);
        let one = finite_subsets(&CoxeterGraph::discrete(1));
        assert_eq!(one.len(), 2);
        assert!(finite_subsets(&w0).windows(2).all(|w| w[0].subset.mask() < w[1].subset.mask()));
    }

    #[test]
    fn steinberg_examples() {
        let g2 = sym(&[3, 0]);
        // t (t^3 - t - 1) / ((1 + t)^2 (1 + t + t^2))
        let want = RatFunc::new(p(&[0, -1, -1, 0, 1]), &(&p(&[1, 1]) * &p(&[1, 1])) * &p(&[1, 1, 1])).unwrap();
        assert_eq!(steinberg(&g2), want);
        assert_eq!(steinberg(&CoxeterGraph::discrete(1)), RatFunc::new(p(&[0, 1]), p(&[1, 1])).unwrap());
        for g in [sym(&[0, 3, 3]), sym(&[3, 0, 3]), sym(&[6, 3, 3]), sym(&[3, 4, 3, 3, 3])] {
            assert_eq!(steinberg(&g), steinberg_naive(&g));
        }
    }

    #[test]
    fn finite_groups() {
        let a3 = sym(&[3, 3]);
        let s = growth_series(&a3);
        assert_eq!(s.f.as_poly(), Some(bracket_product(&[2, 3, 4]).unwrap()));
        assert_eq!(s.f.num().eval_i64(1), BigInt::from(24));
        let s = growth_series(&CoxeterGraph::discrete(2));
        assert_eq!(s.f.as_poly(), Some(bracket_product(&[2, 2]).unwrap()));
        assert_eq!(growth_rate(&a3, &default_eps()), Err(GrowthError::Finite));
        assert_eq!(growth_series(&CoxeterGraph::discrete(0)).f, RatFunc::one());
    }

    #[test]
    fn solomon_agrees_with_steinberg() {
        let types = [A(1), A(2), A(3), A(4), B(2), B(3), B(4), D(4), F4, H3, H4, I2(5), I2(6), I2(8)];
        for t in types {
            let g = graph_of_type(t).unwrap();
            let f = bracket_product(&exponents(t).unwrap().iter().map(|m| m + 1).collect::<Vec<_>>()).unwrap();
            let series = growth_series(&g);
            assert_eq!(series.f.as_poly().as_ref(), Some(&f), "{t}");
            let d = f.degree().unwrap();
            let st = RatFunc::new(IntPoly::monomial(d), f.clone()).unwrap();
            assert_eq!(series.steinberg, st, "{t}");
        }
    }

    #[test]
    fn rates() {
        let plastic = 1.324_717_957_244_746;
        assert!((rate(&sym(&[3, 0])) - plastic).abs() < 1e-11);
        // the printed 1.2964 truncates 1.296466...
        assert!((rate(&sym(&[6, 3, 3])) - 1.296_466_238_78).abs() < 1e-10);
        // 1 / root of t^3 + t - 1
        assert!((rate(&sym(&[0, 3, 3])) - 1.465_571_231_876_768).abs() < 1e-10);
        assert_eq!(growth_rate(&sym(&[6, 3]), &default_eps()), Ok(GrowthRate::Unit));
        let mixed = sym(&[4, 4]).disjoint_union(&sym(&[3]));
        assert_eq!(growth_rate(&mixed, &default_eps()), Ok(GrowthRate::Unit));
        // reducible: the faster factor wins
        let prod = sym(&[3, 0]).disjoint_union(&sym(&[0, 3, 3]));
        assert!((rate(&prod) - rate(&sym(&[0, 3, 3]))).abs() < 1e-10);
        let r = growth_rate(&sym(&[0, 3, 3]), &default_eps()).unwrap();
        let GrowthRate::Exponential { radius, .. } = &r else { panic!() };
        assert!(rational_to_f64(&radius.width()) <= 1e-12);
    }

    #[test]
    fn series_shape() {
        let c: Vec<i64> = series_coeffs(&sym(&[3]), 5).iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(c, vec![1, 2, 2, 1, 0, 0]);
        for g in [sym(&[3, 0]), sym(&[6, 3, 3]), sym(&[0, 3, 3])] {
            let c = series_coeffs(&g, 10);
            assert_eq!(c[0], BigInt::one());
            assert_eq!(c[1], BigInt::from(g.order()));
            assert!(c.iter().all(|x| x >= &BigInt::zero()));
            let GrowthSeries { f, steinberg } = growth_series(&g);
            // equal degrees unless sum (-1)^|T| vanishes, which lowers the denominator
            let drop = steinberg.num().low_order();
            assert_eq!(f.num().degree(), f.den().degree().map(|d| d + drop));
            assert!(f.num().leading().unwrap().abs() == BigInt::one());
            assert!(f.den().leading().unwrap().abs() == BigInt::one());
            assert!(!is_spherical(&g));
        }
    }

    use num_traits::Signed;
}
