//! Mechanical re-verification of the computations behind the minimality
//! theorem for simplex groups, as a list of independent named checks.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};
use serde::Serialize;

use crate::catalog;
use crate::classify::{graph_of_type, ExponentTable, IrreducibleType};
use crate::compare::{dominates, extensions, minimal_rate_with};
use crate::corpus::{simplex_corpus, CorpusKind};
use crate::cox::{CoxeterGraph, Weight};
use crate::growth::{finite_subsets_with, growth_rate_with, steinberg_with, term_multiset, GrowthRate};
use crate::par::Exec;
use crate::poly::{bracket_product, default_eps, parse_decimal, IntPoly, RatFunc, RootInterval};
use crate::simplex::{ideal_link_partitions, simplex_class, VolumeClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Reported but not counted against the run.
    Info,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub id: &'static str,
    pub status: Status,
    pub computed: String,
    pub expected: String,
    pub provenance: &'static str,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReplayReport {
    pub checks: Vec<Check>,
}

impl ReplayReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }
}

#[derive(Debug, Clone)]
pub struct ReplayConfig {
    pub eps: BigRational,
    pub table: ExponentTable,
    pub exec: Exec,
}

impl Default for ReplayConfig {
    fn default() -> ReplayConfig {
        ReplayConfig { eps: default_eps(), table: ExponentTable::standard(), exec: Exec::default() }
    }
}

const PUBLISHED: &str = "published value";
const DERIVED: &str = "derived";

struct Outcome {
    status: Status,
    computed: String,
    expected: String,
    provenance: &'static str,
}

fn outcome(ok: bool, computed: String, expected: impl Into<String>, provenance: &'static str) -> Outcome {
    let status = if ok { Status::Pass } else { Status::Fail };
    Outcome { status, computed, expected: expected.into(), provenance }
}

type CheckFn = fn(&ReplayConfig) -> Result<Outcome, String>;

const CHECKS: [(&str, CheckFn); 13] = [
    ("simplex-rates", simplex_rates),
    ("simplex-rate-order", simplex_rate_order),
    ("dim5-below-dim3", dim5_below_dim3),
    ("simplex-minimality", simplex_minimality),
    ("p0-rate", p0_rate),
    ("w0-rate", w0_rate),
    ("w-group-steinberg", w_group_steinberg),
    ("infinite-edge-dominance", infinite_edge_dominance),
    ("rank2-affine-extensions", rank2_extensions),
    ("rank3-affine-extensions", rank3_extensions),
    ("rank4-affine-extensions", rank4_extensions),
    ("ideal-link-partitions", ideal_links),
    ("f4-extension-infinite-volume", f4_extension_volume),
];

pub fn check_ids() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.0).collect()
}

/// Runs every check. Checks may run concurrently; the report order is fixed.
pub fn replay(cfg: &ReplayConfig) -> ReplayReport {
    replay_only(cfg, &check_ids())
}

/// Runs the named checks, in the fixed order. Unknown ids are ignored.
pub fn replay_only(cfg: &ReplayConfig, ids: &[&str]) -> ReplayReport {
    let selected: Vec<(&str, CheckFn)> = CHECKS.iter().filter(|c| ids.contains(&c.0)).copied().collect();
    let checks = cfg.exec.map(&selected, |&(id, f)| {
        let start = Instant::now();
        let out = f(cfg).unwrap_or_else(|e| Outcome {
            status: Status::Fail,
            computed: format!("error: {e}"),
            expected: String::new(),
            provenance: DERIVED,
        });
        Check {
            id,
            status: out.status,
            computed: out.computed,
            expected: out.expected,
            provenance: out.provenance,
            elapsed_ms: start.elapsed().as_millis() as u64,
        }
    });
    ReplayReport { checks }
}

fn rate(cfg: &ReplayConfig, g: &CoxeterGraph) -> Result<GrowthRate, String> {
    growth_rate_with(g, &cfg.eps, &cfg.table).map_err(|e| e.to_string())
}

fn exp_rate(cfg: &ReplayConfig, g: &CoxeterGraph) -> Result<RootInterval, String> {
    match rate(cfg, g)? {
        GrowthRate::Exponential { rate, .. } => Ok(rate),
        GrowthRate::Unit => Err(format!("{g:?} has growth rate 1")),
    }
}

fn show(r: &RootInterval) -> String {
    format!("{:.10}", r.midpoint_f64())
}

/// Whether a certified rate is consistent with a printed decimal, read as
/// either rounded or truncated to its digits.
pub fn printed_digits_match(r: &RootInterval, printed: &str) -> Option<&'static str> {
    let d = parse_decimal(printed)?;
    let k = printed.split_once('.').map_or(0, |(_, f)| f.len());
    let unit = BigRational::one() / BigRational::from_integer(Pow::pow(BigInt::from(10), k));
    let half = &unit / BigRational::from_integer(BigInt::from(2));
    if r.lo() < &(&d - &half) || r.hi() >= &(&d + &unit) {
        return None;
    }
    Some(if r.hi() <= &(&d + &half) { "rounded" } else { "truncated" })
}

fn gamma(n: usize) -> CoxeterGraph {
    catalog::gamma(n).expect("2 <= n <= 9")
}

fn simplex_rates(cfg: &ReplayConfig) -> Result<Outcome, String> {
    let printed = BTreeMap::from([(4, "1.3717"), (5, "1.2481"), (9, "1.1380")]);
    let mut ok = true;
    let mut computed = Vec::new();
    for n in 4..=9 {
        let r = exp_rate(cfg, &gamma(n))?;
        let mut s = format!("Γ{n}={}", show(&r));
        if let Some(p) = printed.get(&n) {
            match printed_digits_match(&r, p) {
                Some(how) => write!(s, " ({how})").unwrap(),
                None => {
                    ok = false;
                    s.push_str(" (mismatch)");
                }
            }
        }
        computed.push(s);
    }
    Ok(outcome(ok, computed.join(", "), "Γ4≈1.3717, Γ5≈1.2481, Γ9≈1.1380", PUBLISHED))
}

fn simplex_rate_order(cfg: &ReplayConfig) -> Result<Outcome, String> {
    let rates: Vec<GrowthRate> = (4..=9).map(|n| rate(cfg, &gamma(n))).collect::<Result<_, _>>()?;
    let mut broken = Vec::new();
    for n in 5..=9 {
        // rates[n - 4] belongs to Γn
        if rates[n - 4].compare(&rates[n - 5]) != std::cmp::Ordering::Less {
            broken.push(format!("Γ{n} ≥ Γ{}", n - 1));
        }
    }
    let mut order: Vec<usize> = (4..=9).collect();
    order.sort_by(|&a, &b| rates[a - 4].compare(&rates[b - 4]));
    let chain: Vec<String> = order.iter().map(|n| format!("Γ{n}")).collect();
    let mut computed = chain.join(" < ");
    if !broken.is_empty() {
        write!(computed, "; violated: {}", broken.join(", ")).unwrap();
    }
    Ok(outcome(broken.is_empty(), computed, "Γ9 < Γ8 < Γ7 < Γ6 < Γ5 < Γ4", PUBLISHED))
}

fn dim5_below_dim3(cfg: &ReplayConfig) -> Result<Outcome, String> {
    let r5 = rate(cfg, &gamma(5))?;
    let r3 = rate(cfg, &gamma(3))?;
    let below = r5.compare(&r3) == std::cmp::Ordering::Less;
    let i3 = r3.rate_interval().ok_or("Γ3 has rate 1")?;
    let digits = printed_digits_match(i3, "1.2964");
    let computed = format!(
        "Γ5={:.10} {} Γ3={} ({})",
        r5.value_f64(),
        if below { "<" } else { "≥" },
        show(i3),
        digits.unwrap_or("mismatch")
    );
    Ok(outcome(below && digits.is_some(), computed, "Γ5 < Γ3 ≈ 1.2964", PUBLISHED))
}

/// Number of non-compact finite-volume simplices of order `n + 1`.
const CENSUS: [(usize, usize); 6] = [(4, 9), (5, 12), (6, 3), (7, 4), (8, 4), (9, 3)];

fn simplex_minimality(cfg: &ReplayConfig) -> Result<Outcome, String> {
    let mut ok = true;
    let mut computed = Vec::new();
    for (n, census) in CENSUS {
        let corpus: Vec<CoxeterGraph> =
            simplex_corpus(n + 1, CorpusKind::Noncompact, cfg.exec).into_iter().map(|(g, _)| g).collect();
        let min = minimal_rate_with(&corpus, &cfg.eps, &cfg.table, cfg.exec).map_err(|e| e.to_string())?;
        let is_gamma = min.graph.is_isomorphic(&gamma(n));
        ok &= corpus.len() == census && is_gamma && min.unique;
        computed.push(format!(
            "n={n}: {} simplices, minimum {}{}{}",
            corpus.len(),
            if is_gamma { format!("Γ{n}") } else { format!("{:?}", min.graph) },
            if min.unique { "" } else { " (tied)" },
            format_args!(" at {}", show(&min.rate)),
        ));
    }
    let expected = "Γn uniquely minimal; corpus sizes 9, 12, 3, 4, 4, 3 for n = 4..9";
    Ok(outcome(ok, computed.join("; "), expected, DERIVED))
}

fn p0_rate(cfg: &ReplayConfig) -> Result<Outcome, String> {
    let r = rate(cfg, &catalog::p0())?;
    let r4 = rate(cfg, &gamma(4))?;
    let i = r.rate_interval().ok_or("rate 1")?;
    let digits = printed_digits_match(i, "2.8383");
    let above = r.compare(&r4) == std::cmp::Ordering::Greater;
    let computed = format!("{} ({}), {} Γ4", show(i), digits.unwrap_or("mismatch"), if above { ">" } else { "≤" });
    Ok(outcome(digits.is_some() && above, computed, "≈ 2.8383 and > Γ4", PUBLISHED))
}

fn w0_rate(cfg: &ReplayConfig) -> Result<Outcome, String> {
    let r = exp_rate(cfg, &w(0))?;
    let digits = printed_digits_match(&r, "1.4655");
    let computed = format!("{} ({})", show(&r), digits.unwrap_or("mismatch"));
    Ok(outcome(digits.is_some(), computed, "≈ 1.4655", PUBLISHED))
}

fn w(i: usize) -> CoxeterGraph {
    catalog::w_group(i).expect("0 <= i <= 2")
}

fn poly(cs: &[i64]) -> IntPoly {
    IntPoly::from_i64(cs)
}

fn w_group_steinberg(cfg: &ReplayConfig) -> Result<Outcome, String> {
    type Terms = &'static [(&'static [u32], usize)];
    const SHARED: Terms = &[(&[], 1), (&[2], 4), (&[2, 2], 3), (&[2, 3], 2)];
    let extra: [Terms; 3] =
        [&[(&[2, 2, 3], 1), (&[2, 3, 4], 1)], &[(&[2, 2, 3], 2)], &[(&[2, 2, 2], 1), (&[2, 3, 4], 1)]];
    let mut problems = Vec::new();
    for (i, ext) in extra.iter().enumerate() {
        let want: BTreeMap<Vec<u32>, usize> = SHARED.iter().chain(ext.iter()).map(|&(b, c)| (b.to_vec(), c)).collect();
        let got = term_multiset(&finite_subsets_with(&w(i), &cfg.table).map_err(|e| e.to_string())?);
        if got != want {
            problems.push(format!("W{i} terms {got:?}"));
        }
    }
    let st: Vec<RatFunc> =
        (0..3).map(|i| steinberg_with(&w(i), &cfg.table)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    let frac = |num: IntPoly, brackets: &[u32]| RatFunc::new(num, bracket_product(brackets).unwrap()).unwrap();
    if &st[0] - &st[1] != frac(poly(&[0, 0, 1, 1]), &[2, 2, 3, 4]) {
        problems.push(format!("W0 - W1 = {}", &st[0] - &st[1]));
    }
    if &st[0] - &st[2] != frac(poly(&[0, 0, 1]), &[2, 2, 2, 3]) {
        problems.push(format!("W0 - W2 = {}", &st[0] - &st[2]));
    }
    let r: Vec<GrowthRate> = (0..3).map(|i| rate(cfg, &w(i))).collect::<Result<_, _>>()?;
    for i in [1, 2] {
        if r[0].compare(&r[i]) != std::cmp::Ordering::Less {
            problems.push(format!("W0 not below W{i}"));
        }
    }
    let computed = if problems.is_empty() {
        format!(
            "term multisets match; both differences exact; W0={:.10} < W1={:.10}, W2={:.10}",
            r[0].value_f64(),
            r[1].value_f64(),
            r[2].value_f64()
        )
    } else {
        problems.join("; ")
    };
    let expected = "displayed term multisets; differences (t²+t³)/[2,2,3,4] and t²/[2,2,2,3]; W0 < W1, W0 < W2";
    Ok(outcome(problems.is_empty(), computed, expected, PUBLISHED))
}

/// Connected order-4 graphs with at least one `inf` edge, weights in
/// `{2,...,6,inf}`, up to isomorphism.
pub fn order4_infinite_edge_graphs() -> Vec<CoxeterGraph> {
    let ws: Vec<Weight> = (2..=6).map(Weight::raw).chain([Weight::INF]).collect();
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let mut forms = BTreeSet::new();
    for code in 0..ws.len().pow(6) {
        let mut c = code;
        let edges = pairs.iter().map(|&(i, j)| {
            let m = ws[c % ws.len()];
            c /= ws.len();
            (i, j, m)
        });
        let g = CoxeterGraph::with_edges(4, edges.collect::<Vec<_>>()).expect("valid weights");
        if g.has_inf() && g.is_connected() {
            forms.insert(g.canonical_form());
        }
    }
    forms.iter().map(|f| f.to_graph()).collect()
}

fn infinite_edge_dominance(cfg: &ReplayConfig) -> Result<Outcome, String> {
    let graphs = order4_infinite_edge_graphs();
    let ws = [w(0), w(1), w(2)];
    let undominated: Vec<String> = cfg
        .exec
        .map(&graphs, |g| ws.iter().any(|wi| dominates(wi, g).is_some()).then_some(()).ok_or(format!("{g:?}")))
        .into_iter()
        .filter_map(Result::err)
        .collect();
    let computed = if undominated.is_empty() {
        format!("all {} graphs dominated by some Wi", graphs.len())
    } else {
        format!("{} of {} not dominated: {}", undominated.len(), graphs.len(), undominated.join(", "))
    };
    Ok(outcome(undominated.is_empty(), computed, "every graph dominated by W0, W1 or W2", DERIVED))
}

struct ExtensionSummary {
    per_base: Vec<usize>,
    graphs: Vec<(CoxeterGraph, VolumeClass, GrowthRate)>,
}

fn extension_summary(cfg: &ReplayConfig, types: &[IrreducibleType]) -> Result<ExtensionSummary, String> {
    let mut per_base = Vec::new();
    let mut all = Vec::new();
    for &t in types {
        let exts = extensions(&graph_of_type(t).ok_or("unknown type")?);
        per_base.push(exts.len());
        all.extend(exts);
    }
    let graphs = cfg.exec.map(&all, |g| {
        let class = simplex_class(g).map_err(|e| e.to_string())?.class;
        Ok::<_, String>((g.clone(), class, rate(cfg, g)?))
    });
    Ok(ExtensionSummary { per_base, graphs: graphs.into_iter().collect::<Result<_, _>>()? })
}

fn class_counts(s: &ExtensionSummary) -> BTreeMap<String, usize> {
    let mut counts = BTreeMap::new();
    for (_, c, _) in &s.graphs {
        *counts.entry(c.to_string()).or_default() += 1;
    }
    counts
}

fn rank2_extensions(cfg: &ReplayConfig) -> Result<Outcome, String> {
    use IrreducibleType::*;
    let s = extension_summary(cfg, &[AffineA(2), AffineC(2), AffineG2])?;
    let r3 = rate(cfg, &gamma(3))?;
    let all_fv = s.graphs.iter().all(|(_, c, _)| *c == VolumeClass::FiniteVolumeNoncompact);
    let above = s.graphs.iter().all(|(_, _, r)| r.compare(&r3) != std::cmp::Ordering::Less);
    let ok = s.per_base == [1, 2, 3] && all_fv && above;
    let computed = format!("per base {:?}, classes {:?}, all ≥ Γ3: {above}", s.per_base, class_counts(&s));
    Ok(outcome(ok, computed, "1 + 2 + 3 extensions, all finite-volume non-compact, each ≥ Γ3", PUBLISHED))
}

fn rank3_extensions(cfg: &ReplayConfig) -> Result<Outcome, String> {
    use IrreducibleType::*;
    let s = extension_summary(cfg, &[AffineA(3), AffineB(3), AffineC(3)])?;
    let g4 = gamma(4);
    let r4 = rate(cfg, &g4)?;
    let all_fv = s
        .graphs
        .iter()
        .all(|(_, c, _)| matches!(c, VolumeClass::FiniteVolumeNoncompact | VolumeClass::CompactHyperbolic));
    let has_g4 = s.graphs.iter().any(|(g, _, _)| g.is_isomorphic(&g4));
    let above = s.graphs.iter().all(|(_, _, r)| r.compare(&r4) != std::cmp::Ordering::Less);
    let ok = s.per_base.iter().sum::<usize>() == 6 && all_fv && has_g4 && above;
    let computed =
        format!("per base {:?}, classes {:?}, contains Γ4: {has_g4}, all ≥ Γ4: {above}", s.per_base, class_counts(&s));
    Ok(outcome(ok, computed, "6 extensions, all finite volume, Γ4 among them, each ≥ Γ4", PUBLISHED))
}

fn rank4_extensions(cfg: &ReplayConfig) -> Result<Outcome, String> {
    use IrreducibleType::*;
    let s = extension_summary(cfg, &[AffineA(4), AffineB(4), AffineC(4), AffineD(4), AffineF4])?;
    let total: usize = s.per_base.iter().sum();
    let fv = s.graphs.iter().filter(|(_, c, _)| *c == VolumeClass::FiniteVolumeNoncompact).count();
    let infinite: Vec<_> = s.graphs.iter().filter(|(_, c, _)| *c == VolumeClass::InfiniteVolume).collect();
    let r5 = rate(cfg, &gamma(5))?;
    let printed = ["1.678", "1.599", "1.668", "1.702"];
    let mut ok = total == 15 && fv == 11 && infinite.len() == 4;
    let mut parts = vec![format!("{total} extensions: {fv} finite volume, {} infinite volume", infinite.len())];
    for (i, p) in printed.iter().enumerate() {
        let delta = catalog::delta(i + 1).expect("1 <= i <= 4");
        let Some((_, _, r)) = infinite.iter().find(|(g, _, _)| g.is_isomorphic(&delta)) else {
            ok = false;
            parts.push(format!("Δ{} missing", i + 1));
            continue;
        };
        let interval = r.rate_interval().ok_or("rate 1")?;
        let digits = printed_digits_match(interval, p);
        let above = r5.compare(r) == std::cmp::Ordering::Less;
        ok &= digits.is_some() && above;
        parts.push(format!(
            "Δ{}={} ({}, {} Γ5)",
            i + 1,
            show(interval),
            digits.unwrap_or("mismatch"),
            if above { ">" } else { "≤" }
        ));
    }
    let expected = "15 extensions, 11 finite volume, 4 infinite volume Δ1..Δ4 ≈ 1.678, 1.599, 1.668, 1.702, each > Γ5";
    Ok(outcome(ok, parts.join("; "), expected, PUBLISHED))
}

fn ideal_links(_: &ReplayConfig) -> Result<Outcome, String> {
    let table: [(usize, &[&[usize]]); 5] = [
        (5, &[&[3, 3]]),
        (6, &[&[3, 4]]),
        (7, &[&[3, 5], &[4, 4], &[3, 3, 3]]),
        (8, &[&[3, 6], &[4, 5], &[3, 3, 4]]),
        (9, &[&[3, 7], &[4, 6], &[5, 5], &[3, 4, 4], &[3, 3, 3, 3]]),
    ];
    let mut ok = true;
    let mut extra_at_9 = Vec::new();
    let mut computed = Vec::new();
    for (n, want) in table {
        let got = ideal_link_partitions(n).map_err(|e| e.to_string())?;
        let want: BTreeSet<Vec<usize>> = want.iter().map(|p| p.to_vec()).collect();
        let have: BTreeSet<Vec<usize>> = got.iter().cloned().collect();
        if n == 9 {
            ok &= want.is_subset(&have);
            extra_at_9 = have.difference(&want).cloned().collect();
        } else {
            ok &= want == have;
        }
        computed.push(format!("n={n}: {got:?}"));
    }
    let mut out = outcome(ok, computed.join("; "), "published columns for n = 5..9", PUBLISHED);
    if ok && !extra_at_9.is_empty() {
        // the published n = 9 column omits these
        out.status = Status::Info;
        write!(out.computed, "; unlisted at n=9: {extra_at_9:?}").unwrap();
    }
    Ok(out)
}

fn f4_extension_volume(_: &ReplayConfig) -> Result<Outcome, String> {
    let class = simplex_class(&catalog::infinite_f4_extension()).map_err(|e| e.to_string())?.class;
    Ok(outcome(class == VolumeClass::InfiniteVolume, class.to_string(), "INFINITE_VOLUME", PUBLISHED))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::smallest_positive_root;

    #[test]
    fn digit_matching() {
        // the plastic number 1.3247179...
        let r = smallest_positive_root(&IntPoly::from_i64(&[-1, -1, 0, 1]), &default_eps()).unwrap();
        assert_eq!(printed_digits_match(&r, "1.3247"), Some("rounded"));
        assert_eq!(printed_digits_match(&r, "1.324"), Some("truncated"));
        assert_eq!(printed_digits_match(&r, "1.325"), Some("rounded"));
        assert_eq!(printed_digits_match(&r, "1.3248"), None);
        assert_eq!(printed_digits_match(&r, "1.3246"), None);
    }

    #[test]
    fn order4_graphs() {
        let gs = order4_infinite_edge_graphs();
        assert!(gs.iter().all(|g| g.order() == 4 && g.has_inf() && g.is_connected()));
        assert!(gs.iter().any(|g| g.is_isomorphic(&w(0))));
        assert!(gs.iter().any(|g| g.is_isomorphic(&w(2))));
    }

    #[test]
    fn fault_injection() {
        let ids = ["simplex-rates", "w0-rate", "f4-extension-infinite-volume"];
        let good = replay_only(&ReplayConfig::default(), &ids);
        assert_eq!(good.checks.len(), 3);
        assert!(good.passed());
        let table = ExponentTable::standard().with_override(IrreducibleType::A(1), vec![2]);
        let bad = replay_only(&ReplayConfig { table, ..ReplayConfig::default() }, &ids);
        assert_eq!(bad.get("simplex-rates").unwrap().status, Status::Fail);
        assert_eq!(bad.get("f4-extension-infinite-volume").unwrap().status, Status::Pass);
        assert!(!bad.passed());
        let json = serde_json::to_value(&bad).unwrap();
        let first = &json["checks"][0];
        for key in ["id", "status", "computed", "expected", "provenance", "elapsed_ms"] {
            assert!(first.get(key).is_some(), "{key}");
        }
        assert_eq!(first["status"], "fail");
    }

    #[test]
    fn ids_are_unique() {
        let ids = check_ids();
        assert_eq!(ids.iter().collect::<BTreeSet<_>>().len(), ids.len());
    }
}
