//! The `.cox` text format and Coxeter symbols such as `[6,3,3]`.
//!
//! ```text
//! # comment
//! vertices 4
//! edge 1 2 6
//! edge 2 3 3
//! edge 3 4 3
//! ```
//!
//! Nodes are 1-based, weights are integers `>= 3` or `inf`, and pairs that
//! are not listed commute (weight 2).

use std::collections::BTreeMap;

use thiserror::Error;

use crate::cox::{CoxError, CoxeterGraph, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoxFileError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: CoxError },
    #[error("missing `vertices` line")]
    MissingHeader,
    #[error("bad symbol {symbol:?}: {msg}")]
    Symbol { symbol: String, msg: String },
}

fn syntax(line: usize, msg: impl Into<String>) -> CoxFileError {
    CoxFileError::Syntax { line, msg: msg.into() }
}

fn parse_weight(tok: &str) -> Option<Weight> {
    match tok {
        "inf" | "∞" => Some(Weight::INF),
        _ => tok.parse::<u32>().ok().and_then(|m| Weight::new(m).ok()),
    }
}

pub fn parse_cox(text: &str) -> Result<CoxeterGraph, CoxFileError> {
    let mut order = None;
    let mut raw: BTreeMap<(usize, usize), Weight> = BTreeMap::new();
    for (k, line) in text.lines().enumerate() {
        let lineno = k + 1;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        match (order, toks[0]) {
            (None, "vertices") => {
                let [_, n] = toks[..] else {
                    return Err(syntax(lineno, "expected `vertices <N>`"));
                };
                let n: usize = n.parse().map_err(|_| syntax(lineno, format!("bad vertex count {n:?}")))?;
                if n == 0 {
                    return Err(CoxFileError::Graph { line: lineno, source: CoxError::Empty });
                }
                order = Some(n);
            }
            (None, _) => return Err(syntax(lineno, "the first line must be `vertices <N>`")),
            (Some(_), "vertices") => return Err(syntax(lineno, "repeated `vertices` line")),
            (Some(n), "edge") => {
                let [_, i, j, m] = toks[..] else {
                    return Err(syntax(lineno, "expected `edge <i> <j> <m>`"));
                };
                let node = |s: &str| s.parse::<usize>().map_err(|_| syntax(lineno, format!("bad node {s:?}")));
                let (i, j) = (node(i)?, node(j)?);
                let w = match parse_weight(m) {
                    Some(w) if w.is_edge() => w,
                    Some(w) => return Err(syntax(lineno, format!("weight {w} must be omitted (pairs default to 2)"))),
                    None => {
                        let source = CoxError::BadWeight(m.to_string());
                        return Err(CoxFileError::Graph { line: lineno, source });
                    }
                };
                let key = (i.min(j), i.max(j));
                let graph_err = |source| CoxFileError::Graph { line: lineno, source };
                for idx in [i, j] {
                    if idx < 1 || idx > n {
                        return Err(graph_err(CoxError::OutOfRange { index: idx, n }));
                    }
                }
                if i == j {
                    return Err(graph_err(CoxError::SelfLoop(i)));
                }
                if raw.insert(key, w).is_some() {
                    return Err(graph_err(CoxError::Duplicate(key.0, key.1)));
                }
            }
            (Some(_), other) => return Err(syntax(lineno, format!("unknown directive {other:?}"))),
        }
    }
    let n = order.ok_or(CoxFileError::MissingHeader)?;
    CoxeterGraph::validate(n, &raw).map_err(|source| CoxFileError::Graph { line: 0, source })
}

/// Canonical serialization: edges in lexicographic order.
pub fn to_cox(g: &CoxeterGraph) -> String {
    let mut out = format!("vertices {}\n", g.order());
    for (i, j, m) in g.edges() {
        out.push_str(&format!("edge {} {} {}\n", i + 1, j + 1, m));
    }
    out
}

/// Parses `[k1,...,kr]`, optionally ending in a fork `3^{k,l}`, and the
/// shorthand `m^r` for `r` repeated weights. `inf` and `∞` are accepted.
pub fn parse_symbol(symbol: &str) -> Result<CoxeterGraph, CoxFileError> {
    let err = |msg: &str| CoxFileError::Symbol { symbol: symbol.to_string(), msg: msg.to_string() };
    let body =
        symbol.trim().strip_prefix('[').and_then(|s| s.strip_suffix(']')).ok_or_else(|| err("expected brackets"))?;
    // split on commas outside braces
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0, 0);
    for (k, c) in body.char_indices() {
        match c {
            '{' => depth += 1,
            '}' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&body[start..k]);
                start = k + 1;
            }
            _ => {}
        }
    }
    parts.push(&body[start..]);
    let mut path = Vec::new();
    let mut fork = None;
    for (idx, part) in parts.iter().map(|p| p.trim()).enumerate() {
        if let Some((base, exp)) = part.split_once('^') {
            let w = parse_weight(base.trim()).ok_or_else(|| err("bad weight"))?;
            if let Some(arms) = exp.trim().strip_prefix('{').and_then(|e| e.strip_suffix('}')) {
                if idx + 1 != parts.len() || w != Weight::THREE {
                    return Err(err("a fork 3^{k,l} must come last"));
                }
                let arms: Vec<usize> =
                    arms.split(',').map(|a| a.trim().parse()).collect::<Result<_, _>>().map_err(|_| err("bad arm"))?;
                let [k, l] = arms[..] else {
                    return Err(err("a fork needs two arms"));
                };
                if k == 0 || l == 0 || path.is_empty() {
                    return Err(err("a fork needs positive arms and a weight before it"));
                }
                fork = Some((k, l));
            } else {
                let r: usize = exp.trim().parse().map_err(|_| err("bad exponent"))?;
                path.extend(std::iter::repeat_n(w, r));
            }
        } else {
            path.push(parse_weight(part).ok_or_else(|| err("bad weight"))?);
        }
    }
    if path.iter().any(|w| !w.is_edge()) {
        return Err(err("weights must be >= 3 or inf"));
    }
    let Some((k, l)) = fork else {
        return CoxeterGraph::from_linear_symbol(&path).map_err(|e| err(&e.to_string()));
    };
    // the path ends at the branch node, which carries two simple arms
    let centre = path.len();
    let n = centre + 1 + k + l;
    let mut edges: Vec<(usize, usize, Weight)> = path.iter().enumerate().map(|(i, &w)| (i, i + 1, w)).collect();
    let mut next = centre + 1;
    for len in [k, l] {
        let mut prev = centre;
        for _ in 0..len {
            edges.push((prev, next, Weight::THREE));
            prev = next;
            next += 1;
        }
    }
    CoxeterGraph::with_edges(n, edges).map_err(|e| err(&e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::classify::{graph_of_type, IrreducibleType::*};

    #[test]
    fn parse_examples() {
        let a1 = parse_cox("vertices 2\nedge 1 2 inf").unwrap();
        assert!(a1.is_isomorphic(&graph_of_type(AffineA(1)).unwrap()));
        let g3 = parse_cox("# gamma 3\nvertices 4\nedge 1 2 6\nedge 2 3 3\n\nedge 3 4 3  # tail\n").unwrap();
        assert_eq!(g3, catalog::gamma(3).unwrap());
        match parse_cox("vertices 3\nedge 1 2 1") {
            Err(CoxFileError::Graph { line: 2, source: CoxError::BadWeight(_) }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn parse_errors() {
        let line = |text: &str| match parse_cox(text) {
            Err(CoxFileError::Syntax { line, .. } | CoxFileError::Graph { line, .. }) => line,
            other => panic!("{other:?}"),
        };
        assert_eq!(line("edge 1 2 3"), 1);
        assert_eq!(line("vertices 3\nedge 1 2 3\nedge 2 1 4"), 3);
        assert_eq!(line("vertices 3\nedge 1 4 3"), 2);
        assert_eq!(line("vertices 3\nedge 1 1 3"), 2);
        assert_eq!(line("vertices 3\n\nedge 1 2 2"), 3);
        assert_eq!(line("vertices 3\nedge 1 2"), 2);
        assert_eq!(line("vertices 3\nvertices 3"), 2);
        assert_eq!(line("vertices x"), 1);
        assert_eq!(line("vertices 0"), 1);
        assert_eq!(line("vertices 2\nedge 1 2 3\nnode 1"), 3);
        assert_eq!(parse_cox("# nothing\n"), Err(CoxFileError::MissingHeader));
    }

    #[test]
    fn roundtrip() {
        for n in 2..=9 {
            let g = catalog::gamma(n).unwrap();
            let text = to_cox(&g);
            assert_eq!(parse_cox(&text).unwrap(), g);
            assert_eq!(to_cox(&parse_cox(&text).unwrap()), text);
        }
        assert_eq!(to_cox(&catalog::gamma(2).unwrap()), "vertices 3\nedge 1 2 3\nedge 2 3 inf\n");
    }

    #[test]
    fn symbols() {
        assert_eq!(parse_symbol("[6,3,3]").unwrap(), catalog::gamma(3).unwrap());
        assert_eq!(parse_symbol("[inf]").unwrap(), parse_symbol("[∞]").unwrap());
        assert!(parse_symbol("[inf]").unwrap().is_isomorphic(&graph_of_type(AffineA(1)).unwrap()));
        assert_eq!(parse_symbol("[4,3^{2,1}]").unwrap(), catalog::gamma(4).unwrap());
        assert_eq!(parse_symbol("[inf,3^{1,1}]").unwrap(), catalog::w_group(2).unwrap());
        assert_eq!(parse_symbol(" [ 3, 4, 3^3 ] ").unwrap(), catalog::gamma(5).unwrap());
        for bad in ["6,3,3", "[]", "[2]", "[1,3]", "[3^{1}]", "[3^{1,1}]", "[3^{1,1},3]", "[x]", "[4,3^{0,1}]"] {
            assert!(parse_symbol(bad).is_err(), "{bad}");
        }
    }
}
