//! Line-oriented text formats. All indices in files are 1-based and `#`
//! starts a comment that runs to the end of the line.
//!
//! Instance:
//! ```text
//! instance 2 2
//! m 1: 1; (2)
//! m 2: (1 2)
//! w 1: 2; 1
//! w 2: 1 ; 2
//! forbidden 1 2
//! forced 2 1
//! free 2 2
//! ```
//! Each group is a single index or a parenthesised tie; groups are listed
//! best first and separated by `;`. A vertex without an `m`/`w` line has
//! an empty list.
//!
//! Matching: one `<man> <woman>` pair per line.
//!
//! Formula: a `p 1in3 <n_vars> <n_clauses>` header, then one clause of
//! three variable indices per line.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::instance::{Edge, Instance, RestrictedEdgeSets, RestrictionKind, Side, TieGroups, Vertex};
use crate::master::MasterList;
use crate::matching::Matching;
use crate::reductions::Registry;
use crate::sat::SatFormula;

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_index(line: usize, tok: &str, bound: usize, what: &str) -> Result<usize> {
    let i: usize = tok
        .parse()
        .map_err(|_| err(line, format!("expected a {what} index, found `{tok}`")))?;
    if i == 0 || i > bound {
        return Err(err(line, format!("{what} index {i} out of range 1..={bound}")));
    }
    Ok(i - 1)
}

fn parse_count(line: usize, tok: Option<&str>, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| err(line, format!("expected {what}, found `{tok}`")))
}

fn parse_groups(line: usize, body: &str, bound: usize) -> Result<TieGroups> {
    let mut groups = Vec::new();
    let body = body.trim();
    if body.is_empty() {
        return Ok(groups);
    }
    for part in body.split(';') {
        let part = part.trim();
        let inner = match part.strip_prefix('(') {
            Some(rest) => rest
                .strip_suffix(')')
                .ok_or_else(|| err(line, format!("unclosed tie `{part}`")))?,
            None => part,
        };
        let group = inner
            .split_whitespace()
            .map(|t| parse_index(line, t, bound, "list entry"))
            .collect::<Result<Vec<_>>>()?;
        if group.is_empty() {
            return Err(err(line, "empty tie-group"));
        }
        if !part.starts_with('(') && group.len() > 1 {
            return Err(err(line, format!("ties must be parenthesised: `{part}`")));
        }
        groups.push(group);
    }
    Ok(groups)
}

fn parse_pair(line: usize, rest: &[&str], n_men: usize, n_women: usize) -> Result<Edge> {
    let [i, j] = rest else {
        return Err(err(line, "expected `<man> <woman>`"));
    };
    Ok(Edge::new(
        parse_index(line, i, n_men, "man")?,
        parse_index(line, j, n_women, "woman")?,
    ))
}

/// Parses and validates an instance with its restricted edge sets.
pub fn parse_instance(text: &str) -> Result<(Instance, RestrictedEdgeSets)> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| err(1, "empty input"))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("instance") {
        return Err(err(hline, "expected `instance <n_men> <n_women>`"));
    }
    let n_men = parse_count(hline, toks.next(), "number of men")?;
    let n_women = parse_count(hline, toks.next(), "number of women")?;
    if toks.next().is_some() {
        return Err(err(hline, "trailing tokens after header"));
    }

    let mut men: Vec<Option<(usize, TieGroups)>> = vec![None; n_men];
    let mut women: Vec<Option<(usize, TieGroups)>> = vec![None; n_women];
    let mut restricted = RestrictedEdgeSets::new();
    let mut restriction_line: HashMap<Edge, usize> = HashMap::new();

    for (ln, l) in lines {
        if let Some((head, body)) = l.split_once(':') {
            let mut h = head.split_whitespace();
            let (side, slot) = match (h.next(), h.next(), h.next()) {
                (Some("m"), Some(i), None) => (Side::Men, parse_index(ln, i, n_men, "man")?),
                (Some("w"), Some(j), None) => (Side::Women, parse_index(ln, j, n_women, "woman")?),
                _ => return Err(err(ln, format!("bad list header `{head}`"))),
            };
            let (target, bound) = match side {
                Side::Men => (&mut men[slot], n_women),
                Side::Women => (&mut women[slot], n_men),
            };
            if target.is_some() {
                return Err(err(ln, format!("second list for {}", Vertex::new(side, slot))));
            }
            *target = Some((ln, parse_groups(ln, body, bound)?));
            continue;
        }
        let toks: Vec<&str> = l.split_whitespace().collect();
        let kind = match toks[0] {
            "forbidden" => RestrictionKind::Forbidden,
            "forced" => RestrictionKind::Forced,
            "free" => RestrictionKind::Free,
            other => return Err(err(ln, format!("unknown directive `{other}`"))),
        };
        let e = parse_pair(ln, &toks[1..], n_men, n_women)?;
        if let Some(prev) = restricted.kind_of(e) {
            return Err(err(ln, Error::Overlap { edge: e, first: prev, second: kind }.to_string()));
        }
        restricted.set_mut(kind).insert(e);
        restriction_line.insert(e, ln);
    }

    let list_line = |v: Vertex| -> usize {
        let slot = match v {
            Vertex::Man(i) => men.get(i),
            Vertex::Woman(j) => women.get(j),
        };
        slot.and_then(|s| s.as_ref().map(|(ln, _)| *ln)).unwrap_or(hline)
    };
    let men_lists: Vec<TieGroups> = men.iter().map(|s| s.clone().map(|(_, g)| g).unwrap_or_default()).collect();
    let women_lists: Vec<TieGroups> = women.iter().map(|s| s.clone().map(|(_, g)| g).unwrap_or_default()).collect();
    let instance = Instance::from_lists(&men_lists, &women_lists).map_err(|e| {
        let ln = match &e {
            Error::DuplicateListing { vertex, .. } | Error::UnknownVertex { vertex, .. } => list_line(*vertex),
            Error::NonReciprocal { from, .. } => list_line(*from),
            _ => hline,
        };
        err(ln, e.to_string())
    })?;
    restricted.validate(&instance).map_err(|e| {
        let ln = match &e {
            Error::Overlap { edge, .. }
            | Error::RestrictedNotInGraph { edge, .. }
            | Error::NotAnEdge(edge) => restriction_line.get(edge).copied(),
            Error::ForcedConflict { second, .. } => restriction_line.get(second).copied(),
            _ => None,
        };
        err(ln.unwrap_or(hline), e.to_string())
    })?;
    Ok((instance, restricted))
}

fn write_groups(out: &mut String, groups: &[Vec<usize>]) {
    for (k, g) in groups.iter().enumerate() {
        if k > 0 {
            out.push_str("; ");
        }
        let mut g = g.clone();
        g.sort_unstable();
        if g.len() == 1 {
            let _ = write!(out, "{}", g[0] + 1);
        } else {
            let items: Vec<String> = g.iter().map(|x| (x + 1).to_string()).collect();
            let _ = write!(out, "({})", items.join(" "));
        }
    }
}

/// Canonical text form: every vertex gets a list line, tie members and
/// restricted edges are sorted ascending.
pub fn serialize_instance(instance: &Instance, restricted: &RestrictedEdgeSets) -> String {
    let mut out = format!("instance {} {}\n", instance.n_men(), instance.n_women());
    for v in instance.vertices() {
        let tag = match v.side() {
            Side::Men => 'm',
            Side::Women => 'w',
        };
        let _ = write!(out, "{tag} {}:", v.index() + 1);
        let groups = instance.preference_list(v);
        if !groups.is_empty() {
            out.push(' ');
            write_groups(&mut out, &groups);
        }
        out.push('\n');
    }
    for kind in [RestrictionKind::Forbidden, RestrictionKind::Forced, RestrictionKind::Free] {
        for e in restricted.set(kind) {
            let _ = writeln!(out, "{kind} {} {}", e.man + 1, e.woman + 1);
        }
    }
    out
}

pub fn parse_matching(text: &str, n_men: usize, n_women: usize) -> Result<Matching> {
    let mut m = Matching::empty(n_men, n_women);
    for (ln, l) in content_lines(text) {
        let toks: Vec<&str> = l.split_whitespace().collect();
        let e = parse_pair(ln, &toks, n_men, n_women)?;
        m.insert(e).map_err(|e| err(ln, e.to_string()))?;
    }
    Ok(m)
}

pub fn serialize_matching(matching: &Matching) -> String {
    matching
        .edges()
        .iter()
        .map(|e| format!("{} {}\n", e.man + 1, e.woman + 1))
        .collect()
}

pub fn parse_formula(text: &str) -> Result<SatFormula> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| err(1, "empty input"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    let (n_vars, n_clauses) = match toks.as_slice() {
        ["p", "1in3", n, m] => (
            parse_count(hline, Some(n), "number of variables")?,
            parse_count(hline, Some(m), "number of clauses")?,
        ),
        _ => return Err(err(hline, "expected header `p 1in3 <n_vars> <n_clauses>`")),
    };
    let mut clauses = Vec::with_capacity(n_clauses);
    let mut last = hline;
    for (ln, l) in lines {
        last = ln;
        let vars = l
            .split_whitespace()
            .map(|t| parse_index(ln, t, n_vars, "variable"))
            .collect::<Result<Vec<_>>>()?;
        let [a, b, c] = vars[..] else {
            return Err(err(ln, format!("clause has {} literals, expected 3", vars.len())));
        };
        if a == b || a == c || b == c {
            return Err(err(ln, "repeated variable in clause"));
        }
        clauses.push([a, b, c]);
    }
    if clauses.len() != n_clauses {
        return Err(err(
            last,
            format!("header declares {n_clauses} clauses, found {}", clauses.len()),
        ));
    }
    SatFormula::new(n_vars, clauses).map_err(|e| err(hline, e.to_string()))
}

pub fn serialize_formula(formula: &SatFormula) -> String {
    let mut out = format!("p 1in3 {} {}\n", formula.n_vars(), formula.n_clauses());
    for c in formula.clauses() {
        let _ = writeln!(out, "{} {} {}", c[0] + 1, c[1] + 1, c[2] + 1);
    }
    out
}

/// Registry map: `vertex <m|w><id> role <name>` lines, then
/// `edge <i> <j> stage <tag>` lines, then an optional
/// `master <side>: <groups>` line naming the side whose lists conform.
pub fn serialize_registry(registry: &Registry, master: Option<&(Side, MasterList)>) -> String {
    let mut out = String::new();
    for (i, r) in registry.men.iter().enumerate() {
        let _ = writeln!(out, "vertex {} role {r}", Vertex::Man(i));
    }
    for (j, r) in registry.women.iter().enumerate() {
        let _ = writeln!(out, "vertex {} role {r}", Vertex::Woman(j));
    }
    for (e, tag) in &registry.edges {
        let _ = writeln!(out, "edge {} {} stage {tag}", e.man + 1, e.woman + 1);
    }
    if let Some((side, master)) = master {
        let name = match side {
            Side::Men => "men",
            Side::Women => "women",
        };
        let _ = write!(out, "master {name}: ");
        write_groups(&mut out, master.groups());
        out.push('\n');
    }
    out
}
