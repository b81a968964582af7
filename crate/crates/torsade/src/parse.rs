//! Input document formats.
//!
//! All documents are UTF-8 text; `#` starts a comment line. File references
//! inside a document resolve relative to the referencing file's directory.
//!
//! Group documents come in two dialects selected by the first keyword line:
//!
//! ```text
//! group S3 order 6          |  group S3 degree 3
//! elements e (12) ...       |  gens
//! table                     |  (1 2 3)
//! 0 1 2 3 4 5               |  (1 2)
//! ...                       |
//! ```
//!
//! Γ-set documents: `gammaset <name> gamma <groupfile> size <n>`, then
//! `action` and |Γ| rows of n integers (row γ lists γ·x for every x).
//!
//! Cocycle documents: `cocycle gamma <groupfile> group <groupfile>
//! action <trivial|file>`, then `map` and |Γ| lines `γ -> g`.
//!
//! Homomorphism documents: one `x -> y` line per source element.
//!
//! Cover documents: a single line
//! `cover pi <groupfile> gamma <groupfile> u <homfile> g <groupfile> phi <homfile>`.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::cover::CoverSpec;
use crate::error::DocError;
use crate::gamma::{Cocycle, GammaGroup};
use crate::group::{cycle_notation, FiniteGroup, GroupHom, DEFAULT_MAX_ORDER};
use crate::gset::GammaSet;

/// Parsing limits; the order cap bounds every loaded group.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_order: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_order: DEFAULT_MAX_ORDER }
    }
}

fn err(line: usize, msg: impl Into<String>) -> DocError {
    DocError::Parse { line, msg: msg.into() }
}

fn read(path: &Path) -> Result<String, DocError> {
    std::fs::read_to_string(path).map_err(|e| DocError::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })
}

/// Numbered content lines, comments and blanks skipped.
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

pub fn load_group(path: &Path, limits: &Limits) -> Result<Arc<FiniteGroup>, DocError> {
    parse_group(&read(path)?, limits)
}

pub fn parse_group(text: &str, limits: &Limits) -> Result<Arc<FiniteGroup>, DocError> {
    let lines = content_lines(text);
    let Some(&(line1, header)) = lines.first() else {
        return Err(err(1, "empty group document"));
    };
    let words: Vec<&str> = header.split_whitespace().collect();
    if words.len() != 4 || words[0] != "group" {
        return Err(err(line1, "expected `group <name> order <n>` or `group <name> degree <d>`"));
    }
    let name = words[1];
    let count: usize = words[3]
        .parse()
        .map_err(|_| err(line1, format!("bad number `{}`", words[3])))?;
    match words[2] {
        "order" => parse_table_dialect(name, count, &lines[1..], limits),
        "degree" => parse_perm_dialect(name, count, &lines[1..], limits),
        other => Err(err(line1, format!("unknown dialect keyword `{other}`"))),
    }
}

fn parse_table_dialect(
    name: &str,
    order: usize,
    lines: &[(usize, &str)],
    limits: &Limits,
) -> Result<Arc<FiniteGroup>, DocError> {
    if order > limits.max_order {
        return Err(DocError::Group {
            line: 1,
            source: crate::error::GroupError::OrderCap { order, cap: limits.max_order },
        });
    }
    let mut idx = 0;
    let mut names: Option<Vec<String>> = None;
    if let Some(&(line, l)) = lines.get(idx) {
        if let Some(rest) = l.strip_prefix("elements") {
            let labels: Vec<String> = rest.split_whitespace().map(|s| s.to_string()).collect();
            if labels.len() != order {
                return Err(err(line, format!("{} labels for {} elements", labels.len(), order)));
            }
            names = Some(labels);
            idx += 1;
        }
    }
    match lines.get(idx) {
        Some(&(_, "table")) => idx += 1,
        Some(&(line, other)) => return Err(err(line, format!("expected `table`, found `{other}`"))),
        None => return Err(err(0, "missing `table` section")),
    }
    let mut table = Vec::with_capacity(order);
    for row in 0..order {
        let Some(&(line, l)) = lines.get(idx + row) else {
            return Err(err(0, format!("table ends after {row} of {order} rows")));
        };
        let entries: Result<Vec<usize>, _> = l.split_whitespace().map(|w| w.parse()).collect();
        let entries = entries.map_err(|_| err(line, "table rows must be integers"))?;
        if entries.len() != order {
            return Err(err(line, format!("row has {} entries, expected {}", entries.len(), order)));
        }
        table.push(entries);
    }
    if lines.len() > idx + order {
        let (line, l) = lines[idx + order];
        return Err(err(line, format!("unexpected trailing content `{l}`")));
    }
    let first_table_line = lines.get(idx).map(|&(n, _)| n).unwrap_or(0);
    let g = FiniteGroup::from_cayley(name, &table)
        .map_err(|source| DocError::Group { line: first_table_line, source })?;
    Ok(Arc::new(match names {
        Some(n) => g.with_names(n),
        None => g,
    }))
}

fn parse_perm_dialect(
    name: &str,
    degree: usize,
    lines: &[(usize, &str)],
    limits: &Limits,
) -> Result<Arc<FiniteGroup>, DocError> {
    match lines.first() {
        Some(&(_, "gens")) => {}
        Some(&(line, other)) => return Err(err(line, format!("expected `gens`, found `{other}`"))),
        None => return Err(err(0, "missing `gens` section")),
    }
    let mut gens: Vec<Vec<usize>> = Vec::new();
    for &(line, l) in &lines[1..] {
        gens.push(parse_cycles(l, degree, line)?);
    }
    if gens.is_empty() {
        return Err(err(0, "no generators"));
    }
    // deterministic closure: BFS from the identity, right-multiplying by the
    // generators in order
    let id: Vec<usize> = (0..degree).collect();
    let mut perms = vec![id];
    let mut head = 0;
    while head < perms.len() {
        let cur = perms[head].clone();
        head += 1;
        for g in &gens {
            // apply g first, then cur
            let next: Vec<usize> = g.iter().map(|&i| cur[i]).collect();
            if !perms.contains(&next) {
                if perms.len() >= limits.max_order {
                    return Err(DocError::Group {
                        line: 1,
                        source: crate::error::GroupError::OrderCap {
                            order: perms.len() + 1,
                            cap: limits.max_order,
                        },
                    });
                }
                perms.push(next);
            }
        }
    }
    let index_of = |p: &[usize]| perms.iter().position(|q| q == p).expect("closed");
    let n = perms.len();
    let mut table = vec![vec![0usize; n]; n];
    for a in 0..n {
        for b in 0..n {
            let prod: Vec<usize> = perms[b].iter().map(|&i| perms[a][i]).collect();
            table[a][b] = index_of(&prod);
        }
    }
    let names = perms.iter().map(|p| cycle_notation(p)).collect();
    let g = FiniteGroup::from_cayley(name, &table)
        .map_err(|source| DocError::Group { line: 1, source })?;
    Ok(Arc::new(g.with_names(names)))
}

/// Parse `(1 2 3)(4 5)` into a permutation of 0..degree (1-based points).
fn parse_cycles(text: &str, degree: usize, line: usize) -> Result<Vec<usize>, DocError> {
    let mut perm: Vec<usize> = (0..degree).collect();
    let mut rest = text.trim();
    if rest == "e" || rest == "()" {
        return Ok(perm);
    }
    while !rest.is_empty() {
        let Some(open) = rest.find('(') else {
            return Err(err(line, format!("expected `(` in cycle notation near `{rest}`")));
        };
        let Some(close) = rest.find(')') else {
            return Err(err(line, "unclosed cycle"));
        };
        let inner = &rest[open + 1..close];
        let points: Result<Vec<usize>, _> = inner
            .split(|c: char| c == ' ' || c == ',')
            .filter(|s| !s.is_empty())
            .map(|w| w.parse::<usize>())
            .collect();
        let points = points.map_err(|_| err(line, "cycle entries must be integers"))?;
        for &p in &points {
            if p == 0 || p > degree {
                return Err(err(line, format!("point {p} out of range 1..{degree}")));
            }
        }
        for w in points.windows(2) {
            perm[w[0] - 1] = w[1] - 1;
        }
        if let (Some(&first), Some(&last)) = (points.first(), points.last()) {
            perm[last - 1] = first - 1;
        }
        rest = rest[close + 1..].trim();
    }
    let mut seen = vec![false; degree];
    for &v in &perm {
        if std::mem::replace(&mut seen[v], true) {
            return Err(err(line, "cycles overlap"));
        }
    }
    Ok(perm)
}

fn resolve(base: &Path, rel: &str) -> PathBuf {
    base.parent().unwrap_or(Path::new(".")).join(rel)
}

pub fn load_gamma_set(path: &Path, limits: &Limits) -> Result<GammaSet, DocError> {
    let text = read(path)?;
    let lines = content_lines(&text);
    let Some(&(line1, header)) = lines.first() else {
        return Err(err(1, "empty gammaset document"));
    };
    let words: Vec<&str> = header.split_whitespace().collect();
    if words.len() != 6 || words[0] != "gammaset" || words[2] != "gamma" || words[4] != "size" {
        return Err(err(line1, "expected `gammaset <name> gamma <groupfile> size <n>`"));
    }
    let gamma = load_group(&resolve(path, words[3]), limits)?;
    let size: usize =
        words[5].parse().map_err(|_| err(line1, format!("bad size `{}`", words[5])))?;
    match lines.get(1) {
        Some(&(_, "action")) => {}
        Some(&(line, other)) => return Err(err(line, format!("expected `action`, found `{other}`"))),
        None => return Err(err(0, "missing `action` section")),
    }
    let mut action = Vec::with_capacity(gamma.order());
    for row in 0..gamma.order() {
        let Some(&(line, l)) = lines.get(2 + row) else {
            return Err(err(0, format!("action ends after {row} of {} rows", gamma.order())));
        };
        let entries: Result<Vec<usize>, _> = l.split_whitespace().map(|w| w.parse()).collect();
        let entries = entries.map_err(|_| err(line, "action rows must be integers"))?;
        if entries.len() != size {
            return Err(err(line, format!("row has {} entries, expected {}", entries.len(), size)));
        }
        action.push(entries);
    }
    GammaSet::new(gamma, size, action)
        .map_err(|e| err(0, format!("invalid gamma-set: {e}")))
}

/// Load a Γ-action on a group: |Γ| rows of |G| integers, each row an
/// automorphism.
pub fn load_action(
    path: &Path,
    gamma: Arc<FiniteGroup>,
    group: Arc<FiniteGroup>,
) -> Result<GammaGroup, DocError> {
    let text = read(path)?;
    let lines = content_lines(&text);
    if lines.len() != gamma.order() {
        return Err(err(
            lines.first().map(|&(n, _)| n).unwrap_or(0),
            format!("action file has {} rows, expected {}", lines.len(), gamma.order()),
        ));
    }
    let mut act = Vec::with_capacity(gamma.order());
    for &(line, l) in &lines {
        let entries: Result<Vec<usize>, _> = l.split_whitespace().map(|w| w.parse()).collect();
        let entries = entries.map_err(|_| err(line, "action rows must be integers"))?;
        if entries.len() != group.order() {
            return Err(err(line, format!("row has {} entries, expected {}", entries.len(), group.order())));
        }
        act.push(entries);
    }
    GammaGroup::new(gamma, group, act).map_err(|e| err(0, format!("invalid action: {e}")))
}

pub fn load_cocycle(path: &Path, limits: &Limits) -> Result<Cocycle, DocError> {
    let text = read(path)?;
    let lines = content_lines(&text);
    let Some(&(line1, header)) = lines.first() else {
        return Err(err(1, "empty cocycle document"));
    };
    let words: Vec<&str> = header.split_whitespace().collect();
    if words.len() != 7
        || words[0] != "cocycle"
        || words[1] != "gamma"
        || words[3] != "group"
        || words[5] != "action"
    {
        return Err(err(
            line1,
            "expected `cocycle gamma <groupfile> group <groupfile> action <trivial|file>`",
        ));
    }
    let gamma = load_group(&resolve(path, words[2]), limits)?;
    let group = load_group(&resolve(path, words[4]), limits)?;
    let gg = if words[6] == "trivial" {
        GammaGroup::trivial_action(gamma.clone(), group)
    } else {
        load_action(&resolve(path, words[6]), gamma.clone(), group)?
    };
    match lines.get(1) {
        Some(&(_, "map")) => {}
        Some(&(line, other)) => return Err(err(line, format!("expected `map`, found `{other}`"))),
        None => return Err(err(0, "missing `map` section")),
    }
    let mut values = vec![usize::MAX; gamma.order()];
    if lines.len() != 2 + gamma.order() {
        return Err(err(
            lines.last().map(|&(n, _)| n).unwrap_or(0),
            format!("map must list all {} elements of gamma", gamma.order()),
        ));
    }
    for &(line, l) in &lines[2..] {
        let (from, to) = parse_arrow(l, line)?;
        if from >= gamma.order() {
            return Err(err(line, format!("gamma element {from} out of range")));
        }
        if values[from] != usize::MAX {
            return Err(err(line, format!("duplicate entry for gamma element {from}")));
        }
        values[from] = to;
    }
    Cocycle::new(gg, values).map_err(|e| err(0, format!("invalid cocycle: {e}")))
}

fn parse_arrow(l: &str, line: usize) -> Result<(usize, usize), DocError> {
    let parts: Vec<&str> = l.split("->").map(|s| s.trim()).collect();
    if parts.len() != 2 {
        return Err(err(line, format!("expected `x -> y`, found `{l}`")));
    }
    let from = parts[0].parse().map_err(|_| err(line, "left side must be an integer"))?;
    let to = parts[1].parse().map_err(|_| err(line, "right side must be an integer"))?;
    Ok((from, to))
}

/// Load a homomorphism document: `x -> y` lines with an optional `hom` header.
pub fn load_hom(
    path: &Path,
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
) -> Result<GroupHom, DocError> {
    let text = read(path)?;
    let mut lines = content_lines(&text);
    if let Some(&(_, first)) = lines.first() {
        if first.starts_with("hom") {
            lines.remove(0);
        }
    }
    if lines.len() != source.order() {
        return Err(err(
            lines.first().map(|&(n, _)| n).unwrap_or(0),
            format!("hom file has {} entries, expected {}", lines.len(), source.order()),
        ));
    }
    let mut map = vec![usize::MAX; source.order()];
    for &(line, l) in &lines {
        let (from, to) = parse_arrow(l, line)?;
        if from >= source.order() {
            return Err(err(line, format!("source element {from} out of range")));
        }
        if map[from] != usize::MAX {
            return Err(err(line, format!("duplicate entry for element {from}")));
        }
        map[from] = to;
    }
    GroupHom::new(source, target, map).map_err(|source| DocError::Group { line: 0, source })
}

pub fn load_cover(path: &Path, limits: &Limits) -> Result<CoverSpec, DocError> {
    let text = read(path)?;
    let lines = content_lines(&text);
    let Some(&(line1, header)) = lines.first() else {
        return Err(err(1, "empty cover document"));
    };
    let words: Vec<&str> = header.split_whitespace().collect();
    if words.len() != 11
        || words[0] != "cover"
        || words[1] != "pi"
        || words[3] != "gamma"
        || words[5] != "u"
        || words[7] != "g"
        || words[9] != "phi"
    {
        return Err(err(
            line1,
            "expected `cover pi <groupfile> gamma <groupfile> u <homfile> g <groupfile> phi <homfile>`",
        ));
    }
    let pi = load_group(&resolve(path, words[2]), limits)?;
    let gamma = load_group(&resolve(path, words[4]), limits)?;
    let u = load_hom(&resolve(path, words[6]), pi.clone(), gamma)?;
    let g = load_group(&resolve(path, words[8]), limits)?;
    let phi = load_hom(&resolve(path, words[10]), pi, g)?;
    CoverSpec::new(u, phi).map_err(|e| err(line1, format!("invalid cover: {e}")))
}
