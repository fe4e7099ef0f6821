//! Versioned text formats: fpgroup v1, intmatrix v1, scomplex v1,
//! smap v1, cover v1, tower v1, gtower v1.
//!
//! Every parser reports errors with 1-based line numbers; every
//! serializer emits a form the parser accepts, and serialize ∘ parse
//! is idempotent on the text.

use crate::cover::{Cover, CoverTower, RefinementMap};
use crate::complex::SimplicialComplex;
use crate::error::CohoxError;
use crate::fpgroup::{FpGroup, GroupHom};
use crate::io::literal::parse_group_literal;
use crate::matrix::IntMatrix;
use crate::tower::GroupTower;
use num_bigint::BigInt;
use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

fn err(line: usize, msg: impl Into<String>) -> CohoxError {
    CohoxError::Parse {
        line,
        msg: msg.into(),
    }
}

/// Non-blank, non-comment lines with their 1-based numbers.
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

fn expect_header<'a>(
    lines: &[(usize, &'a str)],
    header: &str,
) -> Result<(), CohoxError> {
    match lines.first() {
        Some(&(_, l)) if l == header => Ok(()),
        Some(&(n, l)) => Err(err(n, format!("expected header '{header}', found '{l}'"))),
        None => Err(err(1, format!("empty file, expected header '{header}'"))),
    }
}

fn keyed<'a>(line: usize, text: &'a str, key: &str) -> Result<&'a str, CohoxError> {
    text.strip_prefix(key)
        .and_then(|r| r.strip_prefix(':'))
        .map(str::trim)
        .ok_or_else(|| err(line, format!("expected '{key}: ...', found '{text}'")))
}

fn parse_usize(line: usize, tok: &str, what: &str) -> Result<usize, CohoxError> {
    tok.parse()
        .map_err(|_| err(line, format!("bad {what} '{tok}'")))
}

fn parse_int_row(line: usize, text: &str) -> Result<Vec<BigInt>, CohoxError> {
    text.split_whitespace()
        .map(|t| {
            t.parse::<BigInt>()
                .map_err(|_| err(line, format!("bad integer '{t}'")))
        })
        .collect()
}

fn parse_usize_row(line: usize, text: &str, what: &str) -> Result<Vec<usize>, CohoxError> {
    text.split_whitespace()
        .map(|t| parse_usize(line, t, what))
        .collect()
}

// --- fpgroup v1 ---

pub fn parse_fpgroup(text: &str) -> Result<FpGroup, CohoxError> {
    let lines = content_lines(text);
    expect_header(&lines, "fpgroup v1")?;
    let &(n, l) = lines
        .get(1)
        .ok_or_else(|| err(lines[0].0, "missing 'generators:' line"))?;
    let k = parse_usize(n, keyed(n, l, "generators")?, "generator count")?;
    let mut relators = Vec::new();
    for &(n, l) in &lines[2..] {
        let row = parse_int_row(n, l)?;
        if row.len() != k {
            return Err(err(n, format!("relator has {} entries, expected {k}", row.len())));
        }
        relators.push(row);
    }
    let relations = IntMatrix::from_columns(k, relators);
    Ok(FpGroup::from_presentation(k, relations))
}

pub fn serialize_fpgroup(g: &FpGroup) -> String {
    let mut out = String::from("fpgroup v1\n");
    out.push_str(&format!("generators: {}\n", g.generator_count()));
    let rels = g.relations();
    for c in 0..rels.cols() {
        let col: Vec<String> = rels.column(c).iter().map(|x| x.to_string()).collect();
        out.push_str(&col.join(" "));
        out.push('\n');
    }
    out
}

// --- intmatrix v1 ---

pub fn parse_intmatrix(text: &str) -> Result<IntMatrix, CohoxError> {
    let lines = content_lines(text);
    expect_header(&lines, "intmatrix v1")?;
    let &(n1, l1) = lines.get(1).ok_or_else(|| err(1, "missing 'rows:' line"))?;
    let rows = parse_usize(n1, keyed(n1, l1, "rows")?, "row count")?;
    let &(n2, l2) = lines.get(2).ok_or_else(|| err(n1, "missing 'cols:' line"))?;
    let cols = parse_usize(n2, keyed(n2, l2, "cols")?, "column count")?;
    if lines.len() - 3 != rows {
        return Err(err(
            lines.last().map(|&(n, _)| n).unwrap_or(n2),
            format!("expected {rows} matrix rows, found {}", lines.len() - 3),
        ));
    }
    let mut m = IntMatrix::zeros(rows, cols);
    for (r, &(n, l)) in lines[3..].iter().enumerate() {
        let row = parse_int_row(n, l)?;
        if row.len() != cols {
            return Err(err(n, format!("row has {} entries, expected {cols}", row.len())));
        }
        for (c, v) in row.into_iter().enumerate() {
            m.set(r, c, v);
        }
    }
    Ok(m)
}

pub fn serialize_intmatrix(m: &IntMatrix) -> String {
    let mut out = String::from("intmatrix v1\n");
    out.push_str(&format!("rows: {}\ncols: {}\n", m.rows(), m.cols()));
    for r in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|c| m.get(r, c).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

// --- scomplex v1 ---

pub fn parse_scomplex(text: &str) -> Result<SimplicialComplex, CohoxError> {
    let lines = content_lines(text);
    expect_header(&lines, "scomplex v1")?;
    let mut maximal = Vec::new();
    for &(n, l) in &lines[1..] {
        let s = parse_usize_row(n, l, "vertex")?;
        let distinct: BTreeSet<usize> = s.iter().copied().collect();
        if distinct.len() != s.len() {
            return Err(err(n, format!("repeated vertex in simplex '{l}'")));
        }
        maximal.push(s);
    }
    Ok(SimplicialComplex::from_maximal(&maximal))
}

pub fn serialize_scomplex(c: &SimplicialComplex) -> String {
    let mut out = String::from("scomplex v1\n");
    for s in c.maximal_simplices() {
        let row: Vec<String> = s.iter().map(|v| v.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

// --- smap v1 ---

pub fn parse_smap(text: &str) -> Result<BTreeMap<usize, usize>, CohoxError> {
    let lines = content_lines(text);
    expect_header(&lines, "smap v1")?;
    let mut map = BTreeMap::new();
    for &(n, l) in &lines[1..] {
        let (lhs, rhs) = l
            .split_once("->")
            .ok_or_else(|| err(n, format!("expected 'v -> w', found '{l}'")))?;
        let v = parse_usize(n, lhs.trim(), "vertex")?;
        let w = parse_usize(n, rhs.trim(), "vertex")?;
        if map.insert(v, w).is_some() {
            return Err(err(n, format!("vertex {v} mapped twice")));
        }
    }
    Ok(map)
}

pub fn serialize_smap(map: &BTreeMap<usize, usize>) -> String {
    let mut out = String::from("smap v1\n");
    for (v, w) in map {
        out.push_str(&format!("{v} -> {w}\n"));
    }
    out
}

// --- cover v1 ---

pub fn parse_cover(text: &str) -> Result<Cover, CohoxError> {
    let lines = content_lines(text);
    expect_header(&lines, "cover v1")?;
    let &(n, l) = lines.get(1).ok_or_else(|| err(1, "missing 'ground:' line"))?;
    let ground = parse_usize(n, keyed(n, l, "ground")?, "ground size")?;
    let mut members = Vec::new();
    for &(n, l) in &lines[2..] {
        let label = format!("U{}", members.len());
        let body = keyed(n, l, &label)?;
        let pts = parse_usize_row(n, body, "point")?;
        for &p in &pts {
            if p >= ground {
                return Err(err(n, format!("point {p} outside ground set 0..{ground}")));
            }
        }
        members.push(pts.into_iter().collect::<BTreeSet<usize>>());
    }
    Cover::new((0..ground).collect(), members)
}

/// The cover format only represents ground sets of the form 0..n.
pub fn serialize_cover(c: &Cover) -> String {
    let n = c.ground.len();
    debug_assert!(c.ground.iter().copied().eq(0..n));
    let mut out = String::from("cover v1\n");
    out.push_str(&format!("ground: {n}\n"));
    for (i, m) in c.members.iter().enumerate() {
        let pts: Vec<String> = m.iter().map(|p| p.to_string()).collect();
        out.push_str(&format!("U{i}: {}\n", pts.join(" ")));
    }
    out
}

// --- tower v1 ---

/// Tower file before resolving the referenced cover files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerFile {
    pub level_files: Vec<String>,
    /// refinements[k] assigns each member of level k+1 a member of level k
    pub refinements: Vec<Vec<usize>>,
    pub exhaustion: Vec<Vec<usize>>,
}

pub fn parse_tower(text: &str) -> Result<TowerFile, CohoxError> {
    let lines = content_lines(text);
    expect_header(&lines, "tower v1")?;
    let &(n, l) = lines.get(1).ok_or_else(|| err(1, "missing 'levels:' line"))?;
    let m = parse_usize(n, keyed(n, l, "levels")?, "level count")?;
    let mut level_files = Vec::new();
    let mut refinements = Vec::new();
    let mut exhaustion = Vec::new();
    for &(n, l) in &lines[2..] {
        if level_files.len() < m {
            let label = format!("level {}", level_files.len());
            level_files.push(keyed(n, l, &label)?.to_string());
        } else if refinements.len() + 1 < m {
            let label = format!("refine {}", refinements.len());
            refinements.push(parse_usize_row(n, keyed(n, l, &label)?, "assignment")?);
        } else {
            let label = format!("exhaust {}", exhaustion.len());
            exhaustion.push(parse_usize_row(n, keyed(n, l, &label)?, "point")?);
        }
    }
    if level_files.len() < m {
        return Err(err(
            lines.last().map(|&(n, _)| n).unwrap_or(1),
            format!("expected {m} level lines, found {}", level_files.len()),
        ));
    }
    Ok(TowerFile {
        level_files,
        refinements,
        exhaustion,
    })
}

pub fn serialize_tower(t: &TowerFile) -> String {
    let mut out = String::from("tower v1\n");
    out.push_str(&format!("levels: {}\n", t.level_files.len()));
    for (i, f) in t.level_files.iter().enumerate() {
        out.push_str(&format!("level {i}: {f}\n"));
    }
    for (i, r) in t.refinements.iter().enumerate() {
        let row: Vec<String> = r.iter().map(|x| x.to_string()).collect();
        out.push_str(&format!("refine {i}: {}\n", row.join(" ")));
    }
    for (i, e) in t.exhaustion.iter().enumerate() {
        let row: Vec<String> = e.iter().map(|x| x.to_string()).collect();
        out.push_str(&format!("exhaust {i}: {}\n", row.join(" ")));
    }
    out
}

/// Read a tower file and its referenced covers (relative to the tower
/// file's directory) into a checked CoverTower.
pub fn load_tower(path: &Path) -> Result<CoverTower, CohoxError> {
    let read = |p: &Path| -> Result<String, CohoxError> {
        std::fs::read_to_string(p).map_err(|e| CohoxError::Validation {
            name: "file",
            detail: format!("{}: {e}", p.display()),
        })
    };
    let tf = parse_tower(&read(path)?)?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let levels = tf
        .level_files
        .iter()
        .map(|f| parse_cover(&read(&dir.join(f))?))
        .collect::<Result<Vec<Cover>, _>>()?;
    if levels.len() < tf.refinements.len() + 1 {
        return Err(CohoxError::Validation {
            name: "tower",
            detail: "more refinement lines than consecutive level pairs".into(),
        });
    }
    let refinements = tf
        .refinements
        .iter()
        .enumerate()
        .map(|(k, a)| RefinementMap::new(levels[k + 1].clone(), levels[k].clone(), a.clone()))
        .collect::<Result<Vec<_>, _>>()?;
    let exhaustion = tf
        .exhaustion
        .iter()
        .map(|e| e.iter().copied().collect())
        .collect();
    CoverTower::new(levels, refinements, exhaustion)
}

// --- gtower v1 ---

fn parse_matrix_block(
    lines: &[(usize, &str)],
    pos: &mut usize,
    rows: usize,
    cols: usize,
    what: &str,
) -> Result<IntMatrix, CohoxError> {
    let mut m = IntMatrix::zeros(rows, cols);
    for r in 0..rows {
        let &(n, l) = lines.get(*pos).ok_or_else(|| {
            err(
                lines.last().map(|&(n, _)| n).unwrap_or(1),
                format!("missing row {r} of {what}"),
            )
        })?;
        *pos += 1;
        let row = parse_int_row(n, l)?;
        if row.len() != cols {
            return Err(err(n, format!("{what} row has {} entries, expected {cols}", row.len())));
        }
        for (c, v) in row.into_iter().enumerate() {
            m.set(r, c, v);
        }
    }
    Ok(m)
}

pub fn parse_gtower(text: &str) -> Result<GroupTower, CohoxError> {
    let lines = content_lines(text);
    expect_header(&lines, "gtower v1")?;
    let &(n, l) = lines.get(1).ok_or_else(|| err(1, "missing 'kind:' line"))?;
    match keyed(n, l, "kind")? {
        "periodic" => {
            let &(n2, l2) = lines.get(2).ok_or_else(|| err(n, "missing 'group:' line"))?;
            let g = parse_group_literal(keyed(n2, l2, "group")?)?;
            let &(n3, l3) = lines.get(3).ok_or_else(|| err(n2, "missing 'endo:' line"))?;
            if l3 != "endo:" {
                return Err(err(n3, format!("expected 'endo:', found '{l3}'")));
            }
            let k = g.generator_count();
            let mut pos = 4;
            let m = parse_matrix_block(&lines, &mut pos, k, k, "endomorphism")?;
            let endo = GroupHom::new(g.clone(), g.clone(), m)?;
            GroupTower::periodic(g, endo)
        }
        "explicit" => {
            let &(n2, l2) = lines.get(2).ok_or_else(|| err(n, "missing 'stages:' line"))?;
            let count = parse_usize(n2, keyed(n2, l2, "stages")?, "stage count")?;
            if count == 0 {
                return Err(err(n2, "explicit tower needs at least one stage"));
            }
            let mut groups = Vec::new();
            let mut pos = 3;
            for i in 0..count {
                let &(n3, l3) = lines
                    .get(pos)
                    .ok_or_else(|| err(n2, format!("missing 'stage {i}:' line")))?;
                pos += 1;
                let label = format!("stage {i}");
                groups.push(parse_group_literal(keyed(n3, l3, &label)?)?);
            }
            let mut bonding = Vec::new();
            for i in 0..count - 1 {
                let &(n3, l3) = lines
                    .get(pos)
                    .ok_or_else(|| err(n2, format!("missing 'bonding {i}:' line")))?;
                pos += 1;
                let label = format!("bonding {i}:");
                if l3 != label {
                    return Err(err(n3, format!("expected '{label}', found '{l3}'")));
                }
                let rows = groups[i].generator_count();
                let cols = groups[i + 1].generator_count();
                let m = parse_matrix_block(&lines, &mut pos, rows, cols, "bonding")?;
                bonding.push(GroupHom::new(groups[i + 1].clone(), groups[i].clone(), m)?);
            }
            GroupTower::explicit(groups, bonding)
        }
        other => Err(err(n, format!("unknown tower kind '{other}'"))),
    }
}

fn matrix_rows(m: &IntMatrix) -> String {
    let mut out = String::new();
    for r in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|c| m.get(r, c).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn serialize_gtower(t: &GroupTower) -> String {
    let mut out = String::from("gtower v1\n");
    match t {
        GroupTower::Periodic { group, endo } => {
            out.push_str("kind: periodic\n");
            out.push_str(&format!("group: {}\n", group.canonical_name()));
            out.push_str("endo:\n");
            out.push_str(&matrix_rows(&endo.matrix));
        }
        GroupTower::Explicit { groups, bonding } => {
            out.push_str("kind: explicit\n");
            out.push_str(&format!("stages: {}\n", groups.len()));
            for (i, g) in groups.iter().enumerate() {
                out.push_str(&format!("stage {i}: {}\n", g.canonical_name()));
            }
            for (i, b) in bonding.iter().enumerate() {
                out.push_str(&format!("bonding {i}:\n"));
                out.push_str(&matrix_rows(&b.matrix));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idempotent<T>(
        text: &str,
        parse: impl Fn(&str) -> Result<T, CohoxError>,
        ser: impl Fn(&T) -> String,
    ) {
        let once = ser(&parse(text).unwrap());
        let twice = ser(&parse(&once).unwrap());
        assert_eq!(once, twice);
    }

    #[test]
    fn fpgroup_round_trip() {
        let text = "fpgroup v1\ngenerators: 2\n2 0\n0 4\n";
        let g = parse_fpgroup(text).unwrap();
        assert_eq!(g.canonical_name(), "Z/2 + Z/4");
        idempotent(text, parse_fpgroup, serialize_fpgroup);
    }

    #[test]
    fn intmatrix_round_trip() {
        let text = "intmatrix v1\nrows: 2\ncols: 3\n1 -2 3\n0 5 0\n";
        let m = parse_intmatrix(text).unwrap();
        assert_eq!(serialize_intmatrix(&m), text);
        assert!(parse_intmatrix("intmatrix v1\nrows: 2\ncols: 2\n1 1\n").is_err());
    }

    #[test]
    fn scomplex_round_trip() {
        let text = "scomplex v1\n0 1\n1 2\n0 2\n";
        let c = parse_scomplex(text).unwrap();
        assert_eq!(c.dim(), Some(1));
        assert_eq!(c.simplices_of_dim(1).len(), 3);
        idempotent(text, parse_scomplex, serialize_scomplex);
        // closure computed on load: faces of a triangle appear
        let t = parse_scomplex("scomplex v1\n0 1 2\n").unwrap();
        assert_eq!(t.simplices_of_dim(1).len(), 3);
    }

    #[test]
    fn smap_round_trip() {
        let text = "smap v1\n0 -> 1\n1 -> 0\n2 -> 2\n";
        let m = parse_smap(text).unwrap();
        assert_eq!(serialize_smap(&m), text);
        assert!(parse_smap("smap v1\n0 -> 1\n0 -> 2\n").is_err());
        assert!(parse_smap("smap v1\n0 = 1\n").is_err());
    }

    #[test]
    fn cover_round_trip() {
        let c = Cover::circle_arcs(12, 3);
        let text = serialize_cover(&c);
        let back = parse_cover(&text).unwrap();
        assert_eq!(back.members, c.members);
        assert!(parse_cover("cover v1\nground: 3\nU0: 5\n").is_err());
        assert!(parse_cover("cover v1\nground: 3\nU1: 0\n").is_err());
    }

    #[test]
    fn tower_round_trip() {
        let text = "tower v1\nlevels: 2\nlevel 0: a.cov\nlevel 1: b.cov\nrefine 0: 0 0 1\nexhaust 0: 0 1\n";
        let t = parse_tower(text).unwrap();
        assert_eq!(t.level_files, vec!["a.cov", "b.cov"]);
        assert_eq!(serialize_tower(&t), text);
    }

    #[test]
    fn gtower_round_trips() {
        let p = "gtower v1\nkind: periodic\ngroup: Z\nendo:\n2\n";
        let t = parse_gtower(p).unwrap();
        assert_eq!(serialize_gtower(&t), p);
        let e = "gtower v1\nkind: explicit\nstages: 2\nstage 0: Z/4\nstage 1: Z/2\nbonding 0:\n2\n";
        let t2 = parse_gtower(e).unwrap();
        assert_eq!(serialize_gtower(&t2), e);
        assert!(parse_gtower("gtower v1\nkind: cyclic\n").is_err());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = "scomplex v1\n0 1\n0 x 2\n";
        match parse_scomplex(bad) {
            Err(CohoxError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {:?}", other.map(|_| ())),
        }
    }
}
