//! Line-oriented text format for drawings.
//!
//! ```text
//! socd 1
//! vertices 3
//! junctions 0
//! track 0 v0 v1
//! rot v0 0.A
//! gaps j0 1 2
//! ```
//!
//! `#` starts a comment. Tracks are numbered consecutively from 0. Every
//! junction needs a `gaps` line with `g1 < g2 < degree`; attachments without
//! a `rot` line have an empty rotation.

use std::fmt::Write as _;

use crate::drawing::{ordered_gaps, Attachment, Drawing, End, Track, TrackEnd};
use crate::error::{Error, Result};
use crate::graph::parse_num;

fn syntax(line: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { line, msg: msg.into() }
}

fn dangling(line: usize, id: impl ToString) -> Error {
    Error::DanglingId {
        line,
        id: id.to_string(),
    }
}

fn parse_attachment(field: &str, line: usize) -> Result<Attachment> {
    if let Some(rest) = field.strip_prefix('v') {
        Ok(Attachment::Vertex(parse_num(rest, line)?))
    } else if let Some(rest) = field.strip_prefix('j') {
        Ok(Attachment::Junction(parse_num(rest, line)?))
    } else {
        Err(syntax(line, format!("expected vK or jK, found `{field}`")))
    }
}

fn parse_end(field: &str, line: usize) -> Result<TrackEnd> {
    let (t, e) = field
        .split_once('.')
        .ok_or_else(|| syntax(line, format!("expected T.A or T.B, found `{field}`")))?;
    let end = match e {
        "A" => End::A,
        "B" => End::B,
        _ => return Err(syntax(line, format!("bad track end `{field}`"))),
    };
    Ok(TrackEnd::new(parse_num(t, line)?, end))
}

pub fn parse_drawing(text: &str) -> Result<Drawing> {
    let mut d = Drawing::empty();
    let mut header = false;
    let mut counts_fixed = false;
    let mut rot_seen: Vec<Option<usize>> = Vec::new();
    let mut rot_lines = Vec::new();
    let mut gap_lines: Vec<Option<(usize, usize, usize)>> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let f: Vec<&str> = content.split_whitespace().collect();
        if !header {
            if f != ["socd", "1"] {
                return Err(syntax(line, "expected header `socd 1`"));
            }
            header = true;
            continue;
        }
        let in_range = |at: Attachment, d: &Drawing| match at {
            Attachment::Vertex(v) => v < d.n_vertices,
            Attachment::Junction(j) => j < d.n_junctions,
        };
        match f[0] {
            "vertices" | "junctions" if f.len() == 2 => {
                if counts_fixed {
                    return Err(syntax(line, "counts must precede tracks, rotations and gaps"));
                }
                let x = parse_num(f[1], line)?;
                if f[0] == "vertices" {
                    d.n_vertices = x;
                } else {
                    d.n_junctions = x;
                }
            }
            "track" if f.len() == 4 => {
                counts_fixed = true;
                let t = parse_num(f[1], line)?;
                if t != d.tracks.len() {
                    return Err(syntax(line, format!("expected track {}, found {t}", d.tracks.len())));
                }
                let a = parse_attachment(f[2], line)?;
                let b = parse_attachment(f[3], line)?;
                for at in [a, b] {
                    if !in_range(at, &d) {
                        return Err(dangling(line, at));
                    }
                }
                d.tracks.push(Track::new(a, b));
            }
            "rot" if f.len() >= 2 => {
                counts_fixed = true;
                let at = parse_attachment(f[1], line)?;
                if !in_range(at, &d) {
                    return Err(dangling(line, at));
                }
                let key = match at {
                    Attachment::Vertex(v) => v,
                    Attachment::Junction(j) => d.n_vertices + j,
                };
                rot_seen.resize(d.n_vertices + d.n_junctions, None);
                if let Some(prev) = rot_seen[key].replace(line) {
                    return Err(syntax(line, format!("second rotation for {at} (first on line {prev})")));
                }
                let ends = f[2..].iter().map(|s| parse_end(s, line)).collect::<Result<Vec<_>>>()?;
                rot_lines.push((line, at, ends));
            }
            "gaps" if f.len() == 4 => {
                counts_fixed = true;
                let at = parse_attachment(f[1], line)?;
                let Attachment::Junction(j) = at else {
                    return Err(syntax(line, "gaps are recorded at junctions only"));
                };
                if j >= d.n_junctions {
                    return Err(dangling(line, at));
                }
                let g1 = parse_num(f[2], line)?;
                let g2 = parse_num(f[3], line)?;
                gap_lines.resize(d.n_junctions, None);
                if gap_lines[j].replace((line, g1, g2)).is_some() {
                    return Err(syntax(line, format!("second gaps line for {at}")));
                }
            }
            _ => return Err(syntax(line, format!("unexpected `{content}`"))),
        }
    }
    if !header {
        return Err(syntax(1, "missing header `socd 1`"));
    }

    d.vertex_rotations = vec![Vec::new(); d.n_vertices];
    d.junction_rotations = vec![Vec::new(); d.n_junctions];
    for (line, at, ends) in rot_lines {
        if let Some(e) = ends.iter().find(|e| e.track >= d.tracks.len()) {
            return Err(dangling(line, format!("track {}", e.track)));
        }
        match at {
            Attachment::Vertex(v) => d.vertex_rotations[v] = ends,
            Attachment::Junction(j) => d.junction_rotations[j] = ends,
        }
    }
    let last_line = text.lines().count().max(1);
    gap_lines.resize(d.n_junctions, None);
    for (j, entry) in gap_lines.into_iter().enumerate() {
        let (line, g1, g2) = entry.ok_or_else(|| syntax(last_line, format!("missing gaps line for j{j}")))?;
        let deg = d.junction_rotations[j].len();
        if !(g1 < g2 && g2 < deg) {
            return Err(syntax(line, format!("gaps must satisfy g1 < g2 < degree {deg}")));
        }
        d.gaps.push((g1, g2));
    }
    Ok(d)
}

pub fn serialize_drawing(d: &Drawing) -> String {
    let mut out = String::from("socd 1\n");
    writeln!(out, "vertices {}", d.n_vertices).unwrap();
    writeln!(out, "junctions {}", d.n_junctions).unwrap();
    for (t, tr) in d.tracks.iter().enumerate() {
        writeln!(out, "track {t} {} {}", tr.a, tr.b).unwrap();
    }
    let rots = d
        .vertex_rotations
        .iter()
        .enumerate()
        .map(|(v, r)| (Attachment::Vertex(v), r))
        .chain(d.junction_rotations.iter().enumerate().map(|(j, r)| (Attachment::Junction(j), r)));
    for (at, rot) in rots {
        write!(out, "rot {at}").unwrap();
        for e in rot {
            write!(out, " {e}").unwrap();
        }
        out.push('\n');
    }
    for (j, &gaps) in d.gaps.iter().enumerate() {
        let (g1, g2) = ordered_gaps(gaps);
        writeln!(out, "gaps j{j} {g1} {g2}").unwrap();
    }
    out
}
