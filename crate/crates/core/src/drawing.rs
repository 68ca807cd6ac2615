//! Combinatorial model of ordered strict outerconfluent drawings.
//!
//! A [`Drawing`] carries no coordinates. Vertices `0..n` sit on the boundary of
//! the disk in clockwise order, junctions are interior, and every attachment
//! lists its incident track ends clockwise. A vertex rotation is a linear list
//! that starts just after the outward direction; a junction rotation is cyclic.
//! Each junction records two gap positions: gap `g` is the angle between slot
//! `g` and slot `(g + 1) % degree`. The two gaps cut the rotation into two arcs,
//! and two ends pass smoothly through the junction iff they lie in different arcs.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::planar::planify_unchecked;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Attachment {
    Vertex(usize),
    Junction(usize),
}

impl fmt::Display for Attachment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Attachment::Vertex(v) => write!(f, "v{v}"),
            Attachment::Junction(j) => write!(f, "j{j}"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum End {
    A,
    B,
}

impl End {
    pub fn other(self) -> End {
        match self {
            End::A => End::B,
            End::B => End::A,
        }
    }

    pub fn index(self) -> usize {
        match self {
            End::A => 0,
            End::B => 1,
        }
    }
}

/// One endpoint of a track.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct TrackEnd {
    pub track: usize,
    pub end: End,
}

impl TrackEnd {
    pub fn new(track: usize, end: End) -> Self {
        TrackEnd { track, end }
    }

    pub fn opposite(self) -> TrackEnd {
        TrackEnd::new(self.track, self.end.other())
    }
}

impl fmt::Display for TrackEnd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{:?}", self.track, self.end)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Track {
    pub a: Attachment,
    pub b: Attachment,
}

impl Track {
    pub fn new(a: Attachment, b: Attachment) -> Self {
        Track { a, b }
    }

    pub fn endpoint(&self, end: End) -> Attachment {
        match end {
            End::A => self.a,
            End::B => self.b,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Drawing {
    pub n_vertices: usize,
    pub n_junctions: usize,
    pub tracks: Vec<Track>,
    pub vertex_rotations: Vec<Vec<TrackEnd>>,
    pub junction_rotations: Vec<Vec<TrackEnd>>,
    pub gaps: Vec<(usize, usize)>,
}

impl Drawing {
    /// The drawing with no vertices, junctions or tracks.
    pub fn empty() -> Self {
        Drawing::default()
    }

    /// A drawing with `n` isolated boundary vertices.
    pub fn with_vertices(n: usize) -> Self {
        Drawing {
            n_vertices: n,
            vertex_rotations: vec![Vec::new(); n],
            ..Drawing::default()
        }
    }

    pub fn rotation(&self, at: Attachment) -> &[TrackEnd] {
        match at {
            Attachment::Vertex(v) => &self.vertex_rotations[v],
            Attachment::Junction(j) => &self.junction_rotations[j],
        }
    }

    pub fn attachment_of(&self, end: TrackEnd) -> Attachment {
        self.tracks[end.track].endpoint(end.end)
    }

    pub fn junction_degree(&self, j: usize) -> usize {
        self.junction_rotations[j].len()
    }

    /// Arc membership of each slot of junction `j`: slots `g1+1 ..= g2` are
    /// arc `true`, the rest arc `false`.
    pub fn junction_arcs(&self, j: usize) -> Vec<bool> {
        let (g1, g2) = ordered_gaps(self.gaps[j]);
        (0..self.junction_degree(j))
            .map(|slot| slot > g1 && slot <= g2)
            .collect()
    }

    /// Reflect the drawing: vertex `v` becomes `n - 1 - v` and every rotation
    /// is reversed.
    pub fn mirror(&self) -> Drawing {
        let n = self.n_vertices;
        let flip = |a: Attachment| match a {
            Attachment::Vertex(v) => Attachment::Vertex(n - 1 - v),
            j => j,
        };
        let tracks = self.tracks.iter().map(|t| Track::new(flip(t.a), flip(t.b))).collect();
        let vertex_rotations = (0..n)
            .map(|v| self.vertex_rotations[n - 1 - v].iter().rev().copied().collect())
            .collect();
        let junction_rotations = self
            .junction_rotations
            .iter()
            .map(|r| r.iter().rev().copied().collect())
            .collect();
        let gaps = self
            .gaps
            .iter()
            .zip(&self.junction_rotations)
            .map(|(&(g1, g2), rot)| {
                let d = rot.len();
                let f = |g: usize| (2 * d - 2 - g) % d;
                ordered_gaps((f(g1), f(g2)))
            })
            .collect();
        Drawing {
            n_vertices: n,
            n_junctions: self.n_junctions,
            tracks,
            vertex_rotations,
            junction_rotations,
            gaps,
        }
    }

    /// Index-range and incidence consistency: every referenced id exists and
    /// every track end occupies exactly one slot, at its own attachment.
    /// Planarity and junction conditions are left to [`validate`].
    pub fn check_structure(&self) -> std::result::Result<(), Violation> {
        if self.vertex_rotations.len() != self.n_vertices
            || self.junction_rotations.len() != self.n_junctions
            || self.gaps.len() != self.n_junctions
        {
            return Err(Violation::RotationMismatch(
                "rotation or gap table sizes disagree with vertex/junction counts".into(),
            ));
        }
        for (t, track) in self.tracks.iter().enumerate() {
            for at in [track.a, track.b] {
                let ok = match at {
                    Attachment::Vertex(v) => v < self.n_vertices,
                    Attachment::Junction(j) => j < self.n_junctions,
                };
                if !ok {
                    return Err(Violation::DanglingReference(format!("track {t} attaches to {at}")));
                }
            }
        }
        let mut seen = vec![[false; 2]; self.tracks.len()];
        let all = (0..self.n_vertices)
            .map(Attachment::Vertex)
            .chain((0..self.n_junctions).map(Attachment::Junction));
        for at in all {
            for &e in self.rotation(at) {
                if e.track >= self.tracks.len() {
                    return Err(Violation::DanglingReference(format!("rotation of {at} lists {e}")));
                }
                if self.attachment_of(e) != at {
                    return Err(Violation::RotationMismatch(format!(
                        "{e} listed at {at} but attaches to {}",
                        self.attachment_of(e)
                    )));
                }
                let slot = &mut seen[e.track][e.end.index()];
                if *slot {
                    return Err(Violation::RotationMismatch(format!("{e} listed twice")));
                }
                *slot = true;
            }
        }
        if let Some(t) = seen.iter().position(|s| !s[0] || !s[1]) {
            return Err(Violation::RotationMismatch(format!("an end of track {t} is in no rotation")));
        }
        Ok(())
    }
}

pub(crate) fn ordered_gaps((g1, g2): (usize, usize)) -> (usize, usize) {
    (g1.min(g2), g1.max(g2))
}

/// A coded validation finding.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Violation {
    DanglingReference(String),
    RotationMismatch(String),
    JunctionDegree { junction: usize, degree: usize },
    GapPlacement { junction: usize, gaps: (usize, usize) },
    DuplicateTrack { first: usize, second: usize },
    FloatingComponent { junction: usize },
    Planarity { euler: i64 },
    OuterFaceOrder(String),
}

impl Violation {
    pub fn code(&self) -> &'static str {
        match self {
            Violation::DanglingReference(_) => "dangling reference",
            Violation::RotationMismatch(_) => "rotation mismatch",
            Violation::JunctionDegree { .. } => "junction degree < 3",
            Violation::GapPlacement { .. } => "gap placement",
            Violation::DuplicateTrack { .. } => "duplicate track",
            Violation::FloatingComponent { .. } => "floating component",
            Violation::Planarity { .. } => "planarity failure",
            Violation::OuterFaceOrder(_) => "outer-face order failure",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.code())?;
        match self {
            Violation::DanglingReference(s)
            | Violation::RotationMismatch(s)
            | Violation::OuterFaceOrder(s) => write!(f, "{s}"),
            Violation::JunctionDegree { junction, degree } => write!(f, "j{junction} has degree {degree}"),
            Violation::GapPlacement { junction, gaps } => write!(f, "j{junction} gaps {gaps:?}"),
            Violation::DuplicateTrack { first, second } => {
                write!(f, "tracks {first} and {second} join the same attachments")
            }
            Violation::FloatingComponent { junction } => {
                write!(f, "j{junction} is not connected to any vertex")
            }
            Violation::Planarity { euler } => write!(f, "V - E + F = {euler}, expected 2"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, code: &str) -> bool {
        self.violations.iter().any(|v| v.code() == code)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return write!(f, "ok");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Check every drawing invariant. Planarity is decided by tracing the faces
/// of the planification (drawing plus an apex joined to every vertex in
/// boundary order) and testing Euler's relation on the connected result.
pub fn validate(d: &Drawing) -> ValidationReport {
    let mut report = ValidationReport::default();
    if let Err(v) = d.check_structure() {
        report.violations.push(v);
        return report;
    }

    for j in 0..d.n_junctions {
        let degree = d.junction_degree(j);
        if degree < 3 {
            report.violations.push(Violation::JunctionDegree { junction: j, degree });
        }
        let (g1, g2) = d.gaps[j];
        if g1 == g2 || g1 >= degree || g2 >= degree {
            report.violations.push(Violation::GapPlacement {
                junction: j,
                gaps: (g1, g2),
            });
        }
    }

    let mut pairs: HashMap<(Attachment, Attachment), usize> = HashMap::new();
    for (t, track) in d.tracks.iter().enumerate() {
        let key = (track.a.min(track.b), track.a.max(track.b));
        if let Some(&first) = pairs.get(&key) {
            report.violations.push(Violation::DuplicateTrack { first, second: t });
        } else {
            pairs.insert(key, t);
        }
    }

    let plane = planify_unchecked(d).graph;
    let comp = plane.components();
    let apex = plane.n_nodes - 1;
    for j in 0..d.n_junctions {
        let node = d.n_vertices + j;
        if comp[node] != comp[apex] {
            report.violations.push(Violation::FloatingComponent { junction: j });
        }
    }
    let components = comp.iter().copied().max().map_or(0, |c| c + 1) as i64;
    let euler = plane.euler_characteristic();
    if euler != 2 * components {
        report.violations.push(Violation::Planarity {
            euler: euler - 2 * (components - 1),
        });
    }
    report
}

fn write_u32(out: &mut Vec<u8>, x: usize) {
    out.extend_from_slice(&(x as u32).to_le_bytes());
}

/// Byte encoding that is equal for two drawings iff they are topologically
/// equivalent as ordered drawings.
///
/// Junctions and tracks are relabelled breadth-first from vertex 0; each
/// junction's cyclic rotation is read starting at the slot through which it
/// was first reached, and each track is oriented away from the attachment
/// that first reached it.
pub fn canonical_form(d: &Drawing) -> Result<Vec<u8>> {
    let report = validate(d);
    if !report.ok() {
        return Err(Error::NotValidated(report.to_string()));
    }

    let mut junction_label: Vec<Option<usize>> = vec![None; d.n_junctions];
    let mut junction_start = vec![0usize; d.n_junctions];
    let mut junction_order = Vec::with_capacity(d.n_junctions);
    let mut track_label: Vec<Option<usize>> = vec![None; d.tracks.len()];
    let mut track_first_end = vec![End::A; d.tracks.len()];
    let mut track_order = Vec::with_capacity(d.tracks.len());
    let mut vertex_seen = vec![false; d.n_vertices];
    let mut queue = VecDeque::new();

    for root in 0..d.n_vertices {
        if vertex_seen[root] {
            continue;
        }
        vertex_seen[root] = true;
        queue.push_back(Attachment::Vertex(root));
        while let Some(at) = queue.pop_front() {
            let rot = d.rotation(at);
            let start = match at {
                Attachment::Junction(j) => junction_start[j],
                Attachment::Vertex(_) => 0,
            };
            for i in 0..rot.len() {
                let e = rot[(start + i) % rot.len()];
                if track_label[e.track].is_some() {
                    continue;
                }
                track_label[e.track] = Some(track_order.len());
                track_order.push(e.track);
                track_first_end[e.track] = e.end;
                let far = e.opposite();
                match d.attachment_of(far) {
                    Attachment::Junction(j) if junction_label[j].is_none() => {
                        junction_label[j] = Some(junction_order.len());
                        junction_order.push(j);
                        junction_start[j] = d.junction_rotations[j]
                            .iter()
                            .position(|&x| x == far)
                            .expect("validated rotation");
                        queue.push_back(Attachment::Junction(j));
                    }
                    Attachment::Vertex(v) if !vertex_seen[v] => {
                        vertex_seen[v] = true;
                        queue.push_back(Attachment::Vertex(v));
                    }
                    _ => {}
                }
            }
        }
    }
    debug_assert!(junction_label.iter().all(Option::is_some));

    let relabel_at = |at: Attachment| match at {
        Attachment::Vertex(v) => (0usize, v),
        Attachment::Junction(j) => (1, junction_label[j].unwrap()),
    };
    let relabel_end = |e: TrackEnd| {
        let end = if e.end == track_first_end[e.track] { 0 } else { 1 };
        (track_label[e.track].unwrap(), end)
    };

    let mut out = Vec::new();
    write_u32(&mut out, d.n_vertices);
    write_u32(&mut out, d.n_junctions);
    write_u32(&mut out, d.tracks.len());
    for &t in &track_order {
        let first = track_first_end[t];
        for end in [first, first.other()] {
            let (kind, idx) = relabel_at(d.tracks[t].endpoint(end));
            write_u32(&mut out, kind);
            write_u32(&mut out, idx);
        }
    }
    let write_rotation = |out: &mut Vec<u8>, rot: &[TrackEnd], start: usize| {
        write_u32(out, rot.len());
        for i in 0..rot.len() {
            let (t, end) = relabel_end(rot[(start + i) % rot.len()]);
            write_u32(out, 2 * t + end);
        }
    };
    for v in 0..d.n_vertices {
        write_rotation(&mut out, &d.vertex_rotations[v], 0);
    }
    for &j in &junction_order {
        write_rotation(&mut out, &d.junction_rotations[j], junction_start[j]);
    }
    for &j in &junction_order {
        let deg = d.junction_degree(j);
        let shift = |g: usize| (g + deg - junction_start[j]) % deg;
        let (g1, g2) = ordered_gaps((shift(d.gaps[j].0), shift(d.gaps[j].1)));
        write_u32(&mut out, g1);
        write_u32(&mut out, g2);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gk::generate_gk;

    /// Three vertices joined through one degree-3 junction.
    fn claw() -> Drawing {
        let v = Attachment::Vertex;
        let j = Attachment::Junction;
        Drawing {
            n_vertices: 3,
            n_junctions: 1,
            tracks: vec![Track::new(v(0), j(0)), Track::new(v(1), j(0)), Track::new(v(2), j(0))],
            vertex_rotations: vec![
                vec![TrackEnd::new(0, End::A)],
                vec![TrackEnd::new(1, End::A)],
                vec![TrackEnd::new(2, End::A)],
            ],
            junction_rotations: vec![vec![
                TrackEnd::new(0, End::B),
                TrackEnd::new(1, End::B),
                TrackEnd::new(2, End::B),
            ]],
            gaps: vec![(0, 2)],
        }
    }

    #[test]
    fn empty_drawing_is_valid() {
        assert!(validate(&Drawing::empty()).ok());
        assert!(validate(&Drawing::with_vertices(2)).ok());
    }

    #[test]
    fn claw_is_valid() {
        let r = validate(&claw());
        assert!(r.ok(), "{r}");
    }

    #[test]
    fn two_track_junction_is_rejected() {
        let v = Attachment::Vertex;
        let j = Attachment::Junction;
        let d = Drawing {
            n_vertices: 2,
            n_junctions: 1,
            tracks: vec![Track::new(v(0), j(0)), Track::new(j(0), v(1))],
            vertex_rotations: vec![vec![TrackEnd::new(0, End::A)], vec![TrackEnd::new(1, End::B)]],
            junction_rotations: vec![vec![TrackEnd::new(0, End::B), TrackEnd::new(1, End::A)]],
            gaps: vec![(0, 1)],
        };
        let r = validate(&d);
        assert!(r.has("junction degree < 3"), "{r}");
    }

    #[test]
    fn bad_gaps_and_duplicates() {
        let mut d = claw();
        d.gaps[0] = (1, 1);
        assert!(validate(&d).has("gap placement"));

        let v = Attachment::Vertex;
        let dup = Drawing {
            n_vertices: 2,
            n_junctions: 0,
            tracks: vec![Track::new(v(0), v(1)), Track::new(v(1), v(0))],
            vertex_rotations: vec![
                vec![TrackEnd::new(0, End::A), TrackEnd::new(1, End::B)],
                vec![TrackEnd::new(1, End::A), TrackEnd::new(0, End::B)],
            ],
            junction_rotations: vec![],
            gaps: vec![],
        };
        assert!(validate(&dup).has("duplicate track"));
    }

    #[test]
    fn misplaced_end_is_a_mismatch() {
        let mut d = claw();
        d.vertex_rotations[0].clear();
        d.vertex_rotations[1].push(TrackEnd::new(0, End::A));
        assert!(validate(&d).has("rotation mismatch"));
    }

    #[test]
    fn swapped_boundary_order_breaks_planarity() {
        // Chords 0-2 and 1-3 of a 4-cycle must cross inside the disk.
        let v = Attachment::Vertex;
        let d = Drawing {
            n_vertices: 4,
            n_junctions: 0,
            tracks: vec![Track::new(v(0), v(2)), Track::new(v(1), v(3))],
            vertex_rotations: vec![
                vec![TrackEnd::new(0, End::A)],
                vec![TrackEnd::new(1, End::A)],
                vec![TrackEnd::new(0, End::B)],
                vec![TrackEnd::new(1, End::B)],
            ],
            junction_rotations: vec![],
            gaps: vec![],
        };
        assert!(validate(&d).has("planarity failure"));
    }

    #[test]
    fn gk_validates() {
        for k in 1..=4 {
            let r = validate(&generate_gk(k).unwrap());
            assert!(r.ok(), "G_{k}: {r}");
        }
    }

    #[test]
    fn canonical_form_ignores_junction_and_track_ids() {
        let d = generate_gk(2).unwrap();
        let m = d.n_junctions;
        let t = d.tracks.len();
        // Reverse junction ids, reverse track ids, swap every track's ends,
        // and rotate each junction rotation by one slot.
        let jmap = |j: usize| m - 1 - j;
        let tmap = |x: usize| t - 1 - x;
        let at = |a: Attachment| match a {
            Attachment::Junction(j) => Attachment::Junction(jmap(j)),
            v => v,
        };
        let end = |e: TrackEnd| TrackEnd::new(tmap(e.track), e.end.other());
        let mut tracks = vec![Track::new(Attachment::Vertex(0), Attachment::Vertex(0)); t];
        for (i, tr) in d.tracks.iter().enumerate() {
            tracks[tmap(i)] = Track::new(at(tr.b), at(tr.a));
        }
        let mut junction_rotations = vec![Vec::new(); m];
        let mut gaps = vec![(0, 0); m];
        for j in 0..m {
            let rot = &d.junction_rotations[j];
            let deg = rot.len();
            junction_rotations[jmap(j)] = (0..deg).map(|i| end(rot[(i + 1) % deg])).collect();
            let shift = |g: usize| (g + deg - 1) % deg;
            gaps[jmap(j)] = ordered_gaps((shift(d.gaps[j].0), shift(d.gaps[j].1)));
        }
        let relabelled = Drawing {
            n_vertices: d.n_vertices,
            n_junctions: m,
            tracks,
            vertex_rotations: d
                .vertex_rotations
                .iter()
                .map(|r| r.iter().map(|&e| end(e)).collect())
                .collect(),
            junction_rotations,
            gaps,
        };
        assert!(validate(&relabelled).ok());
        assert_ne!(relabelled, d);
        assert_eq!(canonical_form(&relabelled).unwrap(), canonical_form(&d).unwrap());
    }

    #[test]
    fn canonical_form_distinguishes_sizes_and_requires_validity() {
        let a = canonical_form(&generate_gk(2).unwrap()).unwrap();
        let b = canonical_form(&generate_gk(3).unwrap()).unwrap();
        assert_ne!(a, b);
        let mut bad = claw();
        bad.gaps[0] = (0, 0);
        assert!(matches!(canonical_form(&bad), Err(Error::NotValidated(_))));
    }

    #[test]
    fn mirror_is_an_involution_and_valid() {
        let d = generate_gk(3).unwrap();
        let m = d.mirror();
        assert!(validate(&m).ok());
        assert_eq!(m.mirror(), d);
    }
}
