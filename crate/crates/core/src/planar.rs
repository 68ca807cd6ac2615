//! Rotation-system plane graphs and the planification encoding of drawings.
//!
//! The planification of a drawing is the plane graph on its vertices and
//! junctions plus one apex `o` outside the disk, joined to every vertex. Its
//! sharp-angle set marks every junction angle except the two smooth gaps, so
//! the tuple `(graph, o, start, sharp)` determines the drawing up to
//! topological equivalence.
//!
//! Node numbering produced by [`planify`]: drawing vertices `0..n`, junctions
//! `n..n+m`, apex `n+m`. Edge `t` is track `t` (side 0 at its `A` end); edge
//! `T + v` joins the apex (side 0) to vertex `v` (side 1).

use std::collections::BTreeSet;

use crate::drawing::{ordered_gaps, validate, Attachment, Drawing, End, Track, TrackEnd};
use crate::error::{Error, Result};

/// A directed half of edge `edge`, leaving the endpoint on `side` (0 or 1).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Dart {
    pub edge: usize,
    pub side: usize,
}

impl Dart {
    pub fn reversed(self) -> Dart {
        Dart {
            edge: self.edge,
            side: 1 - self.side,
        }
    }

    fn id(self) -> usize {
        2 * self.edge + self.side
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PlaneGraph {
    pub n_nodes: usize,
    pub edges: Vec<(usize, usize)>,
    /// Darts leaving each node, clockwise.
    pub rotations: Vec<Vec<Dart>>,
}

impl PlaneGraph {
    pub fn tail(&self, d: Dart) -> usize {
        let (a, b) = self.edges[d.edge];
        if d.side == 0 {
            a
        } else {
            b
        }
    }

    pub fn head(&self, d: Dart) -> usize {
        self.tail(d.reversed())
    }

    /// Every dart appears exactly once, in the rotation of its tail.
    pub fn check_rotations(&self) -> std::result::Result<(), String> {
        if self.rotations.len() != self.n_nodes {
            return Err("rotation table size differs from node count".into());
        }
        let mut seen = vec![false; 2 * self.edges.len()];
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if a >= self.n_nodes || b >= self.n_nodes {
                return Err(format!("edge {e} leaves the node range"));
            }
        }
        for (x, rot) in self.rotations.iter().enumerate() {
            for &d in rot {
                if d.edge >= self.edges.len() || d.side > 1 {
                    return Err(format!("node {x} lists a dart of unknown edge {}", d.edge));
                }
                if self.tail(d) != x {
                    return Err(format!("dart {d:?} listed at node {x}"));
                }
                if std::mem::replace(&mut seen[d.id()], true) {
                    return Err(format!("dart {d:?} listed twice"));
                }
            }
        }
        match seen.iter().position(|&s| !s) {
            Some(i) => Err(format!("edge {} has a dart in no rotation", i / 2)),
            None => Ok(()),
        }
    }

    fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; 2 * self.edges.len()];
        for rot in &self.rotations {
            for (i, d) in rot.iter().enumerate() {
                pos[d.id()] = i;
            }
        }
        pos
    }

    /// Face successor: arrive along `d`, then leave by the dart following the
    /// reversed dart in the head's rotation.
    fn face_next(&self, d: Dart, pos: &[usize]) -> Dart {
        let rev = d.reversed();
        let at = self.tail(rev);
        let rot = &self.rotations[at];
        rot[(pos[rev.id()] + 1) % rot.len()]
    }

    /// Face boundaries as dart cycles.
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let pos = self.positions();
        let mut used = vec![false; 2 * self.edges.len()];
        let mut faces = Vec::new();
        for e in 0..self.edges.len() {
            for side in 0..2 {
                let start = Dart { edge: e, side };
                if used[start.id()] {
                    continue;
                }
                let mut face = Vec::new();
                let mut d = start;
                while !used[d.id()] {
                    used[d.id()] = true;
                    face.push(d);
                    d = self.face_next(d, &pos);
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Connected-component id of each node.
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.n_nodes];
        let mut adj = vec![Vec::new(); self.n_nodes];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut next = 0;
        for s in 0..self.n_nodes {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if comp[y] == usize::MAX {
                        comp[y] = next;
                        stack.push(y);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    /// `V - E + F`, where an isolated node bounds one face of its own.
    pub fn euler_characteristic(&self) -> i64 {
        let isolated = self.rotations.iter().filter(|r| r.is_empty()).count();
        let faces = self.faces().len() + isolated;
        self.n_nodes as i64 - self.edges.len() as i64 + faces as i64
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Planification {
    pub graph: PlaneGraph,
    pub apex: usize,
    /// Start vertex of the boundary order; `None` for the empty drawing.
    pub start: Option<usize>,
    /// Sharp angles as `(node, angle)`, where angle `g` lies between rotation
    /// slots `g` and `g + 1` of the node.
    pub sharp: BTreeSet<(usize, usize)>,
}

pub(crate) fn planify_unchecked(d: &Drawing) -> Planification {
    let n = d.n_vertices;
    let m = d.n_junctions;
    let t = d.tracks.len();
    let apex = n + m;
    let node = |a: Attachment| match a {
        Attachment::Vertex(v) => v,
        Attachment::Junction(j) => n + j,
    };
    let dart = |e: TrackEnd| Dart {
        edge: e.track,
        side: e.end.index(),
    };
    let mut edges: Vec<(usize, usize)> = d.tracks.iter().map(|tr| (node(tr.a), node(tr.b))).collect();
    edges.extend((0..n).map(|v| (apex, v)));

    let mut rotations = Vec::with_capacity(n + m + 1);
    for v in 0..n {
        let mut rot = vec![Dart { edge: t + v, side: 1 }];
        rot.extend(d.vertex_rotations[v].iter().map(|&e| dart(e)));
        rotations.push(rot);
    }
    for j in 0..m {
        rotations.push(d.junction_rotations[j].iter().map(|&e| dart(e)).collect());
    }
    // Seen from outside the disk the boundary order runs counterclockwise.
    let apex_rot = (0..n).map(|i| Dart {
        edge: t + (n - i) % n,
        side: 0,
    });
    rotations.push(apex_rot.collect());

    let mut sharp = BTreeSet::new();
    for j in 0..m {
        let (g1, g2) = d.gaps[j];
        for g in 0..d.junction_degree(j) {
            if g != g1 && g != g2 {
                sharp.insert((n + j, g));
            }
        }
    }
    Planification {
        graph: PlaneGraph {
            n_nodes: n + m + 1,
            edges,
            rotations,
        },
        apex,
        start: (n > 0).then_some(0),
        sharp,
    }
}

pub fn planify(d: &Drawing) -> Result<Planification> {
    let report = validate(d);
    if !report.ok() {
        return Err(Error::NotValidated(report.to_string()));
    }
    Ok(planify_unchecked(d))
}

impl Planification {
    /// Structural checks on an arbitrary tuple: consistent rotations, apex
    /// edges to distinct nodes, start adjacent to the apex, sharp angles only
    /// at junctions with exactly two angles left out, and Euler's relation.
    pub fn validate(&self) -> Result<()> {
        let g = &self.graph;
        g.check_rotations().map_err(Error::MalformedPlanification)?;
        if self.apex >= g.n_nodes {
            return Err(Error::MalformedPlanification("apex out of range".into()));
        }
        let apex_rot = &g.rotations[self.apex];
        let mut is_vertex = vec![false; g.n_nodes];
        for &dart in apex_rot {
            let v = g.head(dart);
            if v == self.apex || std::mem::replace(&mut is_vertex[v], true) {
                return Err(Error::MalformedPlanification(format!(
                    "apex edge to node {v} is a loop or repeated"
                )));
            }
        }
        match self.start {
            Some(s) if s < g.n_nodes && is_vertex[s] => {}
            None if apex_rot.is_empty() => {}
            _ => {
                return Err(Error::MalformedPlanification(
                    "start must be a neighbour of the apex".into(),
                ))
            }
        }
        for (x, &vertex) in is_vertex.iter().enumerate() {
            if x == self.apex || vertex {
                if self.sharp.range((x, 0)..(x + 1, 0)).next().is_some() {
                    return Err(Error::MalformedPlanification(format!(
                        "sharp angle recorded at non-junction node {x}"
                    )));
                }
                continue;
            }
            let deg = g.rotations[x].len();
            if let Some(&(_, a)) = self.sharp.range((x, deg)..(x + 1, 0)).next() {
                return Err(Error::MalformedPlanification(format!("angle {a} at node {x} out of range")));
            }
            let present = self.sharp.range((x, 0)..(x, deg)).count();
            if present + 2 != deg {
                return Err(Error::MalformedSharpAngles {
                    node: x,
                    missing: deg - present,
                });
            }
        }
        let comps = g.components();
        let c = comps.iter().copied().max().map_or(0, |c| c + 1) as i64;
        if g.euler_characteristic() != 2 * c {
            return Err(Error::MalformedPlanification("rotation system is not planar".into()));
        }
        Ok(())
    }
}

/// Rebuild a drawing from a planification. Vertices are the apex's
/// neighbours, numbered from `start` in boundary order; junctions are all
/// other nodes, numbered by node id; tracks are the non-apex edges in edge
/// order, oriented from the edge's first node.
pub fn deplanify(p: &Planification) -> Result<Drawing> {
    p.validate()?;
    let g = &p.graph;
    let apex_rot = &g.rotations[p.apex];
    let n = apex_rot.len();

    let mut label: Vec<Option<Attachment>> = vec![None; g.n_nodes];
    let mut apex_dart_at = vec![None; g.n_nodes];
    if let Some(s) = p.start {
        let pos = apex_rot.iter().position(|&d| g.head(d) == s).unwrap();
        for i in 0..n {
            let dart = apex_rot[(pos + n - i) % n];
            label[g.head(dart)] = Some(Attachment::Vertex(i));
            apex_dart_at[g.head(dart)] = Some(dart.reversed());
        }
    }
    let mut junction_nodes = Vec::new();
    for (x, slot) in label.iter_mut().enumerate() {
        if x != p.apex && slot.is_none() {
            *slot = Some(Attachment::Junction(junction_nodes.len()));
            junction_nodes.push(x);
        }
    }

    let mut track_of_edge = vec![None; g.edges.len()];
    let mut tracks = Vec::new();
    for (e, &(a, b)) in g.edges.iter().enumerate() {
        if a == p.apex || b == p.apex {
            continue;
        }
        track_of_edge[e] = Some(tracks.len());
        tracks.push(Track::new(label[a].unwrap(), label[b].unwrap()));
    }
    let to_end = |d: Dart| {
        let t = track_of_edge[d.edge].expect("non-apex dart");
        TrackEnd::new(t, if d.side == 0 { End::A } else { End::B })
    };

    let mut vertex_rotations = vec![Vec::new(); n];
    for x in 0..g.n_nodes {
        if let Some(Attachment::Vertex(v)) = label[x] {
            let rot = &g.rotations[x];
            let outward = apex_dart_at[x].unwrap();
            let pos = rot.iter().position(|&d| d == outward).unwrap();
            vertex_rotations[v] = (1..rot.len()).map(|i| to_end(rot[(pos + i) % rot.len()])).collect();
        }
    }
    let mut junction_rotations = Vec::with_capacity(junction_nodes.len());
    let mut gaps = Vec::with_capacity(junction_nodes.len());
    for &x in &junction_nodes {
        let rot = &g.rotations[x];
        junction_rotations.push(rot.iter().map(|&d| to_end(d)).collect());
        let missing: Vec<usize> = (0..rot.len()).filter(|&a| !p.sharp.contains(&(x, a))).collect();
        gaps.push(ordered_gaps((missing[0], missing[1])));
    }
    Ok(Drawing {
        n_vertices: n,
        n_junctions: junction_nodes.len(),
        tracks,
        vertex_rotations,
        junction_rotations,
        gaps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::canonical_form;
    use crate::gk::generate_gk;

    #[test]
    fn g1_planification() {
        let p = planify(&generate_gk(1).unwrap()).unwrap();
        assert_eq!(p.graph.n_nodes, 4);
        assert_eq!(p.graph.edges.len(), 6);
        assert!(p.sharp.is_empty());
        assert_eq!(p.graph.euler_characteristic(), 2);
    }

    #[test]
    fn g2_sharp_angle_count() {
        let d = generate_gk(2).unwrap();
        let p = planify(&d).unwrap();
        let expected: usize = (0..d.n_junctions).map(|j| d.junction_degree(j) - 2).sum();
        assert_eq!(expected, 6);
        assert_eq!(p.sharp.len(), expected);
    }

    #[test]
    fn empty_round_trip() {
        let p = planify(&Drawing::empty()).unwrap();
        assert_eq!(p.graph.n_nodes, 1);
        assert!(p.sharp.is_empty() && p.start.is_none());
        assert_eq!(deplanify(&p).unwrap(), Drawing::empty());
    }

    #[test]
    fn gk_round_trip() {
        for k in 1..=3 {
            let d = generate_gk(k).unwrap();
            let back = deplanify(&planify(&d).unwrap()).unwrap();
            assert_eq!(canonical_form(&back).unwrap(), canonical_form(&d).unwrap());
        }
    }

    #[test]
    fn missing_sharp_angle_is_rejected() {
        let mut p = planify(&generate_gk(2).unwrap()).unwrap();
        let first = *p.sharp.iter().next().unwrap();
        p.sharp.remove(&first);
        assert!(matches!(
            deplanify(&p),
            Err(Error::MalformedSharpAngles { missing: 3, .. })
        ));
    }

    #[test]
    fn relabelled_plane_graph_decodes_to_same_drawing() {
        // Move the apex to node 0 and shift every other node up by one.
        let d = generate_gk(2).unwrap();
        let p = planify(&d).unwrap();
        let nn = p.graph.n_nodes;
        let map = |x: usize| if x == p.apex { 0 } else { x + 1 };
        let mut rotations = vec![Vec::new(); nn];
        for x in 0..nn {
            rotations[map(x)] = p.graph.rotations[x].clone();
        }
        let q = Planification {
            graph: PlaneGraph {
                n_nodes: nn,
                edges: p.graph.edges.iter().map(|&(a, b)| (map(a), map(b))).collect(),
                rotations,
            },
            apex: 0,
            start: p.start.map(map),
            sharp: p.sharp.iter().map(|&(x, a)| (map(x), a)).collect(),
        };
        let back = deplanify(&q).unwrap();
        assert_eq!(canonical_form(&back).unwrap(), canonical_form(&d).unwrap());
    }
}
