//! Induced subdrawings.
//!
//! Keep the chosen vertices, drop every track that lies on no smooth walk
//! between two of them, splice out junctions left with two ends, and renumber
//! what survives in the original order.

use crate::curves::StateGraph;
use crate::drawing::{validate, Attachment, Drawing, End, Track, TrackEnd};
use crate::error::{Error, Result};

/// Subdrawing induced by the vertex set `s` (any order, duplicates ignored).
pub fn induced_subdrawing(d: &Drawing, s: &[usize]) -> Result<Drawing> {
    let report = validate(d);
    if !report.ok() {
        return Err(Error::NotValidated(report.to_string()));
    }
    let mut keep_vertex = vec![false; d.n_vertices];
    for &v in s {
        if v >= d.n_vertices {
            return Err(Error::OutOfRange {
                what: "vertex",
                index: v,
                limit: d.n_vertices,
            });
        }
        keep_vertex[v] = true;
    }

    let sg = StateGraph::new(d);
    let keep_track = useful_tracks(&sg, &keep_vertex, d.tracks.len());

    // Work on mutable copies; removed tracks become `None`.
    let mut tracks: Vec<Option<Track>> = d
        .tracks
        .iter()
        .zip(&keep_track)
        .map(|(&t, &k)| k.then_some(t))
        .collect();
    let alive = |e: &TrackEnd, tracks: &[Option<Track>]| tracks[e.track].is_some();
    let mut vertex_rotations: Vec<Vec<TrackEnd>> = d
        .vertex_rotations
        .iter()
        .map(|r| r.iter().copied().filter(|e| alive(e, &tracks)).collect())
        .collect();
    let mut junction_rotations = Vec::with_capacity(d.n_junctions);
    let mut arc_labels = Vec::with_capacity(d.n_junctions);
    for j in 0..d.n_junctions {
        let arcs = d.junction_arcs(j);
        let (rot, labels): (Vec<TrackEnd>, Vec<bool>) = d.junction_rotations[j]
            .iter()
            .zip(arcs)
            .filter(|(e, _)| alive(e, &tracks))
            .map(|(&e, a)| (e, a))
            .unzip();
        junction_rotations.push(rot);
        arc_labels.push(labels);
    }

    let mut junction_alive: Vec<bool> = junction_rotations.iter().map(|r| !r.is_empty()).collect();
    while let Some(j) = (0..d.n_junctions).find(|&j| junction_alive[j] && junction_rotations[j].len() == 2) {
        junction_alive[j] = false;
        let (e1, e2) = (junction_rotations[j][0], junction_rotations[j][1]);
        junction_rotations[j].clear();
        if e1.track == e2.track {
            tracks[e1.track] = None;
            continue;
        }
        // Track e1 absorbs e2: its end at j moves to e2's far attachment.
        let far = e2.opposite();
        let far_at = tracks[e2.track].unwrap().endpoint(far.end);
        let t1 = tracks[e1.track].as_mut().unwrap();
        match e1.end {
            End::A => t1.a = far_at,
            End::B => t1.b = far_at,
        }
        tracks[e2.track] = None;
        let rot = match far_at {
            Attachment::Vertex(v) => &mut vertex_rotations[v],
            Attachment::Junction(k) => &mut junction_rotations[k],
        };
        for slot in rot.iter_mut() {
            if *slot == far {
                *slot = e1;
            }
        }
    }

    // Renumber vertices, junctions and tracks in their original order.
    let mut vmap = vec![usize::MAX; d.n_vertices];
    let mut n = 0;
    for v in 0..d.n_vertices {
        if keep_vertex[v] {
            vmap[v] = n;
            n += 1;
        }
    }
    let mut jmap = vec![usize::MAX; d.n_junctions];
    let mut m = 0;
    for j in 0..d.n_junctions {
        if junction_alive[j] {
            jmap[j] = m;
            m += 1;
        }
    }
    let mut tmap = vec![usize::MAX; d.tracks.len()];
    let mut new_tracks = Vec::new();
    let remap_at = |a: Attachment| match a {
        Attachment::Vertex(v) => Attachment::Vertex(vmap[v]),
        Attachment::Junction(j) => Attachment::Junction(jmap[j]),
    };
    for (t, tr) in tracks.iter().enumerate() {
        if let Some(tr) = tr {
            tmap[t] = new_tracks.len();
            new_tracks.push(Track::new(remap_at(tr.a), remap_at(tr.b)));
        }
    }
    let remap_rot = |r: &[TrackEnd]| -> Vec<TrackEnd> { r.iter().map(|e| TrackEnd::new(tmap[e.track], e.end)).collect() };

    let mut out = Drawing {
        n_vertices: n,
        n_junctions: m,
        tracks: new_tracks,
        ..Drawing::default()
    };
    for v in 0..d.n_vertices {
        if keep_vertex[v] {
            out.vertex_rotations.push(remap_rot(&vertex_rotations[v]));
        }
    }
    for j in 0..d.n_junctions {
        if !junction_alive[j] {
            continue;
        }
        out.junction_rotations.push(remap_rot(&junction_rotations[j]));
        out.gaps.push(gaps_from_labels(&arc_labels[j]));
    }
    Ok(out)
}

/// Tracks with a traversal state on some walk between kept vertices.
fn useful_tracks(sg: &StateGraph, keep_vertex: &[bool], n_tracks: usize) -> Vec<bool> {
    let search = |starts: Vec<usize>, adj: &Vec<Vec<usize>>| {
        let mut seen = vec![false; sg.len()];
        for &s in &starts {
            seen[s] = true;
        }
        let mut stack = starts;
        while let Some(s) = stack.pop() {
            for &t in &adj[s] {
                if !std::mem::replace(&mut seen[t], true) {
                    stack.push(t);
                }
            }
        }
        seen
    };
    let sources: Vec<usize> = (0..keep_vertex.len())
        .filter(|&v| keep_vertex[v])
        .flat_map(|v| sg.vertex_out[v].iter().copied())
        .collect();
    let sinks: Vec<usize> = (0..sg.len())
        .filter(|&s| sg.arrival_vertex[s].is_some_and(|v| keep_vertex[v]))
        .collect();
    let forward = search(sources, &sg.succ);
    let backward = search(sinks, &sg.pred);
    (0..n_tracks)
        .map(|t| (0..2).any(|dir| forward[2 * t + dir] && backward[2 * t + dir]))
        .collect()
}

/// Gap positions of a pruned rotation: the two places where the original
/// arc label changes. Spliced ends keep the label of the slot they replaced.
fn gaps_from_labels(labels: &[bool]) -> (usize, usize) {
    let deg = labels.len();
    let changes: Vec<usize> = (0..deg).filter(|&i| labels[i] != labels[(i + 1) % deg]).collect();
    debug_assert_eq!(changes.len(), 2, "pruned junction lost an arc");
    (changes[0], changes[1])
}
