//! Schematic SVG output for drawings.
//!
//! `G_k` inputs keep their half-plane layout. Anything else gets its
//! vertices on a circle and junctions at barycentres of their neighbours.
//! Tracks are cubic curves whose control points leave each junction along a
//! shared tangent, one direction per arc, so smooth passages look smooth.

use std::fmt::Write as _;

use confluent_core::gk::generate_gk_with_layout;
use confluent_core::{Attachment, Drawing, End, TrackEnd};

type Pt = (f64, f64);

const MARGIN: f64 = 30.0;
/// Minimum spacing between neighbouring vertex labels, in pixels.
pub const LABEL_SPACING: f64 = 24.0;

fn sub(a: Pt, b: Pt) -> Pt {
    (a.0 - b.0, a.1 - b.1)
}

fn norm(a: Pt) -> Pt {
    let l = a.0.hypot(a.1);
    if l < 1e-12 {
        (1.0, 0.0)
    } else {
        (a.0 / l, a.1 / l)
    }
}

fn dist(a: Pt, b: Pt) -> f64 {
    (a.0 - b.0).hypot(a.1 - b.1)
}

/// `k` when `d` is exactly `G_k`.
fn gk_order(d: &Drawing) -> Option<u32> {
    let k = (1..=7).find(|&k| 3usize.pow(k) == d.n_vertices)?;
    generate_gk_with_layout(k).ok().filter(|(g, _)| g == d).map(|_| k)
}

struct Layout {
    vertices: Vec<Pt>,
    junctions: Vec<Pt>,
    /// Inward direction at each vertex.
    inward: Vec<Pt>,
    width: f64,
    height: f64,
}

fn half_plane_layout(d: &Drawing, k: u32) -> Layout {
    let (_, gl) = generate_gk_with_layout(k).unwrap();
    let top = gl.junctions.iter().map(|p| p.1).fold(1.0, f64::max);
    let s = LABEL_SPACING;
    let width = 2.0 * MARGIN + s * (d.n_vertices.max(1) - 1) as f64;
    let height = 2.0 * MARGIN + s * top + 20.0;
    let place = |p: &Pt| (MARGIN + s * p.0, height - MARGIN - s * p.1);
    Layout {
        vertices: gl.vertices.iter().map(place).collect(),
        junctions: gl.junctions.iter().map(place).collect(),
        inward: vec![(0.0, -1.0); d.n_vertices],
        width,
        height,
    }
}

fn circle_layout(d: &Drawing) -> Layout {
    let n = d.n_vertices;
    let radius = (LABEL_SPACING * n as f64 / std::f64::consts::TAU).max(120.0);
    let c = MARGIN + 20.0 + radius;
    let vertices: Vec<Pt> = (0..n)
        .map(|v| {
            let a = std::f64::consts::PI - std::f64::consts::TAU * v as f64 / n as f64;
            (c + radius * a.cos(), c - radius * a.sin())
        })
        .collect();
    let inward = vertices.iter().map(|&p| norm(sub((c, c), p))).collect();
    let mut junctions = vec![(c, c); d.n_junctions];
    // Tutte-style relaxation with the vertices pinned.
    let mut nbrs = vec![Vec::new(); d.n_junctions];
    for t in &d.tracks {
        for (x, y) in [(t.a, t.b), (t.b, t.a)] {
            if let Attachment::Junction(j) = x {
                if x != y {
                    nbrs[j].push(y);
                }
            }
        }
    }
    for _ in 0..500 {
        for j in 0..d.n_junctions {
            if nbrs[j].is_empty() {
                continue;
            }
            let (mut sx, mut sy) = (0.0, 0.0);
            for &a in &nbrs[j] {
                let p = match a {
                    Attachment::Vertex(v) => vertices[v],
                    Attachment::Junction(i) => junctions[i],
                };
                sx += p.0;
                sy += p.1;
            }
            let m = nbrs[j].len() as f64;
            junctions[j] = (sx / m, sy / m);
        }
    }
    Layout {
        vertices,
        junctions,
        inward,
        width: 2.0 * c,
        height: 2.0 * c,
    }
}

impl Layout {
    fn at(&self, a: Attachment) -> Pt {
        match a {
            Attachment::Vertex(v) => self.vertices[v],
            Attachment::Junction(j) => self.junctions[j],
        }
    }
}

/// Unit tangent at a junction: arc `true` leaves along it, arc `false`
/// against it.
fn junction_tangent(d: &Drawing, l: &Layout, j: usize) -> Pt {
    let here = l.junctions[j];
    let arcs = d.junction_arcs(j);
    let mut acc = (0.0, 0.0);
    for (slot, e) in d.junction_rotations[j].iter().enumerate() {
        let far = l.at(d.tracks[e.track].endpoint(e.end.other()));
        let dir = norm(sub(far, here));
        let s = if arcs[slot] { 1.0 } else { -1.0 };
        acc = (acc.0 + s * dir.0, acc.1 + s * dir.1);
    }
    norm(acc)
}

fn control(d: &Drawing, l: &Layout, tangents: &[Pt], e: TrackEnd, reach: f64) -> Pt {
    let at = d.tracks[e.track].endpoint(e.end);
    let p = l.at(at);
    let dir = match at {
        Attachment::Vertex(v) => {
            let far = l.at(d.tracks[e.track].endpoint(e.end.other()));
            norm(((l.inward[v].0 + norm(sub(far, p)).0), (l.inward[v].1 + norm(sub(far, p)).1)))
        }
        Attachment::Junction(j) => {
            let slot = d.junction_rotations[j].iter().position(|&x| x == e).unwrap();
            let s = if d.junction_arcs(j)[slot] { 1.0 } else { -1.0 };
            (s * tangents[j].0, s * tangents[j].1)
        }
    };
    (p.0 + dir.0 * reach, p.1 + dir.1 * reach)
}

pub fn render_svg(d: &Drawing) -> String {
    let l = match gk_order(d) {
        Some(k) => half_plane_layout(d, k),
        None => circle_layout(d),
    };
    let tangents: Vec<Pt> = (0..d.n_junctions).map(|j| junction_tangent(d, &l, j)).collect();
    let mut curves = Vec::new();
    for (t, tr) in d.tracks.iter().enumerate() {
        let (p, q) = (l.at(tr.a), l.at(tr.b));
        let reach = (dist(p, q) * 0.4).max(12.0);
        let c1 = control(d, &l, &tangents, TrackEnd::new(t, End::A), reach);
        let c2 = control(d, &l, &tangents, TrackEnd::new(t, End::B), reach);
        curves.push([p, c1, c2, q]);
    }
    // The view box covers every anchor and control point.
    let (mut lo, mut hi) = ((0.0f64, 0.0f64), (l.width, l.height));
    for &(x, y) in curves.iter().flatten() {
        lo = (lo.0.min(x - MARGIN), lo.1.min(y - MARGIN));
        hi = (hi.0.max(x + MARGIN), hi.1.max(y + MARGIN));
    }
    let (w, h) = (hi.0 - lo.0, hi.1 - lo.1);
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="{:.0} {:.0} {w:.0} {h:.0}">"#,
        lo.0, lo.1
    )
    .unwrap();
    out.push_str("<style>.track{fill:none;stroke:#333;stroke-width:1.2}.gap{stroke:#c00;stroke-width:1.5}");
    out.push_str(".vertex{fill:#1f5fa8}.junction{fill:#999}.label{font:10px sans-serif;text-anchor:middle}</style>\n");
    for [p, c1, c2, q] in curves {
        writeln!(
            out,
            r#"<path class="track" d="M {:.1} {:.1} C {:.1} {:.1} {:.1} {:.1} {:.1} {:.1}"/>"#,
            p.0, p.1, c1.0, c1.1, c2.0, c2.1, q.0, q.1
        )
        .unwrap();
    }
    for (j, &p) in l.junctions.iter().enumerate() {
        // The two gaps sit on either side of the tangent line.
        let nrm = (-tangents[j].1, tangents[j].0);
        for s in [1.0, -1.0] {
            let a = (p.0 + s * nrm.0 * 3.0, p.1 + s * nrm.1 * 3.0);
            let b = (p.0 + s * nrm.0 * 8.0, p.1 + s * nrm.1 * 8.0);
            writeln!(out, r#"<line class="gap" x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}"/>"#, a.0, a.1, b.0, b.1).unwrap();
        }
        writeln!(out, r#"<circle class="junction" cx="{:.1}" cy="{:.1}" r="2.5"/>"#, p.0, p.1).unwrap();
    }
    for (v, &p) in l.vertices.iter().enumerate() {
        writeln!(out, r#"<circle class="vertex" cx="{:.1}" cy="{:.1}" r="4"/>"#, p.0, p.1).unwrap();
        let lp = (p.0 - l.inward[v].0 * 14.0, p.1 - l.inward[v].1 * 14.0 + 3.5);
        writeln!(out, r#"<text class="label" x="{:.1}" y="{:.1}">{v}</text>"#, lp.0, lp.1).unwrap();
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use confluent_core::generate_gk;

    fn count(svg: &str, class: &str) -> usize {
        svg.matches(&format!(r#"class="{class}""#)).count()
    }

    #[test]
    fn g2_elements() {
        let d = generate_gk(2).unwrap();
        let svg = render_svg(&d);
        assert_eq!(count(&svg, "vertex"), 9);
        assert_eq!(count(&svg, "track"), 21);
        assert_eq!(count(&svg, "junction"), 6);
        assert_eq!(count(&svg, "gap"), 12);
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn empty_canvas() {
        let svg = render_svg(&Drawing::empty());
        assert_eq!(count(&svg, "vertex") + count(&svg, "track"), 0);
        assert!(svg.starts_with("<svg"));
    }

    #[test]
    fn gk_detection() {
        assert_eq!(gk_order(&generate_gk(3).unwrap()), Some(3));
        let sub = confluent_core::induced_subdrawing(&generate_gk(2).unwrap(), &[0, 1, 2, 4]).unwrap();
        assert_eq!(gk_order(&sub), None);
        assert_eq!(gk_order(&generate_gk(1).unwrap()), Some(1));
    }
}
