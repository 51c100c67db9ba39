use std::collections::BTreeSet;
use std::fmt::Write;

use crate::curve::TropicalCurve;
use crate::gf2::Z2Pair;
use crate::hyperbolic::component_polygon;
use crate::num::{q_to_f64, Lattice};
use crate::realstruct::{RealPhaseStructure, TwistSet};

const PANEL: f64 = 300.0;
const PAD: f64 = 20.0;

#[derive(Clone, Copy, Default)]
pub struct SvgOptions<'a> {
    pub phase: Option<&'a RealPhaseStructure>,
    pub twists: Option<&'a TwistSet>,
    pub locus: Option<&'a BTreeSet<Lattice>>,
}

struct View {
    x0: f64,
    y0: f64,
    scale: f64,
    offset: f64,
}

impl View {
    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        (self.offset + PAD + (x - self.x0) * self.scale, PAD + PANEL - (y - self.y0) * self.scale)
    }
}

fn pt(p: (f64, f64)) -> String {
    format!("{:.3},{:.3}", p.0, p.1)
}

/// Parameter at which `a + t·d` leaves the box `[lo, hi]²`.
fn exit_time(a: (f64, f64), d: (f64, f64), lo: (f64, f64), hi: (f64, f64)) -> f64 {
    let mut t = f64::INFINITY;
    for (p, v, l, h) in [(a.0, d.0, lo.0, hi.0), (a.1, d.1, lo.1, hi.1)] {
        if v > 0.0 {
            t = t.min((h - p) / v);
        } else if v < 0.0 {
            t = t.min((l - p) / v);
        }
    }
    t.max(0.0)
}

/// Deterministic three-panel figure: the curve in the plane with twist
/// markers and locus shading, the dual subdivision, and the four symmetric
/// copies of the real part in the compactified triangle.
pub fn render_svg(curve: &TropicalCurve, opts: SvgOptions) -> String {
    let pos: Vec<(f64, f64)> = curve.vertices.iter().map(|v| (q_to_f64(&v.pos.x), q_to_f64(&v.pos.y))).collect();
    let (mut lo, mut hi) = ((f64::MAX, f64::MAX), (f64::MIN, f64::MIN));
    for &(x, y) in &pos {
        lo = (lo.0.min(x), lo.1.min(y));
        hi = (hi.0.max(x), hi.1.max(y));
    }
    let span = (hi.0 - lo.0).max(hi.1 - lo.1).max(1.0);
    let margin = 0.3 * span;
    let (lo, hi) = ((lo.0 - margin, lo.1 - margin), (lo.0 - margin + span + 2.0 * margin, lo.1 - margin + span + 2.0 * margin));
    let plane = View { x0: lo.0, y0: lo.1, scale: PANEL / (hi.0 - lo.0), offset: 0.0 };

    let width = 3.0 * (PANEL + 2.0 * PAD);
    let height = PANEL + 2.0 * PAD;
    let mut s = String::new();
    writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    )
    .unwrap();
    writeln!(
        s,
        "<style>.edge{{stroke:#111;stroke-width:1.5;fill:none}}.dual{{stroke:#555;stroke-width:1;fill:none}}\
.edge-copy{{stroke:#b2182b;stroke-width:1.2;fill:none}}.outline{{stroke:#999;stroke-width:1;fill:none}}\
.twist{{fill:#2166ac}}.locus{{fill:#fddbc7;stroke:none}}.point{{fill:#333}}</style>"
    )
    .unwrap();
    writeln!(
        s,
        r#"<defs><clipPath id="plane-clip"><rect x="{PAD}" y="{PAD}" width="{PANEL}" height="{PANEL}"/></clipPath></defs>"#
    )
    .unwrap();

    // Locus shading: complement components in the plane, dual points in the triangle.
    writeln!(s, r#"<g id="locus" clip-path="url(#plane-clip)">"#).unwrap();
    if let Some(locus) = opts.locus {
        for &alpha in locus {
            let poly: Vec<String> = component_polygon(curve, alpha)
                .iter()
                .map(|p| pt(plane.map(q_to_f64(&p.x), q_to_f64(&p.y))))
                .collect();
            writeln!(s, r#"<polygon class="locus" data-alpha="{alpha}" points="{}"/>"#, poly.join(" ")).unwrap();
        }
    }
    writeln!(s, "</g>").unwrap();

    writeln!(s, r#"<g id="curve">"#).unwrap();
    for (k, e) in curve.edges.iter().enumerate() {
        let a = pos[e.tail];
        let b = match e.head {
            Some(h) => pos[h],
            None => {
                let d = (e.dir.i as f64, e.dir.j as f64);
                let t = exit_time(a, d, lo, hi);
                (a.0 + t * d.0, a.1 + t * d.1)
            }
        };
        let class = if e.is_bounded() { "edge bounded" } else { "edge ray" };
        let (pa, pb) = (plane.map(a.0, a.1), plane.map(b.0, b.1));
        writeln!(
            s,
            r#"<line class="{class}" data-edge="{k}" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/>"#,
            pa.0, pa.1, pb.0, pb.1
        )
        .unwrap();
    }
    writeln!(s, "</g>").unwrap();

    writeln!(s, r#"<g id="twists">"#).unwrap();
    if let Some(t) = opts.twists {
        for &e in t.edges() {
            let ed = &curve.edges[e];
            let (a, b) = (pos[ed.tail], pos[ed.head.expect("twists are bounded")]);
            let m = plane.map((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0);
            writeln!(s, r#"<circle class="twist" data-edge="{e}" cx="{:.3}" cy="{:.3}" r="3"/>"#, m.0, m.1).unwrap();
        }
    }
    writeln!(s, "</g>").unwrap();

    // Dual subdivision.
    let p = &curve.dual.points;
    let dmax = p.iter().map(|l| l.i.max(l.j)).max().unwrap_or(1).max(1) as f64;
    let dual = View { x0: 0.0, y0: 0.0, scale: PANEL / dmax, offset: PANEL + 2.0 * PAD };
    writeln!(s, r#"<g id="dual">"#).unwrap();
    if let Some(locus) = opts.locus {
        for a in locus {
            let c = dual.map(a.i as f64, a.j as f64);
            writeln!(s, r#"<circle class="locus" cx="{:.3}" cy="{:.3}" r="7"/>"#, c.0, c.1).unwrap();
        }
    }
    for e in &curve.dual.edges {
        let (a, b) = (dual.map(e.a.i as f64, e.a.j as f64), dual.map(e.b.i as f64, e.b.j as f64));
        writeln!(s, r#"<line class="dual" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/>"#, a.0, a.1, b.0, b.1).unwrap();
    }
    for l in p {
        let c = dual.map(l.i as f64, l.j as f64);
        writeln!(s, r#"<circle class="point" cx="{:.3}" cy="{:.3}" r="2"/>"#, c.0, c.1).unwrap();
    }
    writeln!(s, "</g>").unwrap();

    // Real part: each edge copy (e, ε) drawn through the moment map into the
    // triangle, then reflected into quadrant ε.
    writeln!(s, r#"<g id="quadrants">"#).unwrap();
    let half = PANEL / 2.0;
    let (cx, cy) = (2.0 * (PANEL + 2.0 * PAD) + PAD + half, PAD + half);
    writeln!(
        s,
        r#"<polygon class="outline" points="{} {} {} {}"/>"#,
        pt((cx + half, cy)),
        pt((cx, cy - half)),
        pt((cx - half, cy)),
        pt((cx, cy + half))
    )
    .unwrap();
    let centre = ((lo.0 + hi.0) / 2.0, (lo.1 + hi.1) / 2.0);
    let unit = span / 3.0;
    let moment = |x: f64, y: f64| {
        let (u, v) = (((x - centre.0) / unit).exp(), ((y - centre.1) / unit).exp());
        let n = 1.0 + u + v;
        (u / n, v / n)
    };
    for eps in Z2Pair::ALL {
        let (sx, sy) = (if eps.first() { -1.0 } else { 1.0 }, if eps.second() { -1.0 } else { 1.0 });
        writeln!(s, r#"<g id="copy-{}{}">"#, eps.bits()[0], eps.bits()[1]).unwrap();
        let Some(phase) = opts.phase else {
            writeln!(s, "</g>").unwrap();
            continue;
        };
        for (k, e) in curve.edges.iter().enumerate() {
            if !phase.line(k).contains(eps) {
                continue;
            }
            let a = pos[e.tail];
            let (d, len) = match e.head {
                Some(h) => ((pos[h].0 - a.0, pos[h].1 - a.1), 1.0),
                None => ((e.dir.i as f64, e.dir.j as f64), 12.0 * unit),
            };
            let samples: Vec<String> = (0..=48)
                .map(|j| {
                    let t = len * j as f64 / 48.0;
                    let (mx, my) = moment(a.0 + t * d.0, a.1 + t * d.1);
                    pt((cx + sx * mx * half, cy - sy * my * half))
                })
                .collect();
            writeln!(s, r#"<polyline class="edge-copy" data-edge="{k}" points="{}"/>"#, samples.join(" ")).unwrap();
        }
        writeln!(s, "</g>").unwrap();
    }
    writeln!(s, "</g>").unwrap();
    writeln!(s, "</svg>").unwrap();
    s
}
