use std::fmt::Write;

use serde::Serialize;
use serde_json::{json, Value};

use crate::curve::TropicalCurve;
use crate::error::Result;
use crate::hyperbolic::{is_hyperbolic, HyperbolicityReport};
use crate::intersect::{real_lift, tangency_possible, IntersectionComponent, IntersectionKind, RealCurve};
use crate::realstruct::{
    count_components_direct, count_components_matrix, is_admissible, is_dividing, real_part, ComponentKind,
    RealPhaseStructure, TwistSet,
};

use super::spec::EdgeKey;

fn edge_key(curve: &TropicalCurve, e: usize) -> EdgeKey {
    let (p, q) = curve.edges[e].dual;
    EdgeKey(p, q)
}

pub fn build_text(curve: &TropicalCurve) -> String {
    let mut s = String::new();
    write!(s, "{curve}").unwrap();
    writeln!(s, "honeycomb: {}", curve.is_honeycomb()).unwrap();
    writeln!(s, "primitive cycles: {}", curve.primitive_cycles().len()).unwrap();
    writeln!(s, "vertices:").unwrap();
    for (k, v) in curve.vertices.iter().enumerate() {
        writeln!(s, "  v{k} {} dual {} {} {}", v.pos, v.cell[0], v.cell[1], v.cell[2]).unwrap();
    }
    writeln!(s, "edges:").unwrap();
    for (k, e) in curve.edges.iter().enumerate() {
        let head = e.head.map_or("∞".to_string(), |h| format!("v{h}"));
        writeln!(s, "  e{k} {} v{} -> {head} direction {}", edge_key(curve, k), e.tail, e.dir).unwrap();
    }
    s
}

/// Twist and component data of one real curve.
#[derive(Clone, Debug, Serialize)]
pub struct Analysis {
    pub twisted_edges: Vec<String>,
    pub admissible: bool,
    pub dividing: bool,
    pub components_matrix: usize,
    pub components_direct: usize,
    pub ovals: usize,
    pub pseudo_lines: usize,
    pub oval_depths: Vec<usize>,
    pub hyperbolic: bool,
    pub kernel_dim: usize,
}

impl Analysis {
    pub fn new(curve: &TropicalCurve, phase: &RealPhaseStructure, t: &TwistSet) -> Result<Analysis> {
        curve.require_degree()?;
        let rep = count_components_direct(&real_part(curve, phase)?);
        let (hyperbolic, kernel_dim) = is_hyperbolic(curve, t)?;
        let mut oval_depths: Vec<usize> =
            rep.components.iter().filter(|c| c.kind == ComponentKind::Oval).map(|c| c.depth).collect();
        oval_depths.sort();
        Ok(Analysis {
            twisted_edges: t.edges().iter().map(|&e| edge_key(curve, e).to_string()).collect(),
            admissible: is_admissible(curve, t),
            dividing: is_dividing(curve, t)?,
            components_matrix: count_components_matrix(curve, t)?,
            components_direct: rep.count,
            ovals: rep.ovals(),
            pseudo_lines: rep.pseudo_lines(),
            oval_depths,
            hyperbolic,
            kernel_dim,
        })
    }
}

pub fn analysis_text(a: &Analysis) -> String {
    let mut s = String::new();
    writeln!(s, "twisted edges ({}): {}", a.twisted_edges.len(), a.twisted_edges.join(" ")).unwrap();
    writeln!(s, "admissible: {}", a.admissible).unwrap();
    writeln!(s, "dividing: {}", a.dividing).unwrap();
    writeln!(s, "components: {} (matrix), {} (real part)", a.components_matrix, a.components_direct).unwrap();
    writeln!(s, "ovals: {} depths {:?}, pseudo-lines: {}", a.ovals, a.oval_depths, a.pseudo_lines).unwrap();
    writeln!(s, "kernel dimension: {}", a.kernel_dim).unwrap();
    writeln!(s, "hyperbolic: {}", a.hyperbolic).unwrap();
    s
}

pub fn analysis_json(a: &Analysis) -> Value {
    serde_json::to_value(a).expect("analysis serializes")
}

fn set_str<'a>(it: impl Iterator<Item = String> + 'a) -> Vec<String> {
    it.collect()
}

pub fn hyperbolic_json(r: &HyperbolicityReport) -> Value {
    json!({
        "hyperbolic": r.hyperbolic,
        "kernel_dim": r.kernel_dim,
        "stable": r.stable,
        "H": set_str(r.h.iter().map(|a| a.to_string())),
        "RH": set_str(r.rh.iter().map(|(a, e)| format!("{a}{e}"))),
        "H_pointwise": set_str(r.h_pointwise.iter().map(|a| a.to_string())),
        "RH_pointwise": set_str(r.rh_pointwise.iter().map(|(a, e)| format!("{a}{e}"))),
        "methods_agree": r.methods_agree(),
        "per_point": r.per_point.iter().map(|p| json!({
            "component": p.component.to_string(),
            "eps": p.eps.to_string(),
            "hyperbolic": p.hyperbolic,
            "failed_condition": p.failure.as_ref().map(|f| f.condition()),
            "failure": p.failure.as_ref().map(|f| format!("{f:?}")),
        })).collect::<Vec<_>>(),
    })
}

pub fn hyperbolic_text(r: &HyperbolicityReport) -> String {
    let mut s = String::new();
    writeln!(s, "hyperbolic: {}", r.hyperbolic).unwrap();
    writeln!(s, "kernel dimension: {}", r.kernel_dim).unwrap();
    writeln!(s, "stable: {}", r.stable).unwrap();
    writeln!(s, "|H| = {}: {}", r.h.len(), set_str(r.h.iter().map(|a| a.to_string())).join(" ")).unwrap();
    writeln!(s, "|RH| = {} symmetric copies", r.rh.len()).unwrap();
    writeln!(s, "point-wise locus agrees: {}", r.methods_agree()).unwrap();
    for p in &r.per_point {
        let verdict = match &p.failure {
            None => "hyperbolic".to_string(),
            Some(f) => format!("fails condition {}: {f:?}", f.condition()),
        };
        writeln!(s, "  {} {}: {verdict}", p.component, p.eps).unwrap();
    }
    s
}

fn component_fields(
    comp: &IntersectionComponent,
    a: RealCurve,
    b: RealCurve,
) -> Result<(String, String, u32, String, Option<bool>)> {
    let loc = match &comp.kind {
        IntersectionKind::SegmentOverlap { start, end, .. } => format!("[{start}, {end}]"),
        IntersectionKind::EdgeInEdge { .. } => {
            let (c, e) = match comp.kind {
                IntersectionKind::EdgeInEdge { inner_of: crate::intersect::Which::First, inner, .. } => (a.curve, inner),
                IntersectionKind::EdgeInEdge { inner, .. } => (b.curve, inner),
                _ => unreachable!(),
            };
            let ends: Vec<String> = c.edges[e].ends().iter().map(|&v| c.vertices[v].pos.to_string()).collect();
            format!("[{}]", ends.join(", "))
        }
        _ => comp.location(a.curve, b.curve).to_string(),
    };
    let outcome = real_lift(a, b, comp)?.to_string();
    let tangency = match comp.kind {
        IntersectionKind::EdgeInEdge { .. } | IntersectionKind::SegmentOverlap { .. } => Some(tangency_possible(a, b, comp)?),
        _ => None,
    };
    Ok((comp.kind_name().to_string(), loc, comp.multiplicity, outcome, tangency))
}

pub fn intersect_text(comps: &[IntersectionComponent], a: RealCurve, b: RealCurve) -> Result<String> {
    let mut s = String::new();
    let total: u32 = comps.iter().map(|c| c.multiplicity).sum();
    writeln!(s, "components: {}, total multiplicity: {total}", comps.len()).unwrap();
    for c in comps {
        let (kind, loc, m, outcome, tang) = component_fields(c, a, b)?;
        write!(s, "  {kind} at {loc}, multiplicity {m}: {outcome}").unwrap();
        if let Some(t) = tang {
            write!(s, "; tangency possible: {t}").unwrap();
        }
        s.push('\n');
    }
    Ok(s)
}

pub fn intersect_json(comps: &[IntersectionComponent], a: RealCurve, b: RealCurve) -> Result<Value> {
    let mut items = Vec::new();
    for c in comps {
        let (kind, loc, m, outcome, tang) = component_fields(c, a, b)?;
        items.push(json!({"kind": kind, "location": loc, "multiplicity": m, "lift": outcome, "tangency_possible": tang}));
    }
    Ok(json!({
        "components": items,
        "total_multiplicity": comps.iter().map(|c| c.multiplicity).sum::<u32>(),
    }))
}

pub fn build_json(curve: &TropicalCurve) -> Value {
    json!({
        "degree": curve.degree,
        "honeycomb": curve.is_honeycomb(),
        "primitive_cycles": curve.primitive_cycles().len(),
        "vertices": curve.vertices.iter().map(|v| json!({
            "position": v.pos.to_string(),
            "dual_cell": v.cell.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "edges": curve.edges.iter().enumerate().map(|(k, e)| json!({
            "dual": edge_key(curve, k).to_string(),
            "tail": e.tail,
            "head": e.head,
            "direction": e.dir.to_string(),
        })).collect::<Vec<_>>(),
    })
}
