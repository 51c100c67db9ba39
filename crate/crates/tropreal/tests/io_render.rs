use tropreal::hyperbolic::hyperbolicity_locus;
use tropreal::io::*;
use tropreal::TropicalCurve;

fn count(svg: &str, needle: &str) -> usize {
    svg.matches(needle).count()
}

fn group<'a>(svg: &'a str, id: &str) -> &'a str {
    let start = svg.find(&format!(r#"<g id="{id}""#)).unwrap();
    let rest = &svg[start..];
    &rest[..rest.find("\n</g>").unwrap()]
}

#[test]
fn line_figure() {
    let sc = load_spec(r#"{"curve":{"honeycomb":1},"real_structure":{"signs":"all+"}}"#).unwrap().build().unwrap();
    let svg = render_svg(&sc.curve, SvgOptions { phase: Some(&sc.phase), twists: Some(&sc.twists), locus: None });
    roxmltree::Document::parse(&svg).expect("well-formed svg");
    assert_eq!(count(group(&svg, "curve"), r#"class="edge ray""#), 3);
    assert_eq!(count(&svg, r#"<g id="copy-"#), 4);
    assert_eq!(count(&svg, r#"class="edge-copy""#), 6);
}

#[test]
fn markers_and_shading() {
    let text = r#"{"curve":{"honeycomb":4},"real_structure":{"twists":{"edges":[],"bridges":["x+y=3"]}}}"#;
    let sc = load_spec(text).unwrap().build().unwrap();
    let r = hyperbolicity_locus(&sc.curve, &sc.phase).unwrap();
    let opts = SvgOptions { phase: Some(&sc.phase), twists: Some(&sc.twists), locus: Some(&r.h) };
    let svg = render_svg(&sc.curve, opts);
    roxmltree::Document::parse(&svg).expect("well-formed svg");
    assert_eq!(count(&svg, r#"class="twist""#), sc.twists.len());
    assert_eq!(count(group(&svg, "locus"), r#"class="locus""#), r.h.len());
    assert_eq!(svg, render_svg(&sc.curve, opts), "rendering is deterministic");
}

#[test]
fn untwisted_curve_has_no_markers() {
    let c = TropicalCurve::honeycomb(3);
    let t = tropreal::realstruct::TwistSet::empty(&c);
    let svg = render_svg(&c, SvgOptions { twists: Some(&t), ..Default::default() });
    assert_eq!(count(&svg, r#"class="twist""#), 0);
}

#[test]
fn spec_round_trip() {
    let texts = [
        r#"{"curve":{"honeycomb":4},"real_structure":{"signs":"all+"},"query":{"point":"(1,1)","epsilon":[0,1]}}"#,
        r#"{"curve":{"coefficients":{"(0,0)":"0","(1,0)":"2/4","(0,1)":"-1"}},"real_structure":{"signs":{"(0,0)":1,"(1,0)":-1,"(0,1)":1}}}"#,
        r#"{"curve":{"honeycomb":2},"real_structure":{"twists":{"edges":["(1,1)-(1,0)"],"seed":{"edge":"(0,0)-(1,0)","eps":[1,0]}}},
            "second":{"curve":{"honeycomb":1},"real_structure":{"signs":"all-"}}}"#,
        r#"{"curve":{"honeycomb":1},"real_structure":{"phase":{"(0,0)-(1,0)":[[1,0],[1,1]],"(0,0)-(0,1)":[[0,1],[1,1]],"(0,1)-(1,0)":[[1,0],[0,1]]}}}"#,
    ];
    for t in texts {
        let spec = load_spec(t).unwrap_or_else(|e| panic!("{t}: {e}"));
        let saved = save_spec(&spec);
        let again = load_spec(&saved).unwrap();
        assert_eq!(again, spec);
        assert_eq!(save_spec(&again), saved);
    }
}

#[test]
fn reports_are_deterministic() {
    let sc = load_spec(r#"{"curve":{"honeycomb":3},"real_structure":{"signs":"all+"}}"#).unwrap().build().unwrap();
    let a = Analysis::new(&sc.curve, &sc.phase, &sc.twists).unwrap();
    assert_eq!(a.components_matrix, 2);
    assert_eq!(analysis_text(&a), analysis_text(&Analysis::new(&sc.curve, &sc.phase, &sc.twists).unwrap()));
    let r = hyperbolicity_locus(&sc.curve, &sc.phase).unwrap();
    let j = hyperbolic_json(&r);
    assert_eq!(j["H"].as_array().unwrap().len(), 10);
    assert_eq!(j["hyperbolic"], true);
}
