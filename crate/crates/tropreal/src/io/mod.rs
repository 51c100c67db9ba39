//! Scenario files, text and JSON reports, and SVG figures.

mod report;
mod spec;
mod svg;

pub use report::{analysis_json, analysis_text, build_json, build_text, hyperbolic_json, hyperbolic_text, intersect_json, intersect_text, Analysis};
pub use spec::{load_spec, save_spec, CurveSpec, EdgeKey, Query, RealSpec, Scenario, ScenarioSpec, SeedSpec, SignSpec, TwistSpec};
pub use svg::{render_svg, SvgOptions};
