use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::curve::{EdgeId, TropicalCurve, TropicalPolynomial};
use crate::error::{Error, Result};
use crate::gf2::{PhaseLine, Z2Pair};
use crate::hyperbolic::{bridge_twists, multi_bridges, BridgeLine};
use crate::num::{format_q, parse_q, Lattice, Q};
use crate::realstruct::{phase_from_signs, phase_from_twists, twists_from_phase, RealPhaseStructure, SignDistribution, TwistSet};

/// An edge named by the endpoints of its dual edge, written `"(i,j)-(k,l)"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct EdgeKey(pub Lattice, pub Lattice);

impl EdgeKey {
    fn normalized(self) -> Self {
        if self.0 <= self.1 {
            self
        } else {
            EdgeKey(self.1, self.0)
        }
    }

    pub fn resolve(self, curve: &TropicalCurve) -> Result<EdgeId> {
        curve
            .edge_by_dual(self.0, self.1)
            .ok_or_else(|| Error::Validation(format!("{self} is not an edge of the dual subdivision")))
    }
}

impl fmt::Display for EdgeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

impl FromStr for EdgeKey {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (a, b) = s.split_once(")-").ok_or_else(|| format!("expected \"(i,j)-(k,l)\", got {s:?}"))?;
        Ok(EdgeKey(format!("{a})").parse()?, b.parse()?).normalized())
    }
}

macro_rules! string_serde {
    ($t:ty) => {
        impl Serialize for $t {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }

        impl<'de> Deserialize<'de> for $t {
            fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

string_serde!(EdgeKey);
string_serde!(BridgeLine);

impl fmt::Display for BridgeLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BridgeLine::Vertical(c) => write!(f, "x={c}"),
            BridgeLine::Horizontal(c) => write!(f, "y={c}"),
            BridgeLine::Diagonal(s) => write!(f, "x+y={s}"),
        }
    }
}

impl FromStr for BridgeLine {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (lhs, rhs) = t.split_once('=').ok_or_else(|| format!("expected \"x=c\", \"y=c\" or \"x+y=s\", got {s:?}"))?;
        let c: i64 = rhs.parse().map_err(|e| format!("{s:?}: {e}"))?;
        match lhs {
            "x" => Ok(BridgeLine::Vertical(c)),
            "y" => Ok(BridgeLine::Horizontal(c)),
            "x+y" => Ok(BridgeLine::Diagonal(c)),
            _ => Err(format!("unknown bridge line {s:?}")),
        }
    }
}

/// A rational written as a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rational(pub Q);

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_q(&self.0))
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).map(Rational).ok_or_else(|| serde::de::Error::custom(format!("invalid rational {s:?}")))
    }
}

/// Lattice-point keys written as `"(i,j)"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PointKey(pub Lattice);

impl fmt::Display for PointKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for PointKey {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        s.parse().map(PointKey)
    }
}

string_serde!(PointKey);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub honeycomb: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<BTreeMap<PointKey, Rational>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SignSpec {
    /// `"all+"` or `"all-"`.
    Constant(String),
    Map(BTreeMap<PointKey, i8>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedSpec {
    pub edge: EdgeKey,
    pub eps: [u8; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistSpec {
    #[serde(default)]
    pub edges: Vec<EdgeKey>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bridges: Vec<BridgeLine>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<SeedSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signs: Option<SignSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twists: Option<TwistSpec>,
    /// Each edge mapped to the two elements of its phase line.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phase: Option<BTreeMap<EdgeKey, [[u8; 2]; 2]>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Query {
    pub point: PointKey,
    pub epsilon: [u8; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSpec {
    pub curve: CurveSpec,
    pub real_structure: RealSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second: Option<Box<ScenarioSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub query: Option<Query>,
}

/// A built scenario: curve, phase structure and its twists.
pub struct Scenario {
    pub curve: TropicalCurve,
    pub phase: RealPhaseStructure,
    pub twists: TwistSet,
    pub second: Option<Box<Scenario>>,
    pub query: Option<(Lattice, Z2Pair)>,
}

fn z2(b: [u8; 2], what: &str) -> Result<Z2Pair> {
    if b.iter().any(|&x| x > 1) {
        return Err(Error::Validation(format!("{what}: entries must be 0 or 1, got {b:?}")));
    }
    Ok(Z2Pair::new(b[0] == 1, b[1] == 1))
}

impl CurveSpec {
    pub fn build(&self) -> Result<TropicalCurve> {
        match (self.honeycomb, &self.coefficients) {
            (Some(d), None) => {
                if d == 0 {
                    return Err(Error::Validation("honeycomb degree must be positive".into()));
                }
                Ok(TropicalCurve::honeycomb(d))
            }
            (None, Some(c)) => {
                let coeffs = c.iter().map(|(k, v)| (k.0, v.0.clone())).collect();
                TropicalCurve::from_polynomial(TropicalPolynomial::new(coeffs)?)
            }
            _ => Err(Error::Validation("curve needs exactly one of \"honeycomb\" and \"coefficients\"".into())),
        }
    }
}

impl RealSpec {
    pub fn build(&self, curve: &TropicalCurve) -> Result<RealPhaseStructure> {
        let given = [self.signs.is_some(), self.twists.is_some(), self.phase.is_some()];
        if given.iter().filter(|&&g| g).count() != 1 {
            return Err(Error::Validation(
                "real_structure needs exactly one of \"signs\", \"twists\" and \"phase\"".into(),
            ));
        }
        if let Some(s) = &self.signs {
            let delta = match s {
                SignSpec::Constant(c) if c == "all+" => SignDistribution::constant(curve, 1),
                SignSpec::Constant(c) if c == "all-" => SignDistribution::constant(curve, -1),
                SignSpec::Constant(c) => return Err(Error::Validation(format!("unknown sign shorthand {c:?}"))),
                SignSpec::Map(m) => {
                    let signs: BTreeMap<Lattice, i8> = m.iter().map(|(k, v)| (k.0, *v)).collect();
                    if let Some(p) = curve.dual.points.iter().find(|p| !signs.contains_key(p)) {
                        return Err(Error::Validation(format!("sign map is missing {p}")));
                    }
                    if let Some(p) = signs.keys().find(|p| curve.dual.point_index(**p).is_none()) {
                        return Err(Error::Validation(format!("sign map has {p}, which is not in the Newton polygon")));
                    }
                    SignDistribution::new(signs).map_err(|e| Error::Validation(e.to_string()))?
                }
            };
            return phase_from_signs(curve, &delta);
        }
        if let Some(t) = &self.twists {
            let mut edges = Vec::new();
            for k in &t.edges {
                let e = k.resolve(curve)?;
                if !curve.edges[e].is_bounded() {
                    return Err(Error::Validation(format!("twisted edge {k} is unbounded")));
                }
                edges.push(e);
            }
            if !t.bridges.is_empty() {
                let all = multi_bridges(curve).map_err(|e| Error::Validation(format!("bridges: {e}")))?;
                for line in &t.bridges {
                    let b = all
                        .iter()
                        .find(|b| b.line == *line)
                        .ok_or_else(|| Error::Validation(format!("no multi-bridge on {line}")))?;
                    edges.extend(bridge_twists(curve, std::slice::from_ref(b)).edges().iter().copied());
                }
            }
            let set = TwistSet::from_edges(curve, edges)?;
            let seed = match &t.seed {
                Some(s) => Some((s.edge.resolve(curve)?, z2(s.eps, "seed eps")?)),
                None => None,
            };
            return phase_from_twists(curve, &set, seed).map_err(|e| Error::Validation(e.to_string()));
        }
        let map = self.phase.as_ref().unwrap();
        let mut lines: Vec<Option<PhaseLine>> = vec![None; curve.edges.len()];
        for (k, [a, b]) in map {
            let e = k.resolve(curve)?;
            let (a, b) = (z2(*a, "phase element")?, z2(*b, "phase element")?);
            if a == b {
                return Err(Error::Validation(format!("phase line of {k} needs two distinct elements")));
            }
            lines[e] = Some(PhaseLine::from_pair(a, b));
        }
        let lines: Vec<PhaseLine> = lines
            .into_iter()
            .enumerate()
            .map(|(e, l)| {
                let (p, q) = curve.edges[e].dual;
                l.ok_or_else(|| Error::Validation(format!("phase map is missing edge {}", EdgeKey(p, q))))
            })
            .collect::<Result<_>>()?;
        RealPhaseStructure::new(curve, lines).map_err(|e| Error::Validation(e.to_string()))
    }
}

impl ScenarioSpec {
    pub fn build(&self) -> Result<Scenario> {
        let curve = self.curve.build()?;
        let phase = self.real_structure.build(&curve)?;
        let twists = twists_from_phase(&curve, &phase);
        let second = match &self.second {
            Some(s) => {
                if s.second.is_some() || s.query.is_some() {
                    return Err(Error::Validation("the second curve takes only \"curve\" and \"real_structure\"".into()));
                }
                Some(Box::new(s.build()?))
            }
            None => None,
        };
        let query = match &self.query {
            Some(qr) => {
                if curve.dual.point_index(qr.point.0).is_none() {
                    return Err(Error::Validation(format!("query point {} is not in the Newton polygon", qr.point)));
                }
                Some((qr.point.0, z2(qr.epsilon, "query epsilon")?))
            }
            None => None,
        };
        Ok(Scenario { curve, phase, twists, second, query })
    }
}

/// Parses and validates a scenario.
pub fn load_spec(text: &str) -> Result<ScenarioSpec> {
    let spec: ScenarioSpec = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    spec.build()?;
    Ok(spec)
}

pub fn save_spec(spec: &ScenarioSpec) -> String {
    let mut s = serde_json::to_string_pretty(spec).expect("specs serialize");
    s.push('\n');
    s
}
