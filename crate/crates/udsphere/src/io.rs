//! Serialization shared with the command-line driver: configurations and
//! scenes as JSON with exact integers/rationals encoded as decimal strings
//! ("num/den", denominator omitted when 1), graphs as edge-list text with a
//! JSON sidecar, scaling series as CSV.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::str::FromStr;

use crate::constructions::{
    BipartiteR3Config, PatternData, PatternKind, PatternSlot, PlanarScene, PointLabel,
    SphereConfig,
};
use crate::counting::CountReport;
use crate::error::IoError;
use crate::geom::{Direction, PlanarLine, PlanarPoint, R3Point};
use crate::graph::UnitDistanceGraph;
use crate::scaling::{ExponentFit, ScalingRun};

pub fn rational_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rational_from_str(s: &str) -> Result<BigRational, IoError> {
    let parse_int = |t: &str| {
        BigInt::from_str(t.trim()).map_err(|_| IoError::Parse(format!("bad integer: {t:?}")))
    };
    match s.split_once('/') {
        Some((num, den)) => {
            let d = parse_int(den)?;
            if d == BigInt::from(0) {
                return Err(IoError::Parse("zero denominator".into()));
            }
            Ok(BigRational::new(parse_int(num)?, d))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

fn direction_to_value(d: &Direction) -> Value {
    let (a, b, c) = d.coords();
    json!([a.to_string(), b.to_string(), c.to_string()])
}

fn str_at(v: &Value, what: &str) -> Result<String, IoError> {
    v.as_str()
        .map(str::to_owned)
        .ok_or_else(|| IoError::Parse(format!("expected string for {what}")))
}

fn direction_from_value(v: &Value) -> Result<Direction, IoError> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 3)
        .ok_or_else(|| IoError::Parse("direction must be a 3-array".into()))?;
    let int = |i: usize| -> Result<BigInt, IoError> {
        BigInt::from_str(&str_at(&arr[i], "direction coordinate")?)
            .map_err(|_| IoError::Parse("bad direction coordinate".into()))
    };
    Direction::new(int(0)?, int(1)?, int(2)?)
        .map_err(|e| IoError::Parse(e.to_string()))
}

fn label_to_string(l: &PointLabel) -> String {
    match l {
        PointLabel::Q(i) => format!("Q{i}"),
        PointLabel::North(i) => format!("N{i}"),
        PointLabel::South(i) => format!("S{i}"),
        PointLabel::Rich => "RICH".into(),
    }
}

fn label_from_str(s: &str) -> Result<PointLabel, IoError> {
    if s == "RICH" {
        return Ok(PointLabel::Rich);
    }
    let (head, idx) = s.split_at(1);
    let i: usize = idx
        .parse()
        .map_err(|_| IoError::Parse(format!("bad label {s:?}")))?;
    match head {
        "Q" => Ok(PointLabel::Q(i)),
        "N" => Ok(PointLabel::North(i)),
        "S" => Ok(PointLabel::South(i)),
        _ => Err(IoError::Parse(format!("bad label {s:?}"))),
    }
}

fn slot_to_string(s: &PatternSlot) -> String {
    match s {
        PatternSlot::Free(c) => format!("free:{c}"),
        PatternSlot::North(c) => format!("north:{c}"),
        PatternSlot::South(c) => format!("south:{c}"),
        PatternSlot::Chain => "chain".into(),
        PatternSlot::RichFirst => "rich-first".into(),
        PatternSlot::RichSecond => "rich-second".into(),
        PatternSlot::Closer => "closer".into(),
        PatternSlot::Precloser => "precloser".into(),
    }
}

fn slot_from_str(s: &str) -> Result<PatternSlot, IoError> {
    if let Some((name, idx)) = s.split_once(':') {
        let c: usize = idx
            .parse()
            .map_err(|_| IoError::Parse(format!("bad slot {s:?}")))?;
        return match name {
            "free" => Ok(PatternSlot::Free(c)),
            "north" => Ok(PatternSlot::North(c)),
            "south" => Ok(PatternSlot::South(c)),
            _ => Err(IoError::Parse(format!("bad slot {s:?}"))),
        };
    }
    match s {
        "chain" => Ok(PatternSlot::Chain),
        "rich-first" => Ok(PatternSlot::RichFirst),
        "rich-second" => Ok(PatternSlot::RichSecond),
        "closer" => Ok(PatternSlot::Closer),
        "precloser" => Ok(PatternSlot::Precloser),
        _ => Err(IoError::Parse(format!("bad slot {s:?}"))),
    }
}

fn pattern_to_value(p: &PatternData) -> Value {
    let pairs = |m: &BTreeMap<usize, usize>| -> Value {
        json!(m.iter().map(|(&a, &b)| json!([a, b])).collect::<Vec<_>>())
    };
    json!({
        "k": p.k,
        "kind": match p.kind { PatternKind::Path => "path", PatternKind::Cycle => "cycle" },
        "slots": p.slots.iter().map(slot_to_string).collect::<Vec<_>>(),
        "free_sets": p.free_sets,
        "successor": pairs(&p.successor),
        "closer": pairs(&p.closer),
        "precloser": pairs(&p.precloser),
        "rich_pairs": p.rich_pairs.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
    })
}

fn usize_pairs(v: &Value, what: &str) -> Result<Vec<(usize, usize)>, IoError> {
    v.as_array()
        .ok_or_else(|| IoError::Parse(format!("{what} must be an array")))?
        .iter()
        .map(|e| {
            let a = e.as_array().filter(|a| a.len() == 2).ok_or_else(|| {
                IoError::Parse(format!("{what} entries must be index pairs"))
            })?;
            let num = |i: usize| {
                a[i].as_u64()
                    .map(|x| x as usize)
                    .ok_or_else(|| IoError::Parse(format!("bad index in {what}")))
            };
            Ok((num(0)?, num(1)?))
        })
        .collect()
}

fn pattern_from_value(v: &Value) -> Result<PatternData, IoError> {
    let obj = v
        .as_object()
        .ok_or_else(|| IoError::Parse("pattern must be an object".into()))?;
    let field = |name: &str| -> Result<&Value, IoError> {
        obj.get(name)
            .ok_or_else(|| IoError::Parse(format!("pattern missing {name:?}")))
    };
    let k = field("k")?
        .as_u64()
        .ok_or_else(|| IoError::Parse("bad pattern k".into()))? as usize;
    let kind = match str_at(field("kind")?, "pattern kind")?.as_str() {
        "path" => PatternKind::Path,
        "cycle" => PatternKind::Cycle,
        other => return Err(IoError::Parse(format!("bad pattern kind {other:?}"))),
    };
    let slots = field("slots")?
        .as_array()
        .ok_or_else(|| IoError::Parse("slots must be an array".into()))?
        .iter()
        .map(|s| slot_from_str(&str_at(s, "slot")?))
        .collect::<Result<Vec<_>, _>>()?;
    let free_sets: Vec<Vec<usize>> = serde_json::from_value(field("free_sets")?.clone())
        .map_err(|e| IoError::Parse(format!("bad free_sets: {e}")))?;
    let map_of = |name: &str| -> Result<BTreeMap<usize, usize>, IoError> {
        Ok(usize_pairs(field(name)?, name)?.into_iter().collect())
    };
    Ok(PatternData {
        k,
        kind,
        slots,
        free_sets,
        successor: map_of("successor")?,
        closer: map_of("closer")?,
        precloser: map_of("precloser")?,
        rich_pairs: usize_pairs(field("rich_pairs")?, "rich_pairs")?,
    })
}

pub fn sphere_config_to_json(cfg: &SphereConfig) -> Value {
    let mut obj = Map::new();
    obj.insert("type".into(), json!("sphere-config"));
    obj.insert(
        "points".into(),
        json!(cfg.points.iter().map(direction_to_value).collect::<Vec<_>>()),
    );
    obj.insert(
        "labels".into(),
        json!(cfg.labels.iter().map(label_to_string).collect::<Vec<_>>()),
    );
    obj.insert(
        "circles".into(),
        json!(cfg.circles.iter().map(direction_to_value).collect::<Vec<_>>()),
    );
    if let Some(p) = &cfg.pattern {
        obj.insert("pattern".into(), pattern_to_value(p));
    }
    Value::Object(obj)
}

pub fn sphere_config_from_json(v: &Value) -> Result<SphereConfig, IoError> {
    let obj = v
        .as_object()
        .ok_or_else(|| IoError::Parse("config must be an object".into()))?;
    let arr = |name: &str| -> Result<&Vec<Value>, IoError> {
        obj.get(name)
            .and_then(Value::as_array)
            .ok_or_else(|| IoError::Parse(format!("config missing array {name:?}")))
    };
    let points = arr("points")?
        .iter()
        .map(direction_from_value)
        .collect::<Result<Vec<_>, _>>()?;
    let labels = arr("labels")?
        .iter()
        .map(|l| label_from_str(&str_at(l, "label")?))
        .collect::<Result<Vec<_>, _>>()?;
    let circles = arr("circles")?
        .iter()
        .map(direction_from_value)
        .collect::<Result<Vec<_>, _>>()?;
    if points.len() != labels.len() {
        return Err(IoError::Parse("labels and points differ in length".into()));
    }
    let pattern = obj
        .get("pattern")
        .map(pattern_from_value)
        .transpose()?;
    Ok(SphereConfig {
        points,
        labels,
        circles,
        pattern,
    })
}

pub fn planar_scene_to_json(scene: &PlanarScene) -> Value {
    json!({
        "type": "planar-scene",
        "points": scene
            .points
            .iter()
            .map(|p| json!([rational_to_string(&p.x), rational_to_string(&p.y)]))
            .collect::<Vec<_>>(),
        "lines": scene
            .lines
            .iter()
            .map(|l| {
                let (a, b, c) = l.coeffs();
                json!([a.to_string(), b.to_string(), c.to_string()])
            })
            .collect::<Vec<_>>(),
    })
}

pub fn planar_scene_from_json(v: &Value) -> Result<PlanarScene, IoError> {
    let obj = v
        .as_object()
        .ok_or_else(|| IoError::Parse("scene must be an object".into()))?;
    let arr = |name: &str| -> Result<&Vec<Value>, IoError> {
        obj.get(name)
            .and_then(Value::as_array)
            .ok_or_else(|| IoError::Parse(format!("scene missing array {name:?}")))
    };
    let points = arr("points")?
        .iter()
        .map(|p| {
            let a = p
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| IoError::Parse("point must be a 2-array".into()))?;
            Ok(PlanarPoint::new(
                rational_from_str(&str_at(&a[0], "x")?)?,
                rational_from_str(&str_at(&a[1], "y")?)?,
            ))
        })
        .collect::<Result<Vec<_>, IoError>>()?;
    let lines = arr("lines")?
        .iter()
        .map(|l| {
            let a = l
                .as_array()
                .filter(|a| a.len() == 3)
                .ok_or_else(|| IoError::Parse("line must be a 3-array".into()))?;
            let coef = |i: usize| rational_from_str(&str_at(&a[i], "line coefficient")?);
            PlanarLine::from_rationals(&coef(0)?, &coef(1)?, &coef(2)?)
                .map_err(|e| IoError::Parse(e.to_string()))
        })
        .collect::<Result<Vec<_>, IoError>>()?;
    Ok(PlanarScene { points, lines })
}

fn r3_point_to_value(p: &R3Point) -> Value {
    json!([
        rational_to_string(&p.x),
        rational_to_string(&p.y),
        rational_to_string(&p.z)
    ])
}

fn r3_point_from_value(v: &Value) -> Result<R3Point, IoError> {
    let a = v
        .as_array()
        .filter(|a| a.len() == 3)
        .ok_or_else(|| IoError::Parse("point must be a 3-array".into()))?;
    let coord = |i: usize| rational_from_str(&str_at(&a[i], "coordinate")?);
    Ok(R3Point::new(coord(0)?, coord(1)?, coord(2)?))
}

pub fn bipartite_config_to_json(cfg: &BipartiteR3Config) -> Value {
    json!({
        "type": "r3-bipartite",
        "line_points": cfg.line_points.iter().map(r3_point_to_value).collect::<Vec<_>>(),
        "circle_points": cfg.circle_points.iter().map(r3_point_to_value).collect::<Vec<_>>(),
        "prescribed_lengths": cfg
            .prescribed_lengths
            .iter()
            .map(|row| row.iter().map(rational_to_string).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

pub fn bipartite_config_from_json(v: &Value) -> Result<BipartiteR3Config, IoError> {
    let obj = v
        .as_object()
        .ok_or_else(|| IoError::Parse("config must be an object".into()))?;
    let arr = |name: &str| -> Result<&Vec<Value>, IoError> {
        obj.get(name)
            .and_then(Value::as_array)
            .ok_or_else(|| IoError::Parse(format!("config missing array {name:?}")))
    };
    let line_points = arr("line_points")?
        .iter()
        .map(r3_point_from_value)
        .collect::<Result<Vec<_>, _>>()?;
    let circle_points = arr("circle_points")?
        .iter()
        .map(r3_point_from_value)
        .collect::<Result<Vec<_>, _>>()?;
    let prescribed_lengths = arr("prescribed_lengths")?
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| IoError::Parse("length row must be an array".into()))?
                .iter()
                .map(|s| rational_from_str(&str_at(s, "length")?))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BipartiteR3Config {
        line_points,
        circle_points,
        prescribed_lengths,
    })
}

pub fn count_report_to_json(r: &CountReport, wall_ms: Option<u128>) -> Value {
    let mut obj = Map::new();
    obj.insert("k".into(), json!(r.k));
    obj.insert("ordered_paths".into(), json!(r.ordered_paths.to_string()));
    obj.insert(
        "unordered_paths".into(),
        json!(r.unordered_paths.to_string()),
    );
    if let Some(a) = &r.antipodal_free_unordered {
        obj.insert("antipodal_free_unordered".into(), json!(a.to_string()));
    }
    if let Some(c) = &r.cycles_dihedral {
        obj.insert("cycles_dihedral".into(), json!(c.to_string()));
    }
    obj.insert(
        "engine".into(),
        json!(match r.engine {
            crate::counting::Engine::Naive => "naive",
            crate::counting::Engine::Optimized => "optimized",
        }),
    );
    if let Some(ms) = wall_ms {
        obj.insert("wall_ms".into(), json!(ms as u64));
    }
    Value::Object(obj)
}

/// Edge-list text: one "u v" per line, vertices 0-based.
pub fn graph_to_edge_list(g: &UnitDistanceGraph) -> String {
    let mut out = String::new();
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Sidecar with everything the edge list cannot carry.
pub fn graph_sidecar_to_json(g: &UnitDistanceGraph) -> Value {
    json!({
        "vertex_count": g.vertex_count(),
        "antipodal_pairs": g
            .antipodal_pairs()
            .map(|ps| ps.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>()),
        "parts": g.parts(),
    })
}

pub fn scaling_run_to_csv(run: &ScalingRun) -> String {
    let mut out = String::from("construction,k,mode,x_label,x,count\n");
    for (x, count) in &run.series {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            run.construction,
            run.k,
            run.mode.as_str(),
            run.x_label,
            x,
            count
        ));
    }
    out
}

pub fn fit_to_json(
    run: &ScalingRun,
    fit: &ExponentFit,
    predicted: Option<&BigRational>,
    upper: &BigRational,
) -> Value {
    json!({
        "construction": run.construction,
        "k": run.k,
        "mode": run.mode.as_str(),
        "x_label": run.x_label,
        "slope": fit.slope,
        "intercept": fit.intercept,
        "max_residual": fit.max_residual,
        "predicted_exponent": predicted.map(rational_to_string),
        "upper_exponent": rational_to_string(upper),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{
        cycle_construction_sized, grid_incidence_scene, path_construction_sized,
    };
    use crate::counting::count_pattern_paths;

    #[test]
    fn rational_strings_round_trip() {
        for s in ["3", "-7", "1/2", "-22/7", "0"] {
            let r = rational_from_str(s).unwrap();
            assert_eq!(rational_to_string(&r), s);
        }
        assert_eq!(
            rational_to_string(&rational_from_str("4/2").unwrap()),
            "2"
        );
        assert!(rational_from_str("1/0").is_err());
        assert!(rational_from_str("x").is_err());
    }

    #[test]
    fn sphere_config_round_trips_with_identical_counts() {
        let cfg = path_construction_sized(5, 7).unwrap();
        let v = sphere_config_to_json(&cfg);
        let back = sphere_config_from_json(&v).unwrap();
        assert_eq!(cfg.points, back.points);
        assert_eq!(cfg.labels, back.labels);
        assert_eq!(cfg.pattern, back.pattern);
        assert_eq!(
            count_pattern_paths(&cfg, 5).unwrap(),
            count_pattern_paths(&back, 5).unwrap()
        );
    }

    #[test]
    fn cycle_config_round_trips() {
        let cfg = cycle_construction_sized(6, 5).unwrap();
        let v = sphere_config_to_json(&cfg);
        let back = sphere_config_from_json(&v).unwrap();
        assert_eq!(cfg.pattern, back.pattern);
    }

    #[test]
    fn scene_round_trips() {
        let scene = grid_incidence_scene(2).unwrap();
        let v = planar_scene_to_json(&scene);
        let back = planar_scene_from_json(&v).unwrap();
        assert_eq!(scene.points, back.points);
        assert_eq!(scene.lines, back.lines);
        assert_eq!(back.incidence_count(), 16);
    }

    #[test]
    fn serialization_is_deterministic() {
        let cfg = path_construction_sized(5, 8).unwrap();
        let a = serde_json::to_string_pretty(&sphere_config_to_json(&cfg)).unwrap();
        let b = serde_json::to_string_pretty(&sphere_config_to_json(&cfg)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn edge_list_export_round_trips_with_sidecar() {
        use crate::counting::RegularGraphSpec;
        use crate::graph::build_sphere_graph;

        let cfg = crate::constructions::quadratic_c4_config(5).unwrap();
        let g = build_sphere_graph(&cfg).unwrap();
        let text = graph_to_edge_list(&g);
        let spec = RegularGraphSpec::from_edge_list_text(&text).unwrap();
        assert_eq!(spec.edges.len(), g.edge_count());
        let sidecar = graph_sidecar_to_json(&g);
        assert_eq!(sidecar["vertex_count"], 5);
        assert_eq!(sidecar["antipodal_pairs"][0], serde_json::json!([0, 1]));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn rational_strings_round_trip_everywhere(
                n in -1_000_000i64..=1_000_000,
                d in 1i64..=1_000_000,
            ) {
                let r = num_rational::BigRational::new(n.into(), d.into());
                let s = rational_to_string(&r);
                prop_assert_eq!(rational_from_str(&s).unwrap(), r);
            }
        }
    }
}
