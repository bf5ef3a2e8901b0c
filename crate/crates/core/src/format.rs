//! Canonical JSON documents for spaces, admissible maps, glued spaces,
//! diagrams and coarse structures.
//!
//! Writers sort points and sets so equal values serialize byte-identically.
//! Readers keep the point order of the document and report malformed input
//! by line and column, or by field path.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::coarse::{CoarseStructure, Relation};
use crate::error::{Error, Result};
use crate::glueing::{check_pair, decompose_partition, glue, make_admissible, AdmissibleMap, SumSpace, LEFT_PREFIX, RIGHT_PREFIX};
use crate::limits::{Arrow, Limit, SumDiagram};
use crate::space::{FiniteSpace, SpaceMap};
use crate::subset::Subset;

fn parse<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Format(format!("line {} column {}: {e}", e.line(), e.column())))
}

fn from_value<T: for<'a> Deserialize<'a>>(v: Value, field: &str) -> Result<T> {
    serde_json::from_value(v).map_err(|e| Error::Format(format!("{field}: {e}")))
}

fn field(e: Error, path: &str) -> Error {
    match e {
        Error::Format(m) => Error::Format(format!("{path}.{m}")),
        other => Error::Format(format!("{path}: {other}")),
    }
}

fn sorted_labels(s: &FiniteSpace, set: Subset) -> Vec<&str> {
    let mut v: Vec<&str> = set.iter().map(|i| s.label(i)).collect();
    v.sort_unstable();
    v
}

fn lookup(s: &FiniteSpace, label: &str, path: &str) -> Result<usize> {
    s.index_of(label).map_err(|_| Error::Format(format!("{path}: unknown point {label:?}")))
}

fn subset_of(s: &FiniteSpace, labels: &[String], path: &str) -> Result<Subset> {
    labels.iter().map(|l| lookup(s, l, path)).collect()
}

// Spaces.

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpaceDoc {
    points: Vec<String>,
    closure: BTreeMap<String, Vec<String>>,
}

pub fn space_to_value(s: &FiniteSpace) -> Value {
    let closure: BTreeMap<&str, Vec<&str>> = (0..s.len()).map(|p| (s.label(p), sorted_labels(s, s.point_closure(p)))).collect();
    json!({ "points": sorted_labels(s, s.full()), "closure": closure })
}

pub fn space_to_json(s: &FiniteSpace) -> String {
    pretty(&space_to_value(s))
}

fn space_from_doc(doc: SpaceDoc) -> Result<FiniteSpace> {
    let labels = doc.points;
    let index: BTreeMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    if index.len() != labels.len() {
        return Err(Error::Format("points: duplicate label".into()));
    }
    if let Some(extra) = doc.closure.keys().find(|k| !index.contains_key(k.as_str())) {
        return Err(Error::Format(format!("closure: {extra:?} is not listed in points")));
    }
    let mut closures = Vec::with_capacity(labels.len());
    for l in &labels {
        let members = doc.closure.get(l).ok_or_else(|| Error::Format(format!("closure: missing entry for {l:?}")))?;
        let mut cl = Subset::EMPTY;
        for m in members {
            let i = index.get(m.as_str()).ok_or_else(|| Error::Format(format!("closure.{l}: unknown point {m:?}")))?;
            cl.insert(*i);
        }
        closures.push(cl);
    }
    FiniteSpace::from_closures(labels, closures).map_err(|e| Error::Format(format!("closure: {e}")))
}

pub fn space_from_value(v: Value) -> Result<FiniteSpace> {
    space_from_doc(from_value(v, "space")?)
}

pub fn space_from_json(text: &str) -> Result<FiniteSpace> {
    space_from_doc(parse(text)?)
}

// Admissible maps.

pub fn admissible_to_value(f: &AdmissibleMap) -> Value {
    let (x, y) = (f.source(), f.target());
    let gen: BTreeMap<&str, Vec<&str>> = (0..x.len()).map(|p| (x.label(p), sorted_labels(y, f.gen(p)))).collect();
    json!({ "source": space_to_value(x), "target": space_to_value(y), "gen": gen })
}

pub fn admissible_to_json(f: &AdmissibleMap) -> String {
    pretty(&admissible_to_value(f))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MapDoc {
    source: Option<Value>,
    target: Option<Value>,
    gen: BTreeMap<String, Vec<String>>,
}

/// Read an admissible map. `context` supplies the source and target when the
/// document omits them; when both are present they must agree.
pub fn admissible_from_json(text: &str, context: Option<(&FiniteSpace, &FiniteSpace)>) -> Result<AdmissibleMap> {
    let doc: MapDoc = parse(text)?;
    let side = |v: Option<Value>, given: Option<&FiniteSpace>, name: &str| -> Result<FiniteSpace> {
        match (v.map(space_from_value).transpose().map_err(|e| field(e, name))?, given) {
            (Some(s), Some(g)) if s != *g => Err(Error::Format(format!("{name}: does not match the given space"))),
            (Some(s), _) => Ok(s),
            (None, Some(g)) => Ok(g.clone()),
            (None, None) => Err(Error::Format(format!("{name}: missing"))),
        }
    };
    let x = side(doc.source, context.map(|c| c.0), "source")?;
    let y = side(doc.target, context.map(|c| c.1), "target")?;
    if let Some(extra) = doc.gen.keys().find(|k| x.index_of(k).is_err()) {
        return Err(Error::Format(format!("gen: {extra:?} is not a source point")));
    }
    let gens = (0..x.len())
        .map(|p| match doc.gen.get(x.label(p)) {
            Some(ls) => subset_of(&y, ls, &format!("gen.{}", x.label(p))),
            None => Ok(Subset::EMPTY),
        })
        .collect::<Result<Vec<_>>>()?;
    make_admissible(&x, &y, gens)
}

// Glued spaces.

pub fn sum_to_value(s: &SumSpace) -> Value {
    let t = s.total();
    json!({
        "total": space_to_value(t),
        "left": sorted_labels(t, s.left_set()),
        "right": sorted_labels(t, s.right_set()),
    })
}

pub fn sum_to_json(s: &SumSpace) -> String {
    pretty(&sum_to_value(s))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SumDoc {
    total: Value,
    left: Vec<String>,
    right: Vec<String>,
}

/// Rebuild a glued space from its total space and half labels. Prefixes
/// `L:` and `R:` are stripped from the half labels when every label on that
/// side carries them.
pub fn sum_from_value(v: Value) -> Result<SumSpace> {
    let doc: SumDoc = from_value(v, "sum")?;
    let total = space_from_value(doc.total).map_err(|e| field(e, "total"))?;
    let xs = subset_of(&total, &doc.left, "left")?;
    let ys = subset_of(&total, &doc.right, "right")?;
    if xs & ys != Subset::EMPTY || xs | ys != total.full() {
        return Err(Error::Format("left, right: the halves must partition the total space".into()));
    }
    let dec = decompose_partition(&total, xs).map_err(|e| field(e, "left"))?;
    let strip = |s: &FiniteSpace, prefix: &str| -> Result<FiniteSpace> {
        if s.labels().iter().all(|l| l.starts_with(prefix)) {
            s.relabel(s.labels().iter().map(|l| l[prefix.len()..].to_string()).collect())
        } else {
            Ok(s.clone())
        }
    };
    let x = strip(&dec.left, LEFT_PREFIX)?;
    let y = strip(&dec.right, RIGHT_PREFIX)?;
    let f = make_admissible(&x, &y, dec.pair.f.generators().to_vec())?;
    let g = make_admissible(&y, &x, dec.pair.g.generators().to_vec())?;
    glue(&x, &y, check_pair(f, g)?)
}

pub fn sum_from_json(text: &str) -> Result<SumSpace> {
    sum_from_value(parse(text)?)
}

// Diagrams and limits.

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrowDoc {
    from: String,
    to: String,
    phi: BTreeMap<String, String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramDoc {
    objects: BTreeMap<String, Value>,
    #[serde(default)]
    arrows: Vec<ArrowDoc>,
}

/// Objects are keyed by name; every object's left half is the shared base.
pub fn diagram_from_json(text: &str) -> Result<SumDiagram> {
    let doc: DiagramDoc = parse(text)?;
    let mut objects = Vec::new();
    for (name, v) in doc.objects {
        let s = sum_from_value(v).map_err(|e| field(e, &format!("objects.{name}")))?;
        objects.push((name, s));
    }
    let base = objects.first().map(|(_, s)| s.left().clone()).ok_or_else(|| Error::Format("objects: empty".into()))?;
    if let Some((name, _)) = objects.iter().find(|(_, s)| *s.left() != base) {
        return Err(Error::Format(format!("objects.{name}: its left half differs from the other objects'")));
    }
    let position = |n: &str, path: &str| {
        objects.iter().position(|(m, _)| m == n).ok_or_else(|| Error::Format(format!("{path}: no object named {n:?}")))
    };
    let mut arrows = Vec::new();
    for (k, a) in doc.arrows.iter().enumerate() {
        let path = format!("arrows[{k}]");
        let (from, to) = (position(&a.from, &path)?, position(&a.to, &path)?);
        let (src, dst) = (objects[from].1.right(), objects[to].1.right());
        let table = (0..src.len())
            .map(|p| {
                let l = src.label(p);
                let img = a.phi.get(l).ok_or_else(|| Error::Format(format!("{path}.phi: no image for {l:?}")))?;
                lookup(dst, img, &format!("{path}.phi.{l}"))
            })
            .collect::<Result<Vec<_>>>()?;
        let phi = SpaceMap::new(src.clone(), dst.clone(), table).map_err(|e| field(e, &path))?;
        arrows.push(Arrow { from, to, phi });
    }
    SumDiagram::new(base, objects, arrows)
}

pub fn diagram_to_json(d: &SumDiagram) -> String {
    let objects: BTreeMap<&str, Value> = d.names().iter().map(String::as_str).zip(d.objects().iter().map(sum_to_value)).collect();
    let arrows: Vec<Value> = d
        .arrows()
        .iter()
        .map(|a| {
            let (src, dst) = (a.phi.domain(), a.phi.codomain());
            let phi: BTreeMap<&str, &str> = (0..src.len()).map(|p| (src.label(p), dst.label(a.phi.apply(p)))).collect();
            json!({ "from": d.names()[a.from], "to": d.names()[a.to], "phi": phi })
        })
        .collect();
    pretty(&json!({ "objects": objects, "arrows": arrows }))
}

pub fn limit_to_json(l: &Limit) -> String {
    pretty(&json!({
        "full": sum_to_value(&l.full),
        "dense": l.dense.as_ref().map(sum_to_value),
        "x_dense_in_full": l.dense_families.len() == l.families.len(),
    }))
}

// Coarse structures.

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StructureDoc {
    ground: Vec<String>,
    generators: Vec<Vec<(String, String)>>,
}

/// Pairs `[[x, y], ...]` over a labelled ground set.
pub fn relation_from_pairs(ground: &[String], pairs: &[(String, String)], path: &str) -> Result<Relation> {
    let idx = |l: &str| ground.iter().position(|g| g == l).ok_or_else(|| Error::Format(format!("{path}: unknown point {l:?}")));
    let pairs = pairs.iter().map(|(a, b)| Ok((idx(a)?, idx(b)?))).collect::<Result<Vec<_>>>()?;
    Relation::from_pairs(ground.len(), pairs)
}

pub fn relation_from_json(ground: &[String], text: &str) -> Result<Relation> {
    let pairs: Vec<(String, String)> = parse(text)?;
    relation_from_pairs(ground, &pairs, "relation")
}

pub fn structure_from_json(text: &str) -> Result<CoarseStructure> {
    let doc: StructureDoc = parse(text)?;
    let gens = doc
        .generators
        .iter()
        .enumerate()
        .map(|(k, g)| relation_from_pairs(&doc.ground, g, &format!("generators[{k}]")))
        .collect::<Result<Vec<_>>>()?;
    CoarseStructure::new(doc.ground, gens)
}

pub fn relation_to_value(ground: &[String], r: &Relation) -> Value {
    let mut pairs: Vec<(&str, &str)> = r.pairs().map(|(a, b)| (ground[a].as_str(), ground[b].as_str())).collect();
    pairs.sort_unstable();
    json!(pairs)
}

pub fn structure_to_json(c: &CoarseStructure) -> String {
    let mut ground: Vec<&str> = c.ground().iter().map(String::as_str).collect();
    ground.sort_unstable();
    let mut gens: Vec<Value> = c.generators().iter().map(|g| relation_to_value(c.ground(), g)).collect();
    gens.sort_by_key(|v| v.to_string());
    pretty(&json!({ "ground": ground, "generators": gens }))
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn space_round_trip_sorts() {
        let s = FiniteSpace::from_closures(vec!["b".into(), "a".into()], vec![Subset::from_iter([0, 1]), Subset::singleton(1)]).unwrap();
        let text = space_to_json(&s);
        assert!(text.find("\"a\"").unwrap() < text.find("\"b\"").unwrap());
        let back = space_from_json(&text).unwrap();
        assert_eq!(space_to_json(&back), text);
        assert!(back.below(back.index_of("a").unwrap(), back.index_of("b").unwrap()));
    }

    #[test]
    fn reader_names_the_problem() {
        let e = space_from_json(r#"{"points": ["a"], "closure": {"a": []}}"#).unwrap_err();
        assert!(e.to_string().contains("\"a\""), "{e}");
        let e = space_from_json("{\n\"points\": [\"a\"],\n\"closure\": 3}").unwrap_err();
        assert!(e.to_string().contains("line 3"), "{e}");
        let e = space_from_json(r#"{"points": ["a"], "closure": {"a": ["a"]}, "x": 1}"#).unwrap_err();
        assert!(e.to_string().contains("unknown field"), "{e}");
    }

    #[test]
    fn sum_round_trip() {
        let x = FiniteSpace::sierpinski();
        let y = FiniteSpace::discrete(2).unwrap();
        let f = make_admissible(&x, &y, vec![Subset::singleton(0), Subset::from_iter([0, 1])]).unwrap();
        let s = crate::glueing::glue_one_sided(f.clone()).unwrap();
        let back = sum_from_json(&sum_to_json(&s)).unwrap();
        assert_eq!(back.f().generators(), s.f().generators());
        assert_eq!(back.left().labels(), x.labels());
        let g = admissible_from_json(&admissible_to_json(&f), None).unwrap();
        assert_eq!(g, f);
    }
}
