//! Canonical JSON and DOT serialization.
//!
//! Half-edges, edges and labels are 1-based externally; rationals are
//! strings "p/q" in lowest terms with positive denominator. Objects use
//! sorted keys throughout, so equal values serialize to identical bytes.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::enumeration::CollapsePoset;
use crate::moduli::OrbiCellComplex;
use crate::polytope::HPolytope;
use crate::rat_str;
use crate::real::SymmetricComplex;
use crate::ribbon::{build_graph, RibbonError, RibbonGraph, TopologicalType};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed graph JSON: {0}")]
    Malformed(String),
    #[error(transparent)]
    Ribbon(#[from] RibbonError),
}

fn type_to_json(t: TopologicalType) -> Value {
    json!({ "genus": t.genus, "cycles": t.boundary_cycles })
}

/// The interchange form of a graph: sigma0 as 1-based cycles, sigma1 as
/// 1-based pairs, labels keyed by 1-based label with the least half-edge of
/// the cycle as representative.
pub fn graph_to_json(g: &RibbonGraph) -> Value {
    let sigma0: Vec<Vec<usize>> =
        g.sigma0().cycles().into_iter().map(|c| c.into_iter().map(|h| h + 1).collect()).collect();
    let sigma1: Vec<[usize; 2]> = g.edges().iter().map(|&[a, b]| [a + 1, b + 1]).collect();
    let mut labels = Map::new();
    for (c, cusp) in g.cusps().iter().enumerate() {
        let rep = cusp.iter().min().unwrap() + 1;
        labels.insert((g.labels()[c] + 1).to_string(), json!([rep]));
    }
    json!({
        "half_edges": g.half_edge_count(),
        "sigma0": sigma0,
        "sigma1": sigma1,
        "labels": labels,
    })
}

fn field<'v>(v: &'v Value, key: &str) -> Result<&'v Value, JsonError> {
    v.get(key).ok_or_else(|| JsonError::Malformed(format!("missing field {key:?}")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize, JsonError> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| JsonError::Malformed(format!("{what} must be a non-negative integer")))
}

fn as_cycles(v: &Value, what: &str) -> Result<Vec<Vec<usize>>, JsonError> {
    let arr = v
        .as_array()
        .ok_or_else(|| JsonError::Malformed(format!("{what} must be an array of cycles")))?;
    arr.iter()
        .map(|c| {
            let cycle = c
                .as_array()
                .ok_or_else(|| JsonError::Malformed(format!("{what} entries must be arrays")))?;
            cycle.iter().map(|h| as_usize(h, what)).collect()
        })
        .collect()
}

/// Rebuilds a graph from its interchange form.
pub fn graph_from_json(v: &Value) -> Result<RibbonGraph, JsonError> {
    let half_edges = as_usize(field(v, "half_edges")?, "half_edges")?;
    let sigma0 = as_cycles(field(v, "sigma0")?, "sigma0")?;
    let sigma1 = as_cycles(field(v, "sigma1")?, "sigma1")?;
    let pairs: Vec<(usize, usize)> = sigma1
        .iter()
        .map(|p| {
            if p.len() == 2 {
                Ok((p[0], p[1]))
            } else {
                Err(JsonError::Malformed("sigma1 entries must be pairs".into()))
            }
        })
        .collect::<Result<_, _>>()?;
    if half_edges != 2 * pairs.len() {
        return Err(JsonError::Malformed(format!(
            "half_edges is {half_edges} but sigma1 pairs {} half-edges",
            2 * pairs.len()
        )));
    }
    let labels_value = field(v, "labels")?
        .as_object()
        .ok_or_else(|| JsonError::Malformed("labels must be an object".into()))?;
    let mut labels: BTreeMap<usize, usize> = BTreeMap::new();
    for (key, reps) in labels_value {
        let label: usize = key
            .parse()
            .map_err(|_| JsonError::Malformed(format!("label key {key:?} is not an integer")))?;
        let reps = reps
            .as_array()
            .filter(|r| r.len() == 1)
            .ok_or_else(|| JsonError::Malformed("label values must be singleton arrays".into()))?;
        labels.insert(label, as_usize(&reps[0], "label representative")?);
    }
    Ok(build_graph(&sigma0, &pairs, Some(&labels))?)
}

pub fn graph_from_str(s: &str) -> Result<RibbonGraph, JsonError> {
    let v: Value = serde_json::from_str(s).map_err(|e| JsonError::Malformed(e.to_string()))?;
    graph_from_json(&v)
}

fn arrows_to_json(poset: &CollapsePoset) -> Vec<Value> {
    poset
        .arrows
        .iter()
        .map(|a| {
            let forest: Vec<usize> = a.forest.iter().map(|&e| e + 1).collect();
            let mut edge_map = Map::new();
            for (&s, &t) in &a.edge_map {
                edge_map.insert((s + 1).to_string(), json!(t + 1));
            }
            json!({
                "source": a.source,
                "target": a.target,
                "forest": forest,
                "orbit_size": a.orbit_size,
                "edge_map": edge_map,
            })
        })
        .collect()
}

/// Catalog with collapse arrows, as produced by enumeration.
pub fn catalog_to_json(poset: &CollapsePoset) -> Value {
    let classes: Vec<Value> = poset
        .catalog
        .classes
        .iter()
        .enumerate()
        .map(|(i, class)| {
            json!({
                "id": i,
                "edges": class.graph.edges().iter().map(|&[a, b]| [a + 1, b + 1]).collect::<Vec<_>>(),
                "graph": graph_to_json(&class.graph),
                "aut_order": class.aut.order(),
                "aut_edge_order": class.aut.edge_order(),
            })
        })
        .collect();
    json!({
        "type": type_to_json(poset.catalog.top_type),
        "classes": classes,
        "arrows": arrows_to_json(poset),
    })
}

fn count_map<K: ToString, V: serde::Serialize>(m: &BTreeMap<K, V>) -> Value {
    let mut out = Map::new();
    for (k, v) in m {
        out.insert(k.to_string(), json!(v));
    }
    Value::Object(out)
}

/// Cells, attachments and statistics of a moduli complex.
pub fn complex_to_json(complex: &OrbiCellComplex) -> Value {
    let cells: Vec<Value> = complex
        .cells
        .iter()
        .enumerate()
        .map(|(i, cell)| {
            let class = &complex.poset.catalog.classes[i];
            let mut entry = Map::new();
            entry.insert("graph_id".into(), json!(i));
            entry.insert("dim".into(), json!(cell.dim));
            entry.insert("aut_order".into(), json!(class.aut.order()));
            entry.insert("aut_edge_order".into(), json!(class.aut.edge_order()));
            if let Some(c) = &cell.cell {
                entry.insert("f_vector".into(), json!(c.lattice.f_vector));
                entry.insert("alpha".into(), json!(rat_str(&c.alpha)));
            }
            Value::Object(entry)
        })
        .collect();
    let stats = complex.stats();
    json!({
        "type": type_to_json(complex.top_type),
        "compact": complex.compact,
        "cells": cells,
        "attachments": arrows_to_json(&complex.poset),
        "stats": {
            "cells_by_dim": count_map(&stats.cells_by_dim),
            "orbifold_euler": rat_str(&stats.orbifold_euler),
            "euler": stats.euler,
            "connected": stats.connected,
            "is_surface": stats.is_surface,
            "boundary_circles": stats.boundary_circles,
            "identified_faces_by_dim": stats.identified_faces_by_dim.as_ref().map(count_map),
        },
    })
}

/// Vertices, f-vector and facets of a polytope.
pub fn polytope_to_json(p: &HPolytope) -> Value {
    let vertices: Vec<Vec<String>> =
        p.vertices.iter().map(|v| v.iter().map(rat_str).collect()).collect();
    let lattice = p.face_lattice();
    let facets: Vec<Vec<usize>> = lattice
        .faces
        .iter()
        .filter(|f| f.dim == lattice.dim - 1)
        .map(|f| f.vertices.iter().copied().collect())
        .collect();
    json!({
        "vertices": vertices,
        "f_vector": lattice.f_vector,
        "facets": facets,
    })
}

/// Bordered type data, cell counts and the fixed loci with their real
/// structures.
pub fn symmetric_to_json(s: &SymmetricComplex) -> Value {
    let loci: Vec<Value> = s
        .loci
        .iter()
        .map(|l| {
            let partition: Vec<Vec<usize>> =
                l.orbit_partition.iter().map(|o| o.iter().map(|&e| e + 1).collect()).collect();
            let taus: Vec<Vec<usize>> =
                l.taus.iter().map(|t| t.images().iter().map(|&h| h + 1).collect()).collect();
            json!({
                "class": l.class,
                "dim": l.dim,
                "multiplicity": l.multiplicity(),
                "orbit_partition": partition,
                "taus": taus,
            })
        })
        .collect();
    json!({
        "bordered": {
            "genus": s.bordered.genus,
            "boundaries": s.bordered.boundary_components,
            "interior": s.bordered.interior_points,
            "boundary_marks": s.bordered.boundary_points,
        },
        "double": type_to_json(s.double),
        "compact": s.compact,
        "euler": rat_str(&s.bordered.euler()),
        "dim": s.bordered.dim(),
        "cells_by_dim": count_map(&s.cells_by_dim),
        "loci": loci,
    })
}

/// The underlying graph in DOT: one node per vertex cycle, one undirected
/// edge per sigma1 pair, boundary labels of the two sides as a comment.
pub fn graph_to_dot(g: &RibbonGraph) -> String {
    let mut out = String::from("graph ribbon {\n");
    for (v, cycle) in g.vertices().iter().enumerate() {
        let shown: Vec<String> = cycle.iter().map(|h| (h + 1).to_string()).collect();
        out.push_str(&format!("  v{v} [label=\"({})\"];\n", shown.join(" ")));
    }
    for (i, &[a, b]) in g.edges().iter().enumerate() {
        out.push_str(&format!(
            "  v{} -- v{} [label=\"e{}\"]; /* boundaries {} {} */\n",
            g.vertex_of(a),
            g.vertex_of(b),
            i + 1,
            g.labels()[g.cusp_of(a)] + 1,
            g.labels()[g.cusp_of(b)] + 1,
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{collapse_poset, EnumOptions};
    use crate::moduli::assemble_complex;
    use crate::polytope::permutohedron;
    use crate::ribbon::fixtures;

    #[test]
    fn graph_round_trip() {
        for g in [
            fixtures::theta(),
            fixtures::twisted_theta(),
            fixtures::figure_eight(),
            fixtures::double_noose(),
        ] {
            let text = serde_json::to_string(&graph_to_json(&g)).unwrap();
            let back = graph_from_str(&text).unwrap();
            assert_eq!(back.canonical_form(), g.canonical_form());
            assert_eq!(back.labels(), g.labels());
        }
    }

    #[test]
    fn graph_json_shape() {
        let v = graph_to_json(&fixtures::theta());
        assert_eq!(v["half_edges"], json!(6));
        assert_eq!(v["sigma1"], json!([[1, 4], [2, 5], [3, 6]]));
        assert_eq!(v["labels"]["1"], json!([1]));
        let text = serde_json::to_string(&v).unwrap();
        // sorted keys make the encoding reproducible
        assert!(text.starts_with("{\"half_edges\":6,"));
    }

    #[test]
    fn malformed_graphs_are_rejected() {
        assert!(matches!(graph_from_str("{"), Err(JsonError::Malformed(_))));
        assert!(matches!(graph_from_str("{\"half_edges\": 2}"), Err(JsonError::Malformed(_))));
        let odd = json!({
            "half_edges": 6,
            "sigma0": [[1, 2, 3], [6, 5, 4]],
            "sigma1": [[1, 4], [2, 5], [3]],
            "labels": {},
        });
        assert!(matches!(graph_from_json(&odd), Err(JsonError::Malformed(_))));
        let unpaired = json!({
            "half_edges": 6,
            "sigma0": [[1, 2, 3], [6, 5, 4]],
            "sigma1": [[1, 4], [2, 5], [3, 5]],
            "labels": {"1": [1], "2": [2], "3": [3]},
        });
        assert!(matches!(graph_from_json(&unpaired), Err(JsonError::Ribbon(_))));
    }

    #[test]
    fn catalog_and_complex_serialization() {
        let t = TopologicalType { genus: 0, boundary_cycles: 3 };
        let poset = collapse_poset(t, &EnumOptions::default()).unwrap();
        let v = catalog_to_json(&poset);
        assert_eq!(v["classes"].as_array().unwrap().len(), 7);
        assert!(!v["arrows"].as_array().unwrap().is_empty());

        let complex = assemble_complex(t, true, None, &EnumOptions::default()).unwrap();
        let v = complex_to_json(&complex);
        assert_eq!(v["stats"]["orbifold_euler"], json!("1/1"));
        assert_eq!(v["stats"]["boundary_circles"], json!(1));
        assert_eq!(v["stats"]["cells_by_dim"], json!({"1": 3, "2": 4}));
        // byte-identical across repeated serialization
        assert_eq!(serde_json::to_string(&v).unwrap(), serde_json::to_string(&v).unwrap());
    }

    #[test]
    fn polytope_serialization_uses_rational_strings() {
        let p = permutohedron(3, None).unwrap();
        let v = polytope_to_json(&p);
        assert_eq!(v["f_vector"], json!([6, 6]));
        assert!(v["vertices"]
            .as_array()
            .unwrap()
            .iter()
            .any(|vertex| vertex.as_array().unwrap().contains(&json!("5/8"))));
        assert_eq!(v["facets"].as_array().unwrap().len(), 6);
    }

    #[test]
    fn dot_lists_vertices_and_edges() {
        let dot = graph_to_dot(&fixtures::theta());
        assert_eq!(dot.matches(" -- ").count(), 3);
        assert_eq!(dot.matches("label=\"(").count(), 2);
        assert!(dot.contains("/* boundaries"));
        assert!(dot.ends_with("}\n"));
    }
}
