//! JSON encodings for cell objects, morphisms, presentations, diagrams,
//! and enriched categories.
//!
//! Objects: the level-0 object is `"*"`; a level-n object is the array of its
//! children, so `[2]([1],[0])` is `[["*"],[]]`. Morphisms are
//! `{"delta": [...], "f": [[...], ...]}` with blocks grouped per source
//! position; the level-0 morphism is `"*"`.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::presheaf::{Cell, Presentation, Presheaf, PresheafMap, Relation};
use crate::site::{Site, SiteMorphism, SiteObject};
use crate::theta::{ThetaMorphism, ThetaObject};

pub fn theta_object_to_json(o: &ThetaObject) -> Value {
    if o.level() == 0 {
        return Value::String("*".into());
    }
    Value::Array(o.children().iter().map(theta_object_to_json).collect())
}

pub fn theta_object_from_json(level: u32, v: &Value) -> Result<ThetaObject> {
    match v {
        Value::String(s) if s == "*" => {
            if level != 0 {
                return Err(Error::LevelMismatch { expected: level, got: 0 });
            }
            Ok(ThetaObject::point())
        }
        Value::Array(items) => {
            if level == 0 {
                return Err(Error::LevelMismatch { expected: 0, got: 1 });
            }
            let children: Result<Vec<ThetaObject>> =
                items.iter().map(|c| theta_object_from_json(level - 1, c)).collect();
            ThetaObject::new(level, children?)
        }
        _ => Err(Error::Malformed(format!("bad object json: {v}"))),
    }
}

/// Accepts the shorthand where `*` appears unquoted, e.g. `[*]` for `["*"]`.
pub fn theta_object_from_str(level: u32, s: &str) -> Result<ThetaObject> {
    let cooked = s.replace('*', "\"*\"").replace("\"\"*\"\"", "\"*\"");
    let v: Value = serde_json::from_str(&cooked)?;
    theta_object_from_json(level, &v)
}

pub fn theta_morphism_to_json(f: &ThetaMorphism) -> Value {
    if f.source().level() == 0 {
        return Value::String("*".into());
    }
    let delta = f.delta();
    let mut groups = Vec::new();
    for i in 1..delta.len() {
        let mut row = Vec::new();
        for j in delta[i - 1] + 1..=delta[i] {
            row.push(theta_morphism_to_json(f.block(i, j)));
        }
        groups.push(Value::Array(row));
    }
    json!({ "delta": delta, "f": groups })
}

pub fn theta_morphism_from_json(
    source: &ThetaObject,
    target: &ThetaObject,
    v: &Value,
) -> Result<ThetaMorphism> {
    if source.level() == 0 {
        return ThetaMorphism::new(source.clone(), target.clone(), Vec::new(), Vec::new());
    }
    let obj = v.as_object().ok_or_else(|| Error::Malformed(format!("bad morphism json: {v}")))?;
    let delta: Vec<usize> = obj
        .get("delta")
        .and_then(|d| d.as_array())
        .ok_or_else(|| Error::Malformed("morphism json needs a delta array".into()))?
        .iter()
        .map(|x| x.as_u64().map(|u| u as usize))
        .collect::<Option<Vec<usize>>>()
        .ok_or_else(|| Error::Malformed("delta entries must be integers".into()))?;
    let groups = obj
        .get("f")
        .and_then(|d| d.as_array())
        .ok_or_else(|| Error::Malformed("morphism json needs block groups".into()))?;
    if delta.len() != source.width() + 1 {
        return Err(Error::ArityMismatch { expected: source.width() + 1, got: delta.len() });
    }
    if groups.len() != source.width() {
        return Err(Error::ArityMismatch { expected: source.width(), got: groups.len() });
    }
    let mut blocks = Vec::new();
    for i in 1..delta.len() {
        let row = groups[i - 1]
            .as_array()
            .ok_or_else(|| Error::Malformed("block group must be an array".into()))?;
        let expected = delta[i].saturating_sub(delta[i - 1]);
        if row.len() != expected {
            return Err(Error::ArityMismatch { expected, got: row.len() });
        }
        for (offset, bjson) in row.iter().enumerate() {
            let j = delta[i - 1] + 1 + offset;
            blocks.push(theta_morphism_from_json(
                &source.children()[i - 1],
                &target.children()[j - 1],
                bjson,
            )?);
        }
    }
    ThetaMorphism::new(source.clone(), target.clone(), delta, blocks)
}

pub fn site_object_to_json(o: &SiteObject) -> Value {
    Value::Array(o.0.iter().map(theta_object_to_json).collect())
}

pub fn site_object_from_json(site: &Site, v: &Value) -> Result<SiteObject> {
    let items = v
        .as_array()
        .ok_or_else(|| Error::Malformed("site object must be an array of objects".into()))?;
    if items.len() != site.len() {
        return Err(Error::ArityMismatch { expected: site.len(), got: items.len() });
    }
    let comps: Result<Vec<ThetaObject>> = items
        .iter()
        .zip(site.factors())
        .map(|(item, &lvl)| theta_object_from_json(lvl, item))
        .collect();
    Ok(SiteObject(comps?))
}

pub fn site_morphism_to_json(f: &SiteMorphism) -> Value {
    json!({
        "source": site_object_to_json(&f.source()),
        "target": site_object_to_json(&f.target()),
        "components": f.0.iter().map(theta_morphism_to_json).collect::<Vec<_>>(),
    })
}

pub fn site_morphism_from_json(
    source: &SiteObject,
    target: &SiteObject,
    v: &Value,
) -> Result<SiteMorphism> {
    let comps = match v {
        Value::Array(items) => items.clone(),
        Value::Object(map) => map
            .get("components")
            .and_then(|c| c.as_array())
            .ok_or_else(|| Error::Malformed("morphism needs components".into()))?
            .clone(),
        _ => return Err(Error::Malformed("bad site morphism json".into())),
    };
    if comps.len() != source.0.len() {
        return Err(Error::ArityMismatch { expected: source.0.len(), got: comps.len() });
    }
    let parts: Result<Vec<ThetaMorphism>> = comps
        .iter()
        .enumerate()
        .map(|(k, c)| theta_morphism_from_json(&source.0[k], &target.0[k], c))
        .collect();
    Ok(SiteMorphism(parts?))
}

pub fn presentation_to_json(p: &Presentation) -> Value {
    let cells: Vec<Value> = p
        .cells
        .iter()
        .enumerate()
        .map(|(i, c)| json!({ "id": format!("c{i}"), "shape": site_object_to_json(&c.shape) }))
        .collect();
    let glue: Vec<Value> = p
        .relations
        .iter()
        .map(|r| {
            json!([
                { "cell": format!("c{}", r.left.0), "via": site_morphism_to_json(&r.left.1) },
                { "cell": format!("c{}", r.right.0), "via": site_morphism_to_json(&r.right.1) },
            ])
        })
        .collect();
    json!({ "site": p.site.factors(), "cells": cells, "glue": glue })
}

fn cell_id_to_index(id: &str, ncells: usize) -> Result<usize> {
    let idx: usize = id
        .strip_prefix('c')
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Malformed(format!("bad cell id {id}")))?;
    if idx >= ncells {
        return Err(Error::Malformed(format!("cell id {id} out of range")));
    }
    Ok(idx)
}

fn elem_ref_from_json(
    cells: &[Cell],
    v: &Value,
) -> Result<(usize, SiteMorphism)> {
    let obj = v.as_object().ok_or_else(|| Error::Malformed("bad element reference".into()))?;
    let id = obj
        .get("cell")
        .and_then(|c| c.as_str())
        .ok_or_else(|| Error::Malformed("element reference needs a cell id".into()))?;
    let idx = cell_id_to_index(id, cells.len())?;
    let at = obj
        .get("at")
        .map(|a| site_object_from_json_raw(a, &cells[idx].shape))
        .transpose()?;
    let via = obj
        .get("via")
        .ok_or_else(|| Error::Malformed("element reference needs a morphism".into()))?;
    let source = match (&at, via) {
        (Some(src), _) => src.clone(),
        (None, Value::Object(map)) if map.contains_key("source") => {
            let src = map.get("source").unwrap();
            site_object_from_json_raw(src, &cells[idx].shape)?
        }
        _ => {
            return Err(Error::Malformed(
                "element reference needs `at` or a morphism with a source".into(),
            ))
        }
    };
    let m = site_morphism_from_json(&source, &cells[idx].shape, via)?;
    Ok((idx, m))
}

fn site_object_from_json_raw(v: &Value, like: &SiteObject) -> Result<SiteObject> {
    let items = v
        .as_array()
        .ok_or_else(|| Error::Malformed("site object must be an array".into()))?;
    if items.len() != like.0.len() {
        return Err(Error::ArityMismatch { expected: like.0.len(), got: items.len() });
    }
    let comps: Result<Vec<ThetaObject>> = items
        .iter()
        .zip(&like.0)
        .map(|(item, o)| theta_object_from_json(o.level(), item))
        .collect();
    Ok(SiteObject(comps?))
}

pub fn presentation_from_json(v: &Value) -> Result<Presentation> {
    let obj = v.as_object().ok_or_else(|| Error::Malformed("presentation must be an object".into()))?;
    let factors: Vec<u32> = obj
        .get("site")
        .and_then(|s| s.as_array())
        .ok_or_else(|| Error::Malformed("presentation needs a site".into()))?
        .iter()
        .map(|x| x.as_u64().map(|u| u as u32))
        .collect::<Option<Vec<u32>>>()
        .ok_or_else(|| Error::Malformed("site factors must be levels".into()))?;
    let site = Site::new(factors)?;
    let cell_values = obj
        .get("cells")
        .and_then(|c| c.as_array())
        .ok_or_else(|| Error::Malformed("presentation needs cells".into()))?;
    let mut cells = Vec::new();
    for c in cell_values {
        let shape = c
            .get("shape")
            .ok_or_else(|| Error::Malformed("cell needs a shape".into()))?;
        cells.push(Cell { shape: site_object_from_json(&site, shape)? });
    }
    let mut relations = Vec::new();
    if let Some(glue) = obj.get("glue").and_then(|g| g.as_array()) {
        for pair in glue {
            let sides = pair
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| Error::Malformed("glue entry must be a pair".into()))?;
            relations.push(Relation {
                left: elem_ref_from_json(&cells, &sides[0])?,
                right: elem_ref_from_json(&cells, &sides[1])?,
            });
        }
    }
    Presentation::new(site, cells, relations)
}

pub fn presheaf_from_json(v: &Value) -> Result<Presheaf> {
    Ok(Presheaf::from_presentation(presentation_from_json(v)?))
}

/// A map between presented presheaves: source, target, and one element
/// reference per source cell.
pub fn map_to_json(f: &PresheafMap) -> Result<Value> {
    let src = f.source().presentation().ok_or(Error::NotPresented)?;
    let tgt = f.target().presentation().ok_or(Error::NotPresented)?;
    let assign = f.cell_assignment().ok_or(Error::NotPresented)?;
    let refs: Vec<Value> = src
        .cells
        .iter()
        .zip(&assign)
        .map(|(c, &e)| {
            let key = f.target().eval(&c.shape).key(e).clone();
            match key {
                crate::presheaf::ElemKey::Cls(cell, via) => json!({
                    "cell": format!("c{cell}"),
                    "at": site_object_to_json(&c.shape),
                    "via": site_morphism_to_json(&via),
                }),
                _ => unreachable!("presented target"),
            }
        })
        .collect();
    Ok(json!({
        "source": presentation_to_json(src),
        "target": presentation_to_json(tgt),
        "assign": refs,
    }))
}

pub fn map_from_json(v: &Value) -> Result<PresheafMap> {
    let obj = v.as_object().ok_or_else(|| Error::Malformed("map must be an object".into()))?;
    let source = presheaf_from_json(
        obj.get("source").ok_or_else(|| Error::Malformed("map needs a source".into()))?,
    )?;
    let target = presheaf_from_json(
        obj.get("target").ok_or_else(|| Error::Malformed("map needs a target".into()))?,
    )?;
    let tpres = target.presentation().expect("just presented").clone();
    let spres = source.presentation().expect("just presented").clone();
    let refs = obj
        .get("assign")
        .and_then(|a| a.as_array())
        .ok_or_else(|| Error::Malformed("map needs an assignment".into()))?;
    if refs.len() != spres.cells.len() {
        return Err(Error::ArityMismatch { expected: spres.cells.len(), got: refs.len() });
    }
    let mut assignment = Vec::new();
    for (c, r) in spres.cells.iter().zip(refs) {
        let (cell, via) = elem_ref_from_json(&tpres.cells, r)?;
        if via.source() != c.shape {
            return Err(Error::Malformed("assignment element is at the wrong object".into()));
        }
        let idx = target
            .eval(&c.shape)
            .position(&crate::presheaf::ElemKey::Cls(cell, via))
            .ok_or_else(|| Error::Malformed("assignment element not found".into()))?;
        assignment.push(idx);
    }
    PresheafMap::on_cells(&source, &target, assignment)
}

/// Stable string for an element, used in tabulated output.
pub fn element_label(_p: &Presheaf, d: &SiteObject, idx: usize) -> String {
    format!("{d}#{idx}")
}

pub fn tabulated_to_json(p: &Presheaf, t: &crate::presheaf::Tabulated) -> Value {
    let window: Vec<Value> = t.sizes.keys().map(site_object_to_json).collect();
    let mut values = Map::new();
    for (d, n) in &t.sizes {
        values.insert(
            d.to_string(),
            Value::Array((0..*n).map(|i| Value::String(element_label(p, d, i))).collect()),
        );
    }
    let mut action = Map::new();
    for ((d, e), tables) in &t.action {
        let rows: Vec<Value> = tables
            .iter()
            .map(|(m, row)| {
                json!({
                    "morphism": site_morphism_to_json(m),
                    "table": row,
                })
            })
            .collect();
        action.insert(format!("{d}<-{e}"), Value::Array(rows));
    }
    json!({ "window": window, "values": values, "action": action })
}

// ---------------------------------------------------------------------------
// Segal precategory objects: levelwise schema
// ---------------------------------------------------------------------------

use crate::presheaf::ElemKey;
use crate::segal::SegalPreObject;
use crate::site::Window;
use crate::theta::ThetaObject as Th;

/// Exports a Segal precategory object with presented total diagram as
/// levelwise presentations with face and degeneracy assignments, truncated
/// at outer level `p_max`.
pub fn spo_to_json(x: &SegalPreObject, p_max: usize) -> Result<Value> {
    let total = x.total();
    let pres = total.presentation().ok_or(Error::NotPresented)?;
    let inner = x.inner_site();
    // slice presentation cells at level p are (original cell, vertex of its
    // outer part) in deterministic order
    let slice_cells = |p: usize| -> Vec<(usize, ThetaMorphism)> {
        let mut out = Vec::new();
        for (ci, c) in pres.cells.iter().enumerate() {
            for u in ThetaMorphism::hom(&ThetaObject::simplex(p), c.shape.factor(0)).iter() {
                out.push((ci, u.clone()));
            }
        }
        out
    };
    let levels: Vec<Value> = (0..=p_max)
        .map(|p| presentation_to_json(&pres.slice(0, &ThetaObject::simplex(p))))
        .collect();
    // an element of the total at ([q], inner shape) maps to a slice element
    let to_slice_ref = |q: usize, shape_inner: &SiteObject, idx: usize| -> Value {
        let big = shape_inner.insert_factor(0, ThetaObject::simplex(q));
        let key = total.eval(&big).key(idx).clone();
        let (cell, via) = match key {
            ElemKey::Cls(c, u) => (c, u),
            _ => unreachable!("presented total"),
        };
        let outer_part = via.0[0].clone();
        let slice_idx = slice_cells(q)
            .iter()
            .position(|(c, u)| *c == cell && *u == outer_part)
            .expect("slice cell exists");
        let mut inner_comps = via.0.clone();
        inner_comps.remove(0);
        json!({
            "cell": format!("c{slice_idx}"),
            "at": site_object_to_json(shape_inner),
            "via": site_morphism_to_json(&SiteMorphism(inner_comps)),
        })
    };
    let mut faces = Vec::new();
    for p in 1..=p_max {
        let cells_p = slice_cells(p);
        let mut per_i = Vec::new();
        for i in 0..=p {
            let delta: Vec<usize> = (0..p).map(|t| if t < i { t } else { t + 1 }).collect();
            let coface = ThetaMorphism::simplicial(p - 1, p, delta)?;
            let rows: Result<Vec<Value>> = cells_p
                .iter()
                .map(|(ci, u)| {
                    let shape_inner = pres.cells[*ci].shape.without_factor(0);
                    let big = shape_inner.insert_factor(0, ThetaObject::simplex(p));
                    let own = total
                        .eval(&big)
                        .position(&ElemKey::Cls(
                            *ci,
                            SiteMorphism(
                                std::iter::once(u.clone())
                                    .chain(
                                        shape_inner.0.iter().map(ThetaMorphism::identity),
                                    )
                                    .collect(),
                            ),
                        ))
                        .expect("slice cell element");
                    let mut comps: Vec<ThetaMorphism> =
                        shape_inner.0.iter().map(ThetaMorphism::identity).collect();
                    comps.insert(0, coface.clone());
                    let restricted = total.act(&SiteMorphism(comps), own);
                    Ok(to_slice_ref(p - 1, &shape_inner, restricted))
                })
                .collect();
            per_i.push(Value::Array(rows?));
        }
        faces.push(Value::Array(per_i));
    }
    let mut degeneracies = Vec::new();
    for p in 0..p_max {
        let cells_p = slice_cells(p);
        let mut per_i = Vec::new();
        for i in 0..=p {
            let delta: Vec<usize> =
                (0..=p + 1).map(|t| if t <= i { t } else { t - 1 }).collect();
            let codegen = ThetaMorphism::simplicial(p + 1, p, delta)?;
            let rows: Result<Vec<Value>> = cells_p
                .iter()
                .map(|(ci, u)| {
                    let shape_inner = pres.cells[*ci].shape.without_factor(0);
                    let big = shape_inner.insert_factor(0, ThetaObject::simplex(p));
                    let own = total
                        .eval(&big)
                        .position(&ElemKey::Cls(
                            *ci,
                            SiteMorphism(
                                std::iter::once(u.clone())
                                    .chain(
                                        shape_inner.0.iter().map(ThetaMorphism::identity),
                                    )
                                    .collect(),
                            ),
                        ))
                        .expect("slice cell element");
                    let mut comps: Vec<ThetaMorphism> =
                        shape_inner.0.iter().map(ThetaMorphism::identity).collect();
                    comps.insert(0, codegen.clone());
                    let degenerated = total.act(&SiteMorphism(comps), own);
                    Ok(to_slice_ref(p + 1, &shape_inner, degenerated))
                })
                .collect();
            per_i.push(Value::Array(rows?));
        }
        degeneracies.push(Value::Array(per_i));
    }
    Ok(json!({
        "inner_site": inner.factors(),
        "discrete0": true,
        "levels": levels,
        "faces": faces,
        "degeneracies": degeneracies,
    }))
}

/// Imports a Segal precategory object. Accepts either a total presentation
/// (an object with `cells`) or the levelwise schema (an object with
/// `levels`, `faces`, `degeneracies`); levelwise data is assembled into a
/// total presentation and validated against the given levels over a window.
pub fn spo_from_json(v: &Value, check_degree: usize) -> Result<SegalPreObject> {
    let obj = v.as_object().ok_or_else(|| Error::Malformed("expected an object".into()))?;
    if obj.contains_key("cells") {
        let total = presheaf_from_json(v)?;
        if total.site().factors().first() != Some(&1) {
            return Err(Error::Malformed("total diagram needs a simplicial first factor".into()));
        }
        let inner = total.site().without_factor(0)?;
        let probe = Window::up_to_degree(&inner, check_degree);
        return SegalPreObject::from_total(total, &probe);
    }
    let inner_factors: Vec<u32> = obj
        .get("inner_site")
        .and_then(|s| s.as_array())
        .ok_or_else(|| Error::Malformed("levelwise object needs inner_site".into()))?
        .iter()
        .map(|x| x.as_u64().map(|u| u as u32))
        .collect::<Option<Vec<u32>>>()
        .ok_or_else(|| Error::Malformed("bad inner_site".into()))?;
    let inner = Site::new(inner_factors)?;
    let dsite = inner.with_outer_simplicial();
    let level_values = obj
        .get("levels")
        .and_then(|l| l.as_array())
        .ok_or_else(|| Error::Malformed("levelwise object needs levels".into()))?;
    let level_presentations: Result<Vec<Presentation>> =
        level_values.iter().map(presentation_from_json).collect();
    let level_presentations = level_presentations?;
    let p_max = level_presentations.len().saturating_sub(1);
    // total cells: every level cell at its level
    let mut total_cells = Vec::new();
    let mut level_offsets = Vec::new();
    for (p, lp) in level_presentations.iter().enumerate() {
        level_offsets.push(total_cells.len());
        for c in &lp.cells {
            total_cells.push(Cell {
                shape: c.shape.insert_factor(0, Th::simplex(p)),
            });
        }
    }
    let mut relations = Vec::new();
    // level relations, padded with the identity outer component
    for (p, lp) in level_presentations.iter().enumerate() {
        for r in &lp.relations {
            let pad = |(cell, m): (usize, &SiteMorphism)| {
                let mut comps = m.0.clone();
                comps.insert(0, ThetaMorphism::identity(&Th::simplex(p)));
                (level_offsets[p] + cell, SiteMorphism(comps))
            };
            relations.push(Relation {
                left: pad((r.left.0, &r.left.1)),
                right: pad((r.right.0, &r.right.1)),
            });
        }
    }
    // face and degeneracy gluings
    let operator_relations = |tag: &str,
                              from_level_of_entry: &dyn Fn(usize) -> usize,
                              to_level_of_entry: &dyn Fn(usize) -> usize,
                              alpha_of: &dyn Fn(usize, usize) -> Result<ThetaMorphism>|
     -> Result<Vec<Relation>> {
        let mut out = Vec::new();
        let Some(groups) = obj.get(tag).and_then(|f| f.as_array()) else {
            return Ok(out);
        };
        for (gi, group) in groups.iter().enumerate() {
            let p_from = from_level_of_entry(gi);
            let p_to = to_level_of_entry(gi);
            let per_i = group
                .as_array()
                .ok_or_else(|| Error::Malformed(format!("{tag} entry must be an array")))?;
            for (i, rows) in per_i.iter().enumerate() {
                let alpha = alpha_of(gi, i)?;
                let rows = rows
                    .as_array()
                    .ok_or_else(|| Error::Malformed("operator rows must be arrays".into()))?;
                if rows.len() != level_presentations[p_from].cells.len() {
                    return Err(Error::ArityMismatch {
                        expected: level_presentations[p_from].cells.len(),
                        got: rows.len(),
                    });
                }
                for (ci, r) in rows.iter().enumerate() {
                    let (tcell, via) =
                        elem_ref_from_json(&level_presentations[p_to].cells, r)?;
                    let shape_inner = level_presentations[p_from].cells[ci].shape.clone();
                    if via.source() != shape_inner {
                        return Err(Error::Malformed(
                            "operator assignment at the wrong object".into(),
                        ));
                    }
                    let mut left_comps: Vec<ThetaMorphism> =
                        shape_inner.0.iter().map(ThetaMorphism::identity).collect();
                    left_comps.insert(0, alpha.clone());
                    let mut right_comps = via.0.clone();
                    right_comps.insert(0, ThetaMorphism::identity(&Th::simplex(p_to)));
                    out.push(Relation {
                        left: (level_offsets[p_from] + ci, SiteMorphism(left_comps)),
                        right: (level_offsets[p_to] + tcell, SiteMorphism(right_comps)),
                    });
                }
            }
        }
        Ok(out)
    };
    relations.extend(operator_relations(
        "faces",
        &|gi| gi + 1,
        &|gi| gi,
        &|gi, i| {
            let p = gi + 1;
            let delta: Vec<usize> = (0..p).map(|t| if t < i { t } else { t + 1 }).collect();
            ThetaMorphism::simplicial(p - 1, p, delta)
        },
    )?);
    relations.extend(operator_relations(
        "degeneracies",
        &|gi| gi,
        &|gi| gi + 1,
        &|gi, i| {
            let p = gi;
            let delta: Vec<usize> =
                (0..=p + 1).map(|t| if t <= i { t } else { t - 1 }).collect();
            ThetaMorphism::simplicial(p + 1, p, delta)
        },
    )?);
    let total = Presheaf::from_presentation(Presentation::new(
        dsite.clone(),
        total_cells,
        relations,
    )?);
    // validate the assembled total against the given levels over a window
    let probe = Window::up_to_degree(&inner, check_degree);
    for (p, lp) in level_presentations.iter().enumerate() {
        let level = Presheaf::from_presentation(lp.clone());
        for theta in probe.objects() {
            let big = theta.insert_factor(0, Th::simplex(p));
            if total.size_at(&big) != level.size_at(theta) {
                return Err(Error::Malformed(format!(
                    "assembled level {p} disagrees with the given one at {theta}; \
                     the operator data is not simplicially coherent or the \
                     truncation at level {p_max} is too low"
                )));
            }
        }
    }
    let probe = Window::up_to_degree(&inner, check_degree);
    SegalPreObject::from_total(total, &probe)
}

// ---------------------------------------------------------------------------
// Enriched categories with discrete homs
// ---------------------------------------------------------------------------

use crate::enriched::{CompRule, EnrichedCategory};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Imports an enriched category. Hom presheaves are arbitrary presentations;
/// composition is either `"forced"` (every composite target is a point) or
/// a table at the terminal object, which requires discrete homs.
pub fn enriched_from_json(v: &Value, check_degree: usize) -> Result<EnrichedCategory> {
    let obj = v.as_object().ok_or_else(|| Error::Malformed("expected an object".into()))?;
    let objects: Vec<String> = obj
        .get("objects")
        .and_then(|o| o.as_array())
        .ok_or_else(|| Error::Malformed("category needs objects".into()))?
        .iter()
        .map(|x| x.as_str().map(|s| s.to_string()))
        .collect::<Option<Vec<String>>>()
        .ok_or_else(|| Error::Malformed("object names must be strings".into()))?;
    let inner_factors: Vec<u32> = obj
        .get("inner_site")
        .and_then(|s| s.as_array())
        .ok_or_else(|| Error::Malformed("category needs inner_site".into()))?
        .iter()
        .map(|x| x.as_u64().map(|u| u as u32))
        .collect::<Option<Vec<u32>>>()
        .ok_or_else(|| Error::Malformed("bad inner_site".into()))?;
    let inner = Site::new(inner_factors)?;
    let n = objects.len();
    let homs_json = obj
        .get("homs")
        .and_then(|h| h.as_object())
        .ok_or_else(|| Error::Malformed("category needs homs".into()))?;
    let mut homs = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            let key = format!("{}|{}", objects[x], objects[y]);
            let h = homs_json
                .get(&key)
                .ok_or_else(|| Error::Malformed(format!("missing hom {key}")))?;
            let p = presheaf_from_json(h)?;
            if p.site() != &inner {
                return Err(Error::SiteMismatch);
            }
            homs.insert((x, y), p);
        }
    }
    let units_json = obj
        .get("units")
        .and_then(|u| u.as_object())
        .ok_or_else(|| Error::Malformed("category needs units".into()))?;
    let units: Result<Vec<usize>> = (0..n)
        .map(|x| {
            units_json
                .get(&objects[x])
                .and_then(|v| v.as_u64())
                .map(|u| u as usize)
                .ok_or_else(|| Error::Malformed(format!("missing unit for {}", objects[x])))
        })
        .collect();
    let units = units?;
    let comp = match obj.get("comp") {
        None | Some(Value::String(_)) => CompRule::Forced,
        Some(Value::Object(tables_json)) => {
            // tables at the terminal object need discrete homs
            let top = inner.terminal();
            let probe = Window::up_to_degree(&inner, check_degree);
            for ((x, y), h) in &homs {
                for theta in probe.objects() {
                    if h.size_at(theta) != h.size_at(&top) {
                        return Err(Error::Malformed(format!(
                            "hom ({x},{y}) is not discrete; tables cannot define composition"
                        )));
                    }
                }
            }
            let mut tables: BTreeMap<(usize, usize, usize), Vec<Vec<usize>>> = BTreeMap::new();
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        let key = format!("{}|{}|{}", objects[x], objects[y], objects[z]);
                        let t = tables_json
                            .get(&key)
                            .ok_or_else(|| Error::Malformed(format!("missing table {key}")))?;
                        let table: Vec<Vec<usize>> = serde_json::from_value(t.clone())?;
                        tables.insert((x, y, z), table);
                    }
                }
            }
            let homs_c = homs.clone();
            let top_c = top.clone();
            CompRule::Rule(Arc::new(move |x, y, z, theta, g, f| {
                // identify values at theta with the terminal ones
                let ident = |pair: (usize, usize), idx: usize| -> usize {
                    let h = &homs_c[&pair];
                    let bang = SiteMorphism::hom(theta, &top_c)[0].clone();
                    let fwd: Vec<usize> =
                        (0..h.size_at(&top_c)).map(|i| h.act(&bang, i)).collect();
                    fwd.iter().position(|&t| t == idx).expect("discrete hom")
                };
                let g0 = ident((y, z), g);
                let f0 = ident((x, y), f);
                let out0 = tables[&(x, y, z)][g0][f0];
                let h = &homs_c[&(x, z)];
                let bang = SiteMorphism::hom(theta, &top_c)[0].clone();
                h.act(&bang, out0)
            }))
        }
        Some(other) => {
            return Err(Error::Malformed(format!("bad comp field: {other}")));
        }
    };
    let cat = EnrichedCategory::new(inner.clone(), objects, homs, units, comp)?;
    cat.verify_laws(&Window::up_to_degree(&inner, check_degree))?;
    Ok(cat)
}

/// Exports a finite component category as object, hom, and composition
/// tables.
pub fn ho_category_to_json(ho: &crate::segal::HoCategory) -> Value {
    let n = ho.object_count();
    let mut homs = Map::new();
    let mut comp = Map::new();
    let mut units = Map::new();
    for x in 0..n {
        units.insert(ho.objects()[x].clone(), json!(ho.unit(x)));
        for y in 0..n {
            homs.insert(
                format!("{}|{}", ho.objects()[x], ho.objects()[y]),
                json!(ho.hom_size(x, y)),
            );
            for z in 0..n {
                let table: Vec<Vec<usize>> = (0..ho.hom_size(y, z))
                    .map(|g| (0..ho.hom_size(x, y)).map(|f| ho.compose(x, y, z, g, f)).collect())
                    .collect();
                comp.insert(
                    format!("{}|{}|{}", ho.objects()[x], ho.objects()[y], ho.objects()[z]),
                    json!(table),
                );
            }
        }
    }
    json!({
        "objects": ho.objects(),
        "homs": homs,
        "units": units,
        "comp": comp,
    })
}

/// Exports an enriched category whose composition can be tabulated at the
/// terminal object (discrete homs or forced composition).
pub fn enriched_to_json(c: &EnrichedCategory) -> Result<Value> {
    let n = c.objects().len();
    let top = c.inner_site().terminal();
    let mut homs = Map::new();
    let mut units = Map::new();
    let mut comp = Map::new();
    for x in 0..n {
        units.insert(c.objects()[x].clone(), json!(c.unit_at(x, &top)));
        for y in 0..n {
            let pres = c.hom(x, y).presentation().ok_or(Error::NotPresented)?;
            homs.insert(
                format!("{}|{}", c.objects()[x], c.objects()[y]),
                presentation_to_json(pres),
            );
            for z in 0..n {
                let table: Vec<Vec<usize>> = (0..c.hom(y, z).size_at(&top))
                    .map(|g| {
                        (0..c.hom(x, y).size_at(&top))
                            .map(|f| c.compose(x, y, z, &top, g, f))
                            .collect()
                    })
                    .collect();
                comp.insert(
                    format!(
                        "{}|{}|{}",
                        c.objects()[x],
                        c.objects()[y],
                        c.objects()[z]
                    ),
                    json!(table),
                );
            }
        }
    }
    Ok(json!({
        "objects": c.objects(),
        "inner_site": c.inner_site().factors(),
        "homs": homs,
        "units": units,
        "comp": comp,
    }))
}
