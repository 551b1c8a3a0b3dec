//! JSON file formats for relations, operators, selection functions, frames
//! and structures. Events are written as world-name lists in universe order.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::conditional::{ConditionalOperator, SelectionFunction};
use crate::epistemic::{KnowledgeOperator, KripkeRelation, Provenance};
use crate::error::{Error, Result};
use crate::preferential::PreferentialFrame;
use crate::sets::bits::{self, Mask};
use crate::sets::Universe;
use crate::syntax::{Frame, Structure};

#[derive(Debug, Serialize, Deserialize)]
struct RelationFile {
    worlds: Vec<String>,
    edges: Vec<(String, String)>,
}

#[derive(Debug, Serialize, Deserialize)]
struct OperatorRow {
    #[serde(rename = "in")]
    input: Vec<String>,
    out: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
struct OperatorFile {
    worlds: Vec<String>,
    table: Vec<OperatorRow>,
}

#[derive(Debug, Serialize, Deserialize)]
struct SelectionRow {
    w: String,
    h: Vec<String>,
    f: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
struct SelectionFile {
    worlds: Vec<String>,
    rows: Vec<SelectionRow>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ConditionalRow {
    h: Vec<String>,
    e: Vec<String>,
    out: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ConditionalFile {
    worlds: Vec<String>,
    rows: Vec<ConditionalRow>,
}

#[derive(Debug, Serialize, Deserialize)]
struct OrderEntry {
    w: String,
    domain: Vec<String>,
    leq: Vec<(String, String)>,
}

#[derive(Debug, Serialize, Deserialize)]
struct FrameFile {
    worlds: Vec<String>,
    orders: Vec<OrderEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct PiEntry {
    atom: String,
    worlds: Vec<String>,
}

fn parse<T: for<'de> Deserialize<'de>>(value: &Value, what: &str) -> Result<T> {
    T::deserialize(value).map_err(|e| Error::Format(format!("{what} file: {e}")))
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("file records serialize")
}

/// Parses JSON text, mapping syntax errors to `Error::Format`.
pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Format(format!("invalid JSON: {e}")))
}

/// Fills a table indexed by keys, rejecting duplicates and missing keys.
fn fill(size: usize, entries: impl IntoIterator<Item = Result<(usize, Mask)>>, what: &str) -> Result<Vec<Mask>> {
    let mut table: Vec<Option<Mask>> = vec![None; size];
    for entry in entries {
        let (key, out) = entry?;
        if table[key].replace(out).is_some() {
            return Err(Error::Format(format!("{what}: duplicate row")));
        }
    }
    let found = table.iter().filter(|r| r.is_some()).count();
    if found != size {
        return Err(Error::Format(format!("{what}: expected {size} rows, found {found}")));
    }
    Ok(table.into_iter().map(Option::unwrap).collect())
}

pub fn relation_from_json(value: &Value) -> Result<KripkeRelation> {
    let f: RelationFile = parse(value, "relation")?;
    KripkeRelation::from_edges(&Universe::new(&f.worlds)?, &f.edges)
}

pub fn relation_to_json(rel: &KripkeRelation) -> Value {
    to_value(&RelationFile {
        worlds: rel.universe().names().to_vec(),
        edges: rel.edges(),
    })
}

pub fn operator_from_json(value: &Value) -> Result<KnowledgeOperator> {
    let f: OperatorFile = parse(value, "operator")?;
    let u = Universe::new(&f.worlds)?;
    u.ensure_at_most(crate::epistemic::KNOWLEDGE_TABLE_CAP, "knowledge operator table")?;
    let rows = f.table.iter().map(|r| Ok((u.mask_of(&r.input)? as usize, u.mask_of(&r.out)?)));
    let table = fill(u.event_count(), rows, "operator table")?;
    KnowledgeOperator::from_table(&u, table, Provenance::User)
}

pub fn operator_to_json(k: &KnowledgeOperator) -> Value {
    let u = k.universe();
    let table = bits::canonical_order(u.len())
        .into_iter()
        .map(|e| OperatorRow {
            input: u.names_of(e),
            out: u.names_of(k.apply_mask(e)),
        })
        .collect();
    to_value(&OperatorFile {
        worlds: u.names().to_vec(),
        table,
    })
}

pub fn selection_from_json(value: &Value) -> Result<SelectionFunction> {
    let f: SelectionFile = parse(value, "selection")?;
    let u = Universe::new(&f.worlds)?;
    u.ensure_at_most(crate::conditional::CONDITIONAL_TABLE_CAP, "selection function table")?;
    let n = u.len();
    let rows = f
        .rows
        .iter()
        .map(|r| Ok(((u.index_of(&r.w)? << n) | u.mask_of(&r.h)? as usize, u.mask_of(&r.f)?)));
    let table = fill(n << n, rows, "selection rows")?;
    SelectionFunction::from_table(&u, table)
}

pub fn selection_to_json(f: &SelectionFunction) -> Value {
    let u = f.universe();
    let mut rows = Vec::new();
    for w in 0..u.len() {
        for h in bits::canonical_order(u.len()) {
            rows.push(SelectionRow {
                w: u.name(w).to_string(),
                h: u.names_of(h),
                f: u.names_of(f.select_mask(w, h)),
            });
        }
    }
    to_value(&SelectionFile {
        worlds: u.names().to_vec(),
        rows,
    })
}

pub fn conditional_from_json(value: &Value) -> Result<ConditionalOperator> {
    let f: ConditionalFile = parse(value, "conditional")?;
    let u = Universe::new(&f.worlds)?;
    u.ensure_at_most(crate::conditional::CONDITIONAL_TABLE_CAP, "conditional operator table")?;
    let n = u.len();
    let rows = f
        .rows
        .iter()
        .map(|r| Ok((((u.mask_of(&r.h)? as usize) << n) | u.mask_of(&r.e)? as usize, u.mask_of(&r.out)?)));
    let table = fill(1 << (2 * n), rows, "conditional rows")?;
    ConditionalOperator::from_table(&u, table, Provenance::User)
}

pub fn conditional_to_json(op: &ConditionalOperator) -> Value {
    let u = op.universe();
    let mut rows = Vec::new();
    for h in bits::canonical_order(u.len()) {
        for e in bits::canonical_order(u.len()) {
            rows.push(ConditionalRow {
                h: u.names_of(h),
                e: u.names_of(e),
                out: u.names_of(op.apply_mask(h, e)),
            });
        }
    }
    to_value(&ConditionalFile {
        worlds: u.names().to_vec(),
        rows,
    })
}

pub fn frame_from_json(value: &Value) -> Result<PreferentialFrame> {
    let f: FrameFile = parse(value, "frame")?;
    let u = Universe::new(&f.worlds)?;
    let orders: Vec<_> = f.orders.into_iter().map(|o| (o.w, o.domain, o.leq)).collect();
    PreferentialFrame::from_pairs(&u, &orders)
}

pub fn frame_to_json(frame: &PreferentialFrame) -> Value {
    let u = frame.universe();
    let orders = (0..u.len())
        .map(|w| {
            let o = frame.order(w);
            let mut leq = Vec::new();
            for x in bits::members(o.domain()) {
                for y in bits::members(o.leq_row(x)) {
                    leq.push((u.name(x).to_string(), u.name(y).to_string()));
                }
            }
            OrderEntry {
                w: u.name(w).to_string(),
                domain: u.names_of(o.domain()),
                leq,
            }
        })
        .collect();
    to_value(&FrameFile {
        worlds: u.names().to_vec(),
        orders,
    })
}

/// Reads a structure: a relation, selection or frame file with a `pi` list.
/// The frame kind is taken from the key present (`edges`, `rows`, `orders`).
pub fn structure_from_json(value: &Value) -> Result<Structure> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Format("structure file: expected a JSON object".into()))?;
    let kinds: Vec<&str> = ["edges", "rows", "orders"].into_iter().filter(|k| obj.contains_key(*k)).collect();
    let frame = match kinds.as_slice() {
        ["edges"] => Frame::Kripke(relation_from_json(value)?),
        ["rows"] => Frame::Counterfactual(selection_from_json(value)?),
        ["orders"] => Frame::Preferential(frame_from_json(value)?),
        _ => {
            return Err(Error::Format(
                "structure file: expected exactly one of `edges`, `rows`, `orders`".into(),
            ))
        }
    };
    let pi: Vec<PiEntry> = match obj.get("pi") {
        Some(v) => parse(v, "structure pi")?,
        None => Vec::new(),
    };
    let u = frame.universe().clone();
    let mut map = BTreeMap::new();
    for entry in pi {
        if !crate::syntax::is_atom_name(&entry.atom) {
            return Err(Error::Format(format!("structure pi: `{}` is not an atom name", entry.atom)));
        }
        if map.insert(entry.atom.clone(), u.mask_of(&entry.worlds)?).is_some() {
            return Err(Error::Format(format!("structure pi: atom `{}` listed twice", entry.atom)));
        }
    }
    Structure::new(frame, map)
}

pub fn structure_to_json(m: &Structure) -> Value {
    let mut v = match m.frame() {
        Frame::Kripke(r) => relation_to_json(r),
        Frame::Counterfactual(f) => selection_to_json(f),
        Frame::Preferential(p) => frame_to_json(p),
    };
    let u = m.universe();
    let pi: Vec<PiEntry> = m
        .interpretation()
        .iter()
        .map(|(a, &mask)| PiEntry {
            atom: a.clone(),
            worlds: u.names_of(mask),
        })
        .collect();
    v["pi"] = to_value(&pi);
    v
}

#[cfg(test)]
mod tests {
    use serde_json::json;

    use super::*;

    #[test]
    fn relation_round_trip() {
        let v = json!({"worlds": ["a", "b"], "edges": [["a", "b"], ["b", "b"]]});
        let rel = relation_from_json(&v).unwrap();
        assert!(rel.relates(0, 1) && !rel.relates(0, 0));
        assert_eq!(relation_from_json(&relation_to_json(&rel)).unwrap(), rel);
        assert!(relation_from_json(&json!({"worlds": ["a"], "edges": [["a", "z"]]})).is_err());
        assert!(relation_from_json(&json!({"worlds": ["a", "a"], "edges": []})).is_err());
    }

    #[test]
    fn operator_rows_complete() {
        let id = json!({"worlds": ["a", "b"], "table": [
            {"in": [], "out": []}, {"in": ["a"], "out": ["a"]},
            {"in": ["b"], "out": ["b"]}, {"in": ["a", "b"], "out": ["a", "b"]}]});
        let k = operator_from_json(&id).unwrap();
        assert_eq!(k.table(), &[0, 1, 2, 3]);
        assert_eq!(operator_from_json(&operator_to_json(&k)).unwrap().table(), k.table());
        let missing = json!({"worlds": ["a", "b"], "table": [{"in": [], "out": []}]});
        assert!(matches!(operator_from_json(&missing), Err(Error::Format(_))));
        let dup = json!({"worlds": ["a"], "table": [{"in": [], "out": []}, {"in": [], "out": []}]});
        assert!(matches!(operator_from_json(&dup), Err(Error::Format(_))));
    }

    #[test]
    fn selection_and_conditional_round_trip() {
        let u = Universe::new(["a", "b"]).unwrap();
        let f = SelectionFunction::from_fn(&u, |w, h| if h & (1 << w) != 0 { 1 << w } else { h }).unwrap();
        let v = selection_to_json(&f);
        assert_eq!(v["rows"].as_array().unwrap().len(), 8);
        assert_eq!(selection_from_json(&v).unwrap(), f);
        let op = ConditionalOperator::derive(&f);
        let back = conditional_from_json(&conditional_to_json(&op)).unwrap();
        assert_eq!(back.table(), op.table());
    }

    #[test]
    fn frame_and_structure_round_trip() {
        let v = json!({"worlds": ["a", "b"], "orders": [
            {"w": "a", "domain": ["a", "b"], "leq": [["a", "a"], ["a", "b"], ["b", "b"]]},
            {"w": "b", "domain": ["b"], "leq": [["b", "b"]]}],
            "pi": [{"atom": "p", "worlds": ["a"]}]});
        let frame = frame_from_json(&v).unwrap();
        assert_eq!(frame_from_json(&frame_to_json(&frame)).unwrap(), frame);
        let m = structure_from_json(&v).unwrap();
        assert_eq!(m.interpretation()["p"], 0b01);
        assert_eq!(structure_from_json(&structure_to_json(&m)).unwrap(), m);
        let bad_order = json!({"worlds": ["a"], "orders": [{"w": "a", "domain": ["a"], "leq": []}]});
        assert!(matches!(frame_from_json(&bad_order), Err(Error::InvalidFrame(_))));
        let bad_atom = json!({"worlds": ["a"], "edges": [], "pi": [{"atom": "P", "worlds": []}]});
        assert!(structure_from_json(&bad_atom).is_err());
        assert!(structure_from_json(&json!({"worlds": ["a"]})).is_err());
    }
}
