//! JSON file formats and the documents the command line prints.
//!
//! Inputs may carry a `"format": 1` field; outputs always do.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::fpt::{FailedStage, KernelResult, SegmentSet};
use crate::geometry::{Arrangement, Axis, Bounds, GeometryError, Mode, Segment, SegmentId};
use crate::reduction::{CnfEmbedding, Compiled};
use crate::subdivision::{Node, SubdivTree};

pub const FORMAT: u32 = 1;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format {0}; this build reads format {FORMAT}")]
    Format(u32),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("field 'rect': expected [x0, y0, x1, y1] with x0 < x1 and y0 < y1")]
    Rect,
}

fn check_format(f: Option<u32>) -> Result<(), IoError> {
    match f {
        None | Some(FORMAT) => Ok(()),
        Some(other) => Err(IoError::Format(other)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentRecord {
    pub id: u32,
    pub x1: i64,
    pub y1: i64,
    pub x2: i64,
    pub y2: i64,
}

impl From<&Segment> for SegmentRecord {
    fn from(s: &Segment) -> Self {
        let (x1, y1, x2, y2) = s.endpoints();
        SegmentRecord { id: s.id.0, x1, y1, x2, y2 }
    }
}

#[derive(Debug, Deserialize)]
struct InstanceFile {
    format: Option<u32>,
    segments: Vec<SegmentRecord>,
}

/// Parses an instance; each segment must be axis-aligned with positive length.
pub fn parse_instance(text: &str) -> Result<Vec<Segment>, IoError> {
    let file: InstanceFile = serde_json::from_str(text)?;
    check_format(file.format)?;
    file.segments
        .iter()
        .map(|r| Segment::from_endpoints(SegmentId(r.id), r.x1, r.y1, r.x2, r.y2).map_err(IoError::from))
        .collect()
}

pub fn instance_json(segments: &[Segment]) -> Value {
    let records: Vec<SegmentRecord> = segments.iter().map(SegmentRecord::from).collect();
    json!({ "format": FORMAT, "segments": records })
}

pub fn cells_json(arr: &Arrangement) -> Value {
    let cells: Vec<Value> = arr
        .cells
        .iter()
        .map(|c| json!({ "id": c.id, "bounded": c.bounded, "rectangular": c.rectangular, "defining": c.defining }))
        .collect();
    json!({ "format": FORMAT, "cells": cells })
}

pub fn cover_json(mode: Mode, cover: &SegmentSet) -> Value {
    json!({ "format": FORMAT, "mode": mode, "size": cover.len(), "segments": cover })
}

pub fn no_cover_json(mode: Mode, k: usize, stage: FailedStage) -> Value {
    json!({ "format": FORMAT, "mode": mode, "k": k, "outcome": "no-cover", "stage": stage.as_str() })
}

pub fn kernel_json(kr: &KernelResult) -> Value {
    json!({
        "format": FORMAT,
        "k": kr.instance.k,
        "family": kr.instance.family,
        "trace": kr.trace,
        "outcome": kr.outcome,
    })
}

pub fn compiled_json(c: &Compiled) -> Value {
    let mut doc = instance_json(&c.segments);
    doc["budget"] = json!(c.budget);
    doc["layout"] = serde_json::to_value(&c.layout).expect("layout serializes");
    doc
}

#[derive(Debug, Deserialize)]
struct CnfFile {
    format: Option<u32>,
    #[serde(flatten)]
    cnf: CnfEmbedding,
}

pub fn parse_cnf(text: &str) -> Result<CnfEmbedding, IoError> {
    let file: CnfFile = serde_json::from_str(text)?;
    check_format(file.format)?;
    Ok(file.cnf)
}

pub fn cnf_json(phi: &CnfEmbedding) -> Value {
    let mut doc = serde_json::to_value(phi).expect("formula serializes");
    doc["format"] = json!(FORMAT);
    doc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
enum AxisTag {
    #[serde(rename = "h")]
    H,
    #[serde(rename = "v")]
    V,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum NodeRecord {
    Leaf(LeafTag),
    Split { axis: AxisTag, coord: i64, low: Box<NodeRecord>, high: Box<NodeRecord> },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum LeafTag {
    Leaf,
}

#[derive(Debug, Serialize, Deserialize)]
struct TreeFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    format: Option<u32>,
    rect: [i64; 4],
    root: NodeRecord,
}

fn to_node(r: NodeRecord) -> Node {
    match r {
        NodeRecord::Leaf(_) => Node::Leaf,
        NodeRecord::Split { axis, coord, low, high } => {
            let axis = match axis {
                AxisTag::H => Axis::Horizontal,
                AxisTag::V => Axis::Vertical,
            };
            Node::split(axis, coord, to_node(*low), to_node(*high))
        }
    }
}

fn from_node(n: &Node) -> NodeRecord {
    match n {
        Node::Leaf => NodeRecord::Leaf(LeafTag::Leaf),
        Node::Split { axis, coord, low, high } => NodeRecord::Split {
            axis: if *axis == Axis::Horizontal { AxisTag::H } else { AxisTag::V },
            coord: *coord,
            low: Box::new(from_node(low)),
            high: Box::new(from_node(high)),
        },
    }
}

/// Parses a tree file; split placement is checked by `validate_tree`.
pub fn parse_tree(text: &str) -> Result<SubdivTree, IoError> {
    let file: TreeFile = serde_json::from_str(text)?;
    check_format(file.format)?;
    let [x0, y0, x1, y1] = file.rect;
    if x0 >= x1 || y0 >= y1 {
        return Err(IoError::Rect);
    }
    Ok(SubdivTree { rect: Bounds { x0, y0, x1, y1 }, root: to_node(file.root) })
}

pub fn tree_json(t: &SubdivTree) -> Value {
    let r = t.rect;
    let file = TreeFile { format: Some(FORMAT), rect: [r.x0, r.y0, r.x1, r.y1], root: from_node(&t.root) };
    serde_json::to_value(file).expect("tree serializes")
}

/// Compact, newline-terminated rendering used for everything printed.
pub fn to_line(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instance_round_trip() {
        let text = r#"{"segments":[{"id":0,"x1":0,"y1":0,"x2":4,"y2":0},{"id":1,"x1":2,"y1":3,"x2":2,"y2":-1}]}"#;
        let segs = parse_instance(text).unwrap();
        assert_eq!(segs[1], Segment::vertical(1, 2, -1, 3));
        assert_eq!(parse_instance(&instance_json(&segs).to_string()).unwrap(), segs);
    }

    #[test]
    fn instance_errors_name_the_culprit() {
        let diag = parse_instance(r#"{"segments":[{"id":7,"x1":0,"y1":0,"x2":1,"y2":1}]}"#).unwrap_err();
        assert!(diag.to_string().contains('7'), "{diag}");
        let diag = parse_instance(r#"{"segments":[{"id":0,"x1":0,"y1":0,"x2":1}]}"#).unwrap_err();
        assert!(diag.to_string().contains("y2"), "{diag}");
        assert!(matches!(parse_instance(r#"{"format":2,"segments":[]}"#), Err(IoError::Format(2))));
    }

    #[test]
    fn tree_round_trip() {
        let text = r#"{"rect":[0,0,4,4],"root":{"axis":"v","coord":2,"low":"leaf","high":{"axis":"h","coord":1,"low":"leaf","high":"leaf"}}}"#;
        let t = parse_tree(text).unwrap();
        assert_eq!(t.root.split_count(), 2);
        assert_eq!(parse_tree(&tree_json(&t).to_string()).unwrap(), t);
        assert!(matches!(parse_tree(r#"{"rect":[0,0,0,4],"root":"leaf"}"#), Err(IoError::Rect)));
    }

    #[test]
    fn cnf_accepts_format_field() {
        let phi = parse_cnf(r#"{"format":1,"variables":3,"clauses":[{"literals":[1,-2,3],"side":"below"}]}"#).unwrap();
        assert_eq!(phi.n, 3);
        assert_eq!(parse_cnf(&cnf_json(&phi).to_string()).unwrap(), phi);
    }
}
