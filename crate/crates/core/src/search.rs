//! Breadth-first search of the surgery graph for a projective model.
//!
//! Nodes are fans on the start fan's rays, identified by canonical key; edges
//! are flips, flops and anti-flips. The search is a semi-decision procedure:
//! exhausting the depth bound proves nothing about the start fan.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::FanError;
use crate::fan::{CanonicalKey, Fan};
use crate::projectivity;
use crate::surgery::{self, SurgeryKind, SurgeryStep};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub max_depth: usize,
    /// Only follow flops.
    pub flops_only: bool,
}

impl SearchOptions {
    pub fn new(max_depth: usize) -> Self {
        Self { max_depth, flops_only: false }
    }

    pub fn flops_only(mut self, yes: bool) -> Self {
        self.flops_only = yes;
        self
    }
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self::new(4)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub found: bool,
    pub steps: Vec<SurgeryStep>,
    pub final_fan: Fan,
    pub final_smooth: bool,
    pub visited: usize,
    pub depth_reached: usize,
}

impl SearchResult {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "found": self.found,
            "steps": self.steps.iter().map(SurgeryStep::to_json).collect::<Vec<_>>(),
            "final_fan": crate::io::fan_to_json(&self.final_fan),
            "final_smooth": self.final_smooth,
            "visited": self.visited,
            "depth_reached": self.depth_reached,
        })
    }
}

/// Surgeries available from `fan`, in wall order.
fn neighbours(fan: &Fan, options: &SearchOptions) -> Result<Vec<(Fan, SurgeryStep)>, FanError> {
    let mut out = Vec::new();
    for (wall, class) in surgery::classify_walls(fan)? {
        let allowed = match class.kind {
            SurgeryKind::NotModifiable => false,
            SurgeryKind::Flop => true,
            SurgeryKind::Flip | SurgeryKind::AntiFlip => !options.flops_only,
        };
        if allowed {
            out.push(surgery::perform_surgery(fan, &wall)?);
        }
    }
    Ok(out)
}

struct Node {
    fan: Fan,
    parent: Option<(usize, SurgeryStep)>,
}

fn path_to(nodes: &[Node], mut i: usize) -> Vec<SurgeryStep> {
    let mut steps = Vec::new();
    while let Some((p, step)) = &nodes[i].parent {
        steps.push(step.clone());
        i = *p;
    }
    steps.reverse();
    steps
}

/// Shortest surgery sequence from `fan` to a projective fan, within
/// `options.max_depth` steps.
pub fn projectivize(fan: &Fan, options: &SearchOptions) -> Result<SearchResult, FanError> {
    if !fan.is_complete() {
        return Err(FanError::NotComplete);
    }
    let finish = |nodes: &[Node], i: usize, found: bool, depth_reached: usize| SearchResult {
        found,
        steps: path_to(nodes, i),
        final_fan: nodes[i].fan.clone(),
        final_smooth: nodes[i].fan.is_smooth(),
        visited: nodes.len(),
        depth_reached,
    };
    let mut nodes = vec![Node { fan: fan.clone(), parent: None }];
    if projectivity::is_projective(fan)?.projective {
        return Ok(finish(&nodes, 0, true, 0));
    }
    let mut seen: HashMap<CanonicalKey, usize> = HashMap::from([(fan.canonical_key(), 0)]);
    let mut frontier = vec![0];
    let mut depth = 0;
    while depth < options.max_depth && !frontier.is_empty() {
        depth += 1;
        let mut next = Vec::new();
        for &i in &frontier {
            for (child, step) in neighbours(&nodes[i].fan, options)? {
                if seen.contains_key(&step.after_key) {
                    continue;
                }
                seen.insert(step.after_key.clone(), nodes.len());
                let projective = projectivity::is_projective(&child)?.projective;
                nodes.push(Node { fan: child, parent: Some((i, step)) });
                let id = nodes.len() - 1;
                if projective {
                    return Ok(finish(&nodes, id, true, depth));
                }
                next.push(id);
            }
        }
        frontier = next;
    }
    Ok(finish(&nodes, 0, false, depth))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphNode {
    pub key: CanonicalKey,
    pub depth: usize,
    pub smooth: bool,
    pub projective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphEdge {
    pub from: usize,
    pub to: usize,
    pub step: SurgeryStep,
}

/// The part of the surgery graph within `max_depth` steps of the start fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurgeryGraph {
    /// In discovery order; node 0 is the start fan.
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<GraphEdge>,
}

impl SurgeryGraph {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "nodes": self.nodes.iter().enumerate().map(|(i, n)| serde_json::json!({
                "id": i,
                "digest": n.key.digest(),
                "depth": n.depth,
                "smooth": n.smooth,
                "projective": n.projective,
            })).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| serde_json::json!({
                "from": e.from,
                "to": e.to,
                "step": e.step.to_json(),
            })).collect::<Vec<_>>(),
        })
    }

    /// Graphviz digraph; node labels are key digests with `S` (smooth) and
    /// `P` (projective) flags.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph surgery {\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let flags: String = [(n.smooth, 'S'), (n.projective, 'P')]
                .iter()
                .filter(|(on, _)| *on)
                .map(|(_, c)| *c)
                .collect();
            let label = if flags.is_empty() { n.key.digest() } else { format!("{} {flags}", n.key.digest()) };
            let _ = writeln!(out, "  n{i} [label=\"{label}\"];");
        }
        for e in &self.edges {
            let [a, b] = e.step.wall;
            let _ = writeln!(
                out,
                "  n{} -> n{} [label=\"{} <{},{}>\"];",
                e.from,
                e.to,
                e.step.classification.kind,
                Fan::label(a),
                Fan::label(b)
            );
        }
        out.push_str("}\n");
        out
    }
}

pub fn surgery_graph(fan: &Fan, options: &SearchOptions) -> Result<SurgeryGraph, FanError> {
    if !fan.is_complete() {
        return Err(FanError::NotComplete);
    }
    let node = |f: &Fan, depth: usize| -> Result<GraphNode, FanError> {
        Ok(GraphNode {
            key: f.canonical_key(),
            depth,
            smooth: f.is_smooth(),
            projective: projectivity::is_projective(f)?.projective,
        })
    };
    let mut fans = vec![fan.clone()];
    let mut graph = SurgeryGraph { nodes: vec![node(fan, 0)?], edges: Vec::new() };
    let mut seen: HashMap<CanonicalKey, usize> = HashMap::from([(fan.canonical_key(), 0)]);
    let mut i = 0;
    while i < fans.len() {
        let depth = graph.nodes[i].depth;
        if depth < options.max_depth {
            for (child, step) in neighbours(&fans[i], options)? {
                let to = match seen.get(&step.after_key) {
                    Some(&j) => j,
                    None => {
                        let j = fans.len();
                        seen.insert(step.after_key.clone(), j);
                        graph.nodes.push(node(&child, depth + 1)?);
                        fans.push(child);
                        j
                    }
                };
                graph.edges.push(GraphEdge { from: i, to, step });
            }
        }
        i += 1;
    }
    Ok(graph)
}
