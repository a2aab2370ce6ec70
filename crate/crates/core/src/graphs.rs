//! Hypergraph views of a network and the directed graph of an SVAR model.
//!
//! The signal graph has one vertex per signal block and one edge (net) per
//! component; the system graph is its dual. Edge lists are multisets, so two
//! components constraining the same blocks give two distinct labelled edges.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::network::Network;
use crate::polyalg::BinaryMatrix;
use crate::svar::SvarModel;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HyperEdge {
    pub label: String,
    /// Sorted vertex indices.
    pub members: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    pub vertices: Vec<String>,
    pub edges: Vec<HyperEdge>,
}

/// `G(S)`: a vertex per column of `s`, an edge per row holding the columns
/// with a one.
pub fn hypergraph_of(
    s: &BinaryMatrix,
    vertex_labels: Vec<String>,
    edge_labels: Vec<String>,
) -> Result<Hypergraph> {
    if vertex_labels.len() != s.cols() {
        return Err(Error::DimensionMismatch {
            op: "hypergraph_of (vertex labels)",
            expected: s.cols(),
            found: vertex_labels.len(),
        });
    }
    if edge_labels.len() != s.rows() {
        return Err(Error::DimensionMismatch {
            op: "hypergraph_of (edge labels)",
            expected: s.rows(),
            found: edge_labels.len(),
        });
    }
    let edges = edge_labels
        .into_iter()
        .enumerate()
        .map(|(i, label)| HyperEdge {
            label,
            members: (0..s.cols()).filter(|&j| s.get(i, j)).collect(),
        })
        .collect();
    Ok(Hypergraph {
        vertices: vertex_labels,
        edges,
    })
}

/// Signal graph `G(S)` of a network: blocks as vertices, components as edges.
pub fn signal_graph(net: &Network) -> Hypergraph {
    let vertices = net
        .space()
        .blocks()
        .iter()
        .map(|b| b.name.clone())
        .collect();
    let edges = net.components().iter().map(|c| c.name.clone()).collect();
    hypergraph_of(net.incidence().matrix(), vertices, edges)
        .expect("labels match the incidence shape")
}

/// System graph `G(S^T)`: components as vertices, signals as edges.
pub fn system_graph(net: &Network) -> Hypergraph {
    signal_graph(net).dual()
}

impl Hypergraph {
    /// Edge-by-vertex incidence matrix.
    pub fn incidence(&self) -> BinaryMatrix {
        let mut s = BinaryMatrix::zeros(self.edges.len(), self.vertices.len());
        for (i, e) in self.edges.iter().enumerate() {
            for &j in &e.members {
                s.set(i, j, true);
            }
        }
        s
    }

    /// Dual hypergraph: `G(S^T)` with vertex and edge labels swapped.
    pub fn dual(&self) -> Hypergraph {
        let labels: Vec<String> = self.edges.iter().map(|e| e.label.clone()).collect();
        hypergraph_of(&self.incidence().transpose(), labels, self.vertices.clone())
            .expect("transpose swaps the shape")
    }

    /// GraphViz rendering. Nets with two members become plain undirected
    /// edges; every other nonempty net becomes a square auxiliary node tied
    /// to its members. Empty nets have no geometry and are listed as
    /// comments only.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph {} {{", quote(name));
        out.push_str("  node [shape=circle];\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "  v{i} [label={}];", quote(v));
        }
        for (k, e) in self.edges.iter().enumerate() {
            match e.members.as_slice() {
                [] => {
                    let _ = writeln!(out, "  // empty net {}", quote(&e.label));
                }
                [a, b] => {
                    let _ = writeln!(out, "  v{a} -- v{b} [label={}];", quote(&e.label));
                }
                members => {
                    let _ = writeln!(out, "  e{k} [shape=square, label={}];", quote(&e.label));
                    for m in members {
                        let _ = writeln!(out, "  e{k} -- v{m};");
                    }
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Directed graph without self-loops.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiGraph {
    pub vertices: Vec<String>,
    pub edges: BTreeSet<(usize, usize)>,
}

impl DiGraph {
    /// `G_d(A)`: edge `i -> j` iff `A[j][i] = 1` and `i != j`.
    pub fn from_adjacency(a: &BinaryMatrix, labels: Vec<String>) -> Result<DiGraph> {
        if a.rows() != a.cols() {
            return Err(Error::NotSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        if labels.len() != a.rows() {
            return Err(Error::DimensionMismatch {
                op: "DiGraph::from_adjacency",
                expected: a.rows(),
                found: labels.len(),
            });
        }
        let mut edges = BTreeSet::new();
        for j in 0..a.rows() {
            for i in 0..a.cols() {
                if i != j && a.get(j, i) {
                    edges.insert((i, j));
                }
            }
        }
        Ok(DiGraph {
            vertices: labels,
            edges,
        })
    }

    /// Edges as `(from_label, to_label)` pairs, in index order.
    pub fn labelled_edges(&self) -> Vec<(&str, &str)> {
        self.edges
            .iter()
            .map(|&(i, j)| (self.vertices[i].as_str(), self.vertices[j].as_str()))
            .collect()
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph {} {{", quote(name));
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "  v{i} [label={}];", quote(v));
        }
        for (i, j) in &self.edges {
            let _ = writeln!(out, "  v{i} -> v{j};");
        }
        out.push_str("}\n");
        out
    }
}

/// Directed graph of an SVAR model from `A_svar = M([[X, -Q], [0, 0]])`.
/// Vertices are the outputs followed by the inputs; inputs never receive
/// edges. Only validated models can be constructed, so no check is needed.
pub fn svar_digraph(model: &SvarModel) -> DiGraph {
    let mut labels: Vec<String> = model.output_names().to_vec();
    labels.extend(model.input_names().iter().cloned());
    DiGraph::from_adjacency(&model.adjacency(), labels).expect("adjacency is square")
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}
