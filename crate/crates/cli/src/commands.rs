//! The subcommands, as pure functions from file contents to output text.

use std::fmt::Write as _;

use behavnet::graphs::{signal_graph, svar_digraph, system_graph};
use behavnet::sim::{complete_initial_window, first_violation, residual, simulate};
use behavnet::{DiGraph, Hypergraph, Network, RegularityMode, SvarModel, Trajectory};
use serde_json::json;

use crate::error::{schema, CliError, Result};
use crate::model::{network_to_file, permutation_record, svar_to_file, to_json, Model};
use crate::trajectory::{read_csv, write_csv};

/// Text to print plus the process exit status (0 or 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub status: u8,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, status: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    Signal,
    System,
    Svar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Dot,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// SVAR model to network.
    To,
    /// Network to SVAR model.
    From,
}

fn matrix_rows(m: &behavnet::BinaryMatrix) -> Vec<Vec<u8>> {
    m.to_rows()
}

pub fn analyze(model: &Model, as_json: bool) -> Result<Outcome> {
    let net = model.to_network();
    let a = net.analyze();
    if as_json {
        let comps: Vec<_> = net
            .components()
            .iter()
            .enumerate()
            .map(|(i, c)| json!({"name": c.name, "p": a.component_p[i], "n": a.component_n[i]}))
            .collect();
        let signals: Vec<_> = net
            .space()
            .blocks()
            .iter()
            .map(|b| b.name.clone())
            .collect();
        let report = json!({
            "signals": signals,
            "components": comps,
            "p": a.p,
            "n": a.n,
            "incidence": matrix_rows(a.incidence.matrix()),
            "regular": a.regular,
            "regular_feedback": a.regular_feedback,
        });
        return Ok(Outcome::ok(pretty(&report)));
    }
    let mut out = String::new();
    let width = net
        .components()
        .iter()
        .map(|c| c.name.chars().count())
        .max()
        .unwrap_or(0);
    writeln!(out, "components:").unwrap();
    for (i, c) in net.components().iter().enumerate() {
        writeln!(
            out,
            "  {:<width$}  p={}  n={}",
            c.name, a.component_p[i], a.component_n[i]
        )
        .unwrap();
    }
    writeln!(out, "interconnection: p={}  n={}", a.p, a.n).unwrap();
    let names: Vec<_> = net
        .space()
        .blocks()
        .iter()
        .map(|b| b.name.as_str())
        .collect();
    writeln!(out, "incidence ({}):", names.join(", ")).unwrap();
    for line in a.incidence.to_string().lines() {
        writeln!(out, "  {line}").unwrap();
    }
    writeln!(out, "regular: {}", a.regular).unwrap();
    writeln!(out, "regular_feedback: {}", a.regular_feedback).unwrap();
    Ok(Outcome::ok(out))
}

fn hypergraph_json(kind: &str, g: &Hypergraph) -> serde_json::Value {
    let edges: Vec<_> = g
        .edges
        .iter()
        .map(|e| {
            let members: Vec<_> = e.members.iter().map(|&v| g.vertices[v].clone()).collect();
            json!({"label": e.label, "members": members})
        })
        .collect();
    json!({"kind": kind, "vertices": g.vertices, "edges": edges})
}

fn digraph_json(g: &DiGraph) -> serde_json::Value {
    let edges: Vec<_> = g
        .labelled_edges()
        .into_iter()
        .map(|(a, b)| json!({"from": a, "to": b}))
        .collect();
    json!({"kind": "svar", "vertices": g.vertices, "edges": edges})
}

pub fn graph(model: &Model, kind: GraphKind, format: GraphFormat) -> Result<Outcome> {
    let text = match kind {
        GraphKind::Signal | GraphKind::System => {
            let net = model.to_network();
            let (label, g) = if kind == GraphKind::Signal {
                ("signal", signal_graph(&net))
            } else {
                ("system", system_graph(&net))
            };
            match format {
                GraphFormat::Dot => g.to_dot(label),
                GraphFormat::Json => pretty(&hypergraph_json(label, &g)),
            }
        }
        GraphKind::Svar => {
            let Model::Svar(m) = model else {
                return Err(schema(
                    "graph kind `svar` needs a file with an `svar` payload",
                ));
            };
            let g = svar_digraph(m);
            match format {
                GraphFormat::Dot => g.to_dot("svar"),
                GraphFormat::Json => pretty(&digraph_json(&g)),
            }
        }
    };
    Ok(Outcome::ok(text))
}

pub fn svar(model: &Model, direction: Direction) -> Result<Outcome> {
    match (direction, model) {
        (Direction::To, Model::Svar(m)) => {
            let net = m.to_network();
            let identity = behavnet::ColumnPermutation {
                order: (0..net.space().q()).collect(),
            };
            let record = permutation_record(&identity, net.space());
            Ok(Outcome::ok(to_json(&network_to_file(&net, Some(record)))))
        }
        (Direction::From, Model::Network(net)) => {
            let (m, perm) = SvarModel::from_network(net)?;
            let record = permutation_record(&perm, net.space());
            Ok(Outcome::ok(to_json(&svar_to_file(&m, Some(record)))))
        }
        (Direction::To, Model::Network(_)) => {
            Err(schema("`--direction to` needs an `svar` payload"))
        }
        (Direction::From, Model::Svar(_)) => {
            Err(schema("`--direction from` needs a `network` payload"))
        }
    }
}

/// Search report plus the merged network as a model file.
pub fn merge(model: &Model, mode: RegularityMode, as_json: bool) -> Result<(Outcome, String)> {
    let net = model.to_network();
    let found = net.regularizing_partition(mode);
    let merged = net.merge(&found.partition)?;
    let a = merged.analyze();
    let search = if found.exhaustive {
        "exhaustive"
    } else {
        "greedy"
    };
    let output = if as_json {
        let groups: Vec<Vec<usize>> = found
            .partition
            .groups()
            .iter()
            .map(|g| g.iter().map(|i| i + 1).collect())
            .collect();
        let comps: Vec<_> = merged
            .components()
            .iter()
            .enumerate()
            .map(|(i, c)| json!({"name": c.name, "p": a.component_p[i], "n": a.component_n[i]}))
            .collect();
        pretty(&json!({
            "partition": groups,
            "k": found.partition.len(),
            "search": search,
            "components": comps,
            "p": a.p,
            "n": a.n,
            "regular": a.regular,
            "regular_feedback": a.regular_feedback,
        }))
    } else {
        let mut out = String::new();
        writeln!(out, "partition: {}", found.partition).unwrap();
        writeln!(out, "k: {}", found.partition.len()).unwrap();
        writeln!(out, "search: {search}").unwrap();
        writeln!(out, "merged components:").unwrap();
        for (i, c) in merged.components().iter().enumerate() {
            writeln!(
                out,
                "  {}  p={}  n={}",
                c.name, a.component_p[i], a.component_n[i]
            )
            .unwrap();
        }
        writeln!(out, "regular: {}", a.regular).unwrap();
        writeln!(out, "regular_feedback: {}", a.regular_feedback).unwrap();
        out
    };
    Ok((
        Outcome::ok(output),
        to_json(&network_to_file(&merged, None)),
    ))
}

/// Simulates the interconnection under its preferred input-output
/// partition. Without `init_csv` a consistent initial window is computed
/// (zero wherever the equations leave a choice).
pub fn simulate_cmd(
    model: &Model,
    input_csv: Option<&str>,
    init_csv: Option<&str>,
    horizon: usize,
) -> Result<Outcome> {
    let net = model.to_network();
    let kernel = net.interconnect();
    let part = kernel.io_partition()?;
    if !part.proper {
        return Err(CliError::Hypothesis(behavnet::Error::NotProper));
    }
    let names = kernel.space().column_names();
    let input_names: Vec<String> = part.input_cols.iter().map(|&c| names[c].clone()).collect();
    let output_names: Vec<String> = part.output_cols.iter().map(|&c| names[c].clone()).collect();
    let u = match input_csv {
        Some(text) => read_csv(text)?.select(&input_names, "input")?,
        None if input_names.is_empty() => Vec::new(),
        None => {
            return Err(schema(format!(
                "inputs {input_names:?} need samples (--input)"
            )))
        }
    };
    let init = match init_csv {
        Some(text) => read_csv(text)?.select(&output_names, "initial window")?,
        None => complete_initial_window(&part, &u, None)?,
    };
    let traj = simulate(&part, &u, &init, horizon)?;
    Ok(Outcome::ok(write_csv(&names, traj.values())?))
}

/// Membership of a trajectory in the interconnection's behavior.
pub fn check(model: &Model, trajectory_csv: &str) -> Result<Outcome> {
    let net: Network = model.to_network();
    let kernel = net.interconnect();
    let names = kernel.space().column_names();
    let samples = read_csv(trajectory_csv)?.select(&names, "trajectory")?;
    if samples.is_empty() {
        return Err(CliError::Hypothesis(behavnet::Error::HorizonTooShort {
            horizon: 0,
            required: kernel.r().degree().finite().unwrap_or(0) + 1,
        }));
    }
    let traj = Trajectory::new(kernel.space().clone(), samples)?;
    let res = residual(&kernel, &traj)?;
    Ok(match first_violation(&res) {
        None => Outcome::ok(format!("member ({} samples checked)\n", res.rows())),
        Some((t, row)) => Outcome {
            output: format!(
                "not a member: first violation at t={t}, row {} (residual {})\n",
                row + 1,
                res.get(t, row)
            ),
            status: 1,
        },
    })
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}
