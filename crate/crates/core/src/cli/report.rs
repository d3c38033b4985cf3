//! Rendering of reports: indented text, JSON and DOT.

use serde_json::Value;

fn is_inline(items: &[Value]) -> bool {
    items.iter().all(|v| match v {
        Value::Number(_) | Value::Bool(_) => true,
        Value::String(s) => {
            let t = s.strip_prefix('-').unwrap_or(s);
            !t.is_empty() && t.chars().all(|c| c.is_ascii_digit() || c == '/')
        }
        _ => false,
    })
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "null".into(),
        other => other.to_string(),
    }
}

fn inline(items: &[Value]) -> String {
    format!("[{}]", items.iter().map(scalar).collect::<Vec<_>>().join(", "))
}

fn render_into(out: &mut Vec<String>, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match val {
                    Value::Object(m) if !m.is_empty() => {
                        out.push(format!("{pad}{k}:"));
                        render_into(out, val, indent + 2);
                    }
                    Value::Array(items) if !items.is_empty() && !is_inline(items) => {
                        out.push(format!("{pad}{k}:"));
                        render_into(out, val, indent + 2);
                    }
                    Value::Array(items) => out.push(format!("{pad}{k}: {}", inline(items))),
                    Value::Object(_) => out.push(format!("{pad}{k}: {{}}")),
                    _ => out.push(format!("{pad}{k}: {}", scalar(val))),
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match item {
                    Value::Object(_) => {
                        let mut sub = Vec::new();
                        render_into(&mut sub, item, indent + 2);
                        for (i, line) in sub.into_iter().enumerate() {
                            if i == 0 {
                                out.push(format!("{pad}- {}", line.trim_start()));
                            } else {
                                out.push(line);
                            }
                        }
                    }
                    Value::Array(inner) if is_inline(inner) => out.push(format!("{pad}- {}", inline(inner))),
                    Value::Array(_) => {
                        out.push(format!("{pad}-"));
                        render_into(out, item, indent + 2);
                    }
                    _ => out.push(format!("{pad}- {}", scalar(item))),
                }
            }
        }
        _ => out.push(format!("{pad}{}", scalar(v))),
    }
}

/// YAML-like indented text.
pub fn render_text(v: &Value) -> String {
    let mut out = Vec::new();
    render_into(&mut out, v, 0);
    out.join("\n") + "\n"
}

pub fn render_json(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("report serializes") + "\n"
}

/// A small directed graph for DOT export.
#[derive(Debug, Default)]
pub struct Graph {
    pub nodes: Vec<String>,
    /// (from, to, solid, label)
    pub edges: Vec<(usize, usize, bool, String)>,
    /// (cluster label, node indices)
    pub clusters: Vec<(String, Vec<usize>)>,
}

impl Graph {
    pub fn node(&mut self, label: &str) -> usize {
        match self.nodes.iter().position(|n| n == label) {
            Some(i) => i,
            None => {
                self.nodes.push(label.to_string());
                self.nodes.len() - 1
            }
        }
    }

    /// Solid edges drop length, dashed edges preserve it.
    pub fn render(&self, name: &str) -> String {
        let mut s = format!("digraph {name} {{\n  node [shape=box];\n");
        let clustered: Vec<usize> = self.clusters.iter().flat_map(|c| c.1.iter().copied()).collect();
        for (ci, (label, members)) in self.clusters.iter().enumerate() {
            s += &format!("  subgraph cluster_{ci} {{\n    label=\"{label}\";\n");
            for &i in members {
                s += &format!("    n{i} [label=\"{}\"];\n", self.nodes[i]);
            }
            s += "  }\n";
        }
        for (i, n) in self.nodes.iter().enumerate() {
            if !clustered.contains(&i) {
                s += &format!("  n{i} [label=\"{n}\"];\n");
            }
        }
        for (a, b, solid, label) in &self.edges {
            let style = if *solid { "solid" } else { "dashed" };
            s += &format!("  n{a} -> n{b} [style={style}, label=\"{label}\"];\n");
        }
        s + "}\n"
    }
}
