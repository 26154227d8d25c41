//! Graphviz output. Nodes and edges are emitted in sorted order so the text is
//! byte-stable for a fixed input.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::groups::FiniteQuiver;
use crate::presentations::QuiverPresentation;
use crate::quiver::{Point, QuiverWindow};

pub enum DotObject<'a> {
    Window(&'a QuiverWindow),
    Quotient(&'a FiniteQuiver),
    Presentation(&'a QuiverPresentation),
    Configuration(&'a Configuration),
}

pub fn serialize_dot(obj: DotObject<'_>) -> Result<String> {
    match obj {
        DotObject::Window(w) => Ok(window_dot(w)),
        DotObject::Quotient(q) => Ok(quotient_dot(q)),
        DotObject::Presentation(p) => presentation_dot(p),
        DotObject::Configuration(c) => {
            Err(Error::UnsupportedObject(format!("configuration of {} is not a quiver", c.tree())))
        }
    }
}

fn node_line(out: &mut String, id: &str, label: &str, projective: bool) {
    let shape = if projective { "box" } else { "ellipse" };
    writeln!(out, "  \"{id}\" [label=\"{label}\", shape={shape}];").unwrap();
}

fn window_dot(w: &QuiverWindow) -> String {
    let edges: BTreeSet<(String, String)> = w.arrows().into_iter().map(|(a, b)| (a.dot_name(), b.dot_name())).collect();
    let mut names: Vec<(String, Point)> = w.points.iter().map(|p| (p.dot_name(), *p)).collect();
    names.sort();
    let mut out = String::from("digraph window {\n");
    for (name, p) in &names {
        node_line(&mut out, name, &p.to_string(), p.is_projective());
    }
    for (a, b) in &edges {
        writeln!(out, "  \"{a}\" -> \"{b}\";").unwrap();
    }
    out.push_str("}\n");
    out
}

fn quotient_dot(q: &FiniteQuiver) -> String {
    let names: Vec<String> = q.points.iter().map(|p| p.dot_name()).collect();
    let mut order: Vec<usize> = (0..names.len()).collect();
    order.sort_by(|&a, &b| names[a].cmp(&names[b]));
    let mut out = String::from("digraph quotient {\n");
    for &k in &order {
        node_line(&mut out, &names[k], &q.points[k].to_string(), q.projective[k]);
    }
    let mut edges: Vec<(&str, &str)> = q.arrows.iter().map(|&(a, b)| (names[a].as_str(), names[b].as_str())).collect();
    edges.sort_unstable();
    for (a, b) in edges {
        writeln!(out, "  \"{a}\" -> \"{b}\";").unwrap();
    }
    let mut taus: Vec<(&str, &str)> =
        q.tau.iter().enumerate().filter_map(|(k, t)| t.map(|j| (names[k].as_str(), names[j].as_str()))).collect();
    taus.sort_unstable();
    for (a, b) in taus {
        writeln!(out, "  \"{a}\" -> \"{b}\" [style=dotted, arrowhead=none];").unwrap();
    }
    out.push_str("}\n");
    out
}

fn shifted_id(p: &str, k: i64) -> String {
    if k == 0 {
        p.to_string()
    } else {
        format!("{p}@{k}")
    }
}

fn presentation_dot(p: &QuiverPresentation) -> Result<String> {
    p.validate()?;
    let mut nodes: BTreeSet<String> = p.points.iter().cloned().collect();
    let mut edges = Vec::new();
    for a in &p.arrows {
        let to = shifted_id(&a.to, a.shift.unwrap_or(0));
        nodes.insert(to.clone());
        edges.push((a.from.clone(), to, a.label.clone()));
    }
    edges.sort();
    let mut rels = Vec::new();
    for r in &p.relations {
        for (_, path) in r.terms() {
            if path.is_empty() {
                continue;
            }
            let (from, to, k) = p.endpoints(&path)?;
            rels.push((from, shifted_id(&to, k), r.kind()));
        }
    }
    rels.sort();
    rels.dedup();
    let mut out = String::from("digraph presentation {\n");
    for n in &nodes {
        // Vertices of a presentation are the indecomposable projectives.
        node_line(&mut out, n, n, true);
    }
    for (a, b, l) in &edges {
        writeln!(out, "  \"{a}\" -> \"{b}\" [label=\"{l}\"];").unwrap();
    }
    for (a, b, k) in &rels {
        writeln!(out, "  \"{a}\" -> \"{b}\" [style=dashed, constraint=false, label=\"{k}\"];").unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::DynkinTree;
    use crate::quiver::build_window;

    #[test]
    fn a2_window() {
        let t: DynkinTree = "A2".parse().unwrap();
        let w = build_window(&t, None, 0, 1).unwrap();
        let d = serialize_dot(DotObject::Window(&w)).unwrap();
        assert_eq!(d.matches("shape=").count(), 4);
        assert_eq!(d.matches(" -> ").count(), 3);
        assert_eq!(d, serialize_dot(DotObject::Window(&w)).unwrap());
    }

    #[test]
    fn configuration_is_rejected() {
        let t: DynkinTree = "A2".parse().unwrap();
        let c = Configuration::new(&t, [(0, 1), (1, 1)]).unwrap();
        assert!(matches!(serialize_dot(DotObject::Configuration(&c)), Err(Error::UnsupportedObject(_))));
    }
}
