//! Graphviz renderings of graph balls, multipush domains and support overlays.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::actions::PushSystem;
use crate::schreier::{Ball, GraphSpec, Node};
use crate::surfaces::{Cell, SupportRegion};
use crate::words::Gen;

const PALETTE: [&str; 6] = ["blue", "red", "darkgreen", "purple", "orange", "brown"];
const SUPPORT: &str = "gold";

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn color(letters: &[Gen], s: &Gen) -> &'static str {
    letters.iter().position(|l| l == s).map_or("black", |i| PALETTE[i % PALETTE.len()])
}

fn ball_of(graph: &GraphSpec, radius: usize) -> Ball {
    graph.ball(&graph.base_node(), radius)
}

struct Style<'a> {
    letters: Vec<Gen>,
    domain: Option<&'a PushSystem>,
    region: Option<&'a SupportRegion>,
}

fn render(graph: &GraphSpec, radius: usize, name: &str, style: Style<'_>) -> String {
    let ball = ball_of(graph, radius);
    let mut nodes: BTreeSet<Node> = ball.nodes.iter().cloned().collect();
    let support: BTreeSet<Node> = style.region.map(SupportRegion::vertex_nodes).unwrap_or_default();
    nodes.extend(support.iter().cloned());
    let mut out = String::new();
    let _ = writeln!(out, "graph {} {{", quote(name));
    let _ = writeln!(out, "  // apply-order: rightmost-first");
    let _ = writeln!(out, "  node [shape=circle, fontsize=10];");
    for v in &nodes {
        let mut attrs = vec![format!("label={}", quote(&v.to_string()))];
        if let Some(sys) = style.domain {
            let omitted = sys.omissions().iter().any(|(_, u)| u == v);
            attrs.push(if omitted { "style=dashed, color=gray".into() } else { "style=filled, fillcolor=lightblue".into() });
        }
        if support.contains(v) {
            attrs.push(format!("style=filled, fillcolor={SUPPORT}, xlabel={}", quote(&format!("V{v} front"))));
        }
        let _ = writeln!(out, "  {} [{}];", quote(&v.to_string()), attrs.join(", "));
    }
    for e in &ball.edges {
        let mut attrs = vec![format!("label={}", quote(&e.label)), format!("color={}", color(&style.letters, &e.label))];
        if let Some(r) = style.region {
            if r.cells.contains(&Cell::EdgeFront(e.from.clone(), e.label.clone())) {
                attrs.push("penwidth=3".into());
                attrs.push(format!("xlabel={}", quote("support")));
            }
        }
        let _ = writeln!(out, "  {} -- {} [{}];", quote(&e.from.to_string()), quote(&e.to.to_string()), attrs.join(", "));
    }
    out.push_str("}\n");
    out
}

/// The radius ball around the base node, edges colored by letter.
pub fn render_graph(graph: &GraphSpec, radius: usize) -> String {
    render(graph, radius, "graph", Style { letters: graph.letters(), domain: None, region: None })
}

/// Push domains: edges in the letter's color, domain copies filled, omitted copies dashed.
pub fn render_domains(sys: &PushSystem, radius: usize) -> String {
    render(sys.graph(), radius, "domains", Style { letters: sys.letters().to_vec(), domain: Some(sys), region: None })
}

/// The graph with a support overlay; an empty region renders the plain graph.
pub fn render_support(sys: &PushSystem, region: &SupportRegion, radius: usize) -> String {
    if region.is_empty() {
        return render_graph(sys.graph(), radius);
    }
    render(sys.graph(), radius, "support", Style { letters: sys.letters().to_vec(), domain: None, region: Some(region) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::support_region;
    use crate::constructions::{cross_commutator, cross_system};
    use crate::words::{Word, GroupOracle};

    #[test]
    fn cross_support_overlay() {
        let sys = cross_system();
        let r = support_region(&sys, &cross_commutator(), 16).unwrap();
        let dot = render_support(&sys, &r, 2);
        assert_eq!(dot.matches(&format!("fillcolor={SUPPORT}")).count(), 3);
        assert!(dot.contains("penwidth=3"));
        let plain = render_support(&sys, &support_region(&sys, &Word::empty(), 16).unwrap(), 2);
        assert!(!plain.contains(SUPPORT));
    }

    #[test]
    fn blue_a_lines() {
        let g = GraphSpec::cayley(GroupOracle::free(2));
        let dot = render_graph(&g, 2);
        assert!(dot.contains("label=\"a\", color=blue"));
        assert!(dot.starts_with("graph"));
    }
}
