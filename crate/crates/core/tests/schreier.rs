use shiftforge::schreier::{FiniteGraph, GraphSpec, Node, Orbit};
use shiftforge::words::{gen, reduced_ball, w, GroupOracle, Letter, WeightMap};

fn letter(s: &str) -> Letter {
    w(s).letters()[0].clone()
}

#[test]
fn steps() {
    let z2 = GraphSpec::cayley(GroupOracle::free_abelian(2));
    assert_eq!(z2.step(&Node::Vector(vec![0, 0]), &letter("a")).unwrap(), Node::Vector(vec![1, 0]));
    let c3 = GraphSpec::cycle(3, "t");
    assert_eq!(c3.step(&Node::Id(gen("2")), &letter("t")).unwrap(), Node::Id(gen("0")));
    let f2 = GraphSpec::cayley(GroupOracle::free(2));
    assert_eq!(f2.step(&Node::Word(w("a b")), &letter("b^-1")).unwrap(), Node::Word(w("a")));
}

#[test]
fn balls() {
    let f2 = GraphSpec::cayley(GroupOracle::free(2));
    assert_eq!(f2.ball(&f2.base_node(), 1).nodes.len(), 5);
    assert_eq!(f2.ball(&f2.base_node(), 2).nodes.len(), 17);
    let z2 = GraphSpec::cayley(GroupOracle::free_abelian(2));
    assert_eq!(z2.ball(&z2.base_node(), 1).nodes.len(), 5);
    assert_eq!(z2.ball(&z2.base_node(), 2).nodes.len(), 13);
    let c3 = GraphSpec::cycle(3, "t");
    assert_eq!(c3.ball(&c3.base_node(), 2).nodes.len(), 3);
}

#[test]
fn orbits() {
    let c3 = GraphSpec::cycle(3, "t");
    let o = c3.s_orbit(&c3.base_node(), &gen("t"), 16).unwrap();
    assert_eq!(o.cycle_length(), Some(3));
    assert_eq!(o.to_string(), "FiniteCycle(3)");
    let z2 = GraphSpec::cayley(GroupOracle::free_abelian(2));
    assert!(matches!(z2.s_orbit(&z2.base_node(), &gen("a"), 16).unwrap(), Orbit::LineSegment { .. }));
    let loops = FiniteGraph::new(
        vec![gen("u"), gen("v")],
        vec![
            (gen("u"), gen("s"), gen("u")),
            (gen("v"), gen("s"), gen("v")),
            (gen("u"), gen("t"), gen("v")),
            (gen("v"), gen("t"), gen("u")),
        ],
    )
    .unwrap();
    let g = GraphSpec::FiniteExplicit(loops);
    assert_eq!(g.s_orbit(&g.base_node(), &gen("s"), 16).unwrap().cycle_length(), Some(1));
    assert_eq!(g.s_orbit(&g.base_node(), &gen("t"), 16).unwrap().cycle_length(), Some(2));
}

#[test]
fn cayley_labels_are_normal_forms() {
    for oracle in [GroupOracle::free(2), GroupOracle::raag(shiftforge::words::SimpleGraph::path(&["a", "b"]))] {
        let g = GraphSpec::cayley(oracle.clone());
        for u in reduced_ball(&[gen("a"), gen("b")], 4) {
            let v = g.walk(&g.base_node(), &u).unwrap();
            assert_eq!(g.walk(&g.base_node(), &oracle.normalize(&u).unwrap()).unwrap(), v);
            assert_eq!(g.parse_node(&v.to_string()).unwrap(), v, "{u}");
        }
    }
}

#[test]
fn kernel_coset_graph_is_a_line() {
    let g = GraphSpec::kernel_cosets(GroupOracle::free(2), WeightMap::from_pairs([("a", 1), ("b", 0)])).unwrap();
    assert_eq!(g.walk(&g.base_node(), &w("a b a b^-1 a")).unwrap(), Node::Int(3));
    assert_eq!(g.s_orbit(&g.base_node(), &gen("b"), 16).unwrap().cycle_length(), Some(1));
    assert!(!g.is_finite());
}
