use std::collections::BTreeSet;

use shiftforge::schreier::{GraphSpec, Node};
use shiftforge::surfaces::{
    classify, complement_invariant, distinguished_conditions, family_membership, Classification, Comparison,
    Coverage, EndDescriptor, Flag, Genus, PiSpec, SchreierSurfaceSpec, SurfaceType,
};
use shiftforge::words::{gen, GroupOracle};

fn torus(graph: GraphSpec) -> SchreierSurfaceSpec {
    SchreierSurfaceSpec::new(graph, PiSpec::handle())
}

fn catalog() -> Vec<(SchreierSurfaceSpec, &'static str)> {
    vec![
        (torus(GraphSpec::cayley(GroupOracle::free(2))), "(∞, 0, Cantor, Cantor)"),
        (torus(GraphSpec::cayley(GroupOracle::free_abelian(1))), "(∞, 0, Finite(2), Finite(2))"),
        (torus(GraphSpec::cycle(3, "t")), "(4, 0, empty, empty)"),
    ]
}

#[test]
fn classification_catalog() {
    for (spec, expected) in catalog() {
        assert_eq!(classify(&spec).to_string(), expected);
    }
    let ladder = classify(&catalog()[1].0);
    let Classification::Exact(s) = ladder else { panic!("ladder is catalogued") };
    assert_eq!(s.genus, Genus::Infinite);
    assert_eq!(s.ends, EndDescriptor::Finite(2));
    assert_eq!(s.nonplanar_ends, EndDescriptor::Finite(2));
}

#[test]
fn sphere_omegas_change_nothing() {
    for (spec, expected) in catalog() {
        let base = spec.graph.base_node();
        let decorated = spec.with_omega(base, SurfaceType::sphere()).unwrap();
        assert_eq!(classify(&decorated).to_string(), expected);
        assert!(!decorated.has_non_sphere_omega());
    }
}

#[test]
fn ladder_complements() {
    let ladder = torus(GraphSpec::line("h"));
    let omit = |m: i64| (0..m).map(Node::Int).collect::<BTreeSet<_>>();
    let inv = |m| complement_invariant(&ladder, &omit(m), &Coverage::AllVertices).unwrap();
    assert_eq!(inv(2).genus, Genus::Finite(2));
    assert_eq!(inv(0).genus, Genus::Finite(0));
    for m in 0..=5 {
        for n in 0..=5 {
            assert_eq!(inv(m).compare(&inv(n)) == Comparison::Different, m != n, "{m} vs {n}");
        }
        if m > 0 {
            assert!(inv(m).genus > inv(m - 1).genus);
        }
    }
}

#[test]
fn planar_end_counts_grow_with_omissions() {
    // condition (2): Π with finitely many planar ends and no genus
    let pants = PiSpec::new(Genus::Finite(0), EndDescriptor::empty(), EndDescriptor::Finite(2)).unwrap();
    let s = SchreierSurfaceSpec::new(GraphSpec::line("h"), pants);
    let omit = |m: i64| (0..m).map(Node::Int).collect::<BTreeSet<_>>();
    let ends = |m| complement_invariant(&s, &omit(m), &Coverage::AllVertices).unwrap().planar_ends;
    for m in 1..=4 {
        assert_eq!(ends(m - 1).compare(&ends(m)), Comparison::Different);
        assert!(ends(m).finite_count() > ends(m - 1).finite_count());
    }
}

#[test]
fn distinguished() {
    assert_eq!(distinguished_conditions(&PiSpec::handle()), BTreeSet::from([1, 2, 3]));
    let flute = PiSpec::new(Genus::Finite(1), EndDescriptor::empty(), EndDescriptor::OmegaPlusOne).unwrap();
    assert_eq!(distinguished_conditions(&flute), BTreeSet::from([1]));
    let monster = PiSpec::new(Genus::Infinite, EndDescriptor::Finite(1), EndDescriptor::Finite(1)).unwrap();
    assert_eq!(distinguished_conditions(&monster), BTreeSet::from([3]));
}

#[test]
fn families() {
    let ladder = torus(GraphSpec::cayley(GroupOracle::free_abelian(1)));
    let flags = family_membership(&PiSpec::handle(), &ladder, &Coverage::Orbit(gen("a")));
    assert_eq!((flags.c_pi, flags.b, flags.b_inf), (Flag::Yes, Flag::Yes, Flag::No));

    let monster = PiSpec::new(Genus::Infinite, EndDescriptor::Finite(1), EndDescriptor::Finite(1)).unwrap();
    let s = SchreierSurfaceSpec::new(GraphSpec::cayley(GroupOracle::free_abelian(1)), monster.clone());
    let flags = family_membership(&monster, &s, &Coverage::AllVertices);
    assert_eq!((flags.b, flags.b_inf), (Flag::Yes, Flag::Yes));

    let finite = torus(GraphSpec::cycle(3, "t"));
    assert_eq!(family_membership(&PiSpec::handle(), &finite, &Coverage::AllVertices).b, Flag::No);
}

#[test]
fn pi_must_have_one_boundary_and_not_be_a_disk() {
    assert!(PiSpec::new(Genus::Finite(0), EndDescriptor::empty(), EndDescriptor::empty()).is_err());
    assert!(PiSpec::from_surface(SurfaceType::compact(1, 2)).is_err());
    assert!(PiSpec::from_surface(SurfaceType::compact(1, 1)).is_ok());
}
