use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;

use shiftforge::actions::{
    bs_window_action, commute_by_disjoint_support, intrinsic_type_witness, lift_displacement, multipush_is_trivial,
    region_image, support_region, Commutation, DiagonalSystem, IntrinsicWitness, PushSystem, Shift, Verdict,
    WindowVerdict, Witness, WreathSystem,
};
use shiftforge::constructions::{cross_commutator, cross_system, StarFamily};
use shiftforge::schreier::{GraphSpec, Node};
use shiftforge::surfaces::{Cell, EndDescriptor, Genus, PiSpec, RegionTag, SchreierSurfaceSpec, SurfaceType};
use shiftforge::words::{gen, w, GroupOracle, WeightMap, Word};

fn multipush(graph: GraphSpec) -> PushSystem {
    let letters = graph.letters();
    PushSystem::multipush(SchreierSurfaceSpec::new(graph, PiSpec::handle()), letters).unwrap()
}

#[test]
fn multipush_verdicts() {
    let z2 = multipush(GraphSpec::cayley(GroupOracle::free_abelian(2)));
    let e = multipush_is_trivial(&z2, &w("[a,b]"), 16).unwrap();
    assert!(matches!(e.verdict, Verdict::Nontrivial(Witness::FreeReduction(_))));
    assert_eq!(e.to_string().split_whitespace().next(), Some("NONTRIVIAL"));
    assert!(e.to_string().ends_with("[window 16]"));

    let c3 = SchreierSurfaceSpec::new(GraphSpec::cycle(3, "t"), PiSpec::handle());
    let decorated = c3.with_omega(Node::Id(gen("2")), SurfaceType::compact(1, 0)).unwrap();
    let sys = PushSystem::multipush(decorated, vec![gen("t")]).unwrap();
    assert!(multipush_is_trivial(&sys, &w("t^3"), 16).unwrap().verdict.is_nontrivial());

    for s in [&z2, &sys] {
        let letter = &s.letters()[0];
        let ww = Word::power_of(letter, 1) * Word::power_of(letter, -1);
        assert_eq!(multipush_is_trivial(s, &ww, 16).unwrap().verdict, Verdict::Trivial);
    }
    assert!(multipush_is_trivial(&z2, &w("q"), 16).is_err());
}

#[test]
fn displacement() {
    let ab = [gen("a"), gen("b")];
    for u in ["a", "a b^-1", "[a,b]", "a^3 b a^-1"] {
        let u = w(u);
        assert_eq!(lift_displacement(&ab, &u, 0).unwrap(), u.free_reduce().len());
    }
    let c = w("[a,b]");
    let d3 = lift_displacement(&ab, &c, 3).unwrap();
    assert!(d3 >= 4 && d3 > lift_displacement(&ab, &c, 0).unwrap());
    let a = [gen("a")];
    assert_eq!(lift_displacement(&a, &w("a"), 0).unwrap(), 1);
    for d in 0..6 {
        let v = lift_displacement(&a, &w("a"), d).unwrap();
        assert!((1..=d + 1).contains(&v));
    }
}

#[test]
fn cross_supports() {
    let sys = cross_system();
    let c = cross_commutator();
    let r = support_region(&sys, &c, 16).unwrap();
    assert_eq!(r.tag, RegionTag::Exact);
    assert_eq!(r.vertex_nodes(), BTreeSet::from([Node::Pair(-1, 0), Node::Pair(0, 0), Node::Pair(0, -1)]));
    assert!(r.cells.contains(&Cell::EdgeFront(Node::Pair(-1, 0), gen("h_a"))));
    assert!(r.cells.contains(&Cell::EdgeFront(Node::Pair(0, -1), gen("h_b"))));
    assert!(support_region(&sys, &Word::empty(), 16).unwrap().is_empty());

    let w1 = w("h_a h_b h_a^2");
    let conj = support_region(&sys, &c.conjugate_by(&w1), 16).unwrap();
    assert_eq!(conj, region_image(&sys, &r, &w1).unwrap());
    assert!(conj.vertex_nodes().iter().all(|v| matches!(v, Node::Pair(x, 0) if *x > 0)));
}

#[test]
fn commutation() {
    let sys = cross_system();
    let c = cross_commutator();
    let w1 = w("h_a^4 h_b h_a^2");
    assert_eq!(commute_by_disjoint_support(&sys, &c, &c.conjugate_by(&w1), 16).unwrap(), Commutation::Commute);
    assert!(matches!(commute_by_disjoint_support(&sys, &w("h_a"), &w("h_b"), 16).unwrap(), Commutation::Unknown(_)));
    assert_eq!(commute_by_disjoint_support(&sys, &w("h_a h_b"), &Word::empty(), 16).unwrap(), Commutation::Commute);
}

#[test]
fn star_diagonal() {
    let h = StarFamily::smallest(1).unwrap().handle().unwrap();
    let d: &DiagonalSystem = &h.diagonal;
    for r in h.claimed.relators().iter().filter(|r| r.generators().all(|g| g.ends_with('1'))) {
        assert!(d.normalize(r).unwrap().is_trivial(), "{r}");
    }
    assert!(d.normalize(&w("[b1,b2]")).unwrap().is_trivial());
    let n = d.normalize(&w("[a1,a2]")).unwrap();
    assert_eq!(n.x_word, w("[x1,x2]"));
    assert!(!n.is_trivial());
}

#[test]
fn wreath_examples() {
    let lamp = GroupOracle::cyclic(2).with_generators(vec![gen("a")]).unwrap();
    let sys = WreathSystem::new(lamp, Shift::Z { letter: gen("t") }).unwrap();
    let e = sys.normalize(&w("a t a t^-1")).unwrap();
    assert_eq!(e.support, BTreeMap::from([(Node::Int(0), w("a")), (Node::Int(1), w("a"))]));
    assert!(e.shift.is_empty());
    assert_eq!(sys.format(&sys.normalize(&w("t^5")).unwrap()), "(∅, 5)");
    assert!(sys.is_trivial(&w("[a, t a t^-1]"), 16).unwrap().verdict.is_trivial());

    let z2 = GroupOracle::free_abelian(2).with_generators(vec![gen("p"), gen("q")]).unwrap();
    let zz = WreathSystem::new(z2, Shift::Z { letter: gen("t") }).unwrap();
    assert!(zz.is_trivial(&w("[p, q]"), 16).unwrap().verdict.is_trivial());
    assert!(zz.is_trivial(&w("[p, t p t^-1]"), 16).unwrap().verdict.is_trivial());
    assert!(zz.is_trivial(&w("[p, t]"), 16).unwrap().verdict.is_nontrivial());
}

#[test]
fn bs_window_examples() {
    let r = bs_window_action(2, &w("t a t^-1 a^-2"), 3).unwrap();
    assert_eq!(r.verdict, WindowVerdict::Trivial);
    assert!(r.state.copies.iter().filter(|c| !c.truncated).all(|c| c.position == c.start && c.scaled_translation == 0));
    let r = bs_window_action(2, &w("a"), 3).unwrap();
    assert_eq!(r.state.level_shift(0), Some(BigInt::from(1)));
    let r = bs_window_action(2, &w("t^-1 a t"), 3).unwrap();
    assert_eq!(r.state.level_shift(1), Some(BigInt::from(1)));
    // level 0 moves by half a slot, which is not a curve map
    assert_eq!(r.state.level_shift(0), None);
}

#[test]
fn intrinsic_witnesses() {
    let planar = PiSpec::new(Genus::Finite(0), EndDescriptor::empty(), EndDescriptor::Finite(2)).unwrap();
    let shift = PushSystem::multipush(SchreierSurfaceSpec::new(GraphSpec::line("h"), planar), vec![gen("h")]).unwrap();
    assert!(matches!(intrinsic_type_witness(&shift, &w("h"), 16).unwrap(), Some(IntrinsicWitness::EndPermutation { .. })));
    assert_eq!(intrinsic_type_witness(&shift, &Word::empty(), 16).unwrap(), None);
    let handles = multipush(GraphSpec::line("h"));
    for k in [-2i64, 1, 5] {
        assert_eq!(
            intrinsic_type_witness(&handles, &Word::power_of("h", k), 16).unwrap(),
            Some(IntrinsicWitness::HandleShift { letter: gen("h"), exponent: k })
        );
    }
}

#[test]
fn indicable_weights() {
    let z = GroupOracle::free(1).with_generators(vec![gen("t")]).unwrap();
    let d = DiagonalSystem::new(vec![(z, WeightMap::from_pairs([("t", 1)]), gen("h"))]).unwrap();
    for k in -4i64..=4 {
        let v = d.is_trivial(&Word::power_of("t", k)).unwrap().verdict;
        assert_eq!(v.is_trivial(), k == 0);
    }
}
