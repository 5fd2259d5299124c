//! Builders and solvers for each subgroup construction, non-conjugacy certificates and the
//! faithfulness probe for star products.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use rayon::prelude::*;
use thiserror::Error;

use crate::actions::{
    bs_window_action, commute_by_disjoint_support, multipush_is_trivial, support_region, ActionError, BsWindowResult,
    Commutation, DiagonalSystem, Evaluation, PushSystem, Shift, Verdict, Witness,
    WreathSystem,
};
use crate::schreier::{GraphSpec, Node, Orbit, DEFAULT_WINDOW};
use crate::surfaces::{
    classify, complement_invariant, distinguished_conditions, Classification, ComplementInvariant, Coverage,
    Incomparable, PiSpec, SchreierSurfaceSpec,
};
use crate::words::{
    bs_normal_form, exponent_sum, gen, reduced_ball, syllable_decompose, Gen, GraphError, GroupOracle, Partition,
    Presentation, SimpleGraph, WeightMap, Word,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("degenerate system: {0}")]
    Degenerate(String),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl From<crate::words::PresentationError> for ConstructionError {
    fn from(e: crate::words::PresentationError) -> Self {
        ConstructionError::Action(e.into())
    }
}

impl From<crate::schreier::SchreierError> for ConstructionError {
    fn from(e: crate::schreier::SchreierError) -> Self {
        ConstructionError::Action(e.into())
    }
}

impl From<crate::words::OracleError> for ConstructionError {
    fn from(e: crate::words::OracleError) -> Self {
        ConstructionError::Action(e.into())
    }
}

/// Free subgroup generated by multipushes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeHandle {
    pub system: PushSystem,
}

impl FreeHandle {
    pub fn rank(&self) -> usize {
        self.system.letters().len()
    }

    pub fn surface_type(&self) -> Classification {
        classify(self.system.surface())
    }
}

/// `G` embedded by `g ↦ ḡ·h^{f(g)}` next to a shift `h` with omitted copies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndicableHandle {
    pub diagonal: DiagonalSystem,
    pub shift: PushSystem,
    pub omitted: BTreeSet<Node>,
}

/// A star product `(G_1,H_1) ⋆ ⋯ ⋆ (G_n,H_n)` acting through multipushes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarHandle {
    pub diagonal: DiagonalSystem,
    pub pushes: PushSystem,
    /// The claimed presentation: factor relators plus commutators of weight-zero generators of
    /// different factors. A claim checked by [`faithfulness_probe`], not an assumption.
    pub claimed: Presentation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BsHandle {
    pub n: u32,
    pub depth: usize,
}

impl BsHandle {
    /// Window verdict next to the algebraic one; they must agree for in-window words.
    pub fn cross_check(&self, w: &Word) -> Result<(bool, BsWindowResult), ConstructionError> {
        let algebra = bs_normal_form(self.n, w)
            .map_err(|e| ActionError::UnknownLetter(e.0))?
            .is_identity();
        Ok((algebra, bs_window_action(self.n, w, self.depth)?))
    }
}

/// A solvable subgroup of a big mapping class group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Handle {
    Free(FreeHandle),
    Indicable(IndicableHandle),
    Star(StarHandle),
    Wreath(WreathSystem),
    Bs(BsHandle),
    Push(PushSystem),
}

impl Handle {
    pub fn kind(&self) -> &'static str {
        match self {
            Handle::Free(_) => "free",
            Handle::Indicable(_) => "indicable",
            Handle::Star(_) => "star",
            Handle::Wreath(_) => "wreath",
            Handle::Bs(_) => "bs1n",
            Handle::Push(_) => "explicit_push",
        }
    }

    /// Letters accepted by [`Handle::solve`].
    pub fn alphabet(&self) -> Vec<Gen> {
        match self {
            Handle::Free(h) => h.system.letters().to_vec(),
            Handle::Indicable(h) => h.diagonal.alphabet(),
            Handle::Star(h) => h.diagonal.alphabet(),
            Handle::Wreath(h) => h.alphabet(),
            Handle::Bs(_) => vec![gen("a"), gen("t")],
            Handle::Push(p) => p.letters().to_vec(),
        }
    }

    pub fn solve(&self, w: &Word, window: usize) -> Result<Evaluation, ConstructionError> {
        Ok(match self {
            Handle::Free(h) => multipush_is_trivial(&h.system, w, window)?,
            Handle::Indicable(h) => h.diagonal.is_trivial(w)?,
            Handle::Star(h) => h.diagonal.is_trivial(w)?,
            Handle::Wreath(h) => h.is_trivial(w, window)?,
            Handle::Bs(h) => {
                let e = bs_normal_form(h.n, w).map_err(|e| ActionError::UnknownLetter(e.0))?;
                Evaluation::exact(if e.is_identity() {
                    Verdict::Trivial
                } else {
                    Verdict::Nontrivial(Witness::NormalForm(e.to_string()))
                })
            }
            Handle::Push(p) => explicit_push_is_trivial(p, w, window)?,
        })
    }
}

/// Reads a reduced word as `u v u^-1 v^-1`, trying every split point.
fn commutator_parts(w: &Word) -> Option<(Word, Word)> {
    let l = w.letters();
    if l.len() % 2 != 0 {
        return None;
    }
    let half = l.len() / 2;
    (1..half).find_map(|i| {
        let u = Word::from_letters(l[..i].to_vec());
        let v = Word::from_letters(l[i..half].to_vec());
        (l[half..half + i] == *u.inverse().letters() && l[half + i..] == *v.inverse().letters()).then_some((u, v))
    })
}

/// Coset motion, free triviality, or a commutator of elements with disjoint supports;
/// anything else is Unknown.
pub fn explicit_push_is_trivial(sys: &PushSystem, w: &Word, window: usize) -> Result<Evaluation, ActionError> {
    sys.check_word(w)?;
    let r = w.free_reduce();
    if r.is_empty() {
        return Ok(Evaluation::exact(Verdict::Trivial));
    }
    if let Some((node, image)) = sys.moved_coset(&r, window)? {
        return Ok(Evaluation::exact(Verdict::Nontrivial(Witness::MovedCoset { node, image })));
    }
    // cyclic rotations of the core are conjugates of w
    let (_, core) = r.peel_conjugator();
    let l = core.letters();
    for k in 0..l.len() {
        let rotated = Word::from_letters([&l[k..], &l[..k]].concat());
        if let Some((u, v)) = commutator_parts(&rotated) {
            if commute_by_disjoint_support(sys, &u, &v, window)? == Commutation::Commute {
                return Ok(Evaluation::windowed(Verdict::Trivial, window));
            }
        }
    }
    Ok(Evaluation::windowed(Verdict::Unknown("no coset moved in the window".into()), window))
}

pub fn embed_free(surface: SchreierSurfaceSpec, letters: Vec<Gen>) -> Result<FreeHandle, ConstructionError> {
    let system = PushSystem::multipush(surface, letters)?;
    if let [s] = system.letters() {
        let g = system.graph();
        let infinite = matches!(g.s_orbit(&g.base_node(), s, DEFAULT_WINDOW)?, Orbit::LineSegment { .. });
        if !infinite && !system.surface().has_non_sphere_omega() {
            return Err(ConstructionError::Degenerate(format!(
                "single letter {s} with finite orbits and only sphere Ω"
            )));
        }
    }
    Ok(FreeHandle { system })
}

/// The first `m` nodes met by a breadth-first search from the base node.
pub fn first_nodes(graph: &GraphSpec, m: usize) -> BTreeSet<Node> {
    let base = graph.base_node();
    let reach = graph.vertex_count().unwrap_or(m + 1).max(m + 1);
    graph.bfs(&base, reach).take(m).map(|(v, _)| v).collect()
}

/// `shift` must be a surface whose graph has a single letter `h`.
pub fn embed_indicable(
    oracle: GroupOracle,
    f: WeightMap,
    shift: SchreierSurfaceSpec,
    omissions: usize,
) -> Result<IndicableHandle, ConstructionError> {
    let letters = shift.graph.letters();
    let [h] = letters.as_slice() else {
        return Err(ConstructionError::Degenerate(format!("shift graph needs one letter, has {}", letters.len())));
    };
    let h = h.clone();
    let omitted = first_nodes(&shift.graph, omissions);
    let mut sys = PushSystem::multipush(shift, vec![h.clone()])?;
    for v in &omitted {
        sys = sys.omit(&h, v.clone())?;
    }
    let diagonal = DiagonalSystem::new(vec![(oracle, f, h)])?;
    Ok(IndicableHandle { diagonal, shift: sys, omitted })
}

/// Each factor's original weight map; push letters are the graph letters in order.
pub fn embed_star(
    factors: Vec<(GroupOracle, WeightMap)>,
    surface: SchreierSurfaceSpec,
) -> Result<StarHandle, ConstructionError> {
    let letters = surface.graph.letters();
    if letters.len() != factors.len() {
        return Err(ConstructionError::Degenerate(format!(
            "{} factors need {} push letters, graph has {}",
            factors.len(),
            factors.len(),
            letters.len()
        )));
    }
    let mut gens = Vec::new();
    let mut relators = Vec::new();
    for (o, _) in &factors {
        let p = o.presentation();
        gens.extend(p.generators().iter().cloned());
        relators.extend(p.relators().iter().cloned());
    }
    for i in 0..factors.len() {
        for j in i + 1..factors.len() {
            for g in kernel_generators(&factors[i].1) {
                for h in kernel_generators(&factors[j].1) {
                    relators.push(Word::commutator(&Word::power_of(&g, 1), &Word::power_of(&h, 1)));
                }
            }
        }
    }
    let claimed = Presentation::new(gens, relators)?;
    let pushes = PushSystem::multipush(surface, letters.clone())?;
    let diagonal = DiagonalSystem::new(factors.into_iter().zip(letters).map(|((o, f), x)| (o, f, x)).collect())?;
    Ok(StarHandle { diagonal, pushes, claimed })
}

fn kernel_generators(f: &WeightMap) -> Vec<Gen> {
    f.iter().filter(|(_, k)| *k == 0).map(|(g, _)| g.clone()).collect()
}

/// Indicability of the star product: `f_1` on factor 1, zero elsewhere.
pub fn star_weight_map(factors: &[(GroupOracle, WeightMap)]) -> WeightMap {
    let mut out = WeightMap::new();
    for (i, (o, f)) in factors.iter().enumerate() {
        for g in o.generators() {
            out.insert(g.clone(), if i == 0 { f.get(g).unwrap_or(0) } else { 0 });
        }
    }
    out
}

/// Cone vertices `t1, …, tn` over the Δ_i, with every Δ_i vertex joined to every Δ_j vertex.
pub fn claimed_raag_graph(deltas: &[SimpleGraph]) -> Result<SimpleGraph, GraphError> {
    let cones: Vec<Gen> = (1..=deltas.len()).map(|i| gen(&format!("t{i}"))).collect();
    claimed_raag_graph_named(deltas, &cones)
}

pub fn claimed_raag_graph_named(deltas: &[SimpleGraph], cones: &[Gen]) -> Result<SimpleGraph, GraphError> {
    let mut out = SimpleGraph::default();
    for (d, t) in deltas.iter().zip(cones) {
        out = out.union(&cone(d, t)?);
    }
    for (i, di) in deltas.iter().enumerate() {
        for dj in &deltas[i + 1..] {
            for u in di.vertices() {
                for v in dj.vertices() {
                    out.add_edge(u.clone(), v.clone())?;
                }
            }
        }
    }
    Ok(out)
}

/// `t * Δ`, the defining graph of ℤ × A_Δ.
pub fn cone(delta: &SimpleGraph, t: &Gen) -> Result<SimpleGraph, GraphError> {
    let mut g = delta.clone();
    g.add_vertex(t.clone());
    for v in delta.vertices() {
        g.add_edge(t.clone(), v.clone())?;
    }
    Ok(g)
}

/// Factors `(ℤ × A_Δi, A_Δi)`: the cone vertex has weight 1, Δ_i has weight 0.
pub fn raag_star_factors(deltas: &[SimpleGraph], cones: &[Gen]) -> Result<Vec<(GroupOracle, WeightMap)>, GraphError> {
    deltas
        .iter()
        .zip(cones)
        .map(|(d, t)| {
            let mut f = WeightMap::new();
            f.insert(t.clone(), 1);
            for v in d.vertices() {
                f.insert(v.clone(), 0);
            }
            Ok((GroupOracle::raag(cone(d, t)?), f))
        })
        .collect()
}

pub fn induced_subgraph_subgroup(g: &SimpleGraph, vertices: &[&str]) -> Result<SimpleGraph, GraphError> {
    g.induced(vertices.iter().copied())
}

/// A smallest member of one of the three RAAG star families: deltas, cone names, claimed graph.
#[derive(Clone, Debug)]
pub struct StarFamily {
    pub deltas: Vec<SimpleGraph>,
    pub cones: Vec<Gen>,
}

impl StarFamily {
    /// 1: (ℤ²,ℤ)⋆(ℤ²,ℤ). 2: (ℤ×F₂,F₂)⋆(ℤ²,ℤ). 3: (ℤ×F₂,F₂)⋆(ℤ×F₂,F₂).
    pub fn smallest(family: u8) -> Option<StarFamily> {
        let one = |i| SimpleGraph::path(&[&format!("b{i}")]);
        let two = |i| {
            SimpleGraph::from_names(&[&format!("b{i}"), &format!("c{i}")], &[]).expect("two isolated vertices")
        };
        let deltas = match family {
            1 => vec![one(1), one(2)],
            2 => vec![two(1), one(2)],
            3 => vec![two(1), two(2)],
            _ => return None,
        };
        Some(StarFamily { deltas, cones: vec![gen("a1"), gen("a2")] })
    }

    pub fn factors(&self) -> Vec<(GroupOracle, WeightMap)> {
        raag_star_factors(&self.deltas, &self.cones).expect("cone names are fresh")
    }

    pub fn claimed_graph(&self) -> SimpleGraph {
        claimed_raag_graph_named(&self.deltas, &self.cones).expect("cone names are fresh")
    }

    /// The star handle on the blooming Cantor tree of F_n.
    pub fn handle(&self) -> Result<StarHandle, ConstructionError> {
        let n = self.deltas.len();
        let letters: Vec<Gen> = (1..=n).map(|i| gen(&format!("x{i}"))).collect();
        let graph = GraphSpec::cayley(GroupOracle::free(n).with_generators(letters)?);
        embed_star(self.factors(), SchreierSurfaceSpec::new(graph, PiSpec::compact(n as u64)))
    }
}

pub fn embed_wreath(lamp: GroupOracle, shift: Shift) -> Result<WreathSystem, ConstructionError> {
    Ok(WreathSystem::new(lamp, shift)?)
}

pub fn embed_bs1n(n: u32, depth: usize) -> Result<BsHandle, ConstructionError> {
    if n < 2 {
        return Err(ConstructionError::Degenerate(format!("BS(1,{n}) needs n >= 2")));
    }
    Ok(BsHandle { n, depth })
}

/// The cross system and its pairwise commuting family.
#[derive(Clone, Debug)]
pub struct NotFreeFamily {
    pub system: PushSystem,
    pub words: Vec<Word>,
}

/// The cross commutator `h_b^-1 h_a^-1 h_b h_a`, whose support lies at (−1,0), (0,0), (0,−1).
pub fn cross_commutator() -> Word {
    Word::commutator(&Word::power_of("h_b", -1), &Word::power_of("h_a", -1))
}

/// `w_n = h_a^(3n+1) h_b h_a^2`.
pub fn cross_conjugator(n: usize) -> Word {
    Word::power_of("h_a", 3 * n as i64 + 1) * Word::power_of("h_b", 1) * Word::power_of("h_a", 2)
}

pub fn cross_system() -> PushSystem {
    let g = GraphSpec::cross("h_a", "h_b");
    PushSystem::explicit(SchreierSurfaceSpec::new(g, PiSpec::handle()), vec![gen("h_a"), gen("h_b")])
        .expect("cross letters")
}

/// The commutator and its conjugates by `w_0, …, w_{count-2}`, each verified nontrivial and
/// every pair verified to commute.
pub fn notfree_family(count: usize) -> Result<NotFreeFamily, ConstructionError> {
    if count == 0 {
        return Err(ConstructionError::Degenerate("count must be at least 1".into()));
    }
    let system = cross_system();
    let c = cross_commutator();
    let words: Vec<Word> =
        std::iter::once(c.clone()).chain((0..count - 1).map(|n| c.conjugate_by(&cross_conjugator(n)))).collect();
    let window = DEFAULT_WINDOW.max(3 * count + 4);
    for w in &words {
        if system.moved_coset(w, window)?.is_none() {
            return Err(ConstructionError::Invariant(format!("{w} moves no coset")));
        }
    }
    for (i, u) in words.iter().enumerate() {
        for v in &words[i + 1..] {
            if let Commutation::Unknown(why) = commute_by_disjoint_support(&system, u, v, window)? {
                return Err(ConstructionError::Invariant(format!("{u} and {v}: {why}")));
            }
        }
    }
    debug_assert!(words.iter().all(|w| support_region(&system, w, window).is_ok()));
    Ok(NotFreeFamily { system, words })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub m: usize,
    pub n: usize,
    pub invariant_m: ComplementInvariant,
    pub invariant_n: ComplementInvariant,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "omit {}: {} | omit {}: {}", self.m, self.invariant_m, self.n, self.invariant_n)
    }
}

/// Compares the complements of the domains with `m` and `n` omitted copies (the first nodes in
/// breadth-first order). `Ok(None)` when the invariants agree.
pub fn nonconjugacy_certificate(
    spec: &SchreierSurfaceSpec,
    coverage: &Coverage,
    m: usize,
    n: usize,
) -> Result<Option<Certificate>, Incomparable> {
    if distinguished_conditions(&spec.pi).is_empty() {
        return Err(Incomparable("Π is not distinguished".into()));
    }
    let invariant_m = complement_invariant(spec, &first_nodes(&spec.graph, m), coverage)?;
    let invariant_n = complement_invariant(spec, &first_nodes(&spec.graph, n), coverage)?;
    Ok((invariant_m != invariant_n).then_some(Certificate { m, n, invariant_m, invariant_n }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divergence {
    pub word: Word,
    pub model_trivial: bool,
    pub claimed_normal_form: Word,
    pub x_word: Word,
    /// Weight of each factor syllable, in order.
    pub syllable_weights: Vec<(usize, i64)>,
}

impl Divergence {
    /// The only way the model and the claim can disagree: the collected x-word cancels even
    /// though some syllable carries weight.
    pub fn passes_gap_filter(&self) -> bool {
        self.x_word.free_reduce().is_empty() && self.syllable_weights.iter().any(|(_, k)| *k != 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeReport {
    pub radius: usize,
    pub compared: usize,
    pub divergences: Vec<Divergence>,
}

impl ProbeReport {
    pub fn summary(&self) -> String {
        format!("compared: {}  diverged: {}", self.compared, self.divergences.len())
    }

    /// Plain-text table, one divergence per line.
    pub fn to_table(&self, title: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# faithfulness probe: {title}");
        let _ = writeln!(out, "# apply-order: rightmost-first");
        let _ = writeln!(out, "# radius: {}", self.radius);
        let _ = writeln!(out, "# {}", self.summary());
        let _ = writeln!(out, "word\tmodel\tclaimed\tclaimed-normal-form\tx-word\tsyllable-weights");
        for d in &self.divergences {
            let weights: Vec<String> = d.syllable_weights.iter().map(|(i, k)| format!("G{}:{k}", i + 1)).collect();
            let verdict = |t: bool| if t { "trivial" } else { "nontrivial" };
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}",
                d.word,
                verdict(d.model_trivial),
                verdict(!d.model_trivial),
                d.claimed_normal_form,
                d.x_word,
                weights.join(" ")
            );
        }
        out
    }
}

/// Every reduced word of length `<= radius` over the factors' original generators on which the
/// model and the claimed group disagree about triviality, one per claimed normal form, in
/// shortlex order.
pub fn faithfulness_probe(
    model: &DiagonalSystem,
    claimed: &GroupOracle,
    radius: usize,
) -> Result<ProbeReport, ConstructionError> {
    let alphabet: Vec<Gen> = model.factors().iter().flat_map(|f| f.oracle.generators().iter().cloned()).collect();
    let partition: Partition = model
        .factors()
        .iter()
        .enumerate()
        .flat_map(|(i, f)| f.oracle.generators().iter().map(move |g| (g.clone(), i)))
        .collect();
    if let Some(g) = alphabet.iter().find(|g| !claimed.has_generator(g)) {
        return Err(ActionError::UnknownLetter(format!("{g} is not a generator of the claimed group")).into());
    }
    let ball = reduced_ball(&alphabet, radius);
    let mut found: Vec<Divergence> = ball
        .par_iter()
        .map(|w| -> Result<Option<Divergence>, ConstructionError> {
            let normal = model.normalize(w)?;
            let claimed_normal_form = claimed.normalize(w)?;
            if normal.is_trivial() == claimed_normal_form.is_empty() {
                return Ok(None);
            }
            let syllable_weights = syllable_decompose(w, &partition)
                .map_err(|e| ActionError::UnknownLetter(e.0))?
                .into_iter()
                .map(|(i, s)| Ok((i, exponent_sum(&s, &model.factors()[i].weights).map_err(|e| ActionError::Invalid(e.to_string()))?)))
                .collect::<Result<_, ConstructionError>>()?;
            Ok(Some(Divergence {
                word: w.clone(),
                model_trivial: normal.is_trivial(),
                claimed_normal_form,
                x_word: normal.x_word,
                syllable_weights,
            }))
        })
        .filter_map(Result::transpose)
        .collect::<Result<_, _>>()?;
    found.sort_by(|a, b| a.word.shortlex_cmp(&b.word));
    let mut seen: BTreeMap<Word, ()> = BTreeMap::new();
    found.retain(|d| seen.insert(d.claimed_normal_form.clone(), ()).is_none());
    Ok(ProbeReport { radius, compared: ball.len(), divergences: found })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::WindowVerdict;
    use crate::surfaces::{EndDescriptor, Genus, SurfaceType};
    use crate::words::w;

    #[test]
    fn claimed_graphs() {
        let p4 = StarFamily::smallest(1).unwrap().claimed_graph();
        assert_eq!(p4, SimpleGraph::path(&["a1", "b1", "b2", "a2"]));
        assert!(p4.is_connected());
        let fam2 = StarFamily::smallest(2).unwrap().claimed_graph();
        assert_eq!((fam2.vertex_count(), fam2.edge_count()), (5, 5));
        let single = claimed_raag_graph(&[SimpleGraph::path(&["p", "q"])]).unwrap();
        assert_eq!(single, cone(&SimpleGraph::path(&["p", "q"]), &gen("t1")).unwrap());
    }

    #[test]
    fn free_product_subgraph() {
        let p4 = SimpleGraph::path(&["p1", "p2", "p3", "p4"]);
        let v = |s: &str| SimpleGraph::path(&[s]);
        let lambda = claimed_raag_graph(&[p4.clone(), v("b2"), v("b3")]).unwrap();
        let sub = induced_subgraph_subgroup(&lambda, &["p1", "p2", "p3", "p4", "t2", "t3"]).unwrap();
        let expected = p4.union(&SimpleGraph::from_names(&["t2", "t3"], &[]).unwrap());
        assert_eq!(sub, expected);
        assert_eq!(induced_subgraph_subgroup(&lambda, &[]).unwrap(), SimpleGraph::default());
    }

    #[test]
    fn star_examples() {
        let h = StarFamily::smallest(1).unwrap().handle().unwrap();
        let solve = |s: &str| Handle::Star(h.clone()).solve(&w(s), 16).unwrap().verdict;
        assert!(solve("[b1,b2]").is_trivial());
        assert!(solve("[a1,a2]").is_nontrivial());
        assert!(solve("[a1,b1]").is_trivial());
        for r in h.claimed.relators() {
            assert!(h.diagonal.normalize(r).unwrap().is_trivial(), "{r}");
        }
    }

    #[test]
    fn star_weights() {
        let fam = StarFamily::smallest(2).unwrap();
        let f = star_weight_map(&fam.factors());
        assert_eq!(f.get("a1"), Some(1));
        assert_eq!(f.get("a2"), Some(0));
        for r in fam.handle().unwrap().claimed.relators() {
            assert_eq!(exponent_sum(r, &f), Ok(0));
        }
    }

    #[test]
    fn probe_small() {
        let h = StarFamily::smallest(1).unwrap().handle().unwrap();
        let claimed = GroupOracle::raag(StarFamily::smallest(1).unwrap().claimed_graph());
        let r1 = faithfulness_probe(&h.diagonal, &claimed, 1).unwrap();
        assert!(r1.divergences.is_empty());
        assert_eq!(r1.compared, 9);
        let r4 = faithfulness_probe(&h.diagonal, &claimed, 4).unwrap();
        assert!(r4.divergences.iter().all(Divergence::passes_gap_filter));
        assert!(r4.divergences.iter().any(|d| d.word == w("[a1,b2]")));
    }

    #[test]
    fn free_and_degenerate() {
        let f2 = GraphSpec::cayley(GroupOracle::free(2));
        let h = embed_free(SchreierSurfaceSpec::new(f2.clone(), PiSpec::handle()), f2.letters()).unwrap();
        assert_eq!(h.rank(), 2);
        assert_eq!(h.surface_type().to_string(), "(∞, 0, Cantor, Cantor)");
        let c3 = SchreierSurfaceSpec::new(GraphSpec::cycle(3, "t"), PiSpec::handle());
        assert!(matches!(embed_free(c3.clone(), vec![gen("t")]), Err(ConstructionError::Degenerate(_))));
        let decorated = c3.with_omega(Node::Id(gen("1")), SurfaceType::compact(2, 0)).unwrap();
        assert!(embed_free(decorated, vec![gen("t")]).is_ok());
    }

    #[test]
    fn explicit_push_commutators() {
        let sys = cross_system();
        let c = cross_commutator();
        let d = c.conjugate_by(&cross_conjugator(1));
        let e = explicit_push_is_trivial(&sys, &Word::commutator(&c, &d), 16).unwrap();
        assert_eq!(e, Evaluation::windowed(Verdict::Trivial, 16));
        let g = w("h_a h_b");
        let conj = Word::commutator(&c, &d).conjugate_by(&g);
        assert!(explicit_push_is_trivial(&sys, &conj, 16).unwrap().verdict.is_trivial());
        assert!(explicit_push_is_trivial(&sys, &c, 16).unwrap().verdict.is_nontrivial());
        assert!(explicit_push_is_trivial(&sys, &Word::commutator(&c, &w("h_a")), 16).unwrap().verdict.is_nontrivial());
        assert_eq!(commutator_parts(&w("a b a^-1 b^-1")), Some((w("a"), w("b"))));
        assert_eq!(commutator_parts(&w("a b a b")), None);
    }

    #[test]
    fn notfree() {
        let fam = notfree_family(4).unwrap();
        assert_eq!(fam.words.len(), 4);
        assert_eq!(notfree_family(1).unwrap().words, vec![cross_commutator()]);
    }

    #[test]
    fn certificates() {
        let ladder = SchreierSurfaceSpec::new(GraphSpec::line("h"), PiSpec::handle());
        let c = nonconjugacy_certificate(&ladder, &Coverage::AllVertices, 2, 3).unwrap().unwrap();
        assert_eq!(c.invariant_m.genus, Genus::Finite(2));
        assert_eq!(c.invariant_n.genus, Genus::Finite(3));
        assert_eq!(nonconjugacy_certificate(&ladder, &Coverage::AllVertices, 2, 2).unwrap(), None);
        let tree = SchreierSurfaceSpec::new(GraphSpec::cayley(GroupOracle::free(2)), PiSpec::handle());
        assert!(nonconjugacy_certificate(&tree, &Coverage::AllVertices, 1, 4).unwrap().is_some());
        let cantor = PiSpec::new(Genus::Infinite, EndDescriptor::Cantor, EndDescriptor::Cantor).unwrap();
        let bad = SchreierSurfaceSpec::new(GraphSpec::line("h"), cantor);
        assert!(nonconjugacy_certificate(&bad, &Coverage::AllVertices, 1, 2).is_err());
    }

    #[test]
    fn indicable_and_bs() {
        let shift = SchreierSurfaceSpec::new(GraphSpec::line("h"), PiSpec::handle());
        let z = GroupOracle::free(1).with_generators(vec![gen("t")]).unwrap();
        let h = Handle::Indicable(embed_indicable(z, WeightMap::from_pairs([("t", 1)]), shift, 2).unwrap());
        assert!(h.solve(&w("t^3"), 16).unwrap().verdict.is_nontrivial());
        assert!(h.solve(&w("t^3 t^-3"), 16).unwrap().verdict.is_trivial());
        let bs = embed_bs1n(2, 8).unwrap();
        let (algebra, window) = bs.cross_check(&w("t a t^-1 a^-1")).unwrap();
        assert!(!algebra);
        assert!(matches!(window.verdict, WindowVerdict::Nontrivial { .. }));
        assert!(Handle::Bs(bs).solve(&w("t a t^-1 a^-2"), 16).unwrap().verdict.is_trivial());
    }
}
