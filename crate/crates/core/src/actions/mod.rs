//! Symbolic evaluators for homeomorphism systems on Schreier surfaces.
//!
//! A word acts with its rightmost letter first: `w = s1 s2 … sk` sends `v` to `s1(…sk(v))`.

mod bs_window;
mod diagonal;
mod wreath;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

pub use bs_window::{bs_window_action, BsWindow, BsWindowResult, CopyState, WindowVerdict};
pub use diagonal::{DiagonalFactor, DiagonalSystem, NormalizedDiagonal};
pub use wreath::{Shift, WreathElement, WreathSystem};

use crate::schreier::{GraphSpec, Node, Orbit, SchreierError};
use crate::surfaces::{graph_profile, Cell, Genus, RegionTag, SchreierSurfaceSpec, SupportRegion};
use crate::words::{reduced_ball, Gen, Letter, OracleError, PresentationError, UnassignedGenerator, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ActionError {
    #[error("letter {0} is not a push letter of this system")]
    UnknownLetter(String),
    #[error("the word is freely trivial")]
    TrivialWord,
    #[error("the free multipush criterion needs a Schreier graph; {0} has partial tracks")]
    NotSchreier(String),
    #[error("invalid system: {0}")]
    Invalid(String),
    #[error(transparent)]
    Graph(#[from] SchreierError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Partition(#[from] UnassignedGenerator),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `image = w(node) ≠ node`.
    MovedCoset { node: Node, image: Node },
    /// Coset-trivial, but the free reduction is nonempty and the free criterion applies.
    FreeReduction(Word),
    /// |T| = 1 on a finite cycle through a non-sphere Ω.
    NonSphereCycle { node: Node, length: usize },
    /// A family normal form that is not the identity.
    NormalForm(String),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::MovedCoset { node, image } => write!(f, "moved-coset {node} -> {image}"),
            Witness::FreeReduction(w) => write!(f, "free-reduction {w}"),
            Witness::NonSphereCycle { node, length } => write!(f, "non-sphere-cycle at {node} (length {length})"),
            Witness::NormalForm(s) => write!(f, "normal-form {s}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Trivial,
    Nontrivial(Witness),
    Unknown(String),
}

impl Verdict {
    pub fn is_trivial(&self) -> bool {
        matches!(self, Verdict::Trivial)
    }

    pub fn is_nontrivial(&self) -> bool {
        matches!(self, Verdict::Nontrivial(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown(_))
    }
}

/// A verdict plus the window it depends on (`None` when it holds outright).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub verdict: Verdict,
    pub window: Option<usize>,
}

impl Evaluation {
    pub fn exact(verdict: Verdict) -> Self {
        Evaluation { verdict, window: None }
    }

    pub fn windowed(verdict: Verdict, window: usize) -> Self {
        Evaluation { verdict, window: Some(window) }
    }
}

/// `TRIVIAL`, `NONTRIVIAL <witness>` or `UNKNOWN <reason>`, with ` [window R]` when windowed.
impl fmt::Display for Evaluation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.verdict {
            Verdict::Trivial => write!(f, "TRIVIAL")?,
            Verdict::Nontrivial(w) => write!(f, "NONTRIVIAL {w}")?,
            Verdict::Unknown(why) => write!(f, "UNKNOWN {why}")?,
        }
        if let Some(r) = self.window {
            write!(f, " [window {r}]")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PushKind {
    /// Multipushes x_s on a Schreier graph: every node lies on every s-orbit.
    Multipush,
    /// Pushes along explicit tracks of a graph that need not be Schreier.
    Explicit,
}

/// Pushes along the letters' tracks of a Schreier surface, with finitely many omitted copies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushSystem {
    surface: SchreierSurfaceSpec,
    letters: Vec<Gen>,
    omissions: BTreeSet<(Gen, Node)>,
    kind: PushKind,
}

/// The multipush system of the free-group construction.
pub type MultipushSystem = PushSystem;

impl PushSystem {
    pub fn multipush(surface: SchreierSurfaceSpec, letters: Vec<Gen>) -> Result<Self, ActionError> {
        if !surface.graph.is_schreier() {
            return Err(ActionError::NotSchreier(surface.graph.describe()));
        }
        PushSystem::build(surface, letters, PushKind::Multipush)
    }

    pub fn explicit(surface: SchreierSurfaceSpec, letters: Vec<Gen>) -> Result<Self, ActionError> {
        PushSystem::build(surface, letters, PushKind::Explicit)
    }

    fn build(surface: SchreierSurfaceSpec, letters: Vec<Gen>, kind: PushKind) -> Result<Self, ActionError> {
        if letters.is_empty() {
            return Err(ActionError::Invalid("no push letters".into()));
        }
        for s in &letters {
            if !surface.graph.has_letter(s) {
                return Err(ActionError::UnknownLetter(s.to_string()));
            }
        }
        Ok(PushSystem { surface, letters, omissions: BTreeSet::new(), kind })
    }

    /// Removes the Π-copy at `node` from the domain of `letter`.
    pub fn omit(mut self, letter: &Gen, node: Node) -> Result<Self, ActionError> {
        if !self.letters.contains(letter) {
            return Err(ActionError::UnknownLetter(letter.to_string()));
        }
        self.omissions.insert((letter.clone(), node));
        Ok(self)
    }

    pub fn surface(&self) -> &SchreierSurfaceSpec {
        &self.surface
    }

    pub fn graph(&self) -> &GraphSpec {
        &self.surface.graph
    }

    pub fn letters(&self) -> &[Gen] {
        &self.letters
    }

    pub fn omissions(&self) -> &BTreeSet<(Gen, Node)> {
        &self.omissions
    }

    pub fn kind(&self) -> PushKind {
        self.kind
    }

    pub fn check_word(&self, w: &Word) -> Result<(), ActionError> {
        match w.letters().iter().find(|l| !self.letters.contains(&l.gen)) {
            Some(l) => Err(ActionError::UnknownLetter(l.gen.to_string())),
            None => Ok(()),
        }
    }

    fn omitted(&self, s: &Gen, v: &Node) -> bool {
        !self.omissions.is_empty() && self.omissions.contains(&(s.clone(), v.clone()))
    }

    /// Action of one push letter on Π-copies: move to the next non-omitted node along the track.
    pub fn act_letter(&self, v: &Node, l: &Letter) -> Result<Node, ActionError> {
        let g = self.graph();
        if !g.has_edge(v, l) || self.omitted(&l.gen, v) {
            return Ok(v.clone());
        }
        let mut cur = g.step(v, l)?;
        while self.omitted(&l.gen, &cur) {
            cur = g.step(&cur, l)?;
        }
        Ok(cur)
    }

    /// Coset action of a word, rightmost letter first.
    pub fn act(&self, v: &Node, w: &Word) -> Result<Node, ActionError> {
        w.letters().iter().rev().try_fold(v.clone(), |cur, l| self.act_letter(&cur, l))
    }

    /// Nodes examined by window-based checks, with their distance from the base node.
    fn window_nodes(&self, window: usize) -> Vec<(Node, usize)> {
        let g = self.graph();
        match g.all_nodes() {
            Some(all) => all.into_iter().map(|v| (v, 0)).collect(),
            None => g.bfs(&g.base_node(), window).collect(),
        }
    }

    /// First in-window node moved by `w`, searched breadth-first.
    pub fn moved_coset(&self, w: &Word, window: usize) -> Result<Option<(Node, Node)>, ActionError> {
        let g = self.graph();
        let check = |v: Node| -> Result<Option<(Node, Node)>, ActionError> {
            let image = self.act(&v, w)?;
            Ok((image != v).then_some((v, image)))
        };
        if let Some(all) = g.all_nodes() {
            for v in all {
                if let Some(hit) = check(v)? {
                    return Ok(Some(hit));
                }
            }
            return Ok(None);
        }
        for (v, _) in g.bfs(&g.base_node(), window) {
            if let Some(hit) = check(v)? {
                return Ok(Some(hit));
            }
        }
        Ok(None)
    }
}

/// Triviality of a multipush word, per the free multipush criterion.
pub fn multipush_is_trivial(sys: &MultipushSystem, w: &Word, window: usize) -> Result<Evaluation, ActionError> {
    if sys.kind != PushKind::Multipush {
        return Err(ActionError::NotSchreier(sys.graph().describe()));
    }
    sys.check_word(w)?;
    let r = w.free_reduce();
    if r.is_empty() {
        return Ok(Evaluation::exact(Verdict::Trivial));
    }
    if let Some((node, image)) = sys.moved_coset(&r, window)? {
        return Ok(Evaluation::exact(Verdict::Nontrivial(Witness::MovedCoset { node, image })));
    }
    let g = sys.graph();
    let tag = |v: Verdict| if g.is_finite() { Evaluation::exact(v) } else { Evaluation::windowed(v, window) };
    if sys.letters.len() >= 2 {
        return Ok(tag(Verdict::Nontrivial(Witness::FreeReduction(r))));
    }
    let s = &sys.letters[0];
    match g.s_orbit(&g.base_node(), s, window)? {
        Orbit::LineSegment { .. } => Ok(tag(Verdict::Nontrivial(Witness::FreeReduction(r)))),
        _ => {
            for v in sys.surface().omegas().keys() {
                if let Orbit::FiniteCycle(nodes) = g.s_orbit(v, s, window)? {
                    return Ok(tag(Verdict::Nontrivial(Witness::NonSphereCycle { node: v.clone(), length: nodes.len() })));
                }
            }
            Ok(tag(Verdict::Unknown(format!(
                "{s}-power on finite cycles with only sphere Ω; the free criterion does not apply"
            ))))
        }
    }
}

/// Largest displacement `|v^-1 w v|` of the deck transformation `w` over the depth-ball of the
/// rank-|T| tree.
pub fn lift_displacement(alphabet: &[Gen], w: &Word, depth: usize) -> Result<usize, ActionError> {
    let r = w.free_reduce();
    if r.is_empty() {
        return Err(ActionError::TrivialWord);
    }
    if let Some(l) = r.letters().iter().find(|l| !alphabet.contains(&l.gen)) {
        return Err(ActionError::UnknownLetter(l.gen.to_string()));
    }
    Ok(reduced_ball(alphabet, depth)
        .iter()
        .map(|v| (v.inverse() * &r * v).free_reduce().len())
        .max()
        .unwrap_or(0))
}

/// Displacement at each depth `0..=max_depth`.
pub fn displacement_profile(alphabet: &[Gen], w: &Word, max_depth: usize) -> Result<Vec<usize>, ActionError> {
    (0..=max_depth).map(|d| lift_displacement(alphabet, w, d)).collect()
}

/// Cells touched by `w`, computed inside the window.
///
/// The region consists of copies the word moves, together with copies that travel along two or
/// more tracks before returning, computed for the cyclically reduced core of `w` and carried by
/// the peeled conjugator. Edge fronts are the track edges joining two region vertices.
pub fn support_region(sys: &PushSystem, w: &Word, window: usize) -> Result<SupportRegion, ActionError> {
    sys.check_word(w)?;
    let (conj, core) = w.free_reduce().peel_conjugator();
    if core.is_empty() {
        return Ok(SupportRegion::empty(window));
    }
    let g = sys.graph();
    let finite = g.is_finite();
    let mut truncated = false;
    let mut core_nodes = Vec::new();
    for (p, d) in sys.window_nodes(window) {
        let mut cur = p.clone();
        let mut tracks: BTreeSet<&Gen> = BTreeSet::new();
        for l in core.letters().iter().rev() {
            let next = sys.act_letter(&cur, l)?;
            if next != cur {
                tracks.insert(&l.gen);
            }
            cur = next;
        }
        if cur != p || tracks.len() >= 2 {
            if !finite && d >= window {
                truncated = true;
            }
            core_nodes.push(p);
        }
    }
    if core_nodes.is_empty() {
        return Ok(SupportRegion { cells: BTreeSet::new(), window, tag: RegionTag::Indeterminate });
    }
    let mut vertices = BTreeSet::new();
    for p in core_nodes {
        vertices.insert(sys.act(&p, &conj)?);
    }
    let mut cells: BTreeSet<Cell> = BTreeSet::new();
    for v in &vertices {
        cells.insert(Cell::VertexFront(v.clone()));
        for s in &sys.letters {
            let l = Letter { gen: s.clone(), inverse: false };
            if g.has_edge(v, &l) {
                let u = g.step(v, &l)?;
                if u != *v && vertices.contains(&u) {
                    cells.insert(Cell::EdgeFront(v.clone(), s.clone()));
                }
            }
        }
    }
    let tag = if truncated { RegionTag::Truncated } else { RegionTag::Exact };
    Ok(SupportRegion { cells, window, tag })
}

/// Image of a region under the coset action of `u`, edges recomputed.
pub fn region_image(sys: &PushSystem, region: &SupportRegion, u: &Word) -> Result<SupportRegion, ActionError> {
    let g = sys.graph();
    let mut vertices = BTreeSet::new();
    for v in region.vertex_nodes() {
        vertices.insert(sys.act(&v, u)?);
    }
    let mut cells = BTreeSet::new();
    for v in &vertices {
        cells.insert(Cell::VertexFront(v.clone()));
        for s in &sys.letters {
            let l = Letter { gen: s.clone(), inverse: false };
            if g.has_edge(v, &l) {
                let n = g.step(v, &l)?;
                if n != *v && vertices.contains(&n) {
                    cells.insert(Cell::EdgeFront(v.clone(), s.clone()));
                }
            }
        }
    }
    Ok(SupportRegion { cells, window: region.window, tag: region.tag })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Commutation {
    Commute,
    Unknown(String),
}

/// `Commute` when the supports are provably disjoint; never claims non-commutation.
pub fn commute_by_disjoint_support(sys: &PushSystem, u: &Word, v: &Word, window: usize) -> Result<Commutation, ActionError> {
    let (ru, rv) = (support_region(sys, u, window)?, support_region(sys, v, window)?);
    let trivial = |r: &SupportRegion| r.is_empty() && r.tag == RegionTag::Exact;
    if trivial(&ru) || trivial(&rv) {
        return Ok(Commutation::Commute);
    }
    if ru.tag == RegionTag::Indeterminate || rv.tag == RegionTag::Indeterminate {
        return Ok(Commutation::Unknown("support not detected in window".into()));
    }
    if let Some(c) = ru.cells.intersection(&rv.cells).next() {
        return Ok(Commutation::Unknown(format!("supports overlap at {c}")));
    }
    if ru.tag == RegionTag::Truncated || rv.tag == RegionTag::Truncated {
        return Ok(Commutation::Unknown("support reaches the window boundary".into()));
    }
    Ok(Commutation::Commute)
}

/// Evidence that a mapping class is not a limit of compactly supported ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntrinsicWitness {
    /// The Π-copy at `node`, which has ends, is carried to the copy at `image`.
    EndPermutation { node: Node, image: Node },
    /// Net flux of `exponent` handles across any `letter`-edge of a forest.
    HandleShift { letter: Gen, exponent: i64 },
}

impl fmt::Display for IntrinsicWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntrinsicWitness::EndPermutation { node, image } => write!(f, "end-permutation Π{node} -> Π{image}"),
            IntrinsicWitness::HandleShift { letter, exponent } => write!(f, "handle-shift {letter}^{exponent}"),
        }
    }
}

pub fn intrinsic_type_witness(sys: &PushSystem, w: &Word, window: usize) -> Result<Option<IntrinsicWitness>, ActionError> {
    sys.check_word(w)?;
    let r = w.free_reduce();
    if r.is_empty() {
        return Ok(None);
    }
    let pi = sys.surface().pi.surface();
    if pi.ends.is_empty() == Some(false) {
        if let Some((node, image)) = sys.moved_coset(&r, window)? {
            return Ok(Some(IntrinsicWitness::EndPermutation { node, image }));
        }
    }
    let g = sys.graph();
    let forest = graph_profile(g).is_ok_and(|p| p.betti == Genus::Finite(0) && p.vertices.is_none());
    if sys.surface().pi.is_compact() && pi.genus != Genus::Finite(0) && forest {
        for s in &sys.letters {
            let k = r.exponent_of(s);
            if k != 0 {
                let line = g
                    .bfs(&g.base_node(), window)
                    .find(|(v, _)| g.has_edge(v, &Letter { gen: s.clone(), inverse: false }))
                    .map(|(v, _)| g.s_orbit(&v, s, window))
                    .transpose()?;
                if matches!(line, Some(Orbit::LineSegment { .. })) {
                    return Ok(Some(IntrinsicWitness::HandleShift { letter: s.clone(), exponent: k }));
                }
            }
        }
    }
    Ok(None)
}

/// Map from nodes to cells, for rendering.
pub fn cells_by_node(region: &SupportRegion) -> HashMap<Node, Vec<Cell>> {
    let mut out: HashMap<Node, Vec<Cell>> = HashMap::new();
    for c in &region.cells {
        let v = match c {
            Cell::VertexFront(v) | Cell::EdgeFront(v, _) | Cell::PiCopy(v) | Cell::OmegaCell(v) => v,
        };
        out.entry(v.clone()).or_default().push(c.clone());
    }
    out
}
