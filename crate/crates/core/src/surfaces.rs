//! End spaces, the classification quadruple, Schreier surfaces S_Γ(Π) # Ω_v and their cells.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul};

use thiserror::Error;

use crate::schreier::{GraphSpec, LazyFamily, Node, Orbit};
use crate::words::{Gen, OracleKind};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Genus {
    Finite(u64),
    Infinite,
}

impl Genus {
    pub fn is_finite(self) -> bool {
        matches!(self, Genus::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Genus::Finite(g) => Some(g),
            Genus::Infinite => None,
        }
    }
}

impl Add for Genus {
    type Output = Genus;
    fn add(self, rhs: Genus) -> Genus {
        match (self, rhs) {
            (Genus::Finite(a), Genus::Finite(b)) => Genus::Finite(a + b),
            _ => Genus::Infinite,
        }
    }
}

/// `count · genus`, with `None` an infinite count.
impl Mul<Genus> for Option<u64> {
    type Output = Genus;
    fn mul(self, g: Genus) -> Genus {
        match (self, g) {
            (Some(0), _) | (_, Genus::Finite(0)) => Genus::Finite(0),
            (Some(k), Genus::Finite(g)) => Genus::Finite(k * g),
            _ => Genus::Infinite,
        }
    }
}

impl fmt::Display for Genus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Genus::Finite(g) => write!(f, "{g}"),
            Genus::Infinite => write!(f, "∞"),
        }
    }
}

/// Outcome of comparing descriptors: decided, or outside what the algebra can settle.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Comparison {
    Equal,
    Different,
    Incomparable,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum EndDescriptor {
    Finite(u64),
    /// ℕ ∪ {∞}
    OmegaPlusOne,
    /// {−∞} ∪ ℤ ∪ {∞}
    ZTwoPoint,
    Cantor,
    DisjointUnion(Vec<EndDescriptor>),
    /// Ends of a catalogued graph family that has no closed form here.
    GraphEnds(String),
}

/// Flattened disjoint union: isolated points, rank-2 accumulation points, Cantor sets, tags.
#[derive(Default, PartialEq, Eq, Debug)]
struct EndParts {
    points: u64,
    limits: u64,
    cantor: u64,
    tags: Vec<String>,
}

impl EndDescriptor {
    pub fn empty() -> Self {
        EndDescriptor::Finite(0)
    }

    fn parts(&self, acc: &mut EndParts) {
        match self {
            EndDescriptor::Finite(k) => acc.points += k,
            EndDescriptor::OmegaPlusOne => acc.limits += 1,
            EndDescriptor::ZTwoPoint => acc.limits += 2,
            EndDescriptor::Cantor => acc.cantor += 1,
            EndDescriptor::DisjointUnion(ts) => ts.iter().for_each(|t| t.parts(acc)),
            EndDescriptor::GraphEnds(tag) => acc.tags.push(tag.clone()),
        }
    }

    fn flat(&self) -> EndParts {
        let mut p = EndParts::default();
        self.parts(&mut p);
        p.tags.sort();
        p
    }

    /// Number of ends when finite; `None` when infinite or unknown.
    pub fn finite_count(&self) -> Option<u64> {
        let p = self.flat();
        (p.limits == 0 && p.cantor == 0 && p.tags.is_empty()).then_some(p.points)
    }

    pub fn is_empty(&self) -> Option<bool> {
        self.finite_count().map(|k| k == 0).or_else(|| (self.flat().tags.is_empty()).then_some(false))
    }

    /// `Some(true)` if the end space is countable, `None` if undecidable here.
    pub fn is_countable(&self) -> Option<bool> {
        let p = self.flat();
        if p.cantor > 0 {
            Some(false)
        } else if p.tags.is_empty() {
            Some(true)
        } else {
            None
        }
    }

    pub fn is_infinite(&self) -> Option<bool> {
        let p = self.flat();
        if p.limits > 0 || p.cantor > 0 {
            Some(true)
        } else if p.tags.is_empty() {
            Some(false)
        } else {
            None
        }
    }

    /// `k` disjoint copies; `None` means countably infinitely many (only representable when empty).
    pub fn times(&self, k: Option<u64>) -> Option<EndDescriptor> {
        match (k, self.finite_count()) {
            (_, Some(0)) | (Some(0), _) => Some(EndDescriptor::empty()),
            (Some(1), _) => Some(self.clone()),
            (Some(k), Some(n)) => Some(EndDescriptor::Finite(k * n)),
            (Some(k), None) => Some(EndDescriptor::DisjointUnion(vec![self.clone(); k as usize])),
            (None, _) => None,
        }
    }

    pub fn union(&self, other: &EndDescriptor) -> EndDescriptor {
        match (self.finite_count(), other.finite_count()) {
            (Some(0), _) => other.clone(),
            (_, Some(0)) => self.clone(),
            (Some(a), Some(b)) => EndDescriptor::Finite(a + b),
            _ => EndDescriptor::DisjointUnion(vec![self.clone(), other.clone()]),
        }
    }

    /// Homeomorphism comparison, decided only inside the algebra.
    pub fn compare(&self, other: &EndDescriptor) -> Comparison {
        let (p, q) = (self.flat(), other.flat());
        if !p.tags.is_empty() || !q.tags.is_empty() {
            return if p == q { Comparison::Equal } else { Comparison::Incomparable };
        }
        let decided = |eq: bool| if eq { Comparison::Equal } else { Comparison::Different };
        match (p.cantor > 0, q.cantor > 0) {
            // countable compact spaces: Cantor–Bendixson rank and degree
            (false, false) => {
                let key = |e: &EndParts| if e.limits > 0 { (2, e.limits) } else { (1, e.points) };
                decided(key(&p) == key(&q))
            }
            (true, true) if p.limits == 0 && q.limits == 0 => decided(p.points == q.points),
            (true, true) => Comparison::Incomparable,
            _ => Comparison::Different,
        }
    }
}

impl fmt::Display for EndDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EndDescriptor::Finite(0) => write!(f, "empty"),
            EndDescriptor::Finite(k) => write!(f, "Finite({k})"),
            EndDescriptor::OmegaPlusOne => write!(f, "OmegaPlusOne"),
            EndDescriptor::ZTwoPoint => write!(f, "ZTwoPoint"),
            EndDescriptor::Cantor => write!(f, "Cantor"),
            EndDescriptor::DisjointUnion(ts) => {
                let parts: Vec<String> = ts.iter().map(|t| t.to_string()).collect();
                write!(f, "{}", parts.join(" ⊔ "))
            }
            EndDescriptor::GraphEnds(tag) => write!(f, "GraphEnds({tag})"),
        }
    }
}

/// The quadruple (genus, boundary components, nonplanar ends, ends).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SurfaceType {
    pub genus: Genus,
    pub boundary: u64,
    pub nonplanar_ends: EndDescriptor,
    pub ends: EndDescriptor,
}

impl SurfaceType {
    pub fn sphere() -> Self {
        SurfaceType::compact(0, 0)
    }

    pub fn compact(genus: u64, boundary: u64) -> Self {
        SurfaceType {
            genus: Genus::Finite(genus),
            boundary,
            nonplanar_ends: EndDescriptor::empty(),
            ends: EndDescriptor::empty(),
        }
    }

    pub fn is_sphere(&self) -> bool {
        *self == SurfaceType::sphere()
    }

    pub fn is_compact(&self) -> bool {
        self.genus.is_finite() && self.ends.is_empty() == Some(true)
    }

    pub fn is_infinite_type(&self) -> Option<bool> {
        if self.genus == Genus::Infinite {
            return Some(true);
        }
        self.ends.is_infinite()
    }

    pub fn compare(&self, other: &SurfaceType) -> Comparison {
        if self.genus != other.genus || self.boundary != other.boundary {
            return Comparison::Different;
        }
        let ends = self.ends.compare(&other.ends);
        let nonplanar = self.nonplanar_ends.compare(&other.nonplanar_ends);
        match (ends, nonplanar) {
            (Comparison::Different, _) | (_, Comparison::Different) => Comparison::Different,
            (Comparison::Equal, Comparison::Equal) => {
                // the pair (E, E^g) is determined when E^g is empty or all of E
                let trivial_marking = |s: &SurfaceType| {
                    s.nonplanar_ends.is_empty() == Some(true) || s.nonplanar_ends == s.ends
                };
                if trivial_marking(self) && trivial_marking(other) {
                    Comparison::Equal
                } else {
                    Comparison::Incomparable
                }
            }
            _ => Comparison::Incomparable,
        }
    }
}

impl fmt::Display for SurfaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.genus, self.boundary, self.nonplanar_ends, self.ends)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("Π must have exactly one boundary component, got {0}")]
    PiBoundary(u64),
    #[error("Π must not be a disk")]
    PiDisk,
    #[error("nonplanar ends {nonplanar} are not a sub-space of ends {ends}")]
    Marking { nonplanar: String, ends: String },
    #[error("{0} surfaces Ω_v carry boundary; only finitely many may")]
    TooManyBoundaries(usize),
    #[error("Ω at {0} is not a node of the graph")]
    ForeignNode(String),
}

/// The decoration Π: one boundary component, not a disk.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PiSpec {
    surface: SurfaceType,
}

impl PiSpec {
    pub fn new(genus: Genus, nonplanar_ends: EndDescriptor, ends: EndDescriptor) -> Result<Self, SurfaceError> {
        let surface = SurfaceType { genus, boundary: 1, nonplanar_ends, ends };
        PiSpec::from_surface(surface)
    }

    pub fn from_surface(surface: SurfaceType) -> Result<Self, SurfaceError> {
        if surface.boundary != 1 {
            return Err(SurfaceError::PiBoundary(surface.boundary));
        }
        if surface.genus == Genus::Finite(0) && surface.ends.is_empty() == Some(true) {
            return Err(SurfaceError::PiDisk);
        }
        let (np, e) = (surface.nonplanar_ends.finite_count(), surface.ends.finite_count());
        let bad_marking = match (np, e) {
            (Some(a), Some(b)) => a > b,
            _ => surface.nonplanar_ends.compare(&EndDescriptor::empty()) == Comparison::Different
                && surface.ends.is_empty() == Some(true),
        };
        // genus accumulates at some end iff it is infinite
        let genus_mismatch = match surface.genus {
            Genus::Finite(_) => surface.nonplanar_ends.is_empty() == Some(false),
            Genus::Infinite => surface.nonplanar_ends.is_empty() == Some(true),
        };
        if bad_marking || genus_mismatch {
            return Err(SurfaceError::Marking {
                nonplanar: surface.nonplanar_ends.to_string(),
                ends: surface.ends.to_string(),
            });
        }
        Ok(PiSpec { surface })
    }

    /// The one-holed torus (a handle).
    pub fn handle() -> Self {
        PiSpec::compact(1)
    }

    pub fn compact(genus: u64) -> Self {
        PiSpec::new(Genus::Finite(genus), EndDescriptor::empty(), EndDescriptor::empty()).expect("compact Π of positive genus")
    }

    pub fn surface(&self) -> &SurfaceType {
        &self.surface
    }

    pub fn is_compact(&self) -> bool {
        self.surface.is_compact()
    }

    pub fn genus(&self) -> Genus {
        self.surface.genus
    }

    pub fn planar_ends(&self) -> Option<EndDescriptor> {
        match (self.surface.ends.finite_count(), self.surface.nonplanar_ends.finite_count()) {
            (Some(e), Some(np)) => Some(EndDescriptor::Finite(e - np)),
            _ if self.surface.nonplanar_ends.is_empty() == Some(true) => Some(self.surface.ends.clone()),
            _ => None,
        }
    }
}

/// Which of the three distinguished conditions Π satisfies:
/// 1 finite genus, 2 finitely many ends all planar, 3 finitely many ends all nonplanar.
pub fn distinguished_conditions(pi: &PiSpec) -> BTreeSet<u8> {
    let s = pi.surface();
    let mut out = BTreeSet::new();
    if s.genus.is_finite() {
        out.insert(1);
    }
    if let Some(e) = s.ends.finite_count() {
        let np = s.nonplanar_ends.finite_count();
        if np == Some(0) {
            out.insert(2);
        }
        if np == Some(e) {
            out.insert(3);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchreierSurfaceSpec {
    pub graph: GraphSpec,
    pub pi: PiSpec,
    omegas: BTreeMap<Node, SurfaceType>,
}

impl SchreierSurfaceSpec {
    pub fn new(graph: GraphSpec, pi: PiSpec) -> Self {
        SchreierSurfaceSpec { graph, pi, omegas: BTreeMap::new() }
    }

    /// Connect-sums `omega` on the back of `V_v`. Spheres are dropped.
    pub fn with_omega(mut self, v: Node, omega: SurfaceType) -> Result<Self, SurfaceError> {
        if let Some(all) = self.graph.all_nodes() {
            if !all.contains(&v) {
                return Err(SurfaceError::ForeignNode(v.to_string()));
            }
        }
        if omega.is_sphere() {
            self.omegas.remove(&v);
        } else {
            self.omegas.insert(v, omega);
        }
        Ok(self)
    }

    pub fn omegas(&self) -> &BTreeMap<Node, SurfaceType> {
        &self.omegas
    }

    pub fn omega(&self, v: &Node) -> SurfaceType {
        self.omegas.get(v).cloned().unwrap_or_else(SurfaceType::sphere)
    }

    pub fn has_non_sphere_omega(&self) -> bool {
        !self.omegas.is_empty()
    }
}

/// What the catalog knows about a graph: vertex count (`None` = infinite), cycle rank, ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphProfile {
    pub vertices: Option<u64>,
    pub betti: Genus,
    pub ends: EndDescriptor,
}

pub fn graph_profile(g: &GraphSpec) -> Result<GraphProfile, String> {
    let infinite = |betti, ends| Ok(GraphProfile { vertices: None, betti, ends });
    match g {
        GraphSpec::CayleyOf { oracle, letters } => {
            let full: BTreeSet<&Gen> = oracle.generators().iter().collect();
            if letters.iter().collect::<BTreeSet<_>>() != full {
                return Err("Cayley graph over a proper subset of generators".into());
            }
            let r = oracle.rank() as u64;
            match oracle.kind() {
                _ if r == 0 => Ok(GraphProfile { vertices: Some(1), betti: Genus::Finite(0), ends: EndDescriptor::empty() }),
                OracleKind::Free if r == 1 => infinite(Genus::Finite(0), EndDescriptor::Finite(2)),
                OracleKind::Free => infinite(Genus::Finite(0), EndDescriptor::Cantor),
                OracleKind::FreeAbelian if r == 1 => infinite(Genus::Finite(0), EndDescriptor::Finite(2)),
                OracleKind::FreeAbelian => infinite(Genus::Infinite, EndDescriptor::Finite(1)),
                OracleKind::Bs1n(_) => infinite(Genus::Infinite, EndDescriptor::Finite(1)),
                OracleKind::CyclicMod(k) => Ok(GraphProfile { vertices: Some(*k), betti: Genus::Finite(1), ends: EndDescriptor::empty() }),
                OracleKind::Opaque(t) => {
                    let n = t.order() as u64;
                    Ok(GraphProfile { vertices: Some(n), betti: Genus::Finite(n * r - n + 1), ends: EndDescriptor::empty() })
                }
                _ => Err(format!("no catalogued end space for {}", oracle.describe())),
            }
        }
        GraphSpec::KernelCosets { letters, weights, .. } => {
            let ws: Vec<i64> = letters.iter().map(|s| weights.get(s).unwrap_or(0)).collect();
            let gcd = ws.iter().fold(0i64, |acc, &k| num_integer::Integer::gcd(&acc, &k));
            match gcd {
                0 => Ok(GraphProfile { vertices: Some(1), betti: Genus::Finite(ws.len() as u64), ends: EndDescriptor::empty() }),
                1 if ws.len() == 1 => infinite(Genus::Finite(0), EndDescriptor::Finite(2)),
                1 => infinite(Genus::Infinite, EndDescriptor::Finite(2)),
                _ => Err("kernel-coset graph is disconnected".into()),
            }
        }
        GraphSpec::FiniteExplicit(fg) => {
            let (v, e, c) = (fg.vertices().len() as u64, fg.edge_count() as u64, fg.component_count() as u64);
            if c != 1 {
                return Err(format!("graph has {c} components"));
            }
            Ok(GraphProfile { vertices: Some(v), betti: Genus::Finite(e + c - v), ends: EndDescriptor::empty() })
        }
        GraphSpec::LazyExplicit(LazyFamily::Line { .. }) => infinite(Genus::Finite(0), EndDescriptor::Finite(2)),
        GraphSpec::LazyExplicit(LazyFamily::Cross { .. }) => infinite(Genus::Finite(0), EndDescriptor::Finite(4)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Exact(SurfaceType),
    Symbolic(String),
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Exact(s) => write!(f, "{s}"),
            Classification::Symbolic(why) => write!(f, "SYMBOLIC ({why})"),
        }
    }
}

fn omega_totals(spec: &SchreierSurfaceSpec) -> Result<(Genus, u64), String> {
    let mut genus = Genus::Finite(0);
    let mut boundary = 0;
    for (v, o) in spec.omegas() {
        if o.ends.is_empty() != Some(true) {
            return Err(format!("Ω at {v} is not compact"));
        }
        genus = genus + o.genus;
        boundary += o.boundary;
    }
    Ok((genus, boundary))
}

pub fn classify(spec: &SchreierSurfaceSpec) -> Classification {
    match classify_inner(spec) {
        Ok(s) => Classification::Exact(s),
        Err(why) => Classification::Symbolic(why),
    }
}

fn classify_inner(spec: &SchreierSurfaceSpec) -> Result<SurfaceType, String> {
    if !spec.pi.is_compact() {
        return Err("Π is not compact; the end space of S_Γ(Π) mixes Π-ends with graph ends".into());
    }
    let profile = graph_profile(&spec.graph)?;
    let (omega_genus, boundary) = omega_totals(spec)?;
    let genus = profile.betti + profile.vertices * spec.pi.genus() + omega_genus;
    let nonplanar_ends = if genus.is_finite() { EndDescriptor::empty() } else { profile.ends.clone() };
    Ok(SurfaceType { genus, boundary, nonplanar_ends, ends: profile.ends })
}

/// The part of S covered by a homeomorphism's domain, measured in vertex pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coverage {
    /// Every vertex front (the domain of a multipush system over all of T).
    AllVertices,
    /// The `⟨s⟩`-orbit of the base node (the domain of a single shift).
    Orbit(Gen),
    /// An explicit finite set of vertex fronts.
    Nodes(BTreeSet<Node>),
}

/// (genus, planar ends, nonplanar ends) of `S ∖ support`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplementInvariant {
    pub genus: Genus,
    pub planar_ends: EndDescriptor,
    pub nonplanar_ends: EndDescriptor,
}

impl ComplementInvariant {
    pub fn compare(&self, other: &ComplementInvariant) -> Comparison {
        if self.genus != other.genus {
            return Comparison::Different;
        }
        match (self.planar_ends.compare(&other.planar_ends), self.nonplanar_ends.compare(&other.nonplanar_ends)) {
            (Comparison::Different, _) | (_, Comparison::Different) => Comparison::Different,
            (Comparison::Equal, Comparison::Equal) => Comparison::Equal,
            _ => Comparison::Incomparable,
        }
    }
}

impl fmt::Display for ComplementInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "genus {}, planar ends {}, nonplanar ends {}", self.genus, self.planar_ends, self.nonplanar_ends)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("complement invariant is not expressible in the descriptor algebra: {0}")]
pub struct Incomparable(pub String);

/// Number of vertex pieces outside the coverage (`None` = infinitely many).
fn uncovered(spec: &SchreierSurfaceSpec, coverage: &Coverage) -> Result<Option<u64>, Incomparable> {
    let g = &spec.graph;
    let total = g.vertex_count().map(|v| v as u64);
    Ok(match coverage {
        Coverage::AllVertices => Some(0),
        Coverage::Nodes(ns) => total.map(|t| t.saturating_sub(ns.len() as u64)),
        Coverage::Orbit(s) => {
            if let Some(t) = total {
                let orbit = g.s_orbit(&g.base_node(), s, t as usize + 1).map_err(|e| Incomparable(e.to_string()))?;
                Some(t - orbit.nodes().len() as u64)
            } else if orbit_is_whole_graph(g, s) {
                Some(0)
            } else {
                None
            }
        }
    })
}

fn orbit_is_whole_graph(g: &GraphSpec, s: &Gen) -> bool {
    match g {
        GraphSpec::LazyExplicit(LazyFamily::Line { letter }) => letter == s,
        GraphSpec::CayleyOf { letters, .. } => letters.len() == 1 && graph_profile(g).is_ok_and(|p| p.ends == EndDescriptor::Finite(2)),
        GraphSpec::KernelCosets { letters, weights, .. } => letters.len() == 1 && weights.get(s).is_some_and(|k| k.abs() == 1),
        _ => false,
    }
}

/// Invariant of `S ∖ (domain minus the omitted Π-copies)`. Omitted copies, uncovered vertex pieces,
/// the back of the graph surface and every Ω_v lie in the complement.
pub fn complement_invariant(
    spec: &SchreierSurfaceSpec,
    omitted: &BTreeSet<Node>,
    coverage: &Coverage,
) -> Result<ComplementInvariant, Incomparable> {
    let profile = graph_profile(&spec.graph).map_err(Incomparable)?;
    if profile.betti != Genus::Finite(0) {
        return Err(Incomparable("the back of a graph with cycles has undetermined genus".into()));
    }
    let (omega_genus, _) = omega_totals(spec).map_err(Incomparable)?;
    let copies = uncovered(spec, coverage)?.map(|u| u + omitted.len() as u64);
    let pi = &spec.pi;
    let pi_planar = pi.planar_ends().ok_or_else(|| Incomparable("planar ends of Π".into()))?;
    let pi_nonplanar = pi.surface().nonplanar_ends.clone();
    let genus = copies * pi.genus() + omega_genus;
    let (planar_copies, nonplanar_copies) = match (pi_planar.times(copies), pi_nonplanar.times(copies)) {
        (Some(p), Some(n)) => (p, n),
        _ => return Err(Incomparable("infinitely many Π-copies with ends".into())),
    };
    // graph ends are reached by the back; they carry genus when infinitely many copies of positive genus remain
    let back_nonplanar = copies.is_none() && pi.genus() != Genus::Finite(0);
    let (planar_ends, nonplanar_ends) = if back_nonplanar {
        (planar_copies, nonplanar_copies.union(&profile.ends))
    } else {
        (planar_copies.union(&profile.ends), nonplanar_copies)
    };
    Ok(ComplementInvariant { genus, planar_ends, nonplanar_ends })
}

/// Boolean-or-Incomparable.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Flag {
    Yes,
    No,
    Incomparable,
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flag::Yes => "true",
            Flag::No => "false",
            Flag::Incomparable => "incomparable",
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FamilyFlags {
    pub c_pi: Flag,
    pub b: Flag,
    pub b_inf: Flag,
}

fn has_infinite_orbit(g: &GraphSpec) -> bool {
    !g.is_finite()
        && g.letters().iter().any(|s| {
            matches!(g.s_orbit(&g.base_node(), s, crate::schreier::DEFAULT_WINDOW), Ok(Orbit::LineSegment { .. }))
        })
}

/// Membership of `ambient` in C(Π), B and B_∞, evaluated on descriptors. `domain` is the
/// coverage of the shift (for C(Π)); B compares complements of the full multipush domain.
pub fn family_membership(pi: &PiSpec, ambient: &SchreierSurfaceSpec, domain: &Coverage) -> FamilyFlags {
    let conditions = distinguished_conditions(pi);
    let c_pi = if conditions.is_empty() || !has_infinite_orbit(&ambient.graph) {
        Flag::No
    } else {
        match complement_invariant(ambient, &BTreeSet::new(), domain) {
            Err(_) => Flag::Incomparable,
            Ok(inv) => {
                let ok = conditions.iter().any(|c| match c {
                    1 => inv.genus.is_finite(),
                    2 => inv.planar_ends.finite_count().is_some(),
                    _ => inv.nonplanar_ends.finite_count().is_some(),
                });
                if ok {
                    Flag::Yes
                } else {
                    Flag::No
                }
            }
        }
    };

    let countable = pi.surface().ends.is_countable();
    let infinite_type = match classify(ambient) {
        Classification::Exact(s) => s.is_infinite_type(),
        // infinitely many copies of a non-disk Π always give infinite type
        Classification::Symbolic(_) => (!ambient.graph.is_finite()).then_some(true),
    };
    let compatible = {
        let omit = |m: usize| -> BTreeSet<Node> {
            ambient.graph.bfs(&ambient.graph.base_node(), usize::MAX).map(|(v, _)| v).take(m).collect()
        };
        match (
            complement_invariant(ambient, &omit(1), &Coverage::AllVertices),
            complement_invariant(ambient, &omit(2), &Coverage::AllVertices),
        ) {
            (Ok(x), Ok(y)) => match x.compare(&y) {
                Comparison::Different => Some(true),
                Comparison::Equal => Some(false),
                Comparison::Incomparable => None,
            },
            _ => None,
        }
    };
    let b = match (countable, infinite_type, compatible) {
        (Some(false), _, _) | (_, Some(false), _) | (_, _, Some(false)) => Flag::No,
        (Some(true), Some(true), Some(true)) => Flag::Yes,
        _ => Flag::Incomparable,
    };
    let b_inf = match (b, pi.surface().is_infinite_type()) {
        (Flag::No, _) | (_, Some(false)) => Flag::No,
        (Flag::Yes, Some(true)) => Flag::Yes,
        _ => Flag::Incomparable,
    };
    FamilyFlags { c_pi, b, b_inf }
}

/// A cell of the surface S_Γ(Π) # Ω_v.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Cell {
    VertexFront(Node),
    /// Front of the edge surface leaving `node` along the positive `letter` direction.
    EdgeFront(Node, Gen),
    PiCopy(Node),
    OmegaCell(Node),
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::VertexFront(v) => write!(f, "V{v}"),
            Cell::EdgeFront(v, s) => write!(f, "E{v}--{s}"),
            Cell::PiCopy(v) => write!(f, "Π{v}"),
            Cell::OmegaCell(v) => write!(f, "Ω{v}"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RegionTag {
    /// The region is exactly the support.
    Exact,
    /// The support reaches the window boundary; only the in-window part is listed.
    Truncated,
    /// Nontrivial word with no detectable support in the window.
    Indeterminate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportRegion {
    pub cells: BTreeSet<Cell>,
    pub window: usize,
    pub tag: RegionTag,
}

impl SupportRegion {
    pub fn empty(window: usize) -> Self {
        SupportRegion { cells: BTreeSet::new(), window, tag: RegionTag::Exact }
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn vertex_nodes(&self) -> BTreeSet<Node> {
        self.cells
            .iter()
            .filter_map(|c| match c {
                Cell::VertexFront(v) => Some(v.clone()),
                _ => None,
            })
            .collect()
    }

    pub fn intersects(&self, other: &SupportRegion) -> bool {
        self.cells.intersection(&other.cells).next().is_some()
    }

    pub fn coverage(&self) -> Coverage {
        Coverage::Nodes(self.vertex_nodes())
    }
}
