//! Labeled Schreier graphs Γ(G,T,H), explored lazily from canonical coset labels.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::words::{exponent_sum, gen, signed_letters, Gen, GroupOracle, Letter, OracleError, OracleKind, WeightMap, Word};

pub const DEFAULT_WINDOW: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchreierError {
    #[error("letter {0} is not an edge label of this graph")]
    UnknownLetter(String),
    #[error("node {0} does not belong to this graph")]
    ForeignNode(String),
    #[error("invalid graph: {0}")]
    Invalid(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// A coset label. Equality of nodes is equality of labels.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Node {
    Int(i64),
    Pair(i64, i64),
    Vector(Vec<i64>),
    Word(Word),
    Id(Arc<str>),
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Int(k) => write!(f, "{k}"),
            Node::Pair(x, y) => write!(f, "({x},{y})"),
            Node::Vector(v) => {
                let parts: Vec<String> = v.iter().map(i64::to_string).collect();
                write!(f, "({})", parts.join(","))
            }
            Node::Word(w) => write!(f, "{w}"),
            Node::Id(s) => write!(f, "{s}"),
        }
    }
}

/// A finite graph whose edges with a given label form a permutation of the vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGraph {
    vertices: Vec<Gen>,
    letters: Vec<Gen>,
    forward: BTreeMap<Gen, BTreeMap<Gen, Gen>>,
    backward: BTreeMap<Gen, BTreeMap<Gen, Gen>>,
}

impl FiniteGraph {
    /// `edges` are `(from, label, to)`. Every label must act as a permutation.
    pub fn new(vertices: Vec<Gen>, edges: Vec<(Gen, Gen, Gen)>) -> Result<Self, SchreierError> {
        let vset: BTreeSet<Gen> = vertices.iter().cloned().collect();
        if vset.len() != vertices.len() || vertices.is_empty() {
            return Err(SchreierError::Invalid("vertices must be nonempty and distinct".into()));
        }
        let mut forward: BTreeMap<Gen, BTreeMap<Gen, Gen>> = BTreeMap::new();
        let mut backward: BTreeMap<Gen, BTreeMap<Gen, Gen>> = BTreeMap::new();
        let mut letters = Vec::new();
        for (from, label, to) in edges {
            for v in [&from, &to] {
                if !vset.contains(v) {
                    return Err(SchreierError::Invalid(format!("edge endpoint {v} is not a vertex")));
                }
            }
            if !letters.contains(&label) {
                letters.push(label.clone());
            }
            if forward.entry(label.clone()).or_default().insert(from.clone(), to.clone()).is_some() {
                return Err(SchreierError::Invalid(format!("two {label}-edges leave {from}")));
            }
            if backward.entry(label.clone()).or_default().insert(to.clone(), from.clone()).is_some() {
                return Err(SchreierError::Invalid(format!("two {label}-edges enter {to}")));
            }
        }
        for l in &letters {
            if forward[l].len() != vertices.len() {
                return Err(SchreierError::Invalid(format!("label {l} is not defined at every vertex")));
            }
        }
        Ok(FiniteGraph { vertices, letters, forward, backward })
    }

    /// Vertices `0..n`, with `letter` sending `i` to `i+1 mod n`.
    pub fn cycle(n: usize, letter: &str) -> Self {
        let vs: Vec<Gen> = (0..n).map(|i| gen(&i.to_string())).collect();
        let edges = (0..n).map(|i| (vs[i].clone(), gen(letter), vs[(i + 1) % n].clone())).collect();
        FiniteGraph::new(vs, edges).expect("cycle is a permutation graph")
    }

    pub fn vertices(&self) -> &[Gen] {
        &self.vertices
    }

    pub fn letters(&self) -> &[Gen] {
        &self.letters
    }

    /// Edges `(from, label, to)` in vertex then label order.
    pub fn edges(&self) -> Vec<(Gen, Gen, Gen)> {
        let mut out = Vec::new();
        for v in &self.vertices {
            for l in &self.letters {
                out.push((v.clone(), l.clone(), self.forward[l][v].clone()));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.len() * self.letters.len()
    }

    pub fn component_count(&self) -> usize {
        let mut seen = HashSet::new();
        let mut count = 0;
        for v in &self.vertices {
            if !seen.insert(v.clone()) {
                continue;
            }
            count += 1;
            let mut queue = VecDeque::from([v.clone()]);
            while let Some(u) = queue.pop_front() {
                for l in &self.letters {
                    for next in [&self.forward[l][&u], &self.backward[l][&u]] {
                        if seen.insert(next.clone()) {
                            queue.push_back(next.clone());
                        }
                    }
                }
            }
        }
        count
    }

    fn step(&self, v: &Gen, l: &Letter) -> Option<Gen> {
        let table = if l.inverse { &self.backward } else { &self.forward };
        table.get(&l.gen)?.get(v).cloned()
    }
}

/// Infinite graphs with a closed-form neighbor rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LazyFamily {
    /// ℤ with `letter` acting as +1.
    Line { letter: Gen },
    /// The union of the two coordinate axes in ℤ², meeting at the origin.
    /// `horizontal` translates the x-axis, `vertical` the y-axis; off its axis a letter has no edge.
    Cross { horizontal: Gen, vertical: Gen },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphSpec {
    CayleyOf { oracle: GroupOracle, letters: Vec<Gen> },
    KernelCosets { oracle: GroupOracle, letters: Vec<Gen>, weights: WeightMap },
    FiniteExplicit(FiniteGraph),
    LazyExplicit(LazyFamily),
}

/// Descriptor of an `⟨s⟩`-orbit as seen inside a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Orbit {
    /// Closes within the window; nodes in order `v, vs, vs², …`.
    FiniteCycle(Vec<Node>),
    /// Did not close within the window; nodes from `v s^-back` to `v s^front`.
    LineSegment { nodes: Vec<Node>, start: usize },
    /// The letter has no edge at `v` (partial tracks only).
    Fixed,
}

impl Orbit {
    pub fn cycle_length(&self) -> Option<usize> {
        match self {
            Orbit::FiniteCycle(ns) => Some(ns.len()),
            _ => None,
        }
    }

    pub fn nodes(&self) -> &[Node] {
        match self {
            Orbit::FiniteCycle(ns) | Orbit::LineSegment { nodes: ns, .. } => ns,
            Orbit::Fixed => &[],
        }
    }
}

impl fmt::Display for Orbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Orbit::FiniteCycle(ns) => write!(f, "FiniteCycle({})", ns.len()),
            Orbit::LineSegment { nodes, .. } => write!(f, "LineSegment({} nodes)", nodes.len()),
            Orbit::Fixed => write!(f, "Fixed"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub from: Node,
    pub label: Gen,
    pub to: Node,
}

/// Nodes within distance `radius` of `center` (breadth-first order) and the labeled edges among them.
#[derive(Clone, Debug)]
pub struct Ball {
    pub center: Node,
    pub radius: usize,
    pub nodes: Vec<Node>,
    pub dist: HashMap<Node, usize>,
    pub edges: Vec<Edge>,
}

impl Ball {
    pub fn contains(&self, v: &Node) -> bool {
        self.dist.contains_key(v)
    }
}

/// Lazy breadth-first traversal yielding `(node, distance)`.
pub struct Bfs<'a> {
    graph: &'a GraphSpec,
    letters: Vec<Letter>,
    radius: usize,
    seen: HashSet<Node>,
    queue: VecDeque<(Node, usize)>,
}

impl Iterator for Bfs<'_> {
    type Item = (Node, usize);

    fn next(&mut self) -> Option<(Node, usize)> {
        let (v, d) = self.queue.pop_front()?;
        if d < self.radius {
            for l in &self.letters {
                if !self.graph.has_edge(&v, l) {
                    continue;
                }
                let u = self.graph.step(&v, l).expect("own letters step");
                if self.seen.insert(u.clone()) {
                    self.queue.push_back((u, d + 1));
                }
            }
        }
        Some((v, d))
    }
}

impl GraphSpec {
    pub fn cayley(oracle: GroupOracle) -> Self {
        let letters = oracle.generators().to_vec();
        GraphSpec::CayleyOf { oracle, letters }
    }

    pub fn kernel_cosets(oracle: GroupOracle, weights: WeightMap) -> Result<Self, SchreierError> {
        let letters = oracle.generators().to_vec();
        for r in oracle.presentation().relators() {
            let k = exponent_sum(r, &weights).map_err(|e| SchreierError::Invalid(e.to_string()))?;
            if k != 0 {
                return Err(SchreierError::Invalid(format!("weight map does not kill relator {r}")));
            }
        }
        Ok(GraphSpec::KernelCosets { oracle, letters, weights })
    }

    pub fn cycle(n: usize, letter: &str) -> Self {
        GraphSpec::FiniteExplicit(FiniteGraph::cycle(n, letter))
    }

    pub fn line(letter: &str) -> Self {
        GraphSpec::LazyExplicit(LazyFamily::Line { letter: gen(letter) })
    }

    pub fn cross(horizontal: &str, vertical: &str) -> Self {
        GraphSpec::LazyExplicit(LazyFamily::Cross { horizontal: gen(horizontal), vertical: gen(vertical) })
    }

    /// Edge labels T.
    pub fn letters(&self) -> Vec<Gen> {
        match self {
            GraphSpec::CayleyOf { letters, .. } | GraphSpec::KernelCosets { letters, .. } => letters.clone(),
            GraphSpec::FiniteExplicit(g) => g.letters().to_vec(),
            GraphSpec::LazyExplicit(LazyFamily::Line { letter }) => vec![letter.clone()],
            GraphSpec::LazyExplicit(LazyFamily::Cross { horizontal, vertical }) => {
                vec![horizontal.clone(), vertical.clone()]
            }
        }
    }

    pub fn has_letter(&self, g: &str) -> bool {
        self.letters().iter().any(|x| &**x == g)
    }

    /// False only for graphs with partial tracks, which are not Schreier graphs.
    pub fn is_schreier(&self) -> bool {
        !matches!(self, GraphSpec::LazyExplicit(LazyFamily::Cross { .. }))
    }

    pub fn base_node(&self) -> Node {
        match self {
            GraphSpec::CayleyOf { oracle, .. } => match oracle.kind() {
                OracleKind::FreeAbelian => Node::Vector(vec![0; oracle.rank()]),
                _ => Node::Word(Word::empty()),
            },
            GraphSpec::KernelCosets { .. } | GraphSpec::LazyExplicit(LazyFamily::Line { .. }) => Node::Int(0),
            GraphSpec::FiniteExplicit(g) => Node::Id(g.vertices()[0].clone()),
            GraphSpec::LazyExplicit(LazyFamily::Cross { .. }) => Node::Pair(0, 0),
        }
    }

    /// `None` when the vertex set is not known to be finite.
    pub fn vertex_count(&self) -> Option<usize> {
        match self {
            GraphSpec::FiniteExplicit(g) => Some(g.vertices().len()),
            GraphSpec::KernelCosets { letters, weights, .. } => {
                letters.iter().all(|s| weights.get(s) == Some(0)).then_some(1)
            }
            GraphSpec::CayleyOf { oracle, .. } => match oracle.kind() {
                OracleKind::CyclicMod(k) => Some(*k as usize),
                OracleKind::Opaque(t) => Some(t.order()),
                _ if oracle.is_finite() => self.all_nodes().map(|v| v.len()),
                _ => None,
            },
            GraphSpec::LazyExplicit(_) => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.vertex_count().is_some()
    }

    /// Every node, for finite graphs.
    pub fn all_nodes(&self) -> Option<Vec<Node>> {
        match self {
            GraphSpec::FiniteExplicit(g) => Some(g.vertices().iter().map(|v| Node::Id(v.clone())).collect()),
            GraphSpec::LazyExplicit(_) => None,
            GraphSpec::KernelCosets { letters, weights, .. } => {
                letters.iter().all(|s| weights.get(s) == Some(0)).then(|| vec![Node::Int(0)])
            }
            GraphSpec::CayleyOf { oracle, .. } => {
                if !oracle.is_finite() {
                    return None;
                }
                Some(self.bfs(&self.base_node(), usize::MAX).map(|(v, _)| v).collect())
            }
        }
    }

    fn check_letter(&self, l: &Letter) -> Result<(), SchreierError> {
        if self.has_letter(&l.gen) {
            Ok(())
        } else {
            Err(SchreierError::UnknownLetter(l.gen.to_string()))
        }
    }

    /// Whether `v` carries an `l`-edge. Always true on Schreier graphs.
    pub fn has_edge(&self, v: &Node, l: &Letter) -> bool {
        match (self, v) {
            (GraphSpec::LazyExplicit(LazyFamily::Cross { horizontal, vertical }), Node::Pair(x, y)) => {
                (l.gen == *horizontal && *y == 0) || (l.gen == *vertical && *x == 0)
            }
            _ => self.has_letter(&l.gen),
        }
    }

    /// The `l`-neighbor of `v`: right multiplication on coset labels. Nodes without an
    /// `l`-edge (partial tracks) are returned unchanged.
    pub fn step(&self, v: &Node, l: &Letter) -> Result<Node, SchreierError> {
        self.check_letter(l)?;
        let foreign = || SchreierError::ForeignNode(v.to_string());
        match (self, v) {
            (GraphSpec::CayleyOf { oracle, .. }, Node::Vector(xs)) if matches!(oracle.kind(), OracleKind::FreeAbelian) => {
                let i = oracle.generators().iter().position(|g| *g == l.gen).ok_or_else(foreign)?;
                let mut ys = xs.clone();
                ys[i] += l.sign();
                Ok(Node::Vector(ys))
            }
            (GraphSpec::CayleyOf { oracle, .. }, Node::Word(u)) => {
                if matches!(oracle.kind(), OracleKind::Free) {
                    let mut letters = u.letters().to_vec();
                    if letters.last().is_some_and(|x| x.cancels(l)) {
                        letters.pop();
                    } else {
                        letters.push(l.clone());
                    }
                    return Ok(Node::Word(Word::from_letters(letters)));
                }
                let mut next = u.clone();
                next.push(l.clone());
                Ok(Node::Word(oracle.normalize(&next)?))
            }
            (GraphSpec::KernelCosets { weights, .. }, Node::Int(k)) => {
                let f = weights.get(&l.gen).ok_or_else(|| SchreierError::UnknownLetter(l.gen.to_string()))?;
                Ok(Node::Int(k + l.sign() * f))
            }
            (GraphSpec::FiniteExplicit(g), Node::Id(id)) => g.step(id, l).map(Node::Id).ok_or_else(foreign),
            (GraphSpec::LazyExplicit(LazyFamily::Line { .. }), Node::Int(k)) => Ok(Node::Int(k + l.sign())),
            (GraphSpec::LazyExplicit(LazyFamily::Cross { horizontal, .. }), Node::Pair(x, y)) => {
                if !self.has_edge(v, l) {
                    return Ok(v.clone());
                }
                if l.gen == *horizontal {
                    Ok(Node::Pair(x + l.sign(), *y))
                } else {
                    Ok(Node::Pair(*x, y + l.sign()))
                }
            }
            _ => Err(foreign()),
        }
    }

    /// The coset reached from `v` by reading `w` left to right (`v·w`).
    pub fn walk(&self, v: &Node, w: &Word) -> Result<Node, SchreierError> {
        w.letters().iter().try_fold(v.clone(), |cur, l| self.step(&cur, l))
    }

    pub fn bfs(&self, start: &Node, radius: usize) -> Bfs<'_> {
        Bfs {
            graph: self,
            letters: signed_letters(&self.letters()),
            radius,
            seen: HashSet::from([start.clone()]),
            queue: VecDeque::from([(start.clone(), 0)]),
        }
    }

    pub fn ball(&self, center: &Node, radius: usize) -> Ball {
        let mut nodes = Vec::new();
        let mut dist = HashMap::new();
        for (v, d) in self.bfs(center, radius) {
            dist.insert(v.clone(), d);
            nodes.push(v);
        }
        let mut edges = Vec::new();
        for v in &nodes {
            for s in self.letters() {
                let l = Letter { gen: s.clone(), inverse: false };
                if !self.has_edge(v, &l) {
                    continue;
                }
                let u = self.step(v, &l).expect("own letter");
                if dist.contains_key(&u) {
                    edges.push(Edge { from: v.clone(), label: s.clone(), to: u });
                }
            }
        }
        Ball { center: center.clone(), radius, nodes, dist, edges }
    }

    pub fn s_orbit(&self, v: &Node, s: &Gen, window: usize) -> Result<Orbit, SchreierError> {
        let fwd = Letter { gen: s.clone(), inverse: false };
        self.check_letter(&fwd)?;
        if !self.has_edge(v, &fwd) {
            return Ok(Orbit::Fixed);
        }
        let mut forward = vec![v.clone()];
        let mut cur = v.clone();
        for _ in 0..window.max(1) {
            cur = self.step(&cur, &fwd)?;
            if cur == *v {
                return Ok(Orbit::FiniteCycle(forward));
            }
            forward.push(cur.clone());
        }
        let seen: HashSet<&Node> = forward.iter().collect();
        let back = fwd.inv();
        let mut backward = Vec::new();
        let mut cur = v.clone();
        for _ in 0..window.max(1) {
            cur = self.step(&cur, &back)?;
            if seen.contains(&cur) {
                break;
            }
            backward.push(cur.clone());
        }
        let start = backward.len();
        backward.reverse();
        backward.extend(forward);
        Ok(Orbit::LineSegment { nodes: backward, start })
    }

    /// Reads a node label in this graph's notation.
    pub fn parse_node(&self, text: &str) -> Result<Node, SchreierError> {
        let text = text.trim();
        let bad = || SchreierError::ForeignNode(text.to_string());
        let ints = |t: &str| -> Option<Vec<i64>> {
            let inner = t.strip_prefix('(')?.strip_suffix(')')?;
            inner.split(',').map(|p| p.trim().parse().ok()).collect()
        };
        match self {
            GraphSpec::CayleyOf { oracle, .. } => {
                if let (OracleKind::FreeAbelian, Some(xs)) = (oracle.kind(), ints(text)) {
                    return if xs.len() == oracle.rank() { Ok(Node::Vector(xs)) } else { Err(bad()) };
                }
                let w: Word = text.parse().map_err(|_| bad())?;
                self.walk(&self.base_node(), &w)
            }
            GraphSpec::KernelCosets { .. } | GraphSpec::LazyExplicit(LazyFamily::Line { .. }) => {
                text.parse().map(Node::Int).map_err(|_| bad())
            }
            GraphSpec::FiniteExplicit(g) => {
                g.vertices().iter().find(|v| &***v == text).map(|v| Node::Id(v.clone())).ok_or_else(bad)
            }
            GraphSpec::LazyExplicit(LazyFamily::Cross { .. }) => match ints(text).as_deref() {
                Some(&[x, y]) if x == 0 || y == 0 => Ok(Node::Pair(x, y)),
                _ => Err(bad()),
            },
        }
    }

    pub fn describe(&self) -> String {
        match self {
            GraphSpec::CayleyOf { oracle, .. } => format!("CayleyOf({})", oracle.describe()),
            GraphSpec::KernelCosets { oracle, .. } => format!("KernelCosets({})", oracle.describe()),
            GraphSpec::FiniteExplicit(g) => format!("FiniteExplicit({} vertices)", g.vertices().len()),
            GraphSpec::LazyExplicit(LazyFamily::Line { .. }) => "Line".into(),
            GraphSpec::LazyExplicit(LazyFamily::Cross { .. }) => "Cross".into(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::w;

    fn letter(s: &str) -> Letter {
        w(s).letters()[0].clone()
    }

    #[test]
    fn step_examples() {
        let z2 = GraphSpec::cayley(GroupOracle::free_abelian(2));
        assert_eq!(z2.step(&z2.base_node(), &letter("a")).unwrap(), Node::Vector(vec![1, 0]));
        let c3 = GraphSpec::cycle(3, "t");
        assert_eq!(c3.step(&Node::Id(gen("2")), &letter("t")).unwrap(), Node::Id(gen("0")));
        let f2 = GraphSpec::cayley(GroupOracle::free(2));
        assert_eq!(f2.step(&Node::Word(w("a b")), &letter("b^-1")).unwrap(), Node::Word(w("a")));
        assert!(matches!(f2.step(&f2.base_node(), &letter("c")), Err(SchreierError::UnknownLetter(_))));
    }

    #[test]
    fn ball_examples() {
        let f2 = GraphSpec::cayley(GroupOracle::free(2));
        assert_eq!(f2.ball(&f2.base_node(), 1).nodes.len(), 5);
        let z2 = GraphSpec::cayley(GroupOracle::free_abelian(2));
        assert_eq!(z2.ball(&z2.base_node(), 1).nodes.len(), 5);
        let c3 = GraphSpec::cycle(3, "t");
        let b = c3.ball(&c3.base_node(), 2);
        assert_eq!(b.nodes.len(), 3);
        assert_eq!(b.edges.len(), 3);
    }

    #[test]
    fn orbit_examples() {
        let c3 = GraphSpec::cycle(3, "t");
        assert_eq!(c3.s_orbit(&c3.base_node(), &gen("t"), 16).unwrap().cycle_length(), Some(3));
        let z2 = GraphSpec::cayley(GroupOracle::free_abelian(2));
        assert!(matches!(z2.s_orbit(&z2.base_node(), &gen("a"), 16).unwrap(), Orbit::LineSegment { .. }));
        // a loop: Hg = Hgs
        let loop_graph = FiniteGraph::new(
            vec![gen("u"), gen("v")],
            vec![
                (gen("u"), gen("s"), gen("u")),
                (gen("v"), gen("s"), gen("v")),
                (gen("u"), gen("t"), gen("v")),
                (gen("v"), gen("t"), gen("u")),
            ],
        )
        .unwrap();
        let g = GraphSpec::FiniteExplicit(loop_graph);
        assert_eq!(g.s_orbit(&g.base_node(), &gen("s"), 16).unwrap().cycle_length(), Some(1));
    }

    #[test]
    fn kernel_cosets() {
        let g = GraphSpec::kernel_cosets(GroupOracle::bs1n(2), WeightMap::from_pairs([("a", 0), ("t", 1)])).unwrap();
        assert_eq!(g.walk(&g.base_node(), &w("t a t a^-1")).unwrap(), Node::Int(2));
        assert!(GraphSpec::kernel_cosets(GroupOracle::bs1n(2), WeightMap::from_pairs([("a", 1), ("t", 1)])).is_err());
    }

    #[test]
    fn cross_tracks() {
        let g = GraphSpec::cross("h_a", "h_b");
        let off = Node::Pair(0, 3);
        assert!(!g.has_edge(&off, &letter("h_a")));
        assert_eq!(g.step(&off, &letter("h_a")).unwrap(), off);
        assert_eq!(g.ball(&g.base_node(), 1).nodes.len(), 5);
        assert_eq!(g.ball(&g.base_node(), 2).nodes.len(), 9);
        assert_eq!(g.s_orbit(&off, &gen("h_a"), 4).unwrap(), Orbit::Fixed);
    }

    #[test]
    fn invalid_finite_graph() {
        let bad = FiniteGraph::new(
            vec![gen("0"), gen("1")],
            vec![(gen("0"), gen("t"), gen("1")), (gen("1"), gen("t"), gen("1"))],
        );
        assert!(bad.is_err());
    }
}
