use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use super::word::{gen, Gen, Letter, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge endpoint {0} is not a vertex")]
    UnknownVertex(String),
    #[error("loop at {0}; defining graphs are simple")]
    Loop(String),
}

/// Simple undirected graph on named vertices; edges are stored with endpoints sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SimpleGraph {
    vertices: BTreeSet<Gen>,
    edges: BTreeSet<(Gen, Gen)>,
}

fn ordered(u: Gen, v: Gen) -> (Gen, Gen) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

impl SimpleGraph {
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator<Item = Gen>,
        E: IntoIterator<Item = (Gen, Gen)>,
    {
        let vertices: BTreeSet<Gen> = vertices.into_iter().collect();
        let mut out = SimpleGraph { vertices, edges: BTreeSet::new() };
        for (u, v) in edges {
            out.add_edge(u, v)?;
        }
        Ok(out)
    }

    pub fn from_names(vertices: &[&str], edges: &[(&str, &str)]) -> Result<Self, GraphError> {
        SimpleGraph::new(vertices.iter().map(|v| gen(v)), edges.iter().map(|(u, v)| (gen(u), gen(v))))
    }

    pub fn path(names: &[&str]) -> Self {
        let edges: Vec<_> = names.windows(2).map(|p| (p[0], p[1])).collect();
        SimpleGraph::from_names(names, &edges).expect("path is simple")
    }

    pub fn add_vertex(&mut self, v: Gen) {
        self.vertices.insert(v);
    }

    pub fn add_edge(&mut self, u: Gen, v: Gen) -> Result<(), GraphError> {
        for x in [&u, &v] {
            if !self.vertices.contains(x) {
                return Err(GraphError::UnknownVertex(x.to_string()));
            }
        }
        if u == v {
            return Err(GraphError::Loop(u.to_string()));
        }
        self.edges.insert(ordered(u, v));
        Ok(())
    }

    pub fn vertices(&self) -> impl Iterator<Item = &Gen> {
        self.vertices.iter()
    }

    pub fn edges(&self) -> impl Iterator<Item = &(Gen, Gen)> {
        self.edges.iter()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, v: &str) -> bool {
        self.vertices.contains(v)
    }

    pub fn adjacent(&self, u: &str, v: &str) -> bool {
        let (a, b) = if u <= v { (u, v) } else { (v, u) };
        self.edges.iter().any(|(x, y)| &**x == a && &**y == b)
    }

    /// Generators commute iff equal or adjacent.
    pub fn commute(&self, u: &str, v: &str) -> bool {
        u == v || self.adjacent(u, v)
    }

    pub fn degree(&self, v: &str) -> usize {
        self.edges.iter().filter(|(x, y)| &**x == v || &**y == v).count()
    }

    pub fn neighbors<'a>(&'a self, v: &'a str) -> impl Iterator<Item = &'a Gen> + 'a {
        self.edges.iter().filter_map(move |(x, y)| {
            if &**x == v {
                Some(y)
            } else if &**y == v {
                Some(x)
            } else {
                None
            }
        })
    }

    pub fn induced<'a, I: IntoIterator<Item = &'a str>>(&self, keep: I) -> Result<Self, GraphError> {
        let mut vertices = BTreeSet::new();
        for v in keep {
            if !self.vertices.contains(v) {
                return Err(GraphError::UnknownVertex(v.to_string()));
            }
            vertices.insert(gen(v));
        }
        let edges = self
            .edges
            .iter()
            .filter(|(u, v)| vertices.contains(u) && vertices.contains(v))
            .cloned()
            .collect();
        Ok(SimpleGraph { vertices, edges })
    }

    /// Vertex-disjoint union; shared names are identified.
    pub fn union(&self, other: &SimpleGraph) -> SimpleGraph {
        SimpleGraph {
            vertices: self.vertices.union(&other.vertices).cloned().collect(),
            edges: self.edges.union(&other.edges).cloned().collect(),
        }
    }

    pub fn is_connected(&self) -> bool {
        let Some(start) = self.vertices.iter().next() else { return true };
        let mut seen = BTreeSet::from([start.clone()]);
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(v) = queue.pop_front() {
            for u in self.neighbors(&v) {
                if seen.insert(u.clone()) {
                    queue.push_back(u.clone());
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    /// Degree sequence plus connectivity; enough to recognise paths and stars in tests.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.vertices.iter().map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    /// Commutator relators `[u,v]` for every edge.
    pub fn relators(&self) -> Vec<Word> {
        self.edges
            .iter()
            .map(|(u, v)| Word::commutator(&Word::power_of(u, 1), &Word::power_of(v, 1)))
            .collect()
    }
}

impl fmt::Display for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<&str> = self.vertices.iter().map(|v| &**v).collect();
        let es: Vec<String> = self.edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
        write!(f, "V={{{}}} E={{{}}}", vs.join(","), es.join(","))
    }
}

/// Reduces `w` in the RAAG: cancels `x ... x^-1` pairs separated only by letters commuting with `x`.
fn raag_reduce(g: &SimpleGraph, w: &Word) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    'letters: for y in w.letters() {
        let mut i = out.len();
        while i > 0 {
            let x = &out[i - 1];
            if x.gen == y.gen {
                if x.inverse != y.inverse {
                    out.remove(i - 1);
                    continue 'letters;
                }
                break;
            }
            if !g.adjacent(&x.gen, &y.gen) {
                break;
            }
            i -= 1;
        }
        out.push(y.clone());
    }
    out
}

/// Shortlex-least representative: a reduced word is rearranged by repeatedly extracting
/// the least letter that can be commuted to the front.
pub fn raag_normalize(g: &SimpleGraph, w: &Word) -> Word {
    let mut rest = raag_reduce(g, w);
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let mut best: Option<usize> = None;
        for i in 0..rest.len() {
            let front_movable = rest[..i].iter().all(|x| x.gen != rest[i].gen && g.adjacent(&x.gen, &rest[i].gen));
            if front_movable && best.is_none_or(|b| rest[i] < rest[b]) {
                best = Some(i);
            }
        }
        let i = best.expect("the first letter is always movable");
        out.push(rest.remove(i));
    }
    Word::from_letters(out)
}

/// Decides equality by exhaustive closure under adjacent commutations and cancellations,
/// starting from `u v^-1`. Exponential; for cross-checking on short words only.
pub fn raag_equal_brute_force(g: &SimpleGraph, u: &Word, v: &Word) -> bool {
    let start = (u * v.inverse()).into_letters();
    let mut seen: HashSet<Vec<Letter>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        if x.is_empty() {
            return true;
        }
        for i in 0..x.len().saturating_sub(1) {
            let (p, q) = (&x[i], &x[i + 1]);
            let next = if p.cancels(q) {
                let mut y = x.clone();
                y.drain(i..i + 2);
                y
            } else if p.gen != q.gen && g.adjacent(&p.gen, &q.gen) {
                let mut y = x.clone();
                y.swap(i, i + 1);
                y
            } else {
                continue;
            };
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    false
}
