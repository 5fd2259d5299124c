use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use super::bs::bs_normal_form_with;
use super::presentation::Presentation;
use super::raag::{raag_normalize, SimpleGraph};
use super::word::{gen, Gen, Letter, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("letter {0} is not in the oracle's alphabet")]
    UnknownLetter(String),
    #[error("invalid oracle: {0}")]
    Invalid(String),
}

/// Finite group given by a multiplication table over elements `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultTable {
    table: Vec<Vec<usize>>,
    identity: usize,
    generators: Vec<(Gen, usize)>,
    inverses: Vec<usize>,
    shortlex: Vec<Word>,
}

impl MultTable {
    pub fn new(table: Vec<Vec<usize>>, identity: usize, generators: Vec<(Gen, usize)>) -> Result<Self, OracleError> {
        let n = table.len();
        let bad = |m: String| Err(OracleError::Invalid(m));
        if n == 0 || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return bad("table must be square with entries below its order".into());
        }
        if identity >= n || (0..n).any(|x| table[identity][x] != x || table[x][identity] != x) {
            return bad("designated identity is not a two-sided identity".into());
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if table[table[x][y]][z] != table[x][table[y][z]] {
                        return bad(format!("not associative at ({x},{y},{z})"));
                    }
                }
            }
        }
        let mut inverses = Vec::with_capacity(n);
        for x in 0..n {
            match (0..n).find(|&y| table[x][y] == identity) {
                Some(y) => inverses.push(y),
                None => return bad(format!("element {x} has no inverse")),
            }
        }
        if generators.iter().any(|&(_, g)| g >= n) {
            return bad("generator image out of range".into());
        }
        let mut out = MultTable { table, identity, generators, inverses, shortlex: Vec::new() };
        out.shortlex = out.shortlex_words()?;
        Ok(out)
    }

    /// Cyclic group of order `k` on generator `name`.
    pub fn cyclic(name: &str, k: usize) -> Self {
        let table = (0..k).map(|x| (0..k).map(|y| (x + y) % k).collect()).collect();
        MultTable::new(table, 0, vec![(gen(name), 1 % k)]).expect("cyclic table is a group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    fn letter_element(&self, l: &Letter) -> Option<usize> {
        let &(_, g) = self.generators.iter().find(|(name, _)| *name == l.gen)?;
        Some(if l.inverse { self.inverses[g] } else { g })
    }

    pub fn evaluate(&self, w: &Word) -> Result<usize, OracleError> {
        w.letters().iter().try_fold(self.identity, |acc, l| {
            let x = self.letter_element(l).ok_or_else(|| OracleError::UnknownLetter(l.gen.to_string()))?;
            Ok(self.table[acc][x])
        })
    }

    /// Shortlex-least word for every element; breadth-first search in letter order.
    fn shortlex_words(&self) -> Result<Vec<Word>, OracleError> {
        let mut letters: Vec<Letter> = self
            .generators
            .iter()
            .flat_map(|(g, _)| [Letter { gen: g.clone(), inverse: false }, Letter { gen: g.clone(), inverse: true }])
            .collect();
        letters.sort();
        let mut words: Vec<Option<Word>> = vec![None; self.order()];
        words[self.identity] = Some(Word::empty());
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for l in &letters {
                let y = self.table[x][self.letter_element(l).expect("own letter")];
                if words[y].is_none() {
                    let mut w = words[x].clone().expect("visited");
                    w.push(l.clone());
                    words[y] = Some(w);
                    queue.push_back(y);
                }
            }
        }
        words
            .into_iter()
            .enumerate()
            .map(|(i, w)| w.ok_or_else(|| OracleError::Invalid(format!("element {i} is not generated"))))
            .collect()
    }

    pub fn word_of(&self, x: usize) -> &Word {
        &self.shortlex[x]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn generator_images(&self) -> &[(Gen, usize)] {
        &self.generators
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleKind {
    Free,
    FreeAbelian,
    CyclicMod(u64),
    Bs1n(u32),
    Raag(SimpleGraph),
    DirectProduct(Vec<GroupOracle>),
    Opaque(MultTable),
}

/// A group with a solvable word problem: `normalize` returns a canonical word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupOracle {
    kind: OracleKind,
    generators: Vec<Gen>,
}

fn default_names(rank: usize) -> Vec<Gen> {
    (0..rank)
        .map(|i| {
            if i < 26 {
                gen(&((b'a' + i as u8) as char).to_string())
            } else {
                gen(&format!("x{i}"))
            }
        })
        .collect()
}

fn distinct(names: &[Gen]) -> Result<(), OracleError> {
    let mut seen = BTreeSet::new();
    match names.iter().find(|g| !seen.insert((*g).clone())) {
        Some(g) => Err(OracleError::Invalid(format!("generator {g} listed twice"))),
        None => Ok(()),
    }
}

impl GroupOracle {
    pub fn free(rank: usize) -> Self {
        GroupOracle { kind: OracleKind::Free, generators: default_names(rank) }
    }

    pub fn free_abelian(rank: usize) -> Self {
        GroupOracle { kind: OracleKind::FreeAbelian, generators: default_names(rank) }
    }

    pub fn cyclic(k: u64) -> Self {
        GroupOracle { kind: OracleKind::CyclicMod(k), generators: default_names(1) }
    }

    pub fn bs1n(n: u32) -> Self {
        GroupOracle { kind: OracleKind::Bs1n(n), generators: vec![gen("a"), gen("t")] }
    }

    pub fn raag(graph: SimpleGraph) -> Self {
        let generators = graph.vertices().cloned().collect();
        GroupOracle { kind: OracleKind::Raag(graph), generators }
    }

    pub fn opaque(table: MultTable) -> Self {
        let generators = table.generators.iter().map(|(g, _)| g.clone()).collect();
        GroupOracle { kind: OracleKind::Opaque(table), generators }
    }

    pub fn direct_product(factors: Vec<GroupOracle>) -> Result<Self, OracleError> {
        let generators: Vec<Gen> = factors.iter().flat_map(|f| f.generators.iter().cloned()).collect();
        distinct(&generators)?;
        Ok(GroupOracle { kind: OracleKind::DirectProduct(factors), generators })
    }

    /// Renames generators (positionally). Raag and Opaque oracles keep their vertex names.
    pub fn with_generators(mut self, names: Vec<Gen>) -> Result<Self, OracleError> {
        match &self.kind {
            OracleKind::Raag(_) | OracleKind::Opaque(_) | OracleKind::DirectProduct(_) => {
                return Err(OracleError::Invalid("generator names of this oracle kind are fixed by its data".into()))
            }
            _ => {}
        }
        if names.len() != self.generators.len() {
            return Err(OracleError::Invalid(format!(
                "expected {} generator names, got {}",
                self.generators.len(),
                names.len()
            )));
        }
        distinct(&names)?;
        self.generators = names;
        Ok(self)
    }

    pub fn kind(&self) -> &OracleKind {
        &self.kind
    }

    pub fn generators(&self) -> &[Gen] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn has_generator(&self, g: &str) -> bool {
        self.generators.iter().any(|x| &**x == g)
    }

    pub fn is_finite(&self) -> bool {
        match &self.kind {
            OracleKind::CyclicMod(_) | OracleKind::Opaque(_) => true,
            OracleKind::Free | OracleKind::FreeAbelian => self.generators.is_empty(),
            OracleKind::Raag(g) => g.vertex_count() == 0,
            OracleKind::Bs1n(_) => false,
            OracleKind::DirectProduct(fs) => fs.iter().all(GroupOracle::is_finite),
        }
    }

    fn check(&self, w: &Word) -> Result<(), OracleError> {
        match w.letters().iter().find(|l| !self.has_generator(&l.gen)) {
            Some(l) => Err(OracleError::UnknownLetter(l.gen.to_string())),
            None => Ok(()),
        }
    }

    /// Canonical word; `w` is trivial iff the result is empty.
    pub fn normalize(&self, w: &Word) -> Result<Word, OracleError> {
        self.check(w)?;
        Ok(match &self.kind {
            OracleKind::Free => w.free_reduce(),
            OracleKind::FreeAbelian => {
                let mut out = Word::empty();
                for g in &self.generators {
                    out = out * Word::power_of(g, w.exponent_of(g));
                }
                out
            }
            OracleKind::CyclicMod(k) => {
                let g = &self.generators[0];
                let e = w.exponent_of(g).rem_euclid(*k as i64);
                Word::power_of(g, e)
            }
            OracleKind::Bs1n(n) => {
                let (a, t) = (&self.generators[0], &self.generators[1]);
                bs_normal_form_with(*n, a, t, w)
                    .map_err(|e| OracleError::UnknownLetter(e.0))?
                    .to_word(a, t)
            }
            OracleKind::Raag(g) => raag_normalize(g, w),
            OracleKind::DirectProduct(factors) => {
                let mut out = Word::empty();
                for f in factors {
                    let part: Word = w.letters().iter().filter(|l| f.has_generator(&l.gen)).cloned().collect();
                    out = out * f.normalize(&part)?;
                }
                out
            }
            OracleKind::Opaque(t) => t.word_of(t.evaluate(w)?).clone(),
        })
    }

    pub fn is_trivial(&self, w: &Word) -> Result<bool, OracleError> {
        Ok(self.normalize(w)?.is_empty())
    }

    pub fn equal(&self, u: &Word, v: &Word) -> Result<bool, OracleError> {
        Ok(self.normalize(u)? == self.normalize(v)?)
    }

    /// A finite presentation of the same group on the same generators.
    pub fn presentation(&self) -> Presentation {
        let relators = match &self.kind {
            OracleKind::Free => Vec::new(),
            OracleKind::FreeAbelian => {
                let mut rs = Vec::new();
                for (i, u) in self.generators.iter().enumerate() {
                    for v in &self.generators[i + 1..] {
                        rs.push(Word::commutator(&Word::power_of(u, 1), &Word::power_of(v, 1)));
                    }
                }
                rs
            }
            OracleKind::CyclicMod(k) => vec![Word::power_of(&self.generators[0], *k as i64)],
            OracleKind::Bs1n(n) => {
                let (a, t) = (&self.generators[0], &self.generators[1]);
                vec![Word::power_of(t, 1) * Word::power_of(a, 1) * Word::power_of(t, -1) * Word::power_of(a, -(*n as i64))]
            }
            OracleKind::Raag(g) => g.relators(),
            OracleKind::DirectProduct(factors) => {
                let mut rs: Vec<Word> = factors.iter().flat_map(|f| f.presentation().relators().to_vec()).collect();
                for (i, f) in factors.iter().enumerate() {
                    for h in &factors[i + 1..] {
                        for u in f.generators() {
                            for v in h.generators() {
                                rs.push(Word::commutator(&Word::power_of(u, 1), &Word::power_of(v, 1)));
                            }
                        }
                    }
                }
                rs
            }
            OracleKind::Opaque(t) => {
                // word(x) · s · word(x s)^-1 for every element x and generator s
                let mut rs = Vec::new();
                for x in 0..t.order() {
                    for (g, s) in &t.generators {
                        let r = (t.word_of(x) * Word::power_of(g, 1) * t.word_of(t.mul(x, *s)).inverse()).free_reduce();
                        if !r.is_empty() {
                            rs.push(r);
                        }
                    }
                }
                rs.sort_by(|a, b| a.shortlex_cmp(b));
                rs.dedup();
                rs
            }
        };
        Presentation::new(self.generators.clone(), relators).expect("catalog relators use own generators")
    }

    pub fn describe(&self) -> String {
        match &self.kind {
            OracleKind::Free => format!("Free({})", self.rank()),
            OracleKind::FreeAbelian => format!("FreeAbelian({})", self.rank()),
            OracleKind::CyclicMod(k) => format!("CyclicMod({k})"),
            OracleKind::Bs1n(n) => format!("BS1n({n})"),
            OracleKind::Raag(g) => format!("Raag({g})"),
            OracleKind::DirectProduct(fs) => {
                let parts: Vec<String> = fs.iter().map(GroupOracle::describe).collect();
                format!("DirectProduct({})", parts.join(", "))
            }
            OracleKind::Opaque(t) => format!("Opaque(order {})", t.order()),
        }
    }
}

/// Oracle-independent convenience: `oracle_is_trivial(o, w)`.
pub fn oracle_is_trivial(o: &GroupOracle, w: &Word) -> Result<bool, OracleError> {
    o.is_trivial(w)
}

/// Symmetric group S3 on generators `s` (a transposition) and `r` (a 3-cycle), as a table.
pub fn symmetric3() -> MultTable {
    // elements are permutations of {0,1,2}; compose as words act: (x*y)(i) = y(x(i))
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [1, 2, 0], [0, 2, 1], [2, 1, 0], [2, 0, 1]];
    let index: BTreeMap<[usize; 3], usize> = perms.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let table = perms
        .iter()
        .map(|x| perms.iter().map(|y| index[&[y[x[0]], y[x[1]], y[x[2]]]]).collect())
        .collect();
    MultTable::new(table, 0, vec![(gen("s"), 1), (gen("r"), 2)]).expect("S3 table is a group")
}
