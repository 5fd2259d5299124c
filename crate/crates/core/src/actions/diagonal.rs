use std::collections::BTreeSet;
use std::fmt;

use super::{ActionError, Evaluation, Verdict, Witness};
use crate::words::{zero_sum_presentation, Gen, GroupOracle, Letter, WeightMap, Word, ZeroSumPresentation};

/// One factor `G_i` of a diagonal system: it acts diagonally on its Π-copies while `push`
/// moves them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalFactor {
    pub oracle: GroupOracle,
    pub weights: WeightMap,
    pub zero_sum: ZeroSumPresentation,
    pub push: Gen,
}

/// Augmented generators `ḡ·x_i^{f(g)}` for several factors at once.
///
/// Diagonal parts commute with the pushes and with other factors' diagonal parts, so an element
/// is determined by its push word and its image in each factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalSystem {
    factors: Vec<DiagonalFactor>,
}

#[derive(Clone, Copy)]
enum Role {
    Push,
    Augmented,
    Original(i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedDiagonal {
    /// Freely reduced word in the push letters.
    pub x_word: Word,
    /// Canonical form in each factor, in its original generators.
    pub factors: Vec<Word>,
}

impl NormalizedDiagonal {
    pub fn is_trivial(&self) -> bool {
        self.x_word.is_empty() && self.factors.iter().all(Word::is_empty)
    }
}

impl fmt::Display for NormalizedDiagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x: {}", self.x_word)?;
        for (i, w) in self.factors.iter().enumerate() {
            write!(f, "; G{}: {w}", i + 1)?;
        }
        Ok(())
    }
}

impl DiagonalSystem {
    /// Each factor is `(oracle, weight map, push letter)`; the weights are turned into a
    /// zero-sum presentation of the oracle's presentation.
    pub fn new(factors: Vec<(GroupOracle, WeightMap, Gen)>) -> Result<Self, ActionError> {
        let mut taken: BTreeSet<Gen> = BTreeSet::new();
        let mut out = Vec::new();
        for (oracle, weights, push) in factors {
            let zero_sum = zero_sum_presentation(&oracle.presentation(), &weights)?;
            for g in zero_sum.presentation.generators().iter().chain([&push]) {
                if !taken.insert(g.clone()) {
                    return Err(ActionError::Invalid(format!("letter {g} is used by two factors")));
                }
            }
            out.push(DiagonalFactor { oracle, weights, zero_sum, push });
        }
        if out.is_empty() {
            return Err(ActionError::Invalid("no factors".into()));
        }
        Ok(DiagonalSystem { factors: out })
    }

    pub fn factors(&self) -> &[DiagonalFactor] {
        &self.factors
    }

    /// All letters a word may use: augmented generators and push letters.
    pub fn alphabet(&self) -> Vec<Gen> {
        self.factors
            .iter()
            .flat_map(|f| f.zero_sum.presentation.generators().iter().cloned().chain([f.push.clone()]))
            .collect()
    }

    /// Factor index and role of a letter. Augmented names win over original ones; the two only
    /// coincide for weight-1 generators, where `y_g = g`.
    fn locate(&self, g: &Gen) -> Option<(usize, Role)> {
        let found = |pick: &dyn Fn(&DiagonalFactor) -> Option<Role>| {
            self.factors.iter().enumerate().find_map(|(i, f)| pick(f).map(|r| (i, r)))
        };
        found(&|f| (f.push == *g).then_some(Role::Push))
            .or_else(|| found(&|f| f.zero_sum.presentation.generators().contains(g).then_some(Role::Augmented)))
            .or_else(|| found(&|f| f.weights.get(g).map(Role::Original)))
    }

    /// Accepts augmented generators, original generators `g` (read as `ḡ·x_i^{f(g)}`) and push
    /// letters.
    pub fn normalize(&self, w: &Word) -> Result<NormalizedDiagonal, ActionError> {
        let mut x = Vec::new();
        let mut parts = vec![Word::empty(); self.factors.len()];
        for l in w.letters() {
            let (i, role) = self.locate(&l.gen).ok_or_else(|| ActionError::UnknownLetter(l.gen.to_string()))?;
            let f = &self.factors[i];
            let single = Word::from_letters(vec![l.clone()]);
            let (k, part) = match role {
                Role::Push => (1, Word::empty()),
                Role::Augmented => (1, f.zero_sum.rewrite_to_old(&single)),
                Role::Original(k) => (k, single),
            };
            let x_letter = Letter { gen: f.push.clone(), inverse: l.inverse != (k < 0) };
            x.extend(std::iter::repeat(x_letter).take(k.unsigned_abs() as usize));
            parts[i] = std::mem::take(&mut parts[i]) * part;
        }
        let factors = self
            .factors
            .iter()
            .zip(parts)
            .map(|(f, p)| f.oracle.normalize(&p))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(NormalizedDiagonal { x_word: Word::from_letters(x).free_reduce(), factors })
    }

    pub fn multiply(&self, u: &NormalizedDiagonal, v: &NormalizedDiagonal) -> Result<NormalizedDiagonal, ActionError> {
        let factors = self
            .factors
            .iter()
            .zip(u.factors.iter().zip(&v.factors))
            .map(|(f, (a, b))| f.oracle.normalize(&(a * b)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(NormalizedDiagonal { x_word: (&u.x_word * &v.x_word).free_reduce(), factors })
    }

    /// Image of the original generator `g` of factor `i`, namely `ḡ·x_i^{f(g)}`.
    pub fn psi(&self, i: usize, g: &Gen) -> Result<NormalizedDiagonal, ActionError> {
        let f = self.factors.get(i).ok_or_else(|| ActionError::Invalid(format!("no factor {i}")))?;
        let k = f.weights.get(g).ok_or_else(|| ActionError::UnknownLetter(g.to_string()))?;
        let mut factors = vec![Word::empty(); self.factors.len()];
        factors[i] = f.oracle.normalize(&Word::power_of(g, 1))?;
        Ok(NormalizedDiagonal { x_word: Word::power_of(&f.push, k), factors })
    }

    pub fn is_trivial(&self, w: &Word) -> Result<Evaluation, ActionError> {
        let n = self.normalize(w)?;
        Ok(Evaluation::exact(if n.is_trivial() {
            Verdict::Trivial
        } else {
            Verdict::Nontrivial(Witness::NormalForm(n.to_string()))
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{gen, w, SimpleGraph};

    #[test]
    fn indicable_bs() {
        let bs = GroupOracle::bs1n(2);
        let sys = DiagonalSystem::new(vec![(bs, WeightMap::from_pairs([("a", 0), ("t", 1)]), gen("x"))]).unwrap();
        let zs = &sys.factors()[0].zero_sum;
        assert_eq!(zs.presentation.generators().len(), 2);
        for r in zs.presentation.relators() {
            assert!(sys.normalize(r).unwrap().is_trivial(), "{r}");
        }
        for g in ["a", "t"] {
            let image = sys.normalize(&zs.to_new[&gen(g)]).unwrap();
            assert_eq!(image, sys.psi(0, &gen(g)).unwrap());
        }
        assert!(sys.is_trivial(&w("t")).unwrap().verdict.is_nontrivial());
        assert_eq!(sys.normalize(&w("a")).unwrap(), sys.psi(0, &gen("a")).unwrap());
        assert!(sys.normalize(&w("t a t^-1 a^-2")).unwrap().is_trivial());
    }

    #[test]
    fn star_factor_relators() {
        let cone = SimpleGraph::path(&["a1", "b1"]);
        let f = WeightMap::from_pairs([("a1", 1), ("b1", 0)]);
        let sys = DiagonalSystem::new(vec![(GroupOracle::raag(cone), f, gen("x1"))]).unwrap();
        let rel = &sys.factors()[0].zero_sum.presentation.relators()[0];
        assert!(sys.normalize(rel).unwrap().is_trivial());
        let u = sys.normalize(&w("a1")).unwrap();
        assert_eq!(sys.multiply(&u, &sys.normalize(&w("a1^-1")).unwrap()).unwrap().is_trivial(), true);
    }
}
