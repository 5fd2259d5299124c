use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use super::weight::{exponent_sum, WeightError, WeightMap};
use super::word::{gen, Gen, Letter, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("relator {relator} uses generator {gen} outside the alphabet")]
    ForeignLetter { relator: String, gen: String },
    #[error("duplicate generator {0}")]
    DuplicateGenerator(String),
    #[error("weight map is not onto ℤ (gcd of weights is {0})")]
    NotSurjective(i64),
    #[error("relator {relator} has weight {weight}, so the weight map is not a homomorphism")]
    NotHomomorphism { relator: String, weight: i64 },
    #[error(transparent)]
    Weight(#[from] WeightError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<Gen>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<Gen>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        let mut seen = BTreeSet::new();
        for g in &generators {
            if !seen.insert(g.clone()) {
                return Err(PresentationError::DuplicateGenerator(g.to_string()));
            }
        }
        for r in &relators {
            if let Some(l) = r.letters().iter().find(|l| !seen.contains(&l.gen)) {
                return Err(PresentationError::ForeignLetter {
                    relator: r.to_string(),
                    gen: l.gen.to_string(),
                });
            }
        }
        Ok(Presentation { generators, relators })
    }

    pub fn generators(&self) -> &[Gen] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }
}

/// Output of [`zero_sum_presentation`]. `to_new` writes each old generator in the new
/// alphabet, `to_old` each new generator in the old one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroSumPresentation {
    pub presentation: Presentation,
    pub base: Word,
    pub to_new: BTreeMap<Gen, Word>,
    pub to_old: BTreeMap<Gen, Word>,
}

impl ZeroSumPresentation {
    pub fn rewrite_to_new(&self, w: &Word) -> Word {
        rewrite(w, &self.to_new)
    }

    pub fn rewrite_to_old(&self, w: &Word) -> Word {
        rewrite(w, &self.to_old)
    }
}

fn rewrite(w: &Word, dict: &BTreeMap<Gen, Word>) -> Word {
    w.substitute(|l| {
        dict.get(&l.gen).map(|img| if l.inverse { img.inverse() } else { img.clone() })
    })
}

/// Shortest word of weight 1, by breadth-first search over partial sums.
/// Partial sums of some shortest solution can be kept inside `[-M, M]`, `M` the largest |weight|.
fn weight_one_word(generators: &[Gen], f: &WeightMap) -> Option<Word> {
    let bound = generators.iter().map(|g| f.get(g).unwrap_or(0).abs()).max()?;
    let mut parent: BTreeMap<i64, (i64, Letter)> = BTreeMap::new();
    let mut queue = VecDeque::from([0i64]);
    let mut seen = BTreeSet::from([0i64]);
    while let Some(v) = queue.pop_front() {
        for g in generators {
            let k = f.get(g).unwrap_or(0);
            for (letter, step) in [(Letter { gen: g.clone(), inverse: false }, k), (Letter { gen: g.clone(), inverse: true }, -k)] {
                let u = v + step;
                if u.abs() > bound || !seen.insert(u) {
                    continue;
                }
                parent.insert(u, (v, letter));
                if u == 1 {
                    let mut letters = Vec::new();
                    let mut cur = 1;
                    while cur != 0 {
                        let (prev, l) = parent[&cur].clone();
                        letters.push(l);
                        cur = prev;
                    }
                    letters.reverse();
                    return Some(Word::from_letters(letters));
                }
                queue.push_back(u);
            }
        }
    }
    None
}

fn fresh_name(base: String, taken: &BTreeSet<Gen>) -> Gen {
    let mut name = base;
    while taken.contains(name.as_str()) {
        name.push('\'');
    }
    gen(&name)
}

/// Rewrites a presentation so that every generator has weight 1 (hence every relator has
/// all-ones exponent sum 0), presenting the same group.
///
/// With `c` the shortest weight-1 word, each generator `g` is replaced by
/// `y_g = g·c^(1-f(g))` (factors ordered by generator name, so `a` with base `t` becomes
/// `at`, and `b` with base `a` becomes `ab`).
pub fn zero_sum_presentation(p: &Presentation, f: &WeightMap) -> Result<ZeroSumPresentation, PresentationError> {
    for g in p.generators() {
        if f.get(g).is_none() {
            return Err(WeightError::UnknownGenerator(g.to_string()).into());
        }
    }
    for r in p.relators() {
        let weight = exponent_sum(r, f)?;
        if weight != 0 {
            return Err(PresentationError::NotHomomorphism { relator: r.to_string(), weight });
        }
    }
    let restricted = WeightMap::from_pairs(p.generators().iter().map(|g| (&**g, f.get(g).unwrap_or(0))));
    if !restricted.is_surjective() {
        return Err(PresentationError::NotSurjective(restricted.gcd()));
    }
    let base = weight_one_word(p.generators(), f).ok_or(PresentationError::NotSurjective(restricted.gcd()))?;
    let single = match base.letters() {
        [l] => Some(l.gen.clone()),
        _ => None,
    };

    let mut taken: BTreeSet<Gen> = p.generators().iter().cloned().collect();
    let base_name: String = base.generators().map(|g| g.to_string()).collect();
    let extra = if single.is_none() {
        let z = fresh_name(format!("{base_name}_base"), &taken);
        taken.insert(z.clone());
        Some(z)
    } else {
        None
    };

    let mut generators = Vec::new();
    let mut to_old = BTreeMap::new();
    let mut names = BTreeMap::new();
    for g in p.generators() {
        let k = 1 - f.get(g).unwrap_or(0);
        let (name, word) = if k == 0 {
            (g.clone(), Word::power_of(g, 1))
        } else {
            let g_word = Word::power_of(g, 1);
            let c_part = base.pow(k);
            let word = if **g <= *base_name { g_word * c_part } else { c_part * g_word };
            let suffix = match k {
                1 => base_name.clone(),
                k if k > 0 => format!("{base_name}_{k}"),
                k => format!("{base_name}_m{}", -k),
            };
            let (first, second) = if **g <= *base_name { (g.to_string(), suffix) } else { (suffix, g.to_string()) };
            let name = fresh_name(format!("{first}{second}"), &taken);
            taken.insert(name.clone());
            (name, word.free_reduce())
        };
        generators.push(name.clone());
        to_old.insert(name.clone(), word);
        names.insert(g.clone(), name);
    }

    // The base element in the new alphabet.
    let base_new = match (&single, &extra) {
        (Some(g), _) => Word::power_of(&names[g], 1),
        (None, Some(z)) => Word::power_of(z, 1),
        _ => unreachable!(),
    };
    // Old generator g = y_g·c^(f(g)-1) or c^(f(g)-1)·y_g, matching the factor order above.
    let mut to_new = BTreeMap::new();
    for g in p.generators() {
        let k = 1 - f.get(g).unwrap_or(0);
        let y = Word::power_of(&names[g], 1);
        let img = if k == 0 {
            y
        } else if **g <= *base_name {
            y * base_new.pow(-k)
        } else {
            base_new.pow(-k) * y
        };
        to_new.insert(g.clone(), img.free_reduce());
    }

    let mut relators: Vec<Word> = p.relators().iter().map(|r| rewrite(r, &to_new).free_reduce()).collect();
    if let Some(z) = &extra {
        generators.push(z.clone());
        to_old.insert(z.clone(), base.clone());
        // z^-1 · (base written through the new generators)
        let defining = (Word::power_of(z, -1) * rewrite(&base, &to_new)).free_reduce();
        relators.push(defining);
    }
    let presentation = Presentation::new(generators, relators)?;
    Ok(ZeroSumPresentation { presentation, base, to_new, to_old })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::word::w;

    fn gens(names: &[&str]) -> Vec<Gen> {
        names.iter().map(|n| gen(n)).collect()
    }

    #[test]
    fn bs_augments_a_to_at() {
        let p = Presentation::new(gens(&["a", "t"]), vec![w("t a t^-1 a^-2")]).unwrap();
        let f = WeightMap::from_pairs([("a", 0), ("t", 1)]);
        let z = zero_sum_presentation(&p, &f).unwrap();
        let names: BTreeSet<&str> = z.presentation.generators().iter().map(|g| &**g).collect();
        assert_eq!(names, BTreeSet::from(["at", "t"]));
        assert_eq!(z.to_old[&gen("at")], w("a t"));
        let ones = WeightMap::all_ones(z.presentation.generators());
        for r in z.presentation.relators() {
            assert_eq!(exponent_sum(r, &ones), Ok(0));
        }
    }

    #[test]
    fn commutator_augments_b_to_ab() {
        let p = Presentation::new(gens(&["a", "b"]), vec![w("[a,b]")]).unwrap();
        let f = WeightMap::from_pairs([("a", 1), ("b", 0)]);
        let z = zero_sum_presentation(&p, &f).unwrap();
        let names: BTreeSet<&str> = z.presentation.generators().iter().map(|g| &**g).collect();
        assert_eq!(names, BTreeSet::from(["a", "ab"]));
        assert_eq!(z.to_new[&gen("b")], w("a^-1 ab"));
        let ones = WeightMap::all_ones(z.presentation.generators());
        assert_eq!(exponent_sum(&z.presentation.relators()[0], &ones), Ok(0));
    }

    #[test]
    fn all_ones_input_is_unchanged() {
        let p = Presentation::new(gens(&["a", "b"]), vec![w("a b^-1 a^-1 b")]).unwrap();
        let f = WeightMap::from_pairs([("a", 1), ("b", 1)]);
        let z = zero_sum_presentation(&p, &f).unwrap();
        assert_eq!(z.presentation, p);
    }

    #[test]
    fn non_surjective_rejected() {
        let p = Presentation::new(gens(&["a", "b"]), vec![]).unwrap();
        let f = WeightMap::from_pairs([("a", 2), ("b", 4)]);
        assert!(matches!(zero_sum_presentation(&p, &f), Err(PresentationError::NotSurjective(2))));
    }

    #[test]
    fn composite_base_gets_its_own_generator() {
        let p = Presentation::new(gens(&["a", "b"]), vec![]).unwrap();
        let f = WeightMap::from_pairs([("a", 2), ("b", 3)]);
        let z = zero_sum_presentation(&p, &f).unwrap();
        assert_eq!(z.base.len(), 2);
        assert_eq!(z.presentation.generators().len(), 3);
        let ones = WeightMap::all_ones(z.presentation.generators());
        for r in z.presentation.relators() {
            assert_eq!(exponent_sum(r, &ones), Ok(0));
        }
        // dictionaries are mutually inverse in the free group
        for (g, img) in &z.to_new {
            assert_eq!(z.rewrite_to_old(img).free_reduce(), Word::power_of(g, 1));
        }
    }
}
