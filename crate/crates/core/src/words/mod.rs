//! Words, weight maps, presentations and the catalog of group oracles.

mod bs;
mod oracle;
mod presentation;
mod raag;
mod syllable;
mod weight;
mod word;

pub use bs::{bs_normal_form, bs_normal_form_with, BsElement, BsLetterError, NAdic};
pub use oracle::{oracle_is_trivial, symmetric3, GroupOracle, MultTable, OracleError, OracleKind};
pub use presentation::{zero_sum_presentation, Presentation, PresentationError, ZeroSumPresentation};
pub use raag::{raag_equal_brute_force, raag_normalize, GraphError, SimpleGraph};
pub use syllable::{project_to_factor, syllable_decompose, Partition, UnassignedGenerator};
pub use weight::{exponent_sum, WeightError, WeightMap};
pub use word::{gen, w, Gen, Letter, ParseWordError, Word};

/// Freely reduces a word.
pub fn free_reduce(w: &Word) -> Word {
    w.free_reduce()
}

/// Positive and inverse letters of an alphabet, in shortlex letter order.
pub fn signed_letters(alphabet: &[Gen]) -> Vec<Letter> {
    let mut out: Vec<Letter> = alphabet
        .iter()
        .flat_map(|g| [Letter { gen: g.clone(), inverse: false }, Letter { gen: g.clone(), inverse: true }])
        .collect();
    out.sort();
    out
}

/// All freely reduced words of length `<= radius`, in shortlex order.
pub fn reduced_ball(alphabet: &[Gen], radius: usize) -> Vec<Word> {
    let letters = signed_letters(alphabet);
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for u in &layer {
            for l in &letters {
                if u.letters().last().is_some_and(|x| x.cancels(l)) {
                    continue;
                }
                let mut v = u.clone();
                v.push(l.clone());
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// All words (reduced or not) of length `<= radius`, in shortlex order.
pub fn all_words(alphabet: &[Gen], radius: usize) -> Vec<Word> {
    let letters = signed_letters(alphabet);
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..radius {
        let mut next = Vec::with_capacity(layer.len() * letters.len());
        for u in &layer {
            for l in &letters {
                let mut v = u.clone();
                v.push(l.clone());
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}
