use std::collections::BTreeMap;

use thiserror::Error;

use super::word::{Gen, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("generator {0} is not assigned to a factor")]
pub struct UnassignedGenerator(pub String);

/// Assignment of generators to factor indices (0-based).
pub type Partition = BTreeMap<Gen, usize>;

/// Maximal single-factor blocks, in order.
pub fn syllable_decompose(w: &Word, partition: &Partition) -> Result<Vec<(usize, Word)>, UnassignedGenerator> {
    let mut out: Vec<(usize, Word)> = Vec::new();
    for l in w.letters() {
        let i = *partition.get(&l.gen).ok_or_else(|| UnassignedGenerator(l.gen.to_string()))?;
        match out.last_mut() {
            Some((j, block)) if *j == i => block.push(l.clone()),
            _ => out.push((i, Word::letter(l.clone()))),
        }
    }
    Ok(out)
}

/// Deletes the letters outside factor `i`, keeping order. No reduction is applied.
pub fn project_to_factor(w: &Word, i: usize, partition: &Partition) -> Result<Word, UnassignedGenerator> {
    let mut out = Word::empty();
    for l in w.letters() {
        let j = *partition.get(&l.gen).ok_or_else(|| UnassignedGenerator(l.gen.to_string()))?;
        if j == i {
            out.push(l.clone());
        }
    }
    Ok(out)
}
