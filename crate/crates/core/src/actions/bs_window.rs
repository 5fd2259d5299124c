use std::fmt;

use num_bigint::BigInt;

use super::ActionError;
use crate::words::{NAdic, Word};

/// One Π-copy of the BS(1,n) action: `t` moves copies one step, `a` translates the curve
/// slots of the copy at position `p` by `n^-p`.
///
/// Translations are stored at the finest level, as integers `τ·n^depth`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CopyState {
    pub start: i64,
    pub position: i64,
    pub scaled_translation: i128,
    /// `a` was applied while this copy sat outside the tracked levels.
    pub truncated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BsWindow {
    pub n: u32,
    pub depth: usize,
    pub copies: Vec<CopyState>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WindowVerdict {
    Trivial,
    /// An untruncated copy moved or was translated.
    Nontrivial { start: i64, position: i64, translation: NAdic },
    /// Every copy in the window was truncated.
    Truncated,
}

impl fmt::Display for WindowVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WindowVerdict::Trivial => write!(f, "TRIVIAL"),
            WindowVerdict::Nontrivial { start, position, translation } => {
                write!(f, "NONTRIVIAL copy {start} -> {position}, slots shifted by {translation}")
            }
            WindowVerdict::Truncated => write!(f, "TRUNCATED"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BsWindowResult {
    pub state: BsWindow,
    pub verdict: WindowVerdict,
}

impl BsWindow {
    pub fn translation(&self, c: &CopyState) -> NAdic {
        NAdic::new(self.n, BigInt::from(c.scaled_translation), self.depth as u32)
    }

    /// Shift of the level-`k` curve slots, i.e. of the copy now at position `-k`.
    /// `None` when that copy is truncated, absent, or shifted by a non-integer amount.
    pub fn level_shift(&self, k: i64) -> Option<BigInt> {
        let c = self.copies.iter().find(|c| c.position == -k && !c.truncated)?;
        self.translation(c).to_integer()
    }
}

/// Simulates `w` (letters `a`, `t`) on copies at positions `-depth..=depth`, tracking levels
/// `-depth..=depth`.
pub fn bs_window_action(n: u32, w: &Word, depth: usize) -> Result<BsWindowResult, ActionError> {
    if n < 2 {
        return Err(ActionError::Invalid(format!("BS(1,{n}) needs n >= 2")));
    }
    let d = depth as i64;
    let mut copies: Vec<CopyState> = (-d..=d)
        .map(|p| CopyState { start: p, position: p, scaled_translation: 0, truncated: false })
        .collect();
    let overflow = || ActionError::Invalid(format!("depth {depth} overflows the slot arithmetic"));
    for l in w.letters().iter().rev() {
        let sign: i64 = if l.inverse { -1 } else { 1 };
        match &*l.gen {
            "t" => copies.iter_mut().for_each(|c| c.position += sign),
            "a" => {
                for c in copies.iter_mut().filter(|c| !c.truncated) {
                    if c.position.abs() > d {
                        c.truncated = true;
                        continue;
                    }
                    let step = (n as i128).checked_pow((d - c.position) as u32).ok_or_else(overflow)?;
                    c.scaled_translation = c.scaled_translation.checked_add(sign as i128 * step).ok_or_else(overflow)?;
                }
            }
            other => return Err(ActionError::UnknownLetter(other.to_string())),
        }
    }
    let state = BsWindow { n, depth, copies };
    let live: Vec<&CopyState> = state.copies.iter().filter(|c| !c.truncated).collect();
    let verdict = match live.iter().find(|c| c.position != c.start || c.scaled_translation != 0) {
        Some(c) => WindowVerdict::Nontrivial { start: c.start, position: c.position, translation: state.translation(c) },
        None if live.is_empty() => WindowVerdict::Truncated,
        None => WindowVerdict::Trivial,
    };
    Ok(BsWindowResult { state, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::w;

    #[test]
    fn level_shifts() {
        let r = bs_window_action(2, &w("a"), 4).unwrap();
        assert_eq!(r.state.level_shift(0), Some(BigInt::from(1)));
        let r = bs_window_action(2, &w("t^-1 a t"), 4).unwrap();
        assert_eq!(r.state.level_shift(1), Some(BigInt::from(1)));
        assert_eq!(r.state.level_shift(2), Some(BigInt::from(2)));
        assert_eq!(r.state.level_shift(0), None);
        assert!(matches!(r.verdict, WindowVerdict::Nontrivial { .. }));
        let r = bs_window_action(2, &w("t a t^-1 a^-2"), 4).unwrap();
        assert_eq!(r.verdict, WindowVerdict::Trivial);
    }

    #[test]
    fn truncation() {
        let r = bs_window_action(2, &w("t^-5 a t^5"), 2).unwrap();
        assert_eq!(r.verdict, WindowVerdict::Truncated);
        assert!(bs_window_action(2, &w("b"), 2).is_err());
    }
}
