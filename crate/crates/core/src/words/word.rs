use std::fmt;
use std::ops::Mul;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

/// Generator name. Shared so that cloning words stays cheap.
pub type Gen = Arc<str>;

pub fn gen(name: &str) -> Gen {
    Arc::from(name)
}

/// A signed generator. Ordering is by name, positive before inverse,
/// which is the order used for shortlex enumeration.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Letter {
    pub gen: Gen,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(name: &str) -> Self {
        Letter { gen: gen(name), inverse: false }
    }

    pub fn neg(name: &str) -> Self {
        Letter { gen: gen(name), inverse: true }
    }

    pub fn inv(&self) -> Self {
        Letter { gen: self.gen.clone(), inverse: !self.inverse }
    }

    pub fn sign(&self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn cancels(&self, other: &Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.gen)
        } else {
            write!(f, "{}", self.gen)
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    /// `name^exp` as a word (|exp| letters).
    pub fn power_of(name: &str, exp: i64) -> Self {
        let l = if exp < 0 { Letter::neg(name) } else { Letter::pos(name) };
        Word(vec![l; exp.unsigned_abs() as usize])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(Letter::inv).collect())
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            out.extend_from_slice(&base.0);
        }
        Word(out)
    }

    /// `u v u^-1 v^-1`.
    pub fn commutator(u: &Word, v: &Word) -> Self {
        u * v * u.inverse() * v.inverse()
    }

    /// `u v u^-1`.
    pub fn conjugate_by(&self, u: &Word) -> Self {
        u * self * u.inverse()
    }

    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for l in &self.0 {
            if out.last().is_some_and(|top| top.cancels(l)) {
                out.pop();
            } else {
                out.push(l.clone());
            }
        }
        Word(out)
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|p| !p[0].cancels(&p[1]))
    }

    /// Splits a freely reduced word as `u core u^-1` with `core` cyclically reduced.
    pub fn peel_conjugator(&self) -> (Word, Word) {
        let w = self.free_reduce();
        let n = w.len();
        let mut k = 0;
        while 2 * k + 1 < n && w.0[k].cancels(&w.0[n - 1 - k]) {
            k += 1;
        }
        (Word(w.0[..k].to_vec()), Word(w.0[k..n - k].to_vec()))
    }

    pub fn generators(&self) -> impl Iterator<Item = &Gen> {
        self.0.iter().map(|l| &l.gen)
    }

    /// Net exponent of one generator.
    pub fn exponent_of(&self, name: &str) -> i64 {
        self.0.iter().filter(|l| &*l.gen == name).map(Letter::sign).sum()
    }

    /// Renames generators; letters without an entry are kept.
    pub fn substitute<F>(&self, mut f: F) -> Word
    where
        F: FnMut(&Letter) -> Option<Word>,
    {
        let mut out = Vec::with_capacity(self.0.len());
        for l in &self.0 {
            match f(l) {
                Some(w) => out.extend(w.0),
                None => out.push(l.clone()),
            }
        }
        Word(out)
    }

    /// Shortlex comparison (length first, then letter order).
    pub fn shortlex_cmp(&self, other: &Word) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl Mul<&Word> for &Word {
    type Output = Word;
    fn mul(self, rhs: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&rhs.0);
        Word(v)
    }
}

impl Mul<Word> for Word {
    type Output = Word;
    fn mul(mut self, rhs: Word) -> Word {
        self.0.extend(rhs.0);
        self
    }
}

impl Mul<&Word> for Word {
    type Output = Word;
    fn mul(mut self, rhs: &Word) -> Word {
        self.0.extend_from_slice(&rhs.0);
        self
    }
}

impl Mul<Word> for &Word {
    type Output = Word;
    fn mul(self, rhs: Word) -> Word {
        let mut v = self.0.clone();
        v.extend(rhs.0);
        Word(v)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Runs of equal letters are printed as powers; the empty word prints as `ε`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        let mut i = 0;
        let mut first = true;
        while i < self.0.len() {
            let l = &self.0[i];
            let mut j = i + 1;
            while j < self.0.len() && self.0[j] == *l {
                j += 1;
            }
            let run = (j - i) as i64 * l.sign();
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if run == 1 {
                write!(f, "{}", l.gen)?;
            } else {
                write!(f, "{}^{}", l.gen, run)?;
            }
            i = j;
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseWordError {
    #[error("unexpected character {found:?} at offset {offset}")]
    Unexpected { found: char, offset: usize },
    #[error("unexpected end of word, expected {expected}")]
    UnexpectedEnd { expected: &'static str },
    #[error("bad exponent at offset {offset}")]
    BadExponent { offset: usize },
}

impl FromStr for Word {
    type Err = ParseWordError;

    /// Tokens `name`, `name^-1`, `name^k`; commutators `[u,v]` (nested allowed),
    /// groups `(u)^k`. `ε`, `1` and the empty string denote the identity.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { chars: s.char_indices().collect(), pos: 0 };
        let w = p.sequence()?;
        p.skip_ws();
        if let Some(&(offset, found)) = p.chars.get(p.pos) {
            return Err(ParseWordError::Unexpected { found, offset });
        }
        Ok(w)
    }
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or_else(
            || self.chars.last().map_or(0, |&(o, c)| o + c.len_utf8()),
            |&(o, _)| o,
        )
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace() || c == '·' || c == '*') {
            self.pos += 1;
        }
    }

    fn expect(&mut self, want: char, expected: &'static str) -> Result<(), ParseWordError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(found) => Err(ParseWordError::Unexpected { found, offset: self.offset() }),
            None => Err(ParseWordError::UnexpectedEnd { expected }),
        }
    }

    fn sequence(&mut self) -> Result<Word, ParseWordError> {
        let mut out = Word::empty();
        loop {
            self.skip_ws();
            let Some(c) = self.peek() else { break };
            let factor = match c {
                '[' => {
                    self.pos += 1;
                    let u = self.sequence()?;
                    self.expect(',', "','")?;
                    let v = self.sequence()?;
                    self.expect(']', "']'")?;
                    Word::commutator(&u, &v)
                }
                '(' => {
                    self.pos += 1;
                    let u = self.sequence()?;
                    self.expect(')', "')'")?;
                    u
                }
                'ε' => {
                    self.pos += 1;
                    Word::empty()
                }
                c if is_name_char(c) => {
                    let start = self.pos;
                    while self.peek().is_some_and(is_name_char) {
                        self.pos += 1;
                    }
                    let name: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
                    if name == "1" {
                        Word::empty()
                    } else {
                        Word::letter(Letter::pos(&name))
                    }
                }
                _ => break,
            };
            let k = self.exponent()?;
            out = out * factor.pow(k);
        }
        Ok(out)
    }

    fn exponent(&mut self) -> Result<i64, ParseWordError> {
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.pos += 1;
        let offset = self.offset();
        let start = self.pos;
        if matches!(self.peek(), Some('-') | Some('+')) {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        text.parse::<i64>().map_err(|_| ParseWordError::BadExponent { offset })
    }
}

/// Parses a word, panicking on malformed input. Intended for literals in tests and examples.
pub fn w(s: &str) -> Word {
    s.parse().unwrap_or_else(|e| panic!("bad word literal {s:?}: {e}"))
}
