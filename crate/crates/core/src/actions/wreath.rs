use std::collections::BTreeMap;
use std::fmt;

use super::{multipush_is_trivial, ActionError, Evaluation, PushKind, PushSystem, Verdict, Witness};
use crate::schreier::Node;
use crate::words::{Gen, GroupOracle, Letter, Word};

/// The acting group of a wreath system and the set Λ it permutes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shift {
    /// ℤ acting on Λ = ℤ by translation.
    Z { letter: Gen },
    /// Multipushes on a Schreier graph, Λ its vertex set.
    Push(PushSystem),
}

/// `G ≀_Λ H`: a lamp group `G` supported on the Π-copy at `origin`, moved by the shift group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WreathSystem {
    lamp: GroupOracle,
    shift: Shift,
    origin: Node,
}

/// `(c, s)` with `c: Λ → G` finitely supported and `s` a reduced shift word.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WreathElement {
    pub support: BTreeMap<Node, Word>,
    pub shift: Word,
}

impl WreathElement {
    pub fn is_trivial(&self) -> bool {
        self.support.is_empty() && self.shift.is_empty()
    }
}

impl WreathSystem {
    pub fn new(lamp: GroupOracle, shift: Shift) -> Result<Self, ActionError> {
        let origin = match &shift {
            Shift::Z { letter } => {
                if lamp.has_generator(letter) {
                    return Err(ActionError::Invalid(format!("{letter} is both a lamp and a shift letter")));
                }
                Node::Int(0)
            }
            Shift::Push(sys) => {
                if let Some(g) = sys.letters().iter().find(|g| lamp.has_generator(g)) {
                    return Err(ActionError::Invalid(format!("{g} is both a lamp and a shift letter")));
                }
                sys.graph().base_node()
            }
        };
        Ok(WreathSystem { lamp, shift, origin })
    }

    pub fn lamp(&self) -> &GroupOracle {
        &self.lamp
    }

    pub fn shift(&self) -> &Shift {
        &self.shift
    }

    pub fn origin(&self) -> &Node {
        &self.origin
    }

    pub fn alphabet(&self) -> Vec<Gen> {
        let mut out = self.lamp.generators().to_vec();
        match &self.shift {
            Shift::Z { letter } => out.push(letter.clone()),
            Shift::Push(sys) => out.extend(sys.letters().iter().cloned()),
        }
        out
    }

    fn is_shift_letter(&self, g: &Gen) -> bool {
        match &self.shift {
            Shift::Z { letter } => letter == g,
            Shift::Push(sys) => sys.letters().contains(g),
        }
    }

    /// Image of λ under the shift word, rightmost letter first.
    pub fn act(&self, s: &Word, lambda: &Node) -> Result<Node, ActionError> {
        match (&self.shift, lambda) {
            (Shift::Z { letter }, Node::Int(i)) => Ok(Node::Int(i + s.exponent_of(letter))),
            (Shift::Z { .. }, other) => Err(ActionError::Invalid(format!("{other} is not an integer"))),
            (Shift::Push(sys), v) => sys.act(v, s),
        }
    }

    /// `(c1, s1)(c2, s2) = (c1 · s1(c2), s1 s2)`.
    pub fn multiply(&self, x: &WreathElement, y: &WreathElement) -> Result<WreathElement, ActionError> {
        let mut support = x.support.clone();
        for (lambda, g) in &y.support {
            let mu = self.act(&x.shift, lambda)?;
            let cur = support.remove(&mu).unwrap_or_default();
            let prod = self.lamp.normalize(&(cur * g))?;
            if !prod.is_empty() {
                support.insert(mu, prod);
            }
        }
        Ok(WreathElement { support, shift: (&x.shift * &y.shift).free_reduce() })
    }

    fn letter_element(&self, l: &Letter) -> Result<WreathElement, ActionError> {
        if self.is_shift_letter(&l.gen) {
            return Ok(WreathElement { support: BTreeMap::new(), shift: Word::from_letters(vec![l.clone()]) });
        }
        if !self.lamp.has_generator(&l.gen) {
            return Err(ActionError::UnknownLetter(l.gen.to_string()));
        }
        let g = self.lamp.normalize(&Word::from_letters(vec![l.clone()]))?;
        let support = if g.is_empty() { BTreeMap::new() } else { BTreeMap::from([(self.origin.clone(), g)]) };
        Ok(WreathElement { support, shift: Word::empty() })
    }

    pub fn normalize(&self, w: &Word) -> Result<WreathElement, ActionError> {
        w.letters().iter().try_fold(WreathElement::default(), |acc, l| self.multiply(&acc, &self.letter_element(l)?))
    }

    pub fn is_trivial(&self, w: &Word, window: usize) -> Result<Evaluation, ActionError> {
        let e = self.normalize(w)?;
        if let Some((lambda, g)) = e.support.iter().next() {
            return Ok(Evaluation::exact(Verdict::Nontrivial(Witness::NormalForm(format!("lamp {g} at {lambda}")))));
        }
        if e.shift.is_empty() {
            return Ok(Evaluation::exact(Verdict::Trivial));
        }
        match &self.shift {
            Shift::Z { .. } => Ok(Evaluation::exact(Verdict::Nontrivial(Witness::NormalForm(self.format(&e))))),
            Shift::Push(sys) if sys.kind() == PushKind::Multipush => multipush_is_trivial(sys, &e.shift, window),
            Shift::Push(sys) => Ok(match sys.moved_coset(&e.shift, window)? {
                Some((node, image)) => Evaluation::exact(Verdict::Nontrivial(Witness::MovedCoset { node, image })),
                None => Evaluation::windowed(Verdict::Unknown("shift part fixes every copy in the window".into()), window),
            }),
        }
    }

    /// `({λ: g, …}, s)`, with `s` an integer for ℤ shifts.
    pub fn format(&self, e: &WreathElement) -> String {
        let lamps = if e.support.is_empty() {
            "∅".to_string()
        } else {
            let parts: Vec<String> = e.support.iter().map(|(l, g)| format!("{l}: {g}")).collect();
            format!("{{{}}}", parts.join(", "))
        };
        let shift = match &self.shift {
            Shift::Z { letter } => e.shift.exponent_of(letter).to_string(),
            Shift::Push(_) => e.shift.to_string(),
        };
        format!("({lamps}, {shift})")
    }
}

impl fmt::Display for WreathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.support.iter().map(|(l, g)| format!("{l}: {g}")).collect();
        write!(f, "({{{}}}, {})", parts.join(", "), self.shift)
    }
}
