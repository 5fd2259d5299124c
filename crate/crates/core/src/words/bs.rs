//! BS(1,n) as ℤ[1/n] ⋊ ℤ.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::word::Word;

/// `num / n^exp` in lowest terms: `exp == 0` or `n ∤ num`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NAdic {
    n: u32,
    num: BigInt,
    exp: u32,
}

impl NAdic {
    pub fn zero(n: u32) -> Self {
        NAdic { n, num: BigInt::zero(), exp: 0 }
    }

    pub fn integer(n: u32, k: impl Into<BigInt>) -> Self {
        NAdic { n, num: k.into(), exp: 0 }
    }

    pub fn new(n: u32, num: BigInt, exp: u32) -> Self {
        NAdic { n, num, exp }.reduced()
    }

    fn reduced(mut self) -> Self {
        let n = BigInt::from(self.n);
        if self.num.is_zero() {
            self.exp = 0;
            return self;
        }
        while self.exp > 0 {
            let (q, r) = self.num.div_rem(&n);
            if !r.is_zero() {
                break;
            }
            self.num = q;
            self.exp -= 1;
        }
        self
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    /// Exponent of `n` in the denominator.
    pub fn denominator_exp(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.exp == 0
    }

    pub fn add(&self, other: &NAdic) -> NAdic {
        let n = BigInt::from(self.n);
        let e = self.exp.max(other.exp);
        let a = &self.num * n.pow(e - self.exp);
        let b = &other.num * n.pow(e - other.exp);
        NAdic::new(self.n, a + b, e)
    }

    pub fn neg(&self) -> NAdic {
        NAdic { n: self.n, num: -&self.num, exp: self.exp }
    }

    /// Multiplies by `n^k`, `k` of either sign.
    pub fn scale(&self, k: i64) -> NAdic {
        let n = BigInt::from(self.n);
        if k >= 0 {
            let k = k as u32;
            if k <= self.exp {
                NAdic::new(self.n, self.num.clone(), self.exp - k)
            } else {
                NAdic::new(self.n, &self.num * n.pow(k - self.exp), 0)
            }
        } else {
            NAdic::new(self.n, self.num.clone(), self.exp + (-k) as u32)
        }
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.num.clone())
    }

    pub fn signum(&self) -> i32 {
        if self.num.is_positive() {
            1
        } else if self.num.is_negative() {
            -1
        } else {
            0
        }
    }
}

impl fmt::Display for NAdic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, BigInt::from(self.n).pow(self.exp))
        }
    }
}

/// An element `(r, e)` of ℤ[1/n] ⋊ ℤ with `(r1,e1)(r2,e2) = (r1 + n^e1 r2, e1+e2)`,
/// `a = (1,0)`, `t = (0,1)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BsElement {
    pub r: NAdic,
    pub e: i64,
}

impl BsElement {
    pub fn identity(n: u32) -> Self {
        BsElement { r: NAdic::zero(n), e: 0 }
    }

    pub fn a(n: u32) -> Self {
        BsElement { r: NAdic::integer(n, 1), e: 0 }
    }

    pub fn t(n: u32) -> Self {
        BsElement { r: NAdic::zero(n), e: 1 }
    }

    pub fn n(&self) -> u32 {
        self.r.n
    }

    pub fn is_identity(&self) -> bool {
        self.r.is_zero() && self.e == 0
    }

    pub fn mul(&self, other: &BsElement) -> BsElement {
        BsElement { r: self.r.add(&other.r.scale(self.e)), e: self.e + other.e }
    }

    pub fn inverse(&self) -> BsElement {
        // (r,e)^-1 = (-n^-e r, -e)
        BsElement { r: self.r.scale(-self.e).neg(), e: -self.e }
    }

    /// `t^-j a^m t^(j+e)` for `r = m / n^j`, freely reduced.
    pub fn to_word(&self, a: &str, t: &str) -> Word {
        let j = self.r.exp as i64;
        let m: i64 = self.r.num.clone().try_into().unwrap_or_else(|_| {
            panic!("BS(1,{}) numerator {} exceeds word range", self.r.n, self.r.num)
        });
        (Word::power_of(t, -j) * Word::power_of(a, m) * Word::power_of(t, j + self.e)).free_reduce()
    }
}

impl fmt::Display for BsElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.r, self.e)
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
#[error("letter {0} is neither the a-generator nor the t-generator")]
pub struct BsLetterError(pub String);

pub fn bs_normal_form_with(n: u32, a: &str, t: &str, w: &Word) -> Result<BsElement, BsLetterError> {
    let (ga, gt) = (BsElement::a(n), BsElement::t(n));
    let (ia, it) = (ga.inverse(), gt.inverse());
    let mut acc = BsElement::identity(n);
    for l in w.letters() {
        let x = match (&*l.gen, l.inverse) {
            (g, false) if g == a => &ga,
            (g, true) if g == a => &ia,
            (g, false) if g == t => &gt,
            (g, true) if g == t => &it,
            _ => return Err(BsLetterError(l.gen.to_string())),
        };
        acc = acc.mul(x);
    }
    Ok(acc)
}

/// Normal form of a word over `{a, t}`.
pub fn bs_normal_form(n: u32, w: &Word) -> Result<BsElement, BsLetterError> {
    bs_normal_form_with(n, "a", "t", w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::word::w;

    #[test]
    fn examples() {
        assert_eq!(bs_normal_form(2, &w("a")).unwrap().to_string(), "(1, 0)");
        assert_eq!(bs_normal_form(2, &w("t a t^-1")).unwrap().to_string(), "(2, 0)");
        assert_eq!(bs_normal_form(2, &w("t^-1 a t")).unwrap().to_string(), "(1/2, 0)");
        assert!(bs_normal_form(2, &w("t a t^-1 a^-2")).unwrap().is_identity());
        assert!(bs_normal_form(3, &w("t a t^-1 a^-3")).unwrap().is_identity());
        assert_eq!(bs_normal_form(3, &w("t a t^-1 a^-1")).unwrap().to_string(), "(2, 0)");
    }

    #[test]
    fn word_round_trip() {
        for s in ["t^-1 a t", "t^-2 a^3 t", "a t^2", "t^-3 a^-5 t^-1"] {
            let x = bs_normal_form(2, &w(s)).unwrap();
            assert_eq!(bs_normal_form(2, &x.to_word("a", "t")).unwrap(), x);
        }
    }

    #[test]
    fn inverse() {
        let x = bs_normal_form(3, &w("t^-2 a t a^4 t^3")).unwrap();
        assert!(x.mul(&x.inverse()).is_identity());
        assert!(x.inverse().mul(&x).is_identity());
    }
}
