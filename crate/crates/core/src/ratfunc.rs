//! Linear-fractional functions `N/D` with `N`, `D` affine over ℚ in variables `x<k>`.
//!
//! This class contains every coordinate of every cycle built here and is closed
//! under the substitutions used by face maps.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_q, Q};

pub type Var = u32;

/// `Σ c_k x_k + c`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Affine {
    pub coeffs: BTreeMap<Var, Q>,
    pub constant: Q,
}

impl Affine {
    pub fn constant(c: Q) -> Self {
        Self { coeffs: BTreeMap::new(), constant: c }
    }

    pub fn var(k: Var) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(k, Q::one());
        Self { coeffs, constant: Q::zero() }
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.constant.is_zero()
    }

    pub fn scaled(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::default();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(k, x)| (*k, x * c)).collect(),
            constant: &self.constant * c,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, x) in &other.coeffs {
            let e = out.coeffs.entry(*k).or_insert_with(Q::zero);
            *e += x;
            if e.is_zero() {
                out.coeffs.remove(k);
            }
        }
        out.constant += &other.constant;
        out
    }

    /// Leading coefficient: lowest variable first, then the constant.
    fn leading(&self) -> Q {
        self.coeffs.values().next().cloned().unwrap_or_else(|| self.constant.clone())
    }

    /// `λ` with `self = λ·other`, if any (`other` nonzero).
    fn ratio_to(&self, other: &Self) -> Option<Q> {
        if other.is_zero() {
            return None;
        }
        let lam = self.leading_against(other)?;
        (other.scaled(&lam) == *self).then_some(lam)
    }

    fn leading_against(&self, other: &Self) -> Option<Q> {
        if let Some((k, x)) = other.coeffs.iter().next() {
            Some(self.coeffs.get(k).cloned().unwrap_or_else(Q::zero) / x)
        } else if other.constant.is_zero() {
            None
        } else {
            Some(&self.constant / &other.constant)
        }
    }

    pub fn substitute(&self, k: Var, value: &Affine) -> Affine {
        match self.coeffs.get(&k) {
            None => self.clone(),
            Some(c) => {
                let mut rest = self.clone();
                rest.coeffs.remove(&k);
                rest.add(&value.scaled(c))
            }
        }
    }

    /// Solves `self = 0` for `x_k`.
    pub fn solve_for(&self, k: Var) -> Option<Affine> {
        let c = self.coeffs.get(&k)?;
        let mut rest = self.clone();
        rest.coeffs.remove(&k);
        Some(rest.scaled(&(-Q::one() / c)))
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn rename(&self, map: &BTreeMap<Var, Var>) -> Affine {
        Affine {
            coeffs: self.coeffs.iter().map(|(k, x)| (map.get(k).copied().unwrap_or(*k), x.clone())).collect(),
            constant: self.constant.clone(),
        }
    }

    pub fn eval(&self, point: &BTreeMap<Var, Q>) -> Option<Q> {
        let mut s = self.constant.clone();
        for (k, x) in &self.coeffs {
            s += x * point.get(k)?;
        }
        Some(s)
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut piece = |f: &mut fmt::Formatter<'_>, c: &Q, var: Option<Var>| -> fmt::Result {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            match var {
                Some(k) if a.is_one() => write!(f, "x{k}"),
                Some(k) => write!(f, "{}*x{k}", format_q(&a)),
                None => write!(f, "{}", format_q(&a)),
            }
        };
        for (k, c) in &self.coeffs {
            piece(f, c, Some(*k))?;
        }
        if !self.constant.is_zero() || self.coeffs.is_empty() {
            piece(f, &self.constant, None)?;
        }
        Ok(())
    }
}

/// A normalized linear-fractional function, possibly the constant ∞.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatFunc {
    num: Affine,
    den: Affine,
}

impl RatFunc {
    pub fn constant(c: Q) -> Self {
        Self { num: Affine::constant(c), den: Affine::constant(Q::one()) }
    }

    pub fn infinity() -> Self {
        Self { num: Affine::constant(Q::one()), den: Affine::default() }
    }

    pub fn var(k: Var) -> Self {
        Self::from_affine(Affine::var(k))
    }

    pub fn from_affine(a: Affine) -> Self {
        Self::new(a, Affine::constant(Q::one())).expect("nonzero denominator")
    }

    /// `num/den` in normal form; `0/0` is rejected.
    pub fn new(num: Affine, den: Affine) -> Result<Self> {
        if den.is_zero() {
            if num.is_zero() {
                return Err(Error::DegenerateDenominator);
            }
            return Ok(Self::infinity());
        }
        if let Some(lam) = num.ratio_to(&den) {
            return Ok(Self::constant(lam));
        }
        let s = Q::one() / den.leading();
        Ok(Self { num: num.scaled(&s), den: den.scaled(&s) })
    }

    pub fn numerator(&self) -> &Affine {
        &self.num
    }

    pub fn denominator(&self) -> &Affine {
        &self.den
    }

    pub fn is_infinity(&self) -> bool {
        self.den.is_zero()
    }

    /// The value if constant and finite.
    pub fn as_constant(&self) -> Option<Q> {
        (self.num.is_constant() && self.den.is_constant() && !self.den.is_zero())
            .then(|| &self.num.constant / &self.den.constant)
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn inverse(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.num.vars().chain(self.den.vars()).collect()
    }

    pub fn substitute(&self, k: Var, value: &Affine) -> Result<Self> {
        Self::new(self.num.substitute(k, value), self.den.substitute(k, value))
    }

    pub fn rename(&self, map: &BTreeMap<Var, Var>) -> Self {
        Self::new(self.num.rename(map), self.den.rename(map)).expect("renaming preserves validity")
    }

    /// Value at a rational point; `None` at a pole or if a variable is missing.
    pub fn eval(&self, point: &BTreeMap<Var, Q>) -> Option<Q> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(point)? / d)
    }

    fn finite(&self, op: &str) -> Result<()> {
        if self.is_infinity() {
            return Err(Error::NotLinearFractional(format!("∞ in {op}")));
        }
        Ok(())
    }

    pub fn neg(&self) -> Self {
        if self.is_infinity() {
            return self.clone();
        }
        Self::new(self.num.scaled(&-Q::one()), self.den.clone()).expect("valid")
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.finite("sum")?;
        other.finite("sum")?;
        if let Some(lam) = other.den.ratio_to(&self.den) {
            // b/(λD) = (b/λ)/D
            return Self::new(self.num.add(&other.num.scaled(&(Q::one() / lam))), self.den.clone());
        }
        if let Some(c) = self.as_constant() {
            return Self::new(other.den.scaled(&c).add(&other.num), other.den.clone());
        }
        if let Some(c) = other.as_constant() {
            return Self::new(self.den.scaled(&c).add(&self.num), self.den.clone());
        }
        Err(Error::NotLinearFractional(format!("{self} + {other}")))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.finite("product")?;
        other.finite("product")?;
        let mut scalar = Q::one();
        let mut nums = vec![self.num.clone(), other.num.clone()];
        let mut dens = vec![self.den.clone(), other.den.clone()];
        // cancel proportional numerator/denominator factors
        let mut i = 0;
        while i < nums.len() {
            let hit = dens.iter().position(|d| !nums[i].is_constant() && nums[i].ratio_to(d).is_some());
            if let Some(j) = hit {
                scalar *= nums[i].ratio_to(&dens[j]).expect("checked");
                nums.remove(i);
                dens.remove(j);
            } else {
                i += 1;
            }
        }
        let fold = |v: Vec<Affine>| -> Result<Affine> {
            let mut out = Affine::constant(Q::one());
            for a in v {
                if a.is_constant() {
                    out = out.scaled(&a.constant);
                } else if out.is_constant() {
                    out = a.scaled(&out.constant);
                } else {
                    return Err(Error::NotLinearFractional(format!("{self} * {other}")));
                }
            }
            Ok(out)
        };
        let n = fold(nums)?.scaled(&scalar);
        let d = fold(dens)?;
        if d.is_zero() {
            return Err(Error::NotLinearFractional(format!("{self} * {other}")));
        }
        Self::new(n, d)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if self.is_constant() && other.as_constant().is_some_and(|c| c.is_zero()) {
            if self.as_constant().is_some_and(|c| c.is_zero()) {
                return Err(Error::DegenerateDenominator);
            }
            return Ok(Self::infinity());
        }
        self.mul(&other.inverse()?)
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut p = Parser { chars: s.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0 };
        let v = p.expr()?;
        if p.pos != p.chars.len() {
            return Err(Error::Parse(format!("trailing input in {s:?}")));
        }
        Ok(v)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            return write!(f, "inf");
        }
        if let Some(c) = self.as_constant() {
            return write!(f, "{}", format_q(&c));
        }
        if self.den.is_constant() && self.den.constant.is_one() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl std::str::FromStr for RatFunc {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {}", self.pos))
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { acc.add(&rhs)? } else { acc.sub(&rhs)? };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if c == '*' { acc.mul(&rhs)? } else { acc.div(&rhs)? };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFunc> {
        if self.peek() == Some('-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some('x') => {
                self.pos += 1;
                let digits = self.digits();
                if digits.is_empty() {
                    return Err(self.err("expected variable index"));
                }
                let k: Var = digits.parse().map_err(|_| self.err("bad variable index"))?;
                Ok(RatFunc::var(k))
            }
            Some('i') => {
                let word: String = self.chars[self.pos..].iter().take(3).collect();
                if word != "inf" {
                    return Err(self.err("unexpected character"));
                }
                self.pos += 3;
                Ok(RatFunc::infinity())
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                let n: num_bigint::BigInt = digits.parse().map_err(|_| self.err("bad integer"))?;
                Ok(RatFunc::constant(Q::from_integer(n)))
            }
            _ => Err(self.err("unexpected input")),
        }
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qr};
    use proptest::prelude::*;

    fn rf(s: &str) -> RatFunc {
        RatFunc::parse(s).unwrap()
    }

    #[test]
    fn normal_forms() {
        assert_eq!(rf("(x1-2)/(x1)").to_string(), "(x1-2)/(x1)");
        assert_eq!(rf("(2*x1-4)/(2*x1)"), rf("(x1-2)/x1"));
        assert_eq!(rf("1-x1/2").to_string(), "-1/2*x1+1");
        assert_eq!(rf("(x0-x1)/(1-x1)").to_string(), "(-x0+x1)/(x1-1)");
        assert_eq!(rf("(3*x2-3)/(x2-1)").as_constant(), Some(q(3)));
        assert_eq!(rf("2/3").as_constant(), Some(qr(2, 3)));
        assert!(rf("1/0").is_infinity());
        assert!(rf("inf").is_infinity());
        assert_eq!(rf("1/x1").inverse().unwrap(), rf("x1"));
    }

    #[test]
    fn closure_errors() {
        assert!(matches!(RatFunc::parse("x1*x2"), Err(Error::NotLinearFractional(_))));
        assert!(matches!(RatFunc::parse("x1+1/x2"), Err(Error::NotLinearFractional(_))));
        assert!(matches!(RatFunc::parse("x1+"), Err(Error::Parse(_))));
        assert!(matches!(RatFunc::parse("y1"), Err(Error::Parse(_))));
        assert_eq!(rf("x1*((x2-1)/x1)"), rf("x2-1"));
        assert_eq!(rf("1 - x1/x2").to_string(), "(-x1+x2)/(x2)");
    }

    #[test]
    fn substitution_and_solving() {
        let f = rf("(x0-x1)/(3-x1)");
        let g = f.substitute(1, &Affine::var(0)).unwrap();
        assert_eq!(g.as_constant(), Some(q(0)));
        let h = f.substitute(1, &Affine::constant(q(3))).unwrap();
        assert!(h.is_infinity());
        let s = f.numerator().solve_for(1).unwrap();
        assert_eq!(s, Affine::var(0));
    }

    fn arb_affine() -> impl Strategy<Value = Affine> {
        (prop::collection::btree_map(0u32..3, -5i64..6, 0..3), -5i64..6).prop_map(|(m, c)| Affine {
            coeffs: m.into_iter().filter(|(_, x)| *x != 0).map(|(k, x)| (k, q(x))).collect(),
            constant: q(c),
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(n in arb_affine(), d in arb_affine()) {
            if let Ok(f) = RatFunc::new(n, d) {
                let s = f.to_string();
                let g = RatFunc::parse(&s).unwrap();
                prop_assert_eq!(&g, &f);
                prop_assert_eq!(g.to_string(), s);
            }
        }
    }
}
