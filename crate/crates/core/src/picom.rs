//! The combinatorial torsor of paths: truncated words in `X_s`, `s ∈ S`, with
//! the coaction into `B(𝒯̃)⁰`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::algebra::Monomial;
use crate::bar::{bar_coproduct, BarElem, ModuleKind};
use crate::error::{Error, Result};
use crate::linear::LinComb;
use crate::polyint::{bar_canonical, shuffle_t, Identity, Seq, T_bar};
use crate::rational::{format_q, Q};
use crate::tree::Label;

/// `X_{s₁}⋯X_{sₙ}`, graded by length.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathWord(pub Vec<Label>);

impl PathWord {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Space-separated labels, e.g. `"3 0 5"`.
    pub fn parse(s: &str) -> Result<Self> {
        s.split_whitespace().map(crate::rational::parse_q).collect::<Result<_>>().map(Self)
    }
}

impl fmt::Display for PathWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|s| format!("X[{}]", format_q(s))).collect();
        write!(f, "{}", parts.join(""))
    }
}

/// A truncated element of `ℚ⟨⟨X_s⟩⟩` attached to the endpoints `(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsorElem {
    pub a: Label,
    pub b: Label,
    pub trunc: usize,
    pub terms: LinComb<PathWord>,
}

impl TorsorElem {
    pub fn new(a: Label, b: Label, trunc: usize) -> Self {
        Self { a, b, trunc, terms: LinComb::zero() }
    }

    pub fn word(a: Label, b: Label, trunc: usize, w: PathWord) -> Result<Self> {
        if w.degree() > trunc {
            return Err(Error::TruncationExceeded { len: w.degree(), trunc });
        }
        let mut out = Self::new(a, b, trunc);
        out.terms.add_term(w, Q::one());
        Ok(out)
    }
}

/// Terms `X_u ⊗ x` of a coaction, with `x` a bar word over the quotient algebra.
pub type CoactionElem = LinComb<(PathWord, Vec<Monomial>)>;

fn bar_terms(x: &BarElem<Monomial>) -> impl Iterator<Item = (Vec<Monomial>, Q)> + '_ {
    x.terms.iter().map(|(w, c)| (w.letters.clone(), c.clone()))
}

fn unit_bar() -> BarElem<Monomial> {
    T_bar(&Seq::new(Q::one(), Vec::new(), Q::one()))
}

/// Memoized `T(x; …; y)` in the quotient.
#[derive(Default)]
struct TCache(BTreeMap<Vec<Label>, BarElem<Monomial>>);

impl TCache {
    fn get(&mut self, full: &[Label]) -> BarElem<Monomial> {
        self.0
            .entry(full.to_vec())
            .or_insert_with(|| {
                let k = full.len();
                bar_canonical(&T_bar(&Seq::new(full[0].clone(), full[1..k - 1].to_vec(), full[k - 1].clone())))
            })
            .clone()
    }
}

fn coaction_cached(w: &PathWord, a: &Label, b: &Label, cache: &mut TCache) -> CoactionElem {
    let n = w.degree();
    let mut full = vec![a.clone()];
    full.extend(w.0.iter().cloned());
    full.push(b.clone());
    let mut out = CoactionElem::zero();
    for mask in 0u32..(1 << n) {
        let mut chain = vec![0];
        chain.extend((1..=n).filter(|i| mask >> (i - 1) & 1 == 1));
        chain.push(n + 1);
        let k = chain.len() - 2;
        let left = PathWord(chain[1..=k].iter().map(|&i| full[i].clone()).collect());
        let mut right = unit_bar();
        for p in chain.windows(2) {
            right = shuffle_t(&right, &cache.get(&full[p[0]..=p[1]]));
            if right.is_zero() {
                break;
            }
        }
        let sign = if (n - k) % 2 == 1 { -Q::one() } else { Q::one() };
        for (letters, c) in bar_terms(&right) {
            out.add_term((left.clone(), letters), c * &sign);
        }
    }
    out
}

/// `X_s ↦ Σ X_{s_{i₁}}⋯X_{s_{i_k}} ⊗ (−1)^{n−k} Π_j T(s_{i_j}; …; s_{i_{j+1}})`.
pub fn coaction(w: &PathWord, a: &Label, b: &Label, trunc: usize) -> Result<CoactionElem> {
    if w.degree() > trunc {
        return Err(Error::TruncationExceeded { len: w.degree(), trunc });
    }
    Ok(coaction_cached(w, a, b, &mut TCache::default()))
}

/// All words over `s` of length at most `trunc`, shortest first.
pub fn words_up_to(s: &[Label], trunc: usize) -> Vec<PathWord> {
    let mut out = vec![PathWord::empty()];
    let mut layer = vec![PathWord::empty()];
    for _ in 0..trunc {
        let mut next = Vec::new();
        for w in &layer {
            for x in s {
                let mut v = w.0.clone();
                v.push(x.clone());
                next.push(PathWord(v));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

type Triple = (PathWord, Vec<Monomial>, Vec<Monomial>);

/// `(id ⊗ Δ)∘ν = (ν ⊗ id)∘ν` on one word.
pub fn coassociativity_on(w: &PathWord, a: &Label, b: &Label) -> Identity<LinComb<Triple>> {
    let mut cache = TCache::default();
    let nu = coaction_cached(w, a, b, &mut cache);
    let mut lhs = LinComb::zero();
    let mut rhs = LinComb::zero();
    for ((u, x), c) in nu.iter() {
        let mut bx = BarElem::zero(ModuleKind::Trivial);
        bx.terms.add_term(crate::bar::BarWord { module: Monomial::unit(), letters: x.clone() }, c.clone());
        for ((l, r), d) in bar_coproduct(&bx).expect("trivial module").iter() {
            lhs.add_term((u.clone(), l.clone(), r.clone()), d.clone());
        }
        for ((u2, y), d) in coaction_cached(u, a, b, &mut cache).iter() {
            rhs.add_term((u2.clone(), y.clone(), x.clone()), c * d);
        }
    }
    Identity { lhs, rhs }
}

pub fn check_coassociativity(a: &Label, b: &Label, s: &[Label], trunc: usize) -> bool {
    words_up_to(s, trunc).iter().all(|w| coassociativity_on(w, a, b).holds())
}

/// `(id ⊗ ε)∘ν = id` on one word.
pub fn counit_on(w: &PathWord, a: &Label, b: &Label) -> Identity<LinComb<PathWord>> {
    let mut lhs = LinComb::zero();
    for ((u, x), c) in coaction_cached(w, a, b, &mut TCache::default()).iter() {
        if x.is_empty() {
            lhs.add_term(u.clone(), c.clone());
        }
    }
    Identity { lhs, rhs: LinComb::basis(w.clone()) }
}

pub fn check_counit(a: &Label, b: &Label, s: &[Label], trunc: usize) -> bool {
    words_up_to(s, trunc).iter().all(|w| counit_on(w, a, b).holds())
}

/// Concatenation `Π(a,c) × Π(c,b) → Π(a,b)`, truncated at the smaller bound.
pub fn compose_paths(u: &TorsorElem, v: &TorsorElem) -> Result<TorsorElem> {
    if u.b != v.a {
        return Err(Error::EndpointMismatch(format!(
            "path ends at {} but the next starts at {}",
            format_q(&u.b),
            format_q(&v.a)
        )));
    }
    let trunc = u.trunc.min(v.trunc);
    let mut out = TorsorElem::new(u.a.clone(), v.b.clone(), trunc);
    for (x, cx) in u.terms.iter() {
        for (y, cy) in v.terms.iter() {
            if x.degree() + y.degree() <= trunc {
                let mut w = x.0.clone();
                w.extend(y.0.iter().cloned());
                out.terms.add_term(PathWord(w), cx * cy);
            }
        }
    }
    Ok(out)
}

type Quad = (PathWord, PathWord, Vec<Monomial>);

/// Compatibility of the coaction with splitting a path at `c`: with
/// `δ(w) = Σ_{w = w₁w₂} w₁ ⊗ w₂` (the transpose of concatenation),
/// `(δ ⊗ id)∘ν_{ab} = (ν_{ac} ⊗ ν_{cb})∘δ` with the shuffle product on the right.
pub fn composition_on(w: &PathWord, a: &Label, c: &Label, b: &Label) -> Identity<LinComb<Quad>> {
    let mut cache = TCache::default();
    let mut lhs = LinComb::zero();
    for ((u, x), k) in coaction_cached(w, a, b, &mut cache).iter() {
        for s in 0..=u.degree() {
            let (u1, u2) = (PathWord(u.0[..s].to_vec()), PathWord(u.0[s..].to_vec()));
            lhs.add_term((u1, u2, x.clone()), k.clone());
        }
    }
    let mut rhs = LinComb::zero();
    for s in 0..=w.degree() {
        let (w1, w2) = (PathWord(w.0[..s].to_vec()), PathWord(w.0[s..].to_vec()));
        let left = coaction_cached(&w1, a, c, &mut cache);
        let right = coaction_cached(&w2, c, b, &mut cache);
        for ((u1, x1), k1) in left.iter() {
            for ((u2, x2), k2) in right.iter() {
                let prod = shuffle_t(&word_elem(x1), &word_elem(x2));
                for (letters, k) in bar_terms(&prod) {
                    rhs.add_term((u1.clone(), u2.clone(), letters), k * k1 * k2);
                }
            }
        }
    }
    Identity { lhs, rhs }
}

pub fn check_composition(a: &Label, c: &Label, b: &Label, s: &[Label], trunc: usize) -> bool {
    words_up_to(s, trunc).iter().all(|w| composition_on(w, a, c, b).holds())
}

fn word_elem(x: &[Monomial]) -> BarElem<Monomial> {
    let mut out = BarElem::zero(ModuleKind::Trivial);
    out.terms.add_term(crate::bar::BarWord { module: Monomial::unit(), letters: x.to_vec() }, Q::one());
    out
}

/// Word degree plus Adams weight of the right factor, for every term.
pub fn coaction_degrees(x: &CoactionElem) -> Vec<i64> {
    let mut out: Vec<i64> = x
        .iter()
        .map(|((u, y), _)| u.degree() as i64 + y.iter().map(Monomial::weight).sum::<i64>())
        .collect();
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn w(xs: &[i64]) -> PathWord {
        PathWord(xs.iter().map(|&x| q(x)).collect())
    }

    #[test]
    fn small_coactions() {
        let (a, b) = (q(0), q(1));
        let e = coaction(&PathWord::empty(), &a, &b, 3).unwrap();
        assert_eq!(e, CoactionElem::term((PathWord::empty(), Vec::new()), q(1)));
        let x = coaction(&w(&[5]), &a, &b, 3).unwrap();
        let mut want = CoactionElem::term((w(&[5]), Vec::new()), q(1));
        for (letters, c) in bar_terms(&bar_canonical(&T_bar(&Seq::from_ints(0, &[5], 1)))) {
            want.add_term((PathWord::empty(), letters), -c);
        }
        assert_eq!(x, want);
        assert!(matches!(coaction(&w(&[5, 5]), &a, &b, 1), Err(Error::TruncationExceeded { .. })));
        let y = coaction(&w(&[3, 5]), &a, &b, 2).unwrap();
        assert_eq!(coaction_degrees(&y), vec![2]);
        let lefts: std::collections::BTreeSet<PathWord> = y.iter().map(|((u, _), _)| u.clone()).collect();
        assert_eq!(lefts.len(), 4);
    }

    #[test]
    fn comodule_laws() {
        let s = [q(0), q(1)];
        for trunc in 1..=3 {
            assert!(check_counit(&q(0), &q(1), &s, trunc));
            assert!(check_coassociativity(&q(0), &q(1), &s, trunc), "trunc {trunc}");
        }
    }

    #[test]
    fn composition() {
        let (a, c, b) = (q(0), q(7), q(1));
        let one = TorsorElem::word(a.clone(), c.clone(), 2, PathWord::empty()).unwrap();
        let one2 = TorsorElem::word(c.clone(), b.clone(), 2, PathWord::empty()).unwrap();
        let xs = TorsorElem::word(a.clone(), c.clone(), 2, w(&[3])).unwrap();
        assert_eq!(compose_paths(&one, &one2).unwrap().terms, LinComb::basis(PathWord::empty()));
        assert_eq!(compose_paths(&xs, &one2).unwrap().terms, LinComb::basis(w(&[3])));
        assert!(matches!(compose_paths(&one2, &one2), Err(Error::EndpointMismatch(_))));
        assert!(check_composition(&a, &c, &b, &[q(3), q(5)], 2));
    }
}
