//! Bar construction `B(M, A)` over a graded-commutative DGA with Adams grading.
//!
//! Elements are kept fully multilinear: each letter is a basis element of `A`,
//! so equality of bar elements is equality of coefficient maps.

use std::fmt;

use num_traits::One;
use serde_json::{json, Value};

use crate::algebra::{elem_bigrading, AlgElem, Dga, Monomial};
use crate::error::{Error, Result};
use crate::linear::LinComb;
use crate::rational::{format_q, q, Q};

/// Multilinear expansion of a list of linear combinations into letter lists.
pub fn expand_letters<B: Ord + Clone>(letters: &[LinComb<B>]) -> Vec<(Vec<B>, Q)> {
    let mut partial: Vec<(Vec<B>, Q)> = vec![(Vec::new(), Q::one())];
    for x in letters {
        let mut next = Vec::new();
        for (w, c) in &partial {
            for (b, y) in x.iter() {
                let mut w = w.clone();
                w.push(b.clone());
                next.push((w, c * y));
            }
        }
        partial = next;
    }
    partial
}

/// `m[x_1|…|x_r]` with each `x_i` a linear combination.
pub fn expand_word<B: Ord + Clone>(kind: ModuleKind, module: B, letters: &[LinComb<B>]) -> BarElem<B> {
    let mut out = BarElem::zero(kind);
    for (letters, c) in expand_letters(letters) {
        out.terms.add_term(BarWord { module: module.clone(), letters }, c);
    }
    out
}

/// Applies a letterwise linear map to both sides of a tensor.
pub fn map_tensor<B: Ord + Clone>(
    x: &TensorElem<B>,
    mut f: impl FnMut(&B) -> LinComb<B>,
) -> TensorElem<B> {
    let mut out = TensorElem::zero();
    for ((l, r), c) in x.iter() {
        let lhs = expand_letters(&l.iter().map(&mut f).collect::<Vec<_>>());
        let rhs = expand_letters(&r.iter().map(&mut f).collect::<Vec<_>>());
        for (wl, cl) in &lhs {
            for (wr, cr) in &rhs {
                out.add_term((wl.clone(), wr.clone()), c * cl * cr);
            }
        }
    }
    out
}

/// `x ⊗ y` for trivial-module bar elements.
pub fn tensor<B: Ord + Clone>(x: &BarElem<B>, y: &BarElem<B>) -> TensorElem<B> {
    let mut out = TensorElem::zero();
    for (u, cu) in x.terms.iter() {
        for (v, cv) in y.terms.iter() {
            out.add_term((u.letters.clone(), v.letters.clone()), cu * cv);
        }
    }
    out
}

/// Which module the bar complex is built over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModuleKind {
    /// `M = ℚ` in degree 0, with `A⁺` acting by zero.
    Trivial,
    /// `M = A` acting on itself.
    Algebra,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BarWord<B> {
    pub module: B,
    pub letters: Vec<B>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarElem<B: Ord> {
    pub kind: ModuleKind,
    pub terms: LinComb<BarWord<B>>,
}

/// Elements of `B ⊗ B` over the trivial module, as pairs of letter lists.
pub type TensorElem<B> = LinComb<(Vec<B>, Vec<B>)>;

/// Elements of `B ⊗ B ⊗ B` over the trivial module.
pub type TripleElem<B> = LinComb<(Vec<B>, Vec<B>, Vec<B>)>;

fn sign_q(odd: bool) -> Q {
    if odd {
        q(-1)
    } else {
        q(1)
    }
}

/// `J(a) = (−1)^{deg(a)−1} a` on a homogeneous element of the tree algebra.
pub fn j_twist(a: &AlgElem) -> Result<AlgElem> {
    if a.is_zero() {
        return Ok(a.clone());
    }
    let g = elem_bigrading(a)
        .or_else(|| {
            let mut degs = a.iter().map(|(m, _)| m.degree());
            let d = degs.next()?;
            degs.all(|x| x == d).then_some(crate::tree::Bigrading { n: d, r: 0 })
        })
        .ok_or(Error::NonHomogeneous)?;
    Ok(a.scaled(&sign_q((g.n - 1).rem_euclid(2) == 1)))
}

impl<B: Ord + Clone> BarElem<B> {
    pub fn zero(kind: ModuleKind) -> Self {
        Self { kind, terms: LinComb::zero() }
    }

    /// The trivial-module word `[a_1|…|a_r]`.
    pub fn word<D: Dga<Basis = B>>(dga: &D, letters: Vec<B>) -> Self {
        Self::word_coeff(dga, letters, Q::one())
    }

    pub fn word_coeff<D: Dga<Basis = B>>(dga: &D, letters: Vec<B>, c: Q) -> Self {
        let mut out = Self::zero(ModuleKind::Trivial);
        out.terms.add_term(BarWord { module: dga.unit(), letters }, c);
        out
    }

    /// `1[]`.
    pub fn one<D: Dga<Basis = B>>(dga: &D) -> Self {
        Self::word(dga, Vec::new())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_assign(&mut self, other: &Self) {
        self.terms.add_assign(&other.terms);
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Q) {
        self.terms.add_scaled(&other.terms, c);
    }

    pub fn scaled(&self, c: &Q) -> Self {
        Self { kind: self.kind, terms: self.terms.scaled(c) }
    }

    pub fn difference(&self, other: &Self) -> Self {
        Self { kind: self.kind, terms: self.terms.difference(&other.terms) }
    }

    /// Coefficient of the empty word (the counit for the trivial module).
    pub fn counit(&self) -> Q {
        self.terms
            .iter()
            .filter(|(w, _)| w.letters.is_empty())
            .fold(Q::from_integer(0.into()), |acc, (_, c)| acc + c)
    }

    /// Applies a linear map letterwise (and to the module slot), expanding multilinearly.
    pub fn map_letters<C: Ord + Clone>(
        &self,
        mut f: impl FnMut(&B) -> LinComb<C>,
    ) -> BarElem<C> {
        self.try_map_letters(|b| Ok::<_, ()>(f(b))).expect("infallible")
    }

    pub fn try_map_letters<C: Ord + Clone, E>(
        &self,
        mut f: impl FnMut(&B) -> std::result::Result<LinComb<C>, E>,
    ) -> std::result::Result<BarElem<C>, E> {
        let mut out = BarElem::zero(self.kind);
        for (w, c) in self.terms.iter() {
            let mut partial: Vec<(BarWord<C>, Q)> = Vec::new();
            for (m, x) in f(&w.module)?.iter() {
                partial.push((BarWord { module: m.clone(), letters: Vec::new() }, c * x));
            }
            for a in &w.letters {
                let image = f(a)?;
                let mut next = Vec::new();
                for (pw, pc) in &partial {
                    for (b, y) in image.iter() {
                        let mut letters = pw.letters.clone();
                        letters.push(b.clone());
                        next.push((BarWord { module: pw.module.clone(), letters }, pc * y));
                    }
                }
                partial = next;
                if partial.is_empty() {
                    break;
                }
            }
            for (pw, pc) in partial {
                out.terms.add_term(pw, pc);
            }
        }
        Ok(out)
    }

    /// Total degree and Adams weight of each word.
    pub fn gradings<D: Dga<Basis = B>>(&self, dga: &D) -> Vec<(i64, i64)> {
        let mut out: Vec<(i64, i64)> = self
            .terms
            .iter()
            .map(|(w, _)| word_grading(dga, self.kind, w))
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

fn module_degree<D: Dga>(dga: &D, kind: ModuleKind, m: &D::Basis) -> i64 {
    match kind {
        ModuleKind::Trivial => 0,
        ModuleKind::Algebra => dga.degree(m),
    }
}

pub fn word_grading<D: Dga>(dga: &D, kind: ModuleKind, w: &BarWord<D::Basis>) -> (i64, i64) {
    let deg = module_degree(dga, kind, &w.module)
        + w.letters.iter().map(|a| dga.degree(a) - 1).sum::<i64>();
    let weight = match kind {
        ModuleKind::Trivial => 0,
        ModuleKind::Algebra => dga.weight(&w.module),
    } + w.letters.iter().map(|a| dga.weight(a)).sum::<i64>();
    (deg, weight)
}

/// `(−1)^{deg−1}` for a basis element.
fn j_sign<D: Dga>(dga: &D, b: &D::Basis) -> bool {
    (dga.degree(b) - 1).rem_euclid(2) == 1
}

fn module_j_sign<D: Dga>(dga: &D, kind: ModuleKind, m: &D::Basis) -> bool {
    (module_degree(dga, kind, m) - 1).rem_euclid(2) == 1
}

/// `d = d_ext + d_int`.
pub fn bar_diff<D: Dga>(dga: &D, x: &BarElem<D::Basis>) -> BarElem<D::Basis> {
    let mut out = BarElem::zero(x.kind);
    for (w, c) in x.terms.iter() {
        let jm = module_j_sign(dga, x.kind, &w.module);
        // d m [a_1|…|a_r]
        if x.kind == ModuleKind::Algebra {
            for (dm, y) in dga.diff(&w.module).iter() {
                out.terms.add_term(
                    BarWord { module: dm.clone(), letters: w.letters.clone() },
                    c * y,
                );
            }
        }
        // Σ_i Jm[Ja_1|…|Ja_{i−1}|da_i|a_{i+1}|…]
        let mut prefix_odd = jm;
        for i in 0..w.letters.len() {
            for (da, y) in dga.diff(&w.letters[i]).iter() {
                let mut letters = w.letters.clone();
                letters[i] = da.clone();
                out.terms.add_term(
                    BarWord { module: w.module.clone(), letters },
                    c * y * sign_q(prefix_odd),
                );
            }
            prefix_odd ^= j_sign(dga, &w.letters[i]);
        }
        // Jm·a_1 [a_2|…]
        if x.kind == ModuleKind::Algebra && !w.letters.is_empty() {
            for (ma, y) in dga.mul(&w.module, &w.letters[0]).iter() {
                out.terms.add_term(
                    BarWord { module: ma.clone(), letters: w.letters[1..].to_vec() },
                    c * y * sign_q(jm),
                );
            }
        }
        // Σ_i Jm[Ja_1|…|Ja_{i−1}|Ja_i·a_{i+1}|…]
        let mut prefix_odd = jm;
        for i in 0..w.letters.len().saturating_sub(1) {
            prefix_odd ^= j_sign(dga, &w.letters[i]);
            for (p, y) in dga.mul(&w.letters[i], &w.letters[i + 1]).iter() {
                let mut letters = w.letters[..i].to_vec();
                letters.push(p.clone());
                letters.extend(w.letters[i + 2..].iter().cloned());
                out.terms.add_term(
                    BarWord { module: w.module.clone(), letters },
                    c * y * sign_q(prefix_odd),
                );
            }
        }
    }
    out
}

/// Shuffle product; letters carry Koszul weight `deg − 1`.
pub fn bar_shuffle<D: Dga>(
    dga: &D,
    x: &BarElem<D::Basis>,
    y: &BarElem<D::Basis>,
) -> BarElem<D::Basis> {
    let kind = if x.kind == ModuleKind::Algebra || y.kind == ModuleKind::Algebra {
        ModuleKind::Algebra
    } else {
        ModuleKind::Trivial
    };
    let mut out = BarElem::zero(kind);
    for (u, cu) in x.terms.iter() {
        for (v, cv) in y.terms.iter() {
            let modules = dga.mul(&u.module, &v.module);
            let wu: Vec<bool> = u.letters.iter().map(|a| j_sign(dga, a)).collect();
            let wv: Vec<bool> = v.letters.iter().map(|a| j_sign(dga, a)).collect();
            for (letters, odd) in shuffles(&u.letters, &wu, &v.letters, &wv) {
                for (m, cm) in modules.iter() {
                    out.terms.add_term(
                        BarWord { module: m.clone(), letters: letters.clone() },
                        cu * cv * cm * sign_q(odd),
                    );
                }
            }
        }
    }
    out
}

/// All interleavings of `a` and `b` with the Koszul parity of each.
fn shuffles<T: Clone>(a: &[T], wa: &[bool], b: &[T], wb: &[bool]) -> Vec<(Vec<T>, bool)> {
    fn go<T: Clone>(
        a: &[T],
        wa: &[bool],
        b: &[T],
        wb: &[bool],
        acc: &mut Vec<T>,
        odd: bool,
        out: &mut Vec<(Vec<T>, bool)>,
    ) {
        if a.is_empty() && b.is_empty() {
            out.push((acc.clone(), odd));
            return;
        }
        if let Some((x, rest)) = a.split_first() {
            acc.push(x.clone());
            go(rest, &wa[1..], b, wb, acc, odd, out);
            acc.pop();
        }
        if let Some((y, rest)) = b.split_first() {
            // y jumps over every remaining letter of a
            let passed = wb[0] && (wa.iter().filter(|&&w| w).count() % 2 == 1);
            acc.push(y.clone());
            go(a, wa, rest, &wb[1..], acc, odd ^ passed, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(a, wa, b, wb, &mut Vec::new(), false, &mut out);
    out
}

/// Deconcatenation coproduct on the trivial-module bar complex.
pub fn bar_coproduct<B: Ord + Clone>(x: &BarElem<B>) -> Result<TensorElem<B>> {
    if x.kind != ModuleKind::Trivial {
        return Err(Error::NontrivialModule);
    }
    let mut out = TensorElem::zero();
    for (w, c) in x.terms.iter() {
        for s in 0..=w.letters.len() {
            out.add_term((w.letters[..s].to_vec(), w.letters[s..].to_vec()), c.clone());
        }
    }
    Ok(out)
}

/// `(Δ⊗1)Δx − (1⊗Δ)Δx`, as triples of letter lists; zero when `Δ` is coassociative on `x`.
pub fn coassociator<B: Ord + Clone>(x: &BarElem<B>) -> Result<TripleElem<B>> {
    let split = |module: &B, letters: &[B]| {
        let w = BarWord { module: module.clone(), letters: letters.to_vec() };
        bar_coproduct(&BarElem { kind: x.kind, terms: LinComb::basis(w) })
    };
    let mut out = LinComb::zero();
    for (w, c) in x.terms.iter() {
        for ((l, r), c1) in split(&w.module, &w.letters)?.iter() {
            let c = c * c1;
            for ((ll, lr), c2) in split(&w.module, l)?.iter() {
                out.add_term((ll.clone(), lr.clone(), r.clone()), &c * c2);
            }
            for ((rl, rr), c2) in split(&w.module, r)?.iter() {
                out.add_term((l.clone(), rl.clone(), rr.clone()), -(&c * c2));
            }
        }
    }
    Ok(out)
}

/// `Ok(())` when `d x = 0`, otherwise the nonzero residual.
pub fn is_cocycle<D: Dga>(dga: &D, x: &BarElem<D::Basis>) -> std::result::Result<(), BarElem<D::Basis>> {
    let r = bar_diff(dga, x);
    if r.is_zero() {
        Ok(())
    } else {
        Err(r)
    }
}

/// Basis elements that know how to render themselves as JSON.
pub trait JsonBasis {
    fn to_json(&self) -> Value;
}

impl JsonBasis for Monomial {
    fn to_json(&self) -> Value {
        Value::Array(
            self.factors()
                .iter()
                .map(|t| serde_json::to_value(t.to_json()).expect("serializable"))
                .collect(),
        )
    }
}

impl<B: Ord + Clone + JsonBasis> BarElem<B> {
    /// `[{coeff, module, letters}]`; the module is `null` for the trivial module.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(w, c)| {
                    json!({
                        "coeff": format_q(c),
                        "module": match self.kind {
                            ModuleKind::Trivial => Value::Null,
                            ModuleKind::Algebra => w.module.to_json(),
                        },
                        "letters": w.letters.iter().map(JsonBasis::to_json).collect::<Vec<_>>(),
                    })
                })
                .collect(),
        )
    }
}

impl<B: Ord + Clone + fmt::Display> fmt::Display for BarElem<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})", format_q(c))?;
            if self.kind == ModuleKind::Algebra {
                write!(f, "{}", w.module)?;
            }
            write!(f, "[")?;
            for (k, a) in w.letters.iter().enumerate() {
                if k > 0 {
                    write!(f, "|")?;
                }
                write!(f, "{a}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{alg_diff, tree_elem, TreeDga};
    use crate::tree::{make_tree, Shape, Tree};

    fn edge(a: i64, b: i64) -> Tree {
        make_tree(q(a), &Shape::leaf(), &[q(b)], None).unwrap()
    }
    fn cherry(a: i64, b: i64, c: i64) -> Tree {
        make_tree(q(a), &Shape(vec![Shape::leaf(), Shape::leaf()]), &[q(b), q(c)], None).unwrap()
    }
    fn mono(t: Tree) -> Monomial {
        tree_elem(t).iter().next().unwrap().0.clone()
    }

    #[test]
    fn j_twist_signs() {
        let a = tree_elem(cherry(0, 1, 2));
        assert_eq!(j_twist(&a).unwrap(), a);
        let b = alg_diff(&a);
        assert_eq!(j_twist(&b).unwrap(), b.neg());
        assert_eq!(j_twist(&j_twist(&b).unwrap()).unwrap(), b);
        let mixed = a.sum(&b);
        assert_eq!(j_twist(&mixed), Err(Error::NonHomogeneous));
    }

    #[test]
    fn single_letter_differential() {
        let dga = TreeDga;
        let c = mono(cherry(1, 3, 5));
        let w = BarElem::word(&dga, vec![c.clone()]);
        // J(1) = −1 on the trivial module: d[a] = −[da]
        let expected = {
            let mut e = BarElem::zero(ModuleKind::Trivial);
            for (m, y) in dga.diff(&c).iter() {
                e.terms.add_term(BarWord { module: Monomial::unit(), letters: vec![m.clone()] }, -y.clone());
            }
            e
        };
        assert_eq!(bar_diff(&dga, &w), expected);
        assert!(bar_diff(&dga, &BarElem::one(&dga)).is_zero());
    }

    #[test]
    fn shuffle_small() {
        let dga = TreeDga;
        let (a, b, c) = (mono(edge(0, 1)), mono(edge(0, 2)), mono(edge(0, 3)));
        let x = BarElem::word(&dga, vec![a.clone()]);
        let y = BarElem::word(&dga, vec![b.clone()]);
        let mut e = BarElem::word(&dga, vec![a.clone(), b.clone()]);
        e.add_assign(&BarElem::word(&dga, vec![b.clone(), a.clone()]));
        assert_eq!(bar_shuffle(&dga, &x, &y), e);
        let yz = BarElem::word(&dga, vec![b.clone(), c.clone()]);
        let mut e = BarElem::word(&dga, vec![a.clone(), b.clone(), c.clone()]);
        e.add_assign(&BarElem::word(&dga, vec![b.clone(), a.clone(), c.clone()]));
        e.add_assign(&BarElem::word(&dga, vec![b.clone(), c.clone(), a.clone()]));
        assert_eq!(bar_shuffle(&dga, &x, &yz), e);
        assert_eq!(bar_shuffle(&dga, &x, &BarElem::one(&dga)), x);
    }

    #[test]
    fn coproduct_small() {
        let dga = TreeDga;
        let a = mono(edge(0, 1));
        let d = bar_coproduct(&BarElem::word(&dga, vec![a.clone()])).unwrap();
        let mut e = TensorElem::zero();
        e.add_term((vec![], vec![a.clone()]), q(1));
        e.add_term((vec![a.clone()], vec![]), q(1));
        assert_eq!(d, e);
        let d = bar_coproduct(&BarElem::one(&dga)).unwrap();
        assert_eq!(d, TensorElem::term((vec![], vec![]), q(1)));
        let nontrivial: BarElem<Monomial> = BarElem::zero(ModuleKind::Algebra);
        assert_eq!(bar_coproduct(&nontrivial), Err(Error::NontrivialModule));
    }

    #[test]
    fn bar_d_squared_mixed_degrees() {
        let dga = TreeDga;
        let l1 = mono(cherry(1, 3, 5));
        let l2 = mono(cherry(2, 4, 6));
        let l3 = mono(edge(7, 8));
        let x = {
            let mut x = BarElem::word(&dga, vec![l1.clone(), l2.clone(), l3.clone()]);
            x.add_assign(&BarElem::word(&dga, vec![l3.clone(), l1.clone()]));
            x
        };
        assert!(bar_diff(&dga, &bar_diff(&dga, &x)).is_zero());
        // a degree-2 letter
        let d1 = dga.diff(&l1);
        let (m2, _) = d1.iter().next().unwrap();
        let y = BarElem::word(&dga, vec![m2.clone(), l2.clone(), l3.clone()]);
        assert!(bar_diff(&dga, &bar_diff(&dga, &y)).is_zero());
        // algebra module
        let mut z = BarElem::zero(ModuleKind::Algebra);
        z.terms.add_term(BarWord { module: l3.clone(), letters: vec![l1.clone(), l2.clone()] }, q(1));
        assert!(bar_diff(&dga, &bar_diff(&dga, &z)).is_zero());
    }
}
