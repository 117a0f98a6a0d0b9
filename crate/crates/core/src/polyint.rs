//! Iterated-integral elements: sums of 3-valent trees, admissible polygon
//! decompositions and the closed bar element `T(a₀;a₁,…,aₙ;aₙ₊₁)`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::algebra::{
    alg_diff, alg_mul, canonical, canonical_monomial, forest_elem, tree_elem, AlgElem, Monomial,
    TildeTreeDga, TreeDga,
};
use crate::bar::{
    bar_coproduct, bar_shuffle, expand_word, map_tensor, tensor, BarElem, ModuleKind, TensorElem,
};
use crate::error::{Error, Result};
use crate::rational::{format_q, parse_q, q};
use crate::tree::{binary_shapes, make_tree, Edge, Label, Node, Tree};

/// A sequence `(a₀; a₁,…,aₙ; aₙ₊₁)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Seq {
    pub a0: Label,
    pub middle: Vec<Label>,
    pub a_end: Label,
}

#[derive(Serialize, Deserialize)]
struct SeqJson {
    from: String,
    mid: Vec<String>,
    to: String,
}

impl Seq {
    pub fn new(a0: Label, middle: Vec<Label>, a_end: Label) -> Self {
        Self { a0, middle, a_end }
    }

    pub fn from_ints(a0: i64, middle: &[i64], a_end: i64) -> Self {
        Self::new(q(a0), middle.iter().map(|&x| q(x)).collect(), q(a_end))
    }

    pub fn n(&self) -> usize {
        self.middle.len()
    }

    /// The full sequence `a₀,…,aₙ₊₁`.
    pub fn full(&self) -> Vec<Label> {
        let mut v = vec![self.a0.clone()];
        v.extend(self.middle.iter().cloned());
        v.push(self.a_end.clone());
        v
    }

    fn from_full(full: &[Label]) -> Self {
        let k = full.len();
        Self::new(full[0].clone(), full[1..k - 1].to_vec(), full[k - 1].clone())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(SeqJson {
            from: format_q(&self.a0),
            mid: self.middle.iter().map(format_q).collect(),
            to: format_q(&self.a_end),
        })
        .expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let j: SeqJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(Self::new(
            parse_q(&j.from)?,
            j.mid.iter().map(|s| parse_q(s)).collect::<Result<_>>()?,
            parse_q(&j.to)?,
        ))
    }
    /// `"a₀;a₁,…,aₙ;aₙ₊₁"` (the middle may be empty), optionally parenthesized,
    /// or the JSON object form.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.starts_with('{') {
            let v: serde_json::Value = serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()))?;
            return Self::from_json(&v);
        }
        let t = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(t);
        let parts: Vec<&str> = t.split(';').collect();
        let [from, mid, to] = parts[..] else {
            return Err(Error::Parse(format!("expected \"from;mid;to\", got {text:?}")));
        };
        let middle = if mid.trim().is_empty() {
            Vec::new()
        } else {
            mid.split(',').map(parse_q).collect::<Result<_>>()?
        };
        Ok(Self::new(parse_q(from)?, middle, parse_q(to)?))
    }
}

impl std::str::FromStr for Seq {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl std::fmt::Display for Seq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mid: Vec<String> = self.middle.iter().map(format_q).collect();
        write!(f, "({}; {}; {})", format_q(&self.a0), mid.join(", "), format_q(&self.a_end))
    }
}

/// Sub-polygon given by increasing positions in the full sequence.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Polygon {
    pub vertices: Vec<(usize, Label)>,
}

impl Polygon {
    pub fn of_seq(s: &Seq) -> Self {
        Self { vertices: s.full().into_iter().enumerate().collect() }
    }

    pub fn positions(&self) -> Vec<usize> {
        self.vertices.iter().map(|v| v.0).collect()
    }

    fn sub(&self, positions: &[usize]) -> Polygon {
        Polygon {
            vertices: self
                .vertices
                .iter()
                .filter(|v| positions.contains(&v.0))
                .cloned()
                .collect(),
        }
    }

    pub fn seq(&self) -> Seq {
        Seq::from_full(&self.vertices.iter().map(|v| v.1.clone()).collect::<Vec<_>>())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Decomposition {
    pub parts: Vec<Polygon>,
}

impl Decomposition {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.parts.iter().map(Polygon::positions).collect::<Vec<_>>())
            .expect("serializable")
    }
}

pub fn is_generic(s: &Seq) -> bool {
    if s.a0 == s.a_end {
        return true;
    }
    let mut seen = BTreeSet::new();
    s.full().into_iter().filter(|x| *x != q(0)).all(|x| seen.insert(x))
}

/// Sum of all planar 3-valent trees with the given root and leaves in order.
pub fn t_tilde(root: &Label, leaves: &[Label]) -> Result<AlgElem> {
    if leaves.is_empty() {
        return Err(Error::EmptyLeafList);
    }
    let mut out = AlgElem::zero();
    for shape in binary_shapes(leaves.len()) {
        out.add_assign(&tree_elem(make_tree(root.clone(), &shape, leaves, None)?));
    }
    Ok(out)
}

/// `t(a₀;…;aₙ₊₁) = t̃(a₀;a₁,…,aₙ) − t̃(aₙ₊₁;a₁,…,aₙ)`, zero when `n = 0`.
pub fn t_poly(s: &Seq) -> AlgElem {
    if s.middle.is_empty() {
        return AlgElem::zero();
    }
    let a = t_tilde(&s.a0, &s.middle).expect("nonempty");
    let b = t_tilde(&s.a_end, &s.middle).expect("nonempty");
    a.difference(&b)
}

/// Both sides of an identity, compared exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity<T> {
    pub lhs: T,
    pub rhs: T,
}

impl<T: PartialEq> Identity<T> {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// `d t(a) = −Σ_{i<j} t(a₀;…,a_i,a_{j+1},…;aₙ₊₁)·t(a_i;a_{i+1},…,a_j;a_{j+1})`, in the quotient.
pub fn verify_prop_tree(s: &Seq) -> Identity<AlgElem> {
    let full = s.full();
    let n = s.n();
    let lhs = canonical(&alg_diff(&t_poly(s)));
    let mut rhs = AlgElem::zero();
    for i in 0..=n {
        for j in i + 1..=n {
            let mut outer = full[..=i].to_vec();
            outer.extend(full[j + 1..].iter().cloned());
            let inner = &full[i..=j + 1];
            let prod = alg_mul(&t_poly(&Seq::from_full(&outer)), &t_poly(&Seq::from_full(inner)));
            rhs.sub_assign(&prod);
        }
    }
    Identity { lhs, rhs: canonical(&rhs) }
}

/// Non-crossing dissections of the polygon into parts with at least three vertices.
fn dissections(positions: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let m = positions.len();
    if m < 3 {
        return vec![Vec::new()];
    }
    // the part containing the side (first, last)
    let inner = &positions[1..m - 1];
    let mut out = Vec::new();
    for mask in 1u32..(1 << inner.len()) {
        let mut part = vec![positions[0]];
        part.extend((0..inner.len()).filter(|k| mask >> k & 1 == 1).map(|k| inner[k]));
        part.push(positions[m - 1]);
        let mut pieces: Vec<Vec<Vec<Vec<usize>>>> = Vec::new();
        for w in part.windows(2) {
            let lo = positions.iter().position(|&p| p == w[0]).expect("member");
            let hi = positions.iter().position(|&p| p == w[1]).expect("member");
            if hi > lo + 1 {
                pieces.push(dissections(&positions[lo..=hi]));
            }
        }
        let mut combos: Vec<Vec<Vec<usize>>> = vec![vec![part.clone()]];
        for options in pieces {
            let mut next = Vec::new();
            for c in &combos {
                for o in &options {
                    let mut c = c.clone();
                    c.extend(o.iter().cloned());
                    next.push(c);
                }
            }
            combos = next;
        }
        out.extend(combos);
    }
    out
}

fn shares_diagonal(p: &[usize], q: &[usize]) -> bool {
    p.iter().filter(|x| q.contains(x)).count() == 2
}

/// `p` must precede `q` when they are adjacent and `p` holds the extreme vertices of their union.
fn must_precede(p: &[usize], q: &[usize]) -> bool {
    if !shares_diagonal(p, q) {
        return false;
    }
    let lo = *p.iter().chain(q).min().expect("nonempty");
    let hi = *p.iter().chain(q).max().expect("nonempty");
    p.contains(&lo) && p.contains(&hi)
}

pub fn is_admissible_order(parts: &[Vec<usize>]) -> bool {
    (0..parts.len()).all(|i| (i + 1..parts.len()).all(|j| !must_precede(&parts[j], &parts[i])))
}

/// Linear extensions of the precedence relation, in lexicographic order of part indices.
fn admissible_orders(parts: &[Vec<usize>]) -> Vec<Vec<usize>> {
    fn go(
        parts: &[Vec<usize>],
        used: &mut Vec<bool>,
        acc: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if acc.len() == parts.len() {
            out.push(acc.clone());
            return;
        }
        for i in 0..parts.len() {
            if used[i] {
                continue;
            }
            let blocked =
                (0..parts.len()).any(|j| !used[j] && j != i && must_precede(&parts[j], &parts[i]));
            if blocked {
                continue;
            }
            used[i] = true;
            acc.push(i);
            go(parts, used, acc, out);
            acc.pop();
            used[i] = false;
        }
    }
    let mut out = Vec::new();
    go(parts, &mut vec![false; parts.len()], &mut Vec::new(), &mut out);
    out
}

/// All admissible ordered decompositions, in a deterministic order.
pub fn enumerate_decompositions(p: &Polygon) -> Vec<Decomposition> {
    let mut out = Vec::new();
    let positions = p.positions();
    if positions.len() < 3 {
        return out;
    }
    for mut parts in dissections(&positions) {
        parts.sort();
        for order in admissible_orders(&parts) {
            out.push(Decomposition { parts: order.iter().map(|&i| p.sub(&parts[i])).collect() });
        }
    }
    out
}

/// `T(a) = Σ_D [t(P₁)|…|t(P_k)]`; `T(a;b) = 1`.
#[allow(non_snake_case)]
pub fn T_bar(s: &Seq) -> BarElem<Monomial> {
    let unit = Monomial::unit();
    if s.middle.is_empty() {
        return expand_word(ModuleKind::Trivial, unit, &[]);
    }
    let mut out = BarElem::zero(ModuleKind::Trivial);
    for d in enumerate_decompositions(&Polygon::of_seq(s)) {
        let letters: Vec<AlgElem> = d.parts.iter().map(|p| t_poly(&p.seq())).collect();
        out.add_assign(&expand_word(ModuleKind::Trivial, unit.clone(), &letters));
    }
    out
}

/// Letterwise projection to the quotient algebra.
pub fn bar_canonical(x: &BarElem<Monomial>) -> BarElem<Monomial> {
    x.map_letters(canonical_monomial)
}

fn relabel_edges(e: &Edge, out: &mut Vec<Label>) {
    match &e.head {
        Node::Leaf(b) => out.push(if *b == q(0) { q(1) } else { q(0) }),
        Node::Inner(children) => {
            out.push(q(0));
            for c in children {
                relabel_edges(c, out);
            }
        }
    }
}

/// Edge labelling of an admissible tree by the `{0,1}` rule.
pub fn dec_tree(t: &Tree) -> Result<Tree> {
    let mut seen = BTreeSet::new();
    for x in t.decorations() {
        if x != q(0) && !seen.insert(x.clone()) {
            return Err(Error::NotAdmissibleTree(format!("label {} repeats in {t}", format_q(&x))));
        }
    }
    Ok(dec_unchecked(t))
}

/// The `{0,1}` edge labelling without the admissibility check.
pub fn dec_unchecked(t: &Tree) -> Tree {
    let mut labels = Vec::new();
    relabel_edges(&t.stem, &mut labels);
    make_tree(t.root.clone(), &t.shape(), &t.leaves(), Some(&labels)).expect("same shape")
}

pub fn dec(x: &AlgElem) -> Result<AlgElem> {
    x.try_flat_map(|m| {
        let trees = m.factors().iter().map(dec_tree).collect::<Result<Vec<_>>>()?;
        Ok(forest_elem(trees, 1))
    })
}

/// The combinatorial representative of the motivic iterated integral.
pub fn motivic_ii(s: &Seq) -> Result<BarElem<Monomial>> {
    if !is_generic(s) {
        return Err(Error::NonGenericSequence(s.to_string()));
    }
    T_bar(s).try_map_letters(|m| dec(&AlgElem::basis(m.clone())))
}

/// All interleavings of two lists.
pub fn interleavings<T: Clone>(a: &[T], b: &[T]) -> Vec<Vec<T>> {
    if a.is_empty() {
        return vec![b.to_vec()];
    }
    if b.is_empty() {
        return vec![a.to_vec()];
    }
    let mut out = Vec::new();
    for mut w in interleavings(&a[1..], b) {
        w.insert(0, a[0].clone());
        out.push(w);
    }
    for mut w in interleavings(a, &b[1..]) {
        w.insert(0, b[0].clone());
        out.push(w);
    }
    out
}

/// Shuffle product in the quotient, with canonical letters.
pub fn shuffle_t(x: &BarElem<Monomial>, y: &BarElem<Monomial>) -> BarElem<Monomial> {
    bar_canonical(&bar_shuffle(&TildeTreeDga, &bar_canonical(x), &bar_canonical(y)))
}

/// `T(a;s₁;b)·T(a;s₂;b) = Σ_σ T(a;σ(s₁,s₂);b)`.
pub fn verify_shuffle(a: &Label, s1: &[Label], s2: &[Label], b: &Label) -> Identity<BarElem<Monomial>> {
    let lhs = shuffle_t(
        &T_bar(&Seq::new(a.clone(), s1.to_vec(), b.clone())),
        &T_bar(&Seq::new(a.clone(), s2.to_vec(), b.clone())),
    );
    let mut rhs = BarElem::zero(ModuleKind::Trivial);
    for w in interleavings(s1, s2) {
        rhs.add_assign(&T_bar(&Seq::new(a.clone(), w, b.clone())));
    }
    Identity { lhs, rhs: bar_canonical(&rhs) }
}

/// `T(a;s;b) = Σ_k T(a;s₁…s_k;c)·T(c;s_{k+1}…sₙ;b)`.
pub fn verify_path_composition(s: &Seq, c: &Label) -> Identity<BarElem<Monomial>> {
    let lhs = bar_canonical(&T_bar(s));
    let mut rhs = BarElem::zero(ModuleKind::Trivial);
    for k in 0..=s.n() {
        let left = T_bar(&Seq::new(s.a0.clone(), s.middle[..k].to_vec(), c.clone()));
        let right = T_bar(&Seq::new(c.clone(), s.middle[k..].to_vec(), s.a_end.clone()));
        rhs.add_assign(&shuffle_t(&left, &right));
    }
    Identity { lhs, rhs }
}

/// `T(a;s₁…sₙ;b) = (−1)ⁿ T(b;sₙ…s₁;a)`.
pub fn verify_antipode(s: &Seq) -> Identity<BarElem<Monomial>> {
    let mut rev = s.middle.clone();
    rev.reverse();
    let mirrored = T_bar(&Seq::new(s.a_end.clone(), rev, s.a0.clone()));
    let sign = if s.n() % 2 == 1 { q(-1) } else { q(1) };
    Identity { lhs: bar_canonical(&T_bar(s)), rhs: bar_canonical(&mirrored.scaled(&sign)) }
}

/// `Δ T(a;s;b) = Σ T(a;s_{i₁},…,s_{i_k};b) ⊗ Π_j T(s_{i_j};…;s_{i_{j+1}})`.
pub fn verify_coproduct(s: &Seq) -> Identity<TensorElem<Monomial>> {
    let full = s.full();
    let n = s.n();
    let lhs = map_tensor(
        &bar_coproduct(&T_bar(s)).expect("trivial module"),
        canonical_monomial,
    );
    let mut rhs = TensorElem::zero();
    for mask in 0u32..(1 << n) {
        let mut chain = vec![0];
        chain.extend((1..=n).filter(|i| mask >> (i - 1) & 1 == 1));
        chain.push(n + 1);
        let picked: Vec<Label> = chain[1..chain.len() - 1].iter().map(|&i| full[i].clone()).collect();
        let left = T_bar(&Seq::new(s.a0.clone(), picked, s.a_end.clone()));
        let mut right = T_bar(&Seq::new(q(0), Vec::new(), q(0)));
        for w in chain.windows(2) {
            let piece = T_bar(&Seq::from_full(&full[w[0]..=w[1]]));
            right = shuffle_t(&right, &piece);
        }
        rhs.add_assign(&tensor(&bar_canonical(&left), &right));
    }
    Identity { lhs, rhs: map_tensor(&rhs, canonical_monomial) }
}

/// `d T(a) = 0` in the planar algebra.
pub fn is_closed(s: &Seq) -> bool {
    crate::bar::is_cocycle(&TreeDga, &T_bar(s)).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{qr, Q};
    use crate::tree::{make_tree, Shape};

    fn brute_force_count(n: usize) -> usize {
        fn perms(k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![Vec::new()];
            }
            let mut out = Vec::new();
            for p in perms(k - 1) {
                for pos in 0..=p.len() {
                    let mut p = p.clone();
                    p.insert(pos, k - 1);
                    out.push(p);
                }
            }
            out
        }
        let positions: Vec<usize> = (0..n + 2).collect();
        let mut count = 0;
        for parts in dissections(&positions) {
            for p in perms(parts.len()) {
                let ordered: Vec<Vec<usize>> = p.iter().map(|&i| parts[i].clone()).collect();
                if is_admissible_order(&ordered) {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn genericity() {
        assert!(is_generic(&Seq::from_ints(0, &[1, 0, 0], 5)));
        assert!(!is_generic(&Seq::from_ints(0, &[3, 3], 1)));
        assert!(is_generic(&Seq::from_ints(2, &[7, 2], 2)));
    }

    #[test]
    fn tilde_counts() {
        assert_eq!(t_tilde(&q(0), &[]), Err(Error::EmptyLeafList));
        assert_eq!(t_tilde(&q(0), &[q(1)]).unwrap().len(), 1);
        let leaves: Vec<Q> = (1..=3).map(q).collect();
        assert_eq!(t_tilde(&q(0), &leaves).unwrap().len(), 2);
        let leaves: Vec<Q> = (1..=5).map(q).collect();
        assert_eq!(t_tilde(&q(0), &leaves).unwrap().len(), 14);
    }

    #[test]
    fn t_poly_examples() {
        assert!(t_poly(&Seq::from_ints(2, &[], 3)).is_zero());
        assert!(t_poly(&Seq::from_ints(4, &[1, 2], 4)).is_zero());
        let t = t_poly(&Seq::from_ints(0, &[5], 1));
        let e = |a| tree_elem(make_tree(q(a), &Shape::leaf(), &[q(5)], None).unwrap());
        assert_eq!(t, e(0).difference(&e(1)));
    }

    #[test]
    fn decomposition_counts_match_brute_force() {
        let counts: Vec<usize> = (1..=5)
            .map(|n| enumerate_decompositions(&Polygon::of_seq(&Seq::from_ints(0, &vec![2; n], 1))).len())
            .collect();
        let brute: Vec<usize> = (1..=5).map(brute_force_count).collect();
        assert_eq!(counts, brute);
        assert_eq!(counts[0], 1);
        assert_eq!(counts, vec![1, 3, 12, 60, 360]);
    }

    #[test]
    fn prop_tree_small() {
        assert!(verify_prop_tree(&Seq::from_ints(0, &[3], 1)).lhs.is_zero());
        for s in [Seq::from_ints(0, &[3, 5], 1), Seq::from_ints(0, &[3, 5, 7], 1), Seq::from_ints(2, &[0, 0, 5], 0)] {
            let id = verify_prop_tree(&s);
            assert!(id.holds(), "{s}: {:?}", id);
        }
    }

    #[test]
    fn closed_small() {
        assert!(T_bar(&Seq::from_ints(4, &[3], 4)).is_zero());
        assert_eq!(T_bar(&Seq::from_ints(0, &[3], 1)).len(), 2);
        for s in [Seq::from_ints(0, &[3], 1), Seq::from_ints(0, &[3, 5], 1), Seq::from_ints(0, &[3, 5, 7], 1)] {
            assert!(is_closed(&s), "{s}");
        }
    }

    #[test]
    fn dec_examples() {
        let t = make_tree(q(2), &Shape::leaf(), &[q(0)], None).unwrap();
        assert_eq!(dec_tree(&t).unwrap().edge_labels(), Some(vec![q(1)]));
        let t = make_tree(q(0), &Shape::leaf(), &[q(3)], None).unwrap();
        assert_eq!(dec_tree(&t).unwrap().edge_labels(), Some(vec![q(0)]));
        let t = make_tree(q(0), &Shape(vec![Shape::leaf(), Shape::leaf()]), &[q(3), q(3)], None).unwrap();
        assert!(matches!(dec_tree(&t), Err(Error::NotAdmissibleTree(_))));
        assert!(matches!(motivic_ii(&Seq::from_ints(0, &[3, 3], 1)), Err(Error::NonGenericSequence(_))));
        assert!(motivic_ii(&Seq::from_ints(0, &[1, 0], 2)).is_ok());
        assert!(motivic_ii(&Seq::from_ints(3, &[1, 2], 3)).unwrap().is_zero());
    }

    #[test]
    fn hopf_identities_small() {
        let (a, b) = (q(0), q(1));
        assert!(verify_shuffle(&a, &[q(3)], &[q(5)], &b).holds());
        assert!(verify_shuffle(&a, &[q(3)], &[q(5), q(7)], &b).holds());
        assert!(verify_path_composition(&Seq::from_ints(0, &[], 1), &q(9)).holds());
        assert!(verify_path_composition(&Seq::from_ints(0, &[3], 1), &q(9)).holds());
        assert!(verify_path_composition(&Seq::from_ints(0, &[3, 5], 1), &q(9)).holds());
        for n in 1..=3 {
            let s = Seq::from_ints(0, &[3, 5, 7][..n], 1);
            assert!(verify_antipode(&s).holds(), "antipode n={n}");
            assert!(verify_coproduct(&s).holds(), "coproduct n={n}");
        }
    }

    #[test]
    fn seq_syntax() {
        let s = Seq::from_ints(0, &[3, 5], 1);
        assert_eq!(Seq::parse("0;3,5;1").unwrap(), s);
        assert_eq!(Seq::parse(&s.to_string()).unwrap(), s);
        assert_eq!(Seq::parse(&s.to_json().to_string()).unwrap(), s);
        assert_eq!(Seq::parse("1/2;;-3").unwrap(), Seq::new(qr(1, 2), vec![], q(-3)));
        assert!(Seq::parse("0;1").is_err());
        assert!(Seq::parse("0;x;1").is_err());
    }
}
