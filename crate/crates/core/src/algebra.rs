//! The free graded-commutative tree algebra and its quotient by signed
//! automorphisms.

use std::fmt;

use crate::error::Result;
use crate::linear::LinComb;
use crate::rational::{one, q, Q};
use crate::tree::{Bigrading, Tree};

/// Product of trees with factors in non-decreasing order. The empty monomial
/// is the unit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<Tree>);

pub type AlgElem = LinComb<Monomial>;

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn factors(&self) -> &[Tree] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    /// Sorts `trees` into normal order; the Koszul sign counts transpositions
    /// of odd-edge factors. `None` if an odd factor repeats.
    pub fn from_factors(mut trees: Vec<Tree>) -> Option<(i32, Monomial)> {
        let mut sign = 1;
        for i in 1..trees.len() {
            let mut j = i;
            while j > 0 && trees[j - 1] > trees[j] {
                if trees[j - 1].is_odd() && trees[j].is_odd() {
                    sign = -sign;
                }
                trees.swap(j - 1, j);
                j -= 1;
            }
        }
        for w in trees.windows(2) {
            if w[0] == w[1] && w[0].is_odd() {
                return None;
            }
        }
        Some((sign, Monomial(trees)))
    }

    pub fn edge_count(&self) -> usize {
        self.0.iter().map(Tree::edge_count).sum()
    }

    pub fn bigrading(&self) -> Bigrading {
        self.0.iter().map(Tree::bigrading).fold(Bigrading::default(), |a, b| a + b)
    }

    pub fn degree(&self) -> i64 {
        self.bigrading().n
    }

    pub fn weight(&self) -> i64 {
        self.bigrading().r
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            write!(f, "[{t}]")?;
        }
        Ok(())
    }
}

fn signed(sign: i32) -> Q {
    q(sign as i64)
}

pub fn tree_elem(t: Tree) -> AlgElem {
    AlgElem::basis(Monomial(vec![t]))
}

pub fn forest_elem(trees: Vec<Tree>, sign: i32) -> AlgElem {
    match Monomial::from_factors(trees) {
        Some((s, m)) => AlgElem::term(m, signed(s * sign)),
        None => AlgElem::zero(),
    }
}

pub fn unit_elem() -> AlgElem {
    AlgElem::basis(Monomial::unit())
}

/// `T/e_i` as an algebra element.
pub fn contract(t: &Tree, i: usize) -> Result<AlgElem> {
    Ok(match t.contract(i)? {
        Some((sign, forest)) => forest_elem(forest, sign),
        None => AlgElem::zero(),
    })
}

/// `dT = Σ (−1)^{i−1} T/e_i`.
pub fn tree_diff(t: &Tree) -> AlgElem {
    let mut out = AlgElem::zero();
    for i in 1..=t.edge_count() {
        let c = contract(t, i).expect("index in range");
        out.add_scaled(&c, &signed(if i % 2 == 1 { 1 } else { -1 }));
    }
    out
}

pub fn mul_monomials(a: &Monomial, b: &Monomial) -> AlgElem {
    let mut f = a.0.clone();
    f.extend(b.0.iter().cloned());
    forest_elem(f, 1)
}

pub fn alg_mul(x: &AlgElem, y: &AlgElem) -> AlgElem {
    x.bilinear(y, mul_monomials)
}

/// Leibniz extension of [`tree_diff`] with signs from edge-count parity.
pub fn monomial_diff(m: &Monomial) -> AlgElem {
    let mut out = AlgElem::zero();
    let mut parity = 0;
    for (i, t) in m.0.iter().enumerate() {
        let dt = tree_diff(t);
        if !dt.is_zero() {
            let left = Monomial(m.0[..i].to_vec());
            let right = Monomial(m.0[i + 1..].to_vec());
            let term = alg_mul(&alg_mul(&AlgElem::basis(left), &dt), &AlgElem::basis(right));
            out.add_scaled(&term, &signed(if parity == 0 { 1 } else { -1 }));
        }
        parity ^= t.edge_count() % 2;
    }
    out
}

pub fn alg_diff(x: &AlgElem) -> AlgElem {
    x.flat_map(monomial_diff)
}

/// Tree-level canonicalization lifted to `AlgElem`.
pub fn canonicalize_tree(t: &Tree) -> Option<(Tree, i32)> {
    t.canonicalize()
}

/// Projection of a monomial into the signed-automorphism quotient.
pub fn canonical_monomial(m: &Monomial) -> AlgElem {
    let mut sign = 1;
    let mut trees = Vec::with_capacity(m.0.len());
    for t in &m.0 {
        match t.canonicalize() {
            Some((c, s)) => {
                sign *= s;
                trees.push(c);
            }
            None => return AlgElem::zero(),
        }
    }
    forest_elem(trees, sign)
}

pub fn canonical(x: &AlgElem) -> AlgElem {
    x.flat_map(canonical_monomial)
}

/// Homogeneous bigrading of an element, `None` if mixed or zero.
pub fn elem_bigrading(x: &AlgElem) -> Option<Bigrading> {
    let mut it = x.iter().map(|(m, _)| m.bigrading());
    let first = it.next()?;
    it.all(|g| g == first).then_some(first)
}

/// Differential graded algebra with Adams grading, presented on a basis.
pub trait Dga {
    type Basis: Ord + Clone + fmt::Debug;

    fn degree(&self, b: &Self::Basis) -> i64;
    fn weight(&self, b: &Self::Basis) -> i64;
    fn diff(&self, b: &Self::Basis) -> LinComb<Self::Basis>;
    fn mul(&self, a: &Self::Basis, b: &Self::Basis) -> LinComb<Self::Basis>;
    fn unit(&self) -> Self::Basis;
}

/// The planar tree algebra.
#[derive(Clone, Copy, Debug, Default)]
pub struct TreeDga;

/// The quotient by label-preserving automorphisms; basis elements are kept canonical.
#[derive(Clone, Copy, Debug, Default)]
pub struct TildeTreeDga;

impl Dga for TreeDga {
    type Basis = Monomial;

    fn degree(&self, b: &Monomial) -> i64 {
        b.degree()
    }
    fn weight(&self, b: &Monomial) -> i64 {
        b.weight()
    }
    fn diff(&self, b: &Monomial) -> AlgElem {
        monomial_diff(b)
    }
    fn mul(&self, a: &Monomial, b: &Monomial) -> AlgElem {
        mul_monomials(a, b)
    }
    fn unit(&self) -> Monomial {
        Monomial::unit()
    }
}

impl Dga for TildeTreeDga {
    type Basis = Monomial;

    fn degree(&self, b: &Monomial) -> i64 {
        b.degree()
    }
    fn weight(&self, b: &Monomial) -> i64 {
        b.weight()
    }
    fn diff(&self, b: &Monomial) -> AlgElem {
        canonical(&monomial_diff(b))
    }
    fn mul(&self, a: &Monomial, b: &Monomial) -> AlgElem {
        canonical(&mul_monomials(a, b))
    }
    fn unit(&self) -> Monomial {
        Monomial::unit()
    }
}

pub fn one_elem() -> AlgElem {
    AlgElem::term(Monomial::unit(), one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{make_tree, Shape};

    fn edge(a: i64, b: i64) -> Tree {
        make_tree(q(a), &Shape::leaf(), &[q(b)], None).unwrap()
    }

    fn cherry(a: i64, b: i64, c: i64) -> Tree {
        make_tree(q(a), &Shape(vec![Shape::leaf(), Shape::leaf()]), &[q(b), q(c)], None).unwrap()
    }

    #[test]
    fn unit_and_koszul() {
        let x = tree_elem(cherry(0, 1, 2));
        assert_eq!(alg_mul(&x, &one_elem()), x);
        let (a, b) = (tree_elem(edge(0, 1)), tree_elem(edge(0, 2)));
        assert_eq!(alg_mul(&a, &b), alg_mul(&b, &a).neg());
        assert!(alg_mul(&a, &a).is_zero());
    }

    #[test]
    fn differential_examples() {
        assert!(tree_diff(&edge(0, 5)).is_zero());
        assert!(alg_diff(&one_elem()).is_zero());
        // d(a; b, c) = (a;b)(a;c) − (a;b)(b;c) + (a;c)(c;b)... in edge order
        let d = tree_diff(&cherry(1, 3, 5));
        let mut expected = AlgElem::zero();
        expected.add_assign(&forest_elem(vec![edge(1, 3), edge(1, 5)], 1));
        expected.sub_assign(&forest_elem(vec![edge(1, 3), edge(3, 5)], 1));
        expected.add_assign(&forest_elem(vec![edge(1, 5), edge(5, 3)], 1));
        assert_eq!(d, expected);
        assert!(alg_diff(&d).is_zero());
    }

    #[test]
    fn leibniz_sign() {
        let t1 = tree_elem(edge(0, 1));
        let t2 = tree_elem(cherry(2, 3, 4));
        let lhs = alg_diff(&alg_mul(&t1, &t2));
        let rhs = alg_mul(&alg_diff(&t1), &t2).difference(&alg_mul(&t1, &alg_diff(&t2)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn d_squared_vanishes_on_all_small_shapes() {
        use crate::tree::planar_shapes;
        for e in 1..=7 {
            for shape in planar_shapes(e) {
                let n = shape.leaves();
                for pattern in [0i64, 1] {
                    let leaves: Vec<Q> = (0..n).map(|i| q(if pattern == 0 { i as i64 + 1 } else { (i % 2) as i64 })).collect();
                    let t = make_tree(q(0), &shape, &leaves, None).unwrap();
                    let dd = alg_diff(&tree_diff(&t));
                    assert!(dd.is_zero(), "d² ≠ 0 on {t}: {dd:?}");
                }
            }
        }
    }
}
