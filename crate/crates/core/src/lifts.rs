//! Edge-labelled liftings of `t(a)` for sequences where the `{0,1}` labelling
//! is not available: depth-two sequences and `(0; 0/1's; 1)` with at most two 1's.

use crate::algebra::{alg_mul, tree_elem, AlgElem};
use crate::cycle::{cycle_diff, rho_unchecked, Cycle, VarSupply};
use crate::error::{Error, Result};
use crate::polyint::{dec_unchecked, t_tilde, Identity, Seq};
use crate::rational::{q, Q};
use crate::tree::{make_tree, Node, Shape, Tree};

/// Lift of the cherry with root `a` and leaves `b`, `c`.
fn lift_cherry_tree(a: &Q, b: &Q, c: &Q) -> AlgElem {
    if b == c {
        return AlgElem::zero();
    }
    let cherry = Shape(vec![Shape::leaf(), Shape::leaf()]);
    let t = make_tree(a.clone(), &cherry, &[b.clone(), c.clone()], None).expect("valid shape");
    let mut t = dec_unchecked(&t);
    if let Node::Inner(children) = &mut t.stem.head {
        if a == b {
            children[1].label = Some(b.clone());
        } else if a == c {
            children[0].label = Some(c.clone());
        }
    }
    tree_elem(t)
}

/// Lift of `t(a₀; a₁, a₂; a₃)`.
pub fn lift_cherry(a0: &Q, a1: &Q, a2: &Q, a3: &Q) -> AlgElem {
    lift_cherry_tree(a0, a1, a2).difference(&lift_cherry_tree(a3, a1, a2))
}

fn check_low_depth(s: &Seq) -> Result<()> {
    let (zero, one) = (q(0), q(1));
    let ones = s.middle.iter().filter(|x| **x == one).count();
    if s.a0 != zero || s.a_end != one {
        return Err(Error::ShapeViolation(format!("{s}: endpoints must be 0 and 1")));
    }
    if s.middle.iter().any(|x| *x != zero && *x != one) {
        return Err(Error::ShapeViolation(format!("{s}: entries must be 0 or 1")));
    }
    if ones > 2 {
        return Err(Error::ShapeViolation(format!("{s}: {ones} entries equal to 1")));
    }
    Ok(())
}

/// Relabels the internal edge next to a 1-leaf under a root labelled 1.
fn lift_root_one(t: &Tree) -> Tree {
    let mut t = dec_unchecked(t);
    let one = q(1);
    if t.root == one {
        if let Node::Inner(children) = &mut t.stem.head {
            let has_one_leaf = children.iter().any(|e| matches!(&e.head, Node::Leaf(x) if *x == one));
            if has_one_leaf {
                for e in children.iter_mut() {
                    if matches!(e.head, Node::Inner(_)) {
                        e.label = Some(one.clone());
                    }
                }
            }
        }
    }
    t
}

fn lift_tilde(root: &Q, leaves: &[Q]) -> AlgElem {
    t_tilde(root, leaves)
        .expect("nonempty")
        .flat_map(|m| tree_elem(lift_root_one(&m.factors()[0])))
}

/// Lift of `t(0; a₁,…,aₙ; 1)` with every `aᵢ ∈ {0,1}` and at most two equal to 1.
pub fn lift_low_depth(s: &Seq) -> Result<AlgElem> {
    check_low_depth(s)?;
    if s.middle.is_empty() {
        return Ok(AlgElem::zero());
    }
    Ok(lift_tilde(&s.a0, &s.middle).difference(&lift_tilde(&s.a_end, &s.middle)))
}

/// `{0,1}` labelling of `t(x; …; y)` applied tree by tree, without admissibility checks.
fn dec_t(s: &Seq) -> AlgElem {
    if s.middle.is_empty() {
        return AlgElem::zero();
    }
    let side = |r: &Q| {
        t_tilde(r, &s.middle).expect("nonempty").flat_map(|m| tree_elem(dec_unchecked(&m.factors()[0])))
    };
    side(&s.a0).difference(&side(&s.a_end))
}

/// `−Σ_{i<j} L(outer)·L(inner)` for a lifting rule `L`.
fn prop_tree_rhs(s: &Seq, lift: &dyn Fn(&Seq) -> AlgElem) -> AlgElem {
    let full = s.full();
    let n = s.n();
    let mut rhs = AlgElem::zero();
    for i in 0..=n {
        for j in i + 1..=n {
            let mut outer = full[..=i].to_vec();
            outer.extend(full[j + 1..].iter().cloned());
            let k = outer.len();
            let outer = Seq::new(outer[0].clone(), outer[1..k - 1].to_vec(), outer[k - 1].clone());
            let inner = Seq::new(full[i].clone(), full[i + 1..=j].to_vec(), full[j + 1].clone());
            rhs.sub_assign(&alg_mul(&lift(&outer), &lift(&inner)));
        }
    }
    rhs
}

fn compare(lhs_tree: &AlgElem, rhs_tree: &AlgElem) -> Result<Identity<Cycle>> {
    let mut vars = VarSupply::default();
    let lhs = cycle_diff(&rho_unchecked(lhs_tree, &mut vars)?)?;
    let rhs = rho_unchecked(rhs_tree, &mut vars)?;
    let rhs = Cycle { ambient: lhs.ambient, codim: lhs.codim, terms: rhs.terms };
    Ok(Identity { lhs, rhs })
}

/// `d ρ(lift t(a₀;a₁,a₂;a₃))` against `ρ` of the lifted right side of the differential formula.
pub fn verify_cherry_lift(s: &Seq) -> Result<Identity<Cycle>> {
    if s.n() != 2 {
        return Err(Error::ShapeViolation(format!("{s}: expected two middle entries")));
    }
    let lift = lift_cherry(&s.a0, &s.middle[0], &s.middle[1], &s.a_end);
    compare(&lift, &prop_tree_rhs(s, &dec_t))
}

/// Same check for the low-depth lifting; the outer factors are lifted recursively.
pub fn verify_low_depth_lift(s: &Seq) -> Result<Identity<Cycle>> {
    let lift = lift_low_depth(s)?;
    let rule = |x: &Seq| {
        if check_low_depth(x).is_ok() {
            lift_low_depth(x).expect("checked")
        } else {
            dec_t(x)
        }
    };
    compare(&lift, &prop_tree_rhs(s, &rule))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyint::{dec, t_poly};

    fn conditions_hold(x: &AlgElem) -> bool {
        x.iter().all(|(m, _)| m.factors().iter().all(|t| t.check_conditions().unwrap().is_empty()))
    }

    #[test]
    fn cherry_cases() {
        let (a, b, c, d) = (q(2), q(3), q(5), q(7));
        let generic = lift_cherry(&a, &b, &c, &d);
        assert_eq!(generic, dec(&t_poly(&Seq::new(a.clone(), vec![b.clone(), c.clone()], d.clone()))).unwrap());
        assert!(lift_cherry_tree(&a, &b, &b).is_zero());
        let x = lift_cherry_tree(&a, &a, &c);
        let t = &x.iter().next().unwrap().0.factors()[0];
        assert_eq!(t.edge_labels(), Some(vec![q(0), q(0), a.clone()]));
        let x = lift_cherry_tree(&a, &b, &a);
        let t = &x.iter().next().unwrap().0.factors()[0];
        assert_eq!(t.edge_labels(), Some(vec![q(0), a.clone(), q(0)]));
        for s in [(2, 2, 5, 7), (2, 5, 2, 7), (2, 3, 5, 3), (0, 0, 5, 7)] {
            let x = lift_cherry(&q(s.0), &q(s.1), &q(s.2), &q(s.3));
            assert!(conditions_hold(&x), "{s:?}");
        }
    }

    #[test]
    fn low_depth_shapes() {
        assert!(lift_low_depth(&Seq::from_ints(0, &[1, 0], 1)).is_ok());
        assert!(lift_low_depth(&Seq::from_ints(0, &[1, 1, 0], 1)).is_ok());
        assert!(matches!(lift_low_depth(&Seq::from_ints(0, &[1, 1, 1], 1)), Err(Error::ShapeViolation(_))));
        assert!(matches!(lift_low_depth(&Seq::from_ints(0, &[2], 1)), Err(Error::ShapeViolation(_))));
    }

    #[test]
    fn cherry_lift_differential() {
        let cases = [(0, 3, 5, 1), (2, 2, 5, 7), (2, 5, 2, 7), (2, 3, 5, 3), (0, 0, 5, 7), (0, 0, 0, 1), (2, 3, 3, 7)];
        let mut nonzero = 0;
        for s in cases {
            let id = verify_cherry_lift(&Seq::from_ints(s.0, &[s.1, s.2], s.3)).unwrap();
            assert!(id.holds(), "{s:?}: {} vs {}", id.lhs, id.rhs);
            nonzero += usize::from(!id.lhs.is_zero());
        }
        assert!(nonzero >= 4);
    }

    #[test]
    fn low_depth_lift_differential() {
        for n in 1..=4usize {
            for mask in 0..(1u32 << n) {
                if mask.count_ones() > 2 {
                    continue;
                }
                let mid: Vec<i64> = (0..n).map(|i| i64::from(mask >> i & 1)).collect();
                let s = Seq::from_ints(0, &mid, 1);
                assert!(verify_low_depth_lift(&s).unwrap().holds(), "{s}");
                let lift = lift_low_depth(&s).unwrap();
                let r = crate::cycle::rho(&lift, &mut VarSupply::default());
                // (0;0;1) and (0;1;1) contain a single edge between equal labels
                if n == 1 {
                    assert!(matches!(r, Err(Error::ConditionsViolated(_))), "{s}");
                } else {
                    assert!(r.is_ok(), "{s}");
                }
            }
        }
    }
}
