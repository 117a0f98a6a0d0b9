use proptest::prelude::*;

use motivic_forest::algebra::{alg_diff, alg_mul, tree_elem, AlgElem};
use motivic_forest::cycle::{alt_canonical_key, cycle_diff, rho_tree, Cycle, CycleKey};
use motivic_forest::polyint::{dec_tree, Seq};
use motivic_forest::ratfunc::RatFunc;
use motivic_forest::rational::{q, qr};
use motivic_forest::tree::{make_tree, planar_shapes, Tree};

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (-3i64..=3, -3i64..=3, -3i64..=3, -3i64..=3, 1u32..=3, 1u32..=3).prop_filter_map(
        "degenerate",
        |(a, b, c, d, v, w)| RatFunc::parse(&format!("({a}*x{v}+{b})/({c}*x{w}+{d})")).ok(),
    )
}

fn tuple() -> impl Strategy<Value = Vec<RatFunc>> {
    prop::collection::vec(ratfunc(), 1..=4)
}

fn tree(max_edges: usize) -> impl Strategy<Value = Tree> {
    (1..=max_edges, any::<prop::sample::Index>(), prop::collection::vec(0i64..4, 8))
        .prop_filter_map("no shape with that edge count", |(e, idx, labels)| {
            let shapes = planar_shapes(e);
            if shapes.is_empty() {
                return None;
            }
            let s = idx.get(&shapes);
            let leaves: Vec<_> = labels[1..=s.leaves()].iter().map(|&x| q(x)).collect();
            make_tree(q(labels[0]), s, &leaves, None).ok()
        })
}

fn sign_of_degree(x: &Tree) -> i64 {
    if x.is_odd() {
        -1
    } else {
        1
    }
}

proptest! {
    #[test]
    fn canonical_form_is_idempotent(coords in tuple()) {
        if let Some((k, _)) = alt_canonical_key(&CycleKey(coords)) {
            prop_assert_eq!(alt_canonical_key(&k), Some((k.clone(), 1)));
        }
    }

    #[test]
    fn alt_is_alternating(coords in prop::collection::vec(ratfunc(), 2..=4), i in 0usize..4, step in 1usize..4) {
        let n = coords.len();
        let (i, j) = (i % n, (i + 1 + step % (n - 1)) % n);
        let base = Cycle::alt(q(1), coords.clone());
        let mut swapped = coords.clone();
        swapped.swap(i, j);
        prop_assert_eq!(Cycle::alt(q(1), swapped), base.scaled(&q(-1)));
        let mut inverted = coords.clone();
        inverted[i] = inverted[i].inverse().unwrap();
        prop_assert_eq!(Cycle::alt(q(1), inverted), base.scaled(&q(-1)));
    }

    #[test]
    fn differential_squares_to_zero(t in tree(8)) {
        prop_assert!(alg_diff(&alg_diff(&tree_elem(t))).is_zero());
    }

    #[test]
    fn leibniz_rule(x in tree(5), y in tree(5)) {
        let (ex, ey) = (tree_elem(x.clone()), tree_elem(y));
        let lhs = alg_diff(&alg_mul(&ex, &ey));
        let mut rhs: AlgElem = alg_mul(&alg_diff(&ex), &ey);
        rhs.add_scaled(&alg_mul(&ex, &alg_diff(&ey)), &q(sign_of_degree(&x)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cubical_differential_squares_to_zero(t in tree(5), root in 5i64..9) {
        let mut t = t;
        t.root = q(root);
        let Ok(t) = dec_tree(&t) else { return Ok(()) };
        if !t.check_conditions().unwrap().is_empty() {
            return Ok(());
        }
        let c = rho_tree(&t).unwrap();
        if let Ok(d) = cycle_diff(&c) {
            if let Ok(dd) = cycle_diff(&d) {
                prop_assert!(dd.is_zero(), "{} -> {}", t, dd);
            }
        }
    }

    #[test]
    fn seq_text_round_trip(a in -50i64..50, mid in prop::collection::vec((-50i64..50, 1i64..9), 0..5), b in -50i64..50) {
        let s = Seq::new(q(a), mid.iter().map(|&(n, d)| qr(n, d)).collect(), q(b));
        prop_assert_eq!(Seq::parse(&s.to_string()).unwrap(), s.clone());
        prop_assert_eq!(Seq::from_json(&s.to_json()).unwrap(), s);
    }
}
