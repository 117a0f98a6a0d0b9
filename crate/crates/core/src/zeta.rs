//! The explicit cycles `ρ(n,m,k)`, `ζ(n)` and the double-zeta bar element.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::bar::{expand_word, BarElem, ModuleKind};
use crate::cycle::{Cycle, CycleKey};
use crate::error::{Error, Result};
use crate::linear::LinComb;
use crate::ratfunc::{RatFunc, Var};
use crate::rational::Q;

fn x(k: usize) -> RatFunc {
    RatFunc::var(k as Var)
}

fn one() -> RatFunc {
    RatFunc::constant(Q::one())
}

/// `1 − a/b`.
fn one_minus_ratio(a: &RatFunc, b: &RatFunc) -> RatFunc {
    one().sub(&a.div(b).expect("linear-fractional")).expect("linear-fractional")
}

fn sign(odd: bool) -> Q {
    if odd {
        -Q::one()
    } else {
        Q::one()
    }
}

/// `ρ(n,m,k)`.
///
/// For `n + k > 0` and `m = 0` the middle chain `1 − x_{k+1}/x_{k+n+2}, …, 1 − x_{k+n+m+1}`
/// is read as the single coordinate `1 − x_{k+1}`; `ρ(0,0,0)` is rejected.
pub fn rho_nmk(n: usize, m: usize, k: usize) -> Result<Cycle> {
    let mut c: Vec<RatFunc> = Vec::new();
    if n + k > 0 {
        let top = k + n + m + 1;
        c.push(one_minus_ratio(&one(), &x(1)));
        for i in 1..=k + n {
            c.push(one_minus_ratio(&x(i), &x(i + 1)));
        }
        c.push(one_minus_ratio(&x(k + n + 1), &one()));
        if m == 0 {
            c.push(one_minus_ratio(&x(k + 1), &one()));
        } else {
            c.push(one_minus_ratio(&x(k + 1), &x(k + n + 2)));
            for i in k + n + 2..k + n + m + 1 {
                c.push(one_minus_ratio(&x(i), &x(i + 1)));
            }
            c.push(one_minus_ratio(&x(top), &one()));
        }
        for i in (1..=top).rev() {
            if i != k + 1 {
                c.push(x(i));
            }
        }
    } else {
        if m == 0 {
            return Err(Error::InvalidIndices("rho(0,0,0): the n = k = 0 formula needs m >= 1".into()));
        }
        c.push(one_minus_ratio(&one(), &x(0)));
        c.push(one_minus_ratio(&x(0), &one()));
        let num = x(0).sub(&x(1)).expect("affine");
        let den = one().sub(&x(1)).expect("affine");
        c.push(num.div(&den).expect("linear-fractional"));
        for i in 1..m {
            c.push(one_minus_ratio(&x(i), &x(i + 1)));
        }
        c.push(one_minus_ratio(&x(m), &one()));
        for i in (1..=m).rev() {
            c.push(x(i));
        }
    }
    Ok(Cycle::alt(sign((m + n) % 2 == 1), c))
}

/// `ζ(n) = (−1)^{n−1} Alt(1 − 1/x₁, 1 − x₁/x₂, …, 1 − x_{n−1}, x_{n−1}, …, x₁)`.
pub fn zeta_cycle(n: usize) -> Result<Cycle> {
    if n < 2 {
        return Err(Error::InvalidIndices(format!("zeta({n}) needs n >= 2")));
    }
    let mut c = vec![one_minus_ratio(&one(), &x(1))];
    for i in 1..n - 1 {
        c.push(one_minus_ratio(&x(i), &x(i + 1)));
    }
    c.push(one_minus_ratio(&x(n - 1), &one()));
    for i in (1..n).rev() {
        c.push(x(i));
    }
    Ok(Cycle::alt(sign(n % 2 == 0), c))
}

/// `C(n, k)`, zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let mut out = BigInt::one();
    for i in 0..k {
        out = out * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    out
}

/// The bar element for `ζ(n,m)` together with the dropped correction words.
#[derive(Clone, Debug)]
pub struct ZetaDouble {
    pub n: usize,
    pub m: usize,
    pub element: BarElem<CycleKey>,
    /// Correction words `[ζ(a)|ζ(b)]` omitted because an index equals 1.
    pub dropped: Vec<(usize, usize)>,
    /// `(l, m', k, coefficient)` for each `ρ(l, m', k)` in the one-letter part.
    pub rho_terms: Vec<(usize, usize, usize, Q)>,
}

fn letter(c: &Cycle) -> LinComb<CycleKey> {
    c.terms.clone()
}

/// `Σ_{k,l} (−1)^{m−k−1} C(n+m−k−l−2, n−l−1) [ρ(l, n+m−l−k−2, k)]`
/// `+ Σ_{l=1}^{n−1} (−1)^{m+l} C(m+n−l−2, n−l−1) [ζ(l+1)|ζ(m+n−l−1)]`.
pub fn zeta_double_element(n: usize, m: usize) -> Result<ZetaDouble> {
    if (n + m) % 2 == 1 {
        return Err(Error::ParityViolation { n: n as i64, m: m as i64 });
    }
    if n < 2 || m < 1 {
        return Err(Error::InvalidIndices(format!("zeta({n},{m}) needs n >= 2 and m >= 1")));
    }
    let unit = CycleKey(Vec::new());
    let mut element = BarElem::zero(ModuleKind::Trivial);
    let mut rho_terms = Vec::new();
    let (ni, mi) = (n as i64, m as i64);
    for k in 0..=n + m - 2 {
        for l in 0..=n + m - 2 - k {
            let (ki, li) = (k as i64, l as i64);
            let b = binomial(ni + mi - ki - li - 2, ni - li - 1);
            if b.is_zero() {
                continue;
            }
            let coeff = Q::from_integer(b) * sign((mi - ki - 1).rem_euclid(2) == 1);
            let mid = n + m - l - k - 2;
            let cyc = rho_nmk(l, mid, k)?;
            rho_terms.push((l, mid, k, coeff.clone()));
            element.add_scaled(&expand_word(ModuleKind::Trivial, unit.clone(), &[letter(&cyc)]), &coeff);
        }
    }
    let mut dropped = Vec::new();
    for l in 1..n {
        let (a, b) = (l + 1, m + n - l - 1);
        let li = l as i64;
        let coeff = Q::from_integer(binomial(mi + ni - li - 2, ni - li - 1)) * sign((mi + li) % 2 == 1);
        if a < 2 || b < 2 {
            dropped.push((a, b));
            continue;
        }
        let word = expand_word(
            ModuleKind::Trivial,
            unit.clone(),
            &[letter(&zeta_cycle(a)?), letter(&zeta_cycle(b)?)],
        );
        element.add_scaled(&word, &coeff);
    }
    Ok(ZetaDouble { n, m, element, dropped, rho_terms })
}

impl ZetaDouble {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "m": self.m,
            "rho_terms": self.rho_terms.iter().map(|(l, mm, k, c)| json!({
                "n": l, "m": mm, "k": k, "coeff": crate::rational::format_q(c),
            })).collect::<Vec<_>>(),
            "dropped_words": self.dropped.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
            "element": self.element.to_json(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn rf(s: &str) -> RatFunc {
        RatFunc::parse(s).unwrap()
    }

    fn pascal(n: usize) -> Vec<Vec<u64>> {
        let mut rows = vec![vec![1u64]];
        for i in 1..=n {
            let prev = &rows[i - 1];
            let mut row = vec![1u64; i + 1];
            for j in 1..i {
                row[j] = prev[j - 1] + prev[j];
            }
            rows.push(row);
        }
        rows
    }

    #[test]
    fn binomials_match_pascal() {
        let rows = pascal(12);
        for n in 0..=12i64 {
            for k in -1..=13i64 {
                let want = if (0..=n).contains(&k) { rows[n as usize][k as usize] } else { 0 };
                assert_eq!(binomial(n, k), BigInt::from(want));
            }
        }
    }

    #[test]
    fn zeta_single() {
        let z2 = zeta_cycle(2).unwrap();
        assert_eq!(z2, Cycle::alt(q(-1), vec![rf("1-1/x1"), rf("1-x1"), rf("x1")]));
        let z3 = zeta_cycle(3).unwrap();
        assert_eq!(
            z3,
            Cycle::alt(q(1), vec![rf("1-1/x1"), rf("1-x1/x2"), rf("1-x2"), rf("x2"), rf("x1")])
        );
        for n in 2..=6 {
            let z = zeta_cycle(n).unwrap();
            assert!(!z.is_zero());
            assert_eq!((z.ambient, z.codim), (2 * n - 1, n));
        }
        assert!(matches!(zeta_cycle(1), Err(Error::InvalidIndices(_))));
    }

    #[test]
    fn rho_nmk_bookkeeping() {
        let r = rho_nmk(0, 1, 0).unwrap();
        let want = Cycle::alt(
            q(-1),
            vec![rf("1-1/x0"), rf("1-x0"), rf("(x0-x1)/(1-x1)"), rf("1-x1"), rf("x1")],
        );
        assert_eq!(r, want);
        assert!(matches!(rho_nmk(0, 0, 0), Err(Error::InvalidIndices(_))));
        for n in 0..=4 {
            for m in 0..=4 {
                for k in 0..=4 {
                    if n + m + k > 4 || n + m + k == 0 {
                        continue;
                    }
                    let c = rho_nmk(n, m, k).unwrap();
                    let w = n + m + k + 2;
                    assert_eq!(c.ambient, 2 * w - 1, "({n},{m},{k})");
                    for (key, _) in c.terms.iter() {
                        assert_eq!(key.dimension(), w - 1, "({n},{m},{k})");
                        assert_eq!(c.ambient - key.dimension(), w);
                    }
                }
            }
        }
    }

    #[test]
    fn zeta_double() {
        let z = zeta_double_element(3, 1).unwrap();
        // k ∈ {0}, l ∈ {0,1,2}: coefficients (−1)^0 C(2−l, 2−l) = 1
        let coeffs: Vec<_> = z.rho_terms.iter().map(|t| (t.0, t.1, t.2, t.3.clone())).collect();
        assert_eq!(coeffs, vec![(0, 2, 0, q(1)), (1, 1, 0, q(1)), (2, 0, 0, q(1))]);
        assert_eq!(z.dropped, vec![(3, 1)]);
        assert!(!z.element.is_zero());
        assert!(matches!(zeta_double_element(2, 1), Err(Error::ParityViolation { .. })));
        let z = zeta_double_element(2, 2).unwrap();
        assert!(z.dropped.is_empty());
    }
}
