//! Parametrized cubical cycles, the Alt-canonical form, faces, the cubical
//! differential and the forest cycling map `ρ`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::algebra::{alg_diff, AlgElem, Monomial};
use crate::bar::JsonBasis;
use crate::error::{Error, Result};
use crate::linear::LinComb;
use crate::polyint::Identity;
use crate::ratfunc::{Affine, RatFunc, Var};
use crate::rational::{format_q, parse_q, Q};
use crate::tree::{Node, Tree};

/// Coordinates of one parametrized tuple `(f₁,…,f_m)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleKey(pub Vec<RatFunc>);

impl CycleKey {
    pub fn vars(&self) -> BTreeSet<Var> {
        self.0.iter().flat_map(RatFunc::vars).collect()
    }

    pub fn ambient(&self) -> usize {
        self.0.len()
    }

    pub fn dimension(&self) -> usize {
        self.vars().len()
    }
}

impl fmt::Display for CycleKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl JsonBasis for CycleKey {
    fn to_json(&self) -> Value {
        Value::Array(self.0.iter().map(|c| Value::String(c.to_string())).collect())
    }
}

/// A single tuple with its coefficient, as exchanged through JSON.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleTuple {
    pub coeff: Q,
    pub coords: Vec<RatFunc>,
}

/// A ℚ-combination of Alt-canonical tuples in `□^ambient` of codimension `codim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub ambient: usize,
    pub codim: usize,
    pub terms: LinComb<CycleKey>,
}

impl Cycle {
    pub fn zero(ambient: usize, codim: usize) -> Self {
        Self { ambient, codim, terms: LinComb::zero() }
    }

    /// `coeff · Alt(coords)`; the codimension is read off the variable count.
    pub fn alt(coeff: Q, coords: Vec<RatFunc>) -> Self {
        let key = CycleKey(coords);
        let ambient = key.ambient();
        let codim = ambient - key.dimension().min(ambient);
        let mut out = Self::zero(ambient, codim);
        out.add_tuple(key, coeff);
        out
    }

    /// Adds `c · Alt(key)` after canonicalization.
    pub fn add_tuple(&mut self, key: CycleKey, c: Q) {
        if let Some((k, s)) = alt_canonical_key(&key) {
            self.terms.add_term(k, if s < 0 { -c } else { c });
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn tuples(&self) -> Vec<CycleTuple> {
        self.terms.iter().map(|(k, c)| CycleTuple { coeff: c.clone(), coords: k.0.clone() }).collect()
    }

    pub fn add_assign(&mut self, other: &Cycle) {
        self.terms.add_assign(&other.terms);
    }

    pub fn scaled(&self, c: &Q) -> Cycle {
        Cycle { terms: self.terms.scaled(c), ..self.clone() }
    }

    pub fn difference(&self, other: &Cycle) -> Cycle {
        Cycle { terms: self.terms.difference(&other.terms), ..self.clone() }
    }

    /// Product with disjoint variables.
    pub fn product(&self, other: &Cycle) -> Cycle {
        let mut out = Cycle::zero(self.ambient + other.ambient, self.codim + other.codim);
        for (a, ca) in self.terms.iter() {
            let shift = a.vars().last().map_or(0, |v| v + 1);
            for (b, cb) in other.terms.iter() {
                let map: BTreeMap<Var, Var> = b.vars().into_iter().map(|v| (v, v + shift)).collect();
                let mut coords = a.0.clone();
                coords.extend(b.0.iter().map(|f| f.rename(&map)));
                out.add_tuple(CycleKey(coords), ca * cb);
            }
        }
        out
    }

    /// The point `{}` in `□⁰`, unit for the product.
    pub fn unit() -> Cycle {
        Cycle::alt(Q::one(), Vec::new())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ambient": self.ambient,
            "codim": self.codim,
            "tuples": self.terms.iter().map(|(k, c)| json!({
                "coeff": format_q(c),
                "coords": k.to_json(),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Cycle> {
        let bad = |m: &str| Error::Parse(format!("cycle JSON: {m}"));
        let ambient = v["ambient"].as_u64().ok_or_else(|| bad("ambient"))? as usize;
        let codim = v["codim"].as_u64().ok_or_else(|| bad("codim"))? as usize;
        let mut out = Cycle::zero(ambient, codim);
        for t in v["tuples"].as_array().ok_or_else(|| bad("tuples"))? {
            let c = parse_q(t["coeff"].as_str().ok_or_else(|| bad("coeff"))?)?;
            let coords = t["coords"]
                .as_array()
                .ok_or_else(|| bad("coords"))?
                .iter()
                .map(|s| RatFunc::parse(s.as_str().unwrap_or("")))
                .collect::<Result<Vec<_>>>()?;
            if coords.len() != ambient {
                return Err(bad("coordinate count"));
            }
            out.add_tuple(CycleKey(coords), c);
        }
        Ok(out)
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({}){k}", format_q(c))?;
        }
        Ok(())
    }
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut p = p.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out.sort();
    out
}

/// Generic rank of the Jacobian of the parametrization: the largest rank seen
/// at a handful of rational sample points (a single point may lie on the
/// degeneracy locus of the determinant).
fn jacobian_rank(key: &CycleKey, vars: &[Var]) -> usize {
    let mut best = 0;
    for attempt in 0..8i64 {
        let point: BTreeMap<Var, Q> = vars
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let i = i as i64;
                (v, Q::new((7 + 13 * i + 31 * attempt + 5 * i * attempt * attempt).into(), (3 + 2 * i + attempt).into()))
            })
            .collect();
        let mut rows = Vec::new();
        let mut pole = false;
        for f in &key.0 {
            let (n, d) = (f.numerator(), f.denominator());
            if f.is_constant() {
                continue;
            }
            let (Some(nv), Some(dv)) = (n.eval(&point), d.eval(&point)) else {
                pole = true;
                break;
            };
            if dv.is_zero() {
                pole = true;
                break;
            }
            let zero = Q::zero();
            rows.push(
                vars.iter()
                    .map(|v| {
                        let nk = n.coeffs.get(v).unwrap_or(&zero);
                        let dk = d.coeffs.get(v).unwrap_or(&zero);
                        (nk * &dv - &nv * dk) / (&dv * &dv)
                    })
                    .collect::<Vec<Q>>(),
            );
        }
        if pole {
            continue;
        }
        best = best.max(rank(rows, vars.len()));
        if best == vars.len() {
            break;
        }
    }
    best
}

fn rank(mut rows: Vec<Vec<Q>>, cols: usize) -> usize {
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &pivot;
                for j in c..cols {
                    let x = &rows[r][j] * &f;
                    rows[i][j] -= x;
                }
            }
        }
        r += 1;
    }
    r
}

/// Canonical representative of `Alt(key)` with its sign, or `None` if it vanishes.
///
/// Tuples vanish when a coordinate is ±1, when two coordinates agree up to
/// inversion, or when the parametrization is degenerate.
pub fn alt_canonical_key(key: &CycleKey) -> Option<(CycleKey, i32)> {
    let m_one = RatFunc::constant(-Q::one());
    let p_one = RatFunc::constant(Q::one());
    if key.0.iter().any(|f| *f == p_one || *f == m_one) {
        return None;
    }
    let vars: Vec<Var> = key.vars().into_iter().collect();
    if jacobian_rank(key, &vars) < vars.len() {
        return None;
    }
    let mut best: Option<(Vec<RatFunc>, i32)> = None;
    let mut conflict = false;
    for perm in permutations(vars.len()) {
        let map: BTreeMap<Var, Var> =
            vars.iter().zip(&perm).map(|(&v, &p)| (v, p as Var + 1)).collect();
        let mut sign = 1;
        let mut coords: Vec<RatFunc> = Vec::with_capacity(key.0.len());
        for f in &key.0 {
            let g = f.rename(&map);
            let h = g.inverse().expect("normalized functions invert");
            if h < g {
                sign = -sign;
                coords.push(h);
            } else {
                coords.push(g);
            }
        }
        let mut idx: Vec<usize> = (0..coords.len()).collect();
        idx.sort_by(|&a, &b| coords[a].cmp(&coords[b]));
        if idx.windows(2).any(|w| coords[w[0]] == coords[w[1]]) {
            return None;
        }
        sign *= crate::tree::permutation_sign(&idx);
        let sorted: Vec<RatFunc> = idx.iter().map(|&i| coords[i].clone()).collect();
        match &best {
            Some((b, s)) if *b == sorted => {
                if *s != sign {
                    conflict = true;
                }
            }
            Some((b, _)) if *b < sorted => {}
            _ => {
                best = Some((sorted, sign));
                conflict = false;
            }
        }
    }
    if conflict {
        return None;
    }
    best.map(|(c, s)| (CycleKey(c), s))
}

/// Re-canonicalizes every tuple.
pub fn alt_canonical(c: &Cycle) -> Cycle {
    let mut out = Cycle::zero(c.ambient, c.codim);
    for (k, x) in c.terms.iter() {
        out.add_tuple(k.clone(), x.clone());
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Boundary {
    Zero,
    Infinity,
}

/// Variable to eliminate on the hyperplane `target = 0`: prefer one also in `other`
/// (the child endpoint), highest index first.
fn pick_variable(target: &Affine, other: &Affine) -> Option<Var> {
    let both = target.vars().filter(|v| other.coeffs.contains_key(v)).max();
    both.or_else(|| target.vars().max())
}

/// The face `f_i = 0` or `f_i = ∞` of a single tuple.
pub fn face_key(key: &CycleKey, i: usize, b: Boundary) -> Result<Option<CycleKey>> {
    if key.dimension() == 0 {
        return Ok(None);
    }
    let f = &key.0[i];
    let (target, other) = match b {
        Boundary::Zero => (f.numerator(), f.denominator()),
        Boundary::Infinity => (f.denominator(), f.numerator()),
    };
    if target.is_constant() {
        if target.constant.is_zero() {
            return Err(Error::ImproperFace(format!("coordinate {} of {key} is constant", i + 1)));
        }
        return Ok(None);
    }
    let v = pick_variable(target, other)
        .ok_or_else(|| Error::UnsolvableFace(format!("coordinate {} of {key}", i + 1)))?;
    let value = target.solve_for(v).expect("variable occurs");
    let mut coords = Vec::with_capacity(key.0.len() - 1);
    for (j, g) in key.0.iter().enumerate() {
        if j != i {
            coords.push(g.substitute(v, &value).map_err(|_| {
                Error::UnsolvableFace(format!("coordinate {} of {key} on face {}", j + 1, i + 1))
            })?);
        }
    }
    Ok(Some(CycleKey(coords)))
}

pub fn face_restrict(c: &Cycle, i: usize, b: Boundary) -> Result<Cycle> {
    let mut out = Cycle::zero(c.ambient.saturating_sub(1), c.codim);
    for (k, x) in c.terms.iter() {
        if let Some(f) = face_key(k, i, b)? {
            out.add_tuple(f, x.clone());
        }
    }
    Ok(out)
}

/// `Σ_i (−1)^{i−1}(∂⁰_i − ∂^∞_i)`.
pub fn cycle_diff(c: &Cycle) -> Result<Cycle> {
    let mut out = Cycle::zero(c.ambient.saturating_sub(1), c.codim);
    for (k, x) in c.terms.iter() {
        for i in 0..k.ambient() {
            let s = if i % 2 == 0 { x.clone() } else { -x.clone() };
            if let Some(f) = face_key(k, i, Boundary::Zero)? {
                out.add_tuple(f, s.clone());
            }
            if let Some(f) = face_key(k, i, Boundary::Infinity)? {
                out.add_tuple(f, -s);
            }
        }
    }
    Ok(out)
}

/// Endpoint of an edge: a decoration or a parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Endpoint {
    Label(Q),
    Var(Var),
}

impl Endpoint {
    fn affine(&self) -> Affine {
        match self {
            Endpoint::Label(c) => Affine::constant(c.clone()),
            Endpoint::Var(v) => Affine::var(*v),
        }
    }
}

/// `f(e) = (a − b)/(c − b)` for an edge from `a` to `b` labelled `c`.
pub fn edge_function(parent: &Endpoint, child: &Endpoint, label: &Q) -> Result<RatFunc> {
    let b = child.affine().scaled(&-Q::one());
    let num = parent.affine().add(&b);
    let den = Affine::constant(label.clone()).add(&b);
    if den.is_zero() {
        return Err(Error::DegenerateDenominator);
    }
    RatFunc::new(num, den)
}

/// Source of fresh parameters.
#[derive(Clone, Debug, Default)]
pub struct VarSupply {
    next: Var,
}

impl VarSupply {
    pub fn starting_at(next: Var) -> Self {
        Self { next }
    }

    pub fn fresh(&mut self) -> Var {
        self.next += 1;
        self.next
    }
}

/// Coordinates of `ρ(T)` before Alt; `None` if some leaf decoration equals its edge label.
fn tree_coords(t: &Tree, vars: &mut VarSupply) -> Result<Option<Vec<RatFunc>>> {
    fn go(
        parent: &Endpoint,
        e: &crate::tree::Edge,
        vars: &mut VarSupply,
        out: &mut Vec<RatFunc>,
    ) -> Result<bool> {
        let label = e.label.as_ref().ok_or(Error::MissingEdgeLabels)?;
        match &e.head {
            Node::Leaf(b) => {
                if b == label {
                    return Ok(false);
                }
                out.push(edge_function(parent, &Endpoint::Label(b.clone()), label)?);
                Ok(true)
            }
            Node::Inner(children) => {
                let v = Endpoint::Var(vars.fresh());
                out.push(edge_function(parent, &v, label)?);
                for c in children {
                    if !go(&v, c, vars, out)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }
    let mut out = Vec::new();
    let ok = go(&Endpoint::Label(t.root.clone()), &t.stem, vars, &mut out)?;
    Ok(ok.then_some(out))
}

/// `ρ` without checking the conditions.
pub fn rho_unchecked(x: &AlgElem, vars: &mut VarSupply) -> Result<Cycle> {
    let mut out: Option<Cycle> = None;
    for (m, c) in x.iter() {
        let cyc = rho_monomial(m, vars)?.scaled(c);
        match &mut out {
            Some(o) => o.add_assign(&cyc),
            None => out = Some(cyc),
        }
    }
    Ok(out.unwrap_or_else(|| Cycle::zero(0, 0)))
}

fn rho_monomial(m: &Monomial, vars: &mut VarSupply) -> Result<Cycle> {
    let mut coords = Vec::new();
    let ambient = m.edge_count();
    let codim = m.factors().iter().map(Tree::leaf_count).sum();
    for t in m.factors() {
        match tree_coords(t, vars)? {
            Some(c) => coords.extend(c),
            None => return Ok(Cycle::zero(ambient, codim)),
        }
    }
    let mut out = Cycle::zero(ambient, codim);
    out.add_tuple(CycleKey(coords), Q::one());
    Ok(out)
}

/// `ρ` on edge-labelled trees satisfying the conditions.
///
/// Monomials whose tuple already vanishes under Alt (a coordinate identically 1,
/// as for a root decorated by its root-edge label, or two equal coordinates, as
/// for identical sibling leaves) map to 0 and are not checked.
pub fn rho(x: &AlgElem, vars: &mut VarSupply) -> Result<Cycle> {
    let mut out: Option<Cycle> = None;
    for (m, c) in x.iter() {
        let cyc = rho_monomial(m, vars)?;
        if !cyc.is_zero() {
            for t in m.factors() {
                let v = t.check_conditions()?;
                if !v.is_empty() {
                    let msg: Vec<String> = v.iter().map(|v| v.to_string()).collect();
                    return Err(Error::ConditionsViolated(format!("{t}: {}", msg.join("; "))));
                }
            }
        }
        let cyc = cyc.scaled(c);
        match &mut out {
            Some(o) => o.add_assign(&cyc),
            None => out = Some(cyc),
        }
    }
    Ok(out.unwrap_or_else(|| Cycle::zero(0, 0)))
}

/// `ρ` of a single tree with a private variable supply.
pub fn rho_tree(t: &Tree) -> Result<Cycle> {
    rho(&crate::algebra::tree_elem(t.clone()), &mut VarSupply::default())
}

fn same_grading(lhs: Cycle, rhs: Cycle) -> Identity<Cycle> {
    // the zero cycle carries no bookkeeping of its own
    let rhs = Cycle { ambient: lhs.ambient, codim: lhs.codim, terms: rhs.terms };
    Identity { lhs, rhs }
}

/// `d ρ(x)` against `ρ(d x)`.
pub fn check_dga_morphism(x: &AlgElem) -> Result<Identity<Cycle>> {
    let mut vars = VarSupply::default();
    let lhs = cycle_diff(&rho(x, &mut vars)?)?;
    let rhs = rho_unchecked(&alg_diff(x), &mut vars)?;
    Ok(same_grading(lhs, rhs))
}

/// Faces `∂ᵢ^∞` of the raw (un-alternated) tuple of a tree that survive Alt.
pub fn surviving_infinity_faces(t: &Tree) -> Result<Vec<(usize, CycleKey)>> {
    let Some(coords) = tree_coords(t, &mut VarSupply::default())? else {
        return Ok(Vec::new());
    };
    let raw = CycleKey(coords);
    let mut out = Vec::new();
    for i in 0..raw.ambient() {
        if let Some(f) = face_key(&raw, i, Boundary::Infinity)? {
            if alt_canonical_key(&f).is_some() {
                out.push((i, f));
            }
        }
    }
    Ok(out)
}
