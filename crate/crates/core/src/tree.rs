//! Rooted decorated planar trees.
//!
//! A tree is stored from its root edge (the *stem*) downwards. Children of a
//! vertex are kept in counterclockwise order, so a preorder walk over edges
//! yields the canonical edge numbering `e_1, …, e_k` with `e_1` the stem.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_q, parse_q, Q};

pub type Label = Q;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Leaf(Label),
    Inner(Vec<Edge>),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub label: Option<Label>,
    pub head: Node,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tree {
    pub root: Label,
    pub stem: Edge,
}

/// Planar shape without decorations: a leaf is `Shape(vec![])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shape(pub Vec<Shape>);

impl Shape {
    pub fn leaf() -> Self {
        Shape(Vec::new())
    }

    pub fn leaves(&self) -> usize {
        if self.0.is_empty() {
            1
        } else {
            self.0.iter().map(Shape::leaves).sum()
        }
    }

    fn edges(&self) -> usize {
        1 + self.0.iter().map(Shape::edges).sum::<usize>()
    }
}

/// Differential degree `n` and Adams weight `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
pub struct Bigrading {
    pub n: i64,
    pub r: i64,
}

impl std::ops::Add for Bigrading {
    type Output = Bigrading;
    fn add(self, o: Bigrading) -> Bigrading {
        Bigrading { n: self.n + o.n, r: self.r + o.r }
    }
}

/// Builds a validated tree. `shape` describes the head of the root edge.
pub fn make_tree(
    root: Label,
    shape: &Shape,
    leaves: &[Label],
    edge_labels: Option<&[Label]>,
) -> Result<Tree> {
    fn build(
        shape: &Shape,
        leaves: &mut std::slice::Iter<'_, Label>,
        labels: &mut Option<std::slice::Iter<'_, Label>>,
    ) -> Result<Edge> {
        let label = labels.as_mut().map(|it| it.next().cloned().expect("counted"));
        let head = match shape.0.len() {
            0 => Node::Leaf(leaves.next().cloned().expect("counted")),
            1 => return Err(Error::DegreeTwoVertex),
            _ => Node::Inner(
                shape
                    .0
                    .iter()
                    .map(|s| build(s, leaves, labels))
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        Ok(Edge { label, head })
    }

    let expected = shape.leaves();
    if expected != leaves.len() {
        return Err(Error::LeafCountMismatch { expected, got: leaves.len() });
    }
    if let Some(el) = edge_labels {
        let edges = shape.edges();
        if el.len() != edges {
            return Err(Error::EdgeLabelCountMismatch { expected: edges, got: el.len() });
        }
    }
    let mut leaf_it = leaves.iter();
    let mut label_it = edge_labels.map(|l| l.iter());
    let stem = build(shape, &mut leaf_it, &mut label_it)?;
    Ok(Tree { root, stem })
}

impl Edge {
    pub fn size(&self) -> usize {
        match &self.head {
            Node::Leaf(_) => 1,
            Node::Inner(ch) => 1 + ch.iter().map(Edge::size).sum::<usize>(),
        }
    }

    fn leaf_count(&self) -> usize {
        match &self.head {
            Node::Leaf(_) => 1,
            Node::Inner(ch) => ch.iter().map(Edge::leaf_count).sum(),
        }
    }

    fn walk<'a>(&'a self, out: &mut Vec<&'a Edge>) {
        out.push(self);
        if let Node::Inner(ch) = &self.head {
            for c in ch {
                c.walk(out);
            }
        }
    }

    fn strip_labels(&self) -> Edge {
        Edge {
            label: None,
            head: match &self.head {
                Node::Leaf(l) => Node::Leaf(l.clone()),
                Node::Inner(ch) => Node::Inner(ch.iter().map(Edge::strip_labels).collect()),
            },
        }
    }

    fn shape(&self) -> Shape {
        match &self.head {
            Node::Leaf(_) => Shape::leaf(),
            Node::Inner(ch) => Shape(ch.iter().map(Edge::shape).collect()),
        }
    }
}

/// Flattened view: vertex 0 is the root and the head of preorder edge `i`
/// (0-based) is vertex `i + 1`.
#[derive(Clone, Debug)]
pub struct Flat {
    pub parent: Vec<Option<usize>>,
    pub children: Vec<Vec<usize>>,
    /// Decoration of degree-one vertices; `None` for internal vertices.
    pub decoration: Vec<Option<Label>>,
    /// Label of the edge ending at each vertex (`None` for the root).
    pub edge_label: Vec<Option<Label>>,
}

impl Flat {
    pub fn edge_count(&self) -> usize {
        self.parent.len() - 1
    }

    fn path(&self, a: usize, b: usize) -> Vec<usize> {
        let anc = |mut v: usize| {
            let mut out = vec![v];
            while let Some(p) = self.parent[v] {
                out.push(p);
                v = p;
            }
            out
        };
        let pa = anc(a);
        let pb = anc(b);
        let lca = *pa.iter().find(|v| pb.contains(v)).expect("connected");
        let mut out: Vec<usize> = pa.iter().take_while(|&&v| v != lca).copied().collect();
        out.push(lca);
        out.extend(pb.iter().take_while(|&&v| v != lca));
        out
    }
}

/// A failed condition of the double-decorated tree algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// Edge (1-based) whose leaf decoration equals its edge label.
    LeafLabelEqualsEdgeLabel { edge: usize },
    /// Edge (1-based) into an internal vertex with no continuing edge of the same label.
    UnsupportedEdgeLabel { edge: usize },
    /// Two decorated vertices with the same label joined by a path that never
    /// leaves through an edge of that label. Vertices are flat indices.
    UnseparatedPair { first: usize, second: usize, label: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::LeafLabelEqualsEdgeLabel { edge } => {
                write!(f, "(1) leaf edge e{edge} has equal vertex and edge labels")
            }
            Violation::UnsupportedEdgeLabel { edge } => {
                write!(f, "(2) edge e{edge} has no continuation with its label")
            }
            Violation::UnseparatedPair { first, second, label } => {
                write!(f, "(3) vertices v{first}, v{second} labelled {label} are not separated")
            }
        }
    }
}

impl Tree {
    pub fn edges(&self) -> Vec<&Edge> {
        let mut out = Vec::new();
        self.stem.walk(&mut out);
        out
    }

    pub fn edge_count(&self) -> usize {
        self.stem.size()
    }

    pub fn leaf_count(&self) -> usize {
        self.stem.leaf_count()
    }

    pub fn leaves(&self) -> Vec<Label> {
        self.edges()
            .into_iter()
            .filter_map(|e| match &e.head {
                Node::Leaf(l) => Some(l.clone()),
                Node::Inner(_) => None,
            })
            .collect()
    }

    pub fn edge_labels(&self) -> Option<Vec<Label>> {
        self.edges().into_iter().map(|e| e.label.clone()).collect()
    }

    pub fn has_edge_labels(&self) -> bool {
        self.stem.label.is_some()
    }

    pub fn shape(&self) -> Shape {
        self.stem.shape()
    }

    pub fn without_edge_labels(&self) -> Tree {
        Tree { root: self.root.clone(), stem: self.stem.strip_labels() }
    }

    pub fn bigrading(&self) -> Bigrading {
        let r = self.leaf_count() as i64;
        Bigrading { n: 2 * r - self.edge_count() as i64, r }
    }

    pub fn is_odd(&self) -> bool {
        self.edge_count() % 2 == 1
    }

    /// All vertex decorations, root first.
    pub fn decorations(&self) -> Vec<Label> {
        let mut out = vec![self.root.clone()];
        out.extend(self.leaves());
        out
    }

    pub fn flat(&self) -> Flat {
        let mut flat = Flat {
            parent: vec![None],
            children: vec![Vec::new()],
            decoration: vec![Some(self.root.clone())],
            edge_label: vec![None],
        };
        fn go(e: &Edge, parent: usize, flat: &mut Flat) {
            let v = flat.parent.len();
            flat.parent.push(Some(parent));
            flat.children.push(Vec::new());
            flat.children[parent].push(v);
            flat.edge_label.push(e.label.clone());
            match &e.head {
                Node::Leaf(l) => flat.decoration.push(Some(l.clone())),
                Node::Inner(ch) => {
                    flat.decoration.push(None);
                    for c in ch {
                        go(c, v, flat);
                    }
                }
            }
        }
        go(&self.stem, 0, &mut flat);
        flat
    }

    /// Child-index path from the stem head to preorder edge `i` (1-based); the
    /// stem itself has the empty path.
    fn path_to_edge(&self, i: usize) -> Vec<usize> {
        fn go(e: &Edge, target: usize, next: &mut usize, path: &mut Vec<usize>) -> bool {
            if *next == target {
                return true;
            }
            *next += 1;
            if let Node::Inner(ch) = &e.head {
                for (k, c) in ch.iter().enumerate() {
                    path.push(k);
                    if go(c, target, next, path) {
                        return true;
                    }
                    path.pop();
                }
            }
            false
        }
        let mut path = Vec::new();
        let mut next = 1;
        assert!(go(&self.stem, i, &mut next, &mut path), "edge index checked by caller");
        path
    }

    fn edge_at(&self, path: &[usize]) -> &Edge {
        let mut e = &self.stem;
        for &k in path {
            match &e.head {
                Node::Inner(ch) => e = &ch[k],
                Node::Leaf(_) => unreachable!("path runs through a leaf"),
            }
        }
        e
    }

    fn edge_at_mut(&mut self, path: &[usize]) -> &mut Edge {
        let mut e = &mut self.stem;
        for &k in path {
            match &mut e.head {
                Node::Inner(ch) => e = &mut ch[k],
                Node::Leaf(_) => unreachable!("path runs through a leaf"),
            }
        }
        e
    }

    fn preorder_index(&self, path: &[usize]) -> usize {
        let mut idx = 1;
        let mut e = &self.stem;
        for &k in path {
            idx += 1;
            match &e.head {
                Node::Inner(ch) => {
                    idx += ch[..k].iter().map(Edge::size).sum::<usize>();
                    e = &ch[k];
                }
                Node::Leaf(_) => unreachable!(),
            }
        }
        idx
    }

    /// Contraction `T/e_i` (1-based) as a signed forest, or `None` when it
    /// vanishes. The sign is the parity of the permutation taking the surviving
    /// edges from their order in `T` to their order in the concatenated forest.
    pub fn contract(&self, i: usize) -> Result<Option<(i32, Vec<Tree>)>> {
        let edges = self.edge_count();
        if i == 0 || i > edges {
            return Err(Error::EdgeIndexOutOfRange { index: i, edges });
        }
        let path = self.path_to_edge(i);
        let e = self.edge_at(&path);
        if path.is_empty() {
            // Root edge: the subtrees under its head become rooted at the root label.
            return Ok(match &e.head {
                Node::Leaf(_) => None,
                Node::Inner(ch) => Some((
                    1,
                    ch.iter()
                        .map(|c| Tree { root: self.root.clone(), stem: c.clone() })
                        .collect(),
                )),
            });
        }
        let (parent_path, k) = path.split_at(path.len() - 1);
        let k = k[0];
        match &e.head {
            Node::Inner(grand) => {
                let grand = grand.clone();
                let mut out = self.clone();
                if let Node::Inner(ch) = &mut out.edge_at_mut(parent_path).head {
                    ch.splice(k..=k, grand);
                }
                Ok(Some((1, vec![out])))
            }
            Node::Leaf(b) => {
                if e.label.as_ref() == Some(b) {
                    return Ok(None);
                }
                let b = b.clone();
                let parent_edge = self.edge_at(parent_path);
                let siblings: Vec<Edge> = match &parent_edge.head {
                    Node::Inner(ch) => ch
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| *j != k)
                        .map(|(_, c)| c.clone())
                        .collect(),
                    Node::Leaf(_) => unreachable!(),
                };
                let moved: usize = siblings.iter().map(Edge::size).sum();
                let last = self.preorder_index(parent_path) + parent_edge.size() - 1;
                let after = edges - last;
                let sign = if (moved * after) % 2 == 1 { -1 } else { 1 };
                let mut main = self.clone();
                main.edge_at_mut(parent_path).head = Node::Leaf(b.clone());
                let mut forest = vec![main];
                forest.extend(siblings.into_iter().map(|s| Tree { root: b.clone(), stem: s }));
                Ok(Some((sign, forest)))
            }
        }
    }

    /// Canonical representative under label-preserving automorphisms together
    /// with the parity of the induced edge permutation; `None` when an odd
    /// automorphism exists (the tree is zero in the quotient).
    pub fn canonicalize(&self) -> Option<(Tree, i32)> {
        fn go(e: &Edge, next: &mut usize) -> Option<(Edge, Vec<usize>)> {
            let id = *next;
            *next += 1;
            match &e.head {
                Node::Leaf(_) => Some((e.clone(), vec![id])),
                Node::Inner(ch) => {
                    let mut kids = ch
                        .iter()
                        .map(|c| go(c, next))
                        .collect::<Option<Vec<_>>>()?;
                    kids.sort_by(|a, b| a.0.cmp(&b.0));
                    for w in kids.windows(2) {
                        if w[0].0 == w[1].0 && w[0].1.len() % 2 == 1 {
                            return None;
                        }
                    }
                    let mut ids = vec![id];
                    let mut out = Vec::with_capacity(kids.len());
                    for (k, kid_ids) in kids {
                        ids.extend(kid_ids);
                        out.push(k);
                    }
                    Some((Edge { label: e.label.clone(), head: Node::Inner(out) }, ids))
                }
            }
        }
        let mut next = 0;
        let (stem, ids) = go(&self.stem, &mut next)?;
        Some((Tree { root: self.root.clone(), stem }, permutation_sign(&ids)))
    }

    /// Checks conditions (1)–(3) of the double-decorated algebra.
    pub fn check_conditions(&self) -> Result<Vec<Violation>> {
        if !self.has_edge_labels() {
            return Err(Error::MissingEdgeLabels);
        }
        let flat = self.flat();
        let mut out = Vec::new();
        for v in 1..flat.parent.len() {
            let el = flat.edge_label[v].as_ref().expect("labelled");
            match &flat.decoration[v] {
                Some(d) if d == el => out.push(Violation::LeafLabelEqualsEdgeLabel { edge: v }),
                Some(_) => {}
                None => {
                    if !flat.children[v].iter().any(|&c| flat.edge_label[c].as_ref() == Some(el)) {
                        out.push(Violation::UnsupportedEdgeLabel { edge: v });
                    }
                }
            }
        }
        let decorated: Vec<usize> =
            (0..flat.parent.len()).filter(|&v| flat.decoration[v].is_some()).collect();
        for (x, &a) in decorated.iter().enumerate() {
            for &b in &decorated[x + 1..] {
                let s = flat.decoration[a].as_ref().unwrap();
                if s != flat.decoration[b].as_ref().unwrap() {
                    continue;
                }
                let separated = flat.path(a, b).into_iter().any(|v| {
                    flat.children[v].iter().any(|&c| flat.edge_label[c].as_ref() == Some(s))
                });
                if !separated {
                    out.push(Violation::UnseparatedPair {
                        first: a,
                        second: b,
                        label: format_q(s),
                    });
                }
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> TreeJson {
        fn shape_json(s: &Shape) -> serde_json::Value {
            serde_json::Value::Array(s.0.iter().map(shape_json).collect())
        }
        TreeJson {
            root: format_q(&self.root),
            children: shape_json(&self.shape()),
            leaves: self.leaves().iter().map(format_q).collect(),
            edge_labels: self.edge_labels().map(|v| v.iter().map(format_q).collect()),
        }
    }

    pub fn from_json(j: &TreeJson) -> Result<Tree> {
        fn shape(v: &serde_json::Value) -> Result<Shape> {
            match v {
                serde_json::Value::Array(items) => {
                    Ok(Shape(items.iter().map(shape).collect::<Result<_>>()?))
                }
                _ => Err(Error::Parse("children must be nested arrays".into())),
            }
        }
        let leaves = j.leaves.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>>>()?;
        let labels = j
            .edge_labels
            .as_ref()
            .map(|v| v.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>>>())
            .transpose()?;
        make_tree(parse_q(&j.root)?, &shape(&j.children)?, &leaves, labels.as_deref())
    }

    /// Graphviz rendering with vertex decorations and edge order.
    pub fn to_dot(&self, name: &str) -> String {
        let flat = self.flat();
        let mut s = format!("digraph {name} {{\n");
        for v in 0..flat.parent.len() {
            match &flat.decoration[v] {
                Some(l) => s += &format!("  v{v} [label=\"{}\"];\n", format_q(l)),
                None => s += &format!("  v{v} [label=\"\", shape=point];\n"),
            }
        }
        for v in 1..flat.parent.len() {
            let p = flat.parent[v].unwrap();
            let mut lab = format!("e{v}");
            if let Some(l) = &flat.edge_label[v] {
                lab += &format!(" [{}]", format_q(l));
            }
            s += &format!("  v{p} -> v{v} [label=\"{lab}\"];\n");
        }
        s += "}\n";
        s
    }
}

impl fmt::Display for Tree {
    /// Compact bracket notation, e.g. `0(3,(5,7))`, edge labels after `:`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn node(e: &Edge, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match &e.head {
                Node::Leaf(l) => write!(f, "{}", format_q(l))?,
                Node::Inner(ch) => {
                    write!(f, "(")?;
                    for (i, c) in ch.iter().enumerate() {
                        if i > 0 {
                            write!(f, ",")?;
                        }
                        node(c, f)?;
                    }
                    write!(f, ")")?;
                }
            }
            if let Some(l) = &e.label {
                write!(f, ":{}", format_q(l))?;
            }
            Ok(())
        }
        write!(f, "{}", format_q(&self.root))?;
        if matches!(self.stem.head, Node::Leaf(_)) || self.stem.label.is_some() {
            write!(f, "-")?;
        }
        node(&self.stem, f)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreeJson {
    pub root: String,
    pub children: serde_json::Value,
    pub leaves: Vec<String>,
    pub edge_labels: Option<Vec<String>>,
}

/// Sign of the permutation that sorts `ids`.
pub fn permutation_sign(ids: &[usize]) -> i32 {
    let mut inv = 0usize;
    for i in 0..ids.len() {
        for j in i + 1..ids.len() {
            if ids[i] > ids[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All planar shapes in which every internal vertex has exactly two children,
/// with `leaves` leaves, in a fixed order (Catalan(leaves − 1) of them).
pub fn binary_shapes(leaves: usize) -> Vec<Shape> {
    if leaves == 0 {
        return Vec::new();
    }
    if leaves == 1 {
        return vec![Shape::leaf()];
    }
    let mut out = Vec::new();
    for left in 1..leaves {
        for l in binary_shapes(left) {
            for r in binary_shapes(leaves - left) {
                out.push(Shape(vec![l.clone(), r]));
            }
        }
    }
    out
}

/// All planar shapes (internal vertices with at least two children) whose
/// edge count is exactly `edges`.
pub fn planar_shapes(edges: usize) -> Vec<Shape> {
    // forests(k, e): ordered lists of k ≥ 1 subtrees with e edges in total
    fn forests(e: usize, min_parts: usize) -> Vec<Vec<Shape>> {
        let mut out = Vec::new();
        if e == 0 {
            if min_parts == 0 {
                out.push(Vec::new());
            }
            return out;
        }
        for first in 1..=e {
            for s in planar_shapes(first) {
                for rest in forests(e - first, min_parts.saturating_sub(1)) {
                    let mut v = vec![s.clone()];
                    v.extend(rest);
                    out.push(v);
                }
            }
        }
        out
    }
    if edges == 0 {
        return Vec::new();
    }
    if edges == 1 {
        return vec![Shape::leaf()];
    }
    forests(edges - 1, 2).into_iter().map(Shape).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn planar_shape_counts() {
        // 1, 0, 1, 1, 3, 6 plane trees without unary vertices by edge count
        let counts: Vec<usize> = (1..=6).map(|e| planar_shapes(e).len()).collect();
        assert_eq!(counts, vec![1, 0, 1, 1, 3, 6]);
    }

    fn cherry(a: i64, b: i64, c: i64) -> Tree {
        make_tree(q(a), &Shape(vec![Shape::leaf(), Shape::leaf()]), &[q(b), q(c)], None).unwrap()
    }

    #[test]
    fn constructor_gradings() {
        let t = make_tree(q(0), &Shape::leaf(), &[q(5)], None).unwrap();
        assert_eq!(t.bigrading(), Bigrading { n: 1, r: 1 });
        let c = cherry(0, 3, 5);
        assert_eq!(c.edge_count(), 3);
        assert_eq!(c.bigrading(), Bigrading { n: 1, r: 2 });
        let four = make_tree(
            q(0),
            &Shape(vec![Shape(vec![Shape::leaf(), Shape::leaf()]), Shape(vec![Shape::leaf(), Shape::leaf()])]),
            &[q(1), q(2), q(3), q(4)],
            None,
        )
        .unwrap();
        assert_eq!(four.edge_count(), 7);
        assert_eq!(four.bigrading(), Bigrading { n: 1, r: 4 });
    }

    #[test]
    fn constructor_errors() {
        let deg2 = Shape(vec![Shape(vec![Shape::leaf()]), Shape::leaf()]);
        assert_eq!(make_tree(q(0), &deg2, &[q(1), q(2)], None), Err(Error::DegreeTwoVertex));
        assert!(matches!(
            make_tree(q(0), &Shape::leaf(), &[], None),
            Err(Error::LeafCountMismatch { .. })
        ));
        assert!(matches!(
            make_tree(q(0), &Shape::leaf(), &[q(1)], Some(&[q(0), q(0)])),
            Err(Error::EdgeLabelCountMismatch { .. })
        ));
    }

    #[test]
    fn contraction_rules() {
        let single = make_tree(q(0), &Shape::leaf(), &[q(5)], None).unwrap();
        assert_eq!(single.contract(1).unwrap(), None);
        assert!(single.contract(2).is_err());

        // root edge: two 1-edge trees rooted at the root label
        let c = cherry(1, 3, 5);
        let (s, f) = c.contract(1).unwrap().unwrap();
        assert_eq!(s, 1);
        assert_eq!(f.len(), 2);
        assert_eq!(f[0], make_tree(q(1), &Shape::leaf(), &[q(3)], None).unwrap());
        assert_eq!(f[1], make_tree(q(1), &Shape::leaf(), &[q(5)], None).unwrap());

        // leaf edge of 3: root component 1-3, sibling rooted at 3
        let (s, f) = c.contract(2).unwrap().unwrap();
        assert_eq!(s, 1);
        assert_eq!(f[0], make_tree(q(1), &Shape::leaf(), &[q(3)], None).unwrap());
        assert_eq!(f[1], make_tree(q(3), &Shape::leaf(), &[q(5)], None).unwrap());
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(cherry(0, 4, 4).canonicalize(), None);
        let (t, s) = cherry(0, 7, 2).canonicalize().unwrap();
        assert_eq!((t, s), (cherry(0, 2, 7), -1));
        let (t, s) = cherry(0, 2, 7).canonicalize().unwrap();
        assert_eq!((t, s), (cherry(0, 2, 7), 1));
    }

    #[test]
    fn conditions() {
        let lab = |v: &[i64]| v.iter().map(|&x| q(x)).collect::<Vec<_>>();
        let bad = make_tree(q(2), &Shape::leaf(), &[q(0)], Some(&lab(&[0]))).unwrap();
        assert_eq!(
            bad.check_conditions().unwrap(),
            vec![Violation::LeafLabelEqualsEdgeLabel { edge: 1 }]
        );
        let two_sevens = make_tree(
            q(1),
            &Shape(vec![Shape::leaf(), Shape::leaf()]),
            &[q(7), q(7)],
            Some(&lab(&[0, 0, 0])),
        )
        .unwrap();
        assert!(matches!(
            two_sevens.check_conditions().unwrap()[..],
            [Violation::UnseparatedPair { .. }]
        ));
        assert_eq!(cherry(0, 1, 2).check_conditions(), Err(Error::MissingEdgeLabels));
    }

    #[test]
    fn catalan_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| binary_shapes(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 14, 42]);
    }

    #[test]
    fn json_round_trip() {
        let t = cherry(0, 3, 5);
        let j = t.to_json();
        assert_eq!(serde_json::to_string(&j).unwrap(),
            r#"{"root":"0","children":[[],[]],"leaves":["3","5"],"edge_labels":null}"#);
        assert_eq!(Tree::from_json(&j).unwrap(), t);
        assert!(t.to_dot("t").contains("v1 -> v2 [label=\"e2\"]"));
    }
}
