//! Signed Tait graphs, spanning-tree enumeration and the spanning-tree
//! (Thistlethwaite) expansion of the Kauffman bracket.

use std::fmt::Write as _;

use crate::activity::{ActivityWord, Base, Letter};
use crate::braid::Sign;
use crate::diagram::LinkDiagram;
use crate::kauffman::specialize_bracket;
use crate::laurent::LaurentPoly1;
use crate::unionfind::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaitEdge {
    /// Vertex indices; equal for a loop.
    pub ends: [usize; 2],
    pub sign: Sign,
    /// 1-based crossing id.
    pub crossing: usize,
}

#[derive(Debug, Clone)]
pub struct TaitGraph {
    /// Diagram face id of each vertex.
    pub vertices: Vec<usize>,
    /// Edges in activity order.
    pub edges: Vec<TaitEdge>,
}

/// Edge subset of a [`TaitGraph`], stored as sorted edge indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpanningTree {
    pub edges: Vec<usize>,
}

impl SpanningTree {
    pub fn contains(&self, e: usize) -> bool {
        self.edges.binary_search(&e).is_ok()
    }
}

impl TaitGraph {
    /// Tait graph on the shaded faces; edge signs are checkerboard signs.
    pub fn build(d: &LinkDiagram) -> TaitGraph {
        Self::from_faces(d, true)
    }

    /// Tait graph of the opposite coloring (vertices are the unshaded faces).
    pub fn dual(d: &LinkDiagram) -> TaitGraph {
        Self::from_faces(d, false)
    }

    fn from_faces(d: &LinkDiagram, shaded: bool) -> TaitGraph {
        let vertices: Vec<usize> =
            d.faces().iter().filter(|f| f.shaded == shaded).map(|f| f.id).collect();
        let index = |face: usize| vertices.iter().position(|&v| v == face).expect("face colored");
        let edges = d
            .crossings()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let (faces, sign) = if shaded {
                    (d.shaded_faces_at(i), c.checkerboard_sign)
                } else {
                    (d.unshaded_faces_at(i), c.checkerboard_sign.flip())
                };
                TaitEdge { ends: [index(faces[0]), index(faces[1])], sign, crossing: c.id }
            })
            .collect();
        TaitGraph { vertices, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Same graph with edges reordered: new edge `i` is old edge `order[i]`.
    pub fn reordered(&self, order: &[usize]) -> TaitGraph {
        TaitGraph {
            vertices: self.vertices.clone(),
            edges: order.iter().map(|&i| self.edges[i].clone()).collect(),
        }
    }

    pub fn is_connected(&self) -> bool {
        let mut uf = UnionFind::new(self.vertex_count());
        for e in &self.edges {
            uf.union(e.ends[0], e.ends[1]);
        }
        uf.component_count() <= 1
    }

    /// Calls `visit` once per spanning tree (contraction-deletion over the
    /// edge order). A disconnected graph has none.
    pub fn for_each_spanning_tree(&self, mut visit: impl FnMut(&SpanningTree)) {
        if !self.is_connected() {
            return;
        }
        let mut chosen = Vec::new();
        self.grow(0, &UnionFind::new(self.vertex_count()), &mut chosen, &mut visit);
    }

    fn grow(
        &self,
        idx: usize,
        contracted: &UnionFind,
        chosen: &mut Vec<usize>,
        visit: &mut impl FnMut(&SpanningTree),
    ) {
        if chosen.len() + 1 == self.vertex_count().max(1) {
            visit(&SpanningTree { edges: chosen.clone() });
            return;
        }
        if idx == self.edges.len() {
            return;
        }
        let [u, v] = self.edges[idx].ends;
        if contracted.find(u) == contracted.find(v) {
            // a loop after contraction is never in the tree
            self.grow(idx + 1, contracted, chosen, visit);
            return;
        }
        let mut with = contracted.clone();
        with.union(u, v);
        chosen.push(idx);
        self.grow(idx + 1, &with, chosen, visit);
        chosen.pop();

        // deletion is allowed only while the rest can still span
        let mut rest = contracted.clone();
        for e in &self.edges[idx + 1..] {
            rest.union(e.ends[0], e.ends[1]);
        }
        if rest.component_count() == 1 {
            self.grow(idx + 1, contracted, chosen, visit);
        }
    }

    pub fn spanning_trees(&self) -> Vec<SpanningTree> {
        let mut out = Vec::new();
        self.for_each_spanning_tree(|t| out.push(t.clone()));
        out
    }

    /// Activity letter of every edge relative to `tree`, in edge order.
    pub fn tree_letters(&self, tree: &SpanningTree) -> Vec<Letter> {
        (0..self.edges.len())
            .map(|e| {
                let base = if tree.contains(e) {
                    // lowest edge reconnecting the two sides of T - e?
                    let mut uf = UnionFind::new(self.vertex_count());
                    for &t in tree.edges.iter().filter(|&&t| t != e) {
                        uf.union(self.edges[t].ends[0], self.edges[t].ends[1]);
                    }
                    let lowest = (0..self.edges.len())
                        .find(|&f| uf.find(self.edges[f].ends[0]) != uf.find(self.edges[f].ends[1]));
                    if lowest == Some(e) {
                        Base::BigL
                    } else {
                        Base::BigD
                    }
                } else {
                    // lowest edge of the cycle closed in T + e?
                    let path = self.tree_path(tree, self.edges[e].ends[0], self.edges[e].ends[1]);
                    if path.iter().all(|&f| f > e) {
                        Base::SmallL
                    } else {
                        Base::SmallD
                    }
                };
                Letter::new(base, self.edges[e].sign.is_neg())
            })
            .collect()
    }

    pub fn tree_activity_word(&self, tree: &SpanningTree) -> ActivityWord {
        self.tree_letters(tree).into_iter().collect()
    }

    /// Edge indices on the tree path from `from` to `to`.
    fn tree_path(&self, tree: &SpanningTree, from: usize, to: usize) -> Vec<usize> {
        let n = self.vertex_count();
        let mut via: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[from] = true;
        let mut queue = std::collections::VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            for &t in &tree.edges {
                let [a, b] = self.edges[t].ends;
                let y = if a == x {
                    b
                } else if b == x {
                    a
                } else {
                    continue;
                };
                if !seen[y] {
                    seen[y] = true;
                    via[y] = Some((x, t));
                    queue.push_back(y);
                }
            }
        }
        let mut path = Vec::new();
        let mut cur = to;
        while let Some((prev, t)) = via[cur] {
            path.push(t);
            cur = prev;
        }
        path
    }

    /// Sum over spanning trees of the specialized activity words: the bracket.
    pub fn thistlethwaite_sum(&self) -> LaurentPoly1 {
        let mut total = LaurentPoly1::zero();
        self.for_each_spanning_tree(|t| total += &specialize_bracket(&self.tree_activity_word(t)));
        total
    }

    /// Graphviz rendering; with a tree, edges are labelled by activity letter.
    pub fn to_dot(&self, tree: Option<&SpanningTree>) -> String {
        let letters = tree.map(|t| self.tree_letters(t));
        let mut out = String::from("graph tait {\n");
        for &f in &self.vertices {
            let _ = writeln!(out, "  f{f};");
        }
        for (i, e) in self.edges.iter().enumerate() {
            let sign = if e.sign.is_neg() { "-" } else { "+" };
            let label = match &letters {
                Some(ls) => format!("{sign} {}", ls[i].ascii()),
                None => sign.to_string(),
            };
            let style = if tree.is_some_and(|t| t.contains(i)) { ", style=bold" } else { "" };
            let _ = writeln!(
                out,
                "  f{} -- f{} [label=\"{label}\", crossing={}{style}];",
                self.vertices[e.ends[0]], self.vertices[e.ends[1]], e.crossing
            );
        }
        out.push_str("}\n");
        out
    }
}
