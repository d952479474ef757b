//! Balanced overlaid Tait graph: crossings on one side, faces on the other,
//! with two touching faces of opposite shading removed so both sides have the
//! same size.
//!
//! The embedding is inherited from the diagram. Around a crossing, edges follow
//! corner order; around a face, they follow the reversed tracing order. Both are
//! counterclockwise. A face meeting a crossing at two corners gives one edge.

use std::fmt::Write as _;

use thiserror::Error;

use crate::activity::{ActivityWord, Base, Letter};
use crate::braid::Sign;
use crate::diagram::LinkDiagram;
use crate::kauffman::specialize_bracket;
use crate::laurent::LaurentPoly1;
use crate::unionfind::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OverlayError {
    #[error("overlay is unbalanced: {crossings} crossings vs {faces} faces")]
    UnbalancedGraph { crossings: usize, faces: usize },
    #[error("diagram has no braid word or too few generators for the deletion rule")]
    NoDeletionRule,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlayFace {
    /// Diagram face id.
    pub face: usize,
    pub shaded: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlayEdge {
    /// Row: crossing index (0-based braid-word position).
    pub crossing: usize,
    /// Column: index into [`OverlayGraph::faces`].
    pub column: usize,
    /// Corner of the crossing this edge passes through.
    pub corner: usize,
    pub letter: Letter,
    pub kasteleyn: Sign,
}

/// A face of the overlay embedding, as the cyclic list of edges on its boundary.
#[derive(Debug, Clone)]
pub struct EmbeddingFace {
    pub component: usize,
    pub edges: Vec<usize>,
}

impl EmbeddingFace {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct OverlayGraph {
    crossing_count: usize,
    /// 1-based crossing ids, by row.
    crossing_ids: Vec<usize>,
    crossing_signs: Vec<Sign>,
    faces: Vec<OverlayFace>,
    edges: Vec<OverlayEdge>,
    deleted: [usize; 2],
    /// Counterclockwise edge order at each vertex; crossings first, then columns.
    rotation: Vec<Vec<usize>>,
}

/// Edge subset covering every vertex once; `edges[row]` is the edge used by that crossing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PerfectMatching {
    pub edges: Vec<usize>,
}

impl OverlayGraph {
    /// Faces removed to balance the closure of `d`: the wrap faces between
    /// positions 1-2 and 2-3, or for two strands the wrap face and the
    /// innermost face.
    pub fn deleted_faces(d: &LinkDiagram) -> Result<[usize; 2], OverlayError> {
        let strands = d.word().ok_or(OverlayError::NoDeletionRule)?.strands();
        let first = d.wrap_face(1).ok_or(OverlayError::NoDeletionRule)?;
        let second = if strands == 2 {
            d.innermost_face()
        } else {
            d.wrap_face(2).ok_or(OverlayError::NoDeletionRule)?
        };
        Ok([first, second])
    }

    pub fn build(d: &LinkDiagram) -> Result<OverlayGraph, OverlayError> {
        let deleted = Self::deleted_faces(d)?;
        let c = d.crossing_count();

        // column order: shaded faces, then unshaded, each by incident crossings
        let mut kept: Vec<(bool, Vec<usize>, usize)> = d
            .faces()
            .iter()
            .filter(|f| !deleted.contains(&f.id))
            .map(|f| (!f.shaded, f.crossings(), f.id))
            .collect();
        kept.sort();
        if kept.len() != c {
            return Err(OverlayError::UnbalancedGraph { crossings: c, faces: kept.len() });
        }
        let faces: Vec<OverlayFace> =
            kept.iter().map(|(unshaded, _, id)| OverlayFace { face: *id, shaded: !unshaded }).collect();
        let mut column_of = vec![usize::MAX; d.faces().len()];
        for (j, f) in faces.iter().enumerate() {
            column_of[f.face] = j;
        }

        let mut edges = Vec::new();
        let mut rotation = vec![Vec::new(); 2 * c];
        let mut edge_at_corner = vec![[usize::MAX; 4]; c];
        for (x, crossing) in d.crossings().iter().enumerate() {
            for k in 0..4 {
                let f = d.face_of(crate::diagram::Corner { crossing: x, corner: k });
                let col = column_of[f];
                if col == usize::MAX || edges.iter().any(|e: &OverlayEdge| e.crossing == x && e.column == col) {
                    continue;
                }
                let id = edges.len();
                edges.push(OverlayEdge {
                    crossing: x,
                    column: col,
                    corner: k,
                    letter: Letter::new(Base::BigL, false),
                    kasteleyn: Sign::Pos,
                });
                edge_at_corner[x][k] = id;
                rotation[x].push(id);
            }
            debug_assert_eq!(crossing.id, x + 1);
        }
        for (j, f) in faces.iter().enumerate() {
            let walk = &d.faces()[f.face].corners;
            rotation[c + j] = walk
                .iter()
                .rev()
                .map(|corner| edge_at_corner[corner.crossing][corner.corner])
                .filter(|&e| e != usize::MAX)
                .collect();
        }

        let mut g = OverlayGraph {
            crossing_count: c,
            crossing_ids: d.crossings().iter().map(|x| x.id).collect(),
            crossing_signs: d.crossings().iter().map(|x| x.checkerboard_sign).collect(),
            faces,
            edges,
            deleted,
            rotation,
        };
        g.assign_letters();
        Ok(g)
    }

    /// At each face vertex the lowest crossing gets `L` (shaded) or `ℓ`
    /// (unshaded), the rest `D` or `d`; negative crossings bar their letters.
    fn assign_letters(&mut self) {
        for j in 0..self.faces.len() {
            let shaded = self.faces[j].shaded;
            let lowest = self.edges.iter().filter(|e| e.column == j).map(|e| e.crossing).min();
            for e in self.edges.iter_mut().filter(|e| e.column == j) {
                let base = match (shaded, Some(e.crossing) == lowest) {
                    (true, true) => Base::BigL,
                    (true, false) => Base::BigD,
                    (false, true) => Base::SmallL,
                    (false, false) => Base::SmallD,
                };
                e.letter = Letter::new(base, self.crossing_signs[e.crossing].is_neg());
            }
        }
    }

    pub fn size(&self) -> usize {
        self.crossing_count
    }

    pub fn crossing_ids(&self) -> &[usize] {
        &self.crossing_ids
    }

    pub fn faces(&self) -> &[OverlayFace] {
        &self.faces
    }

    pub fn edges(&self) -> &[OverlayEdge] {
        &self.edges
    }

    pub fn deleted(&self) -> [usize; 2] {
        self.deleted
    }

    pub fn edge_between(&self, crossing: usize, column: usize) -> Option<usize> {
        self.rotation[crossing].iter().copied().find(|&e| self.edges[e].column == column)
    }

    pub fn set_kasteleyn_signs(&mut self, signs: &[Sign]) {
        for (e, &s) in self.edges.iter_mut().zip(signs) {
            e.kasteleyn = s;
        }
    }

    /// Vertex ids: crossing rows `0..n`, face columns `n..2n`.
    fn endpoints(&self, e: usize) -> [usize; 2] {
        let edge = &self.edges[e];
        [edge.crossing, self.crossing_count + edge.column]
    }

    /// Connected component of every vertex (crossings first, then columns).
    pub fn components(&self) -> (usize, Vec<usize>) {
        let n = 2 * self.crossing_count;
        let mut uf = UnionFind::new(n);
        for e in 0..self.edges.len() {
            let [u, v] = self.endpoints(e);
            uf.union(u, v);
        }
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        let mut out = vec![0; n];
        for (v, slot) in out.iter_mut().enumerate() {
            let r = uf.find(v);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            *slot = label[r];
        }
        (next, out)
    }

    /// Faces of the embedding, traced as orbits of "arrive along an edge,
    /// leave along the next edge counterclockwise".
    pub fn embedding_faces(&self) -> Vec<EmbeddingFace> {
        let (_, comp) = self.components();
        let mut pos = vec![[0usize; 2]; self.edges.len()];
        for (v, rot) in self.rotation.iter().enumerate() {
            for (i, &e) in rot.iter().enumerate() {
                let side = if v < self.crossing_count { 0 } else { 1 };
                pos[e][side] = i;
            }
        }
        // dart (e, side): traverse e leaving the endpoint on `side`
        let mut used = vec![[false; 2]; self.edges.len()];
        let mut out = Vec::new();
        for e0 in 0..self.edges.len() {
            for s0 in 0..2 {
                if used[e0][s0] {
                    continue;
                }
                let mut walk = Vec::new();
                let (mut e, mut s) = (e0, s0);
                while !used[e][s] {
                    used[e][s] = true;
                    walk.push(e);
                    let head_side = 1 - s;
                    let head = self.endpoints(e)[head_side];
                    let rot = &self.rotation[head];
                    e = rot[(pos[e][head_side] + 1) % rot.len()];
                    s = head_side;
                }
                out.push(EmbeddingFace { component: comp[self.endpoints(e0)[0]], edges: walk });
            }
        }
        out
    }

    /// Matching word of a perfect matching.
    pub fn matching_word(&self, m: &PerfectMatching) -> ActivityWord {
        m.edges.iter().map(|&e| self.edges[e].letter).collect()
    }

    /// Enumerates every perfect matching, branching on the unmatched crossing
    /// with the fewest free neighbours.
    pub fn for_each_perfect_matching(&self, mut visit: impl FnMut(&PerfectMatching)) {
        let n = self.crossing_count;
        let mut chosen = vec![usize::MAX; n];
        let mut column_used = vec![false; self.faces.len()];
        self.extend_matching(&mut chosen, &mut column_used, 0, &mut visit);
    }

    fn extend_matching(
        &self,
        chosen: &mut Vec<usize>,
        column_used: &mut Vec<bool>,
        matched: usize,
        visit: &mut impl FnMut(&PerfectMatching),
    ) {
        if matched == self.crossing_count {
            visit(&PerfectMatching { edges: chosen.clone() });
            return;
        }
        let mut best: Option<(usize, usize)> = None;
        for row in (0..self.crossing_count).filter(|&r| chosen[r] == usize::MAX) {
            let free = self.rotation[row].iter().filter(|&&e| !column_used[self.edges[e].column]).count();
            if best.is_none_or(|(_, b)| free < b) {
                best = Some((row, free));
            }
        }
        let (row, free) = best.expect("an unmatched row exists");
        if free == 0 {
            return;
        }
        let mut options: Vec<usize> = self.rotation[row].clone();
        options.sort_unstable();
        for e in options {
            let col = self.edges[e].column;
            if column_used[col] {
                continue;
            }
            column_used[col] = true;
            chosen[row] = e;
            self.extend_matching(chosen, column_used, matched + 1, visit);
            chosen[row] = usize::MAX;
            column_used[col] = false;
        }
    }

    pub fn perfect_matchings(&self) -> Vec<PerfectMatching> {
        let mut out = Vec::new();
        self.for_each_perfect_matching(|m| out.push(m.clone()));
        out
    }

    /// Dimer partition function: sum over perfect matchings of specialized words.
    pub fn partition_function(&self) -> LaurentPoly1 {
        let mut z = LaurentPoly1::zero();
        self.for_each_perfect_matching(|m| z += &specialize_bracket(&self.matching_word(m)));
        z
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph overlay {\n");
        for id in &self.crossing_ids {
            let _ = writeln!(out, "  c{id} [shape=box];");
        }
        for f in &self.faces {
            let fill = if f.shaded { ", style=filled, fillcolor=gray" } else { "" };
            let _ = writeln!(out, "  f{} [shape=ellipse{fill}];", f.face);
        }
        for e in &self.edges {
            let dashed = if e.kasteleyn.is_neg() { ", style=dashed" } else { "" };
            let _ = writeln!(
                out,
                "  c{} -- f{} [label=\"{}\"{dashed}];",
                self.crossing_ids[e.crossing],
                self.faces[e.column].face,
                e.letter.ascii()
            );
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::BraidWord;
    use crate::kauffman::torus_matching_words;

    fn overlay(text: &str) -> (LinkDiagram, OverlayGraph) {
        let d = LinkDiagram::close_braid(&BraidWord::parse(text, None).unwrap()).unwrap();
        let g = OverlayGraph::build(&d).unwrap();
        (d, g)
    }

    fn letter(g: &OverlayGraph, row: usize, col: usize) -> Option<String> {
        g.edge_between(row, col).map(|e| g.edges()[e].letter.to_string())
    }

    #[test]
    fn trefoil_overlay() {
        let (d, g) = overlay("s1^3");
        assert_eq!(g.size(), 3);
        assert_eq!(g.faces().iter().filter(|f| f.shaded).count(), 2);
        assert_eq!(g.faces()[2].face, d.outer_face());
        let table: Vec<Vec<Option<String>>> =
            (0..3).map(|r| (0..3).map(|c| letter(&g, r, c)).collect()).collect();
        let s = |x: &str| Some(x.to_string());
        assert_eq!(
            table,
            vec![
                vec![s("L"), None, s("ℓ")],
                vec![s("D"), s("L"), s("d")],
                vec![None, s("D"), s("d")],
            ]
        );
    }

    #[test]
    fn torus_ladder_and_matchings() {
        for q in 1..=10u32 {
            let (_, g) = overlay(&format!("s1^{q}"));
            assert_eq!(g.size(), q as usize);
            let ms = g.perfect_matchings();
            assert_eq!(ms.len(), q as usize);
            let mut words: Vec<ActivityWord> = ms.iter().map(|m| g.matching_word(m)).collect();
            words.sort();
            let mut expected = torus_matching_words(q);
            expected.sort();
            assert_eq!(words, expected, "q = {q}");
        }
    }

    #[test]
    fn negative_torus_letters_are_barred() {
        let (_, g) = overlay("s1^-2");
        assert!(g.edges().iter().all(|e| e.letter.barred));
        let (_, pos) = overlay("s1^2");
        let strip = |g: &OverlayGraph| -> Vec<(usize, usize, Base)> {
            let mut v: Vec<_> = g.edges().iter().map(|e| (e.crossing, e.column, e.letter.base)).collect();
            v.sort();
            v
        };
        assert_eq!(strip(&g), strip(&pos));
    }

    #[test]
    fn two_column_words_split() {
        let (_, g) = overlay("s1^2 s2^3");
        assert_eq!(g.components().0, 2);
    }

    #[test]
    fn trefoil_partition_function() {
        let (_, g) = overlay("s1^3");
        let expected: LaurentPoly1 = "-A^5 - A^-3 + A^-7".parse().unwrap();
        assert_eq!(g.partition_function(), expected);
    }

    #[test]
    fn isolated_vertex_has_no_matching() {
        let (_, mut g) = overlay("s1^3");
        // drop every edge at the first face column
        g.edges.retain(|e| e.column != 0);
        let kept: Vec<usize> = (0..g.edges.len()).collect();
        g.rotation = vec![Vec::new(); 6];
        for e in kept {
            let r = g.edges[e].crossing;
            g.rotation[r].push(e);
        }
        assert!(g.perfect_matchings().is_empty());
    }

    #[test]
    fn embedding_is_planar() {
        for text in ["s1", "s1^2", "s1^5", "s1^2 s2^3", "s1^-3 s2^-1 s3^-2", "s1^4 s2^4 s3^4"] {
            let (_, g) = overlay(text);
            let (ncomp, comp) = g.components();
            let faces = g.embedding_faces();
            for k in 0..ncomp {
                let v = comp.iter().filter(|&&c| c == k).count() as i64;
                let e = g.edges().iter().filter(|e| comp[e.crossing] == k).count() as i64;
                let f = faces.iter().filter(|f| f.component == k).count() as i64;
                if e > 0 {
                    assert_eq!(v - e + f, 2, "{text}, component {k}");
                }
            }
        }
    }

    #[test]
    fn dot_export() {
        let (_, g) = overlay("s1^3");
        let dot = g.to_dot();
        assert_eq!(dot.matches("shape=box").count(), 3);
        assert_eq!(dot.matches("shape=ellipse").count(), 3);
    }
}
