//! Planar diagram of a braid closure as a rotation system.
//!
//! Every crossing has four slots in counterclockwise order; slots 0 and 2 hold
//! the under-strand, slots 1 and 3 the over-strand. Corner `k` of a crossing is
//! the angular region between slot `k` and slot `k + 1`. Faces are orbits of
//! the corner map `(c, k) -> far end of the arc leaving slot k + 1`.
//!
//! Strands run downward; position 1 is leftmost. Closure arcs go around the
//! right-hand side, the arc of position `n` innermost.

use serde_json::{json, Value};
use thiserror::Error;

use crate::braid::{BraidWord, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("braid closure is a split diagram; only connected diagrams are supported")]
    DisconnectedLink,
    #[error("checkerboard coloring contradiction at face {0}")]
    ColoringContradiction(usize),
}

/// Compass direction of a corner in the braid picture.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quadrant {
    North,
    West,
    South,
    East,
}

/// One end of an arc: a crossing slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SlotRef {
    pub crossing: usize,
    pub slot: usize,
}

/// Corner `corner` of crossing `crossing` (region between slots `corner` and `corner + 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Corner {
    pub crossing: usize,
    pub corner: usize,
}

#[derive(Debug, Clone)]
pub struct Crossing {
    /// 1-based position in the braid word.
    pub id: usize,
    pub generator: usize,
    pub oriented_sign: Sign,
    /// Arc ids in counterclockwise slot order.
    pub slots: [usize; 4],
    pub checkerboard_sign: Sign,
}

#[derive(Debug, Clone)]
pub struct Arc {
    pub ends: [SlotRef; 2],
    /// Strand position the arc runs along.
    pub column: usize,
}

#[derive(Debug, Clone)]
pub struct Face {
    pub id: usize,
    /// Boundary corners in tracing order.
    pub corners: Vec<Corner>,
    pub shaded: bool,
    pub is_outer: bool,
}

impl Face {
    /// Distinct crossings on the boundary, ascending.
    pub fn crossings(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.corners.iter().map(|c| c.crossing).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

#[derive(Debug, Clone)]
pub struct LinkDiagram {
    word: Option<BraidWord>,
    crossings: Vec<Crossing>,
    arcs: Vec<Arc>,
    faces: Vec<Face>,
    face_of_corner: Vec<[usize; 4]>,
    outer: usize,
    innermost: usize,
    /// `wraps[i]`: face between positions `i` and `i + 1` that runs around the closure.
    wraps: Vec<Option<usize>>,
}

/// Slot of each compass port for a crossing of the given oriented sign.
/// Ports: 0 = NW, 1 = NE, 2 = SW, 3 = SE.
fn port_slot(sign: Sign, port: usize) -> usize {
    const POS: [usize; 4] = [0, 3, 1, 2];
    const NEG: [usize; 4] = [1, 0, 2, 3];
    match sign {
        Sign::Pos => POS[port],
        Sign::Neg => NEG[port],
    }
}

/// Corner index of a compass quadrant.
pub fn quadrant_corner(sign: Sign, q: Quadrant) -> usize {
    match (sign, q) {
        (Sign::Pos, Quadrant::West) => 0,
        (Sign::Pos, Quadrant::South) => 1,
        (Sign::Pos, Quadrant::East) => 2,
        (Sign::Pos, Quadrant::North) => 3,
        (Sign::Neg, Quadrant::North) => 0,
        (Sign::Neg, Quadrant::West) => 1,
        (Sign::Neg, Quadrant::South) => 2,
        (Sign::Neg, Quadrant::East) => 3,
    }
}

impl LinkDiagram {
    /// The crossingless unknot: one inner (shaded) and one outer face.
    pub fn unknot() -> Self {
        LinkDiagram {
            word: None,
            crossings: Vec::new(),
            arcs: Vec::new(),
            faces: vec![
                Face { id: 0, corners: Vec::new(), shaded: false, is_outer: true },
                Face { id: 1, corners: Vec::new(), shaded: true, is_outer: false },
            ],
            face_of_corner: Vec::new(),
            outer: 0,
            innermost: 1,
            wraps: Vec::new(),
        }
    }

    /// Builds the colored closure diagram of `word`.
    pub fn close_braid(word: &BraidWord) -> Result<Self, DiagramError> {
        let n = word.strands();
        let mut crossings: Vec<Crossing> = word
            .crossings()
            .enumerate()
            .map(|(i, (generator, sign))| Crossing {
                id: i + 1,
                generator,
                oriented_sign: sign,
                slots: [usize::MAX; 4],
                checkerboard_sign: Sign::Pos,
            })
            .collect();

        // arcs: consecutive events down each column, wrapping through the closure
        let mut arcs = Vec::new();
        for p in 1..=n {
            let events: Vec<(usize, bool)> = crossings
                .iter()
                .enumerate()
                .filter_map(|(i, c)| {
                    if c.generator == p {
                        Some((i, true))
                    } else if c.generator + 1 == p {
                        Some((i, false))
                    } else {
                        None
                    }
                })
                .collect();
            if events.is_empty() {
                return Err(DiagramError::DisconnectedLink);
            }
            for j in 0..events.len() {
                let (c0, left0) = events[j];
                let (c1, left1) = events[(j + 1) % events.len()];
                let bottom = port_slot(crossings[c0].oriented_sign, if left0 { 2 } else { 3 });
                let top = port_slot(crossings[c1].oriented_sign, if left1 { 0 } else { 1 });
                let id = arcs.len();
                crossings[c0].slots[bottom] = id;
                crossings[c1].slots[top] = id;
                arcs.push(Arc {
                    ends: [SlotRef { crossing: c0, slot: bottom }, SlotRef { crossing: c1, slot: top }],
                    column: p,
                });
            }
        }

        // crossing graph connectivity
        let c = crossings.len();
        let mut seen = vec![false; c];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &a in &crossings[x].slots {
                for e in arcs[a].ends {
                    if !seen[e.crossing] {
                        seen[e.crossing] = true;
                        stack.push(e.crossing);
                    }
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(DiagramError::DisconnectedLink);
        }

        let mut d = LinkDiagram {
            word: Some(word.clone()),
            crossings,
            arcs,
            faces: Vec::new(),
            face_of_corner: vec![[usize::MAX; 4]; c],
            outer: 0,
            innermost: 0,
            wraps: vec![None; n],
        };
        d.trace_faces();

        let first_of = |g: usize| d.crossings.iter().position(|x| x.generator == g);
        let g1 = first_of(1).ok_or(DiagramError::DisconnectedLink)?;
        d.outer = d.face_at(g1, Quadrant::West);
        let last_top = d
            .crossings
            .iter()
            .rposition(|x| x.generator == n - 1)
            .ok_or(DiagramError::DisconnectedLink)?;
        d.innermost = d.face_at(last_top, Quadrant::East);
        for g in 1..n {
            d.wraps[g] = first_of(g).map(|i| d.face_at(i, Quadrant::North));
        }
        d.faces[d.outer].is_outer = true;

        let shading = d.checkerboard()?;
        for (f, s) in d.faces.iter_mut().zip(shading) {
            f.shaded = s;
        }
        for i in 0..c {
            let s = if d.faces[d.face_of_corner[i][1]].shaded { Sign::Pos } else { Sign::Neg };
            d.crossings[i].checkerboard_sign = s;
        }
        Ok(d)
    }

    fn trace_faces(&mut self) {
        for start_c in 0..self.crossings.len() {
            for start_k in 0..4 {
                if self.face_of_corner[start_c][start_k] != usize::MAX {
                    continue;
                }
                let id = self.faces.len();
                let mut corners = Vec::new();
                let mut cur = Corner { crossing: start_c, corner: start_k };
                while self.face_of_corner[cur.crossing][cur.corner] == usize::MAX {
                    self.face_of_corner[cur.crossing][cur.corner] = id;
                    corners.push(cur);
                    let far = self.partner(SlotRef { crossing: cur.crossing, slot: (cur.corner + 1) % 4 });
                    cur = Corner { crossing: far.crossing, corner: far.slot };
                }
                self.faces.push(Face { id, corners, shaded: false, is_outer: false });
            }
        }
    }

    /// The other end of the arc at `end`.
    pub fn partner(&self, end: SlotRef) -> SlotRef {
        let arc = &self.arcs[self.crossings[end.crossing].slots[end.slot]];
        if arc.ends[0] == end {
            arc.ends[1]
        } else {
            arc.ends[0]
        }
    }

    /// Proper two-coloring of the faces with the outer face unshaded.
    pub fn checkerboard(&self) -> Result<Vec<bool>, DiagramError> {
        let mut color: Vec<Option<bool>> = vec![None; self.faces.len()];
        color[self.outer] = Some(false);
        let mut stack = vec![self.outer];
        while let Some(f) = stack.pop() {
            let mine = color[f].unwrap();
            for corner in &self.faces[f].corners {
                // across the arcs bounding this corner
                for k in [(corner.corner + 3) % 4, (corner.corner + 1) % 4] {
                    let g = self.face_of_corner[corner.crossing][k];
                    match color[g] {
                        None => {
                            color[g] = Some(!mine);
                            stack.push(g);
                        }
                        Some(x) if x == mine => return Err(DiagramError::ColoringContradiction(g)),
                        Some(_) => {}
                    }
                }
            }
        }
        color
            .into_iter()
            .enumerate()
            .map(|(i, c)| c.ok_or(DiagramError::ColoringContradiction(i)))
            .collect()
    }

    pub fn word(&self) -> Option<&BraidWord> {
        self.word.as_ref()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face_of(&self, corner: Corner) -> usize {
        self.face_of_corner[corner.crossing][corner.corner]
    }

    pub fn face_at(&self, crossing: usize, q: Quadrant) -> usize {
        let sign = self.crossings[crossing].oriented_sign;
        self.face_of_corner[crossing][quadrant_corner(sign, q)]
    }

    pub fn outer_face(&self) -> usize {
        self.outer
    }

    /// Face enclosed by the closure arc of the last strand.
    pub fn innermost_face(&self) -> usize {
        self.innermost
    }

    /// Face between positions `i` and `i + 1` running around the closure.
    pub fn wrap_face(&self, i: usize) -> Option<usize> {
        self.wraps.get(i).copied().flatten()
    }

    /// Sign of a crossing relative to the shading: positive when corners 1
    /// and 3 (between slots 1-2 and 3-0) are shaded.
    pub fn checkerboard_sign(&self, crossing: usize) -> Sign {
        self.crossings[crossing].checkerboard_sign
    }

    /// The two shaded faces at a crossing, in corner order.
    pub fn shaded_faces_at(&self, crossing: usize) -> [usize; 2] {
        let f = &self.face_of_corner[crossing];
        if self.faces[f[1]].shaded {
            [f[1], f[3]]
        } else {
            [f[0], f[2]]
        }
    }

    /// The two unshaded faces at a crossing, in corner order.
    pub fn unshaded_faces_at(&self, crossing: usize) -> [usize; 2] {
        let f = &self.face_of_corner[crossing];
        if self.faces[f[1]].shaded {
            [f[0], f[2]]
        } else {
            [f[1], f[3]]
        }
    }

    pub fn to_json(&self) -> Value {
        let crossings: Vec<Value> = self
            .crossings
            .iter()
            .enumerate()
            .map(|(i, c)| {
                json!({
                    "id": c.id,
                    "generator": c.generator,
                    "oriented_sign": c.oriented_sign.value(),
                    "checkerboard_sign": c.checkerboard_sign.value(),
                    "slots": c.slots,
                    "corner_faces": self.face_of_corner[i],
                })
            })
            .collect();
        let arcs: Vec<Value> = self
            .arcs
            .iter()
            .enumerate()
            .map(|(i, a)| {
                json!({
                    "id": i,
                    "column": a.column,
                    "ends": a.ends.iter().map(|e| json!([self.crossings[e.crossing].id, e.slot])).collect::<Vec<_>>(),
                })
            })
            .collect();
        let faces: Vec<Value> = self
            .faces
            .iter()
            .map(|f| {
                json!({
                    "id": f.id,
                    "shaded": f.shaded,
                    "outer": f.is_outer,
                    "corners": f.corners.iter().map(|c| json!([self.crossings[c.crossing].id, c.corner])).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({
            "braid": self.word.as_ref().map(|w| w.to_string()),
            "crossings": crossings,
            "arcs": arcs,
            "faces": faces,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn closure(text: &str) -> LinkDiagram {
        LinkDiagram::close_braid(&BraidWord::parse(text, None).unwrap()).unwrap()
    }

    fn shaded_count(d: &LinkDiagram) -> usize {
        d.faces().iter().filter(|f| f.shaded).count()
    }

    #[test]
    fn face_counts() {
        let d = closure("s1");
        assert_eq!(d.crossing_count(), 1);
        assert_eq!(d.faces().len(), 3);
        let d = closure("s1^3");
        assert_eq!(d.faces().len(), 5);
        assert_eq!(shaded_count(&d), 3);
        let d = closure("s1^2 s2^2");
        assert_eq!(d.crossing_count(), 4);
        assert_eq!(d.faces().len(), 6);
    }

    #[test]
    fn torus_shading() {
        assert_eq!(shaded_count(&closure("s1")), 1);
        assert_eq!(shaded_count(&closure("s1^2")), 2);
        let d = closure("s1^3");
        // bigons between consecutive crossings are shaded, and so is the wrap face
        for i in 0..2 {
            let below = d.face_at(i, Quadrant::South);
            assert_eq!(below, d.face_at(i + 1, Quadrant::North));
            assert!(d.faces()[below].shaded);
        }
        assert!(d.faces()[d.wrap_face(1).unwrap()].shaded);
        assert!(!d.faces()[d.innermost_face()].shaded);
        assert!(!d.faces()[d.outer_face()].shaded);
        assert!(d.faces()[d.outer_face()].is_outer);
        assert_eq!(d.faces().iter().filter(|f| f.is_outer).count(), 1);
    }

    #[test]
    fn torus_checkerboard_signs() {
        for q in 1..=3 {
            let d = closure(&format!("s1^{q}"));
            assert!(d.crossings().iter().all(|c| c.checkerboard_sign == Sign::Pos));
            let d = closure(&format!("s1^-{q}"));
            assert!(d.crossings().iter().all(|c| c.checkerboard_sign == Sign::Neg));
        }
    }

    #[test]
    fn disconnected_rejected() {
        let w = BraidWord::parse("s1 s3", None).unwrap();
        assert_eq!(LinkDiagram::close_braid(&w).unwrap_err(), DiagramError::DisconnectedLink);
        let w = BraidWord::parse("s1", Some(3)).unwrap();
        assert_eq!(LinkDiagram::close_braid(&w).unwrap_err(), DiagramError::DisconnectedLink);
    }

    #[test]
    fn structural_invariants() {
        for text in ["s1", "s1^4", "s1^2 s2^3", "s1 s2 s1", "s1^-1 s2 s3^-2 s1", "s2 s1^-2 s2 s3"] {
            let d = closure(text);
            let c = d.crossing_count();
            assert_eq!(d.faces().len(), c + 2, "{text}");
            let corners: usize = d.faces().iter().map(|f| f.corners.len()).sum();
            assert_eq!(corners, 4 * c);
            for x in 0..c {
                let shaded: Vec<bool> = (0..4)
                    .map(|k| d.faces()[d.face_of(Corner { crossing: x, corner: k })].shaded)
                    .collect();
                assert_eq!(shaded[0], shaded[2]);
                assert_eq!(shaded[1], shaded[3]);
                assert_ne!(shaded[0], shaded[1]);
            }
            for arc in d.arcs() {
                let e = arc.ends[0];
                let left = d.face_of(Corner { crossing: e.crossing, corner: e.slot });
                let right = d.face_of(Corner { crossing: e.crossing, corner: (e.slot + 3) % 4 });
                assert_ne!(d.faces()[left].shaded, d.faces()[right].shaded);
            }
        }
    }

    #[test]
    fn unknot_has_two_faces() {
        let d = LinkDiagram::unknot();
        assert_eq!(d.faces().len(), 2);
        assert_eq!(d.crossing_count(), 0);
    }
}
