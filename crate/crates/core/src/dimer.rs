//! Kasteleyn signing, the modified adjacency matrix, fraction-free
//! determinants over `Z[A, A^-1]` and the polynomial-time Jones pipeline.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::activity::{ActivityWord, Letter};
use crate::braid::{BraidWord, Sign};
use crate::diagram::{DiagramError, LinkDiagram};
use crate::kauffman::letter_bracket;
use crate::laurent::{bigint_json, LaurentError, LaurentPoly1};
use crate::overlay::{EmbeddingFace, OverlayError, OverlayGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimerError {
    #[error("Kasteleyn parity system has no solution")]
    NoSolution,
    #[error("braid word `{0}` is not of the form s1^m1 s2^m2 ... with exponents of one sign")]
    UnsupportedWord(String),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Overlay(#[from] OverlayError),
}

// ---------------------------------------------------------------------------
// Kasteleyn weighting

/// Required parity of negative edges on a face of the given length: odd for
/// length 0 mod 4, even for length 2 mod 4.
fn required_parity(len: usize) -> bool {
    (len / 2 + 1) % 2 == 1
}

/// Embedding faces with one designated unbounded face per component (the
/// longest, lowest index on ties). Returns `(faces, is_unbounded)`.
pub fn bounded_faces(g: &OverlayGraph) -> Vec<(EmbeddingFace, bool)> {
    let faces = g.embedding_faces();
    let mut unbounded: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, f) in faces.iter().enumerate() {
        match unbounded.get(&f.component) {
            Some(&j) if faces[j].len() >= f.len() => {}
            _ => {
                unbounded.insert(f.component, i);
            }
        }
    }
    faces
        .into_iter()
        .enumerate()
        .map(|(i, f)| {
            let outer = unbounded.get(&f.component) == Some(&i);
            (f, outer)
        })
        .collect()
}

/// Number of negative edges on a face walk (an edge walked twice counts twice).
fn negative_count(g: &OverlayGraph, face: &EmbeddingFace) -> usize {
    face.edges.iter().filter(|&&e| g.edges()[e].kasteleyn.is_neg()).count()
}

/// Faces of the signed overlay violating the parity rule. Pass `all = true`
/// to include the designated unbounded faces.
pub fn kasteleyn_violations(g: &OverlayGraph, all: bool) -> Vec<EmbeddingFace> {
    bounded_faces(g)
        .into_iter()
        .filter(|(f, outer)| (all || !outer) && (negative_count(g, f) % 2 == 1) != required_parity(f.len()))
        .map(|(f, _)| f)
        .collect()
}

/// Signs the overlay edges so that every bounded face satisfies the parity
/// rule, by Gaussian elimination over GF(2) (free variables set positive).
pub fn kasteleyn_sign(g: &mut OverlayGraph) -> Result<(), DimerError> {
    let m = g.edges().len();
    let words = (m + 1).div_ceil(64);
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for (face, outer) in bounded_faces(g) {
        if outer {
            continue;
        }
        let mut row = vec![0u64; words];
        for &e in &face.edges {
            row[e / 64] ^= 1 << (e % 64);
        }
        if required_parity(face.len()) {
            row[m / 64] ^= 1 << (m % 64);
        }
        rows.push(row);
    }
    let bit = |row: &[u64], i: usize| row[i / 64] >> (i % 64) & 1 == 1;

    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..m {
        let Some(p) = (r..rows.len()).find(|&i| bit(&rows[i], col)) else { continue };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && bit(row, col) {
                for (w, pw) in row.iter_mut().zip(&pivot) {
                    *w ^= pw;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| bit(row, m)) {
        return Err(DimerError::NoSolution);
    }
    let mut signs = vec![Sign::Pos; m];
    for (i, &col) in pivots.iter().enumerate() {
        if bit(&rows[i], m) {
            signs[col] = Sign::Neg;
        }
    }
    g.set_kasteleyn_signs(&signs);
    Ok(())
}

// ---------------------------------------------------------------------------
// Matrices

/// A signed activity letter, the symbolic entry of the modified adjacency matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignedLetter {
    pub sign: Sign,
    pub letter: Letter,
}

impl fmt::Display for SignedLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign.is_neg() {
            f.write_str("-")?;
        }
        write!(f, "{}", self.letter)
    }
}

/// Rows are crossings in braid order, columns the overlay faces.
#[derive(Debug, Clone)]
pub struct ModifiedAdjacencyMatrix {
    entries: Vec<Vec<Option<SignedLetter>>>,
    column_faces: Vec<usize>,
    row_crossings: Vec<usize>,
}

pub type PolyMatrix = Vec<Vec<LaurentPoly1>>;

impl ModifiedAdjacencyMatrix {
    pub fn from_overlay(g: &OverlayGraph) -> Self {
        let n = g.size();
        let mut entries = vec![vec![None; n]; n];
        for e in g.edges() {
            entries[e.crossing][e.column] = Some(SignedLetter { sign: e.kasteleyn, letter: e.letter });
        }
        ModifiedAdjacencyMatrix {
            entries,
            column_faces: g.faces().iter().map(|f| f.face).collect(),
            row_crossings: g.crossing_ids().to_vec(),
        }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> Option<SignedLetter> {
        self.entries[row][col]
    }

    /// Entries with the bracket specialization applied.
    pub fn numeric(&self) -> PolyMatrix {
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| match x {
                        None => LaurentPoly1::zero(),
                        Some(s) => {
                            let p = letter_bracket(s.letter);
                            if s.sign.is_neg() {
                                -p
                            } else {
                                p
                            }
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Determinant with letters kept as commuting variables (expansion over
    /// the nonzero pattern; meant for small matrices).
    pub fn symbolic_determinant(&self) -> WordPoly {
        let n = self.size();
        let mut out = WordPoly::default();
        let mut perm = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.expand(0, &mut perm, &mut used, &mut out);
        out
    }

    fn expand(&self, row: usize, perm: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut WordPoly) {
        let n = self.size();
        if row == n {
            let mut sign = permutation_sign(perm);
            let mut word = ActivityWord::empty();
            for (r, &c) in perm.iter().enumerate() {
                let e = self.entries[r][c].expect("nonzero");
                sign = sign * e.sign;
                word.push(e.letter);
            }
            out.add(word, sign.value());
            return;
        }
        for col in 0..n {
            if used[col] || self.entries[row][col].is_none() {
                continue;
            }
            used[col] = true;
            perm[row] = col;
            self.expand(row + 1, perm, used, out);
            used[col] = false;
        }
    }

    /// Column-aligned text, one row per line.
    pub fn to_text(&self, symbolic: bool) -> String {
        let cells: Vec<Vec<String>> = if symbolic {
            self.entries
                .iter()
                .map(|r| r.iter().map(|x| x.map_or("0".to_string(), |s| s.to_string())).collect())
                .collect()
        } else {
            self.numeric().iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect()
        };
        let n = self.size();
        let widths: Vec<usize> =
            (0..n).map(|c| cells.iter().map(|r| r[c].chars().count()).max().unwrap_or(1)).collect();
        let mut out = String::new();
        for row in &cells {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(s, &w)| format!("{}{}", " ".repeat(w - s.chars().count()), s))
                .collect();
            out.push_str("[ ");
            out.push_str(&line.join("  "));
            out.push_str(" ]\n");
        }
        out
    }

    pub fn to_json(&self, symbolic: bool) -> Value {
        let rows: Vec<Value> = if symbolic {
            self.entries
                .iter()
                .map(|r| {
                    Value::Array(
                        r.iter()
                            .map(|x| match x {
                                None => Value::Null,
                                Some(s) => json!({ "sign": s.sign.value(), "letter": s.letter.ascii() }),
                            })
                            .collect(),
                    )
                })
                .collect()
        } else {
            self.numeric()
                .iter()
                .map(|r| Value::Array(r.iter().map(|p| p.to_json()).collect()))
                .collect()
        };
        json!({
            "rows": self.row_crossings,
            "columns": self.column_faces,
            "symbolic": symbolic,
            "entries": rows,
        })
    }
}

/// Integer combination of activity words.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WordPoly {
    terms: BTreeMap<ActivityWord, BigInt>,
}

impl WordPoly {
    pub fn add(&mut self, word: ActivityWord, coeff: i64) {
        let c = self.terms.entry(word).or_insert_with(BigInt::zero);
        *c += coeff;
        if c.is_zero() {
            self.terms.remove(&word);
        }
    }

    pub fn from_words(words: impl IntoIterator<Item = ActivityWord>) -> Self {
        let mut p = WordPoly::default();
        for w in words {
            p.add(w, 1);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ActivityWord, &BigInt)> {
        self.terms.iter()
    }

    pub fn negate(&self) -> WordPoly {
        WordPoly { terms: self.terms.iter().map(|(w, c)| (*w, -c)).collect() }
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms.iter().map(|(w, c)| json!({ "word": w.ascii(), "coeff": bigint_json(c) })).collect(),
        )
    }
}

impl fmt::Display for WordPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().rev().enumerate() {
            let sep = match (i, c.is_negative()) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let abs = c.abs();
            if abs.is_one() {
                write!(f, "{sep}{w}")?;
            } else {
                write!(f, "{sep}{abs}{w}")?;
            }
        }
        Ok(())
    }
}

/// Sign of the permutation `row -> perm[row]`.
pub fn permutation_sign(perm: &[usize]) -> Sign {
    let mut seen = vec![false; perm.len()];
    let mut parity = false;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        if len % 2 == 0 {
            parity = !parity;
        }
    }
    if parity {
        Sign::Neg
    } else {
        Sign::Pos
    }
}

/// Ring operations performed by an elimination.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCount {
    pub multiplications: u64,
    pub divisions: u64,
}

impl OpCount {
    pub fn total(&self) -> u64 {
        self.multiplications + self.divisions
    }
}

/// Fraction-free (Bareiss) determinant with exact Laurent division. Zero
/// pivots are replaced by the sparsest nonzero entry below them.
pub fn determinant(m: &PolyMatrix) -> Result<(LaurentPoly1, OpCount), LaurentError> {
    let n = m.len();
    let mut ops = OpCount::default();
    if n == 0 {
        return Ok((LaurentPoly1::one(), ops));
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = LaurentPoly1::one();
    for k in 0..n - 1 {
        let pivot_row = (k..n).filter(|&i| !a[i][k].is_zero()).min_by_key(|&i| (a[i][k].len(), i));
        let Some(p) = pivot_row else {
            return Ok((LaurentPoly1::zero(), ops));
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in rest.iter_mut() {
            let factor = std::mem::take(&mut row[k]);
            for j in k + 1..n {
                let cur = std::mem::take(&mut row[j]);
                let mut val = if cur.is_zero() {
                    LaurentPoly1::zero()
                } else {
                    ops.multiplications += 1;
                    pivot * &cur
                };
                if !factor.is_zero() && !pivot_row[j].is_zero() {
                    ops.multiplications += 1;
                    val -= &(&factor * &pivot_row[j]);
                }
                if !val.is_zero() && !prev.is_one() {
                    ops.divisions += 1;
                    val = val.exact_div(&prev)?;
                }
                row[j] = val;
            }
        }
        prev = a[k][k].clone();
    }
    let det = std::mem::take(&mut a[n - 1][n - 1]);
    Ok((if negate { -det } else { det }, ops))
}

/// Row-to-column perfect matching of the overlay by augmenting paths.
pub fn find_matching(g: &OverlayGraph) -> Option<Vec<usize>> {
    let n = g.size();
    let mut col_owner: Vec<Option<usize>> = vec![None; n];
    let adjacency: Vec<Vec<usize>> = (0..n)
        .map(|r| g.edges().iter().filter(|e| e.crossing == r).map(|e| e.column).collect())
        .collect();

    fn augment(
        r: usize,
        adjacency: &[Vec<usize>],
        col_owner: &mut [Option<usize>],
        visited: &mut [bool],
    ) -> bool {
        for &c in &adjacency[r] {
            if visited[c] {
                continue;
            }
            visited[c] = true;
            let free = match col_owner[c] {
                None => true,
                Some(o) => augment(o, adjacency, col_owner, visited),
            };
            if free {
                col_owner[c] = Some(r);
                return true;
            }
        }
        false
    }

    for r in 0..n {
        let mut visited = vec![false; n];
        if !augment(r, &adjacency, &mut col_owner, &mut visited) {
            return None;
        }
    }
    let mut row_to_col = vec![0; n];
    for (c, owner) in col_owner.iter().enumerate() {
        row_to_col[owner.expect("perfect")] = c;
    }
    Some(row_to_col)
}

/// Global sign `s` with `s * det = sum over matchings of their weights`:
/// the permutation sign of one matching times its Kasteleyn signs. `+1` when
/// there is no matching (the determinant is then zero).
pub fn fix_sign(g: &OverlayGraph) -> Sign {
    let Some(perm) = find_matching(g) else { return Sign::Pos };
    let mut s = permutation_sign(&perm);
    for (r, &c) in perm.iter().enumerate() {
        let e = g.edge_between(r, c).expect("matched pair is an edge");
        s = s * g.edges()[e].kasteleyn;
    }
    s
}

// ---------------------------------------------------------------------------
// Pipeline

/// Every intermediate of the determinant route for one braid word.
#[derive(Debug, Clone)]
pub struct DetPipeline {
    pub diagram: LinkDiagram,
    pub overlay: OverlayGraph,
    pub matrix: ModifiedAdjacencyMatrix,
    pub determinant: LaurentPoly1,
    pub sign: Sign,
    pub bracket: LaurentPoly1,
    pub jones: LaurentPoly1,
    pub ops: OpCount,
}

/// Signed overlay of a family word, ready for matrix construction.
pub fn signed_overlay(w: &BraidWord) -> Result<(LinkDiagram, OverlayGraph), DimerError> {
    if !w.is_homogeneous_family() {
        return Err(DimerError::UnsupportedWord(w.to_string()));
    }
    let d = LinkDiagram::close_braid(w)?;
    let mut g = OverlayGraph::build(&d)?;
    kasteleyn_sign(&mut g)?;
    Ok((d, g))
}

/// `(-A^-3)^writhe`.
pub fn writhe_factor(writhe: i64) -> LaurentPoly1 {
    let sign = if writhe % 2 == 0 { 1 } else { -1 };
    LaurentPoly1::term(sign, -3 * writhe)
}

pub fn run_pipeline(w: &BraidWord) -> Result<DetPipeline, DimerError> {
    let (diagram, overlay) = signed_overlay(w)?;
    let matrix = ModifiedAdjacencyMatrix::from_overlay(&overlay);
    let (determinant, ops) = determinant(&matrix.numeric())?;
    let sign = fix_sign(&overlay);
    let bracket = if sign.is_neg() { -&determinant } else { determinant.clone() };
    let jones = &writhe_factor(w.writhe()) * &bracket;
    Ok(DetPipeline { diagram, overlay, matrix, determinant, sign, bracket, jones, ops })
}

/// Jones polynomial from the sign-fixed Kasteleyn determinant.
pub fn jones_via_det(w: &BraidWord) -> Result<LaurentPoly1, DimerError> {
    Ok(run_pipeline(w)?.jones)
}
