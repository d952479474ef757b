//! Exponential-time references: the bracket state sum, Jones by writhe
//! correction, and a Laplace-expansion determinant.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use thiserror::Error;

use crate::braid::BraidWord;
use crate::diagram::{DiagramError, LinkDiagram};
use crate::dimer::{writhe_factor, PolyMatrix};
use crate::laurent::LaurentPoly1;

pub const DEFAULT_CAP: usize = 24;
pub const MAX_COFACTOR_DIM: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{crossings} crossings exceed the state-sum cap of {cap}")]
    TooManyCrossings { crossings: usize, cap: usize },
    #[error("matrix of dimension {0} is too large for cofactor expansion (max {MAX_COFACTOR_DIM})")]
    TooLarge(usize),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

#[derive(Debug, Clone, Copy)]
pub struct StateSumOptions {
    pub cap: usize,
    pub parallel: bool,
}

impl Default for StateSumOptions {
    fn default() -> Self {
        StateSumOptions { cap: DEFAULT_CAP, parallel: false }
    }
}

#[derive(Debug, Clone)]
pub struct StateSum {
    pub bracket: LaurentPoly1,
    pub states_visited: u64,
    /// Number of states with a given `(a-smoothing count, loop count)`.
    pub histogram: BTreeMap<(u32, u32), u64>,
}

/// Loop count of the smoothing where bit `i` of `state` set means crossing
/// `i` takes its b-smoothing.
fn loops(d: &LinkDiagram, state: u64, parent: &mut [u32]) -> u32 {
    for (i, p) in parent.iter_mut().enumerate() {
        *p = i as u32;
    }
    fn root(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            let up = parent[parent[x as usize] as usize];
            parent[x as usize] = up;
            x = up;
        }
        x
    }
    let mut count = parent.len() as u32;
    let mut join = |parent: &mut [u32], a: usize, b: usize| {
        let (ra, rb) = (root(parent, a as u32), root(parent, b as u32));
        if ra != rb {
            parent[ra as usize] = rb;
            count -= 1;
        }
    };
    for (i, c) in d.crossings().iter().enumerate() {
        let s = c.slots;
        if state >> i & 1 == 0 {
            join(parent, s[0], s[1]);
            join(parent, s[2], s[3]);
        } else {
            join(parent, s[1], s[2]);
            join(parent, s[3], s[0]);
        }
    }
    count
}

fn histogram_range(d: &LinkDiagram, range: std::ops::Range<u64>) -> HashMap<(u32, u32), u64> {
    let c = d.crossing_count() as u32;
    let mut parent = vec![0u32; d.arcs().len()];
    let mut out = HashMap::new();
    for state in range {
        let nb = state.count_ones();
        let l = loops(d, state, &mut parent);
        *out.entry((c - nb, l)).or_insert(0) += 1;
    }
    out
}

/// `sum over states of A^(#a - #b) (-A^2 - A^-2)^(loops - 1)`.
pub fn bracket_state_sum_with(d: &LinkDiagram, opts: StateSumOptions) -> Result<StateSum, OracleError> {
    let c = d.crossing_count();
    if c > opts.cap {
        return Err(OracleError::TooManyCrossings { crossings: c, cap: opts.cap });
    }
    if c == 0 {
        let mut histogram = BTreeMap::new();
        histogram.insert((0, 1), 1);
        return Ok(StateSum { bracket: LaurentPoly1::one(), states_visited: 1, histogram });
    }
    let total = 1u64 << c;
    let raw = if opts.parallel && c > 10 {
        let chunk = 1u64 << 10;
        (0..total / chunk)
            .into_par_iter()
            .map(|k| histogram_range(d, k * chunk..(k + 1) * chunk))
            .reduce(HashMap::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_insert(0) += v;
                }
                a
            })
    } else {
        histogram_range(d, 0..total)
    };
    let histogram: BTreeMap<(u32, u32), u64> = raw.into_iter().collect();

    let delta = LaurentPoly1::from_terms([(2, -1), (-2, -1)]);
    let max_loops = histogram.keys().map(|k| k.1).max().unwrap_or(1);
    let delta_pows: Vec<LaurentPoly1> =
        std::iter::successors(Some(LaurentPoly1::one()), |p| Some(p * &delta)).take(max_loops as usize).collect();
    let mut bracket = LaurentPoly1::zero();
    for (&(na, l), &count) in &histogram {
        let nb = c as i64 - na as i64;
        let mono = LaurentPoly1::monomial(count, na as i64 - nb);
        bracket += &mono * &delta_pows[l as usize - 1];
    }
    let states_visited = histogram.values().sum();
    Ok(StateSum { bracket, states_visited, histogram })
}

pub fn bracket_state_sum(d: &LinkDiagram) -> Result<LaurentPoly1, OracleError> {
    Ok(bracket_state_sum_with(d, StateSumOptions::default())?.bracket)
}

pub fn jones_state_sum_with(w: &BraidWord, opts: StateSumOptions) -> Result<LaurentPoly1, OracleError> {
    if w.crossing_count() > opts.cap {
        return Err(OracleError::TooManyCrossings { crossings: w.crossing_count(), cap: opts.cap });
    }
    let d = LinkDiagram::close_braid(w)?;
    let bracket = bracket_state_sum_with(&d, opts)?.bracket;
    Ok(&writhe_factor(w.writhe()) * &bracket)
}

pub fn jones_state_sum(w: &BraidWord) -> Result<LaurentPoly1, OracleError> {
    jones_state_sum_with(w, StateSumOptions::default())
}

/// Laplace expansion along rows, memoized on the set of used columns.
pub fn cofactor_det(m: &PolyMatrix) -> Result<LaurentPoly1, OracleError> {
    let n = m.len();
    if n > MAX_COFACTOR_DIM {
        return Err(OracleError::TooLarge(n));
    }
    let mut memo: HashMap<u32, LaurentPoly1> = HashMap::new();
    Ok(expand(m, 0, &mut memo))
}

fn expand(m: &PolyMatrix, used: u32, memo: &mut HashMap<u32, LaurentPoly1>) -> LaurentPoly1 {
    let n = m.len();
    let row = used.count_ones() as usize;
    if row == n {
        return LaurentPoly1::one();
    }
    if let Some(v) = memo.get(&used) {
        return v.clone();
    }
    let mut acc = LaurentPoly1::zero();
    let mut position = 0;
    for col in 0..n {
        if used >> col & 1 == 1 {
            continue;
        }
        let entry = &m[row][col];
        if !entry.is_zero() {
            let minor = expand(m, used | 1 << col, memo);
            let term = entry * &minor;
            if position % 2 == 0 {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
        position += 1;
    }
    memo.insert(used, acc.clone());
    acc
}
