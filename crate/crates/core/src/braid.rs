//! Braid words: parsing, writhe and membership in the homogeneous family
//! `s1^m1 s2^m2 ... s(n-1)^m(n-1)` with exponents of one sign.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("malformed braid token `{0}` (expected s<k> or s<k>^<e>)")]
    Syntax(String),
    #[error("braid word is empty")]
    Empty,
    #[error("generator s{generator} needs at least {needed} strands, got {strands}")]
    StrandMismatch { generator: usize, needed: usize, strands: usize },
    #[error("zero exponent in token `{0}`")]
    ZeroExponent(String),
}

/// Sign of a crossing, either in the oriented sense or relative to a shading.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn of(x: i64) -> Sign {
        if x < 0 {
            Sign::Neg
        } else {
            Sign::Pos
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn is_neg(self) -> bool {
        self == Sign::Neg
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }
}

/// `s_generator ^ exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub generator: usize,
    pub exponent: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    syllables: Vec<Syllable>,
}

impl BraidWord {
    /// Validated constructor; `syllables` may be empty.
    pub fn new(strands: usize, syllables: Vec<Syllable>) -> Result<Self, BraidError> {
        for s in &syllables {
            if s.exponent == 0 {
                return Err(BraidError::ZeroExponent(format!("s{}^0", s.generator)));
            }
            if s.generator == 0 {
                return Err(BraidError::Syntax(format!("s{}", s.generator)));
            }
            if s.generator + 1 > strands {
                return Err(BraidError::StrandMismatch {
                    generator: s.generator,
                    needed: s.generator + 1,
                    strands,
                });
            }
        }
        if strands < 2 {
            return Err(BraidError::StrandMismatch { generator: 1, needed: 2, strands });
        }
        Ok(BraidWord { strands, syllables })
    }

    /// The family word `s1^m1 s2^m2 ...` on `exponents.len() + 1` strands.
    pub fn homogeneous(exponents: &[i64]) -> Result<Self, BraidError> {
        let syllables = exponents
            .iter()
            .enumerate()
            .map(|(i, &m)| Syllable { generator: i + 1, exponent: m })
            .collect();
        BraidWord::new(exponents.len() + 1, syllables)
    }

    /// Parses `s1^3 s2^-1`-style text; tokens are separated by whitespace or `*`.
    pub fn parse(text: &str, strands: Option<usize>) -> Result<Self, BraidError> {
        let mut syllables = Vec::new();
        for tok in text.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()) {
            syllables.push(parse_token(tok)?);
        }
        if syllables.is_empty() {
            return Err(BraidError::Empty);
        }
        let max_gen = syllables.iter().map(|s| s.generator).max().unwrap_or(1);
        let strands = match strands {
            None => max_gen + 1,
            Some(n) if n < max_gen + 1 => {
                return Err(BraidError::StrandMismatch { generator: max_gen, needed: max_gen + 1, strands: n })
            }
            Some(n) => n,
        };
        BraidWord::new(strands, syllables)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn crossing_count(&self) -> usize {
        self.syllables.iter().map(|s| s.exponent.unsigned_abs() as usize).sum()
    }

    /// Crossings in reading order as `(generator, oriented sign)`.
    pub fn crossings(&self) -> impl Iterator<Item = (usize, Sign)> + '_ {
        self.syllables.iter().flat_map(|s| {
            std::iter::repeat_n((s.generator, Sign::of(s.exponent)), s.exponent.unsigned_abs() as usize)
        })
    }

    pub fn writhe(&self) -> i64 {
        self.syllables.iter().map(|s| s.exponent).sum()
    }

    /// `s1^m1 s2^m2 ... s(n-1)^m(n-1)` literally, every generator once, all
    /// exponents of one sign. Adjacent equal syllables are not merged.
    pub fn is_homogeneous_family(&self) -> bool {
        let n = self.strands;
        self.syllables.len() == n - 1
            && self.syllables.iter().enumerate().all(|(i, s)| s.generator == i + 1)
            && (self.syllables.iter().all(|s| s.exponent > 0)
                || self.syllables.iter().all(|s| s.exponent < 0))
    }

    /// The mirror word: every exponent negated.
    pub fn mirror(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            syllables: self
                .syllables
                .iter()
                .map(|s| Syllable { generator: s.generator, exponent: -s.exponent })
                .collect(),
        }
    }

    /// Concatenation; strand count is the larger of the two.
    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        let mut syllables = self.syllables.clone();
        syllables.extend_from_slice(&other.syllables);
        BraidWord { strands: self.strands.max(other.strands), syllables }
    }
}

fn parse_token(tok: &str) -> Result<Syllable, BraidError> {
    let syntax = || BraidError::Syntax(tok.to_string());
    let body = tok.strip_prefix('s').ok_or_else(syntax)?;
    let (gen_str, exp_str) = match body.split_once('^') {
        Some((g, e)) => (g, Some(e)),
        None => (body, None),
    };
    if gen_str.is_empty() || !gen_str.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax());
    }
    let generator: usize = gen_str.parse().map_err(|_| syntax())?;
    if generator == 0 {
        return Err(syntax());
    }
    let exponent = match exp_str {
        None => 1,
        Some(e) => {
            let digits = e.strip_prefix('-').or_else(|| e.strip_prefix('+')).unwrap_or(e);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(syntax());
            }
            e.parse::<i64>().map_err(|_| syntax())?
        }
    };
    if exponent == 0 {
        return Err(BraidError::ZeroExponent(tok.to_string()));
    }
    Ok(Syllable { generator, exponent })
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self
            .syllables
            .iter()
            .map(|s| {
                if s.exponent == 1 {
                    format!("s{}", s.generator)
                } else {
                    format!("s{}^{}", s.generator, s.exponent)
                }
            })
            .collect();
        f.write_str(&toks.join(" "))
    }
}

impl FromStr for BraidWord {
    type Err = BraidError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BraidWord::parse(s, None)
    }
}
