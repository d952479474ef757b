//! The eight activity letters `L, ℓ, D, d` and their barred forms, and
//! activity words (commutative products of letters).

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Unbarred activity letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Base {
    /// `L`: internally active tree edge / lowest edge at a shaded face.
    BigL,
    /// `ℓ`: externally active edge / lowest edge at an unshaded face.
    SmallL,
    /// `D`: internally inactive tree edge / other edges at a shaded face.
    BigD,
    /// `d`: externally inactive edge / other edges at an unshaded face.
    SmallD,
}

impl Base {
    pub const ALL: [Base; 4] = [Base::BigL, Base::SmallL, Base::BigD, Base::SmallD];

    fn symbol(self) -> &'static str {
        match self {
            Base::BigL => "L",
            Base::SmallL => "ℓ",
            Base::BigD => "D",
            Base::SmallD => "d",
        }
    }

    fn ascii(self) -> char {
        match self {
            Base::BigL => 'L',
            Base::SmallL => 'l',
            Base::BigD => 'D',
            Base::SmallD => 'd',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub base: Base,
    pub barred: bool,
}

impl Letter {
    pub const fn new(base: Base, barred: bool) -> Self {
        Letter { base, barred }
    }

    pub fn index(self) -> usize {
        self.base as usize + if self.barred { 4 } else { 0 }
    }

    fn from_index(i: usize) -> Letter {
        Letter { base: Base::ALL[i % 4], barred: i >= 4 }
    }

    /// ASCII form: `L l D d`, a trailing `'` marks a bar.
    pub fn ascii(self) -> String {
        let mut s = self.base.ascii().to_string();
        if self.barred {
            s.push('\'');
        }
        s
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.base.symbol())?;
        if self.barred {
            f.write_str("\u{0304}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse activity word `{0}`")]
pub struct ActivityParseError(pub String);

/// Multiset of activity letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ActivityWord {
    counts: [u32; 8],
}

impl ActivityWord {
    pub fn empty() -> Self {
        ActivityWord::default()
    }

    pub fn push(&mut self, letter: Letter) {
        self.counts[letter.index()] += 1;
    }

    pub fn count(&self, letter: Letter) -> u32 {
        self.counts[letter.index()]
    }

    pub fn len(&self) -> usize {
        self.counts.iter().map(|&c| c as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Letters with multiplicity, in canonical order.
    pub fn letters(&self) -> impl Iterator<Item = (Letter, u32)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (Letter::from_index(i), c))
    }

    pub fn has_bars(&self) -> bool {
        self.counts[4..].iter().any(|&c| c > 0)
    }

    pub fn ascii(&self) -> String {
        self.render(|l| l.ascii())
    }

    fn render(&self, sym: impl Fn(Letter) -> String) -> String {
        if self.is_empty() {
            return "1".to_string();
        }
        let mut out = String::new();
        for (l, c) in self.letters() {
            out.push_str(&sym(l));
            if c > 1 {
                out.push_str(&format!("^{c}"));
            }
        }
        out
    }
}

impl FromIterator<Letter> for ActivityWord {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        let mut w = ActivityWord::empty();
        for l in iter {
            w.push(l);
        }
        w
    }
}

impl fmt::Display for ActivityWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(|l| l.to_string()))
    }
}

impl FromStr for ActivityWord {
    type Err = ActivityParseError;

    /// Accepts `L^2d`, `ℓD^2`, `lD^2`; a bar is written as a trailing `'` or
    /// a combining macron.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ActivityParseError(s.to_string());
        let mut w = ActivityWord::empty();
        let mut chars = s.chars().filter(|c| !c.is_whitespace()).peekable();
        if s.trim() == "1" {
            return Ok(w);
        }
        while let Some(ch) = chars.next() {
            let base = match ch {
                'L' => Base::BigL,
                'l' | 'ℓ' => Base::SmallL,
                'D' => Base::BigD,
                'd' => Base::SmallD,
                _ => return Err(err()),
            };
            let mut barred = false;
            if matches!(chars.peek(), Some('\'') | Some('\u{0304}')) {
                chars.next();
                barred = true;
            }
            let mut mult = 1u32;
            if chars.peek() == Some(&'^') {
                chars.next();
                let mut digits = String::new();
                while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    digits.push(*d);
                    chars.next();
                }
                mult = digits.parse().map_err(|_| err())?;
            }
            w.counts[Letter::new(base, barred).index()] += mult;
        }
        if w.is_empty() {
            return Err(err());
        }
        Ok(w)
    }
}
