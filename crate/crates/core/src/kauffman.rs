//! Activity-letter specializations and the Kauffman polynomial of the
//! `(2, q)` torus links.
//!
//! The Kauffman specialization sends `L -> a`, `ℓ -> a^-1`, `D, d -> z`.
//! `K(2, q)` is available three ways: the skein recursion, the expansion in
//! terms of `P_q` and earlier `K(2, i)`, and the closed form in terms of `P_i`
//! and the Chebyshev-like sequence `g_n`.

use std::str::FromStr;

use thiserror::Error;

use crate::activity::{ActivityWord, Base, Letter};
use crate::laurent::{Exp2, LaurentPoly1, LaurentPoly2};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KauffmanError {
    #[error("barred letter {0} has no Kauffman specialization")]
    BarredLetter(String),
    #[error("index must be non-negative, got {0}")]
    NegativeIndex(i64),
    #[error("unknown method `{0}` (expected skein, prop or closed)")]
    UnknownMethod(String),
}

/// Bracket weight of a letter as `(negative, exponent of A)`.
fn letter_monomial(letter: Letter) -> (bool, i64) {
    use Base::*;
    match (letter.base, letter.barred) {
        (BigL, false) | (SmallL, true) => (true, -3),
        (SmallL, false) | (BigL, true) => (true, 3),
        (BigD, false) | (SmallD, true) => (false, 1),
        (SmallD, false) | (BigD, true) => (false, -1),
    }
}

/// Bracket weight of a single letter.
pub fn letter_bracket(letter: Letter) -> LaurentPoly1 {
    let (neg, exp) = letter_monomial(letter);
    LaurentPoly1::term(if neg { -1 } else { 1 }, exp)
}

/// Product of the bracket weights of the letters of `word`.
pub fn specialize_bracket(word: &ActivityWord) -> LaurentPoly1 {
    let mut exp = 0i64;
    let mut negative = false;
    for (letter, mult) in word.letters() {
        let (neg, e) = letter_monomial(letter);
        exp += e * mult as i64;
        negative ^= neg && mult % 2 == 1;
    }
    LaurentPoly1::term(if negative { -1 } else { 1 }, exp)
}

/// Product of the Kauffman weights of the letters of `word`.
pub fn specialize_kauffman(word: &ActivityWord) -> Result<LaurentPoly2, KauffmanError> {
    if word.has_bars() {
        return Err(KauffmanError::BarredLetter(word.to_string()));
    }
    let mut e = Exp2::new(0, 0);
    for (letter, mult) in word.letters() {
        let m = mult as i64;
        match letter.base {
            Base::BigL => e.a += m,
            Base::SmallL => e.a -= m,
            Base::BigD | Base::SmallD => e.z += m,
        }
    }
    Ok(LaurentPoly2::monomial(1, e))
}

fn word(spec: &[(Base, u32)]) -> ActivityWord {
    let mut w = ActivityWord::empty();
    for &(b, n) in spec {
        for _ in 0..n {
            w.push(Letter::new(b, false));
        }
    }
    w
}

/// The matching words of the `(2, q)` overlay: `ℓD^(q-1)` and `dL^i D^(q-1-i)`
/// for `1 <= i <= q-1`.
pub fn torus_matching_words(q: u32) -> Vec<ActivityWord> {
    if q == 0 {
        return Vec::new();
    }
    let mut out = vec![word(&[(Base::SmallL, 1), (Base::BigD, q - 1)])];
    for i in 1..q {
        out.push(word(&[(Base::SmallD, 1), (Base::BigL, i), (Base::BigD, q - 1 - i)]));
    }
    out
}

fn check_index(q: i64) -> Result<usize, KauffmanError> {
    usize::try_from(q).map_err(|_| KauffmanError::NegativeIndex(q))
}

/// `P_0 = (a + a^-1) z^-1 - 1`.
fn p0() -> LaurentPoly2 {
    LaurentPoly2::from_terms([(Exp2::new(1, -1), 1), (Exp2::new(-1, -1), 1), (Exp2::new(0, 0), -1)])
}

/// `P_q`: for `q >= 2` the Kauffman specialization of the `(2, q)` matching
/// words; `P_0` and `P_1 = a^-1` are fixed base values.
pub fn p(q: i64) -> Result<LaurentPoly2, KauffmanError> {
    let q = check_index(q)?;
    Ok(match q {
        0 => p0(),
        1 => LaurentPoly2::term(1, -1, 0),
        _ => torus_matching_words(q as u32)
            .iter()
            .map(|w| specialize_kauffman(w).expect("unbarred"))
            .sum(),
    })
}

/// `g_0 = 1, g_1 = z, g_n = z g_(n-1) - g_(n-2)`.
pub fn g(n: i64) -> Result<LaurentPoly2, KauffmanError> {
    let n = check_index(n)?;
    Ok(g_table(n).pop().unwrap())
}

fn g_table(n: usize) -> Vec<LaurentPoly2> {
    let z = LaurentPoly2::var_z();
    let mut t = vec![LaurentPoly2::one(), z.clone()];
    for i in 2..=n {
        let next = &(&z * &t[i - 1]) - &t[i - 2];
        t.push(next);
    }
    t.truncate(n + 1);
    t
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum K2qMethod {
    /// `K(2,q) = z a^(q-1) + z K(2,q-1) - K(2,q-2)`.
    Skein,
    /// `K(2,q) = P_q - sum_(i=0)^(q-2) z^(q-2-i) K(2,i)`.
    Prop,
    /// `K(2,q) = P_q - sum_(i=0)^(q-2) P_i g_(q-2-i)`.
    Closed,
}

impl FromStr for K2qMethod {
    type Err = KauffmanError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "skein" => Ok(K2qMethod::Skein),
            "prop" => Ok(K2qMethod::Prop),
            "closed" => Ok(K2qMethod::Closed),
            _ => Err(KauffmanError::UnknownMethod(s.to_string())),
        }
    }
}

/// Unnormalized Kauffman polynomial `K` of the closure of `s1^q`.
pub fn k2q(q: i64, method: K2qMethod) -> Result<LaurentPoly2, KauffmanError> {
    let q = check_index(q)?;
    let z = LaurentPoly2::var_z();
    let mut ks: Vec<LaurentPoly2> = vec![p0(), LaurentPoly2::term(1, -1, 0)];
    match method {
        K2qMethod::Skein => {
            for i in 2..=q {
                let lead = LaurentPoly2::term(1, i as i64 - 1, 1);
                let next = &(&lead + &(&z * &ks[i - 1])) - &ks[i - 2];
                ks.push(next);
            }
        }
        K2qMethod::Prop => {
            for i in 2..=q {
                let mut k = p(i as i64)?;
                for (j, kj) in ks.iter().enumerate().take(i - 1) {
                    k -= &(&z.pow((i - 2 - j) as u32) * kj);
                }
                ks.push(k);
            }
        }
        K2qMethod::Closed => {
            let gs = g_table(q.saturating_sub(2));
            let ps: Vec<LaurentPoly2> = (0..=q as i64).map(p).collect::<Result<_, _>>()?;
            for i in 2..=q {
                let mut k = ps[i].clone();
                for (j, pj) in ps.iter().enumerate().take(i - 1) {
                    k -= &(pj * &gs[i - 2 - j]);
                }
                ks.push(k);
            }
        }
    }
    Ok(ks.swap_remove(q))
}

/// Writhe-normalized `F(2, q) = a^-q K(2, q)`.
pub fn f2q(q: i64, method: K2qMethod) -> Result<LaurentPoly2, KauffmanError> {
    if q < 1 {
        return Err(KauffmanError::NegativeIndex(q));
    }
    let k = k2q(q, method)?;
    Ok(&LaurentPoly2::term(1, -q, 0) * &k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> ActivityWord {
        s.parse().unwrap()
    }

    fn poly2(terms: &[(i64, i64, i64)]) -> LaurentPoly2 {
        LaurentPoly2::from_terms(terms.iter().map(|&(a, z, c)| (Exp2::new(a, z), c)))
    }

    #[test]
    fn bracket_specialization() {
        assert_eq!(specialize_bracket(&w("L^2d")), LaurentPoly1::term(1, -7));
        assert_eq!(specialize_bracket(&w("ℓD^2")), LaurentPoly1::term(-1, 5));
        assert_eq!(specialize_bracket(&w("L'l'")), LaurentPoly1::one());
        assert_eq!(specialize_bracket(&w("LdD")), LaurentPoly1::term(-1, -3));
        assert_eq!(specialize_bracket(&ActivityWord::empty()), LaurentPoly1::one());
        for base in Base::ALL {
            let plain = letter_bracket(Letter::new(base, false));
            let barred = letter_bracket(Letter::new(base, true));
            assert_eq!(barred, plain.invert_variables());
        }
    }

    #[test]
    fn kauffman_specialization() {
        assert_eq!(specialize_kauffman(&w("Ld")).unwrap(), poly2(&[(1, 1, 1)]));
        assert_eq!(specialize_kauffman(&w("ℓD")).unwrap(), poly2(&[(-1, 1, 1)]));
        assert_eq!(specialize_kauffman(&w("ℓ")).unwrap(), poly2(&[(-1, 0, 1)]));
        assert!(matches!(specialize_kauffman(&w("L'")), Err(KauffmanError::BarredLetter(_))));
    }

    #[test]
    fn p_values() {
        assert_eq!(p(0).unwrap(), poly2(&[(1, -1, 1), (-1, -1, 1), (0, 0, -1)]));
        assert_eq!(p(1).unwrap(), poly2(&[(-1, 0, 1)]));
        assert_eq!(p(2).unwrap(), poly2(&[(1, 1, 1), (-1, 1, 1)]));
        assert_eq!(p(3).unwrap(), poly2(&[(2, 1, 1), (1, 2, 1), (-1, 2, 1)]));
        assert_eq!(p(-1), Err(KauffmanError::NegativeIndex(-1)));
        // the matching formula at q = 1 is the single word ℓ
        let one: LaurentPoly2 = torus_matching_words(1).iter().map(|x| specialize_kauffman(x).unwrap()).sum();
        assert_eq!(one, p(1).unwrap());
    }

    #[test]
    fn p_recursion() {
        let z = LaurentPoly2::var_z();
        for q in 2..=15 {
            let rec = &LaurentPoly2::term(1, q - 1, 1) + &(&z * &p(q - 1).unwrap());
            assert_eq!(p(q).unwrap(), rec, "q = {q}");
        }
    }

    #[test]
    fn g_values() {
        assert_eq!(g(0).unwrap(), LaurentPoly2::one());
        assert_eq!(g(1).unwrap(), LaurentPoly2::var_z());
        assert_eq!(g(2).unwrap(), poly2(&[(0, 2, 1), (0, 0, -1)]));
        assert_eq!(g(3).unwrap(), poly2(&[(0, 3, 1), (0, 1, -2)]));
        assert!(g(-2).is_err());
    }

    #[test]
    fn k2q_base_values() {
        for m in [K2qMethod::Skein, K2qMethod::Prop, K2qMethod::Closed] {
            assert_eq!(k2q(0, m).unwrap(), poly2(&[(1, -1, 1), (-1, -1, 1), (0, 0, -1)]));
            assert_eq!(k2q(1, m).unwrap(), poly2(&[(-1, 0, 1)]));
            assert_eq!(
                k2q(2, m).unwrap(),
                poly2(&[(1, 1, 1), (-1, 1, 1), (1, -1, -1), (-1, -1, -1), (0, 0, 1)])
            );
        }
        assert_eq!(k2q(-1, K2qMethod::Skein), Err(KauffmanError::NegativeIndex(-1)));
    }

    #[test]
    fn k2q_methods_agree() {
        for q in 0..=15 {
            let s = k2q(q, K2qMethod::Skein).unwrap();
            assert_eq!(s, k2q(q, K2qMethod::Prop).unwrap(), "q = {q}");
            assert_eq!(s, k2q(q, K2qMethod::Closed).unwrap(), "q = {q}");
        }
    }

    #[test]
    fn normalized_values() {
        assert_eq!(f2q(1, K2qMethod::Skein).unwrap(), poly2(&[(-2, 0, 1)]));
        let k3 = k2q(3, K2qMethod::Skein).unwrap();
        assert_eq!(f2q(3, K2qMethod::Closed).unwrap(), &LaurentPoly2::term(1, -3, 0) * &k3);
        assert!(f2q(0, K2qMethod::Skein).is_err());
        // knots (odd q) carry no negative powers of z; two-component links do
        for q in 1..=12 {
            let f = f2q(q, K2qMethod::Skein).unwrap();
            if q % 2 == 1 {
                assert!(f.min_z_exp().unwrap() >= 0, "q = {q}");
            } else {
                assert_eq!(f.min_z_exp(), Some(-1), "q = {q}");
            }
        }
    }
}
