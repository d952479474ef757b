//! Sparse Laurent polynomials with arbitrary-precision integer coefficients.
//!
//! [`LaurentPoly1`] is a polynomial in the bracket variable `A`, [`LaurentPoly2`]
//! a polynomial in the Kauffman variables `a` and `z`. Both share the generic
//! [`Laurent`] storage: a map from exponent to nonzero coefficient, so equal
//! polynomials always have identical term maps.

use std::collections::BTreeMap;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("polynomial division left a nonzero remainder")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("variables must be assigned nonzero values")]
    ZeroAssignment,
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

/// Exponent monoid of a Laurent ring.
pub trait Exponent: Copy + Ord + fmt::Debug {
    fn zero() -> Self;
    fn plus(self, other: Self) -> Self;
    fn negate(self) -> Self;
}

impl Exponent for i64 {
    fn zero() -> Self {
        0
    }
    fn plus(self, other: Self) -> Self {
        self + other
    }
    fn negate(self) -> Self {
        -self
    }
}

/// Exponent of the monomial `a^a z^z`; ordered lexicographically by `(a, z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exp2 {
    pub a: i64,
    pub z: i64,
}

impl Exp2 {
    pub const fn new(a: i64, z: i64) -> Self {
        Exp2 { a, z }
    }
}

impl Exponent for Exp2 {
    fn zero() -> Self {
        Exp2 { a: 0, z: 0 }
    }
    fn plus(self, other: Self) -> Self {
        Exp2 { a: self.a + other.a, z: self.z + other.z }
    }
    fn negate(self) -> Self {
        Exp2 { a: -self.a, z: -self.z }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent<E: Exponent> {
    terms: BTreeMap<E, BigInt>,
}

/// Laurent polynomial in `A`.
pub type LaurentPoly1 = Laurent<i64>;
/// Laurent polynomial in `a` and `z`.
pub type LaurentPoly2 = Laurent<Exp2>;

impl<E: Exponent> Laurent<E> {
    pub fn zero() -> Self {
        Laurent { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, E::zero())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, E::zero())
    }

    pub fn monomial(coeff: impl Into<BigInt>, exp: E) -> Self {
        let coeff = coeff.into();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Laurent { terms }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<C: Into<BigInt>>(iter: impl IntoIterator<Item = (E, C)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.get(&E::zero()).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (E, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: E) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    fn add_term(&mut self, exp: E, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Multiplies by the monomial `c * x^exp`.
    pub fn scale(&self, coeff: &BigInt, exp: E) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (e.plus(exp), c * coeff)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes every variable by its inverse.
    pub fn invert_variables(&self) -> Self {
        Laurent { terms: self.terms.iter().map(|(e, c)| (e.negate(), c.clone())).collect() }
    }

    /// Inverse of a unit monomial `±x^e`, if this is one.
    pub fn unit_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        if c.abs().is_one() {
            Some(Self::monomial(c.clone(), e.negate()))
        } else {
            None
        }
    }
}

impl<E: Exponent> Add<&Laurent<E>> for &Laurent<E> {
    type Output = Laurent<E>;
    fn add(self, rhs: &Laurent<E>) -> Laurent<E> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<E: Exponent> AddAssign<&Laurent<E>> for Laurent<E> {
    fn add_assign(&mut self, rhs: &Laurent<E>) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl<E: Exponent> SubAssign<&Laurent<E>> for Laurent<E> {
    fn sub_assign(&mut self, rhs: &Laurent<E>) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl<E: Exponent> Sub<&Laurent<E>> for &Laurent<E> {
    type Output = Laurent<E>;
    fn sub(self, rhs: &Laurent<E>) -> Laurent<E> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<E: Exponent> Neg for &Laurent<E> {
    type Output = Laurent<E>;
    fn neg(self) -> Laurent<E> {
        Laurent { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl<E: Exponent> Neg for Laurent<E> {
    type Output = Laurent<E>;
    fn neg(mut self) -> Laurent<E> {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl<E: Exponent> Mul<&Laurent<E>> for &Laurent<E> {
    type Output = Laurent<E>;
    fn mul(self, rhs: &Laurent<E>) -> Laurent<E> {
        let mut out = Laurent::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1.plus(*e2), c1 * c2);
            }
        }
        out
    }
}

impl<E: Exponent> MulAssign<&Laurent<E>> for Laurent<E> {
    fn mul_assign(&mut self, rhs: &Laurent<E>) {
        *self = &*self * rhs;
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl<E: Exponent> $tr<Laurent<E>> for Laurent<E> {
            type Output = Laurent<E>;
            fn $method(self, rhs: Laurent<E>) -> Laurent<E> {
                (&self).$method(&rhs)
            }
        }
        impl<E: Exponent> $tr<&Laurent<E>> for Laurent<E> {
            type Output = Laurent<E>;
            fn $method(self, rhs: &Laurent<E>) -> Laurent<E> {
                (&self).$method(rhs)
            }
        }
        impl<E: Exponent> $tr<Laurent<E>> for &Laurent<E> {
            type Output = Laurent<E>;
            fn $method(self, rhs: Laurent<E>) -> Laurent<E> {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl<E: Exponent> AddAssign for Laurent<E> {
    fn add_assign(&mut self, rhs: Laurent<E>) {
        *self += &rhs;
    }
}

impl<E: Exponent> Sum for Laurent<E> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        let mut acc = Self::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

impl<'a, E: Exponent> Sum<&'a Laurent<E>> for Laurent<E> {
    fn sum<I: Iterator<Item = &'a Self>>(iter: I) -> Self {
        let mut acc = Self::zero();
        for p in iter {
            acc += p;
        }
        acc
    }
}

impl<E: Exponent> Product for Laurent<E> {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, p| &acc * &p)
    }
}

impl<E: Exponent> Zero for Laurent<E> {
    fn zero() -> Self {
        Laurent::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<E: Exponent> One for Laurent<E> {
    fn one() -> Self {
        Laurent::one()
    }
}

// ---------------------------------------------------------------------------
// One variable

impl LaurentPoly1 {
    /// The variable `A`.
    pub fn var() -> Self {
        Self::monomial(1, 1)
    }

    /// `c * A^e` with a machine-size coefficient.
    pub fn term(coeff: i64, exp: i64) -> Self {
        Self::monomial(coeff, exp)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Dense coefficient vector after factoring out the lowest power of `A`.
    fn shifted_dense(&self) -> (i64, Vec<BigInt>) {
        let lo = self.min_exp().unwrap_or(0);
        let hi = self.max_exp().unwrap_or(0);
        let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            v[(e - lo) as usize] = c.clone();
        }
        (lo, v)
    }

    /// Exact quotient `self / divisor` in the Laurent ring.
    ///
    /// Both operands are shifted to ordinary polynomials with nonzero constant
    /// term, then divided by schoolbook long division.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, LaurentError> {
        if divisor.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if let Some(inv) = divisor.unit_inverse() {
            return Ok(self * &inv);
        }
        let (plo, mut num) = self.shifted_dense();
        let (qlo, den) = divisor.shifted_dense();
        if num.len() < den.len() {
            return Err(LaurentError::NotDivisible);
        }
        let dl = den.len();
        let lead = &den[dl - 1];
        let qlen = num.len() - dl + 1;
        let mut quot = vec![BigInt::zero(); qlen];
        for k in (0..qlen).rev() {
            let top = &num[k + dl - 1];
            if top.is_zero() {
                continue;
            }
            if !(top % lead).is_zero() {
                return Err(LaurentError::NotDivisible);
            }
            let qc = top / lead;
            for (j, d) in den.iter().enumerate() {
                if !d.is_zero() {
                    num[k + j] -= &qc * d;
                }
            }
            quot[k] = qc;
        }
        if num.iter().any(|c| !c.is_zero()) {
            return Err(LaurentError::NotDivisible);
        }
        let shift = plo - qlo;
        Ok(Self::from_terms(
            quot.into_iter().enumerate().map(|(i, c)| (i as i64 + shift, c)),
        ))
    }

    /// Exact rational value at `A = x`.
    pub fn eval(&self, x: &BigRational) -> Result<BigRational, LaurentError> {
        if x.is_zero() {
            return Err(LaurentError::ZeroAssignment);
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            acc += rational_pow(x, *e) * BigRational::from_integer(c.clone());
        }
        Ok(acc)
    }

    /// `{"variable":"A","terms":[{"exp":e,"coeff":c},...]}`, ascending exponent.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(e, c)| json!({ "exp": e, "coeff": bigint_json(c) }))
            .collect();
        json!({ "variable": "A", "terms": terms })
    }
}

fn rational_pow(x: &BigRational, e: i64) -> BigRational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

pub(crate) fn bigint_json(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(v) => json!(v),
        None => json!(c.to_string()),
    }
}

fn power(var: &str, e: i64) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

/// Joins signed pieces as `x - y + z`.
fn join_signed(pieces: &[(bool, String)]) -> String {
    let mut out = String::new();
    for (i, (neg, body)) in pieces.iter().enumerate() {
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(body);
    }
    out
}

fn coeff_body(abs: &BigInt, monomial: String) -> String {
    if monomial.is_empty() {
        abs.to_string()
    } else if abs.is_one() {
        monomial
    } else {
        format!("{abs}{monomial}")
    }
}

impl fmt::Display for LaurentPoly1 {
    /// Descending powers of `A`: `A^-4 + A^-12 - A^-16`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let pieces: Vec<(bool, String)> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| (c.is_negative(), coeff_body(&c.abs(), power("A", *e))))
            .collect();
        f.write_str(&join_signed(&pieces))
    }
}

impl fmt::Debug for LaurentPoly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly1({self})")
    }
}

impl FromStr for LaurentPoly1 {
    type Err = LaurentError;

    /// Parses the text rendering produced by `Display`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || LaurentError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        if compact == "0" {
            return Ok(Self::zero());
        }
        // split into signed chunks; a '-' directly after '^' belongs to the exponent
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        let mut prev = '\0';
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && prev != '^' {
                if !cur.is_empty() {
                    chunks.push((neg, std::mem::take(&mut cur)));
                } else if prev != '\0' {
                    return Err(err());
                }
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
            prev = ch;
        }
        if cur.is_empty() {
            return Err(err());
        }
        chunks.push((neg, cur));

        let mut p = Self::zero();
        for (neg, chunk) in chunks {
            let (coeff_str, mono) = match chunk.find('A') {
                Some(i) => (&chunk[..i], Some(&chunk[i + 1..])),
                None => (chunk.as_str(), None),
            };
            let mut coeff: BigInt = if coeff_str.is_empty() {
                if mono.is_none() {
                    return Err(err());
                }
                BigInt::one()
            } else {
                coeff_str.parse().map_err(|_| err())?
            };
            let exp = match mono {
                None => 0,
                Some("") => 1,
                Some(rest) => rest
                    .strip_prefix('^')
                    .and_then(|x| x.parse::<i64>().ok())
                    .ok_or_else(err)?,
            };
            if neg {
                coeff = -coeff;
            }
            p.add_term(exp, coeff);
        }
        Ok(p)
    }
}

// ---------------------------------------------------------------------------
// Two variables

impl LaurentPoly2 {
    pub fn var_a() -> Self {
        Self::monomial(1, Exp2::new(1, 0))
    }

    pub fn var_z() -> Self {
        Self::monomial(1, Exp2::new(0, 1))
    }

    /// `c * a^i * z^j` with a machine-size coefficient.
    pub fn term(coeff: i64, a: i64, z: i64) -> Self {
        Self::monomial(coeff, Exp2::new(a, z))
    }

    /// Exact rational value at `(a, z)`.
    pub fn eval(&self, a: &BigRational, z: &BigRational) -> Result<BigRational, LaurentError> {
        if a.is_zero() || z.is_zero() {
            return Err(LaurentError::ZeroAssignment);
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            acc += rational_pow(a, e.a) * rational_pow(z, e.z) * BigRational::from_integer(c.clone());
        }
        Ok(acc)
    }

    /// Smallest power of `z` carrying a nonzero coefficient.
    pub fn min_z_exp(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.z).min()
    }

    /// `{"variables":["a","z"],"terms":[{"a":i,"z":j,"coeff":c},...]}`.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(e, c)| json!({ "a": e.a, "z": e.z, "coeff": bigint_json(c) }))
            .collect();
        json!({ "variables": ["a", "z"], "terms": terms })
    }
}

impl fmt::Display for LaurentPoly2 {
    /// Grouped by ascending power of `z`, each group's `a`-part in descending
    /// order: `(a + a^-1) z^-1 - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut groups: BTreeMap<i64, Vec<(i64, &BigInt)>> = BTreeMap::new();
        for (e, c) in &self.terms {
            groups.entry(e.z).or_default().push((e.a, c));
        }
        let mut pieces = Vec::new();
        for (zexp, mut group) in groups {
            group.sort_by(|x, y| y.0.cmp(&x.0));
            let zpart = power("z", zexp);
            if group.len() == 1 || zexp == 0 {
                for (aexp, c) in group {
                    let mono = [power("a", aexp), zpart.clone()]
                        .into_iter()
                        .filter(|s| !s.is_empty())
                        .collect::<Vec<_>>()
                        .join(" ");
                    let abs = c.abs();
                    let body = if mono.is_empty() {
                        abs.to_string()
                    } else if abs.is_one() {
                        mono
                    } else {
                        format!("{abs} {mono}")
                    };
                    pieces.push((c.is_negative(), body));
                }
            } else {
                let all_neg = group.iter().all(|(_, c)| c.is_negative());
                let inner: Vec<(bool, String)> = group
                    .iter()
                    .map(|(aexp, c)| {
                        let neg = c.is_negative() != all_neg;
                        (neg, coeff_body(&c.abs(), power("a", *aexp)))
                    })
                    .collect();
                pieces.push((all_neg, format!("({}) {zpart}", join_signed(&inner))));
            }
        }
        f.write_str(&join_signed(&pieces))
    }
}

impl fmt::Debug for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly2({self})")
    }
}
