//! Finite formal sums over a graded universe, with exact integer coefficients.
//!
//! A [`Combination`] is a finitely supported series: the support is stored in
//! canonical element order, and zero coefficients are never stored. [`Poly`] is
//! the univariate integer polynomial in `t` used for counting series and traces.

use std::collections::BTreeMap;
use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

/// Anything that can index a combination. The `Ord` impl is the canonical order.
pub trait Element: Clone + Eq + Hash + Ord + Display + Debug {}

impl<T: Clone + Eq + Hash + Ord + Display + Debug> Element for T {}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Combination<E: Element> {
    terms: BTreeMap<E, BigInt>,
}

impl<E: Element> Default for Combination<E> {
    fn default() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }
}

impl<E: Element> Combination<E> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(x: E) -> Self {
        Self::term(x, BigInt::one())
    }

    pub fn term(x: E, c: BigInt) -> Self {
        let mut out = Self::zero();
        out.add_term(x, c);
        out
    }

    /// The characteristic series of a finite set: every element with coefficient 1.
    pub fn characteristic<I: IntoIterator<Item = E>>(elems: I) -> Self {
        Self {
            terms: elems.into_iter().map(|x| (x, BigInt::one())).collect(),
        }
    }

    /// Sums the given terms, merging repeated elements.
    pub fn from_terms<I: IntoIterator<Item = (E, BigInt)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (x, c) in terms {
            out.add_term(x, c);
        }
        out
    }

    /// Each occurrence of an element counts once.
    pub fn from_multiset<I: IntoIterator<Item = E>>(elems: I) -> Self {
        Self::from_terms(elems.into_iter().map(|x| (x, BigInt::one())))
    }

    pub fn add_term(&mut self, x: E, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(x) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Self, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for (x, d) in &other.terms {
            self.add_term(x.clone(), d * c);
        }
    }

    /// The coefficient `⟨x, self⟩`.
    pub fn coeff(&self, x: &E) -> BigInt {
        self.terms.get(x).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&E, &BigInt)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &E> {
        self.terms.keys()
    }

    pub fn contains(&self, x: &E) -> bool {
        self.terms.contains_key(x)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(x, d)| (x.clone(), d * c)).collect(),
        }
    }

    /// Coefficientwise product.
    pub fn hadamard(&self, other: &Self) -> Self {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        Self {
            terms: small
                .terms
                .iter()
                .filter_map(|(x, c)| large.terms.get(x).map(|d| (x.clone(), c * d)))
                .collect(),
        }
    }

    /// `Σ_x self(x)·other(x)`.
    pub fn scalar_product(&self, other: &Self) -> BigInt {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small
            .terms
            .iter()
            .filter_map(|(x, c)| large.terms.get(x).map(|d| c * d))
            .sum()
    }

    /// Characteristic series of the support.
    pub fn support_series(&self) -> Self {
        Self::characteristic(self.terms.keys().cloned())
    }

    /// Extends a map on elements linearly.
    pub fn apply<F: FnMut(&E) -> Self>(&self, mut f: F) -> Self {
        let mut out = Self::zero();
        for (x, c) in &self.terms {
            out.add_assign_scaled(&f(x), c);
        }
        out
    }

    /// The univariate polynomial whose coefficient of `t^d` sums the
    /// coefficients of the elements of rank `d`.
    pub fn trace<F: Fn(&E) -> usize>(&self, rank: F) -> Poly {
        let mut coeffs: Vec<BigInt> = Vec::new();
        for (x, c) in &self.terms {
            let d = rank(x);
            if coeffs.len() <= d {
                coeffs.resize(d + 1, BigInt::zero());
            }
            coeffs[d] += c;
        }
        Poly::new(coeffs)
    }

    /// `[[coefficient, element], …]`, integers kept as JSON numbers when they fit.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(x, c)| Value::Array(vec![bigint_json(c), Value::String(x.to_string())]))
                .collect(),
        )
    }
}

pub(crate) fn bigint_json(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(c.to_string()),
    }
}

impl<E: Element> FromIterator<(E, BigInt)> for Combination<E> {
    fn from_iter<I: IntoIterator<Item = (E, BigInt)>>(iter: I) -> Self {
        Self::from_terms(iter)
    }
}

impl<E: Element> Add for &Combination<E> {
    type Output = Combination<E>;
    fn add(self, rhs: Self) -> Combination<E> {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, &BigInt::one());
        out
    }
}

impl<E: Element> Sub for &Combination<E> {
    type Output = Combination<E>;
    fn sub(self, rhs: Self) -> Combination<E> {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, &-BigInt::one());
        out
    }
}

impl<E: Element> Neg for &Combination<E> {
    type Output = Combination<E>;
    fn neg(self) -> Combination<E> {
        self.scale(&-BigInt::one())
    }
}

impl<E: Element> Mul<&Combination<E>> for &BigInt {
    type Output = Combination<E>;
    fn mul(self, rhs: &Combination<E>) -> Combination<E> {
        rhs.scale(self)
    }
}

impl<E: Element> Display for Combination<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (x, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match (k, sign) {
                (0, "+") => {}
                (0, _) => write!(f, "-")?,
                _ => write!(f, " {sign} ")?,
            }
            write!(f, "{}*{}", c.abs(), x)?;
        }
        Ok(())
    }
}

impl<E: Element> Debug for Combination<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(self, f)
    }
}

/// A univariate integer polynomial in `t`, coefficients stored by ascending degree.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Degree of the polynomial, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The first `n` coefficients, zero-padded.
    pub fn coefficients(&self, n: usize) -> Vec<BigInt> {
        (0..n).map(|k| self.coeff(k)).collect()
    }

    pub fn raw(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }
}

impl Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            first = false;
            let a = c.abs();
            let mono = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            if k == 0 || !a.is_one() {
                write!(f, "{a}")?;
            }
            write!(f, "{mono}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(self, f)
    }
}
