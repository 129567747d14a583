//! Homogeneous finitely generated operads as element universes.
//!
//! Each concrete operad provides closed forms for its prefix graph `U` and
//! twisted prefix graph `V`. The generic constructions from the generators
//! ([`up_operad`], [`Treelike::v_oracle`], [`v_operad_recursive`]) are kept as
//! independent oracles for them.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::free_graphs::v_free;
use crate::graded_graph::{DualityReport, GradedGraph, GradedGraphPair, ReverseEdges};
use crate::poly::{Combination, Element};
use crate::tree::{trees_by_degree, SyntaxTree};

/// Default degree bound for duality checks.
pub const DUALITY_DEGREE: usize = 5;
/// Default degree bound for slice enumeration.
pub const ENUMERATION_DEGREE: usize = 6;
/// Default degree bound for treelike-expression enumeration.
pub const TREELIKE_BOUND: usize = 6;

/// A word of nonnegative integers, ordered by length and then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<u32>);

impl Word {
    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Digit-string form, available when every letter is at most 9.
    pub fn compact(&self) -> Option<String> {
        self.0
            .iter()
            .map(|&a| char::from_digit(a, 10))
            .collect::<Option<String>>()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `0,1,2,1,0` as well as the compact form `01210`.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidElement(format!("`{s}` is not a word of nonnegative integers"));
        if s.is_empty() {
            return Err(bad());
        }
        let letters = if s.contains(',') {
            s.split(',')
                .map(|p| p.trim().parse::<u32>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).ok_or_else(bad))
                .collect::<Result<Vec<_>>>()?
        };
        Ok(Word(letters))
    }
}

fn word(letters: &[u32]) -> Word {
    Word(letters.to_vec())
}

/// `u` with its `i`-th letter (1-based) replaced by `v`.
fn splice(u: &Word, i: usize, v: impl IntoIterator<Item = u32>) -> Word {
    let mut out = Vec::with_capacity(u.len() + 4);
    out.extend_from_slice(&u.0[..i - 1]);
    out.extend(v);
    out.extend_from_slice(&u.0[i..]);
    Word(out)
}

/// `u` with `ins` inserted after its `i`-th letter (1-based).
fn insert_after(u: &Word, i: usize, ins: &[u32]) -> Word {
    let mut out = Vec::with_capacity(u.len() + ins.len());
    out.extend_from_slice(&u.0[..i]);
    out.extend_from_slice(ins);
    out.extend_from_slice(&u.0[i..]);
    Word(out)
}

/// Which pair of graphs carries the operad's diagonal duality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pair {
    /// The prefix graph against the twisted prefix graph.
    UV,
    /// The prefix graph against itself.
    UU,
}

impl FromStr for Pair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "uv" => Ok(Pair::UV),
            "uu" => Ok(Pair::UU),
            other => Err(Error::InvalidElement(format!(
                "unknown pair `{other}` (expected uv or uu)"
            ))),
        }
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pair::UV => "uv",
            Pair::UU => "uu",
        })
    }
}

/// A homogeneous operad with `O(0)` empty and `O(1) = {1}`, together with its
/// minimal generators and closed forms for its two graphs.
pub trait Operad {
    type Elem: Element;

    fn name(&self) -> String;

    /// Membership predicate.
    fn contains(&self, x: &Self::Elem) -> bool;

    /// Parses the codec without checking membership.
    fn parse_raw(&self, s: &str) -> Result<Self::Elem>;

    fn parse(&self, s: &str) -> Result<Self::Elem> {
        let x = self.parse_raw(s)?;
        if !self.contains(&x) {
            return Err(Error::InvalidElement(format!(
                "{x} is not an element of {}",
                self.name()
            )));
        }
        Ok(x)
    }

    fn arity(&self, x: &Self::Elem) -> usize;

    fn degree(&self, x: &Self::Elem) -> usize;

    fn unit(&self) -> Self::Elem;

    /// `x ∘ᵢ y` for valid inputs and `1 ≤ i ≤ arity(x)`.
    fn compose_unchecked(&self, x: &Self::Elem, i: usize, y: &Self::Elem) -> Self::Elem;

    fn compose(&self, x: &Self::Elem, i: usize, y: &Self::Elem) -> Result<Self::Elem> {
        for z in [x, y] {
            if !self.contains(z) {
                return Err(Error::InvalidElement(format!(
                    "{z} is not an element of {}",
                    self.name()
                )));
            }
        }
        let arity = self.arity(x);
        if i == 0 || i > arity {
            return Err(Error::IndexOutOfRange { index: i, arity });
        }
        Ok(self.compose_unchecked(x, i, y))
    }

    /// The minimal generating set, in canonical order.
    fn generators(&self) -> Vec<Self::Elem>;

    /// Every element of degree `d`, in canonical order.
    fn elements_of_degree(&self, d: usize) -> Vec<Self::Elem>;

    /// Every element of arity `n`, in canonical order.
    fn elements_of_arity(&self, n: usize) -> Vec<Self::Elem>;

    /// Closed form of the prefix graph.
    fn up_explicit(&self, x: &Self::Elem) -> Combination<Self::Elem>;

    /// Closed form of the twisted prefix graph.
    fn v_explicit(&self, x: &Self::Elem) -> Combination<Self::Elem>;

    /// The pair on which the commutator is diagonal.
    fn dual_pair(&self) -> Pair;

    /// The diagonal of the commutator of [`Operad::dual_pair`].
    fn phi(&self, x: &Self::Elem) -> BigInt;
}

/// The associative operad: one element `n` in each arity `n ≥ 1`.
#[derive(Clone, Copy, Debug, Default)]
pub struct As;

impl Operad for As {
    type Elem = u32;

    fn name(&self) -> String {
        "As".into()
    }

    fn contains(&self, x: &u32) -> bool {
        *x >= 1
    }

    fn parse_raw(&self, s: &str) -> Result<u32> {
        s.trim()
            .parse()
            .map_err(|_| Error::InvalidElement(format!("`{}` is not a positive integer", s.trim())))
    }

    fn arity(&self, x: &u32) -> usize {
        *x as usize
    }

    fn degree(&self, x: &u32) -> usize {
        *x as usize - 1
    }

    fn unit(&self) -> u32 {
        1
    }

    fn compose_unchecked(&self, x: &u32, _i: usize, y: &u32) -> u32 {
        x + y - 1
    }

    fn generators(&self) -> Vec<u32> {
        vec![2]
    }

    fn elements_of_degree(&self, d: usize) -> Vec<u32> {
        vec![d as u32 + 1]
    }

    fn elements_of_arity(&self, n: usize) -> Vec<u32> {
        if n == 0 {
            Vec::new()
        } else {
            vec![n as u32]
        }
    }

    fn up_explicit(&self, x: &u32) -> Combination<u32> {
        Combination::term(x + 1, BigInt::from(*x))
    }

    fn v_explicit(&self, x: &u32) -> Combination<u32> {
        Combination::single(x + 1)
    }

    fn dual_pair(&self) -> Pair {
        Pair::UV
    }

    fn phi(&self, _x: &u32) -> BigInt {
        BigInt::from(1)
    }
}

/// The diassociative operad: words over {0, 1} with exactly one 0.
#[derive(Clone, Copy, Debug, Default)]
pub struct Dias;

/// The word `1^k 0 1^l`.
fn dias_word(k: usize, l: usize) -> Word {
    let mut v = vec![1; k + l + 1];
    v[k] = 0;
    Word(v)
}

/// `(k, l)` such that `x = 1^k 0 1^l`.
fn dias_split(x: &Word) -> (usize, usize) {
    let k =
        x.0.iter()
            .position(|&a| a == 0)
            .expect("a Dias word contains a 0");
    (k, x.len() - 1 - k)
}

impl Operad for Dias {
    type Elem = Word;

    fn name(&self) -> String {
        "Dias".into()
    }

    fn contains(&self, x: &Word) -> bool {
        x.0.iter().all(|&a| a <= 1) && x.0.iter().filter(|&&a| a == 0).count() == 1
    }

    fn parse_raw(&self, s: &str) -> Result<Word> {
        s.parse()
    }

    fn arity(&self, x: &Word) -> usize {
        x.len()
    }

    fn degree(&self, x: &Word) -> usize {
        x.len() - 1
    }

    fn unit(&self) -> Word {
        word(&[0])
    }

    fn compose_unchecked(&self, x: &Word, i: usize, y: &Word) -> Word {
        let ui = x.0[i - 1];
        splice(x, i, y.0.iter().map(|&a| a.max(ui)))
    }

    fn generators(&self) -> Vec<Word> {
        vec![word(&[0, 1]), word(&[1, 0])]
    }

    fn elements_of_degree(&self, d: usize) -> Vec<Word> {
        self.elements_of_arity(d + 1)
    }

    fn elements_of_arity(&self, n: usize) -> Vec<Word> {
        (0..n).map(|k| dias_word(k, n - 1 - k)).collect()
    }

    fn up_explicit(&self, x: &Word) -> Combination<Word> {
        let (k, l) = dias_split(x);
        Combination::from_terms([
            (dias_word(k + 1, l), BigInt::from(2 * k + 1)),
            (dias_word(k, l + 1), BigInt::from(2 * l + 1)),
        ])
    }

    fn v_explicit(&self, x: &Word) -> Combination<Word> {
        let (k, l) = dias_split(x);
        Combination::from_multiset([dias_word(k, l + 1), dias_word(k + l + 1, 0)])
    }

    fn dual_pair(&self) -> Pair {
        Pair::UU
    }

    fn phi(&self, x: &Word) -> BigInt {
        let (k, l) = dias_split(x);
        let side = |n: usize| if n == 0 { 1 } else { 8 * n };
        BigInt::from(side(k) + side(l))
    }
}

/// The operad of integer compositions: words over {0, 1} starting with 0.
#[derive(Clone, Copy, Debug, Default)]
pub struct Comp;

impl Operad for Comp {
    type Elem = Word;

    fn name(&self) -> String {
        "Comp".into()
    }

    fn contains(&self, x: &Word) -> bool {
        x.0.first() == Some(&0) && x.0.iter().all(|&a| a <= 1)
    }

    fn parse_raw(&self, s: &str) -> Result<Word> {
        s.parse()
    }

    fn arity(&self, x: &Word) -> usize {
        x.len()
    }

    fn degree(&self, x: &Word) -> usize {
        x.len() - 1
    }

    fn unit(&self) -> Word {
        word(&[0])
    }

    fn compose_unchecked(&self, x: &Word, i: usize, y: &Word) -> Word {
        let flip = x.0[i - 1];
        splice(x, i, y.0.iter().map(|&a| a ^ flip))
    }

    fn generators(&self) -> Vec<Word> {
        vec![word(&[0, 0]), word(&[0, 1])]
    }

    fn elements_of_degree(&self, d: usize) -> Vec<Word> {
        self.elements_of_arity(d + 1)
    }

    fn elements_of_arity(&self, n: usize) -> Vec<Word> {
        if n == 0 {
            return Vec::new();
        }
        (0u64..1 << (n - 1))
            .map(|bits| {
                let mut v = vec![0];
                v.extend((0..n - 1).rev().map(|j| ((bits >> j) & 1) as u32));
                Word(v)
            })
            .collect()
    }

    fn up_explicit(&self, x: &Word) -> Combination<Word> {
        Combination::from_multiset(
            (1..=x.len()).flat_map(|i| [insert_after(x, i, &[0]), insert_after(x, i, &[1])]),
        )
    }

    fn v_explicit(&self, x: &Word) -> Combination<Word> {
        let n = x.len();
        Combination::from_multiset([insert_after(x, n, &[0]), insert_after(x, n, &[1])])
    }

    fn dual_pair(&self) -> Pair {
        Pair::UV
    }

    fn phi(&self, _x: &Word) -> BigInt {
        BigInt::from(2)
    }
}

/// The operad of Motzkin paths: words starting and ending with 0 whose
/// consecutive letters differ by at most 1.
#[derive(Clone, Copy, Debug, Default)]
pub struct Motz;

fn motz_words_of_length(n: usize) -> Vec<Word> {
    fn go(cur: &mut Vec<u32>, n: usize, out: &mut Vec<Word>) {
        let h = *cur.last().unwrap();
        if cur.len() == n {
            if h == 0 {
                out.push(Word(cur.clone()));
            }
            return;
        }
        let remaining = n - cur.len() - 1;
        for next in [h.wrapping_sub(1), h, h + 1] {
            if next == u32::MAX || next as usize > remaining {
                continue;
            }
            cur.push(next);
            go(cur, n, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(&mut vec![0], n, &mut out);
    }
    out.sort();
    out
}

fn motz_words_of_degree(d: usize) -> Vec<Word> {
    // Flat steps and down steps each add 1 to the degree; every pending up
    // step still owes a down step.
    fn go(cur: &mut Vec<u32>, deg: usize, d: usize, out: &mut Vec<Word>) {
        let h = *cur.last().unwrap() as usize;
        if h == 0 && deg == d {
            out.push(Word(cur.clone()));
            return;
        }
        if deg + h < d {
            cur.push(h as u32);
            go(cur, deg + 1, d, out);
            cur.pop();
            cur.push(h as u32 + 1);
            go(cur, deg, d, out);
            cur.pop();
        }
        if h > 0 {
            cur.push(h as u32 - 1);
            go(cur, deg + 1, d, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut vec![0], 0, d, &mut out);
    out.sort();
    out
}

impl Motz {
    fn ascents(x: &Word) -> usize {
        x.0.windows(2).filter(|w| w[1] == w[0] + 1).count()
    }

    /// The sum shared by both closed forms, restricted to positions in `keep`.
    fn insertions(x: &Word, keep: impl Fn(usize) -> bool) -> Combination<Word> {
        Combination::from_multiset((1..=x.len()).filter(|&i| keep(i)).flat_map(|i| {
            let a = x.0[i - 1];
            [insert_after(x, i, &[a]), insert_after(x, i, &[a + 1, a])]
        }))
    }
}

impl Operad for Motz {
    type Elem = Word;

    fn name(&self) -> String {
        "Motz".into()
    }

    fn contains(&self, x: &Word) -> bool {
        x.0.first() == Some(&0)
            && x.0.last() == Some(&0)
            && x.0.windows(2).all(|w| w[0].abs_diff(w[1]) <= 1)
    }

    fn parse_raw(&self, s: &str) -> Result<Word> {
        s.parse()
    }

    fn arity(&self, x: &Word) -> usize {
        x.len()
    }

    fn degree(&self, x: &Word) -> usize {
        x.len() - 1 - Self::ascents(x)
    }

    fn unit(&self) -> Word {
        word(&[0])
    }

    fn compose_unchecked(&self, x: &Word, i: usize, y: &Word) -> Word {
        let ui = x.0[i - 1];
        splice(x, i, y.0.iter().map(|&a| a + ui))
    }

    fn generators(&self) -> Vec<Word> {
        vec![word(&[0, 0]), word(&[0, 1, 0])]
    }

    fn elements_of_degree(&self, d: usize) -> Vec<Word> {
        motz_words_of_degree(d)
    }

    fn elements_of_arity(&self, n: usize) -> Vec<Word> {
        motz_words_of_length(n)
    }

    fn up_explicit(&self, x: &Word) -> Combination<Word> {
        Self::insertions(x, |_| true)
    }

    fn v_explicit(&self, x: &Word) -> Combination<Word> {
        let n = x.len();
        Self::insertions(x, |i| i == n || x.0[i - 1] > x.0[i])
    }

    fn dual_pair(&self) -> Pair {
        Pair::UV
    }

    fn phi(&self, x: &Word) -> BigInt {
        BigInt::from(2 + x.0.windows(2).filter(|w| w[0] != w[1]).count())
    }
}

/// The operad of `m`-trees: words with `u₁ = 0` and `u_{i+1} ≤ uᵢ + m`.
#[derive(Clone, Copy, Debug)]
pub struct FCat {
    pub m: u32,
}

impl FCat {
    pub fn new(m: u32) -> Self {
        Self { m }
    }
}

impl Operad for FCat {
    type Elem = Word;

    fn name(&self) -> String {
        format!("FCat({})", self.m)
    }

    fn contains(&self, x: &Word) -> bool {
        x.0.first() == Some(&0) && x.0.windows(2).all(|w| w[1] <= w[0] + self.m)
    }

    fn parse_raw(&self, s: &str) -> Result<Word> {
        s.parse()
    }

    fn arity(&self, x: &Word) -> usize {
        x.len()
    }

    fn degree(&self, x: &Word) -> usize {
        x.len() - 1
    }

    fn unit(&self) -> Word {
        word(&[0])
    }

    fn compose_unchecked(&self, x: &Word, i: usize, y: &Word) -> Word {
        let ui = x.0[i - 1];
        splice(x, i, y.0.iter().map(|&a| a + ui))
    }

    fn generators(&self) -> Vec<Word> {
        (0..=self.m).map(|a| word(&[0, a])).collect()
    }

    fn elements_of_degree(&self, d: usize) -> Vec<Word> {
        self.elements_of_arity(d + 1)
    }

    fn elements_of_arity(&self, n: usize) -> Vec<Word> {
        fn go(cur: &mut Vec<u32>, n: usize, m: u32, out: &mut Vec<Word>) {
            if cur.len() == n {
                out.push(Word(cur.clone()));
                return;
            }
            let top = cur.last().unwrap() + m;
            for a in 0..=top {
                cur.push(a);
                go(cur, n, m, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            go(&mut vec![0], n, self.m, &mut out);
        }
        out
    }

    fn up_explicit(&self, x: &Word) -> Combination<Word> {
        Combination::from_multiset((1..=x.len()).flat_map(|i| {
            let ui = x.0[i - 1];
            (0..=self.m).map(move |a| insert_after(x, i, &[ui + a]))
        }))
    }

    fn v_explicit(&self, x: &Word) -> Combination<Word> {
        let n = x.len();
        let top = x.0[n - 1] + self.m;
        Combination::from_multiset((0..=top).map(|a| insert_after(x, n, &[a])))
    }

    fn dual_pair(&self) -> Pair {
        Pair::UV
    }

    fn phi(&self, _x: &Word) -> BigInt {
        BigInt::from(self.m + 1)
    }
}

/// An operad selector: `as`, `dias`, `comp`, `motz` or `fcat:<m>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperadSelector {
    As,
    Dias,
    Comp,
    Motz,
    FCat(u32),
}

impl FromStr for OperadSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "as" => Ok(Self::As),
            "dias" => Ok(Self::Dias),
            "comp" => Ok(Self::Comp),
            "motz" => Ok(Self::Motz),
            _ => t
                .strip_prefix("fcat:")
                .and_then(|m| m.parse().ok())
                .map(Self::FCat)
                .ok_or_else(|| Error::UnknownOperad(s.to_string())),
        }
    }
}

impl fmt::Display for OperadSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::As => f.write_str("as"),
            Self::Dias => f.write_str("dias"),
            Self::Comp => f.write_str("comp"),
            Self::Motz => f.write_str("motz"),
            Self::FCat(m) => write!(f, "fcat:{m}"),
        }
    }
}

/// Binds `$op` to the operad named by an [`OperadSelector`] and evaluates
/// `$body`, which may be generic over the operad.
#[macro_export]
macro_rules! with_operad {
    ($sel:expr, $op:ident => $body:expr) => {
        match $sel {
            $crate::operads::OperadSelector::As => {
                let $op = &$crate::operads::As;
                $body
            }
            $crate::operads::OperadSelector::Dias => {
                let $op = &$crate::operads::Dias;
                $body
            }
            $crate::operads::OperadSelector::Comp => {
                let $op = &$crate::operads::Comp;
                $body
            }
            $crate::operads::OperadSelector::Motz => {
                let $op = &$crate::operads::Motz;
                $body
            }
            $crate::operads::OperadSelector::FCat(m) => {
                let $op = &$crate::operads::FCat::new(m);
                $body
            }
        }
    };
}

/// `U(x) = Σ_{a, i} x ∘ᵢ a` computed from the generators.
pub fn up_operad<O: Operad>(op: &O, x: &O::Elem) -> Combination<O::Elem> {
    let gens = op.generators();
    Combination::from_multiset(
        (1..=op.arity(x)).flat_map(|i| gens.iter().map(move |a| op.compose_unchecked(x, i, a))),
    )
}

/// The full composition `x ∘ [y₁, …, y_k]`.
pub fn full_compose<O: Operad>(op: &O, x: &O::Elem, ys: &[O::Elem]) -> O::Elem {
    debug_assert_eq!(ys.len(), op.arity(x));
    // Composing from the last input keeps the earlier indices valid.
    ys.iter().enumerate().rev().fold(x.clone(), |acc, (k, y)| {
        op.compose_unchecked(&acc, k + 1, y)
    })
}

/// Every tuple `(z₁, …, z_k)` with `x ∘ [z₁, …, z_k] = target`, by exhaustive
/// search over the arities and degrees that can add up to `target`.
pub fn preimages<O: Operad>(op: &O, x: &O::Elem, target: &O::Elem) -> Vec<Vec<O::Elem>> {
    let k = op.arity(x);
    let n = op.arity(target);
    let (dx, dt) = (op.degree(x), op.degree(target));
    if n < k || dt < dx {
        return Vec::new();
    }
    let budget = dt - dx;
    let mut by_arity: HashMap<usize, Vec<(O::Elem, usize)>> = HashMap::new();
    for a in 1..=n + 1 - k {
        let elems = op.elements_of_arity(a);
        by_arity.insert(
            a,
            elems
                .into_iter()
                .map(|e| {
                    let d = op.degree(&e);
                    (e, d)
                })
                .collect(),
        );
    }

    struct Search<'s, O: Operad> {
        op: &'s O,
        x: &'s O::Elem,
        target: &'s O::Elem,
        k: usize,
        by_arity: &'s HashMap<usize, Vec<(O::Elem, usize)>>,
        out: Vec<Vec<O::Elem>>,
    }
    impl<O: Operad> Search<'_, O> {
        fn go(&mut self, cur: &mut Vec<O::Elem>, arity_left: usize, degree_left: usize) {
            let slots = self.k - cur.len();
            if slots == 0 {
                if arity_left == 0
                    && degree_left == 0
                    && full_compose(self.op, self.x, cur) == *self.target
                {
                    self.out.push(cur.clone());
                }
                return;
            }
            for a in 1..=arity_left + 1 - slots {
                for (z, dz) in &self.by_arity[&a] {
                    if *dz > degree_left {
                        continue;
                    }
                    cur.push(z.clone());
                    self.go(cur, arity_left - a, degree_left - dz);
                    cur.pop();
                }
            }
        }
    }
    let mut s = Search {
        op,
        x,
        target,
        k,
        by_arity: &by_arity,
        out: Vec::new(),
    };
    s.go(&mut Vec::with_capacity(k), n, budget);
    s.out
}

/// Every decomposition `x = b ∘ [y₁, …, y_k]` with `b` a generator.
pub fn decompositions<O: Operad>(op: &O, x: &O::Elem) -> Vec<(O::Elem, Vec<O::Elem>)> {
    op.generators()
        .into_iter()
        .flat_map(|b| {
            preimages(op, &b, x)
                .into_iter()
                .map(move |ys| (b.clone(), ys))
        })
        .collect()
}

/// The twisted prefix graph through the recursive map `V′`, whose support is
/// `V(x)`. Independent of treelike expressions: decompositions are found by
/// exhaustive search.
pub fn v_operad_recursive<O: Operad>(op: &O, x: &O::Elem) -> Combination<O::Elem> {
    let mut memo = HashMap::new();
    Combination::characteristic(vprime_support(op, x, &mut memo))
}

fn vprime_support<O: Operad>(
    op: &O,
    x: &O::Elem,
    memo: &mut HashMap<O::Elem, BTreeSet<O::Elem>>,
) -> BTreeSet<O::Elem> {
    if let Some(s) = memo.get(x) {
        return s.clone();
    }
    let mut out: BTreeSet<O::Elem> = op
        .generators()
        .iter()
        .map(|a| op.compose_unchecked(a, 1, x))
        .collect();
    for (b, ys) in decompositions(op, x) {
        for j in 1..ys.len() {
            for w in vprime_support(op, &ys[j], memo) {
                let mut zs = ys.clone();
                zs[j] = w;
                out.insert(full_compose(op, &b, &zs));
            }
        }
    }
    memo.insert(x.clone(), out.clone());
    out
}

type ExpressionTable<E> = Arc<HashMap<E, Vec<SyntaxTree>>>;

/// Treelike expressions of operad elements: trees over the generators, with
/// per-degree tables computed once.
pub struct Treelike<'a, O: Operad> {
    op: &'a O,
    alphabet: Alphabet,
    by_name: HashMap<String, O::Elem>,
    bound: usize,
    tables: Mutex<HashMap<usize, ExpressionTable<O::Elem>>>,
}

/// The letter name standing for a generator: `g` followed by its rendering.
pub fn generator_letter_name(rendering: &str) -> String {
    format!("g{}", rendering.replace(',', "_"))
}

impl<'a, O: Operad> Treelike<'a, O> {
    pub fn new(op: &'a O) -> Self {
        Self::with_bound(op, TREELIKE_BOUND)
    }

    pub fn with_bound(op: &'a O, bound: usize) -> Self {
        let mut letters = Vec::new();
        let mut by_name = HashMap::new();
        for g in op.generators() {
            let name = generator_letter_name(&g.to_string());
            letters.push(
                Letter::new(&name, op.arity(&g)).expect("generator names are valid letter names"),
            );
            by_name.insert(name, g);
        }
        Self {
            op,
            alphabet: Alphabet::new(letters).expect("generators are distinct"),
            by_name,
            bound,
            tables: Mutex::new(HashMap::new()),
        }
    }

    /// The generator alphabet.
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// The evaluation morphism from trees over the generators to the operad.
    pub fn ev(&self, t: &SyntaxTree) -> O::Elem {
        match t {
            SyntaxTree::Leaf => self.op.unit(),
            SyntaxTree::Node(a, children) => {
                let g = &self.by_name[a.name()];
                let ys: Vec<O::Elem> = children.iter().map(|c| self.ev(c)).collect();
                full_compose(self.op, g, &ys)
            }
        }
    }

    /// All trees of degree `d` grouped by their evaluation.
    pub fn table(&self, d: usize) -> Result<Arc<HashMap<O::Elem, Vec<SyntaxTree>>>> {
        if d > self.bound {
            return Err(Error::OracleBound {
                degree: d,
                bound: self.bound,
            });
        }
        let mut tables = self.tables.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(t) = tables.get(&d) {
            return Ok(t.clone());
        }
        let mut map: HashMap<O::Elem, Vec<SyntaxTree>> = HashMap::new();
        let level = trees_by_degree(&self.alphabet, d).pop().unwrap_or_default();
        for t in level {
            map.entry(self.ev(&t)).or_default().push(t);
        }
        for v in map.values_mut() {
            v.sort();
        }
        let t = Arc::new(map);
        tables.insert(d, t.clone());
        Ok(t)
    }

    /// Every tree over the generators evaluating to `x`, in canonical order.
    pub fn expressions(&self, x: &O::Elem) -> Result<Vec<SyntaxTree>> {
        Ok(self
            .table(self.op.degree(x))?
            .get(x)
            .cloned()
            .unwrap_or_default())
    }

    /// `V(x)` from its definition: the evaluations of the free twisted prefix
    /// graph applied to every treelike expression of `x`.
    pub fn v_oracle(&self, x: &O::Elem) -> Result<Combination<O::Elem>> {
        let mut out = BTreeSet::new();
        for t in self.expressions(x)? {
            for s in v_free(&t, &self.alphabet).support() {
                out.insert(self.ev(s));
            }
        }
        Ok(Combination::characteristic(out))
    }

    /// Trees of degree `d` whose evaluation has another degree; empty exactly
    /// when the grading is consistent at `d`.
    pub fn homogeneity_violations(&self, d: usize) -> Result<Vec<(SyntaxTree, O::Elem)>> {
        let table = self.table(d)?;
        let mut bad: Vec<(SyntaxTree, O::Elem)> = table
            .iter()
            .filter(|(x, _)| self.op.degree(x) != d)
            .flat_map(|(x, ts)| ts.iter().map(move |t| (t.clone(), x.clone())))
            .collect();
        bad.sort();
        Ok(bad)
    }

    /// Elements of degree `d` with no treelike expression.
    pub fn ungenerated(&self, d: usize) -> Result<Vec<O::Elem>> {
        let table = self.table(d)?;
        Ok(self
            .op
            .elements_of_degree(d)
            .into_iter()
            .filter(|x| !table.contains_key(x))
            .collect())
    }
}

/// Treelike expressions of `x` with the default bound.
pub fn treelike_expressions<O: Operad>(op: &O, x: &O::Elem) -> Result<Vec<SyntaxTree>> {
    Treelike::new(op).expressions(x)
}

/// `V(x)` through treelike expressions, with the default bound.
pub fn v_operad_oracle<O: Operad>(op: &O, x: &O::Elem) -> Result<Combination<O::Elem>> {
    Treelike::new(op).v_oracle(x)
}

/// The prefix graph of an operad, from its closed form.
pub struct PrefixGraph<'a, O: Operad> {
    pub op: &'a O,
    rev: ReverseEdges<O::Elem>,
}

/// The twisted prefix graph of an operad, from its closed form.
pub struct TwistedGraph<'a, O: Operad> {
    pub op: &'a O,
    rev: ReverseEdges<O::Elem>,
}

impl<'a, O: Operad> PrefixGraph<'a, O> {
    pub fn new(op: &'a O) -> Self {
        Self {
            op,
            rev: ReverseEdges::default(),
        }
    }
}

impl<'a, O: Operad> TwistedGraph<'a, O> {
    pub fn new(op: &'a O) -> Self {
        Self {
            op,
            rev: ReverseEdges::default(),
        }
    }
}

impl<O: Operad> GradedGraph for PrefixGraph<'_, O> {
    type Elem = O::Elem;

    fn rank(&self, x: &O::Elem) -> usize {
        self.op.degree(x)
    }

    fn root(&self) -> O::Elem {
        self.op.unit()
    }

    fn elements(&self, r: usize) -> Vec<O::Elem> {
        self.op.elements_of_degree(r)
    }

    fn up(&self, x: &O::Elem) -> Combination<O::Elem> {
        self.op.up_explicit(x)
    }

    fn down(&self, x: &O::Elem) -> Combination<O::Elem> {
        self.rev.down(self, x)
    }
}

impl<O: Operad> GradedGraph for TwistedGraph<'_, O> {
    type Elem = O::Elem;

    fn rank(&self, x: &O::Elem) -> usize {
        self.op.degree(x)
    }

    fn root(&self) -> O::Elem {
        self.op.unit()
    }

    fn elements(&self, r: usize) -> Vec<O::Elem> {
        self.op.elements_of_degree(r)
    }

    fn up(&self, x: &O::Elem) -> Combination<O::Elem> {
        self.op.v_explicit(x)
    }

    fn down(&self, x: &O::Elem) -> Combination<O::Elem> {
        self.rev.down(self, x)
    }
}

/// Checks the duality of `pair` up to degree `d`: against the declared `φ`
/// when `pair` is the operad's dual pair, and against any diagonal otherwise.
pub fn check_operad_duality<O: Operad>(op: &O, pair: Pair, d: usize) -> DualityReport<O::Elem> {
    let u = PrefixGraph::new(op);
    let v = TwistedGraph::new(op);
    let (declared, discovered) = match pair {
        Pair::UV => {
            let p = GradedGraphPair::new(&u, &v);
            if pair == op.dual_pair() {
                (Some(p.check_phi_diagonal(|x| op.phi(x), d)), None)
            } else {
                (None, Some(p.discover_phi(d)))
            }
        }
        Pair::UU => {
            let p = GradedGraphPair::new(&u, &u);
            if pair == op.dual_pair() {
                (Some(p.check_phi_diagonal(|x| op.phi(x), d)), None)
            } else {
                (None, Some(p.discover_phi(d)))
            }
        }
    };
    if let Some(report) = declared {
        return report;
    }
    match discovered.expect("one branch ran") {
        Ok(table) => DualityReport {
            checked: table.len(),
            failure: None,
        },
        Err(w) => DualityReport {
            checked: (0..op.degree(&w.element))
                .map(|r| op.elements_of_degree(r).len())
                .sum::<usize>()
                + op.elements_of_degree(op.degree(&w.element))
                    .iter()
                    .position(|y| *y == w.element)
                    .map_or(0, |p| p + 1),
            failure: Some(w),
        },
    }
}

/// Reads off the diagonal of the commutator of `pair` up to degree `d`, or
/// returns the first element where the commutator is not diagonal.
pub fn discover_operad_phi<O: Operad>(
    op: &O,
    pair: Pair,
    d: usize,
) -> Result<Vec<(O::Elem, BigInt)>> {
    let u = PrefixGraph::new(op);
    let v = TwistedGraph::new(op);
    let found = match pair {
        Pair::UV => GradedGraphPair::new(&u, &v).discover_phi(d),
        Pair::UU => GradedGraphPair::new(&u, &u).discover_phi(d),
    };
    found.map_err(|w| Error::NotDiagonal {
        element: w.element.to_string(),
        commutator: w.commutator.to_string(),
    })
}

/// `φ(x)` for the given pair. The declared pair uses the closed form; any
/// other pair is computed from the commutator up to [`DUALITY_DEGREE`], and
/// yields [`Error::NotDiagonal`] with the first witness if it is not diagonal.
pub fn phi_operad<O: Operad>(op: &O, pair: Pair, x: &O::Elem) -> Result<BigInt> {
    if pair == op.dual_pair() {
        return Ok(op.phi(x));
    }
    let d = op.degree(x);
    if d > DUALITY_DEGREE {
        return Err(Error::OracleBound {
            degree: d,
            bound: DUALITY_DEGREE,
        });
    }
    let table = discover_operad_phi(op, pair, DUALITY_DEGREE)?;
    Ok(table
        .into_iter()
        .find(|(y, _)| y == x)
        .map(|(_, c)| c)
        .unwrap_or_else(BigInt::zero))
}

/// The minimal generating set up to arity `arity_max`: at each arity, the
/// elements that are not compositions of smaller generators.
pub fn minimal_generators<O: Operad>(op: &O, arity_max: usize) -> Vec<O::Elem> {
    let mut gens: Vec<O::Elem> = Vec::new();
    for n in 2..=arity_max {
        let mut reachable = BTreeSet::new();
        for g in &gens {
            let ag = op.arity(g);
            if ag >= n {
                continue;
            }
            let k = n + 1 - ag;
            for x in op.elements_of_arity(k) {
                for i in 1..=k {
                    reachable.insert(op.compose_unchecked(&x, i, g));
                }
            }
        }
        gens.extend(
            op.elements_of_arity(n)
                .into_iter()
                .filter(|y| !reachable.contains(y)),
        );
    }
    gens.sort();
    gens
}

/// `x ≤ y` in the prefix order, decided by reachability in the prefix graph.
pub fn operad_poset_leq<O: Operad>(op: &O, x: &O::Elem, y: &O::Elem) -> bool {
    let (dx, dy) = (op.degree(x), op.degree(y));
    if dx > dy {
        return false;
    }
    let mut layer: BTreeSet<O::Elem> = BTreeSet::from([x.clone()]);
    for _ in dx..dy {
        layer = layer
            .iter()
            .flat_map(|z| op.up_explicit(z).support().cloned().collect::<Vec<_>>())
            .collect();
    }
    layer.contains(y)
}

/// `x ≤ y` decided by searching for `z₁, …, z_k` with `y = x ∘ [z₁, …, z_k]`.
pub fn operad_poset_leq_by_composition<O: Operad>(op: &O, x: &O::Elem, y: &O::Elem) -> bool {
    !preimages(op, x, y).is_empty()
}
