//! The prefix order on trees: lattice operations, intervals and their shapes.
//!
//! Meets are largest common prefixes and joins are term unifications. An
//! interval `[s, t]` factors through the difference forest `t ∖ s`; grafting
//! that forest under a fresh letter `#k` and forgetting letters and planarity
//! gives its shadow, which classifies the interval up to isomorphism.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::series::{fixed_point, TruncatedSeries2};
use crate::tree::{enumerate_trees, is_prefix, prefixes, SyntaxTree};

use SyntaxTree::{Leaf, Node};

pub fn poset_leq(s: &SyntaxTree, t: &SyntaxTree) -> bool {
    is_prefix(s, t)
}

/// Largest common prefix.
pub fn meet(s: &SyntaxTree, t: &SyntaxTree) -> SyntaxTree {
    match (s, t) {
        (Node(a, cs), Node(b, ct)) if a == b => Node(
            a.clone(),
            cs.iter().zip(ct).map(|(x, y)| meet(x, y)).collect(),
        ),
        _ => Leaf,
    }
}

/// Smallest common upper bound, i.e. the unifier of the two trees read as
/// terms whose leaves are distinct variables.
pub fn join(s: &SyntaxTree, t: &SyntaxTree) -> Result<SyntaxTree> {
    match (s, t) {
        (Leaf, x) | (x, Leaf) => Ok(x.clone()),
        (Node(a, cs), Node(b, ct)) if a == b => Ok(Node(
            a.clone(),
            cs.iter()
                .zip(ct)
                .map(|(x, y)| join(x, y))
                .collect::<Result<_>>()?,
        )),
        _ => Err(Error::NoUpperBound),
    }
}

/// A nonempty sequence of trees.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Forest(pub Vec<SyntaxTree>);

impl Forest {
    pub fn trees(&self) -> &[SyntaxTree] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `#k[r₁, …, r_k]`, the forest grafted under a fresh letter of arity `k`.
    pub fn graft(&self) -> SyntaxTree {
        Node(Letter::diamond(self.0.len()), self.0.clone())
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(";"))
    }
}

impl fmt::Debug for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The unique forest `(r₁, …, r_{|s|})` with `t = s ∘ [r₁, …, r_{|s|}]`.
pub fn difference_forest(s: &SyntaxTree, t: &SyntaxTree) -> Result<Forest> {
    fn go(s: &SyntaxTree, t: &SyntaxTree, out: &mut Vec<SyntaxTree>) -> Result<()> {
        match (s, t) {
            (Leaf, _) => {
                out.push(t.clone());
                Ok(())
            }
            (Node(a, cs), Node(b, ct)) if a == b => {
                cs.iter().zip(ct).try_for_each(|(x, y)| go(x, y, out))
            }
            _ => Err(Error::NotComparable),
        }
    }
    let mut out = Vec::new();
    go(s, t, &mut out)?;
    Ok(Forest(out))
}

/// A finite multiset of shadows, kept sorted by canonical rendering so that
/// structural equality is multiset equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Shadow(Vec<Shadow>);

impl Shadow {
    pub fn new(mut parts: Vec<Shadow>) -> Self {
        parts.sort_by_cached_key(ToString::to_string);
        Self(parts)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn parts(&self) -> &[Shadow] {
        &self.0
    }
}

impl fmt::Display for Shadow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, s) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Shadow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The multiset of the shadows of the non-leaf children, recursively.
pub fn shadow(t: &SyntaxTree) -> Result<Shadow> {
    match t {
        Leaf => Err(Error::LeafHasNoShadow),
        Node(_, c) => Ok(Shadow::new(
            c.iter()
                .filter(|s| !s.is_leaf())
                .map(shadow)
                .collect::<Result<_>>()?,
        )),
    }
}

/// `ld({s₁, …, s_k}) = Π (1 + ld(sᵢ))`.
pub fn load(s: &Shadow) -> BigInt {
    s.0.iter().fold(BigInt::one(), |acc, x| acc * (load(x) + 1))
}

/// The shadow of `#k[t ∖ s]` with `k = |s|`, which determines `[s, t]`.
pub fn interval_shadow(s: &SyntaxTree, t: &SyntaxTree) -> Result<Shadow> {
    shadow(&difference_forest(s, t)?.graft())
}

/// `#[s, t]`, computed as the load of the interval shadow.
pub fn interval_count(s: &SyntaxTree, t: &SyntaxTree) -> Result<BigInt> {
    Ok(load(&interval_shadow(s, t)?))
}

/// All `r` with `s ≤ r ≤ t`, in canonical order, built slot by slot from the
/// prefixes of the difference forest.
pub fn interval_elements(s: &SyntaxTree, t: &SyntaxTree) -> Result<Vec<SyntaxTree>> {
    let forest = difference_forest(s, t)?;
    let mut choices: Vec<Vec<SyntaxTree>> = vec![Vec::new()];
    for r in forest.trees() {
        let ps = prefixes(r);
        choices = choices
            .into_iter()
            .flat_map(|prefix| {
                ps.iter().map(move |p| {
                    let mut v = prefix.clone();
                    v.push(p.clone());
                    v
                })
            })
            .collect();
    }
    let mut out = choices
        .iter()
        .map(|f| s.compose_all(f))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

/// Whether `[s, t]` and `[s', t']` are isomorphic posets.
pub fn interval_isomorphic(
    s: &SyntaxTree,
    t: &SyntaxTree,
    s2: &SyntaxTree,
    t2: &SyntaxTree,
) -> Result<bool> {
    Ok(interval_shadow(s, t)? == interval_shadow(s2, t2)?)
}

/// Number of stringy trees of degree `d`: `R(1)·R'(1)^{d−1}` where `R` is the
/// counting polynomial of the alphabet. For `d = 0` this returns 1 (the leaf)
/// by convention.
pub fn stringy_count(alphabet: &Alphabet, d: usize) -> BigInt {
    if d == 0 {
        return BigInt::one();
    }
    let r = alphabet.gen_poly();
    let one = BigInt::one();
    let exp = u32::try_from(d - 1).unwrap_or(u32::MAX);
    r.eval(&one) * num_traits::pow::pow(r.derivative().eval(&one), exp as usize)
}

/// True when `t` covers at most one element of the prefix order.
pub fn is_co_irreducible(t: &SyntaxTree) -> bool {
    t.maximal_nodes().len() <= 1
}

/// The bivariate series `I(q, t)` counting intervals `[s, t]` by `q^{deg s} t^{deg t}`,
/// solving `I = 1 + t·R(I − q·t·R(I)) + q·t·R(I)`.
pub fn interval_series(alphabet: &Alphabet, t_trunc: usize) -> Result<TruncatedSeries2> {
    let r = alphabet.gen_poly();
    let one = TruncatedSeries2::one(t_trunc);
    fixed_point(
        |i| {
            let qtr = i.substitute_into_poly(&r).shift(1, 1);
            let inner = i.sub(&qtr);
            one.add(&inner.substitute_into_poly(&r).shift(0, 1))
                .add(&qtr)
        },
        t_trunc,
    )
}

/// The same series from the system `G = 1 + t·R(G)`, `F = G + q·t·R(F)`.
pub fn interval_series_by_system(alphabet: &Alphabet, t_trunc: usize) -> Result<TruncatedSeries2> {
    let r = alphabet.gen_poly();
    let one = TruncatedSeries2::one(t_trunc);
    let g = fixed_point(
        |g| one.add(&g.substitute_into_poly(&r).shift(0, 1)),
        t_trunc,
    )?;
    fixed_point(|f| g.add(&f.substitute_into_poly(&r).shift(1, 1)), t_trunc)
}

/// The generating series of trees, `T = 1 + t·R(T)`.
pub fn tree_count_series(alphabet: &Alphabet, t_trunc: usize) -> Result<TruncatedSeries2> {
    let r = alphabet.gen_poly();
    let one = TruncatedSeries2::one(t_trunc);
    fixed_point(
        |s| one.add(&s.substitute_into_poly(&r).shift(0, 1)),
        t_trunc,
    )
}

/// Counts comparable pairs `s ≤ t` by degrees, by testing every pair of trees
/// with `deg t ≤ max_degree`. Entry `[a][b]` is the coefficient of `q^a t^b`.
pub fn interval_counts_brute_force(alphabet: &Alphabet, max_degree: usize) -> Vec<Vec<BigInt>> {
    let trees: Vec<Vec<SyntaxTree>> = (0..=max_degree)
        .map(|d| enumerate_trees(alphabet, d))
        .collect();
    let mut table = vec![vec![BigInt::from(0); max_degree + 1]; max_degree + 1];
    for b in 0..=max_degree {
        for a in 0..=b {
            let n = trees[a]
                .iter()
                .flat_map(|s| trees[b].iter().map(move |t| (s, t)))
                .filter(|(s, t)| is_prefix(s, t))
                .count();
            table[a][b] = BigInt::from(n);
        }
    }
    table
}

/// Converts an integer coefficient table to a series, for comparisons.
pub fn series_from_table(table: &[Vec<BigInt>], t_trunc: usize) -> TruncatedSeries2 {
    let mut s = TruncatedSeries2::zero(t_trunc);
    for (a, row) in table.iter().enumerate() {
        for (b, c) in row.iter().enumerate() {
            s = s.add(&TruncatedSeries2::monomial(
                BigRational::from_integer(c.clone()),
                a,
                b,
                t_trunc,
            ));
        }
    }
    s
}
