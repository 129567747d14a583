//! Graded graphs given by an up operator, and the machinery built on them:
//! adjoints, path counts, hook series and duality commutators.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::poly::{bigint_json, Combination, Element, Poly};

/// A graded graph: a ranked universe and a linear up operator sending rank `r`
/// to rank `r + 1`. Edge weights are the coefficients of `up`.
pub trait GradedGraph {
    type Elem: Element;

    fn rank(&self, x: &Self::Elem) -> usize;

    /// The unique element of rank 0.
    fn root(&self) -> Self::Elem;

    /// The elements of rank `r`, in canonical order.
    fn elements(&self, r: usize) -> Vec<Self::Elem>;

    fn up(&self, x: &Self::Elem) -> Combination<Self::Elem>;

    /// The adjoint `U★(x) = Σ_y ⟨x, U(y)⟩ y`. The default enumerates the slice
    /// below `x`; implementations with a direct description override it.
    fn down(&self, x: &Self::Elem) -> Combination<Self::Elem> {
        up_adjoint(self, x)
    }
}

/// The adjoint computed from its definition, by enumerating the rank below `x`.
pub fn up_adjoint<G: GradedGraph + ?Sized>(g: &G, x: &G::Elem) -> Combination<G::Elem> {
    let r = g.rank(x);
    if r == 0 {
        return Combination::zero();
    }
    g.elements(r - 1)
        .into_iter()
        .filter_map(|y| {
            let c = g.up(&y).coeff(x);
            (!c.is_zero()).then_some((y, c))
        })
        .collect()
}

// Each element of one rank mapped to its weighted predecessors.
type Slice<E> = Arc<HashMap<E, Combination<E>>>;

/// Write-once reverse-edge tables, one per rank, built on first use.
pub struct ReverseEdges<E: Element> {
    tables: Mutex<HashMap<usize, Slice<E>>>,
}

impl<E: Element> Default for ReverseEdges<E> {
    fn default() -> Self {
        Self {
            tables: Mutex::new(HashMap::new()),
        }
    }
}

impl<E: Element> ReverseEdges<E> {
    pub fn down<G: GradedGraph<Elem = E> + ?Sized>(&self, g: &G, x: &E) -> Combination<E> {
        let r = g.rank(x);
        if r == 0 {
            return Combination::zero();
        }
        let table = {
            let mut tables = self.tables.lock().unwrap_or_else(|e| e.into_inner());
            tables
                .entry(r)
                .or_insert_with(|| {
                    let mut rev: HashMap<E, Combination<E>> = HashMap::new();
                    for y in g.elements(r - 1) {
                        for (z, c) in g.up(&y).iter() {
                            rev.entry(z.clone())
                                .or_default()
                                .add_term(y.clone(), c.clone());
                        }
                    }
                    Arc::new(rev)
                })
                .clone()
        };
        table.get(x).cloned().unwrap_or_default()
    }
}

/// Sum over all paths from `x` to `y` of the product of edge weights.
pub fn path_weight_sum<G: GradedGraph + ?Sized>(g: &G, x: &G::Elem, y: &G::Elem) -> BigInt {
    let (rx, ry) = (g.rank(x), g.rank(y));
    if rx > ry {
        return BigInt::zero();
    }
    let mut layer = Combination::single(x.clone());
    for _ in rx..ry {
        layer = layer.apply(|z| g.up(z));
    }
    layer.coeff(y)
}

/// The hook series up to rank `d`, from `h(root) = 1` and `h(x) = ⟨U★(x), h⟩`.
pub fn hook_series_up_to<G: GradedGraph + ?Sized>(g: &G, d: usize) -> Combination<G::Elem> {
    hook_table(g, d).into_iter().collect()
}

/// The hook coefficients as a hash table (same values as [`hook_series_up_to`]).
pub fn hook_table<G: GradedGraph + ?Sized>(g: &G, d: usize) -> HashMap<G::Elem, BigInt> {
    let mut h: HashMap<G::Elem, BigInt> = HashMap::new();
    h.insert(g.root(), BigInt::one());
    for r in 1..=d {
        for x in g.elements(r) {
            let v: BigInt = g
                .down(&x)
                .iter()
                .map(|(y, c)| c * h.get(y).cloned().unwrap_or_default())
                .sum();
            h.insert(x, v);
        }
    }
    h
}

/// `Σ_{r ≤ d} U^r(root)`, the truncation of `(I − U)^{-1}(root)`. Each
/// coefficient is the weighted number of paths from the root.
pub fn forward_path_series<G: GradedGraph + ?Sized>(g: &G, d: usize) -> Combination<G::Elem> {
    let mut layer = Combination::single(g.root());
    let mut total = layer.clone();
    for _ in 0..d {
        layer = layer.apply(|z| g.up(z));
        total.add_assign_scaled(&layer, &BigInt::one());
    }
    total
}

/// The initial paths series truncated at `t^d`: the trace of the hook series.
pub fn initial_paths_series<G: GradedGraph + ?Sized>(g: &G, d: usize) -> Poly {
    let h = hook_table(g, d);
    let mut coeffs = vec![BigInt::zero(); d + 1];
    for (x, c) in h {
        coeffs[g.rank(&x)] += c;
    }
    Poly::new(coeffs)
}

/// Two graded graphs on the same ranked universe with the same root.
pub struct GradedGraphPair<'a, U, V> {
    pub u: &'a U,
    pub v: &'a V,
}

impl<'a, E, U, V> GradedGraphPair<'a, U, V>
where
    E: Element,
    U: GradedGraph<Elem = E>,
    V: GradedGraph<Elem = E>,
{
    pub fn new(u: &'a U, v: &'a V) -> Self {
        assert!(
            u.root() == v.root(),
            "the graphs of a pair share their root"
        );
        Self { u, v }
    }

    /// Coefficientwise product of the two hook series.
    pub fn returning_hook_series(&self, d: usize) -> Combination<E> {
        hook_series_up_to(self.u, d).hadamard(&hook_series_up_to(self.v, d))
    }

    /// `(V★U − UV★)(x)`.
    pub fn commutator(&self, x: &E) -> Combination<E> {
        let vu = self.u.up(x).apply(|y| self.v.down(y));
        let uv = self.v.down(x).apply(|y| self.u.up(y));
        &vu - &uv
    }

    /// Checks `(V★U − UV★)(x) = φ(x)·x` for every `x` of rank at most `d`.
    pub fn check_phi_diagonal<F: Fn(&E) -> BigInt>(&self, phi: F, d: usize) -> DualityReport<E> {
        let mut checked = 0;
        for r in 0..=d {
            for x in self.u.elements(r) {
                let got = self.commutator(&x);
                let expected = Combination::term(x.clone(), phi(&x));
                checked += 1;
                if got != expected {
                    return DualityReport {
                        checked,
                        failure: Some(Witness {
                            element: x,
                            commutator: got,
                            expected,
                        }),
                    };
                }
            }
        }
        DualityReport {
            checked,
            failure: None,
        }
    }

    /// Reads off the diagonal of the commutator, or returns the first element
    /// where it is not a multiple of the element itself.
    pub fn discover_phi(&self, d: usize) -> std::result::Result<Vec<(E, BigInt)>, Witness<E>> {
        let mut table = Vec::new();
        for r in 0..=d {
            for x in self.u.elements(r) {
                let got = self.commutator(&x);
                let c = got.coeff(&x);
                if got.len() > 1 || (got.len() == 1 && c.is_zero()) {
                    return Err(Witness {
                        element: x.clone(),
                        expected: Combination::term(x, c),
                        commutator: got,
                    });
                }
                table.push((x, c));
            }
        }
        Ok(table)
    }

    /// Checks `V★Uⁿ(x) = UⁿV★(x) + Σ_{k₁+k₂=n−1} U^{k₁} φ U^{k₂}(x)` on each sample.
    pub fn check_iterated_identity<F: Fn(&E) -> BigInt>(
        &self,
        phi: F,
        n: usize,
        sample: &[E],
    ) -> DualityReport<E> {
        let up_n = |c: &Combination<E>, k: usize| {
            (0..k).fold(c.clone(), |acc, _| acc.apply(|y| self.u.up(y)))
        };
        let phi_map = |c: &Combination<E>| c.apply(|y| Combination::term(y.clone(), phi(y)));
        for (checked, x) in sample.iter().enumerate() {
            let start = Combination::single(x.clone());
            let lhs = up_n(&start, n).apply(|y| self.v.down(y));
            let mut rhs = up_n(&self.v.down(x), n);
            for k2 in 0..n {
                let k1 = n - 1 - k2;
                rhs = &rhs + &up_n(&phi_map(&up_n(&start, k2)), k1);
            }
            if lhs != rhs {
                return DualityReport {
                    checked: checked + 1,
                    failure: Some(Witness {
                        element: x.clone(),
                        commutator: lhs,
                        expected: rhs,
                    }),
                };
            }
        }
        DualityReport {
            checked: sample.len(),
            failure: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness<E: Element> {
    pub element: E,
    pub commutator: Combination<E>,
    pub expected: Combination<E>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityReport<E: Element> {
    /// Number of elements examined, including a failing one.
    pub checked: usize,
    pub failure: Option<Witness<E>>,
}

impl<E: Element> DualityReport<E> {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Structural facts about a graph restricted to ranks `≤ d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Structure {
    /// `up` always lands one rank higher.
    pub graded: bool,
    /// All edge weights are 1.
    pub simple: bool,
    /// Every element is reached from the root.
    pub rooted: bool,
    /// All weights are positive integers.
    pub natural: bool,
}

pub fn structure<G: GradedGraph + ?Sized>(g: &G, d: usize) -> Structure {
    let mut s = Structure {
        graded: true,
        simple: true,
        rooted: true,
        natural: true,
    };
    let mut reached: std::collections::HashSet<G::Elem> = [g.root()].into_iter().collect();
    for r in 0..=d {
        for x in g.elements(r) {
            if !reached.contains(&x) {
                s.rooted = false;
            }
            if r == d {
                continue;
            }
            for (y, c) in g.up(&x).iter() {
                s.graded &= g.rank(y) == r + 1;
                s.simple &= c.is_one();
                s.natural &= *c > BigInt::zero();
                reached.insert(y.clone());
            }
        }
    }
    s
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz rendering of ranks `lo..=hi`: one same-rank subgraph per rank,
/// edge labels for weights other than 1.
pub fn to_dot<G: GradedGraph + ?Sized>(g: &G, lo: usize, hi: usize) -> String {
    let mut out = String::from("digraph G {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for r in lo..=hi {
        let _ = write!(out, "  {{ rank=same;");
        for x in g.elements(r) {
            let _ = write!(out, " {};", dot_quote(&x.to_string()));
        }
        out.push_str(" }\n");
    }
    for r in lo..hi {
        for x in g.elements(r) {
            for (y, c) in g.up(&x).iter() {
                let _ = write!(
                    out,
                    "  {} -> {}",
                    dot_quote(&x.to_string()),
                    dot_quote(&y.to_string())
                );
                if !c.is_one() {
                    let _ = write!(out, " [label=\"{c}\"]");
                }
                out.push_str(";\n");
            }
        }
    }
    out.push_str("}\n");
    out
}

/// `{nodes: [{id, rank}], edges: [{src, dst, w}]}` for ranks `lo..=hi`.
pub fn to_json<G: GradedGraph + ?Sized>(g: &G, lo: usize, hi: usize) -> Value {
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    for r in lo..=hi {
        for x in g.elements(r) {
            nodes.push(json!({"id": x.to_string(), "rank": r}));
            if r < hi {
                for (y, c) in g.up(&x).iter() {
                    edges.push(
                        json!({"src": x.to_string(), "dst": y.to_string(), "w": bigint_json(c)}),
                    );
                }
            }
        }
    }
    json!({"nodes": nodes, "edges": edges})
}
