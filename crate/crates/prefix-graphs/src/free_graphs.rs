//! The prefix graph and the twisted prefix graph on the trees of an alphabet,
//! their hook statistics, and the diagonal map of their duality.
//!
//! The prefix graph sends a tree to the sum of all ways of grafting a corolla
//! onto one of its leaves. The twisted prefix graph either pushes the whole tree
//! below a new root (as its first child), or recursively does so inside a child
//! other than the first. Restricted to a single binary letter, the twisted graph
//! is a tree: each tree has exactly one predecessor.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::graded_graph::GradedGraph;
use crate::poly::Combination;
use crate::tree::{enumerate_trees, NodeAddress, SyntaxTree};

/// Default degree bound for the brute-force linear extension counts.
pub const LINEAR_EXTENSION_BOUND: usize = 8;

/// `U(t) = Σ_{a, i} t ∘_i a`.
pub fn up_free(t: &SyntaxTree, alphabet: &Alphabet) -> Combination<SyntaxTree> {
    let leaves = t.leaves();
    let mut out = Combination::zero();
    for a in alphabet.letters() {
        let c = SyntaxTree::corolla(a);
        for u in &leaves {
            if let Ok(s) = t.compose_address(u, &c) {
                out.add_term(s, BigInt::one());
            }
        }
    }
    out
}

/// `U★(t)`: the sum of the deletions of the maximal nodes of `t`.
pub fn up_star_free(t: &SyntaxTree) -> Combination<SyntaxTree> {
    Combination::from_multiset(
        t.maximal_nodes()
            .iter()
            .filter_map(|u| t.delete_node(u).ok()),
    )
}

/// `V(t) = Σ_a a[t, *, …, *] + Σ_{j ≥ 2} b[s₁, …, V(s_j), …, s_k]` when `t = b[s₁, …, s_k]`.
pub fn v_free(t: &SyntaxTree, alphabet: &Alphabet) -> Combination<SyntaxTree> {
    let mut out = Combination::zero();
    for a in alphabet.letters() {
        let mut children = vec![SyntaxTree::Leaf; a.arity()];
        children[0] = t.clone();
        out.add_term(SyntaxTree::Node(a.clone(), children), BigInt::one());
    }
    if let SyntaxTree::Node(b, c) = t {
        for j in 1..c.len() {
            for (s, k) in v_free(&c[j], alphabet).iter() {
                let mut children = c.clone();
                children[j] = s.clone();
                out.add_term(SyntaxTree::Node(b.clone(), children), k.clone());
            }
        }
    }
    out
}

/// `V★` by its recurrence: `V★(*) = 0`, `V★(a[s, *, …, *]) = s`, and otherwise
/// `V★(a[s₁, …, s_k]) = Σ_{j ≥ 2} a[s₁, …, V★(s_j), …, s_k]`.
pub fn v_star_free(t: &SyntaxTree) -> Combination<SyntaxTree> {
    match t {
        SyntaxTree::Leaf => Combination::zero(),
        SyntaxTree::Node(a, c) => {
            if c[1..].iter().all(SyntaxTree::is_leaf) {
                return Combination::single(c[0].clone());
            }
            let mut out = Combination::zero();
            for j in 1..c.len() {
                for (s, k) in v_star_free(&c[j]).iter() {
                    let mut children = c.clone();
                    children[j] = s.clone();
                    out.add_term(SyntaxTree::Node(a.clone(), children), k.clone());
                }
            }
            out
        }
    }
}

/// `V★` as the sum of the contractions of the quasi-maximal nodes.
pub fn v_star_by_contraction(t: &SyntaxTree) -> Combination<SyntaxTree> {
    Combination::from_multiset(
        t.quasi_maximal_nodes()
            .iter()
            .filter_map(|u| t.contract_node(u).ok()),
    )
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `⟦a₁, …, a_k⟧! = (Σ aᵢ)! / Π aᵢ!`, the number of shuffles of chains of those lengths.
pub fn multinomial(parts: &[usize]) -> BigInt {
    let total: usize = parts.iter().sum();
    let den = parts
        .iter()
        .fold(BigInt::one(), |acc, &p| acc * factorial(p));
    factorial(total) / den
}

/// `deg(t)! / Π_u deg(t(u))` over the internal nodes `u`.
pub fn hook_closed_form(t: &SyntaxTree) -> BigInt {
    fn hooks(t: &SyntaxTree, acc: &mut BigInt) -> usize {
        match t {
            SyntaxTree::Leaf => 0,
            SyntaxTree::Node(_, c) => {
                let d = 1 + c.iter().map(|s| hooks(s, acc)).sum::<usize>();
                *acc *= BigInt::from(d);
                d
            }
        }
    }
    let mut den = BigInt::one();
    let d = hooks(t, &mut den);
    factorial(d) / den
}

/// `h̃(*) = 1`, `h̃(a[s₁, …, s_k]) = ⟦deg s₂, …, deg s_k⟧! · Π h̃(sᵢ)`.
pub fn twisted_hook(t: &SyntaxTree) -> BigInt {
    match t {
        SyntaxTree::Leaf => BigInt::one(),
        SyntaxTree::Node(_, c) => {
            let degs: Vec<usize> = c[1..].iter().map(SyntaxTree::degree).collect();
            c.iter()
                .fold(multinomial(&degs), |acc, s| acc * twisted_hook(s))
        }
    }
}

/// The internal nodes of `t` and, for each, the nodes that must precede it:
/// ancestors for the induced poset; for the twisted poset, a node is preceded
/// by its first-child subtree and follows the nodes of which it is in a later
/// child subtree.
fn precedence(t: &SyntaxTree, twisted: bool) -> (Vec<NodeAddress>, Vec<u64>) {
    let nodes = t.node_stats().internal_nodes;
    let below = |u: &NodeAddress, v: &NodeAddress| -> bool {
        // true when u must come before v
        if u == v {
            return false;
        }
        if !twisted {
            return u.is_prefix_of(v);
        }
        if u.is_prefix_of(v) {
            return v.0[u.len()] >= 2;
        }
        if v.is_prefix_of(u) {
            return u.0[v.len()] == 1;
        }
        false
    };
    let preds = nodes
        .iter()
        .map(|v| {
            nodes
                .iter()
                .enumerate()
                .filter(|(_, u)| below(u, v))
                .fold(0u64, |m, (k, _)| m | (1 << k))
        })
        .collect();
    (nodes, preds)
}

fn check_bound(t: &SyntaxTree, bound: usize) -> Result<()> {
    let d = t.degree();
    if d > bound || d > 20 {
        return Err(Error::OracleBound { degree: d, bound });
    }
    Ok(())
}

/// Number of linear extensions of the induced (or twisted) poset on the
/// internal nodes, by dynamic programming over order ideals.
pub fn linear_extensions(t: &SyntaxTree, twisted: bool, bound: usize) -> Result<BigInt> {
    check_bound(t, bound)?;
    let (nodes, preds) = precedence(t, twisted);
    let n = nodes.len();
    let mut count = vec![BigInt::zero(); 1 << n];
    count[0] = BigInt::one();
    for mask in 0..(1usize << n) {
        if count[mask].is_zero() {
            continue;
        }
        for v in 0..n {
            if mask & (1 << v) == 0 && preds[v] & !(mask as u64) == 0 {
                let c = count[mask].clone();
                count[mask | (1 << v)] += c;
            }
        }
    }
    Ok(count[(1 << n) - 1].clone())
}

/// The linear extensions themselves, as sequences of node addresses.
pub fn linear_extension_list(
    t: &SyntaxTree,
    twisted: bool,
    bound: usize,
) -> Result<Vec<Vec<NodeAddress>>> {
    check_bound(t, bound)?;
    let (nodes, preds) = precedence(t, twisted);
    fn go(
        nodes: &[NodeAddress],
        preds: &[u64],
        mask: u64,
        cur: &mut Vec<NodeAddress>,
        out: &mut Vec<Vec<NodeAddress>>,
    ) {
        if cur.len() == nodes.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..nodes.len() {
            if mask & (1 << v) == 0 && preds[v] & !mask == 0 {
                cur.push(nodes[v].clone());
                go(nodes, preds, mask | (1 << v), cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&nodes, &preds, 0, &mut Vec::new(), &mut out);
    Ok(out)
}

/// `θ(d, n)` for `d ≤ d_max`: the number of paths in the prefix graph from the
/// leaf to trees of degree `d` and arity `n`. Row `d` is indexed by `n`.
pub fn theta_table(alphabet: &Alphabet, d_max: usize) -> Vec<Vec<BigInt>> {
    let m = alphabet.max_arity().max(1);
    let width = 2 + (m - 1) * d_max;
    let mut table = vec![vec![BigInt::zero(); width]; d_max + 1];
    table[0][1] = BigInt::one();
    for d in 1..=d_max {
        for n in 1..width {
            let mut v = BigInt::zero();
            for a in alphabet.letters() {
                if a.arity() <= n {
                    let k = n + 1 - a.arity();
                    v += BigInt::from(k) * &table[d - 1][k];
                }
            }
            table[d][n] = v;
        }
    }
    table
}

/// `Σ_n θ(d, n)` over `n ∈ [1, 1 + (m − 1)d]`, for each `d ≤ d_max`.
pub fn theta_row_sums(alphabet: &Alphabet, d_max: usize) -> Vec<BigInt> {
    let m = alphabet.max_arity().max(1);
    theta_table(alphabet, d_max)
        .iter()
        .enumerate()
        .map(|(d, row)| row[1..=1 + (m - 1) * d].iter().sum())
        .collect()
}

/// `φ(t) = #letters · nf(t)`, the diagonal of `V★U − UV★` on trees.
pub fn phi_free(t: &SyntaxTree, alphabet: &Alphabet) -> BigInt {
    BigInt::from(alphabet.len() * t.non_first_leaf_count())
}

/// `|t| − #maximal nodes`, the diagonal of `U★U − UU★` for a one-letter alphabet.
pub fn phi_self_singleton(t: &SyntaxTree, alphabet: &Alphabet) -> Result<BigInt> {
    if alphabet.len() != 1 {
        return Err(Error::NotSingleton(alphabet.len()));
    }
    Ok(BigInt::from(t.arity()) - BigInt::from(t.maximal_nodes().len()))
}

/// The prefix graph on the trees of an alphabet.
#[derive(Clone, Debug)]
pub struct FreePrefixGraph {
    pub alphabet: Alphabet,
}

/// The twisted prefix graph on the trees of an alphabet.
#[derive(Clone, Debug)]
pub struct FreeTwistedGraph {
    pub alphabet: Alphabet,
}

impl FreePrefixGraph {
    pub fn new(alphabet: Alphabet) -> Self {
        Self { alphabet }
    }
}

impl FreeTwistedGraph {
    pub fn new(alphabet: Alphabet) -> Self {
        Self { alphabet }
    }
}

impl GradedGraph for FreePrefixGraph {
    type Elem = SyntaxTree;

    fn rank(&self, x: &SyntaxTree) -> usize {
        x.degree()
    }

    fn root(&self) -> SyntaxTree {
        SyntaxTree::Leaf
    }

    fn elements(&self, r: usize) -> Vec<SyntaxTree> {
        enumerate_trees(&self.alphabet, r)
    }

    fn up(&self, x: &SyntaxTree) -> Combination<SyntaxTree> {
        up_free(x, &self.alphabet)
    }

    fn down(&self, x: &SyntaxTree) -> Combination<SyntaxTree> {
        up_star_free(x)
    }
}

impl GradedGraph for FreeTwistedGraph {
    type Elem = SyntaxTree;

    fn rank(&self, x: &SyntaxTree) -> usize {
        x.degree()
    }

    fn root(&self) -> SyntaxTree {
        SyntaxTree::Leaf
    }

    fn elements(&self, r: usize) -> Vec<SyntaxTree> {
        enumerate_trees(&self.alphabet, r)
    }

    fn up(&self, x: &SyntaxTree) -> Combination<SyntaxTree> {
        v_free(x, &self.alphabet)
    }

    fn down(&self, x: &SyntaxTree) -> Combination<SyntaxTree> {
        v_star_free(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::parse_term;

    fn al(s: &str) -> Alphabet {
        s.parse().unwrap()
    }

    fn t(s: &str, a: &Alphabet) -> SyntaxTree {
        parse_term(s, a).unwrap()
    }

    fn terms(c: &Combination<SyntaxTree>) -> Vec<String> {
        c.support().map(ToString::to_string).collect()
    }

    #[test]
    fn prefix_graph_edges() {
        let a = al("a:2");
        assert_eq!(terms(&up_free(&SyntaxTree::Leaf, &a)), ["a[*,*]"]);
        assert_eq!(
            terms(&up_free(&t("a[*,*]", &a), &a)),
            ["a[*,a[*,*]]", "a[a[*,*],*]"]
        );
        let ec = al("e:1,c:3");
        assert_eq!(up_free(&t("c[*,*,*]", &ec), &ec).len(), 6);
        assert!(up_star_free(&SyntaxTree::Leaf).is_zero());
        assert_eq!(
            terms(&up_star_free(&t("a[a[*,*],a[*,*]]", &a))),
            ["a[*,a[*,*]]", "a[a[*,*],*]"]
        );
    }

    #[test]
    fn twisted_adjoint_worked_example() {
        let a = al("e:1,a:2,c:3");
        let x = t("c[a[*,*],c[e[*],*,*],c[*,a[*,*],c[*,*,*]]]", &a);
        let expected = [
            "c[a[*,*],c[e[*],*,*],c[*,*,c[*,*,*]]]",
            "c[a[*,*],c[e[*],*,*],c[*,a[*,*],*]]",
            "c[a[*,*],e[*],c[*,a[*,*],c[*,*,*]]]",
        ];
        assert_eq!(terms(&v_star_free(&x)), expected);
        assert_eq!(v_star_by_contraction(&x), v_star_free(&x));
        assert!(v_star_free(&SyntaxTree::Leaf).is_zero());
        let s = t("c[*,e[*],*]", &a);
        let y = SyntaxTree::node(a.get("a").unwrap(), vec![s.clone(), SyntaxTree::Leaf]).unwrap();
        assert_eq!(v_star_free(&y), Combination::single(s));
    }

    #[test]
    fn twisted_graph_nine_successors() {
        let a = al("e:1,a:2,c:3");
        let v = v_free(&t("a[*,a[*,*]]", &a), &a);
        let expected = [
            "a[*,a[*,a[*,*]]]",
            "a[*,a[*,c[*,*,*]]]",
            "a[*,a[*,e[*]]]",
            "a[*,a[a[*,*],*]]",
            "a[*,c[a[*,*],*,*]]",
            "a[*,e[a[*,*]]]",
            "a[a[*,a[*,*]],*]",
            "c[a[*,a[*,*]],*,*]",
            "e[a[*,a[*,*]]]",
        ];
        assert_eq!(terms(&v), expected);
        assert_eq!(v_free(&t("c[a[*,*],*,e[*]]", &a), &a).len(), 9);
        assert_eq!(
            terms(&v_free(&SyntaxTree::Leaf, &a)),
            ["a[*,*]", "c[*,*,*]", "e[*]"]
        );
    }

    #[test]
    fn hook_values() {
        let a = al("a:2");
        assert_eq!(hook_closed_form(&SyntaxTree::Leaf), BigInt::one());
        assert_eq!(
            hook_closed_form(&t("a[a[a[a[*,*],*],*],*]", &a)),
            BigInt::one()
        );
        assert_eq!(
            hook_closed_form(&t("a[a[*,*],a[*,*]]", &a)),
            BigInt::from(2)
        );
        assert_eq!(twisted_hook(&SyntaxTree::Leaf), BigInt::one());
    }

    #[test]
    fn twisted_hook_example_and_its_extensions() {
        let a = al("e:1,a:2,c:3");
        let x = t("c[a[c[*,*,*],e[*]],c[*,*,*],e[a[a[*,*],*]]]", &a);
        assert_eq!(twisted_hook(&x), BigInt::from(4));
        assert_eq!(linear_extensions(&x, true, 8).unwrap(), BigInt::from(4));
        let mut got: Vec<String> = linear_extension_list(&x, true, 8)
            .unwrap()
            .iter()
            .map(|w| {
                w.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        got.sort();
        let mut expected = vec![
            "11,1,12,ε,2,311,31,3",
            "11,1,12,ε,311,2,31,3",
            "11,1,12,ε,311,31,2,3",
            "11,1,12,ε,311,31,3,2",
        ];
        expected.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn oracle_bound_is_enforced() {
        let a = al("e:1");
        let mut x = SyntaxTree::Leaf;
        for _ in 0..9 {
            x = SyntaxTree::node(a.get("e").unwrap(), vec![x]).unwrap();
        }
        assert!(matches!(
            linear_extensions(&x, false, 8),
            Err(Error::OracleBound { .. })
        ));
    }

    #[test]
    fn theta_small_rows() {
        assert_eq!(theta_table(&al("a:2"), 0)[0][1], BigInt::one());
        let sums = theta_row_sums(&al("a:2"), 3);
        assert_eq!(sums[3], BigInt::from(6));
        assert_eq!(theta_row_sums(&al("a:2,c:3"), 4)[4], BigInt::from(938));
    }

    #[test]
    fn duality_maps() {
        let a = al("a:2");
        assert_eq!(phi_free(&SyntaxTree::Leaf, &a), BigInt::one());
        let eac = al("e:1,a:2,c:3");
        let x = t("c[a[*,*],c[e[*],*,*],c[*,a[*,*],c[*,*,*]]]", &eac);
        assert_eq!(phi_free(&x, &eac), BigInt::from(15));
        let y = t("a[a[*,*],*]", &a);
        assert_eq!(phi_free(&y, &a), BigInt::one());
        assert_eq!(
            phi_self_singleton(&SyntaxTree::Leaf, &a).unwrap(),
            BigInt::one()
        );
        assert_eq!(
            phi_self_singleton(&t("a[*,*]", &a), &a).unwrap(),
            BigInt::one()
        );
        assert!(phi_self_singleton(&y, &al("a:2,b:2")).is_err());
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(&[2, 1, 1]), BigInt::from(12));
        assert_eq!(multinomial(&[]), BigInt::one());
    }
}
