//! Planar rooted trees decorated by a graded alphabet.
//!
//! These are the elements of the free nonsymmetric operad on an alphabet. A
//! tree is either the leaf `*` or a letter applied to as many subtrees as its
//! arity. Nodes are addressed by words of positive integers; leaves, sorted
//! lexicographically, are indexed from 1.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum SyntaxTree {
    Leaf,
    Node(Letter, Vec<SyntaxTree>),
}

use SyntaxTree::{Leaf, Node};

/// A node address: the empty word is the root, `u·i` is the `i`-th child of `u`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeAddress(pub Vec<usize>);

impl NodeAddress {
    pub fn root() -> Self {
        Self(Vec::new())
    }

    pub fn child(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v.push(i);
        Self(v)
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn has_one(&self) -> bool {
        self.0.contains(&1)
    }

    pub fn is_prefix_of(&self, other: &Self) -> bool {
        other.0.starts_with(&self.0)
    }
}

impl fmt::Display for NodeAddress {
    /// `ε` for the root, digit strings when every entry is at most 9, and
    /// dot-separated integers otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        let sep = if self.0.iter().all(|&i| i <= 9) {
            ""
        } else {
            "."
        };
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        f.write_str(&parts.join(sep))
    }
}

impl fmt::Debug for NodeAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for NodeAddress {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "ε" || s == "e" || s == "root" {
            return Ok(Self::root());
        }
        let bad = || Error::InvalidAddress(s.to_string());
        let parts: Vec<usize> = if s.contains('.') {
            s.split('.')
                .map(|p| p.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                .collect::<Result<_>>()?
        };
        if parts.contains(&0) {
            return Err(bad());
        }
        Ok(Self(parts))
    }
}

/// The node sets of a tree, each sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeStats {
    pub nodes: Vec<NodeAddress>,
    pub internal_nodes: Vec<NodeAddress>,
    pub leaves: Vec<NodeAddress>,
    pub maximal_nodes: Vec<NodeAddress>,
    pub quasi_maximal_nodes: Vec<NodeAddress>,
    pub non_first_leaves: Vec<NodeAddress>,
}

impl SyntaxTree {
    pub fn leaf() -> Self {
        Leaf
    }

    pub fn corolla(a: &Letter) -> Self {
        Node(a.clone(), vec![Leaf; a.arity()])
    }

    pub fn node(a: &Letter, children: Vec<SyntaxTree>) -> Result<Self> {
        if children.len() != a.arity() {
            return Err(Error::ArityMismatch {
                name: a.name().to_string(),
                expected: a.arity(),
                found: children.len(),
                pos: 0,
            });
        }
        Ok(Node(a.clone(), children))
    }

    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self> {
        parse_term(text, alphabet)
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Leaf)
    }

    pub fn letter(&self) -> Option<&Letter> {
        match self {
            Leaf => None,
            Node(a, _) => Some(a),
        }
    }

    pub fn children(&self) -> &[SyntaxTree] {
        match self {
            Leaf => &[],
            Node(_, c) => c,
        }
    }

    /// Number of internal nodes.
    pub fn degree(&self) -> usize {
        match self {
            Leaf => 0,
            Node(_, c) => 1 + c.iter().map(Self::degree).sum::<usize>(),
        }
    }

    /// Number of leaves.
    pub fn arity(&self) -> usize {
        match self {
            Leaf => 1,
            Node(_, c) => c.iter().map(Self::arity).sum(),
        }
    }

    /// True when every internal node has at most one internal child.
    pub fn is_stringy(&self) -> bool {
        match self {
            Leaf => true,
            Node(_, c) => {
                let mut inner = c.iter().filter(|s| !s.is_leaf());
                match (inner.next(), inner.next()) {
                    (None, _) => true,
                    (Some(s), None) => s.is_stringy(),
                    _ => false,
                }
            }
        }
    }

    pub fn subtree_at(&self, u: &NodeAddress) -> Result<&SyntaxTree> {
        let mut t = self;
        for &i in &u.0 {
            t = t
                .children()
                .get(i.wrapping_sub(1))
                .ok_or_else(|| Error::InvalidAddress(u.to_string()))?;
        }
        Ok(t)
    }

    fn subtree_mut(&mut self, u: &NodeAddress) -> Result<&mut SyntaxTree> {
        let mut t = self;
        for &i in &u.0 {
            t = match t {
                Leaf => None,
                Node(_, c) => c.get_mut(i.wrapping_sub(1)),
            }
            .ok_or_else(|| Error::InvalidAddress(u.to_string()))?;
        }
        Ok(t)
    }

    /// Returns a copy with the subtree at `u` replaced.
    pub fn replace_at(&self, u: &NodeAddress, s: SyntaxTree) -> Result<SyntaxTree> {
        let mut out = self.clone();
        *out.subtree_mut(u)? = s;
        Ok(out)
    }

    pub fn node_stats(&self) -> NodeStats {
        let mut st = NodeStats {
            nodes: Vec::new(),
            internal_nodes: Vec::new(),
            leaves: Vec::new(),
            maximal_nodes: Vec::new(),
            quasi_maximal_nodes: Vec::new(),
            non_first_leaves: Vec::new(),
        };
        // Preorder visits addresses in lexicographic order.
        fn walk(t: &SyntaxTree, u: NodeAddress, st: &mut NodeStats) {
            st.nodes.push(u.clone());
            match t {
                Leaf => {
                    if !u.has_one() {
                        st.non_first_leaves.push(u.clone());
                    }
                    st.leaves.push(u);
                }
                Node(_, c) => {
                    st.internal_nodes.push(u.clone());
                    if c.iter().all(SyntaxTree::is_leaf) {
                        st.maximal_nodes.push(u.clone());
                    }
                    if !u.has_one() && c.iter().skip(1).all(SyntaxTree::is_leaf) {
                        st.quasi_maximal_nodes.push(u.clone());
                    }
                    for (i, s) in c.iter().enumerate() {
                        walk(s, u.child(i + 1), st);
                    }
                }
            }
        }
        walk(self, NodeAddress::root(), &mut st);
        st
    }

    /// Leaf addresses in lexicographic order; position `i − 1` holds leaf `i`.
    pub fn leaves(&self) -> Vec<NodeAddress> {
        self.node_stats().leaves
    }

    pub fn maximal_nodes(&self) -> Vec<NodeAddress> {
        self.node_stats().maximal_nodes
    }

    pub fn quasi_maximal_nodes(&self) -> Vec<NodeAddress> {
        self.node_stats().quasi_maximal_nodes
    }

    /// Number of leaves whose address avoids the integer 1, by the recurrence
    /// `nf(*) = 1`, `nf(a[s,*,…,*]) = |a| − 1`, `nf(a[s₁,…,s_k]) = Σ_{j≥2} nf(s_j)`.
    pub fn non_first_leaf_count(&self) -> usize {
        match self {
            Leaf => 1,
            Node(a, c) => {
                if c.iter().skip(1).all(SyntaxTree::is_leaf) {
                    a.arity() - 1
                } else {
                    c.iter().skip(1).map(Self::non_first_leaf_count).sum()
                }
            }
        }
    }

    /// The 1-based index of leaf `u`.
    pub fn leaf_index(&self, u: &NodeAddress) -> Result<usize> {
        if !self.subtree_at(u)?.is_leaf() {
            return Err(Error::NotALeaf(u.to_string()));
        }
        Ok(self
            .leaves()
            .iter()
            .position(|v| v == u)
            .map(|p| p + 1)
            .unwrap_or(0))
    }

    /// `self ∘_i s`: grafts the root of `s` onto the `i`-th leaf.
    pub fn compose_index(&self, i: usize, s: &SyntaxTree) -> Result<SyntaxTree> {
        let arity = self.arity();
        if i == 0 || i > arity {
            return Err(Error::IndexOutOfRange { index: i, arity });
        }
        let mut out = self.clone();
        graft(&mut out, i, s);
        Ok(out)
    }

    /// Grafts `s` onto the leaf at address `u`.
    pub fn compose_address(&self, u: &NodeAddress, s: &SyntaxTree) -> Result<SyntaxTree> {
        if !self.subtree_at(u)?.is_leaf() {
            return Err(Error::NotALeaf(u.to_string()));
        }
        self.replace_at(u, s.clone())
    }

    /// Full composition `self ∘ [r₁, …, r_n]` with `n = |self|`.
    pub fn compose_all(&self, forest: &[SyntaxTree]) -> Result<SyntaxTree> {
        let arity = self.arity();
        if forest.len() != arity {
            return Err(Error::IndexOutOfRange {
                index: forest.len(),
                arity,
            });
        }
        fn fill<'a, I: Iterator<Item = &'a SyntaxTree>>(t: &SyntaxTree, it: &mut I) -> SyntaxTree {
            match t {
                Leaf => it.next().cloned().unwrap_or(Leaf),
                Node(a, c) => Node(a.clone(), c.iter().map(|s| fill(s, it)).collect()),
            }
        }
        Ok(fill(self, &mut forest.iter()))
    }

    /// Replaces the maximal internal node `u` by a leaf.
    pub fn delete_node(&self, u: &NodeAddress) -> Result<SyntaxTree> {
        match self.subtree_at(u)? {
            Node(_, c) if c.iter().all(SyntaxTree::is_leaf) => self.replace_at(u, Leaf),
            _ => Err(Error::NotMaximal(u.to_string())),
        }
    }

    /// Contracts the internal node `u`: if `u` has a single internal child, that
    /// child takes its place; if all its children are leaves, it becomes a leaf
    /// (so contraction agrees with deletion on maximal nodes).
    pub fn contract_node(&self, u: &NodeAddress) -> Result<SyntaxTree> {
        let err = || Error::NotContractible(u.to_string());
        let Node(_, c) = self.subtree_at(u)? else {
            return Err(err());
        };
        let mut inner = c.iter().filter(|s| !s.is_leaf());
        let replacement = match (inner.next(), inner.next()) {
            (None, _) => Leaf,
            (Some(s), None) => s.clone(),
            _ => return Err(err()),
        };
        self.replace_at(u, replacement)
    }

    /// Nested `{letter, children}` records, the leaf being `null`.
    pub fn to_json(&self) -> Value {
        match self {
            Leaf => Value::Null,
            Node(a, c) => json!({
                "letter": a.name(),
                "children": c.iter().map(Self::to_json).collect::<Vec<_>>(),
            }),
        }
    }
}

fn graft(t: &mut SyntaxTree, i: usize, s: &SyntaxTree) -> usize {
    // Returns the number of leaves consumed when the target is not inside `t`.
    match t {
        Leaf => {
            if i == 1 {
                *t = s.clone();
                0
            } else {
                1
            }
        }
        Node(_, c) => {
            let mut seen = 0;
            for child in c.iter_mut() {
                let n = graft(child, i - seen, s);
                if n == 0 {
                    return 0;
                }
                seen += n;
            }
            seen
        }
    }
}

/// `s ≤ t` in the prefix order: `s` is the leaf, or both roots carry the same
/// letter and each child of `s` is a prefix of the matching child of `t`.
pub fn is_prefix(s: &SyntaxTree, t: &SyntaxTree) -> bool {
    match (s, t) {
        (Leaf, _) => true,
        (Node(..), Leaf) => false,
        (Node(a, cs), Node(b, ct)) => a == b && cs.iter().zip(ct).all(|(x, y)| is_prefix(x, y)),
    }
}

impl Ord for SyntaxTree {
    /// The lexicographic order of canonical renderings, computed without
    /// rendering. The head of a tree (`*` or `name[`) is a prefix code, and so
    /// is the rendering of a whole tree, so comparing heads and then children
    /// decides the string order.
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Leaf, Leaf) => Ordering::Equal,
            (Leaf, Node(b, _)) => b"*"
                .as_slice()
                .cmp(b.name().as_bytes())
                .then(Ordering::Less),
            (Node(a, _), Leaf) => a
                .name()
                .as_bytes()
                .cmp(b"*".as_slice())
                .then(Ordering::Greater),
            (Node(a, ca), Node(b, cb)) => head_cmp(a.name(), b.name()).then_with(|| ca.cmp(cb)),
        }
    }
}

fn head_cmp(a: &str, b: &str) -> Ordering {
    a.bytes().chain(Some(b'[')).cmp(b.bytes().chain(Some(b'[')))
}

impl PartialOrd for SyntaxTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SyntaxTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Leaf => f.write_str("*"),
            Node(a, c) => {
                write!(f, "{}[", a.name())?;
                for (k, s) in c.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{s}")?;
                }
                f.write_str("]")
            }
        }
    }
}

impl fmt::Debug for SyntaxTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `*` | name `[` term (`,` term)* `]`, ignoring whitespace.
pub fn parse_term(text: &str, alphabet: &Alphabet) -> Result<SyntaxTree> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        alphabet,
    };
    let t = p.term()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.syntax("trailing input"));
    }
    Ok(t)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn syntax(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(&format!("expected `{}`", c as char)))
        }
    }

    fn term(&mut self) -> Result<SyntaxTree> {
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            Some(b'*') => {
                self.pos += 1;
                Ok(Leaf)
            }
            Some(c) if c.is_ascii_lowercase() || *c == b'#' => {
                self.pos += 1;
                while self
                    .src
                    .get(self.pos)
                    .is_some_and(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || *c == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
                let letter =
                    self.alphabet
                        .get(name)
                        .cloned()
                        .ok_or_else(|| Error::UnknownLetter {
                            name: name.to_string(),
                            pos: start,
                        })?;
                self.expect(b'[')?;
                let mut children = vec![self.term()?];
                loop {
                    self.skip_ws();
                    match self.src.get(self.pos) {
                        Some(b',') => {
                            self.pos += 1;
                            children.push(self.term()?);
                        }
                        Some(b']') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(self.syntax("expected `,` or `]`")),
                    }
                }
                if children.len() != letter.arity() {
                    return Err(Error::ArityMismatch {
                        name: name.to_string(),
                        expected: letter.arity(),
                        found: children.len(),
                        pos: start,
                    });
                }
                Ok(Node(letter, children))
            }
            _ => Err(self.syntax("expected `*` or a letter")),
        }
    }
}

/// All trees with exactly `d` internal nodes, in canonical order.
pub fn enumerate_trees(alphabet: &Alphabet, d: usize) -> Vec<SyntaxTree> {
    let mut table = trees_by_degree(alphabet, d);
    let mut out = table.pop().unwrap_or_default();
    out.sort();
    out
}

/// `table[k]` holds every tree of degree `k` for `k ≤ d` (unsorted).
pub fn trees_by_degree(alphabet: &Alphabet, d: usize) -> Vec<Vec<SyntaxTree>> {
    let mut table: Vec<Vec<SyntaxTree>> = vec![vec![Leaf]];
    for k in 1..=d {
        let mut level = Vec::new();
        for a in alphabet.letters() {
            for_each_split(k - 1, a.arity(), &mut |parts| {
                let mut acc: Vec<Vec<SyntaxTree>> = vec![Vec::with_capacity(parts.len())];
                for &p in parts {
                    let mut next = Vec::with_capacity(acc.len() * table[p].len());
                    for prefix in &acc {
                        for s in &table[p] {
                            let mut v = prefix.clone();
                            v.push(s.clone());
                            next.push(v);
                        }
                    }
                    acc = next;
                }
                level.extend(acc.into_iter().map(|c| Node(a.clone(), c)));
            });
        }
        table.push(level);
    }
    table
}

/// Calls `f` on every weak composition of `total` into `parts` parts.
pub(crate) fn for_each_split(total: usize, parts: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(rest: usize, left: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if left == 1 {
            cur.push(rest);
            f(cur);
            cur.pop();
            return;
        }
        for k in 0..=rest {
            cur.push(k);
            go(rest - k, left - 1, cur, f);
            cur.pop();
        }
    }
    if parts == 0 {
        if total == 0 {
            f(&[]);
        }
        return;
    }
    go(total, parts, &mut Vec::with_capacity(parts), f);
}

/// Every prefix of `t`, in canonical order.
pub fn prefixes(t: &SyntaxTree) -> Vec<SyntaxTree> {
    fn go(t: &SyntaxTree) -> Vec<SyntaxTree> {
        match t {
            Leaf => vec![Leaf],
            Node(a, c) => {
                let mut acc: Vec<Vec<SyntaxTree>> = vec![Vec::new()];
                for s in c {
                    let ps = go(s);
                    acc = acc
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
                let mut out = vec![Leaf];
                out.extend(acc.into_iter().map(|c| Node(a.clone(), c)));
                out
            }
        }
    }
    let mut out = go(t);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Alphabet {
        "a:2,b:2,c:3".parse().unwrap()
    }

    fn t(s: &str, al: &Alphabet) -> SyntaxTree {
        parse_term(s, al).unwrap()
    }

    #[test]
    fn parse_and_render() {
        let al = "a:2,b:2".parse().unwrap();
        let x = t(" a[ b[*,*] , *]", &al);
        assert_eq!(x.to_string(), "a[b[*,*],*]");
        assert_eq!((x.degree(), x.arity()), (2, 3));
        assert_eq!(t("*", &al), Leaf);
    }

    #[test]
    fn parse_errors_carry_positions() {
        let al: Alphabet = "a:2".parse().unwrap();
        assert!(matches!(
            parse_term("a[*,*,*]", &al),
            Err(Error::ArityMismatch {
                expected: 2,
                found: 3,
                pos: 0,
                ..
            })
        ));
        assert!(matches!(
            parse_term("a[*,z[*]]", &al),
            Err(Error::UnknownLetter { pos: 4, .. })
        ));
        assert!(matches!(
            parse_term("a[*,*", &al),
            Err(Error::Syntax { pos: 5, .. })
        ));
        assert!(matches!(
            parse_term("a[*,*]]", &al),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn addresses_render() {
        assert_eq!(NodeAddress(vec![3, 1]).to_string(), "31");
        assert_eq!(NodeAddress(vec![12, 1]).to_string(), "12.1");
        assert_eq!(NodeAddress::root().to_string(), "ε");
        assert_eq!(
            "12.1".parse::<NodeAddress>().unwrap(),
            NodeAddress(vec![12, 1])
        );
        assert_eq!(
            "31".parse::<NodeAddress>().unwrap(),
            NodeAddress(vec![3, 1])
        );
    }

    #[test]
    fn running_tree_nodes() {
        let x = t("c[b[*,*],*,a[c[*,*,*],a[*,*]]]", &abc());
        let st = x.node_stats();
        let show = |v: &[NodeAddress]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
        assert_eq!(show(&st.internal_nodes), ["ε", "1", "3", "31", "32"]);
        assert_eq!(
            show(&st.leaves),
            ["11", "12", "2", "311", "312", "313", "321", "322"]
        );
        assert_eq!(
            x.subtree_at(&"1".parse().unwrap()).unwrap().to_string(),
            "b[*,*]"
        );
        assert_eq!(x.subtree_at(&NodeAddress::root()).unwrap(), &x);
        assert!(t("a[*,*]", &abc())
            .subtree_at(&"3".parse().unwrap())
            .is_err());
    }

    #[test]
    fn composition_at_fifth_leaf() {
        let al = abc();
        let x = t("a[b[*,a[*,*]],c[*,*,*]]", &al);
        let y = t("c[*,*,b[*,*]]", &al);
        let expected = t("a[b[*,a[*,*]],c[*,c[*,*,b[*,*]],*]]", &al);
        assert_eq!(x.leaves()[4].to_string(), "22");
        assert_eq!(x.compose_index(5, &y).unwrap(), expected);
        assert_eq!(
            x.compose_address(&"22".parse().unwrap(), &y).unwrap(),
            expected
        );
        assert_eq!(Leaf.compose_index(1, &y).unwrap(), y);
        assert_eq!(x.compose_index(2, &Leaf).unwrap(), x);
        assert!(x.compose_index(7, &y).is_err());
    }

    #[test]
    fn deletion_and_contraction() {
        let al: Alphabet = "a:2".parse().unwrap();
        let x = t("a[a[*,*],*]", &al);
        assert_eq!(
            x.delete_node(&"1".parse().unwrap()).unwrap().to_string(),
            "a[*,*]"
        );
        assert!(x.delete_node(&NodeAddress::root()).is_err());
        let c = SyntaxTree::corolla(al.get("a").unwrap());
        assert_eq!(c.delete_node(&NodeAddress::root()).unwrap(), Leaf);
        let y = t("a[*,a[*,*]]", &al);
        assert_eq!(
            y.contract_node(&"2".parse().unwrap()).unwrap().to_string(),
            "a[*,*]"
        );
    }

    #[test]
    fn contraction_of_a_node_with_internal_last_child() {
        let al = "a:2,c:3".parse().unwrap();
        let x = t("c[a[*,*],c[*,*,a[a[*,*],a[*,*]]],*]", &al);
        let y = x.contract_node(&"2".parse().unwrap()).unwrap();
        assert_eq!(y.to_string(), "c[a[*,*],a[a[*,*],a[*,*]],*]");
        assert!(x.contract_node(&NodeAddress::root()).is_err());
    }

    #[test]
    fn quasi_maximal_and_non_first() {
        let al = "e:1,a:2,c:3".parse().unwrap();
        let x = t("c[a[*,*],c[e[*],*,*],c[*,a[*,*],c[*,*,*]]]", &al);
        let st = x.node_stats();
        let show = |v: &[NodeAddress]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
        assert_eq!(show(&st.quasi_maximal_nodes), ["2", "32", "33"]);
        assert_eq!(
            show(&st.non_first_leaves),
            ["22", "23", "322", "332", "333"]
        );
        assert_eq!(x.non_first_leaf_count(), 5);
        let l = Leaf.node_stats();
        assert_eq!(l.leaves, vec![NodeAddress::root()]);
        assert_eq!(l.non_first_leaves.len(), 1);
        assert!(l.internal_nodes.is_empty() && l.maximal_nodes.is_empty());
    }

    #[test]
    fn ordering_matches_rendering() {
        let al: Alphabet = "a:2,a1:1,b:2".parse().unwrap();
        let mut ts: Vec<SyntaxTree> = (0..=3).flat_map(|d| enumerate_trees(&al, d)).collect();
        ts.sort();
        let rendered: Vec<String> = ts.iter().map(ToString::to_string).collect();
        let mut sorted = rendered.clone();
        sorted.sort();
        assert_eq!(rendered, sorted);
    }

    #[test]
    fn binary_trees_of_degree_three() {
        let al: Alphabet = "a:2".parse().unwrap();
        assert_eq!(enumerate_trees(&al, 3).len(), 5);
        assert_eq!(enumerate_trees(&al, 0), vec![Leaf]);
    }

    #[test]
    fn prefix_order() {
        let al: Alphabet = "a:2,b:2".parse().unwrap();
        assert!(is_prefix(&Leaf, &t("a[b[*,*],*]", &al)));
        assert!(is_prefix(&t("a[*,*]", &al), &t("a[a[*,*],*]", &al)));
        assert!(!is_prefix(&t("a[*,*]", &al), &t("b[*,*]", &al)));
        assert_eq!(prefixes(&t("a[a[*,*],*]", &al)).len(), 3);
    }

    #[test]
    fn json_form() {
        let al: Alphabet = "a:2".parse().unwrap();
        assert_eq!(
            t("a[*,a[*,*]]", &al).to_json().to_string(),
            r#"{"children":[null,{"children":[null,null],"letter":"a"}],"letter":"a"}"#
        );
    }
}
