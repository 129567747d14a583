use std::sync::OnceLock;

use num_bigint::BigInt;
use proptest::prelude::*;

use prefix_graphs::free_graphs::up_star_free;
use prefix_graphs::tree::{enumerate_trees, prefixes};
use prefix_graphs::tree_poset::*;
use prefix_graphs::{Alphabet, Letter, SyntaxTree};

fn al(s: &str) -> Alphabet {
    s.parse().unwrap()
}

fn upto(a: &Alphabet, d: usize) -> Vec<SyntaxTree> {
    (0..=d).flat_map(|r| enumerate_trees(a, r)).collect()
}

fn small_trees() -> &'static Vec<SyntaxTree> {
    static T: OnceLock<Vec<SyntaxTree>> = OnceLock::new();
    T.get_or_init(|| upto(&al("a:2,c:3"), 3))
}

fn arb_tree() -> impl Strategy<Value = SyntaxTree> {
    any::<prop::sample::Index>().prop_map(|i| i.get(small_trees()).clone())
}

/// Lower covers of `r` that stay above `s`.
fn covers_above(r: &SyntaxTree, s: &SyntaxTree) -> usize {
    up_star_free(r)
        .support()
        .filter(|x| poset_leq(s, x))
        .count()
}

#[test]
fn meet_and_join_are_bounds() {
    for spec in ["a:2", "a:2,c:3"] {
        let all = upto(&al(spec), 3);
        for s in &all {
            for t in &all {
                let lower: Vec<&SyntaxTree> = all
                    .iter()
                    .filter(|x| poset_leq(x, s) && poset_leq(x, t))
                    .collect();
                let m = meet(s, t);
                assert!(lower.contains(&&m), "{s} ⋏ {t}");
                assert!(
                    lower.iter().all(|x| poset_leq(x, &m)),
                    "{s} ⋏ {t} not greatest"
                );
                assert_eq!(m, meet(t, s));

                let upper: Vec<&SyntaxTree> = all
                    .iter()
                    .filter(|x| poset_leq(s, x) && poset_leq(t, x))
                    .collect();
                match join(s, t) {
                    Ok(j) => {
                        assert!(poset_leq(s, &j) && poset_leq(t, &j));
                        assert!(
                            upper.iter().all(|x| poset_leq(&j, x)),
                            "{s} ⋎ {t} not least"
                        );
                        assert_eq!(Ok(j), join(t, s));
                    }
                    // every upper bound would also bound the clash, so none exist at any degree
                    Err(_) => assert!(upper.is_empty(), "{s} ⋎ {t}"),
                }
            }
            assert_eq!(&meet(s, s), s);
            assert_eq!(join(s, &SyntaxTree::leaf()).unwrap(), s.clone());
        }
    }
}

#[test]
fn intervals_agree_with_brute_force() {
    let a = al("a:2");
    let all = upto(&a, 4);
    for s in &all {
        for t in &all {
            if !poset_leq(s, t) {
                assert!(interval_count(s, t).is_err());
                continue;
            }
            let mut direct: Vec<SyntaxTree> = all
                .iter()
                .filter(|r| poset_leq(s, r) && poset_leq(r, t))
                .cloned()
                .collect();
            direct.sort();
            let elems = interval_elements(s, t).unwrap();
            assert_eq!(elems, direct, "[{s}, {t}]");
            assert_eq!(interval_count(s, t).unwrap(), BigInt::from(direct.len()));
            let forest = difference_forest(s, t).unwrap();
            assert_eq!(&s.compose_all(forest.trees()).unwrap(), t);
            let product: BigInt = forest
                .trees()
                .iter()
                .map(|r| BigInt::from(prefixes(r).len()))
                .product();
            assert_eq!(interval_count(s, t).unwrap(), product);
        }
    }
}

#[test]
fn load_of_a_grafted_tree_counts_its_prefixes() {
    let a = al("a:2,c:3");
    let diamond = Letter::diamond(1);
    for t in upto(&a, 4) {
        let g = SyntaxTree::node(&diamond, vec![t.clone()]).unwrap();
        assert_eq!(
            load(&shadow(&g).unwrap()),
            BigInt::from(prefixes(&t).len()),
            "{t}"
        );
    }
}

#[test]
fn join_irreducibles_of_intervals_are_single_stringy_slots() {
    let a = al("a:2,c:3");
    let all = upto(&a, 3);
    for s in &all {
        for t in all.iter().filter(|t| poset_leq(s, t)) {
            let forest = difference_forest(s, t).unwrap();
            let mut predicted: Vec<SyntaxTree> = Vec::new();
            for (i, r) in forest.trees().iter().enumerate() {
                for p in prefixes(r)
                    .into_iter()
                    .filter(|p| !p.is_leaf() && p.is_stringy())
                {
                    let mut slots = vec![SyntaxTree::leaf(); forest.len()];
                    slots[i] = p;
                    predicted.push(s.compose_all(&slots).unwrap());
                }
            }
            predicted.sort();
            let found: Vec<SyntaxTree> = interval_elements(s, t)
                .unwrap()
                .into_iter()
                .filter(|r| covers_above(r, s) == 1)
                .collect();
            assert_eq!(found, predicted, "[{s}, {t}]");
        }
    }
}

#[test]
fn stringy_trees_are_the_co_irreducibles() {
    let cases: [(&str, &[i64]); 4] = [
        ("a:2", &[1, 1, 2, 4, 8, 16, 32, 64]),
        ("c:3", &[1, 1, 3, 9, 27, 81, 243, 729]),
        ("a:2,b:2", &[1, 2, 8, 32, 128, 512, 2048, 8192]),
        ("a:2,c:3", &[1, 2, 10, 50, 250, 1250, 6250, 31250]),
    ];
    for (spec, expected) in cases {
        let a = al(spec);
        let got: Vec<BigInt> = (0..expected.len()).map(|d| stringy_count(&a, d)).collect();
        let want: Vec<BigInt> = expected.iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(got, want, "{spec}");
        for d in 0..=4 {
            let trees = enumerate_trees(&a, d);
            let co = trees.iter().filter(|t| is_co_irreducible(t)).count();
            let by_covers = trees.iter().filter(|t| up_star_free(t).len() <= 1).count();
            let stringy = trees.iter().filter(|t| t.is_stringy()).count();
            assert_eq!(co, by_covers);
            assert_eq!(co, stringy);
            assert_eq!(BigInt::from(co), stringy_count(&a, d), "{spec} degree {d}");
        }
    }
}

#[test]
fn interval_series_counts_comparable_pairs() {
    for spec in ["a:2", "a:2,c:3", "e:1,a:2"] {
        let a = al(spec);
        let s = interval_series(&a, 4).unwrap();
        assert_eq!(s, interval_series_by_system(&a, 4).unwrap(), "{spec}");
        assert_eq!(
            s,
            series_from_table(&interval_counts_brute_force(&a, 4), 4),
            "{spec}"
        );
    }
    let q1 = interval_series(&al("a:2"), 7).unwrap().at_q_one().unwrap();
    let want: Vec<BigInt> = [1, 2, 6, 21, 80, 322, 1348, 5814]
        .iter()
        .map(|&x| BigInt::from(x))
        .collect();
    assert_eq!(q1, want);
}

#[test]
fn isomorphic_intervals_share_shadows() {
    let a = al("a:2,c:3");
    let all = upto(&a, 3);
    let pairs: Vec<(&SyntaxTree, &SyntaxTree)> = all
        .iter()
        .flat_map(|s| {
            all.iter()
                .filter(move |t| poset_leq(s, t))
                .map(move |t| (s, t))
        })
        .collect();
    for &(s, t) in &pairs {
        assert!(interval_isomorphic(s, s, t, t).unwrap());
        for &(s2, t2) in &pairs {
            if interval_isomorphic(s, t, s2, t2).unwrap() {
                assert_eq!(
                    interval_count(s, t).unwrap(),
                    interval_count(s2, t2).unwrap()
                );
            }
        }
    }
}

/// Reverses the children of every node whose letter is `c`.
fn mirror_c(t: &SyntaxTree) -> SyntaxTree {
    match t {
        SyntaxTree::Leaf => SyntaxTree::Leaf,
        SyntaxTree::Node(a, cs) => {
            let mut cs: Vec<SyntaxTree> = cs.iter().map(mirror_c).collect();
            if a.name() == "c" {
                cs.reverse();
            }
            SyntaxTree::Node(a.clone(), cs)
        }
    }
}

proptest! {
    #[test]
    fn distributive_inside_intervals(t in arb_tree(), i in any::<prop::sample::Index>(),
                                     j in any::<prop::sample::Index>(), k in any::<prop::sample::Index>()) {
        let elems = interval_elements(&SyntaxTree::leaf(), &t).unwrap();
        let (r1, r2, r3) = (i.get(&elems), j.get(&elems), k.get(&elems));
        let lhs = meet(r1, &join(r2, r3).unwrap());
        let rhs = join(&meet(r1, r2), &meet(r1, r3)).unwrap();
        prop_assert_eq!(lhs, rhs);
        let lhs = join(r1, &meet(r2, r3)).unwrap();
        let rhs = meet(&join(r1, r2).unwrap(), &join(r1, r3).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn meet_is_associative(s in arb_tree(), t in arb_tree(), u in arb_tree()) {
        prop_assert_eq!(meet(&meet(&s, &t), &u), meet(&s, &meet(&t, &u)));
    }

    #[test]
    fn shadows_forget_the_planar_order(t in arb_tree()) {
        if !t.is_leaf() {
            prop_assert_eq!(shadow(&t).unwrap(), shadow(&mirror_c(&t)).unwrap());
        }
    }
}
