use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use prefix_graphs::series::{fixed_point, TruncatedSeries2};
use prefix_graphs::{Alphabet, Combination, Poly};

fn arb_combination() -> impl Strategy<Value = Combination<u8>> {
    prop::collection::vec((0u8..12, -5i64..6), 0..10)
        .prop_map(|v| v.into_iter().map(|(x, c)| (x, BigInt::from(c))).collect())
}

fn arb_alphabet() -> impl Strategy<Value = Alphabet> {
    prop::collection::btree_map("[a-h]", 1usize..5, 1..5).prop_map(|m: BTreeMap<String, usize>| {
        let spec: Vec<String> = m.iter().map(|(n, k)| format!("{n}:{k}")).collect();
        spec.join(",").parse().unwrap()
    })
}

proptest! {
    #[test]
    fn hadamard_support_is_the_intersection(f in arb_combination(), g in arb_combination()) {
        let h = f.hadamard(&g);
        let both: Vec<u8> = f.support().filter(|x| g.contains(x)).cloned().collect();
        prop_assert_eq!(h.support().cloned().collect::<Vec<_>>(), both);
    }

    #[test]
    fn sums_cancel_exactly(f in arb_combination(), g in arb_combination()) {
        prop_assert!((&(&f + &g) - &g) == f);
        prop_assert!((&f + &(-&f)).is_zero());
        prop_assert!(f.iter().all(|(_, c)| !c.is_zero()));
    }

    #[test]
    fn no_overflow_in_large_scalings(f in arb_combination(), e in 60u32..200) {
        let big = num_traits::pow(BigInt::from(3), e as usize);
        let scaled = f.scale(&big);
        for (x, c) in scaled.iter() {
            prop_assert_eq!(c, &(f.coeff(x) * &big));
        }
    }

    #[test]
    fn counting_polynomial_at_one(a in arb_alphabet()) {
        let p = a.gen_poly();
        let one = BigInt::one();
        prop_assert_eq!(p.eval(&one), BigInt::from(a.len()));
        let arities: usize = a.letters().iter().map(|l| l.arity()).sum();
        prop_assert_eq!(p.derivative().eval(&one), BigInt::from(arities));
    }

    #[test]
    fn alphabet_spec_round_trips(a in arb_alphabet()) {
        prop_assert_eq!(a.to_string().parse::<Alphabet>().unwrap(), a);
    }
}

#[test]
fn fixed_points_reproduce_themselves() {
    for (spec, trunc) in [("a:2", 8), ("e:1,c:3", 6), ("a:2,b:2,c:3", 5)] {
        let r: Alphabet = spec.parse().unwrap();
        let r = r.gen_poly();
        let one = TruncatedSeries2::one(trunc);
        let step = |s: &TruncatedSeries2| one.add(&s.substitute_into_poly(&r).shift(1, 1));
        let s = fixed_point(step, trunc).unwrap();
        assert_eq!(step(&s).truncated(trunc), s);
        assert!(s.is_integral());
    }
}

#[test]
fn catalan_by_fixed_point() {
    let sq = Poly::from_i64s(&[0, 0, 1]);
    let one = TruncatedSeries2::one(9);
    let c = fixed_point(|s| one.add(&s.substitute_into_poly(&sq).shift(0, 1)), 9).unwrap();
    let want: Vec<BigInt> = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862]
        .iter()
        .map(|&x| BigInt::from(x))
        .collect();
    assert_eq!(c.at_q_one().unwrap(), want);
}
