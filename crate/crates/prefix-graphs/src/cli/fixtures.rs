//! Bundled reference values, stored as JSON under `fixtures/` and checked by
//! exact comparison against the library.

use std::collections::BTreeMap;
use std::thread;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::free_graphs::{
    factorial, linear_extensions, theta_row_sums, twisted_hook, v_free, v_star_free,
    FreePrefixGraph, FreeTwistedGraph, LINEAR_EXTENSION_BOUND,
};
use crate::graded_graph::{hook_table, initial_paths_series, GradedGraphPair};
use crate::operads::*;
use crate::poly::Combination;
use crate::tree::{parse_term, SyntaxTree};
use crate::tree_poset::{interval_series, join, load, meet, shadow, stringy_count};
use crate::with_operad;

const SOURCES: [&str; 3] = [
    include_str!("../../fixtures/free_graphs.json"),
    include_str!("../../fixtures/tree_poset.json"),
    include_str!("../../fixtures/operads.json"),
];

#[derive(Clone, Debug, Deserialize)]
pub struct Fixture {
    pub id: String,
    pub description: String,
    /// Where the expected values come from.
    pub origin: String,
    #[serde(flatten)]
    pub check: Check,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Check {
    PathsSeries {
        alphabet: String,
        graph: String,
        expected: Vec<i64>,
    },
    ThetaRowSums {
        alphabet: String,
        expected: Vec<i64>,
    },
    FreeSelfDualityWitness {
        alphabet: String,
        max_degree: usize,
        witness: String,
        commutator: BTreeMap<String, i64>,
    },
    TwistedHook {
        alphabet: String,
        tree: String,
        expected: i64,
    },
    VStar {
        alphabet: String,
        tree: String,
        expected: Vec<String>,
    },
    VFree {
        alphabet: String,
        tree: String,
        expected: Vec<String>,
    },
    Meet {
        alphabet: String,
        left: String,
        right: String,
        expected: String,
    },
    Join {
        alphabet: String,
        left: String,
        right: String,
        expected: String,
    },
    ShadowLoad {
        alphabet: String,
        tree: String,
        shadow: String,
        load: i64,
    },
    Stringy {
        alphabet: String,
        expected: Vec<i64>,
    },
    IntervalSeriesQ1 {
        alphabet: String,
        expected: Vec<i64>,
    },
    IntervalSeries {
        alphabet: String,
        rows: Vec<Vec<i64>>,
    },
    OperadHook {
        operad: String,
        coefficients: BTreeMap<String, i64>,
    },
    OperadHookArityFactorial {
        operad: String,
        max_degree: usize,
    },
    OperadDuality {
        operad: String,
        pair: String,
        max_degree: usize,
    },
    OperadNotDiagonal {
        operad: String,
        pair: String,
        max_degree: usize,
        witness: String,
        commutator: BTreeMap<String, i64>,
    },
}

/// The outcome of one fixture.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureResult {
    pub id: String,
    pub passed: bool,
    pub expected: String,
    pub actual: String,
    pub note: Option<String>,
}

impl FixtureResult {
    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "passed": self.passed,
            "expected": self.expected,
            "actual": self.actual,
            "note": self.note,
        })
    }
}

/// Every bundled fixture, in file order.
pub fn all() -> Vec<Fixture> {
    SOURCES
        .iter()
        .flat_map(|src| {
            serde_json::from_str::<Vec<Fixture>>(src).expect("bundled fixtures are well-formed")
        })
        .collect()
}

/// The fixtures whose id contains `filter`.
pub fn select(filter: Option<&str>) -> Vec<Fixture> {
    all()
        .into_iter()
        .filter(|f| filter.is_none_or(|s| f.id.contains(s)))
        .collect()
}

/// Runs the selected fixtures concurrently; results keep fixture order.
pub fn verify(filter: Option<&str>) -> Vec<FixtureResult> {
    let fixtures = select(filter);
    thread::scope(|s| {
        let handles: Vec<_> = fixtures.iter().map(|f| s.spawn(move || run(f))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("fixture thread panicked"))
            .collect()
    })
}

/// Runs one fixture. Errors while evaluating count as failures.
pub fn run(f: &Fixture) -> FixtureResult {
    match evaluate(&f.check) {
        Ok((expected, actual, note)) => FixtureResult {
            id: f.id.clone(),
            passed: expected == actual,
            expected,
            actual,
            note,
        },
        Err(e) => FixtureResult {
            id: f.id.clone(),
            passed: false,
            expected: String::new(),
            actual: format!("error: {e}"),
            note: None,
        },
    }
}

fn csv<T: ToString>(v: &[T]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn alphabet(s: &str) -> Result<Alphabet> {
    s.parse()
}

fn tree(s: &str, a: &Alphabet) -> Result<SyntaxTree> {
    parse_term(s, a)
}

fn terms_csv(c: &Combination<SyntaxTree>) -> String {
    c.iter()
        .map(|(t, k)| {
            if k.is_one() {
                t.to_string()
            } else {
                format!("{k}*{t}")
            }
        })
        .collect::<Vec<_>>()
        .join(" ; ")
}

fn combination_from_map<O: Operad>(
    op: &O,
    m: &BTreeMap<String, i64>,
) -> Result<Combination<O::Elem>> {
    m.iter()
        .map(|(k, &c)| Ok((op.parse(k)?, BigInt::from(c))))
        .collect()
}

type Evaluated = (String, String, Option<String>);

fn evaluate(check: &Check) -> Result<Evaluated> {
    use Check::*;
    Ok(match check {
        PathsSeries {
            alphabet: a,
            graph,
            expected,
        } => {
            let al = alphabet(a)?;
            let d = expected.len().saturating_sub(1);
            let p = match graph.as_str() {
                "u" => initial_paths_series(&FreePrefixGraph::new(al), d),
                "v" => initial_paths_series(&FreeTwistedGraph::new(al), d),
                other => return Err(Error::InvalidElement(format!("unknown graph `{other}`"))),
            };
            (csv(expected), csv(&p.coefficients(d + 1)), None)
        }
        ThetaRowSums {
            alphabet: a,
            expected,
        } => {
            let sums = theta_row_sums(&alphabet(a)?, expected.len().saturating_sub(1));
            (csv(expected), csv(&sums), None)
        }
        FreeSelfDualityWitness {
            alphabet: a,
            max_degree,
            witness,
            commutator,
        } => {
            let al = alphabet(a)?;
            let u = FreePrefixGraph::new(al.clone());
            let expected_comm: Combination<SyntaxTree> = commutator
                .iter()
                .map(|(k, &c)| Ok((tree(k, &al)?, BigInt::from(c))))
                .collect::<Result<_>>()?;
            let expected = format!("{} | {}", tree(witness, &al)?, expected_comm);
            let actual = match GradedGraphPair::new(&u, &u).discover_phi(*max_degree) {
                Ok(_) => "diagonal".to_string(),
                Err(w) => format!("{} | {}", w.element, w.commutator),
            };
            (expected, actual, None)
        }
        TwistedHook {
            alphabet: a,
            tree: t,
            expected,
        } => {
            let x = tree(t, &alphabet(a)?)?;
            let closed = twisted_hook(&x);
            let brute = linear_extensions(&x, true, LINEAR_EXTENSION_BOUND)?;
            (
                format!("{expected} {expected}"),
                format!("{closed} {brute}"),
                None,
            )
        }
        VStar {
            alphabet: a,
            tree: t,
            expected,
        } => {
            let x = tree(t, &alphabet(a)?)?;
            (expected.join(" ; "), terms_csv(&v_star_free(&x)), None)
        }
        VFree {
            alphabet: a,
            tree: t,
            expected,
        } => {
            let al = alphabet(a)?;
            let x = tree(t, &al)?;
            (expected.join(" ; "), terms_csv(&v_free(&x, &al)), None)
        }
        Meet {
            alphabet: a,
            left,
            right,
            expected,
        } => {
            let al = alphabet(a)?;
            let m = meet(&tree(left, &al)?, &tree(right, &al)?);
            (expected.clone(), m.to_string(), None)
        }
        Join {
            alphabet: a,
            left,
            right,
            expected,
        } => {
            let al = alphabet(a)?;
            let j = join(&tree(left, &al)?, &tree(right, &al)?)?;
            (expected.clone(), j.to_string(), None)
        }
        ShadowLoad {
            alphabet: a,
            tree: t,
            shadow: sh,
            load: ld,
        } => {
            let s = shadow(&tree(t, &alphabet(a)?)?)?;
            (format!("{sh} {ld}"), format!("{s} {}", load(&s)), None)
        }
        Stringy {
            alphabet: a,
            expected,
        } => {
            let al = alphabet(a)?;
            let got: Vec<BigInt> = (0..expected.len()).map(|d| stringy_count(&al, d)).collect();
            (csv(expected), csv(&got), None)
        }
        IntervalSeriesQ1 {
            alphabet: a,
            expected,
        } => {
            let s = interval_series(&alphabet(a)?, expected.len().saturating_sub(1))?;
            (csv(expected), csv(&s.at_q_one()?), None)
        }
        IntervalSeries { alphabet: a, rows } => {
            let s = interval_series(&alphabet(a)?, rows.len().saturating_sub(1))?;
            let got: Vec<Vec<i64>> = (0..rows.len())
                .map(|j| {
                    (0..=j)
                        .map(|i| s.coeff(i, j).to_integer().to_i64().unwrap_or(i64::MAX))
                        .collect()
                })
                .collect();
            let render =
                |r: &[Vec<i64>]| r.iter().map(|row| csv(row)).collect::<Vec<_>>().join(" | ");
            let reversed: Vec<Vec<i64>> = got
                .iter()
                .map(|row| row.iter().rev().copied().collect())
                .collect();
            let note = (rows != &got && &reversed == rows).then(|| {
                "the expected rows are the q-reversal of the computed ones: they count \
                 intervals [s, t] by deg t - deg s instead of deg s"
                    .to_string()
            });
            (render(rows), render(&got), note)
        }
        OperadHook {
            operad,
            coefficients,
        } => {
            let sel: OperadSelector = operad.parse()?;
            with_operad!(sel, op => operad_hook(op, coefficients)?)
        }
        OperadHookArityFactorial { operad, max_degree } => {
            let sel: OperadSelector = operad.parse()?;
            with_operad!(sel, op => hook_arity_factorial(op, *max_degree))
        }
        OperadDuality {
            operad,
            pair,
            max_degree,
        } => {
            let sel: OperadSelector = operad.parse()?;
            let pair: Pair = pair.parse()?;
            with_operad!(sel, op => {
                let r = check_operad_duality(op, pair, *max_degree);
                let declared = pair == op.dual_pair();
                let expected = format!("declared pair, diagonal up to degree {max_degree}");
                let actual = match (&r.failure, declared) {
                    (_, false) => format!("pair {pair} is not the declared pair {}", op.dual_pair()),
                    (None, true) => expected.clone(),
                    (Some(w), true) => format!("fails at {}: {}", w.element, w.commutator),
                };
                (expected, actual, None)
            })
        }
        OperadNotDiagonal {
            operad,
            pair,
            max_degree,
            witness,
            commutator,
        } => {
            let sel: OperadSelector = operad.parse()?;
            let pair: Pair = pair.parse()?;
            with_operad!(sel, op => {
                let expected = format!("{} | {}", op.parse(witness)?, combination_from_map(op, commutator)?);
                let actual = match check_operad_duality(op, pair, *max_degree).failure {
                    None => "diagonal".to_string(),
                    Some(w) => format!("{} | {}", w.element, w.commutator),
                };
                (expected, actual, None)
            })
        }
    })
}

fn operad_hook<O: Operad>(op: &O, coefficients: &BTreeMap<String, i64>) -> Result<Evaluated> {
    let expected = combination_from_map(op, coefficients)?;
    let d = expected.support().map(|x| op.degree(x)).max().unwrap_or(0);
    let h = hook_table(&PrefixGraph::new(op), d);
    let actual: Combination<O::Elem> = expected
        .support()
        .map(|x| (x.clone(), h.get(x).cloned().unwrap_or_default()))
        .collect();
    Ok((expected.to_string(), actual.to_string(), None))
}

fn hook_arity_factorial<O: Operad>(op: &O, max_degree: usize) -> Evaluated {
    let h = hook_table(&PrefixGraph::new(op), max_degree);
    let mut count = 0usize;
    let mut first_bad = None;
    for r in 0..=max_degree {
        for x in op.elements_of_degree(r) {
            count += 1;
            let want = factorial(op.arity(&x) - 1);
            let got = h.get(&x).cloned().unwrap_or_else(BigInt::zero);
            if got != want && first_bad.is_none() {
                first_bad = Some(format!("{x}: expected {want}, got {got}"));
            }
        }
    }
    let expected = format!("hook(x) = (arity(x) - 1)! on {count} elements");
    let actual = first_bad.unwrap_or_else(|| expected.clone());
    (expected, actual, None)
}
