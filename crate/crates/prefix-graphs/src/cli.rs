//! The `prefix-graphs` command line.
//!
//! Exit status: 0 on success, 1 when a verification fails (the output names a
//! witness), 2 on a usage error.

pub mod fixtures;

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::free_graphs::{
    hook_closed_form, phi_free, phi_self_singleton, twisted_hook, FreePrefixGraph, FreeTwistedGraph,
};
use crate::graded_graph::{
    hook_table, initial_paths_series, to_dot, to_json, DualityReport, GradedGraph, GradedGraphPair,
};
use crate::operads::*;
use crate::poly::{bigint_json, Combination, Element};
use crate::tree::{enumerate_trees, parse_term, SyntaxTree};
use crate::tree_poset::{
    interval_count, interval_elements, interval_series, interval_shadow, join, load, meet,
    stringy_count,
};
use crate::with_operad;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// What a run printed and how it ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "prefix-graphs",
    version,
    about = "Prefix graded graphs of trees and operads"
)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count or list the trees of a given degree.
    Trees {
        #[arg(long)]
        alphabet: Alphabet,
        #[arg(long)]
        degree: usize,
        /// Print every tree instead of the count.
        #[arg(long)]
        list: bool,
    },
    /// Hook coefficients of the prefix graph on all trees of a degree.
    Hook(DegreeArgs),
    /// Hook coefficients of the twisted prefix graph on all trees of a degree.
    TwistedHook(DegreeArgs),
    /// Numbers of initial paths by rank, as CSV.
    PathsSeries {
        #[arg(long)]
        alphabet: Alphabet,
        #[arg(long, value_enum)]
        graph: GraphKind,
        #[arg(long)]
        max: usize,
    },
    /// Verify a diagonal duality up to a degree.
    CheckDuality(DualityArgs),
    /// Lattice, interval and stringy-tree queries.
    Poset {
        #[command(subcommand)]
        query: PosetQuery,
    },
    /// Queries on an operad: as, dias, comp, motz or fcat:<m>.
    Operad {
        operad: OperadSelector,
        #[command(subcommand)]
        action: OperadAction,
    },
    /// Export a graph up to a rank as Graphviz DOT (or JSON with --json).
    ExportDot(ExportArgs),
    /// Check the bundled fixtures whose id contains FILTER.
    VerifyFixtures { filter: Option<String> },
}

#[derive(Args, Debug)]
struct DegreeArgs {
    #[arg(long)]
    alphabet: Alphabet,
    #[arg(long)]
    degree: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GraphKind {
    U,
    V,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("universe").required(true).args(["alphabet", "operad"])))]
struct DualityArgs {
    #[arg(long)]
    alphabet: Option<Alphabet>,
    #[arg(long)]
    operad: Option<OperadSelector>,
    /// `uv` checks V★U − UV★, `uu` checks U★U − UU★.
    #[arg(long, default_value = "uv")]
    pair: Pair,
    #[arg(long)]
    max: usize,
    /// Read off the diagonal instead of checking the known one.
    #[arg(long)]
    discover_phi: bool,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("universe").required(true).args(["alphabet", "operad"])))]
struct ExportArgs {
    #[arg(long)]
    alphabet: Option<Alphabet>,
    #[arg(long)]
    operad: Option<OperadSelector>,
    #[arg(long, value_enum)]
    graph: GraphKind,
    #[arg(long)]
    max: usize,
    #[arg(long, default_value_t = 0)]
    min: usize,
}

#[derive(Subcommand, Debug)]
enum PosetQuery {
    /// The meet of two trees.
    Meet {
        #[arg(long)]
        alphabet: Alphabet,
        left: String,
        right: String,
    },
    /// The join of two trees.
    Join {
        #[arg(long)]
        alphabet: Alphabet,
        left: String,
        right: String,
    },
    /// Cardinality, shadow and load of the interval [BOTTOM, TOP].
    Interval {
        #[arg(long)]
        alphabet: Alphabet,
        bottom: String,
        top: String,
        /// Also list the elements of the interval.
        #[arg(long)]
        list: bool,
    },
    /// The interval series; with --q, its specialization as CSV.
    IntervalSeries {
        #[arg(long)]
        alphabet: Alphabet,
        #[arg(long)]
        max: usize,
        #[arg(long, allow_hyphen_values = true)]
        q: Option<i64>,
    },
    /// Numbers of stringy trees by degree, as CSV.
    Stringy {
        #[arg(long)]
        alphabet: Alphabet,
        #[arg(long)]
        max: usize,
    },
}

#[derive(Subcommand, Debug)]
enum OperadAction {
    /// U(x) from the closed form.
    Up { element: String },
    /// V(x) from the closed form.
    V { element: String },
    /// V(x) from treelike expressions.
    VOracle {
        element: String,
        #[arg(long, default_value_t = TREELIKE_BOUND)]
        bound: usize,
    },
    /// Hook coefficients of the prefix graph up to a degree.
    Hook {
        #[arg(long)]
        max: usize,
    },
    /// The minimal generating set computed up to an arity.
    Generators {
        #[arg(long, default_value_t = 4)]
        arity_max: usize,
    },
    /// Elements of a degree.
    Elements {
        #[arg(long)]
        degree: usize,
    },
}

/// Runs the command line and returns its outcome without printing.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match execute(&cli) {
        Ok((code, mut stdout)) => {
            if !stdout.is_empty() && !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            Outcome {
                code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let out = run(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}

type Reply = Result<(i32, String)>;

fn ok(s: String) -> Reply {
    Ok((EXIT_OK, s))
}

fn csv<T: ToString>(v: &[T]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn json_out(v: Value) -> String {
    v.to_string()
}

fn execute(cli: &Cli) -> Reply {
    let js = cli.json;
    match &cli.command {
        Command::Trees {
            alphabet,
            degree,
            list,
        } => {
            let trees = enumerate_trees(alphabet, *degree);
            if js {
                let mut v = json!({"alphabet": alphabet.to_string(), "degree": degree, "count": trees.len()});
                if *list {
                    v["trees"] = trees.iter().map(|t| t.to_string()).collect();
                }
                ok(json_out(v))
            } else if *list {
                ok(lines(trees.iter()))
            } else {
                ok(trees.len().to_string())
            }
        }
        Command::Hook(a) => hooks(a, js, hook_closed_form),
        Command::TwistedHook(a) => hooks(a, js, twisted_hook),
        Command::PathsSeries {
            alphabet,
            graph,
            max,
        } => {
            let p = match graph {
                GraphKind::U => initial_paths_series(&FreePrefixGraph::new(alphabet.clone()), *max),
                GraphKind::V => {
                    initial_paths_series(&FreeTwistedGraph::new(alphabet.clone()), *max)
                }
            };
            let c = p.coefficients(max + 1);
            if js {
                ok(json_out(
                    json!({"series": c.iter().map(bigint_json).collect::<Vec<_>>()}),
                ))
            } else {
                ok(csv(&c))
            }
        }
        Command::CheckDuality(a) => check_duality(a, js),
        Command::Poset { query } => poset(query, js),
        Command::Operad { operad, action } => {
            with_operad!(*operad, op => operad_action(op, action, js))
        }
        Command::ExportDot(a) => export(a, js),
        Command::VerifyFixtures { filter } => {
            let results = fixtures::verify(filter.as_deref());
            let failed = results.iter().filter(|r| !r.passed).count();
            let code = if failed == 0 { EXIT_OK } else { EXIT_FAILURE };
            if js {
                let v: Vec<Value> = results.iter().map(|r| r.to_json()).collect();
                return Ok((code, json_out(Value::Array(v))));
            }
            let mut s = String::new();
            for r in &results {
                if r.passed {
                    let _ = writeln!(s, "PASS {}", r.id);
                } else {
                    let _ = writeln!(s, "FAIL {}", r.id);
                    let _ = writeln!(s, "  expected: {}", r.expected);
                    let _ = writeln!(s, "  actual:   {}", r.actual);
                }
                if let Some(n) = &r.note {
                    let _ = writeln!(s, "  note: {n}");
                }
            }
            let _ = write!(
                s,
                "{} fixtures, {} passed, {} failed",
                results.len(),
                results.len() - failed,
                failed
            );
            Ok((code, s))
        }
    }
}

fn lines<T: ToString>(items: impl Iterator<Item = T>) -> String {
    items.map(|x| x.to_string()).collect::<Vec<_>>().join("\n")
}

fn hooks(a: &DegreeArgs, js: bool, f: fn(&SyntaxTree) -> BigInt) -> Reply {
    let rows: Vec<(SyntaxTree, BigInt)> = enumerate_trees(&a.alphabet, a.degree)
        .into_iter()
        .map(|t| {
            let h = f(&t);
            (t, h)
        })
        .collect();
    if js {
        let v: Vec<Value> = rows
            .iter()
            .map(|(t, h)| json!({"tree": t.to_string(), "hook": bigint_json(h)}))
            .collect();
        return ok(json_out(json!({"degree": a.degree, "hooks": v})));
    }
    ok(lines(rows.iter().map(|(t, h)| format!("{h}*{t}"))))
}

fn render_report<E: Element>(report: &DualityReport<E>, d: usize, js: bool) -> Reply {
    let code = if report.passed() {
        EXIT_OK
    } else {
        EXIT_FAILURE
    };
    let out = match (&report.failure, js) {
        (None, true) => json_out(json!({"diagonal": true, "max": d, "checked": report.checked})),
        (Some(w), true) => json_out(json!({
            "diagonal": false,
            "max": d,
            "checked": report.checked,
            "witness": w.element.to_string(),
            "commutator": w.commutator.to_json(),
            "expected": w.expected.to_json(),
        })),
        (None, false) => format!(
            "ok: diagonal up to degree {d} ({} elements checked)",
            report.checked
        ),
        (Some(w), false) => format!(
            "FAIL: not the expected diagonal at {}\n  commutator: {}\n  expected:   {}",
            w.element, w.commutator, w.expected
        ),
    };
    Ok((code, out))
}

fn render_discovered<E: Element>(
    found: std::result::Result<Vec<(E, BigInt)>, crate::graded_graph::Witness<E>>,
    js: bool,
) -> Reply {
    match found {
        Ok(table) => {
            if js {
                let v: Vec<Value> = table
                    .iter()
                    .map(|(x, c)| json!({"element": x.to_string(), "phi": bigint_json(c)}))
                    .collect();
                ok(json_out(json!({"diagonal": true, "phi": v})))
            } else {
                ok(lines(table.iter().map(|(x, c)| format!("{x}: {c}"))))
            }
        }
        Err(w) => {
            let out = if js {
                json_out(json!({
                    "diagonal": false,
                    "witness": w.element.to_string(),
                    "commutator": w.commutator.to_json(),
                }))
            } else {
                format!(
                    "FAIL: not diagonal at {}\n  commutator: {}",
                    w.element, w.commutator
                )
            };
            Ok((EXIT_FAILURE, out))
        }
    }
}

fn check_duality(a: &DualityArgs, js: bool) -> Reply {
    if let Some(al) = &a.alphabet {
        let u = FreePrefixGraph::new(al.clone());
        let v = FreeTwistedGraph::new(al.clone());
        return match a.pair {
            Pair::UV => {
                let p = GradedGraphPair::new(&u, &v);
                if a.discover_phi {
                    render_discovered(p.discover_phi(a.max), js)
                } else {
                    render_report(&p.check_phi_diagonal(|t| phi_free(t, al), a.max), a.max, js)
                }
            }
            Pair::UU => {
                let p = GradedGraphPair::new(&u, &u);
                if a.discover_phi || al.len() != 1 {
                    render_discovered(p.discover_phi(a.max), js)
                } else {
                    let phi = |t: &SyntaxTree| {
                        phi_self_singleton(t, al).unwrap_or_else(|_| BigInt::zero())
                    };
                    render_report(&p.check_phi_diagonal(phi, a.max), a.max, js)
                }
            }
        };
    }
    let sel = a.operad.expect("clap enforces one universe");
    with_operad!(sel, op => {
        if a.discover_phi {
            let u = PrefixGraph::new(op);
            let v = TwistedGraph::new(op);
            let found = match a.pair {
                Pair::UV => GradedGraphPair::new(&u, &v).discover_phi(a.max),
                Pair::UU => GradedGraphPair::new(&u, &u).discover_phi(a.max),
            };
            render_discovered(found, js)
        } else {
            render_report(&check_operad_duality(op, a.pair, a.max), a.max, js)
        }
    })
}

fn parse_tree(s: &str, al: &Alphabet) -> Result<SyntaxTree> {
    parse_term(s, al)
}

fn series_rows(s: &crate::series::TruncatedSeries2, max: usize) -> Vec<Vec<BigRational>> {
    (0..=max)
        .map(|j| (0..=j).map(|i| s.coeff(i, j)).collect())
        .collect()
}

fn poset(q: &PosetQuery, js: bool) -> Reply {
    match q {
        PosetQuery::Meet {
            alphabet,
            left,
            right,
        } => {
            let m = meet(&parse_tree(left, alphabet)?, &parse_tree(right, alphabet)?);
            ok(if js {
                json_out(json!({"meet": m.to_string()}))
            } else {
                m.to_string()
            })
        }
        PosetQuery::Join {
            alphabet,
            left,
            right,
        } => {
            let j = join(&parse_tree(left, alphabet)?, &parse_tree(right, alphabet)?)?;
            ok(if js {
                json_out(json!({"join": j.to_string()}))
            } else {
                j.to_string()
            })
        }
        PosetQuery::Interval {
            alphabet,
            bottom,
            top,
            list,
        } => {
            let (s, t) = (parse_tree(bottom, alphabet)?, parse_tree(top, alphabet)?);
            let n = interval_count(&s, &t)?;
            let sh = interval_shadow(&s, &t)?;
            let elems = if *list {
                interval_elements(&s, &t)?
            } else {
                Vec::new()
            };
            if js {
                let mut v = json!({"cardinality": bigint_json(&n), "shadow": sh.to_string(), "load": bigint_json(&load(&sh))});
                if *list {
                    v["elements"] = elems.iter().map(|e| e.to_string()).collect();
                }
                return ok(json_out(v));
            }
            let mut out = format!("cardinality: {n}\nshadow: {sh}\nload: {}", load(&sh));
            for e in &elems {
                let _ = write!(out, "\n{e}");
            }
            ok(out)
        }
        PosetQuery::IntervalSeries { alphabet, max, q } => {
            let s = interval_series(alphabet, *max)?;
            match q {
                Some(qv) => {
                    let qv = BigRational::from_integer(BigInt::from(*qv));
                    let vals: Vec<BigInt> = series_rows(&s, *max)
                        .iter()
                        .map(|row| {
                            let mut acc = BigRational::zero();
                            let mut pw = BigRational::one();
                            for c in row {
                                acc += c * &pw;
                                pw *= &qv;
                            }
                            acc.to_integer()
                        })
                        .collect();
                    if js {
                        ok(json_out(
                            json!({"series": vals.iter().map(bigint_json).collect::<Vec<_>>()}),
                        ))
                    } else {
                        ok(csv(&vals))
                    }
                }
                None => {
                    if js {
                        let rows: Vec<Vec<Value>> = series_rows(&s, *max)
                            .iter()
                            .map(|r| r.iter().map(|c| bigint_json(&c.to_integer())).collect())
                            .collect();
                        ok(json_out(json!({"rows": rows})))
                    } else {
                        ok(s.to_string())
                    }
                }
            }
        }
        PosetQuery::Stringy { alphabet, max } => {
            let vals: Vec<BigInt> = (0..=*max).map(|d| stringy_count(alphabet, d)).collect();
            if js {
                ok(json_out(
                    json!({"series": vals.iter().map(bigint_json).collect::<Vec<_>>()}),
                ))
            } else {
                ok(csv(&vals))
            }
        }
    }
}

fn combination_out<E: Element>(c: &Combination<E>, js: bool) -> String {
    if js {
        json_out(c.to_json())
    } else {
        c.to_string()
    }
}

fn operad_action<O: Operad>(op: &O, action: &OperadAction, js: bool) -> Reply {
    match action {
        OperadAction::Up { element } => {
            ok(combination_out(&op.up_explicit(&op.parse(element)?), js))
        }
        OperadAction::V { element } => ok(combination_out(&op.v_explicit(&op.parse(element)?), js)),
        OperadAction::VOracle { element, bound } => {
            let x = op.parse(element)?;
            ok(combination_out(
                &Treelike::with_bound(op, *bound).v_oracle(&x)?,
                js,
            ))
        }
        OperadAction::Hook { max } => {
            let h = hook_table(&PrefixGraph::new(op), *max);
            let c: Combination<O::Elem> = h.into_iter().collect();
            if js {
                return ok(json_out(c.to_json()));
            }
            ok(lines(c.iter().map(|(x, k)| format!("{k}*{x}"))))
        }
        OperadAction::Generators { arity_max } => {
            let found = minimal_generators(op, *arity_max);
            let declared: Vec<O::Elem> = op
                .generators()
                .into_iter()
                .filter(|g| op.arity(g) <= *arity_max)
                .collect();
            let code = if found == declared {
                EXIT_OK
            } else {
                EXIT_FAILURE
            };
            let out = if js {
                json_out(json!({
                    "generators": found.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                    "matches_declared": found == declared,
                }))
            } else if code == EXIT_OK {
                lines(found.iter())
            } else {
                format!(
                    "FAIL: computed {} but declared {}",
                    lines(found.iter()).replace('\n', " "),
                    lines(declared.iter()).replace('\n', " ")
                )
            };
            Ok((code, out))
        }
        OperadAction::Elements { degree } => {
            let xs = op.elements_of_degree(*degree);
            if js {
                return ok(json_out(json!(xs
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>())));
            }
            ok(lines(xs.iter()))
        }
    }
}

fn export_graph<G: GradedGraph>(g: &G, a: &ExportArgs, js: bool) -> Reply {
    if a.min > a.max {
        return Err(Error::InvalidElement(format!(
            "--min {} exceeds --max {}",
            a.min, a.max
        )));
    }
    ok(if js {
        json_out(to_json(g, a.min, a.max))
    } else {
        to_dot(g, a.min, a.max)
    })
}

fn export(a: &ExportArgs, js: bool) -> Reply {
    if let Some(al) = &a.alphabet {
        return match a.graph {
            GraphKind::U => export_graph(&FreePrefixGraph::new(al.clone()), a, js),
            GraphKind::V => export_graph(&FreeTwistedGraph::new(al.clone()), a, js),
        };
    }
    let sel = a.operad.expect("clap enforces one universe");
    with_operad!(sel, op => match a.graph {
        GraphKind::U => export_graph(&PrefixGraph::new(op), a, js),
        GraphKind::V => export_graph(&TwistedGraph::new(op), a, js),
    })
}
