//! Command-line front end: canonical forms, relation deciders, invariant
//! tables, orbit censuses, and the verification suites.
//!
//! Decider verbs exit 0 when the matrices are related, 1 when they are not,
//! and 2 on usage or format errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use subperm::census::{
    brute_orbits, count_alt_orbits, count_sym_orbits, GroupKind, MatrixClass, Relation,
    DEFAULT_BUDGET,
};
use subperm::congr;
use subperm::equiv;
use subperm::error::Error;
use subperm::field::FieldCtx;
use subperm::io::{format_matrix, parse_matrix};
use subperm::matrix::Matrix;
use subperm::parabolic::{
    block_rank_table, cross_counts, p_congruent, p_equivalent, CongrKind, InvariantTable,
    ParabolicDescriptor,
};
use subperm::verify::{self, Suite};

#[derive(Parser)]
#[command(
    name = "subperm",
    version,
    about = "Canonical forms, equivalence and congruence of matrices under \
             unitriangular, Borel and parabolic actions over exact fields"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum CanonAction {
    #[value(name = "b-equiv")]
    BEquiv,
    #[value(name = "u-equiv")]
    UEquiv,
    #[value(name = "u-congr")]
    UCongr,
    #[value(name = "b-congr")]
    BCongr,
}

#[derive(Clone, Copy, ValueEnum)]
enum RecurrenceKind {
    Alt,
    Sym,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    #[value(alias = "U")]
    U,
    #[value(alias = "B")]
    B,
    #[value(alias = "P")]
    P,
}

#[derive(Clone, Copy, ValueEnum)]
enum RelationArg {
    Equivalence,
    Congruence,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    All,
    Symmetric,
    Alternating,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute a canonical form with its transforming witness.
    Canon {
        #[arg(long, value_enum)]
        action: CanonAction,
        /// Matrix file in the documented text format.
        #[arg(long = "in")]
        input: PathBuf,
        /// Also print the witness matrices.
        #[arg(long)]
        witness: bool,
        #[arg(long)]
        json: bool,
    },
    /// Decide P-equivalence of two matrices.
    Equiv {
        /// Composition of n naming the parabolic, e.g. 2,1.
        #[arg(long, value_delimiter = ',', required = true)]
        parabolic: Vec<usize>,
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Decide P-congruence of two symmetric or alternating matrices.
    Congr {
        #[arg(long, value_delimiter = ',', required = true)]
        parabolic: Vec<usize>,
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print the block-rank and cross-count invariant tables as JSON.
    Invariants {
        #[arg(long, value_delimiter = ',', required = true)]
        parabolic: Vec<usize>,
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Orbit counts from the recurrences or by brute-force partition.
    Census {
        /// Evaluate an orbit-count recurrence instead of searching.
        #[arg(long, value_enum)]
        recurrence: Option<RecurrenceKind>,
        /// Partition a matrix class into orbits by breadth-first search.
        #[arg(long)]
        brute: bool,
        #[arg(long)]
        n: usize,
        /// Field spec, e.g. GF(2), GF(2^2), TOWER(3); brute mode only.
        #[arg(long)]
        field: Option<String>,
        #[arg(long, value_enum)]
        group: Option<GroupArg>,
        /// Composition for --group p.
        #[arg(long, value_delimiter = ',')]
        parabolic: Option<Vec<usize>>,
        #[arg(long, value_enum)]
        relation: Option<RelationArg>,
        #[arg(long, value_enum)]
        class: Option<ClassArg>,
        /// Print one representative per orbit.
        #[arg(long)]
        reps: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        json: bool,
    },
    /// Run the oracle suites and report one pass/fail line per check.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        json: bool,
    },
}

fn read_matrix(path: &PathBuf) -> Result<Matrix, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_matrix(&text)
}

fn matrix_json(m: &Matrix) -> serde_json::Value {
    let rows: Vec<Vec<String>> = (0..m.n())
        .map(|r| {
            (0..m.n())
                .map(|c| m.ctx().format_elem(m.get(r, c)))
                .collect()
        })
        .collect();
    serde_json::json!({
        "field": m.ctx().spec_string(),
        "n": m.n(),
        "rows": rows,
    })
}

fn table_json(t: &InvariantTable) -> serde_json::Value {
    serde_json::json!(t.rows())
}

fn run_canon(
    action: CanonAction,
    input: &PathBuf,
    witness: bool,
    json: bool,
) -> Result<u8, Error> {
    let x = read_matrix(input)?;
    enum W {
        Equiv(equiv::EquivWitness),
        Congr(congr::CongrWitness),
    }
    let (name, y, w) = match action {
        CanonAction::BEquiv => {
            let (y, w) = equiv::b_equiv_canonical(&x);
            ("b-equiv", y, W::Equiv(w))
        }
        CanonAction::UEquiv => {
            let (y, w) = equiv::u_equiv_canonical(&x);
            ("u-equiv", y, W::Equiv(w))
        }
        CanonAction::UCongr => {
            let (y, w) = congr::u_congr_canonical(&x)?;
            ("u-congr", y, W::Congr(w))
        }
        CanonAction::BCongr => {
            let (y, w) = congr::b_congr_canonical(&x)?;
            ("b-congr", y, W::Congr(w))
        }
    };
    if json {
        let mut obj = serde_json::json!({
            "action": name,
            "canonical": matrix_json(&y),
        });
        if witness {
            obj["witness"] = match &w {
                W::Equiv(w) => serde_json::json!({
                    "h": matrix_json(&w.h),
                    "k": matrix_json(&w.k),
                }),
                W::Congr(w) => serde_json::json!({ "u": matrix_json(&w.u) }),
            };
        }
        println!("{}", serde_json::to_string_pretty(&obj).expect("valid json"));
    } else {
        print!("{}", format_matrix(&y));
        if witness {
            match &w {
                W::Equiv(w) => {
                    print!("witness h\n{}", format_matrix(&w.h));
                    print!("witness k\n{}", format_matrix(&w.k));
                }
                W::Congr(w) => print!("witness u\n{}", format_matrix(&w.u)),
            }
        }
    }
    Ok(0)
}

fn run_equiv(parabolic: &[usize], a: &PathBuf, b: &PathBuf, json: bool) -> Result<u8, Error> {
    let p = ParabolicDescriptor::from_composition(parabolic)?;
    let ma = read_matrix(a)?;
    let mb = read_matrix(b)?;
    let (related, report) = p_equivalent(&ma, &mb, &p)?;
    if json {
        let obj = serde_json::json!({
            "related": related,
            "parabolic": parabolic,
            "block_rank": { "a": table_json(&report.block_rank_left),
                            "b": table_json(&report.block_rank_right) },
            "cross_count": { "a": table_json(&report.cross_left),
                             "b": table_json(&report.cross_right) },
        });
        println!("{}", serde_json::to_string_pretty(&obj).expect("valid json"));
    } else {
        println!("{}", if related { "related" } else { "not related" });
    }
    Ok(if related { 0 } else { 1 })
}

fn run_congr(parabolic: &[usize], a: &PathBuf, b: &PathBuf, json: bool) -> Result<u8, Error> {
    let p = ParabolicDescriptor::from_composition(parabolic)?;
    let ma = read_matrix(a)?;
    let mb = read_matrix(b)?;
    let kind = if ma.is_alternating() && mb.is_alternating() {
        CongrKind::Alternating
    } else if ma.is_symmetric() && mb.is_symmetric() {
        CongrKind::Symmetric
    } else {
        return Err(Error::KindMismatch(
            "both inputs must be symmetric or both alternating".into(),
        ));
    };
    let (related, report) = p_congruent(&ma, &mb, &p, kind)?;
    if json {
        let obj = serde_json::json!({
            "related": related,
            "parabolic": parabolic,
            "kind": match kind {
                CongrKind::Symmetric => "symmetric",
                CongrKind::Alternating => "alternating",
            },
            "w_conjugacy_condition": report.condition_a,
            "block_rank": { "a": table_json(&report.equivalence.block_rank_left),
                            "b": table_json(&report.equivalence.block_rank_right) },
        });
        println!("{}", serde_json::to_string_pretty(&obj).expect("valid json"));
    } else {
        println!("{}", if related { "related" } else { "not related" });
    }
    Ok(if related { 0 } else { 1 })
}

fn run_invariants(parabolic: &[usize], input: &PathBuf) -> Result<u8, Error> {
    let p = ParabolicDescriptor::from_composition(parabolic)?;
    let m = read_matrix(input)?;
    let block = block_rank_table(&m, &p)?;
    // Cross counts live on the B-equivalence canonical form.
    let (y, _) = equiv::b_equiv_canonical(&m);
    let cross = cross_counts(&y, &p)?;
    let obj = serde_json::json!({
        "block_rank": table_json(&block),
        "cross_count": table_json(&cross),
    });
    println!("{}", serde_json::to_string_pretty(&obj).expect("valid json"));
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn run_census(
    recurrence: Option<RecurrenceKind>,
    brute: bool,
    n: usize,
    field: Option<String>,
    group: Option<GroupArg>,
    parabolic: Option<Vec<usize>>,
    relation: Option<RelationArg>,
    class: Option<ClassArg>,
    reps: bool,
    budget: u64,
    json: bool,
) -> Result<u8, Error> {
    match (recurrence, brute) {
        (Some(kind), false) => {
            let count = match kind {
                RecurrenceKind::Alt => count_alt_orbits(n),
                RecurrenceKind::Sym => count_sym_orbits(n),
            };
            if json {
                println!("{}", serde_json::json!({ "count": count.to_string() }));
            } else {
                println!("{count}");
            }
            Ok(0)
        }
        (None, true) => {
            let spec = field.ok_or_else(|| Error::Parse("--brute needs --field".into()))?;
            let ctx = FieldCtx::parse_spec(&spec)?;
            let group = match group.ok_or_else(|| Error::Parse("--brute needs --group".into()))? {
                GroupArg::U => GroupKind::U,
                GroupArg::B => GroupKind::B,
                GroupArg::P => {
                    let comp = parabolic
                        .ok_or_else(|| Error::Parse("--group p needs --parabolic".into()))?;
                    GroupKind::Parabolic(ParabolicDescriptor::from_composition(&comp)?)
                }
            };
            let relation =
                match relation.ok_or_else(|| Error::Parse("--brute needs --relation".into()))? {
                    RelationArg::Equivalence => Relation::Equivalence,
                    RelationArg::Congruence => Relation::Congruence,
                };
            let class = match class.unwrap_or(ClassArg::All) {
                ClassArg::All => MatrixClass::All,
                ClassArg::Symmetric => MatrixClass::Symmetric,
                ClassArg::Alternating => MatrixClass::Alternating,
            };
            let part = brute_orbits(&ctx, n, &group, relation, class, budget)?;
            if json {
                let mut obj = serde_json::json!({
                    "count": part.orbit_count().to_string(),
                    "members": part.member_count().to_string(),
                });
                if reps {
                    obj["representatives"] = serde_json::json!(part
                        .representatives()
                        .iter()
                        .map(matrix_json)
                        .collect::<Vec<_>>());
                }
                println!("{}", serde_json::to_string_pretty(&obj).expect("valid json"));
            } else {
                println!("{}", part.orbit_count());
                if reps {
                    for r in part.representatives() {
                        println!();
                        print!("{}", format_matrix(r));
                    }
                }
            }
            Ok(0)
        }
        _ => Err(Error::Parse(
            "census needs exactly one of --recurrence or --brute".into(),
        )),
    }
}

fn run_verify(suite: &str, seed: u64, budget: u64, json: bool) -> Result<u8, Error> {
    let suite: Suite = suite.parse()?;
    let checks = verify::run_suite(suite, seed, budget);
    if json {
        let arr: Vec<_> = checks
            .iter()
            .map(|c| {
                serde_json::json!({
                    "name": c.name,
                    "passed": c.passed,
                    "detail": c.detail,
                })
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&arr).expect("valid json"));
    } else {
        for c in &checks {
            println!("{}", c.line());
        }
    }
    Ok(if checks.iter().all(|c| c.passed) { 0 } else { 1 })
}

fn dispatch(cli: Cli) -> Result<u8, Error> {
    match cli.cmd {
        Cmd::Canon {
            action,
            input,
            witness,
            json,
        } => run_canon(action, &input, witness, json),
        Cmd::Equiv {
            parabolic,
            a,
            b,
            json,
        } => run_equiv(&parabolic, &a, &b, json),
        Cmd::Congr {
            parabolic,
            a,
            b,
            json,
        } => run_congr(&parabolic, &a, &b, json),
        Cmd::Invariants { parabolic, input } => run_invariants(&parabolic, &input),
        Cmd::Census {
            recurrence,
            brute,
            n,
            field,
            group,
            parabolic,
            relation,
            class,
            reps,
            budget,
            json,
        } => run_census(
            recurrence, brute, n, field, group, parabolic, relation, class, reps, budget, json,
        ),
        Cmd::Verify {
            suite,
            seed,
            budget,
            json,
        } => run_verify(&suite, seed, budget, json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
