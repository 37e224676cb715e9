//! `ielie`: command-line front end.
//!
//! Exit codes: 0 success (including reports with a failing verdict),
//! 1 domain error, 2 usage or parse error, 3 resource limit.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use ielie::ctrep::{ct_character, oracle_bracket_check};
use ielie::liealg::{descend, DescentOutcome};
use ielie::sample::{jacobi_sample, DEFAULT_SEED};
use ielie::scalar::{parse_rational, render_rational};
use ielie::text::{
    parse_basis_element, parse_ct_vector, parse_element, render_ct_vector, render_element,
};
use ielie::trees::{enumerate_trees, DEFAULT_MAX_TREE_SIZE};
use ielie::verma::{
    exceptional_candidates, generic_det, int_json, kernel_at, singular_system, verma_character,
    z1_isomorphism_check, ExceptionalOutcome, GenericDet, DEFAULT_MAX_LEVEL,
};
use ielie::{act, act_on_m, bracket, Error, LambdaPoly};

#[derive(Parser)]
#[command(
    name = "ielie",
    version,
    about = "Exact computations in the insertion-elimination Lie algebra on rooted trees"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest tree size accepted by enumeration.
    #[arg(long, global = true, env = "IE_MAX_SIZE", default_value_t = DEFAULT_MAX_TREE_SIZE)]
    max_size: usize,
    /// Largest weight offset accepted by Verma computations.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_LEVEL)]
    max_level: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate or count rooted trees.
    #[command(subcommand)]
    Trees(TreesCommand),
    /// Bracket of two elements, e.g. `bracket "Dm[()]" "Dp[(()())]"`.
    Bracket { x: String, y: String },
    /// Act with an element on a tree vector, e.g. `act "Dp[()]" "2*(())"`.
    Act {
        x: String,
        v: String,
        /// Act on the quotient by the empty tree.
        #[arg(long)]
        quotient: bool,
    },
    /// Compare the bracket of two basis elements with the operator commutator.
    OracleCheck {
        x: String,
        y: String,
        /// Largest source degree.
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
    /// Run the degree-lowering descent on a homogeneous D+ element.
    Descend { x: String },
    /// Verma module computations.
    #[command(subcommand)]
    Verma(VermaCommand),
    /// Characters of the tree space and of Verma modules.
    #[command(subcommand)]
    Char(CharCommand),
    /// Check the map from W(1) to the quotient tree space at level n.
    Z1Check {
        #[arg(long)]
        n: usize,
    },
    /// Sample antisymmetry and Jacobi on random basis elements.
    JacobiSample {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        /// Largest tree size in sampled elements.
        #[arg(long, default_value_t = 4)]
        tree_size: usize,
    },
}

#[derive(Subcommand)]
enum TreesCommand {
    Enumerate {
        #[arg(long)]
        n: usize,
    },
    Count {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum VermaCommand {
    /// The pencil A + lam*B of lowest-weight conditions.
    System {
        #[arg(long)]
        n: usize,
    },
    /// Determinant of a maximal minor of the pencil.
    Det {
        #[arg(long)]
        n: usize,
    },
    /// Rational weights where the pencil has a kernel.
    Exceptional {
        #[arg(long)]
        n: usize,
    },
    /// Lowest-weight vectors at a rational weight.
    Kernel {
        #[arg(long, allow_hyphen_values = true)]
        lam: String,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum CharCommand {
    Ct {
        #[arg(long)]
        n: usize,
    },
    Verma {
        #[arg(long)]
        n: usize,
    },
}

struct Output {
    text: String,
    json: Value,
}

fn out(text: impl Into<String>, json: Value) -> Output {
    Output {
        text: text.into(),
        json,
    }
}

fn poly_json(p: &LambdaPoly) -> Value {
    json!(p.render())
}

fn run(cli: &Cli) -> Result<Output, Error> {
    let g = &cli.global;
    match &cli.command {
        Command::Trees(TreesCommand::Enumerate { n }) => {
            let trees = enumerate_trees(*n, g.max_size)?;
            let rendered: Vec<&str> = trees.iter().map(|t| t.render()).collect();
            Ok(out(rendered.join("\n"), json!({"n": n, "trees": rendered})))
        }
        Command::Trees(TreesCommand::Count { n }) => {
            let count = enumerate_trees(*n, g.max_size)?.len();
            Ok(out(count.to_string(), json!({"n": n, "count": count})))
        }
        Command::Bracket { x, y } => {
            let r = render_element(&bracket(&parse_element(x)?, &parse_element(y)?));
            Ok(out(r.clone(), json!({"result": r})))
        }
        Command::Act { x, v, quotient } => {
            let (x, v) = (parse_element(x)?, parse_ct_vector(v)?);
            let r = if *quotient {
                act_on_m(&x, &v)?
            } else {
                act(&x, &v)
            };
            let r = render_ct_vector(&r);
            Ok(out(r.clone(), json!({"result": r})))
        }
        Command::OracleCheck { x, y, n } => {
            let report = oracle_bracket_check(
                &parse_basis_element(x)?,
                &parse_basis_element(y)?,
                *n,
                g.max_size,
            )?;
            let verdict = if report.passed() { "pass" } else { "fail" };
            let mut text = format!(
                "{verdict} ({} basis vectors checked)",
                report.sources_checked
            );
            let mut discrepancy = Value::Null;
            if let Some(d) = &report.discrepancy {
                let to_q = |v: &ielie::CtVectorOver<ielie::Integer>| {
                    render_ct_vector(
                        &v.map_coefficients(|c| ielie::Rational::from_integer(c.clone())),
                    )
                };
                let (b, c) = (to_q(&d.bracket_side), to_q(&d.commutator_side));
                text.push_str(&format!(
                    "\nsource: {}\nbracket: {b}\ncommutator: {c}",
                    d.source
                ));
                discrepancy = json!({"source": d.source.render(), "bracket": b, "commutator": c});
            }
            Ok(out(
                text,
                json!({"verdict": verdict, "sources_checked": report.sources_checked, "max_degree": n, "discrepancy": discrepancy}),
            ))
        }
        Command::Descend { x } => {
            let d = descend(&parse_element(x)?)?;
            let mut lines = Vec::new();
            let mut steps = Vec::new();
            for s in &d.steps {
                let r = render_element(&s.result);
                lines.push(format!("xi = {}: {r}", s.xi));
                steps.push(json!({"xi": s.xi.render(), "result": r}));
            }
            let verdict = match &d.outcome {
                DescentOutcome::Reached { coefficient } => {
                    lines.push(format!("reached {}*Dp[()]", render_rational(coefficient)));
                    json!({"verdict": "reached", "coefficient": render_rational(coefficient), "steps": steps})
                }
                DescentOutcome::Vanished { step } => {
                    lines.push(format!("vanished at step {step}"));
                    json!({"verdict": "vanished", "step": step, "steps": steps})
                }
            };
            Ok(out(lines.join("\n"), verdict))
        }
        Command::Verma(VermaCommand::System { n }) => {
            let s = singular_system(*n, g.max_level)?;
            let pencil = s.pencil();
            let columns: Vec<String> = s.columns.iter().map(|f| f.render()).collect();
            let mut lines = vec![format!("columns: {}", columns.join(" "))];
            for (r, (t, j)) in s.rows.iter().enumerate() {
                let entries: Vec<String> = pencil.row(r).iter().map(LambdaPoly::render).collect();
                lines.push(format!("{t} {j}: [{}]", entries.join(", ")));
            }
            Ok(out(lines.join("\n"), s.to_json()))
        }
        Command::Verma(VermaCommand::Det { n }) => match generic_det(*n, g.max_level)? {
            GenericDet::Determinant { det, rows } => Ok(out(
                det.render(),
                json!({"n": n, "outcome": "determinant", "det": poly_json(&det), "rows": rows}),
            )),
            GenericDet::RankDeficient { rank, columns } => Ok(out(
                format!("rank deficient: generic rank {rank} of {columns}"),
                json!({"n": n, "outcome": "rank-deficient", "rank": rank, "columns": columns}),
            )),
        },
        Command::Verma(VermaCommand::Exceptional { n }) => {
            match exceptional_candidates(*n, g.max_level)? {
                ExceptionalOutcome::Found(e) => {
                    let list =
                        |v: &[ielie::Rational]| v.iter().map(render_rational).collect::<Vec<_>>();
                    let (c, r) = (list(&e.confirmed), list(&e.rejected));
                    Ok(out(
                        format!(
                            "det: {}\nconfirmed: {}\nrejected: {}\nresidual: {}",
                            e.det.render(),
                            or_none(&c),
                            or_none(&r),
                            e.residual.render()
                        ),
                        json!({"n": n, "outcome": "found", "det": poly_json(&e.det), "confirmed": c, "rejected": r, "residual": poly_json(&e.residual)}),
                    ))
                }
                ExceptionalOutcome::RankDeficient { rank, columns } => Ok(out(
                    format!("rank deficient: generic rank {rank} of {columns}"),
                    json!({"n": n, "outcome": "rank-deficient", "rank": rank, "columns": columns}),
                )),
            }
        }
        Command::Verma(VermaCommand::Kernel { lam, n }) => {
            let lam0 = parse_rational(lam).ok_or_else(|| Error::Parse {
                offset: 0,
                message: format!("not a rational number: {lam:?}"),
            })?;
            let vectors = kernel_at(&lam0, *n, g.max_level)?;
            let rendered: Vec<String> = vectors.iter().map(|w| w.render()).collect();
            let mut lines = vec![format!("dimension: {}", vectors.len())];
            lines.extend(rendered.iter().cloned());
            Ok(out(
                lines.join("\n"),
                json!({"n": n, "lam": render_rational(&lam0), "dimension": vectors.len(), "vectors": rendered}),
            ))
        }
        Command::Char(CharCommand::Ct { n }) => {
            let dims = ct_character(*n, g.max_size)?;
            Ok(out(join(&dims), json!({"n": n, "dims": dims})))
        }
        Command::Char(CharCommand::Verma { n }) => {
            let c = verma_character(*n, g.max_size)?;
            let series: Vec<Value> = c.product_series.iter().map(int_json).collect();
            Ok(out(
                format!(
                    "{}\nadd-root identity: {}\nproduct identity: {}",
                    join(&c.dims),
                    c.add_root_identity,
                    c.product_identity
                ),
                json!({"n": n, "dims": c.dims, "product_series": series, "add_root_identity": c.add_root_identity, "product_identity": c.product_identity}),
            ))
        }
        Command::Z1Check { n } => {
            let r = z1_isomorphism_check(*n, g.max_level)?;
            let rows: Vec<Vec<Value>> = r
                .matrix
                .to_rows()
                .iter()
                .map(|row| row.iter().map(int_json).collect())
                .collect();
            let mut lines: Vec<String> = r.matrix.to_rows().iter().map(|row| join(row)).collect();
            let det = r.determinant.as_ref().map(|d| d.to_string());
            lines.push(format!("square: {}", r.square));
            lines.push(format!(
                "determinant: {}",
                det.clone().unwrap_or_else(|| "-".into())
            ));
            lines.push(format!("invertible: {}", r.invertible));
            lines.push(format!("intertwining: {}", r.intertwining));
            let verdict = if r.invertible && r.intertwining {
                "pass"
            } else {
                "fail"
            };
            lines.push(format!("verdict: {verdict}"));
            Ok(out(
                lines.join("\n"),
                json!({"n": n, "matrix": rows, "square": r.square, "determinant": det, "invertible": r.invertible, "intertwining": r.intertwining, "verdict": verdict}),
            ))
        }
        Command::JacobiSample {
            seed,
            samples,
            tree_size,
        } => {
            if *tree_size > g.max_size {
                return Err(Error::ResourceLimit {
                    what: "tree size",
                    requested: *tree_size,
                    limit: g.max_size,
                });
            }
            let r = jacobi_sample(*seed, *samples, *tree_size)?;
            let verdict = if r.passed() { "pass" } else { "fail" };
            let first = r.first_failure.as_ref().map(|f| {
                json!({
                    "sample": f.sample,
                    "elements": f.elements.iter().map(|b| b.render()).collect::<Vec<_>>(),
                })
            });
            Ok(out(
                format!(
                    "{verdict}: seed {seed}, {samples} pairs and {samples} triples, {} antisymmetry and {} Jacobi failures",
                    r.antisymmetry_failures, r.jacobi_failures
                ),
                json!({"verdict": verdict, "seed": seed, "samples": samples, "tree_size": tree_size, "antisymmetry_failures": r.antisymmetry_failures, "jacobi_failures": r.jacobi_failures, "first_failure": first}),
            ))
        }
    }
}

fn or_none(xs: &[String]) -> String {
    if xs.is_empty() {
        "none".into()
    } else {
        xs.join(" ")
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Domain(_) => 1,
        Error::Parse { .. } => 2,
        Error::ResourceLimit { .. } => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(o) => {
            if cli.global.json {
                println!("{}", o.json);
            } else if !o.text.is_empty() {
                println!("{}", o.text);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            if cli.global.json {
                println!(
                    "{}",
                    json!({"error": e.to_string(), "exit_code": exit_code(&e)})
                );
            }
            eprintln!("ielie: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
