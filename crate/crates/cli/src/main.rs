use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use mcat_core::freemon::{normal_form, normal_form_checked, Morphism};
use mcat_core::linearize::{end_algebra, linearize};
use mcat_core::par::Exec;
use mcat_core::presentation::{
    builtin, builtin_names, builtin_source, parse_presentation, BuiltinParams, FrobeniusAlgebraData,
    MonoidalPresentation, ObjectWord,
};
use mcat_core::suite::{end_algebra_completed, run_suite, SuiteOptions, SUITES};

/// Presentations of linear monoidal categories and their endomorphism algebras.
#[derive(Parser)]
#[command(name = "mcat", version)]
struct Cli {
    /// Run everything on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Truncated presentation of the underlying linear category.
    Linearize {
        #[command(flatten)]
        input: Input,
        /// Longest object word to emit.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        max_len: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Algebra presentation of End(object).
    EndAlg {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        object: ObjectArg,
        #[command(flatten)]
        output: Output,
    },
    /// Dimension or graded counts of End(object).
    Dim {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        object: ObjectArg,
        /// Degree budget for completion [default: 2 * strands * longest relation].
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        max_deg: Option<u32>,
        #[command(flatten)]
        output: Output,
    },
    /// Interchange normal form of a morphism expression.
    Nf {
        #[command(flatten)]
        input: Input,
        /// Expression in the presentation language, e.g. "s a a ; a a s".
        #[arg(long)]
        expr: String,
        #[command(flatten)]
        output: Output,
    },
    /// Run a check suite.
    Check {
        #[arg(long, default_value = "all", value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random cases for the interchange suite.
        #[arg(long, default_value_t = 1000)]
        cases: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Built-in presentations.
    Examples {
        #[command(subcommand)]
        command: ExamplesCommand,
    },
}

#[derive(Subcommand)]
enum ExamplesCommand {
    List,
    /// Print the source of a builtin.
    Show {
        name: String,
        #[arg(long)]
        algebra: Option<String>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Builtin presentation name (see `mcat examples list`).
    #[arg(long)]
    builtin: Option<String>,
    /// Presentation file.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct Input {
    #[command(flatten)]
    source: Source,
    /// Auxiliary algebra for wreath builtins: Z<n> or trivial [default: Z2].
    #[arg(long)]
    algebra: Option<String>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ObjectArg {
    /// Object word, space separated, e.g. "a a a".
    #[arg(long)]
    object: Option<String>,
    /// Power of one object, e.g. a:4.
    #[arg(long)]
    object_power: Option<String>,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Output {
    fn emit(&self, text: String, json: serde_json::Value) -> Result<()> {
        let body = match self.format {
            Format::Text => text,
            Format::Json => serde_json::to_string_pretty(&json)? + "\n",
        };
        match &self.out {
            Some(path) => fs::write(path, body).with_context(|| format!("writing {}", path.display())),
            None => {
                std::io::stdout().write_all(body.as_bytes())?;
                Ok(())
            }
        }
    }
}

fn algebra_params(name: Option<&str>) -> Result<BuiltinParams> {
    let algebra = FrobeniusAlgebraData::from_name(name.unwrap_or("Z2"))?;
    Ok(BuiltinParams { algebra: Some(algebra) })
}

fn load(input: &Input) -> Result<MonoidalPresentation> {
    match (&input.source.builtin, &input.source.file) {
        (Some(name), _) => Ok(builtin(name, &algebra_params(input.algebra.as_deref())?)?),
        (None, Some(path)) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            parse_presentation(&text).with_context(|| format!("in {}", path.display()))
        }
        (None, None) => unreachable!("clap requires one source"),
    }
}

fn object(p: &MonoidalPresentation, arg: &ObjectArg) -> Result<ObjectWord> {
    if let Some(text) = &arg.object {
        return Ok(p.parse_word(text)?);
    }
    let given = arg.object_power.as_deref().expect("clap requires one object form");
    let Some((name, n)) = given.split_once(':') else { bail!("--object-power expects NAME:N, got '{given}'") };
    let x = p.object_id(name.trim()).with_context(|| format!("unknown object '{name}'"))?;
    let n: usize = n.trim().parse().with_context(|| format!("bad power in '{given}'"))?;
    Ok(ObjectWord::power(x, n))
}

fn run(cli: Cli) -> Result<bool> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    match cli.command {
        Command::Linearize { input, max_len, output } => {
            let p = load(&input)?;
            let l = linearize(&p, max_len as usize)?;
            output.emit(l.to_text(&p), l.to_json(&p))?;
        }
        Command::EndAlg { input, object: obj, output } => {
            let p = load(&input)?;
            let a = end_algebra(&p, &object(&p, &obj)?)?;
            let mut text = a.to_text(&p);
            text.push_str(
                "right-counted index = strands to the right + 1; for crossings on d strands this is d - 1 - offset\n",
            );
            output.emit(text, a.to_json(&p))?;
        }
        Command::Dim { input, object: obj, max_deg, output } => {
            let p = load(&input)?;
            let x = object(&p, &obj)?;
            let start = Instant::now();
            let e = end_algebra_completed(&p, &x, max_deg.map(|d| d as usize), exec)?;
            let q = e.quotient_dim();
            eprintln!("completed in {:.3} s", start.elapsed().as_secs_f64());
            let word = p.display_word(&x).to_string();
            let mut text = format!(
                "End({word}) over {}: {} generators, {} relations\ndegree bound {}, basis {}\n",
                p.field().name(),
                e.algebra.generators.len(),
                e.algebra.relations.len(),
                q.verified_degree,
                if q.complete { "complete" } else { "truncated" },
            );
            match q.dimension {
                Some(n) => text.push_str(&format!("finite, dimension {n}\n")),
                None => text.push_str(&format!("not finite within degree {}\n", q.verified_degree)),
            }
            let counts: Vec<String> = q.counts.iter().map(u128::to_string).collect();
            let cumulative: Vec<String> = q.cumulative().iter().map(u128::to_string).collect();
            text.push_str(&format!("normal words per degree: {}\n", counts.join(" ")));
            text.push_str(&format!("cumulative: {}\n", cumulative.join(" ")));
            let json = json!({
                "object": word,
                "field": p.field(),
                "generators": e.algebra.generators.len(),
                "relations": e.algebra.relations.len(),
                "max_degree": e.max_degree,
                "verified_degree": q.verified_degree,
                "complete": q.complete,
                "finite": q.finite,
                "dimension": q.dimension.map(|n| n.to_string()),
                "counts": counts,
                "groebner": e.state,
            });
            output.emit(text, json)?;
        }
        Command::Nf { input, expr, output } => {
            let p = load(&input)?;
            let parsed = p.parse_expr(&expr)?;
            let input = Morphism::from_expr(&p, &parsed)?;
            let converged = normal_form_checked(&p, &input).is_some();
            if !converged {
                eprintln!("warning: a floating loop kept rewriting; result is not canonical");
            }
            let m = normal_form(&p, &input);
            let shown = m.display(&p).to_string();
            let json = json!({
                "domain": p.display_word(m.domain()).to_string(),
                "codomain": p.display_word(m.codomain()).to_string(),
                "normal_form": shown,
                "converged": converged,
            });
            output.emit(format!("{shown}\n"), json)?;
        }
        Command::Check { suite, seed, cases, output } => {
            let results = run_suite(&suite, &SuiteOptions { seed, cases, exec })?;
            let passed = results.iter().all(|r| r.passed);
            let mut text = String::new();
            for r in &results {
                let mark = if r.passed { "PASS" } else { "FAIL" };
                text.push_str(&format!("{mark}  {:<12} {:<58} {}\n", r.suite, r.name, r.detail));
                eprintln!("{} / {}: {} ms", r.suite, r.name, r.millis);
            }
            let n_pass = results.iter().filter(|r| r.passed).count();
            text.push_str(&format!("{n_pass}/{} checks passed\n", results.len()));
            let rows: Vec<_> = results
                .iter()
                .map(|r| json!({ "suite": r.suite, "name": r.name, "passed": r.passed, "detail": r.detail }))
                .collect();
            output.emit(
                text,
                json!({ "suite": suite, "seed": seed, "cases": cases, "passed": passed, "results": rows }),
            )?;
            return Ok(passed);
        }
        Command::Examples { command } => match command {
            ExamplesCommand::List => {
                for name in builtin_names() {
                    println!("{name}");
                }
            }
            ExamplesCommand::Show { name, algebra } => {
                print!("{}", builtin_source(&name, &algebra_params(algebra.as_deref())?)?);
            }
        },
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
