use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use exstat::{
    builtin_from_spec, emit_dot, expand_theta, parse_process, reconstruct_process,
    simplify_randomly, ExcitationModel, Expression, FiniteAbelianGroup, Geometry, IdentityFamily,
    SimplifyOptions, Statistics, StatsOptions,
};
use exstat_cli::{parse_generators, parse_model, GeneratorEntry, InputError, Report};

#[derive(Parser)]
#[command(
    name = "exstat",
    version,
    about = "Statistics of invertible excitations in finite lattice models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute T and T_f and write generator expressions.
    Compute {
        #[command(flatten)]
        model: ModelArgs,
        /// Directory for the report and generator files.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the order code of an expression: 0 if not invariant, else its order modulo identities.
    Order {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        expr: ExprArgs,
    },
    /// Reduce the norm of an expression by random identity moves.
    Simplify {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        expr: ExprArgs,
        #[arg(long, default_value_t = 10_000)]
        tries: usize,
        #[arg(long, default_value_t = 16)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Probability of accepting moves that keep the norm.
        #[arg(long, default_value_t = 0.0)]
        plateau: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Find a process word whose expansion is the given closed expression.
    Reconstruct {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        expr: ExprArgs,
        /// Base configuration of the process.
        #[arg(long)]
        base: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write an expression as a Graphviz digraph on the configuration graph.
    Draw {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        expr: ExprArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Add the expansions of processes to the identities and report modified orders.
    Impose {
        #[command(flatten)]
        model: ModelArgs,
        /// Process to impose at every configuration; repeatable.
        #[arg(long = "impose", required = true)]
        imposed: Vec<String>,
        /// Expressions to test; defaults to generators of T.
        #[arg(long)]
        expr: Vec<PathBuf>,
    },
}

#[derive(Args)]
struct ModelArgs {
    /// Builtin geometry, `name` or `name:param`.
    #[arg(long, conflicts_with = "model", required_unless_present = "model")]
    builtin: Option<String>,
    /// Fusion group, e.g. Z2 or Z2xZ2.
    #[arg(long, default_value = "Z2")]
    group: String,
    /// Excitation dimension; -1 for point charges. Defaults to the builtin's.
    #[arg(long, allow_hyphen_values = true)]
    p: Option<i32>,
    /// Generating set as residue lists separated by '|'.
    #[arg(long)]
    generators: Option<String>,
    /// Model file.
    #[arg(long)]
    model: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Family::PairMinimal)]
    family: Family,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    PairMinimal,
    MinimalSets,
}

#[derive(Args)]
struct ExprArgs {
    /// Expression file.
    #[arg(long = "expr", conflicts_with = "process")]
    file: Option<PathBuf>,
    /// Process word, expanded at `--at`.
    #[arg(long)]
    process: Option<String>,
    /// Configuration for `--process`, as `[r1,...]`.
    #[arg(long)]
    at: Option<String>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_model(args: &ModelArgs) -> Result<(ExcitationModel, String)> {
    if let Some(path) = &args.model {
        let text = read(path)?;
        let m = parse_model(&text).with_context(|| format!("in model file {}", path.display()))?;
        return Ok((m, format!("file {}", path.display())));
    }
    let spec = args
        .builtin
        .as_deref()
        .expect("clap requires a model source");
    let b = builtin_from_spec(spec).map_err(|e| InputError {
        line: 0,
        msg: format!("--builtin: {e}"),
    })?;
    let group: FiniteAbelianGroup = args.group.parse()?;
    let gens = match &args.generators {
        Some(g) => parse_generators(&group, 0, g)?,
        None => None,
    };
    let p = args.p.unwrap_or(b.default_p);
    if !b.desk_scale {
        eprintln!(
            "warning: '{}' is far beyond desk scale; the computation may not finish",
            b.name
        );
    }
    let m = match &b.geometry {
        Geometry::Simplicial(c) => ExcitationModel::from_simplicial(c, &group, p, gens.as_deref())?,
        Geometry::Graph(g) => ExcitationModel::from_embedded_graph(g, &group, gens.as_deref())?,
    };
    Ok((m, format!("builtin {spec}, G = {group}, p = {p}")))
}

fn stats_options(args: &ModelArgs) -> StatsOptions {
    let family = match args.family {
        Family::PairMinimal => IdentityFamily::PairMinimal,
        Family::MinimalSets => IdentityFamily::MinimalSets,
    };
    StatsOptions {
        family,
        ..StatsOptions::default()
    }
}

fn load_expression(m: &ExcitationModel, args: &ExprArgs) -> Result<Expression> {
    match (&args.file, &args.process) {
        (Some(path), _) => {
            Ok(Expression::parse(&read(path)?, m)
                .with_context(|| format!("in {}", path.display()))?)
        }
        (None, Some(word)) => {
            let w = parse_process(word, m).context("in --process")?;
            let a = match &args.at {
                Some(c) => exstat::expr::parse_config(c, m).context("in --at")?,
                None => 0,
            };
            Ok(expand_theta(m, &w, a).0)
        }
        (None, None) => bail!("give an expression with --expr or --process"),
    }
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Compute { model, out } => {
            let (m, desc) = load_model(&model)?;
            let start = Instant::now();
            let st = Statistics::with_options(&m, stats_options(&model))?;
            let r = st.compute()?;
            eprintln!("computed in {:.2?}", start.elapsed());
            let mut generators = Vec::new();
            for (i, g) in r.generators.iter().enumerate() {
                let file = format!("generator-{i}.expr");
                if let Some(dir) = &out {
                    fs::create_dir_all(dir)?;
                    fs::write(dir.join(&file), g.to_text(&m))?;
                }
                generators.push(GeneratorEntry {
                    file,
                    order: st.order_of(g)?.to_string(),
                    norm: g.norm1(),
                });
            }
            let report = Report {
                model: desc,
                dim_e: r.dim_e,
                identity_count: r.identity_count,
                dim_e_inv: r.dim_e_inv,
                t: r.t.to_string(),
                t_f: r.t_f.to_string(),
                generators,
            };
            let text = report.to_text();
            if let Some(dir) = &out {
                fs::create_dir_all(dir)?;
                fs::write(dir.join("report.txt"), &text)?;
            }
            print!("{text}");
        }
        Command::Order { model, expr } => {
            let (m, _) = load_model(&model)?;
            let e = load_expression(&m, &expr)?;
            let st = Statistics::with_options(&m, stats_options(&model))?;
            println!("{}", st.order_of(&e)?);
        }
        Command::Simplify {
            model,
            expr,
            tries,
            restarts,
            seed,
            plateau,
            out,
        } => {
            let (m, _) = load_model(&model)?;
            let e = load_expression(&m, &expr)?;
            let st = Statistics::with_options(&m, stats_options(&model))?;
            let s = simplify_randomly(
                &st,
                &e,
                &SimplifyOptions {
                    tries,
                    restarts,
                    seed,
                    plateau,
                },
            )?;
            eprintln!("norm {} -> {} (restart {})", e.norm1(), s.norm, s.restart);
            let text = format!("# norm {}\n{}", s.norm, s.expression.to_text(&m));
            write_or_print(out.as_deref(), &text)?;
        }
        Command::Reconstruct {
            model,
            expr,
            base,
            out,
        } => {
            let (m, _) = load_model(&model)?;
            let e = load_expression(&m, &expr)?;
            let base = match &base {
                Some(c) => exstat::expr::parse_config(c, &m).context("in --base")?,
                None => 0,
            };
            let w = reconstruct_process(&m, &e, base)?;
            eprintln!("length {}", w.len());
            write_or_print(out.as_deref(), &format!("{}\n", w.display(&m)))?;
        }
        Command::Draw { model, expr, out } => {
            let (m, _) = load_model(&model)?;
            let e = load_expression(&m, &expr)?;
            write_or_print(out.as_deref(), &emit_dot(&m, &e))?;
        }
        Command::Impose {
            model,
            imposed,
            expr,
        } => {
            let (m, _) = load_model(&model)?;
            let words = imposed
                .iter()
                .map(|w| parse_process(w, &m).with_context(|| format!("in --impose '{w}'")))
                .collect::<Result<Vec<_>>>()?;
            let st = Statistics::with_options(&m, stats_options(&model))?;
            let targets: Vec<(String, Expression)> = if expr.is_empty() {
                let r = st.compute()?;
                println!("T = {}", r.t);
                r.generators
                    .into_iter()
                    .enumerate()
                    .map(|(i, g)| (format!("generator {i}"), g))
                    .collect()
            } else {
                expr.iter()
                    .map(|p| Ok((p.display().to_string(), Expression::parse(&read(p)?, &m)?)))
                    .collect::<Result<_>>()?
            };
            let ext = st.impose(&words)?;
            println!("T_f with imposed processes = {}", ext.t_f());
            for (name, e) in &targets {
                let before = st.order_of(e)?;
                let after = if before.is_zero() {
                    before.clone()
                } else {
                    ext.order_of(e)?
                };
                println!("{name}: order {before}, modified order {after}");
            }
        }
    }
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.downcast_ref::<InputError>().is_some() {
            return 2;
        }
        if let Some(e) = cause.downcast_ref::<exstat::Error>() {
            if e.is_parse() {
                return 2;
            }
            if e.is_resource_limit() {
                return 3;
            }
        }
    }
    1
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
