use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use linres::groebner::{ideal_power, reduced_groebner, IdealGens};
use linres::hilbert::{hs_bigraded, hs_quotient};
use linres::homology::betti_table;
use linres::parse::{parse_problem, parse_transform_map, ProblemFile};
use linres::pipeline::{
    echo_input, render_text, ring_string, run_pipeline, summarize_rees, PipelineOptions,
};
use linres::poly::{MonomialOrder, OrderKind, Precedence};
use linres::presets;
use linres::rees::{format_census, rees_presentation};
use linres::transform::{BiTransform, SearchConfig, SearchMode};
use linres::{Error, Result};

#[derive(Parser)]
#[command(name = "linres", version, about = "Linear resolutions of powers via Rees algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced Gröbner basis of the ideal (or of its power with --power).
    Gb(Common),
    /// Rees presentation ideal P and its bidegree census.
    Rees(Common),
    /// Full criterion run; exit code 0 if it passes, 2 if not.
    Criterion(CriterionArgs),
    /// Seeded search for a transform that makes the criterion pass.
    Search(SearchArgs),
    /// Graded Betti table and regularity of a monomial ideal.
    Betti(Common),
    /// Hilbert series of S/I^k, optionally also of T/in(P).
    Hilbert(HilbertArgs),
    /// Generators of I^k.
    Power(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Lex,
    Degrevlex,
}

#[derive(Clone, Copy, ValueEnum)]
enum PrecArg {
    Xt,
    Tx,
}

#[derive(Args)]
struct Common {
    /// Problem file (see README for the grammar).
    problem: Option<PathBuf>,
    /// Built-in problem instead of a file.
    #[arg(long, conflicts_with = "problem")]
    preset: Option<String>,
    /// Which ideal of the problem to use (default: the first).
    #[arg(long)]
    ideal: Option<String>,
    #[arg(long, value_enum)]
    order: Option<OrderArg>,
    #[arg(long, value_enum)]
    prec: Option<PrecArg>,
    /// Work with I^K instead of I.
    #[arg(long, value_name = "K")]
    power: Option<u32>,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CriterionArgs {
    #[command(flatten)]
    common: Common,
    /// Transform map file (`x4 -> x1 + x4` per line).
    #[arg(long, value_name = "FILE")]
    transform: Option<PathBuf>,
    /// Also compute reg(I^k) for k up to the threshold (monomial ideals).
    #[arg(long)]
    betti: bool,
    /// Also compute Hilbert series of the powers and of T/in(g(P)).
    #[arg(long)]
    hilbert: bool,
    /// Include wall-clock timings (makes JSON output run-dependent).
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Maximum number of candidates.
    #[arg(long, default_value_t = 64)]
    budget: usize,
    #[arg(long, default_value_t = 2)]
    max_off_diag: usize,
    /// Candidates evaluated per batch.
    #[arg(long, default_value_t = 8)]
    batch: usize,
    /// Dense random transforms instead of sparse upper-triangular ones.
    #[arg(long)]
    dense: bool,
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct HilbertArgs {
    #[command(flatten)]
    common: Common,
    /// Also print the bigraded series of T/in(P).
    #[arg(long)]
    bigraded: bool,
}

struct Loaded {
    problem: ProblemFile,
    name: String,
    ideal: IdealGens,
    order: MonomialOrder,
}

impl Common {
    fn load(&self) -> Result<Loaded> {
        let problem = match (&self.problem, &self.preset) {
            (_, Some(name)) => presets::preset(name)?,
            (Some(path), None) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    Error::Invalid(format!("cannot read {}: {e}", path.display()))
                })?;
                parse_problem(&text)?
            }
            (None, None) => {
                return Err(Error::Invalid(
                    "give a problem file or --preset (one of: ".to_string()
                        + &presets::PRESET_NAMES.join(", ")
                        + ")",
                ))
            }
        };
        let named = problem.ideal(self.ideal.as_deref())?;
        let name = named.name.clone();
        let ideal = IdealGens::new(problem.canonical_ring(), named.gens.clone());
        let base = problem.order.unwrap_or_else(MonomialOrder::degrevlex);
        let kind = match self.order {
            Some(OrderArg::Lex) => OrderKind::Lex,
            Some(OrderArg::Degrevlex) => OrderKind::DegRevLex,
            None => base.kind,
        };
        let prec = match self.prec {
            Some(PrecArg::Xt) => Precedence::XBeforeT,
            Some(PrecArg::Tx) => Precedence::TBeforeX,
            None => base.precedence,
        };
        Ok(Loaded {
            problem,
            name,
            ideal,
            order: MonomialOrder::new(kind, prec),
        })
    }

    fn powered(&self, loaded: &Loaded) -> Result<(String, IdealGens)> {
        match self.power {
            Some(k) => Ok((
                format!("{}^{k}", loaded.name),
                ideal_power(&loaded.ideal, k)?,
            )),
            None => Ok((loaded.name.clone(), loaded.ideal.clone())),
        }
    }
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn load_transform(loaded: &Loaded, path: Option<&PathBuf>) -> Result<Option<BiTransform>> {
    let spec = linres::poly::RingSpec::new(loaded.problem.ring.x_count, loaded.ideal.len());
    let assignments = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", p.display())))?;
            parse_transform_map(&text, &spec)?
        }
        None if !loaded.problem.transform.is_empty() => {
            // declared in the problem file against the x/t ring
            parse_transform_map(
                &loaded
                    .problem
                    .transform
                    .iter()
                    .map(|a| {
                        format!(
                            "{} -> {}\n",
                            loaded.problem.ring.var_name(a.var),
                            linres::parse::display_linear(&a.image, &loaded.problem.ring)
                        )
                    })
                    .collect::<String>(),
                &spec,
            )?
        }
        None => return Ok(None),
    };
    BiTransform::from_assignments(&spec, &assignments).map(Some)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gb(c) => {
            let loaded = c.load()?;
            let (name, ideal) = c.powered(&loaded)?;
            let gb = reduced_groebner(&ideal.with_order(loaded.order));
            let spec = *ideal.spec();
            let elems: Vec<String> = gb.elements.iter().map(|g| g.display(&spec).to_string()).collect();
            if c.json {
                print_json(&json!({
                    "schema": 1,
                    "ideal": name,
                    "ring": ring_string(&spec),
                    "order": loaded.order.short_name(),
                    "basis": elems,
                }));
            } else {
                println!("reduced Gröbner basis of {name} ({}), {} elements:", loaded.order, elems.len());
                for e in elems {
                    println!("  {e}");
                }
            }
        }
        Command::Rees(c) => {
            let loaded = c.load()?;
            let (name, ideal) = c.powered(&loaded)?;
            let rees = rees_presentation(&ideal, loaded.order)?;
            let summary = summarize_rees(&rees);
            let spec = rees.spec();
            let lms: Vec<String> = rees
                .p
                .leading_monomials()
                .iter()
                .map(|m| m.display(&spec).to_string())
                .collect();
            if c.json {
                print_json(&json!({
                    "schema": 1,
                    "input": echo_input(&name, &ideal)?,
                    "order": loaded.order.short_name(),
                    "rees": summary,
                    "initial": lms,
                }));
            } else {
                println!("P for {name} in {} ({}):", ring_string(&spec), loaded.order);
                println!("  minimal generators by bidegree: {}", summary.census);
                println!("  reduced basis: {} elements, {}", summary.gb_size, summary.gb_census);
                println!("  in(P) = ({})", lms.join(", "));
            }
        }
        Command::Criterion(a) => {
            let loaded = a.common.load()?;
            let (name, ideal) = a.common.powered(&loaded)?;
            let transform = load_transform(&loaded, a.transform.as_ref())?;
            let opts = PipelineOptions {
                order: loaded.order,
                transform,
                betti: a.betti,
                hilbert: a.hilbert,
                timings: a.timings,
                ..PipelineOptions::default()
            };
            let report = run_pipeline(&name, &ideal, &opts)?;
            if a.common.json {
                print!("{}", report.to_json());
            } else {
                print!("{}", render_text(&report));
            }
            return Ok(exit_for(report.passes()));
        }
        Command::Search(a) => {
            let loaded = a.common.load()?;
            let (name, ideal) = a.common.powered(&loaded)?;
            let cfg = SearchConfig {
                seed: a.seed,
                max_candidates: a.budget,
                max_off_diag_per_block: a.max_off_diag,
                batch_size: a.batch,
                mode: if a.dense { SearchMode::Dense } else { SearchMode::SparseTriangular },
                ..SearchConfig::default()
            };
            let opts = PipelineOptions {
                order: loaded.order,
                search: Some(cfg),
                timings: a.timings,
                ..PipelineOptions::default()
            };
            let report = run_pipeline(&name, &ideal, &opts)?;
            if a.common.json {
                print!("{}", report.to_json());
            } else {
                print!("{}", render_text(&report));
            }
            return Ok(exit_for(report.passes()));
        }
        Command::Betti(c) => {
            let loaded = c.load()?;
            let (name, ideal) = c.powered(&loaded)?;
            if !ideal.is_monomial() {
                return Err(Error::Invalid(format!(
                    "{name} is not monomial; Betti numbers are only computed for monomial ideals"
                )));
            }
            let table = betti_table(&ideal)?;
            let reg = table.regularity().ok_or(Error::ZeroIdeal)?;
            if c.json {
                let entries: Vec<_> = table
                    .entries
                    .iter()
                    .map(|(&(i, j), &v)| json!({"i": i, "j": j, "beta": v}))
                    .collect();
                print_json(&json!({
                    "schema": 1,
                    "ideal": name,
                    "betti": entries,
                    "regularity": reg,
                }));
            } else {
                println!("Betti table of {name} (rows j - i, columns i):");
                print!("{}", table.render());
                println!("reg({name}) = {reg}");
            }
        }
        Command::Hilbert(a) => {
            let loaded = a.common.load()?;
            let (name, ideal) = a.common.powered(&loaded)?;
            let hs = hs_quotient(&ideal)?;
            let bigraded = if a.bigraded {
                let rees = rees_presentation(&loaded.ideal, loaded.order)?;
                let in_p = IdealGens::from_monomials(rees.t_ring().clone(), rees.p.leading_monomials());
                Some((format_census(&rees.census), hs_bigraded(&in_p)?))
            } else {
                None
            };
            if a.common.json {
                print_json(&json!({
                    "schema": 1,
                    "ideal": name,
                    "series": hs,
                    "initial_bigraded": bigraded.as_ref().map(|b| &b.1),
                    "order": loaded.order.short_name(),
                }));
            } else {
                println!("HS(S/{name}) = {hs}");
                if let Some((_, b)) = bigraded {
                    println!("HS(T/in(P)) ({}) = {b}", loaded.order);
                }
            }
        }
        Command::Power(c) => {
            let loaded = c.load()?;
            let k = c.power.unwrap_or(1);
            let p = ideal_power(&loaded.ideal, k)?;
            let spec = *p.spec();
            let gens: Vec<String> = p.gens.iter().map(|g| g.display(&spec).to_string()).collect();
            if c.json {
                print_json(&json!({
                    "schema": 1,
                    "ideal": format!("{}^{k}", loaded.name),
                    "generators": gens,
                }));
            } else {
                println!("{}^{k}: {} generators", loaded.name, gens.len());
                for g in gens {
                    println!("  {g}");
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn exit_for(passes: bool) -> ExitCode {
    if passes {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
