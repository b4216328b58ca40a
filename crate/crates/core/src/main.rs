use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use cantor_approx::endo::CantorMapJson;
use cantor_approx::factor::{compile_factor, FactorConfig};
use cantor_approx::marker::{build_markers, MarkerConfig, MarkerStrategy};
use cantor_approx::pipeline::{approximate, verify_certificate, ApproxConfig, ConvergenceReport};
use cantor_approx::report::{self, Envelope};
use cantor_approx::{sft, CantorMap, DirectedGraph, Error, Result, Symbol};

#[derive(Parser)]
#[command(name = "cantor-approx", version, about = "Cover graphs, marker sets, factor codes and certified approximations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Omit timestamps so identical inputs give identical bytes.
    #[arg(long)]
    canonical: bool,
}

#[derive(Args)]
struct Search {
    /// Marker strategy: auto, windows or ranked.
    #[arg(long, default_value = "auto")]
    strategy: MarkerStrategy,
    /// Largest marker window radius tried.
    #[arg(long = "Lmax")]
    l_max: Option<usize>,
    /// Word budget for exhaustive scans.
    #[arg(long, default_value_t = 1 << 20)]
    budget: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Mixing, perfectness and period spectrum of a graph.
    Analyze {
        graph: PathBuf,
        /// List periodic orbits up to this least period.
        #[arg(long, default_value_t = 6)]
        orbits: usize,
        /// Write the graph as DOT to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Build and verify a marker set.
    Markers {
        graph: PathBuf,
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        search: Search,
        #[command(flatten)]
        output: Output,
    },
    /// Compile a factor code from LAMBDA into the mixing graph SIGMA.
    Factor {
        lambda: PathBuf,
        sigma: PathBuf,
        /// Words to cover: `all:K` for every K-word of SIGMA, or a comma list.
        #[arg(long, default_value = "all:3")]
        words: String,
        /// Marker radius; 2N+1 by default.
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        search: Search,
        #[command(flatten)]
        output: Output,
    },
    /// Certified approximation of MAP by conjugates of LAMBDA.
    Approximate {
        lambda: PathBuf,
        map: PathBuf,
        /// Depths, as `2..6`, `2..=6` or `2,3,4`.
        #[arg(long, default_value = "2..6")]
        depths: String,
        /// Refinement depth of the cylinder correspondence.
        #[arg(long, default_value_t = 1)]
        refine: usize,
        /// Write the cover graph of each depth as DOT into this directory.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[command(flatten)]
        search: Search,
        #[command(flatten)]
        output: Output,
    },
    /// Print and re-verify a saved convergence report.
    Report {
        report: PathBuf,
        /// Write the cover graph of each depth as DOT into this directory.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

/// Exit 2 for mathematical refusals, 1 for everything else that fails.
enum Outcome {
    Done,
    Refused(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Refused(msg)) => {
            eprintln!("refused: {msg}");
            ExitCode::from(2)
        }
        Err(Error::Refused(r)) => {
            eprintln!("refused: {r}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn parse<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = read(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn emit<T: Serialize>(value: T, output: &Output) -> Result<()> {
    let text = serde_json::to_string_pretty(&Envelope::new(value, output.canonical))?;
    match &output.out {
        Some(p) => fs::write(p, text + "\n")?,
        None => println!("{text}"),
    }
    Ok(())
}

fn parse_depths(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::Input(format!("cannot read depths {s:?}"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    let depths: Vec<usize> = if let Some((a, b)) = s.split_once("..=").or_else(|| s.split_once("..")) {
        (num(a)?..=num(b)?).collect()
    } else {
        s.split(',').map(num).collect::<Result<_>>()?
    };
    if depths.is_empty() {
        return Err(bad());
    }
    Ok(depths)
}

fn parse_words(sigma: &DirectedGraph, spec: &str) -> Result<Vec<Vec<Symbol>>> {
    if let Some(k) = spec.strip_prefix("all:") {
        let k = k.parse().map_err(|_| Error::Input(format!("bad word length in {spec:?}")))?;
        return Ok(sft::words(sigma, k));
    }
    spec.split(',').filter(|w| !w.is_empty()).map(|w| sigma.parse_path(w.trim())).collect()
}

fn write_dots(dir: &Path, r: &ConvergenceReport) -> Result<()> {
    fs::create_dir_all(dir)?;
    for (k, dot) in report::cover_graph_dots(r) {
        fs::write(dir.join(format!("G_{k}.dot")), dot)?;
    }
    Ok(())
}

fn run(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Analyze { graph, orbits, dot, output } => {
            let g: DirectedGraph = parse(&graph)?;
            if let Some(p) = dot {
                fs::write(p, g.to_dot("G"))?;
            }
            emit(report::analyze(&g, orbits)?, &output)?;
            Ok(Outcome::Done)
        }
        Command::Markers { graph, n, k, search, output } => {
            let g: DirectedGraph = parse(&graph)?;
            let mut cfg = MarkerConfig::new(n, k).strategy(search.strategy).budget(search.budget);
            if let Some(l) = search.l_max {
                cfg = cfg.l_max(l);
            }
            let m = build_markers(&g, &cfg)?;
            emit(report::markers_report(&m), &output)?;
            Ok(Outcome::Done)
        }
        Command::Factor { lambda, sigma, words, k, search, output } => {
            let lambda: DirectedGraph = parse(&lambda)?;
            let sigma: DirectedGraph = parse(&sigma)?;
            let w = parse_words(&sigma, &words)?;
            let cfg = FactorConfig {
                strategy: search.strategy,
                k,
                l_max: search.l_max,
                budget: search.budget,
                phi: None,
            };
            let code = compile_factor(&lambda, &sigma, &w, &cfg)?;
            emit(report::factor_report(&code, &w, search.budget)?, &output)?;
            Ok(Outcome::Done)
        }
        Command::Approximate { lambda, map, depths, refine, dot, search, output } => {
            let lambda: DirectedGraph = parse(&lambda)?;
            let f = CantorMap::from_json(parse::<CantorMapJson>(&map)?)?;
            let depths = parse_depths(&depths)?;
            let cfg = ApproxConfig { strategy: search.strategy, budget: search.budget, refine };
            let r = approximate(&lambda, &f, &depths, &cfg)?;
            eprint!("{}", report::convergence_table(&r));
            if let Some(d) = dot {
                write_dots(&d, &r)?;
            }
            let halted = r.halted.as_ref().map(|h| format!("depth {}: {}", h.depth, h.message));
            emit(r, &output)?;
            Ok(halted.map_or(Outcome::Done, Outcome::Refused))
        }
        Command::Report { report: path, dot } => {
            let text = read(&path)?;
            let r: ConvergenceReport = match serde_json::from_str::<Envelope<ConvergenceReport>>(&text) {
                Ok(e) => e.report,
                Err(_) => serde_json::from_str(&text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?,
            };
            print!("{}", report::convergence_table(&r));
            let f = CantorMap::from_json(r.map.clone())?;
            let cfg = ApproxConfig::default();
            let mut ok = true;
            for c in &r.certificates {
                let chk = verify_certificate(&r.lambda, &f, c, &cfg)?;
                println!("depth {}: {}", c.depth, if chk.all() { "verified" } else { "FAILED" });
                if !chk.all() {
                    println!("  {}", serde_json::to_string(&chk)?);
                }
                ok &= chk.all();
            }
            if let Some(d) = dot {
                write_dots(&d, &r)?;
            }
            if !ok {
                return Err(Error::Verification("certificate check failed".into()));
            }
            Ok(match &r.halted {
                Some(h) => Outcome::Refused(format!("depth {}: {}", h.depth, h.message)),
                None => Outcome::Done,
            })
        }
    }
}
