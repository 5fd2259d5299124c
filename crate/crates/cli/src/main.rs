//! `shiftforge`: evaluate, probe, certify, classify and render spec documents.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use shiftforge::actions::{support_region, ActionError, PushSystem, Shift};
use shiftforge::constructions::{faithfulness_probe, nonconjugacy_certificate, ConstructionError, Handle};
use shiftforge::dot::{render_domains, render_graph, render_support};
use shiftforge::format::{parse_word, FormatError, QueryDoc, SpecDocument};
use shiftforge::schreier::DEFAULT_WINDOW;
use shiftforge::surfaces::classify;

const DEFAULT_MAX_RADIUS: usize = 8;
const APPLY_ORDER: &str = "rightmost-first";

#[derive(Parser)]
#[command(name = "shiftforge", version, about = "Symbolic shift and multipush subgroups of big mapping class groups")]
struct Cli {
    /// Window radius for verdicts on infinite graphs.
    #[arg(long, global = true, default_value_t = DEFAULT_WINDOW)]
    window: usize,
    /// Composition order of words acting on surfaces.
    #[arg(long = "apply-order", global = true, value_enum, default_value_t = ApplyOrder::RightmostFirst)]
    apply_order: ApplyOrder,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ApplyOrder {
    RightmostFirst,
}

#[derive(Subcommand)]
enum Command {
    /// Decide triviality of words in a system, one verdict line per word.
    Eval {
        spec: PathBuf,
        system: String,
        /// A word such as `[a,b] a^2`; omit when using --file.
        word: Option<String>,
        /// A file with one word per line (`#` starts a comment).
        #[arg(long, conflicts_with = "word")]
        file: Option<PathBuf>,
    },
    /// Compare a star or indicable system with a claimed group on a ball of words.
    Probe {
        spec: PathBuf,
        system: String,
        claimed: String,
        #[arg(long)]
        radius: usize,
        /// Report path; defaults to `probe-<system>-r<radius>.txt`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a Graphviz rendering of a graph ball, push domains or a support overlay.
    Render {
        spec: PathBuf,
        target: Target,
        /// System whose surface is drawn.
        #[arg(long, required_unless_present = "graph")]
        system: Option<String>,
        /// Graph to draw (target `graph` only).
        #[arg(long, conflicts_with = "system")]
        graph: Option<String>,
        /// Word whose support is overlaid (target `support`); empty means no overlay.
        #[arg(long, default_value = "")]
        word: String,
        #[arg(long, default_value_t = 2)]
        radius: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the classification quadruple (genus, boundary, nonplanar ends, ends).
    Classify { spec: PathBuf, surface: String },
    /// Certify non-conjugacy of the embeddings omitting m and n copies.
    Certify {
        spec: PathBuf,
        surface: String,
        m: usize,
        n: usize,
        /// Restrict the push domain to this letter's orbit.
        #[arg(long)]
        orbit: Option<String>,
    },
    /// Run every query listed in the document.
    Run { spec: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Graph,
    Domains,
    Support,
}

enum Failure {
    Input(String),
    Internal(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) => write!(f, "error: {m}"),
            Failure::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<ActionError> for Failure {
    fn from(e: ActionError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<ConstructionError> for Failure {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::Invariant(m) => Failure::Internal(m),
            other => Failure::Input(other.to_string()),
        }
    }
}

fn input(e: impl ToString) -> Failure {
    Failure::Input(e.to_string())
}

fn load(path: &Path) -> Result<SpecDocument, Failure> {
    let text = fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    Ok(SpecDocument::from_json(&text)?)
}

fn max_radius() -> Result<usize, Failure> {
    match std::env::var("SHIFTFORGE_MAX_RADIUS") {
        Ok(v) => v.trim().parse().map_err(|_| input(format!("SHIFTFORGE_MAX_RADIUS={v} is not a number"))),
        Err(_) => Ok(DEFAULT_MAX_RADIUS),
    }
}

fn read_words(file: &Path) -> Result<Vec<String>, Failure> {
    let text = fs::read_to_string(file).map_err(|e| input(format!("{}: {e}", file.display())))?;
    Ok(text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect())
}

fn eval_lines(doc: &SpecDocument, system: &str, words: &[String], window: usize) -> Result<Vec<String>, Failure> {
    let handle = doc.system(system)?;
    // parse everything first so a bad token fails before any output
    let parsed = words.iter().map(|w| parse_word(w)).collect::<Result<Vec<_>, _>>()?;
    parsed.iter().map(|w| Ok(handle.solve(w, window)?.to_string())).collect()
}

fn probe_report(doc: &SpecDocument, system: &str, claimed: &str, radius: usize) -> Result<(String, String), Failure> {
    let cap = max_radius()?;
    if radius > cap {
        return Err(input(format!("radius {radius} exceeds the maximum {cap} (SHIFTFORGE_MAX_RADIUS)")));
    }
    let model = match doc.system(system)? {
        Handle::Star(h) => h.diagonal,
        Handle::Indicable(h) => h.diagonal,
        other => return Err(input(format!("system {system} is {}; probes need a star or indicable system", other.kind()))),
    };
    let report = faithfulness_probe(&model, &doc.group(claimed)?, radius)?;
    Ok((report.summary(), report.to_table(&format!("system {system} vs claimed group {claimed}"))))
}

fn push_system_of(handle: &Handle) -> Option<&PushSystem> {
    match handle {
        Handle::Free(h) => Some(&h.system),
        Handle::Star(h) => Some(&h.pushes),
        Handle::Indicable(h) => Some(&h.shift),
        Handle::Push(p) => Some(p),
        Handle::Wreath(w) => match w.shift() {
            Shift::Push(p) => Some(p),
            Shift::Z { .. } => None,
        },
        Handle::Bs(_) => None,
    }
}

fn certify_line(doc: &SpecDocument, surface: &str, m: usize, n: usize, orbit: &Option<String>) -> Result<String, Failure> {
    let spec = doc.surface(surface)?;
    let coverage = doc.coverage(surface, orbit)?;
    Ok(match nonconjugacy_certificate(&spec, &coverage, m, n) {
        Ok(Some(c)) => format!("CERTIFICATE m={m}: {} | n={n}: {}", c.invariant_m, c.invariant_n),
        Ok(None) => format!("NONE m={m} n={n}: equal complement invariants"),
        Err(e) => format!("INCOMPARABLE {e}"),
    })
}

fn run(cli: Cli) -> Result<(), Failure> {
    let ApplyOrder::RightmostFirst = cli.apply_order;
    let window = cli.window;
    match cli.command {
        Command::Eval { spec, system, word, file } => {
            let doc = load(&spec)?;
            let words = match (word, file) {
                (Some(w), None) => vec![w],
                (None, Some(f)) => read_words(&f)?,
                _ => return Err(input("give a word or --file")),
            };
            for line in eval_lines(&doc, &system, &words, window)? {
                println!("{line}");
            }
        }
        Command::Probe { spec, system, claimed, radius, out } => {
            let doc = load(&spec)?;
            let (summary, table) = probe_report(&doc, &system, &claimed, radius)?;
            let out = out.unwrap_or_else(|| PathBuf::from(format!("probe-{system}-r{radius}.txt")));
            fs::write(&out, table).map_err(|e| input(format!("{}: {e}", out.display())))?;
            println!("{summary}");
            println!("report: {}", out.display());
        }
        Command::Render { spec, target, system, graph, word, radius, out } => {
            let doc = load(&spec)?;
            let dot = match (target, graph) {
                (Target::Graph, Some(g)) => render_graph(&doc.graph(&g)?, radius),
                (_, Some(_)) => return Err(input("--graph only applies to the graph target")),
                (target, None) => {
                    let name = system.expect("clap requires --system without --graph");
                    let handle = doc.system(&name)?;
                    let sys = push_system_of(&handle)
                        .ok_or_else(|| input(format!("system {name} ({}) has no push surface to draw", handle.kind())))?;
                    match target {
                        Target::Graph => render_graph(sys.graph(), radius),
                        Target::Domains => render_domains(sys, radius),
                        Target::Support => {
                            let w = parse_word(&word)?;
                            sys.check_word(&w)?;
                            render_support(sys, &support_region(sys, &w, window)?, radius)
                        }
                    }
                }
            };
            fs::write(&out, dot).map_err(|e| input(format!("{}: {e}", out.display())))?;
        }
        Command::Classify { spec, surface } => {
            let doc = load(&spec)?;
            println!("{}", classify(&doc.surface(&surface)?));
        }
        Command::Certify { spec, surface, m, n, orbit } => {
            let doc = load(&spec)?;
            println!("{}", certify_line(&doc, &surface, m, n, &orbit)?);
        }
        Command::Run { spec } => {
            let doc = load(&spec)?;
            println!("# apply-order: {APPLY_ORDER}");
            for q in &doc.queries {
                match q {
                    QueryDoc::Eval { system, words } => {
                        for (w, line) in words.iter().zip(eval_lines(&doc, system, words, window)?) {
                            println!("eval {system} {w}: {line}");
                        }
                    }
                    QueryDoc::Probe { system, claimed, radius } => {
                        let (summary, _) = probe_report(&doc, system, claimed, *radius)?;
                        println!("probe {system} vs {claimed} radius {radius}: {summary}");
                    }
                    QueryDoc::Certify { surface, m, n, orbit } => {
                        println!("certify {surface}: {}", certify_line(&doc, surface, *m, *n, orbit)?);
                    }
                    QueryDoc::Classify { surface } => {
                        println!("classify {surface}: {}", classify(&doc.surface(surface)?));
                    }
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(f)) => {
            eprintln!("{f}");
            ExitCode::from(match f {
                Failure::Input(_) => 2,
                Failure::Internal(_) => 3,
            })
        }
        Err(_) => ExitCode::from(3),
    }
}
