//! File formats and command dispatch for the `coarse` binary.

pub mod mapfile;

use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};
use coarse_core::certify::{replay, Certificate};
use coarse_core::presentation::h1_diagonal;
use coarse_core::refute::DEFAULT_MAX_WORDS;
use coarse_core::tangle::fraction_eval;
use coarse_core::{
    brunner, certify, coarse_brunner, h1_order, parse_tangle, range_of_expr, reduced_brunner, refute, PlanarMap,
    Presentation, Verdict,
};

pub use mapfile::{parse_map, MapFileError};

/// Exit code for a run that asked for a verdict and got none.
pub const INCONCLUSIVE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "coarse", version = concat!(env!("CARGO_PKG_VERSION"), " (coarse-core)"))]
#[command(about = "Presentations and orderability certificates for tangle-labelled planar maps")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Brunner,
    Reduced,
    Coarse,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a tangle expression and print its structure.
    Tangle { expr: String },
    /// Print the universal range of a tangle expression.
    Range {
        expr: String,
        #[arg(long)]
        refine: bool,
    },
    /// Validate a map file and print its faces.
    Map { file: String },
    /// Print a presentation of the map's group.
    Present {
        file: String,
        #[arg(long, value_enum)]
        level: Level,
        #[arg(long)]
        refine: bool,
    },
    /// Print the invariant factors and order of the abelianization.
    H1 {
        file: String,
        #[arg(long, value_enum)]
        level: Level,
    },
    /// Try the built-in criteria, or check a recorded certificate.
    Certify {
        file: String,
        #[arg(long, value_name = "CERT")]
        replay: Option<String>,
    },
    /// Search for a contradiction to left-orderability on a ball of words.
    Refute {
        file: String,
        #[arg(long)]
        radius: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_WORDS)]
        max_words: usize,
    },
}

/// Result of one command: exit code plus the two output streams.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn error(msg: impl std::fmt::Display) -> Self {
        Outcome { code: 1, stdout: String::new(), stderr: format!("error: {}\n", msg) }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli.command),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome { code: 1, stdout: String::new(), stderr: text }
            } else {
                Outcome::ok(text)
            }
        }
    }
}

/// Reads a file, or stdin for `-`.
pub fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| format!("stdin: {}", e))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{}: {}", path, e))
    }
}

fn display_name(path: &str) -> &str {
    if path == "-" {
        "<stdin>"
    } else {
        path
    }
}

fn load_map(path: &str) -> Result<PlanarMap, String> {
    parse_map(&read_input(path)?).map_err(|e| format!("{}: {}", display_name(path), e))
}

pub fn execute(cmd: &Command) -> Outcome {
    match try_execute(cmd) {
        Ok(o) => o,
        Err(msg) => Outcome::error(msg),
    }
}

fn try_execute(cmd: &Command) -> Result<Outcome, String> {
    let err = |e: &dyn std::fmt::Display| e.to_string();
    match cmd {
        Command::Tangle { expr } => {
            let t = parse_tangle(expr).map_err(|e| err(&e))?;
            let mut out = format!("expr: {}\nast: {}\n", t, t.ast_string());
            if t.is_rational_form() {
                let x = fraction_eval(&t).map_err(|e| err(&e))?;
                out.push_str(&format!("fraction: {}\n", x));
            }
            Ok(Outcome::ok(out))
        }
        Command::Range { expr, refine } => {
            let t = parse_tangle(expr).map_err(|e| err(&e))?;
            Ok(Outcome::ok(format!("{}\n", range_of_expr(&t, *refine))))
        }
        Command::Map { file } => Ok(Outcome::ok(describe_map(&load_map(file)?))),
        Command::Present { file, level, refine } => {
            let m = load_map(file)?;
            let text = match level {
                Level::Brunner => brunner(&m).map_err(|e| err(&e))?.to_text(),
                Level::Reduced => reduced_brunner(&m).map_err(|e| err(&e))?.to_text(),
                Level::Coarse => coarse_brunner(&m, *refine).map_err(|e| err(&e))?.to_text(),
            };
            Ok(Outcome::ok(text))
        }
        Command::H1 { file, level } => {
            let m = load_map(file)?;
            let p = match level {
                Level::Brunner => brunner(&m),
                Level::Reduced => reduced_brunner(&m),
                Level::Coarse => return Err("h1 needs --level brunner or --level reduced".to_string()),
            }
            .map_err(|e| err(&e))?;
            let diagonal: Vec<String> = h1_diagonal(&p).iter().map(ToString::to_string).collect();
            let order = h1_order(&p);
            let order = if order == 0.into() { "infinite".to_string() } else { order.to_string() };
            Ok(Outcome::ok(format!("diagonal: ({})\norder: {}\n", diagonal.join(", "), order)))
        }
        Command::Certify { file, replay: cert } => {
            let m = load_map(file)?;
            let cp = coarse_brunner(&m, true).map_err(|e| err(&e))?;
            match cert {
                None => {
                    let c = certify(&cp);
                    let code = if c.is_certified() { 0 } else { INCONCLUSIVE };
                    Ok(Outcome { code, stdout: c.to_text(), stderr: String::new() })
                }
                Some(path) => {
                    let c =
                        Certificate::parse(&read_input(path)?).map_err(|e| format!("{}: {}", display_name(path), e))?;
                    replay(&c, &cp).map_err(|e| err(&e))?;
                    Ok(Outcome::ok(format!("replay: accepted\n{}", c.to_text())))
                }
            }
        }
        Command::Refute { file, radius, max_words } => {
            let (p, dropped) = Presentation::parse_lenient(&read_input(file)?)
                .map_err(|e| format!("{}: {}", display_name(file), e))?;
            let r = refute(&p, *radius, *max_words).map_err(|e| err(&e))?;
            let code = if r.verdict == Verdict::NotLeftOrderable { 0 } else { INCONCLUSIVE };
            let stderr = if dropped > 0 { format!("note: ignored {} range lines\n", dropped) } else { String::new() };
            Ok(Outcome { code, stdout: r.certificate(*radius).to_text(), stderr })
        }
    }
}

fn describe_map(m: &PlanarMap) -> String {
    let (v, e, f) = (m.vertices().len(), m.edges().len(), m.faces().len());
    let mut out = format!("vertices: {}\nedges: {}\nfaces: {}\n", v, e, f);
    out.push_str(&format!("euler: {} - {} + {} = {}\n", v, e, f, m.euler_characteristic()));
    out.push_str(&format!("outer: {}\n", m.face(m.outer()).name));
    for (i, edge) in m.edges().iter().enumerate() {
        let (l, r) = m.adjacent_regions(i);
        out.push_str(&format!(
            "edge {} {} -> {} \"{}\" left {} right {}\n",
            edge.name,
            m.vertices()[edge.tail],
            m.vertices()[edge.head],
            edge.label,
            m.face(l).name,
            m.face(r).name
        ));
    }
    let names: Vec<String> = m.edges().iter().map(|e| e.name.clone()).collect();
    for face in m.faces() {
        let darts: Vec<String> = face.darts.iter().map(|&d| m.dart_name(d)).collect();
        let word: Vec<String> = m
            .boundary_word(face.id)
            .into_iter()
            .map(|(e, s)| if s > 0 { names[e].clone() } else { format!("{}^-1", names[e]) })
            .collect();
        out.push_str(&format!("face {} : {} ; boundary {}\n", face.name, darts.join(" "), word.join(" ")));
    }
    out
}
