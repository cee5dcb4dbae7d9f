//! Command-line front end: argument parsing, input loading and output
//! formatting. `run` is kept free of process state so it can be tested.

use std::collections::BTreeMap;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use krsl::graph::{graph_cohomology, standard_graph, MoyGraph, STANDARD_GRAPHS};
use krsl::link::{kr_homology, reduced_kr_homology, HomologyTable, LinkDiagram};
use krsl::oracle::{homfly_specialized, moy_eval, state_sum, LaurentPoly};
use krsl::parse::parse_link;

#[derive(Parser, Debug)]
#[command(
    name = "krsl",
    version,
    about = "sl(n) link homology from matrix factorizations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Bigraded homology table of a link.
    Homology {
        #[command(flatten)]
        common: Common,
        /// Reduced homology, marked on the given component (default 0).
        #[arg(long, num_args = 0..=1, default_missing_value = "0")]
        reduced: Option<usize>,
    },
    /// Graded dimension of a planar graph's cohomology, with the skein value.
    GraphEval {
        #[command(flatten)]
        common: Common,
    },
    /// The specialized HOMFLY polynomial of a link.
    Polynomial {
        #[command(flatten)]
        common: Common,
    },
    /// Compare the Euler characteristic, the state sum and the skein value.
    Check {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
pub struct Common {
    /// PD code, braid word, graph name or literal; `-` or absent reads stdin.
    pub input: Option<String>,
    /// Read the input from a file.
    #[arg(long, conflicts_with = "input")]
    pub file: Option<PathBuf>,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads; output does not depend on it.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Homology table in the JSON layout, entries sorted by `(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub n: usize,
    pub parity: u8,
    pub table: Vec<EntryJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub i: i64,
    pub j: i64,
    pub dim: usize,
}

impl From<&HomologyTable> for TableJson {
    fn from(t: &HomologyTable) -> Self {
        TableJson {
            n: t.n,
            parity: t.parity,
            table: t
                .entries
                .iter()
                .map(|(&(i, j), &dim)| EntryJson { i, j, dim })
                .collect(),
        }
    }
}

impl From<&TableJson> for HomologyTable {
    fn from(t: &TableJson) -> Self {
        HomologyTable {
            n: t.n,
            parity: t.parity,
            entries: t
                .table
                .iter()
                .map(|e| ((e.i, e.j), e.dim))
                .collect::<BTreeMap<_, _>>(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub n: usize,
    pub polynomial: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub closed: bool,
    pub parity: Option<u8>,
    pub gdim: String,
    pub moy: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckJson {
    pub n: usize,
    pub euler: String,
    pub state_sum: String,
    pub homfly: String,
    pub ok: bool,
}

/// Process exit status and the text destined for stdout.
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

fn read_input(common: &Common) -> Result<String, String> {
    if let Some(path) = &common.file {
        return std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()));
    }
    match common.input.as_deref() {
        Some(s) if s != "-" => Ok(s.to_string()),
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| format!("stdin: {e}"))?;
            Ok(s)
        }
    }
}

fn link(text: &str) -> Result<LinkDiagram, String> {
    parse_link(text.trim()).map_err(|e| e.to_string())
}

fn graph(text: &str) -> Result<MoyGraph, String> {
    let t = text.trim();
    if STANDARD_GRAPHS.contains(&t) {
        return standard_graph(t).map_err(|e| e.to_string());
    }
    MoyGraph::parse_literal(text).map_err(|e| e.to_string())
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable") + "\n"
}

fn homology(
    d: &LinkDiagram,
    n: usize,
    reduced: Option<usize>,
    format: Format,
) -> Result<String, String> {
    let t = match reduced {
        Some(c) => reduced_kr_homology(d, n, c),
        None => kr_homology(d, n),
    }
    .map_err(|e| e.to_string())?;
    Ok(match format {
        Format::Json => json(&TableJson::from(&t)),
        Format::Text => format!("{t}poincare: {}\neuler: {}\n", t.poincare(), t.euler()),
    })
}

fn graph_eval(g: &MoyGraph, n: usize, format: Format) -> Result<String, String> {
    let (_, _, gdim) = graph_cohomology(g, n).map_err(|e| e.to_string())?;
    let closed = g.is_closed();
    let moy = if closed {
        Some(moy_eval(g, n).map_or_else(|e| format!("({e})"), |p| p.to_string()))
    } else {
        None
    };
    let out = GraphJson {
        n,
        closed,
        parity: closed.then(|| g.parity()),
        gdim: gdim.to_string(),
        moy,
    };
    Ok(match format {
        Format::Json => json(&out),
        Format::Text => {
            let mut s = format!("gdim: {}\n", out.gdim);
            if let Some(p) = out.parity {
                s += &format!("parity: {p}\n");
            }
            if let Some(m) = &out.moy {
                s += &format!("moy: {m}\n");
            }
            s
        }
    })
}

fn polynomial(d: &LinkDiagram, n: usize, format: Format) -> Result<String, String> {
    let p = homfly_specialized(d, n).map_err(|e| e.to_string())?;
    Ok(match format {
        Format::Json => json(&PolynomialJson {
            n,
            polynomial: p.to_string(),
        }),
        Format::Text => format!("{p}\n"),
    })
}

fn check(d: &LinkDiagram, n: usize, format: Format) -> Result<(bool, String), String> {
    let euler = kr_homology(d, n).map_err(|e| e.to_string())?.euler();
    let sum = state_sum(d, n).map_err(|e| e.to_string())?;
    let hf = homfly_specialized(d, n).map_err(|e| e.to_string())?;
    let ok = euler == sum && sum == hf;
    let out = CheckJson {
        n,
        euler: euler.to_string(),
        state_sum: sum.to_string(),
        homfly: hf.to_string(),
        ok,
    };
    let text = match format {
        Format::Json => json(&out),
        Format::Text => format!(
            "euler:     {}\nstate sum: {}\nhomfly:    {}\n{}\n",
            out.euler,
            out.state_sum,
            out.homfly,
            if ok { "ok" } else { "MISMATCH" }
        ),
    };
    Ok((ok, text))
}

fn dispatch(cmd: &Command) -> Result<Outcome, String> {
    let ok = |stdout| Outcome { code: 0, stdout };
    match cmd {
        Command::Homology { common, reduced } => {
            let d = link(&read_input(common)?)?;
            homology(&d, common.n as usize, *reduced, common.format).map(ok)
        }
        Command::GraphEval { common } => {
            let g = graph(&read_input(common)?)?;
            graph_eval(&g, common.n as usize, common.format).map(ok)
        }
        Command::Polynomial { common } => {
            let d = link(&read_input(common)?)?;
            polynomial(&d, common.n as usize, common.format).map(ok)
        }
        Command::Check { common } => {
            let d = link(&read_input(common)?)?;
            let (good, stdout) = check(&d, common.n as usize, common.format)?;
            Ok(Outcome {
                code: if good { 0 } else { 1 },
                stdout,
            })
        }
    }
}

fn common(cmd: &Command) -> &Common {
    match cmd {
        Command::Homology { common, .. }
        | Command::GraphEval { common }
        | Command::Polynomial { common }
        | Command::Check { common } => common,
    }
}

/// Run a parsed command on a pool of `--jobs` threads. Errors become exit
/// status 2 with the message on stderr.
pub fn run(cli: &Cli) -> Outcome {
    let jobs = common(&cli.command).jobs as usize;
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return Outcome {
                code: 2,
                stdout: String::new(),
            };
        }
    };
    pool.install(|| dispatch(&cli.command)).unwrap_or_else(|e| {
        eprintln!("error: {e}");
        Outcome {
            code: 2,
            stdout: String::new(),
        }
    })
}

/// Parse the Laurent polynomial printed by `polynomial`.
pub fn parse_polynomial(text: &str) -> Result<LaurentPoly, String> {
    text.trim()
        .parse::<LaurentPoly>()
        .map_err(|e| e.to_string())
}
