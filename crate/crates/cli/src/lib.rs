//! Command dispatch for the `cellmaps` binary.
//!
//! [`run`] takes the argument vector and two writers and returns the exit
//! code: 0 on success or a passing check, 1 on a failing check, 2 on bad
//! input (unreadable files, malformed records, violated preconditions).

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use cellmaps::bijections::{beta_forward, beta_inverse, Decomposition};
use cellmaps::enumerate::{
    count_table_with, enumerate_bicellular, enumerate_unicellular, verify_bijection_with, verify_recursion_with,
    SplitRange,
};
use cellmaps::record::parse_maps;
use cellmaps::rna::{diagram_to_bicellular, diagram_to_unicellular, genus_of_diagram, map_to_diagram, rewire};
use cellmaps::{AnyMap, Diagram, RnaError};

#[derive(Parser, Debug)]
#[command(
    name = "cellmaps",
    version,
    about = "Planted unicellular/bicellular maps and RNA diagram rewiring"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a map or diagram record.
    Validate { file: PathBuf },
    /// Print the genus of a map or diagram.
    Genus { file: PathBuf },
    /// Print the class and genus of a map.
    Classify { file: PathBuf },
    /// Split a unicellular map of genus >= 1 into its preimage.
    Decompose { file: PathBuf },
    /// Glue two unicellular maps, or one bicellular map, into a unicellular map.
    Compose { first: PathBuf, second: Option<PathBuf> },
    /// Stream every map with the given edge count.
    Enumerate {
        #[arg(long)]
        edges: usize,
        #[arg(long)]
        genus: Option<usize>,
        #[arg(long)]
        bicellular: bool,
    },
    /// Print exact map counts as `g n count kind` rows.
    Counts {
        #[arg(long = "max-edges")]
        max_edges: usize,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Check the counting recursion on brute-force tables.
    VerifyRecursion {
        #[arg(long = "max-edges")]
        max_edges: usize,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Check both round trips of the bijection onto U_{g,n}.
    VerifyBijection {
        #[arg(long)]
        edges: usize,
        #[arg(long)]
        genus: usize,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Convert a diagram to its dual map, or a map to its diagram.
    Dual { file: PathBuf },
    /// Rewire a two-backbone interaction structure into a one-backbone diagram.
    Rewire {
        file: PathBuf,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
}

/// A failure mapped to an exit code.
#[derive(Debug)]
enum Failure {
    Input(String),
    Output(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Output(e)
    }
}

type Outcome = Result<i32, Failure>;

enum Input {
    Maps(Vec<AnyMap>),
    Diagram(Diagram),
}

fn read_text(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("<stdin>: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn first_key(text: &str) -> Option<&str> {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .and_then(|l| l.split_whitespace().next())
}

fn read_input(path: &Path) -> Result<Input, Failure> {
    let text = read_text(path)?;
    let at = |msg: String| Failure::Input(format!("{}: {msg}", path.display()));
    match first_key(&text) {
        Some("N") => text
            .parse::<Diagram>()
            .map(Input::Diagram)
            .map_err(|e| at(e.to_string())),
        _ => parse_maps(&text).map(Input::Maps).map_err(|e| at(e.to_string())),
    }
}

fn read_maps(path: &Path) -> Result<Vec<AnyMap>, Failure> {
    match read_input(path)? {
        Input::Maps(m) => Ok(m),
        Input::Diagram(_) => Err(Failure::Input(format!("{}: expected a map record", path.display()))),
    }
}

fn read_one_map(path: &Path) -> Result<AnyMap, Failure> {
    let mut maps = read_maps(path)?;
    if maps.len() != 1 {
        return Err(Failure::Input(format!(
            "{}: expected one map record, found {}",
            path.display(),
            maps.len()
        )));
    }
    Ok(maps.pop().unwrap())
}

fn domain<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn diagram_dual(d: &Diagram) -> Result<AnyMap, RnaError> {
    match d.backbones().len() {
        1 => diagram_to_unicellular(d).map(AnyMap::Uni),
        _ => diagram_to_bicellular(d).map(AnyMap::Bi),
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Validate { file } => {
            match read_input(&file)? {
                Input::Maps(maps) => {
                    for m in maps {
                        writeln!(out, "valid {} edges {} genus {}", m.kind(), m.edges(), m.genus())?;
                    }
                }
                Input::Diagram(d) => {
                    write!(
                        out,
                        "valid diagram N {} backbones {} arcs {}",
                        d.len(),
                        d.backbones().len(),
                        d.arcs().len()
                    )?;
                    match genus_of_diagram(&d) {
                        Ok(g) => writeln!(out, " genus {g}")?,
                        Err(e) => writeln!(out, " ({e})")?,
                    }
                }
            }
            Ok(0)
        }
        Command::Genus { file } => {
            let g = match read_input(&file)? {
                Input::Maps(maps) => {
                    for m in &maps {
                        writeln!(out, "genus {}", m.genus())?;
                    }
                    return Ok(0);
                }
                Input::Diagram(d) => genus_of_diagram(&d).map_err(domain)?,
            };
            writeln!(out, "genus {g}")?;
            Ok(0)
        }
        Command::Classify { file } => {
            for m in read_maps(&file)? {
                let class = m.class().map_err(domain)?;
                writeln!(out, "class {class} genus {}", m.genus())?;
            }
            Ok(0)
        }
        Command::Decompose { file } => {
            let u = match read_one_map(&file)? {
                AnyMap::Uni(u) => u,
                AnyMap::Bi(_) => return Err(Failure::Input("decompose expects a unicellular map".into())),
            };
            match beta_inverse(&u).map_err(domain)? {
                Decomposition::Pair(a, b) => write!(out, "{a}\n{b}")?,
                Decomposition::Bi(b) => write!(out, "{b}")?,
            }
            Ok(0)
        }
        Command::Compose { first, second } => {
            let mut maps = read_maps(&first)?;
            if let Some(second) = second {
                maps.extend(read_maps(&second)?);
            }
            let x = match maps.as_slice() {
                [AnyMap::Uni(a), AnyMap::Uni(b)] => Decomposition::Pair(a.clone(), b.clone()),
                [AnyMap::Bi(b)] => Decomposition::Bi(b.clone()),
                _ => {
                    return Err(Failure::Input(
                        "compose expects two unicellular records or one bicellular record".into(),
                    ))
                }
            };
            write!(out, "{}", beta_forward(&x).map_err(domain)?)?;
            Ok(0)
        }
        Command::Enumerate {
            edges,
            genus,
            bicellular,
        } => {
            let mut first = true;
            let mut emit = |rec: String, out: &mut dyn Write| -> io::Result<()> {
                if !first {
                    writeln!(out)?;
                }
                first = false;
                write!(out, "{rec}")
            };
            if bicellular {
                for b in enumerate_bicellular(edges, genus) {
                    emit(b.to_string(), out)?;
                }
            } else {
                for u in enumerate_unicellular(edges, genus) {
                    emit(u.to_string(), out)?;
                }
            }
            Ok(0)
        }
        Command::Counts { max_edges, workers } => {
            let t = count_table_with(max_edges, SplitRange::Inclusive, workers.max(1));
            write!(out, "{}", t.to_text())?;
            Ok(0)
        }
        Command::VerifyRecursion { max_edges, workers } => {
            let r = verify_recursion_with(max_edges, SplitRange::Inclusive, workers.max(1));
            write!(out, "{r}")?;
            Ok(if r.pass() { 0 } else { 1 })
        }
        Command::VerifyBijection { edges, genus, workers } => {
            if edges == 0 || genus == 0 {
                return Err(Failure::Input(
                    "verify-bijection needs --edges >= 1 and --genus >= 1".into(),
                ));
            }
            let r = verify_bijection_with(edges, genus, workers.max(1));
            write!(out, "{r}")?;
            Ok(if r.pass() { 0 } else { 1 })
        }
        Command::Dual { file } => {
            match read_input(&file)? {
                Input::Diagram(d) => write!(out, "{}", diagram_dual(&d).map_err(domain)?)?,
                Input::Maps(maps) => {
                    for (k, m) in maps.iter().enumerate() {
                        if k > 0 {
                            writeln!(out)?;
                        }
                        write!(out, "{}", map_to_diagram(m))?;
                    }
                }
            }
            Ok(0)
        }
        Command::Rewire { file, trace } => {
            let d = match read_input(&file)? {
                Input::Diagram(d) => d,
                Input::Maps(_) => return Err(Failure::Input("rewire expects a diagram record".into())),
            };
            let (rewired, tr) = rewire(&d).map_err(domain)?;
            if let Some(path) = trace {
                fs::write(&path, tr.to_text()).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            }
            write!(out, "{rewired}")?;
            Ok(0)
        }
    }
}

/// Parses `args` (including the program name) and runs one subcommand.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Output(e)) if e.kind() == io::ErrorKind::BrokenPipe => 0,
        Err(Failure::Output(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
