//! Command-line front end. Every subcommand is reachable through [`run`],
//! which returns what the binary would print and its exit code.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::bisc::{self, Direction, Verification};
use crate::corpus::{named_class, NamedClass};
use crate::error::Error;
use crate::patterns::{AnyPattern, Pattern, PatternJson};
use crate::perm::Permutation;
use crate::preimage::{preimage_basis, Device, ORACLE_LIMIT};
use crate::sorters::{avoids_4312_linear, run_pipeline_traced, Depth, SortingPipeline};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "pattern-forge", version, about = "Mesh-pattern bases, sorting devices and their preimages")]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Worker threads; 0 or unset means one per core.
    #[arg(long, global = true, env = "PATTERN_FORGE_THREADS")]
    pub threads: Option<usize>,

    /// Largest permutation length any command may sweep.
    #[arg(long, global = true, default_value_t = 9)]
    pub max_n: usize,

    /// Largest pattern length BiSC may mine.
    #[arg(long, global = true, default_value_t = 6)]
    pub max_m: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// File with one permutation per line (`#` starts a comment).
    #[arg(conflicts_with = "class")]
    pub file: Option<PathBuf>,

    /// Use a named class instead of a file.
    #[arg(long)]
    pub class: Option<String>,

    /// Keep only input permutations up to this length (required with --class).
    #[arg(long)]
    pub max_len: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Maximal allowed shadings of every pattern up to length m.
    Mine {
        #[command(flatten)]
        input: InputArgs,
        #[arg(short = 'm', long)]
        m: usize,
    },
    /// Mesh-pattern basis of the input permutations.
    Bisc {
        #[command(flatten)]
        input: InputArgs,
        /// Pattern length bound; defaults to the longest input length minus one.
        #[arg(short = 'm', long)]
        m: Option<usize>,
    },
    /// Permutations of length n avoiding every basis pattern.
    Avoiders {
        #[arg(long, num_args = 1.., required = true)]
        basis: Vec<String>,
        #[arg(long)]
        n: usize,
        /// List every length 1..=n instead of n only.
        #[arg(long)]
        up_to: bool,
    },
    /// Whether a permutation contains a pattern.
    Contains {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        perm: String,
    },
    /// Run a permutation through a pipeline such as `stack,rev,comp,queue`.
    Sort {
        #[arg(long)]
        perm: String,
        #[arg(long, default_value = "")]
        pipeline: String,
        #[arg(long)]
        trace: bool,
    },
    /// Decorated patterns describing the preimage of Av(patterns) under a device.
    Preimage {
        #[command(flatten)]
        device: DeviceArgs,
        #[arg(long, num_args = 1.., required = true)]
        pattern: Vec<String>,
    },
    /// Check a basis against a device preimage or a named class, lengths 1..=n.
    Verify {
        #[command(flatten)]
        device: OptDeviceArgs,
        /// Target patterns of the device.
        #[arg(long, num_args = 1..)]
        pattern: Vec<String>,
        /// Named class to compare with --basis.
        #[arg(long, conflicts_with = "device")]
        class: Option<String>,
        #[arg(long, num_args = 1.., requires = "class")]
        basis: Vec<String>,
        #[arg(long)]
        n: usize,
    },
    /// Linear-time 4312 avoidance, one answer per permutation.
    Check4312 {
        #[arg(long, conflicts_with = "file")]
        perm: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Members of a named class of lengths 1..=n.
    Class {
        #[arg(long)]
        name: String,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Args)]
pub struct DeviceArgs {
    /// `stack`, `stackd` or `queue`; `stackd:<d>` is also accepted.
    #[arg(long)]
    pub device: String,
    /// Stack depth, a number or `inf`.
    #[arg(long)]
    pub d: Option<String>,
}

#[derive(Debug, Args)]
pub struct OptDeviceArgs {
    #[arg(long)]
    pub device: Option<String>,
    #[arg(long)]
    pub d: Option<String>,
}

/// What a command printed and how it exited.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

enum Failure {
    Usage(String),
    Limit(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceLimit { .. } => Failure::Limit(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type CmdResult = std::result::Result<(String, i32), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { stderr: text, code: EXIT_USAGE, ..Outcome::default() }
            } else {
                Outcome { stdout: text, code: EXIT_OK, ..Outcome::default() }
            };
        }
    };
    run_cli(&cli)
}

pub fn run_cli(cli: &Cli) -> Outcome {
    let result = match cli.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| dispatch(cli)),
            Err(e) => Err(Failure::Usage(format!("cannot start thread pool: {e}"))),
        },
        None => dispatch(cli),
    };
    match result {
        Ok((stdout, code)) => Outcome { stdout, stderr: String::new(), code },
        Err(Failure::Usage(msg)) => Outcome { stderr: format!("error: {msg}\n"), code: EXIT_USAGE, ..Outcome::default() },
        Err(Failure::Limit(msg)) => Outcome { stderr: format!("error: {msg}\n"), code: EXIT_LIMIT, ..Outcome::default() },
    }
}

fn dispatch(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Mine { input, m } => cmd_mine(cli, input, *m),
        Command::Bisc { input, m } => cmd_bisc(cli, input, *m),
        Command::Avoiders { basis, n, up_to } => cmd_avoiders(cli, basis, *n, *up_to),
        Command::Contains { pattern, perm } => {
            let pat: AnyPattern = pattern.parse()?;
            let perm: Permutation = perm.parse()?;
            Ok((bool_line(cli, pat.contained_in(&perm)), EXIT_OK))
        }
        Command::Sort { perm, pipeline, trace } => cmd_sort(cli, perm, pipeline, *trace),
        Command::Preimage { device, pattern } => {
            let device = parse_device(&device.device, device.d.as_deref())?;
            let targets = parse_perms(pattern)?;
            let basis = preimage_basis(device, &targets)?;
            let pats = sorted(basis.patterns.into_iter().map(AnyPattern::from_decorated).collect());
            Ok((pattern_lines(cli, &pats), EXIT_OK))
        }
        Command::Verify { device, pattern, class, basis, n } => cmd_verify(cli, device, pattern, class, basis, *n),
        Command::Check4312 { perm, file } => cmd_check4312(cli, perm.as_deref(), file.as_deref()),
        Command::Class { name, n } => {
            let class: NamedClass = name.parse()?;
            guard_n(cli, *n)?;
            Ok((perm_lines(cli, &named_class(class.name(), *n)?), EXIT_OK))
        }
    }
}

fn guard_n(cli: &Cli, n: usize) -> std::result::Result<(), Failure> {
    if n > cli.max_n {
        return Err(Failure::Limit(format!("length {n} exceeds --max-n {}", cli.max_n)));
    }
    Ok(())
}

fn guard_m(cli: &Cli, m: usize) -> std::result::Result<(), Failure> {
    if m > cli.max_m {
        return Err(Failure::Limit(format!("pattern length {m} exceeds --max-m {}", cli.max_m)));
    }
    Ok(())
}

/// Reads one permutation per line; blank lines and `#` comments are skipped.
pub fn parse_perm_file(text: &str) -> Result<Vec<Permutation>, Error> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let perm = line.parse::<Permutation>().map_err(|e| {
            let msg = match e {
                Error::Parse(m) => m,
                other => other.to_string(),
            };
            Error::Parse(format!("line {}: {msg}", i + 1))
        })?;
        out.push(perm);
    }
    Ok(out)
}

fn read_perm_file(path: &Path) -> std::result::Result<Vec<Permutation>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse_perm_file(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_input(cli: &Cli, input: &InputArgs) -> std::result::Result<Vec<Permutation>, Failure> {
    let mut perms = match (&input.file, &input.class) {
        (_, Some(name)) => {
            let class: NamedClass = name.parse()?;
            let len = input.max_len.ok_or_else(|| Failure::Usage("--class needs --max-len".into()))?;
            guard_n(cli, len)?;
            named_class(class.name(), len)?
        }
        (Some(path), None) => read_perm_file(path)?,
        (None, None) => return Err(Failure::Usage("give an input file or --class".into())),
    };
    if let Some(len) = input.max_len {
        perms.retain(|p| p.len() <= len);
    }
    Ok(perms)
}

fn cmd_mine(cli: &Cli, input: &InputArgs, m: usize) -> CmdResult {
    guard_m(cli, m)?;
    let perms = load_input(cli, input)?;
    let mined = bisc::mine(&perms, m)?;
    let pats: Vec<AnyPattern> = mined
        .families()
        .flat_map(|fam| {
            fam.shadings()
                .iter()
                .map(|&s| AnyPattern::Mesh(crate::patterns::MeshPattern::new(fam.pattern().clone(), s).expect("mined shading fits")))
        })
        .collect();
    Ok((pattern_lines(cli, &sorted(pats)), EXIT_OK))
}

fn cmd_bisc(cli: &Cli, input: &InputArgs, m: Option<usize>) -> CmdResult {
    let perms = load_input(cli, input)?;
    let Some(longest) = perms.iter().map(Permutation::len).max() else {
        return Ok((pattern_lines(cli, &[]), EXIT_OK));
    };
    let m = m.unwrap_or_else(|| longest.saturating_sub(1).clamp(1, cli.max_m.max(1)));
    guard_m(cli, m)?;
    let pats: Vec<AnyPattern> = bisc::bisc(&perms, m)?.into_iter().map(AnyPattern::Mesh).collect();
    Ok((pattern_lines(cli, &sorted(pats)), EXIT_OK))
}

fn cmd_avoiders(cli: &Cli, basis: &[String], n: usize, up_to: bool) -> CmdResult {
    guard_n(cli, n)?;
    let basis = parse_patterns(basis)?;
    let perms = if up_to { bisc::enumerate_avoiders_up_to(&basis, n)? } else { bisc::enumerate_avoiders(&basis, n)? };
    Ok((perm_lines(cli, &perms), EXIT_OK))
}

fn cmd_sort(cli: &Cli, perm: &str, pipeline: &str, trace: bool) -> CmdResult {
    let perm: Permutation = perm.parse()?;
    let pipeline: SortingPipeline = pipeline.parse()?;
    let steps = run_pipeline_traced(&perm, &pipeline)?;
    let output = steps.last().map_or(perm.clone(), |(_, p)| p.clone());
    let text = if cli.json {
        let mut v = json!({ "input": perm.values(), "pipeline": pipeline.to_string(), "output": output.values() });
        if trace {
            v["trace"] = steps.iter().map(|(st, p)| json!({ "stage": st.to_string(), "perm": p.values() })).collect();
        }
        format!("{v}\n")
    } else if trace {
        let mut s = format!("input {perm}\n");
        for (st, p) in &steps {
            let _ = writeln!(s, "{st} {p}");
        }
        s
    } else {
        format!("{output}\n")
    };
    Ok((text, EXIT_OK))
}

fn cmd_verify(
    cli: &Cli,
    device: &OptDeviceArgs,
    pattern: &[String],
    class: &Option<String>,
    basis: &[String],
    n: usize,
) -> CmdResult {
    guard_n(cli, n)?;
    let verification = match (class, &device.device) {
        (Some(name), _) => {
            let class: NamedClass = name.parse()?;
            if n > crate::corpus::CLASS_LIMIT {
                return Err(Error::ResourceLimit { what: "named class length", n, limit: crate::corpus::CLASS_LIMIT }.into());
            }
            let basis = parse_patterns(basis)?;
            let member = class.membership();
            bisc::verify_basis_with(|p| member(p), &basis, n)?
        }
        (None, Some(dev)) => {
            if pattern.is_empty() {
                return Err(Failure::Usage("verify --device needs --pattern".into()));
            }
            let device = parse_device(dev, device.d.as_deref())?;
            let targets = parse_perms(pattern)?;
            if n > ORACLE_LIMIT {
                return Err(Error::ResourceLimit { what: "preimage oracle length", n, limit: ORACLE_LIMIT }.into());
            }
            let basis = preimage_basis(device, &targets)?;
            let member = |p: &Permutation| match device.apply(p) {
                Ok(out) => targets.iter().all(|t| t.avoided_by(&out)),
                Err(_) => false,
            };
            bisc::verify_basis_with(member, std::slice::from_ref(&basis), n)?
        }
        (None, None) => return Err(Failure::Usage("verify needs --device or --class".into())),
    };
    let code = if verification.holds() { EXIT_OK } else { EXIT_FAIL };
    Ok((verification_text(cli, &verification), code))
}

fn verification_text(cli: &Cli, v: &Verification) -> String {
    let direction = |d: Direction| match d {
        Direction::Missing => "missing",
        Direction::Extra => "extra",
    };
    if cli.json {
        let ce = v.counterexample.as_ref().map(|c| json!({ "perm": c.perm.values(), "direction": direction(c.direction) }));
        return format!("{}\n", json!({ "result": if v.holds() { "PASS" } else { "FAIL" }, "n": v.n, "counterexample": ce, "warnings": v.warnings }));
    }
    let mut s = String::new();
    match &v.counterexample {
        None => {
            let _ = writeln!(s, "PASS n<={}", v.n);
        }
        Some(c) => {
            let _ = writeln!(s, "FAIL n<={}", v.n);
            let _ = writeln!(s, "counterexample {} {}", c.perm, direction(c.direction));
        }
    }
    for w in &v.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    s
}

fn cmd_check4312(cli: &Cli, perm: Option<&str>, file: Option<&Path>) -> CmdResult {
    let perms = match (perm, file) {
        (Some(p), None) => vec![p.parse::<Permutation>()?],
        (None, Some(path)) => read_perm_file(path)?,
        _ => return Err(Failure::Usage("give --perm or --file".into())),
    };
    let answers: Vec<bool> = perms.iter().map(avoids_4312_linear).collect();
    let text = if cli.json {
        format!("{}\n", json!(answers))
    } else {
        answers.iter().map(|a| format!("{a}\n")).collect()
    };
    Ok((text, EXIT_OK))
}

/// `stack` (unbounded unless `--d` is given), `stackd` with `--d`, `stackd:<d>` or `queue`.
pub fn parse_device(name: &str, d: Option<&str>) -> Result<Device, Error> {
    match (name.trim(), d) {
        ("stack" | "stackd", Some(d)) => Ok(Device::Stack(d.parse::<Depth>()?)),
        ("stackd", None) => Err(Error::Parse("device stackd needs --d".into())),
        (other, _) => other.parse(),
    }
}

fn split_items(items: &[String]) -> impl Iterator<Item = &str> {
    items.iter().flat_map(|s| s.split_whitespace())
}

fn parse_patterns(items: &[String]) -> Result<Vec<AnyPattern>, Error> {
    split_items(items).map(str::parse).collect()
}

fn parse_perms(items: &[String]) -> Result<Vec<Permutation>, Error> {
    split_items(items).map(str::parse).collect()
}

/// Orders patterns by length, then underlying permutation, then notation.
pub fn sorted(mut pats: Vec<AnyPattern>) -> Vec<AnyPattern> {
    pats.sort_by_cached_key(|p| (p.classical_pattern().len(), p.classical_pattern().clone(), p.to_string()));
    pats.dedup();
    pats
}

fn pattern_lines(cli: &Cli, pats: &[AnyPattern]) -> String {
    if cli.json {
        let js: Vec<PatternJson> = pats.iter().map(AnyPattern::to_json).collect();
        format!("{}\n", serde_json::to_string(&js).expect("patterns serialize"))
    } else {
        pats.iter().map(|p| format!("{p}\n")).collect()
    }
}

fn perm_lines(cli: &Cli, perms: &[Permutation]) -> String {
    if cli.json {
        let vs: Vec<&[usize]> = perms.iter().map(Permutation::values).collect();
        format!("{}\n", json!(vs))
    } else {
        perms.iter().map(|p| format!("{p}\n")).collect()
    }
}

fn bool_line(cli: &Cli, b: bool) -> String {
    if cli.json {
        format!("{}\n", json!(b))
    } else {
        format!("{b}\n")
    }
}
