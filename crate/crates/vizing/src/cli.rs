// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! The `vizing` command line.
//!
//! Exit codes: 0 when every asserted check passes, 1 for usage, input and
//! I/O errors, 2 when a substantive bound fails.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use vizing_core::audit::{self, AuditConfig, Mode, Outcome};
use vizing_core::engine::{self, ScheduleError, SchedulerConfig};
use vizing_core::{is_proper, Multigraph, PartialColouring};

use crate::formats;
use crate::report::{self, StatsRow};
use crate::threads::Threads;

#[derive(Parser, Debug)]
#[command(
    name = "vizing",
    version,
    about = "Vizing-chain edge colouring and auditing"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a random multigraph in `mg` format.
    Gen(GenArgs),
    /// Colour every edge with sequential Vizing chains.
    Colour(ColourArgs),
    /// Run the round scheduler with improvement parameter L.
    Schedule(ScheduleArgs),
    /// Audit a colouring and write a report.
    Audit(AuditArgs),
    /// Sweep the scheduler over several values of L.
    Stats(StatsArgs),
    /// Orient a simple graph from a full colouring.
    Orient(OrientArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Simple,
    Iterated,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Simple => Mode::Simple,
            ModeArg::Iterated => Mode::Iterated,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(clap::Args, Debug)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 3)]
    pub delta: u32,
    #[arg(long, default_value_t = 1)]
    pub pi: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Defaults to standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
pub struct ColourArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
pub struct ScheduleArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Colouring dump.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long = "L")]
    pub l: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::Simple)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[arg(long)]
    pub max_rounds: Option<u64>,
    /// JSON-lines round log; defaults to `<output>.log`, or standard error
    /// without `--output`.
    #[arg(long)]
    pub log: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
pub struct AuditArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Colouring dump to audit.
    #[arg(long)]
    pub colouring: PathBuf,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long = "L")]
    pub l: Option<usize>,
    #[arg(long, value_enum, default_value_t = ModeArg::Simple)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(clap::Args, Debug)]
pub struct StatsArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Comma-separated list of values.
    #[arg(long = "L", value_delimiter = ',', required = true)]
    pub l: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::Simple)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[arg(long)]
    pub max_rounds: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(clap::Args, Debug)]
pub struct OrientArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Full colouring dump; computed with `colour` when absent.
    #[arg(long)]
    pub colouring: Option<PathBuf>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// A failed command: the message and the exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Multigraph, Failure> {
    formats::parse_mg(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_colouring<'g>(path: &Path, g: &'g Multigraph) -> Result<PartialColouring<'g>, Failure> {
    let a = formats::parse_colouring(&read(path)?, g)
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    PartialColouring::from_assignment(g, &a).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Where command output goes.
pub struct Sink<'a> {
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
}

impl Sink<'_> {
    fn emit(&mut self, path: Option<&Path>, text: &str) -> Result<(), Failure> {
        match path {
            Some(p) => fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
            None => self
                .stdout
                .write_all(text.as_bytes())
                .map_err(|e| usage(e.to_string())),
        }
    }
}

fn render(v: &serde_json::Value, format: Format) -> String {
    match format {
        Format::Json => report::to_json(v),
        Format::Tsv => report::to_tsv(v),
    }
}

fn check_parameter(g: &Multigraph, l: usize) -> Result<(), Failure> {
    if l <= 2 * g.delta() as usize {
        return Err(usage(format!(
            "L = {l} must exceed 2Δ = {}: a chain is at most 2Δ + 2L ≤ 3L edges long only when L > 2Δ",
            2 * g.delta()
        )));
    }
    Ok(())
}

fn schedule_failure(e: ScheduleError) -> Failure {
    usage(e.to_string())
}

fn cmd_gen(a: GenArgs, out: &mut Sink<'_>) -> Result<(), Failure> {
    if a.delta == 0 || a.pi == 0 {
        return Err(usage("--delta and --pi must be at least 1"));
    }
    if (a.delta + a.pi) as usize > vizing_core::MAX_PALETTE {
        return Err(usage(format!(
            "Δ + π must be at most {}",
            vizing_core::MAX_PALETTE
        )));
    }
    let g = Multigraph::generate_random(a.n, a.delta, a.pi, a.seed);
    out.emit(a.output.as_deref(), &formats::write_mg(&g))
}

fn cmd_colour(a: ColourArgs, out: &mut Sink<'_>) -> Result<(), Failure> {
    let g = read_graph(&a.input)?;
    let c = engine::colour_sequential(&g);
    assert!(
        c.is_full() && is_proper(&c),
        "sequential colouring must be full and proper"
    );
    out.emit(a.output.as_deref(), &formats::write_colouring(&c))
}

fn cmd_schedule(a: ScheduleArgs, out: &mut Sink<'_>) -> Result<(), Failure> {
    let g = read_graph(&a.input)?;
    check_parameter(&g, a.l)?;
    let config = SchedulerConfig {
        l: a.l,
        seed: a.seed,
        max_rounds: a.max_rounds,
        mode: a.mode.into(),
    };
    let mut log = String::new();
    let result = engine::run_scheduler(&g, config, &Threads::new(a.workers), |_, r| {
        log.push_str(&report::round_json(r));
        log.push('\n');
    });
    let log_path = a.log.clone().or_else(|| {
        a.output.as_ref().map(|p| {
            let mut s = p.clone().into_os_string();
            s.push(".log");
            PathBuf::from(s)
        })
    });
    let write_log = |out: &mut Sink<'_>| match &log_path {
        Some(p) => fs::write(p, &log).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => out
            .stderr
            .write_all(log.as_bytes())
            .map_err(|e| usage(e.to_string())),
    };
    match result {
        Ok(run) => {
            out.emit(
                a.output.as_deref(),
                &formats::write_colouring(&run.colouring),
            )?;
            write_log(out)
        }
        Err(ScheduleError::RoundLimit {
            rounds,
            uncoloured,
            assignment,
        }) => {
            let c = PartialColouring::from_assignment(&g, &assignment).expect("scheduler state");
            out.emit(a.output.as_deref(), &formats::write_colouring(&c))?;
            write_log(out)?;
            Err(usage(format!("round limit {rounds} reached with {uncoloured} edges still uncoloured; state written")))
        }
        Err(e) => Err(schedule_failure(e)),
    }
}

fn cmd_audit(a: AuditArgs, out: &mut Sink<'_>) -> Result<(), Failure> {
    let g = read_graph(&a.input)?;
    let c = read_colouring(&a.colouring, &g)?;
    let mode = a.mode.into();
    let config = AuditConfig {
        l: a.l,
        mode,
        ..AuditConfig::default()
    };
    let r = audit::audit(&c, config, &Threads::new(a.workers));
    out.emit(
        a.output.as_deref(),
        &render(&report::audit_json(&r, a.l, mode), a.format),
    )?;
    if r.all_pass() {
        Ok(())
    } else {
        Err(Failure {
            code: 2,
            message: "audit: a checked bound failed".into(),
        })
    }
}

fn cmd_stats(a: StatsArgs, out: &mut Sink<'_>) -> Result<(), Failure> {
    let g = read_graph(&a.input)?;
    for &l in &a.l {
        check_parameter(&g, l)?;
    }
    let mut rows = Vec::new();
    let mut failed = false;
    for &l in &a.l {
        let config = SchedulerConfig {
            l,
            seed: a.seed,
            max_rounds: a.max_rounds,
            mode: a.mode.into(),
        };
        let run = engine::run_scheduler(&g, config, &Threads::new(a.workers), |_, _| {})
            .map_err(schedule_failure)?;
        let simple = audit::uncoloured_fraction_bounds(&run.colouring, l, Mode::Simple);
        let iterated = audit::uncoloured_fraction_bounds(&run.colouring, l, Mode::Iterated);
        failed |= simple.outcome == Outcome::Fail || iterated.outcome == Outcome::Fail;
        rows.push(StatsRow {
            l,
            fraction: simple.fraction,
            simple_bound: simple.bound,
            iterated_bound: iterated.bound,
            simple_outcome: simple.outcome.as_str(),
            iterated_outcome: iterated.outcome.as_str(),
        });
    }
    let text = match a.format {
        Format::Json => report::to_json(&report::stats_json(&rows)),
        Format::Tsv => report::stats_tsv(&rows),
    };
    out.emit(a.output.as_deref(), &text)?;
    if failed {
        Err(Failure {
            code: 2,
            message: "stats: an uncoloured-fraction bound failed".into(),
        })
    } else {
        Ok(())
    }
}

fn cmd_orient(a: OrientArgs, out: &mut Sink<'_>) -> Result<(), Failure> {
    let g = read_graph(&a.input)?;
    let c = match &a.colouring {
        Some(p) => read_colouring(p, &g)?,
        None => engine::colour_sequential(&g),
    };
    let o = engine::orient(&c).map_err(|e| usage(e.to_string()))?;
    out.emit(a.output.as_deref(), &formats::write_orientation(&o))?;
    let bound = (g.delta() as usize + 2).div_ceil(2);
    let worst = o.max_out_degree(g.vertex_count());
    if c.colours_used() <= g.delta() as usize + 1 && worst > bound {
        return Err(Failure {
            code: 2,
            message: format!("orient: out-degree {worst} exceeds ⌈(Δ+2)/2⌉ = {bound}"),
        });
    }
    Ok(())
}

pub fn execute(cli: Cli, out: &mut Sink<'_>) -> Result<(), Failure> {
    match cli.command {
        Command::Gen(a) => cmd_gen(a, out),
        Command::Colour(a) => cmd_colour(a, out),
        Command::Schedule(a) => cmd_schedule(a, out),
        Command::Audit(a) => cmd_audit(a, out),
        Command::Stats(a) => cmd_stats(a, out),
        Command::Orient(a) => cmd_orient(a, out),
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut sink = Sink { stdout, stderr };
    match execute(cli, &mut sink) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(sink.stderr, "vizing: {}", f.message);
            f.code
        }
    }
}
