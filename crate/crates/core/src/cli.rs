//! Command-line front end.
//!
//! `gen` writes raw output bytes (offsets 16..256 of every refill, in order)
//! for piping into external test batteries, e.g.
//! `randen gen | RNG_test stdin64` or TestU01's file-based generators.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

use crate::aes::{verify_backends, AesError, Backend, BackendPreference};
use crate::bench::{format_report, run_suite, BenchConfig, BenchKind, EngineKind, Timer};
use crate::generator::{Randen, Seed};
use crate::golden;
use crate::permutation::{derive_round_keys, inverse_permute, permute, KeySource, PermutationState};
use crate::search::{emit_bound_table, exact_min_active, fast_min_active, Network};
use crate::smoke;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "randen", version, about = "Backtracking-resistant random generator and tools")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Stream raw generator bytes.
    Gen(GenArgs),
    /// Time the generator workloads.
    Bench(BenchArgs),
    /// Lower bounds on active round functions.
    Search(SearchArgs),
    #[command(hide = true)]
    Selftest(SelftestArgs),
}

/// Byte budget for `gen`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ByteCount {
    Finite(u64),
    Infinite,
}

impl FromStr for ByteCount {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "infinite" || s == "inf" {
            return Ok(ByteCount::Infinite);
        }
        s.parse().map(ByteCount::Finite).map_err(|_| format!("expected a byte count or `infinite`, got {s:?}"))
    }
}

fn parse_keys(s: &str) -> Result<KeySource, String> {
    Ok(match s {
        "builtin-pi" => KeySource::BuiltinPi,
        path => KeySource::File(PathBuf::from(path)),
    })
}

#[derive(Debug, clap::Args)]
struct EngineArgs {
    /// Four comma-separated 64-bit values, decimal or 0x-prefixed hex.
    #[arg(long, default_value = "0,0,0,0", value_parser = |s: &str| s.parse::<Seed>().map_err(|e| e.to_string()))]
    seed: Seed,
    /// `builtin-pi` or a path to a 2176-byte key file.
    #[arg(long, default_value = "builtin-pi", value_parser = parse_keys)]
    keys: KeySource,
    /// auto, hardware or software.
    #[arg(long, default_value = "auto", value_parser = |s: &str| s.parse::<BackendPreference>().map_err(|e| e.to_string()))]
    backend: BackendPreference,
}

#[derive(Debug, clap::Args)]
struct GenArgs {
    #[command(flatten)]
    engine: EngineArgs,
    /// Number of bytes, or `infinite`.
    #[arg(long, default_value = "infinite")]
    bytes: ByteCount,
    /// Output file (default: standard output).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
struct BenchArgs {
    /// loop, shuffle, sample, montecarlo or all.
    #[arg(long, default_value = "all")]
    kind: String,
    /// randen, randen-sw, mt19937-64, splitmix64 or all.
    #[arg(long, default_value = "all")]
    engine: String,
    #[arg(long, default_value_t = 31)]
    reps: usize,
    /// Emit one JSON object per row instead of a text table.
    #[arg(long)]
    json: bool,
    /// Time with monotonic nanoseconds and report cycles of a clock at this frequency.
    #[arg(long, value_name = "HZ")]
    tsc_freq: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Fast,
    Exact,
}

#[derive(Debug, clap::Args)]
struct SearchArgs {
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..=24))]
    rounds: u16,
    #[arg(long, value_enum, default_value = "exact")]
    mode: Mode,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    workers: u16,
    /// Print the exact bound for every round count up to --rounds.
    #[arg(long)]
    table: bool,
    /// Machine-readable rows (JSON lines) for --table.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, clap::Args)]
struct SelftestArgs {
    /// Random (state, key) pairs for the backend comparison.
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    /// Skip the 8 MB statistical smoke test.
    #[arg(long)]
    quick: bool,
}

/// Parses `args` (including the program name) and runs the subcommand.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match cli.command {
        Command::Gen(args) => gen(args, out, err),
        Command::Bench(args) => bench(args, out, err),
        Command::Search(args) => search(args, out, err),
        Command::Selftest(args) => selftest(args, out, err),
    }
}

fn build_engine(args: &EngineArgs) -> Result<Randen, String> {
    let keys = derive_round_keys(&args.keys).map_err(|e| e.to_string())?;
    let backend = Backend::select(args.backend).map_err(|e| e.to_string())?;
    Ok(Randen::with_keys(args.seed, keys, backend))
}

fn gen(args: GenArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut rng = match build_engine(&args.engine) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "randen: {e}");
            return EXIT_USAGE;
        }
    };
    let result = match &args.out {
        Some(path) => File::create(path).and_then(|f| {
            let mut w = BufWriter::new(f);
            stream(&mut rng, args.bytes, &mut w)?;
            w.flush()
        }),
        None => stream(&mut rng, args.bytes, out).and_then(|_| out.flush()),
    };
    match result {
        Ok(()) => EXIT_OK,
        // Downstream closed the pipe: everything written so far was whole.
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "randen: write failed: {e}");
            EXIT_FAILURE
        }
    }
}

/// Writes `count` bytes of the engine's byte stream.
pub fn stream(rng: &mut Randen, count: ByteCount, w: &mut dyn Write) -> io::Result<()> {
    let mut buf = [0u8; 64 * 240];
    let mut remaining = match count {
        ByteCount::Finite(n) => n,
        ByteCount::Infinite => u64::MAX,
    };
    while remaining > 0 {
        let n = remaining.min(buf.len() as u64) as usize;
        rng.fill_bytes(&mut buf[..n]);
        w.write_all(&buf[..n])?;
        if count != ByteCount::Infinite {
            remaining -= n as u64;
        }
    }
    Ok(())
}

fn parse_list<T: FromStr + Copy>(s: &str, all: &[T]) -> Result<Vec<T>, T::Err> {
    if s == "all" {
        return Ok(all.to_vec());
    }
    s.split(',').map(|p| p.trim().parse()).collect()
}

fn bench(args: BenchArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let kinds = parse_list(&args.kind, &BenchKind::ALL);
    let engines = parse_list(&args.engine, &EngineKind::ALL);
    let (kinds, engines) = match (kinds, engines) {
        (Ok(k), Ok(e)) => (k, e),
        (Err(e), _) | (_, Err(e)) => {
            let _ = writeln!(err, "randen: {e}");
            return EXIT_USAGE;
        }
    };
    if let Some(e) = engines.iter().find(|e| !e.is_available()) {
        if args.engine != "all" {
            let _ = writeln!(err, "randen: engine {e}: {}", AesError::HardwareUnavailable);
            return EXIT_FAILURE;
        }
    }
    let timer = match args.tsc_freq {
        Some(hz) if hz > 0.0 => Timer::nominal_cycles(hz),
        Some(_) => {
            let _ = writeln!(err, "randen: --tsc-freq must be positive");
            return EXIT_USAGE;
        }
        None => Timer::detect(),
    };
    let config = BenchConfig { repetitions: args.reps, timer, ..BenchConfig::default() };
    let rows = match run_suite(&kinds, &engines, &config) {
        Ok(rows) => rows,
        Err(e) => {
            let _ = writeln!(err, "randen: {e}");
            return EXIT_FAILURE;
        }
    };
    let written = if args.json {
        rows.iter().try_for_each(|r| writeln!(out, "{}", serde_json::to_string(r).expect("serializable row")))
    } else {
        out.write_all(format_report(&rows).as_bytes())
    };
    if written.is_err() {
        return EXIT_FAILURE;
    }
    EXIT_OK
}

fn search(args: SearchArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let net = Network::randen();
    let rounds = args.rounds as usize;
    let workers = args.workers as usize;
    let written = if args.table {
        let table = match args.mode {
            Mode::Exact => emit_bound_table(&net, rounds, workers),
            Mode::Fast => {
                let _ = writeln!(err, "randen: --table requires --mode exact");
                return EXIT_USAGE;
            }
        };
        let table = match table {
            Ok(t) => t,
            Err(e) => {
                let _ = writeln!(err, "randen: {e}");
                return EXIT_FAILURE;
            }
        };
        let w = if args.json {
            table.rows.iter().try_for_each(|r| writeln!(out, "{}", serde_json::to_string(r).expect("serializable row")))
        } else {
            write!(out, "{table}")
        };
        if !table.all_match() {
            let _ = writeln!(err, "randen: bound table diverges from reference values");
            return EXIT_FAILURE;
        }
        w
    } else {
        let bound = match args.mode {
            Mode::Fast => fast_min_active(&net, rounds),
            Mode::Exact => exact_min_active(&net, rounds, workers),
        };
        match bound {
            Ok(b) => writeln!(out, "{b}"),
            Err(e) => {
                let _ = writeln!(err, "randen: {e}");
                return EXIT_FAILURE;
            }
        }
    };
    if written.is_err() {
        return EXIT_FAILURE;
    }
    EXIT_OK
}

fn selftest(args: SelftestArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut failed = Vec::new();
    let mut report = |name: &str, result: Result<String, String>| {
        let _ = match &result {
            Ok(detail) => writeln!(out, "ok    {name}: {detail}"),
            Err(detail) => writeln!(out, "FAIL  {name}: {detail}"),
        };
        if result.is_err() {
            failed.push(name.to_string());
        }
    };

    let backend_check = match verify_backends(args.samples.max(1)) {
        Ok(true) => Ok(format!("hardware == software on {} samples", args.samples.max(1))),
        Ok(false) => Err("hardware and software AES rounds disagree".to_string()),
        Err(AesError::HardwareUnavailable) => Ok("hardware backend unavailable; software only".to_string()),
        Err(e) => Err(e.to_string()),
    };
    report("backends", backend_check);

    let mut backends = vec![Backend::software()];
    if let Ok(hw) = Backend::hardware() {
        backends.push(hw);
    }
    for backend in backends {
        let name = format!("golden-{}", backend.kind());
        let keys = crate::permutation::KeySchedule::builtin_pi();
        let check = [(Seed::default(), &golden::ZERO_SEED_FIRST_BUFFER), (Seed::new(1, 2, 3, 4), &golden::SEED_1234_FIRST_BUFFER)]
            .iter()
            .try_for_each(|(seed, expected)| {
                let mut rng = Randen::with_keys(*seed, keys.clone(), backend);
                let mut buf = [0u8; 240];
                rng.fill_bytes(&mut buf);
                if buf == **expected {
                    Ok(())
                } else {
                    Err(format!("first buffer for seed {seed} differs"))
                }
            })
            .map(|_| "first 240 bytes for two seeds".to_string());
        report(&name, check);

        let inverse_name = format!("inverse-{}", backend.kind());
        let s = PermutationState::from_bytes(std::array::from_fn(|i| (i * 7 + 3) as u8));
        let roundtrip = inverse_permute(&permute(&s, &keys, backend), &keys, backend) == s;
        report(&inverse_name, if roundtrip { Ok("permute then inverse".into()) } else { Err("not the identity".into()) });
    }

    if !args.quick {
        let r = smoke::smoke_test(Seed::new(1, 2, 3, 4));
        let detail = format!("ones fraction {:.6}, byte chi-square {:.1} (p = {:.4})", r.ones_fraction, r.chi_square, r.p_value);
        report("smoke", if r.passed() { Ok(detail) } else { Err(detail) });
    }

    if failed.is_empty() {
        EXIT_OK
    } else {
        let _ = writeln!(err, "randen: selftest failed: {}", failed.join(", "));
        EXIT_FAILURE
    }
}
