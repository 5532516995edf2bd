//! `chaoscrypt` command-line front end.

use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::chaos::MapKind;
use crate::codec::{read_keyfile, read_pgm, write_keyfile, write_pgm, KeyFile};
use crate::error::Result;
use crate::lattice::ScanPattern;
use crate::metrics::MetricsReport;
use crate::pipeline::{decrypt_image_with, encrypt_image_with, CipherMode};
use crate::Execution;

#[derive(Debug, Parser)]
#[command(
    name = "chaoscrypt",
    version,
    about = "Chaotic-map grayscale image cipher"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a key file from the defaults plus any overrides.
    Keygen(KeygenArgs),
    /// Encrypt a binary PGM image.
    Encrypt(CipherArgs),
    /// Decrypt a binary PGM image.
    Decrypt(CipherArgs),
    /// Compare a plain image with its cipher image.
    Analyze(AnalyzeArgs),
}

#[derive(Debug, Args)]
struct KeygenArgs {
    #[arg(long)]
    out: PathBuf,
    /// Start from an existing key file instead of the defaults.
    #[arg(long)]
    from: Option<PathBuf>,
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long)]
    mu_tent: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    c: Option<f64>,
    #[arg(long)]
    seed_logistic: Option<f64>,
    #[arg(long)]
    seed_tent: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    seed_quadratic: Option<f64>,
    #[arg(long)]
    seed_bernoulli: Option<f64>,
    /// Comma-separated hop order, e.g. `logistic,tent`.
    #[arg(long, value_delimiter = ',')]
    maps: Option<Vec<MapKind>>,
    #[arg(long)]
    orbits: Option<usize>,
    #[arg(long)]
    points: Option<usize>,
    #[arg(long)]
    offset: Option<f64>,
    #[arg(long)]
    burn_in: Option<usize>,
    #[arg(long)]
    alpha: Option<u8>,
    #[arg(long)]
    beta: Option<u8>,
    #[arg(long)]
    scan: Option<ScanPattern>,
    #[arg(long)]
    mode: Option<CipherMode>,
}

#[derive(Debug, Args)]
struct CipherArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    key: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Overrides the key file's mode.
    #[arg(long)]
    mode: Option<CipherMode>,
    /// Overrides the key file's scan pattern.
    #[arg(long)]
    scan: Option<ScanPattern>,
    /// Run on one thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[arg(long)]
    plain: PathBuf,
    #[arg(long)]
    cipher: PathBuf,
    /// Unpadded `name = value` lines, plus the cipher histogram.
    #[arg(long)]
    machine: bool,
}

fn keygen(args: KeygenArgs) -> Result<KeyFile> {
    let mut kf = match &args.from {
        Some(path) => read_keyfile(path)?,
        None => KeyFile::default(),
    };
    let k = &mut kf.key;
    macro_rules! set {
        ($($src:ident => $dst:expr),* $(,)?) => {
            $(if let Some(v) = args.$src.clone() { $dst = v; })*
        };
    }
    set! {
        mu => k.params.mu,
        mu_tent => k.params.mu_tent,
        c => k.params.c,
        seed_logistic => k.seeds.logistic,
        seed_tent => k.seeds.tent,
        seed_quadratic => k.seeds.quadratic,
        seed_bernoulli => k.seeds.bernoulli,
        maps => k.hop.map_order,
        orbits => k.hop.orbits_per_map,
        points => k.hop.points_per_orbit,
        offset => k.hop.seed_offset,
        burn_in => k.hop.burn_in,
        alpha => k.alpha,
        beta => k.beta,
        scan => k.scan,
        mode => kf.mode,
    }
    write_keyfile(&kf, &args.out)?;
    Ok(kf)
}

fn cipher(args: CipherArgs, decrypt: bool) -> Result<()> {
    let mut kf = read_keyfile(&args.key)?;
    if let Some(scan) = args.scan {
        kf.key.scan = scan;
    }
    let mode = args.mode.unwrap_or(kf.mode);
    let exec = if args.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    let img = read_pgm(&args.input)?;
    let out = if decrypt {
        decrypt_image_with(&img, &kf.key, mode, exec)?
    } else {
        encrypt_image_with(&img, &kf.key, mode, exec)?
    };
    write_pgm(&out, &args.out)
}

fn analyze(args: &AnalyzeArgs) -> Result<MetricsReport> {
    let plain = read_pgm(&args.plain)?;
    let cipher = read_pgm(&args.cipher)?;
    MetricsReport::compute(&plain, &cipher)
}

/// Runs the tool with `args` (including the program name), writing normal
/// output to `stdout` and diagnostics to `stderr`. Returns the exit code:
/// 0 on success, 1 for runtime failures, 2 for usage errors.
pub fn run_with<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    0
                }
                _ => {
                    let rendered = e.render().to_string();
                    let first = rendered
                        .lines()
                        .next()
                        .unwrap_or("error: invalid arguments");
                    let _ = writeln!(stderr, "{first}");
                    2
                }
            };
        }
    };

    let result = match cli.command {
        Command::Keygen(args) => {
            let out = args.out.clone();
            keygen(args).map(|_| {
                let _ = writeln!(stdout, "wrote key file {}", out.display());
            })
        }
        Command::Encrypt(args) => cipher(args, false),
        Command::Decrypt(args) => cipher(args, true),
        Command::Analyze(args) => analyze(&args).map(|report| {
            let text = if args.machine {
                report.to_machine()
            } else {
                report.to_text()
            };
            let _ = write!(stdout, "{text}");
        }),
    };

    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

/// [`run_with`] on the process's standard streams.
pub fn run_cli<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    run_with(args, &mut std::io::stdout(), &mut std::io::stderr())
}
