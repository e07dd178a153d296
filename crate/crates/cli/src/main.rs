use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use consecrel::consec::{build_p_of_z, build_rel_recurrence, SystemSpec};
use consecrel::verify;
use consecrel_cli::{figure, Domain};

#[derive(Parser)]
#[command(
    name = "consecrel",
    version,
    about = "Reliability polynomials of consecutive-k-out-of-n:F systems: exact construction, roots, and verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print Rel(k,n;p) or its z-domain companion with exact coefficients
    Poly {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        k: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = VarArg::P)]
        var: VarArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Compute roots in the p- or z-domain as CSV rows
    Roots {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        k: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = DomainArg::P)]
        domain: DomainArg,
        #[arg(long, value_enum, default_value_t = MethodArg::Numeric)]
        method: MethodArg,
        #[arg(long, env = "CONSECREL_PRECISION", default_value_t = consecrel::DEFAULT_PRECISION)]
        precision: u32,
    },
    /// Run an invariant suite and report every check
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 40)]
        max_n: u32,
        /// Also write the report as JSON to this path
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Trace the running maximum |p|-root as n grows
    Scan {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        k: u32,
        #[arg(long)]
        n_max: u32,
        #[arg(long, env = "CONSECREL_PRECISION", default_value_t = consecrel::DEFAULT_PRECISION)]
        precision: u32,
    },
    /// Tabulate predicted vs empirical largest-root indices for k = 2
    Audit {
        #[arg(long, default_value_t = 128)]
        max_n: u32,
        #[arg(long, env = "CONSECREL_PRECISION", default_value_t = consecrel::DEFAULT_PRECISION)]
        precision: u32,
    },
    /// Write scatter data (CSV) or a static plot (SVG) to a file
    Figure {
        #[arg(long, value_enum)]
        which: WhichArg,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = FigFormatArg::Csv)]
        format: FigFormatArg,
        #[arg(long, env = "CONSECREL_PRECISION", default_value_t = consecrel::DEFAULT_PRECISION)]
        precision: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VarArg {
    P,
    Z,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum DomainArg {
    P,
    Z,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Numeric,
    Closed,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Oracle,
    Closedform,
    Bkw,
    Fibjac,
    All,
}

impl SuiteArg {
    fn name(self) -> &'static str {
        match self {
            SuiteArg::Oracle => "oracle",
            SuiteArg::Closedform => "closedform",
            SuiteArg::Bkw => "bkw",
            SuiteArg::Fibjac => "fibjac",
            SuiteArg::All => "all",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum WhichArg {
    Fig2,
    Fig3a,
}

#[derive(Clone, Copy, ValueEnum)]
enum FigFormatArg {
    Csv,
    Svg,
}

/// Bad flag combination caught after clap parsing; exits with code 2 like
/// clap's own usage errors.
#[derive(Debug)]
struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) if e.is::<UsageError>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Poly { k, n, var, format } => {
            let spec = SystemSpec::new(k, n)?;
            let poly = match var {
                VarArg::P => build_rel_recurrence(spec),
                VarArg::Z => build_p_of_z(spec),
            };
            let out = match format {
                FormatArg::Text => consecrel_cli::poly_text(&poly),
                FormatArg::Json => consecrel_cli::poly_json(k, n, &poly),
                FormatArg::Csv => consecrel_cli::poly_csv(&poly),
            };
            print!("{out}");
            Ok(0)
        }
        Command::Roots {
            k,
            n,
            domain,
            method,
            precision,
        } => {
            let domain = match domain {
                DomainArg::P => Domain::P,
                DomainArg::Z => Domain::Z,
            };
            let out = match method {
                MethodArg::Numeric => consecrel_cli::roots_csv_numeric(k, n, domain, precision)?,
                MethodArg::Closed => {
                    if k != 2 {
                        return Err(UsageError("closed form requires k=2".into()).into());
                    }
                    consecrel_cli::roots_csv_closed(n, domain, precision)?
                }
            };
            print!("{out}");
            Ok(0)
        }
        Command::Verify { suite, max_n, json } => {
            let checks = match suite {
                SuiteArg::Oracle => verify::suite_oracle(max_n),
                SuiteArg::Closedform => verify::suite_closedform(max_n),
                SuiteArg::Bkw => verify::suite_bkw(max_n),
                SuiteArg::Fibjac => verify::suite_fibjac(max_n),
                SuiteArg::All => verify::suite_all(max_n),
            };
            print!("{}", consecrel_cli::render_checks_human(&checks));
            if let Some(path) = json {
                let report = consecrel_cli::render_checks_json(suite.name(), max_n, &checks);
                fs::write(&path, report)
                    .with_context(|| format!("writing report to {}", path.display()))?;
            }
            Ok(if checks.iter().all(|c| c.passed) { 0 } else { 1 })
        }
        Command::Scan {
            k,
            n_max,
            precision,
        } => {
            print!("{}", consecrel_cli::scan_csv(k, n_max, precision)?);
            Ok(0)
        }
        Command::Audit { max_n, precision } => {
            print!("{}", consecrel_cli::remark_audit_csv(max_n, precision));
            Ok(0)
        }
        Command::Figure {
            which,
            out,
            format,
            precision,
        } => {
            let which = match which {
                WhichArg::Fig2 => figure::Which::Fig2,
                WhichArg::Fig3a => figure::Which::Fig3a,
            };
            let pts = figure::points(which, precision);
            let payload = match format {
                FigFormatArg::Csv => figure::csv(which, &pts),
                FigFormatArg::Svg => figure::svg(which, &pts),
            };
            fs::write(&out, &payload)
                .with_context(|| format!("writing figure to {}", out.display()))?;
            eprintln!("wrote {} ({} points)", out.display(), pts.len());
            Ok(0)
        }
    }
}
