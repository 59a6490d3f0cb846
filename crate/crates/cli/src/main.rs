use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;

use dscat_cli::commands::{self, Kind, MatrixFormat, Method};
use dscat_cli::payload;

#[derive(Parser)]
#[command(
    name = "dscat",
    version,
    about = "Dehn-Sommerville matroids, Catalan matroids and f-vector reconstruction"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Dehn-Sommerville matrix M_d.
    Matrix {
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: MatrixFormat,
    },
    /// List the Dehn-Sommerville bases of dimension d.
    Bases {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        d: u32,
        #[arg(long, value_enum, default_value = "minors")]
        method: Method,
        #[arg(long)]
        count_only: bool,
    },
    /// Reconstruct an f-vector from entries at a set of labels.
    Reconstruct {
        #[arg(long)]
        d: usize,
        /// Comma-separated `label=value` pairs, e.g. `1=1,2=8,3=27`.
        #[arg(long, value_parser = parse_known)]
        known: KnownPairs,
    },
    /// Convert between f-, h- and g-vectors.
    Transform {
        #[arg(long, value_enum)]
        from: Kind,
        /// Required with `--from g`; otherwise checked against the vector length.
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        values: Vec<BigInt>,
    },
    /// Check non-negativity, Dehn-Sommerville symmetry and the M-sequence condition.
    Validate {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        f: Vec<BigInt>,
    },
    /// Test a label set with all three basis criteria.
    IsBasis {
        #[arg(long)]
        d: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<usize>,
    },
    /// Dyck paths of semilength n and their upstep sets.
    Catalan {
        #[arg(long)]
        n: usize,
    },
    /// Grassmann necklace and decorated permutation of DS_d.
    Positroid {
        #[arg(long)]
        d: usize,
    },
    /// Verify oracle agreement and the deletion identities over a range of d.
    Check {
        #[arg(long, default_value_t = 1)]
        d_min: usize,
        #[arg(long, default_value_t = 8)]
        d_max: usize,
    },
    /// Find vertex-disjoint paths from the sources to a set of sinks.
    Route {
        #[arg(long)]
        d: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        sinks: Vec<usize>,
        /// Print a text diagram instead of JSON.
        #[arg(long)]
        draw: bool,
    },
}

#[derive(Clone, Debug)]
struct KnownPairs(Vec<(usize, BigInt)>);

fn parse_known(s: &str) -> Result<KnownPairs, String> {
    s.split(',')
        .map(|pair| {
            let (l, v) = pair
                .split_once('=')
                .ok_or_else(|| format!("expected label=value, got {pair:?}"))?;
            let l = l.trim().parse().map_err(|_| format!("bad label {l:?}"))?;
            let v = v.trim().parse().map_err(|_| format!("bad value {v:?}"))?;
            Ok((l, v))
        })
        .collect::<Result<_, _>>()
        .map(KnownPairs)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match cli.command {
        Command::Matrix { d, format } => commands::matrix(d, format),
        Command::Bases { d, method, count_only } => commands::bases(d as usize, method, count_only),
        Command::Reconstruct { d, known } => commands::reconstruct_cmd(d, &known.0),
        Command::Transform { from, d, values } => commands::transform(from, d, values),
        Command::Validate { f } => commands::validate_cmd(f),
        Command::IsBasis { d, set } => commands::is_basis(d, set),
        Command::Catalan { n } => commands::catalan(n),
        Command::Positroid { d } => commands::positroid(d),
        Command::Check { d_min, d_max } => commands::check(d_min, d_max),
        Command::Route { d, sinks, draw } => commands::route(d, sinks, draw),
    };
    match out {
        Ok(s) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            print!("{}", payload::to_json(&e));
            ExitCode::from(1)
        }
    }
}
