//! `igusa`: JSON-in/JSON-out reports for zeta data of boundary divisors:
//! point counts, stratum zeta functions and their poles, summatory
//! asymptotics, Clemens complexes, toric and root-system exponents, heights,
//! and a few end-to-end worked examples.

mod commands;
mod parse;
mod report;

use clap::{Parser, Subcommand};
use std::time::Instant;

#[derive(Parser)]
#[command(name = "igusa")]
#[command(about = "Exact zeta data, Clemens complexes, and volume asymptotics")]
struct Cli {
    /// Emit a CSV projection of the outputs instead of JSON.
    #[arg(long, global = true)]
    csv: bool,

    /// Reserved; no randomized algorithms in this version.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count points of a polynomial system over Z/m.
    Count {
        /// JSON file with the polynomial system.
        system: String,
        /// Modulus for a single count.
        #[arg(long)]
        modulus: Option<u64>,
        /// Weil volume mode: prime and exponent, e.g. --weil 2,4.
        #[arg(long, value_delimiter = ',')]
        weil: Option<Vec<u64>>,
        /// Enumeration budget (candidate tuples).
        #[arg(long, default_value_t = 1_000_000_000)]
        budget: u128,
    },
    /// Assemble the zeta function of stratum-count data and report poles.
    Denef {
        /// JSON file with the stratum data.
        data: String,
        /// JSON file with the line weights {"id": {"lambda": "1", "rho": "0"}}.
        #[arg(long)]
        line: String,
        /// Also expand the series to this order and report partial sums.
        #[arg(long)]
        series: Option<u64>,
    },
    /// Summatory asymptotics of a rational coefficient stream.
    Tauber {
        /// Expression like '1/(1-u)^2' or a JSON {num, den} object.
        #[arg(long)]
        ratfun: String,
        /// The value scale: coefficients live at heights q^n.
        #[arg(long)]
        q: f64,
        /// Also compute the limit along n = n0 (mod d): "d,n0".
        #[arg(long, value_delimiter = ',')]
        progression: Option<Vec<u32>>,
        /// Also compute the Cesàro limit.
        #[arg(long)]
        cesaro: bool,
    },
    /// Build Clemens complexes from incidence data.
    Clemens {
        /// JSON incidence file.
        incidence: String,
        /// Restrict the analytic complex along weights "id=ratio,..".
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        rho: Option<String>,
    },
    /// Invariant sublattice, induced fan, and toric Clemens complexes.
    Toric {
        /// JSON file: {rank, cones, action?}.
        fan: String,
    },
    /// Wonderful-compactification exponents sigma, t for a Cartan type.
    Wonderful {
        /// Cartan letter: A, B, C, D, G, F.
        letter: char,
        rank: usize,
        /// Weight coordinates d_1,...,d_r against the simple roots.
        #[arg(value_delimiter = ',')]
        d: Vec<i64>,
    },
    /// Height of a rational projective point.
    Height {
        /// Coordinates like "2/3,1,0".
        #[arg(value_delimiter = ',')]
        coords: Vec<String>,
    },
    /// Global and local abscissas of divisor weights.
    Abscissa {
        /// JSON file with {components: [{id, d, lambda, has_point}]}.
        weights: String,
    },
    /// Assemble a global leading constant.
    Constant {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: usize,
        /// Critical multiplicities, comma separated.
        #[arg(long, value_delimiter = ',')]
        lambda: Vec<String>,
        #[arg(long)]
        integral: f64,
    },
    /// Built-in worked examples exercising the whole pipeline.
    Example {
        /// One of: x2p1, local-line, toric-p1p1, wonderful-a2,
        /// binary-forms, all.
        name: String,
        /// Prime bound for truncated Euler products.
        #[arg(long, default_value_t = 100_000)]
        prime_bound: u64,
        /// Leading value of the quadratic L-function at 1 (an analytic
        /// input; the default is the exact value pi/4 for Q(i)).
        #[arg(long)]
        zeta_star: Option<f64>,
    },
}

fn main() {
    let cli = Cli::parse();
    let start = Instant::now();
    match commands::run(&cli.command) {
        Ok(mut report) => {
            report.timing_ms = start.elapsed().as_millis();
            if cli.csv {
                print!("{}", report.to_csv());
            } else {
                println!("{}", report.to_json());
            }
        }
        Err(e) => {
            let payload = serde_json::json!({
                "error": e.message,
                "kind": format!("{:?}", e.kind),
            });
            eprintln!("{}", serde_json::to_string_pretty(&payload).unwrap());
            std::process::exit(match e.kind {
                commands::ErrorKind::Budget => 3,
                commands::ErrorKind::Validation => 2,
            });
        }
    }
}
