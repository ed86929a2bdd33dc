use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use typeb_cells::cells::{combinatorial_cells, Side};
use typeb_cells::hecke::{KlOracle, WeightFunction};
use typeb_cells::insertion::{insert, insert_steps};
use typeb_cells::verify::{
    verify_class_decomposition, verify_conjecture, verify_insertion, verify_intermediate_structure, verify_split, verify_tau, Report,
};
use typeb_cells::SignedPermutation;

#[derive(Parser)]
#[command(name = "typeb", about = "Domino insertion and cells in type B with unequal parameters")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Insertion,
    Tau,
    Classes,
    Conjecture,
    Intermediate,
    Split,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Comb,
    Kl,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite; exits non-zero if any check fails.
    Verify {
        suite: Suite,
        #[arg(long)]
        n: usize,
        /// Largest rank (insertion) or the single rank (classes); all ranks up to n by default.
        #[arg(long)]
        rank: Option<usize>,
        /// Parameter ratio b/a, or `all` for 1..=n.
        #[arg(long, default_value = "all")]
        ratio: String,
        /// Directory for the Kazhdan–Lusztig cache.
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Write the reports as a JSON array.
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        verbose: bool,
    },
    /// Print a cell partition.
    Cells {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, default_value = "L")]
        side: String,
        #[arg(long, value_enum, default_value = "comb")]
        kind: Kind,
        /// Ratio b/a for `--kind kl`; defaults to rank + 1.
        #[arg(long)]
        ratio: Option<u32>,
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Write the partition as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Insert a signed permutation, e.g. `--perm "4 1 -3 -2"`.
    Insert {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        perm: String,
        #[arg(long, default_value_t = 0)]
        rank: usize,
        /// Show every intermediate pair.
        #[arg(long)]
        steps: bool,
    },
}

fn ratios(spec: &str, n: usize) -> Result<Vec<u32>, String> {
    if spec == "all" {
        return Ok((1..=n as u32).collect());
    }
    spec.parse::<u32>().map(|k| vec![k]).map_err(|e| format!("bad --ratio {spec:?}: {e}"))
}

fn run(cli: Cli) -> Result<bool, Box<dyn std::error::Error>> {
    match cli.command {
        Command::Verify { suite, n, rank, ratio, cache, json, verbose } => {
            let cache = cache.as_deref();
            let reports: Vec<Report> = match suite {
                Suite::Insertion => vec![verify_insertion(n, rank.unwrap_or(n), verbose)],
                Suite::Tau => vec![verify_tau(n, verbose)],
                Suite::Classes => match rank {
                    Some(r) => vec![verify_class_decomposition(n, r, verbose)],
                    None => (0..=n).map(|r| verify_class_decomposition(n, r, verbose)).collect(),
                },
                Suite::Conjecture => {
                    ratios(&ratio, n)?.into_iter().map(|k| verify_conjecture(n, k, cache, verbose)).collect()
                }
                Suite::Intermediate => vec![verify_intermediate_structure(n, cache, verbose)],
                Suite::Split => vec![verify_split(n, verbose)],
            };
            for r in &reports {
                println!("{r}");
            }
            if let Some(path) = json {
                std::fs::write(path, serde_json::to_string_pretty(&reports)?)?;
            }
            Ok(reports.iter().all(Report::passed))
        }
        Command::Cells { n, rank, side, kind, ratio, cache, json } => {
            let side: Side = side.parse()?;
            let part = match kind {
                Kind::Comb => combinatorial_cells(n, rank.unwrap_or(n.saturating_sub(1)), side)?,
                Kind::Kl => {
                    let k = ratio.unwrap_or(rank.map_or(n as u32, |r| r as u32 + 1));
                    let l = WeightFunction::with_ratio(k)?;
                    let o = match cache {
                        Some(dir) => KlOracle::compute_cached(n, l, &dir)?,
                        None => KlOracle::compute(n, l)?,
                    };
                    o.cells(side)
                }
            };
            println!("{} on W_{n}: {} blocks", part.label, part.len());
            for b in part.blocks() {
                let members: Vec<String> = b.iter().map(|w| format!("({w})")).collect();
                println!("  {{{}}}", members.join(", "));
            }
            if let Some(path) = json {
                std::fs::write(path, part.to_json())?;
            }
            Ok(true)
        }
        Command::Insert { n, perm, rank, steps } => {
            let w: SignedPermutation = perm.parse()?;
            if let Some(n) = n {
                if n != w.rank() {
                    return Err(format!("--n {n} but the permutation has {} entries", w.rank()).into());
                }
            }
            if steps {
                for st in insert_steps(&w, rank).iter().skip(1) {
                    println!("step {}:\nP\n{}Q\n{}", st.step, st.pair.left.pretty(), st.pair.right.pretty());
                }
            } else {
                let pair = insert(&w, rank);
                println!("P_{rank}({w})\n{}Q_{rank}({w})\n{}", pair.left.pretty(), pair.right.pretty());
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
