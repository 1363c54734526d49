use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "bstar", version, about = "Exact tools for weak B_k sets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Work budget: search nodes for `search`, enumerated objects otherwise.
    #[arg(long, global = true, env = "BSTAR_BUDGET")]
    pub budget: Option<u64>,
    /// Decimal digits for rounded bounds and root enclosures.
    #[arg(long, global = true, default_value_t = 6)]
    pub precision: u32,
    /// Output format; `bounds` and multi-N `search` default to CSV.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// B_k and weak B_k membership with witnesses.
    Verify {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Representation-function profile and the moment inequalities.
    Moments {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        k: usize,
        /// Lower order for the S_k versus S_l comparison (default k - 1).
        #[arg(long)]
        l: Option<usize>,
        /// Order for the S_t decomposition identity (default k).
        #[arg(long)]
        t: Option<usize>,
    },
    /// Structure procedure with its verification; `--out` receives the
    /// certificate. With `--certificate` an existing one is re-checked.
    Decompose {
        #[arg(long, required_unless_present = "certificate")]
        set: Option<PathBuf>,
        #[arg(long, required_unless_present = "certificate")]
        k: Option<usize>,
        #[arg(long, conflicts_with_all = ["set", "k"])]
        certificate: Option<PathBuf>,
        /// Also write the certificate (the decomposition as JSON) here.
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Split expectation and a split achieving it.
    Split {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Try every subset instead of sampling.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Set-system checks: the all-subsets family of [n], or a family file.
    Ekr {
        #[arg(long, required_unless_present = "family")]
        n: Option<usize>,
        #[arg(long, required_unless_present = "family")]
        k: Option<usize>,
        /// JSON `{"ground": [...], "members": [[...], ...]}`.
        #[arg(long, conflicts_with_all = ["n", "k"])]
        family: Option<PathBuf>,
        /// Allowed intersection sizes, comma separated (default 0..k-1).
        #[arg(long, value_delimiter = ',')]
        intersections: Option<Vec<usize>>,
    },
    /// Solution family of (B, B') at order l and its set-system check.
    Family {
        #[arg(long)]
        set: PathBuf,
        /// The part B' of B.
        #[arg(long)]
        subset: PathBuf,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        k: usize,
    },
    /// Largest weak B_k subset of [N].
    Search {
        #[arg(long = "N")]
        n: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        greedy: bool,
        /// Search B_2 (Sidon) sets instead; needs k = 2.
        #[arg(long)]
        sidon: bool,
    },
    /// Bound table for every N and k given.
    Bounds {
        #[arg(long = "N")]
        n: String,
        #[arg(long)]
        k: String,
    },
    /// The full verification battery.
    Suite {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Subset of checks to run, comma separated (default all).
        #[arg(long, value_delimiter = ',')]
        criteria: Vec<u32>,
    },
}

/// `INT`, `a..b` (inclusive) or a comma-separated list of either.
pub fn parse_range(text: &str) -> Result<Vec<u64>, String> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let a: u64 = a
                .trim()
                .parse()
                .map_err(|_| format!("bad range start in {part:?}"))?;
            let b: u64 = b
                .trim()
                .parse()
                .map_err(|_| format!("bad range end in {part:?}"))?;
            if a > b {
                return Err(format!("empty range {part:?}"));
            }
            out.extend(a..=b);
        } else {
            out.push(
                part.parse()
                    .map_err(|_| format!("not an integer: {part:?}"))?,
            );
        }
    }
    if out.is_empty() {
        return Err("no values given".into());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("5").unwrap(), vec![5]);
        assert_eq!(parse_range("3..5").unwrap(), vec![3, 4, 5]);
        assert_eq!(parse_range("1,4..5").unwrap(), vec![1, 4, 5]);
        assert!(parse_range("5..3").is_err());
        assert!(parse_range("x").is_err());
    }
}
