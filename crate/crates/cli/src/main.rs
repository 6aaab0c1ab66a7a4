//! `hjkit`: validate semigroup files, run the ultrafilter checks, search for
//! monochromatic witnesses, and compute small Hales–Jewett and van der
//! Waerden numbers with re-checkable certificates.

mod commands;
mod style;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use hjkit::search::SymmetrySpec;

/// Exit statuses. The four classes never overlap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    /// Witness budget exhausted, lower bound only, failed check or
    /// failed verification.
    Negative = 1,
    Input = 2,
    Budget = 3,
}

#[derive(Parser, Debug)]
#[command(
    name = "hjkit",
    version,
    about = "Hales–Jewett machinery for semigroups with retractions",
    args_conflicts_with_subcommands = true,
    arg_required_else_help = true
)]
pub struct Cli {
    /// Re-check a certificate file and exit
    #[arg(long, value_name = "CERT")]
    pub verify: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a Cayley table, its nice subsemigroup and its retractions
    Validate(ValidateArgs),
    /// Search for v whose retraction images share a color
    Witness(WitnessArgs),
    /// Compute HJ(n,r) by coloring [n]^N for N = 1, 2, ...
    Hj(HjArgs),
    /// Compute W(k,r) by coloring [1..M] for M = 1, 2, ...
    Vdw(VdwArgs),
    /// Ultrafilter identities on finite carriers
    #[command(subcommand)]
    Ultra(UltraCommand),
}

#[derive(Args, Debug)]
pub struct ValidateArgs {
    /// Semigroup file (Cayley-table format)
    pub file: PathBuf,
    /// Nice subsemigroup, overriding the file's `T:` line (e.g. "0 2 4")
    #[arg(long = "T", value_name = "ELEMENTS")]
    pub subsemigroup: Option<String>,
    /// Retraction as the list of images, in addition to the file's
    #[arg(long = "retraction", value_name = "IMAGES")]
    pub retractions: Vec<String>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("instance").required(true).args(["hj", "semigroup", "vdw"])))]
pub struct WitnessArgs {
    /// Classical instance: words over --alphabet with one variable
    #[arg(long, requires = "alphabet")]
    pub hj: bool,
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u8).range(2..))]
    pub alphabet: Option<u8>,
    /// Semigroup file with `T:` and `retraction:` lines
    #[arg(long, value_name = "FILE")]
    pub semigroup: Option<PathBuf>,
    /// Find a monochromatic K-AP through the digit-sum reduction
    #[arg(long, value_name = "K", value_parser = clap::value_parser!(u8).range(2..))]
    pub vdw: Option<u8>,
    /// mod:<r>, apres:<r>[:<pattern>] or table:<path>
    #[arg(long, value_name = "SPEC")]
    pub coloring: String,
    /// Longest word to try; for --semigroup, how many elements of R to try
    #[arg(long, value_name = "LEN")]
    pub max_len: Option<usize>,
    /// Certificate path (default: print it after the summary)
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct SearchArgs {
    #[arg(long, default_value_t = 1_000_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_nodes: u64,
    #[arg(long, default_value_t = 600, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_seconds: u64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: u16,
    /// none, full, or a comma list of colors, coordinates, alphabet
    #[arg(long, default_value = "full")]
    pub symmetry: SymmetrySpec,
    /// Directory for the SAT certificates
    #[arg(long, value_name = "DIR")]
    pub out_dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct HjArgs {
    #[arg(short = 'n', value_parser = clap::value_parser!(u8).range(2..))]
    pub n: u8,
    #[arg(short = 'r', value_parser = clap::value_parser!(u8).range(1..))]
    pub r: u8,
    #[arg(long = "max-N", value_name = "N")]
    pub max_len: usize,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Args, Debug)]
pub struct VdwArgs {
    #[arg(short = 'k', value_parser = clap::value_parser!(u64).range(3..))]
    pub k: u64,
    #[arg(short = 'r', value_parser = clap::value_parser!(u8).range(1..))]
    pub r: u8,
    #[arg(long = "max-M", value_name = "M")]
    pub max_m: usize,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Subcommand, Debug)]
pub enum UltraCommand {
    /// Check that the image of a tensor power is the product power of images
    CheckProp(CheckPropArgs),
    /// Compare "every coloring has a witness" with "an agreement point exists"
    Lemma2(Lemma2Args),
    /// Print (and optionally save) a seeded transformation-semigroup corpus
    Corpus(CorpusArgs),
}

#[derive(Args, Debug)]
pub struct CheckPropArgs {
    /// Check one semigroup: its retractions if declared, else its endomorphisms
    #[arg(long, value_name = "FILE")]
    pub semigroup: Option<PathBuf>,
    /// Largest semigroup order in the corpus
    #[arg(long, default_value_t = 6, conflicts_with = "semigroup")]
    pub corpus_order: usize,
    #[arg(long, default_value_t = 50, conflicts_with = "semigroup")]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub k: u8,
}

#[derive(Args, Debug)]
pub struct Lemma2Args {
    #[arg(long, value_name = "FILE")]
    pub semigroup: PathBuf,
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub colors: u8,
}

#[derive(Args, Debug)]
pub struct CorpusArgs {
    #[arg(long)]
    pub order: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 50)]
    pub count: usize,
    /// Write each semigroup as corpus-<i>.sg
    #[arg(long, value_name = "DIR")]
    pub out_dir: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Status::Input as u8 } else { 0 });
        }
    };
    let status = match commands::run(cli) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e:#}");
            Status::Input
        }
    };
    ExitCode::from(status as u8)
}
