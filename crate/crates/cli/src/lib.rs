//! Command-line front end for `changemaker-core`: argument parsing, JSON file
//! formats and report rendering. The `changemaker` binary is a thin wrapper
//! around [`run`].

pub mod commands;
pub mod error;
pub mod formats;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use commands::{run, Output};
pub use error::{exit, CliError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ColoringArg {
    A,
    B,
}

#[derive(Debug, Parser)]
#[command(
    name = "changemaker",
    version,
    about = "Bounds and obstructions for alternating surgeries"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Norm bound for superbase searches.
    #[arg(long, global = true, value_parser = clap::value_parser!(i64).range(1..))]
    pub bound: Option<i64>,
    /// Largest lattice rank accepted by searches.
    #[arg(long, global = true, default_value_t = changemaker_core::graphlat::DEFAULT_RANK_CAP)]
    pub rank_cap: usize,
    /// Build lattices for slopes outside the window.
    #[arg(long, global = true)]
    pub force: bool,
    /// Print run metadata to stderr.
    #[arg(long, global = true)]
    pub verbose: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Stable coefficients, N, slope window and genus cap.
    Bounds {
        /// Alexander polynomial JSON.
        #[arg(long, required_unless_present = "stable", conflicts_with = "stable")]
        alexander: Option<PathBuf>,
        /// Comma-separated stable coefficients, e.g. `3,2,2`.
        #[arg(long)]
        stable: Option<String>,
    },
    /// Emit the changemaker lattice of a slope as lattice JSON.
    Lattice {
        /// `p/q` or an integer.
        #[arg(long)]
        slope: String,
        /// Comma-separated stable coefficients; empty for the unknot.
        #[arg(long, default_value = "")]
        stable: String,
        /// Pad with unit summands up to this rank.
        #[arg(long)]
        rank: Option<usize>,
    },
    /// Search for an obtuse superbase.
    Superbase {
        /// Lattice JSON.
        #[arg(required_unless_present = "graph", conflicts_with = "graph")]
        lattice: Option<PathBuf>,
        /// Graph JSON; its Laplacian lattice (last vertex as root) is searched.
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Compare a diagram's white lattice with the predicted changemaker lattice.
    Verify {
        #[arg(long)]
        pd: PathBuf,
        #[arg(long)]
        alexander: PathBuf,
        #[arg(long)]
        slope: String,
    },
    /// Dump torsion coefficients, T-profile and the recovered changemaker vector.
    Recover {
        #[arg(long)]
        alexander: PathBuf,
    },
    /// Dump the white graph and Goeritz matrix of a PD code.
    Goeritz {
        #[arg(long)]
        pd: PathBuf,
        #[arg(long, value_enum, default_value_t = ColoringArg::A)]
        coloring: ColoringArg,
    },
}
