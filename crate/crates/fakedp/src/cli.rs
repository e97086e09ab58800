//! Argument definitions for the `fakedp` binary.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "fakedp", version, about = "Line bundles on abelian covers of del Pezzo surfaces")]
pub struct Cli {
    /// Print machine-readable JSON instead of tables.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads (default: all cores). Never changes the output.
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,
    /// Extra directory of `*.surface` files; overrides bundled surfaces by name.
    #[arg(long, global = true, value_name = "DIR")]
    pub surface_path: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Semigroup,
    Pushforward,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Paper,
}

#[derive(Debug, Subcommand)]
pub enum SurfacesCmd {
    /// List known surfaces and their load status.
    List,
    /// Show the data of one surface.
    Show { name: String },
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Registry queries.
    Surfaces {
        #[command(subcommand)]
        action: SurfacesCmd,
    },
    /// Eigensheaf decomposition of phi_* O_X(EXPR - TORSION).
    Pushforward {
        #[arg(short, long)]
        surface: String,
        /// Divisor expression, e.g. `2D1+D2-E1`.
        #[arg(short = 'D', long = "divisor", allow_hyphen_values = true)]
        divisor: String,
        #[arg(short, long, default_value = "", allow_hyphen_values = true)]
        torsion: String,
    },
    /// h^0, h^1, h^2 of the line bundle with multidegree D and twist TORSION.
    Cohom {
        #[arg(short, long)]
        surface: String,
        #[arg(short, long, allow_hyphen_values = true)]
        degree: String,
        #[arg(short, long, default_value = "", allow_hyphen_values = true)]
        torsion: String,
    },
    /// Torsion twists making multidegree D acyclic.
    Acyclic {
        #[arg(short, long)]
        surface: String,
        #[arg(short, long, allow_hyphen_values = true)]
        degree: String,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Whether the line bundle has a section.
    Effective {
        #[arg(short, long)]
        surface: String,
        #[arg(short, long, allow_hyphen_values = true)]
        degree: String,
        #[arg(short, long, default_value = "", allow_hyphen_values = true)]
        torsion: String,
        #[arg(long, value_enum, default_value_t = Method::Semigroup)]
        mode: Method,
    },
    /// Decompositions of multidegree D into generators of the effective semigroup.
    Decomp {
        #[arg(short, long)]
        surface: String,
        #[arg(short, long, allow_hyphen_values = true)]
        degree: String,
    },
    /// Extreme rays of the cone dual to the semigroup generators.
    Cone {
        #[arg(short, long)]
        surface: String,
    },
    /// All torsion twists lifting a numerical collection to an exceptional one.
    Enumerate {
        #[arg(short, long)]
        surface: String,
        /// Preset name or classes separated by `;`.
        #[arg(long, default_value = "default", allow_hyphen_values = true)]
        numerical: String,
    },
    /// Ext groups between the members of a collection and its anticanonical twists.
    ExtTable {
        #[arg(short, long)]
        surface: String,
        /// `NUMERICAL#K` or bundles `(d)[t]` separated by `;`.
        #[arg(long, allow_hyphen_values = true)]
        collection: String,
    },
    /// Pseudoheight of a collection.
    Pseudoheight {
        #[arg(short, long)]
        surface: String,
        #[arg(long, allow_hyphen_values = true)]
        collection: String,
    },
    /// Degree argument for formality of the Ext algebra.
    Formality {
        #[arg(short, long)]
        surface: String,
        #[arg(long, allow_hyphen_values = true)]
        collection: String,
    },
    /// Orbit of a numerical collection under the Weyl group of Y.
    WeylOrbit {
        #[arg(short, long)]
        surface: String,
        #[arg(long, default_value = "default", allow_hyphen_values = true)]
        numerical: String,
        /// Also count exceptional twists for every orbit element.
        #[arg(long)]
        counts: bool,
    },
    /// Reproduce the published computations.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::Paper)]
        suite: Suite,
        /// Run only checks whose name contains this string.
        #[arg(long)]
        filter: Option<String>,
    },
}
