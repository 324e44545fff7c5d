mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use semiflag_core::Kind;

#[derive(Parser, Debug)]
#[command(name = "semiflag", version, about = "Jet minors, relations and characters for SL_n[[s]] and Sp_2n[[s]]")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Seed for random group points.
    #[arg(long, global = true, env = "SEMIFLAG_SEED", default_value_t = 1)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TypeArg {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "C", alias = "c")]
    C,
}

impl From<TypeArg> for Kind {
    fn from(t: TypeArg) -> Kind {
        match t {
            TypeArg::A => Kind::A,
            TypeArg::C => Kind::C,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct Group {
    #[arg(long = "type", value_enum, default_value_t = TypeArg::A)]
    pub kind: TypeArg,
    #[arg(long)]
    pub n: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compare products of minors in the monomial order.
    Order {
        #[command(subcommand)]
        cmd: OrderCmd,
    },
    /// Snake sequence and k(I,J) of a pair.
    Snake {
        #[arg(long = "type", value_enum, default_value_t = TypeArg::A)]
        kind: TypeArg,
        /// Inferred from the letters when omitted (type A only).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Allowed type-C row sets.
    Allowed {
        #[arg(long)]
        n: usize,
        /// Test one set instead of listing.
        #[arg(long)]
        set: Option<String>,
        /// Restrict the listing to one size.
        #[arg(long)]
        size: Option<usize>,
    },
    /// Plücker-type relations.
    Relations {
        #[command(subcommand)]
        cmd: RelationsCmd,
    },
    /// Rewrite minors or products in terms of larger ones.
    Straighten {
        #[command(subcommand)]
        cmd: StraightenCmd,
    },
    /// Graded characters.
    Character {
        #[command(subcommand)]
        cmd: CharacterCmd,
    },
    /// Basis monomials and rank certification.
    Basis {
        #[command(subcommand)]
        cmd: BasisCmd,
    },
    /// Random group jet points.
    Oracle {
        #[command(subcommand)]
        cmd: OracleCmd,
    },
}

#[derive(Subcommand, Debug)]
pub enum OrderCmd {
    Compare {
        #[command(flatten)]
        group: Group,
        /// Product, factors separated by `|`.
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum RelationsCmd {
    /// All semi-infinite relations for incomparable pairs, each checked before output.
    Generate {
        #[command(flatten)]
        group: Group,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        #[arg(long, default_value_t = 4)]
        trunc: usize,
    },
    /// Check relations from a JSON file, or the relation of one pair.
    Verify {
        #[arg(long, conflicts_with_all = ["lhs", "rhs"])]
        input: Option<PathBuf>,
        #[arg(long = "type", value_enum, default_value_t = TypeArg::A)]
        kind: TypeArg,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, requires = "rhs")]
        lhs: Option<String>,
        #[arg(long, requires = "lhs")]
        rhs: Option<String>,
        /// Derivative order; all `k' < k` when omitted.
        #[arg(long)]
        k_prime: Option<usize>,
        #[arg(long, default_value_t = 4)]
        trunc: usize,
        /// Random points used for type C.
        #[arg(long, default_value_t = 20)]
        points: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum StraightenCmd {
    /// Forbidden type-C minor as a combination of allowed ones.
    Minor {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        set: String,
        #[arg(long, default_value_t = 4)]
        trunc: usize,
        #[arg(long, default_value_t = 20)]
        points: usize,
    },
    /// Incomparable product as a combination of comparable ones.
    Product {
        #[command(flatten)]
        group: Group,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum CharacterCmd {
    /// Character of one multidegree; `--r` lists factors with repetition.
    Component {
        #[command(flatten)]
        group: Group,
        #[arg(long)]
        r: String,
        #[arg(long, default_value_t = 12)]
        qmax: usize,
    },
    Weyl {
        #[command(flatten)]
        group: Group,
        #[arg(long)]
        lambda: String,
        #[arg(long, default_value_t = 12)]
        qmax: usize,
    },
    Local {
        #[command(flatten)]
        group: Group,
        #[arg(long)]
        lambda: String,
        #[arg(long, default_value_t = 12)]
        qmax: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Symbolic,
    Numeric,
}

#[derive(Subcommand, Debug)]
pub enum BasisCmd {
    Enumerate {
        #[command(flatten)]
        group: Group,
        #[arg(long)]
        r: String,
        #[arg(long, default_value_t = 4)]
        dmax: usize,
    },
    /// Rank of all products against basis count and character, per class and jet degree.
    Verify {
        #[command(flatten)]
        group: Group,
        /// Class of this multidegree; otherwise every class up to `--max-total` factors.
        #[arg(long, conflicts_with = "max_total")]
        r: Option<String>,
        #[arg(long)]
        max_total: Option<u32>,
        #[arg(long, default_value_t = 4)]
        dmax: usize,
        /// Defaults to symbolic in type A and numeric in type C.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long, default_value_t = 40)]
        samples: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum OracleCmd {
    Sample {
        #[command(flatten)]
        group: Group,
        #[arg(long, default_value_t = 4)]
        trunc: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            if let Err(e) = emit(&cli, &out.text) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(if out.success { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn emit(cli: &Cli, text: &str) -> std::io::Result<()> {
    match &cli.output {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}
