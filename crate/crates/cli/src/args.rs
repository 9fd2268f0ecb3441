use clap::{Args, Parser, Subcommand, ValueEnum};
use ellweyl::ncword::RelationSystem;
use ellweyl::special_fn::{ParameterSet, WeightFamily, C64};
use ellweyl::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "ellweyl", version, about = "Elliptic and weight-dependent commutation relations")]
pub struct Cli {
    /// Print one JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Modified Jacobi theta function θ(x;p).
    Theta {
        #[arg(long, value_parser = parse_complex)]
        x: C64,
        #[arg(long, value_parser = parse_complex)]
        p: C64,
    },
    /// Small weight w(s,t), or the big weight W(s,t) with --big.
    Weight {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, allow_negative_numbers = true)]
        s: i64,
        #[arg(long, allow_negative_numbers = true)]
        t: i64,
        #[arg(long)]
        big: bool,
    },
    /// Weight-dependent binomial coefficient [n, k].
    Binom {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n: i64,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
    },
    /// Normal-orders a word in x and y.
    NormalOrder {
        #[arg(long, value_enum)]
        system: System,
        #[arg(long)]
        word: String,
        #[command(flatten)]
        family: OptionalFamily,
    },
    /// Weighted rook number r_k of a Ferrers board.
    Rook(BoardArgs),
    /// Weighted file number f_k of a Ferrers board.
    File(BoardArgs),
    /// Elliptic or a;q Fibonacci number.
    Fib(FibArgs),
    /// Runs registered identity checks.
    Verify {
        #[arg(long)]
        id: Option<String>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Overrides the series degree of the selected checks.
        #[arg(long)]
        order: Option<u32>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum System {
    Comm,
    Weyl,
    File,
}

impl From<System> for RelationSystem {
    fn from(s: System) -> Self {
        match s {
            System::Comm => RelationSystem::Homogeneous,
            System::Weyl => RelationSystem::RookWeyl,
            System::File => RelationSystem::File,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Generic,
    Elliptic,
    Bq,
    Aq,
    Q,
}

#[derive(Debug, Args)]
pub struct Params {
    #[arg(long, value_parser = parse_complex)]
    pub a: Option<C64>,
    #[arg(long, value_parser = parse_complex)]
    pub b: Option<C64>,
    #[arg(long, value_parser = parse_complex)]
    pub q: Option<C64>,
    #[arg(long, value_parser = parse_complex)]
    pub p: Option<C64>,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[command(flatten)]
    pub params: Params,
}

#[derive(Debug, Args)]
pub struct OptionalFamily {
    /// Evaluates the coefficients in this family; symbolic when absent.
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    #[command(flatten)]
    pub params: Params,
}

#[derive(Debug, Args)]
pub struct BoardArgs {
    /// Column heights, e.g. 1,2,2,3.
    #[arg(long)]
    pub board: String,
    #[arg(long)]
    pub k: usize,
    #[command(flatten)]
    pub family: OptionalFamily,
}

#[derive(Debug, Args)]
#[group(id = "kind", required = true, multiple = false, args = ["elliptic", "aq"])]
pub struct FibArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub elliptic: bool,
    #[arg(long)]
    pub aq: bool,
    /// a;q only: evaluate the closed form instead of the recursion.
    #[arg(long, requires = "aq")]
    pub closed: bool,
    #[command(flatten)]
    pub params: Params,
}

/// `RE,IM` with decimal doubles; a bare `RE` means a real number.
pub fn parse_complex(text: &str) -> std::result::Result<C64, String> {
    let parse = |s: &str| s.trim().parse::<f64>().map_err(|_| format!("expected RE,IM with decimal numbers, got {text:?}"));
    let value = match text.split_once(',') {
        Some((re, im)) => C64::new(parse(re)?, parse(im)?),
        None => C64::new(parse(text)?, 0.0),
    };
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(format!("non-finite number {text:?}"))
    }
}

impl Params {
    fn need(v: Option<C64>, flag: &str, family: &str) -> Result<C64> {
        v.ok_or_else(|| Error::Domain(format!("--family {family} needs --{flag}")))
    }

    /// The family selected by `--family` with its parameter flags.
    pub fn family(&self, f: Family) -> Result<WeightFamily> {
        Ok(match f {
            Family::Generic => WeightFamily::Generic,
            Family::Elliptic => WeightFamily::Elliptic(self.elliptic("elliptic")?),
            Family::Bq => WeightFamily::BQ { b: Self::need(self.b, "b", "bq")?, q: Self::need(self.q, "q", "bq")? },
            Family::Aq => WeightFamily::AQ { a: Self::need(self.a, "a", "aq")?, q: Self::need(self.q, "q", "aq")? },
            Family::Q => WeightFamily::Q { q: Self::need(self.q, "q", "q")? },
        })
    }

    pub fn elliptic(&self, name: &str) -> Result<ParameterSet> {
        ParameterSet::elliptic(
            Self::need(self.a, "a", name)?,
            Self::need(self.b, "b", name)?,
            Self::need(self.q, "q", name)?,
            Self::need(self.p, "p", name)?,
        )
    }
}

impl OptionalFamily {
    pub fn family(&self) -> Result<WeightFamily> {
        match self.family {
            Some(f) => self.params.family(f),
            None => Ok(WeightFamily::Generic),
        }
    }
}
