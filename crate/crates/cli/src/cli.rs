use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "mop",
    version,
    about = "Exact workbench for Laguerre-type matrix orthogonal polynomials",
    long_about = "Exact workbench for Laguerre-type matrix orthogonal polynomials.\n\n\
        Numbers are exact literals: integers, p/q, and complex values such as 1/2+2/3*i. \
        Floating literals are rejected. MOP_THREADS caps the worker pool."
)]
pub struct Cli {
    #[command(flatten)]
    pub params: Params,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Params {
    /// Matrix size N.
    #[arg(long = "N", global = true, default_value_t = 2)]
    pub n: usize,
    /// Exponent alpha > -1.
    #[arg(long, global = true, default_value = "1/2", allow_hyphen_values = true)]
    pub alpha: String,
    /// nu_1, ..., nu_{N-1}, comma separated or repeated.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub nu: Vec<String>,
    /// The single parameter a = nu_1 when N = 2.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Parameter u of the N = 2 family with B = diag(u, 0); 2 Re(u) must be an integer.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub u: Option<String>,
    /// |nu_{N-1}|^2 of a constrained weight; the remaining moduli follow from it.
    #[arg(long, global = true)]
    pub modulus: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Run everything on the calling thread.
    #[arg(long, global = true)]
    pub sequential: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Weight matrices, moments and modulus constraints.
    Weight {
        #[command(subcommand)]
        cmd: WeightCmd,
    },
    /// The explicit differential operators.
    Ops {
        #[command(subcommand)]
        cmd: OpsCmd,
    },
    /// Orthogonal polynomial sequences.
    Poly {
        #[command(subcommand)]
        cmd: PolyCmd,
    },
    /// The algebra of differential operators.
    Algebra {
        #[command(subcommand)]
        cmd: AlgebraCmd,
    },
    /// Run every applicable identity for one weight.
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
}

#[derive(Subcommand, Debug)]
pub enum WeightCmd {
    /// The polynomial part of the weight.
    Show,
    /// Moments normalized by Gamma(alpha+1).
    Moments {
        #[arg(long, default_value_t = 4)]
        count: usize,
    },
    /// Modulus constraints on nu; exits 1 when they fail.
    Constraints,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OpName {
    L21,
    L22,
    L31,
    L32,
    /// Second-order operator of the general-u family.
    L2u,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    #[default]
    Monic,
    Rodrigues,
}

#[derive(Subcommand, Debug)]
pub enum OpsCmd {
    /// Coefficients of an operator.
    Build {
        #[arg(long, value_enum)]
        op: OpName,
    },
    /// Apply an operator to P_n and read off its eigenvalue.
    Apply {
        #[arg(long, value_enum)]
        op: OpName,
        #[arg(long, default_value_t = 3)]
        degree: usize,
        #[arg(long, value_enum, default_value_t)]
        family: FamilyArg,
    },
    /// Symmetry verdicts from the differential and the moment criterion.
    Symmetry {
        #[arg(long, value_enum)]
        op: OpName,
    },
    /// The product that applies --op first and --with second.
    Compose {
        #[arg(long, value_enum)]
        op: OpName,
        #[arg(long = "with", value_enum)]
        with: OpName,
    },
}

#[derive(Subcommand, Debug)]
pub enum PolyCmd {
    /// P_0, ..., P_{count-1}.
    Generate {
        #[arg(long, default_value_t = 4)]
        count: usize,
        #[arg(long, value_enum, default_value_t)]
        family: FamilyArg,
        /// Re-verify orthogonality before emitting.
        #[arg(long)]
        check: bool,
    },
    /// Orthogonality, positivity and agreement of the constructions.
    Check {
        #[arg(long, default_value_t = 8)]
        count: usize,
    },
    /// Three-term recurrence matrices of the Rodrigues family.
    Recurrence {
        #[arg(long, default_value_t = 4)]
        count: usize,
    },
    /// Squared norms, against the closed form when N = 2.
    Norms {
        #[arg(long, default_value_t = 6)]
        count: usize,
    },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    #[default]
    Auto,
    Exact,
    Modular,
}

#[derive(Subcommand, Debug)]
pub enum AlgebraCmd {
    /// New operators per order, for one weight or for seeded draws.
    Dims {
        #[arg(long, default_value_t = 8)]
        kmax: usize,
        /// Number of seeded constrained draws; the default for N >= 3 without explicit nu.
        #[arg(long)]
        draws: Option<usize>,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[arg(long, value_enum, default_value_t)]
        engine: EngineArg,
    },
    /// Relations among the N = 2 generators.
    Relations,
    /// The product relation in l21 and l22.
    Fact {
        /// Check eigenvalues only, skipping the operator product.
        #[arg(long)]
        eigen_only: bool,
    },
    /// Behaviour of the cubic relation at (alpha, a).
    Exceptional,
    /// Whether fixed products of generators span the new operators of orders 4, 5 and 7.
    Patterns {
        #[arg(long, value_enum, default_value_t)]
        engine: EngineArg,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    /// Every check that applies to the given weight.
    All {
        /// Largest polynomial degree tested.
        #[arg(long, default_value_t = 8)]
        degree: usize,
    },
}
