use clap::{Args, Parser, Subcommand};

/// Quadratic forms over characteristic-2 fields.
///
/// Exit status: 0 decided and consistent, 2 refuted or failed verification,
/// 3 undecided only, 1 usage or evaluation error.
#[derive(Parser, Debug)]
#[command(name = "qf2", version)]
pub struct Cli {
    /// Emit versioned JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Degree bound for polynomial membership searches.
    #[arg(long, global = true, value_name = "DEG")]
    pub bound: Option<usize>,
    /// Largest k for the GF(2^k) extension samples.
    #[arg(long, global = true, value_name = "K")]
    pub samples: Option<u32>,
    /// Maximum number of vectors any single search may visit.
    #[arg(long, global = true, value_name = "N")]
    pub budget: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse and describe a field, e.g. "GF(4)(t)" or "GF(2)((X):16)".
    Field { field: String },
    /// Parse and describe a form.
    Form {
        form: String,
        #[arg(long, default_value = "GF(2)")]
        field: String,
    },
    /// Witt decomposition: i_W·H ⊥ φ_an ⊥ i_d·<0>.
    Witt {
        form: String,
        #[arg(long, default_value = "GF(2)")]
        field: String,
    },
    /// Decide isotropy over the field, or over F(ψ) with --over.
    Isotropy {
        form: String,
        #[arg(long, default_value = "GF(2)")]
        field: String,
        /// Decide over the function field of this form instead.
        #[arg(long, value_name = "PSI")]
        over: Option<String>,
    },
    /// Value sets D*(φ)^k, the groups they generate, and the chain audit.
    Dstar {
        form: String,
        #[arg(long, default_value = "GF(2)")]
        field: String,
        /// Number of factors k in D*(φ)^k.
        #[arg(long, default_value_t = 1)]
        power: usize,
    },
    /// Write a polynomial over F as a product of values of φ over F(var).
    Represent {
        #[arg(long)]
        form: String,
        #[arg(long, default_value = "GF(2)")]
        field: String,
        /// Polynomial in `var` with coefficients in the field.
        #[arg(long)]
        target: String,
        #[arg(long, default_value = "X")]
        var: String,
    },
    /// Verify a certificate read from FILE, or stdin when absent or "-".
    Verify { file: Option<String> },
    /// Check a characterization theorem on one instance or a sweep.
    Check {
        #[command(subcommand)]
        which: CheckCommand,
    },
    /// Rebuild the two transfer-converse counterexamples over GF(2)(s)(t).
    Counterexamples,
}

#[derive(Args, Debug)]
pub struct Pair {
    #[arg(long, default_value = "GF(2)")]
    pub field: String,
    #[arg(long)]
    pub phi: String,
    #[arg(long)]
    pub psi: String,
}

#[derive(Subcommand, Debug)]
pub enum CheckCommand {
    /// Isotropy of φ over F(ψ) against samples and value-group membership.
    Isotropy(Pair),
    /// Stable birational equivalence of φ and ψ.
    Stable(Pair),
    /// Isotropy over F(ψ0 ⊥ Xψ1) of φ0 ⊥ Xφ1.
    Xsum {
        #[arg(long, default_value = "GF(2)")]
        field: String,
        #[arg(long)]
        phi0: String,
        #[arg(long)]
        phi1: String,
        #[arg(long)]
        psi0: String,
        #[arg(long)]
        psi1: String,
    },
    /// Transfer of isotropy along a bilinear Pfister form.
    Transfer {
        #[command(flatten)]
        pair: Pair,
        /// Pfister entries, comma separated; empty for <<>>.
        #[arg(long, default_value = "")]
        pi: String,
    },
    /// Run a theorem over every nondefective pair up to a dimension.
    Sweep {
        #[arg(long, default_value = "GF(2)")]
        field: String,
        #[arg(long, value_enum, default_value = "isotropy")]
        theorem: SweepTheorem,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
        /// One form per isometry class instead of every coefficient choice.
        #[arg(long)]
        representatives: bool,
        /// Pfister depth for the transfer sweep.
        #[arg(long, default_value_t = 1)]
        pfister: usize,
    },
}

#[derive(clap::ValueEnum, Clone, Copy, Debug)]
pub enum SweepTheorem {
    Isotropy,
    Stable,
    Transfer,
}
