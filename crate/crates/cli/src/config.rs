//! Command-line arguments and their validation into a run configuration.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use eisbound::arith::{is_prime, primes_above, FieldCtx, PrimeIdeal};
use eisbound::lfun::{Curve, LConfig};

use crate::error::CliError;

pub const DEFAULT_PRECISION: u32 = 50;
pub const DEFAULT_MAX_COEFFS: usize = 200_000;

#[derive(Debug, Parser)]
#[command(name = "eisbound", version, about = "Eisenstein congruences and Selmer lower bounds for imaginary quadratic fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Class group of F via reduced binary quadratic forms.
    Classgroup,
    /// Cusp representatives and the involution pairing of H(b).
    Cusps {
        /// Class index of b; all classes when omitted.
        #[arg(long)]
        class: Option<usize>,
    },
    /// Hecke characters of a given modulus and infinity type.
    Chars {
        /// Infinity type "a,b".
        #[arg(long, default_value = "2,0")]
        inf_type: String,
    },
    /// Special value L(0, χ) and its normalization for the unramified χ of type (2,0).
    Lvalue,
    /// Eisenstein constant-term identity and Hecke eigenvalues for χ = φ1/φ2.
    Eis {
        /// η samples per Bruhat cell and component.
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Largest norm of primes listed in the eigenvalue table.
        #[arg(long, default_value_t = 100)]
        hecke_norm: u64,
    },
    /// Hypotheses for the Selmer lower bound.
    Check,
    /// Hypotheses, special value, and the Selmer lower bound.
    Bound,
    /// The d = −67, p = 19 example end to end.
    Example67,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Fundamental discriminant of F, e.g. -67.
    #[arg(short = 'd', long, global = true, allow_hyphen_values = true)]
    pub discriminant: Option<i64>,
    /// The prime p of the congruence.
    #[arg(short = 'p', long, global = true)]
    pub prime: Option<u64>,
    /// Auxiliary prime as "ELL" or "ELL:INDEX" (INDEX among the primes above ELL).
    #[arg(long, global = true)]
    pub aux_prime: Option<String>,
    /// Curve coefficients "a1,a2,a3,a4,a6" for the period.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub curve: Option<String>,
    /// Working precision in decimal digits.
    #[arg(long, global = true, env = "EISBOUND_PRECISION", default_value_t = DEFAULT_PRECISION)]
    pub precision: u32,
    /// Upper limit on Dirichlet coefficients; larger requests fail instead of running.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_COEFFS)]
    pub max_coeffs: usize,
    /// Index of the character among those of the requested type.
    #[arg(long, global = true, default_value_t = 0)]
    pub twist: usize,
    /// Assume the crystallinity conjecture when p is inert.
    #[arg(long, global = true)]
    pub assume_conjecture: bool,
    /// Human-readable tables instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

/// Validated inputs shared by all subcommands.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub ctx: Option<FieldCtx>,
    pub prime: Option<u64>,
    pub aux: Option<PrimeIdeal>,
    pub curve: Option<Curve>,
    pub twist: usize,
    pub assume_conjecture: bool,
    pub l: LConfig,
    pub pretty: bool,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_args(a: &CommonArgs) -> Result<RunConfig, CliError> {
        if !(10..=1000).contains(&a.precision) {
            return Err(CliError::Config(format!("precision must lie in 10..=1000, got {}", a.precision)));
        }
        if a.max_coeffs == 0 {
            return Err(CliError::Config("max-coeffs must be positive".into()));
        }
        let ctx = a.discriminant.map(FieldCtx::new).transpose()?;
        if let Some(p) = a.prime {
            if !is_prime(p) {
                return Err(CliError::Config(format!("p = {p} is not prime")));
            }
        }
        let aux = match (&a.aux_prime, ctx) {
            (Some(s), Some(ctx)) => Some(parse_aux(ctx, s)?),
            (Some(_), None) => return Err(CliError::Config("--aux-prime needs -d".into())),
            (None, _) => None,
        };
        let curve = a.curve.as_deref().map(Curve::from_str).transpose()?;
        let l = LConfig { digits: a.precision, max_coeffs: a.max_coeffs, ..LConfig::default() };
        Ok(RunConfig { ctx, prime: a.prime, aux, curve, twist: a.twist, assume_conjecture: a.assume_conjecture, l, pretty: a.pretty, out: a.out.clone() })
    }

    pub fn field(&self) -> Result<FieldCtx, CliError> {
        self.ctx.ok_or_else(|| CliError::Config("missing -d/--discriminant".into()))
    }

    pub fn p(&self) -> Result<u64, CliError> {
        self.prime.ok_or_else(|| CliError::Config("missing -p/--prime".into()))
    }
}

fn parse_aux(ctx: FieldCtx, s: &str) -> Result<PrimeIdeal, CliError> {
    let (ell, index) = match s.split_once(':') {
        Some((e, i)) => (e, i.parse::<usize>().map_err(|_| CliError::Config(format!("bad aux prime index {i:?}")))?),
        None => (s, 0),
    };
    let ell: u64 = ell.trim().parse().map_err(|_| CliError::Config(format!("bad aux prime {ell:?}")))?;
    if !is_prime(ell) {
        return Err(CliError::Config(format!("aux prime {ell} is not prime")));
    }
    let mut above = primes_above(ctx, ell)?;
    if index >= above.len() {
        return Err(CliError::Config(format!("{ell} has {} prime(s) above it", above.len())));
    }
    Ok(above.swap_remove(index))
}

pub fn parse_inf_type(s: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::Config(format!("infinity type must be \"a,b\", got {s:?}"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}
