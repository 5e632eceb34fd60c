use std::ffi::OsString;
use std::fmt::Display;
use std::io::Write;

use chromloc_core::nilpotent::{minimal_n, termwise_check, verify_nilp_diff};
use chromloc_core::padic::{
    carries_in_addition, digit_sum, nu_binom, nu_binom_power, nu_factorial, nu_factorial_oracle,
};
use chromloc_core::{MapProfile, Prime};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use num_bigint::BigUint;

use crate::expr::evaluate;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const DEFAULT_GRID_PRIMES: [u64; 3] = [2, 3, 5];

#[derive(Debug, Parser)]
#[command(name = "chromloc", about = "Finite localisations, K(n) profiles and p-adic valuations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate and compare finite localisations of spectra
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Inspect K(n)-homology profiles written as `prefix/tail`, e.g. `II/Z`
    #[command(subcommand)]
    Profile(ProfileCmd),
    /// p-adic valuations of factorials and binomial coefficients
    #[command(subcommand)]
    Val(ValCmd),
    /// Check (y+e)^(p^n) = y^(p^n) in (Z/p^j)[y,e]/(e^(p^k))
    #[command(subcommand)]
    Nilp(NilpCmd),
}

#[derive(Debug, Subcommand)]
enum LatticeCmd {
    /// Print the canonical form of an expression
    Eval {
        #[arg(required = true)]
        expr: Vec<String>,
    },
    /// Compare two expressions: eq, le, ge or incomparable
    Cmp { left: String, right: String },
    /// Decide compact centrality (exit 1 when false)
    Cc {
        #[arg(required = true)]
        expr: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
enum ProfileCmd {
    /// Is the profile algebraically central? (exit 1 when not)
    Check { literal: String },
    /// Type of the cofibre
    Type { literal: String },
    /// Type and the induced p-local finite localisation
    Loc { literal: String },
}

#[derive(Debug, clap::Args)]
struct PrimeArg {
    #[arg(short = 'p', value_parser = parse_prime)]
    p: Prime,
}

#[derive(Debug, Subcommand)]
enum ValCmd {
    /// Base-p digit sum s_p(n)
    Digitsum {
        #[arg(short = 'n')]
        n: BigUint,
        #[command(flatten)]
        prime: PrimeArg,
    },
    /// nu_p(n!) by the digit-sum formula and by summing floors
    Nufact {
        #[arg(short = 'n')]
        n: BigUint,
        #[command(flatten)]
        prime: PrimeArg,
    },
    /// nu_p(C(n, k)) and the carry count of k + (n - k)
    Nubinom {
        #[arg(short = 'n')]
        n: BigUint,
        #[arg(short = 'k')]
        k: BigUint,
        #[command(flatten)]
        prime: PrimeArg,
    },
    /// nu_p(C(p^n, m p^(n-k))), which equals k
    Pbinom {
        #[arg(short = 'n')]
        n: u32,
        #[arg(short = 'k')]
        k: u32,
        #[arg(short = 'm')]
        m: BigUint,
        #[command(flatten)]
        prime: PrimeArg,
    },
}

#[derive(Debug, clap::Args)]
struct RingArgs {
    #[arg(short = 'p', value_parser = parse_prime)]
    p: Prime,
    #[arg(short = 'j')]
    j: u32,
    #[arg(short = 'k')]
    k: u32,
}

#[derive(Debug, Subcommand)]
enum NilpCmd {
    /// Does the difference vanish at exponent p^n? (exit 1 when not)
    Verify {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(short = 'n')]
        n: u64,
    },
    /// Smallest n <= --max (default j + k) at which the difference vanishes
    Minimal {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long = "max")]
        max: Option<u64>,
    },
    /// Sweep j in 1..=max, k in 0..=max, n in 0..=j+k+2 for each prime
    Grid {
        #[arg(short = 'p', value_parser = parse_prime)]
        p: Vec<Prime>,
        #[arg(long = "max", default_value_t = 3)]
        max: u32,
    },
}

fn parse_prime(s: &str) -> Result<Prime, String> {
    let value: u64 = s.parse().map_err(|e| format!("{e}"))?;
    Prime::new(value).map_err(|e| e.to_string())
}

struct Io<'a, O, E> {
    out: &'a mut O,
    err: &'a mut E,
}

impl<O: Write, E: Write> Io<'_, O, E> {
    fn line(&mut self, s: impl Display) {
        let _ = writeln!(self.out, "{s}");
    }

    fn fail(&mut self, s: impl Display) -> i32 {
        let _ = writeln!(self.err, "error: {s}");
        EXIT_USAGE
    }
}

/// Runs one invocation. `args` includes the program name. Returns the exit
/// code: 0 on success or a true verdict, 1 on a false verdict, 2 on usage
/// and parse errors.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let mut io = Io { out, err };
    match cli.command {
        Command::Lattice(cmd) => lattice(cmd, &mut io),
        Command::Profile(cmd) => profile(cmd, &mut io),
        Command::Val(cmd) => valuation(cmd, &mut io),
        Command::Nilp(cmd) => nilpotence(cmd, &mut io),
    }
}

fn verdict(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_FALSE
    }
}

fn lattice<O: Write, E: Write>(cmd: LatticeCmd, io: &mut Io<'_, O, E>) -> i32 {
    match cmd {
        LatticeCmd::Eval { expr } => match evaluate(&expr.join(" ")) {
            Ok(loc) => {
                io.line(format_args!("loc={loc}"));
                EXIT_OK
            }
            Err(e) => io.fail(e),
        },
        LatticeCmd::Cmp { left, right } => {
            let (l, r) = match (evaluate(&left), evaluate(&right)) {
                (Ok(l), Ok(r)) => (l, r),
                (Err(e), _) | (_, Err(e)) => return io.fail(e),
            };
            let rel = match (l.leq(&r), r.leq(&l)) {
                (true, true) => "eq",
                (true, false) => "le",
                (false, true) => "ge",
                (false, false) => "incomparable",
            };
            io.line(format_args!("cmp={rel}"));
            EXIT_OK
        }
        LatticeCmd::Cc { expr } => match evaluate(&expr.join(" ")) {
            Ok(loc) => {
                let cc = loc.is_compactly_central();
                io.line(format_args!("cc={cc}"));
                verdict(cc)
            }
            Err(e) => io.fail(e),
        },
    }
}

fn profile<O: Write, E: Write>(cmd: ProfileCmd, io: &mut Io<'_, O, E>) -> i32 {
    let literal = match &cmd {
        ProfileCmd::Check { literal } | ProfileCmd::Type { literal } | ProfileCmd::Loc { literal } => literal,
    };
    let pr: MapProfile = match literal.parse() {
        Ok(pr) => pr,
        Err(e) => return io.fail(e),
    };
    let Some(m) = pr.algebraic_type() else {
        io.line("central=false");
        return EXIT_FALSE;
    };
    match cmd {
        ProfileCmd::Check { .. } => io.line(format_args!("central=true type={m}")),
        ProfileCmd::Type { .. } => io.line(format_args!("type={m}")),
        ProfileCmd::Loc { .. } => {
            let loc = pr.induced_localisation().expect("profile is central");
            io.line(format_args!("type={m} loc={loc}"));
        }
    }
    EXIT_OK
}

fn valuation<O: Write, E: Write>(cmd: ValCmd, io: &mut Io<'_, O, E>) -> i32 {
    match cmd {
        ValCmd::Digitsum { n, prime } => {
            io.line(format_args!("digit_sum={}", digit_sum(&n, prime.p)));
            EXIT_OK
        }
        ValCmd::Nufact { n, prime } => {
            let (nu, oracle) = (nu_factorial(&n, prime.p), nu_factorial_oracle(&n, prime.p));
            io.line(format_args!("nu={nu} oracle={oracle}"));
            verdict(nu == oracle)
        }
        ValCmd::Nubinom { n, k, prime } => match nu_binom(&n, &k, prime.p) {
            Ok(nu) => {
                let carries = BigUint::from(carries_in_addition(&k, &(&n - &k), prime.p));
                io.line(format_args!("nu={nu} carries={carries}"));
                verdict(nu == carries)
            }
            Err(e) => io.fail(e),
        },
        ValCmd::Pbinom { n, k, m, prime } => match nu_binom_power(n, k, &m, prime.p) {
            Ok(nu) => {
                io.line(format_args!("nu={nu} k={k}"));
                verdict(nu == k)
            }
            Err(e) => io.fail(e),
        },
    }
}

fn nilpotence<O: Write, E: Write>(cmd: NilpCmd, io: &mut Io<'_, O, E>) -> i32 {
    let result = match cmd {
        NilpCmd::Verify { ring, n } => verify_nilp_diff(ring.p, ring.j, ring.k, n).map(|zero| {
            let bound_met = n >= u64::from(ring.j) + u64::from(ring.k);
            io.line(format_args!("zero={zero} bound_met={bound_met}"));
            verdict(zero)
        }),
        NilpCmd::Minimal { ring, max } => {
            let bound = u64::from(ring.j) + u64::from(ring.k);
            minimal_n(ring.p, ring.j, ring.k, max.unwrap_or(bound)).map(|found| match found {
                Some(n) => {
                    io.line(format_args!("minimal={n} bound={bound}"));
                    EXIT_OK
                }
                None => {
                    io.line(format_args!("minimal=none bound={bound}"));
                    EXIT_FALSE
                }
            })
        }
        NilpCmd::Grid { p, max } => grid(&p, max, io),
    };
    result.unwrap_or_else(|e| io.fail(e))
}

fn grid<O: Write, E: Write>(
    primes: &[Prime],
    max: u32,
    io: &mut Io<'_, O, E>,
) -> Result<i32, chromloc_core::NilpotentError> {
    let defaults: Vec<Prime> = DEFAULT_GRID_PRIMES.iter().map(|&p| Prime::new(p).expect("prime")).collect();
    let primes = if primes.is_empty() { &defaults[..] } else { primes };
    let mut all_ok = true;
    for &p in primes {
        for j in 1..=max {
            for k in 0..=max {
                let bound = u64::from(j) + u64::from(k);
                let mut holds = true;
                let mut agree = true;
                let mut minimal = None;
                for n in 0..=bound + 2 {
                    let zero = verify_nilp_diff(p, j, k, n)?;
                    agree &= zero == termwise_check(p, j, k, n)?;
                    if n >= bound {
                        holds &= zero;
                    }
                    if zero && minimal.is_none() {
                        minimal = Some(n);
                    }
                }
                let minimal = minimal.map_or_else(|| "none".to_string(), |n: u64| n.to_string());
                io.line(format_args!(
                    "p={p} j={j} k={k} bound={bound} minimal={minimal} holds={holds} termwise_agrees={agree}"
                ));
                all_ok &= holds && agree;
            }
        }
    }
    Ok(verdict(all_ok))
}
