//! Command-line front end for `chromloc-core`.
//!
//! [`expr`] parses and evaluates localisation expressions; [`cli`] holds the
//! subcommand dispatcher used by the `chromloc` binary.

pub mod cli;
pub mod expr;

pub use cli::run;
pub use expr::{eval_lattice, parse_lattice_expr, ExprError, LatticeExpr};
