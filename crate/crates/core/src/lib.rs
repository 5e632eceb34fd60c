//! Computable kernels for finite localisations of spectra.
//!
//! - [`lattice`]: the lattice of finite localisations of `Sp` and `Sp_(p)`,
//!   classified by per-prime height parameters.
//! - [`profile`]: K(n)-homology profiles of maps, algebraic centrality and the
//!   finite localisation a central map induces.
//! - [`padic`]: digit sums and p-adic valuations of factorials and binomials.
//! - [`nilpotent`]: the truncated ring `(Z/p^j)[y, e]/(e^E)` and checks that
//!   `(y + e)^(p^n) = y^(p^n)` once `n` is large enough.
//!
//! The crate is `no_std` and only needs `alloc`.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod extnat;
pub mod lattice;
pub mod nilpotent;
pub mod padic;
pub mod prime;
pub mod profile;

pub use extnat::ExtNat;
pub use lattice::{GlobalFiniteLoc, LatticeError, PLocalFiniteLoc};
pub use nilpotent::{NilElement, NilpotentError, TruncParams};
pub use padic::ValuationError;
pub use prime::{Prime, PrimeError};
pub use profile::{FieldVector, KnEntry, MapProfile, ProfileError};
