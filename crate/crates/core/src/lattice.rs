//! The lattice of finite localisations.
//!
//! A nonzero finite localisation of `Sp` is determined by one height
//! `0 <= n_p <= inf` per prime; composition takes the pointwise minimum and
//! the order is pointwise. On `Sp_(p)` the finite localisations form the
//! chain `0 < L_0^f < L_1^f < ... < L_inf^f = id`.
//!
//! Only parameter families that are constant away from finitely many primes
//! are representable. Every named localisation (identity, rationalisation,
//! p-localisation, inverting finitely many primes, lifts of p-local
//! localisations) is of this kind, and the class is closed under pointwise
//! min and max.

use alloc::collections::BTreeMap;
use core::cmp::Ordering;
use core::fmt;

use crate::{ExtNat, Prime};

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("the zero localisation cannot be lifted from Sp_({0}); use the global zero localisation")]
    ZeroLift(Prime),
}

/// A finite localisation of p-local spectra.
///
/// The derived order is the localisation order: `Zero < LnF(0) < ... < LnF(inf)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PLocalFiniteLoc {
    Zero,
    /// `L_n^f`; `LnF(inf)` is the identity.
    LnF(ExtNat),
}

impl PLocalFiniteLoc {
    pub const IDENTITY: PLocalFiniteLoc = PLocalFiniteLoc::LnF(ExtNat::Infinite);

    /// Composite of two localisations: the acyclics of the result are
    /// generated by the union of the acyclics.
    pub fn compose(self, other: Self) -> Self {
        match (self, other) {
            (PLocalFiniteLoc::LnF(a), PLocalFiniteLoc::LnF(b)) => PLocalFiniteLoc::LnF(a.min(b)),
            _ => PLocalFiniteLoc::Zero,
        }
    }

    /// Reverse inclusion of acyclics.
    pub fn leq(self, other: Self) -> bool {
        self <= other
    }
}

impl fmt::Display for PLocalFiniteLoc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PLocalFiniteLoc::Zero => f.write_str("Zero"),
            PLocalFiniteLoc::LnF(n) => write!(f, "LnF({n})"),
        }
    }
}

/// A nonzero parameter family `p -> n_p`, stored as a default height plus
/// finitely many exceptions. Always canonical: no exception equals the
/// default, so structural equality is equality of families.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Params {
    default: ExtNat,
    exceptions: BTreeMap<Prime, ExtNat>,
}

impl Params {
    pub fn new(default: ExtNat, exceptions: impl IntoIterator<Item = (Prime, ExtNat)>) -> Self {
        let exceptions = exceptions
            .into_iter()
            .filter(|&(_, n)| n != default)
            .collect();
        Params { default, exceptions }
    }

    pub fn default_height(&self) -> ExtNat {
        self.default
    }

    /// Exception primes in ascending order.
    pub fn exceptions(&self) -> impl Iterator<Item = (Prime, ExtNat)> + '_ {
        self.exceptions.iter().map(|(&p, &n)| (p, n))
    }

    pub fn height_at(&self, p: Prime) -> ExtNat {
        self.exceptions.get(&p).copied().unwrap_or(self.default)
    }

    /// Applies `op` pointwise. The result only differs from `op(defaults)` at
    /// primes where one of the inputs has an exception.
    fn pointwise(&self, other: &Self, op: impl Fn(ExtNat, ExtNat) -> ExtNat) -> Self {
        let primes = self.exceptions.keys().chain(other.exceptions.keys());
        Params::new(
            op(self.default, other.default),
            primes
                .map(|&p| (p, op(self.height_at(p), other.height_at(p))))
                .collect::<BTreeMap<_, _>>(),
        )
    }

    fn leq(&self, other: &Self) -> bool {
        self.default <= other.default
            && self
                .exceptions
                .keys()
                .chain(other.exceptions.keys())
                .all(|&p| self.height_at(p) <= other.height_at(p))
    }
}

/// A finite localisation of spectra.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GlobalFiniteLoc {
    Zero,
    Params(Params),
}

impl GlobalFiniteLoc {
    pub fn identity() -> Self {
        GlobalFiniteLoc::Params(Params::new(ExtNat::Infinite, []))
    }

    /// `n_p = 0` everywhere.
    pub fn rationalisation() -> Self {
        GlobalFiniteLoc::Params(Params::new(ExtNat::ZERO, []))
    }

    /// `n_p = inf` at `p`, `0` elsewhere.
    pub fn p_localisation(p: Prime) -> Self {
        GlobalFiniteLoc::Params(Params::new(ExtNat::ZERO, [(p, ExtNat::Infinite)]))
    }

    pub fn from_params(default: ExtNat, exceptions: impl IntoIterator<Item = (Prime, ExtNat)>) -> Self {
        GlobalFiniteLoc::Params(Params::new(default, exceptions))
    }

    /// Inverts exactly the primes in `primes` (the localisation `L_{1/M}`
    /// for `M` their product).
    pub fn invert_primes(primes: impl IntoIterator<Item = Prime>) -> Self {
        GlobalFiniteLoc::Params(Params::new(
            ExtNat::Infinite,
            primes.into_iter().map(|p| (p, ExtNat::ZERO)),
        ))
    }

    /// The global localisation restricting to `local` at `p` and to the
    /// identity at every other prime.
    pub fn lift(p: Prime, local: PLocalFiniteLoc) -> Result<Self, LatticeError> {
        match local {
            PLocalFiniteLoc::Zero => Err(LatticeError::ZeroLift(p)),
            PLocalFiniteLoc::LnF(n) => Ok(GlobalFiniteLoc::Params(Params::new(
                ExtNat::Infinite,
                [(p, n)],
            ))),
        }
    }

    pub fn params(&self) -> Option<&Params> {
        match self {
            GlobalFiniteLoc::Zero => None,
            GlobalFiniteLoc::Params(params) => Some(params),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, GlobalFiniteLoc::Zero)
    }

    /// Composite of two localisations; equal to [`meet`](Self::meet).
    pub fn compose(&self, other: &Self) -> Self {
        match (self, other) {
            (GlobalFiniteLoc::Params(a), GlobalFiniteLoc::Params(b)) => {
                GlobalFiniteLoc::Params(a.pointwise(b, ExtNat::min))
            }
            _ => GlobalFiniteLoc::Zero,
        }
    }

    /// Greatest lower bound: acyclics generated by the union of acyclics.
    pub fn meet(&self, other: &Self) -> Self {
        self.compose(other)
    }

    /// Least upper bound: intersection of acyclics, i.e. pointwise maximum.
    pub fn join(&self, other: &Self) -> Self {
        match (self, other) {
            (GlobalFiniteLoc::Zero, x) | (x, GlobalFiniteLoc::Zero) => x.clone(),
            (GlobalFiniteLoc::Params(a), GlobalFiniteLoc::Params(b)) => {
                GlobalFiniteLoc::Params(a.pointwise(b, ExtNat::max))
            }
        }
    }

    pub fn leq(&self, other: &Self) -> bool {
        match (self, other) {
            (GlobalFiniteLoc::Zero, _) => true,
            (GlobalFiniteLoc::Params(_), GlobalFiniteLoc::Zero) => false,
            (GlobalFiniteLoc::Params(a), GlobalFiniteLoc::Params(b)) => a.leq(b),
        }
    }

    /// The induced finite localisation of `Sp_(p)`.
    pub fn restrict(&self, p: Prime) -> PLocalFiniteLoc {
        match self {
            GlobalFiniteLoc::Zero => PLocalFiniteLoc::Zero,
            GlobalFiniteLoc::Params(params) => PLocalFiniteLoc::LnF(params.height_at(p)),
        }
    }

    /// A nonzero finite localisation is compactly central exactly when it is
    /// the identity at all but finitely many primes. The zero localisation
    /// comes from a compact central map as well.
    pub fn is_compactly_central(&self) -> bool {
        match self {
            GlobalFiniteLoc::Zero => true,
            GlobalFiniteLoc::Params(params) => params.default.is_infinite(),
        }
    }
}

impl PartialOrd for GlobalFiniteLoc {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self.leq(other), other.leq(self)) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        }
    }
}

/// Canonical atom syntax, e.g. `params(inf;2->1,7->0)` or `zero`.
impl fmt::Display for GlobalFiniteLoc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GlobalFiniteLoc::Zero => f.write_str("zero"),
            GlobalFiniteLoc::Params(params) => {
                write!(f, "params({}", params.default)?;
                for (i, (p, n)) in params.exceptions().enumerate() {
                    let sep = if i == 0 { ';' } else { ',' };
                    write!(f, "{sep}{p}->{n}")?;
                }
                f.write_str(")")
            }
        }
    }
}
