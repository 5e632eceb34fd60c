//! K(n)-homology profiles of maps `1 -> A`.
//!
//! A central map has K(n)-homology that is either zero or an isomorphism at
//! every height, so a profile records just that bit per height. Profiles are
//! eventually constant; the constant tail also covers height infinity.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::{ExtNat, PLocalFiniteLoc, Prime};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProfileError {
    #[error("profile is not algebraically central")]
    NotAlgebraicallyCentral,
    #[error("tensor power exponent must be positive")]
    ZeroPower,
    #[error("malformed profile literal at byte {offset}: {reason}")]
    Literal { offset: usize, reason: &'static str },
    #[error("entry {value} at index {index} is not a residue mod {p}")]
    Residue { index: usize, value: u64, p: Prime },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KnEntry {
    Zero,
    Iso,
}

impl KnEntry {
    /// Künneth over a field: a tensor product of linear maps is an
    /// isomorphism iff both factors are, and zero if either is.
    pub fn tensor(self, other: Self) -> Self {
        match (self, other) {
            (KnEntry::Iso, KnEntry::Iso) => KnEntry::Iso,
            _ => KnEntry::Zero,
        }
    }

    fn symbol(self) -> char {
        match self {
            KnEntry::Zero => 'Z',
            KnEntry::Iso => 'I',
        }
    }
}

/// Entries at heights `0..prefix.len()` followed by a constant tail.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MapProfile {
    prefix: Vec<KnEntry>,
    tail: KnEntry,
}

impl MapProfile {
    /// Builds a canonical profile, trimming prefix entries equal to the tail.
    pub fn new(mut prefix: Vec<KnEntry>, tail: KnEntry) -> Self {
        while prefix.last() == Some(&tail) {
            prefix.pop();
        }
        MapProfile { prefix, tail }
    }

    pub fn all_iso() -> Self {
        MapProfile::new(Vec::new(), KnEntry::Iso)
    }

    pub fn all_zero() -> Self {
        MapProfile::new(Vec::new(), KnEntry::Zero)
    }

    /// The algebraically central profile of type `m`: iso below `m`, zero
    /// from `m` on.
    pub fn of_type(m: ExtNat) -> Self {
        match m {
            ExtNat::Infinite => MapProfile::all_iso(),
            ExtNat::Finite(m) => {
                let len = usize::try_from(m).expect("type does not fit in memory");
                MapProfile::new(alloc::vec![KnEntry::Iso; len], KnEntry::Zero)
            }
        }
    }

    pub fn prefix(&self) -> &[KnEntry] {
        &self.prefix
    }

    pub fn tail(&self) -> KnEntry {
        self.tail
    }

    pub fn entry(&self, height: ExtNat) -> KnEntry {
        match height {
            ExtNat::Finite(n) => usize::try_from(n)
                .ok()
                .and_then(|n| self.prefix.get(n))
                .copied()
                .unwrap_or(self.tail),
            ExtNat::Infinite => self.tail,
        }
    }

    /// The type `m` if the profile is iso below `m` and zero at and above
    /// `m` (including height infinity).
    pub fn algebraic_type(&self) -> Option<ExtNat> {
        match self.tail {
            KnEntry::Iso if self.prefix.is_empty() => Some(ExtNat::Infinite),
            KnEntry::Iso => None,
            KnEntry::Zero => self
                .prefix
                .iter()
                .all(|&e| e == KnEntry::Iso)
                .then_some(ExtNat::Finite(self.prefix.len() as u64)),
        }
    }

    pub fn is_algebraically_central(&self) -> bool {
        self.algebraic_type().is_some()
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let len = self.prefix.len().max(other.prefix.len());
        let prefix = (0..len)
            .map(|h| {
                let h = ExtNat::Finite(h as u64);
                self.entry(h).tensor(other.entry(h))
            })
            .collect();
        MapProfile::new(prefix, self.tail.tensor(other.tail))
    }

    /// `self^{⊗n}` by repeated squaring.
    pub fn tensor_power(&self, n: u64) -> Result<Self, ProfileError> {
        if n == 0 {
            return Err(ProfileError::ZeroPower);
        }
        let mut base = self.clone();
        let mut acc: Option<MapProfile> = None;
        let mut n = n;
        loop {
            if n & 1 == 1 {
                acc = Some(match acc {
                    Some(acc) => acc.tensor(&base),
                    None => base.clone(),
                });
            }
            n >>= 1;
            if n == 0 {
                break;
            }
            base = base.tensor(&base);
        }
        Ok(acc.expect("n >= 1"))
    }

    /// Type of the cofibre of a map with this profile.
    pub fn cofibre_type(&self) -> Result<ExtNat, ProfileError> {
        self.algebraic_type().ok_or(ProfileError::NotAlgebraicallyCentral)
    }

    /// The finite localisation of `Sp_(p)` determined by a central map with
    /// this profile: type `m` gives `L_{m-1}^f`, type 0 gives zero.
    pub fn induced_localisation(&self) -> Result<PLocalFiniteLoc, ProfileError> {
        Ok(match self.cofibre_type()? {
            ExtNat::Infinite => PLocalFiniteLoc::IDENTITY,
            ExtNat::Finite(0) => PLocalFiniteLoc::Zero,
            ExtNat::Finite(m) => PLocalFiniteLoc::LnF(ExtNat::Finite(m - 1)),
        })
    }
}

/// `prefix/tail` with entries from `{I, Z}`, e.g. `II/Z`.
impl fmt::Display for MapProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.prefix {
            write!(f, "{}", e.symbol())?;
        }
        write!(f, "/{}", self.tail.symbol())
    }
}

/// Parses `prefix/tail`. Literals that are not in canonical form (prefix
/// ending in the tail symbol) are rejected rather than trimmed.
impl FromStr for MapProfile {
    type Err = ProfileError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let entry = |offset: usize, b: u8| match b {
            b'I' => Ok(KnEntry::Iso),
            b'Z' => Ok(KnEntry::Zero),
            _ => Err(ProfileError::Literal { offset, reason: "expected `I` or `Z`" }),
        };
        let slash = s.find('/').ok_or(ProfileError::Literal {
            offset: s.len(),
            reason: "missing `/`",
        })?;
        let prefix = s.as_bytes()[..slash]
            .iter()
            .enumerate()
            .map(|(i, &b)| entry(i, b))
            .collect::<Result<Vec<_>, _>>()?;
        let tail = match &s.as_bytes()[slash + 1..] {
            [b] => entry(slash + 1, *b)?,
            [] => {
                return Err(ProfileError::Literal {
                    offset: slash + 1,
                    reason: "missing tail entry",
                })
            }
            [_, ..] => {
                return Err(ProfileError::Literal {
                    offset: slash + 2,
                    reason: "tail must be a single entry",
                })
            }
        };
        if prefix.last() == Some(&tail) {
            return Err(ProfileError::Literal {
                offset: slash - 1,
                reason: "prefix must not end with the tail entry",
            });
        }
        Ok(MapProfile { prefix, tail })
    }
}

/// A vector `v` in `F_p^d`, viewed as a map `1 -> V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldVector {
    p: Prime,
    entries: Vec<u64>,
}

impl FieldVector {
    pub fn new(p: Prime, entries: Vec<u64>) -> Result<Self, ProfileError> {
        if let Some((index, &value)) = entries.iter().enumerate().find(|(_, &x)| x >= p.get()) {
            return Err(ProfileError::Residue { index, value, p });
        }
        Ok(FieldVector { p, entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    /// Checks `v ⊗ w = w ⊗ v` by comparing the matrices `v wᵀ` and `w vᵀ`
    /// entry by entry for every standard basis vector `w`. By linearity this
    /// covers every `w`.
    pub fn is_central_bruteforce(&self) -> bool {
        let d = self.dim();
        let p = self.p.get();
        let basis = |w: usize, i: usize| u64::from(w == i);
        (0..d).all(|w| {
            (0..d).all(|a| {
                (0..d).all(|b| {
                    let vw = (self.entries[a] as u128 * basis(w, b) as u128) % p as u128;
                    let wv = (basis(w, a) as u128 * self.entries[b] as u128) % p as u128;
                    vw == wv
                })
            })
        })
    }

    /// A map `1 -> V` is central iff it is zero or `dim V <= 1`.
    pub fn is_central_predicted(&self) -> bool {
        self.is_zero() || self.dim() <= 1
    }
}
