//! The truncated ring `(Z/p^j)[y, e] / (e^E)` and the identity
//! `(y + e)^(p^n) = y^(p^n)` for `n >= j + k` when `E = p^k`.
//!
//! The ring is the universal commutative witness for the hypotheses
//! `p^j e = 0` and `e^(p^k) = 0`, so a check here covers every commutative
//! ring satisfying them.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::padic::{binomial, nu_binom};
use crate::Prime;

/// Upper bound on the truncation order `E`.
pub const MAX_EPS_ORDER: u64 = 1 << 16;

/// Largest `p^n` the full-degree oracle accepts.
pub const ORACLE_MAX_DEGREE: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NilpotentError {
    #[error("j must be at least 1")]
    ZeroJ,
    #[error("p^j = {p}^{j} overflows a u64 modulus")]
    ModulusOverflow { p: Prime, j: u32 },
    #[error("truncation order exceeds {MAX_EPS_ORDER}")]
    OrderTooLarge,
    #[error("truncation order must be at least 1")]
    ZeroOrder,
    #[error("operands live in different truncated rings")]
    ParamMismatch,
    #[error("oracle only handles p^n <= {ORACLE_MAX_DEGREE}")]
    Scale,
}

/// Parameters of `(Z/p^j)[y, e] / (e^E)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TruncParams {
    p: Prime,
    j: u32,
    modulus: u64,
    eps_order: usize,
}

impl TruncParams {
    /// `E = p^k`.
    pub fn new(p: Prime, j: u32, k: u32) -> Result<Self, NilpotentError> {
        let order = p
            .get()
            .checked_pow(k)
            .filter(|&e| e <= MAX_EPS_ORDER)
            .ok_or(NilpotentError::OrderTooLarge)?;
        Self::with_order(p, j, order)
    }

    /// Arbitrary truncation order `E >= 1`.
    pub fn with_order(p: Prime, j: u32, order: u64) -> Result<Self, NilpotentError> {
        if j == 0 {
            return Err(NilpotentError::ZeroJ);
        }
        let modulus = p
            .get()
            .checked_pow(j)
            .ok_or(NilpotentError::ModulusOverflow { p, j })?;
        if order == 0 {
            return Err(NilpotentError::ZeroOrder);
        }
        if order > MAX_EPS_ORDER {
            return Err(NilpotentError::OrderTooLarge);
        }
        Ok(TruncParams { p, j, modulus, eps_order: order as usize })
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    /// `p^j`.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `E`; every `e^i` with `i >= E` vanishes.
    pub fn eps_order(&self) -> usize {
        self.eps_order
    }
}

/// Element of the truncated ring: for each e-degree below `E`, a sparse
/// polynomial in `y` (degree -> nonzero coefficient mod `p^j`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilElement {
    params: TruncParams,
    coeffs: Vec<BTreeMap<BigUint, u64>>,
}

impl NilElement {
    pub fn zero(params: TruncParams) -> Self {
        NilElement { params, coeffs: alloc::vec![BTreeMap::new(); params.eps_order] }
    }

    /// `c · y^y_deg · e^eps_deg`, reduced.
    pub fn monomial(params: TruncParams, c: u64, y_deg: BigUint, eps_deg: usize) -> Self {
        let mut out = Self::zero(params);
        out.add_term(eps_deg, y_deg, c);
        out
    }

    pub fn one(params: TruncParams) -> Self {
        Self::monomial(params, 1, BigUint::zero(), 0)
    }

    pub fn y(params: TruncParams) -> Self {
        Self::monomial(params, 1, BigUint::one(), 0)
    }

    pub fn eps(params: TruncParams) -> Self {
        Self::monomial(params, 1, BigUint::zero(), 1)
    }

    pub fn params(&self) -> TruncParams {
        self.params
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(BTreeMap::is_empty)
    }

    /// Coefficient of `y^y_deg · e^eps_deg`.
    pub fn coeff(&self, y_deg: &BigUint, eps_deg: usize) -> u64 {
        self.coeffs
            .get(eps_deg)
            .and_then(|poly| poly.get(y_deg))
            .copied()
            .unwrap_or(0)
    }

    /// Nonzero terms as `(eps_deg, y_deg, coefficient)`, ordered by e-degree
    /// then y-degree.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigUint, u64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .flat_map(|(e, poly)| poly.iter().map(move |(y, &c)| (e, y, c)))
    }

    fn add_term(&mut self, eps_deg: usize, y_deg: BigUint, c: u64) {
        let m = self.params.modulus;
        let c = c % m;
        if eps_deg >= self.params.eps_order || c == 0 {
            return;
        }
        let poly = &mut self.coeffs[eps_deg];
        let entry = poly.entry(y_deg).or_insert(0);
        *entry = ((*entry as u128 + c as u128) % m as u128) as u64;
        if *entry == 0 {
            poly.retain(|_, c| *c != 0);
        }
    }

    fn check(&self, other: &Self) -> Result<(), NilpotentError> {
        if self.params == other.params {
            Ok(())
        } else {
            Err(NilpotentError::ParamMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, NilpotentError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, y, c) in other.terms() {
            out.add_term(e, y.clone(), c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let m = self.params.modulus;
        let mut out = Self::zero(self.params);
        for (e, y, c) in self.terms() {
            out.add_term(e, y.clone(), m - c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self, NilpotentError> {
        self.add(&other.neg())
    }

    /// Product, discarding e-degrees `>= E`.
    pub fn mul(&self, other: &Self) -> Result<Self, NilpotentError> {
        self.check(other)?;
        let m = self.params.modulus as u128;
        let mut out = Self::zero(self.params);
        for (ea, ya, ca) in self.terms() {
            for (eb, yb, cb) in other.terms() {
                if ea + eb < self.params.eps_order {
                    let c = (ca as u128 * cb as u128 % m) as u64;
                    out.add_term(ea + eb, ya + yb, c);
                }
            }
        }
        Ok(out)
    }

    /// `self^exp` by square-and-multiply.
    pub fn pow(&self, mut exp: u64) -> Self {
        let mut acc = Self::one(self.params);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }
}

impl fmt::Display for NilElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, y, c) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            if !y.is_zero() {
                write!(f, "*y^{y}")?;
            }
            if e > 0 {
                write!(f, "*e^{e}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn p_pow(p: Prime, n: u64) -> BigUint {
    let exp = u32::try_from(n).expect("exponent n exceeds u32");
    Pow::pow(&BigUint::from(p.get()), exp)
}

/// Largest `i` with a surviving term `C(p^n, i) y^(p^n - i) e^i`.
/// The `i = p^n` term `e^(p^n)` is only dropped when `p^n >= E`.
fn top_index(big_n: &BigUint, params: &TruncParams) -> usize {
    let cap = params.eps_order - 1;
    big_n.to_usize().map_or(cap, |n| n.min(cap))
}

/// `(y + e)^(p^n) - y^(p^n) = Σ_{1 <= i} C(p^n, i) y^(p^n - i) e^i`, built
/// from the binomial coefficients reduced mod `p^j` for `i < E` only.
pub fn binomial_difference_fast(params: TruncParams, n: u64) -> NilElement {
    let big_n = p_pow(params.p, n);
    let mut out = NilElement::zero(params);
    let mut c = BigUint::one();
    for i in 1..=top_index(&big_n, &params) {
        let i_big = BigUint::from(i);
        c = c * (&big_n - &i_big + 1u32) / &i_big;
        let reduced = (&c % params.modulus).to_u64().expect("reduced below a u64 modulus");
        out.add_term(i, &big_n - &i_big, reduced);
    }
    out
}

/// The same difference computed by full ring arithmetic. Only for
/// `p^n <= 64`.
pub fn binomial_difference_oracle(params: TruncParams, n: u64) -> Result<NilElement, NilpotentError> {
    let degree = params
        .p
        .get()
        .checked_pow(u32::try_from(n).map_err(|_| NilpotentError::Scale)?)
        .filter(|&d| d <= ORACLE_MAX_DEGREE)
        .ok_or(NilpotentError::Scale)?;
    let x = NilElement::y(params).add(&NilElement::eps(params))?;
    x.pow(degree).sub(&NilElement::y(params).pow(degree))
}

/// True iff `(y + e)^(p^n) = y^(p^n)` in `(Z/p^j)[y, e]/(e^(p^k))`.
pub fn verify_nilp_diff(p: Prime, j: u32, k: u32, n: u64) -> Result<bool, NilpotentError> {
    let params = TruncParams::new(p, j, k)?;
    Ok(binomial_difference_fast(params, n).is_zero())
}

/// True iff every term surviving the e-truncation has `ν_p(C(p^n, i)) >= j`.
pub fn termwise_check(p: Prime, j: u32, k: u32, n: u64) -> Result<bool, NilpotentError> {
    let params = TruncParams::new(p, j, k)?;
    let big_n = p_pow(p, n);
    let j = BigUint::from(j);
    Ok((1..=top_index(&big_n, &params)).all(|i| {
        nu_binom(&big_n, &BigUint::from(i), p).expect("i <= p^n") >= j
    }))
}

/// Smallest `n <= search_bound` for which the difference vanishes.
pub fn minimal_n(p: Prime, j: u32, k: u32, search_bound: u64) -> Result<Option<u64>, NilpotentError> {
    TruncParams::new(p, j, k)?;
    for n in 0..=search_bound {
        if verify_nilp_diff(p, j, k, n)? {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Exact `C(p^n, i)` for small arguments, used by tests as a third route.
#[doc(hidden)]
pub fn exact_coefficient(p: Prime, n: u64, i: u64) -> Option<BigUint> {
    binomial(&p_pow(p, n), &BigUint::from(i))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u64, j: u32, k: u32) -> TruncParams {
        TruncParams::new(Prime::new(p).unwrap(), j, k).unwrap()
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn parameter_validation() {
        assert_eq!(TruncParams::new(Prime::TWO, 0, 1), Err(NilpotentError::ZeroJ));
        assert!(matches!(
            TruncParams::new(Prime::TWO, 64, 1),
            Err(NilpotentError::ModulusOverflow { .. })
        ));
        assert_eq!(TruncParams::new(Prime::TWO, 1, 17), Err(NilpotentError::OrderTooLarge));
        assert_eq!(TruncParams::with_order(Prime::TWO, 1, 0), Err(NilpotentError::ZeroOrder));
        let t = params(3, 2, 2);
        assert_eq!((t.modulus(), t.eps_order()), (9, 9));
    }

    #[test]
    fn multiplication_basics() {
        let t = params(2, 1, 1);
        let (y, e) = (NilElement::y(t), NilElement::eps(t));
        assert_eq!(y.mul(&e).unwrap(), NilElement::monomial(t, 1, big(1), 1));
        assert!(e.mul(&e).unwrap().is_zero());
        assert_eq!(y.mul(&NilElement::one(t)).unwrap(), y);
        let other = NilElement::y(params(3, 1, 1));
        assert_eq!(y.mul(&other), Err(NilpotentError::ParamMismatch));
    }

    #[test]
    fn square_of_sum() {
        let t = params(3, 2, 1);
        let x = NilElement::y(t).add(&NilElement::eps(t)).unwrap();
        let sq = x.mul(&x).unwrap();
        let expected = NilElement::monomial(t, 1, big(2), 0)
            .add(&NilElement::monomial(t, 2, big(1), 1))
            .unwrap()
            .add(&NilElement::monomial(t, 1, big(0), 2))
            .unwrap();
        assert_eq!(sq, expected);
        assert_eq!(sq.to_string(), "1*y^2 + 2*y^1*e^1 + 1*e^2");
    }

    #[test]
    fn fast_difference() {
        assert!(binomial_difference_fast(params(2, 1, 1), 2).is_zero());
        let d = binomial_difference_fast(params(2, 2, 1), 1);
        assert_eq!(d, NilElement::monomial(params(2, 2, 1), 2, big(1), 1));
        let t = params(3, 1, 1);
        assert_eq!(binomial_difference_fast(t, 0), NilElement::eps(t));
    }

    #[test]
    fn oracle_matches_fast_examples() {
        for (t, n) in [(params(2, 1, 1), 2), (params(2, 2, 1), 1), (params(3, 1, 1), 0)] {
            assert_eq!(binomial_difference_oracle(t, n).unwrap(), binomial_difference_fast(t, n));
        }
        assert_eq!(binomial_difference_oracle(params(2, 1, 1), 7), Err(NilpotentError::Scale));
        assert_eq!(binomial_difference_oracle(params(5, 1, 1), 3), Err(NilpotentError::Scale));
    }

    #[test]
    fn verification() {
        assert_eq!(verify_nilp_diff(Prime::TWO, 1, 1, 2), Ok(true));
        assert_eq!(verify_nilp_diff(Prime::TWO, 2, 1, 1), Ok(false));
        assert_eq!(verify_nilp_diff(Prime::TWO, 2, 1, 2), Ok(true));
        assert_eq!(termwise_check(Prime::TWO, 1, 1, 2), Ok(true));
        assert_eq!(termwise_check(Prime::TWO, 2, 1, 1), Ok(false));
        assert_eq!(termwise_check(Prime::THREE, 1, 1, 1), Ok(true));
    }

    #[test]
    fn large_exponent_is_cheap() {
        assert_eq!(verify_nilp_diff(Prime::TWO, 3, 4, 200), Ok(true));
        assert_eq!(termwise_check(Prime::TWO, 3, 4, 200), Ok(true));
    }

    #[test]
    fn minimal_exponent() {
        assert_eq!(minimal_n(Prime::TWO, 2, 1, 10), Ok(Some(2)));
        assert_eq!(minimal_n(Prime::TWO, 1, 1, 10), Ok(Some(1)));
        assert_eq!(minimal_n(Prime::THREE, 2, 2, 0), Ok(None));
        // e = 0 when k = 0, so n = 0 already works.
        assert_eq!(minimal_n(Prime::FIVE, 3, 0, 0), Ok(Some(0)));
    }

    #[test]
    fn exact_coefficients() {
        assert_eq!(exact_coefficient(Prime::TWO, 3, 6), Some(big(28)));
    }
}
