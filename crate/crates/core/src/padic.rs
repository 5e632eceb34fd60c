//! Exact p-adic valuations of factorials and binomial coefficients.
//!
//! Everything is arbitrary precision. Where a quantity is known to be an
//! exact quotient, a nonzero remainder is a bug and panics.

use alloc::vec::Vec;
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::Prime;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ValuationError {
    #[error("binomial C({n}, {k}) requires k <= n")]
    KExceedsN { n: BigUint, k: BigUint },
    #[error("C(p^n, m p^(n-k)) requires k <= n (got k = {k}, n = {n})")]
    ExponentOrder { n: u32, k: u32 },
    #[error("C(p^n, m p^(n-k)) requires 1 <= m < p^k and p not dividing m (got m = {m})")]
    Multiplier { m: BigUint },
}

/// Largest `(p^w, w)` with `p^w` fitting in a u64.
fn chunk(p: u64) -> (u64, u32) {
    let mut width = 1u32;
    let mut chunk = p;
    while let Some(next) = chunk.checked_mul(p) {
        chunk = next;
        width += 1;
    }
    (chunk, width)
}

/// Feeds the base-`p` digits of `n`, least significant first, to `visit`.
/// Zero has no digits.
fn for_each_digit(n: &BigUint, p: u64, mut visit: impl FnMut(u64)) {
    let mut split = |mut r: u64, width: Option<u32>| match width {
        Some(width) => {
            for _ in 0..width {
                visit(r % p);
                r /= p;
            }
        }
        None => {
            while r > 0 {
                visit(r % p);
                r /= p;
            }
        }
    };
    if let Some(small) = n.to_u64() {
        split(small, None);
        return;
    }
    // Peel off the largest power of p that fits in a u64 at a time, then
    // split each chunk into single digits with machine arithmetic.
    let (chunk, width) = chunk(p);
    let chunk_big = BigUint::from(chunk);
    let mut rest = n.clone();
    while !rest.is_zero() {
        let (q, r) = rest.div_rem(&chunk_big);
        let r = r.to_u64().expect("remainder below a u64 modulus");
        split(r, if q.is_zero() { None } else { Some(width) });
        rest = q;
    }
}

/// Base-`p` digits of `n`, least significant first. Zero has no digits.
pub fn digits(n: &BigUint, p: Prime) -> Vec<u64> {
    let mut out = Vec::new();
    for_each_digit(n, p.get(), |d| out.push(d));
    out
}

/// `s_p(n)`, the sum of the base-`p` digits of `n`.
pub fn digit_sum(n: &BigUint, p: Prime) -> BigUint {
    let mut total = BigUint::zero();
    let mut acc = 0u64;
    for_each_digit(n, p.get(), |d| match acc.checked_add(d) {
        Some(sum) => acc = sum,
        None => {
            total += acc;
            acc = d;
        }
    });
    total + acc
}

/// `ν_p(n!) = (n - s_p(n)) / (p - 1)`.
pub fn nu_factorial(n: &BigUint, p: Prime) -> BigUint {
    exact_div_p_minus_one(n - digit_sum(n, p), p)
}

/// `ν_p(n!) = Σ_{j≥1} ⌊n / p^j⌋`, summed until the quotient vanishes.
pub fn nu_factorial_oracle(n: &BigUint, p: Prime) -> BigUint {
    let p = BigUint::from(p.get());
    let mut total = BigUint::zero();
    let mut q = n / &p;
    while !q.is_zero() {
        total += &q;
        q /= &p;
    }
    total
}

/// `ν_p(C(n, k)) = (s_p(k) + s_p(n - k) - s_p(n)) / (p - 1)`.
pub fn nu_binom(n: &BigUint, k: &BigUint, p: Prime) -> Result<BigUint, ValuationError> {
    if k > n {
        return Err(ValuationError::KExceedsN { n: n.clone(), k: k.clone() });
    }
    let numerator = digit_sum(k, p) + digit_sum(&(n - k), p);
    let s_n = digit_sum(n, p);
    assert!(numerator >= s_n, "digit sums violate s_p(k) + s_p(n-k) >= s_p(n)");
    Ok(exact_div_p_minus_one(numerator - s_n, p))
}

/// `ν_p(C(p^n, m p^(n-k)))`, which always equals `k`. Panics if it does not.
pub fn nu_binom_power(n: u32, k: u32, m: &BigUint, p: Prime) -> Result<u32, ValuationError> {
    if k > n {
        return Err(ValuationError::ExponentOrder { n, k });
    }
    let pb = BigUint::from(p.get());
    if m.is_zero() || *m >= Pow::pow(&pb, k) || (m % &pb).is_zero() {
        return Err(ValuationError::Multiplier { m: m.clone() });
    }
    let top = Pow::pow(&pb, n);
    let bottom = m * Pow::pow(&pb, n - k);
    let nu = nu_binom(&top, &bottom, p)?;
    assert_eq!(nu, BigUint::from(k), "ν_p(C(p^n, m p^(n-k))) != k");
    Ok(k)
}

/// Number of carries when adding `a` and `b` in base `p`.
pub fn carries_in_addition(a: &BigUint, b: &BigUint, p: Prime) -> u64 {
    let (da, db) = (digits(a, p), digits(b, p));
    let p = p.get();
    let mut carry = 0u64;
    let mut count = 0;
    for i in 0..da.len().max(db.len()) {
        let sum = da.get(i).copied().unwrap_or(0) + db.get(i).copied().unwrap_or(0) + carry;
        carry = u64::from(sum >= p);
        count += carry;
    }
    count
}

fn exact_div_p_minus_one(x: BigUint, p: Prime) -> BigUint {
    let (q, r) = x.div_rem(&BigUint::from(p.get() - 1));
    assert!(r.is_zero(), "p - 1 does not divide {x}");
    q
}

/// Exact `C(n, k)` by the multiplicative formula.
pub fn binomial(n: &BigUint, k: &BigUint) -> Option<BigUint> {
    if k > n {
        return None;
    }
    let k = core::cmp::min(k.clone(), n - k);
    let mut acc = BigUint::one();
    let mut i = BigUint::zero();
    while i < k {
        acc *= n - &i;
        i += 1u32;
        acc /= &i;
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn digit_sums() {
        assert_eq!(digit_sum(&big(10), Prime::TWO), big(2));
        assert_eq!(digit_sum(&big(0), Prime::SEVEN), big(0));
        assert_eq!(digit_sum(&big(8), Prime::THREE), big(4));
        assert_eq!(digits(&big(8), Prime::THREE), vec![2, 2]);
    }

    #[test]
    fn digits_across_chunk_boundary() {
        let n = Pow::pow(&big(3), 100u32) - 1u32;
        let d = digits(&n, Prime::THREE);
        assert_eq!(d.len(), 100);
        assert!(d.iter().all(|&x| x == 2));
        let big_p = Prime::new(18_446_744_073_709_551_557).unwrap();
        let n = big(18_446_744_073_709_551_557) * 5u32 + 3u32;
        assert_eq!(digits(&n, big_p), vec![3, 5]);
    }

    #[test]
    fn factorial_valuation() {
        assert_eq!(nu_factorial(&big(10), Prime::TWO), big(8));
        assert_eq!(nu_factorial_oracle(&big(10), Prime::TWO), big(8));
        assert_eq!(nu_factorial(&big(0), Prime::FIVE), big(0));
        assert_eq!(nu_factorial(&big(9), Prime::THREE), big(4));
        assert_eq!(nu_factorial_oracle(&big(9), Prime::THREE), big(4));
    }

    #[test]
    fn binomial_valuation() {
        assert_eq!(nu_binom(&big(4), &big(2), Prime::TWO), Ok(big(1)));
        assert_eq!(nu_binom(&big(9), &big(0), Prime::THREE), Ok(big(0)));
        assert_eq!(nu_binom(&big(5), &big(1), Prime::TWO), Ok(big(0)));
        assert!(matches!(
            nu_binom(&big(3), &big(4), Prime::TWO),
            Err(ValuationError::KExceedsN { .. })
        ));
    }

    #[test]
    fn power_binomial_valuation() {
        assert_eq!(nu_binom_power(3, 2, &big(3), Prime::TWO), Ok(2));
        assert_eq!(nu_binom_power(2, 1, &big(2), Prime::THREE), Ok(1));
        assert_eq!(
            nu_binom_power(3, 0, &big(1), Prime::TWO),
            Err(ValuationError::Multiplier { m: big(1) })
        );
        assert!(nu_binom_power(2, 3, &big(1), Prime::TWO).is_err());
        assert!(nu_binom_power(3, 2, &big(2), Prime::TWO).is_err());
        assert!(nu_binom_power(3, 2, &big(4), Prime::TWO).is_err());
    }

    #[test]
    fn carries() {
        assert_eq!(carries_in_addition(&big(2), &big(2), Prime::TWO), 1);
        assert_eq!(carries_in_addition(&big(0), &big(77), Prime::THREE), 0);
        assert_eq!(carries_in_addition(&big(1), &big(4), Prime::TWO), 0);
        assert_eq!(carries_in_addition(&big(1), &big(7), Prime::TWO), 3);
    }

    #[test]
    fn exact_binomials() {
        assert_eq!(binomial(&big(8), &big(6)), Some(big(28)));
        assert_eq!(binomial(&big(9), &big(6)), Some(big(84)));
        assert_eq!(binomial(&big(0), &big(0)), Some(big(1)));
        assert_eq!(binomial(&big(2), &big(3)), None);
    }
}
