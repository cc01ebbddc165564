//! Deterministic prime sieve and small factorizations.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ordered::Rational;

/// Largest prime index served by [`nth_prime`].
pub const MAX_PRIME_INDEX: usize = 10_000;

// p_10001 = 104743, so this covers p_{i+1} for every supported i
const SIEVE_LIMIT: usize = 104_800;

fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut composite = vec![false; SIEVE_LIMIT + 1];
        let mut out = Vec::new();
        for i in 2..=SIEVE_LIMIT {
            if !composite[i] {
                out.push(i as u64);
                let mut j = i * i;
                while j <= SIEVE_LIMIT {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        out
    })
}

/// The `i`-th prime, 1-based: `p_1 = 2`, `p_2 = 3`, ...
pub fn nth_prime(i: usize) -> Result<u64> {
    if i == 0 || i > MAX_PRIME_INDEX + 1 {
        return Err(Error::EnumerationBoundExceeded {
            what: "prime index",
            size: i,
            bound: MAX_PRIME_INDEX,
        });
    }
    Ok(primes()[i - 1])
}

/// Prime factorization of a nonzero integer's absolute value, as
/// `prime ↦ exponent`.
///
/// Factors are found by trial division over the sieve, so inputs with two
/// prime factors beyond the sieve are rejected.
pub fn factorize(n: &BigInt) -> Result<BTreeMap<BigInt, i64>> {
    let mut n = n.abs();
    if n.is_zero() {
        return Err(Error::Invalid("cannot factor zero".into()));
    }
    let mut out = BTreeMap::new();
    // the cofactor is prime once every prime up to its square root was tried
    let mut certified = false;
    for &p in primes() {
        let bp = BigInt::from(p);
        if n.is_one() || &bp * &bp > n {
            certified = true;
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = n.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            n = q;
            e += 1;
        }
        if e > 0 {
            out.insert(bp, e);
        }
    }
    if !n.is_one() {
        if !certified {
            return Err(Error::UnsupportedCombination(format!(
                "cannot certify the factorization of {n}"
            )));
        }
        *out.entry(n).or_insert(0) += 1;
    }
    Ok(out)
}

/// Exponent vector of a positive rational: numerator primes count up,
/// denominator primes count down.
pub fn exponent_vector(q: &Rational) -> Result<BTreeMap<BigInt, i64>> {
    if !q.is_positive() {
        return Err(Error::Invalid(format!("{q} is not positive")));
    }
    let mut v = factorize(q.numer())?;
    for (p, e) in factorize(q.denom())? {
        *v.entry(p).or_insert(0) -= e;
    }
    v.retain(|_, e| *e != 0);
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordered::ratio;
    use num_traits::ToPrimitive;

    #[test]
    fn first_primes() {
        let got: Vec<u64> = (1..=8).map(|i| nth_prime(i).unwrap()).collect();
        assert_eq!(got, vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(nth_prime(10_000).unwrap(), 104_729);
        assert_eq!(nth_prime(10_001).unwrap(), 104_743);
        assert!(nth_prime(0).is_err());
    }

    #[test]
    fn factorizations() {
        let f = factorize(&BigInt::from(360)).unwrap();
        let flat: Vec<(i64, i64)> = f.iter().map(|(p, e)| (p.to_i64().unwrap(), *e)).collect();
        assert_eq!(flat, vec![(2, 3), (3, 2), (5, 1)]);
        assert!(factorize(&BigInt::from(1)).unwrap().is_empty());
        let v = exponent_vector(&ratio(4, 9)).unwrap();
        let flat: Vec<(i64, i64)> = v.iter().map(|(p, e)| (p.to_i64().unwrap(), *e)).collect();
        assert_eq!(flat, vec![(2, 2), (3, -2)]);
    }
}
