use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::fmt;

/// The base ring of a computation: the integers, or the integers modulo n
/// for some n >= 2.
///
/// Every matrix, module, and complex carries one of these, and mixed-ring
/// operations are rejected rather than coerced.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Ring {
    Z,
    Zmod(BigInt),
}

impl Ring {
    /// Construct Z/n, validating n >= 2.
    pub fn zmod(n: impl Into<BigInt>) -> Result<Ring> {
        let n = n.into();
        if n < BigInt::from(2) {
            return Err(Error::Invalid(format!("modulus must be >= 2, got {n}")));
        }
        Ok(Ring::Zmod(n))
    }

    /// Canonical representative of x in this ring: x itself over Z, and the
    /// least non-negative residue over Z/n.
    pub fn reduce(&self, x: &BigInt) -> BigInt {
        match self {
            Ring::Z => x.clone(),
            Ring::Zmod(n) => {
                let r = x % n;
                if r.is_negative() {
                    r + n
                } else {
                    r
                }
            }
        }
    }

    pub fn is_zero(&self, x: &BigInt) -> bool {
        self.reduce(x).is_zero()
    }

    /// The modulus when finite, None over Z.
    pub fn modulus(&self) -> Option<&BigInt> {
        match self {
            Ring::Z => None,
            Ring::Zmod(n) => Some(n),
        }
    }

    /// Error unless `self` and `other` agree.
    pub fn expect_same(&self, other: &Ring, context: &str) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!("{context}: {self} vs {other}")))
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Z => write!(f, "Z"),
            Ring::Zmod(n) => write!(f, "Z/{n}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_is_least_nonnegative_residue() {
        let r = Ring::zmod(4).unwrap();
        assert_eq!(r.reduce(&BigInt::from(-1)), BigInt::from(3));
        assert_eq!(r.reduce(&BigInt::from(4)), BigInt::from(0));
        assert_eq!(r.reduce(&BigInt::from(7)), BigInt::from(3));
        assert_eq!(Ring::Z.reduce(&BigInt::from(-5)), BigInt::from(-5));
    }

    #[test]
    fn modulus_must_be_at_least_two() {
        assert!(Ring::zmod(1).is_err());
        assert!(Ring::zmod(0).is_err());
        assert!(Ring::zmod(2).is_ok());
    }

    #[test]
    fn display_names() {
        assert_eq!(Ring::Z.to_string(), "Z");
        assert_eq!(Ring::zmod(6).unwrap().to_string(), "Z/6");
    }
}
