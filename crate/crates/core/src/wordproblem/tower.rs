//! Integers that are either exact or known only to be astronomically large.
//!
//! Exponents in `G(n)` grow like towers of 2s. Values are kept exact up to a
//! configurable bit cap; above it they become [`TowerInt::Saturated`], which
//! keeps the sign, a lower bound on the magnitude and, when known, the
//! parity. Any operation whose answer depends on information a saturated
//! value no longer carries fails with [`CapExceeded`] instead of guessing.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default cap on the bit length of exact exponents.
pub const DEFAULT_BIT_CAP: u64 = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("undecided at bit cap {cap}: {reason}")]
pub struct CapExceeded {
    pub cap: u64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Saturated {
    /// +1 or -1.
    pub sign: i8,
    /// `|value| >= 2^floor_bits`.
    pub floor_bits: u64,
    /// `Some(true)` for odd. `None` when the parity was lost.
    pub parity: Option<bool>,
}

impl Saturated {
    pub fn parity_known(&self) -> bool {
        self.parity.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TowerInt {
    Exact(BigInt),
    Saturated(Saturated),
}

impl From<i64> for TowerInt {
    fn from(v: i64) -> Self {
        TowerInt::Exact(BigInt::from(v))
    }
}

impl From<BigInt> for TowerInt {
    fn from(v: BigInt) -> Self {
        TowerInt::Exact(v)
    }
}

impl fmt::Display for TowerInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TowerInt::Exact(v) if v.bits() <= 256 => write!(f, "{v}"),
            TowerInt::Exact(v) => write!(
                f,
                "{}2^~{}",
                if v.is_negative() { "-" } else { "" },
                v.bits() - 1
            ),
            TowerInt::Saturated(s) => write!(
                f,
                "{}>=2^{}",
                if s.sign < 0 { "-" } else { "+" },
                s.floor_bits
            ),
        }
    }
}

impl TowerInt {
    pub fn zero() -> Self {
        TowerInt::Exact(BigInt::zero())
    }

    /// Wraps an exact value, saturating if it needs more than `cap` bits.
    pub fn exact(v: BigInt, cap: u64) -> Self {
        let bits = v.bits();
        if bits > cap {
            TowerInt::Saturated(Saturated {
                sign: if v.is_negative() { -1 } else { 1 },
                floor_bits: bits - 1,
                parity: Some(v.bit(0)),
            })
        } else {
            TowerInt::Exact(v)
        }
    }

    pub fn as_exact(&self) -> Option<&BigInt> {
        match self {
            TowerInt::Exact(v) => Some(v),
            TowerInt::Saturated(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, TowerInt::Exact(_))
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.as_exact().and_then(ToPrimitive::to_i64)
    }

    /// Saturated values are never zero.
    pub fn is_zero(&self) -> bool {
        matches!(self, TowerInt::Exact(v) if v.is_zero())
    }

    pub fn signum(&self) -> i8 {
        match self {
            TowerInt::Exact(v) => match v.sign() {
                Sign::Minus => -1,
                Sign::NoSign => 0,
                Sign::Plus => 1,
            },
            TowerInt::Saturated(s) => s.sign,
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            TowerInt::Exact(v) => TowerInt::Exact(-v),
            TowerInt::Saturated(s) => TowerInt::Saturated(Saturated {
                sign: -s.sign,
                ..s.clone()
            }),
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Parity, if known (`true` = odd).
    pub fn parity(&self) -> Option<bool> {
        match self {
            TowerInt::Exact(v) => Some(v.bit(0)),
            TowerInt::Saturated(s) => s.parity,
        }
    }

    pub fn add(&self, other: &TowerInt, cap: u64) -> Result<TowerInt, CapExceeded> {
        match (self, other) {
            (TowerInt::Exact(a), TowerInt::Exact(b)) => Ok(TowerInt::exact(a + b, cap)),
            (TowerInt::Saturated(s), TowerInt::Exact(e))
            | (TowerInt::Exact(e), TowerInt::Saturated(s)) => {
                if e.is_zero() {
                    return Ok(TowerInt::Saturated(s.clone()));
                }
                let parity = s.parity.map(|p| p ^ e.bit(0));
                let same_sign = (e.is_negative() && s.sign < 0) || (e.is_positive() && s.sign > 0);
                if same_sign {
                    return Ok(TowerInt::Saturated(Saturated {
                        parity,
                        ..s.clone()
                    }));
                }
                // |s| >= 2^f and |e| < 2^cap <= 2^(f-1) keeps |s + e| >= 2^(f-1).
                if s.floor_bits > cap && e.bits() < s.floor_bits {
                    Ok(TowerInt::Saturated(Saturated {
                        sign: s.sign,
                        floor_bits: s.floor_bits - 1,
                        parity,
                    }))
                } else {
                    Err(CapExceeded {
                        cap,
                        reason: "sum of a saturated and an exact exponent may leave saturation"
                            .into(),
                    })
                }
            }
            (TowerInt::Saturated(a), TowerInt::Saturated(b)) => {
                if a.sign == b.sign {
                    Ok(TowerInt::Saturated(Saturated {
                        sign: a.sign,
                        floor_bits: a.floor_bits.max(b.floor_bits),
                        parity: match (a.parity, b.parity) {
                            (Some(x), Some(y)) => Some(x ^ y),
                            _ => None,
                        },
                    }))
                } else {
                    Err(CapExceeded {
                        cap,
                        reason: "cancellation between two saturated exponents".into(),
                    })
                }
            }
        }
    }

    pub fn sub(&self, other: &TowerInt, cap: u64) -> Result<TowerInt, CapExceeded> {
        self.add(&other.neg(), cap)
    }

    /// `self * 2^shift` for `shift >= 0`.
    pub fn shl(&self, shift: &TowerInt, cap: u64) -> Result<TowerInt, CapExceeded> {
        if shift.signum() < 0 {
            return Err(CapExceeded {
                cap,
                reason: "negative shift".into(),
            });
        }
        if self.is_zero() || shift.is_zero() {
            return Ok(self.clone());
        }
        let sign = self.signum();
        let self_floor = match self {
            TowerInt::Exact(v) => v.bits() - 1,
            TowerInt::Saturated(s) => s.floor_bits,
        };
        match shift {
            TowerInt::Exact(k) => match (self, k.to_u64()) {
                (TowerInt::Exact(v), Some(k)) if v.bits().saturating_add(k) <= cap => {
                    Ok(TowerInt::Exact(v << k))
                }
                (_, k) => Ok(TowerInt::Saturated(Saturated {
                    sign,
                    floor_bits: self_floor.saturating_add(k.unwrap_or(u64::MAX)),
                    parity: Some(false),
                })),
            },
            TowerInt::Saturated(s) => Ok(TowerInt::Saturated(Saturated {
                sign,
                floor_bits: self_floor.saturating_add(s.floor_bits.max(cap)),
                parity: Some(false),
            })),
        }
    }

    /// `self / 2^shift`; the caller guarantees divisibility via
    /// [`TowerInt::two_adic_floor`].
    pub fn shr(&self, shift: u64) -> TowerInt {
        match self {
            TowerInt::Exact(v) => TowerInt::Exact(v >> shift),
            TowerInt::Saturated(s) => TowerInt::Saturated(Saturated {
                sign: s.sign,
                floor_bits: s.floor_bits.saturating_sub(shift),
                parity: None,
            }),
        }
    }

    /// Largest `v` such that `2^v` is known to divide `self`, together with
    /// whether that is the exact 2-adic valuation. Zero is reported as
    /// `(u64::MAX, true)`.
    pub fn two_adic_floor(&self) -> (u64, bool) {
        match self {
            TowerInt::Exact(v) if v.is_zero() => (u64::MAX, true),
            TowerInt::Exact(v) => (v.trailing_zeros().unwrap_or(0), true),
            TowerInt::Saturated(s) => match s.parity {
                Some(true) => (0, true),
                Some(false) => (1, false),
                None => (0, false),
            },
        }
    }

    /// Compares magnitudes; `None` if both are saturated.
    pub fn cmp_abs(&self, other: &TowerInt) -> Option<Ordering> {
        match (self, other) {
            (TowerInt::Exact(a), TowerInt::Exact(b)) => Some(a.magnitude().cmp(b.magnitude())),
            (TowerInt::Exact(_), TowerInt::Saturated(_)) => Some(Ordering::Less),
            (TowerInt::Saturated(_), TowerInt::Exact(_)) => Some(Ordering::Greater),
            (TowerInt::Saturated(_), TowerInt::Saturated(_)) => None,
        }
    }

    pub fn min_abs(&self, other: &TowerInt, cap: u64) -> Result<TowerInt, CapExceeded> {
        match self.cmp_abs(other) {
            Some(Ordering::Greater) => Ok(other.abs()),
            Some(_) => Ok(self.abs()),
            None => Err(CapExceeded {
                cap,
                reason: "comparison of two saturated exponents".into(),
            }),
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, TowerInt::Exact(v) if v.is_one())
    }
}

/// `tower(0, k) = k`, `tower(h, k) = 2^tower(h - 1, k)`.
pub fn tower(h: u32, k: u64, cap: u64) -> TowerInt {
    let mut value = TowerInt::exact(BigInt::from(k), cap);
    for _ in 0..h {
        value = TowerInt::exact(BigInt::one(), cap)
            .shl(&value, cap)
            .expect("non-negative shift");
    }
    value
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(v: i64) -> TowerInt {
        TowerInt::from(v)
    }

    #[test]
    fn tower_values() {
        assert_eq!(tower(0, 5, 4096), e(5));
        assert_eq!(tower(2, 2, 4096), e(16));
        assert_eq!(tower(2, 3, 4096), e(256));
        assert_eq!(tower(1, 0, 4096), e(1));
        match tower(3, 3, 256) {
            TowerInt::Saturated(s) => {
                assert!(s.floor_bits >= 256);
                assert_eq!(s.parity, Some(false));
                assert_eq!(s.sign, 1);
            }
            other => panic!("expected saturation, got {other}"),
        }
        // tower(3, 4) = 2^65536 needs 65537 bits.
        assert!(!tower(3, 4, 4096).is_exact());
        let big = tower(3, 4, 1 << 17);
        assert_eq!(big.as_exact().unwrap().bits(), 65537);
    }

    #[test]
    fn doubling_past_the_cap_saturates_even() {
        let v = TowerInt::exact(BigInt::one() << 10u32, 11);
        let d = v.shl(&e(1), 11).unwrap();
        assert_eq!(
            d,
            TowerInt::Saturated(Saturated {
                sign: 1,
                floor_bits: 11,
                parity: Some(false)
            })
        );
    }

    #[test]
    fn saturated_arithmetic_refuses_to_guess() {
        let s = tower(3, 3, 64);
        assert!(s.add(&s.neg(), 64).is_err());
        assert!(s.add(&s, 64).is_ok());
        assert!(s.min_abs(&s, 64).is_err());
        assert_eq!(s.min_abs(&e(-7), 64).unwrap(), e(7));
        let odd = s.add(&e(1), 64).unwrap();
        assert_eq!(odd.parity(), Some(true));
        assert!(!odd.is_zero());
        // Close to the cap the sum might not stay saturated.
        let edge = TowerInt::exact(BigInt::one() << 64u32, 64);
        assert!(edge
            .add(&TowerInt::exact(-(BigInt::one() << 63u32), 64), 64)
            .is_err());
    }

    #[test]
    fn valuation_and_halving() {
        assert_eq!(e(12).two_adic_floor(), (2, true));
        assert_eq!(e(12).shr(2), e(3));
        assert_eq!(e(-8).shr(3), e(-1));
        assert_eq!(tower(3, 3, 64).two_adic_floor(), (1, false));
        assert_eq!(e(0).two_adic_floor(), (u64::MAX, true));
    }
}
