//! Normal form in BS(1,2) = `< x1, x2 | x2 x1 x2^-1 = x1^2 >`.
//!
//! Every element is uniquely `x2^-p · x1^m · x2^q` with `p, q >= 0` and `m`
//! odd whenever `p > 0` and `q > 0`. The form is maintained under right
//! multiplication by generators, independently of the Britton reducer.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::words::Word;

use super::tower::{CapExceeded, TowerInt};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BsNormalForm {
    pub p: u64,
    pub m: TowerInt,
    pub q: u64,
}

impl BsNormalForm {
    pub fn identity() -> Self {
        BsNormalForm {
            p: 0,
            m: TowerInt::zero(),
            q: 0,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.p == 0 && self.q == 0 && self.m.is_zero()
    }

    /// The normal form spelled as a word (exact exponents only).
    pub fn to_word(&self) -> Option<Word> {
        let m = self.m.to_i64()?;
        Some(
            Word::power(2, -(self.p as i64))
                .concat(&Word::power(1, m))
                .concat(&Word::power(2, self.q as i64)),
        )
    }

    fn mul_letter(&mut self, letter: i32, cap: u64) -> Result<(), CapExceeded> {
        match letter {
            1 | -1 => {
                // x2^q x1^e = x1^(e 2^q) x2^q
                let step =
                    TowerInt::exact(BigInt::one(), cap).shl(&TowerInt::from(self.q as i64), cap)?;
                let step = if letter < 0 { step.neg() } else { step };
                self.m = self.m.add(&step, cap)?;
            }
            2 => self.q += 1,
            -2 if self.q > 0 => self.q -= 1,
            -2 => {
                // x1^m x2^-1 = x2^-1 x1^(2m)
                self.p += 1;
                self.m = self.m.shl(&TowerInt::from(1), cap)?;
            }
            _ => unreachable!("BS(1,2) words use x1 and x2 only"),
        }
        self.normalize(cap)
    }

    fn normalize(&mut self, cap: u64) -> Result<(), CapExceeded> {
        while self.p > 0 && self.q > 0 {
            match self.m.parity() {
                Some(false) => {
                    // x2^-1 x1^(2k) x2 = x1^k
                    self.m = if self.m.is_zero() {
                        TowerInt::zero()
                    } else {
                        self.m.shr(1)
                    };
                    self.p -= 1;
                    self.q -= 1;
                }
                Some(true) => break,
                None => {
                    return Err(CapExceeded {
                        cap,
                        reason: "parity of the x1 exponent was lost".into(),
                    })
                }
            }
        }
        Ok(())
    }
}

/// Normal form of a word over `{x1, x2}`.
pub fn normal_form_bs(w: &Word, cap: u64) -> Result<BsNormalForm, CapExceeded> {
    let mut nf = BsNormalForm::identity();
    for l in w.letters() {
        nf.mul_letter(l.signed(), cap)?;
    }
    Ok(nf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wordproblem::tower::DEFAULT_BIT_CAP;

    fn nf(v: &[i32]) -> BsNormalForm {
        normal_form_bs(&Word::from_signed(v).unwrap(), DEFAULT_BIT_CAP).unwrap()
    }

    fn form(p: u64, m: i64, q: u64) -> BsNormalForm {
        BsNormalForm {
            p,
            m: TowerInt::from(m),
            q,
        }
    }

    #[test]
    fn examples() {
        assert_eq!(nf(&[2, 1, -2]), form(0, 2, 0));
        assert_eq!(nf(&[2, 2, 2, 1, -2, -2, -2]), form(0, 8, 0));
        assert_eq!(nf(&[1, 2, -1]), form(0, -1, 1));
        assert_eq!(nf(&[]), BsNormalForm::identity());
        assert!(nf(&[2, 1, -2, -1, -1]).is_identity());
        assert_eq!(nf(&[-2, 1, 2]), form(1, 1, 1));
        assert_eq!(nf(&[-2, 1, 1, 2]), form(0, 1, 0));
    }

    #[test]
    fn round_trip_through_word() {
        let f = nf(&[1, 2, -1, -2, -2, 1]);
        let again = normal_form_bs(&f.to_word().unwrap(), DEFAULT_BIT_CAP).unwrap();
        assert_eq!(f, again);
    }
}
