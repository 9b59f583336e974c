//! Word problems in BS(1,2), `G(n)` and `P(n)`.

mod bs;
mod gn;
mod pn;
mod tower;

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::families::{t_index, FamilyError};
use crate::words::{Word, WordError};

pub use bs::{normal_form_bs, BsNormalForm};
pub use gn::{GnReducer, Part, Reduced};
pub use pn::{z_certificate, CertStep, Factor, Justification, PnSolver, Source, ZCertificate};
pub use tower::{tower, CapExceeded, Saturated, TowerInt, DEFAULT_BIT_CAP};

#[derive(Debug, Error)]
pub enum WpError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Undecided(#[from] CapExceeded),
    #[error("certificate rejected: {0}")]
    Certificate(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WpVerdict {
    Trivial,
    Nontrivial,
    UndecidedAtCap(String),
}

impl fmt::Display for WpVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WpVerdict::Trivial => write!(f, "trivial"),
            WpVerdict::Nontrivial => write!(f, "nontrivial"),
            WpVerdict::UndecidedAtCap(reason) => write!(f, "undecided({reason})"),
        }
    }
}

impl Serialize for WpVerdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn check_alphabet(w: &Word, size: u32) -> Result<(), WordError> {
    if w.max_generator() > size {
        Err(WordError::OutsideAlphabet {
            letter: w.max_generator() as i32,
            size: size as usize,
        })
    } else {
        Ok(())
    }
}

/// Decides `w = e` in `G(n)`.
pub fn is_trivial_g(n: u32, w: &Word, cap: u64) -> Result<WpVerdict, WpError> {
    if n < 1 {
        return Err(FamilyError::Parameter {
            family: 'G',
            n,
            min: 1,
        }
        .into());
    }
    check_alphabet(w, n)?;
    Ok(match GnReducer::new(n, cap).reduce(w) {
        Ok(r) if r.is_identity() => WpVerdict::Trivial,
        Ok(_) => WpVerdict::Nontrivial,
        Err(e) => WpVerdict::UndecidedAtCap(e.reason),
    })
}

/// If `w = x1^e` in `G(n)`, returns `e`. Saturation surfaces as an error.
pub fn is_power_of_x1(n: u32, w: &Word, cap: u64) -> Result<Option<TowerInt>, WpError> {
    check_alphabet(w, n)?;
    Ok(GnReducer::new(n, cap).power_of_x1(w)?)
}

/// Decides `w = e` in `P(n)`; the certificate for `n` is built and replayed
/// first.
pub fn is_trivial_p(n: u32, w: &Word, cap: u64) -> Result<bool, WpError> {
    check_alphabet(w, t_index(n))?;
    PnSolver::new(n, cap)?.is_trivial(w)
}
