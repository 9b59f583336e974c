//! Brute-force ground truth at desk scale: algebraic area, filling length,
//! Dehn-function tables and scaling reports.

mod profile;
mod search;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::families::Presentation;
use crate::words::{Word, WordError};

pub use profile::{
    dehn_profile, reduced_words, scaling_report, DehnRow, OracleCell, ScalingRow, Table,
};
pub use search::{FillReport, Outcome, Search, SearchReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("search caps must be positive: {0}")]
    Caps(&'static str),
    #[error("alphabet of {0} generators is too large for the search encoding")]
    Alphabet(usize),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("null sequence does not replay: {0}")]
    Replay(String),
    #[error("{0}")]
    Other(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchCaps {
    pub max_word_length: usize,
    pub max_cost: usize,
    pub max_states: usize,
}

impl Default for SearchCaps {
    fn default() -> Self {
        SearchCaps {
            max_word_length: 20,
            max_cost: 32,
            max_states: 2_000_000,
        }
    }
}

impl SearchCaps {
    pub fn validate(&self) -> Result<(), OracleError> {
        if self.max_word_length == 0 {
            return Err(OracleError::Caps("max_word_length"));
        }
        if self.max_cost == 0 {
            return Err(OracleError::Caps("max_cost"));
        }
        if self.max_states == 0 {
            return Err(OracleError::Caps("max_states"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Move {
    /// Splice `relator^sign` in front of letter `position`.
    InsertRelator {
        relator: usize,
        sign: i8,
        position: usize,
    },
    FreeReduceAll,
}

/// A replayable certificate that `start` is trivial. `cost` counts relator
/// insertions; `peak` is the largest freely reduced length along the way.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NullSequence {
    pub start: Word,
    pub cost: usize,
    pub peak: usize,
    pub moves: Vec<Move>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReplayStats {
    pub cost: usize,
    pub peak: usize,
}

/// Applies `moves` to `start`, returning (cost, peak, final word).
fn simulate(
    start: &Word,
    moves: &[Move],
    relators: &[Word],
) -> Result<(usize, usize, Word), String> {
    let mut current = start.free_reduce().into_letters();
    let mut reduced = true;
    let mut peak = current.len();
    let mut cost = 0;
    for (k, m) in moves.iter().enumerate() {
        match *m {
            Move::InsertRelator {
                relator,
                sign,
                position,
            } => {
                let r = relators
                    .get(relator)
                    .ok_or_else(|| format!("move {k}: no relator {relator}"))?;
                let ins = match sign {
                    1 => r.clone(),
                    -1 => r.inverse(),
                    s => return Err(format!("move {k}: sign {s}")),
                };
                if position > current.len() {
                    return Err(format!(
                        "move {k}: position {position} past length {}",
                        current.len()
                    ));
                }
                current.splice(position..position, ins.letters().iter().copied());
                reduced = false;
                cost += 1;
            }
            Move::FreeReduceAll => {
                current = Word::from_letters(current).free_reduce().into_letters();
                reduced = true;
                peak = peak.max(current.len());
            }
        }
    }
    let mut last = Word::from_letters(current);
    if !reduced {
        last = last.free_reduce();
        peak = peak.max(last.len());
    }
    Ok((cost, peak, last))
}

impl NullSequence {
    /// Wraps moves produced by the search, measuring cost and peak.
    pub(crate) fn new(start: Word, moves: Vec<Move>, relators: &[Word]) -> Self {
        let (cost, peak, _) = simulate(&start, &moves, relators).expect("search emits valid moves");
        NullSequence {
            start,
            cost,
            peak,
            moves,
        }
    }

    /// Replays against `p`, checking every move, the final empty word and
    /// the recorded cost and peak.
    pub fn replay(&self, p: &Presentation) -> Result<ReplayStats, OracleError> {
        p.check_word(&self.start)?;
        let (cost, peak, last) =
            simulate(&self.start, &self.moves, p.relators()).map_err(OracleError::Replay)?;
        if !last.is_empty() {
            return Err(OracleError::Replay(format!(
                "ends at {last}, not the empty word"
            )));
        }
        if cost != self.cost || peak != self.peak {
            return Err(OracleError::Replay(format!(
                "recorded cost {} / peak {}, replay gives {cost} / {peak}",
                self.cost, self.peak
            )));
        }
        Ok(ReplayStats { cost, peak })
    }
}

/// Minimum number of relator insertions taking `w` to the empty word within
/// `caps`, with the lexicographically smallest witness. `None` means no
/// filling was found, never that `w` is nontrivial.
pub fn min_area(
    p: &Presentation,
    w: &Word,
    caps: SearchCaps,
) -> Result<Option<(usize, NullSequence)>, OracleError> {
    let report = Search::new(p, caps)?.min_area(w)?;
    Ok(match report.outcome {
        Outcome::Found { cost, witness } => Some((cost, witness)),
        _ => None,
    })
}

/// Minimum peak length over null sequences of `w` within `caps`.
pub fn fill_length(
    p: &Presentation,
    w: &Word,
    caps: SearchCaps,
) -> Result<Option<(usize, NullSequence)>, OracleError> {
    let report = Search::new(p, caps)?.fill_length(w)?;
    Ok(report.witness.map(|s| (s.peak, s)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{doubling_relator, g, q, w_word};

    fn caps(len: usize) -> SearchCaps {
        SearchCaps {
            max_word_length: len,
            max_cost: 32,
            max_states: 1_000_000,
        }
    }

    #[test]
    fn small_areas() {
        let g2 = g(2).unwrap();
        assert_eq!(
            min_area(&g2, &Word::empty(), caps(8)).unwrap().unwrap().0,
            0
        );
        assert_eq!(
            min_area(&g2, &doubling_relator(1), caps(8))
                .unwrap()
                .unwrap()
                .0,
            1
        );
        let (a1, s1) = min_area(&g2, &w_word(1), caps(12)).unwrap().unwrap();
        assert_eq!(a1, 2);
        assert_eq!(s1.replay(&g2).unwrap().cost, 2);
        let (a2, s2) = min_area(&g2, &w_word(2), caps(14)).unwrap().unwrap();
        assert_eq!(a2, 6);
        s2.replay(&g2).unwrap();
    }

    #[test]
    fn nontrivial_word_is_absent_not_refuted() {
        let g2 = g(2).unwrap();
        let report = Search::new(&g2, caps(10))
            .unwrap()
            .min_area(&Word::generator(1))
            .unwrap();
        assert_eq!(report.outcome, Outcome::Exhausted);
        let report = Search::new(
            &g2,
            SearchCaps {
                max_cost: 2,
                ..caps(14)
            },
        )
        .unwrap()
        .min_area(&w_word(2))
        .unwrap();
        assert!(matches!(report.outcome, Outcome::CapHit(_)));
    }

    #[test]
    fn fill_lengths() {
        let g2 = g(2).unwrap();
        assert_eq!(
            fill_length(&g2, &Word::empty(), caps(8))
                .unwrap()
                .unwrap()
                .0,
            0
        );
        assert_eq!(
            fill_length(&g2, &doubling_relator(1), caps(8))
                .unwrap()
                .unwrap()
                .0,
            5
        );
        let (peak, seq) = fill_length(&g2, &w_word(1), caps(12)).unwrap().unwrap();
        assert_eq!(peak, 8);
        assert_eq!(seq.replay(&g2).unwrap().peak, 8);
    }

    #[test]
    fn tampered_witness_fails_replay() {
        let g2 = g(2).unwrap();
        let (_, mut seq) = min_area(&g2, &w_word(1), caps(12)).unwrap().unwrap();
        seq.cost += 1;
        assert!(seq.replay(&g2).is_err());
        let (_, mut seq) = min_area(&g2, &w_word(1), caps(12)).unwrap().unwrap();
        if let Move::InsertRelator { sign, .. } = &mut seq.moves[0] {
            *sign = -*sign;
        }
        assert!(seq.replay(&g2).is_err());
    }

    #[test]
    fn parallel_matches_serial() {
        let g2 = g(2).unwrap();
        let a = Search::new(&g2, caps(16))
            .unwrap()
            .min_area(&w_word(2))
            .unwrap();
        let b = Search::new(&g2, caps(16))
            .unwrap()
            .parallel(true)
            .min_area(&w_word(2))
            .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn larger_length_cap_never_raises_the_minimum() {
        let g2 = g(2).unwrap();
        let mut last = usize::MAX;
        for len in [12, 14, 16] {
            let a = min_area(&g2, &w_word(2), caps(len)).unwrap().unwrap().0;
            assert!(a <= last);
            last = a;
        }
    }

    #[test]
    fn caps_and_alphabet_are_checked() {
        let g2 = g(2).unwrap();
        assert!(Search::new(
            &g2,
            SearchCaps {
                max_states: 0,
                ..caps(8)
            }
        )
        .is_err());
        assert!(min_area(&g2, &Word::generator(3), caps(8)).is_err());
    }

    #[test]
    fn trivial_group_words_are_fillable() {
        let q2 = q(2).unwrap();
        let (a, _) = min_area(&q2, &Word::generator(3), caps(6))
            .unwrap()
            .unwrap();
        assert_eq!(a, 1);
    }

    #[test]
    fn profile_rows() {
        let g2 = g(2).unwrap();
        let rows = dehn_profile(&g2, 5, caps(10), 4096, false).unwrap();
        assert_eq!(rows[0].max_area, Some(0));
        assert_eq!(rows[1].trivial, 0);
        assert!(rows[5].max_area.unwrap() >= 1);
        assert!(rows.iter().all(|r| !r.lower_bound));
        assert_eq!(DehnRow::to_csv(&rows).lines().next(), Some(DehnRow::HEADER));
    }

    #[test]
    fn scaling_rows() {
        let rows = scaling_report(&[1, 2, 10], caps(14), 2, 1 << 20, false).unwrap();
        assert_eq!(rows[0].diagram_area, Some(2));
        assert_eq!(rows[0].min_area, OracleCell::Value(2));
        assert_eq!(rows[0].ratio, Some(3.0));
        assert_eq!(rows[1].min_area, OracleCell::Value(6));
        assert_eq!(rows[2].diagram_area, Some(2046));
        assert_eq!(rows[2].min_area, OracleCell::Skipped("caps".into()));
        assert!(scaling_report(&[], caps(14), 2, 1 << 20, false)
            .unwrap()
            .is_empty());
        let csv = ScalingRow::to_csv(&rows);
        assert!(csv.starts_with("m,diagram_area,min_area,ratio\n1,2,2,3.000000\n"));
        assert!(csv.contains("10,2046,skipped: caps,"));
    }
}
