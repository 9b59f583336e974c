//! Breadth-first search over freely reduced words.
//!
//! Every move inserts one relator (or its inverse) and costs 1, so
//! uniform-cost search is a layered BFS. Children are generated in the order
//! (relator index, sign `+1` before `-1`, position ascending) and layers are
//! processed first in, first out, keeping the first parent that discovers a
//! word. The empty word is therefore reached along the lexicographically
//! smallest minimum-cost move sequence. Parallel expansion computes child
//! lists per chunk and merges them in the same order, so results do not
//! depend on the thread count.

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::families::Presentation;
use crate::words::{Letter, Word};

use super::{Move, NullSequence, OracleError, SearchCaps};

const CHUNK: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Found {
        cost: usize,
        witness: NullSequence,
    },
    /// Every reachable word within the length cap was visited.
    Exhausted,
    /// A cost or state cap stopped the search.
    CapHit(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub outcome: Outcome,
    pub states: usize,
    pub layers: usize,
}

impl SearchReport {
    pub fn cost(&self) -> Option<usize> {
        match &self.outcome {
            Outcome::Found { cost, .. } => Some(*cost),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&NullSequence> {
        match &self.outcome {
            Outcome::Found { witness, .. } => Some(witness),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Step {
    parent: u32,
    relator: u16,
    sign: i8,
    position: u16,
}

/// Relator-insertion search over one presentation.
#[derive(Debug, Clone)]
pub struct Search<'a> {
    presentation: &'a Presentation,
    caps: SearchCaps,
    parallel: bool,
    inserts: Vec<(u16, i8, Vec<i8>)>,
}

fn splice(word: &[i8], position: usize, insert: &[i8], max_len: usize) -> Option<Vec<i8>> {
    let mut out = Vec::with_capacity(word.len() + insert.len());
    out.extend_from_slice(&word[..position]);
    for &l in insert.iter().chain(word[position..].iter()) {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    (out.len() <= max_len).then_some(out)
}

impl<'a> Search<'a> {
    pub fn new(presentation: &'a Presentation, caps: SearchCaps) -> Result<Self, OracleError> {
        caps.validate()?;
        if presentation.generator_count() > i8::MAX as usize {
            return Err(OracleError::Alphabet(presentation.generator_count()));
        }
        let mut inserts = Vec::new();
        for (i, r) in presentation.relators().iter().enumerate() {
            let fwd: Vec<i8> = r.to_signed().iter().map(|&x| x as i8).collect();
            let inv: Vec<i8> = fwd.iter().rev().map(|&x| -x).collect();
            inserts.push((i as u16, 1, fwd));
            inserts.push((i as u16, -1, inv));
        }
        Ok(Search {
            presentation,
            caps,
            parallel: false,
            inserts,
        })
    }

    /// Enables rayon expansion of each BFS layer.
    pub fn parallel(mut self, on: bool) -> Self {
        self.parallel = on;
        self
    }

    pub fn caps(&self) -> SearchCaps {
        self.caps
    }

    fn prepare(&self, w: &Word) -> Result<Vec<i8>, OracleError> {
        self.presentation.check_word(w)?;
        Ok(w.free_reduce()
            .to_signed()
            .iter()
            .map(|&x| x as i8)
            .collect())
    }

    fn children(
        &self,
        word: &[i8],
        max_len: usize,
        seen: &FxHashMap<Box<[i8]>, u32>,
    ) -> Vec<(Step, Vec<i8>)> {
        let mut out = Vec::new();
        for (relator, sign, ins) in &self.inserts {
            for position in 0..=word.len() {
                if let Some(child) = splice(word, position, ins, max_len) {
                    if child.is_empty() || !seen.contains_key(child.as_slice()) {
                        let step = Step {
                            parent: 0,
                            relator: *relator,
                            sign: *sign,
                            position: position as u16,
                        };
                        out.push((step, child));
                    }
                }
            }
        }
        out
    }

    /// Minimum number of relator insertions reducing `w` to the empty word.
    pub fn min_area(&self, w: &Word) -> Result<SearchReport, OracleError> {
        let start = self.prepare(w)?;
        self.run(&start, self.caps.max_word_length)
    }

    /// Minimum peak length over null sequences, found by raising the length
    /// cap from `|w|` until the search succeeds. `exact` is false when a
    /// smaller cap was abandoned on a cost or state cap instead of being
    /// exhausted.
    pub fn fill_length(&self, w: &Word) -> Result<FillReport, OracleError> {
        let start = self.prepare(w)?;
        let mut exact = true;
        let mut tried = Vec::new();
        for cap in start.len()..=self.caps.max_word_length.max(start.len()) {
            let report = self.run(&start, cap)?;
            match report.outcome {
                Outcome::Found { witness, .. } => {
                    return Ok(FillReport {
                        peak: Some(witness.peak),
                        witness: Some(witness),
                        exact,
                        tried,
                    });
                }
                Outcome::Exhausted => tried.push((cap, "exhausted".to_string())),
                Outcome::CapHit(reason) => {
                    exact = false;
                    tried.push((cap, reason));
                }
            }
        }
        Ok(FillReport {
            peak: None,
            witness: None,
            exact,
            tried,
        })
    }

    fn run(&self, start: &[i8], max_len: usize) -> Result<SearchReport, OracleError> {
        let start_word = to_word(start);
        if start.is_empty() {
            let witness = NullSequence::new(start_word, Vec::new(), &[]);
            return Ok(SearchReport {
                outcome: Outcome::Found { cost: 0, witness },
                states: 1,
                layers: 0,
            });
        }
        if start.len() > max_len {
            return Ok(SearchReport {
                outcome: Outcome::CapHit(format!(
                    "start length {} exceeds max_word_length {max_len}",
                    start.len()
                )),
                states: 0,
                layers: 0,
            });
        }
        let mut seen: FxHashMap<Box<[i8]>, u32> = FxHashMap::default();
        let mut steps: Vec<Step> = vec![Step {
            parent: u32::MAX,
            relator: 0,
            sign: 0,
            position: 0,
        }];
        seen.insert(start.into(), 0);
        let mut layer: Vec<(u32, Box<[i8]>)> = vec![(0, start.into())];
        let mut depth = 0;

        while !layer.is_empty() {
            if depth >= self.caps.max_cost {
                return Ok(SearchReport {
                    outcome: Outcome::CapHit(format!("max_cost {} reached", self.caps.max_cost)),
                    states: steps.len(),
                    layers: depth,
                });
            }
            let mut next: Vec<(u32, Box<[i8]>)> = Vec::new();
            for chunk in layer.chunks(CHUNK) {
                let expanded: Vec<Vec<(Step, Vec<i8>)>> = if self.parallel {
                    chunk
                        .par_iter()
                        .map(|(_, w)| self.children(w, max_len, &seen))
                        .collect()
                } else {
                    chunk
                        .iter()
                        .map(|(_, w)| self.children(w, max_len, &seen))
                        .collect()
                };
                for ((parent, _), kids) in chunk.iter().zip(expanded) {
                    for (mut step, child) in kids {
                        step.parent = *parent;
                        if child.is_empty() {
                            let witness = rebuild(
                                &steps,
                                step,
                                start_word.clone(),
                                self.presentation.relators(),
                            );
                            return Ok(SearchReport {
                                outcome: Outcome::Found {
                                    cost: depth + 1,
                                    witness,
                                },
                                states: steps.len(),
                                layers: depth + 1,
                            });
                        }
                        let key: Box<[i8]> = child.into_boxed_slice();
                        if seen.contains_key(&key) {
                            continue;
                        }
                        if steps.len() >= self.caps.max_states {
                            return Ok(SearchReport {
                                outcome: Outcome::CapHit(format!(
                                    "max_states {} reached",
                                    self.caps.max_states
                                )),
                                states: steps.len(),
                                layers: depth,
                            });
                        }
                        let id = steps.len() as u32;
                        steps.push(step);
                        seen.insert(key.clone(), id);
                        next.push((id, key));
                    }
                }
            }
            layer = next;
            depth += 1;
        }
        Ok(SearchReport {
            outcome: Outcome::Exhausted,
            states: steps.len(),
            layers: depth,
        })
    }
}

fn rebuild(steps: &[Step], last: Step, start: Word, relators: &[Word]) -> NullSequence {
    let mut chain = vec![last];
    let mut at = last.parent;
    while steps[at as usize].parent != u32::MAX {
        chain.push(steps[at as usize]);
        at = steps[at as usize].parent;
    }
    chain.reverse();
    let mut moves = Vec::with_capacity(2 * chain.len());
    for s in chain {
        moves.push(Move::InsertRelator {
            relator: s.relator as usize,
            sign: s.sign,
            position: s.position as usize,
        });
        moves.push(Move::FreeReduceAll);
    }
    NullSequence::new(start, moves, relators)
}

fn to_word(letters: &[i8]) -> Word {
    Word::from_letters(
        letters
            .iter()
            .map(|&x| Letter::from_signed(x as i32).expect("nonzero"))
            .collect(),
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FillReport {
    pub peak: Option<usize>,
    pub witness: Option<NullSequence>,
    pub exact: bool,
    /// Length caps that failed, with the reason.
    pub tried: Vec<(usize, String)>,
}
