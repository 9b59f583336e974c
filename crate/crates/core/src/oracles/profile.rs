//! Dehn-function tables and the `w_m` scaling report.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::diagrams::{build_w_diagram, DiagramError};
use crate::families::{g, w_word, FamilyKind, Presentation};
use crate::wordproblem::{is_trivial_g, PnSolver, WpVerdict};
use crate::words::{Letter, Word};

use super::{OracleError, Outcome, Search, SearchCaps};

/// An oracle entry in a report: a number, or why there is none.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleCell {
    Value(usize),
    Skipped(String),
    Absent(String),
}

impl fmt::Display for OracleCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleCell::Value(v) => write!(f, "{v}"),
            OracleCell::Skipped(why) => write!(f, "skipped: {why}"),
            OracleCell::Absent(why) => write!(f, "absent: {why}"),
        }
    }
}

impl Serialize for OracleCell {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            OracleCell::Value(v) => serializer.serialize_u64(*v as u64),
            other => serializer.collect_str(other),
        }
    }
}

/// Rows that render as CSV with a header line and LF endings.
pub trait Table {
    const HEADER: &'static str;
    fn cells(&self) -> Vec<String>;

    fn to_csv(rows: &[Self]) -> String
    where
        Self: Sized,
    {
        let mut out = String::from(Self::HEADER);
        out.push('\n');
        for r in rows {
            out.push_str(&r.cells().join(","));
            out.push('\n');
        }
        out
    }
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingRow {
    pub m: u32,
    pub diagram_area: Option<usize>,
    pub min_area: OracleCell,
    /// `area(m + 1) / area(m)` from the diagram builder.
    pub ratio: Option<f64>,
}

impl Table for ScalingRow {
    const HEADER: &'static str = "m,diagram_area,min_area,ratio";

    fn cells(&self) -> Vec<String> {
        vec![
            self.m.to_string(),
            opt(&self.diagram_area),
            self.min_area.to_string(),
            self.ratio.map(|r| format!("{r:.6}")).unwrap_or_default(),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DehnRow {
    pub length: usize,
    pub words: usize,
    pub trivial: usize,
    pub max_area: Option<usize>,
    /// First word in enumeration order attaining `max_area`.
    pub witness: Option<Word>,
    /// Some trivial word got no filling within caps, so `max_area` is only
    /// a lower bound.
    pub lower_bound: bool,
}

impl Table for DehnRow {
    const HEADER: &'static str = "length,words,trivial,max_area,lower_bound,witness";

    fn cells(&self) -> Vec<String> {
        vec![
            self.length.to_string(),
            self.words.to_string(),
            self.trivial.to_string(),
            opt(&self.max_area),
            self.lower_bound.to_string(),
            self.witness
                .as_ref()
                .map(|w| {
                    w.to_signed()
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .unwrap_or_default(),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Screen {
    Trivial,
    Nontrivial,
    Unknown,
}

/// All freely reduced words of length `len` on `k` generators, ordered by
/// the letter sequence `x1, x1^-1, x2, x2^-1, ...`.
pub fn reduced_words(k: u32, len: usize) -> Vec<Word> {
    let alphabet: Vec<i32> = (1..=k as i32).flat_map(|g| [g, -g]).collect();
    let mut out = Vec::new();
    let mut current: Vec<i32> = Vec::with_capacity(len);
    fn go(alphabet: &[i32], len: usize, current: &mut Vec<i32>, out: &mut Vec<Word>) {
        if current.len() == len {
            out.push(Word::from_letters(
                current
                    .iter()
                    .map(|&x| Letter::from_signed(x).expect("nonzero"))
                    .collect(),
            ));
            return;
        }
        for &l in alphabet {
            if current.last() == Some(&-l) {
                continue;
            }
            current.push(l);
            go(alphabet, len, current, out);
            current.pop();
        }
    }
    go(&alphabet, len, &mut current, &mut out);
    out
}

/// Largest minimal area among trivial words of each length `0..=max_length`.
/// Triviality is screened with the word-problem solvers when the
/// presentation carries a `G` or `P` family tag; `Q` and `T` present the
/// trivial group. Untagged presentations rely on the oracle alone.
pub fn dehn_profile(
    p: &Presentation,
    max_length: usize,
    caps: SearchCaps,
    bit_cap: u64,
    parallel: bool,
) -> Result<Vec<DehnRow>, OracleError> {
    let search = Search::new(p, caps)?;
    let family = p.family();
    let p_solver = match family {
        Some(tag) if tag.tag == FamilyKind::P => {
            Some(PnSolver::new(tag.n, bit_cap).map_err(|e| OracleError::Other(e.to_string()))?)
        }
        _ => None,
    };
    let screen = |w: &Word| -> Screen {
        match family {
            Some(tag) => match tag.tag {
                FamilyKind::G => match is_trivial_g(tag.n, w, bit_cap) {
                    Ok(WpVerdict::Trivial) => Screen::Trivial,
                    Ok(WpVerdict::Nontrivial) => Screen::Nontrivial,
                    _ => Screen::Unknown,
                },
                FamilyKind::P => match p_solver.as_ref().map(|s| s.is_trivial(w)) {
                    Some(Ok(true)) => Screen::Trivial,
                    Some(Ok(false)) => Screen::Nontrivial,
                    _ => Screen::Unknown,
                },
                FamilyKind::Q | FamilyKind::T => Screen::Trivial,
            },
            None => Screen::Unknown,
        }
    };

    let mut rows = Vec::new();
    for length in 0..=max_length {
        let words = reduced_words(p.generator_count() as u32, length);
        let evaluate = |w: &Word| -> Result<(Screen, Option<usize>), OracleError> {
            let s = screen(w);
            if s == Screen::Nontrivial {
                return Ok((s, None));
            }
            Ok((s, search.min_area(w)?.cost()))
        };
        let results: Vec<(Screen, Option<usize>)> = if parallel {
            words.par_iter().map(evaluate).collect::<Result<_, _>>()?
        } else {
            words.iter().map(evaluate).collect::<Result<_, _>>()?
        };
        let mut row = DehnRow {
            length,
            words: words.len(),
            trivial: 0,
            max_area: None,
            witness: None,
            lower_bound: false,
        };
        for (w, (s, area)) in words.iter().zip(results) {
            let trivial = s == Screen::Trivial || area.is_some();
            if !trivial {
                continue;
            }
            row.trivial += 1;
            match area {
                Some(a) if row.max_area.is_none_or(|m| a > m) => {
                    row.max_area = Some(a);
                    row.witness = Some(w.clone());
                }
                Some(_) => {}
                None => row.lower_bound = true,
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Diagram areas for `w_m` against the oracle for `m <= oracle_max_m`.
pub fn scaling_report(
    ms: &[u32],
    caps: SearchCaps,
    oracle_max_m: u32,
    cell_budget: u64,
    parallel: bool,
) -> Result<Vec<ScalingRow>, OracleError> {
    let pres = g(2).expect("G(2)");
    let search = Search::new(&pres, caps)?.parallel(parallel);
    let mut areas: BTreeMap<u32, Option<usize>> = BTreeMap::new();
    let mut area_of = |m: u32| -> Result<Option<usize>, OracleError> {
        if let Some(a) = areas.get(&m) {
            return Ok(*a);
        }
        let a = match build_w_diagram(m, cell_budget) {
            Ok(d) => Some(d.area().map_err(|e| OracleError::Other(e.to_string()))?),
            Err(DiagramError::CellBudget { .. }) => None,
            Err(e) => return Err(OracleError::Other(e.to_string())),
        };
        areas.insert(m, a);
        Ok(a)
    };
    let mut rows = Vec::with_capacity(ms.len());
    for &m in ms {
        let diagram_area = area_of(m)?;
        let next = area_of(m + 1)?;
        let ratio = match (diagram_area, next) {
            (Some(a), Some(b)) if a > 0 => Some(b as f64 / a as f64),
            _ => None,
        };
        let min_area = if m <= oracle_max_m {
            let report = search.min_area(&w_word(m))?;
            match report.outcome {
                Outcome::Found { cost, .. } => OracleCell::Value(cost),
                Outcome::Exhausted => OracleCell::Absent("exhausted within max_word_length".into()),
                Outcome::CapHit(reason) => OracleCell::Absent(reason),
            }
        } else {
            OracleCell::Skipped("caps".into())
        };
        rows.push(ScalingRow {
            m,
            diagram_area,
            min_area,
            ratio,
        });
    }
    Ok(rows)
}
