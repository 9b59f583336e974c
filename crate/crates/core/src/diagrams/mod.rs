//! Van Kampen diagrams as combinatorial maps.
//!
//! Each undirected edge is a pair of twin darts. `next` is the rotation
//! `sigma` at the tail vertex of a dart and the face permutation is
//! `phi(d) = next(twin(d))`: after walking `d`, turn to the following dart
//! around its head. Inner faces and the outer face are the `phi`-orbits.
//! All inner faces read their relator in the same rotational sense, and the
//! boundary word is read in that sense too, which on the outer orbit means
//! walking `phi^-1` and reading the twin labels.

mod annuli;
mod build;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::families::Presentation;
use crate::words::{Letter, Word};

pub use annuli::{t_annuli, AnnulusError, TAnnulus};
pub use build::{
    build_power_diagram, build_w_diagram, build_xn_diagram, single_cell_diagram,
    DEFAULT_CELL_BUDGET,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("diagram needs {needed} cells, over the cell budget of {budget}")]
    CellBudget { needed: u64, budget: u64 },
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("diagram is invalid: {0}")]
    Invalid(String),
    #[error("inconsistent gluing: {0}")]
    Gluing(String),
}

/// A half-edge. `label` is the letter read when walking the dart forwards.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dart {
    pub id: usize,
    pub twin: usize,
    pub next: usize,
    pub label: i32,
}

/// An inner face: its darts in `phi` order starting from the smallest id,
/// and where to start reading to obtain `relator^sign`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub darts: Vec<usize>,
    pub relator: usize,
    pub sign: i8,
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanKampenDiagram {
    pub darts: Vec<Dart>,
    pub outer_face_dart: Option<usize>,
    pub base_dart: Option<usize>,
    pub faces: Vec<Face>,
    pub presentation: Presentation,
    pub boundary: Word,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Passed,
    Failed,
    Skipped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Offender {
    Dart(usize),
    Face(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub offender: Option<Offender>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub checks: Vec<Check>,
    pub vertices: Option<usize>,
    pub edges: usize,
    pub faces: usize,
    pub euler_characteristic: Option<i64>,
    pub boundary_read: Option<Word>,
}

impl ValidationReport {
    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.status != CheckStatus::Passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

type CheckResult = Result<(), (Option<Offender>, String)>;

struct Recorder {
    checks: Vec<Check>,
}

impl Recorder {
    fn record(&mut self, name: &'static str, result: CheckResult) -> bool {
        let ok = result.is_ok();
        let (offender, detail) = match result {
            Ok(()) => (None, None),
            Err((o, d)) => (o, Some(d)),
        };
        self.checks.push(Check {
            name,
            status: if ok {
                CheckStatus::Passed
            } else {
                CheckStatus::Failed
            },
            offender,
            detail,
        });
        ok
    }

    fn skip(&mut self, name: &'static str, because: &str) {
        self.checks.push(Check {
            name,
            status: CheckStatus::Skipped,
            offender: None,
            detail: Some(format!("needs {because}")),
        });
    }
}

pub const CHECK_NAMES: [&str; 10] = [
    "dart-ids",
    "twin-involution",
    "rotation-permutation",
    "twin-labels",
    "alphabet",
    "faces",
    "connected",
    "euler",
    "face-labels",
    "boundary",
];

impl VanKampenDiagram {
    /// The diagram with one vertex and nothing else; it fills the empty word.
    pub fn empty(presentation: Presentation) -> Self {
        VanKampenDiagram {
            darts: Vec::new(),
            outer_face_dart: None,
            base_dart: None,
            faces: Vec::new(),
            presentation,
            boundary: Word::empty(),
        }
    }

    fn phi(&self, d: usize) -> usize {
        self.darts[self.darts[d].twin].next
    }

    /// Runs every check; never panics on malformed input.
    pub fn validate(&self) -> ValidationReport {
        let n = self.darts.len();
        let mut rec = Recorder { checks: Vec::new() };

        let ids_ok = rec.record("dart-ids", self.check_ids());
        let twin_ok = rec.record("twin-involution", self.check_twins());
        let next_ok = rec.record("rotation-permutation", self.check_rotation());
        let structure = ids_ok && twin_ok && next_ok;

        if twin_ok {
            rec.record("twin-labels", self.check_twin_labels());
        } else {
            rec.skip("twin-labels", "twin-involution");
        }
        rec.record("alphabet", self.check_alphabet());

        let mut vertices = None;
        let mut euler = None;
        let mut boundary_read = None;
        if structure {
            let faces_ok = rec.record("faces", self.check_faces());
            rec.record("connected", self.check_connected());
            let v = self.vertex_count();
            let chi = v as i64 - (n / 2) as i64 + self.faces.len() as i64 + 1;
            vertices = Some(v);
            euler = Some(chi);
            rec.record(
                "euler",
                if chi == 2 {
                    Ok(())
                } else {
                    Err((
                        None,
                        format!(
                            "V - E + F = {v} - {} + {} = {chi}",
                            n / 2,
                            self.faces.len() + 1
                        ),
                    ))
                },
            );
            if faces_ok {
                rec.record("face-labels", self.check_face_labels());
                let read = self.read_boundary();
                let ok = read == self.boundary.free_reduce();
                let detail = format!("read {read}, declared {}", self.boundary);
                boundary_read = Some(read);
                rec.record(
                    "boundary",
                    if ok {
                        Ok(())
                    } else {
                        Err((self.base_dart.map(Offender::Dart), detail))
                    },
                );
            } else {
                rec.skip("face-labels", "faces");
                rec.skip("boundary", "faces");
            }
        } else {
            for name in ["faces", "connected", "euler", "face-labels", "boundary"] {
                rec.skip(name, "a well-formed dart structure");
            }
        }

        let valid = rec.checks.iter().all(|c| c.status == CheckStatus::Passed);
        ValidationReport {
            valid,
            checks: rec.checks,
            vertices,
            edges: n / 2,
            faces: self.faces.len() + 1,
            euler_characteristic: euler,
            boundary_read,
        }
    }

    fn check_ids(&self) -> CheckResult {
        match self.darts.iter().enumerate().find(|(i, d)| d.id != *i) {
            Some((i, d)) => Err((
                Some(Offender::Dart(i)),
                format!("dart at position {i} has id {}", d.id),
            )),
            None => Ok(()),
        }
    }

    fn check_twins(&self) -> CheckResult {
        let n = self.darts.len();
        for (i, d) in self.darts.iter().enumerate() {
            let bad = d.twin >= n || d.twin == i || self.darts[d.twin].twin != i;
            if bad {
                return Err((
                    Some(Offender::Dart(i)),
                    format!("twin {} of dart {i} is not an involution partner", d.twin),
                ));
            }
        }
        Ok(())
    }

    fn check_rotation(&self) -> CheckResult {
        let n = self.darts.len();
        let mut hit = vec![false; n];
        for (i, d) in self.darts.iter().enumerate() {
            if d.next >= n || std::mem::replace(&mut hit[d.next], true) {
                return Err((
                    Some(Offender::Dart(i)),
                    format!("next {} of dart {i} breaks the permutation", d.next),
                ));
            }
        }
        Ok(())
    }

    fn check_twin_labels(&self) -> CheckResult {
        for (i, d) in self.darts.iter().enumerate() {
            if d.label == 0 || self.darts[d.twin].label != -d.label {
                return Err((
                    Some(Offender::Dart(i)),
                    format!(
                        "dart {i} label {} vs twin label {}",
                        d.label, self.darts[d.twin].label
                    ),
                ));
            }
        }
        Ok(())
    }

    fn check_alphabet(&self) -> CheckResult {
        let size = self.presentation.generator_count() as i64;
        for (i, d) in self.darts.iter().enumerate() {
            if d.label == 0 || (d.label as i64).abs() > size {
                return Err((
                    Some(Offender::Dart(i)),
                    format!("label {} outside {size} generators", d.label),
                ));
            }
        }
        if let Err(e) = self.presentation.check_word(&self.boundary) {
            return Err((None, format!("declared boundary: {e}")));
        }
        Ok(())
    }

    /// Face records are `phi`-orbits, disjoint from each other and from the
    /// outer orbit, and together with it they cover every dart.
    fn check_faces(&self) -> CheckResult {
        let n = self.darts.len();
        let mut owner: Vec<Option<usize>> = vec![None; n];
        for (fi, face) in self.faces.iter().enumerate() {
            let err = |msg: String| Err((Some(Offender::Face(fi)), msg));
            if face.darts.is_empty() {
                return err(format!("face {fi} has no darts"));
            }
            for (k, &d) in face.darts.iter().enumerate() {
                if d >= n {
                    return err(format!("face {fi} lists missing dart {d}"));
                }
                if let Some(other) = owner[d] {
                    return err(format!("dart {d} is in faces {other} and {fi}"));
                }
                owner[d] = Some(fi);
                let want = face.darts[(k + 1) % face.darts.len()];
                if self.phi(d) != want {
                    return err(format!("face {fi} is not a face orbit at dart {d}"));
                }
            }
        }
        if n == 0 {
            return match (self.outer_face_dart, self.base_dart) {
                (None, None) => Ok(()),
                _ => Err((None, "empty diagram names an outer or base dart".into())),
            };
        }
        let (Some(outer), Some(base)) = (self.outer_face_dart, self.base_dart) else {
            return Err((None, "outer face dart and base dart are required".into()));
        };
        if outer >= n || base >= n {
            return Err((None, "outer or base dart out of range".into()));
        }
        if let Some(fi) = owner[outer] {
            return Err((
                Some(Offender::Face(fi)),
                format!("outer face dart {outer} lies in inner face {fi}"),
            ));
        }
        let mut in_outer = vec![false; n];
        let mut d = outer;
        loop {
            in_outer[d] = true;
            d = self.phi(d);
            if d == outer {
                break;
            }
        }
        if !in_outer[base] {
            return Err((
                Some(Offender::Dart(base)),
                "base dart is not on the outer face".into(),
            ));
        }
        match (0..n).find(|&d| owner[d].is_none() && !in_outer[d]) {
            Some(d) => Err((
                Some(Offender::Dart(d)),
                format!("dart {d} is in no listed face"),
            )),
            None => Ok(()),
        }
    }

    fn check_connected(&self) -> CheckResult {
        let n = self.darts.len();
        if n == 0 {
            return Ok(());
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(d) = stack.pop() {
            for e in [self.darts[d].twin, self.darts[d].next] {
                if !seen[e] {
                    seen[e] = true;
                    stack.push(e);
                }
            }
        }
        match seen.iter().position(|s| !s) {
            Some(d) => Err((
                Some(Offender::Dart(d)),
                format!("dart {d} is disconnected from dart 0"),
            )),
            None => Ok(()),
        }
    }

    fn vertex_count(&self) -> usize {
        let n = self.darts.len();
        if n == 0 {
            return 1;
        }
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                d = self.darts[d].next;
            }
        }
        count
    }

    fn check_face_labels(&self) -> CheckResult {
        let relators = self.presentation.relators();
        for (fi, face) in self.faces.iter().enumerate() {
            let err = |msg: String| Err((Some(Offender::Face(fi)), msg));
            let Some(r) = relators.get(face.relator) else {
                return err(format!(
                    "face {fi} cites relator {} of {}",
                    face.relator,
                    relators.len()
                ));
            };
            let expected = match face.sign {
                1 => r.clone(),
                -1 => r.inverse(),
                s => return err(format!("face {fi} has sign {s}")),
            };
            let len = face.darts.len();
            if face.offset >= len {
                return err(format!("face {fi} offset {} >= length {len}", face.offset));
            }
            let read: Vec<i32> = (0..len)
                .map(|k| self.darts[face.darts[(face.offset + k) % len]].label)
                .collect();
            if read != expected.to_signed() {
                return err(format!(
                    "face {fi} reads {read:?}, expected {:?}",
                    expected.to_signed()
                ));
            }
        }
        Ok(())
    }

    /// Reads the outer face from the base dart; assumes the face check passed.
    fn read_boundary(&self) -> Word {
        let Some(base) = self.base_dart else {
            return Word::empty();
        };
        let n = self.darts.len();
        let mut phi_inv = vec![0; n];
        for d in 0..n {
            phi_inv[self.phi(d)] = d;
        }
        let mut letters = Vec::new();
        let mut d = base;
        loop {
            letters.push(Letter::from_signed(-self.darts[d].label).unwrap_or(Letter::pos(1)));
            d = phi_inv[d];
            if d == base {
                break;
            }
        }
        Word::from_letters(letters).free_reduce()
    }

    fn require_valid(&self) -> Result<ValidationReport, DiagramError> {
        let report = self.validate();
        match report.first_failure() {
            None => Ok(report),
            Some(c) => Err(DiagramError::Invalid(format!(
                "{}: {}",
                c.name,
                c.detail.clone().unwrap_or_default()
            ))),
        }
    }

    /// Number of inner faces.
    pub fn area(&self) -> Result<usize, DiagramError> {
        self.require_valid()?;
        Ok(self.faces.len())
    }

    /// The freely reduced word read around the outer face from the base dart.
    pub fn boundary_word(&self) -> Result<Word, DiagramError> {
        self.require_valid()?;
        Ok(self.read_boundary())
    }

    pub fn euler_characteristic(&self) -> Result<i64, DiagramError> {
        let report = self.require_valid()?;
        Ok(report.euler_characteristic.unwrap_or(2))
    }

    /// True when the diagram is valid and its boundary reads `w`.
    pub fn is_valid_for(&self, w: &Word) -> bool {
        let report = self.validate();
        report.valid && report.boundary_read.as_ref() == Some(&w.free_reduce())
    }
}
