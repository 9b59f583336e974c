//! Builders for the explicit fillings.
//!
//! Builders work on a [`Sketch`]: a list of labelled edges plus faces given
//! as sequences of edge sides. Each face lists its sides in reading order,
//! and every edge side belongs to at most one face. `finish` closes the
//! sketch with the outer face, whose sides are exactly the sides not claimed
//! by inner faces, and derives the rotation system from the face cycles.
//!
//! Layout of the power diagram `D_m` (boundary `x2^m x1 x2^-m x1^-2^m`):
//! a corridor of `2^(m-1)` cells turns the bottom path `x1^(2^m)` into
//! `x2 x1^(2^(m-1)) x2^-1`, and `D_(m-1)` sits on the corridor's top path.

use crate::families::{g, p, t_index, w_word, Presentation};
use crate::words::{Letter, Word};

use super::{Dart, DiagramError, Face, VanKampenDiagram};

pub const DEFAULT_CELL_BUDGET: u64 = 1 << 20;

/// One side of an edge; `forward` reads the edge label, otherwise its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Side {
    edge: usize,
    forward: bool,
}

impl Side {
    fn fwd(edge: usize) -> Self {
        Side {
            edge,
            forward: true,
        }
    }

    fn back(edge: usize) -> Self {
        Side {
            edge,
            forward: false,
        }
    }

    fn flip(self) -> Self {
        Side {
            edge: self.edge,
            forward: !self.forward,
        }
    }

    fn dart(self) -> usize {
        2 * self.edge + usize::from(!self.forward)
    }
}

fn reverse_flip(path: &[Side]) -> Vec<Side> {
    path.iter().rev().map(|s| s.flip()).collect()
}

struct FaceSpec {
    sides: Vec<Side>,
    relator: usize,
    sign: i8,
}

#[derive(Default)]
struct Sketch {
    labels: Vec<i32>,
    faces: Vec<FaceSpec>,
}

impl Sketch {
    fn edge(&mut self, label: i32) -> usize {
        self.labels.push(label);
        self.labels.len() - 1
    }

    fn edges(&mut self, label: i32, count: usize) -> Vec<usize> {
        (0..count).map(|_| self.edge(label)).collect()
    }

    fn face(&mut self, sides: Vec<Side>, relator: usize, sign: i8) {
        self.faces.push(FaceSpec {
            sides,
            relator,
            sign,
        });
    }

    /// Reflects every face added since `mark`: each now reads the inverse
    /// relator along the twin darts.
    fn mirror_since(&mut self, mark: usize) {
        for f in &mut self.faces[mark..] {
            f.sides = reverse_flip(&f.sides);
            f.sign = -f.sign;
        }
    }

    /// `boundary` lists the inner-face sides along the boundary, in reading
    /// order; the outer face takes their twins in reverse.
    fn finish(
        self,
        boundary: &[Side],
        presentation: Presentation,
        word: Word,
    ) -> Result<VanKampenDiagram, DiagramError> {
        let n = 2 * self.labels.len();
        if n == 0 {
            return Ok(VanKampenDiagram::empty(presentation));
        }
        if boundary.is_empty() {
            return Err(DiagramError::Gluing("edges but no boundary path".into()));
        }
        let outer = reverse_flip(boundary);
        let mut phi = vec![usize::MAX; n];
        let cycles = self
            .faces
            .iter()
            .map(|f| f.sides.as_slice())
            .chain(std::iter::once(outer.as_slice()));
        for cycle in cycles {
            for (k, s) in cycle.iter().enumerate() {
                let d = s.dart();
                if phi[d] != usize::MAX {
                    return Err(DiagramError::Gluing(format!("dart {d} used twice")));
                }
                phi[d] = cycle[(k + 1) % cycle.len()].dart();
            }
        }
        if let Some(d) = phi.iter().position(|&x| x == usize::MAX) {
            return Err(DiagramError::Gluing(format!("dart {d} belongs to no face")));
        }
        let darts = (0..n)
            .map(|d| Dart {
                id: d,
                twin: d ^ 1,
                next: phi[d ^ 1],
                label: if d % 2 == 0 {
                    self.labels[d / 2]
                } else {
                    -self.labels[d / 2]
                },
            })
            .collect();
        let faces = self
            .faces
            .iter()
            .map(|f| {
                let ids: Vec<usize> = f.sides.iter().map(|s| s.dart()).collect();
                let len = ids.len();
                let rot = (0..len).min_by_key(|&k| ids[k]).unwrap_or(0);
                Face {
                    darts: (0..len).map(|j| ids[(j + rot) % len]).collect(),
                    relator: f.relator,
                    sign: f.sign,
                    offset: (len - rot) % len,
                }
            })
            .collect();
        Ok(VanKampenDiagram {
            darts,
            outer_face_dart: outer.iter().map(|s| s.dart()).min(),
            base_dart: Some(boundary[0].flip().dart()),
            faces,
            presentation,
            boundary: word,
        })
    }
}

/// Fills `x2^m x1 x2^-m = x1^(2^m)` on top of the given bottom `x1` edges,
/// returning the top path. Cells use relator `relator` of a presentation
/// whose first two generators are `x1`, `x2`.
fn power_into(sk: &mut Sketch, m: u32, bottom: &[usize], relator: usize) -> Vec<Side> {
    let k = bottom.len() / 2;
    let verticals = sk.edges(2, k + 1);
    let tops = sk.edges(1, k);
    for j in 0..k {
        // x2 x1 x2^-1 x1^-1 x1^-1
        sk.face(
            vec![
                Side::fwd(verticals[j]),
                Side::fwd(tops[j]),
                Side::back(verticals[j + 1]),
                Side::back(bottom[2 * j + 1]),
                Side::back(bottom[2 * j]),
            ],
            relator,
            1,
        );
    }
    let middle = if m == 1 {
        vec![Side::fwd(tops[0])]
    } else {
        power_into(sk, m - 1, &tops, relator)
    };
    let mut top = vec![Side::fwd(verticals[0])];
    top.extend(middle);
    top.push(Side::back(verticals[k]));
    top
}

/// Fills `w_m` with two copies of the power diagram on a shared line of
/// `2^m + 1` edges, the second copy reflected below the line.
fn w_into(sk: &mut Sketch, m: u32, relator: usize) -> Vec<Side> {
    let k = 1usize << m;
    let line = sk.edges(1, k + 1);
    let upper = power_into(sk, m, &line[..k], relator);
    let mark = sk.faces.len();
    let lower = power_into(sk, m, &line[1..], relator);
    sk.mirror_since(mark);
    let mut path = upper;
    path.push(Side::fwd(line[k]));
    path.extend(reverse_flip(&lower));
    path.push(Side::back(line[0]));
    path
}

fn budget_check(needed: u64, budget: u64) -> Result<(), DiagramError> {
    if needed > budget {
        Err(DiagramError::CellBudget { needed, budget })
    } else {
        Ok(())
    }
}

fn check_m(m: u32) -> Result<(), DiagramError> {
    if m == 0 || m > 40 {
        return Err(DiagramError::Parameter(format!(
            "m must be in 1..=40, got {m}"
        )));
    }
    Ok(())
}

/// Filling of `x2^m x1 x2^-m x1^-(2^m)` over `G(2)` with `2^m - 1` cells.
pub fn build_power_diagram(m: u32, cell_budget: u64) -> Result<VanKampenDiagram, DiagramError> {
    check_m(m)?;
    budget_check((1u64 << m) - 1, cell_budget)?;
    let mut sk = Sketch::default();
    let bottom = sk.edges(1, 1 << m);
    let mut path = power_into(&mut sk, m, &bottom, 0);
    path.extend(bottom.iter().rev().map(|&e| Side::back(e)));
    let word = Word::power(2, m as i64)
        .concat(&Word::generator(1))
        .concat(&Word::power(2, -(m as i64)))
        .concat(&Word::power(1, -(1i64 << m)));
    sk.finish(&path, g(2).expect("G(2)"), word)
}

/// Filling of `w_m` over `G(2)` with `2 (2^m - 1)` cells.
pub fn build_w_diagram(m: u32, cell_budget: u64) -> Result<VanKampenDiagram, DiagramError> {
    check_m(m)?;
    budget_check(2 * ((1u64 << m) - 1), cell_budget)?;
    let mut sk = Sketch::default();
    let path = w_into(&mut sk, m, 0);
    sk.finish(&path, g(2).expect("G(2)"), w_word(m))
}

/// Filling of `x2` over `P(2)`.
///
/// The `P`-relator cell, read as `v x2 t v^-1 t^-1`, is glued to itself
/// along its `t` edge, giving a single `t`-annulus. Its inner circle reads
/// `v^-1` and is filled by a copy of the `w_2` diagram (`v_2 = w_2`); the
/// outer circle pinches into the boundary loop `x2` and a loop `v`, filled by
/// a reflected copy.
pub fn build_xn_diagram(n: u32) -> Result<VanKampenDiagram, DiagramError> {
    if n != 2 {
        return Err(DiagramError::Parameter(format!(
            "build_xn_diagram is only available for n = 2, got {n}"
        )));
    }
    let pres = p(2).expect("P(2)");
    let long = pres.relators().len() - 1;
    let mut sk = Sketch::default();
    let inner = w_into(&mut sk, 2, 0);
    let mark = sk.faces.len();
    let outer = w_into(&mut sk, 2, 0);
    sk.mirror_since(mark);
    let t_edge = sk.edge(t_index(2) as i32);
    let x_edge = sk.edge(2);
    let mut cell = outer;
    cell.push(Side::fwd(x_edge));
    cell.push(Side::fwd(t_edge));
    cell.extend(reverse_flip(&inner));
    cell.push(Side::back(t_edge));
    sk.face(cell, long, -1);
    sk.finish(&[Side::fwd(x_edge)], pres, Word::generator(2))
}

/// One cell reading `relator^sign`, with that word as its boundary.
pub fn single_cell_diagram(
    presentation: Presentation,
    relator: usize,
    sign: i8,
) -> Result<VanKampenDiagram, DiagramError> {
    let r = presentation
        .relators()
        .get(relator)
        .ok_or_else(|| DiagramError::Parameter(format!("no relator {relator}")))?;
    let word = match sign {
        1 => r.clone(),
        -1 => r.inverse(),
        s => return Err(DiagramError::Parameter(format!("sign {s}"))),
    };
    let mut sk = Sketch::default();
    let sides: Vec<Side> = word
        .letters()
        .iter()
        .map(|l: &Letter| Side::fwd(sk.edge(l.signed())))
        .collect();
    sk.face(sides.clone(), relator, sign);
    sk.finish(&sides, presentation, word)
}
