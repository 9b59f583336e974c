//! `t`-annuli: bands of cells chained along `t`-edges.
//!
//! Crossing the `t`-edge of a cell along its `t`-labelled dart lands in the
//! next cell of the band. When the boundary is `t`-free every band closes
//! up, and the two `t`-free sides of a band are read cell by cell. The inner
//! side is the one from which the outer face cannot be reached without
//! crossing the band.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use crate::words::{Letter, Word};

use super::VanKampenDiagram;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnnulusError {
    #[error("diagram is invalid: {0}")]
    Invalid(String),
    #[error("boundary word contains t")]
    BoundaryContainsT,
    #[error("face {face} does not carry exactly one t and one t^-1")]
    MalformedCell { face: usize },
    #[error("t-edge at dart {dart} lies on the outer face")]
    OpenBand { dart: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TAnnulus {
    /// Inner faces in band order.
    pub cells: Vec<usize>,
    pub inner_boundary_word: Word,
    pub outer_boundary_word: Word,
}

struct TCell {
    plus: usize,
    minus: usize,
}

fn side(darts: &[usize], from: usize, to: usize) -> Vec<usize> {
    let len = darts.len();
    let mut out = Vec::new();
    let mut k = (from + 1) % len;
    while k != to {
        out.push(darts[k]);
        k = (k + 1) % len;
    }
    out
}

fn read(d: &VanKampenDiagram, darts: &[usize]) -> Word {
    Word::from_letters(
        darts
            .iter()
            .map(|&x| Letter::from_signed(d.darts[x].label).unwrap_or(Letter::pos(1)))
            .collect(),
    )
    .free_reduce()
}

/// Decomposes the `t`-cells of a valid diagram with `t`-free boundary.
/// The stable letter is the generator named `t`; without one the result is
/// empty.
pub fn t_annuli(d: &VanKampenDiagram) -> Result<Vec<TAnnulus>, AnnulusError> {
    let report = d.validate();
    if let Some(c) = report.first_failure() {
        return Err(AnnulusError::Invalid(format!(
            "{}: {}",
            c.name,
            c.detail.clone().unwrap_or_default()
        )));
    }
    let Some(t) = d.presentation.alphabet().index_of("t") else {
        return Ok(Vec::new());
    };
    let t = t as i32;
    if d.boundary.free_reduce().exponent_sum(t as u32) != 0
        || d.boundary
            .letters()
            .iter()
            .any(|l| l.generator() as i32 == t)
    {
        return Err(AnnulusError::BoundaryContainsT);
    }

    let n = d.darts.len();
    let mut face_of: Vec<Option<usize>> = vec![None; n];
    for (fi, f) in d.faces.iter().enumerate() {
        for &x in &f.darts {
            face_of[x] = Some(fi);
        }
    }

    let mut cells: Vec<Option<TCell>> = Vec::with_capacity(d.faces.len());
    for (fi, f) in d.faces.iter().enumerate() {
        let plus: Vec<usize> = (0..f.darts.len())
            .filter(|&k| d.darts[f.darts[k]].label == t)
            .collect();
        let minus: Vec<usize> = (0..f.darts.len())
            .filter(|&k| d.darts[f.darts[k]].label == -t)
            .collect();
        cells.push(match (plus.len(), minus.len()) {
            (0, 0) => None,
            (1, 1) => Some(TCell {
                plus: plus[0],
                minus: minus[0],
            }),
            _ => return Err(AnnulusError::MalformedCell { face: fi }),
        });
    }

    let successor = |fi: usize, c: &TCell| -> Result<usize, AnnulusError> {
        let dart = d.faces[fi].darts[c.plus];
        face_of[d.darts[dart].twin].ok_or(AnnulusError::OpenBand { dart })
    };

    let mut in_band = vec![false; d.faces.len()];
    let mut annuli = Vec::new();
    for start in 0..d.faces.len() {
        if in_band[start] || cells[start].is_none() {
            continue;
        }
        let mut band = Vec::new();
        let mut fi = start;
        loop {
            band.push(fi);
            in_band[fi] = true;
            let c = cells[fi]
                .as_ref()
                .ok_or(AnnulusError::MalformedCell { face: fi })?;
            fi = successor(fi, c)?;
            if fi == start {
                break;
            }
            if in_band[fi] {
                return Err(AnnulusError::MalformedCell { face: fi });
            }
        }

        let sides = |first: bool| -> Vec<usize> {
            let order: Vec<usize> = if first {
                std::iter::once(band[0])
                    .chain(band[1..].iter().rev().copied())
                    .collect()
            } else {
                band.clone()
            };
            order
                .iter()
                .flat_map(|&fi| {
                    let c = cells[fi].as_ref().expect("t-cell");
                    let darts = &d.faces[fi].darts;
                    if first {
                        side(darts, c.plus, c.minus)
                    } else {
                        side(darts, c.minus, c.plus)
                    }
                })
                .collect()
        };
        let a = sides(true);
        let b = sides(false);
        let reaches_outer = |darts: &[usize]| -> bool {
            let mut seen = in_band.clone();
            let mut queue = VecDeque::new();
            for &x in darts {
                match face_of[d.darts[x].twin] {
                    None => return true,
                    Some(f) if !seen[f] => {
                        seen[f] = true;
                        queue.push_back(f);
                    }
                    Some(_) => {}
                }
            }
            while let Some(f) = queue.pop_front() {
                for &x in &d.faces[f].darts {
                    match face_of[d.darts[x].twin] {
                        None => return true,
                        Some(g) if !seen[g] => {
                            seen[g] = true;
                            queue.push_back(g);
                        }
                        Some(_) => {}
                    }
                }
            }
            false
        };
        let (inner, outer) = if reaches_outer(&a) && !reaches_outer(&b) {
            (b, a)
        } else {
            (a, b)
        };
        annuli.push(TAnnulus {
            cells: band,
            inner_boundary_word: read(d, &inner),
            outer_boundary_word: read(d, &outer),
        });
    }
    Ok(annuli)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::{
        build_w_diagram, build_xn_diagram, single_cell_diagram, DEFAULT_CELL_BUDGET,
    };
    use crate::families::{p, v_word};

    #[test]
    fn no_t_cells() {
        let d = build_w_diagram(2, DEFAULT_CELL_BUDGET).unwrap();
        assert!(t_annuli(&d).unwrap().is_empty());
    }

    #[test]
    fn xn_has_one_annulus() {
        let d = build_xn_diagram(2).unwrap();
        let annuli = t_annuli(&d).unwrap();
        assert_eq!(annuli.len(), 1);
        assert_eq!(annuli[0].cells.len(), 1);
        let v = v_word(2).unwrap();
        assert_eq!(annuli[0].inner_boundary_word, v.inverse());
        assert!(annuli[0]
            .outer_boundary_word
            .is_cyclic_conjugate(&v.concat(&Word::generator(2))));
    }

    #[test]
    fn t_on_boundary_is_rejected() {
        let d = single_cell_diagram(p(2).unwrap(), 1, 1).unwrap();
        assert_eq!(t_annuli(&d), Err(AnnulusError::BoundaryContainsT));
    }
}
