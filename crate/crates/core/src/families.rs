//! The presentation families `G(n)`, `P(n)`, `Q(n)`, `T(n)`, their witness
//! words, and the elementary relator moves that connect balanced
//! presentations.
//!
//! Generator `xi` has index `i`; the extra generator `t` of `P`, `Q` and `T`
//! has index `n + 1`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::words::{Alphabet, Letter, Word, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("family {family} needs n >= {min}, got {n}")]
    Parameter { family: char, n: u32, min: u32 },
    #[error("relator index {index} out of range for {count} relators")]
    RelatorIndex { index: usize, count: usize },
    #[error("generator {generator} out of range for {size} generators")]
    GeneratorIndex { generator: u32, size: usize },
    #[error("product move needs two distinct relators, got i = j = {0}")]
    SameRelator(usize),
    #[error("sign must be +1 or -1, got {0}")]
    Sign(i32),
    #[error("relator {index} is not freely reduced")]
    UnreducedRelator { index: usize },
    #[error(transparent)]
    Word(#[from] WordError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyKind {
    G,
    P,
    Q,
    T,
}

impl FamilyKind {
    pub fn letter(self) -> char {
        match self {
            FamilyKind::G => 'G',
            FamilyKind::P => 'P',
            FamilyKind::Q => 'Q',
            FamilyKind::T => 'T',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyTag {
    pub tag: FamilyKind,
    pub n: u32,
}

/// A finite presentation: generators plus an ordered list of reduced
/// relator words. Relators may repeat.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPresentation", into = "RawPresentation")]
pub struct Presentation {
    alphabet: Alphabet,
    relators: Vec<Word>,
    family: Option<FamilyTag>,
}

#[derive(Serialize, Deserialize)]
struct RawPresentation {
    generators: Alphabet,
    relators: Vec<Word>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    family: Option<FamilyTag>,
}

impl TryFrom<RawPresentation> for Presentation {
    type Error = FamilyError;

    fn try_from(raw: RawPresentation) -> Result<Self, Self::Error> {
        Presentation::new(raw.generators, raw.relators, raw.family)
    }
}

impl From<Presentation> for RawPresentation {
    fn from(p: Presentation) -> Self {
        RawPresentation {
            generators: p.alphabet,
            relators: p.relators,
            family: p.family,
        }
    }
}

impl Presentation {
    pub fn new(
        alphabet: Alphabet,
        relators: Vec<Word>,
        family: Option<FamilyTag>,
    ) -> Result<Self, FamilyError> {
        for (index, r) in relators.iter().enumerate() {
            alphabet.check(r)?;
            if !r.is_reduced() {
                return Err(FamilyError::UnreducedRelator { index });
            }
        }
        Ok(Presentation {
            alphabet,
            relators,
            family,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn family(&self) -> Option<FamilyTag> {
        self.family
    }

    pub fn generator_count(&self) -> usize {
        self.alphabet.len()
    }

    pub fn is_balanced(&self) -> bool {
        self.alphabet.len() == self.relators.len()
    }

    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    pub fn check_word(&self, w: &Word) -> Result<(), WordError> {
        self.alphabet.check(w)
    }

    /// Equal alphabets (as ordered name lists) and equal relator multisets.
    pub fn equals(&self, other: &Presentation) -> bool {
        if self.alphabet != other.alphabet || self.relators.len() != other.relators.len() {
            return false;
        }
        let mut a: Vec<Word> = self.relators.iter().map(Word::free_reduce).collect();
        let mut b: Vec<Word> = other.relators.iter().map(Word::free_reduce).collect();
        a.sort();
        b.sort();
        a == b
    }
}

pub fn presentations_equal(p: &Presentation, q: &Presentation) -> bool {
    p.equals(q)
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|r| self.alphabet.render(r))
            .collect();
        write!(
            f,
            "< {} | {} >",
            self.alphabet.names().join(", "),
            rels.join(", ")
        )
    }
}

fn require(family: char, n: u32, min: u32) -> Result<(), FamilyError> {
    if n < min {
        Err(FamilyError::Parameter { family, n, min })
    } else {
        Ok(())
    }
}

/// The relator `x_{i+1} x_i x_{i+1}^-1 x_i^-2`, i.e. `x_i^{x_{i+1}} = x_i^2`.
pub fn doubling_relator(i: u32) -> Word {
    Word::from_letters(vec![
        Letter::pos(i + 1),
        Letter::pos(i),
        Letter::neg(i + 1),
        Letter::neg(i),
        Letter::neg(i),
    ])
}

/// `G(n) = < x1..xn | x_i^{x_{i+1}} = x_i^2 >`. `G(2)` is BS(1,2).
pub fn g(n: u32) -> Result<Presentation, FamilyError> {
    require('G', n, 2)?;
    let relators = (1..n).map(doubling_relator).collect();
    Presentation::new(
        Alphabet::indexed(n as usize),
        relators,
        Some(FamilyTag {
            tag: FamilyKind::G,
            n,
        }),
    )
}

/// `w_m = [x1^{x2^m}, x1]`.
pub fn w_word(m: u32) -> Word {
    let x1 = Word::generator(1);
    Word::commutator(&x1.conjugate(&Word::power(2, m as i64)), &x1)
}

/// `g_k` in `G(n)`: `x_n^k`, then conjugated `x_{n-1}`, and so on down to `x1`.
pub fn g_word(n: u32, k: u32) -> Result<Word, FamilyError> {
    require('g', n, 2)?;
    let mut u = Word::power(n, k as i64);
    for i in (1..n).rev() {
        u = Word::generator(i).conjugate(&u);
    }
    Ok(u)
}

/// `v_n = [g_n, x1]` with `k = n`.
pub fn v_word(n: u32) -> Result<Word, FamilyError> {
    let g = g_word(n, n)?;
    Ok(Word::commutator(&g, &Word::generator(1)))
}

/// Index of the stable letter `t` in `P(n)`, `Q(n)` and `T(n)`.
pub fn t_index(n: u32) -> u32 {
    n + 1
}

fn p_alphabet(n: u32) -> Alphabet {
    let mut names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    names.push("t".to_string());
    Alphabet::new(names).expect("distinct names")
}

/// `t v_n t^-1 x_n^-1 v_n^-1`, i.e. `t v_n t^-1 = v_n x_n`.
pub fn p_relator(n: u32) -> Result<Word, FamilyError> {
    let v = v_word(n)?;
    let t = Word::generator(t_index(n));
    Ok(t.concat(&v)
        .concat(&t.inverse())
        .concat(&Word::power(n, -1))
        .concat(&v.inverse()))
}

pub fn p(n: u32) -> Result<Presentation, FamilyError> {
    require('P', n, 2)?;
    let mut relators: Vec<Word> = (1..n).map(doubling_relator).collect();
    relators.push(p_relator(n)?);
    Presentation::new(
        p_alphabet(n),
        relators,
        Some(FamilyTag {
            tag: FamilyKind::P,
            n,
        }),
    )
}

/// `P(n)` with the extra relator `t`; a balanced presentation of the trivial group.
pub fn q(n: u32) -> Result<Presentation, FamilyError> {
    require('Q', n, 2)?;
    let mut relators: Vec<Word> = (1..n).map(doubling_relator).collect();
    relators.push(p_relator(n)?);
    relators.push(Word::generator(t_index(n)));
    Presentation::new(
        p_alphabet(n),
        relators,
        Some(FamilyTag {
            tag: FamilyKind::Q,
            n,
        }),
    )
}

/// Relators `[x1, ..., xn, t]`.
pub fn t(n: u32) -> Result<Presentation, FamilyError> {
    require('T', n, 2)?;
    let relators = (1..=n + 1).map(Word::generator).collect();
    Presentation::new(
        p_alphabet(n),
        relators,
        Some(FamilyTag {
            tag: FamilyKind::T,
            n,
        }),
    )
}

/// One relator move. Indices are 0-based positions in the relator list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum ElementaryOp {
    /// `r_i <- r_i^-1`
    Invert { i: usize },
    /// `r_i <- r_i r_j`
    #[serde(rename = "mul")]
    MultiplyRight { i: usize, j: usize },
    /// `r_i <- g^sign r_i g^-sign`
    #[serde(rename = "conj")]
    Conjugate { i: usize, g: u32, sign: i32 },
}

impl ElementaryOp {
    /// A sequence of moves undoing `self`.
    pub fn inverse_sequence(&self) -> Vec<ElementaryOp> {
        match *self {
            ElementaryOp::Invert { i } => vec![ElementaryOp::Invert { i }],
            ElementaryOp::MultiplyRight { i, j } => vec![
                ElementaryOp::Invert { i: j },
                ElementaryOp::MultiplyRight { i, j },
                ElementaryOp::Invert { i: j },
            ],
            ElementaryOp::Conjugate { i, g, sign } => {
                vec![ElementaryOp::Conjugate { i, g, sign: -sign }]
            }
        }
    }
}

pub fn apply_op(p: &Presentation, op: &ElementaryOp) -> Result<Presentation, FamilyError> {
    let count = p.relators.len();
    let check = |index: usize| {
        if index < count {
            Ok(())
        } else {
            Err(FamilyError::RelatorIndex { index, count })
        }
    };
    let mut relators = p.relators.clone();
    match *op {
        ElementaryOp::Invert { i } => {
            check(i)?;
            relators[i] = relators[i].inverse();
        }
        ElementaryOp::MultiplyRight { i, j } => {
            check(i)?;
            check(j)?;
            if i == j {
                return Err(FamilyError::SameRelator(i));
            }
            relators[i] = relators[i].concat(&relators[j]);
        }
        ElementaryOp::Conjugate { i, g, sign } => {
            check(i)?;
            if g == 0 || g as usize > p.alphabet.len() {
                return Err(FamilyError::GeneratorIndex {
                    generator: g,
                    size: p.alphabet.len(),
                });
            }
            if sign != 1 && sign != -1 {
                return Err(FamilyError::Sign(sign));
            }
            let u = Word::power(g, sign as i64);
            relators[i] = relators[i].conjugate(&u);
        }
    }
    Ok(Presentation {
        alphabet: p.alphabet.clone(),
        relators,
        family: p.family,
    })
}

pub fn apply_sequence(p: &Presentation, ops: &[ElementaryOp]) -> Result<Presentation, FamilyError> {
    ops.iter().try_fold(p.clone(), |acc, op| apply_op(&acc, op))
}

/// Every intermediate presentation, starting with `p` itself.
pub fn replay_sequence(
    p: &Presentation,
    ops: &[ElementaryOp],
) -> Result<Vec<Presentation>, FamilyError> {
    let mut states = Vec::with_capacity(ops.len() + 1);
    states.push(p.clone());
    for op in ops {
        let next = apply_op(states.last().expect("nonempty"), op)?;
        states.push(next);
    }
    Ok(states)
}

/// Moves the first letter of relator `i` to its end: `r = a s  ->  s a`.
fn rotate_left(i: usize, first: Letter) -> ElementaryOp {
    ElementaryOp::Conjugate {
        i,
        g: first.generator(),
        sign: -first.sign() as i32,
    }
}

/// Relator moves taking `Q(n)` to `T(n)` with relators in the same order.
///
/// The `t`-relator is used to strip both `t` letters from the long relator,
/// whose `v_n` prefix is then rotated away one letter at a time against the
/// `v_n^-1` suffix. Each doubling relator is then killed using the already
/// trivialized `x_{i+1}`. Length is `|v_n| + 7 + 8(n - 1)`.
pub fn standard_trivialization_sequence(n: u32) -> Result<Vec<ElementaryOp>, FamilyError> {
    require('Q', n, 2)?;
    let long = (n - 1) as usize;
    let t_rel = n as usize;
    let t = t_index(n);
    let v = v_word(n)?;
    let mut ops = vec![
        // t v t^-1 x_n^-1 v^-1  ->  v t^-1 x_n^-1 v^-1 t
        ElementaryOp::Conjugate {
            i: long,
            g: t,
            sign: -1,
        },
        //   -> v t^-1 x_n^-1 v^-1
        ElementaryOp::Invert { i: t_rel },
        ElementaryOp::MultiplyRight { i: long, j: t_rel },
        ElementaryOp::Invert { i: t_rel },
    ];
    //   -> t^-1 x_n^-1, cancelling v against v^-1 letter by letter
    for &letter in v.letters() {
        ops.push(rotate_left(long, letter));
    }
    //   -> x_n^-1 t^-1 -> x_n^-1 -> x_n
    ops.push(rotate_left(long, Letter::neg(t)));
    ops.push(ElementaryOp::MultiplyRight { i: long, j: t_rel });
    ops.push(ElementaryOp::Invert { i: long });

    // x_{i+1} x_i x_{i+1}^-1 x_i^-2 -> x_i, for i = n-1 .. 1; relator i-1
    // holds it and relator i already equals x_{i+1}.
    for gen in (1..n).rev() {
        let r = (gen - 1) as usize;
        let kill = gen as usize;
        let above = gen + 1;
        //   -> x_i x_{i+1}^-1 x_i^-2 x_{i+1}
        ops.push(ElementaryOp::Conjugate {
            i: r,
            g: above,
            sign: -1,
        });
        //   -> x_i x_{i+1}^-1 x_i^-2
        ops.push(ElementaryOp::Invert { i: kill });
        ops.push(ElementaryOp::MultiplyRight { i: r, j: kill });
        //   -> x_{i+1}^-1 x_i^-1 -> x_i^-1 x_{i+1}^-1
        ops.push(rotate_left(r, Letter::pos(gen)));
        ops.push(rotate_left(r, Letter::neg(above)));
        //   -> x_i^-1 -> x_i
        ops.push(ElementaryOp::Invert { i: kill });
        ops.push(ElementaryOp::MultiplyRight { i: r, j: kill });
        ops.push(ElementaryOp::Invert { i: r });
    }
    Ok(ops)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i32]) -> Word {
        Word::from_signed(v).unwrap()
    }

    #[test]
    fn g_family_shape() {
        let g2 = g(2).unwrap();
        assert_eq!(g2.relators(), &[w(&[2, 1, -2, -1, -1])]);
        assert_eq!(g2.total_length(), 5);
        let g4 = g(4).unwrap();
        assert_eq!(
            (g4.generator_count(), g4.relators().len(), g4.total_length()),
            (4, 3, 15)
        );
        assert!(matches!(g(1), Err(FamilyError::Parameter { .. })));
    }

    #[test]
    fn witness_words() {
        assert!(w_word(0).is_empty());
        assert_eq!(w_word(1), w(&[2, 1, -2, 1, 2, -1, -2, -1]));
        assert_eq!(w_word(3).len(), 16);
        assert_eq!(g_word(2, 2).unwrap(), w(&[2, 2, 1, -2, -2]));
        assert_eq!(v_word(2).unwrap().len(), 12);
        assert_eq!(v_word(2).unwrap(), w_word(2));
    }

    #[test]
    fn v_word_length_is_exponential_with_bounded_constant() {
        // |g_n| = 2^(n-1) (n+1) - 1, so |v_n| = 2^n (n+1).
        for n in 2..=12u32 {
            let len = v_word(n).unwrap().len();
            assert_eq!(len, (1usize << n) * (n as usize + 1));
            assert!(len as f64 / (1u64 << n) as f64 <= 13.0);
        }
    }

    #[test]
    fn p_q_t_shapes() {
        let p2 = p(2).unwrap();
        assert_eq!(p2.relators().last().unwrap().len(), 27);
        let q2 = q(2).unwrap();
        assert_eq!((q2.generator_count(), q2.relators().len()), (3, 3));
        assert!(q2.is_balanced());
        let t3 = t(3).unwrap();
        assert!(t3.is_balanced());
        assert_eq!(t3.relators(), &[w(&[1]), w(&[2]), w(&[3]), w(&[4])]);
        assert_eq!(t3.alphabet().names(), &["x1", "x2", "x3", "t"]);
    }

    #[test]
    fn relators_are_cyclically_reduced() {
        for n in 2..=6 {
            for pres in [g(n).unwrap(), p(n).unwrap(), q(n).unwrap(), t(n).unwrap()] {
                assert!(pres.relators().iter().all(Word::is_cyclically_reduced));
            }
        }
    }

    #[test]
    fn op_examples() {
        let one = Presentation::new(Alphabet::new(["x"]).unwrap(), vec![w(&[1])], None).unwrap();
        let inv = apply_op(&one, &ElementaryOp::Invert { i: 0 }).unwrap();
        assert_eq!(inv.relators(), &[w(&[-1])]);

        let xy =
            Presentation::new(Alphabet::new(["x", "y"]).unwrap(), vec![w(&[2])], None).unwrap();
        let c = apply_op(
            &xy,
            &ElementaryOp::Conjugate {
                i: 0,
                g: 1,
                sign: 1,
            },
        )
        .unwrap();
        assert_eq!(c.relators(), &[w(&[1, 2, -1])]);

        let tw = Presentation::new(
            Alphabet::new(["x", "t"]).unwrap(),
            vec![w(&[2, 1, 1]), w(&[2])],
            None,
        )
        .unwrap();
        let m = apply_op(&tw, &ElementaryOp::MultiplyRight { i: 0, j: 1 }).unwrap();
        assert_eq!(m.relators()[0], w(&[2, 1, 1, 2]));
    }

    #[test]
    fn op_errors() {
        let q2 = q(2).unwrap();
        assert!(matches!(
            apply_op(&q2, &ElementaryOp::Invert { i: 3 }),
            Err(FamilyError::RelatorIndex { index: 3, count: 3 })
        ));
        assert_eq!(
            apply_op(&q2, &ElementaryOp::MultiplyRight { i: 1, j: 1 }),
            Err(FamilyError::SameRelator(1))
        );
        assert!(apply_op(
            &q2,
            &ElementaryOp::Conjugate {
                i: 0,
                g: 4,
                sign: 1
            }
        )
        .is_err());
        assert!(apply_op(
            &q2,
            &ElementaryOp::Conjugate {
                i: 0,
                g: 1,
                sign: 2
            }
        )
        .is_err());
    }

    #[test]
    fn every_op_is_undone_by_its_inverse_sequence() {
        let q3 = q(3).unwrap();
        let k = q3.relators().len();
        let mut ops = Vec::new();
        for i in 0..k {
            ops.push(ElementaryOp::Invert { i });
            for j in 0..k {
                if i != j {
                    ops.push(ElementaryOp::MultiplyRight { i, j });
                }
            }
            for gen in 1..=4 {
                for sign in [1, -1] {
                    ops.push(ElementaryOp::Conjugate { i, g: gen, sign });
                }
            }
        }
        for op in ops {
            let forward = apply_op(&q3, &op).unwrap();
            assert_eq!(forward.relators().len(), k);
            assert!(forward.is_balanced());
            let back = apply_sequence(&forward, &op.inverse_sequence()).unwrap();
            assert_eq!(back, q3, "{op:?}");
        }
    }

    #[test]
    fn equality_semantics() {
        let q2 = q(2).unwrap();
        assert!(presentations_equal(&q2, &q2));
        let mut rels = q2.relators().to_vec();
        rels.reverse();
        let permuted = Presentation::new(q2.alphabet().clone(), rels.clone(), None).unwrap();
        assert!(presentations_equal(&q2, &permuted));
        rels[2] = rels[2].rotate(1);
        let rotated = Presentation::new(q2.alphabet().clone(), rels, None).unwrap();
        assert!(!presentations_equal(&q2, &rotated));
    }

    #[test]
    fn trivialization_reaches_t() {
        for n in 2..=5 {
            let ops = standard_trivialization_sequence(n).unwrap();
            let states = replay_sequence(&q(n).unwrap(), &ops).unwrap();
            assert!(states.iter().all(Presentation::is_balanced));
            let last = states.last().unwrap();
            assert!(presentations_equal(last, &t(n).unwrap()));
            assert_eq!(last.relators(), t(n).unwrap().relators());
            let expected_len = v_word(n).unwrap().len() + 7 + 8 * (n as usize - 1);
            assert_eq!(ops.len(), expected_len);
            assert!(ops.len() <= q(n).unwrap().total_length());
        }
    }

    #[test]
    fn json_round_trip() {
        let q2 = q(2).unwrap();
        let s = serde_json::to_string(&q2).unwrap();
        assert!(s.starts_with(r#"{"generators":["x1","x2","t"],"relators":[[2,1,-2,-1,-1],"#));
        assert!(s.ends_with(r#""family":{"tag":"Q","n":2}}"#));
        let back: Presentation = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q2);

        let op: ElementaryOp =
            serde_json::from_str(r#"{"op":"conj","i":0,"g":2,"sign":-1}"#).unwrap();
        assert_eq!(
            op,
            ElementaryOp::Conjugate {
                i: 0,
                g: 2,
                sign: -1
            }
        );
        assert_eq!(
            serde_json::to_string(&ElementaryOp::MultiplyRight { i: 0, j: 1 }).unwrap(),
            r#"{"op":"mul","i":0,"j":1}"#
        );
        assert_eq!(
            serde_json::to_string(&ElementaryOp::Invert { i: 0 }).unwrap(),
            r#"{"op":"invert","i":0}"#
        );
        assert!(
            serde_json::from_str::<Presentation>(r#"{"generators":["a"],"relators":[[2]]}"#)
                .is_err()
        );
        assert!(serde_json::from_str::<Presentation>(
            r#"{"generators":["a"],"relators":[[1,-1]]}"#
        )
        .is_err());
    }
}
