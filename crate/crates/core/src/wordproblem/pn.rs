//! `P(n)` presents the infinite cyclic group on `t`.
//!
//! The argument is recorded as a [`ZCertificate`]: first `v_n = e` in
//! `G(n)` (checked by the Britton reducer), then `x_n = e` from the long
//! relator, then `x_i = e` for `i = n-1 .. 1` from the doubling relators.
//! Every step after the first is a free-group identity expressing the claim
//! as a product of conjugates of relators and earlier claims, so replay needs
//! nothing beyond free reduction and the reducer.

use serde::{Deserialize, Serialize};

use crate::families::{p, t_index, v_word};
use crate::words::Word;

use super::gn::GnReducer;
use super::WpError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Justification {
    /// The claim word is trivial in `G(n)` by Britton reduction.
    GnSolver,
    /// The claim word equals, in the free group, the product of the inputs.
    FreeGroupIdentity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    /// 0-based relator index of `P(n)`.
    Relator(usize),
    /// 0-based index of an earlier step.
    Step(usize),
}

/// `conjugator · source^sign · conjugator^-1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub source: Source,
    pub conjugator: Word,
    pub sign: i8,
}

/// One deduction: `word = e` in `P(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertStep {
    pub claim: String,
    pub word: Word,
    pub justification: Justification,
    pub inputs: Vec<Factor>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZCertificate {
    pub n: u32,
    pub steps: Vec<CertStep>,
    pub conclusion: String,
}

/// Builds the certificate; fails if `v_n` saturates the reducer at `cap`.
pub fn z_certificate(n: u32, cap: u64) -> Result<ZCertificate, WpError> {
    let v = v_word(n)?;
    let reducer = GnReducer::new(n, cap);
    if !reducer.reduce(&v)?.is_identity() {
        return Err(WpError::Certificate(format!(
            "v_{n} did not reduce to e in G_{n}"
        )));
    }
    let t = Word::generator(t_index(n));
    let mut steps = vec![CertStep {
        claim: format!("v_{n} = e in G_{n}"),
        word: v,
        justification: Justification::GnSolver,
        inputs: Vec::new(),
    }];
    // x_n^-1 = (t v^-1 t^-1) · (t v t^-1 x_n^-1 v^-1) · v
    steps.push(CertStep {
        claim: format!("x{n} = e"),
        word: Word::power(n, -1),
        justification: Justification::FreeGroupIdentity,
        inputs: vec![
            Factor {
                source: Source::Step(0),
                conjugator: t,
                sign: -1,
            },
            Factor {
                source: Source::Relator(n as usize - 1),
                conjugator: Word::empty(),
                sign: 1,
            },
            Factor {
                source: Source::Step(0),
                conjugator: Word::empty(),
                sign: 1,
            },
        ],
    });
    // x_i^-1 = (x_i a x_i^-1) · a^-1 · (a x_i a^-1 x_i^-2), a = x_{i+1}
    for i in (1..n).rev() {
        let above = steps.len() - 1;
        steps.push(CertStep {
            claim: format!("x{i} = e"),
            word: Word::power(i, -1),
            justification: Justification::FreeGroupIdentity,
            inputs: vec![
                Factor {
                    source: Source::Step(above),
                    conjugator: Word::generator(i),
                    sign: -1,
                },
                Factor {
                    source: Source::Step(above),
                    conjugator: Word::empty(),
                    sign: 1,
                },
                Factor {
                    source: Source::Relator(i as usize - 1),
                    conjugator: Word::empty(),
                    sign: 1,
                },
            ],
        });
    }
    Ok(ZCertificate {
        n,
        steps,
        conclusion: format!("every x_i = e in P_{n}, so P_{n} presents Z = <t>"),
    })
}

impl ZCertificate {
    /// Checks every step mechanically and that every `x_i` is killed.
    pub fn replay(&self, cap: u64) -> Result<(), WpError> {
        let n = self.n;
        let pres = p(n)?;
        let fail = |k: usize, msg: &str| WpError::Certificate(format!("step {k}: {msg}"));
        let reducer = GnReducer::new(n, cap);
        for (k, step) in self.steps.iter().enumerate() {
            match step.justification {
                Justification::GnSolver => {
                    if step.word.max_generator() > n {
                        return Err(fail(k, "word leaves the alphabet of G_n"));
                    }
                    if !reducer.reduce(&step.word)?.is_identity() {
                        return Err(fail(k, "word is not trivial in G_n"));
                    }
                }
                Justification::FreeGroupIdentity => {
                    let mut product = Word::empty();
                    for f in &step.inputs {
                        let base = match f.source {
                            Source::Relator(r) => pres
                                .relators()
                                .get(r)
                                .ok_or_else(|| fail(k, "relator index out of range"))?
                                .clone(),
                            Source::Step(s) if s < k => self.steps[s].word.clone(),
                            Source::Step(_) => return Err(fail(k, "cites a later step")),
                        };
                        let powered = match f.sign {
                            1 => base,
                            -1 => base.inverse(),
                            _ => return Err(fail(k, "sign must be +1 or -1")),
                        };
                        product = product.concat(&powered.conjugate(&f.conjugator));
                    }
                    if product != step.word.free_reduce() {
                        return Err(fail(k, "product of inputs differs from the claim"));
                    }
                }
            }
        }
        for i in 1..=n {
            let killed = self
                .steps
                .iter()
                .any(|s| s.word == Word::generator(i) || s.word == Word::power(i, -1));
            if !killed {
                return Err(WpError::Certificate(format!("x{i} is never shown trivial")));
            }
        }
        Ok(())
    }
}

/// Decides the word problem in `P(n)` after replaying its certificate.
#[derive(Debug, Clone)]
pub struct PnSolver {
    n: u32,
    certificate: ZCertificate,
}

impl PnSolver {
    pub fn new(n: u32, cap: u64) -> Result<Self, WpError> {
        let certificate = z_certificate(n, cap)?;
        certificate.replay(cap)?;
        Ok(PnSolver { n, certificate })
    }

    pub fn certificate(&self) -> &ZCertificate {
        &self.certificate
    }

    /// Trivial iff the `t`-exponent sum vanishes.
    pub fn is_trivial(&self, w: &Word) -> Result<bool, WpError> {
        if w.max_generator() > t_index(self.n) {
            return Err(WpError::Word(crate::words::WordError::OutsideAlphabet {
                letter: w.max_generator() as i32,
                size: t_index(self.n) as usize,
            }));
        }
        Ok(w.exponent_sum(t_index(self.n)) == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wordproblem::tower::DEFAULT_BIT_CAP;

    #[test]
    fn certificate_replays() {
        for n in 2..=3 {
            let cert = z_certificate(n, DEFAULT_BIT_CAP).unwrap();
            assert_eq!(cert.steps.len(), n as usize + 1);
            cert.replay(DEFAULT_BIT_CAP).unwrap();
        }
    }

    #[test]
    fn n4_certificate_needs_raised_cap() {
        assert!(matches!(
            z_certificate(4, DEFAULT_BIT_CAP),
            Err(WpError::Undecided(_))
        ));
        z_certificate(4, 1 << 17).unwrap().replay(1 << 17).unwrap();
    }

    #[test]
    fn tampered_certificate_fails() {
        let mut cert = z_certificate(2, DEFAULT_BIT_CAP).unwrap();
        cert.steps[1].inputs[0].sign = 1;
        assert!(cert.replay(DEFAULT_BIT_CAP).is_err());

        let mut cert = z_certificate(2, DEFAULT_BIT_CAP).unwrap();
        cert.steps[0].word = Word::generator(1);
        assert!(cert.replay(DEFAULT_BIT_CAP).is_err());

        let mut cert = z_certificate(3, DEFAULT_BIT_CAP).unwrap();
        cert.steps.pop();
        assert!(cert.replay(DEFAULT_BIT_CAP).is_err());
    }

    #[test]
    fn p2_word_problem() {
        let s = PnSolver::new(2, DEFAULT_BIT_CAP).unwrap();
        assert!(s.is_trivial(&Word::generator(2)).unwrap());
        assert!(!s.is_trivial(&Word::generator(3)).unwrap());
        assert!(s
            .is_trivial(&Word::from_signed(&[3, 1, -3]).unwrap())
            .unwrap());
        assert!(s.is_trivial(&Word::generator(4)).is_err());
    }

    #[test]
    fn json_shape() {
        let cert = z_certificate(2, DEFAULT_BIT_CAP).unwrap();
        let s = serde_json::to_string(&cert).unwrap();
        assert!(s.contains(r#""justification":"gn-solver""#));
        assert!(s.contains(r#""source":{"relator":1}"#));
        let back: ZCertificate = serde_json::from_str(&s).unwrap();
        assert_eq!(back, cert);
    }
}
