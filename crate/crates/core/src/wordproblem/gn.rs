//! Word problem in `G(n)` by iterated Britton reduction.
//!
//! `G(k)` is an HNN extension of `G(k-1)` with stable letter `x_k` and
//! `x_k x_{k-1} x_k^-1 = x_{k-1}^2`. An element of `G(k)` is kept as a list
//! of [`Part`]s: runs `x_k^e` of the stable letter and nontrivial elements of
//! `G(k-1)`, recursively in the same form. `G(1)` is the infinite cyclic
//! group on `x1`, a single run.
//!
//! Pinches rewrite
//! - `x_k^a · x_{k-1}^m · x_k^-c` (a, c > 0) to `x_k^(a-j) · x_{k-1}^(m 2^j) · x_k^-(c-j)`,
//!   `j = min(a, c)`;
//! - `x_k^-a · x_{k-1}^m · x_k^c` to `x_k^-(a-j) · x_{k-1}^(m / 2^j) · x_k^(c-j)`,
//!   `j = min(a, c, v_2(m))`.
//!
//! The reducer is a left-to-right stack: every rewrite happens at the top,
//! and the result is re-pushed so that merges cascade. Exponents are
//! [`TowerInt`]s.

use crate::words::Word;

use super::tower::{CapExceeded, TowerInt};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Part {
    /// A nontrivial element of the level below.
    Base(Reduced),
    /// `x_level^e`, `e != 0`.
    Stable(TowerInt),
}

/// A Britton-reduced element of `G(level)`. Empty iff trivial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduced {
    level: u32,
    parts: Vec<Part>,
}

impl Reduced {
    pub fn identity(level: u32) -> Self {
        Reduced {
            level,
            parts: Vec::new(),
        }
    }

    /// `x_level^e`.
    pub fn stable_power(level: u32, e: TowerInt) -> Self {
        let parts = if e.is_zero() {
            Vec::new()
        } else {
            vec![Part::Stable(e)]
        };
        Reduced { level, parts }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn is_identity(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of stable-letter runs at the top level.
    pub fn stable_runs(&self) -> usize {
        self.parts
            .iter()
            .filter(|p| matches!(p, Part::Stable(_)))
            .count()
    }
}

/// Britton reducer for `G(n)` with a bit cap on exact exponents.
#[derive(Debug, Clone, Copy)]
pub struct GnReducer {
    pub n: u32,
    pub cap: u64,
}

impl GnReducer {
    pub fn new(n: u32, cap: u64) -> Self {
        GnReducer { n, cap }
    }

    /// Reduces a word over `x1..xn`. Letters above `x_n` are the caller's
    /// responsibility to exclude.
    pub fn reduce(&self, w: &Word) -> Result<Reduced, CapExceeded> {
        let letters: Vec<i32> = w.letters().iter().map(|l| l.signed()).collect();
        self.reduce_at(self.n, &letters)
    }

    fn reduce_at(&self, level: u32, letters: &[i32]) -> Result<Reduced, CapExceeded> {
        let mut acc = Reduced::identity(level);
        let mut i = 0;
        while i < letters.len() {
            let g = letters[i].unsigned_abs();
            debug_assert!(g <= level, "letter x{g} above level {level}");
            if g == level {
                let mut e: i64 = 0;
                while i < letters.len() && letters[i].unsigned_abs() == level {
                    e += letters[i].signum() as i64;
                    i += 1;
                }
                if e != 0 {
                    self.push(&mut acc, Part::Stable(TowerInt::from(e)))?;
                }
            } else {
                let start = i;
                while i < letters.len() && letters[i].unsigned_abs() < level {
                    i += 1;
                }
                let base = self.reduce_at(level - 1, &letters[start..i])?;
                self.push(&mut acc, Part::Base(base))?;
            }
        }
        Ok(acc)
    }

    /// `a · b` for two reduced elements of the same level.
    pub fn multiply(&self, a: &Reduced, b: &Reduced) -> Result<Reduced, CapExceeded> {
        debug_assert_eq!(a.level, b.level);
        let mut acc = a.clone();
        for part in &b.parts {
            self.push(&mut acc, part.clone())?;
        }
        Ok(acc)
    }

    fn push(&self, acc: &mut Reduced, part: Part) -> Result<(), CapExceeded> {
        let cap = self.cap;
        match part {
            Part::Base(b) => {
                if b.is_identity() {
                    return Ok(());
                }
                if let Some(Part::Base(_)) = acc.parts.last() {
                    let Some(Part::Base(top)) = acc.parts.pop() else {
                        unreachable!()
                    };
                    let merged = self.multiply(&top, &b)?;
                    if !merged.is_identity() {
                        acc.parts.push(Part::Base(merged));
                    }
                } else {
                    acc.parts.push(Part::Base(b));
                }
                Ok(())
            }
            Part::Stable(c) => {
                if c.is_zero() {
                    return Ok(());
                }
                match acc.parts.last() {
                    Some(Part::Stable(_)) => {
                        let Some(Part::Stable(a)) = acc.parts.pop() else {
                            unreachable!()
                        };
                        let sum = a.add(&c, cap)?;
                        self.push(acc, Part::Stable(sum))
                    }
                    Some(Part::Base(_)) if acc.parts.len() >= 2 => {
                        let n = acc.parts.len();
                        let Part::Stable(a) = &acc.parts[n - 2] else {
                            unreachable!("bases never sit next to each other")
                        };
                        let Part::Base(b) = &acc.parts[n - 1] else {
                            unreachable!()
                        };
                        match self.try_pinch(a, b, &c)? {
                            Some((left, middle, right)) => {
                                acc.parts.truncate(n - 2);
                                self.push(acc, Part::Stable(left))?;
                                self.push(acc, Part::Base(middle))?;
                                self.push(acc, Part::Stable(right))
                            }
                            None => {
                                acc.parts.push(Part::Stable(c));
                                Ok(())
                            }
                        }
                    }
                    _ => {
                        acc.parts.push(Part::Stable(c));
                        Ok(())
                    }
                }
            }
        }
    }

    /// Pinch of `x_k^a · b · x_k^c`, returning the rewritten triple.
    fn try_pinch(
        &self,
        a: &TowerInt,
        b: &Reduced,
        c: &TowerInt,
    ) -> Result<Option<(TowerInt, Reduced, TowerInt)>, CapExceeded> {
        let cap = self.cap;
        if a.signum() == c.signum() {
            return Ok(None);
        }
        let Some(m) = self.power_of_stable(b)? else {
            return Ok(None);
        };
        let below = b.level;
        if a.signum() > 0 {
            // x_k^a x^m x_k^-c  with  x_k x^m x_k^-1 = x^(2m)
            let j = a.min_abs(c, cap)?;
            let m2 = m.shl(&j, cap)?;
            Ok(Some((
                a.sub(&j, cap)?,
                Reduced::stable_power(below, m2),
                c.add(&j, cap)?,
            )))
        } else {
            // x_k^-a x^m x_k^c  with  x_k^-1 x^(2m) x_k = x^m
            let (v, exact) = m.two_adic_floor();
            if v == 0 {
                if exact {
                    return Ok(None);
                }
                return Err(CapExceeded {
                    cap,
                    reason: "parity of a saturated exponent is unknown".into(),
                });
            }
            let ac = a.min_abs(c, cap)?;
            let limit = TowerInt::from(v.min(i64::MAX as u64) as i64);
            let j = match ac.cmp_abs(&limit) {
                Some(std::cmp::Ordering::Greater) if !exact => {
                    return Err(CapExceeded {
                        cap,
                        reason: "2-adic valuation of a saturated exponent is unknown".into(),
                    });
                }
                Some(std::cmp::Ordering::Greater) => limit,
                _ => ac,
            };
            let shift = j.to_i64().expect("bounded by a u64 valuation") as u64;
            Ok(Some((
                a.add(&j, cap)?,
                Reduced::stable_power(below, m.shr(shift)),
                c.sub(&j, cap)?,
            )))
        }
    }

    /// If the reduced element `b` of `G(k)` equals `x_k^e`, returns `e`.
    ///
    /// By Britton's lemma such a reduced form has stable runs of a single
    /// sign, and every base piece must itself be a power of `x_{k-1}`.
    /// Pushing those powers across the runs to one end must leave nothing.
    pub fn power_of_stable(&self, b: &Reduced) -> Result<Option<TowerInt>, CapExceeded> {
        let cap = self.cap;
        match b.parts.as_slice() {
            [] => return Ok(Some(TowerInt::zero())),
            [Part::Stable(e)] => return Ok(Some(e.clone())),
            _ => {}
        }
        let mut sign = 0i8;
        for part in &b.parts {
            if let Part::Stable(e) = part {
                if sign != 0 && sign != e.signum() {
                    return Ok(None);
                }
                sign = e.signum();
            }
        }
        if sign == 0 {
            // a single nontrivial base piece
            return Ok(None);
        }
        let mut pushed = TowerInt::zero();
        let mut total = TowerInt::zero();
        // Positive runs absorb x^m from the right (x_k x^m = x^(2m) x_k), so
        // sweep right to left; negative runs absorb from the left.
        let parts: Box<dyn Iterator<Item = &Part>> = if sign > 0 {
            Box::new(b.parts.iter().rev())
        } else {
            Box::new(b.parts.iter())
        };
        for part in parts {
            match part {
                Part::Base(c) => match self.power_of_stable(c)? {
                    Some(m) => pushed = pushed.add(&m, cap)?,
                    None => return Ok(None),
                },
                Part::Stable(e) => {
                    pushed = pushed.shl(&e.abs(), cap)?;
                    total = total.add(e, cap)?;
                }
            }
        }
        if pushed.is_zero() {
            Ok(Some(total))
        } else {
            Ok(None)
        }
    }

    /// If `w = x1^e` in `G(n)`, returns `e`.
    pub fn power_of_x1(&self, w: &Word) -> Result<Option<TowerInt>, CapExceeded> {
        let mut r = self.reduce(w)?;
        loop {
            match r.parts.as_slice() {
                [] => return Ok(Some(TowerInt::zero())),
                [Part::Stable(e)] if r.level == 1 => return Ok(Some(e.clone())),
                [Part::Base(inner)] => r = inner.clone(),
                _ => return Ok(None),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{g_word, v_word, w_word};
    use crate::wordproblem::tower::{tower, DEFAULT_BIT_CAP};

    fn w(v: &[i32]) -> Word {
        Word::from_signed(v).unwrap()
    }

    fn trivial(n: u32, word: &Word) -> bool {
        GnReducer::new(n, DEFAULT_BIT_CAP)
            .reduce(word)
            .unwrap()
            .is_identity()
    }

    #[test]
    fn basic_pinches() {
        let r = GnReducer::new(2, DEFAULT_BIT_CAP);
        // x2 x1 x2^-1 = x1^2
        assert_eq!(
            r.power_of_x1(&w(&[2, 1, -2])).unwrap(),
            Some(TowerInt::from(2))
        );
        // x2^-1 x1^2 x2 = x1
        assert_eq!(
            r.power_of_x1(&w(&[-2, 1, 1, 2])).unwrap(),
            Some(TowerInt::from(1))
        );
        // x2^-1 x1 x2 is not a power of x1
        assert_eq!(r.power_of_x1(&w(&[-2, 1, 2])).unwrap(), None);
        assert_eq!(r.power_of_x1(&w(&[2])).unwrap(), None);
        assert!(trivial(2, &w(&[2, 1, -2, -1, -1])));
        assert!(!trivial(2, &w(&[1])));
        assert!(!trivial(2, &w(&[-2, 1, 2, -1])));
    }

    #[test]
    fn powers_through_conjugation() {
        let r = GnReducer::new(2, DEFAULT_BIT_CAP);
        for k in 0..=30u32 {
            let e = r.power_of_x1(&g_word(2, k).unwrap()).unwrap().unwrap();
            assert_eq!(e, TowerInt::from(1i64 << k));
        }
        let r3 = GnReducer::new(3, DEFAULT_BIT_CAP);
        assert_eq!(
            r3.power_of_x1(&g_word(3, 3).unwrap()).unwrap(),
            Some(TowerInt::from(256))
        );
        assert_eq!(
            r3.power_of_x1(&g_word(3, 3).unwrap()).unwrap().unwrap(),
            tower(2, 3, DEFAULT_BIT_CAP)
        );
    }

    #[test]
    fn hidden_power_is_recognised() {
        // x1^2 x2 x1^-1 equals x2 in BS(1,2), so the product with x2^-1 vanishes
        // even though the reduced form has a base piece before the run.
        assert!(trivial(2, &w(&[1, 1, 2, -1, -2])));
        let r = GnReducer::new(3, DEFAULT_BIT_CAP);
        // x1^2 x2 x1^-1 = x2, so conjugating it by x3 is a pinch.
        let hidden = w(&[1, 1, 2, -1]); // = x2
        let word = Word::generator(3)
            .concat(&hidden)
            .concat(&Word::power(3, -1))
            .concat(&Word::power(2, -2));
        assert!(r.reduce(&word).unwrap().is_identity());
    }

    #[test]
    fn witnesses_are_trivial() {
        for m in 0..=20 {
            assert!(trivial(2, &w_word(m)), "w_{m}");
        }
        for n in 2..=3 {
            assert!(trivial(n, &v_word(n).unwrap()), "v_{n}");
        }
    }

    #[test]
    fn v4_needs_a_raised_cap() {
        let v4 = v_word(4).unwrap();
        assert!(GnReducer::new(4, DEFAULT_BIT_CAP).reduce(&v4).is_err());
        assert!(GnReducer::new(4, 1 << 17)
            .reduce(&v4)
            .unwrap()
            .is_identity());
    }

    #[test]
    fn stable_power_shape() {
        let r = GnReducer::new(3, DEFAULT_BIT_CAP);
        let red = r.reduce(&w(&[3, 3, 1, -3])).unwrap();
        assert_eq!(red.stable_runs(), 2);
        assert_eq!(red.level(), 3);
    }
}
