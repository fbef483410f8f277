//! Reduced words in a free product of two factor groups amalgamated over
//! their intersection, generic over the factor implementation.
//!
//! A word is a finite letter sequence; the represented group element is the
//! composition with the rightmost letter applied first. Reduction merges
//! adjacent letters from the same factor, drops identities, and folds
//! amalgam members into a neighbor, yielding the alternating normal form.

use std::fmt;

use crate::error::{Error, Result};

/// Capabilities required of a factor group's elements.
///
/// Both factors share one element representation; the letter's tag says
/// which factor the element is read in. `compose` follows the word order:
/// `a.compose(b)` is the element acting as `b` first, then `a`.
pub trait FactorElement: Clone + PartialEq {
    fn compose(&self, rhs: &Self) -> Self;
    fn invert(&self) -> Self;
    fn is_identity(&self) -> bool;

    /// Membership in the amalgamated subgroup (the factor intersection).
    /// The default is the trivial amalgam.
    fn is_in_amalgam(&self) -> bool {
        self.is_identity()
    }
}

/// Which free factor a letter belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FactorTag {
    First,
    Second,
}

impl FactorTag {
    pub fn other(self) -> FactorTag {
        match self {
            FactorTag::First => FactorTag::Second,
            FactorTag::Second => FactorTag::First,
        }
    }
}

/// One factor-tagged letter.
#[derive(Clone, PartialEq, Debug)]
pub struct Letter<E> {
    pub tag: FactorTag,
    pub elem: E,
}

impl<E> Letter<E> {
    pub fn new(tag: FactorTag, elem: E) -> Self {
        Letter { tag, elem }
    }

    pub fn first(elem: E) -> Self {
        Letter { tag: FactorTag::First, elem }
    }

    pub fn second(elem: E) -> Self {
        Letter { tag: FactorTag::Second, elem }
    }
}

/// A word over the two factors; not necessarily reduced.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct Word<E> {
    letters: Vec<Letter<E>>,
}

impl<E: FactorElement> Word<E> {
    pub fn identity() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn from_letters(letters: Vec<Letter<E>>) -> Self {
        Word { letters }
    }

    pub fn single(letter: Letter<E>) -> Self {
        Word { letters: vec![letter] }
    }

    pub fn letters(&self) -> &[Letter<E>] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Plain concatenation, no reduction.
    pub fn concat(&self, rhs: &Word<E>) -> Word<E> {
        let mut letters = self.letters.clone();
        letters.extend(rhs.letters.iter().cloned());
        Word { letters }
    }

    /// Reverses letter order and inverts each element.
    pub fn inverse(&self) -> Word<E> {
        Word {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter::new(l.tag, l.elem.invert()))
                .collect(),
        }
    }

    /// `self^n` for n >= 0, reduced after each factor.
    pub fn pow(&self, n: usize) -> Word<E> {
        let mut acc = Word::identity();
        for _ in 0..n {
            acc = acc.concat(self).reduce();
        }
        acc
    }

    /// The reduced form: same group element, alternating non-identity
    /// letters, amalgam members folded away. Idempotent.
    pub fn reduce(&self) -> Word<E> {
        let mut out: Vec<Letter<E>> = Vec::with_capacity(self.letters.len());
        for letter in &self.letters {
            if letter.elem.is_identity() {
                continue;
            }
            let mut cur = letter.clone();
            loop {
                let Some(top) = out.last() else {
                    out.push(cur);
                    break;
                };
                let mergeable = top.tag == cur.tag
                    || top.elem.is_in_amalgam()
                    || cur.elem.is_in_amalgam();
                if !mergeable {
                    out.push(cur);
                    break;
                }
                // an amalgam member composes inside either factor, so the
                // merged letter keeps the tag of the genuine-factor side
                let tag = if top.elem.is_in_amalgam() { cur.tag } else { top.tag };
                let merged = top.elem.compose(&cur.elem);
                out.pop();
                if merged.is_identity() {
                    break;
                }
                cur = Letter::new(tag, merged);
            }
        }
        Word { letters: out }
    }

    /// Validates the reduced-form invariants on this word as stored.
    pub fn is_reduced(&self) -> bool {
        for (i, l) in self.letters.iter().enumerate() {
            if l.elem.is_identity() {
                return false;
            }
            if self.letters.len() > 1 && l.elem.is_in_amalgam() {
                return false;
            }
            if i > 0 && self.letters[i - 1].tag == l.tag {
                return false;
            }
        }
        true
    }

    /// Letter count of the reduced form; 0 exactly for the identity.
    pub fn length(&self) -> usize {
        self.reduce().letters.len()
    }

    /// A reduced word is cyclically reduced when its length is at most 1 or
    /// its first and last letters carry different tags.
    pub fn is_cyclically_reduced(&self) -> bool {
        let r = self.reduce();
        match (r.letters.first(), r.letters.last()) {
            (Some(a), Some(b)) if r.letters.len() > 1 => a.tag != b.tag,
            _ => true,
        }
    }

    /// Splits `w = c · core · c⁻¹` with `core` cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word<E>, Word<E>) {
        let mut conj: Vec<Letter<E>> = Vec::new();
        let mut core = self.reduce().letters;
        while core.len() >= 2 && core.first().unwrap().tag == core.last().unwrap().tag {
            let first = core.remove(0);
            let last = core.pop().unwrap();
            // w = first · u · last  =  first · (u · (last∘first)) · first⁻¹
            let merged = last.elem.compose(&first.elem);
            if !merged.is_identity() {
                core.push(Letter::new(first.tag, merged));
            }
            conj.push(first);
            core = Word { letters: core }.reduce().letters;
        }
        (Word { letters: conj }, Word { letters: core })
    }

    /// When the element is conjugate into a single factor (or trivial),
    /// returns `(c, letter)` with `c⁻¹ · w · c` equal to the letter
    /// (`None` letter meaning the identity). Returns `None` when the cyclic
    /// core has length >= 2, so no such conjugation exists.
    pub fn conjugate_into_factor(&self) -> Option<(Word<E>, Option<Letter<E>>)> {
        let (conj, core) = self.cyclic_reduce();
        if core.letters.len() <= 1 {
            Some((conj, core.letters.into_iter().next()))
        } else {
            None
        }
    }
}

/// Result of the commuting-parity comparison of two words.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ParityReport {
    pub len_a: usize,
    pub len_b: usize,
    pub parity_match: bool,
}

/// Checks that two commuting words of positive length have lengths of equal
/// parity. The commuting precondition is verified structurally, not assumed.
pub fn parity_check<E: FactorElement>(a: &Word<E>, b: &Word<E>) -> Result<ParityReport> {
    let ab = a.concat(b).reduce();
    let ba = b.concat(a).reduce();
    if ab != ba {
        return Err(Error::NotCommuting);
    }
    let len_a = a.length();
    let len_b = b.length();
    if len_a == 0 || len_b == 0 {
        return Err(Error::Precondition("parity check requires lengths >= 1".into()));
    }
    Ok(ParityReport { len_a, len_b, parity_match: len_a % 2 == len_b % 2 })
}

impl<E: FactorElement + fmt::Display> fmt::Display for Word<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "(identity)");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let tag = match l.tag {
                FactorTag::First => "O1",
                FactorTag::Second => "O2",
            };
            write!(f, "{tag}[{}]", l.elem)?;
        }
        Ok(())
    }
}
