//! Witness DFA streams for regular languages and for right, left and
//! two-sided ideals, plus permutational dialects.

use std::fmt;
use std::str::FromStr;

use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::ideals::IdealClass;
use crate::minimize::minimize;
use crate::ops::{isomorphic, sigma_star_prefix, sigma_star_suffix};
use crate::transformation::Transformation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StreamClass {
    Regular,
    Right,
    Left,
    TwoSided,
}

impl StreamClass {
    pub fn name(self) -> &'static str {
        match self {
            StreamClass::Regular => "regular",
            StreamClass::Right => "right",
            StreamClass::Left => "left",
            StreamClass::TwoSided => "two_sided",
        }
    }

    /// Smallest `n` for which the stream is defined.
    pub fn min_n(self) -> usize {
        match self {
            StreamClass::Regular | StreamClass::Right => 3,
            StreamClass::Left => 4,
            StreamClass::TwoSided => 5,
        }
    }

    pub fn alphabet(self) -> &'static str {
        match self {
            StreamClass::Regular => "abc",
            StreamClass::Right => "abcd",
            StreamClass::Left => "abcde",
            StreamClass::TwoSided => "abcdef",
        }
    }

    /// The ideal class of the stream; `None` for the regular stream.
    pub fn ideal_class(self) -> Option<IdealClass> {
        match self {
            StreamClass::Regular => None,
            StreamClass::Right => Some(IdealClass::Right),
            StreamClass::Left => Some(IdealClass::Left),
            StreamClass::TwoSided => Some(IdealClass::TwoSided),
        }
    }

    pub fn witness(self, n: usize) -> Result<Dfa> {
        match self {
            StreamClass::Regular => regular_witness(n),
            StreamClass::Right => right_ideal_witness(n),
            StreamClass::Left => left_ideal_witness(n),
            StreamClass::TwoSided => two_sided_witness(n),
        }
    }
}

impl From<IdealClass> for StreamClass {
    fn from(c: IdealClass) -> Self {
        match c {
            IdealClass::Right => StreamClass::Right,
            IdealClass::Left => StreamClass::Left,
            IdealClass::TwoSided => StreamClass::TwoSided,
        }
    }
}

impl fmt::Display for StreamClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StreamClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "regular" => Ok(StreamClass::Regular),
            other => other.parse::<IdealClass>().map(Into::into),
        }
    }
}

fn check_n(class: StreamClass, n: usize) -> Result<()> {
    if n < class.min_n() {
        return Err(Error::ParameterOutOfRange {
            class: class.name(),
            n,
            min: class.min_n(),
        });
    }
    Ok(())
}

fn build(class: StreamClass, n: usize, delta: Vec<Transformation>) -> Result<Dfa> {
    Dfa::new(class.alphabet().chars().collect(), delta, 0, [n - 1])
}

/// `a: (1,...,n)`, `b: (1,2)`, `c: (n -> 1)`; final state `n`.
pub fn regular_witness(n: usize) -> Result<Dfa> {
    check_n(StreamClass::Regular, n)?;
    let all: Vec<usize> = (1..=n).collect();
    build(
        StreamClass::Regular,
        n,
        vec![
            Transformation::cycle(n, &all),
            Transformation::cycle(n, &[1, 2]),
            Transformation::redirect(n, n, 1),
        ],
    )
}

/// `a: (1,...,n-1)`, `b: (2,...,n-1)`, `c: (n-1 -> 1)`, `d: (n-1 -> n)`.
pub fn right_ideal_witness(n: usize) -> Result<Dfa> {
    check_n(StreamClass::Right, n)?;
    let head: Vec<usize> = (1..n).collect();
    build(
        StreamClass::Right,
        n,
        vec![
            Transformation::cycle(n, &head),
            Transformation::cycle(n, &head[1..]),
            Transformation::redirect(n, n - 1, 1),
            Transformation::redirect(n, n - 1, n),
        ],
    )
}

/// `a: (2,...,n)`, `b: (2,3)`, `c: (n -> 2)`, `d: (n -> 1)`, `e: (Q_n -> 2)`.
pub fn left_ideal_witness(n: usize) -> Result<Dfa> {
    check_n(StreamClass::Left, n)?;
    let tail: Vec<usize> = (2..=n).collect();
    let all: Vec<usize> = (1..=n).collect();
    build(
        StreamClass::Left,
        n,
        vec![
            Transformation::cycle(n, &tail),
            Transformation::cycle(n, &[2, 3]),
            Transformation::redirect(n, n, 2),
            Transformation::redirect(n, n, 1),
            Transformation::collapse(n, &all, 2),
        ],
    )
}

/// `a: (2,...,n-1)`, `b: (2,3)`, `c: (n-1 -> 2)`, `d: (n-1 -> 1)`,
/// `e: (Q_{n-1} -> 2)`, `f: (2 -> n)`.
pub fn two_sided_witness(n: usize) -> Result<Dfa> {
    check_n(StreamClass::TwoSided, n)?;
    let middle: Vec<usize> = (2..n).collect();
    let head: Vec<usize> = (1..n).collect();
    build(
        StreamClass::TwoSided,
        n,
        vec![
            Transformation::cycle(n, &middle),
            Transformation::cycle(n, &[2, 3]),
            Transformation::redirect(n, n - 1, 2),
            Transformation::redirect(n, n - 1, 1),
            Transformation::collapse(n, &head, 2),
            Transformation::redirect(n, 2, n),
        ],
    )
}

/// A partial permutation of an ordered alphabet, one slot per letter;
/// `None` is an undefined slot (written `-`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialPermutation {
    slots: Vec<Option<char>>,
}

impl PartialPermutation {
    pub fn new(slots: Vec<Option<char>>) -> Result<Self> {
        let defined: Vec<char> = slots.iter().flatten().copied().collect();
        for (i, &c) in defined.iter().enumerate() {
            if defined[..i].contains(&c) {
                return Err(Error::DuplicateDialectImage(c));
            }
        }
        Ok(Self { slots })
    }

    pub fn identity(alphabet: &[char]) -> Self {
        Self {
            slots: alphabet.iter().map(|&c| Some(c)).collect(),
        }
    }

    pub fn slots(&self) -> &[Option<char>] {
        &self.slots
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }
}

impl FromStr for PartialPermutation {
    type Err = Error;

    /// Parses `a,b,-,d`. `−` (U+2212) is accepted as an undefined slot.
    fn from_str(s: &str) -> Result<Self> {
        let slots = s
            .split(',')
            .map(|part| {
                let part = part.trim();
                let mut chars = part.chars();
                match (chars.next(), chars.next()) {
                    (Some('-' | '−'), None) => Ok(None),
                    (Some(c), None) => Ok(Some(c)),
                    _ => Err(Error::InvalidDialect(format!("bad slot {part:?} in {s:?}"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(slots)
    }
}

impl fmt::Display for PartialPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, slot) in self.slots.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            match slot {
                Some(c) => write!(f, "{c}")?,
                None => f.write_str("-")?,
            }
        }
        Ok(())
    }
}

/// The dialect DFA: letter `pi(a_i)` induces the transformation of `a_i`;
/// undefined slots drop their letter. Defined images keep slot order, so
/// `(b,a,-,d)` yields the alphabet `(b,a,d)`.
pub fn apply_dialect(dfa: &Dfa, pi: &PartialPermutation) -> Result<Dfa> {
    if pi.len() != dfa.alphabet().len() {
        return Err(Error::DialectLength {
            expected: dfa.alphabet().len(),
            got: pi.len(),
        });
    }
    let mut alphabet = Vec::new();
    let mut delta = Vec::new();
    for (i, slot) in pi.slots().iter().enumerate() {
        let Some(c) = *slot else { continue };
        if !dfa.alphabet().contains(&c) {
            return Err(Error::InvalidDialect(format!(
                "image {c:?} is not in the alphabet {:?}",
                dfa.alphabet()
            )));
        }
        if alphabet.contains(&c) {
            return Err(Error::DuplicateDialectImage(c));
        }
        alphabet.push(c);
        delta.push(dfa.transformation(i).clone());
    }
    Dfa::with_states(
        dfa.state_count(),
        alphabet,
        delta,
        dfa.initial(),
        dfa.finals(),
    )
}

/// A witness of a given stream, optionally restricted to a dialect.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessSpec {
    pub class: StreamClass,
    pub n: usize,
    pub dialect: Option<PartialPermutation>,
}

impl WitnessSpec {
    pub fn new(class: StreamClass, n: usize, dialect: Option<&str>) -> Result<Self> {
        check_n(class, n)?;
        let dialect = dialect.map(str::parse).transpose()?;
        Ok(Self { class, n, dialect })
    }

    pub fn build(&self) -> Result<Dfa> {
        let full = self.class.witness(self.n)?;
        match &self.dialect {
            Some(pi) => apply_dialect(&full, pi),
            None => Ok(full),
        }
    }
}

/// Whether `L(dfa)` is a non-empty ideal of the given class, decided by
/// comparing the minimal DFAs of `L` and of `LΣ*`, `Σ*L` or `Σ*LΣ*`.
pub fn check_ideal(dfa: &Dfa, class: IdealClass) -> bool {
    let minimal = minimize(dfa);
    if minimal.final_count() == 0 {
        return false;
    }
    let closed = match class {
        IdealClass::Right => sigma_star_suffix(&minimal),
        IdealClass::Left => sigma_star_prefix(&minimal),
        IdealClass::TwoSided => sigma_star_suffix(&sigma_star_prefix(&minimal)),
    };
    isomorphic(&closed, &minimal).expect("both operands are minimal")
}

/// Structural right-ideal test: the minimal DFA has exactly one final
/// state and every letter fixes it.
pub fn is_right_ideal_structural(dfa: &Dfa) -> bool {
    let minimal = minimize(dfa);
    let finals: Vec<usize> = minimal.finals().collect();
    match finals.as_slice() {
        &[f] => minimal.transformations().iter().all(|t| t.apply(f) == f),
        _ => false,
    }
}
