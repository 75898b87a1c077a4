//! Expected complexity of every measure for the three ideal witness streams,
//! together with the dialects each measurement is taken on.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::atoms::{atom_bound_formula, AtomDescriptor};
use crate::error::{Error, Result};
use crate::ops::BoolOp;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdealClass {
    Right,
    Left,
    TwoSided,
}

impl IdealClass {
    pub const ALL: [IdealClass; 3] = [IdealClass::Right, IdealClass::Left, IdealClass::TwoSided];

    pub fn name(self) -> &'static str {
        match self {
            IdealClass::Right => "right",
            IdealClass::Left => "left",
            IdealClass::TwoSided => "two_sided",
        }
    }

    pub fn min_n(self) -> usize {
        match self {
            IdealClass::Right => 3,
            IdealClass::Left => 4,
            IdealClass::TwoSided => 5,
        }
    }
}

impl fmt::Display for IdealClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdealClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "right" => Ok(IdealClass::Right),
            "left" => Ok(IdealClass::Left),
            "two_sided" | "two-sided" | "twosided" => Ok(IdealClass::TwoSided),
            _ => Err(Error::InvalidParameters(format!("unknown class {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Measure {
    Semigroup,
    QuotientProfile,
    AtomCount,
    AtomComplexity,
    Reversal,
    Star,
    Product,
    Intersection,
    SymmetricDifference,
    Difference,
    Union,
}

impl Measure {
    pub const ALL: [Measure; 11] = [
        Measure::Semigroup,
        Measure::QuotientProfile,
        Measure::AtomCount,
        Measure::AtomComplexity,
        Measure::Reversal,
        Measure::Star,
        Measure::Product,
        Measure::Intersection,
        Measure::SymmetricDifference,
        Measure::Difference,
        Measure::Union,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Semigroup => "semigroup",
            Measure::QuotientProfile => "quotient_profile",
            Measure::AtomCount => "atom_count",
            Measure::AtomComplexity => "atom_complexity",
            Measure::Reversal => "reversal",
            Measure::Star => "star",
            Measure::Product => "product",
            Measure::Intersection => "intersection",
            Measure::SymmetricDifference => "symmetric_difference",
            Measure::Difference => "difference",
            Measure::Union => "union",
        }
    }

    pub fn boolean(self) -> Option<BoolOp> {
        match self {
            Measure::Intersection => Some(BoolOp::Intersection),
            Measure::SymmetricDifference => Some(BoolOp::SymmetricDifference),
            Measure::Difference => Some(BoolOp::Difference),
            Measure::Union => Some(BoolOp::Union),
            _ => None,
        }
    }

    pub fn is_binary(self) -> bool {
        self == Measure::Product || self.boolean().is_some()
    }
}

impl From<BoolOp> for Measure {
    fn from(op: BoolOp) -> Self {
        match op {
            BoolOp::Intersection => Measure::Intersection,
            BoolOp::SymmetricDifference => Measure::SymmetricDifference,
            BoolOp::Difference => Measure::Difference,
            BoolOp::Union => Measure::Union,
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.replace('-', "_");
        Measure::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown measure {s:?}")))
    }
}

/// Which operand pair a binary boolean measurement uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Pairing {
    /// The stream against its dialect stream.
    Dialect,
    /// The stream against itself; only meaningful for `m != n`.
    SameStream,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Expected {
    Count(u64),
    Profile(Vec<u64>),
}

#[derive(Clone, Copy, Debug)]
pub enum Formula {
    Unary(fn(u64) -> u64),
    Binary(fn(u64, u64) -> u64),
    Profile(fn(u64) -> Vec<u64>),
    /// Evaluated per atom by [`atom_bound_formula`].
    PerAtom,
}

#[derive(Clone, Copy, Debug)]
pub struct BoundEntry {
    pub class: IdealClass,
    pub measure: Measure,
    pub formula: Formula,
    /// Dialect of the (first) operand, `None` for the full alphabet.
    pub dialect: Option<&'static str>,
    /// Dialect of the second operand of binary measures.
    pub second_dialect: Option<&'static str>,
}

fn pow(b: u64, e: u64) -> u64 {
    b.saturating_pow(e as u32)
}

fn n_minus_one_ones(n: u64) -> Vec<u64> {
    let mut v = vec![n; n as usize - 1];
    v.push(1);
    v
}

macro_rules! entry {
    ($class:ident, $measure:ident, $formula:expr, $d1:expr, $d2:expr) => {
        BoundEntry {
            class: IdealClass::$class,
            measure: Measure::$measure,
            formula: $formula,
            dialect: $d1,
            second_dialect: $d2,
        }
    };
}

use Formula::{Binary, PerAtom, Profile, Unary};

/// One entry per (class, measure).
pub static BOUND_TABLE: [BoundEntry; 33] = [
    entry!(Right, Semigroup, Unary(|n| pow(n, n - 1)), None, None),
    entry!(
        Right,
        QuotientProfile,
        Profile(n_minus_one_ones),
        Some("a,-,-,d"),
        None
    ),
    entry!(
        Right,
        AtomCount,
        Unary(|n| pow(2, n - 1)),
        Some("a,-,-,d"),
        None
    ),
    entry!(Right, AtomComplexity, PerAtom, None, None),
    entry!(
        Right,
        Reversal,
        Unary(|n| pow(2, n - 1)),
        Some("a,-,-,d"),
        None
    ),
    entry!(Right, Star, Unary(|n| n + 1), Some("a,-,-,d"), None),
    entry!(
        Right,
        Product,
        Binary(|m, n| m + pow(2, n - 2)),
        Some("a,b,-,d"),
        Some("a,b,-,d")
    ),
    entry!(
        Right,
        Intersection,
        Binary(|m, n| m * n),
        Some("a,b,-,d"),
        Some("b,a,-,d")
    ),
    entry!(
        Right,
        SymmetricDifference,
        Binary(|m, n| m * n),
        Some("a,b,-,d"),
        Some("b,a,-,d")
    ),
    entry!(
        Right,
        Difference,
        Binary(|m, n| m * n - (m - 1)),
        Some("a,b,-,d"),
        Some("b,a,-,d")
    ),
    entry!(
        Right,
        Union,
        Binary(|m, n| m * n - (m + n - 2)),
        Some("a,b,-,d"),
        Some("b,a,-,d")
    ),
    entry!(
        Left,
        Semigroup,
        Unary(|n| pow(n, n - 1) + n - 1),
        None,
        None
    ),
    entry!(
        Left,
        QuotientProfile,
        Profile(|n| vec![n; n as usize]),
        Some("a,-,-,d,e"),
        None
    ),
    entry!(
        Left,
        AtomCount,
        Unary(|n| pow(2, n - 1) + 1),
        Some("a,-,c,d,e"),
        None
    ),
    entry!(Left, AtomComplexity, PerAtom, None, None),
    entry!(
        Left,
        Reversal,
        Unary(|n| pow(2, n - 1) + 1),
        Some("a,-,c,d,e"),
        None
    ),
    entry!(Left, Star, Unary(|n| n + 1), Some("a,-,-,-,e"), None),
    entry!(
        Left,
        Product,
        Binary(|m, n| m + n - 1),
        Some("a,-,-,-,e"),
        Some("a,-,-,-,e")
    ),
    entry!(
        Left,
        Intersection,
        Binary(|m, n| m * n),
        Some("a,-,c,-,e"),
        Some("a,-,e,-,c")
    ),
    entry!(
        Left,
        SymmetricDifference,
        Binary(|m, n| m * n),
        Some("a,-,c,-,e"),
        Some("a,-,e,-,c")
    ),
    entry!(
        Left,
        Difference,
        Binary(|m, n| m * n),
        Some("a,-,c,-,e"),
        Some("a,-,e,-,c")
    ),
    entry!(
        Left,
        Union,
        Binary(|m, n| m * n),
        Some("a,-,c,-,e"),
        Some("a,-,e,-,c")
    ),
    entry!(
        TwoSided,
        Semigroup,
        Unary(|n| pow(n, n - 2) + (n - 2) * pow(2, n - 2) + 1),
        None,
        None
    ),
    entry!(
        TwoSided,
        QuotientProfile,
        Profile(n_minus_one_ones),
        Some("a,-,-,d,e,f"),
        None
    ),
    entry!(
        TwoSided,
        AtomCount,
        Unary(|n| pow(2, n - 2) + 1),
        Some("a,-,-,d,e,f"),
        None
    ),
    entry!(TwoSided, AtomComplexity, PerAtom, None, None),
    entry!(
        TwoSided,
        Reversal,
        Unary(|n| pow(2, n - 2) + 1),
        Some("a,-,-,d,e,f"),
        None
    ),
    entry!(TwoSided, Star, Unary(|n| n + 1), Some("a,-,-,-,e,f"), None),
    entry!(
        TwoSided,
        Product,
        Binary(|m, n| m + n - 1),
        Some("a,-,-,-,e,f"),
        Some("a,-,-,-,e,f")
    ),
    entry!(
        TwoSided,
        Intersection,
        Binary(|m, n| m * n),
        Some("a,b,-,d,e,f"),
        Some("b,a,-,d,e,f")
    ),
    entry!(
        TwoSided,
        SymmetricDifference,
        Binary(|m, n| m * n),
        Some("a,b,-,d,e,f"),
        Some("b,a,-,d,e,f")
    ),
    entry!(
        TwoSided,
        Difference,
        Binary(|m, n| m * n - (m - 1)),
        Some("a,b,-,d,e,f"),
        Some("b,a,-,d,e,f")
    ),
    entry!(
        TwoSided,
        Union,
        Binary(|m, n| m * n - (m + n - 2)),
        Some("a,b,-,d,e,f"),
        Some("b,a,-,d,e,f")
    ),
];

pub fn entry(class: IdealClass, measure: Measure) -> Result<&'static BoundEntry> {
    BOUND_TABLE
        .iter()
        .find(|e| e.class == class && e.measure == measure)
        .ok_or(Error::UnknownBound {
            class: class.name(),
            measure: measure.name(),
        })
}

fn check_range(class: IdealClass, what: &str, v: usize) -> Result<()> {
    if v < class.min_n() {
        return Err(Error::InvalidParameters(format!(
            "{class} ideals need {what} >= {}, got {v}",
            class.min_n()
        )));
    }
    Ok(())
}

/// Expected value of `measure` for the class's witness stream. Binary
/// measures need `m`; atom complexities go through [`expected_atom`].
pub fn expected(
    class: IdealClass,
    measure: Measure,
    m: Option<usize>,
    n: usize,
) -> Result<Expected> {
    let e = entry(class, measure)?;
    check_range(class, "n", n)?;
    let n64 = n as u64;
    match e.formula {
        Unary(f) => Ok(Expected::Count(f(n64))),
        Profile(f) => Ok(Expected::Profile(f(n64))),
        Binary(f) => {
            let m = m.ok_or_else(|| {
                Error::InvalidParameters(format!("{measure} needs a first-operand size m"))
            })?;
            check_range(class, "m", m)?;
            Ok(Expected::Count(f(m as u64, n64)))
        }
        PerAtom => Err(Error::InvalidParameters(
            "atom_complexity is per atom; use expected_atom".into(),
        )),
    }
}

pub fn expected_atom(class: IdealClass, n: usize, s: &AtomDescriptor) -> Result<Expected> {
    Ok(Expected::Count(atom_bound_formula(class, n, s)?))
}

/// Expected value of a boolean measure when both operands come from the
/// same stream. Defined for right and two-sided ideals with `m != n`,
/// where it coincides with the dialect-pair bound.
pub fn same_stream_expected(class: IdealClass, op: BoolOp, m: usize, n: usize) -> Result<Expected> {
    if class == IdealClass::Left {
        return Err(Error::UnknownBound {
            class: class.name(),
            measure: "same-stream boolean",
        });
    }
    if m == n {
        return Err(Error::InvalidParameters(
            "same-stream boolean bounds require m != n".into(),
        ));
    }
    expected(class, op.into(), Some(m), n)
}

/// Dialect used for both operands of a same-stream boolean measurement.
pub fn same_stream_dialect(class: IdealClass) -> Option<&'static str> {
    match class {
        IdealClass::Right => Some("a,b,-,d"),
        IdealClass::TwoSided => Some("a,b,-,d,e,f"),
        IdealClass::Left => None,
    }
}
