//! Language operations on DFAs. Every operation that returns a DFA returns
//! it minimal and canonically numbered, except [`concat_ideal_redirect`],
//! which returns its construction as built.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::minimize::{is_minimal, minimize};
use crate::nfa::{determinize, Label, Nfa};
use crate::transformation::Transformation;

/// Quotient complexity: the number of states of the minimal DFA.
pub fn complexity(dfa: &Dfa) -> usize {
    minimize(dfa).state_count()
}

/// Complexity of the language of each state. For a minimal input the
/// entries follow the input's own numbering; otherwise they follow the
/// numbering of `minimize(dfa)`.
pub fn quotient_complexities(dfa: &Dfa) -> Vec<usize> {
    let minimal;
    let d = if is_minimal(dfa) {
        dfa
    } else {
        minimal = minimize(dfa);
        &minimal
    };
    (0..d.state_count())
        .map(|q| complexity(&d.with_initial(q)))
        .collect()
}

/// Minimal DFA of the reversed language.
pub fn reverse(dfa: &Dfa) -> Dfa {
    minimize(&determinize(&Nfa::from_dfa(dfa).reversed()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoolOp {
    Union,
    Intersection,
    Difference,
    SymmetricDifference,
}

impl BoolOp {
    pub const ALL: [BoolOp; 4] = [
        BoolOp::Intersection,
        BoolOp::SymmetricDifference,
        BoolOp::Difference,
        BoolOp::Union,
    ];

    pub fn apply(self, left: bool, right: bool) -> bool {
        match self {
            BoolOp::Union => left || right,
            BoolOp::Intersection => left && right,
            BoolOp::Difference => left && !right,
            BoolOp::SymmetricDifference => left != right,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BoolOp::Union => "union",
            BoolOp::Intersection => "intersection",
            BoolOp::Difference => "difference",
            BoolOp::SymmetricDifference => "symmetric_difference",
        }
    }
}

impl fmt::Display for BoolOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoolOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "union" => Ok(BoolOp::Union),
            "intersection" => Ok(BoolOp::Intersection),
            "difference" => Ok(BoolOp::Difference),
            "symmetric_difference" | "xor" => Ok(BoolOp::SymmetricDifference),
            _ => Err(Error::InvalidParameters(format!(
                "unknown boolean operation {s:?}"
            ))),
        }
    }
}

fn same_alphabet(d1: &Dfa, d2: &Dfa) -> Result<()> {
    if d1.alphabet() != d2.alphabet() {
        return Err(Error::AlphabetMismatch {
            left: d1.alphabet().to_vec(),
            right: d2.alphabet().to_vec(),
        });
    }
    Ok(())
}

/// Reachable part of the direct product, with finals chosen by `op`.
/// Pairs are numbered in breadth-first order.
pub fn direct_product(d1: &Dfa, d2: &Dfa, op: BoolOp) -> Result<Dfa> {
    same_alphabet(d1, d2)?;
    let k = d1.alphabet().len();
    let start = (d1.initial(), d2.initial());
    let mut index = HashMap::from([(start, 0usize)]);
    let mut pairs = vec![start];
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let (p, q) = pairs[i];
        for (l, row) in rows.iter_mut().enumerate() {
            let next = (d1.step(p, l), d2.step(q, l));
            let j = *index.entry(next).or_insert_with(|| {
                pairs.push(next);
                queue.push_back(pairs.len() - 1);
                pairs.len() - 1
            });
            row.push(j);
        }
    }
    let delta = rows
        .into_iter()
        .map(|r| Transformation::from_images(r).expect("pair indices are in range"))
        .collect();
    let finals = pairs
        .iter()
        .enumerate()
        .filter(|(_, &(p, q))| op.apply(d1.is_final(p), d2.is_final(q)))
        .map(|(i, _)| i);
    Dfa::with_states(pairs.len(), d1.alphabet().to_vec(), delta, 0, finals)
}

/// Minimal DFA of `L(d1) op L(d2)`; both operands must share the same
/// ordered alphabet.
pub fn boolean_product(d1: &Dfa, d2: &Dfa, op: BoolOp) -> Result<Dfa> {
    Ok(minimize(&direct_product(d1, d2, op)?))
}

/// Complement over the same alphabet.
pub fn complement(dfa: &Dfa) -> Dfa {
    let finals = (0..dfa.state_count()).filter(|&q| !dfa.is_final(q));
    Dfa::with_states(
        dfa.state_count(),
        dfa.alphabet().to_vec(),
        dfa.transformations().to_vec(),
        dfa.initial(),
        finals,
    )
    .expect("complement keeps a well-formed DFA")
}

/// Disjoint union of both automata with an epsilon move from every final
/// state of `d1` to the initial state of `d2`. States of `d2` follow those
/// of `d1`.
pub fn concat_nfa(d1: &Dfa, d2: &Dfa) -> Result<Nfa> {
    same_alphabet(d1, d2)?;
    let m = d1.state_count();
    let mut nfa = Nfa::new(m + d2.state_count(), d1.alphabet().to_vec(), true);
    nfa.copy_dfa(d1, 0);
    nfa.copy_dfa(d2, m);
    for p in 0..m {
        nfa.set_final(p, false)?;
    }
    for p in d1.finals() {
        nfa.add_transition(p, Label::Epsilon, m + d2.initial())?;
    }
    nfa.add_initial(d1.initial())?;
    Ok(nfa)
}

/// Minimal DFA of `L(d1)L(d2)` by the epsilon-NFA route.
pub fn concat_epsilon(d1: &Dfa, d2: &Dfa) -> Result<Dfa> {
    Ok(minimize(&determinize(&concat_nfa(d1, d2)?)))
}

/// Product DFA for ideals with `m + n - 1` states: the final state of `d1`
/// is dropped and every transition into it is sent to the initial state of
/// `d2`. States `0..m-1` come from `d1` in order, followed by the states of
/// `d2`.
///
/// Correct when `L(d1)` is a left ideal accepted with a single final state
/// (two-sided ideals included). The result is not minimized.
pub fn concat_ideal_redirect(d1: &Dfa, d2: &Dfa) -> Result<Dfa> {
    same_alphabet(d1, d2)?;
    let finals: Vec<usize> = d1.finals().collect();
    let &[f] = finals.as_slice() else {
        return Err(Error::FinalStateCount(finals.len()));
    };
    let m = d1.state_count();
    let offset = m - 1;
    // old index of d1 -> new index (f removed)
    let rename = |p: usize| if p < f { p } else { p - 1 };
    let into_first = |p: usize| {
        if p == f {
            offset + d2.initial()
        } else {
            rename(p)
        }
    };
    let delta = (0..d1.alphabet().len())
        .map(|l| {
            let first = (0..m)
                .filter(|&p| p != f)
                .map(|p| into_first(d1.step(p, l)));
            let second = (0..d2.state_count()).map(|q| offset + d2.step(q, l));
            Transformation::from_images(first.chain(second).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    let initial = into_first(d1.initial());
    let finals = d2.finals().map(|q| offset + q);
    Dfa::with_states(
        offset + d2.state_count(),
        d1.alphabet().to_vec(),
        delta,
        initial,
        finals,
    )
}

/// Minimal DFA of `L(dfa)*` via the epsilon-NFA with a fresh accepting
/// initial state.
pub fn star_generic(dfa: &Dfa) -> Dfa {
    let n = dfa.state_count();
    let mut nfa = Nfa::new(n + 1, dfa.alphabet().to_vec(), true);
    nfa.copy_dfa(dfa, 0);
    let fresh = n;
    nfa.set_final(fresh, true).expect("fresh state exists");
    nfa.add_initial(fresh).expect("fresh state exists");
    nfa.add_transition(fresh, Label::Epsilon, dfa.initial())
        .expect("epsilon enabled");
    for p in dfa.finals() {
        nfa.add_transition(p, Label::Epsilon, dfa.initial())
            .expect("epsilon enabled");
    }
    minimize(&determinize(&nfa))
}

/// Minimal DFA of `Σ*L`: a fresh initial state looping on every letter with
/// an epsilon move into the old initial state.
pub fn sigma_star_prefix(dfa: &Dfa) -> Dfa {
    let n = dfa.state_count();
    let mut nfa = Nfa::new(n + 1, dfa.alphabet().to_vec(), true);
    nfa.copy_dfa(dfa, 0);
    let fresh = n;
    for l in 0..dfa.alphabet().len() {
        nfa.add_transition(fresh, Label::Letter(l), fresh)
            .expect("letter in range");
    }
    nfa.add_transition(fresh, Label::Epsilon, dfa.initial())
        .expect("epsilon enabled");
    nfa.add_initial(fresh).expect("fresh state exists");
    minimize(&determinize(&nfa))
}

/// Minimal DFA of `LΣ*`.
pub fn sigma_star_suffix(dfa: &Dfa) -> Dfa {
    let universal = Dfa::universal(dfa.alphabet().to_vec()).expect("one-state DFA");
    concat_epsilon(dfa, &universal).expect("same alphabet by construction")
}

/// Language equality of two minimal DFAs over the same ordered alphabet.
pub fn isomorphic(d1: &Dfa, d2: &Dfa) -> Result<bool> {
    for d in [d1, d2] {
        let minimal = complexity(d);
        if minimal != d.state_count() {
            return Err(Error::NotMinimal {
                states: d.state_count(),
                minimal,
            });
        }
    }
    Ok(d1.canonical() == d2.canonical())
}

/// Language equality for arbitrary DFAs over the same ordered alphabet.
pub fn equivalent(d1: &Dfa, d2: &Dfa) -> bool {
    minimize(d1) == minimize(d2)
}
