//! Transition semigroups by breadth-first closure of the letter
//! transformations.

use std::collections::HashMap;

use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::minimize::minimize;
use crate::transformation::Transformation;

/// Upper bound on any default cap.
pub const MAX_DEFAULT_CAP: usize = 10_000_000;

/// `2 * n^(n-1) + n`, clamped to [`MAX_DEFAULT_CAP`].
pub fn default_cap(n: usize) -> usize {
    let n64 = n as u64;
    let bound = n64
        .checked_pow(n.saturating_sub(1) as u32)
        .and_then(|p| p.checked_mul(2))
        .and_then(|p| p.checked_add(n64))
        .unwrap_or(u64::MAX);
    bound.min(MAX_DEFAULT_CAP as u64) as usize
}

/// The set of transformations induced by non-empty words.
#[derive(Clone, Debug)]
pub struct SemigroupClosure {
    elements: Vec<Transformation>,
    // (parent element, letter); parent is None for generators
    origin: Vec<(Option<usize>, usize)>,
    index: HashMap<Transformation, usize>,
}

impl SemigroupClosure {
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Transformation] {
        &self.elements
    }

    pub fn contains(&self, t: &Transformation) -> bool {
        self.index.contains_key(t)
    }

    pub fn contains_identity(&self) -> bool {
        self.elements.iter().any(Transformation::is_identity)
    }

    /// A shortest word (letter indices) inducing element `i`.
    pub fn witness_word(&self, i: usize) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = Some(i);
        while let Some(j) = cur {
            let (parent, letter) = self.origin[j];
            word.push(letter);
            cur = parent;
        }
        word.reverse();
        word
    }
}

/// Closure of `generators` under composition. Generator `i` is reported as
/// letter `i` in witness words.
pub fn closure(generators: &[Transformation], cap: usize) -> Result<SemigroupClosure> {
    let mut elements: Vec<Transformation> = Vec::new();
    let mut origin = Vec::new();
    let mut index: HashMap<Transformation, usize> = HashMap::new();

    let overflow = |reached| Error::SemigroupCap { cap, reached };

    for (l, g) in generators.iter().enumerate() {
        if !index.contains_key(g) {
            if elements.len() == cap {
                return Err(overflow(cap + 1));
            }
            index.insert(g.clone(), elements.len());
            elements.push(g.clone());
            origin.push((None, l));
        }
    }

    let mut buf = Vec::new();
    let mut next = 0;
    while next < elements.len() {
        for (l, g) in generators.iter().enumerate() {
            elements[next].then_into(g, &mut buf);
            let candidate = Transformation::from_raw(buf.as_slice().into());
            if index.contains_key(&candidate) {
                continue;
            }
            if elements.len() == cap {
                return Err(overflow(cap + 1));
            }
            index.insert(candidate.clone(), elements.len());
            elements.push(candidate);
            origin.push((Some(next), l));
        }
        next += 1;
    }

    Ok(SemigroupClosure {
        elements,
        origin,
        index,
    })
}

/// Transition semigroup of `dfa` as given (not minimized).
pub fn transition_semigroup(dfa: &Dfa, cap: usize) -> Result<SemigroupClosure> {
    if cap == 0 {
        return Err(Error::InvalidParameters(
            "semigroup cap must be positive".into(),
        ));
    }
    closure(dfa.transformations(), cap)
}

/// Size of the syntactic semigroup, i.e. of the transition semigroup of the
/// minimal DFA, with the default cap.
pub fn syntactic_semigroup_size(dfa: &Dfa) -> Result<usize> {
    let minimal = minimize(dfa);
    let cap = default_cap(minimal.state_count());
    Ok(transition_semigroup(&minimal, cap)?.size())
}

pub fn syntactic_semigroup_size_with_cap(dfa: &Dfa, cap: usize) -> Result<usize> {
    Ok(transition_semigroup(&minimize(dfa), cap)?.size())
}
