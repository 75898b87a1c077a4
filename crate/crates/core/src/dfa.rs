//! Complete deterministic automata and their JSON interchange form.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::transformation::Transformation;

/// A complete DFA over an ordered alphabet. Each letter carries a total
/// [`Transformation`] of the state set, so completeness is structural.
///
/// States are 0-based in the Rust API; the JSON form is 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dfa {
    alphabet: Vec<char>,
    delta: Vec<Transformation>,
    initial: usize,
    finals: Vec<bool>,
}

impl Dfa {
    pub fn new(
        alphabet: Vec<char>,
        delta: Vec<Transformation>,
        initial: usize,
        finals: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let n = match delta.first() {
            Some(t) => t.len(),
            None => return Err(Error::NoStates),
        };
        Self::with_states(n, alphabet, delta, initial, finals)
    }

    /// Like [`Dfa::new`] but takes the state count explicitly, which is
    /// required when the alphabet is empty.
    pub fn with_states(
        n: usize,
        alphabet: Vec<char>,
        delta: Vec<Transformation>,
        initial: usize,
        finals: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoStates);
        }
        check_alphabet(&alphabet)?;
        if delta.len() != alphabet.len() {
            return Err(Error::InvalidJson(format!(
                "{} letters but {} transformations",
                alphabet.len(),
                delta.len()
            )));
        }
        if let Some(t) = delta.iter().find(|t| t.len() != n) {
            return Err(Error::TransformationLength {
                expected: n,
                got: t.len(),
            });
        }
        if initial >= n {
            return Err(Error::StateOutOfRange {
                state: initial + 1,
                n,
            });
        }
        let mut flags = vec![false; n];
        for q in finals {
            if q >= n {
                return Err(Error::StateOutOfRange { state: q + 1, n });
            }
            flags[q] = true;
        }
        Ok(Self {
            alphabet,
            delta,
            initial,
            finals: flags,
        })
    }

    /// One-state DFA accepting every word over `alphabet`.
    pub fn universal(alphabet: Vec<char>) -> Result<Self> {
        let delta = vec![Transformation::identity(1); alphabet.len()];
        Self::with_states(1, alphabet, delta, 0, [0])
    }

    /// One-state DFA accepting nothing.
    pub fn empty_language(alphabet: Vec<char>) -> Result<Self> {
        let delta = vec![Transformation::identity(1); alphabet.len()];
        Self::with_states(1, alphabet, delta, 0, [])
    }

    pub fn state_count(&self) -> usize {
        self.finals.len()
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn letter_index(&self, letter: char) -> Option<usize> {
        self.alphabet.iter().position(|&l| l == letter)
    }

    pub fn transformations(&self) -> &[Transformation] {
        &self.delta
    }

    pub fn transformation(&self, letter: usize) -> &Transformation {
        &self.delta[letter]
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn finals(&self) -> impl Iterator<Item = usize> + '_ {
        self.finals
            .iter()
            .enumerate()
            .filter_map(|(q, &f)| f.then_some(q))
    }

    pub fn final_count(&self) -> usize {
        self.finals.iter().filter(|&&f| f).count()
    }

    #[inline]
    pub fn step(&self, q: usize, letter: usize) -> usize {
        self.delta[letter].apply(q)
    }

    /// Runs a word of letter indices from state `q`.
    pub fn run_from(&self, q: usize, word: &[usize]) -> usize {
        word.iter().fold(q, |p, &l| self.step(p, l))
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        self.finals[self.run_from(self.initial, word)]
    }

    pub fn accepts_str(&self, word: &str) -> Result<bool> {
        let indices = word
            .chars()
            .map(|c| self.letter_index(c).ok_or(Error::UnknownLetter(c)))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.accepts(&indices))
    }

    /// Transformation induced by a word (identity for the empty word).
    pub fn word_transformation(&self, word: &[usize]) -> Transformation {
        word.iter()
            .fold(Transformation::identity(self.state_count()), |t, &l| {
                t.then(&self.delta[l])
            })
    }

    /// Same automaton re-rooted at `q`; its language is the quotient of `q`.
    pub fn with_initial(&self, q: usize) -> Self {
        assert!(q < self.state_count(), "state {q} out of range");
        Self {
            initial: q,
            ..self.clone()
        }
    }

    /// Replaces one transition; used for negative controls.
    pub fn with_transition(&self, letter: usize, from: usize, to: usize) -> Result<Self> {
        let n = self.state_count();
        if from >= n || to >= n {
            return Err(Error::StateOutOfRange {
                state: from.max(to) + 1,
                n,
            });
        }
        let mut images: Vec<usize> = self.delta[letter].images().collect();
        images[from] = to;
        let mut out = self.clone();
        out.delta[letter] = Transformation::from_images(images)?;
        Ok(out)
    }

    /// Re-orders letters lexicographically, keeping each letter's
    /// transformation. Operand alignment for binary operations goes through
    /// this.
    pub fn sorted_alphabet(&self) -> Self {
        let mut order: Vec<usize> = (0..self.alphabet.len()).collect();
        order.sort_by_key(|&i| self.alphabet[i]);
        Self {
            alphabet: order.iter().map(|&i| self.alphabet[i]).collect(),
            delta: order.iter().map(|&i| self.delta[i].clone()).collect(),
            ..self.clone()
        }
    }

    /// States reachable from the initial state, in breadth-first order with
    /// letters explored in alphabet order.
    pub fn reachable_order(&self) -> Vec<usize> {
        let n = self.state_count();
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(q) = queue.pop_front() {
            order.push(q);
            for t in &self.delta {
                let p = t.apply(q);
                if !seen[p] {
                    seen[p] = true;
                    queue.push_back(p);
                }
            }
        }
        order
    }

    /// Renumbers reachable states in breadth-first order and drops the rest.
    pub fn canonical(&self) -> CanonicalDfa {
        let order = self.reachable_order();
        let mut rename = vec![usize::MAX; self.state_count()];
        for (i, &q) in order.iter().enumerate() {
            rename[q] = i;
        }
        let delta = self
            .delta
            .iter()
            .map(|t| {
                let images = order.iter().map(|&q| rename[t.apply(q)]).collect();
                Transformation::from_images(images).expect("renaming is total on reachable states")
            })
            .collect();
        CanonicalDfa(Self {
            alphabet: self.alphabet.clone(),
            delta,
            initial: 0,
            finals: order.iter().map(|&q| self.finals[q]).collect(),
        })
    }

    pub fn to_json(&self) -> DfaJson {
        DfaJson {
            states: self.state_count(),
            alphabet: self.alphabet.iter().map(|c| c.to_string()).collect(),
            transitions: self
                .alphabet
                .iter()
                .zip(&self.delta)
                .map(|(c, t)| (c.to_string(), t.to_one_based()))
                .collect(),
            initial: self.initial + 1,
            finals: self.finals().map(|q| q + 1).collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("DFA JSON serialization is infallible")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: DfaJson = serde_json::from_str(s)?;
        raw.try_into()
    }
}

fn check_alphabet(alphabet: &[char]) -> Result<()> {
    for (i, &c) in alphabet.iter().enumerate() {
        if alphabet[..i].contains(&c) {
            return Err(Error::DuplicateLetter(c));
        }
    }
    Ok(())
}

/// A DFA renumbered by breadth-first traversal from its initial state.
/// Two minimal DFAs over the same ordered alphabet accept the same language
/// iff their canonical forms are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalDfa(Dfa);

impl CanonicalDfa {
    pub fn as_dfa(&self) -> &Dfa {
        &self.0
    }

    pub fn into_dfa(self) -> Dfa {
        self.0
    }
}

/// Interchange shape: `{"states", "alphabet", "transitions", "initial", "finals"}`
/// with 1-based states, transitions keyed by letter and finals ascending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DfaJson {
    pub states: usize,
    pub alphabet: Vec<String>,
    pub transitions: BTreeMap<String, Vec<usize>>,
    pub initial: usize,
    pub finals: Vec<usize>,
}

impl TryFrom<DfaJson> for Dfa {
    type Error = Error;

    fn try_from(raw: DfaJson) -> Result<Self> {
        let n = raw.states;
        let mut alphabet = Vec::with_capacity(raw.alphabet.len());
        for s in &raw.alphabet {
            let mut chars = s.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => alphabet.push(c),
                _ => {
                    return Err(Error::InvalidJson(format!(
                        "letter {s:?} is not a single character"
                    )))
                }
            }
        }
        if raw.transitions.len() != alphabet.len() {
            return Err(Error::InvalidJson(format!(
                "{} transition rows for {} letters",
                raw.transitions.len(),
                alphabet.len()
            )));
        }
        let mut delta = Vec::with_capacity(alphabet.len());
        for s in &raw.alphabet {
            let row = raw
                .transitions
                .get(s)
                .ok_or_else(|| Error::InvalidJson(format!("no transitions for letter {s:?}")))?;
            if row.len() != n {
                return Err(Error::TransformationLength {
                    expected: n,
                    got: row.len(),
                });
            }
            delta.push(Transformation::from_one_based(row)?);
        }
        let one_based = |q: usize| {
            if q == 0 || q > n {
                Err(Error::StateOutOfRange { state: q, n })
            } else {
                Ok(q - 1)
            }
        };
        let initial = one_based(raw.initial)?;
        let finals = raw
            .finals
            .iter()
            .map(|&q| one_based(q))
            .collect::<Result<Vec<_>>>()?;
        Dfa::with_states(n, alphabet, delta, initial, finals)
    }
}
