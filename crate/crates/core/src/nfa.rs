//! Nondeterministic automata with optional epsilon moves, and the subset
//! construction.

use std::collections::{HashMap, VecDeque};

use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::transformation::Transformation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Letter(usize),
    Epsilon,
}

#[derive(Clone, Debug)]
pub struct Nfa {
    alphabet: Vec<char>,
    epsilon_allowed: bool,
    // succ[state][letter], sorted and deduplicated
    succ: Vec<Vec<Vec<usize>>>,
    eps: Vec<Vec<usize>>,
    initials: Vec<usize>,
    finals: Vec<bool>,
}

impl Nfa {
    pub fn new(n: usize, alphabet: Vec<char>, epsilon_allowed: bool) -> Self {
        let k = alphabet.len();
        Self {
            alphabet,
            epsilon_allowed,
            succ: vec![vec![Vec::new(); k]; n],
            eps: vec![Vec::new(); n],
            initials: Vec::new(),
            finals: vec![false; n],
        }
    }

    /// Reinterprets a DFA as an NFA without epsilon moves.
    pub fn from_dfa(dfa: &Dfa) -> Self {
        let mut nfa = Self::new(dfa.state_count(), dfa.alphabet().to_vec(), false);
        nfa.copy_dfa(dfa, 0);
        nfa.initials.push(dfa.initial());
        nfa
    }

    /// Copies `dfa`'s transitions and final flags onto states
    /// `offset..offset + dfa.state_count()`. Initial states are not touched.
    pub(crate) fn copy_dfa(&mut self, dfa: &Dfa, offset: usize) {
        for q in 0..dfa.state_count() {
            for l in 0..dfa.alphabet().len() {
                self.succ[offset + q][l].push(offset + dfa.step(q, l));
            }
            self.finals[offset + q] = dfa.is_final(q);
        }
    }

    pub fn state_count(&self) -> usize {
        self.finals.len()
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn initials(&self) -> &[usize] {
        &self.initials
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    fn check_state(&self, q: usize) -> Result<()> {
        if q >= self.state_count() {
            Err(Error::StateOutOfRange {
                state: q + 1,
                n: self.state_count(),
            })
        } else {
            Ok(())
        }
    }

    pub fn add_transition(&mut self, from: usize, label: Label, to: usize) -> Result<()> {
        self.check_state(from)?;
        self.check_state(to)?;
        let list = match label {
            Label::Letter(l) => {
                if l >= self.alphabet.len() {
                    return Err(Error::InvalidJson(format!("letter index {l} out of range")));
                }
                &mut self.succ[from][l]
            }
            Label::Epsilon => {
                if !self.epsilon_allowed {
                    return Err(Error::EpsilonNotAllowed);
                }
                &mut self.eps[from]
            }
        };
        if let Err(pos) = list.binary_search(&to) {
            list.insert(pos, to);
        }
        Ok(())
    }

    pub fn add_initial(&mut self, q: usize) -> Result<()> {
        self.check_state(q)?;
        if !self.initials.contains(&q) {
            self.initials.push(q);
        }
        Ok(())
    }

    pub fn set_final(&mut self, q: usize, is_final: bool) -> Result<()> {
        self.check_state(q)?;
        self.finals[q] = is_final;
        Ok(())
    }

    pub fn successors(&self, q: usize, letter: usize) -> &[usize] {
        &self.succ[q][letter]
    }

    pub fn epsilon_successors(&self, q: usize) -> &[usize] {
        &self.eps[q]
    }

    /// Epsilon closure of a set, returned sorted.
    pub fn epsilon_closure(&self, set: &[usize]) -> Vec<usize> {
        let mut in_set = vec![false; self.state_count()];
        let mut stack: Vec<usize> = Vec::with_capacity(set.len());
        for &q in set {
            if !in_set[q] {
                in_set[q] = true;
                stack.push(q);
            }
        }
        while let Some(q) = stack.pop() {
            for &p in &self.eps[q] {
                if !in_set[p] {
                    in_set[p] = true;
                    stack.push(p);
                }
            }
        }
        in_set
            .iter()
            .enumerate()
            .filter_map(|(q, &b)| b.then_some(q))
            .collect()
    }

    /// Swaps the direction of every transition and the roles of initial and
    /// final states.
    pub fn reversed(&self) -> Self {
        let n = self.state_count();
        let mut out = Self::new(n, self.alphabet.clone(), self.epsilon_allowed);
        for q in 0..n {
            for (l, targets) in self.succ[q].iter().enumerate() {
                for &p in targets {
                    out.succ[p][l].push(q);
                }
            }
            for &p in &self.eps[q] {
                out.eps[p].push(q);
            }
        }
        for row in out.succ.iter_mut() {
            for list in row.iter_mut() {
                list.sort_unstable();
                list.dedup();
            }
        }
        for list in out.eps.iter_mut() {
            list.sort_unstable();
            list.dedup();
        }
        out.initials = (0..n).filter(|&q| self.finals[q]).collect();
        for &q in &self.initials {
            out.finals[q] = true;
        }
        out
    }
}

/// Subset construction over reachable subsets. The empty subset appears as
/// an explicit sink whenever it is reachable, so the result is complete.
/// Subsets are numbered in breadth-first discovery order.
pub fn determinize(nfa: &Nfa) -> Dfa {
    let k = nfa.alphabet.len();
    let start = nfa.epsilon_closure(&nfa.initials);

    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut queue = VecDeque::new();

    index.insert(start.clone(), 0);
    subsets.push(start);
    queue.push_back(0);

    let mut in_step = vec![false; nfa.state_count()];
    let mut step = Vec::new();
    while let Some(i) = queue.pop_front() {
        for (l, row) in rows.iter_mut().enumerate() {
            step.clear();
            for &q in &subsets[i] {
                for &p in &nfa.succ[q][l] {
                    if !in_step[p] {
                        in_step[p] = true;
                        step.push(p);
                    }
                }
            }
            for &p in &step {
                in_step[p] = false;
            }
            let target = nfa.epsilon_closure(&step);
            let j = match index.get(&target) {
                Some(&j) => j,
                None => {
                    let j = subsets.len();
                    index.insert(target.clone(), j);
                    subsets.push(target);
                    queue.push_back(j);
                    j
                }
            };
            debug_assert_eq!(row.len(), i);
            row.push(j);
        }
    }

    let n = subsets.len();
    let delta = rows
        .into_iter()
        .map(|row| Transformation::from_images(row).expect("subset indices are in range"))
        .collect();
    let finals = subsets
        .iter()
        .enumerate()
        .filter(|(_, s)| s.iter().any(|&q| nfa.finals[q]))
        .map(|(i, _)| i);
    Dfa::with_states(n, nfa.alphabet.clone(), delta, 0, finals)
        .expect("subset construction yields a well-formed DFA")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// NFA over {a,b} for words whose second-to-last letter is `a`.
    fn second_to_last_a() -> Nfa {
        let mut nfa = Nfa::new(3, vec!['a', 'b'], false);
        nfa.add_transition(0, Label::Letter(0), 0).unwrap();
        nfa.add_transition(0, Label::Letter(1), 0).unwrap();
        nfa.add_transition(0, Label::Letter(0), 1).unwrap();
        nfa.add_transition(1, Label::Letter(0), 2).unwrap();
        nfa.add_transition(1, Label::Letter(1), 2).unwrap();
        nfa.add_initial(0).unwrap();
        nfa.set_final(2, true).unwrap();
        nfa
    }

    #[test]
    fn subset_construction_counts() {
        let d = determinize(&second_to_last_a());
        assert_eq!(d.state_count(), 4);
        for (w, expect) in [
            ("ab", true),
            ("aa", true),
            ("ba", false),
            ("bab", true),
            ("", false),
        ] {
            assert_eq!(d.accepts_str(w).unwrap(), expect, "{w}");
        }
    }

    #[test]
    fn empty_initial_set_gives_sink() {
        let mut nfa = Nfa::new(2, vec!['a'], false);
        nfa.set_final(1, true).unwrap();
        let d = determinize(&nfa);
        assert_eq!(d.state_count(), 1);
        assert_eq!(d.final_count(), 0);
    }

    #[test]
    fn epsilon_requires_flag() {
        let mut nfa = Nfa::new(2, vec!['a'], false);
        assert!(matches!(
            nfa.add_transition(0, Label::Epsilon, 1),
            Err(Error::EpsilonNotAllowed)
        ));
        let mut nfa = Nfa::new(2, vec!['a'], true);
        nfa.add_transition(0, Label::Epsilon, 1).unwrap();
        nfa.add_initial(0).unwrap();
        nfa.set_final(1, true).unwrap();
        assert!(determinize(&nfa).accepts(&[]));
    }

    #[test]
    fn explicit_sink_when_transitions_missing() {
        let mut nfa = Nfa::new(2, vec!['a', 'b'], false);
        nfa.add_transition(0, Label::Letter(0), 1).unwrap();
        nfa.add_initial(0).unwrap();
        nfa.set_final(1, true).unwrap();
        let d = determinize(&nfa);
        // {1}, {2}, {}
        assert_eq!(d.state_count(), 3);
        assert!(d.accepts(&[0]));
        assert!(!d.accepts(&[1]));
        assert!(!d.accepts(&[0, 0]));
    }

    #[test]
    fn out_of_range_rejected() {
        let mut nfa = Nfa::new(2, vec!['a'], false);
        assert!(nfa.add_transition(0, Label::Letter(0), 2).is_err());
        assert!(nfa.add_transition(0, Label::Letter(1), 1).is_err());
        assert!(nfa.add_initial(5).is_err());
    }
}
