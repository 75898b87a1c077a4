//! Atoms: intersections of uncomplemented quotients (indexed by `S`) with
//! complemented quotients (the rest), and their complexities.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use rayon::prelude::*;

use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::ideals::IdealClass;
use crate::minimize::{is_minimal, minimize};
use crate::transformation::Transformation;

/// Largest `n` for which [`enumerate_atoms`] sweeps all `2^n` subsets.
pub const SWEEP_LIMIT: usize = 12;

/// Largest state count [`atom_dfa`] accepts (subsets are bitmasks).
pub const MASK_LIMIT: usize = 64;

/// A subset `S` of the states `{0, .., n-1}` of a minimal DFA.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomDescriptor {
    n: usize,
    mask: u64,
}

impl AtomDescriptor {
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        if n > MASK_LIMIT {
            return Err(Error::SweepLimit {
                n,
                limit: MASK_LIMIT,
            });
        }
        if n < 64 && mask >> n != 0 {
            let state = 64 - mask.leading_zeros() as usize;
            return Err(Error::StateOutOfRange { state, n });
        }
        Ok(Self { n, mask })
    }

    /// From 1-based state labels.
    pub fn from_states(n: usize, states: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        for &q in states {
            if q == 0 || q > n || q > MASK_LIMIT {
                return Err(Error::StateOutOfRange { state: q, n });
            }
            mask |= 1 << (q - 1);
        }
        Self::from_mask(n, mask)
    }

    pub fn full(n: usize) -> Self {
        Self {
            n,
            mask: full_mask(n),
        }
    }

    pub fn empty(n: usize) -> Self {
        Self { n, mask: 0 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn is_full(&self) -> bool {
        self.mask == full_mask(self.n)
    }

    /// Whether 0-based state `q` is in `S`.
    pub fn contains(&self, q: usize) -> bool {
        q < self.n && self.mask >> q & 1 == 1
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&q| self.contains(q))
            .map(|q| q + 1)
            .collect()
    }
}

impl fmt::Display for AtomDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, q) in self.to_one_based().into_iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{q}")?;
        }
        f.write_str("}")
    }
}

fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Automaton of `A_S` on pairs of subsets `(X, Y)` starting from
/// `(S, Q \ S)`; a letter maps both components through its transformation
/// and `(X, Y)` accepts iff `X ⊆ F` and `Y ∩ F = ∅`. Not minimized.
pub fn atom_automaton(dfa: &Dfa, s: &AtomDescriptor) -> Result<Dfa> {
    let n = dfa.state_count();
    if s.n() != n {
        return Err(Error::InvalidParameters(format!(
            "atom descriptor over {} states for a {n}-state DFA",
            s.n()
        )));
    }
    if n > MASK_LIMIT {
        return Err(Error::SweepLimit {
            n,
            limit: MASK_LIMIT,
        });
    }
    let finals = dfa.finals().fold(0u64, |acc, q| acc | 1 << q);
    let start = (s.mask(), full_mask(n) & !s.mask());
    let k = dfa.alphabet().len();

    let mut index = HashMap::from([(start, 0usize)]);
    let mut states = vec![start];
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let (x, y) = states[i];
        for (l, row) in rows.iter_mut().enumerate() {
            let t = dfa.transformation(l);
            let next = (t.image_mask(x), t.image_mask(y));
            let j = *index.entry(next).or_insert_with(|| {
                states.push(next);
                queue.push_back(states.len() - 1);
                states.len() - 1
            });
            row.push(j);
        }
    }
    let delta = rows
        .into_iter()
        .map(|r| Transformation::from_images(r).expect("indices are in range"))
        .collect();
    let accepting = states
        .iter()
        .enumerate()
        .filter(|(_, &(x, y))| x & !finals == 0 && y & finals == 0)
        .map(|(i, _)| i);
    Dfa::with_states(states.len(), dfa.alphabet().to_vec(), delta, 0, accepting)
}

/// Minimal DFA of the atom `A_S` (possibly the empty language).
pub fn atom_dfa(dfa: &Dfa, s: &AtomDescriptor) -> Result<Dfa> {
    Ok(minimize(&atom_automaton(dfa, s)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub subset: AtomDescriptor,
    pub complexity: usize,
}

/// All non-empty atoms with their complexities, ordered by subset mask.
/// Subsets index the states of `dfa` when it is minimal and those of
/// `minimize(dfa)` otherwise, so every state stands for a distinct quotient.
pub fn enumerate_atoms(dfa: &Dfa) -> Result<Vec<Atom>> {
    let minimal;
    let dfa = if is_minimal(dfa) {
        dfa
    } else {
        minimal = minimize(dfa);
        &minimal
    };
    let n = dfa.state_count();
    if n > SWEEP_LIMIT {
        return Err(Error::SweepLimit {
            n,
            limit: SWEEP_LIMIT,
        });
    }
    let atoms = (0..1u64 << n)
        .into_par_iter()
        .map(|mask| {
            let subset = AtomDescriptor::from_mask(n, mask)?;
            let minimal = atom_dfa(dfa, &subset)?;
            Ok((minimal.final_count() > 0).then(|| Atom {
                subset,
                complexity: minimal.state_count(),
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(atoms.into_iter().flatten().collect())
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> u128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Closed-form complexity of atom `A_S` of the class's full-alphabet witness
/// with `n` states. States of `S` are 0-based, so the 1-based `Q_n \ {1}`
/// is every state but 0.
pub fn atom_bound_formula(class: IdealClass, n: usize, s: &AtomDescriptor) -> Result<u64> {
    if n < class.min_n() {
        return Err(Error::ParameterOutOfRange {
            class: class.name(),
            n,
            min: class.min_n(),
        });
    }
    if s.n() != n {
        return Err(Error::InvalidParameters(format!(
            "atom descriptor over {} states, formula for n = {n}",
            s.n()
        )));
    }
    let size = s.len() as i64;
    let ni = n as i64;
    let double_sum = |term: &dyn Fn(i64, i64) -> u128| -> u64 {
        let mut total = 1u128;
        for x in 1..=size {
            for y in 1..=ni - size {
                total += term(x, y);
            }
        }
        total as u64
    };
    let pow2 = |e: usize| 1u64 << e;
    match class {
        IdealClass::Right => {
            if s.is_full() {
                Ok(pow2(n - 1))
            } else if s.is_empty() {
                Err(Error::CaseNotCovered {
                    class: class.name(),
                    subset: s.to_string(),
                })
            } else {
                // X holds n plus x-1 other states, Y any y of the remaining n-x
                Ok(double_sum(&|x, y| {
                    binomial(ni - 1, x - 1) * binomial(ni - x, y)
                }))
            }
        }
        IdealClass::Left => {
            if s.is_full() {
                Ok(n as u64)
            } else if s.is_empty() {
                Ok(pow2(n - 1))
            } else {
                Ok(double_sum(&|x, y| {
                    binomial(ni - 1, x) * binomial(ni - x - 1, y - 1)
                }))
            }
        }
        IdealClass::TwoSided => {
            if s.is_full() {
                Ok(n as u64)
            } else if s.mask() == full_mask(n) & !1 {
                Ok(pow2(n - 2) + n as u64 - 1)
            } else {
                Ok(double_sum(&|x, y| {
                    binomial(ni - 2, x - 1) * binomial(ni - x - 1, y - 1)
                }))
            }
        }
    }
}
