//! Independent reference implementations used by the integration suites.
//! Nothing here calls the library's minimizer, subset construction or
//! semigroup closure.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use ideal_lab::{BoolOp, Dfa, Label, Nfa, Transformation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const LETTERS: [char; 3] = ['a', 'b', 'c'];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_dfa(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Dfa {
    let delta = (0..k)
        .map(|_| {
            Transformation::from_images((0..n).map(|_| rng.gen_range(0..n)).collect()).unwrap()
        })
        .collect();
    let finals: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
    Dfa::with_states(n, LETTERS[..k].to_vec(), delta, rng.gen_range(0..n), finals).unwrap()
}

pub fn random_nfa(rng: &mut ChaCha8Rng, n: usize, k: usize, epsilon: bool) -> Nfa {
    let mut nfa = Nfa::new(n, LETTERS[..k].to_vec(), epsilon);
    for p in 0..n {
        for q in 0..n {
            for l in 0..k {
                if rng.gen_bool(0.2) {
                    nfa.add_transition(p, Label::Letter(l), q).unwrap();
                }
            }
            if epsilon && p != q && rng.gen_bool(0.1) {
                nfa.add_transition(p, Label::Epsilon, q).unwrap();
            }
        }
        if rng.gen_bool(0.35) {
            nfa.set_final(p, true).unwrap();
        }
    }
    nfa.add_initial(rng.gen_range(0..n)).unwrap();
    if rng.gen_bool(0.3) {
        nfa.add_initial(rng.gen_range(0..n)).unwrap();
    }
    nfa
}

/// Seeded corpus of DFAs with 1..=6 states over 1..=3 letters.
pub fn corpus(seed: u64, count: usize) -> Vec<Dfa> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let n = r.gen_range(1..=6);
            let k = r.gen_range(1..=3);
            random_dfa(&mut r, n, k)
        })
        .collect()
}

/// Every word over `k` letters of length at most `max_len`, shortest first.
pub fn words(k: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut start = 0;
    for _ in 0..max_len {
        let end = out.len();
        for i in start..end {
            for l in 0..k {
                let mut w = out[i].clone();
                w.push(l);
                out.push(w);
            }
        }
        start = end;
    }
    out
}

pub fn run(d: &Dfa, q: usize, w: &[usize]) -> usize {
    let mut p = q;
    for &l in w {
        p = d.transformation(l).apply(p);
    }
    p
}

pub fn accepts(d: &Dfa, w: &[usize]) -> bool {
    d.is_final(run(d, d.initial(), w))
}

fn close(nfa: &Nfa, set: &mut BTreeSet<usize>) {
    let mut stack: Vec<usize> = set.iter().copied().collect();
    while let Some(p) = stack.pop() {
        for &q in nfa.epsilon_successors(p) {
            if set.insert(q) {
                stack.push(q);
            }
        }
    }
}

/// Direct set simulation of an NFA.
pub fn nfa_accepts(nfa: &Nfa, w: &[usize]) -> bool {
    let mut cur: BTreeSet<usize> = nfa.initials().iter().copied().collect();
    close(nfa, &mut cur);
    for &l in w {
        let mut next = BTreeSet::new();
        for &p in &cur {
            next.extend(nfa.successors(p, l).iter().copied());
        }
        close(nfa, &mut next);
        cur = next;
    }
    cur.iter().any(|&q| nfa.is_final(q))
}

pub fn concat_accepts(d1: &Dfa, d2: &Dfa, w: &[usize]) -> bool {
    (0..=w.len()).any(|i| accepts(d1, &w[..i]) && accepts(d2, &w[i..]))
}

pub fn star_accepts(d: &Dfa, w: &[usize]) -> bool {
    let mut ok = vec![false; w.len() + 1];
    ok[0] = true;
    for j in 1..=w.len() {
        ok[j] = (0..j).any(|i| ok[i] && accepts(d, &w[i..j]));
    }
    ok[w.len()]
}

pub fn reverse_accepts(d: &Dfa, w: &[usize]) -> bool {
    let r: Vec<usize> = w.iter().rev().copied().collect();
    accepts(d, &r)
}

fn reachable(d: &Dfa) -> Vec<usize> {
    let k = d.alphabet().len();
    let mut seen = vec![false; d.state_count()];
    let mut out = vec![d.initial()];
    seen[d.initial()] = true;
    let mut queue = VecDeque::from([d.initial()]);
    while let Some(p) = queue.pop_front() {
        for l in 0..k {
            let q = d.transformation(l).apply(p);
            if !seen[q] {
                seen[q] = true;
                out.push(q);
                queue.push_back(q);
            }
        }
    }
    out
}

/// Number of Nerode classes among reachable states by the table-filling
/// algorithm.
pub fn table_filling_complexity(d: &Dfa) -> usize {
    let states = reachable(d);
    let n = d.state_count();
    let k = d.alphabet().len();
    let mut marked = vec![vec![false; n]; n];
    for &p in &states {
        for &q in &states {
            marked[p][q] = d.is_final(p) != d.is_final(q);
        }
    }
    loop {
        let mut changed = false;
        for &p in &states {
            for &q in &states {
                if marked[p][q] {
                    continue;
                }
                let split = (0..k).any(|l| {
                    let t = d.transformation(l);
                    marked[t.apply(p)][t.apply(q)]
                });
                if split {
                    marked[p][q] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    states
        .iter()
        .enumerate()
        .filter(|&(i, &q)| states[..i].iter().all(|&p| marked[p][q]))
        .count()
}

/// Full `m * n` product built without the library's product routine.
pub fn product_dfa(d1: &Dfa, d2: &Dfa, op: BoolOp) -> Dfa {
    let (m, n) = (d1.state_count(), d2.state_count());
    let delta = (0..d1.alphabet().len())
        .map(|l| {
            let images = (0..m * n)
                .map(|i| {
                    let (p, q) = (i / n, i % n);
                    d1.transformation(l).apply(p) * n + d2.transformation(l).apply(q)
                })
                .collect();
            Transformation::from_images(images).unwrap()
        })
        .collect();
    let finals = (0..m * n).filter(|&i| op.apply(d1.is_final(i / n), d2.is_final(i % n)));
    Dfa::with_states(
        m * n,
        d1.alphabet().to_vec(),
        delta,
        d1.initial() * n + d2.initial(),
        finals,
    )
    .unwrap()
}

/// All transformations induced by non-empty words, by growing word length
/// until a level adds nothing.
pub fn word_semigroup(gens: &[Transformation]) -> HashSet<Vec<usize>> {
    let gens: Vec<Vec<usize>> = gens.iter().map(|t| t.images().collect()).collect();
    let mut all: HashSet<Vec<usize>> = gens.iter().cloned().collect();
    let mut level: Vec<Vec<usize>> = all.iter().cloned().collect();
    while !level.is_empty() {
        let mut next = Vec::new();
        for t in &level {
            for g in &gens {
                let u: Vec<usize> = t.iter().map(|&q| g[q]).collect();
                if all.insert(u.clone()) {
                    next.push(u);
                }
            }
        }
        level = next;
    }
    all
}

/// Every map of `{0..n-1}` into itself.
pub fn all_transformations(n: usize) -> HashSet<Vec<usize>> {
    let mut out = HashSet::new();
    let total = n.pow(n as u32);
    for mut code in 0..total {
        let mut t = Vec::with_capacity(n);
        for _ in 0..n {
            t.push(code % n);
            code /= n;
        }
        out.insert(t);
    }
    out
}

/// Membership agreement on every word up to `max_len`.
pub fn same_words(d1: &Dfa, d2: &Dfa, max_len: usize) -> bool {
    assert_eq!(d1.alphabet(), d2.alphabet());
    words(d1.alphabet().len(), max_len)
        .iter()
        .all(|w| accepts(d1, w) == accepts(d2, w))
}

/// Subset `{q : w in K_q}` as a 0-based bitmask.
pub fn word_atom(d: &Dfa, w: &[usize]) -> u64 {
    (0..d.state_count())
        .filter(|&q| d.is_final(run(d, q, w)))
        .fold(0, |acc, q| acc | 1 << q)
}

/// `wa` stays in `L` for every member `w`: no non-final state is reachable
/// from a reachable final one.
pub fn right_closed(d: &Dfa) -> bool {
    let states = reachable(d);
    states
        .iter()
        .filter(|&&p| d.is_final(p))
        .all(|&p| reachable(&d.with_initial(p)).iter().all(|&q| d.is_final(q)))
}

/// `aw` stays in `L` for every member `w`: for each letter, the pair
/// automaton started at `(i, ia)` never reaches (final, non-final).
pub fn left_closed(d: &Dfa) -> bool {
    let k = d.alphabet().len();
    (0..k).all(|a| {
        let start = (d.initial(), d.transformation(a).apply(d.initial()));
        let mut seen = HashSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some((p, q)) = queue.pop_front() {
            if d.is_final(p) && !d.is_final(q) {
                return false;
            }
            for l in 0..k {
                let t = d.transformation(l);
                let next = (t.apply(p), t.apply(q));
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        true
    })
}

pub fn nonempty(d: &Dfa) -> bool {
    reachable(d).iter().any(|&q| d.is_final(q))
}
