//! Inputs shared by the construction benchmarks.

use ideal_lab::ops::concat_nfa;
use ideal_lab::{apply_dialect, right_ideal_witness, Dfa, Nfa, PartialPermutation};

fn dialect(d: &Dfa, pi: &str) -> Dfa {
    let pi: PartialPermutation = pi.parse().expect("fixed dialect parses");
    apply_dialect(d, &pi)
        .expect("dialect fits")
        .sorted_alphabet()
}

/// Epsilon-NFA of the right-ideal product `L_m(a,b,-,d) L_n(a,b,-,d)`.
pub fn right_product_nfa(m: usize, n: usize) -> Nfa {
    let d1 = dialect(&right_ideal_witness(m).expect("m >= 3"), "a,b,-,d");
    let d2 = dialect(&right_ideal_witness(n).expect("n >= 3"), "a,b,-,d");
    concat_nfa(&d1, &d2).expect("same alphabet")
}

/// The witness with every state duplicated: states `q` and `q + n` have the
/// same quotient, so minimization halves it.
pub fn doubled(d: &Dfa) -> Dfa {
    let n = d.state_count();
    let delta = d
        .transformations()
        .iter()
        .enumerate()
        .map(|(l, t)| {
            let images = (0..2 * n)
                .map(|q| {
                    let p = t.apply(q % n);
                    // alternate copies so both halves stay reachable
                    if (q / n + l).is_multiple_of(2) {
                        p
                    } else {
                        p + n
                    }
                })
                .collect();
            ideal_lab::Transformation::from_images(images).expect("images in range")
        })
        .collect();
    let finals = d.finals().flat_map(|q| [q, q + n]);
    Dfa::with_states(2 * n, d.alphabet().to_vec(), delta, d.initial(), finals)
        .expect("well-formed copy")
}
