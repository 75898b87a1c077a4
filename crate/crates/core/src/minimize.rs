//! Hopcroft partition refinement.

use crate::dfa::Dfa;
use crate::transformation::Transformation;

/// Minimal complete DFA for the language of `dfa`, in canonical
/// (breadth-first) numbering. Unreachable states are dropped first.
pub fn minimize(dfa: &Dfa) -> Dfa {
    let order = dfa.reachable_order();
    let n = order.len();
    let k = dfa.alphabet().len();

    let mut local = vec![usize::MAX; dfa.state_count()];
    for (i, &q) in order.iter().enumerate() {
        local[q] = i;
    }
    let trans: Vec<Vec<usize>> = dfa
        .transformations()
        .iter()
        .map(|t| order.iter().map(|&q| local[t.apply(q)]).collect())
        .collect();
    let is_final: Vec<bool> = order.iter().map(|&q| dfa.is_final(q)).collect();

    // Inverse transitions per letter in CSR layout.
    let inverse: Vec<(Vec<usize>, Vec<usize>)> = trans
        .iter()
        .map(|row| {
            let mut start = vec![0usize; n + 1];
            for &p in row {
                start[p + 1] += 1;
            }
            for i in 0..n {
                start[i + 1] += start[i];
            }
            let mut fill = start.clone();
            let mut preds = vec![0usize; n];
            for (q, &p) in row.iter().enumerate() {
                preds[fill[p]] = q;
                fill[p] += 1;
            }
            (start, preds)
        })
        .collect();

    let mut partition = Partition::new(&is_final);
    let mut pending: Vec<(usize, usize)> = Vec::new();
    let mut in_work: Vec<Vec<bool>> = vec![vec![false; k]; partition.blocks.len()];
    if partition.blocks.len() == 2 {
        let smaller = if partition.size(0) <= partition.size(1) {
            0
        } else {
            1
        };
        in_work[smaller].fill(true);
        pending.extend((0..k).map(|l| (smaller, l)));
    }

    let mut splitter = Vec::new();
    let mut touched = Vec::new();
    while let Some((b, l)) = pending.pop() {
        in_work[b][l] = false;
        splitter.clear();
        splitter.extend_from_slice(partition.members(b));
        let (start, preds) = &inverse[l];
        for &s in &splitter {
            for &p in &preds[start[s]..start[s + 1]] {
                partition.mark(p, &mut touched);
            }
        }
        for y in touched.drain(..) {
            let Some((new, marked_size, rest_size)) = partition.split(y) else {
                continue;
            };
            in_work.push(vec![false; k]);
            #[allow(clippy::needless_range_loop)]
            for c in 0..k {
                let target = if in_work[y][c] || marked_size <= rest_size {
                    new
                } else {
                    y
                };
                if !in_work[target][c] {
                    in_work[target][c] = true;
                    pending.push((target, c));
                }
            }
        }
    }

    let blocks = partition.blocks.len();
    let delta = trans
        .iter()
        .map(|row| {
            let images = (0..blocks)
                .map(|b| partition.block_of[row[partition.representative(b)]])
                .collect();
            Transformation::from_images(images).expect("block indices are in range")
        })
        .collect();
    let finals = (0..blocks).filter(|&b| is_final[partition.representative(b)]);
    let quotient = Dfa::with_states(
        blocks,
        dfa.alphabet().to_vec(),
        delta,
        partition.block_of[0],
        finals,
    )
    .expect("quotient automaton is well formed");
    quotient.canonical().into_dfa()
}

/// True iff every state is reachable and no two states are equivalent.
pub fn is_minimal(dfa: &Dfa) -> bool {
    minimize(dfa).state_count() == dfa.state_count()
}

struct Partition {
    elems: Vec<usize>,
    loc: Vec<usize>,
    block_of: Vec<usize>,
    blocks: Vec<(usize, usize)>,
    marked: Vec<usize>,
}

impl Partition {
    fn new(is_final: &[bool]) -> Self {
        let n = is_final.len();
        let mut elems: Vec<usize> = (0..n).filter(|&q| is_final[q]).collect();
        let finals = elems.len();
        elems.extend((0..n).filter(|&q| !is_final[q]));
        let mut loc = vec![0; n];
        for (i, &q) in elems.iter().enumerate() {
            loc[q] = i;
        }
        let mut blocks = Vec::new();
        let mut block_of = vec![0; n];
        if finals > 0 {
            blocks.push((0, finals));
        }
        if finals < n {
            let id = blocks.len();
            blocks.push((finals, n));
            for &q in &elems[finals..] {
                block_of[q] = id;
            }
        }
        let marked = vec![0; blocks.len()];
        Self {
            elems,
            loc,
            block_of,
            blocks,
            marked,
        }
    }

    fn size(&self, b: usize) -> usize {
        self.blocks[b].1 - self.blocks[b].0
    }

    fn members(&self, b: usize) -> &[usize] {
        let (s, e) = self.blocks[b];
        &self.elems[s..e]
    }

    fn representative(&self, b: usize) -> usize {
        self.elems[self.blocks[b].0]
    }

    /// Moves `q` into the marked prefix of its block.
    fn mark(&mut self, q: usize, touched: &mut Vec<usize>) {
        let y = self.block_of[q];
        let boundary = self.blocks[y].0 + self.marked[y];
        let pos = self.loc[q];
        if pos < boundary {
            return;
        }
        let other = self.elems[boundary];
        self.elems.swap(pos, boundary);
        self.loc[other] = pos;
        self.loc[q] = boundary;
        if self.marked[y] == 0 {
            touched.push(y);
        }
        self.marked[y] += 1;
    }

    /// Splits the marked prefix of `y` into a new block. Returns the new
    /// block id with the sizes of the marked and unmarked parts, or `None`
    /// when the whole block was marked.
    fn split(&mut self, y: usize) -> Option<(usize, usize, usize)> {
        let (start, end) = self.blocks[y];
        let m = std::mem::take(&mut self.marked[y]);
        if m == end - start {
            return None;
        }
        let new = self.blocks.len();
        self.blocks.push((start, start + m));
        self.blocks[y] = (start + m, end);
        self.marked.push(0);
        for &q in &self.elems[start..start + m] {
            self.block_of[q] = new;
        }
        Some((new, m, end - start - m))
    }
}
