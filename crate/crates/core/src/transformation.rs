//! Total maps of a finite state set into itself.
//!
//! States are stored 0-based. The constructors that mirror the usual cycle
//! notation ([`Transformation::cycle`], [`Transformation::redirect`],
//! [`Transformation::collapse`]) take 1-based state labels, and
//! [`Transformation::to_one_based`] / `Display` print 1-based images.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transformation {
    images: Box<[u32]>,
}

impl Transformation {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n as u32).collect(),
        }
    }

    /// Builds a transformation from 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if let Some(&bad) = images.iter().find(|&&q| q >= n) {
            return Err(Error::StateOutOfRange { state: bad + 1, n });
        }
        Ok(Self {
            images: images.into_iter().map(|q| q as u32).collect(),
        })
    }

    /// Builds a transformation from 1-based images (`images[q-1] = qt`).
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut out = Vec::with_capacity(n);
        for &q in images {
            if q == 0 || q > n {
                return Err(Error::StateOutOfRange { state: q, n });
            }
            out.push(q - 1);
        }
        Self::from_images(out)
    }

    /// The cyclic permutation `(p_1, ..., p_k)` on `n` states, 1-based labels.
    /// A cycle of length 0 or 1 is the identity.
    pub fn cycle(n: usize, cycle: &[usize]) -> Self {
        let mut t = Self::identity(n);
        for (i, &p) in cycle.iter().enumerate() {
            let q = cycle[(i + 1) % cycle.len()];
            t.images[p - 1] = (q - 1) as u32;
        }
        t
    }

    /// `(p -> q)`: sends `p` to `q`, fixes everything else.
    pub fn redirect(n: usize, p: usize, q: usize) -> Self {
        Self::collapse(n, &[p], q)
    }

    /// `(P -> q)`: sends every state of `P` to `q`, fixes everything else.
    pub fn collapse(n: usize, set: &[usize], q: usize) -> Self {
        let mut t = Self::identity(n);
        for &p in set {
            t.images[p - 1] = (q - 1) as u32;
        }
        t
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn apply(&self, q: usize) -> usize {
        self.images[q] as usize
    }

    pub fn images(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.images.iter().map(|&q| q as usize)
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.images().map(|q| q + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images().enumerate().all(|(i, q)| i == q)
    }

    /// `self` followed by `next`: state `q` goes to `(q self) next`.
    pub fn then(&self, next: &Self) -> Self {
        debug_assert_eq!(self.len(), next.len());
        Self {
            images: self
                .images
                .iter()
                .map(|&q| next.images[q as usize])
                .collect(),
        }
    }

    /// Writes `self.then(next)` into `out`, reusing its allocation.
    pub(crate) fn then_into(&self, next: &Self, out: &mut Vec<u32>) {
        out.clear();
        out.extend(self.images.iter().map(|&q| next.images[q as usize]));
    }

    pub(crate) fn from_raw(images: Box<[u32]>) -> Self {
        Self { images }
    }

    /// Image of a state set given as a bitmask (n <= 64).
    pub fn image_mask(&self, set: u64) -> u64 {
        let mut out = 0u64;
        let mut rest = set;
        while rest != 0 {
            let q = rest.trailing_zeros() as usize;
            out |= 1 << self.images[q];
            rest &= rest - 1;
        }
        out
    }
}

impl fmt::Debug for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Transformation{:?}", self.to_one_based())
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, q) in self.images().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", q + 1)?;
        }
        f.write_str("]")
    }
}
