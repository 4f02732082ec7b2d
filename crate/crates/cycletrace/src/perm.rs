use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{0, 1, …, n-1}`, stored as its image table.
///
/// Composition is right-to-left: `a.compose(&b)` maps `i` to `a(b(i))`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// The transposition swapping `a` and `b` on `{0, …, n-1}`.
    ///
    /// Panics on out-of-range or equal arguments; callers resolve labels first.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        assert!(
            a < n && b < n && a != b,
            "bad transposition ({a} {b}) on [{n}]"
        );
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Permutation { images }
    }

    /// Builds from an image table, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            if img >= n || seen[img] {
                return Err(Error::InternalVerificationFailure(format!(
                    "image table {images:?} is not a permutation"
                )));
            }
            seen[img] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self ∘ other`: `other` acts first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    /// Swaps the images of `a` and `b` in place; equivalent to
    /// left-multiplying by the transposition `(a b)`.
    pub(crate) fn swap_images_of(&mut self, a: usize, b: usize) {
        debug_assert!(a != b);
        self.images.swap(a, b);
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img] = i;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i == img)
    }

    /// Canonical cycle decomposition: cycles sorted by minimum element, each
    /// rotated to start at its minimum; 1-cycles (fixed points) included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.images[start];
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.images[cur];
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Number of orbits on `{0, …, n-1}`, fixed points included.
    pub fn orbit_count(&self) -> usize {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = self.images[cur];
            }
        }
        count
    }

    /// Cycle lengths sorted descending (the cycle type, 1-cycles included).
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lengths: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    /// True iff the permutation is a single cycle through all `n` points.
    pub fn is_full_cycle(&self) -> bool {
        self.degree() >= 1 && self.orbit_count() == 1
    }

    pub fn fixed_points(&self) -> impl Iterator<Item = usize> + '_ {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &img)| *i == img)
            .map(|(i, _)| i)
    }

    pub fn has_fixed_point(&self) -> bool {
        self.fixed_points().next().is_some()
    }

    /// +1 for even permutations, −1 for odd ones.
    pub fn sign(&self) -> i8 {
        let transposition_count: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transposition_count.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

/// Canonical cycle notation on 1-based points, fixed points omitted;
/// the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nontrivial: Vec<Vec<usize>> =
            self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if nontrivial.is_empty() {
            return write!(f, "()");
        }
        for cycle in nontrivial {
            write!(f, "(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{self}]")
    }
}
