//! Permutations and arbitrary self-maps of `[0, n)`.
//!
//! Both are stored as image arrays. Composition is written left to right:
//! `f.then(&g)` maps `x` to `g(f(x))`, which is how right translations compose
//! when a quandle element is acted on repeatedly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A self-map of `[0, n)` with repeats allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Transformation {
    images: Vec<usize>,
}

/// A bijection of `[0, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Transformation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if let Some(&bad) = images.iter().find(|&&x| x >= n) {
            return Err(Error::IndexOutOfRange { index: bad, size: n });
        }
        Ok(Self { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        Self { images }
    }

    pub fn identity(n: usize) -> Self {
        Self { images: (0..n).collect() }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `x ↦ other(self(x))`.
    pub fn then(&self, other: &Self) -> Self {
        Self { images: self.images.iter().map(|&x| other.images[x]).collect() }
    }

    pub fn is_idempotent(&self) -> bool {
        self.images.iter().all(|&x| self.images[x] == x)
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.images.len()];
        for &x in &self.images {
            if seen[x] {
                return false;
            }
            seen[x] = true;
        }
        true
    }

    /// Sorted image set.
    pub fn image(&self) -> Vec<usize> {
        let mut img = self.images.clone();
        img.sort_unstable();
        img.dedup();
        img
    }

    pub fn to_permutation(&self) -> Option<Permutation> {
        self.is_bijective().then(|| Permutation { images: self.images.clone() })
    }
}

impl AsRef<[usize]> for Transformation {
    fn as_ref(&self) -> &[usize] {
        &self.images
    }
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let t = Transformation::new(images)?;
        if !t.is_bijective() {
            return Err(Error::Precondition("image array is not a bijection".into()));
        }
        Ok(Self { images: t.images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        Self { images }
    }

    pub fn identity(n: usize) -> Self {
        Self { images: (0..n).collect() }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn then(&self, other: &Self) -> Self {
        Self { images: self.images.iter().map(|&x| other.images[x]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Self { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Cycle decomposition, each cycle starting at its smallest point,
    /// fixed points included as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn as_transformation(&self) -> Transformation {
        Transformation { images: self.images.clone() }
    }
}

impl AsRef<[usize]> for Permutation {
    fn as_ref(&self) -> &[usize] {
        &self.images
    }
}
