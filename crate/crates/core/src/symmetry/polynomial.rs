use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::quandle::Quandle;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Term {
    pub r: usize,
    pub c: usize,
    pub mult: usize,
}

/// `Σ_x s^{r(x)} t^{c(x)}` with `r(x) = |{y : x ▷ y = x}|` and
/// `c(x) = |{y : y ▷ x = y}|`, kept as a sorted term list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QuandlePolynomial {
    terms: Vec<Term>,
}

impl QuandlePolynomial {
    /// Collects `(r, c)` exponent pairs, one per element.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for p in pairs {
            *counts.entry(p).or_default() += 1;
        }
        Self { terms: counts.into_iter().map(|((r, c), mult)| Term { r, c, mult }).collect() }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Total multiplicity, equal to the quandle's size.
    pub fn degree_count(&self) -> usize {
        self.terms.iter().map(|t| t.mult).sum()
    }
}

impl fmt::Display for QuandlePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for t in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if t.mult != 1 {
                write!(f, "{}", t.mult)?;
            }
            write!(f, "s^{}t^{}", t.r, t.c)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

pub fn quandle_polynomial(x: &Quandle) -> QuandlePolynomial {
    let n = x.size();
    QuandlePolynomial::from_pairs((0..n).map(|e| {
        let r = (0..n).filter(|&y| x.op(e, y) == e).count();
        let c = (0..n).filter(|&y| x.op(y, e) == y).count();
        (r, c)
    }))
}
