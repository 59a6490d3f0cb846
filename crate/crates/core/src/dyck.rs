//! Dyck paths and the Catalan matroid.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::linalg::binomial;
use crate::matroid::{LabelSet, Matroid};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DyckError {
    #[error("expected a set of size {expected}, got {actual}")]
    BadCardinality { expected: usize, actual: usize },
    #[error("step sequence is not a Dyck path")]
    NotDyck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    Up,
    Down,
}

/// A Dyck path of length `2n`, holding both its step word and its upstep set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DyckPath {
    steps: Vec<Step>,
    upsteps: LabelSet,
}

impl fmt::Debug for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DyckPath({self})")
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(match s {
                Step::Up => "U",
                Step::Down => "D",
            })?;
        }
        Ok(())
    }
}

impl DyckPath {
    pub fn from_steps(steps: Vec<Step>) -> Result<Self, DyckError> {
        let mut height = 0i64;
        for s in &steps {
            height += if *s == Step::Up { 1 } else { -1 };
            if height < 0 {
                return Err(DyckError::NotDyck);
            }
        }
        if height != 0 {
            return Err(DyckError::NotDyck);
        }
        let upsteps = steps
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == Step::Up)
            .map(|(i, _)| i + 1)
            .collect();
        Ok(Self { steps, upsteps })
    }

    /// Half-length `n`.
    pub fn half_len(&self) -> usize {
        self.steps.len() / 2
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// 1-based positions of the up steps.
    pub fn upsteps(&self) -> &[usize] {
        &self.upsteps
    }
}

/// All Dyck paths of length `2n`, in lexicographic order of upstep sets.
pub fn enumerate_dyck(n: usize) -> Vec<DyckPath> {
    fn go(n: usize, ups: usize, downs: usize, word: &mut Vec<Step>, out: &mut Vec<DyckPath>) {
        if ups == n && downs == n {
            out.push(DyckPath::from_steps(word.clone()).expect("generated paths stay above the axis"));
            return;
        }
        // Up before down keeps the upstep sets in lexicographic order.
        if ups < n {
            word.push(Step::Up);
            go(n, ups + 1, downs, word, out);
            word.pop();
        }
        if downs < ups {
            word.push(Step::Down);
            go(n, ups, downs + 1, word, out);
            word.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 0, 0, &mut Vec::with_capacity(2 * n), &mut out);
    out
}

/// The inequality characterization: an increasing `n`-subset of `[2n]` is an
/// upstep set of a Dyck path iff `a₁ = 1` and `a_i ≤ 2i − 1`.
pub fn is_dyck_upstep_set(s: &[usize], n: usize) -> Result<bool, DyckError> {
    if s.len() != n {
        return Err(DyckError::BadCardinality {
            expected: n,
            actual: s.len(),
        });
    }
    Ok(s.first().is_none_or(|&a| a == 1) && s.iter().enumerate().all(|(i, &a)| a <= 2 * i + 1))
}

/// `C_n = C(2n, n) / (n + 1)`.
pub fn catalan_number(n: usize) -> BigInt {
    binomial::<BigInt>(2 * n, n as i64) / BigInt::from(n + 1)
}

/// The Catalan matroid on `[2n]`, with the Dyck upstep sets as bases.
pub fn catalan_matroid(n: usize) -> Matroid {
    assert!(n >= 1, "the Catalan matroid needs n >= 1");
    let bases = enumerate_dyck(n).into_iter().map(|p| p.upsteps).collect();
    Matroid::from_bases(2 * n, bases).expect("Dyck upstep sets all have size n")
}
