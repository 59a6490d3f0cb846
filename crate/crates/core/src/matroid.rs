//! Matroids given by an explicit list of bases on the ground set `1..=n`.

use std::fmt;

use thiserror::Error;

use crate::linalg::{for_each_subset, Matrix};
use crate::scalar::Scalar;

/// A strictly increasing set of 1-based labels.
pub type LabelSet = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error("a matroid needs at least one basis")]
    NoBases,
    #[error("basis {basis:?} has size {size}, expected rank {rank}")]
    UnequalRank { basis: LabelSet, size: usize, rank: usize },
    #[error("basis {0:?} is not a strictly increasing subset of the ground set")]
    BadBasis(LabelSet),
    #[error("element {element} is outside the ground set 1..={ground}")]
    OutOfRange { element: usize, ground: usize },
    #[error("no maximal minor of the matrix is non-zero")]
    RankDeficient,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matroid {
    ground: usize,
    rank: usize,
    bases: Vec<LabelSet>,
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matroid(n={}, r={}, bases=[", self.ground, self.rank)?;
        for (i, b) in self.bases.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&format_set(b))?;
        }
        f.write_str("])")
    }
}

/// Compact rendering, e.g. `135`; labels above 9 are comma-separated.
pub fn format_set(s: &[usize]) -> String {
    if s.iter().all(|&x| x < 10) {
        s.iter().map(|x| x.to_string()).collect()
    } else {
        s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// Result of [`Matroid::delete`]: the smaller matroid and where each old label went.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deletion {
    pub matroid: Matroid,
    /// `relabel[old - 1]` is the new label of `old`, `None` for the deleted element.
    pub relabel: Vec<Option<usize>>,
}

impl Matroid {
    /// Builds a matroid from bases, which are sorted and deduplicated.
    ///
    /// Only structural checks happen here; use [`Matroid::verify_basis_exchange`]
    /// for the exchange axiom.
    pub fn from_bases(ground: usize, bases: Vec<LabelSet>) -> Result<Self, MatroidError> {
        let rank = bases.first().ok_or(MatroidError::NoBases)?.len();
        for b in &bases {
            if b.len() != rank {
                return Err(MatroidError::UnequalRank {
                    basis: b.clone(),
                    size: b.len(),
                    rank,
                });
            }
            let increasing = b.windows(2).all(|w| w[0] < w[1]);
            if !increasing || b.iter().any(|&e| e == 0 || e > ground) {
                return Err(MatroidError::BadBasis(b.clone()));
            }
        }
        let mut bases = bases;
        bases.sort();
        bases.dedup();
        Ok(Self { ground, rank, bases })
    }

    /// The column matroid of a full-row-rank matrix: bases are the column sets
    /// with a non-zero maximal minor.
    pub fn from_matrix<T: Scalar>(a: &Matrix<T>) -> Result<Self, MatroidError> {
        let r = a.rows();
        let mut bases = Vec::new();
        for_each_subset(a.cols(), r, |cols| {
            let det = a.select_columns(cols).determinant().expect("square by construction");
            if !det.is_zero() {
                bases.push(cols.iter().map(|c| c + 1).collect());
            }
        });
        if bases.is_empty() {
            return Err(MatroidError::RankDeficient);
        }
        Self::from_bases(a.cols(), bases)
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Bases in lexicographic order.
    pub fn bases(&self) -> &[LabelSet] {
        &self.bases
    }

    pub fn is_basis(&self, s: &[usize]) -> bool {
        self.bases.binary_search_by(|b| b.as_slice().cmp(s)).is_ok()
    }

    fn check_element(&self, e: usize) -> Result<(), MatroidError> {
        if e == 0 || e > self.ground {
            Err(MatroidError::OutOfRange {
                element: e,
                ground: self.ground,
            })
        } else {
            Ok(())
        }
    }

    /// `e` lies in no basis. Out-of-range labels are neither loops nor coloops.
    pub fn is_loop(&self, e: usize) -> bool {
        self.check_element(e).is_ok() && self.bases.iter().all(|b| !b.contains(&e))
    }

    /// `e` lies in every basis.
    pub fn is_coloop(&self, e: usize) -> bool {
        self.check_element(e).is_ok() && self.bases.iter().all(|b| b.contains(&e))
    }

    /// Exhaustive check of the basis exchange axiom.
    pub fn verify_basis_exchange(&self) -> bool {
        for b1 in &self.bases {
            for b2 in &self.bases {
                for &x in b1.iter().filter(|x| !b2.contains(x)) {
                    let exchanged = b2.iter().filter(|y| !b1.contains(y)).any(|&y| {
                        let mut c: LabelSet = b1.iter().copied().filter(|&v| v != x).collect();
                        let pos = c.partition_point(|&v| v < y);
                        c.insert(pos, y);
                        self.is_basis(&c)
                    });
                    if !exchanged {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Deletion `M \ e`, relabelled onto `1..n−1` by shifting labels above `e` down.
    ///
    /// For a non-coloop the bases are those avoiding `e`; deleting a coloop
    /// removes it from every basis and lowers the rank by one.
    pub fn delete(&self, e: usize) -> Result<Deletion, MatroidError> {
        self.check_element(e)?;
        let shift = |v: usize| if v > e { v - 1 } else { v };
        let bases = if self.is_coloop(e) {
            self.bases
                .iter()
                .map(|b| b.iter().filter(|&&v| v != e).map(|&v| shift(v)).collect())
                .collect()
        } else {
            self.bases
                .iter()
                .filter(|b| !b.contains(&e))
                .map(|b| b.iter().map(|&v| shift(v)).collect())
                .collect()
        };
        let relabel = (1..=self.ground).map(|v| (v != e).then(|| shift(v))).collect();
        let matroid = Self::from_bases(self.ground - 1, bases)?;
        Ok(Deletion { matroid, relabel })
    }

    /// Direct sum with a coloop inserted as the new element 1.
    pub fn add_coloop(&self) -> Self {
        let bases = self
            .bases
            .iter()
            .map(|b| std::iter::once(1).chain(b.iter().map(|v| v + 1)).collect())
            .collect();
        Self {
            ground: self.ground + 1,
            rank: self.rank + 1,
            bases,
        }
    }

    /// Equality as labelled matroids: same ground set, rank and bases.
    pub fn equal_as_labeled(&self, other: &Self) -> bool {
        self == other
    }
}
