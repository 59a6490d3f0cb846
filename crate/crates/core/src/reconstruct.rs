//! Dehn-Sommerville bases and reconstruction of f-vectors from partial data.
//!
//! A set of labels is a Dehn-Sommerville basis when the corresponding
//! f-vector entries determine the rest through the Dehn-Sommerville relations.
//! Bases are generated here from Dyck paths; the minor and routing descriptions
//! live in [`crate::matroid`] and [`crate::routing`] and are checked against
//! this one in the tests.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::dyck::{catalan_matroid, enumerate_dyck};
use crate::face::{ds_matrix, f_to_h, g_len, g_to_f, g_to_h, is_m_sequence, FVector, GVector, HVector};
use crate::linalg::{solve_left, solve_square, Matrix};
use crate::matroid::{LabelSet, Matroid};

/// Known f-vector entries keyed by label `j ∈ 1..=d+1` (the value of `f_{j−2}`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialFAssignment {
    d: usize,
    known: BTreeMap<usize, BigInt>,
}

impl PartialFAssignment {
    pub fn new(d: usize, pairs: impl IntoIterator<Item = (usize, BigInt)>) -> Result<Self, ReconstructError> {
        let mut known = BTreeMap::new();
        for (label, value) in pairs {
            if label == 0 || label > d + 1 {
                return Err(ReconstructError::LabelOutOfRange { label, max: d + 1 });
            }
            if known.insert(label, value).is_some() {
                return Err(ReconstructError::DuplicateLabel(label));
            }
        }
        Ok(Self { d, known })
    }

    /// All entries of `f` at the labels in `labels`.
    pub fn from_f_vector(f: &FVector<BigInt>, labels: &[usize]) -> Result<Self, ReconstructError> {
        Self::new(f.dim(), labels.iter().map(|&j| (j, f.at_label(j).clone())))
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn labels(&self) -> LabelSet {
        self.known.keys().copied().collect()
    }

    pub fn values(&self) -> Vec<BigInt> {
        self.known.values().cloned().collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Flags {
    pub integral: bool,
    pub nonnegative: bool,
    /// The g-vector is integral and an M-sequence.
    pub m_sequence: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconstructionReport {
    pub f: FVector<BigRational>,
    pub h: HVector<BigRational>,
    pub g: GVector<BigRational>,
    pub basis_used: LabelSet,
    pub flags: Flags,
}

impl ReconstructionReport {
    /// The f-vector as integers, when every entry is integral.
    pub fn integral_f(&self) -> Option<FVector<BigInt>> {
        let entries = to_integers(self.f.entries())?;
        FVector::new(entries).ok()
    }
}

/// Evidence that a label set does not determine the f-vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ambiguity {
    pub labels: LabelSet,
    /// Determinant of the corresponding column submatrix of `M_d` (always 0).
    pub determinant: BigInt,
    /// Whether some g-vector with `g₀ = 1` reproduces the known values.
    pub consistent: bool,
    /// Two distinct f-vectors agreeing on every known entry; empty when
    /// inconsistent, and a single one when the convention `f₋₁ = 1` alone
    /// removes the ambiguity (possible only for sets without label 1).
    pub completions: Vec<FVector<BigRational>>,
    /// Whether the completions were found among integral M-sequence g-vectors,
    /// as opposed to a bare kernel step.
    pub polytopal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReconstructError {
    #[error("expected {expected} known entries, got {actual}")]
    WrongArity { expected: usize, actual: usize },
    #[error("f_-1 must be 1, got {0}")]
    InconsistentConvention(String),
    #[error("labels {:?} are not a Dehn-Sommerville basis", .0.labels)]
    NotADSBasis(Box<Ambiguity>),
    #[error("label {label} outside 1..={max}")]
    LabelOutOfRange { label: usize, max: usize },
    #[error("label {0} given twice")]
    DuplicateLabel(usize),
}

/// All Dehn-Sommerville bases of dimension `d`, lexicographically, from Dyck paths.
///
/// For `d = 2n` these are the upstep sets of Dyck paths of length `2n + 2`.
/// For `d = 2n − 1` the leading 1 of each such set is dropped and the
/// remaining labels shift down by one.
pub fn dehn_sommerville_bases(d: usize) -> Vec<LabelSet> {
    let n = d / 2 + if d.is_multiple_of(2) { 0 } else { 1 };
    let sets = enumerate_dyck(n + 1).into_iter().map(|p| p.upsteps().to_vec());
    if d.is_multiple_of(2) {
        sets.collect()
    } else {
        sets.map(|s| s[1..].iter().map(|b| b - 1).collect()).collect()
    }
}

/// Membership in [`dehn_sommerville_bases`]; sets of the wrong size are not bases.
pub fn is_ds_basis(d: usize, s: &[usize]) -> bool {
    s.len() == g_len(d)
        && dehn_sommerville_bases(d)
            .binary_search_by(|b| b.as_slice().cmp(s))
            .is_ok()
}

/// Reconstructs the full f-vector from entries at a Dehn-Sommerville basis.
///
/// Solves `g · M_d[basis] = values` and re-expands `f = g · M_d`.
pub fn reconstruct(p: &PartialFAssignment) -> Result<ReconstructionReport, ReconstructError> {
    let d = p.dim();
    let r = g_len(d);
    if p.known.len() != r {
        return Err(ReconstructError::WrongArity {
            expected: r,
            actual: p.known.len(),
        });
    }
    if let Some(v) = p.known.get(&1) {
        if !v.is_one() {
            return Err(ReconstructError::InconsistentConvention(v.to_string()));
        }
    }
    let labels = p.labels();
    let values = p.values();
    let cols: Vec<usize> = labels.iter().map(|j| j - 1).collect();
    let m = ds_matrix::<BigInt>(d);
    let sub = m.select_columns(&cols);

    if !is_ds_basis(d, &labels) {
        return Err(ReconstructError::NotADSBasis(Box::new(ambiguity(&m, &labels, &values))));
    }

    let g = solve_square(&sub, &values).expect("Dehn-Sommerville bases have non-zero minors");
    if !g[0].is_one() {
        return Err(ReconstructError::InconsistentConvention(g[0].to_string()));
    }
    let g = GVector::new(d, g).expect("g has rank length and g0 = 1");
    let f = g_to_f(&g);
    let h = g_to_h(&g);
    debug_assert_eq!(f_to_h(&f), h);
    for (j, v) in labels.iter().zip(&values) {
        assert_eq!(
            f.at_label(*j),
            &BigRational::from_integer(v.clone()),
            "reconstruction reproduces label {j}"
        );
    }
    let flags = flags_for(&f, &g);
    Ok(ReconstructionReport {
        f,
        h,
        g,
        basis_used: labels,
        flags,
    })
}

fn to_integers(v: &[BigRational]) -> Option<Vec<BigInt>> {
    v.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
}

fn flags_for(f: &FVector<BigRational>, g: &GVector<BigRational>) -> Flags {
    let integral = f.entries().iter().all(BigRational::is_integer);
    let m_sequence = to_integers(g.entries())
        .and_then(|e| GVector::new(g.dim(), e).ok())
        .is_some_and(|g| is_m_sequence(&g));
    Flags {
        integral,
        nonnegative: f.is_nonnegative(),
        m_sequence,
    }
}

/// Node budget for the search over polytopal completions.
const COMPLETION_SEARCH_BUDGET: usize = 200_000;

fn ambiguity(m: &Matrix<BigInt>, labels: &[usize], values: &[BigInt]) -> Ambiguity {
    let d = m.cols() - 1;
    let cols: Vec<usize> = labels.iter().map(|j| j - 1).collect();
    let sub = m.select_columns(&cols);
    let determinant = sub.determinant().expect("square");

    // Impose g0 = 1 as one more equation: x · [sub | e0] = [values | 1].
    let mut rows = sub.to_rows();
    for (i, row) in rows.iter_mut().enumerate() {
        row.push(if i == 0 { BigInt::one() } else { BigInt::zero() });
    }
    let augmented = Matrix::from_rows(rows);
    let mut rhs = values.to_vec();
    rhs.push(BigInt::one());
    let solution = solve_left(&augmented, &rhs).expect("dimensions agree");

    let Some(solution) = solution else {
        return Ambiguity {
            labels: labels.to_vec(),
            determinant,
            consistent: false,
            completions: Vec::new(),
            polytopal: false,
        };
    };

    let expand = |g: Vec<BigRational>| g_to_f(&GVector::new(d, g).expect("g0 = 1 imposed"));
    let polytopal = search_polytopal_g(m, &cols, values, 2);
    let (completions, polytopal) = if polytopal.len() == 2 {
        let c = polytopal
            .into_iter()
            .map(|g| expand(g.into_iter().map(BigRational::from_integer).collect()));
        (c.collect(), true)
    } else {
        let first = solution.particular.clone();
        match solution.kernel.first() {
            Some(step) => {
                let second: Vec<BigRational> = first
                    .iter()
                    .zip(step)
                    .map(|(p, k)| p + BigRational::from_integer(k.clone()))
                    .collect();
                (vec![expand(first), expand(second)], false)
            }
            // Every kernel vector of the minor moves g0, so f_-1 = 1 pins the rest.
            None => (vec![expand(first)], false),
        }
    };
    Ambiguity {
        labels: labels.to_vec(),
        determinant,
        consistent: true,
        completions,
        polytopal,
    }
}

/// Lexicographically first `want` integral M-sequences `g` with
/// `g · M[cols] = values`, found by bounded depth-first search.
///
/// All entries of `M_d` are non-negative, so partial sums over a prefix of a
/// non-negative `g` bound every later choice.
fn search_polytopal_g(m: &Matrix<BigInt>, cols: &[usize], values: &[BigInt], want: usize) -> Vec<Vec<BigInt>> {
    struct Search<'a> {
        m: &'a Matrix<BigInt>,
        cols: &'a [usize],
        values: &'a [BigInt],
        want: usize,
        budget: usize,
        found: Vec<Vec<BigInt>>,
    }

    impl Search<'_> {
        fn go(&mut self, g: &mut Vec<BigInt>, partial: &mut Vec<BigInt>) {
            if self.found.len() >= self.want || self.budget == 0 {
                return;
            }
            self.budget -= 1;
            let i = g.len();
            if i == self.m.rows() {
                if partial.as_slice() == self.values {
                    self.found.push(g.clone());
                }
                return;
            }
            // Upper bound from the known values and, past g1, from Macaulay's bound.
            let mut hi: Option<BigInt> = (i >= 2).then(|| crate::face::pseudo_power(&g[i - 1], i - 1));
            for (k, &c) in self.cols.iter().enumerate() {
                let coef = self.m.get(i, c);
                if coef.is_positive() {
                    let slack = (&self.values[k] - &partial[k]) / coef;
                    hi = Some(hi.map_or(slack.clone(), |h| h.min(slack)));
                }
            }
            let Some(hi) = hi else { return };
            let mut v = BigInt::zero();
            while v <= hi {
                for (k, &c) in self.cols.iter().enumerate() {
                    partial[k] += &v * self.m.get(i, c);
                }
                g.push(v.clone());
                self.go(g, partial);
                g.pop();
                for (k, &c) in self.cols.iter().enumerate() {
                    partial[k] -= &v * self.m.get(i, c);
                }
                if self.found.len() >= self.want || self.budget == 0 {
                    return;
                }
                v += 1;
            }
        }
    }

    if values.iter().any(Signed::is_negative) || m.rows() < 2 {
        return Vec::new();
    }
    let mut search = Search {
        m,
        cols,
        values,
        want,
        budget: COMPLETION_SEARCH_BUDGET,
        found: Vec::new(),
    };
    let mut partial: Vec<BigInt> = cols.iter().map(|&c| m.get(0, c).clone()).collect();
    search.go(&mut vec![BigInt::one()], &mut partial);
    search.found
}

/// Checks `DS_{2n} = C_{n+1} \ (2n+2)` and `DS_{2n−1} = C_{n+1} \ 1 \ (2n+2)` as
/// labelled matroids, building the left sides from minors of `M_d` and the right
/// sides from Dyck paths.
pub fn verify_main_theorem(n: usize) -> bool {
    let (even, odd) = main_theorem_sides(n);
    even.0.equal_as_labeled(&even.1) && odd.0.equal_as_labeled(&odd.1)
}

type Pair = (Matroid, Matroid);

/// `((DS_{2n}, C_{n+1}\(2n+2)), (DS_{2n−1}, C_{n+1}\1\(2n+2)))`.
pub fn main_theorem_sides(n: usize) -> (Pair, Pair) {
    assert!(n >= 1);
    let ds = |d: usize| Matroid::from_matrix(&ds_matrix::<BigInt>(d)).expect("M_d has full row rank");
    let catalan = catalan_matroid(n + 1);
    let without_loop = catalan.delete(2 * n + 2).expect("label in range").matroid;
    let without_both = without_loop.delete(1).expect("label in range").matroid;
    ((ds(2 * n), without_loop), (ds(2 * n - 1), without_both))
}
