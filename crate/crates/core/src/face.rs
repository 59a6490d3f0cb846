//! f-, h- and g-vectors of simplicial polytopes and the transforms between them.
//!
//! Indexing: an f-vector of a `d`-polytope is stored as `(f₋₁, f₀, …, f_{d−1})`,
//! so entry `k` holds `f_{k−1}`. When the entries are viewed as a matroid ground
//! set, label `j ∈ 1..=d+1` refers to entry `j − 1`, i.e. to `f_{j−2}`.

use thiserror::Error;

use crate::linalg::{binomial, Matrix};
use crate::scalar::{IntegerScalar, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FaceError {
    #[error("vector must not be empty")]
    Empty,
    #[error("expected length {expected} for dimension {d}, got {actual}")]
    Length { d: usize, expected: usize, actual: usize },
    #[error("leading entry must be 1, got {0}")]
    LeadingEntry(String),
}

/// Length of a g-vector (and rank of the Dehn-Sommerville matroid) in dimension `d`.
pub fn g_len(d: usize) -> usize {
    d / 2 + 1
}

fn check_leading<T: Scalar>(entries: &[T]) -> Result<(), FaceError> {
    match entries.first() {
        None => Err(FaceError::Empty),
        Some(v) if v.is_one() => Ok(()),
        Some(v) => Err(FaceError::LeadingEntry(v.to_string())),
    }
}

/// `(f₋₁, f₀, …, f_{d−1})` with `f₋₁ = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FVector<T> {
    entries: Vec<T>,
}

/// `(h₀, …, h_d)` with `h₀ = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HVector<T> {
    entries: Vec<T>,
}

/// `(g₀, …, g_{⌊d/2⌋})` with `g₀ = 1`. Carries `d`, which its length alone does not fix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GVector<T> {
    d: usize,
    entries: Vec<T>,
}

impl<T: Scalar> FVector<T> {
    pub fn new(entries: Vec<T>) -> Result<Self, FaceError> {
        check_leading(&entries)?;
        Ok(Self { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    /// `f_i` for `-1 ≤ i ≤ d−1`.
    pub fn face_count(&self, i: isize) -> &T {
        &self.entries[(i + 1) as usize]
    }

    /// Value at ground-set label `j ∈ 1..=d+1`, i.e. `f_{j−2}`.
    pub fn at_label(&self, j: usize) -> &T {
        &self.entries[j - 1]
    }

    pub fn into_entries(self) -> Vec<T> {
        self.entries
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|v| !v.is_negative())
    }
}

impl<T: Scalar> HVector<T> {
    pub fn new(entries: Vec<T>) -> Result<Self, FaceError> {
        check_leading(&entries)?;
        Ok(Self { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<T> {
        self.entries
    }
}

impl<T: Scalar> GVector<T> {
    pub fn new(d: usize, entries: Vec<T>) -> Result<Self, FaceError> {
        if entries.len() != g_len(d) {
            return Err(FaceError::Length {
                d,
                expected: g_len(d),
                actual: entries.len(),
            });
        }
        check_leading(&entries)?;
        Ok(Self { d, entries })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<T> {
        self.entries
    }
}

/// The Dehn-Sommerville matrix `M_d`, of shape `(⌊d/2⌋+1) × (d+1)`:
/// `(M_d)_{ij} = C(d+1−i, d+1−j) − C(i, d+1−j)`.
pub fn ds_matrix<T: Scalar>(d: usize) -> Matrix<T> {
    let rows = g_len(d);
    let cols = d + 1;
    let mut data = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        for j in 0..cols {
            let k = (d + 1 - j) as i64;
            data.push(binomial::<T>(d + 1 - i, k) - binomial::<T>(i, k));
        }
    }
    Matrix::new(rows, cols, data).expect("shape matches data")
}

/// `h_k = Σ_{i=0}^{k} (−1)^{k−i} C(d−i, k−i) f_{i−1}`.
pub fn f_to_h<T: Scalar>(f: &FVector<T>) -> HVector<T> {
    let d = f.dim();
    let fe = f.entries();
    let entries = (0..=d)
        .map(|k| {
            (0..=k).fold(T::zero(), |acc, i| {
                let term = binomial::<T>(d - i, (k - i) as i64) * fe[i].clone();
                if (k - i) % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                }
            })
        })
        .collect();
    HVector { entries }
}

/// Inverse of [`f_to_h`]: `f_{k−1} = Σ_{i=0}^{k} C(d−i, k−i) h_i`.
pub fn h_to_f<T: Scalar>(h: &HVector<T>) -> FVector<T> {
    let d = h.dim();
    let he = h.entries();
    let entries = (0..=d)
        .map(|k| {
            (0..=k).fold(T::zero(), |acc, i| {
                acc + binomial::<T>(d - i, (k - i) as i64) * he[i].clone()
            })
        })
        .collect();
    FVector { entries }
}

/// `g_0 = h_0`, `g_i = h_i − h_{i−1}` for `1 ≤ i ≤ ⌊d/2⌋`.
pub fn h_to_g<T: Scalar>(h: &HVector<T>) -> GVector<T> {
    let d = h.dim();
    let he = h.entries();
    let entries = (0..g_len(d))
        .map(|i| {
            if i == 0 {
                he[0].clone()
            } else {
                he[i].clone() - he[i - 1].clone()
            }
        })
        .collect();
    GVector { d, entries }
}

/// Partial sums of `g`, extended to length `d+1` by `h_k = h_{d−k}`.
pub fn g_to_h<T: Scalar>(g: &GVector<T>) -> HVector<T> {
    let d = g.dim();
    let mut entries: Vec<T> = Vec::with_capacity(d + 1);
    let mut acc = T::zero();
    for v in g.entries() {
        acc = acc + v.clone();
        entries.push(acc.clone());
    }
    for k in g_len(d)..=d {
        let mirrored = entries[d - k].clone();
        entries.push(mirrored);
    }
    HVector { entries }
}

/// `f = g · M_d`.
pub fn g_to_f<T: Scalar>(g: &GVector<T>) -> FVector<T> {
    let entries = ds_matrix::<T>(g.dim())
        .left_mul(g.entries())
        .expect("g length matches M_d rows");
    FVector { entries }
}

/// Dehn-Sommerville symmetry `h_k = h_{d−k}`.
pub fn check_dehn_sommerville<T: Scalar>(h: &HVector<T>) -> bool {
    let e = h.entries();
    e.iter().eq(e.iter().rev())
}

/// Greedy Macaulay representation `x = C(a_i, i) + C(a_{i−1}, i−1) + … + C(a_j, j)`
/// with `a_i > a_{i−1} > … > a_j ≥ j ≥ 1`, returned as `(a, k)` pairs.
pub fn macaulay_representation<T: IntegerScalar>(x: &T, i: usize) -> Vec<(usize, usize)> {
    assert!(i >= 1, "Macaulay representations start at degree 1");
    let mut rest = x.clone();
    let mut out = Vec::new();
    let mut k = i;
    while !rest.is_zero() && rest.is_positive() && k >= 1 {
        let a = max_top(&rest, k);
        rest = rest - binomial::<T>(a, k as i64);
        out.push((a, k));
        k -= 1;
    }
    out
}

/// Largest `a ≥ k` with `C(a, k) ≤ x`, for `x ≥ 1`.
fn max_top<T: IntegerScalar>(x: &T, k: usize) -> usize {
    let fits = |a: usize| binomial::<T>(a, k as i64) <= *x;
    let mut lo = k;
    let mut hi = k + 1;
    while fits(hi) {
        lo = hi;
        hi = hi.saturating_mul(2);
    }
    // fits(lo) && !fits(hi)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if fits(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Macaulay pseudo-power `x^⟨i⟩ = C(a_i+1, i+1) + … + C(a_j+1, j+1)`.
pub fn pseudo_power<T: IntegerScalar>(x: &T, i: usize) -> T {
    macaulay_representation(x, i)
        .into_iter()
        .fold(T::zero(), |acc, (a, k)| acc + binomial::<T>(a + 1, (k + 1) as i64))
}

/// Whether `g` is an M-sequence: `g₀ = 1`, all entries non-negative and
/// `g_{i+1} ≤ g_i^⟨i⟩` for `i ≥ 1`.
pub fn is_m_sequence<T: IntegerScalar>(g: &GVector<T>) -> bool {
    let e = g.entries();
    if !e[0].is_one() || e.iter().any(|v| v.is_negative()) {
        return false;
    }
    (1..e.len().saturating_sub(1)).all(|i| e[i + 1] <= pseudo_power(&e[i], i))
}

/// Linear and g-theorem facts about a full f-vector, reported separately.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Validity {
    pub nonnegative: bool,
    pub dehn_sommerville: bool,
    pub m_sequence: bool,
}

pub fn validate<T: IntegerScalar>(f: &FVector<T>) -> Validity {
    let h = f_to_h(f);
    Validity {
        nonnegative: f.is_nonnegative(),
        dehn_sommerville: check_dehn_sommerville(&h),
        m_sequence: is_m_sequence(&h_to_g(&h)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    SimplexBoundary,
    CrosspolytopeBoundary,
}

/// Closed-form f-vectors: `f_i = C(d+1, i+1)` for the boundary of the
/// `d`-simplex, `f_i = 2^{i+1} C(d, i+1)` for the boundary of the `d`-cross-polytope.
pub fn sample_f_vector<T: Scalar>(family: Family, d: usize) -> FVector<T> {
    let two = T::one() + T::one();
    let entries = (0..=d)
        .map(|k| match family {
            Family::SimplexBoundary => binomial::<T>(d + 1, k as i64),
            Family::CrosspolytopeBoundary => {
                let pow = (0..k).fold(T::one(), |acc, _| acc * two.clone());
                pow * binomial::<T>(d, k as i64)
            }
        })
        .collect();
    FVector { entries }
}
