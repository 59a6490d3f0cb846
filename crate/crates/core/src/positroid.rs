//! Grassmann necklaces and decorated permutations of matroids, and a
//! total-nonnegativity check for `M_d`.
//!
//! Permutation orientation: reading the necklace exchange
//! `I_{i+1} = (I_i ∖ {i}) ∪ {j}` as `σ(i) = j` gives, for `DS₄`, the
//! one-line word `(1̄, 4, 2, 5, 3)`. [`decorated_permutation`] returns the
//! inverse `σ⁻¹`, which for `DS₄` reads `(1̄, 3, 5, 2, 4)`; both are exposed.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::face::ds_matrix;
use crate::linalg::for_each_subset;
use crate::matroid::{LabelSet, Matroid};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrassmannNecklace {
    n: usize,
    sets: Vec<LabelSet>,
}

impl GrassmannNecklace {
    pub fn ground_size(&self) -> usize {
        self.n
    }

    /// `I_1, …, I_n`.
    pub fn sets(&self) -> &[LabelSet] {
        &self.sets
    }

    /// `I_{i+1} ⊇ I_i ∖ {i}` for every `i`, cyclically.
    pub fn satisfies_exchange(&self) -> bool {
        (1..=self.n).all(|i| {
            let cur = &self.sets[i - 1];
            let next = &self.sets[i % self.n];
            cur.iter().filter(|&&v| v != i).all(|v| next.contains(v))
        })
    }
}

/// Position of `v` in the cyclic order `start < start+1 < … < n < 1 < … < start−1`.
fn cyclic_rank(v: usize, start: usize, n: usize) -> usize {
    (v + n - start) % n
}

fn cyclic_sorted(s: &[usize], start: usize, n: usize) -> Vec<usize> {
    let mut ranks: Vec<usize> = s.iter().map(|&v| cyclic_rank(v, start, n)).collect();
    ranks.sort_unstable();
    ranks
}

/// `I_i` is the Gale-minimal basis under the cyclic order starting at `i`.
pub fn grassmann_necklace(m: &Matroid) -> GrassmannNecklace {
    let n = m.ground_size();
    let sets = (1..=n)
        .map(|start| {
            let keyed: Vec<(Vec<usize>, &LabelSet)> =
                m.bases().iter().map(|b| (cyclic_sorted(b, start, n), b)).collect();
            let (min_key, min_basis) = keyed.iter().min_by(|a, b| a.0.cmp(&b.0)).expect("matroid has a basis");
            // For a matroid the lexicographic minimum is also Gale-minimal.
            debug_assert!(keyed.iter().all(|(k, _)| min_key.iter().zip(k).all(|(a, b)| a <= b)));
            (*min_basis).clone()
        })
        .collect();
    GrassmannNecklace { n, sets }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FixedPoint {
    Loop,
    Coloop,
}

/// A permutation of `1..=n` in one-line form with decorated fixed points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecoratedPermutation {
    map: Vec<usize>,
    decorations: Vec<Option<FixedPoint>>,
}

impl DecoratedPermutation {
    pub fn new(map: Vec<usize>, decorations: Vec<Option<FixedPoint>>) -> Option<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &v in &map {
            if v == 0 || v > n || std::mem::replace(&mut seen[v - 1], true) {
                return None;
            }
        }
        let decorated_ok = decorations.len() == n
            && map
                .iter()
                .enumerate()
                .all(|(i, &v)| (v == i + 1) == decorations[i].is_some());
        decorated_ok.then_some(Self { map, decorations })
    }

    /// `π(i)` for `i ∈ 1..=n`.
    pub fn apply(&self, i: usize) -> usize {
        self.map[i - 1]
    }

    pub fn one_line(&self) -> &[usize] {
        &self.map
    }

    pub fn decoration(&self, i: usize) -> Option<FixedPoint> {
        self.decorations[i - 1]
    }

    pub fn inverse(&self) -> Self {
        let mut map = vec![0; self.map.len()];
        for (i, &v) in self.map.iter().enumerate() {
            map[v - 1] = i + 1;
        }
        Self {
            map,
            decorations: self.decorations.clone(),
        }
    }
}

/// `1~` marks a coloop-type fixed point, a bare fixed point is a loop.
impl fmt::Display for DecoratedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
            if self.decorations[i] == Some(FixedPoint::Coloop) {
                f.write_str("~")?;
            }
        }
        f.write_str(")")
    }
}

/// The exchange map `σ(i) = j` where `I_{i+1} = (I_i ∖ {i}) ∪ {j}`.
pub fn necklace_exchange_map(necklace: &GrassmannNecklace) -> DecoratedPermutation {
    let n = necklace.n;
    let sets = &necklace.sets;
    let mut map = vec![0; n];
    let mut decorations = vec![None; n];
    for i in 1..=n {
        let cur = &sets[i - 1];
        let next = &sets[i % n];
        if !cur.contains(&i) {
            map[i - 1] = i;
            decorations[i - 1] = Some(FixedPoint::Loop);
            continue;
        }
        let j = if next.contains(&i) {
            i
        } else {
            *next
                .iter()
                .find(|v| !cur.contains(v))
                .expect("necklace step adds one element")
        };
        map[i - 1] = j;
        if j == i {
            decorations[i - 1] = Some(FixedPoint::Coloop);
        }
    }
    DecoratedPermutation::new(map, decorations).expect("necklace exchange map is a bijection")
}

/// Decorated permutation of the positroid, oriented as `σ⁻¹` (see the module docs).
pub fn decorated_permutation(m: &Matroid) -> DecoratedPermutation {
    necklace_exchange_map(&grassmann_necklace(m)).inverse()
}

/// `(1̄, 3, 5, …, 2n+1, 2, 4, …, 2n)`, expected for `DS_{2n}`.
pub fn even_closed_form(n: usize) -> DecoratedPermutation {
    let map: Vec<usize> = std::iter::once(1)
        .chain((1..=n).map(|k| 2 * k + 1))
        .chain((1..=n).map(|k| 2 * k))
        .collect();
    let mut decorations = vec![None; map.len()];
    decorations[0] = Some(FixedPoint::Coloop);
    DecoratedPermutation::new(map, decorations).expect("valid permutation")
}

/// `(2, 4, …, 2n, 1, 3, …, 2n−1)`, expected for `DS_{2n−1}`.
pub fn odd_closed_form(n: usize) -> DecoratedPermutation {
    let map: Vec<usize> = (1..=n).map(|k| 2 * k).chain((1..=n).map(|k| 2 * k - 1)).collect();
    let len = map.len();
    DecoratedPermutation::new(map, vec![None; len]).expect("valid permutation")
}

/// Whether every minor of `M_d`, of every size, is non-negative.
pub fn check_total_nonnegativity(d: usize) -> bool {
    first_negative_minor(d).is_none()
}

/// A negative minor of `M_d` as `(rows, columns, value)`, 0-based, if any.
pub fn first_negative_minor(d: usize) -> Option<(Vec<usize>, Vec<usize>, BigInt)> {
    let m = ds_matrix::<BigInt>(d);
    let mut found = None;
    for k in 1..=m.rows().min(m.cols()) {
        for_each_subset(m.rows(), k, |rows| {
            if found.is_some() {
                return;
            }
            for_each_subset(m.cols(), k, |cols| {
                if found.is_some() {
                    return;
                }
                let det = m.minor_matrix(rows, cols).determinant().expect("square");
                if det.is_negative() {
                    found = Some((rows.to_vec(), cols.to_vec(), det));
                }
            });
        });
        if found.is_some() {
            break;
        }
    }
    found
}
