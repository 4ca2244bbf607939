//! Finite metric spaces and the elementary set-metric quantities on them.
//!
//! Two concrete spaces implement [`Metric`]: [`FiniteMetricSpace`], which
//! stores a validated distance matrix, and [`EuclideanPointSet`], which
//! computes planar Euclidean distances on demand. Every set-level operation
//! here (diameter, set distance, open neighborhoods, Hausdorff distance) is
//! generic over the trait, so fine nets with tens of thousands of points
//! never need a dense matrix.
//!
//! Subsets are [`SubsetRef`]s: sorted, duplicate-free index lists into an
//! ambient space.

mod isometry;
mod nearest;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use isometry::is_isometric;
pub use nearest::GridIndex;

/// Default additive tolerance for floating-point comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;

/// A finite metric space addressed by point index.
pub trait Metric {
    /// Number of points.
    fn len(&self) -> usize;

    /// Distance between points `i` and `j`.
    fn dist(&self, i: usize, j: usize) -> f64;

    /// Planar coordinates of point `i`, when the space is Euclidean.
    fn coords(&self, _i: usize) -> Option<[f64; 2]> {
        None
    }

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl<M: Metric + ?Sized> Metric for &M {
    fn len(&self) -> usize {
        (**self).len()
    }
    fn dist(&self, i: usize, j: usize) -> f64 {
        (**self).dist(i, j)
    }
    fn coords(&self, i: usize) -> Option<[f64; 2]> {
        (**self).coords(i)
    }
}

/// A metric on `n` points stored as a full row-major distance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetricSpace {
    n: usize,
    d: Vec<f64>,
}

impl FiniteMetricSpace {
    /// Validates `matrix` as a metric and builds the space.
    ///
    /// Symmetry and the triangle inequality are checked with the additive
    /// tolerance `tol`; the triangle check is exhaustive over all ordered
    /// triples. Errors carry the first witnessing pair or triple in
    /// lexicographic order.
    pub fn from_matrix(matrix: &[Vec<f64>], tol: f64) -> Result<Self> {
        let n = matrix.len();
        if n == 0 {
            return Err(Error::EmptySpace);
        }
        for (row, r) in matrix.iter().enumerate() {
            if r.len() != n {
                return Err(Error::NotSquare {
                    row,
                    len: r.len(),
                    expected: n,
                });
            }
        }
        for (i, r) in matrix.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::NonFiniteEntry(i, j));
                }
                if v < 0.0 {
                    return Err(Error::NegativeEntry(i, j));
                }
            }
        }
        for i in 0..n {
            if matrix[i][i] != 0.0 {
                return Err(Error::NonzeroDiagonal(i));
            }
            for j in (i + 1)..n {
                if (matrix[i][j] - matrix[j][i]).abs() > tol {
                    return Err(Error::NotSymmetric(i, j));
                }
                if matrix[i][j] == 0.0 || matrix[j][i] == 0.0 {
                    return Err(Error::ZeroOffDiagonal(i, j));
                }
            }
        }
        let d: Vec<f64> = matrix.iter().flatten().copied().collect();
        let space = FiniteMetricSpace { n, d };
        if let Some((i, j, k)) = space.find_triangle_violation(tol) {
            return Err(Error::TriangleViolation {
                i,
                j,
                k,
                direct: space.dist(i, k),
                via: space.dist(i, j) + space.dist(j, k),
            });
        }
        Ok(space)
    }

    /// Builds a space without validation. Callers guarantee the metric axioms.
    pub(crate) fn from_flat_unchecked(n: usize, d: Vec<f64>) -> Self {
        debug_assert_eq!(d.len(), n * n);
        FiniteMetricSpace { n, d }
    }

    /// First `(i, j, k)` with `d(i,k) > d(i,j) + d(j,k) + tol`.
    pub fn find_triangle_violation(&self, tol: f64) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for i in 0..n {
            for k in 0..n {
                let direct = self.dist(i, k);
                for j in 0..n {
                    if direct > self.dist(i, j) + self.dist(j, k) + tol {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.d[i * self.n..(i + 1) * self.n]
    }

    pub fn to_matrix(&self) -> Vec<Vec<f64>> {
        self.d.chunks(self.n).map(<[f64]>::to_vec).collect()
    }

    /// Diameter of the whole space.
    pub fn diameter(&self) -> f64 {
        self.d.iter().copied().fold(0.0, f64::max)
    }

    /// The space with every distance multiplied by `lambda`.
    pub fn scale(&self, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::NonpositiveLambda(lambda));
        }
        Ok(FiniteMetricSpace {
            n: self.n,
            d: self.d.iter().map(|v| v * lambda).collect(),
        })
    }
}

impl Metric for FiniteMetricSpace {
    fn len(&self) -> usize {
        self.n
    }

    #[inline]
    fn dist(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.n + j]
    }
}

/// Distinct labeled points in the Euclidean plane.
#[derive(Debug, Clone, PartialEq)]
pub struct EuclideanPointSet {
    points: Vec<[f64; 2]>,
    labels: Option<Vec<String>>,
}

fn coord_key(p: [f64; 2]) -> (u64, u64) {
    // -0.0 and 0.0 are the same point
    let norm = |v: f64| if v == 0.0 { 0.0f64 } else { v };
    (norm(p[0]).to_bits(), norm(p[1]).to_bits())
}

impl EuclideanPointSet {
    pub fn new(points: Vec<[f64; 2]>, labels: Option<Vec<String>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptySpace);
        }
        if let Some(l) = &labels {
            if l.len() != points.len() {
                return Err(Error::LabelCountMismatch {
                    labels: l.len(),
                    points: points.len(),
                });
            }
        }
        let mut seen: HashMap<(u64, u64), usize> = HashMap::with_capacity(points.len());
        for (i, &p) in points.iter().enumerate() {
            if !(p[0].is_finite() && p[1].is_finite()) {
                return Err(Error::NonFiniteCoordinate(i));
            }
            if let Some(&first) = seen.get(&coord_key(p)) {
                return Err(Error::DuplicatePoint(first, i));
            }
            seen.insert(coord_key(p), i);
        }
        Ok(EuclideanPointSet { points, labels })
    }

    pub fn points(&self) -> &[[f64; 2]] {
        &self.points
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn point(&self, i: usize) -> [f64; 2] {
        self.points[i]
    }

    /// Materializes the induced distance matrix. The triangle inequality
    /// holds by construction and is not re-checked.
    pub fn induce_space(&self) -> FiniteMetricSpace {
        let n = self.points.len();
        let mut d = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let v = self.dist(i, j);
                d[i * n + j] = v;
                d[j * n + i] = v;
            }
        }
        FiniteMetricSpace::from_flat_unchecked(n, d)
    }

    /// Coordinates multiplied by `lambda`; labels are kept.
    pub fn scale(&self, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::NonpositiveLambda(lambda));
        }
        Ok(EuclideanPointSet {
            points: self
                .points
                .iter()
                .map(|p| [p[0] * lambda, p[1] * lambda])
                .collect(),
            labels: self.labels.clone(),
        })
    }

    /// Union of two point sets as one ambient space.
    ///
    /// Points of `other` that coincide exactly with a point of `self` are
    /// merged. Returns the union together with the index sets of `self` and
    /// `other` inside it.
    pub fn union(&self, other: &EuclideanPointSet) -> (EuclideanPointSet, SubsetRef, SubsetRef) {
        let mut points = self.points.clone();
        let mut labels = self.labels.as_ref().map(|l| l.to_vec());
        let mut index: HashMap<(u64, u64), usize> = points
            .iter()
            .enumerate()
            .map(|(i, &p)| (coord_key(p), i))
            .collect();
        if labels.is_none() && other.labels.is_some() {
            labels = Some(vec![String::new(); points.len()]);
        }
        let mut other_idx = Vec::with_capacity(other.points.len());
        for (k, &p) in other.points.iter().enumerate() {
            let i = *index.entry(coord_key(p)).or_insert_with(|| {
                points.push(p);
                if let Some(l) = labels.as_mut() {
                    l.push(
                        other
                            .labels
                            .as_ref()
                            .map(|ol| ol[k].clone())
                            .unwrap_or_default(),
                    );
                }
                points.len() - 1
            });
            other_idx.push(i);
        }
        let a = SubsetRef::from_iter_unchecked(0..self.points.len());
        let b = SubsetRef::from_unsorted_unchecked(other_idx);
        (EuclideanPointSet { points, labels }, a, b)
    }

    /// Hausdorff distance between two subsets using a grid nearest-neighbor
    /// index. Returns the same value as [`hausdorff`].
    pub fn hausdorff_indexed(&self, a: &SubsetRef, b: &SubsetRef) -> Result<HausdorffReport> {
        a.check_in(self.len())?;
        b.check_in(self.len())?;
        let a_to_b = self.directed_indexed(a, b);
        let b_to_a = self.directed_indexed(b, a);
        Ok(HausdorffReport {
            value: a_to_b.max(b_to_a),
            a_to_b,
            b_to_a,
        })
    }

    fn directed_indexed(&self, from: &SubsetRef, to: &SubsetRef) -> f64 {
        let grid = GridIndex::new(to.iter().map(|i| self.points[i]).collect());
        from.iter()
            .map(|i| grid.nearest_distance(self.points[i]))
            .fold(0.0, f64::max)
    }
}

impl Metric for EuclideanPointSet {
    fn len(&self) -> usize {
        self.points.len()
    }

    #[inline]
    fn dist(&self, i: usize, j: usize) -> f64 {
        euclid(self.points[i], self.points[j])
    }

    fn coords(&self, i: usize) -> Option<[f64; 2]> {
        Some(self.points[i])
    }
}

#[inline]
pub(crate) fn euclid(p: [f64; 2], q: [f64; 2]) -> f64 {
    let dx = p[0] - q[0];
    let dy = p[1] - q[1];
    (dx * dx + dy * dy).sqrt()
}

/// A nonempty, sorted, duplicate-free list of point indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct SubsetRef(Vec<usize>);

impl SubsetRef {
    /// Sorts and deduplicates `indices`, then checks them against an
    /// ambient space of `n` points.
    pub fn new(mut indices: Vec<usize>, n: usize) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        let s = SubsetRef::try_from(indices)?;
        s.check_in(n)?;
        Ok(s)
    }

    /// Every index of an `n`-point space.
    pub fn all(n: usize) -> Self {
        assert!(n > 0, "SubsetRef::all on empty space");
        SubsetRef((0..n).collect())
    }

    pub fn singleton(i: usize) -> Self {
        SubsetRef(vec![i])
    }

    pub(crate) fn from_iter_unchecked(it: impl IntoIterator<Item = usize>) -> Self {
        let v: Vec<usize> = it.into_iter().collect();
        debug_assert!(!v.is_empty() && v.windows(2).all(|w| w[0] < w[1]));
        SubsetRef(v)
    }

    pub(crate) fn from_unsorted_unchecked(mut v: Vec<usize>) -> Self {
        v.sort_unstable();
        v.dedup();
        debug_assert!(!v.is_empty());
        SubsetRef(v)
    }

    /// Fails unless every index is below `n`.
    pub fn check_in(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&max) if max >= n => Err(Error::IndexOutOfRange { index: max, len: n }),
            _ => Ok(()),
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn intersects(&self, other: &SubsetRef) -> bool {
        let (mut p, mut q) = (0, 0);
        while p < self.0.len() && q < other.0.len() {
            match self.0[p].cmp(&other.0[q]) {
                std::cmp::Ordering::Less => p += 1,
                std::cmp::Ordering::Greater => q += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }
}

impl TryFrom<Vec<usize>> for SubsetRef {
    type Error = Error;

    /// Accepts only nonempty, strictly increasing index lists.
    fn try_from(v: Vec<usize>) -> Result<Self> {
        if v.is_empty() {
            return Err(Error::EmptySubset);
        }
        if v.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter(
                "subset indices must be strictly increasing".into(),
            ));
        }
        Ok(SubsetRef(v))
    }
}

impl From<SubsetRef> for Vec<usize> {
    fn from(s: SubsetRef) -> Self {
        s.0
    }
}

/// Largest pairwise distance inside `s`; zero for a singleton.
pub fn diam<M: Metric + ?Sized>(space: &M, s: &SubsetRef) -> Result<f64> {
    s.check_in(space.len())?;
    Ok(diam_unchecked(space, s.as_slice()))
}

pub(crate) fn diam_unchecked<M: Metric + ?Sized>(space: &M, s: &[usize]) -> f64 {
    let mut best = 0.0f64;
    for (p, &i) in s.iter().enumerate() {
        for &j in &s[p + 1..] {
            best = best.max(space.dist(i, j));
        }
    }
    best
}

/// `inf { |ab| : a in A, b in B }`, attained on finite sets.
pub fn set_distance<M: Metric + ?Sized>(space: &M, a: &SubsetRef, b: &SubsetRef) -> Result<f64> {
    a.check_in(space.len())?;
    b.check_in(space.len())?;
    Ok(set_distance_unchecked(space, a.as_slice(), b.as_slice()))
}

pub(crate) fn set_distance_unchecked<M: Metric + ?Sized>(space: &M, a: &[usize], b: &[usize]) -> f64 {
    let mut best = f64::INFINITY;
    for &i in a {
        for &j in b {
            let d = space.dist(i, j);
            if d < best {
                best = d;
                if best == 0.0 {
                    return 0.0;
                }
            }
        }
    }
    best
}

/// Open `r`-neighborhood: every point at distance strictly less than `r`
/// from some point of `a`.
pub fn neighborhood<M: Metric + ?Sized>(space: &M, a: &SubsetRef, r: f64) -> Result<SubsetRef> {
    a.check_in(space.len())?;
    if !(r > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "neighborhood radius must be positive, got {r}"
        )));
    }
    let inside = (0..space.len()).filter(|&x| a.iter().any(|i| space.dist(i, x) < r));
    Ok(SubsetRef::from_iter_unchecked(inside))
}

/// Hausdorff distance with both directed components.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HausdorffReport {
    pub value: f64,
    /// `max_{x in a} min_{y in b} d(x, y)`
    pub a_to_b: f64,
    /// `max_{y in b} min_{x in a} d(x, y)`
    pub b_to_a: f64,
}

/// `max_{x in from} min_{y in to} d(x, y)` by brute force with the
/// usual early break once a point cannot raise the running maximum.
pub fn directed_hausdorff<M: Metric + ?Sized>(space: &M, from: &SubsetRef, to: &SubsetRef) -> f64 {
    let mut cmax = 0.0f64;
    for x in from.iter() {
        let mut cmin = f64::INFINITY;
        for y in to.iter() {
            let d = space.dist(x, y);
            if d < cmin {
                cmin = d;
                if cmin <= cmax {
                    break;
                }
            }
        }
        if cmin > cmax {
            cmax = cmin;
        }
    }
    cmax
}

/// Hausdorff distance computed by the max-min formula.
pub fn hausdorff<M: Metric + ?Sized>(space: &M, a: &SubsetRef, b: &SubsetRef) -> Result<f64> {
    Ok(hausdorff_report(space, a, b)?.value)
}

pub fn hausdorff_report<M: Metric + ?Sized>(
    space: &M,
    a: &SubsetRef,
    b: &SubsetRef,
) -> Result<HausdorffReport> {
    a.check_in(space.len())?;
    b.check_in(space.len())?;
    let a_to_b = directed_hausdorff(space, a, b);
    let b_to_a = directed_hausdorff(space, b, a);
    Ok(HausdorffReport {
        value: a_to_b.max(b_to_a),
        a_to_b,
        b_to_a,
    })
}
