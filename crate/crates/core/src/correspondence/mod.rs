//! Relations and correspondences between two finite spaces.
//!
//! A [`Relation`] is any nonempty set of index pairs `(i, j)` with `i` in X
//! and `j` in Y; a [`Correspondence`] is a relation whose projections onto
//! both factors are surjective. The Gromov-Hausdorff distance of finite
//! spaces is half the smallest distortion over all correspondences, which
//! [`exact_gh`] computes exactly.

mod solver;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{EuclideanPointSet, Metric, SubsetRef};

pub use solver::{exact_gh, GhResult, DEFAULT_BUDGET};

/// Largest `nX * nY` for which [`enumerate_correspondences`] will scan all
/// `2^(nX * nY)` relations.
pub const ENUMERATION_CAP: usize = 25;

/// A nonempty set of pairs, kept sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RelationRepr", into = "RelationRepr")]
pub struct Relation {
    pairs: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct RelationRepr {
    pairs: Vec<[usize; 2]>,
}

impl TryFrom<RelationRepr> for Relation {
    type Error = Error;
    fn try_from(r: RelationRepr) -> Result<Self> {
        Relation::new(r.pairs.into_iter().map(|[i, j]| (i, j)).collect())
    }
}

impl From<Relation> for RelationRepr {
    fn from(r: Relation) -> Self {
        RelationRepr {
            pairs: r.pairs.into_iter().map(|(i, j)| [i, j]).collect(),
        }
    }
}

impl Relation {
    pub fn new(mut pairs: Vec<(usize, usize)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::EmptyRelation);
        }
        pairs.sort_unstable();
        pairs.dedup();
        Ok(Relation { pairs })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    fn check_in(&self, nx: usize, ny: usize) -> Result<()> {
        for &(i, j) in &self.pairs {
            if i >= nx {
                return Err(Error::IndexOutOfRange { index: i, len: nx });
            }
            if j >= ny {
                return Err(Error::IndexOutOfRange { index: j, len: ny });
            }
        }
        Ok(())
    }

    /// Image `{ j : (i, j) in self, i in u }`.
    pub fn pushforward(&self, u: &SubsetRef) -> Result<SubsetRef> {
        let mut image = Vec::new();
        for i in u.iter() {
            let start = self.pairs.partition_point(|&(a, _)| a < i);
            image.extend(
                self.pairs[start..]
                    .iter()
                    .take_while(|&&(a, _)| a == i)
                    .map(|&(_, j)| j),
            );
        }
        if image.is_empty() {
            return Err(Error::EmptyImage);
        }
        Ok(SubsetRef::from_unsorted_unchecked(image))
    }

    /// Swaps the roles of X and Y.
    pub fn transpose(&self) -> Relation {
        let mut pairs: Vec<_> = self.pairs.iter().map(|&(i, j)| (j, i)).collect();
        pairs.sort_unstable();
        Relation { pairs }
    }
}

/// True iff both projections of `rel` are onto `0..nx` and `0..ny`.
pub fn is_correspondence(rel: &Relation, nx: usize, ny: usize) -> Result<bool> {
    rel.check_in(nx, ny)?;
    let mut hit_x = vec![false; nx];
    let mut hit_y = vec![false; ny];
    for &(i, j) in &rel.pairs {
        hit_x[i] = true;
        hit_y[j] = true;
    }
    Ok(hit_x.into_iter().chain(hit_y).all(|b| b))
}

/// `sup | |xx'| - |yy'| |` over pairs of pairs of `rel`.
pub fn distortion<X, Y>(x: &X, y: &Y, rel: &Relation) -> Result<f64>
where
    X: Metric + ?Sized,
    Y: Metric + ?Sized,
{
    if rel.is_empty() {
        return Err(Error::EmptyRelation);
    }
    rel.check_in(x.len(), y.len())?;
    let p = &rel.pairs;
    let mut worst = 0.0f64;
    for (a, &(i, j)) in p.iter().enumerate() {
        for &(i2, j2) in &p[a + 1..] {
            worst = worst.max((x.dist(i, i2) - y.dist(j, j2)).abs());
        }
    }
    Ok(worst)
}

/// A relation between an `nx`-point and an `ny`-point space with both
/// projections surjective.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Correspondence {
    rel: Relation,
    nx: usize,
    ny: usize,
}

impl Correspondence {
    pub fn new(rel: Relation, nx: usize, ny: usize) -> Result<Self> {
        if !is_correspondence(&rel, nx, ny)? {
            return Err(Error::NotACorrespondence(format!(
                "projections of {} pairs are not onto {nx} x {ny}",
                rel.len()
            )));
        }
        Ok(Correspondence { rel, nx, ny })
    }

    pub fn identity(n: usize) -> Self {
        Correspondence {
            rel: Relation {
                pairs: (0..n).map(|i| (i, i)).collect(),
            },
            nx: n,
            ny: n,
        }
    }

    pub fn full(nx: usize, ny: usize) -> Self {
        let pairs = (0..nx).flat_map(|i| (0..ny).map(move |j| (i, j))).collect();
        Correspondence {
            rel: Relation { pairs },
            nx,
            ny,
        }
    }

    /// Builds from a cell bitmask where bit `i * ny + j` stands for `(i, j)`.
    pub fn from_mask(mask: u64, nx: usize, ny: usize) -> Result<Self> {
        let pairs = (0..nx * ny)
            .filter(|c| mask >> c & 1 == 1)
            .map(|c| (c / ny, c % ny))
            .collect();
        Correspondence::new(Relation::new(pairs)?, nx, ny)
    }

    pub(crate) fn from_cells_unchecked(cells: &[usize], nx: usize, ny: usize) -> Self {
        let mut pairs: Vec<_> = cells.iter().map(|&c| (c / ny, c % ny)).collect();
        pairs.sort_unstable();
        Correspondence {
            rel: Relation { pairs },
            nx,
            ny,
        }
    }

    pub fn relation(&self) -> &Relation {
        &self.rel
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.rel.pairs
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn pushforward(&self, u: &SubsetRef) -> Result<SubsetRef> {
        u.check_in(self.nx)?;
        self.rel.pushforward(u)
    }

    pub fn transpose(&self) -> Correspondence {
        Correspondence {
            rel: self.rel.transpose(),
            nx: self.ny,
            ny: self.nx,
        }
    }

    /// Distortion against concrete spaces, checking their sizes first.
    pub fn distortion<X, Y>(&self, x: &X, y: &Y) -> Result<f64>
    where
        X: Metric + ?Sized,
        Y: Metric + ?Sized,
    {
        self.check_spaces(x.len(), y.len())?;
        distortion(x, y, &self.rel)
    }

    pub(crate) fn check_spaces(&self, nx: usize, ny: usize) -> Result<()> {
        if nx != self.nx || ny != self.ny {
            return Err(Error::NotACorrespondence(format!(
                "built for {} x {} points, spaces have {nx} x {ny}",
                self.nx, self.ny
            )));
        }
        Ok(())
    }
}

/// Certified upper bound `dis(rel) / 2` on `d_GH(x, y)`.
pub fn gh_upper_bound_from_correspondence<X, Y>(x: &X, y: &Y, rel: &Correspondence) -> Result<f64>
where
    X: Metric + ?Sized,
    Y: Metric + ?Sized,
{
    Ok(rel.distortion(x, y)? / 2.0)
}

/// Nearest-point correspondence between two planar point sets: every point
/// of `y` is paired with its nearest point of `x`, and every point of `x`
/// with its nearest point of `y`. Ties go to the lower index.
pub fn nearest_point_correspondence(x: &EuclideanPointSet, y: &EuclideanPointSet) -> Correspondence {
    let nearest = |p: [f64; 2], set: &EuclideanPointSet| {
        let mut best = (f64::INFINITY, 0);
        for (k, &q) in set.points().iter().enumerate() {
            let d = crate::metric::euclid(p, q);
            if d < best.0 {
                best = (d, k);
            }
        }
        best.1
    };
    let mut pairs: Vec<(usize, usize)> = (0..y.len()).map(|j| (nearest(y.point(j), x), j)).collect();
    pairs.extend((0..x.len()).map(|i| (i, nearest(x.point(i), y))));
    pairs.sort_unstable();
    pairs.dedup();
    Correspondence {
        rel: Relation { pairs },
        nx: x.len(),
        ny: y.len(),
    }
}

/// Cell bitmasks of every correspondence between `nx` and `ny` points, in
/// increasing numeric order. Bit `i * ny + j` stands for the pair `(i, j)`.
pub fn correspondence_masks(nx: usize, ny: usize) -> Result<impl Iterator<Item = u64>> {
    let cells = nx * ny;
    if cells > ENUMERATION_CAP || nx == 0 || ny == 0 {
        return Err(Error::SizeCapExceeded {
            nx,
            ny,
            cap: ENUMERATION_CAP,
        });
    }
    let rows: Vec<u64> = (0..nx).map(|i| ((1u64 << ny) - 1) << (i * ny)).collect();
    let cols: Vec<u64> = (0..ny)
        .map(|j| (0..nx).fold(0u64, |m, i| m | 1 << (i * ny + j)))
        .collect();
    Ok((1u64..(1u64 << cells))
        .filter(move |&m| rows.iter().all(|&r| m & r != 0) && cols.iter().all(|&c| m & c != 0)))
}

/// Every correspondence between `nx` and `ny` points, in bitmask order.
/// Refuses sizes with `nx * ny > 25`.
pub fn enumerate_correspondences(
    nx: usize,
    ny: usize,
) -> Result<impl Iterator<Item = Correspondence>> {
    Ok(correspondence_masks(nx, ny)?.map(move |m| {
        Correspondence::from_mask(m, nx, ny).expect("mask filter guarantees surjectivity")
    }))
}
