//! Exact Gromov-Hausdorff distance of two small finite spaces.
//!
//! The optimal distortion is always one of the pairwise discrepancies
//! `|d_X(i, i') - d_Y(j, j')|`, so the solver binary-searches that finite
//! sorted set. Each probe asks whether some correspondence has distortion at
//! most `t`: cells `(i, j)` of `X x Y` are vertices, two cells are
//! compatible when their discrepancy is `<= t`, and we look for a pairwise
//! compatible cell set touching every row and column. The search always
//! branches on the uncovered row or column with the fewest compatible cells
//! left and fails as soon as one has none.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::Correspondence;
use crate::error::{Error, Result};
use crate::metric::Metric;

/// Default node budget for [`exact_gh`].
pub const DEFAULT_BUDGET: u64 = 50_000_000;

/// Outcome of [`exact_gh`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GhResult {
    /// `d_GH(X, Y)`, or the best known upper bound when `optimal` is false.
    pub value: f64,
    /// Distortion of `correspondence`; equals `2 * value`.
    pub distortion: f64,
    #[serde(skip)]
    pub correspondence: Correspondence,
    pub nodes: u64,
    pub optimal: bool,
}

struct Aborted;

struct Search<'a> {
    nx: usize,
    ny: usize,
    disc: &'a [f64],
    row_cells: Vec<FixedBitSet>,
    col_cells: Vec<FixedBitSet>,
    compat: Vec<FixedBitSet>,
    nodes: u64,
    budget: u64,
}

impl<'a> Search<'a> {
    fn new(nx: usize, ny: usize, disc: &'a [f64], budget: u64) -> Self {
        let cells = nx * ny;
        let mut row_cells = vec![FixedBitSet::with_capacity(cells); nx];
        let mut col_cells = vec![FixedBitSet::with_capacity(cells); ny];
        for c in 0..cells {
            row_cells[c / ny].insert(c);
            col_cells[c % ny].insert(c);
        }
        Search {
            nx,
            ny,
            disc,
            row_cells,
            col_cells,
            compat: Vec::new(),
            nodes: 0,
            budget,
        }
    }

    fn set_threshold(&mut self, t: f64) {
        let cells = self.nx * self.ny;
        self.compat = (0..cells)
            .map(|c| {
                let mut b = FixedBitSet::with_capacity(cells);
                let row = &self.disc[c * cells..(c + 1) * cells];
                for (c2, &v) in row.iter().enumerate() {
                    if v <= t {
                        b.insert(c2);
                    }
                }
                b
            })
            .collect();
    }

    /// Looks for a correspondence containing `base` whose remaining cells
    /// all lie in `allowed`, under the current threshold.
    fn feasible(&mut self, base: &[usize], allowed: &FixedBitSet) -> Result<Option<Vec<usize>>, Aborted> {
        let mut cand = allowed.clone();
        let mut row_cov = vec![0u32; self.nx];
        let mut col_cov = vec![0u32; self.ny];
        for &c in base {
            cand.intersect_with(&self.compat[c]);
            row_cov[c / self.ny] += 1;
            col_cov[c % self.ny] += 1;
        }
        let mut chosen = base.to_vec();
        if self.extend(&mut chosen, &cand, &mut row_cov, &mut col_cov)? {
            Ok(Some(chosen))
        } else {
            Ok(None)
        }
    }

    fn extend(
        &mut self,
        chosen: &mut Vec<usize>,
        cand: &FixedBitSet,
        row_cov: &mut [u32],
        col_cov: &mut [u32],
    ) -> Result<bool, Aborted> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Aborted);
        }
        // most constrained uncovered row or column
        let mut pick: Option<(usize, &FixedBitSet)> = None;
        let rows = row_cov.iter().zip(&self.row_cells);
        let cols = col_cov.iter().zip(&self.col_cells);
        for (&cov, cells) in rows.chain(cols) {
            if cov > 0 {
                continue;
            }
            let options = cand.intersection_count(cells);
            if options == 0 {
                return Ok(false);
            }
            if pick.is_none_or(|(best, _)| options < best) {
                pick = Some((options, cells));
            }
        }
        let Some((_, cells)) = pick else {
            return Ok(true);
        };
        let options: Vec<usize> = cand.intersection(cells).collect();
        for c in options {
            let mut next = cand.clone();
            next.intersect_with(&self.compat[c]);
            chosen.push(c);
            row_cov[c / self.ny] += 1;
            col_cov[c % self.ny] += 1;
            if self.extend(chosen, &next, row_cov, col_cov)? {
                return Ok(true);
            }
            chosen.pop();
            row_cov[c / self.ny] -= 1;
            col_cov[c % self.ny] -= 1;
        }
        Ok(false)
    }

    fn is_cover(&self, cells: &[usize]) -> bool {
        let mut rows = vec![false; self.nx];
        let mut cols = vec![false; self.ny];
        for &c in cells {
            rows[c / self.ny] = true;
            cols[c % self.ny] = true;
        }
        rows.into_iter().chain(cols).all(|b| b)
    }

    /// Lexicographically smallest sorted cell list that is a correspondence
    /// under the current threshold. A proper prefix is always smaller than
    /// its extensions, so we stop as soon as the chosen cells cover.
    fn lex_smallest(&mut self) -> Result<Vec<usize>, Aborted> {
        let cells = self.nx * self.ny;
        let mut chosen: Vec<usize> = Vec::new();
        let mut cand = FixedBitSet::with_capacity(cells);
        cand.insert_range(..);
        while !self.is_cover(&chosen) {
            let start = chosen.last().map_or(0, |&c| c + 1);
            let mut extended = false;
            for c in (start..cells).filter(|&c| cand.contains(c)) {
                let mut allowed = FixedBitSet::with_capacity(cells);
                allowed.insert_range(c + 1..);
                let mut base = chosen.clone();
                base.push(c);
                if self.feasible(&base, &allowed)?.is_some() {
                    cand.intersect_with(&self.compat[c]);
                    chosen.push(c);
                    extended = true;
                    break;
                }
            }
            assert!(extended, "threshold was verified feasible");
        }
        Ok(chosen)
    }
}

/// Exact `d_GH(x, y)` as half the minimum distortion over all
/// correspondences. Intended for spaces of up to about eight points each.
///
/// The returned correspondence is the lexicographically smallest optimal
/// one (pairs compared as sorted `(i, j)` lists). When the node budget runs
/// out, [`Error::BudgetExceeded`] carries the best correspondence found so
/// far, flagged non-optimal.
pub fn exact_gh<X, Y>(x: &X, y: &Y, budget: u64) -> Result<GhResult>
where
    X: Metric + ?Sized,
    Y: Metric + ?Sized,
{
    let (nx, ny) = (x.len(), y.len());
    if nx == 0 || ny == 0 {
        return Err(Error::EmptySpace);
    }
    let cells = nx * ny;
    let mut disc = vec![0.0; cells * cells];
    for c in 0..cells {
        let (i, j) = (c / ny, c % ny);
        for c2 in 0..cells {
            let (i2, j2) = (c2 / ny, c2 % ny);
            disc[c * cells + c2] = (x.dist(i, i2) - y.dist(j, j2)).abs();
        }
    }
    let mut thresholds = disc.clone();
    thresholds.sort_by(f64::total_cmp);
    thresholds.dedup();

    // every correspondence has dis >= |diam X - diam Y|
    let diam = |m: &dyn Fn(usize, usize) -> f64, n: usize| {
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| m(a, b))
            .fold(0.0, f64::max)
    };
    let lower = (diam(&|a, b| x.dist(a, b), nx) - diam(&|a, b| y.dist(a, b), ny)).abs();

    let mut search = Search::new(nx, ny, &disc, budget);
    let mut lo = thresholds.partition_point(|&t| t < lower);
    let mut hi = thresholds.len() - 1;
    // the full product realizes the largest discrepancy
    let mut best: Vec<usize> = (0..cells).collect();
    let all_cells = {
        let mut b = FixedBitSet::with_capacity(cells);
        b.insert_range(..);
        b
    };

    let finish = |cells_used: &[usize], nodes: u64, optimal: bool| {
        let corr = Correspondence::from_cells_unchecked(cells_used, nx, ny);
        let dis = super::distortion(x, y, corr.relation()).expect("valid correspondence");
        GhResult {
            value: dis / 2.0,
            distortion: dis,
            correspondence: corr,
            nodes,
            optimal,
        }
    };

    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        search.set_threshold(thresholds[mid]);
        match search.feasible(&[], &all_cells) {
            Ok(Some(found)) => {
                best = found;
                hi = mid;
            }
            Ok(None) => lo = mid + 1,
            Err(Aborted) => {
                return Err(Error::BudgetExceeded {
                    best: Box::new(finish(&best, search.nodes, false)),
                })
            }
        }
    }

    search.set_threshold(thresholds[hi]);
    match search.lex_smallest() {
        Ok(witness) => Ok(finish(&witness, search.nodes, true)),
        Err(Aborted) => Err(Error::BudgetExceeded {
            best: Box::new(finish(&best, search.nodes, false)),
        }),
    }
}
