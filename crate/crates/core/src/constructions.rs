//! Generators for the concrete point sets and covers: lattice windows, fine
//! nets, the chess colouring of the lattice, the comb set with its two-family
//! cover, and brick-wall / interval covers of the plane and the line.
//!
//! All generators are deterministic: identical parameters give identical
//! point orders and family memberships.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::covers::SubsetFamily;
use crate::error::{Error, Result};
use crate::metric::{EuclideanPointSet, SubsetRef};

/// Default cap on generated grid sizes.
pub const DEFAULT_POINT_CAP: usize = 1_000_000;

/// Closed axis-aligned rectangle `[xmin, xmax] x [ymin, ymax]`. Degenerate
/// (zero-width or zero-height) windows are allowed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindowSpec {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl WindowSpec {
    pub fn new(xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Result<Self> {
        let finite = [xmin, xmax, ymin, ymax].iter().all(|v| v.is_finite());
        if !finite || xmax < xmin || ymax < ymin {
            return Err(Error::InvalidWindow);
        }
        Ok(WindowSpec { xmin, xmax, ymin, ymax })
    }

    /// `[0, n] x [0, n]`
    pub fn square(n: f64) -> Result<Self> {
        WindowSpec::new(0.0, n, 0.0, n)
    }

    pub fn width(&self) -> f64 {
        self.xmax - self.xmin
    }

    pub fn height(&self) -> f64 {
        self.ymax - self.ymin
    }

    /// The window shrunk by `by` on every side, if anything remains.
    pub fn shrink(&self, by: f64) -> Option<Self> {
        WindowSpec::new(self.xmin + by, self.xmax - by, self.ymin + by, self.ymax - by).ok()
    }

    pub fn contains(&self, p: [f64; 2]) -> bool {
        p[0] >= self.xmin && p[0] <= self.xmax && p[1] >= self.ymin && p[1] <= self.ymax
    }
}

/// Grid coordinate `origin + k * spacing`. When `1/spacing` is an integer
/// `q` the value is computed as `origin + k / q`, which is exact whenever
/// `k / q` is representable (integers, halves, ...).
fn grid_coord(origin: f64, k: i64, spacing: f64) -> f64 {
    match inverse_integer(spacing) {
        Some(q) => origin + k as f64 / q as f64,
        None => origin + k as f64 * spacing,
    }
}

fn inverse_integer(spacing: f64) -> Option<i64> {
    let inv = 1.0 / spacing;
    let q = inv.round();
    (q >= 1.0 && (inv - q).abs() <= 1e-9 * q).then_some(q as i64)
}

fn coord_label(p: [f64; 2]) -> String {
    format!("({},{})", p[0], p[1])
}

/// All integer points of the closed window in row-major order (y outer),
/// labeled by their coordinates.
pub fn gen_lattice_window(w: &WindowSpec) -> Result<EuclideanPointSet> {
    let (x0, x1) = (w.xmin.ceil() as i64, w.xmax.floor() as i64);
    let (y0, y1) = (w.ymin.ceil() as i64, w.ymax.floor() as i64);
    if x0 > x1 || y0 > y1 {
        return Err(Error::EmptyWindow);
    }
    let count = ((x1 - x0 + 1) * (y1 - y0 + 1)) as usize;
    if count > DEFAULT_POINT_CAP {
        return Err(Error::TooManyPoints {
            count,
            cap: DEFAULT_POINT_CAP,
        });
    }
    let pts: Vec<[f64; 2]> = (y0..=y1)
        .flat_map(|y| (x0..=x1).map(move |x| [x as f64, y as f64]))
        .collect();
    let labels = pts.iter().map(|&p| coord_label(p)).collect();
    EuclideanPointSet::new(pts, Some(labels))
}

/// Square grid of spacing `eps` anchored at `(xmin, ymin)` reaching at
/// least to `(xmax, ymax)`, so every window point is within `eps/sqrt(2)`
/// of the net. At most [`DEFAULT_POINT_CAP`] points.
pub fn gen_epsilon_net(w: &WindowSpec, eps: f64) -> Result<EuclideanPointSet> {
    gen_epsilon_net_capped(w, eps, DEFAULT_POINT_CAP)
}

pub fn gen_epsilon_net_capped(w: &WindowSpec, eps: f64, cap: usize) -> Result<EuclideanPointSet> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidParameter(format!("net spacing must be positive, got {eps}")));
    }
    let steps = |len: f64| (len / eps - 1e-9).ceil().max(0.0) as i64;
    let (nx, ny) = (steps(w.width()), steps(w.height()));
    let count = (nx as u128 + 1) * (ny as u128 + 1);
    if count > cap as u128 {
        return Err(Error::TooManyPoints {
            count: count.min(usize::MAX as u128) as usize,
            cap,
        });
    }
    let pts = (0..=ny)
        .flat_map(|j| (0..=nx).map(move |i| (i, j)))
        .map(|(i, j)| [grid_coord(w.xmin, i, eps), grid_coord(w.ymin, j, eps)])
        .collect();
    EuclideanPointSet::new(pts, None)
}

/// Chess colouring of integer points: `red` holds the singletons with
/// `x + y` even, `blue` those with `x + y` odd.
pub fn gen_chess_families(lattice: &EuclideanPointSet) -> Result<[SubsetFamily; 2]> {
    let mut red = Vec::new();
    let mut blue = Vec::new();
    for (i, p) in lattice.points().iter().enumerate() {
        if p[0].fract() != 0.0 || p[1].fract() != 0.0 {
            return Err(Error::NonIntegerPoint(i));
        }
        let parity = (p[0] as i64 + p[1] as i64).rem_euclid(2);
        if parity == 0 { &mut red } else { &mut blue }.push(SubsetRef::singleton(i));
    }
    Ok([SubsetFamily::new("red", red)?, SubsetFamily::new("blue", blue)?])
}

/// Samples of the comb set: the horizontal axis together with every
/// vertical line `x = n`, `n` an integer, clipped to the window and sampled
/// at spacing `delta` aligned with the origin. Crossings appear once.
/// Axis points come first (by x), then each vertical line (by n, then y).
pub fn gen_comb_set(w: &WindowSpec, delta: f64) -> Result<EuclideanPointSet> {
    let q = match inverse_integer(delta) {
        Some(q) if delta > 0.0 => q,
        _ => return Err(Error::DeltaNotDividingOne(delta)),
    };
    let qf = q as f64;
    let lo = |v: f64| (v * qf - 1e-9).ceil() as i64;
    let hi = |v: f64| (v * qf + 1e-9).floor() as i64;
    let axis = w.ymin <= 0.0 && 0.0 <= w.ymax;
    let mut pts = Vec::new();
    if axis {
        pts.extend((lo(w.xmin)..=hi(w.xmax)).map(|m| [m as f64 / qf, 0.0]));
    }
    let (n0, n1) = ((w.xmin - 1e-9).ceil() as i64, (w.xmax + 1e-9).floor() as i64);
    for n in n0..=n1 {
        for m in lo(w.ymin)..=hi(w.ymax) {
            if axis && m == 0 {
                continue;
            }
            pts.push([n as f64, m as f64 / qf]);
        }
    }
    if pts.is_empty() {
        return Err(Error::EmptyWindow);
    }
    EuclideanPointSet::new(pts, None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum CombPiece {
    /// `{n} x [-h/2, h/2]` plus the axis bar `[n - 1/2, n + 1/2) x {0}`
    Crossing(i64),
    /// `{n} x (h/2 + k h, h/2 + (k+1) h]`, mirrored below the axis for `up = false`
    Segment { n: i64, up: bool, k: i64 },
}

impl CombPiece {
    fn colour(self) -> usize {
        match self {
            CombPiece::Crossing(n) => n.rem_euclid(2) as usize,
            CombPiece::Segment { n, k, .. } => (n + k + 1).rem_euclid(2) as usize,
        }
    }
}

/// Two-family cover of comb samples by pieces of height `h`.
///
/// Crossing pieces join the vertical stretch `|y| <= h/2` of line `n` with
/// the axis bar around `n`; the rest of each vertical line is cut into
/// segments of length `h`. Crossings are coloured by the parity of `n`,
/// segment `k` of line `n` by the parity of `n + k + 1`. Each sample lands in
/// exactly one piece. With `h = 2` same-colour pieces are at distance at
/// least 1 and pieces have diameter at most 2; `h < sqrt(3)` would bring a
/// bar end within distance 1 of the first segment on the next line.
pub fn gen_comb_cover(comb: &EuclideanPointSet, h: f64) -> Result<[SubsetFamily; 2]> {
    if !(h * h >= 3.0 - 1e-12) || !h.is_finite() {
        return Err(Error::HTooSmall(h));
    }
    let mut pieces: BTreeMap<CombPiece, Vec<usize>> = BTreeMap::new();
    for (i, &[x, y]) in comb.points().iter().enumerate() {
        let piece = if y == 0.0 {
            CombPiece::Crossing((x + 0.5).floor() as i64)
        } else if x.fract() == 0.0 {
            let n = x as i64;
            if y.abs() <= h / 2.0 {
                CombPiece::Crossing(n)
            } else {
                let k = ((y.abs() - h / 2.0) / h).ceil() as i64 - 1;
                CombPiece::Segment { n, up: y > 0.0, k }
            }
        } else {
            return Err(Error::NotOnComb(i));
        };
        pieces.entry(piece).or_default().push(i);
    }
    let mut members: [Vec<SubsetRef>; 2] = [Vec::new(), Vec::new()];
    for (piece, idx) in pieces {
        members[piece.colour()].push(SubsetRef::from_iter_unchecked(idx));
    }
    let [red, blue] = members;
    Ok([SubsetFamily::new("red", red)?, SubsetFamily::new("blue", blue)?])
}

/// Running-bond brick tiling with 3 colours over the points of `net`.
///
/// Brick `(i, j)` is `[iL + jL/2, (i+1)L + jL/2) x [jL, (j+1)L)` with colour
/// `(i - j) mod 3`. Bricks partition the plane; same-colour bricks are at
/// distance at least `L/2` and each has diameter at most `L sqrt(2)`.
pub fn gen_brick_cover(net: &EuclideanPointSet, r: f64, l: f64) -> Result<[SubsetFamily; 3]> {
    check_block_length(r, l)?;
    let mut bricks: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
    for (idx, &[x, y]) in net.points().iter().enumerate() {
        let j = (y / l).floor() as i64;
        let i = ((x - j as f64 * l / 2.0) / l).floor() as i64;
        bricks.entry((j, i)).or_default().push(idx);
    }
    let mut members: [Vec<SubsetRef>; 3] = Default::default();
    for ((j, i), idx) in bricks {
        members[(i - j).rem_euclid(3) as usize].push(SubsetRef::from_iter_unchecked(idx));
    }
    let [a, b, c] = members;
    Ok([
        SubsetFamily::new("brick-0", a)?,
        SubsetFamily::new("brick-1", b)?,
        SubsetFamily::new("brick-2", c)?,
    ])
}

/// Net of spacing `r/4` over `w` together with its brick cover.
pub fn brick_cover_on_window(
    w: &WindowSpec,
    r: f64,
    l: f64,
) -> Result<(EuclideanPointSet, [SubsetFamily; 3])> {
    check_block_length(r, l)?;
    let net = gen_epsilon_net(w, r / 4.0)?;
    let fams = gen_brick_cover(&net, r, l)?;
    Ok((net, fams))
}

/// Intervals `[kL, (k+1)L)` of the x-axis coloured by the parity of `k`.
pub fn gen_interval_cover(net: &EuclideanPointSet, r: f64, l: f64) -> Result<[SubsetFamily; 2]> {
    check_block_length(r, l)?;
    let mut cells: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (idx, p) in net.points().iter().enumerate() {
        cells.entry((p[0] / l).floor() as i64).or_default().push(idx);
    }
    let mut members: [Vec<SubsetRef>; 2] = Default::default();
    for (k, idx) in cells {
        members[k.rem_euclid(2) as usize].push(SubsetRef::from_iter_unchecked(idx));
    }
    let [even, odd] = members;
    Ok([SubsetFamily::new("even", even)?, SubsetFamily::new("odd", odd)?])
}

/// 1-D net of spacing `r/4` on `[xmin, xmax]` (as points `(x, 0)`) with its
/// interval cover.
pub fn interval_cover_on_range(
    xmin: f64,
    xmax: f64,
    r: f64,
    l: f64,
) -> Result<(EuclideanPointSet, [SubsetFamily; 2])> {
    check_block_length(r, l)?;
    let net = gen_epsilon_net(&WindowSpec::new(xmin, xmax, 0.0, 0.0)?, r / 4.0)?;
    let fams = gen_interval_cover(&net, r, l)?;
    Ok((net, fams))
}

fn check_block_length(r: f64, l: f64) -> Result<()> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidSeparation(r));
    }
    if !(l >= 2.0 * r) || !l.is_finite() {
        return Err(Error::LTooSmall { l, r });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::{check_cover, check_r_disjoint, check_uniform_bound, multiplicity, Strictness};
    use crate::metric::{hausdorff, set_distance, Metric};

    #[test]
    fn lattice_window_counts() {
        assert_eq!(gen_lattice_window(&WindowSpec::square(2.0).unwrap()).unwrap().len(), 9);
        assert_eq!(gen_lattice_window(&WindowSpec::square(0.0).unwrap()).unwrap().len(), 1);
        let big = gen_lattice_window(&WindowSpec::square(10.0).unwrap()).unwrap();
        assert_eq!(big.len(), 121);
        assert_eq!(big.point(12), [1.0, 1.0]);
        assert_eq!(big.labels().unwrap()[12], "(1,1)");
        assert!(matches!(
            gen_lattice_window(&WindowSpec::new(0.2, 0.8, 0.0, 1.0).unwrap()),
            Err(Error::EmptyWindow)
        ));
        assert!(WindowSpec::new(1.0, 0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn net_shapes() {
        let corners = gen_epsilon_net(&WindowSpec::new(0.0, 1.0, 0.0, 0.0).unwrap(), 1.0).unwrap();
        assert_eq!(corners.points(), &[[0.0, 0.0], [1.0, 0.0]]);
        let net = gen_epsilon_net(&WindowSpec::square(10.0).unwrap(), 0.1).unwrap();
        assert_eq!(net.len(), 101 * 101);
        let has = |p: [f64; 2]| net.points().contains(&p);
        assert!(has([3.5, 7.5]) && has([0.5, 9.5]) && has([3.0, 10.0]));
        assert!(matches!(
            gen_epsilon_net_capped(&WindowSpec::square(10.0).unwrap(), 0.1, 1000),
            Err(Error::TooManyPoints { count: 10201, cap: 1000 })
        ));
        // spacing that does not divide the width still reaches the far edge
        let ragged = gen_epsilon_net(&WindowSpec::square(1.0).unwrap(), 0.3).unwrap();
        assert_eq!(ragged.len(), 25);
    }

    #[test]
    fn net_density_at_sampled_points() {
        let w = WindowSpec::new(-1.0, 2.0, 0.5, 3.0).unwrap();
        let eps = 0.35;
        let net = gen_epsilon_net(&w, eps).unwrap();
        let probes = [
            [w.xmin, w.ymin],
            [w.xmax, w.ymax],
            [w.xmin, w.ymax],
            [w.xmax, w.ymin],
            [0.5, 1.75],
            [1.99, 2.99],
        ];
        for q in probes {
            let d = net
                .points()
                .iter()
                .map(|&p| crate::metric::euclid(p, q))
                .fold(f64::INFINITY, f64::min);
            assert!(d <= eps * 2f64.sqrt() / 2.0 + 1e-12, "{q:?} at {d}");
        }
    }

    #[test]
    fn chess_parity() {
        let l = gen_lattice_window(&WindowSpec::square(1.0).unwrap()).unwrap();
        let [red, blue] = gen_chess_families(&l).unwrap();
        // points (0,0),(1,0),(0,1),(1,1)
        assert_eq!(red.members(), &[SubsetRef::singleton(0), SubsetRef::singleton(3)]);
        assert_eq!(blue.members(), &[SubsetRef::singleton(1), SubsetRef::singleton(2)]);
        let off = EuclideanPointSet::new(vec![[0.5, 0.0]], None).unwrap();
        assert!(matches!(gen_chess_families(&off), Err(Error::NonIntegerPoint(0))));
    }

    #[test]
    fn chess_families_on_ten_window() {
        let l = gen_lattice_window(&WindowSpec::square(10.0).unwrap()).unwrap();
        let fams = gen_chess_families(&l).unwrap();
        assert_eq!((fams[0].len(), fams[1].len()), (61, 60));
        let sqrt2 = 2f64.sqrt();
        for f in &fams {
            let rep = check_r_disjoint(&l, f, sqrt2, Strictness::NonStrict).unwrap();
            assert!(rep.passed);
            assert_eq!(rep.min_gap, Some(sqrt2));
            assert_eq!(check_uniform_bound(&l, f).unwrap(), 0.0);
        }
        let all = SubsetRef::all(l.len());
        assert!(check_cover(&l, &fams, &all).unwrap().covered);
        assert_eq!(multiplicity(&l, &fams, &all).unwrap(), 1);
        let red_only = check_cover(&l, &fams[..1], &all).unwrap();
        assert_eq!(red_only.uncovered.len(), 60);
    }

    #[test]
    fn comb_set_small_window() {
        let c = gen_comb_set(&WindowSpec::new(0.0, 2.0, -1.0, 1.0).unwrap(), 1.0).unwrap();
        // enumerated by hand: axis {0,1,2}x{0}, verticals {0,1,2}x{-1,1}
        let expected = vec![
            [0.0, 0.0], [1.0, 0.0], [2.0, 0.0],
            [0.0, -1.0], [0.0, 1.0], [1.0, -1.0], [1.0, 1.0], [2.0, -1.0], [2.0, 1.0],
        ];
        assert_eq!(c.points(), expected.as_slice());
        assert!(matches!(
            gen_comb_set(&WindowSpec::square(2.0).unwrap(), 0.3),
            Err(Error::DeltaNotDividingOne(_))
        ));
    }

    #[test]
    fn comb_samples_lie_on_comb() {
        let c = gen_comb_set(&WindowSpec::new(-2.0, 3.0, -2.0, 2.0).unwrap(), 0.05).unwrap();
        for p in c.points() {
            assert!(p[1] == 0.0 || p[0].fract() == 0.0, "{p:?}");
        }
    }

    fn comb_window() -> (EuclideanPointSet, [SubsetFamily; 2]) {
        let c = gen_comb_set(&WindowSpec::new(-3.0, 3.0, -6.0, 6.0).unwrap(), 0.05).unwrap();
        let f = gen_comb_cover(&c, 2.0).unwrap();
        (c, f)
    }

    #[test]
    fn comb_cover_is_one_disjoint_with_diameter_two() {
        let (c, fams) = comb_window();
        for f in &fams {
            let rep = check_r_disjoint(&c, f, 1.0, Strictness::NonStrict).unwrap();
            assert!(rep.passed, "{rep:?}");
        }
        let c_max = fams.iter().map(|f| check_uniform_bound(&c, f).unwrap()).fold(0.0, f64::max);
        assert_eq!(c_max, 2.0);
        let all = SubsetRef::all(c.len());
        assert!(check_cover(&c, &fams, &all).unwrap().covered);
        assert_eq!(multiplicity(&c, &fams, &all).unwrap(), 1);
    }

    #[test]
    fn comb_piece_distances() {
        let (c, fams) = comb_window();
        let find = |pt: [f64; 2]| c.points().iter().position(|&p| p == pt).unwrap();
        let piece_of = |i: usize| {
            fams.iter()
                .flat_map(|f| f.members())
                .find(|m| m.contains(i))
                .unwrap()
                .clone()
        };
        let p0 = piece_of(find([0.0, 0.0]));
        let p2 = piece_of(find([2.0, 0.0]));
        // bars [-1/2, 1/2) and [3/2, 5/2) sampled at 0.05
        assert!((set_distance(&c, &p0, &p2).unwrap() - 1.05).abs() < 1e-12);
        // S_{1,0} on line 1 above y = 1; nearest to P_0 is the top of its vertical stretch
        let s10 = piece_of(find([1.0, 2.0]));
        let d = set_distance(&c, &p0, &s10).unwrap();
        assert!((d - (1.0f64 + 0.05 * 0.05).sqrt()).abs() < 1e-12, "{d}");
        assert!(fams[0].members().contains(&p0) && fams[0].members().contains(&s10));
    }

    #[test]
    fn comb_cover_rejects_short_pieces() {
        let c = gen_comb_set(&WindowSpec::square(2.0).unwrap(), 0.5).unwrap();
        assert!(matches!(gen_comb_cover(&c, 1.7), Err(Error::HTooSmall(_))));
        assert!(gen_comb_cover(&c, 3f64.sqrt()).is_ok());
        let off = EuclideanPointSet::new(vec![[0.5, 0.5]], None).unwrap();
        assert!(matches!(gen_comb_cover(&off, 2.0), Err(Error::NotOnComb(0))));
    }

    #[test]
    fn brick_colours_differ_across_neighbours() {
        let colour = |i: i64, j: i64| (i - j).rem_euclid(3);
        for (i, j) in [(0, 0), (5, -3), (-4, 7)] {
            for (di, dj) in [(1, 0), (-1, 0), (0, 1), (0, -1), (-1, 1), (1, -1)] {
                assert_ne!(colour(i, j), colour(i + di, j + dj));
            }
            assert_eq!(colour(i, j), colour(i - 2, j + 1));
        }
    }

    #[test]
    fn brick_same_colour_gap_is_half_length() {
        // continuum x-extents of (i, j) and (i - 2, j + 1) for L = 3
        let l = 3.0;
        let (i, j) = (4.0, 1.0);
        let right_of_upper = (i - 1.0) * l + (j + 1.0) * l / 2.0;
        let left_of_lower = i * l + j * l / 2.0;
        assert_eq!(left_of_lower - right_of_upper, l / 2.0);
    }

    #[test]
    fn brick_cover_small_window() {
        let r = 1.0;
        let (net, fams) = brick_cover_on_window(&WindowSpec::square(12.0).unwrap(), r, 3.0 * r).unwrap();
        let all = SubsetRef::all(net.len());
        assert_eq!(multiplicity(&net, &fams, &all).unwrap(), 1);
        for f in &fams {
            let rep = check_r_disjoint(&net, f, 1.5 * r, Strictness::NonStrict).unwrap();
            assert!(rep.passed);
            assert!(check_uniform_bound(&net, f).unwrap() <= 3.0 * r * 2f64.sqrt());
        }
        assert!(matches!(
            brick_cover_on_window(&WindowSpec::square(12.0).unwrap(), 1.0, 1.5),
            Err(Error::LTooSmall { .. })
        ));
    }

    #[test]
    fn interval_cover() {
        let r = 1.0;
        let (net, fams) = interval_cover_on_range(0.0, 20.0, r, 3.0).unwrap();
        let all = SubsetRef::all(net.len());
        assert!(check_cover(&net, &fams, &all).unwrap().covered);
        assert_eq!(multiplicity(&net, &fams, &all).unwrap(), 1);
        for f in &fams {
            let rep = check_r_disjoint(&net, f, 3.0, Strictness::NonStrict).unwrap();
            assert!(rep.passed);
            // sampled intervals are half-open, so the gap is L plus one spacing
            assert_eq!(rep.min_gap, Some(3.25));
            assert!(check_uniform_bound(&net, f).unwrap() <= 3.0);
        }
    }

    #[test]
    fn lattice_to_net_hausdorff_small() {
        let w = WindowSpec::square(3.0).unwrap();
        let lat = gen_lattice_window(&w).unwrap();
        let net = gen_epsilon_net(&w, 0.1).unwrap();
        let (amb, a, b) = net.union(&lat);
        assert_eq!(amb.len(), net.len());
        assert_eq!(hausdorff(&amb, &a, &b).unwrap(), 0.5f64.sqrt());
        assert_eq!(amb.dist(0, 1), 0.1);
    }
}
