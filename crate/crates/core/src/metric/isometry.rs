use super::Metric;

/// Searches for a distance-preserving bijection `x -> y` up to `tol`.
///
/// Returns the lexicographically smallest witness `w` (point `i` of `x` maps
/// to `w[i]` of `y`), or `None` when the spaces are not isometric. Candidate
/// images are pruned by comparing sorted distance rows before backtracking.
pub fn is_isometric<X, Y>(x: &X, y: &Y, tol: f64) -> Option<Vec<usize>>
where
    X: Metric + ?Sized,
    Y: Metric + ?Sized,
{
    let n = x.len();
    if n != y.len() {
        return None;
    }
    let profile = |m: &dyn Fn(usize, usize) -> f64, i: usize| {
        let mut row: Vec<f64> = (0..n).map(|j| m(i, j)).collect();
        row.sort_by(f64::total_cmp);
        row
    };
    let dx = |i, j| x.dist(i, j);
    let dy = |i, j| y.dist(i, j);
    let px: Vec<Vec<f64>> = (0..n).map(|i| profile(&dx, i)).collect();
    let py: Vec<Vec<f64>> = (0..n).map(|j| profile(&dy, j)).collect();
    let same = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(u, v)| (u - v).abs() <= tol);

    let candidates: Vec<Vec<usize>> = px
        .iter()
        .map(|rx| (0..n).filter(|&j| same(rx, &py[j])).collect())
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return None;
    }

    let mut image = Vec::with_capacity(n);
    let mut used = vec![false; n];
    if extend(x, y, tol, &candidates, &mut image, &mut used) {
        Some(image)
    } else {
        None
    }
}

fn extend<X, Y>(
    x: &X,
    y: &Y,
    tol: f64,
    candidates: &[Vec<usize>],
    image: &mut Vec<usize>,
    used: &mut [bool],
) -> bool
where
    X: Metric + ?Sized,
    Y: Metric + ?Sized,
{
    let i = image.len();
    if i == candidates.len() {
        return true;
    }
    for &j in &candidates[i] {
        if used[j] {
            continue;
        }
        let consistent = image
            .iter()
            .enumerate()
            .all(|(k, &jk)| (x.dist(i, k) - y.dist(j, jk)).abs() <= tol);
        if !consistent {
            continue;
        }
        used[j] = true;
        image.push(j);
        if extend(x, y, tol, candidates, image, used) {
            return true;
        }
        image.pop();
        used[j] = false;
    }
    false
}
