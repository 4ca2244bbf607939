use super::euclid;

/// Uniform bucket grid for exact nearest-neighbor distance queries in the
/// plane. Buckets are square, sized so the grid holds roughly one point per
/// cell.
#[derive(Debug, Clone)]
pub struct GridIndex {
    points: Vec<[f64; 2]>,
    origin: [f64; 2],
    cell: f64,
    nx: usize,
    ny: usize,
    buckets: Vec<Vec<u32>>,
}

impl GridIndex {
    pub fn new(points: Vec<[f64; 2]>) -> Self {
        assert!(!points.is_empty(), "GridIndex over no points");
        let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        for p in &points {
            for a in 0..2 {
                lo[a] = lo[a].min(p[a]);
                hi[a] = hi[a].max(p[a]);
            }
        }
        let side = (hi[0] - lo[0]).max(hi[1] - lo[1]);
        let per_side = (points.len() as f64).sqrt().ceil().max(1.0);
        let cell = if side > 0.0 { side / per_side } else { 1.0 };
        let nx = ((hi[0] - lo[0]) / cell) as usize + 1;
        let ny = ((hi[1] - lo[1]) / cell) as usize + 1;
        let mut buckets = vec![Vec::new(); nx * ny];
        for (k, p) in points.iter().enumerate() {
            let cx = (((p[0] - lo[0]) / cell) as usize).min(nx - 1);
            let cy = (((p[1] - lo[1]) / cell) as usize).min(ny - 1);
            buckets[cy * nx + cx].push(k as u32);
        }
        GridIndex {
            points,
            origin: lo,
            cell,
            nx,
            ny,
            buckets,
        }
    }

    /// Distance from `q` to the closest indexed point.
    pub fn nearest_distance(&self, q: [f64; 2]) -> f64 {
        let cx = ((q[0] - self.origin[0]) / self.cell).floor() as i64;
        let cy = ((q[1] - self.origin[1]) / self.cell).floor() as i64;
        let (nx, ny) = (self.nx as i64, self.ny as i64);
        // rings beyond this radius cannot touch the grid
        let max_ring = [cx, nx - 1 - cx, cy, ny - 1 - cy]
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap()
            + 1;
        let mut best = f64::INFINITY;
        for ring in 0..=max_ring {
            // unvisited points sit in rings >= `ring`, hence at least
            // `(ring - 1) * cell` away
            if ring > 0 && best <= (ring - 1) as f64 * self.cell {
                break;
            }
            let (x0, x1, y0, y1) = (cx - ring, cx + ring, cy - ring, cy + ring);
            for y in y0.max(0)..=y1.min(ny - 1) {
                let on_edge_row = y == y0 || y == y1;
                let mut x = x0.max(0);
                while x <= x1.min(nx - 1) {
                    if on_edge_row || x == x0 || x == x1 {
                        for &k in &self.buckets[(y * nx + x) as usize] {
                            let d = euclid(q, self.points[k as usize]);
                            if d < best {
                                best = d;
                            }
                        }
                    }
                    // interior of a middle row: jump straight to the right edge
                    x = if on_edge_row || x == x1 { x + 1 } else { x1.max(x + 1) };
                }
            }
        }
        best
    }
}
