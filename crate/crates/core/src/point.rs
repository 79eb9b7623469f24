//! Lattice points of the grading group `Z^k` and axis-aligned boxes.

/// A point of the grading group `G = Z^k`.
pub type Point = Vec<i64>;

pub fn add(a: &[i64], b: &[i64]) -> Point {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[i64], b: &[i64]) -> Point {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg(a: &[i64]) -> Point {
    a.iter().map(|x| -x).collect()
}

pub fn scale(a: &[i64], t: i64) -> Point {
    a.iter().map(|x| x * t).collect()
}

pub fn zero(k: usize) -> Point {
    vec![0; k]
}

/// Closed axis-aligned box `[lo, hi]` in `Z^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBox {
    pub lo: Point,
    pub hi: Point,
}

impl LatticeBox {
    pub fn new(lo: Point, hi: Point) -> Self {
        assert_eq!(lo.len(), hi.len());
        assert!(
            lo.iter().zip(&hi).all(|(l, h)| l <= h),
            "box corners out of order: {:?} .. {:?}",
            lo,
            hi
        );
        LatticeBox { lo, hi }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        p.iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(x, (l, h))| l <= x && x <= h)
    }

    pub fn point_count(&self) -> usize {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| (h - l + 1) as usize)
            .product()
    }

    /// Row-major index of an in-box point.
    pub fn index_of(&self, p: &[i64]) -> usize {
        debug_assert!(self.contains(p));
        let mut idx = 0usize;
        for i in 0..self.dim() {
            let w = (self.hi[i] - self.lo[i] + 1) as usize;
            idx = idx * w + (p[i] - self.lo[i]) as usize;
        }
        idx
    }

    /// All points in row-major (lexicographic) order.
    pub fn points(&self) -> Vec<Point> {
        let mut out = Vec::with_capacity(self.point_count());
        let mut cur = self.lo.clone();
        loop {
            out.push(cur.clone());
            let mut i = self.dim();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < self.hi[i] {
                    cur[i] += 1;
                    for j in i + 1..self.dim() {
                        cur[j] = self.lo[j];
                    }
                    break;
                }
            }
        }
    }

    /// Grow by `pad` on every side (componentwise).
    pub fn padded(&self, pad: &[i64]) -> LatticeBox {
        assert!(pad.iter().all(|p| *p >= 0));
        LatticeBox::new(sub(&self.lo, pad), add(&self.hi, pad))
    }

    /// Shrink by `pad` on every side.  Panics if the result is empty.
    pub fn shrunk(&self, pad: &[i64]) -> LatticeBox {
        LatticeBox::new(add(&self.lo, pad), sub(&self.hi, pad))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_are_lexicographic() {
        let b = LatticeBox::new(vec![0, 0], vec![1, 2]);
        let pts = b.points();
        assert_eq!(pts.len(), 6);
        assert_eq!(pts[0], vec![0, 0]);
        assert_eq!(pts[1], vec![0, 1]);
        assert_eq!(pts[5], vec![1, 2]);
        for (i, p) in pts.iter().enumerate() {
            assert_eq!(b.index_of(p), i);
        }
    }
}
