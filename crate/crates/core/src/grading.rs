//! Gradings of polynomial rings by `G = Z^k`.
//!
//! A [`Grading`] records the degree matrix (column `i` is `deg X_i`), a
//! positivity functional found by Fourier-Motzkin elimination, the monoid
//! `C` generated by the variable degrees, and the translation sets `E_l`
//! and `F_l` (sums of `l` distinct / arbitrary variable degrees) used by
//! every support bound.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::point::{self, Point};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradingError {
    #[error("no positivity functional exists for this degree matrix")]
    NoPositiveFunctional,
    #[error("invalid degree matrix: {0}")]
    BadShape(String),
}

/// Which translation family a [`ShiftSet`] was built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftKind {
    /// Sums of `l` distinct variable degrees.
    E,
    /// Sums of `l` arbitrary (repeats allowed) variable degrees.
    F,
}

/// A finite set of translations in `Z^k`, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftSet {
    pub points: Vec<Point>,
    pub level: i64,
    pub kind: ShiftKind,
}

impl ShiftSet {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Componentwise maximum of |coordinate| over all points; zero vector
    /// for the empty set.
    pub fn max_abs(&self, k: usize) -> Point {
        let mut m = vec![0i64; k];
        for p in &self.points {
            for i in 0..k {
                m[i] = m[i].max(p[i].abs());
            }
        }
        m
    }
}

/// The grading data of `R = k[X_1..X_n]` with `deg X_i ∈ Z^k`.
#[derive(Debug)]
pub struct Grading {
    /// Number of variables.
    pub n: usize,
    /// Rank of the grading group.
    pub k: usize,
    /// Degree of each variable (columns of the degree matrix).
    pub degrees: Vec<Point>,
    /// Exact rational positivity functional with `phi . deg X_i > 0`.
    pub phi: Vec<BigRational>,
    /// Integer rescaling of `phi` (all weights positive).
    pub phi_int: Vec<i64>,
    /// The distinct variable degrees, lexicographically sorted.
    pub distinct_degrees: Vec<Point>,
    /// For the standard multigraded case (every degree a standard basis
    /// vector, each coordinate hit): variable indices per coordinate block.
    pub blocks: Option<Vec<Vec<usize>>>,
    monoid_cache: Mutex<HashMap<Point, bool>>,
}

impl Grading {
    /// Build a grading from the columns of the degree matrix, finding a
    /// positivity functional or refusing the input.
    pub fn new(k: usize, degrees: Vec<Point>) -> Result<Self, GradingError> {
        if k == 0 || degrees.is_empty() {
            return Err(GradingError::BadShape("need k >= 1 and n >= 1".into()));
        }
        for d in &degrees {
            if d.len() != k {
                return Err(GradingError::BadShape(format!(
                    "degree {:?} has wrong length (expected {})",
                    d, k
                )));
            }
        }
        let phi = find_positivity_functional(k, &degrees)?;
        let phi_int = integerize(&phi);
        let mut distinct = degrees.clone();
        distinct.sort();
        distinct.dedup();
        let blocks = detect_blocks(k, &degrees);
        Ok(Grading {
            n: degrees.len(),
            k,
            degrees,
            phi,
            phi_int,
            distinct_degrees: distinct,
            blocks,
            monoid_cache: Mutex::new(HashMap::new()),
        })
    }

    /// Standard `Z`-grading on `n` variables.
    pub fn standard_z(n: usize) -> Self {
        Grading::new(1, vec![vec![1]; n]).unwrap()
    }

    /// Standard multigrading with the given block sizes (block `b` holds
    /// `sizes[b]` variables of degree `e_b`).
    pub fn standard_multigraded(sizes: &[usize]) -> Self {
        let k = sizes.len();
        let mut degrees = Vec::new();
        for (b, &s) in sizes.iter().enumerate() {
            for _ in 0..s {
                let mut d = vec![0i64; k];
                d[b] = 1;
                degrees.push(d);
            }
        }
        Grading::new(k, degrees).unwrap()
    }

    pub fn is_standard_multigraded(&self) -> bool {
        self.blocks.is_some()
    }

    /// Integer weight `phi_int . v`.
    pub fn weight(&self, v: &[i64]) -> i64 {
        self.phi_int.iter().zip(v).map(|(w, x)| w * x).sum()
    }

    /// Is `v` in the monoid `C` generated by the variable degrees?
    pub fn monoid_contains(&self, v: &[i64]) -> bool {
        if v.iter().all(|x| *x == 0) {
            return true;
        }
        if let Some(blocks) = &self.blocks {
            // C = Z^k_{>=0} restricted to coordinates with a variable
            return v
                .iter()
                .enumerate()
                .all(|(b, x)| *x >= 0 && (*x == 0 || !blocks[b].is_empty()));
        }
        if let Some(&hit) = self.monoid_cache.lock().unwrap().get(v) {
            return hit;
        }
        let hit = self.search_monoid(v);
        self.monoid_cache.lock().unwrap().insert(v.to_vec(), hit);
        hit
    }

    fn search_monoid(&self, v: &[i64]) -> bool {
        let w = self.weight(v);
        if w < 0 {
            return false;
        }
        // bounded knapsack over the distinct degrees
        fn rec(g: &Grading, idx: usize, rest: &mut Point, w: i64) -> bool {
            if w == 0 {
                return rest.iter().all(|x| *x == 0);
            }
            if idx == g.distinct_degrees.len() {
                return false;
            }
            let d = &g.distinct_degrees[idx];
            let dw = g.weight(d);
            let maxc = w / dw;
            for c in 0..=maxc {
                if c > 0 {
                    for (r, x) in rest.iter_mut().zip(d) {
                        *r -= x;
                    }
                }
                if rec(g, idx + 1, rest, w - c * dw) {
                    for (r, x) in rest.iter_mut().zip(d) {
                        *r += x * c;
                    }
                    return true;
                }
            }
            for (r, x) in rest.iter_mut().zip(d) {
                *r += x * maxc;
            }
            false
        }
        let mut rest = v.to_vec();
        rec(self, 0, &mut rest, w)
    }

    /// The partial order `p <= q  iff  q - p ∈ C`.
    pub fn divides(&self, p: &[i64], q: &[i64]) -> bool {
        self.monoid_contains(&point::sub(q, p))
    }

    /// The translation set `E_l` or `F_l`, optionally restricted to
    /// variables whose degree lies in `restrict_to`.
    pub fn shift_set(&self, l: i64, kind: ShiftKind, restrict_to: Option<&[Point]>) -> ShiftSet {
        let degrees: Vec<&Point> = match restrict_to {
            None => self.degrees.iter().collect(),
            Some(allowed) => self
                .degrees
                .iter()
                .filter(|d| allowed.contains(d))
                .collect(),
        };
        let points = match l {
            0 => vec![point::zero(self.k)],
            l if l < -1 => Vec::new(),
            -1 => {
                let mut v: Vec<Point> = degrees.iter().map(|d| point::neg(d)).collect();
                v.sort();
                v.dedup();
                v
            }
            l => {
                let l = l as usize;
                if matches!(kind, ShiftKind::E) && l > degrees.len() {
                    Vec::new()
                } else {
                    let distinct = matches!(kind, ShiftKind::E);
                    sums_of(&degrees, l, distinct, self.k)
                }
            }
        };
        ShiftSet {
            points,
            level: l,
            kind,
        }
    }

    /// The set `E^f_l` built from an arbitrary tuple of degrees
    /// (sums over strictly increasing index subsets of the tuple).
    pub fn shift_set_from_tuple(&self, tuple: &[Point], l: i64) -> ShiftSet {
        let refs: Vec<&Point> = tuple.iter().collect();
        let points = match l {
            0 => vec![point::zero(self.k)],
            l if l < -1 => Vec::new(),
            -1 => {
                let mut v: Vec<Point> = refs.iter().map(|d| point::neg(d)).collect();
                v.sort();
                v.dedup();
                v
            }
            l => {
                let l = l as usize;
                if l > refs.len() {
                    Vec::new()
                } else {
                    sums_of(&refs, l, true, self.k)
                }
            }
        };
        ShiftSet {
            points,
            level: l,
            kind: ShiftKind::E,
        }
    }
}

fn sums_of(degrees: &[&Point], l: usize, distinct: bool, k: usize) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::new();
    let mut acc = point::zero(k);
    fn rec(
        degrees: &[&Point],
        start: usize,
        left: usize,
        distinct: bool,
        acc: &mut Point,
        out: &mut Vec<Point>,
    ) {
        if left == 0 {
            out.push(acc.clone());
            return;
        }
        for i in start..degrees.len() {
            for (a, x) in acc.iter_mut().zip(degrees[i]) {
                *a += x;
            }
            rec(
                degrees,
                if distinct { i + 1 } else { i },
                left - 1,
                distinct,
                acc,
                out,
            );
            for (a, x) in acc.iter_mut().zip(degrees[i]) {
                *a -= x;
            }
        }
    }
    rec(degrees, 0, l, distinct, &mut acc, &mut out);
    out.sort();
    out.dedup();
    out
}

fn detect_blocks(k: usize, degrees: &[Point]) -> Option<Vec<Vec<usize>>> {
    let mut blocks = vec![Vec::new(); k];
    for (i, d) in degrees.iter().enumerate() {
        let ones: Vec<usize> = (0..k).filter(|&b| d[b] != 0).collect();
        if ones.len() != 1 || d[ones[0]] != 1 {
            return None;
        }
        blocks[ones[0]].push(i);
    }
    if blocks.iter().any(|b| b.is_empty()) {
        return None;
    }
    Some(blocks)
}

/// Find an exact rational `phi` with `phi . d > 0` for every degree `d`,
/// by Fourier-Motzkin elimination on the system `phi . d >= 1`.
///
/// Variable values are chosen deterministically (0 clamped into the
/// feasible interval) during back substitution.
pub fn find_positivity_functional(
    k: usize,
    degrees: &[Point],
) -> Result<Vec<BigRational>, GradingError> {
    // each constraint: sum_j a[j] phi_j >= rhs
    #[derive(Clone)]
    struct Cons {
        a: Vec<BigRational>,
        rhs: BigRational,
    }
    let big = |n: i64| BigRational::from_integer(BigInt::from(n));
    let mut stages: Vec<Vec<Cons>> = Vec::new();
    let mut cur: Vec<Cons> = degrees
        .iter()
        .map(|d| Cons {
            a: d.iter().map(|x| big(*x)).collect(),
            rhs: big(1),
        })
        .collect();
    for var in (0..k).rev() {
        stages.push(cur.clone());
        let mut next: Vec<Cons> = Vec::new();
        let mut lower: Vec<Cons> = Vec::new(); // coeff > 0: phi_var >= ...
        let mut upper: Vec<Cons> = Vec::new(); // coeff < 0: phi_var <= ...
        for c in cur.into_iter() {
            if c.a[var].is_zero() {
                next.push(c);
            } else if c.a[var].is_positive() {
                lower.push(c);
            } else {
                upper.push(c);
            }
        }
        for lo in &lower {
            for up in &upper {
                // combine to eliminate phi_var
                let s = -up.a[var].clone(); // > 0
                let t = lo.a[var].clone(); // > 0
                let a = (0..k)
                    .map(|j| lo.a[j].clone() * s.clone() + up.a[j].clone() * t.clone())
                    .collect();
                let rhs = lo.rhs.clone() * s.clone() + up.rhs.clone() * t.clone();
                next.push(Cons { a, rhs });
            }
        }
        cur = next;
    }
    // only constant constraints remain: 0 >= rhs must hold
    for c in &cur {
        debug_assert!(c.a.iter().all(|x| x.is_zero()));
        if c.rhs.is_positive() {
            return Err(GradingError::NoPositiveFunctional);
        }
    }
    // back substitution, last eliminated variable first
    let mut phi = vec![BigRational::zero(); k];
    for var in 0..k {
        let cons = stages.pop().expect("stage per variable");
        let mut lo: Option<BigRational> = None;
        let mut hi: Option<BigRational> = None;
        for c in &cons {
            if c.a[var].is_zero() {
                continue;
            }
            let mut rest = c.rhs.clone();
            for j in 0..k {
                if j != var && !c.a[j].is_zero() {
                    rest -= c.a[j].clone() * phi[j].clone();
                }
            }
            let bound = rest / c.a[var].clone();
            if c.a[var].is_positive() {
                lo = Some(match lo {
                    None => bound,
                    Some(old) => old.max(bound),
                });
            } else {
                hi = Some(match hi {
                    None => bound,
                    Some(old) => old.min(bound),
                });
            }
        }
        let zero = BigRational::zero();
        phi[var] = match (&lo, &hi) {
            (None, None) => zero,
            (Some(l), None) => l.clone().max(zero),
            (None, Some(h)) => h.clone().min(zero),
            (Some(l), Some(h)) => {
                assert!(l <= h, "inconsistent interval after elimination");
                if l <= &zero && &zero <= h {
                    zero
                } else if l > &zero {
                    l.clone()
                } else {
                    h.clone()
                }
            }
        };
    }
    // final sanity: strict positivity on every degree
    for d in degrees {
        let v: BigRational = phi
            .iter()
            .zip(d)
            .map(|(p, x)| p.clone() * BigRational::from_integer(BigInt::from(*x)))
            .sum();
        if !v.is_positive() {
            return Err(GradingError::NoPositiveFunctional);
        }
    }
    Ok(phi)
}

fn integerize(phi: &[BigRational]) -> Vec<i64> {
    let mut lcm = BigInt::one();
    for x in phi {
        lcm = num_integer::lcm(lcm, x.denom().clone());
    }
    phi.iter()
        .map(|x| {
            let v = x.numer() * (&lcm / x.denom());
            i64::try_from(v).expect("positivity weights fit in i64")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bigraded4() -> Grading {
        // k[X_1,X_2,Y_1,Y_2] with deg X = (1,0), deg Y = (0,1)
        Grading::standard_multigraded(&[2, 2])
    }

    #[test]
    fn positivity_standard_bigrading() {
        let g = bigraded4();
        assert_eq!(g.phi_int, vec![1, 1]);
        assert!(g.is_standard_multigraded());
    }

    #[test]
    fn positivity_failure() {
        let err = Grading::new(2, vec![vec![1, -1], vec![-1, 1]]).unwrap_err();
        assert_eq!(err, GradingError::NoPositiveFunctional);
    }

    #[test]
    fn positivity_skew_degrees() {
        let g = Grading::new(2, vec![vec![2, 1], vec![1, 3]]).unwrap();
        for d in &g.degrees {
            assert!(g.weight(d) > 0);
        }
        assert!(!g.is_standard_multigraded());
    }

    #[test]
    fn shift_sets_bigraded() {
        let g = bigraded4();
        let e1 = g.shift_set(1, ShiftKind::E, None);
        assert_eq!(e1.points, vec![vec![0, 1], vec![1, 0]]);
        let e4 = g.shift_set(4, ShiftKind::E, None);
        assert_eq!(e4.points, vec![vec![2, 2]]);
        let f2 = g.shift_set(2, ShiftKind::F, None);
        assert_eq!(f2.points, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert!(g.shift_set(5, ShiftKind::E, None).is_empty());
        assert!(g.shift_set(-2, ShiftKind::F, None).is_empty());
        assert_eq!(g.shift_set(0, ShiftKind::F, None).points, vec![vec![0, 0]]);
        let em1 = g.shift_set(-1, ShiftKind::E, None);
        assert_eq!(em1.points, vec![vec![-1, 0], vec![0, -1]]);
    }

    #[test]
    fn e_subset_of_f() {
        let g = Grading::new(2, vec![vec![2, 1], vec![1, 3], vec![1, 0]]).unwrap();
        for l in 0..=3i64 {
            let e = g.shift_set(l, ShiftKind::E, None);
            let f = g.shift_set(l, ShiftKind::F, None);
            for p in &e.points {
                assert!(f.points.contains(p), "E_{} not inside F_{}", l, l);
            }
        }
    }

    #[test]
    fn monoid_membership() {
        let g = Grading::new(2, vec![vec![2, 1], vec![1, 3]]).unwrap();
        assert!(g.monoid_contains(&[3, 4])); // (2,1)+(1,3)
        assert!(g.monoid_contains(&[0, 0]));
        assert!(!g.monoid_contains(&[1, 1]));
        assert!(!g.monoid_contains(&[-2, -1]));
        let std = bigraded4();
        assert!(std.monoid_contains(&[5, 0]));
        assert!(!std.monoid_contains(&[-1, 3]));
    }
}
