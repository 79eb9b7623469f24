//! Exact coefficient arithmetic.
//!
//! Every computation in this crate happens over an exact field: either a
//! prime field `F_p` (default `p = 32003`) or the rationals with
//! arbitrary-precision integers.  There is no floating point anywhere.
//!
//! The engine is generic over [`Scalar`]; the two concrete instances are
//! [`Fp`] and [`Rat`].  Prime field elements carry their modulus so that
//! values parsed from different instance files cannot be mixed silently.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Field description as it appears in instance files.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    /// The rationals with `BigInt` numerators and denominators.
    Q,
    /// The prime field with `p` elements.
    Fp(u64),
}

pub const DEFAULT_PRIME: u64 = 32003;

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Fp(DEFAULT_PRIME)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Q => write!(f, "Q"),
            FieldSpec::Fp(p) => write!(f, "F{}", p),
        }
    }
}

impl FieldSpec {
    pub fn validate(&self) -> Result<(), String> {
        match self {
            FieldSpec::Q => Ok(()),
            FieldSpec::Fp(p) => {
                if *p < 2 || *p >= (1 << 31) {
                    return Err(format!("modulus {} out of range", p));
                }
                if !is_prime(*p) {
                    return Err(format!("modulus {} is not prime", p));
                }
                Ok(())
            }
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element.
///
/// The bounds come from `num_traits` so matrices and polynomials can be
/// written once for both coefficient types.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + 'static
{
    /// Embed an integer, in the field described by `spec`.
    fn from_int(n: i64, spec: FieldSpec) -> Self;

    /// Multiplicative inverse.  Panics on zero.
    fn inv(&self) -> Self;

    /// Optional fast path for matrix rank (row-major `data`).
    ///
    /// The rational field overrides this with fraction-free elimination
    /// over the integers, which avoids intermediate denominator blowup.
    fn rank_hook(_rows: usize, _cols: usize, _data: &[Self]) -> Option<usize> {
        None
    }
}

// ---------------------------------------------------------------------------
// Prime field
// ---------------------------------------------------------------------------

/// Element of `F_p`.
///
/// `p == 0` marks an integer literal not yet attached to a modulus; it is
/// produced only by `Zero::zero` / `One::one` and is reduced as soon as it
/// meets a genuine field element.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct Fp {
    v: u64,
    p: u64,
}

impl Fp {
    pub fn new(n: i64, p: u64) -> Self {
        debug_assert!(p >= 2);
        let m = n.rem_euclid(p as i64) as u64;
        Fp { v: m, p }
    }

    pub fn value(&self) -> u64 {
        self.v
    }

    fn unify(a: Fp, b: Fp) -> (u64, u64, u64) {
        match (a.p, b.p) {
            (0, 0) => (a.v, b.v, 0),
            (0, p) => (a.v % p, b.v, p),
            (p, 0) => (a.v, b.v % p, p),
            (p, q) => {
                assert_eq!(p, q, "mixed moduli {} and {}", p, q);
                (a.v, b.v, p)
            }
        }
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let (a, b, p) = Fp::unify(self, rhs);
        if p == 0 {
            return Fp { v: a + b, p: 0 };
        }
        let mut s = a + b;
        if s >= p {
            s -= p;
        }
        Fp { v: s, p }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self + (-rhs)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.v == 0 {
            self
        } else if self.p == 0 {
            // literals are 0 or 1 only
            panic!("cannot negate an unattached literal");
        } else {
            Fp {
                v: self.p - self.v,
                p: self.p,
            }
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        let (a, b, p) = Fp::unify(self, rhs);
        if p == 0 {
            return Fp { v: a * b, p: 0 };
        }
        Fp {
            v: (a as u128 * b as u128 % p as u128) as u64,
            p,
        }
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp { v: 0, p: 0 }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp { v: 1, p: 0 }
    }
}

impl Scalar for Fp {
    fn from_int(n: i64, spec: FieldSpec) -> Self {
        match spec {
            FieldSpec::Fp(p) => Fp::new(n, p),
            FieldSpec::Q => panic!("Fp element requested from rational field spec"),
        }
    }

    fn inv(&self) -> Self {
        assert!(self.v != 0, "inverse of zero");
        if self.p == 0 {
            assert_eq!(self.v, 1);
            return *self;
        }
        // extended Euclid
        let (mut t, mut new_t) = (0i128, 1i128);
        let (mut r, mut new_r) = (self.p as i128, self.v as i128);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        debug_assert_eq!(r, 1);
        Fp {
            v: t.rem_euclid(self.p as i128) as u64,
            p: self.p,
        }
    }
}

// ---------------------------------------------------------------------------
// Rationals
// ---------------------------------------------------------------------------

/// Arbitrary-precision rational, a thin wrapper around `BigRational`.
#[derive(Clone, PartialEq, Eq)]
pub struct Rat(pub BigRational);

impl Rat {
    pub fn from_big(r: BigRational) -> Self {
        Rat(r)
    }

    pub fn int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Rat {
    type Output = Rat;
    fn add(self, rhs: Rat) -> Rat {
        Rat(self.0 + rhs.0)
    }
}

impl Sub for Rat {
    type Output = Rat;
    fn sub(self, rhs: Rat) -> Rat {
        Rat(self.0 - rhs.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Mul for Rat {
    type Output = Rat;
    fn mul(self, rhs: Rat) -> Rat {
        Rat(self.0 * rhs.0)
    }
}

impl Zero for Rat {
    fn zero() -> Self {
        Rat(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Rat {
    fn one() -> Self {
        Rat(BigRational::one())
    }
}

impl Scalar for Rat {
    fn from_int(n: i64, _spec: FieldSpec) -> Self {
        Rat::int(n)
    }

    fn inv(&self) -> Self {
        assert!(!self.0.is_zero(), "inverse of zero");
        Rat(self.0.recip())
    }

    fn rank_hook(rows: usize, cols: usize, data: &[Self]) -> Option<usize> {
        Some(bareiss_rank(rows, cols, data))
    }
}

/// Rank by fraction-free (Bareiss) elimination over the integers.
///
/// Rows are first cleared of denominators; all subsequent arithmetic is
/// exact integer arithmetic with controlled growth.
fn bareiss_rank(rows: usize, cols: usize, data: &[Rat]) -> usize {
    let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(rows);
    for r in 0..rows {
        let row = &data[r * cols..(r + 1) * cols];
        let mut lcm = BigInt::one();
        for x in row {
            lcm = num_integer::lcm(lcm, x.0.denom().clone());
            if lcm.is_zero() {
                lcm = BigInt::one();
            }
        }
        m.push(
            row.iter()
                .map(|x| x.0.numer() * (&lcm / x.0.denom()))
                .collect(),
        );
    }
    let mut rank = 0usize;
    let mut prev = BigInt::one();
    let mut row = 0usize;
    for col in 0..cols {
        // first nonzero entry in this column, scanning down
        let Some(piv) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, piv);
        for r in row + 1..rows {
            for c in col + 1..cols {
                let t = &m[row][col] * &m[r][c] - &m[r][col] * &m[row][c];
                m[r][c] = &t / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[row][col].abs();
        row += 1;
        rank += 1;
        if row == rows {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_arithmetic() {
        let p = 7;
        let a = Fp::new(3, p);
        let b = Fp::new(5, p);
        assert_eq!(a + b, Fp::new(1, p));
        assert_eq!(a * b, Fp::new(1, p));
        assert_eq!((-a), Fp::new(4, p));
        assert_eq!(a.inv() * a, Fp::new(1, p));
        assert_eq!(Fp::zero() + a, a);
        assert_eq!(Fp::one() * b, b);
    }

    #[test]
    fn rat_arithmetic() {
        let a = Rat::int(3);
        let b = Rat::int(-5);
        assert_eq!(a.clone() + b.clone(), Rat::int(-2));
        assert_eq!(a.clone() * b.clone(), Rat::int(-15));
        assert_eq!(a.inv() * a, Rat::int(1));
    }

    #[test]
    fn default_prime_is_prime() {
        assert!(is_prime(DEFAULT_PRIME));
        assert!(FieldSpec::Fp(DEFAULT_PRIME).validate().is_ok());
        assert!(FieldSpec::Fp(32004).validate().is_err());
    }
}
