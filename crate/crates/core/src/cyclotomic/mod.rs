//! Exact arithmetic in cyclotomic fields `Q(ζ_n)`.
//!
//! A [`CycloNum`] of conductor `n` stores integer coordinates in the power
//! basis `1, ζ_n, …, ζ_n^(φ(n)−1)`, reduced modulo the `n`-th cyclotomic
//! polynomial. That representation is unique for a fixed conductor, so
//! equality is coefficient comparison after casting to a common conductor.

mod field;
mod sparse;
mod unity;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use field::cyclotomic_polynomial;
pub use sparse::{hermitian_sum, SparseCyclo};
pub use unity::Classification;

use field::{field, Field};
use unity::UnityRoots;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycloError {
    #[error("conductor {from} does not divide {to}")]
    NotDivisible { from: u64, to: u64 },
    #[error("galois exponent {j} is not coprime to the conductor {n}")]
    NotCoprime { j: u64, n: u64 },
}

/// An algebraic integer of `Q(ζ_n)` in canonical power-basis form.
#[derive(Clone)]
pub struct CycloNum {
    field: Arc<Field>,
    coeffs: Vec<BigInt>,
}

impl CycloNum {
    pub fn zero(n: u64) -> Self {
        let field = field(n);
        let coeffs = vec![BigInt::zero(); field.phi];
        Self { field, coeffs }
    }

    pub fn from_int(n: u64, value: impl Into<BigInt>) -> Self {
        let mut v = Self::zero(n);
        v.coeffs[0] = value.into();
        v
    }

    pub fn one(n: u64) -> Self {
        Self::from_int(n, 1)
    }

    /// `ζ_n^k` for any integer `k`.
    pub fn zeta(n: u64, k: i64) -> Self {
        let k = k.rem_euclid(n as i64) as usize;
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = BigInt::one();
        Self::from_powers(n, v)
    }

    /// `Σ_k coeffs[k] ζ_n^k` for a coefficient list of any length.
    pub fn from_powers(n: u64, coeffs: Vec<BigInt>) -> Self {
        let field = field(n);
        let coeffs = field.reduce(coeffs);
        Self { field, coeffs }
    }

    /// Wraps a vector that is already canonical (length `φ(n)`).
    pub(crate) fn from_canonical(n: u64, coeffs: Vec<BigInt>) -> Self {
        let field = field(n);
        debug_assert_eq!(coeffs.len(), field.phi);
        Self { field, coeffs }
    }

    pub fn conductor(&self) -> u64 {
        self.field.n
    }

    /// Coordinates in the basis `ζ_n^0, …, ζ_n^(φ(n)−1)`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The value as an integer, when it is rational.
    pub fn as_integer(&self) -> Option<&BigInt> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coeffs[0])
    }

    /// The same element in `Q(ζ_m)`, using `ζ_n = ζ_m^(m/n)`.
    pub fn cast(&self, m: u64) -> Result<Self, CycloError> {
        let n = self.conductor();
        if m == 0 || !m.is_multiple_of(n) {
            return Err(CycloError::NotDivisible { from: n, to: m });
        }
        if m == n {
            return Ok(self.clone());
        }
        let step = (m / n) as usize;
        let mut v = vec![BigInt::zero(); (self.coeffs.len() - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[k * step] = c.clone();
        }
        Ok(Self::from_powers(m, v))
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let m = a.conductor().lcm(&b.conductor());
        (a.cast(m).unwrap(), b.cast(m).unwrap())
    }

    /// Image under `ζ_n ↦ ζ_n^j`.
    pub fn galois(&self, j: i64) -> Result<Self, CycloError> {
        let n = self.conductor();
        let j = j.rem_euclid(n as i64) as u64;
        if j.gcd(&n) != 1 {
            return Err(CycloError::NotCoprime { j, n });
        }
        Ok(self.galois_unchecked(j))
    }

    fn galois_unchecked(&self, j: u64) -> Self {
        let n = self.conductor();
        let mut v = vec![BigInt::zero(); n as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                v[((k as u64 * j) % n) as usize] += c;
            }
        }
        Self {
            coeffs: self.field.reduce(v),
            field: Arc::clone(&self.field),
        }
    }

    /// Complex conjugate, the Galois automorphism `ζ_n ↦ ζ_n^(−1)`.
    pub fn conj(&self) -> Self {
        let n = self.conductor();
        self.galois_unchecked((n - 1) % n.max(1))
    }

    /// `a · conj(a)`, a totally real algebraic integer.
    pub fn abs_squared(&self) -> Self {
        self * &self.conj()
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut acc = Self::one(self.conductor());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Zero, a root of unity (with its order), or neither.
    ///
    /// Compared exactly against the canonical forms of all `lcm(2, n)` roots
    /// of unity of `Q(ζ_n)`.
    pub fn classify(&self) -> Classification {
        if self.is_zero() {
            return Classification::Zero;
        }
        let roots = self.field.roots.get_or_init(|| UnityRoots::build(&self.field));
        debug_assert_eq!(roots.len() as u64, self.conductor().lcm(&2));
        match roots.lookup(&self.coeffs) {
            Some((order, exponent)) => Classification::RootOfUnity { order, exponent },
            None => Classification::Neither,
        }
    }

    /// Numerical value under `ζ_n ↦ exp(2πi/n)`.
    pub fn to_complex(&self) -> Complex64 {
        let n = self.conductor() as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let angle = std::f64::consts::TAU * k as f64 / n;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), angle)
            })
            .sum()
    }

    /// Total order used for canonical sorting: conductor, then coefficients.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.conductor()
            .cmp(&other.conductor())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

/// Classifies `a` as zero, a root of unity, or neither.
pub fn is_zero_or_root_of_unity(a: &CycloNum) -> Classification {
    a.classify()
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor() == other.conductor() {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycloNum {}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum[{}]({})", self.conductor(), self)
    }
}

impl fmt::Display for CycloNum {
    /// GAP-style notation: `E(n)` is `exp(2πi/n)`, e.g. `1 - 2*E(5)^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.conductor();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    write!(f, "E({n})")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &CycloNum) -> CycloNum {
        if self.conductor() != rhs.conductor() {
            let (a, b) = CycloNum::common(self, rhs);
            return &a + &b;
        }
        CycloNum {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(x, y)| x + y).collect(),
        }
    }
}

impl<'a> Sub<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &CycloNum) -> CycloNum {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &CycloNum) -> CycloNum {
        if self.conductor() != rhs.conductor() {
            let (a, b) = CycloNum::common(self, rhs);
            return &a * &b;
        }
        CycloNum {
            coeffs: self.field.mul(&self.coeffs, &rhs.coeffs),
            field: Arc::clone(&self.field),
        }
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: CycloNum) -> CycloNum {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}
