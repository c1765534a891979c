//! Per-conductor data: the cyclotomic polynomial and reduction modulo it.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::unity::UnityRoots;

pub(crate) struct Field {
    pub n: u64,
    /// `φ(n)`, the dimension of `Q(ζ_n)`.
    pub phi: usize,
    /// Nonzero `(power, coefficient)` terms of `Φ_n` below the leading one.
    tail: Vec<(usize, i64)>,
    pub(crate) roots: OnceLock<UnityRoots>,
}

static FIELDS: OnceLock<Mutex<HashMap<u64, Arc<Field>>>> = OnceLock::new();

/// Shared per-conductor data, built once per process.
pub(crate) fn field(n: u64) -> Arc<Field> {
    assert!(n >= 1, "conductor must be positive");
    let cache = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().unwrap().get(&n) {
        return Arc::clone(f);
    }
    let poly = cyclotomic_polynomial(n);
    let phi = poly.len() - 1;
    let tail = poly[..phi]
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (i, c))
        .collect();
    let f = Arc::new(Field {
        n,
        phi,
        tail,
        roots: OnceLock::new(),
    });
    Arc::clone(cache.lock().unwrap().entry(n).or_insert(f))
}

static POLYS: OnceLock<Mutex<HashMap<u64, Vec<i64>>>> = OnceLock::new();

/// `Φ_n` with integer coefficients, constant term first.
///
/// Obtained by dividing `x^n − 1` exactly by `Φ_d` for every proper divisor
/// `d` of `n`.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    let cache = POLYS.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        poly = divide_exact(&poly, &cyclotomic_polynomial(d));
    }
    cache.lock().unwrap().insert(n, poly.clone());
    poly
}

/// Quotient of `num` by the monic `den`; the division must be exact.
fn divide_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for t in (dn..num.len()).rev() {
        let c = rem[t];
        if c == 0 {
            continue;
        }
        quot[t - dn] = c;
        for (i, &d) in den.iter().enumerate() {
            rem[t - dn + i] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact polynomial division");
    quot
}

impl Field {
    /// Reduces a coefficient vector in powers of `ζ_n` (any length) to the
    /// canonical power basis of length `phi`.
    pub fn reduce(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        // ζ^n = 1 first, so at most n − phi division steps remain.
        let n = self.n as usize;
        if v.len() > n {
            for t in n..v.len() {
                let c = std::mem::take(&mut v[t]);
                v[t % n] += c;
            }
            v.truncate(n);
        }
        for t in (self.phi..v.len()).rev() {
            let c = std::mem::take(&mut v[t]);
            if c.is_zero() {
                continue;
            }
            for &(i, f) in &self.tail {
                v[t - self.phi + i] -= &c * f;
            }
        }
        v.resize(self.phi, BigInt::zero());
        v
    }

    /// Same as `reduce` on machine integers; `None` on overflow.
    pub fn reduce_small(&self, mut v: Vec<i128>) -> Option<Vec<i128>> {
        let n = self.n as usize;
        if v.len() > n {
            for t in n..v.len() {
                let c = std::mem::take(&mut v[t]);
                v[t % n] = v[t % n].checked_add(c)?;
            }
            v.truncate(n);
        }
        for t in (self.phi..v.len()).rev() {
            let c = std::mem::take(&mut v[t]);
            if c == 0 {
                continue;
            }
            for &(i, f) in &self.tail {
                let slot = &mut v[t - self.phi + i];
                *slot = slot.checked_sub(c.checked_mul(f as i128)?)?;
            }
        }
        v.resize(self.phi, 0);
        Some(v)
    }

    /// Product of two canonical vectors, reduced.
    pub fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        if let Some(c) = self.mul_small(a, b) {
            return c;
        }
        let mut prod = vec![BigInt::zero(); (a.len() + b.len()).saturating_sub(1)];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        self.reduce(prod)
    }

    fn mul_small(&self, a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
        let a = to_small(a)?;
        let b = to_small(b)?;
        let mut prod = vec![0i128; (a.len() + b.len()).saturating_sub(1)];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    prod[i + j] = prod[i + j].checked_add(x * y)?;
                }
            }
        }
        let reduced = self.reduce_small(prod)?;
        Some(reduced.into_iter().map(BigInt::from).collect())
    }
}

/// Coefficients narrowed so that any pairwise product fits in `i128`.
pub(crate) fn to_small(v: &[BigInt]) -> Option<Vec<i128>> {
    v.iter().map(|c| c.to_i64().map(i128::from)).collect()
}
