//! Deciding whether a cyclotomic number is zero or a root of unity.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;

use super::field::Field;

/// Outcome of [`CycloNum::classify`](super::CycloNum::classify).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Zero,
    /// The value is `exp(2πi · exponent / order)` under `ζ_n ↦ exp(2πi/n)`,
    /// with `gcd(exponent, order) = 1`, so `order` is minimal.
    RootOfUnity { order: u64, exponent: u64 },
    Neither,
}

impl Classification {
    pub fn is_zero_or_root_of_unity(self) -> bool {
        !matches!(self, Classification::Neither)
    }
}

/// Canonical forms of the `lcm(2, n)` roots of unity in `Q(ζ_n)`, which are
/// exactly the values `±ζ_n^k`.
pub(crate) struct UnityRoots {
    by_coeffs: HashMap<Vec<BigInt>, (u64, u64)>,
}

impl UnityRoots {
    pub fn build(field: &Field) -> Self {
        let n = field.n;
        let mut by_coeffs = HashMap::new();
        for k in 0..n {
            // -ζ^k is already a power of ζ when n is even.
            let signs: &[i64] = if n.is_multiple_of(2) { &[1] } else { &[1, -1] };
            for &sign in signs {
                let mut v = vec![BigInt::from(0); k as usize + 1];
                v[k as usize] = BigInt::from(sign);
                let coeffs = field.reduce(v);
                // Angle as a fraction of a full turn: k/n, plus 1/2 for the sign.
                let den = 2 * n;
                let num = (2 * k + if sign < 0 { n } else { 0 }) % den;
                let g = num.gcd(&den);
                by_coeffs.insert(coeffs, (den / g, num / g));
            }
        }
        debug_assert_eq!(by_coeffs.len() as u64, num_integer::lcm(2, n));
        Self { by_coeffs }
    }

    pub fn lookup(&self, coeffs: &[BigInt]) -> Option<(u64, u64)> {
        self.by_coeffs.get(coeffs).copied()
    }

    pub fn len(&self) -> usize {
        self.by_coeffs.len()
    }
}
