//! Sparse, non-canonical representatives used for bulk exact sums.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::field::field;
use super::CycloNum;

/// `Σ c · ζ_n^e` over a list of `(e, c)` terms, exponents taken mod `n`.
///
/// Many lists represent the same number; [`SparseCyclo::to_cyclo`] gives the
/// canonical form. Character values lifted from eigenvalue multiplicities are
/// naturally of this shape with at most `χ(1)` terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseCyclo {
    n: u64,
    terms: Vec<(u32, i64)>,
}

impl SparseCyclo {
    pub fn new(n: u64, terms: impl IntoIterator<Item = (u64, i64)>) -> Self {
        let terms = terms
            .into_iter()
            .filter(|&(_, c)| c != 0)
            .map(|(e, c)| ((e % n) as u32, c))
            .collect();
        Self { n, terms }
    }

    /// The nonzero coefficients of the canonical form, when they fit in `i64`.
    pub fn from_cyclo(v: &CycloNum) -> Option<Self> {
        let terms = v
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| c.to_i64().map(|c| (e as u32, c)))
            .collect::<Option<Vec<_>>>()?;
        Some(Self {
            n: v.conductor(),
            terms,
        })
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn terms(&self) -> &[(u32, i64)] {
        &self.terms
    }

    pub fn to_cyclo(&self) -> CycloNum {
        let mut v = vec![BigInt::zero(); self.n as usize];
        for &(e, c) in &self.terms {
            v[e as usize] += c;
        }
        CycloNum::from_powers(self.n, v)
    }
}

/// `Σ w · a · conj(b)` over the given triples, all of conductor `n`.
///
/// Accumulates in `Z[x]/(x^n − 1)` and reduces once at the end, which is
/// exact because reduction modulo `Φ_n` is a ring homomorphism from there.
pub fn hermitian_sum<'a, I>(n: u64, triples: I) -> CycloNum
where
    I: IntoIterator<Item = (i64, &'a SparseCyclo, &'a SparseCyclo)> + Clone,
{
    let len = n as usize;
    let mut acc = vec![0i128; len];
    let mut overflow = false;
    'outer: for (w, a, b) in triples.clone() {
        debug_assert!(a.n == n && b.n == n);
        if w == 0 {
            continue;
        }
        for &(ea, ca) in &a.terms {
            let wa = i128::from(w) * i128::from(ca);
            for &(eb, cb) in &b.terms {
                let slot = &mut acc[(ea as usize + len - eb as usize) % len];
                match wa.checked_mul(i128::from(cb)).and_then(|t| slot.checked_add(t)) {
                    Some(v) => *slot = v,
                    None => {
                        overflow = true;
                        break 'outer;
                    }
                }
            }
        }
    }
    let f = field(n);
    if !overflow {
        if let Some(reduced) = f.reduce_small(acc) {
            return CycloNum::from_canonical(n, reduced.into_iter().map(BigInt::from).collect());
        }
    }
    let mut big = vec![BigInt::zero(); len];
    for (w, a, b) in triples {
        for &(ea, ca) in &a.terms {
            for &(eb, cb) in &b.terms {
                big[(ea as usize + len - eb as usize) % len] +=
                    BigInt::from(w) * BigInt::from(ca) * BigInt::from(cb);
            }
        }
    }
    CycloNum::from_canonical(n, f.reduce(big))
}
