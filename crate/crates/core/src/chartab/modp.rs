//! Arithmetic and linear algebra over a small prime field `F_p`.

use crate::structure::{factorize, is_prime};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp {
    p: u64,
}

impl Fp {
    /// `p` must be prime and below `2^32` so that products fit in a `u64`.
    pub fn new(p: u64) -> Self {
        assert!(p < (1 << 32) && is_prime(p), "{p} is not a usable prime");
        Self { p }
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        (self.p - a) % self.p
    }

    pub fn pow(self, mut base: u64, mut k: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element.
    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p), "zero has no inverse");
        self.pow(a, self.p - 2)
    }

    /// Reduces a (possibly large) integer.
    pub fn from_u64(self, a: u64) -> u64 {
        a % self.p
    }

    /// Smallest generator of the multiplicative group.
    pub fn primitive_root(self) -> u64 {
        if self.p == 2 {
            return 1;
        }
        let factors = factorize(self.p - 1);
        (2..self.p)
            .find(|&g| factors.iter().all(|&(q, _)| self.pow(g, (self.p - 1) / q) != 1))
            .expect("every prime field has a primitive root")
    }

    /// A primitive `e`-th root of unity; `e` must divide `p − 1`.
    pub fn root_of_unity(self, e: u64) -> u64 {
        assert_eq!((self.p - 1) % e, 0, "{e} does not divide p - 1");
        self.pow(self.primitive_root(), (self.p - 1) / e)
    }
}

pub type Matrix = Vec<Vec<u64>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(f: Fp, m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = f.inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let factor = m[i][c];
                for j in c..cols {
                    let sub = f.mul(factor, m[r][j]);
                    m[i][j] = f.sub(m[i][j], sub);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}

/// Basis of `{x : m·x = 0}`.
pub fn nullspace(f: Fp, m: &Matrix, cols: usize) -> Matrix {
    let mut red = m.clone();
    let pivots = rref(f, &mut red);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0; cols];
        v[free] = 1;
        for (row, &pc) in red.iter().zip(&pivots) {
            v[pc] = f.neg(row[free]);
        }
        basis.push(v);
    }
    basis
}

/// Characteristic polynomial `det(x·I − a)`, constant term first.
///
/// Reduces to upper Hessenberg form by elimination, then runs the standard
/// determinant recurrence on leading principal submatrices.
pub fn char_poly(f: Fp, a: &Matrix) -> Vec<u64> {
    let n = a.len();
    let mut h = a.clone();
    for c in 0..n.saturating_sub(2) {
        let Some(pr) = (c + 1..n).find(|&i| h[i][c] != 0) else {
            continue;
        };
        if pr != c + 1 {
            h.swap(pr, c + 1);
            for row in h.iter_mut() {
                row.swap(pr, c + 1);
            }
        }
        let inv = f.inv(h[c + 1][c]);
        for i in c + 2..n {
            let t = f.mul(h[i][c], inv);
            if t == 0 {
                continue;
            }
            // Row i −= t · row (c+1); then column (c+1) += t · column i.
            for j in 0..n {
                let sub = f.mul(t, h[c + 1][j]);
                h[i][j] = f.sub(h[i][j], sub);
            }
            for row in h.iter_mut() {
                let add = f.mul(t, row[i]);
                row[c + 1] = f.add(row[c + 1], add);
            }
        }
    }

    // polys[m] = char poly of the leading m×m block.
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 0..n {
        // (x − h[m][m]) · polys[m]
        let prev = &polys[m];
        let mut next = vec![0; m + 2];
        for (i, &c) in prev.iter().enumerate() {
            next[i + 1] = f.add(next[i + 1], c);
            next[i] = f.sub(next[i], f.mul(h[m][m], c));
        }
        let mut prod = 1;
        for i in (0..m).rev() {
            prod = f.mul(prod, h[i + 1][i]);
            let coef = f.mul(prod, h[i][m]);
            if coef == 0 {
                continue;
            }
            for (j, &c) in polys[i].iter().enumerate() {
                next[j] = f.sub(next[j], f.mul(coef, c));
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

/// All roots of `poly` in `F_p`, by exhaustive evaluation.
pub fn roots(f: Fp, poly: &[u64]) -> Vec<u64> {
    (0..f.modulus())
        .filter(|&x| poly.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c)) == 0)
        .collect()
}
