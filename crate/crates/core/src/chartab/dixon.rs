//! Irreducible characters modulo `p` as common eigenvectors of the class
//! multiplication matrices.

use num_integer::Roots;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::modp::{char_poly, nullspace, roots, rref, Fp, Matrix};
use super::{StructureConstants, TableError};
use crate::classes::ClassData;

/// Random splitting attempts allowed per subspace before giving up.
pub const DEFAULT_SPLIT_ATTEMPTS: usize = 64;

/// Character values reduced modulo `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularTable {
    pub prime: u64,
    /// `values[r][c] ≡ χ_r(g_c) (mod p)`.
    pub values: Vec<Vec<u64>>,
    pub degrees: Vec<u64>,
}

/// `M = Σ_i t_i M_i` where `(M_i)[j][l] = a[i][j][l]`. The central
/// character `ω` of each irreducible satisfies `M_i ω = ω_i ω`.
fn combination(f: Fp, sc: &StructureConstants, t: &[u64]) -> Matrix {
    let k = sc.k;
    let mut m = vec![vec![0u64; k]; k];
    for (i, &ti) in t.iter().enumerate() {
        if ti == 0 {
            continue;
        }
        for (j, row) in m.iter_mut().enumerate() {
            for (l, slot) in row.iter_mut().enumerate() {
                let a = sc.get(i, j, l) as u64;
                if a != 0 {
                    *slot = f.add(*slot, f.mul(ti, f.from_u64(a)));
                }
            }
        }
    }
    m
}

/// Splits an invariant subspace (RREF basis plus pivots) into the
/// eigenspaces of `m`. Returns `None` when `m` acts as a scalar on it.
fn split(f: Fp, m: &Matrix, basis: &Matrix, pivots: &[usize]) -> Option<Vec<Matrix>> {
    let d = basis.len();
    let k = m.len();
    // Coordinates of m·b in the RREF basis are its entries at the pivots.
    let images: Vec<Vec<u64>> = basis
        .iter()
        .map(|b| {
            (0..k)
                .map(|j| m[j].iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y))))
                .collect()
        })
        .collect();
    let restricted: Matrix = (0..d)
        .map(|r| (0..d).map(|c| images[c][pivots[r]]).collect())
        .collect();

    let eigenvalues = roots(f, &char_poly(f, &restricted));
    if eigenvalues.len() < 2 {
        return None;
    }
    let mut pieces = Vec::with_capacity(eigenvalues.len());
    for lambda in eigenvalues {
        let shifted: Matrix = restricted
            .iter()
            .enumerate()
            .map(|(r, row)| {
                row.iter()
                    .enumerate()
                    .map(|(c, &x)| if r == c { f.sub(x, lambda) } else { x })
                    .collect()
            })
            .collect();
        let coords = nullspace(f, &shifted, d);
        let vectors: Matrix = coords
            .iter()
            .map(|u| {
                (0..k)
                    .map(|j| {
                        u.iter()
                            .zip(basis)
                            .fold(0, |acc, (&uc, b)| f.add(acc, f.mul(uc, b[j])))
                    })
                    .collect()
            })
            .collect();
        pieces.push(vectors);
    }
    Some(pieces)
}

/// Computes every irreducible character modulo `p`.
///
/// Starting from the whole space, each subspace of dimension above one is
/// split by the eigenspaces of a random combination of the class matrices
/// until all pieces are lines. Each line is spanned by a central character
/// `ω` normalized to `ω_0 = 1`; the degree is recovered from
/// `χ(1)² = |G| / Σ_i ω_i ω_{i*} / |C_i|` and values from
/// `χ(g_i) = ω_i χ(1) / |C_i|`.
pub fn modular_characters(
    sc: &StructureConstants,
    data: &ClassData,
    inverse_classes: &[usize],
    prime: u64,
    seed: u64,
    max_attempts: usize,
) -> Result<ModularTable, TableError> {
    let f = Fp::new(prime);
    let k = sc.k;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let identity: Matrix = (0..k)
        .map(|i| (0..k).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut pending = vec![(identity, (0..k).collect::<Vec<_>>())];
    let mut lines = Vec::with_capacity(k);
    while let Some((basis, pivots)) = pending.pop() {
        if basis.len() == 1 {
            lines.push(basis.into_iter().next().unwrap());
            continue;
        }
        let mut attempts = 0;
        let pieces = loop {
            if attempts == max_attempts {
                return Err(TableError::SplitFailure {
                    dimension: basis.len(),
                    attempts,
                });
            }
            attempts += 1;
            let t: Vec<u64> = (0..k).map(|_| rng.gen_range(0..prime)).collect();
            if let Some(pieces) = split(f, &combination(f, sc, &t), &basis, &pivots) {
                break pieces;
            }
        };
        let total: usize = pieces.iter().map(Vec::len).sum();
        if total != basis.len() {
            // Either the prime is bad or the structure constants are wrong.
            return Err(TableError::SplitFailure {
                dimension: basis.len(),
                attempts,
            });
        }
        for mut piece in pieces {
            let pivots = rref(f, &mut piece);
            pending.push((piece, pivots));
        }
    }

    let order = data.group_order() as u64;
    let sizes: Vec<u64> = data.classes.iter().map(|c| f.from_u64(c.size as u64)).collect();
    let max_degree = order.sqrt();
    let mut values = Vec::with_capacity(k);
    let mut degrees = Vec::with_capacity(k);
    for line in lines {
        let scale = f.inv(line[0]);
        let omega: Vec<u64> = line.iter().map(|&x| f.mul(x, scale)).collect();
        let norm = (0..k).fold(0, |acc, i| {
            let term = f.mul(f.mul(omega[i], omega[inverse_classes[i]]), f.inv(sizes[i]));
            f.add(acc, term)
        });
        if norm == 0 {
            return Err(TableError::DegreeRecovery);
        }
        let square = f.mul(f.from_u64(order), f.inv(norm));
        let degree = (1..=max_degree)
            .find(|&d| f.mul(d, d) == square)
            .ok_or(TableError::DegreeRecovery)?;
        let row = (0..k)
            .map(|i| f.mul(f.mul(omega[i], degree), f.inv(sizes[i])))
            .collect();
        values.push(row);
        degrees.push(degree);
    }
    Ok(ModularTable {
        prime,
        values,
        degrees,
    })
}
