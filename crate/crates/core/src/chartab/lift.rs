//! Lifting modular characters to exact cyclotomic values.

use super::dixon::ModularTable;
use super::modp::Fp;
use super::{CharacterTable, TableError, TableParts};
use crate::classes::ClassData;
use crate::cyclotomic::SparseCyclo;

/// Recovers exact values from characters modulo `p`.
///
/// For a class representative `g` of order `o`, the eigenvalues of `g` in
/// the representation are `ζ_o^j` with multiplicities
/// `m_j ≡ o⁻¹ Σ_k χ(g^k) w^(−jk) (mod p)`, where `w = z^(e/o)` and `z` is a
/// fixed primitive `e`-th root of unity in `F_p`. Each `m_j` lies in
/// `[0, χ(1)]`, so its residue determines it, and `χ(g) = Σ_j m_j ζ_o^j`.
///
/// `power_maps[k][c]` is the class of `rep(c)^k` for `0 ≤ k < e`.
pub fn lift_table(
    modular: &ModularTable,
    data: &ClassData,
    power_maps: &[Vec<usize>],
) -> Result<CharacterTable, TableError> {
    let f = Fp::new(modular.prime);
    let e = data.exponent;
    let z = f.root_of_unity(e);
    let k = data.class_count();

    let mut forms = Vec::with_capacity(k);
    for (r, row) in modular.values.iter().enumerate() {
        let degree = modular.degrees[r];
        let mut lifted = Vec::with_capacity(k);
        for (c, class) in data.classes.iter().enumerate() {
            let o = class.element_order;
            let step = e / o;
            let w_inv = f.inv(f.pow(z, step));
            let o_inv = f.inv(f.from_u64(o));
            let mut terms = Vec::new();
            let mut total = 0;
            for j in 0..o {
                // Σ_k χ(g^k) w^(−jk)
                let base = f.pow(w_inv, j);
                let mut acc = 0;
                let mut twist = 1;
                for kk in 0..o {
                    let value = row[power_maps[kk as usize][c]];
                    acc = f.add(acc, f.mul(value, twist));
                    twist = f.mul(twist, base);
                }
                let m = f.mul(acc, o_inv);
                if m > degree {
                    return Err(TableError::LiftRange {
                        row: r,
                        class: c,
                        multiplicity: m,
                        degree,
                    });
                }
                total += m;
                terms.push((j * step, m as i64));
            }
            if total != degree {
                return Err(TableError::LiftRange {
                    row: r,
                    class: c,
                    multiplicity: total,
                    degree,
                });
            }
            lifted.push(SparseCyclo::new(e, terms));
        }
        forms.push(lifted);
    }

    let parts = TableParts {
        group_order: data.group_order() as u64,
        exponent: e,
        class_sizes: data.classes.iter().map(|c| c.size as u64).collect(),
        centralizer_orders: data.classes.iter().map(|c| c.centralizer_order as u64).collect(),
        class_orders: data.classes.iter().map(|c| c.element_order).collect(),
        degrees: modular.degrees.clone(),
        values: forms
            .iter()
            .map(|row| row.iter().map(SparseCyclo::to_cyclo).collect())
            .collect(),
    };
    CharacterTable::validated(parts, Some(forms))
}
