//! Structural predicates: normal Sylow subgroups, nilpotency, Sylow towers,
//! solvability, and quotients by normal subgroups.

use std::collections::BTreeSet;

use crate::group::{FiniteGroup, GroupError};
use crate::perm::Permutation;

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization as ascending `(prime, multiplicity)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut m = 0;
        while n.is_multiple_of(d) {
            n /= d;
            m += 1;
        }
        if m > 0 {
            out.push((d, m));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// The Sylow `p`-subgroup when it is unique (equivalently, normal).
///
/// The set of `p`-elements has exactly `|G|_p` members precisely when it is
/// the unique Sylow `p`-subgroup; otherwise `Ok(None)`.
pub fn unique_sylow(group: &FiniteGroup, p: u64) -> Result<Option<BTreeSet<usize>>, GroupError> {
    let order = group.order();
    if p < 2 || !(order as u64).is_multiple_of(p) {
        return Err(GroupError::NotADivisor { p, order });
    }
    let mut part = 1u64;
    let mut rest = order as u64;
    while rest.is_multiple_of(p) {
        rest /= p;
        part *= p;
    }
    let p_elements: BTreeSet<usize> = (0..order)
        .filter(|&x| is_power_of(group.element_order(x), p))
        .collect();
    Ok((p_elements.len() as u64 == part).then_some(p_elements))
}

/// Nilpotent iff every Sylow subgroup is normal.
pub fn is_nilpotent(group: &FiniteGroup) -> bool {
    factorize(group.order() as u64)
        .iter()
        .all(|&(p, _)| matches!(unique_sylow(group, p), Ok(Some(_))))
}

/// `G/N` as a permutation group on the cosets of `N`.
///
/// `N` is checked to be a normal subgroup first. Generators of `G` act on
/// the right cosets `Nx` by right multiplication, which for normal `N` is
/// the same coset space as the left cosets.
pub fn quotient(group: &FiniteGroup, normal: &BTreeSet<usize>) -> Result<FiniteGroup, GroupError> {
    let normal_gens = group
        .subgroup_generators(normal)
        .ok_or(GroupError::NotASubgroup)?;
    for &s in group.generator_indices() {
        if normal_gens
            .iter()
            .any(|&n| !normal.contains(&group.conjugate(n, s)))
        {
            return Err(GroupError::NotNormal);
        }
    }

    let order = group.order();
    let mut coset_of = vec![usize::MAX; order];
    let mut coset_reps = Vec::new();
    for x in 0..order {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let id = coset_reps.len();
        coset_reps.push(x);
        for &n in normal {
            coset_of[group.mul(n, x)] = id;
        }
    }

    let degree = coset_reps.len();
    let generators = group
        .generator_indices()
        .iter()
        .map(|&s| {
            let images = coset_reps
                .iter()
                .map(|&x| coset_of[group.mul(x, s)] as u32)
                .collect();
            Permutation::new(images)
        })
        .collect::<Result<Vec<_>, _>>()?;
    FiniteGroup::generate(degree, generators, order / normal.len())
}

/// A Sylow tower: primes `p₁, p₂, …` such that peeling off a normal Sylow
/// `p₁`-subgroup, then a normal Sylow `p₂`-subgroup of the quotient, and so
/// on, reaches the trivial group. Primes are tried in ascending order at
/// every level with backtracking; the first tower found is returned.
pub fn sylow_tower(group: &FiniteGroup) -> Option<Vec<u64>> {
    if group.order() == 1 {
        return Some(Vec::new());
    }
    for (p, _) in factorize(group.order() as u64) {
        let Ok(Some(sylow)) = unique_sylow(group, p) else {
            continue;
        };
        let Ok(rest) = quotient(group, &sylow) else {
            continue;
        };
        if let Some(mut tail) = sylow_tower(&rest) {
            tail.insert(0, p);
            return Some(tail);
        }
    }
    None
}

pub fn has_sylow_series(group: &FiniteGroup) -> bool {
    sylow_tower(group).is_some()
}

/// Normal closure in `<ambient>` of the subgroup generated by `seeds`.
fn normal_closure(group: &FiniteGroup, seeds: Vec<usize>, ambient: &[usize]) -> (Vec<usize>, Vec<bool>) {
    let (mut gens, mut member) = group.generating_set(seeds);
    let mut next = 0;
    while next < gens.len() {
        let c = gens[next];
        for &h in ambient {
            let y = group.conjugate(c, h);
            if !member[y] {
                gens.push(y);
                member = group.closure(&gens);
            }
        }
        next += 1;
    }
    (gens, member)
}

/// Derived subgroup of `<gens>`: the normal closure of the commutators of
/// the generators.
fn derived_subgroup(group: &FiniteGroup, gens: &[usize]) -> (Vec<usize>, usize) {
    let mut seeds = Vec::new();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            seeds.push(group.commutator(a, b));
        }
    }
    let (gens, member) = normal_closure(group, seeds, gens);
    let size = member.iter().filter(|&&m| m).count();
    (gens, size)
}

/// The orders of the derived series `G ≥ G' ≥ G'' ≥ …` down to the point
/// where it stabilizes.
pub fn derived_series_orders(group: &FiniteGroup) -> Vec<usize> {
    let mut orders = vec![group.order()];
    let mut gens = group.generator_indices().to_vec();
    loop {
        let (next, size) = derived_subgroup(group, &gens);
        if size == *orders.last().unwrap() {
            return orders;
        }
        orders.push(size);
        gens = next;
    }
}

pub fn is_solvable(group: &FiniteGroup) -> bool {
    derived_series_orders(group).last() == Some(&1)
}
