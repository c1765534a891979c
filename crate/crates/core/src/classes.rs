//! Conjugacy classes, centralizer orders and power maps.

use crate::group::FiniteGroup;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    /// Smallest element index in the class.
    pub representative: usize,
    /// Sorted element indices.
    pub members: Vec<usize>,
    pub size: usize,
    pub centralizer_order: usize,
    /// Element order of the representative.
    pub element_order: u64,
}

#[derive(Debug, Clone)]
pub struct ClassData {
    pub classes: Vec<ConjugacyClass>,
    /// Class index of every element.
    pub class_of: Vec<usize>,
    /// Least common multiple of the element orders.
    pub exponent: u64,
}

impl ClassData {
    /// `k(G)`, the number of classes.
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn group_order(&self) -> usize {
        self.class_of.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.size).collect()
    }

    /// Class of inverses `i*` for every class `i`.
    pub fn inverse_classes(&self, group: &FiniteGroup) -> Vec<usize> {
        self.classes
            .iter()
            .map(|c| self.class_of[group.inverse(c.representative)])
            .collect()
    }
}

/// Computes the conjugacy classes as orbits of conjugation by the generators.
///
/// Classes are ordered by `(size, representative)`, which puts the identity
/// class first.
pub fn conjugacy_data(group: &FiniteGroup) -> ClassData {
    let n = group.order();
    let gens = group.generator_indices();
    let mut seen = vec![false; n];
    let mut classes = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut members = vec![start];
        let mut next = 0;
        while next < members.len() {
            for &s in gens {
                let y = group.conjugate(members[next], s);
                if !seen[y] {
                    seen[y] = true;
                    members.push(y);
                }
            }
            next += 1;
        }
        members.sort_unstable();
        let size = members.len();
        classes.push(ConjugacyClass {
            representative: start,
            size,
            centralizer_order: n / size,
            element_order: group.element_order(start),
            members,
        });
    }
    classes.sort_by_key(|c| (c.size, c.representative));

    let mut class_of = vec![0; n];
    for (i, c) in classes.iter().enumerate() {
        for &x in &c.members {
            class_of[x] = i;
        }
    }
    ClassData {
        classes,
        class_of,
        exponent: group.exponent(),
    }
}

/// Entry `i` is the class of `rep(i)^k`.
pub fn power_class_map(data: &ClassData, group: &FiniteGroup, k: u64) -> Vec<usize> {
    data.classes
        .iter()
        .map(|c| data.class_of[group.power(c.representative, k)])
        .collect()
}

/// All power maps `k = 0, …, exponent − 1` at once; `maps[k][i]` is the class
/// of `rep(i)^k`.
pub fn all_power_maps(data: &ClassData, group: &FiniteGroup) -> Vec<Vec<usize>> {
    // Class of each power g^0, g^1, …, g^(o−1) of every representative.
    let cycles: Vec<Vec<usize>> = data
        .classes
        .iter()
        .map(|c| {
            let mut powers = Vec::with_capacity(c.element_order as usize);
            let mut x = 0;
            for _ in 0..c.element_order {
                powers.push(data.class_of[x]);
                x = group.mul(x, c.representative);
            }
            powers
        })
        .collect();
    (0..data.exponent)
        .map(|k| {
            cycles
                .iter()
                .map(|powers| powers[(k % powers.len() as u64) as usize])
                .collect()
        })
        .collect()
}
