//! Finite groups realized by permutation generators and full enumeration.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::perm::Permutation;

/// Largest group the enumerator will build unless told otherwise.
pub const DEFAULT_ORDER_CAP: usize = 20_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("generator {index} has degree {found}, expected {expected}")]
    DegreeMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("closure exceeds the order cap of {cap} elements")]
    ClosureCapExceeded { cap: usize },
    #[error("{p} does not divide the group order {order}")]
    NotADivisor { p: u64, order: usize },
    #[error("element set is not a subgroup")]
    NotASubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
}

/// A permutation group with every element listed.
///
/// Elements are numbered breadth-first from the identity (index 0), applying
/// generators in input order, so the numbering is a pure function of the
/// generator list.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Permutation>,
    /// Index of each generator in `elements`.
    generator_indices: Vec<usize>,
    elements: Vec<Permutation>,
    element_index: HashMap<Permutation, usize>,
    inverses: Vec<usize>,
    orders: Vec<u64>,
}

/// Enumerates the group generated by `generators` with the default cap.
pub fn generate_group(
    degree: usize,
    generators: Vec<Permutation>,
) -> Result<FiniteGroup, GroupError> {
    FiniteGroup::generate(degree, generators, DEFAULT_ORDER_CAP)
}

impl FiniteGroup {
    pub fn generate(
        degree: usize,
        generators: Vec<Permutation>,
        cap: usize,
    ) -> Result<Self, GroupError> {
        for (index, g) in generators.iter().enumerate() {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    index,
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        if cap == 0 {
            return Err(GroupError::ClosureCapExceeded { cap });
        }

        let identity = Permutation::identity(degree);
        let mut elements = vec![identity.clone()];
        let mut element_index = HashMap::from([(identity, 0usize)]);
        let mut next = 0;
        while next < elements.len() {
            for s in &generators {
                let h = elements[next].then(s);
                if !element_index.contains_key(&h) {
                    if elements.len() == cap {
                        return Err(GroupError::ClosureCapExceeded { cap });
                    }
                    element_index.insert(h.clone(), elements.len());
                    elements.push(h);
                }
            }
            next += 1;
        }

        let inverses = elements.iter().map(|g| element_index[&g.inverse()]).collect();
        let orders = elements.iter().map(Permutation::order).collect();
        let generator_indices = generators.iter().map(|g| element_index[g]).collect();
        Ok(Self {
            degree,
            generators,
            generator_indices,
            elements,
            element_index,
            inverses,
            orders,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, index: usize) -> &Permutation {
        &self.elements[index]
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.element_index.get(g).copied()
    }

    /// Element order of `elements[index]`.
    pub fn element_order(&self, index: usize) -> u64 {
        self.orders[index]
    }

    pub fn inverse(&self, index: usize) -> usize {
        self.inverses[index]
    }

    /// Index of the product `elements[a] · elements[b]`.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.element_index[&self.elements[a].then(&self.elements[b])]
    }

    /// `g⁻¹ x g`.
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inverses[g], x), g)
    }

    /// `a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inverses[ba], ab)
    }

    pub fn power(&self, index: usize, k: u64) -> usize {
        let k = k % self.orders[index];
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, index);
        }
        acc
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generator_indices;
        gens.iter()
            .enumerate()
            .all(|(i, &a)| gens[i + 1..].iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |acc, &o| num_integer::lcm(acc, o))
    }

    /// The subgroup generated by the given elements, as a membership mask.
    pub fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut member = vec![false; self.order()];
        member[0] = true;
        let mut list = vec![0usize];
        let mut next = 0;
        while next < list.len() {
            for &s in gens {
                let h = self.mul(list[next], s);
                if !member[h] {
                    member[h] = true;
                    list.push(h);
                }
            }
            next += 1;
        }
        member
    }

    /// A short generating set for a subset that is known or suspected to be
    /// a subgroup. Returns the generators together with the membership mask
    /// of the subgroup they generate, which contains `set` and is equal to it
    /// exactly when `set` is a subgroup.
    pub(crate) fn generating_set<I>(&self, set: I) -> (Vec<usize>, Vec<bool>)
    where
        I: IntoIterator<Item = usize>,
    {
        let mut gens = Vec::new();
        let mut member = self.closure(&[]);
        for x in set {
            if !member[x] {
                gens.push(x);
                member = self.closure(&gens);
            }
        }
        (gens, member)
    }

    /// Whether `set` is a subgroup, returning a generating set when it is.
    pub(crate) fn subgroup_generators(&self, set: &BTreeSet<usize>) -> Option<Vec<usize>> {
        if !set.contains(&0) || set.iter().any(|&x| x >= self.order()) {
            return None;
        }
        let (gens, member) = self.generating_set(set.iter().copied());
        let size = member.iter().filter(|&&m| m).count();
        (size == set.len() && set.iter().all(|&x| member[x])).then_some(gens)
    }
}
