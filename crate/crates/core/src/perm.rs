//! Permutations of `{0, …, degree − 1}` stored as image lists.

use std::fmt;

use crate::group::GroupError;

/// A permutation given by the 0-based image of each point.
///
/// Products follow the right-action convention: `a.then(&b)` maps `x` to
/// `b(a(x))`, so that `x^(ab) = (x^a)^b`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    /// Validates an image list. Fails unless it is a bijection on `0..len`.
    pub fn new(images: Vec<u32>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n {
                return Err(GroupError::InvalidPermutation(format!(
                    "image {x} out of range for degree {n}"
                )));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(GroupError::InvalidPermutation(format!(
                    "image {x} appears twice"
                )));
            }
        }
        Ok(Self { images })
    }

    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// The product `self · other`: apply `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Permutation { images }
    }

    /// Lengths of all cycles, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.images.len()];
        let mut lengths = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
                len += 1;
            }
            lengths.push(len);
        }
        lengths
    }

    /// Order as the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_type()
            .into_iter()
            .fold(1u64, |acc, len| num_integer::lcm(acc, len as u64))
    }
}

impl fmt::Debug for Permutation {
    /// Cycle notation, e.g. `(0 1 2)(3 4)`; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.images.len()];
        let mut wrote = false;
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
                first = false;
                x = self.images[x] as usize;
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
        assert!(Permutation::new(vec![]).is_ok());
    }

    #[test]
    fn right_action_product() {
        let a = Permutation::new(vec![1, 0, 2]).unwrap(); // (0 1)
        let b = Permutation::new(vec![1, 2, 0]).unwrap(); // (0 1 2)
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.then(&b).images(), &[2, 1, 0]);
        assert_eq!(b.then(&a).images(), &[0, 2, 1]);
    }

    #[test]
    fn order_and_inverse() {
        let p = Permutation::new(vec![1, 2, 0, 4, 3]).unwrap();
        assert_eq!(p.order(), 6);
        assert!(p.then(&p.inverse()).is_identity());
        assert_eq!(format!("{p:?}"), "(0 1 2)(3 4)");
        assert_eq!(format!("{:?}", Permutation::identity(3)), "()");
    }
}
