//! Exact character tables of small permutation groups, and the statistics
//! that count where characters vanish or take root-of-unity values.

pub mod chartab;
pub mod classes;
pub mod cyclotomic;
pub mod group;
pub mod harness;
pub mod perm;
pub mod structure;
pub mod theta;
