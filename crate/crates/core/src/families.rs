//! Deterministic fixture lattices: partition lattices, Boolean lattices,
//! uniform matroid lattices, and small hand-made examples.

use std::collections::HashMap;
use std::fmt;

use crate::error::Result;
use crate::poset::Poset;
use crate::quotient::ElementPartition;
use crate::transversal::{AtomPartitionJson, OrderedAtomPartition};

/// A set partition of `{1, …, n}`, blocks sorted by minimum and each block
/// ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// From blocks of 1-based elements, canonicalized.
    pub fn new(n: usize, mut blocks: Vec<Vec<usize>>) -> Self {
        blocks.retain(|b| !b.is_empty());
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort();
        Self { n, blocks }
    }

    pub fn discrete(n: usize) -> Self {
        Self::new(n, (1..=n).map(|i| vec![i]).collect())
    }

    /// From a restricted growth string: `rgs[i]` is the block of `i + 1`.
    pub fn from_rgs(rgs: &[usize]) -> Self {
        let k = rgs.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); k];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b].push(i + 1);
        }
        Self::new(rgs.len(), blocks)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// `n − #blocks`.
    pub fn rank(&self) -> usize {
        self.n - self.blocks.len()
    }

    /// Block index of each element, `block_of()[i]` for element `i + 1`.
    pub fn block_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.n];
        for (b, block) in self.blocks.iter().enumerate() {
            for &i in block {
                out[i - 1] = b;
            }
        }
        out
    }

    /// Every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &SetPartition) -> bool {
        let of = other.block_of();
        self.blocks.iter().all(|b| b.iter().all(|&i| of[i - 1] == of[b[0] - 1]))
    }

    /// Blocks `i` and `j` merged.
    pub fn merge(&self, i: usize, j: usize) -> SetPartition {
        let mut blocks = self.blocks.clone();
        let (lo, hi) = (i.min(j), i.max(j));
        let moved = blocks.remove(hi);
        blocks[lo].extend(moved);
        Self::new(self.n, blocks)
    }

    /// All set partitions of `{1, …, n}`, by restricted growth strings in
    /// lexicographic order.
    pub fn all(n: usize) -> Vec<SetPartition> {
        let mut out = Vec::new();
        let mut rgs = Vec::with_capacity(n);
        fn grow(n: usize, rgs: &mut Vec<usize>, max: usize, out: &mut Vec<SetPartition>) {
            if rgs.len() == n {
                out.push(SetPartition::from_rgs(rgs));
                return;
            }
            let limit = if rgs.is_empty() { 0 } else { max + 1 };
            for b in 0..=limit {
                rgs.push(b);
                grow(n, rgs, max.max(b), out);
                rgs.pop();
            }
        }
        if n == 0 {
            return vec![SetPartition::new(0, vec![])];
        }
        grow(n, &mut rgs, 0, &mut out);
        out
    }
}

/// `12/3` style; elements are comma-separated inside blocks once `n ≥ 10`.
impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return write!(f, "∅");
        }
        let sep = if self.n >= 10 { "," } else { "" };
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(sep))
            .collect();
        write!(f, "{}", parts.join("/"))
    }
}

/// Set partitions of `{1, …, n}` accepted by `keep` under refinement, listed
/// by rank then restricted growth string. Each cover merges two blocks, so
/// `keep` must accept the discrete partition and every kept partition must
/// be reachable from it through kept merges.
pub fn set_partition_poset(n: usize, keep: impl Fn(&SetPartition) -> bool) -> (Poset, Vec<SetPartition>) {
    let mut parts: Vec<SetPartition> = SetPartition::all(n).into_iter().filter(|p| keep(p)).collect();
    parts.sort_by_key(|p| std::cmp::Reverse(p.num_blocks()));
    let index: HashMap<&SetPartition, usize> = parts.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut covers = Vec::new();
    for (x, p) in parts.iter().enumerate() {
        let k = p.num_blocks();
        for i in 0..k {
            for j in i + 1..k {
                if let Some(&y) = index.get(&p.merge(i, j)) {
                    covers.push((x, y));
                }
            }
        }
    }
    let labels = parts.iter().map(|p| p.to_string()).collect();
    let poset = Poset::from_cover_relations(labels, &covers).expect("refinement order on set partitions is ranked");
    (poset, parts)
}

/// `Π_n`, element 0 being the discrete partition.
pub fn partition_lattice(n: usize) -> Poset {
    set_partition_poset(n, |_| true).0
}

/// Label of the atom of `Π_n` merging `i` and `j`.
pub fn pi_n_atom_label(n: usize, i: usize, j: usize) -> String {
    let mut blocks: Vec<Vec<usize>> = (1..=n).filter(|&k| k != i && k != j).map(|k| vec![k]).collect();
    blocks.push(vec![i, j]);
    SetPartition::new(n, blocks).to_string()
}

/// `A_j = {(i, j+1) : i < j+1}` for `j = 1, …, n−1`, by label.
pub fn pi_n_atom_blocks(n: usize) -> AtomPartitionJson {
    AtomPartitionJson {
        blocks: (2..=n)
            .map(|top| (1..top).map(|i| pi_n_atom_label(n, i, top)).collect())
            .collect(),
    }
}

/// The partition above resolved against [`partition_lattice`]`(n)`.
pub fn pi_n_atom_partition(n: usize) -> Result<OrderedAtomPartition> {
    pi_n_atom_blocks(n).resolve(&partition_lattice(n))
}

/// The chain `0̂ ⋖ 12/3/… ⋖ 123/4/… ⋖ … ⋖ 1̂` that adds one element at a
/// time to the block of 1, as element indices of [`partition_lattice`]`(n)`.
pub fn pi_n_standard_chain(poset: &Poset, n: usize) -> Result<Vec<usize>> {
    (1..=n.max(1))
        .map(|k| {
            let mut blocks = vec![(1..=k).collect::<Vec<_>>()];
            blocks.extend((k + 1..=n).map(|i| vec![i]));
            poset.resolve(&SetPartition::new(n, blocks).to_string())
        })
        .collect()
}

fn subset_label(mask: usize, n: usize) -> String {
    let members: Vec<String> = (0..n).filter(|b| mask >> b & 1 == 1).map(|b| (b + 1).to_string()).collect();
    format!("{{{}}}", members.join(","))
}

/// `B_n`: subsets of `{1, …, n}` under inclusion; element `m` is the subset
/// with bitmask `m`.
pub fn boolean_lattice(n: usize) -> Poset {
    assert!(n < usize::BITS as usize, "boolean lattice too large");
    let size = 1usize << n;
    let labels = (0..size).map(|m| subset_label(m, n)).collect();
    let covers: Vec<_> = (0..size)
        .flat_map(|m| (0..n).filter(move |b| m >> b & 1 == 0).map(move |b| (m, m | 1 << b)))
        .collect();
    Poset::from_cover_relations(labels, &covers).expect("boolean lattice is ranked")
}

/// Lattice of flats of the uniform matroid `U_{r,n}`: subsets of size
/// below `r`, and the whole ground set on top. Geometric for `1 ≤ r ≤ n`.
pub fn uniform_matroid_lattice(r: usize, n: usize) -> Poset {
    assert!(r <= n && n < usize::BITS as usize, "need r ≤ n");
    let mut masks: Vec<usize> = (0..1usize << n).filter(|m| (m.count_ones() as usize) < r).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let full = (1usize << n) - 1;
    if !masks.contains(&full) {
        masks.push(full);
    }
    let index: HashMap<usize, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut covers = Vec::new();
    for &m in &masks {
        if m.count_ones() as usize + 1 < r {
            for b in (0..n).filter(|b| m >> b & 1 == 0) {
                covers.push((index[&m], index[&(m | 1 << b)]));
            }
        } else if m != full {
            covers.push((index[&m], index[&full]));
        }
    }
    let labels = masks.iter().map(|&m| subset_label(m, n)).collect();
    Poset::from_cover_relations(labels, &covers).expect("uniform matroid lattice is ranked")
}

/// The six-element lattice with chains `0̂ ⋖ a ⋖ c ⋖ 1̂` and
/// `0̂ ⋖ b ⋖ d ⋖ 1̂`.
pub fn fig5_lattice() -> Poset {
    let labels = ["0̂", "a", "b", "c", "d", "1̂"].map(String::from).to_vec();
    Poset::from_cover_relations(labels, &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 5), (4, 5)])
        .expect("fixture is ranked")
}

/// A poset with a partition of its elements and whether the quotient is
/// expected to be homogeneous.
#[derive(Clone, Debug)]
pub struct QuotientFixture {
    pub name: &'static str,
    pub poset: Poset,
    pub partition: ElementPartition,
    pub homogeneous: bool,
}

/// Two chains `0̂ < x < y` and `0̂ < w < z` (elements `0̂, x, y, w, z`) with
/// three partitions: one breaking antisymmetry, one breaking transitivity,
/// and the identity.
pub fn counterexample_posets() -> Vec<QuotientFixture> {
    let labels = ["0̂", "x", "y", "w", "z"].map(String::from).to_vec();
    let poset = Poset::from_cover_relations(labels, &[(0, 1), (1, 2), (0, 3), (3, 4)]).expect("fixture is ranked");
    let part = |classes: Vec<Vec<usize>>| ElementPartition::new(5, classes).expect("fixture partition");
    vec![
        QuotientFixture {
            name: "antisymmetry",
            poset: poset.clone(),
            partition: part(vec![vec![1, 3], vec![0, 2, 4]]),
            homogeneous: false,
        },
        QuotientFixture {
            name: "transitivity",
            poset: poset.clone(),
            partition: part(vec![vec![0], vec![1], vec![3, 2], vec![4]]),
            homogeneous: false,
        },
        QuotientFixture {
            name: "identity",
            poset,
            partition: ElementPartition::discrete(5),
            homogeneous: true,
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Lattice;
    use crate::poly::Polynomial;
    use crate::quotient::is_homogeneous;
    use crate::Int;

    const BELL: [usize; 8] = [1, 1, 2, 5, 15, 52, 203, 877];

    #[test]
    fn set_partition_basics() {
        let p = SetPartition::new(4, vec![vec![4, 2], vec![3], vec![1]]);
        assert_eq!(p.to_string(), "1/24/3");
        assert_eq!(p.rank(), 1);
        assert!(SetPartition::discrete(4).refines(&p));
        assert!(!p.refines(&SetPartition::discrete(4)));
        assert_eq!(p.merge(0, 2).to_string(), "13/24");
        assert_eq!(SetPartition::new(10, vec![(1..=10).collect()]).to_string(), "1,2,3,4,5,6,7,8,9,10");
    }

    #[test]
    fn bell_numbers() {
        for (n, &b) in BELL.iter().enumerate() {
            assert_eq!(SetPartition::all(n).len(), b, "n = {n}");
        }
    }

    #[test]
    fn partition_lattice_shape() {
        let p3 = partition_lattice(3);
        assert_eq!(p3.labels(), &["1/2/3", "12/3", "13/2", "1/23", "123"].map(String::from));
        assert_eq!(p3.zero(), 0);
        let p4 = partition_lattice(4);
        assert_eq!(p4.len(), 15);
        assert_eq!(p4.atoms().len(), 6);
        assert_eq!(p4.height(), 3);
        assert_eq!(partition_lattice(1).len(), 1);
    }

    #[test]
    fn pi_n_blocks() {
        let b3 = pi_n_atom_blocks(3);
        assert_eq!(b3.blocks, vec![vec!["12/3".to_string()], vec!["13/2".to_string(), "1/23".to_string()]]);
        assert_eq!(pi_n_atom_partition(4).unwrap().sizes(), vec![1, 2, 3]);
        assert_eq!(pi_n_atom_partition(2).unwrap().sizes(), vec![1]);
        let p4 = partition_lattice(4);
        let chain = pi_n_standard_chain(&p4, 4).unwrap();
        let labels: Vec<&str> = chain.iter().map(|&x| p4.label(x)).collect();
        assert_eq!(labels, ["1/2/3/4", "12/3/4", "123/4", "1234"]);
    }

    #[test]
    fn boolean_lattices() {
        assert_eq!(boolean_lattice(0).len(), 1);
        assert_eq!(boolean_lattice(1).cover_pairs(), Poset::chain(2).cover_pairs());
        let b3 = boolean_lattice(3);
        assert_eq!(b3.len(), 8);
        assert_eq!(b3.label(5), "{1,3}");
        assert_eq!(b3.characteristic_polynomial(), Polynomial::from_roots([1, 1, 1].map(Int::from)));
    }

    #[test]
    fn uniform_matroids() {
        let u23 = uniform_matroid_lattice(2, 3);
        assert_eq!(u23.len(), 5);
        assert!(Lattice::new(u23).unwrap().is_geometric());
        let u35 = Lattice::new(uniform_matroid_lattice(3, 5)).unwrap();
        assert_eq!(u35.len(), 1 + 5 + 10 + 1);
        assert!(u35.is_geometric());
        assert!(crate::iso::is_isomorphic(&uniform_matroid_lattice(3, 3), &boolean_lattice(3)).is_some());
    }

    #[test]
    fn fig5() {
        let f = fig5_lattice();
        assert_eq!(f.len(), 6);
        assert_eq!(f.ranks(), &[0, 1, 1, 2, 2, 3]);
        assert_eq!(f.characteristic_polynomial(), Polynomial::new([1, 0, -2, 1].map(Int::from).to_vec()));
    }

    #[test]
    fn counterexamples() {
        for fx in counterexample_posets() {
            assert_eq!(is_homogeneous(&fx.poset, &fx.partition), fx.homogeneous, "{}", fx.name);
        }
    }

    #[test]
    fn generators_are_deterministic() {
        let a = serde_json::to_string(&partition_lattice(5)).unwrap();
        let b = serde_json::to_string(&partition_lattice(5)).unwrap();
        assert_eq!(a, b);
    }
}
