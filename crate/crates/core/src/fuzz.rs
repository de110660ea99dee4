//! Seeded random generators for property testing.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::poset::Poset;
use crate::quotient::{is_homogeneous, ElementPartition};

pub type FuzzRng = ChaCha8Rng;

pub fn rng(seed: u64) -> FuzzRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape parameters for [`random_ranked_poset`].
#[derive(Clone, Copy, Debug)]
pub struct PosetShape {
    /// Ranks above `0̂`, drawn from `1..=max_height`.
    pub max_height: usize,
    /// Elements per rank, drawn from `1..=max_width`.
    pub max_width: usize,
    /// Probability of each extra cover between consecutive ranks.
    pub density: f64,
    /// Probability of listing an implied relation among the input covers.
    pub redundancy: f64,
}

impl Default for PosetShape {
    fn default() -> Self {
        Self {
            max_height: 4,
            max_width: 3,
            density: 0.4,
            redundancy: 0.1,
        }
    }
}

/// A random ranked poset with a unique minimum. Covers only join
/// consecutive ranks and every element covers at least one element, so the
/// level of an element is its rank. Some implied pairs are mixed into the
/// input to exercise transitive reduction.
pub fn random_ranked_poset<R: Rng>(rng: &mut R, shape: PosetShape) -> Poset {
    let height = rng.random_range(1..=shape.max_height.max(1));
    let mut levels: Vec<Vec<usize>> = vec![vec![0]];
    let mut n = 1;
    for _ in 0..height {
        let w = rng.random_range(1..=shape.max_width.max(1));
        levels.push((n..n + w).collect());
        n += w;
    }
    let mut below = vec![Vec::<usize>::new(); n];
    let mut covers = Vec::new();
    for k in 1..levels.len() {
        for &y in &levels[k] {
            let lower = &levels[k - 1];
            let forced = lower[rng.random_range(0..lower.len())];
            for &x in lower {
                if x == forced || rng.random_bool(shape.density) {
                    covers.push((x, y));
                    below[y].push(x);
                }
            }
        }
    }
    let mut input = covers.clone();
    for level in levels.iter().skip(2) {
        for &y in level {
            for &m in &below[y] {
                for &x in &below[m] {
                    if rng.random_bool(shape.redundancy) {
                        input.push((x, y));
                    }
                }
            }
        }
    }
    input.shuffle(rng);
    Poset::from_covers(n, &input).expect("levelled construction is a ranked poset")
}

/// A uniformly random relabelling of `poset`, with the permutation used
/// (`perm[x]` is the new index of `x`).
pub fn random_relabelling<R: Rng>(rng: &mut R, poset: &Poset) -> (Poset, Vec<usize>) {
    let mut perm: Vec<usize> = poset.elements().collect();
    perm.shuffle(rng);
    let q = poset.permuted(&perm).expect("a permutation");
    (q, perm)
}

/// Randomly merges nonzero elements of equal rank, retrying until the
/// partition is homogeneous. Returns `None` if `attempts` draws all fail.
pub fn random_homogeneous_partition<R: Rng>(
    rng: &mut R,
    poset: &Poset,
    merge_prob: f64,
    attempts: usize,
) -> Option<ElementPartition> {
    for _ in 0..attempts {
        let mut key: Vec<usize> = poset.elements().collect();
        for r in 1..=poset.height() {
            let same: Vec<usize> = poset.elements().filter(|&x| poset.rank(x) == r).collect();
            for w in same.windows(2) {
                if rng.random_bool(merge_prob) {
                    key[w[1]] = key[w[0]];
                }
            }
        }
        let part = ElementPartition::from_keys(&key);
        if is_homogeneous(poset, &part) {
            return Some(part);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::verify_isomorphism;

    #[test]
    fn generator_is_deterministic() {
        let a = random_ranked_poset(&mut rng(7), PosetShape::default());
        let b = random_ranked_poset(&mut rng(7), PosetShape::default());
        assert_eq!(a.cover_pairs(), b.cover_pairs());
    }

    #[test]
    fn generated_posets_are_levelled() {
        let mut r = rng(1);
        for _ in 0..50 {
            let p = random_ranked_poset(&mut r, PosetShape::default());
            assert_eq!(p.zero(), 0);
            for (x, y) in p.cover_pairs() {
                assert_eq!(p.rank(x) + 1, p.rank(y));
            }
            let (q, perm) = random_relabelling(&mut r, &p);
            assert!(verify_isomorphism(&p, &q, &perm));
        }
    }

    #[test]
    fn partitions_are_homogeneous() {
        let mut r = rng(3);
        let p = random_ranked_poset(&mut r, PosetShape::default());
        let part = random_homogeneous_partition(&mut r, &p, 0.5, 20).unwrap();
        assert!(is_homogeneous(&p, &part));
        assert_eq!(part.classes()[part.class_of(p.zero())], vec![p.zero()]);
    }
}
