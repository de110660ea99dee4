//! Finite lattices with precomputed join and meet tables.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::poset::Poset;

/// A poset verified to be a lattice, with O(1) joins and meets.
#[derive(Clone, Debug)]
pub struct Lattice {
    poset: Poset,
    join: Vec<u32>,
    meet: Vec<u32>,
    one: usize,
    atoms: Vec<usize>,
    atom_slot: Vec<Option<usize>>,
    atoms_below: Vec<FixedBitSet>,
}

const WORD: usize = usize::BITS as usize;

fn positional_rows(poset: &Poset, pos: &[usize], rows: impl Fn(usize) -> FixedBitSet) -> Vec<Vec<usize>> {
    let n = poset.len();
    let words = n.div_ceil(WORD);
    (0..n)
        .map(|x| {
            let mut out = vec![0usize; words];
            for y in rows(x).ones() {
                out[pos[y] / WORD] |= 1 << (pos[y] % WORD);
            }
            out
        })
        .collect()
}

fn subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

impl Lattice {
    /// Fails with [`Error::NotALattice`] on the first pair lacking a join.
    pub fn new(poset: Poset) -> Result<Self> {
        let n = poset.len();
        assert!(n <= u32::MAX as usize, "lattice too large for u32 tables");
        // Work in linear-extension positions so that the first common upper
        // bound found is a minimal one.
        let order = poset.elements_by_rank().to_vec();
        let mut pos = vec![0usize; n];
        for (i, &x) in order.iter().enumerate() {
            pos[x] = i;
        }
        let up = positional_rows(&poset, &pos, |x| poset.up_set(x).clone());
        let down = positional_rows(&poset, &pos, |x| poset.down_set(x).clone());
        let words = n.div_ceil(WORD);

        let mut join = vec![0u32; n * n];
        let mut meet = vec![0u32; n * n];
        let mut common = vec![0usize; words];
        for x in 0..n {
            join[x * n + x] = x as u32;
            meet[x * n + x] = x as u32;
            for y in x + 1..n {
                let (j, m) = if poset.leq(x, y) {
                    (y, x)
                } else if poset.leq(y, x) {
                    (x, y)
                } else {
                    for w in 0..words {
                        common[w] = up[x][w] & up[y][w];
                    }
                    let first = common
                        .iter()
                        .enumerate()
                        .find(|(_, &w)| w != 0)
                        .map(|(i, &w)| i * WORD + w.trailing_zeros() as usize)
                        .ok_or(Error::NotALattice { x, y, bound: "upper bound" })?;
                    let j = order[first];
                    if !subset(&common, &up[j]) {
                        return Err(Error::NotALattice { x, y, bound: "least upper bound" });
                    }
                    for w in 0..words {
                        common[w] = down[x][w] & down[y][w];
                    }
                    let last = common
                        .iter()
                        .enumerate()
                        .rev()
                        .find(|(_, &w)| w != 0)
                        .map(|(i, &w)| i * WORD + (WORD - 1 - w.leading_zeros() as usize))
                        .expect("0̂ is a common lower bound");
                    let m = order[last];
                    if !subset(&common, &down[m]) {
                        return Err(Error::NotALattice { x, y, bound: "greatest lower bound" });
                    }
                    (j, m)
                };
                join[x * n + y] = j as u32;
                join[y * n + x] = j as u32;
                meet[x * n + y] = m as u32;
                meet[y * n + x] = m as u32;
            }
        }

        let one = poset
            .elements()
            .fold(poset.zero(), |acc, x| join[acc * n + x] as usize);
        let atoms = poset.atoms();
        let mut atom_slot = vec![None; n];
        for (i, &a) in atoms.iter().enumerate() {
            atom_slot[a] = Some(i);
        }
        let atoms_below = (0..n)
            .map(|x| {
                let mut s = FixedBitSet::with_capacity(atoms.len());
                for (i, &a) in atoms.iter().enumerate() {
                    if poset.leq(a, x) {
                        s.insert(i);
                    }
                }
                s
            })
            .collect();
        Ok(Self {
            poset,
            join,
            meet,
            one,
            atoms,
            atom_slot,
            atoms_below,
        })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn into_poset(self) -> Poset {
        self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        self.poset.elements()
    }

    pub fn zero(&self) -> usize {
        self.poset.zero()
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn rank(&self, x: usize) -> usize {
        self.poset.rank(x)
    }

    pub fn height(&self) -> usize {
        self.poset.height()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.poset.leq(x, y)
    }

    pub fn label(&self, x: usize) -> &str {
        self.poset.label(x)
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.len() + y] as usize
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.len() + y] as usize
    }

    /// Join of any collection; `0̂` when empty.
    pub fn join_all<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        xs.into_iter().fold(self.zero(), |acc, x| self.join(acc, x))
    }

    pub fn meet_all<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        xs.into_iter().fold(self.one, |acc, x| self.meet(acc, x))
    }

    pub fn atoms(&self) -> &[usize] {
        &self.atoms
    }

    /// Position of `x` in [`Lattice::atoms`], if `x` is an atom.
    pub fn atom_slot(&self, x: usize) -> Option<usize> {
        self.atom_slot[x]
    }

    /// `A_x` as a bitset over atom slots.
    pub fn atom_slots_below(&self, x: usize) -> &FixedBitSet {
        &self.atoms_below[x]
    }

    /// `A_x` as elements.
    pub fn atoms_below(&self, x: usize) -> Vec<usize> {
        self.atoms_below[x].ones().map(|i| self.atoms[i]).collect()
    }

    /// `y` covers `x`.
    pub fn covers(&self, x: usize, y: usize) -> bool {
        self.poset.is_cover(x, y)
    }

    /// `x ∧ y ⋖ x` implies `y ⋖ x ∨ y`, over all pairs.
    pub fn is_semimodular(&self) -> bool {
        self.semimodular_violation().is_none()
    }

    /// A pair `(x, y)` with `x ∧ y ⋖ x` but `y` not covered by `x ∨ y`.
    pub fn semimodular_violation(&self) -> Option<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| self.covers(self.meet(x, y), x) && !self.covers(y, self.join(x, y)))
    }

    /// Every element is the join of the atoms below it.
    pub fn is_atomic(&self) -> bool {
        self.elements().all(|x| self.is_join_of_atoms(x))
    }

    pub fn is_join_of_atoms(&self, x: usize) -> bool {
        self.join_all(self.atoms_below(x)) == x
    }

    /// Semimodular and atomic.
    pub fn is_geometric(&self) -> bool {
        self.is_semimodular() && self.is_atomic()
    }
}

impl TryFrom<Poset> for Lattice {
    type Error = Error;

    fn try_from(p: Poset) -> Result<Self> {
        Lattice::new(p)
    }
}
