//! Finite ranked posets with a unique minimum.

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Laurent, Polynomial};
use crate::scalar::Coefficient;
use crate::Int;

/// A finite ranked poset with a unique minimal element.
///
/// Elements are the dense indices `0..len()`. The order relation is stored as
/// one bitset row per element in both directions, and the stored covers are
/// always the transitive reduction of that relation.
#[derive(Clone, Debug)]
pub struct Poset {
    labels: Vec<String>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    zero: usize,
    rank: Vec<usize>,
    by_rank: Vec<usize>,
}

/// `μ(0̂, x)` for every element `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusVector<C> {
    values: Vec<C>,
}

impl<C: Coefficient> MobiusVector<C> {
    pub fn get(&self, x: usize) -> &C {
        &self.values[x]
    }

    pub fn values(&self) -> &[C] {
        &self.values
    }

    /// Rechecks `Σ_{y ≤ x} μ(y) = δ(0̂, x)` at every element.
    pub fn satisfies_recursion(&self, poset: &Poset) -> bool {
        poset.elements().all(|x| {
            let sum = poset
                .down_set(x)
                .ones()
                .fold(C::zero(), |acc, y| acc + self.values[y].clone());
            if x == poset.zero() {
                sum.is_one()
            } else {
                sum.is_zero()
            }
        })
    }
}

fn index_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

impl Poset {
    /// Builds a poset from cover pairs `(x, y)` meaning `y` covers `x`.
    ///
    /// Redundant pairs (implied by transitivity) are dropped, and the unique
    /// minimum and the rank function are detected.
    pub fn from_cover_relations(labels: Vec<String>, covers: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut succ = vec![Vec::new(); n];
        for &(x, y) in covers {
            for idx in [x, y] {
                if idx >= n {
                    return Err(Error::IndexOutOfRange { index: idx, size: n });
                }
            }
            if x == y {
                return Err(Error::CycleDetected { element: x });
            }
            succ[x].push(y);
        }
        Self::build(labels, succ)
    }

    /// Like [`Poset::from_cover_relations`] with labels `"0"`, `"1"`, ….
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        Self::from_cover_relations(index_labels(n), covers)
    }

    /// Builds a poset from a full order relation, `relation[x]` being the set
    /// of `y` with `x ≤ y`. The partial-order axioms are audited rather than
    /// assumed.
    pub fn from_order_relation(labels: Vec<String>, relation: &[FixedBitSet]) -> Result<Self> {
        let n = labels.len();
        if relation.len() != n {
            return Err(Error::LabelCount {
                labels: n,
                size: relation.len(),
            });
        }
        for (x, row) in relation.iter().enumerate() {
            if row.len() != n {
                return Err(Error::IndexOutOfRange {
                    index: row.len(),
                    size: n,
                });
            }
            if !row.contains(x) {
                return Err(Error::NotReflexive { element: x });
            }
        }
        for (x, row) in relation.iter().enumerate() {
            for y in row.ones() {
                if y != x && relation[y].contains(x) {
                    return Err(Error::NotAntisymmetric { x, y });
                }
                if !relation[y].is_subset(row) {
                    let z = relation[y].difference(row).next().expect("nonempty difference");
                    return Err(Error::NotTransitive { x, y, z });
                }
            }
        }
        let mut succ = vec![Vec::new(); n];
        for (x, row) in relation.iter().enumerate() {
            let mut higher = FixedBitSet::with_capacity(n);
            for y in row.ones().filter(|&y| y != x) {
                for z in relation[y].ones().filter(|&z| z != y) {
                    higher.insert(z);
                }
            }
            succ[x] = row
                .ones()
                .filter(|&y| y != x && !higher.contains(y))
                .collect();
        }
        Self::build(labels, succ)
    }

    fn build(labels: Vec<String>, mut succ: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        for s in &mut succ {
            s.sort_unstable();
            s.dedup();
        }

        // Kahn's algorithm; anything left over sits on a cycle.
        let mut indegree = vec![0usize; n];
        for s in &succ {
            for &y in s {
                indegree[y] += 1;
            }
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&x| indegree[x] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(x) = queue.pop_front() {
            topo.push(x);
            for &y in &succ[x] {
                indegree[y] -= 1;
                if indegree[y] == 0 {
                    queue.push_back(y);
                }
            }
        }
        if topo.len() < n {
            let element = (0..n).find(|&x| indegree[x] > 0).expect("cycle member");
            return Err(Error::CycleDetected { element });
        }

        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for &x in topo.iter().rev() {
            let mut row = FixedBitSet::with_capacity(n);
            row.insert(x);
            for &y in &succ[x] {
                row.union_with(&up[y]);
            }
            up[x] = row;
        }

        // Transitive reduction: y is a cover of x unless some other
        // successor of x already lies below y.
        let upper_covers: Vec<Vec<usize>> = (0..n)
            .map(|x| {
                succ[x]
                    .iter()
                    .copied()
                    .filter(|&y| !succ[x].iter().any(|&z| z != y && up[z].contains(y)))
                    .collect()
            })
            .collect();
        let mut lower_covers = vec![Vec::new(); n];
        for (x, cs) in upper_covers.iter().enumerate() {
            for &y in cs {
                lower_covers[y].push(x);
            }
        }

        let minima: Vec<usize> = (0..n).filter(|&x| lower_covers[x].is_empty()).collect();
        if minima.len() != 1 {
            return Err(Error::MultipleMinima { minima });
        }
        let zero = minima[0];

        let mut shortest = vec![0usize; n];
        let mut longest = vec![0usize; n];
        for &x in &topo {
            if x == zero {
                continue;
            }
            let lows = &lower_covers[x];
            shortest[x] = lows.iter().map(|&y| shortest[y]).min().expect("non-minimal") + 1;
            longest[x] = lows.iter().map(|&y| longest[y]).max().expect("non-minimal") + 1;
        }
        if let Some(element) = (0..n).find(|&x| shortest[x] != longest[x]) {
            return Err(Error::NotRanked {
                element,
                shortest: shortest[element],
                longest: longest[element],
            });
        }
        let rank = longest;

        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (x, row) in up.iter().enumerate() {
            for y in row.ones() {
                down[y].insert(x);
            }
        }

        let mut by_rank: Vec<usize> = (0..n).collect();
        by_rank.sort_by_key(|&x| (rank[x], x));

        Ok(Self {
            labels,
            upper_covers,
            lower_covers,
            up,
            down,
            zero,
            rank,
            by_rank,
        })
    }

    /// The one-element poset.
    pub fn singleton(label: impl Into<String>) -> Self {
        Self::from_cover_relations(vec![label.into()], &[]).expect("singleton is a poset")
    }

    /// A chain `0 < 1 < … < len-1`.
    pub fn chain(len: usize) -> Self {
        let covers: Vec<_> = (1..len).map(|i| (i - 1, i)).collect();
        Self::from_covers(len, &covers).expect("chain is a poset")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    /// Elements sorted by rank, ties by index. A linear extension.
    pub fn elements_by_rank(&self) -> &[usize] {
        &self.by_rank
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    /// First element carrying `label`.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn resolve(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn rank(&self, x: usize) -> usize {
        self.rank[x]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    /// `ρ(P) = max ρ(x)`.
    pub fn height(&self) -> usize {
        self.rank.iter().copied().max().unwrap_or(0)
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    /// `y` covers `x`.
    pub fn is_cover(&self, x: usize, y: usize) -> bool {
        self.rank[y] == self.rank[x] + 1 && self.leq(x, y)
    }

    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    pub fn down_set(&self, x: usize) -> &FixedBitSet {
        &self.down[x]
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper_covers[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower_covers[x]
    }

    /// All cover pairs `(x, y)`, `y` covering `x`, sorted.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        self.upper_covers
            .iter()
            .enumerate()
            .flat_map(|(x, cs)| cs.iter().map(move |&y| (x, y)))
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        self.elements()
            .filter(|&x| self.upper_covers[x].is_empty())
            .collect()
    }

    pub fn with_labels(&self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::LabelCount {
                labels: labels.len(),
                size: self.len(),
            });
        }
        Ok(Self {
            labels,
            ..self.clone()
        })
    }

    /// Möbius values `μ(0̂, x)` in the coefficient ring `C`.
    pub fn mobius_in<C: Coefficient>(&self) -> MobiusVector<C> {
        let mut values = vec![C::zero(); self.len()];
        for &x in &self.by_rank {
            values[x] = if x == self.zero {
                C::one()
            } else {
                -self.down[x]
                    .ones()
                    .filter(|&y| y != x)
                    .fold(C::zero(), |acc, y| acc + values[y].clone())
            };
        }
        MobiusVector { values }
    }

    /// `χ(P, t) = Σ μ(x) t^{ρ(P) - ρ(x)}`.
    pub fn characteristic_polynomial_in<C: Coefficient>(&self) -> Polynomial<C> {
        let mu = self.mobius_in::<C>();
        let h = self.height();
        let mut coeffs = vec![C::zero(); h + 1];
        for x in self.elements() {
            let k = h - self.rank[x];
            coeffs[k] = coeffs[k].clone() + mu.values[x].clone();
        }
        Polynomial::new(coeffs)
    }

    /// `χ̄(P, t) = Σ μ(x) t^{-ρ(x)}`, so that `t^{ρ(P)} χ̄ = χ`.
    pub fn reduced_characteristic_in<C: Coefficient>(&self) -> Laurent<C> {
        let mu = self.mobius_in::<C>();
        let h = self.height();
        let mut coeffs = vec![C::zero(); h + 1];
        for x in self.elements() {
            let k = h - self.rank[x];
            coeffs[k] = coeffs[k].clone() + mu.values[x].clone();
        }
        Laurent::new(-(h as i64), Polynomial::new(coeffs))
    }

    pub fn mobius_vector(&self) -> MobiusVector<Int> {
        self.mobius_in()
    }

    pub fn characteristic_polynomial(&self) -> Polynomial<Int> {
        self.characteristic_polynomial_in()
    }

    pub fn reduced_characteristic(&self) -> Laurent<Int> {
        self.reduced_characteristic_in()
    }

    /// Product of any number of posets with the componentwise order. Element
    /// indices are mixed-radix with the first factor most significant, and
    /// labels are tuples of factor labels.
    pub fn product_of(factors: &[&Poset]) -> Poset {
        let sizes: Vec<usize> = factors.iter().map(|p| p.len()).collect();
        let total: usize = sizes.iter().product();
        let mut strides = vec![1usize; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * sizes[i + 1];
        }
        let mut labels = Vec::with_capacity(total);
        let mut covers = Vec::new();
        let mut coords = vec![0usize; factors.len()];
        for idx in 0..total {
            let mut rest = idx;
            for i in 0..factors.len() {
                coords[i] = rest / strides[i];
                rest %= strides[i];
            }
            let parts: Vec<&str> = coords
                .iter()
                .zip(factors)
                .map(|(&c, p)| p.label(c))
                .collect();
            labels.push(format!("({})", parts.join(",")));
            for (i, p) in factors.iter().enumerate() {
                for &c in p.upper_covers(coords[i]) {
                    covers.push((idx, idx - coords[i] * strides[i] + c * strides[i]));
                }
            }
        }
        Poset::from_cover_relations(labels, &covers).expect("product of posets is a ranked poset")
    }

    /// `P × Q`.
    pub fn direct_product(&self, other: &Poset) -> Poset {
        Self::product_of(&[self, other])
    }

    /// Decodes a [`Poset::product_of`] index into factor coordinates.
    pub fn product_coordinates(sizes: &[usize], mut idx: usize) -> Vec<usize> {
        let mut coords = vec![0; sizes.len()];
        for i in (0..sizes.len()).rev() {
            coords[i] = idx % sizes[i];
            idx /= sizes[i];
        }
        coords
    }

    /// Least upper bound of `elements`; `0̂` for the empty set.
    pub fn join_of(&self, elements: &[usize]) -> Result<usize> {
        let mut common = FixedBitSet::with_capacity(self.len());
        common.insert_range(..);
        for &x in elements {
            common.intersect_with(&self.up[x]);
        }
        let candidate = common
            .ones()
            .min_by_key(|&z| (self.rank[z], z))
            .ok_or_else(|| self.lattice_failure(elements, "upper bound"))?;
        if common.is_subset(&self.up[candidate]) {
            Ok(candidate)
        } else {
            Err(self.lattice_failure(elements, "least upper bound"))
        }
    }

    pub fn join(&self, x: usize, y: usize) -> Result<usize> {
        self.join_of(&[x, y])
    }

    pub fn meet(&self, x: usize, y: usize) -> Result<usize> {
        let mut common = self.down[x].clone();
        common.intersect_with(&self.down[y]);
        let candidate = common
            .ones()
            .max_by_key(|&z| (self.rank[z], std::cmp::Reverse(z)))
            .expect("0̂ is a common lower bound");
        if common.is_subset(&self.down[candidate]) {
            Ok(candidate)
        } else {
            Err(Error::NotALattice {
                x,
                y,
                bound: "greatest lower bound",
            })
        }
    }

    fn lattice_failure(&self, elements: &[usize], bound: &'static str) -> Error {
        let x = elements.first().copied().unwrap_or(self.zero);
        let y = elements.get(1).copied().unwrap_or(x);
        Error::NotALattice { x, y, bound }
    }

    /// Every pair has a join (meets then exist too, `0̂` being a common
    /// lower bound of everything).
    pub fn is_lattice(&self) -> bool {
        crate::lattice::Lattice::new(self.clone()).is_ok()
    }

    /// Elements covering `0̂`.
    pub fn atoms(&self) -> Vec<usize> {
        self.upper_covers[self.zero].clone()
    }

    /// `A_x`, the atoms below `x`.
    pub fn atoms_below(&self, x: usize) -> Vec<usize> {
        self.upper_covers[self.zero]
            .iter()
            .copied()
            .filter(|&a| self.leq(a, x))
            .collect()
    }

    /// The order ideal generated by `elements`.
    pub fn lower_ideal(&self, elements: &[usize]) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.len());
        for &x in elements {
            out.union_with(&self.down[x]);
        }
        out
    }

    /// The order filter generated by `elements`.
    pub fn upper_ideal(&self, elements: &[usize]) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.len());
        for &x in elements {
            out.union_with(&self.up[x]);
        }
        out
    }

    /// Copy with elements renumbered: old element `x` becomes `perm[x]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Poset> {
        let n = self.len();
        let mut labels = vec![String::new(); n];
        for x in 0..n {
            let target = *perm.get(x).ok_or(Error::IndexOutOfRange { index: x, size: perm.len() })?;
            if target >= n {
                return Err(Error::IndexOutOfRange { index: target, size: n });
            }
            labels[target] = self.labels[x].clone();
        }
        let covers: Vec<_> = self
            .cover_pairs()
            .into_iter()
            .map(|(x, y)| (perm[x], perm[y]))
            .collect();
        Poset::from_cover_relations(labels, &covers)
    }
}

impl PartialEq for Poset {
    /// Identical labels, covers and therefore order. Isomorphism is
    /// [`crate::iso::is_isomorphic`].
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.upper_covers == other.upper_covers
    }
}

impl Eq for Poset {}

impl fmt::Display for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &x in &self.by_rank {
            let covers: Vec<&str> = self.upper_covers[x].iter().map(|&y| self.label(y)).collect();
            writeln!(
                f,
                "[{}] {} < {}",
                self.rank[x],
                self.label(x),
                covers.join(", ")
            )?;
        }
        Ok(())
    }
}

/// `{"labels": [...], "covers": [[x, y], ...]}`
#[derive(Serialize, Deserialize)]
pub struct PosetJson {
    pub labels: Vec<String>,
    pub covers: Vec<[usize; 2]>,
}

impl From<&Poset> for PosetJson {
    fn from(p: &Poset) -> Self {
        Self {
            labels: p.labels.clone(),
            covers: p.cover_pairs().into_iter().map(|(x, y)| [x, y]).collect(),
        }
    }
}

impl TryFrom<PosetJson> for Poset {
    type Error = Error;

    fn try_from(json: PosetJson) -> Result<Self> {
        let covers: Vec<_> = json.covers.iter().map(|&[x, y]| (x, y)).collect();
        Poset::from_cover_relations(json.labels, &covers)
    }
}

impl Serialize for Poset {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PosetJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Poset {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let json = PosetJson::deserialize(deserializer)?;
        Poset::try_from(json).map_err(serde::de::Error::custom)
    }
}
