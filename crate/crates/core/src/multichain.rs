//! Atom partitions induced by `0̂`–`1̂` multichains, the meet condition,
//! left-modularity, and the conditions equivalent to
//! `χ(L,t) = t^{ρ(L)−n} ∏(t − |A_i|)` for such partitions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::poly::{FactoredForm, Laurent};
use crate::transversal::{
    atomic_census, factor_characteristic, unique_block_violation, ConditionCheck, OrderedAtomPartition, Witness,
};
use crate::{Int, IntPolynomial};

/// `0̂ = x_0 ≤ x_1 ≤ … ≤ x_n = 1̂`, repeats allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multichain {
    elements: Vec<usize>,
}

impl Multichain {
    pub fn new(lattice: &Lattice, elements: Vec<usize>) -> Result<Self> {
        let n = lattice.len();
        if let Some(&bad) = elements.iter().find(|&&x| x >= n) {
            return Err(Error::IndexOutOfRange { index: bad, size: n });
        }
        if elements.len() < 2 {
            return Err(Error::InvalidMultichain("needs at least 0̂ and 1̂".into()));
        }
        if elements[0] != lattice.zero() {
            return Err(Error::InvalidMultichain(format!(
                "starts at {}, not 0̂",
                lattice.label(elements[0])
            )));
        }
        if *elements.last().unwrap() != lattice.one() {
            return Err(Error::InvalidMultichain(format!(
                "ends at {}, not 1̂",
                lattice.label(*elements.last().unwrap())
            )));
        }
        if let Some(w) = elements.windows(2).find(|w| !lattice.leq(w[0], w[1])) {
            return Err(Error::InvalidMultichain(format!(
                "{} is not below {}",
                lattice.label(w[0]),
                lattice.label(w[1])
            )));
        }
        Ok(Self { elements })
    }

    pub fn from_labels(lattice: &Lattice, labels: &[String]) -> Result<Self> {
        let elements = labels
            .iter()
            .map(|l| lattice.poset().resolve(l))
            .collect::<Result<Vec<_>>>()?;
        Self::new(lattice, elements)
    }

    /// `x_0, …, x_n`.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    /// `n`, the number of steps and of induced blocks.
    pub fn len(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_saturated(&self, lattice: &Lattice) -> bool {
        self.elements.windows(2).all(|w| lattice.covers(w[0], w[1]))
    }

    pub fn to_json(&self, lattice: &Lattice) -> MultichainJson {
        MultichainJson {
            chain: self.elements.iter().map(|&x| lattice.label(x).to_string()).collect(),
        }
    }
}

/// `{"chain": ["element label", ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultichainJson {
    pub chain: Vec<String>,
}

impl MultichainJson {
    pub fn resolve(&self, lattice: &Lattice) -> Result<Multichain> {
        Multichain::from_labels(lattice, &self.chain)
    }
}

/// `A_i = {a : a ≤ x_i, a ≰ x_{i−1}}`, empty blocks kept.
pub fn induced_partition(lattice: &Lattice, chain: &Multichain) -> OrderedAtomPartition {
    let blocks = chain
        .elements()
        .windows(2)
        .map(|w| {
            lattice
                .atoms()
                .iter()
                .copied()
                .filter(|&a| lattice.leq(a, w[1]) && !lattice.leq(a, w[0]))
                .collect()
        })
        .collect();
    OrderedAtomPartition::new(lattice.poset(), blocks).expect("a 0̂–1̂ multichain partitions the atoms")
}

/// First index `i ≥ 1` with `x ≤ x_i`.
fn first_step(lattice: &Lattice, chain: &Multichain, x: usize) -> usize {
    chain
        .elements()
        .iter()
        .position(|&c| lattice.leq(x, c))
        .expect("every element is below 1̂")
}

fn witness_at(lattice: &Lattice, x: usize) -> Witness {
    Witness {
        element: lattice.label(x).into(),
        transversal: None,
        block_counts: None,
    }
}

/// Every atomic `x` of rank at least 2 with `x ≤ x_i`, `x ≰ x_{i−1}` has
/// `x ∧ x_{i−1} ≠ 0̂`.
pub fn meet_condition(lattice: &Lattice, chain: &Multichain) -> ConditionCheck {
    let zero = lattice.zero();
    let bad = lattice.poset().elements_by_rank().iter().copied().find(|&x| {
        lattice.rank(x) >= 2 && lattice.is_join_of_atoms(x) && {
            let i = first_step(lattice, chain, x);
            lattice.meet(x, chain.elements()[i - 1]) == zero
        }
    });
    ConditionCheck {
        name: "meet_condition".into(),
        holds: bad.is_none(),
        witness: bad.map(|x| witness_at(lattice, x)),
    }
}

/// `y ∨ (x ∧ z) = (y ∨ x) ∧ z` for every `y ≤ z`.
pub fn is_modular_pair(lattice: &Lattice, x: usize, z: usize) -> bool {
    let m = lattice.meet(x, z);
    lattice
        .poset()
        .down_set(z)
        .ones()
        .all(|y| lattice.join(y, m) == lattice.meet(lattice.join(y, x), z))
}

/// `(x, z)` is a modular pair for every `z`.
pub fn is_left_modular_element(lattice: &Lattice, x: usize) -> bool {
    lattice.elements().all(|z| is_modular_pair(lattice, x, z))
}

pub fn is_left_modular(lattice: &Lattice, chain: &Multichain) -> bool {
    chain.elements().iter().all(|&x| is_left_modular_element(lattice, x))
}

/// The first saturated `0̂`–`1̂` chain of left-modular elements found by a
/// depth-first search taking upper covers in increasing index order.
pub fn find_left_modular_chain(lattice: &Lattice) -> Option<Multichain> {
    let n = lattice.len();
    let mut modular: Vec<Option<bool>> = vec![None; n];
    let mut dead = vec![false; n];
    let mut is_mod = |x: usize| *modular[x].get_or_insert_with(|| is_left_modular_element(lattice, x));
    let sorted_covers = |x: usize| {
        let mut c = lattice.poset().upper_covers(x).to_vec();
        c.sort_unstable();
        c
    };

    let zero = lattice.zero();
    if !is_mod(zero) {
        return None;
    }
    let mut path = vec![zero];
    let mut pending = vec![sorted_covers(zero)];
    pending[0].reverse();
    while let Some(&x) = path.last() {
        if x == lattice.one() {
            return Some(Multichain { elements: path });
        }
        let next = loop {
            match pending.last_mut().unwrap().pop() {
                Some(y) if !dead[y] && is_mod(y) => break Some(y),
                Some(_) => continue,
                None => break None,
            }
        };
        match next {
            Some(y) => {
                let mut c = sorted_covers(y);
                c.reverse();
                path.push(y);
                pending.push(c);
            }
            None => {
                dead[x] = true;
                path.pop();
                pending.pop();
            }
        }
    }
    None
}

/// The four conditions of the equivalence theorem for a multichain-induced
/// partition, with the hypothesis that atomic transversals have support
/// equal to the rank of their join.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub support_hypothesis: ConditionCheck,
    pub semimodular: bool,
    pub cond1_unique_block: ConditionCheck,
    pub cond2_atom_pairs: ConditionCheck,
    pub cond3_meet: ConditionCheck,
    pub cond4_factors: ConditionCheck,
    pub chi: IntPolynomial,
    pub candidate: FactoredForm,
    /// All four flags coincide.
    pub flags_agree: bool,
    /// The flags coincide, or the support hypothesis fails.
    pub consistent: bool,
}

impl EquivalenceReport {
    pub fn flags(&self) -> [bool; 4] {
        [
            self.cond1_unique_block.holds,
            self.cond2_atom_pairs.holds,
            self.cond3_meet.holds,
            self.cond4_factors.holds,
        ]
    }
}

/// Joins of two distinct atoms of one block must have a block meeting their
/// atoms in exactly one element.
fn atom_pair_condition(lattice: &Lattice, part: &OrderedAtomPartition) -> ConditionCheck {
    let mut bad = None;
    'outer: for block in part.blocks() {
        for (i, &a) in block.iter().enumerate() {
            for &b in &block[i + 1..] {
                let x = lattice.join(a, b);
                let counts = part.counts_below(lattice, x);
                if !counts.contains(&1) {
                    bad = Some(Witness {
                        element: lattice.label(x).into(),
                        transversal: Some(vec![lattice.label(a).into(), lattice.label(b).into()]),
                        block_counts: Some(counts),
                    });
                    break 'outer;
                }
            }
        }
    }
    ConditionCheck {
        name: "atom_pairs".into(),
        holds: bad.is_none(),
        witness: bad,
    }
}

pub fn theorem_equivalence_report(lattice: &Lattice, chain: &Multichain) -> EquivalenceReport {
    let part = induced_partition(lattice, chain);
    let census = atomic_census(lattice, &part);
    let support_hypothesis = ConditionCheck {
        name: "support_equals_rank".into(),
        holds: census.support_violation.is_none(),
        witness: census.support_violation.as_ref().map(|t| Witness {
            element: lattice.label(t.join(lattice)).into(),
            transversal: Some(t.labels(lattice.poset())),
            block_counts: None,
        }),
    };
    let unique = unique_block_violation(lattice, &part);
    let cond1 = ConditionCheck {
        name: "unique_block_atom".into(),
        holds: unique.is_none(),
        witness: unique.map(|(x, n)| Witness {
            element: lattice.label(x).into(),
            transversal: None,
            block_counts: Some(n),
        }),
    };
    let cond2 = atom_pair_condition(lattice, &part);
    let cond3 = meet_condition(lattice, chain);
    let chi = lattice.poset().characteristic_polynomial();
    let candidate = FactoredForm::new(lattice.height() as i64 - part.len() as i64, part.sizes());
    let factors = candidate.to_laurent::<Int>() == Laurent::from_polynomial(chi.clone());
    let cond4 = ConditionCheck {
        name: "factors".into(),
        holds: factors,
        witness: None,
    };
    let flags = [cond1.holds, cond2.holds, cond3.holds, cond4.holds];
    let flags_agree = flags.iter().all(|&f| f == flags[0]);
    EquivalenceReport {
        consistent: flags_agree || !support_hypothesis.holds,
        support_hypothesis,
        semimodular: lattice.is_semimodular(),
        cond1_unique_block: cond1,
        cond2_atom_pairs: cond2,
        cond3_meet: cond3,
        cond4_factors: cond4,
        chi,
        candidate,
        flags_agree,
    }
}

/// A minimal nonzero `x` with no block meeting `A_x` in exactly one atom.
pub fn one_ni_witness(lattice: &Lattice, part: &OrderedAtomPartition) -> Option<usize> {
    unique_block_violation(lattice, part).map(|(x, _)| x)
}

/// The minimal violator for a multichain-induced partition, checked to have
/// all of its atoms in a single block.
pub fn chain_one_ni_witness(lattice: &Lattice, chain: &Multichain) -> Result<Option<usize>> {
    let part = induced_partition(lattice, chain);
    let Some((x, counts)) = unique_block_violation(lattice, &part) else {
        return Ok(None);
    };
    if counts.iter().filter(|&&c| c != 0).count() != 1 {
        return Err(Error::CrossCheckFailed(format!(
            "minimal violator {} meets blocks {counts:?}",
            lattice.label(x)
        )));
    }
    Ok(Some(x))
}

/// For each block `A_j` and distinct `y, z ∈ A_j`, some `x ∈ A_i` with
/// `i < j` makes `{x, y, z}` a circuit.
pub fn circuit_condition(lattice: &Lattice, part: &OrderedAtomPartition) -> Result<ConditionCheck> {
    if !lattice.is_geometric() {
        return Err(Error::NotGeometric);
    }
    let mut bad = None;
    'outer: for (j, block) in part.blocks().iter().enumerate() {
        for (k, &y) in block.iter().enumerate() {
            for &z in &block[k + 1..] {
                let yz = lattice.join(y, z);
                let found = part.blocks()[..j]
                    .iter()
                    .flatten()
                    .any(|&x| lattice.rank(lattice.join(yz, x)) == 2);
                if !found {
                    bad = Some(Witness {
                        element: lattice.label(yz).into(),
                        transversal: Some(vec![lattice.label(y).into(), lattice.label(z).into()]),
                        block_counts: None,
                    });
                    break 'outer;
                }
            }
        }
    }
    Ok(ConditionCheck {
        name: "circuit_condition".into(),
        holds: bad.is_none(),
        witness: bad,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StanleyResult {
    pub chain: Vec<String>,
    pub factored: FactoredForm,
}

/// Finds a saturated left-modular chain and factors `χ` over its induced
/// partition. Requires a semimodular lattice.
pub fn stanley_factorization(lattice: &Lattice) -> Result<Option<StanleyResult>> {
    if !lattice.is_semimodular() {
        return Err(Error::HypothesisViolated("lattice is not semimodular".into()));
    }
    let Some(chain) = find_left_modular_chain(lattice) else {
        return Ok(None);
    };
    let part = induced_partition(lattice, &chain);
    let report = factor_characteristic(lattice, &part)?;
    let factored = report.factored.ok_or_else(|| {
        Error::CrossCheckFailed("left-modular chain induced a partition without factorization".into())
    })?;
    if factored.t_power != 0 {
        return Err(Error::CrossCheckFailed(format!("saturated chain left t-power {}", factored.t_power)));
    }
    Ok(Some(StanleyResult {
        chain: chain.to_json(lattice).chain,
        factored,
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConverseReport {
    pub factors: bool,
    pub left_modular: bool,
    pub circuit_condition: bool,
    /// Factorization implies both left-modularity and the circuit condition.
    pub agrees: bool,
}

/// On a geometric lattice with a saturated chain: factorization over the
/// induced partition implies the chain is left-modular.
pub fn converse_stanley_check(lattice: &Lattice, chain: &Multichain) -> Result<ConverseReport> {
    if !lattice.is_geometric() {
        return Err(Error::NotGeometric);
    }
    if !chain.is_saturated(lattice) {
        return Err(Error::InvalidMultichain("chain is not saturated".into()));
    }
    let part = induced_partition(lattice, chain);
    let candidate = FactoredForm::new(0, part.sizes());
    let factors = candidate.expand::<Int>()? == lattice.poset().characteristic_polynomial();
    let left_modular = is_left_modular(lattice, chain);
    let circuit = circuit_condition(lattice, &part)?.holds;
    Ok(ConverseReport {
        factors,
        left_modular,
        circuit_condition: circuit,
        agrees: !factors || (left_modular && circuit),
    })
}

/// Every `0̂`–`1̂` multichain with at most `max_steps` steps, repeats
/// allowed, in lexicographic order of element indices.
pub fn multichains_up_to(lattice: &Lattice, max_steps: usize) -> Vec<Multichain> {
    let mut out = Vec::new();
    let mut path = vec![lattice.zero()];
    fn extend(l: &Lattice, path: &mut Vec<usize>, left: usize, out: &mut Vec<Multichain>) {
        let last = *path.last().unwrap();
        if left == 0 {
            return;
        }
        for y in l.poset().up_set(last).ones() {
            path.push(y);
            if y == l.one() {
                out.push(Multichain { elements: path.clone() });
            }
            extend(l, path, left - 1, out);
            path.pop();
        }
    }
    extend(lattice, &mut path, max_steps, &mut out);
    out
}

/// Every saturated `0̂`–`1̂` chain.
pub fn saturated_chains(lattice: &Lattice) -> Vec<Multichain> {
    let mut out = Vec::new();
    let mut path = vec![lattice.zero()];
    fn extend(l: &Lattice, path: &mut Vec<usize>, out: &mut Vec<Multichain>) {
        let last = *path.last().unwrap();
        if last == l.one() {
            out.push(Multichain { elements: path.clone() });
            return;
        }
        for &y in l.poset().upper_covers(last) {
            path.push(y);
            extend(l, path, out);
            path.pop();
        }
    }
    extend(lattice, &mut path, &mut out);
    out
}
