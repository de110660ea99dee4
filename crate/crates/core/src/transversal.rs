//! Claws, rooted trees, their products, atomic transversals, and the
//! factorization `χ(L,t) = t^{ρ(L)−n} ∏(t − |A_i|)` with its hypotheses.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::iso::verify_isomorphism;
use crate::lattice::Lattice;
use crate::poly::FactoredForm;
use crate::poset::Poset;
use crate::quotient::{quotient_poset, ElementPartition};
use crate::{Int, IntLaurent, IntPolynomial};

/// Largest product materialized by [`transversal_product`] unless the
/// caller passes a different budget.
pub const DEFAULT_PRODUCT_BUDGET: usize = 20_000;

/// Label given to the bottom of claws and rooted trees.
pub const ZERO_LABEL: &str = "0̂";

/// An ordered partition `(A_1, …, A_n)` of the atoms of a lattice. Blocks
/// may be empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedAtomPartition {
    blocks: Vec<Vec<usize>>,
}

impl OrderedAtomPartition {
    pub fn new(poset: &Poset, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let atoms = poset.atoms();
        let mut seen = vec![false; poset.len()];
        let mut blocks = blocks;
        for block in &mut blocks {
            block.sort_unstable();
            for &a in block.iter() {
                if a >= poset.len() {
                    return Err(Error::IndexOutOfRange { index: a, size: poset.len() });
                }
                if poset.rank(a) != 1 {
                    return Err(Error::InvalidAtomPartition(format!("{} is not an atom", poset.label(a))));
                }
                if seen[a] {
                    return Err(Error::InvalidAtomPartition(format!(
                        "{} appears twice",
                        poset.label(a)
                    )));
                }
                seen[a] = true;
            }
        }
        if let Some(&a) = atoms.iter().find(|&&a| !seen[a]) {
            return Err(Error::InvalidAtomPartition(format!("{} is in no block", poset.label(a))));
        }
        Ok(Self { blocks })
    }

    pub fn from_labels(poset: &Poset, blocks: &[Vec<String>]) -> Result<Self> {
        let blocks = blocks
            .iter()
            .map(|b| b.iter().map(|l| poset.resolve(l)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(poset, blocks)
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[usize] {
        &self.blocks[i]
    }

    /// Number of blocks `n`.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn sizes(&self) -> Vec<u64> {
        self.blocks.iter().map(|b| b.len() as u64).collect()
    }

    pub fn block_of(&self, atom: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&atom))
    }

    /// `|A_i ∩ A_x|` for every block.
    pub fn counts_below(&self, lattice: &Lattice, x: usize) -> Vec<usize> {
        self.blocks
            .iter()
            .map(|b| b.iter().filter(|&&a| lattice.leq(a, x)).count())
            .collect()
    }

    pub fn to_json(&self, poset: &Poset) -> AtomPartitionJson {
        AtomPartitionJson {
            blocks: self
                .blocks
                .iter()
                .map(|b| b.iter().map(|&a| poset.label(a).to_string()).collect())
                .collect(),
        }
    }
}

/// `{"blocks": [["atom label", ...], ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomPartitionJson {
    pub blocks: Vec<Vec<String>>,
}

impl AtomPartitionJson {
    pub fn resolve(&self, poset: &Poset) -> Result<OrderedAtomPartition> {
        OrderedAtomPartition::from_labels(poset, &self.blocks)
    }
}

/// A tuple `(t_1, …, t_n)` of lattice elements, one per block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transversal {
    pub entries: Vec<usize>,
}

impl Transversal {
    /// Number of entries different from `zero`.
    pub fn support(&self, zero: usize) -> usize {
        self.entries.iter().filter(|&&t| t != zero).count()
    }

    pub fn labels(&self, poset: &Poset) -> Vec<String> {
        self.entries.iter().map(|&t| poset.label(t).to_string()).collect()
    }

    pub fn join(&self, lattice: &Lattice) -> usize {
        lattice.join_all(self.entries.iter().copied())
    }
}

/// `CL_n`: a bottom labelled `0̂` and one atom per label.
pub fn claw(atom_labels: &[String]) -> Poset {
    let mut labels = vec![ZERO_LABEL.to_string()];
    labels.extend(atom_labels.iter().cloned());
    let covers: Vec<_> = (1..labels.len()).map(|i| (0, i)).collect();
    Poset::from_cover_relations(labels, &covers).expect("a claw is a ranked poset")
}

/// `RT_S`: saturated chains of `L` starting at `0̂` and lying in `S`,
/// ordered by extension. Element `i` of `poset` is `chains[i]`, labelled by
/// the chain's top element.
#[derive(Clone, Debug)]
pub struct RootedTree {
    pub poset: Poset,
    pub chains: Vec<Vec<usize>>,
}

impl RootedTree {
    pub fn top(&self, i: usize) -> usize {
        *self.chains[i].last().expect("chains are nonempty")
    }

    /// Number of atoms of the tree, i.e. chains of length one.
    pub fn atom_count(&self) -> usize {
        self.chains.iter().filter(|c| c.len() == 2).count()
    }
}

pub fn rooted_tree(lattice: &Poset, s: &FixedBitSet) -> Result<RootedTree> {
    let zero = lattice.zero();
    if !s.contains(zero) {
        return Err(Error::ZeroNotInS);
    }
    let mut chains = vec![vec![zero]];
    let mut covers = Vec::new();
    let mut next = 0;
    while next < chains.len() {
        let top = *chains[next].last().unwrap();
        for &y in lattice.upper_covers(top) {
            if s.contains(y) {
                let mut chain = chains[next].clone();
                chain.push(y);
                covers.push((next, chains.len()));
                chains.push(chain);
            }
        }
        next += 1;
    }
    let labels = chains
        .iter()
        .map(|c| {
            let top = *c.last().unwrap();
            if top == zero {
                ZERO_LABEL.to_string()
            } else {
                lattice.label(top).to_string()
            }
        })
        .collect();
    let poset = Poset::from_cover_relations(labels, &covers)?;
    Ok(RootedTree { poset, chains })
}

/// `RT_{Û(A)}` with `Û(A)` the upper ideal generated by `A` together with
/// `0̂`.
pub fn upper_ideal_tree(lattice: &Poset, block: &[usize]) -> Result<RootedTree> {
    let mut s = lattice.upper_ideal(block);
    s.insert(lattice.zero());
    rooted_tree(lattice, &s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProductMode {
    Claws,
    Trees,
}

/// A product of claws or rooted trees, one per block, with every element's
/// join in `L`.
#[derive(Clone, Debug)]
pub struct TransversalProduct {
    pub poset: Poset,
    /// `tops[i][c]`: the lattice element represented by element `c` of
    /// factor `i`.
    pub tops: Vec<Vec<usize>>,
    /// `joins[p]`: `∨t` for product element `p`.
    pub joins: Vec<usize>,
}

impl TransversalProduct {
    pub fn factor_sizes(&self) -> Vec<usize> {
        self.tops.iter().map(|t| t.len()).collect()
    }

    /// The tuple of lattice elements behind product element `p`.
    pub fn transversal(&self, p: usize) -> Transversal {
        let coords = Poset::product_coordinates(&self.factor_sizes(), p);
        Transversal {
            entries: coords.iter().zip(&self.tops).map(|(&c, t)| t[c]).collect(),
        }
    }

    /// Product labels replaced by join labels `∨t`.
    pub fn join_labels(&self, lattice: &Lattice) -> Vec<String> {
        self.joins.iter().map(|&j| lattice.label(j).to_string()).collect()
    }
}

fn factor_posets(lattice: &Lattice, part: &OrderedAtomPartition, mode: ProductMode) -> Result<(Vec<Poset>, Vec<Vec<usize>>)> {
    let zero = lattice.zero();
    let mut posets = Vec::with_capacity(part.len());
    let mut tops = Vec::with_capacity(part.len());
    for block in part.blocks() {
        match mode {
            ProductMode::Claws => {
                let labels: Vec<String> = block.iter().map(|&a| lattice.label(a).to_string()).collect();
                posets.push(claw(&labels));
                let mut t = vec![zero];
                t.extend(block);
                tops.push(t);
            }
            ProductMode::Trees => {
                let tree = upper_ideal_tree(lattice.poset(), block)?;
                tops.push((0..tree.chains.len()).map(|i| tree.top(i)).collect());
                posets.push(tree.poset);
            }
        }
    }
    Ok((posets, tops))
}

/// Number of elements [`transversal_product`] would build.
pub fn product_size(lattice: &Lattice, part: &OrderedAtomPartition, mode: ProductMode) -> Result<usize> {
    match mode {
        ProductMode::Claws => Ok(part.blocks().iter().map(|b| b.len() + 1).product()),
        ProductMode::Trees => {
            let mut total = 1usize;
            for block in part.blocks() {
                let size = upper_ideal_tree(lattice.poset(), block)?.chains.len();
                total = total.saturating_mul(size);
            }
            Ok(total)
        }
    }
}

/// `∏ CL_{A_i}` or `∏ RT_{Û(A_i)}`, refused with
/// [`Error::BudgetExceeded`] above `budget` elements.
pub fn transversal_product(
    lattice: &Lattice,
    part: &OrderedAtomPartition,
    mode: ProductMode,
    budget: usize,
) -> Result<TransversalProduct> {
    let size = product_size(lattice, part, mode)?;
    if size > budget {
        return Err(Error::BudgetExceeded { size, budget });
    }
    let (posets, tops) = factor_posets(lattice, part, mode)?;
    let refs: Vec<&Poset> = posets.iter().collect();
    let poset = Poset::product_of(&refs);
    let sizes: Vec<usize> = tops.iter().map(|t| t.len()).collect();
    let joins = (0..poset.len())
        .map(|p| {
            let coords = Poset::product_coordinates(&sizes, p);
            lattice.join_all(coords.iter().zip(&tops).map(|(&c, t)| t[c]))
        })
        .collect();
    Ok(TransversalProduct { poset, tops, joins })
}

/// The standard equivalence: fibers of `t ↦ ∨t`.
pub fn standard_classes(product: &TransversalProduct) -> ElementPartition {
    ElementPartition::from_keys(&product.joins)
}

/// `T_x^A`: tuples of atoms (or `0̂`), one per block, joining to `x`. Each
/// entry is drawn from the atoms of its block below `x`.
pub fn atomic_transversals(lattice: &Lattice, part: &OrderedAtomPartition, x: usize) -> Vec<Transversal> {
    let zero = lattice.zero();
    let options: Vec<Vec<usize>> = part
        .blocks()
        .iter()
        .map(|b| {
            std::iter::once(zero)
                .chain(b.iter().copied().filter(|&a| lattice.leq(a, x)))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut tuple = Vec::with_capacity(part.len());
    walk_tuples(lattice, &options, zero, &mut tuple, &mut |t, j| {
        if j == x {
            out.push(Transversal { entries: t.to_vec() });
        }
    });
    out
}

/// Depth-first walk over `∏ options[i]`, carrying the running join.
fn walk_tuples(
    lattice: &Lattice,
    options: &[Vec<usize>],
    acc: usize,
    tuple: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize], usize),
) {
    let depth = tuple.len();
    if depth == options.len() {
        visit(tuple, acc);
        return;
    }
    for &o in &options[depth] {
        tuple.push(o);
        walk_tuples(lattice, options, lattice.join(acc, o), tuple, visit);
        tuple.pop();
    }
}

/// All atomic transversals of all elements at once: `|T_x^A|` per element
/// and the first tuple whose support differs from the rank of its join.
#[derive(Clone, Debug)]
pub struct AtomicCensus {
    pub counts: Vec<usize>,
    pub support_violation: Option<Transversal>,
    pub tuples: usize,
}

pub fn atomic_census(lattice: &Lattice, part: &OrderedAtomPartition) -> AtomicCensus {
    let zero = lattice.zero();
    let options: Vec<Vec<usize>> = part
        .blocks()
        .iter()
        .map(|b| std::iter::once(zero).chain(b.iter().copied()).collect())
        .collect();
    let mut counts = vec![0usize; lattice.len()];
    let mut support_violation = None;
    let mut tuples = 0usize;
    let mut tuple = Vec::with_capacity(part.len());
    walk_tuples(lattice, &options, zero, &mut tuple, &mut |t, j| {
        tuples += 1;
        counts[j] += 1;
        if support_violation.is_none() {
            let support = t.iter().filter(|&&a| a != zero).count();
            if support != lattice.rank(j) {
                support_violation = Some(Transversal { entries: t.to_vec() });
            }
        }
    });
    AtomicCensus {
        counts,
        support_violation,
        tuples,
    }
}

/// A counterexample to one hypothesis, keyed by labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub element: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transversal: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block_counts: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionCheck {
    pub name: String,
    pub holds: bool,
    pub witness: Option<Witness>,
}

pub const TRANSVERSALS_EXIST: &str = "transversals_exist";
pub const SUPPORT_EQUALS_RANK: &str = "support_equals_rank";
pub const UNIQUE_BLOCK_ATOM: &str = "unique_block_atom";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub conditions: Vec<ConditionCheck>,
}

impl HypothesisReport {
    pub fn holds(&self) -> bool {
        self.conditions.iter().all(|c| c.holds)
    }

    pub fn get(&self, name: &str) -> Option<&ConditionCheck> {
        self.conditions.iter().find(|c| c.name == name)
    }

    pub fn first_failure(&self) -> Option<&ConditionCheck> {
        self.conditions.iter().find(|c| !c.holds)
    }
}

fn check_exist(lattice: &Lattice, census: &AtomicCensus) -> ConditionCheck {
    let missing = lattice
        .poset()
        .elements_by_rank()
        .iter()
        .copied()
        .find(|&x| census.counts[x] == 0);
    ConditionCheck {
        name: TRANSVERSALS_EXIST.into(),
        holds: missing.is_none(),
        witness: missing.map(|x| Witness {
            element: lattice.label(x).into(),
            transversal: None,
            block_counts: None,
        }),
    }
}

fn check_support(lattice: &Lattice, census: &AtomicCensus) -> ConditionCheck {
    ConditionCheck {
        name: SUPPORT_EQUALS_RANK.into(),
        holds: census.support_violation.is_none(),
        witness: census.support_violation.as_ref().map(|t| Witness {
            element: lattice.label(t.join(lattice)).into(),
            transversal: Some(t.labels(lattice.poset())),
            block_counts: None,
        }),
    }
}

/// First nonzero `x` (by rank) where no block meets `A_x` in exactly one
/// atom, with its counts `N_i`.
pub fn unique_block_violation(lattice: &Lattice, part: &OrderedAtomPartition) -> Option<(usize, Vec<usize>)> {
    lattice
        .poset()
        .elements_by_rank()
        .iter()
        .copied()
        .filter(|&x| x != lattice.zero())
        .map(|x| (x, part.counts_below(lattice, x)))
        .find(|(_, n)| !n.contains(&1))
}

fn check_unique(lattice: &Lattice, part: &OrderedAtomPartition) -> ConditionCheck {
    let bad = unique_block_violation(lattice, part);
    ConditionCheck {
        name: UNIQUE_BLOCK_ATOM.into(),
        holds: bad.is_none(),
        witness: bad.map(|(x, n)| Witness {
            element: lattice.label(x).into(),
            transversal: None,
            block_counts: Some(n),
        }),
    }
}

/// The three hypotheses for claw products: every element has an atomic
/// transversal, supports equal ranks, and every nonzero `x` has a block
/// meeting `A_x` in exactly one atom.
pub fn check_atomic_hypotheses(lattice: &Lattice, part: &OrderedAtomPartition) -> HypothesisReport {
    let census = atomic_census(lattice, part);
    HypothesisReport {
        conditions: vec![
            check_exist(lattice, &census),
            check_support(lattice, &census),
            check_unique(lattice, part),
        ],
    }
}

/// The two hypotheses for rooted-tree products: supports equal ranks and
/// the unique-atom condition.
pub fn check_tree_hypotheses(lattice: &Lattice, part: &OrderedAtomPartition) -> HypothesisReport {
    let census = atomic_census(lattice, part);
    HypothesisReport {
        conditions: vec![check_support(lattice, &census), check_unique(lattice, part)],
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MobiusCheck {
    pub element: String,
    #[serde(with = "crate::poly::coeff_serde")]
    pub mobius: Int,
    pub transversals: usize,
    /// `μ(x) = (−1)^{ρ(x)} |T_x^A|`
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorizationReport {
    pub atomic_hypotheses: HypothesisReport,
    pub tree_hypotheses: HypothesisReport,
    pub chi: IntPolynomial,
    pub factored: Option<FactoredForm>,
    pub mobius_check: Vec<MobiusCheck>,
    /// `L ≅ (∏ factors)/∼`, absent when the product exceeds the budget or
    /// the hypotheses fail.
    pub iso_check: Option<bool>,
}

impl FactorizationReport {
    pub fn mobius_ok(&self) -> bool {
        self.mobius_check.iter().all(|m| m.holds)
    }
}

/// Whether the quotient of `product` by the standard classes is `L`, via
/// the map sending each class to its common join.
pub fn quotient_is_lattice(lattice: &Lattice, product: &TransversalProduct) -> bool {
    let classes = standard_classes(product);
    if classes.num_classes() != lattice.len() {
        return false;
    }
    let Ok(q) = quotient_poset(&product.poset, &classes) else {
        return false;
    };
    let map: Vec<usize> = classes.classes().iter().map(|c| product.joins[c[0]]).collect();
    verify_isomorphism(&q, lattice.poset(), &map)
}

pub fn factor_characteristic(lattice: &Lattice, part: &OrderedAtomPartition) -> Result<FactorizationReport> {
    factor_characteristic_with_budget(lattice, part, DEFAULT_PRODUCT_BUDGET)
}

/// When the tree hypotheses hold, the closed form is emitted and compared
/// with `χ(L)`; the Möbius identity is checked on every element either way.
pub fn factor_characteristic_with_budget(
    lattice: &Lattice,
    part: &OrderedAtomPartition,
    budget: usize,
) -> Result<FactorizationReport> {
    let poset = lattice.poset();
    let census = atomic_census(lattice, part);
    let unique = check_unique(lattice, part);
    let support = check_support(lattice, &census);
    let atomic_hypotheses = HypothesisReport {
        conditions: vec![check_exist(lattice, &census), support.clone(), unique.clone()],
    };
    let tree_hypotheses = HypothesisReport {
        conditions: vec![support, unique],
    };
    let chi = poset.characteristic_polynomial();
    let mu = poset.mobius_vector();
    let mobius_check = poset
        .elements()
        .map(|x| {
            let count = census.counts[x];
            let expected = Int::from(count) * if poset.rank(x).is_multiple_of(2) { 1 } else { -1 };
            MobiusCheck {
                element: poset.label(x).into(),
                mobius: mu.get(x).clone(),
                transversals: count,
                holds: *mu.get(x) == expected,
            }
        })
        .collect();

    let mut factored = None;
    let mut iso_check = None;
    if tree_hypotheses.holds() {
        let form = FactoredForm::new(poset.height() as i64 - part.len() as i64, part.sizes());
        let expanded: IntPolynomial = form.expand()?;
        if expanded != chi {
            return Err(Error::CrossCheckFailed(format!(
                "hypotheses hold but {form} expands to {expanded}, while χ = {chi}"
            )));
        }
        factored = Some(form);
        let mode = if atomic_hypotheses.holds() {
            ProductMode::Claws
        } else {
            ProductMode::Trees
        };
        iso_check = match transversal_product(lattice, part, mode, budget) {
            Ok(product) => Some(quotient_is_lattice(lattice, &product)),
            Err(Error::BudgetExceeded { .. }) => None,
            Err(e) => return Err(e),
        };
    }
    Ok(FactorizationReport {
        atomic_hypotheses,
        tree_hypotheses,
        chi,
        factored,
        mobius_check,
        iso_check,
    })
}

/// `χ̄(P,t) = Σ μ(x) t^{−ρ(x)}`.
pub fn reduced_characteristic(poset: &Poset) -> IntLaurent {
    poset.reduced_characteristic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    /// 0=1/2/3 1=12/3 2=13/2 3=1/23 4=123
    fn pi3() -> Lattice {
        Lattice::new(
            Poset::from_cover_relations(
                labels(&["1/2/3", "12/3", "13/2", "1/23", "123"]),
                &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
            )
            .unwrap(),
        )
        .unwrap()
    }

    fn pi3_part(l: &Lattice) -> OrderedAtomPartition {
        OrderedAtomPartition::new(l.poset(), vec![vec![1], vec![2, 3]]).unwrap()
    }

    /// 0=0̂ 1=a 2=b 3=c 4=d 5=1̂
    fn fig5() -> Lattice {
        Lattice::new(
            Poset::from_cover_relations(
                labels(&["0̂", "a", "b", "c", "d", "1̂"]),
                &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 5), (4, 5)],
            )
            .unwrap(),
        )
        .unwrap()
    }

    fn set(n: usize, xs: &[usize]) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(n);
        xs.iter().for_each(|&x| s.insert(x));
        s
    }

    #[test]
    fn partition_validation() {
        let l = pi3();
        assert!(OrderedAtomPartition::new(l.poset(), vec![vec![1], vec![2]]).is_err());
        assert!(OrderedAtomPartition::new(l.poset(), vec![vec![1, 4], vec![2, 3]]).is_err());
        assert!(OrderedAtomPartition::new(l.poset(), vec![vec![1, 2], vec![2, 3]]).is_err());
        let p = OrderedAtomPartition::new(l.poset(), vec![vec![], vec![3, 2, 1]]).unwrap();
        assert_eq!(p.sizes(), vec![0, 3]);
        let json = pi3_part(&l).to_json(l.poset());
        assert_eq!(json.resolve(l.poset()).unwrap(), pi3_part(&l));
    }

    #[test]
    fn claws() {
        let c = claw(&labels(&["a", "b", "c"]));
        assert_eq!(c.len(), 4);
        assert_eq!(c.characteristic_polynomial(), Polynomial::linear(Int::from(3)));
        assert_eq!(claw(&labels(&["a"])).cover_pairs(), Poset::chain(2).cover_pairs());
        assert_eq!(claw(&[]).len(), 1);
    }

    #[test]
    fn rooted_trees_of_pi3() {
        let l = pi3();
        let t1 = rooted_tree(l.poset(), &set(5, &[0, 1, 4])).unwrap();
        assert_eq!(t1.poset.labels(), &labels(&["0̂", "12/3", "123"]));
        assert_eq!(t1.poset.height(), 2);
        let t2 = rooted_tree(l.poset(), &set(5, &[0, 2, 3, 4])).unwrap();
        assert_eq!(t2.poset.len(), 5);
        assert_eq!(t2.poset.maximal_elements().len(), 2);
        assert!(t2.poset.maximal_elements().iter().all(|&m| t2.poset.label(m) == "123"));
        let t0 = rooted_tree(l.poset(), &set(5, &[0])).unwrap();
        assert_eq!(t0.poset.len(), 1);
        assert!(matches!(rooted_tree(l.poset(), &set(5, &[1])), Err(Error::ZeroNotInS)));
    }

    #[test]
    fn upper_ideal_trees() {
        let l = pi3();
        assert_eq!(upper_ideal_tree(l.poset(), &[1]).unwrap().poset.len(), 3);
        assert_eq!(upper_ideal_tree(l.poset(), &[2, 3]).unwrap().poset.len(), 5);
        assert_eq!(upper_ideal_tree(l.poset(), &[]).unwrap().poset.len(), 1);
        let b2 = Poset::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let t = upper_ideal_tree(&b2, &[1, 2]).unwrap();
        assert_eq!(t.poset.len(), 5);
        assert_eq!(t.atom_count(), 2);
        assert_eq!(reduced_characteristic(&t.poset), FactoredForm::new(-1, vec![2]).to_laurent());
    }

    #[test]
    fn claw_product_join_labels() {
        let l = pi3();
        let prod = transversal_product(&l, &pi3_part(&l), ProductMode::Claws, 100).unwrap();
        assert_eq!(prod.poset.len(), 6);
        let labels = prod.join_labels(&l);
        assert_eq!(labels.iter().filter(|s| *s == "123").count(), 2);
        let classes = standard_classes(&prod);
        assert_eq!(classes.num_classes(), 5);
        assert_eq!(classes.class(classes.class_of(prod.poset.zero())).len(), 1);
        assert!(quotient_is_lattice(&l, &prod));
    }

    #[test]
    fn tree_product_of_pi3() {
        let l = pi3();
        let prod = transversal_product(&l, &pi3_part(&l), ProductMode::Trees, 100).unwrap();
        assert_eq!(prod.poset.len(), 15);
        let classes = standard_classes(&prod);
        let top = classes.class_of(prod.joins.iter().position(|&j| j == 4).unwrap());
        assert_eq!(classes.class(top).len(), prod.joins.iter().filter(|&&j| j == 4).count());
        assert!(quotient_is_lattice(&l, &prod));
        assert_eq!(
            reduced_characteristic(&prod.poset),
            FactoredForm::new(-2, vec![1, 2]).to_laurent()
        );
        assert!(matches!(
            transversal_product(&l, &pi3_part(&l), ProductMode::Trees, 10),
            Err(Error::BudgetExceeded { size: 15, budget: 10 })
        ));
    }

    #[test]
    fn transversals_of_pi3() {
        let l = pi3();
        let part = pi3_part(&l);
        let top = atomic_transversals(&l, &part, 4);
        assert_eq!(
            top,
            vec![Transversal { entries: vec![1, 2] }, Transversal { entries: vec![1, 3] }]
        );
        assert_eq!(atomic_transversals(&l, &part, 0), vec![Transversal { entries: vec![0, 0] }]);
    }

    #[test]
    fn pi3_factorization() {
        let l = pi3();
        let report = factor_characteristic(&l, &pi3_part(&l)).unwrap();
        assert!(report.atomic_hypotheses.holds());
        assert_eq!(report.factored, Some(FactoredForm::new(0, vec![1, 2])));
        assert!(report.mobius_ok());
        assert_eq!(report.mobius_check[4].mobius, Int::from(2));
        assert_eq!(report.iso_check, Some(true));
    }

    #[test]
    fn chain_fails_existence_only() {
        let l = Lattice::new(Poset::chain(3)).unwrap();
        let part = OrderedAtomPartition::new(l.poset(), vec![vec![1]]).unwrap();
        let atomic = check_atomic_hypotheses(&l, &part);
        let exist = atomic.get(TRANSVERSALS_EXIST).unwrap();
        assert!(!exist.holds);
        assert_eq!(exist.witness.as_ref().unwrap().element, "2");
        assert!(check_tree_hypotheses(&l, &part).holds());
        let report = factor_characteristic(&l, &part).unwrap();
        assert_eq!(report.factored, Some(FactoredForm::new(1, vec![1])));
        assert_eq!(report.iso_check, Some(true));
    }

    #[test]
    fn fig5_support_failure() {
        let l = fig5();
        let part = OrderedAtomPartition::new(l.poset(), vec![vec![1], vec![2]]).unwrap();
        let trees = check_tree_hypotheses(&l, &part);
        let support = trees.get(SUPPORT_EQUALS_RANK).unwrap();
        assert!(!support.holds);
        let w = support.witness.as_ref().unwrap();
        assert_eq!(w.element, "1̂");
        assert_eq!(w.transversal.as_deref(), Some(&labels(&["a", "b"])[..]));
        let report = factor_characteristic(&l, &part).unwrap();
        assert!(report.factored.is_none());
        assert!(report.iso_check.is_none());
    }

    #[test]
    fn report_json_round_trips() {
        let l = fig5();
        let part = OrderedAtomPartition::new(l.poset(), vec![vec![1], vec![2]]).unwrap();
        let report = factor_characteristic(&l, &part).unwrap();
        let s = serde_json::to_string(&report).unwrap();
        let back: FactorizationReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, report);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }
}
