//! Quotients of posets by equivalence relations, and the conditions under
//! which a quotient keeps the characteristic polynomial.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::{Int, IntPolynomial};

/// A partition of a poset's elements into equivalence classes.
///
/// Class ids follow the minimum element of each class, so the partition of
/// a given relation is unique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementPartition {
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl ElementPartition {
    pub fn new(size: usize, classes: Vec<Vec<usize>>) -> Result<Self> {
        let mut class_of = vec![usize::MAX; size];
        let mut classes: Vec<Vec<usize>> = classes
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        if classes.iter().any(|c| c.is_empty()) {
            return Err(Error::InvalidPartition("empty class".into()));
        }
        classes.sort_by_key(|c| c[0]);
        for (id, class) in classes.iter().enumerate() {
            for &x in class {
                if x >= size {
                    return Err(Error::IndexOutOfRange { index: x, size });
                }
                if class_of[x] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("element {x} in two classes")));
                }
                class_of[x] = id;
            }
        }
        if let Some(x) = class_of.iter().position(|&c| c == usize::MAX) {
            return Err(Error::InvalidPartition(format!("element {x} in no class")));
        }
        Ok(Self { class_of, classes })
    }

    /// All singletons.
    pub fn discrete(size: usize) -> Self {
        Self {
            class_of: (0..size).collect(),
            classes: (0..size).map(|x| vec![x]).collect(),
        }
    }

    /// Fibers of `key`: `x ~ y` iff `key[x] == key[y]`.
    pub fn from_keys<K: Ord>(key: &[K]) -> Self {
        let mut fibers: BTreeMap<&K, Vec<usize>> = BTreeMap::new();
        for (x, k) in key.iter().enumerate() {
            fibers.entry(k).or_default().push(x);
        }
        Self::new(key.len(), fibers.into_values().collect()).expect("fibers partition the domain")
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class(&self, id: usize) -> &[usize] {
        &self.classes[id]
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn size(&self) -> usize {
        self.class_of.len()
    }
}

/// `{"classes": [[x, ...], ...]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ElementPartitionJson {
    pub classes: Vec<Vec<usize>>,
}

impl ElementPartitionJson {
    pub fn into_partition(self, size: usize) -> Result<ElementPartition> {
        ElementPartition::new(size, self.classes)
    }
}

impl From<&ElementPartition> for ElementPartitionJson {
    fn from(p: &ElementPartition) -> Self {
        Self {
            classes: p.classes.clone(),
        }
    }
}

fn check_size(poset: &Poset, part: &ElementPartition) -> Result<()> {
    if poset.len() == part.size() {
        Ok(())
    } else {
        Err(Error::InvalidPartition(format!(
            "partition of {} elements for a poset of {}",
            part.size(),
            poset.len()
        )))
    }
}

/// For every element, the set of classes meeting its up-set.
fn class_images(poset: &Poset, part: &ElementPartition) -> Vec<FixedBitSet> {
    let k = part.num_classes();
    poset
        .elements()
        .map(|x| {
            let mut img = FixedBitSet::with_capacity(k);
            for y in poset.up_set(x).ones() {
                img.insert(part.class_of(y));
            }
            img
        })
        .collect()
}

/// `X ≤ Y` iff some `x ∈ X` lies below some `y ∈ Y`.
fn class_relation(part: &ElementPartition, images: &[FixedBitSet]) -> Vec<FixedBitSet> {
    part.classes()
        .iter()
        .map(|class| {
            let mut row = FixedBitSet::with_capacity(part.num_classes());
            for &x in class {
                row.union_with(&images[x]);
            }
            row
        })
        .collect()
}

/// Why a quotient fails to be homogeneous, or `None`.
pub fn homogeneity_failure(poset: &Poset, part: &ElementPartition) -> Option<String> {
    if part.size() != poset.len() {
        return Some("partition size does not match the poset".into());
    }
    let zero_class = part.class(part.class_of(poset.zero()));
    if zero_class.len() != 1 {
        let others: Vec<&str> = zero_class
            .iter()
            .filter(|&&x| x != poset.zero())
            .map(|&x| poset.label(x))
            .collect();
        return Some(format!(
            "{} shares its class with {}",
            poset.label(poset.zero()),
            others.join(", ")
        ));
    }
    let images = class_images(poset, part);
    let relation = class_relation(part, &images);
    for (id, class) in part.classes().iter().enumerate() {
        for &x in class {
            if let Some(target) = relation[id].difference(&images[x]).next() {
                return Some(format!(
                    "class {id} <= class {target}, but {} is below nothing in class {target}",
                    poset.label(x)
                ));
            }
        }
    }
    None
}

/// `0̂` is alone in its class, and whenever `X ≤ Y` every `x ∈ X` lies below
/// some `y ∈ Y`.
pub fn is_homogeneous(poset: &Poset, part: &ElementPartition) -> bool {
    homogeneity_failure(poset, part).is_none()
}

/// Default class label: the member's label, or members joined by `~`.
pub fn default_class_labels(poset: &Poset, part: &ElementPartition) -> Vec<String> {
    part.classes()
        .iter()
        .map(|c| c.iter().map(|&x| poset.label(x)).collect::<Vec<_>>().join("~"))
        .collect()
}

/// `P/~` for a homogeneous partition, labelled by [`default_class_labels`].
pub fn quotient_poset(poset: &Poset, part: &ElementPartition) -> Result<Poset> {
    quotient_poset_labeled(poset, part, default_class_labels(poset, part))
}

/// `P/~` with explicit class labels. The class relation is handed to
/// [`Poset::from_order_relation`], which audits antisymmetry and
/// transitivity independently of the homogeneity check.
pub fn quotient_poset_labeled(
    poset: &Poset,
    part: &ElementPartition,
    labels: Vec<String>,
) -> Result<Poset> {
    check_size(poset, part)?;
    if let Some(reason) = homogeneity_failure(poset, part) {
        return Err(Error::NotHomogeneous(reason));
    }
    let images = class_images(poset, part);
    let relation = class_relation(part, &images);
    Poset::from_order_relation(labels, &relation)
}

/// `Σ_{y ∈ L(X)} μ(y) = 0` for every class `X` not containing `0̂`, keyed by
/// class id.
pub fn summation_condition(poset: &Poset, part: &ElementPartition) -> BTreeMap<usize, bool> {
    let mu = poset.mobius_vector();
    let zero_class = part.class_of(poset.zero());
    part.classes()
        .iter()
        .enumerate()
        .filter(|&(id, _)| id != zero_class)
        .map(|(id, class)| {
            let sum = poset
                .lower_ideal(class)
                .ones()
                .fold(Int::zero(), |acc, y| acc + mu.get(y));
            (id, sum.is_zero())
        })
        .collect()
}

/// `x ~ y` implies `ρ(x) = ρ(y)`.
pub fn rank_compatible(poset: &Poset, part: &ElementPartition) -> bool {
    part.classes()
        .iter()
        .all(|c| c.iter().all(|&x| poset.rank(x) == poset.rank(c[0])))
}

/// Every cover `X ⋖ Y` of the quotient is witnessed by a cover `x ⋖ y` of
/// the original poset with `x ∈ X`, `y ∈ Y`.
pub fn quotient_covers_lift(poset: &Poset, part: &ElementPartition, quotient: &Poset) -> bool {
    quotient.cover_pairs().into_iter().all(|(cx, cy)| {
        part.class(cx).iter().any(|&x| {
            poset
                .upper_covers(x)
                .iter()
                .any(|&y| part.class_of(y) == cy)
        })
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuotientReport {
    pub homogeneous: bool,
    pub homogeneity_failure: Option<String>,
    pub summation_ok: BTreeMap<usize, bool>,
    pub rank_compatible: bool,
    /// Homogeneous, summation condition everywhere and rank compatible.
    pub hypotheses_hold: bool,
    pub chi_original: IntPolynomial,
    pub chi_quotient: Option<IntPolynomial>,
    /// Hypotheses hold and the two polynomials were computed equal.
    pub chi_preserved: bool,
    pub quotient: Option<Poset>,
}

pub fn verify_chi_preservation(poset: &Poset, part: &ElementPartition) -> Result<QuotientReport> {
    check_size(poset, part)?;
    let failure = homogeneity_failure(poset, part);
    let homogeneous = failure.is_none();
    let summation_ok = summation_condition(poset, part);
    let rank_ok = rank_compatible(poset, part);
    let hypotheses_hold = homogeneous && rank_ok && summation_ok.values().all(|&b| b);
    let chi_original = poset.characteristic_polynomial();
    let quotient = if homogeneous {
        quotient_poset(poset, part).ok()
    } else {
        None
    };
    let chi_quotient = quotient.as_ref().map(|q| q.characteristic_polynomial());
    let chi_preserved = hypotheses_hold && chi_quotient.as_ref() == Some(&chi_original);
    Ok(QuotientReport {
        homogeneous,
        homogeneity_failure: failure,
        summation_ok,
        rank_compatible: rank_ok,
        hypotheses_hold,
        chi_original,
        chi_quotient,
        chi_preserved,
        quotient,
    })
}

/// `μ(X)` in the quotient from the class sums:
/// `Σ_{x∈X} μ(x)` for non-maximal `X`, minus `Σ_{y∈L(X)} μ(y)` when `X` is
/// maximal. Requires a homogeneous quotient where the summation condition
/// holds on every nonzero, non-maximal class; the closed form is compared
/// with Möbius values computed directly on the quotient.
pub fn class_mobius(poset: &Poset, part: &ElementPartition, class: usize) -> Result<Int> {
    check_size(poset, part)?;
    if class >= part.num_classes() {
        return Err(Error::IndexOutOfRange {
            index: class,
            size: part.num_classes(),
        });
    }
    let quotient = quotient_poset(poset, part)?;
    let zero_class = part.class_of(poset.zero());
    let maximal: Vec<bool> = quotient
        .elements()
        .map(|c| quotient.upper_covers(c).is_empty())
        .collect();
    let summation = summation_condition(poset, part);
    if let Some((&bad, _)) = summation.iter().find(|&(&id, &ok)| !ok && !maximal[id]) {
        return Err(Error::HypothesisViolated(format!(
            "summation condition fails on non-maximal class {bad}"
        )));
    }

    let mu = poset.mobius_vector();
    let closed = if class == zero_class {
        Int::one()
    } else {
        let members: Int = part.class(class).iter().map(|&x| mu.get(x).clone()).sum();
        if maximal[class] {
            let ideal: Int = poset
                .lower_ideal(part.class(class))
                .ones()
                .map(|y| mu.get(y).clone())
                .sum();
            members - ideal
        } else {
            members
        }
    };
    let direct = quotient.mobius_vector().get(class).clone();
    if closed != direct {
        return Err(Error::CrossCheckFailed(format!(
            "class {class}: closed form {closed}, direct {direct}"
        )));
    }
    Ok(closed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::{is_isomorphic, verify_isomorphism};
    use crate::poly::Polynomial;

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    /// CL_1 × CL_2 of the opening example, indices
    /// 0=(0̂,0̂) 1=(0̂,b) 2=(0̂,c) 3=(a,0̂) 4=(a,b) 5=(a,c).
    fn cl1_cl2() -> Poset {
        let cl1 = Poset::from_cover_relations(labels(&["0̂", "a"]), &[(0, 1)]).unwrap();
        let cl2 = Poset::from_cover_relations(labels(&["0̂", "b", "c"]), &[(0, 1), (0, 2)]).unwrap();
        cl1.direct_product(&cl2)
    }

    fn fig2_merge() -> ElementPartition {
        ElementPartition::new(6, vec![vec![0], vec![1], vec![2], vec![3], vec![4, 5]]).unwrap()
    }

    fn pi3() -> Poset {
        Poset::from_cover_relations(
            labels(&["1/2/3", "12/3", "13/2", "1/23", "123"]),
            &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
        )
        .unwrap()
    }

    /// Chains 0̂ < x < y and 0̂ < w < z: 0=0̂ 1=x 2=y 3=w 4=z.
    fn two_chains() -> Poset {
        Poset::from_cover_relations(labels(&["0̂", "x", "y", "w", "z"]), &[(0, 1), (1, 2), (0, 3), (3, 4)]).unwrap()
    }

    #[test]
    fn partition_validation() {
        assert!(ElementPartition::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(ElementPartition::new(3, vec![vec![0, 1]]).is_err());
        assert!(ElementPartition::new(3, vec![vec![0], vec![], vec![1, 2]]).is_err());
        let p = ElementPartition::new(3, vec![vec![2, 1], vec![0]]).unwrap();
        assert_eq!(p.classes(), &[vec![0], vec![1, 2]]);
        assert_eq!(p.class_of(2), 1);
    }

    #[test]
    fn claw_collapse_is_pi3() {
        let p = cl1_cl2();
        assert_eq!(p.label(4), "(a,b)");
        let part = fig2_merge();
        assert!(is_homogeneous(&p, &part));
        let q = quotient_poset(&p, &part).unwrap();
        let map = is_isomorphic(&q, &pi3()).unwrap();
        assert!(verify_isomorphism(&q, &pi3(), &map));
        assert!(quotient_covers_lift(&p, &part, &q));
    }

    #[test]
    fn identity_quotient() {
        let p = pi3();
        let part = ElementPartition::discrete(p.len());
        assert!(is_homogeneous(&p, &part));
        let q = quotient_poset(&p, &part).unwrap();
        assert_eq!(q, p);
        let report = verify_chi_preservation(&p, &part).unwrap();
        assert!(report.chi_preserved);
    }

    #[test]
    fn counterexamples_are_not_homogeneous() {
        let p = two_chains();
        // A = {w, x}, B = {0̂, y, z}
        let anti = ElementPartition::new(5, vec![vec![1, 3], vec![0, 2, 4]]).unwrap();
        assert!(!is_homogeneous(&p, &anti));
        assert!(matches!(quotient_poset(&p, &anti), Err(Error::NotHomogeneous(_))));
        // {0̂}, A = {x}, B = {w, y}, C = {z}
        let trans = ElementPartition::new(5, vec![vec![0], vec![1], vec![2, 3], vec![4]]).unwrap();
        let why = homogeneity_failure(&p, &trans).unwrap();
        assert!(why.contains("y is below nothing"), "{why}");
        assert!(matches!(quotient_poset(&p, &trans), Err(Error::NotHomogeneous(_))));
    }

    #[test]
    fn summation_condition_examples() {
        let p = cl1_cl2();
        assert!(summation_condition(&p, &fig2_merge()).values().all(|&b| b));
        let fig5 = Poset::from_covers(6, &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 5), (4, 5)]).unwrap();
        let single = summation_condition(&fig5, &ElementPartition::discrete(6));
        // {a}: 1 - 1 = 0; {c}: 1 - 1 + 0 = 0
        assert!(single[&1]);
        assert!(single[&3]);
    }

    #[test]
    fn rank_compatibility() {
        let p = pi3();
        assert!(rank_compatible(&p, &ElementPartition::discrete(5)));
        assert!(rank_compatible(&cl1_cl2(), &fig2_merge()));
        let bad = ElementPartition::new(5, vec![vec![0], vec![1, 4], vec![2], vec![3]]).unwrap();
        assert!(!rank_compatible(&p, &bad));
        let report = verify_chi_preservation(&p, &bad).unwrap();
        assert!(!report.chi_preserved);
        assert!(!report.rank_compatible);
    }

    #[test]
    fn chi_preserved_for_claw_collapse() {
        let report = verify_chi_preservation(&cl1_cl2(), &fig2_merge()).unwrap();
        assert!(report.chi_preserved);
        assert_eq!(report.chi_quotient.unwrap(), Polynomial::from_roots([1, 2].map(Int::from)));
    }

    #[test]
    fn class_mobius_closed_forms() {
        let p = cl1_cl2();
        let part = fig2_merge();
        assert_eq!(class_mobius(&p, &part, 4).unwrap(), Int::from(2));
        assert_eq!(class_mobius(&p, &part, 0).unwrap(), Int::from(1));

        // CL_5 with three atoms merged into one maximal class whose ideal
        // sums to 1 - 3 = -2: μ(X) = -3 - (-2) = -1.
        let claw5 = Poset::from_covers(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap();
        let merged = ElementPartition::new(6, vec![vec![0], vec![1, 2, 3], vec![4], vec![5]]).unwrap();
        assert!(!summation_condition(&claw5, &merged)[&1]);
        assert_eq!(class_mobius(&claw5, &merged, 1).unwrap(), Int::from(-1));

        // Merging both atoms of B_2 is homogeneous, but the merged class is
        // not maximal and its ideal sums to 1 - 2.
        let b2 = Poset::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let atoms = ElementPartition::new(4, vec![vec![0], vec![1, 2], vec![3]]).unwrap();
        assert!(is_homogeneous(&b2, &atoms));
        assert!(matches!(class_mobius(&b2, &atoms, 1), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn report_json_round_trips() {
        let report = verify_chi_preservation(&cl1_cl2(), &fig2_merge()).unwrap();
        let s = serde_json::to_string_pretty(&report).unwrap();
        let back: QuotientReport = serde_json::from_str(&s).unwrap();
        assert_eq!(serde_json::to_string_pretty(&back).unwrap(), s);
    }
}
