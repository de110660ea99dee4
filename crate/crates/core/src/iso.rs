//! Order isomorphism between finite posets.
//!
//! Colour refinement over the Hasse diagram (rank, cover degrees, ideal
//! sizes, then neighbour colour multisets) partitions both posets jointly.
//! A backtracking search then assigns elements in an order where each new
//! element is adjacent in the Hasse diagram to one already placed, so the
//! candidates for it are drawn from the image's neighbours.

use std::collections::BTreeMap;

use crate::poset::Poset;

type Colour = u32;

fn refine(p: &Poset, q: &Poset) -> (Vec<Colour>, Vec<Colour>) {
    let posets = [p, q];
    let mut keys: Vec<Vec<Vec<u64>>> = posets
        .iter()
        .map(|s| {
            s.elements()
                .map(|x| {
                    vec![
                        s.rank(x) as u64,
                        s.upper_covers(x).len() as u64,
                        s.lower_covers(x).len() as u64,
                        s.up_set(x).count_ones(..) as u64,
                        s.down_set(x).count_ones(..) as u64,
                    ]
                })
                .collect()
        })
        .collect();
    let mut colours = intern(&keys);
    let mut classes = count_classes(&colours);
    loop {
        keys = posets
            .iter()
            .zip(&colours)
            .map(|(s, col)| {
                s.elements()
                    .map(|x| {
                        let mut ups: Vec<u64> = s.upper_covers(x).iter().map(|&y| col[y] as u64).collect();
                        let mut downs: Vec<u64> = s.lower_covers(x).iter().map(|&y| col[y] as u64).collect();
                        ups.sort_unstable();
                        downs.sort_unstable();
                        let mut key = vec![col[x] as u64, ups.len() as u64];
                        key.extend(ups);
                        key.extend(downs);
                        key
                    })
                    .collect()
            })
            .collect();
        let next = intern(&keys);
        let next_classes = count_classes(&next);
        colours = next;
        if next_classes == classes {
            break;
        }
        classes = next_classes;
    }
    let mut it = colours.into_iter();
    (it.next().unwrap(), it.next().unwrap())
}

fn intern(keys: &[Vec<Vec<u64>>]) -> Vec<Vec<Colour>> {
    let mut ids: BTreeMap<&Vec<u64>, Colour> = BTreeMap::new();
    for side in keys {
        for k in side {
            ids.entry(k).or_insert(0);
        }
    }
    for (i, v) in ids.values_mut().enumerate() {
        *v = i as Colour;
    }
    keys.iter()
        .map(|side| side.iter().map(|k| ids[k]).collect())
        .collect()
}

fn count_classes(colours: &[Vec<Colour>]) -> usize {
    let mut all: Vec<Colour> = colours.iter().flatten().copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

fn histogram(colours: &[Colour]) -> BTreeMap<Colour, usize> {
    let mut h = BTreeMap::new();
    for &c in colours {
        *h.entry(c).or_insert(0) += 1;
    }
    h
}

/// Placement order: start at `0̂`, then repeatedly take the unplaced element
/// with the most placed Hasse neighbours (rarest colour first on ties).
fn placement_order(p: &Poset, colours: &[Colour]) -> (Vec<usize>, Vec<Option<(usize, bool)>>) {
    let n = p.len();
    let freq = histogram(colours);
    let mut placed = vec![false; n];
    let mut weight = vec![0usize; n];
    let mut anchor: Vec<Option<(usize, bool)>> = vec![None; n];
    let mut order = Vec::with_capacity(n);
    let mut next = Some(p.zero());
    while let Some(x) = next {
        placed[x] = true;
        order.push(x);
        for &y in p.upper_covers(x).iter().filter(|&&y| !placed[y]) {
            weight[y] += 1;
            anchor[y].get_or_insert((x, true));
        }
        for &y in p.lower_covers(x).iter().filter(|&&y| !placed[y]) {
            weight[y] += 1;
            anchor[y].get_or_insert((x, false));
        }
        next = (0..n)
            .filter(|&y| !placed[y])
            .max_by_key(|&y| (weight[y], std::cmp::Reverse(freq[&colours[y]]), std::cmp::Reverse(y)));
    }
    (order, anchor)
}

/// An order isomorphism `p → q` (as `map[x] = image`) when one exists.
pub fn is_isomorphic(p: &Poset, q: &Poset) -> Option<Vec<usize>> {
    let n = p.len();
    if p.len() == q.len() && p.cover_pairs() == q.cover_pairs() {
        return Some((0..n).collect());
    }
    if n != q.len() || p.cover_pairs().len() != q.cover_pairs().len() {
        return None;
    }
    let (cp, cq) = refine(p, q);
    if histogram(&cp) != histogram(&cq) {
        return None;
    }
    let (order, anchor) = placement_order(p, &cp);

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    // candidates[k]: remaining images to try for order[k].
    let mut candidates: Vec<Vec<usize>> = Vec::with_capacity(n);

    let candidates_for = |x: usize, map: &[usize], used: &[bool]| -> Vec<usize> {
        let pool: Vec<usize> = match anchor[x] {
            Some((a, true)) => q.upper_covers(map[a]).to_vec(),
            Some((a, false)) => q.lower_covers(map[a]).to_vec(),
            None => q.elements().collect(),
        };
        let mut c: Vec<usize> = pool
            .into_iter()
            .filter(|&y| !used[y] && cq[y] == cp[x])
            .collect();
        c.reverse();
        c
    };

    let consistent = |x: usize, y: usize, placed: &[usize], map: &[usize]| {
        placed.iter().all(|&w| {
            let v = map[w];
            p.leq(w, x) == q.leq(v, y) && p.leq(x, w) == q.leq(y, v)
        })
    };

    candidates.push(candidates_for(order[0], &map, &used));
    let mut depth = 0usize;
    loop {
        let x = order[depth];
        let mut advanced = false;
        while let Some(y) = candidates[depth].pop() {
            if consistent(x, y, &order[..depth], &map) {
                map[x] = y;
                used[y] = true;
                advanced = true;
                break;
            }
        }
        if advanced {
            depth += 1;
            if depth == n {
                return Some(map);
            }
            let c = candidates_for(order[depth], &map, &used);
            if candidates.len() > depth {
                candidates[depth] = c;
            } else {
                candidates.push(c);
            }
        } else {
            if depth == 0 {
                return None;
            }
            depth -= 1;
            let prev = order[depth];
            used[map[prev]] = false;
            map[prev] = usize::MAX;
        }
    }
}

/// `map` is a bijection `p → q` preserving and reflecting `≤`, checked over
/// every pair.
pub fn verify_isomorphism(p: &Poset, q: &Poset, map: &[usize]) -> bool {
    let n = p.len();
    if q.len() != n || map.len() != n {
        return false;
    }
    let mut hit = vec![false; n];
    for &y in map {
        if y >= n || hit[y] {
            return false;
        }
        hit[y] = true;
    }
    p.elements()
        .all(|x| p.elements().all(|w| p.leq(x, w) == q.leq(map[x], map[w])))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_found() {
        let p = Poset::from_covers(6, &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 5), (4, 5)]).unwrap();
        let map = is_isomorphic(&p, &p).unwrap();
        assert_eq!(map, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn claw_is_not_a_chain() {
        let claw = Poset::from_covers(3, &[(0, 1), (0, 2)]).unwrap();
        assert!(is_isomorphic(&claw, &Poset::chain(3)).is_none());
    }

    #[test]
    fn relabelled_copy_is_isomorphic() {
        let p = Poset::from_covers(6, &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 5), (4, 5)]).unwrap();
        let perm = [3, 5, 0, 1, 4, 2];
        let q = p.permuted(&perm).unwrap();
        let map = is_isomorphic(&p, &q).unwrap();
        assert!(verify_isomorphism(&p, &q, &map));
    }

    #[test]
    fn same_counts_different_order() {
        // Six covers each, ranks (1, 3, 2); in `b` atom 3 is maximal.
        let a = Poset::from_covers(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 5)]).unwrap();
        let b = Poset::from_covers(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (2, 5)]).unwrap();
        assert!(is_isomorphic(&a, &b).is_none());
        assert!(!verify_isomorphism(&a, &b, &(0..6).collect::<Vec<_>>()));
    }
}
