//! Simple graphs with a vertex ordering: bond lattices, chromatic
//! polynomials, increasing spanning forests, and perfect elimination
//! orderings.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use petgraph::unionfind::UnionFind;
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{set_partition_poset, SetPartition};
use crate::lattice::Lattice;
use crate::multichain::{induced_partition, theorem_equivalence_report, EquivalenceReport, Multichain};
use crate::poly::{elementary_symmetric, FactoredForm};
use crate::poset::Poset;
use crate::{Int, IntPolynomial};

/// Vertex masks are `u64`.
pub const MAX_VERTICES: usize = 64;

/// A simple undirected graph on vertices `0..n`, edges stored as `(i, j)`
/// with `i < j`, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<u64>,
}

impl Graph {
    /// From 0-based edges.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::InvalidGraph(format!("{n} vertices, at most {MAX_VERTICES} supported")));
        }
        let mut adj = vec![0u64; n];
        let mut list = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!("edge ({}, {}) outside 1..{n}", a + 1, b + 1)));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at {}", a + 1)));
            }
            if adj[a] >> b & 1 == 1 {
                return Err(Error::InvalidGraph(format!("repeated edge ({}, {})", a.min(b) + 1, a.max(b) + 1)));
            }
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        Ok(Self { n, edges: list, adj })
    }

    /// From 1-based edges.
    pub fn from_one_based(n: usize, edges: &[[usize; 2]]) -> Result<Self> {
        let zero_based = edges
            .iter()
            .map(|&[a, b]| {
                if a == 0 || b == 0 {
                    Err(Error::InvalidGraph("vertices are numbered from 1".into()))
                } else {
                    Ok((a - 1, b - 1))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, &zero_based)
    }

    pub fn edgeless(n: usize) -> Self {
        Self::new(n, &[]).expect("edgeless graph")
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n).tuple_combinations().collect();
        Self::new(n, &edges).expect("complete graph")
    }

    /// `1 – 2 – … – n`.
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, &edges).expect("path graph")
    }

    /// The graph whose edge set is bit `k` of `mask` over the pairs of
    /// `0..n` in lexicographic order.
    pub fn from_edge_mask(n: usize, mask: u64) -> Self {
        let edges: Vec<_> = (0..n)
            .tuple_combinations()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, e)| e)
            .collect();
        Self::new(n, &edges).expect("mask graph")
    }

    /// All `2^{C(n,2)}` labelled graphs on `n` vertices.
    pub fn all(n: usize) -> impl Iterator<Item = Graph> {
        let pairs = n * n.saturating_sub(1) / 2;
        assert!(pairs < 64, "too many graphs to enumerate");
        (0..1u64 << pairs).map(move |m| Graph::from_edge_mask(n, m))
    }

    /// Erdős–Rényi sample.
    pub fn random<R: Rng>(rng: &mut R, n: usize, p: f64) -> Self {
        let edges: Vec<_> = (0..n).tuple_combinations().filter(|_| rng.random_bool(p)).collect();
        Self::new(n, &edges).expect("random graph")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a] >> b & 1 == 1
    }

    pub fn neighbours(&self, v: usize) -> u64 {
        self.adj[v]
    }

    /// Connected-component index of every vertex, numbered by minimum vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut uf = UnionFind::<usize>::new(self.n);
        for &(a, b) in &self.edges {
            uf.union(a, b);
        }
        let mut ids = HashMap::new();
        (0..self.n)
            .map(|v| {
                let next = ids.len();
                *ids.entry(uf.find(v)).or_insert(next)
            })
            .collect()
    }

    pub fn num_components(&self) -> usize {
        self.components().iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.num_components() <= 1
    }

    /// The same graph with vertex `order.vertex(k)` renamed to `k`.
    pub fn relabeled(&self, order: &VertexOrder) -> Result<Graph> {
        order.check(self.n)?;
        let pos = order.positions();
        let edges: Vec<_> = self.edges.iter().map(|&(a, b)| (pos[a], pos[b])).collect();
        Graph::new(self.n, &edges)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            edges: self.edges.iter().map(|&(a, b)| [a + 1, b + 1]).collect(),
        }
    }
}

/// `{"n": 3, "edges": [[1, 2], [2, 3]]}` with 1-based vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(g: GraphJson) -> Result<Graph> {
        Graph::from_one_based(g.n, &g.edges)
    }
}

/// A total order `v_1 < … < v_n`: position `k` holds vertex `vertices[k]`
/// (0-based). Written 1-based as `"1,3,2"`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexOrder {
    vertices: Vec<usize>,
}

impl VertexOrder {
    pub fn new(vertices: Vec<usize>) -> Result<Self> {
        let order = Self { vertices };
        order.check(order.vertices.len())?;
        Ok(order)
    }

    pub fn identity(n: usize) -> Self {
        Self { vertices: (0..n).collect() }
    }

    /// Every ordering of `n` vertices.
    pub fn all(n: usize) -> impl Iterator<Item = VertexOrder> {
        (0..n).permutations(n).map(|vertices| VertexOrder { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// `positions()[v]` is the position of vertex `v`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.vertices.len()];
        for (k, &v) in self.vertices.iter().enumerate() {
            pos[v] = k;
        }
        pos
    }

    fn check(&self, n: usize) -> Result<()> {
        if self.vertices.len() != n {
            return Err(Error::InvalidOrdering(format!(
                "{} entries for {n} vertices",
                self.vertices.len()
            )));
        }
        let mut seen = vec![false; n];
        for &v in &self.vertices {
            if v >= n || seen[v] {
                return Err(Error::InvalidOrdering(format!("not a permutation of 1..{n}")));
            }
            seen[v] = true;
        }
        Ok(())
    }
}

impl fmt::Display for VertexOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.vertices.iter().map(|v| v + 1).join(","))
    }
}

impl Serialize for VertexOrder {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let one_based: Vec<usize> = self.vertices.iter().map(|v| v + 1).collect();
        one_based.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for VertexOrder {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let one_based = Vec::<usize>::deserialize(deserializer)?;
        if one_based.contains(&0) {
            return Err(serde::de::Error::custom("vertices are numbered from 1"));
        }
        VertexOrder::new(one_based.into_iter().map(|v| v - 1).collect()).map_err(serde::de::Error::custom)
    }
}

/// Accepts `1,3,2` or `[1,3,2]`.
impl FromStr for VertexOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')).unwrap_or(s);
        let vertices = s
            .split(',')
            .map(|t| match t.trim().parse::<usize>() {
                Ok(v) if v >= 1 => Ok(v - 1),
                _ => Err(Error::InvalidOrdering(format!("bad vertex {t:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        VertexOrder::new(vertices)
    }
}

/// `E_j`: edges whose larger endpoint is `v_j`, labelled `(i, j)` by
/// 1-based positions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgePartition {
    pub blocks: Vec<Vec<[usize; 2]>>,
}

impl EdgePartition {
    pub fn sizes(&self) -> Vec<u64> {
        self.blocks.iter().map(|b| b.len() as u64).collect()
    }
}

pub fn edge_partition(graph: &Graph, order: &VertexOrder) -> Result<EdgePartition> {
    let g = graph.relabeled(order)?;
    let mut blocks = vec![Vec::new(); g.n];
    for &(i, j) in g.edges() {
        blocks[j].push([i + 1, j + 1]);
    }
    Ok(EdgePartition { blocks })
}

/// Vertices increase along every path from the component's minimum, in a
/// graph already labelled by position.
fn forest_is_increasing(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    if w < v {
                        return false;
                    }
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    true
}

/// Edge subsets (as masks over `graph.relabeled(order).edges()`) forming
/// increasing spanning forests.
pub fn increasing_forests(graph: &Graph, order: &VertexOrder) -> Result<Vec<u64>> {
    let g = graph.relabeled(order)?;
    let m = g.edges.len();
    if m >= 40 {
        return Err(Error::BudgetExceeded { size: m, budget: 39 });
    }
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(m);
    'subsets: for mask in 0..1u64 << m {
        chosen.clear();
        let mut uf = UnionFind::<usize>::new(g.n);
        for (k, &(a, b)) in g.edges.iter().enumerate() {
            if mask >> k & 1 == 1 {
                if !uf.union(a, b) {
                    continue 'subsets;
                }
                chosen.push((a, b));
            }
        }
        if forest_is_increasing(g.n, &chosen) {
            out.push(mask);
        }
    }
    Ok(out)
}

/// `f_k`: increasing spanning forests with `k` edges, `k = 0..n−1`.
pub fn count_increasing_forests(graph: &Graph, order: &VertexOrder) -> Result<Vec<u64>> {
    let mut f = vec![0u64; graph.n.max(1)];
    for mask in increasing_forests(graph, order)? {
        f[mask.count_ones() as usize] += 1;
    }
    Ok(f)
}

/// `IF(G,t) = Σ_k (−1)^k f_k t^{n−k}`.
pub fn if_polynomial(graph: &Graph, order: &VertexOrder) -> Result<IntPolynomial> {
    let f = count_increasing_forests(graph, order)?;
    let n = graph.n;
    let mut coeffs = vec![Int::from(0); n + 1];
    for (k, &fk) in f.iter().enumerate().take(n + 1) {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        coeffs[n - k] = Int::from(fk) * sign;
    }
    Ok(IntPolynomial::new(coeffs))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IfReport {
    pub forest_counts: Vec<u64>,
    pub elementary: Vec<u64>,
    pub if_polynomial: IntPolynomial,
    pub product: FactoredForm,
    pub counts_match: bool,
    pub factorization_holds: bool,
}

/// Brute-force forest counts against `e_k(|E_1|, …, |E_n|)`, and
/// `IF(G,t)` against `∏(t − |E_i|)`.
pub fn verify_if_factorization(graph: &Graph, order: &VertexOrder) -> Result<IfReport> {
    let f = count_increasing_forests(graph, order)?;
    let sizes = edge_partition(graph, order)?.sizes();
    let e: Vec<u64> = elementary_symmetric::<Int>(&sizes)
        .iter()
        .map(|c| u64::try_from(c).expect("counts are small"))
        .collect();
    let padded = |v: &[u64]| {
        let mut v = v.to_vec();
        v.resize(graph.n + 1, 0);
        v
    };
    let counts_match = padded(&f) == padded(&e);
    let ifp = if_polynomial(graph, order)?;
    let product = FactoredForm::new(0, sizes);
    let factorization_holds = product.expand::<Int>()? == ifp;
    Ok(IfReport {
        forest_counts: f,
        elementary: e,
        if_polynomial: ifp,
        product,
        counts_match,
        factorization_holds,
    })
}

/// Earlier neighbours of every vertex form a clique.
pub fn is_perfect_elimination(graph: &Graph, order: &VertexOrder) -> Result<bool> {
    let g = graph.relabeled(order)?;
    Ok((0..g.n).all(|v| {
        let earlier = g.adj[v] & ((1u64 << v) - 1);
        let mut rest = earlier;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if earlier & !(1u64 << u) & !g.adj[u] != 0 {
                return false;
            }
        }
        true
    }))
}

fn falling_factorial(k: usize) -> IntPolynomial {
    IntPolynomial::from_roots((0..k).map(Int::from))
}

/// Drops vertex `v` from every mask, shifting higher bits down.
fn remove_vertex(adj: &[u64], v: usize) -> Vec<u64> {
    let low = (1u64 << v) - 1;
    adj.iter()
        .enumerate()
        .filter(|&(u, _)| u != v)
        .map(|(_, &m)| (m & low) | ((m >> 1) & !low))
        .collect()
}

fn chromatic_rec(adj: Vec<u64>, memo: &mut HashMap<Vec<u64>, IntPolynomial>) -> IntPolynomial {
    let isolated = adj.iter().filter(|&&m| m == 0).count();
    if isolated > 0 {
        let core: Vec<u64> = {
            let mut core = adj.clone();
            for v in (0..adj.len()).rev().filter(|&v| adj[v] == 0) {
                core = remove_vertex(&core, v);
            }
            core
        };
        return chromatic_rec(core, memo).shift(isolated);
    }
    let k = adj.len();
    if k == 0 {
        return IntPolynomial::one();
    }
    if adj.iter().enumerate().all(|(v, &m)| m.count_ones() as usize == k - 1 && m >> v & 1 == 0) {
        return falling_factorial(k);
    }
    if let Some(p) = memo.get(&adj) {
        return p.clone();
    }
    let u = 0;
    let v = adj[u].trailing_zeros() as usize;
    let mut deleted = adj.clone();
    deleted[u] &= !(1 << v);
    deleted[v] &= !(1 << u);
    let mut merged = deleted.clone();
    let nv = merged[v];
    merged[u] |= nv;
    for (w, mask) in merged.iter_mut().enumerate() {
        if nv >> w & 1 == 1 {
            *mask |= 1 << u;
        }
    }
    let contracted = remove_vertex(&merged, v);
    let p = &chromatic_rec(deleted, memo) - &chromatic_rec(contracted, memo);
    memo.insert(adj, p.clone());
    p
}

/// `P(G,t)` by deletion–contraction.
pub fn chromatic_polynomial(graph: &Graph) -> IntPolynomial {
    let mut memo = HashMap::new();
    chromatic_rec(graph.adj.clone(), &mut memo)
}

/// Proper colourings with `colours` colours, by enumeration.
pub fn count_colourings(graph: &Graph, colours: u32) -> u64 {
    let n = graph.n;
    let mut colouring = vec![0u32; n];
    let mut count = 0u64;
    fn place(g: &Graph, v: usize, q: u32, col: &mut [u32], count: &mut u64) {
        if v == g.n {
            *count += 1;
            return;
        }
        for c in 0..q {
            if (0..v).all(|u| !g.has_edge(u, v) || col[u] != c) {
                col[v] = c;
                place(g, v + 1, q, col, count);
            }
        }
    }
    place(graph, 0, colours, &mut colouring, &mut count);
    count
}

/// The bond lattice: vertex partitions whose blocks induce connected
/// subgraphs, under refinement. Labels use 1-based vertices.
pub fn bond_lattice(graph: &Graph) -> Poset {
    bond_lattice_with_flats(graph).0
}

pub fn bond_lattice_with_flats(graph: &Graph) -> (Poset, Vec<SetPartition>) {
    set_partition_poset(graph.n, |p| {
        p.blocks().iter().all(|b| {
            let mask: u64 = b.iter().map(|&v| 1u64 << (v - 1)).sum();
            let start = b[0] - 1;
            let mut reached = 1u64 << start;
            loop {
                let mut next = reached;
                let mut rest = reached;
                while rest != 0 {
                    let v = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    next |= graph.adj[v] & mask;
                }
                if next == reached {
                    break reached == mask;
                }
                reached = next;
            }
        })
    })
}

/// `x_j`: the flat whose blocks are the components of the edges `E_1 ∪ … ∪
/// E_j`, as elements of `bond` (built from `graph`), for `j = 0..n`.
pub fn forest_multichain(graph: &Graph, order: &VertexOrder, bond: &Lattice) -> Result<Multichain> {
    order.check(graph.n)?;
    let pos = order.positions();
    let mut elements = Vec::with_capacity(graph.n + 1);
    for j in 0..=graph.n {
        let mut uf = UnionFind::<usize>::new(graph.n);
        for &(a, b) in &graph.edges {
            if pos[a].max(pos[b]) < j {
                uf.union(a, b);
            }
        }
        let labels = uf.into_labeling();
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for (v, l) in labels.into_iter().enumerate() {
            groups.entry(l).or_default().push(v + 1);
        }
        let flat = SetPartition::new(graph.n, groups.into_values().collect());
        elements.push(bond.poset().resolve(&flat.to_string())?);
    }
    Multichain::new(bond, elements)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeoReport {
    pub ordering: VertexOrder,
    pub perfect_elimination: bool,
    pub chromatic: IntPolynomial,
    pub if_polynomial: IntPolynomial,
    pub equal: bool,
    /// `P = IF` exactly when the ordering is a perfect elimination ordering.
    pub biconditional_holds: bool,
    /// `χ(bond lattice) · t^{#components} = P(G,t)`.
    pub bond_lattice_matches: bool,
    /// The multichain of edge-prefix flats induces the edge partition.
    pub partition_matches: bool,
    pub equivalence: EquivalenceReport,
}

pub fn verify_chromatic_iff_peo(graph: &Graph, order: &VertexOrder) -> Result<PeoReport> {
    let peo = is_perfect_elimination(graph, order)?;
    let chromatic = chromatic_polynomial(graph);
    let ifp = if_polynomial(graph, order)?;
    let equal = chromatic == ifp;

    let bond = Lattice::new(bond_lattice(graph))?;
    let whitney = bond.poset().characteristic_polynomial().shift(graph.num_components());
    let chain = forest_multichain(graph, order, &bond)?;
    let induced = induced_partition(&bond, &chain);
    let edges = edge_partition(graph, order)?;
    let pos = order.positions();
    let mut vertex_at = vec![0; graph.n];
    for (v, &p) in pos.iter().enumerate() {
        vertex_at[p] = v;
    }
    let expected: Vec<Vec<usize>> = edges
        .blocks
        .iter()
        .map(|block| {
            let mut atoms: Vec<usize> = block
                .iter()
                .map(|&[i, j]| {
                    let (a, b) = (vertex_at[i - 1] + 1, vertex_at[j - 1] + 1);
                    let mut blocks: Vec<Vec<usize>> =
                        (1..=graph.n).filter(|&k| k != a && k != b).map(|k| vec![k]).collect();
                    blocks.push(vec![a, b]);
                    bond.poset().resolve(&SetPartition::new(graph.n, blocks).to_string())
                })
                .collect::<Result<_>>()?;
            atoms.sort_unstable();
            Ok(atoms)
        })
        .collect::<Result<_>>()?;
    let partition_matches = induced.blocks() == expected.as_slice();
    let equivalence = theorem_equivalence_report(&bond, &chain);
    Ok(PeoReport {
        ordering: order.clone(),
        perfect_elimination: peo,
        bond_lattice_matches: whitney == chromatic,
        chromatic,
        if_polynomial: ifp,
        equal,
        biconditional_holds: equal == peo,
        partition_matches,
        equivalence,
    })
}

/// Outcome of checking every ordering of every graph on `n` vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub vertices: usize,
    pub graphs: usize,
    pub pairs: usize,
    pub peo_pairs: usize,
    pub if_failures: usize,
    pub biconditional_failures: usize,
    pub bond_failures: usize,
}

impl SweepSummary {
    pub fn passed(&self) -> bool {
        self.if_failures == 0 && self.biconditional_failures == 0 && self.bond_failures == 0
    }

    fn merge(mut self, o: Self) -> Self {
        self.graphs += o.graphs;
        self.pairs += o.pairs;
        self.peo_pairs += o.peo_pairs;
        self.if_failures += o.if_failures;
        self.biconditional_failures += o.biconditional_failures;
        self.bond_failures += o.bond_failures;
        self
    }
}

fn sweep_graph<I: IntoIterator<Item = VertexOrder>>(graph: &Graph, orders: I) -> Result<SweepSummary> {
    let chromatic = chromatic_polynomial(graph);
    let bond = bond_lattice(graph);
    let whitney = bond.characteristic_polynomial().shift(graph.num_components());
    let mut s = SweepSummary {
        vertices: graph.n,
        graphs: 1,
        bond_failures: usize::from(whitney != chromatic),
        ..Default::default()
    };
    for order in orders {
        let report = verify_if_factorization(graph, &order)?;
        let peo = is_perfect_elimination(graph, &order)?;
        s.pairs += 1;
        s.peo_pairs += usize::from(peo);
        s.if_failures += usize::from(!(report.counts_match && report.factorization_holds));
        s.biconditional_failures += usize::from((report.if_polynomial == chromatic) != peo);
    }
    Ok(s)
}

fn empty_summary(n: usize) -> SweepSummary {
    SweepSummary {
        vertices: n,
        ..Default::default()
    }
}

/// Every graph on `n` vertices under every ordering, in parallel.
pub fn sweep(n: usize) -> Result<SweepSummary> {
    let graphs: Vec<Graph> = Graph::all(n).collect();
    graphs
        .par_iter()
        .map(|g| sweep_graph(g, VertexOrder::all(n)))
        .try_reduce(|| empty_summary(n), |a, b| Ok(a.merge(b)))
}

/// `samples` random (graph, ordering) pairs on `n` vertices, each graph
/// drawn uniformly from the labelled graphs and the ordering uniformly.
pub fn sample_sweep(n: usize, samples: usize, seed: u64) -> Result<SweepSummary> {
    let mut rng = crate::fuzz::rng(seed);
    let pairs: Vec<(Graph, VertexOrder)> = (0..samples)
        .map(|_| {
            let g = Graph::random(&mut rng, n, 0.5);
            let mut vertices: Vec<usize> = (0..n).collect();
            vertices.shuffle(&mut rng);
            (g, VertexOrder { vertices })
        })
        .collect();
    pairs
        .par_iter()
        .map(|(g, o)| sweep_graph(g, [o.clone()]))
        .try_reduce(|| empty_summary(n), |a, b| Ok(a.merge(b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::is_isomorphic;
    use crate::families::partition_lattice;
    use crate::poly::Polynomial;

    fn order(s: &str) -> VertexOrder {
        s.parse().unwrap()
    }

    fn poly(roots: &[i64]) -> IntPolynomial {
        Polynomial::from_roots(roots.iter().map(|&r| Int::from(r)))
    }

    #[test]
    fn graph_validation() {
        assert!(Graph::new(2, &[(0, 0)]).is_err());
        assert!(Graph::new(2, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(2, &[(0, 2)]).is_err());
        assert!(Graph::from_one_based(2, &[[0, 1]]).is_err());
        let g = Graph::from_one_based(3, &[[2, 1], [2, 3]]).unwrap();
        assert_eq!(g, Graph::path(3));
        assert_eq!(g.to_json(), GraphJson { n: 3, edges: vec![[1, 2], [2, 3]] });
        assert!("1,1,2".parse::<VertexOrder>().is_err());
        assert!("1,x".parse::<VertexOrder>().is_err());
        assert_eq!(order("1,3,2").to_string(), "1,3,2");
        assert_eq!(order("[1, 3, 2]"), order("1,3,2"));
        assert_eq!(serde_json::to_string(&order("1,3,2")).unwrap(), "[1,3,2]");
        assert!(serde_json::from_str::<VertexOrder>("[0,1]").is_err());
        assert!(g.relabeled(&order("1,2")).is_err());
    }

    #[test]
    fn edge_partitions() {
        let k3 = edge_partition(&Graph::complete(3), &VertexOrder::identity(3)).unwrap();
        assert_eq!(k3.blocks, vec![vec![], vec![[1, 2]], vec![[1, 3], [2, 3]]]);
        let p = edge_partition(&Graph::path(3), &order("1,3,2")).unwrap();
        assert_eq!(p.blocks, vec![vec![], vec![], vec![[1, 3], [2, 3]]]);
        let e = edge_partition(&Graph::path(2), &VertexOrder::identity(2)).unwrap();
        assert_eq!(e.sizes(), vec![0, 1]);
    }

    #[test]
    fn forest_counts() {
        let id3 = VertexOrder::identity(3);
        assert_eq!(count_increasing_forests(&Graph::complete(3), &id3).unwrap(), vec![1, 3, 2]);
        assert_eq!(count_increasing_forests(&Graph::edgeless(3), &id3).unwrap(), vec![1, 0, 0]);
        assert_eq!(count_increasing_forests(&Graph::path(3), &order("1,3,2")).unwrap(), vec![1, 2, 0]);
    }

    #[test]
    fn if_polynomials() {
        let id = VertexOrder::identity;
        assert_eq!(if_polynomial(&Graph::complete(3), &id(3)).unwrap(), poly(&[0, 1, 2]));
        assert_eq!(if_polynomial(&Graph::edgeless(1), &id(1)).unwrap(), poly(&[0]));
        assert_eq!(if_polynomial(&Graph::path(3), &order("1,3,2")).unwrap(), poly(&[0, 0, 2]));
        let k4 = verify_if_factorization(&Graph::complete(4), &id(4)).unwrap();
        assert!(k4.counts_match && k4.factorization_holds);
        assert_eq!(k4.if_polynomial, poly(&[0, 1, 2, 3]));
        let empty = verify_if_factorization(&Graph::edgeless(3), &id(3)).unwrap();
        assert_eq!(empty.if_polynomial, poly(&[0, 0, 0]));
    }

    #[test]
    fn perfect_elimination() {
        for o in VertexOrder::all(4) {
            assert!(is_perfect_elimination(&Graph::complete(4), &o).unwrap());
        }
        assert!(!is_perfect_elimination(&Graph::path(3), &order("1,3,2")).unwrap());
        assert!(is_perfect_elimination(&Graph::path(3), &order("1,2,3")).unwrap());
    }

    #[test]
    fn chromatic() {
        assert_eq!(chromatic_polynomial(&Graph::complete(3)), poly(&[0, 1, 2]));
        assert_eq!(count_colourings(&Graph::complete(3), 3), 6);
        assert_eq!(chromatic_polynomial(&Graph::edgeless(4)), poly(&[0, 0, 0, 0]));
        assert_eq!(chromatic_polynomial(&Graph::path(3)), poly(&[0, 1, 1]));
        let c5 = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        let p = chromatic_polynomial(&c5);
        for q in 0..5u32 {
            assert_eq!(p.evaluate(&Int::from(q)), Int::from(count_colourings(&c5, q)));
        }
    }

    #[test]
    fn bond_lattices() {
        let path = bond_lattice(&Graph::path(3));
        assert_eq!(path.len(), 4);
        assert_eq!(path.characteristic_polynomial(), poly(&[1, 1]));
        assert!(is_isomorphic(&bond_lattice(&Graph::complete(3)), &partition_lattice(3)).is_some());
        assert_eq!(bond_lattice(&Graph::edgeless(3)).len(), 1);
        let two = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        let b = bond_lattice(&two);
        assert_eq!(b.len(), 4);
        assert_eq!(b.characteristic_polynomial().shift(2), chromatic_polynomial(&two));
    }

    #[test]
    fn peo_pipeline() {
        let k3 = verify_chromatic_iff_peo(&Graph::complete(3), &VertexOrder::identity(3)).unwrap();
        assert!(k3.perfect_elimination && k3.equal && k3.biconditional_holds);
        assert!(k3.bond_lattice_matches && k3.partition_matches);
        assert_eq!(k3.equivalence.flags(), [true; 4]);

        let p = verify_chromatic_iff_peo(&Graph::path(3), &order("1,3,2")).unwrap();
        assert!(!p.perfect_elimination && !p.equal && p.biconditional_holds);
        assert_eq!(p.chromatic, poly(&[0, 1, 1]));
        assert_eq!(p.if_polynomial, poly(&[0, 0, 2]));
        assert!(p.partition_matches);
        assert_eq!(p.equivalence.flags(), [false; 4]);

        let two = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        let r = verify_chromatic_iff_peo(&two, &VertexOrder::identity(4)).unwrap();
        assert!(r.perfect_elimination && r.equal && r.partition_matches && r.bond_lattice_matches);
        assert_eq!(r.equivalence.flags(), [true; 4]);
    }

    #[test]
    fn small_sweep() {
        let s = sweep(3).unwrap();
        assert_eq!(s.graphs, 8);
        assert_eq!(s.pairs, 48);
        assert!(s.passed());
        let t = sample_sweep(4, 30, 9).unwrap();
        assert_eq!(t.pairs, 30);
        assert!(t.passed());
        assert_eq!(t, sample_sweep(4, 30, 9).unwrap());
    }
}
