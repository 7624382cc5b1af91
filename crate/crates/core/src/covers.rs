//! Combinatorics of admissible Z/7-covers of stable genus-2 curves.
//!
//! A cover is represented by its combinatorial shadow: the base dual graph,
//! an index (1 or 7) per node, the number of components above each base
//! component, and the offsets gluing the sheets over index-1 nodes. That is
//! enough to synthesize the cover's dual graph, count everything the
//! dimension formulas need, and classify the fiber of the Prym map over the
//! special abelian sixfold: the four cover types survive and the other base
//! curves yield nothing.

use std::collections::BTreeMap;
use std::fmt;

use crate::rng::SplitMix64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoversError {
    BadVertexIndex { index: usize, vertices: usize },
    BadPermutation,
    NotIncidencePreserving { edge: usize },
    GenusMismatch { vertex: usize },
    OrderNotDividingSeven,
    NotFixedPointFree { vertex: usize },
    NotConnected,
    IdentityAutomorphism,
    NoFundamentalSubgraph,
    GenusTooSmall(u32),
}

impl fmt::Display for CoversError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoversError::BadVertexIndex { index, vertices } => {
                write!(f, "vertex {index} out of range for {vertices} vertices")
            }
            CoversError::BadPermutation => write!(f, "not a permutation"),
            CoversError::NotIncidencePreserving { edge } => {
                write!(f, "edge map does not preserve incidence at edge {edge}")
            }
            CoversError::GenusMismatch { vertex } => {
                write!(f, "vertex map does not preserve genus at vertex {vertex}")
            }
            CoversError::OrderNotDividingSeven => write!(f, "automorphism order does not divide 7"),
            CoversError::NotFixedPointFree { vertex } => {
                write!(f, "automorphism fixes vertex {vertex}")
            }
            CoversError::NotConnected => write!(f, "graph is not connected"),
            CoversError::IdentityAutomorphism => write!(f, "automorphism is the identity"),
            CoversError::NoFundamentalSubgraph => {
                write!(f, "no connected fundamental subgraph exists")
            }
            CoversError::GenusTooSmall(g) => write!(f, "genus must be >= 2, got {g}"),
        }
    }
}

impl std::error::Error for CoversError {}

/// Dual graph of a nodal curve: one vertex per component carrying its
/// geometric genus, one edge per node. Self-loops are nodes internal to a
/// component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    genera: Vec<u32>,
    edges: Vec<(usize, usize)>,
}

impl DualGraph {
    pub fn new(genera: Vec<u32>, edges: Vec<(usize, usize)>) -> Result<Self, CoversError> {
        let n = genera.len();
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return Err(CoversError::BadVertexIndex {
                    index: u.max(v),
                    vertices: n,
                });
            }
        }
        Ok(DualGraph { genera, edges })
    }

    pub fn num_vertices(&self) -> usize {
        self.genera.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn genus(&self, v: usize) -> u32 {
        self.genera[v]
    }

    pub fn genera(&self) -> &[u32] {
        &self.genera
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn components(&self) -> usize {
        let n = self.genera.len();
        if n == 0 {
            return 0;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let root = find(parent, parent[x]);
                parent[x] = root;
            }
            parent[x]
        }
        for &(u, v) in &self.edges {
            let ru = find(&mut parent, u);
            let rv = find(&mut parent, v);
            if ru != rv {
                parent[ru] = rv;
            }
        }
        (0..n).filter(|&x| find(&mut parent, x) == x).count()
    }

    pub fn is_connected(&self) -> bool {
        self.components() == 1
    }

    /// Arithmetic genus: sum of vertex genera + edges - vertices + components.
    pub fn arithmetic_genus(&self) -> i64 {
        let genus_sum: i64 = self.genera.iter().map(|&g| g as i64).sum();
        genus_sum + self.edges.len() as i64 - self.genera.len() as i64 + self.components() as i64
    }

    /// First Betti number of the underlying graph.
    pub fn betti1(&self) -> i64 {
        self.edges.len() as i64 - self.genera.len() as i64 + self.components() as i64
    }

    /// Relabel vertices by a permutation (new index = perm[old index]).
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, CoversError> {
        let n = self.genera.len();
        if !is_permutation(perm, n) {
            return Err(CoversError::BadPermutation);
        }
        let mut genera = vec![0u32; n];
        for (old, &new) in perm.iter().enumerate() {
            genera[new] = self.genera[old];
        }
        let edges = self
            .edges
            .iter()
            .map(|&(u, v)| (perm[u], perm[v]))
            .collect();
        DualGraph::new(genera, edges)
    }

    /// Multiplicity matrix: entry (u, v) counts edges between u and v for
    /// u != v; entry (u, u) counts self-loops at u.
    fn multiplicity(&self) -> Vec<Vec<u32>> {
        let n = self.genera.len();
        let mut m = vec![vec![0u32; n]; n];
        for &(u, v) in &self.edges {
            if u == v {
                m[u][u] += 1;
            } else {
                m[u][v] += 1;
                m[v][u] += 1;
            }
        }
        m
    }
}

fn is_permutation(perm: &[usize], n: usize) -> bool {
    if perm.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return false;
        }
        seen[p] = true;
    }
    true
}

/// Automorphism of a dual graph: compatible permutations of vertices and
/// edges whose order divides 7.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphAutomorphism {
    vertex_perm: Vec<usize>,
    edge_perm: Vec<usize>,
}

impl GraphAutomorphism {
    pub fn new(
        graph: &DualGraph,
        vertex_perm: Vec<usize>,
        edge_perm: Vec<usize>,
    ) -> Result<Self, CoversError> {
        let n = graph.num_vertices();
        let e = graph.num_edges();
        if !is_permutation(&vertex_perm, n) || !is_permutation(&edge_perm, e) {
            return Err(CoversError::BadPermutation);
        }
        for v in 0..n {
            if graph.genus(v) != graph.genus(vertex_perm[v]) {
                return Err(CoversError::GenusMismatch { vertex: v });
            }
        }
        for (k, &(u, v)) in graph.edges().iter().enumerate() {
            let (iu, iv) = graph.edges()[edge_perm[k]];
            let mapped = (vertex_perm[u], vertex_perm[v]);
            if (iu, iv) != mapped && (iv, iu) != mapped {
                return Err(CoversError::NotIncidencePreserving { edge: k });
            }
        }
        // order must divide 7
        let id_v: Vec<usize> = (0..n).collect();
        let id_e: Vec<usize> = (0..e).collect();
        let mut pv = vertex_perm.clone();
        let mut pe = edge_perm.clone();
        for _ in 0..6 {
            pv = compose(&vertex_perm, &pv);
            pe = compose(&edge_perm, &pe);
        }
        if pv != id_v || pe != id_e {
            return Err(CoversError::OrderNotDividingSeven);
        }
        Ok(GraphAutomorphism {
            vertex_perm,
            edge_perm,
        })
    }

    /// Derive the edge permutation from a vertex permutation, matching
    /// parallel edges greedily.
    pub fn from_vertex_perm(
        graph: &DualGraph,
        vertex_perm: Vec<usize>,
    ) -> Result<Self, CoversError> {
        let e = graph.num_edges();
        let mut edge_perm = vec![usize::MAX; e];
        let mut used = vec![false; e];
        for (k, &(u, v)) in graph.edges().iter().enumerate() {
            let target = (vertex_perm[u], vertex_perm[v]);
            let found = graph
                .edges()
                .iter()
                .enumerate()
                .find(|&(m, &(a, b))| !used[m] && ((a, b) == target || (b, a) == target));
            match found {
                Some((m, _)) => {
                    edge_perm[k] = m;
                    used[m] = true;
                }
                None => return Err(CoversError::NotIncidencePreserving { edge: k }),
            }
        }
        Self::new(graph, vertex_perm, edge_perm)
    }

    pub fn vertex_perm(&self) -> &[usize] {
        &self.vertex_perm
    }

    pub fn apply_vertex(&self, v: usize) -> usize {
        self.vertex_perm[v]
    }

    pub fn is_identity(&self) -> bool {
        self.vertex_perm.iter().enumerate().all(|(i, &p)| i == p)
            && self.edge_perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn is_fixed_point_free(&self) -> bool {
        self.vertex_perm.iter().enumerate().all(|(i, &p)| i != p)
    }
}

fn compose(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    inner.iter().map(|&i| outer[i]).collect()
}

/// Search for a connected subgraph S with S disjoint from sigma(S) whose
/// orbit covers every vertex. Exhaustive over vertex subsets in increasing
/// size, so the returned witness has minimal size and the search failing
/// would falsify the underlying graph lemma on this instance.
pub fn fundamental_subgraph(
    graph: &DualGraph,
    sigma: &GraphAutomorphism,
) -> Result<Vec<usize>, CoversError> {
    let n = graph.num_vertices();
    assert!(n <= 24, "exhaustive search is meant for small graphs");
    if !graph.is_connected() {
        return Err(CoversError::NotConnected);
    }
    if sigma.is_identity() {
        return Err(CoversError::IdentityAutomorphism);
    }
    if let Some(v) = (0..n).find(|&v| sigma.apply_vertex(v) == v) {
        return Err(CoversError::NotFixedPointFree { vertex: v });
    }

    let perm = sigma.vertex_perm();
    let shift = |mask: u32| -> u32 {
        let mut out = 0u32;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out |= 1 << perm[v];
        }
        out
    };
    let full: u32 = (1u32 << n) - 1;

    let connected_mask = |mask: u32| -> bool {
        let start = mask.trailing_zeros() as usize;
        let mut seen = 1u32 << start;
        let mut frontier = vec![start];
        while let Some(v) = frontier.pop() {
            for &(a, b) in graph.edges() {
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && mask & (1 << y) != 0 && seen & (1 << y) == 0 {
                        seen |= 1 << y;
                        frontier.push(y);
                    }
                }
            }
        }
        seen == mask
    };

    // subsets in increasing size (Gosper's hack), so the first hit is a
    // minimal fundamental domain; sizes beyond n/2 cannot avoid sigma(S)
    for size in 1..=(n / 2).max(1) {
        let mut mask: u32 = (1u32 << size) - 1;
        while mask <= full {
            if mask & shift(mask) == 0 {
                let mut union = mask;
                let mut cur = mask;
                for _ in 0..6 {
                    cur = shift(cur);
                    union |= cur;
                }
                if union == full && connected_mask(mask) {
                    return Ok((0..n).filter(|&v| mask & (1 << v) != 0).collect());
                }
            }
            // next subset of the same size
            let c = mask & mask.wrapping_neg();
            let r = mask + c;
            if r == 0 {
                break;
            }
            mask = (((r ^ mask) >> 2) / c) | r;
        }
    }
    Err(CoversError::NoFundamentalSubgraph)
}

/// Random sigma-symmetric instance: k orbits of 7 vertices with sigma acting
/// by rotation inside each orbit, edges added in whole sigma-orbits, plus
/// bridging orbits until connected.
pub fn random_sigma_symmetric_graph(
    rng: &mut SplitMix64,
    max_orbits: usize,
) -> (DualGraph, GraphAutomorphism) {
    let orbits = 1 + rng.below(max_orbits as u64) as usize;
    let n = 7 * orbits;
    // genus is constant along each orbit so the rotation preserves it
    let orbit_genus: Vec<u32> = (0..orbits).map(|_| rng.below(3) as u32).collect();
    let genera: Vec<u32> = (0..n).map(|v| orbit_genus[v / 7]).collect();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let add_orbit = |edges: &mut Vec<(usize, usize)>, u: usize, v: usize| {
        for i in 0..7 {
            let su = (u / 7) * 7 + (u + i) % 7;
            let sv = (v / 7) * 7 + (v + i) % 7;
            edges.push((su, sv));
        }
    };
    let seeds = 1 + rng.below(3) as usize;
    for _ in 0..seeds {
        let u = rng.below(n as u64) as usize;
        let v = rng.below(n as u64) as usize;
        add_orbit(&mut edges, u, v);
    }
    // bridge components until connected
    loop {
        let g = DualGraph::new(genera.clone(), edges.clone()).expect("valid indices");
        if g.is_connected() {
            break;
        }
        let n_comp = g.components();
        debug_assert!(n_comp > 1);
        // pick two vertices in different components
        let mut comp_of = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if comp_of[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp_of[start] = next;
            while let Some(x) = stack.pop() {
                for &(a, b) in g.edges() {
                    for (s, t) in [(a, b), (b, a)] {
                        if s == x && comp_of[t] == usize::MAX {
                            comp_of[t] = next;
                            stack.push(t);
                        }
                    }
                }
            }
            next += 1;
        }
        let u = (0..n).find(|&v| comp_of[v] == 0).unwrap();
        let v = (0..n).find(|&v| comp_of[v] == 1).unwrap();
        add_orbit(&mut edges, u, v);
    }
    let graph = DualGraph::new(genera, edges).expect("valid indices");
    let vertex_perm: Vec<usize> = (0..n).map(|v| (v / 7) * 7 + (v + 1) % 7).collect();
    let sigma = GraphAutomorphism::from_vertex_perm(&graph, vertex_perm)
        .expect("rotation is an automorphism");
    (graph, sigma)
}

/// Counts attached to an admissible cover: nodes of each index on the base,
/// base components with 7 or 1 components above, smooth fixed points, and
/// the base arithmetic genus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverCounts {
    pub n1: u32,
    pub n7: u32,
    pub comp1: u32,
    pub comp7: u32,
    pub r: u32,
    pub g: u32,
}

/// The combinatorial criterion for the Prym variety of the cover to be an
/// abelian variety: no smooth fixed points and as many index-1 nodes as
/// components with split preimage.
pub fn check_star_star(c: &CoverCounts) -> bool {
    c.r == 0 && c.comp1 == c.n1
}

/// Dimensions of the toric parts upstairs and downstairs:
/// dim T~ = (n7 - c7) + 7(n1 - c1) + 1 and dim T = (n7 - c7) + (n1 - c1) + 1.
pub fn torus_dims(c: &CoverCounts) -> (i64, i64) {
    let d7 = c.n7 as i64 - c.comp7 as i64;
    let d1 = c.n1 as i64 - c.comp1 as i64;
    (d7 + 7 * d1 + 1, d7 + d1 + 1)
}

/// Arithmetic genus of the normalized cover from the Hurwitz count
/// p_a(N~) - 1 = 7 (p_a(N) - 1) + 3r + 6 n7.
pub fn hurwitz_cover_genus(gn: i64, r: u32, n7: u32) -> i64 {
    7 * (gn - 1) + 3 * r as i64 + 6 * n7 as i64 + 1
}

/// Arithmetic genus of the cover itself: p_a(C~) - 1 = 7 (p_a(C) - 1) + 3r.
pub fn cover_arith_genus(g: i64, r: u32) -> i64 {
    7 * (g - 1) + 3 * r as i64 + 1
}

/// Dimension of the Prym variety for a genus-g base: 6g - 6.
pub fn prym_dim(g: u32) -> Result<u32, CoversError> {
    if g < 2 {
        return Err(CoversError::GenusTooSmall(g));
    }
    Ok(6 * g - 6)
}

/// Polarization type: 1 repeated 5g-5 times followed by 7 repeated g-1
/// times.
pub fn polarization_type(g: u32) -> Result<Vec<u32>, CoversError> {
    if g < 2 {
        return Err(CoversError::GenusTooSmall(g));
    }
    let mut t = vec![1u32; (5 * g - 5) as usize];
    t.extend(std::iter::repeat_n(7, (g - 1) as usize));
    Ok(t)
}

/// Order of the diagonal p-torsion { (x, ..., x) : p x = 0 } on a genus-1
/// lattice, counted by exhausting (Z/p)^2.
pub fn diagonal_torsion_order(p: u32) -> u64 {
    let mut count = 0;
    for x in 0..p {
        for y in 0..p {
            if (p * x).is_multiple_of(p) && (p * y).is_multiple_of(p) {
                count += 1;
            }
        }
    }
    count as u64
}

/// Number of subgroups of order 7 in the symmetric group S_7, found by
/// enumerating all 5040 permutations, counting the 720 elements of order 7,
/// and dividing by the 6 generators per subgroup.
pub fn order7_subgroup_count_s7() -> u64 {
    let mut perm = [0usize; 7];
    let mut count = 0u64;
    fn visit(perm: &mut [usize; 7], used: &mut [bool; 7], depth: usize, count: &mut u64) {
        if depth == 7 {
            // order of the permutation: check perm^7 = id and perm != id
            let mut p = *perm;
            let is_id = |q: &[usize; 7]| q.iter().enumerate().all(|(i, &x)| i == x);
            if is_id(&p) {
                return;
            }
            for _ in 0..6 {
                let mut next = [0usize; 7];
                for i in 0..7 {
                    next[i] = perm[p[i]];
                }
                p = next;
            }
            if is_id(&p) {
                *count += 1;
            }
            return;
        }
        for v in 0..7 {
            if !used[v] {
                used[v] = true;
                perm[depth] = v;
                visit(perm, used, depth + 1, count);
                used[v] = false;
            }
        }
    }
    let mut used = [false; 7];
    visit(&mut perm, &mut used, 0, &mut count);
    count / 6
}

/// Number of subgroups of order 7 of (Z/7)^2, by listing cyclic subgroups.
pub fn order7_subgroup_count_zz7_squared() -> u64 {
    let mut subgroups: Vec<Vec<(u32, u32)>> = Vec::new();
    for a in 0..7u32 {
        for b in 0..7u32 {
            if (a, b) == (0, 0) {
                continue;
            }
            let mut sub: Vec<(u32, u32)> = (0..7).map(|k| ((k * a) % 7, (k * b) % 7)).collect();
            sub.sort_unstable();
            if !subgroups.contains(&sub) {
                subgroups.push(sub);
            }
        }
    }
    subgroups.len() as u64
}

/// The seven topological types of stable genus-2 curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum BaseType {
    /// Smooth irreducible curve of genus 2.
    Smooth,
    /// Irreducible: elliptic normalization with one node.
    IrreducibleOneNode,
    /// Irreducible: rational normalization with two nodes.
    RationalTwoNodes,
    /// Two elliptic curves meeting at one point.
    TwoElliptic,
    /// An elliptic curve and a nodal rational curve meeting at one point.
    EllipticPlusNodalRational,
    /// Two nodal rational curves meeting at one point.
    TwoNodalRational,
    /// Two rational curves meeting at three points.
    TwoRationalThreePoints,
}

impl BaseType {
    pub fn all() -> [BaseType; 7] {
        [
            BaseType::Smooth,
            BaseType::IrreducibleOneNode,
            BaseType::RationalTwoNodes,
            BaseType::TwoElliptic,
            BaseType::EllipticPlusNodalRational,
            BaseType::TwoNodalRational,
            BaseType::TwoRationalThreePoints,
        ]
    }

    pub fn label(&self) -> &'static str {
        match self {
            BaseType::Smooth => "smooth genus 2",
            BaseType::IrreducibleOneNode => "irreducible, elliptic with one node",
            BaseType::RationalTwoNodes => "irreducible, rational with two nodes",
            BaseType::TwoElliptic => "two elliptic components, one node",
            BaseType::EllipticPlusNodalRational => "elliptic plus nodal rational, one node",
            BaseType::TwoNodalRational => "two nodal rational components, one node",
            BaseType::TwoRationalThreePoints => "two rational components, three nodes",
        }
    }

    pub fn dual_graph(&self) -> DualGraph {
        let (genera, edges): (Vec<u32>, Vec<(usize, usize)>) = match self {
            BaseType::Smooth => (vec![2], vec![]),
            BaseType::IrreducibleOneNode => (vec![1], vec![(0, 0)]),
            BaseType::RationalTwoNodes => (vec![0], vec![(0, 0), (0, 0)]),
            BaseType::TwoElliptic => (vec![1, 1], vec![(0, 1)]),
            BaseType::EllipticPlusNodalRational => (vec![1, 0], vec![(0, 1), (1, 1)]),
            BaseType::TwoNodalRational => (vec![0, 0], vec![(0, 1), (0, 0), (1, 1)]),
            BaseType::TwoRationalThreePoints => (vec![0, 0], vec![(0, 1), (0, 1), (0, 1)]),
        };
        DualGraph::new(genera, edges).expect("valid base graph")
    }
}

/// The labels of the four admissible cover types in the special fiber.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CoverTypeLabel {
    I,
    II,
    III,
    IV,
}

impl fmt::Display for CoverTypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CoverTypeLabel::I => "(i)",
            CoverTypeLabel::II => "(ii)",
            CoverTypeLabel::III => "(iii)",
            CoverTypeLabel::IV => "(iv)",
        };
        write!(f, "{s}")
    }
}

/// How the covers of one type sit inside the fiber over the special
/// sixfold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parametrization {
    /// A one-dimensional family: the base elliptic curve minus the point
    /// under the node.
    Curve,
    /// Pairs (elliptic curve, order-7 subgroup), i.e. the points of the
    /// open level-7 modular curve.
    EllipticWithSubgroup,
    /// A single cover up to isomorphism.
    UniquePoint,
}

impl CoverTypeLabel {
    pub fn parametrization(&self) -> Parametrization {
        match self {
            CoverTypeLabel::I => Parametrization::Curve,
            CoverTypeLabel::II => Parametrization::EllipticWithSubgroup,
            CoverTypeLabel::III | CoverTypeLabel::IV => Parametrization::UniquePoint,
        }
    }
}

/// Why a candidate cover was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RejectReason {
    /// A single component above a vertex cannot exist with this branch data.
    ImpossibleComponent,
    /// The synthesized cover curve is disconnected.
    Disconnected,
    /// The base carries no index-1 node.
    NoIndexOneNode,
    /// A component with nodes of both indices has an index-1 self-node.
    MixedIndexSelfNode,
    /// comp1 != n1, so the Prym acquires a torus factor.
    CountsMismatch,
    /// The cover graph has larger first Betti number than the base graph.
    TorusFactor,
}

/// A synthesized admissible cover candidate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthesizedCover {
    pub base: BaseType,
    /// Index (1 or 7) per base edge.
    pub node_indices: Vec<u8>,
    /// True when the vertex has seven components above it.
    pub vertex_split: Vec<bool>,
    /// Gluing offset per base edge; meaningful only for index-1 edges with
    /// split endpoints on both sides.
    pub offsets: Vec<u8>,
    /// The cover's dual graph.
    pub graph: DualGraph,
    pub counts: CoverCounts,
}

fn index7_incidences(base: &DualGraph, indices: &[u8], v: usize) -> u32 {
    let mut inc = 0;
    for (k, &(a, b)) in base.edges().iter().enumerate() {
        if indices[k] == 7 {
            if a == v {
                inc += 1;
            }
            if b == v {
                inc += 1;
            }
        }
    }
    inc
}

/// Build the cover dual graph for one candidate, or report that a component
/// cannot exist.
fn synthesize(
    base_type: BaseType,
    indices: &[u8],
    split: &[bool],
    offsets: &[u8],
) -> Result<SynthesizedCover, RejectReason> {
    let base = base_type.dual_graph();
    let nv = base.num_vertices();

    // component structure above each vertex
    let mut genera: Vec<u32> = Vec::new();
    let mut first_id: Vec<usize> = Vec::new(); // id of the first cover vertex over v
    for v in 0..nv {
        let inc7 = index7_incidences(&base, indices, v);
        first_id.push(genera.len());
        if split[v] {
            if inc7 > 0 {
                // a ramified vertex cannot split
                return Err(RejectReason::ImpossibleComponent);
            }
            for _ in 0..7 {
                genera.push(base.genus(v));
            }
        } else {
            // single component: connected degree-7 cover of the
            // normalization, totally ramified at inc7 branch points
            if inc7 == 0 && base.genus(v) == 0 {
                // a rational component has no connected etale cover
                return Err(RejectReason::ImpossibleComponent);
            }
            let g = 7 * base.genus(v) as i64 - 6 + 3 * inc7 as i64;
            if g < 0 {
                return Err(RejectReason::ImpossibleComponent);
            }
            genera.push(g as u32);
        }
    }

    // edges of the cover
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (k, &(x, y)) in base.edges().iter().enumerate() {
        if indices[k] == 7 {
            // single node joining the (single) components above x and y
            edges.push((first_id[x], first_id[y]));
        } else {
            let delta = offsets[k] as usize;
            for i in 0..7 {
                let ex = if split[x] {
                    first_id[x] + i
                } else {
                    first_id[x]
                };
                let ey = if split[y] {
                    first_id[y] + (i + delta) % 7
                } else {
                    first_id[y]
                };
                edges.push((ex, ey));
            }
        }
    }
    let graph = DualGraph::new(genera, edges).expect("indices in range");

    let counts = CoverCounts {
        n1: indices.iter().filter(|&&i| i == 1).count() as u32,
        n7: indices.iter().filter(|&&i| i == 7).count() as u32,
        comp1: split.iter().filter(|&&s| s).count() as u32,
        comp7: split.iter().filter(|&&s| !s).count() as u32,
        r: 0,
        g: base.arithmetic_genus() as u32,
    };

    Ok(SynthesizedCover {
        base: base_type,
        node_indices: indices.to_vec(),
        vertex_split: split.to_vec(),
        offsets: offsets.to_vec(),
        graph,
        counts,
    })
}

/// Apply the fiber filters in order; None means the candidate survives.
pub fn reject_reason(cover: &SynthesizedCover) -> Option<RejectReason> {
    let base = cover.base.dual_graph();
    if !cover.graph.is_connected() {
        return Some(RejectReason::Disconnected);
    }
    // the fiber over the special sixfold always contains an index-1 node
    if cover.counts.n1 == 0 {
        return Some(RejectReason::NoIndexOneNode);
    }
    // on a component with nodes of both indices, every index-1 node meets
    // another component
    for v in 0..base.num_vertices() {
        let has7 = index7_incidences(&base, &cover.node_indices, v) > 0;
        if !has7 {
            continue;
        }
        for (k, &(a, b)) in base.edges().iter().enumerate() {
            if cover.node_indices[k] == 1 && a == v && b == v {
                return Some(RejectReason::MixedIndexSelfNode);
            }
        }
    }
    // condition for the Prym to be abelian, by counts and independently by
    // Betti numbers; the two must agree
    let counts_ok = check_star_star(&cover.counts);
    let betti_ok = cover.graph.betti1() == base.betti1();
    debug_assert_eq!(
        counts_ok, betti_ok,
        "count and Betti criteria must coincide on connected covers"
    );
    if !counts_ok {
        return Some(RejectReason::CountsMismatch);
    }
    if !betti_ok {
        return Some(RejectReason::TorusFactor);
    }
    None
}

fn label_for(base: BaseType, counts: &CoverCounts) -> Option<CoverTypeLabel> {
    match base {
        BaseType::IrreducibleOneNode => Some(CoverTypeLabel::I),
        BaseType::TwoElliptic => Some(CoverTypeLabel::II),
        BaseType::EllipticPlusNodalRational => {
            if counts.n7 == 1 {
                Some(CoverTypeLabel::III)
            } else {
                Some(CoverTypeLabel::IV)
            }
        }
        _ => None,
    }
}

/// All automorphisms of a base dual graph (vertex permutation preserving
/// genera plus a compatible edge bijection), used to identify isomorphic
/// covers.
fn base_automorphisms(graph: &DualGraph) -> Vec<(Vec<usize>, Vec<usize>)> {
    let n = graph.num_vertices();
    let e = graph.num_edges();
    let mut autos = Vec::new();
    let mut vperm: Vec<usize> = (0..n).collect();
    loop {
        let genus_ok = (0..n).all(|v| graph.genus(v) == graph.genus(vperm[v]));
        if genus_ok {
            // extend to edge bijections by backtracking
            let mut eperm = vec![usize::MAX; e];
            let mut used = vec![false; e];
            fn extend(
                graph: &DualGraph,
                vperm: &[usize],
                eperm: &mut Vec<usize>,
                used: &mut Vec<bool>,
                k: usize,
                out: &mut Vec<(Vec<usize>, Vec<usize>)>,
            ) {
                let e = graph.num_edges();
                if k == e {
                    out.push((vperm.to_vec(), eperm.clone()));
                    return;
                }
                let (u, v) = graph.edges()[k];
                let target = (vperm[u], vperm[v]);
                for m in 0..e {
                    if used[m] {
                        continue;
                    }
                    let (a, b) = graph.edges()[m];
                    if (a, b) == target || (b, a) == target {
                        used[m] = true;
                        eperm[k] = m;
                        extend(graph, vperm, eperm, used, k + 1, out);
                        used[m] = false;
                    }
                }
            }
            extend(graph, &vperm, &mut eperm, &mut used, 0, &mut autos);
        }
        if !next_permutation(&mut vperm) {
            break;
        }
    }
    autos
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Canonical form of a surviving candidate under relabeling of the sheets
/// over each split vertex, replacement of the deck generator by a power, and
/// base graph automorphisms. Two candidates are isomorphic covers exactly
/// when their canonical forms agree.
fn canonical_form(
    base: &DualGraph,
    autos: &[(Vec<usize>, Vec<usize>)],
    indices: &[u8],
    split: &[bool],
    offsets: &[u8],
) -> Vec<u8> {
    let nv = base.num_vertices();
    let ne = base.num_edges();
    let mut best: Option<Vec<u8>> = None;
    // shifts only matter for split vertices; offsets only for split-split
    // index-1 edges
    let shift_domain = 7usize.pow(nv as u32);
    for (vperm, eperm) in autos {
        for unit in 1..7u8 {
            for shift_code in 0..shift_domain {
                let mut w = vec![0u8; nv];
                let mut code = shift_code;
                for slot in w.iter_mut() {
                    *slot = (code % 7) as u8;
                    code /= 7;
                }
                let mut img_indices = vec![0u8; ne];
                let mut img_offsets = vec![0u8; ne];
                let mut img_split = vec![false; nv];
                for v in 0..nv {
                    img_split[vperm[v]] = split[v];
                }
                let mut valid = true;
                for k in 0..ne {
                    let m = eperm[k];
                    img_indices[m] = indices[k];
                    let (u, v) = base.edges()[k];
                    let (a, _b) = base.edges()[m];
                    if indices[k] == 1 && split[u] && split[v] {
                        // delta transforms by sheet shifts, the unit, and a
                        // sign when the automorphism flips the edge
                        let flipped = vperm[u] != a && u != v;
                        let mut d = offsets[k] as i64 + w[v] as i64 - w[u] as i64;
                        if flipped {
                            d = -d;
                        }
                        d *= unit as i64;
                        let mut d = d.rem_euclid(7) as u8;
                        if u == v {
                            // self-loop: both orientations describe the
                            // same node orbit
                            d = d.min((7 - d) % 7);
                        }
                        img_offsets[m] = d;
                    } else {
                        img_offsets[m] = 0;
                    }
                    if img_indices[m] == 0 {
                        valid = false;
                    }
                }
                if !valid {
                    continue;
                }
                let mut encoded: Vec<u8> = Vec::with_capacity(2 * ne + nv);
                encoded.extend_from_slice(&img_indices);
                encoded.extend(img_split.iter().map(|&s| s as u8));
                encoded.extend_from_slice(&img_offsets);
                match &best {
                    Some(b) if *b <= encoded => {}
                    _ => best = Some(encoded),
                }
            }
        }
    }
    best.expect("automorphism group is nonempty")
}

/// A surviving cover type over one base: how many raw candidates produced
/// it, how many isomorphism classes they fall into, and a representative.
#[derive(Debug, Clone)]
pub struct CoverClass {
    pub label: CoverTypeLabel,
    pub raw_count: usize,
    pub iso_classes: usize,
    pub sample: SynthesizedCover,
}

/// Every synthesizable candidate over one base type: all index assignments,
/// all component structures that can exist, all gluing offsets. No fiber
/// filter is applied.
pub fn enumerate_candidates(base_type: BaseType) -> Vec<SynthesizedCover> {
    let base = base_type.dual_graph();
    let ne = base.num_edges();
    let nv = base.num_vertices();
    let mut out = Vec::new();
    for index_code in 0..(1usize << ne) {
        let indices: Vec<u8> = (0..ne)
            .map(|k| if index_code & (1 << k) != 0 { 7 } else { 1 })
            .collect();
        for split_code in 0..(1usize << nv) {
            let split: Vec<bool> = (0..nv).map(|v| split_code & (1 << v) != 0).collect();
            // offsets for index-1 split-split edges only
            let offset_slots: Vec<usize> = (0..ne)
                .filter(|&k| {
                    let (u, v) = base.edges()[k];
                    indices[k] == 1 && split[u] && split[v]
                })
                .collect();
            for offset_code in 0..7usize.pow(offset_slots.len() as u32) {
                let mut offsets = vec![0u8; ne];
                let mut code = offset_code;
                for &slot in &offset_slots {
                    offsets[slot] = (code % 7) as u8;
                    code /= 7;
                }
                if let Ok(cover) = synthesize(base_type, &indices, &split, &offsets) {
                    out.push(cover);
                }
            }
        }
    }
    out
}

/// Enumerate index assignments, component structures and gluing offsets over
/// one base type, filter by the fiber conditions, and group the survivors.
pub fn classify_fiber(base_type: BaseType) -> Vec<CoverClass> {
    let base = base_type.dual_graph();
    let autos = base_automorphisms(&base);

    let mut grouped: BTreeMap<CoverTypeLabel, (usize, Vec<Vec<u8>>, SynthesizedCover)> =
        BTreeMap::new();

    for cover in enumerate_candidates(base_type) {
        if reject_reason(&cover).is_some() {
            continue;
        }
        let label = label_for(base_type, &cover.counts)
            .expect("survivors only occur on the catalogued bases");
        let canon = canonical_form(
            &base,
            &autos,
            &cover.node_indices,
            &cover.vertex_split,
            &cover.offsets,
        );
        let entry = grouped
            .entry(label)
            .or_insert_with(|| (0, Vec::new(), cover.clone()));
        entry.0 += 1;
        if !entry.1.contains(&canon) {
            entry.1.push(canon);
        }
    }

    grouped
        .into_iter()
        .map(|(label, (raw_count, canons, sample))| CoverClass {
            label,
            raw_count,
            iso_classes: canons.len(),
            sample,
        })
        .collect()
}

/// Contract a subset of edges: each connected component of the contracted
/// subgraph collapses to one vertex whose genus is the sum of the collapsed
/// genera plus the first Betti number of the collapsed piece.
fn contract_edges(graph: &DualGraph, subset: &[bool]) -> DualGraph {
    let n = graph.num_vertices();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    for (k, &(u, v)) in graph.edges().iter().enumerate() {
        if subset[k] {
            let ru = find(&mut parent, u);
            let rv = find(&mut parent, v);
            if ru != rv {
                parent[ru] = rv;
            }
        }
    }
    let mut rep_to_new: BTreeMap<usize, usize> = BTreeMap::new();
    for v in 0..n {
        let r = find(&mut parent, v);
        let next = rep_to_new.len();
        rep_to_new.entry(r).or_insert(next);
    }
    let m = rep_to_new.len();
    let mut genera = vec![0u32; m];
    for v in 0..n {
        let r = find(&mut parent, v);
        genera[rep_to_new[&r]] += graph.genus(v);
    }
    // contracted cycles add genus: betti1 of each collapsed piece
    let mut piece_vertices = vec![0i64; m];
    let mut piece_edges = vec![0i64; m];
    for v in 0..n {
        let r = find(&mut parent, v);
        piece_vertices[rep_to_new[&r]] += 1;
    }
    for (k, &(u, _)) in graph.edges().iter().enumerate() {
        if subset[k] {
            let r = find(&mut parent, u);
            piece_edges[rep_to_new[&r]] += 1;
        }
    }
    for i in 0..m {
        let b1 = piece_edges[i] - piece_vertices[i] + 1;
        // pieces are connected by construction only when they received
        // edges; isolated vertices have b1 = 0
        if piece_edges[i] > 0 {
            genera[i] += b1 as u32;
        }
    }
    let mut edges = Vec::new();
    for (k, &(u, v)) in graph.edges().iter().enumerate() {
        if !subset[k] {
            let ru = find(&mut parent, u);
            let rv = find(&mut parent, v);
            edges.push((rep_to_new[&ru], rep_to_new[&rv]));
        }
    }
    DualGraph::new(genera, edges).expect("indices in range")
}

/// Isomorphism of genus-labeled multigraphs by backtracking; sizes here are
/// at most a dozen vertices.
pub fn graphs_isomorphic(a: &DualGraph, b: &DualGraph) -> bool {
    let n = a.num_vertices();
    if n != b.num_vertices() || a.num_edges() != b.num_edges() {
        return false;
    }
    let mut ga = a.genera().to_vec();
    let mut gb = b.genera().to_vec();
    ga.sort_unstable();
    gb.sort_unstable();
    if ga != gb {
        return false;
    }
    let ma = a.multiplicity();
    let mb = b.multiplicity();
    let mut mapping = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn backtrack(
        a: &DualGraph,
        b: &DualGraph,
        ma: &[Vec<u32>],
        mb: &[Vec<u32>],
        mapping: &mut Vec<usize>,
        used: &mut Vec<bool>,
        v: usize,
    ) -> bool {
        let n = a.num_vertices();
        if v == n {
            return true;
        }
        for t in 0..n {
            if used[t] || a.genus(v) != b.genus(t) || ma[v][v] != mb[t][t] {
                continue;
            }
            let ok = (0..v).all(|u| ma[v][u] == mb[t][mapping[u]]);
            if ok {
                mapping[v] = t;
                used[t] = true;
                if backtrack(a, b, ma, mb, mapping, used, v + 1) {
                    return true;
                }
                used[t] = false;
                mapping[v] = usize::MAX;
            }
        }
        false
    }
    backtrack(a, b, &ma, &mb, &mut mapping, &mut used, 0)
}

/// Does some edge contraction of `source` produce a graph isomorphic to
/// `target`? Contraction is set-wise, so fixed-size subsets suffice. A cheap
/// union-find count filters out subsets with the wrong vertex count before
/// any graph is built.
pub fn contracts_to(source: &DualGraph, target: &DualGraph) -> bool {
    let es = source.num_edges();
    let et = target.num_edges();
    if et > es {
        return false;
    }
    let need = es - et;
    let mut subset = vec![false; es];

    fn component_count(source: &DualGraph, subset: &[bool]) -> usize {
        let n = source.num_vertices();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (k, &(u, v)) in source.edges().iter().enumerate() {
            if subset[k] {
                let ru = find(&mut parent, u);
                let rv = find(&mut parent, v);
                if ru != rv {
                    parent[ru] = rv;
                }
            }
        }
        (0..n).filter(|&x| find(&mut parent, x) == x).count()
    }

    fn search(
        source: &DualGraph,
        target: &DualGraph,
        subset: &mut Vec<bool>,
        start: usize,
        left: usize,
    ) -> bool {
        if left == 0 {
            if component_count(source, subset) != target.num_vertices() {
                return false;
            }
            let contracted = contract_edges(source, subset);
            return graphs_isomorphic(&contracted, target);
        }
        let es = source.num_edges();
        if start + left > es {
            return false;
        }
        for k in start..=(es - left) {
            subset[k] = true;
            if search(source, target, subset, k + 1, left - 1) {
                subset[k] = false;
                return true;
            }
            subset[k] = false;
        }
        false
    }
    search(source, target, &mut subset, 0, need)
}

/// The full fiber classification across the seven base types, with divisor
/// membership computed from graph contractions.
#[derive(Debug, Clone)]
pub struct FiberCatalog {
    pub by_base: Vec<(BaseType, Vec<CoverClass>)>,
    /// Cover types whose graph contracts onto the type (i) graph.
    pub s1: Vec<CoverTypeLabel>,
    /// Cover types whose graph contracts onto the type (ii) graph.
    pub s2: Vec<CoverTypeLabel>,
    /// Number of order-7 subgroups of (Z/7)^2: the candidate count of
    /// type (ii) covers over a fixed base.
    pub type_ii_candidate_count: u64,
}

impl FiberCatalog {
    pub fn all_labels(&self) -> Vec<CoverTypeLabel> {
        let mut labels: Vec<CoverTypeLabel> = self
            .by_base
            .iter()
            .flat_map(|(_, classes)| classes.iter().map(|c| c.label))
            .collect();
        labels.sort_unstable();
        labels.dedup();
        labels
    }

    pub fn class(&self, label: CoverTypeLabel) -> Option<&CoverClass> {
        self.by_base
            .iter()
            .flat_map(|(_, classes)| classes.iter())
            .find(|c| c.label == label)
    }

    pub fn s1_intersect_s2(&self) -> Vec<CoverTypeLabel> {
        self.s1
            .iter()
            .copied()
            .filter(|l| self.s2.contains(l))
            .collect()
    }
}

/// The catalog is pure and moderately expensive to build, so it is computed
/// once per process.
pub fn fiber_catalog() -> &'static FiberCatalog {
    static CATALOG: std::sync::OnceLock<FiberCatalog> = std::sync::OnceLock::new();
    CATALOG.get_or_init(build_fiber_catalog)
}

fn build_fiber_catalog() -> FiberCatalog {
    let by_base: Vec<(BaseType, Vec<CoverClass>)> = BaseType::all()
        .into_iter()
        .map(|b| (b, classify_fiber(b)))
        .collect();
    let graph_of = |label: CoverTypeLabel| -> DualGraph {
        by_base
            .iter()
            .flat_map(|(_, classes)| classes.iter())
            .find(|c| c.label == label)
            .map(|c| c.sample.graph.clone())
            .expect("catalog contains all four types")
    };
    let type_i = graph_of(CoverTypeLabel::I);
    let type_ii = graph_of(CoverTypeLabel::II);
    let labels: Vec<CoverTypeLabel> = {
        let mut l: Vec<CoverTypeLabel> = by_base
            .iter()
            .flat_map(|(_, classes)| classes.iter().map(|c| c.label))
            .collect();
        l.sort_unstable();
        l.dedup();
        l
    };
    let s1: Vec<CoverTypeLabel> = labels
        .iter()
        .copied()
        .filter(|&l| contracts_to(&graph_of(l), &type_i))
        .collect();
    let s2: Vec<CoverTypeLabel> = labels
        .iter()
        .copied()
        .filter(|&l| contracts_to(&graph_of(l), &type_ii))
        .collect();
    FiberCatalog {
        by_base,
        s1,
        s2,
        type_ii_candidate_count: order7_subgroup_count_zz7_squared(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_graph(n: usize, genus: u32) -> DualGraph {
        let genera = vec![genus; n];
        let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
        DualGraph::new(genera, edges).unwrap()
    }

    #[test]
    fn arithmetic_genus_examples() {
        // elliptic with one self-node
        let g1 = DualGraph::new(vec![1], vec![(0, 0)]).unwrap();
        assert_eq!(g1.arithmetic_genus(), 2);
        // two rational components meeting at three points
        let g2 = DualGraph::new(vec![0, 0], vec![(0, 1), (0, 1), (0, 1)]).unwrap();
        assert_eq!(g2.arithmetic_genus(), 2);
        // a 7-cycle of elliptic curves
        assert_eq!(cycle_graph(7, 1).arithmetic_genus(), 8);
    }

    #[test]
    fn arithmetic_genus_invariant_under_relabeling() {
        let g = DualGraph::new(vec![1, 0, 2], vec![(0, 1), (1, 2), (2, 2)]).unwrap();
        let perm = vec![2, 0, 1];
        let h = g.relabel(&perm).unwrap();
        assert_eq!(g.arithmetic_genus(), h.arithmetic_genus());
        assert_eq!(g.betti1(), h.betti1());
    }

    #[test]
    fn base_types_all_have_genus_two() {
        for b in BaseType::all() {
            assert_eq!(b.dual_graph().arithmetic_genus(), 2, "{}", b.label());
            assert!(b.dual_graph().is_connected());
        }
    }

    #[test]
    fn hurwitz_counts() {
        // smooth genus-2 base, etale: cover genus 8
        assert_eq!(cover_arith_genus(2, 0), 8);
        // a smooth fixed point breaks the count
        assert_eq!(cover_arith_genus(2, 1), 11);
        // etale over genus 1 stays genus 1
        assert_eq!(hurwitz_cover_genus(1, 0, 0), 1);
        // one index-7 node over genus 1: two branch points upstairs
        assert_eq!(hurwitz_cover_genus(1, 0, 1), 7);
        assert_eq!(hurwitz_cover_genus(1, 0, 2), 13);
    }

    #[test]
    fn star_star_criterion() {
        let ok = CoverCounts {
            n1: 1,
            n7: 0,
            comp1: 1,
            comp7: 0,
            r: 0,
            g: 2,
        };
        assert!(check_star_star(&ok));
        let fixed_point = CoverCounts { r: 1, ..ok };
        assert!(!check_star_star(&fixed_point));
        let mismatch = CoverCounts { n1: 2, ..ok };
        assert!(!check_star_star(&mismatch));
    }

    #[test]
    fn torus_dimension_formulas() {
        let c = CoverCounts {
            n1: 1,
            n7: 0,
            comp1: 1,
            comp7: 0,
            r: 0,
            g: 2,
        };
        assert_eq!(torus_dims(&c), (1, 1));
        let c = CoverCounts {
            n1: 2,
            n7: 0,
            comp1: 1,
            comp7: 0,
            r: 0,
            g: 2,
        };
        assert_eq!(torus_dims(&c), (8, 2));
        let c = CoverCounts {
            n1: 0,
            n7: 1,
            comp1: 0,
            comp7: 1,
            r: 0,
            g: 2,
        };
        assert_eq!(torus_dims(&c), (1, 1));
    }

    #[test]
    fn prym_dimension_and_polarization() {
        assert_eq!(prym_dim(2).unwrap(), 6);
        assert_eq!(polarization_type(2).unwrap(), vec![1, 1, 1, 1, 1, 7]);
        let t3 = polarization_type(3).unwrap();
        assert_eq!(t3.len(), 12);
        assert_eq!(t3.iter().filter(|&&x| x == 7).count(), 2);
        assert_eq!(prym_dim(1).unwrap_err(), CoversError::GenusTooSmall(1));
        for g in 2..6 {
            let t = polarization_type(g).unwrap();
            assert_eq!(t.len() as u32, prym_dim(g).unwrap());
            let product: u64 = t.iter().map(|&x| x as u64).product();
            assert_eq!(product, 7u64.pow(g - 1));
        }
    }

    #[test]
    fn torsion_and_subgroup_counts() {
        assert_eq!(diagonal_torsion_order(7), 49);
        assert_eq!(diagonal_torsion_order(3), 9);
        assert_eq!(order7_subgroup_count_s7(), 120);
        assert_eq!(order7_subgroup_count_zz7_squared(), 8);
    }

    #[test]
    fn classify_smooth_base_is_empty() {
        assert!(classify_fiber(BaseType::Smooth).is_empty());
    }

    #[test]
    fn classify_irreducible_one_node() {
        let classes = classify_fiber(BaseType::IrreducibleOneNode);
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].label, CoverTypeLabel::I);
        assert_eq!(classes[0].iso_classes, 1);
        // the six nonzero offsets; all equivalent under generator change
        assert_eq!(classes[0].raw_count, 6);
        let g = &classes[0].sample.graph;
        assert_eq!(g.arithmetic_genus(), 8);
        assert_eq!(g.num_vertices(), 7);
        assert!(g.genera().iter().all(|&x| x == 1));
    }

    #[test]
    fn classify_rational_two_nodes_is_empty() {
        assert!(classify_fiber(BaseType::RationalTwoNodes).is_empty());
    }

    #[test]
    fn classify_two_elliptic() {
        let classes = classify_fiber(BaseType::TwoElliptic);
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].label, CoverTypeLabel::II);
        assert_eq!(classes[0].iso_classes, 1);
        // connected etale over one component, split over the other; the
        // vertex swap identifies the two choices
        assert_eq!(classes[0].raw_count, 2);
        let g = &classes[0].sample.graph;
        assert_eq!(g.arithmetic_genus(), 8);
        assert_eq!(g.num_vertices(), 8);
        assert_eq!(g.num_edges(), 7);
    }

    #[test]
    fn classify_elliptic_plus_nodal_rational() {
        let classes = classify_fiber(BaseType::EllipticPlusNodalRational);
        assert_eq!(classes.len(), 2);
        let labels: Vec<CoverTypeLabel> = classes.iter().map(|c| c.label).collect();
        assert_eq!(labels, vec![CoverTypeLabel::III, CoverTypeLabel::IV]);
        for c in &classes {
            assert_eq!(c.iso_classes, 1, "type {} must be unique", c.label);
            assert_eq!(c.sample.graph.arithmetic_genus(), 8);
        }
        // type (iii): rational single component with a self-node plus seven
        // elliptic components; the branch data leaves no freedom at all
        let iii = &classes[0];
        assert_eq!(iii.sample.counts.n7, 1);
        assert_eq!(iii.sample.graph.num_vertices(), 8);
        assert_eq!(iii.raw_count, 1);
        // type (iv): fourteen components, all etale; 7 x 6 offset choices
        // collapse to one class under sheet relabeling and generator change
        let iv = &classes[1];
        assert_eq!(iv.sample.counts.n7, 0);
        assert_eq!(iv.sample.graph.num_vertices(), 14);
        assert_eq!(iv.raw_count, 42);
    }

    #[test]
    fn classify_remaining_bases_empty() {
        assert!(classify_fiber(BaseType::TwoNodalRational).is_empty());
        assert!(classify_fiber(BaseType::TwoRationalThreePoints).is_empty());
    }

    #[test]
    fn survivors_satisfy_all_count_identities() {
        for b in BaseType::all() {
            for class in classify_fiber(b) {
                let cover = &class.sample;
                assert!(check_star_star(&cover.counts));
                // arithmetic genus of the cover matches the Hurwitz count
                assert_eq!(cover.graph.arithmetic_genus(), cover_arith_genus(2, 0));
                // toric dimensions agree and match the Betti numbers
                let (dt7, dt1) = torus_dims(&cover.counts);
                assert_eq!(dt7, dt1);
                assert_eq!(dt7, cover.graph.betti1());
                assert_eq!(dt1, b.dual_graph().betti1());
                // normalization Hurwitz identity: sum (g_i - 1) upstairs
                // equals 7 sum (g_v - 1) downstairs + 6 n7
                let up: i64 = cover.graph.genera().iter().map(|&g| g as i64 - 1).sum();
                let down: i64 = b.dual_graph().genera().iter().map(|&g| g as i64 - 1).sum();
                assert_eq!(up, 7 * down + 6 * cover.counts.n7 as i64);
            }
        }
    }

    #[test]
    fn all_index7_assignment_is_rejected_only_by_the_fiber_lemma() {
        // on the elliptic + nodal rational base, making both nodes index 7
        // yields a legitimate cover whose counts pass; only the index-1-node
        // requirement rejects it
        let cover = synthesize(
            BaseType::EllipticPlusNodalRational,
            &[7, 7],
            &[false, false],
            &[0, 0],
        )
        .unwrap();
        assert!(check_star_star(&cover.counts));
        assert!(cover.graph.is_connected());
        assert_eq!(reject_reason(&cover), Some(RejectReason::NoIndexOneNode));
    }

    #[test]
    fn reversed_assignment_has_no_cover_at_all() {
        // connecting node index 7, self-node index 1 on the elliptic plus
        // nodal rational base: the rational component would have to be
        // totally ramified over a single point, which no curve does
        let result = synthesize(
            BaseType::EllipticPlusNodalRational,
            &[7, 1],
            &[false, false],
            &[0, 0],
        );
        assert_eq!(result.unwrap_err(), RejectReason::ImpossibleComponent);
    }

    #[test]
    fn mixed_index_self_node_rejected_by_lemma() {
        // one index-7 and one index-1 self-node on the two-node rational
        // base: the component has nodes of both indices, so the index-1
        // node must meet another component, and here it does not
        let cover = synthesize(BaseType::RationalTwoNodes, &[7, 1], &[false], &[0, 0]).unwrap();
        assert!(cover.graph.is_connected());
        assert_eq!(
            reject_reason(&cover),
            Some(RejectReason::MixedIndexSelfNode)
        );
    }

    #[test]
    fn disconnected_split_cover_rejected() {
        // split over both elliptic components: 14 vertices, 7 edges
        let cover = synthesize(BaseType::TwoElliptic, &[1], &[true, true], &[0]).unwrap();
        assert_eq!(reject_reason(&cover), Some(RejectReason::Disconnected));
    }

    #[test]
    fn torus_factor_detected_on_etale_rational_cover() {
        // rational base with two self-nodes, all split: connected for
        // offsets (1, 0) but acquires a torus factor
        let cover = synthesize(BaseType::RationalTwoNodes, &[1, 1], &[true], &[1, 0]).unwrap();
        assert!(cover.graph.is_connected());
        assert_eq!(reject_reason(&cover), Some(RejectReason::CountsMismatch));
        assert!(cover.graph.betti1() > BaseType::RationalTwoNodes.dual_graph().betti1());
    }

    #[test]
    fn catalog_matches_the_classification_table() {
        let catalog = fiber_catalog();
        let labels = catalog.all_labels();
        assert_eq!(
            labels,
            vec![
                CoverTypeLabel::I,
                CoverTypeLabel::II,
                CoverTypeLabel::III,
                CoverTypeLabel::IV
            ]
        );
        let nonempty: Vec<BaseType> = catalog
            .by_base
            .iter()
            .filter(|(_, c)| !c.is_empty())
            .map(|(b, _)| *b)
            .collect();
        assert_eq!(
            nonempty,
            vec![
                BaseType::IrreducibleOneNode,
                BaseType::TwoElliptic,
                BaseType::EllipticPlusNodalRational
            ]
        );
        assert_eq!(catalog.s1, vec![CoverTypeLabel::I, CoverTypeLabel::IV]);
        assert_eq!(
            catalog.s2,
            vec![CoverTypeLabel::II, CoverTypeLabel::III, CoverTypeLabel::IV]
        );
        assert_eq!(catalog.s1_intersect_s2(), vec![CoverTypeLabel::IV]);
        assert_eq!(catalog.type_ii_candidate_count, 8);
    }

    #[test]
    fn parametrization_marks_are_consistent() {
        let catalog = fiber_catalog();
        assert_eq!(CoverTypeLabel::I.parametrization(), Parametrization::Curve);
        assert_eq!(
            CoverTypeLabel::II.parametrization(),
            Parametrization::EllipticWithSubgroup
        );
        for label in [CoverTypeLabel::III, CoverTypeLabel::IV] {
            assert_eq!(label.parametrization(), Parametrization::UniquePoint);
            // a single point in the fiber forces a single isomorphism class
            assert_eq!(catalog.class(label).unwrap().iso_classes, 1);
        }
    }

    #[test]
    fn contraction_reaches_type_i_from_type_iv_only() {
        let catalog = fiber_catalog();
        let g = |l| catalog.class(l).unwrap().sample.graph.clone();
        // collapsing the seven attachment edges of the type (iv) cover
        // merges each rational component with its elliptic tail
        assert!(contracts_to(&g(CoverTypeLabel::IV), &g(CoverTypeLabel::I)));
        assert!(!contracts_to(&g(CoverTypeLabel::II), &g(CoverTypeLabel::I)));
        assert!(!contracts_to(
            &g(CoverTypeLabel::III),
            &g(CoverTypeLabel::I)
        ));
        assert!(contracts_to(
            &g(CoverTypeLabel::III),
            &g(CoverTypeLabel::II)
        ));
        assert!(contracts_to(&g(CoverTypeLabel::IV), &g(CoverTypeLabel::II)));
        assert!(!contracts_to(&g(CoverTypeLabel::I), &g(CoverTypeLabel::II)));
    }

    #[test]
    fn contract_self_loop_raises_genus() {
        let g = DualGraph::new(vec![0], vec![(0, 0)]).unwrap();
        let contracted = contract_edges(&g, &[true]);
        assert_eq!(contracted.num_vertices(), 1);
        assert_eq!(contracted.genus(0), 1);
        assert_eq!(contracted.num_edges(), 0);
    }

    #[test]
    fn fundamental_subgraph_on_seven_cycle() {
        let g = cycle_graph(7, 1);
        let perm: Vec<usize> = (0..7).map(|v| (v + 1) % 7).collect();
        let sigma = GraphAutomorphism::from_vertex_perm(&g, perm).unwrap();
        let s = fundamental_subgraph(&g, &sigma).unwrap();
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn fundamental_subgraph_on_fourteen_cycle() {
        // rotation by two: a fundamental domain needs two adjacent vertices
        let g = cycle_graph(14, 0);
        let perm: Vec<usize> = (0..14).map(|v| (v + 2) % 14).collect();
        let sigma = GraphAutomorphism::from_vertex_perm(&g, perm).unwrap();
        let s = fundamental_subgraph(&g, &sigma).unwrap();
        assert_eq!(s.len(), 2);
        verify_fundamental_postconditions(&g, &sigma, &s);
    }

    #[test]
    fn fundamental_subgraph_on_joined_matching() {
        // seven disjoint edges (2k, 2k+1) joined into a 14-cycle by edges
        // (2k+1, 2k+2); sigma shifts by two
        let mut edges: Vec<(usize, usize)> = (0..7).map(|k| (2 * k, 2 * k + 1)).collect();
        edges.extend((0..7).map(|k| (2 * k + 1, (2 * k + 2) % 14)));
        let g = DualGraph::new(vec![0; 14], edges).unwrap();
        let perm: Vec<usize> = (0..14).map(|v| (v + 2) % 14).collect();
        let sigma = GraphAutomorphism::from_vertex_perm(&g, perm).unwrap();
        let s = fundamental_subgraph(&g, &sigma).unwrap();
        assert_eq!(s.len(), 2);
        verify_fundamental_postconditions(&g, &sigma, &s);
    }

    pub(super) fn verify_fundamental_postconditions(
        g: &DualGraph,
        sigma: &GraphAutomorphism,
        s: &[usize],
    ) {
        use std::collections::BTreeSet;
        let set: BTreeSet<usize> = s.iter().copied().collect();
        let image: BTreeSet<usize> = s.iter().map(|&v| sigma.apply_vertex(v)).collect();
        assert!(set.is_disjoint(&image), "S meets sigma(S)");
        let mut union = set.clone();
        let mut cur: Vec<usize> = s.to_vec();
        for _ in 0..6 {
            cur = cur.iter().map(|&v| sigma.apply_vertex(v)).collect();
            union.extend(cur.iter().copied());
        }
        assert_eq!(union.len(), g.num_vertices(), "orbit of S misses vertices");
        // connectivity of the induced subgraph
        let verts: Vec<usize> = s.to_vec();
        let mut seen = vec![false; verts.len()];
        seen[0] = true;
        let mut frontier = vec![verts[0]];
        while let Some(v) = frontier.pop() {
            for &(a, b) in g.edges() {
                for (x, y) in [(a, b), (b, a)] {
                    if x == v {
                        if let Some(pos) = verts.iter().position(|&w| w == y) {
                            if !seen[pos] {
                                seen[pos] = true;
                                frontier.push(y);
                            }
                        }
                    }
                }
            }
        }
        assert!(seen.iter().all(|&x| x), "S is not connected");
    }

    #[test]
    fn fundamental_subgraph_rejects_bad_inputs() {
        let g = cycle_graph(7, 0);
        let id: Vec<usize> = (0..7).collect();
        let sigma = GraphAutomorphism::from_vertex_perm(&g, id).unwrap();
        assert_eq!(
            fundamental_subgraph(&g, &sigma).unwrap_err(),
            CoversError::IdentityAutomorphism
        );
        // disconnected graph
        let h = DualGraph::new(vec![0; 14], (0..7).map(|k| (k, (k + 1) % 7)).collect()).unwrap();
        let perm: Vec<usize> = (0..14)
            .map(|v| {
                if v < 7 {
                    (v + 1) % 7
                } else {
                    7 + (v - 7 + 1) % 7
                }
            })
            .collect();
        let sigma = GraphAutomorphism::from_vertex_perm(&h, perm).unwrap();
        assert_eq!(
            fundamental_subgraph(&h, &sigma).unwrap_err(),
            CoversError::NotConnected
        );
    }

    #[test]
    fn randomized_fundamental_subgraph_postconditions() {
        let mut rng = SplitMix64::new(0x5eed);
        for _ in 0..25 {
            let (g, sigma) = random_sigma_symmetric_graph(&mut rng, 3);
            assert!(g.num_vertices() <= 21);
            let s = fundamental_subgraph(&g, &sigma).unwrap();
            verify_fundamental_postconditions(&g, &sigma, &s);
        }
    }

    #[test]
    fn automorphism_validation() {
        // order must divide 7: a transposition has order 2
        let g = DualGraph::new(vec![1, 1], vec![(0, 1)]).unwrap();
        assert_eq!(
            GraphAutomorphism::from_vertex_perm(&g, vec![1, 0]).unwrap_err(),
            CoversError::OrderNotDividingSeven
        );
        // the identity is allowed by the type (order 1)
        let id = GraphAutomorphism::from_vertex_perm(&g, vec![0, 1]).unwrap();
        assert!(id.is_identity());
        // a rotation of the 7-cycle has order 7 with no fixed vertex
        let c = cycle_graph(7, 0);
        let perm: Vec<usize> = (0..7).map(|v| (v + 1) % 7).collect();
        let rot = GraphAutomorphism::from_vertex_perm(&c, perm).unwrap();
        assert!(rot.is_fixed_point_free());
        // genus must be preserved
        let h = DualGraph::new(vec![1, 0], vec![(0, 1)]).unwrap();
        assert_eq!(
            GraphAutomorphism::from_vertex_perm(&h, vec![1, 0]).unwrap_err(),
            CoversError::GenusMismatch { vertex: 0 }
        );
    }
}
