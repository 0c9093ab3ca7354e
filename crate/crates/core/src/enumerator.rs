//! Brute-force census of 2-cell embeddings of small multigraphs.
//!
//! Every embedding is a T-rotation system: one cyclic order of edge-ends per
//! vertex (the first dart of each vertex anchored) together with a twist bit
//! on every co-tree edge of a fixed BFS spanning tree. Faces are counted by
//! face tracing and the surface follows from Euler's formula.
//!
//! With tree edges untwisted the embedding is orientable exactly when every
//! co-tree bit is zero, since each fundamental cycle carries the twist parity
//! of its co-tree edge.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analytics::{EmbeddingDistribution, EmbeddingKind};
use crate::poly::IntPolynomial;

/// Default ceiling on the number of embeddings a single census may visit.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("edge {edge} has endpoint {endpoint} outside 0..{vertex_count}")]
    EndpointOutOfRange { edge: usize, endpoint: usize, vertex_count: usize },
    #[error("graph is disconnected: vertex {unreached} is not reachable from vertex 0")]
    Disconnected { unreached: usize },
    #[error("census needs {required} embeddings, budget is {budget}")]
    BudgetExceeded { required: BigInt, budget: u64 },
    #[error("vertex {0} is not a vertex of the graph")]
    BadVertex(usize),
    #[error("edge {0} is not an edge of the graph")]
    BadEdge(usize),
}

/// Connected graph with loops and multiple edges allowed.
///
/// Edge `e = (u, v)` owns two darts: `2e` at `u` and `2e + 1` at `v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct MultiGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    vertex_count: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<RawGraph> for MultiGraph {
    type Error = EnumerationError;

    fn try_from(raw: RawGraph) -> Result<Self, Self::Error> {
        MultiGraph::new(raw.vertex_count, raw.edges.into_iter().map(|[u, v]| (u, v)).collect())
    }
}

impl From<MultiGraph> for RawGraph {
    fn from(g: MultiGraph) -> Self {
        RawGraph { vertex_count: g.vertex_count, edges: g.edges.into_iter().map(|(u, v)| [u, v]).collect() }
    }
}

impl MultiGraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self, EnumerationError> {
        if vertex_count == 0 {
            return Err(EnumerationError::Empty);
        }
        for (i, &(u, v)) in edges.iter().enumerate() {
            for endpoint in [u, v] {
                if endpoint >= vertex_count {
                    return Err(EnumerationError::EndpointOutOfRange { edge: i, endpoint, vertex_count });
                }
            }
        }
        let graph = MultiGraph { vertex_count, edges };
        let (_, reached) = graph.bfs_tree();
        if let Some(unreached) = reached.iter().position(|r| !r) {
            return Err(EnumerationError::Disconnected { unreached });
        }
        Ok(graph)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Cycle rank `|E| − |V| + 1`.
    pub fn cycle_rank(&self) -> usize {
        self.edges.len() + 1 - self.vertex_count
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Number of pure rotation systems, `∏ (deg(v) − 1)!`.
    pub fn rotation_count(&self) -> BigInt {
        self.degrees().into_iter().map(|d| factorial(d.saturating_sub(1))).fold(BigInt::one(), |acc, f| acc * f)
    }

    /// Number of T-rotation systems, `∏ (deg(v) − 1)! · 2^β`.
    pub fn general_rotation_count(&self) -> BigInt {
        self.rotation_count() << self.cycle_rank()
    }

    fn bfs_tree(&self) -> (Vec<usize>, Vec<bool>) {
        let mut incident = vec![Vec::new(); self.vertex_count];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            incident[u].push(e);
            if u != v {
                incident[v].push(e);
            }
        }
        let mut reached = vec![false; self.vertex_count];
        let mut tree = Vec::new();
        let mut queue = VecDeque::from([0]);
        reached[0] = true;
        while let Some(w) = queue.pop_front() {
            for &e in &incident[w] {
                let (u, v) = self.edges[e];
                let other = if u == w { v } else { u };
                if !reached[other] {
                    reached[other] = true;
                    tree.push(e);
                    queue.push_back(other);
                }
            }
        }
        tree.sort_unstable();
        (tree, reached)
    }

    /// Disjoint union followed by identification of vertex pairs
    /// `(self_vertex, other_vertex)`. Returns the merged graph and the new
    /// index of every vertex of `other`.
    pub fn amalgamate(&self, other: &MultiGraph, glue: &[(usize, usize)]) -> Result<(MultiGraph, Vec<usize>), EnumerationError> {
        let mut map: Vec<Option<usize>> = vec![None; other.vertex_count];
        for &(mine, theirs) in glue {
            if mine >= self.vertex_count {
                return Err(EnumerationError::BadVertex(mine));
            }
            if theirs >= other.vertex_count {
                return Err(EnumerationError::BadVertex(theirs));
            }
            map[theirs] = Some(mine);
        }
        let mut next = self.vertex_count;
        let map: Vec<usize> = map
            .into_iter()
            .map(|m| {
                m.unwrap_or_else(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect();
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (map[u], map[v])));
        Ok((MultiGraph::new(next, edges)?, map))
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Edges of the lowest-index BFS spanning tree rooted at vertex 0.
pub fn spanning_tree(graph: &MultiGraph) -> Vec<usize> {
    graph.bfs_tree().0
}

/// Cyclic order of darts at every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationSystem {
    pub rotations: Vec<Vec<usize>>,
}

/// Twist bit per edge; tree edges are expected to stay untwisted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistAssignment {
    pub twisted: Vec<bool>,
}

impl TwistAssignment {
    pub fn untwisted(graph: &MultiGraph) -> Self {
        TwistAssignment { twisted: vec![false; graph.edge_count()] }
    }

    /// Sets co-tree bits from `mask` (bit `i` = i-th co-tree edge in index order).
    pub fn from_cotree_mask(graph: &MultiGraph, mask: u64) -> Self {
        let tree = spanning_tree(graph);
        let mut twisted = vec![false; graph.edge_count()];
        let cotree = (0..graph.edge_count()).filter(|e| tree.binary_search(e).is_err());
        for (i, e) in cotree.enumerate() {
            twisted[e] = mask >> i & 1 == 1;
        }
        TwistAssignment { twisted }
    }
}

/// Orbits of the face-tracing walk on directed edge-side states.
///
/// A state is `2·dart + ε`, where `ε = 1` means the local orientation has been
/// flipped an odd number of times. Every face shows up as exactly two orbits,
/// one per traversal direction.
#[derive(Clone, Debug)]
pub struct FaceTrace {
    pub orbit_of_state: Vec<u32>,
    pub orbit_count: usize,
}

impl FaceTrace {
    pub fn face_count(&self) -> usize {
        self.orbit_count / 2
    }

    /// Length of every traced orbit; the total is `4·|E|`.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        let mut lengths = vec![0; self.orbit_count];
        for &o in &self.orbit_of_state {
            lengths[o as usize] += 1;
        }
        lengths
    }
}

pub fn face_trace(graph: &MultiGraph, rho: &RotationSystem, twist: &TwistAssignment) -> FaceTrace {
    let darts = 2 * graph.edge_count();
    let mut succ = vec![0; darts];
    let mut pred = vec![0; darts];
    for order in &rho.rotations {
        let len = order.len();
        for (i, &d) in order.iter().enumerate() {
            succ[d] = order[(i + 1) % len];
            pred[d] = order[(i + len - 1) % len];
        }
    }
    let mut orbit = vec![u32::MAX; 2 * darts];
    let orbit_count = trace_into(&succ, &pred, &twist.twisted, &mut orbit);
    FaceTrace { orbit_of_state: orbit, orbit_count }
}

fn trace_into(succ: &[usize], pred: &[usize], twisted: &[bool], orbit: &mut [u32]) -> usize {
    orbit.fill(u32::MAX);
    let mut count = 0u32;
    for start in 0..orbit.len() {
        if orbit[start] != u32::MAX {
            continue;
        }
        let mut state = start;
        while orbit[state] == u32::MAX {
            orbit[state] = count;
            let dart = state >> 1;
            let eps = (state & 1) ^ usize::from(twisted[dart >> 1]);
            let arrive = dart ^ 1;
            let next = if eps == 0 { succ[arrive] } else { pred[arrive] };
            state = next << 1 | eps;
        }
        count += 1;
    }
    count as usize
}

/// How the embeddings of a rooted graph are split into partial polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Partition {
    /// A single class: the full distribution.
    Whole,
    /// `[D, S]`: the two roots lie on different face boundaries / on a common one.
    SharedFace { u: usize, v: usize },
    /// `[different, same]`: the two sides of the edge lie on different faces / the same face.
    EdgeSides { edge: usize },
    /// Class `i` holds embeddings whose roots, grouped by shared faces, form
    /// `len − i` blocks: class 0 keeps every root apart, the last class joins all.
    FaceBlocks { vertices: Vec<usize> },
}

impl Partition {
    pub fn class_count(&self) -> usize {
        match self {
            Partition::Whole => 1,
            Partition::SharedFace { .. } | Partition::EdgeSides { .. } => 2,
            Partition::FaceBlocks { vertices } => vertices.len().max(1),
        }
    }

    fn validate(&self, graph: &MultiGraph) -> Result<(), EnumerationError> {
        let check = |v: usize| if v < graph.vertex_count() { Ok(()) } else { Err(EnumerationError::BadVertex(v)) };
        match self {
            Partition::Whole => Ok(()),
            Partition::SharedFace { u, v } => check(*u).and(check(*v)),
            Partition::EdgeSides { edge } => {
                if *edge < graph.edge_count() {
                    Ok(())
                } else {
                    Err(EnumerationError::BadEdge(*edge))
                }
            }
            Partition::FaceBlocks { vertices } => vertices.iter().try_for_each(|&v| check(v)),
        }
    }
}

/// Read-only view of one traced embedding.
pub struct EmbeddingView<'a> {
    pub face_count: usize,
    pub orientable: bool,
    orbit: &'a [u32],
    vertex_darts: &'a [Vec<usize>],
}

impl EmbeddingView<'_> {
    fn orbits_at(&self, v: usize) -> impl Iterator<Item = u32> + '_ {
        self.vertex_darts[v].iter().flat_map(|&d| [self.orbit[2 * d], self.orbit[2 * d + 1]])
    }

    /// Whether some face boundary walk passes through both vertices.
    pub fn shares_face(&self, u: usize, v: usize) -> bool {
        self.orbits_at(u).any(|o| self.orbits_at(v).any(|p| p == o))
    }

    /// Whether both sides of `edge` belong to one face.
    pub fn edge_sides_same_face(&self, edge: usize) -> bool {
        let mut seen: Vec<u32> = (4 * edge..4 * edge + 4).map(|s| self.orbit[s]).collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len() <= 2
    }

    pub fn classify(&self, partition: &Partition) -> usize {
        match partition {
            Partition::Whole => 0,
            Partition::SharedFace { u, v } => usize::from(self.shares_face(*u, *v)),
            Partition::EdgeSides { edge } => usize::from(self.edge_sides_same_face(*edge)),
            Partition::FaceBlocks { vertices } => {
                let n = vertices.len();
                let mut parent: Vec<usize> = (0..n).collect();
                fn find(parent: &mut [usize], mut i: usize) -> usize {
                    while parent[i] != i {
                        parent[i] = parent[parent[i]];
                        i = parent[i];
                    }
                    i
                }
                let mut blocks = n;
                for i in 0..n {
                    for j in i + 1..n {
                        if self.shares_face(vertices[i], vertices[j]) {
                            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                            if a != b {
                                parent[a] = b;
                                blocks -= 1;
                            }
                        }
                    }
                }
                n - blocks
            }
        }
    }
}

struct Layout {
    vertex_count: usize,
    edge_count: usize,
    vertex_darts: Vec<Vec<usize>>,
    options: Vec<Vec<Vec<usize>>>,
    cotree: Vec<usize>,
}

impl Layout {
    fn new(graph: &MultiGraph) -> Self {
        let mut vertex_darts = vec![Vec::new(); graph.vertex_count()];
        for (e, &(u, v)) in graph.edges().iter().enumerate() {
            vertex_darts[u].push(2 * e);
            vertex_darts[v].push(2 * e + 1);
        }
        let options = vertex_darts.iter().map(|darts| cyclic_orders(darts)).collect();
        let tree = spanning_tree(graph);
        let cotree = (0..graph.edge_count()).filter(|e| tree.binary_search(e).is_err()).collect();
        Layout { vertex_count: graph.vertex_count(), edge_count: graph.edge_count(), vertex_darts, options, cotree }
    }

    fn rotation_total(&self) -> u64 {
        self.options.iter().map(|o| o.len() as u64).product()
    }

    fn install(&self, v: usize, choice: usize, succ: &mut [usize], pred: &mut [usize]) {
        let order = &self.options[v][choice];
        let len = order.len();
        for (i, &d) in order.iter().enumerate() {
            succ[d] = order[(i + 1) % len];
            pred[d] = order[(i + len - 1) % len];
        }
    }

    /// Visits rotation systems `start..end` (mixed-radix order, vertex 0 fastest),
    /// each with every co-tree twist mask when `twists` is set.
    fn run<A>(&self, start: u64, end: u64, twists: bool, acc: &mut A, step: &impl Fn(&mut A, &EmbeddingView)) {
        let darts = 2 * self.edge_count;
        let mut succ = vec![0; darts];
        let mut pred = vec![0; darts];
        let mut digits = vec![0usize; self.vertex_count];
        let mut rest = start;
        for (v, digit) in digits.iter_mut().enumerate() {
            let radix = self.options[v].len() as u64;
            *digit = (rest % radix) as usize;
            rest /= radix;
            self.install(v, *digit, &mut succ, &mut pred);
        }
        let mut twisted = vec![false; self.edge_count];
        let mut orbit = vec![u32::MAX; 2 * darts];
        let masks: u64 = if twists { 1 << self.cotree.len() } else { 1 };
        for _ in start..end {
            for mask in 0..masks {
                for (i, &e) in self.cotree.iter().enumerate() {
                    twisted[e] = mask >> i & 1 == 1;
                }
                let orbit_count = trace_into(&succ, &pred, &twisted, &mut orbit);
                let view =
                    EmbeddingView { face_count: orbit_count / 2, orientable: mask == 0, orbit: &orbit, vertex_darts: &self.vertex_darts };
                step(acc, &view);
            }
            for (v, digit) in digits.iter_mut().enumerate() {
                *digit += 1;
                if *digit == self.options[v].len() {
                    *digit = 0;
                    self.install(v, 0, &mut succ, &mut pred);
                } else {
                    self.install(v, *digit, &mut succ, &mut pred);
                    break;
                }
            }
        }
    }
}

/// All cyclic orders of `darts` with the first dart anchored.
fn cyclic_orders(darts: &[usize]) -> Vec<Vec<usize>> {
    let Some((&first, rest)) = darts.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    let mut current = vec![first];
    let mut used = vec![false; rest.len()];
    fn extend(rest: &[usize], used: &mut [bool], current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == rest.len() + 1 {
            out.push(current.clone());
            return;
        }
        for i in 0..rest.len() {
            if !used[i] {
                used[i] = true;
                current.push(rest[i]);
                extend(rest, used, current, out);
                current.pop();
                used[i] = false;
            }
        }
    }
    extend(rest, &mut used, &mut current, &mut out);
    out
}

fn fold_embeddings<A, I, S, M>(graph: &MultiGraph, twists: bool, budget: u64, init: I, step: S, merge: M) -> Result<A, EnumerationError>
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    S: Fn(&mut A, &EmbeddingView) + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    let required = if twists { graph.general_rotation_count() } else { graph.rotation_count() };
    if required > BigInt::from(budget) {
        return Err(EnumerationError::BudgetExceeded { required, budget });
    }
    let layout = Layout::new(graph);
    let total = layout.rotation_total();
    let chunks = total.clamp(1, 256);
    let bounds = move |c: u64| (total * c / chunks, total * (c + 1) / chunks);
    let work = |c: u64| {
        let (lo, hi) = bounds(c);
        let mut acc = init();
        layout.run(lo, hi, twists, &mut acc, &step);
        acc
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        Ok((0..chunks).into_par_iter().map(work).reduce(&init, &merge))
    }
    #[cfg(not(feature = "parallel"))]
    {
        Ok((0..chunks).map(work).fold(init(), &merge))
    }
}

type Histogram = Vec<Vec<u64>>;

fn bump(hist: &mut Histogram, class: usize, index: usize) {
    let row = &mut hist[class];
    if row.len() <= index {
        row.resize(index + 1, 0);
    }
    row[index] += 1;
}

fn merge_hist(mut a: Histogram, b: Histogram) -> Histogram {
    for (ra, rb) in a.iter_mut().zip(b) {
        if ra.len() < rb.len() {
            ra.resize(rb.len(), 0);
        }
        for (x, y) in ra.iter_mut().zip(rb) {
            *x += y;
        }
    }
    a
}

fn to_poly(row: &[u64]) -> IntPolynomial {
    IntPolynomial::new(row.iter().map(|&c| BigInt::from(c)).collect())
}

fn euler_genus(graph: &MultiGraph, faces: usize) -> usize {
    let chi = graph.vertex_count() as isize - graph.edge_count() as isize + faces as isize;
    let g = 2 - chi;
    debug_assert!(g >= 0, "negative Euler genus");
    g as usize
}

/// Genus, Euler-genus and crosscap-number polynomials from one pass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub genus: IntPolynomial,
    pub euler: IntPolynomial,
    pub crosscap: IntPolynomial,
}

pub fn genus_polynomial(graph: &MultiGraph, budget: u64) -> Result<IntPolynomial, EnumerationError> {
    let hist = fold_embeddings(
        graph,
        false,
        budget,
        || vec![Vec::new()],
        |h: &mut Histogram, view| {
            let eg = euler_genus(graph, view.face_count);
            debug_assert!(eg.is_multiple_of(2));
            bump(h, 0, eg / 2);
        },
        merge_hist,
    )?;
    Ok(to_poly(&hist[0]))
}

pub fn genus_distribution(graph: &MultiGraph, budget: u64) -> Result<EmbeddingDistribution, EnumerationError> {
    let poly = genus_polynomial(graph, budget)?;
    Ok(EmbeddingDistribution::from_polynomial(&poly, EmbeddingKind::Genus, 0).expect("a connected graph has at least one embedding"))
}

/// Full census over all T-rotation systems.
pub fn census(graph: &MultiGraph, budget: u64) -> Result<Census, EnumerationError> {
    // rows: 0 = genus, 1 = Euler genus, 2 = crosscap number
    let hist = fold_embeddings(
        graph,
        true,
        budget,
        || vec![Vec::new(); 3],
        |h: &mut Histogram, view| {
            let eg = euler_genus(graph, view.face_count);
            bump(h, 1, eg);
            if view.orientable {
                bump(h, 0, eg / 2);
            } else {
                bump(h, 2, eg);
            }
        },
        merge_hist,
    )?;
    Ok(Census { genus: to_poly(&hist[0]), euler: to_poly(&hist[1]), crosscap: to_poly(&hist[2]) })
}

/// Euler-genus and crosscap-number distributions. The crosscap polynomial is
/// zero for trees, which have no nonorientable embeddings.
pub fn euler_and_crosscap(graph: &MultiGraph, budget: u64) -> Result<(EmbeddingDistribution, IntPolynomial), EnumerationError> {
    let c = census(graph, budget)?;
    let euler = EmbeddingDistribution::from_polynomial(&c.euler, EmbeddingKind::EulerGenus, 0)
        .expect("a connected graph has at least one embedding");
    Ok((euler, c.crosscap))
}

/// Which surface family a census counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceKind {
    /// Orientable embeddings indexed by genus.
    Genus,
    /// All embeddings indexed by Euler genus.
    #[serde(alias = "euler_genus")]
    Euler,
}

/// Partial polynomials: one polynomial per class of `partition`.
pub fn partial_polynomials(
    graph: &MultiGraph,
    partition: &Partition,
    surface: SurfaceKind,
    budget: u64,
) -> Result<Vec<IntPolynomial>, EnumerationError> {
    partition.validate(graph)?;
    let classes = partition.class_count();
    let hist = fold_embeddings(
        graph,
        surface == SurfaceKind::Euler,
        budget,
        || vec![Vec::new(); classes],
        |h: &mut Histogram, view| {
            let eg = euler_genus(graph, view.face_count);
            let index = if surface == SurfaceKind::Genus { eg / 2 } else { eg };
            bump(h, view.classify(partition), index);
        },
        merge_hist,
    )?;
    Ok(hist.iter().map(|row| to_poly(row)).collect())
}

/// `(D_H, S_H)`: embeddings whose roots lie on different / a common face boundary.
pub fn partial_distributions(
    graph: &MultiGraph,
    root_u: usize,
    root_v: usize,
    surface: SurfaceKind,
    budget: u64,
) -> Result<(IntPolynomial, IntPolynomial), EnumerationError> {
    let mut parts = partial_polynomials(graph, &Partition::SharedFace { u: root_u, v: root_v }, surface, budget)?;
    let s = parts.pop().unwrap_or_default();
    let d = parts.pop().unwrap_or_default();
    Ok((d, s))
}

pub fn surface_polynomial(graph: &MultiGraph, surface: SurfaceKind, budget: u64) -> Result<IntPolynomial, EnumerationError> {
    match surface {
        SurfaceKind::Genus => genus_polynomial(graph, budget),
        SurfaceKind::Euler => Ok(census(graph, budget)?.euler),
    }
}
