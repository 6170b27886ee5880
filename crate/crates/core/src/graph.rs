//! Dual graphs of nodal curves.
//!
//! A [`DualGraph`] has one vertex per irreducible component (weighted by the
//! geometric genus of its normalization) and one edge per node. Loops are
//! self-nodes of a component. Parallel edges stay individually addressable
//! through their index in the edge list, which is how a [`NodeSet`] names an
//! exact set of nodes.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{determinant, IntMatrix};
use crate::scalar::ExactInt;

/// Enumeration caps. Exceeding one is an error, never a silent truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest vertex count for which connected subcurves are enumerated.
    pub max_subcurve_vertices: usize,
    /// Largest edge count for which all node subsets are enumerated.
    pub max_strata_edges: usize,
    /// Largest number of candidate multidegrees scanned by box enumeration.
    pub max_box_points: u64,
    /// Chip-firing moves allowed before semistabilization falls back to
    /// coset search.
    pub max_firings: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_subcurve_vertices: 20,
            max_strata_edges: 16,
            max_box_points: 5_000_000,
            max_firings: 10_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub name: String,
    pub geometric_genus: u32,
}

impl Vertex {
    pub fn new(name: impl Into<String>, geometric_genus: u32) -> Self {
        Vertex { name: name.into(), geometric_genus }
    }
}

/// An edge between two vertex indices, stored with `a <= b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
}

impl Edge {
    pub fn new(u: usize, v: usize) -> Self {
        Edge { a: u.min(v), b: u.max(v) }
    }

    pub fn is_loop(&self) -> bool {
        self.a == self.b
    }

    pub fn touches(&self, v: usize) -> bool {
        self.a == v || self.b == v
    }

    pub fn other(&self, v: usize) -> usize {
        if self.a == v {
            self.b
        } else {
            self.a
        }
    }
}

/// Vertex-weighted multigraph with loops. Always connected and nonempty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

impl DualGraph {
    /// Builds and validates a dual graph from vertex indices.
    pub fn new(vertices: Vec<Vertex>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let g = Self::new_unchecked_connectivity(vertices, edges)?;
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    fn new_unchecked_connectivity(vertices: Vec<Vertex>, edges: Vec<(usize, usize)>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.name.as_str()) {
                return Err(Error::DuplicateVertex(v.name.clone()));
            }
        }
        let n = vertices.len();
        let mut out = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexIndex(x));
                }
            }
            out.push(Edge::new(u, v));
        }
        Ok(DualGraph { vertices, edges: out })
    }

    /// Builds a dual graph whose edges name their endpoints.
    pub fn from_names<S: AsRef<str>>(vertices: Vec<Vertex>, edges: &[(S, S)]) -> Result<Self> {
        let lookup = |name: &str| {
            vertices
                .iter()
                .position(|v| v.name == name)
                .ok_or_else(|| Error::UnknownVertex(name.to_string()))
        };
        let idx = edges
            .iter()
            .map(|(a, b)| Ok((lookup(a.as_ref())?, lookup(b.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(vertices, idx)
    }

    /// Two smooth components `C1`, `C2` meeting in `delta` nodes.
    pub fn vine(g1: u32, g2: u32, delta: usize) -> Result<Self> {
        Self::new(
            vec![Vertex::new("C1", g1), Vertex::new("C2", g2)],
            vec![(0, 1); delta],
        )
    }

    /// One component `C` of geometric genus `genus` with `loops` self-nodes.
    pub fn irreducible(genus: u32, loops: usize) -> Self {
        DualGraph { vertices: vec![Vertex::new("C", genus)], edges: vec![Edge::new(0, 0); loops] }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v.name == name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn name(&self, v: usize) -> &str {
        &self.vertices[v].name
    }

    pub fn loops_at(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.is_loop() && e.a == v).count()
    }

    /// Number of edges joining `u` and `v` (`u != v`).
    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        let e = Edge::new(u, v);
        self.edges.iter().filter(|&&x| x == e).count()
    }

    /// Relabels vertices: old vertex `i` moves to position `perm[i]`.
    /// Edge order is preserved.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.vertex_count() {
            return Err(Error::LengthMismatch { expected: self.vertex_count(), found: perm.len() });
        }
        let mut slots: Vec<Option<Vertex>> = vec![None; perm.len()];
        for (i, &p) in perm.iter().enumerate() {
            let slot = slots.get_mut(p).ok_or(Error::VertexIndex(p))?;
            *slot = Some(self.vertices[i].clone());
        }
        let vertices = slots
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Internal("not a permutation".into()))?;
        let edges = self.edges.iter().map(|e| (perm[e.a], perm[e.b])).collect();
        Self::new(vertices, edges)
    }

    fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        let full = (0..n).collect::<Vec<_>>();
        self.induced_is_connected(&full)
    }

    /// Whether the subgraph induced on `subset` is connected (and nonempty).
    pub(crate) fn induced_is_connected(&self, subset: &[usize]) -> bool {
        let Some(&start) = subset.first() else {
            return false;
        };
        let n = self.vertex_count();
        let mut inside = vec![false; n];
        for &v in subset {
            inside[v] = true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![start];
        seen[start] = true;
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for e in self.edges.iter().filter(|e| e.touches(v)) {
                let w = e.other(v);
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == subset.len()
    }

    fn mask_is_connected(&self, mask: u64) -> bool {
        self.induced_is_connected(&mask_to_vertices(mask))
    }

    /// Edges with both endpoints in `mask`, loops included.
    pub(crate) fn edges_inside_mask(&self, mask: u64) -> usize {
        self.edges
            .iter()
            .filter(|e| mask >> e.a & 1 == 1 && mask >> e.b & 1 == 1)
            .count()
    }

    pub(crate) fn genus_sum_mask(&self, mask: u64) -> i64 {
        mask_to_vertices(mask)
            .into_iter()
            .map(|v| i64::from(self.vertices[v].geometric_genus))
            .sum()
    }

    /// Arithmetic genus of the (connected) subcurve on `mask`.
    pub(crate) fn mask_pa(&self, mask: u64) -> i64 {
        self.genus_sum_mask(mask) + self.edges_inside_mask(mask) as i64 - i64::from(mask.count_ones()) + 1
    }
}

impl fmt::Display for DualGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self
            .vertices
            .iter()
            .map(|v| format!("{}(g={})", v.name, v.geometric_genus))
            .collect();
        let es: Vec<String> = self
            .edges
            .iter()
            .map(|e| format!("{}-{}", self.name(e.a), self.name(e.b)))
            .collect();
        write!(f, "[{}] {{{}}}", vs.join(", "), es.join(", "))
    }
}

pub(crate) fn mask_to_vertices(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

/// A nonempty set of components, as sorted vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subcurve {
    pub vertices: Vec<usize>,
}

impl Subcurve {
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Subcurve { vertices }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub(crate) fn from_mask(mask: u64) -> Self {
        Subcurve { vertices: mask_to_vertices(mask) }
    }

    pub fn names(&self, g: &DualGraph) -> Vec<String> {
        self.vertices.iter().map(|&v| g.name(v).to_string()).collect()
    }
}

/// A set of nodes, as sorted distinct edge indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NodeSet {
    pub edges: Vec<usize>,
}

impl NodeSet {
    pub fn new(g: &DualGraph, edges: Vec<usize>) -> Result<Self> {
        let mut sorted = edges;
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(Error::RepeatedEdge(w[0]));
            }
        }
        if let Some(&bad) = sorted.iter().find(|&&e| e >= g.edge_count()) {
            return Err(Error::UnknownEdge(bad));
        }
        Ok(NodeSet { edges: sorted })
    }

    pub fn empty() -> Self {
        NodeSet::default()
    }

    pub fn all(g: &DualGraph) -> Self {
        NodeSet { edges: (0..g.edge_count()).collect() }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.edges.binary_search(&e).is_ok()
    }
}

impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.edges.iter().map(|e| format!("e{e}")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub gamma: usize,
    pub delta: usize,
    pub b1: i64,
    pub genus: i64,
}

/// Component count, node count, first Betti number and arithmetic genus.
pub fn counts(g: &DualGraph) -> Counts {
    let gamma = g.vertex_count();
    let delta = g.edge_count();
    let b1 = delta as i64 - gamma as i64 + 1;
    let genus = g.vertices.iter().map(|v| i64::from(v.geometric_genus)).sum::<i64>() + b1;
    Counts { gamma, delta, b1, genus }
}

/// Arithmetic genus of the component `v` as a curve: its geometric genus
/// plus one per self-node.
pub fn component_arithmetic_genus(g: &DualGraph, v: usize) -> Result<i64> {
    let vert = g.vertices.get(v).ok_or(Error::VertexIndex(v))?;
    Ok(i64::from(vert.geometric_genus) + g.loops_at(v) as i64)
}

/// Number of nodes joining `v` to the rest of the curve.
pub fn component_codegree(g: &DualGraph, v: usize) -> Result<usize> {
    if v >= g.vertex_count() {
        return Err(Error::VertexIndex(v));
    }
    Ok(g.edges.iter().filter(|e| !e.is_loop() && e.touches(v)).count())
}

/// Graph Laplacian (loops ignored) as `i64` rows.
pub(crate) fn laplacian_rows(g: &DualGraph) -> Vec<Vec<i64>> {
    let n = g.vertex_count();
    let mut l = vec![vec![0i64; n]; n];
    for e in g.edges.iter().filter(|e| !e.is_loop()) {
        l[e.a][e.a] += 1;
        l[e.b][e.b] += 1;
        l[e.a][e.b] -= 1;
        l[e.b][e.a] -= 1;
    }
    l
}

/// Number of spanning trees, computed as the determinant of a reduced
/// Laplacian in the scalar type `T`.
pub fn complexity_in<T: ExactInt>(g: &DualGraph) -> T {
    let l = IntMatrix::<T>::from_i64_rows(&laplacian_rows(g));
    let n = l.nrows();
    determinant(&l.minor(n - 1, n - 1))
}

/// Number of spanning trees (loops ignored, parallel edges distinct).
pub fn complexity(g: &DualGraph) -> BigInt {
    complexity_in::<BigInt>(g)
}

/// Marks each edge that is a bridge. Loops are never bridges.
pub fn bridges(g: &DualGraph) -> Vec<bool> {
    let n = g.vertex_count();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, e) in g.edges.iter().enumerate().filter(|(_, e)| !e.is_loop()) {
        adj[e.a].push((e.b, i));
        adj[e.b].push((e.a, i));
    }
    let mut is_bridge = vec![false; g.edge_count()];
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // (vertex, edge used to enter it, next adjacency position)
        let mut stack: Vec<(usize, Option<usize>, usize)> = vec![(root, None, 0)];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        while let Some(&mut (v, parent_edge, ref mut pos)) = stack.last_mut() {
            if let Some(&(w, eid)) = adj[v].get(*pos) {
                *pos += 1;
                if Some(eid) == parent_edge {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, Some(eid), 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let (Some(eid), Some(&(u, _, _))) = (parent_edge, stack.last()) {
                    low[u] = low[u].min(low[v]);
                    if low[v] > disc[u] {
                        is_bridge[eid] = true;
                    }
                }
            }
        }
    }
    is_bridge
}

/// True iff removing all loops leaves a tree.
pub fn is_tree_like(g: &DualGraph) -> bool {
    bridges(g).iter().zip(&g.edges).all(|(&b, e)| b || e.is_loop())
}

/// Deletes loops and contracts every bridge. Merged vertices get names
/// joined by `+` and the sum of their geometric genera.
pub fn essential_graph(g: &DualGraph) -> DualGraph {
    let n = g.vertex_count();
    let is_bridge = bridges(g);
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    for (e, _) in g.edges.iter().zip(&is_bridge).filter(|(_, &b)| b) {
        let (ra, rb) = (find(&mut parent, e.a), find(&mut parent, e.b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let roots: Vec<usize> = (0..n).map(|v| find(&mut parent, v)).collect();
    let mut classes: Vec<usize> = roots.clone();
    classes.sort_unstable();
    classes.dedup();
    let new_index = |r: usize| classes.binary_search(&r).expect("root is a class");
    let vertices = classes
        .iter()
        .map(|&r| {
            let members: Vec<usize> = (0..n).filter(|&v| roots[v] == r).collect();
            let name = members.iter().map(|&v| g.name(v)).collect::<Vec<_>>().join("+");
            let genus = members.iter().map(|&v| g.vertices[v].geometric_genus).sum();
            Vertex::new(name, genus)
        })
        .collect();
    let edges = g
        .edges
        .iter()
        .zip(&is_bridge)
        .filter(|(e, &b)| !b && !e.is_loop())
        .map(|(e, _)| (new_index(roots[e.a]), new_index(roots[e.b])))
        .collect();
    DualGraph::new(vertices, edges).expect("contraction of a connected graph is connected")
}

/// Edge connectivity, with a distinguished infinite value for a single vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Connectivity {
    Finite(u64),
    Infinite,
}

impl Connectivity {
    /// Whether `d` is strictly below this connectivity.
    pub fn exceeds(&self, d: i64) -> bool {
        match *self {
            Connectivity::Infinite => true,
            Connectivity::Finite(k) => d < k as i64,
        }
    }
}

impl fmt::Display for Connectivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Connectivity::Finite(k) => write!(f, "{k}"),
            Connectivity::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Connectivity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Connectivity::Finite(k) => s.serialize_u64(*k),
            Connectivity::Infinite => s.serialize_str("infinity"),
        }
    }
}

impl<'de> Deserialize<'de> for Connectivity {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(k) => Ok(Connectivity::Finite(k)),
            Raw::Text(t) if t == "infinity" => Ok(Connectivity::Infinite),
            Raw::Text(t) => Err(serde::de::Error::custom(format!("bad connectivity `{t}`"))),
        }
    }
}

/// Global minimum cut of a loopless multigraph by Stoer–Wagner, parallel
/// edges counting as unit capacities. Requires at least two vertices.
fn min_cut(g: &DualGraph) -> u64 {
    let n = g.vertex_count();
    let mut w = vec![vec![0u64; n]; n];
    for e in g.edges.iter().filter(|e| !e.is_loop()) {
        w[e.a][e.b] += 1;
        w[e.b][e.a] += 1;
    }
    let mut active: Vec<usize> = (0..n).collect();
    let mut best = u64::MAX;
    while active.len() > 1 {
        let mut added = vec![false; n];
        let mut attach = vec![0u64; n];
        let mut prev = active[0];
        let mut last = active[0];
        for step in 0..active.len() {
            let next = if step == 0 {
                active[0]
            } else {
                *active
                    .iter()
                    .filter(|&&v| !added[v])
                    .max_by(|&&x, &&y| attach[x].cmp(&attach[y]).then(y.cmp(&x)))
                    .expect("unadded vertex remains")
            };
            added[next] = true;
            prev = last;
            last = next;
            for &v in &active {
                if !added[v] {
                    attach[v] += w[next][v];
                }
            }
        }
        best = best.min(attach[last]);
        for &v in &active {
            if v != prev && v != last {
                w[prev][v] += w[last][v];
                w[v][prev] = w[prev][v];
            }
        }
        active.retain(|&v| v != last);
    }
    best
}

/// Edge connectivity of the essential graph.
pub fn essential_connectivity(g: &DualGraph) -> Connectivity {
    let ess = essential_graph(g);
    if ess.vertex_count() == 1 {
        Connectivity::Infinite
    } else {
        Connectivity::Finite(min_cut(&ess))
    }
}

pub(crate) fn check_subcurve_cap(g: &DualGraph, limits: &Limits) -> Result<()> {
    let n = g.vertex_count();
    let cap = limits.max_subcurve_vertices.min(63);
    if n > cap {
        return Err(Error::CapExceeded { what: "subcurve vertex", limit: cap as u64, required: n as u64 });
    }
    Ok(())
}

/// Connected proper subcurves as bitmasks, ordered by size then
/// lexicographically by vertex list.
pub(crate) fn connected_proper_masks(g: &DualGraph, limits: &Limits) -> Result<Vec<u64>> {
    check_subcurve_cap(g, limits)?;
    let n = g.vertex_count();
    let full = (1u64 << n) - 1;
    let mut masks: Vec<u64> = (1..full).filter(|&m| g.mask_is_connected(m)).collect();
    masks.sort_by_key(|&m| (m.count_ones(), mask_to_vertices(m)));
    Ok(masks)
}

/// All nonempty proper subsets of components inducing a connected
/// subgraph, ordered by size then lexicographically.
pub fn connected_subcurves(g: &DualGraph) -> Result<Vec<Subcurve>> {
    connected_subcurves_with(g, &Limits::default())
}

pub fn connected_subcurves_with(g: &DualGraph, limits: &Limits) -> Result<Vec<Subcurve>> {
    Ok(connected_proper_masks(g, limits)?.into_iter().map(Subcurve::from_mask).collect())
}

/// Arithmetic genus of a connected subcurve: genera of its components plus
/// the nodes inside it (self-nodes included) minus its size plus one.
pub fn subcurve_pa(g: &DualGraph, z: &Subcurve) -> Result<i64> {
    if z.vertices.iter().any(|&v| v >= g.vertex_count()) || !g.induced_is_connected(&z.vertices) {
        return Err(Error::DisconnectedSubcurve(z.vertices.clone()));
    }
    let genus: i64 = z.vertices.iter().map(|&v| i64::from(g.vertices[v].geometric_genus)).sum();
    let inside = g
        .edges
        .iter()
        .filter(|e| z.contains(e.a) && z.contains(e.b))
        .count() as i64;
    Ok(genus + inside - z.vertices.len() as i64 + 1)
}

/// One connected component of a partial normalization, remembering where
/// its vertices and edges came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedComponent {
    pub graph: DualGraph,
    /// Parent index of each vertex of `graph`, increasing.
    pub parent_vertices: Vec<usize>,
    /// Parent index of each edge of `graph`, increasing.
    pub parent_edges: Vec<usize>,
}

/// The normalization of a curve at exactly the nodes `nodes`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialNormalization {
    pub nodes: NodeSet,
    /// Components ordered by their smallest parent vertex.
    pub components: Vec<NormalizedComponent>,
    pub parent_vertex_count: usize,
}

impl PartialNormalization {
    /// Arithmetic genus of the (possibly disconnected) normalized curve,
    /// i.e. the sum over its components.
    pub fn genus(&self) -> i64 {
        self.components.iter().map(|c| counts(&c.graph).genus).sum()
    }

    /// Dimension of its Picard variety. Equals `g - |S| + (#components - 1)`
    /// for the parent genus `g`.
    pub fn picard_dimension(&self) -> i64 {
        self.genus()
    }
}

/// Normalizes `g` at the nodes `s`, tracking parent indices.
pub fn normalize(g: &DualGraph, s: &NodeSet) -> Result<PartialNormalization> {
    if let Some(&bad) = s.edges.iter().find(|&&e| e >= g.edge_count()) {
        return Err(Error::UnknownEdge(bad));
    }
    let n = g.vertex_count();
    let kept: Vec<usize> = (0..g.edge_count()).filter(|&e| !s.contains(e)).collect();
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    for root in 0..n {
        if comp[root] != usize::MAX {
            continue;
        }
        comp[root] = count;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &ei in &kept {
                let e = g.edges[ei];
                if e.touches(v) {
                    let w = e.other(v);
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
        }
        count += 1;
    }
    let components = (0..count)
        .map(|c| {
            let parent_vertices: Vec<usize> = (0..n).filter(|&v| comp[v] == c).collect();
            let parent_edges: Vec<usize> = kept.iter().copied().filter(|&e| comp[g.edges[e].a] == c).collect();
            let local = |v: usize| parent_vertices.binary_search(&v).expect("vertex in component");
            let vertices = parent_vertices.iter().map(|&v| g.vertices[v].clone()).collect();
            let edges = parent_edges.iter().map(|&e| (local(g.edges[e].a), local(g.edges[e].b))).collect();
            let graph = DualGraph::new(vertices, edges)?;
            Ok(NormalizedComponent { graph, parent_vertices, parent_edges })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PartialNormalization { nodes: s.clone(), components, parent_vertex_count: n })
}

/// Deletes the edges in `s` and returns the connected components.
pub fn partial_normalization(g: &DualGraph, s: &NodeSet) -> Result<Vec<DualGraph>> {
    Ok(normalize(g, s)?.components.into_iter().map(|c| c.graph).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> DualGraph {
        DualGraph::new(
            vec![Vertex::new("a", 0), Vertex::new("b", 0), Vertex::new("c", 0)],
            vec![(0, 1), (1, 2), (2, 0)],
        )
        .unwrap()
    }

    fn path3() -> DualGraph {
        DualGraph::new(
            vec![Vertex::new("a", 0), Vertex::new("b", 0), Vertex::new("c", 0)],
            vec![(0, 1), (1, 2)],
        )
        .unwrap()
    }

    #[test]
    fn counts_examples() {
        assert_eq!(counts(&DualGraph::vine(1, 1, 3).unwrap()), Counts { gamma: 2, delta: 3, b1: 2, genus: 4 });
        assert_eq!(counts(&DualGraph::irreducible(0, 0)), Counts { gamma: 1, delta: 0, b1: 0, genus: 0 });
        assert_eq!(counts(&triangle()), Counts { gamma: 3, delta: 3, b1: 1, genus: 1 });
    }

    #[test]
    fn arithmetic_genus_of_components() {
        assert_eq!(component_arithmetic_genus(&DualGraph::irreducible(1, 1), 0).unwrap(), 2);
        assert_eq!(component_arithmetic_genus(&DualGraph::irreducible(2, 0), 0).unwrap(), 2);
        assert_eq!(component_arithmetic_genus(&DualGraph::irreducible(0, 2), 0).unwrap(), 2);
        assert_eq!(component_arithmetic_genus(&triangle(), 7), Err(Error::VertexIndex(7)));
    }

    #[test]
    fn codegree_examples() {
        let vine = DualGraph::vine(0, 0, 4).unwrap();
        assert_eq!(component_codegree(&vine, 0).unwrap(), 4);
        assert_eq!(component_codegree(&vine, 1).unwrap(), 4);
        assert_eq!(component_codegree(&DualGraph::irreducible(3, 2), 0).unwrap(), 0);
        assert_eq!(component_codegree(&triangle(), 1).unwrap(), 2);
    }

    #[test]
    fn complexity_examples() {
        assert_eq!(complexity(&DualGraph::vine(0, 0, 5).unwrap()), BigInt::from(5));
        assert_eq!(complexity(&path3()), BigInt::from(1));
        assert_eq!(complexity(&triangle()), BigInt::from(3));
        assert_eq!(complexity(&DualGraph::irreducible(1, 3)), BigInt::from(1));
        assert_eq!(complexity_in::<i64>(&triangle()), 3);
    }

    #[test]
    fn tree_like_examples() {
        let mut g = DualGraph::vine(0, 0, 1).unwrap();
        g.edges.push(Edge::new(0, 0));
        assert!(is_tree_like(&g));
        assert!(!is_tree_like(&DualGraph::vine(0, 0, 2).unwrap()));
        assert!(is_tree_like(&DualGraph::irreducible(0, 3)));
    }

    #[test]
    fn bridges_ignore_parallel_edges() {
        let g = DualGraph::new(
            vec![Vertex::new("a", 0), Vertex::new("b", 0), Vertex::new("c", 0)],
            vec![(0, 1), (0, 1), (1, 2), (2, 2)],
        )
        .unwrap();
        assert_eq!(bridges(&g), vec![false, false, true, false]);
    }

    #[test]
    fn essential_graph_examples() {
        let e = essential_graph(&DualGraph::vine(1, 2, 1).unwrap());
        assert_eq!(e.vertex_count(), 1);
        assert_eq!(e.edge_count(), 0);
        assert_eq!(e.vertices()[0], Vertex::new("C1+C2", 3));

        let v = DualGraph::vine(1, 2, 3).unwrap();
        assert_eq!(essential_graph(&v), v);

        let pendant = DualGraph::new(
            vec![Vertex::new("a", 0), Vertex::new("b", 0), Vertex::new("c", 0), Vertex::new("d", 1)],
            vec![(0, 1), (1, 2), (2, 0), (2, 3)],
        )
        .unwrap();
        let ess = essential_graph(&pendant);
        assert_eq!(ess.vertex_count(), 3);
        assert_eq!(ess.edge_count(), 3);
        assert_eq!(ess.vertices()[2], Vertex::new("c+d", 1));
        assert_eq!(essential_graph(&ess), ess);
    }

    #[test]
    fn essential_connectivity_examples() {
        assert_eq!(essential_connectivity(&DualGraph::vine(0, 0, 3).unwrap()), Connectivity::Finite(3));
        assert_eq!(essential_connectivity(&DualGraph::vine(0, 0, 1).unwrap()), Connectivity::Infinite);
        let c4 = DualGraph::new(
            (0..4).map(|i| Vertex::new(format!("v{i}"), 0)).collect(),
            vec![(0, 1), (1, 2), (2, 3), (3, 0)],
        )
        .unwrap();
        assert_eq!(essential_connectivity(&c4), Connectivity::Finite(2));
        assert_eq!(essential_connectivity(&DualGraph::irreducible(2, 4)), Connectivity::Infinite);
    }

    #[test]
    fn min_cut_finds_the_bottleneck() {
        // two triangles of doubled edges joined by two single edges
        let mut edges = Vec::new();
        for &(a, b) in &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)] {
            edges.push((a, b));
            edges.push((a, b));
        }
        edges.push((0, 3));
        edges.push((2, 5));
        let g = DualGraph::new((0..6).map(|i| Vertex::new(format!("v{i}"), 0)).collect(), edges).unwrap();
        assert_eq!(min_cut(&g), 2);
    }

    #[test]
    fn subcurve_enumeration() {
        let vine = DualGraph::vine(1, 1, 2).unwrap();
        assert_eq!(
            connected_subcurves(&vine).unwrap(),
            vec![Subcurve::new(vec![0]), Subcurve::new(vec![1])]
        );
        assert_eq!(connected_subcurves(&triangle()).unwrap().len(), 6);
        let p = connected_subcurves(&path3()).unwrap();
        let got: Vec<Vec<usize>> = p.into_iter().map(|s| s.vertices).collect();
        assert_eq!(got, vec![vec![0], vec![1], vec![2], vec![0, 1], vec![1, 2]]);
    }

    #[test]
    fn subcurve_cap_is_an_error() {
        let limits = Limits { max_subcurve_vertices: 2, ..Limits::default() };
        assert!(connected_subcurves_with(&triangle(), &limits).unwrap_err().is_cap());
    }

    #[test]
    fn subcurve_pa_examples() {
        let vine = DualGraph::vine(2, 1, 3).unwrap();
        assert_eq!(subcurve_pa(&vine, &Subcurve::new(vec![0])).unwrap(), 2);
        assert_eq!(subcurve_pa(&vine, &Subcurve::new(vec![0, 1])).unwrap(), counts(&vine).genus);
        assert_eq!(subcurve_pa(&triangle(), &Subcurve::new(vec![0, 1])).unwrap(), 0);
        assert!(subcurve_pa(&path3(), &Subcurve::new(vec![0, 2])).is_err());
    }

    #[test]
    fn partial_normalization_examples() {
        let vine = DualGraph::vine(1, 2, 2).unwrap();
        let both = partial_normalization(&vine, &NodeSet::all(&vine)).unwrap();
        assert_eq!(both.len(), 2);
        assert_eq!(counts(&both[0]).genus, 1);
        assert_eq!(counts(&both[1]).genus, 2);

        assert_eq!(partial_normalization(&vine, &NodeSet::empty()).unwrap(), vec![vine.clone()]);

        let one = partial_normalization(&vine, &NodeSet::new(&vine, vec![1]).unwrap()).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(counts(&one[0]).b1, 0);
        assert_eq!(counts(&one[0]).genus, counts(&vine).genus - 1);

        assert_eq!(NodeSet::new(&vine, vec![5]), Err(Error::UnknownEdge(5)));
    }

    #[test]
    fn normalizing_a_loop_keeps_the_vertex() {
        let g = DualGraph::irreducible(1, 2);
        let pn = normalize(&g, &NodeSet::new(&g, vec![0]).unwrap()).unwrap();
        assert_eq!(pn.components.len(), 1);
        assert_eq!(counts(&pn.components[0].graph).b1, 1);
        assert_eq!(pn.components[0].parent_edges, vec![1]);
    }

    #[test]
    fn disconnected_and_unknown_inputs_are_rejected() {
        let r = DualGraph::new(vec![Vertex::new("a", 0), Vertex::new("b", 0)], vec![]);
        assert_eq!(r, Err(Error::Disconnected));
        let r = DualGraph::from_names(vec![Vertex::new("a", 0)], &[("a", "z")]);
        assert_eq!(r, Err(Error::UnknownVertex("z".into())));
        let r = DualGraph::new(vec![Vertex::new("a", 0), Vertex::new("a", 1)], vec![(0, 1)]);
        assert_eq!(r, Err(Error::DuplicateVertex("a".into())));
    }
}
