//! Basepointed ribbon graphs stored as a pair of permutations on half-edges.
//!
//! A graph with `E` edges has half-edges `0..2E`. The rotation `sigma` sends a
//! half-edge to the next one counterclockwise around its vertex, so the cycles
//! of `sigma` are the vertices. The involution `alpha` pairs the two halves of
//! every edge. A vertex is named by the smallest half-edge in its cycle and an
//! edge by the smaller of its two half-edges.
//!
//! Boundary cycles are the orbits of `h -> sigma(alpha(h))`: walking along the
//! directed edge `h` to the far vertex and then turning to the next half-edge
//! in the rotation there.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// Dense index of a half-edge.
pub type HalfEdge = usize;

/// A vertex, named by the smallest half-edge of its rotation cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub HalfEdge);

/// An edge, named by the smaller of its two half-edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub HalfEdge);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// Structural errors raised while building a graph from permutation data.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph has no half-edges")]
    Empty,
    #[error("half-edge count {0} is odd")]
    OddHalfEdgeCount(usize),
    #[error("sigma has {sigma} entries but alpha has {alpha}")]
    LengthMismatch { sigma: usize, alpha: usize },
    #[error("{which} is not a permutation: half-edge {half_edge} is hit twice or out of range")]
    NotAPermutation {
        which: &'static str,
        half_edge: HalfEdge,
    },
    #[error("alpha fixes half-edge {0}")]
    AlphaFixedPoint(HalfEdge),
    #[error("alpha is not an involution at half-edge {0}")]
    AlphaNotInvolution(HalfEdge),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("basepoint {0} is not a half-edge of the graph")]
    UnknownBasepoint(HalfEdge),
    #[error("half-edge {half_edge} appears {count} times in the vertex cycles")]
    CycleCover { half_edge: HalfEdge, count: usize },
}

/// Genus and number of punctures of the ribbon surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SurfaceType {
    pub genus: usize,
    pub punctures: usize,
}

impl SurfaceType {
    pub fn new(genus: usize, punctures: usize) -> Self {
        SurfaceType { genus, punctures }
    }

    /// Rank of the fundamental group of the punctured surface, `2g + p - 1`.
    pub fn rank(&self) -> usize {
        2 * self.genus + self.punctures - 1
    }

    /// The largest degree a graph drawn in this surface can have, `4g + 2p - 4`.
    pub fn max_degree(&self) -> usize {
        (4 * self.genus + 2 * self.punctures).saturating_sub(4)
    }
}

impl fmt::Display for SurfaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(g={}, p={})", self.genus, self.punctures)
    }
}

/// One orbit of the face permutation, as the cyclic list of directed
/// half-edges traversed, starting from its smallest member.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoundaryCycle(pub Vec<HalfEdge>);

impl BoundaryCycle {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn half_edges(&self) -> &[HalfEdge] {
        &self.0
    }
}

/// A connected ribbon graph with a basepoint vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RibbonGraph {
    sigma: Vec<HalfEdge>,
    alpha: Vec<HalfEdge>,
    vertex_of: Vec<HalfEdge>,
    basepoint: HalfEdge,
}

fn check_permutation(which: &'static str, perm: &[usize]) -> Result<(), GraphError> {
    let mut seen = vec![false; perm.len()];
    for &x in perm {
        if x >= perm.len() || seen[x] {
            return Err(GraphError::NotAPermutation {
                which,
                half_edge: x,
            });
        }
        seen[x] = true;
    }
    Ok(())
}

fn cycle_minima(sigma: &[usize]) -> Vec<usize> {
    let mut vertex_of = vec![usize::MAX; sigma.len()];
    for start in 0..sigma.len() {
        if vertex_of[start] != usize::MAX {
            continue;
        }
        // `start` is the smallest unvisited index, hence the minimum of its cycle.
        let mut h = start;
        loop {
            vertex_of[h] = start;
            h = sigma[h];
            if h == start {
                break;
            }
        }
    }
    vertex_of
}

impl RibbonGraph {
    /// Builds a graph from its rotation and edge involution. `basepoint` may
    /// be any half-edge at the basepoint vertex.
    pub fn new(
        sigma: Vec<HalfEdge>,
        alpha: Vec<HalfEdge>,
        basepoint: HalfEdge,
    ) -> Result<Self, GraphError> {
        if sigma.is_empty() {
            return Err(GraphError::Empty);
        }
        if sigma.len() != alpha.len() {
            return Err(GraphError::LengthMismatch {
                sigma: sigma.len(),
                alpha: alpha.len(),
            });
        }
        if !sigma.len().is_multiple_of(2) {
            return Err(GraphError::OddHalfEdgeCount(sigma.len()));
        }
        check_permutation("sigma", &sigma)?;
        check_permutation("alpha", &alpha)?;
        for (h, &a) in alpha.iter().enumerate() {
            if a == h {
                return Err(GraphError::AlphaFixedPoint(h));
            }
            if alpha[a] != h {
                return Err(GraphError::AlphaNotInvolution(h));
            }
        }
        if basepoint >= sigma.len() {
            return Err(GraphError::UnknownBasepoint(basepoint));
        }
        let vertex_of = cycle_minima(&sigma);
        let graph = RibbonGraph {
            basepoint: vertex_of[basepoint],
            sigma,
            alpha,
            vertex_of,
        };
        if !graph.half_edges_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(graph)
    }

    /// Builds a graph from explicit vertex rotations. Each inner list is the
    /// counterclockwise order of half-edges at one vertex; `pairs` lists the
    /// edges.
    pub fn from_rotations(
        rotations: &[Vec<HalfEdge>],
        pairs: &[(HalfEdge, HalfEdge)],
        basepoint: HalfEdge,
    ) -> Result<Self, GraphError> {
        let n = 2 * pairs.len();
        let mut count = vec![0usize; n.max(1)];
        let mut sigma = vec![usize::MAX; n];
        for cycle in rotations {
            for (i, &h) in cycle.iter().enumerate() {
                if h >= n {
                    return Err(GraphError::NotAPermutation {
                        which: "sigma",
                        half_edge: h,
                    });
                }
                count[h] += 1;
                sigma[h] = cycle[(i + 1) % cycle.len()];
            }
        }
        for (h, &c) in count.iter().enumerate().take(n) {
            if c != 1 {
                return Err(GraphError::CycleCover {
                    half_edge: h,
                    count: c,
                });
            }
        }
        let mut alpha = vec![usize::MAX; n];
        for &(a, b) in pairs {
            if a >= n || b >= n || alpha[a] != usize::MAX || alpha[b] != usize::MAX {
                return Err(GraphError::NotAPermutation {
                    which: "alpha",
                    half_edge: if a >= n || alpha[a] != usize::MAX {
                        a
                    } else {
                        b
                    },
                });
            }
            alpha[a] = b;
            alpha[b] = a;
        }
        RibbonGraph::new(sigma, alpha, basepoint)
    }

    /// The one-vertex graph whose rotation is `rotation`, with the standard
    /// pairing `2i <-> 2i + 1`.
    pub fn rose(rotation: &[HalfEdge]) -> Result<Self, GraphError> {
        let n = rotation.len();
        let pairs: Vec<_> = (0..n / 2).map(|i| (2 * i, 2 * i + 1)).collect();
        if !n.is_multiple_of(2) {
            return Err(GraphError::OddHalfEdgeCount(n));
        }
        RibbonGraph::from_rotations(
            &[rotation.to_vec()],
            &pairs,
            rotation.first().copied().unwrap_or(0),
        )
    }

    pub fn half_edge_count(&self) -> usize {
        self.sigma.len()
    }

    pub fn edge_count(&self) -> usize {
        self.sigma.len() / 2
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_of
            .iter()
            .enumerate()
            .filter(|&(h, &v)| h == v)
            .count()
    }

    pub fn sigma(&self) -> &[HalfEdge] {
        &self.sigma
    }

    pub fn alpha(&self) -> &[HalfEdge] {
        &self.alpha
    }

    pub fn sigma_of(&self, h: HalfEdge) -> HalfEdge {
        self.sigma[h]
    }

    pub fn alpha_of(&self, h: HalfEdge) -> HalfEdge {
        self.alpha[h]
    }

    /// Inverse rotation: the half-edge immediately before `h` at its vertex.
    pub fn sigma_inv(&self, h: HalfEdge) -> HalfEdge {
        let mut x = h;
        loop {
            let next = self.sigma[x];
            if next == h {
                return x;
            }
            x = next;
        }
    }

    pub fn basepoint(&self) -> VertexId {
        VertexId(self.basepoint)
    }

    pub fn vertex_of(&self, h: HalfEdge) -> VertexId {
        VertexId(self.vertex_of[h])
    }

    pub fn edge_of(&self, h: HalfEdge) -> EdgeId {
        EdgeId(h.min(self.alpha[h]))
    }

    pub fn is_loop(&self, h: HalfEdge) -> bool {
        self.vertex_of[h] == self.vertex_of[self.alpha[h]]
    }

    /// Vertex ids in increasing order.
    pub fn vertices(&self) -> Vec<VertexId> {
        self.vertex_of
            .iter()
            .enumerate()
            .filter(|&(h, &v)| h == v)
            .map(|(h, _)| VertexId(h))
            .collect()
    }

    /// The rotation at `v`, starting from its smallest half-edge.
    pub fn rotation(&self, v: VertexId) -> Vec<HalfEdge> {
        let mut out = vec![v.0];
        let mut h = self.sigma[v.0];
        while h != v.0 {
            out.push(h);
            h = self.sigma[h];
        }
        out
    }

    pub fn valence(&self, v: VertexId) -> usize {
        self.rotation(v).len()
    }

    /// Edges as `(smaller, larger)` half-edge pairs, sorted.
    pub fn edges(&self) -> Vec<(HalfEdge, HalfEdge)> {
        (0..self.sigma.len())
            .filter(|&h| h < self.alpha[h])
            .map(|h| (h, self.alpha[h]))
            .collect()
    }

    pub fn edge_ids(&self) -> Vec<EdgeId> {
        self.edges().into_iter().map(|(h, _)| EdgeId(h)).collect()
    }

    /// Endpoints of an edge, in the order of its two half-edges.
    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        (self.vertex_of(e.0), self.vertex_of(self.alpha[e.0]))
    }

    fn half_edges_connected(&self) -> bool {
        let n = self.sigma.len();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(h) = queue.pop_front() {
            for x in [self.sigma[h], self.alpha[h]] {
                if !seen[x] {
                    seen[x] = true;
                    count += 1;
                    queue.push_back(x);
                }
            }
        }
        count == n
    }

    /// Orbits of the face permutation `h -> sigma(alpha(h))`.
    pub fn boundary_cycles(&self) -> Vec<BoundaryCycle> {
        let n = self.sigma.len();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut h = start;
            while !seen[h] {
                seen[h] = true;
                cycle.push(h);
                h = self.sigma[self.alpha[h]];
            }
            cycles.push(BoundaryCycle(cycle));
        }
        cycles
    }

    pub fn boundary_count(&self) -> usize {
        self.boundary_cycles().len()
    }

    /// Genus and punctures of the ribbon surface, from `V - E + p = 2 - 2g`.
    pub fn surface_type(&self) -> SurfaceType {
        let v = self.vertex_count() as i64;
        let e = self.edge_count() as i64;
        let p = self.boundary_count() as i64;
        let twice_genus = 2 - (v - e + p);
        assert!(
            twice_genus >= 0 && twice_genus % 2 == 0,
            "internal consistency: V={v} E={e} p={p} give a non-integral genus"
        );
        SurfaceType::new((twice_genus / 2) as usize, p as usize)
    }

    /// Sum of `valence - 2` over the non-basepoint vertices.
    pub fn degree(&self) -> usize {
        self.vertices()
            .into_iter()
            .filter(|&v| v != self.basepoint())
            .map(|v| self.valence(v).saturating_sub(2))
            .sum()
    }

    /// First Betti number `E - V + 1`.
    pub fn rank(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count()
    }

    /// Edges whose removal disconnects the graph. Loops are never bridges.
    pub fn bridges(&self) -> Vec<EdgeId> {
        let edges = self.edges();
        edges
            .iter()
            .filter(|&&(a, b)| !self.is_loop(a) && !self.connected_without(a, b))
            .map(|&(a, _)| EdgeId(a))
            .collect()
    }

    fn connected_without(&self, a: HalfEdge, b: HalfEdge) -> bool {
        let n = self.sigma.len();
        let mut seen = vec![false; n];
        let start = self.vertex_of[a];
        let mut stack = vec![start];
        let mut reached_vertex = vec![false; n];
        reached_vertex[start] = true;
        while let Some(v) = stack.pop() {
            for h in self.rotation(VertexId(v)) {
                if h == a || h == b || seen[h] {
                    continue;
                }
                seen[h] = true;
                let w = self.vertex_of[self.alpha[h]];
                if !reached_vertex[w] {
                    reached_vertex[w] = true;
                    stack.push(w);
                }
            }
        }
        reached_vertex[self.vertex_of[b]]
    }

    /// Checks the valence, connectivity and bridge rules for graphs in the
    /// spine.
    pub fn validate(&self, profile: Profile) -> ValidityReport {
        let base = self.basepoint();
        let mut low_valence = Vec::new();
        for v in self.vertices() {
            if v != base && self.valence(v) < 3 {
                low_valence.push(v);
            }
        }
        ValidityReport {
            profile,
            connected: self.half_edges_connected(),
            low_valence,
            basepoint_valence: self.valence(base),
            bridges: self.bridges(),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validate(Profile::RibbonSpace).is_valid()
    }

    /// Renames half-edge `h` to `perm[h]`.
    pub fn relabel(&self, perm: &[HalfEdge]) -> RibbonGraph {
        let n = self.sigma.len();
        assert_eq!(perm.len(), n, "relabeling must cover every half-edge");
        let mut sigma = vec![0; n];
        let mut alpha = vec![0; n];
        for h in 0..n {
            sigma[perm[h]] = perm[self.sigma[h]];
            alpha[perm[h]] = perm[self.alpha[h]];
        }
        RibbonGraph::new(sigma, alpha, perm[self.basepoint]).expect("relabeling preserves validity")
    }

    /// The same graph with every rotation reversed (the mirror image).
    pub fn mirror(&self) -> RibbonGraph {
        let n = self.sigma.len();
        let mut sigma = vec![0; n];
        for h in 0..n {
            sigma[self.sigma[h]] = h;
        }
        RibbonGraph::new(sigma, self.alpha.clone(), self.basepoint)
            .expect("mirror preserves validity")
    }

    /// Forgets the cyclic orders.
    pub fn to_plain(&self) -> PlainGraph {
        PlainGraph::from_ribbon(self)
    }
}

/// Which space a graph is checked against. Both use the same local rules;
/// the tag is carried through to reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Profile {
    RibbonSpace,
    AuterSpace,
}

/// One failed validity rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Disconnected,
    LowValence { vertex: VertexId, valence: usize },
    BasepointValence(usize),
    SeparatingEdge(EdgeId),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Disconnected => write!(f, "graph is disconnected"),
            Violation::LowValence { vertex, valence } => {
                write!(f, "non-basepoint vertex {vertex} has valence {valence} < 3")
            }
            Violation::BasepointValence(d) => write!(f, "basepoint has valence {d} < 2"),
            Violation::SeparatingEdge(e) => write!(f, "edge {e} is separating"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidityReport {
    pub profile: Profile,
    pub connected: bool,
    pub low_valence: Vec<VertexId>,
    pub basepoint_valence: usize,
    pub bridges: Vec<EdgeId>,
}

impl ValidityReport {
    pub fn valence_ok(&self) -> bool {
        self.low_valence.is_empty()
    }

    pub fn basepoint_ok(&self) -> bool {
        self.basepoint_valence >= 2
    }

    pub fn bridgeless(&self) -> bool {
        self.bridges.is_empty()
    }

    pub fn is_valid(&self) -> bool {
        self.connected && self.valence_ok() && self.basepoint_ok() && self.bridgeless()
    }

    pub fn violations(&self, graph: &RibbonGraph) -> Vec<Violation> {
        let mut out = Vec::new();
        if !self.connected {
            out.push(Violation::Disconnected);
        }
        for &v in &self.low_valence {
            out.push(Violation::LowValence {
                vertex: v,
                valence: graph.valence(v),
            });
        }
        if !self.basepoint_ok() {
            out.push(Violation::BasepointValence(self.basepoint_valence));
        }
        out.extend(self.bridges.iter().copied().map(Violation::SeparatingEdge));
        out
    }
}

/// A graph whose cyclic orders carry no meaning. Stored with every rotation
/// sorted ascending, so reordering half-edges at a vertex gives an equal value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlainGraph {
    inner: RibbonGraph,
}

impl PlainGraph {
    pub fn from_ribbon(g: &RibbonGraph) -> Self {
        let rotations: Vec<Vec<HalfEdge>> = g
            .vertices()
            .into_iter()
            .map(|v| {
                let mut r = g.rotation(v);
                r.sort_unstable();
                r
            })
            .collect();
        let inner = RibbonGraph::from_rotations(&rotations, &g.edges(), g.basepoint().0)
            .expect("normalizing rotations preserves validity");
        PlainGraph { inner }
    }

    /// Builds a plain graph from vertex half-edge sets and edge pairs.
    pub fn new(
        vertices: &[Vec<HalfEdge>],
        pairs: &[(HalfEdge, HalfEdge)],
        basepoint: HalfEdge,
    ) -> Result<Self, GraphError> {
        let g = RibbonGraph::from_rotations(vertices, pairs, basepoint)?;
        Ok(PlainGraph::from_ribbon(&g))
    }

    /// The rose with `n` loops.
    pub fn rose(n: usize) -> Result<Self, GraphError> {
        let rotation: Vec<_> = (0..2 * n).collect();
        Ok(PlainGraph::from_ribbon(&RibbonGraph::rose(&rotation)?))
    }

    /// Underlying storage; its rotations are sorted and meaningless.
    pub fn as_ribbon(&self) -> &RibbonGraph {
        &self.inner
    }

    pub fn degree(&self) -> usize {
        self.inner.degree()
    }

    pub fn rank(&self) -> usize {
        self.inner.rank()
    }

    pub fn validate(&self) -> ValidityReport {
        self.inner.validate(Profile::AuterSpace)
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    pub fn relabel(&self, perm: &[HalfEdge]) -> PlainGraph {
        PlainGraph::from_ribbon(&self.inner.relabel(perm))
    }
}
