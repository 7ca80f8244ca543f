//! Forest collapse and vertex expansion.
//!
//! Contracting a non-loop edge `{h, h'}` with `h` at `u` and `h'` at `v`
//! splices the rotation of `v`, read from `sigma(h')` round to the half-edge
//! before `h'`, into the rotation of `u` in place of `h`. Expanding a vertex
//! along a partition of its rotation into two consecutive arcs `A`, `B` is the
//! inverse: the new edge gets half-edges `2E` (next to `A`) and `2E + 1` (next
//! to `B`), so contracting it recovers the original graph exactly.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::ribbon::{EdgeId, GraphError, HalfEdge, PlainGraph, RibbonGraph, VertexId};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum MoveError {
    #[error("half-edge {0} does not exist")]
    UnknownHalfEdge(HalfEdge),
    #[error("{0} is not a vertex")]
    UnknownVertex(VertexId),
    #[error("invalid forest: edge {0} is a loop")]
    LoopInForest(EdgeId),
    #[error("invalid forest: edge {0} closes a cycle")]
    CycleInForest(EdgeId),
    #[error("collapse would leave a graph with no edges")]
    Degenerate,
    #[error("not an allowed expansion: {0}")]
    NotAllowedExpansion(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A loop-free acyclic set of edges of some host graph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Forest {
    edges: BTreeSet<EdgeId>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut y = x;
        while self.0[y] != root {
            let next = self.0[y];
            self.0[y] = root;
            y = next;
        }
        root
    }

    /// Returns false if `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

impl Forest {
    /// Checks that the half-edges name edges of `g` that form a forest. Either
    /// half of an edge may be given.
    pub fn new<I>(g: &RibbonGraph, half_edges: I) -> Result<Self, MoveError>
    where
        I: IntoIterator<Item = HalfEdge>,
    {
        let mut edges = BTreeSet::new();
        for h in half_edges {
            if h >= g.half_edge_count() {
                return Err(MoveError::UnknownHalfEdge(h));
            }
            edges.insert(g.edge_of(h));
        }
        let mut uf = UnionFind::new(g.half_edge_count());
        for &e in &edges {
            if g.is_loop(e.0) {
                return Err(MoveError::LoopInForest(e));
            }
            let (u, v) = g.endpoints(e);
            if !uf.union(u.0, v.0) {
                return Err(MoveError::CycleInForest(e));
            }
        }
        Ok(Forest { edges })
    }

    pub fn empty() -> Self {
        Forest::default()
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }

    pub fn is_subset(&self, other: &Forest) -> bool {
        self.edges.is_subset(&other.edges)
    }

    /// Image of the forest under a half-edge permutation of its host.
    pub fn map(&self, g: &RibbonGraph, perm: &[HalfEdge]) -> Forest {
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let h = perm[e.0];
                let other = perm[g.alpha_of(e.0)];
                EdgeId(h.min(other))
            })
            .collect();
        Forest { edges }
    }
}

/// Contracts edges one at a time and returns the graph together with the map
/// from old half-edges to new ones (`None` for removed half-edges). The edges
/// must form a forest; this is not rechecked.
pub fn contract_edges(
    g: &RibbonGraph,
    edges: &[EdgeId],
) -> Result<(RibbonGraph, Vec<Option<HalfEdge>>), MoveError> {
    let n = g.half_edge_count();
    let mut sigma = g.sigma().to_vec();
    let mut inv = vec![0; n];
    for h in 0..n {
        inv[sigma[h]] = h;
    }
    let mut alive = vec![true; n];
    let mut base = g.basepoint().0;

    for &e in edges {
        let h = e.0;
        let hb = g.alpha_of(h);
        let (a, b, c, d) = (inv[h], sigma[h], inv[hb], sigma[hb]);
        match (b == h, d == hb) {
            (true, true) => return Err(MoveError::Degenerate),
            (true, false) => {
                sigma[c] = d;
                inv[d] = c;
            }
            (false, true) => {
                sigma[a] = b;
                inv[b] = a;
            }
            (false, false) => {
                sigma[a] = d;
                inv[d] = a;
                sigma[c] = b;
                inv[b] = c;
            }
        }
        alive[h] = false;
        alive[hb] = false;
        if base == h || base == hb {
            base = [b, d, a, c]
                .into_iter()
                .find(|&x| alive[x])
                .ok_or(MoveError::Degenerate)?;
        }
    }

    let mut map = vec![None; n];
    let mut next = 0;
    for h in 0..n {
        if alive[h] {
            map[h] = Some(next);
            next += 1;
        }
    }
    if next == 0 {
        return Err(MoveError::Degenerate);
    }
    let mut new_sigma = vec![0; next];
    let mut new_alpha = vec![0; next];
    for h in 0..n {
        if let Some(x) = map[h] {
            new_sigma[x] = map[sigma[h]].expect("rotation stays on live half-edges");
            new_alpha[x] = map[g.alpha_of(h)].expect("partner of a live half-edge is live");
        }
    }
    let base = map[base].expect("basepoint representative is live");
    let graph = RibbonGraph::new(new_sigma, new_alpha, base)?;
    Ok((graph, map))
}

/// Collapses every edge of `forest`, inducing the spliced rotations.
pub fn collapse_forest(g: &RibbonGraph, forest: &Forest) -> Result<RibbonGraph, MoveError> {
    let checked = Forest::new(g, forest.edges().map(|e| e.0))?;
    let edges: Vec<_> = checked.edges().collect();
    Ok(contract_edges(g, &edges)?.0)
}

/// Collapses a forest in a plain graph.
pub fn collapse_plain(g: &PlainGraph, forest: &Forest) -> Result<PlainGraph, MoveError> {
    Ok(PlainGraph::from_ribbon(&collapse_forest(
        g.as_ribbon(),
        forest,
    )?))
}

/// Every non-empty forest of `g`, ordered by size and then by edge ids.
pub fn enumerate_forests(g: &RibbonGraph) -> Vec<Forest> {
    let candidates: Vec<EdgeId> = g
        .edge_ids()
        .into_iter()
        .filter(|e| !g.is_loop(e.0))
        .collect();
    assert!(candidates.len() < 24, "too many edges to enumerate forests");
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << candidates.len()) {
        let mut uf = UnionFind::new(g.half_edge_count());
        let mut edges = BTreeSet::new();
        let mut ok = true;
        for (i, &e) in candidates.iter().enumerate() {
            if mask & (1 << i) != 0 {
                let (u, v) = g.endpoints(e);
                if !uf.union(u.0, v.0) {
                    ok = false;
                    break;
                }
                edges.insert(e);
            }
        }
        if ok {
            out.push(Forest { edges });
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// A split of the rotation at `vertex` into two consecutive arcs. After
/// expansion `a` stays with the vertex that keeps the basepoint, if the vertex
/// was the basepoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArcPartition {
    pub vertex: VertexId,
    pub a: Vec<HalfEdge>,
    pub b: Vec<HalfEdge>,
}

/// All consecutive-arc partitions at `v`. At a non-basepoint vertex each
/// unordered pair `{A, B}` appears once (with `A` holding the smallest
/// half-edge); at the basepoint both orientations appear since the side that
/// keeps the basepoint matters.
pub fn arc_partitions(g: &RibbonGraph, v: VertexId) -> Vec<ArcPartition> {
    let rot = g.rotation(v);
    let d = rot.len();
    let is_base = v == g.basepoint();
    let mut out = Vec::new();
    for len in 1..d {
        for start in 0..d {
            let a: Vec<_> = (0..len).map(|i| rot[(start + i) % d]).collect();
            if !is_base && !a.contains(&rot[0]) {
                continue;
            }
            let b: Vec<_> = (len..d).map(|i| rot[(start + i) % d]).collect();
            out.push(ArcPartition { vertex: v, a, b });
        }
    }
    out
}

/// Arc partitions at `v` whose expansion is again a valid graph, or all arc
/// partitions when `filtered` is false.
pub fn allowed_expansions(g: &RibbonGraph, v: VertexId, filtered: bool) -> Vec<ArcPartition> {
    arc_partitions(g, v)
        .into_iter()
        .filter(|p| !filtered || expand(g, p).map(|x| x.is_valid()).unwrap_or(false))
        .collect()
}

/// Replaces the vertex by a new edge whose ends carry the arcs `A` and `B`.
pub fn expand(g: &RibbonGraph, part: &ArcPartition) -> Result<RibbonGraph, MoveError> {
    let rot = checked_rotation(g, part.vertex)?;
    if part.a.is_empty() || part.b.is_empty() {
        return Err(MoveError::NotAllowedExpansion(
            "both arcs must be non-empty".into(),
        ));
    }
    if part.a.len() + part.b.len() != rot.len() {
        return Err(MoveError::NotAllowedExpansion(format!(
            "arcs cover {} half-edges but the vertex has {}",
            part.a.len() + part.b.len(),
            rot.len()
        )));
    }
    let d = rot.len();
    let start = rot.iter().position(|&h| h == part.a[0]).ok_or_else(|| {
        MoveError::NotAllowedExpansion(format!("half-edge {} is not at the vertex", part.a[0]))
    })?;
    let consecutive = part
        .a
        .iter()
        .chain(part.b.iter())
        .enumerate()
        .all(|(i, &h)| rot[(start + i) % d] == h);
    if !consecutive {
        return Err(MoveError::NotAllowedExpansion(
            "A and B must be successive arcs of the cyclic order".into(),
        ));
    }
    splice_unchecked(g, part.vertex, &part.a, &part.b)
}

fn checked_rotation(g: &RibbonGraph, v: VertexId) -> Result<Vec<HalfEdge>, MoveError> {
    if v.0 >= g.half_edge_count() || g.vertex_of(v.0) != v {
        return Err(MoveError::UnknownVertex(v));
    }
    Ok(g.rotation(v))
}

/// Splits `v` into a vertex carrying `a` and one carrying `b`, each keeping
/// the given order, joined by a new edge. No arc check is made, so a
/// non-consecutive split can change the surface.
pub fn splice_unchecked(
    g: &RibbonGraph,
    v: VertexId,
    a: &[HalfEdge],
    b: &[HalfEdge],
) -> Result<RibbonGraph, MoveError> {
    let rot = checked_rotation(g, v)?;
    let mut covered: Vec<HalfEdge> = a.iter().chain(b.iter()).copied().collect();
    covered.sort_unstable();
    let mut expected = rot.clone();
    expected.sort_unstable();
    if covered != expected || a.is_empty() || b.is_empty() {
        return Err(MoveError::NotAllowedExpansion(
            "A and B must be non-empty and partition the rotation".into(),
        ));
    }
    let n = g.half_edge_count();
    let (n1, n2) = (n, n + 1);
    let mut sigma = g.sigma().to_vec();
    sigma.extend([0, 0]);
    let mut alpha = g.alpha().to_vec();
    alpha.extend([n2, n1]);
    for (side, new) in [(a, n1), (b, n2)] {
        let mut cycle = side.to_vec();
        cycle.push(new);
        for i in 0..cycle.len() {
            sigma[cycle[i]] = cycle[(i + 1) % cycle.len()];
        }
    }
    let base = if g.basepoint() == v {
        n1
    } else {
        g.basepoint().0
    };
    Ok(RibbonGraph::new(sigma, alpha, base)?)
}

/// Partitions of the half-edges at `v` into two non-empty sets whose
/// expansion is a valid plain graph. At a non-basepoint vertex the first set
/// holds the smallest half-edge; at the basepoint the first set keeps the
/// basepoint.
pub fn plain_expansions(g: &PlainGraph, v: VertexId) -> Vec<(Vec<HalfEdge>, Vec<HalfEdge>)> {
    let r = g.as_ribbon();
    let rot = r.rotation(v);
    let d = rot.len();
    assert!(d < 30, "vertex valence too large to enumerate subsets");
    let is_base = v == r.basepoint();
    let mut out = Vec::new();
    for mask in 1u32..((1u32 << d) - 1) {
        if !is_base && mask & 1 == 0 {
            continue;
        }
        let a: Vec<_> = (0..d)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| rot[i])
            .collect();
        let b: Vec<_> = (0..d)
            .filter(|i| mask & (1 << i) == 0)
            .map(|i| rot[i])
            .collect();
        let ok = splice_unchecked(r, v, &a, &b)
            .map(|x| x.is_valid())
            .unwrap_or(false);
        if ok {
            out.push((a, b));
        }
    }
    out
}

/// Expands a plain graph along an arbitrary split of the half-edges at `v`.
pub fn expand_plain(
    g: &PlainGraph,
    v: VertexId,
    a: &[HalfEdge],
    b: &[HalfEdge],
) -> Result<PlainGraph, MoveError> {
    Ok(PlainGraph::from_ribbon(&splice_unchecked(
        g.as_ribbon(),
        v,
        a,
        b,
    )?))
}
