//! Metric ribbon graphs, height functions, critical points, canonical
//! splitting and sliding in epsilon cones. All arithmetic is exact.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::canon::canonical_labeling;
use crate::moves::{contract_edges, Forest, MoveError};
use crate::ribbon::{EdgeId, GraphError, HalfEdge, RibbonGraph, VertexId};

pub type Length = BigRational;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum MorseError {
    #[error("edge {0} has a non-positive length")]
    NonPositiveLength(EdgeId),
    #[error("edge {0} has no length")]
    MissingLength(EdgeId),
    #[error("{0} is not an edge of the graph")]
    UnknownEdge(EdgeId),
    #[error("lengths sum to {0}, not 1")]
    NotNormalized(Length),
    #[error("offset {offset} is outside edge {edge}")]
    OffsetOutOfRange { edge: EdgeId, offset: Length },
    #[error("epsilon must be positive")]
    NonPositiveEpsilon,
    #[error("epsilon {epsilon} is not below {bound} ({limit})")]
    EpsilonTooLarge {
        epsilon: Box<Length>,
        bound: &'static str,
        limit: Box<Length>,
    },
    #[error("vertex {0} is not critical; split the graph first")]
    NotSplit(VertexId),
    #[error("half-edge {0} is not an upward half-edge at a critical vertex")]
    NotABranch(HalfEdge),
    #[error("half-edge {0} is listed more than once")]
    DuplicateBranch(HalfEdge),
    #[error("target {target} for branch {branch} is outside its attaching interval")]
    TargetOutOfInterval { branch: HalfEdge, target: Length },
    #[error("targets of {first} and {second} violate the order of their attaching set")]
    OrderViolation { first: HalfEdge, second: HalfEdge },
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A ribbon graph with a positive rational length on every edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricRibbonGraph {
    graph: RibbonGraph,
    lengths: BTreeMap<EdgeId, Length>,
    normalized: bool,
}

impl MetricRibbonGraph {
    pub fn new(
        graph: RibbonGraph,
        lengths: BTreeMap<EdgeId, Length>,
        normalized: bool,
    ) -> Result<Self, MorseError> {
        let ids: BTreeSet<EdgeId> = graph.edge_ids().into_iter().collect();
        if let Some(&e) = lengths.keys().find(|e| !ids.contains(e)) {
            return Err(MorseError::UnknownEdge(e));
        }
        for &e in &ids {
            match lengths.get(&e) {
                None => return Err(MorseError::MissingLength(e)),
                Some(l) if !l.is_positive() => return Err(MorseError::NonPositiveLength(e)),
                _ => {}
            }
        }
        if normalized {
            let total: Length = lengths.values().sum();
            if !total.is_one() {
                return Err(MorseError::NotNormalized(total));
            }
        }
        Ok(MetricRibbonGraph {
            graph,
            lengths,
            normalized,
        })
    }

    /// Scales the given lengths so they sum to 1.
    pub fn normalized(
        graph: RibbonGraph,
        lengths: BTreeMap<EdgeId, Length>,
    ) -> Result<Self, MorseError> {
        let m = MetricRibbonGraph::new(graph, lengths, false)?;
        Ok(m.renormalize())
    }

    /// Every edge gets length `1/E`.
    pub fn uniform(graph: RibbonGraph) -> Self {
        let e = graph.edge_count();
        let l = Length::new(BigInt::one(), BigInt::from(e));
        let lengths = graph
            .edge_ids()
            .into_iter()
            .map(|id| (id, l.clone()))
            .collect();
        MetricRibbonGraph {
            graph,
            lengths,
            normalized: true,
        }
    }

    fn renormalize(mut self) -> Self {
        let total: Length = self.lengths.values().sum();
        for l in self.lengths.values_mut() {
            *l = &*l / &total;
        }
        self.normalized = true;
        self
    }

    pub fn graph(&self) -> &RibbonGraph {
        &self.graph
    }

    pub fn lengths(&self) -> &BTreeMap<EdgeId, Length> {
        &self.lengths
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn length(&self, e: EdgeId) -> &Length {
        &self.lengths[&e]
    }

    /// Length of the edge containing half-edge `h`.
    pub fn length_of(&self, h: HalfEdge) -> &Length {
        &self.lengths[&self.graph.edge_of(h)]
    }

    pub fn min_length(&self) -> &Length {
        self.lengths.values().min().expect("graphs have edges")
    }
}

/// A point on an edge, `offset` measured from the end carrying the edge's
/// smaller half-edge.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GraphPoint {
    pub edge: EdgeId,
    pub offset: Length,
}

/// Distances from the basepoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Heights {
    vertex: BTreeMap<VertexId, Length>,
}

impl Heights {
    pub fn vertex(&self, v: VertexId) -> &Length {
        &self.vertex[&v]
    }

    pub fn vertices(&self) -> &BTreeMap<VertexId, Length> {
        &self.vertex
    }

    /// Height of a point, the shorter of the two approaches along its edge.
    pub fn at(&self, m: &MetricRibbonGraph, p: &GraphPoint) -> Result<Length, MorseError> {
        let g = m.graph();
        if p.edge.0 >= g.half_edge_count() || g.edge_of(p.edge.0) != p.edge {
            return Err(MorseError::UnknownEdge(p.edge));
        }
        let l = m.length(p.edge);
        if p.offset.is_negative() || &p.offset > l {
            return Err(MorseError::OffsetOutOfRange {
                edge: p.edge,
                offset: p.offset.clone(),
            });
        }
        let u = self.vertex(g.vertex_of(p.edge.0));
        let v = self.vertex(g.vertex_of(g.alpha_of(p.edge.0)));
        Ok((u + &p.offset).min(v + (l - &p.offset)))
    }
}

pub fn heights(m: &MetricRibbonGraph) -> Heights {
    let g = m.graph();
    let mut dist: BTreeMap<VertexId, Length> = BTreeMap::new();
    let mut queue = BinaryHeap::new();
    queue.push(Reverse((Length::zero(), g.basepoint())));
    while let Some(Reverse((d, v))) = queue.pop() {
        if dist.contains_key(&v) {
            continue;
        }
        for h in g.rotation(v) {
            let w = g.vertex_of(g.alpha_of(h));
            if !dist.contains_key(&w) {
                queue.push(Reverse((&d + m.length_of(h), w)));
            }
        }
        dist.insert(v, d);
    }
    Heights { vertex: dist }
}

/// Whether leaving the vertex of `h` along `h` decreases height.
fn is_downward(m: &MetricRibbonGraph, hs: &Heights, h: HalfEdge) -> bool {
    let g = m.graph();
    let x = g.vertex_of(h);
    let y = g.vertex_of(g.alpha_of(h));
    x != y && hs.vertex(y) + m.length_of(h) == *hs.vertex(x)
}

/// Downward half-edges at `v`, in rotation order.
pub fn downward_half_edges(m: &MetricRibbonGraph, hs: &Heights, v: VertexId) -> Vec<HalfEdge> {
    m.graph()
        .rotation(v)
        .into_iter()
        .filter(|&h| is_downward(m, hs, h))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CriticalPoint {
    Vertex(VertexId),
    Interior(GraphPoint),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalInfo {
    pub point: CriticalPoint,
    pub height: Length,
    pub codimension: usize,
    /// Half-edges through which the downward paths leave the point: the
    /// downward half-edges at a vertex, or both ends of the edge (traversed
    /// towards their own vertex) for an interior point.
    pub downward: Vec<HalfEdge>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathEnd {
    Critical(usize),
    Basepoint,
}

/// A downward walk from a critical point through non-critical vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DownwardPath {
    pub from: usize,
    /// Half-edges through which the walk enters each successive vertex.
    pub arrivals: Vec<HalfEdge>,
    pub to: PathEnd,
}

impl DownwardPath {
    pub fn is_extended_branch(&self) -> bool {
        matches!(self.to, PathEnd::Critical(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalStructure {
    pub heights: Heights,
    pub points: Vec<CriticalInfo>,
    pub paths: Vec<DownwardPath>,
    pub codimension: usize,
    /// Downward paths beginning and ending at critical points.
    pub c: usize,
    /// Those paths with no critical point in their interior.
    pub e: usize,
}

impl CriticalStructure {
    pub fn extended_branches(&self) -> impl Iterator<Item = &DownwardPath> {
        self.paths.iter().filter(|p| p.is_extended_branch())
    }

    pub fn critical_vertices(&self) -> Vec<VertexId> {
        self.points
            .iter()
            .filter_map(|p| match p.point {
                CriticalPoint::Vertex(v) => Some(v),
                CriticalPoint::Interior(_) => None,
            })
            .collect()
    }

    pub fn is_critical(&self, v: VertexId) -> bool {
        self.points
            .iter()
            .any(|p| p.point == CriticalPoint::Vertex(v))
    }
}

pub fn critical_structure(m: &MetricRibbonGraph) -> CriticalStructure {
    let g = m.graph();
    let hs = heights(m);
    let base = g.basepoint();
    let mut points = Vec::new();
    let mut vertex_index = BTreeMap::new();
    for v in g.vertices() {
        if v == base {
            continue;
        }
        let down = downward_half_edges(m, &hs, v);
        if down.len() >= 2 {
            vertex_index.insert(v, points.len());
            points.push(CriticalInfo {
                point: CriticalPoint::Vertex(v),
                height: hs.vertex(v).clone(),
                codimension: down.len() - 1,
                downward: down,
            });
        }
    }
    for (a, b) in g.edges() {
        let l = m.length_of(a);
        let (hu, hv) = (hs.vertex(g.vertex_of(a)), hs.vertex(g.vertex_of(b)));
        if (hu - hv).abs() < *l {
            let two = Length::from_integer(BigInt::from(2));
            let t = (hv + l - hu) / &two;
            let height = hu + &t;
            points.push(CriticalInfo {
                point: CriticalPoint::Interior(GraphPoint {
                    edge: EdgeId(a),
                    offset: t,
                }),
                height,
                codimension: 0,
                // towards the end at a, entering through a; towards b through b
                downward: vec![a, b],
            });
        }
    }

    let mut paths = Vec::new();
    for (i, info) in points.iter().enumerate() {
        for &d in &info.downward {
            let first = match info.point {
                CriticalPoint::Vertex(_) => g.alpha_of(d),
                CriticalPoint::Interior(_) => d,
            };
            let mut arrivals = vec![first];
            let to = loop {
                let y = g.vertex_of(*arrivals.last().unwrap());
                if y == base {
                    break PathEnd::Basepoint;
                }
                if let Some(&j) = vertex_index.get(&y) {
                    break PathEnd::Critical(j);
                }
                let next = downward_half_edges(m, &hs, y);
                debug_assert_eq!(next.len(), 1, "a non-critical vertex has one way down");
                arrivals.push(g.alpha_of(next[0]));
            };
            paths.push(DownwardPath {
                from: i,
                arrivals,
                to,
            });
        }
    }

    // paths starting at each critical point that end at a critical point,
    // possibly passing through further critical points
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].height.cmp(&points[b].height));
    let mut count = vec![0usize; points.len()];
    for &i in &order {
        count[i] = paths
            .iter()
            .filter(|p| p.from == i)
            .map(|p| match p.to {
                PathEnd::Critical(j) => 1 + count[j],
                PathEnd::Basepoint => 0,
            })
            .sum();
    }
    let e = paths.iter().filter(|p| p.is_extended_branch()).count();
    CriticalStructure {
        codimension: points.iter().map(|p| p.codimension).sum(),
        c: count.iter().sum(),
        e,
        heights: hs,
        points,
        paths,
    }
}

/// Collapses a forest, keeping the lengths of the surviving edges. A
/// normalized metric is rescaled to total length 1 again.
pub fn collapse_metric(
    m: &MetricRibbonGraph,
    forest: &Forest,
) -> Result<MetricRibbonGraph, MorseError> {
    let g = m.graph();
    let checked = Forest::new(g, forest.edges().map(|e| e.0))?;
    let edges: Vec<EdgeId> = checked.edges().collect();
    let (next, map) = contract_edges(g, &edges)?;
    let mut lengths = BTreeMap::new();
    for e in g.edge_ids() {
        if let (Some(a), Some(b)) = (map[e.0], map[g.alpha_of(e.0)]) {
            lengths.insert(EdgeId(a.min(b)), m.length(e).clone());
        }
    }
    let out = MetricRibbonGraph::new(next, lengths, false)?;
    Ok(if m.normalized { out.renormalize() } else { out })
}

/// Canonical splitting together with the contracted edges, as a forest in
/// the input graph.
pub fn canonical_split_forest(
    m: &MetricRibbonGraph,
) -> Result<(MetricRibbonGraph, Forest), MorseError> {
    let original = m.graph();
    let mut current = m.clone();
    // origin[h] = half-edge of the input graph that h descends from
    let mut origin: Vec<HalfEdge> = (0..original.half_edge_count()).collect();
    let mut contracted = Vec::new();
    loop {
        let g = current.graph();
        let hs = heights(&current);
        let base = g.basepoint();
        let mut candidates: Vec<(VertexId, HalfEdge)> = Vec::new();
        for v in g.vertices() {
            if v == base {
                continue;
            }
            let down = downward_half_edges(&current, &hs, v);
            if down.len() == 1 {
                candidates.push((v, down[0]));
            }
        }
        let Some(top) = candidates.iter().map(|(v, _)| hs.vertex(*v)).max().cloned() else {
            break;
        };
        let labels = canonical_labeling(g);
        let &(_, edge) = candidates
            .iter()
            .filter(|(v, _)| *hs.vertex(*v) == top)
            .min_by_key(|(v, _)| g.rotation(*v).into_iter().map(|h| labels[h]).min())
            .expect("a candidate has the top height");

        contracted.push(origin[edge]);
        let (next, map) = contract_edges(g, &[g.edge_of(edge)])?;
        let mut lengths = BTreeMap::new();
        let mut next_origin = vec![0; next.half_edge_count()];
        for (old, new) in map.iter().enumerate() {
            if let Some(new) = *new {
                next_origin[new] = origin[old];
                if g.edge_of(old).0 == old {
                    lengths.insert(EdgeId(new), current.length(EdgeId(old)).clone());
                }
            }
        }
        origin = next_origin;
        let split = MetricRibbonGraph::new(next, lengths, false)?;
        current = if m.normalized {
            split.renormalize()
        } else {
            split
        };
    }
    let forest = Forest::new(original, contracted)?;
    Ok((current, forest))
}

/// Contracts, from the top down, the single downward edge of every
/// non-critical vertex. The result has every non-basepoint vertex critical.
pub fn canonical_split(m: &MetricRibbonGraph) -> Result<MetricRibbonGraph, MorseError> {
    Ok(canonical_split_forest(m)?.0)
}

/// Whether every non-basepoint vertex is critical.
pub fn is_split(m: &MetricRibbonGraph) -> bool {
    let cs = critical_structure(m);
    let base = m.graph().basepoint();
    m.graph()
        .vertices()
        .into_iter()
        .all(|v| v == base || cs.is_critical(v))
}

/// Exclusive upper bound for epsilon: the minimum edge length and half the
/// smallest gap between distinct critical heights, whichever is smaller.
pub fn max_epsilon(m: &MetricRibbonGraph) -> Length {
    let cs = critical_structure(m);
    let heights: BTreeSet<&Length> = cs.points.iter().map(|p| &p.height).collect();
    let half_gap = heights
        .iter()
        .zip(heights.iter().skip(1))
        .map(|(a, b)| (*b - *a) / Length::from_integer(BigInt::from(2)))
        .min();
    let l = m.min_length().clone();
    match half_gap {
        Some(gap) if gap < l => gap,
        _ => l,
    }
}

fn check_epsilon(m: &MetricRibbonGraph, eps: &Length) -> Result<(), MorseError> {
    if !eps.is_positive() {
        return Err(MorseError::NonPositiveEpsilon);
    }
    let l = m.min_length();
    if eps >= l {
        return Err(MorseError::EpsilonTooLarge {
            epsilon: Box::new(eps.clone()),
            bound: "minimum edge length",
            limit: Box::new(l.clone()),
        });
    }
    let limit = max_epsilon(m);
    if *eps >= limit {
        return Err(MorseError::EpsilonTooLarge {
            epsilon: Box::new(eps.clone()),
            bound: "half the smallest gap between critical heights",
            limit: Box::new(limit),
        });
    }
    Ok(())
}

/// A maximal cyclic run of upward half-edges at a critical vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttachingSet {
    pub vertex: VertexId,
    /// Upward half-edges in rotation order.
    pub half_edges: Vec<HalfEdge>,
    /// First downward half-edge after the run.
    pub positive: HalfEdge,
    /// First downward half-edge before the run.
    pub negative: HalfEdge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttachingStructure {
    pub epsilon: Length,
    pub sets: Vec<AttachingSet>,
    /// Dimension per critical vertex.
    pub vertex_dimension: BTreeMap<VertexId, usize>,
    pub dimension: usize,
}

impl AttachingStructure {
    /// The attaching set containing the upward half-edge `h`.
    pub fn set_of(&self, h: HalfEdge) -> Option<&AttachingSet> {
        self.sets.iter().find(|s| s.half_edges.contains(&h))
    }
}

pub fn attaching_structure(
    m: &MetricRibbonGraph,
    eps: &Length,
) -> Result<AttachingStructure, MorseError> {
    let g = m.graph();
    let cs = critical_structure(m);
    let base = g.basepoint();
    if let Some(v) = g
        .vertices()
        .into_iter()
        .find(|&v| v != base && !cs.is_critical(v))
    {
        return Err(MorseError::NotSplit(v));
    }
    check_epsilon(m, eps)?;
    let mut sets = Vec::new();
    let mut vertex_dimension = BTreeMap::new();
    for v in cs.critical_vertices() {
        let rot = g.rotation(v);
        let d = rot.len();
        let down: Vec<bool> = rot
            .iter()
            .map(|&h| is_downward(m, &cs.heights, h))
            .collect();
        let start = (0..d)
            .find(|&i| down[i])
            .expect("critical vertices have downward half-edges");
        let mut run: Vec<HalfEdge> = Vec::new();
        let mut before = rot[start];
        for step in 1..=d {
            let i = (start + step) % d;
            if down[i] {
                if !run.is_empty() {
                    sets.push(AttachingSet {
                        vertex: v,
                        half_edges: std::mem::take(&mut run),
                        positive: rot[i],
                        negative: before,
                    });
                }
                before = rot[i];
            } else {
                run.push(rot[i]);
            }
        }
        vertex_dimension.insert(v, down.iter().filter(|&&x| !x).count());
    }
    Ok(AttachingStructure {
        epsilon: eps.clone(),
        dimension: vertex_dimension.values().sum(),
        sets,
        vertex_dimension,
    })
}

/// Result of sliding branches: the new graph and the edges it gained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlideResult {
    pub graph: MetricRibbonGraph,
    pub created: Vec<EdgeId>,
}

pub fn slide_branch(
    m: &MetricRibbonGraph,
    eps: &Length,
    branch: HalfEdge,
    target: Length,
) -> Result<SlideResult, MorseError> {
    slide_branches(m, eps, &[(branch, target)])
}

/// Moves the attaching points of the given branches (upward half-edges at
/// critical vertices) into the epsilon cones. A positive target lies on the
/// positive downward direction at that distance from the vertex, a negative
/// one on the negative direction. Branches left out stay at 0.
pub fn slide_branches(
    m: &MetricRibbonGraph,
    eps: &Length,
    targets: &[(HalfEdge, Length)],
) -> Result<SlideResult, MorseError> {
    let att = attaching_structure(m, eps)?;
    let g = m.graph();
    let mut chosen: BTreeMap<HalfEdge, Length> = BTreeMap::new();
    for (h, y) in targets {
        if *h >= g.half_edge_count() || att.set_of(*h).is_none() {
            return Err(MorseError::NotABranch(*h));
        }
        if chosen.insert(*h, y.clone()).is_some() {
            return Err(MorseError::DuplicateBranch(*h));
        }
        if y.abs() >= *eps {
            return Err(MorseError::TargetOutOfInterval {
                branch: *h,
                target: y.clone(),
            });
        }
    }
    let zero = Length::zero();
    for set in &att.sets {
        let ys: Vec<&Length> = set
            .half_edges
            .iter()
            .map(|h| chosen.get(h).unwrap_or(&zero))
            .collect();
        for k in 1..ys.len() {
            if ys[k - 1] > ys[k] {
                return Err(MorseError::OrderViolation {
                    first: set.half_edges[k - 1],
                    second: set.half_edges[k],
                });
            }
        }
    }

    // For each downward half-edge: (distance, branches arriving from the run
    // before it, branches from the run after it).
    type Stops = BTreeMap<Length, (Vec<HalfEdge>, Vec<HalfEdge>)>;
    let mut per_edge: BTreeMap<HalfEdge, Stops> = BTreeMap::new();
    for set in &att.sets {
        for &h in &set.half_edges {
            let Some(y) = chosen.get(&h) else { continue };
            if y.is_positive() {
                per_edge
                    .entry(set.positive)
                    .or_default()
                    .entry(y.clone())
                    .or_default()
                    .0
                    .push(h);
            } else if y.is_negative() {
                per_edge
                    .entry(set.negative)
                    .or_default()
                    .entry(-y)
                    .or_default()
                    .1
                    .push(h);
            }
        }
    }

    let moved: BTreeSet<HalfEdge> = per_edge
        .values()
        .flat_map(|stops| {
            stops
                .values()
                .flat_map(|(l, r)| l.iter().chain(r.iter()).copied())
        })
        .collect();
    let mut cycles: Vec<Vec<HalfEdge>> = g
        .vertices()
        .into_iter()
        .map(|v| {
            g.rotation(v)
                .into_iter()
                .filter(|h| !moved.contains(h))
                .collect()
        })
        .collect();
    let mut pairs: Vec<(HalfEdge, HalfEdge)> = g.edges();
    let mut lengths: BTreeMap<HalfEdge, Length> = pairs
        .iter()
        .map(|&(a, _)| (a, m.length_of(a).clone()))
        .collect();
    let mut next = g.half_edge_count();
    let mut created = Vec::new();
    for (&d, stops) in &per_edge {
        // a new segment from x to the first stop takes the place of d at x,
        // and d itself ends up leaving the lowest stop
        let top = next;
        next += 1;
        for h in cycles.iter_mut().flatten() {
            if *h == d {
                *h = top;
            }
        }
        let mut up = top;
        let mut last = Length::zero();
        for (i, (dist, (left, right))) in stops.iter().enumerate() {
            let arrive = next;
            next += 1;
            pairs.push((up, arrive));
            lengths.insert(up, dist - &last);
            created.push(up);
            let down = if i + 1 == stops.len() {
                d
            } else {
                next += 1;
                next - 1
            };
            let mut cycle = vec![arrive];
            cycle.extend(left.iter().copied());
            cycle.push(down);
            cycle.extend(right.iter().copied());
            cycles.push(cycle);
            up = down;
            last = dist.clone();
        }
        lengths.insert(g.edge_of(d).0, m.length_of(d) - &last);
    }

    let mut sigma = vec![usize::MAX; next];
    for c in &cycles {
        for i in 0..c.len() {
            sigma[c[i]] = c[(i + 1) % c.len()];
        }
    }
    let mut alpha = vec![usize::MAX; next];
    for &(a, b) in &pairs {
        alpha[a] = b;
        alpha[b] = a;
    }
    let graph = RibbonGraph::new(sigma, alpha, g.basepoint().0)?;
    let mut metric = BTreeMap::new();
    for (h, l) in lengths {
        metric.insert(graph.edge_of(h), l);
    }
    let graph = MetricRibbonGraph::new(graph, metric, m.normalized)?;
    let created = created
        .into_iter()
        .map(|h| graph.graph().edge_of(h))
        .collect();
    Ok(SlideResult { graph, created })
}
