//! Canonical codes, isomorphism and automorphism groups of basepointed graphs.
//!
//! Ribbon mode: an orientation-preserving isomorphism is a half-edge bijection
//! commuting with both `sigma` and `alpha`. Once the image of one half-edge is
//! fixed, connectivity forces the rest, so the code is the lexicographically
//! smallest breadth-first relabeling over all roots at the basepoint.
//!
//! Plain mode: the code is the smallest edge-multiplicity matrix over all
//! orderings of the non-basepoint vertices, with the basepoint first.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::ribbon::{HalfEdge, PlainGraph, RibbonGraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    Ribbon,
    Plain,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Ribbon => write!(f, "ribbon"),
            Mode::Plain => write!(f, "plain"),
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CanonError {
    #[error("cannot compare a {0} graph with a {1} graph")]
    ModeMismatch(Mode, Mode),
    #[error("malformed canonical code: {0}")]
    Malformed(String),
}

/// Totally ordered fingerprint of a graph up to basepointed isomorphism.
/// The first entry records the mode so codes of different modes never agree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(pub Vec<u32>);

impl CanonicalCode {
    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for x in &self.0 {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{x}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for CanonicalCode {
    type Err = CanonError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split_whitespace()
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| CanonError::Malformed(t.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(CanonicalCode)
    }
}

const RIBBON_TAG: u32 = 0;
const PLAIN_TAG: u32 = 1;

/// Breadth-first labeling from `root`: `order[i]` is the half-edge labeled `i`.
fn rooted_order(g: &RibbonGraph, root: HalfEdge) -> Vec<HalfEdge> {
    let n = g.half_edge_count();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::from([root]);
    seen[root] = true;
    while let Some(h) = queue.pop_front() {
        order.push(h);
        for x in [g.alpha_of(h), g.sigma_of(h)] {
            if !seen[x] {
                seen[x] = true;
                queue.push_back(x);
            }
        }
    }
    order
}

fn code_for_order(g: &RibbonGraph, order: &[HalfEdge]) -> Vec<u32> {
    let n = order.len();
    let mut label = vec![0u32; n];
    for (i, &h) in order.iter().enumerate() {
        label[h] = i as u32;
    }
    let mut code = Vec::with_capacity(2 * n + 3);
    code.push(RIBBON_TAG);
    code.push(n as u32);
    code.push(g.vertex_count() as u32);
    for &h in order {
        code.push(label[g.sigma_of(h)]);
        code.push(label[g.alpha_of(h)]);
    }
    code
}

/// Smallest code together with every root ordering that attains it.
fn ribbon_minimal_orders(g: &RibbonGraph) -> (Vec<u32>, Vec<Vec<HalfEdge>>) {
    let mut best: Option<Vec<u32>> = None;
    let mut orders = Vec::new();
    for root in g.rotation(g.basepoint()) {
        let order = rooted_order(g, root);
        let code = code_for_order(g, &order);
        match &best {
            Some(b) if code > *b => {}
            Some(b) if code == *b => orders.push(order),
            _ => {
                best = Some(code);
                orders = vec![order];
            }
        }
    }
    (best.expect("basepoint has at least one half-edge"), orders)
}

struct PlainLayout {
    /// Vertex ids with the basepoint first.
    vertices: Vec<VertexId>,
    matrix: Vec<Vec<u32>>,
}

fn plain_layout(g: &RibbonGraph) -> PlainLayout {
    let base = g.basepoint();
    let mut vertices = vec![base];
    vertices.extend(g.vertices().into_iter().filter(|&v| v != base));
    let index: BTreeMap<VertexId, usize> =
        vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let k = vertices.len();
    let mut matrix = vec![vec![0u32; k]; k];
    for (a, b) in g.edges() {
        let (i, j) = (index[&g.vertex_of(a)], index[&g.vertex_of(b)]);
        matrix[i][j] += 1;
        if i != j {
            matrix[j][i] += 1;
        }
    }
    PlainLayout { vertices, matrix }
}

fn plain_code_for(layout: &PlainLayout, perm: &[usize], edges: usize) -> Vec<u32> {
    // perm[new position] = old index
    let k = perm.len();
    let mut code = Vec::with_capacity(3 + k * (k + 1) / 2);
    code.push(PLAIN_TAG);
    code.push(2 * edges as u32);
    code.push(k as u32);
    for i in 0..k {
        for j in i..k {
            code.push(layout.matrix[perm[i]][perm[j]]);
        }
    }
    code
}

/// Vertex orderings (basepoint first) to try, restricted so that vertices are
/// grouped by a relabeling-invariant signature.
fn plain_candidate_orders(layout: &PlainLayout) -> Vec<Vec<usize>> {
    let k = layout.vertices.len();
    let signature = |i: usize| -> (u32, u32) {
        let loops = layout.matrix[i][i];
        let valence: u32 = layout.matrix[i].iter().sum::<u32>() + loops;
        (valence, loops)
    };
    let mut groups: BTreeMap<(u32, u32), Vec<usize>> = BTreeMap::new();
    for i in 1..k {
        groups.entry(signature(i)).or_default().push(i);
    }
    let mut orders: Vec<Vec<usize>> = vec![vec![0]];
    for group in groups.values() {
        let perms = permutations(group);
        let mut next = Vec::with_capacity(orders.len() * perms.len());
        for prefix in &orders {
            for p in &perms {
                let mut o = prefix.clone();
                o.extend_from_slice(p);
                next.push(o);
            }
        }
        orders = next;
    }
    orders
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn plain_minimal(g: &RibbonGraph) -> (Vec<u32>, PlainLayout, Vec<Vec<usize>>) {
    let layout = plain_layout(g);
    let mut best: Option<Vec<u32>> = None;
    let mut winners = Vec::new();
    for order in plain_candidate_orders(&layout) {
        let code = plain_code_for(&layout, &order, g.edge_count());
        match &best {
            Some(b) if code > *b => {}
            Some(b) if code == *b => winners.push(order),
            _ => {
                best = Some(code);
                winners = vec![order];
            }
        }
    }
    (best.expect("at least one ordering"), layout, winners)
}

/// Canonical code of `g` in the given mode. In plain mode the rotations of
/// `g` are ignored.
pub fn canonical_code(g: &RibbonGraph, mode: Mode) -> CanonicalCode {
    match mode {
        Mode::Ribbon => CanonicalCode(ribbon_minimal_orders(g).0),
        Mode::Plain => CanonicalCode(plain_minimal(g).0),
    }
}

pub fn plain_code(g: &PlainGraph) -> CanonicalCode {
    canonical_code(g.as_ribbon(), Mode::Plain)
}

/// A relabeling `perm` (old half-edge -> new) taking `g` to its canonical
/// representative in ribbon mode.
pub fn canonical_labeling(g: &RibbonGraph) -> Vec<HalfEdge> {
    let (_, orders) = ribbon_minimal_orders(g);
    let order = &orders[0];
    let mut perm = vec![0; order.len()];
    for (i, &h) in order.iter().enumerate() {
        perm[h] = i;
    }
    perm
}

/// The canonical representative of the isomorphism class of `g`: equal
/// codes give identical values.
pub fn canonical_form(g: &RibbonGraph, mode: Mode) -> RibbonGraph {
    match mode {
        Mode::Ribbon => g.relabel(&canonical_labeling(g)),
        Mode::Plain => canonical_plain_form(g).0,
    }
}

/// The canonical plain representative plus a relabeling from `g` to it.
fn canonical_plain_form(g: &RibbonGraph) -> (RibbonGraph, Vec<HalfEdge>) {
    let (_, layout, winners) = plain_minimal(g);
    let order = &winners[0];
    let k = order.len();
    // Half-edges of each unordered vertex pair, grouped in the canonical
    // vertex order.
    let mut position = vec![0usize; k];
    for (new, &old) in order.iter().enumerate() {
        position[old] = new;
    }
    let index: BTreeMap<VertexId, usize> = layout
        .vertices
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let mut oriented: Vec<(usize, usize, HalfEdge, HalfEdge)> = g
        .edges()
        .into_iter()
        .map(|(a, b)| {
            let pa = position[index[&g.vertex_of(a)]];
            let pb = position[index[&g.vertex_of(b)]];
            if pa <= pb {
                (pa, pb, a, b)
            } else {
                (pb, pa, b, a)
            }
        })
        .collect();
    oriented.sort_by_key(|&(i, j, _, _)| (i, j));
    let n = g.half_edge_count();
    let mut perm = vec![0; n];
    for (e, &(_, _, a, b)) in oriented.iter().enumerate() {
        perm[a] = 2 * e;
        perm[b] = 2 * e + 1;
    }
    let relabeled = PlainGraph::from_ribbon(&g.relabel(&perm));
    (relabeled.as_ribbon().clone(), perm)
}

pub fn canonical_plain(g: &PlainGraph) -> PlainGraph {
    PlainGraph::from_ribbon(&canonical_plain_form(g.as_ribbon()).0)
}

/// A graph together with the mode it is compared in.
#[derive(Clone, Copy, Debug)]
pub enum Typed<'a> {
    Ribbon(&'a RibbonGraph),
    Plain(&'a PlainGraph),
}

impl Typed<'_> {
    pub fn mode(&self) -> Mode {
        match self {
            Typed::Ribbon(_) => Mode::Ribbon,
            Typed::Plain(_) => Mode::Plain,
        }
    }

    pub fn code(&self) -> CanonicalCode {
        match self {
            Typed::Ribbon(g) => canonical_code(g, Mode::Ribbon),
            Typed::Plain(g) => plain_code(g),
        }
    }
}

/// Whether two graphs of the same kind are isomorphic.
pub fn is_isomorphic(a: Typed<'_>, b: Typed<'_>) -> Result<bool, CanonError> {
    if a.mode() != b.mode() {
        return Err(CanonError::ModeMismatch(a.mode(), b.mode()));
    }
    Ok(a.code() == b.code())
}

/// Every automorphism of `g` as a half-edge permutation `perm[h]`. Ribbon
/// automorphisms commute with `sigma` and `alpha`; plain automorphisms
/// commute with `alpha` and map vertices to vertices. Both fix the basepoint.
pub fn automorphisms(g: &RibbonGraph, mode: Mode) -> Vec<Vec<HalfEdge>> {
    let mut out = match mode {
        Mode::Ribbon => {
            let (_, orders) = ribbon_minimal_orders(g);
            let reference = &orders[0];
            orders
                .iter()
                .map(|order| {
                    let mut perm = vec![0; order.len()];
                    for (i, &h) in reference.iter().enumerate() {
                        perm[h] = order[i];
                    }
                    perm
                })
                .collect()
        }
        Mode::Plain => plain_automorphisms(g),
    };
    out.sort();
    out.dedup();
    out
}

fn plain_automorphisms(g: &RibbonGraph) -> Vec<Vec<HalfEdge>> {
    let layout = plain_layout(g);
    let k = layout.vertices.len();
    let candidates = plain_candidate_orders(&layout);
    let reference = candidates[0].clone();
    let base_code = plain_code_for(&layout, &reference, g.edge_count());
    let index: BTreeMap<VertexId, usize> = layout
        .vertices
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();

    // Half-edges of each ordered vertex pair (i, j), i <= j, oriented so the
    // first half-edge sits at i.
    let mut classes: BTreeMap<(usize, usize), Vec<(HalfEdge, HalfEdge)>> = BTreeMap::new();
    for (a, b) in g.edges() {
        let (i, j) = (index[&g.vertex_of(a)], index[&g.vertex_of(b)]);
        let entry = if i <= j { (i, j, a, b) } else { (j, i, b, a) };
        classes
            .entry((entry.0, entry.1))
            .or_default()
            .push((entry.2, entry.3));
    }

    let mut result = Vec::new();
    for order in candidates {
        if plain_code_for(&layout, &order, g.edge_count()) != base_code {
            continue;
        }
        // vertex reference[p] goes to vertex order[p]
        let mut image = vec![0usize; k];
        for (p, &old) in reference.iter().enumerate() {
            image[old] = order[p];
        }
        let mut partial: Vec<Vec<HalfEdge>> = vec![vec![usize::MAX; g.half_edge_count()]];
        for (&(i, j), edges) in &classes {
            let (ti, tj) = (image[i], image[j]);
            let key = if ti <= tj { (ti, tj) } else { (tj, ti) };
            let targets = &classes[&key];
            let mut choices: Vec<Vec<(HalfEdge, HalfEdge)>> = Vec::new();
            for p in permutations(&(0..edges.len()).collect::<Vec<_>>()) {
                if i == j {
                    for flips in 0u32..(1 << edges.len()) {
                        let mut c = Vec::new();
                        for (s, &t) in p.iter().enumerate() {
                            let (ta, tb) = targets[t];
                            let (ta, tb) = if flips & (1 << s) != 0 {
                                (tb, ta)
                            } else {
                                (ta, tb)
                            };
                            c.push((edges[s].0, ta));
                            c.push((edges[s].1, tb));
                        }
                        choices.push(c);
                    }
                } else {
                    let mut c = Vec::new();
                    for (s, &t) in p.iter().enumerate() {
                        let (ta, tb) = targets[t];
                        // the half-edge at i must land at image[i]
                        let (ta, tb) = if ti <= tj { (ta, tb) } else { (tb, ta) };
                        c.push((edges[s].0, ta));
                        c.push((edges[s].1, tb));
                    }
                    choices.push(c);
                }
            }
            let mut next = Vec::with_capacity(partial.len() * choices.len());
            for base in &partial {
                for c in &choices {
                    let mut perm = base.clone();
                    for &(from, to) in c {
                        perm[from] = to;
                    }
                    next.push(perm);
                }
            }
            partial = next;
        }
        result.extend(partial);
    }
    result
}
