//! Vertex enumeration and quotient degree complexes.
//!
//! A vertex of a quotient complex is an isomorphism class of valid graphs of
//! degree at most `k`. A `j`-cell is an orbit of a top graph `G` together with
//! a strictly nested chain of `j` non-empty forests `F1 < ... < Fj`, which
//! stands for the chain of collapses `G/Fj < ... < G/F1 < G`. Orbits are taken
//! under the automorphism group of `G` (orientation preserving in the ribbon
//! case).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::canon::{automorphisms, canonical_code, canonical_form, CanonicalCode, Mode};
use crate::moves::{
    allowed_expansions, collapse_forest, enumerate_forests, expand, expand_plain, plain_expansions,
    Forest, MoveError,
};
use crate::ribbon::{EdgeId, GraphError, PlainGraph, RibbonGraph, SurfaceType};

/// Largest rank for the exhaustive rose census.
pub const MAX_ROSE_RANK: usize = 8;
/// Largest edge count reached by the expansion closure.
pub const MAX_CLOSURE_EDGES: usize = 12;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("{what} {requested} is above the limit {limit}")]
    Capacity {
        what: &'static str,
        requested: usize,
        limit: usize,
    },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Move(#[from] MoveError),
}

/// Which family of graphs a complex is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Family {
    /// Ribbon graphs whose surface has the given genus and punctures.
    Ribbon { genus: usize, punctures: usize },
    /// Plain graphs of the given rank.
    Plain { rank: usize },
}

impl Family {
    pub fn mode(&self) -> Mode {
        match self {
            Family::Ribbon { .. } => Mode::Ribbon,
            Family::Plain { .. } => Mode::Plain,
        }
    }

    pub fn rank(&self) -> usize {
        match *self {
            Family::Ribbon { genus, punctures } => 2 * genus + punctures - 1,
            Family::Plain { rank } => rank,
        }
    }

    fn check(&self) -> Result<(), ComplexError> {
        match *self {
            Family::Ribbon { punctures: 0, .. } => Err(ComplexError::InvalidParameters(
                "a surface needs at least one puncture".into(),
            )),
            Family::Ribbon {
                genus: 0,
                punctures: 1,
            }
            | Family::Plain { rank: 0 } => Err(ComplexError::InvalidParameters(
                "rank must be at least 1".into(),
            )),
            _ => Ok(()),
        }
    }
}

/// Every perfect matching of `0..2n`, as `alpha` arrays.
fn matchings(n: usize) -> Vec<Vec<usize>> {
    fn rec(alpha: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(first) = alpha.iter().position(|&x| x == usize::MAX) else {
            out.push(alpha.clone());
            return;
        };
        for j in first + 1..alpha.len() {
            if alpha[j] == usize::MAX {
                alpha[first] = j;
                alpha[j] = first;
                rec(alpha, out);
                alpha[first] = usize::MAX;
                alpha[j] = usize::MAX;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut vec![usize::MAX; 2 * n], &mut out);
    out
}

/// Isomorphism classes of one-vertex ribbon graphs on the surface `(g, p)`,
/// keyed by canonical code and stored in canonical form.
///
/// One-vertex rotation systems are enumerated by fixing the rotation to the
/// standard cycle and letting the pairing range over all perfect matchings;
/// every rose is conjugate to exactly such a graph.
pub fn enumerate_roses(
    genus: usize,
    punctures: usize,
) -> Result<BTreeMap<CanonicalCode, RibbonGraph>, ComplexError> {
    Family::Ribbon { genus, punctures }.check()?;
    let n = 2 * genus + punctures - 1;
    if n > MAX_ROSE_RANK {
        return Err(ComplexError::Capacity {
            what: "rose rank",
            requested: n,
            limit: MAX_ROSE_RANK,
        });
    }
    let target = SurfaceType::new(genus, punctures);
    let sigma: Vec<usize> = (0..2 * n).map(|i| (i + 1) % (2 * n)).collect();
    let found: Vec<(CanonicalCode, RibbonGraph)> = matchings(n)
        .into_par_iter()
        .filter_map(|alpha| {
            let g = RibbonGraph::new(sigma.clone(), alpha, 0).expect("a matching is an involution");
            (g.surface_type() == target).then(|| {
                (
                    canonical_code(&g, Mode::Ribbon),
                    canonical_form(&g, Mode::Ribbon),
                )
            })
        })
        .collect();
    Ok(found.into_iter().collect())
}

/// Valid graphs obtained from `g` by one expansion, in canonical form.
fn expansions_of(g: &RibbonGraph, mode: Mode) -> Vec<(CanonicalCode, RibbonGraph)> {
    let mut out = Vec::new();
    match mode {
        Mode::Ribbon => {
            for v in g.vertices() {
                for part in allowed_expansions(g, v, true) {
                    let x = expand(g, &part).expect("enumerated partitions are allowed");
                    out.push((canonical_code(&x, mode), canonical_form(&x, mode)));
                }
            }
        }
        Mode::Plain => {
            let p = PlainGraph::from_ribbon(g);
            for v in g.vertices() {
                for (a, b) in plain_expansions(&p, v) {
                    let x = expand_plain(&p, v, &a, &b).expect("enumerated splits are valid");
                    let x = x.as_ribbon();
                    out.push((canonical_code(x, mode), canonical_form(x, mode)));
                }
            }
        }
    }
    out
}

fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    pool.install(f)
}

/// Isomorphism classes of valid graphs of the family with degree at most
/// `max_degree` (`None` for no bound), keyed by canonical code.
///
/// Closure of the minimal graphs under valid expansions. Every valid graph
/// collapses to a rose through valid graphs of no larger degree, so the
/// closure is exhaustive.
pub fn enumerate_vertices(
    family: Family,
    max_degree: Option<usize>,
    jobs: usize,
) -> Result<BTreeMap<CanonicalCode, RibbonGraph>, ComplexError> {
    family.check()?;
    let n = family.rank();
    let k = max_degree.unwrap_or(2 * n - 2).min(2 * n - 2);
    if n + k > MAX_CLOSURE_EDGES {
        return Err(ComplexError::Capacity {
            what: "edge count",
            requested: n + k,
            limit: MAX_CLOSURE_EDGES,
        });
    }
    let mode = family.mode();
    let start: BTreeMap<CanonicalCode, RibbonGraph> = match family {
        Family::Ribbon { genus, punctures } => enumerate_roses(genus, punctures)?,
        Family::Plain { rank } => {
            let rose = PlainGraph::rose(rank)?;
            let g = rose.as_ribbon();
            BTreeMap::from([(canonical_code(g, mode), canonical_form(g, mode))])
        }
    };

    with_jobs(jobs, || {
        let mut seen = start.clone();
        let mut frontier: Vec<RibbonGraph> = start.into_values().collect();
        while !frontier.is_empty() {
            let found: Vec<Vec<(CanonicalCode, RibbonGraph)>> = frontier
                .par_iter()
                .map(|g| {
                    expansions_of(g, mode)
                        .into_iter()
                        .filter(|(_, x)| x.degree() <= k)
                        .collect()
                })
                .collect();
            let mut next = BTreeMap::new();
            for (code, g) in found.into_iter().flatten() {
                if !seen.contains_key(&code) {
                    next.entry(code).or_insert(g);
                }
            }
            for (code, g) in &next {
                seen.insert(code.clone(), g.clone());
            }
            frontier = next.into_values().collect();
        }
        Ok(seen)
    })
}

/// One cell of a quotient complex: a host class and a forest chain.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Cell {
    pub dim: usize,
    pub host_code: String,
    /// The chain `F1 < ... < Fj`, each forest given by edge ids (smaller
    /// half-edge) of the canonical host.
    pub flag: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientComplexSummary {
    #[serde(flatten)]
    pub family: Family,
    pub k: usize,
    pub f_vector: Vec<usize>,
    pub euler: i64,
    pub connected: bool,
    pub cells: Vec<Cell>,
}

impl QuotientComplexSummary {
    pub fn dimension(&self) -> usize {
        self.f_vector.len().saturating_sub(1)
    }
}

/// Strictly increasing chains of forests, each returned as a list.
fn forest_chains(forests: &[Forest]) -> Vec<Vec<Forest>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..forests.len()).map(|i| vec![i]).collect();
    while let Some(chain) = stack.pop() {
        let last = &forests[*chain.last().unwrap()];
        for (j, f) in forests.iter().enumerate() {
            if f.len() > last.len() && last.is_subset(f) {
                let mut next = chain.clone();
                next.push(j);
                stack.push(next);
            }
        }
        out.push(chain.iter().map(|&i| forests[i].clone()).collect());
    }
    out
}

fn chain_key(chain: &[Forest]) -> Vec<Vec<usize>> {
    chain
        .iter()
        .map(|f| f.edges().map(|e| e.0).collect())
        .collect()
}

struct HostCells {
    /// Orbit representatives, grouped by dimension (index 0 = one forest).
    orbits: Vec<Vec<Vec<Vec<usize>>>>,
    /// Codes of `host / F` for every single forest, for the 1-skeleton.
    neighbours: Vec<CanonicalCode>,
}

fn host_cells(g: &RibbonGraph, mode: Mode, k: usize) -> Result<HostCells, ComplexError> {
    if !g.is_valid() || g.degree() > k {
        return Err(ComplexError::Construction(format!(
            "host {} is not a valid graph of degree at most {k}",
            canonical_code(g, mode)
        )));
    }
    let forests = enumerate_forests(g);
    let mut neighbours = Vec::with_capacity(forests.len());
    for f in &forests {
        let q = collapse_forest(g, f)?;
        if !q.is_valid() {
            return Err(ComplexError::Construction(format!(
                "collapse of {:?} in {} is invalid",
                chain_key(std::slice::from_ref(f)),
                canonical_code(g, mode)
            )));
        }
        neighbours.push(canonical_code(&q, mode));
    }
    let group = automorphisms(g, mode);
    let mut orbits: Vec<BTreeSet<Vec<Vec<usize>>>> = Vec::new();
    for chain in forest_chains(&forests) {
        let rep = group
            .iter()
            .map(|perm| {
                let image: Vec<Forest> = chain.iter().map(|f| f.map(g, perm)).collect();
                chain_key(&image)
            })
            .min()
            .expect("the identity is an automorphism");
        let dim = chain.len() - 1;
        if orbits.len() <= dim {
            orbits.resize_with(dim + 1, BTreeSet::new);
        }
        orbits[dim].insert(rep);
    }
    Ok(HostCells {
        orbits: orbits
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect(),
        neighbours,
    })
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    parent[x] = r;
    r
}

/// Published f-vectors of quotient complexes, where known.
pub fn reference_f_vector(family: Family, k: usize) -> Option<Vec<usize>> {
    match (family, k) {
        (
            Family::Ribbon {
                genus: 2,
                punctures: 1,
            },
            2,
        ) => Some(vec![27, 110, 63]),
        (Family::Plain { rank }, 2) if rank >= 4 => Some(vec![9, 13, 7]),
        _ => None,
    }
}

/// Builds the quotient of the degree-`k` complex by the group action.
pub fn build_quotient_complex(
    family: Family,
    k: usize,
    jobs: usize,
) -> Result<QuotientComplexSummary, ComplexError> {
    let vertices = enumerate_vertices(family, Some(k), jobs)?;
    let mode = family.mode();
    let hosts: Vec<(&CanonicalCode, &RibbonGraph)> = vertices.iter().collect();
    let per_host: Vec<Result<HostCells, ComplexError>> = with_jobs(jobs, || {
        hosts
            .par_iter()
            .map(|(_, g)| host_cells(g, mode, k))
            .collect()
    });

    let index: BTreeMap<&CanonicalCode, usize> = hosts
        .iter()
        .enumerate()
        .map(|(i, (c, _))| (*c, i))
        .collect();
    let mut parent: Vec<usize> = (0..hosts.len()).collect();
    let mut f_vector = vec![hosts.len()];
    let mut cells: Vec<Cell> = hosts
        .iter()
        .map(|(c, _)| Cell {
            dim: 0,
            host_code: c.to_string(),
            flag: Vec::new(),
        })
        .collect();
    for ((code, _), result) in hosts.iter().zip(per_host) {
        let hc = result?;
        let me = index[code];
        for other in &hc.neighbours {
            let j = *index.get(other).ok_or_else(|| {
                ComplexError::Construction(format!("collapse {other} is not an enumerated vertex"))
            })?;
            let (a, b) = (find(&mut parent, me), find(&mut parent, j));
            parent[a] = b;
        }
        for (d, reps) in hc.orbits.iter().enumerate() {
            let dim = d + 1;
            if f_vector.len() <= dim {
                f_vector.resize(dim + 1, 0);
            }
            f_vector[dim] += reps.len();
            cells.extend(reps.iter().map(|flag| Cell {
                dim,
                host_code: code.to_string(),
                flag: flag.clone(),
            }));
        }
    }
    cells.sort();
    let root = find(&mut parent, 0);
    let connected = (0..hosts.len()).all(|i| find(&mut parent, i) == root);
    let euler = f_vector
        .iter()
        .enumerate()
        .map(|(j, &f)| if j % 2 == 0 { f as i64 } else { -(f as i64) })
        .sum();
    Ok(QuotientComplexSummary {
        family,
        k,
        f_vector,
        euler,
        connected,
        cells,
    })
}

/// Edge ids of a flag, for display.
pub fn flag_edges(flag: &[Vec<usize>]) -> Vec<Vec<EdgeId>> {
    flag.iter()
        .map(|f| f.iter().map(|&e| EdgeId(e)).collect())
        .collect()
}

/// One alteration of the doubling rose layout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Alteration {
    /// Swap block `j` for its primed form.
    Rho(usize),
    /// Second independent alteration of the first handle block.
    Twist(usize),
}

impl fmt::Display for Alteration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alteration::Rho(j) => write!(f, "rho{j}"),
            Alteration::Twist(j) => write!(f, "tau{j}"),
        }
    }
}

// Blocks as chord words: equal letters are the two ends of one edge, the
// first occurrence being the initial half-edge.
const A_BLOCK: [usize; 4] = [0, 0, 1, 1];
const A_PRIME: [usize; 4] = [0, 1, 1, 0];
const B_BLOCK: [usize; 8] = [0, 1, 0, 1, 2, 3, 2, 3];
const B_PRIME: [usize; 8] = [0, 1, 0, 2, 3, 2, 1, 3];
const B_TWIST: [usize; 8] = [0, 1, 0, 2, 3, 1, 2, 3];
const B_BOTH: [usize; 8] = [0, 1, 2, 3, 0, 1, 2, 3];
const C_BLOCK: [usize; 8] = [0, 1, 0, 2, 1, 3, 2, 3];
const C_PRIME: [usize; 8] = [0, 1, 0, 2, 3, 2, 3, 1];

/// Largest number of alterations accepted (the construction emits `2^m` roses).
pub const MAX_PROP5_ALTERATIONS: usize = 12;

#[derive(Clone, Debug)]
struct Block {
    /// First edge of the block, 1-based.
    first_edge: usize,
    words: [&'static [usize]; 4],
    /// Alterations selecting the state: bit 0 and bit 1.
    moves: (Alteration, Option<Alteration>),
}

fn prop5_blocks(genus: usize, punctures: usize) -> Result<Vec<Block>, ComplexError> {
    if genus < 2 || !genus.is_multiple_of(2) || punctures.is_multiple_of(2) {
        return Err(ComplexError::InvalidParameters(format!(
            "the construction needs even genus at least 2 and odd punctures, got ({genus}, {punctures})"
        )));
    }
    let n = 2 * genus + punctures - 1;
    let mut blocks = Vec::new();
    let mut j = 1;
    while j < punctures {
        blocks.push(Block {
            first_edge: j,
            words: [&A_BLOCK, &A_PRIME, &A_BLOCK, &A_PRIME],
            moves: (Alteration::Rho(j), None),
        });
        j += 2;
    }
    let mut j = punctures + 1;
    let mut anchor = true;
    while j + 2 <= n {
        blocks.push(if anchor {
            Block {
                first_edge: j - 1,
                words: [&B_BLOCK, &B_PRIME, &B_TWIST, &B_BOTH],
                moves: (Alteration::Rho(j), Some(Alteration::Twist(j))),
            }
        } else {
            Block {
                first_edge: j - 1,
                words: [&C_BLOCK, &C_PRIME, &C_BLOCK, &C_PRIME],
                moves: (Alteration::Rho(j), None),
            }
        });
        anchor = false;
        j += 4;
    }
    let m = blocks
        .iter()
        .map(|b| 1 + b.moves.1.is_some() as usize)
        .sum::<usize>();
    if m > MAX_PROP5_ALTERATIONS {
        return Err(ComplexError::Capacity {
            what: "alteration count",
            requested: m,
            limit: MAX_PROP5_ALTERATIONS,
        });
    }
    Ok(blocks)
}

/// The designated alteration set for `(g, p)`.
pub fn prop5_alterations(genus: usize, punctures: usize) -> Result<Vec<Alteration>, ComplexError> {
    Ok(prop5_blocks(genus, punctures)?
        .iter()
        .flat_map(|b| std::iter::once(b.moves.0).chain(b.moves.1))
        .collect())
}

/// Rotation of the rose after applying the alterations in `chosen`. Edge `j`
/// (1-based) has initial half-edge `2(j-1)` and terminal half-edge `2j-1`.
pub fn prop5_rotation(
    genus: usize,
    punctures: usize,
    chosen: &BTreeSet<Alteration>,
) -> Result<Vec<usize>, ComplexError> {
    let blocks = prop5_blocks(genus, punctures)?;
    let known: BTreeSet<Alteration> = prop5_alterations(genus, punctures)?.into_iter().collect();
    if let Some(bad) = chosen.iter().find(|a| !known.contains(a)) {
        return Err(ComplexError::InvalidParameters(format!(
            "{bad} is not an alteration of ({genus}, {punctures})"
        )));
    }
    let mut rotation = Vec::with_capacity(2 * (2 * genus + punctures - 1));
    for b in &blocks {
        let state = chosen.contains(&b.moves.0) as usize
            + 2 * b.moves.1.is_some_and(|t| chosen.contains(&t)) as usize;
        let mut seen = BTreeSet::new();
        for &letter in b.words[state] {
            let h = 2 * (b.first_edge - 1 + letter);
            rotation.push(if seen.insert(letter) { h } else { h + 1 });
        }
    }
    Ok(rotation)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prop5Witness {
    pub alterations: Vec<Alteration>,
    pub rotation: Vec<usize>,
    pub code: String,
}

/// Roses for every subset of the designated alterations. Each emitted rose is
/// checked to have surface type `(g, p)`.
pub fn prop5_generate(genus: usize, punctures: usize) -> Result<Vec<Prop5Witness>, ComplexError> {
    let alterations = prop5_alterations(genus, punctures)?;
    let target = SurfaceType::new(genus, punctures);
    let mut out = Vec::with_capacity(1 << alterations.len());
    for mask in 0u32..(1 << alterations.len()) {
        let chosen: BTreeSet<Alteration> = alterations
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &a)| a)
            .collect();
        let rotation = prop5_rotation(genus, punctures, &chosen)?;
        let rose = RibbonGraph::rose(&rotation)?;
        if rose.surface_type() != target {
            return Err(ComplexError::Construction(format!(
                "alterations {:?} give surface type ({}, {}) instead of ({genus}, {punctures})",
                chosen,
                rose.surface_type().genus,
                rose.surface_type().punctures
            )));
        }
        out.push(Prop5Witness {
            alterations: chosen.into_iter().collect(),
            rotation,
            code: canonical_code(&rose, Mode::Ribbon).to_string(),
        });
    }
    Ok(out)
}

/// Largest rank for which generated roses are checked against the census.
pub const PROP5_CENSUS_RANK: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prop5Report {
    pub genus: usize,
    pub punctures: usize,
    pub expected: usize,
    pub emitted: usize,
    pub distinct: usize,
    /// `None` when the rank is above [`PROP5_CENSUS_RANK`].
    pub in_census: Option<bool>,
    pub witnesses: Vec<Prop5Witness>,
}

impl Prop5Report {
    pub fn passed(&self) -> bool {
        self.emitted == self.expected
            && self.distinct == self.expected
            && self.in_census != Some(false)
    }
}

pub fn prop5_verify(genus: usize, punctures: usize) -> Result<Prop5Report, ComplexError> {
    let witnesses = prop5_generate(genus, punctures)?;
    let expected = 1usize << ((punctures - 1) / 2 + genus / 2 + 1);
    let codes: BTreeSet<&str> = witnesses.iter().map(|w| w.code.as_str()).collect();
    let n = 2 * genus + punctures - 1;
    let in_census = if n <= PROP5_CENSUS_RANK {
        let census = enumerate_roses(genus, punctures)?;
        Some(codes.iter().all(|c| {
            c.parse::<CanonicalCode>()
                .map(|c| census.contains_key(&c))
                .unwrap_or(false)
        }))
    } else {
        None
    };
    Ok(Prop5Report {
        genus,
        punctures,
        expected,
        emitted: witnesses.len(),
        distinct: codes.len(),
        in_census,
        witnesses,
    })
}
