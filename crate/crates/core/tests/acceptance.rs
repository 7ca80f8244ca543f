//! One line per acceptance criterion. Criteria listed in `KNOWN_RED` are
//! reported but do not fail the run unless `ACCEPTANCE_STRICT=1`.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ribbon_degree::canon::{canonical_code, CanonicalCode, Mode};
use ribbon_degree::cli::random_metric;
use ribbon_degree::complexes::{
    build_quotient_complex, enumerate_vertices, prop5_verify, Family, QuotientComplexSummary,
};
use ribbon_degree::morse::{
    attaching_structure, canonical_split, collapse_metric, is_split, max_epsilon, slide_branch,
    Length, MetricRibbonGraph,
};
use ribbon_degree::moves::{
    allowed_expansions, collapse_forest, enumerate_forests, expand, Forest,
};
use ribbon_degree::ribbon::{RibbonGraph, SurfaceType};

const KNOWN_RED: [&str; 2] = ["1", "2"];
const JOBS: usize = 4;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn ribbon(genus: usize, punctures: usize) -> Family {
    Family::Ribbon { genus, punctures }
}

/// Writes the orbit cells for inspection and returns the file path.
fn dump(name: &str, c: &QuotientComplexSummary) -> String {
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join(format!("{name}.json"));
    std::fs::write(&path, serde_json::to_string_pretty(c).unwrap()).unwrap();
    path.display().to_string()
}

fn criterion_1() -> Outcome {
    let c = build_quotient_complex(ribbon(2, 1), 2, JOBS).unwrap();
    let pass = c.f_vector == [27, 110, 63];
    let mut detail = format!("f-vector {} (expected 27 110 63)", join(&c.f_vector));
    if !pass {
        detail += &format!(", cells in {}", dump("ribbon-g2-p1-k2", &c));
    }
    outcome(pass, detail)
}

fn criterion_2() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for rank in [4, 5] {
        let c = build_quotient_complex(Family::Plain { rank }, 2, JOBS).unwrap();
        if c.f_vector != [9, 13, 7] {
            pass = false;
            dump(&format!("plain-n{rank}-k2"), &c);
        }
        parts.push(format!("n={rank}: {}", join(&c.f_vector)));
    }
    let mut detail = format!("{} (expected 9 13 7)", parts.join(", "));
    if !pass {
        detail += &format!(", cells in {}", env!("CARGO_TARGET_TMPDIR"));
    }
    outcome(pass, detail)
}

fn criterion_3() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for ((g, p), expected) in [((2, 1), 4), ((2, 3), 8), ((4, 1), 8)] {
        let r = prop5_verify(g, p).unwrap();
        let typed = r.witnesses.iter().all(|w| {
            RibbonGraph::rose(&w.rotation).unwrap().surface_type() == SurfaceType::new(g, p)
        });
        pass &= r.expected == expected && r.emitted == expected && r.distinct == expected && typed;
        parts.push(format!(
            "({g},{p}): {} distinct of {}",
            r.distinct, r.emitted
        ));
    }
    outcome(pass, parts.join(", "))
}

fn word(tokens: &str) -> Vec<usize> {
    tokens
        .split_whitespace()
        .map(|t| {
            let j: usize = t[1..t.len() - 1].parse().unwrap();
            if t.ends_with('i') {
                2 * (j - 1)
            } else {
                2 * j - 1
            }
        })
        .collect()
}

fn criterion_4() -> Outcome {
    let rotations = [
        "a1i a1t a2i a2t a3i a4i a3t a4t a5i a6i a5t a6t",
        "e1i a2i a2t e1t a3i a4i a3t a4t a5i a6i a5t a6t",
        "a1i a1t a2i a2t a3i e4i a3t a5i a6i a5t e4t a6t",
        "e1i a2i a2t e1t a3i e4i a3t a5i a6i a5t e4t a6t",
    ];
    let roses: Vec<RibbonGraph> = rotations
        .iter()
        .map(|r| RibbonGraph::rose(&word(r)).unwrap())
        .collect();
    let typed = roses
        .iter()
        .all(|r| r.surface_type() == SurfaceType::new(2, 3));
    let codes: BTreeSet<CanonicalCode> = roses
        .iter()
        .map(|r| canonical_code(r, Mode::Ribbon))
        .collect();
    outcome(
        typed && codes.len() == 4,
        format!("types (2,3): {typed}, distinct codes {}", codes.len()),
    )
}

fn criterion_5() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (g, p) in [(0, 3), (1, 1), (1, 2)] {
        let bound = 4 * g + 2 * p - 4;
        let graphs = enumerate_vertices(ribbon(g, p), None, JOBS).unwrap();
        let top = graphs.values().map(|x| x.degree()).max().unwrap();
        pass &= top <= bound;
        if (g, p) == (1, 1) {
            pass &= top == bound;
        }
        parts.push(format!(
            "({g},{p}): {} graphs, max degree {top} <= {bound}",
            graphs.len()
        ));
    }
    outcome(pass, parts.join(", "))
}

fn criterion_6() -> Outcome {
    let mut classes: BTreeMap<CanonicalCode, SurfaceType> = BTreeMap::new();
    for a in [[0, 2, 4], [0, 4, 2]] {
        for b in [[1, 3, 5], [1, 5, 3]] {
            let g = RibbonGraph::from_rotations(
                &[a.to_vec(), b.to_vec()],
                &[(0, 1), (2, 3), (4, 5)],
                0,
            )
            .unwrap();
            classes.insert(canonical_code(&g, Mode::Ribbon), g.surface_type());
        }
    }
    let types: BTreeSet<SurfaceType> = classes.values().copied().collect();
    let expected = BTreeSet::from([SurfaceType::new(1, 1), SurfaceType::new(0, 3)]);
    outcome(
        classes.len() == 2 && types == expected,
        format!(
            "{} classes, types {}",
            classes.len(),
            types
                .iter()
                .map(|t| t.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        ),
    )
}

fn small_ribbon_families() -> Vec<Family> {
    [
        (0, 2),
        (1, 1),
        (0, 3),
        (1, 2),
        (0, 4),
        (2, 1),
        (1, 3),
        (0, 5),
    ]
    .into_iter()
    .map(|(g, p)| ribbon(g, p))
    .collect()
}

fn criterion_7a() -> Outcome {
    let mut checked = 0;
    let mut violations = 0;
    let families = small_ribbon_families()
        .into_iter()
        .chain((1..=4).map(|rank| Family::Plain { rank }));
    for family in families {
        for k in 0..=2 {
            for g in enumerate_vertices(family, Some(k), JOBS).unwrap().values() {
                for forest in enumerate_forests(g) {
                    let c = collapse_forest(g, &forest).unwrap();
                    checked += 1;
                    let typed =
                        family.mode() == Mode::Plain || c.surface_type() == g.surface_type();
                    if !(typed && c.rank() == g.rank() && c.degree() <= g.degree()) {
                        violations += 1;
                    }
                }
            }
        }
    }
    outcome(
        violations == 0,
        format!("{checked} collapses, {violations} violations"),
    )
}

fn criterion_7b() -> Outcome {
    let mut expansions = 0;
    let mut slides = 0;
    let mut violations = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for family in small_ribbon_families() {
        let graphs = enumerate_vertices(family, None, JOBS).unwrap();
        for g in graphs.values() {
            let code = canonical_code(g, Mode::Ribbon);
            for v in g.vertices() {
                for part in allowed_expansions(g, v, true) {
                    let x = expand(g, &part).unwrap();
                    let back =
                        collapse_forest(&x, &Forest::new(&x, [g.half_edge_count()]).unwrap())
                            .unwrap();
                    expansions += 1;
                    violations += usize::from(canonical_code(&back, Mode::Ribbon) != code);
                }
            }
            for m in [
                MetricRibbonGraph::uniform(g.clone()),
                random_metric(g, &mut rng),
            ] {
                let s = canonical_split(&m).unwrap();
                let split_code = canonical_code(s.graph(), Mode::Ribbon);
                let eps = max_epsilon(&s) / Length::from_integer(BigInt::from(2));
                let att = attaching_structure(&s, &eps).unwrap();
                for h in att
                    .sets
                    .iter()
                    .flat_map(|set| set.half_edges.iter().copied())
                {
                    for sign in [1i64, -1] {
                        let target = &eps * Length::new(BigInt::from(sign), BigInt::from(2));
                        let Ok(r) = slide_branch(&s, &eps, h, target) else {
                            continue;
                        };
                        let created =
                            Forest::new(r.graph.graph(), r.created.iter().map(|e| e.0)).unwrap();
                        let back = collapse_metric(&r.graph, &created).unwrap();
                        slides += 1;
                        violations +=
                            usize::from(canonical_code(back.graph(), Mode::Ribbon) != split_code);
                    }
                }
            }
        }
    }
    outcome(
        violations == 0,
        format!("{expansions} expansions, {slides} slides, {violations} violations"),
    )
}

fn criterion_7c() -> Outcome {
    let graphs: Vec<RibbonGraph> = enumerate_vertices(ribbon(2, 1), None, JOBS)
        .unwrap()
        .into_values()
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut violations = 0;
    for _ in 0..1000 {
        let g = &graphs[rng.gen_range(0..graphs.len())];
        let s = canonical_split(&random_metric(g, &mut rng)).unwrap();
        let ok = is_split(&s)
            && canonical_split(&s).unwrap() == s
            && s.graph().degree() <= g.degree()
            && s.graph().surface_type() == g.surface_type();
        violations += usize::from(!ok);
    }
    outcome(
        violations == 0,
        format!(
            "1000 metrics over {} graphs, {violations} violations",
            graphs.len()
        ),
    )
}

fn criterion_7d() -> Outcome {
    let graphs: Vec<RibbonGraph> = (1..=4)
        .flat_map(common::block_graphs)
        .filter(|g| g.is_valid())
        .collect();
    let mut violations = 0;
    let mut classes_seen = 0;
    for mode in [Mode::Ribbon, Mode::Plain] {
        let mut classes: BTreeMap<CanonicalCode, Vec<&RibbonGraph>> = BTreeMap::new();
        for g in &graphs {
            classes.entry(canonical_code(g, mode)).or_default().push(g);
        }
        for members in classes.values() {
            violations += members[1..]
                .iter()
                .filter(|g| !common::brute_isomorphic(members[0], g, mode))
                .count();
        }
        let reps: Vec<&RibbonGraph> = classes.values().map(|m| m[0]).collect();
        for i in 0..reps.len() {
            for j in i + 1..reps.len() {
                violations += usize::from(common::brute_isomorphic(reps[i], reps[j], mode));
            }
        }
        classes_seen += classes.len();
    }
    outcome(
        violations == 0,
        format!(
            "{} graphs, {classes_seen} classes over both modes, {violations} violations",
            graphs.len()
        ),
    )
}

fn criterion_7e() -> Outcome {
    let families = [(0, 2), (1, 1), (0, 3), (1, 2), (0, 4)]
        .into_iter()
        .map(|(g, p)| ribbon(g, p))
        .chain((1..=3).map(|rank| Family::Plain { rank }));
    let mut mismatches = 0;
    let mut cases = 0;
    for family in families {
        let n = family.rank();
        for k in 0..=2 {
            let closure: BTreeSet<CanonicalCode> = enumerate_vertices(family, Some(k), JOBS)
                .unwrap()
                .into_keys()
                .collect();
            let brute: BTreeSet<CanonicalCode> = (n..=n + k)
                .flat_map(common::block_graphs)
                .filter(|g| g.rank() == n && g.degree() <= k && g.is_valid())
                .filter(|g| match family {
                    Family::Ribbon { genus, punctures } => {
                        g.surface_type() == SurfaceType::new(genus, punctures)
                    }
                    Family::Plain { .. } => true,
                })
                .map(|g| canonical_code(&g, family.mode()))
                .collect();
            cases += 1;
            mismatches += usize::from(closure != brute);
        }
    }
    outcome(
        mismatches == 0,
        format!("{cases} (family, k) cases, {mismatches} mismatches"),
    )
}

fn criterion_7f() -> Outcome {
    let mut families: Vec<(Family, usize)> = Vec::new();
    // a degree-0 complex is a discrete set of roses; connectivity starts at k = 1
    for family in small_ribbon_families() {
        for k in 1..=2 {
            families.push((family, k));
        }
    }
    for rank in 1..=5 {
        families.push((Family::Plain { rank }, 2));
    }
    let disconnected: Vec<String> = families
        .iter()
        .filter(|(f, k)| !build_quotient_complex(*f, *k, JOBS).unwrap().connected)
        .map(|(f, k)| format!("{f:?} k={k}"))
        .collect();
    outcome(
        disconnected.is_empty(),
        format!(
            "{} complexes, {} disconnected",
            families.len(),
            disconnected.len()
        ),
    )
}

fn main() -> ExitCode {
    let strict = std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    let criteria: [Criterion; 12] = [
        ("1", criterion_1),
        ("2", criterion_2),
        ("3", criterion_3),
        ("4", criterion_4),
        ("5", criterion_5),
        ("6", criterion_6),
        ("7a", criterion_7a),
        ("7b", criterion_7b),
        ("7c", criterion_7c),
        ("7d", criterion_7d),
        ("7e", criterion_7e),
        ("7f", criterion_7f),
    ];
    let mut unexpected = 0;
    let mut failed = Vec::new();
    for (id, f) in criteria.iter() {
        let r = f();
        let status = match (r.pass, KNOWN_RED.contains(id)) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known red)",
            (false, false) => "FAIL",
        };
        println!("criterion {id}: {status}: {}", r.detail);
        if !r.pass {
            failed.push(*id);
            if strict || !KNOWN_RED.contains(id) {
                unexpected += 1;
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass; failing: {}",
        criteria.len() - failed.len(),
        criteria.len(),
        if failed.is_empty() {
            "none".to_string()
        } else {
            failed.join(", ")
        }
    );
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
