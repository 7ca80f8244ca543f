mod common;

use std::collections::BTreeSet;

use common::block_graphs;
use ribbon_degree::canon::{canonical_code, CanonicalCode, Mode};
use ribbon_degree::complexes::{enumerate_roses, enumerate_vertices, Family};
use ribbon_degree::ribbon::{RibbonGraph, SurfaceType};

fn brute_force(family: Family, k: usize) -> BTreeSet<CanonicalCode> {
    let n = family.rank();
    let keep = |g: &RibbonGraph| match family {
        Family::Ribbon { genus, punctures } => {
            g.surface_type() == SurfaceType::new(genus, punctures)
        }
        Family::Plain { .. } => true,
    };
    // a valid graph of rank n and degree <= k has at most n + k edges
    (n..=n + k)
        .flat_map(block_graphs)
        .filter(|g| g.rank() == n && g.degree() <= k && g.is_valid() && keep(g))
        .map(|g| canonical_code(&g, family.mode()))
        .collect()
}

#[test]
fn closure_matches_brute_force() {
    let families = [
        Family::Ribbon {
            genus: 0,
            punctures: 2,
        },
        Family::Ribbon {
            genus: 1,
            punctures: 1,
        },
        Family::Ribbon {
            genus: 0,
            punctures: 3,
        },
        Family::Ribbon {
            genus: 1,
            punctures: 2,
        },
        Family::Ribbon {
            genus: 0,
            punctures: 4,
        },
        Family::Plain { rank: 1 },
        Family::Plain { rank: 2 },
        Family::Plain { rank: 3 },
    ];
    for family in families {
        for k in 0..=2 {
            let closure: BTreeSet<CanonicalCode> = enumerate_vertices(family, Some(k), 2)
                .unwrap()
                .into_keys()
                .collect();
            assert_eq!(closure, brute_force(family, k), "{family:?} k={k}");
        }
    }
}

#[test]
fn rose_census_matches_brute_force() {
    for (g, p) in [(1, 1), (0, 3), (1, 2), (0, 4), (2, 1), (1, 3)] {
        let n = 2 * g + p - 1;
        let census: BTreeSet<CanonicalCode> = enumerate_roses(g, p).unwrap().into_keys().collect();
        let brute: BTreeSet<CanonicalCode> = block_graphs(n)
            .into_iter()
            .filter(|r| r.vertex_count() == 1 && r.surface_type() == SurfaceType::new(g, p))
            .map(|r| canonical_code(&r, Mode::Ribbon))
            .collect();
        assert_eq!(census, brute, "({g}, {p})");
    }
}

#[test]
fn known_rose_counts() {
    let counts: Vec<usize> = [(1, 1), (0, 3), (1, 2), (0, 4), (2, 1)]
        .iter()
        .map(|&(g, p)| enumerate_roses(g, p).unwrap().len())
        .collect();
    assert_eq!(counts, vec![1, 1, 3, 2, 4]);
}

#[test]
fn enumeration_ignores_thread_count() {
    let family = Family::Ribbon {
        genus: 2,
        punctures: 1,
    };
    let one = enumerate_vertices(family, Some(2), 1).unwrap();
    let many = enumerate_vertices(family, Some(2), 4).unwrap();
    assert_eq!(one, many);
}
