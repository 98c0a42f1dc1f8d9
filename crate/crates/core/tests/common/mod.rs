#![allow(dead_code)]

use spanner_core::{gen_gnp, gen_named, Graph, NamedFamily, UNREACHABLE};

pub struct Case {
    pub label: String,
    pub graph: Graph,
}

pub const GNP_PROBABILITIES: [f64; 4] = [0.1, 0.3, 0.5, 0.9];

/// G(n, p) for every n in 5..=60 and p in {0.1, 0.3, 0.5, 0.9}, plus every
/// named family up to 30 nodes.
pub fn corpus() -> Vec<Case> {
    let mut cases = Vec::new();
    for n in 5..=60usize {
        for (i, &p) in GNP_PROBABILITIES.iter().enumerate() {
            let seed = (n as u64) * 1_000 + i as u64;
            cases.push(Case {
                label: format!("gnp(n={n}, p={p}, seed={seed})"),
                graph: gen_gnp(n, p, seed).unwrap(),
            });
        }
    }
    for family in NamedFamily::ALL {
        let max = if family == NamedFamily::Grid { 5 } else { 30 };
        for n in family.min_n()..=max {
            cases.push(Case {
                label: format!("{family}({n})"),
                graph: gen_named(family, n).unwrap(),
            });
        }
    }
    cases
}

pub fn random_tree(n: usize, seed: u64) -> Graph {
    // Attach node v to a pseudo-random earlier node; splitmix64 keeps this
    // independent of the library generator.
    let mut state = seed;
    let mut next = move || {
        state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    };
    Graph::from_edges(n, (1..n).map(|v| ((next() % v as u64) as usize, v))).unwrap()
}

/// Floyd–Warshall over the edge list, independent of the BFS code.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.node_count();
    let inf = u64::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for (u, v) in g.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for w in 0..n {
        for u in 0..n {
            for v in 0..n {
                let through = d[u][w] + d[w][v];
                if through < d[u][v] {
                    d[u][v] = through;
                }
            }
        }
    }
    d.into_iter()
        .map(|row| {
            row.into_iter()
                .map(|x| if x >= inf { UNREACHABLE } else { x as u32 })
                .collect()
        })
        .collect()
}
