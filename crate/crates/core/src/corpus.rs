//! Built-in named graphs with the facts expected of them.
//!
//! Expected facts are stored only to be re-derived by the test suite; no
//! analysis reads them.

use crate::error::{Error, Result};
use crate::generators::parse_generators;
use crate::graph::Graph;
use crate::perm::{GeneratedGroup, Permutation};

/// A subgroup of the automorphism group, shipped as generators.
#[derive(Clone, Debug)]
pub struct NamedSubgroup {
    pub name: &'static str,
    /// Cycle notation, one generator per line.
    pub generators: &'static str,
    pub order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedFacts {
    pub order: usize,
    pub valency: usize,
    pub girth: usize,
    pub diameter: usize,
    /// `(b_0..b_{d-1}, c_1..c_d)` when distance-regular.
    pub array: Option<(&'static [usize], &'static [usize])>,
    pub automorphism_group_order: u64,
}

#[derive(Clone, Debug)]
pub struct NamedGraphEntry {
    pub name: &'static str,
    pub description: &'static str,
    build: fn() -> Graph,
    pub expected: ExpectedFacts,
    pub subgroups: Vec<NamedSubgroup>,
}

impl NamedGraphEntry {
    pub fn graph(&self) -> Graph {
        (self.build)()
    }

    /// Generators of a shipped subgroup, parsed against the graph order.
    pub fn subgroup(&self, name: &str) -> Result<GeneratedGroup> {
        let sub = self
            .subgroups
            .iter()
            .find(|s| s.name.eq_ignore_ascii_case(name))
            .ok_or_else(|| {
                Error::Argument(format!("{} has no subgroup named {name:?}", self.name))
            })?;
        let gens: Vec<Permutation> = parse_generators(sub.generators, self.expected.order)?;
        GeneratedGroup::new(gens)
    }
}

pub fn complete_graph(n: usize) -> Graph {
    let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    Graph::from_edges(n, edges).expect("valid construction")
}

/// `K_{m,m}` with sides `0..m` and `m..2m`.
pub fn complete_bipartite(m: usize) -> Graph {
    let edges = (0..m).flat_map(|i| (m..2 * m).map(move |j| (i, j)));
    Graph::from_edges(2 * m, edges).expect("valid construction")
}

pub fn cycle_graph(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid construction")
}

/// Outer cycle `0..n`, spokes `i ~ n+i`, inner edges `n+i ~ n+(i+k mod n)`.
pub fn generalized_petersen(n: usize, k: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        edges.push((i, (i + 1) % n));
        edges.push((i, n + i));
        edges.push((n + i, n + (i + k) % n));
    }
    Graph::from_edges(2 * n, edges).expect("valid construction")
}

/// Hamiltonian cycle `0..n` plus chords `i ~ i + shifts[i mod len]`.
pub fn lcf_graph(n: usize, shifts: &[isize]) -> Graph {
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    for i in 0..n {
        let j = (i as isize + shifts[i % shifts.len()]).rem_euclid(n as isize) as usize;
        if i < j {
            edges.push((i, j));
        }
    }
    Graph::from_edges(n, edges).expect("valid construction")
}

pub fn hypercube(dim: u32) -> Graph {
    let n = 1usize << dim;
    let edges = (0..n).flat_map(|v| {
        (0..dim)
            .map(move |b| (v, v ^ (1 << b)))
            .filter(|&(v, w)| v < w)
    });
    Graph::from_edges(n, edges).expect("valid construction")
}

/// Vertices are the edges of `g` in [`Graph::edges`] order.
pub fn line_graph(g: &Graph) -> Graph {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut out = Vec::new();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (a, b) = edges[i];
            let (c, d) = edges[j];
            if a == c || a == d || b == c || b == d {
                out.push((i, j));
            }
        }
    }
    Graph::from_edges(edges.len(), out).expect("valid construction")
}

const fn facts(
    order: usize,
    valency: usize,
    girth: usize,
    diameter: usize,
    array: Option<(&'static [usize], &'static [usize])>,
    automorphism_group_order: u64,
) -> ExpectedFacts {
    ExpectedFacts {
        order,
        valency,
        girth,
        diameter,
        array,
        automorphism_group_order,
    }
}

fn entry(
    name: &'static str,
    description: &'static str,
    build: fn() -> Graph,
    expected: ExpectedFacts,
) -> NamedGraphEntry {
    NamedGraphEntry {
        name,
        description,
        build,
        expected,
        subgroups: Vec::new(),
    }
}

/// The built-in corpus, in a fixed order.
pub fn corpus() -> Vec<NamedGraphEntry> {
    let mut k33 = entry(
        "K33",
        "complete bipartite graph K_{3,3}, sides {0,1,2} and {3,4,5}",
        || complete_bipartite(3),
        facts(6, 3, 4, 2, Some((&[3, 2], &[1, 3])), 72),
    );
    k33.subgroups.push(NamedSubgroup {
        name: "C3wrC2",
        generators: "(0 1 2)\n(3 4 5)\n(0 3)(1 4)(2 5)",
        order: 18,
    });
    vec![
        entry(
            "K4",
            "complete graph on 4 vertices",
            || complete_graph(4),
            facts(4, 3, 3, 1, Some((&[3], &[1])), 24),
        ),
        k33,
        entry(
            "C5",
            "cycle on 5 vertices",
            || cycle_graph(5),
            facts(5, 2, 5, 2, Some((&[2, 1], &[1, 1])), 10),
        ),
        entry(
            "C6",
            "cycle on 6 vertices",
            || cycle_graph(6),
            facts(6, 2, 6, 3, Some((&[2, 1, 1], &[1, 1, 2])), 12),
        ),
        entry(
            "C7",
            "cycle on 7 vertices",
            || cycle_graph(7),
            facts(7, 2, 7, 3, Some((&[2, 1, 1], &[1, 1, 1])), 14),
        ),
        entry(
            "C8",
            "cycle on 8 vertices",
            || cycle_graph(8),
            facts(8, 2, 8, 4, Some((&[2, 1, 1, 1], &[1, 1, 1, 2])), 16),
        ),
        entry(
            "Petersen",
            "generalized Petersen graph GP(5,2)",
            || generalized_petersen(5, 2),
            facts(10, 3, 5, 2, Some((&[3, 2], &[1, 1])), 120),
        ),
        entry(
            "Heawood",
            "LCF [5,-5]^7",
            || lcf_graph(14, &[5, -5]),
            facts(14, 3, 6, 3, Some((&[3, 2, 2], &[1, 1, 3])), 336),
        ),
        entry(
            "Pappus",
            "LCF [5,7,-7,7,-7,-5]^3",
            || lcf_graph(18, &[5, 7, -7, 7, -7, -5]),
            facts(18, 3, 6, 4, Some((&[3, 2, 2, 1], &[1, 1, 2, 3])), 216),
        ),
        entry(
            "Desargues",
            "generalized Petersen graph GP(10,3)",
            || generalized_petersen(10, 3),
            facts(20, 3, 6, 5, Some((&[3, 2, 2, 1, 1], &[1, 1, 2, 2, 3])), 240),
        ),
        entry(
            "Dodecahedron",
            "generalized Petersen graph GP(10,2)",
            || generalized_petersen(10, 2),
            facts(20, 3, 5, 5, Some((&[3, 2, 1, 1, 1], &[1, 1, 1, 2, 3])), 120),
        ),
        entry(
            "TutteCoxeter",
            "LCF [-13,-9,7,-7,9,13]^5",
            || lcf_graph(30, &[-13, -9, 7, -7, 9, 13]),
            facts(30, 3, 8, 4, Some((&[3, 2, 2, 2], &[1, 1, 1, 3])), 1440),
        ),
        entry(
            "Cube3",
            "3-cube Q_3",
            || hypercube(3),
            facts(8, 3, 4, 3, Some((&[3, 2, 1], &[1, 2, 3])), 48),
        ),
        entry(
            "MobiusKantor",
            "generalized Petersen graph GP(8,3)",
            || generalized_petersen(8, 3),
            facts(16, 3, 6, 4, None, 96),
        ),
        entry(
            "Nauru",
            "generalized Petersen graph GP(12,5)",
            || generalized_petersen(12, 5),
            facts(24, 3, 6, 4, None, 144),
        ),
        entry(
            "Franklin",
            "LCF [5,-5]^6",
            || lcf_graph(12, &[5, -5]),
            facts(12, 3, 4, 3, None, 48),
        ),
        entry(
            "K5",
            "complete graph on 5 vertices",
            || complete_graph(5),
            facts(5, 4, 3, 1, Some((&[4], &[1])), 120),
        ),
        entry(
            "K44",
            "complete bipartite graph K_{4,4}, sides {0..3} and {4..7}",
            || complete_bipartite(4),
            facts(8, 4, 4, 2, Some((&[4, 3], &[1, 4])), 1152),
        ),
        entry(
            "Octahedron",
            "complete multipartite graph K_{2,2,2}",
            || line_graph(&complete_graph(4)),
            facts(6, 4, 3, 2, Some((&[4, 1], &[1, 4])), 48),
        ),
        entry(
            "Cube4",
            "4-cube Q_4",
            || hypercube(4),
            facts(16, 4, 4, 4, Some((&[4, 3, 2, 1], &[1, 2, 3, 4])), 384),
        ),
        entry(
            "PetersenLine",
            "line graph of the Petersen graph",
            || line_graph(&generalized_petersen(5, 2)),
            facts(15, 4, 3, 3, Some((&[4, 2, 1], &[1, 1, 4])), 120),
        ),
        entry(
            "HeawoodLine",
            "line graph of the Heawood graph",
            || line_graph(&lcf_graph(14, &[5, -5])),
            facts(21, 4, 3, 3, Some((&[4, 2, 2], &[1, 1, 2])), 336),
        ),
    ]
}

fn normalize(name: &str) -> String {
    name.chars()
        .filter(char::is_ascii_alphanumeric)
        .map(|c| c.to_ascii_lowercase())
        .collect()
}

/// Looks up an entry by name, ignoring case and punctuation, so `K_{3,3}`
/// finds `K33`.
pub fn find(name: &str) -> Result<NamedGraphEntry> {
    let key = normalize(name);
    corpus()
        .into_iter()
        .find(|e| normalize(e.name) == key)
        .ok_or_else(|| Error::Argument(format!("unknown graph name {name:?}")))
}

pub fn names() -> Vec<&'static str> {
    corpus().iter().map(|e| e.name).collect()
}
