//! Automorphism groups by equitable refinement and backtracking, plus an
//! exhaustive oracle for small graphs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm::{GeneratedGroup, Permutation};

/// Largest vertex count accepted by [`brute_force_automorphisms`].
pub const BRUTE_FORCE_CAP: usize = 12;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes_visited: u64,
    pub pruned_by_refinement: u64,
    pub generators_found: u64,
}

/// Ordered partition of the vertex set.
type Partition = Vec<Vec<usize>>;

/// Iterated degree-in-cell refinement. Each non-singleton cell is split by
/// the multiset of neighbour counts per cell; the pieces keep their
/// signature order, so the result commutes with relabelling.
pub fn equitable_refinement(g: &Graph, partition: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut cells: Partition = partition.to_vec();
    let mut cell_of = vec![0usize; g.n()];
    loop {
        for (i, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = i;
            }
        }
        let mut next: Partition = Vec::with_capacity(cells.len());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut groups: BTreeMap<Vec<(usize, usize)>, Vec<usize>> = BTreeMap::new();
            for &v in cell {
                let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
                for &w in g.neighbors(v) {
                    *counts.entry(cell_of[w]).or_default() += 1;
                }
                groups
                    .entry(counts.into_iter().collect())
                    .or_default()
                    .push(v);
            }
            next.extend(groups.into_values());
        }
        let done = next.len() == cells.len();
        cells = next;
        if done {
            return cells;
        }
    }
}

fn individualize(cells: &Partition, cell: usize, v: usize) -> Partition {
    let mut out = Vec::with_capacity(cells.len() + 1);
    out.extend_from_slice(&cells[..cell]);
    out.push(vec![v]);
    out.push(cells[cell].iter().copied().filter(|&x| x != v).collect());
    out.extend_from_slice(&cells[cell + 1..]);
    out
}

fn first_open_cell(cells: &Partition) -> Option<usize> {
    cells.iter().position(|c| c.len() > 1)
}

fn shape(cells: &Partition) -> Vec<usize> {
    cells.iter().map(Vec::len).collect()
}

struct Searcher<'a> {
    graph: &'a Graph,
    /// Cell-size sequence along the first path, by depth.
    shapes: Vec<Vec<usize>>,
    first_leaf: Vec<usize>,
    stats: SearchStats,
}

impl Searcher<'_> {
    /// Depth-first search below `cells` (at `depth`) for a leaf whose
    /// positional matching with the first leaf is an automorphism.
    fn find(&mut self, cells: Partition, depth: usize) -> Option<Permutation> {
        let Some(target) = first_open_cell(&cells) else {
            let mut images = vec![0; self.graph.n()];
            for (pos, cell) in cells.iter().enumerate() {
                images[self.first_leaf[pos]] = cell[0];
            }
            if self.graph.broken_edge(&images).is_none() {
                return Some(Permutation::new(images).expect("leaf is a bijection"));
            }
            return None;
        };
        for &u in &cells[target] {
            let child = equitable_refinement(self.graph, &individualize(&cells, target, u));
            self.stats.nodes_visited += 1;
            if shape(&child) != self.shapes[depth + 1] {
                self.stats.pruned_by_refinement += 1;
                continue;
            }
            if let Some(p) = self.find(child, depth + 1) {
                return Some(p);
            }
        }
        None
    }
}

/// Union-find orbits of the points `0..n` under `gens`.
fn orbit_roots(n: usize, gens: &[Permutation]) -> Vec<usize> {
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
    let mut parent: Vec<usize> = (0..n).collect();
    for g in gens {
        for x in 0..n {
            let a = find(&mut parent, x);
            let b = find(&mut parent, g.apply(x));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    (0..n).map(|x| find(&mut parent, x)).collect()
}

/// Generators of the full automorphism group.
///
/// The list is empty when the graph is rigid. Every returned permutation
/// preserves adjacency.
pub fn automorphism_generators(g: &Graph) -> (Vec<Permutation>, SearchStats) {
    let n = g.n();
    if n == 0 {
        return (Vec::new(), SearchStats::default());
    }
    let mut stats = SearchStats {
        nodes_visited: 1,
        ..SearchStats::default()
    };
    let root = equitable_refinement(g, &[(0..n).collect()]);

    // First path: always individualize the smallest vertex of the first
    // open cell.
    let mut path = vec![root];
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    while let Some(target) = first_open_cell(path.last().unwrap()) {
        let cells = path.last().unwrap();
        let v = cells[target][0];
        chosen.push((target, v));
        let next = equitable_refinement(g, &individualize(cells, target, v));
        stats.nodes_visited += 1;
        path.push(next);
    }
    let first_leaf: Vec<usize> = path.last().unwrap().iter().map(|c| c[0]).collect();

    let mut searcher = Searcher {
        graph: g,
        shapes: path.iter().map(shape).collect(),
        first_leaf,
        stats,
    };
    let mut generators: Vec<Permutation> = Vec::new();

    for depth in (0..chosen.len()).rev() {
        let (target, v) = chosen[depth];
        let cells = &path[depth];
        // v itself, plus targets shown to admit no automorphism from v.
        let mut settled: Vec<usize> = vec![v];
        for &w in &cells[target] {
            let roots = orbit_roots(n, &generators);
            if settled.iter().any(|&r| roots[r] == roots[w]) {
                continue;
            }
            let child = equitable_refinement(g, &individualize(cells, target, w));
            searcher.stats.nodes_visited += 1;
            let found = if shape(&child) != searcher.shapes[depth + 1] {
                searcher.stats.pruned_by_refinement += 1;
                None
            } else {
                searcher.find(child, depth + 1)
            };
            match found {
                Some(p) => {
                    generators.push(p);
                    searcher.stats.generators_found += 1;
                }
                None => settled.push(w),
            }
        }
    }
    (generators, searcher.stats)
}

/// The automorphism group as a [`GeneratedGroup`].
pub fn automorphism_group(g: &Graph) -> (GeneratedGroup, SearchStats) {
    let (gens, stats) = automorphism_generators(g);
    let group = if gens.is_empty() {
        GeneratedGroup::trivial(g.n())
    } else {
        GeneratedGroup::new(gens).expect("search returns bijections of one degree")
    };
    (group, stats)
}

/// Every automorphism, by exhaustive search over vertex bijections with
/// degree and adjacency pruning. Sorted by image sequence.
pub fn brute_force_automorphisms(g: &Graph) -> Result<Vec<Permutation>> {
    let n = g.n();
    if n > BRUTE_FORCE_CAP {
        return Err(Error::Scale {
            what: "brute-force automorphism search".into(),
            size: n as u128,
            cap: BRUTE_FORCE_CAP as u128,
        });
    }
    // Breadth-first order, so most vertices have an earlier neighbour whose
    // image restricts the candidates.
    let mut order = Vec::with_capacity(n);
    let mut anchor = vec![None; n];
    let mut placed = vec![false; n];
    for s in 0..n {
        if placed[s] {
            continue;
        }
        placed[s] = true;
        order.push(s);
        let mut i = order.len() - 1;
        while i < order.len() {
            let u = order[i];
            for &w in g.neighbors(u) {
                if !placed[w] {
                    placed[w] = true;
                    anchor[w] = Some(u);
                    order.push(w);
                }
            }
            i += 1;
        }
    }

    struct State<'a> {
        g: &'a Graph,
        order: Vec<usize>,
        anchor: Vec<Option<usize>>,
        image: Vec<usize>,
        used: Vec<bool>,
        out: Vec<Permutation>,
    }

    fn extend(st: &mut State<'_>, pos: usize) {
        let n = st.g.n();
        if pos == n {
            st.out.push(Permutation::new(st.image.clone()).expect("bijection"));
            return;
        }
        let v = st.order[pos];
        let candidates: Vec<usize> = match st.anchor[v] {
            Some(a) => st.g.neighbors(st.image[a]).to_vec(),
            None => (0..n).collect(),
        };
        for w in candidates {
            if st.used[w] || st.g.degree(w) != st.g.degree(v) {
                continue;
            }
            let consistent = st.order[..pos]
                .iter()
                .all(|&u| st.g.is_adjacent(u, v) == st.g.is_adjacent(st.image[u], w));
            if !consistent {
                continue;
            }
            st.image[v] = w;
            st.used[w] = true;
            extend(st, pos + 1);
            st.used[w] = false;
        }
    }

    let mut st = State {
        g,
        order,
        anchor,
        image: vec![usize::MAX; n],
        used: vec![false; n],
        out: Vec::new(),
    };
    extend(&mut st, 0);
    let mut out = st.out;
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn cycle_five_is_dihedral() {
        let (group, stats) = automorphism_group(&cycle(5));
        assert_eq!(*group.order(), BigUint::from(10u32));
        assert!(stats.generators_found >= 1);
        assert!(stats.nodes_visited >= stats.pruned_by_refinement);
    }

    #[test]
    fn brute_force_small_cases() {
        let k3 = cycle(3);
        assert_eq!(brute_force_automorphisms(&k3).unwrap().len(), 6);
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(brute_force_automorphisms(&p3).unwrap().len(), 2);
        let big = cycle(13);
        assert!(matches!(
            brute_force_automorphisms(&big),
            Err(Error::Scale { .. })
        ));
    }

    #[test]
    fn rigid_graph_has_no_generators() {
        // Smallest asymmetric tree has 7 vertices.
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (2, 6)]).unwrap();
        let oracle = brute_force_automorphisms(&g).unwrap();
        let (gens, _) = automorphism_generators(&g);
        assert_eq!(oracle.len(), 1);
        assert!(gens.is_empty());
    }

    #[test]
    fn refinement_splits_by_degree() {
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let cells = equitable_refinement(&star, &[vec![0, 1, 2, 3]]);
        assert_eq!(cells, vec![vec![1, 2, 3], vec![0]]);
    }
}
