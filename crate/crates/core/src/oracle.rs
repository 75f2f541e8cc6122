//! Exhaustive cross-checks that share no code with the main algorithms.

use crate::graph::{Graph, IntersectionArray};

/// Largest vertex count accepted by [`pair_count_distance_regular`].
pub const PAIR_COUNT_CAP: usize = 400;

const FAR: usize = usize::MAX / 4;

/// All-pairs distances by Floyd–Warshall on the adjacency matrix.
pub fn distance_matrix(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut d = vec![vec![FAR; n]; n];
    for (u, row) in d.iter_mut().enumerate() {
        row[u] = 0;
        for &v in g.neighbors(u) {
            row[v] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Distance-regularity by counting, for every ordered pair at distance
/// `h`, the neighbours of the second vertex at distances `h-1`, `h`, `h+1`
/// from the first. Returns the array when every count depends only on `h`,
/// `None` otherwise (including disconnected graphs), or `Err` with the
/// vertex count when it exceeds [`PAIR_COUNT_CAP`].
pub fn pair_count_distance_regular(g: &Graph) -> Result<Option<IntersectionArray>, usize> {
    let n = g.n();
    if n > PAIR_COUNT_CAP {
        return Err(n);
    }
    if n == 0 {
        return Ok(None);
    }
    let d = distance_matrix(g);
    if d.iter().flatten().any(|&x| x >= FAR) {
        return Ok(None);
    }
    let diam = d.iter().flatten().copied().max().unwrap_or(0);
    let mut seen: Vec<Option<(usize, usize, usize)>> = vec![None; diam + 1];
    for u in 0..n {
        for v in 0..n {
            let h = d[u][v];
            let mut counts = (0, 0, 0);
            for w in 0..n {
                if w == v || !g.is_adjacent(v, w) {
                    continue;
                }
                match d[u][w] {
                    x if x + 1 == h => counts.0 += 1,
                    x if x == h => counts.1 += 1,
                    _ => counts.2 += 1,
                }
            }
            match seen[h] {
                None => seen[h] = Some(counts),
                Some(c) if c == counts => {}
                Some(_) => return Ok(None),
            }
        }
    }
    let triples: Vec<(usize, usize, usize)> = seen.into_iter().map(|t| t.expect("distance occurs")).collect();
    let b = (0..diam).map(|h| triples[h].2).collect();
    let c = (1..=diam).map(|h| triples[h].0).collect();
    Ok(Some(IntersectionArray { b, c }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let c6 = Graph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
        let arr = pair_count_distance_regular(&c6).unwrap().unwrap();
        assert_eq!((arr.b, arr.c), (vec![2, 1, 1], vec![1, 1, 2]));
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(pair_count_distance_regular(&path).unwrap(), None);
        let split = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(pair_count_distance_regular(&split).unwrap(), None);
    }
}
