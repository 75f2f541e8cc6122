//! Simple undirected graphs, distance levels, girth and intersection numbers.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

const UNREACHED: usize = usize::MAX;

/// Immutable simple undirected graph on the vertex set `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Builds a graph from an edge list. Loops, repeated edges and
    /// out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Argument(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::Invariant(format!("loop at vertex {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        Self::from_adjacency(adjacency)
    }

    /// Builds a graph from per-vertex neighbour lists, validating symmetry.
    pub fn from_adjacency(mut adjacency: Vec<Vec<usize>>) -> Result<Self> {
        let n = adjacency.len();
        let mut degree_sum = 0;
        for (v, nbrs) in adjacency.iter_mut().enumerate() {
            nbrs.sort_unstable();
            if let Some(w) = nbrs.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::Invariant(format!(
                    "repeated edge between {v} and {}",
                    w[0]
                )));
            }
            if nbrs.binary_search(&v).is_ok() {
                return Err(Error::Invariant(format!("loop at vertex {v}")));
            }
            if let Some(&w) = nbrs.iter().find(|&&w| w >= n) {
                return Err(Error::Argument(format!(
                    "neighbour {w} of vertex {v} outside 0..{n}"
                )));
            }
            degree_sum += nbrs.len();
        }
        for (v, nbrs) in adjacency.iter().enumerate() {
            for &w in nbrs {
                if adjacency[w].binary_search(&v).is_err() {
                    return Err(Error::Invariant(format!(
                        "asymmetric adjacency: {w} in N({v}) but {v} not in N({w})"
                    )));
                }
            }
        }
        Ok(Graph {
            adjacency,
            edge_count: degree_sum / 2,
            labels: None,
        })
    }

    /// Builds a graph from edges between arbitrary labels. Labels are
    /// remapped to dense ids in sorted order and retained for reporting.
    pub fn from_labeled_edges<L>(edges: &[(L, L)]) -> Result<Self>
    where
        L: Ord + Clone + fmt::Display,
    {
        let mut ids: BTreeMap<L, usize> = BTreeMap::new();
        for (u, v) in edges {
            ids.entry(u.clone()).or_insert(0);
            ids.entry(v.clone()).or_insert(0);
        }
        for (i, id) in ids.values_mut().enumerate() {
            *id = i;
        }
        let mut graph = Self::from_edges(ids.len(), edges.iter().map(|(u, v)| (ids[u], ids[v])))?;
        graph.labels = Some(ids.keys().map(|l| l.to_string()).collect());
        Ok(graph)
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Common valency, if the graph is regular (and nonempty).
    pub fn valency(&self) -> Option<usize> {
        let k = self.adjacency.first()?.len();
        self.adjacency.iter().all(|a| a.len() == k).then_some(k)
    }

    pub fn require_regular(&self) -> Result<usize> {
        let Some(first) = self.adjacency.first() else {
            return Err(Error::Argument("empty graph".into()));
        };
        let k = first.len();
        match self.adjacency.iter().position(|a| a.len() != k) {
            None => Ok(k),
            Some(v) => Err(Error::NotRegular {
                u: 0,
                deg_u: k,
                v,
                deg_v: self.degree(v),
            }),
        }
    }

    pub fn is_connected(&self) -> bool {
        self.first_unreachable().is_none()
    }

    pub fn require_connected(&self) -> Result<()> {
        if self.n() == 0 {
            return Err(Error::Argument("empty graph".into()));
        }
        match self.first_unreachable() {
            None => Ok(()),
            Some(unreachable) => Err(Error::Disconnected { unreachable }),
        }
    }

    fn first_unreachable(&self) -> Option<usize> {
        if self.n() == 0 {
            return None;
        }
        bfs_distances(self, 0).iter().position(|&d| d == UNREACHED)
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::Argument(format!(
                "vertex {v} out of range 0..{}",
                self.n()
            )))
        }
    }

    /// Returns the first edge `{u, v}` whose image under `images` is not an
    /// edge, or `None` when `images` is an automorphism. `images` must be a
    /// bijection on `0..n`.
    pub fn broken_edge(&self, images: &[usize]) -> Option<(usize, usize)> {
        self.edges()
            .find(|&(u, v)| !self.is_adjacent(images[u], images[v]))
    }
}

/// Girth value with an explicit infinity for acyclic graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn finite(self) -> Option<usize> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Infinite => None,
        }
    }

    /// `self >= bound` with infinity above every finite bound.
    pub fn at_least(self, bound: usize) -> bool {
        match self {
            Girth::Finite(g) => g >= bound,
            Girth::Infinite => true,
        }
    }

    pub(crate) fn plus_one(self) -> Girth {
        match self {
            Girth::Finite(g) => Girth::Finite(g + 1),
            Girth::Infinite => Girth::Infinite,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Girth {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Girth::Finite(g) => s.serialize_u64(*g as u64),
            Girth::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Girth {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(g) => Ok(Girth::Finite(g as usize)),
            Raw::Text(t) if t == "inf" => Ok(Girth::Infinite),
            Raw::Text(t) => Err(serde::de::Error::custom(format!("bad girth {t:?}"))),
        }
    }
}

/// Distance partition `Γ_0(α), …, Γ_ε(α)` around a source vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceData {
    pub source: usize,
    pub levels: Vec<Vec<usize>>,
    /// Distance from the source to every vertex.
    pub distance: Vec<usize>,
}

impl DistanceData {
    pub fn eccentricity(&self) -> usize {
        self.levels.len() - 1
    }

    /// Vertices at distance `i`; empty beyond the eccentricity.
    pub fn level(&self, i: usize) -> &[usize] {
        self.levels.get(i).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }
}

pub(crate) fn bfs_distances(g: &Graph, source: usize) -> Vec<usize> {
    let mut dist = vec![UNREACHED; g.n()];
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == UNREACHED {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

pub fn bfs_levels(g: &Graph, source: usize) -> Result<DistanceData> {
    g.check_vertex(source)?;
    g.require_connected()?;
    let distance = bfs_distances(g, source);
    let ecc = distance.iter().copied().max().unwrap_or(0);
    let mut levels = vec![Vec::new(); ecc + 1];
    for (v, &d) in distance.iter().enumerate() {
        levels[d].push(v);
    }
    Ok(DistanceData {
        source,
        levels,
        distance,
    })
}

pub fn diameter(g: &Graph) -> Result<usize> {
    g.require_connected()?;
    Ok((0..g.n())
        .map(|v| bfs_distances(g, v).into_iter().max().unwrap_or(0))
        .max()
        .unwrap_or(0))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GirthData {
    pub girth: Girth,
    /// Length of a shortest cycle through each vertex.
    pub alpha_girth: Vec<Girth>,
    /// `min{λ_α, λ_β + 1 : β ~ α}` for each vertex α.
    pub local_girth: Vec<Girth>,
}

/// Length of a shortest cycle through `alpha`.
///
/// BFS from `alpha` labels every vertex with the child of `alpha` it hangs
/// below; a non-tree edge joining two different branches closes a cycle
/// through `alpha`, and the shortest such closure is the α-girth.
pub fn alpha_girth(g: &Graph, alpha: usize) -> Girth {
    let n = g.n();
    let mut dist = vec![UNREACHED; n];
    let mut parent = vec![UNREACHED; n];
    let mut branch = vec![UNREACHED; n];
    let mut queue = VecDeque::new();
    dist[alpha] = 0;
    for &b in g.neighbors(alpha) {
        dist[b] = 1;
        parent[b] = alpha;
        branch[b] = b;
        queue.push_back(b);
    }
    let mut best = Girth::Infinite;
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if w == parent[u] || w == alpha {
                continue;
            }
            if dist[w] == UNREACHED {
                dist[w] = dist[u] + 1;
                parent[w] = u;
                branch[w] = branch[u];
                queue.push_back(w);
            } else if branch[w] != branch[u] {
                best = best.min(Girth::Finite(dist[u] + dist[w] + 1));
            }
        }
    }
    best
}

pub fn girth_data(g: &Graph) -> GirthData {
    let alpha: Vec<Girth> = (0..g.n()).map(|v| alpha_girth(g, v)).collect();
    let local = (0..g.n())
        .map(|v| {
            g.neighbors(v)
                .iter()
                .map(|&b| alpha[b].plus_one())
                .fold(alpha[v], Girth::min)
        })
        .collect();
    GirthData {
        girth: alpha.iter().copied().min().unwrap_or(Girth::Infinite),
        alpha_girth: alpha,
        local_girth: local,
    }
}

/// Counts `(c, a, b)` of neighbours one level closer, on the same level and
/// one level farther.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Triple {
    pub c: usize,
    pub a: usize,
    pub b: usize,
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.c, self.a, self.b)
    }
}

pub(crate) fn vertex_triple(g: &Graph, distance: &[usize], v: usize) -> Triple {
    let h = distance[v];
    let mut t = Triple { c: 0, a: 0, b: 0 };
    for &w in g.neighbors(v) {
        let dw = distance[w];
        if dw == h {
            t.a += 1;
        } else if dw < h {
            t.c += 1;
        } else {
            t.b += 1;
        }
    }
    t
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LevelTriple {
    Constant { triple: Triple },
    /// Two vertices on the same level whose counts differ.
    NonConstant {
        first: (usize, Triple),
        second: (usize, Triple),
    },
}

impl LevelTriple {
    pub fn constant(&self) -> Option<Triple> {
        match self {
            LevelTriple::Constant { triple } => Some(*triple),
            LevelTriple::NonConstant { .. } => None,
        }
    }
}

/// A vertex within the tree-like radius whose counts are not `(1, 0, k-1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeViolation {
    pub level: usize,
    pub vertex: usize,
    pub triple: Triple,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalIntersectionNumbers {
    pub source: usize,
    pub valency: usize,
    /// Entry `i - 1` describes level `i`, for `1 <= i <= ε`.
    pub levels: Vec<LevelTriple>,
    /// `k_i = |Γ_i(α)|` for `0 <= i <= ε`.
    pub level_sizes: Vec<usize>,
    pub alpha_girth: Girth,
    /// Largest `s < ε` with `λ_α >= 2s + 2` (0 when there is none).
    pub tree_depth: usize,
    /// First vertex on levels `1..=tree_depth` not carrying `(1, 0, k-1)`.
    pub tree_violation: Option<TreeViolation>,
}

impl LocalIntersectionNumbers {
    pub fn triple(&self, level: usize) -> Option<Triple> {
        self.levels.get(level.checked_sub(1)?)?.constant()
    }
}

fn classify_level(g: &Graph, distance: &[usize], level: &[usize]) -> LevelTriple {
    let first = level[0];
    let t0 = vertex_triple(g, distance, first);
    for &v in &level[1..] {
        let t = vertex_triple(g, distance, v);
        if t != t0 {
            return LevelTriple::NonConstant {
                first: (first, t0),
                second: (v, t),
            };
        }
    }
    LevelTriple::Constant { triple: t0 }
}

pub fn local_intersection_numbers(g: &Graph, alpha: usize) -> Result<LocalIntersectionNumbers> {
    let k = g.require_regular()?;
    let dd = bfs_levels(g, alpha)?;
    let ecc = dd.eccentricity();
    let levels = (1..=ecc)
        .map(|i| classify_level(g, &dd.distance, dd.level(i)))
        .collect();

    let lambda = alpha_girth(g, alpha);
    let tree_depth = (1..ecc).take_while(|&s| lambda.at_least(2 * s + 2)).last().unwrap_or(0);
    let expected = Triple {
        c: 1,
        a: 0,
        b: k.saturating_sub(1),
    };
    let tree_violation = (1..=tree_depth).find_map(|i| {
        dd.level(i).iter().find_map(|&v| {
            let t = vertex_triple(g, &dd.distance, v);
            (t != expected).then_some(TreeViolation {
                level: i,
                vertex: v,
                triple: t,
            })
        })
    });

    Ok(LocalIntersectionNumbers {
        source: alpha,
        valency: k,
        levels,
        level_sizes: dd.level_sizes(),
        alpha_girth: lambda,
        tree_depth,
        tree_violation,
    })
}

/// Intersection array `{b_0, …, b_{d-1}; c_1, …, c_d}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionArray {
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

impl IntersectionArray {
    pub fn valency(&self) -> usize {
        self.b.first().copied().unwrap_or(0)
    }

    pub fn diameter(&self) -> usize {
        self.c.len()
    }

    /// `a_0 .. a_d` with `a_h = k - c_h - b_h`, `a_0 = 0`, `a_d = k - c_d`.
    pub fn a(&self) -> Vec<usize> {
        let k = self.valency();
        let d = self.diameter();
        (0..=d)
            .map(|h| {
                let c = if h == 0 { 0 } else { self.c[h - 1] };
                let b = if h == d { 0 } else { self.b[h] };
                k - c - b
            })
            .collect()
    }
}

impl fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| {
            v.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "{{{};{}}}", join(&self.b), join(&self.c))
    }
}

/// Counts for the ordered pair `(source, target)` at distance `distance`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCount {
    pub source: usize,
    pub target: usize,
    pub triple: Triple,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Valency {
        u: usize,
        deg_u: usize,
        v: usize,
        deg_v: usize,
    },
    Counts {
        distance: usize,
        first: PairCount,
        second: PairCount,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Valency { u, deg_u, v, deg_v } => {
                write!(f, "deg({u})={deg_u} but deg({v})={deg_v}")
            }
            Witness::Counts {
                distance,
                first,
                second,
            } => write!(
                f,
                "at distance {distance}: ({},{}) has {} but ({},{}) has {}",
                first.source, first.target, first.triple, second.source, second.target, second.triple
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DistanceRegularity {
    Regular { array: IntersectionArray },
    Counterexample { witness: Witness },
}

impl DistanceRegularity {
    pub fn array(&self) -> Option<&IntersectionArray> {
        match self {
            DistanceRegularity::Regular { array } => Some(array),
            DistanceRegularity::Counterexample { .. } => None,
        }
    }

    pub fn is_regular(&self) -> bool {
        self.array().is_some()
    }
}

/// Decides distance-regularity by checking that the counts `(c, a, b)` of
/// every ordered pair depend only on the distance.
///
/// A non-regular graph yields a valency witness rather than an error.
pub fn distance_regular(g: &Graph) -> Result<DistanceRegularity> {
    g.require_connected()?;
    if let Err(Error::NotRegular { u, deg_u, v, deg_v }) = g.require_regular() {
        return Ok(DistanceRegularity::Counterexample {
            witness: Witness::Valency { u, deg_u, v, deg_v },
        });
    }
    let k = g.degree(0);
    let mut reference: Vec<Option<PairCount>> = Vec::new();
    for alpha in 0..g.n() {
        let dist = bfs_distances(g, alpha);
        for beta in 0..g.n() {
            let h = dist[beta];
            if h == 0 {
                continue;
            }
            if reference.len() < h + 1 {
                reference.resize(h + 1, None);
            }
            let current = PairCount {
                source: alpha,
                target: beta,
                triple: vertex_triple(g, &dist, beta),
            };
            match &reference[h] {
                None => reference[h] = Some(current),
                Some(first) if first.triple == current.triple => {}
                Some(first) => {
                    return Ok(DistanceRegularity::Counterexample {
                        witness: Witness::Counts {
                            distance: h,
                            first: first.clone(),
                            second: current,
                        },
                    })
                }
            }
        }
    }
    let triples: Vec<Triple> = reference
        .into_iter()
        .skip(1)
        .map(|p| p.expect("every distance up to the diameter occurs").triple)
        .collect();
    let d = triples.len();
    let mut b = vec![k];
    b.extend(triples[..d.saturating_sub(1)].iter().map(|t| t.b));
    let c = triples.iter().map(|t| t.c).collect();
    Ok(DistanceRegularity::Regular {
        array: IntersectionArray { b, c },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeProfile {
    /// Degrees inside the induced subgraph, ascending.
    pub degrees: Vec<usize>,
    /// Number of vertices of induced degree exactly 2.
    pub degree_two: usize,
}

/// Degrees of the subgraph induced on `set`.
pub fn induced_degree_profile(g: &Graph, set: &[usize]) -> Result<DegreeProfile> {
    let mut member = vec![false; g.n()];
    for &v in set {
        g.check_vertex(v)?;
        member[v] = true;
    }
    let mut degrees: Vec<usize> = (0..g.n())
        .filter(|&v| member[v])
        .map(|v| g.neighbors(v).iter().filter(|&&w| member[w]).count())
        .collect();
    degrees.sort_unstable();
    let degree_two = degrees.iter().filter(|&&d| d == 2).count();
    Ok(DegreeProfile {
        degrees,
        degree_two,
    })
}
