//! Stabilizer orbits beyond a sphere, the block designs they carry, and the
//! adjacency structure between the sphere and an orbit.
//!
//! Throughout, `α` is a base vertex, `s >= 1` a radius such that the vertex
//! stabilizer `G_α` is transitive on each sphere `Γ_i(α)` for `i <= s`, and
//! `Δ` a `G_α`-orbit in `Γ_{s+1}(α)`. The neighbours of `α` in ascending id
//! order are the points `1..=k` of every design.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, subsets};
use crate::error::{Error, Result};
use crate::graph::{alpha_girth, bfs_distances, bfs_levels, vertex_triple, Girth, Graph};
use crate::perm::{homogeneous_under, orbits, point_stabilizer, GeneratedGroup, Permutation};

/// `|Γ_1(δ) ∩ Ω|`, checked to be the same for every `δ ∈ Δ`.
///
/// `group` must be transitive on `delta` and fix `omega` setwise.
pub fn kappa(g: &Graph, group: &GeneratedGroup, delta: &[usize], omega: &[usize]) -> Result<usize> {
    if delta.is_empty() {
        return Err(Error::Argument("κ needs a nonempty source set".into()));
    }
    let in_omega = membership(g.n(), omega)?;
    for (i, gen) in group.generators().iter().enumerate() {
        if let Some(&p) = omega.iter().find(|&&p| !in_omega[gen.apply(p)]) {
            return Err(Error::Precondition(format!(
                "generator {i} moves {p} out of the target set"
            )));
        }
    }
    let counts: Vec<usize> = delta
        .iter()
        .map(|&d| count_into(g, d, &in_omega))
        .collect();
    let transitive = {
        let part = orbits(group, delta)?;
        part.len() == 1
    };
    let uneven = counts.iter().position(|&c| c != counts[0]);
    match (transitive, uneven) {
        (true, None) => Ok(counts[0]),
        (_, Some(i)) => Err(Error::Precondition(format!(
            "vertices {} and {} see {} and {} target neighbours",
            delta[0], delta[i], counts[0], counts[i]
        ))),
        (false, None) => Err(Error::Precondition(
            "group is not transitive on the source set".into(),
        )),
    }
}

fn membership(n: usize, set: &[usize]) -> Result<Vec<bool>> {
    let mut inside = vec![false; n];
    for &v in set {
        if v >= n {
            return Err(Error::Argument(format!("vertex {v} is outside 0..{n}")));
        }
        inside[v] = true;
    }
    Ok(inside)
}

fn count_into(g: &Graph, v: usize, inside: &[bool]) -> usize {
    g.neighbors(v).iter().filter(|&&w| inside[w]).count()
}

/// `G_α`-orbits in `Γ_{s+1}(α)` with the intersection numbers between them
/// and the sphere `Γ_s(α)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphereOrbitProfile {
    pub alpha: usize,
    pub s: usize,
    pub valency: usize,
    /// `β_1, …, β_k`.
    pub neighbours: Vec<usize>,
    /// `Γ_s(α)`, sorted.
    pub sphere: Vec<usize>,
    /// `b_s(Γ, α)`.
    pub b_s: usize,
    /// Orbits `Δ_1, …, Δ_n`, each sorted, ordered by smallest vertex.
    pub orbits: Vec<Vec<usize>>,
    pub orbit_sizes: Vec<usize>,
    /// `b_i' = κ(Γ_s(α), Δ_i)`.
    pub b_prime: Vec<usize>,
    /// `c_i' = κ(Δ_i, Γ_s(α))`.
    pub c_prime: Vec<usize>,
    /// `a_{i,j} = κ(Δ_i, Δ_j)`.
    pub cross: Vec<Vec<usize>>,
}

/// Checks that every generator of `group` is an automorphism of `g`.
pub fn require_automorphisms(g: &Graph, group: &GeneratedGroup) -> Result<()> {
    if group.degree() != g.n() {
        return Err(Error::Argument(format!(
            "group degree {} does not match {} vertices",
            group.degree(),
            g.n()
        )));
    }
    for (i, gen) in group.generators().iter().enumerate() {
        if let Some((u, v)) = g.broken_edge(gen.images()) {
            return Err(Error::Argument(format!(
                "generator {i} maps edge {{{u},{v}}} to a non-edge"
            )));
        }
    }
    Ok(())
}

/// Profile for `group` (not yet stabilized) at `alpha`.
pub fn sphere_orbit_profile(
    g: &Graph,
    group: &GeneratedGroup,
    alpha: usize,
    s: usize,
) -> Result<SphereOrbitProfile> {
    require_automorphisms(g, group)?;
    g.check_vertex(alpha)?;
    let stabilizer = point_stabilizer(group, alpha)?;
    profile_with_stabilizer(g, &stabilizer, alpha, s)
}

/// Profile given the vertex stabilizer `G_α` directly.
pub fn profile_with_stabilizer(
    g: &Graph,
    stabilizer: &GeneratedGroup,
    alpha: usize,
    s: usize,
) -> Result<SphereOrbitProfile> {
    let k = g.require_regular()?;
    let dd = bfs_levels(g, alpha)?;
    if s == 0 || s + 1 > dd.eccentricity() {
        return Err(Error::Precondition(format!(
            "radius s = {s} needs 1 <= s < eccentricity {}",
            dd.eccentricity()
        )));
    }
    if stabilizer.generators().iter().any(|p| p.apply(alpha) != alpha) {
        return Err(Error::Precondition(format!("group does not fix vertex {alpha}")));
    }
    for i in 1..=s {
        let part = orbits(stabilizer, dd.level(i))?;
        if part.len() > 1 {
            return Err(Error::Precondition(format!(
                "stabilizer of {alpha} is not transitive on level {i}: {} and {} lie in different orbits",
                part.orbits[0][0], part.orbits[1][0]
            )));
        }
    }
    let sphere = sorted(dd.level(s));
    let b_s = vertex_triple(g, &dd.distance, sphere[0]).b;
    let part = orbits(stabilizer, dd.level(s + 1))?;

    let b_prime = part
        .orbits
        .iter()
        .map(|o| kappa(g, stabilizer, &sphere, o))
        .collect::<Result<Vec<_>>>()?;
    let c_prime = part
        .orbits
        .iter()
        .map(|o| kappa(g, stabilizer, o, &sphere))
        .collect::<Result<Vec<_>>>()?;
    let cross = part
        .orbits
        .iter()
        .map(|a| {
            part.orbits
                .iter()
                .map(|b| kappa(g, stabilizer, a, b))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let profile = SphereOrbitProfile {
        alpha,
        s,
        valency: k,
        neighbours: sorted(g.neighbors(alpha)),
        orbit_sizes: part.orbits.iter().map(Vec::len).collect(),
        sphere,
        b_s,
        orbits: part.orbits,
        b_prime,
        c_prime,
        cross,
    };
    verify_profile(&profile)?;
    Ok(profile)
}

fn sorted(v: &[usize]) -> Vec<usize> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}

/// Counting identities every profile satisfies.
pub fn verify_profile(p: &SphereOrbitProfile) -> Result<()> {
    let total: usize = p.b_prime.iter().sum();
    if total != p.b_s {
        return Err(Error::violation(
            "sum of b'",
            format!("b' values sum to {total}, b_s = {}", p.b_s),
        ));
    }
    for i in 0..p.orbits.len() {
        if p.orbit_sizes[i] * p.c_prime[i] != p.sphere.len() * p.b_prime[i] {
            return Err(Error::violation(
                "sphere-orbit edge count",
                format!(
                    "orbit {i}: {}·{} != {}·{}",
                    p.orbit_sizes[i],
                    p.c_prime[i],
                    p.sphere.len(),
                    p.b_prime[i]
                ),
            ));
        }
        for j in 0..p.orbits.len() {
            if p.orbit_sizes[i] * p.cross[i][j] != p.orbit_sizes[j] * p.cross[j][i] {
                return Err(Error::violation(
                    "orbit-orbit edge count",
                    format!("orbits {i} and {j}"),
                ));
            }
        }
    }
    Ok(())
}

/// `b'(k-1)^{s-1} C(c'-1, t-1) / C(k-1, t-1)`, which must be an integer.
pub fn delta_t_formula(b_prime: usize, c_prime: usize, k: usize, s: usize, t: usize) -> Result<u128> {
    if t == 0 || t > c_prime || c_prime > k || s == 0 {
        return Err(Error::Argument(format!(
            "need 1 <= t <= c' <= k and s >= 1, got t={t}, c'={c_prime}, k={k}, s={s}"
        )));
    }
    let overflow = || Error::Scale {
        what: "δ_t numerator".into(),
        size: u128::MAX,
        cap: u128::MAX,
    };
    let power = u128::try_from(k - 1)
        .ok()
        .and_then(|base| base.checked_pow(u32::try_from(s - 1).ok()?))
        .ok_or_else(overflow)?;
    let numerator = (b_prime as u128)
        .checked_mul(power)
        .and_then(|x| x.checked_mul(binomial(c_prime as u64 - 1, t as u64 - 1)))
        .ok_or_else(overflow)?;
    let denominator = binomial(k as u64 - 1, t as u64 - 1);
    if numerator % denominator != 0 {
        return Err(Error::Applicability(format!(
            "δ_{t} = {numerator}/{denominator} is not an integer"
        )));
    }
    Ok(numerator / denominator)
}

/// Largest `t <= upto` such that `group` is `t`-homogeneous on `domain`, or
/// 0 when it is not even transitive.
pub fn homogeneity_level(group: &GeneratedGroup, domain: &[usize], upto: usize) -> Result<usize> {
    let mut best = 0;
    for t in 1..=upto.min(domain.len()) {
        if homogeneous_under(group.generators(), domain, t)? {
            best = t;
        }
    }
    Ok(best)
}

/// A `t`-design `(X, B(c'))` read off an orbit `Δ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDesign {
    pub alpha: usize,
    pub s: usize,
    pub orbit_index: usize,
    /// `k = |X|`.
    pub points: usize,
    /// Vertex ids of `β_1..β_k`.
    pub labeling: Vec<usize>,
    /// `c'`.
    pub block_size: usize,
    pub b_prime: usize,
    /// Blocks as sorted subsets of `1..=k`, in lexicographic order.
    pub blocks: Vec<Vec<usize>>,
    /// `Δ(S)` for each block, sorted.
    pub block_classes: Vec<Vec<usize>>,
    /// `e = |Δ(S)|`.
    pub block_class_size: usize,
    /// Homogeneity level `t` the design is verified at.
    pub strength: usize,
    /// `λ_1, …, λ_t`.
    pub lambdas: Vec<usize>,
    /// `δ_1, …, δ_t`, measured as `|Δ(T)|`.
    pub deltas: Vec<usize>,
    pub orbit_size: usize,
}

impl BlockDesign {
    pub fn lambda_t(&self) -> usize {
        *self.lambdas.last().expect("strength >= 1")
    }

    pub fn delta_t(&self) -> usize {
        *self.deltas.last().expect("strength >= 1")
    }

    pub fn lambda_1(&self) -> usize {
        self.lambdas[0]
    }

    /// Blocks containing point `j`, as indices into `blocks`.
    pub fn blocks_through(&self, j: usize) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&i| self.blocks[i].contains(&j))
            .collect()
    }
}

/// `t-(k,c,λ)`.
impl fmt::Display for BlockDesign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}-({},{},{})",
            self.strength,
            self.points,
            self.block_size,
            self.lambda_t()
        )
    }
}

/// Distances from each `β_j`.
fn neighbour_distances(g: &Graph, neighbours: &[usize]) -> Vec<Vec<usize>> {
    neighbours.iter().map(|&b| bfs_distances(g, b)).collect()
}

fn local_girth(g: &Graph, alpha: usize) -> Girth {
    g.neighbors(alpha)
        .iter()
        .map(|&b| alpha_girth(g, b).plus_one())
        .fold(alpha_girth(g, alpha), Girth::min)
}

/// Verifies the standing hypothesis for the design at orbit `index` and
/// returns the homogeneity level to use.
pub fn check_design_hypothesis(
    g: &Graph,
    stabilizer: &GeneratedGroup,
    profile: &SphereOrbitProfile,
    index: usize,
    t: Option<usize>,
) -> Result<usize> {
    if index >= profile.orbits.len() {
        return Err(Error::Argument(format!(
            "orbit index {index} is outside 0..{}",
            profile.orbits.len()
        )));
    }
    let k = profile.valency;
    if k < 3 {
        return Err(Error::hypothesis("valency", format!("k = {k} < 3")));
    }
    let s = profile.s;
    let lg = local_girth(g, profile.alpha);
    if !lg.at_least(2 * s + 2) {
        return Err(Error::hypothesis(
            "local girth",
            format!("λ(Γ,{}) = {lg} < {}", profile.alpha, 2 * s + 2),
        ));
    }
    let c = profile.c_prime[index];
    let wanted = t.unwrap_or(c).min(c);
    if wanted == 0 {
        return Err(Error::Argument("t must be at least 1".into()));
    }
    let level = homogeneity_level(stabilizer, &profile.neighbours, c)?;
    match t {
        None if level == 0 => Err(Error::hypothesis(
            "local homogeneity",
            "local action is not transitive",
        )),
        None => Ok(level),
        Some(_) => {
            if homogeneous_under(stabilizer.generators(), &profile.neighbours, wanted)? {
                Ok(wanted)
            } else {
                Err(Error::hypothesis(
                    "local homogeneity",
                    format!("local action is not {wanted}-homogeneous"),
                ))
            }
        }
    }
}

/// Extracts and verifies the design carried by orbit `index`.
///
/// `t = None` uses the largest homogeneity level up to `c'`; `Some(t)` is
/// capped at `c'`.
pub fn extract_design(
    g: &Graph,
    stabilizer: &GeneratedGroup,
    profile: &SphereOrbitProfile,
    index: usize,
    t: Option<usize>,
) -> Result<BlockDesign> {
    let t = check_design_hypothesis(g, stabilizer, profile, index, t)?;
    let k = profile.valency;
    let s = profile.s;
    let c = profile.c_prime[index];
    let b = profile.b_prime[index];
    let delta = &profile.orbits[index];
    let dist = neighbour_distances(g, &profile.neighbours);
    let at_s = |x: usize, j: usize| dist[j - 1][x] == s;
    let points: Vec<usize> = (1..=k).collect();

    for &x in delta {
        let size = points.iter().filter(|&&j| at_s(x, j)).count();
        if size != c {
            return Err(Error::violation(
                "S(x) size",
                format!("|S({x})| = {size}, c' = {c}"),
            ));
        }
    }

    let class_of = |set: &[usize]| -> Vec<usize> {
        delta
            .iter()
            .copied()
            .filter(|&x| set.iter().all(|&j| at_s(x, j)))
            .collect()
    };

    let mut blocks = Vec::new();
    let mut classes = Vec::new();
    for set in subsets(&points, c) {
        let class = class_of(&set);
        if !class.is_empty() {
            blocks.push(set);
            classes.push(class);
        }
    }

    let mut seen: HashMap<usize, usize> = HashMap::new();
    for (i, class) in classes.iter().enumerate() {
        for &x in class {
            if let Some(prev) = seen.insert(x, i) {
                return Err(Error::violation(
                    "disjoint block classes",
                    format!(
                        "vertex {x} lies in Δ{:?} and Δ{:?}",
                        blocks[prev], blocks[i]
                    ),
                ));
            }
        }
    }
    if seen.len() != delta.len() {
        return Err(Error::violation(
            "block classes cover Δ",
            format!("{} of {} vertices covered", seen.len(), delta.len()),
        ));
    }
    let e = classes[0].len();
    if let Some(i) = classes.iter().position(|cl| cl.len() != e) {
        return Err(Error::violation(
            "constant e",
            format!("|Δ{:?}| = {e} but |Δ{:?}| = {}", blocks[0], blocks[i], classes[i].len()),
        ));
    }
    if blocks.len() * e != delta.len() {
        return Err(Error::violation(
            "|B|·e = |Δ|",
            format!("{}·{e} != {}", blocks.len(), delta.len()),
        ));
    }
    let sphere_edges = b as u128 * k as u128 * ((k - 1) as u128).pow(s as u32 - 1);
    if delta.len() as u128 * c as u128 != sphere_edges {
        return Err(Error::violation(
            "|Δ| = (b'/c')k(k-1)^(s-1)",
            format!("|Δ|·c' = {} but b'k(k-1)^(s-1) = {sphere_edges}", delta.len() * c),
        ));
    }

    let mut lambdas = Vec::with_capacity(t);
    let mut deltas = Vec::with_capacity(t);
    for j in 1..=t {
        let formula = delta_t_formula(b, c, k, s, j)?;
        let mut lambda_j = None;
        let mut delta_j = None;
        for set in subsets(&points, j) {
            let lam = blocks
                .iter()
                .filter(|blk| set.iter().all(|p| blk.contains(p)))
                .count();
            let measured = class_of(&set).len();
            if *lambda_j.get_or_insert(lam) != lam {
                return Err(Error::violation(
                    "t-design",
                    format!("{j}-subset {set:?} lies in {lam} blocks, expected {}", lambda_j.unwrap()),
                ));
            }
            if *delta_j.get_or_insert(measured) != measured {
                return Err(Error::violation(
                    "constant δ_t",
                    format!("|Δ({set:?})| = {measured}, expected {}", delta_j.unwrap()),
                ));
            }
        }
        let (lam, measured) = (lambda_j.unwrap(), delta_j.unwrap());
        if measured as u128 != formula {
            return Err(Error::violation(
                "δ_t formula",
                format!("|Δ(T)| = {measured} for |T| = {j}, formula gives {formula}"),
            ));
        }
        if lam * e != measured {
            return Err(Error::violation(
                "λ_t·e = δ_t",
                format!("λ_{j}·e = {lam}·{e} != {measured}"),
            ));
        }
        lambdas.push(lam);
        deltas.push(measured);
    }
    if lambdas[0] * e != b * (k - 1).pow(s as u32 - 1) {
        return Err(Error::violation(
            "λ_1·e = b'(k-1)^(s-1)",
            format!("{}·{e}", lambdas[0]),
        ));
    }
    if t == c && (lambdas[t - 1] != 1 || blocks.len() as u128 != binomial(k as u64, c as u64)) {
        return Err(Error::violation(
            "t = c' gives all c'-subsets",
            format!("λ = {}, {} blocks", lambdas[t - 1], blocks.len()),
        ));
    }

    Ok(BlockDesign {
        alpha: profile.alpha,
        s,
        orbit_index: index,
        points: k,
        labeling: profile.neighbours.clone(),
        block_size: c,
        b_prime: b,
        blocks,
        block_classes: classes,
        block_class_size: e,
        strength: t,
        lambdas,
        deltas,
        orbit_size: delta.len(),
    })
}

/// Shape of the edges between one part `B_j` of the sphere and an orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StructureTag {
    /// `b' = 1`: the edges form matchings.
    Matching,
    /// `P = [b']` with `b' > 1`: disjoint stars `K_{1,b'}`.
    StarUnion { b: usize },
    /// `P = [b, …, b]` with `m >= 2` equal parts.
    Uniform { m: usize, b: usize },
    Irregular,
}

impl StructureTag {
    pub fn from_partition(partition: &[usize]) -> Self {
        match partition {
            [1] => StructureTag::Matching,
            [b] => StructureTag::StarUnion { b: *b },
            [b, rest @ ..] if rest.iter().all(|x| x == b) => StructureTag::Uniform {
                m: partition.len(),
                b: *b,
            },
            _ => StructureTag::Irregular,
        }
    }
}

/// The incidence between the centres `B_j` and the block classes through
/// one point `j`, abstracted from the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarIncidence {
    /// Vertices of `B_j`.
    pub centres: Vec<usize>,
    /// Block classes `Δ(S)` for the blocks `S` through `j`.
    pub classes: Vec<Vec<usize>>,
    /// For each centre, its neighbours in the union of the classes.
    pub links: Vec<Vec<usize>>,
    /// Permutations of block indices induced by the stabilizer of `β_j`.
    /// Empty when unknown.
    pub block_action: Vec<Permutation>,
}

/// Parameters of the design `(B(c',j), B_m(c',j))` on blocks through `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDesign {
    /// `μ = |B(c',j)|`.
    pub mu: usize,
    pub m: usize,
    /// `λ = |B_m^S(c',j)|`.
    pub lambda: usize,
    /// Families `B_j^γ` as sorted lists of block indices.
    pub families: Vec<Vec<usize>>,
    /// `f_j(m) = |B_j(S_1, …, S_m)|`.
    pub f_m: usize,
    /// Largest `τ <= m` at which the induced block action is homogeneous,
    /// when the action is known.
    pub tau: Option<usize>,
    /// `λ_τ` when `τ < m`.
    pub lambda_tau: Option<usize>,
    /// `f_j(τ)` when `τ < m`.
    pub f_tau: Option<usize>,
}

/// Outcome of [`analyze_incidence`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceAnalysis {
    /// `P = [|Γ_1(γ) ∩ Δ(S)| : S ∈ B_j^γ]`, sorted descending.
    pub partition: Vec<usize>,
    pub tag: StructureTag,
    /// `f_j = |B_j(S)|`.
    pub f: usize,
    pub family_design: Option<FamilyDesign>,
    /// Names of the structural statements checked.
    pub verified: Vec<String>,
}

fn stars(
    centres: &[usize],
    leaves: &[usize],
    adjacent: &dyn Fn(usize, usize) -> bool,
    arms: usize,
    clause: &str,
) -> Result<()> {
    for &c in centres {
        let n = leaves.iter().filter(|&&x| adjacent(c, x)).count();
        if n != arms {
            return Err(Error::violation(
                clause,
                format!("centre {c} has {n} leaves, expected {arms}"),
            ));
        }
    }
    for &x in leaves {
        let n = centres.iter().filter(|&&c| adjacent(c, x)).count();
        if n != 1 {
            return Err(Error::violation(
                clause,
                format!("vertex {x} meets {n} centres, expected 1"),
            ));
        }
    }
    Ok(())
}

fn is_partition(parts: &[Vec<usize>], whole: &[usize]) -> bool {
    let mut all: Vec<usize> = parts.iter().flatten().copied().collect();
    let before = all.len();
    all.sort_unstable();
    all.dedup();
    let mut w = whole.to_vec();
    w.sort_unstable();
    all.len() == before && all == w
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| b.contains(x)).collect()
}

/// Checks the structure of one star incidence and classifies it.
pub fn analyze_incidence(inc: &StarIncidence) -> Result<IncidenceAnalysis> {
    if inc.centres.is_empty() || inc.classes.is_empty() {
        return Err(Error::Argument("empty incidence".into()));
    }
    let mut verified: Vec<String> = Vec::new();
    let union: Vec<usize> = {
        let mut u: Vec<usize> = inc.classes.iter().flatten().copied().collect();
        u.sort_unstable();
        u
    };
    if !is_partition(&inc.classes, &union) {
        return Err(Error::violation("disjoint block classes", "classes overlap"));
    }
    let link_sets: Vec<BTreeSet<usize>> = inc.links.iter().map(|l| l.iter().copied().collect()).collect();
    let adjacent = |ci: usize, x: usize| link_sets[ci].contains(&x);
    let b_prime = inc.links[0].len();

    // Centre indices stand in for vertices from here on.
    let centre_ids: Vec<usize> = (0..inc.centres.len()).collect();
    let adj = |c: usize, x: usize| adjacent(c, x);
    stars(&centre_ids, &union, &adj, b_prime, "B_j–Δ_j stars")?;
    verified.push("edges between B_j and Δ_j are disjoint stars K_{1,b'}".into());

    // Per centre: which blocks it meets and how often.
    let mut families: Vec<Vec<usize>> = Vec::new();
    let mut partition: Option<Vec<usize>> = None;
    for (ci, links) in inc.links.iter().enumerate() {
        let mut family = Vec::new();
        let mut parts = Vec::new();
        for (bi, class) in inc.classes.iter().enumerate() {
            let n = links.iter().filter(|x| class.contains(x)).count();
            if n > 0 {
                family.push(bi);
                parts.push(n);
            }
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        match &partition {
            None => partition = Some(parts),
            Some(p) if *p != parts => {
                return Err(Error::violation(
                    "witness-independent P",
                    format!(
                        "centre {} gives {parts:?}, centre {} gives {p:?}",
                        inc.centres[ci], inc.centres[0]
                    ),
                ));
            }
            Some(_) => {}
        }
        families.push(family);
    }
    let partition = partition.expect("at least one centre");
    verified.push("P is independent of the witness".into());

    // B_j(S) for each block, as centre indices.
    let through: Vec<Vec<usize>> = (0..inc.classes.len())
        .map(|bi| centre_ids.iter().copied().filter(|&c| families[c].contains(&bi)).collect())
        .collect();
    let f = through[0].len();
    if let Some(bi) = through.iter().position(|t| t.len() != f) {
        return Err(Error::violation(
            "constant f_j",
            format!("|B_j(S)| is {f} for block 0 but {} for block {bi}", through[bi].len()),
        ));
    }
    verified.push("f_j = |B_j(S)| is constant".into());

    let tag = StructureTag::from_partition(&partition);
    let mut family_design = None;
    match tag {
        StructureTag::Matching | StructureTag::StarUnion { .. } => {
            for i in 0..through.len() {
                for j in i + 1..through.len() {
                    if !intersect(&through[i], &through[j]).is_empty() {
                        return Err(Error::violation(
                            "B_j(S) ∩ B_j(T) = ∅",
                            format!("blocks {i} and {j} share a centre"),
                        ));
                    }
                }
                stars(&through[i], &inc.classes[i], &adj, b_prime, "B_j(S)–Δ(S) stars")?;
            }
            if !is_partition(&through, &centre_ids) {
                return Err(Error::violation("B_j(S) partition B_j", "sets do not cover B_j"));
            }
            verified.push("B_j(S) ∩ B_j(T) = ∅ for distinct blocks".into());
            verified.push("edges between B_j(S) and Δ(S) are disjoint stars K_{1,b'}".into());
            verified.push("the B_j(S) partition B_j".into());
            verified.push("the Δ(S) partition Δ_j".into());
        }
        StructureTag::Uniform { m, b } => {
            family_design = Some(uniform_structure(inc, &families, &through, m, b, b_prime)?);
            verified.push("B_j(S_1..S_m) partition B_j and each B_j(S)".into());
            verified.push("Δ_S(S,T..) partition Δ(S); Δ_j(S_1..S_m) partition Δ_j".into());
            verified.push("B_j(S_1..S_m)–Δ_S stars K_{1,b}; B_j(S_1..S_m)–Δ_j stars K_{1,b'}".into());
            verified.push("(B(c',j), B_m(c',j)) is a 1-design with f_j = λ·f_j(m)".into());
        }
        StructureTag::Irregular => {}
    }
    Ok(IncidenceAnalysis {
        partition,
        tag,
        f,
        family_design,
        verified,
    })
}

fn uniform_structure(
    inc: &StarIncidence,
    families: &[Vec<usize>],
    through: &[Vec<usize>],
    m: usize,
    b: usize,
    b_prime: usize,
) -> Result<FamilyDesign> {
    let mu = inc.classes.len();
    let centre_ids: Vec<usize> = (0..inc.centres.len()).collect();
    let link_sets: Vec<BTreeSet<usize>> = inc.links.iter().map(|l| l.iter().copied().collect()).collect();
    let adj = |c: usize, x: usize| link_sets[c].contains(&x);

    // B_m(c',j) as the distinct families B_j^γ, each with B_j(F).
    let mut by_family: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (c, fam) in families.iter().enumerate() {
        by_family.entry(fam.clone()).or_default().push(c);
    }
    for (fam, owners) in &by_family {
        // B_j(F) = ∩ B_j(S_r) must be exactly the centres with family F.
        let meet: Vec<usize> = centre_ids
            .iter()
            .copied()
            .filter(|c| fam.iter().all(|bi| through[*bi].contains(c)))
            .collect();
        if meet != *owners {
            return Err(Error::violation(
                "B_m(c',j) = {B_j^γ}",
                format!("family {fam:?}: intersection {meet:?} vs owners {owners:?}"),
            ));
        }
    }
    let fam_list: Vec<Vec<usize>> = by_family.keys().cloned().collect();
    let owners: Vec<Vec<usize>> = by_family.values().cloned().collect();
    if !is_partition(&owners, &centre_ids) {
        return Err(Error::violation("B_j(S_1..S_m) partition B_j", "families overlap"));
    }
    let f_m = owners[0].len();
    if owners.iter().any(|o| o.len() != f_m) {
        return Err(Error::violation("constant f_j(m)", "family sizes differ"));
    }

    for (fi, fam) in fam_list.iter().enumerate() {
        let mut delta_fam: Vec<usize> = Vec::new();
        for &bi in fam {
            // Δ_S(F) for S = block bi.
            let part: Vec<usize> = inc.classes[bi]
                .iter()
                .copied()
                .filter(|&x| owners[fi].iter().any(|&c| adj(c, x)))
                .collect();
            stars(&owners[fi], &part, &adj, b, "B_j(F)–Δ_S(F) stars")?;
            delta_fam.extend(part);
        }
        stars(&owners[fi], &delta_fam, &adj, b_prime, "B_j(F)–Δ_j(F) stars")?;
    }
    for (bi, class) in inc.classes.iter().enumerate() {
        let parts: Vec<Vec<usize>> = fam_list
            .iter()
            .enumerate()
            .filter(|(_, fam)| fam.contains(&bi))
            .map(|(fi, _)| {
                class
                    .iter()
                    .copied()
                    .filter(|&x| owners[fi].iter().any(|&c| adj(c, x)))
                    .collect()
            })
            .collect();
        if !is_partition(&parts, class) {
            return Err(Error::violation("Δ_S(..) partition Δ(S)", format!("block {bi}")));
        }
        let b_parts: Vec<Vec<usize>> = fam_list
            .iter()
            .enumerate()
            .filter(|(_, fam)| fam.contains(&bi))
            .map(|(fi, _)| owners[fi].clone())
            .collect();
        if !is_partition(&b_parts, &through[bi]) {
            return Err(Error::violation("B_j(S,..) partition B_j(S)", format!("block {bi}")));
        }
    }

    let lambda_of = |sub: &[usize]| fam_list.iter().filter(|f| sub.iter().all(|x| f.contains(x))).count();
    let lambda = lambda_of(&[0]);
    for bi in 0..mu {
        if lambda_of(&[bi]) != lambda {
            return Err(Error::violation(
                "1-(μ,m,λ) design",
                format!("block {bi} lies in {} families, block 0 in {lambda}", lambda_of(&[bi])),
            ));
        }
    }
    if through[0].len() != lambda * f_m {
        return Err(Error::violation(
            "f_j = λ·f_j(m)",
            format!("{} != {lambda}·{f_m}", through[0].len()),
        ));
    }

    let mut design = FamilyDesign {
        mu,
        m,
        lambda,
        families: fam_list.clone(),
        f_m,
        tau: None,
        lambda_tau: None,
        f_tau: None,
    };
    if inc.block_action.is_empty() {
        return Ok(design);
    }
    let domain: Vec<usize> = (0..mu).collect();
    let mut tau = 0;
    for t in 1..=m.min(mu) {
        if homogeneous_under(&inc.block_action, &domain, t)? {
            tau = t;
        }
    }
    if tau == 0 {
        return Err(Error::violation(
            "transitive block action",
            "stabilizer of β_j is not transitive on the blocks through j",
        ));
    }
    design.tau = Some(tau);
    if tau >= m {
        if fam_list.len() as u128 != binomial(mu as u64, m as u64) {
            return Err(Error::violation(
                "τ >= m gives all m-subsets",
                format!("{} families of {} blocks", fam_list.len(), mu),
            ));
        }
        return Ok(design);
    }
    let mut lambda_tau = None;
    let mut f_tau = None;
    for sub in subsets(&domain, tau) {
        let lam = lambda_of(&sub);
        let meet = centre_ids
            .iter()
            .filter(|c| sub.iter().all(|bi| through[*bi].contains(c)))
            .count();
        if *lambda_tau.get_or_insert(lam) != lam || *f_tau.get_or_insert(meet) != meet {
            return Err(Error::violation(
                "τ-(μ,m,λ_τ) design",
                format!("block set {sub:?} gives λ = {lam}, |B_j(..)| = {meet}"),
            ));
        }
        if meet != lam * f_m {
            return Err(Error::violation(
                "f_j(τ) = λ_τ·f_j(m)",
                format!("{meet} != {lam}·{f_m}"),
            ));
        }
    }
    design.lambda_tau = lambda_tau;
    design.f_tau = f_tau;
    Ok(design)
}

/// Adjacency structure between `Γ_s(α)` and one orbit `Δ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjacencyRelationClass {
    pub alpha: usize,
    pub s: usize,
    pub orbit_index: usize,
    /// `P_{s+1}(α, Δ)`, sorted descending.
    pub partition: Vec<usize>,
    pub tag: StructureTag,
    /// `f_j`, the same for every `j`.
    pub f_j: usize,
    /// Design on the blocks through point 1, when the structure is uniform.
    pub family_design: Option<FamilyDesign>,
    /// Families of `B_m(c',1)` written as block lists, when uniform.
    pub families: Option<Vec<Vec<Vec<usize>>>>,
    pub verified: Vec<String>,
}

/// Classifies the edges between the sphere and the design's orbit, running
/// every structural check for each point `j`.
pub fn adjacency_relation_class(
    g: &Graph,
    stabilizer: &GeneratedGroup,
    profile: &SphereOrbitProfile,
    design: &BlockDesign,
) -> Result<AdjacencyRelationClass> {
    let s = profile.s;
    let k = profile.valency;
    let delta = &profile.orbits[design.orbit_index];
    let in_delta = membership(g.n(), delta)?;
    let dist = neighbour_distances(g, &profile.neighbours);
    let sphere_size = profile.sphere.len();
    let index_of: HashMap<usize, usize> = profile
        .neighbours
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i + 1))
        .collect();

    let mut result: Option<AdjacencyRelationClass> = None;
    for j in 1..=k {
        let centres: Vec<usize> = profile
            .sphere
            .iter()
            .copied()
            .filter(|&v| dist[j - 1][v] + 1 == s)
            .collect();
        let expected = (k - 1).pow(s as u32 - 1);
        if centres.len() != expected || sphere_size != k * expected {
            return Err(Error::violation(
                "|B_j| = (k-1)^(s-1)",
                format!("|B_{j}| = {}", centres.len()),
            ));
        }
        let through = design.blocks_through(j);
        let classes: Vec<Vec<usize>> = through.iter().map(|&i| design.block_classes[i].clone()).collect();
        let links: Vec<Vec<usize>> = centres
            .iter()
            .map(|&c| g.neighbors(c).iter().copied().filter(|&w| in_delta[w]).collect())
            .collect();
        let delta_j: usize = classes.iter().map(Vec::len).sum();
        if delta_j != design.b_prime * expected {
            return Err(Error::violation(
                "|Δ_j| = b'(k-1)^(s-1)",
                format!("|Δ_{j}| = {delta_j}"),
            ));
        }

        // Blocks through j, permuted by the stabilizer of β_j.
        let beta = profile.neighbours[j - 1];
        let fixer = point_stabilizer(stabilizer, beta)?;
        let block_index: HashMap<&Vec<usize>, usize> = through
            .iter()
            .enumerate()
            .map(|(pos, &i)| (&design.blocks[i], pos))
            .collect();
        let mut block_action = Vec::new();
        for gen in fixer.generators() {
            let mut images = Vec::with_capacity(through.len());
            for &i in &through {
                let mut image: Vec<usize> = design.blocks[i]
                    .iter()
                    .map(|&p| index_of[&gen.apply(profile.neighbours[p - 1])])
                    .collect();
                image.sort_unstable();
                match block_index.get(&image) {
                    Some(&pos) => images.push(pos),
                    None => {
                        return Err(Error::violation(
                            "blocks are permuted",
                            format!("block {:?} maps to non-block {image:?}", design.blocks[i]),
                        ))
                    }
                }
            }
            block_action.push(Permutation::new(images)?);
        }

        let inc = StarIncidence {
            centres,
            classes,
            links,
            block_action,
        };
        let analysis = analyze_incidence(&inc)?;
        if analysis.partition.iter().sum::<usize>() != design.b_prime {
            return Err(Error::violation(
                "P sums to b'",
                format!("{:?} vs b' = {}", analysis.partition, design.b_prime),
            ));
        }
        match &result {
            None => {
                let families = analysis.family_design.as_ref().map(|fd| {
                    fd.families
                        .iter()
                        .map(|fam| fam.iter().map(|&pos| design.blocks[through[pos]].clone()).collect())
                        .collect()
                });
                result = Some(AdjacencyRelationClass {
                    alpha: profile.alpha,
                    s,
                    orbit_index: design.orbit_index,
                    partition: analysis.partition,
                    tag: analysis.tag,
                    f_j: analysis.f,
                    family_design: analysis.family_design,
                    families,
                    verified: analysis.verified,
                });
            }
            Some(first) => {
                let same = first.partition == analysis.partition
                    && first.f_j == analysis.f
                    && first.family_design.as_ref().map(|d| (d.mu, d.m, d.lambda, d.f_m, d.tau))
                        == analysis.family_design.as_ref().map(|d| (d.mu, d.m, d.lambda, d.f_m, d.tau));
                if !same {
                    return Err(Error::violation(
                        "independent of j",
                        format!("point {j} gives {:?}, point 1 gives {:?}", analysis.partition, first.partition),
                    ));
                }
            }
        }
    }
    let mut out = result.expect("k >= 1");
    out.verified.push("P and f_j are independent of j".into());
    Ok(out)
}

/// One isomorphism class of 1-designs on a small point set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneDesignClass {
    pub points: usize,
    pub block_size: usize,
    pub block_count: usize,
    pub lambda_1: usize,
    /// Largest `t <= block_size` for which the family is a `t`-design.
    pub strength: usize,
    pub lambda_strength: usize,
    /// Every distinct family in the class; the first is the smallest.
    pub labelings: Vec<Vec<Vec<usize>>>,
}

impl OneDesignClass {
    pub fn representative(&self) -> &[Vec<usize>] {
        &self.labelings[0]
    }
}

/// Largest `t` in `1..=c` for which `blocks` is a `t`-design on `1..=k`,
/// with its `λ_t`; `None` if it is not even a 1-design.
pub fn design_strength(k: usize, c: usize, blocks: &[Vec<usize>]) -> Option<(usize, usize)> {
    let points: Vec<usize> = (1..=k).collect();
    let mut best = None;
    for t in 1..=c.min(k) {
        let counts: BTreeSet<usize> = subsets(&points, t)
            .iter()
            .map(|sub| blocks.iter().filter(|b| sub.iter().all(|p| b.contains(p))).count())
            .collect();
        if counts.len() == 1 {
            best = Some((t, *counts.iter().next().unwrap()));
        } else if t == 1 {
            return None;
        }
    }
    best
}

fn permutations_of(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i + 1);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// All 1-designs with distinct blocks of size `c` on `k ∈ {3, 4}` points,
/// grouped up to relabelling of the points and ordered by `λ_1`.
pub fn enumerate_small_one_designs(k: usize, c: usize) -> Result<Vec<OneDesignClass>> {
    if !(3..=4).contains(&k) {
        return Err(Error::Applicability(format!("k = {k} is outside {{3, 4}}")));
    }
    if c == 0 || c > k {
        return Err(Error::Argument(format!("block size {c} is outside 1..={k}")));
    }
    let points: Vec<usize> = (1..=k).collect();
    let candidates = subsets(&points, c);
    let relabels = permutations_of(k);
    let mut classes: BTreeMap<Vec<Vec<usize>>, BTreeSet<Vec<Vec<usize>>>> = BTreeMap::new();
    for mask in 1u32..(1 << candidates.len()) {
        let family: Vec<Vec<usize>> = (0..candidates.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| candidates[i].clone())
            .collect();
        if design_strength(k, c, &family).is_none() {
            continue;
        }
        let images: BTreeSet<Vec<Vec<usize>>> = relabels
            .iter()
            .map(|perm| {
                let mut fam: Vec<Vec<usize>> = family
                    .iter()
                    .map(|b| {
                        let mut img: Vec<usize> = b.iter().map(|&p| perm[p - 1]).collect();
                        img.sort_unstable();
                        img
                    })
                    .collect();
                fam.sort();
                fam
            })
            .collect();
        let key = images.iter().next().unwrap().clone();
        classes.insert(key, images);
    }
    let mut out: Vec<OneDesignClass> = classes
        .into_values()
        .map(|labelings| {
            let labelings: Vec<Vec<Vec<usize>>> = labelings.into_iter().collect();
            let rep = &labelings[0];
            let (strength, lambda_strength) = design_strength(k, c, rep).expect("1-design");
            let lambda_1 = rep.iter().filter(|b| b.contains(&1)).count();
            OneDesignClass {
                points: k,
                block_size: c,
                block_count: rep.len(),
                lambda_1,
                strength,
                lambda_strength,
                labelings,
            }
        })
        .collect();
    out.sort_by(|a, b| (a.lambda_1, &a.labelings).cmp(&(b.lambda_1, &b.labelings)));
    Ok(out)
}
