//! Permutations and permutation groups given by generators.
//!
//! Groups act on the right: `p^g` is written `g.apply(p)` and the product
//! `g.then(h)` maps `p` to `h.apply(g.apply(p))`. A [`GeneratedGroup`] keeps
//! a stabilizer chain built by deterministic Schreier–Sims, so order,
//! membership and point stabilizers are exact.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, image_of_set, orbit_closure, subsets};
use crate::error::{Error, Result};

/// Cap on the number of `t`-subsets enumerated by [`is_t_homogeneous`].
pub const SUBSET_CAP: u128 = 1 << 20;

/// A bijection on `0..n`, stored as its image sequence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::new(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl Permutation {
    /// Builds a permutation from `images[i] = i^g`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (i, &x) in images.iter().enumerate() {
            if x >= n {
                return Err(Error::Invariant(format!(
                    "image {x} of point {i} is outside 0..{n}"
                )));
            }
            if seen[x] {
                return Err(Error::Invariant(format!(
                    "point {x} appears twice as an image"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation of degree `n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for (i, &p) in cycle.iter().enumerate() {
                if p >= n {
                    return Err(Error::Argument(format!(
                        "cycle point {p} is outside 0..{n}"
                    )));
                }
                if used[p] {
                    return Err(Error::Argument(format!(
                        "point {p} is repeated in the cycles"
                    )));
                }
                used[p] = true;
                images[p] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Smallest point not fixed.
    pub fn first_moved(&self) -> Option<usize> {
        self.images.iter().enumerate().position(|(i, &x)| i != x)
    }

    /// Nontrivial cycles, each starting at its smallest point, ordered by
    /// that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.images[start];
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.images[p];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

/// Cycle notation, `()` for the identity.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    generators: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `transversal[p]` maps the base point to `p`.
    transversal: Vec<Option<Permutation>>,
    inverse: Vec<Option<Permutation>>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        let mut inverse = vec![None; degree];
        transversal[base] = Some(Permutation::identity(degree));
        inverse[base] = Some(Permutation::identity(degree));
        Level {
            base,
            generators: Vec::new(),
            orbit: vec![base],
            transversal,
            inverse,
        }
    }

    fn rep(&self, p: usize) -> &Permutation {
        self.transversal[p].as_ref().expect("point in orbit")
    }
}

#[derive(Clone, Debug)]
struct Chain {
    degree: usize,
    levels: Vec<Level>,
}

impl Chain {
    fn with_prefix(degree: usize, prefix: &[usize]) -> Self {
        Chain {
            degree,
            levels: prefix.iter().map(|&b| Level::new(b, degree)).collect(),
        }
    }

    /// Strips `g` through the levels from `from` on. Returns the residue and
    /// the level at which stripping stopped.
    fn sift(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut g = g.clone();
        for (depth, level) in self.levels.iter().enumerate().skip(from) {
            let p = g.apply(level.base);
            match &level.inverse[p] {
                Some(inv) => g = g.then(inv),
                None => return (g, depth),
            }
        }
        (g, self.levels.len())
    }

    fn contains_from(&self, g: &Permutation, from: usize) -> bool {
        let (residue, depth) = self.sift(g, from);
        depth == self.levels.len() && residue.is_identity()
    }

    fn insert(&mut self, g: &Permutation) {
        if !self.contains_from(g, 0) {
            self.add(0, g.clone());
        }
    }

    /// Adds `g`, which fixes the bases above `depth` and is not in the
    /// subgroup described by levels `depth..`.
    fn add(&mut self, depth: usize, g: Permutation) {
        if depth == self.levels.len() {
            let base = g.first_moved().expect("non-identity generator");
            self.levels.push(Level::new(base, self.degree));
        }
        let level = &mut self.levels[depth];
        level.generators.push(g);
        let new_gen = level.generators.len() - 1;
        let old_len = level.orbit.len();

        let mut i = 0;
        while i < level.orbit.len() {
            let p = level.orbit[i];
            let gens: Vec<usize> = if i < old_len {
                vec![new_gen]
            } else {
                (0..level.generators.len()).collect()
            };
            for s in gens {
                let q = level.generators[s].apply(p);
                if level.transversal[q].is_none() {
                    let u = level.rep(p).then(&level.generators[s]);
                    level.inverse[q] = Some(u.inverse());
                    level.transversal[q] = Some(u);
                    level.orbit.push(q);
                }
            }
            i += 1;
        }

        let mut pairs = Vec::new();
        for (i, &p) in level.orbit.iter().enumerate() {
            if i < old_len {
                pairs.push((p, new_gen));
            } else {
                pairs.extend((0..level.generators.len()).map(|s| (p, s)));
            }
        }
        for (p, s) in pairs {
            let level = &self.levels[depth];
            let s_perm = &level.generators[s];
            let q = s_perm.apply(p);
            let schreier = level
                .rep(p)
                .then(s_perm)
                .then(level.inverse[q].as_ref().expect("point in orbit"));
            if !self.contains_from(&schreier, depth + 1) {
                self.add(depth + 1, schreier);
            }
        }
    }

    fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }
}

/// A permutation group given by generators, with its stabilizer chain.
#[derive(Clone, Debug)]
pub struct GeneratedGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: Chain,
    order: BigUint,
}

impl PartialEq for GeneratedGroup {
    /// Equal as sets of permutations.
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.order == other.order
            && other.generators.iter().all(|g| self.contains(g))
    }
}

impl GeneratedGroup {
    /// Runs Schreier–Sims on a nonempty generator list of common degree.
    pub fn new(generators: Vec<Permutation>) -> Result<Self> {
        Self::with_base_prefix(generators, &[])
    }

    /// The trivial group of the given degree.
    pub fn trivial(degree: usize) -> Self {
        Self::new(vec![Permutation::identity(degree)]).expect("identity is valid")
    }

    /// Builds the group from image sequences, validating each one.
    pub fn from_images(images: Vec<Vec<usize>>) -> Result<Self> {
        let gens = images
            .into_iter()
            .map(Permutation::new)
            .collect::<Result<Vec<_>>>()?;
        Self::new(gens)
    }

    fn with_base_prefix(generators: Vec<Permutation>, prefix: &[usize]) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Err(Error::Argument("generator list is empty".into()));
        };
        let degree = first.degree();
        for (i, g) in generators.iter().enumerate() {
            if g.degree() != degree {
                return Err(Error::Argument(format!(
                    "generator {i} has degree {}, expected {degree}",
                    g.degree()
                )));
            }
        }
        let mut chain = Chain::with_prefix(degree, prefix);
        for g in &generators {
            chain.insert(g);
        }
        let order = chain.order();
        Ok(GeneratedGroup {
            degree,
            generators,
            chain,
            order,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// Base points of the stabilizer chain.
    pub fn base(&self) -> Vec<usize> {
        self.chain.levels.iter().map(|l| l.base).collect()
    }

    /// Fundamental orbit lengths along the chain.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.chain.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Generators stored at each level of the chain.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.chain
            .levels
            .iter()
            .flat_map(|l| l.generators.iter().cloned())
            .collect()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.chain.contains_from(g, 0)
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    /// Orbit of a single point, in discovery order.
    pub fn orbit_of(&self, point: usize) -> Result<Vec<usize>> {
        self.check_point(point)?;
        Ok(orbit_closure(point, &self.generators, |g, &p| g.apply(p)))
    }

    /// Whether the group is transitive on `0..degree`.
    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit_of(0).map(|o| o.len()) == Ok(self.degree)
    }

    fn check_point(&self, point: usize) -> Result<()> {
        if point >= self.degree {
            return Err(Error::Argument(format!(
                "point {point} is outside 0..{}",
                self.degree
            )));
        }
        Ok(())
    }

    /// Every element, for groups of order at most `cap`.
    pub fn elements(&self, cap: u64) -> Result<Vec<Permutation>> {
        if self.order > BigUint::from(cap) {
            return Err(Error::Scale {
                what: "group elements".into(),
                size: u128::try_from(&self.order).unwrap_or(u128::MAX),
                cap: cap as u128,
            });
        }
        // g = u_last * ... * u_0 with u_i from the transversal at level i.
        let mut out = vec![Permutation::identity(self.degree)];
        for level in self.chain.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for g in &out {
                for &p in &level.orbit {
                    next.push(g.then(level.rep(p)));
                }
            }
            out = next;
        }
        out.sort();
        Ok(out)
    }
}

/// The subgroup `{g in group : point^g = point}`.
pub fn point_stabilizer(group: &GeneratedGroup, point: usize) -> Result<GeneratedGroup> {
    group.check_point(point)?;
    let prefixed = GeneratedGroup::with_base_prefix(group.generators.clone(), &[point])?;
    let gens: Vec<Permutation> = prefixed
        .chain
        .levels
        .iter()
        .skip(1)
        .flat_map(|l| l.generators.iter().cloned())
        .collect();
    if gens.is_empty() {
        return Ok(GeneratedGroup::trivial(group.degree));
    }
    GeneratedGroup::new(gens)
}

/// Pointwise stabilizer of several points, in turn.
pub fn pointwise_stabilizer(group: &GeneratedGroup, points: &[usize]) -> Result<GeneratedGroup> {
    let mut g = group.clone();
    for &p in points {
        g = point_stabilizer(&g, p)?;
    }
    Ok(g)
}

/// Partition of a point set into orbits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitPartition {
    /// Sorted domain.
    pub domain: Vec<usize>,
    /// Each orbit sorted; orbits ordered by their smallest point.
    pub orbits: Vec<Vec<usize>>,
}

impl OrbitPartition {
    /// Minimum point of each orbit.
    pub fn representatives(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| o[0]).collect()
    }

    /// Index of the orbit containing `point`.
    pub fn orbit_index(&self, point: usize) -> Option<usize> {
        self.orbits.iter().position(|o| o.binary_search(&point).is_ok())
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }
}

fn check_invariant(gens: &[Permutation], domain: &[usize], degree: usize) -> Result<Vec<usize>> {
    let mut sorted = domain.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if let Some(&p) = sorted.iter().find(|&&p| p >= degree) {
        return Err(Error::Argument(format!(
            "domain point {p} is outside 0..{degree}"
        )));
    }
    let members: HashSet<usize> = sorted.iter().copied().collect();
    for (i, g) in gens.iter().enumerate() {
        for &p in &sorted {
            let image = g.apply(p);
            if !members.contains(&image) {
                return Err(Error::NotInvariant {
                    generator: i,
                    point: p,
                    image,
                });
            }
        }
    }
    Ok(sorted)
}

/// Orbits of `group` on an invariant `domain`.
pub fn orbits(group: &GeneratedGroup, domain: &[usize]) -> Result<OrbitPartition> {
    let domain = check_invariant(&group.generators, domain, group.degree)?;
    let mut assigned: HashSet<usize> = HashSet::new();
    let mut out = Vec::new();
    for &p in &domain {
        if assigned.contains(&p) {
            continue;
        }
        let mut orbit = orbit_closure(p, &group.generators, |g, &x| g.apply(x));
        orbit.sort_unstable();
        assigned.extend(orbit.iter().copied());
        out.push(orbit);
    }
    Ok(OrbitPartition {
        domain,
        orbits: out,
    })
}

/// Whether the generators act transitively on the `t`-subsets of an
/// invariant domain.
pub fn homogeneous_under(gens: &[Permutation], domain: &[usize], t: usize) -> Result<bool> {
    let degree = gens.first().map_or(0, Permutation::degree);
    let domain = check_invariant(gens, domain, degree)?;
    if t == 0 || t > domain.len() {
        return Err(Error::Argument(format!(
            "t = {t} is outside 1..={}",
            domain.len()
        )));
    }
    let total = binomial(domain.len() as u64, t as u64);
    if total > SUBSET_CAP {
        return Err(Error::Scale {
            what: format!("{t}-subsets of a {}-point domain", domain.len()),
            size: total,
            cap: SUBSET_CAP,
        });
    }
    let start: Vec<usize> = domain[..t].to_vec();
    let reached = orbit_closure(start, gens, |g, s| image_of_set(g, s));
    Ok(reached.len() as u128 == total)
}

/// Whether `group` is transitive on the unordered `t`-subsets of `domain`.
pub fn is_t_homogeneous(group: &GeneratedGroup, domain: &[usize], t: usize) -> Result<bool> {
    homogeneous_under(&group.generators, domain, t)
}

/// Orbits of the generators on `t`-subsets of `domain`, each orbit a sorted
/// list of sorted subsets.
pub fn subset_orbits(gens: &[Permutation], domain: &[usize], t: usize) -> Vec<Vec<Vec<usize>>> {
    let mut sorted = domain.to_vec();
    sorted.sort_unstable();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut out = Vec::new();
    for s in subsets(&sorted, t) {
        if seen.contains(&s) {
            continue;
        }
        let mut orbit = orbit_closure(s, gens, |g, x| image_of_set(g, x));
        orbit.sort();
        seen.extend(orbit.iter().cloned());
        out.push(orbit);
    }
    out
}
