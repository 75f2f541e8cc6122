//! Binomials, subset enumeration and orbit closure under generators.

use std::collections::HashSet;
use std::hash::Hash;

use crate::perm::Permutation;

/// `C(n, r)`, zero when `r > n`. Saturates at `u128::MAX`.
pub fn binomial(n: u64, r: u64) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// All `r`-subsets of `items`, each in the order of `items`, in
/// lexicographic order of positions.
pub fn subsets<T: Copy>(items: &[T], r: usize) -> Vec<Vec<T>> {
    let n = items.len();
    if r > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        let Some(pos) = (0..r).rev().find(|&i| idx[i] != i + n - r) else {
            break;
        };
        idx[pos] += 1;
        for j in pos + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

/// Breadth-first orbit of `start` under the action `act` of `gens`.
/// The first element of the result is `start`.
pub fn orbit_closure<T, F>(start: T, gens: &[Permutation], act: F) -> Vec<T>
where
    T: Clone + Eq + Hash,
    F: Fn(&Permutation, &T) -> T,
{
    let mut seen: HashSet<T> = HashSet::new();
    seen.insert(start.clone());
    let mut orbit = vec![start];
    let mut i = 0;
    while i < orbit.len() {
        for g in gens {
            let image = act(g, &orbit[i]);
            if seen.insert(image.clone()) {
                orbit.push(image);
            }
        }
        i += 1;
    }
    orbit
}

/// Image of a sorted point set, sorted again.
pub fn image_of_set(g: &Permutation, set: &[usize]) -> Vec<usize> {
    let mut image: Vec<usize> = set.iter().map(|&p| g.apply(p)).collect();
    image.sort_unstable();
    image
}
