//! Enumeration of binary equidistant families of size exactly `n`, one
//! representative per isometry class.

use std::collections::BTreeSet;

use super::decode;
use crate::error::{Error, Result};
use crate::family::Family;

/// Largest `n` accepted by [`enumerate_extremal`].
pub const MAX_EXTREMAL_N: usize = 6;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Words as bit masks with coordinate 0 in the most significant position,
/// matching lexicographic order.
fn permute_mask(mask: u32, n: usize, perm: &[usize]) -> u32 {
    (0..n).fold(0, |acc, i| {
        let bit = mask >> (n - 1 - i) & 1;
        acc | bit << (n - 1 - perm[i])
    })
}

/// Lexicographically least image of `family` under the hyperoctahedral
/// group. The least image contains the zero word, so only translations by
/// members need to be tried.
fn canonical_form(family: &[u32], n: usize, perms: &[Vec<usize>]) -> Vec<u32> {
    let mut best: Option<Vec<u32>> = None;
    for &t in family {
        let shifted: Vec<u32> = family.iter().map(|&w| w ^ t).collect();
        for perm in perms {
            let mut image: Vec<u32> = shifted.iter().map(|&w| permute_mask(w, n, perm)).collect();
            image.sort_unstable();
            if best.as_ref().is_none_or(|b| image < *b) {
                best = Some(image);
            }
        }
    }
    best.unwrap_or_default()
}

fn extend_cliques(
    adjacent: &dyn Fn(u32, u32) -> bool,
    candidates: &[u32],
    chosen: &mut Vec<u32>,
    need: usize,
    out: &mut Vec<Vec<u32>>,
) {
    if need == 0 {
        out.push(chosen.clone());
        return;
    }
    for (i, &v) in candidates.iter().enumerate() {
        if candidates.len() - i < need {
            break;
        }
        let rest: Vec<u32> = candidates[i + 1..]
            .iter()
            .copied()
            .filter(|&u| adjacent(u, v))
            .collect();
        chosen.push(v);
        extend_cliques(adjacent, &rest, chosen, need - 1, out);
        chosen.pop();
    }
}

/// All families of `n` subsets of `[n]` with pairwise distance `λ`, up to
/// isometry, each given by its lexicographically least representative.
/// Empty when no such family exists.
pub fn enumerate_extremal(n: usize, lambda: usize) -> Result<Vec<Family>> {
    if n == 0 || n > MAX_EXTREMAL_N {
        return Err(Error::Resource(format!(
            "extremal enumeration supports 1 <= n <= {MAX_EXTREMAL_N}, got {n}"
        )));
    }
    if lambda == 0 || lambda > n {
        return Err(Error::invalid(format!(
            "need 1 <= lambda <= n, got lambda = {lambda}, n = {n}"
        )));
    }
    if 2 * lambda == n + 1 {
        return Err(Error::invalid(format!(
            "λ = {lambda} is the excluded distance (n+1)/2 where m = n+1 is possible; \
             use the maximum search instead"
        )));
    }

    let distance = |a: u32, b: u32| (a ^ b).count_ones() as usize;
    let adjacent = |a: u32, b: u32| distance(a, b) == lambda;
    // Every class has a member pair mapping to 0 and 0^(n-λ)1^λ.
    let second: u32 = (1 << lambda) - 1;
    let common: Vec<u32> = (0..1u32 << n)
        .filter(|&w| distance(w, 0) == lambda && distance(w, second) == lambda)
        .collect();

    let mut cliques = Vec::new();
    if n >= 2 {
        extend_cliques(&adjacent, &common, &mut vec![0, second], n - 2, &mut cliques);
    }

    let perms = permutations(n);
    let classes: BTreeSet<Vec<u32>> = cliques
        .iter()
        .map(|c| canonical_form(c, n, &perms))
        .collect();
    classes
        .into_iter()
        .map(|c| {
            let members = c.into_iter().map(|w| decode(w as usize, n, 2)).collect();
            Family::new(n, 2, members)
        })
        .collect()
}
