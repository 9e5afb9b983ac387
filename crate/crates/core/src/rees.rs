//! Generators of the symbolic Rees algebra as indecomposable covers of the
//! weighted complex attached to an ideal of minimal intersection type.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;
use crate::par;
use crate::primes::is_minimal_intersection_type;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightedComplex {
    pub n: usize,
    pub facets: Vec<Vec<usize>>,
    pub weights: Vec<u32>,
}

impl WeightedComplex {
    pub fn new(n: usize, facets: Vec<Vec<usize>>, weights: Vec<u32>) -> Result<Self> {
        if facets.len() != weights.len() || facets.is_empty() {
            return Err(Error::Structural("one positive weight per facet is required".into()));
        }
        if weights.contains(&0) || facets.iter().any(|f| f.is_empty() || f.iter().any(|&i| i >= n)) {
            return domain("facets must be nonempty subsets of the vertices with positive weights");
        }
        for (a, f) in facets.iter().enumerate() {
            for (b, g) in facets.iter().enumerate() {
                if a != b && f.iter().all(|i| g.contains(i)) {
                    return domain("facets must form an antichain");
                }
            }
        }
        Ok(WeightedComplex { n, facets, weights })
    }

    pub fn max_weight(&self) -> u32 {
        self.weights.iter().copied().max().unwrap_or(0)
    }

    /// `sum_{i in F} a_i >= k w(F)` for every facet.
    pub fn is_cover(&self, a: &[u32], k: u32) -> bool {
        self.facets
            .iter()
            .zip(&self.weights)
            .all(|(f, &w)| f.iter().map(|&i| a[i] as u64).sum::<u64>() >= k as u64 * w as u64)
    }

    /// A `k`-cover from which no coordinate can be lowered.
    pub fn is_minimal_cover(&self, a: &[u32], k: u32) -> bool {
        if !self.is_cover(a, k) {
            return false;
        }
        let mut b = a.to_vec();
        (0..a.len()).all(|i| {
            if b[i] == 0 {
                return true;
            }
            b[i] -= 1;
            let still = self.is_cover(&b, k);
            b[i] += 1;
            !still
        })
    }
}

/// `a` is a `k`-cover.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Cover {
    pub a: Vec<u32>,
    pub k: u32,
}

impl Cover {
    pub fn size(&self) -> u32 {
        self.a.iter().sum()
    }
}

/// Facets are the supports of the primes of a minimal intersection
/// decomposition, weighted by the exponents.
pub fn weighted_complex(ideal: &MonomialIdeal) -> Result<WeightedComplex> {
    let fit = match ideal.is_proper_nonzero() {
        true => is_minimal_intersection_type(ideal)?,
        false => None,
    };
    let Some(fit) = fit else {
        return domain("the ideal is not of minimal intersection type");
    };
    let facets = fit.iter().map(|(p, _)| p.support().to_vec()).collect();
    let weights = fit.iter().map(|(_, k)| *k).collect();
    WeightedComplex::new(ideal.n(), facets, weights)
}

pub const DEFAULT_CANDIDATE_CAP: usize = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverList {
    /// Indecomposable covers of order `1..=k_max`, by order, then
    /// lexicographically largest first.
    pub covers: Vec<Cover>,
    pub k_max: u32,
    /// No indecomposable cover of order `k_max + 1` exists. This is evidence
    /// of completeness, not a proof.
    pub stable: bool,
}

fn candidates(w: &WeightedComplex, k: u32, cap: usize) -> Result<Vec<Vec<u32>>> {
    let n = w.n;
    let active: Vec<usize> = (0..n).filter(|i| w.facets.iter().any(|f| f.contains(i))).collect();
    let top = k * w.max_weight();
    let side = top as usize + 1;
    let mut size: usize = 1;
    for _ in &active {
        size = size
            .checked_mul(side)
            .filter(|&s| s <= cap)
            .ok_or_else(|| Error::Resource(format!("cover candidate box at order {k} exceeds the cap {cap}")))?;
    }
    let found = par::map_range(size, |mut idx| {
        let mut a = vec![0u32; n];
        for &i in active.iter().rev() {
            a[i] = (idx % side) as u32;
            idx /= side;
        }
        w.is_minimal_cover(&a, k).then_some(a)
    });
    Ok(found.into_iter().flatten().collect())
}

/// `a` splits as a lower-order indecomposable plus a cover of the remaining
/// order. Checking indecomposables of order `1..k` suffices: a minimal
/// decomposable piece can itself be split until an indecomposable appears.
fn decomposes(w: &WeightedComplex, a: &[u32], k: u32, lower: &[Cover]) -> bool {
    lower.iter().any(|c| {
        c.k < k
            && c.a.iter().zip(a).all(|(x, y)| x <= y)
            && w.is_cover(&a.iter().zip(&c.a).map(|(y, x)| y - x).collect::<Vec<_>>(), k - c.k)
    })
}

pub fn indecomposable_covers(w: &WeightedComplex, k_max: u32, cap: usize) -> Result<CoverList> {
    if k_max == 0 {
        return domain("k_max must be positive");
    }
    let mut covers: Vec<Cover> = Vec::new();
    let mut stable = false;
    for k in 1..=k_max + 1 {
        let mut fresh: Vec<Cover> = candidates(w, k, cap)?
            .into_iter()
            .filter(|a| !decomposes(w, a, k, &covers))
            .map(|a| Cover { a, k })
            .collect();
        fresh.sort_by(|x, y| y.a.cmp(&x.a));
        if k == k_max + 1 {
            stable = fresh.is_empty();
        } else {
            covers.extend(fresh);
        }
    }
    Ok(CoverList { covers, k_max, stable })
}

/// `(p, u) > (q, v)` iff `p > q`, or `p = q` and `u >_lex v`.
pub fn order_y(a: &(Monomial, u32), b: &(Monomial, u32)) -> Ordering {
    a.1.cmp(&b.1).then_with(|| a.0.lex_cmp(&b.0))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReesGenerators {
    /// `(u, q)` for the generators `u t^q`, largest first in the `y` order.
    pub gens: Vec<(Monomial, u32)>,
    pub k_max: u32,
    pub stable: bool,
}

pub fn rees_generators(ideal: &MonomialIdeal, k_max: u32) -> Result<ReesGenerators> {
    let w = weighted_complex(ideal)?;
    let list = indecomposable_covers(&w, k_max, DEFAULT_CANDIDATE_CAP)?;
    let mut gens: Vec<(Monomial, u32)> = list.covers.into_iter().map(|c| (Monomial::new(c.a), c.k)).collect();
    gens.sort_by(|a, b| order_y(b, a));
    Ok(ReesGenerators { gens, k_max, stable: list.stable })
}

/// `d(I,k) = max sum c_s deg(u_s)` subject to `sum c_s q_s <= k`.
pub fn d_of_k(ideal: &MonomialIdeal, k: u32, k_max: u32) -> Result<u32> {
    if k > k_max {
        return domain(format!("d(I,{k}) needs generators up to order {k}, but k_max = {k_max}"));
    }
    let gens = rees_generators(ideal, k_max)?.gens;
    Ok(knapsack(&gens, k))
}

pub fn knapsack(gens: &[(Monomial, u32)], k: u32) -> u32 {
    let k = k as usize;
    let mut best = vec![0u32; k + 1];
    for b in 1..=k {
        best[b] = best[b - 1];
        for (u, q) in gens {
            let q = *q as usize;
            if q >= 1 && q <= b {
                best[b] = best[b].max(best[b - q] + u.degree());
            }
        }
    }
    best[k]
}

/// `(c, d)` with `|a| = c k + d` for every indecomposable `k`-cover up to
/// `k_max`, with `c, d` nonnegative integers. When only one order occurs the
/// slope is taken to be 1.
pub fn linear_cover_function(ideal: &MonomialIdeal, k_max: u32) -> Result<Option<(u32, u32)>> {
    let w = weighted_complex(ideal)?;
    let list = indecomposable_covers(&w, k_max, DEFAULT_CANDIDATE_CAP)?;
    Ok(fit_linear(&list.covers))
}

pub fn fit_linear(covers: &[Cover]) -> Option<(u32, u32)> {
    let first = covers.first()?;
    let other = covers.iter().find(|c| c.k != first.k);
    let (c, d) = match other {
        None => (1i64, first.size() as i64 - first.k as i64),
        Some(o) => {
            let dk = o.k as i64 - first.k as i64;
            let ds = o.size() as i64 - first.size() as i64;
            if ds % dk != 0 {
                return None;
            }
            let c = ds / dk;
            (c, first.size() as i64 - c * first.k as i64)
        }
    };
    if c < 0 || d < 0 {
        return None;
    }
    covers.iter().all(|cv| cv.size() as i64 == c * cv.k as i64 + d).then_some((c as u32, d as u32))
}
