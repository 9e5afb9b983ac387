//! The defining ideal of a symbolic Rees algebra, its Gröbner basis under
//! the block order on `S[y_1, ..., y_m]`, and the x-condition.
//!
//! Given Rees generators `u_j t^{q_j}`, the map `x_i -> x_i`,
//! `y_j -> u_j t^{q_j}` has a kernel `J` spanned by pure-difference
//! binomials. Monomials of `S[y]` are stored flat as `(x_1..x_n, y_1..y_m)`.

mod groebner;
mod lattice;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;
use crate::rees::{rees_generators, ReesGenerators};

use groebner::{groebner, is_groebner, Key, Pair, TermOrder, WeightedRevlex};

/// Default bound on S-pair reductions per Gröbner run.
pub const DEFAULT_PAIR_CAP: u64 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MixedMonomial {
    pub x: Vec<u32>,
    pub y: Vec<u32>,
}

impl MixedMonomial {
    pub fn new(x: Vec<u32>, y: Vec<u32>) -> Self {
        MixedMonomial { x, y }
    }

    fn from_flat(flat: &[u32], n: usize) -> Self {
        MixedMonomial { x: flat[..n].to_vec(), y: flat[n..].to_vec() }
    }

    fn flat(&self) -> Vec<u32> {
        self.x.iter().chain(&self.y).copied().collect()
    }

    pub fn x_degree(&self) -> u32 {
        self.x.iter().sum()
    }

    pub fn y_degree(&self) -> u32 {
        self.y.iter().sum()
    }

    pub fn degree(&self) -> u32 {
        self.x_degree() + self.y_degree()
    }
}

impl fmt::Display for MixedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .x
            .iter()
            .enumerate()
            .map(|(i, &e)| ('x', i, e))
            .chain(self.y.iter().enumerate().map(|(j, &e)| ('y', j, e)))
            .filter(|t| t.2 > 0)
            .map(|(c, i, e)| if e == 1 { format!("{c}{}", i + 1) } else { format!("{c}{}^{e}", i + 1) })
            .collect();
        if terms.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", terms.join("*"))
        }
    }
}

/// `lead - trail` with `lead` the larger term.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Binomial {
    pub lead: MixedMonomial,
    pub trail: MixedMonomial,
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} - {}", self.lead, self.trail)
    }
}

/// Degree reverse lexicographic on the `y` part (`y_1 > ... > y_m`), ties
/// broken lexicographically on the `x` part (`x_1 > ... > x_n`).
struct BlockOrder {
    n: usize,
}

impl TermOrder for BlockOrder {
    fn key(&self, m: &[u32]) -> Key {
        let (x, y) = m.split_at(self.n);
        let mut k = Vec::with_capacity(m.len() + 1);
        k.push(y.iter().map(|&e| e as i64).sum());
        k.extend(y.iter().rev().map(|&e| -(e as i64)));
        k.extend(x.iter().map(|&e| e as i64));
        k
    }
}

/// `t` first, then the block order on the remaining variables.
struct EliminateT {
    n: usize,
}

impl TermOrder for EliminateT {
    fn key(&self, m: &[u32]) -> Key {
        let (rest, t) = m.split_at(m.len() - 1);
        let mut k = vec![t[0] as i64];
        k.extend(BlockOrder { n: self.n }.key(rest));
        k
    }
}

pub fn order_compare(a: &MixedMonomial, b: &MixedMonomial) -> Ordering {
    let order = BlockOrder { n: a.x.len() };
    order.cmp(&a.flat(), &b.flat())
}

fn check_gens(gens: &[(Monomial, u32)]) -> Result<usize> {
    let Some((u0, _)) = gens.first() else {
        return domain("at least one Rees generator is required");
    };
    let n = u0.n();
    if gens.iter().any(|(u, q)| u.n() != n || *q == 0) {
        return domain("Rees generators must share the ambient ring and have positive order");
    }
    Ok(n)
}

/// Image of a monomial of `S[y]` in `S[t]`, as `(x-part, t-degree)`.
pub fn image(m: &MixedMonomial, gens: &[(Monomial, u32)]) -> (Vec<u64>, u64) {
    let mut x: Vec<u64> = m.x.iter().map(|&e| e as u64).collect();
    let mut t = 0u64;
    for ((u, q), &e) in gens.iter().zip(&m.y) {
        for (xi, &a) in x.iter_mut().zip(u.exps()) {
            *xi += a as u64 * e as u64;
        }
        t += *q as u64 * e as u64;
    }
    (x, t)
}

/// Whether both terms of `b` have the same image.
pub fn maps_to_zero(b: &Binomial, gens: &[(Monomial, u32)]) -> bool {
    image(&b.lead, gens) == image(&b.trail, gens)
}

fn to_binomials(pairs: Vec<Pair>, n: usize) -> Vec<Binomial> {
    pairs
        .into_iter()
        .map(|(l, t)| Binomial { lead: MixedMonomial::from_flat(&l, n), trail: MixedMonomial::from_flat(&t, n) })
        .collect()
}

fn split(v: &[i64]) -> Pair {
    let pos = v.iter().map(|&e| e.max(0) as u32).collect();
    let neg = v.iter().map(|&e| (-e).max(0) as u32).collect();
    (pos, neg)
}

/// Generators of the lattice ideal of `{ (a, b) : a + sum b_j u_j = 0,
/// sum b_j q_j = 0 }` from a lattice basis.
fn lattice_binomials(gens: &[(Monomial, u32)], n: usize) -> Vec<Pair> {
    let q: Vec<i64> = gens.iter().map(|(_, q)| *q as i64).collect();
    lattice::row_kernel(&q)
        .into_iter()
        .map(|b| {
            let mut v = vec![0i64; n];
            for ((u, _), &bj) in gens.iter().zip(&b) {
                for (vi, &a) in v.iter_mut().zip(u.exps()) {
                    *vi -= bj * a as i64;
                }
            }
            v.extend(b);
            split(&v)
        })
        .collect()
}

/// Generators of `J`: the lattice ideal of a kernel basis, saturated by one
/// variable at a time. Saturating by `z` uses a weighted reverse
/// lexicographic basis with `z` last, whose elements are then divided by
/// their largest common power of `z`.
pub fn toric_ideal(gens: &[(Monomial, u32)]) -> Result<Vec<Binomial>> {
    toric_ideal_with(gens, DEFAULT_PAIR_CAP)
}

pub fn toric_ideal_with(gens: &[(Monomial, u32)], pair_cap: u64) -> Result<Vec<Binomial>> {
    let n = check_gens(gens)?;
    let mut weights = vec![1i64; n];
    weights.extend(gens.iter().map(|(u, _)| u.degree() as i64));
    let mut current = lattice_binomials(gens, n);
    for z in 0..weights.len() {
        if current.is_empty() {
            break;
        }
        let order = WeightedRevlex { weights: &weights, last: z };
        current = groebner(current, &order, pair_cap)?
            .into_iter()
            .map(|(mut l, mut t)| {
                let c = l[z].min(t[z]);
                l[z] -= c;
                t[z] -= c;
                (l, t)
            })
            .collect();
    }
    Ok(to_binomials(current, n))
}

/// Reduced Gröbner basis of the binomials under the block order.
pub fn groebner_basis(n: usize, binomials: &[Binomial], pair_cap: u64) -> Result<Vec<Binomial>> {
    let pairs = binomials.iter().map(|b| (b.lead.flat(), b.trail.flat())).collect();
    Ok(to_binomials(groebner(pairs, &BlockOrder { n }, pair_cap)?, n))
}

/// Reduced Gröbner basis of `J` under the block order.
pub fn toric_groebner(gens: &[(Monomial, u32)], pair_cap: u64) -> Result<Vec<Binomial>> {
    let n = check_gens(gens)?;
    groebner_basis(n, &toric_ideal_with(gens, pair_cap)?, pair_cap)
}

/// The same basis computed by eliminating `t` from `(y_j - u_j t^{q_j})`.
pub fn toric_groebner_by_elimination(gens: &[(Monomial, u32)], pair_cap: u64) -> Result<Vec<Binomial>> {
    let n = check_gens(gens)?;
    let m = gens.len();
    let width = n + m + 1;
    let pairs: Vec<Pair> = gens
        .iter()
        .enumerate()
        .map(|(j, (u, q))| {
            let mut y = vec![0u32; width];
            y[n + j] = 1;
            let mut ut = u.exps().to_vec();
            ut.resize(width, 0);
            ut[width - 1] = *q;
            (y, ut)
        })
        .collect();
    let full = groebner(pairs, &EliminateT { n }, pair_cap)?;
    let free: Vec<Pair> = full
        .into_iter()
        .filter(|(l, _)| l[width - 1] == 0)
        .map(|(mut l, mut t)| {
            l.pop();
            t.pop();
            (l, t)
        })
        .collect();
    Ok(to_binomials(groebner(free, &BlockOrder { n }, pair_cap)?, n))
}

/// Whether every S-pair of `basis` reduces to zero under the block order.
pub fn s_pairs_reduce_to_zero(n: usize, basis: &[Binomial]) -> bool {
    let pairs: Vec<Pair> = basis.iter().map(|b| (b.lead.flat(), b.trail.flat())).collect();
    is_groebner(&pairs, &BlockOrder { n })
}

/// Leading terms, as an ideal in the `n + m` variables `x_1..x_n, y_1..y_m`.
pub fn initial_ideal(n: usize, m: usize, basis: &[Binomial]) -> Result<MonomialIdeal> {
    let gens = basis.iter().map(|b| Monomial::new(b.lead.flat())).collect();
    MonomialIdeal::new(n + m, gens)
}

/// Minimal generators of an initial ideal, split back into `x` and `y` parts.
pub fn initial_generators(n: usize, ini: &MonomialIdeal) -> Vec<MixedMonomial> {
    ini.gens().iter().map(|g| MixedMonomial::from_flat(g.exps(), n)).collect()
}

/// `x_i y_j`, `y_j y_k` or `x_i y_j y_k` (with `j = k` allowed).
pub fn has_ini3_shape(m: &MixedMonomial) -> bool {
    matches!((m.x_degree(), m.y_degree()), (1, 1) | (0, 2) | (1, 2))
}

/// Number of basis elements per degree of the leading term.
pub fn degree_profile(basis: &[Binomial]) -> BTreeMap<u32, usize> {
    let mut out = BTreeMap::new();
    for b in basis {
        *out.entry(b.lead.degree()).or_insert(0) += 1;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "witness", rename_all = "lowercase")]
pub enum XCondition {
    Holds,
    Fails(MixedMonomial),
    Incomplete,
}

#[derive(Clone, Debug, Serialize)]
pub struct XConditionReport {
    pub condition: XCondition,
    pub rees: ReesGenerators,
    pub basis: Vec<Binomial>,
    pub initial: Vec<MixedMonomial>,
}

/// Every minimal generator of the initial ideal of `J` has `x`-degree at
/// most one. If the Rees generators were not stable at `k_max` the verdict
/// is `Incomplete`.
pub fn check_x_condition(ideal: &MonomialIdeal, k_max: u32) -> Result<XConditionReport> {
    check_x_condition_with(ideal, k_max, DEFAULT_PAIR_CAP)
}

pub fn check_x_condition_with(ideal: &MonomialIdeal, k_max: u32, pair_cap: u64) -> Result<XConditionReport> {
    let rees = rees_generators(ideal, k_max)?;
    let n = ideal.n();
    let basis = toric_groebner(&rees.gens, pair_cap)?;
    let ini = initial_ideal(n, rees.gens.len(), &basis)?;
    let initial = initial_generators(n, &ini);
    let condition = if !rees.stable {
        XCondition::Incomplete
    } else {
        match initial.iter().find(|g| g.x_degree() > 1) {
            Some(w) => XCondition::Fails(w.clone()),
            None => XCondition::Holds,
        }
    };
    Ok(XConditionReport { condition, rees, basis, initial })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::veronese;
    use crate::format::parse_ideal;

    fn mm(x: &[u32], y: &[u32]) -> MixedMonomial {
        MixedMonomial::new(x.to_vec(), y.to_vec())
    }

    #[test]
    fn order_examples() {
        let a = mm(&[0, 0, 0, 0], &[0, 1, 1, 0, 0]);
        let b = mm(&[0, 0, 0, 1], &[1, 0, 0, 0, 0]);
        assert_eq!(order_compare(&a, &b), Ordering::Greater);
        assert_eq!(order_compare(&a, &a), Ordering::Equal);
        let c = mm(&[1, 0, 0, 0], &[0, 0, 0, 0, 1]);
        let d = mm(&[0, 1, 0, 0], &[0, 0, 0, 0, 1]);
        assert_eq!(order_compare(&c, &d), Ordering::Greater);
        // degrevlex: y1*y3 > y2^2
        assert_eq!(order_compare(&mm(&[], &[1, 0, 1]), &mm(&[], &[0, 2, 0])), Ordering::Less);
        assert_eq!(order_compare(&mm(&[], &[2, 0, 0]), &mm(&[], &[0, 1, 1])), Ordering::Greater);
    }

    #[test]
    fn two_variable_prime() {
        let p = parse_ideal("x1, x2", Some(2)).unwrap();
        let rees = rees_generators(&p, 3).unwrap();
        let gb = toric_groebner(&rees.gens, 1000).unwrap();
        assert_eq!(gb.len(), 1);
        assert_eq!(gb[0].lead, mm(&[0, 1], &[1, 0]));
        assert_eq!(gb[0].trail, mm(&[1, 0], &[0, 1]));
        assert_eq!(groebner_basis(2, &gb, 1000).unwrap(), gb);
    }

    #[test]
    fn single_generator_has_zero_kernel() {
        let gens = vec![(Monomial::new(vec![1, 2]), 3)];
        assert!(toric_ideal(&gens).unwrap().is_empty());
        assert!(initial_ideal(2, 1, &[]).unwrap().is_zero());
    }

    #[test]
    fn veronese_4_3_initial_ideal() {
        let rees = rees_generators(&veronese(4, 3), 3).unwrap();
        let gb = toric_groebner(&rees.gens, DEFAULT_PAIR_CAP).unwrap();
        let ini = initial_ideal(4, 5, &gb).unwrap();
        let text = "x1*x9^2, x2*x8, x3*x7, x4*x6, x6*x7, x6*x8, x6*x9, x7*x8, x7*x9, x8*x9";
        assert_eq!(ini, parse_ideal(text, Some(9)).unwrap());
        assert!(s_pairs_reduce_to_zero(4, &gb));
        assert!(gb.iter().all(|b| maps_to_zero(b, &rees.gens)));
        assert_eq!(gb, toric_groebner_by_elimination(&rees.gens, DEFAULT_PAIR_CAP).unwrap());
    }

    #[test]
    fn x_condition_small_veronese() {
        let r = check_x_condition(&veronese(4, 3), 3).unwrap();
        assert_eq!(r.condition, XCondition::Holds);
        assert!(r.initial.iter().all(has_ini3_shape));
        let r = check_x_condition(&veronese(4, 2), 2).unwrap();
        assert_eq!(r.condition, XCondition::Incomplete);
    }
}
