use std::collections::{BTreeMap, HashSet};

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{domain, Error, Result};
use crate::families::is_polymatroidal;
use crate::grid::Grid;
use crate::ideal::MonomialIdeal;
use crate::linalg::{rank, Characteristic};
use crate::monomial::Monomial;
use crate::par;

pub const DEFAULT_CELL_CAP: usize = 1 << 24;
pub const DEFAULT_NODE_BUDGET: u64 = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BettiOptions {
    pub characteristic: Characteristic,
    /// Largest multidegree box that will be scanned.
    pub cell_cap: usize,
}

impl Default for BettiOptions {
    fn default() -> Self {
        BettiOptions { characteristic: Characteristic::default(), cell_cap: DEFAULT_CELL_CAP }
    }
}

/// Multigraded Betti numbers `beta_{i,a}` of a monomial ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub characteristic: Characteristic,
    pub entries: BTreeMap<(usize, Vec<u32>), u64>,
}

impl BettiTable {
    /// `beta_{i,j}` summed over multidegrees of total degree `j`.
    pub fn coarse(&self) -> BTreeMap<(usize, u32), u64> {
        let mut out = BTreeMap::new();
        for ((i, a), &b) in &self.entries {
            *out.entry((*i, a.iter().sum())).or_insert(0) += b;
        }
        out
    }

    pub fn regularity(&self) -> u32 {
        self.entries.keys().map(|(i, a)| a.iter().sum::<u32>() - *i as u32).max().unwrap_or(0)
    }

    pub fn projective_dimension(&self) -> usize {
        self.entries.keys().map(|(i, _)| *i).max().unwrap_or(0)
    }

    /// Every nonzero `beta_{i,j}` has `j = d + i`.
    pub fn is_linear(&self, d: u32) -> bool {
        self.coarse().keys().all(|&(i, j)| j == d + i as u32)
    }

    /// Dense matrix `betti[i][j]` over total degrees `0..=max j`.
    pub fn to_json(&self) -> Value {
        let coarse = self.coarse();
        let max_i = self.projective_dimension();
        let max_j = coarse.keys().map(|&(_, j)| j).max().unwrap_or(0);
        let rows: Vec<Vec<u64>> =
            (0..=max_i).map(|i| (0..=max_j).map(|j| coarse.get(&(i, j)).copied().unwrap_or(0)).collect()).collect();
        json!({
            "characteristic": self.characteristic.as_u32(),
            "regularity": self.regularity(),
            "betti": rows,
        })
    }
}

/// Betti numbers through the upper Koszul complexes
/// `K^a = {F ⊆ supp a : x^{a-F} in I}`, `beta_{i,a} = dim H~_{i-1}(K^a)`.
///
/// Only `a` below the generator lcm with `x^a` in `I` can contribute, and
/// complexes that are cones over a vertex are skipped.
pub fn betti_table(ideal: &MonomialIdeal, opts: BettiOptions) -> Result<BettiTable> {
    if !ideal.is_proper_nonzero() {
        return domain("Betti numbers need a proper nonzero ideal");
    }
    let bound = ideal.lcm_bound();
    let size = Grid::box_size(&bound, opts.cell_cap)
        .ok_or_else(|| Error::Resource(format!("multidegree box {bound:?} exceeds the cell cap {}", opts.cell_cap)))?;
    let grid = Grid::membership(&bound, ideal.gens());
    const CHUNK: usize = 2048;
    let chunks = size.div_ceil(CHUNK);
    let parts = par::map_range(chunks, |c| {
        let mut found = Vec::new();
        for idx in c * CHUNK..((c + 1) * CHUNK).min(size) {
            if !grid.cells[idx] {
                continue;
            }
            let a = grid.coords(idx);
            for (i, b) in local_betti(&grid, idx, &a, opts.characteristic) {
                found.push(((i, a.clone()), b));
            }
        }
        found
    });
    Ok(BettiTable { characteristic: opts.characteristic, entries: parts.into_iter().flatten().collect() })
}

fn local_betti(grid: &Grid, idx: usize, a: &[u32], ch: Characteristic) -> Vec<(usize, u64)> {
    let supp: Vec<usize> = (0..a.len()).filter(|&i| a[i] > 0).collect();
    let s = supp.len();
    let full = 1usize << s;
    let strides = grid.strides();
    let member: Vec<bool> = (0..full)
        .map(|mask| {
            let off: usize = (0..s).filter(|j| mask >> j & 1 == 1).map(|j| strides[supp[j]]).sum();
            grid.cells[idx - off]
        })
        .collect();
    let is_cone = (0..s).any(|j| (0..full).all(|m| m >> j & 1 == 1 || !member[m] || member[m | 1 << j]));
    if is_cone {
        return Vec::new();
    }
    let mut by_size: Vec<Vec<usize>> = vec![Vec::new(); s + 1];
    let mut pos = vec![0usize; full];
    for m in 0..full {
        if member[m] {
            let k = m.count_ones() as usize;
            pos[m] = by_size[k].len();
            by_size[k].push(m);
        }
    }
    // r[k] = rank of the boundary from size-k faces to size-(k-1) faces
    let mut r = vec![0usize; s + 2];
    for k in 1..=s {
        if by_size[k].is_empty() || by_size[k - 1].is_empty() {
            continue;
        }
        let rows: Vec<Vec<i64>> = by_size[k]
            .iter()
            .map(|&f| {
                let mut row = vec![0i64; by_size[k - 1].len()];
                let mut t = 0;
                for j in 0..s {
                    if f >> j & 1 == 1 {
                        row[pos[f & !(1 << j)]] = if t % 2 == 0 { 1 } else { -1 };
                        t += 1;
                    }
                }
                row
            })
            .collect();
        r[k] = rank(&rows, ch);
    }
    (0..=s)
        .filter_map(|i| {
            let b = by_size[i].len() - r[i] - r[i + 1];
            (b > 0).then_some((i, b as u64))
        })
        .collect()
}

/// `reg I` from the full Betti table.
pub fn regularity_by_betti(ideal: &MonomialIdeal, opts: BettiOptions) -> Result<u32> {
    Ok(betti_table(ideal, opts)?.regularity())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    pub value: u32,
    /// The value came from a linear-quotients witness, not from homology.
    pub shortcut: bool,
}

/// `reg I`; with `shortcut`, an equigenerated ideal with linear quotients
/// gets `alpha(I)` without homology.
pub fn regularity(
    ideal: &MonomialIdeal,
    opts: BettiOptions,
    shortcut: bool,
    node_budget: u64,
) -> Result<RegularityReport> {
    if shortcut && ideal.is_proper_nonzero() && ideal.is_equigenerated() {
        match linear_quotients_order(ideal, None, node_budget) {
            Ok(Some(_)) => {
                return Ok(RegularityReport { value: ideal.alpha().expect("nonzero"), shortcut: true });
            }
            Ok(None) | Err(Error::Resource(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(RegularityReport { value: regularity_by_betti(ideal, opts)?, shortcut: false })
}

/// False for ideals that are not equigenerated.
pub fn has_linear_resolution(ideal: &MonomialIdeal, opts: BettiOptions) -> Result<bool> {
    if ideal.is_zero() || !ideal.is_equigenerated() {
        return Ok(false);
    }
    if ideal.is_unit() || ideal.is_principal() {
        return Ok(true);
    }
    Ok(betti_table(ideal, opts)?.is_linear(ideal.alpha().expect("nonzero")))
}

/// A generator order with linear quotients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientOrder {
    pub order: Vec<Monomial>,
}

/// Whether `(prefix) : (u)` is generated by variables.
fn colon_is_linear(prefix: &[&Monomial], u: &Monomial) -> bool {
    if prefix.is_empty() {
        return true;
    }
    let quotients: Vec<Monomial> = prefix.iter().map(|h| h.colon(u)).collect();
    let n = u.n();
    let mut vars = vec![false; n];
    for q in &quotients {
        if q.degree() == 1 {
            vars[q.exps().iter().position(|&e| e == 1).expect("degree one")] = true;
        }
    }
    quotients.iter().all(|q| (0..n).any(|l| vars[l] && q.exps()[l] > 0))
}

/// First position `j` whose colon `(u_0..u_{j-1}) : (u_j)` is not generated
/// by variables, with that colon ideal.
pub fn first_linear_quotient_failure(order: &[Monomial]) -> Option<(usize, MonomialIdeal)> {
    for j in 1..order.len() {
        let prefix: Vec<&Monomial> = order[..j].iter().collect();
        if !colon_is_linear(&prefix, &order[j]) {
            let n = order[j].n();
            let gens = prefix.iter().map(|h| h.colon(&order[j])).collect();
            return Some((j, MonomialIdeal::new(n, gens).expect("lengths match")));
        }
    }
    None
}

/// `G(I)` sorted lexicographically, largest first, with `priority[0]` the
/// largest variable.
pub fn lex_order(ideal: &MonomialIdeal, priority: &[usize]) -> Vec<Monomial> {
    let mut gens = ideal.gens().to_vec();
    gens.sort_by(|a, b| b.lex_cmp_by(a, priority));
    gens
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn rec(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            rec(k + 1, cur, out);
            cur.swap(k, i);
        }
    }
    rec(0, &mut cur, &mut out);
    out.sort();
    out
}

/// Verifies `fixed` when given; otherwise searches lex orders for every
/// variable ordering, then backtracks over generator prefixes. Exceeding
/// `node_budget` in the backtracking is a resource error.
pub fn linear_quotients_order(
    ideal: &MonomialIdeal,
    fixed: Option<&[Monomial]>,
    node_budget: u64,
) -> Result<Option<QuotientOrder>> {
    if ideal.is_zero() {
        return domain("linear quotients need a nonzero ideal");
    }
    if let Some(order) = fixed {
        let mut sorted = order.to_vec();
        sorted.sort();
        if sorted != ideal.gens() {
            return Err(Error::Structural("the fixed order is not a permutation of G(I)".into()));
        }
        return Ok(first_linear_quotient_failure(order).is_none().then(|| QuotientOrder { order: order.to_vec() }));
    }
    if ideal.n() <= 7 {
        let mut seen = HashSet::new();
        for perm in permutations(ideal.n()) {
            let order = lex_order(ideal, &perm);
            if seen.insert(order.clone()) && first_linear_quotient_failure(&order).is_none() {
                return Ok(Some(QuotientOrder { order }));
            }
        }
    }
    let gens = ideal.gens();
    let mut search = Search { gens, dead: HashSet::new(), nodes: 0, budget: node_budget };
    let mut prefix = Vec::new();
    let used = vec![0u64; gens.len().div_ceil(64)];
    if search.dfs(&mut prefix, used)? {
        let order = prefix.iter().map(|&i| gens[i].clone()).collect();
        return Ok(Some(QuotientOrder { order }));
    }
    Ok(None)
}

struct Search<'a> {
    gens: &'a [Monomial],
    /// Generator sets from which no completion exists. Extendability of a
    /// prefix depends only on its set of generators.
    dead: HashSet<Vec<u64>>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn dfs(&mut self, prefix: &mut Vec<usize>, used: Vec<u64>) -> Result<bool> {
        if prefix.len() == self.gens.len() {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Resource(format!("linear-quotient search exceeded {} nodes", self.budget)));
        }
        let current: Vec<&Monomial> = prefix.iter().map(|&i| &self.gens[i]).collect();
        let candidates: Vec<usize> = (0..self.gens.len())
            .filter(|&c| used[c / 64] >> (c % 64) & 1 == 0 && colon_is_linear(&current, &self.gens[c]))
            .collect();
        for c in candidates {
            let mut next = used.clone();
            next[c / 64] |= 1 << (c % 64);
            if self.dead.contains(&next) {
                continue;
            }
            prefix.push(c);
            if self.dfs(prefix, next.clone())? {
                return Ok(true);
            }
            prefix.pop();
            self.dead.insert(next);
        }
        Ok(false)
    }
}

/// `I_<d>` has a linear resolution for every `alpha(I) <= d <= omega(I)`;
/// higher degrees follow since `I_<d+1> = m I_<d>` there.
pub fn is_componentwise_linear(ideal: &MonomialIdeal, opts: BettiOptions) -> Result<bool> {
    if !ideal.is_proper_nonzero() {
        return domain("componentwise linearity needs a proper nonzero ideal");
    }
    for d in ideal.alpha().expect("nonzero")..=ideal.omega().expect("nonzero") {
        if !has_linear_resolution(&ideal.graded_component(d)?, opts)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `I_<d>` is polymatroidal for every `alpha(I) <= d <= omega(I)`.
pub fn is_componentwise_polymatroidal(ideal: &MonomialIdeal) -> Result<bool> {
    if !ideal.is_proper_nonzero() {
        return domain("componentwise polymatroidality needs a proper nonzero ideal");
    }
    for d in ideal.alpha().expect("nonzero")..=ideal.omega().expect("nonzero") {
        if !is_polymatroidal(&ideal.graded_component(d)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Betti tables over the rationals and over `F_p`, and whether they agree.
pub fn characteristic_cross_check(
    ideal: &MonomialIdeal,
    p: u32,
    cell_cap: usize,
) -> Result<(BettiTable, BettiTable, bool)> {
    let zero = betti_table(ideal, BettiOptions { characteristic: Characteristic::Zero, cell_cap })?;
    let modp = betti_table(ideal, BettiOptions { characteristic: Characteristic::from_u32(p)?, cell_cap })?;
    let agree = zero.entries == modp.entries;
    Ok((zero, modp, agree))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::veronese;
    use crate::format::parse_ideal;
    use crate::symbolic::symbolic_power;

    fn p(text: &str, n: usize) -> MonomialIdeal {
        parse_ideal(text, Some(n)).unwrap()
    }

    const L: &str = "x1^3*x2*x3*x4, x1^2*x2^2*x3^2, x1^2*x2^2*x3*x4, x1^2*x2^2*x4^2, \
        x1^2*x2*x3^2*x4, x1^2*x2*x3*x4^2, x1^2*x3^2*x4^2, x1*x2^3*x3*x4, x1*x2^2*x3^2*x4, \
        x1*x2^2*x3*x4^2, x1*x2*x3^3*x4, x1*x2*x3^2*x4^2, x1*x2*x3*x4^3, x2^2*x3^2*x4^2";

    #[test]
    fn koszul_betti_numbers() {
        let t = betti_table(&p("x1, x2", 2), BettiOptions::default()).unwrap();
        let coarse = t.coarse();
        assert_eq!(coarse.get(&(0, 1)), Some(&2));
        assert_eq!(coarse.get(&(1, 2)), Some(&1));
        assert_eq!(coarse.len(), 2);
        assert_eq!(t.regularity(), 1);
    }

    #[test]
    fn veronese_is_linear() {
        let t = betti_table(&veronese(4, 3), BettiOptions::default()).unwrap();
        assert!(t.is_linear(3));
        assert_eq!(t.regularity(), 3);
        let sq = symbolic_power(&veronese(4, 3), 2).unwrap();
        assert_eq!(regularity_by_betti(&sq, BettiOptions::default()).unwrap(), 6);
    }

    #[test]
    fn regularity_examples() {
        let m2 = MonomialIdeal::maximal(2).power(4).unwrap();
        assert_eq!(regularity_by_betti(&m2, BettiOptions::default()).unwrap(), 4);
        let r = regularity(&m2, BettiOptions::default(), true, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(r, RegularityReport { value: 4, shortcut: true });
        let i53 = symbolic_power(&veronese(5, 3), 2).unwrap();
        assert_eq!(regularity_by_betti(&i53, BettiOptions::default()).unwrap(), 6);
        // complete tripartite graph K_{1,2,2}
        let g = p("x1*x2, x1*x3, x1*x4, x1*x5, x2*x4, x2*x5, x3*x4, x3*x5", 5);
        let g2 = symbolic_power(&g, 2).unwrap();
        assert_eq!(regularity_by_betti(&g2, BettiOptions::default()).unwrap(), 4);
    }

    #[test]
    fn beta_zero_counts_generators() {
        let i = p("x1^2, x1*x2*x3, x2^3, x3^4", 3);
        let t = betti_table(&i, BettiOptions::default()).unwrap();
        let c = t.coarse();
        assert_eq!(c.get(&(0, 2)), Some(&1));
        assert_eq!(c.get(&(0, 3)), Some(&2));
        assert_eq!(c.get(&(0, 4)), Some(&1));
    }

    #[test]
    fn linear_resolution_examples() {
        assert!(has_linear_resolution(&veronese(4, 2), BettiOptions::default()).unwrap());
        assert!(!has_linear_resolution(&p("x1*x2, x3*x4", 4), BettiOptions::default()).unwrap());
        let t = betti_table(&p("x1*x2, x3*x4", 4), BettiOptions::default()).unwrap();
        assert_eq!(t.entries.get(&(1, vec![1, 1, 1, 1])), Some(&1));
        assert!(has_linear_resolution(&p("x1^2*x3", 3), BettiOptions::default()).unwrap());
        assert!(!has_linear_resolution(&p("x1, x2^2", 2), BettiOptions::default()).unwrap());
    }

    #[test]
    fn lex_failure_on_l() {
        let l = p(L, 4);
        assert_eq!(l.num_gens(), 14);
        let order = lex_order(&l, &[0, 1, 2, 3]);
        assert_eq!(order, l.gens().to_vec());
        let (j, colon) = first_linear_quotient_failure(&order).unwrap();
        assert_eq!(j, 1);
        assert_eq!(colon, p("x1*x4", 4));
        assert!(linear_quotients_order(&l, Some(&order), DEFAULT_NODE_BUDGET).unwrap().is_none());
    }

    #[test]
    fn search_finds_witness_on_l() {
        let l = p(L, 4);
        let w = linear_quotients_order(&l, None, DEFAULT_NODE_BUDGET).unwrap().unwrap();
        assert!(first_linear_quotient_failure(&w.order).is_none());
        let mut sorted = w.order.clone();
        sorted.sort();
        assert_eq!(sorted, l.gens());
    }

    #[test]
    fn trivial_and_negative_quotients() {
        assert!(linear_quotients_order(&p("x1, x2", 2), None, 10).unwrap().is_some());
        assert!(linear_quotients_order(&p("x1*x2, x3*x4", 4), None, 1000).unwrap().is_none());
    }

    #[test]
    fn budget_exhaustion_is_a_resource_error() {
        // a long chain of pairwise coprime generators forces backtracking
        let i = p("x1*x2, x3*x4, x5*x6, x7*x8", 8);
        let e = linear_quotients_order(&i, None, 2).unwrap_err();
        assert!(matches!(e, Error::Resource(_)));
    }

    #[test]
    fn componentwise_examples() {
        let sq = symbolic_power(&veronese(4, 3), 2).unwrap();
        assert!(is_componentwise_linear(&sq, BettiOptions::default()).unwrap());
        assert!(!is_componentwise_polymatroidal(&sq).unwrap());
        assert!(!is_componentwise_linear(&p("x1*x2, x3*x4", 4), BettiOptions::default()).unwrap());
        assert!(is_componentwise_polymatroidal(&MonomialIdeal::maximal(3).power(3).unwrap()).unwrap());
        let i42 = symbolic_power(&veronese(4, 2), 2).unwrap();
        assert!(is_componentwise_polymatroidal(&i42).unwrap());
        // one degree past omega is still linear
        let extra = sq.graded_component(7).unwrap();
        assert!(has_linear_resolution(&extra, BettiOptions::default()).unwrap());
    }

    #[test]
    fn characteristics_agree_on_golden_instance() {
        let sq = symbolic_power(&veronese(4, 3), 2).unwrap();
        let (a, b, agree) = characteristic_cross_check(&sq, 32003, DEFAULT_CELL_CAP).unwrap();
        assert!(agree);
        assert_eq!(a.regularity(), b.regularity());
    }

    #[test]
    fn cell_cap_is_a_resource_error() {
        let opts = BettiOptions { cell_cap: 3, ..BettiOptions::default() };
        assert!(matches!(betti_table(&veronese(4, 3), opts), Err(Error::Resource(_))));
    }

    #[test]
    fn dense_json_shape() {
        let t = betti_table(&p("x1, x2", 2), BettiOptions::default()).unwrap();
        assert_eq!(t.to_json(), json!({"characteristic": 32003, "regularity": 1, "betti": [[0, 2, 0], [0, 0, 1]]}));
    }
}
