use std::collections::{HashMap, HashSet};

use crate::error::{domain, Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

/// Parameters of a Veronese-type ideal `I_{n,d,a}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VeroneseSpec {
    pub n: usize,
    pub d: u32,
    pub caps: Vec<u32>,
}

impl VeroneseSpec {
    pub fn squarefree(n: usize, d: u32) -> Self {
        VeroneseSpec { n, d, caps: vec![1; n] }
    }
}

/// All degree-`d` monomials with `b <= caps`.
pub fn veronese_type(spec: &VeroneseSpec) -> Result<MonomialIdeal> {
    if spec.caps.len() != spec.n {
        return Err(Error::Structural(format!("{} caps for n = {}", spec.caps.len(), spec.n)));
    }
    let mut gens = Vec::new();
    let mut cur = vec![0u32; spec.n];
    capped_vectors(0, spec.d, &spec.caps, &mut cur, &mut gens);
    MonomialIdeal::new(spec.n, gens)
}

fn capped_vectors(i: usize, left: u32, caps: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if i == caps.len() {
        if left == 0 {
            out.push(Monomial::new(cur.clone()));
        }
        return;
    }
    let rest: u32 = caps[i + 1..].iter().sum();
    for e in (0..=caps[i].min(left)).rev() {
        if left - e > rest {
            break;
        }
        cur[i] = e;
        capped_vectors(i + 1, left - e, caps, cur, out);
    }
    cur[i] = 0;
}

/// The squarefree Veronese ideal `I_{n,d}`.
pub fn veronese(n: usize, d: u32) -> MonomialIdeal {
    veronese_type(&VeroneseSpec::squarefree(n, d)).expect("caps match")
}

/// `B(u)` for `u = x_{i_1} ... x_{i_d}`, given 0-based indices.
pub fn principal_borel(n: usize, indices: &[usize]) -> Result<MonomialIdeal> {
    let mut idx = indices.to_vec();
    idx.sort_unstable();
    if idx.iter().any(|&i| i >= n) {
        return domain(format!("Borel generator index out of range for n = {n}"));
    }
    let mut gens = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(pos: usize, lo: usize, idx: &[usize], cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos == idx.len() {
            out.push(Monomial::new(cur.clone()));
            return;
        }
        for j in lo..=idx[pos] {
            cur[j] += 1;
            rec(pos + 1, j, idx, cur, out);
            cur[j] -= 1;
        }
    }
    rec(0, 0, &idx, &mut cur, &mut gens);
    MonomialIdeal::new(n, gens)
}

/// `P_{A_1} ... P_{A_t}`, 0-based supports.
pub fn transversal(n: usize, supports: &[Vec<usize>]) -> Result<MonomialIdeal> {
    if supports.is_empty() {
        return domain("a transversal ideal needs at least one factor");
    }
    let mut acc = MonomialIdeal::unit(n);
    for s in supports {
        if s.is_empty() {
            return domain("transversal factors need nonempty supports");
        }
        if s.iter().any(|&i| i >= n) {
            return domain(format!("support {s:?} exceeds n = {n}"));
        }
        acc = acc.multiply(&MonomialIdeal::prime(n, s))?;
    }
    Ok(acc)
}

/// `(P_{A_1} ... P_{A_t})^{<=1}`.
pub fn matching_matroidal(n: usize, supports: &[Vec<usize>]) -> Result<MonomialIdeal> {
    Ok(transversal(n, supports)?.squarefree_part())
}

type Exps<'a> = HashSet<&'a [u32]>;

fn exps_set(ideal: &MonomialIdeal) -> Exps<'_> {
    ideal.gens().iter().map(|g| g.exps()).collect()
}

fn moved(u: &[u32], out: usize, into: usize) -> Vec<u32> {
    let mut w = u.to_vec();
    w[out] -= 1;
    w[into] += 1;
    w
}

/// Exchange property: for `u, v` and `i` with `u_i > v_i` some `j` with
/// `u_j < v_j` has `x_j u / x_i` in `G(I)`.
pub fn is_polymatroidal(ideal: &MonomialIdeal) -> bool {
    if ideal.is_zero() || !ideal.is_equigenerated() {
        return false;
    }
    let set = exps_set(ideal);
    let n = ideal.n();
    ideal.gens().iter().all(|u| {
        ideal.gens().iter().all(|v| {
            let (u, v) = (u.exps(), v.exps());
            (0..n)
                .filter(|&i| u[i] > v[i])
                .all(|i| (0..n).any(|j| u[j] < v[j] && set.contains(moved(u, i, j).as_slice())))
        })
    })
}

pub fn is_matroidal(ideal: &MonomialIdeal) -> bool {
    ideal.is_squarefree() && is_polymatroidal(ideal)
}

/// Dual exchange: for `u_i < v_i` some `j` with `u_j > v_j` has
/// `x_i u / x_j` in `G(I)`.
pub fn has_dual_exchange(ideal: &MonomialIdeal) -> bool {
    if ideal.is_zero() || !ideal.is_equigenerated() {
        return false;
    }
    let set = exps_set(ideal);
    let n = ideal.n();
    ideal.gens().iter().all(|u| {
        ideal.gens().iter().all(|v| {
            let (u, v) = (u.exps(), v.exps());
            (0..n)
                .filter(|&i| u[i] < v[i])
                .all(|i| (0..n).any(|j| u[j] > v[j] && set.contains(moved(u, j, i).as_slice())))
        })
    })
}

/// Every admissible `(u, v, i, j)` exchange lands in `G(I)`.
pub fn has_strong_exchange(ideal: &MonomialIdeal) -> Result<bool> {
    if ideal.is_zero() {
        return domain("strong exchange needs a nonzero ideal");
    }
    if !ideal.is_equigenerated() {
        return domain("strong exchange needs an equigenerated ideal");
    }
    let set = exps_set(ideal);
    let n = ideal.n();
    Ok(ideal.gens().iter().all(|u| {
        ideal.gens().iter().all(|v| {
            let (u, v) = (u.exps(), v.exps());
            (0..n)
                .filter(|&i| u[i] > v[i])
                .all(|i| (0..n).filter(|&j| u[j] < v[j]).all(|j| set.contains(moved(u, i, j).as_slice())))
        })
    }))
}

/// The forced split `I = x_i I_1 + I_2` with `x_i` not dividing `G(I_2)`.
pub fn split_at(ideal: &MonomialIdeal, i: usize) -> (MonomialIdeal, MonomialIdeal) {
    let n = ideal.n();
    let xi = Monomial::var(n, i);
    let (with, without): (Vec<&Monomial>, Vec<&Monomial>) = ideal.gens().iter().partition(|g| g.exps()[i] > 0);
    let i1 = MonomialIdeal::new(n, with.into_iter().map(|g| g.div(&xi).expect("divisible")).collect())
        .expect("lengths match");
    let i2 = MonomialIdeal::new(n, without.into_iter().cloned().collect()).expect("lengths match");
    (i1, i2)
}

/// Splitting of a polymatroidal ideal at a support variable; both parts are
/// polymatroidal and `I_2 ⊆ I_1`.
pub fn split_polymatroidal(ideal: &MonomialIdeal, i: usize) -> Result<(MonomialIdeal, MonomialIdeal)> {
    if !is_polymatroidal(ideal) {
        return domain("split_polymatroidal needs a polymatroidal ideal");
    }
    if ideal.alpha().unwrap_or(0) < 2 {
        return domain("split_polymatroidal needs generators of degree at least 2");
    }
    if i >= ideal.n() || !ideal.support().contains(&i) {
        return domain(format!("x{} is not in the support", i + 1));
    }
    let (i1, i2) = split_at(ideal, i);
    if !i1.contains_ideal(&i2) {
        return domain("split parts violate I_2 ⊆ I_1");
    }
    if !is_polymatroidal(&i1) || !(i2.is_zero() || is_polymatroidal(&i2)) {
        return domain("split parts are not polymatroidal");
    }
    Ok((i1, i2))
}

pub fn is_vertex_splittable(ideal: &MonomialIdeal) -> bool {
    let mut memo = HashMap::new();
    vertex_splittable(ideal, &mut memo)
}

fn vertex_splittable(ideal: &MonomialIdeal, memo: &mut HashMap<MonomialIdeal, bool>) -> bool {
    if ideal.is_zero() || ideal.is_unit() || ideal.is_principal() {
        return true;
    }
    if let Some(&b) = memo.get(ideal) {
        return b;
    }
    let mut result = false;
    for i in ideal.support() {
        let (i1, i2) = split_at(ideal, i);
        if i1.contains_ideal(&i2) && vertex_splittable(&i1, memo) && vertex_splittable(&i2, memo) {
            result = true;
            break;
        }
    }
    memo.insert(ideal.clone(), result);
    result
}

/// Largest ambient count accepted by the exhaustive enumerators.
pub const ENUMERATION_MAX_N: usize = 5;

/// All matroidal ideals in `n <= 5` variables generated in degree `d`,
/// ordered by generator count and then by generator list.
pub fn enumerate_matroidal(n: usize, d: u32) -> Result<Vec<MonomialIdeal>> {
    if n > ENUMERATION_MAX_N {
        return domain(format!("matroidal enumeration is capped at n = {ENUMERATION_MAX_N}"));
    }
    if d == 0 || d as usize > n {
        return Ok(Vec::new());
    }
    let candidates = veronese(n, d).gens().to_vec();
    enumerate_exchange_closed(n, &candidates)
}

/// All polymatroidal ideals in `n` variables generated in degree `d` with
/// every exponent at most `cap`.
pub fn enumerate_polymatroidal(n: usize, d: u32, cap: u32) -> Result<Vec<MonomialIdeal>> {
    if d == 0 {
        return Ok(Vec::new());
    }
    let candidates = veronese_type(&VeroneseSpec { n, d, caps: vec![cap; n] })?.gens().to_vec();
    enumerate_exchange_closed(n, &candidates)
}

const MAX_CANDIDATES: usize = 22;

fn enumerate_exchange_closed(n: usize, candidates: &[Monomial]) -> Result<Vec<MonomialIdeal>> {
    if candidates.len() > MAX_CANDIDATES {
        return Err(Error::Resource(format!(
            "{} candidate monomials exceed the enumeration cap of {MAX_CANDIDATES}",
            candidates.len()
        )));
    }
    let total = 1u64 << candidates.len();
    let masks: Vec<u64> = (1..total).collect();
    let found = crate::par::map(&masks, |&mask| {
        let gens: Vec<Monomial> =
            candidates.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, m)| m.clone()).collect();
        let ideal = MonomialIdeal::new(n, gens).expect("lengths match");
        is_polymatroidal(&ideal).then_some(ideal)
    });
    let mut out: Vec<MonomialIdeal> = found.into_iter().flatten().collect();
    out.sort_by(|a, b| a.num_gens().cmp(&b.num_gens()).then_with(|| a.gens().cmp(b.gens())));
    Ok(out)
}
