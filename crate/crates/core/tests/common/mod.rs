#![allow(dead_code)]

use monideal::ideal::monomials_of_degree;
use monideal::primes::is_minimal_intersection_type;
use monideal::rees::{indecomposable_covers, weighted_complex, Cover, WeightedComplex, DEFAULT_CANDIDATE_CAP};
use monideal::symbolic::{symbolic_power, symbolic_power_with, SymbolicOptions};
use monideal::toric::{maps_to_zero, s_pairs_reduce_to_zero, toric_groebner, toric_groebner_by_elimination};
use monideal::{Monomial, MonomialIdeal};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<(), String>;

pub const NAIVE: SymbolicOptions = SymbolicOptions { naive: true };

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ideal(text: &str, n: usize) -> MonomialIdeal {
    monideal::format::parse_ideal(text, Some(n)).unwrap()
}

pub fn random_monomial(rng: &mut impl Rng, n: usize, max_exp: u32) -> Monomial {
    Monomial::new((0..n).map(|_| rng.gen_range(0..=max_exp)).collect())
}

/// A proper nonzero ideal with at most `max_gens` generators.
pub fn random_ideal(rng: &mut impl Rng, n: usize, max_gens: usize, max_exp: u32) -> MonomialIdeal {
    loop {
        let count = rng.gen_range(1..=max_gens);
        let gens = (0..count).map(|_| random_monomial(rng, n, max_exp)).collect();
        let i = MonomialIdeal::new(n, gens).unwrap();
        if i.is_proper_nonzero() {
            return i;
        }
    }
}

pub fn random_squarefree(rng: &mut impl Rng, n: usize, max_gens: usize) -> MonomialIdeal {
    random_ideal(rng, n, max_gens, 1)
}

/// All monomials in `n` variables of degree at most `d`.
pub fn box_monomials(n: usize, d: u32) -> Vec<Monomial> {
    (0..=d).flat_map(|e| monomials_of_degree(n, e)).collect()
}

/// Moves `j` onto variables `n_i .. n_i + n_j` and `i` onto `0 .. n_i`.
pub fn side_by_side(i: &MonomialIdeal, j: &MonomialIdeal) -> (MonomialIdeal, MonomialIdeal) {
    let n = i.n() + j.n();
    let left = i.gens().iter().map(|g| {
        let mut e = g.exps().to_vec();
        e.resize(n, 0);
        Monomial::new(e)
    });
    let right = j.gens().iter().map(|g| {
        let mut e = vec![0; i.n()];
        e.extend_from_slice(g.exps());
        Monomial::new(e)
    });
    (MonomialIdeal::new(n, left.collect()).unwrap(), MonomialIdeal::new(n, right.collect()).unwrap())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: monideal::Error) -> String {
    e.to_string()
}

/// `I^(1) = I`, `I^k` inside `I^(k)`, and `I^(a) I^(b)` inside `I^(a+b)`.
pub fn check_symbolic_basics(i: &MonomialIdeal, k_max: u32) -> Check {
    let powers: Vec<MonomialIdeal> =
        (1..=k_max).map(|k| symbolic_power(i, k)).collect::<Result<_, _>>().map_err(err)?;
    ensure(powers[0] == *i, || format!("I^(1) != I for {i}"))?;
    for k in 1..=k_max {
        let ord = i.power(k).map_err(err)?;
        ensure(powers[k as usize - 1].contains_ideal(&ord), || format!("I^{k} not in I^({k}) for {i}"))?;
    }
    for a in 1..k_max {
        for b in 1..=k_max - a {
            let prod = powers[a as usize - 1].multiply(&powers[b as usize - 1]).map_err(err)?;
            ensure(powers[(a + b) as usize - 1].contains_ideal(&prod), || {
                format!("I^({a}) I^({b}) not in I^({}) for {i}", a + b)
            })?;
        }
    }
    Ok(())
}

/// `(uI)^(k) = u^k I^(k)`, the left side by the definition.
pub fn check_scaling(i: &MonomialIdeal, u: &Monomial, k: u32) -> Check {
    let lhs = symbolic_power_with(&i.scale(u).map_err(err)?, k, NAIVE).map_err(err)?;
    let rhs = symbolic_power(i, k).map_err(err)?.scale(&u.pow(k).map_err(err)?).map_err(err)?;
    ensure(lhs == rhs, || format!("scaling law fails for u = {u}, I = {i}, k = {k}"))
}

/// `(IJ)^(k) = I^(k) J^(k)` for `I`, `J` in disjoint variables.
pub fn check_disjoint_product(i: &MonomialIdeal, j: &MonomialIdeal, k: u32) -> Check {
    let (a, b) = side_by_side(i, j);
    let lhs = symbolic_power_with(&a.multiply(&b).map_err(err)?, k, NAIVE).map_err(err)?;
    let rhs =
        symbolic_power_with(&a, k, NAIVE).and_then(|x| x.multiply(&symbolic_power_with(&b, k, NAIVE)?)).map_err(err)?;
    ensure(lhs == rhs, || format!("product law fails for {a} times {b}, k = {k}"))
}

/// For minimal intersection type: `u^k` in `G(I^(k))` and
/// `omega(I^(k)) >= omega(I) k`.
pub fn check_lifting(i: &MonomialIdeal, k: u32) -> Check {
    if is_minimal_intersection_type(i).map_err(err)?.is_none() {
        return Ok(());
    }
    let sym = symbolic_power(i, k).map_err(err)?;
    for u in i.gens() {
        let uk = u.pow(k).map_err(err)?;
        ensure(sym.gens().contains(&uk), || format!("{uk} is not a minimal generator of ({i})^({k})"))?;
    }
    ensure(sym.omega() >= i.omega().map(|w| w * k), || format!("omega bound fails for {i}"))
}

/// Intersection and colon against pointwise membership over a box.
pub fn check_membership(i: &MonomialIdeal, j: &MonomialIdeal, u: &Monomial, d: u32) -> Check {
    let meet = i.intersect(j).map_err(err)?;
    let colon = i.colon(u).map_err(err)?;
    for m in box_monomials(i.n(), d) {
        ensure(meet.contains(&m) == (i.contains(&m) && j.contains(&m)), || format!("intersection wrong at {m}"))?;
        let mu = m.mul(u).map_err(err)?;
        ensure(colon.contains(&m) == i.contains(&mu), || format!("colon wrong at {m}"))?;
    }
    Ok(())
}

/// The reduced basis is closed under S-pairs, lies in the kernel and
/// agrees with the elimination route.
pub fn check_groebner(gens: &[(Monomial, u32)]) -> Check {
    let n = gens[0].0.n();
    let gb = toric_groebner(gens, 1_000_000).map_err(err)?;
    ensure(s_pairs_reduce_to_zero(n, &gb), || format!("S-pairs do not reduce to zero for {gens:?}"))?;
    ensure(gb.iter().all(|b| maps_to_zero(b, gens)), || format!("binomial outside the kernel for {gens:?}"))?;
    let other = toric_groebner_by_elimination(gens, 1_000_000).map_err(err)?;
    ensure(gb == other, || format!("saturation and elimination disagree for {gens:?}"))
}

pub fn random_rees_data(rng: &mut impl Rng) -> Vec<(Monomial, u32)> {
    let n = rng.gen_range(1..=3);
    let m = rng.gen_range(1..=5);
    (0..m).map(|_| (random_monomial(rng, n, 2), rng.gen_range(1..=2))).collect()
}

fn split_exists(w: &WeightedComplex, a: &[u32], k: u32) -> bool {
    let total: usize = a.iter().map(|&x| x as usize + 1).product();
    (1..total - 1).any(|mut idx| {
        let mut b = vec![0u32; a.len()];
        for (bi, &ai) in b.iter_mut().zip(a) {
            *bi = (idx % (ai as usize + 1)) as u32;
            idx /= ai as usize + 1;
        }
        let c: Vec<u32> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
        (0..=k).any(|i| w.is_cover(&b, i) && w.is_cover(&c, k - i))
    })
}

/// A `k`-cover that is not a sum of an `i`-cover and a `(k-i)`-cover with
/// both parts nonzero, found by trying every split.
pub fn brute_indecomposable(w: &WeightedComplex, a: &[u32], k: u32) -> bool {
    w.is_cover(a, k) && a.iter().any(|&x| x > 0) && !split_exists(w, a, k)
}

/// Every listed cover is re-verified by brute force and nothing in the
/// candidate box is missing.
pub fn check_covers(i: &MonomialIdeal, k_max: u32) -> Check {
    let w = weighted_complex(i).map_err(err)?;
    let list = indecomposable_covers(&w, k_max, DEFAULT_CANDIDATE_CAP).map_err(err)?;
    for c in &list.covers {
        ensure(brute_indecomposable(&w, &c.a, c.k), || format!("{:?} is not indecomposable for {i}", c))?;
    }
    for k in 1..=k_max {
        let side = k * w.max_weight() + 1;
        let total = (side as usize).pow(i.n() as u32);
        for mut idx in 0..total {
            let mut a = vec![0u32; i.n()];
            for x in a.iter_mut() {
                *x = (idx % side as usize) as u32;
                idx /= side as usize;
            }
            let listed = list.covers.contains(&Cover { a: a.clone(), k });
            ensure(listed == brute_indecomposable(&w, &a, k), || {
                format!("cover {a:?} at order {k} misclassified for {i}")
            })?;
        }
    }
    Ok(())
}
