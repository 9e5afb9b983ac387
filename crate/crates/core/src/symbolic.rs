use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{domain, Result};
use crate::ideal::{intersect_all, MonomialIdeal};
use crate::par;
use crate::primes::{associated_primes, is_minimal_intersection_type, localize, maximal_primes, MonomialPrime};

/// Which route computes `I^(k)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SymbolicOptions {
    /// Skip every shortcut and intersect `I(P)^k` over all of `Ass(I)`.
    pub naive: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SymbolicPowerReport {
    pub k: u32,
    pub generators: MonomialIdeal,
    pub degrees: Vec<u32>,
    pub alpha: u32,
    pub omega: u32,
    pub equals_ordinary: bool,
}

fn require_proper(ideal: &MonomialIdeal, k: u32) -> Result<()> {
    if !ideal.is_proper_nonzero() {
        return domain("symbolic powers need a proper nonzero ideal");
    }
    if k == 0 {
        return domain("symbolic power order must be positive");
    }
    Ok(())
}

pub fn symbolic_power(ideal: &MonomialIdeal, k: u32) -> Result<MonomialIdeal> {
    symbolic_power_with(ideal, k, SymbolicOptions::default())
}

pub fn symbolic_power_with(ideal: &MonomialIdeal, k: u32, opts: SymbolicOptions) -> Result<MonomialIdeal> {
    require_proper(ideal, k)?;
    if opts.naive {
        return intersect_localized(ideal, &associated_primes(ideal)?, k);
    }
    if k == 1 {
        return Ok(ideal.clone());
    }
    pipeline(ideal, k)
}

fn pipeline(ideal: &MonomialIdeal, k: u32) -> Result<MonomialIdeal> {
    let (u, rest) = ideal.gcd_factor()?;
    if rest.is_unit() {
        return ideal.power(k);
    }
    if !u.is_one() {
        return pipeline(&rest, k)?.scale(&u.pow(k)?);
    }
    let factors = disjoint_factors(ideal);
    if factors.len() > 1 {
        let powers = par::map(&factors, |f| pipeline(f, k));
        let mut acc = MonomialIdeal::unit(ideal.n());
        for p in powers {
            acc = acc.multiply(&p?)?;
        }
        return Ok(acc);
    }
    let ass = associated_primes(ideal)?;
    let supp = ideal.support();
    if ass.iter().any(|p| p.support() == supp.as_slice()) {
        return ideal.power(k);
    }
    if let Some(fit) = is_minimal_intersection_type(ideal)? {
        let powers = par::map(&fit, |(p, ki)| p.power(k * ki));
        return intersect_all(&powers);
    }
    intersect_localized(ideal, &maximal_primes(&ass), k)
}

fn intersect_localized(ideal: &MonomialIdeal, primes: &[MonomialPrime], k: u32) -> Result<MonomialIdeal> {
    let powers = par::map(primes, |p| localize(ideal, p).power(k));
    let powers = powers.into_iter().collect::<Result<Vec<_>>>()?;
    intersect_all(&powers)
}

/// Finest factorization `I = I_1 ... I_t` with pairwise disjoint supports.
///
/// A variable set `A` splits `I` iff the restrictions of the generators to
/// `A` and to its complement multiply back to exactly `G(I)`, which happens
/// iff `mu(I)` is the product of the two restriction counts.
pub fn disjoint_factors(ideal: &MonomialIdeal) -> Vec<MonomialIdeal> {
    let supp = ideal.support();
    if supp.len() < 2 || supp.len() > 20 || ideal.is_principal() {
        return vec![ideal.clone()];
    }
    let mut out = Vec::new();
    let mut current = ideal.clone();
    let mut remaining = supp;
    while remaining.len() >= 2 {
        match smallest_split(&current, &remaining) {
            Some((a, b)) => {
                out.push(restrict_gens(&current, &a));
                current = restrict_gens(&current, &b);
                remaining = b;
            }
            None => break,
        }
    }
    out.push(current);
    out
}

fn restrict_gens(ideal: &MonomialIdeal, set: &[usize]) -> MonomialIdeal {
    let gens = ideal.gens().iter().map(|g| g.restrict(set)).collect();
    MonomialIdeal::new(ideal.n(), gens).expect("lengths match")
}

fn smallest_split(ideal: &MonomialIdeal, vars: &[usize]) -> Option<(Vec<usize>, Vec<usize>)> {
    let m = vars.len();
    let rest_count = m - 1;
    let mut masks: Vec<u32> = (0..(1u32 << rest_count) - 1).collect();
    masks.sort_by_key(|x| x.count_ones());
    let mu = ideal.num_gens();
    for mask in masks {
        let mut a = vec![vars[0]];
        let mut b = Vec::new();
        for (j, &v) in vars[1..].iter().enumerate() {
            if mask >> j & 1 == 1 {
                a.push(v);
            } else {
                b.push(v);
            }
        }
        let ca = distinct_restrictions(ideal, &a);
        let cb = distinct_restrictions(ideal, &b);
        if ca.saturating_mul(cb) == mu {
            return Some((a, b));
        }
    }
    None
}

fn distinct_restrictions(ideal: &MonomialIdeal, set: &[usize]) -> usize {
    let rs: BTreeSet<Vec<u32>> = ideal.gens().iter().map(|g| set.iter().map(|&i| g.exps()[i]).collect()).collect();
    rs.len()
}

pub fn symbolic_power_report(ideal: &MonomialIdeal, k: u32, opts: SymbolicOptions) -> Result<SymbolicPowerReport> {
    let generators = symbolic_power_with(ideal, k, opts)?;
    let degrees = generators.degrees();
    let equals_ordinary = generators == ideal.power(k)?;
    Ok(SymbolicPowerReport {
        k,
        alpha: generators.alpha().expect("nonzero"),
        omega: generators.omega().expect("nonzero"),
        degrees,
        generators,
        equals_ordinary,
    })
}

/// `(k, I^(k) == I^k)` for `k = 1..=k_max`.
pub fn powers_coincide(ideal: &MonomialIdeal, k_max: u32) -> Result<Vec<(u32, bool)>> {
    powers_coincide_with(ideal, k_max, SymbolicOptions::default())
}

pub fn powers_coincide_with(ideal: &MonomialIdeal, k_max: u32, opts: SymbolicOptions) -> Result<Vec<(u32, bool)>> {
    require_proper(ideal, k_max.max(1))?;
    (1..=k_max).map(|k| Ok((k, symbolic_power_with(ideal, k, opts)? == ideal.power(k)?))).collect()
}

/// Degrees of the minimal generators of `I^(k)`.
pub fn generator_degree_set(ideal: &MonomialIdeal, k: u32) -> Result<BTreeSet<u32>> {
    Ok(symbolic_power(ideal, k)?.degrees().into_iter().collect())
}
