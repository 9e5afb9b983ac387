use std::fmt;

use crate::error::{domain, Result};
use crate::ideal::{intersect_all, monomials_of_degree, MonomialIdeal};
use crate::monomial::Monomial;

/// The monomial prime `P_F = (x_i : i in F)`, with a nonempty 0-based support.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct MonomialPrime {
    n: usize,
    support: Vec<usize>,
}

impl MonomialPrime {
    pub fn new(n: usize, mut support: Vec<usize>) -> Result<Self> {
        support.sort_unstable();
        support.dedup();
        if support.is_empty() {
            return domain("a monomial prime needs a nonempty support");
        }
        if support.iter().any(|&i| i >= n) {
            return domain(format!("prime support {support:?} exceeds n = {n}"));
        }
        Ok(MonomialPrime { n, support })
    }

    pub fn maximal(n: usize) -> Self {
        MonomialPrime { n, support: (0..n).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn height(&self) -> usize {
        self.support.len()
    }

    pub fn contains_prime(&self, other: &MonomialPrime) -> bool {
        other.support.iter().all(|i| self.support.binary_search(i).is_ok())
    }

    pub fn ideal(&self) -> MonomialIdeal {
        MonomialIdeal::prime(self.n, &self.support)
    }

    /// `P^k`, generated by all degree-`k` monomials in the support variables.
    pub fn power(&self, k: u32) -> MonomialIdeal {
        let m = self.support.len();
        let gens = monomials_of_degree(m, k)
            .into_iter()
            .map(|small| {
                let mut e = vec![0u32; self.n];
                for (j, &i) in self.support.iter().enumerate() {
                    e[i] = small.exps()[j];
                }
                Monomial::new(e)
            })
            .collect();
        MonomialIdeal::new(self.n, gens).expect("lengths match")
    }

    /// Largest `k` with `I ⊆ P^k`: the least `P`-degree of a generator.
    pub fn order_of(&self, ideal: &MonomialIdeal) -> u32 {
        ideal.gens().iter().map(|g| g.degree_in(&self.support)).min().unwrap_or(0)
    }
}

impl fmt::Display for MonomialPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P_{{")?;
        for (j, i) in self.support.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

/// An irreducible monomial ideal `(x_i^{e_i} : e_i > 0)`; a zero entry means
/// the variable does not occur.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct IrreducibleComponent {
    exps: Vec<u32>,
}

impl IrreducibleComponent {
    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.exps.len()).filter(|&i| self.exps[i] > 0).collect()
    }

    pub fn radical(&self) -> MonomialPrime {
        MonomialPrime { n: self.exps.len(), support: self.support() }
    }

    pub fn ideal(&self) -> MonomialIdeal {
        let n = self.exps.len();
        let gens = self
            .support()
            .into_iter()
            .map(|i| {
                let mut e = vec![0u32; n];
                e[i] = self.exps[i];
                Monomial::new(e)
            })
            .collect();
        MonomialIdeal::new(n, gens).expect("lengths match")
    }

    fn contains_monomial(&self, m: &Monomial) -> bool {
        self.exps.iter().zip(m.exps()).any(|(&e, &a)| e > 0 && a >= e)
    }

    /// `other ⊆ self`.
    fn contains_component(&self, other: &IrreducibleComponent) -> bool {
        other.exps.iter().zip(&self.exps).all(|(&o, &s)| o == 0 || (s > 0 && s <= o))
    }
}

impl fmt::Display for IrreducibleComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.ideal())
    }
}

fn require_proper(ideal: &MonomialIdeal) -> Result<()> {
    if ideal.is_zero() {
        return domain("the zero ideal has no irreducible decomposition");
    }
    if ideal.is_unit() {
        return domain("the unit ideal has no irreducible decomposition");
    }
    Ok(())
}

/// Irredundant irreducible decomposition, sorted by support then exponents.
///
/// Generators are added one at a time. Adding `g` to an irreducible `C` not
/// containing it gives `∩_{i in supp g} (C + x_i^{g_i})`; components that
/// contain another component are dropped after every step.
pub fn irreducible_decomposition(ideal: &MonomialIdeal) -> Result<Vec<IrreducibleComponent>> {
    require_proper(ideal)?;
    let n = ideal.n();
    let mut comps: Vec<IrreducibleComponent> = vec![];
    let mut gens = ideal.gens().iter();
    let first = gens.next().expect("nonzero");
    for i in first.support() {
        let mut e = vec![0u32; n];
        e[i] = first.exps()[i];
        comps.push(IrreducibleComponent { exps: e });
    }
    for g in gens {
        let mut next: Vec<IrreducibleComponent> = Vec::with_capacity(comps.len());
        let mut fresh: Vec<IrreducibleComponent> = Vec::new();
        for c in comps {
            if c.contains_monomial(g) {
                next.push(c);
                continue;
            }
            for i in g.support() {
                let mut e = c.exps.clone();
                e[i] = g.exps()[i];
                fresh.push(IrreducibleComponent { exps: e });
            }
        }
        // untouched components are already pairwise irredundant
        fresh.sort();
        fresh.dedup();
        let fresh: Vec<IrreducibleComponent> =
            fresh.iter().filter(|c| !next.iter().any(|d| c.contains_component(d))).cloned().collect();
        let mut kept_fresh: Vec<IrreducibleComponent> = Vec::with_capacity(fresh.len());
        for (j, c) in fresh.iter().enumerate() {
            let redundant = fresh.iter().enumerate().any(|(l, d)| l != j && c.contains_component(d));
            if !redundant {
                kept_fresh.push(c.clone());
            }
        }
        next.retain(|d| !kept_fresh.iter().any(|c| d.contains_component(c)));
        next.extend(kept_fresh);
        comps = next;
    }
    comps.sort_by(|a, b| {
        let (sa, sb) = (a.support(), b.support());
        sa.len().cmp(&sb.len()).then_with(|| sa.cmp(&sb)).then_with(|| a.exps.cmp(&b.exps))
    });
    Ok(comps)
}

/// `Ass(I)`: the distinct radicals of the irreducible components, embedded
/// primes included, sorted by height then support.
pub fn associated_primes(ideal: &MonomialIdeal) -> Result<Vec<MonomialPrime>> {
    let mut primes: Vec<MonomialPrime> = irreducible_decomposition(ideal)?.iter().map(|c| c.radical()).collect();
    primes.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.support.cmp(&b.support)));
    primes.dedup();
    Ok(primes)
}

/// The associated primes not contained in another associated prime.
pub fn maximal_primes(primes: &[MonomialPrime]) -> Vec<MonomialPrime> {
    primes.iter().filter(|p| !primes.iter().any(|q| q != *p && q.contains_prime(p))).cloned().collect()
}

/// The associated primes not containing another associated prime.
pub fn minimal_primes(primes: &[MonomialPrime]) -> Vec<MonomialPrime> {
    primes.iter().filter(|p| !primes.iter().any(|q| q != *p && p.contains_prime(q))).cloned().collect()
}

/// Monomial localization `I(P)`: set every variable outside `P` to 1.
pub fn localize(ideal: &MonomialIdeal, prime: &MonomialPrime) -> MonomialIdeal {
    let outside: Vec<usize> = (0..ideal.n()).filter(|i| prime.support.binary_search(i).is_err()).collect();
    ideal.set_to_one(&outside)
}

pub fn height(ideal: &MonomialIdeal) -> Result<usize> {
    Ok(associated_primes(ideal)?.iter().map(|p| p.height()).min().expect("proper ideal has a prime"))
}

/// `Some([(P_i, k_i)])` when `I = ∩ P_i^{k_i}` over pairwise incomparable
/// associated primes, otherwise `None`.
pub fn is_minimal_intersection_type(ideal: &MonomialIdeal) -> Result<Option<Vec<(MonomialPrime, u32)>>> {
    let ass = associated_primes(ideal)?;
    if minimal_primes(&ass).len() != ass.len() {
        return Ok(None);
    }
    let fit: Vec<(MonomialPrime, u32)> = ass
        .into_iter()
        .map(|p| {
            let k = p.order_of(ideal);
            (p, k)
        })
        .collect();
    let powers: Vec<MonomialIdeal> = fit.iter().map(|(p, k)| p.power(*k)).collect();
    if &intersect_all(&powers)? == ideal {
        Ok(Some(fit))
    } else {
        Ok(None)
    }
}
