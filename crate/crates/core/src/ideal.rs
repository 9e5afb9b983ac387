use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::grid::{Grid, DENSE_CAP};
use crate::monomial::Monomial;
use crate::par;

/// A monomial ideal in `n` variables, stored by its minimal generators in
/// canonical order. The zero ideal has no generators; the unit ideal is
/// generated by `1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
}

/// Builds the ideal generated by `gens`, dropping redundant generators.
pub fn minimalize(gens: Vec<Monomial>, n: usize) -> Result<MonomialIdeal> {
    if let Some(bad) = gens.iter().find(|g| g.n() != n) {
        return Err(Error::Structural(format!("monomial {bad} has {} exponents, expected {n}", bad.n())));
    }
    Ok(MonomialIdeal { n, gens: minimal_generators(gens, n) })
}

fn minimal_generators(mut gens: Vec<Monomial>, n: usize) -> Vec<Monomial> {
    gens.sort();
    gens.dedup();
    if gens.len() <= 1 {
        return gens;
    }
    if gens[0].is_one() {
        return vec![Monomial::one(n)];
    }
    let min_deg = gens[0].degree();
    if gens.last().map(|g| g.degree()) == Some(min_deg) {
        return gens;
    }
    if gens.len() > 48 {
        let bound = bounding_box(&gens, n);
        if Grid::box_size(&bound, DENSE_CAP).is_some() {
            let grid = Grid::membership(&bound, &gens);
            return gens
                .into_iter()
                .filter(|g| {
                    let idx = grid.index(g.exps());
                    (0..n).all(|i| g.exps()[i] == 0 || !grid.below_is_member(idx, i))
                })
                .collect();
        }
    }
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    let mut masks: Vec<u64> = Vec::with_capacity(gens.len());
    for g in gens {
        let d = g.degree();
        let gm = g.support_mask();
        let redundant =
            kept.iter().zip(&masks).take_while(|(k, _)| k.degree() < d).any(|(k, &km)| km & !gm == 0 && k.divides(&g));
        if !redundant {
            kept.push(g);
            masks.push(gm);
        }
    }
    kept
}

fn bounding_box(gens: &[Monomial], n: usize) -> Vec<u32> {
    let mut b = vec![0u32; n];
    for g in gens {
        for (x, &e) in b.iter_mut().zip(g.exps()) {
            *x = (*x).max(e);
        }
    }
    b
}

impl MonomialIdeal {
    pub fn new(n: usize, gens: Vec<Monomial>) -> Result<Self> {
        minimalize(gens, n)
    }

    pub fn from_exponents(n: usize, gens: &[Vec<u32>]) -> Result<Self> {
        minimalize(gens.iter().cloned().map(Monomial::new).collect(), n)
    }

    pub fn zero(n: usize) -> Self {
        MonomialIdeal { n, gens: Vec::new() }
    }

    pub fn unit(n: usize) -> Self {
        MonomialIdeal { n, gens: vec![Monomial::one(n)] }
    }

    pub fn principal(m: Monomial) -> Self {
        MonomialIdeal { n: m.n(), gens: vec![m] }
    }

    /// The prime `P_F = (x_i : i in F)`, 0-based `support`.
    pub fn prime(n: usize, support: &[usize]) -> Self {
        let gens = support.iter().map(|&i| Monomial::var(n, i)).collect();
        MonomialIdeal { n, gens: minimal_generators(gens, n) }
    }

    /// The maximal ideal `(x_1, ..., x_n)`.
    pub fn maximal(n: usize) -> Self {
        let all: Vec<usize> = (0..n).collect();
        Self::prime(n, &all)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    /// `mu(I)`, the number of minimal generators.
    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn is_proper_nonzero(&self) -> bool {
        !self.is_zero() && !self.is_unit()
    }

    pub fn is_principal(&self) -> bool {
        self.gens.len() == 1
    }

    /// `alpha(I)`; `None` for the zero ideal.
    pub fn alpha(&self) -> Option<u32> {
        self.gens.first().map(|g| g.degree())
    }

    /// `omega(I)`; `None` for the zero ideal.
    pub fn omega(&self) -> Option<u32> {
        self.gens.iter().map(|g| g.degree()).max()
    }

    /// Sorted generator degrees, with multiplicity.
    pub fn degrees(&self) -> Vec<u32> {
        self.gens.iter().map(|g| g.degree()).collect()
    }

    pub fn is_equigenerated(&self) -> bool {
        self.alpha() == self.omega()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(|g| g.is_squarefree())
    }

    /// `supp(I)`, 0-based and sorted.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.gens.iter().any(|g| g.exps()[i] > 0)).collect()
    }

    pub fn is_fully_supported(&self) -> bool {
        self.support().len() == self.n
    }

    /// Componentwise maximum of the generators.
    pub fn lcm_bound(&self) -> Vec<u32> {
        bounding_box(&self.gens, self.n)
    }

    fn check_n(&self, other_n: usize) -> Result<()> {
        if self.n != other_n {
            return Err(Error::Structural(format!("ambient variable counts differ: {} vs {other_n}", self.n)));
        }
        Ok(())
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// `other` is a subideal of `self`.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn add(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_n(other.n)?;
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        minimalize(gens, self.n)
    }

    pub fn multiply(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_n(other.n)?;
        let rows = par::map(&self.gens, |g| other.gens.iter().map(|h| g.mul(h)).collect::<Result<Vec<_>>>());
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for row in rows {
            gens.extend(row?);
        }
        minimalize(gens, self.n)
    }

    /// `(u) * I`.
    pub fn scale(&self, u: &Monomial) -> Result<MonomialIdeal> {
        self.check_n(u.n())?;
        let gens = self.gens.iter().map(|g| g.mul(u)).collect::<Result<Vec<_>>>()?;
        Ok(MonomialIdeal { n: self.n, gens: minimal_generators(gens, self.n) })
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_n(other.n)?;
        if self.is_zero() || other.is_zero() {
            return Ok(MonomialIdeal::zero(self.n));
        }
        intersect_all(&[self.clone(), other.clone()])
    }

    /// `I : (m)`.
    pub fn colon(&self, m: &Monomial) -> Result<MonomialIdeal> {
        self.check_n(m.n())?;
        let gens = self.gens.iter().map(|g| g.colon(m)).collect();
        minimalize(gens, self.n)
    }

    /// `I^k` by repeated squaring; `I^0` is the unit ideal.
    pub fn power(&self, k: u32) -> Result<MonomialIdeal> {
        let mut result = MonomialIdeal::unit(self.n);
        if k == 0 {
            return Ok(result);
        }
        let mut base = self.clone();
        let mut e = k;
        loop {
            if e & 1 == 1 {
                result = if result.is_unit() { base.clone() } else { result.multiply(&base)? };
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.multiply(&base)?;
        }
        Ok(result)
    }

    /// `I_<d>`: the ideal generated by the degree-`d` monomials of `I`.
    pub fn graded_component(&self, d: u32) -> Result<MonomialIdeal> {
        let mut gens = Vec::new();
        for g in self.gens.iter().filter(|g| g.degree() <= d) {
            for m in monomials_of_degree(self.n, d - g.degree()) {
                gens.push(g.mul(&m)?);
            }
        }
        minimalize(gens, self.n)
    }

    /// `I^{<=a}`: generated by the monomials of `I` below `a`. Only the
    /// generators need filtering, since any monomial of `I` below `a` is a
    /// multiple of a generator below `a`.
    pub fn restrict_below(&self, a: &[u32]) -> Result<MonomialIdeal> {
        self.check_n(a.len())?;
        let gens = self.gens.iter().filter(|g| g.is_below(a)).cloned().collect();
        Ok(MonomialIdeal { n: self.n, gens })
    }

    /// `I^{<=1}`.
    pub fn squarefree_part(&self) -> MonomialIdeal {
        let gens = self.gens.iter().filter(|g| g.is_squarefree()).cloned().collect();
        MonomialIdeal { n: self.n, gens }
    }

    /// `gcd(I)`, the componentwise minimum of the generators.
    pub fn gcd(&self) -> Result<Monomial> {
        let first = match self.gens.first() {
            Some(g) => g.clone(),
            None => return domain("gcd of the zero ideal"),
        };
        Ok(self.gens.iter().fold(first, |acc, g| acc.gcd(g)))
    }

    /// Returns `(u, J)` with `I = u J` and `gcd(J) = 1`.
    pub fn gcd_factor(&self) -> Result<(Monomial, MonomialIdeal)> {
        let u = self.gcd()?;
        let gens = self.gens.iter().map(|g| g.div(&u).expect("gcd divides")).collect();
        Ok((u, MonomialIdeal { n: self.n, gens: minimal_generators(gens, self.n) }))
    }

    /// Substitute `x_i -> 1` for every variable outside `keep`.
    pub fn set_to_one(&self, drop: &[usize]) -> MonomialIdeal {
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut e = g.exps().to_vec();
                for &i in drop {
                    e[i] = 0;
                }
                Monomial::new(e)
            })
            .collect();
        MonomialIdeal { n: self.n, gens: minimal_generators(gens, self.n) }
    }

    /// Keep only the generators whose support avoids `zeros` (set them to 0).
    pub fn set_to_zero(&self, zeros: &[usize]) -> MonomialIdeal {
        let gens = self.gens.iter().filter(|g| zeros.iter().all(|&i| g.exps()[i] == 0)).cloned().collect();
        MonomialIdeal { n: self.n, gens }
    }
}

/// All monomials of degree `d` in `n` variables, in lex-descending order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let n = cur.len();
        if n == 0 {
            if left == 0 {
                out.push(Monomial::new(Vec::new()));
            }
            return;
        }
        if i == n - 1 {
            cur[i] = left;
            out.push(Monomial::new(cur.clone()));
            cur[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, d, &mut cur, &mut out);
    out
}

/// Intersection of several ideals in the same ring.
///
/// Uses one dense membership table over the common generator box when it is
/// small enough; otherwise folds pairwise with the smallest ideals first.
pub fn intersect_all(ideals: &[MonomialIdeal]) -> Result<MonomialIdeal> {
    let n = match ideals.first() {
        Some(i) => i.n,
        None => return Err(Error::Domain("intersection of no ideals".into())),
    };
    for i in ideals {
        i.check_n(n)?;
    }
    if ideals.iter().any(|i| i.is_zero()) {
        return Ok(MonomialIdeal::zero(n));
    }
    let proper: Vec<&MonomialIdeal> = ideals.iter().filter(|i| !i.is_unit()).collect();
    if proper.is_empty() {
        return Ok(MonomialIdeal::unit(n));
    }
    if proper.len() == 1 {
        return Ok(proper[0].clone());
    }
    let mut bound = vec![0u32; n];
    for i in &proper {
        for (b, e) in bound.iter_mut().zip(i.lcm_bound()) {
            *b = (*b).max(e);
        }
    }
    if Grid::box_size(&bound, DENSE_CAP).is_some() {
        let grids = par::map(&proper, |i| Grid::membership(&bound, i.gens()));
        let mut grids = grids.into_iter();
        let mut acc = grids.next().expect("nonempty");
        for g in grids {
            acc.and_with(&g);
        }
        let gens = acc.minimal_points().into_iter().map(Monomial::new).collect();
        return Ok(MonomialIdeal { n, gens: minimal_generators(gens, n) });
    }
    let mut sorted: Vec<&MonomialIdeal> = proper;
    sorted.sort_by_key(|i| i.num_gens());
    let mut acc = sorted[0].clone();
    for next in &sorted[1..] {
        acc = intersect_pairwise(&acc, next)?;
    }
    Ok(acc)
}

/// Pairwise intersection through lcms of generator pairs.
pub fn intersect_pairwise(a: &MonomialIdeal, b: &MonomialIdeal) -> Result<MonomialIdeal> {
    a.check_n(b.n)?;
    let rows = par::map(&a.gens, |g| b.gens.iter().map(|h| g.lcm(h)).collect::<Vec<_>>());
    minimalize(rows.into_iter().flatten().collect(), a.n)
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "0");
        }
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct IdealJson {
    n: usize,
    gens: Vec<Vec<u32>>,
}

impl Serialize for MonomialIdeal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        IdealJson { n: self.n, gens: self.gens.iter().map(|g| g.exps().to_vec()).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MonomialIdeal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = IdealJson::deserialize(d)?;
        MonomialIdeal::from_exponents(raw.n, &raw.gens).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(n, &gens.iter().map(|g| g.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn i43() -> MonomialIdeal {
        ideal(4, &[&[1, 1, 1, 0], &[1, 1, 0, 1], &[1, 0, 1, 1], &[0, 1, 1, 1]])
    }

    #[test]
    fn minimalize_examples() {
        assert_eq!(ideal(2, &[&[1, 0], &[1, 1]]), ideal(2, &[&[1, 0]]));
        assert!(minimalize(vec![], 3).unwrap().is_zero());
        let five = ideal(4, &[&[1, 1, 1, 0], &[1, 1, 0, 1], &[1, 0, 1, 1], &[0, 1, 1, 1], &[1, 1, 1, 1]]);
        assert_eq!(five, i43());
    }

    #[test]
    fn mismatched_lengths_are_structural_errors() {
        let err = minimalize(vec![Monomial::new(vec![1, 0]), Monomial::new(vec![1])], 2).unwrap_err();
        assert!(matches!(err, Error::Structural(_)));
    }

    #[test]
    fn contains_examples() {
        assert!(i43().contains(&Monomial::new(vec![1, 1, 1, 0])));
        assert!(!i43().contains(&Monomial::new(vec![2, 1, 0, 0])));
        assert!(!MonomialIdeal::zero(4).contains(&Monomial::new(vec![5, 5, 5, 5])));
    }

    #[test]
    fn multiply_examples() {
        let p12 = ideal(3, &[&[1, 0, 0], &[0, 1, 0]]);
        let p3 = ideal(3, &[&[0, 0, 1]]);
        assert_eq!(p12.multiply(&p3).unwrap(), ideal(3, &[&[1, 0, 1], &[0, 1, 1]]));
        assert_eq!(p12.multiply(&p12).unwrap(), ideal(3, &[&[2, 0, 0], &[1, 1, 0], &[0, 2, 0]]));
        let a = MonomialIdeal::prime(4, &[0, 1]);
        let b = MonomialIdeal::prime(4, &[2, 3]);
        let prod = a.multiply(&b).unwrap();
        assert_eq!(prod.num_gens(), 4);
        assert!(prod.is_equigenerated() && prod.alpha() == Some(2));
    }

    #[test]
    fn intersect_examples() {
        let x1 = ideal(2, &[&[1, 0]]);
        let x2 = ideal(2, &[&[0, 1]]);
        assert_eq!(x1.intersect(&x2).unwrap(), ideal(2, &[&[1, 1]]));
        assert_eq!(i43().intersect(&MonomialIdeal::unit(4)).unwrap(), i43());
        let mut primes = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                primes.push(MonomialIdeal::prime(4, &[i, j]));
            }
        }
        assert_eq!(intersect_all(&primes).unwrap(), i43());
        let mut acc = primes[0].clone();
        for p in &primes[1..] {
            acc = intersect_pairwise(&acc, p).unwrap();
        }
        assert_eq!(acc, i43());
    }

    #[test]
    fn colon_examples() {
        let i = ideal(4, &[&[3, 1, 1, 1]]);
        let got = i.colon(&Monomial::new(vec![2, 2, 2, 0])).unwrap();
        assert_eq!(got, ideal(4, &[&[1, 0, 0, 1]]));
        assert_eq!(i43().colon(&Monomial::one(4)).unwrap(), i43());
        let j = ideal(3, &[&[1, 1, 0], &[1, 0, 1]]);
        assert_eq!(j.colon(&Monomial::var(3, 0)).unwrap(), ideal(3, &[&[0, 1, 0], &[0, 0, 1]]));
    }

    #[test]
    fn power_examples() {
        let p12 = ideal(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(p12.power(2).unwrap(), ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]));
        assert_eq!(i43().power(1).unwrap(), i43());
        assert!(i43().power(0).unwrap().is_unit());
        let c = ideal(3, &[&[1, 1, 1]]);
        assert_eq!(c.power(3).unwrap(), ideal(3, &[&[3, 3, 3]]));
        // I_{4,3}^2: sums of two distinct-or-equal squarefree degree-3 vectors
        let sq = i43().power(2).unwrap();
        let mut expected = Vec::new();
        for a in i43().gens() {
            for b in i43().gens() {
                expected.push(a.mul(b).unwrap());
            }
        }
        assert_eq!(sq, minimalize(expected, 4).unwrap());
        assert!(sq.gens().iter().all(|g| g.degree() == 6 && g.exps().iter().all(|&e| e <= 2)));
        assert_eq!(sq.num_gens(), 10);
    }

    #[test]
    fn graded_component_examples() {
        let x1 = ideal(2, &[&[1, 0]]);
        assert_eq!(x1.graded_component(2).unwrap(), ideal(2, &[&[2, 0], &[1, 1]]));
        assert_eq!(i43().graded_component(3).unwrap(), i43());
        assert!(i43().graded_component(2).unwrap().is_zero());
    }

    #[test]
    fn restrict_below_examples() {
        let t = ideal(3, &[&[1, 0, 0], &[0, 1, 0]]).multiply(&ideal(3, &[&[0, 1, 0], &[0, 0, 1]])).unwrap();
        assert_eq!(t.squarefree_part(), ideal(3, &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]));
        assert_eq!(t.restrict_below(&t.lcm_bound()).unwrap(), t);
        assert_eq!(i43().restrict_below(&[1, 1, 1, 0]).unwrap(), ideal(4, &[&[1, 1, 1, 0]]));
    }

    #[test]
    fn gcd_factor_examples() {
        let i = ideal(3, &[&[2, 1, 0], &[2, 0, 1]]);
        let (u, j) = i.gcd_factor().unwrap();
        assert_eq!(u, Monomial::new(vec![2, 0, 0]));
        assert_eq!(j, ideal(3, &[&[0, 1, 0], &[0, 0, 1]]));
        let (u, j) = i43().gcd_factor().unwrap();
        assert!(u.is_one());
        assert_eq!(j, i43());
        // x1^{a1-1} x2^{a2-1} x3^{a3-1} (x1x2, x1x3, x2x3) with a = (3, 2, 2)
        let tri = ideal(3, &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        let w = tri.scale(&Monomial::new(vec![2, 1, 1])).unwrap();
        let (u, j) = w.gcd_factor().unwrap();
        assert_eq!(u, Monomial::new(vec![2, 1, 1]));
        assert_eq!(j, tri);
        assert!(MonomialIdeal::zero(2).gcd_factor().is_err());
    }

    #[test]
    fn monomials_of_degree_counts() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(4, 0), vec![Monomial::one(4)]);
        assert_eq!(monomials_of_degree(2, 2)[0], Monomial::new(vec![2, 0]));
    }

    #[test]
    fn dense_and_pairwise_minimalization_agree() {
        // large enough to take the dense route
        let p = MonomialIdeal::maximal(3);
        let gens: Vec<Monomial> = (1..=4)
            .flat_map(|d| p.power(d).unwrap().gens().to_vec())
            .chain(std::iter::once(Monomial::new(vec![0, 0, 1])))
            .collect();
        let got = minimalize(gens, 3).unwrap();
        assert_eq!(got, ideal(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
    }
}
