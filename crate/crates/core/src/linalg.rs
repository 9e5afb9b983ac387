//! Matrix rank over a prime field or over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{domain, Result};

/// Coefficient field for homology computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Characteristic {
    Zero,
    Prime(u32),
}

impl Default for Characteristic {
    fn default() -> Self {
        Characteristic::Prime(32003)
    }
}

impl Characteristic {
    /// `0` selects the rationals; anything else must be prime.
    pub fn from_u32(p: u32) -> Result<Self> {
        if p == 0 {
            return Ok(Characteristic::Zero);
        }
        if !is_prime(p) {
            return domain(format!("{p} is not prime"));
        }
        Ok(Characteristic::Prime(p))
    }

    pub fn as_u32(&self) -> u32 {
        match self {
            Characteristic::Zero => 0,
            Characteristic::Prime(p) => *p,
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Rank of an integer matrix (rows of equal length) over the given field.
pub fn rank(rows: &[Vec<i64>], ch: Characteristic) -> usize {
    match ch {
        Characteristic::Prime(p) => rank_mod_p(rows, p as u64),
        Characteristic::Zero => rank_rational(rows),
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn rank_mod_p(rows: &[Vec<i64>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> =
        rows.iter().map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, piv);
        let inv = pow_mod(m[rank][c], p - 2, p);
        for x in m[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn rank_rational(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> =
        rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, piv);
        let inv = BigRational::one() / m[rank][c].clone();
        for x in m[rank].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_agree_on_small_matrices() {
        let m = vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, -1]];
        assert_eq!(rank(&m, Characteristic::Zero), 2);
        assert_eq!(rank(&m, Characteristic::default()), 2);
        assert_eq!(rank(&[], Characteristic::Zero), 0);
    }

    #[test]
    fn characteristic_matters_when_it_should() {
        let m = vec![vec![1, 1], vec![1, -1]];
        assert_eq!(rank(&m, Characteristic::Prime(2)), 1);
        assert_eq!(rank(&m, Characteristic::Zero), 2);
    }

    #[test]
    fn characteristic_parsing() {
        assert_eq!(Characteristic::from_u32(0).unwrap(), Characteristic::Zero);
        assert_eq!(Characteristic::from_u32(32003).unwrap(), Characteristic::Prime(32003));
        assert!(Characteristic::from_u32(32004).is_err());
    }
}
