use std::collections::HashSet;

use crate::error::{domain, Error, Result};
use crate::ideal::MonomialIdeal;
use crate::par;

/// Variables set to 0 and to 1 (0-based, disjoint).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MinorAssignment {
    zeros: Vec<usize>,
    ones: Vec<usize>,
}

impl MinorAssignment {
    pub fn new(mut zeros: Vec<usize>, mut ones: Vec<usize>) -> Result<Self> {
        zeros.sort_unstable();
        zeros.dedup();
        ones.sort_unstable();
        ones.dedup();
        if zeros.iter().any(|z| ones.binary_search(z).is_ok()) {
            return domain("a variable cannot be set to both 0 and 1");
        }
        Ok(MinorAssignment { zeros, ones })
    }

    pub fn zeros(&self) -> &[usize] {
        &self.zeros
    }

    pub fn ones(&self) -> &[usize] {
        &self.ones
    }
}

fn require_squarefree(ideal: &MonomialIdeal) -> Result<()> {
    if !ideal.is_squarefree() {
        return domain("expected a squarefree ideal");
    }
    Ok(())
}

fn require_proper_squarefree(ideal: &MonomialIdeal) -> Result<()> {
    require_squarefree(ideal)?;
    if !ideal.is_proper_nonzero() {
        return domain("expected a proper nonzero ideal");
    }
    Ok(())
}

pub fn minor(ideal: &MonomialIdeal, m: &MinorAssignment) -> Result<MonomialIdeal> {
    require_squarefree(ideal)?;
    Ok(ideal.set_to_zero(&m.zeros).set_to_one(&m.ones))
}

fn masks(ideal: &MonomialIdeal) -> Vec<u64> {
    ideal.gens().iter().map(|g| g.support_mask()).collect()
}

/// Minimum number of variables meeting every generator support.
fn min_hitting_set(sets: &[u64], universe: u64) -> u32 {
    fn rec(sets: &[u64], chosen: u64, size: u32, best: &mut u32) {
        if size >= *best {
            return;
        }
        let Some(&open) = sets.iter().find(|&&s| s & chosen == 0) else {
            *best = size;
            return;
        };
        let mut bits = open;
        while bits != 0 {
            let b = bits & bits.wrapping_neg();
            rec(sets, chosen | b, size + 1, best);
            bits &= bits - 1;
        }
    }
    let mut best = universe.count_ones() + 1;
    rec(sets, 0, 0, &mut best);
    best
}

/// Whether `h` pairwise disjoint sets can be picked.
fn has_disjoint_family(sets: &[u64], h: u32) -> bool {
    fn rec(sets: &[u64], start: usize, used: u64, left: u32) -> bool {
        if left == 0 {
            return true;
        }
        if sets.len() - start < left as usize {
            return false;
        }
        (start..sets.len()).any(|j| sets[j] & used == 0 && rec(sets, j + 1, used | sets[j], left - 1))
    }
    rec(sets, 0, 0, h)
}

/// Height of a squarefree ideal: the least size of a vertex cover.
pub fn squarefree_height(ideal: &MonomialIdeal) -> Result<u32> {
    require_proper_squarefree(ideal)?;
    if ideal.n() > 64 {
        return Err(Error::Resource("squarefree height supports at most 64 variables".into()));
    }
    let sets = masks(ideal);
    let universe = sets.iter().fold(0, |a, &s| a | s);
    Ok(min_hitting_set(&sets, universe))
}

/// `height(I)` pairwise coprime generators exist.
pub fn is_koenig(ideal: &MonomialIdeal) -> Result<bool> {
    let h = squarefree_height(ideal)?;
    Ok(has_disjoint_family(&masks(ideal), h))
}

pub const DEFAULT_PACKED_MAX_N: usize = 12;

/// Every proper nonzero minor is König. The 3^n assignments collapse to the
/// set of distinct minors, which are then checked in parallel.
pub fn is_packed(ideal: &MonomialIdeal, max_n: usize) -> Result<bool> {
    require_proper_squarefree(ideal)?;
    let n = ideal.n();
    if n > max_n {
        return Err(Error::Resource(format!("packed check capped at n = {max_n}")));
    }
    let mut seen: HashSet<MonomialIdeal> = HashSet::new();
    let mut visited: HashSet<(usize, MonomialIdeal)> = HashSet::new();
    let mut stack = vec![(0usize, ideal.clone())];
    // assign variables in order, minimalizing after each step
    while let Some((i, cur)) = stack.pop() {
        if !cur.is_proper_nonzero() || !visited.insert((i, cur.clone())) {
            continue;
        }
        if i == n {
            seen.insert(cur);
            continue;
        }
        if !cur.support().contains(&i) {
            stack.push((i + 1, cur));
            continue;
        }
        stack.push((i + 1, cur.set_to_zero(&[i])));
        stack.push((i + 1, cur.set_to_one(&[i])));
        stack.push((i + 1, cur));
    }
    let minors: Vec<MonomialIdeal> = seen.into_iter().collect();
    let verdicts = par::map(&minors, is_koenig);
    for v in verdicts {
        if !v? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Supports `F_1, ..., F_t` with `I = P_{F_1} ... P_{F_t}` and the `F_i`
/// pairwise disjoint, or `None`. In such a product two variables never share
/// a generator exactly when they lie in the same block.
pub fn disjoint_prime_product_form(ideal: &MonomialIdeal) -> Result<Option<Vec<Vec<usize>>>> {
    require_proper_squarefree(ideal)?;
    let supp = ideal.support();
    let gens = masks(ideal);
    let together = |i: usize, j: usize| gens.iter().any(|&g| g >> (i % 64) & 1 == 1 && g >> (j % 64) & 1 == 1);
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for &v in &supp {
        match blocks.iter_mut().find(|b| !together(b[0], v)) {
            Some(b) => b.push(v),
            None => blocks.push(vec![v]),
        }
    }
    for b in &blocks {
        for (x, &i) in b.iter().enumerate() {
            if b[x + 1..].iter().any(|&j| together(i, j)) {
                return Ok(None);
            }
        }
    }
    for (x, b) in blocks.iter().enumerate() {
        for c in &blocks[x + 1..] {
            if b.iter().any(|&i| c.iter().any(|&j| !together(i, j))) {
                return Ok(None);
            }
        }
    }
    let t = blocks.len() as u32;
    if ideal.gens().iter().any(|g| g.degree() != t) {
        return Ok(None);
    }
    let product: usize = blocks.iter().map(|b| b.len()).product();
    if product != ideal.num_gens() {
        return Ok(None);
    }
    Ok(Some(blocks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::veronese;
    use crate::format::parse_ideal;

    fn p(text: &str, n: usize) -> MonomialIdeal {
        parse_ideal(text, Some(n)).unwrap()
    }

    #[test]
    fn minor_examples() {
        let i43 = veronese(4, 3);
        let z = MinorAssignment::new(vec![3], vec![]).unwrap();
        assert_eq!(minor(&i43, &z).unwrap(), p("x1*x2*x3", 4));
        let o = MinorAssignment::new(vec![], vec![3]).unwrap();
        assert_eq!(minor(&i43, &o).unwrap(), p("x1*x2, x1*x3, x2*x3", 4));
        assert_eq!(minor(&i43, &MinorAssignment::default()).unwrap(), i43);
        assert!(minor(&p("x1^2", 1), &MinorAssignment::default()).is_err());
        assert!(MinorAssignment::new(vec![1], vec![1]).is_err());
    }

    #[test]
    fn koenig_examples() {
        assert!(is_koenig(&p("x1*x2, x3*x4", 4)).unwrap());
        assert!(!is_koenig(&veronese(4, 3)).unwrap());
        assert!(is_koenig(&p("x2, x3, x5", 5)).unwrap());
        assert_eq!(squarefree_height(&veronese(4, 3)).unwrap(), 2);
    }

    #[test]
    fn packed_examples() {
        let prod = p("x1, x2", 4).multiply(&p("x3, x4", 4)).unwrap();
        assert!(is_packed(&prod, DEFAULT_PACKED_MAX_N).unwrap());
        assert!(!is_packed(&veronese(4, 3), DEFAULT_PACKED_MAX_N).unwrap());
        let c5 = p("x1*x2, x2*x3, x3*x4, x4*x5, x1*x5", 5);
        assert!(!is_packed(&c5, DEFAULT_PACKED_MAX_N).unwrap());
        assert!(matches!(is_packed(&prod, 3), Err(Error::Resource(_))));
    }

    #[test]
    fn disjoint_form_examples() {
        let f = disjoint_prime_product_form(&p("x1*x3, x1*x4, x2*x3, x2*x4", 4)).unwrap();
        assert_eq!(f, Some(vec![vec![0, 1], vec![2, 3]]));
        assert_eq!(disjoint_prime_product_form(&veronese(4, 3)).unwrap(), None);
        let f = disjoint_prime_product_form(&p("x1*x2*x3", 3)).unwrap();
        assert_eq!(f, Some(vec![vec![0], vec![1], vec![2]]));
        assert_eq!(disjoint_prime_product_form(&p("x1*x2, x3*x4", 4)).unwrap(), None);
        assert_eq!(disjoint_prime_product_form(&p("x1*x3, x1*x4, x2*x3", 4)).unwrap(), None);
    }
}
