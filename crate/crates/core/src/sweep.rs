//! Exhaustive sweeps over small families: regularity of symbolic versus
//! ordinary powers, componentwise linearity of symbolic powers, and the
//! packing equivalence for matroidal ideals.

use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{enumerate_matroidal, enumerate_polymatroidal};
use crate::ideal::MonomialIdeal;
use crate::linearity::{
    is_componentwise_linear, linear_quotients_order, regularity_by_betti, BettiOptions, DEFAULT_NODE_BUDGET,
};
use crate::packing::{disjoint_prime_product_form, is_packed, DEFAULT_PACKED_MAX_N};
use crate::par;
use crate::symbolic::{powers_coincide_with, symbolic_power_with, SymbolicOptions};

#[derive(Clone, Copy, Debug)]
pub struct SweepOptions {
    pub k_max: u32,
    pub betti: BettiOptions,
    pub node_budget: u64,
    pub symbolic: SymbolicOptions,
    /// Attach wall-clock times to records. Off by default so that reports
    /// are reproducible byte for byte.
    pub timing: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            k_max: 3,
            betti: BettiOptions::default(),
            node_budget: DEFAULT_NODE_BUDGET,
            symbolic: SymbolicOptions::default(),
            timing: false,
        }
    }
}

/// A family to sweep. Caps are part of the selector and end up in the
/// report header.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Family {
    /// Every matroidal ideal in `n` variables for `n <= max_n`, all degrees.
    Matroidal { max_n: usize },
    /// Every polymatroidal ideal in `n <= max_n` variables of degree at most
    /// `max_degree` with exponents at most `exponent_cap`.
    Polymatroidal { max_n: usize, max_degree: u32, exponent_cap: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Instance {
    pub label: String,
    pub n: usize,
    pub ideal: MonomialIdeal,
}

pub fn instances(family: &Family) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    match *family {
        Family::Matroidal { max_n } => {
            for n in 1..=max_n {
                for d in 1..=n as u32 {
                    for (i, ideal) in enumerate_matroidal(n, d)?.into_iter().enumerate() {
                        out.push(Instance { label: format!("matroidal n={n} d={d} #{i}"), n, ideal });
                    }
                }
            }
        }
        Family::Polymatroidal { max_n, max_degree, exponent_cap } => {
            for n in 1..=max_n {
                for d in 1..=max_degree {
                    for (i, ideal) in enumerate_polymatroidal(n, d, exponent_cap)?.into_iter().enumerate() {
                        out.push(Instance { label: format!("polymatroidal n={n} d={d} #{i}"), n, ideal });
                    }
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerRecord {
    pub k: u32,
    pub alpha: u32,
    pub omega: u32,
    pub reg_symbolic: u32,
    pub reg_ordinary: u32,
    /// `None` when the search ran out of budget.
    pub lq_witness_found: Option<bool>,
    pub cwl: bool,
    pub equals_ordinary: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    /// `reg I^(k) = reg I^k` for every `k <= k_max`.
    pub a: bool,
    /// `I^(k)` componentwise linear for every `k <= k_max`.
    pub b: bool,
    /// Componentwise linear symbolic powers have regularity `omega`.
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Outcome {
    Verified { records: Vec<PowerRecord>, verdicts: Verdicts },
    Counterexample { records: Vec<PowerRecord>, verdicts: Verdicts },
    Skipped { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub instance: String,
    pub ideal: String,
    pub n: usize,
    pub k_max: u32,
    #[serde(flatten)]
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

/// Process exit status for a batch of reports: 0 when everything verified,
/// 1 on any counterexample, 2 when something was skipped.
pub fn exit_code(reports: &[SweepReport]) -> i32 {
    if reports.iter().any(|r| matches!(r.outcome, Outcome::Counterexample { .. })) {
        1
    } else if reports.iter().any(|r| matches!(r.outcome, Outcome::Skipped { .. })) {
        2
    } else {
        0
    }
}

fn power_record(ideal: &MonomialIdeal, k: u32, opts: &SweepOptions) -> Result<PowerRecord> {
    let sym = symbolic_power_with(ideal, k, opts.symbolic)?;
    let ord = ideal.power(k)?;
    let lq = match linear_quotients_order(&sym, None, opts.node_budget) {
        Ok(w) => Some(w.is_some()),
        Err(Error::Resource(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(PowerRecord {
        k,
        alpha: sym.alpha().expect("nonzero"),
        omega: sym.omega().expect("nonzero"),
        reg_symbolic: regularity_by_betti(&sym, opts.betti)?,
        reg_ordinary: regularity_by_betti(&ord, opts.betti)?,
        lq_witness_found: lq,
        cwl: is_componentwise_linear(&sym, opts.betti)?,
        equals_ordinary: sym == ord,
    })
}

fn records_for(ideal: &MonomialIdeal, opts: &SweepOptions) -> Result<Vec<PowerRecord>> {
    (1..=opts.k_max).map(|k| power_record(ideal, k, opts)).collect()
}

/// Regularity equality and componentwise linearity of `I^(k)` for one
/// ideal, up to `k_max`.
pub fn verify_ideal(label: &str, ideal: &MonomialIdeal, opts: &SweepOptions) -> SweepReport {
    let start = Instant::now();
    let outcome = if !ideal.is_proper_nonzero() {
        Outcome::Skipped { reason: "the ideal must be proper and nonzero".into() }
    } else {
        match records_for(ideal, opts) {
            Ok(records) => {
                let verdicts = Verdicts {
                    a: records.iter().all(|r| r.reg_symbolic == r.reg_ordinary),
                    b: records.iter().all(|r| r.cwl),
                    consistent: records.iter().all(|r| !r.cwl || r.reg_symbolic == r.omega),
                };
                if verdicts.a && verdicts.b && verdicts.consistent {
                    Outcome::Verified { records, verdicts }
                } else {
                    Outcome::Counterexample { records, verdicts }
                }
            }
            Err(e) => Outcome::Skipped { reason: e.to_string() },
        }
    };
    SweepReport {
        instance: label.to_string(),
        ideal: ideal.to_string(),
        n: ideal.n(),
        k_max: opts.k_max,
        outcome,
        elapsed_ms: opts.timing.then(|| start.elapsed().as_millis()),
    }
}

/// Reports in enumeration order; instances run in parallel.
pub fn verify_conjectures(family: &Family, opts: &SweepOptions) -> Result<Vec<SweepReport>> {
    let list = instances(family)?;
    Ok(par::map(&list, |inst| verify_ideal(&inst.label, &inst.ideal, opts)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PackingRecord {
    pub ideal: String,
    pub packed: bool,
    pub disjoint_form: bool,
    pub powers_coincide_k3: bool,
}

impl PackingRecord {
    /// The three properties agree.
    pub fn agrees(&self) -> bool {
        self.packed == self.disjoint_form && self.disjoint_form == self.powers_coincide_k3
    }
}

/// Every matroidal ideal in at most `max_n` variables, with its packing
/// data.
pub fn packing_sweep(max_n: usize) -> Result<Vec<PackingRecord>> {
    let list = instances(&Family::Matroidal { max_n })?;
    let rows = par::map(&list, |inst| -> Result<PackingRecord> {
        let coincide = powers_coincide_with(&inst.ideal, 3, SymbolicOptions::default())?;
        Ok(PackingRecord {
            ideal: inst.ideal.to_string(),
            packed: is_packed(&inst.ideal, DEFAULT_PACKED_MAX_N)?,
            disjoint_form: disjoint_prime_product_form(&inst.ideal)?.is_some(),
            powers_coincide_k3: coincide.iter().all(|&(_, eq)| eq),
        })
    });
    rows.into_iter().collect()
}
