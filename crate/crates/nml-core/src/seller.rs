//! The seller's design problem: a buyer who values a frame at its index
//! pays index, the seller's cost is the objective win probability, and
//! perfect radius-one frames maximize the difference.

use num::bigint::BigInt;
use num::One;

use crate::bounds;
use crate::constructions::{hamming_frame, HammingCodeParams};
use crate::error::Error;
use crate::nm;
use crate::rational::Rational;
use crate::search::{self, SearchOptions};
use crate::space::{space_size, Limits, LotteryFrame};

/// An optimal design at win probability `1/q^m`.
///
/// `value ≤ bound` always, with `optimal` true exactly at equality.
/// `verified` is true when the frame fit the enumeration cap and the
/// measured value matched the closed form; otherwise the design carries
/// formula values only and no frame.
#[derive(Clone, Debug)]
pub struct SellerDesign {
    pub params: HammingCodeParams,
    pub frame: Option<LotteryFrame>,
    pub win_probability: Rational,
    pub value: Rational,
    pub bound: Rational,
    pub optimal: bool,
    pub verified: bool,
}

fn closed_form(params: &HammingCodeParams) -> (Rational, Rational) {
    let qm = BigInt::from(params.q()).pow(params.m());
    let n = BigInt::from(params.length());
    let p = Rational::new(BigInt::one(), qm.clone());
    let value = Rational::new(&n - 1, n) * Rational::new(&qm - 1, qm);
    (p, value)
}

fn design_from_formula(params: HammingCodeParams) -> Result<SellerDesign, Error> {
    let (p, value) = closed_form(&params);
    let bound = bounds::seller_value_upper_bound(params.length(), &p)?;
    if value != bound {
        return Err(Error::Internal(
            "perfect-frame value must meet the seller bound with equality".into(),
        ));
    }
    Ok(SellerDesign {
        params,
        frame: None,
        win_probability: p,
        value,
        bound,
        optimal: true,
        verified: false,
    })
}

/// Build the optimal design for `(q, m)`: the Hamming frame of length
/// `(q^m − 1)/(q − 1)` with `q^{n−m}` winners, whose measured value equals
/// `(n−1)/n · (q^m−1)/q^m` exactly and meets the seller bound with
/// equality.
pub fn design_optimal(q: u32, m: u32, limits: &Limits) -> Result<SellerDesign, Error> {
    let params = HammingCodeParams::new(q, m)?;
    let mut design = design_from_formula(params)?;
    let frame = hamming_frame(q, m, limits)?;
    let measured = nm::seller_value(&frame, limits)?;
    if measured != design.value {
        return Err(Error::Internal(format!(
            "measured seller value {measured} disagrees with the closed form {}",
            design.value
        )));
    }
    design.frame = Some(frame);
    design.verified = true;
    Ok(design)
}

/// True iff no length shorter than `(q^m − 1)/(q − 1)` attains the maximal
/// seller value at win probability `1/q^m`. A shorter length `n'` would
/// need a radius-≤1 code of `q^{n'−m}` words; each candidate length is
/// refuted by exhaustive frame search where the subset count is feasible
/// and by the exact cover decision otherwise.
pub fn minimal_length_check(
    q: u32,
    m: u32,
    opts: &SearchOptions,
    limits: &Limits,
) -> Result<bool, Error> {
    let params = HammingCodeParams::new(q, m)?;
    for shorter in 1..params.length() {
        if shorter < m as u64 {
            // |W| = q^{n'-m} is not an integer: p = 1/q^m unrealizable here
            continue;
        }
        let n_prime = u32::try_from(shorter).expect("shorter than a checked length");
        let w_size = (q as u64)
            .checked_pow(n_prime - m)
            .ok_or(Error::SpaceOverflow { q, n: n_prime })?;
        let space = space_size(q, n_prime)?;
        let attained = match search::optimal_frame(q, n_prime, w_size, opts, limits) {
            Ok((_, best_index)) => {
                // radius <= 1 at this size iff every loser sits at distance 1
                let perfect_index = Rational::one()
                    - Rational::new(
                        BigInt::from(space - w_size),
                        BigInt::from(n_prime as u64 * space),
                    );
                best_index == perfect_index
            }
            Err(Error::BudgetExceeded { .. }) => {
                search::cover_exists(q, n_prime, 1, w_size as usize, opts)?
            }
            Err(e) => return Err(e),
        };
        if attained {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Designs for `m = 1..=m_max` at fixed `q`: win probability `1/q^m` falls,
/// value `(n−1)/n·(q^m−1)/q^m` rises toward 1. Designs beyond the
/// enumeration cap carry formula values flagged as unverified instead of
/// failing.
pub fn corollary_schedule(
    q: u32,
    m_max: u32,
    limits: &Limits,
) -> Result<Vec<SellerDesign>, Error> {
    let mut designs = Vec::with_capacity(m_max as usize);
    for m in 1..=m_max {
        let design = match design_optimal(q, m, limits) {
            Ok(d) => d,
            Err(Error::SpaceTooLarge { .. }) => design_from_formula(HammingCodeParams::new(q, m)?)?,
            Err(e) => return Err(e),
        };
        designs.push(design);
    }
    Ok(designs)
}
