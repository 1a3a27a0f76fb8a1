//! Exact near-miss analysis: distance profiles over the implicit Hamming
//! graph, the index itself, covering radius, and the seller's value.

use num::One;

use crate::error::Error;
use crate::rational::{ratio_u64, Rational};
use crate::space::{index_distance, Limits, LotteryFrame};

/// Counts of outcomes by their minimal Hamming distance to the winning set:
/// `counts()[k]` outcomes sit at distance exactly `k`. A sufficient
/// statistic for the index, the win probability, and the covering radius.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceProfile {
    counts: Vec<u64>,
}

impl DistanceProfile {
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Largest distance with a nonzero count.
    pub fn covering_radius(&self) -> u32 {
        self.counts
            .iter()
            .rposition(|&c| c > 0)
            .expect("profile of a nonempty space") as u32
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `Σ k·c_k`, the summed minimal distance over all outcomes.
    pub fn distance_sum(&self) -> u64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(k, &c)| k as u64 * c)
            .sum()
    }
}

/// Full analysis of one frame; all quantities exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NearMissReport {
    pub index: Rational,
    pub win_probability: Rational,
    pub seller_value: Rational,
    pub profile: DistanceProfile,
}

/// Exact profile via multi-source breadth-first traversal seeded at the
/// winning set. One byte of distance state per outcome; total work
/// O(q^n · n · q).
pub fn distance_profile(frame: &LotteryFrame, limits: &Limits) -> Result<DistanceProfile, Error> {
    limits.check(frame.space_size())?;
    let space = frame.space_size();
    let q = frame.q() as u64;
    let n = frame.n() as usize;
    let mut powers = Vec::with_capacity(n);
    let mut p = 1u64;
    for _ in 0..n {
        powers.push(p);
        p = p.saturating_mul(q);
    }

    let mut dist = vec![u8::MAX; space as usize];
    for w in frame.winners() {
        dist[w.0 as usize] = 0;
    }
    let mut remaining = space - frame.win_count();
    let mut level: u8 = 0;
    // Expand level by level with full scans instead of an explicit frontier;
    // the frontier of a dense space can rival the space itself in memory.
    while remaining > 0 {
        if level as usize >= n {
            return Err(Error::Internal(
                "distance transform exceeded the space diameter".into(),
            ));
        }
        for i in 0..space {
            if dist[i as usize] != level {
                continue;
            }
            for &power in &powers {
                let digit = (i / power) % q;
                let base = i - digit * power;
                for d in 0..q {
                    if d == digit {
                        continue;
                    }
                    let nb = (base + d * power) as usize;
                    if dist[nb] == u8::MAX {
                        dist[nb] = level + 1;
                        remaining -= 1;
                    }
                }
            }
        }
        level += 1;
    }

    let mut counts = vec![0u64; n + 1];
    for &d in &dist {
        counts[d as usize] += 1;
    }
    Ok(DistanceProfile { counts })
}

/// Reference profile: a direct minimum over winners for every outcome,
/// O(q^n · |W| · n). Kept as the independent oracle for the traversal above.
pub fn naive_distance_profile(
    frame: &LotteryFrame,
    limits: &Limits,
) -> Result<DistanceProfile, Error> {
    limits.check(frame.space_size())?;
    let n = frame.n();
    let q = frame.q();
    let mut counts = vec![0u64; n as usize + 1];
    for i in 0..frame.space_size() {
        let mut best = n;
        for w in frame.winners() {
            let d = index_distance(i, w.0, q, n);
            if d < best {
                best = d;
                if best == 0 {
                    break;
                }
            }
        }
        counts[best as usize] += 1;
    }
    Ok(DistanceProfile { counts })
}

/// The near-miss index and its companions, all exact: the index is
/// `1 − (Σ k·c_k)/(n·q^n)`, the expectation of `1 − min_dist/n` over the
/// whole space (winners included at distance zero).
pub fn near_miss_report(frame: &LotteryFrame, limits: &Limits) -> Result<NearMissReport, Error> {
    let profile = distance_profile(frame, limits)?;
    let weighted = profile.distance_sum();
    let index = Rational::one() - ratio_u64(weighted, frame.n() as u64 * frame.space_size());
    let win_probability = frame.win_probability();
    let seller_value = &index - &win_probability;
    Ok(NearMissReport {
        index,
        win_probability,
        seller_value,
        profile,
    })
}

pub fn near_miss_index(frame: &LotteryFrame, limits: &Limits) -> Result<Rational, Error> {
    Ok(near_miss_report(frame, limits)?.index)
}

/// Largest minimal distance any outcome has to the winning set.
pub fn covering_radius(frame: &LotteryFrame, limits: &Limits) -> Result<u32, Error> {
    Ok(distance_profile(frame, limits)?.covering_radius())
}

/// Index minus win probability: what a designer pockets when the buyer
/// values the frame at its index.
pub fn seller_value(frame: &LotteryFrame, limits: &Limits) -> Result<Rational, Error> {
    Ok(near_miss_report(frame, limits)?.seller_value)
}

/// True iff every losing outcome has exactly one winner among its
/// distance-1 neighbors (vacuously true when there are no losers).
pub fn is_perfect_radius1(frame: &LotteryFrame, limits: &Limits) -> Result<bool, Error> {
    limits.check(frame.space_size())?;
    let space = frame.space_size();
    let q = frame.q() as u64;
    let n = frame.n() as usize;
    let mut is_winner = vec![false; space as usize];
    for w in frame.winners() {
        is_winner[w.0 as usize] = true;
    }
    let mut powers = Vec::with_capacity(n);
    let mut p = 1u64;
    for _ in 0..n {
        powers.push(p);
        p = p.saturating_mul(q);
    }
    for i in 0..space {
        if is_winner[i as usize] {
            continue;
        }
        let mut winners_adjacent = 0u32;
        for &power in &powers {
            let digit = (i / power) % q;
            let base = i - digit * power;
            for d in 0..q {
                if d != digit && is_winner[(base + d * power) as usize] {
                    winners_adjacent += 1;
                }
            }
        }
        if winners_adjacent != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}
