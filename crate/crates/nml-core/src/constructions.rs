//! Frame transformations with provable effect on the near-miss index,
//! Hamming-code generation over GF(q), and covering-radius-one designs at
//! length three.
//!
//! `extend_length` and `lift_code` are one construction exposed under two
//! contracts: the former grows the index by the closed form
//! `NM' = 1 − n(1−NM)/(n+1)`, the latter preserves the covering radius.

use crate::error::Error;
use crate::field::FieldTable;
use crate::nm;
use crate::search::{self, SearchMode, SearchOptions};
use crate::space::{space_size, Limits, LotteryFrame, OutcomeIndex};

/// Parameters of a perfect radius-one code: a prime-power alphabet `q` and
/// redundancy `m` give length `(q^m − 1)/(q − 1)` and `q^{n−m}` codewords.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HammingCodeParams {
    q: u32,
    m: u32,
    n: u64,
}

impl HammingCodeParams {
    pub fn new(q: u32, m: u32) -> Result<Self, Error> {
        if !FieldTable::is_supported_order(q) {
            return Err(Error::UnsupportedField { q });
        }
        if m < 1 {
            return Err(Error::InvalidParameter(
                "redundancy m must be at least 1".into(),
            ));
        }
        let qm = (q as u64)
            .checked_pow(m)
            .ok_or(Error::SpaceOverflow { q, n: m })?;
        Ok(HammingCodeParams {
            q,
            m,
            n: (qm - 1) / (q as u64 - 1),
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Code length `(q^m − 1)/(q − 1)`.
    pub fn length(&self) -> u64 {
        self.n
    }

    /// Codeword count `q^{n−m}`, when it fits in 64 bits.
    pub fn code_size(&self) -> Option<u64> {
        let exp = u32::try_from(self.n.checked_sub(self.m as u64)?).ok()?;
        (self.q as u64).checked_pow(exp)
    }
}

/// Refold a frame over alphabet `base^t` into one over `base` with length
/// `t·n`: every symbol expands to its `t` base-`base` digits, least
/// significant first. With that digit order the radix expansions nest, so
/// each outcome keeps its numeric index and the winning set carries over
/// verbatim. Win probability is unchanged and the index never decreases.
pub fn fold_alphabet(frame: &LotteryFrame, base: u32, t: u32) -> Result<LotteryFrame, Error> {
    if base < 2 {
        return Err(Error::InvalidAlphabet { q: base });
    }
    if t < 1 {
        return Err(Error::InvalidParameter("t must be at least 1".into()));
    }
    let expected = (base as u64).checked_pow(t);
    if expected != Some(frame.q() as u64) {
        return Err(Error::AlphabetNotPower {
            q: frame.q(),
            base,
            t,
        });
    }
    let n_new = frame
        .n()
        .checked_mul(t)
        .ok_or(Error::InvalidParameter("t·n overflows".into()))?;
    space_size(base, n_new)?;
    LotteryFrame::new(base, n_new, frame.winners().to_vec())
}

/// Split every symbol into `t` interchangeable copies: alphabet `t·q`, same
/// length, each winner fanned out to the `t^n` outcomes that project back
/// onto it. Copy `i` of symbol `s` is encoded as `s·t + i`, so integer
/// division by `t` recovers the original symbol. Win probability and index
/// are both unchanged.
pub fn split_symbols(frame: &LotteryFrame, t: u32, limits: &Limits) -> Result<LotteryFrame, Error> {
    if t < 1 {
        return Err(Error::InvalidParameter("t must be at least 1".into()));
    }
    if t == 1 {
        return Ok(frame.clone());
    }
    let q_new = frame
        .q()
        .checked_mul(t)
        .ok_or(Error::InvalidParameter("t·q overflows".into()))?;
    let space_new = space_size(q_new, frame.n())?;
    limits.check(space_new)?;
    let n = frame.n() as usize;
    let t_pow_n = (t as u64)
        .checked_pow(frame.n())
        .ok_or(Error::SpaceOverflow { q: t, n: frame.n() })?;
    let mut winners = Vec::with_capacity((frame.win_count() * t_pow_n) as usize);
    for w in frame.winners() {
        let digits = w.decode(frame.q(), frame.n());
        let mut copies = vec![0u32; n];
        'fanout: loop {
            let row: Vec<u32> = digits
                .iter()
                .zip(&copies)
                .map(|(&s, &i)| s * t + i)
                .collect();
            winners.push(OutcomeIndex::encode(&row, q_new)?);
            let mut j = 0;
            loop {
                if j == n {
                    break 'fanout;
                }
                copies[j] += 1;
                if copies[j] < t {
                    break;
                }
                copies[j] = 0;
                j += 1;
            }
        }
    }
    LotteryFrame::new(q_new, frame.n(), winners)
}

/// Append one free coordinate: `W' = {(w, s) : w ∈ W, s ∈ Q}`. The minimal
/// distance of every outcome is unchanged while the length grows by one, so
/// the index rises to `1 − n(1−NM)/(n+1)` and the covering radius is
/// preserved.
pub fn extend_length(frame: &LotteryFrame) -> Result<LotteryFrame, Error> {
    let n_new = frame
        .n()
        .checked_add(1)
        .ok_or(Error::InvalidParameter("n+1 overflows".into()))?;
    space_size(frame.q(), n_new)?;
    let old_space = frame.space_size();
    let mut winners = Vec::with_capacity((frame.win_count() * frame.q() as u64) as usize);
    for w in frame.winners() {
        for s in 0..frame.q() as u64 {
            winners.push(OutcomeIndex(w.0 + s * old_space));
        }
    }
    LotteryFrame::new(frame.q(), n_new, winners)
}

/// Covering-code length lift: same construction as [`extend_length`],
/// giving a length-`n+1` code of `q·|W|` codewords with the same radius.
pub fn lift_code(frame: &LotteryFrame) -> Result<LotteryFrame, Error> {
    extend_length(frame)
}

/// The Hamming code for the given parameters: the null space of the m×n
/// parity-check matrix whose columns are the normalized representatives
/// (first nonzero coordinate scaled to 1) of the one-dimensional subspaces
/// of GF(q)^m, in lexicographic column order. The result has `q^{n−m}`
/// winners, covering radius 1, and every loser exactly one winning
/// neighbor.
pub fn hamming_code(
    params: &HammingCodeParams,
    field: &FieldTable,
    limits: &Limits,
) -> Result<LotteryFrame, Error> {
    if field.order() != params.q() {
        return Err(Error::InvalidParameter(format!(
            "field order {} does not match q={}",
            field.order(),
            params.q()
        )));
    }
    let q = params.q();
    let m = params.m();
    let n = u32::try_from(params.length()).map_err(|_| Error::SpaceOverflow { q, n: u32::MAX })?;
    let space = space_size(q, n)?;
    limits.check(space)?;

    let qm = (q as u64).pow(m);
    let mut columns: Vec<Vec<u32>> = Vec::with_capacity(n as usize);
    for v in 1..qm {
        let digits = OutcomeIndex(v).decode(q, m);
        let first_nonzero = digits.iter().position(|&d| d != 0).expect("v > 0");
        if digits[first_nonzero] == 1 {
            columns.push(digits);
        }
    }
    columns.sort_unstable();
    if columns.len() != n as usize {
        return Err(Error::Internal(format!(
            "expected {n} normalized columns, found {}",
            columns.len()
        )));
    }

    // row-reduce H and read a null-space basis off the free columns
    let rows = m as usize;
    let cols = n as usize;
    let mut h: Vec<Vec<u32>> = (0..rows)
        .map(|r| columns.iter().map(|c| c[r]).collect())
        .collect();
    let mut pivot_cols = Vec::with_capacity(rows);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot_row) = (rank..rows).find(|&r| h[r][col] != 0) else {
            continue;
        };
        h.swap(rank, pivot_row);
        let inv = field.inv(h[rank][col]);
        for entry in h[rank][col..].iter_mut() {
            *entry = field.mul(*entry, inv);
        }
        let lead = h[rank].clone();
        for (r, row) in h.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let factor = row[col];
                for (entry, &pivot) in row[col..].iter_mut().zip(&lead[col..]) {
                    *entry = field.sub(*entry, field.mul(factor, pivot));
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
    }
    if rank != rows {
        return Err(Error::Internal("parity-check matrix lost rank".into()));
    }

    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    let basis: Vec<Vec<u32>> = free_cols
        .iter()
        .map(|&f| {
            let mut x = vec![0u32; cols];
            x[f] = 1;
            for (r, &pc) in pivot_cols.iter().enumerate() {
                x[pc] = field.neg(h[r][f]);
            }
            x
        })
        .collect();

    let dim = basis.len();
    let mut winners = Vec::with_capacity((q as u64).pow(dim as u32) as usize);
    let mut coeffs = vec![0u32; dim];
    'words: loop {
        let mut word = vec![0u32; cols];
        for (j, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                for (xi, &bi) in word.iter_mut().zip(&basis[j]) {
                    *xi = field.add(*xi, field.mul(c, bi));
                }
            }
        }
        winners.push(OutcomeIndex::encode(&word, q)?);
        let mut j = 0;
        loop {
            if j == dim {
                break 'words;
            }
            coeffs[j] += 1;
            if coeffs[j] < q {
                break;
            }
            coeffs[j] = 0;
            j += 1;
        }
    }
    LotteryFrame::new(q, n, winners)
}

/// Convenience wrapper that builds the field tables internally.
pub fn hamming_frame(q: u32, m: u32, limits: &Limits) -> Result<LotteryFrame, Error> {
    let params = HammingCodeParams::new(q, m)?;
    let field = FieldTable::new(q)?;
    hamming_code(&params, &field, limits)
}

/// A covering-radius-one frame of length 3 with the optimal winner count
/// ⌊(q²+1)/2⌋, found by seeded greedy-plus-repair search at the known
/// target size and verified by an exhaustive radius check. The size is
/// attainable for every q ≥ 2, so missing it signals a bug.
pub fn radius1_length3_code(q: u32, seed: u64, limits: &Limits) -> Result<LotteryFrame, Error> {
    let target = (q as u64 * q as u64).div_ceil(2);
    let space = space_size(q, 3)?;
    limits.check(space)?;
    let opts = SearchOptions {
        seed,
        target_size: Some(target as usize),
        ..SearchOptions::default()
    };
    let cert = search::minimal_covering_code(q, 3, 1, SearchMode::Heuristic, &opts, limits)?;
    let frame = cert.frame;
    if frame.win_count() != target || nm::covering_radius(&frame, limits)? != 1 {
        return Err(Error::Internal(format!(
            "length-3 search missed the target size {target} for q={q} (got {})",
            frame.win_count()
        )));
    }
    Ok(frame)
}
