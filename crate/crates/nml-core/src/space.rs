//! The q-ary Hamming space: outcome encoding, distance primitives, neighbor
//! enumeration, and the lottery frame `(q, n, W)`.
//!
//! Symbols are canonically `0..q-1`; named alphabets exist only as display
//! labels carried by [`FrameDocument`]. Outcomes are encoded as radix-q
//! integers with the first coordinate least significant, which fixes the
//! file formats bit-exactly.

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::Error;
use crate::rational::{ratio_u64, Rational};

/// Default ceiling on the number of outcomes a dense operation will touch.
pub const DEFAULT_MAX_SPACE: u64 = 1 << 27;

/// Knobs for dense enumeration. Operations that must visit all of `Q^n`
/// refuse spaces larger than `max_space` instead of silently sampling.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_space: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_space: DEFAULT_MAX_SPACE,
        }
    }
}

impl Limits {
    pub fn with_max_space(max_space: u64) -> Self {
        Limits { max_space }
    }

    pub fn check(&self, space: u64) -> Result<(), Error> {
        if space > self.max_space {
            Err(Error::SpaceTooLarge {
                space,
                limit: self.max_space,
            })
        } else {
            Ok(())
        }
    }
}

/// Number of outcomes `q^n`, if it is representable.
pub fn space_size(q: u32, n: u32) -> Result<u64, Error> {
    if q < 2 {
        return Err(Error::InvalidAlphabet { q });
    }
    if n < 1 {
        return Err(Error::InvalidLength { n });
    }
    (q as u64)
        .checked_pow(n)
        .ok_or(Error::SpaceOverflow { q, n })
}

/// One outcome of `Q^n`, encoded as an integer in `[0, q^n)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct OutcomeIndex(pub u64);

impl OutcomeIndex {
    /// Encode a digit vector, first coordinate least significant.
    pub fn encode(digits: &[u32], q: u32) -> Result<Self, Error> {
        space_size(q, digits.len() as u32)?;
        let mut value = 0u64;
        let mut power = 1u64;
        for &d in digits {
            if d >= q {
                return Err(Error::DigitOutOfRange { digit: d, q });
            }
            value += d as u64 * power;
            power = power.saturating_mul(q as u64);
        }
        Ok(OutcomeIndex(value))
    }

    /// Inverse of [`OutcomeIndex::encode`].
    pub fn decode(self, q: u32, n: u32) -> Vec<u32> {
        let q = q as u64;
        let mut digits = Vec::with_capacity(n as usize);
        let mut v = self.0;
        for _ in 0..n {
            digits.push((v % q) as u32);
            v /= q;
        }
        debug_assert_eq!(v, 0, "index out of range for the given space");
        digits
    }
}

/// Number of coordinates at which two equal-length digit vectors differ.
pub fn hamming_distance(x: &[u32], y: &[u32]) -> Result<u32, Error> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    Ok(x.iter().zip(y).filter(|(a, b)| a != b).count() as u32)
}

/// Distance between two encoded outcomes of the same `(q, n)` space.
pub fn index_distance(a: u64, b: u64, q: u32, n: u32) -> u32 {
    if q == 2 {
        return (a ^ b).count_ones();
    }
    let q = q as u64;
    let (mut a, mut b) = (a, b);
    let mut d = 0;
    for _ in 0..n {
        if a % q != b % q {
            d += 1;
        }
        a /= q;
        b /= q;
    }
    d
}

/// The `n·(q−1)` outcomes at Hamming distance exactly 1 from `i`.
pub fn neighbors(i: OutcomeIndex, q: u32, n: u32) -> impl Iterator<Item = OutcomeIndex> {
    let q64 = q as u64;
    let mut powers = Vec::with_capacity(n as usize);
    let mut p = 1u64;
    for _ in 0..n {
        powers.push(p);
        p = p.saturating_mul(q64);
    }
    powers.into_iter().flat_map(move |power| {
        let digit = (i.0 / power) % q64;
        let base = i.0 - digit * power;
        (0..q64)
            .filter(move |&d| d != digit)
            .map(move |d| OutcomeIndex(base + d * power))
    })
}

/// A framed lottery: alphabet size `q`, length `n`, and the winning set,
/// held sorted and duplicate-free so set equality is list equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LotteryFrame {
    q: u32,
    n: u32,
    space: u64,
    winning: Vec<OutcomeIndex>,
}

impl LotteryFrame {
    /// Build a frame; winners are sorted and deduplicated.
    pub fn new(q: u32, n: u32, mut winning: Vec<OutcomeIndex>) -> Result<Self, Error> {
        let space = space_size(q, n)?;
        winning.sort_unstable();
        winning.dedup();
        if winning.is_empty() {
            return Err(Error::EmptyWinningSet);
        }
        if let Some(&last) = winning.last() {
            if last.0 >= space {
                return Err(Error::IndexOutOfRange {
                    index: last.0,
                    space,
                });
            }
        }
        Ok(LotteryFrame {
            q,
            n,
            space,
            winning,
        })
    }

    /// Build a frame from digit vectors; also reports how many duplicate
    /// winners were dropped during canonicalization.
    pub fn from_digit_rows(q: u32, n: u32, rows: &[Vec<u32>]) -> Result<(Self, usize), Error> {
        let mut winners = Vec::with_capacity(rows.len());
        for row in rows {
            if row.len() != n as usize {
                return Err(Error::LengthMismatch {
                    left: row.len(),
                    right: n as usize,
                });
            }
            winners.push(OutcomeIndex::encode(row, q)?);
        }
        let before = winners.len();
        let frame = Self::new(q, n, winners)?;
        let dupes = before - frame.winning.len();
        Ok((frame, dupes))
    }

    /// The frame whose winning set is all of `Q^n`.
    pub fn full(q: u32, n: u32, limits: &Limits) -> Result<Self, Error> {
        let space = space_size(q, n)?;
        limits.check(space)?;
        Self::new(q, n, (0..space).map(OutcomeIndex).collect())
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn space_size(&self) -> u64 {
        self.space
    }

    pub fn winners(&self) -> &[OutcomeIndex] {
        &self.winning
    }

    pub fn win_count(&self) -> u64 {
        self.winning.len() as u64
    }

    pub fn contains(&self, i: OutcomeIndex) -> bool {
        self.winning.binary_search(&i).is_ok()
    }

    pub fn is_full(&self) -> bool {
        self.win_count() == self.space
    }

    /// Objective win probability `|W| / q^n`.
    pub fn win_probability(&self) -> Rational {
        ratio_u64(self.win_count(), self.space)
    }

    /// Winners as digit vectors, in canonical (index) order.
    pub fn winner_digit_rows(&self) -> Vec<Vec<u32>> {
        self.winning
            .iter()
            .map(|w| w.decode(self.q, self.n))
            .collect()
    }
}

fn validate_permutation(perm: &[u32], size: u32, what: &str) -> Result<(), Error> {
    if perm.len() != size as usize {
        return Err(Error::InvalidParameter(format!(
            "{what} permutation must have length {size}"
        )));
    }
    let mut seen = vec![false; size as usize];
    for &v in perm {
        if v >= size || seen[v as usize] {
            return Err(Error::InvalidParameter(format!(
                "{what} permutation is not a bijection on 0..{size}"
            )));
        }
        seen[v as usize] = true;
    }
    Ok(())
}

/// Apply an independent symbol permutation per coordinate to every winner.
/// Such relabelings are isometries of the Hamming space, so every
/// minimal-distance statistic of the frame is unchanged.
pub fn apply_symbol_permutations(
    frame: &LotteryFrame,
    perms: &[Vec<u32>],
) -> Result<LotteryFrame, Error> {
    if perms.len() != frame.n() as usize {
        return Err(Error::InvalidParameter(format!(
            "need one symbol permutation per coordinate ({} given, n={})",
            perms.len(),
            frame.n()
        )));
    }
    for perm in perms {
        validate_permutation(perm, frame.q(), "symbol")?;
    }
    let winners = frame
        .winners()
        .iter()
        .map(|w| {
            let digits: Vec<u32> = w
                .decode(frame.q(), frame.n())
                .iter()
                .zip(perms)
                .map(|(&d, perm)| perm[d as usize])
                .collect();
            OutcomeIndex::encode(&digits, frame.q())
        })
        .collect::<Result<Vec<_>, _>>()?;
    LotteryFrame::new(frame.q(), frame.n(), winners)
}

/// Move the digit at position `j` to position `perm[j]` in every winner.
pub fn apply_coordinate_permutation(
    frame: &LotteryFrame,
    perm: &[u32],
) -> Result<LotteryFrame, Error> {
    validate_permutation(perm, frame.n(), "coordinate")?;
    let winners = frame
        .winners()
        .iter()
        .map(|w| {
            let digits = w.decode(frame.q(), frame.n());
            let mut out = vec![0u32; digits.len()];
            for (j, &d) in digits.iter().enumerate() {
                out[perm[j] as usize] = d;
            }
            OutcomeIndex::encode(&out, frame.q())
        })
        .collect::<Result<Vec<_>, _>>()?;
    LotteryFrame::new(frame.q(), frame.n(), winners)
}

/// A frame plus optional display labels for the alphabet; the JSON wire
/// form used by frame files and the CLI.
///
/// Canonical serialized form: `{"q":..,"n":..,"winning":[[digits],..]}`
/// with winners sorted by outcome index and `labels` present only when set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameDocument {
    pub frame: LotteryFrame,
    pub labels: Option<Vec<String>>,
}

#[derive(Deserialize)]
struct RawFrame {
    q: u32,
    n: u32,
    winning: Vec<Vec<u32>>,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

impl FrameDocument {
    pub fn new(frame: LotteryFrame, labels: Option<Vec<String>>) -> Result<Self, Error> {
        if let Some(ref l) = labels {
            if l.len() != frame.q() as usize {
                return Err(Error::InvalidParameter(format!(
                    "labels must list exactly q={} symbols ({} given)",
                    frame.q(),
                    l.len()
                )));
            }
        }
        Ok(FrameDocument { frame, labels })
    }

    pub fn bare(frame: LotteryFrame) -> Self {
        FrameDocument {
            frame,
            labels: None,
        }
    }

    /// Parse a frame document. Returns the document and the number of
    /// duplicate winners dropped during canonicalization.
    pub fn from_json_str(s: &str) -> Result<(Self, usize), Error> {
        let raw: RawFrame = serde_json::from_str(s)
            .map_err(|e| Error::InvalidParameter(format!("malformed frame JSON: {e}")))?;
        let (frame, dupes) = LotteryFrame::from_digit_rows(raw.q, raw.n, &raw.winning)?;
        let doc = FrameDocument::new(frame, raw.labels)?;
        Ok((doc, dupes))
    }

    /// Canonical single-line JSON.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("frame serialization cannot fail")
    }
}

impl Serialize for FrameDocument {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let fields = 3 + usize::from(self.labels.is_some());
        let mut st = serializer.serialize_struct("FrameDocument", fields)?;
        st.serialize_field("q", &self.frame.q())?;
        st.serialize_field("n", &self.frame.n())?;
        st.serialize_field("winning", &self.frame.winner_digit_rows())?;
        if let Some(ref labels) = self.labels {
            st.serialize_field("labels", labels)?;
        }
        st.end()
    }
}
