//! Closed-form bounds: the M-bound and its threshold probability, the
//! regime bounds on the index-to-probability ratio, the sphere covering
//! bound, and the seller-value ceiling.

use num::bigint::{BigInt, BigUint};
use num::integer::binomial;
use num::{One, Signed, Zero};

use crate::error::Error;
use crate::rational::{ratio_u64, Rational};

/// One row of the M-bound table: the threshold probability `(q²+1)/(2q³)`
/// and the ratio bound `M = (2q³(n−1)+q²+1)/(n(q²+1))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MBoundRow {
    pub q: u32,
    pub n: u32,
    pub threshold_p: Rational,
    pub m: Rational,
}

/// The `(q, n)` grid of the standard demonstration table.
pub const M_BOUND_GRID: [(u32, u32); 10] = [
    (2, 2),
    (2, 10),
    (5, 2),
    (5, 10),
    (8, 2),
    (8, 10),
    (11, 2),
    (11, 10),
    (14, 2),
    (14, 10),
];

pub fn m_bound(q: u32, n: u32) -> MBoundRow {
    debug_assert!(q >= 2 && n >= 1);
    let qb = BigInt::from(q);
    let nb = BigInt::from(n);
    let q2 = &qb * &qb;
    let q3 = &q2 * &qb;
    let threshold_p = Rational::new(&q2 + 1, 2 * &q3);
    let m = Rational::new(2 * &q3 * (&nb - 1) + &q2 + 1, &nb * (&q2 + 1));
    MBoundRow {
        q,
        n,
        threshold_p,
        m,
    }
}

/// Existence bounds on `NM/p` for a realizable win probability `p`: below
/// the threshold the ratio can be pushed into `[M, q^{n−1}]`, above it into
/// `[1, M]`; exactly at the threshold the two regimes meet at `M`.
///
/// `p` must satisfy `0 < p ≤ 1` with `p·q^n` an integer.
pub fn ratio_bounds(q: u32, n: u32, p: &Rational) -> Result<(Rational, Rational), Error> {
    if q < 2 {
        return Err(Error::InvalidAlphabet { q });
    }
    if n < 1 {
        return Err(Error::InvalidLength { n });
    }
    let space = BigInt::from(q).pow(n);
    let space_u64 = crate::space::space_size(q, n).unwrap_or(u64::MAX);
    let realizable = p.is_positive()
        && *p <= Rational::one()
        && (p * Rational::from_integer(space.clone())).is_integer();
    if !realizable {
        return Err(Error::UnrealizableProbability {
            p: format!("{p}"),
            space: space_u64,
        });
    }
    let row = m_bound(q, n);
    let bounds = match p.cmp(&row.threshold_p) {
        std::cmp::Ordering::Less => (
            row.m,
            Rational::from_integer(BigInt::from(q).pow(n - 1)),
        ),
        std::cmp::Ordering::Greater => (Rational::one(), row.m),
        std::cmp::Ordering::Equal => (row.m.clone(), row.m),
    };
    Ok(bounds)
}

/// `⌈q^n / Σ_{i=0}^{R} C(n,i)(q−1)^i⌉`: no code of covering radius at most
/// `R` can be smaller.
pub fn sphere_covering_bound(q: u32, n: u32, r: u32) -> Result<BigUint, Error> {
    if q < 2 {
        return Err(Error::InvalidAlphabet { q });
    }
    if n < 1 {
        return Err(Error::InvalidLength { n });
    }
    if r > n {
        return Err(Error::InvalidParameter(format!(
            "covering radius {r} exceeds the length {n}"
        )));
    }
    let numerator = BigUint::from(q).pow(n);
    let mut ball = BigUint::zero();
    for i in 0..=r {
        ball += binomial(BigUint::from(n), BigUint::from(i))
            * BigUint::from(q - 1).pow(i);
    }
    Ok((&numerator + &ball - BigUint::one()) / &ball)
}

/// `(n−1)/n · (1−p*)`: the ceiling on index minus win probability once the
/// probability is at most `p*`.
pub fn seller_value_upper_bound(n: u64, p_star: &Rational) -> Result<Rational, Error> {
    if n < 1 {
        return Err(Error::InvalidLength { n: 0 });
    }
    if !p_star.is_positive() || *p_star > Rational::one() {
        return Err(Error::InvalidParameter(format!(
            "p* must lie in (0, 1], got {p_star}"
        )));
    }
    let length_factor = Rational::new(BigInt::from(n - 1), BigInt::from(n));
    Ok(length_factor * (Rational::one() - p_star))
}

/// The index of any single-winner frame.
pub fn single_winner_index(q: u32) -> Rational {
    ratio_u64(1, q as u64)
}

/// Average minimal distance `n(q−1)/q` under a single winner; the value
/// behind [`single_winner_index`].
pub fn single_winner_expected_distance(q: u32, n: u32) -> Rational {
    ratio_u64(n as u64 * (q as u64 - 1), q as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{decimal_string, ratio};
    use num::ToPrimitive;

    #[test]
    fn m_bound_table_rows() {
        assert_eq!(m_bound(2, 2).threshold_p, ratio(5, 16));
        assert_eq!(m_bound(2, 2).m, ratio(21, 10));
        assert_eq!(decimal_string(&m_bound(2, 2).m, 2), "2.10");
        assert_eq!(decimal_string(&m_bound(5, 10).m, 2), "8.75");
        assert_eq!(decimal_string(&m_bound(14, 10).threshold_p, 4), "0.0359");
        assert_eq!(decimal_string(&m_bound(14, 10).m, 2), "25.17");
    }

    #[test]
    fn ratio_bounds_regimes() {
        // single winner: upper bound q^{n-1}
        let (lo, hi) = ratio_bounds(2, 3, &ratio(1, 8)).unwrap();
        assert_eq!(hi, ratio(4, 1));
        assert_eq!(lo, m_bound(2, 3).m);
        // p = 1 sits above the threshold; the lower bound 1 is attained
        let (lo, hi) = ratio_bounds(2, 3, &ratio(1, 1)).unwrap();
        assert_eq!(lo, ratio(1, 1));
        assert_eq!(hi, m_bound(2, 3).m);
        // exactly at the threshold both regimes agree at M
        let (lo, hi) = ratio_bounds(2, 4, &ratio(5, 16)).unwrap();
        assert_eq!(lo, m_bound(2, 4).m);
        assert_eq!(hi, m_bound(2, 4).m);
    }

    #[test]
    fn ratio_bounds_below_threshold_allows_large_ratio() {
        // q=2, n=3, p=1/4: M = (2·8·2 + 5)/(3·5) = 37/15; the best known
        // two-winner frame reaches ratio (3/4)/(1/4) = 3 >= M
        let (lo, hi) = ratio_bounds(2, 3, &ratio(1, 4)).unwrap();
        assert_eq!(lo, ratio(37, 15));
        assert!(ratio(3, 1) >= lo && ratio(3, 1) <= hi);
    }

    #[test]
    fn ratio_bounds_rejects_unrealizable_p() {
        assert!(matches!(
            ratio_bounds(2, 3, &ratio(1, 3)),
            Err(Error::UnrealizableProbability { .. })
        ));
        assert!(matches!(
            ratio_bounds(2, 3, &ratio(0, 1)),
            Err(Error::UnrealizableProbability { .. })
        ));
        assert!(matches!(
            ratio_bounds(2, 3, &ratio(9, 8)),
            Err(Error::UnrealizableProbability { .. })
        ));
    }

    #[test]
    fn sphere_bound_values() {
        assert_eq!(
            sphere_covering_bound(2, 5, 1).unwrap().to_u64().unwrap(),
            6
        );
        assert_eq!(
            sphere_covering_bound(2, 7, 1).unwrap().to_u64().unwrap(),
            16
        );
        // R = n: one ball covers the whole space
        assert_eq!(
            sphere_covering_bound(3, 4, 4).unwrap().to_u64().unwrap(),
            1
        );
        assert!(sphere_covering_bound(2, 3, 4).is_err());
    }

    #[test]
    fn seller_ceiling() {
        assert_eq!(
            seller_value_upper_bound(7, &ratio(1, 8)).unwrap(),
            ratio(3, 4)
        );
        assert_eq!(
            seller_value_upper_bound(1, &ratio(1, 2)).unwrap(),
            ratio(0, 1)
        );
        assert_eq!(
            seller_value_upper_bound(9, &ratio(1, 1)).unwrap(),
            ratio(0, 1)
        );
        assert!(seller_value_upper_bound(3, &ratio(0, 1)).is_err());
    }

    #[test]
    fn single_winner_values() {
        assert_eq!(single_winner_index(2), ratio(1, 2));
        assert_eq!(single_winner_index(10), ratio(1, 10));
        assert_eq!(single_winner_expected_distance(3, 2), ratio(4, 3));
        // n(q-1)q^{n-1}/q^n with q=2, n=3 is 12/8
        assert_eq!(single_winner_expected_distance(2, 3), ratio(3, 2));
    }

    #[test]
    fn m_bound_monotone_in_q_and_n() {
        for q in 2..=16u32 {
            for n in 2..=12u32 {
                let here = m_bound(q, n).m;
                assert!(m_bound(q, n + 1).m > here);
                assert!(m_bound(q + 1, n).m > here);
            }
        }
    }
}
