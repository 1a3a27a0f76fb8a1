//! Dense arithmetic tables for GF(q).
//!
//! Prime orders are plain modular arithmetic; prime-power orders use
//! polynomial arithmetic over GF(p) modulo a fixed irreducible polynomial.
//! Every table is validated against the field axioms exhaustively at
//! construction, which is cheap for the supported orders (all at most 31).

use crate::error::Error;

const SUPPORTED_PRIMES: &[u32] = &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31];

/// Monic irreducible polynomials over GF(p), constant term first, leading
/// coefficient (always 1) last.
const IRREDUCIBLE: &[(u32, u32, &[u32])] = &[
    (4, 2, &[1, 1, 1]),        // x^2 + x + 1
    (8, 2, &[1, 1, 0, 1]),     // x^3 + x + 1
    (9, 3, &[1, 0, 1]),        // x^2 + 1
    (16, 2, &[1, 1, 0, 0, 1]), // x^4 + x + 1
    (25, 5, &[1, 1, 1]),       // x^2 + x + 1
    (27, 3, &[1, 2, 0, 1]),    // x^3 + 2x + 1
];

/// Addition, multiplication, negation, and inversion tables for GF(q).
/// Elements are the integers `0..q`; for extension fields the base-p digits
/// of an element are its polynomial coefficients, constant term first.
#[derive(Clone, Debug)]
pub struct FieldTable {
    q: u32,
    characteristic: u32,
    degree: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

impl FieldTable {
    pub fn is_supported_order(q: u32) -> bool {
        SUPPORTED_PRIMES.contains(&q) || IRREDUCIBLE.iter().any(|&(order, _, _)| order == q)
    }

    pub fn new(q: u32) -> Result<Self, Error> {
        let table = if SUPPORTED_PRIMES.contains(&q) {
            Self::build_prime(q)
        } else if let Some(&(_, p, poly)) = IRREDUCIBLE.iter().find(|&&(order, _, _)| order == q) {
            Self::build_extension(q, p, poly)
        } else {
            return Err(Error::UnsupportedField { q });
        };
        table.validate()?;
        Ok(table)
    }

    fn build_prime(p: u32) -> Self {
        let q = p as u64;
        let mut add = vec![0u32; (q * q) as usize];
        let mut mul = vec![0u32; (q * q) as usize];
        for a in 0..q {
            for b in 0..q {
                add[(a * q + b) as usize] = ((a + b) % q) as u32;
                mul[(a * q + b) as usize] = ((a * b) % q) as u32;
            }
        }
        let neg = (0..p).map(|a| (p - a) % p).collect();
        let mut table = FieldTable {
            q: p,
            characteristic: p,
            degree: 1,
            add,
            mul,
            neg,
            inv: vec![0; p as usize],
        };
        table.fill_inverses();
        table
    }

    fn build_extension(q: u32, p: u32, poly: &[u32]) -> Self {
        let degree = (poly.len() - 1) as u32;
        let digits = |e: u32| -> Vec<u32> {
            let mut v = e;
            (0..degree)
                .map(|_| {
                    let d = v % p;
                    v /= p;
                    d
                })
                .collect()
        };
        let pack = |coeffs: &[u32]| -> u32 {
            coeffs
                .iter()
                .rev()
                .fold(0u32, |acc, &c| acc * p + c)
        };
        let k = degree as usize;
        let mut add = vec![0u32; (q * q) as usize];
        let mut mul = vec![0u32; (q * q) as usize];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = pack(&sum);

                // polynomial product reduced modulo the monic irreducible
                let mut buf = vec![0u32; 2 * k - 1];
                for (i, &x) in da.iter().enumerate() {
                    for (j, &y) in db.iter().enumerate() {
                        buf[i + j] = (buf[i + j] + x * y) % p;
                    }
                }
                for d in (k..buf.len()).rev() {
                    let c = buf[d];
                    if c == 0 {
                        continue;
                    }
                    buf[d] = 0;
                    for j in 0..k {
                        buf[d - k + j] = (buf[d - k + j] + c * ((p - poly[j]) % p)) % p;
                    }
                }
                mul[(a * q + b) as usize] = pack(&buf[..k]);
            }
        }
        let neg = (0..q)
            .map(|a| {
                let negated: Vec<u32> = digits(a).iter().map(|&d| (p - d) % p).collect();
                pack(&negated)
            })
            .collect();
        let mut table = FieldTable {
            q,
            characteristic: p,
            degree,
            add,
            mul,
            neg,
            inv: vec![0; q as usize],
        };
        table.fill_inverses();
        table
    }

    fn fill_inverses(&mut self) {
        for a in 1..self.q {
            for b in 1..self.q {
                if self.mul(a, b) == 1 {
                    self.inv[a as usize] = b;
                    break;
                }
            }
        }
    }

    fn validate(&self) -> Result<(), Error> {
        let q = self.q;
        let fail = |axiom: &str| Err(Error::Internal(format!("GF({q}) violates {axiom}")));
        for a in 0..q {
            if self.add(a, 0) != a || self.mul(a, 1) != a {
                return fail("the identity axioms");
            }
            if self.add(a, self.neg(a)) != 0 {
                return fail("additive inverses");
            }
            if a != 0 && self.mul(a, self.inv(a)) != 1 {
                return fail("multiplicative inverses");
            }
            for b in 0..q {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return fail("commutativity");
                }
                for c in 0..q {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return fail("additive associativity");
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return fail("multiplicative associativity");
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return fail("distributivity");
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `a` must be nonzero.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        debug_assert_ne!(a, 0, "zero has no multiplicative inverse");
        self.inv[a as usize]
    }
}
