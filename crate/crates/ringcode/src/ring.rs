//! Exact arithmetic and element enumeration for the four supported finite
//! commutative ring families: Z_l, F2+uF2, F2+uF2+vF2+uvF2, and prime fields.
//!
//! Elements are canonical integer codes in `[0, M)`:
//! - `ZMod(l)` / `PrimeField(p)`: the residue itself
//! - `F2U`: `a + ub` encodes as `a + 2b`
//! - `F2UV`: `a + ub + vc + uvd` encodes as `a + 2b + 4c + 8d`

use std::fmt;

use crate::error::RingcodeError;

/// Hard cap on the modulus of `ZMod`; keeps weight tables and enumeration bounded.
pub const MAX_ZMOD: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingFamily {
    /// Integers modulo l, l >= 2.
    ZMod(u32),
    /// F2 + uF2 with u^2 = 0. Four elements {0, 1, u, 1+u}.
    F2U,
    /// F2 + uF2 + vF2 + uvF2 with u^2 = v^2 = 0, uv = vu. Sixteen elements.
    F2UV,
    /// The prime field F_p.
    PrimeField(u32),
}

/// A concrete finite commutative ring: family, cardinality M, characteristic k,
/// and the prime factorization of M.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingSpec {
    pub family: RingFamily,
    pub cardinality: u32,
    pub characteristic: u32,
    /// (prime, exponent) pairs whose product is the cardinality.
    pub factorization: Vec<(u32, u32)>,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn factorize(mut n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut p = 2u32;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

impl RingSpec {
    pub fn new(family: RingFamily) -> Result<Self, RingcodeError> {
        let (cardinality, characteristic) = match family {
            RingFamily::ZMod(l) => {
                if l < 2 {
                    return Err(RingcodeError::InvalidRing(format!(
                        "ZMod modulus must be >= 2, got {l}"
                    )));
                }
                if l > MAX_ZMOD {
                    return Err(RingcodeError::InvalidRing(format!(
                        "ZMod modulus capped at {MAX_ZMOD}, got {l}"
                    )));
                }
                (l, l)
            }
            RingFamily::F2U => (4, 2),
            RingFamily::F2UV => (16, 2),
            RingFamily::PrimeField(p) => {
                if !is_prime(p) {
                    return Err(RingcodeError::InvalidRing(format!(
                        "{p} is not prime"
                    )));
                }
                (p, p)
            }
        };
        Ok(RingSpec {
            family,
            cardinality,
            characteristic,
            factorization: factorize(cardinality),
        })
    }

    pub fn zmod(l: u32) -> Result<Self, RingcodeError> {
        Self::new(RingFamily::ZMod(l))
    }

    pub fn f2u() -> Self {
        Self::new(RingFamily::F2U).unwrap()
    }

    pub fn f2uv() -> Self {
        Self::new(RingFamily::F2UV).unwrap()
    }

    pub fn prime_field(p: u32) -> Result<Self, RingcodeError> {
        Self::new(RingFamily::PrimeField(p))
    }

    /// Parse a ring selector token: `Z<l>`, `F2U`, `F2UV`, or `F<p>`.
    pub fn parse(s: &str) -> Result<Self, RingcodeError> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("F2UV") {
            return Ok(Self::f2uv());
        }
        if t.eq_ignore_ascii_case("F2U") {
            return Ok(Self::f2u());
        }
        if let Some(rest) = t.strip_prefix('Z').or_else(|| t.strip_prefix('z')) {
            let l: u32 = rest.parse().map_err(|_| {
                RingcodeError::InvalidRing(format!("bad ring selector {t:?}"))
            })?;
            return Self::zmod(l);
        }
        if let Some(rest) = t.strip_prefix('F').or_else(|| t.strip_prefix('f')) {
            let p: u32 = rest.parse().map_err(|_| {
                RingcodeError::InvalidRing(format!("bad ring selector {t:?}"))
            })?;
            return Self::prime_field(p);
        }
        Err(RingcodeError::InvalidRing(format!("bad ring selector {t:?}")))
    }

    /// Name used in file formats and serialization: `Z4`, `F2U`, `F2UV`, `F5`.
    pub fn name(&self) -> String {
        match self.family {
            RingFamily::ZMod(l) => format!("Z{l}"),
            RingFamily::F2U => "F2U".into(),
            RingFamily::F2UV => "F2UV".into(),
            RingFamily::PrimeField(p) => format!("F{p}"),
        }
    }

    pub fn check_code(&self, x: u32) -> Result<(), RingcodeError> {
        if x < self.cardinality {
            Ok(())
        } else {
            Err(RingcodeError::InvalidElement(format!(
                "code {x} out of range for {} (M = {})",
                self.name(),
                self.cardinality
            )))
        }
    }

    pub fn add(&self, x: u32, y: u32) -> u32 {
        debug_assert!(x < self.cardinality && y < self.cardinality);
        match self.family {
            RingFamily::ZMod(l) => (x + y) % l,
            RingFamily::PrimeField(p) => (x + y) % p,
            // characteristic 2, coefficientwise: xor of the bit encodings
            RingFamily::F2U | RingFamily::F2UV => x ^ y,
        }
    }

    pub fn neg(&self, x: u32) -> u32 {
        debug_assert!(x < self.cardinality);
        match self.family {
            RingFamily::ZMod(l) => (l - x) % l,
            RingFamily::PrimeField(p) => (p - x) % p,
            RingFamily::F2U | RingFamily::F2UV => x,
        }
    }

    pub fn sub(&self, x: u32, y: u32) -> u32 {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        debug_assert!(x < self.cardinality && y < self.cardinality);
        match self.family {
            RingFamily::ZMod(l) => (x * y) % l,
            RingFamily::PrimeField(p) => (x * y) % p,
            RingFamily::F2U => {
                // (a1 + u b1)(a2 + u b2) = a1 a2 + u (a1 b2 + a2 b1), u^2 = 0
                let (a1, b1) = (x & 1, (x >> 1) & 1);
                let (a2, b2) = (y & 1, (y >> 1) & 1);
                let a = a1 & a2;
                let b = (a1 & b2) ^ (a2 & b1);
                a | (b << 1)
            }
            RingFamily::F2UV => {
                // u^2 = v^2 = 0, uv = vu; coefficients (a, b, c, d) of 1, u, v, uv
                let (a1, b1, c1, d1) = (x & 1, (x >> 1) & 1, (x >> 2) & 1, (x >> 3) & 1);
                let (a2, b2, c2, d2) = (y & 1, (y >> 1) & 1, (y >> 2) & 1, (y >> 3) & 1);
                let a = a1 & a2;
                let b = (a1 & b2) ^ (b1 & a2);
                let c = (a1 & c2) ^ (c1 & a2);
                let d = (a1 & d2) ^ (d1 & a2) ^ (b1 & c2) ^ (c1 & b2);
                a | (b << 1) | (c << 2) | (d << 3)
            }
        }
    }

    /// All element codes 0..M-1 in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.cardinality
    }

    /// Smallest prime dividing the cardinality.
    pub fn min_prime(&self) -> u32 {
        self.factorization.iter().map(|&(p, _)| p).min().unwrap()
    }

    /// Format an element code in the ring's text syntax.
    pub fn format_element(&self, x: u32) -> String {
        match self.family {
            RingFamily::ZMod(_) | RingFamily::PrimeField(_) => x.to_string(),
            RingFamily::F2U => match x {
                0 => "0".into(),
                1 => "1".into(),
                2 => "u".into(),
                3 => "1+u".into(),
                _ => unreachable!(),
            },
            RingFamily::F2UV => {
                if x == 0 {
                    return "0".into();
                }
                let mut terms = Vec::new();
                if x & 1 != 0 {
                    terms.push("1");
                }
                if x & 2 != 0 {
                    terms.push("u");
                }
                if x & 4 != 0 {
                    terms.push("v");
                }
                if x & 8 != 0 {
                    terms.push("uv");
                }
                terms.join("+")
            }
        }
    }

    /// Parse an element token in the ring's text syntax. F2UV also accepts the
    /// integer code 0..15.
    pub fn parse_element(&self, s: &str) -> Result<u32, RingcodeError> {
        let t = s.trim();
        let bad = || {
            RingcodeError::InvalidElement(format!(
                "bad element token {t:?} for ring {}",
                self.name()
            ))
        };
        match self.family {
            RingFamily::ZMod(_) | RingFamily::PrimeField(_) => {
                let x: u32 = t.parse().map_err(|_| bad())?;
                self.check_code(x)?;
                Ok(x)
            }
            RingFamily::F2U => match t {
                "0" => Ok(0),
                "1" => Ok(1),
                "u" => Ok(2),
                "1+u" => Ok(3),
                _ => Err(bad()),
            },
            RingFamily::F2UV => {
                if let Ok(x) = t.parse::<u32>() {
                    self.check_code(x)?;
                    return Ok(x);
                }
                let mut code = 0u32;
                for term in t.split('+') {
                    let bit = match term.trim() {
                        "1" => 1,
                        "u" => 2,
                        "v" => 4,
                        "uv" => 8,
                        _ => return Err(bad()),
                    };
                    if code & bit != 0 {
                        return Err(bad()); // repeated term
                    }
                    code |= bit;
                }
                Ok(code)
            }
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// A vector over a ring, stored as canonical element codes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingVector {
    pub ring: RingSpec,
    pub entries: Vec<u32>,
}

impl RingVector {
    pub fn new(ring: RingSpec, entries: Vec<u32>) -> Result<Self, RingcodeError> {
        for &e in &entries {
            ring.check_code(e)?;
        }
        Ok(RingVector { ring, entries })
    }

    pub fn zero(ring: RingSpec, n: usize) -> Self {
        RingVector {
            ring,
            entries: vec![0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    fn check_compatible(&self, other: &Self) -> Result<(), RingcodeError> {
        if self.ring != other.ring {
            return Err(RingcodeError::RingMismatch);
        }
        if self.len() != other.len() {
            return Err(RingcodeError::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, RingcodeError> {
        self.check_compatible(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&x, &y)| self.ring.add(x, y))
            .collect();
        Ok(RingVector {
            ring: self.ring.clone(),
            entries,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, RingcodeError> {
        self.check_compatible(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&x, &y)| self.ring.sub(x, y))
            .collect();
        Ok(RingVector {
            ring: self.ring.clone(),
            entries,
        })
    }

    pub fn scale(&self, scalar: u32) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|&x| self.ring.mul(scalar, x))
            .collect();
        RingVector {
            ring: self.ring.clone(),
            entries,
        }
    }

    pub fn format(&self) -> String {
        self.entries
            .iter()
            .map(|&e| self.ring.format_element(e))
            .collect::<Vec<_>>()
            .join(" ")
    }
}
