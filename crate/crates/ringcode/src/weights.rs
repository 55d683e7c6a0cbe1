//! Complete weights, general weight functions, and the built-in
//! Hamming/Lee/Euclidean tables.
//!
//! A weight function assigns an exact nonnegative rational `a_r` to each ring
//! element, with `a_0 = 0` and `a_r > 0` for nonzero `r`. The general weight of
//! a vector is the sum of the coefficients of its coordinates; Hamming, Lee and
//! Euclidean weights are instances.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::RingcodeError;
use crate::ring::{RingFamily, RingSpec, RingVector};

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parse a "num/den" or plain integer string into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, RingcodeError> {
    let t = s.trim();
    let bad = || RingcodeError::InvalidWeightFunction(format!("bad rational {t:?}"));
    match t.split_once('/') {
        Some((num, den)) => {
            let n: BigInt = num.trim().parse().map_err(|_| bad())?;
            let d: BigInt = den.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = t.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
    }
}

/// Render a rational as "num/den" (denominator kept even when 1).
pub fn rational_to_frac_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// A table of exact rational weight coefficients over a ring's elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightFunction {
    pub ring: RingSpec,
    pub name: String,
    coeffs: Vec<BigRational>,
}

impl WeightFunction {
    pub fn new(
        ring: RingSpec,
        name: impl Into<String>,
        coeffs: Vec<BigRational>,
    ) -> Result<Self, RingcodeError> {
        if coeffs.len() != ring.cardinality as usize {
            return Err(RingcodeError::InvalidWeightFunction(format!(
                "expected {} coefficients for {}, got {}",
                ring.cardinality,
                ring.name(),
                coeffs.len()
            )));
        }
        if !coeffs[0].is_zero() {
            return Err(RingcodeError::InvalidWeightFunction(
                "a_0 must be exactly 0".into(),
            ));
        }
        for (r, a) in coeffs.iter().enumerate().skip(1) {
            if !a.is_positive() {
                return Err(RingcodeError::InvalidWeightFunction(format!(
                    "a_r must be > 0 for nonzero r; a_{r} = {a}"
                )));
            }
        }
        Ok(WeightFunction {
            ring,
            name: name.into(),
            coeffs,
        })
    }

    pub fn coeff(&self, code: u32) -> &BigRational {
        &self.coeffs[code as usize]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// The maximum coefficient A.
    pub fn max_coeff(&self) -> BigRational {
        self.coeffs.iter().max().unwrap().clone()
    }

    /// True iff a_r = a_{-r} for every r, which makes w(x-y) a symmetric
    /// distance.
    pub fn is_symmetric(&self) -> bool {
        self.ring
            .elements()
            .all(|r| self.coeffs[r as usize] == self.coeffs[self.ring.neg(r) as usize])
    }

    /// True iff every coefficient is an integer, as required by the Gray map
    /// construction.
    pub fn is_integer_valued(&self) -> bool {
        self.coeffs.iter().all(|a| a.is_integer())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "ring": self.ring.name(),
            "name": self.name,
            "coeffs": self.coeffs.iter().map(rational_to_frac_string).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, RingcodeError> {
        let bad = |m: &str| RingcodeError::InvalidWeightFunction(m.to_string());
        let ring = RingSpec::parse(
            v.get("ring")
                .and_then(|x| x.as_str())
                .ok_or_else(|| bad("missing ring"))?,
        )?;
        let name = v
            .get("name")
            .and_then(|x| x.as_str())
            .ok_or_else(|| bad("missing name"))?;
        let coeffs = v
            .get("coeffs")
            .and_then(|x| x.as_array())
            .ok_or_else(|| bad("missing coeffs"))?
            .iter()
            .map(|x| {
                x.as_str()
                    .ok_or_else(|| bad("coeff must be a string"))
                    .and_then(parse_rational)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(ring, name, coeffs)
    }
}

/// Per-element coordinate counts of a vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompleteWeightProfile {
    pub counts: Vec<u64>,
}

/// counts[r] = number of coordinates of `v` equal to r.
pub fn complete_weight(v: &RingVector) -> CompleteWeightProfile {
    let mut counts = vec![0u64; v.ring.cardinality as usize];
    for &e in &v.entries {
        counts[e as usize] += 1;
    }
    CompleteWeightProfile { counts }
}

/// w(v) = sum over r of a_r * n_r(v), in exact rational arithmetic.
pub fn general_weight(wf: &WeightFunction, v: &RingVector) -> Result<BigRational, RingcodeError> {
    if wf.ring != v.ring {
        return Err(RingcodeError::RingMismatch);
    }
    let profile = complete_weight(v);
    let mut total = BigRational::zero();
    for (r, &count) in profile.counts.iter().enumerate() {
        if count > 0 {
            total += wf.coeff(r as u32) * BigRational::from_integer(BigInt::from(count));
        }
    }
    Ok(total)
}

/// d(x, y) = w(x - y).
pub fn distance(
    wf: &WeightFunction,
    x: &RingVector,
    y: &RingVector,
) -> Result<BigRational, RingcodeError> {
    general_weight(wf, &x.sub(y)?)
}

/// Hamming weight: a_r = 1 for every nonzero r.
pub fn hamming_wf(ring: &RingSpec) -> WeightFunction {
    let coeffs = ring
        .elements()
        .map(|r| if r == 0 { rat(0) } else { rat(1) })
        .collect();
    WeightFunction::new(ring.clone(), "hamming", coeffs).unwrap()
}

/// Lee weight on Z_l: w_L(a) = min(a, l - a).
pub fn lee_wf_zl(l: u32) -> Result<WeightFunction, RingcodeError> {
    let ring = RingSpec::zmod(l)?;
    let coeffs = ring
        .elements()
        .map(|a| rat(a.min(l - a) as i64))
        .collect();
    WeightFunction::new(ring, "lee", coeffs)
}

/// Euclidean weight on Z_l: w_E(a) = w_L(a)^2.
pub fn euclidean_wf_zl(l: u32) -> Result<WeightFunction, RingcodeError> {
    let ring = RingSpec::zmod(l)?;
    let coeffs = ring
        .elements()
        .map(|a| {
            let w = a.min(l - a) as i64;
            rat(w * w)
        })
        .collect();
    WeightFunction::new(ring, "euclidean", coeffs)
}

/// F2+uF2 Lee weights: (0, 1, 2, 1).
pub fn lee_wf_f2u() -> WeightFunction {
    WeightFunction::new(RingSpec::f2u(), "lee", vec![rat(0), rat(1), rat(2), rat(1)]).unwrap()
}

/// F2+uF2 Euclidean weights: (0, 1, 4, 1).
pub fn euclidean_wf_f2u() -> WeightFunction {
    WeightFunction::new(
        RingSpec::f2u(),
        "euclidean",
        vec![rat(0), rat(1), rat(4), rat(1)],
    )
    .unwrap()
}

/// F2UV Lee weight, derived from the Gray image:
/// w_L(a+ub+vc+uvd) = w_H(a+b+c+d, c+d, b+d, d).
pub fn lee_wf_f2uv() -> WeightFunction {
    let ring = RingSpec::f2uv();
    let coeffs = ring
        .elements()
        .map(|code| {
            let image = crate::gray::f2uv_gray_image(code);
            rat(image.iter().filter(|&&b| b != 0).count() as i64)
        })
        .collect();
    WeightFunction::new(ring, "lee", coeffs).unwrap()
}

/// Look up a built-in weight function by name for a ring.
pub fn builtin_wf(ring: &RingSpec, name: &str) -> Result<WeightFunction, RingcodeError> {
    let unknown = || {
        RingcodeError::InvalidWeightFunction(format!(
            "no built-in weight function {name:?} for ring {}",
            ring.name()
        ))
    };
    match (name, ring.family) {
        ("hamming", _) => Ok(hamming_wf(ring)),
        ("lee", RingFamily::ZMod(l)) => lee_wf_zl(l),
        ("euclidean", RingFamily::ZMod(l)) => euclidean_wf_zl(l),
        ("lee", RingFamily::F2U) => Ok(lee_wf_f2u()),
        ("euclidean", RingFamily::F2U) => Ok(euclidean_wf_f2u()),
        ("lee", RingFamily::F2UV) => Ok(lee_wf_f2uv()),
        _ => Err(unknown()),
    }
}
