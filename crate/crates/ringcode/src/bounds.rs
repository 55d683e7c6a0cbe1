//! Exact verification of Singleton-type bounds with arbitrary-precision
//! integer comparisons.
//!
//! Every logarithmic inequality is decided by clearing denominators and
//! comparing big-integer powers; no floating point appears in any verdict.
//! Each report carries the two integers actually compared so the verdict can
//! be reproduced independently.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::RingcodeError;
use crate::gray::VerifyFlags;
use crate::weights::rational_to_frac_string;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundId {
    FieldSingleton,
    ShiromotoFloor,
    GraySingleton,
    StrongSingleton,
    ZlHamming,
    ZlLee,
    ZlEuclidean,
}

impl BoundId {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundId::FieldSingleton => "FieldSingleton",
            BoundId::ShiromotoFloor => "ShiromotoFloor",
            BoundId::GraySingleton => "GraySingleton",
            BoundId::StrongSingleton => "StrongSingleton",
            BoundId::ZlHamming => "Zl_Hamming",
            BoundId::ZlLee => "Zl_Lee",
            BoundId::ZlEuclidean => "Zl_Euclidean",
        }
    }

    pub fn all() -> [BoundId; 7] {
        [
            BoundId::FieldSingleton,
            BoundId::ShiromotoFloor,
            BoundId::GraySingleton,
            BoundId::StrongSingleton,
            BoundId::ZlHamming,
            BoundId::ZlLee,
            BoundId::ZlEuclidean,
        ]
    }
}

/// The two arbitrary-precision integers whose comparison decides a verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub left: BigUint,
    pub right: BigUint,
    /// Human-readable `base^exp` forms of the two sides.
    pub left_expr: String,
    pub right_expr: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub bound_id: BoundId,
    pub applicable: bool,
    /// Present when applicable is false: why the bound is not claimed.
    pub reason: Option<String>,
    pub holds: bool,
    pub tight: bool,
    pub witness: Option<Witness>,
    pub inputs: serde_json::Value,
}

impl BoundReport {
    /// A bound that is not claimed for these inputs; holds vacuously.
    pub fn not_applicable(bound_id: BoundId, reason: String, inputs: serde_json::Value) -> Self {
        BoundReport {
            bound_id,
            applicable: false,
            reason: Some(reason),
            holds: true, // vacuous
            tight: false,
            witness: None,
            inputs,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "bound": self.bound_id.as_str(),
            "applicable": self.applicable,
            "reason": self.reason,
            "holds": self.holds,
            "tight": self.tight,
            "witness": self.witness.as_ref().map(|w| serde_json::json!({
                "left": w.left.to_string(),
                "right": w.right.to_string(),
                "left_expr": w.left_expr,
                "right_expr": w.right_expr,
            })),
            "inputs": self.inputs,
        })
    }
}

fn exp_to_u32(e: &BigInt, what: &str) -> Result<u32, RingcodeError> {
    e.to_u32().ok_or_else(|| {
        RingcodeError::Usage(format!("exponent {e} for {what} out of supported range"))
    })
}

/// Decide `size <= base^exp` exactly for a rational exponent. With
/// exp = num/den (den > 0) this compares size^den against base^num; a negative
/// num moves base^(-num) to the left side.
fn decide(
    size: u64,
    base: u64,
    exp: &BigRational,
) -> Result<(bool, bool, Witness), RingcodeError> {
    let num = exp.numer().clone();
    let den = exp_to_u32(exp.denom(), "denominator")?;
    let size_big = BigUint::from(size);
    let base_big = BigUint::from(base);
    let (left, right, left_expr, right_expr) = if num.is_negative() {
        let neg = exp_to_u32(&(-&num), "negative exponent")?;
        (
            size_big.pow(den) * base_big.pow(neg),
            BigUint::one(),
            format!("{size}^{den} * {base}^{neg}"),
            "1".to_string(),
        )
    } else {
        let pos = exp_to_u32(&num, "exponent")?;
        (
            size_big.pow(den),
            base_big.pow(pos),
            format!("{size}^{den}"),
            format!("{base}^{pos}"),
        )
    };
    let holds = left <= right;
    let tight = left == right;
    Ok((
        holds,
        tight,
        Witness {
            left,
            right,
            left_expr,
            right_expr,
        },
    ))
}

fn report(
    bound_id: BoundId,
    size: u64,
    base: u64,
    exp: &BigRational,
    inputs: serde_json::Value,
) -> Result<BoundReport, RingcodeError> {
    let (holds, tight, witness) = decide(size, base, exp)?;
    Ok(BoundReport {
        bound_id,
        applicable: true,
        reason: None,
        holds,
        tight,
        witness: Some(witness),
        inputs,
    })
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Classical field Singleton bound: d_H <= n - log_q|C| + 1, i.e.
/// |C| <= q^(n - d_H + 1).
pub fn field_singleton_check(
    n: usize,
    q: u64,
    size: u64,
    d_h: usize,
) -> Result<BoundReport, RingcodeError> {
    if d_h > n {
        return Err(RingcodeError::Usage(format!(
            "minimum distance {d_h} exceeds length {n}"
        )));
    }
    let inputs = serde_json::json!({"n": n, "q": q, "size": size, "d": d_h});
    report(
        BoundId::FieldSingleton,
        size,
        q,
        &int(n as i64 - d_h as i64 + 1),
        inputs,
    )
}

/// Floor-form bound: floor((d-1)/A) <= n - log_M|C|, i.e. |C| <= M^(n - t)
/// with t the exact rational floor of (d-1)/A.
pub fn shiromoto_floor_check(
    n: usize,
    m: u64,
    size: u64,
    d: &BigRational,
    a: &BigRational,
) -> Result<BoundReport, RingcodeError> {
    let inputs = serde_json::json!({
        "n": n, "M": m, "size": size,
        "d": rational_to_frac_string(d), "A": rational_to_frac_string(a),
    });
    if size < 2 {
        return Ok(BoundReport::not_applicable(
            BoundId::ShiromotoFloor,
            "zero code: minimum weight undefined".into(),
            inputs,
        ));
    }
    let t = ((d - int(1)) / a).floor();
    let exp = int(n as i64) - t;
    report(BoundId::ShiromotoFloor, size, m, &exp, inputs)
}

/// Gray Singleton bound: d <= A*n - log_p|C| + 1, i.e. |C| <= p^(A*n + 1 - d),
/// decided after clearing the rational exponent's denominator.
pub fn gray_singleton_check(
    n: usize,
    p: u64,
    size: u64,
    d: &BigRational,
    a: &BigRational,
) -> Result<BoundReport, RingcodeError> {
    gray_singleton_check_as(BoundId::GraySingleton, n, p, size, d, a)
}

fn gray_singleton_check_as(
    bound_id: BoundId,
    n: usize,
    p: u64,
    size: u64,
    d: &BigRational,
    a: &BigRational,
) -> Result<BoundReport, RingcodeError> {
    let inputs = serde_json::json!({
        "n": n, "p": p, "size": size,
        "d": rational_to_frac_string(d), "A": rational_to_frac_string(a),
    });
    let exp = a * int(n as i64) + int(1) - d;
    report(bound_id, size, p, &exp, inputs)
}

/// Strong bound (d-1)/A <= n - log_M|C|, i.e. |C| <= M^(n - (d-1)/A). Claimed
/// only when the supplied Gray map evidence shows a bijective isometry; marked
/// not applicable otherwise.
pub fn strong_singleton_check(
    n: usize,
    m: u64,
    size: u64,
    d: &BigRational,
    a: &BigRational,
    evidence: &VerifyFlags,
) -> Result<BoundReport, RingcodeError> {
    strong_singleton_check_as(BoundId::StrongSingleton, n, m, size, d, a, evidence)
}

fn strong_singleton_check_as(
    bound_id: BoundId,
    n: usize,
    m: u64,
    size: u64,
    d: &BigRational,
    a: &BigRational,
    evidence: &VerifyFlags,
) -> Result<BoundReport, RingcodeError> {
    let inputs = serde_json::json!({
        "n": n, "M": m, "size": size,
        "d": rational_to_frac_string(d), "A": rational_to_frac_string(a),
        "evidence": {
            "bijective": evidence.bijective.as_str(),
            "isometric": evidence.isometric.as_str(),
        },
    });
    if !(evidence.bijective.is_true() && evidence.isometric.is_true()) {
        return Ok(BoundReport::not_applicable(
            bound_id,
            "requires a verified bijective isometric Gray map".into(),
            inputs,
        ));
    }
    if size < 2 {
        return Ok(BoundReport::not_applicable(
            bound_id,
            "zero code: minimum weight undefined".into(),
            inputs,
        ));
    }
    let exp = int(n as i64) - (d - int(1)) / a;
    report(bound_id, size, m, &exp, inputs)
}

/// The Z_l corollary: weak bounds for Hamming, Lee, and Euclidean minimum
/// weights against p = min prime of l, plus the three strong forms against
/// base l when bijective-isometry evidence is supplied.
///
/// Evidence is per weight: the strong form for each of the three weights is
/// conditioned on a map that is distance-preserving for that weight. A single
/// map may be an isometry for one weight and not another (Z4's standard map is
/// Lee-isometric but not Euclidean-isometric), so its flags must be verified
/// against each weight separately.
#[allow(clippy::too_many_arguments)]
pub fn corollary_zl_check(
    l: u32,
    n: usize,
    size: u64,
    d_h: &BigRational,
    d_l: &BigRational,
    d_e: &BigRational,
    evidence: [Option<&VerifyFlags>; 3],
) -> Result<Vec<BoundReport>, RingcodeError> {
    let ring = crate::ring::RingSpec::zmod(l)?;
    let p = ring.min_prime() as u64;
    let l1 = (l / 2) as i64;
    let l2 = l1 * l1;
    let cases = [
        (BoundId::ZlHamming, d_h, int(1)),
        (BoundId::ZlLee, d_l, int(l1)),
        (BoundId::ZlEuclidean, d_e, int(l2)),
    ];
    let mut out = Vec::new();
    for (id, d, a) in &cases {
        out.push(gray_singleton_check_as(*id, n, p, size, d, a)?);
    }
    for ((_, d, a), flags) in cases.iter().zip(evidence) {
        if let Some(flags) = flags {
            out.push(strong_singleton_check_as(
                BoundId::StrongSingleton,
                n,
                l as u64,
                size,
                d,
                a,
                flags,
            )?);
        }
    }
    Ok(out)
}
