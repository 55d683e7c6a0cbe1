//! Gray maps from ring alphabets to prime-field vectors.
//!
//! A Gray map sends each ring element to a fixed-length vector over F_p, with
//! 0 mapping to the zero vector. Weight preservation, isometry, and
//! bijectivity are verified properties, never assumed: they are checked
//! exhaustively over the (small) domain and recorded as flags.

use num_traits::ToPrimitive;

use crate::error::RingcodeError;
use crate::ring::{RingSpec, RingVector};
use crate::weights::WeightFunction;

/// Verification state of one Gray map property.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlagState {
    Unverified,
    True,
    False,
}

impl FlagState {
    pub fn as_str(&self) -> &'static str {
        match self {
            FlagState::Unverified => "unverified",
            FlagState::True => "true",
            FlagState::False => "false",
        }
    }

    pub fn is_true(&self) -> bool {
        matches!(self, FlagState::True)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyFlags {
    pub weight_preserving: FlagState,
    pub isometric: FlagState,
    pub bijective: FlagState,
    /// Name of the weight function the weight/isometry flags were checked
    /// against, if any.
    pub verified_against: Option<String>,
}

impl VerifyFlags {
    pub fn unverified() -> Self {
        VerifyFlags {
            weight_preserving: FlagState::Unverified,
            isometric: FlagState::Unverified,
            bijective: FlagState::Unverified,
            verified_against: None,
        }
    }
}

/// A table from ring element codes to length-L vectors over F_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayMap {
    pub domain: RingSpec,
    pub codomain_prime: u32,
    pub image_length: usize,
    table: Vec<Vec<u32>>,
    pub flags: VerifyFlags,
}

/// Hamming distance between two field vectors of equal length.
pub fn hamming_distance(a: &[u32], b: &[u32]) -> usize {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

pub fn hamming_weight(a: &[u32]) -> usize {
    a.iter().filter(|&&x| x != 0).count()
}

/// The Gray image of one F2UV element: (a+b+c+d, c+d, b+d, d) over F2.
pub fn f2uv_gray_image(code: u32) -> [u32; 4] {
    let (a, b, c, d) = (code & 1, (code >> 1) & 1, (code >> 2) & 1, (code >> 3) & 1);
    [a ^ b ^ c ^ d, c ^ d, b ^ d, d]
}

impl GrayMap {
    fn from_table(
        domain: RingSpec,
        codomain_prime: u32,
        image_length: usize,
        table: Vec<Vec<u32>>,
    ) -> Result<Self, RingcodeError> {
        if table.len() != domain.cardinality as usize {
            return Err(RingcodeError::InvalidGrayMap(format!(
                "table must have {} entries, got {}",
                domain.cardinality,
                table.len()
            )));
        }
        if table[0].iter().any(|&x| x != 0) {
            return Err(RingcodeError::InvalidGrayMap(
                "table[0] must be the all-zero vector".into(),
            ));
        }
        for (r, row) in table.iter().enumerate() {
            if row.len() != image_length {
                return Err(RingcodeError::InvalidGrayMap(format!(
                    "entry for code {r} has length {}, expected {image_length}",
                    row.len()
                )));
            }
            if let Some(&v) = row.iter().find(|&&v| v >= codomain_prime) {
                return Err(RingcodeError::InvalidGrayMap(format!(
                    "value {v} out of range for F_{codomain_prime}"
                )));
            }
        }
        Ok(GrayMap {
            domain,
            codomain_prime,
            image_length,
            table,
            flags: VerifyFlags::unverified(),
        })
    }

    pub fn image(&self, code: u32) -> &[u32] {
        &self.table[code as usize]
    }

    pub fn table(&self) -> &[Vec<u32>] {
        &self.table
    }

    /// Coordinatewise extension to vectors: concatenation of per-symbol images.
    pub fn apply(&self, v: &RingVector) -> Result<Vec<u32>, RingcodeError> {
        if v.ring != self.domain {
            return Err(RingcodeError::RingMismatch);
        }
        let mut out = Vec::with_capacity(self.image_length * v.len());
        for &e in &v.entries {
            out.extend_from_slice(&self.table[e as usize]);
        }
        Ok(out)
    }

    /// Check w_H(table[r]) = w(r) for every element and record the flag.
    pub fn verify_weight_preserving(
        &mut self,
        wf: &WeightFunction,
    ) -> Result<bool, RingcodeError> {
        if wf.ring != self.domain {
            return Err(RingcodeError::RingMismatch);
        }
        let ok = self.domain.elements().all(|r| {
            wf.coeff(r)
                .to_integer()
                .to_usize()
                .map(|w| wf.coeff(r).is_integer() && hamming_weight(&self.table[r as usize]) == w)
                .unwrap_or(false)
        });
        self.flags.weight_preserving = if ok { FlagState::True } else { FlagState::False };
        self.flags.verified_against = Some(wf.name.clone());
        Ok(ok)
    }

    /// Check d_H(table[x], table[y]) = w(x-y) over all element pairs and
    /// record the flag. Single-symbol verification suffices because apply is
    /// coordinatewise.
    pub fn verify_isometric(&mut self, wf: &WeightFunction) -> Result<bool, RingcodeError> {
        if wf.ring != self.domain {
            return Err(RingcodeError::RingMismatch);
        }
        let mut ok = true;
        'outer: for x in self.domain.elements() {
            for y in self.domain.elements() {
                let dh = hamming_distance(&self.table[x as usize], &self.table[y as usize]);
                let w = wf.coeff(self.domain.sub(x, y));
                if !w.is_integer() || w.to_integer().to_usize() != Some(dh) {
                    ok = false;
                    break 'outer;
                }
            }
        }
        self.flags.isometric = if ok { FlagState::True } else { FlagState::False };
        self.flags.verified_against = Some(wf.name.clone());
        Ok(ok)
    }

    /// Check that table entries are pairwise distinct and M = p^L; record the
    /// flag.
    pub fn verify_bijective(&mut self) -> bool {
        let m = self.domain.cardinality;
        let distinct = {
            let mut seen: Vec<&[u32]> = self.table.iter().map(|r| r.as_slice()).collect();
            seen.sort();
            seen.windows(2).all(|w| w[0] != w[1])
        };
        let full = (self.codomain_prime as u128)
            .checked_pow(self.image_length as u32)
            .map(|c| c == m as u128)
            .unwrap_or(false);
        let ok = distinct && full;
        self.flags.bijective = if ok { FlagState::True } else { FlagState::False };
        ok
    }

    /// Run all three verifications against a weight function.
    pub fn verify_all(&mut self, wf: &WeightFunction) -> Result<(), RingcodeError> {
        self.verify_weight_preserving(wf)?;
        self.verify_isometric(wf)?;
        self.verify_bijective();
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "domain": self.domain.name(),
            "p": self.codomain_prime,
            "L": self.image_length,
            "table": self.table,
            "flags": {
                "weight_preserving": self.flags.weight_preserving.as_str(),
                "isometric": self.flags.isometric.as_str(),
                "bijective": self.flags.bijective.as_str(),
                "verified_against": self.flags.verified_against,
            }
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, RingcodeError> {
        let bad = |m: &str| RingcodeError::InvalidGrayMap(m.to_string());
        let domain = RingSpec::parse(
            v.get("domain")
                .and_then(|x| x.as_str())
                .ok_or_else(|| bad("missing domain"))?,
        )?;
        let p = v
            .get("p")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| bad("missing p"))? as u32;
        let l = v
            .get("L")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| bad("missing L"))? as usize;
        let table = v
            .get("table")
            .and_then(|x| x.as_array())
            .ok_or_else(|| bad("missing table"))?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| bad("table row must be an array"))?
                    .iter()
                    .map(|x| {
                        x.as_u64()
                            .map(|v| v as u32)
                            .ok_or_else(|| bad("table value must be an integer"))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_table(domain, p, l, table)
    }
}

/// The standard Z4 map: 0 -> 00, 1 -> 01, 2 -> 11, 3 -> 10.
pub fn gray_z4() -> GrayMap {
    GrayMap::from_table(
        RingSpec::zmod(4).unwrap(),
        2,
        2,
        vec![vec![0, 0], vec![0, 1], vec![1, 1], vec![1, 0]],
    )
    .unwrap()
}

/// The F2+uF2 map phi(a+ub) = (b, a+b).
pub fn gray_f2u() -> GrayMap {
    let ring = RingSpec::f2u();
    let table = ring
        .elements()
        .map(|code| {
            let (a, b) = (code & 1, (code >> 1) & 1);
            vec![b, a ^ b]
        })
        .collect();
    GrayMap::from_table(ring, 2, 2, table).unwrap()
}

/// The F2UV map phi(a+ub+vc+uvd) = (a+b+c+d, c+d, b+d, d).
pub fn gray_f2uv() -> GrayMap {
    let ring = RingSpec::f2uv();
    let table = ring
        .elements()
        .map(|code| f2uv_gray_image(code).to_vec())
        .collect();
    GrayMap::from_table(ring, 2, 4, table).unwrap()
}

/// Look up a built-in Gray map by name for a ring.
pub fn builtin_gray(ring: &RingSpec, name: &str) -> Result<GrayMap, RingcodeError> {
    match (name, ring.name().as_str()) {
        ("standard", "Z4") => Ok(gray_z4()),
        ("standard", "F2U") => Ok(gray_f2u()),
        ("standard", "F2UV") => Ok(gray_f2uv()),
        _ => Err(RingcodeError::InvalidGrayMap(format!(
            "no built-in map {name:?} for ring {}",
            ring.name()
        ))),
    }
}

/// Build a Gray map from an explicit image table, enforcing the construction
/// rules: integer weights, image length A = max coefficient, and
/// w_H(table[r]) = w(r) for every element. The weight-preserving flag is set
/// true by this construction check; isometry and bijectivity are left
/// unverified.
pub fn build_general_gray(
    ring: &RingSpec,
    wf: &WeightFunction,
    p: u32,
    assignment: &[Vec<u32>],
) -> Result<GrayMap, RingcodeError> {
    if wf.ring != *ring {
        return Err(RingcodeError::RingMismatch);
    }
    if !wf.is_integer_valued() {
        return Err(RingcodeError::InvalidGrayMap(
            "the general Gray construction requires integer-valued weights".into(),
        ));
    }
    let a_max = wf.max_coeff();
    let l = a_max
        .to_integer()
        .to_usize()
        .filter(|&l| l > 0)
        .ok_or_else(|| {
            RingcodeError::InvalidGrayMap("maximum coefficient A must be a positive integer".into())
        })?;
    let mut gm = GrayMap::from_table(ring.clone(), p, l, assignment.to_vec())?;
    for r in ring.elements() {
        let w = wf.coeff(r).to_integer().to_usize().unwrap();
        if w > l {
            return Err(RingcodeError::InvalidGrayMap(format!(
                "w({}) = {w} exceeds image length {l}",
                ring.format_element(r)
            )));
        }
        if hamming_weight(gm.image(r)) != w {
            return Err(RingcodeError::InvalidGrayMap(format!(
                "image of {} must have {w} nonzero positions",
                ring.format_element(r)
            )));
        }
    }
    gm.flags.weight_preserving = FlagState::True;
    gm.flags.verified_against = Some(wf.name.clone());
    Ok(gm)
}

/// Outcome of the backtracking search for an isometric Gray map.
#[derive(Debug, Clone)]
pub struct GraySearchResult {
    pub map: Option<GrayMap>,
    /// Number of candidate images tried across the whole search.
    pub nodes_visited: u64,
    /// Total number of complete assignments the search space contains.
    pub search_space_size: u128,
}

fn supports_of_size(l: usize, w: usize) -> Vec<Vec<usize>> {
    // all w-subsets of 0..l in lexicographic order
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..w).collect();
    if w > l {
        return out;
    }
    loop {
        out.push(idx.clone());
        // advance the combination odometer
        let mut i = w;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + l - w {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..w {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn candidate_images(l: usize, w: usize, p: u32) -> Vec<Vec<u32>> {
    // lexicographic by support, then by nonzero values on the support
    let mut out = Vec::new();
    for support in supports_of_size(l, w) {
        let mut values = vec![1u32; w];
        loop {
            let mut img = vec![0u32; l];
            for (k, &pos) in support.iter().enumerate() {
                img[pos] = values[k];
            }
            out.push(img);
            // advance values odometer over 1..p
            let mut i = w;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                values[i] += 1;
                if values[i] < p {
                    break;
                }
                values[i] = 1;
                if i == 0 {
                    i = usize::MAX;
                    break;
                }
            }
            if i == usize::MAX || w == 0 {
                break;
            }
        }
    }
    out
}

/// Exhaustive backtracking search for a Gray map that is isometric for `wf`
/// with codomain F_p and image length A. Elements are assigned in increasing
/// code order; candidate images are tried in lexicographic support/value
/// order, pruned by pairwise distance constraints against all earlier
/// assignments. Deterministic: always returns the lexicographically first
/// isometric map, or none after exhausting the space.
pub fn find_isometric_gray(
    ring: &RingSpec,
    wf: &WeightFunction,
    p: u32,
) -> Result<GraySearchResult, RingcodeError> {
    if wf.ring != *ring {
        return Err(RingcodeError::RingMismatch);
    }
    if !wf.is_integer_valued() {
        return Err(RingcodeError::InvalidGrayMap(
            "the general Gray construction requires integer-valued weights".into(),
        ));
    }
    let a_max = wf.max_coeff();
    let l = a_max
        .to_integer()
        .to_usize()
        .filter(|&l| l > 0)
        .ok_or_else(|| {
            RingcodeError::InvalidGrayMap("maximum coefficient A must be a positive integer".into())
        })?;

    let m = ring.cardinality as usize;
    let weights: Vec<usize> = ring
        .elements()
        .map(|r| wf.coeff(r).to_integer().to_usize().unwrap())
        .collect();
    // per-element candidate lists; an element with w(r) > L has none
    let candidates: Vec<Vec<Vec<u32>>> = weights
        .iter()
        .map(|&w| candidate_images(l, w, p))
        .collect();
    let search_space_size = candidates
        .iter()
        .skip(1)
        .map(|c| c.len() as u128)
        .product();

    let mut table: Vec<Vec<u32>> = vec![vec![0; l]; m];
    let mut nodes = 0u64;

    fn assign(
        ring: &RingSpec,
        wf: &WeightFunction,
        candidates: &[Vec<Vec<u32>>],
        table: &mut Vec<Vec<u32>>,
        next: u32,
        nodes: &mut u64,
    ) -> bool {
        if next as usize == table.len() {
            return true;
        }
        'cand: for img in &candidates[next as usize] {
            *nodes += 1;
            for prev in 0..next {
                let dh = hamming_distance(img, &table[prev as usize]);
                let fwd = wf.coeff(ring.sub(next, prev));
                let bwd = wf.coeff(ring.sub(prev, next));
                if fwd.to_integer().to_usize() != Some(dh)
                    || bwd.to_integer().to_usize() != Some(dh)
                {
                    continue 'cand;
                }
            }
            table[next as usize] = img.clone();
            if assign(ring, wf, candidates, table, next + 1, nodes) {
                return true;
            }
        }
        false
    }

    let found = assign(ring, wf, &candidates, &mut table, 1, &mut nodes);
    let map = if found {
        let mut gm = build_general_gray(ring, wf, p, &table)?;
        gm.verify_isometric(wf)?;
        gm.verify_bijective();
        debug_assert!(gm.flags.isometric.is_true());
        Some(gm)
    } else {
        None
    };
    Ok(GraySearchResult {
        map,
        nodes_visited: nodes,
        search_space_size,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::{
        euclidean_wf_zl, lee_wf_f2u, lee_wf_f2uv, lee_wf_zl, rat, WeightFunction,
    };

    #[test]
    fn gray_z4_table() {
        let gm = gray_z4();
        assert_eq!(gm.image(0), &[0, 0]);
        assert_eq!(gm.image(1), &[0, 1]);
        assert_eq!(gm.image(2), &[1, 1]);
        assert_eq!(gm.image(3), &[1, 0]);
    }

    #[test]
    fn gray_f2u_table() {
        let gm = gray_f2u();
        assert_eq!(gm.image(1), &[0, 1]);
        assert_eq!(gm.image(2), &[1, 1]);
        assert_eq!(gm.image(3), &[1, 0]);
    }

    #[test]
    fn gray_f2uv_table() {
        let gm = gray_f2uv();
        assert_eq!(gm.image(0b1000), &[1, 1, 1, 1]); // uv
        assert_eq!(gm.image(0b0100), &[1, 1, 0, 0]); // v
        assert_eq!(gm.image(0), &[0, 0, 0, 0]);
    }

    #[test]
    fn apply_concatenates() {
        let gm = gray_z4();
        let v = RingVector::new(gm.domain.clone(), vec![1, 2]).unwrap();
        assert_eq!(gm.apply(&v).unwrap(), vec![0, 1, 1, 1]);

        let empty = RingVector::new(gm.domain.clone(), vec![]).unwrap();
        assert!(gm.apply(&empty).unwrap().is_empty());

        let gm = gray_f2u();
        let v = RingVector::new(gm.domain.clone(), vec![2, 2]).unwrap();
        assert_eq!(gm.apply(&v).unwrap(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn weight_preserving_checks() {
        let mut gm = gray_z4();
        assert!(gm.verify_weight_preserving(&lee_wf_zl(4).unwrap()).unwrap());
        let mut gm = gray_f2uv();
        assert!(gm.verify_weight_preserving(&lee_wf_f2uv()).unwrap());
        // w_E(2) = 4 but the image (1,1) has Hamming weight 2
        let mut gm = gray_z4();
        assert!(!gm
            .verify_weight_preserving(&euclidean_wf_zl(4).unwrap())
            .unwrap());
        assert_eq!(gm.flags.weight_preserving, FlagState::False);
    }

    #[test]
    fn isometry_checks() {
        let mut gm = gray_z4();
        assert!(gm.verify_isometric(&lee_wf_zl(4).unwrap()).unwrap());
        let mut gm = gray_f2u();
        assert!(gm.verify_isometric(&lee_wf_f2u()).unwrap());
        let mut gm = gray_f2uv();
        assert!(gm.verify_isometric(&lee_wf_f2uv()).unwrap());
    }

    #[test]
    fn bijectivity_checks() {
        assert!(gray_z4().clone().verify_bijective());
        assert!(gray_f2u().clone().verify_bijective());
        assert!(gray_f2uv().clone().verify_bijective());
    }

    fn z6_example_assignment() -> Vec<Vec<u32>> {
        vec![
            vec![0, 0, 0],
            vec![0, 0, 1],
            vec![0, 1, 1],
            vec![1, 1, 1],
            vec![1, 1, 0],
            vec![1, 0, 0],
        ]
    }

    #[test]
    fn build_general_gray_z6() {
        let lee6 = lee_wf_zl(6).unwrap();
        let ring = lee6.ring.clone();
        let gm = build_general_gray(&ring, &lee6, 2, &z6_example_assignment()).unwrap();
        assert_eq!(gm.flags.weight_preserving, FlagState::True);
        let mut gm = gm;
        assert!(gm.verify_isometric(&lee6).unwrap());
        // 6 is not a power of 2, so no length-3 binary map can be bijective
        assert!(!gm.verify_bijective());
    }

    #[test]
    fn build_general_gray_matches_standard_z4() {
        let lee4 = lee_wf_zl(4).unwrap();
        let ring = lee4.ring.clone();
        let table: Vec<Vec<u32>> = gray_z4().table().to_vec();
        let gm = build_general_gray(&ring, &lee4, 2, &table).unwrap();
        assert_eq!(gm.table(), gray_z4().table());
    }

    #[test]
    fn build_general_gray_duplicate_image_fails_isometry_only() {
        let lee6 = lee_wf_zl(6).unwrap();
        let ring = lee6.ring.clone();
        let mut table = z6_example_assignment();
        table[5] = vec![0, 0, 1]; // same image as 1
        let mut gm = build_general_gray(&ring, &lee6, 2, &table).unwrap();
        // construction only forces weights, so this is a valid map
        assert_eq!(gm.flags.weight_preserving, FlagState::True);
        // but d_H(phi(1), phi(5)) = 0 != w_L(1-5) = 2
        assert!(!gm.verify_isometric(&lee6).unwrap());
        assert!(!gm.verify_bijective());
    }

    #[test]
    fn build_general_gray_rejects_bad_assignments() {
        let lee4 = lee_wf_zl(4).unwrap();
        let ring = lee4.ring.clone();
        // wrong support size for element 2 (w = 2)
        let bad = vec![vec![0, 0], vec![0, 1], vec![0, 1], vec![1, 0]];
        assert!(build_general_gray(&ring, &lee4, 2, &bad).is_err());
        // non-integer weight function rejected
        let half = WeightFunction::new(
            ring.clone(),
            "half",
            vec![rat(0), rat(1) / rat(2), rat(1), rat(1) / rat(2)],
        )
        .unwrap();
        assert!(build_general_gray(&ring, &half, 2, &bad).is_err());
    }

    #[test]
    fn find_isometric_gray_z6_lee() {
        let lee6 = lee_wf_zl(6).unwrap();
        let ring = lee6.ring.clone();
        let result = find_isometric_gray(&ring, &lee6, 2).unwrap();
        let gm = result.map.expect("an isometric map exists for Z6 Lee");
        assert!(gm.flags.isometric.is_true());
        assert!(gm.flags.weight_preserving.is_true());
    }

    #[test]
    fn find_isometric_gray_z4_lee() {
        let lee4 = lee_wf_zl(4).unwrap();
        let ring = lee4.ring.clone();
        let result = find_isometric_gray(&ring, &lee4, 2).unwrap();
        assert!(result.map.is_some());
    }

    #[test]
    fn find_isometric_gray_z4_euclidean_none() {
        // phi(1) and phi(3) would have Hamming weight 1 in F2^4, so their
        // distance is at most 2, but w_E(1-3) = w_E(2) = 4
        let euc4 = euclidean_wf_zl(4).unwrap();
        let ring = euc4.ring.clone();
        let result = find_isometric_gray(&ring, &euc4, 2).unwrap();
        assert!(result.map.is_none());
        assert!(result.nodes_visited > 0);
        assert!(result.search_space_size > 0);
    }

    #[test]
    fn search_output_passes_verifiers() {
        for (ring, wf) in [
            (lee_wf_zl(4).unwrap().ring.clone(), lee_wf_zl(4).unwrap()),
            (lee_wf_zl(6).unwrap().ring.clone(), lee_wf_zl(6).unwrap()),
            (RingSpec::f2u(), lee_wf_f2u()),
        ] {
            if let Some(mut gm) = find_isometric_gray(&ring, &wf, 2).unwrap().map {
                assert!(gm.verify_weight_preserving(&wf).unwrap());
                assert!(gm.verify_isometric(&wf).unwrap());
            } else {
                panic!("expected a map for {} {}", ring, wf.name);
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let mut gm = gray_f2uv();
        gm.verify_all(&lee_wf_f2uv()).unwrap();
        let json = gm.to_json();
        let back = GrayMap::from_json(&json).unwrap();
        assert_eq!(back.table(), gm.table());
        assert_eq!(back.codomain_prime, 2);
        assert_eq!(back.image_length, 4);
    }
}
