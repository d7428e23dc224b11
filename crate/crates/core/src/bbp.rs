//! Hexadecimal digits of pi at arbitrary positions.
//!
//! Each evaluation at position `ic` forms
//!
//! ```text
//! frac(4·S(1) − 2·S(4) − S(5) − S(6)),   S(m) = Σ_k 16^(ic−k) / (8k + m)
//! ```
//!
//! where the terms with `k < ic` are reduced with `16^(ic−k) mod (8k+m)` so
//! only the fractional part is ever carried. The leading hex digits of that
//! fraction are the digits of pi starting at 0-based position `ic` (position
//! 0 is the `2` in `3.243f…`).
//!
//! An evaluation yields `hex_window` digits of which only the first
//! `digits_per_evaluation` are kept; a block is stitched from consecutive
//! evaluations advanced by exactly that many positions.

use std::fmt;

use crate::error::{Error, Result};
use crate::hex;
use crate::scalar::BbpFloat;

/// Moduli above this are rejected by [`mod_pow16`].
pub const MODULUS_LIMIT: u64 = 1 << 24;

/// Tail terms summed past `k = ic` before giving up on the cutoff.
pub const TAIL_TERMS: u64 = 100;

/// The four denominators offsets of the digit formula, in formula order.
pub const SERIES_OFFSETS: [u32; 4] = [1, 4, 5, 6];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BbpEngineConfig<F> {
    /// Digits kept from each evaluation; also the stride between evaluations.
    pub digits_per_evaluation: usize,
    /// Digits converted from each evaluated fraction.
    pub hex_window: usize,
    pub series_epsilon: F,
}

impl<F: BbpFloat> Default for BbpEngineConfig<F> {
    fn default() -> Self {
        BbpEngineConfig {
            digits_per_evaluation: 8.min(F::TRUSTED_DIGITS),
            hex_window: 16,
            series_epsilon: F::default_epsilon(),
        }
    }
}

impl<F: BbpFloat> BbpEngineConfig<F> {
    pub fn validate(&self) -> Result<()> {
        let dpe = self.digits_per_evaluation;
        if dpe == 0 || dpe > self.hex_window {
            return Err(Error::InvalidConfig(format!(
                "digits_per_evaluation {dpe} must lie in 1..={}",
                self.hex_window
            )));
        }
        if dpe > 10 || dpe > F::TRUSTED_DIGITS {
            return Err(Error::InvalidConfig(format!(
                "digits_per_evaluation {dpe} exceeds the {} digits this precision can deliver",
                F::TRUSTED_DIGITS.min(10)
            )));
        }
        let eps = self.series_epsilon;
        if !(eps > F::zero() && eps.is_finite()) {
            return Err(Error::InvalidConfig(
                "series_epsilon must be positive and finite".into(),
            ));
        }
        Ok(())
    }
}

/// A run of consecutive hex digits (nibbles) of some digit pool.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DigitBlock {
    start: u64,
    digits: Vec<u8>,
}

impl DigitBlock {
    pub(crate) fn new(start: u64, digits: Vec<u8>) -> Self {
        debug_assert!(digits.iter().all(|&d| d < 16));
        DigitBlock { start, digits }
    }

    /// Builds a block from hex text, e.g. a substring of a digit file.
    pub fn from_hex(start: u64, text: &str) -> Result<Self> {
        Ok(DigitBlock::new(start, hex::parse_nibbles(text.as_bytes())?))
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    pub fn nibbles(&self) -> &[u8] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn into_nibbles(self) -> Vec<u8> {
        self.digits
    }

    pub fn to_hex(&self) -> String {
        hex::nibbles_to_string(&self.digits)
    }
}

impl AsRef<[u8]> for DigitBlock {
    fn as_ref(&self) -> &[u8] {
        &self.digits
    }
}

impl fmt::Display for DigitBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// `16^p mod ak`, returned as an exactly representable float.
///
/// Moduli up to `F::EXACT_MODULUS` use left-to-right binary exponentiation
/// in floating point; larger ones (up to the 2^24 bound) fall back to
/// integer arithmetic so the residue stays exact in every precision.
pub fn mod_pow16<F: BbpFloat>(p: u64, ak: u64) -> Result<F> {
    if ak == 0 || ak > MODULUS_LIMIT {
        return Err(Error::ModulusOutOfRange {
            modulus: ak,
            limit: MODULUS_LIMIT,
        });
    }
    if ak == 1 {
        return Ok(F::zero());
    }
    if p == 0 {
        return Ok(F::one());
    }
    Ok(pow16_residue::<F>(p, ak))
}

/// Balanced residue of `x` in roughly `[-ak/2, ak/2]`; exact as long as
/// `x` is an exactly represented integer.
#[inline(always)]
fn reduce<F: BbpFloat>(x: F, ak: F, inv: F) -> F {
    x - (x * inv).round_fast() * ak
}

#[inline(always)]
fn normalize<F: BbpFloat>(r: F, ak: F) -> F {
    if r < F::zero() {
        r + ak
    } else if r >= ak {
        r - ak
    } else {
        r
    }
}

/// Left-to-right binary exponentiation of `G` groups of `N` lanes. Lanes
/// in a group share an exponent; every lane has its own modulus. Residues
/// stay balanced between steps, so the square and the optional factor of
/// 16 fold into one reduction per exponent bit.
#[inline(always)]
fn pow16_lanes<F: BbpFloat, const G: usize, const N: usize>(
    p: [u64; G],
    ak: [[F; N]; G],
    inv: [[F; N]; G],
) -> [[F; N]; G] {
    let sixteen = F::from_u64_exact(16);
    let widest = p.iter().fold(0, |acc, &e| acc | e);
    let mut r = [[F::one(); N]; G];
    if widest == 0 {
        return r;
    }
    let top = 63 - widest.leading_zeros();
    for bit in (0..=top).rev() {
        for g in 0..G {
            let f = if (p[g] >> bit) & 1 == 1 {
                sixteen
            } else {
                F::one()
            };
            for l in 0..N {
                let x = r[g][l] * r[g][l] * f;
                r[g][l] = reduce(x, ak[g][l], inv[g][l]);
            }
        }
    }
    for g in 0..G {
        for l in 0..N {
            r[g][l] = normalize(r[g][l], ak[g][l]);
        }
    }
    r
}

/// Residue for `p >= 1`, `ak >= 2` with no bound check.
#[inline]
fn pow16_residue<F: BbpFloat>(p: u64, ak: u64) -> F {
    if ak > F::EXACT_MODULUS {
        return F::from_u64_exact(pow16_mod_int(p, ak));
    }
    let m = F::from_u64_exact(ak);
    pow16_lanes([p], [[m]], [[F::one() / m]])[0][0]
}

/// Integer counterpart of [`pow16_lanes`] for moduli beyond the exact
/// float range. Barrett reduction with `ak < 2^28` keeps `16·r²` below 2^60.
#[inline(always)]
fn pow16_int_lanes<const N: usize>(p: u64, ak: [u64; N]) -> [u64; N] {
    let mu = ak.map(|a| u64::MAX / a);
    let mut r = [1u64; N];
    if p == 0 {
        return ak.map(|a| 1 % a);
    }
    let top = 63 - p.leading_zeros();
    for bit in (0..=top).rev() {
        let shift = ((p >> bit) & 1) * 4;
        for l in 0..N {
            let x = (r[l] * r[l]) << shift;
            let q = ((x as u128 * mu[l] as u128) >> 64) as u64;
            let mut y = x - q * ak[l];
            // q undershoots by at most two
            if y >= ak[l] {
                y -= ak[l];
            }
            if y >= ak[l] {
                y -= ak[l];
            }
            r[l] = y;
        }
    }
    r
}

fn pow16_mod_int(p: u64, ak: u64) -> u64 {
    debug_assert!(ak < 1 << 28);
    pow16_int_lanes(p, [ak])[0]
}

/// Moduli `8k + m` for the four series and their reciprocals.
#[inline(always)]
fn lane_moduli<F: BbpFloat>(k: u64) -> ([F; 4], [F; 4]) {
    let ak = SERIES_OFFSETS.map(|m| F::from_u64_exact(8 * k + m as u64));
    (ak, ak.map(|a| F::one() / a))
}

/// `a + b` as an unevaluated pair `(s, err)` with `s + err` exact.
#[inline(always)]
fn two_sum<F: BbpFloat>(a: F, b: F) -> (F, F) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// Running fractional sum held as `hi + lo`. Plain double accumulation
/// drifts by about 1e-13 after a million terms, enough to flip the 8th
/// digit when a run of `f`s follows it; the pair keeps the error far below.
#[derive(Clone, Copy, Debug, PartialEq)]
struct FracSum<F> {
    hi: F,
    lo: F,
}

impl<F: BbpFloat> FracSum<F> {
    fn zero() -> Self {
        FracSum {
            hi: F::zero(),
            lo: F::zero(),
        }
    }

    /// Adds `t / ak`, with `inv ≈ 1/ak`, and drops the integer part.
    #[inline(always)]
    fn add_ratio(&mut self, t: F, ak: F, inv: F) {
        let q = t * inv;
        // t - q·ak exactly: ak has at most 27 bits, so only q needs splitting
        let c = F::splitter() * q;
        let qh = c - (c - q);
        let ql = q - qh;
        let p = q * ak;
        let p_err = (qh * ak - p) + ql * ak;
        let e = ((t - p) - p_err) * inv;
        let (s, err) = two_sum(self.hi, q);
        self.hi = s - s.trunc_fast();
        self.lo = self.lo + (err + e);
    }

    /// Renormalized pair with `hi` in `[0, 1)`.
    fn normalized(self) -> Self {
        let (mut hi, mut lo) = two_sum(self.hi, self.lo);
        hi = hi - hi.floor();
        if hi + lo < F::zero() {
            (hi, lo) = two_sum(hi + F::one(), lo);
        } else if hi + lo >= F::one() {
            (hi, lo) = two_sum(hi - F::one(), lo);
        }
        FracSum { hi, lo }
    }
}

/// First `count` hex digits of `frac(|x|)`, lowercase.
pub fn fraction_to_hex<F: BbpFloat>(x: F, count: usize) -> String {
    hex::nibbles_to_string(&fraction_nibbles(x, count))
}

fn fraction_nibbles<F: BbpFloat>(x: F, count: usize) -> Vec<u8> {
    let sixteen = F::from_u64_exact(16);
    let mut y = x.abs();
    (0..count)
        .map(|_| {
            y = sixteen * (y - y.floor());
            // y < 16 unless rounding pushes it to exactly 16
            y.to_u64_exact().min(15) as u8
        })
        .collect()
}

/// Hex digits of a normalized pair; the low word keeps digits past the
/// precision of `hi` and settles carries at digit boundaries.
fn pair_nibbles<F: BbpFloat>(x: FracSum<F>, count: usize) -> Vec<u8> {
    let sixteen = F::from_u64_exact(16);
    let (mut hi, mut lo) = (x.hi, x.lo);
    (0..count)
        .map(|_| {
            (hi, lo) = two_sum(sixteen * hi, sixteen * lo);
            let mut d = hi.floor();
            hi = hi - d;
            if hi + lo < F::zero() {
                d = d - F::one();
                (hi, lo) = two_sum(hi + F::one(), lo);
            } else if hi + lo >= F::one() {
                d = d + F::one();
                (hi, lo) = two_sum(hi - F::one(), lo);
            }
            d.max(F::zero()).to_u64_exact().min(15) as u8
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BbpEngine<F> {
    config: BbpEngineConfig<F>,
}

impl<F: BbpFloat> Default for BbpEngine<F> {
    fn default() -> Self {
        BbpEngine {
            config: BbpEngineConfig::default(),
        }
    }
}

impl<F: BbpFloat> BbpEngine<F> {
    pub fn new(config: BbpEngineConfig<F>) -> Result<Self> {
        config.validate()?;
        Ok(BbpEngine { config })
    }

    pub fn config(&self) -> &BbpEngineConfig<F> {
        &self.config
    }

    /// Exclusive bound on `position + count` for requests to this engine.
    pub fn validity_limit(&self) -> u64 {
        F::POSITION_LIMIT
    }

    fn check_range(&self, position: u64, count: usize) -> Result<()> {
        let limit = self.validity_limit();
        match position.checked_add(count as u64) {
            Some(end) if end <= limit => Ok(()),
            _ => Err(Error::PositionOutOfRange {
                position,
                count,
                limit,
            }),
        }
    }

    /// Fractional part of `Σ_k 16^(position−k)/(8k+m)`.
    pub fn series_sum(&self, m: u32, position: u64) -> Result<F> {
        if !SERIES_OFFSETS.contains(&m) {
            return Err(Error::InvalidSeriesIndex(m));
        }
        self.check_range(position, 0)?;
        Ok(self.series_pair(m, position).normalized().hi)
    }

    fn series_pair(&self, m: u32, ic: u64) -> FracSum<F> {
        let mut s = FracSum::zero();
        for k in 0..ic {
            let ak = 8 * k + m as u64;
            let t = if ak == 1 {
                F::zero()
            } else {
                pow16_residue::<F>(ic - k, ak)
            };
            let a = F::from_u64_exact(ak);
            s.add_ratio(t, a, F::one() / a);
        }
        self.tail(m, ic, s)
    }

    #[inline]
    fn tail(&self, m: u32, ic: u64, mut s: FracSum<F>) -> FracSum<F> {
        let sixteen = F::from_u64_exact(16);
        for d in 0..=TAIL_TERMS {
            let ak = F::from_u64_exact(8 * (ic + d) + m as u64);
            let p = sixteen.powi(-(d as i32));
            if p / ak < self.config.series_epsilon {
                break;
            }
            s.add_ratio(p, ak, F::one() / ak);
        }
        s
    }

    /// The digit fraction at `position`: its hex expansion starts with the
    /// digit of pi at that position. Always lies in `(0, 2)`.
    pub fn pi_fraction(&self, position: u64) -> Result<F> {
        self.check_range(position, 0)?;
        Ok(self.fraction_unchecked(position))
    }

    fn fraction_unchecked(&self, ic: u64) -> F {
        self.fraction_pair(ic).hi + F::one()
    }

    /// `frac(4·S1 − 2·S4 − S5 − S6)` carried as a pair.
    fn fraction_pair(&self, ic: u64) -> FracSum<F> {
        let [s1, s4, s5, s6] = self.series4(ic);
        let two = F::from_u64_exact(2);
        let four = F::from_u64_exact(4);
        let mut hi = four * s1.hi;
        let mut lo = four * s1.lo - two * s4.lo - s5.lo - s6.lo;
        for x in [-(two * s4.hi), -s5.hi, -s6.hi] {
            let (h, err) = two_sum(hi, x);
            hi = h;
            lo = lo + err;
        }
        FracSum {
            hi: hi - hi.trunc_fast(),
            lo,
        }
        .normalized()
    }

    /// All four series in one pass; bit-identical to four `series_sum` calls.
    fn series4(&self, ic: u64) -> [FracSum<F>; 4] {
        let mut s = [FracSum::zero(); 4];
        let exact_terms = (F::EXACT_MODULUS.saturating_sub(6) / 8 + 1).min(ic);
        let mut k = 0;
        // two consecutive terms per pass: eight lanes of independent work
        while k + 4 <= exact_terms {
            let m: [([F; 4], [F; 4]); 4] = std::array::from_fn(|i| lane_moduli::<F>(k + i as u64));
            let t = pow16_lanes(
                std::array::from_fn(|i| ic - k - i as u64),
                m.map(|x| x.0),
                m.map(|x| x.1),
            );
            for (tg, (ak, inv)) in t.iter().zip(m) {
                for l in 0..4 {
                    s[l].add_ratio(tg[l], ak[l], inv[l]);
                }
            }
            k += 4;
        }
        while k < exact_terms {
            let (ak, inv) = lane_moduli::<F>(k);
            let t = pow16_lanes([ic - k], [ak], [inv]);
            for l in 0..4 {
                s[l].add_ratio(t[0][l], ak[l], inv[l]);
            }
            k += 1;
        }
        for k in exact_terms..ic {
            let ak = SERIES_OFFSETS.map(|m| 8 * k + m as u64);
            let t = pow16_int_lanes(ic - k, ak);
            for l in 0..4 {
                let a = F::from_u64_exact(ak[l]);
                s[l].add_ratio(F::from_u64_exact(t[l]), a, F::one() / a);
            }
        }
        for l in 0..4 {
            s[l] = self.tail(SERIES_OFFSETS[l], ic, s[l]);
        }
        s
    }

    /// Digits kept from one evaluation at `position`.
    fn evaluation_digits(&self, position: u64) -> Vec<u8> {
        let mut digits = pair_nibbles(self.fraction_pair(position), self.config.hex_window);
        digits.truncate(self.config.digits_per_evaluation);
        digits
    }

    /// `count` consecutive hex digits of pi starting at 0-based `position`.
    pub fn pi_hex_at(&self, position: u64, count: usize) -> Result<DigitBlock> {
        if count == 0 {
            return Err(Error::ZeroCount);
        }
        self.check_range(position, count)?;
        let step = self.config.digits_per_evaluation;
        let mut digits = Vec::with_capacity(count + step);
        let mut ic = position;
        while digits.len() < count {
            digits.extend(self.evaluation_digits(ic));
            ic += step as u64;
        }
        digits.truncate(count);
        Ok(DigitBlock::new(position, digits))
    }

    /// Like [`pi_hex_at`](Self::pi_hex_at) but spreads the evaluations over
    /// the rayon pool. Output is identical.
    pub fn pi_hex_at_parallel(&self, position: u64, count: usize) -> Result<DigitBlock> {
        use rayon::prelude::*;

        if count == 0 {
            return Err(Error::ZeroCount);
        }
        self.check_range(position, count)?;
        let step = self.config.digits_per_evaluation;
        let evaluations = count.div_ceil(step);
        let chunks: Vec<Vec<u8>> = (0..evaluations)
            .into_par_iter()
            .map(|i| self.evaluation_digits(position + (i * step) as u64))
            .collect();
        let mut digits: Vec<u8> = chunks.concat();
        digits.truncate(count);
        Ok(DigitBlock::new(position, digits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // First 64 fractional hex digits of pi, from an mpmath expansion.
    const PI_HEX_64: &str = "243f6a8885a308d313198a2e03707344a4093822299f31d0082efa98ec4e6c89";

    fn naive_pow_mod(p: u64, m: u64) -> u64 {
        let mut r = 1 % m;
        for _ in 0..p {
            r = r * 16 % m;
        }
        r
    }

    #[test]
    fn mod_pow16_examples() {
        assert_eq!(mod_pow16::<f64>(0, 7).unwrap(), 1.0);
        assert_eq!(mod_pow16::<f64>(5, 1).unwrap(), 0.0);
        assert_eq!(mod_pow16::<f64>(2, 7).unwrap(), 4.0);
    }

    #[test]
    fn mod_pow16_rejects_modulus_beyond_bound() {
        assert!(mod_pow16::<f64>(3, 1 << 24).is_ok());
        let err = mod_pow16::<f64>(3, (1 << 24) + 1).unwrap_err();
        assert!(matches!(err, Error::ModulusOutOfRange { limit, .. } if limit == 1 << 24));
        assert!(err.to_string().contains("2^24"));
        assert!(mod_pow16::<f64>(3, 0).is_err());
    }

    #[test]
    fn mod_pow16_matches_repeated_multiplication() {
        for m in 1..200u64 {
            for p in 0..70u64 {
                let want = naive_pow_mod(p, m);
                assert_eq!(
                    mod_pow16::<f64>(p, m).unwrap(),
                    want as f64,
                    "16^{p} mod {m}"
                );
                assert_eq!(
                    mod_pow16::<f32>(p, m).unwrap(),
                    want as f32,
                    "f32 16^{p} mod {m}"
                );
            }
        }
    }

    #[test]
    fn float_and_integer_paths_agree_near_the_bound() {
        for ak in [(1 << 24) - 3, (1 << 24) - 1, 1 << 24, 12_345_677] {
            for p in [1u64, 2, 17, 1 << 20, 16_000_000] {
                let int = pow16_mod_int(p, ak);
                assert_eq!(pow16_residue::<f64>(p, ak), int as f64);
            }
        }
        // f32 leaves its exact range early and must still be exact
        for ak in [4095u64, 4097, 70_001, 1 << 24] {
            assert_eq!(
                mod_pow16::<f32>(999, ak).unwrap(),
                pow16_mod_int(999, ak) as f32
            );
        }
    }

    #[test]
    fn fraction_to_hex_examples() {
        assert_eq!(fraction_to_hex(0.5f64, 1), "8");
        assert_eq!(fraction_to_hex(1.5f64, 2), "80");
        assert_eq!(fraction_to_hex(-0.25f64, 2), "40");
        let engine = BbpEngine::<f64>::default();
        let pid = engine.pi_fraction(0).unwrap();
        assert_eq!(fraction_to_hex(pid, 8), "243f6a88");
    }

    #[test]
    fn pair_digits_resolve_carries_from_the_low_word() {
        let below = FracSum {
            hi: 0.25f64,
            lo: -1e-30,
        };
        assert_eq!(pair_nibbles(below, 6), [3, 15, 15, 15, 15, 15]);
        let above = FracSum {
            hi: 0.25f64,
            lo: 1e-30,
        };
        assert_eq!(pair_nibbles(above, 6), [4, 0, 0, 0, 0, 0]);
        // digits beyond the reach of hi alone
        let split = FracSum {
            hi: 0.5f64,
            lo: 0x1234 as f64 / 16f64.powi(18),
        };
        assert_eq!(
            hex::nibbles_to_string(&pair_nibbles(split, 18)),
            "800000000000001234"
        );
    }

    #[test]
    fn series_stays_in_unit_interval() {
        let engine = BbpEngine::<f64>::default();
        for m in SERIES_OFFSETS {
            for pos in [0u64, 1, 2, 9, 1000, 65_537] {
                let s = engine.series_sum(m, pos).unwrap();
                assert!((0.0..1.0).contains(&s), "m={m} pos={pos} s={s}");
            }
        }
        assert!(matches!(
            engine.series_sum(2, 0),
            Err(Error::InvalidSeriesIndex(2))
        ));
    }

    #[test]
    fn tail_only_sum_converges_within_loop_bound() {
        // At position 0 there is no head; terms fall under 1e-17 by k = 14.
        let eps = 1e-17f64;
        let first_small = (0..=TAIL_TERMS)
            .find(|&d| 16f64.powi(-(d as i32)) / (8 * d + 4) as f64 <= eps)
            .unwrap();
        assert!(first_small < TAIL_TERMS);
        let engine = BbpEngine::<f64>::default();
        let direct: f64 = (0..first_small)
            .map(|d| 16f64.powi(-(d as i32)) / (8 * d + 4) as f64)
            .sum();
        assert!((engine.series_sum(4, 0).unwrap() - direct.fract()).abs() < 1e-15);
    }

    #[test]
    fn four_lane_evaluation_is_bit_identical_to_single_series() {
        let engine = BbpEngine::<f64>::default();
        for pos in [0u64, 1, 7, 123, 4096, 300_000, 2_100_000] {
            let lanes = engine.series4(pos);
            for (l, m) in SERIES_OFFSETS.into_iter().enumerate() {
                let single = engine.series_pair(m, pos);
                assert_eq!(
                    lanes[l].hi.to_bits(),
                    single.hi.to_bits(),
                    "pos={pos} m={m}"
                );
                assert_eq!(
                    lanes[l].lo.to_bits(),
                    single.lo.to_bits(),
                    "pos={pos} m={m}"
                );
            }
        }
    }

    #[test]
    fn leading_digits() {
        let engine = BbpEngine::<f64>::default();
        assert_eq!(
            engine.pi_hex_at(0, 16).unwrap().to_hex(),
            "243f6a8885a308d3"
        );
        assert_eq!(engine.pi_hex_at(1, 4).unwrap().to_hex(), "43f6");
        assert_eq!(engine.pi_hex_at(0, 64).unwrap().to_hex(), PI_HEX_64);
        let whole = engine.pi_hex_at(0, 16).unwrap().to_hex();
        assert_eq!(engine.pi_hex_at(5, 8).unwrap().to_hex(), &whole[5..13]);
    }

    #[test]
    fn step_size_does_not_change_digits() {
        for dpe in 1..=8 {
            let engine = BbpEngine::<f64>::new(BbpEngineConfig {
                digits_per_evaluation: dpe,
                ..Default::default()
            })
            .unwrap();
            assert_eq!(
                engine.pi_hex_at(3, 37).unwrap().to_hex(),
                &PI_HEX_64[3..40],
                "dpe={dpe}"
            );
            assert_eq!(
                engine.pi_hex_at_parallel(3, 37).unwrap(),
                engine.pi_hex_at(3, 37).unwrap()
            );
        }
    }

    #[test]
    fn single_precision_engine_tracks_leading_digits() {
        let engine = BbpEngine::<f32>::default();
        assert_eq!(engine.config().digits_per_evaluation, 1);
        assert_eq!(engine.validity_limit(), 512);
        assert_eq!(engine.pi_hex_at(0, 64).unwrap().to_hex(), PI_HEX_64);
        assert!(engine.pi_hex_at(500, 13).is_err());
    }

    #[test]
    fn config_validation() {
        let bad = |dpe, window| {
            BbpEngine::<f64>::new(BbpEngineConfig {
                digits_per_evaluation: dpe,
                hex_window: window,
                series_epsilon: 1e-17,
            })
        };
        assert!(bad(0, 16).is_err());
        assert!(bad(11, 16).is_err());
        assert!(bad(9, 8).is_err());
        assert!(bad(10, 16).is_ok());
        assert!(BbpEngine::<f32>::new(BbpEngineConfig {
            digits_per_evaluation: 2,
            ..Default::default()
        })
        .is_err());
        assert!(BbpEngine::<f64>::new(BbpEngineConfig {
            series_epsilon: 0.0,
            ..Default::default()
        })
        .is_err());
    }

    #[test]
    fn range_checks() {
        let engine = BbpEngine::<f64>::default();
        assert!(matches!(engine.pi_hex_at(0, 0), Err(Error::ZeroCount)));
        assert!(matches!(
            engine.pi_hex_at((1 << 24) - 4, 5),
            Err(Error::PositionOutOfRange { limit, .. }) if limit == 1 << 24
        ));
        assert!(engine.pi_hex_at(u64::MAX, 2).is_err());
    }
}
