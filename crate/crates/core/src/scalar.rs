//! Floating-point scalar abstraction for the digit engine.
//!
//! The engine's numerics only need IEEE arithmetic on integers stored in
//! floats, so it is written once against this trait. Each impl states the
//! bounds inside which its precision keeps those integers exact and its
//! series sums trustworthy.

use std::fmt::Debug;

use num_traits::{Float, FromPrimitive, ToPrimitive};

pub trait BbpFloat: Float + FromPrimitive + ToPrimitive + Debug + Send + Sync + 'static {
    /// Largest modulus `m` for which `16·r²` with `|r| <= m/2 + 1` is exact.
    const EXACT_MODULUS: u64;

    /// Exclusive upper bound on digit positions the engine will serve.
    const POSITION_LIMIT: u64;

    /// Number of hex digits one evaluation can be trusted for.
    const TRUSTED_DIGITS: usize;

    /// Cutoff below which tail terms of the series are dropped.
    fn default_epsilon() -> Self;

    /// Truncation toward zero for values well inside the integer range.
    fn trunc_fast(self) -> Self;

    /// Round to nearest integer; valid for magnitudes below half the
    /// mantissa range.
    fn round_fast(self) -> Self;

    fn from_u64_exact(v: u64) -> Self;

    fn to_u64_exact(self) -> u64;

    /// Veltkamp constant `2^s + 1` that cuts a value into halves whose
    /// products with an engine modulus are exact.
    fn splitter() -> Self;
}

impl BbpFloat for f64 {
    const EXACT_MODULUS: u64 = 1 << 24;
    const POSITION_LIMIT: u64 = 1 << 24;
    const TRUSTED_DIGITS: usize = 10;

    fn default_epsilon() -> Self {
        1e-17
    }

    #[inline(always)]
    fn trunc_fast(self) -> Self {
        self as i64 as f64
    }

    #[inline(always)]
    fn round_fast(self) -> Self {
        const SHIFT: f64 = 6_755_399_441_055_744.0; // 1.5 * 2^52
        (self + SHIFT) - SHIFT
    }

    #[inline(always)]
    fn from_u64_exact(v: u64) -> Self {
        v as f64
    }

    #[inline(always)]
    fn to_u64_exact(self) -> u64 {
        self as u64
    }

    #[inline(always)]
    fn splitter() -> Self {
        134_217_729.0 // 2^27 + 1
    }
}

// Single precision holds 24 bits, so 16·r² stays exact only for moduli up
// to 2^11 and the series loses about a digit per few hundred positions.
impl BbpFloat for f32 {
    const EXACT_MODULUS: u64 = 1 << 11;
    const POSITION_LIMIT: u64 = 1 << 9;
    const TRUSTED_DIGITS: usize = 1;

    fn default_epsilon() -> Self {
        1e-9
    }

    #[inline(always)]
    fn trunc_fast(self) -> Self {
        self as i32 as f32
    }

    #[inline(always)]
    fn round_fast(self) -> Self {
        const SHIFT: f32 = 12_582_912.0; // 1.5 * 2^23
        (self + SHIFT) - SHIFT
    }

    #[inline(always)]
    fn from_u64_exact(v: u64) -> Self {
        v as f32
    }

    #[inline(always)]
    fn to_u64_exact(self) -> u64 {
        self as u64
    }
    #[inline(always)]
    fn splitter() -> Self {
        4097.0 // 2^12 + 1
    }
}
