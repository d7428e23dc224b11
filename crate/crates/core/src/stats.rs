//! Byte-level randomness diagnostics and keyspace counting.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{Float, FromPrimitive, One, ToPrimitive};

use crate::error::{Error, Result};

pub const BINS: usize = 256;

/// Minimum expected count per bin for the chi-square statistic.
pub const MIN_EXPECTED_PER_BIN: u64 = 5;

#[derive(Clone, PartialEq, Eq)]
pub struct ByteHistogram {
    counts: [u64; BINS],
    total: u64,
}

impl Default for ByteHistogram {
    fn default() -> Self {
        ByteHistogram {
            counts: [0; BINS],
            total: 0,
        }
    }
}

impl ByteHistogram {
    pub fn from_counts(counts: [u64; BINS]) -> Self {
        ByteHistogram {
            total: counts.iter().sum(),
            counts,
        }
    }

    pub fn add(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.counts[b as usize] += 1;
        }
        self.total += bytes.len() as u64;
    }

    /// Bin-wise sum; lets shards be counted independently.
    pub fn merge(&mut self, other: &ByteHistogram) {
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.total += other.total;
    }

    pub fn counts(&self) -> &[u64; BINS] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }
}

impl fmt::Debug for ByteHistogram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ByteHistogram")
            .field("total", &self.total)
            .finish_non_exhaustive()
    }
}

pub fn byte_histogram(bytes: &[u8]) -> ByteHistogram {
    let mut h = ByteHistogram::default();
    h.add(bytes);
    h
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HistogramSummary<F> {
    /// Expected count per bin, total / 256.
    pub mean: F,
    /// Population standard deviation of the 256 bin counts.
    pub stddev: F,
    /// Coefficient of variation, stddev / mean.
    pub cv: F,
}

fn scalar<F: FromPrimitive>(v: u64) -> F {
    F::from_u64(v).expect("count representable in the scalar type")
}

pub fn summarize<F: Float + FromPrimitive>(h: &ByteHistogram) -> Result<HistogramSummary<F>> {
    if h.total == 0 {
        return Err(Error::EmptyHistogram);
    }
    let bins: F = scalar(BINS as u64);
    let mean = scalar::<F>(h.total) / bins;
    let sum_sq = h.counts.iter().fold(F::zero(), |acc, &c| {
        let d = scalar::<F>(c) - mean;
        acc + d * d
    });
    let stddev = (sum_sq / bins).sqrt();
    Ok(HistogramSummary {
        mean,
        stddev,
        cv: stddev / mean,
    })
}

/// Pearson statistic against a uniform distribution; 255 degrees of freedom.
pub fn chi_square_uniform<F: Float + FromPrimitive>(h: &ByteHistogram) -> Result<F> {
    let needed = BINS as u64 * MIN_EXPECTED_PER_BIN;
    if h.total < needed {
        return Err(Error::InsufficientSample {
            needed,
            total: h.total,
        });
    }
    let expected = scalar::<F>(h.total) / scalar(BINS as u64);
    Ok(h.counts.iter().fold(F::zero(), |acc, &c| {
        let d = scalar::<F>(c) - expected;
        acc + d * d / expected
    }))
}

/// Exact count of `k`-element selections from `n` items.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Keyspace {
    pub n: u64,
    pub k: u64,
    pub count: BigUint,
}

impl Keyspace {
    pub fn log10(&self) -> f64 {
        // split off the leading digits so huge counts stay finite
        let digits = self.count.to_string();
        let lead = digits.len().min(17);
        let mantissa: f64 = digits[..lead].parse().expect("decimal digits");
        mantissa.log10() + (digits.len() - lead) as f64
    }

    /// Scientific notation with `sig` significant digits, e.g. `2.76e53`.
    pub fn scientific(&self, sig: usize) -> String {
        let digits = self.count.to_string();
        let exponent = digits.len() - 1;
        let sig = sig.max(1);
        if digits.len() <= sig {
            let v = self.count.to_f64().unwrap_or(f64::INFINITY);
            return format!(
                "{:.*}e{}",
                sig - 1,
                v / 10f64.powi(exponent as i32),
                exponent
            );
        }
        // round half up on the decimal string
        let mut head: BigUint = digits[..sig].parse().expect("decimal digits");
        if digits.as_bytes()[sig] >= b'5' {
            head += 1u32;
        }
        let head = head.to_string();
        let (head, exponent) = if head.len() > sig {
            (&head[..sig], exponent + 1)
        } else {
            (&head[..], exponent)
        };
        if sig == 1 {
            format!("{head}e{exponent}")
        } else {
            format!("{}.{}e{exponent}", &head[..1], &head[1..])
        }
    }
}

impl fmt::Display for Keyspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.count)
    }
}

/// `C(n, k)` by the multiplicative formula; every partial product
/// `C(n-k+i, i)` is an integer, so each division is exact.
pub fn keyspace_size(n: u64, k: u64) -> Result<Keyspace> {
    if k > n {
        return Err(Error::ChooseOutOfRange { n, k });
    }
    let k_eff = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 1..=k_eff {
        acc *= n - k_eff + i;
        acc /= i;
    }
    Ok(Keyspace { n, k, count: acc })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn histogram_basics() {
        let all: Vec<u8> = (0..=255).collect();
        let h = byte_histogram(&all);
        assert!(h.counts().iter().all(|&c| c == 1));
        assert_eq!(h.total(), 256);
        let empty = byte_histogram(&[]);
        assert_eq!(empty.total(), 0);
        assert!(empty.counts().iter().all(|&c| c == 0));
    }

    #[test]
    fn merge_is_binwise_sum() {
        let a = b"hello world";
        let b = b"goodbye";
        let mut h = byte_histogram(a);
        h.merge(&byte_histogram(b));
        assert_eq!(h, byte_histogram(&[&a[..], &b[..]].concat()));
    }

    #[test]
    fn summary_examples() {
        let all: Vec<u8> = (0..=255).collect();
        let s: HistogramSummary<f64> = summarize(&byte_histogram(&all)).unwrap();
        assert_eq!((s.mean, s.stddev, s.cv), (1.0, 0.0, 0.0));

        let k = 7u64;
        let counts: [u64; 256] = std::array::from_fn(|i| if i % 2 == 0 { 0 } else { 2 * k });
        let s: HistogramSummary<f64> = summarize(&ByteHistogram::from_counts(counts)).unwrap();
        assert_eq!(s.mean, k as f64);
        assert!((s.stddev - k as f64).abs() < 1e-12);
        assert!((s.cv - 1.0).abs() < 1e-12);

        let s32: HistogramSummary<f32> = summarize(&ByteHistogram::from_counts(counts)).unwrap();
        assert!((s32.cv - 1.0).abs() < 1e-6);

        assert!(matches!(
            summarize::<f64>(&ByteHistogram::default()),
            Err(Error::EmptyHistogram)
        ));
    }

    #[test]
    fn mean_is_exact_at_half_a_million_bytes() {
        let counts: [u64; 256] = std::array::from_fn(|i| 1953 + (i % 8 == 0) as u64);
        let h = ByteHistogram::from_counts(counts);
        assert_eq!(h.total(), 500_000);
        assert_eq!(summarize::<f64>(&h).unwrap().mean, 1953.125);
    }

    #[test]
    fn chi_square_examples() {
        let counts = [10u64; 256];
        assert_eq!(
            chi_square_uniform::<f64>(&ByteHistogram::from_counts(counts)).unwrap(),
            0.0
        );

        let n = 2560u64;
        let mut counts = [0u64; 256];
        counts[17] = n;
        let chi = chi_square_uniform::<f64>(&ByteHistogram::from_counts(counts)).unwrap();
        assert!((chi - 255.0 * n as f64).abs() < 1e-6);

        let short = byte_histogram(&[0u8; 1279]);
        assert!(matches!(
            chi_square_uniform::<f64>(&short),
            Err(Error::InsufficientSample {
                needed: 1280,
                total: 1279
            })
        ));
    }

    #[test]
    fn keyspace_examples() {
        assert_eq!(keyspace_size(5, 2).unwrap().count, BigUint::from(10u32));
        assert_eq!(keyspace_size(42, 0).unwrap().count, BigUint::one());
        assert_eq!(keyspace_size(0, 0).unwrap().count, BigUint::one());
        assert!(matches!(
            keyspace_size(3, 4),
            Err(Error::ChooseOutOfRange { n: 3, k: 4 })
        ));
    }

    #[test]
    fn keyspace_rendering() {
        let ks = keyspace_size(1_000_000, 10).unwrap();
        assert_eq!(ks.scientific(3), "2.76e53");
        assert_eq!(ks.scientific(4), "2.756e53");
        assert!((ks.log10() - 53.4403).abs() < 1e-3);
        let small = keyspace_size(5, 2).unwrap();
        assert_eq!(small.scientific(3), "1.00e1");
        assert_eq!(keyspace_size(20, 10).unwrap().scientific(1), "2e5");
        // 999.. rounds up into a new decade
        let ks = Keyspace {
            n: 0,
            k: 0,
            count: BigUint::from(99_960u32),
        };
        assert_eq!(ks.scientific(3), "1.00e5");
    }
}
