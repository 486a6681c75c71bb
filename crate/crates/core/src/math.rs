//! Numeric helpers shared across modules (`no_std`: all transcendental
//! functions go through `libm`).

use rand_core::RngCore;

#[inline]
pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

/// Uniform draw in `[0, 1)` with 53 bits of precision.
#[inline]
pub(crate) fn unit_f64<R: RngCore>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// SplitMix64 finalizer, used to derive independent per-run seeds.
pub fn mix_seed(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Neumaier compensated summation.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if libm::fabs(self.sum) >= libm::fabs(x) {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn merge(&mut self, other: &CompensatedSum) {
        self.add(other.sum);
        self.add(other.compensation);
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// `x * n` rounded once to the nearest `f64` (ties to even), with `n`
/// taken as an exact 128-bit integer rather than first converted to `f64`.
///
/// Exact for every finite `x` whose result lands in the normal range.
pub(crate) fn mul_exact_u128(x: f64, n: u128) -> f64 {
    if n == 0 || x == 0.0 || !x.is_finite() {
        return x * (n as f64);
    }
    let bits = x.to_bits();
    let negative = bits >> 63 == 1;
    let exp_field = ((bits >> 52) & 0x7ff) as i32;
    let frac = bits & ((1u64 << 52) - 1);
    let (mantissa, exp) = if exp_field == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), exp_field - 1075)
    };

    let product = U256::mul_u64_u128(mantissa, n);
    let len = product.bit_len();
    let (rounded, shift) = if len <= 53 {
        (product.lo as u64, 0)
    } else {
        let shift = len - 53;
        let mut q = product.shr(shift).lo as u64;
        let rem = product.low_bits(shift);
        let half = U256::one().shl(shift - 1);
        match rem.cmp(&half) {
            core::cmp::Ordering::Greater => q += 1,
            core::cmp::Ordering::Equal if q & 1 == 1 => q += 1,
            _ => {}
        }
        (q, shift)
    };
    let magnitude = libm::scalbn(rounded as f64, exp + shift as i32);
    if negative {
        -magnitude
    } else {
        magnitude
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct U256 {
    hi: u128,
    lo: u128,
}

impl U256 {
    fn one() -> Self {
        U256 { hi: 0, lo: 1 }
    }

    fn mul_u64_u128(a: u64, b: u128) -> Self {
        let a = a as u128;
        let b_lo = b & u64::MAX as u128;
        let b_hi = b >> 64;
        let low = a * b_lo;
        let mid = a * b_hi;
        let (lo, carry) = low.overflowing_add(mid << 64);
        let hi = (mid >> 64) + carry as u128;
        U256 { hi, lo }
    }

    fn bit_len(&self) -> u32 {
        if self.hi != 0 {
            256 - self.hi.leading_zeros()
        } else {
            128 - self.lo.leading_zeros()
        }
    }

    fn shr(&self, n: u32) -> Self {
        match n {
            0 => *self,
            1..=127 => U256 {
                hi: self.hi >> n,
                lo: (self.lo >> n) | (self.hi << (128 - n)),
            },
            128..=255 => U256 {
                hi: 0,
                lo: self.hi >> (n - 128),
            },
            _ => U256 { hi: 0, lo: 0 },
        }
    }

    fn shl(&self, n: u32) -> Self {
        match n {
            0 => *self,
            1..=127 => U256 {
                hi: (self.hi << n) | (self.lo >> (128 - n)),
                lo: self.lo << n,
            },
            128..=255 => U256 {
                hi: self.lo << (n - 128),
                lo: 0,
            },
            _ => U256 { hi: 0, lo: 0 },
        }
    }

    fn low_bits(&self, n: u32) -> Self {
        match n {
            0 => U256 { hi: 0, lo: 0 },
            1..=127 => U256 {
                hi: 0,
                lo: self.lo & ((1u128 << n) - 1),
            },
            128 => U256 { hi: 0, lo: self.lo },
            129..=255 => U256 {
                hi: self.hi & ((1u128 << (n - 128)) - 1),
                lo: self.lo,
            },
            _ => *self,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_products_match_native_multiplication() {
        for &(x, n) in &[(0.5, 500u128), (-0.4, 7), (0.8316, 123_456), (1.0, 1 << 52)] {
            assert_eq!(mul_exact_u128(x, n), x * n as f64);
        }
    }

    #[test]
    fn zero_factor_keeps_ieee_sign() {
        assert_eq!(mul_exact_u128(-0.4, 0), 0.0);
        assert_eq!(mul_exact_u128(0.0, 99), 0.0);
    }

    #[test]
    fn wide_weight_is_rounded_once() {
        // 2^53 + 1 is not representable; converting first would lose the +1.
        let n = (1u128 << 53) + 1;
        let x = 1.0 + f64::EPSILON;
        // exact = 2^53 + 3 + 2^-52, nearest representable is 2^53 + 4
        assert_eq!(mul_exact_u128(x, n), 9007199254740996.0);
        assert_eq!(x * n as f64, 9007199254740994.0);
    }

    #[test]
    fn compensated_sum_recovers_cancellation() {
        let mut s = CompensatedSum::default();
        for x in [1e16, 1.0, -1e16] {
            s.add(x);
        }
        assert_eq!(s.value(), 1.0);
    }
}
