//! Binary fixed-point reals with 384 fractional bits (about 115 decimal
//! digits after the point), enough to resolve frequency ratios that differ
//! from one by parts in 1e10 without cancellation.
//!
//! Values are a signed big integer scaled by `2^-FRAC_BITS`. Conversion from
//! `f64` is exact for every input of magnitude at least `2^-331`; products and
//! quotients truncate toward negative infinity.

use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, ToPrimitive, Zero};

pub const FRAC_BITS: u32 = 384;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExtReal(BigInt);

impl ExtReal {
    pub fn zero() -> Self {
        ExtReal(BigInt::zero())
    }

    pub fn one() -> Self {
        ExtReal(BigInt::from(1) << FRAC_BITS)
    }

    pub fn from_i64(v: i64) -> Self {
        ExtReal(BigInt::from(v) << FRAC_BITS)
    }

    /// Exact conversion (the input must be finite).
    pub fn from_f64(v: f64) -> Self {
        assert!(v.is_finite(), "ExtReal::from_f64 on non-finite {v}");
        if v == 0.0 {
            return Self::zero();
        }
        let bits = v.to_bits();
        let negative = bits >> 63 == 1;
        let exp_bits = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mantissa, exp) = if exp_bits == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), exp_bits - 1075)
        };
        let m = BigInt::from(mantissa);
        let shift = exp + FRAC_BITS as i64;
        let mut scaled = if shift >= 0 {
            m << shift as usize
        } else {
            m >> (-shift) as usize
        };
        if negative {
            scaled = -scaled;
        }
        ExtReal(scaled)
    }

    /// Nearest-ish `f64` (within one ulp).
    pub fn to_f64(&self) -> f64 {
        let bits = self.0.bits();
        // keep 64 significant bits so the integer -> f64 step stays in range
        if bits > 64 {
            let drop = bits - 64;
            let head = (&self.0 >> drop as usize).to_f64().unwrap_or(f64::NAN);
            head * pow2(drop as i64 - FRAC_BITS as i64)
        } else {
            self.0.to_f64().unwrap_or(f64::NAN) * pow2(-(FRAC_BITS as i64))
        }
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn signum(&self) -> Ordering {
        match self.0.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }

    /// Square root, `None` for negative input.
    pub fn sqrt(&self) -> Option<Self> {
        if self.0.is_negative() {
            return None;
        }
        Some(ExtReal((&self.0 << FRAC_BITS).sqrt()))
    }

    /// Quotient, `None` for a zero divisor.
    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.0.is_zero() {
            return None;
        }
        Some(ExtReal((&self.0 << FRAC_BITS) / &rhs.0))
    }

    pub fn abs(&self) -> Self {
        ExtReal(self.0.abs())
    }
}

fn pow2(e: i64) -> f64 {
    // split so neither factor over/underflows
    let half = e / 2;
    2f64.powi(half as i32) * 2f64.powi((e - half) as i32)
}

impl Add for &ExtReal {
    type Output = ExtReal;
    fn add(self, rhs: &ExtReal) -> ExtReal {
        ExtReal(&self.0 + &rhs.0)
    }
}

impl Sub for &ExtReal {
    type Output = ExtReal;
    fn sub(self, rhs: &ExtReal) -> ExtReal {
        ExtReal(&self.0 - &rhs.0)
    }
}

impl Mul for &ExtReal {
    type Output = ExtReal;
    fn mul(self, rhs: &ExtReal) -> ExtReal {
        ExtReal((&self.0 * &rhs.0) >> FRAC_BITS)
    }
}

impl Div for &ExtReal {
    type Output = ExtReal;
    fn div(self, rhs: &ExtReal) -> ExtReal {
        self.checked_div(rhs).expect("ExtReal division by zero")
    }
}

impl Neg for &ExtReal {
    type Output = ExtReal;
    fn neg(self) -> ExtReal {
        ExtReal(-&self.0)
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for ExtReal {
            type Output = ExtReal;
            fn $m(self, rhs: ExtReal) -> ExtReal {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&ExtReal> for ExtReal {
            type Output = ExtReal;
            fn $m(self, rhs: &ExtReal) -> ExtReal {
                (&self).$m(rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);
