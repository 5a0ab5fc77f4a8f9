//! Double-word ("double-double") arithmetic: an unevaluated sum `hi + lo`
//! of two f64 with `|lo| ≤ ulp(hi)/2`, giving roughly 106 bits of precision.
//!
//! Only what the mid-range Taylor sum needs is provided: the basic field
//! operations, `exp`, `ln` and `ln Γ` for positive arguments.

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DoubleWord {
    pub hi: f64,
    pub lo: f64,
}

const LN2: DoubleWord = DoubleWord {
    hi: std::f64::consts::LN_2,
    lo: 2.319_046_813_846_299_6e-17,
};
const HALF_LN_2PI: DoubleWord = DoubleWord {
    hi: 0.918_938_533_204_672_8,
    lo: -3.878_294_158_067_241_4e-17,
};

/// Stirling-series coefficients B_{2j} / (2j (2j-1)) as exact
/// (numerator, denominator) pairs, j = 1..=15.
const STIRLING: [(f64, f64); 15] = [
    (1.0, 12.0),
    (-1.0, 360.0),
    (1.0, 1260.0),
    (-1.0, 1680.0),
    (1.0, 1188.0),
    (-691.0, 360_360.0),
    (1.0, 156.0),
    (-3617.0, 122_400.0),
    (43_867.0, 244_188.0),
    (-174_611.0, 125_400.0),
    (77_683.0, 5_796.0),
    (-236_364_091.0, 1_506_960.0),
    (657_931.0, 300.0),
    (-3_392_780_147.0, 93_960.0),
    (1_723_168_255_201.0, 2_492_028.0),
];

/// Argument above which the Stirling series alone is accurate to ~1e-33.
const STIRLING_MIN: f64 = 30.0;

#[inline]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn fast_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
pub fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleWord {
    pub const ZERO: DoubleWord = DoubleWord { hi: 0.0, lo: 0.0 };
    pub const ONE: DoubleWord = DoubleWord { hi: 1.0, lo: 0.0 };

    #[inline]
    pub const fn from_f64(x: f64) -> Self {
        DoubleWord { hi: x, lo: 0.0 }
    }

    #[inline]
    fn renorm(hi: f64, lo: f64) -> Self {
        let (hi, lo) = fast_two_sum(hi, lo);
        DoubleWord { hi, lo }
    }

    /// Exact product of two doubles.
    #[inline]
    pub fn from_product(a: f64, b: f64) -> Self {
        let (hi, lo) = two_prod(a, b);
        DoubleWord { hi, lo }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    #[inline]
    pub fn add_f64(self, b: f64) -> Self {
        let (s, e) = two_sum(self.hi, b);
        Self::renorm(s, e + self.lo)
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        Self::renorm(p, self.lo.mul_add(b, e))
    }

    /// Multiplication by a power of two, exact barring over/underflow.
    #[inline]
    fn scale(self, s: f64) -> Self {
        DoubleWord {
            hi: self.hi * s,
            lo: self.lo * s,
        }
    }

    pub fn recip(self) -> Self {
        DoubleWord::ONE / self
    }

    pub fn exp(self) -> Self {
        if self.hi > 709.7 {
            return DoubleWord::from_f64(f64::INFINITY);
        }
        if self.hi < -745.2 {
            return DoubleWord::ZERO;
        }
        if self.hi == 0.0 {
            return DoubleWord::ONE;
        }
        let m = (self.hi / LN2.hi).round();
        let r = self - LN2.mul_f64(m);
        // u = expm1(r / 2^10) by Taylor series, then undo the halving with
        // (1 + u)^2 - 1 = u (2 + u) to keep relative precision in u.
        let s = r.scale(1.0 / 1024.0);
        let mut term = s;
        let mut u = s;
        for k in 2..=13 {
            term = (term * s) / DoubleWord::from_f64(k as f64);
            u = u + term;
            if term.hi.abs() < 1e-36 {
                break;
            }
        }
        for _ in 0..10 {
            u = u * u.add_f64(2.0);
        }
        let e = u.add_f64(1.0);
        // 2^m, split in two to stay in range near the extremes
        let m = m as i32;
        let half = m / 2;
        e.scale(2f64.powi(half)).scale(2f64.powi(m - half))
    }

    /// Natural logarithm of a positive value.
    pub fn ln(self) -> Self {
        debug_assert!(self.hi > 0.0);
        let y = DoubleWord::from_f64(self.hi.ln());
        // one Newton step on exp(y) = x doubles the 53-bit starting accuracy
        y + (self * (-y).exp()).add_f64(-1.0)
    }
}

impl Add for DoubleWord {
    type Output = DoubleWord;
    #[inline]
    fn add(self, b: DoubleWord) -> DoubleWord {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = fast_two_sum(s, e + t);
        DoubleWord::renorm(s, e + f)
    }
}

impl Neg for DoubleWord {
    type Output = DoubleWord;
    #[inline]
    fn neg(self) -> DoubleWord {
        DoubleWord {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for DoubleWord {
    type Output = DoubleWord;
    #[inline]
    fn sub(self, b: DoubleWord) -> DoubleWord {
        self + (-b)
    }
}

impl Mul for DoubleWord {
    type Output = DoubleWord;
    #[inline]
    fn mul(self, b: DoubleWord) -> DoubleWord {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        DoubleWord::renorm(p, e)
    }
}

impl Div for DoubleWord {
    type Output = DoubleWord;
    fn div(self, b: DoubleWord) -> DoubleWord {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        DoubleWord::renorm(q1, q2).add_f64(q3)
    }
}

/// ln Γ(z) for z > 0 in double-word precision.
pub fn ln_gamma(z: DoubleWord) -> DoubleWord {
    debug_assert!(z.hi > 0.0);
    let mut w = z;
    let mut shift = DoubleWord::ONE;
    while w.hi < STIRLING_MIN {
        shift = shift * w;
        w = w.add_f64(1.0);
    }
    let inv = w.recip();
    let inv2 = inv * inv;
    let mut power = inv;
    let mut series = DoubleWord::ZERO;
    for &(num, den) in STIRLING.iter() {
        let coeff = DoubleWord::from_f64(num) / DoubleWord::from_f64(den);
        series = series + coeff * power;
        power = power * inv2;
    }
    let main = w.add_f64(-0.5) * w.ln() - w + HALF_LN_2PI + series;
    if shift.hi == 1.0 && shift.lo == 0.0 {
        main
    } else {
        main - shift.ln()
    }
}
