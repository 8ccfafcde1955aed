//! Double-double arithmetic: unevaluated sums of two `f64`s giving roughly
//! 106 bits of significand.  Used wherever the toolkit needs high-precision
//! numeric evaluation (complex embeddings, the Euclidean construction check)
//! without reaching for a full MPFR-style dependency.
//!
//! The algorithms are the classical error-free transformations (Knuth's
//! two-sum, FMA-based two-product) composed in the usual Dekker/Bailey way.

use crate::exactnum::Rational;
use num_rational::BigRational;
use num_traits::ToPrimitive;

/// A double-double value `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    // f64::mul_add is an exactly-rounded FMA, so this recovers the rounding
    // error of the product exactly.
    let err = a.mul_add(b, -p);
    (p, err)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    /// π to double-double precision.
    pub const PI: Dd = Dd {
        hi: 3.141592653589793,
        lo: 1.2246467991473532e-16,
    };

    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn from_i64(x: i64) -> Dd {
        // i64 may exceed 2^53; split exactly.
        let hi = x as f64;
        let lo = (x - hi as i64) as f64;
        Dd { hi, lo }.renorm()
    }

    /// Convert an exact rational to double-double (correct to ~106 bits).
    pub fn from_rational(r: &Rational) -> Dd {
        let hi = r.to_f64().unwrap_or(f64::NAN);
        if !hi.is_finite() {
            return Dd { hi, lo: 0.0 };
        }
        let hi_exact = BigRational::from_float(hi).expect("finite float");
        let rest = r - hi_exact;
        let lo = rest.to_f64().unwrap_or(0.0);
        Dd { hi, lo }.renorm()
    }

    #[inline]
    fn renorm(self) -> Dd {
        let (hi, lo) = quick_two_sum(self.hi, self.lo);
        Dd { hi, lo }
    }

    pub fn add(self, o: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, o.hi);
        let (t1, t2) = two_sum(self.lo, o.lo);
        let (s1, s2b) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2b + t2);
        Dd { hi, lo }
    }

    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }

    pub fn mul(self, o: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, o.hi);
        let p2 = p2 + self.hi * o.lo + self.lo * o.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    pub fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self.sub(o.mul(Dd::from_f64(q1)));
        let q2 = r.hi / o.hi;
        let r2 = r.sub(o.mul(Dd::from_f64(q2)));
        let q3 = r2.hi / o.hi;
        Dd::from_f64(q1)
            .add(Dd::from_f64(q2))
            .add(Dd::from_f64(q3))
    }

    pub fn scale(self, k: f64) -> Dd {
        self.mul(Dd::from_f64(k))
    }

    pub fn sqrt(self) -> Dd {
        if self.hi == 0.0 && self.lo == 0.0 {
            return Dd::ZERO;
        }
        assert!(self.hi > 0.0, "dd sqrt of negative value {self:?}");
        let s = self.hi.sqrt();
        // One Newton step in double-double: s' = s + (x - s^2) / (2 s).
        let s_dd = Dd::from_f64(s);
        let diff = self.sub(s_dd.mul(s_dd));
        s_dd.add(diff.div(s_dd.scale(2.0)))
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            self.neg()
        } else {
            self
        }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn is_negative(self) -> bool {
        self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0)
    }

    pub fn is_positive(self) -> bool {
        self.hi > 0.0 || (self.hi == 0.0 && self.lo > 0.0)
    }

    pub fn lt(self, o: Dd) -> bool {
        self.sub(o).is_negative()
    }

    /// sin and cos by Taylor series after range reduction to |r| ≤ π/4.
    /// Accurate to roughly 1e-31 for the arguments used here.
    fn sincos_reduced(r: Dd) -> (Dd, Dd) {
        // sin(r) = Σ (-1)^k r^(2k+1)/(2k+1)!, cos likewise.
        let r2 = r.mul(r);
        let mut sin_term = r;
        let mut sin_acc = r;
        let mut k = 1i64;
        loop {
            sin_term = sin_term.mul(r2).div(Dd::from_i64((2 * k) * (2 * k + 1)));
            sin_term = sin_term.neg();
            sin_acc = sin_acc.add(sin_term);
            if sin_term.hi.abs() < 1e-35 {
                break;
            }
            k += 1;
        }
        let mut cos_term = Dd::ONE;
        let mut cos_acc = Dd::ONE;
        let mut k = 1i64;
        loop {
            cos_term = cos_term
                .mul(r2)
                .div(Dd::from_i64((2 * k - 1) * (2 * k)));
            cos_term = cos_term.neg();
            cos_acc = cos_acc.add(cos_term);
            if cos_term.hi.abs() < 1e-35 {
                break;
            }
            k += 1;
        }
        (sin_acc, cos_acc)
    }

    /// (cos, sin) of the angle 2π·num/den, computed in double-double.
    pub fn cos_sin_tau_frac(num: i64, den: i64) -> (Dd, Dd) {
        assert!(den > 0);
        let num = num.rem_euclid(den);
        // angle = 2π t with t = num/den ∈ [0, 1).  Reduce by quarter turns:
        // angle = (π/2)·q + r with q integer, |r| ≤ π/4.
        let t = Dd::from_i64(num).div(Dd::from_i64(den));
        // q = round(4t) ∈ {0..4}; r = 2π(t - q/4).
        let q = (4.0 * t.to_f64()).round() as i64;
        let frac = t.sub(Dd::from_i64(q).div(Dd::from_i64(4)));
        let r = frac.mul(Dd::PI).scale(2.0);
        let (s, c) = Dd::sincos_reduced(r);
        match q.rem_euclid(4) {
            0 => (c, s),
            1 => (s.neg(), c),
            2 => (c.neg(), s.neg()),
            _ => (s, c.neg()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn arithmetic_roundtrip() {
        let a = Dd::from_rational(&rat(1, 3));
        let b = Dd::from_rational(&rat(1, 7));
        let s = a.add(b).sub(b);
        assert!((s.to_f64() - 1.0 / 3.0).abs() < 1e-16);
        let p = a.mul(Dd::from_i64(3));
        assert!(p.sub(Dd::ONE).abs().to_f64() < 1e-30);
    }

    #[test]
    fn sqrt_three() {
        let s = Dd::from_i64(3).sqrt();
        let err = s.mul(s).sub(Dd::from_i64(3)).abs();
        assert!(err.to_f64() < 1e-30, "err {}", err.to_f64());
    }

    #[test]
    fn trig_identities() {
        for (num, den) in [(1, 12), (5, 8), (7, 10), (3, 4), (0, 1), (11, 12)] {
            let (c, s) = Dd::cos_sin_tau_frac(num, den);
            let one = c.mul(c).add(s.mul(s));
            assert!(one.sub(Dd::ONE).abs().to_f64() < 1e-30);
            let angle = 2.0 * std::f64::consts::PI * (num as f64) / (den as f64);
            assert!((c.to_f64() - angle.cos()).abs() < 1e-14);
            assert!((s.to_f64() - angle.sin()).abs() < 1e-14);
        }
    }

    #[test]
    fn division_accuracy() {
        let x = Dd::from_i64(1).div(Dd::from_i64(997));
        let back = x.mul(Dd::from_i64(997));
        assert!(back.sub(Dd::ONE).abs().to_f64() < 1e-30);
    }
}
