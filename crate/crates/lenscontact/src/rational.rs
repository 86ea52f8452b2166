//! Exact integer/rational helpers: gcd, extended Euclid, continued-fraction
//! convergents, rational detection at an explicit (Dmax, tol) certificate,
//! and a small exact layer for quadratic irrationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Extended Euclid: returns (g, x, y) with a*x + b*y = g = gcd(a, b).
pub fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_x, mut x) = (1i64, 0i64);
    let (mut old_y, mut y) = (0i64, 1i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_x, x) = (x, old_x - q * x);
        (old_y, y) = (y, old_y - q * y);
    }
    if old_r < 0 {
        (-old_r, -old_x, -old_y)
    } else {
        (old_r, old_x, old_y)
    }
}

/// Modular inverse of `a` mod `m` (m >= 1), in [0, m).
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    if m == 1 {
        return Some(0);
    }
    let a = a.rem_euclid(m);
    let (g, x, _) = egcd(a, m);
    if g != 1 {
        None
    } else {
        Some(x.rem_euclid(m))
    }
}

/// Continued-fraction convergents n/d of x, in order, with d <= dmax.
/// Stops when floating precision is exhausted.
pub fn convergents(x: f64, dmax: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    // p_{-2}/q_{-2} = 0/1, p_{-1}/q_{-1} = 1/0
    let (mut h0, mut k0): (i128, i128) = (0, 1);
    let (mut h1, mut k1): (i128, i128) = (1, 0);
    let mut xi = x;
    for _ in 0..64 {
        let a = xi.floor();
        if !a.is_finite() || a.abs() > 9e17 {
            break;
        }
        let a_int = a as i128;
        let h2 = a_int * h1 + h0;
        let k2 = a_int * k1 + k0;
        if k2 > dmax as i128 {
            break;
        }
        out.push((h2 as i64, k2 as i64));
        (h0, k0) = (h1, k1);
        (h1, k1) = (h2, k2);
        let frac = xi - a;
        // convergent already exact at working precision
        if frac.abs() < 1e-18 * xi.abs().max(1.0) {
            break;
        }
        xi = 1.0 / frac;
    }
    out
}

/// Detect whether `x` is within `tol` of a reduced fraction n/d with
/// d <= dmax. Returns the smallest-denominator such fraction among the
/// continued-fraction convergents (plus the final semiconvergent), or `None`.
///
/// The verdict is only meaningful relative to the certificate (dmax, tol);
/// both are recorded wherever the result feeds a classification.
pub fn rational_detect(x: f64, dmax: i64, tol: f64) -> Option<(i64, i64)> {
    assert!(dmax >= 1, "rational_detect requires dmax >= 1");
    let convs = convergents(x, dmax);
    for &(n, d) in &convs {
        if (x - n as f64 / d as f64).abs() < tol {
            return Some((n, d));
        }
    }
    // best approximation with denominator <= dmax may be a semiconvergent
    // between the last two convergents
    if convs.len() >= 2 {
        let (h1, k1) = convs[convs.len() - 1];
        let (h0, k0) = convs[convs.len() - 2];
        let t = (dmax - k0) / k1;
        if t > 0 {
            let n = h0 + t * h1;
            let d = k0 + t * k1;
            if d <= dmax && (x - n as f64 / d as f64).abs() < tol {
                let g = gcd_i64(n, d);
                return Some((n / g, d / g));
            }
        }
    }
    None
}

/// Exact reduced fraction arithmetic used for Seifert invariants.
pub fn big_ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Denominator of x mod 1 for a reduced fraction: same as the reduced
/// denominator of x itself.
pub fn mod1_denominator(r: &BigRational) -> BigInt {
    r.denom().abs()
}

/// Reduced fractional part in [0, 1).
pub fn mod1(r: &BigRational) -> BigRational {
    let f = r - r.floor();
    if f < BigRational::zero() {
        f + BigRational::one()
    } else {
        f
    }
}

/// A real number of the form (a + b·√d)/c with integer a, b, c and d a
/// positive non-square; rationality is decidable exactly (b = 0).
///
/// This is the exact witness layer for "the period ratio is irrational":
/// floating-point certificates are replaced by arithmetic where the inputs
/// are quadratic irrationals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadIrr {
    pub a: i64,
    pub b: i64,
    pub d: u64,
    pub c: i64,
}

fn is_square(n: u64) -> bool {
    let r = (n as f64).sqrt().round() as u64;
    r * r == n || (r + 1) * (r + 1) == n || (r.saturating_sub(1)).pow(2) == n
}

impl QuadIrr {
    pub fn new(a: i64, b: i64, d: u64, c: i64) -> Self {
        assert!(c != 0, "zero denominator");
        assert!(d >= 2 && !is_square(d), "d must be a positive non-square");
        Self { a, b, d, c }
    }

    pub fn rational(n: i64, den: i64) -> Self {
        assert!(den != 0);
        Self { a: n, b: 0, d: 2, c: den }
    }

    pub fn sqrt(d: u64) -> Self {
        Self::new(0, 1, d, 1)
    }

    pub fn is_rational(&self) -> bool {
        self.b == 0
    }

    pub fn value(&self) -> f64 {
        (self.a as f64 + self.b as f64 * (self.d as f64).sqrt()) / self.c as f64
    }

    /// Reciprocal, rationalizing the denominator. Panics for zero.
    pub fn recip(&self) -> Self {
        // 1/((a + b√d)/c) = c(a - b√d)/(a² - b²d)
        let norm = (self.a as i128) * (self.a as i128)
            - (self.b as i128) * (self.b as i128) * (self.d as i128);
        assert!(norm != 0, "reciprocal of zero quadratic irrational");
        let c = self.c as i128;
        let a = c * self.a as i128;
        let b = -c * self.b as i128;
        // reduce by gcd to keep things in i64 range
        let g = {
            let mut g = a.unsigned_abs().max(1);
            for v in [b.unsigned_abs(), norm.unsigned_abs()] {
                let (mut x, mut y) = (g, v);
                while y != 0 {
                    let t = x % y;
                    x = y;
                    y = t;
                }
                g = x;
            }
            g as i128
        };
        Self::new(
            (a / g) as i64,
            (b / g) as i64,
            self.d,
            (norm / g) as i64,
        )
    }
}
