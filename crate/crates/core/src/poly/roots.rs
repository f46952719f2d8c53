//! Certified isolation of real roots with Sturm sequences over exact dyadic
//! endpoints.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{IntPoly, PolyError};

/// Sturm sequence of a square-free polynomial.
#[derive(Debug, Clone)]
pub struct SturmSequence {
    seq: Vec<IntPoly>,
}

impl SturmSequence {
    /// `p` must be square-free.
    pub fn new(p: &IntPoly) -> SturmSequence {
        let mut seq = vec![p.clone(), p.derivative()];
        while !seq.last().unwrap().is_zero() && seq.last().unwrap().degree() > Some(0) {
            let n = seq.len();
            let (a, b) = (&seq[n - 2], &seq[n - 1]);
            let lc = b.leading().unwrap();
            let delta = a.degree().unwrap() - b.degree().unwrap();
            // prem = lc^(delta+1) * rem, so flip when that factor is negative
            let factor_negative = lc.is_negative() && (delta + 1) % 2 == 1;
            let r = a.pseudo_rem(b);
            if r.is_zero() {
                break;
            }
            let mut r = r.primitive_keep_sign();
            if !factor_negative {
                r = -&r;
            }
            seq.push(r);
        }
        if seq.last().is_some_and(IntPoly::is_zero) {
            seq.pop();
        }
        SturmSequence { seq }
    }

    fn variations_at(&self, x: &BigRational) -> usize {
        let mut count = 0;
        let mut prev = 0i8;
        for p in &self.seq {
            let s = sign_at(p, x);
            if s != 0 {
                if prev != 0 && s != prev {
                    count += 1;
                }
                prev = s;
            }
        }
        count
    }

    /// Number of distinct roots in `(a, b]`.
    pub fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }
}

trait PrimitiveKeepSign {
    fn primitive_keep_sign(&self) -> IntPoly;
}

impl PrimitiveKeepSign for IntPoly {
    fn primitive_keep_sign(&self) -> IntPoly {
        let c = self.content();
        if c.is_zero() {
            return self.clone();
        }
        self.div_scalar(&c)
    }
}

/// Sign of `p(x)` as -1, 0 or 1.
pub fn sign_at(p: &IntPoly, x: &BigRational) -> i8 {
    let v = p.eval_homogeneous(x.numer(), x.denom());
    match v.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

/// A closed interval `[lo, hi]` containing exactly one real root of a
/// square-free defining polynomial.
#[derive(Clone, PartialEq, Eq)]
pub struct RootInterval {
    lo: BigRational,
    hi: BigRational,
    poly: IntPoly,
}

impl RootInterval {
    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    /// Square-free polynomial whose root this is.
    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn midpoint_f64(&self) -> f64 {
        rational_to_f64(&self.midpoint())
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// Bisects until the width is at most `eps`.
    pub fn refine(&mut self, eps: &BigRational) {
        if self.is_exact() {
            return;
        }
        let two = BigRational::from_integer(BigInt::from(2));
        let s_lo = sign_at(&self.poly, &self.lo);
        if s_lo == 0 {
            self.hi = self.lo.clone();
            return;
        }
        if sign_at(&self.poly, &self.hi) == 0 {
            self.lo = self.hi.clone();
            return;
        }
        while self.width() > *eps {
            let mid = (&self.lo + &self.hi) / &two;
            match sign_at(&self.poly, &mid) {
                0 => {
                    self.lo = mid.clone();
                    self.hi = mid;
                    return;
                }
                s if s == s_lo => self.lo = mid,
                _ => self.hi = mid,
            }
        }
    }

    /// The image interval under `x -> 1/x` for a positive root; the defining
    /// polynomial is reversed accordingly.
    pub fn reciprocal(&self) -> RootInterval {
        assert!(self.lo.is_positive(), "reciprocal needs a positive interval");
        RootInterval { lo: self.hi.recip(), hi: self.lo.recip(), poly: self.poly.reverse().primitive() }
    }

    /// Certified comparison of the two enclosed real numbers.
    pub fn compare(&self, other: &RootInterval) -> Ordering {
        let (mut a, mut b) = (self.clone(), other.clone());
        // equality: a common root of the two polynomials inside both intervals
        let g = a.poly.gcd(&b.poly);
        let lo = a.lo.clone().max(b.lo.clone());
        let hi = a.hi.clone().min(b.hi.clone());
        if g.degree().unwrap_or(0) > 0 && lo <= hi && root_in_closed(&g, &lo, &hi) {
            return Ordering::Equal;
        }
        loop {
            if a.hi < b.lo {
                return Ordering::Less;
            }
            if b.hi < a.lo {
                return Ordering::Greater;
            }
            let wa = a.width() / BigRational::from_integer(BigInt::from(4));
            let wb = b.width() / BigRational::from_integer(BigInt::from(4));
            a.refine(&wa);
            b.refine(&wb);
            if a.is_exact() && b.is_exact() {
                return a.lo.cmp(&b.lo);
            }
        }
    }
}

fn root_in_closed(p: &IntPoly, lo: &BigRational, hi: &BigRational) -> bool {
    let sf = p.square_free();
    if sign_at(&sf, lo) == 0 {
        return true;
    }
    SturmSequence::new(&sf).count(lo, hi) > 0
}

impl fmt::Display for RootInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:.6} in [{}, {}] (width {:.1e})",
            self.midpoint_f64(),
            fmt_rational(&self.lo),
            fmt_rational(&self.hi),
            rational_to_f64(&self.width())
        )
    }
}

impl fmt::Debug for RootInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootInterval[{:.15}, {:.15}]", rational_to_f64(&self.lo), rational_to_f64(&self.hi))
    }
}

/// Renders an endpoint with 15 significant decimals.
fn fmt_rational(x: &BigRational) -> String {
    format!("{:.15}", rational_to_f64(x))
}

pub fn rational_to_f64(x: &BigRational) -> f64 {
    num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::NAN)
}

/// Power of two `>=` every positive root (Cauchy bound).
fn positive_root_bound(p: &IntPoly) -> BigRational {
    let lc = p.leading().unwrap().abs();
    let max = p.coeffs().iter().map(|c| c.abs()).max().unwrap();
    // 1 + max|a_i| / |a_n| <= 2^k
    let bound = BigRational::one() + BigRational::new(max, lc);
    let mut b = BigRational::one();
    while b < bound {
        b *= BigRational::from_integer(BigInt::from(2));
    }
    b
}

/// Isolates the smallest positive real root of `p` to width at most `eps`.
pub fn smallest_positive_root(p: &IntPoly, eps: &BigRational) -> Result<RootInterval, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if !eps.is_positive() {
        return Err(PolyError::BadTolerance);
    }
    let q = p.strip_low().square_free();
    if q.degree() == Some(0) {
        return Err(PolyError::NoPositiveRoot);
    }
    let sturm = SturmSequence::new(&q);
    let zero = BigRational::zero();
    let mut hi = positive_root_bound(&q);
    if sturm.count(&zero, &hi) == 0 {
        return Err(PolyError::NoPositiveRoot);
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let mut lo = zero;
    // shrink (lo, hi] until it holds exactly the smallest root
    loop {
        let n = sturm.count(&lo, &hi);
        if n == 1 {
            break;
        }
        let mid = (&lo + &hi) / &two;
        if sturm.count(&lo, &mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    // lo is never a root here: either 0 (stripped) or a point with no root in (0, lo]
    let mut r = RootInterval { lo, hi, poly: q };
    r.refine(eps);
    // keep the enclosure away from 0 so that reciprocals stay bounded
    while r.lo.is_zero() {
        let w = r.width() / &two;
        r.refine(&w);
    }
    Ok(r)
}
