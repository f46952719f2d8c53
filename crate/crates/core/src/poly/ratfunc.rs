use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{IntPoly, PolyError};

/// Reduced quotient of integer polynomials.
///
/// Numerator and denominator are coprime over `Q`, the denominator has a
/// positive leading coefficient, and the two share no common integer factor.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: IntPoly,
    den: IntPoly,
}

impl RatFunc {
    pub fn new(num: IntPoly, den: IntPoly) -> Result<RatFunc, PolyError> {
        if den.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        let g = num.gcd(&den);
        let (num, den) =
            if g.degree().unwrap_or(0) > 0 { (exact_quotient(&num, &g), exact_quotient(&den, &g)) } else { (num, den) };
        Ok(RatFunc::normalized(num, den))
    }

    /// Skips the gcd; caller guarantees coprimality over `Q`.
    pub(crate) fn from_coprime(num: IntPoly, den: IntPoly) -> RatFunc {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::normalized(num, den)
    }

    fn normalized(num: IntPoly, den: IntPoly) -> RatFunc {
        let mut c = num.content().gcd(&den.content());
        if den.leading().unwrap().is_negative() {
            c = -c;
        }
        RatFunc { num: num.div_scalar(&c), den: den.div_scalar(&c) }
    }

    pub fn zero() -> RatFunc {
        RatFunc { num: IntPoly::zero(), den: IntPoly::one() }
    }

    pub fn one() -> RatFunc {
        RatFunc::from_poly(IntPoly::one())
    }

    pub fn from_poly(p: IntPoly) -> RatFunc {
        RatFunc::from_coprime(p, IntPoly::one())
    }

    /// `1 / p`.
    pub fn recip_poly(p: &IntPoly) -> Result<RatFunc, PolyError> {
        RatFunc::new(IntPoly::one(), p.clone())
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Some(polynomial) when the denominator is a constant that divides it.
    pub fn as_poly(&self) -> Option<IntPoly> {
        if self.den.degree() == Some(0) && self.den.coeff(0) == num_bigint::BigInt::from(1) {
            Some(self.num.clone())
        } else {
            None
        }
    }

    pub fn recip(&self) -> Result<RatFunc, PolyError> {
        if self.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(RatFunc::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc, PolyError> {
        Ok(self * &rhs.recip()?)
    }

    /// The first `k + 1` Taylor coefficients at `t = 0`, exact when the
    /// denominator's constant term is a unit.
    pub fn series(&self, k: usize) -> Result<Vec<num_bigint::BigInt>, PolyError> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(PolyError::PoleAtZero);
        }
        let mut out = Vec::with_capacity(k + 1);
        for i in 0..=k {
            let mut acc = self.num.coeff(i);
            for j in 1..=i.min(self.den.degree().unwrap_or(0)) {
                acc -= self.den.coeff(j) * &out[i - j];
            }
            let (q, r) = acc.div_rem(&d0);
            if !r.is_zero() {
                return Err(PolyError::NonIntegralSeries);
            }
            out.push(q);
        }
        Ok(out)
    }
}

fn exact_quotient(a: &IntPoly, g: &IntPoly) -> IntPoly {
    if let Some(q) = a.div_exact(g) {
        return q;
    }
    let lc = g.leading().unwrap().clone();
    let scaled = a.scale(&num_traits::pow(lc, a.coeffs().len()));
    scaled.div_exact(g).expect("gcd divides")
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::new(num, &self.den * &rhs.den).unwrap()
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    /// Panics on division by the zero function; see [`RatFunc::checked_div`].
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by the zero rational function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Zero for RatFunc {
    fn zero() -> RatFunc {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        &self + &rhs
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.as_poly().is_some() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::bracket_product;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    fn inv(ks: &[u32]) -> RatFunc {
        RatFunc::recip_poly(&bracket_product(ks).unwrap()).unwrap()
    }

    #[test]
    fn cancellation() {
        let r = RatFunc::new(p(&[-1, 0, 1]), p(&[-1, 1])).unwrap();
        assert_eq!(r.num(), &p(&[1, 1]));
        assert_eq!(r.den(), &IntPoly::one());
        let r = RatFunc::new(p(&[2, 2]), p(&[-4])).unwrap();
        assert_eq!(r.num(), &p(&[-1, -1]));
        assert_eq!(r.den(), &p(&[2]));
        assert_eq!(RatFunc::new(p(&[1]), IntPoly::zero()), Err(PolyError::ZeroDenominator));
        assert_eq!(RatFunc::zero().recip(), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn bracket_differences() {
        let d = &inv(&[2, 2, 3]) - &inv(&[2, 3, 4]);
        let want = RatFunc::new(p(&[0, 0, 1, 1]), bracket_product(&[2, 2, 3, 4]).unwrap()).unwrap();
        assert_eq!(d, want);
        let d = &inv(&[2, 2, 2]) - &inv(&[2, 2, 3]);
        let want = RatFunc::new(p(&[0, 0, 1]), bracket_product(&[2, 2, 2, 3]).unwrap()).unwrap();
        assert_eq!(d, want);
    }

    #[test]
    fn series_of_geometric() {
        let r = RatFunc::new(IntPoly::one(), p(&[1, -1, -1])).unwrap();
        let s: Vec<i64> = r.series(7).unwrap().iter().map(|c| c.try_into().unwrap()).collect();
        assert_eq!(s, vec![1, 1, 2, 3, 5, 8, 13, 21]);
        assert_eq!(RatFunc::new(IntPoly::one(), p(&[0, 1])).unwrap().series(2), Err(PolyError::PoleAtZero));
    }
}
