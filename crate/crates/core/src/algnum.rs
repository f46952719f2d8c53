//! Exact arithmetic in `Q(√2, √3, √5)`.
//!
//! An element is stored as eight rational coordinates over the basis
//! `√d` for the squarefree products `d` of `{2, 3, 5}`. Coordinate `k`
//! belongs to `√(2^b0 · 3^b1 · 5^b2)` where `b_i` is bit `i` of `k`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

const PRIMES: [i64; 3] = [2, 3, 5];

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgNum {
    c: [BigRational; 8],
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn mask_product(mask: usize) -> i64 {
    (0..3).filter(|b| mask >> b & 1 == 1).map(|b| PRIMES[b]).product()
}

impl AlgNum {
    pub fn zero() -> AlgNum {
        AlgNum { c: Default::default() }
    }

    pub fn one() -> AlgNum {
        AlgNum::rational(BigRational::one())
    }

    pub fn rational(r: BigRational) -> AlgNum {
        let mut x = AlgNum::zero();
        x.c[0] = r;
        x
    }

    pub fn from_ratio(n: i64, d: i64) -> AlgNum {
        AlgNum::rational(q(n, d))
    }

    /// `r · √d` for `d` a squarefree product of 2, 3, 5.
    pub fn sqrt_term(r: BigRational, d: u32) -> Option<AlgNum> {
        let mask = (0..8).find(|&m| mask_product(m) == d as i64)?;
        let mut x = AlgNum::zero();
        x.c[mask] = r;
        Some(x)
    }

    pub fn coords(&self) -> &[BigRational; 8] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.c[1..].iter().all(Zero::is_zero)
    }

    /// `cos(π/m)` for `m ∈ {2, 3, 4, 5, 6}`.
    pub fn cos_pi_over(m: u32) -> Option<AlgNum> {
        let x = match m {
            2 => AlgNum::zero(),
            3 => AlgNum::from_ratio(1, 2),
            4 => AlgNum::sqrt_term(q(1, 2), 2)?,
            5 => &AlgNum::from_ratio(1, 4) + &AlgNum::sqrt_term(q(1, 4), 5)?,
            6 => AlgNum::sqrt_term(q(1, 2), 3)?,
            _ => return None,
        };
        Some(x)
    }

    /// Splits off the part involving prime `level`: `self = a + b·√p`.
    fn split(&self, level: usize) -> (AlgNum, AlgNum) {
        let (mut a, mut b) = (AlgNum::zero(), AlgNum::zero());
        for m in 0..8 {
            if m >> level & 1 == 1 {
                b.c[m ^ (1 << level)] = self.c[m].clone();
            } else {
                a.c[m] = self.c[m].clone();
            }
        }
        (a, b)
    }

    fn sign_below(&self, level: usize) -> i8 {
        if level == 0 {
            return match self.c[0].cmp(&BigRational::zero()) {
                std::cmp::Ordering::Greater => 1,
                std::cmp::Ordering::Equal => 0,
                std::cmp::Ordering::Less => -1,
            };
        }
        let top = level - 1;
        let (a, b) = self.split(top);
        let sa = a.sign_below(top);
        let sb = b.sign_below(top);
        if sb == 0 || sa == sb {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        // a and b√p have opposite signs: compare a² with p·b²
        let p = AlgNum::from_ratio(PRIMES[top], 1);
        let diff = &(&a * &a) - &(&p * &(&b * &b));
        sa * diff.sign_below(top)
    }

    /// Exact sign: -1, 0 or 1.
    pub fn sign(&self) -> i8 {
        self.sign_below(3)
    }

    fn inverse_below(&self, level: usize) -> Option<AlgNum> {
        if level == 0 {
            if self.c[0].is_zero() {
                return None;
            }
            return Some(AlgNum::rational(self.c[0].recip()));
        }
        let top = level - 1;
        let (a, b) = self.split(top);
        if b.is_zero() {
            return a.inverse_below(top);
        }
        // 1/(a + b√p) = (a - b√p)/(a² - p b²)
        let p = AlgNum::from_ratio(PRIMES[top], 1);
        let norm = &(&a * &a) - &(&p * &(&b * &b));
        let inv = norm.inverse_below(top)?;
        let root = AlgNum::sqrt_term(BigRational::one(), PRIMES[top] as u32).unwrap();
        let conj = &a - &(&b * &root);
        Some(&conj * &inv)
    }

    pub fn inverse(&self) -> Option<AlgNum> {
        self.inverse_below(3)
    }

    pub fn to_f64(&self) -> f64 {
        (0..8).map(|m| crate::poly::rational_to_f64(&self.c[m]) * (mask_product(m) as f64).sqrt()).sum()
    }

    /// Stable byte encoding of the coordinates, for hashing exact matrices.
    pub fn write_bytes(&self, out: &mut Vec<u8>) {
        for x in &self.c {
            let (sn, n) = x.numer().to_bytes_le();
            let (_, d) = x.denom().to_bytes_le();
            out.push(sn as u8);
            out.extend((n.len() as u32).to_le_bytes());
            out.extend(n);
            out.extend((d.len() as u32).to_le_bytes());
            out.extend(d);
        }
    }
}

impl Add for &AlgNum {
    type Output = AlgNum;
    fn add(self, rhs: &AlgNum) -> AlgNum {
        let mut c = self.c.clone();
        for (x, y) in c.iter_mut().zip(&rhs.c) {
            *x += y;
        }
        AlgNum { c }
    }
}

impl Sub for &AlgNum {
    type Output = AlgNum;
    fn sub(self, rhs: &AlgNum) -> AlgNum {
        let mut c = self.c.clone();
        for (x, y) in c.iter_mut().zip(&rhs.c) {
            *x -= y;
        }
        AlgNum { c }
    }
}

impl Neg for &AlgNum {
    type Output = AlgNum;
    fn neg(self) -> AlgNum {
        AlgNum { c: self.c.clone().map(|x| -x) }
    }
}

impl Mul for &AlgNum {
    type Output = AlgNum;
    fn mul(self, rhs: &AlgNum) -> AlgNum {
        let mut out = AlgNum::zero();
        for a in 0..8 {
            if self.c[a].is_zero() {
                continue;
            }
            for b in 0..8 {
                if rhs.c[b].is_zero() {
                    continue;
                }
                let f = BigRational::from_integer(BigInt::from(mask_product(a & b)));
                out.c[a ^ b] += &self.c[a] * &rhs.c[b] * f;
            }
        }
        out
    }
}

impl fmt::Display for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for m in 0..8 {
            let x = &self.c[m];
            if x.is_zero() {
                continue;
            }
            let neg = x.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let a = x.abs();
            if m == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "sqrt{}", mask_product(m))?;
            } else {
                write!(f, "{a}*sqrt{}", mask_product(m))?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgNum({self})")
    }
}
