//! Exact arithmetic in the eighth cyclotomic field `Q(z)`, `z = exp(i*pi/4)`.
//!
//! An element is `c0 + c1*z + c2*z^2 + c3*z^3` with `z^4 = -1`. The four
//! coefficients share one positive denominator and the tuple
//! `(numerators, denominator)` is kept fully reduced, so structural equality
//! and hashing coincide with field equality.
//!
//! Values whose reduced form fits in `i64` are stored inline; arithmetic is
//! done in `i128` and promoted to `BigInt` only when a result does not fit.
//! Promoted values are demoted again as soon as they fit, which keeps the
//! representation canonical.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

/// An exact element of `Q(z)`, `z` a primitive eighth root of unity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloNum(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    // den > 0, gcd(num, den) = 1, no entry equal to i64::MIN
    Small { num: [i64; 4], den: i64 },
    Big(Box<BigRepr>),
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct BigRepr {
    num: [BigInt; 4],
    den: BigInt,
}

const ZERO_SMALL: Repr = Repr::Small {
    num: [0; 4],
    den: 1,
};

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn fits_small(v: i128) -> bool {
    v > i64::MIN as i128 && v <= i64::MAX as i128
}

impl CycloNum {
    pub fn zero() -> Self {
        CycloNum(ZERO_SMALL)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(v: i64) -> Self {
        Self::from_i128([v as i128, 0, 0, 0], 1)
    }

    /// The rational `num/den`. Panics if `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128([num as i128, 0, 0, 0], den as i128)
    }

    /// `c0 + c1*z + c2*z^2 + c3*z^3` with integer coefficients.
    pub fn from_int_coeffs(c: [i64; 4]) -> Self {
        Self::from_i128(c.map(|x| x as i128), 1)
    }

    pub fn from_coeffs(c: [BigRational; 4]) -> Self {
        let den = c.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let num = c.map(|q| q.numer() * (&den / q.denom()));
        Self::from_big(num, den)
    }

    /// The generator `z = (1 + i)/sqrt(2)`.
    pub fn zeta() -> Self {
        Self::from_int_coeffs([0, 1, 0, 0])
    }

    /// `z^k` for any integer `k`.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(8) as usize;
        let mut c = [0i64; 4];
        if k < 4 {
            c[k] = 1;
        } else {
            c[k - 4] = -1;
        }
        Self::from_int_coeffs(c)
    }

    /// `sqrt(-1) = z^2`.
    pub fn i() -> Self {
        Self::from_int_coeffs([0, 0, 1, 0])
    }

    /// `sqrt(2) = z - z^3`.
    pub fn sqrt2() -> Self {
        Self::from_int_coeffs([0, 1, 0, -1])
    }

    /// `1/sqrt(2) = (z - z^3)/2`.
    pub fn inv_sqrt2() -> Self {
        Self::from_i128([0, 1, 0, -1], 2)
    }

    /// `sqrt(2)^k` for any integer `k`.
    pub fn sqrt2_pow(k: i64) -> Self {
        let base = if k >= 0 {
            Self::sqrt2()
        } else {
            Self::inv_sqrt2()
        };
        base.pow(k.unsigned_abs())
    }

    fn from_i128(mut num: [i128; 4], mut den: i128) -> Self {
        debug_assert!(den != 0);
        if num.iter().all(|&x| x == 0) {
            return Self::zero();
        }
        if den < 0 {
            match (
                num.iter()
                    .map(|x| x.checked_neg())
                    .collect::<Option<Vec<_>>>(),
                den.checked_neg(),
            ) {
                (Some(n), Some(d)) => {
                    num.copy_from_slice(&n);
                    den = d;
                }
                _ => {
                    return Self::from_big(num.map(BigInt::from), BigInt::from(den));
                }
            }
        }
        let g = num
            .iter()
            .fold(den.unsigned_abs(), |g, x| gcd_u128(g, x.unsigned_abs()));
        if g > 1 {
            let g = g as i128;
            for x in num.iter_mut() {
                *x /= g;
            }
            den /= g;
        }
        if fits_small(den) && num.iter().all(|&x| fits_small(x)) {
            CycloNum(Repr::Small {
                num: num.map(|x| x as i64),
                den: den as i64,
            })
        } else {
            CycloNum(Repr::Big(Box::new(BigRepr {
                num: num.map(BigInt::from),
                den: BigInt::from(den),
            })))
        }
    }

    fn from_big(mut num: [BigInt; 4], mut den: BigInt) -> Self {
        debug_assert!(!den.is_zero());
        if num.iter().all(Zero::is_zero) {
            return Self::zero();
        }
        if den.is_negative() {
            den = -den;
            for x in num.iter_mut() {
                *x = -&*x;
            }
        }
        let g = num.iter().fold(den.clone(), |g, x| g.gcd(x));
        if !g.is_one() {
            for x in num.iter_mut() {
                *x = &*x / &g;
            }
            den = &den / &g;
        }
        let small = |v: &BigInt| v.to_i64().filter(|&x| x != i64::MIN);
        if let (Some(d), Some(n0), Some(n1), Some(n2), Some(n3)) = (
            small(&den),
            small(&num[0]),
            small(&num[1]),
            small(&num[2]),
            small(&num[3]),
        ) {
            return CycloNum(Repr::Small {
                num: [n0, n1, n2, n3],
                den: d,
            });
        }
        CycloNum(Repr::Big(Box::new(BigRepr { num, den })))
    }

    fn to_big(&self) -> ([BigInt; 4], BigInt) {
        match &self.0 {
            Repr::Small { num, den } => (num.map(BigInt::from), BigInt::from(*den)),
            Repr::Big(b) => (b.num.clone(), b.den.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(
            &self.0,
            Repr::Small {
                num: [0, 0, 0, 0],
                ..
            }
        )
    }

    pub fn is_one(&self) -> bool {
        matches!(
            &self.0,
            Repr::Small {
                num: [1, 0, 0, 0],
                den: 1
            }
        )
    }

    /// True when the reduced form is stored in machine integers.
    pub fn is_small(&self) -> bool {
        matches!(&self.0, Repr::Small { .. })
    }

    /// Coefficients in the basis `{1, z, z^2, z^3}`.
    pub fn coeffs(&self) -> [BigRational; 4] {
        let (num, den) = self.to_big();
        num.map(|n| BigRational::new(n, den.clone()))
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs()[k].clone()
    }

    /// The value as a rational, if it lies in `Q`.
    pub fn to_rational(&self) -> Option<BigRational> {
        let c = self.coeffs();
        if c[1].is_zero() && c[2].is_zero() && c[3].is_zero() {
            Some(c[0].clone())
        } else {
            None
        }
    }

    /// The value as an integer, if it lies in `Z`.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    /// Apply the Galois automorphism `z -> z^k`, `k` odd.
    pub fn galois(&self, k: u32) -> Self {
        assert!(
            k % 2 == 1,
            "Galois automorphisms of Q(z8) send z to an odd power"
        );
        // z^j -> z^(jk); reduce with z^4 = -1.
        let target = |j: usize| {
            let t = (j * k as usize) % 8;
            if t < 4 {
                (t, false)
            } else {
                (t - 4, true)
            }
        };
        match &self.0 {
            Repr::Small { num, den } => {
                let mut out = [0i64; 4];
                for (j, &c) in num.iter().enumerate() {
                    let (t, neg) = target(j);
                    out[t] = if neg { -c } else { c };
                }
                CycloNum(Repr::Small {
                    num: out,
                    den: *den,
                })
            }
            Repr::Big(b) => {
                let mut out: [BigInt; 4] = Default::default();
                for (j, c) in b.num.iter().enumerate() {
                    let (t, neg) = target(j);
                    out[t] = if neg { -c } else { c.clone() };
                }
                CycloNum(Repr::Big(Box::new(BigRepr {
                    num: out,
                    den: b.den.clone(),
                })))
            }
        }
    }

    /// Complex conjugation, `z -> z^7 = -z^3`.
    pub fn conj(&self) -> Self {
        self.galois(7)
    }

    /// Field norm down to `Q`.
    pub fn norm(&self) -> BigRational {
        let prod = self * &self.galois(3) * self.galois(5) * self.galois(7);
        prod.to_rational()
            .expect("product over the Galois orbit is rational")
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let cofactor = self.galois(3) * self.galois(5) * self.galois(7);
        let norm = (self * &cofactor)
            .to_rational()
            .expect("product over the Galois orbit is rational");
        let inv_norm = Self::from_coeffs([
            norm.recip(),
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
        ]);
        Some(cofactor * inv_norm)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power, negative exponents through the field inverse.
    pub fn powi(&self, e: i64) -> Option<Self> {
        if e >= 0 {
            Some(self.pow(e as u64))
        } else {
            self.inv().map(|x| x.pow(e.unsigned_abs()))
        }
    }

    /// Floating-point value with `z = exp(i*pi/4)`. Display only.
    pub fn approx(&self) -> Complex64 {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let basis = [
            Complex64::new(1.0, 0.0),
            Complex64::new(h, h),
            Complex64::new(0.0, 1.0),
            Complex64::new(-h, h),
        ];
        match &self.0 {
            Repr::Small { num, den } => {
                let d = *den as f64;
                num.iter()
                    .zip(basis)
                    .map(|(&c, b)| b * (c as f64 / d))
                    .sum()
            }
            Repr::Big(_) => self
                .coeffs()
                .iter()
                .zip(basis)
                .map(|(c, b)| b * c.to_f64().unwrap_or(f64::NAN))
                .sum(),
        }
    }

    /// Append a compact, injective byte encoding of the reduced form.
    pub fn write_canonical(&self, out: &mut Vec<u8>) {
        fn varint(out: &mut Vec<u8>, mut v: u64) {
            while v >= 0x80 {
                out.push((v as u8) | 0x80);
                v >>= 7;
            }
            out.push(v as u8);
        }
        match &self.0 {
            Repr::Small {
                num: [0, 0, 0, 0], ..
            } => out.push(0),
            Repr::Small { num, den } => {
                out.push(1);
                varint(out, *den as u64);
                for &c in num {
                    varint(out, ((c << 1) ^ (c >> 63)) as u64);
                }
            }
            Repr::Big(b) => {
                out.push(2);
                for v in b.num.iter().chain(std::iter::once(&b.den)) {
                    let bytes = v.to_signed_bytes_le();
                    varint(out, bytes.len() as u64);
                    out.extend_from_slice(&bytes);
                }
            }
        }
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if let (Repr::Small { num: a, den: da }, Repr::Small { num: b, den: db }) =
            (&self.0, &rhs.0)
        {
            let (da, db) = (*da as i128, *db as i128);
            if da == db {
                let num = [0, 1, 2, 3].map(|k| a[k] as i128 + b[k] as i128);
                return Self::from_i128(num, da);
            }
            let num = [0, 1, 2, 3].map(|k| a[k] as i128 * db + b[k] as i128 * da);
            return Self::from_i128(num, da * db);
        }
        let (a, da) = self.to_big();
        let (b, db) = rhs.to_big();
        let num = [0, 1, 2, 3].map(|k| &a[k] * &db + &b[k] * &da);
        Self::from_big(num, da * db)
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if let (Repr::Small { num: a, den: da }, Repr::Small { num: b, den: db }) =
            (&self.0, &rhs.0)
        {
            if let Some(num) = mul_coeffs_i128(a, b) {
                return Self::from_i128(num, *da as i128 * *db as i128);
            }
        }
        let (a, da) = self.to_big();
        let (b, db) = rhs.to_big();
        let mut num: [BigInt; 4] = Default::default();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                let p = ai * bj;
                let k = i + j;
                if k < 4 {
                    num[k] += p;
                } else {
                    num[k - 4] -= p;
                }
            }
        }
        Self::from_big(num, da * db)
    }
}

fn mul_coeffs_i128(a: &[i64; 4], b: &[i64; 4]) -> Option<[i128; 4]> {
    let mut out = [0i128; 4];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            if bj == 0 {
                continue;
            }
            let p = ai as i128 * bj as i128;
            let k = i + j;
            if k < 4 {
                out[k] = out[k].checked_add(p)?;
            } else {
                out[k - 4] = out[k - 4].checked_sub(p)?;
            }
        }
    }
    Some(out)
}

impl Default for CycloNum {
    fn default() -> Self {
        Self::zero()
    }
}

impl Zero for CycloNum {
    fn zero() -> Self {
        CycloNum::zero()
    }
    fn is_zero(&self) -> bool {
        CycloNum::is_zero(self)
    }
}

impl One for CycloNum {
    fn one() -> Self {
        CycloNum::one()
    }
}

impl From<i64> for CycloNum {
    fn from(v: i64) -> Self {
        Self::from_integer(v)
    }
}

impl From<BigRational> for CycloNum {
    fn from(q: BigRational) -> Self {
        Self::from_coeffs([q, Zero::zero(), Zero::zero(), Zero::zero()])
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        match &self.0 {
            Repr::Small { num, den } => CycloNum(Repr::Small {
                num: num.map(|x| -x),
                den: *den,
            }),
            Repr::Big(b) => CycloNum(Repr::Big(Box::new(BigRepr {
                num: b.num.clone().map(|x| -x),
                den: b.den.clone(),
            }))),
        }
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&CycloNum> for &CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: &CycloNum) -> CycloNum {
                let f: fn(&CycloNum, &CycloNum) -> CycloNum = $body;
                f(self, rhs)
            }
        }
        impl $trait<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: CycloNum) -> CycloNum {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: &CycloNum) -> CycloNum {
                (&self).$method(rhs)
            }
        }
        impl $trait<CycloNum> for &CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: CycloNum) -> CycloNum {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_ref(b));
forward_binop!(Sub, sub, |a, b| a.add_ref(&-b));
forward_binop!(Mul, mul, |a, b| a.mul_ref(b));
forward_binop!(Div, div, |a, b| a
    .mul_ref(&b.inv().expect("division by zero in Q(z8)")));

impl AddAssign<&CycloNum> for CycloNum {
    fn add_assign(&mut self, rhs: &CycloNum) {
        *self = self.add_ref(rhs);
    }
}

impl AddAssign for CycloNum {
    fn add_assign(&mut self, rhs: CycloNum) {
        *self = self.add_ref(&rhs);
    }
}

impl SubAssign<&CycloNum> for CycloNum {
    fn sub_assign(&mut self, rhs: &CycloNum) {
        *self = self.add_ref(&-rhs);
    }
}

impl MulAssign<&CycloNum> for CycloNum {
    fn mul_assign(&mut self, rhs: &CycloNum) {
        *self = self.mul_ref(rhs);
    }
}

impl Sum for CycloNum {
    fn sum<I: Iterator<Item = CycloNum>>(iter: I) -> Self {
        iter.fold(CycloNum::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a CycloNum> for CycloNum {
    fn sum<I: Iterator<Item = &'a CycloNum>>(iter: I) -> Self {
        iter.fold(CycloNum::zero(), |acc, x| acc + x)
    }
}

impl Product for CycloNum {
    fn product<I: Iterator<Item = CycloNum>>(iter: I) -> Self {
        iter.fold(CycloNum::one(), |acc, x| acc * x)
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Renders as `a + b·z + c·z^2 + d·z^3`, omitting zero terms.
impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let basis = ["", "z", "z^2", "z^3"];
        let mut first = true;
        for (k, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            if k == 0 {
                write!(f, "{}", fmt_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", basis[k])?;
            } else {
                write!(f, "{}·{}", fmt_rational(&mag), basis[k])?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum({self})")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse cyclotomic number from {0:?}")]
pub struct ParseCycloError(String);

impl FromStr for CycloNum {
    type Err = ParseCycloError;

    /// Parses the [`Display`](fmt::Display) rendering.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseCycloError(s.to_string());
        let text = s.trim();
        if text.is_empty() {
            return Err(err());
        }
        let mut coeffs: [BigRational; 4] = Default::default();
        let normalized = text.replace(" - ", " + -");
        for term in normalized.split(" + ") {
            let term = term.trim();
            let (coef, power) = match term.find('z') {
                None => (term, 0usize),
                Some(pos) => {
                    let power = match &term[pos..] {
                        "z" => 1,
                        "z^2" => 2,
                        "z^3" => 3,
                        _ => return Err(err()),
                    };
                    (term[..pos].trim_end_matches('·'), power)
                }
            };
            let value = match coef {
                "" if power > 0 => BigRational::one(),
                "-" if power > 0 => -BigRational::one(),
                c => c.parse::<BigRational>().map_err(|_| err())?,
            };
            coeffs[power] += value;
        }
        Ok(Self::from_coeffs(coeffs))
    }
}

/// JSON form `{"c0": "p/q", "c1": ..., "c2": ..., "c3": ...}`.
impl Serialize for CycloNum {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let c = self.coeffs();
        let mut st = serializer.serialize_struct("CycloNum", 4)?;
        st.serialize_field("c0", &fmt_rational(&c[0]))?;
        st.serialize_field("c1", &fmt_rational(&c[1]))?;
        st.serialize_field("c2", &fmt_rational(&c[2]))?;
        st.serialize_field("c3", &fmt_rational(&c[3]))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for CycloNum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Coeffs {
            c0: String,
            c1: String,
            c2: String,
            c3: String,
        }
        let raw = Coeffs::deserialize(deserializer)?;
        let parse = |s: &str| {
            s.parse::<BigRational>()
                .map_err(|_| de::Error::custom(format!("bad rational {s:?}")))
        };
        Ok(CycloNum::from_coeffs([
            parse(&raw.c0)?,
            parse(&raw.c1)?,
            parse(&raw.c2)?,
            parse(&raw.c3)?,
        ]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> CycloNum {
        CycloNum::from_ratio(n, d)
    }

    #[test]
    fn add_examples() {
        let z = CycloNum::zeta();
        assert_eq!(&z + CycloNum::zero(), z);
        assert_eq!(&z + z.conj(), CycloNum::from_int_coeffs([0, 1, 0, -1]));
        let half = q(1, 2);
        let r2 = CycloNum::sqrt2();
        assert_eq!(&half * &r2 + &half * &r2, r2);
    }

    #[test]
    fn mul_examples() {
        let z = CycloNum::zeta();
        assert_eq!(&z * z.pow(3), -CycloNum::one());
        let r2 = CycloNum::zeta() - CycloNum::zeta_pow(3);
        assert_eq!(&r2 * &r2, CycloNum::from_integer(2));
        assert_eq!(&z * z.conj(), CycloNum::one());
    }

    #[test]
    fn conj_examples() {
        assert_eq!(CycloNum::zeta().conj(), -CycloNum::zeta_pow(3));
        assert_eq!(CycloNum::i().conj(), -CycloNum::i());
        assert_eq!(q(3, 2).conj(), q(3, 2));
    }

    #[test]
    fn approx_examples() {
        let r2 = CycloNum::sqrt2().approx();
        assert!((r2.re - std::f64::consts::SQRT_2).abs() < 1e-12 && r2.im.abs() < 1e-12);
        let z = CycloNum::zeta().approx();
        assert!((z.re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((z.im - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        let m = (-CycloNum::one()).approx();
        assert_eq!((m.re, m.im), (-1.0, 0.0));
    }

    #[test]
    fn zeta_squared_is_i_and_sqrt2_inverse() {
        assert_eq!(CycloNum::zeta().pow(2), CycloNum::i());
        let r2 = CycloNum::sqrt2();
        assert_eq!(r2.inv().unwrap(), CycloNum::inv_sqrt2());
        assert_eq!(&r2 * CycloNum::inv_sqrt2(), CycloNum::one());
        assert_eq!(CycloNum::zeta_pow(-1), CycloNum::zeta().conj());
        assert_eq!(
            CycloNum::sqrt2_pow(-3) * CycloNum::sqrt2_pow(3),
            CycloNum::one()
        );
    }

    #[test]
    fn zero_has_no_inverse() {
        assert!(CycloNum::zero().inv().is_none());
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(CycloNum::zero().to_string(), "0");
        assert_eq!((-CycloNum::one()).to_string(), "-1");
        assert_eq!(CycloNum::sqrt2().to_string(), "z - z^3");
        assert_eq!(CycloNum::inv_sqrt2().to_string(), "1/2·z - 1/2·z^3");
        let x = CycloNum::from_coeffs([
            BigRational::new(3.into(), 4.into()),
            BigRational::new((-1).into(), 1.into()),
            BigRational::new(5.into(), 7.into()),
            BigRational::zero(),
        ]);
        assert_eq!(x.to_string(), "3/4 - z + 5/7·z^2");
        assert_eq!(x.to_string().parse::<CycloNum>().unwrap(), x);
        assert!("foo".parse::<CycloNum>().is_err());
    }

    #[test]
    fn json_form() {
        let x = CycloNum::inv_sqrt2();
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"c0":"0","c1":"1/2","c2":"0","c3":"-1/2"}"#);
        let back: CycloNum = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = CycloNum::from_integer(i64::MAX);
        let sq = &big * &big;
        assert!(!sq.is_small());
        let back = &sq / &big;
        assert!(back.is_small());
        assert_eq!(back, big);
        let tiny = CycloNum::from_ratio(1, i64::MAX);
        let t2 = &tiny * &tiny;
        assert_eq!(&t2 * &sq, CycloNum::one());
    }

    #[test]
    fn i64_min_is_not_stored_inline() {
        let x = CycloNum::from_integer(i64::MIN + 1) - CycloNum::one();
        assert!(!x.is_small());
        assert_eq!(-(-x.clone()), x);
    }

    fn arb_small() -> impl Strategy<Value = CycloNum> {
        prop::array::uniform4((-1000i64..1000, 1i64..50)).prop_map(|c| {
            c.iter()
                .enumerate()
                .map(|(k, &(n, d))| CycloNum::from_ratio(n, d) * CycloNum::zeta_pow(k as i64))
                .sum()
        })
    }

    fn arb_wide() -> impl Strategy<Value = CycloNum> {
        prop::array::uniform4((-(1i64 << 32)..(1i64 << 32), 1i64..(1i64 << 32))).prop_map(|c| {
            c.iter()
                .enumerate()
                .map(|(k, &(n, d))| CycloNum::from_ratio(n, d) * CycloNum::zeta_pow(k as i64))
                .sum()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn ring_axioms(a in arb_small(), b in arb_small(), c in arb_small()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
        }

        #[test]
        fn conjugation_is_multiplicative_involution(a in arb_small(), b in arb_small()) {
            prop_assert_eq!((&a * &b).conj(), a.conj() * b.conj());
            prop_assert_eq!(a.conj().conj(), a);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2_000))]

        #[test]
        fn approx_is_a_ring_map(a in arb_wide(), b in arb_wide()) {
            let exact = (&a * &b).approx();
            let float = a.approx() * b.approx();
            let scale = 1.0 + float.norm();
            prop_assert!((exact - float).norm() / scale < 1e-9);
        }

        #[test]
        fn inverse_is_two_sided(a in arb_wide()) {
            prop_assume!(!a.is_zero());
            let inv = a.inv().unwrap();
            prop_assert_eq!(&a * &inv, CycloNum::one());
        }

        #[test]
        fn display_parse_roundtrip(a in arb_wide()) {
            prop_assert_eq!(a.to_string().parse::<CycloNum>().unwrap(), a);
        }
    }
}
