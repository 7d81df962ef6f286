use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::tables;
use super::CycloError;
use crate::arith::{euler_phi, gcd, lcm, units};

/// An exact element of `Q(zeta_L)`.
///
/// Stored as integer coordinates over a common positive denominator in the
/// power basis `1, z, .., z^(phi(L)-1)` reduced modulo `Phi_L`. The
/// numerators and the denominator are kept coprime, so two numbers at the
/// same level are equal exactly when their fields are equal.
#[derive(Clone, Debug)]
pub struct CycloNumber {
    level: usize,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycloNumber {
    pub fn zero(level: usize) -> Self {
        assert!(level >= 1, "cyclotomic level must be positive");
        CycloNumber {
            level,
            num: vec![BigInt::zero(); euler_phi(level)],
            den: BigInt::one(),
        }
    }

    pub fn one(level: usize) -> Self {
        Self::from_rational(level, &BigRational::one())
    }

    pub fn from_integer(level: usize, n: i64) -> Self {
        Self::from_rational(level, &BigRational::from_integer(n.into()))
    }

    pub fn from_rational(level: usize, r: &BigRational) -> Self {
        let mut x = Self::zero(level);
        x.num[0] = r.numer().clone();
        x.den = r.denom().clone();
        x.normalize();
        x
    }

    /// `zeta_L^e`, with `e` read modulo `L`.
    pub fn root_of_unity(level: usize, exponent: i64) -> Self {
        let e = exponent.rem_euclid(level as i64) as usize;
        let mut raw = vec![BigInt::zero(); level];
        raw[e] = BigInt::one();
        Self::from_raw(level, raw, BigInt::one())
    }

    /// Builds `(sum_e raw[e] * zeta_L^e) / den` from coefficients indexed by
    /// exponent modulo `L`.
    pub(crate) fn from_raw(level: usize, raw: Vec<BigInt>, den: BigInt) -> Self {
        debug_assert_eq!(raw.len(), level);
        let t = tables(level);
        let mut num = vec![BigInt::zero(); t.degree];
        for (e, c) in raw.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if e < t.degree {
                num[e] += c;
            } else {
                for &(i, a) in &t.powers[e] {
                    num[i] += &c * a;
                }
            }
        }
        let mut x = CycloNumber { level, num, den };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -self.den.clone();
            self.num.iter_mut().for_each(|c| *c = -c.clone());
        }
        let g = self.num.iter().fold(self.den.clone(), |acc, c| acc.gcd(c));
        if !g.is_one() {
            self.den /= &g;
            self.num.iter_mut().for_each(|c| *c /= &g);
        }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// Power-basis coordinates as rationals.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    /// The value as a rational number, if it lies in `Q`.
    pub fn to_rational(&self) -> Option<BigRational> {
        self.num[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    /// Re-expresses the number in `Q(zeta_target)` via `zeta_L -> zeta_T^(T/L)`.
    pub fn embed(&self, target: usize) -> Result<Self, CycloError> {
        if target == 0 || !target.is_multiple_of(self.level) {
            return Err(CycloError::IncompatibleLevels {
                from: self.level,
                to: target,
            });
        }
        if target == self.level {
            return Ok(self.clone());
        }
        let step = target / self.level;
        let mut raw = vec![BigInt::zero(); target];
        for (i, c) in self.num.iter().enumerate() {
            raw[i * step] = c.clone();
        }
        Ok(Self::from_raw(target, raw, self.den.clone()))
    }

    /// Applies the automorphism `zeta_L -> zeta_L^t` of `Q(zeta_L)`.
    pub fn galois(&self, t: usize) -> Self {
        assert_eq!(
            gcd(t % self.level, self.level),
            1,
            "exponent {t} is not a unit mod {}",
            self.level
        );
        let mut raw = vec![BigInt::zero(); self.level];
        for (i, c) in self.num.iter().enumerate() {
            raw[(i * t) % self.level] += c;
        }
        Self::from_raw(self.level, raw, self.den.clone())
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        let mut x = CycloNumber {
            level: self.level,
            num: self.num.iter().map(|c| c * r.numer()).collect(),
            den: &self.den * r.denom(),
        };
        x.normalize();
        x
    }

    pub fn inverse(&self) -> Result<Self, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        // a^-1 = (prod_{t != 1} sigma_t(a)) / N(a)
        let mut cofactor = Self::one(self.level);
        for t in units(self.level).into_iter().filter(|&t| t != 1 % self.level) {
            cofactor = &cofactor * &self.galois(t);
        }
        let norm = (self * &cofactor)
            .to_rational()
            .expect("norm of a cyclotomic number is rational");
        Ok(cofactor.scale(&norm.recip()))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, CycloError> {
        Ok(self * &other.inverse()?)
    }

    fn lift_pair<'a>(a: &'a Self, b: &'a Self) -> (std::borrow::Cow<'a, Self>, std::borrow::Cow<'a, Self>) {
        use std::borrow::Cow;
        if a.level == b.level {
            return (Cow::Borrowed(a), Cow::Borrowed(b));
        }
        let l = lcm(a.level, b.level);
        (
            Cow::Owned(a.embed(l).expect("lcm is a multiple")),
            Cow::Owned(b.embed(l).expect("lcm is a multiple")),
        )
    }

    fn combine(a: &Self, b: &Self, sign: i32) -> Self {
        let (a, b) = Self::lift_pair(a, b);
        let num = a
            .num
            .iter()
            .zip(&b.num)
            .map(|(x, y)| {
                let lhs = x * &b.den;
                let rhs = y * &a.den;
                if sign > 0 {
                    lhs + rhs
                } else {
                    lhs - rhs
                }
            })
            .collect();
        let mut x = CycloNumber {
            level: a.level,
            num,
            den: &a.den * &b.den,
        };
        x.normalize();
        x
    }

    fn product(a: &Self, b: &Self) -> Self {
        let (a, b) = Self::lift_pair(a, b);
        if a.is_zero() || b.is_zero() {
            return Self::zero(a.level);
        }
        let level = a.level;
        let mut raw = vec![BigInt::zero(); level];
        for (i, x) in a.num.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.num.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                raw[(i + j) % level] += x * y;
            }
        }
        Self::from_raw(level, raw, &a.den * &b.den)
    }
}

/// Sums of products at a fixed level without normalizing after every term.
pub(crate) struct Accumulator {
    level: usize,
    raw: Vec<BigInt>,
    den: BigInt,
    empty: bool,
}

impl Accumulator {
    pub(crate) fn new(level: usize) -> Self {
        Accumulator {
            level,
            raw: vec![BigInt::zero(); level],
            den: BigInt::one(),
            empty: true,
        }
    }

    /// Rescales the running sum so that `den` divides its denominator and
    /// returns the factor by which a term over `den` must be multiplied.
    fn align(&mut self, den: &BigInt) -> BigInt {
        if self.empty {
            self.den = den.clone();
            self.empty = false;
            return BigInt::one();
        }
        if &self.den == den {
            return BigInt::one();
        }
        let l = self.den.lcm(den);
        let up = &l / &self.den;
        if !up.is_one() {
            self.raw.iter_mut().for_each(|c| *c *= &up);
        }
        let factor = &l / den;
        self.den = l;
        factor
    }

    pub(crate) fn add_product(&mut self, a: &CycloNumber, b: &CycloNumber) {
        debug_assert!(a.level == self.level && b.level == self.level);
        if a.is_zero() || b.is_zero() {
            return;
        }
        let factor = self.align(&(&a.den * &b.den));
        let level = self.level;
        for (i, x) in a.num.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            let x = if factor.is_one() { x.clone() } else { x * &factor };
            for (j, y) in b.num.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                self.raw[(i + j) % level] += &x * y;
            }
        }
    }

    pub(crate) fn finish(self) -> CycloNumber {
        if self.empty {
            return CycloNumber::zero(self.level);
        }
        CycloNumber::from_raw(self.level, self.raw, self.den)
    }
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Self::lift_pair(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CycloNumber {}

impl Add for &CycloNumber {
    type Output = CycloNumber;
    fn add(self, rhs: &CycloNumber) -> CycloNumber {
        CycloNumber::combine(self, rhs, 1)
    }
}

impl Sub for &CycloNumber {
    type Output = CycloNumber;
    fn sub(self, rhs: &CycloNumber) -> CycloNumber {
        CycloNumber::combine(self, rhs, -1)
    }
}

impl Mul for &CycloNumber {
    type Output = CycloNumber;
    fn mul(self, rhs: &CycloNumber) -> CycloNumber {
        CycloNumber::product(self, rhs)
    }
}

impl Neg for &CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        CycloNumber {
            level: self.level,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, c) in self.coeffs().into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            let mono = match i {
                0 => String::new(),
                1 => format!("z_{}", self.level),
                _ => format!("z_{}^{}", self.level, i),
            };
            let body = if mono.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                mono
            } else {
                format!("{mag}*{mono}")
            };
            match (out.is_empty(), negative) {
                (true, false) => out.push_str(&body),
                (true, true) => {
                    out.push('-');
                    out.push_str(&body)
                }
                (false, false) => {
                    out.push_str(" + ");
                    out.push_str(&body)
                }
                (false, true) => {
                    out.push_str(" - ");
                    out.push_str(&body)
                }
            }
        }
        write!(f, "{out}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(level: usize, e: i64) -> CycloNumber {
        CycloNumber::root_of_unity(level, e)
    }

    #[test]
    fn primitive_cube_roots_sum_to_minus_one() {
        assert_eq!(&z(3, 1) + &z(3, 2), CycloNumber::from_integer(3, -1));
    }

    #[test]
    fn embedding_zeta_2_into_level_6() {
        let e = z(2, 1).embed(6).unwrap();
        assert_eq!(e, z(6, 3));
        assert_eq!(e, CycloNumber::from_integer(6, -1));
        assert!(matches!(
            z(4, 1).embed(6),
            Err(CycloError::IncompatibleLevels { from: 4, to: 6 })
        ));
    }

    #[test]
    fn gaussian_product() {
        let one = CycloNumber::one(4);
        let i = z(4, 1);
        assert_eq!(&(&one + &i) * &(&one - &i), CycloNumber::from_integer(4, 2));
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert_eq!(CycloNumber::zero(5).inverse(), Err(CycloError::DivisionByZero));
    }

    #[test]
    fn cross_level_equality() {
        assert_eq!(z(3, 1), z(6, 2));
        assert_eq!(CycloNumber::from_integer(1, 4), CycloNumber::from_integer(12, 4));
        assert_ne!(z(4, 1), z(4, 3));
    }

    #[test]
    fn display_form() {
        let x = &z(3, 1).scale(&BigRational::new(2.into(), 3.into())) - &CycloNumber::one(3);
        assert_eq!(x.to_string(), "-1 + 2/3*z_3");
        assert_eq!(z(12, 1).to_string(), "z_12");
        assert_eq!(CycloNumber::zero(7).to_string(), "0");
    }

    fn arb_number(level: usize) -> impl Strategy<Value = CycloNumber> {
        proptest::collection::vec((-6i64..6, 1i64..5), euler_phi(level)).prop_map(move |cs| {
            cs.iter()
                .enumerate()
                .fold(CycloNumber::zero(level), |acc, (i, &(n, d))| {
                    let term = z(level, i as i64).scale(&BigRational::new(n.into(), d.into()));
                    &acc + &term
                })
        })
    }

    proptest! {
        #[test]
        fn field_axioms_level_12(a in arb_number(12), b in arb_number(12), c in arb_number(12)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert!((&a * &a.inverse().unwrap()).is_one());
            }
        }

        #[test]
        fn galois_is_a_ring_map(a in arb_number(15), b in arb_number(15), t in prop::sample::select(units(15))) {
            prop_assert_eq!((&a * &b).galois(t), &a.galois(t) * &b.galois(t));
            prop_assert_eq!((&a + &b).galois(t), &a.galois(t) + &b.galois(t));
        }

        #[test]
        fn embedding_is_a_ring_map(a in arb_number(6), b in arb_number(6)) {
            let up = |x: &CycloNumber| x.embed(30).unwrap();
            prop_assert_eq!(up(&(&a * &b)), &up(&a) * &up(&b));
            prop_assert_eq!(up(&a), a.clone());
        }
    }
}
