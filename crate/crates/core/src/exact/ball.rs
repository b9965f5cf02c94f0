//! Rigorous real and complex intervals on a binary fixed-point grid.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Cyclotomic, Rational};

const GUARD_BITS: u32 = 48;

/// The real interval `[(mid − rad)/2^prec, (mid + rad)/2^prec]`.
#[derive(Clone, PartialEq, Eq)]
pub struct Ball {
    mid: BigInt,
    rad: BigUint,
    prec: u32,
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn ceil_div_u(a: &BigUint, b: &BigUint) -> BigUint {
    (a + b - BigUint::one()) / b
}

impl Ball {
    pub fn zero(prec: u32) -> Self {
        Ball {
            mid: BigInt::zero(),
            rad: BigUint::zero(),
            prec,
        }
    }

    pub fn exact_integer(n: i64, prec: u32) -> Self {
        Ball {
            mid: BigInt::from(n) << prec,
            rad: BigUint::zero(),
            prec,
        }
    }

    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        let scaled = r.numer() << prec;
        let (q, rem) = scaled.div_mod_floor(r.denom());
        Ball {
            mid: q,
            rad: if rem.is_zero() {
                BigUint::zero()
            } else {
                BigUint::one()
            },
            prec,
        }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn lower(&self) -> Rational {
        Rational::new(
            &self.mid - BigInt::from(self.rad.clone()),
            BigInt::one() << self.prec,
        )
    }

    pub fn upper(&self) -> Rational {
        Rational::new(
            &self.mid + BigInt::from(self.rad.clone()),
            BigInt::one() << self.prec,
        )
    }

    pub fn midpoint(&self) -> Rational {
        Rational::new(self.mid.clone(), BigInt::one() << self.prec)
    }

    pub fn radius(&self) -> Rational {
        Rational::new(BigInt::from(self.rad.clone()), BigInt::one() << self.prec)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.lower() <= *x && *x <= self.upper()
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.magnitude() <= &self.rad
    }

    pub fn to_f64(&self) -> f64 {
        self.midpoint().to_f64()
    }

    pub fn add(&self, o: &Ball) -> Ball {
        debug_assert_eq!(self.prec, o.prec);
        Ball {
            mid: &self.mid + &o.mid,
            rad: &self.rad + &o.rad,
            prec: self.prec,
        }
    }

    pub fn sub(&self, o: &Ball) -> Ball {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Ball {
        Ball {
            mid: -&self.mid,
            rad: self.rad.clone(),
            prec: self.prec,
        }
    }

    pub fn mul(&self, o: &Ball) -> Ball {
        debug_assert_eq!(self.prec, o.prec);
        let m = &self.mid * &o.mid;
        let err =
            self.mid.magnitude() * &o.rad + o.mid.magnitude() * &self.rad + &self.rad * &o.rad;
        Ball {
            mid: m >> self.prec,
            rad: (err >> self.prec) + BigUint::from(2u32),
            prec: self.prec,
        }
    }

    pub fn mul_rational(&self, r: &Rational) -> Ball {
        let num = r.numer();
        let den = r.denom().magnitude();
        let (m, rem) = (&self.mid * num).div_mod_floor(r.denom());
        let mut err = ceil_div_u(&(&self.rad * num.magnitude()), den);
        if !rem.is_zero() {
            err += BigUint::one();
        }
        Ball {
            mid: m,
            rad: err,
            prec: self.prec,
        }
    }

    /// Reciprocal, or `None` when the interval contains zero.
    pub fn recip(&self) -> Option<Ball> {
        if self.contains_zero() {
            return None;
        }
        let one = BigInt::one() << (2 * self.prec);
        let mid = floor_div(&one, &self.mid);
        let a = self.mid.magnitude();
        let lo = a - &self.rad;
        let num = (BigUint::one() << (2 * self.prec)) * &self.rad;
        let err = ceil_div_u(&num, &(a * &lo));
        Some(Ball {
            mid,
            rad: err + BigUint::from(2u32),
            prec: self.prec,
        })
    }

    /// Widens the radius by `ulps` grid units.
    fn widen(mut self, ulps: &BigUint) -> Ball {
        self.rad += ulps;
        self
    }
}

impl fmt::Debug for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.12e} ± {:.3e}", self.to_f64(), self.radius().to_f64())
    }
}

/// A rectangle of two real balls.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexBall {
    pub re: Ball,
    pub im: Ball,
}

impl ComplexBall {
    pub fn zero(prec: u32) -> Self {
        ComplexBall {
            re: Ball::zero(prec),
            im: Ball::zero(prec),
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec
    }

    pub fn add(&self, o: &Self) -> Self {
        ComplexBall {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        ComplexBall {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn mul_rational(&self, r: &Rational) -> Self {
        ComplexBall {
            re: self.re.mul_rational(r),
            im: self.im.mul_rational(r),
        }
    }

    pub fn conj(&self) -> Self {
        ComplexBall {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    /// Quotient, or `None` when the divisor's enclosure meets zero.
    pub fn div(&self, o: &Self) -> Option<Self> {
        let norm = o.re.mul(&o.re).add(&o.im.mul(&o.im));
        let inv = norm.recip()?;
        let num = self.mul(&o.conj());
        Some(ComplexBall {
            re: num.re.mul(&inv),
            im: num.im.mul(&inv),
        })
    }

    /// Largest radius of the two components.
    pub fn radius(&self) -> Rational {
        self.re.radius().max(self.im.radius())
    }
}

fn pi_cache() -> &'static Mutex<HashMap<u32, Ball>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Ball>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `arctan(1/x)` on the grid `2^-w`.
fn arctan_recip(x: u32, w: u32) -> Ball {
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut t = (BigInt::one() << w) / BigInt::from(x);
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !t.is_zero() {
        let term = &t / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        t /= &x2;
        k += 1;
    }
    // each truncated division contributes under one unit, plus the vanished tail
    Ball {
        mid: sum,
        rad: BigUint::from(3 * k + 2),
        prec: w,
    }
}

/// `π` enclosed on the grid `2^-prec`.
pub fn pi(prec: u32) -> Ball {
    if let Some(b) = pi_cache().lock().unwrap().get(&prec) {
        return b.clone();
    }
    let a5 = arctan_recip(5, prec);
    let a239 = arctan_recip(239, prec);
    let b = Ball {
        mid: BigInt::from(16) * &a5.mid - BigInt::from(4) * &a239.mid,
        rad: BigUint::from(16u32) * &a5.rad + BigUint::from(4u32) * &a239.rad,
        prec,
    };
    pi_cache().lock().unwrap().insert(prec, b.clone());
    b
}

/// `(cos x, sin x)` for `0 <= x <= 1` by Taylor series with remainder.
fn cos_sin_small(x: &Ball) -> (Ball, Ball) {
    let prec = x.prec;
    let x2 = x.mul(x);
    let mut cos = Ball::exact_integer(1, prec);
    let mut sin = x.clone();
    let mut c_term = cos.clone();
    let mut s_term = sin.clone();
    let limit = BigInt::one() << (prec + 2);
    // after the step with odd n, the first omitted terms are bounded by 1/(n+3)!
    let mut n: i64 = 1;
    let mut next_fact = BigInt::from(24);
    loop {
        c_term = c_term
            .mul(&x2)
            .mul_rational(&Rational::new(-1, n * (n + 1)));
        s_term = s_term
            .mul(&x2)
            .mul_rational(&Rational::new(-1, (n + 1) * (n + 2)));
        cos = cos.add(&c_term);
        sin = sin.add(&s_term);
        if next_fact > limit {
            break;
        }
        n += 2;
        next_fact *= BigInt::from((n + 2) * (n + 3));
    }
    let tail = ceil_div_u(&(BigUint::one() << prec), next_fact.magnitude()) + BigUint::one();
    (cos.widen(&tail), sin.widen(&tail))
}

/// Enclosure of `e^{2πi·r}`, using exact octant reduction of the rational turn `r`.
pub fn unit_root(r: &Rational, prec: u32) -> ComplexBall {
    let w = prec;
    let f = r.fract();
    let eighth = &f * &Rational::from(8);
    let octant = eighth.floor().to_i64().expect("octant in 0..8");
    // angle = quadrant·π/2 + sign·φ with φ in [0, π/4]
    let (quadrant, phi_turns, sign) = if octant % 2 == 0 {
        (octant / 2, &f - &Rational::new(octant, 8), 1)
    } else {
        ((octant + 1) / 2, &Rational::new(octant + 1, 8) - &f, -1)
    };
    let (c, s) = if phi_turns.is_zero() {
        (Ball::exact_integer(1, w), Ball::zero(w))
    } else {
        let phi = pi(w).mul_rational(&(&phi_turns * &Rational::from(2)));
        cos_sin_small(&phi)
    };
    let s = if sign < 0 { s.neg() } else { s };
    let (re, im) = match quadrant.rem_euclid(4) {
        0 => (c, s),
        1 => (s.neg(), c),
        2 => (c.neg(), s.neg()),
        _ => (s, c.neg()),
    };
    ComplexBall { re, im }
}

/// Interval enclosure of a cyclotomic number.
///
/// `precision_bits` sets the working grid (plus guard bits); the returned
/// radius is rigorous.
pub fn numeric_eval(a: &Cyclotomic, precision_bits: u32) -> ComplexBall {
    assert!(precision_bits >= 32, "precision must be at least 32 bits");
    let w = precision_bits + GUARD_BITS;
    let n = a.order() as i64;
    let mut acc = ComplexBall::zero(w);
    for (k, c) in a.coords().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let z = unit_root(&Rational::new(k as i64, n), w);
        acc = acc.add(&z.mul_rational(c));
    }
    acc
}

/// Interval enclosure of `Σ c_e ζ_N^e`.
pub fn eval_root_sum(terms: &[(u32, i64)], order: u32, precision_bits: u32) -> ComplexBall {
    let w = precision_bits + GUARD_BITS;
    let mut acc = ComplexBall::zero(w);
    for &(e, c) in terms {
        let z = unit_root(&Rational::new(e as i64, order as i64), w);
        acc = acc.add(&z.mul_rational(&Rational::from(c)));
    }
    acc
}

impl Ball {
    /// Sign of the midpoint, for diagnostics.
    pub fn sign(&self) -> Sign {
        self.mid.sign()
    }

    pub fn is_positive(&self) -> bool {
        self.mid.is_positive() && self.mid.magnitude() > &self.rad
    }
}
