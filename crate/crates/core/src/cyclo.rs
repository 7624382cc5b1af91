//! Exact arithmetic in the cyclotomic field Q(zeta_p) for a prime p, and in
//! the bivariate quotient ring Q\[c1,c2\]/(c1^p - 1, c2^p - 1).
//!
//! Elements of Q(zeta_p) are stored in the power basis 1, z, ..., z^(p-2)
//! with the relation z^(p-1) = -(1 + z + ... + z^(p-2)) applied eagerly, so
//! equality is a coordinate compare. The root of unity is kept purely
//! symbolic; no complex embedding is ever chosen.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exact scalar: arbitrary-precision rational, always in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for a rational from an integer pair.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Shorthand for an integer rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Errors for cyclotomic and torus-ring arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CycloError {
    /// Two operands live in fields of different conductor.
    ConductorMismatch { left: u32, right: u32 },
    /// Inversion of zero.
    DivisionByZero,
    /// Galois action zeta -> zeta^k needs gcd(k, p) = 1.
    NonCoprimeGalois { k: i64, conductor: u32 },
    /// Coordinate vector of the wrong length for the conductor.
    BadCoordinateLength { expected: usize, got: usize },
}

impl fmt::Display for CycloError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CycloError::ConductorMismatch { left, right } => {
                write!(f, "conductor mismatch: {left} vs {right}")
            }
            CycloError::DivisionByZero => write!(f, "division by zero"),
            CycloError::NonCoprimeGalois { k, conductor } => {
                write!(f, "galois exponent {k} is not coprime to {conductor}")
            }
            CycloError::BadCoordinateLength { expected, got } => {
                write!(f, "expected {expected} coordinates, got {got}")
            }
        }
    }
}

impl std::error::Error for CycloError {}

/// An element of Q(zeta_p), p prime, in the power basis 1, z, ..., z^(p-2).
#[derive(Clone, PartialEq, Eq)]
pub struct CycloElem {
    conductor: u32,
    coords: Vec<Rational>,
}

impl CycloElem {
    /// Zero of Q(zeta_p).
    pub fn zero(p: u32) -> Self {
        assert!(
            is_prime(p) && p >= 3,
            "conductor must be a prime >= 3, got {p}"
        );
        CycloElem {
            conductor: p,
            coords: vec![Rational::zero(); (p - 1) as usize],
        }
    }

    /// One of Q(zeta_p).
    pub fn one(p: u32) -> Self {
        Self::from_rational(p, Rational::one())
    }

    /// Embed a rational constant.
    pub fn from_rational(p: u32, r: Rational) -> Self {
        let mut e = Self::zero(p);
        e.coords[0] = r;
        e
    }

    /// Embed a small integer.
    pub fn from_int(p: u32, n: i64) -> Self {
        Self::from_rational(p, rat_int(n))
    }

    /// The generator zeta of Q(zeta_p).
    pub fn zeta(p: u32) -> Self {
        Self::zeta_pow(p, 1)
    }

    /// zeta^k for any integer k, reduced into the power basis.
    pub fn zeta_pow(p: u32, k: i64) -> Self {
        let mut e = Self::zero(p);
        let k = k.rem_euclid(p as i64) as usize;
        if k == (p - 1) as usize {
            // z^(p-1) = -(1 + z + ... + z^(p-2))
            for c in e.coords.iter_mut() {
                *c = -Rational::one();
            }
        } else {
            e.coords[k] = Rational::one();
        }
        e
    }

    /// Build from explicit power-basis coordinates (length p-1).
    pub fn new(p: u32, coords: Vec<Rational>) -> Result<Self, CycloError> {
        assert!(
            is_prime(p) && p >= 3,
            "conductor must be a prime >= 3, got {p}"
        );
        if coords.len() != (p - 1) as usize {
            return Err(CycloError::BadCoordinateLength {
                expected: (p - 1) as usize,
                got: coords.len(),
            });
        }
        Ok(CycloElem {
            conductor: p,
            coords,
        })
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Power-basis coordinates (coefficients of 1, z, ..., z^(p-2)).
    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rational::is_zero)
    }

    /// True when the element lies in Q, i.e. all coordinates above the
    /// constant one vanish.
    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(Rational::is_zero)
    }

    /// Constant coordinate; the full value when `is_rational` holds.
    pub fn rational_part(&self) -> Rational {
        self.coords[0].clone()
    }

    fn check_same(&self, other: &Self) -> Result<(), CycloError> {
        if self.conductor != other.conductor {
            return Err(CycloError::ConductorMismatch {
                left: self.conductor,
                right: other.conductor,
            });
        }
        Ok(())
    }

    /// Reduce a coefficient buffer indexed by exponents 0..p into the power
    /// basis: fold z^p = 1 first, then z^(p-1) = -(1 + ... + z^(p-2)).
    fn reduce(p: u32, buf: &mut Vec<Rational>) -> Self {
        let p = p as usize;
        while buf.len() < p {
            buf.push(Rational::zero());
        }
        for e in (p..buf.len()).rev() {
            let c = std::mem::replace(&mut buf[e], Rational::zero());
            buf[e - p] += c;
        }
        let top = buf[p - 1].clone();
        let coords: Vec<Rational> = (0..p - 1).map(|e| &buf[e] - &top).collect();
        CycloElem {
            conductor: p as u32,
            coords,
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, CycloError> {
        self.check_same(rhs)?;
        let coords = self
            .coords
            .iter()
            .zip(&rhs.coords)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycloElem {
            conductor: self.conductor,
            coords,
        })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, CycloError> {
        self.check_same(rhs)?;
        let coords = self
            .coords
            .iter()
            .zip(&rhs.coords)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CycloElem {
            conductor: self.conductor,
            coords,
        })
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, CycloError> {
        self.check_same(rhs)?;
        let n = (self.conductor - 1) as usize;
        let mut buf = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                buf[i + j] += a * b;
            }
        }
        Ok(Self::reduce(self.conductor, &mut buf))
    }

    pub fn negated(&self) -> Self {
        CycloElem {
            conductor: self.conductor,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    /// Scale by a rational constant.
    pub fn scale(&self, r: &Rational) -> Self {
        CycloElem {
            conductor: self.conductor,
            coords: self.coords.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse, computed as the product of the Galois
    /// conjugates divided by the norm. The norm lands in Q, which is checked.
    pub fn inv(&self) -> Result<Self, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        let p = self.conductor;
        let mut conj = Self::one(p);
        for k in 2..p as i64 {
            conj = conj.checked_mul(&self.galois(k)?)?;
        }
        let norm = self.checked_mul(&conj)?;
        debug_assert!(norm.is_rational(), "norm must be rational");
        let n = norm.rational_part();
        debug_assert!(!n.is_zero());
        Ok(conj.scale(&(Rational::one() / n)))
    }

    /// The Galois automorphism zeta -> zeta^k, applied termwise.
    pub fn galois(&self, k: i64) -> Result<Self, CycloError> {
        let p = self.conductor as i64;
        if k.rem_euclid(p) == 0 {
            return Err(CycloError::NonCoprimeGalois {
                k,
                conductor: self.conductor,
            });
        }
        let mut buf = vec![Rational::zero(); self.conductor as usize];
        for (e, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let target = ((e as i64) * k).rem_euclid(p) as usize;
            buf[target] += c;
        }
        Ok(Self::reduce(self.conductor, &mut buf))
    }

    /// Integer power (negative exponents go through `inv`).
    pub fn pow(&self, k: i64) -> Result<Self, CycloError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one(self.conductor);
        for _ in 0..k.unsigned_abs() {
            acc = acc.checked_mul(&base)?;
        }
        Ok(acc)
    }
}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if e == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "z^{e}")?;
            } else {
                write!(f, "{mag}*z^{e}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! binop_impls {
    ($trait:ident, $method:ident, $checked:ident, $ty:ty) => {
        impl $trait<&$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                self.$checked(rhs).expect("ring operand mismatch")
            }
        }
        impl $trait<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
    };
}

binop_impls!(Add, add, checked_add, CycloElem);
binop_impls!(Sub, sub, checked_sub, CycloElem);
binop_impls!(Mul, mul, checked_mul, CycloElem);

impl Neg for &CycloElem {
    type Output = CycloElem;
    fn neg(self) -> CycloElem {
        self.negated()
    }
}

impl Neg for CycloElem {
    type Output = CycloElem;
    fn neg(self) -> CycloElem {
        self.negated()
    }
}

/// An element of Q\[c1,c2\]/(c1^p - 1, c2^p - 1): a p-by-p grid of rationals,
/// entry (i, j) holding the coefficient of c1^i c2^j. The grid itself is the
/// canonical form, so equality is entrywise.
#[derive(Clone, PartialEq, Eq)]
pub struct TorusPoly {
    modulus: u32,
    coeffs: Vec<Rational>, // row-major, p*p entries
}

impl TorusPoly {
    pub fn zero(p: u32) -> Self {
        assert!(
            is_prime(p) && p >= 3,
            "modulus must be a prime >= 3, got {p}"
        );
        TorusPoly {
            modulus: p,
            coeffs: vec![Rational::zero(); (p * p) as usize],
        }
    }

    pub fn one(p: u32) -> Self {
        Self::from_int(p, 1)
    }

    pub fn from_int(p: u32, n: i64) -> Self {
        let mut t = Self::zero(p);
        t.coeffs[0] = rat_int(n);
        t
    }

    /// The monomial coeff * c1^i c2^j, exponents reduced mod p.
    pub fn monomial(p: u32, i: i64, j: i64, coeff: Rational) -> Self {
        let mut t = Self::zero(p);
        let i = i.rem_euclid(p as i64) as u32;
        let j = j.rem_euclid(p as i64) as u32;
        t.coeffs[(i * p + j) as usize] = coeff;
        t
    }

    /// c1^i in the quotient ring.
    pub fn c1_pow(p: u32, i: i64) -> Self {
        Self::monomial(p, i, 0, Rational::one())
    }

    /// c2^j in the quotient ring.
    pub fn c2_pow(p: u32, j: i64) -> Self {
        Self::monomial(p, 0, j, Rational::one())
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Coefficient of c1^i c2^j.
    pub fn coeff(&self, i: u32, j: u32) -> &Rational {
        &self.coeffs[(i * self.modulus + j) as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    fn check_same(&self, other: &Self) -> Result<(), CycloError> {
        if self.modulus != other.modulus {
            return Err(CycloError::ConductorMismatch {
                left: self.modulus,
                right: other.modulus,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, CycloError> {
        self.check_same(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(TorusPoly {
            modulus: self.modulus,
            coeffs,
        })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, CycloError> {
        self.check_same(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(TorusPoly {
            modulus: self.modulus,
            coeffs,
        })
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, CycloError> {
        self.check_same(rhs)?;
        let p = self.modulus;
        let mut out = Self::zero(p);
        for i1 in 0..p {
            for j1 in 0..p {
                let a = self.coeff(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..p {
                    for j2 in 0..p {
                        let b = rhs.coeff(i2, j2);
                        if b.is_zero() {
                            continue;
                        }
                        let i = (i1 + i2) % p;
                        let j = (j1 + j2) % p;
                        out.coeffs[(i * p + j) as usize] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn negated(&self) -> Self {
        TorusPoly {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        TorusPoly {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Evaluate at (c1, c2) = (zeta^a, zeta^b). This is a ring homomorphism
    /// onto Q(zeta_p), and the 49 evaluations at p = 7 jointly separate
    /// points of the quotient ring.
    pub fn eval(&self, a: i64, b: i64) -> CycloElem {
        let p = self.modulus;
        let mut buf = vec![Rational::zero(); p as usize];
        for i in 0..p {
            for j in 0..p {
                let c = self.coeff(i, j);
                if c.is_zero() {
                    continue;
                }
                let e = (a * i as i64 + b * j as i64).rem_euclid(p as i64) as usize;
                buf[e] += c;
            }
        }
        CycloElem::reduce(p, &mut buf)
    }

    /// Swap the roles of c1 and c2 (transpose the coefficient grid).
    pub fn swap_vars(&self) -> Self {
        let p = self.modulus;
        let mut out = Self::zero(p);
        for i in 0..p {
            for j in 0..p {
                out.coeffs[(j * p + i) as usize] = self.coeff(i, j).clone();
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.modulus);
        for _ in 0..k {
            acc = acc.checked_mul(self).expect("same modulus");
        }
        acc
    }
}

impl fmt::Debug for TorusPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for TorusPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.modulus;
        let mut first = true;
        for i in 0..p {
            for j in 0..p {
                let c = self.coeff(i, j);
                if c.is_zero() {
                    continue;
                }
                let mag = c.abs();
                if first {
                    if c.is_negative() {
                        write!(f, "-")?;
                    }
                    first = false;
                } else if c.is_negative() {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
                let mut vars = String::new();
                if i > 0 {
                    vars.push_str(&format!("c1^{i}"));
                }
                if j > 0 {
                    if !vars.is_empty() {
                        vars.push('*');
                    }
                    vars.push_str(&format!("c2^{j}"));
                }
                if vars.is_empty() {
                    write!(f, "{mag}")?;
                } else if mag.is_one() {
                    write!(f, "{vars}")?;
                } else {
                    write!(f, "{mag}*{vars}")?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

binop_impls!(Add, add, checked_add, TorusPoly);
binop_impls!(Sub, sub, checked_sub, TorusPoly);
binop_impls!(Mul, mul, checked_mul, TorusPoly);

impl Neg for &TorusPoly {
    type Output = TorusPoly;
    fn neg(self) -> TorusPoly {
        self.negated()
    }
}

impl Neg for TorusPoly {
    type Output = TorusPoly;
    fn neg(self) -> TorusPoly {
        self.negated()
    }
}
