//! Exact scalars over the rationals and prime fields.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// The base field: either ℚ or 𝔽_p for a prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    PrimeField { characteristic: u64 },
}

/// Primes above this bound are refused; products of residues must fit in a `u64`.
pub const MAX_PRIME: u64 = 1 << 31;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn rationals() -> Field {
        Field::Rationals
    }

    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) || p > MAX_PRIME {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::PrimeField { characteristic: p })
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::PrimeField { characteristic } => *characteristic,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Field::PrimeField { .. })
    }

    /// Number of elements, or `None` for ℚ.
    pub fn order(&self) -> Option<u64> {
        match self {
            Field::Rationals => None,
            Field::PrimeField { characteristic } => Some(*characteristic),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::PrimeField { characteristic: p } => {
                let r = n.rem_euclid(*p as i64) as u64;
                Scalar::Mod {
                    value: r,
                    modulus: *p,
                }
            }
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        let d = self.from_i64(den);
        let inv = d
            .inv()
            .ok_or_else(|| Error::Parse(format!("zero denominator in {num}/{den}")))?;
        Ok(self.from_i64(num) * inv)
    }

    /// All field elements in the order 0, 1, …, p−1.
    pub fn elements(&self) -> Result<Vec<Scalar>> {
        match self {
            Field::Rationals => Err(Error::InfiniteField),
            Field::PrimeField { characteristic: p } => Ok((0..*p)
                .map(|v| Scalar::Mod {
                    value: v,
                    modulus: *p,
                })
                .collect()),
        }
    }

    /// Parses `"3"`, `"-2"` or `"3/4"` into this field.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let parse_int = |t: &str| -> Result<BigInt> {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("bad scalar {s:?}")))
        };
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (parse_int(n)?, parse_int(d)?),
            None => (parse_int(s)?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        match self {
            Field::Rationals => Ok(Scalar::Rat(BigRational::new(num, den))),
            Field::PrimeField { characteristic: p } => {
                let pb = BigInt::from(*p);
                let reduce = |x: BigInt| -> u64 {
                    let r = ((x % &pb) + &pb) % &pb;
                    r.to_u64().expect("residue fits")
                };
                let n = Scalar::Mod {
                    value: reduce(num),
                    modulus: *p,
                };
                let d = Scalar::Mod {
                    value: reduce(den),
                    modulus: *p,
                };
                let inv = d.inv().ok_or_else(|| {
                    Error::Parse(format!("denominator of {s:?} vanishes mod {p}"))
                })?;
                Ok(n * inv)
            }
        }
    }

    pub fn check(&self, s: &Scalar) -> Result<()> {
        if s.field() == *self {
            Ok(())
        } else {
            Err(Error::FieldMismatch(
                format!("{:?}", s.field()),
                format!("{self:?}"),
            ))
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::PrimeField { characteristic } => write!(f, "F{characteristic}"),
        }
    }
}

/// An exact field element. Rationals are kept in lowest terms with positive
/// denominator; residues live in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rat(BigRational),
    Mod { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rationals,
            Scalar::Mod { modulus, .. } => Field::PrimeField {
                characteristic: *modulus,
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// Residue for prime-field scalars.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Mod { value, .. } => Some(*value),
            Scalar::Rat(_) => None,
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar field mismatch: {} vs {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (
                Scalar::Mod {
                    value: a,
                    modulus: p,
                },
                Scalar::Mod {
                    value: b,
                    modulus: q,
                },
            ) if p == q => Scalar::Mod {
                value: (a + b) % p,
                modulus: *p,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (
                Scalar::Mod {
                    value: a,
                    modulus: p,
                },
                Scalar::Mod {
                    value: b,
                    modulus: q,
                },
            ) if p == q => Scalar::Mod {
                value: a * b % p,
                modulus: *p,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Scalar {
    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_negative())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_stay_in_lowest_terms() {
        let q = Field::Rationals;
        let a = q.parse("6/8").unwrap();
        assert_eq!(a.to_string(), "3/4");
        let b = q.parse("-2/-4").unwrap();
        assert_eq!(b.to_string(), "1/2");
        assert_eq!((a.clone() - a).to_string(), "0");
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let three = f.from_i64(3);
        let inv = three.inv().unwrap();
        assert_eq!((three * inv).to_string(), "1");
        assert_eq!(f.from_i64(-1).to_string(), "6");
        assert_eq!(f.parse("1/2").unwrap().to_string(), "4");
        assert!(f.parse("1/7").is_err());
    }

    #[test]
    fn rejects_composites() {
        assert_eq!(Field::prime(9), Err(Error::NotPrime(9)));
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(2).is_ok());
    }

    #[test]
    fn field_elements_enumerate_residues() {
        let f = Field::prime(3).unwrap();
        let els: Vec<String> = f
            .elements()
            .unwrap()
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(els, ["0", "1", "2"]);
        assert_eq!(Field::Rationals.elements(), Err(Error::InfiniteField));
    }
}
