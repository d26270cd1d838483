//! Integer Laurent polynomials in the two variables `a` and `z`.
//!
//! Coefficients are arbitrary-precision integers and the zero coefficient is
//! never stored, so equality of values is equality of representations.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

use crate::{Error, Result};

/// Extremal exponents of a nonzero polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Degrees {
    pub a_max: i64,
    pub a_min: i64,
    pub z_max: i64,
    pub z_min: i64,
}

/// Sparse Laurent polynomial over `Z[a^{±1}, z^{±1}]`.
///
/// Keys are `(a_exponent, z_exponent)`; the map holds no zero entries.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly2 {
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl LaurentPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, BigInt::one())
    }

    pub fn monomial(a_exp: i64, z_exp: i64, coeff: impl Into<BigInt>) -> Self {
        let mut p = Self::default();
        p.add_term(a_exp, z_exp, coeff.into());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a_exp: i64, z_exp: i64) -> BigInt {
        self.terms
            .get(&(a_exp, z_exp))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, a_exp: i64, z_exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry((a_exp, z_exp)).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&(a_exp, z_exp));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(a, z), c) in &other.terms {
            out.add_term(a, z, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(a, z), c) in &other.terms {
            out.add_term(a, z, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::default();
        for (&(a, z), c) in &self.terms {
            out.add_term(a, z, -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (&(a1, z1), c1) in &self.terms {
            for (&(a2, z2), c2) in &other.terms {
                out.add_term(a1 + a2, z1 + z2, c1 * c2);
            }
        }
        out
    }

    /// Multiplies by `coeff * a^{a_exp} * z^{z_exp}`.
    pub fn scale_by_monomial(&self, a_exp: i64, z_exp: i64, coeff: impl Into<BigInt>) -> Self {
        let c = coeff.into();
        let mut out = Self::default();
        for (&(a, z), k) in &self.terms {
            out.add_term(a + a_exp, z + z_exp, k * &c);
        }
        out
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Extremal exponents. The zero polynomial has no degrees.
    pub fn degrees(&self) -> Result<Degrees> {
        if self.is_zero() {
            return Err(Error::DegreesOfZero);
        }
        let mut d = Degrees {
            a_max: i64::MIN,
            a_min: i64::MAX,
            z_max: i64::MIN,
            z_min: i64::MAX,
        };
        for &(a, z) in self.terms.keys() {
            d.a_max = d.a_max.max(a);
            d.a_min = d.a_min.min(a);
            d.z_max = d.z_max.max(z);
            d.z_min = d.z_min.min(z);
        }
        Ok(d)
    }

    /// The substitution `a ↦ -a^{-1}`: `a^i z^j ↦ (-1)^i a^{-i} z^j`.
    pub fn substitute_mirror(&self) -> Self {
        let mut out = Self::default();
        for (&(a, z), c) in &self.terms {
            let c = if a.rem_euclid(2) == 1 { -c.clone() } else { c.clone() };
            out.add_term(-a, z, c);
        }
        out
    }

    /// Sets `a = 1`, collapsing to a one-variable Laurent polynomial in `z`.
    pub fn substitute_a_one(&self) -> BTreeMap<i64, BigInt> {
        let mut out: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (&(_, z), c) in &self.terms {
            let entry = out.entry(z).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                out.remove(&z);
            }
        }
        out
    }

    /// `(a^{-1} - a) z^{-1}`, the factor one trivial circle contributes.
    pub fn split_factor() -> Self {
        let mut p = Self::monomial(-1, -1, 1);
        p.add_term(1, -1, (-1).into());
        p
    }

    /// Value of a zero-crossing diagram with `n ≥ 1` circles:
    /// `(a^{-1} - a)^{n-1} z^{1-n}`.
    pub fn unlink(n: usize) -> Self {
        assert!(n >= 1, "unlink needs at least one component");
        Self::split_factor().pow(n - 1)
    }

    /// Sorted `[a_exp, z_exp, coeff]` triples, the serialized form.
    pub fn to_triples(&self) -> Vec<(i64, i64, String)> {
        self.terms
            .iter()
            .map(|(&(a, z), c)| (a, z, c.to_string()))
            .collect()
    }

    pub fn from_triples(triples: &[(i64, i64, String)]) -> Result<Self> {
        let mut p = Self::default();
        for (a, z, c) in triples {
            let c: BigInt = c
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {c:?}")))?;
            p.add_term(*a, *z, c);
        }
        Ok(p)
    }

    /// Serializes as a JSON array of `[a_exp, z_exp, coeff]` triples sorted
    /// lexicographically by exponent pair. Coefficients that fit in an `i64`
    /// are emitted as JSON numbers, larger ones as decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        let arr: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(&(a, z), c)| {
                let coeff = match i64::try_from(c) {
                    Ok(n) => serde_json::Value::from(n),
                    Err(_) => serde_json::Value::from(c.to_string()),
                };
                serde_json::Value::from(vec![
                    serde_json::Value::from(a),
                    serde_json::Value::from(z),
                    coeff,
                ])
            })
            .collect();
        serde_json::Value::from(arr)
    }
}

impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, z), c) in &self.terms {
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
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || (a == 0 && z == 0) {
                factors.push(mag.to_string());
            }
            if a != 0 {
                factors.push(if a == 1 { "a".into() } else { format!("a^{a}") });
            }
            if z != 0 {
                factors.push(if z == 1 { "z".into() } else { format!("z^{z}") });
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
