//! Coefficient domains: the integers, the rationals, prime fields and
//! double-precision complex numbers.
//!
//! All four sit behind [`Domain`], which supplies element arithmetic,
//! echelon forms for spans and quotient shapes. Integer echelon form is the
//! Hermite normal form; field echelon form is reduced row-echelon form.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::normal_form::{hermite_normal_form, smith_normal_form};
use crate::lattice::AbelianGroupShape;

/// Entries below this magnitude count as zero in the complex domain.
pub const COMPLEX_ZERO_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DomainTag {
    Integers,
    Rationals,
    PrimeField(u64),
    Complex,
}

impl DomainTag {
    /// Short tag used in serialized values: `Z`, `Q`, `Zp`, `C`.
    pub fn code(&self) -> &'static str {
        match self {
            DomainTag::Integers => "Z",
            DomainTag::Rationals => "Q",
            DomainTag::PrimeField(_) => "Zp",
            DomainTag::Complex => "C",
        }
    }
}

impl fmt::Display for DomainTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainTag::PrimeField(p) => write!(f, "F{p}"),
            other => f.write_str(other.code()),
        }
    }
}

impl FromStr for DomainTag {
    type Err = Error;

    /// Accepts `Z`, `Q`, `C`, `F<p>`, `Zp<p>` or `Z/<p>`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "Z" | "ZZ" | "int" | "integers" => return Ok(DomainTag::Integers),
            "Q" | "QQ" | "rat" | "rationals" => return Ok(DomainTag::Rationals),
            "C" | "CC" | "complex" => return Ok(DomainTag::Complex),
            _ => {}
        }
        let digits = t
            .strip_prefix("Zp")
            .or_else(|| t.strip_prefix("Z/"))
            .or_else(|| t.strip_prefix('F'))
            .or_else(|| t.strip_prefix("GF"))
            .ok_or_else(|| Error::Parse(format!("unknown domain {s:?}")))?;
        let p: u64 = digits
            .trim_start_matches(':')
            .parse()
            .map_err(|_| Error::Parse(format!("bad prime in domain {s:?}")))?;
        PrimeField::new(p)?;
        Ok(DomainTag::PrimeField(p))
    }
}

pub trait Domain: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn tag(&self) -> DomainTag;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Inverse of a unit, `None` otherwise.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// 0 for the integers, rationals and complex numbers.
    fn characteristic(&self) -> u64;
    fn is_field(&self) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.inv(a).is_some()
    }

    /// `q` with `q·b = a`, if one exists in the domain.
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// Canonical echelon basis of the row span: reduced row-echelon form for
    /// fields. Zero rows are dropped.
    fn echelon(&self, rows: Vec<Vec<Self::Elem>>) -> Vec<Vec<Self::Elem>> {
        rref(self, rows)
    }

    /// Shape of `Aⁿ / (row lattice of relations)` where `n = rank_a`.
    /// Over fields only the dimension survives.
    fn relation_shape(&self, rank_a: usize, relations: Vec<Vec<Self::Elem>>) -> AbelianGroupShape {
        let r = self.echelon(relations).len();
        AbelianGroupShape { free_rank: rank_a - r, torsion: Vec::new() }
    }

    fn elem_to_json(&self, a: &Self::Elem) -> Value;
    fn elem_from_json(&self, v: &Value) -> Result<Self::Elem>;
    fn format(&self, a: &Self::Elem) -> String;
}

/// Reduced row-echelon form over a field.
pub(crate) fn rref<D: Domain>(d: &D, mut rows: Vec<Vec<D::Elem>>) -> Vec<Vec<D::Elem>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    for col in 0..ncols {
        let Some(found) = (pivot_row..rows.len()).find(|&r| !d.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(pivot_row, found);
        let inv = d.inv(&rows[pivot_row][col]).expect("nonzero field element is a unit");
        for x in rows[pivot_row].iter_mut() {
            *x = d.mul(x, &inv);
        }
        let pivot = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == pivot_row || d.is_zero(&row[col]) {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot) {
                *x = d.sub(x, &d.mul(&factor, p));
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.truncate(pivot_row);
    rows
}

// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Integers;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ComplexFloat;

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    /// Moduli are kept below 2³¹ so products fit in a `u64`.
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 31 {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc
    }
}

pub(crate) fn bigint_to_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

pub(crate) fn bigint_from_json(v: &Value) -> Result<BigInt> {
    if let Some(x) = v.as_i64() {
        return Ok(BigInt::from(x));
    }
    v.as_str()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Parse(format!("expected an integer, got {v}")))
}

impl Domain for Integers {
    type Elem = BigInt;

    fn tag(&self) -> DomainTag {
        DomainTag::Integers
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_i64(&self, v: i64) -> BigInt {
        BigInt::from(v)
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn inv(&self, a: &BigInt) -> Option<BigInt> {
        (a.abs().is_one()).then(|| a.clone())
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn is_field(&self) -> bool {
        false
    }
    fn div_exact(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        if b.is_zero() {
            return None;
        }
        let (q, r) = a.div_rem(b);
        r.is_zero().then_some(q)
    }
    fn echelon(&self, rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
        hermite_normal_form(&rows)
    }
    fn relation_shape(&self, rank_a: usize, relations: Vec<Vec<BigInt>>) -> AbelianGroupShape {
        let snf = smith_normal_form(&relations, false);
        let torsion: Vec<BigInt> = snf.invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect();
        AbelianGroupShape { free_rank: rank_a - snf.invariant_factors.len(), torsion }
    }
    fn elem_to_json(&self, a: &BigInt) -> Value {
        bigint_to_json(a)
    }
    fn elem_from_json(&self, v: &Value) -> Result<BigInt> {
        bigint_from_json(v)
    }
    fn format(&self, a: &BigInt) -> String {
        a.to_string()
    }
}

impl Domain for Rationals {
    type Elem = BigRational;

    fn tag(&self) -> DomainTag {
        DomainTag::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn is_field(&self) -> bool {
        true
    }
    fn elem_to_json(&self, a: &BigRational) -> Value {
        json!(format!("{}/{}", a.numer(), a.denom()))
    }
    fn elem_from_json(&self, v: &Value) -> Result<BigRational> {
        if let Some(x) = v.as_i64() {
            return Ok(self.from_i64(x));
        }
        let s = v.as_str().ok_or_else(|| Error::Parse(format!("expected \"num/den\", got {v}")))?;
        let (num, den) = s.split_once('/').unwrap_or((s, "1"));
        let num: BigInt = num.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
        let den: BigInt = den.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        Ok(BigRational::new(num, den))
    }
    fn format(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
}

impl Domain for PrimeField {
    type Elem = u64;

    fn tag(&self) -> DomainTag {
        DomainTag::PrimeField(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| self.pow(*a, self.p - 2))
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn is_field(&self) -> bool {
        true
    }
    fn elem_to_json(&self, a: &u64) -> Value {
        json!(a)
    }
    fn elem_from_json(&self, v: &Value) -> Result<u64> {
        v.as_i64()
            .map(|x| self.from_i64(x))
            .ok_or_else(|| Error::Parse(format!("expected an integer, got {v}")))
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
}

impl Domain for ComplexFloat {
    type Elem = Complex64;

    fn tag(&self) -> DomainTag {
        DomainTag::Complex
    }
    fn zero(&self) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }
    fn one(&self) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }
    fn from_i64(&self, v: i64) -> Complex64 {
        Complex64::new(v as f64, 0.0)
    }
    fn add(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a + b
    }
    fn neg(&self, a: &Complex64) -> Complex64 {
        -a
    }
    fn mul(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a * b
    }
    fn inv(&self, a: &Complex64) -> Option<Complex64> {
        (!self.is_zero(a)).then(|| a.inv())
    }
    fn is_zero(&self, a: &Complex64) -> bool {
        a.norm() < COMPLEX_ZERO_TOL
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn is_field(&self) -> bool {
        true
    }
    fn elem_to_json(&self, a: &Complex64) -> Value {
        json!([a.re, a.im])
    }
    fn elem_from_json(&self, v: &Value) -> Result<Complex64> {
        if let Some(x) = v.as_f64() {
            return Ok(Complex64::new(x, 0.0));
        }
        match v.as_array().map(Vec::as_slice) {
            Some([re, im]) => match (re.as_f64(), im.as_f64()) {
                (Some(re), Some(im)) => Ok(Complex64::new(re, im)),
                _ => Err(Error::Parse(format!("bad complex value {v}"))),
            },
            _ => Err(Error::Parse(format!("bad complex value {v}"))),
        }
    }
    fn format(&self, a: &Complex64) -> String {
        format!("{a}")
    }
}

/// Serializes a coefficient vector with its domain tag.
pub fn vector_to_json<D: Domain>(d: &D, coeffs: &[D::Elem]) -> Value {
    let mut obj = json!({
        "domain": d.tag().code(),
        "coeffs": coeffs.iter().map(|c| d.elem_to_json(c)).collect::<Vec<_>>(),
    });
    if let DomainTag::PrimeField(p) = d.tag() {
        obj["p"] = json!(p);
    }
    obj
}

pub fn vector_from_json<D: Domain>(d: &D, v: &Value) -> Result<Vec<D::Elem>> {
    check_tag(d, v)?;
    v.get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing \"coeffs\"".into()))?
        .iter()
        .map(|c| d.elem_from_json(c))
        .collect()
}

/// Serializes a row-major matrix with its domain tag.
pub fn matrix_to_json<D: Domain>(d: &D, rows: &[Vec<D::Elem>]) -> Value {
    let mut obj = json!({
        "domain": d.tag().code(),
        "rows": rows
            .iter()
            .map(|r| r.iter().map(|c| d.elem_to_json(c)).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    });
    if let DomainTag::PrimeField(p) = d.tag() {
        obj["p"] = json!(p);
    }
    obj
}

pub fn matrix_from_json<D: Domain>(d: &D, v: &Value) -> Result<Vec<Vec<D::Elem>>> {
    check_tag(d, v)?;
    v.get("rows")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing \"rows\"".into()))?
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::Parse("matrix row is not an array".into()))?
                .iter()
                .map(|c| d.elem_from_json(c))
                .collect()
        })
        .collect()
}

fn check_tag<D: Domain>(d: &D, v: &Value) -> Result<()> {
    let tag = v.get("domain").and_then(Value::as_str).unwrap_or("");
    if tag != d.tag().code() {
        return Err(Error::DomainMismatch(tag.to_string(), d.tag().to_string()));
    }
    if let DomainTag::PrimeField(p) = d.tag() {
        if v.get("p").and_then(Value::as_u64) != Some(p) {
            return Err(Error::DomainMismatch(format!("{}", v.get("p").unwrap_or(&Value::Null)), p.to_string()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_checks_modulus() {
        assert!(PrimeField::new(7).is_ok());
        assert_eq!(PrimeField::new(9), Err(Error::NotPrime(9)));
        assert_eq!(PrimeField::new(1), Err(Error::NotPrime(1)));
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.from_i64(-1), 6);
        for a in 1..7 {
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        }
        assert_eq!(f.inv(&0), None);
    }

    #[test]
    fn integer_units_and_division() {
        let z = Integers;
        assert!(z.is_unit(&BigInt::from(-1)));
        assert!(!z.is_unit(&BigInt::from(2)));
        assert_eq!(z.div_exact(&BigInt::from(6), &BigInt::from(-3)), Some(BigInt::from(-2)));
        assert_eq!(z.div_exact(&BigInt::from(7), &BigInt::from(3)), None);
    }

    #[test]
    fn rationals_stay_reduced() {
        let q = Rationals;
        let a = q.elem_from_json(&json!("6/8")).unwrap();
        assert_eq!(q.elem_to_json(&a), json!("3/4"));
        assert!(q.elem_from_json(&json!("1/0")).is_err());
    }

    #[test]
    fn rref_over_f5() {
        let f = PrimeField::new(5).unwrap();
        let rows = vec![vec![1, 2, 0], vec![0, 1, 3], vec![2, 0, 1]];
        let e = f.echelon(rows);
        assert_eq!(e, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let dep = f.echelon(vec![vec![1, 2], vec![2, 4]]);
        assert_eq!(dep, vec![vec![1, 2]]);
    }

    #[test]
    fn tags_parse() {
        assert_eq!("F5".parse::<DomainTag>().unwrap(), DomainTag::PrimeField(5));
        assert_eq!("Zp3".parse::<DomainTag>().unwrap(), DomainTag::PrimeField(3));
        assert_eq!("Q".parse::<DomainTag>().unwrap(), DomainTag::Rationals);
        assert!("F4".parse::<DomainTag>().is_err());
        assert!("R".parse::<DomainTag>().is_err());
    }

    #[test]
    fn json_vectors_carry_domain() {
        let f = PrimeField::new(3).unwrap();
        let v = vector_to_json(&f, &[0, 1, 2]);
        assert_eq!(v, json!({"domain": "Zp", "p": 3, "coeffs": [0, 1, 2]}));
        assert_eq!(vector_from_json(&f, &v).unwrap(), vec![0, 1, 2]);
        let f5 = PrimeField::new(5).unwrap();
        assert!(vector_from_json(&f5, &v).is_err());
        let q = Rationals;
        assert!(vector_from_json(&q, &v).is_err());
    }
}
