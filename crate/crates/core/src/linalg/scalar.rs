use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational number; `BigRational` keeps it reduced with a positive denominator.
pub type Scalar = BigRational;

/// Dense column vector.
pub type Vector = Vec<Scalar>;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let t = s.trim();
    let bad = || Error::Input(format!("not a rational: {s:?}"));
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Input(format!("zero denominator in {s:?}")));
            }
            Ok(Scalar::new(p, q))
        }
        None => Ok(Scalar::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

pub fn format_scalar(x: &Scalar) -> String {
    x.to_string()
}

/// `(a, b, c)`.
pub fn format_vector(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(format_scalar).collect();
    format!("({})", parts.join(", "))
}

/// `[(..), (..)]`, e.g. for a basis.
pub fn format_vectors(vs: &[Vector]) -> String {
    let parts: Vec<String> = vs.iter().map(|v| format_vector(v)).collect();
    format!("[{}]", parts.join(", "))
}

pub fn vector(xs: &[i64]) -> Vector {
    xs.iter().map(|&x| int(x)).collect()
}

pub fn zeros(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit(n: usize, i: usize) -> Vector {
    let mut v = zeros(n);
    v[i] = one();
    v
}

pub fn add(a: &[Scalar], b: &[Scalar]) -> Vector {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: &Scalar, a: &[Scalar]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}

pub fn is_zero_vec(a: &[Scalar]) -> bool {
    a.iter().all(|x| x.is_zero())
}

pub fn concat(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().chain(b).cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_is_canonical() {
        assert_eq!(parse_scalar("2/4").unwrap(), frac(1, 2));
        assert_eq!(parse_scalar("1/-2").unwrap(), frac(-1, 2));
        assert_eq!(parse_scalar(" 7 ").unwrap(), int(7));
        assert_eq!(format_scalar(&parse_scalar("-6/4").unwrap()), "-3/2");
        assert_eq!(format_scalar(&int(3)), "3");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("1.5").is_err());
        assert!(parse_scalar("").is_err());
    }
}
