//! Exact rational scalars, 2×2 matrix algebra, eigenline extraction, and
//! canonical projective normalization.
//!
//! [`Scalar`] is an arbitrary-precision rational, always stored reduced with a
//! positive denominator. Arithmetic is exact; division by zero is an error,
//! never a sentinel. Scalars serialize as strings `"n"` or `"n/d"` in lowest
//! terms with `d > 0`.
//!
//! [`Mat2`] is a 2×2 matrix of scalars. [`ProjMat2`] and [`ProjPoint`] are the
//! canonically-scaled projective quotients: equality of projective values is
//! decidable entrywise because every value has a unique representative.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Errors from exact linear algebra.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("singular matrix has no inverse")]
    SingularMatrix,
    #[error("{lambda} is not an eigenvalue")]
    NotAnEigenvalue { lambda: String },
    #[error("eigenline not unique: matrix is central")]
    EigenlineNotUnique,
    #[error("eigenvalue not in field: discriminant {disc} is not a rational square")]
    EigenvalueNotInField { disc: String },
    #[error("projective point (0, 0) is undefined")]
    ZeroProjPoint,
    #[error("cannot parse {input:?} as a rational number")]
    Parse { input: String },
}

/// An exact rational number: arbitrary-precision numerator and positive
/// denominator, always stored in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// Builds `numer/denom`, reducing and normalizing the sign.
    pub fn new(numer: BigInt, denom: BigInt) -> Result<Self, ExactError> {
        if denom.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        Ok(Scalar(BigRational::new(numer, denom)))
    }

    /// Convenience constructor from machine integers.
    pub fn fraction(numer: i64, denom: i64) -> Result<Self, ExactError> {
        Scalar::new(BigInt::from(numer), BigInt::from(denom))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Scalar(self.0.recip()))
    }

    /// Exact division; errors on a zero divisor.
    pub fn div(&self, rhs: &Scalar) -> Result<Self, ExactError> {
        if rhs.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Scalar(&self.0 / &rhs.0))
    }

    /// Integer power, negative exponents via the inverse; errors on `0^-n`.
    pub fn pow(&self, exp: i32) -> Result<Self, ExactError> {
        if exp < 0 {
            return Ok(Scalar(self.inv()?.0.pow(-exp)));
        }
        Ok(Scalar(self.0.pow(exp)))
    }

    /// Exact square root if this is a square of a rational, else `None`.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.0.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(Scalar(BigRational::new(n, d)))
        } else {
            None
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar(&self.0 $op &rhs.0)
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0 $op rhs.0)
            }
        }
    };
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Ratio prints "n" for integers and "n/d" otherwise, which is exactly
        // the wire format.
        write!(f, "{}", self.0)
    }
}

impl FromStr for Scalar {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ExactError::Parse {
            input: s.to_owned(),
        };
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let numer = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let denom = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if denom.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        Ok(Scalar(BigRational::new(numer, denom)))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A 2×2 matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mat2([[Scalar; 2]; 2]);

impl Mat2 {
    pub fn new(entries: [[Scalar; 2]; 2]) -> Self {
        Mat2(entries)
    }

    /// Convenience constructor from machine integers.
    pub fn from_ints(entries: [[i64; 2]; 2]) -> Self {
        Mat2(entries.map(|row| row.map(Scalar::from_int)))
    }

    pub fn identity() -> Self {
        Mat2::diag(&Scalar::one(), &Scalar::one())
    }

    pub fn diag(a: &Scalar, d: &Scalar) -> Self {
        Mat2([[a.clone(), Scalar::zero()], [Scalar::zero(), d.clone()]])
    }

    pub fn entry(&self, row: usize, col: usize) -> &Scalar {
        &self.0[row][col]
    }

    pub fn trace(&self) -> Scalar {
        &self.0[0][0] + &self.0[1][1]
    }

    pub fn det(&self) -> Scalar {
        &(&self.0[0][0] * &self.0[1][1]) - &(&self.0[0][1] * &self.0[1][0])
    }

    /// Multiplies every entry by `s`.
    pub fn scale(&self, s: &Scalar) -> Self {
        Mat2([
            [s * &self.0[0][0], s * &self.0[0][1]],
            [s * &self.0[1][0], s * &self.0[1][1]],
        ])
    }

    /// Exact inverse; errors on a singular matrix.
    pub fn inverse(&self) -> Result<Self, ExactError> {
        let det = self.det();
        if det.is_zero() {
            return Err(ExactError::SingularMatrix);
        }
        let inv_det = det.inv()?;
        Ok(Mat2([
            [&self.0[1][1] * &inv_det, -&(&self.0[0][1] * &inv_det)],
            [-&(&self.0[1][0] * &inv_det), &self.0[0][0] * &inv_det],
        ]))
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat2::identity()
    }

    /// True iff the matrix is a scalar multiple of the identity.
    pub fn is_central(&self) -> bool {
        self.0[0][1].is_zero() && self.0[1][0].is_zero() && self.0[0][0] == self.0[1][1]
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &(Scalar, Scalar)) -> (Scalar, Scalar) {
        (
            &(&self.0[0][0] * &v.0) + &(&self.0[0][1] * &v.1),
            &(&self.0[1][0] * &v.0) + &(&self.0[1][1] * &v.1),
        )
    }

    /// Conjugate `g · self · g⁻¹`.
    pub fn conjugate_by(&self, g: &Mat2) -> Result<Self, ExactError> {
        Ok(&(g * self) * &g.inverse()?)
    }

    /// The two rational eigenvalues, or an error when the characteristic
    /// roots are irrational (discriminant not a rational square) — they are
    /// never approximated.
    pub fn eigenvalues(&self) -> Result<(Scalar, Scalar), ExactError> {
        let t = self.trace();
        let disc = &(&t * &t) - &(Scalar::from_int(4) * self.det());
        let root = disc.sqrt_exact().ok_or(ExactError::EigenvalueNotInField {
            disc: disc.to_string(),
        })?;
        let half = Scalar::fraction(1, 2).expect("2 != 0");
        Ok((&half * &(&t + &root), &half * &(&t - &root)))
    }

    /// The projective kernel direction of `self − λI`.
    ///
    /// Errors when `λ` is not an eigenvalue, and when the eigenspace is all of
    /// the plane (central matrix), since then no canonical line exists.
    pub fn eigenline(&self, lambda: &Scalar) -> Result<ProjPoint, ExactError> {
        let m = Mat2([
            [&self.0[0][0] - lambda, self.0[0][1].clone()],
            [self.0[1][0].clone(), &self.0[1][1] - lambda],
        ]);
        if !m.det().is_zero() {
            return Err(ExactError::NotAnEigenvalue {
                lambda: lambda.to_string(),
            });
        }
        // Rows of the singular matrix are proportional; a nonzero row
        // determines the kernel line.
        if !m.0[0][0].is_zero() || !m.0[0][1].is_zero() {
            ProjPoint::new(-&m.0[0][1], m.0[0][0].clone())
        } else if !m.0[1][0].is_zero() || !m.0[1][1].is_zero() {
            ProjPoint::new(-&m.0[1][1], m.0[1][0].clone())
        } else {
            Err(ExactError::EigenlineNotUnique)
        }
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: &Mat2) -> Mat2 {
        let mut out = [
            [Scalar::zero(), Scalar::zero()],
            [Scalar::zero(), Scalar::zero()],
        ];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = &(&self.0[r][0] * &rhs.0[0][c]) + &(&self.0[r][1] * &rhs.0[1][c]);
            }
        }
        Mat2(out)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        &self * &rhs
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.0[0][0], self.0[0][1], self.0[1][0], self.0[1][1]
        )
    }
}

/// A point of the projective line, canonically scaled: if `p ≠ 0` the
/// representative has `p = 1`, otherwise `q = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    p: Scalar,
    q: Scalar,
}

impl ProjPoint {
    /// Builds `[p : q]`; errors on `(0, 0)`.
    pub fn new(p: Scalar, q: Scalar) -> Result<Self, ExactError> {
        if p.is_zero() && q.is_zero() {
            return Err(ExactError::ZeroProjPoint);
        }
        if p.is_zero() {
            Ok(ProjPoint {
                p,
                q: Scalar::one(),
            })
        } else {
            let q = q.div(&p)?;
            Ok(ProjPoint {
                p: Scalar::one(),
                q,
            })
        }
    }

    pub fn p(&self) -> &Scalar {
        &self.p
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    /// The canonical vector lift `(p, q)`.
    pub fn lift(&self) -> (Scalar, Scalar) {
        (self.p.clone(), self.q.clone())
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}]", self.p, self.q)
    }
}

/// An element of PGL₂ in canonical scaling: the first nonzero entry of the
/// representative, in reading order (0,0), (0,1), (1,0), (1,1), equals 1.
/// Two values are equal iff their representatives are entrywise equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjMat2 {
    rep: Mat2,
}

impl ProjMat2 {
    pub fn rep(&self) -> &Mat2 {
        &self.rep
    }
}

impl fmt::Display for ProjMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

/// Canonically scales a nonsingular matrix to its projective representative.
///
/// `proj_normalize(s·a) = proj_normalize(a)` for every nonzero scalar `s`.
pub fn proj_normalize(a: &Mat2) -> Result<ProjMat2, ExactError> {
    if a.det().is_zero() {
        return Err(ExactError::SingularMatrix);
    }
    let first_nonzero = [(0, 0), (0, 1), (1, 0), (1, 1)]
        .into_iter()
        .map(|(r, c)| a.entry(r, c))
        .find(|e| !e.is_zero())
        .expect("nonsingular matrix has a nonzero entry");
    Ok(ProjMat2 {
        rep: a.scale(&first_nonzero.inv()?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(txt: &str) -> Scalar {
        txt.parse().unwrap()
    }

    fn m(rows: [[&str; 2]; 2]) -> Mat2 {
        Mat2::new(rows.map(|r| r.map(s)))
    }

    #[test]
    fn scalar_arithmetic_is_exact() {
        let a = s("1/3");
        let b = s("1/6");
        assert_eq!(&a + &b, s("1/2"));
        assert_eq!(&a - &b, s("1/6"));
        assert_eq!(&a * &b, s("1/18"));
        assert_eq!(a.div(&b).unwrap(), s("2"));
    }

    #[test]
    fn scalar_division_by_zero_errors() {
        assert_eq!(s("1").div(&Scalar::zero()), Err(ExactError::DivisionByZero));
        assert_eq!(Scalar::zero().inv(), Err(ExactError::DivisionByZero));
        assert_eq!(
            Scalar::new(BigInt::from(1), BigInt::from(0)),
            Err(ExactError::ZeroDenominator)
        );
    }

    #[test]
    fn scalar_wire_format_is_lowest_terms_positive_denominator() {
        assert_eq!(s("4/8").to_string(), "1/2");
        assert_eq!(s("3/-6").to_string(), "-1/2");
        assert_eq!(s("-5/2").to_string(), "-5/2");
        assert_eq!(s("7").to_string(), "7");
        assert_eq!(s("0/5").to_string(), "0");
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("a".parse::<Scalar>().is_err());
        assert!("1.5".parse::<Scalar>().is_err());
    }

    #[test]
    fn scalar_serde_round_trip() {
        let x = s("-5/2");
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, "\"-5/2\"");
        assert_eq!(serde_json::from_str::<Scalar>(&json).unwrap(), x);
    }

    #[test]
    fn matrix_serde_is_row_major_strings() {
        let a = m([["0", "1"], ["-1", "5/2"]]);
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, r#"[["0","1"],["-1","5/2"]]"#);
        assert_eq!(serde_json::from_str::<Mat2>(&json).unwrap(), a);
    }

    #[test]
    fn identity_multiplication() {
        let a = m([["2", "1"], ["-5", "-2"]]);
        assert_eq!(&Mat2::identity() * &a, a);
        assert_eq!(&a * &Mat2::identity(), a);
    }

    #[test]
    fn rotation_squared() {
        let j = m([["0", "1"], ["-1", "0"]]);
        assert_eq!(&j * &j, m([["-1", "0"], ["0", "-1"]]));
    }

    #[test]
    fn product_with_diagonal_scaling() {
        let a = m([["2", "0"], ["0", "1/2"]]);
        let r = m([["2", "1"], ["-5", "-2"]]);
        assert_eq!(&a * &r, m([["4", "2"], ["-5/2", "-1"]]));
    }

    #[test]
    fn determinant_is_multiplicative() {
        let a = m([["2", "1"], ["-5", "-2"]]);
        let b = m([["1", "1/3"], ["0", "4"]]);
        assert_eq!((&a * &b).det(), &a.det() * &b.det());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(Mat2::identity().inverse().unwrap(), Mat2::identity());
        assert_eq!(
            m([["0", "1"], ["-1", "0"]]).inverse().unwrap(),
            m([["0", "-1"], ["1", "0"]])
        );
        assert_eq!(
            m([["1", "1"], ["0", "1"]]).inverse().unwrap(),
            m([["1", "-1"], ["0", "1"]])
        );
        let a = m([["2", "1"], ["-5", "-2"]]);
        assert!((&a * &a.inverse().unwrap()).is_identity());
    }

    #[test]
    fn singular_inverse_errors() {
        assert_eq!(
            m([["1", "2"], ["2", "4"]]).inverse(),
            Err(ExactError::SingularMatrix)
        );
    }

    #[test]
    fn eigenline_of_diagonal_matrix() {
        let a = m([["2", "0"], ["0", "1/2"]]);
        let line = a.eigenline(&s("1/2")).unwrap();
        assert_eq!(line, ProjPoint::new(s("0"), s("1")).unwrap());
    }

    #[test]
    fn eigenline_of_jordan_block() {
        let a = m([["1", "1"], ["0", "1"]]);
        let line = a.eigenline(&s("1")).unwrap();
        assert_eq!(line, ProjPoint::new(s("1"), s("0")).unwrap());
    }

    #[test]
    fn eigenline_rejects_non_eigenvalues_and_central_matrices() {
        let a = m([["2", "0"], ["0", "1/2"]]);
        assert!(matches!(
            a.eigenline(&s("3")),
            Err(ExactError::NotAnEigenvalue { .. })
        ));
        let c = m([["3", "0"], ["0", "3"]]);
        assert_eq!(c.eigenline(&s("3")), Err(ExactError::EigenlineNotUnique));
    }

    #[test]
    fn eigenline_satisfies_eigen_equation() {
        let a = m([["4", "2"], ["-5/2", "-1"]]);
        // trace 3, det 1: rational eigenvalues would need disc 5 square.
        assert!(matches!(
            a.eigenvalues(),
            Err(ExactError::EigenvalueNotInField { .. })
        ));
        let b = m([["3", "0"], ["4", "1/3"]]);
        let (l1, l2) = b.eigenvalues().unwrap();
        assert_eq!((l1.clone(), l2.clone()), (s("3"), s("1/3")));
        for lambda in [l1, l2] {
            let v = b.eigenline(&lambda).unwrap().lift();
            let bv = b.apply(&v);
            assert_eq!(bv.0, &lambda * &v.0);
            assert_eq!(bv.1, &lambda * &v.1);
        }
    }

    #[test]
    fn proj_normalize_examples() {
        assert_eq!(
            proj_normalize(&m([["3", "0"], ["0", "3"]])).unwrap().rep(),
            &Mat2::identity()
        );
        assert_eq!(
            proj_normalize(&m([["0", "2"], ["-2", "0"]])).unwrap().rep(),
            &m([["0", "1"], ["-1", "0"]])
        );
        assert_eq!(
            proj_normalize(&m([["2", "1"], ["-1", "2"]])).unwrap().rep(),
            &m([["1", "1/2"], ["-1/2", "1"]])
        );
        assert_eq!(
            proj_normalize(&m([["0", "0"], ["1", "0"]])),
            Err(ExactError::SingularMatrix)
        );
    }

    #[test]
    fn proj_normalize_is_scale_invariant() {
        let a = m([["0", "2"], ["-3", "5/7"]]);
        let scaled = a.scale(&s("-7/3"));
        assert_eq!(proj_normalize(&a), proj_normalize(&scaled));
    }

    #[test]
    fn proj_point_canonical_scaling() {
        let x = ProjPoint::new(s("2"), s("1")).unwrap();
        assert_eq!((x.p().clone(), x.q().clone()), (s("1"), s("1/2")));
        let y = ProjPoint::new(s("0"), s("-4")).unwrap();
        assert_eq!((y.p().clone(), y.q().clone()), (s("0"), s("1")));
        assert_eq!(
            ProjPoint::new(s("0"), s("0")),
            Err(ExactError::ZeroProjPoint)
        );
    }

    #[test]
    fn sqrt_exact_detects_squares() {
        assert_eq!(s("9/4").sqrt_exact(), Some(s("3/2")));
        assert_eq!(s("0").sqrt_exact(), Some(s("0")));
        assert_eq!(s("5").sqrt_exact(), None);
        assert_eq!(s("-4").sqrt_exact(), None);
        assert_eq!(s("2/3").sqrt_exact(), None);
    }
}
