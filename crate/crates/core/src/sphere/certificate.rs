use std::fmt;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational::{format, serde_str, serde_str_vec};
use crate::exact::sturm::find_positive_point;
use crate::orthopoly::JacobiFamily;
use crate::{Rational, UniPoly};

/// A polynomial `F = Σ f_k P_k` proving that every spherical code in
/// `S^{n-1}` with inner products at most `cos_theta` has at most `bound`
/// points: `f_k >= 0`, `F + 1 <= 0` on `[-1, cos_theta]`, `bound = 1 + F(1)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub space: String,
    pub n: usize,
    #[serde(with = "serde_str")]
    pub cos_theta: Rational,
    pub degree: usize,
    #[serde(with = "serde_str_vec")]
    pub coeffs: Vec<Rational>,
    #[serde(with = "serde_str")]
    pub bound: Rational,
}

/// Why a certificate was rejected.
#[derive(Clone, Debug, PartialEq)]
pub enum Rejection {
    Malformed(String),
    NegativeCoefficient { k: usize },
    BoundMismatch { expected: Rational },
    /// `F + 1 > 0` at this point of `[-1, cos_theta]`.
    IntervalViolation { witness: Rational },
}

impl Rejection {
    pub fn code(&self) -> &'static str {
        match self {
            Rejection::Malformed(_) => "Malformed",
            Rejection::NegativeCoefficient { .. } => "NegativeCoefficient",
            Rejection::BoundMismatch { .. } => "BoundMismatch",
            Rejection::IntervalViolation { .. } => "IntervalViolation",
        }
    }
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::Malformed(msg) => write!(f, "Malformed ({msg})"),
            Rejection::NegativeCoefficient { k } => write!(f, "NegativeCoefficient (f_{k} < 0)"),
            Rejection::BoundMismatch { expected } => {
                write!(f, "BoundMismatch (1 + sum of coefficients is {})", format(expected))
            }
            Rejection::IntervalViolation { witness } => write!(f, "IntervalViolation (F(t) + 1 > 0 at t = {})", format(witness)),
        }
    }
}

impl Certificate {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    /// `F = Σ f_k P_k` as a polynomial in `t`.
    pub fn polynomial(&self) -> Result<UniPoly> {
        JacobiFamily::new(self.n, self.coeffs.len().saturating_sub(1))?.combination(&self.coeffs)
    }
}

/// Exact validity check with the first failing reason.
pub fn check_certificate(cert: &Certificate) -> std::result::Result<(), Rejection> {
    if cert.space != "sphere" {
        return Err(Rejection::Malformed(format!("unknown space {:?}", cert.space)));
    }
    if cert.n < 2 {
        return Err(Rejection::Malformed(format!("dimension n = {} < 2", cert.n)));
    }
    let one = Rational::one();
    if cert.cos_theta <= -one.clone() || cert.cos_theta >= one {
        return Err(Rejection::Malformed(format!("cos_theta = {} outside (-1, 1)", format(&cert.cos_theta))));
    }
    if cert.coeffs.is_empty() || cert.coeffs.len() != cert.degree + 1 {
        return Err(Rejection::Malformed(format!(
            "{} coefficients for degree {}",
            cert.coeffs.len(),
            cert.degree
        )));
    }
    if let Some(k) = cert.coeffs.iter().position(|c| c.is_negative()) {
        return Err(Rejection::NegativeCoefficient { k });
    }
    let expected = cert.coeffs.iter().fold(Rational::one(), |acc, c| acc + c);
    if expected != cert.bound {
        return Err(Rejection::BoundMismatch { expected });
    }
    let f = cert.polynomial().map_err(|e| Rejection::Malformed(e.to_string()))?;
    let f_plus_one = &f + &UniPoly::constant(Rational::one());
    if let Some(witness) = find_positive_point(&f_plus_one, &-Rational::one(), &cert.cos_theta) {
        return Err(Rejection::IntervalViolation { witness });
    }
    Ok(())
}

/// `true` iff the certificate is valid (see [`check_certificate`]).
pub fn verify_certificate(cert: &Certificate) -> bool {
    check_certificate(cert).is_ok()
}
