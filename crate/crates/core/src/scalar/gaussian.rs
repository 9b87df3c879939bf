use std::fmt;


use super::field::{parse_rational, Field, Rational, ScalarError};

/// Gaussian rational `re + im*i`, with `i^2 = -1`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_rational(re: Rational) -> Self {
        GaussianRational {
            re,
            im: <Rational as Field>::zero(),
        }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational {
            re: <Rational as Field>::zero(),
            im: <Rational as Field>::one(),
        }
    }

    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// `re^2 + im^2`.
    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        num_traits::Zero::is_zero(&self.im)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re0 = num_traits::Zero::is_zero(&self.re);
        let im0 = num_traits::Zero::is_zero(&self.im);
        match (re0, im0) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}", imag_term(&self.im)),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{}-{}", self.re, imag_term(&(-self.im.clone())))
                } else {
                    write!(f, "{}+{}", self.re, imag_term(&self.im))
                }
            }
        }
    }
}

use num_traits::Signed;

fn imag_term(im: &Rational) -> String {
    if num_traits::One::is_one(im) {
        "i".to_string()
    } else if num_traits::One::is_one(&(-im)) {
        "-i".to_string()
    } else {
        format!("{im}i")
    }
}

/// Parse forms like `3/2`, `i`, `-i`, `2i`, `1+i`, `1-2/3i`.
pub fn parse_gaussian(s: &str) -> Result<GaussianRational, ScalarError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ScalarError::Parse("empty gaussian".into()));
    }
    // Split at an interior +/- (not at position 0 and not inside a single token).
    let bytes = s.as_bytes();
    for idx in (1..bytes.len()).rev() {
        let ch = bytes[idx] as char;
        if (ch == '+' || ch == '-') && bytes[idx - 1] as char != '/' {
            let (a, b) = (&s[..idx], &s[idx..]);
            let re = parse_rational(a)?;
            let im = parse_imag(b)?;
            return Ok(GaussianRational::new(re, im));
        }
    }
    if s.ends_with('i') {
        Ok(GaussianRational::new(<Rational as Field>::zero(), parse_imag(s)?))
    } else {
        Ok(GaussianRational::from_rational(parse_rational(s)?))
    }
}

fn parse_imag(s: &str) -> Result<Rational, ScalarError> {
    let body = s
        .strip_suffix('i')
        .ok_or_else(|| ScalarError::Parse(format!("expected imaginary part: {s:?}")))?;
    let body = body.trim_end_matches('*');
    match body {
        "" | "+" => Ok(<Rational as Field>::one()),
        "-" => Ok(-<Rational as Field>::one()),
        other => parse_rational(other),
    }
}

impl Field for GaussianRational {
    fn zero() -> Self {
        GaussianRational::from_rational(<Rational as Field>::zero())
    }
    fn one() -> Self {
        GaussianRational::from_rational(<Rational as Field>::one())
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(&self.re) && num_traits::Zero::is_zero(&self.im)
    }
    fn add(&self, other: &Self) -> Self {
        GaussianRational::new(&self.re + &other.re, &self.im + &other.im)
    }
    fn sub(&self, other: &Self) -> Self {
        GaussianRational::new(&self.re - &other.re, &self.im - &other.im)
    }
    fn mul(&self, other: &Self) -> Self {
        GaussianRational::new(
            &self.re * &other.re - &self.im * &other.im,
            &self.re * &other.im + &self.im * &other.re,
        )
    }
    fn neg(&self) -> Self {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
    fn inv(&self) -> Result<Self, ScalarError> {
        if Field::is_zero(self) {
            return Err(ScalarError::DivisionByZero);
        }
        let n = self.norm();
        Ok(GaussianRational::new(&self.re / &n, -(&self.im / &n)))
    }
    fn from_i64(v: i64) -> Self {
        GaussianRational::from_rational(<Rational as Field>::from_i64(v))
    }
    fn parse(s: &str) -> Result<Self, ScalarError> {
        parse_gaussian(s)
    }
    fn is_display_negative(&self) -> bool {
        (num_traits::Zero::is_zero(&self.im) && self.re.is_negative())
            || (num_traits::Zero::is_zero(&self.re) && self.im.is_negative())
    }
}
