use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational number, always reduced, denominator positive.
pub type Rational = num_rational::BigRational;

/// Errors raised by exact scalar arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalarError {
    DivisionByZero,
    /// Evaluation point hits a zero denominator.
    Pole,
    /// Malformed text form.
    Parse(String),
}

impl Display for ScalarError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScalarError::DivisionByZero => write!(f, "division by zero"),
            ScalarError::Pole => write!(f, "pole: denominator vanishes at the sample point"),
            ScalarError::Parse(s) => write!(f, "parse error: {s}"),
        }
    }
}

impl std::error::Error for ScalarError {}

/// An exact field of scalars.
///
/// Implemented by [`Rational`], [`GaussianRational`](super::GaussianRational)
/// and the rational-function fields built on them. All operations are exact;
/// `inv`/`div` are the only fallible ones.
pub trait Field: Clone + PartialEq + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self, ScalarError>;
    fn from_i64(v: i64) -> Self;

    /// Parse the canonical text form produced by `Display`.
    fn parse(s: &str) -> Result<Self, ScalarError>;

    /// Whether `Display` would render this value with a leading minus;
    /// used to pretty-print sums of terms.
    fn is_display_negative(&self) -> bool;

    /// Optional fast polynomial gcd over this coefficient field
    /// (index = degree, no trailing zeros, result monic). `None` selects the
    /// generic Euclidean fallback.
    fn poly_gcd_hook(_a: &[Self], _b: &[Self]) -> Option<Vec<Self>> {
        None
    }

    /// `sum_i a_i b_i`, overridable to defer normalisation until the whole
    /// accumulation is done (the hot path of matrix composition).
    fn sum_of_products(terms: &[(&Self, &Self)]) -> Self {
        let mut acc = Self::zero();
        for (a, b) in terms {
            acc = acc.add(&a.mul(b));
        }
        acc
    }

    /// Factor a common scalar out of a coefficient slice, scaling it to a
    /// normal form (integer-primitive over the rationals). Identity by
    /// default.
    fn split_content(_values: &mut [Self]) -> Self {
        Self::one()
    }

    fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self.mul(&other.inv()?))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow(&self, k: i64) -> Self {
        if k == 0 {
            return Self::one();
        }
        let base = if k < 0 {
            self.inv().expect("pow: zero base with negative exponent")
        } else {
            self.clone()
        };
        let mut acc = Self::one();
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }
}

impl Field for Rational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self, ScalarError> {
        if num_traits::Zero::is_zero(self) {
            Err(ScalarError::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn parse(s: &str) -> Result<Self, ScalarError> {
        parse_rational(s)
    }
    fn is_display_negative(&self) -> bool {
        self.is_negative()
    }
    fn poly_gcd_hook(a: &[Self], b: &[Self]) -> Option<Vec<Self>> {
        Some(rational_poly_gcd(a, b))
    }
    fn split_content(values: &mut [Self]) -> Self {
        use num_integer::Integer;
        if values.iter().all(|v| Field::is_zero(v)) {
            return <Rational as Field>::one();
        }
        let mut lcm = BigInt::one();
        for v in values.iter() {
            lcm = lcm.lcm(v.denom());
        }
        let mut gcd = BigInt::from(0u32);
        for v in values.iter() {
            gcd = gcd.gcd(&(v.numer() * (&lcm / v.denom())));
        }
        let content = Rational::new(gcd, lcm);
        let inv = Field::inv(&content).expect("nonzero content");
        for v in values.iter_mut() {
            *v *= &inv;
        }
        content
    }
}

/// Primitive-PRS polynomial gcd over the rationals: clears denominators,
/// runs integer pseudo-remainders with content division each step, and
/// returns the monic rational gcd. Avoids the coefficient blow-up of naive
/// Euclid.
fn rational_poly_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let a = to_primitive_int_poly(a);
    let b = to_primitive_int_poly(b);
    int_poly_gcd(a, b)
}

fn to_primitive_int_poly(a: &[Rational]) -> Vec<BigInt> {
    use num_integer::Integer;
    if a.is_empty() {
        return Vec::new();
    }
    let mut lcm = BigInt::one();
    for c in a {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = a.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    make_primitive(ints)
}

fn make_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    use num_integer::Integer;
    while v.last().is_some_and(num_traits::Zero::is_zero) {
        v.pop();
    }
    if v.is_empty() {
        return v;
    }
    let mut g = BigInt::from(0u32);
    for c in &v {
        g = g.gcd(c);
    }
    if v.last().unwrap().is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for c in &mut v {
            *c /= &g;
        }
    }
    v
}

/// Monic rational gcd of primitive integer polynomials: a mod-p degree probe
/// settles the (common) coprime case, the subresultant PRS the rest.
fn int_poly_gcd(mut a: Vec<BigInt>, mut b: Vec<BigInt>) -> Vec<Rational> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    if b.is_empty() {
        return monicize_int(&a);
    }
    if b.len() == 1 {
        return vec![<Rational as Field>::one()];
    }
    if let Some(gp) = modp_gcd(&a, &b) {
        if gp.len() == 1 {
            return vec![<Rational as Field>::one()];
        }
        // Candidate reconstruction from the single-prime image; verified by
        // exact trial division, so an unlucky prime only costs the fallback.
        if let Some(cand) = reconstruct_monic(&gp) {
            if divides_exactly(&cand, &a) && divides_exactly(&cand, &b) {
                return cand;
            }
        }
    }
    // Collins' subresultant PRS.
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = (a.len() - b.len()) as u32;
        let r = int_prem(&a, &b);
        if r.is_empty() {
            return monicize_int(&make_primitive(b));
        }
        if r.len() == 1 {
            return vec![<Rational as Field>::one()];
        }
        let divisor = &g * h.pow(delta);
        a = b;
        b = r.into_iter().map(|c| c / &divisor).collect();
        g = a.last().unwrap().clone();
        // h = h^{1-delta} g^{delta}
        h = if delta == 0 {
            h
        } else {
            let num = g.pow(delta);
            let den = h.pow(delta - 1);
            num / den
        };
    }
}

/// Exact pseudo-remainder `lc(b)^{deg a - deg b + 1} a mod b`.
fn int_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = b.last().unwrap();
    let mut r = a.to_vec();
    let mut scale_left = a.len() - db; // delta + 1
    while r.len() > db {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        scale_left -= 1;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &lr * bc;
        }
        while r.last().is_some_and(num_traits::Zero::is_zero) {
            r.pop();
        }
        if r.is_empty() {
            break;
        }
    }
    // top up the remaining lc powers so the result is the exact prem
    for _ in 0..scale_left {
        for c in r.iter_mut() {
            *c *= lb;
        }
    }
    r
}

const GCD_PROBE_PRIME: u64 = (1 << 61) - 1;

/// Monic gcd of the images of `a`, `b` mod a fixed 61-bit prime; `None`
/// when a leading coefficient vanishes mod p (probe inconclusive).
fn modp_gcd(a: &[BigInt], b: &[BigInt]) -> Option<Vec<u64>> {
    use num_integer::Integer;
    let p = GCD_PROBE_PRIME;
    let pbig = BigInt::from(p);
    let to_modp = |v: &[BigInt]| -> Vec<u64> {
        v.iter()
            .map(|c| {
                let m = c.mod_floor(&pbig);
                let (_, digits) = m.to_u64_digits();
                digits.first().copied().unwrap_or(0)
            })
            .collect()
    };
    let mut am = to_modp(a);
    let mut bm = to_modp(b);
    if am.last() == Some(&0) || bm.last() == Some(&0) {
        return None;
    }
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    trim(&mut am);
    trim(&mut bm);
    while !bm.is_empty() {
        let db = bm.len() - 1;
        let lb_inv = modp_pow(*bm.last().unwrap(), p - 2);
        while am.len() > db {
            let lead = modp_mul(*am.last().unwrap(), lb_inv);
            let shift = am.len() - 1 - db;
            for (i, bc) in bm.iter().enumerate() {
                let t = modp_mul(lead, *bc);
                let cur = am[shift + i];
                am[shift + i] = if cur >= t { cur - t } else { cur + p - t };
            }
            trim(&mut am);
            if am.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut am, &mut bm);
    }
    // normalise monic
    let lc_inv = modp_pow(*am.last().unwrap(), p - 2);
    for c in am.iter_mut() {
        *c = modp_mul(*c, lc_inv);
    }
    Some(am)
}

fn modp_mul(x: u64, y: u64) -> u64 {
    ((x as u128 * y as u128) % GCD_PROBE_PRIME as u128) as u64
}

fn modp_pow(mut x: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = modp_mul(acc, x);
        }
        x = modp_mul(x, x);
        e >>= 1;
    }
    acc
}

/// Rational reconstruction of every coefficient of a monic mod-p image.
fn reconstruct_monic(gp: &[u64]) -> Option<Vec<Rational>> {
    let mut out = Vec::with_capacity(gp.len());
    for &c in gp {
        let (num, den) = rational_reconstruct(c)?;
        out.push(Rational::new(BigInt::from(num), BigInt::from(den)));
    }
    Some(out)
}

/// Wang reconstruction: the unique n/d with `|n|, d <= sqrt(p/2)` congruent
/// to `c` mod p, when it exists.
fn rational_reconstruct(c: u64) -> Option<(i128, i128)> {
    let p = GCD_PROBE_PRIME as i128;
    let bound: i128 = 1 << 30; // ~ sqrt(p/2)
    let (mut r0, mut r1) = (p, c as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound {
        return None;
    }
    let (num, den) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
    Some((num, den))
}

/// Whether the monic rational `g` divides the integer polynomial `a`.
fn divides_exactly(g: &[Rational], a: &[BigInt]) -> bool {
    let mut r: Vec<Rational> = a.iter().map(|c| Rational::from_integer(c.clone())).collect();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = r.last().unwrap().clone();
        let shift = r.len() - 1 - dg;
        for (i, gc) in g.iter().enumerate() {
            let t = &lead * gc;
            r[shift + i] -= t;
        }
        while r.last().is_some_and(|c| Field::is_zero(c)) {
            r.pop();
        }
        if r.is_empty() {
            return true;
        }
    }
    r.is_empty()
}

fn monicize_int(a: &[BigInt]) -> Vec<Rational> {
    if a.is_empty() {
        return Vec::new();
    }
    let lc = a.last().unwrap().clone();
    a.iter().map(|c| Rational::new(c.clone(), lc.clone())).collect()
}

/// Parse a rational from its text form, e.g. `"-3/2"` or `"7"`.
pub fn parse_rational(s: &str) -> Result<Rational, ScalarError> {
    Rational::from_str(s.trim()).map_err(|e| ScalarError::Parse(format!("{s:?}: {e}")))
}

/// Split `x = sigma^2 * core` with a canonical squarefree `core`.
///
/// Two inputs that differ by a perfect square are guaranteed to produce the
/// same `core`; this is what lets formal square roots of matrix-unit
/// coefficients cancel in pairs.
pub trait SqrtSplit: Field {
    /// Returns `(sigma, core)` with `self == sigma^2 * core`.
    fn sqrt_split(&self) -> (Self, Self);

    /// Returns `(is_negative, positive_part)` under the field's canonical
    /// sign normalisation.
    fn sign_split(&self) -> (bool, Self);
}

impl SqrtSplit for Rational {
    fn sqrt_split(&self) -> (Self, Self) {
        if Field::is_zero(self) {
            return (<Rational as Field>::one(), <Rational as Field>::zero());
        }
        let (sn, cn) = int_sqrt_split(self.numer());
        let (sd, cd) = int_sqrt_split(self.denom());
        // self = (sn^2 cn)/(sd^2 cd); keep the core an integer-over-integer
        // rational with the sign on the numerator.
        let sigma = Rational::new(sn, sd);
        let core = Rational::new(cn, cd);
        (sigma, core)
    }

    fn sign_split(&self) -> (bool, Self) {
        if self.is_negative() {
            (true, -self)
        } else {
            (false, self.clone())
        }
    }
}

/// Integer split `x = s^2 * c` with `c` squarefree up to any prime factors
/// above the trial-division bound (those are left in `c` after a final
/// perfect-square check).
fn int_sqrt_split(x: &BigInt) -> (BigInt, BigInt) {
    let mut s = BigInt::one();
    let mut c = BigInt::one();
    let mut rest = x.abs();
    if x.is_negative() {
        c = -c;
    }
    let mut p = BigInt::from(2u32);
    let bound = BigInt::from(100_000u32);
    while &p * &p <= rest && p <= bound {
        let mut k = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            k += 1;
        }
        if k > 0 {
            s *= p.pow(k / 2);
            if k % 2 == 1 {
                c *= &p;
            }
        }
        p += 1u32;
    }
    if !rest.is_one() {
        let r = rest.sqrt();
        if &r * &r == rest {
            s *= r;
        } else {
            c *= rest;
        }
    }
    (s, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_roundtrip() {
        let x = parse_rational("-3/2").unwrap();
        assert_eq!(x.to_string(), "-3/2");
        assert_eq!(parse_rational("10/4").unwrap().to_string(), "5/2");
    }

    #[test]
    fn sqrt_split_rational() {
        let x = parse_rational("18/25").unwrap();
        let (s, c) = x.sqrt_split();
        assert_eq!(&s * &s * &c, x);
        assert_eq!(c, parse_rational("2").unwrap());
        let y = parse_rational("-8").unwrap();
        let (s, c) = y.sqrt_split();
        assert_eq!(&s * &s * &c, y);
        assert_eq!(c, parse_rational("-2").unwrap());
    }
}
