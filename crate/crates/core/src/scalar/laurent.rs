use std::collections::BTreeMap;
use std::fmt;

use super::field::{Field, ScalarError};

/// Laurent polynomial in the indeterminate `X` with coefficients in `C`.
///
/// Stored zero-free: the map never contains zero coefficients, so structural
/// equality is exact equality. Exponents are machine integers with overflow
/// checks; anything approaching overflow indicates a bug, not a workload.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPoly<C: Field, const X: char> {
    coeffs: BTreeMap<i64, C>,
}

impl<C: Field, const X: char> LaurentPoly<C, X> {
    pub fn zero() -> Self {
        LaurentPoly {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(C::one(), 0)
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * X^k`
    pub fn monomial(c: C, k: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        LaurentPoly { coeffs }
    }

    /// The indeterminate itself.
    pub fn gen() -> Self {
        Self::monomial(C::one(), 1)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &C)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: i64) -> C {
        self.coeffs.get(&k).cloned().unwrap_or_else(C::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Coefficient of the highest power.
    pub fn leading_coeff(&self) -> Option<&C> {
        self.coeffs.values().next_back()
    }

    fn add_term(&mut self, k: i64, c: C) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&k) {
            Some(existing) => {
                let sum = existing.add(&c);
                if sum.is_zero() {
                    self.coeffs.remove(&k);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.coeffs.insert(k, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_term(*k, c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, c.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ka, ca) in &self.coeffs {
            for (kb, cb) in &other.coeffs {
                let k = ka.checked_add(*kb).expect("exponent overflow");
                out.add_term(k, ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v.mul(c))).collect(),
        }
    }

    /// Multiply by `X^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e.checked_add(k).expect("exponent overflow"), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// `X -> -X`: flips the sign of odd-exponent coefficients.
    pub fn subst_negate(&self) -> Self {
        LaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, c)| (*k, if k.rem_euclid(2) == 1 { c.neg() } else { c.clone() }))
                .collect(),
        }
    }

    /// `X -> X^{-1}`: negates all exponents.
    pub fn subst_invert(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(k, c)| (-k, c.clone())).collect(),
        }
    }

    /// Exact evaluation at a point of the coefficient field.
    pub fn evaluate(&self, x: &C) -> Result<C, ScalarError> {
        let mut acc = C::zero();
        for (k, c) in &self.coeffs {
            acc = acc.add(&c.mul(&x.pow(*k)));
        }
        Ok(acc)
    }

    /// Factor out the coefficient content (integer-primitive form over the
    /// rationals); returns `(content, primitive)` with
    /// `self = content * primitive`.
    pub fn split_content(&self) -> (C, LaurentPoly<C, X>) {
        if self.is_zero() {
            return (C::one(), self.clone());
        }
        let mut coeffs: Vec<C> = self.coeffs.values().cloned().collect();
        let content = C::split_content(&mut coeffs);
        let prim = LaurentPoly {
            coeffs: self.coeffs.keys().copied().zip(coeffs).collect(),
        };
        (content, prim)
    }

    /// Map coefficients into another field.
    pub fn map_coeffs<D: Field>(&self, f: &impl Fn(&C) -> D) -> LaurentPoly<D, X> {
        LaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .filter_map(|(k, c)| {
                    let d = f(c);
                    (!d.is_zero()).then_some((*k, d))
                })
                .collect(),
        }
    }

    /// Ordinary-polynomial view: `(k, coeffs)` with `self = X^k * poly(coeffs)`
    /// where `coeffs[0] != 0` (unless self is zero) and `coeffs.last() != 0`.
    pub(crate) fn to_poly(&self) -> (i64, Vec<C>) {
        if self.is_zero() {
            return (0, Vec::new());
        }
        let lo = self.min_exp().unwrap();
        let hi = self.max_exp().unwrap();
        let mut v = vec![C::zero(); (hi - lo + 1) as usize];
        for (k, c) in &self.coeffs {
            v[(k - lo) as usize] = c.clone();
        }
        (lo, v)
    }

    pub(crate) fn from_poly(shift: i64, poly: &[C]) -> Self {
        Self::from_terms(
            poly.iter()
                .enumerate()
                .map(|(i, c)| (shift + i as i64, c.clone())),
        )
    }
}

impl<C: Field, const X: char> fmt::Display for LaurentPoly<C, X> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Descending exponents.
        for (idx, (k, c)) in self.coeffs.iter().rev().enumerate() {
            let (c, neg) = if c.is_display_negative() {
                (c.neg(), true)
            } else {
                (c.clone(), false)
            };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{}", term_string::<C>(&c, *k, X))?;
        }
        Ok(())
    }
}

fn term_string<C: Field>(c: &C, k: i64, var: char) -> String {
    let cs = c.to_string();
    let needs_parens = cs.len() > 1
        && cs[1..].contains(['+', '-'])
        // a bare rational like 3/2 needs no parens
        && !cs[1..].chars().all(|ch| ch.is_ascii_digit() || ch == '/');
    let cs = if needs_parens { format!("({cs})") } else { cs };
    match k {
        0 => cs,
        1 if c.is_one() => var.to_string(),
        1 => format!("{cs}*{var}"),
        _ if c.is_one() => format!("{var}^{k}"),
        _ => format!("{cs}*{var}^{k}"),
    }
}

/// Parse the canonical rendering (sums of `c*X^k` terms).
pub(crate) fn parse_laurent<C: Field, const X: char>(
    s: &str,
) -> Result<LaurentPoly<C, X>, ScalarError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ScalarError::Parse("empty polynomial".into()));
    }
    let mut out = LaurentPoly::<C, X>::zero();
    for (sign, term) in split_terms(s)? {
        let (k, c) = parse_term::<C>(term, X)?;
        out.add_term(k, if sign { c.neg() } else { c });
    }
    Ok(out)
}

/// Split on top-level +/- (outside parentheses); returns (is_negative, term).
fn split_terms(s: &str) -> Result<Vec<(bool, &str)>, ScalarError> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    let mut sign = false;
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i] as char;
        match ch {
            '(' => depth += 1,
            ')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| ScalarError::Parse(format!("unbalanced parens in {s:?}")))?
            }
            '+' | '-' if depth == 0 => {
                // Not a sign char if it is the exponent sign in `^-3` or the
                // very first char of a term.
                let prev = s[..i].trim_end().chars().next_back();
                let is_exp_sign = prev == Some('^');
                let is_leading = s[start..i].trim().is_empty();
                if !is_exp_sign && !is_leading {
                    out.push((sign, s[start..i].trim()));
                    sign = ch == '-';
                    start = i + 1;
                } else if is_leading && !is_exp_sign {
                    if ch == '-' {
                        sign = !sign;
                    }
                    start = i + 1;
                }
            }
            _ => {}
        }
        i += 1;
    }
    let last = s[start..].trim();
    if last.is_empty() {
        return Err(ScalarError::Parse(format!("dangling sign in {s:?}")));
    }
    out.push((sign, last));
    Ok(out)
}

fn parse_term<C: Field>(term: &str, var: char) -> Result<(i64, C), ScalarError> {
    let term = term.trim();
    if let Some(pos) = term.find(var) {
        let (coeff_part, var_part) = term.split_at(pos);
        let coeff_part = coeff_part.trim().trim_end_matches('*').trim();
        let c = if coeff_part.is_empty() {
            C::one()
        } else {
            let inner = coeff_part
                .strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .unwrap_or(coeff_part);
            C::parse(inner)?
        };
        let exp_part = var_part[var.len_utf8()..].trim();
        let k = if exp_part.is_empty() {
            1
        } else {
            let digits = exp_part
                .strip_prefix('^')
                .ok_or_else(|| ScalarError::Parse(format!("bad exponent in {term:?}")))?;
            digits
                .parse::<i64>()
                .map_err(|e| ScalarError::Parse(format!("bad exponent in {term:?}: {e}")))?
        };
        Ok((k, c))
    } else {
        let inner = term
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(term);
        Ok((0, C::parse(inner)?))
    }
}
