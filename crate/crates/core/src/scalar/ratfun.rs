use std::fmt;


use num_traits::Signed;

use super::field::{Field, Rational, ScalarError, SqrtSplit};
use super::laurent::{parse_laurent, LaurentPoly};

/// Substitution rules available on rational functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Substitution {
    /// `X -> -X`
    Negate,
    /// `X -> X^{-1}`
    Invert,
}

/// Rational function `num/den` in the indeterminate `X` over `C`.
///
/// Canonical form: `gcd(num, den) = 1`, `den` an ordinary polynomial with
/// nonzero constant term, monic. Equality is therefore structural.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalFunction<C: Field, const X: char> {
    num: LaurentPoly<C, X>,
    den: LaurentPoly<C, X>,
}

impl<C: Field, const X: char> RationalFunction<C, X> {
    pub fn new(num: LaurentPoly<C, X>, den: LaurentPoly<C, X>) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: LaurentPoly<C, X>, den: LaurentPoly<C, X>) -> Self {
        if num.is_zero() {
            return RationalFunction {
                num,
                den: LaurentPoly::one(),
            };
        }
        let (en, mut n) = num.to_poly();
        let (ed, mut d) = den.to_poly();
        if d.len() > 1 {
            let g = poly_gcd(&n, &d);
            if g.len() > 1 {
                n = poly_div_exact(&n, &g);
                d = poly_div_exact(&d, &g);
            }
        }
        // Make the denominator monic.
        let lc = d.last().expect("nonzero den").clone();
        if !lc.is_one() {
            let inv = lc.inv().expect("leading coefficient nonzero");
            for c in &mut n {
                *c = c.mul(&inv);
            }
            for c in &mut d {
                *c = c.mul(&inv);
            }
        }
        RationalFunction {
            num: LaurentPoly::from_poly(en - ed, &n),
            den: LaurentPoly::from_poly(0, &d),
        }
    }

    pub fn from_laurent(p: LaurentPoly<C, X>) -> Self {
        RationalFunction {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn constant(c: C) -> Self {
        Self::from_laurent(LaurentPoly::constant(c))
    }

    /// The indeterminate.
    pub fn gen() -> Self {
        Self::from_laurent(LaurentPoly::gen())
    }

    /// `X^k` for any integer `k`.
    pub fn gen_pow(k: i64) -> Self {
        Self::from_laurent(LaurentPoly::monomial(C::one(), k))
    }

    pub fn numerator(&self) -> &LaurentPoly<C, X> {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly<C, X> {
        &self.den
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// Exact evaluation at a coefficient-field point.
    pub fn evaluate(&self, x: &C) -> Result<C, ScalarError> {
        if x.is_zero() && self.num.min_exp().is_some_and(|e| e < 0) {
            return Err(ScalarError::Pole);
        }
        let d = self.den.evaluate(x)?;
        if d.is_zero() {
            return Err(ScalarError::Pole);
        }
        let n = self.num.evaluate(x)?;
        n.div(&d)
    }

    pub fn substitute(&self, rule: Substitution) -> Self {
        match rule {
            Substitution::Negate => {
                Self::reduce(self.num.subst_negate(), self.den.subst_negate())
            }
            Substitution::Invert => {
                Self::reduce(self.num.subst_invert(), self.den.subst_invert())
            }
        }
    }

    pub fn map_coeffs<D: Field>(&self, f: &impl Fn(&C) -> D) -> RationalFunction<D, X> {
        RationalFunction::new(self.num.map_coeffs(f), self.den.map_coeffs(f))
            .expect("denominator must stay nonzero under coefficient maps")
    }

    /// Fraction combination `self ± other` with the denominator-gcd
    /// optimisation; inputs reduced implies output reduced.
    fn combine(&self, other: &Self, subtract: bool) -> Self {
        let rhs_num = if subtract {
            other.num.neg()
        } else {
            other.num.clone()
        };
        if self.den.is_one() && other.den.is_one() {
            return RationalFunction {
                num: self.num.add(&rhs_num),
                den: LaurentPoly::one(),
            };
        }
        if self.den == other.den {
            return Self::reduce(self.num.add(&rhs_num), self.den.clone());
        }
        let (_, d1) = self.den.to_poly();
        let (_, d2) = other.den.to_poly();
        let g = poly_gcd(&d1, &d2);
        let (d1g, d2g) = if g.len() <= 1 {
            (d1.clone(), d2.clone())
        } else {
            (poly_div_exact(&d1, &g), poly_div_exact(&d2, &g))
        };
        let num = self
            .num
            .mul(&LaurentPoly::from_poly(0, &d2g))
            .add(&rhs_num.mul(&LaurentPoly::from_poly(0, &d1g)));
        if num.is_zero() {
            return Self::zero();
        }
        // common factors of num with the combined denominator divide g
        let den_full = poly_mul(&d1, &d2g); // = d1 d2 / g
        if g.len() <= 1 {
            return Self::monic_normalise(num, LaurentPoly::from_poly(0, &den_full));
        }
        let (en, npoly) = num.to_poly();
        let h = poly_gcd(&npoly, &g);
        if h.len() <= 1 {
            return Self::monic_normalise(num, LaurentPoly::from_poly(0, &den_full));
        }
        let num = LaurentPoly::from_poly(en, &poly_div_exact(&npoly, &h));
        let den = poly_div_exact(&den_full, &h);
        Self::monic_normalise(num, LaurentPoly::from_poly(0, &den))
    }

    fn monic_normalise(num: LaurentPoly<C, X>, den: LaurentPoly<C, X>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (ed, d) = den.to_poly();
        let lc = d.last().expect("nonzero den").clone();
        if ed == 0 && lc.is_one() {
            return RationalFunction { num, den };
        }
        let inv = lc.inv().expect("nonzero leading coefficient");
        let num = num.shift(-ed).scale(&inv);
        let den = LaurentPoly::from_poly(0, &d).scale(&inv);
        RationalFunction { num, den }
    }
}

fn poly_mul<C: Field>(a: &[C], b: &[C]) -> Vec<C> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![C::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

/// Cancel `gcd(num, den)` between a Laurent numerator and an ordinary-poly
/// denominator; returns the reduced pair.
fn cross_cancel<C: Field, const X: char>(
    num: &LaurentPoly<C, X>,
    den: &LaurentPoly<C, X>,
) -> (LaurentPoly<C, X>, LaurentPoly<C, X>) {
    if den.is_one() {
        return (num.clone(), den.clone());
    }
    let (en, n) = num.to_poly();
    let (_, d) = den.to_poly();
    let g = poly_gcd(&n, &d);
    if g.len() <= 1 {
        return (num.clone(), den.clone());
    }
    (
        LaurentPoly::from_poly(en, &poly_div_exact(&n, &g)),
        LaurentPoly::from_poly(0, &poly_div_exact(&d, &g)),
    )
}

impl<C: Field, const X: char> fmt::Display for RationalFunction<C, X> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<C: Field, const X: char> Field for RationalFunction<C, X> {
    fn zero() -> Self {
        Self::from_laurent(LaurentPoly::zero())
    }
    fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
    fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }
    fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return RationalFunction {
                num: self.num.mul(&other.num),
                den: LaurentPoly::one(),
            };
        }
        // Cross-cancel: gcd(num1, den2) and gcd(num2, den1); with reduced
        // inputs the result is already in lowest terms.
        let (n1, d2) = cross_cancel(&self.num, &other.den);
        let (n2, d1) = cross_cancel(&other.num, &self.den);
        Self::monic_normalise(n1.mul(&n2), d1.mul(&d2))
    }
    fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }
    fn from_i64(v: i64) -> Self {
        Self::constant(C::from_i64(v))
    }
    fn parse(s: &str) -> Result<Self, ScalarError> {
        parse_ratfun(s)
    }
    fn is_display_negative(&self) -> bool {
        self.den.is_one()
            && self.num.num_terms() == 1
            && self
                .num
                .leading_coeff()
                .is_some_and(|c| c.is_display_negative())
    }

    /// Group the summands by denominator, fold the groups over a common
    /// denominator in content-free (integer-primitive) form, and reduce once
    /// at the end; the accumulation itself is pure Laurent arithmetic on
    /// small coefficients.
    fn sum_of_products(terms: &[(&Self, &Self)]) -> Self {
        use std::collections::BTreeMap;
        // den rendering -> (numerator sum, den)
        let mut groups: BTreeMap<String, (LaurentPoly<C, X>, LaurentPoly<C, X>)> =
            BTreeMap::new();
        for (a, b) in terms {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let pn = a.num.mul(&b.num);
            let pd = a.den.mul(&b.den);
            let key = if pd.is_one() {
                String::from("1")
            } else {
                pd.to_string()
            };
            match groups.get_mut(&key) {
                Some((num, _)) => *num = num.add(&pn),
                None => {
                    groups.insert(key, (pn, pd));
                }
            }
        }
        // reduce each group once, then fold by fraction addition (the
        // denominator-gcd inside `add` keeps true least common denominators)
        let mut acc = Self::zero();
        for (_, (gnum, gden)) in groups {
            if gnum.is_zero() {
                continue;
            }
            acc = acc.add(&Self::reduce(gnum, gden));
        }
        acc
    }
}

fn parse_ratfun<C: Field, const X: char>(
    s: &str,
) -> Result<RationalFunction<C, X>, ScalarError> {
    let s = s.trim();
    // Try the fraction form "(num)/(den)".
    if let Some(stripped) = s.strip_prefix('(') {
        if let Some(close) = matching_paren(stripped) {
            let num_part = &stripped[..close];
            let rest = stripped[close + 1..].trim();
            if let Some(den_part) = rest
                .strip_prefix('/')
                .map(str::trim)
                .and_then(|r| r.strip_prefix('('))
                .and_then(|r| r.strip_suffix(')'))
            {
                let num = parse_laurent::<C, X>(num_part)?;
                let den = parse_laurent::<C, X>(den_part)?;
                return RationalFunction::new(num, den);
            }
        }
    }
    Ok(RationalFunction::from_laurent(parse_laurent::<C, X>(s)?))
}

/// Index of the parenthesis closing an implicit opening one before `s[0]`.
fn matching_paren(s: &str) -> Option<usize> {
    let mut depth = 1usize;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

// ---- ordinary-polynomial helpers (index = degree, no trailing zeros) ----

fn poly_trim<C: Field>(v: &mut Vec<C>) {
    while v.last().is_some_and(Field::is_zero) {
        v.pop();
    }
}

fn poly_rem<C: Field>(a: &[C], b: &[C]) -> Vec<C> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lb = b.last().expect("nonzero divisor");
    let lb_inv = lb.inv().expect("field");
    while r.len() > db {
        let lead = r.last().unwrap().mul(&lb_inv);
        let shift = r.len() - 1 - db;
        for (i, bc) in b.iter().enumerate() {
            let t = lead.mul(bc);
            r[shift + i] = r[shift + i].sub(&t);
        }
        poly_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

pub(crate) fn poly_div_exact<C: Field>(a: &[C], b: &[C]) -> Vec<C> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lb_inv = b.last().expect("nonzero divisor").inv().expect("field");
    let mut q = vec![C::zero(); r.len().saturating_sub(db)];
    while r.len() > db {
        let lead = r.last().unwrap().mul(&lb_inv);
        let shift = r.len() - 1 - db;
        q[shift] = lead.clone();
        for (i, bc) in b.iter().enumerate() {
            let t = lead.mul(bc);
            r[shift + i] = r[shift + i].sub(&t);
        }
        poly_trim(&mut r);
    }
    assert!(r.is_empty(), "poly_div_exact: nonzero remainder");
    poly_trim(&mut q);
    q
}

/// Monic polynomial gcd: coefficient-specific fast path when the field
/// provides one, otherwise Euclid with monic renormalisation per step.
pub(crate) fn poly_gcd<C: Field>(a: &[C], b: &[C]) -> Vec<C> {
    if let Some(g) = C::poly_gcd_hook(a, b) {
        return g;
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
        if !b.is_empty() {
            let inv = b.last().unwrap().inv().expect("field");
            for c in &mut b {
                *c = c.mul(&inv);
            }
        }
    }
    if a.is_empty() {
        return a;
    }
    let inv = a.last().unwrap().inv().expect("field");
    for c in &mut a {
        *c = c.mul(&inv);
    }
    a
}

fn poly_derivative<C: Field>(a: &[C]) -> Vec<C> {
    let mut out: Vec<C> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.mul(&C::from_i64(i as i64)))
        .collect();
    poly_trim(&mut out);
    out
}

/// Yun squarefree decomposition of a monic polynomial: returns `[(a_i, i)]`
/// with `f = prod a_i^i`, each `a_i` monic squarefree.
fn squarefree_decomposition<C: Field>(f: &[C]) -> Vec<(Vec<C>, u32)> {
    if f.len() <= 1 {
        return Vec::new();
    }
    let df = poly_derivative(f);
    let a0 = poly_gcd(f, &df);
    if a0.len() <= 1 {
        return vec![(f.to_vec(), 1)];
    }
    let mut out = Vec::new();
    let mut b = poly_div_exact(f, &a0);
    let mut c = poly_div_exact(&df, &a0);
    let mut i = 1u32;
    loop {
        let db = poly_derivative(&b);
        let mut d: Vec<C> = c.clone();
        // d = c - b'
        for (k, t) in db.iter().enumerate() {
            if k < d.len() {
                d[k] = d[k].sub(t);
            } else {
                d.push(t.neg());
            }
        }
        poly_trim(&mut d);
        let a = poly_gcd(&b, &d);
        if a.len() > 1 {
            out.push((a.clone(), i));
        }
        b = poly_div_exact(&b, &a);
        if b.len() <= 1 {
            break;
        }
        c = poly_div_exact(&d, &a);
        i += 1;
    }
    out
}

impl<const X: char> SqrtSplit for RationalFunction<Rational, X> {
    fn sqrt_split(&self) -> (Self, Self) {
        if Field::is_zero(self) {
            return (Field::one(), Field::zero());
        }
        let (en, n) = self.num.to_poly();
        let (_, d) = self.den.to_poly(); // den canonical: shift 0, monic
        let mut sigma = Self::one();
        let mut core = Self::one();

        // X-power unit from the numerator shift.
        sigma = sigma.mul(&Self::gen_pow(en.div_euclid(2)));
        if en.rem_euclid(2) == 1 {
            core = core.mul(&Self::gen());
        }

        // Rational content of the (monic-after-split) numerator.
        let lc = n.last().unwrap().clone();
        let (s_c, c_c) = lc.sqrt_split();
        sigma = sigma.mul(&Self::constant(s_c));
        core = core.mul(&Self::constant(c_c));
        let lc_inv = <Rational as Field>::inv(&lc).unwrap();
        let n_monic: Vec<Rational> = n.iter().map(|c| c.mul(&lc_inv)).collect();

        for (part, monic) in [(n_monic, true), (d, false)] {
            if part.len() <= 1 {
                continue;
            }
            for (a, mult) in squarefree_decomposition(&part) {
                let ap = Self::from_laurent(LaurentPoly::from_poly(0, &a));
                let half = (mult / 2) as i64;
                let odd = mult % 2 == 1;
                let (s_fac, c_fac) = if monic {
                    (ap.pow(half), if odd { ap } else { Self::one() })
                } else {
                    (
                        ap.pow(half).inv().unwrap(),
                        if odd { ap.inv().unwrap() } else { Self::one() },
                    )
                };
                sigma = sigma.mul(&s_fac);
                core = core.mul(&c_fac);
            }
        }
        debug_assert_eq!(&Field::mul(&Field::mul(&sigma, &sigma), &core), self);
        (sigma, core)
    }

    fn sign_split(&self) -> (bool, Self) {
        // den is monic; the sign is the numerator's leading coefficient.
        match self.num.leading_coeff() {
            Some(lc) if lc.is_negative() => (true, Field::neg(self)),
            _ => (false, self.clone()),
        }
    }
}
