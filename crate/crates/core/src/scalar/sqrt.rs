use std::collections::BTreeMap;
use std::fmt;

use super::field::{Field, SqrtSplit};

/// A field element times a formal product of square roots:
/// `value * prod sqrt(core)` over canonical squarefree cores.
///
/// Square roots enter matrix-unit coefficients only in pairs that cancel in
/// every completed projector; this type makes the pairing explicit. Cores are
/// positive-normalised (a formal `sqrt(-1)` is carried as the core `-1`) and
/// keyed by their canonical rendering, so radicands equal up to squares always
/// share cores and `sqrt(c) * sqrt(c)` folds back into `value`.
#[derive(Clone, PartialEq, Debug)]
pub struct Radical<F: Field> {
    value: F,
    cores: BTreeMap<String, F>,
}

impl<F: Field + SqrtSplit> Radical<F> {
    pub fn from_value(value: F) -> Self {
        Radical {
            value,
            cores: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_value(F::one())
    }

    /// `1 / sqrt(prod factors)`, each factor reduced to its squarefree core.
    pub fn inv_sqrt(factors: &[F]) -> Self {
        let mut out = Self::one();
        for f in factors {
            let (sigma, core) = f.sqrt_split();
            // 1/sqrt(f) = 1/(sigma * core) * sqrt(core)
            let scale = sigma.mul(&core).inv().expect("inv_sqrt of zero radicand");
            out.value = out.value.mul(&scale);
            out.toggle_core(core);
        }
        out
    }

    /// `sqrt(prod factors)`.
    pub fn sqrt(factors: &[F]) -> Self {
        let mut out = Self::one();
        for f in factors {
            let (sigma, core) = f.sqrt_split();
            out.value = out.value.mul(&sigma);
            out.toggle_core(core);
        }
        out
    }

    fn toggle_core(&mut self, core: F) {
        toggle_core_in(&mut self.cores, &mut self.value, core);
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.value = out.value.mul(&other.value);
        for core in other.cores.values() {
            out.toggle_core(core.clone());
        }
        out
    }

    pub fn mul_value(&self, v: &F) -> Self {
        let mut out = self.clone();
        out.value = out.value.mul(v);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// True when no formal square roots remain.
    pub fn is_plain(&self) -> bool {
        self.cores.is_empty()
    }

    pub fn value(&self) -> &F {
        &self.value
    }

    /// The plain field value, if all square roots have cancelled.
    pub fn as_plain(&self) -> Option<&F> {
        self.is_plain().then_some(&self.value)
    }

    pub fn cores(&self) -> impl Iterator<Item = &F> {
        self.cores.values()
    }

    pub fn core_keys(&self) -> Vec<String> {
        self.cores.keys().cloned().collect()
    }
}

/// Toggle a signed squarefree core in a formal sqrt product: signs split off
/// as the core `-1`, second occurrences fold into `scale`.
pub(crate) fn toggle_core_in<F: Field + SqrtSplit>(
    cores: &mut BTreeMap<String, F>,
    scale: &mut F,
    core: F,
) {
    if core.is_one() {
        return;
    }
    let (negative, positive) = core.sign_split();
    if negative {
        let minus = F::one().neg();
        insert_or_fold(cores, scale, minus);
        if !positive.is_one() {
            insert_or_fold(cores, scale, positive);
        }
    } else {
        insert_or_fold(cores, scale, core);
    }
}

fn insert_or_fold<F: Field>(cores: &mut BTreeMap<String, F>, scale: &mut F, core: F) {
    let key = core.to_string();
    if cores.remove(&key).is_some() {
        // sqrt(core) * sqrt(core) = core
        *scale = scale.mul(&core);
    } else {
        cores.insert(key, core);
    }
}

impl<F: Field> fmt::Display for Radical<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)?;
        for c in self.cores.values() {
            write!(f, "*sqrt({c})")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::{Fq, Rational};
    use super::*;

    #[test]
    fn pairs_cancel() {
        let three = <Rational as Field>::from_i64(3);
        let r = Radical::inv_sqrt(&[three.clone()]);
        assert!(!r.is_plain());
        let sq = r.mul(&r);
        assert!(sq.is_plain());
        // (1/sqrt(3))^2 = 1/3
        assert_eq!(sq.as_plain().unwrap(), &Field::inv(&three).unwrap());
    }

    #[test]
    fn square_factors_fold_into_value() {
        // sqrt(12) = 2 sqrt(3)
        let r = Radical::sqrt(&[<Rational as Field>::from_i64(12)]);
        assert_eq!(r.value(), &<Rational as Field>::from_i64(2));
        assert_eq!(r.core_keys(), vec!["3".to_string()]);
    }

    #[test]
    fn negative_radicands_pair_through_the_sign_core() {
        // sqrt(-3) * sqrt(-3) = -3
        let m3 = <Rational as Field>::from_i64(-3);
        let r = Radical::sqrt(&[m3.clone()]);
        assert_eq!(r.core_keys(), vec!["-1".to_string(), "3".to_string()]);
        let sq = r.mul(&r);
        assert!(sq.is_plain());
        assert_eq!(sq.as_plain().unwrap(), &m3);
    }

    #[test]
    fn opposite_sign_radicands_share_the_positive_core() {
        // sqrt(1 - q^2) sqrt(q^2 - 1) = sqrt(-1) (q^2 - 1): the positive core
        // cancels and only the formal sign root remains.
        let q = Fq::gen();
        let a = Fq::one().sub(&q.pow(2));
        let b = q.pow(2).sub(&Fq::one());
        let prod = Radical::sqrt(&[a]).mul(&Radical::sqrt(&[b.clone()]));
        assert_eq!(prod.core_keys(), vec!["-1".to_string()]);
        assert_eq!(prod.value(), &b);
        // and squaring that kills the sign root: (sqrt(-1))^2 (q^2-1)^2
        let sq = prod.mul(&prod);
        assert!(sq.is_plain());
        assert_eq!(sq.as_plain().unwrap(), &b.mul(&b).neg());
    }

    #[test]
    fn ratfun_cores_merge() {
        let q = Fq::gen();
        let a = q.clone(); // q
        let b = q.pow(3); // q^3 = q^2 * q: same core q
        let r = Radical::inv_sqrt(&[a]).mul(&Radical::inv_sqrt(&[b]));
        assert!(r.is_plain());
        assert_eq!(r.as_plain().unwrap(), &Fq::gen_pow(-2));
    }
}
