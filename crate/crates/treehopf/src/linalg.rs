//! Exact scalars, linear combinations, and type-weight vectors.
//!
//! Coefficients are arbitrary-precision rationals. A `LinComb` never stores
//! a zero coefficient, so structural equality is equality of combinations.

use crate::trees::TypeId;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

/// Exact rational scalar: always reduced, denominator positive.
pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `p/q` as a reduced rational. `q` must be nonzero.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Finite linear combination of canonical basis keys.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinComb<B: Ord + Clone> {
    terms: BTreeMap<B, Rat>,
}

impl<B: Ord + Clone> Default for LinComb<B> {
    fn default() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<B: Ord + Clone> LinComb<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The basis element `b` with coefficient one.
    pub fn single(b: B) -> Self {
        Self::term(b, Rat::one())
    }

    pub fn term(b: B, c: Rat) -> Self {
        let mut out = Self::zero();
        out.add_term(b, c);
        out
    }

    pub fn from_terms(it: impl IntoIterator<Item = (B, Rat)>) -> Self {
        let mut out = Self::zero();
        for (b, c) in it {
            out.add_term(b, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, b: &B) -> Rat {
        self.terms.get(b).cloned().unwrap_or_else(Rat::zero)
    }

    /// Terms in canonical key order.
    pub fn iter(&self) -> impl Iterator<Item = (&B, &Rat)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, b: B, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(b) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = e.get() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    /// `self + c * other`.
    pub fn combine(&self, c: &Rat, other: &Self) -> Self {
        let mut out = self.clone();
        for (b, x) in other.iter() {
            out.add_term(b.clone(), c * x);
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinComb {
            terms: self.terms.iter().map(|(b, x)| (b.clone(), c * x)).collect(),
        }
    }

    /// Linear extension of a map defined on basis keys.
    pub fn map<C: Ord + Clone>(&self, mut f: impl FnMut(&B) -> LinComb<C>) -> LinComb<C> {
        let mut out = LinComb::zero();
        for (b, c) in self.iter() {
            out = out.combine(c, &f(b));
        }
        out
    }

    /// Relabel basis keys; coefficients of colliding images merge.
    pub fn map_basis<C: Ord + Clone>(&self, mut f: impl FnMut(&B) -> C) -> LinComb<C> {
        let mut out = LinComb::zero();
        for (b, c) in self.iter() {
            out.add_term(f(b), c.clone());
        }
        out
    }
}

impl<B: Ord + Clone> Add for &LinComb<B> {
    type Output = LinComb<B>;
    fn add(self, rhs: &LinComb<B>) -> LinComb<B> {
        self.combine(&Rat::one(), rhs)
    }
}

impl<B: Ord + Clone> Sub for &LinComb<B> {
    type Output = LinComb<B>;
    fn sub(self, rhs: &LinComb<B>) -> LinComb<B> {
        self.combine(&-Rat::one(), rhs)
    }
}

impl<B: Ord + Clone> Neg for &LinComb<B> {
    type Output = LinComb<B>;
    fn neg(self) -> LinComb<B> {
        self.scale(&-Rat::one())
    }
}

/// Tensor product of two combinations; keys are ordered pairs.
pub fn tensor2<A: Ord + Clone, B: Ord + Clone>(
    x: &LinComb<A>,
    y: &LinComb<B>,
) -> LinComb<(A, B)> {
    let mut out = LinComb::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            out.add_term((a.clone(), b.clone()), ca * cb);
        }
    }
    out
}

/// Tensor product of three combinations; keys are ordered triples.
pub fn tensor3<A: Ord + Clone, B: Ord + Clone, C: Ord + Clone>(
    x: &LinComb<A>,
    y: &LinComb<B>,
    z: &LinComb<C>,
) -> LinComb<(A, B, C)> {
    let mut out = LinComb::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            for (c, cc) in z.iter() {
                out.add_term((a.clone(), b.clone(), c.clone()), ca * cb * cc);
            }
        }
    }
    out
}

/// Weight vector over edge types; absent types weigh zero.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Lambda {
    entries: BTreeMap<TypeId, Rat>,
}

impl Lambda {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The unit vector at `t`.
    pub fn unit(t: TypeId) -> Self {
        Self::from_pairs([(t, Rat::one())])
    }

    pub fn from_pairs(it: impl IntoIterator<Item = (TypeId, Rat)>) -> Self {
        let mut entries = BTreeMap::new();
        for (t, c) in it {
            if !c.is_zero() {
                entries.insert(t, c);
            }
        }
        Lambda { entries }
    }

    pub fn get(&self, t: TypeId) -> Rat {
        self.entries.get(&t).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Types with nonzero weight, in id order.
    pub fn support(&self) -> impl Iterator<Item = (TypeId, &Rat)> {
        self.entries.iter().map(|(t, c)| (*t, c))
    }

    /// Pointwise `self + c * other`.
    pub fn combine(&self, c: &Rat, other: &Lambda) -> Lambda {
        let mut entries = self.entries.clone();
        for (t, x) in other.support() {
            let v = entries.get(&t).cloned().unwrap_or_else(Rat::zero) + c * x;
            if v.is_zero() {
                entries.remove(&t);
            } else {
                entries.insert(t, v);
            }
        }
        Lambda { entries }
    }

    /// Pairing with another weight vector: sum of products over types.
    pub fn dot(&self, other: &Lambda) -> Rat {
        let mut s = Rat::zero();
        for (t, c) in self.support() {
            s += c * other.get(t);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn lincomb_merges_and_drops_zeros() {
        let mut c = LinComb::zero();
        c.add_term("x", rat_int(2));
        c.add_term("x", rat_int(-2));
        assert!(c.is_zero());
        c.add_term("y", rat(1, 2));
        c.add_term("y", rat(1, 2));
        assert_eq!(c.coeff(&"y"), rat_int(1));
    }

    #[test]
    fn combine_is_add_scaled() {
        let a = LinComb::from_terms([("x", rat_int(1)), ("y", rat_int(2))]);
        let b = LinComb::from_terms([("y", rat_int(1)), ("z", rat(1, 3))]);
        let c = a.combine(&rat_int(3), &b);
        assert_eq!(c.coeff(&"x"), rat_int(1));
        assert_eq!(c.coeff(&"y"), rat_int(5));
        assert_eq!(c.coeff(&"z"), rat_int(1));
    }

    #[test]
    fn tensor_bilinear_example() {
        let a = LinComb::from_terms([(1u8, rat_int(2))]);
        let b = LinComb::from_terms([(10u8, rat(1, 2)), (11u8, rat_int(1))]);
        let t = tensor2(&a, &b);
        assert_eq!(t.coeff(&(1, 10)), rat_int(1));
        assert_eq!(t.coeff(&(1, 11)), rat_int(2));
    }

    #[test]
    fn lambda_defaults_to_zero() {
        let l = Lambda::from_pairs([(TypeId(0), rat_int(1)), (TypeId(1), rat_int(0))]);
        assert_eq!(l.get(TypeId(0)), rat_int(1));
        assert_eq!(l.get(TypeId(1)), rat_int(0));
        assert_eq!(l.get(TypeId(7)), rat_int(0));
        assert_eq!(l.support().count(), 1);
    }

    proptest! {
        #[test]
        fn addition_commutes(xs in proptest::collection::vec((0u8..6, -4i64..5), 0..8),
                             ys in proptest::collection::vec((0u8..6, -4i64..5), 0..8)) {
            let a = LinComb::from_terms(xs.iter().map(|(b, c)| (*b, rat_int(*c))));
            let b = LinComb::from_terms(ys.iter().map(|(b, c)| (*b, rat_int(*c))));
            prop_assert_eq!(&a + &b, &b + &a);
        }

        #[test]
        fn sub_then_add_round_trips(xs in proptest::collection::vec((0u8..6, -4i64..5), 0..8),
                                    ys in proptest::collection::vec((0u8..6, -4i64..5), 0..8)) {
            let a = LinComb::from_terms(xs.iter().map(|(b, c)| (*b, rat_int(*c))));
            let b = LinComb::from_terms(ys.iter().map(|(b, c)| (*b, rat_int(*c))));
            prop_assert_eq!(&(&a - &b) + &b, a);
        }

        #[test]
        fn scaling_distributes(xs in proptest::collection::vec((0u8..6, -4i64..5), 0..8),
                               p in -6i64..7, q in 1i64..5) {
            let a = LinComb::from_terms(xs.iter().map(|(b, c)| (*b, rat_int(*c))));
            let c = rat(p, q);
            let lhs = a.scale(&c);
            let rhs = LinComb::zero().combine(&c, &a);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
