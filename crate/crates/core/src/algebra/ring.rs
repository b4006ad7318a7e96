//! Principal ideal rings over which Smith and Howell normal forms are
//! computed: the integers (any `num_integer::Integer`) and the residue rings
//! `Z_d`.

use std::fmt::Debug;
use std::marker::PhantomData;

use num_integer::Integer;
use num_traits::Signed;

use super::zmod::{add_mod, extended_gcd, gcd, mod_inverse, mul_mod, neg_mod, sub_mod};

/// Result of an extended gcd step: `gcd = s·a + t·b`, with the exact
/// cofactors `a / gcd` and `b / gcd`.
#[derive(Clone, Debug)]
pub struct Bezout<E> {
    pub gcd: E,
    pub s: E,
    pub t: E,
    pub a_over_gcd: E,
    pub b_over_gcd: E,
}

/// The ring operations needed by the normal-form algorithms.
///
/// Elements are plain values; the ring object carries any context (such
/// as the modulus).
pub trait EuclideanRing {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    /// Extended gcd with a unimodular 2×2 transform
    /// `[[s, t], [-b/g, a/g]]` (determinant one).
    fn bezout(&self, a: &Self::Elem, b: &Self::Elem) -> Bezout<Self::Elem>;

    /// `Some(q)` with `q·b = a` when `b` divides `a`.
    fn divide(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;

    /// `(u, u·a)` where `u` is a unit and `u·a` is the canonical associate.
    fn normalize(&self, a: &Self::Elem) -> (Self::Elem, Self::Elem);

    /// Pivot preference: smaller is better.
    fn pivot_cost(&self, a: &Self::Elem) -> u64;

    fn divides(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.divide(b, a).is_some()
    }
}

/// The ring of integers, over any `num_integer::Integer` type (`i64`,
/// `i128`, `BigInt`, ...).
#[derive(Clone, Copy, Debug, Default)]
pub struct IntegerRing<T>(PhantomData<T>);

impl<T> IntegerRing<T> {
    pub fn new() -> Self {
        Self(PhantomData)
    }
}

impl<T> EuclideanRing for IntegerRing<T>
where
    T: Integer + Signed + Clone + Debug,
{
    type Elem = T;

    fn zero(&self) -> T {
        T::zero()
    }

    fn one(&self) -> T {
        T::one()
    }

    fn is_zero(&self, a: &T) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &T, b: &T) -> T {
        a.clone() + b.clone()
    }

    fn sub(&self, a: &T, b: &T) -> T {
        a.clone() - b.clone()
    }

    fn mul(&self, a: &T, b: &T) -> T {
        a.clone() * b.clone()
    }

    fn neg(&self, a: &T) -> T {
        -a.clone()
    }

    fn bezout(&self, a: &T, b: &T) -> Bezout<T> {
        let eg = a.extended_gcd(b);
        let (mut g, mut s, mut t) = (eg.gcd, eg.x, eg.y);
        if g.is_negative() {
            g = -g;
            s = -s;
            t = -t;
        }
        Bezout {
            a_over_gcd: a.clone() / g.clone(),
            b_over_gcd: b.clone() / g.clone(),
            gcd: g,
            s,
            t,
        }
    }

    fn divide(&self, a: &T, b: &T) -> Option<T> {
        if b.is_zero() {
            return a.is_zero().then(T::zero);
        }
        let (q, r) = a.div_rem(b);
        r.is_zero().then_some(q)
    }

    fn normalize(&self, a: &T) -> (T, T) {
        if a.is_negative() {
            (-T::one(), -a.clone())
        } else {
            (T::one(), a.clone())
        }
    }

    fn pivot_cost(&self, a: &T) -> u64 {
        // Bit length of |a| is enough to keep entry growth in check.
        let mut v = a.abs();
        let two = T::one() + T::one();
        let mut bits = 0;
        while !v.is_zero() {
            v = v / two.clone();
            bits += 1;
        }
        bits
    }
}

/// The residue ring `Z_d`, elements represented in `[0, d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResidueRing {
    modulus: u64,
}

impl ResidueRing {
    pub fn new(modulus: u64) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        Self { modulus }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// The canonical associate of `a`: `gcd(a, d)`, or `0`.
    pub fn ideal_generator(&self, a: u64) -> u64 {
        if a % self.modulus == 0 {
            0
        } else {
            gcd(a, self.modulus)
        }
    }

    /// Additive order of `a`.
    pub fn order(&self, a: u64) -> u64 {
        self.modulus / gcd(a % self.modulus, self.modulus)
    }
}

impl EuclideanRing for ResidueRing {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.modulus
    }

    fn is_zero(&self, a: &u64) -> bool {
        a % self.modulus == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        add_mod(*a, *b, self.modulus)
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        sub_mod(*a, *b, self.modulus)
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.modulus)
    }

    fn neg(&self, a: &u64) -> u64 {
        neg_mod(*a, self.modulus)
    }

    fn bezout(&self, a: &u64, b: &u64) -> Bezout<u64> {
        // Integer Bezout on representatives stays unimodular after reduction.
        let d = self.modulus as i128;
        let (a, b) = ((a % self.modulus) as i128, (b % self.modulus) as i128);
        if a == 0 && b == 0 {
            return Bezout {
                gcd: 0,
                s: 1,
                t: 0,
                a_over_gcd: 0,
                b_over_gcd: 0,
            };
        }
        let (g, s, t) = extended_gcd(a, b);
        let r = |x: i128| x.rem_euclid(d) as u64;
        Bezout {
            gcd: r(g),
            s: r(s),
            t: r(t),
            a_over_gcd: r(a / g),
            b_over_gcd: r(b / g),
        }
    }

    fn divide(&self, a: &u64, b: &u64) -> Option<u64> {
        let d = self.modulus;
        let (a, b) = (a % d, b % d);
        let g = gcd(b, d);
        if a % g != 0 {
            return None;
        }
        let d_red = d / g;
        if d_red == 1 {
            return Some(0);
        }
        let inv = mod_inverse((b / g) % d_red, d_red)?;
        Some(mul_mod(a / g, inv, d_red))
    }

    fn normalize(&self, a: &u64) -> (u64, u64) {
        let d = self.modulus;
        let a = a % d;
        if a == 0 {
            return (self.one(), 0);
        }
        let g = gcd(a, d);
        let d_red = d / g;
        let base = if d_red == 1 {
            0
        } else {
            mod_inverse((a / g) % d_red, d_red).expect("coprime after dividing by gcd")
        };
        // Lift the inverse mod d/g to a unit mod d.
        let mut u = base;
        while gcd(u, d) != 1 {
            u += d_red;
        }
        (u % d, mul_mod(u, a, d))
    }

    fn pivot_cost(&self, a: &u64) -> u64 {
        self.ideal_generator(*a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn residue_divide_and_normalize() {
        let z12 = ResidueRing::new(12);
        assert_eq!(z12.divide(&8, &4), Some(2));
        assert_eq!(z12.divide(&3, &2), None);
        // 10·q ≡ 4 (mod 12): q = 4 works (40 = 3·12 + 4)
        let q = z12.divide(&4, &10).unwrap();
        assert_eq!(z12.mul(&q, &10), 4);
        let (u, n) = z12.normalize(&10);
        assert_eq!(n, 2);
        assert_eq!(gcd(u, 12), 1);
        assert_eq!(z12.mul(&u, &10), 2);
    }

    #[test]
    fn bezout_is_unimodular() {
        let z = IntegerRing::<BigInt>::new();
        let (a, b) = (BigInt::from(12), BigInt::from(-18));
        let bz = z.bezout(&a, &b);
        assert_eq!(bz.gcd, BigInt::from(6));
        assert_eq!(&bz.s * &a + &bz.t * &b, bz.gcd);
        let det = &bz.s * &bz.a_over_gcd + &bz.t * &bz.b_over_gcd;
        assert_eq!(det, BigInt::from(1));

        let z6 = ResidueRing::new(6);
        let bz = z6.bezout(&4, &3);
        assert_eq!(z6.add(&z6.mul(&bz.s, &4), &z6.mul(&bz.t, &3)), bz.gcd);
    }
}
