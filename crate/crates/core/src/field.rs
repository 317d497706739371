//! Arithmetic in GF(2^N) with a polynomial-basis representation.
//!
//! An element is stored as the integer `Σ bit_i·2^i`, where bit `i` is the
//! coefficient of `x^i` modulo the field's primitive polynomial. That integer
//! is the canonical serialized form as well.

use core::fmt;
use core::ops::{Add, AddAssign, Sub, SubAssign};

use rand_core::RngCore;

use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 32;

/// An element of GF(2^N). Addition is field independent (XOR); every other
/// operation goes through the owning [`Field`].
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(transparent)]
pub struct Elem(pub(crate) u64);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    /// Embeds a GF(2) value.
    #[inline]
    pub const fn from_bit(bit: bool) -> Elem {
        Elem(bit as u64)
    }

    #[inline]
    pub const fn value(self) -> u64 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Coordinate `i` in the polynomial basis.
    #[inline]
    pub const fn bit(self, i: u32) -> bool {
        (self.0 >> i) & 1 == 1
    }

    /// True when the element lies in the base field GF(2).
    #[inline]
    pub const fn is_base(self) -> bool {
        self.0 <= 1
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

// Addition in characteristic 2 is XOR of coordinates.
impl Add for Elem {
    type Output = Elem;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Elem) -> Elem {
        Elem(self.0 ^ rhs.0)
    }
}

impl AddAssign for Elem {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Elem) {
        self.0 ^= rhs.0;
    }
}

// Characteristic 2: subtraction is addition.
impl Sub for Elem {
    type Output = Elem;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: Elem) -> Elem {
        Elem(self.0 ^ rhs.0)
    }
}

impl SubAssign for Elem {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn sub_assign(&mut self, rhs: Elem) {
        self.0 ^= rhs.0;
    }
}

/// The extension field GF(2^N) defined by a primitive polynomial.
///
/// The modulus is stored with its leading `x^N` bit set, so
/// `1 + x^2 + x^3 + x^4 + x^8` is `0x11d`. A `Field` is `Copy` and immutable.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Field {
    degree: u32,
    modulus: u64,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}) mod {:#x}", self.degree, self.modulus)
    }
}

impl Field {
    /// GF(2^8) under `r(x) = 1 + x^2 + x^3 + x^4 + x^8`.
    pub const fn gf256() -> Field {
        Field {
            degree: 8,
            modulus: 0x11d,
        }
    }

    /// Builds a field, checking that `modulus` is a primitive polynomial of
    /// the given degree.
    pub fn new(degree: u32, modulus: u64) -> Result<Field> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::DegreeOutOfRange(degree));
        }
        if modulus >> degree != 1 || modulus & 1 == 0 {
            return Err(Error::MalformedModulus { degree, modulus });
        }
        if !is_irreducible(modulus) {
            return Err(Error::ReducibleModulus(modulus));
        }
        let field = Field { degree, modulus };
        if !field.is_primitive() {
            return Err(Error::NonPrimitiveModulus(modulus));
        }
        Ok(field)
    }

    /// The field of the given degree whose modulus is the numerically
    /// smallest primitive polynomial.
    pub fn with_degree(degree: u32) -> Result<Field> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::DegreeOutOfRange(degree));
        }
        let lead = 1u64 << degree;
        let mut candidate = lead | 1;
        while candidate < lead << 1 {
            if is_irreducible(candidate) {
                let field = Field {
                    degree,
                    modulus: candidate,
                };
                if field.is_primitive() {
                    return Ok(field);
                }
            }
            candidate += 2;
        }
        Err(Error::ConstructionFailure("no primitive polynomial found"))
    }

    #[inline]
    pub const fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub const fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Number of field elements, `2^N`.
    #[inline]
    pub const fn size(&self) -> u64 {
        1 << self.degree
    }

    #[inline]
    const fn mask(&self) -> u64 {
        (1 << self.degree) - 1
    }

    /// Checked conversion from the canonical integer form.
    pub fn elem(&self, value: u64) -> Result<Elem> {
        if value > self.mask() {
            return Err(Error::ElementOutOfRange {
                value,
                degree: self.degree,
            });
        }
        Ok(Elem(value))
    }

    /// Element whose polynomial-basis coordinates are the low `N` bits of
    /// `bits`; higher bits are discarded.
    #[inline]
    pub const fn from_coordinates(&self, bits: u64) -> Elem {
        Elem(bits & self.mask())
    }

    /// The class of `x`, a primitive element.
    pub fn alpha(&self) -> Elem {
        self.reduce_once(2)
    }

    /// `α^e`.
    pub fn alpha_pow(&self, e: u64) -> Elem {
        self.pow(self.alpha(), e)
    }

    #[inline]
    fn reduce_once(&self, v: u64) -> Elem {
        if v >> self.degree & 1 == 1 {
            Elem(v ^ self.modulus)
        } else {
            Elem(v)
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        a + b
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let mut x = a.0;
        let mut y = b.0;
        let mut acc = 0u64;
        let top = 1u64 << self.degree;
        while y != 0 {
            if y & 1 == 1 {
                acc ^= x;
            }
            y >>= 1;
            x <<= 1;
            if x & top != 0 {
                x ^= self.modulus;
            }
        }
        Elem(acc)
    }

    #[inline]
    pub fn square(&self, a: Elem) -> Elem {
        self.mul(a, a)
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while e != 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse as `a^(2^N - 2)`.
    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.size() - 2))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^(2^(i mod N))`. Negative `i` gives the inverse automorphism.
    pub fn frobenius(&self, a: Elem, i: i64) -> Elem {
        let steps = i.rem_euclid(self.degree as i64);
        let mut x = a;
        for _ in 0..steps {
            x = self.square(x);
        }
        x
    }

    pub fn random<R: RngCore + ?Sized>(&self, rng: &mut R) -> Elem {
        Elem(rng.next_u64() & self.mask())
    }

    pub fn random_nonzero<R: RngCore + ?Sized>(&self, rng: &mut R) -> Elem {
        loop {
            let e = self.random(rng);
            if !e.is_zero() {
                return e;
            }
        }
    }

    /// Multiplicative order of `α`, compared against `2^N - 1` through its
    /// prime factors.
    fn is_primitive(&self) -> bool {
        let group = self.size() - 1;
        let alpha = self.alpha();
        if self.pow(alpha, group) != Elem::ONE {
            return false;
        }
        prime_factors(group)
            .into_iter()
            .flatten()
            .all(|p| self.pow(alpha, group / p) != Elem::ONE)
    }
}

/// Remainder of polynomial division over GF(2).
fn poly_rem(mut a: u64, b: u64) -> u64 {
    let db = 63 - b.leading_zeros();
    while a != 0 {
        let da = 63 - a.leading_zeros();
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

/// Trial division by every polynomial of degree `1..=deg/2`.
fn is_irreducible(poly: u64) -> bool {
    let degree = 63 - poly.leading_zeros();
    for d in 1..=degree / 2 {
        let lo = 1u64 << d;
        for divisor in lo..lo << 1 {
            if poly_rem(poly, divisor) == 0 {
                return false;
            }
        }
    }
    true
}

/// Distinct prime factors of `n` (at most 16 for `n < 2^64`).
fn prime_factors(mut n: u64) -> [Option<u64>; 16] {
    let mut out = [None; 16];
    let mut len = 0;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out[len] = Some(p);
            len += 1;
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out[len] = Some(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf256() -> Field {
        Field::gf256()
    }

    #[test]
    fn gf256_constructor_matches_checked_new() {
        assert_eq!(Field::new(8, 0x11d).unwrap(), gf256());
        assert_eq!(Field::with_degree(8).unwrap(), gf256());
    }

    #[test]
    fn rejects_bad_moduli() {
        assert_eq!(Field::new(0, 1), Err(Error::DegreeOutOfRange(0)));
        assert_eq!(Field::new(33, 1), Err(Error::DegreeOutOfRange(33)));
        assert!(matches!(
            Field::new(8, 0x1d),
            Err(Error::MalformedModulus { .. })
        ));
        assert!(matches!(
            Field::new(8, 0x11c),
            Err(Error::MalformedModulus { .. })
        ));
        // x^8 + x^4 + x^3 + x + 1 (the AES polynomial) is irreducible, not primitive.
        assert_eq!(Field::new(8, 0x11b), Err(Error::NonPrimitiveModulus(0x11b)));
        // (x^2 + x + 1)^2 = x^4 + x^2 + 1
        assert_eq!(Field::new(4, 0b10101), Err(Error::ReducibleModulus(0b10101)));
    }

    #[test]
    fn element_range_is_checked() {
        let f = gf256();
        assert_eq!(f.elem(255).unwrap().value(), 255);
        assert!(f.elem(256).is_err());
    }

    #[test]
    fn addition_examples() {
        let f = gf256();
        let a = f.alpha_pow(77);
        assert_eq!(a + a, Elem::ZERO);
        assert_eq!(f.alpha_pow(3) + Elem::ZERO, f.alpha_pow(3));
        assert_eq!((f.alpha() + f.alpha_pow(2)).value(), 0b110);
    }

    #[test]
    fn multiplication_examples() {
        let f = gf256();
        assert_eq!(f.mul(f.alpha(), f.alpha()), f.alpha_pow(2));
        let a = f.alpha_pow(200);
        assert_eq!(f.mul(a, Elem::ONE), a);
        // Repeated multiplication oracle for the order of α.
        let mut acc = Elem::ONE;
        for i in 1..=255u32 {
            acc = f.mul(acc, f.alpha());
            if i < 255 {
                assert_ne!(acc, Elem::ONE, "α has order {i}");
            }
        }
        assert_eq!(acc, Elem::ONE);
    }

    #[test]
    fn inverse_examples() {
        let f = gf256();
        assert_eq!(f.inv(Elem::ONE).unwrap(), Elem::ONE);
        // independent oracle: α^254 by 254 successive multiplications
        let mut alpha_254 = Elem::ONE;
        for _ in 0..254 {
            alpha_254 = f.mul(alpha_254, f.alpha());
        }
        assert_eq!(alpha_254.value(), 142);
        assert_eq!(f.inv(f.alpha()).unwrap(), alpha_254);
        assert_eq!(f.inv(Elem::ZERO), Err(Error::ZeroInverse));

        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let a = f.random_nonzero(&mut rng);
            let inv = f.inv(a).unwrap();
            assert_eq!(f.mul(a, inv), Elem::ONE);
            assert_eq!(f.inv(inv).unwrap(), a);
        }
    }

    #[test]
    fn frobenius_examples() {
        let f = gf256();
        assert_eq!(f.frobenius(f.alpha_pow(3), 1), f.alpha_pow(6));
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let a = f.random(&mut rng);
            assert_eq!(f.frobenius(a, 8), a);
            assert_eq!(f.frobenius(a, 1), f.square(a));
            assert_eq!(f.frobenius(a, -1), f.frobenius(a, 7));
            assert_eq!(f.frobenius(f.frobenius(a, -1), 1), a);
        }
    }

    #[test]
    fn frobenius_is_a_bijection_for_every_power() {
        let f = gf256();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let a = f.random(&mut rng);
            let i = (rng.next_u32() % 8) as i64;
            assert_eq!(f.frobenius(f.frobenius(a, i), 8 - i), a);
        }
    }

    #[test]
    fn frobenius_fixes_base_field() {
        let f = gf256();
        for i in -9..9 {
            assert_eq!(f.frobenius(Elem::ZERO, i), Elem::ZERO);
            assert_eq!(f.frobenius(Elem::ONE, i), Elem::ONE);
        }
    }

    #[test]
    fn field_axioms_exhaustive_small_degrees() {
        for degree in 1..=4 {
            let f = Field::with_degree(degree).unwrap();
            let all: alloc::vec::Vec<Elem> = (0..f.size()).map(Elem).collect();
            for &a in &all {
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
                }
                for &b in &all {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.frobenius(a + b, 1), f.frobenius(a, 1) + f.frobenius(b, 1));
                    assert_eq!(
                        f.frobenius(f.mul(a, b), 1),
                        f.mul(f.frobenius(a, 1), f.frobenius(b, 1))
                    );
                    for &c in &all {
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, b + c), f.mul(a, b) + f.mul(a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn default_moduli_exist_up_to_max_degree() {
        for degree in [1, 2, 5, 16, 24, 32] {
            let f = Field::with_degree(degree).unwrap();
            assert_eq!(f.degree(), degree);
            assert_eq!(Field::new(degree, f.modulus()).unwrap(), f);
        }
    }
}
