//! Carrier-independent contraction identities.
//!
//! Everything here is written against two small traits: a bilinear
//! [`Product`] on some element type and a linear [`Endomorphism`] of it. The
//! finite-dimensional engine and the polynomial Courant algebroid both plug
//! into the same formulas, so an identity verified on one carrier is the very
//! same code path that runs on the other.

use std::fmt::Debug;

/// Elements of a vector space, as far as the identities need them.
pub trait Element: Clone + PartialEq + Debug + Send + Sync {
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn is_zero(&self) -> bool;
}

/// A bilinear product `x ∘ y`.
pub trait Product: Sync {
    type Elem: Element;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
}

/// A linear map `N` of the carrier into itself.
pub trait Endomorphism<E>: Sync {
    fn apply(&self, x: &E) -> E;
}

impl<P: Product + ?Sized> Product for &P {
    type Elem = P::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        (**self).mul(x, y)
    }
}

/// The contracted product `x ∘_N y = N(x)∘y + x∘N(y) − N(x∘y)`.
pub struct Contracted<'a, P: ?Sized, N: ?Sized> {
    pub product: &'a P,
    pub tensor: &'a N,
}

impl<'a, P, N> Contracted<'a, P, N>
where
    P: Product + ?Sized,
    N: Endomorphism<P::Elem> + ?Sized,
{
    pub fn new(product: &'a P, tensor: &'a N) -> Self {
        Contracted { product, tensor }
    }
}

impl<P, N> Product for Contracted<'_, P, N>
where
    P: Product + ?Sized,
    N: Endomorphism<P::Elem> + ?Sized,
{
    type Elem = P::Elem;

    fn mul(&self, x: &P::Elem, y: &P::Elem) -> P::Elem {
        let p = self.product;
        let n = self.tensor;
        p.mul(&n.apply(x), y)
            .add(&p.mul(x, &n.apply(y)))
            .sub(&n.apply(&p.mul(x, y)))
    }
}

/// `(x∘y)∘z − x∘(y∘z) + y∘(x∘z)`; zero iff the Leibniz identity holds on
/// the triple.
pub fn jacobi_defect<P: Product + ?Sized>(p: &P, x: &P::Elem, y: &P::Elem, z: &P::Elem) -> P::Elem {
    p.mul(&p.mul(x, y), z)
        .sub(&p.mul(x, &p.mul(y, z)))
        .add(&p.mul(y, &p.mul(x, z)))
}

/// Nijenhuis torsion `T_N(x,y) = N(x)∘N(y) − N(x ∘_N y)`.
pub fn torsion<P, N>(p: &P, n: &N, x: &P::Elem, y: &P::Elem) -> P::Elem
where
    P: Product + ?Sized,
    N: Endomorphism<P::Elem> + ?Sized,
{
    let contracted = Contracted::new(p, n);
    p.mul(&n.apply(x), &n.apply(y))
        .sub(&n.apply(&contracted.mul(x, y)))
}

/// The six-term compatibility expression between `∘_N` and `∘`:
///
/// `(x∘_N y)∘z − x∘_N(y∘z) + y∘_N(x∘z) + (x∘y)∘_N z − x∘(y∘_N z) + y∘(x∘_N z)`.
///
/// Vanishes identically whenever `∘` is Leibniz.
pub fn compatibility_defect<P, N>(p: &P, n: &N, x: &P::Elem, y: &P::Elem, z: &P::Elem) -> P::Elem
where
    P: Product + ?Sized,
    N: Endomorphism<P::Elem> + ?Sized,
{
    let c = Contracted::new(p, n);
    p.mul(&c.mul(x, y), z)
        .sub(&c.mul(x, &p.mul(y, z)))
        .add(&c.mul(y, &p.mul(x, z)))
        .add(&c.mul(&p.mul(x, y), z))
        .sub(&p.mul(x, &c.mul(y, z)))
        .add(&p.mul(y, &c.mul(x, z)))
}

/// Leibniz coboundary of the torsion 2-cochain:
///
/// `δT(x,y,z) = T(x,y∘z) − T(x∘y,z) − T(y,x∘z) − T(x,y)∘z + x∘T(y,z) − y∘T(x,z)`.
pub fn torsion_coboundary<P, N>(p: &P, n: &N, x: &P::Elem, y: &P::Elem, z: &P::Elem) -> P::Elem
where
    P: Product + ?Sized,
    N: Endomorphism<P::Elem> + ?Sized,
{
    let t = |a: &P::Elem, b: &P::Elem| torsion(p, n, a, b);
    t(x, &p.mul(y, z))
        .sub(&t(&p.mul(x, y), z))
        .sub(&t(y, &p.mul(x, z)))
        .sub(&p.mul(&t(x, y), z))
        .add(&p.mul(x, &t(y, z)))
        .sub(&p.mul(y, &t(x, z)))
}
