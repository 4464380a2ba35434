//! Intersection calculus on the threefold `X = P(E)` over F_e.
//!
//! `A(X)` is free over `A(F_e)` on `1, ξ` with `ξ = [L]` and relation
//! `ξ² = ξ·φ*c1 − φ*c2`. A class is stored as `α + β·ξ` with
//! `α, β ∈ A(F_e) = Z ⊕ Num(F_e) ⊕ Z[pt]`; the top piece of `β` is the
//! point class of `X` since `ξ·φ*[pt] = [pt]`.

use serde::{Deserialize, Serialize};

use crate::bundle_family::{ChernData, FamilyParams};
use crate::error::{ensure_eq, Error, Result};
use crate::scalar::{ck, lit, Int};
use crate::surface_lattice::{DivisorClass, Surface};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct ScrollContext<T: Int> {
    pub e: T,
    pub c1: DivisorClass<T>,
    pub c2: T,
}

/// A class on `X` in normal form over the basis
/// `1; ξ, φ*C0, φ*f; ξ·φ*C0, ξ·φ*f, φ*[pt]; [pt]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct ChowClass<T: Int> {
    pub z: T,
    pub xi: T,
    pub h1: T,
    pub h2: T,
    pub xih1: T,
    pub xih2: T,
    pub p: T,
    pub pt: T,
}

/// An element of `A(F_e)`: degree 0, a divisor class, and a multiple of `[pt]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct BaseClass<T: Int> {
    unit: T,
    divisor: DivisorClass<T>,
    point: T,
}

impl<T: Int> BaseClass<T> {
    fn add(&self, other: &Self) -> Result<Self> {
        Ok(BaseClass {
            unit: (ck(self.unit) + other.unit).get()?,
            divisor: self.divisor.plus(&other.divisor)?,
            point: (ck(self.point) + other.point).get()?,
        })
    }

    fn sub(&self, other: &Self) -> Result<Self> {
        Ok(BaseClass {
            unit: (ck(self.unit) - other.unit).get()?,
            divisor: self.divisor.minus(&other.divisor)?,
            point: (ck(self.point) - other.point).get()?,
        })
    }

    fn mul(&self, other: &Self, surface: &Surface<T>) -> Result<Self> {
        Ok(BaseClass {
            unit: (ck(self.unit) * other.unit).get()?,
            divisor: other
                .divisor
                .scaled(self.unit)?
                .plus(&self.divisor.scaled(other.unit)?)?,
            point: (ck(self.unit) * other.point
                + ck(other.unit) * self.point
                + surface.intersect(&self.divisor, &other.divisor)?)
            .get()?,
        })
    }
}

impl<T: Int> ChowClass<T> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        ChowClass {
            z: T::one(),
            ..Self::default()
        }
    }

    /// `ξ = [L]`, the tautological class.
    pub fn xi() -> Self {
        ChowClass {
            xi: T::one(),
            ..Self::default()
        }
    }

    /// `φ*D`.
    pub fn pullback(d: &DivisorClass<T>) -> Self {
        ChowClass {
            h1: d.a,
            h2: d.c,
            ..Self::default()
        }
    }

    /// `φ*[pt]`, the class of a fibre of `φ`.
    pub fn pullback_point() -> Self {
        ChowClass {
            p: T::one(),
            ..Self::default()
        }
    }

    /// `[pt]`.
    pub fn point() -> Self {
        ChowClass {
            pt: T::one(),
            ..Self::default()
        }
    }

    fn from_parts(lower: BaseClass<T>, upper: BaseClass<T>) -> Self {
        ChowClass {
            z: lower.unit,
            xi: upper.unit,
            h1: lower.divisor.a,
            h2: lower.divisor.c,
            xih1: upper.divisor.a,
            xih2: upper.divisor.c,
            p: lower.point,
            pt: upper.point,
        }
    }

    /// The coefficients of `1` and `ξ` in `A(F_e)[ξ]`.
    fn parts(&self) -> (BaseClass<T>, BaseClass<T>) {
        (
            BaseClass {
                unit: self.z,
                divisor: DivisorClass::new(self.h1, self.h2),
                point: self.p,
            },
            BaseClass {
                unit: self.xi,
                divisor: DivisorClass::new(self.xih1, self.xih2),
                point: self.pt,
            },
        )
    }

    fn coefficients(&self) -> [T; 8] {
        [
            self.z, self.xi, self.h1, self.h2, self.xih1, self.xih2, self.p, self.pt,
        ]
    }

    fn from_coefficients(c: [T; 8]) -> Self {
        ChowClass {
            z: c[0],
            xi: c[1],
            h1: c[2],
            h2: c[3],
            xih1: c[4],
            xih2: c[5],
            p: c[6],
            pt: c[7],
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(T, T) -> Result<T>) -> Result<Self> {
        let (a, b) = (self.coefficients(), other.coefficients());
        let mut out = [T::zero(); 8];
        for i in 0..8 {
            out[i] = f(a[i], b[i])?;
        }
        Ok(Self::from_coefficients(out))
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |x, y| (ck(x) + y).get())
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |x, y| (ck(x) - y).get())
    }

    pub fn scaled(&self, k: T) -> Result<Self> {
        self.zip_with(self, |x, _| (ck(x) * k).get())
    }

    pub fn negated(&self) -> Result<Self> {
        self.zip_with(self, |x, _| (-ck(x)).get())
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients().iter().all(|c| c.is_zero())
    }

    /// The degree of a zero-cycle; fails on classes with lower-degree parts.
    pub fn degree(&self) -> Result<T> {
        if self.coefficients()[..7].iter().any(|c| !c.is_zero()) {
            return Err(Error::NotZeroCycle);
        }
        Ok(self.pt)
    }
}

/// Chern classes of the tangent bundle of `X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TangentChern<T: Int> {
    pub c1: ChowClass<T>,
    pub c2: ChowClass<T>,
    pub c3: ChowClass<T>,
}

/// The intersection numbers of `L`, `K = K_X` and the Chern classes of `X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct IntersectionNumbers<T: Int> {
    #[serde(rename = "L3")]
    pub l3: T,
    #[serde(rename = "KL2")]
    pub kl2: T,
    #[serde(rename = "K2L")]
    pub k2l: T,
    #[serde(rename = "K3")]
    pub k3: T,
    #[serde(rename = "c2L")]
    pub c2l: T,
    #[serde(rename = "Kc2")]
    pub kc2: T,
    pub c3: T,
}

impl<T: Int> ScrollContext<T> {
    pub fn new(e: T, chern: ChernData<T>) -> Result<Self> {
        Surface::new(e)?;
        Ok(ScrollContext {
            e,
            c1: chern.c1,
            c2: chern.c2,
        })
    }

    pub fn from_params(params: &FamilyParams<T>) -> Result<Self> {
        Self::new(params.e(), params.chern()?)
    }

    pub fn surface(&self) -> Surface<T> {
        Surface::new(self.e).expect("context over a valid surface")
    }

    /// Product in normal form: `(α + βξ)(γ + δξ) = (αγ − βδ·c2) + (αδ + βγ + βδ·c1)ξ`.
    pub fn multiply(&self, x: &ChowClass<T>, y: &ChowClass<T>) -> Result<ChowClass<T>> {
        let surface = self.surface();
        let (x0, x1) = x.parts();
        let (y0, y1) = y.parts();
        let c1 = BaseClass {
            unit: T::zero(),
            divisor: self.c1,
            point: T::zero(),
        };
        let c2 = BaseClass {
            unit: T::zero(),
            divisor: DivisorClass::zero(),
            point: self.c2,
        };
        let top = x1.mul(&y1, &surface)?;
        let lower = x0.mul(&y0, &surface)?.sub(&top.mul(&c2, &surface)?)?;
        let upper = x0
            .mul(&y1, &surface)?
            .add(&x1.mul(&y0, &surface)?)?
            .add(&top.mul(&c1, &surface)?)?;
        Ok(ChowClass::from_parts(lower, upper))
    }

    pub fn product(&self, factors: &[ChowClass<T>]) -> Result<ChowClass<T>> {
        factors
            .iter()
            .try_fold(ChowClass::one(), |acc, f| self.multiply(&acc, f))
    }

    /// Degree of a product of classes.
    pub fn intersect(&self, factors: &[ChowClass<T>]) -> Result<T> {
        self.product(factors)?.degree()
    }

    /// `K_X = −2ξ + φ*(K_{F_e} + c1(E))`.
    pub fn canonical_class(&self) -> Result<ChowClass<T>> {
        let base = self.surface().canonical_class()?.plus(&self.c1)?;
        ChowClass::xi()
            .scaled(T::lift(-2)?)?
            .plus(&ChowClass::pullback(&base))
    }

    /// `c(T_X) = (1 + 2ξ − φ*c1) · φ*(1 − K_{F_e} + 4[pt])`.
    ///
    /// The relative tangent line bundle has class `2ξ − φ*c1`; the surface has
    /// topological Euler number 4.
    pub fn chern_tx(&self) -> Result<TangentChern<T>> {
        let minus_k_f = ChowClass::pullback(&self.surface().canonical_class()?.negated()?);
        let relative = ChowClass::xi()
            .scaled(T::lift(2)?)?
            .minus(&ChowClass::pullback(&self.c1))?;
        let euler_f = ChowClass::pullback_point().scaled(T::lift(4)?)?;

        let c1 = relative.plus(&minus_k_f)?;
        let c2 = self.multiply(&relative, &minus_k_f)?.plus(&euler_f)?;
        let c3 = self.multiply(&relative, &euler_f)?;

        let k = self.canonical_class()?;
        ensure_eq("c_1(X) = −K_X", c1, k.negated()?)?;
        ensure_eq("c_3 = 8", c3.degree()?, T::lift(8)?)?;
        ensure_eq("−Kc_2 = 24", self.intersect(&[k, c2])?, T::lift(-24)?)?;
        Ok(TangentChern { c1, c2, c3 })
    }

    fn chow_numbers(&self) -> Result<IntersectionNumbers<T>> {
        let l = ChowClass::xi();
        let k = self.canonical_class()?;
        let tx = self.chern_tx()?;
        Ok(IntersectionNumbers {
            l3: self.intersect(&[l, l, l])?,
            kl2: self.intersect(&[k, l, l])?,
            k2l: self.intersect(&[k, k, l])?,
            k3: self.intersect(&[k, k, k])?,
            c2l: self.intersect(&[tx.c2, l])?,
            kc2: self.intersect(&[k, tx.c2])?,
            c3: tx.c3.degree()?,
        })
    }
}

/// The seven intersection numbers of the scroll, by Chow multiplication,
/// each checked against its closed form in `d, e, b, t`.
pub fn intersection_numbers<T: Int>(params: &FamilyParams<T>) -> Result<IntersectionNumbers<T>> {
    let ctx = ScrollContext::from_params(params)?;
    let chow = ctx.chow_numbers()?;
    let (e, b, t) = (params.e(), params.b(), params.t());
    let d = (lit(8) * e + lit(5) * b + lit(7) * t + lit(40)).get()?;

    ensure_eq("d = L³ = 8e+5b+7t+40", chow.l3, d)?;
    ensure_eq(
        "KL² = −2d+6e+28+6t+6b",
        chow.kl2,
        (lit(-2) * d + lit(6) * e + lit(28) + lit(6) * t + lit(6) * b).get()?,
    )?;
    ensure_eq(
        "K²L = 4d−20b−20t−20e−96",
        chow.k2l,
        (lit(4) * d - lit(20) * b - lit(20) * t - lit(20) * e - lit(96)).get()?,
    )?;
    ensure_eq(
        "c_2L = 2e+24+2b+2t",
        chow.c2l,
        (lit(2) * e + lit(24) + lit(2) * b + lit(2) * t).get()?,
    )?;
    ensure_eq(
        "K³ = −8d+48b+48t+48e+240",
        chow.k3,
        (lit(-8) * d + lit(48) * b + lit(48) * t + lit(48) * e + lit(240)).get()?,
    )?;
    ensure_eq("−Kc_2 = 24", (-ck(chow.kc2)).get()?, T::lift(24)?)?;
    ensure_eq("c_3 = 8", chow.c3, T::lift(8)?)?;
    Ok(chow)
}
