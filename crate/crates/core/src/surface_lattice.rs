//! Divisor arithmetic and line-bundle cohomology on the Hirzebruch surface F_e.
//!
//! Classes are written `a·C0 + c·f` where `C0` is the negative section
//! (`C0² = −e`) and `f` a fibre of `π: F_e → P¹`. Cohomology is computed by
//! pushing forward to P¹: for `a ≥ 0`, `π_*O(aC0 + cf) = ⊕_{j=0..a} O(c − je)`
//! and the higher direct image vanishes; `a ≤ −2` is reduced to that case by
//! Serre duality and `a = −1` is acyclic.

use num_traits::NumCast;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_eq, Error, Result};
use crate::scalar::{ck, lit, Int};

/// The surface F_e = P(O ⊕ O(−e)) over P¹.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Surface<T> {
    e: T,
}

/// The numerical class `a·C0 + c·f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct DivisorClass<T: Int> {
    pub a: T,
    pub c: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct CohomologyTable<T: Int> {
    pub h0: T,
    pub h1: T,
    pub h2: T,
    pub chi: T,
}

impl<T: Int> DivisorClass<T> {
    pub fn new(a: T, c: T) -> Self {
        DivisorClass { a, c }
    }

    pub fn zero() -> Self {
        DivisorClass::new(T::zero(), T::zero())
    }

    /// The negative section `C0`.
    pub fn section() -> Self {
        DivisorClass::new(T::one(), T::zero())
    }

    /// A fibre `f`.
    pub fn fiber() -> Self {
        DivisorClass::new(T::zero(), T::one())
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        Ok(DivisorClass::new(
            (ck(self.a) + other.a).get()?,
            (ck(self.c) + other.c).get()?,
        ))
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        Ok(DivisorClass::new(
            (ck(self.a) - other.a).get()?,
            (ck(self.c) - other.c).get()?,
        ))
    }

    pub fn negated(&self) -> Result<Self> {
        Ok(DivisorClass::new(
            (-ck(self.a)).get()?,
            (-ck(self.c)).get()?,
        ))
    }

    pub fn scaled(&self, k: T) -> Result<Self> {
        Ok(DivisorClass::new(
            (ck(self.a) * k).get()?,
            (ck(self.c) * k).get()?,
        ))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.c.is_zero()
    }
}

impl<T: Int> std::fmt::Display for DivisorClass<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}C0 + {}f", self.a, self.c)
    }
}

impl<T: Int> CohomologyTable<T> {
    pub fn zero() -> Self {
        CohomologyTable {
            h0: T::zero(),
            h1: T::zero(),
            h2: T::zero(),
            chi: T::zero(),
        }
    }

    /// Componentwise sum, as for a direct sum of sheaves.
    pub fn plus(&self, other: &Self) -> Result<Self> {
        Ok(CohomologyTable {
            h0: (ck(self.h0) + other.h0).get()?,
            h1: (ck(self.h1) + other.h1).get()?,
            h2: (ck(self.h2) + other.h2).get()?,
            chi: (ck(self.chi) + other.chi).get()?,
        })
    }

    pub fn has_higher_vanishing(&self) -> bool {
        self.h1.is_zero() && self.h2.is_zero()
    }
}

/// `h^0(P¹, O(k))`.
pub fn p1_h0<T: Int>(k: T) -> Result<T> {
    Ok((ck(k) + T::one()).get()?.max(T::zero()))
}

/// `h^1(P¹, O(k))`.
pub fn p1_h1<T: Int>(k: T) -> Result<T> {
    Ok((-ck(k) - T::one()).get()?.max(T::zero()))
}

impl<T: Int> Surface<T> {
    pub fn new(e: T) -> Result<Self> {
        if e < T::zero() {
            return Err(Error::InvalidInput(format!(
                "Hirzebruch invariant e must be ≥ 0, got {e}"
            )));
        }
        Ok(Surface { e })
    }

    pub fn e(&self) -> T {
        self.e
    }

    /// Intersection pairing from `C0² = −e`, `C0·f = 1`, `f² = 0`.
    pub fn intersect(&self, d1: &DivisorClass<T>, d2: &DivisorClass<T>) -> Result<T> {
        (ck(d1.a) * d2.c + ck(d2.a) * d1.c - ck(self.e) * d1.a * d2.a).get()
    }

    /// `K ≡ −2C0 − (e+2)f`.
    pub fn canonical_class(&self) -> Result<DivisorClass<T>> {
        Ok(DivisorClass::new(
            T::lift(-2)?,
            (-ck(self.e) - lit(2)).get()?,
        ))
    }

    pub fn is_effective(&self, d: &DivisorClass<T>) -> bool {
        d.a >= T::zero() && d.c >= T::zero()
    }

    /// Ample (equivalently very ample) line bundles: `a > 0` and `c > a·e`.
    pub fn is_ample(&self, d: &DivisorClass<T>) -> Result<bool> {
        Ok(d.a > T::zero() && d.c > (ck(d.a) * self.e).get()?)
    }

    /// Degrees of the P¹ summands of `π_*O(D)`, namely `c − j·e` for `j = 0..=a`.
    pub fn pushforward_degrees(&self, d: &DivisorClass<T>) -> Result<Vec<T>> {
        if d.a < T::zero() {
            return Err(Error::InvalidInput(format!(
                "pushforward needs a ≥ 0, got {d}"
            )));
        }
        let count: usize = NumCast::from(d.a)
            .and_then(|a: usize| a.checked_add(1))
            .ok_or(Error::Overflow)?;
        let mut out = Vec::with_capacity(count);
        let mut degree = ck(d.c);
        for _ in 0..count {
            out.push(degree.get()?);
            degree = degree - self.e;
        }
        Ok(out)
    }

    /// `χ(D) = 1 + ½·D·(D − K)`.
    pub fn euler_characteristic(&self, d: &DivisorClass<T>) -> Result<T> {
        let k = self.canonical_class()?;
        let twice = self.intersect(d, &d.minus(&k)?)?;
        let half = ck(twice).div_exact(T::lift(2)?, "D·(D−K) is even")?;
        (ck(half) + T::one()).get()
    }

    /// `h^0` through the pushforward: `Σ_{j=0..a} h^0(O(c − je))`, summed in closed form.
    fn h0_pushforward(&self, d: &DivisorClass<T>) -> Result<T> {
        let (a, c, e) = (d.a, d.c, self.e);
        if a < T::zero() || c < T::zero() {
            return Ok(T::zero());
        }
        if e.is_zero() {
            return ((ck(a) + T::one()) * (ck(c) + T::one())).get();
        }
        // summands c − je + 1 are positive exactly for j ≤ c / e
        let last = a.min(c.div_floor(&e));
        let terms = ck(last) + T::one();
        let triangle = (ck(last) * (ck(last) + T::one())).div_exact(T::lift(2)?, "triangular")?;
        (terms * (ck(c) + T::one()) - ck(e) * triangle).get()
    }

    /// `h^1` of `π_*O(D)` for `a ≥ 0`: `Σ_{j=0..a} h^1(O(c − je))`, in closed form.
    fn h1_pushforward(&self, d: &DivisorClass<T>) -> Result<T> {
        let (a, c, e) = (d.a, d.c, self.e);
        debug_assert!(a >= T::zero());
        if e.is_zero() {
            return ((ck(a) + T::one()) * p1_h1(c)?).get();
        }
        // summands je − c − 1 are positive exactly for je ≥ c + 2
        let first = (ck(c) + lit(2)).get()?.div_ceil(&e).max(T::zero());
        if first > a {
            return Ok(T::zero());
        }
        let terms = ck(a) - first + T::one();
        let index_sum =
            ((ck(first) + a) * terms.get()?).div_exact(T::lift(2)?, "arithmetic series")?;
        (ck(e) * index_sum - (ck(c) + T::one()) * terms).get()
    }

    /// Full cohomology table of `O(D)`.
    ///
    /// `h1` is obtained from `χ` and then checked against the direct pushforward
    /// sum (or its Serre dual); disagreement is an [`Error::Inconsistency`].
    pub fn cohomology(&self, d: &DivisorClass<T>) -> Result<CohomologyTable<T>> {
        let chi = self.euler_characteristic(d)?;
        if d.a == -T::one() {
            ensure_eq("χ(−C0 + cf) = 0", chi, T::zero())?;
            return Ok(CohomologyTable::zero());
        }
        let k = self.canonical_class()?;
        let dual = k.minus(d)?;
        let h0 = self.h0_pushforward(d)?;
        let h2 = self.h0_pushforward(&dual)?;
        let h1 = (ck(h0) + h2 - chi).get()?;
        let h1_direct = if d.a >= T::zero() {
            self.h1_pushforward(d)?
        } else {
            self.h1_pushforward(&dual)?
        };
        ensure_eq("h^1 by χ-subtraction = h^1 by pushforward", h1, h1_direct)?;
        Ok(CohomologyTable { h0, h1, h2, chi })
    }

    pub fn h0(&self, d: &DivisorClass<T>) -> Result<T> {
        Ok(self.cohomology(d)?.h0)
    }

    /// Brute-force `h^0` by counting lattice points of the section polytope.
    ///
    /// With the fan of F_e on rays `(1,0), (0,1), (−1,e), (0,−1)` and
    /// `D = a·D_(0,1) + c·D_(1,0)`, the polytope is
    /// `{(x,y) : x ≥ −c, y ≥ −a, e·y ≥ x, y ≤ 0}`; this walks its bounding box.
    /// Runs in `O(a·c)` and is intended as a test oracle.
    pub fn h0_lattice_oracle(&self, d: &DivisorClass<T>) -> Result<T> {
        let (a, c, e) = (d.a.to_i128(), d.c.to_i128(), self.e.to_i128());
        let mut count: i128 = 0;
        for y in -a..=0 {
            for x in -c..=0 {
                if e * y >= x {
                    count += 1;
                }
            }
        }
        <T as NumCast>::from(count).ok_or(Error::Overflow)
    }
}
