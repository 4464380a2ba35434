//! The embedded scroll `X ⊂ P^n` given by the tautological bundle `L`.

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, NumCast};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bundle_family::FamilyParams;
use crate::chow_ring::{intersection_numbers, ChowClass, ScrollContext};
use crate::error::{ensure_eq, Error, Result};
use crate::scalar::{ck, lit, Int};
use crate::surface_lattice::DivisorClass;

/// A cubic with reduced rational coefficients, constant term first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalCubic<T: Int> {
    coeffs: [Ratio<T>; 4],
}

impl<T: Int> RationalCubic<T> {
    pub fn new(coeffs: [Ratio<T>; 4]) -> Self {
        // Ratio::new reduces; re-normalize anything built with new_raw
        let coeffs = coeffs.map(|c| Ratio::new(*c.numer(), *c.denom()));
        RationalCubic { coeffs }
    }

    pub fn coefficients(&self) -> &[Ratio<T>; 4] {
        &self.coeffs
    }

    pub fn leading(&self) -> Ratio<T> {
        self.coeffs[3]
    }

    pub fn eval(&self, m: T) -> Result<Ratio<T>> {
        let x = Ratio::from_integer(m);
        self.coeffs
            .iter()
            .rev()
            .try_fold(Ratio::from_integer(T::zero()), |acc, c| {
                acc.checked_mul(&x).and_then(|v| v.checked_add(c))
            })
            .ok_or(Error::Overflow)
    }

    /// `P(m)` as an integer; a fractional value is an internal error.
    pub fn eval_integer(&self, m: T) -> Result<T> {
        let v = self.eval(m)?;
        if v.is_integer() {
            Ok(v.to_integer())
        } else {
            Err(Error::inconsistent(
                "P(m) is integer-valued",
                format!("P({m}) = {v}"),
            ))
        }
    }
}

impl<T: Int> std::fmt::Display for RationalCubic<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [c0, c1, c2, c3] = &self.coeffs;
        write!(f, "({c3})m^3 + ({c2})m^2 + ({c1})m + ({c0})")
    }
}

impl<T: Int> Serialize for RationalCubic<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[T; 2]> = self
            .coeffs
            .iter()
            .map(|c| [*c.numer(), *c.denom()])
            .collect();
        pairs.serialize(serializer)
    }
}

impl<'de, T: Int> Deserialize<'de> for RationalCubic<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let pairs = <[[T; 2]; 4]>::deserialize(deserializer)?;
        if pairs.iter().any(|[_, den]| den.is_zero()) {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(RationalCubic::new(pairs.map(|[n, d]| Ratio::new(n, d))))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct ScrollReport<T: Int> {
    pub params: FamilyParams<T>,
    pub n: T,
    pub d: T,
    pub c1: DivisorClass<T>,
    pub c2: T,
    pub hilbert_poly: RationalCubic<T>,
    /// `(h^0, h^1, h^2, h^3)` of `L` on `X`.
    pub h_of_l: [T; 4],
}

/// `n = h^0(F_e, E) − 1 = 5e+2b+4t+27`.
pub fn embedding_dimension<T: Int>(params: &FamilyParams<T>) -> Result<T> {
    let n = (ck(params.bundle_cohomology()?.h0) - T::one()).get()?;
    let closed =
        (lit(5) * params.e() + lit(2) * params.b() + lit(4) * params.t() + lit(27)).get()?;
    ensure_eq("n = 5e+2b+4t+27", n, closed)?;
    Ok(n)
}

/// `d = L³ = c1(E)² − c2(E)`, checked against `ξ³` in the Chow ring and `8e+5b+7t+40`.
pub fn scroll_degree<T: Int>(params: &FamilyParams<T>) -> Result<T> {
    let chern = params.chern()?;
    let d = (ck(params.surface().intersect(&chern.c1, &chern.c1)?) - chern.c2).get()?;
    let ctx = ScrollContext::new(params.e(), chern)?;
    let xi = ChowClass::xi();
    ensure_eq("d := L³ = c₁²(E) − c₂(E)", ctx.intersect(&[xi, xi, xi])?, d)?;
    ensure_eq(
        "d = L³ = 8e+5b+7t+40",
        d,
        (lit(8) * params.e() + lit(5) * params.b() + lit(7) * params.t() + lit(40)).get()?,
    )?;
    Ok(d)
}

/// `P(m) = χ(X, mL) = (1/6)m³L³ − (1/4)m²L²K + (1/12)mL(K² + c2) + χ(O_X)` with `χ(O_X) = 1`.
///
/// Checked against `χ(F_e, Sym^m E)` for `m = 0..=8`.
pub fn hilbert_polynomial<T: Int>(params: &FamilyParams<T>) -> Result<RationalCubic<T>> {
    let nums = intersection_numbers(params)?;
    let poly = RationalCubic::new([
        Ratio::from_integer(T::one()),
        Ratio::new((ck(nums.k2l) + nums.c2l).get()?, T::lift(12)?),
        Ratio::new((-ck(nums.kl2)).get()?, T::lift(4)?),
        Ratio::new(nums.l3, T::lift(6)?),
    ]);

    let bundle = params.split()?;
    for m in 0u32..=8 {
        let m_t: T = NumCast::from(m).ok_or(Error::Overflow)?;
        ensure_eq(
            "P(m) = χ(Sym^m E)",
            poly.eval_integer(m_t)?,
            bundle.sym_chi(m, &DivisorClass::zero())?,
        )?;
    }
    ensure_eq("P(0) = χ(O_X) = 1", poly.eval_integer(T::zero())?, T::one())?;
    let n = embedding_dimension(params)?;
    ensure_eq(
        "P(1) = n+1",
        poly.eval_integer(T::one())?,
        (ck(n) + T::one()).get()?,
    )?;
    Ok(poly)
}

/// `h^i(X, L) = h^i(F_e, E)`, which is `(n+1, 0, 0, 0)`.
pub fn vanishing_report<T: Int>(params: &FamilyParams<T>) -> Result<[T; 4]> {
    let h = params.bundle_cohomology()?;
    Ok([h.h0, h.h1, h.h2, T::zero()])
}

pub fn scroll_report<T: Int>(params: &FamilyParams<T>) -> Result<ScrollReport<T>> {
    let n = embedding_dimension(params)?;
    let d = scroll_degree(params)?;
    ensure_eq(
        "d−3e−3b−3t−12 = n+1",
        (ck(d) - lit(3) * params.e() - lit(3) * params.b() - lit(3) * params.t() - lit(12))
            .get()?,
        (ck(n) + T::one()).get()?,
    )?;
    let chern = params.chern()?;
    let h_of_l = vanishing_report(params)?;
    ensure_eq(
        "h^i(X, L) = 0, i ≥ 1",
        h_of_l,
        [(ck(n) + T::one()).get()?, T::zero(), T::zero(), T::zero()],
    )?;
    Ok(ScrollReport {
        params: *params,
        n,
        d,
        c1: chern.c1,
        c2: chern.c2,
        hilbert_poly: hilbert_polynomial(params)?,
        h_of_l,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(e: i64, b: i64, t: i64) -> FamilyParams<i64> {
        FamilyParams::new(e, b, t).unwrap()
    }

    #[test]
    fn embedding_dimensions() {
        assert_eq!(embedding_dimension(&p(2, 7, 0)), Ok(51));
        assert_eq!(embedding_dimension(&p(0, 3, 0)), Ok(33));
        assert_eq!(embedding_dimension(&p(1, 5, 0)), Ok(42));
    }

    #[test]
    fn degrees() {
        assert_eq!(scroll_degree(&p(2, 7, 0)), Ok(91));
        assert_eq!(scroll_degree(&p(0, 3, 0)), Ok(55));
        let params = p(0, 3, 0);
        let c = params.chern().unwrap();
        assert_eq!(params.surface().intersect(&c.c1, &c.c1), Ok(72));
        assert_eq!(c.c2, 17);
    }

    #[test]
    fn hilbert_polynomial_values() {
        let poly = hilbert_polynomial(&p(2, 7, 0)).unwrap();
        assert_eq!(poly.eval_integer(0), Ok(1));
        assert_eq!(poly.eval_integer(1), Ok(52));
        assert_eq!(poly.leading(), Ratio::new(91, 6));
    }

    #[test]
    fn vanishing_reports() {
        assert_eq!(vanishing_report(&p(2, 7, 0)), Ok([52, 0, 0, 0]));
        assert_eq!(vanishing_report(&p(0, 3, 0)), Ok([34, 0, 0, 0]));
        assert_eq!(vanishing_report(&p(1, 5, 0)), Ok([43, 0, 0, 0]));
    }

    #[test]
    fn cubic_json_shape() {
        let poly = hilbert_polynomial(&p(2, 7, 0)).unwrap();
        let json = serde_json::to_value(&poly).unwrap();
        assert_eq!(json[3], serde_json::json!([91, 6]));
        assert_eq!(json[0], serde_json::json!([1, 1]));
        let back: RationalCubic<i64> = serde_json::from_value(json).unwrap();
        assert_eq!(back, poly);
    }

    #[test]
    fn cubic_coefficients_are_reduced() {
        let c = RationalCubic::new([
            Ratio::new_raw(2i64, 4),
            Ratio::new_raw(0, 5),
            Ratio::new_raw(-3, 9),
            Ratio::new_raw(6, 3),
        ]);
        let got: Vec<(i64, i64)> = c
            .coefficients()
            .iter()
            .map(|r| (*r.numer(), *r.denom()))
            .collect();
        assert_eq!(got, vec![(1, 2), (0, 1), (-1, 3), (2, 1)]);
    }
}
