//! The family of rank-two bundles `E` on F_e with `c1(E) = 4C0 + (b_l + b_m)f`.
//!
//! `E` is built as an extension `0 → L → E → M ⊗ J_W → 0` with
//! `L = C0 + b f`, `M = 3C0 + (3e+6+t) f` and `W` two reduced points on one
//! fibre. It is uniform of splitting type (3,1) and sits in
//! `0 → A → E → B → 0` with `A = 3C0 + (3e+5+t)f`, `B = C0 + (b+1)f`; the
//! engine works with the split form `A ⊕ B` and keeps the extension only to
//! cross-check Chern data.

use num_traits::NumCast;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_eq, Error, ParamViolation, Result};
use crate::scalar::{checked_sum, ck, lit, Int};
use crate::surface_lattice::{CohomologyTable, DivisorClass, Surface};

/// A validated parameter triple `(e, b, t)`, where `b = b_l` and `b_m = 3e+6+t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(bound = "", try_from = "RawParams<T>")]
pub struct FamilyParams<T: Int> {
    e: T,
    b: T,
    t: T,
}

#[derive(Deserialize)]
#[serde(bound = "")]
struct RawParams<T: Int> {
    e: T,
    b: T,
    t: T,
}

impl<T: Int> TryFrom<RawParams<T>> for FamilyParams<T> {
    type Error = Error;
    fn try_from(raw: RawParams<T>) -> Result<Self> {
        FamilyParams::new(raw.e, raw.b, raw.t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct SplitBundle<T: Int> {
    pub e: T,
    /// `A`, the rank-one subbundle of degree 3 on the fibres.
    pub a_line: DivisorClass<T>,
    /// `B`, the quotient line bundle.
    pub b_line: DivisorClass<T>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct ChernData<T: Int> {
    pub c1: DivisorClass<T>,
    pub c2: T,
}

/// The defining extension `0 → L → E → M ⊗ J_W → 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct ExtensionData<T: Int> {
    pub l: DivisorClass<T>,
    pub m: DivisorClass<T>,
    /// Length of `W`.
    pub w_len: T,
}

/// Outcome of the uniformity test with the numbers it was decided on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct UniformityEvidence<T: Int> {
    pub uniform: bool,
    pub r: T,
    pub ell3: T,
    pub ell2: T,
    pub splitting_type: (T, T),
}

impl<T: Int> FamilyParams<T> {
    /// Validates `(e, b, t)` against the existence and very-ampleness bounds.
    ///
    /// `b_m − b_l − e − 2 > 0` with `b_m = 3e+6+t` is the same inequality as
    /// `b < 2e+4+t`, so only the latter is tested.
    pub fn new(e: T, b: T, t: T) -> Result<Self> {
        let fail = |violation| {
            Err(Error::InvalidParams {
                violation,
                detail: format!("e={e}, b={b}, t={t}"),
            })
        };
        if e < T::zero() {
            return fail(ParamViolation::NegativeE);
        }
        if t < T::zero() {
            return fail(ParamViolation::NegativeT);
        }
        if b <= T::lift(-2)? {
            return fail(ParamViolation::BTooSmall);
        }
        if b >= (lit(2) * e + lit(4) + t).get()? {
            return fail(ParamViolation::BTooLarge);
        }
        if b <= (ck(e) - T::one()).get()? {
            return fail(ParamViolation::NotAmple);
        }
        Ok(FamilyParams { e, b, t })
    }

    pub fn e(&self) -> T {
        self.e
    }

    pub fn b(&self) -> T {
        self.b
    }

    pub fn t(&self) -> T {
        self.t
    }

    pub fn surface(&self) -> Surface<T> {
        Surface::new(self.e).expect("validated e ≥ 0")
    }

    /// `b_m = 3e+6+t`.
    pub fn b_m(&self) -> Result<T> {
        (lit(3) * self.e + lit(6) + self.t).get()
    }

    /// Whether `b = 2e+3+t` and `e ≤ 2`, the range where the Hilbert-scheme
    /// statements are proved.
    pub fn in_paper_regime(&self) -> Result<bool> {
        Ok(self.e <= T::lift(2)? && self.b == (lit(2) * self.e + lit(3) + self.t).get()?)
    }

    pub fn split(&self) -> Result<SplitBundle<T>> {
        Ok(SplitBundle {
            e: self.e,
            a_line: DivisorClass::new(T::lift(3)?, (lit(3) * self.e + lit(5) + self.t).get()?),
            b_line: DivisorClass::new(T::one(), (ck(self.b) + T::one()).get()?),
        })
    }

    pub fn extension(&self) -> Result<ExtensionData<T>> {
        Ok(ExtensionData {
            l: DivisorClass::new(T::one(), self.b),
            m: DivisorClass::new(T::lift(3)?, self.b_m()?),
            w_len: T::lift(2)?,
        })
    }

    /// `c1 = 4C0 + (b+3e+6+t)f`, `c2 = 3b+8+t`, checked against `A + B`, `A·B`
    /// and against `L + M`, `L·M + 2`.
    pub fn chern(&self) -> Result<ChernData<T>> {
        let closed = ChernData {
            c1: DivisorClass::new(
                T::lift(4)?,
                (ck(self.b) + lit(3) * self.e + lit(6) + self.t).get()?,
            ),
            c2: (lit(3) * self.b + lit(8) + self.t).get()?,
        };
        let surface = self.surface();

        let split = self.split()?;
        ensure_eq(
            "c_1(E) = A + B",
            split.a_line.plus(&split.b_line)?,
            closed.c1,
        )?;
        ensure_eq(
            "c_2(E) = A·B = 3b+8+t",
            surface.intersect(&split.a_line, &split.b_line)?,
            closed.c2,
        )?;

        let ext = self.extension()?;
        ensure_eq("c_1(E) = L + M", ext.l.plus(&ext.m)?, closed.c1)?;
        ensure_eq(
            "c_2(E) = L·M + 2",
            (ck(surface.intersect(&ext.l, &ext.m)?) + ext.w_len).get()?,
            closed.c2,
        )?;
        Ok(closed)
    }

    /// `h^0(E(−d1·C0 + ℓ·f))` through the split form.
    pub fn twisted_h0(&self, d1: T, ell: T) -> Result<T> {
        let split = self.split()?;
        let surface = self.surface();
        let twist = DivisorClass::new((-ck(d1)).get()?, ell);
        let h_a = surface.h0(&split.a_line.plus(&twist)?)?;
        let h_b = surface.h0(&split.b_line.plus(&twist)?)?;
        (ck(h_a) + h_b).get()
    }

    /// `r = −inf{ℓ : h^0(E(−d1·C0 + ℓ·f)) ≠ 0}` for `d1 ∈ {1, 2, 3}`.
    ///
    /// `h^0` is nondecreasing in `ℓ`, so the first nonzero value in the
    /// window `|ℓ| ≤ (3e+6+t) + |b| + 4` is the infimum.
    pub fn invariant_r(&self, d1: T) -> Result<T> {
        if d1 < T::one() || d1 > T::lift(3)? {
            return Err(Error::InvalidInput(format!(
                "d1 must be 1, 2 or 3, got {d1}"
            )));
        }
        let radius = (ck(self.b_m()?) + self.b.abs() + lit(4)).get()?;
        let lo = (-ck(radius)).get()?;
        if !self.twisted_h0(d1, lo)?.is_zero() {
            return Err(Error::inconsistent(
                "−r := inf{ℓ : h^0(E(−d1C0+ℓf)) ≠ 0}",
                format!("sections already exist at the window floor ℓ = {lo}"),
            ));
        }
        let mut ell = lo;
        while ell <= radius {
            if !self.twisted_h0(d1, ell)?.is_zero() {
                return (-ck(ell)).get();
            }
            ell = (ck(ell) + T::one()).get()?;
        }
        Err(Error::inconsistent(
            "−r := inf{ℓ : h^0(E(−d1C0+ℓf)) ≠ 0}",
            format!("no transition in [{lo}, {radius}]"),
        ))
    }

    /// `ℓ(c1, c2, d1, r) = γ + a(d1·e − r) − (b_l+b_m)·d1 + 2·d1·r − d1²·e` with `a = 4`.
    pub fn ell_invariant(&self, d1: T, r: T) -> Result<T> {
        let gamma = (lit(3) * self.b + lit(8) + self.t).get()?;
        let b_sum = (ck(self.b) + self.b_m()?).get()?;
        (ck(gamma) + lit(4) * (ck(d1) * self.e - r) - ck(b_sum) * d1 + lit(2) * d1 * r
            - ck(d1) * d1 * self.e)
            .get()
    }

    /// Evaluates both uniformity tests without failing on a negative outcome.
    pub fn uniformity(&self) -> Result<UniformityEvidence<T>> {
        let three = T::lift(3)?;
        let two = T::lift(2)?;
        let r = self.invariant_r(three)?;
        let ell3 = self.ell_invariant(three, r)?;
        let ell2 = self.ell_invariant(two, self.invariant_r(two)?)?;
        Ok(UniformityEvidence {
            uniform: ell3.is_zero(),
            r,
            ell3,
            ell2,
            splitting_type: (three, T::one()),
        })
    }

    /// Same as [`uniformity`](Self::uniformity); `uniform` is true iff `ℓ(·, 3, r) = 0`.
    pub fn is_uniform(&self) -> Result<UniformityEvidence<T>> {
        self.uniformity()
    }

    /// The generic splitting type, which is (3,1) for every member.
    ///
    /// (2,2) is ruled out by `ℓ(·, 2, r) = b−t−2e−4 < 0` (independent of `r`),
    /// and `ℓ(·, 3, r) = 0` gives uniformity.
    pub fn splitting_type(&self) -> Result<(T, T)> {
        let ev = self.uniformity()?;
        let closed = (ck(self.b) - self.t - lit(2) * self.e - lit(4)).get()?;
        ensure_eq("ℓ(c1,c2,2,r) = b−t−2e−4", ev.ell2, closed)?;
        let mut r = T::zero();
        while r <= T::lift(40)? {
            ensure_eq(
                "ℓ(c1,c2,2,r) = b−t−2e−4",
                self.ell_invariant(T::lift(2)?, r)?,
                closed,
            )?;
            r = r + T::one();
        }
        if ev.ell2 >= T::zero() {
            return Err(Error::inconsistent(
                "ℓ(c1,c2,2,r) < 0",
                format!("got {}", ev.ell2),
            ));
        }
        ensure_eq("ℓ(c1,c2,3,r) = 0", ev.ell3, T::zero())?;
        Ok(ev.splitting_type)
    }

    /// `h^i(E) = h^i(A) + h^i(B)`, with `h^0(E) = 5e+2b+4t+28` and no higher cohomology.
    pub fn bundle_cohomology(&self) -> Result<CohomologyTable<T>> {
        let split = self.split()?;
        let surface = self.surface();
        let ha = surface.cohomology(&split.a_line)?;
        let hb = surface.cohomology(&split.b_line)?;
        ensure_eq(
            "h^0(A) = 6e+4t+24",
            ha.h0,
            (lit(6) * self.e + lit(4) * self.t + lit(24)).get()?,
        )?;
        ensure_eq(
            "h^0(B) = 2b+4−e",
            hb.h0,
            (lit(2) * self.b + lit(4) - self.e).get()?,
        )?;
        ensure_eq("h^i(A) = 0, i ≥ 1", (ha.h1, ha.h2), (T::zero(), T::zero()))?;
        ensure_eq("h^i(B) = 0, i ≥ 1", (hb.h1, hb.h2), (T::zero(), T::zero()))?;
        let total = ha.plus(&hb)?;
        ensure_eq(
            "h^0(E) = 5e+2b+4t+28",
            total.h0,
            (lit(5) * self.e + lit(2) * self.b + lit(4) * self.t + lit(28)).get()?,
        )?;
        Ok(total)
    }

    /// Cohomology of `Sym²E ⊗ O(−c1)` from its filtration with graded pieces
    /// `B − A`, `O`, `A − B`.
    ///
    /// Refuses when `h^1(A − B) ≠ 0`: then `E` need not split and the sum of
    /// the graded pieces only bounds the answer.
    pub fn sym2_twisted_cohomology(&self) -> Result<CohomologyTable<T>> {
        let split = self.split()?;
        let surface = self.surface();
        let a_minus_b = split.a_line.minus(&split.b_line)?;
        let b_minus_a = a_minus_b.negated()?;
        let h_ab = surface.cohomology(&a_minus_b)?;
        if !h_ab.h1.is_zero() {
            return Err(Error::NotSplit(h_ab.h1.to_string()));
        }
        let h_o = surface.cohomology(&DivisorClass::zero())?;
        let h_ba = surface.cohomology(&b_minus_a)?;
        h_ab.plus(&h_o)?.plus(&h_ba)
    }
}

impl<T: Int> SplitBundle<T> {
    pub fn surface(&self) -> Surface<T> {
        Surface::new(self.e).expect("split bundle over a valid surface")
    }

    pub fn chern(&self) -> Result<ChernData<T>> {
        Ok(ChernData {
            c1: self.a_line.plus(&self.b_line)?,
            c2: self.surface().intersect(&self.a_line, &self.b_line)?,
        })
    }

    /// `χ(Sym^m(A ⊕ B) ⊗ twist) = Σ_{i=0..m} χ(iA + (m−i)B + twist)`.
    pub fn sym_chi(&self, m: u32, twist: &DivisorClass<T>) -> Result<T> {
        let surface = self.surface();
        let terms = (0..=m)
            .map(|i| {
                let i_t: T = NumCast::from(i).ok_or(Error::Overflow)?;
                let j_t: T = NumCast::from(m - i).ok_or(Error::Overflow)?;
                let class = self
                    .a_line
                    .scaled(i_t)?
                    .plus(&self.b_line.scaled(j_t)?)?
                    .plus(twist)?;
                surface.euler_characteristic(&class)
            })
            .collect::<Result<Vec<T>>>()?;
        checked_sum(terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(e: i64, b: i64, t: i64) -> FamilyParams<i64> {
        FamilyParams::new(e, b, t).unwrap()
    }

    fn violation(e: i64, b: i64, t: i64) -> ParamViolation {
        match FamilyParams::new(e, b, t) {
            Err(Error::InvalidParams { violation, .. }) => violation,
            other => panic!("expected a violation, got {other:?}"),
        }
    }

    #[test]
    fn deserialization_validates() {
        let ok: FamilyParams<i64> = serde_json::from_str(r#"{"e":2,"b":7,"t":0}"#).unwrap();
        assert_eq!(ok, FamilyParams::new(2, 7, 0).unwrap());
        let bad = serde_json::from_str::<FamilyParams<i64>>(r#"{"e":0,"b":4,"t":0}"#);
        assert!(bad.unwrap_err().to_string().contains("b_l < 2e+4+t"));
    }

    #[test]
    fn validation() {
        assert!(FamilyParams::new(2i64, 7, 0).is_ok());
        assert_eq!(violation(0, 4, 0), ParamViolation::BTooLarge);
        assert_eq!(violation(1, -2, 5), ParamViolation::BTooSmall);
        assert_eq!(violation(1, 3, -1), ParamViolation::NegativeT);
        assert_eq!(violation(3, 2, 0), ParamViolation::NotAmple);
        assert_eq!(violation(-1, 0, 0), ParamViolation::NegativeE);
    }

    #[test]
    fn violation_messages_name_the_inequality() {
        let msg = FamilyParams::new(0i64, 4, 0).unwrap_err().to_string();
        assert!(msg.contains("b_l < 2e+4+t"), "{msg}");
        let msg = FamilyParams::new(3i64, 2, 0).unwrap_err().to_string();
        assert!(msg.contains("ampleness consequence violated"), "{msg}");
    }

    #[test]
    fn split_forms() {
        let dc = DivisorClass::new;
        let s = p(2, 7, 0).split().unwrap();
        assert_eq!((s.a_line, s.b_line), (dc(3, 11), dc(1, 8)));
        let s = p(0, 3, 0).split().unwrap();
        assert_eq!((s.a_line, s.b_line), (dc(3, 5), dc(1, 4)));
        let s = p(1, 5, 0).split().unwrap();
        assert_eq!((s.a_line, s.b_line), (dc(3, 8), dc(1, 6)));
    }

    #[test]
    fn chern_data() {
        let c = p(2, 7, 0).chern().unwrap();
        assert_eq!((c.c1, c.c2), (DivisorClass::new(4, 19), 29));
        let c = p(0, 3, 0).chern().unwrap();
        assert_eq!((c.c1, c.c2), (DivisorClass::new(4, 9), 17));

        let params = p(2, 7, 0);
        let s = params.surface();
        let split = params.split().unwrap();
        let ext = params.extension().unwrap();
        assert_eq!(s.intersect(&split.a_line, &split.b_line), Ok(29));
        assert_eq!(s.intersect(&ext.l, &ext.m).unwrap() + 2, 29);
    }

    #[test]
    fn invariant_r_values() {
        assert_eq!(p(2, 7, 0).invariant_r(3), Ok(11));
        assert_eq!(p(0, 3, 0).invariant_r(3), Ok(5));
        // scan by hand: A − 3C0 + ℓf = (0, 8 + ℓ) first has sections at ℓ = −8
        assert_eq!(p(1, 5, 0).invariant_r(3), Ok(8));
        assert!(matches!(
            p(1, 5, 0).invariant_r(4),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn ell_values() {
        assert_eq!(p(2, 7, 0).ell_invariant(2, 11), Ok(-1));
        assert_eq!(p(2, 7, 0).ell_invariant(3, 11), Ok(0));
        assert_eq!(p(0, 3, 0).ell_invariant(2, 5), Ok(-1));
    }

    #[test]
    fn splitting_types() {
        assert_eq!(p(2, 7, 0).splitting_type(), Ok((3, 1)));
        assert_eq!(p(0, 3, 0).splitting_type(), Ok((3, 1)));
        assert_eq!(p(1, 4, 2).splitting_type(), Ok((3, 1)));
    }

    #[test]
    fn uniformity_evidence() {
        let ev = p(2, 7, 0).is_uniform().unwrap();
        assert_eq!((ev.uniform, ev.r, ev.ell3, ev.ell2), (true, 11, 0, -1));
        let ev = p(0, 3, 0).is_uniform().unwrap();
        assert_eq!((ev.uniform, ev.r, ev.ell3, ev.ell2), (true, 5, 0, -1));
        let ev = p(2, 5, 3).is_uniform().unwrap();
        assert!(ev.uniform);
        assert_eq!(ev.ell2, -6);
    }

    #[test]
    fn bundle_cohomology_values() {
        let h = p(2, 7, 0).bundle_cohomology().unwrap();
        assert_eq!((h.h0, h.h1, h.h2), (52, 0, 0));
        assert_eq!(p(0, 3, 0).bundle_cohomology().unwrap().h0, 34);
        let params = p(2, 4, 0);
        let a = params.split().unwrap().a_line;
        assert_eq!(params.surface().h0(&a), Ok(36));
    }

    #[test]
    fn sym_chi_values() {
        let bundle = p(2, 7, 0).split().unwrap();
        assert_eq!(bundle.sym_chi(0, &DivisorClass::zero()), Ok(1));
        assert_eq!(bundle.sym_chi(1, &DivisorClass::zero()), Ok(52));
        let minus_c1 = bundle.chern().unwrap().c1.negated().unwrap();
        assert_eq!(bundle.sym_chi(2, &minus_c1), Ok(7));
    }

    #[test]
    fn sym2_twisted_values() {
        for (e, b, t) in [(2, 7, 0), (0, 3, 0), (1, 5, 0)] {
            let h = p(e, b, t).sym2_twisted_cohomology().unwrap();
            assert_eq!((h.h0, h.h1, h.h2), (7, 0, 0), "({e},{b},{t})");
        }
    }

    #[test]
    fn sym2_refuses_possibly_nonsplit_extensions() {
        // e = 3, b = 9 ≥ 6+t+e: h^1(A−B) ≠ 0
        let params = p(3, 9, 0);
        assert!(matches!(
            params.sym2_twisted_cohomology(),
            Err(Error::NotSplit(_))
        ));
        // the bundle's own cohomology is still determined
        assert_eq!(params.bundle_cohomology().unwrap().h0, 15 + 18 + 28);
    }
}
