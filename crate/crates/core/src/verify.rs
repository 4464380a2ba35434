//! Grid-wide identity suite.
//!
//! Every identity the engine relies on is re-evaluated over a parameter grid,
//! including ones that are otherwise only asserted inside the operations.
//! Grid points are independent, so they are evaluated in parallel and merged
//! in grid order.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bundle_family::FamilyParams;
use crate::chow_ring::{intersection_numbers, ChowClass, ScrollContext};
use crate::error::{Error, Result};
use crate::hilbert_component::{
    check_hypotheses, chi_normal, chi_tangent_relative, component_dimension,
};
use crate::scalar::{ck, lit, Int};
use crate::scroll_invariants::{
    embedding_dimension, hilbert_polynomial, scroll_degree, vanishing_report,
};
use crate::surface_lattice::{DivisorClass, Surface};

pub const CANONICAL: &str = "K_{F_e} ≡ −2C0−(e+2)f";
pub const SERRE: &str = "Serre duality h^i(D) = h^{2−i}(K−D)";
pub const RIEMANN_ROCH: &str = "χ(D) = 1 + ½D·(D−K)";
pub const LATTICE: &str = "h^0(D) = #lattice points of P_D";
pub const EFFECTIVE: &str = "D effective ⟺ h^0(D) > 0";
pub const FIBER_MONOTONE: &str = "h^0(aC0 + cf) nondecreasing in c";
pub const BILINEAR: &str = "intersection form symmetric and bilinear";
pub const CHERN: &str = "c_1(E) = A + B = L + M, c_2(E) = A·B = L·M + 2";
pub const R_INVARIANT: &str = "r = 3e+5+t";
pub const ELL3: &str = "ℓ(c1,c2,3,r) = 0";
pub const ELL2: &str = "ℓ(c1,c2,2,r) = b−t−2e−4 < 0";
pub const BUNDLE_H: &str = "h^0(E) = 5e+2b+4t+28, h^i(E) = 0 (i ≥ 1)";
pub const EMBEDDING: &str = "n = 5e+2b+4t+27";
pub const DEGREE: &str = "d := L³ = c₁²(E) − c₂(E) = 8e+5b+7t+40";
pub const DEGREE_N: &str = "d−3e−3b−3t−12 = n+1";
pub const VANISHING_L: &str = "h^i(X, L) = 0, i ≥ 1";
pub const INTERSECTIONS: &str = "KL², K²L, c_2L, K³, −Kc_2 = 24, c_3 = 8";
pub const GROTHENDIECK: &str = "ξ³ = c1² − c2";
pub const CHOW_AXIOMS: &str = "Chow ring commutative, associative, distributive";
pub const HILBERT_POLY: &str = "P(m) = χ(Sym^m E), P(0) = 1, P(1) = n+1";
pub const INTEGER_VALUED: &str = "P(m) ∈ Z for m ∈ [−6, 6]";
pub const CHI_N: &str = "χ(N) = (d−3e−3b−3t−12)n + 122+21t+21e+21b−3d";
pub const CHI_TX: &str = "χ(T_X) = χ(Sym²E(−c1)) + χ(T_F) = n − 6b + 3e − 2";
pub const FLAGS: &str = "vanishing flags match their windows";
pub const COMPONENT: &str = "dim(X_e) = n(n+1)+9e+20+6t = (n+1)²−1−h^0(T_X)+h^1(T_X)";
pub const WINDOW_V1: &str = "h^1(A−B) = 0 ⟺ b < 6+t+e";
pub const WINDOW_V2: &str = "h^2(B−A) = 0 ⟺ b ≥ 2e+3+t";

/// A deliberate corruption used to check that the suite notices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Use `+2C0 + (e+2)f` as the canonical class.
    CanonicalSign,
}

impl std::str::FromStr for Fault {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "canonical-sign" => Ok(Fault::CanonicalSign),
            other => Err(format!("unknown fault {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub identity: &'static str,
    pub at: String,
    pub detail: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FAIL [{}] at {}: {}",
            self.identity, self.at, self.detail
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Summary {
    /// Assertions evaluated, per identity, in first-seen order.
    pub identities: Vec<(&'static str, usize)>,
    pub failures: Vec<Failure>,
}

impl Summary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn assertions(&self) -> usize {
        self.identities.iter().map(|(_, n)| n).sum()
    }

    fn record(&mut self, identity: &'static str, at: &str, outcome: Result<()>) {
        match self
            .identities
            .iter_mut()
            .find(|(name, _)| *name == identity)
        {
            Some((_, n)) => *n += 1,
            None => self.identities.push((identity, 1)),
        }
        if let Err(err) = outcome {
            let detail = match err {
                Error::Inconsistency {
                    identity: inner,
                    detail,
                } if inner == identity => detail,
                other => other.to_string(),
            };
            self.failures.push(Failure {
                identity,
                at: at.to_string(),
                detail,
            });
        }
    }

    fn merge(&mut self, other: Summary) {
        for (name, n) in other.identities {
            match self.identities.iter_mut().find(|(k, _)| *k == name) {
                Some((_, m)) => *m += n,
                None => self.identities.push((name, n)),
            }
        }
        self.failures.extend(other.failures);
    }
}

fn check(cond: bool, identity: &'static str, detail: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Inconsistency {
            identity,
            detail: detail(),
        })
    }
}

/// Every valid `(e, b, t)` with `e ≤ e_max`, `t ≤ t_max`, sorted by `(e, t, b)`.
pub fn family_grid<T: Int>(e_max: T, t_max: T) -> Result<Vec<FamilyParams<T>>> {
    if e_max < T::zero() || t_max < T::zero() {
        return Err(Error::InvalidInput(format!(
            "grid bounds must be ≥ 0, got e_max={e_max}, t_max={t_max}"
        )));
    }
    let mut out = Vec::new();
    let mut e = T::zero();
    while e <= e_max {
        let mut t = T::zero();
        while t <= t_max {
            let mut b = T::lift(-1)?;
            let top = (lit(2) * e + lit(3) + t).get()?;
            while b <= top {
                if let Ok(p) = FamilyParams::new(e, b, t) {
                    out.push(p);
                }
                b = (ck(b) + T::one()).get()?;
            }
            t = (ck(t) + T::one()).get()?;
        }
        e = (ck(e) + T::one()).get()?;
    }
    Ok(out)
}

/// The identity suite, optionally with a fault injected.
#[derive(Debug, Clone, Copy, Default)]
pub struct Suite {
    pub fault: Option<Fault>,
}

impl Suite {
    pub fn new() -> Self {
        Suite::default()
    }

    pub fn with_fault(fault: Fault) -> Self {
        Suite { fault: Some(fault) }
    }

    fn canonical<T: Int>(&self, surface: &Surface<T>) -> Result<DivisorClass<T>> {
        let k = surface.canonical_class()?;
        match self.fault {
            Some(Fault::CanonicalSign) => k.negated(),
            None => Ok(k),
        }
    }

    pub fn run<T: Int>(&self, e_max: T, t_max: T) -> Result<Summary> {
        let grid = family_grid(e_max, t_max)?;
        let mut surfaces = Vec::new();
        let mut e = T::zero();
        while e <= e_max {
            surfaces.push(Surface::new(e)?);
            e = (ck(e) + T::one()).get()?;
        }

        let mut summary = Summary::default();
        let per_surface: Vec<Summary> = surfaces
            .par_iter()
            .map(|s| self.surface_checks(s))
            .collect();
        let per_member: Vec<Summary> = grid.par_iter().map(|p| self.check_member(p)).collect();
        for s in per_surface.into_iter().chain(per_member) {
            summary.merge(s);
        }
        Ok(summary)
    }

    fn surface_checks<T: Int>(&self, surface: &Surface<T>) -> Summary {
        let mut out = Summary::default();
        let at = format!("F_{}", surface.e());
        let window: Vec<i64> = (-12..=12).collect();
        let class = |a: i64, c: i64| -> Result<DivisorClass<T>> {
            Ok(DivisorClass::new(T::lift(a)?, T::lift(c)?))
        };

        // toric canonical class: minus the sum of the four boundary divisors
        // f, C0, f, C0 + e·f
        let toric = (|| {
            let f = DivisorClass::fiber();
            let c0 = DivisorClass::section();
            let d4 = c0.plus(&f.scaled(surface.e())?)?;
            f.plus(&c0)?.plus(&f)?.plus(&d4)?.negated()
        })();
        out.record(
            CANONICAL,
            &at,
            toric.and_then(|toric| {
                let k = self.canonical(surface)?;
                check(k == toric, CANONICAL, || {
                    format!("engine K = {k}, toric K = {toric}")
                })
            }),
        );

        for &a in &window {
            for &c in &window {
                let outcome = (|| {
                    let d = class(a, c)?;
                    let k = self.canonical(surface)?;
                    let h = surface.cohomology(&d)?;
                    let hd = surface.cohomology(&k.minus(&d)?)?;
                    check(
                        h.h0 == hd.h2 && h.h1 == hd.h1 && h.h2 == hd.h0,
                        SERRE,
                        || format!("D = {d}: {h:?} vs K−D: {hd:?}"),
                    )
                })();
                out.record(SERRE, &at, outcome);

                let outcome = (|| {
                    let d = class(a, c)?;
                    let k = self.canonical(surface)?;
                    let twice = surface.intersect(&d, &d.minus(&k)?)?;
                    check(twice.is_even(), RIEMANN_ROCH, || {
                        format!("D·(D−K) = {twice} is odd")
                    })?;
                    let rr = (ck(twice / T::lift(2)?) + T::one()).get()?;
                    let h = surface.cohomology(&d)?;
                    check(
                        rr == h.chi && h.chi == h.h0 - h.h1 + h.h2,
                        RIEMANN_ROCH,
                        || format!("D = {d}: RR gives {rr}, table {h:?}"),
                    )
                })();
                out.record(RIEMANN_ROCH, &at, outcome);

                let outcome = (|| {
                    let d = class(a, c)?;
                    let s2 = class(c, -a)?;
                    let s3 = class(a + 1, 2 * c - 3)?;
                    let i12 = surface.intersect(&d, &s2)?;
                    let i21 = surface.intersect(&s2, &d)?;
                    let lin = surface.intersect(&d, &s2.plus(&s3)?)?;
                    let split = (ck(i12) + surface.intersect(&d, &s3)?).get()?;
                    check(i12 == i21 && lin == split, BILINEAR, || format!("D = {d}"))
                })();
                out.record(BILINEAR, &at, outcome);
            }
        }

        for a in -3..=8 {
            for c in -3..=14 {
                let outcome = (|| {
                    let d = class(a, c)?;
                    let h0 = surface.h0(&d)?;
                    let oracle = surface.h0_lattice_oracle(&d)?;
                    check(h0 == oracle, LATTICE, || {
                        format!("D = {d}: {h0} vs {oracle}")
                    })
                })();
                out.record(LATTICE, &at, outcome);

                let outcome = (|| {
                    let d = class(a, c)?;
                    let h0 = surface.h0(&d)?;
                    check(
                        surface.is_effective(&d) == (h0 > T::zero()),
                        EFFECTIVE,
                        || format!("D = {d}, h0 = {h0}"),
                    )
                })();
                out.record(EFFECTIVE, &at, outcome);

                if a >= 0 {
                    let outcome = (|| {
                        let h = surface.h0(&class(a, c)?)?;
                        let next = surface.h0(&class(a, c + 1)?)?;
                        check(next >= h, FIBER_MONOTONE, || format!("a = {a}, c = {c}"))
                    })();
                    out.record(FIBER_MONOTONE, &at, outcome);
                }
            }
        }
        out
    }

    /// Every per-member identity, for a single family member.
    pub fn check_member<T: Int>(&self, params: &FamilyParams<T>) -> Summary {
        let mut out = Summary::default();
        let (e, b, t) = (params.e(), params.b(), params.t());
        let at = format!("(e,b,t) = ({e},{b},{t})");

        out.record(CHERN, &at, params.chern().map(|_| ()));
        out.record(
            R_INVARIANT,
            &at,
            (|| {
                let r = params.invariant_r(T::lift(3)?)?;
                let expected = (lit(3) * e + lit(5) + t).get()?;
                check(r == expected, R_INVARIANT, || {
                    format!("r = {r}, expected {expected}")
                })
            })(),
        );
        out.record(
            ELL3,
            &at,
            params.uniformity().and_then(|ev| {
                check(ev.uniform && ev.ell3.is_zero(), ELL3, || {
                    format!("ℓ3 = {}", ev.ell3)
                })
            }),
        );
        out.record(ELL2, &at, params.splitting_type().map(|_| ()));
        out.record(BUNDLE_H, &at, params.bundle_cohomology().map(|_| ()));
        out.record(EMBEDDING, &at, embedding_dimension(params).map(|_| ()));
        out.record(DEGREE, &at, scroll_degree(params).map(|_| ()));
        out.record(
            DEGREE_N,
            &at,
            (|| {
                let n = embedding_dimension(params)?;
                let d = scroll_degree(params)?;
                let lhs = (ck(d) - lit(3) * e - lit(3) * b - lit(3) * t - lit(12)).get()?;
                check(lhs == n + T::one(), DEGREE_N, || {
                    format!("{lhs} vs n+1 = {}", n + T::one())
                })
            })(),
        );
        out.record(
            VANISHING_L,
            &at,
            (|| {
                let h = vanishing_report(params)?;
                let n = embedding_dimension(params)?;
                check(
                    h == [n + T::one(), T::zero(), T::zero(), T::zero()],
                    VANISHING_L,
                    || format!("{h:?}"),
                )
            })(),
        );
        out.record(INTERSECTIONS, &at, intersection_numbers(params).map(|_| ()));
        out.record(
            GROTHENDIECK,
            &at,
            (|| {
                let ctx = ScrollContext::from_params(params)?;
                let xi = ChowClass::xi();
                let lhs = ctx.intersect(&[xi, xi, xi])?;
                let rhs = (ck(ctx.surface().intersect(&ctx.c1, &ctx.c1)?) - ctx.c2).get()?;
                check(lhs == rhs, GROTHENDIECK, || format!("{lhs} vs {rhs}"))
            })(),
        );
        out.record(CHOW_AXIOMS, &at, self.chow_axioms(params));
        out.record(HILBERT_POLY, &at, hilbert_polynomial(params).map(|_| ()));
        out.record(
            INTEGER_VALUED,
            &at,
            (|| {
                let poly = hilbert_polynomial(params)?;
                for m in -6..=6 {
                    poly.eval_integer(T::lift(m)?)?;
                }
                Ok(())
            })(),
        );
        out.record(CHI_N, &at, chi_normal(params).map(|_| ()));
        out.record(
            CHI_TX,
            &at,
            (|| {
                let via_sequence = chi_tangent_relative(params)?;
                let n = embedding_dimension(params)?;
                let closed = (ck(n) - lit(6) * b + lit(3) * e - lit(2)).get()?;
                check(via_sequence == closed, CHI_TX, || {
                    format!("{via_sequence} vs {closed}")
                })
            })(),
        );
        out.record(FLAGS, &at, check_hypotheses(params).map(|_| ()));
        if params.in_paper_regime().unwrap_or(false) {
            out.record(COMPONENT, &at, component_dimension(params).map(|_| ()));
        }
        // the windows are statements about line bundles, so sweep b past the
        // validity bound once per (e, t), from its lowest member b = e
        if b == e {
            self.window_sweeps(e, t, &mut out);
        }
        out
    }

    fn window_sweeps<T: Int>(&self, e: T, t: T, out: &mut Summary) {
        let at = format!("(e,t) = ({e},{t})");
        let surface = match Surface::new(e) {
            Ok(s) => s,
            Err(err) => {
                out.record(WINDOW_V1, &at, Err(err));
                return;
            }
        };
        let sweep = (|| -> Result<Vec<T>> {
            let hi = (lit(3) * e + t + lit(12)).get()?;
            let mut bs = Vec::new();
            let mut b = T::lift(-1)?;
            while b <= hi {
                bs.push(b);
                b = b + T::one();
            }
            Ok(bs)
        })();
        let bs = match sweep {
            Ok(bs) => bs,
            Err(err) => {
                out.record(WINDOW_V1, &at, Err(err));
                return;
            }
        };
        for b in bs {
            let outcome = (|| {
                let a_minus_b =
                    DivisorClass::new(T::lift(2)?, (lit(3) * e + lit(4) + t - b).get()?);
                let h1 = surface.cohomology(&a_minus_b)?.h1;
                let bound = (lit(6) + t + e).get()?;
                check(h1.is_zero() == (b < bound), WINDOW_V1, || {
                    format!("b = {b}, h1 = {h1}")
                })
            })();
            out.record(WINDOW_V1, &at, outcome);
            let outcome = (|| {
                let b_minus_a =
                    DivisorClass::new(T::lift(-2)?, (-(lit(3) * e + lit(4) + t - b)).get()?);
                let h2 = surface.cohomology(&b_minus_a)?.h2;
                let bound = (lit(2) * e + lit(3) + t).get()?;
                check(h2.is_zero() == (b >= bound), WINDOW_V2, || {
                    format!("b = {b}, h2 = {h2}")
                })
            })();
            out.record(WINDOW_V2, &at, outcome);
        }
    }

    fn chow_axioms<T: Int>(&self, params: &FamilyParams<T>) -> Result<()> {
        let ctx = ScrollContext::from_params(params)?;
        let seed = (params.e().to_i128() as u64) << 32
            ^ (params.b().to_i128() as u64) << 16
            ^ params.t().to_i128() as u64;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut random_class = || -> Result<ChowClass<T>> {
            let mut c = [T::zero(); 8];
            for v in &mut c {
                *v = T::lift(rng.random_range(-9..=9))?;
            }
            Ok(ChowClass {
                z: c[0],
                xi: c[1],
                h1: c[2],
                h2: c[3],
                xih1: c[4],
                xih2: c[5],
                p: c[6],
                pt: c[7],
            })
        };
        for _ in 0..8 {
            let (x, y, z) = (random_class()?, random_class()?, random_class()?);
            let xy = ctx.multiply(&x, &y)?;
            check(xy == ctx.multiply(&y, &x)?, CHOW_AXIOMS, || {
                "xy ≠ yx".into()
            })?;
            let left = ctx.multiply(&xy, &z)?;
            let right = ctx.multiply(&x, &ctx.multiply(&y, &z)?)?;
            check(left == right, CHOW_AXIOMS, || "(xy)z ≠ x(yz)".into())?;
            let dist = ctx.multiply(&x, &y.plus(&z)?)?;
            check(
                dist == xy.plus(&ctx.multiply(&x, &z)?)?,
                CHOW_AXIOMS,
                || "x(y+z) ≠ xy+xz".into(),
            )?;
        }
        Ok(())
    }
}

/// Number of assertions per identity, keyed by identity, for reporting.
pub fn counts(summary: &Summary) -> BTreeMap<&'static str, usize> {
    summary.identities.iter().copied().collect()
}
