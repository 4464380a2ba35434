//! Acceptance criteria 1–10, one line per criterion, exact equality throughout.

use std::process::ExitCode;
use std::time::Instant;

use hirzebruch::verify::{self, Suite};
use hirzebruch::{
    chi_normal, component_dimension, embedding_dimension, family_grid, hilbert_polynomial,
    intersection_numbers, scroll_degree, scroll_locus_codim, tangent_cohomology, ChowClass64,
    DivisorClass64, FamilyParams64, ScrollContext64,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! require_eq {
    ($what:expr, $at:expr, $got:expr, $want:expr) => {{
        let (got, want) = ($got, $want);
        if got != want {
            return Err(format!(
                "{} at {:?}: got {:?}, expected {:?}",
                $what, $at, got, want
            ));
        }
    }};
}

fn full_grid() -> Vec<FamilyParams64> {
    family_grid(4, 6).expect("grid")
}

/// `e ∈ {0,1,2}`, `t ∈ [0,6]`, `b = 2e+3+t`.
fn component_grid() -> Vec<FamilyParams64> {
    (0..=2)
        .flat_map(|e| {
            (0..=6).map(move |t| FamilyParams64::new(e, 2 * e + 3 + t, t).expect("valid"))
        })
        .collect()
}

fn key(p: &FamilyParams64) -> (i64, i64, i64) {
    (p.e(), p.b(), p.t())
}

fn ell_by_definition(p: &FamilyParams64, d1: i64, r: i64) -> i64 {
    // γ + 4(d1·e − r) − (b + b_m)·d1 + 2·d1·r − d1²·e with γ = c2(E) = 3b+8+t
    let (e, b, t) = key(p);
    let b_m = 3 * e + 6 + t;
    let gamma = 3 * b + 8 + t;
    gamma + 4 * (d1 * e - r) - (b + b_m) * d1 + 2 * d1 * r - d1 * d1 * e
}

fn criterion_1() -> Outcome {
    let grid = full_grid();
    for p in &grid {
        let (e, b, t) = key(p);
        let r = p.invariant_r(3).map_err(|err| err.to_string())?;
        require_eq!("r", key(p), r, 3 * e + 5 + t);
        let ell3 = p.ell_invariant(3, r).map_err(|err| err.to_string())?;
        require_eq!("ℓ(3, r)", key(p), ell3, 0);
        require_eq!(
            "ℓ(3, r) by definition",
            key(p),
            ell_by_definition(p, 3, r),
            0
        );
        let ell2 = p.ell_invariant(2, r).map_err(|err| err.to_string())?;
        require_eq!("ℓ(2, r)", key(p), ell2, b - t - 2 * e - 4);
        require_eq!(
            "ℓ(2, r) by definition",
            key(p),
            ell_by_definition(p, 2, r),
            ell2
        );
        if ell2 >= 0 {
            return Err(format!("ℓ(2, r) = {ell2} ≥ 0 at {:?}", key(p)));
        }
    }
    Ok(format!("{} members", grid.len()))
}

fn criterion_2() -> Outcome {
    let grid = full_grid();
    for p in &grid {
        let (e, b, t) = key(p);
        let h = p.bundle_cohomology().map_err(|err| err.to_string())?;
        require_eq!(
            "h(E)",
            key(p),
            (h.h0, h.h1, h.h2),
            (5 * e + 2 * b + 4 * t + 28, 0, 0)
        );
        let surface = p.surface();
        let split = p.split().map_err(|err| err.to_string())?;
        let h_a = surface
            .cohomology(&split.a_line)
            .map_err(|err| err.to_string())?;
        let h_b = surface
            .cohomology(&split.b_line)
            .map_err(|err| err.to_string())?;
        require_eq!("h^0(A)", key(p), h_a.h0, 6 * e + 4 * t + 24);
        require_eq!("h^0(B)", key(p), h_b.h0, 2 * b + 4 - e);
        let oracle_a = surface
            .h0_lattice_oracle(&split.a_line)
            .map_err(|err| err.to_string())?;
        let oracle_b = surface
            .h0_lattice_oracle(&split.b_line)
            .map_err(|err| err.to_string())?;
        require_eq!("h^0(A) lattice oracle", key(p), oracle_a, h_a.h0);
        require_eq!("h^0(B) lattice oracle", key(p), oracle_b, h_b.h0);
    }
    Ok(format!("{} members", grid.len()))
}

fn criterion_3() -> Outcome {
    let grid = full_grid();
    for p in &grid {
        let (e, b, t) = key(p);
        let n_closed = 5 * e + 2 * b + 4 * t + 27;
        let n_cohomology = p.bundle_cohomology().map_err(|err| err.to_string())?.h0 - 1;
        require_eq!("n routes", key(p), n_cohomology, n_closed);
        require_eq!(
            "n",
            key(p),
            embedding_dimension(p).map_err(|err| err.to_string())?,
            n_closed
        );

        let chern = p.chern().map_err(|err| err.to_string())?;
        let surface = p.surface();
        let d_chern = surface
            .intersect(&chern.c1, &chern.c1)
            .map_err(|err| err.to_string())?
            - chern.c2;
        let ctx = ScrollContext64::new(e, chern).map_err(|err| err.to_string())?;
        let xi = ChowClass64::xi();
        let d_chow = ctx
            .intersect(&[xi, xi, xi])
            .map_err(|err| err.to_string())?;
        require_eq!("d: ξ³ vs c1² − c2", key(p), d_chow, d_chern);
        require_eq!("d closed form", key(p), d_chern, 8 * e + 5 * b + 7 * t + 40);
        require_eq!(
            "d",
            key(p),
            scroll_degree(p).map_err(|err| err.to_string())?,
            d_chern
        );
    }
    Ok(format!("{} members", grid.len()))
}

fn criterion_4() -> Outcome {
    let grid = full_grid();
    for p in &grid {
        let (e, b, t) = key(p);
        let d = 8 * e + 5 * b + 7 * t + 40;
        let got = intersection_numbers(p).map_err(|err| err.to_string())?;
        require_eq!(
            "intersection numbers",
            key(p),
            (got.l3, got.kl2, got.k2l, got.k3, got.c2l, -got.kc2, got.c3),
            (
                d,
                -2 * d + 6 * e + 28 + 6 * t + 6 * b,
                4 * d - 20 * b - 20 * t - 20 * e - 96,
                -8 * d + 48 * b + 48 * t + 48 * e + 240,
                2 * e + 24 + 2 * b + 2 * t,
                24,
                8
            )
        );
    }
    let spot = intersection_numbers(&FamilyParams64::new(2, 7, 0).unwrap())
        .map_err(|err| err.to_string())?;
    require_eq!(
        "spot value",
        (2, 7, 0),
        [spot.l3, spot.kl2, spot.k2l, spot.k3, spot.c2l, -spot.kc2, spot.c3],
        [91, -100, 88, -56, 42, 24, 8]
    );
    Ok(format!(
        "{} members, spot (2,7,0) = {{91, −100, 88, −56, 42, 24, 8}}",
        grid.len()
    ))
}

fn criterion_5() -> Outcome {
    let grid = full_grid();
    for p in &grid {
        let poly = hilbert_polynomial(p).map_err(|err| err.to_string())?;
        let split = p.split().map_err(|err| err.to_string())?;
        for m in 0..=8u32 {
            let via_sym = split
                .sym_chi(m, &DivisorClass64::zero())
                .map_err(|err| err.to_string())?;
            let via_poly = poly.eval_integer(m as i64).map_err(|err| err.to_string())?;
            require_eq!(format!("P({m})"), key(p), via_poly, via_sym);
        }
        let n = embedding_dimension(p).map_err(|err| err.to_string())?;
        require_eq!(
            "P(0)",
            key(p),
            poly.eval_integer(0).map_err(|err| err.to_string())?,
            1
        );
        require_eq!(
            "P(1)",
            key(p),
            poly.eval_integer(1).map_err(|err| err.to_string())?,
            n + 1
        );
    }
    Ok(format!("{} members, m ∈ [0, 8]", grid.len()))
}

fn criterion_6() -> Outcome {
    let grid = component_grid();
    for p in &grid {
        let (e, b, t) = key(p);
        let n = 9 * e + 33 + 6 * t;
        require_eq!(
            "n",
            key(p),
            embedding_dimension(p).map_err(|err| err.to_string())?,
            n
        );
        let expected = n * (n + 1) + 9 * e + 20 + 6 * t;
        let d = 8 * e + 5 * b + 7 * t + 40;
        let general = (d - 3 * e - 3 * b - 3 * t - 12) * n + 122 + 21 * t + 21 * e + 21 * b - 3 * d;
        require_eq!("general closed form", key(p), general, expected);
        require_eq!(
            "χ(N) by HRR",
            key(p),
            chi_normal(p).map_err(|err| err.to_string())?,
            expected
        );
        let report = component_dimension(p).map_err(|err| err.to_string())?;
        require_eq!("dim", key(p), report.dim_component, Some(expected));
    }
    let spots = [((2, 0), 2690), ((0, 0), 1142), ((1, 0), 1835)];
    for ((e, t), want) in spots {
        let p = FamilyParams64::new(e, 2 * e + 3 + t, t).unwrap();
        require_eq!(
            "spot",
            (e, t),
            chi_normal(&p).map_err(|err| err.to_string())?,
            want
        );
    }
    Ok(format!(
        "{} members, spots 2690/1142/1835 (note: (e,t) = (1,0) is 42·43 + 9 + 20 = 1835, not 1855)",
        grid.len()
    ))
}

fn criterion_7() -> Outcome {
    let grid = component_grid();
    for p in &grid {
        let e = p.e();
        let tx = tangent_cohomology(p).map_err(|err| err.to_string())?;
        require_eq!("χ(T_X)", key(p), tx.chi, 13);
        let want = if e == 0 { (13, 0) } else { (e + 12, e - 1) };
        require_eq!("(h^0, h^1)(T_X)", key(p), (tx.h[0], tx.h[1]), want);
        require_eq!("(h^2, h^3)(T_X)", key(p), (tx.h[2], tx.h[3]), (0, 0));
    }
    Ok(format!("{} members", grid.len()))
}

fn criterion_8() -> Outcome {
    let grid = component_grid();
    for p in &grid {
        let report = component_dimension(p).map_err(|err| err.to_string())?;
        let h_n = report.h_n.ok_or("missing h(N)")?;
        let h_tx = report.h_tx.ok_or("missing h(T_X)")?;
        let n = report.n;
        require_eq!(
            "h^0(N)",
            key(p),
            h_n[0],
            (n + 1) * (n + 1) - 1 - h_tx[0] + h_tx[1]
        );
        require_eq!("h^i(N), i ≥ 1", key(p), &h_n[1..], &[0, 0, 0][..]);
    }
    Ok(format!("{} members", grid.len()))
}

fn criterion_9() -> Outcome {
    let grid = component_grid();
    for p in &grid {
        let e = p.e();
        let want = if e == 0 { 0 } else { e - 1 };
        require_eq!(
            "codim",
            key(p),
            scroll_locus_codim(p).map_err(|err| err.to_string())?,
            want
        );
        let report = component_dimension(p).map_err(|err| err.to_string())?;
        require_eq!(
            "codim in report",
            key(p),
            report.codim_scroll_locus,
            Some(want)
        );
    }
    Ok(format!("{} members", grid.len()))
}

fn criterion_10() -> Outcome {
    let summary = Suite::new().run(4i64, 6).map_err(|err| err.to_string())?;
    if let Some(first) = summary.failures.first() {
        return Err(format!(
            "{} failures, first: {first}",
            summary.failures.len()
        ));
    }
    let counts = verify::counts(&summary);
    let required = [
        verify::SERRE,
        verify::RIEMANN_ROCH,
        verify::LATTICE,
        verify::CHOW_AXIOMS,
        verify::WINDOW_V1,
        verify::WINDOW_V2,
    ];
    for name in required {
        match counts.get(name) {
            Some(&n) if n > 0 => {}
            _ => return Err(format!("suite did not evaluate {name}")),
        }
    }
    Ok(format!(
        "{} identities, {} assertions, 0 exceptions",
        summary.identities.len(),
        summary.assertions()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "uniformity: r = 3e+5+t, ℓ3 = 0, ℓ2 = b−t−2e−4 < 0",
            criterion_1,
        ),
        ("bundle cohomology h(E), h0(A), h0(B)", criterion_2),
        ("embedding data n and d by two routes", criterion_3),
        ("intersection-number list", criterion_4),
        ("Hilbert polynomial P(m) = χ(Sym^m E)", criterion_5),
        ("component dimension χ(N)", criterion_6),
        ("tangent cohomology of X", criterion_7),
        ("Euler-sequence identity for h0(N)", criterion_8),
        ("codimension of the scroll locus", criterion_9),
        ("property suites", criterion_10),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2}: PASS  {name} [{detail}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} [{detail}]", i + 1);
            }
        }
    }
    let elapsed = start.elapsed();
    println!("{} of 10 criteria passed in {:.2?}", 10 - failed, elapsed);
    if failed == 0 && elapsed.as_secs_f64() < 10.0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
