//! Acceptance criteria, one line each. Runs without the libtest harness so the
//! lines always appear in `cargo test` output.

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use simons_core::algebra::{expand, rat, RationalPoly};
use simons_core::quadrature::{standard_test_functions, DEFAULT_ORDER};
use simons_core::sampling::sample_points;
use simons_core::{
    build_calabi, build_rule, certify_all, critical_point, gap::gap_function_exact, geometry_jet, invariants,
    pinch_sweep, GeometryJet, InvariantReport, Precision, SurfaceIntegrator,
};

const SAMPLES: usize = 200;
const SEED: u64 = 42;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> Verdict {
    Verdict { pass, detail }
}

fn jets(s: i64) -> Vec<(GeometryJet, InvariantReport)> {
    let imm = build_calabi(s).unwrap();
    sample_points(SAMPLES, SEED)
        .iter()
        .map(|p| {
            let gj = geometry_jet(&imm, p).unwrap();
            let inv = invariants(&gj);
            (gj, inv)
        })
        .collect()
}

fn max_over<T>(rows: &[T], f: impl Fn(&T) -> f64) -> f64 {
    rows.iter().map(f).fold(0.0, |m, v| if v.is_nan() { f64::NAN } else { m.max(v) })
}

fn calabi_constants() -> Verdict {
    let mut worst = Vec::new();
    let mut pass = true;
    for s in 1..=4i64 {
        let exact_s = (2 * (s - 1) * (s + 2)) as f64 / (s * (s + 1)) as f64;
        let exact_k = 2.0 / (s * (s + 1)) as f64;
        let rows = jets(s);
        let err = max_over(&rows, |(_, r)| {
            (r.s - exact_s).abs().max((r.k - exact_k).abs()).max((r.k_gauss - exact_k).abs())
        });
        let tol = if s == 4 { 1e-6 } else { 1e-8 };
        pass &= err < tol;
        worst.push(format!("s={s}: {err:.1e}"));
    }
    verdict(pass, format!("max |S - S(s)|, |K - K(s)| over {SAMPLES} points: {}", worst.join(", ")))
}

fn refined_simons() -> Verdict {
    let mut parts = Vec::new();
    let mut pass = true;
    for s in 1..=3 {
        let start = Instant::now();
        let rows = jets(s);
        let err = max_over(&rows, |(_, r)| (r.b1 - 0.5 * r.s * (3.0 * r.s - 4.0)).abs());
        let elapsed = start.elapsed();
        pass &= err < 1e-8 && elapsed < Duration::from_secs(30);
        if s == 2 {
            let b1 = max_over(&rows, |(_, r)| r.b1);
            pass &= b1 < 1e-8;
            parts.push(format!("s=2: B1 <= {b1:.1e}"));
        }
        parts.push(format!("s={s}: {err:.1e} in {:.2}s", elapsed.as_secs_f64()));
    }
    verdict(pass, format!("max |B1 - S(3S-4)/2|: {}", parts.join(", ")))
}

fn corollary_scalars() -> Verdict {
    let rows = jets(3);
    let errs = [
        max_over(&rows, |(_, r)| r.a_dot_b.abs()),
        max_over(&rows, |(_, r)| (r.a_sq - r.s / 4.0).abs()),
        max_over(&rows, |(_, r)| (r.norm_a2 - r.s * r.s / 2.0).abs()),
        max_over(&rows, |(_, r)| (r.rho_perp - r.s * r.s).abs()),
    ];
    verdict(
        errs.iter().all(|e| *e < 1e-8),
        format!(
            "s=3: |<a,b>| {:.1e}, ||a|^2 - S/4| {:.1e}, ||A|^2 - S^2/2| {:.1e}, |rho - S^2| {:.1e}",
            errs[0], errs[1], errs[2], errs[3]
        ),
    )
}

fn derivative_scalars() -> Verdict {
    let rows = jets(3);
    let a1 = max_over(&rows, |(_, r)| (r.a1_sq - r.b1 / 8.0).abs());
    let a12 = max_over(&rows, |(_, r)| r.a1_dot_a2.abs());
    let a11 = max_over(&rows, |(_, r)| (r.a11_sq - r.b2 / 16.0).abs());
    let gauge = max_over(&rows, |(g, r)| {
        let (x, y, b) = (g.a_ij(0, 1), g.a_ij(1, 0), g.b());
        (0..b.len())
            .map(|al| (x[al] - y[al] - 0.5 * b[al] * (3.0 * r.s - 4.0)).abs())
            .fold(0.0, f64::max)
    });
    verdict(
        a1 < 1e-8 && a12 < 1e-8 && a11 < 1e-7 && gauge < 1e-7,
        format!(
            "s=3: ||a1|^2 - B1/8| {a1:.1e}, |<a1,a2>| {a12:.1e}, ||a11|^2 - B2/16| {a11:.1e}, a12 - a21 - b(3S-4)/2 {gauge:.1e}"
        ),
    )
}

fn derived_constants() -> Verdict {
    let s = rat(5, 3);
    let sv = RationalPoly::var();
    let t = RationalPoly::linear(-4, 3);
    let b2 = expand(&[RationalPoly::constant(rat(1, 4)), sv.clone(), t.clone(), RationalPoly::linear(-14, 9)]).eval(&s);
    let b3 = expand(&[RationalPoly::constant(rat(1, 8)), sv, t, RationalPoly::from_ints(&[116, -144, 45])]).eval(&s);
    let exact_ok = b2 == rat(5, 12) && b3 == rat(5, 24);
    let rows = jets(3);
    let e2 = max_over(&rows, |(_, r)| (r.b2 - 5.0 / 12.0).abs());
    let e3 = max_over(&rows, |(_, r)| (r.b3 - 5.0 / 24.0).abs());
    let c = max_over(&rows, |(_, r)| r.c2 + r.c3);
    verdict(
        exact_ok && e2 < 1e-7 && e3 < 1e-7 && c < 1e-7,
        format!("s=3: oracle B2 = {b2}, B3 = {b3}; |B2 - 5/12| {e2:.1e}, |B3 - 5/24| {e3:.1e}, C2 + C3 {c:.1e}"),
    )
}

fn integrators() -> Vec<(i64, f64, f64, [(f64, f64); 3], Vec<(f64, f64)>)> {
    (1..=4)
        .map(|s| {
            let imm = build_calabi(s).unwrap();
            let rule = build_rule(&imm, DEFAULT_ORDER).unwrap();
            let it = SurfaceIntegrator::new(&imm, &rule, Precision::Double).unwrap();
            let ids = [1u8, 2, 3].map(|w| {
                let p = it.identity(w).unwrap();
                (p.lhs, p.rhs)
            });
            let k: Vec<f64> = it.invariants().iter().map(|r| r.k).collect();
            let boch = standard_test_functions(imm.ambient_dim())
                .iter()
                .map(|u| {
                    let b = it.bochner(u).unwrap();
                    (b.residual, b.gradient_energy)
                })
                .collect();
            (s, rule.integrate(&k), rule.total_weight(), ids, boch)
        })
        .collect()
}

type Integrals = [(i64, f64, f64, [(f64, f64); 3], Vec<(f64, f64)>)];

fn integral_identities(data: &Integrals) -> Verdict {
    let mut pass = true;
    let mut parts = Vec::new();
    for (s, _, _, ids, _) in data.iter().filter(|d| d.0 >= 2) {
        let gap = ids.iter().map(|(l, r)| (l - r).abs()).fold(0.0, f64::max);
        pass &= gap < 1e-6 && ids[0].1 >= -1e-10;
        parts.push(format!("s={s}: {gap:.1e}"));
    }
    verdict(pass, format!("n={DEFAULT_ORDER}, max |lhs - rhs| over identities 1-3: {}", parts.join(", ")))
}

fn gauss_bonnet(data: &Integrals) -> Verdict {
    let mut pass = true;
    let mut parts = Vec::new();
    for (s, k, area, _, _) in data {
        let gb = (k - 4.0 * PI).abs();
        let exact = 2.0 * PI * (s * (s + 1)) as f64;
        let rel = (area - exact).abs() / exact;
        pass &= gb < 1e-8 && rel < 1e-8;
        parts.push(format!("s={s}: {gb:.1e}/{rel:.1e}"));
    }
    verdict(pass, format!("|int K - 4 pi| / relative area error: {}", parts.join(", ")))
}

fn bochner(data: &Integrals) -> Verdict {
    let mut pass = true;
    let mut worst = 0.0f64;
    for (_, _, _, _, b) in data {
        pass &= b.len() == 5;
        for (res, energy) in b {
            pass &= res.abs() < 1e-6 * energy;
            worst = worst.max(res.abs() / energy);
        }
    }
    verdict(pass, format!("s=1..4, 5 test functions each: max |residual| / int |grad u|^2 = {worst:.1e}"))
}

fn show(v: &Option<simons_core::algebra::BigRational>) -> String {
    v.as_ref().map_or_else(|| "irrational".into(), |x| x.to_string())
}

fn gap_numerics() -> Verdict {
    let cp = critical_point();
    let lo = format!("{:.5}", cp.forbidden_lo);
    let hi = format!("{:.5}", cp.forbidden_hi);
    let ends = (gap_function_exact(&rat(5, 3)), gap_function_exact(&rat(9, 5)));
    let zero = Some(rat(0, 1));
    let pass = (cp.s_star - 1.72935007).abs() < 1e-8
        && (cp.f_max - 0.00419291).abs() < 1e-7
        && lo == "1.72936"
        && hi == "1.73355"
        && ends == (zero.clone(), zero);
    verdict(
        pass,
        format!(
            "s_star {:.8}, f_max {:.8}, forbidden ({lo}, {hi}), exact f(5/3) = {}, f(9/5) = {}",
            cp.s_star,
            cp.f_max,
            show(&ends.0),
            show(&ends.1)
        ),
    )
}

fn exact_algebra() -> Verdict {
    let certs = certify_all();
    let all_hold = certs.len() == 6 && certs.iter().all(|c| c.holds);
    let sweep = pinch_sweep(100_000, SEED);
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_simons-verify"))
        .args(["all", "--format", "json"])
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed();
    let run_ok = out.status.code() == Some(0) && elapsed < Duration::from_secs(300);
    verdict(
        all_hold && sweep.max_lhs <= 1e-12 && sweep.equality_exact && run_ok,
        format!(
            "{} identities certified, pinch max lhs {:.1e} over 1e5 pairs, equality exact {}, `all` exit {:?} in {:.1}s",
            certs.iter().filter(|c| c.holds).count(),
            sweep.max_lhs,
            sweep.equality_exact,
            out.status.code(),
            elapsed.as_secs_f64()
        ),
    )
}

fn main() {
    let data = integrators();
    let results = [
        ("Calabi constants", calabi_constants()),
        ("refined Simons identity", refined_simons()),
        ("corollary scalars", corollary_scalars()),
        ("first and second derivative scalars", derivative_scalars()),
        ("derived constants", derived_constants()),
        ("integral identities", integral_identities(&data)),
        ("Gauss-Bonnet and area", gauss_bonnet(&data)),
        ("Bochner formula", bochner(&data)),
        ("gap numerics", gap_numerics()),
        ("exact algebra", exact_algebra()),
    ];
    for (i, (name, v)) in results.iter().enumerate() {
        println!("criterion {:>2} {} {name}: {}", i + 1, if v.pass { "PASS" } else { "FAIL" }, v.detail);
    }
    let failed = results.iter().filter(|(_, v)| !v.pass).count();
    println!("acceptance: {} of {} criteria pass", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
