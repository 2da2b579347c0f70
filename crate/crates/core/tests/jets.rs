use simons_core::immersion::immersion_jet;
use simons_core::{build_calabi, Chart, ChartPoint, HarmonicImmersion};

fn eval_at(imm: &HarmonicImmersion, chart: Chart, u: f64, v: f64) -> Vec<f64> {
    imm.evaluate(ChartPoint::new(chart, u, v).unwrap().embed())
}

/// Richardson-extrapolated central differences for first and second partials.
fn fd_partials(imm: &HarmonicImmersion, p: &ChartPoint, h: f64) -> Vec<[f64; 5]> {
    let f = |du: f64, dv: f64| eval_at(imm, p.chart, p.u + du, p.v + dv);
    let raw = |h: f64| {
        let (c, up, um, vp, vm) = (f(0.0, 0.0), f(h, 0.0), f(-h, 0.0), f(0.0, h), f(0.0, -h));
        let (pp, pm, mp, mm) = (f(h, h), f(h, -h), f(-h, h), f(-h, -h));
        (0..c.len())
            .map(|a| {
                [
                    (up[a] - um[a]) / (2.0 * h),
                    (vp[a] - vm[a]) / (2.0 * h),
                    (up[a] - 2.0 * c[a] + um[a]) / (h * h),
                    (pp[a] - pm[a] - mp[a] + mm[a]) / (4.0 * h * h),
                    (vp[a] - 2.0 * c[a] + vm[a]) / (h * h),
                ]
            })
            .collect::<Vec<_>>()
    };
    let (coarse, fine) = (raw(h), raw(h / 2.0));
    coarse
        .iter()
        .zip(&fine)
        .map(|(c, f)| std::array::from_fn(|k| (4.0 * f[k] - c[k]) / 3.0))
        .collect()
}

#[test]
fn low_order_partials_match_finite_differences() {
    let imm = build_calabi(2).unwrap();
    for p in [
        ChartPoint::new(Chart::North, 0.3, -0.2).unwrap(),
        ChartPoint::new(Chart::South, -0.55, 0.4).unwrap(),
        ChartPoint::new(Chart::North, 0.0, 0.0).unwrap(),
    ] {
        let jets = immersion_jet(&imm, &p, 5).unwrap();
        let fd = fd_partials(&imm, &p, 1e-3);
        for (jet, oracle) in jets.iter().zip(&fd) {
            let got = [jet.partial(1, 0), jet.partial(0, 1), jet.partial(2, 0), jet.partial(1, 1), jet.partial(0, 2)];
            for (g, o) in got.iter().zip(oracle) {
                assert!((g - o).abs() <= 1e-6 * o.abs().max(1.0), "{g} vs {o}");
            }
        }
    }
}

#[test]
fn taylor_remainder_is_sixth_order() {
    let imm = build_calabi(2).unwrap();
    let p = ChartPoint::new(Chart::North, 0.25, 0.35).unwrap();
    let jets = immersion_jet(&imm, &p, 5).unwrap();
    let remainder = |t: f64| {
        let (du, dv) = (0.6 * t, -0.8 * t);
        let exact = eval_at(&imm, p.chart, p.u + du, p.v + dv);
        jets.iter()
            .zip(&exact)
            .map(|(j, e)| {
                let mut taylor = 0.0;
                for a in 0..=5 {
                    for b in 0..=5 - a {
                        taylor += j.coeff(a, b) * du.powi(a as i32) * dv.powi(b as i32);
                    }
                }
                (taylor - e).abs()
            })
            .fold(0.0, f64::max)
    };
    let (r1, r2) = (remainder(0.04), remainder(0.02));
    let ratio = r1 / r2;
    assert!((40.0..90.0).contains(&ratio), "remainder ratio {ratio} ({r1:e}, {r2:e})");
}

#[test]
fn image_lies_on_the_unit_sphere() {
    for s in 1..=5 {
        let imm = build_calabi(s).unwrap();
        assert_eq!(imm.ambient_dim(), 2 * s as usize + 1);
        for k in 0..50 {
            let t = k as f64 * 0.37;
            let x = [t.sin() * t.cos(), t.sin() * t.sin(), t.cos()];
            let y = imm.evaluate(x);
            let n: f64 = y.iter().map(|c| c * c).sum();
            assert!((n - 1.0).abs() < 1e-12);
        }
    }
}
