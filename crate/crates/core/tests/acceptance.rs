//! Acceptance checks: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_FAILURES` are reported as FAIL but do not fail
//! the run; one of them passing does, so the list cannot go stale.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use treesign_core::limits::{self, LimitFamily};
use treesign_core::oracle::{dense_spectrum, random_tree, DEFAULT_TOL};
use treesign_core::recurrence::{Evaluation, OrbitStatus, RecurrenceParams};
use treesign_core::signs::{self, DoubleBroom, PendantConfig, Sign};
use treesign_core::treediag::{InertiaTriple, MatrixKind, SymmetricTreeMatrix};
use treesign_core::{ratio, BigRational};

const KNOWN_FAILURES: &[(u32, &str)] = &[
    (1, "printed terms are truncated to 2 decimals; b3, b5, b10 differ from them by more than 0.005"),
    (3, "b column rows r = 27..30 do not match the exact sequence"),
];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut out = f();
    let elapsed = start.elapsed();
    out.detail = format!("{} [{:.2?}, limit {:?}]", out.detail, elapsed, limit);
    out.pass &= elapsed < limit;
    out
}

fn cfg(n: usize, r: usize) -> PendantConfig {
    PendantConfig::new(n, r).unwrap()
}

fn domain(n_max: usize) -> impl Iterator<Item = PendantConfig> {
    (8..=n_max).flat_map(|n| (1..=n / 4).map(move |r| cfg(n, r)))
}

fn c1() -> Outcome {
    timed(Duration::from_secs(1), || {
        let printed = [-0.53, 1.99, -0.39, 2.62, -0.27, 3.73, -0.16, 6.25, -0.05, 18.39, 0.05];
        let got = signs::b_sequence(&cfg(19, 2), 11).unwrap().values;
        let bad: Vec<String> = got
            .iter()
            .zip(printed)
            .enumerate()
            .filter(|(_, (g, w))| (*g - w).abs() > 0.005)
            .map(|(i, (g, w))| format!("b{}={g:.4} vs {w}", i + 1))
            .collect();
        outcome(bad.is_empty() && got.len() == 11, format!("terms off by > 0.005: {bad:?}"))
    })
}

fn c2() -> Outcome {
    let k0 = signs::k0(&cfg(19, 2)).unwrap();
    let m: Vec<usize> = (1..=4).map(|r| signs::mlas(&cfg(19, r)).unwrap()).collect();
    outcome(k0 == 4 && m == [12, 10, 8, 4], format!("k0(19,2)={k0}, mlas(19,1..4)={m:?}"))
}

fn c3() -> Outcome {
    let table: [(usize, usize, f64); 10] = [
        (1, 142, 0.0096876957),
        (2, 140, 0.0099251854),
        (25, 78, 0.0031255870),
        (26, 76, 0.010132605),
        (27, 72, 0.0064999950),
        (28, 68, 0.0031447334),
        (29, 64, 0.0000494238),
        (30, 62, 0.0081597084),
        (44, 8, 0.00094629571),
        (45, 4, 0.00056354082),
    ];
    let mut mlas_bad = Vec::new();
    let mut b_bad = Vec::new();
    for (r, mlas, b) in table {
        let rep = signs::mlas_report(&cfg(183, r)).unwrap();
        if rep.mlas != mlas {
            mlas_bad.push((r, rep.mlas));
        }
        let rel = (rep.b_next - b).abs() / b.abs();
        if rel > 1e-6 {
            b_bad.push(format!("r={r}: {:.10e} vs {b:e} (rel {rel:.1e})", rep.b_next));
        }
    }
    outcome(
        mlas_bad.is_empty() && b_bad.is_empty(),
        format!("mlas mismatches {mlas_bad:?}; b mismatches {b_bad:?}"),
    )
}

fn c4() -> Outcome {
    timed(Duration::from_secs(60), || {
        let mut checked = 0;
        let mut bad = Vec::new();
        for c in domain(120) {
            let formula = signs::mlas(&c).unwrap();
            let scan = signs::mlas_direct(&c, signs::default_scan_length(c.n()));
            checked += 1;
            if scan != Ok(formula) {
                bad.push((c.n(), c.r(), formula, scan));
            }
        }
        outcome(bad.is_empty(), format!("{checked} grid points, mismatches {bad:?}"))
    })
}

fn c5() -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    for c in domain(120) {
        checked += 1;
        let lb = signs::mlas_lower_bound(&c).unwrap();
        let m = signs::mlas(&c).unwrap() as i64;
        if lb > m {
            bad.push((c.n(), c.r(), lb, m));
        }
    }
    let c = cfg(183, 1);
    let tight = (signs::mlas_lower_bound(&c).unwrap(), signs::mlas(&c).unwrap());
    outcome(
        bad.is_empty() && tight == (142, 142),
        format!("{checked} grid points, violations {bad:?}; n=183 r=1 (bound, mlas)={tight:?}"),
    )
}

fn c6() -> Outcome {
    timed(Duration::from_secs(30), || {
        let kinds = [MatrixKind::Adjacency, MatrixKind::Laplacian, MatrixKind::NormalizedLaplacian];
        let mut shift_rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let (mut checks, mut failures) = (0, 0);
        for seed in 0..200u64 {
            let n = 2 + (seed as usize % 11);
            let tree = random_tree(n, seed);
            for kind in kinds {
                let m = SymmetricTreeMatrix::<f64>::build(&tree, kind).unwrap();
                let spec = dense_spectrum(&m, DEFAULT_TOL).unwrap();
                let (lo, hi) = (spec.min() - 1.0, spec.max() + 1.0);
                let mut shifts = 0;
                while shifts < 5 {
                    let s = shift_rng.random_range(lo..hi);
                    if spec.distance_to(s) < 1e-6 {
                        continue;
                    }
                    shifts += 1;
                    checks += 1;
                    let want = InertiaTriple { below: spec.count_below(s), equal: 0, above: spec.count_above(s) };
                    if m.locate(&s) != want {
                        failures += 1;
                    }
                }
            }
        }
        outcome(checks == 3000 && failures == 0, format!("{checks} checks, {failures} failures"))
    })
}

fn c7() -> Outcome {
    let gap = limits::adjacency_limit_gap(60, 1e-10).abs();
    let radii: Vec<f64> = (2..=40).map(|k| LimitFamily::Adjacency.radius(k, 1e-12)).collect();
    let increasing = radii.windows(2).all(|w| w[0] < w[1]);
    let bounded = radii.iter().all(|&r| r < 2.1214);
    outcome(
        gap <= 1e-8 && increasing && bounded,
        format!("|gap(60)|={gap:.3e}, increasing={increasing}, below 2.1214={bounded}"),
    )
}

fn c8() -> Outcome {
    let mu60 = LimitFamily::Laplacian.radius(60, 1e-9);
    let gap = (mu60 - 4.382975767).abs();
    // T(1,1,1) is the star K_{1,3}, whose Laplacian radius is exactly 4
    let mu1 = LimitFamily::Laplacian.radius(1, 1e-9);
    let in_range = (2..=60).all(|k| {
        let mu = LimitFamily::Laplacian.radius(k, 1e-9);
        mu > 4.0 && mu <= 5.0
    });
    let residual = limits::cubic_residual(limits::guo_epsilon()).abs();
    outcome(
        gap <= 1e-6 && in_range && residual <= 1e-12,
        format!("|mu(60) - 4.382975767|={gap:.3e}, n_arm 2..=60 in (4,5]={in_range} (mu(1)={mu1:.9}), cubic residual={residual:.1e}"),
    )
}

fn c9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst: f64 = 0.0;
    let mut compared = 0;
    for _ in 0..1000 {
        let alpha = rng.random_range(-3.0..3.0);
        let gamma = loop {
            let g: f64 = rng.random_range(-3.0..3.0);
            if g.abs() > 1e-3 {
                break g;
            }
        };
        let x1 = rng.random_range(-3.0..3.0);
        let params = RecurrenceParams::new(alpha, gamma).unwrap();
        let sol = params.solve(x1).unwrap();
        let orbit = params.iterate(x1, 40).unwrap();
        let poles = sol.zeros_and_poles(0.0, 41.0).map(|zp| zp.poles).unwrap_or_default();
        for (i, &x) in orbit.values.iter().enumerate() {
            let j = (i + 1) as f64;
            if poles.iter().any(|p| (p - j).abs() < 1e-3) {
                continue;
            }
            let Evaluation::Value(e) = sol.eval(j) else {
                worst = f64::INFINITY;
                break;
            };
            worst = worst.max((e - x).abs() / x.abs().max(1.0));
            compared += 1;
        }
    }
    outcome(worst <= 1e-9, format!("{compared} terms, max relative deviation {worst:.2e}"))
}

fn c10() -> Outcome {
    let p7 = signs::period_n(7).unwrap();
    let p19 = signs::period_n(19).unwrap();
    let periods = (p7 - 2.20084).abs() <= 1e-5 && (p19 - 2.069368956).abs() <= 1e-5;
    let mut bad = Vec::new();
    for c in domain(100) {
        let w = signs::omega_r(&c).unwrap();
        let h: Vec<f64> = [-1, 0, 1].iter().map(|&m| signs::h_function(&c, m).unwrap()).collect();
        if !(w > -FRAC_PI_2 && w < -FRAC_PI_4 && h[0] > 0.0 && h[1] > 0.0 && h[2] < 0.0) {
            bad.push((c.n(), c.r()));
        }
    }
    outcome(periods && bad.is_empty(), format!("P(7)={p7:.6}, P(19)={p19:.9}, grid failures {bad:?}"))
}

fn c11() -> Outcome {
    let x1 = 0.5 * (1.0 + 1.0 / (-5.0 + 2f64.sqrt()));
    let sol = RecurrenceParams::new(1.0, -0.25).unwrap().solve(x1).unwrap();
    let zp = sol.zeros_and_poles(0.0, 21.0).unwrap();
    let zero_ok = zp.zeros.len() == 1 && (zp.zeros[0] - (5.0 - 2f64.sqrt())).abs() <= 1e-12;
    let pole_ok = zp.poles.len() == 1 && (zp.poles[0] - (6.0 - 2f64.sqrt())).abs() <= 1e-12;
    let x4 = sol.eval(4.0).value().unwrap_or(f64::NAN);
    let positive = (1..=20).filter(|&j| j != 4).all(|j| sol.eval(j as f64).value().is_some_and(|v| v > 0.0));
    outcome(
        zero_ok && pole_ok && (x4 + 0.35).abs() <= 0.005 && positive,
        format!("zeros {:?}, poles {:?}, x4={x4:.4}, positive off j=4: {positive}", zp.zeros, zp.poles),
    )
}

fn c12() -> Outcome {
    let broom = DoubleBroom::new(3, 2, 2, 2).unwrap();
    let rep = signs::double_broom_sigma(&broom).unwrap();
    let (t, lay) = signs::double_broom_tree(&broom);
    let lap = SymmetricTreeMatrix::<BigRational>::build(&t, MatrixKind::Laplacian).unwrap();
    let located = lap.locate(&ratio(36, 19));
    let t1 = signs::star_up(&t, lay.right_star, lay.root).unwrap();
    let t2 = signs::star_up(&t1, lay.left_star, lay.root).unwrap();
    let t3 = signs::star_up(&t2, lay.right_star, lay.left_star).unwrap();
    let chain: Vec<(usize, usize)> =
        [&t, &t1, &t2, &t3].iter().map(|x| (x.len(), signs::sigma(x).unwrap())).collect();
    let chain_ok = chain.iter().all(|&c| c == (19, 9));
    outcome(
        rep.sigma == 9
            && rep.root_sign == Sign::Negative
            && located == InertiaTriple { below: 10, equal: 0, above: 9 }
            && chain_ok,
        format!(
            "sigma={}, root {:?} ({}), locate={:?}, chain (n, sigma)={chain:?}",
            rep.sigma, rep.root_sign, rep.root_value, located
        ),
    )
}

fn c13() -> Outcome {
    let q = RecurrenceParams::new(ratio(2, 1), ratio(-1, 1)).unwrap();
    let forbidden = q.forbidden_initials(30).unwrap();
    let mut bad = Vec::new();
    for (i, x) in forbidden.iter().enumerate() {
        let k = i as i64 + 1;
        if *x != ratio(k, k + 1) {
            bad.push(format!("psi^{k}(0)={x}"));
        }
        // x_1 = ψ^k(0) makes x_{k+1} = 0
        let orbit = q.iterate(x.clone(), 40).unwrap();
        let hit = orbit.status == OrbitStatus::HitZero { step: k as usize + 1 };
        let earlier_nonzero = orbit.values[..k as usize].iter().all(|v| v.is_positive());
        if !(hit && earlier_nonzero) {
            bad.push(format!("k={k}: {:?}", orbit.status));
        }
    }
    outcome(bad.is_empty(), format!("30 initials, problems {bad:?}"))
}

type Criterion = (u32, &'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        (1, "worked b-sequence n=19 r=2", c1),
        (2, "k0 formula and mlas(19, 1..4)", c2),
        (3, "mlas table n=183", c3),
        (4, "mlas formula equals exact scan on 8 <= n <= 120", c4),
        (5, "lower bound on the grid, tight at n=183 r=1", c5),
        (6, "inertia of 200 random trees vs dense oracle", c6),
        (7, "adjacency limit of T(1,n,n)", c7),
        (8, "Laplacian limit of T(1,n,n)", c8),
        (9, "closed form equals iteration", c9),
        (10, "periods, phase window and H signs", c10),
        (11, "repeated-root extended solution", c11),
        (12, "double broom n=19 and star-up chain", c12),
        (13, "forbidden initials for alpha=2 gamma=-1", c13),
    ];
    let mut unexpected = 0;
    for (id, name, check) in criteria {
        let out = check();
        let known = KNOWN_FAILURES.iter().find(|(k, _)| *k == id).map(|(_, why)| *why);
        let status = match (out.pass, known) {
            (true, None) => "PASS".to_string(),
            (false, Some(why)) => format!("FAIL (known: {why})"),
            (false, None) => {
                unexpected += 1;
                "FAIL".to_string()
            }
            (true, Some(_)) => {
                unexpected += 1;
                "PASS (listed as a known failure; update the list)".to_string()
            }
        };
        println!("criterion {id:>2} {status}: {name}: {}", out.detail);
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} unexpected result(s)");
        ExitCode::FAILURE
    }
}
