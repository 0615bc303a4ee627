//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Randomized criteria use fixed ChaCha seeds.

use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rucert::dsl::{parse, pretty_print};
use rucert::eval::{eval_program, Environment};
use rucert::report::Report;
use rucert::run_command;
use rucert_core::{
    check_ru_cauchy, check_ru_limit, e_norm, germ_refutation, in_principal_ideal,
    uniqueness_breaker, verify_closure_chain, Anchor, EpsRule, NormValue, PLFunction, Rational,
    RegulatedSequence, Separation, TailFunction, TailParams, Violation, ViolationKind,
};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn u() -> PLFunction {
    PLFunction::identity()
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_command(
        std::iter::once("rucert").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

/// Random rational with numerator and denominator bounded by `bound`.
fn rand_rational(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    q(rng.gen_range(-bound..=bound), rng.gen_range(1..=bound))
}

/// Random PL function with at most `max_bp` breakpoints, abscissae
/// `n/d` with `d ≤ t_den`, values bounded by `bound`.
fn rand_pl(rng: &mut ChaCha8Rng, max_bp: usize, t_den: i64, bound: i64) -> PLFunction {
    let mut ts = vec![Rational::zero(), Rational::one()];
    for _ in 0..rng.gen_range(0..=max_bp - 2) {
        let d = rng.gen_range(2..=t_den);
        ts.push(q(rng.gen_range(1..d), d));
    }
    ts.sort();
    ts.dedup();
    let pts: Vec<_> = ts.into_iter().map(|t| (t, rand_rational(rng, bound))).collect();
    PLFunction::new(pts).unwrap()
}

// ---------------------------------------------------------------- 1

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (code, out, _) = cli(&["verify", "--format", "json"]);
    let elapsed = start.elapsed();
    ensure!(code == 0, "exit code {code}");
    let v: serde_json::Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    for (k, want) in [
        ("verdict", "verified-strict"),
        ("ideal_norm", "1"),
        ("ratio_liminf", "0"),
        ("ratio_limsup", "1"),
        ("epsilon_star", "1/3"),
    ] {
        ensure!(v[k] == want, "{k} = {} (want {want})", v[k]);
    }
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");

    // Re-derive the defining node values and the sandwich independently.
    let f = TailFunction::counterexample(TailParams::default());
    let p = f.params().clone();
    for n in 1..=20u32 {
        let (a, b) = (p.a(n), p.b(n));
        ensure!(f.eval(&b).unwrap().is_zero(), "f(b_{n}) != 0");
        ensure!(f.eval(&a).unwrap() == a, "f(a_{n}) != a_{n}");
        let f_n = f.truncate(n);
        ensure!(PLFunction::zero().leq(&f_n) && f_n.leq(&u()), "0 <= f_{n} <= u fails");
    }
    Ok(format!("exact values reproduced in {elapsed:?}"))
}

// ---------------------------------------------------------------- 2

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let f = TailFunction::counterexample(TailParams::default());
    let eps = q(1, 3);
    let deltas = [q(1, 1), q(1, 10), q(1, 1000)];
    let start = Instant::now();
    let mut checked = 0;
    for _ in 0..100 {
        let d = rng.gen_range(1..=1000);
        let lambda = q(rng.gen_range(-2 * d..=2 * d), d);
        for delta in &deltas {
            let t = germ_refutation(&f, &lambda, delta, &eps).map_err(|e| e.to_string())?;
            ensure!(t.is_positive() && t < *delta, "node {t} not in (0, {delta})");
            let v = f.eval(&t).unwrap();
            ensure!(
                (&lambda * &t - v).abs() > &eps * &t,
                "lambda {lambda}: no strict violation at {t}"
            );
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!("{checked} refutations in {elapsed:?}"))
}

// ---------------------------------------------------------------- 3

fn criterion_3() -> Outcome {
    let f = TailFunction::counterexample(TailParams::default());
    let p = f.params().clone();
    let mut prev: Option<Rational> = None;
    for n in 1..=20u32 {
        let r = f.residual(n);
        let a_next = p.a(n + 1);
        ensure!(r.sup_abs <= a_next, "N={n}: sup {} > a_(N+1) {a_next}", r.sup_abs);
        if let Some(prev) = &prev {
            ensure!(r.sup_abs < *prev, "N={n}: sup not decreasing");
        }
        prev = Some(r.sup_abs.clone());

        // Independent bound: f − f_N = f_M − f_N on [b_(M+1), 1] and
        // |f − f_N| ≤ |f| ≤ t ≤ b_(M+1) ≤ a_(N+1) below.
        let m = n + 3;
        let diff = &f.truncate(m) - &f.truncate(n);
        let sup = match e_norm(&diff, &PLFunction::one()).unwrap().value {
            NormValue::Finite(v) => v,
            NormValue::Infinite => return Err("infinite sup".into()),
        };
        ensure!(sup == r.sup_abs, "N={n}: sup {sup} vs reported {}", r.sup_abs);
        ensure!(p.b(m + 1) <= a_next, "tail bound");

        ensure!(r.u_ratio == Rational::one(), "N={n}: u-ratio {}", r.u_ratio);
        let t = &r.u_ratio_at;
        let res = (f.eval(t).unwrap() - f.truncate(n).eval(t).unwrap()).abs();
        ensure!(&res / t == Rational::one(), "N={n}: ratio at {t} is {}", &res / t);
    }
    Ok("N = 1..20: sup <= a_(N+1), ratio exactly 1".into())
}

// ---------------------------------------------------------------- 4

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let start = Instant::now();
    for i in 0..1000 {
        let f = rand_pl(&mut rng, 8, 1000, 1000);
        let g = rand_pl(&mut rng, 8, 1000, 1000);
        let h = rand_pl(&mut rng, 8, 1000, 1000);
        let laws = [
            ("join commutative", f.join(&g) == g.join(&f)),
            ("meet commutative", f.meet(&g) == g.meet(&f)),
            ("join associative", f.join(&g).join(&h) == f.join(&g.join(&h))),
            ("meet associative", f.meet(&g).meet(&h) == f.meet(&g.meet(&h))),
            ("absorption meet", f.meet(&f.join(&g)) == f),
            ("absorption join", f.join(&f.meet(&g)) == f),
            ("idempotent", f.join(&f) == f && f.meet(&f) == f),
            ("sum decomposition", &f + &g == &f.join(&g) + &f.meet(&g)),
            ("absolute value", f.abs_val() == f.join(&-&f)),
        ];
        for (name, ok) in laws {
            ensure!(ok, "triple {i}: {name} fails for f = {f}, g = {g}, h = {h}");
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    Ok(format!("1000 triples in {elapsed:?}"))
}

// ---------------------------------------------------------------- 5

/// Regulator with `e > 0` on `(0, 1]`; `e(0) = 0` when `zero_at_origin`.
fn rand_regulator(rng: &mut ChaCha8Rng, t_den: i64, zero_at_origin: bool) -> PLFunction {
    let mut ts = vec![Rational::zero(), Rational::one()];
    for _ in 0..rng.gen_range(0..=4) {
        let d = rng.gen_range(2..=t_den);
        ts.push(q(rng.gen_range(1..d), d));
    }
    ts.sort();
    ts.dedup();
    let pts: Vec<_> = ts
        .into_iter()
        .map(|t| {
            let v = if zero_at_origin && t.is_zero() {
                Rational::zero()
            } else {
                q(rng.gen_range(1..=1000), rng.gen_range(1..=100))
            };
            (t, v)
        })
        .collect();
    PLFunction::new(pts).unwrap()
}

fn vanish_at_zero(f: PLFunction) -> PLFunction {
    let c = PLFunction::constant(f.value_at_zero().clone());
    &f - &c
}

fn finite(n: NormValue) -> Result<Rational, String> {
    match n {
        NormValue::Finite(v) => Ok(v),
        NormValue::Infinite => Err("unexpected infinite norm".into()),
    }
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let tiny = q(1, 1_000_000);
    let norm = |x: &PLFunction, e: &PLFunction| finite(e_norm(x, e).unwrap().value);
    for i in 0..500 {
        let zero_origin = rng.gen_bool(0.5);
        let e = rand_regulator(&mut rng, 50, zero_origin);
        let mut x = rand_pl(&mut rng, 8, 50, 100);
        let mut y = rand_pl(&mut rng, 8, 50, 100);
        if zero_origin {
            x = vanish_at_zero(x);
            y = vanish_at_zero(y);
        }
        if i % 25 == 0 {
            x = PLFunction::zero();
        }
        let (nx, ny) = (norm(&x, &e)?, norm(&y, &e)?);

        let big = x.abs_val().join(&y.abs_val());
        ensure!(nx <= norm(&big, &e)?, "{i}: monotonicity");
        let c = rand_rational(&mut rng, 20);
        ensure!(norm(&x.scale(&c), &e)? == c.abs() * &nx, "{i}: homogeneity");
        ensure!(norm(&(&x + &y), &e)? <= &nx + &ny, "{i}: triangle");
        ensure!(nx.is_zero() == x.is_zero(), "{i}: definiteness");

        for (v, nv) in [(&x, &nx), (&y, &ny)] {
            let a = v.abs_val();
            ensure!(a.leq(&e.scale(nv)), "{i}: |x| <= norm*e fails at the norm");
            ensure!(!a.leq(&e.scale(&(nv - &tiny))), "{i}: norm - 1e-6 still bounds |x|");
        }
    }
    Ok("500 pairs, laws and attainment exact".into())
}

// ---------------------------------------------------------------- 6

/// Linear interpolation through `pts`, independent of the library.
fn interp(pts: &[(f64, f64)], t: f64) -> f64 {
    let i = pts.partition_point(|p| p.0 <= t).clamp(1, pts.len() - 1);
    let ((t0, v0), (t1, v1)) = (pts[i - 1], pts[i]);
    v0 + (v1 - v0) * (t - t0) / (t1 - t0)
}

fn float_points(f: &PLFunction) -> Vec<(f64, f64)> {
    f.breakpoints()
        .iter()
        .map(|b| (b.t.to_f64(), b.value.to_f64()))
        .collect()
}

fn close(exact: f64, sampled: f64) -> bool {
    if exact == 0.0 {
        sampled.abs() <= 1e-12
    } else {
        ((exact - sampled) / exact).abs() <= 1e-6
    }
}

/// Sample indices whose float value is within a hair of the extreme. Float
/// error is far below the margin, so the exact extreme is among them.
fn near_extreme(vals: &[f64], best: f64) -> impl Iterator<Item = usize> + '_ {
    let margin = 1e-9 * best.abs().max(1.0);
    vals.iter()
        .enumerate()
        .filter(move |(_, v)| (*v - best).abs() <= margin)
        .map(|(i, _)| i)
}

/// Sorted abscissae `k/20` including both endpoints.
fn grid_ts(rng: &mut ChaCha8Rng, max_interior: usize) -> Vec<Rational> {
    let mut ts = vec![Rational::zero(), Rational::one()];
    for _ in 0..rng.gen_range(0..=max_interior) {
        ts.push(q(rng.gen_range(1..20), 20));
    }
    ts.sort();
    ts.dedup();
    ts
}

fn norm_instance(rng: &mut ChaCha8Rng) -> Result<(), String> {
    // Breakpoints sit on multiples of 1/20 and the grid step is 1/N with
    // 20 | N, so every node is sampled.
    const N: i64 = 20_000;
    let zero_origin = rng.gen_bool(0.5);
    let e = PLFunction::new(grid_ts(rng, 4).into_iter().map(|t| {
        let v = if zero_origin && t.is_zero() {
            Rational::zero()
        } else {
            q(rng.gen_range(1..=1000), rng.gen_range(1..=100))
        };
        (t, v)
    }))
    .unwrap();
    let mut x = PLFunction::new(
        grid_ts(rng, 6)
            .into_iter()
            .map(|t| (t, rand_rational(rng, 1000)))
            .collect::<Vec<_>>(),
    )
    .unwrap();
    if zero_origin {
        x = vanish_at_zero(x);
    }
    let exact = finite(e_norm(&x, &e).unwrap().value)?;
    let (xp, ep) = (float_points(&x), float_points(&e));
    let first = if zero_origin { 1 } else { 0 };
    let ratios: Vec<f64> = (first..=N)
        .map(|i| {
            let t = i as f64 / N as f64;
            interp(&xp, t).abs() / interp(&ep, t)
        })
        .collect();
    let sup = ratios.iter().cloned().fold(f64::MIN, f64::max);
    ensure!(close(exact.to_f64(), sup), "norm {exact} vs sampled {sup}");
    for i in near_extreme(&ratios, sup) {
        let t = q(i as i64 + first, N);
        let r = x.eval(&t).unwrap().abs() / e.eval(&t).unwrap();
        ensure!(r <= exact, "sampled {r} at {t} exceeds norm {exact}");
    }
    Ok(())
}

fn rand_tail(rng: &mut ChaCha8Rng) -> TailFunction {
    let d = rng.gen_range(3..=12i64);
    let r = rng.gen_range(1..d - 1);
    let a = rng.gen_range(r + 1..d);
    let p = TailParams::new(q(r, d), q(a, d), Rational::one()).unwrap();
    let mut offsets: Vec<Rational> = (0..rng.gen_range(0..=3))
        .map(|_| p.rho() + (Rational::one() - p.rho()) * q(rng.gen_range(1..=99), 100))
        .collect();
    offsets.push(Rational::one());
    offsets.sort_by(|x, y| y.cmp(x));
    offsets.dedup();
    let anchors = offsets
        .into_iter()
        .map(|o| Anchor::new(o, q(rng.gen_range(-20..=20), 10)))
        .collect();
    TailFunction::new(p, anchors, Vec::new()).unwrap()
}

fn ratio_instance(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let f = rand_tail(rng);
    let (lo, hi) = f.ratio_bounds();
    let rho = f.params().rho().clone();
    let rho_f = rho.to_f64();
    // Periods down to 1e-9; M points per period, a multiple of 100 so the
    // anchor offsets (percent steps across the period) fall on the grid.
    let periods = ((1e-9f64).ln() / rho_f.ln()).ceil() as u32;
    let m = 100 * (10_000u32.div_ceil(100 * periods)).max(1);
    ensure!((10_000..=100_000).contains(&(m * periods)), "sample count {}", m * periods);

    // Float oracle on one period, extended by degree-1 homogeneity.
    let mut nodes: Vec<(f64, f64)> = f
        .anchors()
        .iter()
        .map(|a| (a.offset.to_f64(), a.offset.to_f64() * a.ratio.to_f64()))
        .collect();
    let r0 = f.anchors()[0].ratio.to_f64();
    nodes.push((rho_f, rho_f * r0));
    nodes.sort_by(|x, y| x.0.total_cmp(&y.0));
    let ratio_at = |t: f64| {
        let n = (t.ln() / rho_f.ln()).floor();
        let s = (t / rho_f.powf(n)).clamp(rho_f, 1.0);
        interp(&nodes, s) / s
    };

    let mut ratios = Vec::with_capacity((m * periods) as usize);
    let mut exact_t = Vec::with_capacity(ratios.capacity());
    for n in 0..periods {
        let scale = rho.pow(n);
        for j in 0..m {
            let s = &rho + (Rational::one() - &rho) * q(j as i64, m as i64);
            let t = &scale * &s;
            ratios.push(ratio_at(t.to_f64()));
            exact_t.push(t);
        }
    }
    let smax = ratios.iter().cloned().fold(f64::MIN, f64::max);
    let smin = ratios.iter().cloned().fold(f64::MAX, f64::min);
    ensure!(close(hi.to_f64(), smax), "limsup {hi} vs sampled {smax}");
    ensure!(close(lo.to_f64(), smin), "liminf {lo} vs sampled {smin}");
    for i in near_extreme(&ratios, smax) {
        let t = &exact_t[i];
        let r = f.eval(t).unwrap() / t;
        ensure!(r <= hi, "sampled {r} above limsup {hi}");
    }
    for i in near_extreme(&ratios, smin) {
        let t = &exact_t[i];
        let r = f.eval(t).unwrap() / t;
        ensure!(r >= lo, "sampled {r} below liminf {lo}");
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..100 {
        norm_instance(&mut rng)?;
    }
    for _ in 0..100 {
        ratio_instance(&mut rng)?;
    }
    Ok("100 norm and 100 ratio-bound instances within 1e-6".into())
}

// ---------------------------------------------------------------- 7

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut members = 0;
    for i in 0..500 {
        let mut f = rand_pl(&mut rng, 8, 1000, 1000);
        if i % 2 == 0 {
            f = vanish_at_zero(f);
        }
        let inside = in_principal_ideal(&f, &u()).unwrap();
        let vanishes = f.eval(&Rational::zero()).unwrap().is_zero();
        ensure!(inside == vanishes, "{i}: f = {f}, in ideal {inside}, f(0) = 0 {vanishes}");
        members += inside as usize;
    }
    Ok(format!("500 functions, {members} in the ideal"))
}

// ---------------------------------------------------------------- 8

fn self_evidencing(v: &Violation, lhs_fn: &PLFunction, bound_fn: &PLFunction) -> Result<(), String> {
    let lhs = lhs_fn.eval(&v.t).unwrap();
    let bound = bound_fn.eval(&v.t).unwrap();
    ensure!(lhs == v.lhs && bound == v.bound && lhs > bound, "violation at {} not reproduced", v.t);
    Ok(())
}

fn clamp(p: &PLFunction, c: &Rational, e: &PLFunction) -> PLFunction {
    let band = e.scale(c);
    p.meet(&band).join(&-&band)
}

fn criterion_8() -> Outcome {
    let recip = EpsRule::Reciprocal;
    let seq = |f: &dyn Fn(i64) -> PLFunction| {
        RegulatedSequence::new((1..=10).map(|n| (n as u64, f(n))).collect(), recip.clone(), u())
            .unwrap()
    };

    ensure!(check_ru_cauchy(&seq(&|n| u().scale(&q(1, n)))).unwrap().passed(), "cauchy (1/n)u");
    let r = check_ru_cauchy(&seq(&|n| PLFunction::one().scale(&q(1, n)))).unwrap();
    let v = r.failure.ok_or("cauchy (1/n)one passed")?;
    let (n, m) = (v.n as i64, v.m.ok_or("missing m")? as i64);
    let diff = PLFunction::one().scale(&(q(1, n) - q(1, m))).abs_val();
    self_evidencing(&v, &diff, &u().scale(&q(1, n)))?;
    let g = PLFunction::new([(q(0, 1), q(1, 3)), (q(1, 2), q(-1, 1)), (q(1, 1), q(2, 1))]).unwrap();
    ensure!(check_ru_cauchy(&seq(&|_| g.clone())).unwrap().passed(), "constant sequence");

    let fu = seq(&|n| u().scale(&q(1, n)));
    ensure!(check_ru_limit(&fu, &PLFunction::zero()).unwrap().passed(), "limit zero");
    let v = check_ru_limit(&fu, &u()).unwrap().failure.ok_or("limit u passed")?;
    ensure!(v.kind == ViolationKind::Limit && v.n == 3, "first failing index {}", v.n);
    let n = v.n as i64;
    self_evidencing(&v, &u().scale(&(Rational::one() - q(1, n))), &u().scale(&q(1, n)))?;
    let single = RegulatedSequence::new(vec![(1, u())], recip.clone(), u()).unwrap();
    ensure!(check_ru_limit(&single, &u()).unwrap().passed(), "single term");

    let fs: Vec<PLFunction> = (1..=8).map(|n| u().scale(&q(1, n))).collect();
    ensure!(
        verify_closure_chain(&fs, &fs, &PLFunction::zero(), &recip, &u()).unwrap().passed(),
        "chain (1/n)u"
    );
    let r = verify_closure_chain(&[PLFunction::one()], &[PLFunction::zero()], &PLFunction::zero(), &recip, &u())
        .unwrap();
    let v = r.failure.ok_or("chain one/zero passed")?;
    ensure!(v.kind == ViolationKind::Approximation && v.n == 1, "chain failure kind {:?}", v.kind);
    self_evidencing(&v, &PLFunction::one(), &u())?;

    ensure!(uniqueness_breaker(&u(), &u(), &u(), &recip).unwrap() == Separation::Equal, "equal");
    ensure!(
        uniqueness_breaker(&PLFunction::zero(), &u(), &u(), &recip).unwrap() == Separation::Index(3),
        "breaker zero/u"
    );
    ensure!(
        uniqueness_breaker(&PLFunction::zero(), &PLFunction::one(), &u(), &recip).unwrap()
            == Separation::Index(1),
        "breaker zero/one"
    );

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut both_hold = 0;
    for i in 0..500 {
        let zero_origin = rng.gen_bool(0.5);
        let e = rand_regulator(&mut rng, 50, zero_origin);
        let limit = rand_pl(&mut rng, 6, 50, 100);
        let slack = rng.gen_range(0..=2i64);
        let k = 5;
        let fs: Vec<PLFunction> = (1..=k)
            .map(|n| &limit + &clamp(&rand_pl(&mut rng, 5, 50, 100), &q(1 + slack, 2 * n), &e))
            .collect();
        let phis: Vec<PLFunction> = fs
            .iter()
            .zip(1..=k)
            .map(|(f, n)| f + &clamp(&rand_pl(&mut rng, 5, 50, 100), &q(1 + slack, 2 * n), &e))
            .collect();
        let r = verify_closure_chain(&phis, &fs, &limit, &recip, &e).unwrap();
        if let Some(v) = &r.failure {
            ensure!(v.kind != ViolationKind::Transfer, "{i}: hypotheses held, conclusion failed");
        }
        // Independent recheck of the conclusion when both hypotheses hold.
        let hyps = (1..=k).all(|n| {
            let i = (n - 1) as usize;
            (&phis[i] - &fs[i]).abs_val().leq(&e.scale(&q(1, n)))
                && (&fs[i] - &limit).abs_val().leq(&e.scale(&q(1, n)))
        });
        ensure!(hyps == r.passed(), "{i}: verdict disagrees with direct check");
        if hyps {
            both_hold += 1;
            for n in 1..=k {
                let i = (n - 1) as usize;
                ensure!(
                    (&phis[i] - &limit).abs_val().leq(&e.scale(&q(2, n))),
                    "conclusion fails"
                );
            }
        }
    }
    ensure!(both_hold >= 100, "only {both_hold} instances exercised the transfer");
    Ok(format!("examples hold; {both_hold}/500 chains with both hypotheses, no transfer failure"))
}

// ---------------------------------------------------------------- 9

fn corpus() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus");
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "plx"))
        .collect();
    files.sort();
    files
}

fn criterion_9() -> Outcome {
    let files = corpus();
    ensure!(!files.is_empty(), "empty corpus");
    for path in &files {
        let name = path.file_name().unwrap().to_string_lossy().to_string();
        let src = fs::read_to_string(path).unwrap();
        let stmts = parse(&src).map_err(|e| format!("{name}: {e}"))?;
        let reports = eval_program(&stmts, &mut Environment::new());
        let errors = reports.iter().filter(|r| r.is_error()).count();
        let expect_errors = name.starts_with("errors");
        ensure!(
            (errors > 0) == expect_errors,
            "{name}: {errors} error reports"
        );
        let reparsed = parse(&pretty_print(&stmts)).map_err(|e| format!("{name}: {e}"))?;
        ensure!(reparsed == stmts, "{name}: pretty-print round trip changed the AST");
        ensure!(
            eval_program(&reparsed, &mut Environment::new()) == reports,
            "{name}: reports changed after round trip"
        );
        let json = serde_json::to_string(&reports).unwrap();
        let back: Vec<Report> = serde_json::from_str(&json).map_err(|e| e.to_string())?;
        ensure!(back == reports, "{name}: JSON round trip");
    }
    let (code, _, err) = cli(&["verify", "--rho", "1/2", "--alpha", "1/2"]);
    ensure!(code == 3, "verify --rho 1/2 --alpha 1/2 exited {code}");
    ensure!(err.contains("b_(n+1) < a_n"), "message does not name the inequality: {err}");
    Ok(format!("{} programs round-trip; boundary params exit 3", files.len()))
}

type Criterion = (u32, &'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (1, "strict-inclusion verification", criterion_1),
        (2, "germ refutation sweep", criterion_2),
        (3, "uniform vs relative residual", criterion_3),
        (4, "lattice law suite", criterion_4),
        (5, "norm law suite", criterion_5),
        (6, "sampling oracle agreement", criterion_6),
        (7, "principal ideal characterization", criterion_7),
        (8, "convergence checkers", criterion_8),
        (9, "CLI and parser corpus", criterion_9),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (id, name, run) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|p| {
                let msg = p
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                Err(format!("panicked: {msg}"))
            });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {id} [{name}]: PASS ({detail}; {secs:.2}s)"),
            Err(why) => {
                failed += 1;
                println!("criterion {id} [{name}]: FAIL ({why}; {secs:.2}s)");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
