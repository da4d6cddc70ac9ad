//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::fs;
use std::path::Path;
use std::time::{Duration, Instant};

use phaseforge::{run_args, RealizationDocument, TransformDocument};
use phaseforge_core::equiv::verify_equivalence;
use phaseforge_core::matnum::{mat_exp, mat_pow, Matrix};
use phaseforge_core::phtype::{cph_cdf, cph_pdf, cph_tpm, dph_cdf, dph_pmf, ph_mean, ph_sample, PhaseType};
use phaseforge_core::possys::{perron_root, simulate_continuous, simulate_discrete};
use phaseforge_core::scenarios::{continuous_example, student_dynamics, supply_chain, StudentRates, SupplyRates};
use phaseforge_core::xform::{
    augment, cont_to_cph, cont_to_cph_with_eta, default_eta, disc_to_dph, perron_null_vector, scaling_from_nu,
    Similarity, TransformResult,
};
use phaseforge_core::{Kind, Realization};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn near(name: &str, got: f64, want: f64, tol: f64) -> Result<(), String> {
    ensure((got - want).abs() <= tol, || {
        format!("{name} = {got}, expected {want} ± {tol:e}")
    })
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["phaseforge"];
    full.extend_from_slice(args);
    let code = run_args(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn discrete_ph(tr: &TransformResult) -> &phaseforge_core::DiscPH {
    match &tr.ph {
        PhaseType::Discrete(d) => d,
        _ => panic!("expected a discrete distribution"),
    }
}

fn continuous_ph(tr: &TransformResult) -> &phaseforge_core::ContPH {
    match &tr.ph {
        PhaseType::Continuous(d) => d,
        _ => panic!("expected a continuous distribution"),
    }
}

/// Random realization satisfying every hypothesis: a sub-diagonal chain
/// from an input-fed state 0 keeps it excitable; diagonal dominance
/// (continuous) or row sums <= 0.9 (discrete) keeps it stable.
fn random_realization(rng: &mut ChaCha8Rng, kind: Kind) -> Realization {
    let n = rng.gen_range(1..=6);
    let mut a = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if i == j + 1 {
                a[(i, j)] = rng.gen_range(0.05..1.0);
            } else if i != j && rng.gen_bool(0.4) {
                a[(i, j)] = rng.gen_range(0.0..1.0);
            }
        }
    }
    let mut b: Vec<f64> = (0..n)
        .map(|_| {
            if rng.gen_bool(0.3) {
                rng.gen_range(0.0..1.0)
            } else {
                0.0
            }
        })
        .collect();
    b[0] += 0.1 + rng.gen_range(0.0..1.0);
    let mut c: Vec<f64> = (0..n)
        .map(|_| {
            if rng.gen_bool(0.5) {
                rng.gen_range(0.0..1.0)
            } else {
                0.0
            }
        })
        .collect();
    c[n - 1] += 0.1;
    match kind {
        Kind::Continuous => {
            for i in 0..n {
                let off: f64 = a.row(i).iter().sum();
                a[(i, i)] = -(off + rng.gen_range(0.2..2.0));
            }
        }
        Kind::Discrete => {
            for i in 0..n {
                a[(i, i)] = if rng.gen_bool(0.5) {
                    rng.gen_range(0.0..0.5)
                } else {
                    0.0
                };
                let s: f64 = a.row(i).iter().sum();
                let target = rng.gen_range(0.1..0.9);
                if s > 0.0 {
                    for j in 0..n {
                        a[(i, j)] *= target / s;
                    }
                }
            }
        }
    }
    Realization::new(kind, a, b, c).unwrap()
}

fn c1_continuous_transform() -> Outcome {
    let start = Instant::now();
    let r = continuous_example();
    let tr = cont_to_cph(&r).map_err(|e| e.to_string())?;
    let Similarity::Continuous { nu, u, .. } = &tr.similarity else {
        unreachable!()
    };
    let len = nu.iter().map(|x| x * x).sum::<f64>().sqrt();
    for (i, (x, want)) in nu.iter().zip([0.5222330, 0.6963106, 0.3481553, 0.3481553]).enumerate() {
        near(&format!("nu[{i}]"), x / len, want, 1e-6)?;
    }
    for (i, (x, want)) in u.iter().zip([1.5, 2.0, 1.0]).enumerate() {
        near(&format!("U[{i}]"), *x, want, 1e-9)?;
    }
    for (i, (x, want)) in tr.alpha_raw.iter().zip([1.5, 0.0, 0.0]).enumerate() {
        near(&format!("alpha~[{i}]"), *x, want, 1e-9)?;
    }
    let expect = [[-2.0, 4.0 / 3.0, 0.0], [0.0, -1.0, 0.5], [0.0, 0.0, -1.0]];
    let t = tr.ph.matrix();
    for (i, row) in expect.iter().enumerate() {
        for (j, want) in row.iter().enumerate() {
            near(&format!("T~[{i},{j}]"), t[(i, j)], *want, 1e-9)?;
        }
    }
    for (i, (x, want)) in tr.ph.exit().iter().zip([2.0 / 3.0, 0.5, 1.0]).enumerate() {
        near(&format!("t~[{i}]"), *x, want, 1e-9)?;
    }
    near("psi", tr.psi, 1.5, 1e-12)?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("psi = {}, U = {:?}, {elapsed:?}", tr.psi, u))
}

fn c2_student_transform() -> Outcome {
    let tr = disc_to_dph(&student_dynamics(&StudentRates::default()).unwrap()).map_err(|e| e.to_string())?;
    near("psi", tr.psi, 0.6905371, 1e-7)?;
    let expect = [[0.2, 0.0, 0.0], [0.85, 0.15, 0.0], [0.0, 0.92, 0.08]];
    let t = tr.ph.matrix();
    for (i, row) in expect.iter().enumerate() {
        for (j, want) in row.iter().enumerate() {
            near(&format!("T~[{i},{j}]"), t[(i, j)], *want, 1e-12)?;
        }
    }
    for (i, (x, want)) in tr.ph.exit().iter().zip([0.8, 0.0, 0.0]).enumerate() {
        near(&format!("t~[{i}]"), *x, want, 1e-12)?;
    }
    Ok(format!("psi = {:.10}", tr.psi))
}

fn c3_supply_transform() -> Outcome {
    let tr = disc_to_dph(&supply_chain(&SupplyRates::default()).unwrap()).map_err(|e| e.to_string())?;
    for (i, (x, want)) in tr.alpha_raw.iter().zip([0.0, 0.0, 0.7231638]).enumerate() {
        near(&format!("alpha~[{i}]"), *x, want, 1e-7)?;
    }
    let expect = [[0.25, 0.0, 0.0], [0.8329412, 0.12, 0.0470588], [0.0, 0.85, 0.15]];
    let t = tr.ph.matrix();
    for (i, row) in expect.iter().enumerate() {
        for (j, want) in row.iter().enumerate() {
            near(&format!("T~[{i},{j}]"), t[(i, j)], *want, 1e-6)?;
        }
    }
    for (i, (x, want)) in tr.ph.exit().iter().zip([0.75, 0.0, 0.0]).enumerate() {
        near(&format!("t~[{i}]"), *x, want, 1e-12)?;
    }
    Ok(format!("alpha~ = {:?}", tr.alpha_raw))
}

fn compare_verdict(stdout: &str) -> Result<f64, String> {
    let last = stdout.lines().last().ok_or("empty compare output")?;
    let rest = last
        .strip_prefix("MAX_ABS_ERR=")
        .ok_or_else(|| format!("bad verdict line '{last}'"))?;
    let (err, verdict) = rest.split_once(' ').ok_or("bad verdict line")?;
    ensure(verdict == "PASS", || format!("verdict {verdict}"))?;
    err.parse().map_err(|_| "unparsable error".to_string())
}

fn c4_equivalence(dir: &Path) -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for (scenario, u, grid) in [
        ("continuous-example", "50", "0:10:0.1"),
        ("student", "50", "0..10"),
        ("supply-chain", "100", "0..13"),
    ] {
        let (code, out, err) = cli(&["compare", "--scenario", scenario, "--u", u, "--grid", grid]);
        ensure(code == 0, || format!("{scenario}: exit {code}: {err}"))?;
        worst = worst.max(compare_verdict(&out).map_err(|e| format!("{scenario}: {e}"))?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    for i in 0..20 {
        let kind = if i % 2 == 0 { Kind::Continuous } else { Kind::Discrete };
        let r = random_realization(&mut rng, kind);
        let path = dir.join(format!("random{i}.json"));
        fs::write(
            &path,
            serde_json::to_string(&RealizationDocument::from_realization(&r)).unwrap(),
        )
        .unwrap();
        let grid = if kind == Kind::Continuous { "0:10:0.1" } else { "0..30" };
        let u = format!("{}", rng.gen_range(1.0..100.0));
        let (code, out, err) = cli(&["compare", "--input", path.to_str().unwrap(), "--u", &u, "--grid", grid]);
        ensure(code == 0, || {
            format!("random system {i} (order {}): exit {code}: {err}", r.order())
        })?;
        worst = worst.max(compare_verdict(&out).map_err(|e| format!("random system {i}: {e}"))?);
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "3 scenarios + 20 random systems, worst max_abs_err {worst:e}, {elapsed:?}"
    ))
}

fn c5_pmf_values() -> Outcome {
    let tr = disc_to_dph(&student_dynamics(&StudentRates::default()).unwrap()).unwrap();
    let star = discrete_ph(&tr);
    let raw = match tr.raw_distribution().map_err(|e| e.to_string())? {
        PhaseType::Discrete(d) => d,
        _ => unreachable!(),
    };
    let f = |d, k| dph_pmf(d, k).unwrap();
    let mut failures = Vec::new();
    let mut check = |name: &str, got: f64, want: f64, tol: f64| {
        if let Err(e) = near(name, got, want, tol) {
            failures.push(e);
        }
    };
    check("student f*(3)", f(star, 3), 0.6256, 1e-10);
    check("student f*(4)", f(star, 4), 0.268974, 1e-6);
    check("student f(0) with alpha~", f(&raw, 0), 0.309463, 1e-6);
    check("student f(3) with alpha~", f(&raw, 3), 0.432, 1e-6);
    let sc = disc_to_dph(&supply_chain(&SupplyRates::default()).unwrap()).unwrap();
    check("supply f*(3)", f(discrete_ph(&sc), 3), 0.531, 5e-4);
    if failures.is_empty() {
        Ok(format!(
            "f*(3) = {}, f*(4) = {}, f(0) = {:.6}, f(3) = {:.6}",
            f(star, 3),
            f(star, 4),
            f(&raw, 0),
            f(&raw, 3)
        ))
    } else {
        Err(failures.join("; "))
    }
}

fn c6_sampling() -> Outcome {
    let start = Instant::now();
    let tr = disc_to_dph(&student_dynamics(&StudentRates::default()).unwrap()).unwrap();
    let s = ph_sample(&tr.ph, 1000, 1).map_err(|e| e.to_string())?;
    let se = (s.variance / 1000.0).sqrt();
    let stated = 3.512903;
    let analytic = ph_mean(&tr.ph).unwrap();
    ensure((s.mean - stated).abs() <= 3.0 * se, || {
        format!("sample mean {} outside 3 SE ({se}) of {stated}", s.mean)
    })?;
    ensure((s.mean - analytic).abs() <= 3.0 * se, || {
        format!("sample mean {} outside 3 SE of computed mean {analytic}", s.mean)
    })?;
    ensure((3.482f64 - stated).abs() <= 3.0 * se, || {
        "reported 3.482 outside the band".into()
    })?;
    let sc = disc_to_dph(&supply_chain(&SupplyRates::default()).unwrap()).unwrap();
    let sc_mean = ph_mean(&sc.ph).unwrap();
    near("supply-chain mean", sc_mean, 3.77690, 1e-4)?;
    let sc_sample = ph_sample(&sc.ph, 1000, 1).unwrap();
    let sc_se = (sc_sample.variance / 1000.0).sqrt();
    ensure((sc_sample.mean - sc_mean).abs() <= 3.0 * sc_se, || {
        format!("supply-chain sample mean {}", sc_sample.mean)
    })?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(2), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "student sample mean {:.4} (SE {:.4}, computed analytic mean {:.6}); supply-chain analytic mean {:.6}, {elapsed:?}",
        s.mean, se, analytic, sc_mean
    ))
}

fn c7_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cases = 25;
    for case in 0..cases {
        let rc = random_realization(&mut rng, Kind::Continuous);
        let rd = random_realization(&mut rng, Kind::Discrete);
        let n = rc.order();
        let ctx = |what: &str| format!("case {case}: {what}");

        // positivity
        let x0: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..5.0)).collect();
        let grid: Vec<f64> = (0..=20).map(|i| i as f64 * 0.5).collect();
        let tc = simulate_continuous(&rc, 10.0, &x0, &grid).unwrap();
        ensure(
            tc.states.iter().flatten().chain(&tc.outputs).all(|&x| x >= -1e-9),
            || ctx("continuous positivity"),
        )?;
        let x0d: Vec<f64> = (0..rd.order()).map(|_| rng.gen_range(0.0..5.0)).collect();
        let td = simulate_discrete(&rd, &[10.0; 20], &x0d).unwrap();
        ensure(td.states.iter().flatten().chain(&td.outputs).all(|&x| x >= 0.0), || {
            ctx("discrete positivity")
        })?;

        // cdf monotone, pdf = d/dx cdf, tpm stochastic and semigroup
        let trc = cont_to_cph(&rc).map_err(|e| ctx(&e.to_string()))?;
        let ph = continuous_ph(&trc);
        let h = 1e-3;
        let mut prev = 0.0;
        for i in 0..30 {
            let x = 0.05 + i as f64 * 0.3;
            let f = cph_cdf(ph, x).unwrap();
            ensure(f >= prev, || ctx("cdf monotone"))?;
            prev = f;
            let d = (cph_cdf(ph, x + h).unwrap() - cph_cdf(ph, x - h).unwrap()) / (2.0 * h);
            ensure((d - cph_pdf(ph, x).unwrap()).abs() <= 1e-4, || {
                ctx("pdf/cdf derivative")
            })?;
        }
        let (s1, s2) = (rng.gen_range(0.0..3.0), rng.gen_range(0.0..3.0));
        let lhs = cph_tpm(ph, s1 + s2).unwrap();
        let rhs = cph_tpm(ph, s1).unwrap().matmul(&cph_tpm(ph, s2).unwrap()).unwrap();
        ensure(
            lhs.as_slice()
                .iter()
                .zip(rhs.as_slice())
                .all(|(a, b)| (a - b).abs() <= 1e-9),
            || ctx("tpm semigroup"),
        )?;
        ensure(lhs.row_sums().iter().all(|r| (r - 1.0).abs() <= 1e-9), || {
            ctx("tpm rows")
        })?;

        // Markov parameters under both transforms
        let trd = disc_to_dph(&rd).map_err(|e| ctx(&e.to_string()))?;
        for k in 1..=25u64 {
            let sys = rd.markov_parameter(k as f64).unwrap();
            let p = mat_pow(trd.ph.matrix(), k - 1).unwrap();
            let ph_val: f64 = p
                .vec_mul(&trd.alpha_raw)
                .unwrap()
                .iter()
                .zip(trd.ph.exit())
                .map(|(a, b)| a * b)
                .sum();
            ensure((sys - ph_val).abs() <= 1e-9 * (1.0 + sys.abs()), || {
                ctx("discrete Markov parameters")
            })?;
        }
        for i in 1..=50 {
            let t = i as f64 * 0.1;
            let sys = rc.markov_parameter(t).unwrap();
            let e = mat_exp(&trc.ph.matrix().scale(t)).unwrap();
            let ph_val: f64 = e
                .vec_mul(&trc.alpha_raw)
                .unwrap()
                .iter()
                .zip(trc.ph.exit())
                .map(|(a, b)| a * b)
                .sum();
            ensure((sys - ph_val).abs() <= 1e-9 * (1.0 + sys.abs()), || {
                ctx("continuous Markov parameters")
            })?;
        }
        let (ra, rt) = (
            perron_root(rc.a(), 1e-13, 400_000).unwrap(),
            perron_root(trc.ph.matrix(), 1e-13, 400_000).unwrap(),
        );
        ensure((ra - rt).abs() <= 1e-9, || ctx("spectrum"))?;

        // nu-scale and eta invariance
        let Similarity::Continuous { nu, u, .. } = &trc.similarity else {
            unreachable!()
        };
        let c = rng.gen_range(0.01..100.0);
        let scaled: Vec<f64> = nu.iter().map(|x| c * x).collect();
        ensure(
            scaling_from_nu(&scaled)
                .iter()
                .zip(u)
                .all(|(a, b)| (a - b).abs() <= 1e-12 * b.max(1.0)),
            || ctx("nu scale"),
        )?;
        let delta = augment(rc.a(), rc.b()).unwrap();
        let eta = default_eta(&delta);
        let v1 = perron_null_vector(&delta, eta).unwrap();
        let v2 = perron_null_vector(&delta, eta + 1.0).unwrap();
        ensure(
            v1.iter().zip(&v2).all(|(a, b)| (a - b).abs() <= 1e-8 * a.max(1.0)),
            || ctx("eta invariance"),
        )?;
        ensure(cont_to_cph_with_eta(&rc, Some(eta + 1.0)).is_ok(), || {
            ctx("eta + 1 transform")
        })?;

        // pmf sums to cdf
        let dph = discrete_ph(&trd);
        let mut acc = 0.0;
        for k in 0..=200 {
            acc += dph_pmf(dph, k).unwrap();
        }
        ensure((acc - dph_cdf(dph, 200).unwrap()).abs() <= 1e-10, || ctx("pmf sums"))?;
    }

    // Monte-Carlo cdf inside the 99% DKW band at n = 10_000
    let n = 10_000;
    let eps = ((2.0f64 / 0.01).ln() / (2.0 * n as f64)).sqrt();
    let trc = cont_to_cph(&continuous_example()).unwrap();
    let s = ph_sample(&trc.ph, n, 99).unwrap();
    for x in [0.5, 1.0, 2.0, 3.0, 5.0] {
        let emp = s.values.iter().filter(|&&v| v <= x).count() as f64 / n as f64;
        let exact = cph_cdf(continuous_ph(&trc), x).unwrap();
        ensure((emp - exact).abs() <= eps, || {
            format!("DKW at x = {x}: {emp} vs {exact}")
        })?;
    }
    let trd = disc_to_dph(&student_dynamics(&StudentRates::default()).unwrap()).unwrap();
    let s = ph_sample(&trd.ph, n, 99).unwrap();
    for k in [3u64, 4, 5, 6, 8] {
        let emp = s.values.iter().filter(|&&v| v <= k as f64).count() as f64 / n as f64;
        let exact = dph_cdf(discrete_ph(&trd), k).unwrap();
        ensure((emp - exact).abs() <= eps, || {
            format!("DKW at k = {k}: {emp} vs {exact}")
        })?;
    }
    Ok(format!(
        "{cases} random continuous + discrete systems, DKW half-width {eps:.4}"
    ))
}

fn c8_cli_round_trip(dir: &Path) -> Outcome {
    let mut compared = 0;
    for (scenario, u, grid) in [
        ("continuous-example", "50", "0:10:0.1"),
        ("student", "50", "0..10"),
        ("supply-chain", "100", "0..13"),
    ] {
        let (code, json, err) = cli(&["convert", "--scenario", scenario]);
        ensure(code == 0, || format!("convert {scenario}: {err}"))?;
        let path = dir.join(format!("{scenario}.transform.json"));
        fs::write(&path, &json).unwrap();

        let in_process = match scenario {
            "continuous-example" => cont_to_cph(&continuous_example()).unwrap(),
            "student" => disc_to_dph(&student_dynamics(&StudentRates::default()).unwrap()).unwrap(),
            _ => disc_to_dph(&supply_chain(&SupplyRates::default()).unwrap()).unwrap(),
        };
        let back = TransformDocument::parse(&json)
            .unwrap()
            .to_result()
            .map_err(|e| e.to_string())?;
        let pairs = back
            .alpha_raw
            .iter()
            .zip(&in_process.alpha_raw)
            .chain(
                back.ph
                    .matrix()
                    .as_slice()
                    .iter()
                    .zip(in_process.ph.matrix().as_slice()),
            )
            .chain(back.ph.exit().iter().zip(in_process.ph.exit()))
            .chain(std::iter::once((&back.psi, &in_process.psi)));
        for (a, b) in pairs {
            ensure((a - b).abs() <= 1e-12, || {
                format!("{scenario}: serialized {a} vs in-process {b}")
            })?;
            compared += 1;
        }

        let points: Vec<f64> = phaseforge::grid::parse_grid(grid).unwrap();
        let rep_file = verify_equivalence(
            &match scenario {
                "continuous-example" => continuous_example(),
                "student" => student_dynamics(&StudentRates::default()).unwrap(),
                _ => supply_chain(&SupplyRates::default()).unwrap(),
            },
            &back,
            u.parse().unwrap(),
            &points,
        )
        .unwrap();
        let y_direct = phaseforge_core::equiv::y_ph(&in_process, u.parse().unwrap(), &points).unwrap();
        for (a, b) in rep_file.y_ph.iter().zip(&y_direct) {
            ensure((a - b).abs() <= 1e-12, || format!("{scenario}: y_ph {a} vs {b}"))?;
        }

        let p = path.to_str().unwrap();
        let direct = cli(&["compare", "--scenario", scenario, "--u", u, "--grid", grid]);
        let via_file = cli(&[
            "compare",
            "--scenario",
            scenario,
            "--transform",
            p,
            "--u",
            u,
            "--grid",
            grid,
        ]);
        ensure(direct == via_file, || {
            format!("{scenario}: compare output differs via transform file")
        })?;
        let what = if scenario == "continuous-example" { "cdf" } else { "pmf" };
        let e1 = cli(&["eval", "--input", p, "--what", what, "--grid", grid]);
        ensure(e1.0 == 0, || format!("{scenario}: eval failed: {}", e1.2))?;

        let s1 = cli(&["simulate", "--input", p, "--samples", "500", "--seed", "42"]);
        let s2 = cli(&["simulate", "--input", p, "--samples", "500", "--seed", "42"]);
        ensure(s1.0 == 0 && s1 == s2, || {
            format!("{scenario}: simulate output not reproducible")
        })?;
    }
    Ok(format!(
        "{compared} serialized values within 1e-12; compare/simulate byte-identical"
    ))
}

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let criteria: Vec<Criterion> = vec![
        ("1 continuous transform", Box::new(c1_continuous_transform)),
        ("2 student transform", Box::new(c2_student_transform)),
        ("3 supply-chain transform", Box::new(c3_supply_transform)),
        ("4 output equivalence", Box::new(|| c4_equivalence(dir.path()))),
        ("5 pmf values", Box::new(c5_pmf_values)),
        ("6 sampling", Box::new(c6_sampling)),
        ("7 property suites", Box::new(c7_properties)),
        ("8 cli round trip", Box::new(|| c8_cli_round_trip(dir.path()))),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let outcome =
            std::panic::catch_unwind(std::panic::AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
