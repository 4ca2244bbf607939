//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command as Process;
use std::time::Instant;

use clap::Parser;
use metric_gh::cli::{run, Cli};
use metric_gh::constructions::{brick_cover_on_window, gen_chess_families, gen_lattice_window, WindowSpec};
use metric_gh::correspondence::{correspondence_masks, exact_gh, Relation, DEFAULT_BUDGET};
use metric_gh::covers::{check_r_disjoint, make_certificate, multiplicity, Strictness};
use metric_gh::metric::{FiniteMetricSpace, Metric, SubsetRef, DEFAULT_TOL};
use metric_gh::report::ExperimentReport;
use metric_gh::Error;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn cli(args: &[&str]) -> Result<ExperimentReport, String> {
    let mut full = vec!["metric-gh"];
    full.extend_from_slice(args);
    let parsed = Cli::try_parse_from(&full).map_err(|e| e.to_string())?;
    run(&parsed).map_err(|e| e.to_string())
}

fn out(rep: &ExperimentReport, key: &str) -> f64 {
    rep.output_f64(key).unwrap_or_else(|| panic!("report lacks numeric output '{key}'"))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1(dir: &Path) -> Outcome {
    let t = Instant::now();
    let lat = dir.join("c1-lattice");
    let net = dir.join("c1-net");
    cli(&["gen", "lattice", "--window", "10", "--out", s(&lat)])?;
    cli(&["gen", "net", "--window", "10", "--eps", "0.1", "--out", s(&net)])?;
    let rep = cli(&[
        "hausdorff",
        "--points-a",
        s(&lat.join("points.json")),
        "--points-b",
        s(&net.join("points.json")),
    ])?;
    let elapsed = t.elapsed().as_secs_f64();
    let v = out(&rep, "hausdorff");
    ensure((v - FRAC_1_SQRT_2).abs() <= 1e-9, || format!("d_H = {v}"))?;
    ensure(elapsed < 5.0, || format!("took {elapsed:.2} s"))?;

    // quadratic scan over the same merged space as an independent check
    let brute = cli(&[
        "hausdorff",
        "--brute",
        "--points-a",
        s(&lat.join("points.json")),
        "--points-b",
        s(&net.join("points.json")),
    ])?;
    let b = out(&brute, "hausdorff");
    ensure(b == v, || format!("brute force gives {b}, indexed {v}"))?;
    Ok(format!("d_H = {v} in {elapsed:.3} s"))
}

fn criterion_2(dir: &Path) -> Outcome {
    let mut parts = Vec::new();
    for n in [4u32, 12, 20] {
        let w = WindowSpec::square(f64::from(n)).unwrap();
        let lattice = gen_lattice_window(&w).map_err(|e| e.to_string())?;
        let fams = gen_chess_families(&lattice).map_err(|e| e.to_string())?.to_vec();
        let cert = make_certificate(&lattice, fams, SQRT_2, Strictness::NonStrict, SubsetRef::all(lattice.len()))
            .map_err(|e| e.to_string())?;
        ensure(cert.c() == 0.0, || format!("N={n}: C = {}", cert.c()))?;

        let d = dir.join(format!("c2-{n}"));
        let win = n.to_string();
        cli(&["gen", "chess", "--window", &win, "--out", s(&d)])?;
        let rep = cli(&[
            "lower-bound",
            "--space",
            s(&d.join("points.json")),
            "--families",
            s(&d.join("families.json")),
            "--r",
            &SQRT_2.to_string(),
            "--model",
            "R2",
        ])?;
        let bound = out(&rep, "bound");
        ensure((bound - FRAC_1_SQRT_2).abs() <= 1e-9, || format!("N={n}: bound {bound}"))?;
        ensure(out(&rep, "C") == 0.0, || format!("N={n}: reported C {}", out(&rep, "C")))?;
        parts.push(format!("N={n} bound {bound}"));
    }
    Ok(parts.join(", "))
}

fn criterion_3(dir: &Path) -> Outcome {
    let d = dir.join("c3");
    let rep = cli(&["reproduce", "example2", "--window", "12", "--delta", "0.05", "--out-dir", s(&d)])?;
    let (k, r, c, bound) = (out(&rep, "k"), out(&rep, "r"), out(&rep, "C"), out(&rep, "bound"));
    ensure(k == 2.0 && r == 1.0 && (c - 2.0).abs() <= 1e-9, || format!("k={k} r={r} C={c}"))?;
    ensure(bound == 0.5, || format!("bound {bound}"))?;

    let comb = dir.join("c3-comb");
    let net = dir.join("c3-net");
    cli(&["gen", "comb", "--window", "0,12,-6,6", "--delta", "0.05", "--out", s(&comb)])?;
    cli(&["gen", "net", "--window", "0,12,-6,6", "--eps", "0.05", "--out", s(&net)])?;
    let h = cli(&[
        "hausdorff",
        "--points-a",
        s(&comb.join("points.json")),
        "--points-b",
        s(&net.join("points.json")),
    ])?;
    let v = out(&h, "hausdorff");
    ensure((v - 0.5).abs() <= 0.06, || format!("d_H = {v}"))?;
    Ok(format!("k=2 r=1 C={c} bound {bound}, d_H comb vs net = {v}"))
}

/// Shortest-path closure of random integer weights: always a metric with
/// positive integer distances.
fn random_integer_metric(rng: &mut ChaCha8Rng, n: usize) -> FiniteMetricSpace {
    let mut d = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let w = f64::from(rng.gen_range(1u32..=6));
            d[i][j] = w;
            d[j][i] = w;
        }
    }
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][m] + d[m][j] < d[i][j] {
                    d[i][j] = d[i][m] + d[m][j];
                }
            }
        }
    }
    FiniteMetricSpace::from_matrix(&d, 0.0).expect("closure is a metric")
}

/// min over all correspondences of max | dX - dY | over cell pairs, by direct
/// scan of the cell bitmask.
fn enumeration_gh(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> f64 {
    let (nx, ny) = (x.len(), y.len());
    let mut best = f64::INFINITY;
    for mask in correspondence_masks(nx, ny).unwrap() {
        let cells: Vec<(usize, usize)> = (0..nx * ny)
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| (b / ny, b % ny))
            .collect();
        let mut dis = 0.0f64;
        for &(i, j) in &cells {
            for &(k, l) in &cells {
                dis = dis.max((x.row(i)[k] - y.row(j)[l]).abs());
            }
        }
        best = best.min(dis);
    }
    best / 2.0
}

fn criterion_4() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for trial in 0..100 {
        let nx = rng.gen_range(1..=4);
        let x = random_integer_metric(&mut rng, nx);
        let ny = rng.gen_range(1..=4);
        let y = random_integer_metric(&mut rng, ny);
        let got = exact_gh(&x, &y, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let want = enumeration_gh(&x, &y);
        ensure(got.optimal && got.value == want, || {
            format!("trial {trial}: solver {} vs enumeration {want}", got.value)
        })?;
    }
    for trial in 0..20 {
        let ny = rng.gen_range(1..=8);
        let y = random_integer_metric(&mut rng, ny);
        let same = exact_gh(&y, &y, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure(same.value == 0.0, || format!("forced case {trial}: d_GH(X,X) = {}", same.value))?;
        let point = FiniteMetricSpace::from_matrix(&[vec![0.0]], 0.0).unwrap();
        let p = exact_gh(&point, &y, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure(p.value == y.diameter() / 2.0, || {
            format!("forced case {trial}: d_GH(pt,Y) = {} vs {}", p.value, y.diameter() / 2.0)
        })?;
    }
    let elapsed = t.elapsed().as_secs_f64();
    ensure(elapsed < 60.0, || format!("took {elapsed:.1} s"))?;
    Ok(format!("100 random pairs + 40 forced cases agree, {elapsed:.2} s"))
}

fn random_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<[f64; 2]> {
    (0..n).map(|_| [rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0)]).collect()
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let d = |a: [f64; 2], b: [f64; 2]| ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt();
    let mut violations = 0;
    for _ in 0..1000 {
        let (nx, ny) = (rng.gen_range(2..=30), rng.gen_range(2..=30));
        let xp = random_points(&mut rng, nx);
        let yp = random_points(&mut rng, ny);
        // random correspondence: a random map each way plus a few extra pairs
        let mut pairs: Vec<(usize, usize)> = (0..nx).map(|i| (i, rng.gen_range(0..ny))).collect();
        pairs.extend((0..ny).map(|j| (rng.gen_range(0..nx), j)));
        for _ in 0..rng.gen_range(0..10) {
            pairs.push((rng.gen_range(0..nx), rng.gen_range(0..ny)));
        }
        let rel = Relation::new(pairs).map_err(|e| e.to_string())?;
        let mut dis = 0.0f64;
        for &(i, j) in rel.pairs() {
            for &(k, l) in rel.pairs() {
                dis = dis.max((d(xp[i], xp[k]) - d(yp[j], yp[l])).abs());
            }
        }
        let mut idx: Vec<usize> = (0..nx).collect();
        idx.shuffle(&mut rng);
        let cut = rng.gen_range(1..nx);
        let u = SubsetRef::new(idx[..rng.gen_range(1..=cut)].to_vec(), nx).unwrap();
        let v = SubsetRef::new(idx[cut..].to_vec(), nx).unwrap();
        let ru = rel.pushforward(&u).map_err(|e| e.to_string())?;
        let rv = rel.pushforward(&v).map_err(|e| e.to_string())?;

        let diam = |pts: &[[f64; 2]], s: &SubsetRef| {
            let mut m = 0.0f64;
            for a in s.iter() {
                for b in s.iter() {
                    m = m.max(d(pts[a], pts[b]));
                }
            }
            m
        };
        let gap = |pts: &[[f64; 2]], a: &SubsetRef, b: &SubsetRef| {
            let mut m = f64::INFINITY;
            for i in a.iter() {
                for j in b.iter() {
                    m = m.min(d(pts[i], pts[j]));
                }
            }
            m
        };
        if diam(&yp, &ru) > diam(&xp, &u) + dis + 1e-9 {
            violations += 1;
        }
        if gap(&yp, &ru, &rv) < gap(&xp, &u, &v) - dis - 1e-9 {
            violations += 1;
        }
    }
    ensure(violations == 0, || format!("{violations} violations"))?;
    Ok("1000 trials, 0 violations".into())
}

fn ladder_ratios(rep: &ExperimentReport) -> Result<(), String> {
    let steps = rep.outputs["steps"].as_array().ok_or("no steps")?;
    ensure(steps.len() == 6, || format!("{} ladder rungs", steps.len()))?;
    let gap0 = steps[0]["min_gap"].as_f64().ok_or("no base gap")?;
    let diam0 = steps[0]["max_diam"].as_f64().unwrap();
    for st in steps {
        let m = st["m"].as_u64().unwrap() as i32;
        let f = 2f64.powi(m);
        let gap = st["min_gap"].as_f64().unwrap();
        let diam = st["max_diam"].as_f64().unwrap();
        ensure((gap - f * gap0).abs() <= 1e-9 * f * gap0, || format!("m={m}: gap {gap} vs {}", f * gap0))?;
        if diam0 == 0.0 {
            ensure(diam == 0.0, || format!("m={m}: singleton diameter became {diam}"))?;
        } else {
            ensure((diam - f * diam0).abs() <= 1e-9 * f * diam0, || format!("m={m}: diam {diam}"))?;
        }
    }
    Ok(())
}

fn criterion_6(dir: &Path) -> Outcome {
    let chess = dir.join("c6-chess");
    let brick = dir.join("c6-brick");
    cli(&["gen", "chess", "--window", "10", "--out", s(&chess)])?;
    cli(&["gen", "brick", "--window", "12", "--r", "1", "--out", s(&brick)])?;
    for d in [&chess, &brick] {
        let rep = cli(&[
            "scale-ladder",
            "--space",
            s(&d.join("points.json")),
            "--families",
            s(&d.join("families.json")),
            "--lambda",
            "2",
            "--steps",
            "5",
        ])?;
        ladder_ratios(&rep).map_err(|e| format!("{}: {e}", d.display()))?;
    }
    Ok("chess and brick ladders scale by 2^m over 5 steps".into())
}

fn criterion_7() -> Outcome {
    let w = WindowSpec::square(100.0).unwrap();
    let mut parts = Vec::new();
    for r in [1.0, 2.5, 7.0] {
        let (net, fams) = brick_cover_on_window(&w, r, 3.0 * r).map_err(|e| e.to_string())?;
        let all = SubsetRef::all(net.len());
        let cert = make_certificate(&net, fams.to_vec(), 1.5 * r, Strictness::NonStrict, all.clone())
            .map_err(|e| e.to_string())?;
        let gap = cert.min_gap().ok_or("no gap measured")?;
        let mult = multiplicity(&net, cert.families(), &all).map_err(|e| e.to_string())?;
        ensure(gap >= 1.5 * r - 1e-9, || format!("r={r}: gap {gap}"))?;
        ensure(cert.c() <= 3.0 * r * SQRT_2 + 1e-9, || format!("r={r}: diam {}", cert.c()))?;
        ensure(mult == 1, || format!("r={r}: multiplicity {mult}"))?;
        parts.push(format!("r={r} gap {gap} C {:.6}", cert.c()));
    }
    Ok(parts.join(", "))
}

fn binary(args: &[&str]) -> (i32, String) {
    let o = Process::new(env!("CARGO_BIN_EXE_metric-gh"))
        .args(args)
        .output()
        .expect("binary runs");
    (o.status.code().unwrap_or(-1), String::from_utf8_lossy(&o.stderr).into_owned())
}

fn criterion_8(dir: &Path) -> Outcome {
    let brick = dir.join("c8-brick");
    cli(&["gen", "brick", "--window", "12", "--r", "1", "--out", s(&brick)])?;
    let (code, err) = binary(&[
        "lower-bound",
        "--space",
        s(&brick.join("points.json")),
        "--families",
        s(&brick.join("families.json")),
        "--r",
        "1.5",
        "--model",
        "R2",
    ]);
    ensure(code == 3 && err.contains("3 families"), || format!("k=3: exit {code}, {err}"))?;

    let chess = dir.join("c8-chess");
    cli(&["gen", "chess", "--window", "6", "--out", s(&chess)])?;
    let model = dir.join("c8-model.json");
    std::fs::write(
        &model,
        r#"{"name":"rigid","asdim_lower":2,"stabilizer_nontrivial":false,"provenance":"test descriptor"}"#,
    )
    .unwrap();
    let r = SQRT_2.to_string();
    let (pts, fams_file) = (chess.join("points.json"), chess.join("families.json"));
    let base = [
        "lower-bound",
        "--space",
        s(&pts),
        "--families",
        s(&fams_file),
        "--r",
        &r,
    ];
    let (code, err) = binary(&[&base[..], &["--model-file", s(&model)]].concat());
    ensure(code == 3 && err.contains("trivial stabilizer"), || format!("rigid model: exit {code}, {err}"))?;

    let w = WindowSpec::square(6.0).unwrap();
    let lattice = gen_lattice_window(&w).unwrap();
    let fams = gen_chess_families(&lattice).unwrap();
    let strict = check_r_disjoint(&lattice, &fams[0], SQRT_2, Strictness::Strict).unwrap();
    ensure(!strict.passed && strict.min_gap == Some(SQRT_2), || format!("strict check: {strict:?}"))?;
    match make_certificate(&lattice, fams.to_vec(), SQRT_2, Strictness::Strict, SubsetRef::all(lattice.len())) {
        Err(Error::NotDisjoint { gap, .. }) if gap == SQRT_2 => {}
        other => return Err(format!("strict certificate: {other:?}")),
    }
    let (code, err) = binary(&[&base[..], &["--model", "R2", "--strict"]].concat());
    ensure(code == 2 && err.contains("1.4142135623730951"), || format!("strict CLI: exit {code}, {err}"))?;
    let (code, err) = binary(&[&base[..], &["--model", "R2"]].concat());
    ensure(code == 0, || format!("non-strict CLI: exit {code}, {err}"))?;
    Ok("k=3 -> exit 3, trivial stabilizer -> exit 3, strict fails at gap sqrt(2), non-strict passes".into())
}

fn independent_violation(d: &[Vec<f64>], tol: f64) -> Option<(usize, usize, usize)> {
    let n = d.len();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if d[i][k] > d[i][j] + d[j][k] + tol {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for trial in 0..1000 {
        let n = rng.gen_range(3..=12);
        let pts = random_points(&mut rng, n);
        let mut d: Vec<Vec<f64>> = pts
            .iter()
            .map(|a| pts.iter().map(|b| ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()).collect())
            .collect();
        let mut idx: Vec<usize> = (0..n).collect();
        idx.shuffle(&mut rng);
        let (i, j, k) = (idx[0], idx[1], idx[2]);
        let planted = d[i][j] + d[j][k] + rng.gen_range(0.01..5.0);
        d[i][k] = planted;
        d[k][i] = planted;
        ensure(independent_violation(&d, DEFAULT_TOL).is_some(), || format!("trial {trial}: plant failed"))?;
        match FiniteMetricSpace::from_matrix(&d, DEFAULT_TOL) {
            Err(Error::TriangleViolation { i, j, k, direct, via }) => {
                let genuine = d[i][k] > d[i][j] + d[j][k] + DEFAULT_TOL;
                ensure(genuine && direct == d[i][k] && via == d[i][j] + d[j][k], || {
                    format!("trial {trial}: reported ({i},{j},{k}) is not a violation")
                })?;
            }
            other => return Err(format!("trial {trial}: expected a triangle violation, got {other:?}")),
        }
    }
    Ok("1000 planted violations rejected with genuine witnesses".into())
}

fn main() {
    let tmp = tempfile::tempdir().expect("temp dir");
    let dir: PathBuf = tmp.path().to_path_buf();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("hausdorff lattice vs net", Box::new(|| criterion_1(&dir))),
        ("chess certificate", Box::new(|| criterion_2(&dir))),
        ("comb reproduction", Box::new(|| criterion_3(&dir))),
        ("exact GH vs enumeration", Box::new(criterion_4)),
        ("pushforward inequalities", Box::new(criterion_5)),
        ("scaling ladder", Box::new(|| criterion_6(&dir))),
        ("brick witness", Box::new(criterion_7)),
        ("theorem gates", Box::new(|| criterion_8(&dir))),
        ("metric validation", Box::new(criterion_9)),
    ];
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match result {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", n + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

