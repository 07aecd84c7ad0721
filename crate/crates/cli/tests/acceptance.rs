//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use dompack::constructions::{
    construct_unitdisk, covering_gap, covering_points, unitdisk_constant, GEOMETRY_EPS, UNITDISK_COVER_RADIUS,
};
use dompack::engine::{
    audit, run_distance_hereditary, run_planar, run_treewidth, run_twinwidth, run_twodeg, Run, WorkState,
};
use dompack::families::{
    brute_force_tw_certificate, brute_force_tww_sequence, canonical_graph6, gen_chained_blocks, gen_cycle,
    gen_petersen, gen_random_cograph, gen_random_convex, gen_random_distance_hereditary, gen_random_graph,
    gen_random_interval, gen_random_partial_ktree, gen_random_planar, gen_random_tree, gen_random_twodeg,
    gen_random_unitdisk, gen_rook, gen_split, gen_threedeg, greedy_tww_sequence, recognize_at_free, rng,
};
use dompack::oracles::{exact_domination, exact_packing, gamma_rho};
use dompack::ratio::achieved;
use dompack::{Graph, Mode, Rational, XYInstance};
use rand::Rng;
use rayon::prelude::*;

/// Sample spacing for the covering check.
const GRID_STEP: f64 = 0.01;
const INSTANCES_PER_DRIVER: u64 = 500;
const RANDOM_DUALITY_GRAPHS: u64 = 10_000;
const TREES_PER_ORDER: u64 = 2_000;

type Verdict = Result<String, String>;

fn labelled(n: usize, mask: u64) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, e)| e)
        .collect();
    Graph::from_edges(n, &edges).unwrap()
}

fn all_labelled(max_n: usize) -> impl ParallelIterator<Item = Graph> {
    (1..=max_n).into_par_iter().flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (0..1u64 << pairs).into_par_iter().map(move |m| labelled(n, m))
    })
}

fn failures<T: Send>(items: Vec<T>) -> Result<(), String>
where
    T: std::fmt::Display,
{
    match items.first() {
        None => Ok(()),
        Some(first) => Err(format!("{} failure(s), first: {first}", items.len())),
    }
}

fn duality() -> Verdict {
    let exhaustive: Vec<String> = all_labelled(6)
        .filter_map(|g| {
            let (gamma, rho) = gamma_rho(&g).unwrap();
            (gamma < rho).then(|| dompack::io::to_graph6(&g))
        })
        .collect();
    let count: usize = (1..=6usize).map(|n| 1usize << (n * (n - 1) / 2)).sum();
    let random: Vec<String> = (0..RANDOM_DUALITY_GRAPHS)
        .into_par_iter()
        .filter_map(|s| {
            let g = gen_random_graph(1 + (s % 12) as usize, 0.1 + 0.1 * (s % 8) as f64, s);
            let (gamma, rho) = gamma_rho(&g).unwrap();
            (gamma < rho).then(|| format!("seed {s}"))
        })
        .collect();
    failures(exhaustive.into_iter().chain(random).collect())?;
    Ok(format!("{count} labelled graphs n <= 6 and {RANDOM_DUALITY_GRAPHS} random n <= 12, gamma >= rho throughout"))
}

fn trees() -> Verdict {
    let bad: Vec<String> = (1..=12usize)
        .into_par_iter()
        .flat_map(|n| (0..TREES_PER_ORDER).into_par_iter().map(move |s| (n, s)))
        .filter_map(|(n, s)| {
            let (gamma, rho) = gamma_rho(&gen_random_tree(n, s)).unwrap();
            (gamma != rho).then(|| format!("n {n} seed {s}: {gamma} vs {rho}"))
        })
        .collect();
    failures(bad)?;
    Ok(format!("{} random trees n <= 12, gamma = rho throughout", 12 * TREES_PER_ORDER))
}

fn cycles() -> Verdict {
    let mut bad = Vec::new();
    for n in 3..=30 {
        let (gamma, rho) = gamma_rho(&gen_cycle(n)).unwrap();
        let tight = gamma == rho + 1;
        if gamma > rho + 1 || tight != (n % 3 != 0) {
            bad.push(format!("cycle n={n}: gamma {gamma}, rho {rho}"));
        }
    }
    failures(bad)?;
    Ok("cycles n=3..30: gamma <= rho + 1, equality exactly when n = 1, 2 mod 3".into())
}

fn families() -> Verdict {
    let mut bad = Vec::new();
    let mut expect = |name: String, g: Graph, ok: &dyn Fn(usize, usize) -> bool| {
        let (gamma, rho) = gamma_rho(&g).unwrap();
        if !ok(gamma, rho) {
            bad.push(format!("{name}: gamma {gamma}, rho {rho}"));
        }
    };
    for i in 1..=3 {
        expect(format!("chained blocks i={i}"), gen_chained_blocks(i).unwrap(), &|g, r| g == 2 * i + 1 && r == i);
    }
    for k in 1..=3 {
        expect(format!("split k={k}"), gen_split(k).unwrap(), &|g, r| g == k && r == 1);
    }
    for k in 2..=3 {
        expect(format!("threedeg k={k}"), gen_threedeg(k).unwrap(), &|g, r| r == 2 && g >= k);
    }
    for n in 2..=4 {
        expect(format!("rook n={n}"), gen_rook(n), &|g, r| g == n && r == 1);
    }
    expect("Petersen".into(), gen_petersen(), &|g, r| g == 3 && g == 2 * r + 1);
    failures(bad)?;
    Ok("chained blocks i=1..3, split k=1..3, threedeg k=2..3, rook n=2..4 and Petersen all match".into())
}

fn subcubic_scan() -> Verdict {
    let fixture = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/subcubic10.g6");
    let out = Command::new(env!("CARGO_BIN_EXE_dompack"))
        .args(["scan", "--source", "file"])
        .arg(&fixture)
        .args(["--filter", "subcubic", "--check", "henning", "--summary-only", "--jobs", "4"])
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("scan exited {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let s = &v["summary"];
    let petersen = canonical_graph6(&gen_petersen());
    let flagged = s["equality_witnesses"].as_array().is_some_and(|a| a.iter().any(|g| g == &petersen));
    if s["violations"] != 0 || !flagged {
        return Err(format!("summary {s}"));
    }
    Ok(format!(
        "{} connected subcubic graphs n <= 10, 0 violations of gamma <= 2 rho + 1, {} equality case(s) including Petersen",
        s["graphs"], s["equality"]
    ))
}

fn marks(n: usize, seed: u64, px: f64, py: f64) -> (Vec<usize>, Vec<usize>) {
    let mut r = rng(seed ^ 0xacce);
    let (mut x, mut y) = (Vec::new(), Vec::new());
    for v in 0..n {
        if r.gen_bool(px) {
            x.push(v);
        } else if r.gen_bool(py) {
            y.push(v);
        }
    }
    (x, y)
}

fn x_weight(s: &WorkState) -> usize {
    s.x.iter().map(|&x| s.degree(x).min(2)).sum()
}

fn min_width<T>(mut find: impl FnMut(usize) -> Option<T>) -> (usize, T) {
    (0..).find_map(|k| find(k).map(|c| (k, c))).unwrap()
}

/// Runs one driver on instance `seed`; `Err` describes a failure.
fn drive(name: &str, seed: u64) -> Result<(), String> {
    let fail = |e: String| format!("{name} seed {seed}: {e}");
    let check = |inst: &XYInstance, run: Result<Run, dompack::engine::EngineFailure>, budget: &dyn Fn(&WorkState, usize, usize) -> bool| {
        let run = run.map_err(|e| e.to_string())?;
        run.witness.check(inst)?;
        audit(inst, &run.witness.trace, budget).map_err(|e| e.to_string())?;
        Ok::<(), String>(())
    };
    let n = 3 + (seed % 22) as usize;
    match name {
        "treewidth" => {
            let (g, h, k) = if n <= 10 {
                let g = gen_random_graph(n, 0.2 + 0.05 * (seed % 6) as f64, seed);
                let (k, h) = min_width(|k| brute_force_tw_certificate(&g, k.max(1)).unwrap());
                (g, h, k.max(1))
            } else {
                let k = 1 + (seed % 3) as usize;
                let (g, h) = gen_random_partial_ktree(n, k, 0.7, seed);
                (g, h, k)
            };
            let (x, y) = marks(n, seed, 0.1, 0.15);
            let inst = XYInstance::from_ids(g, &x, &y, Mode::Plain).unwrap();
            check(&inst, run_treewidth(&inst, &h, k), &|_, d, p| d <= k * p)
        }
        "planar" => {
            let (g, emb) = gen_random_planar(n, 0.3, seed);
            let (x, y) = marks(n, seed, 0.08, 0.15);
            let inst = XYInstance::from_ids(g, &x, &y, Mode::Plain).unwrap();
            check(&inst, run_planar(&inst, Some(&emb)), &|_, d, p| d <= 10 * p)
        }
        "twodeg" => {
            let g = gen_random_twodeg(n, seed);
            let (x, _) = marks(n, seed, 0.15, 0.0);
            let inst = XYInstance::from_ids(g, &x, &[], Mode::Plain).unwrap();
            check(&inst, run_twodeg(&inst), &|s, d, p| d <= 7 * p + x_weight(s))
        }
        "twinwidth" => {
            let g = gen_random_graph(n, 0.15 + 0.05 * (seed % 8) as f64, seed);
            let (seq, k) = if n <= 8 {
                let (k, seq) = min_width(|k| brute_force_tww_sequence(&g, k).unwrap());
                (seq, k.max(2))
            } else {
                let seq = greedy_tww_sequence(&g);
                let k = seq.declared_width.max(2);
                (seq, k)
            };
            let (_, y) = marks(n, seed, 0.0, 0.2);
            let inst = XYInstance::from_ids(g, &[], &y, Mode::Black).unwrap();
            check(&inst, run_twinwidth(&inst, &seq, k), &|_, d, p| d <= 4 * k * k * p)
        }
        "dh" => {
            let g = gen_random_distance_hereditary(n, seed);
            let (_, y) = marks(n, seed, 0.0, 0.2);
            let inst = XYInstance::from_ids(g, &[], &y, Mode::Total).unwrap();
            check(&inst, run_distance_hereditary(&inst), &|_, d, p| d <= 2 * p)
        }
        _ => unreachable!(),
    }
    .map_err(fail)
}

fn soundness() -> Verdict {
    let drivers = ["treewidth", "planar", "twodeg", "twinwidth", "dh"];
    let bad: Vec<String> = drivers
        .par_iter()
        .flat_map(|&d| (0..INSTANCES_PER_DRIVER).into_par_iter().map(move |s| (d, s)))
        .filter_map(|(d, s)| drive(d, s).err())
        .collect();
    failures(bad)?;
    Ok(format!(
        "{INSTANCES_PER_DRIVER} instances per driver ({}), n <= 24, checkers and budget hold after every unwind",
        drivers.join(", ")
    ))
}

struct Corpus {
    label: &'static str,
    checked: usize,
    max_ratio: Option<Rational>,
    violations: Vec<String>,
}

/// Checks `gamma <= factor * rho` on every instance `item` yields; ratios are
/// exact rationals.
fn ratio_corpus(label: &'static str, count: u64, item: impl Fn(u64) -> Option<(XYInstance, usize)> + Sync) -> Corpus {
    let results: Vec<(u64, usize, usize, usize)> = (0..count)
        .into_par_iter()
        .filter_map(|s| {
            let (inst, factor) = item(s)?;
            let gamma = exact_domination(&inst).unwrap().value;
            let rho = exact_packing(&inst).unwrap().value;
            Some((s, gamma, rho, factor))
        })
        .collect();
    Corpus {
        label,
        checked: results.len(),
        max_ratio: results.iter().filter_map(|&(_, g, r, _)| achieved(g, r)).max(),
        violations: results
            .iter()
            .filter(|&&(_, g, r, c)| g > c * r)
            .map(|(s, g, r, c)| format!("{label} seed {s}: gamma {g} > {c} rho {r}"))
            .collect(),
    }
}

fn ratios() -> Verdict {
    let plain = XYInstance::plain;
    let at_free = |g: Graph| (g.is_connected() && recognize_at_free(&g)).then(|| (plain(g), 3));
    let corpora = [
        ratio_corpus("treewidth", 300, |s| {
            let k = 1 + (s % 3) as usize;
            let n = 3 + (s % 12) as usize;
            let (g, _) = gen_random_partial_ktree(n, k, 0.7, s);
            let (x, y) = marks(n, s, 0.1, 0.15);
            Some((XYInstance::from_ids(g, &x, &y, Mode::Plain).unwrap(), k))
        }),
        ratio_corpus("planar", 300, |s| Some((plain(gen_random_planar(3 + (s % 12) as usize, 0.3, s).0), 10))),
        ratio_corpus("2-degenerate", 300, |s| Some((plain(gen_random_twodeg(3 + (s % 12) as usize, s)), 7))),
        ratio_corpus("distance-hereditary", 300, |s| {
            let n = 2 + (s % 13) as usize;
            let (_, y) = marks(n, s, 0.0, 0.2);
            let g = gen_random_distance_hereditary(n, s);
            Some((XYInstance::from_ids(g, &[], &y, Mode::Total).unwrap(), 2))
        }),
        ratio_corpus("AT-free", 400, |s| {
            let n = 2 + (s % 13) as usize;
            at_free(if s % 2 == 0 { gen_random_interval(n, s) } else { gen_random_cograph(n, s) })
        }),
        ratio_corpus("AT-free labelled n = 6", 1 << 15, |mask| at_free(labelled(6, mask))),
        ratio_corpus("convex", 300, |s| {
            Some((plain(gen_random_convex(1 + (s % 8) as usize, 1 + (s % 7) as usize, s).0), 3))
        }),
        ratio_corpus("twin-width 2", 300, |s| {
            let n = 2 + (s % 7) as usize;
            let g = gen_random_graph(n, 0.2 + 0.1 * (s % 6) as f64, s);
            brute_force_tww_sequence(&g, 2).unwrap()?;
            let (_, y) = marks(n, s, 0.0, 0.2);
            Some((XYInstance::from_ids(g, &[], &y, Mode::Black).unwrap(), 16))
        }),
    ];
    let bad: Vec<String> = corpora.iter().flat_map(|c| c.violations.iter().cloned()).collect();
    failures(bad)?;
    let parts: Vec<String> = corpora
        .iter()
        .map(|c| {
            let max = c.max_ratio.map_or("-".to_string(), |r| r.to_string());
            format!("{} {} (max {max})", c.label, c.checked)
        })
        .collect();
    Ok(format!("0 violations; instances checked: {}", parts.join(", ")))
}

fn unit_disks() -> Verdict {
    let pts = covering_points(UNITDISK_COVER_RADIUS);
    let c = unitdisk_constant();
    if let Some(q) = covering_gap(&pts, UNITDISK_COVER_RADIUS, GRID_STEP) {
        return Err(format!("sample {q:?} uncovered"));
    }
    let results: Vec<(Option<String>, bool)> = (0..200u64)
        .into_par_iter()
        .map(|s| {
            let n = if s % 2 == 0 { 4 + (s % 17) as usize } else { 20 + (s % 40) as usize };
            let cfg = gen_random_unitdisk(n, 3.0 + (s % 10) as f64, s);
            let w = construct_unitdisk(&cfg);
            let g = cfg.graph();
            let inst = XYInstance::plain(g.clone());
            if let Err(e) = w.check(&inst) {
                return (Some(format!("seed {s}: {e}")), false);
            }
            if w.d.len() > c * w.p.len() {
                return (Some(format!("seed {s}: |D| {} > {c} |P| {}", w.d.len(), w.p.len())), false);
            }
            if g.n() > 20 {
                return (None, false);
            }
            let (gamma, rho) = gamma_rho(&g).unwrap();
            ((gamma > 32 * rho).then(|| format!("seed {s}: gamma {gamma} > 32 rho {rho}")), true)
        })
        .collect();
    let solved = results.iter().filter(|r| r.1).count();
    failures(results.into_iter().filter_map(|r| r.0).collect())?;
    Ok(format!(
        "covering of radius {UNITDISK_COVER_RADIUS} has c_cov = {c} points, no gap at grid step {GRID_STEP} (tol {GEOMETRY_EPS:e}); 200 witnesses within c_cov |P|; gamma <= 32 rho on {solved} configurations with n <= 20"
    ))
}

fn determinism() -> Verdict {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    let exe = env!("CARGO_BIN_EXE_dompack");
    let twice = |args: &[String]| -> Result<Vec<u8>, String> {
        let a = Command::new(exe).args(args).output().map_err(|e| e.to_string())?;
        let b = Command::new(exe).args(args).output().map_err(|e| e.to_string())?;
        if a.stdout != b.stdout || a.stderr != b.stderr || a.status.code() != b.status.code() {
            return Err(format!("`dompack {}` differs between runs", args.join(" ")));
        }
        Ok(a.stdout)
    };
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let save = |name: &str, bytes: &[u8]| std::fs::write(path(name), bytes).map_err(|e| e.to_string());

    save("pl.g6", &twice(&s(&["generate", "--family", "random-planar", "--params", "n=14,seed=5", "--certificate-out", &path("rs.json")]))?)?;
    save("kt.g6", &twice(&s(&["generate", "--family", "random-ktree", "--params", "n=14,seed=5", "--certificate-out", &path("h.g6")]))?)?;
    save("cv.g6", &twice(&s(&["generate", "--family", "random-convex", "--params", "seed=5", "--certificate-out", &path("enc.json")]))?)?;
    save("ud.csv", &twice(&s(&["generate", "--family", "random-unitdisk", "--params", "seed=5"]))?)?;
    save("rg.g6", &twice(&s(&["generate", "--family", "random-graph", "--params", "n=9,seed=5"]))?)?;
    save("dh.g6", &twice(&s(&["generate", "--family", "random-dh", "--params", "seed=5"]))?)?;
    save("td.g6", &twice(&s(&["generate", "--family", "random-twodeg", "--params", "seed=5"]))?)?;
    save("iv.g6", &twice(&s(&["generate", "--family", "random-interval", "--params", "seed=5"]))?)?;
    save("seq.json", &twice(&s(&["certify", "--kind", "tww", &path("rg.g6")]))?)?;
    let mut commands = vec![
        s(&["families", "list"]),
        s(&["solve", "--variant", "gamma", &path("pl.g6")]),
        s(&["solve", "--variant", "rho", "--mode", "total", "--y", "0,1", &path("dh.g6")]),
        s(&["construct", "--class", "planar", "--certificate", &path("rs.json"), &path("pl.g6")]),
        s(&["construct", "--class", "treewidth", "--certificate", &path("h.g6"), &path("kt.g6")]),
        s(&["construct", "--class", "twodeg", "--x", "0", &path("td.g6")]),
        s(&["construct", "--class", "twinwidth", "--certificate", &path("seq.json"), &path("rg.g6")]),
        s(&["construct", "--class", "dh", &path("dh.g6")]),
        s(&["construct", "--class", "atfree", &path("iv.g6")]),
        s(&["construct", "--class", "convex", "--certificate", &path("enc.json"), &path("cv.g6")]),
        s(&["construct", "--class", "unitdisk", &path("ud.csv")]),
        s(&["construct", "--class", "generic", &path("rg.g6")]),
        s(&["validate", "--what", "rotation", &path("rs.json"), &path("pl.g6")]),
        s(&["scan", "--source", "enumerate-n", "5", "--jobs", "1"]),
        s(&["scan", "--source", "enumerate-n", "5", "--jobs", "4", "--check", "henning"]),
    ];
    commands.push(s(&["certify", "--kind", "tw", &path("kt.g6")]));
    for c in &commands {
        twice(c)?;
    }
    Ok(format!("{} commands (plus 9 generators) byte-identical across two runs", commands.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 9] = [
        ("duality", duality),
        ("tree equality", trees),
        ("cycle law", cycles),
        ("negative families", families),
        ("subcubic scan", subcubic_scan),
        ("driver soundness", soundness),
        ("ratio bounds by oracle", ratios),
        ("unit-disk geometry", unit_disks),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = f();
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("criterion {} [{name}]: PASS ({detail}) in {secs:.1}s", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} [{name}]: FAIL ({detail}) in {secs:.1}s", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
