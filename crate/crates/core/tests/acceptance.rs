//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::collections::HashSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use grouprr::estimators::{
    four_cycle_estimate, local_sensitivity_of, smooth_sensitivity, smooth_sensitivity_scan, triangle_raw_sum,
    triangles_clip,
};
use grouprr::graph::{erdos_renyi, ground_truth, random_bipartite, Graph, GroundTruth};
use grouprr::harness::{
    build_graph, prepare_graph, run_trials_on, write_trials_csv, ExperimentConfig, GraphSource, Mechanism, Sampling,
    Stat,
};
use grouprr::privacy::{
    amplified_epsilon, is_prime, BudgetLedger, BudgetSplit, GroupRrModel, HashScheme, Member, ZGamma4,
};
use grouprr::protocol::{expected_upload_ones, run_grouprr, CommLedger, GroupRrConfig, Publication};
use grouprr::rng::{Role, Streams};

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn mean_sd(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

fn publish(g: &Graph, s: usize, mu_c: f64, split: BudgetSplit, streams: &Streams) -> Publication {
    let mut ledger = BudgetLedger::new(split);
    run_grouprr(g, &GroupRrConfig { s, mu_c, split }, streams, &mut ledger).unwrap()
}

fn c1_debias_identities() -> Outcome {
    let mut worst: f64 = 0.0;
    for &d in &[0.0, 1.0, 5.0, 50.0] {
        for &s in &[2usize, 5, 10] {
            for &m in &[10usize, 100] {
                for &eps1 in &[0.5, 1.0, 2.0] {
                    // oracle: formulas written out directly
                    let e = (1.0 + s as f64 * (eps1 as f64).exp_m1()).ln();
                    let (sf, mf) = (s as f64, m as f64);
                    let ms = mf * sf;
                    let ee = e.exp();
                    let omega = ((ee + 1.0) / (ee - 1.0)) * ((ms - 1.0) / (mf - 1.0));
                    let sigma = ((sf - 1.0) / (ms - sf)) * d + (1.0 / (ee - 1.0)) * ((ms - 1.0) / (mf - 1.0));
                    let pp = ((sf - 1.0) / sf) * ((d - 1.0) / (ms - 1.0)) + 1.0 / sf;
                    let pa = ((sf - 1.0) / sf) * (d / (ms - 1.0));
                    let publish = |p: f64| ee / (1.0 + ee) * p + (1.0 - p) / (1.0 + ee);
                    worst = worst.max((omega * publish(pa) - sigma).abs());
                    worst = worst.max((omega * publish(pp) - sigma - 1.0).abs());

                    let model = GroupRrModel::new(m, s, amplified_epsilon(eps1, s)).unwrap();
                    worst = worst.max((model.omega() - omega).abs() / omega);
                    worst = worst.max((model.sigma(d) - sigma).abs());
                    worst = worst.max((model.omega() * model.published_absent(d) - model.sigma(d)).abs());
                    worst = worst.max((model.omega() * model.published_present(d) - model.sigma(d) - 1.0).abs());
                }
            }
        }
    }
    check(worst < 1e-9, format!("max deviation {worst:.2e} (tol 1e-9)"))
}

fn c2_amplification() -> Outcome {
    let mut worst: f64 = 0.0;
    for &eps1 in &[0.5f64, 1.0, 2.0] {
        for &s in &[2usize, 5, 10, 50] {
            let e = amplified_epsilon(eps1, s);
            let p1 = 1.0 / (1.0 + e.exp());
            let sf = s as f64;
            let p2 = ((sf - 1.0) / sf) * p1 + (1.0 / sf) * e.exp() / (1.0 + e.exp());
            worst = worst.max((p2 / p1 - eps1.exp()).abs() / eps1.exp());
        }
    }
    check(worst < 1e-9, format!("max relative deviation of p2/p1 from e^ε1: {worst:.2e}"))
}

fn c3_hash_partition() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut failures = Vec::new();
    for case in 0..50 {
        let s: usize = rng.gen_range(1..=20);
        let p = loop {
            let c: u64 = rng.gen_range((s * s).max(2) as u64..=10007);
            if is_prime(c) {
                break c;
            }
        };
        let n = rng.gen_range(1..p as usize);
        let theta = rng.gen_range(1..p);
        let phi = rng.gen_range(0..p);

        // injectivity of x -> (θx + φ) mod p, exhaustively
        let mut seen = vec![false; p as usize];
        for x in 0..p {
            let y = ((theta * x + phi) % p) as usize;
            if seen[y] {
                failures.push(format!("case {case}: affine map not injective"));
            }
            seen[y] = true;
        }

        let scheme = HashScheme::with_prime(n, p, s, &[(theta, phi)]).unwrap();
        let m = scheme.m();
        if m != (p as usize).div_ceil(s) {
            failures.push(format!("case {case}: m={m}"));
        }
        let mut sizes = vec![0usize; m];
        for x in 0..p {
            sizes[((theta * x + phi) % p % m as u64) as usize] += 1;
        }
        for t in 0..m {
            let keys = scheme.bin_keys(0, t);
            if keys.len() != sizes[t] || !(keys.len() == s || keys.len() + 1 == s) {
                failures.push(format!("case {case} (p={p}, s={s}): bin {t} has {} keys", keys.len()));
            }
        }
        let groups = scheme.partition_groups(0, n);
        let mut reals = Vec::new();
        for g in &groups {
            if g.len() != s {
                failures.push(format!("case {case}: padded group of size {}", g.len()));
            }
            reals.extend(g.iter().filter_map(|m| if let Member::Real(x) = m { Some(*x) } else { None }));
        }
        reals.sort_unstable();
        if reals != (0..n).collect::<Vec<_>>() {
            failures.push(format!("case {case}: real keys are not 0..{n} exactly once"));
        }
    }
    check(failures.is_empty(), if failures.is_empty() { "50 random schemes exact".to_string() } else { failures.join("; ") })
}

fn c4_z4_sampler() -> Outcome {
    let z = ZGamma4::shared();
    let n = 1_000_000;
    let draws: Vec<f64> = (0..100u64)
        .into_par_iter()
        .flat_map_iter(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(0x2404 + chunk);
            (0..n / 100).map(move |_| z.sample(&mut rng)).collect::<Vec<_>>()
        })
        .collect();
    let var = draws.iter().map(|x| x * x).sum::<f64>() / n as f64;
    let mut sorted = draws.clone();
    sorted.sort_by(f64::total_cmp);
    let med = 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    // sd of the sample median is 1/(2 f(0) sqrt(n))
    let med_sd = 1.0 / (2.0 * (2f64.sqrt() / std::f64::consts::PI) * (n as f64).sqrt());
    let inside = draws.iter().filter(|x| x.abs() <= 1.0).count() as f64 / n as f64;
    // Simpson quadrature of the density on [-1, 1]
    let f = |x: f64| (2f64.sqrt() / std::f64::consts::PI) / (1.0 + x.powi(4));
    let steps = 2000;
    let h = 2.0 / steps as f64;
    let quad = (0..=steps)
        .map(|k| {
            let w = if k == 0 || k == steps { 1.0 } else if k % 2 == 1 { 4.0 } else { 2.0 };
            w * f(-1.0 + k as f64 * h)
        })
        .sum::<f64>()
        * h
        / 3.0;
    let pass = (var - 1.0).abs() <= 0.05 && med.abs() <= 4.0 * med_sd && (inside - quad).abs() <= 0.01;
    check(pass, format!("variance {var:.4}, median {med:.5} (4σ {:.5}), P(|Z|≤1) {inside:.4} vs {quad:.4}", 4.0 * med_sd))
}

fn c5_unbiasedness() -> Outcome {
    let reruns = 500u64;
    let split = BudgetSplit::new(1.0, 1.0, 1.0).unwrap();

    let g = erdos_renyi(50, 0.2, &mut ChaCha8Rng::seed_from_u64(50));
    let truth = ground_truth(&g).triangles as f64;
    let sums: Vec<f64> = (0..reruns)
        .into_par_iter()
        .map(|t| {
            let publication = publish(&g, 5, 0.5, split, &Streams::new(500).trial(t));
            (0..g.n()).map(|i| triangle_raw_sum(&g, i, &publication).raw_sum()).sum()
        })
        .collect();
    let (mean, sd) = mean_sd(&sums);
    let z_tri = (mean - truth) / (sd / (reruns as f64).sqrt());

    let h = random_bipartite(15, 15, 0.4, &mut ChaCha8Rng::seed_from_u64(30));
    let truth4 = ground_truth(&h).four_cycles as f64;
    let sums4: Vec<f64> = (0..reruns)
        .into_par_iter()
        .map(|t| {
            let publication = publish(&h, 5, 0.5, split, &Streams::new(530).trial(t));
            (0..h.n()).map(|i| four_cycle_estimate(&h, i, &publication)).sum::<f64>() / 2.0
        })
        .collect();
    let (mean4, sd4) = mean_sd(&sums4);
    let z_c4 = (mean4 - truth4) / (sd4 / (reruns as f64).sqrt());
    check(
        z_tri.abs() <= 4.0 && z_c4.abs() <= 4.0,
        format!(
            "triangles mean {mean:.2} vs {truth} (z={z_tri:.2}); 4-cycles mean {mean4:.1} vs {truth4} (z={z_c4:.2})"
        ),
    )
}

fn c6_variance_scaling() -> Outcome {
    let g = erdos_renyi(200, 0.05, &mut ChaCha8Rng::seed_from_u64(6));
    let (j, k) = g.edges().find(|&(u, v)| u.max(v) > 100).map(|(u, v)| (u.max(v), u.min(v))).unwrap();
    let eps1 = 1.0;
    let split = BudgetSplit::new(1.0, eps1, 1.0).unwrap();
    let reps = 20_000u64;
    let mut points = Vec::new();
    for &s in &[2usize, 4, 8, 16] {
        let ests: Vec<f64> = (0..reps)
            .into_par_iter()
            .map(|t| {
                let streams = Streams::new(600 + s as u64).trial(t);
                let scheme = HashScheme::new(g.n(), s, &mut streams.rng(Role::HashCoefficients, 0)).unwrap();
                let model = GroupRrModel::new(scheme.m(), s, amplified_epsilon(eps1, s)).unwrap();
                let mut rng = streams.rng(Role::GroupRr, j as u64);
                let list = grouprr::protocol::group_rr_user(&g, &scheme, j, model.eps_prime, &mut rng, None);
                let d_tilde = g.low_degree(j) as f64
                    + grouprr::privacy::laplace_sample(1.0 / split.eps0, &mut streams.rng(Role::DegreeSharing, j as u64));
                model.params(d_tilde).estimate(list.contains(scheme.bin(j, k)), 1.0)
            })
            .collect();
        let (mean, sd) = mean_sd(&ests);
        points.push(((s as f64).ln(), (sd * sd).ln(), mean, sd * sd));
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let slope = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>()
        / points.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    let vars: Vec<String> = points.iter().map(|p| format!("{:.1}", p.3)).collect();
    check((slope - 1.0).abs() <= 0.5, format!("log-log slope {slope:.3}; Var at s=2,4,8,16: {}", vars.join(", ")))
}

fn c7_communication() -> Outcome {
    let mut cfg = ExperimentConfig::new(GraphSource::WikipediaLike, Stat::Triangles, Mechanism::GroupRrClip);
    cfg.subsample = Some(2000);
    let (g, _) = prepare_graph(&cfg).unwrap();
    let split = cfg.budget().unwrap();
    let mut result = Vec::new();
    let mut upload_dev: f64 = 0.0;
    let mut predicted = Vec::new();
    for &(s, mu_c) in &[(10usize, 0.1), (1, 1.0)] {
        let streams = Streams::new(7).trial(s as u64);
        let publication = publish(&g, s, mu_c, split, &streams);
        let comm = CommLedger::grouprr(&publication);
        result.push(comm.mean_download());
        let m = publication.scheme().m();
        let eps_prime = publication.model().eps_prime;
        let expected: f64 = (0..g.n()).map(|i| expected_upload_ones(m, s, eps_prime, g.low_degree(i) as f64)).sum();
        let observed: f64 = publication.lists().iter().map(|l| l.len() as f64).sum();
        upload_dev = upload_dev.max((observed - expected).abs() / expected);
        // expected download from the flip rate alone: retained ones times index width
        let bits = grouprr::protocol::bits_per_index(m) as f64;
        predicted.push(mu_c * expected / g.n() as f64 * bits);
    }
    let analytic = predicted[0] / predicted[1];
    let ratio = result[0] / result[1];
    let pass = ratio >= 0.5e-3 && ratio <= 2e-3 && upload_dev <= 0.05;
    check(
        pass,
        format!(
            "download ratio {ratio:.5} (target 0.001, factor 2; analytic {analytic:.5}); mean download {:.0} vs {:.0} bits; worst upload deviation {:.2}%",
            result[0],
            result[1],
            100.0 * upload_dev
        ),
    )
}

fn c8_clipping() -> Outcome {
    let g = erdos_renyi(50, 0.2, &mut ChaCha8Rng::seed_from_u64(50));
    let split = BudgetSplit::from_total(1.0).unwrap();
    let beta = 1e-3;
    let trials = 1000u64;
    let per_trial: Vec<(usize, f64)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let streams = Streams::new(800).trial(t);
            let mut ledger = BudgetLedger::new(split);
            let publication =
                run_grouprr(&g, &GroupRrConfig { s: 5, mu_c: 0.5, split }, &streams, &mut ledger).unwrap();
            let (out, locals) =
                triangles_clip(&g, &publication, split.eps0, split.eps2, beta, &streams, &mut ledger).unwrap();
            let worst = locals.iter().map(|l| l.max_partial - l.bound).fold(f64::NEG_INFINITY, f64::max);
            (out.users_clipped, worst)
        })
        .collect();
    let fired: usize = per_trial.iter().map(|p| p.0).sum();
    let worst = per_trial.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let frac = fired as f64 / (trials as f64 * g.n() as f64);
    let limit = 3.0 * beta * g.n() as f64;
    check(
        worst <= 0.0 && frac <= limit,
        format!("max(partial − b) = {worst:.3}; clipping fired in {fired} of {} user-trials ({frac:.5} ≤ {limit})", trials * 50),
    )
}

fn c9_smooth_sensitivity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst_scan: f64 = 0.0;
    for _ in 0..100 {
        let ub = if rng.gen_bool(0.2) { 0.0 } else { rng.gen_range(0.0..200.0) };
        let step = rng.gen_range(0.1..50.0);
        let beta = rng.gen_range(0.01..1.0);
        let closed = smooth_sensitivity(ub, step, beta).s_star;
        let scan = smooth_sensitivity_scan(ub, step, beta, (10.0 / beta).ceil() as u64);
        worst_scan = worst_scan.max((closed - scan).abs() / scan.max(1.0));
    }

    let split = BudgetSplit::from_total(1.0).unwrap();
    let beta = split.eps2 / 6.0;
    let mut violations = Vec::new();
    let mut checked = 0usize;
    for case in 0..50u64 {
        let mut grng = ChaCha8Rng::seed_from_u64(900 + case);
        let g = erdos_renyi(8, grng.gen_range(0.2..0.8), &mut grng);
        let publication = publish(&g, 2, 0.5, split, &Streams::new(901).trial(case));
        let step = publication.max_abs_estimate();
        for i in 1..8usize {
            // f(S) = Σ_{j<k in S} ã(j,k) over subsets S of [0, i)
            let est = |a: usize, b: usize| publication.estimate_pair(i, a, b);
            let members = |mask: u32| (0..i).filter(|&j| mask >> j & 1 == 1).collect::<Vec<_>>();
            let f = |mask: u32| {
                let m = members(mask);
                let mut total = 0.0;
                for (x, &a) in m.iter().enumerate() {
                    for &b in &m[x + 1..] {
                        total += est(a, b);
                    }
                }
                total
            };
            let subsets = 1u32 << i;
            let values: Vec<f64> = (0..subsets).map(f).collect();
            let ls: Vec<f64> = (0..subsets)
                .map(|mask| (0..i).map(|j| (values[(mask ^ (1 << j)) as usize] - values[mask as usize]).abs()).fold(0.0, f64::max))
                .collect();
            let s_star: Vec<f64> = (0..subsets)
                .map(|mask| smooth_sensitivity(local_sensitivity_of(i, &members(mask), &publication), step, beta).s_star)
                .collect();
            for mask in 0..subsets {
                checked += 1;
                let lib_ls = local_sensitivity_of(i, &members(mask), &publication);
                if (lib_ls - ls[mask as usize]).abs() > 1e-9 * ls[mask as usize].max(1.0) {
                    violations.push(format!("graph {case} user {i}: LS {lib_ls} vs exhaustive {}", ls[mask as usize]));
                }
                // exact smooth sensitivity from A^(k) by exhaustive distance search
                let exact = (0..=i as u32)
                    .map(|k| {
                        let a_k = (0..subsets)
                            .filter(|&o| (o ^ mask).count_ones() <= k)
                            .map(|o| ls[o as usize])
                            .fold(0.0, f64::max);
                        (-beta * k as f64).exp() * a_k
                    })
                    .fold(0.0, f64::max);
                let here = s_star[mask as usize];
                if here + 1e-9 < ls[mask as usize] || here + 1e-9 < exact {
                    violations.push(format!("graph {case} user {i}: S* {here} below LS/exact {exact}"));
                }
                for j in 0..i {
                    let there = s_star[(mask ^ (1 << j)) as usize];
                    if here > beta.exp() * there * (1.0 + 1e-12) + 1e-12 {
                        violations.push(format!("graph {case} user {i}: smoothness {here} > e^β·{there}"));
                    }
                }
            }
        }
    }
    violations.truncate(3);
    check(
        worst_scan <= 1e-9 && violations.is_empty(),
        format!(
            "closed form vs scan max rel dev {worst_scan:.1e}; {checked} neighbor lists checked{}",
            if violations.is_empty() { String::new() } else { format!("; {}", violations.join("; ")) }
        ),
    )
}

fn brute_force(g: &Graph) -> GroundTruth {
    let n = g.n();
    let e = |a: usize, b: usize| g.has_edge(a, b);
    let mut t = GroundTruth { triangles: 0, four_cycles: 0, two_stars: 0, three_stars: 0, walks4: 0 };
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                t.triangles += (e(a, b) && e(b, c) && e(a, c)) as u64;
                for d in c + 1..n {
                    // the three distinct 4-cycles on {a,b,c,d}
                    t.four_cycles += (e(a, b) && e(b, c) && e(c, d) && e(d, a)) as u64;
                    t.four_cycles += (e(a, b) && e(b, d) && e(d, c) && e(c, a)) as u64;
                    t.four_cycles += (e(a, c) && e(c, b) && e(b, d) && e(d, a)) as u64;
                }
            }
        }
    }
    for v in 0..n {
        let nb: Vec<usize> = (0..n).filter(|&u| e(u, v)).collect();
        for x in 0..nb.len() {
            for y in x + 1..nb.len() {
                t.two_stars += 1;
                t.three_stars += (y + 1..nb.len()).count() as u64;
            }
        }
    }
    let mut walks = 0u64;
    let mut stack: Vec<(usize, usize)> = (0..n).map(|v| (v, 0)).collect();
    while let Some((v, len)) = stack.pop() {
        if len == 4 {
            walks += 1;
            continue;
        }
        stack.extend((0..n).filter(|&u| e(u, v)).map(|u| (u, len + 1)));
    }
    t.walks4 = walks;
    t
}

fn c10_oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut mismatches = Vec::new();
    for case in 0..50 {
        let n = rng.gen_range(1..=12);
        let p = rng.gen_range(0.1..0.9);
        let g = erdos_renyi(n, p, &mut rng);
        let (fast, slow) = (ground_truth(&g), brute_force(&g));
        if fast != slow {
            mismatches.push(format!("case {case}: {fast:?} vs {slow:?}"));
        }
    }
    check(mismatches.is_empty(), if mismatches.is_empty() { "50 graphs match".into() } else { mismatches.join("; ") })
}

fn c11_headline() -> Outcome {
    let mut cfg = ExperimentConfig::new(GraphSource::WikipediaLike, Stat::Triangles, Mechanism::GroupRrClip);
    cfg.subsample = Some(2000);
    cfg.sampling = Sampling::MuStar(1e-3);
    let (g, truth) = prepare_graph(&cfg).unwrap();
    let ours = run_trials_on(&g, truth, &cfg).unwrap().summary;
    cfg.mechanism = Mechanism::ArrStyle;
    let theirs = run_trials_on(&g, truth, &cfg).unwrap().summary;
    let ratio = theirs.median_relative_error / ours.median_relative_error;
    check(
        ratio >= 10.0,
        format!(
            "median relative error GroupRR+CSS {:.3} vs ARR-style {:.3}: {ratio:.1}x (need ≥ 10x); n={}, |E|={}, Δ={truth}",
            ours.median_relative_error,
            theirs.median_relative_error,
            g.n(),
            g.edge_count()
        ),
    )
}

fn c12_four_cycle_trend() -> Outcome {
    let graph = GraphSource::PowerLaw { n: 500, exponent: 2.0, min_degree: 15 };
    let mut cfg = ExperimentConfig::new(graph, Stat::FourCycles, Mechanism::GroupRrClip);
    let factor = 100.0f64;
    cfg.sampling = Sampling::Explicit { s: factor.sqrt() as usize, mu_c: 1.0, mu: Some(1.0 / factor) };
    let (g, truth) = prepare_graph(&cfg).unwrap();
    let ours = run_trials_on(&g, truth, &cfg).unwrap().summary;
    cfg.mechanism = Mechanism::ArrStyle;
    let theirs = run_trials_on(&g, truth, &cfg).unwrap().summary;
    let ratio = theirs.l2_error / ours.l2_error;
    check(
        ratio >= 10.0,
        format!(
            "ℓ2 error GroupRR {:.3e} vs ARR-style {:.3e}: {ratio:.1}x (need ≥ 10x); n={}, |E|={}, C4={truth}",
            ours.l2_error,
            theirs.l2_error,
            g.n(),
            g.edge_count()
        ),
    )
}

fn c13_determinism() -> Outcome {
    let mut outputs = HashSet::new();
    let mut sizes = Vec::new();
    for threads in [1usize, 4, 8] {
        let mut bytes = Vec::new();
        for (mechanism, stat) in [
            (Mechanism::GroupRrClip, Stat::Triangles),
            (Mechanism::GroupRrSmooth, Stat::Triangles),
            (Mechanism::ArrStyle, Stat::Triangles),
            (Mechanism::GroupRrClip, Stat::FourCycles),
        ] {
            let mut cfg = ExperimentConfig::new(GraphSource::WikipediaLike, stat, mechanism);
            cfg.subsample = Some(300);
            cfg.sampling = Sampling::MuStar(1.0 / 64.0);
            cfg.trials = 3;
            cfg.seed = 13;
            cfg.threads = Some(threads);
            let report = grouprr::harness::run_trials(&cfg).unwrap();
            write_trials_csv(&mut bytes, &report.rows, false).unwrap();
        }
        sizes.push(bytes.len());
        outputs.insert(bytes);
    }
    // the shared graph builder is also deterministic
    let a = build_graph(&GraphSource::WikipediaLike, 1).unwrap();
    let b = build_graph(&GraphSource::WikipediaLike, 1).unwrap();
    check(outputs.len() == 1 && a == b, format!("{} distinct CSV outputs over 1/4/8 threads ({} bytes)", outputs.len(), sizes[0]))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 13] = [
        ("exact debias identities", c1_debias_identities),
        ("amplification identity", c2_amplification),
        ("hash partition exactness", c3_hash_partition),
        ("Z_4 sampler moments", c4_z4_sampler),
        ("pre-noise unbiasedness", c5_unbiasedness),
        ("variance scaling in s", c6_variance_scaling),
        ("communication accounting", c7_communication),
        ("clipping contract", c8_clipping),
        ("smooth sensitivity correctness", c9_smooth_sensitivity),
        ("ground-truth oracles", c10_oracles),
        ("headline triangle trend", c11_headline),
        ("4-cycle trend", c12_four_cycle_trend),
        ("determinism across thread counts", c13_determinism),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let id = (k + 1).to_string();
        if !filter.is_empty() && !filter.iter().any(|f| *f == id || name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let status = if outcome.pass { "PASS" } else { "FAIL" };
        failed += !outcome.pass as usize;
        println!("[{status}] criterion {id:>2} {name}: {} ({:.1}s)", outcome.detail, start.elapsed().as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
